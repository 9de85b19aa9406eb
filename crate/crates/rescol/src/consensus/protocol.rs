//! Per-node update rules.
//!
//! Both rules start the same way: relative to its own value, a node marks
//! the F largest and F smallest neighbor values for removal. WMSR stops
//! there. RCP-C additionally groups each removed extreme set by color and
//! re-admits every group except the one holding the extreme value itself;
//! with all adversaries sharing one color, a removed extreme group that
//! differs in color from the worst value is known to be honest information.
//!
//! All ties are broken deterministically toward the lower node index, so a
//! scenario replays to a bit-identical trace.

use crate::graph::{ColoredGraph, NodeId, NodeSet};

use super::WeightRule;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremeSide {
    Max,
    Min,
}

/// Step 2: split the neighbors of `i` into the (up to) `f` strictly greater
/// values and the (up to) `f` strictly smaller values. Neighbors equal to
/// the node's own value are never candidates for removal. Among equal
/// values the lower node index wins a removal slot.
pub fn partition_extremes(
    g: &ColoredGraph,
    states: &[f64],
    i: NodeId,
    f: usize,
) -> (NodeSet, NodeSet) {
    let xi = states[i.0];
    let mut above: Vec<NodeId> = g.neighbors(i).iter().filter(|v| states[v.0] > xi).collect();
    let mut below: Vec<NodeId> = g.neighbors(i).iter().filter(|v| states[v.0] < xi).collect();
    above.sort_by(|a, b| {
        states[b.0]
            .partial_cmp(&states[a.0])
            .unwrap()
            .then(a.0.cmp(&b.0))
    });
    below.sort_by(|a, b| {
        states[a.0]
            .partial_cmp(&states[b.0])
            .unwrap()
            .then(a.0.cmp(&b.0))
    });
    above.truncate(f);
    below.truncate(f);
    (above.into_iter().collect(), below.into_iter().collect())
}

/// Step 3: partition one removed extreme set by color and drop the entire
/// color class containing the extreme value (maximum for [`ExtremeSide::Max`],
/// minimum for [`ExtremeSide::Min`]); the remaining classes are re-admitted.
/// When the extreme value is tied, the class of the tied node with the
/// lowest index is dropped.
pub fn rescue_by_color(
    g: &ColoredGraph,
    states: &[f64],
    removed: NodeSet,
    side: ExtremeSide,
) -> NodeSet {
    let extreme = match side {
        ExtremeSide::Max => removed.iter().max_by(|a, b| {
            states[a.0]
                .partial_cmp(&states[b.0])
                .unwrap()
                .then(b.0.cmp(&a.0))
        }),
        ExtremeSide::Min => removed.iter().min_by(|a, b| {
            states[a.0]
                .partial_cmp(&states[b.0])
                .unwrap()
                .then(a.0.cmp(&b.0))
        }),
    };
    let Some(extreme) = extreme else {
        return NodeSet::EMPTY;
    };
    let dropped_color = g.color(extreme);
    removed
        .iter()
        .filter(|&v| g.color(v) != dropped_color)
        .collect()
}

/// The nodes whose values enter the convex combination for node `i`:
/// `(N[i] \ R) ∪ D`, where `R` is both extreme sets and `D` is the
/// re-admitted remainder (empty for WMSR). Always contains `i` itself.
pub fn considered_set(
    g: &ColoredGraph,
    states: &[f64],
    i: NodeId,
    f: usize,
    rescue: bool,
) -> NodeSet {
    let (above, below) = partition_extremes(g, states, i, f);
    let removed = above.union(below);
    let mut kept = g
        .neighbors(i)
        .union(NodeSet::singleton(i))
        .difference(removed);
    if rescue {
        kept = kept
            .union(rescue_by_color(g, states, above, ExtremeSide::Max))
            .union(rescue_by_color(g, states, below, ExtremeSide::Min));
    }
    kept
}

fn weighted_average(states: &[f64], considered: NodeSet, weights: WeightRule) -> f64 {
    match weights {
        WeightRule::Uniform => {
            let k = considered.len() as f64;
            considered.iter().map(|v| states[v.0]).sum::<f64>() / k
        }
    }
}

/// One color-aware update for node `i`.
pub fn rcpc_step(g: &ColoredGraph, states: &[f64], i: NodeId, f: usize, weights: WeightRule) -> f64 {
    weighted_average(states, considered_set(g, states, i, f, true), weights)
}

/// One plain mean-subsequence-reduced update for node `i`: identical to
/// [`rcpc_step`] with the color rescue disabled.
pub fn wmsr_step(g: &ColoredGraph, states: &[f64], i: NodeId, f: usize, weights: WeightRule) -> f64 {
    weighted_average(states, considered_set(g, states, i, f, false), weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ColoredGraph;

    /// Hub node 0 with five leaves; leaf colors as in the worked example:
    /// a,c,d share one color, b,e another.
    fn star() -> ColoredGraph {
        ColoredGraph::new(
            6,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)],
            vec![0, 1, 2, 1, 1, 2],
        )
        .unwrap()
    }

    const STAR_STATES: [f64; 6] = [0.0, 5.0, 4.0, 3.0, -5.0, -4.0];

    #[test]
    fn extremes_hand_example() {
        let g = star();
        let (above, below) = partition_extremes(&g, &STAR_STATES, NodeId(0), 2);
        let want_above: NodeSet = [NodeId(1), NodeId(2)].into_iter().collect();
        let want_below: NodeSet = [NodeId(4), NodeId(5)].into_iter().collect();
        assert_eq!(above, want_above);
        assert_eq!(below, want_below);
    }

    #[test]
    fn extremes_edge_cases() {
        let g = star();
        let equal = [1.0; 6];
        let (above, below) = partition_extremes(&g, &equal, NodeId(0), 3);
        assert!(above.is_empty() && below.is_empty());
        let (above, below) = partition_extremes(&g, &STAR_STATES, NodeId(0), 0);
        assert!(above.is_empty() && below.is_empty());
    }

    #[test]
    fn rescue_hand_example() {
        let g = star();
        let above: NodeSet = [NodeId(1), NodeId(2)].into_iter().collect();
        let d = rescue_by_color(&g, &STAR_STATES, above, ExtremeSide::Max);
        assert_eq!(d, NodeSet::singleton(NodeId(2)));
        let below: NodeSet = [NodeId(4), NodeId(5)].into_iter().collect();
        let d = rescue_by_color(&g, &STAR_STATES, below, ExtremeSide::Min);
        assert_eq!(d, NodeSet::singleton(NodeId(5)));
    }

    #[test]
    fn rescue_single_color_is_empty() {
        let g = ColoredGraph::new(3, &[(0, 1), (0, 2)], vec![0, 1, 1]).unwrap();
        let removed: NodeSet = [NodeId(1), NodeId(2)].into_iter().collect();
        let states = [0.0, 2.0, 1.0];
        assert!(rescue_by_color(&g, &states, removed, ExtremeSide::Max).is_empty());
        assert!(rescue_by_color(&g, &states, NodeSet::EMPTY, ExtremeSide::Max).is_empty());
    }

    #[test]
    fn step_hand_examples() {
        let g = star();
        let x = rcpc_step(&g, &STAR_STATES, NodeId(0), 2, WeightRule::Uniform);
        // considered values {0, 3, 4, -4}
        assert!((x - 0.75).abs() < 1e-12);
        let x = wmsr_step(&g, &STAR_STATES, NodeId(0), 2, WeightRule::Uniform);
        // considered values {0, 3}
        assert!((x - 1.5).abs() < 1e-12);
    }

    #[test]
    fn equal_values_are_fixed_points() {
        let g = star();
        let states = [7.25; 6];
        for f in 0..3 {
            assert_eq!(rcpc_step(&g, &states, NodeId(0), f, WeightRule::Uniform), 7.25);
            assert_eq!(wmsr_step(&g, &states, NodeId(0), f, WeightRule::Uniform), 7.25);
        }
    }

    #[test]
    fn wmsr_removes_all_when_fewer_than_f() {
        let g = star();
        // only two neighbors above: with F=3 both are removed
        let states = [0.0, 5.0, 4.0, 0.0, 0.0, 0.0];
        let (above, _) = partition_extremes(&g, &states, NodeId(0), 3);
        assert_eq!(above.len(), 2);
        let x = wmsr_step(&g, &states, NodeId(0), 3, WeightRule::Uniform);
        assert_eq!(x, 0.0);
    }
}
