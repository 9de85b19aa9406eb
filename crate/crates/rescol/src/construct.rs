//! Robustness-preserving graph growth and constructive generators.
//!
//! Every constructor here re-verifies its claimed property with the
//! exhaustive checkers before returning a report; construction never
//! outruns certification at the supported sizes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Color, ColoredGraph, GraphError, NodeId, NodeSet};
use crate::robustness::{
    is_mono_chromatic_robust, is_r_robust_colored, is_rs_robust_colored, RobustnessError,
    RobustnessVerdict,
};

#[derive(Error, Debug)]
pub enum ConstructError {
    #[error("mono-chromatic attachment needs {needed} same-color neighbors, best color class has {got}")]
    NotEnoughMonoNeighbors { needed: usize, got: usize },
    #[error("attachment needs {needed} neighbors of one color plus one of another; got {got_main} and {got_other}")]
    NotEnoughMixedNeighbors {
        needed: usize,
        got_main: usize,
        got_other: usize,
    },
    #[error("attachment needs neighbors of at least 3 distinct colors, got {0}")]
    NotEnoughColors(usize),
    #[error("attachment needs at least {needed} neighbors or 3 distinct colors; got {got} neighbors of {colors} colors")]
    NotEnoughForRRobust {
        needed: usize,
        got: usize,
        colors: usize,
    },
    #[error("mono-chromatic robust construction needs at least 5 nodes (got {0})")]
    TooFewNodes(usize),
    #[error("elemental construction requires F > 2 (got {0})")]
    FTooSmall(usize),
    #[error("construction failed post-hoc verification: {0}")]
    VerificationFailed(String),
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
    #[error("robustness error: {0}")]
    Robustness(#[from] RobustnessError),
}

/// The attachment clause a new node must satisfy to preserve colored
/// `(r, s)`-robustness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum GrowthRule {
    /// At least `r + s - 1` neighbors of a single color.
    MonoDegree { r: usize, s: usize },
    /// At least `max(r, s)` neighbors of one color plus at least one
    /// neighbor of a different color (so `max(r, s) + 1` distinct nodes).
    MaxRsPlusOne { r: usize, s: usize },
    /// Neighbors spanning at least three distinct colors.
    ThreeColors,
}

/// A grown graph together with what was done and a recomputed certificate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub graph: ColoredGraph,
    pub rule: String,
    pub neighbors: NodeSet,
    pub verdict: RobustnessVerdict,
}

fn largest_color_class(g: &ColoredGraph, s: NodeSet) -> usize {
    g.color_classes(s)
        .into_iter()
        .map(|(_, set)| set.len())
        .max()
        .unwrap_or(0)
}

/// Adds a new node adjacent to exactly `neighbors`, after checking that the
/// neighbor set satisfies the growth rule. The rule's guarantee is that an
/// `(r, s)`-robust-with-coloring graph stays so.
pub fn attach_node(
    g: &ColoredGraph,
    rule: GrowthRule,
    neighbors: NodeSet,
    new_color: Color,
) -> Result<ColoredGraph, ConstructError> {
    match rule {
        GrowthRule::MonoDegree { r, s } => {
            let needed = r + s - 1;
            let got = largest_color_class(g, neighbors);
            if got < needed {
                return Err(ConstructError::NotEnoughMonoNeighbors { needed, got });
            }
        }
        GrowthRule::MaxRsPlusOne { r, s } => {
            let needed = r.max(s);
            let classes = g.color_classes(neighbors);
            let got_main = classes.iter().map(|(_, set)| set.len()).max().unwrap_or(0);
            // a qualifying "other" neighbor must lie outside the largest class
            let got_other = if classes.len() >= 2 { 1 } else { 0 };
            if got_main < needed || got_other < 1 {
                return Err(ConstructError::NotEnoughMixedNeighbors {
                    needed,
                    got_main,
                    got_other,
                });
            }
        }
        GrowthRule::ThreeColors => {
            let colors = g.distinct_colors_in(neighbors);
            if colors < 3 {
                return Err(ConstructError::NotEnoughColors(colors));
            }
        }
    }
    Ok(g.with_attached_node(neighbors, new_color)?)
}

/// Adds a new node under the clause set that preserves colored
/// `r`-robustness: at least `r` neighbors of any colors, or neighbors of at
/// least three distinct colors.
pub fn attach_node_r_robust(
    g: &ColoredGraph,
    r: usize,
    neighbors: NodeSet,
    new_color: Color,
) -> Result<ColoredGraph, ConstructError> {
    let colors = g.distinct_colors_in(neighbors);
    if neighbors.len() < r && colors < 3 {
        return Err(ConstructError::NotEnoughForRRobust {
            needed: r,
            got: neighbors.len(),
            colors,
        });
    }
    Ok(g.with_attached_node(neighbors, new_color)?)
}

/// [`attach_node`] plus a recomputed `(r, s)` certificate on the result.
pub fn attach_node_report(
    g: &ColoredGraph,
    rule: GrowthRule,
    neighbors: NodeSet,
    new_color: Color,
    r: usize,
    s: usize,
) -> Result<ConstructionReport, ConstructError> {
    let grown = attach_node(g, rule, neighbors, new_color)?;
    let verdict = is_rs_robust_colored(&grown, r, s)?;
    Ok(ConstructionReport {
        graph: grown,
        rule: format!("{rule:?}"),
        neighbors,
        verdict,
    })
}

/// Builds a mono-chromatic robust graph on `n >= 5` nodes: a rainbow
/// complete graph on the first five nodes, then each new node is wired to a
/// seeded-random choice of three distinctly colored existing nodes and given
/// a seeded color from the five. Each intermediate graph is re-verified; if
/// a random attachment ever failed the certificate it would be resampled,
/// bounded by `n * 64` attempts.
pub fn build_mono_chromatic_robust(n: usize, seed: u64) -> Result<ColoredGraph, ConstructError> {
    if n < 5 {
        return Err(ConstructError::TooFewNodes(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = crate::graph::k5_rainbow();
    let mut attempts = 0usize;
    while g.node_count() < n {
        // pick three distinct colors, then one node of each
        let mut palette: Vec<usize> = (0..5).collect();
        palette.shuffle(&mut rng);
        let mut neighbors = NodeSet::EMPTY;
        for &c in palette.iter() {
            let members: Vec<NodeId> =
                g.nodes().filter(|&v| g.color(v) == Color(c)).collect();
            if members.is_empty() {
                continue;
            }
            neighbors.insert(members[rng.gen_range(0..members.len())]);
            if neighbors.len() == 3 {
                break;
            }
        }
        let new_color = Color(rng.gen_range(0..5usize));
        let candidate = g.with_attached_node(neighbors, new_color)?;
        if is_mono_chromatic_robust(&candidate)?.holds {
            g = candidate;
        } else {
            attempts += 1;
            if attempts > n * 64 {
                return Err(ConstructError::VerificationFailed(
                    "random three-color attachment kept failing the mono-chromatic certificate"
                        .into(),
                ));
            }
        }
    }
    Ok(g)
}

/// Canonical elemental graph for a budget `F > 2`: the complete graph on
/// `4F + 1` nodes, in which any `2F` nodes form a hub set adjacent to
/// everything. Five nodes get five distinct colors and the rest color 0,
/// which is exactly enough to make it mono-chromatic robust; both that and
/// classical `(2F+1)`-robustness are re-verified, not assumed.
pub fn build_f_elemental(f: usize) -> Result<ColoredGraph, ConstructError> {
    if f <= 2 {
        return Err(ConstructError::FTooSmall(f));
    }
    let n = 4 * f + 1;
    let mut colors = vec![0usize; n];
    for (i, c) in colors.iter_mut().enumerate().take(5) {
        *c = i;
    }
    let g = ColoredGraph::complete(n, colors)?;
    if n <= crate::robustness::EXHAUSTIVE_LIMIT {
        if !is_mono_chromatic_robust(&g)?.holds {
            return Err(ConstructError::VerificationFailed(
                "elemental graph failed the mono-chromatic certificate".into(),
            ));
        }
        if !is_r_robust_colored(&g.recolor_uniform(), 2 * f + 1)?.holds {
            return Err(ConstructError::VerificationFailed(format!(
                "elemental graph failed classical {}-robustness",
                2 * f + 1
            )));
        }
    }
    Ok(g)
}

/// Proper coloring (no two adjacent nodes share a color) by greedy
/// assignment in descending-degree order, ties toward the lower index.
/// Uses at most max-degree + 1 colors.
pub fn greedy_proper_coloring(g: &ColoredGraph) -> ColoredGraph {
    let n = g.node_count();
    let mut order: Vec<NodeId> = g.nodes().collect();
    order.sort_by(|a, b| g.degree(*b).cmp(&g.degree(*a)).then(a.0.cmp(&b.0)));
    let mut assigned: Vec<Option<usize>> = vec![None; n];
    for v in order {
        let mut used = vec![false; n + 1];
        for u in g.neighbors(v).iter() {
            if let Some(c) = assigned[u.0] {
                used[c] = true;
            }
        }
        let c = (0..).find(|&c| !used[c]).unwrap();
        assigned[v.0] = Some(c);
    }
    let colors: Vec<usize> = assigned.into_iter().map(Option::unwrap).collect();
    g.recolor(colors).expect("same node count")
}

/// True iff every vertex has three neighbors that are pairwise adjacent and
/// the underlying topology (colors erased) is 3-robust. Intended as a
/// sufficient condition for a proper coloring to make the graph
/// mono-chromatic robust, but the implication does not actually hold: the
/// acceptance suite documents seed-reproducible counterexamples, both with
/// four-color proper colorings (where mono-chromatic robustness is
/// impossible outright) and with five.
pub fn is_triangle_rich_3_robust(g: &ColoredGraph) -> Result<bool, RobustnessError> {
    for v in g.nodes() {
        let nbrs: Vec<NodeId> = g.neighbors(v).iter().collect();
        let mut found = false;
        'outer: for (ai, &a) in nbrs.iter().enumerate() {
            for (bi, &b) in nbrs.iter().enumerate().skip(ai + 1) {
                if !g.has_edge(a, b) {
                    continue;
                }
                for &c in nbrs.iter().skip(bi + 1) {
                    if g.has_edge(a, c) && g.has_edge(b, c) {
                        found = true;
                        break 'outer;
                    }
                }
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(is_r_robust_colored(&g.recolor_uniform(), 3)?.holds)
}
