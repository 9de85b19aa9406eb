//! Exhaustive certification of graph robustness, with and without colors.
//!
//! All checkers quantify over every unordered pair of nonempty disjoint node
//! subsets, so they are exact but exponential: Θ(3^n · n · d). Graphs up to
//! [`EXHAUSTIVE_LIMIT`] nodes are supported exhaustively; beyond that the
//! `*_sampled` variants test random pairs only and are explicitly
//! non-certifying (a `holds` answer from sampling is not a proof).
//!
//! A failing verdict always carries a witness pair that can be re-checked
//! clause by clause, independent of the checker internals.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ColoredGraph, NodeId, NodeSet};

/// Largest node count the exhaustive pair enumeration accepts.
pub const EXHAUSTIVE_LIMIT: usize = 16;

#[derive(Error, Debug)]
pub enum RobustnessError {
    #[error("checker needs at least 2 nodes (got {0})")]
    TooSmall(usize),
    #[error("exhaustive checking supports at most {EXHAUSTIVE_LIMIT} nodes (got {0}); use a sampled check")]
    TooLargeForExhaustive(usize),
    #[error("robustness parameters must be at least 1 (got r={r}, s={s})")]
    BadParameters { r: usize, s: usize },
    #[error("node {0} is not a member of the queried set")]
    NodeNotInSet(usize),
}

/// Which clause made a node valid (or a pair acceptable).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ValidityReason {
    /// At least `r` same-color neighbors outside the set.
    MonoChromaticDegree,
    /// At least two distinctly colored neighbors outside the set.
    TwoDistinctColors,
    /// At least three distinctly colored neighbors outside the set.
    ThreeDistinctColors,
    /// At least `r` neighbors outside the set, colors pooled.
    RDegreeAnyColor,
}

/// A pair of sets violating the property, with the valid nodes found in each.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub s1: NodeSet,
    pub s2: NodeSet,
    pub valid1: NodeSet,
    pub valid2: NodeSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustnessVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl RobustnessVerdict {
    fn holds() -> Self {
        RobustnessVerdict {
            holds: true,
            witness: None,
        }
    }

    fn fails(w: Witness) -> Self {
        RobustnessVerdict {
            holds: false,
            witness: Some(w),
        }
    }
}

/// Maximal `(r, s)` pairs for which the colored robustness property holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustnessFrontier {
    pub maximal: Vec<(usize, usize)>,
}

impl RobustnessFrontier {
    pub fn is_empty(&self) -> bool {
        self.maximal.is_empty()
    }

    /// True iff some frontier point dominates `(r, s)` componentwise.
    pub fn covers(&self, r: usize, s: usize) -> bool {
        self.maximal.iter().any(|&(fr, fs)| fr >= r && fs >= s)
    }

    /// True iff every point of `self` is covered by `other`.
    pub fn dominated_by(&self, other: &RobustnessFrontier) -> bool {
        self.maximal.iter().all(|&(r, s)| other.covers(r, s))
    }
}

/// Streams every unordered pair of nonempty disjoint subsets of `[0, n)`
/// exactly once, in a fixed order: a ternary counter assigns each node to
/// {out, first set, second set}, and an assignment is kept only when the
/// lowest-indexed assigned node lands in the first set. The count of pairs
/// is (3^n − 2^(n+1) + 1) / 2.
pub struct DisjointPairs {
    digits: Vec<u8>,
    done: bool,
}

impl DisjointPairs {
    pub fn new(n: usize) -> DisjointPairs {
        DisjointPairs {
            digits: vec![0; n],
            done: n < 2,
        }
    }

    fn advance(&mut self) -> bool {
        for d in self.digits.iter_mut() {
            if *d < 2 {
                *d += 1;
                return true;
            }
            *d = 0;
        }
        false
    }
}

impl Iterator for DisjointPairs {
    type Item = (NodeSet, NodeSet);

    fn next(&mut self) -> Option<(NodeSet, NodeSet)> {
        while !self.done {
            if !self.advance() {
                self.done = true;
                return None;
            }
            let mut s1 = NodeSet::EMPTY;
            let mut s2 = NodeSet::EMPTY;
            for (i, &d) in self.digits.iter().enumerate() {
                match d {
                    1 => s1.insert(NodeId(i)),
                    2 => s2.insert(NodeId(i)),
                    _ => {}
                }
            }
            if s1.is_empty() || s2.is_empty() {
                continue;
            }
            // canonical orientation: lowest assigned node sits in s1
            if s1.first() < s2.first() {
                return Some((s1, s2));
            }
        }
        None
    }
}

/// Number of pairs [`DisjointPairs`] yields for `n` nodes.
pub fn disjoint_pair_count(n: usize) -> u64 {
    (3u64.pow(n as u32) - 2u64.pow(n as u32 + 1) + 1) / 2
}

fn check_size(g: &ColoredGraph) -> Result<(), RobustnessError> {
    let n = g.node_count();
    if n < 2 {
        return Err(RobustnessError::TooSmall(n));
    }
    if n > EXHAUSTIVE_LIMIT {
        return Err(RobustnessError::TooLargeForExhaustive(n));
    }
    Ok(())
}

fn check_params(r: usize, s: usize) -> Result<(), RobustnessError> {
    if r < 1 || s < 1 {
        return Err(RobustnessError::BadParameters { r, s });
    }
    Ok(())
}

/// Node-level validity for the colored `(r, s)` notion: `v` (a member of
/// `s`) qualifies if some single color contributes at least `r` of its
/// neighbors outside `s`, or its outside neighbors span two or more colors.
pub fn is_r_valid(
    g: &ColoredGraph,
    s: NodeSet,
    v: NodeId,
    r: usize,
) -> Result<(bool, Option<ValidityReason>), RobustnessError> {
    if !s.contains(v) {
        return Err(RobustnessError::NodeNotInSet(v.0));
    }
    check_params(r, 1)?;
    Ok(r_valid_inner(g, s, v, r))
}

fn r_valid_inner(
    g: &ColoredGraph,
    s: NodeSet,
    v: NodeId,
    r: usize,
) -> (bool, Option<ValidityReason>) {
    let outside = g.neighbors(v).difference(s);
    let mut best_class = 0usize;
    let mut first_color = None;
    let mut poly = false;
    // single pass: track the largest same-color group and whether a second
    // color appears at all
    let mut counts = [0usize; crate::graph::MAX_COLOR];
    for u in outside.iter() {
        let c = g.color(u);
        counts[c.0] += 1;
        best_class = best_class.max(counts[c.0]);
        match first_color {
            None => first_color = Some(c),
            Some(fc) if fc != c => poly = true,
            _ => {}
        }
    }
    if best_class >= r {
        (true, Some(ValidityReason::MonoChromaticDegree))
    } else if poly {
        (true, Some(ValidityReason::TwoDistinctColors))
    } else {
        (false, None)
    }
}

fn valid_set(g: &ColoredGraph, s: NodeSet, r: usize) -> NodeSet {
    let mut out = NodeSet::EMPTY;
    for v in s.iter() {
        if r_valid_inner(g, s, v, r).0 {
            out.insert(v);
        }
    }
    out
}

/// Evaluates the four acceptance clauses of the colored `(r, s)` notion for
/// one pair. Returns the valid sets when the pair violates all clauses.
fn colored_rs_pair_fails(
    g: &ColoredGraph,
    s1: NodeSet,
    s2: NodeSet,
    r: usize,
    s: usize,
) -> Option<(NodeSet, NodeSet)> {
    let x1 = valid_set(g, s1, r);
    if x1 == s1 {
        return None; // every node of the first set is valid
    }
    let x2 = valid_set(g, s2, r);
    if x2 == s2 {
        return None; // every node of the second set is valid
    }
    let union = x1.union(x2);
    if !union.is_empty() {
        if g.distinct_colors_in(union) >= 2 {
            return None; // poly-chromatic valid union
        }
        if union.len() >= s {
            return None; // mono-chromatic valid union of sufficient size
        }
    }
    Some((x1, x2))
}

/// Colored `(r, s)`-robustness: every disjoint pair satisfies one of the
/// four clauses (all of one set valid, or the valid union mono-chromatic of
/// size ≥ s, or the valid union poly-chromatic). The first violating pair in
/// enumeration order is returned as the witness.
///
/// The original notion is stated for r, s ≥ 2; r = 1 or s = 1 is accepted
/// here as a compatible extension so the classical corner cases are
/// expressible.
pub fn is_rs_robust_colored(
    g: &ColoredGraph,
    r: usize,
    s: usize,
) -> Result<RobustnessVerdict, RobustnessError> {
    check_size(g)?;
    check_params(r, s)?;
    for (s1, s2) in DisjointPairs::new(g.node_count()) {
        if let Some((x1, x2)) = colored_rs_pair_fails(g, s1, s2, r, s) {
            return Ok(RobustnessVerdict::fails(Witness {
                s1,
                s2,
                valid1: x1,
                valid2: x2,
            }));
        }
    }
    Ok(RobustnessVerdict::holds())
}

/// Classical `(r, s)`-robustness, realized by erasing the coloring: with one
/// color the poly-chromatic clause is unreachable and node validity reduces
/// to plain outside degree.
pub fn is_rs_robust_classic(
    g: &ColoredGraph,
    r: usize,
    s: usize,
) -> Result<RobustnessVerdict, RobustnessError> {
    is_rs_robust_colored(&g.recolor_uniform(), r, s)
}

/// Node-level clause of the colored `r`-robustness notion: at least `r`
/// outside neighbors of any colors pooled together, or at least three
/// distinct outside colors. This clause set deliberately shares no code with
/// [`is_r_valid`]; the two notions diverge on poly-chromatic neighborhoods
/// and conflating them would silently change verdicts.
fn r_robust_node_ok(g: &ColoredGraph, own_set: NodeSet, v: NodeId, r: usize) -> Option<ValidityReason> {
    let outside = g.neighbors(v).difference(own_set);
    if outside.len() >= r {
        return Some(ValidityReason::RDegreeAnyColor);
    }
    if g.distinct_colors_in(outside) >= 3 {
        return Some(ValidityReason::ThreeDistinctColors);
    }
    None
}

/// Colored `r`-robustness: every disjoint pair contains a node with `r`
/// outside neighbors (colors pooled) or three distinct outside colors.
pub fn is_r_robust_colored(
    g: &ColoredGraph,
    r: usize,
) -> Result<RobustnessVerdict, RobustnessError> {
    check_size(g)?;
    check_params(r, 1)?;
    for (s1, s2) in DisjointPairs::new(g.node_count()) {
        let ok1: NodeSet = s1
            .iter()
            .filter(|&v| r_robust_node_ok(g, s1, v, r).is_some())
            .collect();
        let ok2: NodeSet = s2
            .iter()
            .filter(|&v| r_robust_node_ok(g, s2, v, r).is_some())
            .collect();
        if ok1.is_empty() && ok2.is_empty() {
            return Ok(RobustnessVerdict::fails(Witness {
                s1,
                s2,
                valid1: ok1,
                valid2: ok2,
            }));
        }
    }
    Ok(RobustnessVerdict::holds())
}

/// Mono-chromatic robustness: every disjoint pair contains a node with at
/// least three distinctly colored neighbors outside its own set. A graph
/// with this property tolerates the compromise of an entire color class.
pub fn is_mono_chromatic_robust(g: &ColoredGraph) -> Result<RobustnessVerdict, RobustnessError> {
    check_size(g)?;
    for (s1, s2) in DisjointPairs::new(g.node_count()) {
        let ok1: NodeSet = s1
            .iter()
            .filter(|&v| g.distinct_colors_in(g.neighbors(v).difference(s1)) >= 3)
            .collect();
        let ok2: NodeSet = s2
            .iter()
            .filter(|&v| g.distinct_colors_in(g.neighbors(v).difference(s2)) >= 3)
            .collect();
        if ok1.is_empty() && ok2.is_empty() {
            return Ok(RobustnessVerdict::fails(Witness {
                s1,
                s2,
                valid1: ok1,
                valid2: ok2,
            }));
        }
    }
    Ok(RobustnessVerdict::holds())
}

/// All maximal `(r, s)` pairs within the given bounds for which the colored
/// property holds. The property is monotone (shrinking r or s only makes
/// node validity and the size clause easier), so it suffices to find, for
/// each r, the largest s that still holds.
pub fn max_rs_frontier(
    g: &ColoredGraph,
    r_max: usize,
    s_max: usize,
) -> Result<RobustnessFrontier, RobustnessError> {
    check_size(g)?;
    check_params(r_max, s_max)?;
    let mut best: Vec<(usize, usize)> = Vec::new();
    let mut s_hi = s_max;
    for r in 1..=r_max {
        let mut s_best = None;
        for s in (1..=s_hi).rev() {
            if is_rs_robust_colored(g, r, s)?.holds {
                s_best = Some(s);
                break;
            }
        }
        match s_best {
            None => break, // not even (r, 1): larger r cannot hold either
            Some(s) => {
                // keep only if not dominated by what a later (larger) r gives
                best.push((r, s));
                s_hi = s;
            }
        }
    }
    // maximal elements: drop (r, s) when (r', s) with r' > r also holds
    let mut maximal = Vec::new();
    for i in 0..best.len() {
        let (r, s) = best[i];
        if i + 1 == best.len() || best[i + 1].1 < s {
            maximal.push((r, s));
        }
    }
    Ok(RobustnessFrontier { maximal })
}

/// Non-certifying randomized check of the colored `(r, s)` property: tests
/// `samples` random disjoint pairs. A returned witness is a real violation;
/// a `holds` verdict only means no violation was sampled.
pub fn is_rs_robust_colored_sampled(
    g: &ColoredGraph,
    r: usize,
    s: usize,
    samples: u64,
    seed: u64,
) -> Result<RobustnessVerdict, RobustnessError> {
    use rand::{Rng, SeedableRng};
    let n = g.node_count();
    if n < 2 {
        return Err(RobustnessError::TooSmall(n));
    }
    check_params(r, s)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0u64;
    while tested < samples {
        let mut s1 = NodeSet::EMPTY;
        let mut s2 = NodeSet::EMPTY;
        for i in 0..n {
            match rng.gen_range(0..3u8) {
                1 => s1.insert(NodeId(i)),
                2 => s2.insert(NodeId(i)),
                _ => {}
            }
        }
        if s1.is_empty() || s2.is_empty() {
            continue;
        }
        tested += 1;
        if let Some((x1, x2)) = colored_rs_pair_fails(g, s1, s2, r, s) {
            return Ok(RobustnessVerdict::fails(Witness {
                s1,
                s2,
                valid1: x1,
                valid2: x2,
            }));
        }
    }
    Ok(RobustnessVerdict::holds())
}

/// Re-evaluates a witness pair clause by clause against the colored `(r, s)`
/// notion, independently of the enumeration that produced it. Returns true
/// iff the pair genuinely violates all four clauses.
pub fn witness_violates_colored_rs(g: &ColoredGraph, w: &Witness, r: usize, s: usize) -> bool {
    if w.s1.is_empty() || w.s2.is_empty() || !w.s1.is_disjoint(w.s2) {
        return false;
    }
    if !w.valid1.is_subset(w.s1) || !w.valid2.is_subset(w.s2) {
        return false;
    }
    colored_rs_pair_fails(g, w.s1, w.s2, r, s).is_some()
}
