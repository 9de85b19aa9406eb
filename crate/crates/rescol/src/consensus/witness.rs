//! Turns a failed robustness certificate into a concrete stuck scenario.

use crate::graph::{ColoredGraph, NodeSet};
use crate::robustness::{is_rs_robust_colored, RobustnessError};

use super::{
    AdversaryModel, Protocol, Scenario, Scope, Strategy, WeightRule, DEFAULT_HORIZON,
    DEFAULT_TOLERANCE,
};

/// If the graph is not `(F+1, F+1)`-robust with coloring, builds a scenario
/// that provably never reaches agreement: the checker's violating pair
/// supplies two sets initialized at 0 and 1, all valid nodes of the pair
/// (at most F, all one color) become constant adversaries holding their
/// initial value, and everyone else starts at 0.5. Each set then keeps a
/// normal node that filters away its few outside neighbors forever.
/// Returns `None` when the graph is robust.
pub fn necessity_witness(
    g: &ColoredGraph,
    f: usize,
) -> Result<Option<Scenario>, RobustnessError> {
    let verdict = is_rs_robust_colored(g, f + 1, f + 1)?;
    let Some(w) = verdict.witness else {
        return Ok(None);
    };

    let a = 0.0;
    let b = 1.0;
    let mut initial = vec![0.5; g.node_count()];
    for v in w.s1.iter() {
        initial[v.0] = a;
    }
    for v in w.s2.iter() {
        initial[v.0] = b;
    }

    let mut adversary = AdversaryModel::none(Scope::FTotal, f);
    let compromised: NodeSet = w.valid1.union(w.valid2);
    for v in compromised.iter() {
        adversary
            .adversaries
            .insert(v.0, Strategy::Constant { value: initial[v.0] });
    }

    Ok(Some(Scenario {
        graph: g.clone(),
        initial,
        adversary,
        protocol: Protocol::Rcpc,
        weights: WeightRule::Uniform,
        horizon: DEFAULT_HORIZON,
        tolerance: DEFAULT_TOLERANCE,
        seed: 0,
    }))
}
