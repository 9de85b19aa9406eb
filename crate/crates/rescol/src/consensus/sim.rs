//! Synchronous simulator and the agreement / safety predicates.

use std::io::Write;
use std::path::Path;

use crate::graph::{ColoredGraph, NodeId};

use super::{
    protocol, spread_over, AdversaryModel, Protocol, Scenario, ScenarioError, Scope, Trace,
};

/// Slack for the safety interval check: convex combinations can leave the
/// interval by a few ulps of rounding.
const SAFETY_SLACK: f64 = 1e-9;

/// Checks color uniformity of the adversary set and its scope bound,
/// reporting the first violated invariant.
pub fn verify_adversary_placement(
    g: &ColoredGraph,
    adv: &AdversaryModel,
) -> Result<(), ScenarioError> {
    let nodes = adv.node_set();
    for v in nodes.iter() {
        if !g.contains_node(v) {
            return Err(ScenarioError::AdversaryOutOfRange(v.0));
        }
    }
    if let Some(first) = nodes.first() {
        let c = g.color(first);
        for v in nodes.iter() {
            if g.color(v) != c {
                return Err(ScenarioError::MixedAdversaryColors { a: first.0, b: v.0 });
            }
        }
    }
    match adv.scope {
        Scope::FTotal => {
            if nodes.len() > adv.f {
                return Err(ScenarioError::TotalBoundViolated {
                    count: nodes.len(),
                    f: adv.f,
                });
            }
        }
        Scope::FLocal => {
            for v in g.nodes() {
                let count = g.neighbors(v).intersection(nodes).len();
                if count > adv.f {
                    return Err(ScenarioError::LocalBoundViolated {
                        node: v.0,
                        count,
                        f: adv.f,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Boolean form of [`verify_adversary_placement`].
pub fn validate_adversary_placement(g: &ColoredGraph, adv: &AdversaryModel) -> bool {
    verify_adversary_placement(g, adv).is_ok()
}

fn validate_scenario(sc: &Scenario) -> Result<(), ScenarioError> {
    let n = sc.graph.node_count();
    if sc.initial.len() != n {
        return Err(ScenarioError::InitialLength {
            got: sc.initial.len(),
            expected: n,
        });
    }
    if sc.horizon < 1 {
        return Err(ScenarioError::ZeroHorizon);
    }
    if !(sc.tolerance > 0.0) {
        return Err(ScenarioError::BadTolerance(sc.tolerance));
    }
    if sc.normal_set().is_empty() {
        return Err(ScenarioError::NoNormalNodes);
    }
    verify_adversary_placement(&sc.graph, &sc.adversary)
}

/// Runs the scenario for its full horizon. Normal nodes update by the chosen
/// protocol; adversarial nodes broadcast their strategy's value, including
/// at step 0 (so a constant adversary really is constant over the whole
/// trace). All updates in a step read the previous state vector only.
pub fn run_simulation(sc: &Scenario) -> Result<Trace, ScenarioError> {
    run_simulation_with_exit(sc, None)
}

/// As [`run_simulation`] but optionally stops once the normal spread drops
/// below `early_exit`. Under both protocols the normal-value envelope is
/// monotone, so nothing after that point can widen the spread again.
pub fn run_simulation_with_exit(
    sc: &Scenario,
    early_exit: Option<f64>,
) -> Result<Trace, ScenarioError> {
    validate_scenario(sc)?;
    let g = &sc.graph;
    let n = g.node_count();
    let normal = sc.normal_set();

    let mut current: Vec<f64> = sc.initial.clone();
    for (&node, strat) in &sc.adversary.adversaries {
        current[node] = strat.value_at(sc.initial[node], 0);
    }

    let mut states = Vec::with_capacity(sc.horizon + 1);
    let mut max_series = Vec::with_capacity(sc.horizon + 1);
    let mut min_series = Vec::with_capacity(sc.horizon + 1);

    let record = |state: &[f64], max_s: &mut Vec<f64>, min_s: &mut Vec<f64>| {
        let mut max = f64::NEG_INFINITY;
        let mut min = f64::INFINITY;
        for v in normal.iter() {
            max = max.max(state[v.0]);
            min = min.min(state[v.0]);
        }
        max_s.push(max);
        min_s.push(min);
    };

    record(&current, &mut max_series, &mut min_series);
    states.push(current.clone());

    for t in 0..sc.horizon {
        if let Some(eps) = early_exit {
            if max_series[t] - min_series[t] < eps {
                break;
            }
        }
        let mut next = vec![0.0; n];
        for i in 0..n {
            next[i] = match sc.adversary.adversaries.get(&i) {
                Some(strat) => strat.value_at(sc.initial[i], t + 1),
                None => match sc.protocol {
                    Protocol::Rcpc => {
                        protocol::rcpc_step(g, &current, NodeId(i), sc.adversary.f, sc.weights)
                    }
                    Protocol::Wmsr => {
                        protocol::wmsr_step(g, &current, NodeId(i), sc.adversary.f, sc.weights)
                    }
                },
            };
        }
        current = next;
        record(&current, &mut max_series, &mut min_series);
        states.push(current.clone());
    }

    Ok(Trace {
        states,
        normal,
        max_series,
        min_series,
    })
}

/// Safety: every normal value at every step stays inside the interval
/// spanned by the initial normal values.
pub fn check_safety(tr: &Trace) -> bool {
    let hi = tr.max_series[0] + SAFETY_SLACK;
    let lo = tr.min_series[0] - SAFETY_SLACK;
    tr.states
        .iter()
        .all(|state| tr.normal.iter().all(|v| state[v.0] >= lo && state[v.0] <= hi))
}

/// Agreement: the normal spread at the final recorded step is below `eps`.
pub fn check_agreement(tr: &Trace, eps: f64) -> bool {
    let last = tr.states.last().expect("nonempty trace");
    spread_over(last, tr.normal) < eps
}

/// Writes the trace as CSV: header `t,node_0,...,node_{n-1}`, one row per
/// step, values with 12 significant digits.
pub fn write_trace_csv(tr: &Trace, path: impl AsRef<Path>) -> Result<(), ScenarioError> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    let n = tr.states[0].len();
    write!(out, "t")?;
    for i in 0..n {
        write!(out, ",node_{i}")?;
    }
    writeln!(out)?;
    for (t, state) in tr.states.iter().enumerate() {
        write!(out, "{t}")?;
        for x in state {
            write!(out, ",{x:.11e}")?;
        }
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

/// Sidecar JSON naming the adversarial nodes of a trace.
pub fn write_adversary_sidecar(sc: &Scenario, path: impl AsRef<Path>) -> Result<(), ScenarioError> {
    let adversaries: Vec<usize> = sc.adversary.adversaries.keys().copied().collect();
    let body = serde_json::json!({
        "adversaries": adversaries,
        "scope": sc.adversary.scope,
        "f": sc.adversary.f,
    });
    std::fs::write(path, serde_json::to_string_pretty(&body)?)?;
    Ok(())
}
