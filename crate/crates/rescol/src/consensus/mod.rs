//! Resilient consensus engine: the color-aware update rule (RCP-C), the
//! plain weighted mean-subsequence-reduced baseline (WMSR), adversary
//! models, a synchronous discrete-time simulator, and the generator that
//! turns a robustness counterexample into a concrete stuck scenario.

mod protocol;
mod sim;
mod witness;

pub use protocol::{
    considered_set, partition_extremes, rcpc_step, rescue_by_color, wmsr_step, ExtremeSide,
};
pub use sim::{
    check_agreement, check_safety, run_simulation, run_simulation_with_exit,
    validate_adversary_placement, verify_adversary_placement, write_adversary_sidecar,
    write_trace_csv,
};
pub use witness::necessity_witness;

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ColoredGraph, GraphError, NodeId, NodeSet};

/// Default agreement tolerance for generated scenarios.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
/// Default horizon for generated scenarios.
pub const DEFAULT_HORIZON: usize = 10_000;

#[derive(Error, Debug)]
pub enum ScenarioError {
    #[error("initial state has {got} entries, expected {expected}")]
    InitialLength { got: usize, expected: usize },
    #[error("adversary node {0} out of range")]
    AdversaryOutOfRange(usize),
    #[error("adversaries must all share one color: nodes {a} and {b} differ")]
    MixedAdversaryColors { a: usize, b: usize },
    #[error("F-total bound violated: {count} adversaries with F={f}")]
    TotalBoundViolated { count: usize, f: usize },
    #[error("F-local bound violated at node {node}: {count} adversarial neighbors with F={f}")]
    LocalBoundViolated { node: usize, count: usize, f: usize },
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error("tolerance must be positive (got {0})")]
    BadTolerance(f64),
    #[error("scenario leaves no normal node")]
    NoNormalNodes,
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("scenario file names neither an inline graph nor a graph_path")]
    MissingGraph,
}

/// Time-indexed behaviour of one compromised node. A malicious node
/// broadcasts a single value to all neighbors each step; these strategies
/// are oblivious functions of time and the node's initial value only.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Strategy {
    Constant { value: f64 },
    Ramp { slope: f64 },
    Oscillate { amplitude: f64, period: f64 },
}

impl Strategy {
    /// Value broadcast at step `t`, given the node's initial value.
    pub fn value_at(&self, initial: f64, t: usize) -> f64 {
        match *self {
            Strategy::Constant { value } => value,
            Strategy::Ramp { slope } => initial + slope * t as f64,
            Strategy::Oscillate { amplitude, period } => {
                initial + amplitude * (2.0 * std::f64::consts::PI * t as f64 / period).sin()
            }
        }
    }
}

/// Whether the adversary budget `F` bounds the whole network or every
/// neighborhood.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    FTotal,
    FLocal,
}

/// The compromised nodes, their common budget, and their behaviours. All
/// adversaries must share one color: an attacker compromises nodes by
/// exploiting a vulnerability specific to a single node type.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdversaryModel {
    pub scope: Scope,
    pub f: usize,
    /// Map from node index to strategy; BTreeMap keeps iteration (and
    /// therefore traces) deterministic.
    pub adversaries: BTreeMap<usize, Strategy>,
}

impl AdversaryModel {
    pub fn none(scope: Scope, f: usize) -> AdversaryModel {
        AdversaryModel {
            scope,
            f,
            adversaries: BTreeMap::new(),
        }
    }

    pub fn node_set(&self) -> NodeSet {
        self.adversaries.keys().map(|&i| NodeId(i)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Protocol {
    Rcpc,
    Wmsr,
}

/// Weighting of the considered values. Uniform assigns 1/|considered| to
/// every considered node including self, which keeps every weight at or
/// above 1/n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightRule {
    Uniform,
}

/// Everything needed to reproduce one simulation run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub graph: ColoredGraph,
    pub initial: Vec<f64>,
    pub adversary: AdversaryModel,
    pub protocol: Protocol,
    pub weights: WeightRule,
    pub horizon: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl Scenario {
    pub fn normal_set(&self) -> NodeSet {
        self.graph.all_nodes().difference(self.adversary.node_set())
    }
}

/// On-disk scenario format: the graph may be inline or referenced by path
/// (resolved relative to the scenario file).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScenarioFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<ColoredGraph>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph_path: Option<String>,
    pub initial: Vec<f64>,
    pub adversary: AdversaryModel,
    pub protocol: Protocol,
    #[serde(default = "default_weights")]
    pub weights: WeightRule,
    #[serde(default = "default_horizon")]
    pub horizon: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub seed: u64,
}

fn default_weights() -> WeightRule {
    WeightRule::Uniform
}
fn default_horizon() -> usize {
    DEFAULT_HORIZON
}
fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

impl ScenarioFile {
    pub fn from_scenario(sc: &Scenario) -> ScenarioFile {
        ScenarioFile {
            graph: Some(sc.graph.clone()),
            graph_path: None,
            initial: sc.initial.clone(),
            adversary: sc.adversary.clone(),
            protocol: sc.protocol,
            weights: sc.weights,
            horizon: sc.horizon,
            tolerance: sc.tolerance,
            seed: sc.seed,
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let file: ScenarioFile = serde_json::from_str(&text)?;
        file.resolve(path.parent())
    }

    pub fn resolve(self, base: Option<&Path>) -> Result<Scenario, ScenarioError> {
        let graph = match (self.graph, self.graph_path) {
            (Some(g), _) => g,
            (None, Some(rel)) => {
                let p = match base {
                    Some(b) => b.join(&rel),
                    None => Path::new(&rel).to_path_buf(),
                };
                ColoredGraph::load(p)?
            }
            (None, None) => return Err(ScenarioError::MissingGraph),
        };
        Ok(Scenario {
            graph,
            initial: self.initial,
            adversary: self.adversary,
            protocol: self.protocol,
            weights: self.weights,
            horizon: self.horizon,
            tolerance: self.tolerance,
            seed: self.seed,
        })
    }

    pub fn save(sc: &Scenario, path: impl AsRef<Path>) -> Result<(), ScenarioError> {
        let file = ScenarioFile::from_scenario(sc);
        std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
        Ok(())
    }
}

/// One simulation run: the full state history plus the per-step envelope of
/// normal-node values.
#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    /// `states[t][i]` is node `i`'s value at step `t`; length `horizon + 1`.
    pub states: Vec<Vec<f64>>,
    pub normal: NodeSet,
    /// Per-step maximum over normal nodes.
    pub max_series: Vec<f64>,
    /// Per-step minimum over normal nodes.
    pub min_series: Vec<f64>,
}

impl Trace {
    pub fn horizon(&self) -> usize {
        self.states.len() - 1
    }

    /// Final spread of normal-node values, recomputed from the last state
    /// rather than read from the envelope bookkeeping.
    pub fn final_spread(&self) -> f64 {
        let last = self.states.last().expect("trace has at least one state");
        spread_over(last, self.normal)
    }

    /// First step at which the normal spread drops below `eps`, if any.
    pub fn steps_to_agreement(&self, eps: f64) -> Option<usize> {
        (0..self.states.len()).find(|&t| self.max_series[t] - self.min_series[t] < eps)
    }
}

pub(crate) fn spread_over(state: &[f64], nodes: NodeSet) -> f64 {
    let mut max = f64::NEG_INFINITY;
    let mut min = f64::INFINITY;
    for v in nodes.iter() {
        max = max.max(state[v.0]);
        min = min.min(state[v.0]);
    }
    max - min
}
