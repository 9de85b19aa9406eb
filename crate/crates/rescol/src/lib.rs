//! Color-aware network robustness and resilient consensus.
//!
//! Networks of heterogeneous nodes can be hardened against adversaries
//! without adding links: when nodes come in several implementation variants
//! ("colors") and one exploited vulnerability only compromises nodes of a
//! single variant, even a sparse graph behaves like a structurally robust
//! one. This crate makes that theory executable:
//!
//! * [`graph`] — colored undirected graphs and their JSON interchange format.
//! * [`robustness`] — exhaustive, witness-producing checkers for classical
//!   `(r, s)`-robustness and its color-aware generalizations.
//! * [`consensus`] — the color-aware resilient update rule (RCP-C), the
//!   plain WMSR baseline, malicious-adversary models, a synchronous
//!   simulator, and the generator that turns a failed robustness certificate
//!   into a concrete non-converging scenario.
//! * [`construct`] — robustness-preserving growth rules and constructive
//!   generators for mono-chromatic robust graphs.
//! * [`gen`] — seeded, checker-guided random search for certified fixtures.
//! * [`suite`] — batch experiment runner comparing protocols on scenarios
//!   with expected outcomes.
//!
//! The `rescol` binary exposes all of this as `check`, `simulate`,
//! `witness`, `grow`, `make`, and `suite` subcommands; the `examples/`
//! directory holds one runnable walkthrough per capability.

pub mod consensus;
pub mod construct;
pub mod gen;
pub mod graph;
pub mod robustness;
pub mod suite;

pub use graph::{Color, ColoredGraph, GraphError, NodeId, NodeSet};
pub use robustness::{RobustnessFrontier, RobustnessVerdict, Witness};
