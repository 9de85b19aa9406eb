//! Build diversity into a network, then lose a whole color class.
//!
//! Constructs a mono-chromatic robust graph — every subset pair contains a
//! node with three distinctly colored outside neighbors — and then, one
//! color class at a time, turns the entire class malicious. The remaining
//! normal nodes still reach agreement: a single exploited implementation
//! variant cannot break consensus, no matter which variant it is.
//!
//! ```text
//! cargo run --example diversity_construction
//! ```

use rescol::consensus::{
    run_simulation, AdversaryModel, Protocol, Scenario, Scope, Strategy, WeightRule,
};
use rescol::construct::{build_f_elemental, build_mono_chromatic_robust};
use rescol::robustness::is_mono_chromatic_robust;

fn main() {
    let g = build_mono_chromatic_robust(12, 7).unwrap();
    println!(
        "built {} nodes / {} edges, mono-chromatic robust: {}",
        g.node_count(),
        g.edge_count(),
        is_mono_chromatic_robust(&g).unwrap().holds
    );

    for (color, class) in g.color_classes(g.all_nodes()) {
        let sc = Scenario {
            graph: g.clone(),
            initial: (0..g.node_count()).map(|i| (i % 7) as f64 / 7.0).collect(),
            adversary: AdversaryModel {
                scope: Scope::FTotal,
                f: class.len(),
                adversaries: class
                    .iter()
                    .map(|v| (v.0, Strategy::Constant { value: -3.0 }))
                    .collect(),
            },
            protocol: Protocol::Rcpc,
            weights: WeightRule::Uniform,
            horizon: 10_000,
            tolerance: 1e-6,
            seed: 0,
        };
        let tr = run_simulation(&sc).unwrap();
        println!(
            "color {:?} fully compromised ({} nodes): normal spread {:.3e} after {:?} steps",
            color,
            class.len(),
            tr.final_spread(),
            tr.steps_to_agreement(sc.tolerance)
        );
    }

    // the canonical dense construction for a given budget
    let e = build_f_elemental(3).unwrap();
    println!(
        "elemental graph for budget 3: {} nodes, mono-chromatic robust: {}",
        e.node_count(),
        is_mono_chromatic_robust(&e).unwrap().holds
    );
}
