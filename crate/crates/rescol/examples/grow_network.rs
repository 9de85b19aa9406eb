//! Grow a network without losing its robustness certificate.
//!
//! Starting from the rainbow K5, attaches nodes under each growth rule and
//! re-certifies the claimed property after every step — the rules are
//! sufficient conditions, and the checkers confirm them on the spot.
//!
//! ```text
//! cargo run --example grow_network
//! ```

use rescol::construct::{attach_node_r_robust, attach_node_report, GrowthRule};
use rescol::graph::{k5_rainbow, Color, NodeId, NodeSet};
use rescol::robustness::is_r_robust_colored;

fn main() {
    let g = k5_rainbow();
    println!("seed: rainbow K5, (4,4)-robust with coloring");

    // three distinctly colored neighbors preserve any (r,s)
    let neighbors: NodeSet = [NodeId(0), NodeId(1), NodeId(2)].into_iter().collect();
    let report = attach_node_report(&g, GrowthRule::ThreeColors, neighbors, Color(0), 4, 4).unwrap();
    println!(
        "attached node 5 to three distinct colors -> (4,4) re-certified: {}",
        report.verdict.holds
    );
    let g = report.graph;

    // r + s - 1 neighbors of one color also suffice; aim (2,2) => 3 of color 0
    let mono: NodeSet = [NodeId(0), NodeId(5)].into_iter().collect();
    match attach_node_report(&g, GrowthRule::MonoDegree { r: 2, s: 2 }, mono, Color(1), 2, 2) {
        Ok(_) => unreachable!("two neighbors cannot satisfy the rule"),
        Err(e) => println!("under-provisioned attachment rejected: {e}"),
    }
    // nodes 0 and 5 share color 0, node 1 differs: max(r,s) of one color
    // plus one of another
    let mixed: NodeSet = [NodeId(0), NodeId(5), NodeId(1)].into_iter().collect();
    let report = attach_node_report(
        &g,
        GrowthRule::MaxRsPlusOne { r: 2, s: 2 },
        mixed,
        Color(1),
        2,
        2,
    )
    .unwrap();
    println!(
        "mixed attachment (two of one color, one of another) -> (2,2) re-certified: {}",
        report.verdict.holds
    );

    // the pooled-degree property has its own clause set
    let g = k5_rainbow();
    let trio: NodeSet = [NodeId(1), NodeId(2), NodeId(3)].into_iter().collect();
    let grown = attach_node_r_robust(&g, 3, trio, Color(4)).unwrap();
    println!(
        "pooled-degree growth -> 3-robust with coloring re-certified: {}",
        is_r_robust_colored(&grown, 3).unwrap().holds
    );
}
