//! Certify robustness properties of colored graphs.
//!
//! Builds a few small graphs and runs every checker: classical (r,s)-
//! robustness (colors erased), its color-aware generalization, pooled-degree
//! r-robustness with coloring, mono-chromatic robustness, and the frontier
//! of all maximal (r,s) points.
//!
//! ```text
//! cargo run --example check_robustness
//! ```

use rescol::graph::{k5_rainbow, ColoredGraph};
use rescol::robustness::{
    disjoint_pair_count, is_mono_chromatic_robust, is_r_robust_colored, is_rs_robust_classic,
    is_rs_robust_colored, max_rs_frontier,
};

fn report(name: &str, g: &ColoredGraph) {
    println!("== {name}: {} nodes, {} edges, {} colors", g.node_count(), g.edge_count(), g.distinct_colors_in(g.all_nodes()));
    println!("   subset pairs examined per check: {}", disjoint_pair_count(g.node_count()));
    for (r, s) in [(2, 2), (3, 3), (4, 4)] {
        let classic = is_rs_robust_classic(g, r, s).unwrap().holds;
        let colored = is_rs_robust_colored(g, r, s).unwrap().holds;
        println!("   ({r},{s})-robust: colors erased {classic:5}, with coloring {colored:5}");
    }
    for r in [2, 3] {
        println!(
            "   {r}-robust with coloring: {}",
            is_r_robust_colored(g, r).unwrap().holds
        );
    }
    println!(
        "   mono-chromatic robust: {}",
        is_mono_chromatic_robust(g).unwrap().holds
    );
    let frontier = max_rs_frontier(g, 5, 5).unwrap();
    println!("   maximal (r,s) with coloring up to (5,5): {:?}", frontier.maximal);
}

fn main() {
    // the rainbow K5: the smallest mono-chromatic robust graph
    report("rainbow K5", &k5_rainbow());

    // a 6-cycle with alternating colors: sparse, but the coloring still
    // buys validity through the two-distinct-colors clause
    let edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    let c6 = ColoredGraph::new(6, &edges, vec![0, 1, 0, 1, 0, 1]).unwrap();
    report("alternating 6-cycle", &c6);

    // a witness in action: the colored checker names the violating pair
    let v = is_rs_robust_colored(&c6.recolor_uniform(), 2, 2).unwrap();
    println!("\nuniform 6-cycle fails (2,2); violating pair:");
    println!("{}", serde_json::to_string_pretty(&v.witness).unwrap());
}
