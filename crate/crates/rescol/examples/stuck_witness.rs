//! From a failed robustness check to a concrete non-converging run.
//!
//! When a graph fails the colored (F+1,F+1) check, the violating subset pair
//! can be turned into an executable scenario: the two sets start at 0 and 1,
//! the pair's few valid nodes are made constant adversaries, and the
//! simulation then never closes the gap — constructive evidence that the
//! robustness condition is necessary, not just sufficient.
//!
//! ```text
//! cargo run --example stuck_witness
//! ```

use rescol::consensus::{necessity_witness, run_simulation};
use rescol::graph::{k5_rainbow, ColoredGraph};

fn main() {
    // a 6-cycle, uniformly colored: fails the colored (2,2) check
    let edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    let c6 = ColoredGraph::new(6, &edges, vec![0; 6]).unwrap();

    let mut sc = necessity_witness(&c6, 1)
        .unwrap()
        .expect("the uniform 6-cycle fails the colored (2,2) check");
    sc.horizon = 1_000;
    println!("initial values: {:?}", sc.initial);
    println!(
        "adversaries (valid nodes of the violating pair): {:?}",
        sc.adversary.adversaries
    );

    let tr = run_simulation(&sc).unwrap();
    println!(
        "after {} steps the normal spread is still {:.3}",
        tr.horizon(),
        tr.final_spread()
    );
    assert!(tr.final_spread() >= 0.5);

    // a robust graph has no such witness
    assert!(necessity_witness(&k5_rainbow(), 3).unwrap().is_none());
    println!("rainbow K5 with budget 3: no witness, as certified");
}
