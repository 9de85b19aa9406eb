//! Plain filtering (WMSR) versus the color-aware rule (RCP-C) under attack.
//!
//! Runs the bundled comparison suites. The total-budget suite uses an 8-node
//! fixture certified (2,2)-robust with colors erased but (4,4)-robust with
//! coloring; three same-color constant adversaries defeat WMSR yet leave
//! RCP-C convergent. The local-budget suite does the same with a 3-robust /
//! 5-robust-with-coloring 11-node fixture and two adversaries per
//! neighborhood.
//!
//! ```text
//! cargo run --example compare_protocols
//! ```

use std::path::Path;

use rescol::suite::{run_suite, ExperimentSuite};

fn main() {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for name in ["ftotal_suite", "flocal_suite"] {
        let path = fixtures.join("suites").join(format!("{name}.json"));
        let suite = ExperimentSuite::load(&path).unwrap();
        println!("== {name}");
        for s in run_suite(&suite, path.parent(), None).unwrap() {
            println!(
                "  {:24} spread {:9.3e}  agreement {:>10}  safety {}  expected {:?} -> {}",
                s.name,
                s.final_spread,
                s.steps_to_agreement
                    .map_or("never".to_string(), |t| format!("step {t}")),
                s.safety,
                s.expected,
                if s.matched { "match" } else { "MISMATCH" }
            );
        }
    }
}
