//! Regenerates the committed fixture graphs and scenario suites.
//!
//! The bundled protocol-comparison suites need graphs with a very specific
//! certificate gap: structurally sparse enough that the plain filtering
//! protocol (WMSR) is overwhelmed, yet color-diverse enough that the
//! color-aware protocol (RCP-C) is provably safe. Such graphs are found by
//! seeded rejection sampling against the exhaustive checkers, then an
//! adversary placement with the wanted outcome gap is found by simulation.
//! Everything is deterministic, so rerunning this example rewrites the same
//! files:
//!
//! ```text
//! cargo run --release --example find_fixtures
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rescol::consensus::{
    run_simulation, validate_adversary_placement, AdversaryModel, Protocol, Scenario,
    ScenarioFile, Scope, Strategy, WeightRule,
};
use rescol::graph::ColoredGraph;
use rescol::robustness::{is_r_robust_colored, is_rs_robust_colored};
use rescol::suite::{ExpectedOutcome, ExperimentSuite, SuiteEntry};

const HORIZON: usize = 10_000;
const TOLERANCE: f64 = 1e-6;

fn random_graph_with_classes(rng: &mut ChaCha8Rng, class_sizes: &[usize], p: f64) -> ColoredGraph {
    let n: usize = class_sizes.iter().sum();
    let mut colors = Vec::with_capacity(n);
    for (c, &size) in class_sizes.iter().enumerate() {
        colors.extend(std::iter::repeat(c).take(size));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    ColoredGraph::new(n, &edges, colors).expect("generated graph is valid")
}

fn scenario(
    g: &ColoredGraph,
    initial: Vec<f64>,
    scope: Scope,
    f: usize,
    adversaries: BTreeMap<usize, Strategy>,
    protocol: Protocol,
) -> Scenario {
    Scenario {
        graph: g.clone(),
        initial,
        adversary: AdversaryModel {
            scope,
            f,
            adversaries,
        },
        protocol,
        weights: WeightRule::Uniform,
        horizon: HORIZON,
        tolerance: TOLERANCE,
        seed: 0,
    }
}

fn final_spread(sc: &Scenario) -> f64 {
    run_simulation(sc).expect("scenario is valid").final_spread()
}

/// All same-color node subsets of the given size.
fn same_color_subsets(g: &ColoredGraph, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for (_, class) in g.color_classes(g.all_nodes()) {
        let members: Vec<usize> = class.iter().map(|v| v.0).collect();
        let mut pick = vec![0usize; size];
        fn rec(members: &[usize], size: usize, start: usize, pick: &mut Vec<usize>, depth: usize, out: &mut Vec<Vec<usize>>) {
            if depth == size {
                out.push(pick[..size].to_vec());
                return;
            }
            for i in start..members.len() {
                pick[depth] = members[i];
                rec(members, size, i + 1, pick, depth + 1, out);
            }
        }
        rec(&members, size, 0, &mut pick, 0, &mut out);
    }
    out
}

fn candidate_strategies() -> Vec<Strategy> {
    vec![
        Strategy::Constant { value: 0.0 },
        Strategy::Constant { value: 1.0 },
        Strategy::Ramp { slope: 0.02 },
        Strategy::Oscillate { amplitude: 0.6, period: 40.0 },
    ]
}

/// Finds an adversary placement of `count` same-color nodes for which the
/// plain protocol disagrees at the horizon while the color-aware one reaches
/// agreement. Returns the placement, strategy, and initial values.
fn find_outcome_gap(
    g: &ColoredGraph,
    scope: Scope,
    f: usize,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Option<(Vec<usize>, Strategy, Vec<f64>)> {
    let n = g.node_count();
    for _ in 0..4 {
        let initial: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        for nodes in same_color_subsets(g, count) {
            for strat in candidate_strategies() {
                let adv: BTreeMap<usize, Strategy> =
                    nodes.iter().map(|&v| (v, strat)).collect();
                let model = AdversaryModel {
                    scope,
                    f,
                    adversaries: adv.clone(),
                };
                if !validate_adversary_placement(g, &model) {
                    continue;
                }
                let wmsr = scenario(
                    &g.recolor_uniform(),
                    initial.clone(),
                    scope,
                    f,
                    adv.clone(),
                    Protocol::Wmsr,
                );
                if final_spread(&wmsr) < 1e-2 {
                    continue;
                }
                let rcpc = scenario(g, initial.clone(), scope, f, adv, Protocol::Rcpc);
                if final_spread(&rcpc) < TOLERANCE {
                    return Some((nodes, strat, initial));
                }
            }
        }
    }
    None
}

/// Writes the graph JSON with its certification verdicts embedded as an
/// extra key (ignored by the loader, kept for human readers).
fn write_certified_graph(g: &ColoredGraph, certs: serde_json::Value, path: &Path) {
    let mut v: serde_json::Value = serde_json::from_str(&g.to_json()).unwrap();
    v["certifications"] = certs;
    std::fs::write(path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    println!("wrote {}", path.display());
}

fn suite_entry(name: &str, graph_path: &str, sc: &Scenario, expected: ExpectedOutcome) -> SuiteEntry {
    let mut file = ScenarioFile::from_scenario(sc);
    file.graph = None;
    file.graph_path = Some(graph_path.to_string());
    SuiteEntry {
        name: name.to_string(),
        scenario: file,
        expected,
    }
}

/// Fixture for the total-budget comparison: 8 nodes, color classes of sizes
/// 6/1/1, certified (2,2)-robust when colors are erased but (4,4)-robust
/// with coloring, so a budget of three same-color adversaries is survivable
/// only by the color-aware protocol.
fn find_ftotal_fixture(dir: &Path) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF707A1);
    loop {
        let p = 0.55 + 0.35 * rng.gen::<f64>();
        let g = random_graph_with_classes(&mut rng, &[6, 1, 1], p);
        if !is_rs_robust_colored(&g, 4, 4).unwrap().holds {
            continue;
        }
        let uniform = g.recolor_uniform();
        if !is_rs_robust_colored(&uniform, 2, 2).unwrap().holds {
            continue;
        }
        // the gap is the point: erased colors must NOT already give (4,4)
        if is_rs_robust_colored(&uniform, 4, 4).unwrap().holds {
            continue;
        }
        let Some((nodes, strat, initial)) = find_outcome_gap(&g, Scope::FTotal, 3, 3, &mut rng)
        else {
            continue;
        };

        let graph_file = "ftotal_graph.json";
        write_certified_graph(
            &g,
            serde_json::json!({
                "rs_robust_with_coloring": [4, 4],
                "rs_robust_colors_erased": [2, 2],
                "not_rs_robust_colors_erased": [4, 4],
            }),
            &dir.join(graph_file),
        );

        let adv: BTreeMap<usize, Strategy> = nodes.iter().map(|&v| (v, strat)).collect();
        let clean = scenario(&g, initial.clone(), Scope::FTotal, 3, BTreeMap::new(), Protocol::Rcpc);
        let mut clean_wmsr = clean.clone();
        clean_wmsr.protocol = Protocol::Wmsr;
        let rcpc = scenario(&g, initial.clone(), Scope::FTotal, 3, adv.clone(), Protocol::Rcpc);
        let wmsr = scenario(&g.recolor_uniform(), initial, Scope::FTotal, 3, adv, Protocol::Wmsr);
        // the WMSR scenario embeds its colors-erased copy of the graph inline
        let suite = ExperimentSuite {
            entries: vec![
                suite_entry("rcpc_no_attack", &format!("../{graph_file}"), &clean, ExpectedOutcome::Converges),
                suite_entry("wmsr_no_attack", &format!("../{graph_file}"), &clean_wmsr, ExpectedOutcome::Converges),
                suite_entry("rcpc_three_malicious", &format!("../{graph_file}"), &rcpc, ExpectedOutcome::Converges),
                SuiteEntry {
                    name: "wmsr_three_malicious".to_string(),
                    scenario: ScenarioFile::from_scenario(&wmsr),
                    expected: ExpectedOutcome::Diverges,
                },
            ],
        };
        let path = dir.join("suites/ftotal_suite.json");
        std::fs::write(&path, serde_json::to_string_pretty(&suite).unwrap()).unwrap();
        println!("wrote {} (adversaries {:?}, {:?})", path.display(), nodes, strat);
        return;
    }
}

/// Fixture for the local-budget comparison: 11 nodes, color classes of sizes
/// 6/2/3, certified 3-robust when colors are erased and 5-robust with
/// coloring, so two same-color adversaries per neighborhood defeat plain
/// filtering with F = 2 but not the color-aware rule.
fn find_flocal_fixture(dir: &Path) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF10CA1);
    loop {
        let p = 0.4 + 0.4 * rng.gen::<f64>();
        let g = random_graph_with_classes(&mut rng, &[6, 2, 3], p);
        if !is_r_robust_colored(&g, 5).unwrap().holds {
            continue;
        }
        let uniform = g.recolor_uniform();
        if !is_r_robust_colored(&uniform, 3).unwrap().holds {
            continue;
        }
        if is_r_robust_colored(&uniform, 5).unwrap().holds {
            continue;
        }
        let Some((nodes, strat, initial)) = find_outcome_gap(&g, Scope::FLocal, 2, 2, &mut rng)
        else {
            continue;
        };

        let graph_file = "flocal_graph.json";
        write_certified_graph(
            &g,
            serde_json::json!({
                "r_robust_with_coloring": 5,
                "r_robust_colors_erased": 3,
                "not_r_robust_colors_erased": 5,
            }),
            &dir.join(graph_file),
        );

        let adv: BTreeMap<usize, Strategy> = nodes.iter().map(|&v| (v, strat)).collect();
        let rcpc = scenario(&g, initial.clone(), Scope::FLocal, 2, adv.clone(), Protocol::Rcpc);
        let wmsr = scenario(&g.recolor_uniform(), initial, Scope::FLocal, 2, adv, Protocol::Wmsr);
        let suite = ExperimentSuite {
            entries: vec![
                suite_entry("rcpc_local_attack", &format!("../{graph_file}"), &rcpc, ExpectedOutcome::Converges),
                SuiteEntry {
                    name: "wmsr_local_attack".to_string(),
                    scenario: ScenarioFile::from_scenario(&wmsr),
                    expected: ExpectedOutcome::Diverges,
                },
            ],
        };
        let path = dir.join("suites/flocal_suite.json");
        std::fs::write(&path, serde_json::to_string_pretty(&suite).unwrap()).unwrap();
        println!("wrote {} (adversaries {:?}, {:?})", path.display(), nodes, strat);
        return;
    }
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(dir.join("suites")).unwrap();
    find_ftotal_fixture(&dir);
    find_flocal_fixture(&dir);
}
