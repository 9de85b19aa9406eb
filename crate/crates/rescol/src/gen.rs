//! Seeded random generation and checker-guided search for graphs with a
//! wanted robustness certificate. Everything here is rejection sampling:
//! candidates are drawn from a seeded RNG and kept only when the exhaustive
//! checkers confirm the property, so generated fixtures are certified, never
//! assumed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::ColoredGraph;
use crate::robustness::{is_r_robust_colored, is_rs_robust_colored};

/// Random simple graph with edge probability `p` and a uniformly random
/// coloring from `palette` colors.
pub fn random_colored_graph(
    rng: &mut ChaCha8Rng,
    n: usize,
    p: f64,
    palette: usize,
) -> ColoredGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    let colors: Vec<usize> = (0..n).map(|_| rng.gen_range(0..palette)).collect();
    ColoredGraph::new(n, &edges, colors).expect("generated graph is valid")
}

/// Searches for `count` graphs certified `(r, s)`-robust with coloring.
/// Node counts cycle through `n_range`, edge density adapts upward as
/// rejections accumulate. Panics if `max_tries` candidates are exhausted,
/// which signals an unsatisfiable request rather than bad luck.
pub fn search_rs_robust_colored(
    seed: u64,
    count: usize,
    n_range: std::ops::RangeInclusive<usize>,
    r: usize,
    s: usize,
    max_tries: usize,
) -> Vec<ColoredGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ns: Vec<usize> = n_range.collect();
    let mut found = Vec::new();
    for tries in 0..max_tries {
        let n = ns[tries % ns.len()];
        let p = 0.45 + 0.5 * (tries as f64 / max_tries as f64);
        let palette = 5.min(n);
        let g = random_colored_graph(&mut rng, n, p.min(0.95), palette);
        if is_rs_robust_colored(&g, r, s).map(|v| v.holds).unwrap_or(false) {
            found.push(g);
            if found.len() == count {
                return found;
            }
        }
    }
    panic!(
        "found only {}/{count} ({r},{s})-robust-with-coloring graphs in {max_tries} tries",
        found.len()
    );
}

/// Searches for `count` graphs that FAIL the colored `(r, s)` check, i.e.
/// graphs whose checker verdict carries a witness pair.
pub fn search_failing_rs_colored(
    seed: u64,
    count: usize,
    n_range: std::ops::RangeInclusive<usize>,
    r: usize,
    s: usize,
    max_tries: usize,
) -> Vec<ColoredGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ns: Vec<usize> = n_range.collect();
    let mut found = Vec::new();
    for tries in 0..max_tries {
        let n = ns[tries % ns.len()];
        // sparse candidates fail robustness easily but stay interesting
        let p = 0.15 + 0.3 * rng.gen::<f64>();
        let palette = rng.gen_range(1..=4usize.min(n));
        let g = random_colored_graph(&mut rng, n, p, palette);
        if is_rs_robust_colored(&g, r, s)
            .map(|v| !v.holds)
            .unwrap_or(false)
        {
            found.push(g);
            if found.len() == count {
                return found;
            }
        }
    }
    panic!(
        "found only {}/{count} graphs failing colored ({r},{s}) in {max_tries} tries",
        found.len()
    );
}

/// Searches for `count` graphs certified `r`-robust with coloring.
pub fn search_r_robust_colored(
    seed: u64,
    count: usize,
    n_range: std::ops::RangeInclusive<usize>,
    r: usize,
    max_tries: usize,
) -> Vec<ColoredGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ns: Vec<usize> = n_range.collect();
    let mut found = Vec::new();
    for tries in 0..max_tries {
        let n = ns[tries % ns.len()];
        let p = 0.5 + 0.45 * (tries as f64 / max_tries as f64);
        let palette = 5.min(n);
        let g = random_colored_graph(&mut rng, n, p.min(0.95), palette);
        if is_r_robust_colored(&g, r).map(|v| v.holds).unwrap_or(false) {
            found.push(g);
            if found.len() == count {
                return found;
            }
        }
    }
    panic!(
        "found only {}/{count} {r}-robust-with-coloring graphs in {max_tries} tries",
        found.len()
    );
}
