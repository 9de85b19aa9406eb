//! Shared helpers for the integration tests.
//!
//! The centerpiece is a second, deliberately independent implementation of
//! classical (r,s)-robustness. It ignores colors, stores adjacency as plain
//! vectors, and enumerates set pairs by a mask/submask sweep instead of the
//! library's ternary counter, so agreement between the two routes is
//! meaningful evidence rather than a tautology.

#![allow(dead_code)]

use rescol::graph::{ColoredGraph, NodeId};

/// Direct classical (r,s)-robustness: for every pair of nonempty disjoint
/// subsets, either every node of one subset has at least `r` neighbors
/// outside its own subset, or at least `s` such nodes exist across both.
/// Ordered pairs are visited twice; the predicate is symmetric, so only
/// time is wasted, never correctness.
pub fn classic_rs_direct(g: &ColoredGraph, r: usize, s: usize) -> bool {
    let n = g.node_count();
    assert!(n <= 32, "direct checker uses u32 masks");
    let adj: Vec<u32> = (0..n)
        .map(|i| {
            g.neighbors(NodeId(i))
                .iter()
                .fold(0u32, |m, v| m | (1 << v.0))
        })
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };

    let outside_degree_ok = |set: u32, v: usize| (adj[v] & !set).count_ones() as usize >= r;

    for s1 in 1..=full {
        let comp = full & !s1;
        // classic submask walk: every nonempty subset of the complement
        let mut s2 = comp;
        while s2 != 0 {
            let mut x1 = 0usize;
            let mut all1 = true;
            for v in 0..n {
                if s1 & (1 << v) != 0 {
                    if outside_degree_ok(s1, v) {
                        x1 += 1;
                    } else {
                        all1 = false;
                    }
                }
            }
            let mut x2 = 0usize;
            let mut all2 = true;
            for v in 0..n {
                if s2 & (1 << v) != 0 {
                    if outside_degree_ok(s2, v) {
                        x2 += 1;
                    } else {
                        all2 = false;
                    }
                }
            }
            if !(all1 || all2 || x1 + x2 >= s) {
                return false;
            }
            s2 = (s2 - 1) & comp;
        }
    }
    true
}

/// All labeled graphs on `n` nodes, uniformly colored, streamed by edge
/// bitmask.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = ColoredGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let total: u64 = 1 << pairs.len();
    (0..total).map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &e)| e)
            .collect();
        ColoredGraph::new(n, &edges, vec![0; n]).expect("valid labeled graph")
    })
}
