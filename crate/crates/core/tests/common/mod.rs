#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use graphsig::enumerate::ingest_graph6;
use graphsig::Graph;
use proptest::prelude::*;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn load(name: &str) -> Vec<Graph> {
    let file = std::fs::File::open(data(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    ingest_graph6(std::io::BufReader::new(file), true)
        .map(|item| item.unwrap_or_else(|e| panic!("{name}: {e}")).graph)
        .collect()
}

/// All graphs on `n` vertices up to isomorphism, `n <= 8`.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    load(&format!("all_{n}.g6"))
}

/// All connected graphs on `n` vertices up to isomorphism, `n <= 9`.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    load(&format!("connected_{n}.g6"))
}

pub fn connected_upto(n: usize) -> impl Iterator<Item = Graph> {
    (1..=n).flat_map(connected_graphs)
}

pub fn all_upto(n: usize) -> impl Iterator<Item = Graph> {
    (1..=n).flat_map(all_graphs)
}

/// Smallest upper-triangle bit string over all relabelings.
pub fn brute_canonical(g: &Graph) -> Vec<bool> {
    let n = g.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    loop {
        let code: Vec<bool> = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .map(|(i, j)| g.has_edge(perm[i], perm[j]))
            .collect();
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
        if !next_permutation(&mut perm) {
            return best.unwrap_or_default();
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn arb_graph(max_order: usize) -> impl Strategy<Value = Graph> {
    (0..=max_order).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|j| (0..j).map(move |i| (i, j)))
                .zip(bits)
                .filter_map(|(e, b)| b.then_some(e))
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// Cycle counts by length from Hamiltonian-path counts over vertex subsets.
pub fn subset_dp(g: &Graph) -> BTreeMap<usize, u64> {
    let n = g.order();
    let mut dp = vec![vec![0u64; n]; 1 << n];
    for s in 0..n {
        dp[1 << s][s] = 1;
    }
    let mut counts = BTreeMap::new();
    for mask in 1usize..1 << n {
        let start = mask.trailing_zeros() as usize;
        for v in 0..n {
            let ways = dp[mask][v];
            if ways == 0 {
                continue;
            }
            for &u in g.neighbors(v) {
                if u > start && mask >> u & 1 == 0 {
                    dp[mask | 1 << u][u] += ways;
                }
            }
        }
        let len = mask.count_ones() as usize;
        if len >= 3 {
            let closing: u64 = g.neighbors(start).iter().filter(|&&v| mask >> v & 1 == 1).map(|&v| dp[mask][v]).sum();
            if closing > 0 {
                *counts.entry(len).or_insert(0) += closing / 2;
            }
        }
    }
    counts
}
