//! Test graph sources: every connected graph on a few vertices up to
//! isomorphism, seeded random cubic graphs, and a handful of named graphs.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order [`connected_graphs`] will enumerate.
pub const MAX_CATALOG_ORDER: usize = 6;

fn pair_bit(n: usize, i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    // Row-major index of (a, b) in the strict upper triangle.
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn mask_is_connected(n: usize, mask: u32, all_pairs: &[(usize, usize)]) -> bool {
    let mut reach = 1u32;
    loop {
        let before = reach;
        for (bit, &(i, j)) in all_pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 && (reach >> i & 1 == 1 || reach >> j & 1 == 1) {
                reach |= 1 << i | 1 << j;
            }
        }
        if reach == before {
            return reach == (1u32 << n) - 1;
        }
    }
}

/// All connected graphs on `n` vertices, one per isomorphism class.
///
/// Each class is represented by its lexicographically smallest edge mask, and
/// the list is sorted by edge count and then by that mask, so the order is
/// stable. Counts are 1, 1, 2, 6, 21, 112 for `n = 1..=6`.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_CATALOG_ORDER {
        return Err(Error::Parameter(format!(
            "catalog covers 1..={MAX_CATALOG_ORDER} vertices, asked for {n}"
        )));
    }
    let all_pairs = pairs(n);
    let perms = permutations(n);
    // Image bit of every pair under every permutation.
    let images: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            all_pairs
                .iter()
                .map(|&(i, j)| pair_bit(n, p[i], p[j]))
                .collect()
        })
        .collect();
    let mut classes = BTreeSet::new();
    for mask in 0u32..1 << all_pairs.len() {
        if !mask_is_connected(n, mask, &all_pairs) {
            continue;
        }
        let canonical = images
            .iter()
            .map(|image| {
                image
                    .iter()
                    .enumerate()
                    .filter(|&(bit, _)| mask >> bit & 1 == 1)
                    .fold(0u32, |acc, (_, &to)| acc | 1 << to)
            })
            .min()
            .unwrap();
        classes.insert((canonical.count_ones(), canonical));
    }
    classes
        .into_iter()
        .enumerate()
        .map(|(index, (_, mask))| {
            let edges = all_pairs
                .iter()
                .enumerate()
                .filter(|&(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, &e)| e);
            Graph::from_edges(n, edges, format!("connected{n}#{index}"))
        })
        .collect()
}

/// Every connected graph with `1..=max_n` vertices.
pub fn connected_graphs_up_to(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(connected_graphs(n)?);
    }
    Ok(out)
}

/// A connected simple cubic graph on `n` vertices drawn by the pairing model
/// with rejection. The same `(n, seed)` always gives the same graph.
pub fn random_cubic_graph(n: usize, seed: u64) -> Result<Graph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::Parameter(format!(
            "cubic graphs need an even order of at least 4, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
    for attempt in 0u32.. {
        points.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = points
            .chunks(2)
            .map(|c| (c[0].min(c[1]), c[0].max(c[1])))
            .collect();
        edges.sort_unstable();
        let simple = edges.iter().all(|&(u, v)| u != v) && edges.windows(2).all(|w| w[0] != w[1]);
        if !simple {
            continue;
        }
        let g = Graph::from_edges(n, edges, format!("cubic{n}-seed{seed}"))?;
        if g.is_connected() {
            return Ok(g);
        }
        debug_assert!(attempt < 1_000_000);
    }
    unreachable!()
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner), "petersen").unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    let edges: Vec<_> = (0..a)
        .flat_map(|i| (a..a + b).map(move |j| (i, j)))
        .collect();
    Graph::from_edges(a + b, edges, format!("K{a},{b}"))
}

/// Named graphs of up to ten vertices.
pub fn named_graphs() -> Vec<Graph> {
    let g = |n, e: &[(usize, usize)], name: &str| {
        Graph::from_edges(n, e.iter().copied(), name).unwrap()
    };
    vec![
        g(4, &[(0, 1), (0, 2), (0, 3)], "claw"),
        g(4, &[(0, 1), (1, 2), (2, 0), (2, 3)], "paw"),
        g(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)], "diamond"),
        g(5, &[(0, 1), (1, 2), (2, 0), (1, 3), (2, 4)], "bull"),
        g(
            5,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 4)],
            "house",
        ),
        g(
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 4),
                (4, 5),
                (5, 3),
                (0, 3),
                (1, 4),
                (2, 5),
            ],
            "prism",
        ),
        g(
            6,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 5),
                (3, 4),
                (3, 5),
                (4, 5),
            ],
            "octahedron",
        ),
        complete_bipartite(3, 3).unwrap(),
        petersen(),
    ]
}
