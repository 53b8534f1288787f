//! Exhaustive ground truth for small graphs.
//!
//! Nothing here calls the forcing engine. Leaks are modelled literally: each
//! leaked vertex gets a fresh pendant neighbor that starts uncolored, and the
//! color-change rule is applied one force at a time on the enlarged graph.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par::{find_first_map, Execution};
use crate::vertex_set::{binomial, Combinations, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteOptions {
    /// Largest graph the oracle will accept.
    pub max_vertices: usize,
    /// Upper limit on `sum_s C(n, s) * C(n, l)` closure runs.
    pub max_closures: u128,
    pub execution: Execution,
}

impl Default for BruteOptions {
    fn default() -> Self {
        Self {
            max_vertices: 16,
            max_closures: 50_000_000,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteResult {
    pub z: usize,
    /// The lexicographically first forcing set of minimum size.
    pub set: VertexSet,
}

/// A graph with one pendant per leaked vertex appended after the originals.
struct PendantGraph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
}

impl PendantGraph {
    fn new(g: &Graph, leaks: &[usize]) -> Self {
        let n = g.n();
        let mut adjacency: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
        for (i, &v) in leaks.iter().enumerate() {
            let pendant = n + i;
            adjacency[v].push(pendant);
            adjacency.push(vec![v]);
        }
        Self { n, adjacency }
    }

    /// Applies single forces until none is available; true when every
    /// original vertex ends up colored.
    fn colors_originals(&self, initial: &[usize]) -> bool {
        let mut colored = vec![false; self.adjacency.len()];
        for &v in initial {
            colored[v] = true;
        }
        loop {
            let mut progressed = false;
            for u in 0..self.adjacency.len() {
                if !colored[u] {
                    continue;
                }
                let mut white = self.adjacency[u].iter().filter(|&&w| !colored[w]);
                if let (Some(&w), None) = (white.next(), white.next()) {
                    colored[w] = true;
                    progressed = true;
                }
            }
            if !progressed {
                return colored[..self.n].iter().all(|&c| c);
            }
        }
    }
}

fn is_l_forcing(g: &Graph, candidate: &[usize], ell: usize) -> bool {
    let k = ell.min(g.n());
    Combinations::new(g.n(), k)
        .all(|leaks| PendantGraph::new(g, &leaks).colors_originals(candidate))
}

fn check_size(g: &Graph, opts: &BruteOptions) -> Result<()> {
    if g.n() > opts.max_vertices {
        return Err(Error::ResourceCap(format!(
            "brute force limited to {} vertices, graph has {}",
            opts.max_vertices,
            g.n()
        )));
    }
    Ok(())
}

pub fn brute_force_z(g: &Graph, ell: usize) -> Result<BruteResult> {
    brute_force_z_with(g, ell, &BruteOptions::default())
}

/// Smallest `ell`-forcing set by exhaustive search, sizes ascending and
/// lexicographic within a size.
pub fn brute_force_z_with(g: &Graph, ell: usize, opts: &BruteOptions) -> Result<BruteResult> {
    check_size(g, opts)?;
    let n = g.n();
    let placements = binomial(n, ell.min(n));
    let mut spent: u128 = 0;
    for size in 0..=n {
        spent = spent.saturating_add(binomial(n, size).saturating_mul(placements));
        if spent > opts.max_closures {
            return Err(Error::ResourceCap(format!(
                "brute force would exceed {} closure runs before size {size}",
                opts.max_closures
            )));
        }
        let candidates: Vec<Vec<usize>> = Combinations::new(n, size).collect();
        let found = find_first_map(opts.execution, &candidates, |c| {
            is_l_forcing(g, c, ell).then(|| c.clone())
        });
        if let Some((_, set)) = found {
            return Ok(BruteResult {
                z: size,
                set: VertexSet::from_members(n, set),
            });
        }
    }
    unreachable!("the full vertex set always forces")
}

/// Every non-empty `T` with `|T| <= max_size` that some leak set of size at
/// most `ell` leaves exactly uncolored when starting from `V \ T`.
///
/// Output is sorted by size, then lexicographically.
pub fn enumerate_forts(g: &Graph, ell: usize, max_size: usize) -> Result<Vec<VertexSet>> {
    const MAX_VERTICES: usize = 10;
    if g.n() > MAX_VERTICES {
        return Err(Error::ResourceCap(format!(
            "fort enumeration limited to {MAX_VERTICES} vertices, graph has {}",
            g.n()
        )));
    }
    let n = g.n();
    let budget = ell.min(n);
    let leak_sets: Vec<Vec<usize>> = (0..=budget).flat_map(|k| Combinations::new(n, k)).collect();
    let pendants: Vec<PendantGraph> = leak_sets.iter().map(|l| PendantGraph::new(g, l)).collect();
    let mut forts = Vec::new();
    for size in 1..=max_size.min(n) {
        for t in Combinations::new(n, size) {
            let outside: Vec<usize> = (0..n).filter(|v| !t.contains(v)).collect();
            if pendants.iter().any(|p| leaves_exactly(p, &outside, &t)) {
                forts.push(VertexSet::from_members(n, t));
            }
        }
    }
    Ok(forts)
}

/// True when starting from `initial` no original vertex outside it gets colored.
fn leaves_exactly(p: &PendantGraph, initial: &[usize], rest: &[usize]) -> bool {
    let mut colored = vec![false; p.adjacency.len()];
    for &v in initial {
        colored[v] = true;
    }
    loop {
        let mut progressed = false;
        for u in 0..p.adjacency.len() {
            if !colored[u] {
                continue;
            }
            let mut white = p.adjacency[u].iter().filter(|&&w| !colored[w]);
            if let (Some(&w), None) = (white.next(), white.next()) {
                if w < p.n {
                    return false;
                }
                colored[w] = true;
                progressed = true;
            }
        }
        if !progressed {
            return rest.iter().all(|&v| !colored[v]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};

    fn fam(spec: FamilySpec) -> Graph {
        build_family(spec).unwrap()
    }

    #[test]
    fn brute_examples() {
        let r = brute_force_z(&fam(FamilySpec::Path(3)), 1).unwrap();
        assert_eq!((r.z, r.set.to_vec()), (2, vec![0, 2]));
        let r = brute_force_z(&fam(FamilySpec::Path(1)), 0).unwrap();
        assert_eq!((r.z, r.set.to_vec()), (1, vec![0]));
        let r = brute_force_z(&fam(FamilySpec::Cycle(6)), 2).unwrap();
        assert_eq!((r.z, r.set.len()), (6, 6));
    }

    #[test]
    fn classical_zero_forcing_numbers() {
        for n in 2..=7 {
            assert_eq!(brute_force_z(&fam(FamilySpec::Path(n)), 0).unwrap().z, 1);
            assert_eq!(
                brute_force_z(&fam(FamilySpec::Complete(n)), 0).unwrap().z,
                n - 1
            );
        }
        for n in 3..=7 {
            assert_eq!(brute_force_z(&fam(FamilySpec::Cycle(n)), 0).unwrap().z, 2);
        }
    }

    #[test]
    fn monotone_in_leaks() {
        for spec in [
            FamilySpec::Wheel(5),
            FamilySpec::Grid(2, 4),
            FamilySpec::Star(4),
        ] {
            let g = fam(spec);
            let zs: Vec<_> = (0..=g.n())
                .map(|l| brute_force_z(&g, l).unwrap().z)
                .collect();
            assert!(zs.windows(2).all(|w| w[0] <= w[1]), "{spec}: {zs:?}");
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = fam(FamilySpec::Grid(3, 3));
        let seq = BruteOptions {
            execution: Execution::Sequential,
            ..BruteOptions::default()
        };
        let par = BruteOptions {
            execution: Execution::Parallel,
            ..BruteOptions::default()
        };
        assert_eq!(
            brute_force_z_with(&g, 1, &seq).unwrap(),
            brute_force_z_with(&g, 1, &par).unwrap()
        );
    }

    #[test]
    fn caps_are_enforced() {
        let g = fam(FamilySpec::Path(20));
        assert!(matches!(brute_force_z(&g, 0), Err(Error::ResourceCap(_))));
        let opts = BruteOptions {
            max_closures: 10,
            ..BruteOptions::default()
        };
        assert!(matches!(
            brute_force_z_with(&fam(FamilySpec::Cycle(6)), 1, &opts),
            Err(Error::ResourceCap(_))
        ));
        assert!(enumerate_forts(&fam(FamilySpec::Path(11)), 0, 2).is_err());
    }

    #[test]
    fn fort_enumeration_examples() {
        let s = |n: usize, m: &[usize]| VertexSet::from_members(n, m.iter().copied());
        let p3 = enumerate_forts(&fam(FamilySpec::Path(3)), 1, 1).unwrap();
        assert!(p3.contains(&s(3, &[0])) && p3.contains(&s(3, &[2])));
        let c4 = enumerate_forts(&fam(FamilySpec::Cycle(4)), 0, 2).unwrap();
        assert!(c4.contains(&s(4, &[1, 3])) && c4.contains(&s(4, &[0, 2])));
        let k3 = enumerate_forts(&fam(FamilySpec::Complete(3)), 0, 1).unwrap();
        assert!(k3.is_empty());
    }
}
