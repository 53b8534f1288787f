//! The leak-aware color-change rule.
//!
//! A leak on vertex `v` is modeled as a pendant uncolored neighbor, which in
//! effect means `v` can never perform a force on an original vertex. Success
//! means every original vertex ends up colored. Leak placements are plain
//! vertex subsets since several leaks on one vertex act like one.

use crate::error::Result;
use crate::graph::Graph;
use crate::par::{self, Execution};
use crate::vertex_set::{binomial, Combinations, VertexSet};

/// Outcome of checking a candidate set against every leak placement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub passed: bool,
    /// Lexicographically first leak set under which forcing stalls.
    pub witness_leaks: Option<VertexSet>,
    /// Vertices left uncolored under `witness_leaks`.
    pub residual: Option<VertexSet>,
}

impl Verdict {
    pub fn pass() -> Self {
        Self {
            passed: true,
            witness_leaks: None,
            residual: None,
        }
    }

    pub fn fail(witness_leaks: VertexSet, residual: VertexSet) -> Self {
        debug_assert!(!residual.is_empty());
        Self {
            passed: false,
            witness_leaks: Some(witness_leaks),
            residual: Some(residual),
        }
    }
}

fn check_inputs(g: &Graph, sets: &[&VertexSet]) -> Result<()> {
    sets.iter().try_for_each(|s| g.check_set(s))
}

/// Maximal colored set reachable from `initial` when the vertices in `leaks`
/// may not force.
pub fn closure(g: &Graph, initial: &VertexSet, leaks: &VertexSet) -> Result<VertexSet> {
    check_inputs(g, &[initial, leaks])?;
    Ok(closure_rounds(g, initial, leaks).0)
}

/// Same as [`closure`], also returning how many synchronous rounds applied at
/// least one force. Each round finds every force available at its start and
/// applies them all together.
pub fn closure_rounds(g: &Graph, initial: &VertexSet, leaks: &VertexSet) -> (VertexSet, usize) {
    let n = g.n();
    let mut colored = initial.clone();
    // Colored, unleaked vertices that may still have uncolored neighbors.
    let mut active = initial.difference(leaks);
    let mut newly = VertexSet::empty(n);
    let mut rounds = 0;
    loop {
        let mut any = false;
        let mut exhausted = Vec::new();
        for v in active.iter() {
            match sole_uncolored_neighbor(g.neighbor_set(v), &colored) {
                Uncolored::None => exhausted.push(v),
                Uncolored::One(u) => {
                    newly.insert(u);
                    any = true;
                }
                Uncolored::Many => {}
            }
        }
        for v in exhausted {
            active.remove(v);
        }
        if !any {
            return (colored, rounds);
        }
        rounds += 1;
        colored.union_with(&newly);
        newly.difference_with(leaks);
        active.union_with(&newly);
        newly = VertexSet::empty(n);
    }
}

enum Uncolored {
    None,
    One(usize),
    Many,
}

#[inline]
fn sole_uncolored_neighbor(neighbors: &VertexSet, colored: &VertexSet) -> Uncolored {
    let mut found = None;
    for (i, (&nb, &c)) in neighbors.words().iter().zip(colored.words()).enumerate() {
        let open = nb & !c;
        if open == 0 {
            continue;
        }
        if found.is_some() || open & (open - 1) != 0 {
            return Uncolored::Many;
        }
        found = Some(i * 64 + open.trailing_zeros() as usize);
    }
    found.map_or(Uncolored::None, Uncolored::One)
}

/// Vertices left uncolored from `initial` under `leaks`.
pub(crate) fn residual(g: &Graph, initial: &VertexSet, leaks: &VertexSet) -> VertexSet {
    closure_rounds(g, initial, leaks).0.complement()
}

// Leak sets are streamed in lexicographic blocks so the parallel search never
// has to materialize all C(n, l) placements at once.
const LEAK_BLOCK: usize = 512;

/// Checks whether `candidate` colors all of `g` under every placement of
/// `ell` leaks.
///
/// Only placements of exactly `min(ell, n)` leaks are examined: adding leaks
/// never enlarges the closure, so the largest placements are the hardest.
pub fn verify_l_forcing(g: &Graph, candidate: &VertexSet, ell: usize) -> Result<Verdict> {
    verify_l_forcing_with(g, candidate, ell, Execution::default())
}

pub fn verify_l_forcing_with(
    g: &Graph,
    candidate: &VertexSet,
    ell: usize,
    exec: Execution,
) -> Result<Verdict> {
    check_inputs(g, &[candidate])?;
    let mut failures = failing_leak_sets(g, candidate, ell, 1, exec);
    Ok(match failures.pop() {
        Some((leaks, residual)) => Verdict::fail(leaks, residual),
        None => Verdict::pass(),
    })
}

/// The first `limit` failing leak placements in lexicographic order, each with
/// its residual. Empty when `candidate` is `ell`-forcing.
pub fn failing_leak_sets(
    g: &Graph,
    candidate: &VertexSet,
    ell: usize,
    limit: usize,
    exec: Execution,
) -> Vec<(VertexSet, VertexSet)> {
    let n = g.n();
    let k = ell.min(n);
    let mut out = Vec::new();
    if limit == 0 || candidate.is_full() {
        return out;
    }
    // Without leaks the closure is largest; if even that stalls, the first
    // placement fails.
    let free = residual(g, candidate, &VertexSet::empty(n));
    let mut combos = Combinations::new(n, k);
    if !free.is_empty() && limit == 1 {
        let first = VertexSet::from_members(n, combos.next().expect("k <= n"));
        let res = residual(g, candidate, &first);
        out.push((first, res));
        return out;
    }
    loop {
        let block: Vec<Vec<usize>> = combos.by_ref().take(LEAK_BLOCK).collect();
        if block.is_empty() {
            return out;
        }
        let mut offset = 0;
        while offset < block.len() {
            let hit = par::find_first_map(exec, &block[offset..], |members| {
                let leaks = VertexSet::from_members(n, members.iter().copied());
                let res = residual(g, candidate, &leaks);
                (!res.is_empty()).then_some((leaks, res))
            });
            match hit {
                Some((i, found)) => {
                    out.push(found);
                    if out.len() >= limit {
                        return out;
                    }
                    offset += i + 1;
                }
                None => break,
            }
        }
    }
}

/// Total leak placements `verify_l_forcing` may examine.
pub fn leak_placement_count(n: usize, ell: usize) -> u128 {
    binomial(n, ell.min(n))
}
