//! The constraint-generation loop that computes `Z_(l)(G)` exactly.
//!
//! Start from the singleton forts of low-degree vertices, solve the covering
//! problem over the fort pool, and check the cover against every leak
//! placement. A failure leaves a residual that contains a fort the cover
//! misses; minimize it, add it to the pool, and solve again. The first cover
//! that verifies is optimal because every forcing set must hit every fort.

use std::collections::HashSet;

use crate::cover::{minimum_cover, repair_cover, solve_multicover, CoverInstance, CoverSolution};
use crate::error::{Error, Result};
use crate::forcing::failing_leak_sets;
use crate::fort::{extract_fort, seed_forts, Fort};
use crate::graph::Graph;
use crate::par::Execution;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Forts harvested from each failed verification, one per distinct
    /// failing leak placement (in lexicographic order).
    pub forts_per_iteration: usize,
    pub execution: Execution,
    pub max_iterations: Option<usize>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            forts_per_iteration: 1,
            execution: Execution::default(),
            max_iterations: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub z: usize,
    pub optimal_set: VertexSet,
    pub fort_pool: Vec<Fort>,
    /// Number of covering problems solved.
    pub iterations: usize,
    pub multiplicity: usize,
    pub leak_budget: usize,
    pub cover_nodes: u64,
}

/// `Z_(ell)(g)` with `required` vertices forced into the set and each fort
/// covered `multiplicity` times.
pub fn compute_l_forcing_number(
    g: &Graph,
    ell: usize,
    required: &VertexSet,
    multiplicity: usize,
) -> Result<SolveResult> {
    compute_with_options(g, ell, required, multiplicity, &SolveOptions::default())
}

/// The redundant variant: every fort in the final pool is hit `k` times
/// (or entirely, when it has fewer than `k` members).
pub fn compute_with_redundancy(g: &Graph, ell: usize, k: usize) -> Result<SolveResult> {
    compute_l_forcing_number(g, ell, &VertexSet::empty(g.n()), k)
}

pub fn compute_with_options(
    g: &Graph,
    ell: usize,
    required: &VertexSet,
    multiplicity: usize,
    opts: &SolveOptions,
) -> Result<SolveResult> {
    g.check_set(required)?;
    if multiplicity == 0 {
        return Err(Error::Logic("multiplicity must be at least 1".into()));
    }
    let n = g.n();
    let ell = ell.min(n);
    let harvest = opts.forts_per_iteration.max(1);

    let mut pool = seed_forts(g, ell);
    let mut seen: HashSet<VertexSet> = pool.iter().map(|f| f.members.clone()).collect();
    let mut iterations = 0;
    let mut cover_nodes = 0;
    let mut lower = required.len();
    // Any minimum cover drives the search until one verifies; from then on
    // the canonical cover is used so the returned set is reproducible.
    let mut canonical = false;
    // The last cover. It only misses the forts added since, and any repaired
    // cover of the same size meets the lower bound, so it is optimal.
    let mut previous: Option<VertexSet> = None;

    loop {
        if opts.max_iterations.is_some_and(|cap| iterations >= cap) {
            return Err(Error::ResourceCap(format!(
                "no verified cover after {iterations} iterations"
            )));
        }
        iterations += 1;
        let mut inst = CoverInstance::new(
            n,
            pool.iter().map(|f| f.members.clone()).collect(),
            multiplicity,
        )
        .with_fixed_in(required.clone());
        inst.cap_demand_at_fort_size = true;
        inst.known_lower_bound = lower;
        let repaired = match &previous {
            Some(prev) if !canonical => repair_cover(&inst, prev),
            _ => None,
        };
        let cover = match repaired {
            Some(chosen) => CoverSolution {
                objective: chosen.len(),
                chosen,
                optimal: true,
                nodes_explored: 0,
            },
            None if canonical => solve_multicover(&inst)?,
            None => minimum_cover(&inst)?,
        };
        cover_nodes += cover.nodes_explored;
        lower = cover.objective;

        let failures = failing_leak_sets(g, &cover.chosen, ell, harvest, opts.execution);
        previous = Some(cover.chosen.clone());
        if failures.is_empty() {
            if !canonical {
                canonical = true;
                continue;
            }
            return Ok(SolveResult {
                z: cover.objective,
                optimal_set: cover.chosen,
                fort_pool: pool,
                iterations,
                multiplicity,
                leak_budget: ell,
                cover_nodes,
            });
        }
        let before = pool.len();
        for (leaks, _) in failures {
            let fort = extract_fort(g, &cover.chosen, &leaks)?;
            if seen.contains(&fort.members) {
                if pool[..before].iter().any(|f| f.members == fort.members) {
                    return Err(Error::Logic(format!(
                        "fort {} regenerated although the cover hits it",
                        fort.members
                    )));
                }
                continue;
            }
            seen.insert(fort.members.clone());
            pool.push(fort);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing::verify_l_forcing;
    use crate::graph::{build_family, FamilySpec};

    fn z(spec: FamilySpec, ell: usize) -> SolveResult {
        let g = build_family(spec).unwrap();
        compute_l_forcing_number(&g, ell, &VertexSet::empty(g.n()), 1).unwrap()
    }

    #[test]
    fn orchestrator_examples() {
        assert_eq!(z(FamilySpec::Cycle(5), 1).z, 2);
        assert_eq!(z(FamilySpec::Wheel(6), 2).z, 5);
        assert_eq!(z(FamilySpec::Hypercube(3), 2).z, 6);
        assert_eq!(z(FamilySpec::Grid(4, 4), 1).z, 4);
        let p4 = z(FamilySpec::Path(4), 1);
        assert_eq!((p4.z, p4.optimal_set.to_vec()), (2, vec![0, 3]));
    }

    #[test]
    fn result_invariants_hold() {
        for spec in [
            FamilySpec::Path(6),
            FamilySpec::Cycle(6),
            FamilySpec::Wheel(5),
            FamilySpec::Complete(5),
        ] {
            let g = build_family(spec).unwrap();
            for ell in 0..=3 {
                let r = compute_l_forcing_number(&g, ell, &VertexSet::empty(g.n()), 1).unwrap();
                assert!(verify_l_forcing(&g, &r.optimal_set, ell).unwrap().passed);
                assert_eq!(r.optimal_set.len(), r.z);
                assert!(r.iterations >= 1);
                for f in &r.fort_pool {
                    assert!(f.members.intersection_len(&r.optimal_set) >= 1);
                    assert!(f.witness_is_valid(&g));
                    assert!(f.witness_leaks.len() <= ell);
                }
            }
        }
    }

    #[test]
    fn required_vertices_are_kept() {
        let g = build_family(FamilySpec::Cycle(6)).unwrap();
        let req = VertexSet::from_members(6, [3]);
        let r = compute_l_forcing_number(&g, 1, &req, 1).unwrap();
        assert!(r.optimal_set.contains(3));
        assert_eq!(r.z, 2);
        // {0,3} alone stalls when 0 leaks, so a third vertex is needed.
        let req = VertexSet::from_members(6, [0, 3]);
        let r = compute_l_forcing_number(&g, 1, &req, 1).unwrap();
        assert_eq!((r.z, r.optimal_set.to_vec()), (3, vec![0, 1, 3]));
    }

    #[test]
    fn redundancy_covers_twice() {
        for spec in [FamilySpec::Path(3), FamilySpec::Cycle(4)] {
            let g = build_family(spec).unwrap();
            let r = compute_with_redundancy(&g, 0, 2).unwrap();
            assert!(r.z >= 2);
            for f in &r.fort_pool {
                assert!(f.members.intersection_len(&r.optimal_set) >= 2.min(f.len()));
            }
        }
    }

    #[test]
    fn harvesting_more_forts_gives_the_same_value() {
        let g = build_family(FamilySpec::Grid(3, 4)).unwrap();
        let one = compute_l_forcing_number(&g, 1, &VertexSet::empty(12), 1).unwrap();
        let opts = SolveOptions {
            forts_per_iteration: 4,
            ..SolveOptions::default()
        };
        let many = compute_with_options(&g, 1, &VertexSet::empty(12), 1, &opts).unwrap();
        assert_eq!(one.z, many.z);
        assert!(many.iterations <= one.iterations);
    }

    #[test]
    fn iteration_cap_is_reported() {
        let g = build_family(FamilySpec::Grid(3, 3)).unwrap();
        let opts = SolveOptions {
            max_iterations: Some(1),
            ..SolveOptions::default()
        };
        assert!(matches!(
            compute_with_options(&g, 1, &VertexSet::empty(9), 1, &opts),
            Err(Error::ResourceCap(_))
        ));
    }
}
