//! Forts: the vertex sets a failed forcing attempt leaves uncolored.
//!
//! Every `ell`-forcing set has to intersect every fort, which makes forts the
//! covering constraints of the solver. Each [`Fort`] carries the witness that
//! produced it, so its validity can be re-checked independently.

use crate::error::{Error, Result};
use crate::forcing::residual;
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fort {
    pub members: VertexSet,
    pub witness_initial: VertexSet,
    pub witness_leaks: VertexSet,
}

impl Fort {
    /// `V ∖ closure(witness_initial, witness_leaks) == members`, exactly.
    pub fn witness_is_valid(&self, g: &Graph) -> bool {
        !self.members.is_empty()
            && residual(g, &self.witness_initial, &self.witness_leaks) == self.members
    }

    /// Removing any single member (coloring it in addition to the witness
    /// complement) lets the closure cover the whole graph.
    pub fn is_witness_minimal(&self, g: &Graph) -> bool {
        self.members.iter().all(|v| {
            let mut initial = self.members.complement();
            initial.insert(v);
            residual(g, &initial, &self.witness_leaks).is_empty()
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Turns the residual of a failed attempt into a witness-minimal fort.
pub fn extract_fort(g: &Graph, failed_initial: &VertexSet, leaks: &VertexSet) -> Result<Fort> {
    g.check_set(failed_initial)?;
    g.check_set(leaks)?;
    let res = residual(g, failed_initial, leaks);
    if res.is_empty() {
        return Err(Error::Logic(
            "extract_fort called on an attempt that colors the whole graph".into(),
        ));
    }
    minimize_fort(g, &res, leaks)
}

/// Greedy witness-preserving shrink.
///
/// Scans the members in ascending order; as soon as coloring one extra member
/// still leaves something uncolored, the fort is replaced by that smaller
/// residual and the scan restarts. Stops when every single removal lets the
/// closure finish.
pub fn minimize_fort(g: &Graph, t: &VertexSet, leaks: &VertexSet) -> Result<Fort> {
    g.check_set(t)?;
    g.check_set(leaks)?;
    let mut current = residual(g, &t.complement(), leaks);
    if current.is_empty() || !current.is_subset(t) {
        return Err(Error::Logic(format!(
            "{t} is not reachable as a residual under leaks {leaks}"
        )));
    }
    'scan: loop {
        for v in current.iter() {
            let mut initial = current.complement();
            initial.insert(v);
            let smaller = residual(g, &initial, leaks);
            if !smaller.is_empty() {
                current = smaller;
                continue 'scan;
            }
        }
        break;
    }
    Ok(Fort {
        witness_initial: current.complement(),
        members: current,
        witness_leaks: leaks.clone(),
    })
}

/// Singleton forts `{v}` for every vertex of degree at most `ell`: leak all of
/// `v`'s neighbors and nothing can ever force it.
pub fn seed_forts(g: &Graph, ell: usize) -> Vec<Fort> {
    let n = g.n();
    (0..n)
        .filter(|&v| g.degree(v) <= ell)
        .map(|v| {
            let members = VertexSet::singleton(n, v);
            Fort {
                witness_initial: members.complement(),
                witness_leaks: g.neighbor_set(v).clone(),
                members,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};

    fn fam(spec: FamilySpec) -> Graph {
        build_family(spec).unwrap()
    }

    fn set(n: usize, m: &[usize]) -> VertexSet {
        VertexSet::from_members(n, m.iter().copied())
    }

    #[test]
    fn extract_examples() {
        let p5 = fam(FamilySpec::Path(5));
        let f = extract_fort(&p5, &set(5, &[0]), &set(5, &[0])).unwrap();
        assert_eq!(f.members.to_vec(), vec![1, 3, 4]);
        assert_eq!(f.witness_initial.to_vec(), vec![0, 2]);
        assert_eq!(f.witness_leaks.to_vec(), vec![0]);
        assert!(f.witness_is_valid(&p5));
        assert!(f.is_witness_minimal(&p5));

        let p3 = fam(FamilySpec::Path(3));
        let f = extract_fort(&p3, &VertexSet::empty(3), &VertexSet::empty(3)).unwrap();
        assert_eq!(f.members.to_vec(), vec![0, 2]);
        assert!(f.witness_is_valid(&p3));

        let c4 = fam(FamilySpec::Cycle(4));
        let f = extract_fort(&c4, &set(4, &[0]), &VertexSet::empty(4)).unwrap();
        assert_eq!(f.members.to_vec(), vec![1, 3]);
        assert_eq!(f.witness_initial.to_vec(), vec![0, 2]);
    }

    #[test]
    fn extract_requires_a_failure() {
        let p3 = fam(FamilySpec::Path(3));
        assert!(matches!(
            extract_fort(&p3, &set(3, &[0]), &VertexSet::empty(3)),
            Err(Error::Logic(_))
        ));
    }

    #[test]
    fn minimize_examples() {
        let p5 = fam(FamilySpec::Path(5));
        let f = minimize_fort(&p5, &set(5, &[1, 2, 3, 4]), &set(5, &[0])).unwrap();
        assert_eq!(f.members.to_vec(), vec![1, 3, 4]);

        let c4 = fam(FamilySpec::Cycle(4));
        let f = minimize_fort(&c4, &set(4, &[1, 2, 3]), &VertexSet::empty(4)).unwrap();
        assert_eq!(f.members.to_vec(), vec![1, 3]);

        // A singleton whose neighbors all leak cannot shrink.
        let w = fam(FamilySpec::Wheel(5));
        for v in 0..6 {
            let f = minimize_fort(&w, &set(6, &[v]), w.neighbor_set(v)).unwrap();
            assert_eq!(f.members.to_vec(), vec![v]);
        }
    }

    #[test]
    fn minimize_rejects_unreachable_sets() {
        // On P_3 with no leaks, coloring {0,2} forces 1, so {1} is not a fort.
        let p3 = fam(FamilySpec::Path(3));
        assert!(matches!(
            minimize_fort(&p3, &set(3, &[1]), &VertexSet::empty(3)),
            Err(Error::Logic(_))
        ));
    }

    #[test]
    fn seed_examples() {
        let p3 = fam(FamilySpec::Path(3));
        let seeds = seed_forts(&p3, 1);
        assert_eq!(
            seeds.iter().map(|f| f.members.to_vec()).collect::<Vec<_>>(),
            vec![vec![0], vec![2]]
        );
        assert!(seed_forts(&fam(FamilySpec::Cycle(5)), 1).is_empty());
        let k4 = fam(FamilySpec::Complete(4));
        let seeds = seed_forts(&k4, 3);
        assert_eq!(seeds.len(), 4);
        for f in &seeds {
            assert!(f.witness_is_valid(&k4));
            assert!(f.witness_leaks.len() <= 3);
        }
        // Isolated vertices are seeded even with no leaks.
        let g = Graph::empty(2, "2K1").unwrap();
        assert_eq!(seed_forts(&g, 0).len(), 2);
    }
}
