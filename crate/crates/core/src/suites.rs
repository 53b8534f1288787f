//! Benchmark sweeps over hypercubes, grids and cubic graphs, with the
//! reference values each run is compared against.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::catalog::random_cubic_graph;
use crate::error::{Error, Result};
use crate::families::{closed_form_z, ZValue};
use crate::graph::{build_family, FamilySpec, Graph};
use crate::solver::{compute_with_options, SolveOptions};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Cubes,
    Grids,
    Cubic,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Cubes => "cubes",
            Suite::Grids => "grids",
            Suite::Cubic => "cubic",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cubes" => Ok(Suite::Cubes),
            "grids" => Ok(Suite::Grids),
            "cubic" => Ok(Suite::Cubic),
            other => Err(Error::Parameter(format!("unknown suite '{other}'"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Recorded `Z_(1)` of the `n x m` grid, keyed symmetrically. Entries for
/// eight columns with at least five rows are upper bounds only.
pub fn grid_table_z1(n: usize, m: usize) -> Option<ZValue> {
    let (a, b) = (n.min(m), n.max(m));
    let exact = |row: &[usize], first: usize| {
        b.checked_sub(first)
            .and_then(|i| row.get(i))
            .map(|&z| ZValue::Exact(z))
    };
    match a {
        2 => exact(&[2, 3, 4, 4, 4, 4], 2),
        3 => exact(&[3, 4, 5, 6, 6], 3),
        4 => exact(&[4, 5, 6, 7, 8], 4),
        5..=7 if b == 8 => Some(ZValue::Interval { lower: a, upper: 8 }),
        5 => exact(&[5, 6, 7], 5),
        6 => exact(&[6, 7], 6),
        7 => exact(&[7], 7),
        _ => None,
    }
}

/// `(name, order, Z_(1))` for the nine named cubic graphs of the timing table.
pub const CUBIC_REFERENCE: [(&str, usize, usize); 9] = [
    ("Cubic_20_1", 20, 6),
    ("Cubic_20_2", 20, 6),
    ("Cubic_20_3", 20, 7),
    ("Cubic_22_1", 22, 7),
    ("Cubic_22_2", 22, 7),
    ("Cubic_24_1", 24, 8),
    ("Cubic_24_2", 24, 6),
    ("Cubic_24_3", 24, 8),
    ("Cubic_24_4", 24, 8),
];

pub fn cubic_reference_value(name: &str) -> Option<usize> {
    CUBIC_REFERENCE
        .iter()
        .find(|(n, _, _)| n.eq_ignore_ascii_case(name))
        .map(|&(_, _, z)| z)
}

#[derive(Debug, Clone)]
pub struct SuiteCase {
    pub graph: Graph,
    pub ell: usize,
    pub expected: ZValue,
}

/// The instances of a suite in run order. `long` adds the expensive ones.
pub fn suite_cases(suite: Suite, long: bool) -> Result<Vec<SuiteCase>> {
    let mut cases = Vec::new();
    match suite {
        Suite::Cubes => {
            let mut plan = vec![(3, 0..=3), (4, 0..=4), (5, 0..=1)];
            if long {
                plan.push((5, 2..=3));
            }
            for (d, ells) in plan {
                let spec = FamilySpec::Hypercube(d);
                let graph = build_family(spec)?;
                for ell in ells {
                    cases.push(SuiteCase {
                        graph: graph.clone(),
                        ell,
                        expected: closed_form_z(spec, ell)?.value,
                    });
                }
            }
        }
        Suite::Grids => {
            for a in 2..=7 {
                for b in a..=8 {
                    let Some(expected) = grid_table_z1(a, b) else {
                        continue;
                    };
                    let quick = b <= 5 || a == 2;
                    if quick || long {
                        cases.push(SuiteCase {
                            graph: build_family(FamilySpec::Grid(a, b))?,
                            ell: 1,
                            expected,
                        });
                    }
                }
            }
        }
        Suite::Cubic => {
            for (i, &(_, order, _)) in CUBIC_REFERENCE.iter().enumerate() {
                cases.push(SuiteCase {
                    graph: random_cubic_graph(order, i as u64 + 1)?,
                    ell: 1,
                    expected: ZValue::Unknown,
                });
            }
        }
    }
    Ok(cases)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteRecord {
    pub label: String,
    pub n: usize,
    pub edge_count: usize,
    pub ell: usize,
    pub z: usize,
    pub set: Vec<usize>,
    pub expected: ZValue,
    /// Whether `z` lies in the expected value or interval; `None` when
    /// nothing is recorded.
    pub agrees: Option<bool>,
    pub iterations: usize,
    pub forts: usize,
    pub elapsed_ms: u128,
}

pub fn run_case(case: &SuiteCase, opts: &SolveOptions) -> Result<SuiteRecord> {
    let start = Instant::now();
    let g = &case.graph;
    let result = compute_with_options(g, case.ell, &VertexSet::empty(g.n()), 1, opts)?;
    let agrees = match case.expected {
        ZValue::Unknown => None,
        v => Some(v.admits(result.z)),
    };
    Ok(SuiteRecord {
        label: g.label().to_string(),
        n: g.n(),
        edge_count: g.edge_count(),
        ell: case.ell,
        z: result.z,
        set: result.optimal_set.to_vec(),
        expected: case.expected,
        agrees,
        iterations: result.iterations,
        forts: result.fort_pool.len(),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_table_is_symmetric_and_bounded() {
        assert_eq!(grid_table_z1(2, 7), Some(ZValue::Exact(4)));
        assert_eq!(grid_table_z1(7, 2), Some(ZValue::Exact(4)));
        assert_eq!(grid_table_z1(4, 8), Some(ZValue::Exact(8)));
        assert_eq!(
            grid_table_z1(5, 8),
            Some(ZValue::Interval { lower: 5, upper: 8 })
        );
        assert_eq!(grid_table_z1(2, 8), None);
        assert_eq!(grid_table_z1(8, 8), None);
        for n in 2..=8 {
            assert_eq!(
                grid_table_z1(n, n).and_then(|v| v.exact()),
                (n < 8).then_some(n)
            );
        }
    }

    #[test]
    fn table_agrees_with_closed_form_intervals() {
        for a in 2..=7 {
            for b in a..=8 {
                if let Some(v) = grid_table_z1(a, b).and_then(|v| v.exact()) {
                    let form = closed_form_z(FamilySpec::Grid(a, b), 1).unwrap().value;
                    assert!(form.admits(v), "{a}x{b}: {v} outside {form}");
                }
            }
        }
    }

    #[test]
    fn suites_have_expected_shapes() {
        assert_eq!(suite_cases(Suite::Cubes, false).unwrap().len(), 11);
        assert_eq!(suite_cases(Suite::Cubes, true).unwrap().len(), 13);
        let cubic = suite_cases(Suite::Cubic, false).unwrap();
        assert_eq!(cubic.len(), 9);
        assert!(cubic
            .iter()
            .all(|c| (0..c.graph.n()).all(|v| c.graph.degree(v) == 3)));
        let grids = suite_cases(Suite::Grids, false).unwrap();
        assert!(grids.iter().all(|c| c.expected.exact().is_some()));
        assert!(suite_cases(Suite::Grids, true).unwrap().len() > grids.len());
        assert_eq!(cubic_reference_value("cubic_24_2"), Some(6));
        assert_eq!("grids".parse::<Suite>().unwrap(), Suite::Grids);
    }

    #[test]
    fn small_case_runs() {
        let case = &suite_cases(Suite::Cubes, false).unwrap()[2];
        let rec = run_case(case, &SolveOptions::default()).unwrap();
        assert_eq!((rec.z, rec.agrees), (6, Some(true)));
        assert_eq!(rec.set.len(), 6);
    }
}
