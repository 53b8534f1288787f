//! Simple undirected graphs, the named families, and Cartesian products.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// An immutable simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are sorted ascending. Each vertex also carries its
/// neighborhood as a [`VertexSet`], which the forcing code uses for
/// word-parallel counting.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    label: String,
    adjacency: Vec<Vec<usize>>,
    neighbor_sets: Vec<VertexSet>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I, label: impl Into<String>) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::Validation(
                "a graph needs at least one vertex".into(),
            ));
        }
        let mut neighbor_sets = vec![VertexSet::empty(n); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Validation(format!("self-loop at vertex {u}")));
            }
            neighbor_sets[u].insert(v);
            neighbor_sets[v].insert(u);
        }
        let adjacency: Vec<Vec<usize>> = neighbor_sets.iter().map(VertexSet::to_vec).collect();
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Self {
            label: label.into(),
            adjacency,
            neighbor_sets,
            edge_count,
        })
    }

    pub fn empty(n: usize, label: impl Into<String>) -> Result<Self> {
        Self::from_edges(n, std::iter::empty(), label)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn neighbor_set(&self, v: usize) -> &VertexSet {
        &self.neighbor_sets[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.neighbor_sets[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = VertexSet::singleton(self.n(), 0);
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            for &v in self.neighbors(u) {
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        seen.is_full()
    }

    /// Checks that `set` lives over this graph's vertex universe.
    pub fn check_set(&self, set: &VertexSet) -> Result<()> {
        if set.universe() != self.n() {
            return Err(Error::VertexOutOfRange {
                vertex: set.universe().max(1) - 1,
                n: self.n(),
            });
        }
        Ok(())
    }

    /// Builds a vertex set over this graph, rejecting out-of-range members.
    pub fn vertex_set<I: IntoIterator<Item = usize>>(&self, members: I) -> Result<VertexSet> {
        VertexSet::try_from_members(self.n(), members).map_err(|vertex| Error::VertexOutOfRange {
            vertex,
            n: self.n(),
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("label", &self.label)
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// The named graph families.
///
/// Parameter conventions: `Wheel(n)` has `n + 1` vertices with the hub last;
/// `Star(t)` is `K_{1,t}` with leaves `0..t` and the hub at index `t`;
/// `Grid(n, m)` is `n` rows by `m` columns in row-major order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Wheel(usize),
    Hypercube(usize),
    Grid(usize, usize),
    Star(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Path,
    Cycle,
    Complete,
    Wheel,
    Hypercube,
    Grid,
    Star,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Path => "path",
            FamilyKind::Cycle => "cycle",
            FamilyKind::Complete => "complete",
            FamilyKind::Wheel => "wheel",
            FamilyKind::Hypercube => "hypercube",
            FamilyKind::Grid => "grid",
            FamilyKind::Star => "star",
        }
    }

    /// Pairs the kind with its integer parameters.
    pub fn with_params(self, params: &[usize]) -> Result<FamilySpec> {
        let arity = if self == FamilyKind::Grid { 2 } else { 1 };
        if params.len() != arity {
            return Err(Error::Parameter(format!(
                "{} takes {arity} parameter(s), got {}",
                self.name(),
                params.len()
            )));
        }
        let p = params[0];
        let spec = match self {
            FamilyKind::Path => FamilySpec::Path(p),
            FamilyKind::Cycle => FamilySpec::Cycle(p),
            FamilyKind::Complete => FamilySpec::Complete(p),
            FamilyKind::Wheel => FamilySpec::Wheel(p),
            FamilyKind::Hypercube => FamilySpec::Hypercube(p),
            FamilyKind::Grid => FamilySpec::Grid(p, params[1]),
            FamilyKind::Star => FamilySpec::Star(p),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "path" => FamilyKind::Path,
            "cycle" => FamilyKind::Cycle,
            "complete" => FamilyKind::Complete,
            "wheel" => FamilyKind::Wheel,
            "hypercube" => FamilyKind::Hypercube,
            "grid" => FamilyKind::Grid,
            "star" => FamilyKind::Star,
            other => return Err(Error::Parameter(format!("unknown family '{other}'"))),
        })
    }
}

// Largest hypercube dimension we are willing to materialize.
const MAX_HYPERCUBE_DIM: usize = 20;

impl FamilySpec {
    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilySpec::Path(_) => FamilyKind::Path,
            FamilySpec::Cycle(_) => FamilyKind::Cycle,
            FamilySpec::Complete(_) => FamilyKind::Complete,
            FamilySpec::Wheel(_) => FamilyKind::Wheel,
            FamilySpec::Hypercube(_) => FamilyKind::Hypercube,
            FamilySpec::Grid(..) => FamilyKind::Grid,
            FamilySpec::Star(_) => FamilyKind::Star,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Parameter(msg));
        match *self {
            FamilySpec::Path(n) | FamilySpec::Complete(n) if n < 1 => {
                bad(format!("{} needs n >= 1, got {n}", self.kind().name()))
            }
            FamilySpec::Star(t) if t < 1 => bad(format!("star needs t >= 1, got {t}")),
            FamilySpec::Cycle(n) if n < 3 => bad(format!("cycle needs n >= 3, got {n}")),
            FamilySpec::Wheel(n) if n < 3 => bad(format!("wheel needs n >= 3, got {n}")),
            FamilySpec::Hypercube(d) if d < 1 => bad(format!("hypercube needs d >= 1, got {d}")),
            FamilySpec::Hypercube(d) if d > MAX_HYPERCUBE_DIM => bad(format!(
                "hypercube dimension {d} exceeds {MAX_HYPERCUBE_DIM}"
            )),
            FamilySpec::Grid(n, m) if n < 1 || m < 1 => {
                bad(format!("grid needs n, m >= 1, got {n}x{m}"))
            }
            _ => Ok(()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            FamilySpec::Path(n) | FamilySpec::Cycle(n) | FamilySpec::Complete(n) => n,
            FamilySpec::Wheel(n) | FamilySpec::Star(n) => n + 1,
            FamilySpec::Hypercube(d) => 1 << d,
            FamilySpec::Grid(n, m) => n * m,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            FamilySpec::Grid(n, m) => format!("grid({n}x{m})"),
            FamilySpec::Path(p)
            | FamilySpec::Cycle(p)
            | FamilySpec::Complete(p)
            | FamilySpec::Wheel(p)
            | FamilySpec::Hypercube(p)
            | FamilySpec::Star(p) => format!("{}({p})", self.kind().name()),
        }
    }

    pub fn build(&self) -> Result<Graph> {
        build_family(*self)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Constructs a family member under the canonical vertex labeling.
pub fn build_family(spec: FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.vertex_count();
    let mut edges = Vec::new();
    match spec {
        FamilySpec::Path(n) => edges.extend((1..n).map(|i| (i - 1, i))),
        FamilySpec::Cycle(n) => {
            edges.extend((1..n).map(|i| (i - 1, i)));
            edges.push((n - 1, 0));
        }
        FamilySpec::Complete(n) => {
            for u in 0..n {
                edges.extend((u + 1..n).map(|v| (u, v)));
            }
        }
        FamilySpec::Wheel(n) => {
            edges.extend((1..n).map(|i| (i - 1, i)));
            edges.push((n - 1, 0));
            edges.extend((0..n).map(|i| (i, n)));
        }
        FamilySpec::Star(t) => edges.extend((0..t).map(|i| (i, t))),
        FamilySpec::Hypercube(d) => {
            for u in 0..n {
                for bit in 0..d {
                    let v = u ^ (1 << bit);
                    if u < v {
                        edges.push((u, v));
                    }
                }
            }
        }
        FamilySpec::Grid(rows, cols) => {
            for r in 0..rows {
                for c in 0..cols {
                    let v = r * cols + c;
                    if c + 1 < cols {
                        edges.push((v, v + 1));
                    }
                    if r + 1 < rows {
                        edges.push((v, v + cols));
                    }
                }
            }
        }
    }
    Graph::from_edges(n, edges, spec.label())
}

/// Grid vertex index for 1-based `(row, col)` on an `n x m` grid.
#[inline]
pub fn grid_index(m: usize, row: usize, col: usize) -> usize {
    (row - 1) * m + (col - 1)
}

/// `g □ h`: the pair `(x, y)` becomes vertex `x * |V(h)| + y`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.n();
    let mut edges = Vec::with_capacity(g.n() * h.edge_count() + nh * g.edge_count());
    for x in 0..g.n() {
        for (y1, y2) in h.edges() {
            edges.push((x * nh + y1, x * nh + y2));
        }
    }
    for (x1, x2) in g.edges() {
        for y in 0..nh {
            edges.push((x1 * nh + y, x2 * nh + y));
        }
    }
    Graph::from_edges(
        g.n() * nh,
        edges,
        format!("({})x({})", g.label(), h.label()),
    )
    .expect("product of valid graphs is valid")
}
