use serde::Serialize;

use leaky_forcing::{Graph, VertexSet};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct GraphInfo {
    pub label: String,
    pub n: usize,
    pub edge_count: usize,
}

impl From<&Graph> for GraphInfo {
    fn from(g: &Graph) -> Self {
        Self {
            label: g.label().to_string(),
            n: g.n(),
            edge_count: g.edge_count(),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct Bounds {
    pub lower: usize,
    pub upper: usize,
}

/// One line of machine-readable output. Fields a command does not produce
/// stay `null`.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct OutputRecord {
    pub schema_version: &'static str,
    pub graph: GraphInfo,
    pub command: &'static str,
    pub leaks: usize,
    pub z: Option<usize>,
    pub set: Option<Vec<usize>>,
    pub bounds: Option<Bounds>,
    pub forts_generated: usize,
    pub iterations: usize,
    pub passed: Option<bool>,
    pub witness_leaks: Option<Vec<usize>>,
    pub elapsed_ms: u128,
}

impl OutputRecord {
    pub fn new(command: &'static str, g: &Graph, leaks: usize) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            graph: g.into(),
            command,
            leaks,
            z: None,
            set: None,
            bounds: None,
            forts_generated: 0,
            iterations: 0,
            passed: None,
            witness_leaks: None,
            elapsed_ms: 0,
        }
    }

    pub fn with_set(mut self, set: &VertexSet) -> Self {
        self.set = Some(set.to_vec());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    /// A short human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut parts = vec![format!(
            "{} {} (n={}, edges={}) leaks={}",
            self.command, self.graph.label, self.graph.n, self.graph.edge_count, self.leaks
        )];
        if let Some(z) = self.z {
            parts.push(format!("z={z}"));
        }
        if let Some(b) = self.bounds {
            parts.push(format!("bounds=[{}, {}]", b.lower, b.upper));
        }
        if let Some(set) = &self.set {
            parts.push(format!("set={}", join(set)));
        }
        if let Some(p) = self.passed {
            parts.push(format!("passed={p}"));
        }
        if let Some(w) = &self.witness_leaks {
            parts.push(format!("witness_leaks={}", join(w)));
        }
        if self.iterations > 0 {
            parts.push(format!(
                "iterations={} forts={}",
                self.iterations, self.forts_generated
            ));
        }
        parts.push(format!("{} ms", self.elapsed_ms));
        parts.join(" ")
    }
}

fn join(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}
