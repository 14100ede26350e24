use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::check::{check_evidence, Check, EvidenceView};

/// A finite subgraph of Cay(S) with vertices mapped into ℤ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticEvidence {
    /// χ of the subgraph is at least this.
    pub chi_lower: usize,
    pub vertices: Vec<BigInt>,
    pub edges: Vec<(usize, usize)>,
    /// Present when the subgraph is KG(n, r) with these vertex labels.
    pub kneser: Option<(u32, u32, Vec<Vec<u32>>)>,
}

impl ChromaticEvidence {
    pub fn single_vertex() -> Self {
        ChromaticEvidence { chi_lower: 1, vertices: vec![BigInt::from(0)], edges: Vec::new(), kneser: None }
    }

    /// The same subgraph inside Cay(mS).
    pub fn dilate(&self, m: u64) -> Self {
        ChromaticEvidence { vertices: self.vertices.iter().map(|v| v * m).collect(), ..self.clone() }
    }

    pub fn check(&self, s: &[u64]) -> Vec<Check> {
        let view = EvidenceView {
            chi_lower: self.chi_lower,
            vertices: &self.vertices,
            edges: &self.edges,
            kneser: self.kneser.as_ref().map(|(n, r, l)| (*n, *r, l.as_slice())),
        };
        check_evidence(&view, s)
    }
}

/// One lemma application with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogEntry {
    pub step: String,
    pub params: BTreeMap<String, String>,
}

impl LogEntry {
    pub fn new(step: &str, params: &[(&str, String)]) -> Self {
        LogEntry { step: step.to_string(), params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect() }
    }
}
