//! The certificate document, schema "1".

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::assembly::{ChromaticEvidence, LogEntry, NonrecurrenceWitness, RecurrenceCertificate};
use crate::eset::ESpec;
use crate::error::{Error, Result};
use crate::rational::{fmt_rat, parse_rat};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub schema_version: String,
    pub command: CommandRecord,
    pub certificate: CertificateBody,
    pub checks: Vec<CheckRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommandRecord {
    pub name: String,
    pub args: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRecord {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateBody {
    /// χ(Cay S) exceeds this.
    pub chromatic_claim: usize,
    #[serde(rename = "S")]
    pub s: Vec<String>,
    pub witness: WitnessDoc,
    pub chromatic_evidence: EvidenceDoc,
    #[serde(rename = "E")]
    pub e: Option<ESpecDoc>,
    /// modulus·S ⊆ E − E is claimed when E is present.
    pub modulus: String,
    pub construction_log: Vec<LogDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub m: String,
    pub delta: String,
    #[serde(rename = "B")]
    pub b: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvidenceDoc {
    pub chi_lower: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
    pub kneser: Option<KneserDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KneserDoc {
    pub n: u32,
    pub r: u32,
    pub labels: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ESpecDoc {
    All,
    Arith { a: String, d: String },
    Powers { b: String },
    List { elements: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogDoc {
    pub step: String,
    pub params: BTreeMap<String, String>,
}

fn strs(v: &[u64]) -> Vec<String> {
    v.iter().map(u64::to_string).collect()
}

fn parse_u64(s: &str, what: &str) -> Result<u64> {
    s.parse().map_err(|_| Error::invalid(format!("{what}: bad integer {s:?}")))
}

fn parse_list(v: &[String], what: &str) -> Result<Vec<u64>> {
    v.iter().map(|s| parse_u64(s, what)).collect()
}

impl From<&ESpec> for ESpecDoc {
    fn from(e: &ESpec) -> Self {
        match e {
            ESpec::All => ESpecDoc::All,
            ESpec::Arith { a, d } => ESpecDoc::Arith { a: a.to_string(), d: d.to_string() },
            ESpec::Powers { b } => ESpecDoc::Powers { b: b.to_string() },
            ESpec::List(v) => ESpecDoc::List { elements: v.iter().map(BigInt::to_string).collect() },
        }
    }
}

impl ESpecDoc {
    pub fn to_spec(&self) -> Result<ESpec> {
        let bad = |s: &str| Error::invalid(format!("E: bad integer {s:?}"));
        Ok(match self {
            ESpecDoc::All => ESpec::All,
            ESpecDoc::Arith { a, d } => {
                let d: i64 = d.parse().map_err(|_| bad(d))?;
                if d <= 0 {
                    return Err(Error::invalid("E: arith step must be positive"));
                }
                ESpec::Arith { a: a.parse().map_err(|_| bad(a))?, d }
            }
            ESpecDoc::Powers { b } => {
                let b: u64 = b.parse().map_err(|_| bad(b))?;
                if b < 2 {
                    return Err(Error::invalid("E: base must be at least 2"));
                }
                ESpec::Powers { b }
            }
            ESpecDoc::List { elements } => {
                let text = elements.join("\n");
                ESpec::from_list_text(&text)?
            }
        })
    }
}

impl CertificateBody {
    pub fn from_certificate(c: &RecurrenceCertificate) -> Self {
        CertificateBody {
            chromatic_claim: c.chromatic_claim,
            s: strs(&c.s),
            witness: WitnessDoc { m: c.witness.m.to_string(), delta: fmt_rat(&c.witness.delta), b: strs(&c.witness.b) },
            chromatic_evidence: EvidenceDoc {
                chi_lower: c.evidence.chi_lower,
                vertices: c.evidence.vertices.iter().map(BigInt::to_string).collect(),
                edges: c.evidence.edges.iter().map(|&(u, v)| [u, v]).collect(),
                kneser: c.evidence.kneser.as_ref().map(|(n, r, labels)| KneserDoc { n: *n, r: *r, labels: labels.clone() }),
            },
            e: c.e.as_ref().map(ESpecDoc::from),
            modulus: c.modulus.to_string(),
            construction_log: c.log.iter().map(|l| LogDoc { step: l.step.clone(), params: l.params.clone() }).collect(),
        }
    }

    /// Rebuilds the certificate from raw data; the log is carried along but
    /// never read by the checks.
    pub fn to_certificate(&self) -> Result<RecurrenceCertificate> {
        let s = parse_list(&self.s, "S")?;
        let w = &self.witness;
        let witness = NonrecurrenceWitness {
            b: parse_list(&w.b, "B")?,
            m: parse_u64(&w.m, "m")?,
            s: s.clone(),
            delta: parse_rat(&w.delta)?,
        };
        let ev = &self.chromatic_evidence;
        let vertices = ev
            .vertices
            .iter()
            .map(|x| x.parse::<BigInt>().map_err(|_| Error::invalid(format!("vertex: bad integer {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let evidence = ChromaticEvidence {
            chi_lower: ev.chi_lower,
            vertices,
            edges: ev.edges.iter().map(|e| (e[0], e[1])).collect(),
            kneser: ev.kneser.as_ref().map(|k| (k.n, k.r, k.labels.clone())),
        };
        Ok(RecurrenceCertificate {
            s,
            chromatic_claim: self.chromatic_claim,
            evidence,
            witness,
            e: self.e.as_ref().map(ESpecDoc::to_spec).transpose()?,
            modulus: parse_u64(&self.modulus, "modulus")?,
            log: self.construction_log.iter().map(|l| LogEntry { step: l.step.clone(), params: l.params.clone() }).collect(),
        })
    }
}

impl CertificateDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CertificateDocument =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("unparseable document: {e}")))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::invalid(format!("unsupported schema version {:?}", doc.schema_version)));
        }
        Ok(doc)
    }
}
