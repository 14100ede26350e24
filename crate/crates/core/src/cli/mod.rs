//! Command-line front end and the document schema.

mod doc;

pub use doc::{
    CertificateBody, CertificateDocument, CheckRecord, CommandRecord, ESpecDoc, EvidenceDoc, KneserDoc, LogDoc,
    WitnessDoc, SCHEMA_VERSION,
};

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::assembly::{finite_piece, kriz_iterate, kriz_iterate_in_difference_set, Check, RecurrenceCertificate};
use crate::error::Error;
use crate::eset::ESpec;
use crate::graphs::{chromatic_number_exact, kneser_graph, Budget};
use crate::limits::Limits;
use crate::rational::{check_delta, parse_rat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_PARSE: i32 = 4;
pub const EXIT_CHECK: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "recforge", version, about = "Build and verify finite recurrence certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Finite S with χ(Cay S) > k that is δ-nonrecurrent.
    BuildPiece {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        delta: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        caps: Caps,
    },
    /// Run K stages of the iteration.
    Assemble {
        #[arg(long)]
        delta: String,
        #[arg(long = "K")]
        rounds: usize,
        /// all | arith:a,d | powers:b | file:<path>
        #[arg(long = "E")]
        e: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        caps: Caps,
    },
    /// Re-run every check on a document.
    Verify {
        input: PathBuf,
        /// Also reject documents whose recorded checks include a failure.
        #[arg(long)]
        strict: bool,
    },
    /// Exact χ of KG(n, r) against n − 2r + 2.
    Kneser {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct Caps {
    #[arg(long)]
    pub max_d: Option<u32>,
    #[arg(long)]
    pub max_cells: Option<u64>,
    #[arg(long)]
    pub node_budget: Option<u64>,
    #[arg(long)]
    pub max_modulus: Option<u64>,
    #[arg(long)]
    pub max_denominator: Option<u64>,
    #[arg(long)]
    pub horizon: Option<u64>,
    /// Record wall-clock time per check in the document.
    #[arg(long)]
    pub timings: bool,
}

impl Caps {
    pub fn limits(&self) -> Limits {
        let mut l = Limits::from_env();
        if let Some(v) = self.max_d {
            l.max_d = v;
            l.max_enum_dim = l.max_enum_dim.min(v);
        }
        if let Some(v) = self.max_cells {
            l.max_cells = v;
        }
        if let Some(v) = self.node_budget {
            l.node_budget = v;
        }
        if let Some(v) = self.max_modulus {
            l.max_modulus = v;
        }
        if let Some(v) = self.max_denominator {
            l.max_denominator = v;
        }
        if let Some(v) = self.horizon {
            l.horizon = v;
        }
        l
    }

    fn record(&self, args: &mut BTreeMap<String, String>) {
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                args.insert(k.into(), v);
            }
        };
        put("max-d", self.max_d.map(|v| v.to_string()));
        put("max-cells", self.max_cells.map(|v| v.to_string()));
        put("node-budget", self.node_budget.map(|v| v.to_string()));
        put("max-modulus", self.max_modulus.map(|v| v.to_string()));
        put("max-denominator", self.max_denominator.map(|v| v.to_string()));
        put("horizon", self.horizon.map(|v| v.to_string()));
    }
}

/// Outcome of a command: exit code plus lines for stdout and stderr.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<String>,
    pub stderr: Vec<String>,
}

impl Outcome {
    fn fail(code: i32, msg: impl Into<String>) -> Self {
        Outcome { code, stdout: Vec::new(), stderr: vec![msg.into()] }
    }

    fn from_error(e: &Error) -> Self {
        let code = match e {
            Error::Resource { .. } => EXIT_RESOURCE,
            Error::Invalid(_) | Error::Precondition(_) => EXIT_INVALID,
        };
        Outcome::fail(code, e.to_string())
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::BuildPiece { k, delta, output, caps } => cmd_build_piece(k, &delta, &caps, output.as_deref()),
        Command::Assemble { delta, rounds, e, output, caps } => {
            cmd_assemble(&delta, rounds, e.as_deref(), &caps, output.as_deref())
        }
        Command::Verify { input, strict } => cmd_verify(&input, strict),
        Command::Kneser { n, r, budget } => cmd_kneser(n, r, budget),
    }
}

/// Runs the checks and wraps everything in a document.
pub fn make_document(
    name: &str,
    args: BTreeMap<String, String>,
    cert: &RecurrenceCertificate,
    timings: bool,
) -> (CertificateDocument, Vec<Check>) {
    let t = Instant::now();
    let checks = cert.verify();
    let elapsed = timings.then(|| t.elapsed().as_millis() as u64);
    let records = checks
        .iter()
        .map(|c| CheckRecord { name: c.name.clone(), pass: c.ok, elapsed_ms: elapsed })
        .collect();
    let doc = CertificateDocument {
        schema_version: SCHEMA_VERSION.into(),
        command: CommandRecord { name: name.into(), args },
        certificate: CertificateBody::from_certificate(cert),
        checks: records,
    };
    (doc, checks)
}

fn write_output(doc: &CertificateDocument, output: Option<&Path>) -> Result<Vec<String>, Outcome> {
    let text = doc.to_json();
    match output {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Outcome::fail(EXIT_IO, format!("cannot write {}: {e}", p.display())))?;
            Ok(Vec::new())
        }
        None => Ok(vec![text.trim_end().to_string()]),
    }
}

fn summary(cert: &RecurrenceCertificate) -> String {
    format!(
        "S size {} claim chi>{} m={} |B|={}",
        cert.s.len(),
        cert.chromatic_claim,
        cert.witness.m,
        cert.witness.b.len()
    )
}

fn failed_names(checks: &[Check]) -> Vec<String> {
    checks.iter().filter(|c| !c.ok).map(|c| format!("check failed: {} {}", c.name, c.detail)).collect()
}

pub fn cmd_build_piece(k: usize, delta: &str, caps: &Caps, output: Option<&Path>) -> Outcome {
    let d = match parse_rat(delta).and_then(|d| check_delta(&d).map(|_| d)) {
        Ok(d) => d,
        Err(e) => return Outcome::from_error(&e),
    };
    let limits = caps.limits();
    let cert = match finite_piece(k, &d, &limits) {
        Ok(c) => c,
        Err(e) => {
            let mut o = Outcome::from_error(&e);
            o.stderr.push(format!("stage report: k={k} delta={delta} max-d={}", limits.max_d));
            return o;
        }
    };
    let mut args = BTreeMap::new();
    args.insert("k".into(), k.to_string());
    args.insert("delta".into(), delta.to_string());
    caps.record(&mut args);
    let (doc, checks) = make_document("build-piece", args, &cert, caps.timings);
    let bad = failed_names(&checks);
    if !bad.is_empty() {
        return Outcome { code: EXIT_CHECK, stdout: Vec::new(), stderr: bad };
    }
    match write_output(&doc, output) {
        Ok(mut stdout) => {
            if output.is_some() {
                stdout.push(summary(&cert));
            }
            Outcome { code: EXIT_OK, stdout, stderr: Vec::new() }
        }
        Err(o) => o,
    }
}

pub fn cmd_assemble(delta: &str, rounds: usize, e: Option<&str>, caps: &Caps, output: Option<&Path>) -> Outcome {
    let d = match parse_rat(delta).and_then(|d| check_delta(&d).map(|_| d)) {
        Ok(d) => d,
        Err(err) => return Outcome::from_error(&err),
    };
    if rounds == 0 {
        return Outcome::fail(EXIT_INVALID, "invalid input: K must be at least 1");
    }
    let espec = match e.map(ESpec::parse).transpose() {
        Ok(v) => v,
        Err(err) => {
            let code = if err.to_string().contains("cannot read") { EXIT_IO } else { EXIT_INVALID };
            return Outcome::fail(code, err.to_string());
        }
    };
    let limits = caps.limits();
    let res = match &espec {
        None => kriz_iterate(&d, rounds, &limits),
        Some(es) => kriz_iterate_in_difference_set(&d, rounds, es, &limits),
    };
    let res = match res {
        Ok(r) => r,
        Err(err) => return Outcome::from_error(&err),
    };
    let mut args = BTreeMap::new();
    args.insert("delta".into(), delta.to_string());
    args.insert("K".into(), rounds.to_string());
    if let Some(es) = e {
        args.insert("E".into(), es.to_string());
    }
    caps.record(&mut args);
    let (doc, checks) = make_document("assemble", args, &res.certificate, caps.timings);
    let bad = failed_names(&checks);
    if !bad.is_empty() {
        return Outcome { code: EXIT_CHECK, stdout: Vec::new(), stderr: bad };
    }
    let mut stdout = match write_output(&doc, output) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let mut stderr = Vec::new();
    for st in &res.stages {
        stderr.push(format!("stage {}: m={} |C|={} |S|={}", st.k, st.m, st.c_size, st.s_size));
    }
    if output.is_some() {
        stdout.push(summary(&res.certificate));
        if espec.is_some() {
            stdout.push("S in E-E: yes".into());
        }
    }
    match res.stopped {
        None => Outcome { code: EXIT_OK, stdout, stderr },
        Some(reason) => {
            stderr.push(format!("stopped after {} of {} stages: {reason}", res.stages.len(), res.requested));
            Outcome { code: EXIT_RESOURCE, stdout, stderr }
        }
    }
}

/// Checks a document's text; `Err` carries the exit code and message.
pub fn verify_text(text: &str, strict: bool) -> Result<Vec<Check>, (i32, String)> {
    if text.trim().is_empty() {
        return Err((EXIT_PARSE, "empty document".into()));
    }
    let doc = CertificateDocument::from_json(text).map_err(|e| (EXIT_PARSE, e.to_string()))?;
    verify_document(&doc, strict)
}

pub fn verify_document(doc: &CertificateDocument, strict: bool) -> Result<Vec<Check>, (i32, String)> {
    let cert = doc.certificate.to_certificate().map_err(|e| (EXIT_PARSE, e.to_string()))?;
    let mut checks = cert.verify();
    if strict {
        checks.push(Check {
            name: "recorded-checks-pass".into(),
            ok: doc.checks.iter().all(|c| c.pass),
            detail: String::new(),
        });
        let sorted = cert.witness.b.windows(2).all(|w| w[0] < w[1]);
        checks.push(Check { name: "B-sorted".into(), ok: sorted, detail: String::new() });
    }
    if let Some(c) = checks.iter().find(|c| !c.ok) {
        return Err((EXIT_CHECK, format!("{} {}", c.name, c.detail).trim_end().to_string()));
    }
    Ok(checks)
}

pub fn cmd_verify(input: &Path, strict: bool) -> Outcome {
    let text = match std::fs::read_to_string(input) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(EXIT_IO, format!("cannot read {}: {e}", input.display())),
    };
    match verify_text(&text, strict) {
        Ok(checks) => Outcome {
            code: EXIT_OK,
            stdout: checks.iter().map(|c| format!("pass {}", c.name)).collect(),
            stderr: Vec::new(),
        },
        Err((code, msg)) => {
            let msg = if code == EXIT_CHECK { format!("check failed: {msg}") } else { format!("parse error: {msg}") };
            Outcome::fail(code, msg)
        }
    }
}

pub fn cmd_kneser(n: u32, r: u32, budget: Option<u64>) -> Outcome {
    let limits = Limits::from_env();
    let g = match kneser_graph(n, r, &limits) {
        Ok(g) => g,
        Err(e) => return Outcome::from_error(&e),
    };
    let mut b = Budget::new(budget.unwrap_or(limits.node_budget));
    let res = chromatic_number_exact(&g, &mut b);
    if !res.exact {
        return Outcome {
            code: EXIT_RESOURCE,
            stdout: vec![format!("bounds-only lower={} upper={}", res.lower, res.upper)],
            stderr: vec![format!("node budget exhausted after {} nodes", res.nodes)],
        };
    }
    let chi = res.lower;
    let line = if 2 * r > n || g.edge_count() == 0 {
        format!("chi={chi} no-edges")
    } else {
        let formula = n as i64 - 2 * r as i64 + 2;
        let verdict = if formula == chi as i64 { "MATCH" } else { "MISMATCH" };
        format!("chi={chi} formula={formula} {verdict}")
    };
    let code = if line.ends_with("MISMATCH") { EXIT_CHECK } else { EXIT_OK };
    Outcome { code, stdout: vec![line], stderr: Vec::new() }
}

/// Entry point for the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let out = run(cli);
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    for l in &out.stdout {
        let _ = writeln!(lock, "{l}");
    }
    for l in &out.stderr {
        eprintln!("{l}");
    }
    out.code
}
