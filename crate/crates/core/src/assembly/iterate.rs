//! The stage-by-stage construction of S and C.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::evidence::{ChromaticEvidence, LogEntry};
use super::periodic::PeriodicSet;
use super::piece::find_piece;
use super::two_pieces::{l_threshold, two_pieces};
use super::witness::{smallest_witness, witness_from_set, NonrecurrenceWitness};
use super::RecurrenceCertificate;
use crate::eset::{min_positive_difference, ESpec};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rational::{check_delta, fmt_rat, half, Rat};

/// Sizes recorded after each completed stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageSummary {
    pub k: usize,
    pub m: u64,
    pub c_size: usize,
    pub s_size: usize,
}

#[derive(Clone, Debug)]
pub struct IterationResult {
    pub certificate: RecurrenceCertificate,
    pub requested: usize,
    pub stages: Vec<StageSummary>,
    /// Why the loop stopped short of the requested number of stages.
    pub stopped: Option<String>,
}

impl IterationResult {
    pub fn completed(&self) -> usize {
        self.stages.len()
    }
}

struct State {
    k: usize,
    w: NonrecurrenceWitness,
    evidence: ChromaticEvidence,
    log: Vec<LogEntry>,
}

/// Values the base case would take with the literal choices of the proofs:
/// S₁ = {1}, m₁ = 2, C₁ = {0} without E, and S₁ = {t}, m₁ = 2t,
/// C₁ = [t − 1] with t the least element of E − E above (½ − δ)⁻¹ with E.
/// Returned as (S₁, C₁, m₁) for comparison; the construction does not use them.
pub fn paper_base_case(delta: &Rat, e: Option<&ESpec>) -> Result<(Vec<u64>, Vec<u64>, u64)> {
    check_delta(delta)?;
    let Some(e) = e else { return Ok((vec![1], vec![0], 2)) };
    let bound = (Rat::one() / (half() - delta)).floor().to_integer();
    let mut t = bound + 1u32;
    for _ in 0..1_000_000 {
        if e.in_difference_set(&t) {
            let t = t.to_u64().ok_or_else(|| Error::resource("base case", "t too large"))?;
            return Ok((vec![t], (0..t - 1).collect(), 2 * t));
        }
        t += 1u32;
    }
    Err(Error::resource("base case", "no element of E - E found above the bound"))
}

fn base_states(delta: &Rat, t: u64, attempts: usize) -> Result<Vec<State>> {
    let a1 = PeriodicSet::half_blocks(t);
    let mut out = Vec::new();
    let mut m = 2 * t + 1;
    while out.len() < attempts && m < 2 * t + 1 + 64 * t.max(4) {
        if let Ok(w) = witness_from_set(&[t], &a1, delta, m)? {
            let evidence = ChromaticEvidence {
                chi_lower: 2,
                vertices: vec![BigInt::zero(), BigInt::from(t)],
                edges: vec![(0, 1)],
                kneser: None,
            };
            let log = vec![LogEntry::new(
                "base",
                &[("S", format!("{{{t}}}")), ("m", m.to_string()), ("C", format!("{:?}", w.b)), ("A", format!("[{t}] + {}Z", 2 * t))],
            )];
            out.push(State { k: 1, w, evidence, log });
        }
        m += 1;
    }
    Ok(out)
}

fn round(st: &State, delta: &Rat, e: Option<&ESpec>, limits: &Limits) -> Result<State> {
    let mk = st.w.m;
    let ck = st.w.b.len() as u64;
    let delta_k = Rat::new(ck.into(), mk.into());
    let two = Rat::from_integer(2.into());
    let eta = (delta / (&two * &delta_k) + half()) / &two;
    if eta >= half() {
        return Err(Error::Precondition("eta reached 1/2".into()));
    }
    let delta_in = delta / (&two * &eta);
    let smax = st.w.s.iter().copied().max().unwrap_or(0);
    let margin = &two * &delta_k * &eta - delta;
    let max_s = (Rat::from_integer(limits.max_modulus.into()) * &margin / (&two * Rat::from_integer(mk.into())))
        .floor()
        .to_integer()
        .to_u64()
        .unwrap_or(0);
    let cap = limits.max_modulus;
    let accept = |s: &[u64], dens: &Rat| -> bool {
        let fmax = s.iter().copied().max().unwrap_or(0);
        let k = smax.max(fmax.saturating_mul(mk));
        let Some(l0) = l_threshold(ck, mk, &delta_in, &eta, k) else { return false };
        let gap = dens - &eta;
        if gap <= Rat::zero() {
            return false;
        }
        let lw = (Rat::from_integer((2 * fmax).into()) * dens / gap).floor().to_integer().to_u64().unwrap_or(u64::MAX);
        let l = l0.max(lw).saturating_add(1);
        l.saturating_mul(mk) <= cap && st.w.s.len() + s.len() <= limits.max_set
    };
    let (space, modulus) = match e {
        Some(e) => (e.clone(), mk),
        None => (ESpec::All, 1),
    };
    let piece = find_piece(st.k + 1, &eta, &space, modulus, max_s, &accept, limits)?;
    let fmax = piece.s.iter().copied().max().unwrap_or(0);
    let k = smax.max(fmax * mk);
    let l0 = l_threshold(ck, mk, &delta_in, &eta, k).ok_or_else(|| Error::Precondition("no l0".into()))?;
    let wf = smallest_witness(&piece.s, &piece.periodic, &eta, l0 + 1, cap / mk)?
        .map_err(|f| Error::resource("two_pieces", format!("no witness for the new piece with l*m <= {cap} ({f:?})")))?;
    let we = NonrecurrenceWitness { delta: delta_in.clone(), ..st.w.clone() };
    let tp = two_pieces(&we, &wf)?;
    let mut w = tp.witness;
    if w.delta != *delta {
        return Err(Error::Precondition(format!("combined density {} differs from delta", fmt_rat(&w.delta))));
    }
    w.delta = delta.clone();
    if !st.w.b.iter().all(|x| w.b.binary_search(x).is_ok()) || !st.w.s.iter().all(|x| w.s.binary_search(x).is_ok()) {
        return Err(Error::Precondition("stages are not increasing".into()));
    }
    if w.s.len() > limits.max_set {
        return Err(Error::resource("assemble", format!("|S| = {} exceeds {}", w.s.len(), limits.max_set)));
    }
    let mut log = st.log.clone();
    log.push(LogEntry::new(
        "stage",
        &[
            ("k", (st.k + 1).to_string()),
            ("delta_k", fmt_rat(&delta_k)),
            ("eta", fmt_rat(&eta)),
            ("delta_in", fmt_rat(&delta_in)),
            ("l0", tp.l0.to_string()),
            ("l", wf.m.to_string()),
            ("m", w.m.to_string()),
            ("e0", tp.e0.to_string()),
            ("f0", tp.f0.to_string()),
            ("t1", tp.t1.to_string()),
            ("piece", format!("{:?}", piece.s)),
        ],
    ));
    log.extend(piece.log.iter().cloned());
    Ok(State { k: st.k + 1, w, evidence: piece.evidence.dilate(mk), log })
}

fn finish(st: State, delta: &Rat, e: Option<&ESpec>, requested: usize, stages: Vec<StageSummary>, stopped: Option<String>) -> Result<IterationResult> {
    let certificate = RecurrenceCertificate {
        s: st.w.s.clone(),
        chromatic_claim: st.k,
        evidence: st.evidence,
        witness: NonrecurrenceWitness { delta: delta.clone(), ..st.w },
        e: e.cloned(),
        modulus: 1,
        log: st.log,
    };
    if let Some(c) = certificate.verify().into_iter().find(|c| !c.ok) {
        return Err(Error::Precondition(format!("final check {} failed: {}", c.name, c.detail)));
    }
    Ok(IterationResult { certificate, requested, stages, stopped })
}

fn summary(st: &State) -> StageSummary {
    StageSummary { k: st.k, m: st.w.m, c_size: st.w.b.len(), s_size: st.w.s.len() }
}

fn iterate(delta: &Rat, rounds: usize, e: Option<&ESpec>, limits: &Limits) -> Result<IterationResult> {
    check_delta(delta)?;
    if rounds == 0 {
        return Err(Error::invalid("K must be at least 1"));
    }
    let t = match e {
        None => 1,
        Some(e) => min_positive_difference(e, limits.horizon)
            .and_then(|x| x.to_u64())
            .ok_or_else(|| Error::invalid("E - E has no usable positive element"))?,
    };
    let bases = base_states(delta, t, if rounds == 1 { 1 } else { 24 })?;
    if bases.is_empty() {
        return Err(Error::resource("base case", "no base modulus found"));
    }
    let mut deepest: Option<(State, Vec<StageSummary>, String)> = None;
    for base in bases {
        let mut stages = vec![summary(&base)];
        let mut st = base;
        let mut stop = None;
        while st.k < rounds {
            match round(&st, delta, e, limits) {
                Ok(next) => {
                    st = next;
                    stages.push(summary(&st));
                }
                Err(err @ Error::Resource { .. }) => {
                    stop = Some(err.to_string());
                    break;
                }
                Err(err) => return Err(err),
            }
        }
        match stop {
            None => return finish(st, delta, e, rounds, stages, None),
            Some(reason) => {
                if deepest.as_ref().is_none_or(|d| st.k > d.0.k) {
                    deepest = Some((st, stages, reason));
                }
            }
        }
    }
    let (st, stages, reason) = deepest.expect("at least one base");
    finish(st, delta, e, rounds, stages, Some(reason))
}

/// K stages of the construction behind the first theorem.
pub fn kriz_iterate(delta: &Rat, rounds: usize, limits: &Limits) -> Result<IterationResult> {
    iterate(delta, rounds, None, limits)
}

/// As [`kriz_iterate`], keeping S inside E − E.
pub fn kriz_iterate_in_difference_set(delta: &Rat, rounds: usize, e: &ESpec, limits: &Limits) -> Result<IterationResult> {
    iterate(delta, rounds, Some(e), limits)
}
