use num_traits::Zero;

use super::witness::NonrecurrenceWitness;
use crate::error::{Error, Result};
use crate::rational::Rat;

/// {m·n : n ∈ S}.
pub fn dilate(s: &[u64], m: u64) -> Vec<u64> {
    s.iter().map(|&x| x * m).collect()
}

/// {n : m·n ∈ S}.
pub fn quotient(s: &[u64], m: u64) -> Vec<u64> {
    s.iter().filter(|&&x| x % m == 0).map(|&x| x / m).collect()
}

/// Sorted union of two sets.
pub fn union(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut v: Vec<u64> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Largest l for which 2δ′η·lm − 2k > 2δη·lm can fail, with δ′ = |A|/m and
/// k = max(E ∪ mF); None when δ′ ≤ δ.
pub fn l_threshold(a_len: u64, m: u64, delta: &Rat, eta: &Rat, k: u64) -> Option<u64> {
    let dp = Rat::new(a_len.into(), m.into());
    let gap = Rat::from_integer(2.into()) * eta * Rat::from_integer(m.into()) * (dp - delta);
    if gap <= Rat::zero() {
        return None;
    }
    let bound = Rat::from_integer((2 * k).into()) / gap;
    bound.floor().to_integer().try_into().ok()
}

#[derive(Clone, Debug)]
pub struct TwoPieces {
    /// (C, lm) for E ∪ mF at 2δη.
    pub witness: NonrecurrenceWitness,
    pub l0: u64,
    pub e0: u64,
    pub f0: u64,
    /// C was shifted down by t1 so that A ⊆ C.
    pub t1: u64,
}

/// Combines (A, m) for E at δ with (B, l) for F at η into (C, lm) for
/// E ∪ mF at 2δη.
pub fn two_pieces(we: &NonrecurrenceWitness, wf: &NonrecurrenceWitness) -> Result<TwoPieces> {
    we.verify()?;
    wf.verify()?;
    let (a, m, e, delta) = (&we.b, we.m, &we.s, &we.delta);
    let (b, l, f, eta) = (&wf.b, wf.m, &wf.s, &wf.delta);
    if e.is_empty() || f.is_empty() {
        return Err(Error::invalid("E and F must be nonempty"));
    }
    let mf: Vec<u64> = f.iter().map(|&x| x.checked_mul(m).ok_or_else(|| Error::resource("two_pieces", "mF overflows"))).collect::<Result<_>>()?;
    let k = e.iter().chain(&mf).copied().max().unwrap();
    let l0 = l_threshold(a.len() as u64, m, delta, eta, k)
        .ok_or_else(|| Error::Precondition("|A|/m does not exceed delta".into()))?;
    if l <= l0 {
        return Err(Error::Precondition(format!("l = {l} must exceed l0 = {l0}")));
    }
    let lm = l.checked_mul(m).ok_or_else(|| Error::resource("two_pieces", "lm overflows"))?;
    let top = lm
        .checked_sub(2 * k)
        .ok_or_else(|| Error::Precondition(format!("lm = {lm} does not exceed 2k = {}", 2 * k)))?;
    let (e0, f0) = (*e.iter().min().unwrap(), *f.iter().min().unwrap());
    let mut c: Vec<u64> = Vec::with_capacity(2 * a.len() * b.len());
    for &bb in b {
        for &aa in a {
            let x1 = aa + m * bb;
            if x1 < top {
                c.push(x1);
            }
            let x2 = aa + e0 + m * (bb + f0);
            if x2 < top {
                c.push(x2);
            }
        }
    }
    c.sort_unstable();
    let before = c.len();
    c.dedup();
    if c.len() != before {
        return Err(Error::Precondition("translates of A overlap".into()));
    }
    let t1 = m * b[0];
    let shifted: Vec<u64> = c.iter().map(|&x| x - t1).collect();
    if !a.iter().all(|x| shifted.binary_search(x).is_ok()) {
        return Err(Error::Precondition("A is not contained in C - t1".into()));
    }
    let witness = NonrecurrenceWitness {
        b: shifted,
        m: lm,
        s: union(e, &mf),
        delta: Rat::from_integer(2.into()) * delta * eta,
    };
    witness.verify()?;
    Ok(TwoPieces { witness, l0, e0, f0, t1 })
}

/// Number of ways x = a + q·e0 + m(b + q·f0) with a ∈ A, b ∈ B, q ∈ {0, 1}.
pub fn decompositions(x: u64, a: &[u64], m: u64, b: &[u64], e0: u64, f0: u64) -> usize {
    let mut n = 0;
    for q in 0..2u64 {
        let Some(y) = x.checked_sub(q * (e0 + m * f0)) else { continue };
        let (aa, bb) = (y % m, y / m);
        if a.binary_search(&aa).is_ok() && b.binary_search(&bb).is_ok() {
            n += 1;
        }
    }
    n
}
