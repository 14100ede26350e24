use num_traits::Zero;

use super::check::check_witness;
use super::periodic::{best_window, threshold_m0, PeriodicSet};
use crate::error::{Error, Result};
use crate::rational::Rat;

/// (B, m) with B ⊆ [m], |B| > δm, B ∩ (B + S) = ∅ and B + S + S ⊆ [m].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonrecurrenceWitness {
    pub b: Vec<u64>,
    pub m: u64,
    pub s: Vec<u64>,
    pub delta: Rat,
}

impl NonrecurrenceWitness {
    /// Exact |B|/m.
    pub fn ratio(&self) -> Rat {
        Rat::new((self.b.len() as u64).into(), self.m.into())
    }

    /// Runs the independent checker; Err names the first failing check.
    pub fn verify(&self) -> Result<()> {
        for c in check_witness(&self.b, self.m, &self.s, &self.delta) {
            if !c.ok {
                return Err(Error::Precondition(format!("witness check {} failed", c.name)));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFailure {
    pub m: u64,
    pub count: u64,
    /// Every m above this succeeds; None when density(A) ≤ δ.
    pub m0: Option<u64>,
}

/// B = (A − t) ∩ [m − 2k] for the densest window t, k = max S.
pub fn witness_from_set(
    s: &[u64],
    a: &PeriodicSet,
    delta: &Rat,
    m: u64,
) -> Result<std::result::Result<NonrecurrenceWitness, WitnessFailure>> {
    if *delta <= Rat::zero() {
        return Err(Error::invalid("delta must be positive"));
    }
    if s.contains(&0) {
        return Err(Error::invalid("S must consist of positive integers"));
    }
    if let Some((x, d)) = a.difference_hit(s) {
        return Err(Error::Precondition(format!("{d} lies in A - A (residue {x} of period {})", a.period)));
    }
    let k = s.iter().copied().max().unwrap_or(0);
    let m0 = threshold_m0(&a.density(), delta, k);
    let fail = |count| Ok(Err(WitnessFailure { m, count, m0 }));
    if m <= 2 * k {
        return fail(0);
    }
    let len = m - 2 * k;
    let (t, count) = best_window(a, len);
    if Rat::from_integer(count.into()) <= delta * Rat::from_integer(m.into()) {
        return fail(count);
    }
    let b: Vec<u64> = a.window(t, len).into_iter().map(|n| (n - t) as u64).collect();
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let w = NonrecurrenceWitness { b, m, s: sorted, delta: delta.clone() };
    w.verify()?;
    Ok(Ok(w))
}

/// Smallest m ≥ start (up to `cap`) for which [`witness_from_set`] succeeds.
pub fn smallest_witness(
    s: &[u64],
    a: &PeriodicSet,
    delta: &Rat,
    start: u64,
    cap: u64,
) -> Result<std::result::Result<NonrecurrenceWitness, WitnessFailure>> {
    let mut m = start.max(1);
    loop {
        match witness_from_set(s, a, delta, m)? {
            Ok(w) => return Ok(Ok(w)),
            Err(f) => {
                if m >= cap {
                    return Ok(Err(f));
                }
                // past m₀ success is certain; jump there if the linear walk is long
                m = match f.m0 {
                    Some(m0) if m0 > m + 4096 && f.count == 0 => (m + 1).max(2 * s.iter().max().copied().unwrap_or(0) + 1),
                    _ => m + 1,
                }
                .min(cap);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn evens() -> PeriodicSet {
        PeriodicSet::new(2, vec![0], 0).unwrap()
    }

    #[test]
    fn spec_examples() {
        let w = witness_from_set(&[1], &evens(), &rat(2, 5), 20).unwrap().unwrap();
        assert_eq!(w.b, (0..=16).step_by(2).collect::<Vec<u64>>());
        assert_eq!(w.b.len(), 9);
        let f = witness_from_set(&[1], &evens(), &rat(2, 5), 4).unwrap().unwrap_err();
        assert_eq!(f.m0, Some(20));
        assert!(matches!(witness_from_set(&[2], &evens(), &rat(2, 5), 20), Err(Error::Precondition(_))));
    }

    #[test]
    fn smallest() {
        let w = smallest_witness(&[1], &evens(), &rat(1, 4), 1, 100).unwrap().unwrap();
        assert_eq!((w.m, w.b.clone()), (3, vec![0]));
    }
}
