//! The ε-copies H̃(α; k, ε) and the lift of F₂^d nonrecurrence to 𝕋^d.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::boxes::{box_tiling, lcm_unit, to_units, Arc, BoxSet};
use super::TorusPoint;
use crate::error::{Error, Result};
use crate::f2core::BitVector;
use crate::rational::{half, norm, rat, Rat};

/// H̃(α; k, ε) = {n : nα ∈ H_k(½⃗) + V_ε}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopySpec {
    pub alpha: TorusPoint,
    pub k: u32,
    pub epsilon: Rat,
}

impl CopySpec {
    pub fn new(alpha: TorusPoint, k: u32, epsilon: Rat) -> Result<Self> {
        if epsilon <= Rat::zero() || epsilon > rat(1, 4) {
            return Err(Error::invalid("copy radius must lie in (0, 1/4]"));
        }
        Ok(CopySpec { alpha, k, epsilon })
    }
}

/// Is the point within ε of H_k(½⃗)? Each coordinate must be near ½ or near
/// 0, with at most k of them near 0.
pub fn point_in_thick_ball(x: &TorusPoint, k: u32, eps: &Rat) -> bool {
    let h = half();
    let mut near_zero = 0;
    for c in x.coords() {
        if norm(&(c - &h)) < *eps {
            continue;
        }
        if norm(c) < *eps {
            near_zero += 1;
            if near_zero > k {
                return false;
            }
            continue;
        }
        return false;
    }
    true
}

pub fn tilde_h_member(n: &BigInt, spec: &CopySpec) -> bool {
    point_in_thick_ball(&spec.alpha.scale(n), spec.k, &spec.epsilon)
}

/// Output of the lift: B = A□_{ε′} misses B + R + V_ε.
#[derive(Clone, Debug)]
pub struct Lift {
    pub eps_prime: Rat,
    pub eps: Rat,
    pub b: BoxSet,
    pub r: Vec<BitVector>,
    pub alpha: TorusPoint,
}

impl Lift {
    /// n ∈ S = {n : nα ∈ R + V_ε}.
    pub fn s_member(&self, n: &BigInt) -> bool {
        let x = self.alpha.scale(n);
        self.r.iter().any(|t| x.sup_dist(&TorusPoint::from_bits(t)) < self.eps)
    }

    /// n ∈ {n : nα ∈ B}.
    pub fn a_member(&self, n: &BigInt) -> bool {
        self.b.contains(&self.alpha.scale(n))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftFailure {
    EmptyA,
    /// |A|(½ − 2ε′)^d ≤ δ down to the smallest ε′ tried.
    TooSparse { size: usize, smallest_eps: Rat },
}

fn check_disjoint_in_gd(a: &[BitVector], r: &[BitVector]) -> Result<()> {
    let set: std::collections::HashSet<u64> = a.iter().map(|x| x.bits()).collect();
    for x in a {
        for t in r {
            if set.contains(&x.add(t).bits()) {
                return Err(Error::Precondition(format!("A meets A + R at {x} + {t}")));
            }
        }
    }
    Ok(())
}

/// Lift at a fixed ε′, with ε the exact separation of B and B + R.
pub fn lift_with(a: &[BitVector], r: &[BitVector], dim: u32, alpha: &TorusPoint, eps_prime: &Rat) -> Result<Lift> {
    if alpha.dim() != dim as usize {
        return Err(Error::invalid("alpha dimension differs from the F2 dimension"));
    }
    check_disjoint_in_gd(a, r)?;
    let b = box_tiling(a, dim, eps_prime)?;
    let eps = if r.is_empty() || a.is_empty() {
        eps_prime.clone()
    } else {
        let moved = box_tiling(&shifted(a, r), dim, eps_prime)?;
        b.separation(&moved)
    };
    if eps <= Rat::zero() {
        return Err(Error::Precondition("B touches B + R".into()));
    }
    let lift = Lift { eps_prime: eps_prime.clone(), eps, b, r: r.to_vec(), alpha: alpha.clone() };
    if !verify_lift(&lift.b, &lift.r, &lift.eps)? {
        return Err(Error::Precondition("lift failed re-verification".into()));
    }
    Ok(lift)
}

fn shifted(a: &[BitVector], r: &[BitVector]) -> Vec<BitVector> {
    let mut v: Vec<BitVector> = a.iter().flat_map(|x| r.iter().map(move |t| x.add(t))).collect();
    v.sort();
    v.dedup();
    v
}

/// Largest ε′ in {1/8, 1/16, ...} with |A|(½ − 2ε′)^d > δ, then [`lift_with`].
pub fn lift_nonrecurrence(
    a: &[BitVector],
    r: &[BitVector],
    dim: u32,
    alpha: &TorusPoint,
    delta: &Rat,
) -> Result<std::result::Result<Lift, LiftFailure>> {
    if a.is_empty() {
        return Ok(Err(LiftFailure::EmptyA));
    }
    let size = Rat::from_integer(a.len().into());
    let mut eps = rat(1, 8);
    for _ in 0..40 {
        let side = half() - &eps * rat(2, 1);
        let mut vol = size.clone();
        for _ in 0..dim {
            vol *= &side;
        }
        if vol > *delta {
            return lift_with(a, r, dim, alpha, &eps).map(Ok);
        }
        eps /= rat(2, 1);
    }
    Ok(Err(LiftFailure::TooSparse { size: a.len(), smallest_eps: eps * rat(2, 1) }))
}

/// B ∩ (B + R + V_ε) = ∅, by thickening each closed box of B + R into an open
/// box and intersecting.
pub fn verify_lift(b: &BoxSet, r: &[BitVector], eps: &Rat) -> Result<bool> {
    if r.is_empty() {
        return Ok(true);
    }
    let unit = lcm_unit(&[eps, &Rat::new(BigInt::one(), b.unit.into())])?;
    let b = b.rescale(unit);
    let e = to_units(eps, unit).ok_or_else(|| Error::invalid("eps off grid"))?;
    let half_u = unit / 2;
    let mut thick = BoxSet::empty(b.dim, unit);
    for bx in &b.boxes {
        for t in r {
            let nb: Vec<Arc> = bx
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let lo = a.lo + if t.bit(i as u32) { half_u } else { 0 };
                    if a.len + 2 * e >= unit {
                        Arc::full(unit)
                    } else {
                        Arc::open(lo - e, lo + a.len + e, unit)
                    }
                })
                .collect();
            thick.boxes.push(nb);
        }
    }
    thick.disjoint = false;
    Ok(!b.meets(&thick))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2core::{enumerate_ball, HammingBallSpec};
    use crate::limits::Limits;

    fn tp(c: &[(i64, i64)]) -> TorusPoint {
        TorusPoint::new(c.iter().map(|&(p, q)| rat(p, q)).collect()).unwrap()
    }

    #[test]
    fn membership_examples() {
        let s = CopySpec::new(tp(&[(1, 2)]), 0, rat(1, 10)).unwrap();
        assert!(tilde_h_member(&1.into(), &s));
        assert!(!tilde_h_member(&2.into(), &s));
        let s2 = CopySpec::new(tp(&[(1, 6), (1, 2)]), 1, rat(1, 10)).unwrap();
        assert!(tilde_h_member(&3.into(), &s2));
        assert!(!tilde_h_member(&1.into(), &s2));
        // 6α = (0, 0): two coordinates near 0 with k = 1
        assert!(!tilde_h_member(&6.into(), &s2));
    }

    #[test]
    fn lift_hamming_d10() {
        let l = Limits::default();
        let a = enumerate_ball(&HammingBallSpec::at_zero(10, 4).unwrap(), &l).unwrap();
        let r = enumerate_ball(&HammingBallSpec::at_ones(10, 1).unwrap(), &l).unwrap();
        let alpha = TorusPoint::zero(10);
        let lift = lift_nonrecurrence(&a, &r, 10, &alpha, &rat(1, 3)).unwrap().unwrap();
        assert_eq!(lift.eps_prime, rat(1, 512));
        assert!(lift.b.measure().unwrap() > rat(1, 3));
        // boxes two apart in Hamming distance are 2ε′ apart
        assert_eq!(lift.eps, rat(2, 512));
        assert!(verify_lift(&lift.b, &r, &lift.eps).unwrap());
        assert!(!verify_lift(&lift.b, &r, &(&lift.eps + rat(1, 1024))).unwrap());
    }

    #[test]
    fn lift_degenerate() {
        let z = TorusPoint::zero(2);
        let r = vec![BitVector::parse("11").unwrap()];
        assert_eq!(lift_nonrecurrence(&[], &r, 2, &z, &rat(1, 4)).unwrap().unwrap_err(), LiftFailure::EmptyA);
        let a = vec![BitVector::parse("00").unwrap()];
        let l = lift_nonrecurrence(&a, &[], 2, &z, &rat(1, 8)).unwrap().unwrap();
        assert_eq!(l.eps, l.eps_prime);
        let bad = vec![BitVector::parse("00").unwrap(), BitVector::parse("11").unwrap()];
        assert!(lift_nonrecurrence(&bad, &r, 2, &z, &rat(1, 8)).is_err());
    }
}
