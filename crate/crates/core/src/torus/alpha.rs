//! Rational α with finite-resolution dense orbits, and copies of finite vertex
//! sets inside an orbit.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::TorusPoint;
use crate::error::{Error, Result};
use crate::eset::ESpec;
use crate::limits::Limits;
use crate::rational::Rat;

/// α together with one orbit element per grid cell.
#[derive(Clone, Debug)]
pub struct AlphaChoice {
    pub alpha: TorusPoint,
    pub resolution: u64,
    /// (cell, n) with n the first element of E whose orbit point lies in the
    /// cell; cells are indexed by ⌊Q·x_i⌋.
    pub witness_hits: Vec<(Vec<u64>, BigInt)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageFailure {
    pub best_alpha: Option<TorusPoint>,
    pub covered: u64,
    pub cells: u64,
}

/// Numerators and denominators of α as machine integers.
pub fn alpha_parts(alpha: &TorusPoint) -> Result<Vec<(u64, u64)>> {
    alpha
        .coords()
        .iter()
        .map(|c| match (c.numer().to_u64(), c.denom().to_u64()) {
            (Some(p), Some(q)) if q < 1 << 40 => Ok((p, q)),
            _ => Err(Error::resource("torus", format!("coordinate {c} too large"))),
        })
        .collect()
}

/// First index of each residue mod q along the stream, stopping once the
/// stream is seen to cycle.
fn first_residue_index(e: &ESpec, q: u64, horizon: u64) -> Vec<Option<u64>> {
    let mut first = vec![None; q as usize];
    let period_bound = match e {
        // every supported stream is eventually periodic mod q with preperiod
        // plus period at most q
        ESpec::List(_) => horizon,
        _ => horizon.min(2 * q + 1),
    };
    for (i, r) in e.residues(q, period_bound).into_iter().enumerate() {
        first[r as usize].get_or_insert(i as u64);
    }
    first
}

fn pairwise_coprime_from(start: u64, d: usize, max: u64) -> Option<Vec<u64>> {
    let mut qs: Vec<u64> = Vec::with_capacity(d);
    let mut q = start;
    while qs.len() < d {
        if q > max {
            return None;
        }
        if qs.iter().all(|&p| p.gcd(&q) == 1) {
            qs.push(q);
        }
        q += 1;
    }
    Some(qs)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p))
}

/// Rank-one candidates (1, a, a², ...)/q with q prime, q ≥ Q^d.
fn korobov_alpha(e: &ESpec, d: usize, resolution: u64, cells: u64, limits: &Limits, best: &mut CoverageFailure) -> Result<Option<AlphaChoice>> {
    let cap = cells.saturating_mul(16).min(limits.max_cells).min(1 << 32);
    let mut q = cells.max(2 * resolution);
    while q <= cap {
        while !is_prime(q) {
            q += 1;
        }
        let first = first_residue_index(e, q, limits.horizon);
        for a in 2..q.min(258) {
            let mut gens = vec![1u64; d];
            for i in 1..d {
                gens[i] = gens[i - 1] * a % q;
            }
            let mut hit: Vec<Option<u64>> = vec![None; cells as usize];
            let mut covered = 0;
            for (r, f) in first.iter().enumerate() {
                let Some(i) = *f else { continue };
                let cell = gens.iter().rev().fold(0u64, |acc, &g| acc * resolution + (r as u64 * g % q) * resolution / q);
                let slot = &mut hit[cell as usize];
                if slot.is_none() {
                    covered += 1;
                }
                if slot.is_none_or(|j| i < j) {
                    *slot = Some(i);
                }
            }
            let alpha = || TorusPoint::new(gens.iter().map(|&g| Rat::new(g.into(), q.into())).collect());
            if covered == cells {
                return Ok(Some(AlphaChoice { alpha: alpha()?, resolution, witness_hits: hits(e, &hit, d, resolution) }));
            }
            if covered > best.covered {
                best.covered = covered;
                best.best_alpha = Some(alpha()?);
            }
        }
        q += q / 4 + 1;
    }
    Ok(None)
}

fn hits(e: &ESpec, hit: &[Option<u64>], d: usize, resolution: u64) -> Vec<(Vec<u64>, BigInt)> {
    hit.iter()
        .enumerate()
        .map(|(c, i)| {
            let mut idx = Vec::with_capacity(d);
            let mut c = c as u64;
            for _ in 0..d {
                idx.push(c % resolution);
                c /= resolution;
            }
            (idx, e.nth(i.unwrap()).unwrap())
        })
        .collect()
}

/// Searches α whose orbit over E visits all Q^d cells of side 1/Q. In d = 1
/// candidates are a/q with q ≥ 2Q; in higher dimension first (1, a, a², ...)/q
/// with q prime, then (1/q_1, ..., 1/q_d) with pairwise coprime q_i ≥ 2Q.
pub fn choose_alpha(
    e: &ESpec,
    d: usize,
    resolution: u64,
    limits: &Limits,
) -> Result<std::result::Result<AlphaChoice, CoverageFailure>> {
    if d == 0 || resolution == 0 {
        return Err(Error::invalid("need d >= 1 and resolution >= 1"));
    }
    let cells = resolution
        .checked_pow(d as u32)
        .filter(|&c| c <= limits.max_cells)
        .ok_or_else(|| Error::resource("choose_alpha", format!("{resolution}^{d} cells")))?;
    let mut best = CoverageFailure { best_alpha: None, covered: 0, cells };
    if d == 1 {
        for q in (2 * resolution).max(2)..=limits.max_denominator.max(2 * resolution) {
            let first = first_residue_index(e, q, limits.horizon);
            for a in 1..q {
                if a.gcd(&q) != 1 {
                    continue;
                }
                let mut hit: Vec<Option<u64>> = vec![None; resolution as usize];
                for (r, f) in first.iter().enumerate() {
                    if let Some(i) = f {
                        let cell = ((r as u64 * a % q) * resolution / q) as usize;
                        let slot = &mut hit[cell];
                        if slot.is_none_or(|j| *i < j) {
                            *slot = Some(*i);
                        }
                    }
                }
                let covered = hit.iter().filter(|h| h.is_some()).count() as u64;
                let alpha = TorusPoint::new(vec![Rat::new(a.into(), q.into())])?;
                if covered == cells {
                    let witness_hits = hit
                        .iter()
                        .enumerate()
                        .map(|(c, i)| (vec![c as u64], e.nth(i.unwrap()).unwrap()))
                        .collect();
                    return Ok(Ok(AlphaChoice { alpha, resolution, witness_hits }));
                }
                if covered > best.covered {
                    best.covered = covered;
                    best.best_alpha = Some(alpha);
                }
            }
        }
        return Ok(Err(best));
    }
    if let Some(c) = korobov_alpha(e, d, resolution, cells, limits, &mut best)? {
        return Ok(Ok(c));
    }
    let mut start = 2 * resolution;
    while let Some(qs) = pairwise_coprime_from(start, d, limits.max_denominator.max(4 * resolution)) {
        let modulus = qs.iter().try_fold(1u64, |acc, &q| acc.checked_mul(q));
        let Some(modulus) = modulus else { break };
        let alpha = TorusPoint::new(qs.iter().map(|&q| Rat::new(1.into(), q.into())).collect())?;
        let mut hit: Vec<Option<u64>> = vec![None; cells as usize];
        let mut covered = 0;
        for (i, r) in e.residues(modulus, limits.horizon).into_iter().enumerate() {
            let cell = qs.iter().rev().fold(0u64, |acc, &q| acc * resolution + (r % q) * resolution / q);
            if hit[cell as usize].is_none() {
                hit[cell as usize] = Some(i as u64);
                covered += 1;
                if covered == cells {
                    break;
                }
            }
        }
        if covered == cells {
            let witness_hits = hits(e, &hit, d, resolution);
            return Ok(Ok(AlphaChoice { alpha, resolution, witness_hits }));
        }
        if covered > best.covered {
            best.covered = covered;
            best.best_alpha = Some(alpha);
        }
        start = qs[0] + 1;
    }
    Ok(Err(best))
}

/// For each v, the first n ∈ E (within the horizon) with ‖nα − v‖_∞ < ε/2.
pub fn copy_cayley_vertices(e: &ESpec, alpha: &TorusPoint, vs: &[TorusPoint], eps: &Rat, horizon: u64) -> Result<Vec<BigInt>> {
    let parts = alpha_parts(alpha)?;
    let modulus = parts.iter().try_fold(1u64, |acc, &(_, q)| {
        let l = acc.lcm(&q);
        (l < 1 << 40).then_some(l)
    });
    let modulus = modulus.ok_or_else(|| Error::resource("copy_cayley_vertices", "alpha denominators too large"))?;
    let (en, ed) = (
        eps.numer().to_i128().ok_or_else(|| Error::invalid("eps too large"))?,
        eps.denom().to_i128().ok_or_else(|| Error::invalid("eps too large"))?,
    );
    let targets: Vec<Vec<(i128, i128)>> = vs
        .iter()
        .map(|v| {
            if v.dim() != parts.len() {
                return Err(Error::invalid("vertex dimension differs from alpha"));
            }
            v.coords()
                .iter()
                .map(|c| match (c.numer().to_i128(), c.denom().to_i128()) {
                    (Some(s), Some(t)) if t < 1 << 40 => Ok((s, t)),
                    _ => Err(Error::invalid("vertex coordinate too large")),
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut found: Vec<Option<u64>> = vec![None; vs.len()];
    let mut left = vs.len();
    for (i, r) in e.residues(modulus, horizon).into_iter().enumerate() {
        if left == 0 {
            break;
        }
        for (j, tgt) in targets.iter().enumerate() {
            if found[j].is_some() {
                continue;
            }
            let close = parts.iter().zip(tgt).all(|(&(p, q), &(s, t))| {
                let x = ((r % q) as u128 * p as u128 % q as u128) as i128;
                let big = q as i128 * t;
                let diff = (x * t - s * q as i128).rem_euclid(big);
                let dist = diff.min(big - diff);
                2 * ed * dist < en * big
            });
            if close {
                found[j] = Some(i as u64);
                left -= 1;
            }
        }
    }
    found
        .iter()
        .zip(vs)
        .map(|(f, v)| match f {
            Some(i) => Ok(e.nth(*i).unwrap()),
            None => Err(Error::resource("copy_cayley_vertices", format!("vertex {v} not reached within {horizon} elements"))),
        })
        .collect()
}

/// Re-checks ‖g·α − v‖_∞ < ε/2 exactly.
pub fn check_copy(alpha: &TorusPoint, vs: &[TorusPoint], gs: &[BigInt], eps: &Rat) -> bool {
    let r = eps / Rat::from_integer(2.into());
    vs.len() == gs.len() && vs.iter().zip(gs).all(|(v, g)| alpha.scale(g).sup_dist(v) < r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn integers_and_evens() {
        let l = Limits::default();
        let c = choose_alpha(&ESpec::All, 1, 4, &l).unwrap().unwrap();
        assert_eq!(c.alpha.coords(), &[rat(1, 8)]);
        assert_eq!(c.witness_hits.len(), 4);
        let ev = choose_alpha(&ESpec::Arith { a: 0, d: 2 }, 1, 4, &l).unwrap().unwrap();
        assert_eq!(ev.alpha.coords(), &[rat(1, 8)]);
        let hits: Vec<BigInt> = ev.witness_hits.iter().map(|h| h.1.clone()).collect();
        assert_eq!(hits, vec![0.into(), 2.into(), 4.into(), 6.into()]);
    }

    #[test]
    fn powers_of_two() {
        let l = Limits::default();
        let e = ESpec::Powers { b: 2 };
        let c = choose_alpha(&e, 1, 8, &l).unwrap().unwrap();
        let q = c.alpha.denominator();
        assert!(q.is_odd());
        for (cell, n) in &c.witness_hits {
            assert!(e.contains(n));
            let x = &c.alpha.scale(n).coords()[0] * rat(8, 1);
            assert_eq!(x.floor().to_integer(), BigInt::from(cell[0]));
        }
    }

    #[test]
    fn two_dimensional() {
        let l = Limits::default();
        let c = choose_alpha(&ESpec::All, 2, 4, &l).unwrap().unwrap();
        assert_eq!(c.witness_hits.len(), 16);
        for (cell, n) in &c.witness_hits {
            let p = c.alpha.scale(n);
            for (i, x) in p.coords().iter().enumerate() {
                assert_eq!((x * rat(4, 1)).floor().to_integer(), BigInt::from(cell[i]));
            }
        }
    }

    #[test]
    fn copies() {
        let a = TorusPoint::new(vec![rat(1, 8)]).unwrap();
        let vs = vec![TorusPoint::zero(1), TorusPoint::all_halves(1)];
        let g = copy_cayley_vertices(&ESpec::All, &a, &vs, &rat(1, 8), 100).unwrap();
        assert_eq!(g, vec![BigInt::from(0), BigInt::from(4)]);
        assert!(check_copy(&a, &vs, &g, &rat(1, 8)));
        let c = choose_alpha(&ESpec::All, 2, 16, &Limits::default()).unwrap().unwrap();
        let g2: Vec<TorusPoint> = (0..4u64).map(|b| TorusPoint::from_bits(&crate::f2core::BitVector::new(2, b).unwrap())).collect();
        let gs = copy_cayley_vertices(&ESpec::All, &c.alpha, &g2, &rat(1, 8), 100_000).unwrap();
        for (v, g) in g2.iter().zip(&gs) {
            assert!(c.alpha.scale(g).sup_dist(v) < rat(1, 16));
        }
        assert!(copy_cayley_vertices(&ESpec::Arith { a: 0, d: 8 }, &a, &vs, &rat(1, 8), 100).is_err());
    }
}
