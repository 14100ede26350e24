//! Orbit averages n ↦ 1_A(nα) for exact and fixed-point α.

use num_integer::Integer;

use super::alpha::alpha_parts;
use super::boxes::BoxSet;
use super::TorusPoint;
use crate::error::{Error, Result};
use crate::rational::Rat;

/// Fractional part of the golden ratio in 64-bit fixed point.
pub const GOLDEN_FRAC_64: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Debug)]
pub enum AlphaRep {
    Exact(TorusPoint),
    /// Coordinates x_i / 2^64; for illustration only.
    Fixed64(Vec<u64>),
}

/// |{1 ≤ n ≤ N : nα ∈ A}| / N.
pub fn empirical_box_density(alpha: &AlphaRep, a: &BoxSet, n: u64) -> Result<Rat> {
    if n == 0 {
        return Err(Error::invalid("need N >= 1"));
    }
    let hits = match alpha {
        AlphaRep::Exact(p) => {
            if p.dim() != a.dim {
                return Err(Error::invalid("dimension mismatch"));
            }
            let parts = alpha_parts(p)?;
            let unit = parts.iter().fold(a.unit, |u, &(_, q)| u.lcm(&(q as i64)));
            if unit >= 1 << 40 {
                return Err(Error::resource("empirical_box_density", "common denominator too large"));
            }
            let boxes = a.rescale(unit);
            let mut x: Vec<i64> = vec![0; parts.len()];
            let steps: Vec<i64> = parts.iter().map(|&(p, q)| p as i64 * (unit / q as i64)).collect();
            let mut hits = 0u64;
            for _ in 0..n {
                for (xi, s) in x.iter_mut().zip(&steps) {
                    *xi = (*xi + s) % unit;
                }
                if boxes.contains_units(&x) {
                    hits += 1;
                }
            }
            hits
        }
        AlphaRep::Fixed64(xs) => {
            if xs.len() != a.dim {
                return Err(Error::invalid("dimension mismatch"));
            }
            let scale = 1u128 << 64;
            let unit = a.unit as u128;
            let mut y = vec![0u64; xs.len()];
            let mut hits = 0u64;
            for _ in 0..n {
                for (yi, s) in y.iter_mut().zip(xs) {
                    *yi = yi.wrapping_add(*s);
                }
                let inside = a
                    .boxes
                    .iter()
                    .any(|b| b.iter().zip(&y).all(|(arc, &v)| arc.contains_scaled(v as u128 * unit, scale, a.unit)));
                if inside {
                    hits += 1;
                }
            }
            hits
        }
    };
    Ok(Rat::new(hits.into(), n.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn quarter() -> BoxSet {
        BoxSet::from_half_open(&[rat(0, 1)], &[rat(1, 4)]).unwrap()
    }

    #[test]
    fn negative_example() {
        let a = AlphaRep::Exact(TorusPoint::new(vec![rat(1, 2)]).unwrap());
        assert_eq!(empirical_box_density(&a, &quarter(), 100).unwrap(), rat(1, 2));
    }

    #[test]
    fn full_torus() {
        let a = AlphaRep::Exact(TorusPoint::new(vec![rat(3, 7), rat(1, 5)]).unwrap());
        assert_eq!(empirical_box_density(&a, &BoxSet::full(2), 37).unwrap(), rat(1, 1));
        let f = AlphaRep::Fixed64(vec![GOLDEN_FRAC_64]);
        assert_eq!(empirical_box_density(&f, &BoxSet::full(1), 1000).unwrap(), rat(1, 1));
    }

    #[test]
    fn golden_orbit() {
        let f = AlphaRep::Fixed64(vec![GOLDEN_FRAC_64]);
        let d = empirical_box_density(&f, &quarter(), 100_000).unwrap();
        assert!((crate::rational::to_f64(&d) - 0.25).abs() < 0.01);
    }

    #[test]
    fn rational_period_average() {
        // one full period of 3/7 visits each multiple of 1/7 once
        let a = AlphaRep::Exact(TorusPoint::new(vec![rat(3, 7)]).unwrap());
        assert_eq!(empirical_box_density(&a, &quarter(), 70).unwrap(), rat(2, 7));
    }
}
