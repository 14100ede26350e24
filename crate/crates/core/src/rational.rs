//! Exact rationals and their text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Accepts `p/q`, integers and finite decimals such as `0.49`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::invalid(format!("not a rational: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = whole.starts_with('-');
        let w: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole.parse().map_err(|_| bad())?
        };
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let mut r = BigRational::new(w.abs() * &den + f, den);
        if neg {
            r = -r;
        }
        return Ok(r);
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Canonical `p/q` text (always with a denominator).
pub fn fmt_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn half() -> Rat {
    rat(1, 2)
}

/// Checks 0 < delta < 1/2.
pub fn check_delta(delta: &Rat) -> Result<()> {
    if !delta.is_positive() || delta >= &half() {
        return Err(Error::invalid(format!("delta must lie in (0, 1/2), got {}", fmt_rat(delta))));
    }
    Ok(())
}

/// Reduces into [0, 1).
pub fn frac(r: &Rat) -> Rat {
    r - r.floor()
}

/// Distance to the nearest integer.
pub fn norm(r: &Rat) -> Rat {
    let f = frac(r);
    let g = Rat::one() - &f;
    if f < g {
        f
    } else {
        g
    }
}

pub fn to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
