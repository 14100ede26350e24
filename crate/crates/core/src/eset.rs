//! Infinite integer sets given as increasing streams, with residue scans and
//! membership oracles for E and E − E.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ESpec {
    /// 0, 1, 2, ...
    All,
    /// a, a + d, a + 2d, ...
    Arith { a: i64, d: i64 },
    /// 1, b, b², ...
    Powers { b: u64 },
    /// Increasing list read from a file; the visible prefix of a stream.
    List(Vec<BigInt>),
}

impl ESpec {
    /// `all | arith:a,d | powers:b | file:<path>`
    pub fn parse(s: &str) -> Result<ESpec> {
        let s = s.trim();
        if s == "all" {
            return Ok(ESpec::All);
        }
        if let Some(rest) = s.strip_prefix("arith:") {
            let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
            if parts.len() != 2 {
                return Err(Error::invalid(format!("bad arith spec {s:?}")));
            }
            let a = parts[0].parse().map_err(|_| Error::invalid(format!("bad integer {:?}", parts[0])))?;
            let d: i64 = parts[1].parse().map_err(|_| Error::invalid(format!("bad integer {:?}", parts[1])))?;
            if d <= 0 {
                return Err(Error::invalid("arith step must be positive (d = 0 gives a finite set)"));
            }
            return Ok(ESpec::Arith { a, d });
        }
        if let Some(rest) = s.strip_prefix("powers:") {
            let b: u64 = rest.trim().parse().map_err(|_| Error::invalid(format!("bad base {rest:?}")))?;
            if b < 2 {
                return Err(Error::invalid("powers base must be at least 2"));
            }
            return Ok(ESpec::Powers { b });
        }
        if let Some(path) = s.strip_prefix("file:") {
            let text = std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("cannot read {path}: {e}")))?;
            return ESpec::from_list_text(&text);
        }
        Err(Error::invalid(format!("unknown set spec {s:?}")))
    }

    pub fn from_list_text(text: &str) -> Result<ESpec> {
        let mut v = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            v.push(line.parse::<BigInt>().map_err(|_| Error::invalid(format!("bad integer {line:?}")))?);
        }
        v.sort();
        v.dedup();
        if v.len() < 2 {
            return Err(Error::invalid("set file lists fewer than two distinct integers; E must be infinite"));
        }
        Ok(ESpec::List(v))
    }

    /// Number of elements available, `None` when unbounded.
    pub fn available(&self) -> Option<u64> {
        match self {
            ESpec::List(v) => Some(v.len() as u64),
            _ => None,
        }
    }

    pub fn nth(&self, i: u64) -> Option<BigInt> {
        match self {
            ESpec::All => Some(BigInt::from(i)),
            ESpec::Arith { a, d } => Some(BigInt::from(*a) + BigInt::from(*d) * BigInt::from(i)),
            ESpec::Powers { b } => Some(num_traits::pow(BigInt::from(*b), i as usize)),
            ESpec::List(v) => v.get(i as usize).cloned(),
        }
    }

    /// Residues mod `q` of the first `count` elements (fewer for a list).
    pub fn residues(&self, q: u64, count: u64) -> Vec<u64> {
        let q128 = q as i128;
        let n = self.available().map_or(count, |a| a.min(count));
        let mut out = Vec::with_capacity(n as usize);
        match self {
            ESpec::All => out.extend((0..n).map(|i| i % q)),
            ESpec::Arith { a, d } => {
                let mut x = (*a as i128).rem_euclid(q128);
                let step = (*d as i128).rem_euclid(q128);
                for _ in 0..n {
                    out.push(x as u64);
                    x = (x + step) % q128;
                }
            }
            ESpec::Powers { b } => {
                let mut x = 1 % q128;
                let b = (*b as i128) % q128;
                for _ in 0..n {
                    out.push(x as u64);
                    x = x * b % q128;
                }
            }
            ESpec::List(v) => {
                let qb = BigInt::from(q);
                out.extend(v.iter().take(n as usize).map(|x| x.mod_floor(&qb).to_u64().unwrap()));
            }
        }
        out
    }

    /// Elements not exceeding `limit`, at most `max_count` of them.
    pub fn prefix_upto(&self, limit: i128, max_count: u64) -> Vec<i128> {
        let mut out = Vec::new();
        match self {
            ESpec::All | ESpec::Arith { .. } => {
                let (a, d) = match self {
                    ESpec::Arith { a, d } => (*a as i128, *d as i128),
                    _ => (0, 1),
                };
                let mut x = a;
                while (out.len() as u64) < max_count && x <= limit {
                    out.push(x);
                    x += d;
                }
            }
            ESpec::Powers { b } => {
                let mut x: i128 = 1;
                while (out.len() as u64) < max_count && x <= limit {
                    out.push(x);
                    match x.checked_mul(*b as i128) {
                        Some(y) => x = y,
                        None => break,
                    }
                }
            }
            ESpec::List(v) => {
                for x in v.iter().take(max_count as usize) {
                    match x.to_i128() {
                        Some(y) if y <= limit => out.push(y),
                        _ => break,
                    }
                }
            }
        }
        out
    }

    pub fn contains(&self, x: &BigInt) -> bool {
        match self {
            ESpec::All => !x.is_negative(),
            ESpec::Arith { a, d } => {
                let off = x - BigInt::from(*a);
                !off.is_negative() && off.is_multiple_of(&BigInt::from(*d))
            }
            ESpec::Powers { b } => {
                let b = BigInt::from(*b);
                let mut y = x.clone();
                if !y.is_positive() {
                    return false;
                }
                while y.is_multiple_of(&b) {
                    y /= &b;
                }
                y.is_one()
            }
            ESpec::List(v) => v.binary_search(x).is_ok(),
        }
    }

    /// Is x = e₁ − e₂ for some e₁, e₂ ∈ E?
    pub fn in_difference_set(&self, x: &BigInt) -> bool {
        if x.is_zero() {
            return true;
        }
        let x = x.abs();
        match self {
            ESpec::All => true,
            ESpec::Arith { d, .. } => x.is_multiple_of(&BigInt::from(*d)),
            ESpec::Powers { b } => {
                // b^j (b^i − 1) with i ≥ 1; b ∤ b^i − 1 fixes j
                let b = BigInt::from(*b);
                let mut y = x;
                while y.is_multiple_of(&b) {
                    y /= &b;
                }
                let mut z = y + 1u32;
                let mut e = 0u32;
                while z.is_multiple_of(&b) {
                    z /= &b;
                    e += 1;
                }
                z.is_one() && e >= 1
            }
            ESpec::List(v) => {
                let set: HashSet<&BigInt> = v.iter().collect();
                v.iter().any(|e| set.contains(&(e + &x)))
            }
        }
    }
}

impl fmt::Display for ESpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ESpec::All => write!(f, "all"),
            ESpec::Arith { a, d } => write!(f, "arith:{a},{d}"),
            ESpec::Powers { b } => write!(f, "powers:{b}"),
            ESpec::List(v) => write!(f, "list:{}", v.len()),
        }
    }
}

/// Smallest positive element of E − E among the first `count` elements.
pub fn min_positive_difference(e: &ESpec, count: u64) -> Option<BigInt> {
    match e {
        ESpec::All => Some(BigInt::one()),
        ESpec::Arith { d, .. } => Some(BigInt::from(*d)),
        ESpec::Powers { b } => Some(BigInt::from(*b - 1)),
        ESpec::List(v) => v.iter().take(count as usize).collect::<Vec<_>>().windows(2).map(|w| w[1] - w[0]).min(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn parsing() {
        assert_eq!(ESpec::parse("all").unwrap(), ESpec::All);
        assert_eq!(ESpec::parse("arith:1,2").unwrap(), ESpec::Arith { a: 1, d: 2 });
        assert_eq!(ESpec::parse("powers:2").unwrap(), ESpec::Powers { b: 2 });
        assert!(ESpec::parse("arith:1,0").is_err());
        assert!(ESpec::parse("powers:1").is_err());
        assert!(ESpec::parse("primes").is_err());
        assert!(ESpec::from_list_text("5\n").is_err());
        assert_eq!(ESpec::from_list_text("9\n1\n4\n").unwrap(), ESpec::List(vec![bi(1), bi(4), bi(9)]));
    }

    #[test]
    fn residues_match_elements() {
        for e in [ESpec::All, ESpec::Arith { a: -3, d: 7 }, ESpec::Powers { b: 3 }, ESpec::List(vec![bi(2), bi(10), bi(11)])] {
            let r = e.residues(12, 20);
            for (i, &x) in r.iter().enumerate() {
                assert_eq!(BigInt::from(x), e.nth(i as u64).unwrap().mod_floor(&bi(12)), "{e}");
            }
        }
    }

    #[test]
    fn difference_oracle_powers() {
        let e = ESpec::Powers { b: 2 };
        let mut brute = HashSet::new();
        for i in 0..12 {
            for j in 0..12 {
                brute.insert((1i64 << i) - (1i64 << j));
            }
        }
        for x in -600..600 {
            assert_eq!(e.in_difference_set(&bi(x)), brute.contains(&x), "x={x}");
        }
        assert!(e.contains(&bi(64)) && !e.contains(&bi(48)) && !e.contains(&bi(0)));
        assert_eq!(min_positive_difference(&e, 10), Some(bi(1)));
    }
}
