//! Arithmetic and enumeration in F₂^d.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rational::{check_delta, Rat};

/// Element of F₂^d, d ≤ 64; coordinate i is bit i.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BitVector {
    dim: u32,
    bits: u64,
}

fn mask(dim: u32) -> u64 {
    if dim == 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

impl BitVector {
    pub fn new(dim: u32, bits: u64) -> Result<Self> {
        if dim == 0 || dim > 64 {
            return Err(Error::invalid(format!("dimension {dim} outside 1..=64")));
        }
        if bits & !mask(dim) != 0 {
            return Err(Error::invalid(format!("bits {bits:#x} exceed dimension {dim}")));
        }
        Ok(BitVector { dim, bits })
    }

    pub fn zero(dim: u32) -> Self {
        BitVector { dim, bits: 0 }
    }

    pub fn ones(dim: u32) -> Self {
        BitVector { dim, bits: mask(dim) }
    }

    /// Parses a string of `0`/`1`; the first character is coordinate 0.
    pub fn parse(s: &str) -> Result<Self> {
        let dim = s.len() as u32;
        let mut bits = 0u64;
        for (i, c) in s.bytes().enumerate() {
            match c {
                b'0' => {}
                b'1' if i < 64 => bits |= 1 << i,
                _ => return Err(Error::invalid(format!("bad bit string {s:?}"))),
            }
        }
        BitVector::new(dim, bits)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn bit(&self, i: u32) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Group operation; subtraction coincides with it.
    pub fn add(&self, other: &BitVector) -> BitVector {
        debug_assert_eq!(self.dim, other.dim);
        BitVector { dim: self.dim, bits: self.bits ^ other.bits }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub fn hamming_weight(x: &BitVector) -> u32 {
    x.weight()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HammingBallSpec {
    pub dim: u32,
    pub radius: u32,
    pub center: BitVector,
}

impl HammingBallSpec {
    pub fn new(dim: u32, radius: u32, center: BitVector) -> Result<Self> {
        if center.dim() != dim {
            return Err(Error::invalid("center dimension differs from ball dimension"));
        }
        if radius > dim {
            return Err(Error::invalid(format!("radius {radius} exceeds dimension {dim}")));
        }
        Ok(HammingBallSpec { dim, radius, center })
    }

    pub fn at_zero(dim: u32, radius: u32) -> Result<Self> {
        HammingBallSpec::new(dim, radius.min(dim), BitVector::new(dim, 0)?)
    }

    pub fn at_ones(dim: u32, radius: u32) -> Result<Self> {
        HammingBallSpec::new(dim, radius.min(dim), BitVector::ones(dim))
    }

    pub fn contains(&self, x: &BitVector) -> bool {
        self.center.add(x).weight() <= self.radius
    }
}

pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Σ_{j ≤ radius} C(dim, j).
pub fn ball_size(dim: u32, radius: u32) -> BigUint {
    (0..=radius.min(dim)).map(|j| binomial(dim, j)).sum()
}

/// All words of the given weight in increasing order (Gosper's hack).
fn words_of_weight(dim: u32, w: u32, out: &mut Vec<u64>) {
    if w == 0 {
        out.push(0);
        return;
    }
    if w > dim {
        return;
    }
    let top = mask(dim);
    let mut x: u64 = mask(w);
    loop {
        out.push(x);
        let c = x & x.wrapping_neg();
        let r = x.wrapping_add(c);
        if r == 0 {
            break;
        }
        x = (((r ^ x) >> 2) / c) | r;
        if x > top || x == 0 {
            break;
        }
    }
}

fn check_materialize(dim: u32, size: &BigUint, limits: &Limits) -> Result<()> {
    if dim > limits.max_enum_dim {
        return Err(Error::resource(
            "enumeration",
            format!("dimension {dim} above cap {}", limits.max_enum_dim),
        ));
    }
    if size > &BigUint::from(limits.max_cells) {
        return Err(Error::resource("enumeration", format!("{size} elements above cap {}", limits.max_cells)));
    }
    Ok(())
}

/// Sorted elements of the ball.
pub fn enumerate_ball(spec: &HammingBallSpec, limits: &Limits) -> Result<Vec<BitVector>> {
    check_materialize(spec.dim, &ball_size(spec.dim, spec.radius), limits)?;
    let mut words = Vec::new();
    for w in 0..=spec.radius {
        words_of_weight(spec.dim, w, &mut words);
    }
    let mut out: Vec<BitVector> =
        words.into_iter().map(|b| BitVector { dim: spec.dim, bits: b ^ spec.center.bits }).collect();
    out.sort_unstable();
    Ok(out)
}

/// {a − b : a ∈ A, b ∈ B}.
pub fn ball_difference(a: &HammingBallSpec, b: &HammingBallSpec, limits: &Limits) -> Result<BTreeSet<BitVector>> {
    if a.dim != b.dim {
        return Err(Error::invalid(format!("dimension mismatch {} vs {}", a.dim, b.dim)));
    }
    let xs = enumerate_ball(a, limits)?;
    let ys = enumerate_ball(b, limits)?;
    let pairs = xs.len() as u128 * ys.len() as u128;
    if pairs > limits.max_cells as u128 * 16 {
        return Err(Error::resource("ball_difference", format!("{pairs} pairs")));
    }
    let mut out = BTreeSet::new();
    for x in &xs {
        for y in &ys {
            out.insert(x.add(y));
        }
    }
    Ok(out)
}

/// Why no witness exists at this dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum F2Failure {
    /// |A| ≤ δ·2^d.
    TooSparse { size: BigUint, threshold: Rat },
    /// 2(⌊d/2⌋ − k) + k ≥ d, so A − A meets H_k(1).
    NotDisjoint { inner: u32, k: u32, d: u32 },
}

/// A = H_{⌊d/2⌋−k}(0), provided |A| > δ·2^d and (A − A) ∩ H_k(1) = ∅.
pub fn f2_nonrecurrence_witness(
    d: u32,
    k: u32,
    delta: &Rat,
    limits: &Limits,
) -> Result<std::result::Result<Vec<BitVector>, F2Failure>> {
    check_delta(delta)?;
    if d == 0 || d > 64 {
        return Err(Error::invalid(format!("dimension {d} outside 1..=64")));
    }
    if k > d / 2 {
        return Err(Error::invalid(format!("k = {k} exceeds floor(d/2) = {}", d / 2)));
    }
    let inner = d / 2 - k;
    if 2 * inner + k >= d {
        return Ok(Err(F2Failure::NotDisjoint { inner, k, d }));
    }
    let size = ball_size(d, inner);
    let threshold = delta * Rat::from_integer(BigInt::one() << d);
    if Rat::from_integer(BigInt::from(size.clone())) <= threshold {
        return Ok(Err(F2Failure::TooSparse { size, threshold }));
    }
    Ok(Ok(enumerate_ball(&HammingBallSpec::at_zero(d, inner)?, limits)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn weights() {
        assert_eq!(hamming_weight(&BitVector::parse("0000").unwrap()), 0);
        assert_eq!(hamming_weight(&BitVector::parse("1111").unwrap()), 4);
        assert_eq!(hamming_weight(&BitVector::parse("1010010001").unwrap()), 4);
    }

    #[test]
    fn balls() {
        let one = HammingBallSpec::new(3, 0, BitVector::ones(3)).unwrap();
        assert_eq!(enumerate_ball(&one, &lim()).unwrap(), vec![BitVector::ones(3)]);
        assert_eq!(enumerate_ball(&HammingBallSpec::at_zero(3, 3).unwrap(), &lim()).unwrap().len(), 8);
        let b = enumerate_ball(&HammingBallSpec::at_zero(10, 4).unwrap(), &lim()).unwrap();
        // oracle: filter all 2^10 words by popcount
        let brute: Vec<u64> = (0u64..1024).filter(|x| x.count_ones() <= 4).collect();
        assert_eq!(b.iter().map(|v| v.bits()).collect::<Vec<_>>(), brute);
        assert_eq!(b.len(), 386);
    }

    #[test]
    fn full_width_words() {
        let mut w = Vec::new();
        words_of_weight(64, 63, &mut w);
        assert_eq!(w.len(), 64);
        w.clear();
        words_of_weight(64, 64, &mut w);
        assert_eq!(w, vec![u64::MAX]);
    }

    #[test]
    fn differences() {
        let h1 = HammingBallSpec::at_zero(5, 1).unwrap();
        let d = ball_difference(&h1, &h1, &lim()).unwrap();
        assert_eq!(d.len(), 16);
        let h2: BTreeSet<_> =
            enumerate_ball(&HammingBallSpec::at_zero(5, 2).unwrap(), &lim()).unwrap().into_iter().collect();
        assert_eq!(d, h2);
        let h0 = HammingBallSpec::at_zero(5, 0).unwrap();
        assert_eq!(ball_difference(&h0, &h0, &lim()).unwrap().len(), 1);
        let other = HammingBallSpec::at_zero(4, 0).unwrap();
        assert!(ball_difference(&h0, &other, &lim()).is_err());
        // H_2(0) ∩ H_1(1) in d = 4 is empty since 2 + 1 < 4
        let a = HammingBallSpec::at_zero(4, 2).unwrap();
        let b = HammingBallSpec::at_ones(4, 1).unwrap();
        let xs = enumerate_ball(&a, &lim()).unwrap();
        assert!(xs.iter().all(|x| !b.contains(x)));
    }

    #[test]
    fn witness_examples() {
        let a = f2_nonrecurrence_witness(10, 1, &rat(1, 3), &lim()).unwrap().unwrap();
        assert_eq!(a.len(), 386);
        match f2_nonrecurrence_witness(4, 1, &rat(45, 100), &lim()).unwrap() {
            Err(F2Failure::TooSparse { size, .. }) => assert_eq!(size, BigUint::from(5u32)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            f2_nonrecurrence_witness(2, 0, &rat(49, 100), &lim()).unwrap(),
            Err(F2Failure::NotDisjoint { .. })
        ));
        assert!(f2_nonrecurrence_witness(4, 3, &rat(1, 4), &lim()).is_err());
        assert!(f2_nonrecurrence_witness(4, 1, &rat(1, 2), &lim()).is_err());
    }

    #[test]
    fn enumeration_cap() {
        let spec = HammingBallSpec::at_zero(30, 2).unwrap();
        assert!(matches!(enumerate_ball(&spec, &lim()), Err(Error::Resource { .. })));
    }
}
