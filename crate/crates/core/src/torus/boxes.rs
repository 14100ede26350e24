//! Finite unions of boxes in 𝕋^d with rational corners.
//!
//! Endpoints are stored as integers over a common denominator `unit`, so all
//! comparisons are exact and cheap.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::f2core::BitVector;
use crate::rational::Rat;

/// Arc of the circle ℝ/ℤ in units of 1/unit: from `lo` (in [0, unit)) of
/// length `len` (0 ≤ len ≤ unit); it wraps when lo + len > unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub lo: i64,
    pub len: i64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

/// Linear piece inside [0, unit].
#[derive(Clone, Copy, Debug)]
struct Seg {
    a: i64,
    b: i64,
    ac: bool,
    bc: bool,
}

impl Seg {
    fn is_empty(&self) -> bool {
        self.a > self.b || (self.a == self.b && !(self.ac && self.bc))
    }

    fn meet(&self, o: &Seg) -> Seg {
        let (a, ac) = match self.a.cmp(&o.a) {
            std::cmp::Ordering::Greater => (self.a, self.ac),
            std::cmp::Ordering::Less => (o.a, o.ac),
            std::cmp::Ordering::Equal => (self.a, self.ac && o.ac),
        };
        let (b, bc) = match self.b.cmp(&o.b) {
            std::cmp::Ordering::Less => (self.b, self.bc),
            std::cmp::Ordering::Greater => (o.b, o.bc),
            std::cmp::Ordering::Equal => (self.b, self.bc && o.bc),
        };
        Seg { a, b, ac, bc }
    }
}

impl Arc {
    pub fn full(unit: i64) -> Arc {
        Arc { lo: 0, len: unit, lo_closed: true, hi_closed: true }
    }

    pub fn closed(lo: i64, hi: i64, unit: i64) -> Arc {
        Arc { lo: lo.rem_euclid(unit), len: hi - lo, lo_closed: true, hi_closed: true }
    }

    pub fn open(lo: i64, hi: i64, unit: i64) -> Arc {
        Arc { lo: lo.rem_euclid(unit), len: hi - lo, lo_closed: false, hi_closed: false }
    }

    pub fn is_full(&self, unit: i64) -> bool {
        self.len >= unit
    }

    pub fn is_empty(&self) -> bool {
        self.len < 0 || (self.len == 0 && !(self.lo_closed && self.hi_closed))
    }

    pub fn shift(&self, by: i64, unit: i64) -> Arc {
        Arc { lo: (self.lo + by).rem_euclid(unit), ..*self }
    }

    fn segs(&self, unit: i64) -> Vec<Seg> {
        if self.is_empty() {
            return Vec::new();
        }
        if self.is_full(unit) {
            return vec![Seg { a: 0, b: unit, ac: true, bc: true }];
        }
        let hi = self.lo + self.len;
        if hi <= unit {
            vec![Seg { a: self.lo, b: hi, ac: self.lo_closed, bc: self.hi_closed }]
        } else {
            vec![
                Seg { a: self.lo, b: unit, ac: self.lo_closed, bc: true },
                Seg { a: 0, b: hi - unit, ac: true, bc: self.hi_closed },
            ]
        }
    }

    pub fn contains(&self, x: i64, unit: i64) -> bool {
        let x = x.rem_euclid(unit);
        self.segs(unit).iter().any(|s| {
            (s.a < x || (s.a == x && s.ac)) && (x < s.b || (x == s.b && s.bc))
                || (x == 0 && (s.b == unit && s.bc))
        })
    }

    /// Membership of the point num/(unit·scale), for 0 ≤ num < unit·scale.
    pub fn contains_scaled(&self, num: u128, scale: u128, unit: i64) -> bool {
        let top = unit as u128 * scale;
        self.segs(unit).iter().any(|s| {
            let (a, b) = (s.a as u128 * scale, s.b as u128 * scale);
            (a < num || (a == num && s.ac)) && (num < b || (num == b && s.bc)) || (num == 0 && b == top && s.bc)
        })
    }

    /// Pieces of the intersection, as arcs.
    pub fn meet(&self, o: &Arc, unit: i64) -> Vec<Arc> {
        if self.is_full(unit) {
            return if o.is_empty() { vec![] } else { vec![*o] };
        }
        if o.is_full(unit) {
            return if self.is_empty() { vec![] } else { vec![*self] };
        }
        let mut out = Vec::new();
        for s in self.segs(unit) {
            for t in o.segs(unit) {
                let m = s.meet(&t);
                if !m.is_empty() {
                    out.push(Arc { lo: m.a.rem_euclid(unit), len: m.b - m.a, lo_closed: m.ac, hi_closed: m.bc });
                }
            }
        }
        merge_wrap(out, unit)
    }

    /// Complement on the circle.
    pub fn complement(&self, unit: i64) -> Option<Arc> {
        if self.is_full(unit) {
            return None;
        }
        if self.is_empty() {
            return Some(Arc::full(unit));
        }
        Some(Arc {
            lo: (self.lo + self.len).rem_euclid(unit),
            len: unit - self.len,
            lo_closed: !self.hi_closed,
            hi_closed: !self.lo_closed,
        })
    }

    /// Infimum of circular distances between points of the two arcs.
    pub fn dist(&self, o: &Arc, unit: i64) -> i64 {
        let mut best = i64::MAX;
        for s in self.segs(unit) {
            for t in o.segs(unit) {
                for k in [-unit, 0, unit] {
                    let gap = (t.a + k - s.b).max(s.a - t.b - k).max(0);
                    best = best.min(gap);
                }
            }
        }
        best
    }
}

/// Rejoins the two halves of an arc split at 0.
fn merge_wrap(mut v: Vec<Arc>, unit: i64) -> Vec<Arc> {
    if v.len() < 2 {
        return v;
    }
    let tail = v.iter().position(|a| a.lo + a.len == unit && a.hi_closed);
    let head = v.iter().position(|a| a.lo == 0 && a.lo_closed);
    if let (Some(t), Some(h)) = (tail, head) {
        if t != h {
            let joined = Arc { lo: v[t].lo, len: v[t].len + v[h].len, lo_closed: v[t].lo_closed, hi_closed: v[h].hi_closed };
            let (i, j) = (t.max(h), t.min(h));
            v.remove(i);
            v.remove(j);
            v.push(joined);
        }
    }
    v
}

/// Product of arcs.
pub type TBox = Vec<Arc>;

/// Finite union of boxes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxSet {
    pub dim: usize,
    pub unit: i64,
    pub boxes: Vec<TBox>,
    pub disjoint: bool,
}

fn box_meet(a: &TBox, b: &TBox, unit: i64) -> Vec<TBox> {
    let mut out: Vec<TBox> = vec![Vec::with_capacity(a.len())];
    for (x, y) in a.iter().zip(b) {
        let m = x.meet(y, unit);
        if m.is_empty() {
            return Vec::new();
        }
        if m.len() == 1 {
            for bx in out.iter_mut() {
                bx.push(m[0]);
            }
        } else {
            let mut next = Vec::with_capacity(out.len() * m.len());
            for bx in &out {
                for piece in &m {
                    let mut nb = bx.clone();
                    nb.push(*piece);
                    next.push(nb);
                }
            }
            out = next;
        }
    }
    out
}

fn box_empty(b: &TBox) -> bool {
    b.iter().any(|a| a.is_empty())
}

/// b \ c as a list of boxes.
fn box_minus(b: &TBox, c: &TBox, unit: i64) -> Vec<TBox> {
    if box_meet(b, c, unit).is_empty() {
        return vec![b.clone()];
    }
    let mut out = Vec::new();
    let mut prefix: Vec<Vec<Arc>> = vec![Vec::new()];
    for i in 0..b.len() {
        if let Some(comp) = c[i].complement(unit) {
            for piece in b[i].meet(&comp, unit) {
                for p in &prefix {
                    let mut nb = p.clone();
                    nb.push(piece);
                    nb.extend_from_slice(&b[i + 1..]);
                    out.push(nb);
                }
            }
        }
        let inside = b[i].meet(&c[i], unit);
        let mut next = Vec::new();
        for p in &prefix {
            for piece in &inside {
                let mut np = p.clone();
                np.push(*piece);
                next.push(np);
            }
        }
        prefix = next;
        if prefix.is_empty() {
            break;
        }
    }
    out
}

fn box_within_union(b: &TBox, cover: &[TBox], unit: i64) -> bool {
    let mut rest = vec![b.clone()];
    for c in cover {
        let mut next = Vec::new();
        for r in &rest {
            next.extend(box_minus(r, c, unit));
        }
        rest = next;
        if rest.is_empty() {
            return true;
        }
    }
    rest.iter().all(box_empty)
}

fn box_within(b: &TBox, c: &TBox, unit: i64) -> bool {
    box_minus(b, c, unit).iter().all(box_empty)
}

/// Converts a rational to units of 1/unit, if exact.
pub fn to_units(r: &Rat, unit: i64) -> Option<i64> {
    let scaled = r * Rat::from_integer(BigInt::from(unit));
    scaled.is_integer().then(|| scaled.to_integer().to_i64()).flatten()
}

pub fn lcm_unit(rs: &[&Rat]) -> Result<i64> {
    let l = rs.iter().fold(BigInt::from(2), |acc, r| acc.lcm(r.denom()));
    l.to_i64().filter(|&u| u < 1 << 40).ok_or_else(|| Error::resource("torus", format!("denominator {l} too large")))
}

impl BoxSet {
    pub fn empty(dim: usize, unit: i64) -> Self {
        BoxSet { dim, unit, boxes: Vec::new(), disjoint: true }
    }

    pub fn rat(&self, x: i64) -> Rat {
        Rat::new(x.into(), self.unit.into())
    }

    /// Rescales to a multiple of the current unit.
    pub fn rescale(&self, unit: i64) -> BoxSet {
        assert!(unit % self.unit == 0);
        let f = unit / self.unit;
        BoxSet {
            dim: self.dim,
            unit,
            boxes: self
                .boxes
                .iter()
                .map(|b| b.iter().map(|a| Arc { lo: a.lo * f, len: a.len * f, ..*a }).collect())
                .collect(),
            disjoint: self.disjoint,
        }
    }

    /// Single box with closed rational sides [lo_i, hi_i].
    pub fn from_closed(lo: &[Rat], hi: &[Rat]) -> Result<BoxSet> {
        let all: Vec<&Rat> = lo.iter().chain(hi).collect();
        let unit = lcm_unit(&all)?;
        let b: TBox = lo
            .iter()
            .zip(hi)
            .map(|(l, h)| Arc::closed(to_units(l, unit).unwrap(), to_units(h, unit).unwrap(), unit))
            .collect();
        Ok(BoxSet { dim: lo.len(), unit, boxes: vec![b], disjoint: true })
    }

    /// Half-open single box [lo_i, hi_i).
    pub fn from_half_open(lo: &[Rat], hi: &[Rat]) -> Result<BoxSet> {
        let mut s = BoxSet::from_closed(lo, hi)?;
        for a in s.boxes[0].iter_mut() {
            a.hi_closed = false;
        }
        Ok(s)
    }

    pub fn full(dim: usize) -> BoxSet {
        BoxSet { dim, unit: 1, boxes: vec![vec![Arc::full(1); dim]], disjoint: true }
    }

    /// Point membership for a point given in units.
    pub fn contains_units(&self, x: &[i64]) -> bool {
        self.boxes.iter().any(|b| b.iter().zip(x).all(|(a, &v)| a.contains(v, self.unit)))
    }

    pub fn contains(&self, p: &super::TorusPoint) -> bool {
        let xs: Option<Vec<i64>> = p.coords().iter().map(|c| to_units(c, self.unit)).collect();
        match xs {
            Some(xs) => self.contains_units(&xs),
            None => {
                // refine the grid to the point's denominator
                let mut refs: Vec<&Rat> = p.coords().iter().collect();
                let u = Rat::new(1.into(), self.unit.into());
                refs.push(&u);
                match lcm_unit(&refs) {
                    Ok(unit) => self.rescale(unit).contains(p),
                    Err(_) => false,
                }
            }
        }
    }

    /// Pairwise disjointness by exact intersection.
    pub fn check_disjoint(&self) -> bool {
        for i in 0..self.boxes.len() {
            for j in i + 1..self.boxes.len() {
                if !box_meet(&self.boxes[i], &self.boxes[j], self.unit).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Σ Π lengths; requires the disjointness flag.
    pub fn measure(&self) -> Result<Rat> {
        if !self.disjoint {
            return Err(Error::invalid("measure requested for a box set not known to be disjoint"));
        }
        let mut total = Rat::zero();
        for b in &self.boxes {
            let mut p = Rat::from_integer(1.into());
            for a in b {
                p *= self.rat(a.len.max(0));
            }
            total += p;
        }
        Ok(total)
    }

    /// Translate by a point given in units.
    pub fn translate_units(&self, by: &[i64]) -> BoxSet {
        BoxSet {
            boxes: self.boxes.iter().map(|b| b.iter().zip(by).map(|(a, &s)| a.shift(s, self.unit)).collect()).collect(),
            ..self.clone()
        }
    }

    pub fn intersect(&self, o: &BoxSet) -> BoxSet {
        let (a, b) = common(self, o);
        let mut boxes = Vec::new();
        for x in &a.boxes {
            for y in &b.boxes {
                boxes.extend(box_meet(x, y, a.unit));
            }
        }
        BoxSet { dim: a.dim, unit: a.unit, boxes, disjoint: a.disjoint && b.disjoint }
    }

    /// Whether the two unions share a point, without building the pieces.
    pub fn meets(&self, o: &BoxSet) -> bool {
        let (a, b) = common(self, o);
        a.boxes.iter().any(|x| {
            b.boxes.iter().any(|y| x.iter().zip(y).all(|(p, q)| !p.meet(q, a.unit).is_empty()))
        })
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.iter().all(box_empty)
    }

    /// Exact equality of the underlying point sets.
    pub fn same_set(&self, o: &BoxSet) -> bool {
        let (a, b) = common(self, o);
        let u = a.unit;
        let quick = a.boxes.iter().all(|x| box_empty(x) || b.boxes.iter().any(|y| box_within(x, y, u)))
            && b.boxes.iter().all(|y| box_empty(y) || a.boxes.iter().any(|x| box_within(y, x, u)));
        quick
            || (a.boxes.iter().all(|x| box_within_union(x, &b.boxes, u))
                && b.boxes.iter().all(|y| box_within_union(y, &a.boxes, u)))
    }

    /// Sup-metric distance between the two unions (0 if they meet or touch).
    pub fn separation(&self, o: &BoxSet) -> Rat {
        let (a, b) = common(self, o);
        let mut best: Option<i64> = None;
        for x in &a.boxes {
            if box_empty(x) {
                continue;
            }
            for y in &b.boxes {
                if box_empty(y) {
                    continue;
                }
                let d = x.iter().zip(y).map(|(p, q)| p.dist(q, a.unit)).max().unwrap_or(0);
                best = Some(best.map_or(d, |v: i64| v.min(d)));
            }
        }
        match best {
            Some(d) => a.rat(d),
            None => Rat::from_integer(1.into()),
        }
    }

    /// Union with the boxes of another set; disjointness is re-derived.
    pub fn union(&self, o: &BoxSet) -> BoxSet {
        let (a, b) = common(self, o);
        let mut s = BoxSet { boxes: a.boxes.iter().chain(&b.boxes).cloned().collect(), disjoint: false, ..a };
        s.disjoint = s.check_disjoint();
        s
    }
}

fn common(a: &BoxSet, b: &BoxSet) -> (BoxSet, BoxSet) {
    if a.unit == b.unit {
        return (a.clone(), b.clone());
    }
    let u = a.unit.lcm(&b.unit);
    (a.rescale(u), b.rescale(u))
}

/// I_ε = [ε, 1/2 − ε].
pub fn i_eps(eps: &Rat) -> Result<(Rat, Rat)> {
    let h = Rat::new(1.into(), 2.into());
    if eps <= &Rat::zero() || eps >= &Rat::new(1.into(), 4.into()) {
        return Err(Error::invalid("need 0 < eps < 1/4"));
    }
    Ok((eps.clone(), h - eps))
}

/// A□_ε = A + I_ε^d for A ⊆ G_d.
pub fn box_tiling(a: &[BitVector], dim: u32, eps: &Rat) -> Result<BoxSet> {
    i_eps(eps)?;
    let unit = lcm_unit(&[eps])?;
    let e = to_units(eps, unit).unwrap();
    let half = unit / 2;
    let boxes = a
        .iter()
        .map(|x| {
            if x.dim() != dim {
                return Err(Error::invalid("point dimension differs"));
            }
            Ok((0..dim).map(|i| {
                let base = if x.bit(i) { half } else { 0 };
                Arc::closed(base + e, base + half - e, unit)
            })
            .collect())
        })
        .collect::<Result<Vec<TBox>>>()?;
    Ok(BoxSet { dim: dim as usize, unit, boxes, disjoint: true })
}

/// Translation of a box set by a point of G_d.
pub fn translate_bits(b: &BoxSet, t: &BitVector) -> BoxSet {
    let half = b.unit / 2;
    let by: Vec<i64> = (0..b.dim as u32).map(|i| if t.bit(i) { half } else { 0 }).collect();
    b.translate_units(&by)
}

/// V_ε: open sup-box of radius ε around 0 (wraps).
pub fn v_eps(dim: usize, eps: &Rat) -> Result<BoxSet> {
    let unit = lcm_unit(&[eps])?;
    let e = to_units(eps, unit).unwrap();
    if e <= 0 {
        return Err(Error::invalid("need eps > 0"));
    }
    let a = if 2 * e >= unit { Arc::full(unit) } else { Arc::open(-e, e, unit) };
    Ok(BoxSet { dim, unit, boxes: vec![vec![a; dim]], disjoint: true })
}

/// Checks A□_ε ∩ (A□_ε + t) = (A ∩ (A + t))□_ε by exact box arithmetic.
pub fn box_intersection_lemma_check(a: &[BitVector], t: &BitVector, eps: &Rat) -> Result<bool> {
    let dim = t.dim();
    if a.iter().any(|x| x.dim() != dim) {
        return Err(Error::invalid("point dimension differs"));
    }
    if let (Some(p), Some(q)) = (eps.numer().to_i64(), eps.denom().to_i64()) {
        if q < 1 << 30 {
            if p <= 0 || 4 * p >= q {
                return Err(Error::invalid("need 0 < eps < 1/4"));
            }
            let mut buf = [0u64; 16];
            let owned: Vec<u64>;
            let bits: &[u64] = if a.len() <= buf.len() {
                for (slot, x) in buf.iter_mut().zip(a) {
                    *slot = x.bits();
                }
                &buf[..a.len()]
            } else {
                owned = a.iter().map(|x| x.bits()).collect();
                &owned
            };
            if lemma_by_containment(bits, t.bits(), dim, p, q) {
                return Ok(true);
            }
        }
    }
    i_eps(eps)?;
    lemma_by_boxes(a, t, eps)
}

/// Closed interval of coordinate i of the box around x, units of 1/(2q).
#[inline]
fn side(x: u64, i: u32, p: i64, q: i64) -> (i64, i64) {
    let base = if x >> i & 1 == 1 { q } else { 0 };
    (base + 2 * p, base + q - 2 * p)
}

/// Sufficient test for equality: every nonempty piece of the left side lies
/// in a box of the right side and every box of the right side lies in one
/// piece of the left side. All pieces here are single closed boxes.
fn lemma_by_containment(a: &[u64], t: u64, dim: u32, p: i64, q: i64) -> bool {
    let full = 2 * q;
    // piece of box(x) ∩ (box(y) + t) in coordinate i, or None when empty
    let piece = |x: u64, y: u64, i: u32| -> Option<Option<(i64, i64)>> {
        let (xl, xh) = side(x, i, p, q);
        let (yl, yh) = side(y, i, p, q);
        let shift = if t >> i & 1 == 1 { q } else { 0 };
        let yl2 = (yl + shift) % full;
        let yh2 = yl2 + (yh - yl);
        if yh2 > full {
            return None;
        }
        let (lo, hi) = (xl.max(yl2), xh.min(yh2));
        Some((lo <= hi).then_some((lo, hi)))
    };
    let mut rhs_buf = [0u64; 16];
    let mut rhs_len = 0;
    let rhs_vec: Vec<u64>;
    let rhs: &[u64] = if a.len() <= rhs_buf.len() {
        for &z in a {
            if a.contains(&(z ^ t)) {
                rhs_buf[rhs_len] = z;
                rhs_len += 1;
            }
        }
        &rhs_buf[..rhs_len]
    } else {
        rhs_vec = a.iter().copied().filter(|&z| a.contains(&(z ^ t))).collect();
        &rhs_vec
    };
    for &x in a {
        for &y in a {
            let mut cells = [(0i64, 0i64); 64];
            let mut empty = false;
            for i in 0..dim {
                match piece(x, y, i) {
                    None => return false,
                    Some(None) => {
                        empty = true;
                        break;
                    }
                    Some(Some(c)) => cells[i as usize] = c,
                }
            }
            if empty {
                continue;
            }
            let inside = rhs.iter().any(|&z| {
                (0..dim).all(|i| {
                    let (zl, zh) = side(z, i, p, q);
                    let (l, h) = cells[i as usize];
                    zl <= l && h <= zh
                })
            });
            if !inside {
                return false;
            }
        }
    }
    rhs.iter().all(|&z| {
        a.iter().any(|&x| {
            a.iter().any(|&y| {
                (0..dim).all(|i| match piece(x, y, i) {
                    Some(Some((l, h))) => {
                        let (zl, zh) = side(z, i, p, q);
                        l <= zl && zh <= h
                    }
                    _ => false,
                })
            })
        })
    })
}

fn lemma_by_boxes(a: &[BitVector], t: &BitVector, eps: &Rat) -> Result<bool> {
    let dim = t.dim();
    let lhs_base = box_tiling(a, dim, eps)?;
    let lhs = lhs_base.intersect(&translate_bits(&lhs_base, t));
    let inter: Vec<BitVector> = a.iter().filter(|x| a.contains(&x.add(t))).copied().collect();
    let rhs = box_tiling(&inter, dim, eps)?;
    Ok(lhs.same_set(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn bv(s: &str) -> BitVector {
        BitVector::parse(s).unwrap()
    }

    #[test]
    fn arc_basics() {
        let u = 16;
        let a = Arc::open(-2, 2, u);
        assert!(a.contains(0, u) && a.contains(15, u) && !a.contains(2, u) && !a.contains(14, u));
        let b = Arc::closed(1, 5, u);
        let m = a.meet(&b, u);
        assert_eq!(m, vec![Arc { lo: 1, len: 1, lo_closed: true, hi_closed: false }]);
        assert_eq!(Arc::closed(2, 6, u).dist(&Arc::closed(10, 14, u), u), 4);
        assert_eq!(Arc::closed(1, 3, u).dist(&Arc::closed(13, 15, u), u), 2);
        let c = Arc::closed(4, 8, u).complement(u).unwrap();
        assert!(!c.contains(4, u) && c.contains(9, u) && c.contains(3, u));
    }

    #[test]
    fn lemma_examples() {
        let e = rat(1, 8);
        assert!(box_intersection_lemma_check(&[bv("0")], &bv("0"), &rat(1, 10)).unwrap());
        assert!(box_intersection_lemma_check(&[bv("00"), bv("11")], &bv("11"), &e).unwrap());
        assert!(box_intersection_lemma_check(&[bv("00")], &bv("01"), &e).unwrap());
        let b = box_tiling(&[bv("00")], 2, &e).unwrap();
        assert!(b.intersect(&translate_bits(&b, &bv("01"))).is_empty());
        assert_eq!(b.separation(&translate_bits(&b, &bv("01"))), rat(1, 4));
        assert!(box_intersection_lemma_check(&[bv("0")], &bv("0"), &rat(1, 4)).is_err());
    }

    #[test]
    fn both_paths_agree() {
        for d in 1..=3u32 {
            let n = 1u64 << d;
            for mask in 0u64..1 << n {
                if mask.count_ones() > 3 {
                    continue;
                }
                let a: Vec<BitVector> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| BitVector::new(d, i).unwrap()).collect();
                let bits: Vec<u64> = a.iter().map(|x| x.bits()).collect();
                for t in 0..n {
                    let tv = BitVector::new(d, t).unwrap();
                    assert!(lemma_by_containment(&bits, t, d, 1, 8));
                    assert!(lemma_by_boxes(&a, &tv, &rat(1, 8)).unwrap());
                }
            }
        }
    }

    #[test]
    fn measure_formula() {
        let a = [bv("000"), bv("011"), bv("101")];
        let b = box_tiling(&a, 3, &rat(1, 16)).unwrap();
        assert!(b.check_disjoint());
        let w = rat(1, 2) - rat(2, 16);
        assert_eq!(b.measure().unwrap(), rat(3, 1) * &w * &w * &w);
    }

    #[test]
    fn set_equality_needs_union() {
        // [0,1/2] ∪ [1/2,1) equals the full circle though neither piece covers it
        let u = 4;
        let left = BoxSet { dim: 1, unit: u, boxes: vec![vec![Arc::closed(0, 2, u)], vec![Arc::closed(2, 4, u)]], disjoint: false };
        let full = BoxSet { dim: 1, unit: u, boxes: vec![vec![Arc::full(u)]], disjoint: true };
        assert!(left.same_set(&full));
        let gap = BoxSet { dim: 1, unit: u, boxes: vec![vec![Arc::open(0, 2, u)], vec![Arc::open(2, 4, u)]], disjoint: true };
        assert!(!gap.same_set(&full));
    }
}
