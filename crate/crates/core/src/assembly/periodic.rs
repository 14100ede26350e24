use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rat;

/// {n : (n − offset) mod period ∈ pattern}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicSet {
    pub period: u64,
    pub pattern: Vec<u64>,
    pub offset: i64,
}

impl PeriodicSet {
    pub fn new(period: u64, mut pattern: Vec<u64>, offset: i64) -> Result<Self> {
        if period == 0 {
            return Err(Error::invalid("period must be positive"));
        }
        if pattern.iter().any(|&r| r >= period) {
            return Err(Error::invalid("pattern entries must lie in [period]"));
        }
        pattern.sort_unstable();
        pattern.dedup();
        Ok(PeriodicSet { period, pattern, offset })
    }

    /// The residues below t mod 2t: density ½ and no difference equal to t.
    pub fn half_blocks(t: u64) -> Self {
        PeriodicSet { period: 2 * t, pattern: (0..t).collect(), offset: 0 }
    }

    pub fn density(&self) -> Rat {
        Rat::new((self.pattern.len() as u64).into(), self.period.into())
    }

    pub fn contains(&self, n: i64) -> bool {
        let r = (n as i128 - self.offset as i128).rem_euclid(self.period as i128) as u64;
        self.pattern.binary_search(&r).is_ok()
    }

    fn indicator(&self) -> Vec<bool> {
        let mut v = vec![false; self.period as usize];
        for &r in &self.pattern {
            v[r as usize] = true;
        }
        v
    }

    /// Elements of the window [t, t + len).
    pub fn window(&self, t: i64, len: u64) -> Vec<i64> {
        (0..len as i64).map(|i| t + i).filter(|&n| self.contains(n)).collect()
    }

    /// (A − A) ∩ S over one period; returns an offending (a, s) if any.
    pub fn difference_hit(&self, s: &[u64]) -> Option<(u64, u64)> {
        let ind = self.indicator();
        let p = self.period;
        for &x in &self.pattern {
            for &d in s {
                if ind[((x + d % p) % p) as usize] {
                    return Some((x, d));
                }
            }
        }
        None
    }
}

/// t in [offset, offset + period) maximizing |A ∩ ([m] + t)|, smallest on ties.
pub fn best_window(a: &PeriodicSet, m: u64) -> (i64, u64) {
    let p = a.period;
    if m == 0 || a.pattern.is_empty() {
        return (a.offset, 0);
    }
    let ind = a.indicator();
    let full = (m / p) * a.pattern.len() as u64;
    let rest = (m % p) as usize;
    // prefix sums over two periods
    let mut pre = vec![0u64; 2 * p as usize + 1];
    for i in 0..2 * p as usize {
        pre[i + 1] = pre[i] + ind[i % p as usize] as u64;
    }
    let mut best = (0usize, 0u64);
    for r in 0..p as usize {
        let c = pre[r + rest] - pre[r];
        if r == 0 || c > best.1 {
            best = (r, c);
        }
    }
    (a.offset + best.0 as i64, full + best.1)
}

/// Least m₀ with density·m − 2k > δ·m for all m > m₀, or None when density ≤ δ.
pub fn threshold_m0(density: &Rat, delta: &Rat, k: u64) -> Option<u64> {
    let gap = density - delta;
    if gap <= Rat::zero() {
        return None;
    }
    let bound = Rat::from_integer((2 * k).into()) / gap;
    bound.floor().to_integer().try_into().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn windows() {
        let evens = PeriodicSet::new(2, vec![0], 0).unwrap();
        assert_eq!(best_window(&evens, 5), (0, 3));
        let all = PeriodicSet::new(1, vec![0], 0).unwrap();
        assert_eq!(best_window(&all, 7).1, 7);
        let thirds = PeriodicSet::new(3, vec![0], 0).unwrap();
        assert_eq!(best_window(&thirds, 3).1, 1);
        let odd = PeriodicSet::new(7, vec![2, 3, 6], 0).unwrap();
        for m in 1..30 {
            let (t, c) = best_window(&odd, m);
            let brute = (0..7).map(|t| odd.window(t, m).len() as u64).max().unwrap();
            assert_eq!(c, brute);
            assert_eq!(odd.window(t, m).len() as u64, c);
        }
    }

    #[test]
    fn differences() {
        let evens = PeriodicSet::new(2, vec![0], 0).unwrap();
        assert_eq!(evens.difference_hit(&[1, 3]), None);
        assert!(evens.difference_hit(&[2]).is_some());
        assert_eq!(PeriodicSet::half_blocks(3).density(), rat(1, 2));
        assert_eq!(threshold_m0(&rat(1, 2), &rat(2, 5), 1), Some(20));
        assert_eq!(threshold_m0(&rat(1, 4), &rat(1, 4), 1), None);
    }
}
