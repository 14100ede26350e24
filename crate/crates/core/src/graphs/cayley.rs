use std::collections::HashSet;
use std::hash::Hash;

use super::{chromatic_number_exact, Budget, Graph, Label};
use crate::error::{Error, Result};
use crate::f2core::BitVector;

/// Cayley graph on an explicit list of group elements: x ~ y iff x − y or y − x lies in S.
pub fn cayley_graph<T, F>(elements: &[T], difference: F, zero: &T, s: &[T]) -> Result<Graph>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    if s.contains(zero) {
        return Err(Error::invalid("S contains the identity"));
    }
    let gens: HashSet<&T> = s.iter().collect();
    let mut edges = Vec::new();
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            if gens.contains(&difference(&elements[i], &elements[j]))
                || gens.contains(&difference(&elements[j], &elements[i]))
            {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(elements.len(), edges)
}

/// Cay(F₂^d, S) with vertices in numeric order.
pub fn cayley_f2(d: u32, s: &[BitVector]) -> Result<Graph> {
    if d > 16 {
        return Err(Error::resource("cayley_f2", format!("2^{d} vertices")));
    }
    let elems: Vec<BitVector> = (0..1u64 << d).map(|b| BitVector::new(d, b).unwrap()).collect();
    let g = cayley_graph(&elems, |a, b| a.add(b), &BitVector::zero(d), s)?;
    g.with_labels(elems.into_iter().map(Label::Bits).collect())
}

/// Cay(ℤ/nℤ, S).
pub fn cayley_cyclic(n: u64, s: &[u64]) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("modulus must be positive"));
    }
    let gens: Vec<u64> = s.iter().map(|x| x % n).collect();
    if gens.contains(&0) {
        return Err(Error::invalid("S contains the identity"));
    }
    let mut edges = Vec::new();
    for x in 0..n {
        for &g in &gens {
            edges.push((x as usize, ((x + g) % n) as usize));
        }
    }
    Graph::from_edges(n as usize, edges)?.with_labels((0..n as i64).map(Label::Int).collect())
}

/// The window [N] of Cay_ℤ(S): a ~ b iff |a − b| ∈ S.
pub fn cayley_graph_interval(s: &[u64], n: u64) -> Result<Graph> {
    if s.contains(&0) {
        return Err(Error::invalid("S contains 0"));
    }
    if let Some(&m) = s.iter().max() {
        if m >= n {
            return Err(Error::invalid(format!("max(S) = {m} not below N = {n}")));
        }
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for &g in s {
            if a + g < n {
                edges.push((a as usize, (a + g) as usize));
            }
        }
    }
    Graph::from_edges(n as usize, edges)?.with_labels((0..n as i64).map(Label::Int).collect())
}

/// Two-sided bounds on χ(Cay_ℤ(S)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZBounds {
    pub lower: usize,
    pub upper: usize,
    /// Proper coloring of ℤ/period, extended periodically.
    pub periodic: Vec<u32>,
    pub period: u64,
}

impl ZBounds {
    pub fn exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// Lower bound from the window [window] of Cay_ℤ(S); upper bound from a proper
/// coloring of Cay(ℤ/period, S), which lifts periodically to ℤ.
pub fn chromatic_bounds_z(s: &[u64], window: u64, period: u64, budget: &mut Budget) -> Result<ZBounds> {
    let lo = chromatic_number_exact(&cayley_graph_interval(s, window)?, budget);
    let hi = chromatic_number_exact(&cayley_cyclic(period, s)?, budget);
    Ok(ZBounds { lower: lo.lower, upper: hi.upper, periodic: hi.coloring, period })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2core::{enumerate_ball, HammingBallSpec};
    use crate::limits::Limits;

    #[test]
    fn f2_examples() {
        let g = cayley_f2(2, &[BitVector::parse("11").unwrap()]).unwrap();
        assert_eq!(g.edges(), vec![(0, 3), (1, 2)]);
        let s = enumerate_ball(&HammingBallSpec::at_ones(4, 3).unwrap(), &Limits::default()).unwrap();
        let k16 = cayley_f2(4, &s).unwrap();
        assert_eq!(k16.edge_count(), 16 * 15 / 2);
        assert!(cayley_f2(2, &[BitVector::zero(2)]).is_err());
    }

    #[test]
    fn cyclic_and_interval() {
        let c5 = cayley_cyclic(5, &[1]).unwrap();
        assert_eq!(c5.edge_count(), 5);
        assert!((0..5).all(|v| c5.degree(v) == 2));
        let p = cayley_graph_interval(&[1], 4).unwrap();
        assert_eq!(p.edges(), vec![(0, 1), (1, 2), (2, 3)]);
        let two = cayley_graph_interval(&[2], 6).unwrap();
        assert_eq!(two.edges(), vec![(0, 2), (1, 3), (2, 4), (3, 5)]);
        assert!(cayley_graph_interval(&[4], 4).is_err());
        let t = cayley_graph_interval(&[1, 2], 5).unwrap();
        let r = chromatic_number_exact(&t, &mut Budget::new(1000));
        assert_eq!((r.lower, r.upper), (3, 3));
        assert!(crate::graphs::is_proper_total(&t, &[0, 1, 2, 0, 1]));
    }

    #[test]
    fn z_bounds_meet() {
        let b = chromatic_bounds_z(&[1, 2], 12, 6, &mut Budget::new(100_000)).unwrap();
        assert!(b.exact());
        assert_eq!(b.upper, 3);
        let odd = chromatic_bounds_z(&[2, 3], 12, 5, &mut Budget::new(100_000)).unwrap();
        assert_eq!((odd.lower, odd.upper), (3, 3));
    }
}
