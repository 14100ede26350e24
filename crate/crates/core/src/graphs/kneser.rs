use num_bigint::BigUint;

use super::{Graph, Label};
use crate::error::{Error, Result};
use crate::f2core::{binomial, BitVector, HammingBallSpec};
use crate::limits::Limits;

/// r-subsets of {1..n} in lexicographic order.
pub fn subsets(n: u32, r: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut cur: Vec<u32> = (1..=r).collect();
    loop {
        out.push(cur.clone());
        let mut i = r as usize;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - (r - 1 - i as u32) {
                break;
            }
        }
        cur[i] += 1;
        for j in i + 1..r as usize {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn disjoint(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => return false,
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
        }
    }
    true
}

fn kneser_unchecked(n: u32, r: u32, limits: &Limits) -> Result<Graph> {
    let count = binomial(n, r);
    if count > BigUint::from(limits.max_cells.min(20_000)) {
        return Err(Error::resource("kneser_graph", format!("C({n},{r}) = {count} vertices above cap")));
    }
    let vs = subsets(n, r);
    let mut edges = Vec::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if disjoint(&vs[i], &vs[j]) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(vs.len(), edges)?.with_labels(vs.into_iter().map(Label::Subset).collect())
}

/// KG(n, r): r-subsets of {1..n}, adjacent when disjoint.
pub fn kneser_graph(n: u32, r: u32, limits: &Limits) -> Result<Graph> {
    if r < 1 || r > n {
        return Err(Error::invalid(format!("need 1 <= r <= n, got n={n} r={r}")));
    }
    kneser_unchecked(n, r, limits)
}

#[derive(Clone, Debug)]
pub struct KneserEmbedding {
    pub r: u32,
    pub kneser: Graph,
    /// Image 1_C of each Kneser vertex, in vertex order.
    pub map: Vec<BitVector>,
    pub verified: bool,
}

/// Sends each r-subset C of {1..d}, r = ⌊d/2⌋ − k, to 1_C and checks every
/// Kneser edge lands in H_{2k+1}(1).
pub fn kneser_embedding_into_hamming_cayley(d: u32, k: u32, limits: &Limits) -> Result<KneserEmbedding> {
    if d == 0 || d > 64 || 2 * k > d {
        return Err(Error::invalid(format!("need 2k <= d <= 64, got d={d} k={k}")));
    }
    let r = d / 2 - k;
    let kneser = kneser_unchecked(d, r, limits)?;
    let map: Vec<BitVector> = kneser
        .labels()
        .expect("kneser graphs are labelled")
        .iter()
        .map(|l| match l {
            Label::Subset(c) => {
                let bits = c.iter().fold(0u64, |acc, &i| acc | 1 << (i - 1));
                BitVector::new(d, bits).expect("subset of 1..d")
            }
            _ => unreachable!(),
        })
        .collect();
    let target = HammingBallSpec::at_ones(d, (2 * k + 1).min(d))?;
    let verified = kneser.edges().iter().all(|&(u, v)| target.contains(&map[u].add(&map[v])));
    Ok(KneserEmbedding { r, kneser, map, verified })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_kneser() {
        let l = Limits::default();
        let p = kneser_graph(5, 2, &l).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (10, 15));
        let m = kneser_graph(4, 2, &l).unwrap();
        assert_eq!((m.vertex_count(), m.edge_count()), (6, 3));
        let e = kneser_graph(3, 2, &l).unwrap();
        assert_eq!((e.vertex_count(), e.edge_count()), (3, 0));
        assert!(kneser_graph(3, 0, &l).is_err());
        assert!(kneser_graph(3, 4, &l).is_err());
    }

    #[test]
    fn subset_order() {
        assert_eq!(subsets(4, 2), vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]);
        assert_eq!(subsets(3, 0), vec![Vec::<u32>::new()]);
        assert_eq!(subsets(7, 3).len(), 35);
    }

    #[test]
    fn embeddings() {
        let l = Limits::default();
        for (d, k) in [(4, 1), (5, 1), (6, 1), (7, 1), (6, 2), (5, 2), (2, 1)] {
            let e = kneser_embedding_into_hamming_cayley(d, k, &l).unwrap();
            assert!(e.verified, "d={d} k={k}");
        }
        let e = kneser_embedding_into_hamming_cayley(5, 1, &l).unwrap();
        assert_eq!((e.r, e.kneser.vertex_count(), e.kneser.edge_count()), (1, 5, 10));
        assert!(kneser_embedding_into_hamming_cayley(3, 2, &l).is_err());
    }
}
