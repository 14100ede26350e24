//! Independent checkers. Nothing here calls into the constructors.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::eset::ESpec;
use crate::graphs::{brute_force_colorable, Graph};
use crate::rational::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

fn check(name: &str, ok: bool, detail: impl Into<String>) -> Check {
    Check { name: name.to_string(), ok, detail: detail.into() }
}

/// The four witness conditions plus B ⊆ [m], by direct scans.
pub fn check_witness(b: &[u64], m: u64, s: &[u64], delta: &Rat) -> Vec<Check> {
    let mut out = Vec::new();
    let inside = b.iter().all(|&x| x < m);
    out.push(check("B⊆[m]", inside, format!("m={m}")));
    let distinct = {
        let set: HashSet<u64> = b.iter().copied().collect();
        set.len() == b.len()
    };
    out.push(check("B-distinct", distinct, ""));
    let dense = Rat::from_integer(b.len().into()) > delta * Rat::from_integer(m.into());
    out.push(check("|B|>δm", dense, format!("|B|={} m={m} δ={delta}", b.len())));
    out.push(check("S>0", s.iter().all(|&x| x > 0), ""));
    if !inside || m > 1 << 34 {
        out.push(check("B∩(B+S)=∅", false, "skipped"));
        return out;
    }
    let mut mark = vec![false; m as usize];
    for &x in b {
        mark[x as usize] = true;
    }
    let mut clash = None;
    'outer: for &x in b {
        for &d in s {
            let y = x as u128 + d as u128;
            if y < m as u128 && mark[y as usize] {
                clash = Some((x, d));
                break 'outer;
            }
        }
    }
    out.push(check(
        "B∩(B+S)=∅",
        clash.is_none(),
        clash.map_or(String::new(), |(x, d)| format!("{x}+{d}")),
    ));
    let over1 = b.iter().any(|&x| s.iter().any(|&d| x as u128 + d as u128 >= m as u128));
    out.push(check("B+S⊆[m]", !over1, ""));
    let over2 = b.iter().any(|&x| s.iter().any(|&d| s.iter().any(|&e| x as u128 + d as u128 + e as u128 >= m as u128)));
    out.push(check("B+S+S⊆[m]", !over2, ""));
    out
}

/// Is the graph not 2-colorable?
pub fn has_odd_cycle(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                let v = v as usize;
                if side[v] == u8::MAX {
                    side[v] = side[u] ^ 1;
                    stack.push(v);
                } else if side[v] == side[u] {
                    return true;
                }
            }
        }
    }
    false
}

/// Subgraph of Cay(S) with a lower bound on its chromatic number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvidenceView<'a> {
    pub chi_lower: usize,
    pub vertices: &'a [BigInt],
    pub edges: &'a [(usize, usize)],
    /// r-subsets of {1..n} when the subgraph is claimed to be KG(n, r).
    pub kneser: Option<(u32, u32, &'a [Vec<u32>])>,
}

/// Embedding into Cay(S) and the chromatic lower bound of the subgraph.
pub fn check_evidence(ev: &EvidenceView, s: &[u64]) -> Vec<Check> {
    let mut out = Vec::new();
    let n = ev.vertices.len();
    let injective = ev.vertices.iter().collect::<HashSet<_>>().len() == n;
    out.push(check("embedding-injective", injective, ""));
    let sset: HashSet<u64> = s.iter().copied().collect();
    let mut bad = None;
    for &(u, v) in ev.edges {
        if u >= n || v >= n || u == v {
            bad = Some(format!("edge ({u},{v}) out of range"));
            break;
        }
        let d = (&ev.vertices[u] - &ev.vertices[v]).abs();
        if d.is_zero() || !d.to_u64().is_some_and(|x| sset.contains(&x)) {
            bad = Some(format!("difference {d} not in S"));
            break;
        }
    }
    out.push(check("edges⊆Cay(S)", bad.is_none(), bad.unwrap_or_default()));
    let graph = Graph::from_edges(n, ev.edges.iter().copied().filter(|&(u, v)| u < n && v < n && u != v));
    let (ok, detail) = match graph {
        Err(e) => (false, e.to_string()),
        Ok(g) => chi_at_least(&g, ev),
    };
    out.push(check("χ-lower-bound", ok, detail));
    out
}

fn chi_at_least(g: &Graph, ev: &EvidenceView) -> (bool, String) {
    let c = ev.chi_lower;
    match c {
        0 => (true, "trivial".into()),
        1 => (g.vertex_count() >= 1, "nonempty".into()),
        2 => (g.edge_count() >= 1, "edge".into()),
        3 if has_odd_cycle(g) => (true, "odd cycle".into()),
        _ if g.vertex_count() <= 20 => (!brute_force_colorable(g, c - 1), format!("exhaustive {}-coloring search", c - 1)),
        _ => match ev.kneser {
            Some((kn, r, labels)) => {
                let ok = is_kneser(g, kn, r, labels) && 2 * r <= kn && c <= (kn - 2 * r + 2) as usize;
                (ok, format!("KG({kn},{r}) structure; chromatic number by Lovász's theorem"))
            }
            None => (false, "no certificate applies".into()),
        },
    }
}

fn is_kneser(g: &Graph, n: u32, r: u32, labels: &[Vec<u32>]) -> bool {
    if labels.len() != g.vertex_count() {
        return false;
    }
    let mut seen = HashSet::new();
    for l in labels {
        let mut sorted = l.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != r as usize || sorted.iter().any(|&x| x == 0 || x > n) || !seen.insert(sorted) {
            return false;
        }
    }
    let expected = (1..=r).fold(1u128, |acc, i| acc * (n - r + i) as u128 / i as u128);
    if labels.len() as u128 != expected {
        return false;
    }
    for u in 0..labels.len() {
        for v in u + 1..labels.len() {
            let disjoint = labels[u].iter().all(|x| !labels[v].contains(x));
            if disjoint != g.has_edge(u, v) {
                return false;
            }
        }
    }
    true
}

/// Every element of S is a difference of two elements of E.
pub fn check_in_difference_set(s: &[u64], e: &ESpec) -> Check {
    let bad: Vec<u64> = s.iter().copied().filter(|&x| !e.in_difference_set(&BigInt::from(x))).collect();
    check("S⊆E−E", bad.is_empty(), bad.first().map_or(String::new(), |x| format!("{x}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn witness_checks() {
        let all_ok = |c: &[Check]| c.iter().all(|c| c.ok);
        assert!(all_ok(&check_witness(&[0, 2, 4], 8, &[1], &rat(1, 4))));
        assert!(!all_ok(&check_witness(&[0, 1], 8, &[1], &rat(1, 8))));
        assert!(!all_ok(&check_witness(&[0, 2, 6], 8, &[1], &rat(1, 4))));
        assert!(!all_ok(&check_witness(&[0, 2], 8, &[1], &rat(1, 4))));
    }

    #[test]
    fn evidence_checks() {
        let v: Vec<BigInt> = [0, 4, 8, 12, 16, 11, 6, 1, -4].iter().map(|&x| BigInt::from(x)).collect();
        let edges: Vec<(usize, usize)> = (0..9).map(|i| (i, (i + 1) % 9)).collect();
        // 16 → 11 → 6 → 1 are steps of 5; 1 → −4 and −4 → 0 steps of 5 and 4
        let ev = EvidenceView { chi_lower: 3, vertices: &v, edges: &edges, kneser: None };
        assert!(check_evidence(&ev, &[4, 5]).iter().all(|c| c.ok));
        assert!(!check_evidence(&ev, &[4]).iter().all(|c| c.ok));
        let even_edges: Vec<(usize, usize)> = (0..8).map(|i| (i, i + 1)).collect();
        let ev2 = EvidenceView { chi_lower: 3, vertices: &v, edges: &even_edges, kneser: None };
        assert!(!check_evidence(&ev2, &[4, 5]).iter().all(|c| c.ok));
        assert!(check_in_difference_set(&[1, 2, 3, 6, 7], &ESpec::Powers { b: 2 }).ok);
        assert!(!check_in_difference_set(&[5], &ESpec::Powers { b: 2 }).ok);
    }
}
