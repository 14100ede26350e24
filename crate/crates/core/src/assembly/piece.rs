//! Finite pieces: sets that are k-chromatically recurrent and η-nonrecurrent,
//! optionally with mS ⊆ E − E.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::check::check_in_difference_set;
use super::evidence::{ChromaticEvidence, LogEntry};
use super::periodic::PeriodicSet;
use super::two_pieces::quotient;
use super::witness::smallest_witness;
use super::RecurrenceCertificate;
use crate::eset::ESpec;
use crate::error::{Error, Result};
use crate::f2core::{enumerate_ball, f2_nonrecurrence_witness, BitVector, HammingBallSpec};
use crate::graphs::kneser_embedding_into_hamming_cayley;
use crate::limits::Limits;
use crate::rational::{check_delta, fmt_rat, Rat};
use crate::torus::{
    alpha_parts, choose_alpha, copy_cayley_vertices, lift_nonrecurrence, lift_with, tilde_h_member, CopySpec,
    TorusPoint,
};

/// S′ with its high-density S′-free periodic set and chromatic evidence in
/// Cay(S′). When `modulus` > 1, modulus·S′ ⊆ E − E.
#[derive(Clone, Debug)]
pub struct Piece {
    pub s: Vec<u64>,
    pub modulus: u64,
    pub periodic: PeriodicSet,
    pub evidence: ChromaticEvidence,
    pub log: Vec<LogEntry>,
}

/// Caller veto on a candidate (S′, density of the S′-free set).
pub type Accept<'a> = &'a dyn Fn(&[u64], &Rat) -> bool;

fn accept_all(_: &[u64], _: &Rat) -> bool {
    true
}

/// Finds a piece for χ(Cay S′) > k at density above η. `max_s` bounds the
/// elements of S′.
pub fn find_piece(
    k: usize,
    eta: &Rat,
    e: &ESpec,
    m: u64,
    max_s: u64,
    accept: Accept,
    limits: &Limits,
) -> Result<Piece> {
    check_delta(eta)?;
    if m == 0 {
        return Err(Error::invalid("modulus must be positive"));
    }
    if k == 0 {
        if let Some(p) = trivial_piece(eta, e, m) {
            if accept(&p.s, &p.periodic.density()) {
                return Ok(p);
            }
        }
    }
    let found = if k <= 2 {
        circle_route(k.max(1), eta, e, m, max_s, accept, limits)?
    } else {
        kneser_route(k, eta, e, m, max_s, accept, limits)?
    };
    found.ok_or_else(|| {
        Error::resource(
            "finite_piece",
            format!("no piece for k={k} eta={} modulus={m} with max(S) <= {max_s} within caps", fmt_rat(eta)),
        )
    })
}

fn trivial_piece(eta: &Rat, e: &ESpec, m: u64) -> Option<Piece> {
    if !e.in_difference_set(&BigInt::from(m)) {
        return None;
    }
    let periodic = PeriodicSet::half_blocks(1);
    (periodic.density() > *eta).then(|| Piece {
        s: vec![1],
        modulus: m,
        periodic,
        evidence: ChromaticEvidence::single_vertex(),
        log: vec![LogEntry::new("trivial-piece", &[("S", "{1}".into())])],
    })
}

/// Vertex classes: elements of E up to `limit`, grouped by residue mod m,
/// largest class first.
fn residue_classes(e: &ESpec, m: u64, max_s: u64, limits: &Limits) -> Vec<(i128, Vec<i128>)> {
    let first = match e.prefix_upto(i128::MAX, 1).first() {
        Some(&x) => x,
        None => return Vec::new(),
    };
    let span = (max_s as i128).saturating_mul(m as i128).saturating_add(m as i128);
    let elems = e.prefix_upto(first.saturating_add(span), limits.horizon);
    let mut classes: std::collections::BTreeMap<i128, Vec<i128>> = Default::default();
    for x in elems {
        let v = classes.entry(x.rem_euclid(m as i128)).or_default();
        if v.len() < limits.orbit_vertices {
            v.push(x);
        }
    }
    let mut out: Vec<(i128, Vec<i128>)> = classes.into_iter().filter(|(_, v)| v.len() >= 2).collect();
    out.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(&b.0)));
    out
}

/// Union-find with parity, for detecting the first odd cycle.
struct ParityUf {
    parent: Vec<usize>,
    parity: Vec<u8>,
}

impl ParityUf {
    fn new(n: usize) -> Self {
        ParityUf { parent: (0..n).collect(), parity: vec![0; n] }
    }

    fn find(&mut self, x: usize) -> (usize, u8) {
        let mut p = 0;
        let mut y = x;
        while self.parent[y] != y {
            p ^= self.parity[y];
            y = self.parent[y];
        }
        (y, p)
    }

    /// False when the edge closes an odd cycle.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa != pb;
        }
        self.parent[ra] = rb;
        self.parity[ra] = pa ^ pb ^ 1;
        true
    }
}

/// Shortest odd cycle, as a vertex sequence.
pub fn shortest_odd_cycle(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut best: Option<Vec<usize>> = None;
    for root in 0..n {
        let mut level = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        level[root] = 0;
        let mut queue = VecDeque::from([root]);
        'bfs: while let Some(u) = queue.pop_front() {
            if best.as_ref().is_some_and(|b| 2 * level[u] + 1 >= b.len()) {
                break;
            }
            for &v in &adj[u] {
                if level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if level[v] == level[u] {
                    let path = |mut x: usize| {
                        let mut p = vec![x];
                        while x != root {
                            x = parent[x];
                            p.push(x);
                        }
                        p
                    };
                    let (mut pu, mut pv) = (path(u), path(v));
                    let shared = pu.iter().filter(|x| pv.contains(x)).count();
                    if shared != 1 {
                        continue;
                    }
                    // root .. u, then v .. (child of root)
                    pu.reverse();
                    pv.pop();
                    let mut cycle = pu;
                    cycle.extend(pv);
                    if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                        best = Some(cycle);
                    }
                    break 'bfs;
                }
            }
        }
    }
    best
}

/// d = 1: A = {0}, R = {½} in G_1, B = [ε′, ½ − ε′], U = ½ + V_ε. Searches
/// α = a/q and an odd cycle (an edge for k = 1) of the orbit graph on E′.
fn circle_route(
    k: usize,
    eta: &Rat,
    e: &ESpec,
    m: u64,
    max_s: u64,
    accept: Accept,
    limits: &Limits,
) -> Result<Option<Piece>> {
    let f2 = f2_nonrecurrence_witness(1, 0, eta, limits)?
        .map_err(|f| Error::Precondition(format!("no F2 witness in dimension 1: {f:?}")))?;
    let r1 = vec![BitVector::ones(1)];
    let classes = residue_classes(e, m, max_s, limits);
    let most = classes.first().map_or(0, |c| c.1.len());
    let needed_vertices = |den: u64| if k >= 2 { den / 4 + 1 } else { 2 };
    for q in 2..=limits.max_denominator {
        let g = m.gcd(&q);
        let mut den = 8u64;
        while den <= 1 << 20 && needed_vertices(den) <= most as u64 {
            // closed B = [1/den, 1/2 − 1/den] in units of 1/q
            let inside = |x: u64| x * den >= q && x * den <= q * (den / 2 - 1);
            let best_coset = (0..g).map(|c| (0..q).filter(|&x| x % g == c && inside(x)).count() as u64).max().unwrap_or(0);
            let density = Rat::new((best_coset * g).into(), q.into());
            if density <= *eta {
                den *= 2;
                continue;
            }
            for a in 1..q {
                if a.gcd(&q) != 1 {
                    continue;
                }
                for (residue, verts) in &classes {
                    if (verts.len() as u64) < needed_vertices(den) {
                        continue;
                    }
                    let Some(cycle) = orbit_cycle(verts, m, q, a, den, k, max_s) else { continue };
                    let mut s: Vec<u64> = cycle
                        .iter()
                        .zip(cycle.iter().cycle().skip(1))
                        .map(|(&i, &j)| ((verts[i] - verts[j]).unsigned_abs() / m as u128) as u64)
                        .collect();
                    s.sort_unstable();
                    s.dedup();
                    if !accept(&s, &density) {
                        continue;
                    }
                    return build_circle_piece(&f2, &r1, verts, *residue, &cycle, s, m, q, a, den, eta).map(Some);
                }
            }
            den *= 2;
        }
    }
    Ok(None)
}

/// Odd cycle (k ≥ 2) or edge (k = 1) using the smallest possible largest step.
fn orbit_cycle(verts: &[i128], m: u64, q: u64, a: u64, den: u64, k: usize, max_s: u64) -> Option<Vec<usize>> {
    let n = verts.len();
    let pos: Vec<u64> = verts.iter().map(|&v| (v.rem_euclid(q as i128) as u64) * a % q).collect();
    let mut edges: Vec<(u64, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let step = (verts[j] - verts[i]).unsigned_abs() / m as u128;
            if step == 0 || step > max_s as u128 {
                continue;
            }
            let x = (pos[j] + q - pos[i]) % q;
            let off = (2 * x).abs_diff(q);
            if off * den < 4 * q {
                edges.push((step as u64, i, j));
            }
        }
    }
    edges.sort_unstable();
    if k == 1 {
        return edges.first().map(|&(_, i, j)| vec![i, j]);
    }
    let mut uf = ParityUf::new(n);
    let cut = edges.iter().position(|&(_, i, j)| !uf.union(i, j))?;
    let limit = edges[cut].0;
    let sub: Vec<(usize, usize)> = edges.iter().take_while(|e| e.0 <= limit).map(|&(_, i, j)| (i, j)).collect();
    shortest_odd_cycle(n, &sub)
}

#[allow(clippy::too_many_arguments)]
fn build_circle_piece(
    f2: &[BitVector],
    r1: &[BitVector],
    verts: &[i128],
    residue: i128,
    cycle: &[usize],
    s: Vec<u64>,
    m: u64,
    q: u64,
    a: u64,
    den: u64,
    eta: &Rat,
) -> Result<Piece> {
    let alpha = TorusPoint::new(vec![Rat::new(a.into(), q.into())])?;
    let eps_prime = Rat::new(1.into(), den.into());
    let lift = lift_with(f2, r1, 1, &alpha, &eps_prime)?;
    let spec = CopySpec::new(alpha.clone(), 0, lift.eps.clone())?;
    for &x in &s {
        if !tilde_h_member(&BigInt::from(x * m), &spec) {
            return Err(Error::Precondition(format!("{} misses the thickened ball", x * m)));
        }
    }
    let g = m.gcd(&q);
    let in_b = |n: u64| lift.a_member(&BigInt::from(n));
    let mut best = (0u64, 0usize);
    for t in 0..g {
        let c = (0..q).filter(|&y| y % g == t && in_b(y)).count();
        if c > best.1 {
            best = (t, c);
        }
    }
    let t = best.0;
    let pattern: Vec<u64> = (0..q).filter(|&n| in_b((m % q * n + t) % q)).collect();
    let periodic = PeriodicSet::new(q, pattern, 0)?;
    if periodic.density() <= *eta {
        return Err(Error::Precondition("preimage density fell to eta".into()));
    }
    let vertices: Vec<BigInt> = cycle.iter().map(|&i| BigInt::from(verts[i].div_euclid(m as i128))).collect();
    let len = cycle.len();
    let edges: Vec<(usize, usize)> = if len == 2 { vec![(0, 1)] } else { (0..len).map(|i| (i, (i + 1) % len)).collect() };
    let chi_lower = if len == 2 { 2 } else { 3 };
    let log = vec![
        LogEntry::new("f2-witness", &[("d", "1".into()), ("A", "{0}".into()), ("R", "{1}".into())]),
        LogEntry::new("lift", &[("eps_prime", fmt_rat(&lift.eps_prime)), ("eps", fmt_rat(&lift.eps))]),
        LogEntry::new("alpha", &[("alpha", alpha.to_string())]),
        LogEntry::new(
            "orbit-subgraph",
            &[
                ("kind", if len == 2 { "edge" } else { "odd-cycle" }.into()),
                ("length", len.to_string()),
                ("modulus", m.to_string()),
                ("class", residue.to_string()),
            ],
        ),
        LogEntry::new("preimage", &[("shift", t.to_string()), ("period", q.to_string()), ("density", fmt_rat(&periodic.density()))]),
    ];
    Ok(Piece { s, modulus: m, periodic, evidence: ChromaticEvidence { chi_lower, vertices, edges, kneser: None }, log })
}

/// The Kneser graph KG(d, ⌊d/2⌋ − j) copied into H̃(α; 2j+1, ε).
fn kneser_route(
    k: usize,
    eta: &Rat,
    e: &ESpec,
    m: u64,
    max_s: u64,
    accept: Accept,
    limits: &Limits,
) -> Result<Option<Piece>> {
    let sub = match (e, m) {
        (_, 1) => e.clone(),
        (ESpec::All, _) => ESpec::Arith { a: 0, d: m as i64 },
        (ESpec::Arith { a, d }, _) => {
            let l = (*d as u64).lcm(&m);
            // first element of the progression divisible by m
            let start = (0..m).map(|i| a + d * i as i64).find(|x| x.rem_euclid(m as i64) == 0);
            match start {
                Some(s) => ESpec::Arith { a: s, d: l as i64 },
                None => return Ok(None),
            }
        }
        _ => return Ok(None),
    };
    for d in 2..=limits.max_d.min(limits.max_enum_dim) {
        let Some(j) = (0..=d / 2).find(|&j| d / 2 > j && (d - 2 * (d / 2 - j) + 2) as usize > k) else { continue };
        let radius = 2 * j + 1;
        if radius > d / 2 {
            continue;
        }
        let a = match f2_nonrecurrence_witness(d, radius, eta, limits)? {
            Ok(a) => a,
            Err(_) => continue,
        };
        let r = enumerate_ball(&HammingBallSpec::at_ones(d, radius)?, limits)?;
        let Ok(lift) = lift_nonrecurrence(&a, &r, d, &TorusPoint::zero(d as usize), eta)? else { continue };
        let resolution = {
            let x = (Rat::from_integer(2.into()) / &lift.eps).floor().to_integer().to_u64().unwrap_or(u64::MAX);
            (x + 1) + (x + 1) % 2
        };
        let choice = match choose_alpha(&sub, d as usize, resolution, limits) {
            Ok(Ok(c)) => c,
            _ => continue,
        };
        let emb = kneser_embedding_into_hamming_cayley(d, j, limits)?;
        if !emb.verified {
            continue;
        }
        let vs: Vec<TorusPoint> = emb.map.iter().map(TorusPoint::from_bits).collect();
        let Ok(gs) = copy_cayley_vertices(&sub, &choice.alpha, &vs, &lift.eps, limits.horizon) else { continue };
        let spec = CopySpec::new(choice.alpha.clone(), radius, lift.eps.clone())?;
        let mut s0 = Vec::new();
        let mut ok = true;
        for (u, v) in emb.kneser.edges() {
            let diff = (&gs[u] - &gs[v]).magnitude().clone();
            let Some(x) = diff.to_u64() else {
                ok = false;
                break;
            };
            if x == 0 || x % m != 0 || x / m > max_s || !tilde_h_member(&BigInt::from(x), &spec) {
                ok = false;
                break;
            }
            s0.push(x);
        }
        if !ok {
            continue;
        }
        s0.sort_unstable();
        s0.dedup();
        let s = quotient(&s0, m);
        let parts = alpha_parts(&choice.alpha)?;
        let period = parts.iter().fold(1u64, |acc, &(_, q)| acc.lcm(&q));
        if period > limits.max_cells.min(4_000_000) {
            continue;
        }
        let gg = m.gcd(&period);
        let in_b: Vec<bool> = (0..period).map(|n| lift.a_member(&BigInt::from(n))).collect();
        let mut best = (0u64, 0usize);
        for t in 0..gg {
            let c = (0..period).filter(|&y| y % gg == t && in_b[y as usize]).count();
            if c > best.1 {
                best = (t, c);
            }
        }
        let pattern: Vec<u64> = (0..period).filter(|&n| in_b[((m % period * n + best.0) % period) as usize]).collect();
        let periodic = PeriodicSet::new(period, pattern, 0)?;
        if periodic.density() <= *eta || !accept(&s, &periodic.density()) {
            continue;
        }
        let n_vertices = emb.kneser.vertex_count();
        let vertices: Vec<BigInt> = gs.iter().map(|g| g.div_floor(&BigInt::from(m))).collect();
        let labels: Vec<Vec<u32>> = emb
            .map
            .iter()
            .map(|b| (0..d).filter(|&i| b.bit(i)).map(|i| i + 1).collect())
            .collect();
        debug_assert_eq!(labels.len(), n_vertices);
        let chi = (d - 2 * emb.r + 2) as usize;
        let log = vec![
            LogEntry::new("f2-witness", &[("d", d.to_string()), ("radius", radius.to_string()), ("A-size", a.len().to_string())]),
            LogEntry::new("lift", &[("eps_prime", fmt_rat(&lift.eps_prime)), ("eps", fmt_rat(&lift.eps))]),
            LogEntry::new("alpha", &[("alpha", choice.alpha.to_string()), ("resolution", resolution.to_string())]),
            LogEntry::new("kneser-copy", &[("n", d.to_string()), ("r", emb.r.to_string()), ("modulus", m.to_string())]),
            LogEntry::new("preimage", &[("shift", best.0.to_string()), ("period", period.to_string())]),
        ];
        return Ok(Some(Piece {
            s,
            modulus: m,
            periodic,
            evidence: ChromaticEvidence { chi_lower: chi, vertices, edges: emb.kneser.edges(), kneser: Some((d, emb.r, labels)) },
            log,
        }));
    }
    Ok(None)
}

fn default_max_s(eta: &Rat, limits: &Limits) -> u64 {
    // witness_from_set needs roughly m > 2k/(density − η) with density < ½
    let slack = Rat::new(1.into(), 2.into()) - eta;
    (Rat::from_integer(limits.max_modulus.into()) * slack / Rat::from_integer(2.into()))
        .floor()
        .to_integer()
        .to_u64()
        .unwrap_or(0)
}

fn certify(piece: Piece, k: usize, eta: &Rat, e: Option<&ESpec>, limits: &Limits) -> Result<RecurrenceCertificate> {
    let kmax = piece.s.iter().copied().max().unwrap_or(0);
    let w = smallest_witness(&piece.s, &piece.periodic, eta, 2 * kmax + 1, limits.max_modulus)?
        .map_err(|f| Error::resource("witness", format!("no witness up to m = {} ({f:?})", limits.max_modulus)))?;
    let mut log = piece.log;
    log.push(LogEntry::new("witness", &[("m", w.m.to_string()), ("size", w.b.len().to_string())]));
    let cert = RecurrenceCertificate {
        s: piece.s,
        chromatic_claim: k,
        evidence: piece.evidence,
        witness: w,
        e: e.cloned(),
        modulus: piece.modulus,
        log,
    };
    if let Some(c) = cert.verify().into_iter().find(|c| !c.ok) {
        return Err(Error::Precondition(format!("piece certificate check {} failed: {}", c.name, c.detail)));
    }
    Ok(cert)
}

/// A finite S with χ(Cay S) > k and a witness of its δ-nonrecurrence. For
/// k = 1 the evidence is an odd cycle, so χ(Cay S) ≥ 3.
pub fn finite_piece(k: usize, delta: &Rat, limits: &Limits) -> Result<RecurrenceCertificate> {
    check_delta(delta)?;
    let target = if k == 1 { 2 } else { k };
    let piece = find_piece(target, delta, &ESpec::All, 1, default_max_s(delta, limits), &accept_all, limits)?;
    certify(piece, k, delta, None, limits)
}

/// As [`finite_piece`], with m·S ⊆ E − E.
pub fn piece_in_difference_set(k: usize, m: u64, delta: &Rat, e: &ESpec, limits: &Limits) -> Result<RecurrenceCertificate> {
    check_delta(delta)?;
    let piece = find_piece(k, delta, e, m, default_max_s(delta, limits) / m.max(1), &accept_all, limits)?;
    let dilated: Vec<u64> = piece.s.iter().map(|&x| x * m).collect();
    let c = check_in_difference_set(&dilated, e);
    if !c.ok {
        return Err(Error::Precondition(format!("m·S not inside E − E at {}", c.detail)));
    }
    certify(piece, k, delta, Some(e), limits)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn lim() -> Limits {
        Limits::default()
    }

    fn passes(c: &RecurrenceCertificate) {
        for ch in c.verify() {
            assert!(ch.ok, "{} {}", ch.name, ch.detail);
        }
    }

    #[test]
    fn odd_cycles() {
        assert_eq!(shortest_odd_cycle(3, &[(0, 1), (1, 2), (2, 0)]).map(|c| c.len()), Some(3));
        assert_eq!(shortest_odd_cycle(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]), None);
        let pent: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).chain([(5, 0), (5, 1)]).collect();
        let c = shortest_odd_cycle(6, &pent).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.contains(&5));
    }

    #[test]
    fn small_pieces() {
        let c = finite_piece(1, &rat(1, 4), &lim()).unwrap();
        passes(&c);
        assert!(c.evidence.chi_lower >= 3);
        assert!(c.witness.b.len() as u64 * 4 > c.witness.m);
        let c2 = finite_piece(2, &rat(1, 4), &lim()).unwrap();
        passes(&c2);
        assert_eq!(c2.chromatic_claim, 2);
        let c0 = finite_piece(0, &rat(1, 4), &lim()).unwrap();
        assert_eq!(c0.s, vec![1]);
        passes(&c0);
    }

    #[test]
    fn near_half() {
        let c = finite_piece(1, &rat(49, 100), &lim()).unwrap();
        passes(&c);
        assert!(Rat::new(c.witness.b.len().into(), c.witness.m.into()) > rat(49, 100));
    }

    #[test]
    fn rejects_bad_delta() {
        assert!(matches!(finite_piece(1, &rat(3, 5), &lim()), Err(Error::Invalid(_))));
        assert!(matches!(finite_piece(1, &rat(0, 1), &lim()), Err(Error::Invalid(_))));
    }

    #[test]
    fn large_k_hits_caps() {
        let l = Limits { max_d: 12, ..lim() };
        assert!(matches!(finite_piece(9, &rat(49, 100), &l), Err(Error::Resource { .. })));
    }

    #[test]
    fn inside_difference_sets() {
        let odd = ESpec::Arith { a: 1, d: 2 };
        let c = piece_in_difference_set(2, 2, &rat(1, 4), &odd, &lim()).unwrap();
        passes(&c);
        assert_eq!(c.modulus, 2);
        let p2 = ESpec::Powers { b: 2 };
        let c = piece_in_difference_set(2, 1, &rat(1, 4), &p2, &lim()).unwrap();
        passes(&c);
        for &x in &c.s {
            assert!(p2.in_difference_set(&BigInt::from(x)));
        }
    }
}
