//! Exact chromatic number by DSATUR branch and bound.

use super::Graph;

const NONE: u32 = u32::MAX;

/// Node-expansion allowance shared across calls.
#[derive(Clone, Debug)]
pub struct Budget {
    pub remaining: u64,
    pub used: u64,
}

impl Budget {
    pub fn new(nodes: u64) -> Self {
        Budget { remaining: nodes, used: 0 }
    }

    fn take(&mut self) -> bool {
        if self.remaining == 0 {
            return false;
        }
        self.remaining -= 1;
        self.used += 1;
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringCertificate {
    /// Colors 1..=k, indexed by vertex.
    ProperColoring(Vec<u32>),
    /// Pairs (subgraph vertex, host vertex).
    Embedding(Vec<(usize, usize)>),
    /// Search over all `colors`-colorings up to color renaming found none.
    Exhaustion { colors: usize, nodes: u64 },
    /// Pairwise adjacent vertices.
    Clique(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticResult {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    /// Colors 1..=upper.
    pub coloring: Vec<u32>,
    pub lower_cert: ColoringCertificate,
    pub upper_cert: ColoringCertificate,
    pub nodes: u64,
}

impl ChromaticResult {
    pub fn chi(&self) -> Option<usize> {
        self.exact.then_some(self.lower)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    /// Colors 0..k.
    Colorable(Vec<u32>),
    Impossible,
    OutOfBudget,
}

/// Largest clique found by greedy growth from every seed.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut best: Vec<usize> = if n > 0 { vec![0] } else { Vec::new() };
    for seed in 0..n {
        let mut clique = vec![seed];
        let mut cand: Vec<usize> = g.neighbors(seed).iter().map(|&u| u as usize).collect();
        while !cand.is_empty() {
            // pick the candidate with most neighbours among candidates, lowest index on ties
            let pick = *cand
                .iter()
                .max_by_key(|&&c| {
                    let k = cand.iter().filter(|&&o| g.has_edge(c, o)).count();
                    (k, std::cmp::Reverse(c))
                })
                .unwrap();
            clique.push(pick);
            cand.retain(|&o| o != pick && g.has_edge(pick, o));
        }
        if clique.len() > best.len() {
            clique.sort_unstable();
            best = clique;
        }
    }
    best
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<u32>,
    forb: Vec<u16>,
    sat: Vec<u32>,
    udeg: Vec<u32>,
    left: usize,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, k: usize) -> Self {
        let n = g.vertex_count();
        Search {
            g,
            k,
            color: vec![NONE; n],
            forb: vec![0; n * k],
            sat: vec![0; n],
            udeg: (0..n).map(|v| g.degree(v) as u32).collect(),
            left: n,
        }
    }

    fn pick(&self) -> usize {
        let mut best = usize::MAX;
        let mut key = (0u32, 0u32);
        for v in 0..self.color.len() {
            if self.color[v] != NONE {
                continue;
            }
            let kv = (self.sat[v], self.udeg[v]);
            if best == usize::MAX || kv > key {
                best = v;
                key = kv;
            }
        }
        best
    }

    /// Returns false on a wipe-out; the assignment is applied either way.
    fn assign(&mut self, v: usize, c: u32) -> bool {
        self.color[v] = c;
        self.left -= 1;
        let mut ok = true;
        for &u in self.g.neighbors(v) {
            let u = u as usize;
            self.udeg[u] -= 1;
            if self.color[u] != NONE {
                continue;
            }
            let slot = &mut self.forb[u * self.k + c as usize];
            *slot += 1;
            if *slot == 1 {
                self.sat[u] += 1;
                if self.sat[u] as usize == self.k {
                    ok = false;
                }
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize, c: u32) {
        for &u in self.g.neighbors(v) {
            let u = u as usize;
            self.udeg[u] += 1;
            if self.color[u] != NONE {
                continue;
            }
            let slot = &mut self.forb[u * self.k + c as usize];
            *slot -= 1;
            if *slot == 0 {
                self.sat[u] -= 1;
            }
        }
        self.color[v] = NONE;
        self.left += 1;
    }

    fn run(&mut self, used: u32, budget: &mut Budget) -> Option<bool> {
        if self.left == 0 {
            return Some(true);
        }
        let v = self.pick();
        let top = (used as usize + 1).min(self.k) as u32;
        for c in 0..top {
            if self.forb[v * self.k + c as usize] != 0 {
                continue;
            }
            if !budget.take() {
                return None;
            }
            let ok = self.assign(v, c);
            if ok {
                match self.run(used.max(c + 1), budget) {
                    Some(true) => return Some(true),
                    None => {
                        self.unassign(v, c);
                        return None;
                    }
                    Some(false) => {}
                }
            }
            self.unassign(v, c);
        }
        Some(false)
    }
}

fn dsatur_decide(g: &Graph, k: usize, budget: &mut Budget) -> Decision {
    let mut s = Search::new(g, k);
    match s.run(0, budget) {
        Some(true) => Decision::Colorable(s.color),
        Some(false) => Decision::Impossible,
        None => Decision::OutOfBudget,
    }
}

type Bits = Vec<u64>;

fn bits_of(n: usize, it: impl IntoIterator<Item = usize>) -> Bits {
    let mut b = vec![0u64; n.div_ceil(64)];
    for v in it {
        b[v / 64] |= 1 << (v % 64);
    }
    b
}

fn count(b: &[u64]) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

fn ones(b: &[u64]) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + t)
        })
    })
}

/// Maximal independent sets by Bron–Kerbosch with pivoting on the complement;
/// `None` once more than `cap` are found or the budget runs out.
fn maximal_independent_sets(g: &Graph, cap: usize, budget: &mut Budget) -> Option<Vec<Bits>> {
    let n = g.vertex_count();
    // non-neighbours, excluding the vertex itself
    let full = bits_of(n, 0..n);
    let non: Vec<Bits> = (0..n)
        .map(|v| {
            let mut b = full.clone();
            for u in g.neighbors(v).iter().map(|&u| u as usize).chain([v]) {
                b[u / 64] &= !(1 << (u % 64));
            }
            b
        })
        .collect();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        non: &[Bits],
        r: &mut Vec<usize>,
        p: Bits,
        x: Bits,
        out: &mut Vec<Bits>,
        cap: usize,
        budget: &mut Budget,
        n: usize,
    ) -> bool {
        if !budget.take() {
            return false;
        }
        if p.iter().all(|&w| w == 0) {
            if x.iter().all(|&w| w == 0) {
                out.push(bits_of(n, r.iter().copied()));
                return out.len() <= cap;
            }
            return true;
        }
        let pivot = ones(&p).chain(ones(&x)).max_by_key(|&u| and_count(&p, &non[u])).unwrap();
        let cand: Vec<usize> = ones(&p).filter(|&v| non[pivot][v / 64] >> (v % 64) & 1 == 0).collect();
        let (mut p, mut x) = (p, x);
        for v in cand {
            let np: Bits = p.iter().zip(&non[v]).map(|(a, b)| a & b).collect();
            let nx: Bits = x.iter().zip(&non[v]).map(|(a, b)| a & b).collect();
            r.push(v);
            let ok = rec(non, r, np, nx, out, cap, budget, n);
            r.pop();
            if !ok {
                return false;
            }
            p[v / 64] &= !(1 << (v % 64));
            x[v / 64] |= 1 << (v % 64);
        }
        true
    }
    let mut out = Vec::new();
    let ok = rec(&non, &mut Vec::new(), full, vec![0; n.div_ceil(64)], &mut out, cap, budget, n);
    ok.then_some(out)
}

/// Covers the vertex set by k maximal independent sets, failures memoized.
struct Cover<'a> {
    sets: &'a [Bits],
    containing: Vec<Vec<usize>>,
    failed: std::collections::HashMap<Bits, usize>,
    chosen: Vec<usize>,
}

impl Cover<'_> {
    fn run(&mut self, uncovered: &Bits, left: usize, budget: &mut Budget) -> Option<bool> {
        let need = count(uncovered);
        if need == 0 {
            return Some(true);
        }
        if left == 0 {
            return Some(false);
        }
        if self.failed.get(uncovered).is_some_and(|&j| j >= left) {
            return Some(false);
        }
        if !budget.take() {
            return None;
        }
        let mut sizes: Vec<usize> = self.sets.iter().map(|s| and_count(s, uncovered)).collect();
        let mut top = sizes.clone();
        top.sort_unstable_by(|a, b| b.cmp(a));
        if top.iter().take(left).sum::<usize>() < need {
            self.failed.insert(uncovered.clone(), left);
            return Some(false);
        }
        // vertex with fewest useful options, lowest index on ties
        let mut best: Option<(usize, usize)> = None;
        for v in ones(uncovered) {
            let c = self.containing[v].len();
            if best.is_none_or(|(_, bc)| c < bc) {
                best = Some((v, c));
            }
        }
        let v = best.unwrap().0;
        let mut opts: Vec<usize> = self.containing[v].clone();
        let restricted: Vec<Bits> = opts
            .iter()
            .map(|&i| self.sets[i].iter().zip(uncovered).map(|(a, b)| a & b).collect())
            .collect();
        let mut keep = vec![true; opts.len()];
        for i in 0..opts.len() {
            for j in 0..opts.len() {
                if i != j && keep[j] {
                    let sub = restricted[i].iter().zip(&restricted[j]).all(|(a, b)| a & !b == 0);
                    let strict = restricted[i] != restricted[j];
                    if sub && (strict || j < i) {
                        keep[i] = false;
                        break;
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..opts.len()).filter(|&i| keep[i]).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(sizes[opts[i]]), opts[i]));
        opts = order.iter().map(|&i| opts[i]).collect();
        sizes.clear();
        for i in opts {
            let rest: Bits = uncovered.iter().zip(&self.sets[i]).map(|(a, b)| a & !b).collect();
            self.chosen.push(i);
            match self.run(&rest, left - 1, budget) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.chosen.pop();
        }
        let e = self.failed.entry(uncovered.clone()).or_insert(0);
        *e = (*e).max(left);
        Some(false)
    }
}

fn cover_decide(g: &Graph, k: usize, sets: &[Bits], budget: &mut Budget) -> Decision {
    let n = g.vertex_count();
    let mut containing = vec![Vec::new(); n];
    for (i, s) in sets.iter().enumerate() {
        for v in ones(s) {
            containing[v].push(i);
        }
    }
    let mut c = Cover { sets, containing, failed: Default::default(), chosen: Vec::new() };
    match c.run(&bits_of(n, 0..n), k, budget) {
        Some(true) => {
            let mut color = vec![NONE; n];
            for (ci, &si) in c.chosen.iter().enumerate() {
                for v in ones(&sets[si]) {
                    if color[v] == NONE {
                        color[v] = ci as u32;
                    }
                }
            }
            Decision::Colorable(color)
        }
        Some(false) => Decision::Impossible,
        None => Decision::OutOfBudget,
    }
}

const MIS_CAP: usize = 20_000;
const DSATUR_SLICE: u64 = 2_000_000;

/// Decides whether `g` has a proper k-coloring. DSATUR runs first; when it
/// stalls and the graph has few maximal independent sets, an exact cover
/// search over those sets takes over.
pub fn k_colorable(g: &Graph, k: usize, budget: &mut Budget) -> Decision {
    let n = g.vertex_count();
    if n == 0 {
        return Decision::Colorable(Vec::new());
    }
    if k == 0 {
        return Decision::Impossible;
    }
    let mut slice = Budget::new(budget.remaining.min(DSATUR_SLICE));
    let first = dsatur_decide(g, k, &mut slice);
    budget.remaining -= slice.used;
    budget.used += slice.used;
    if first != Decision::OutOfBudget || budget.remaining == 0 {
        return first;
    }
    if let Some(sets) = maximal_independent_sets(g, MIS_CAP, budget) {
        return cover_decide(g, k, &sets, budget);
    }
    dsatur_decide(g, k, budget)
}

/// Greedy DSATUR coloring, colors 0-based.
fn dsatur_greedy(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut color = vec![NONE; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut sat = vec![0u32; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == NONE)
            .max_by_key(|&v| (sat[v], g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let c = (0..).find(|&c| seen[v].get(c).is_none_or(|&b| !b)).unwrap();
        color[v] = c as u32;
        for &u in g.neighbors(v) {
            let u = u as usize;
            let s = &mut seen[u];
            if s.len() <= c {
                s.resize(c + 1, false);
            }
            if !s[c] {
                s[c] = true;
                sat[u] += 1;
            }
        }
    }
    color
}

/// χ(g) with certificates on both sides, or bounds flagged inexact when the
/// budget runs out.
pub fn chromatic_number_exact(g: &Graph, budget: &mut Budget) -> ChromaticResult {
    let n = g.vertex_count();
    let start = budget.used;
    if n == 0 {
        return ChromaticResult {
            lower: 0,
            upper: 0,
            exact: true,
            coloring: Vec::new(),
            lower_cert: ColoringCertificate::Clique(Vec::new()),
            upper_cert: ColoringCertificate::ProperColoring(Vec::new()),
            nodes: 0,
        };
    }
    let clique = greedy_clique(g);
    let mut lower = clique.len();
    let mut lower_cert = ColoringCertificate::Clique(clique);
    let mut best = dsatur_greedy(g);
    let mut upper = *best.iter().max().unwrap() as usize + 1;
    let mut exact = true;
    while upper > lower {
        match k_colorable(g, upper - 1, budget) {
            Decision::Colorable(c) => {
                best = c;
                upper -= 1;
            }
            Decision::Impossible => {
                lower = upper;
                lower_cert = ColoringCertificate::Exhaustion { colors: upper - 1, nodes: budget.used - start };
            }
            Decision::OutOfBudget => {
                exact = false;
                break;
            }
        }
    }
    let coloring: Vec<u32> = best.iter().map(|c| c + 1).collect();
    ChromaticResult {
        lower,
        upper,
        exact,
        upper_cert: ColoringCertificate::ProperColoring(coloring.clone()),
        coloring,
        lower_cert,
        nodes: budget.used - start,
    }
}

/// Plain backtracking in vertex order, new colors introduced in order; shares
/// nothing with the solver above. Intended for n ≤ 20.
pub fn brute_force_colorable(g: &Graph, k: usize) -> bool {
    fn go(g: &Graph, k: usize, v: usize, used: usize, col: &mut Vec<usize>) -> bool {
        if v == col.len() {
            return true;
        }
        for c in 0..(used + 1).min(k) {
            if g.neighbors(v).iter().all(|&u| (u as usize) >= v || col[u as usize] != c) {
                col[v] = c;
                if go(g, k, v + 1, used.max(c + 1), col) {
                    return true;
                }
            }
        }
        false
    }
    let mut col = vec![0; g.vertex_count()];
    g.vertex_count() == 0 || go(g, k, 0, 0, &mut col)
}
