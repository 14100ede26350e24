//! The ten acceptance criteria, one line each. Runs without the libtest
//! harness so the lines always show.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use recforge::assembly::{
    check_witness, decompositions, kriz_iterate, kriz_iterate_in_difference_set, l_threshold, two_pieces,
    NonrecurrenceWitness, RecurrenceCertificate,
};
use recforge::cli::{make_document, verify_document, verify_text, CertificateDocument, ESpecDoc, EXIT_CHECK};
use recforge::eset::ESpec;
use recforge::f2core::{
    ball_difference, enumerate_ball, f2_nonrecurrence_witness, hamming_weight, BitVector, HammingBallSpec,
};
use recforge::graphs::{
    cayley_f2, chromatic_number_exact, kneser_embedding_into_hamming_cayley, kneser_graph, verify_embedding, Budget,
};
use recforge::rational::{rat, Rat};
use recforge::torus::{
    box_intersection_lemma_check, box_tiling, empirical_box_density, AlphaRep, BoxSet, TorusPoint, GOLDEN_FRAC_64,
};
use recforge::Limits;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// C(n, r), saturating once it passes 10^6.
fn binom(n: u64, r: u64) -> u64 {
    let mut acc = 1u64;
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
        if acc > 1_000_000 {
            return u64::MAX;
        }
    }
    acc
}

fn lovasz() -> Outcome {
    let limits = Limits::default();
    let mut count = 0;
    for r in 1..=65u32 {
        for n in 2 * r..=130 {
            if binom(n as u64, r as u64) > 130 {
                break;
            }
            let g = kneser_graph(n, r, &limits).map_err(|e| e.to_string())?;
            let res = chromatic_number_exact(&g, &mut Budget::new(50_000_000));
            let want = (n - 2 * r + 2) as usize;
            ensure(res.chi() == Some(want), || {
                format!("KG({n},{r}): got {:?} (bounds {}..{}), formula {want}", res.chi(), res.lower, res.upper)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs"))
}

fn hamming_identities() -> Outcome {
    let limits = Limits::default();
    let mut checked = 0;
    for d in 1..=12u32 {
        let all: Vec<BitVector> = (0..1u64 << d).map(|b| BitVector::new(d, b).unwrap()).collect();
        for k in 0..=d / 2 {
            let hk = HammingBallSpec::at_zero(d, k).unwrap();
            let diff = ball_difference(&hk, &hk, &limits).map_err(|e| e.to_string())?;
            let want: Vec<BitVector> = all.iter().copied().filter(|x| hamming_weight(x) <= 2 * k).collect();
            ensure(diff.iter().copied().eq(want.iter().copied()), || format!("H_{k} - H_{k} != H_{} in d={d}", 2 * k))?;
            let ball = enumerate_ball(&hk, &limits).map_err(|e| e.to_string())?;
            ensure(ball.len() == want.iter().filter(|x| hamming_weight(x) <= k).count(), || "ball size".into())?;
            checked += 1;
        }
        for k in 0..=d {
            let hk: HashSet<BitVector> =
                enumerate_ball(&HammingBallSpec::at_zero(d, k).unwrap(), &limits).unwrap().into_iter().collect();
            for r in 0..=d {
                let hr = enumerate_ball(&HammingBallSpec::at_ones(d, r).unwrap(), &limits).unwrap();
                let disjoint = hr.iter().all(|x| !hk.contains(x));
                ensure(disjoint == (k + r < d), || format!("d={d} k={k} r={r}: disjoint={disjoint}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} identities"))
}

fn f2_witness() -> Outcome {
    let a = f2_nonrecurrence_witness(10, 1, &rat(1, 4), &Limits::default())
        .map_err(|e| e.to_string())?
        .map_err(|f| format!("{f:?}"))?;
    ensure(a.len() == 386, || format!("|A| = {}", a.len()))?;
    let ones = BitVector::ones(10);
    let mut pairs = 0u64;
    for x in &a {
        for y in &a {
            // x − y ∈ H_1(1) iff the weight of x + y + 1 is at most 1
            ensure(hamming_weight(&x.add(y).add(&ones)) > 1, || format!("{x} - {y} in H_1(1)"))?;
            pairs += 1;
        }
    }
    Ok(format!("|A| = 386, {pairs} pairs"))
}

fn kneser_embedding() -> Outcome {
    let limits = Limits::default();
    for (d, k) in [(4u32, 1u32), (5, 1), (6, 1), (7, 1), (6, 2)] {
        let emb = kneser_embedding_into_hamming_cayley(d, k, &limits).map_err(|e| e.to_string())?;
        let s = enumerate_ball(&HammingBallSpec::at_ones(d, (2 * k + 1).min(d)).unwrap(), &limits).unwrap();
        let host = cayley_f2(d, &s).map_err(|e| e.to_string())?;
        let map: Vec<usize> = emb.map.iter().map(|b| b.bits() as usize).collect();
        let ok = verify_embedding(&host, &emb.kneser, &map).map_err(|e| e.to_string())?;
        ensure(ok && emb.verified, || format!("(d,k) = ({d},{k})"))?;
        ensure(emb.kneser.edge_count() > 0, || format!("KG({d},{}) has no edges", emb.r))?;
    }
    Ok("5 embeddings".into())
}

/// Random B ⊆ [n − 2·max S] avoiding B + S, greedy in shuffled order.
fn random_free_set(rng: &mut ChaCha8Rng, n: u64, s: &[u64]) -> Vec<u64> {
    let top = n.saturating_sub(2 * s.iter().max().unwrap());
    let mut order: Vec<u64> = (0..top).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut b: Vec<u64> = Vec::new();
    for x in order {
        if b.iter().all(|&y| !s.contains(&x.abs_diff(y))) {
            b.push(x);
        }
    }
    b.sort_unstable();
    b
}

fn two_pieces_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut done = 0;
    let mut tries = 0;
    while done < 200 {
        tries += 1;
        if tries > 200_000 {
            return Err(format!("only {done} valid instances generated"));
        }
        let m = rng.gen_range(3..=30u64);
        let e: Vec<u64> = {
            let mut v: Vec<u64> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(1..=(m / 4).max(1))).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let a = random_free_set(&mut rng, m, &e);
        if a.is_empty() {
            continue;
        }
        let delta = Rat::new((a.len() as u64).into(), (2 * m).into());
        let l = rng.gen_range(3..=40u64);
        let f = vec![1u64];
        let b = random_free_set(&mut rng, l, &f);
        if b.is_empty() {
            continue;
        }
        let eta = Rat::new((b.len() as u64 * 3).into(), (4 * l).into());
        let k = e.iter().copied().chain([m]).max().unwrap();
        match l_threshold(a.len() as u64, m, &delta, &eta, k) {
            Some(l0) if l > l0 => {}
            _ => continue,
        }
        let we = NonrecurrenceWitness { b: a.clone(), m, s: e.clone(), delta: delta.clone() };
        let wf = NonrecurrenceWitness { b: b.clone(), m: l, s: f.clone(), delta: eta.clone() };
        let tp = two_pieces(&we, &wf).map_err(|err| format!("m={m} E={e:?} A={a:?} l={l} B={b:?}: {err}"))?;
        let w = &tp.witness;
        let mut want_s: Vec<u64> = e.iter().copied().chain(f.iter().map(|x| x * m)).collect();
        want_s.sort_unstable();
        want_s.dedup();
        ensure(w.s == want_s && w.m == l * m, || "wrong S or modulus".into())?;
        for c in check_witness(&w.b, w.m, &w.s, &(Rat::from_integer(2.into()) * &delta * &eta)) {
            ensure(c.ok, || format!("instance {done}: {} {}", c.name, c.detail))?;
        }
        // independent exhaustive scan of C ∩ (C + S)
        let set: HashSet<u64> = w.b.iter().copied().collect();
        ensure(w.b.iter().all(|x| w.s.iter().all(|s| !set.contains(&(x + s)))), || "C meets C + S".into())?;
        for &c in &w.b {
            let n = decompositions(c + tp.t1, &a, m, &b, tp.e0, tp.f0);
            ensure(n == 1, || format!("{c} has {n} decompositions"))?;
        }
        done += 1;
    }
    Ok(format!("200 instances ({tries} draws)"))
}

fn independent_checks(cert: &RecurrenceCertificate, delta: &Rat) -> Result<(), String> {
    for c in cert.verify() {
        ensure(c.ok, || format!("{} {}", c.name, c.detail))?;
    }
    ensure(cert.evidence.chi_lower >= 3, || format!("chi lower bound {}", cert.evidence.chi_lower))?;
    let w = &cert.witness;
    ensure(Rat::from_integer((w.b.len() as u64).into()) > delta * Rat::from_integer(w.m.into()), || "density".into())?;
    let mut in_c = vec![false; w.m as usize];
    for &x in &w.b {
        ensure(x < w.m, || format!("{x} outside [m]"))?;
        in_c[x as usize] = true;
    }
    for &x in &w.b {
        for &s in &cert.s {
            let y = (x + s) as usize;
            ensure(y >= in_c.len() || !in_c[y], || format!("{x} + {s} in C"))?;
        }
    }
    Ok(())
}

fn end_to_end(e: Option<&ESpec>) -> Result<(String, RecurrenceCertificate), String> {
    let delta = rat(1, 4);
    let limits = Limits::default();
    let res = match e {
        None => kriz_iterate(&delta, 2, &limits),
        Some(e) => kriz_iterate_in_difference_set(&delta, 2, e, &limits),
    }
    .map_err(|err| err.to_string())?;
    ensure(res.stopped.is_none() && res.completed() == 2, || format!("stopped early: {:?}", res.stopped))?;
    let cert = res.certificate;
    independent_checks(&cert, &delta)?;
    let w = &cert.witness;
    Ok((format!("m2 = {}, |C2| = {}, |S2| = {}", w.m, w.b.len(), cert.s.len()), cert))
}

/// x = 2^a − 2^b with a > b ≥ 0, by trying every b.
fn power_difference(x: u64) -> bool {
    (0..64).any(|b| {
        let y = x.checked_add(1u64 << b);
        y.is_some_and(|y| y.is_power_of_two() && y > 1u64 << b)
    })
}

fn mutations(doc: &CertificateDocument) -> Vec<(&'static str, CertificateDocument)> {
    let c = &doc.certificate;
    let n = |s: &str| s.parse::<u64>().unwrap();
    let b: Vec<u64> = c.witness.b.iter().map(|x| n(x)).collect();
    let s: Vec<u64> = c.s.iter().map(|x| n(x)).collect();
    let m = n(&c.witness.m);
    let smax = *s.iter().max().unwrap();
    let far = |v: &str| (v.parse::<BigInt>().unwrap() + BigInt::from(10 * smax + 7)).to_string();
    let mut out: Vec<(&'static str, CertificateDocument)> = Vec::new();
    let mut add = |name: &'static str, f: &dyn Fn(&mut CertificateDocument)| {
        let mut d = doc.clone();
        f(&mut d);
        out.push((name, d));
    };
    add("B[0] := m", &|d| d.certificate.witness.b[0] = m.to_string());
    add("B[1] := B[0]", &|d| d.certificate.witness.b[1] = b[0].to_string());
    add("B[1] := B[0] + S[0]", &|d| d.certificate.witness.b[1] = (b[0] + s[0]).to_string());
    add("B[2] := B[0] + max S", &|d| d.certificate.witness.b[2] = (b[0] + smax).to_string());
    add("m := max B", &|d| d.certificate.witness.m = b.iter().max().unwrap().to_string());
    add("m := 0", &|d| d.certificate.witness.m = "0".into());
    add("delta := 1/2", &|d| d.certificate.witness.delta = "1/2".into());
    add("delta := |B|/m", &|d| d.certificate.witness.delta = format!("{}/{}", b.len(), m));
    add("S[0] := B[1] - B[0]", &|d| d.certificate.s[0] = (b[1] - b[0]).to_string());
    add("S[last] := max B - B[0]", &|d| {
        *d.certificate.s.last_mut().unwrap() = (b.iter().max().unwrap() - b[0]).to_string()
    });
    add("S[1] := S[0]", &|d| d.certificate.s[1] = s[0].to_string());
    add("S[last] := m", &|d| *d.certificate.s.last_mut().unwrap() = m.to_string());
    add("claim += 1", &|d| d.certificate.chromatic_claim += 1);
    add("chi_lower += 1", &|d| d.certificate.chromatic_evidence.chi_lower += 1);
    add("vertex[0] moved", &|d| {
        let v = &mut d.certificate.chromatic_evidence.vertices;
        v[0] = far(&v[0]);
    });
    add("vertex[last] moved", &|d| {
        let v = &mut d.certificate.chromatic_evidence.vertices;
        let x = far(v.last().unwrap());
        *v.last_mut().unwrap() = x;
    });
    add("vertex[1] := vertex[0]", &|d| {
        let v = &mut d.certificate.chromatic_evidence.vertices;
        v[1] = v[0].clone();
    });
    add("edge[0] := loop", &|d| d.certificate.chromatic_evidence.edges[0] = [0, 0]);
    add("edge[0] := edge[1]", &|d| {
        let e = &mut d.certificate.chromatic_evidence.edges;
        e[0] = e[1];
    });
    add("E := powers:3", &|d| d.certificate.e = Some(ESpecDoc::Powers { b: "3".into() }));
    out
}

fn independence(docs: &[(&str, RecurrenceCertificate)]) -> Outcome {
    let bin = env!("CARGO_BIN_EXE_recforge");
    let dir = std::env::temp_dir().join(format!("recforge-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut total = 0;
    for (name, cert) in docs {
        let (doc, _) = make_document("assemble", Default::default(), cert, false);
        let text = doc.to_json();
        verify_text(&text, false).map_err(|(c, m)| format!("{name}: own document fails ({c}) {m}"))?;
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, &text).map_err(|e| e.to_string())?;
        let st = Command::new(bin).arg("verify").arg(&path).output().map_err(|e| e.to_string())?;
        ensure(st.status.code() == Some(0), || format!("{name}: binary verify exit {:?}", st.status.code()))?;
        let small = text.len() < 1 << 20;
        for (what, d) in mutations(&doc) {
            let code = if small {
                let p = dir.join("mutant.json");
                std::fs::write(&p, d.to_json()).map_err(|e| e.to_string())?;
                Command::new(bin).arg("verify").arg(&p).output().map_err(|e| e.to_string())?.status.code()
            } else {
                Some(verify_document(&d, false).err().map_or(0, |e| e.0))
            };
            ensure(code == Some(EXIT_CHECK), || format!("{name}: mutation {what:?} gave exit {code:?}"))?;
            total += 1;
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} documents verified, {total} mutants rejected", docs.len()))
}

fn box_tilings() -> Outcome {
    let mut checks = 0u64;
    for eps in [rat(1, 8), rat(1, 16)] {
        for d in 1..=8u32 {
            let g: Vec<BitVector> = (0..1u64 << d).map(|b| BitVector::new(d, b).unwrap()).collect();
            let tiles = box_tiling(&g, d, &eps).map_err(|e| e.to_string())?;
            ensure(tiles.check_disjoint(), || format!("tiles meet in d={d}"))?;
        }
        for d in 1..=6u32 {
            let n = 1u64 << d;
            let side = Rat::new(1.into(), 2.into()) - Rat::from_integer(2.into()) * &eps;
            let unit_measure = num_traits::pow(side, d as usize);
            let mut sets: Vec<Vec<u64>> = vec![vec![]];
            for size in 1..=4usize.min(n as usize) {
                let mut idx: Vec<u64> = (0..size as u64).collect();
                loop {
                    sets.push(idx.clone());
                    let mut i = size;
                    while i > 0 && idx[i - 1] == n - (size - i + 1) as u64 {
                        i -= 1;
                    }
                    if i == 0 {
                        break;
                    }
                    idx[i - 1] += 1;
                    for j in i..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                }
            }
            for bits in &sets {
                let a: Vec<BitVector> = bits.iter().map(|&b| BitVector::new(d, b).unwrap()).collect();
                for t in 0..n {
                    let t = BitVector::new(d, t).unwrap();
                    ensure(box_intersection_lemma_check(&a, &t, &eps).map_err(|e| e.to_string())?, || {
                        format!("lemma fails for A={bits:?} t={t} eps={eps}")
                    })?;
                    checks += 1;
                }
                if d <= 4 || bits.len() <= 2 {
                    let mu = box_tiling(&a, d, &eps).map_err(|e| e.to_string())?.measure().map_err(|e| e.to_string())?;
                    let want = Rat::from_integer((a.len() as u64).into()) * &unit_measure;
                    ensure(mu == want, || format!("measure of A={bits:?} is {mu}, want {want}"))?;
                }
            }
        }
    }
    Ok(format!("{checks} lemma instances"))
}

fn equidistribution() -> Outcome {
    let a = BoxSet::from_half_open(&[Rat::zero()], &[rat(1, 4)]).map_err(|e| e.to_string())?;
    let golden = AlphaRep::Fixed64(vec![GOLDEN_FRAC_64]);
    let dens = empirical_box_density(&golden, &a, 1_000_000).map_err(|e| e.to_string())?;
    let err = (&dens - rat(1, 4)).abs();
    ensure(err <= rat(5, 1000), || format!("golden density {dens} off by {err}"))?;
    let half = AlphaRep::Exact(TorusPoint::new(vec![rat(1, 2)]).unwrap());
    let d2 = empirical_box_density(&half, &a, 1_000_000).map_err(|e| e.to_string())?;
    ensure(d2 == rat(1, 2), || format!("alpha = 1/2 gives {d2}"))?;
    let approx = dens.numer().to_string().parse::<f64>().unwrap() / dens.denom().to_string().parse::<f64>().unwrap();
    Ok(format!("golden {approx:.6}, alpha = 1/2 gives exactly 1/2"))
}

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Duration,
}

fn main() {
    // optional criterion numbers select a subset; criterion 10 then builds
    // its own documents
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let wanted = |id: usize| only.is_empty() || only.contains(&id);
    let mut failed = 0;
    let mut ran = 0;
    let mut report = |c: Criterion, run: &mut dyn FnMut() -> Outcome| {
        if !wanted(c.id) {
            return;
        }
        ran += 1;
        let t = Instant::now();
        let out = run();
        let el = t.elapsed();
        let (ok, detail) = match out {
            Ok(d) if el <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget {:?}", c.budget)),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!("criterion {:>2} {} {}: {} ({:.2?})", c.id, if ok { "PASS" } else { "FAIL" }, c.name, detail, el);
    };
    let min = |m: u64| Duration::from_secs(60 * m);
    let sec = Duration::from_secs;
    report(Criterion { id: 1, name: "Lovasz formula", budget: min(5) }, &mut lovasz);
    report(Criterion { id: 2, name: "Hamming identities", budget: min(1) }, &mut hamming_identities);
    report(Criterion { id: 3, name: "F2 nonrecurrence witness", budget: sec(10) }, &mut f2_witness);
    report(Criterion { id: 4, name: "Kneser embedding", budget: min(1) }, &mut kneser_embedding);
    report(Criterion { id: 5, name: "two_pieces soundness", budget: min(2) }, &mut two_pieces_soundness);
    let mut docs: Vec<(&str, RecurrenceCertificate)> = Vec::new();
    report(Criterion { id: 6, name: "end-to-end, no E", budget: min(10) }, &mut || {
        let (d, cert) = end_to_end(None)?;
        docs.push(("plain", cert));
        Ok(d)
    });
    report(Criterion { id: 7, name: "end-to-end, E = powers of 2", budget: min(15) }, &mut || {
        let e = ESpec::Powers { b: 2 };
        let (d, cert) = end_to_end(Some(&e))?;
        for &x in &cert.s {
            ensure(power_difference(x), || format!("{x} is not a difference of powers of 2"))?;
        }
        docs.push(("powers", cert));
        Ok(format!("{d}, S in E - E"))
    });
    report(Criterion { id: 8, name: "box tilings", budget: min(2) }, &mut box_tilings);
    report(Criterion { id: 9, name: "equidistribution", budget: sec(10) }, &mut equidistribution);
    if wanted(10) && docs.len() < 2 {
        docs.clear();
        for (name, e) in [("plain", None), ("powers", Some(ESpec::Powers { b: 2 }))] {
            match end_to_end(e.as_ref()) {
                Ok((_, cert)) => docs.push((name, cert)),
                Err(err) => println!("criterion 10 setup failed: {err}"),
            }
        }
    }
    report(Criterion { id: 10, name: "certificate independence", budget: min(1) }, &mut || {
        ensure(docs.len() == 2, || "criteria 6 and 7 produced no documents".into())?;
        independence(&docs)
    });
    println!("acceptance: {} of {ran} passed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
