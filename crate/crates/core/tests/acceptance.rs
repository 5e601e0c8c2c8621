//! Acceptance suite. Every check prints one `PASS`/`FAIL` line, then
//! asserts. The full (6,12) and (4,11) sweeps are `#[ignore]`d; run them
//! with `cargo test --release --test acceptance -- --ignored`.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use facetpath::bounds::BoundsTable;
use facetpath::chirotope::{chirotope_from_points, determinant_sign, homogenize, tau, Chirotope};
use facetpath::encoder::{
    assignment_of, emit_dimacs, encode_gp_axioms, encode_path_on_boundary, VarIndex,
};
use facetpath::pathcomplex::io::CandidateManifest;
use facetpath::pathcomplex::{enumerate_candidates, CandidateSet, CandidateSpec, PathComplex};
use facetpath::prover::{prove_instance, BackendConfig, Limits, Mode, Status};
use facetpath::shortcuts::{enumerate_inclusion_minimal, Graph};

const BIN: &str = env!("CARGO_BIN_EXE_facetpath");
const INSTANCE_BUDGET: Duration = Duration::from_secs(2 * 3600);

// Written to the raw handle so the line survives libtest's output capture.
fn verdict(name: &str, ok: bool, detail: impl std::fmt::Display) {
    let _ = writeln!(std::io::stdout(), "{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name}: {detail}");
}

fn pairs(line: &str) -> BTreeSet<(u32, u32)> {
    line.split_whitespace()
        .map(|t| {
            let (l, e) = t.trim_matches(|c| c == '(' || c == ')').split_once(',').unwrap();
            (l.parse().unwrap(), e.parse().unwrap())
        })
        .collect()
}

const SIX_TWELVE: [&str; 10] = [
    "(1,7) (2,8) (7,9) (3,10) (4,7) (5,11) (6,12)",
    "(1,7) (2,8) (7,9) (3,10) (4,11) (5,7) (6,12)",
    "(1,7) (2,8) (7,9) (3,10) (4,11) (5,12) (6,7)",
    "(1,7) (2,8) (3,9) (7,10) (4,11) (5,7) (6,12)",
    "(1,7) (2,8) (3,9) (7,10) (4,11) (5,12) (6,7)",
    "(1,7) (2,8) (3,9) (8,10) (4,11) (5,8) (6,12)",
    "(1,7) (2,8) (3,9) (8,10) (4,11) (5,12) (6,8)",
    "(1,7) (2,8) (3,9) (4,10) (7,11) (5,12) (6,7)",
    "(1,7) (2,8) (3,9) (4,10) (8,11) (5,12) (6,8)",
    "(1,7) (2,8) (3,9) (4,10) (9,11) (5,12) (6,9)",
];

fn candidates(d: usize, n: usize, revisits: Vec<usize>) -> CandidateSet {
    enumerate_candidates(&CandidateSpec::new(d, n, 7, revisits), &BoundsTable::known()).unwrap()
}

fn instance(set: &CandidateSet, index: usize) -> PathComplex {
    set.sequences().nth(index - 1).unwrap().to_path_complex(set.spec.n).unwrap()
}

fn refute(pc: &PathComplex, mode: Mode) -> (Status, Duration, usize) {
    let limits = Limits { time_limit: Some(INSTANCE_BUDGET), ..Limits::default() };
    let start = Instant::now();
    let v = prove_instance(pc, mode, &BackendConfig::Embedded, &limits).unwrap();
    (v.status, start.elapsed(), v.added_cuts)
}

#[test]
fn enumeration_six_twelve() {
    let start = Instant::now();
    let out = Command::new(BIN)
        .args(["enumerate", "--d", "6", "--n", "12", "--length", "7", "--revisits", "1"])
        .output()
        .unwrap();
    let elapsed = start.elapsed();
    assert!(out.status.success());
    let got: BTreeSet<BTreeSet<(u32, u32)>> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(pairs)
        .collect();
    let want: BTreeSet<_> = SIX_TWELVE.iter().map(|l| pairs(l)).collect();
    verdict(
        "enumeration (6,12)",
        got == want && elapsed < Duration::from_secs(1),
        format!("{} sequences, {} expected, exact match {}, {elapsed:.2?}", got.len(), want.len(), got == want),
    );
}

#[test]
fn enumeration_four_eleven() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("manifest.json");
    let start = Instant::now();
    let out = Command::new(BIN)
        .args(["enumerate", "--d", "4", "--n", "11", "--length", "7", "--revisits", "0..3", "--manifest"])
        .arg(&manifest)
        .output()
        .unwrap();
    let elapsed = start.elapsed();
    assert!(out.status.success());
    let m: CandidateManifest = serde_json::from_str(&std::fs::read_to_string(&manifest).unwrap()).unwrap();
    let got: Vec<usize> = m.classes.iter().map(|c| c.count).collect();
    let want = vec![35, 185, 354, 96];
    verdict(
        "enumeration (4,11)",
        got == want && elapsed < Duration::from_secs(10),
        format!("class counts {got:?}, expected {want:?}, {elapsed:.2?}"),
    );
}

fn binomial_u128(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (1..=k).fold(1, |acc, i| acc * (n - k + i) / i)
}

#[test]
fn clause_count_identity() {
    let mut lines = Vec::new();
    let mut ok = true;
    for (n, r) in [(8usize, 4usize), (11, 5), (12, 7)] {
        let f = encode_gp_axioms(n, r);
        let mut buf = Vec::new();
        emit_dimacs(&f, Some(&VarIndex::new(n, r)), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let header = text.lines().find(|l| l.starts_with("p cnf")).unwrap();
        let nums: Vec<u128> = header.split_whitespace().skip(2).map(|t| t.parse().unwrap()).collect();
        let (n128, r128) = (n as u128, r as u128);
        let clauses = 16 * binomial_u128(n128, r128 - 2) * binomial_u128(n128 - r128 + 2, 4);
        let vars = binomial_u128(n128, r128);
        let body = text.lines().filter(|l| !l.starts_with('c') && !l.starts_with('p')).count() as u128;
        ok &= nums == [vars, clauses] && body == clauses;
        lines.push(format!("({n},{r}) {}/{} vars {}/{}", nums[1], clauses, nums[0], vars));
    }
    verdict("GP clause count", ok, lines.join("; "));
}

#[test]
fn refutes_six_twelve_first_instance_lazy() {
    let set = candidates(6, 12, vec![1]);
    let (status, t, cuts) = refute(&instance(&set, 1), Mode::Lazy);
    verdict(
        "(6,12) instance 1, lazy",
        status == Status::Unsat && t <= INSTANCE_BUDGET,
        format!("{status:?} after {cuts} cuts in {t:.1?}"),
    );
}

#[test]
#[ignore = "extended: all ten (6,12) instances"]
fn refutes_six_twelve_full_sweep_lazy() {
    let set = candidates(6, 12, vec![1]);
    for i in 1..=set.count() {
        let (status, t, cuts) = refute(&instance(&set, i), Mode::Lazy);
        verdict(
            &format!("(6,12) instance {i}, lazy"),
            status == Status::Unsat && t <= INSTANCE_BUDGET,
            format!("{status:?} after {cuts} cuts in {t:.1?}"),
        );
    }
}

/// First instance of each revisit class plus the last one.
fn four_eleven_samples(set: &CandidateSet) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut index = 1;
    for c in &set.classes {
        if !c.sequences.is_empty() {
            out.push((index, c.revisits));
        }
        index += c.sequences.len();
    }
    let last = set.classes.iter().rev().find(|c| !c.sequences.is_empty()).unwrap();
    out.push((set.count(), last.revisits));
    out
}

#[test]
fn refutes_four_eleven_samples() {
    let set = candidates(4, 11, vec![0, 1, 2, 3]);
    for (i, r) in four_eleven_samples(&set) {
        let (status, t, cuts) = refute(&instance(&set, i), Mode::Lazy);
        verdict(
            &format!("(4,11) instance {i} ({r} revisits), lazy"),
            status == Status::Unsat && t <= INSTANCE_BUDGET,
            format!("{status:?} after {cuts} cuts in {t:.1?}"),
        );
    }
}

#[test]
#[ignore = "extended: every (4,11) instance"]
fn refutes_four_eleven_full_sweep() {
    let set = candidates(4, 11, vec![0, 1, 2, 3]);
    let mut failed = Vec::new();
    let start = Instant::now();
    for i in 1..=set.count() {
        let (status, t, _) = refute(&instance(&set, i), Mode::Lazy);
        if status != Status::Unsat || t > INSTANCE_BUDGET {
            failed.push(i);
        }
    }
    verdict(
        "(4,11) all instances, lazy",
        failed.is_empty(),
        format!("{} instances, not refuted {failed:?}, {:.0?}", set.count(), start.elapsed()),
    );
}

fn hull_facets(hom: &[Vec<i64>], d: usize) -> Vec<Vec<u32>> {
    let n = hom.len() as u32;
    let mut out = Vec::new();
    let mut stack = vec![(Vec::<u32>::new(), 1u32)];
    while let Some((f, from)) = stack.pop() {
        if f.len() == d {
            let sides: BTreeSet<i8> = (1..=n)
                .filter(|e| !f.contains(e))
                .map(|e| {
                    let cols: Vec<&[i64]> = f.iter().chain([&e]).map(|&i| hom[i as usize - 1].as_slice()).collect();
                    determinant_sign(&cols)
                })
                .collect();
            if sides.len() == 1 {
                out.push(f);
            }
            continue;
        }
        for x in from..=n {
            let mut g = f.clone();
            g.push(x);
            stack.push((g, x + 1));
        }
    }
    out.sort();
    out
}

fn geodesic(facets: &[Vec<u32>], a: &[u32], b: &[u32]) -> Option<Vec<Vec<u32>>> {
    let adjacent = |x: &[u32], y: &[u32]| x.iter().filter(|e| y.contains(e)).count() + 1 == x.len();
    let mut prev: BTreeMap<&[u32], &[u32]> = BTreeMap::new();
    prev.insert(a, a);
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            let mut path = vec![x.to_vec()];
            let mut cur = x;
            while cur != a {
                cur = prev[cur];
                path.push(cur.to_vec());
            }
            path.reverse();
            return Some(path);
        }
        for y in facets {
            if !prev.contains_key(y.as_slice()) && adjacent(x, y) {
                prev.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    None
}

#[test]
fn encoder_soundness_on_point_configurations() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut configs, mut paths, mut bad) = (0, 0, Vec::new());
    while configs < 120 {
        let r = if configs % 2 == 0 { 3 } else { 4 };
        let n = rng.gen_range(r + 2..=8);
        let pts: Vec<Vec<i64>> = (0..n).map(|_| (0..r - 1).map(|_| rng.gen_range(-40..=40)).collect()).collect();
        let hom = homogenize(&pts);
        let Ok(chi) = chirotope_from_points(&hom) else { continue };
        configs += 1;
        let model = assignment_of(&chi);
        let gp = encode_gp_axioms(n, r);
        if gp.first_falsified(&model).is_some() {
            bad.push(format!("GP clause falsified for {pts:?}"));
        }
        let d = r - 1;
        let facets = hull_facets(&hom, d);
        let vars = VarIndex::new(n, r);
        for a in &facets {
            for b in &facets {
                if a >= b || a.iter().any(|x| b.contains(x)) {
                    continue;
                }
                let Some(path) = geodesic(&facets, a, b) else { continue };
                let pc = PathComplex::new(d, n, path).unwrap();
                let units = encode_path_on_boundary(&pc, &vars).unwrap();
                let plus = units.first_falsified(&model).is_none();
                let minus = units.first_falsified(&assignment_of(&chi.negate())).is_none();
                paths += 1;
                if plus == minus {
                    bad.push(format!("path units on {:?} for {pts:?}", pc.facets()));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        "encoder soundness",
        bad.is_empty() && paths > 0 && elapsed < Duration::from_secs(60),
        format!("{configs} configurations, {paths} boundary paths, {} failures, {elapsed:.1?}", bad.len()),
    );
}

struct Adjacency(Vec<Vec<bool>>);

impl Graph for Adjacency {
    type Node = usize;

    fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.0.len()).filter(|&w| self.0[v][w]).collect()
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.0[a][b]
    }
}

/// No proper subset of the path's vertices carries an s–t path: for a
/// simple path this is the absence of chords.
fn inclusion_minimal(g: &Adjacency, path: &[usize]) -> bool {
    let k = path.len();
    (1..1u32 << k).all(|mask| {
        let full = mask == (1 << k) - 1;
        let keeps_ends = mask & 1 == 1 && mask >> (k - 1) & 1 == 1;
        if full || !keeps_ends {
            return true;
        }
        let sub: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| path[i]).collect();
        // is there an s–t path inside `sub`?
        let mut seen = vec![sub[0]];
        let mut i = 0;
        while i < seen.len() {
            let v = seen[i];
            for &w in &sub {
                if g.adjacent(v, w) && !seen.contains(&w) {
                    seen.push(w);
                }
            }
            i += 1;
        }
        !seen.contains(&path[k - 1])
    })
}

fn simple_paths(g: &Adjacency, s: usize, t: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![s]];
    while let Some(p) = stack.pop() {
        let end = *p.last().unwrap();
        if end == t {
            out.push(p);
            continue;
        }
        if p.len() > max_len {
            continue;
        }
        for w in g.neighbors(end) {
            if !p.contains(&w) {
                let mut q = p.clone();
                q.push(w);
                stack.push(q);
            }
        }
    }
    out
}

#[test]
fn shortcut_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut mismatches = 0;
    let mut total = 0;
    for _ in 0..50 {
        let n = rng.gen_range(3..=10);
        let p = rng.gen_range(0.15..0.7);
        let mut m = vec![vec![false; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let e = rng.gen_bool(p);
                m[i][j] = e;
                m[j][i] = e;
            }
        }
        let g = Adjacency(m);
        let max_len = rng.gen_range(1..n);
        let mut lib = enumerate_inclusion_minimal(&g, 0, n - 1, max_len);
        let mut brute: Vec<Vec<usize>> = simple_paths(&g, 0, n - 1, max_len)
            .into_iter()
            .filter(|p| inclusion_minimal(&g, p))
            .collect();
        lib.sort();
        brute.sort();
        total += brute.len();
        if lib != brute {
            mismatches += 1;
        }
    }
    verdict("shortcut oracle", mismatches == 0, format!("50 graphs, {total} paths, {mismatches} mismatching graphs"));
}

#[test]
fn eager_and_lazy_agree_on_first_instance() {
    let pc = instance(&candidates(6, 12, vec![1]), 1);
    let (lazy, tl, _) = refute(&pc, Mode::Lazy);
    let (eager, te, _) = refute(&pc, Mode::Eager);
    verdict(
        "(6,12) instance 1, eager vs lazy",
        lazy == Status::Unsat && eager == Status::Unsat,
        format!("lazy {lazy:?} in {tl:.1?}, eager {eager:?} in {te:.1?}"),
    );
}

#[test]
#[ignore = "extended: eager mode on all ten (6,12) instances"]
fn eager_and_lazy_agree_full_sweep() {
    let set = candidates(6, 12, vec![1]);
    for i in 1..=set.count() {
        let pc = instance(&set, i);
        let (lazy, tl, _) = refute(&pc, Mode::Lazy);
        let (eager, te, _) = refute(&pc, Mode::Eager);
        verdict(
            &format!("(6,12) instance {i}, eager vs lazy"),
            lazy == Status::Unsat && eager == Status::Unsat,
            format!("lazy {lazy:?} in {tl:.1?}, eager {eager:?} in {te:.1?}"),
        );
    }
}

#[test]
fn bounds_tables() {
    let start = Instant::now();
    let before = BoundsTable::known().render(4..=7, 4..=7);
    let after = BoundsTable::with_computed().render(4..=7, 4..=7);
    let elapsed = start.elapsed();
    let want_before = &r"
 d\s       4       5       6       7
   4       4       5       5   {6,7}
   5       4       5       6   [7,9]
   6       4       5   {6,7}   [7,9]
   7       4       5   {6,7}  [7,10]
"[1..];
    let want_after = &r"
 d\s       4       5       6       7
   4       4       5       5       6
   5       4       5       6   {7,8}
   6       4       5       6   [7,9]
   7       4       5       6  [7,10]
"[1..];
    let tightened = BoundsTable::known().interval(5, 12).map(|i| i.notation())
        == Some("[7,9]".into())
        && BoundsTable::with_computed().interval(5, 12).map(|i| i.notation()) == Some("{7,8}".into());
    verdict(
        "bounds tables",
        before == want_before && after == want_after && tightened && elapsed < Duration::from_secs(1),
        format!(
            "known table {}, computed table {}, (5,12) tightening {}, {elapsed:.2?}",
            before == want_before,
            after == want_after,
            tightened
        ),
    );
}

fn inversion_parity(y: &[u32]) -> i8 {
    // parity through cycle decomposition of the sorting permutation
    let mut sorted = y.to_vec();
    sorted.sort_unstable();
    let target: Vec<usize> = y.iter().map(|v| sorted.binary_search(v).unwrap()).collect();
    let mut seen = vec![false; y.len()];
    let mut transpositions = 0;
    for i in 0..y.len() {
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = target[j];
            len += 1;
        }
        transpositions += len.max(1) - 1;
    }
    if transpositions % 2 == 0 { 1 } else { -1 }
}

fn permutations(k: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for at in 0..=p.len() {
            let mut q = p.clone();
            q.insert(at, k);
            out.push(q);
        }
    }
    out
}

/// Three-term relations straight from the alternating map.
fn gp_by_definition(chi: &Chirotope) -> bool {
    let (n, r) = (chi.n() as u32, chi.r());
    let mut ok = true;
    let all: Vec<u32> = (1..=n).collect();
    let mut sigmas = vec![Vec::new()];
    for _ in 0..r - 2 {
        sigmas = sigmas
            .into_iter()
            .flat_map(|s: Vec<u32>| {
                let from = s.last().map_or(1, |&x| x + 1);
                (from..=n).map(move |x| [s.clone(), vec![x]].concat())
            })
            .collect();
    }
    for sigma in &sigmas {
        let rest: Vec<u32> = all.iter().copied().filter(|x| !sigma.contains(x)).collect();
        for a in 0..rest.len() {
            for b in a + 1..rest.len() {
                for c in b + 1..rest.len() {
                    for d in c + 1..rest.len() {
                        let x = [rest[a], rest[b], rest[c], rest[d]];
                        let ev = |i: usize, j: usize| chi.evaluate(&[sigma.clone(), vec![x[i], x[j]]].concat()).unwrap();
                        let terms = [ev(0, 1) * ev(2, 3), -ev(0, 2) * ev(1, 3), ev(0, 3) * ev(1, 2)];
                        ok &= !(terms[0] == terms[1] && terms[1] == terms[2]);
                    }
                }
            }
        }
    }
    ok
}

#[test]
fn chirotope_invariants() {
    let start = Instant::now();
    let mut failures = Vec::new();
    // parity laws over every permutation of up to 7 symbols
    for k in 0..=7 {
        for p in permutations(k) {
            if tau(&p).unwrap() != inversion_parity(&p) {
                failures.push(format!("tau {p:?}"));
            }
            for i in 1..p.len() {
                let mut q = p.clone();
                q.swap(i - 1, i);
                if tau(&q).unwrap() != -tau(&p).unwrap() {
                    failures.push(format!("transposition {p:?}"));
                }
            }
        }
    }
    // axioms, alternation and negation on every sign vector of small rank-2/3 cases
    let mut checked = 0;
    for (n, r) in [(4usize, 2usize), (5, 2), (5, 3)] {
        let m = facetpath::combinatorics::binomial(n, r) as u32;
        for bits in 0..1u32 << m {
            let signs: Vec<i8> = (0..m).map(|i| if bits >> i & 1 == 1 { 1 } else { -1 }).collect();
            let chi = Chirotope::new(n, r, signs).unwrap();
            checked += 1;
            if chi.verify_axioms() != gp_by_definition(&chi) {
                failures.push(format!("axioms {n},{r} {bits:b}"));
            }
            let neg = chi.negate();
            if chi.facets_of() != neg.facets_of() || chi.verify_axioms() != neg.verify_axioms() {
                failures.push(format!("negation {n},{r} {bits:b}"));
            }
        }
    }
    // alternation on every ordered tuple, and realizable configurations
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut realized = 0;
    while realized < 40 {
        let pts: Vec<Vec<i64>> = (0..7).map(|_| (0..3).map(|_| rng.gen_range(-20..=20)).collect()).collect();
        let Ok(chi) = chirotope_from_points(&homogenize(&pts)) else { continue };
        realized += 1;
        if !chi.verify_axioms() || !gp_by_definition(&chi) {
            failures.push(format!("realizable {pts:?}"));
        }
        for p in permutations(4) {
            for base in [[1u32, 2, 3, 4], [2, 4, 6, 7], [1, 3, 5, 7]] {
                let y: Vec<u32> = p.iter().map(|&i| base[i as usize - 1]).collect();
                if chi.evaluate(&y).unwrap() != inversion_parity(&y) * chi.evaluate(&base).unwrap() {
                    failures.push(format!("alternation {y:?}"));
                }
            }
        }
        if chi.facets_of() != chi.negate().facets_of() {
            failures.push("negation of a realizable chirotope".into());
        }
    }
    let elapsed = start.elapsed();
    verdict(
        "chirotope invariants",
        failures.is_empty() && elapsed < Duration::from_secs(60),
        format!("{checked} exhaustive sign vectors, {realized} realizable, {} failures, {elapsed:.1?}", failures.len()),
    );
}
