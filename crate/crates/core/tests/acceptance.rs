//! The eight acceptance criteria, each run against its time bound. Prints
//! one PASS/FAIL line per criterion and exits non-zero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{members, set_of, Classical, Raw, Set};
use lcr_core::axioms::verify_lcr;
use lcr_core::corpus::{corpus, r4, r4_without_local_identity, r8};
use lcr_core::dsl::parse;
use lcr_core::ideal::{enumerate_ideals, nilradical, radical, radical_with};
use lcr_core::morphism::enumerate_homs;
use lcr_core::prime::{is_hu_liu_prime, spectrum};
use lcr_core::replay::{composition_checks, hom_checks, prime_checks, radical_checks, topology_checks, Analysis, Checks, SpaceCache};
use lcr_core::topology::{phi0_of, phi1_of, SpectralSpace};
use lcr_core::workspace::{DslError, Failure};
use lcr_core::LcrTable;

type Corpus = Vec<(String, LcrTable)>;
type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, u64, Box<dyn Fn() -> Verdict + 'a>);

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn require_all(name: &str, checks: &Checks) -> Result<usize, String> {
    if let Some((check, cert)) = checks.failures().next() {
        return Err(format!("{name}: {check} fails: {cert:?}"));
    }
    Ok(checks.results().iter().map(|r| r.cases).sum())
}

fn ideal_sets(rng: &LcrTable) -> Vec<Set> {
    enumerate_ideals(rng).iter().map(|i| set_of(i.members())).collect()
}

/// A copy of `rng` with one product or local-product entry replaced, keeping
/// the designated left identity, halo and local identity.
fn mutant(rng: &LcrTable, mul: Vec<usize>, local: Vec<usize>) -> LcrTable {
    LcrTable::from_parts(
        rng.carrier().clone(),
        mul,
        rng.left_identity(),
        rng.halo().to_vec(),
        local,
        rng.local_identity(),
    )
    .expect("shapes are unchanged")
}

/// Every reported witness must violate its law according to the oracle.
fn witnesses_confirmed(rng: &LcrTable) -> Result<bool, String> {
    let report = verify_lcr(rng);
    let raw = Raw::of(rng);
    for (axiom, w) in report.failures() {
        ensure(raw.violates(w.law.name(), &w.elements), || format!("{axiom} witness {:?} does not replay", w))?;
    }
    ensure(report.all_hold() == raw.axioms_hold(), || {
        format!("verifier says {} but the oracle says {}", report.all_hold(), raw.axioms_hold())
    })?;
    Ok(report.all_hold())
}

fn criterion_1(corpus: &Corpus) -> Verdict {
    for (name, rng) in corpus {
        ensure(verify_lcr(rng).all_hold(), || format!("{name} fails the axioms"))?;
        ensure(Raw::of(rng).axioms_hold(), || format!("{name} fails the oracle axioms"))?;
    }

    let bad = r4_without_local_identity();
    let report = verify_lcr(&bad);
    let w = report.local_ring.as_ref().ok_or("missing local identity not detected")?;
    ensure(w.law.name() == "local_identity", || format!("wrong law {:?}", w.law))?;
    ensure(Raw::of(&bad).violates("local_identity", &w.elements), || "witness does not replay".into())?;

    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/r4_no_local_identity.lcr");
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    match parse(&text) {
        Err(DslError::Verification { failure: Failure::Axiom { law, replays: true, .. }, .. }) if law == "local_identity" => {}
        other => return Err(format!("mutated fixture file: {other:?}")),
    }

    let (mut rejected, mut accepted) = (0, 0);
    for base in [r4(), r8(), lcr_core::corpus::diagonal_extension()] {
        let n = base.order();
        for i in 0..base.mul_table().len() {
            for v in (0..n).filter(|&v| v != base.mul_table()[i]) {
                let mut mul = base.mul_table().to_vec();
                mul[i] = v;
                let m = mutant(&base, mul, base.local_mul_table().to_vec());
                if witnesses_confirmed(&m)? { accepted += 1 } else { rejected += 1 }
            }
        }
        for i in 0..base.local_mul_table().len() {
            for v in (0..n).filter(|&v| v != base.local_mul_table()[i]) {
                let mut local = base.local_mul_table().to_vec();
                local[i] = v;
                let m = mutant(&base, base.mul_table().to_vec(), local);
                if witnesses_confirmed(&m)? { accepted += 1 } else { rejected += 1 }
            }
        }
    }
    ensure(rejected > 0, || "no mutant was rejected".into())?;
    Ok(format!("{} rngs pass; {rejected} mutants rejected with confirmed witnesses, {accepted} accepted by both", corpus.len()))
}

fn criterion_2() -> Verdict {
    // R4: elements (a, α) with index 2a + α
    let r = r4();
    let raw = Raw::of(&r);
    let ideals = ideal_sets(&r);
    ensure(ideals == raw.ideals(), || format!("R4 ideals {ideals:?} vs oracle {:?}", raw.ideals()))?;
    ensure(ideals == vec![set_of(&[0]), set_of(&[0, 1]), set_of(&[0, 1, 2, 3])], || format!("R4 ideals {ideals:?}"))?;
    let spec = spectrum(&r);
    let (even, odd): (Vec<Set>, Vec<Set>) =
        (spec.even.iter().map(|p| set_of(p.members())).collect(), spec.odd.iter().map(|p| set_of(p.members())).collect());
    ensure(even == vec![set_of(&[0, 1])] && odd == vec![set_of(&[0])], || format!("R4 spectrum {even:?} {odd:?}"))?;
    let mut oracle_spec = raw.spectrum();
    let mut lib_spec: Vec<Set> = even.iter().chain(&odd).copied().collect();
    oracle_spec.sort();
    lib_spec.sort();
    ensure(oracle_spec == lib_spec, || "R4 spectrum disagrees with the oracle".into())?;

    // R8: elements (a, α) with a in Z/4, index 2a + α
    let r = r8();
    let raw = Raw::of(&r);
    let ideals = ideal_sets(&r);
    ensure(ideals == raw.ideals(), || "R8 ideals disagree with the oracle".into())?;
    ensure(ideals.len() == 5, || format!("R8 has {} ideals", ideals.len()))?;
    let two_zero = set_of(&[0, 4]);
    let two_h = set_of(&[0, 1, 4, 5]);
    ensure(
        ideals == vec![set_of(&[0]), set_of(&[0, 1]), two_zero, two_h, r8_full()],
        || format!("R8 ideals {:?}", ideals.iter().map(|&s| members(s)).collect::<Vec<_>>()),
    )?;
    let spec = spectrum(&r);
    let even: Vec<Set> = spec.even.iter().map(|p| set_of(p.members())).collect();
    let odd: Vec<Set> = spec.odd.iter().map(|p| set_of(p.members())).collect();
    ensure(even == vec![two_h] && odd == vec![two_zero], || format!("R8 spectrum {even:?} {odd:?}"))?;
    let mut oracle_spec = raw.spectrum();
    oracle_spec.sort();
    let mut lib_spec = vec![two_zero, two_h];
    lib_spec.sort();
    ensure(oracle_spec == lib_spec, || "R8 spectrum disagrees with the oracle".into())?;
    let nil = set_of(nilradical(&r).map_err(|e| e.to_string())?.members());
    let oracle_nil = set_of(&(0..8).filter(|&x| raw.is_nilpotent(x, raw.e)).collect::<Vec<_>>());
    ensure(nil == two_zero && oracle_nil == two_zero, || format!("R8 nilradical {nil:b}, oracle {oracle_nil:b}"))?;
    ensure(r.render(4) == "(2,0)", || "R8 coordinates".into())?;
    Ok("R4: 3 ideals, 1 even + 1 odd prime; R8: 5 ideals, spectrum {(2)+0, (2)+H}, nilradical {(0,0),(2,0)}".into())
}

fn r8_full() -> Set {
    set_of(&(0..8).collect::<Vec<_>>())
}

fn criterion_3(corpus: &Corpus) -> Verdict {
    let mut cases = 0;
    let mut ideals = 0;
    for (name, rng) in corpus {
        let analysis = Analysis::new(rng);
        cases += require_all(name, &prime_checks(&analysis))?;
        let raw = Raw::of(rng);
        for ideal in &analysis.space.ideals {
            ideals += 1;
            let lib = is_hu_liu_prime(rng, ideal).unwrap_or(false);
            let oracle = raw.is_prime(set_of(ideal.members()));
            ensure(lib == oracle, || format!("{name}: {:?} prime={lib}, oracle={oracle}", ideal.members()))?;
        }
    }
    Ok(format!("{ideals} ideals, {cases} criterion cases, no disagreement"))
}

fn criterion_4(corpus: &Corpus) -> Verdict {
    let mut cases = 0;
    for (name, rng) in corpus {
        let analysis = Analysis::new(rng);
        cases += require_all(name, &radical_checks(&analysis).map_err(|e| e.to_string())?)?;
        let raw = Raw::of(rng);
        let bars = raw.bar_units();
        let nil_sets: Vec<Set> = bars
            .iter()
            .map(|&b| set_of(&(0..raw.n).filter(|&x| raw.is_nilpotent(x, b)).collect::<Vec<_>>()))
            .collect();
        ensure(nil_sets.windows(2).all(|w| w[0] == w[1]), || format!("{name}: nilpotency depends on the bar-unit"))?;
        let spec = raw.spectrum();
        let meet = spec.iter().fold(raw.full(), |acc, &p| acc & p);
        let nil = set_of(nilradical(rng).map_err(|e| e.to_string())?.members());
        ensure(nil == nil_sets[0] && nil == meet, || format!("{name}: nilradical {nil:b}, oracle {:b}, meet {meet:b}", nil_sets[0]))?;
        for ideal in &analysis.space.ideals {
            let i = set_of(ideal.members());
            if i == raw.full() {
                continue;
            }
            let rad = set_of(radical(rng, ideal).map_err(|e| e.to_string())?.members());
            let meet = spec.iter().filter(|&&p| p & i == i).fold(raw.full(), |acc, &p| acc & p);
            let oracle = raw.radical(i, raw.e);
            ensure(rad == meet && rad == oracle, || format!("{name}: radical of {:?}", members(i)))?;
            for &b in &bars {
                let with_b = set_of(radical_with(rng, ideal, b).map_err(|e| e.to_string())?.members());
                ensure(with_b == raw.radical(i, b), || format!("{name}: radical against bar-unit {b}"))?;
            }
        }
    }
    Ok(format!("{cases} cases, exact set equality"))
}

fn criterion_5(corpus: &Corpus) -> Verdict {
    let mut cases = 0;
    for (name, rng) in corpus {
        let analysis = Analysis::new(rng);
        cases += require_all(name, &topology_checks(&analysis).map_err(|e| e.to_string())?)?;
        for (which, map) in [("phi0", phi0_of(rng, &analysis.space)), ("phi1", phi1_of(rng, &analysis.space))] {
            let map = map.map_err(|e| format!("{name}: {which}: {e}"))?;
            ensure(map.is_bijective() && map.is_continuous() && map.is_homeomorphism(), || format!("{name}: {which}"))?;
        }
    }
    Ok(format!("{cases} cases, every subset of every ideal list"))
}

fn criterion_6(corpus: &Corpus) -> Verdict {
    let members: Vec<Arc<LcrTable>> =
        corpus.iter().filter(|(_, r)| r.order() <= 8).map(|(_, r)| Arc::new(r.clone())).collect();
    let mut homs = Vec::new();
    for r in &members {
        for s in &members {
            homs.extend(enumerate_homs(r, s));
        }
    }
    let mut cache = SpaceCache::default();
    let mut cases = 0;
    for f in &homs {
        cases += require_all("hom", &hom_checks(f, &mut cache).map_err(|e| e.to_string())?)?;
    }
    let mut pairs = 0;
    for f in &homs {
        for g in homs.iter().filter(|g| Arc::ptr_eq(g.domain(), f.codomain())) {
            pairs += 1;
            cases += require_all("composite", &composition_checks(f, g, &mut cache).map_err(|e| e.to_string())?)?;
        }
    }
    Ok(format!("{} homs, {pairs} composable pairs, {cases} cases", homs.len()))
}

fn criterion_7(corpus: &Corpus) -> Verdict {
    let mut count = 0;
    for (name, rng) in corpus.iter().filter(|(_, r)| r.halo().len() == 1) {
        count += 1;
        let raw = Raw::of(rng);
        let classical = Classical(&raw);
        ensure(ideal_sets(rng) == classical.ideals(), || format!("{name}: ideals"))?;
        let space = SpectralSpace::of(rng);
        let mut lib: Vec<Set> = space.points.iter().map(|p| set_of(p.members())).collect();
        let mut oracle = classical.spectrum();
        lib.sort();
        oracle.sort();
        ensure(lib == oracle, || format!("{name}: spectrum"))?;
        let nil = set_of(nilradical(rng).map_err(|e| e.to_string())?.members());
        ensure(nil == classical.nilradical(), || format!("{name}: nilradical"))?;
        for ideal in &space.ideals {
            let rad = set_of(radical(rng, ideal).map_err(|e| e.to_string())?.members());
            ensure(rad == classical.radical(set_of(ideal.members())), || format!("{name}: radical"))?;
        }
        let as_primes = |closed: &[Vec<usize>], points: &[Set]| {
            let mut out: Vec<Vec<Set>> = closed
                .iter()
                .map(|c| {
                    let mut s: Vec<Set> = c.iter().map(|&i| points[i]).collect();
                    s.sort();
                    s
                })
                .collect();
            out.sort();
            out
        };
        let lib_points: Vec<Set> = space.points.iter().map(|p| set_of(p.members())).collect();
        let oracle_points = classical.spectrum();
        let lib_closed = as_primes(space.topology.closed_sets(), &lib_points);
        let oracle_closed = as_primes(&classical.zariski(&oracle_points), &oracle_points);
        ensure(lib_closed == oracle_closed, || format!("{name}: topology"))?;
    }
    Ok(format!("{count} zero-halo rngs match the classical oracle"))
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_lcr")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_8() -> Verdict {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let fixture = |f: &str| root.join("fixtures").join(f).to_string_lossy().into_owned();
    let golden = |f: &str| std::fs::read(root.join("tests/golden").join(f)).map_err(|e| format!("{f}: {e}"));
    for (file, gold) in [("r4.lcr", "check_r4.json"), ("r8.lcr", "check_r8.json")] {
        let (code, first) = run_cli(&["check", &fixture(file), "R"]);
        let (_, second) = run_cli(&["check", &fixture(file), "R"]);
        ensure(code == 0, || format!("check {file} exited {code}"))?;
        ensure(first == second, || format!("check {file} is not byte-stable"))?;
        ensure(first == golden(gold)?, || format!("check {file} differs from {gold}"))?;
    }
    let (code, out) = run_cli(&["check", &fixture("r4_no_local_identity.lcr"), "R"]);
    ensure(code == 1, || format!("mutated fixture exited {code}"))?;
    ensure(out == golden("reject_r4_no_local_identity.json")?, || "mutated fixture output differs".into())?;
    let report: serde_json::Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    ensure(report["failure"]["law"] == "local_identity" && report["failure"]["replays"] == true, || {
        format!("unexpected failure {}", report["failure"])
    })?;
    Ok("R4 and R8 exit 0 byte-stable; mutated fixture exits 1 with the local-identity witness".into())
}

fn main() {
    let start = Instant::now();
    let corpus = corpus();
    println!("corpus: {} rngs built in {} ms", corpus.len(), start.elapsed().as_millis());

    let criteria: Vec<Criterion> = vec![
        ("axiom suite", 1, Box::new(|| criterion_1(&corpus))),
        ("fixture exactness", 1, Box::new(criterion_2)),
        ("prime characterizations agree", 5, Box::new(|| criterion_3(&corpus))),
        ("nilpotency and radicals", 5, Box::new(|| criterion_4(&corpus))),
        ("closed sets and homeomorphisms", 5, Box::new(|| criterion_5(&corpus))),
        ("pullbacks and functoriality", 10, Box::new(|| criterion_6(&corpus))),
        ("classical degeneration", 1, Box::new(|| criterion_7(&corpus))),
        ("CLI golden files", 1, Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (i, (title, bound, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = t.elapsed();
        let in_time = elapsed < Duration::from_secs(*bound);
        let (status, detail) = match (&verdict, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over time bound; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {} {title}: {status} in {} ms (bound {} s): {detail}", i + 1, elapsed.as_millis(), bound);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
