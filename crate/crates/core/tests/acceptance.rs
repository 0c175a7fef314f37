//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use phibeta::harness::{enumerate_words, scan, ScanConfig};
use phibeta::oracle::{exact_expectation, monte_carlo_expectation};
use phibeta::pairgraph::{expected_component_count, verify_bijection, PairGraph};
use phibeta::quotients::{self, classify_type, enumerate_qw, min_generating_set_brute, DEFAULT_FULL_CAP};
use phibeta::series::{self, expected_fixed_points, phi_function, series_coeffs};
use phibeta::{EnumerationMode, Level, Letter, OpenTrail, Partition, QuotientType, Word};

const ORACLE_BUDGET: u128 = 50_000_000;
const MC_WORD: &str = "abAB";
const MC_N: usize = 50;
const MC_SAMPLES: u64 = 100_000;
const MC_SEED: u64 = 20_240_601;
const MC_SIGMAS: f64 = 5.0;
const INVARIANCE_WORDS: usize = 100;
const INVARIANCE_SEED: u64 = 7;
const FOLD_ORDERS: usize = 10;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn w(s: &str) -> Word {
    Word::parse(s, None).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_words(k: u8, max_len: usize) -> Vec<Word> {
    let mut cfg = ScanConfig::new(k, max_len);
    cfg.shift = false;
    cfg.inversion = false;
    enumerate_words(&cfg).unwrap()
}

fn commutator() -> Check {
    let word = w("abAB");
    let graphs = enumerate_qw(&word, EnumerationMode::Full, DEFAULT_FULL_CAP).map_err(|e| e.to_string())?;
    ensure(graphs.len() == 7, || format!("|Q_w| = {}", graphs.len()))?;
    let mut chis: Vec<i64> = graphs.iter().map(|g| g.chi()).collect();
    chis.sort();
    ensure(chis == [1, 2, 2, 2, 2, 2, 3], || format!("χ multiset {chis:?}"))?;
    for g in &graphs {
        let brute = classify_type(&word, g).map_err(|e| e.to_string())?;
        ensure(g.type_tag() == Some(brute), || format!("type of {} disagrees", g.partition()))?;
    }
    let b2 = graphs.iter().filter(|g| g.chi() == 2 && g.type_tag() == Some(QuotientType::B)).count();
    ensure(b2 == 1, || format!("{b2} type-B χ=2 graphs"))?;
    let a2 = graphs.iter().filter(|g| g.chi() == 2 && g.type_tag() == Some(QuotientType::A)).count();
    ensure(a2 == 4 && expected_component_count(&word) == 4, || format!("{a2} type-A χ=2 graphs"))?;
    let beta = quotients::beta(&word, 3, false, DEFAULT_FULL_CAP).map_err(|e| e.to_string())?;
    ensure(beta == Level::Finite(2), || format!("β = {beta}"))?;
    let a = series_coeffs(&word, 2).map_err(|e| e.to_string())?;
    let expect: Vec<BigInt> = [0, 0, 1].into_iter().map(BigInt::from).collect();
    ensure(a.coeffs == expect, || format!("a = {:?}", a.coeffs))?;
    let phi = series::phi(&word, 2, false).map_err(|e| e.to_string())?;
    ensure(phi == Level::Finite(2), || format!("φ = {phi}"))
}

fn figure_four() -> Check {
    let word = w("aababAb");
    let u = PairGraph::build(&word).map_err(|e| e.to_string())?;
    let comps = u.components().map_err(|e| e.to_string())?;
    ensure(u.vertices().len() == 21, || format!("{} vertices", u.vertices().len()))?;
    ensure(u.edges().len() == 9, || format!("{} edges", u.edges().len()))?;
    ensure(comps.len() == 12, || format!("{} components", comps.len()))?;
    let report = verify_bijection(&word).map_err(|e| e.to_string())?;
    ensure(report.ok, || format!("failures: {:?}", report.failures))?;
    ensure(report.qw2a_count == 12, || format!("{} type-A χ=2 quotients", report.qw2a_count))?;
    let independent = enumerate_qw(&word, EnumerationMode::Full, DEFAULT_FULL_CAP)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|g| g.chi() == 2)
        .filter(|g| classify_type(&word, g) == Ok(QuotientType::A))
        .count();
    ensure(independent == 12 && expected_component_count(&word) == 12, || {
        format!("independent count {independent}, formula {}", expected_component_count(&word))
    })
}

fn oracle_equivalence() -> Check {
    let words: Vec<Word> = all_words(2, 5).into_iter().filter(|x| x.len() >= 2).collect();
    for word in &words {
        let n = word.len();
        let formula = expected_fixed_points(word, n as u64).map_err(|e| e.to_string())?;
        let brute = exact_expectation(word, n, ORACLE_BUDGET).map_err(|e| e.to_string())?;
        ensure(formula == brute, || format!("{word}, n = {n}: {formula} vs {brute}"))?;
    }
    ensure(words.len() > 100, || format!("only {} words", words.len()))
}

fn sweep() -> Check {
    let result = scan(&ScanConfig::new(2, 8)).map_err(|e| e.to_string())?;
    let s = &result.summary;
    for name in ["level0", "level1", "level2", "corollary_a2", "acyclic", "bijection"] {
        ensure(s.violations.contains_key(name), || format!("check {name} never ran"))?;
    }
    ensure(s.total_violations() == 0, || format!("violations {:?} in {:?}", s.violations, s.failing_words))
}

fn infinity_cases() -> Check {
    for s in ["a", "ababa"] {
        let word = w(s);
        let f = phi_function(&word).map_err(|e| e.to_string())?;
        ensure(f.is_zero(), || format!("Φ({s}) = {f}"))?;
        let phi = series::phi(&word, 2, true).map_err(|e| e.to_string())?;
        let beta = quotients::beta(&word, 3, true, DEFAULT_FULL_CAP).map_err(|e| e.to_string())?;
        ensure(phi == Level::Infinite && beta == Level::Infinite, || format!("{s}: φ = {phi}, β = {beta}"))?;
    }
    Ok(())
}

fn random_word(rng: &mut ChaCha20Rng) -> Word {
    loop {
        let k: u8 = rng.gen_range(1..=3);
        let len = rng.gen_range(1..=8);
        let letters: Vec<Letter> = (0..len)
            .map(|_| Letter::new(rng.gen_range(1..=k), if rng.gen_bool(0.5) { 1 } else { -1 }).unwrap())
            .collect();
        let cand = Word::from_letters(letters, k);
        if cand.is_cyclically_reduced() {
            return cand;
        }
    }
}

fn invariance() -> Check {
    let mut rng = ChaCha20Rng::seed_from_u64(INVARIANCE_SEED);
    let levels = |x: &Word| -> Result<(Level, Level), String> {
        let phi = series::phi(x, 2, false).map_err(|e| e.to_string())?;
        let beta = quotients::beta(x, 3, false, DEFAULT_FULL_CAP).map_err(|e| e.to_string())?;
        Ok((phi, beta))
    };
    for _ in 0..INVARIANCE_WORDS {
        let word = random_word(&mut rng);
        let base = levels(&word)?;
        let inv = levels(&word.inverse())?;
        ensure(inv == base, || format!("{word}: inverse gives {inv:?}, word gives {base:?}"))?;
        for x in 1..word.len() {
            let shifted = word.cyclic_shift(x);
            let got = levels(&shifted)?;
            ensure(got == base, || format!("{word}: shift {shifted} gives {got:?}, word gives {base:?}"))?;
        }

        let trail = OpenTrail::new(&word);
        let nv = trail.vertex_count();
        let mut start = Partition::discrete(nv).merged(0, trail.last_vertex());
        let (a, b) = (rng.gen_range(0..nv), rng.gen_range(0..nv));
        start = start.merged(a, b);
        let reference = trail.fold_closure(&start);
        let mut order: Vec<usize> = (0..trail.same_label_pairs().len()).collect();
        for _ in 0..FOLD_ORDERS {
            order.shuffle(&mut rng);
            let got = trail.fold_closure_in_order(&start, &order);
            ensure(got == reference, || format!("{word}: fold order {order:?} gives {got}, expected {reference}"))?;
        }
    }
    Ok(())
}

fn monte_carlo() -> Check {
    let word = w(MC_WORD);
    let est = monte_carlo_expectation(&word, MC_N, MC_SAMPLES, MC_SEED).map_err(|e| e.to_string())?;
    let exact: BigRational = expected_fixed_points(&word, MC_N as u64).map_err(|e| e.to_string())?;
    let exact = series::to_f64(&exact);
    let dev = (est.mean - exact).abs();
    ensure(!est.degenerate && dev <= MC_SIGMAS * est.std_error, || {
        format!("mean {} vs exact {exact}, stderr {}", est.mean, est.std_error)
    })
}

fn generating_sets() -> Check {
    let mut graphs_checked = 0usize;
    for word in all_words(2, 6) {
        let trail = OpenTrail::new(&word);
        let graphs = enumerate_qw(&word, EnumerationMode::Full, DEFAULT_FULL_CAP).map_err(|e| e.to_string())?;
        for g in &graphs {
            let chi = g.chi() as usize;
            let found = min_generating_set_brute(&trail, g.partition(), chi);
            ensure(found == Some(chi), || format!("{word} {}: χ = {chi}, min generating set {found:?}", g.partition()))?;
            graphs_checked += 1;
        }
    }
    ensure(graphs_checked > 0, || "no graphs checked".into())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 8] = [
        ("1 commutator fixture", commutator),
        ("2 aababAb pair graph and bijection", figure_four),
        ("3 formula equals brute-force oracle", oracle_equivalence),
        ("4 sweep k=2 max_len=8", sweep),
        ("5 infinite levels", infinity_cases),
        ("6 shift, inversion and fold-order invariance", invariance),
        ("7 Monte-Carlo agreement", monte_carlo),
        ("8 minimal generating sets", generating_sets),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let t = Instant::now();
        let outcome = check();
        let secs = t.elapsed().as_secs_f64();
        match &outcome {
            Ok(()) => println!("PASS  {name}  ({secs:.2}s)"),
            Err(msg) => {
                println!("FAIL  {name}  ({secs:.2}s): {msg}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
