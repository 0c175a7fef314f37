//! Corpus enumeration and the per-word consistency sweep.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::level::Level;
use crate::pairgraph;
use crate::quotients::{beta_from_graphs, enumerate_qw, EnumerationMode, QuotientType, DEFAULT_FULL_CAP};
use crate::series::{coeffs_from_graphs, level_from_coeffs};
use crate::word::{Letter, Word, MAX_GENERATORS};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanConfig {
    pub k: u8,
    pub max_len: usize,
    pub i_max: usize,
    pub chi_budget: u32,
    /// Identify words that differ by a cyclic shift.
    pub shift: bool,
    /// Identify a word with its inverse.
    pub inversion: bool,
    /// Identify words that differ by renaming generators.
    pub relabel: bool,
    /// Worker threads; 0 lets the pool decide.
    pub workers: usize,
    pub timings: bool,
}

impl ScanConfig {
    pub fn new(k: u8, max_len: usize) -> Self {
        ScanConfig {
            k,
            max_len,
            i_max: 2,
            chi_budget: 3,
            shift: true,
            inversion: true,
            relabel: false,
            workers: 0,
            timings: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k > MAX_GENERATORS {
            return Err(Error::domain(format!("k = {} outside 1..={MAX_GENERATORS}", self.k)));
        }
        if self.max_len == 0 {
            return Err(Error::domain("max_len must be at least 1"));
        }
        if self.i_max < 2 {
            return Err(Error::domain("i_max must be at least 2"));
        }
        Ok(())
    }

    fn canonical(&self, w: &Word) -> Word {
        let base = w.canonical_form(self.inversion, self.shift);
        if !self.relabel {
            return base;
        }
        generator_permutations(self.k)
            .iter()
            .map(|perm| {
                let letters = w
                    .letters()
                    .iter()
                    .map(|l| Letter::new(perm[l.generator() as usize - 1], l.sign()).expect("valid generator"))
                    .collect();
                Word::from_letters(letters, w.k()).canonical_form(self.inversion, self.shift)
            })
            .min()
            .unwrap_or(base)
    }
}

fn generator_permutations(k: u8) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=k).collect();
    fn heap(n: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if n <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            heap(n - 1, cur, out);
            let j = if n.is_multiple_of(2) { i } else { 0 };
            if i + 1 < n {
                cur.swap(j, n - 1);
            }
        }
    }
    let n = cur.len();
    heap(n, &mut cur, &mut out);
    out
}

/// Cyclically reduced words of length `1..=max_len`, one per orbit of the
/// selected symmetries, ordered by length and then lexicographically.
pub fn enumerate_words(cfg: &ScanConfig) -> Result<Vec<Word>> {
    cfg.validate()?;
    let alphabet: Vec<Letter> = (1..=cfg.k)
        .flat_map(|g| [Letter::new(g, 1), Letter::new(g, -1)])
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut cur: Vec<Letter> = Vec::new();
    fn extend(
        cur: &mut Vec<Letter>,
        alphabet: &[Letter],
        max_len: usize,
        cfg: &ScanConfig,
        out: &mut Vec<Word>,
    ) {
        if !cur.is_empty() {
            let w = Word::from_letters(cur.clone(), cfg.k);
            if w.is_cyclically_reduced() && cfg.canonical(&w) == w {
                out.push(w);
            }
        }
        if cur.len() == max_len {
            return;
        }
        for &l in alphabet {
            if cur.last() == Some(&l.inv()) {
                continue;
            }
            cur.push(l);
            extend(cur, alphabet, max_len, cfg, out);
            cur.pop();
        }
    }
    extend(&mut cur, &alphabet, cfg.max_len, cfg, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn big_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRecord {
    pub word: Word,
    pub len: usize,
    pub phi: Level,
    pub beta: Level,
    #[serde(serialize_with = "big_strings")]
    pub a_coeffs: Vec<BigInt>,
    pub checks: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
    /// Stage durations in milliseconds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl ScanRecord {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|&ok| ok)
    }

    /// One CSV line in the schema `word,len,phi,beta,a0,a1,a2,checks_passed`.
    pub fn csv_line(&self) -> String {
        let coeff = |i: usize| self.a_coeffs.get(i).map(|c| c.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.word,
            self.len,
            self.phi,
            self.beta,
            coeff(0),
            coeff(1),
            coeff(2),
            self.passed()
        )
    }
}

pub const CSV_HEADER: &str = "word,len,phi,beta,a0,a1,a2,checks_passed";

/// Runs every check on one word. Errors become a failed `computed` check.
pub fn scan_word(w: &Word, cfg: &ScanConfig) -> ScanRecord {
    match scan_word_inner(w, cfg) {
        Ok(r) => r,
        Err(e) => ScanRecord {
            word: w.clone(),
            len: w.len(),
            phi: Level::GreaterThan(0),
            beta: Level::GreaterThan(0),
            a_coeffs: Vec::new(),
            checks: BTreeMap::from([("computed".to_string(), false)]),
            diagnostic: Some(e.to_string()),
            timings: None,
        },
    }
}

fn scan_word_inner(w: &Word, cfg: &ScanConfig) -> Result<ScanRecord> {
    cfg.validate()?;
    let mut timings = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timings: &mut BTreeMap<String, f64>| {
        timings.insert(name.to_string(), clock.elapsed().as_secs_f64() * 1e3);
        clock = Instant::now();
    };
    let reduced = w.reduce();
    let (core, _) = reduced.cyclic_reduce();
    let depth = (cfg.i_max as u32).max(cfg.chi_budget);
    let graphs = enumerate_qw(&core, EnumerationMode::UpToChi(depth), DEFAULT_FULL_CAP)?;
    lap("enumerate", &mut timings);
    let a = coeffs_from_graphs(&graphs, cfg.i_max)?;
    let phi = if reduced.is_empty() { Level::Finite(0) } else { level_from_coeffs(&a) };
    let beta = if reduced.is_empty() { Level::Finite(0) } else { beta_from_graphs(&graphs, Some(cfg.chi_budget)) };
    lap("series", &mut timings);

    let mut checks = BTreeMap::new();
    let mut notes: Vec<String> = Vec::new();
    for i in 0..=2 {
        let ok = phi.is(i) == beta.is(i);
        checks.insert(format!("level{i}"), ok);
        if !ok {
            notes.push(format!("phi = {phi}, beta = {beta} disagree at level {i}"));
        }
    }
    let leading_zero = a[0].is_zero() && a[1].is_zero();
    let a2_ok = !leading_zero || !a[2].is_negative();
    checks.insert("corollary_a2".into(), a2_ok);
    let type_b2 = graphs
        .iter()
        .filter(|g| g.chi() == 2 && g.type_tag() == Some(QuotientType::B))
        .count();
    let balance_ok = !leading_zero || a[2] == BigInt::from(type_b2);
    checks.insert("a2_balance".into(), balance_ok);
    if !a2_ok || !balance_ok {
        let type_b: Vec<String> = graphs
            .iter()
            .filter(|g| g.chi() == 2 && g.type_tag() == Some(QuotientType::B))
            .map(|g| g.partition().to_string())
            .collect();
        notes.push(format!("a = {a:?}, type-B χ=2 quotients: {}", type_b.join("; ")));
    }
    if phi.at_least(2) && !core.is_empty() {
        let report = pairgraph::verify_bijection(&core)?;
        checks.insert("acyclic".into(), report.acyclic);
        checks.insert("bijection".into(), report.ok);
        notes.extend(report.failures);
        lap("bijection", &mut timings);
    }
    Ok(ScanRecord {
        word: w.clone(),
        len: w.len(),
        phi,
        beta,
        a_coeffs: a,
        checks,
        diagnostic: (!notes.is_empty()).then(|| notes.join(" | ")),
        timings: cfg.timings.then_some(timings),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSummary {
    pub words: usize,
    /// Failed count per check name.
    pub violations: BTreeMap<String, usize>,
    pub failing_words: Vec<Word>,
}

impl ScanSummary {
    pub fn total_violations(&self) -> usize {
        self.violations.values().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub config: ScanConfig,
    pub summary: ScanSummary,
    pub records: Vec<ScanRecord>,
}

pub fn summarize(records: &[ScanRecord]) -> ScanSummary {
    let mut violations = BTreeMap::new();
    let mut failing_words = Vec::new();
    for r in records {
        for (name, &ok) in &r.checks {
            let slot = violations.entry(name.clone()).or_insert(0);
            if !ok {
                *slot += 1;
            }
        }
        if !r.passed() {
            failing_words.push(r.word.clone());
        }
    }
    ScanSummary { words: records.len(), violations, failing_words }
}

/// Scans the corpus of `cfg` in parallel; records keep corpus order.
pub fn scan(cfg: &ScanConfig) -> Result<ScanResult> {
    let words = enumerate_words(cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::internal(format!("thread pool: {e}")))?;
    let records: Vec<ScanRecord> = pool.install(|| words.par_iter().map(|w| scan_word(w, cfg)).collect());
    Ok(ScanResult { config: cfg.clone(), summary: summarize(&records), records })
}
