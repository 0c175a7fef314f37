//! Fixed points of word maps on `S_n`, computed directly from permutations.
//!
//! Composition is left to right: the image of a point under `w(σ)` is found
//! by applying the letters of `w` in reading order, so `w = ab` sends `p` to
//! `σ_2(σ_1(p))`. This module deliberately shares no code with the quotient
//! machinery so that it can serve as an independent check.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::Word;

pub const PRNG_NAME: &str = "chacha20";
const SHARD_SIZE: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::domain(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation { images })
    }

    /// Permutation of `0..n` given by disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (i, &p) in c.iter().enumerate() {
                let q = c[(i + 1) % c.len()];
                if p >= n || q >= n {
                    return Err(Error::domain(format!("cycle entry outside 0..{n}")));
                }
                images[p] = q;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, p: usize) -> usize {
        self.images[p]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        Permutation { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }
}

pub fn count_fixed_points(p: &Permutation) -> usize {
    p.images.iter().enumerate().filter(|(i, &j)| *i == j).count()
}

fn check_tuple(w: &Word, sigmas: &[Permutation]) -> Result<usize> {
    let n = sigmas.first().map_or(0, Permutation::degree);
    if let Some(bad) = sigmas.iter().find(|s| s.degree() != n) {
        return Err(Error::domain(format!(
            "permutations of different degrees {n} and {}",
            bad.degree()
        )));
    }
    if let Some(g) = w.generators_used().into_iter().max() {
        if g as usize > sigmas.len() {
            return Err(Error::domain(format!(
                "word uses generator {g} but only {} permutations were given",
                sigmas.len()
            )));
        }
    }
    Ok(n)
}

/// The permutation `w(σ_1, …, σ_k)`.
pub fn word_map(w: &Word, sigmas: &[Permutation]) -> Result<Permutation> {
    let n = check_tuple(w, sigmas)?;
    let inverses: Vec<Permutation> = sigmas.iter().map(Permutation::inverse).collect();
    let images = (0..n)
        .map(|p| {
            w.letters().iter().fold(p, |q, l| {
                let g = l.generator() as usize - 1;
                if l.is_inverse() {
                    inverses[g].apply(q)
                } else {
                    sigmas[g].apply(q)
                }
            })
        })
        .collect();
    Ok(Permutation { images })
}

/// Image of one point, without building the whole permutation.
fn image_of(w: &Word, slots: &[usize], sigmas: &[&Permutation], inverses: &[&Permutation], p: usize) -> usize {
    w.letters().iter().fold(p, |q, l| {
        let s = slots[l.generator() as usize - 1];
        if l.is_inverse() {
            inverses[s].apply(q)
        } else {
            sigmas[s].apply(q)
        }
    })
}

fn fixed_points_with(w: &Word, slots: &[usize], sigmas: &[&Permutation], inverses: &[&Permutation]) -> u64 {
    let n = sigmas.first().map_or(0, |s| s.degree());
    (0..n).filter(|&p| image_of(w, slots, sigmas, inverses, p) == p).count() as u64
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation { images: cur.clone() });
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).try_fold(1u128, |acc, i| acc.checked_mul(i)).unwrap_or(u128::MAX)
}

/// Exact mean number of fixed points of `w(σ)` over all tuples of the
/// generators that occur in `w`.
pub fn exact_expectation(w: &Word, n: usize, budget: u128) -> Result<BigRational> {
    let used = w.generators_used();
    let k = used.len();
    let tuples = (0..k).try_fold(1u128, |acc, _| acc.checked_mul(factorial(n))).unwrap_or(u128::MAX);
    if tuples > budget {
        return Err(Error::Resource {
            what: format!("exhaustive expectation over {tuples} permutation tuples"),
            cap: budget,
        });
    }
    if k == 0 {
        return Ok(BigRational::from_integer(BigInt::from(n)));
    }
    let mut slots = vec![0usize; w.k() as usize];
    for (i, &g) in used.iter().enumerate() {
        slots[g as usize - 1] = i;
    }
    let perms = all_permutations(n);
    let invs: Vec<Permutation> = perms.iter().map(Permutation::inverse).collect();
    let m = perms.len();
    let total: BigInt = (0..m)
        .into_par_iter()
        .map(|first| {
            let mut sum = 0u64;
            let mut idx = vec![0usize; k];
            idx[0] = first;
            loop {
                let sigmas: Vec<&Permutation> = idx.iter().map(|&i| &perms[i]).collect();
                let inverses: Vec<&Permutation> = idx.iter().map(|&i| &invs[i]).collect();
                sum += fixed_points_with(w, &slots, &sigmas, &inverses);
                // Odometer over positions 1..k.
                let mut pos = k;
                loop {
                    if pos == 1 {
                        return BigInt::from(sum);
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < m {
                        break;
                    }
                    idx[pos] = 0;
                }
            }
        })
        .sum();
    Ok(BigRational::new(total, BigInt::from(tuples)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpectationEstimate {
    pub mean: f64,
    #[serde(rename = "stderr")]
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
    pub prng: &'static str,
    /// Set when `samples == 1`, where no error estimate exists.
    pub degenerate: bool,
}

/// Monte-Carlo estimate of the mean number of fixed points. Samples are
/// split into fixed-size shards; shard `i` draws from ChaCha20 seeded with
/// `seed` on stream `i`, so results do not depend on the thread count.
pub fn monte_carlo_expectation(w: &Word, n: usize, samples: u64, seed: u64) -> Result<ExpectationEstimate> {
    if samples == 0 {
        return Err(Error::domain("at least one sample is required"));
    }
    let k = w.k() as usize;
    let shards = samples.div_ceil(SHARD_SIZE);
    let partials: Vec<(f64, f64)> = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(shard);
            let count = SHARD_SIZE.min(samples - shard * SHARD_SIZE);
            let slots: Vec<usize> = (0..k).collect();
            let mut sigmas: Vec<Permutation> = (0..k).map(|_| Permutation::identity(n)).collect();
            let (mut sum, mut sum_sq) = (0f64, 0f64);
            for _ in 0..count {
                for s in sigmas.iter_mut() {
                    s.images.shuffle(&mut rng);
                }
                let inverses: Vec<Permutation> = sigmas.iter().map(Permutation::inverse).collect();
                let refs: Vec<&Permutation> = sigmas.iter().collect();
                let inv_refs: Vec<&Permutation> = inverses.iter().collect();
                let x = fixed_points_with(w, &slots, &refs, &inv_refs) as f64;
                sum += x;
                sum_sq += x * x;
            }
            (sum, sum_sq)
        })
        .collect();
    let (sum, sum_sq) = partials.iter().fold((0f64, 0f64), |(a, b), (c, d)| (a + c, b + d));
    let s = samples as f64;
    let mean = sum / s;
    let std_error = if samples == 1 {
        0.0
    } else {
        let var = ((sum_sq - s * mean * mean) / (s - 1.0)).max(0.0);
        (var / s).sqrt()
    };
    Ok(ExpectationEstimate { mean, std_error, samples, seed, prng: PRNG_NAME, degenerate: samples == 1 })
}
