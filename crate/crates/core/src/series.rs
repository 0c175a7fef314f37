//! Φ_w(n) as an exact rational function of n, its expansion in powers of
//! `1/n`, and the invariant φ.
//!
//! Each quotient graph Γ contributes
//! `(n-1)…(n-v+1) / Π_j n(n-1)…(n-e_j+1)`, and `Φ_w(n) = -1/n + Σ_Γ term(Γ)`.
//! In the variable `x = 1/n` the same term is
//! `x^χ · Π_{i<v}(1 - i x) / Π_j Π_{i<e_j}(1 - i x)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::level::Level;
use crate::quotients::{enumerate_qw, EnumerationMode, QuotientGraph, DEFAULT_FULL_CAP};
use crate::word::Word;

/// Integer polynomial in `n`, coefficients in ascending degree, no trailing
/// zeros (the zero polynomial is empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    /// Multiplies by `(n - r)`.
    pub fn mul_linear(&self, r: i64) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let r = BigInt::from(r);
        let mut out = vec![BigInt::zero(); self.0.len() + 1];
        for (i, c) in self.0.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * &r;
        }
        Poly(out).trim()
    }

    /// Exact division by `(n - r)`; `None` if `r` is not a root.
    pub fn div_linear(&self, r: i64) -> Option<Self> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let r = BigInt::from(r);
        let d = self.0.len() - 1;
        let mut q = vec![BigInt::zero(); d];
        let mut carry = BigInt::zero();
        for i in (0..=d).rev() {
            let c = &self.0[i] + &carry;
            if i == 0 {
                return c.is_zero().then(|| Poly(q).trim());
            }
            carry = &c * &r;
            q[i - 1] = c;
        }
        unreachable!()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Poly(self.0.iter().map(|x| x * c).collect()).trim()
    }

    pub fn add(&self, other: &Poly) -> Self {
        let len = self.0.len().max(other.0.len());
        let out = (0..len)
            .map(|i| {
                let a = self.0.get(i).cloned().unwrap_or_default();
                let b = other.0.get(i).cloned().unwrap_or_default();
                a + b
            })
            .collect();
        Poly(out).trim()
    }

    pub fn eval(&self, n: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * n + BigRational::from_integer(c.clone()))
    }

    pub fn eval_int(&self, n: i64) -> BigInt {
        let n = BigInt::from(n);
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * &n + c)
    }
}

/// A rational function of `n` whose denominator is a monic product of
/// linear factors `(n - r)^m`, kept in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunctionN {
    num: Poly,
    den_roots: BTreeMap<i64, u32>,
}

impl RationalFunctionN {
    pub fn zero() -> Self {
        RationalFunctionN { num: Poly::zero(), den_roots: BTreeMap::new() }
    }

    pub fn from_parts(num: Poly, den_roots: BTreeMap<i64, u32>) -> Self {
        RationalFunctionN { num, den_roots }.normalized()
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.den_roots.clear();
            return self;
        }
        let roots: Vec<i64> = self.den_roots.keys().copied().collect();
        for r in roots {
            while self.den_roots.get(&r).copied().unwrap_or(0) > 0 {
                match self.num.div_linear(r) {
                    Some(q) => {
                        self.num = q;
                        let m = self.den_roots.get_mut(&r).expect("root present");
                        *m -= 1;
                        if *m == 0 {
                            self.den_roots.remove(&r);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    /// Denominator roots with multiplicities.
    pub fn denominator_roots(&self) -> &BTreeMap<i64, u32> {
        &self.den_roots
    }

    pub fn denominator(&self) -> Poly {
        self.den_roots
            .iter()
            .fold(Poly::one(), |acc, (&r, &m)| (0..m).fold(acc, |p, _| p.mul_linear(r)))
    }

    fn den_degree(&self) -> usize {
        self.den_roots.values().map(|&m| m as usize).sum()
    }

    /// `deg(num) - deg(den)`; `None` for the zero function.
    pub fn degree(&self) -> Option<i64> {
        self.num.degree().map(|d| d as i64 - self.den_degree() as i64)
    }

    pub fn add(&self, other: &RationalFunctionN) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut den = self.den_roots.clone();
        for (&r, &m) in &other.den_roots {
            let e = den.entry(r).or_insert(0);
            *e = (*e).max(m);
        }
        let lift = |f: &RationalFunctionN| {
            den.iter().fold(f.num.clone(), |p, (&r, &m)| {
                let have = f.den_roots.get(&r).copied().unwrap_or(0);
                (have..m).fold(p, |p, _| p.mul_linear(r))
            })
        };
        let num = lift(self).add(&lift(other));
        RationalFunctionN::from_parts(num, den)
    }

    /// Value at `n`; `None` at a pole.
    pub fn eval(&self, n: &BigRational) -> Option<BigRational> {
        let den = self.denominator().eval(n);
        if den.is_zero() {
            return None;
        }
        Some(self.num.eval(n) / den)
    }
}

fn big_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

/// `{"num": [...], "den": [...]}`, ascending coefficients as decimal strings.
impl Serialize for RationalFunctionN {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RationalFunctionN", 2)?;
        st.serialize_field("num", &big_strings(&self.num))?;
        st.serialize_field("den", &big_strings(&self.denominator()))?;
        st.end()
    }
}

impl fmt::Display for RationalFunctionN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = |p: &Poly| {
            let terms: Vec<String> = p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| match i {
                    0 => c.to_string(),
                    1 => format!("{c}*n"),
                    _ => format!("{c}*n^{i}"),
                })
                .collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        };
        if self.den_roots.is_empty() {
            return write!(f, "{}", poly(&self.num));
        }
        let den: Vec<String> = self
            .den_roots
            .iter()
            .map(|(&r, &m)| {
                let base = if r == 0 { "n".to_string() } else { format!("(n - {r})") };
                if m == 1 {
                    base
                } else {
                    format!("{base}^{m}")
                }
            })
            .collect();
        write!(f, "({}) / ({})", poly(&self.num), den.join(" "))
    }
}

/// Contribution of one quotient graph to Φ_w(n).
pub fn quotient_term(g: &QuotientGraph) -> RationalFunctionN {
    let num = (1..g.vertex_count() as i64).fold(Poly::one(), |p, i| p.mul_linear(i));
    let mut den = BTreeMap::new();
    for &e in g.edge_counts() {
        for i in 0..e as i64 {
            *den.entry(i).or_insert(0) += 1;
        }
    }
    RationalFunctionN::from_parts(num, den)
}

fn minus_one_over_n() -> RationalFunctionN {
    RationalFunctionN::from_parts(Poly(vec![BigInt::from(-1)]), BTreeMap::from([(0, 1)]))
}

/// Φ_w(n) summed over the whole of `Q_w` for the reduced form of `w`.
pub fn phi_function(w: &Word) -> Result<RationalFunctionN> {
    phi_function_with_cap(w, DEFAULT_FULL_CAP)
}

pub fn phi_function_with_cap(w: &Word, cap: usize) -> Result<RationalFunctionN> {
    let reduced = w.reduce();
    let graphs = enumerate_qw(&reduced, EnumerationMode::Full, cap)?;
    Ok(phi_function_from_graphs(&graphs))
}

pub fn phi_function_from_graphs(graphs: &[QuotientGraph]) -> RationalFunctionN {
    graphs
        .iter()
        .fold(minus_one_over_n(), |acc, g| acc.add(&quotient_term(g)))
}

/// The coefficients `a_0..a_{i_max}` of Φ_w in powers of `1/n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentCoefficients {
    pub coeffs: Vec<BigInt>,
    pub i_max: usize,
    /// Least `n` at which the expansion is asserted to represent Φ_w(n).
    pub validity_floor: usize,
}

impl LaurentCoefficients {
    pub fn get(&self, i: usize) -> Option<&BigInt> {
        self.coeffs.get(i)
    }

    /// Index of the first nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl Serialize for LaurentCoefficients {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LaurentCoefficients", 3)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.serialize_field("i_max", &self.i_max)?;
        st.serialize_field("validity_floor", &self.validity_floor)?;
        st.end()
    }
}

/// Product `Π_{i in roots} (1 - i x)` truncated after `x^order`.
fn linear_product(roots: impl Iterator<Item = i64>, order: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); order + 1];
    out[0] = BigRational::one();
    for i in roots {
        let c = BigRational::from_integer(BigInt::from(i));
        for d in (1..=order).rev() {
            let prev = out[d - 1].clone();
            out[d] -= &c * prev;
        }
    }
    out
}

/// Power series of `term(g)` in `x = 1/n`, truncated after `x^order`.
pub fn term_series(g: &QuotientGraph, order: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); order + 1];
    let chi = g.chi();
    if chi < 0 || chi as usize > order {
        return out;
    }
    let chi = chi as usize;
    let rest = order - chi;
    let num = linear_product(1..g.vertex_count() as i64, rest);
    let den = linear_product(g.edge_counts().iter().flat_map(|&e| 0..e as i64), rest);
    // den[0] = 1, so the quotient is computed term by term.
    let mut q: Vec<BigRational> = Vec::with_capacity(rest + 1);
    for d in 0..=rest {
        let mut c = num[d].clone();
        for j in 1..=d {
            c -= &den[j] * &q[d - j];
        }
        q.push(c);
    }
    for (d, c) in q.into_iter().enumerate() {
        out[chi + d] = c;
    }
    out
}

/// Sums the expansions of `graphs` (which must include every quotient with
/// `χ ≤ i_max`) and subtracts `1/n`.
pub fn coeffs_from_graphs(graphs: &[QuotientGraph], i_max: usize) -> Result<Vec<BigInt>> {
    let mut total = vec![BigRational::zero(); i_max + 1];
    if i_max >= 1 {
        total[1] = -BigRational::one();
    }
    for g in graphs.iter().filter(|g| g.chi() <= i_max as i64) {
        for (t, c) in total.iter_mut().zip(term_series(g, i_max)) {
            *t += c;
        }
    }
    total
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::internal(format!("coefficient a_{i} = {c} is not an integer")))
            }
        })
        .collect()
}

pub fn series_coeffs(w: &Word, i_max: usize) -> Result<LaurentCoefficients> {
    let reduced = w.reduce();
    let graphs = enumerate_qw(&reduced, EnumerationMode::UpToChi(i_max as u32), DEFAULT_FULL_CAP)?;
    Ok(LaurentCoefficients {
        coeffs: coeffs_from_graphs(&graphs, i_max)?,
        i_max,
        validity_floor: w.len(),
    })
}

/// φ(w): the index of the first nonzero coefficient.
pub fn phi(w: &Word, i_max: usize, allow_full: bool) -> Result<Level> {
    phi_with_cap(w, i_max, allow_full, DEFAULT_FULL_CAP)
}

pub fn phi_with_cap(w: &Word, i_max: usize, allow_full: bool, cap: usize) -> Result<Level> {
    let reduced = w.reduce();
    if reduced.is_empty() {
        return Ok(Level::Finite(0));
    }
    let coeffs = series_coeffs(&reduced, i_max)?;
    if let Some(i) = coeffs.first_nonzero() {
        return Ok(Level::Finite(i as u32));
    }
    if !allow_full {
        return Ok(Level::GreaterThan(i_max as u32));
    }
    level_from_function(&phi_function_with_cap(&reduced, cap)?)
}

/// φ read off the exact rational function.
pub fn level_from_function(f: &RationalFunctionN) -> Result<Level> {
    match f.degree() {
        None => Ok(Level::Infinite),
        Some(d) if d <= 0 => Ok(Level::Finite((-d) as u32)),
        Some(d) => Err(Error::internal(format!("Φ has positive degree {d}"))),
    }
}

/// φ from already computed coefficients: `GreaterThan(i_max)` if all vanish.
pub fn level_from_coeffs(coeffs: &[BigInt]) -> Level {
    match coeffs.iter().position(|c| !c.is_zero()) {
        Some(i) => Level::Finite(i as u32),
        None => Level::GreaterThan(coeffs.len().saturating_sub(1) as u32),
    }
}

/// `E(X_w^(n)) = 1 + n Φ_w(n)`, for `n ≥ |w|`.
pub fn expected_fixed_points(w: &Word, n: u64) -> Result<BigRational> {
    let floor = w.len().max(1) as u64;
    if n < floor {
        return Err(Error::domain(format!(
            "n = {n} is below the validity floor {floor} for a word of length {}",
            w.len()
        )));
    }
    let f = phi_function(w)?;
    let nn = BigRational::from_integer(BigInt::from(n));
    let value = f
        .eval(&nn)
        .ok_or_else(|| Error::internal(format!("Φ has a pole at n = {n}")))?;
    Ok(BigRational::one() + nn * value)
}

/// Lossy conversion for reporting.
pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
