//! Words over the alphabet `{g_1^{±1}, …, g_k^{±1}}`.
//!
//! The text format is one ASCII letter per symbol: `a`..`z` are the
//! generators `g_1`..`g_26`, and the matching uppercase letter is the inverse.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_GENERATORS: u8 = 26;

/// A signed generator. Ordered by generator index, then `+1` before `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    generator: u8,
    inverse: bool,
}

impl Letter {
    /// `generator` is 1-based.
    pub fn new(generator: u8, sign: i8) -> Result<Self> {
        if generator == 0 || generator > MAX_GENERATORS {
            return Err(Error::domain(format!(
                "generator index {generator} outside 1..={MAX_GENERATORS}"
            )));
        }
        match sign {
            1 => Ok(Letter { generator, inverse: false }),
            -1 => Ok(Letter { generator, inverse: true }),
            _ => Err(Error::domain(format!("sign must be +1 or -1, got {sign}"))),
        }
    }

    pub fn generator(self) -> u8 {
        self.generator
    }

    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    pub fn to_char(self) -> char {
        let c = (b'a' + self.generator - 1) as char;
        if self.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    fn from_char(c: char) -> Option<Self> {
        if c.is_ascii_lowercase() {
            Some(Letter { generator: c as u8 - b'a' + 1, inverse: false })
        } else if c.is_ascii_uppercase() {
            Some(Letter { generator: c as u8 - b'A' + 1, inverse: true })
        } else {
            None
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// A finite word. `k` is the number of generators in scope and does not take
/// part in equality, hashing or ordering.
#[derive(Debug, Clone, Default)]
pub struct Word {
    letters: Vec<Letter>,
    k: u8,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters.cmp(&other.letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s, None)
    }
}

impl Word {
    /// Parses the one-letter-per-symbol text format. `k` defaults to the
    /// largest generator that occurs.
    pub fn parse(text: &str, k_override: Option<u8>) -> Result<Self> {
        let mut letters = Vec::with_capacity(text.len());
        for (position, c) in text.chars().enumerate() {
            let letter = Letter::from_char(c).ok_or(Error::Parse { position, found: c })?;
            letters.push(letter);
        }
        let max_seen = letters.iter().map(|l| l.generator).max().unwrap_or(0);
        let k = match k_override {
            Some(k) if k < max_seen => {
                return Err(Error::domain(format!(
                    "alphabet size {k} is smaller than generator {max_seen} used in {text:?}"
                )))
            }
            Some(k) if k > MAX_GENERATORS => {
                return Err(Error::domain(format!("alphabet size {k} exceeds {MAX_GENERATORS}")))
            }
            Some(k) => k,
            None => max_seen,
        };
        Ok(Word { letters, k })
    }

    /// Builds a word from letters; `k` becomes the largest generator present
    /// unless `k` is larger.
    pub fn from_letters(letters: Vec<Letter>, k: u8) -> Self {
        let max_seen = letters.iter().map(|l| l.generator).max().unwrap_or(0);
        Word { letters, k: k.max(max_seen) }
    }

    pub fn empty(k: u8) -> Self {
        Word { letters: Vec::new(), k }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    fn with_letters(&self, letters: Vec<Letter>) -> Self {
        Word { letters, k: self.k }
    }

    /// Letters `start..end`, taken cyclically (indices mod `len`).
    pub fn cyclic_subword(&self, start: usize, len: usize) -> Self {
        let n = self.len();
        if n == 0 {
            return self.clone();
        }
        self.with_letters((0..len).map(|i| self.letters[(start + i) % n]).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters, k: self.k.max(other.k) }
    }

    pub fn pow(&self, d: usize) -> Self {
        self.with_letters(self.letters.repeat(d))
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.letters.starts_with(&self.letters)
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| p[0] != p[1].inv())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.first(), self.last()) {
                (Some(f), Some(l)) => self.len() == 1 || f != l.inv(),
                _ => true,
            }
    }

    /// Free cancellation of adjacent inverse pairs.
    pub fn reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        self.with_letters(out)
    }

    /// Returns `(core, conjugator)` with `self = conjugator · core · conjugator⁻¹`
    /// in the free group and `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Self, Self) {
        let reduced = self.reduce();
        let l = &reduced.letters;
        let mut peel = 0;
        while 2 * peel + 1 < l.len() && l[peel] == l[l.len() - 1 - peel].inv() {
            peel += 1;
        }
        let core = self.with_letters(l[peel..l.len() - peel].to_vec());
        let conjugator = self.with_letters(l[..peel].to_vec());
        (core, conjugator)
    }

    pub fn inverse(&self) -> Self {
        self.with_letters(self.letters.iter().rev().map(|l| l.inv()).collect())
    }

    /// Rotates left by `x` positions.
    pub fn cyclic_shift(&self, x: usize) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let mut letters = self.letters.clone();
        letters.rotate_left(x % self.len());
        self.with_letters(letters)
    }

    /// Shortest `u` with `self = u^d` letter for letter. The empty word gives
    /// `(empty, 0)`.
    pub fn power_root(&self) -> (Self, usize) {
        let n = self.len();
        if n == 0 {
            return (self.clone(), 0);
        }
        for period in 1..=n {
            if n.is_multiple_of(period) && (period..n).all(|i| self.letters[i] == self.letters[i - period]) {
                return (self.with_letters(self.letters[..period].to_vec()), n / period);
            }
        }
        unreachable!("period n always matches")
    }

    pub fn is_proper_power(&self) -> bool {
        self.power_root().1 >= 2
    }

    /// Lexicographically least member of the orbit under the selected moves.
    pub fn canonical_form(&self, use_inversion: bool, use_shift: bool) -> Self {
        let mut bases = vec![self.clone()];
        if use_inversion {
            bases.push(self.inverse());
        }
        let shifts = if use_shift { self.len().max(1) } else { 1 };
        bases
            .iter()
            .flat_map(|b| (0..shifts).map(move |x| b.cyclic_shift(x)))
            .min()
            .expect("orbit is non-empty")
    }

    /// Renames generators in order of first appearance (`a`, `b`, …), keeping
    /// signs. Used for optional relabeling dedup.
    pub fn relabel_first_appearance(&self) -> Self {
        let mut map = [0u8; MAX_GENERATORS as usize + 1];
        let mut next = 1;
        let letters = self
            .letters
            .iter()
            .map(|l| {
                let g = l.generator as usize;
                if map[g] == 0 {
                    map[g] = next;
                    next += 1;
                }
                Letter { generator: map[g], inverse: l.inverse }
            })
            .collect();
        self.with_letters(letters)
    }

    /// Distinct generators that occur, ascending.
    pub fn generators_used(&self) -> Vec<u8> {
        let mut g: Vec<u8> = self.letters.iter().map(|l| l.generator).collect();
        g.sort_unstable();
        g.dedup();
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn parse_commutator() {
        let c = w("abAB");
        assert_eq!(c.k(), 2);
        let expect: Vec<(u8, i8)> = vec![(1, 1), (2, 1), (1, -1), (2, -1)];
        let got: Vec<(u8, i8)> = c.letters().iter().map(|l| (l.generator(), l.sign())).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn parse_empty_and_fig4() {
        let e = w("");
        assert!(e.is_empty());
        assert_eq!(e.k(), 0);
        let f = w("aababAb");
        assert_eq!(f.len(), 7);
        assert_eq!(f.k(), 2);
        assert_eq!(f.letters()[5], Letter::new(1, -1).unwrap());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Word::parse("ab1", None), Err(Error::Parse { position: 2, found: '1' }));
        assert!(matches!(Word::parse("abc", Some(2)), Err(Error::Domain(_))));
        assert_eq!(Word::parse("ab", Some(5)).unwrap().k(), 5);
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w("aAb").reduce().to_string(), "b");
        assert_eq!(w("abBA").reduce().to_string(), "");
        assert_eq!(w("abAB").reduce().to_string(), "abAB");
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (core, conj) = w("Bab").cyclic_reduce();
        assert_eq!((core.to_string(), conj.to_string()), ("a".into(), "B".into()));
        let (core, conj) = w("abAB").cyclic_reduce();
        assert_eq!((core.to_string(), conj.to_string()), ("abAB".into(), "".into()));
        let (core, _) = w("CabC").cyclic_reduce();
        assert_eq!(core.to_string(), "CabC");
        // conjugate of the empty word
        let (core, _) = w("abBA").cyclic_reduce();
        assert!(core.is_empty());
    }

    #[test]
    fn inverse_and_shift_examples() {
        assert_eq!(w("ab").inverse().to_string(), "BA");
        assert_eq!(w("").inverse().to_string(), "");
        assert_eq!(w("aaB").inverse().to_string(), "bAA");
        assert_eq!(w("abAB").cyclic_shift(1).to_string(), "bABa");
        assert_eq!(w("abAB").cyclic_shift(4).to_string(), "abAB");
        assert_eq!(w("aababAb").cyclic_shift(2).to_string(), "babAbaa");
        assert_eq!(w("").cyclic_shift(3).to_string(), "");
    }

    #[test]
    fn power_root_examples() {
        let (u, d) = w("abab").power_root();
        assert_eq!((u.to_string(), d), ("ab".into(), 2));
        let (u, d) = w("abAB").power_root();
        assert_eq!((u.to_string(), d), ("abAB".into(), 1));
        let (u, d) = w("aaa").power_root();
        assert_eq!((u.to_string(), d), ("a".into(), 3));
        let (u, d) = w("").power_root();
        assert_eq!((u.to_string(), d), ("".into(), 0));
    }

    #[test]
    fn canonical_form_examples() {
        assert_eq!(w("bABa").canonical_form(false, true).to_string(), "abAB");
        assert_eq!(w("a").canonical_form(true, true).to_string(), "a");
        assert_eq!(w("BA").canonical_form(true, false).to_string(), "ab");
        // a < A < b < B
        assert!(w("A") < w("b"));
    }

    #[test]
    fn relabel() {
        assert_eq!(w("bAbc").relabel_first_appearance().to_string(), "aBac");
    }
}
