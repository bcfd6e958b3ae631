//! Permutations in one-line notation.
//!
//! Values and positions are one-based: `word[i - 1]` is the image of `i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    word: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation, checking that `word` is a bijection on `1..=n`.
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n];
        for &v in &word {
            let idx = v as usize;
            if idx == 0 || idx > n || seen[idx - 1] {
                return Err(Error::NotAPermutation(render_word(&word)));
            }
            seen[idx - 1] = true;
        }
        Ok(Permutation { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation { word }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as u32).collect(),
        }
    }

    pub fn empty() -> Self {
        Permutation { word: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn into_word(self) -> Vec<u32> {
        self.word
    }

    /// Image of the one-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.word[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.word.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { word: inv }
    }

    pub fn is_involution(&self) -> bool {
        self.word
            .iter()
            .enumerate()
            .all(|(i, &v)| self.word[v as usize - 1] as usize == i + 1)
    }

    pub fn fixed_points(&self) -> usize {
        self.word
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v as usize == i + 1)
            .count()
    }

    /// Fixed points and number of 2-cycles of an involution.
    pub fn stats(&self) -> Result<InvolutionStats> {
        if !self.is_involution() {
            return Err(Error::NotAnInvolution(self.to_string()));
        }
        let fp = self.fixed_points();
        Ok(InvolutionStats {
            fp,
            cyc: (self.len() - fp) / 2,
        })
    }

    /// `p^rc(i) = n + 1 - p(n + 1 - i)`.
    pub fn reverse_complement(&self) -> Permutation {
        let n = self.word.len() as u32;
        Permutation {
            word: self.word.iter().rev().map(|&v| n + 1 - v).collect(),
        }
    }

    /// Composition `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::InvalidArgument(format!(
                "cannot compose permutations of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(Permutation {
            word: other.word.iter().map(|&v| self.word[v as usize - 1]).collect(),
        })
    }

    /// Space-separated rendering, e.g. `10 8 9 7 5 6 4 2 3 1`.
    pub fn to_spaced(&self) -> String {
        spaced(&self.word)
    }
}

/// Fixed-point and transposition counts of an involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionStats {
    pub fp: usize,
    pub cyc: usize,
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(word: Vec<u32>) -> Result<Self> {
        Permutation::new(word)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.word
    }
}

/// Renders a word without separators when every symbol is a single digit,
/// otherwise space-separated.
pub fn render_word(word: &[u32]) -> String {
    if word.iter().all(|&v| v < 10) {
        word.iter().map(|v| v.to_string()).collect()
    } else {
        spaced(word)
    }
}

fn spaced(word: &[u32]) -> String {
    word.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_word(&self.word))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `"231"` (single-digit symbols, no separators) or a
    /// whitespace/dot separated list such as `"10 8 9 7 5 6 4 2 3 1"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::NotAPermutation(s.to_string());
        let word: Vec<u32> = if s.contains(|c: char| c.is_whitespace() || c == '.') {
            s.split(|c: char| c.is_whitespace() || c == '.')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Permutation::new(word)
    }
}

/// All permutations of length `n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut word: Vec<u32> = (1..=n as u32).collect();
    loop {
        out.push(Permutation { word: word.clone() });
        // next lexicographic permutation
        let Some(i) = (1..word.len()).rev().find(|&i| word[i - 1] < word[i]) else {
            break;
        };
        let j = (i..word.len()).rev().find(|&j| word[j] > word[i - 1]).unwrap();
        word.swap(i - 1, j);
        word[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p("231").inverse(), p("312"));
        assert_eq!(p("1").inverse(), p("1"));
        let q = p("4231");
        assert_eq!(q.inverse(), q);
        assert_eq!(q.compose(&q).unwrap(), Permutation::identity(4));
    }

    #[test]
    fn involution_examples() {
        assert!(p("10 8 9 7 5 6 4 2 3 1").is_involution());
        assert!(!p("231").is_involution());
        assert!(Permutation::empty().is_involution());
    }

    #[test]
    fn stats_examples() {
        assert_eq!(p("1234").stats().unwrap(), InvolutionStats { fp: 4, cyc: 0 });
        assert_eq!(p("2143").stats().unwrap(), InvolutionStats { fp: 0, cyc: 2 });
        assert_eq!(p("132").stats().unwrap(), InvolutionStats { fp: 1, cyc: 1 });
        assert!(matches!(p("231").stats(), Err(Error::NotAnInvolution(_))));
    }

    #[test]
    fn t1y1_count_over_s3() {
        let count = all_permutations(3)
            .into_iter()
            .filter(|q| q.is_involution())
            .filter(|q| q.stats().unwrap() == InvolutionStats { fp: 1, cyc: 1 })
            .count();
        assert_eq!(count, 3);
    }

    #[test]
    fn reverse_complement_examples() {
        assert_eq!(p("132").reverse_complement(), p("213"));
        assert_eq!(p("231").reverse_complement(), p("312"));
        for n in 0..6 {
            assert_eq!(Permutation::identity(n).reverse_complement(), Permutation::identity(n));
        }
    }

    #[test]
    fn exhaustive_symmetries() {
        for n in 0..=8 {
            for q in all_permutations(n) {
                assert_eq!(q.inverse().inverse(), q);
                let rc = q.reverse_complement();
                assert_eq!(rc.reverse_complement(), q);
                assert_eq!(rc.is_involution(), q.is_involution());
                if let Ok(s) = q.stats() {
                    assert_eq!(s.fp + 2 * s.cyc, n);
                }
            }
        }
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![3, 1]).is_err());
        assert!("12a".parse::<Permutation>().is_err());
    }

    #[test]
    fn text_and_json_forms() {
        let q = p("10 8 9 7 5 6 4 2 3 1");
        assert_eq!(q.to_string(), "10 8 9 7 5 6 4 2 3 1");
        assert_eq!(p("231").to_string(), "231");
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, "[10,8,9,7,5,6,4,2,3,1]");
        let back: Permutation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }

    #[test]
    fn permutation_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| all_permutations(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 24, 120, 720]);
    }
}
