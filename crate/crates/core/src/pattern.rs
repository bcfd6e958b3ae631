//! Hertzsprung patterns: occurrences, self-inverse pattern sets, siblings,
//! marked permutations and H-inflation.
//!
//! An occurrence of a pattern `τ ∈ S_k` in a word `w` is a factor
//! `w[j..j+k)` such that `w[j+i-1] = τ(i) + c` for a single integer offset
//! `c`. Occurrences are identified by the triple `(start, pattern, offset)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{render_word, Permutation};

/// A pattern of length at least two.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HPattern(Permutation);

impl HPattern {
    pub fn new(pat: Permutation) -> Result<Self> {
        if pat.len() < 2 {
            return Err(Error::PatternTooShort(pat.to_string()));
        }
        Ok(HPattern(pat))
    }

    pub fn perm(&self) -> &Permutation {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn inverse(&self) -> HPattern {
        HPattern(self.0.inverse())
    }

    pub fn is_involution(&self) -> bool {
        self.0.is_involution()
    }

    pub fn reverse_complement(&self) -> HPattern {
        HPattern(self.0.reverse_complement())
    }

    /// Offset `c` if `word[start-1..]` begins with an occurrence of `self`.
    pub fn match_at(&self, word: &[u32], start: usize) -> Option<u32> {
        let k = self.len();
        if start == 0 || start + k - 1 > word.len() {
            return None;
        }
        let factor = &word[start - 1..start - 1 + k];
        let pat = self.0.word();
        if factor[0] < pat[0] {
            return None;
        }
        let c = factor[0] - pat[0];
        factor
            .iter()
            .zip(pat)
            .all(|(&b, &t)| b == t + c)
            .then_some(c)
    }

    /// Number of occurrences of this pattern in `word`.
    pub fn count_in(&self, word: &[u32]) -> usize {
        (1..=word.len())
            .filter(|&j| self.match_at(word, j).is_some())
            .count()
    }

    pub fn occurs_in(&self, word: &[u32]) -> bool {
        (1..=word.len()).any(|j| self.match_at(word, j).is_some())
    }
}

impl fmt::Display for HPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for HPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let perm: Permutation = s
            .parse()
            .map_err(|_| Error::BadPatternSpec(format!("{s:?} is not a permutation")))?;
        HPattern::new(perm)
    }
}

impl Serialize for HPattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HPattern {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An occurrence `(pattern, start, offset)`; `start` is one-based.
///
/// Ordering is by start position, then pattern, then offset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    pub start: usize,
    pub pattern: HPattern,
    pub offset: u32,
}

impl Occurrence {
    pub fn new(pattern: HPattern, start: usize, offset: u32) -> Self {
        Occurrence {
            start,
            pattern,
            offset,
        }
    }

    /// Last position covered (inclusive).
    pub fn end(&self) -> usize {
        self.start + self.pattern.len() - 1
    }

    /// The factor `τ(1)+c … τ(k)+c`.
    pub fn factor(&self) -> Vec<u32> {
        self.pattern
            .perm()
            .word()
            .iter()
            .map(|&t| t + self.offset)
            .collect()
    }

    pub fn matches(&self, word: &[u32]) -> bool {
        self.pattern.match_at(word, self.start) == Some(self.offset)
    }

    /// True if the occurrence spans the cut between positions `p` and `p+1`.
    pub fn spans_cut(&self, p: usize) -> bool {
        self.start <= p && p < self.end()
    }

    /// The occurrence of `τ⁻¹` at start `c+1` with offset `j-1`. Only
    /// meaningful inside an involution; see [`sibling`].
    pub fn sibling_unchecked(&self) -> Occurrence {
        Occurrence {
            start: self.offset as usize + 1,
            pattern: self.pattern.inverse(),
            offset: (self.start - 1) as u32,
        }
    }

    pub fn shifted(&self, positions: usize, values: u32) -> Occurrence {
        Occurrence {
            start: self.start + positions,
            pattern: self.pattern.clone(),
            offset: self.offset + values,
        }
    }
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_word(&self.factor()))
    }
}

#[derive(Serialize, Deserialize)]
struct OccurrenceRepr {
    pattern: HPattern,
    start: usize,
    offset: u32,
    #[serde(default)]
    factor: Option<String>,
}

impl Serialize for Occurrence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OccurrenceRepr {
            pattern: self.pattern.clone(),
            start: self.start,
            offset: self.offset,
            factor: Some(self.to_string()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Occurrence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = OccurrenceRepr::deserialize(d)?;
        if r.start == 0 {
            return Err(serde::de::Error::custom("start is one-based"));
        }
        let occ = Occurrence::new(r.pattern, r.start, r.offset);
        if let Some(f) = r.factor {
            if f != occ.to_string() {
                return Err(serde::de::Error::custom(format!(
                    "factor {f} does not match pattern {} with offset {}",
                    occ.pattern, occ.offset
                )));
            }
        }
        Ok(occ)
    }
}

/// Where a pattern sits in the decomposition `T = T_I ⊔ T_L ⊔ T_L⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    /// Index into the involutive patterns `T_I`.
    Involutive(usize),
    /// Index into the transversal `T_L`.
    Transversal(usize),
    /// Inverse of the transversal pattern with this index.
    TransversalInverse(usize),
}

/// A simple, self-inverse set of H-patterns with its decomposition
/// `T_I ⊔ T_L ⊔ T_L⁻¹`.
///
/// `T_I` is sorted; `T_L` holds the lexicographically smaller member of each
/// pair `{σ, σ⁻¹}` of non-involutive patterns, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternSet {
    patterns: Vec<HPattern>,
    involutive: Vec<HPattern>,
    transversal: Vec<HPattern>,
    transversal_inv: Vec<HPattern>,
}

impl PatternSet {
    /// Validates and decomposes a pattern set. Rejects duplicates, non-simple
    /// sets and sets that are not closed under inverses.
    pub fn new(patterns: impl IntoIterator<Item = HPattern>) -> Result<Self> {
        let mut patterns: Vec<HPattern> = patterns.into_iter().collect();
        patterns.sort();
        if let Some(w) = patterns.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePattern(w[0].to_string()));
        }
        for inner in &patterns {
            for outer in &patterns {
                if inner != outer && inner.len() <= outer.len() && inner.occurs_in(outer.perm().word())
                {
                    return Err(Error::NotSimple {
                        inner: inner.to_string(),
                        outer: outer.to_string(),
                    });
                }
            }
        }
        for p in &patterns {
            let inv = p.inverse();
            if patterns.binary_search(&inv).is_err() {
                return Err(Error::NotSelfInverse(inv.to_string()));
            }
        }
        let involutive: Vec<HPattern> = patterns.iter().filter(|p| p.is_involution()).cloned().collect();
        let transversal: Vec<HPattern> = patterns
            .iter()
            .filter(|p| !p.is_involution() && **p < p.inverse())
            .cloned()
            .collect();
        let transversal_inv = transversal.iter().map(HPattern::inverse).collect();
        Ok(PatternSet {
            patterns,
            involutive,
            transversal,
            transversal_inv,
        })
    }

    /// Adds every missing inverse before validating.
    pub fn closed(patterns: impl IntoIterator<Item = HPattern>) -> Result<Self> {
        let mut set: BTreeSet<HPattern> = BTreeSet::new();
        for p in patterns {
            set.insert(p.inverse());
            set.insert(p);
        }
        PatternSet::new(set)
    }

    pub fn empty() -> Self {
        PatternSet {
            patterns: Vec::new(),
            involutive: Vec::new(),
            transversal: Vec::new(),
            transversal_inv: Vec::new(),
        }
    }

    /// Parses a comma-separated list such as `"231,312"`.
    pub fn parse_spec(spec: &str, close: bool) -> Result<Self> {
        let patterns = parse_pattern_list(spec)?;
        if close {
            PatternSet::closed(patterns)
        } else {
            PatternSet::new(patterns)
        }
    }

    pub fn patterns(&self) -> &[HPattern] {
        &self.patterns
    }

    /// `T_I`.
    pub fn involutive(&self) -> &[HPattern] {
        &self.involutive
    }

    /// `T_L`.
    pub fn transversal(&self) -> &[HPattern] {
        &self.transversal
    }

    /// `T_L⁻¹`, index-aligned with [`PatternSet::transversal`].
    pub fn transversal_inverse(&self) -> &[HPattern] {
        &self.transversal_inv
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn contains(&self, p: &HPattern) -> bool {
        self.patterns.binary_search(p).is_ok()
    }

    pub fn role(&self, p: &HPattern) -> Option<Role> {
        if let Some(i) = self.involutive.iter().position(|q| q == p) {
            return Some(Role::Involutive(i));
        }
        if let Some(k) = self.transversal.iter().position(|q| q == p) {
            return Some(Role::Transversal(k));
        }
        self.transversal_inv
            .iter()
            .position(|q| q == p)
            .map(Role::TransversalInverse)
    }

    pub fn max_len(&self) -> usize {
        self.patterns.iter().map(HPattern::len).max().unwrap_or(0)
    }

    /// All occurrences of patterns of this set in `word`, sorted by
    /// `(start, pattern)`.
    pub fn find_occurrences(&self, word: &[u32]) -> Vec<Occurrence> {
        let mut out = Vec::new();
        for j in 1..=word.len() {
            for p in &self.patterns {
                if let Some(c) = p.match_at(word, j) {
                    out.push(Occurrence::new(p.clone(), j, c));
                }
            }
        }
        out
    }

    /// Per-pattern occurrence statistics of an involution.
    pub fn count_stats(&self, p: &Permutation) -> Result<PatternCounts> {
        if !p.is_involution() {
            return Err(Error::NotAnInvolution(p.to_string()));
        }
        let mut involutive = vec![SibCounts::default(); self.involutive.len()];
        let mut transversal = vec![0usize; self.transversal.len()];
        let mut totals = vec![0usize; self.patterns.len()];
        for occ in self.find_occurrences(p.word()) {
            let idx = self.patterns.binary_search(&occ.pattern).expect("pattern from set");
            totals[idx] += 1;
            match self.role(&occ.pattern) {
                Some(Role::Involutive(i)) => {
                    if occ.sibling_unchecked() == occ {
                        involutive[i].sib += 1;
                    } else {
                        involutive[i].nsib += 1;
                    }
                }
                Some(Role::Transversal(k)) => transversal[k] += 1,
                Some(Role::TransversalInverse(_)) | None => {}
            }
        }
        Ok(PatternCounts {
            vector: StatisticsVector {
                n: p.len(),
                fp: p.fixed_points(),
                involutive,
                transversal,
            },
            totals,
        })
    }

    /// Comma-separated rendering, e.g. `231,312`.
    pub fn spec_string(&self) -> String {
        self.patterns
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.spec_string())
    }
}

/// Parses `"231,312"` into patterns without validating the set.
pub fn parse_pattern_list(spec: &str) -> Result<Vec<HPattern>> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Ok(Vec::new());
    }
    spec.split(',')
        .map(|t| {
            let t = t.trim();
            if t.is_empty() {
                return Err(Error::BadPatternSpec(format!("empty pattern in {spec:?}")));
            }
            t.parse::<HPattern>()
        })
        .collect()
}

/// Sibling of an occurrence inside an involution.
pub fn sibling(occ: &Occurrence, p: &Permutation) -> Result<Occurrence> {
    if !p.is_involution() {
        return Err(Error::NotAnInvolution(p.to_string()));
    }
    if !occ.matches(p.word()) {
        return Err(Error::InvalidOccurrence(occ.to_string()));
    }
    Ok(occ.sibling_unchecked())
}

/// `(sib, nsib)` occurrence counts of an involutive pattern.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SibCounts {
    pub sib: usize,
    pub nsib: usize,
}

/// Length, fixed points, `(sib, nsib)` per `T_I` pattern and occurrence
/// count per `T_L` pattern.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StatisticsVector {
    pub n: usize,
    pub fp: usize,
    pub involutive: Vec<SibCounts>,
    pub transversal: Vec<usize>,
}

impl StatisticsVector {
    /// All pattern counts are zero.
    pub fn is_avoiding(&self) -> bool {
        self.involutive.iter().all(|c| c.sib == 0 && c.nsib == 0)
            && self.transversal.iter().all(|&c| c == 0)
    }
}

/// Result of [`PatternSet::count_stats`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternCounts {
    pub vector: StatisticsVector,
    /// Total occurrences per pattern, aligned with [`PatternSet::patterns`].
    pub totals: Vec<usize>,
}

/// A word without repeated symbols together with a set of marked occurrences.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkedPermutation {
    word: Vec<u32>,
    marks: BTreeSet<Occurrence>,
}

impl MarkedPermutation {
    /// Checks that the word has no repeats and that every mark occurs in it.
    pub fn new(word: Vec<u32>, marks: impl IntoIterator<Item = Occurrence>) -> Result<Self> {
        let distinct: BTreeSet<u32> = word.iter().copied().collect();
        if distinct.len() != word.len() {
            return Err(Error::InvalidArgument(format!(
                "word {} has repeated symbols",
                render_word(&word)
            )));
        }
        let marks: BTreeSet<Occurrence> = marks.into_iter().collect();
        if let Some(bad) = marks.iter().find(|m| !m.matches(&word)) {
            return Err(Error::InvalidOccurrence(bad.to_string()));
        }
        Ok(MarkedPermutation { word, marks })
    }

    /// Builds from a permutation and marks given by their factors, e.g.
    /// `("4231", ["423", "231"])`.
    pub fn from_factors(word: &Permutation, factors: &[&str]) -> Result<Self> {
        let w = word.word();
        let mut marks = Vec::new();
        for f in factors {
            let fw: Vec<u32> = parse_factor(f)?;
            let start = w
                .windows(fw.len())
                .position(|win| win == fw.as_slice())
                .ok_or_else(|| Error::InvalidOccurrence(f.to_string()))?
                + 1;
            let min = *fw.iter().min().unwrap();
            let pattern = HPattern::new(Permutation::new(fw.iter().map(|v| v - min + 1).collect())
                .map_err(|_| Error::InvalidOccurrence(f.to_string()))?)?;
            marks.push(Occurrence::new(pattern, start, min - 1));
        }
        MarkedPermutation::new(w.to_vec(), marks)
    }

    pub(crate) fn from_parts_unchecked(word: Vec<u32>, marks: BTreeSet<Occurrence>) -> Self {
        MarkedPermutation { word, marks }
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn marks(&self) -> &BTreeSet<Occurrence> {
        &self.marks
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn permutation(&self) -> Result<Permutation> {
        Permutation::new(self.word.clone())
    }

    /// True if every mark is an occurrence of a pattern in `set`.
    pub fn is_marked_by(&self, set: &PatternSet) -> bool {
        self.marks.iter().all(|m| set.contains(&m.pattern))
    }

    /// No cut between consecutive positions is free of marks.
    pub fn is_non_concatenable(&self) -> bool {
        (1..self.word.len()).all(|p| self.marks.iter().any(|m| m.spans_cut(p)))
    }

    /// Contains an occurrence iff it contains its sibling. The word should be
    /// an involution.
    pub fn is_sibling_closed(&self) -> bool {
        self.marks
            .iter()
            .all(|m| self.marks.contains(&m.sibling_unchecked()))
    }

    /// Marks rendered as factors in position order.
    pub fn mark_factors(&self) -> Vec<String> {
        self.marks.iter().map(|m| m.to_string()).collect()
    }
}

impl fmt::Display for MarkedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.word.iter().all(|&v| v < 10) { " " } else { ", " };
        write!(f, "{} | {}", render_word(&self.word), self.mark_factors().join(sep))
    }
}

fn parse_factor(f: &str) -> Result<Vec<u32>> {
    let bad = || Error::InvalidOccurrence(f.to_string());
    if f.contains(' ') {
        f.split_whitespace().map(|t| t.parse().map_err(|_| bad())).collect()
    } else {
        f.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect()
    }
}

/// H-inflation `ρ[(α_1, M_1), …, (α_m, M_m)]`: block `i` is shifted in value
/// by the total length of the blocks whose skeleton value is below `ρ(i)`,
/// and its marks move with it.
pub fn inflate(rho: &Permutation, parts: &[MarkedPermutation]) -> Result<MarkedPermutation> {
    if rho.len() != parts.len() {
        return Err(Error::InflationMismatch {
            skeleton: rho.len(),
            parts: parts.len(),
        });
    }
    for part in parts {
        if part.is_empty() {
            return Err(Error::EmptyPart);
        }
        part.permutation()?;
    }
    // value shift of the block holding skeleton value v
    let inv = rho.inverse();
    let mut value_shift = vec![0u32; rho.len() + 1];
    let mut acc = 0u32;
    for v in 1..=rho.len() {
        value_shift[v] = acc;
        acc += parts[inv.at(v) as usize - 1].len() as u32;
    }
    let mut word = Vec::with_capacity(acc as usize);
    let mut marks = BTreeSet::new();
    for (i, part) in parts.iter().enumerate() {
        let shift = value_shift[rho.word()[i] as usize];
        let pos = word.len();
        word.extend(part.word().iter().map(|&v| v + shift));
        marks.extend(part.marks().iter().map(|m| m.shifted(pos, shift)));
    }
    Ok(MarkedPermutation { word, marks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pat(s: &str) -> HPattern {
        s.parse().unwrap()
    }

    fn set(s: &str) -> PatternSet {
        PatternSet::parse_spec(s, false).unwrap()
    }

    fn factors(occs: &[Occurrence]) -> Vec<String> {
        occs.iter().map(|o| o.to_string()).collect()
    }

    #[test]
    fn occurrences_of_231() {
        let t = PatternSet::closed([pat("231")]).unwrap();
        let w = perm("897235641");
        let occs: Vec<_> = t
            .find_occurrences(w.word())
            .into_iter()
            .filter(|o| o.pattern == pat("231"))
            .collect();
        assert_eq!(occs.iter().map(|o| o.start).collect::<Vec<_>>(), vec![1, 6]);
        assert_eq!(factors(&occs), vec!["897", "564"]);
        assert_eq!(pat("231").count_in(w.word()), 2);
    }

    #[test]
    fn occurrences_of_12_in_monotone_run() {
        let t = set("12");
        let occs = t.find_occurrences(perm("1234").word());
        assert_eq!(occs.iter().map(|o| o.start).collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn occurrences_with_mixed_lengths() {
        let t = set("123,2134");
        let occs = t.find_occurrences(perm("1 3 2 4 5 6 8 7 9 10").word());
        let got: Vec<(String, String)> = occs
            .iter()
            .map(|o| (o.pattern.to_string(), o.to_string()))
            .collect();
        assert_eq!(
            got,
            vec![
                ("2134".to_string(), "3245".to_string()),
                ("123".to_string(), "456".to_string()),
                ("2134".to_string(), "8 7 9 10".to_string()),
            ]
        );
    }

    #[test]
    fn sibling_examples() {
        let p = perm("10 8 9 7 5 6 4 2 3 1");
        let occ = Occurrence::new(pat("231"), 2, 6);
        assert_eq!(occ.to_string(), "897");
        let sib = sibling(&occ, &p).unwrap();
        assert_eq!(sib.pattern, pat("312"));
        assert_eq!(sib.to_string(), "423");
        assert_eq!(sibling(&sib, &p).unwrap(), occ);

        let twelve = Occurrence::new(pat("12"), 1, 0);
        assert_eq!(sibling(&twelve, &perm("12")).unwrap(), twelve);

        let q = perm("4231");
        let occ = Occurrence::new(pat("231"), 2, 0);
        let sib = sibling(&occ, &q).unwrap();
        assert_eq!(sib.to_string(), "423");
        let t = set("231,312");
        let found = t.find_occurrences(q.word());
        assert!(found.contains(&occ) && found.contains(&sib));

        assert!(matches!(sibling(&occ, &perm("231")), Err(Error::NotAnInvolution(_))));
        let missing = Occurrence::new(pat("12"), 1, 0);
        assert!(matches!(sibling(&missing, &q), Err(Error::InvalidOccurrence(_))));
    }

    #[test]
    fn count_stats_examples() {
        let t = set("231,312");
        let c = t.count_stats(&perm("4231")).unwrap();
        assert_eq!(c.vector.transversal, vec![1]);
        assert_eq!(c.totals, vec![1, 1]);

        let t = set("12,21");
        let c = t.count_stats(&perm("21")).unwrap();
        assert_eq!(c.vector.involutive[1], SibCounts { sib: 1, nsib: 0 });
        // both transpositions of 2143 are their own siblings
        let c = t.count_stats(&perm("2143")).unwrap();
        assert_eq!(c.vector.involutive[1], SibCounts { sib: 2, nsib: 0 });
        assert_eq!(c.vector.fp, 0);
        // 43 and 21 are mutual siblings in 4321, 32 is its own
        let c = t.count_stats(&perm("4321")).unwrap();
        assert_eq!(c.vector.involutive[1], SibCounts { sib: 1, nsib: 2 });
        assert!(t.count_stats(&perm("231")).is_err());
    }

    #[test]
    fn set_validation() {
        assert!(matches!(
            PatternSet::parse_spec("231", false),
            Err(Error::NotSelfInverse(ref m)) if m == "312"
        ));
        assert!(matches!(
            PatternSet::parse_spec("12,123", false),
            Err(Error::NotSimple { .. })
        ));
        assert!(matches!(
            PatternSet::parse_spec("12,12", false),
            Err(Error::DuplicatePattern(_))
        ));
        assert!(matches!(
            PatternSet::parse_spec("1", false),
            Err(Error::PatternTooShort(_))
        ));
        assert!(PatternSet::parse_spec("1,,2", false).is_err());
        assert!(PatternSet::parse_spec("122", false).is_err());
        let t = PatternSet::parse_spec("231", true).unwrap();
        assert_eq!(t.spec_string(), "231,312");
        assert_eq!(t.transversal(), &[pat("231")]);
        assert_eq!(t.transversal_inverse(), &[pat("312")]);
        assert!(t.involutive().is_empty());
        let t = set("321,123");
        assert_eq!(t.involutive(), &[pat("123"), pat("321")]);
        assert_eq!(t.role(&pat("321")), Some(Role::Involutive(1)));
        assert!(PatternSet::parse_spec("", false).unwrap().is_empty());
    }

    #[test]
    fn inflation_small() {
        let parts = vec![
            MarkedPermutation::from_factors(&perm("1"), &[]).unwrap(),
            MarkedPermutation::from_factors(&perm("21"), &["21"]).unwrap(),
            MarkedPermutation::from_factors(&perm("123"), &["12", "23"]).unwrap(),
        ];
        let got = inflate(&perm("312"), &parts).unwrap();
        assert_eq!(got.word(), perm("621345").word());
        assert_eq!(got.mark_factors(), vec!["21", "34", "45"]);
    }

    #[test]
    fn inflation_identity_and_errors() {
        let part = MarkedPermutation::from_factors(&perm("4231"), &["423", "231"]).unwrap();
        let got = inflate(&perm("1"), std::slice::from_ref(&part)).unwrap();
        assert_eq!(got, part);
        assert!(matches!(
            inflate(&perm("12"), std::slice::from_ref(&part)),
            Err(Error::InflationMismatch { .. })
        ));
        let empty = MarkedPermutation::new(vec![], []).unwrap();
        assert!(matches!(inflate(&perm("1"), &[empty]), Err(Error::EmptyPart)));
    }

    #[test]
    fn inflation_into_involution() {
        let parts = vec![
            MarkedPermutation::from_factors(&perm("312"), &["312"]).unwrap(),
            MarkedPermutation::from_factors(&perm("4231"), &["423", "231"]).unwrap(),
            MarkedPermutation::from_factors(&perm("231"), &["231"]).unwrap(),
        ];
        let got = inflate(&perm("321"), &parts).unwrap();
        assert_eq!(got.word(), perm("10 8 9 7 5 6 4 2 3 1").word());
        let mut f = got.mark_factors();
        f.sort();
        let mut want = vec!["10 8 9", "756", "564", "231"];
        want.sort();
        assert_eq!(f, want);
        assert!(got.is_sibling_closed());
        assert!(got.is_marked_by(&set("231,312")));
    }

    #[test]
    fn occurrence_json() {
        let occ = Occurrence::new(pat("231"), 1, 6);
        let v = serde_json::to_value(&occ).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"pattern": "231", "start": 1, "offset": 6, "factor": "897"})
        );
        let back: Occurrence = serde_json::from_value(v).unwrap();
        assert_eq!(back, occ);
        let bad = serde_json::json!({"pattern": "231", "start": 1, "offset": 6, "factor": "898"});
        assert!(serde_json::from_value::<Occurrence>(bad).is_err());
    }

    #[test]
    fn marked_permutation_rejects_bad_marks() {
        let occ = Occurrence::new(pat("12"), 1, 0);
        assert!(MarkedPermutation::new(vec![2, 1], [occ]).is_err());
        assert!(MarkedPermutation::new(vec![1, 1], []).is_err());
    }
}
