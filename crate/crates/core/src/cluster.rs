//! T-clusters, involutory T-clusters and their generating functions.
//!
//! Clusters are enumerated by chaining marked occurrences left to right.
//! With a simple set no occurrence can sit inside another, so in a cluster
//! sorted by start both starts and ends strictly increase and each mark
//! starts no later than the previous one ends. Offsets pin every value, so
//! the search only branches on which pattern comes next and where.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::pattern::{HPattern, MarkedPermutation, Occurrence, PatternSet, Role};
use crate::perm::Permutation;
use crate::series::{MultiSeries, VarSet};

/// A marked permutation of length at least two that is not a concatenation
/// of two non-empty marked words.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cluster {
    marked: MarkedPermutation,
}

impl Cluster {
    /// Validates the cluster conditions against `set`.
    pub fn new(marked: MarkedPermutation, set: &PatternSet) -> Result<Self> {
        if marked.len() < 2 {
            return Err(Error::InvalidArgument("cluster must have length at least 2".into()));
        }
        marked.permutation()?;
        if !marked.is_marked_by(set) {
            return Err(Error::InvalidArgument(format!(
                "{marked} has marks outside {set}"
            )));
        }
        if !marked.is_non_concatenable() {
            return Err(Error::InvalidArgument(format!("{marked} is a concatenation")));
        }
        Ok(Cluster { marked })
    }

    pub fn marked(&self) -> &MarkedPermutation {
        &self.marked
    }

    pub fn word(&self) -> &[u32] {
        self.marked.word()
    }

    pub fn marks(&self) -> &BTreeSet<Occurrence> {
        self.marked.marks()
    }

    pub fn len(&self) -> usize {
        self.marked.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn permutation(&self) -> Permutation {
        Permutation::from_word_unchecked(self.word().to_vec())
    }

    /// Involution with a sibling-closed mark set.
    pub fn is_involutory(&self) -> bool {
        self.permutation().is_involution() && self.marked.is_sibling_closed()
    }

    /// Number of marks per pattern, aligned with [`PatternSet::patterns`].
    pub fn mark_counts(&self, set: &PatternSet) -> Vec<usize> {
        let mut out = vec![0; set.patterns().len()];
        for m in self.marks() {
            if let Ok(i) = set.patterns().binary_search(&m.pattern) {
                out[i] += 1;
            }
        }
        out
    }
}

impl std::fmt::Display for Cluster {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.marked.fmt(f)
    }
}

/// A cluster whose permutation is an involution and whose marks are closed
/// under taking siblings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InvolutoryCluster(Cluster);

impl InvolutoryCluster {
    pub fn new(cluster: Cluster) -> Result<Self> {
        if !cluster.permutation().is_involution() {
            return Err(Error::NotAnInvolution(cluster.permutation().to_string()));
        }
        if !cluster.marked.is_sibling_closed() {
            return Err(Error::InvalidArgument(format!(
                "marks of {cluster} are not sibling-closed"
            )));
        }
        Ok(InvolutoryCluster(cluster))
    }

    pub fn cluster(&self) -> &Cluster {
        &self.0
    }
}

struct Search<'a> {
    patterns: &'a [HPattern],
    max_len: usize,
    vals: Vec<i64>,
    used: HashSet<i64>,
    marks: Vec<(usize, usize, i64)>,
    out: Vec<Cluster>,
}

impl Search<'_> {
    fn value_span(&self) -> (i64, i64) {
        let min = *self.vals.iter().min().unwrap();
        let max = *self.vals.iter().max().unwrap();
        (min, max)
    }

    fn record(&mut self) {
        let (min, _) = self.value_span();
        let word: Vec<u32> = self.vals.iter().map(|&v| (v - min + 1) as u32).collect();
        let marks: BTreeSet<Occurrence> = self
            .marks
            .iter()
            .map(|&(p, start, off)| {
                Occurrence::new(self.patterns[p].clone(), start, (off - min + 1) as u32)
            })
            .collect();
        self.out.push(Cluster {
            marked: MarkedPermutation::from_parts_unchecked(word, marks),
        });
    }

    fn extend(&mut self) {
        let len = self.vals.len();
        let (min, max) = self.value_span();
        if (max - min + 1) as usize == len {
            self.record();
        }
        if len >= self.max_len {
            return;
        }
        let last_start = self.marks.last().map(|m| m.1).unwrap_or(0);
        for start in last_start + 1..=len {
            for pi in 0..self.patterns.len() {
                let pat = self.patterns[pi].perm().word();
                let k = pat.len();
                let end = start + k - 1;
                if end <= len || end > self.max_len {
                    continue;
                }
                let off = self.vals[start - 1] - pat[0] as i64;
                let overlap = len - start + 1;
                if (1..overlap).any(|i| self.vals[start - 1 + i] != pat[i] as i64 + off) {
                    continue;
                }
                let fresh: Vec<i64> = pat[overlap..].iter().map(|&t| t as i64 + off).collect();
                if fresh.iter().any(|v| self.used.contains(v)) {
                    continue;
                }
                let new_min = fresh.iter().copied().fold(min, i64::min);
                let new_max = fresh.iter().copied().fold(max, i64::max);
                if (new_max - new_min + 1) as usize > self.max_len {
                    continue;
                }
                for &v in &fresh {
                    self.used.insert(v);
                    self.vals.push(v);
                }
                self.marks.push((pi, start, off));
                self.extend();
                self.marks.pop();
                for _ in 0..fresh.len() {
                    let v = self.vals.pop().unwrap();
                    self.used.remove(&v);
                }
            }
        }
    }
}

/// All T-clusters of length at most `max_len`, sorted by length, word and
/// marks.
pub fn enumerate_clusters(set: &PatternSet, max_len: usize) -> Vec<Cluster> {
    let patterns = set.patterns();
    let mut search = Search {
        patterns,
        max_len,
        vals: Vec::new(),
        used: HashSet::new(),
        marks: Vec::new(),
        out: Vec::new(),
    };
    for (pi, p) in patterns.iter().enumerate() {
        if p.len() > max_len {
            continue;
        }
        search.vals = p.perm().word().iter().map(|&v| v as i64).collect();
        search.used = search.vals.iter().copied().collect();
        search.marks = vec![(pi, 1, 0)];
        search.extend();
    }
    let mut out = search.out;
    out.sort_by(|a, b| (a.len(), a.word(), a.marks()).cmp(&(b.len(), b.word(), b.marks())));
    out
}

/// Involutory clusters of length at most `max_len`.
pub fn enumerate_involutory_clusters(set: &PatternSet, max_len: usize) -> Vec<InvolutoryCluster> {
    enumerate_clusters(set, max_len)
        .into_iter()
        .filter(Cluster::is_involutory)
        .map(InvolutoryCluster)
        .collect()
}

/// Variable naming for the generating functions of a pattern set.
///
/// Involutive patterns `τ_i` get `u{i}` (marked occurrences equal to their
/// sibling), `v{i}` (pairs of marked occurrences that are not) and `a{i}` in
/// the cluster series; transversal patterns `σ_k` get `w{k}`, and `b{k}`,
/// `c{k}` for `σ_k` and `σ_k⁻¹` in the cluster series. Indices are one-based.
#[derive(Debug, Clone)]
pub struct Layout {
    set: PatternSet,
    inv_vars: VarSet,
    cluster_vars: VarSet,
}

impl Layout {
    pub fn new(set: &PatternSet) -> Result<Self> {
        let r = set.involutive().len();
        let s = set.transversal().len();
        let mut inv: Vec<String> = vec!["t".into()];
        inv.extend((1..=r).map(|i| format!("u{i}")));
        inv.extend((1..=r).map(|i| format!("v{i}")));
        inv.extend((1..=s).map(|k| format!("w{k}")));
        let mut cl: Vec<String> = Vec::new();
        cl.extend((1..=r).map(|i| format!("a{i}")));
        cl.extend((1..=s).map(|k| format!("b{k}")));
        cl.extend((1..=s).map(|k| format!("c{k}")));
        Ok(Layout {
            set: set.clone(),
            inv_vars: VarSet::new(&inv)?,
            cluster_vars: VarSet::new(&cl)?,
        })
    }

    pub fn set(&self) -> &PatternSet {
        &self.set
    }

    /// Variables of `CI_T`, `MI_T` and `F_T`: `x, t, u…, v…, w…`.
    pub fn involution_vars(&self) -> &VarSet {
        &self.inv_vars
    }

    /// Variables of `C_T`: `x, a…, b…, c…`.
    pub fn cluster_vars(&self) -> &VarSet {
        &self.cluster_vars
    }

    pub fn r(&self) -> usize {
        self.set.involutive().len()
    }

    pub fn s(&self) -> usize {
        self.set.transversal().len()
    }

    pub fn u(i: usize) -> String {
        format!("u{}", i + 1)
    }

    pub fn v(i: usize) -> String {
        format!("v{}", i + 1)
    }

    pub fn w(k: usize) -> String {
        format!("w{}", k + 1)
    }

    pub fn a(i: usize) -> String {
        format!("a{}", i + 1)
    }

    pub fn b(k: usize) -> String {
        format!("b{}", k + 1)
    }

    pub fn c(k: usize) -> String {
        format!("c{}", k + 1)
    }

    /// Exponent vector over [`Layout::involution_vars`] for a length, fixed
    /// point count, per-`T_I` `(sib, nsib pairs)` and per-`T_L` counts.
    pub fn involution_exponents(
        &self,
        n: usize,
        fp: usize,
        sib_pairs: &[(usize, usize)],
        transversal: &[usize],
    ) -> Vec<u32> {
        let mut e = Vec::with_capacity(self.inv_vars.len());
        e.push(n as u32);
        e.push(fp as u32);
        e.extend(sib_pairs.iter().map(|&(s, _)| s as u32));
        e.extend(sib_pairs.iter().map(|&(_, p)| p as u32));
        e.extend(transversal.iter().map(|&c| c as u32));
        e
    }
}

/// `C_T` truncated at `x^n` from enumerated clusters.
pub fn cluster_gf(set: &PatternSet, n: u32) -> Result<MultiSeries> {
    let layout = Layout::new(set)?;
    Ok(cluster_gf_from(&layout, &enumerate_clusters(set, n as usize), n))
}

pub(crate) fn cluster_gf_from(layout: &Layout, clusters: &[Cluster], n: u32) -> MultiSeries {
    let set = layout.set();
    let r = layout.r();
    let s = layout.s();
    let terms = clusters.iter().filter(|c| c.len() as u32 <= n).map(|c| {
        let mut e = vec![0u32; 1 + r + 2 * s];
        e[0] = c.len() as u32;
        for m in c.marks() {
            match set.role(&m.pattern) {
                Some(Role::Involutive(i)) => e[1 + i] += 1,
                Some(Role::Transversal(k)) => e[1 + r + k] += 1,
                Some(Role::TransversalInverse(k)) => e[1 + r + s + k] += 1,
                None => {}
            }
        }
        (e, BigInt::from(1))
    });
    MultiSeries::from_terms(layout.cluster_vars(), n, terms).expect("cluster exponents fit")
}

/// `CI_T` truncated at `x^n` from enumerated involutory clusters. The
/// exponent of `v_i` counts pairs of marked non-self-sibling occurrences.
pub fn involutory_cluster_gf(set: &PatternSet, n: u32) -> Result<MultiSeries> {
    let layout = Layout::new(set)?;
    Ok(involutory_cluster_gf_from(
        &layout,
        &enumerate_involutory_clusters(set, n as usize),
        n,
    ))
}

pub(crate) fn involutory_cluster_gf_from(
    layout: &Layout,
    clusters: &[InvolutoryCluster],
    n: u32,
) -> MultiSeries {
    let set = layout.set();
    let r = layout.r();
    let s = layout.s();
    let terms = clusters.iter().filter(|c| c.0.len() as u32 <= n).map(|ic| {
        let c = &ic.0;
        let mut sib_pairs = vec![(0usize, 0usize); r];
        let mut trans = vec![0usize; s];
        for m in c.marks() {
            match set.role(&m.pattern) {
                Some(Role::Involutive(i)) => {
                    if m.sibling_unchecked() == *m {
                        sib_pairs[i].0 += 1;
                    } else {
                        sib_pairs[i].1 += 1;
                    }
                }
                Some(Role::Transversal(k)) => trans[k] += 1,
                _ => {}
            }
        }
        for p in &mut sib_pairs {
            debug_assert!(p.1 % 2 == 0);
            p.1 /= 2;
        }
        let fp = c.permutation().fixed_points();
        (
            layout.involution_exponents(c.len(), fp, &sib_pairs, &trans),
            BigInt::from(1),
        )
    });
    MultiSeries::from_terms(layout.involution_vars(), n, terms).expect("cluster exponents fit")
}

/// Number of marks per pattern of each cluster over `word`, keyed by
/// total mark count: `counts[j]` is the number of clusters on `word` with
/// `j` marks.
pub fn mark_count_profile(clusters: &[Cluster], word: &[u32]) -> Vec<u64> {
    let mut counts = Vec::new();
    for c in clusters.iter().filter(|c| c.word() == word) {
        let j = c.marks().len();
        if counts.len() <= j {
            counts.resize(j + 1, 0);
        }
        counts[j] += 1;
    }
    counts
}
