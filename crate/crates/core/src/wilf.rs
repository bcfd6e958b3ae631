//! Wilf classes of single H-patterns over involutions.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::closed_form::Family;
use crate::error::{Error, Result};
use crate::oracle::avoiders;
use crate::pattern::{HPattern, Role};
use crate::perm::all_permutations;
use crate::theorem::{apply_main_theorem, DistributionTable, Source};

/// Avoidance sequences and the classes they induce.
#[derive(Debug, Clone, Serialize)]
pub struct WilfReport {
    pub length: usize,
    pub max_n: usize,
    /// Classes sorted by decreasing size, then by smallest member.
    pub classes: Vec<Vec<HPattern>>,
    /// `sequences[τ][n]` = involutions of length `n` avoiding `τ`.
    pub sequences: BTreeMap<HPattern, Vec<u64>>,
    /// Patterns whose sequence was recomputed from a closed-form `F_T`.
    pub gf_checked: Vec<HPattern>,
}

/// Groups the patterns of length `k ∈ {2, 3}` by their avoidance
/// sequences for `n ≤ max_n`. Patterns in one of the four families are
/// cross-checked against `F_T`; a disagreement is an error.
pub fn wilf_classes(k: usize, max_n: usize) -> Result<WilfReport> {
    if !(2..=3).contains(&k) {
        return Err(Error::InvalidArgument(format!("pattern length {k} not in 2..=3")));
    }
    if max_n < 6 {
        return Err(Error::InvalidArgument(format!("max n {max_n} below 6")));
    }
    let patterns: Vec<HPattern> = all_permutations(k)
        .into_iter()
        .map(|p| HPattern::new(p).expect("length at least two"))
        .collect();
    let mut sequences = BTreeMap::new();
    for p in &patterns {
        let seq: Vec<u64> = (0..=max_n).map(|n| avoiders(std::slice::from_ref(p), n)).collect();
        sequences.insert(p.clone(), seq);
    }
    let mut gf_checked = Vec::new();
    let mut tables: BTreeMap<&'static str, DistributionTable> = BTreeMap::new();
    for p in &patterns {
        let Some(fam) = Family::ALL.into_iter().find(|f| f.pattern_set().contains(p)) else {
            continue;
        };
        if !tables.contains_key(fam.spec()) {
            let t = apply_main_theorem(&fam.pattern_set(), max_n as u32, Source::ClosedForm, None)?;
            tables.insert(fam.spec(), t);
        }
        let table = &tables[fam.spec()];
        let set = table.set();
        let avoid = |n: usize| {
            table.count_where(n, |sv| match set.role(p) {
                Some(Role::Involutive(i)) => sv.involutive[i].sib == 0 && sv.involutive[i].nsib == 0,
                Some(Role::Transversal(j)) | Some(Role::TransversalInverse(j)) => sv.transversal[j] == 0,
                None => unreachable!("pattern is in the family"),
            })
        };
        let gf: Vec<u64> = (0..=max_n).map(avoid).collect();
        if gf != sequences[p] {
            return Err(Error::Mismatch(format!(
                "avoidance sequence of {p} disagrees with the generating function"
            )));
        }
        gf_checked.push(p.clone());
    }
    let mut groups: BTreeMap<&Vec<u64>, Vec<HPattern>> = BTreeMap::new();
    for (p, seq) in &sequences {
        groups.entry(seq).or_default().push(p.clone());
    }
    let mut classes: Vec<Vec<HPattern>> = groups.into_values().collect();
    classes.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a[0].cmp(&b[0])));
    Ok(WilfReport {
        length: k,
        max_n,
        classes,
        sequences,
        gf_checked,
    })
}

impl WilfReport {
    /// Classes rendered as `{132,213}`.
    pub fn class_strings(&self) -> Vec<String> {
        self.classes
            .iter()
            .map(|c| {
                let names: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect()
    }

    /// Smallest `n` where the sequences of `a` and `b` differ.
    pub fn first_difference(&self, a: &HPattern, b: &HPattern) -> Option<usize> {
        let (sa, sb) = (self.sequences.get(a)?, self.sequences.get(b)?);
        sa.iter().zip(sb).position(|(x, y)| x != y)
    }
}
