//! Brute-force ground truth over all involutions of a given length.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::cluster::Layout;
use crate::error::Result;
use crate::pattern::{HPattern, Occurrence, PatternSet, Role, StatisticsVector};
use crate::perm::Permutation;
use crate::series::MultiSeries;

/// Calls `f` on every involution of length `n`, in lexicographic order.
pub fn for_each_involution(n: usize, mut f: impl FnMut(&Permutation)) {
    fn go(word: &mut Vec<u32>, f: &mut impl FnMut(&Permutation)) {
        let Some(i) = word.iter().position(|&v| v == 0) else {
            f(&Permutation::from_word_unchecked(word.clone()));
            return;
        };
        // image of i: itself or a later free position, in increasing order
        for j in i..word.len() {
            if word[j] != 0 {
                continue;
            }
            word[i] = j as u32 + 1;
            word[j] = i as u32 + 1;
            go(word, f);
            word[j] = 0;
            word[i] = 0;
        }
    }
    let mut word = vec![0u32; n];
    go(&mut word, &mut f);
}

/// All involutions of length `n`.
pub fn enumerate_involutions(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for_each_involution(n, |p| out.push(p.clone()));
    out
}

/// `|ℐ_n|` from `I_n = I_{n−1} + (n−1) I_{n−2}`.
pub fn involution_count(n: usize) -> u64 {
    let (mut a, mut b) = (1u64, 1u64);
    for k in 2..=n {
        (a, b) = (b, b + (k as u64 - 1) * a);
    }
    if n == 0 {
        1
    } else {
        b
    }
}

/// Number of involutions of length `n` with each statistics vector.
pub fn brute_force_distribution(set: &PatternSet, n: usize) -> BTreeMap<StatisticsVector, u64> {
    let mut out = BTreeMap::new();
    for_each_involution(n, |p| {
        let sv = set.count_stats(p).expect("involution").vector;
        *out.entry(sv).or_insert(0) += 1;
    });
    out
}

/// Number of involutions of length `n` with no factor that is an occurrence
/// of any of `patterns`.
pub fn avoiders(patterns: &[HPattern], n: usize) -> u64 {
    let mut count = 0;
    for_each_involution(n, |p| {
        if !patterns.iter().any(|q| q.occurs_in(p.word())) {
            count += 1;
        }
    });
    count
}

/// `[x^n] MI_T` as the sum over involutions of
/// `t^fp ∏(1+u_i)^sib (1+v_i)^(nsib/2) ∏(1+w_k)^σ_k`.
pub fn brute_force_marked(set: &PatternSet, n: usize) -> Result<MultiSeries> {
    let layout = Layout::new(set)?;
    let iv = layout.involution_vars();
    let one = MultiSeries::one(iv, n as u32);
    let plus_one = |name: &str| -> Result<MultiSeries> {
        Ok(&one + &MultiSeries::var(iv, n as u32, name)?)
    };
    let mut factors = Vec::new();
    for i in 0..layout.r() {
        factors.push((plus_one(&Layout::u(i))?, plus_one(&Layout::v(i))?));
    }
    let wf: Vec<MultiSeries> = (0..layout.s())
        .map(|k| plus_one(&Layout::w(k)))
        .collect::<Result<_>>()?;
    let mut weights: BTreeMap<StatisticsVector, u64> = BTreeMap::new();
    for_each_involution(n, |p| {
        let sv = set.count_stats(p).expect("involution").vector;
        *weights.entry(sv).or_insert(0) += 1;
    });
    let mut total = MultiSeries::zero(iv, n as u32);
    for (sv, count) in weights {
        let mut term = MultiSeries::monomial(
            iv,
            n as u32,
            &[("x", n as u32), ("t", sv.fp as u32)],
            BigInt::from(count),
        )?;
        for (i, c) in sv.involutive.iter().enumerate() {
            term = &term * &factors[i].0.pow(c.sib as u32);
            term = &term * &factors[i].1.pow(c.nsib as u32 / 2);
        }
        for (k, &c) in sv.transversal.iter().enumerate() {
            term = &term * &wf[k].pow(c as u32);
        }
        total = &total + &term;
    }
    Ok(total)
}

/// `[x^n] MI_T` by listing, for every involution, each union of sibling
/// orbits of occurrences.
pub fn brute_force_marked_subsets(set: &PatternSet, n: usize) -> Result<MultiSeries> {
    let layout = Layout::new(set)?;
    let iv = layout.involution_vars();
    let (r, s) = (layout.r(), layout.s());
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for_each_involution(n, |p| {
        let occs = set.find_occurrences(p.word());
        // one representative per orbit, with the exponent slot it feeds
        let mut slots: Vec<usize> = Vec::new();
        for occ in &occs {
            let sib = occ.sibling_unchecked();
            let rep = occ.min(&sib);
            if rep != occ {
                continue;
            }
            slots.push(orbit_slot(set, occ, &sib, r));
        }
        let mut base = vec![0u32; 2 + 2 * r + s];
        base[0] = n as u32;
        base[1] = p.fixed_points() as u32;
        for mask in 0u64..(1u64 << slots.len()) {
            let mut e = base.clone();
            for (b, &slot) in slots.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    e[slot] += 1;
                }
            }
            *counts.entry(e).or_insert(0) += 1;
        }
    });
    let terms = counts.into_iter().map(|(e, c)| (e, BigInt::from(c)));
    MultiSeries::from_terms(iv, n as u32, terms)
}

fn orbit_slot(set: &PatternSet, occ: &Occurrence, sib: &Occurrence, r: usize) -> usize {
    match set.role(&occ.pattern) {
        Some(Role::Involutive(i)) if occ == sib => 2 + i,
        Some(Role::Involutive(i)) => 2 + r + i,
        Some(Role::Transversal(k)) | Some(Role::TransversalInverse(k)) => 2 + 2 * r + k,
        None => unreachable!("occurrence of a pattern outside the set"),
    }
}
