//! The involution continued fraction and the cluster-based formula for the
//! joint distribution `F_T`.
//!
//! `F_T = I(A, B)` with
//!
//! ```text
//! A = xt + CI_T(x, t, u − 1, v − 1, w − 1)
//! B = x² + C_T(x², v − 1, w − 1, w − 1)
//! ```
//!
//! where `I(t, y) = 1/(1 − t − y/(1 − t − 2y/(1 − t − 3y/…)))` and `v_i` is
//! the square of the variable of non-self-sibling occurrences. Dropping the
//! shifts gives the marked-involution series `MI_T`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::closed_form::closed_form;
use crate::cluster::{cluster_gf, involutory_cluster_gf, Layout};
use crate::error::{Error, Result};
use crate::pattern::{PatternSet, SibCounts, StatisticsVector};
use crate::series::{MultiSeries, RationalExpr, VarSet, EXACT};

/// Number of levels of the continued fraction that are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CfDepth(pub usize);

impl CfDepth {
    /// Smallest depth accepted for order `n`: `⌊n/2⌋ + 1`.
    pub fn minimum(n: u32) -> CfDepth {
        CfDepth(n as usize / 2 + 1)
    }

    /// `⌊n/2⌋ + 2`.
    pub fn default_for(n: u32) -> CfDepth {
        CfDepth(n as usize / 2 + 2)
    }
}

/// Where the cluster series come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Direct cluster enumeration, any pattern set.
    Enumerated,
    /// Rational closed forms, four families only.
    ClosedForm,
}

impl std::str::FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "enumerated" => Ok(Source::Enumerated),
            "closed-form" | "closed_form" => Ok(Source::ClosedForm),
            other => Err(Error::InvalidArgument(format!("unknown source {other}"))),
        }
    }
}

/// Evaluates `I(A, B)` through `x^n` with `depth` levels:
/// `G_{d+1} = 1`, `G_k = 1/(1 − A − k·B·G_{k+1})`, result `G_1`.
pub fn cf_eval(a: &MultiSeries, b: &MultiSeries, n: u32, depth: CfDepth) -> Result<MultiSeries> {
    check_cf_args(a, b)?;
    let needed = CfDepth::minimum(n);
    if depth < needed {
        return Err(Error::InsufficientDepth {
            depth: depth.0,
            order: n,
            needed: needed.0,
        });
    }
    let vars = a.vars();
    let a = a.truncate(n);
    let b = b.truncate(n);
    let one = MultiSeries::one(vars, n);
    let base = &one - &a;
    let mut g = one.clone();
    for k in (1..=depth.0).rev() {
        let kb = b.scale(&BigInt::from(k));
        let den = &base - &(&kb * &g);
        g = den.reciprocal()?;
    }
    Ok(g)
}

/// [`cf_eval`] followed by a comparison with one more level.
pub fn cf_eval_checked(
    a: &MultiSeries,
    b: &MultiSeries,
    n: u32,
    depth: CfDepth,
) -> Result<MultiSeries> {
    let g = cf_eval(a, b, n, depth)?;
    if cf_eval(a, b, n, CfDepth(depth.0 + 1))? != g {
        return Err(Error::UnstableDepth(depth.0));
    }
    Ok(g)
}

fn check_cf_args(a: &MultiSeries, b: &MultiSeries) -> Result<()> {
    if a.vars() != b.vars() {
        return Err(Error::VariableMismatch("A and B must share variables".into()));
    }
    if a.x_order().is_some_and(|o| o < 1) {
        return Err(Error::BadCfArgument("A"));
    }
    if b.x_order().is_some_and(|o| o < 2) {
        return Err(Error::BadCfArgument("B"));
    }
    Ok(())
}

/// Involutions by length (`x`) and fixed points (`t`): `I(xt, x²)`.
pub fn involution_series(n: u32) -> MultiSeries {
    let vars = VarSet::new(&["t"]).expect("valid names");
    let a = MultiSeries::monomial(&vars, n, &[("x", 1), ("t", 1)], 1).expect("known variable");
    let b = MultiSeries::monomial(&vars, n, &[("x", 2)], 1).expect("known variable");
    cf_eval(&a, &b, n, CfDepth::default_for(n)).expect("valid arguments")
}

/// `I(t, y)` graded by `x` = number of points: `I(xt, x²y)`. The
/// coefficient of `t^i y^j` sits at `x^(i+2j)`.
pub fn pure_involution_series(n: u32) -> MultiSeries {
    let vars = VarSet::new(&["t", "y"]).expect("valid names");
    let a = MultiSeries::monomial(&vars, n, &[("x", 1), ("t", 1)], 1).expect("known variable");
    let b = MultiSeries::monomial(&vars, n, &[("x", 2), ("y", 1)], 1).expect("known variable");
    cf_eval(&a, &b, n, CfDepth::default_for(n)).expect("valid arguments")
}

/// The two arguments of `I` for a pattern set, together with its layout.
#[derive(Debug, Clone)]
pub struct CfArguments {
    pub layout: Layout,
    pub a: MultiSeries,
    pub b: MultiSeries,
}

fn shifted(vars: &VarSet, name: &str, shift: i64) -> Result<MultiSeries> {
    let v = MultiSeries::var(vars, EXACT, name)?;
    Ok(&v + &MultiSeries::constant(vars, EXACT, shift))
}

/// Bindings turning `CI_T` into the `A` summand: `u → u+s`, `v → v+s`,
/// `w → w+s` with `s = -1` for `F_T` and `0` for `MI_T`.
fn involutory_bindings(layout: &Layout, shift: i64) -> Result<Vec<(String, MultiSeries)>> {
    let iv = layout.involution_vars();
    let mut out = Vec::new();
    if shift != 0 {
        for i in 0..layout.r() {
            out.push((Layout::u(i), shifted(iv, &Layout::u(i), shift)?));
            out.push((Layout::v(i), shifted(iv, &Layout::v(i), shift)?));
        }
        for k in 0..layout.s() {
            out.push((Layout::w(k), shifted(iv, &Layout::w(k), shift)?));
        }
    }
    Ok(out)
}

/// Bindings turning `C_T` (without the `x` change) into the `B` summand:
/// `a → v+s`, `b → w+s`, `c → w+s`.
fn cluster_bindings(layout: &Layout, shift: i64) -> Result<Vec<(String, MultiSeries)>> {
    let iv = layout.involution_vars();
    let mut out = Vec::new();
    for i in 0..layout.r() {
        out.push((Layout::a(i), shifted(iv, &Layout::v(i), shift)?));
    }
    for k in 0..layout.s() {
        let w = shifted(iv, &Layout::w(k), shift)?;
        out.push((Layout::b(k), w.clone()));
        out.push((Layout::c(k), w));
    }
    Ok(out)
}

fn as_refs(b: &[(String, MultiSeries)]) -> Vec<(&str, MultiSeries)> {
    b.iter().map(|(n, s)| (n.as_str(), s.clone())).collect()
}

/// Builds `A` and `B` through `x^n`; `shift` is `-1` for `F_T`, `0` for `MI_T`.
fn arguments(set: &PatternSet, n: u32, source: Source, shift: i64) -> Result<CfArguments> {
    let layout = Layout::new(set)?;
    let iv = layout.involution_vars().clone();
    let inv_b = involutory_bindings(&layout, shift)?;
    let cl_b = cluster_bindings(&layout, shift)?;
    let half = n / 2;
    let (ci, c) = match source {
        Source::Enumerated => {
            let ci = involutory_cluster_gf(set, n)?.substitute(&iv, &as_refs(&inv_b))?;
            let c = cluster_gf(set, half)?
                .substitute(&iv, &as_refs(&cl_b))?
                .dilate_x(2, n)?;
            (ci, c)
        }
        Source::ClosedForm => {
            let forms = closed_form(set)?;
            let ci = forms.involutory.substitute(&iv, &as_refs(&inv_b))?.expand(n)?;
            let mut cl = cl_b;
            cl.push(("x".into(), MultiSeries::monomial(&iv, EXACT, &[("x", 2)], 1)?));
            let c: RationalExpr = forms.cluster.substitute(&iv, &as_refs(&cl))?;
            (ci, c.expand(n)?)
        }
    };
    let xt = MultiSeries::monomial(&iv, n, &[("x", 1), ("t", 1)], 1)?;
    let x2 = MultiSeries::monomial(&iv, n, &[("x", 2)], 1)?;
    Ok(CfArguments {
        a: &xt + &ci.truncate(n),
        b: &x2 + &c.truncate(n),
        layout,
    })
}

/// `A` and `B` of `F_T`.
pub fn theorem_arguments(set: &PatternSet, n: u32, source: Source) -> Result<CfArguments> {
    arguments(set, n, source, -1)
}

/// `F_T` through `x^n` as a series over `x, t, u…, v…, w…`.
pub fn main_series(
    set: &PatternSet,
    n: u32,
    source: Source,
    depth: Option<CfDepth>,
) -> Result<MultiSeries> {
    let args = theorem_arguments(set, n, source)?;
    cf_eval(&args.a, &args.b, n, depth.unwrap_or_else(|| CfDepth::default_for(n)))
}

/// `F_T` through `x^n` as a table of statistics vectors.
pub fn apply_main_theorem(
    set: &PatternSet,
    n: u32,
    source: Source,
    depth: Option<CfDepth>,
) -> Result<DistributionTable> {
    let f = main_series(set, n, source, depth)?;
    DistributionTable::from_series(set, &f)
}

/// `MI_T` through `x^n`: marked involutions with `u`, `v`, `w` counting
/// marked self-sibling occurrences, marked sibling pairs and marked
/// `T_L` occurrences.
pub fn marked_gf(set: &PatternSet, n: u32, source: Source) -> Result<MultiSeries> {
    let args = arguments(set, n, source, 0)?;
    cf_eval(&args.a, &args.b, n, CfDepth::default_for(n))
}

/// Coefficients of `F_T` keyed by statistics vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionTable {
    set: PatternSet,
    order: u32,
    entries: BTreeMap<StatisticsVector, u64>,
}

impl DistributionTable {
    /// Re-indexes a series over the layout's involution variables. Every
    /// coefficient must be a non-negative machine integer.
    pub fn from_series(set: &PatternSet, f: &MultiSeries) -> Result<Self> {
        let layout = Layout::new(set)?;
        if f.vars() != layout.involution_vars() {
            return Err(Error::VariableMismatch("series is not over x, t, u, v, w".into()));
        }
        let (r, s) = (layout.r(), layout.s());
        let mut entries = BTreeMap::new();
        for (e, c) in f.terms() {
            if c.is_negative() {
                return Err(Error::NegativeCoefficient {
                    coef: c.to_string(),
                    monomial: format!("{e:?}"),
                });
            }
            let count = c.to_u64().ok_or_else(|| {
                Error::InvalidArgument(format!("coefficient {c} does not fit in 64 bits"))
            })?;
            let sv = StatisticsVector {
                n: e[0] as usize,
                fp: e[1] as usize,
                involutive: (0..r)
                    .map(|i| SibCounts {
                        sib: e[2 + i] as usize,
                        nsib: 2 * e[2 + r + i] as usize,
                    })
                    .collect(),
                transversal: (0..s).map(|k| e[2 + 2 * r + k] as usize).collect(),
            };
            entries.insert(sv, count);
        }
        Ok(DistributionTable {
            set: set.clone(),
            order: f.trunc(),
            entries,
        })
    }

    pub fn set(&self) -> &PatternSet {
        &self.set
    }

    /// Largest length covered.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn entries(&self) -> &BTreeMap<StatisticsVector, u64> {
        &self.entries
    }

    pub fn get(&self, sv: &StatisticsVector) -> u64 {
        self.entries.get(sv).copied().unwrap_or(0)
    }

    /// Entries of length `n`.
    pub fn row(&self, n: usize) -> impl Iterator<Item = (&StatisticsVector, u64)> {
        self.entries
            .iter()
            .filter(move |(sv, _)| sv.n == n)
            .map(|(sv, &c)| (sv, c))
    }

    /// Number of involutions of length `n`.
    pub fn row_sum(&self, n: usize) -> u64 {
        self.row(n).map(|(_, c)| c).sum()
    }

    /// Row of length `n` as a map comparable with the oracle.
    pub fn row_map(&self, n: usize) -> BTreeMap<StatisticsVector, u64> {
        self.row(n).map(|(sv, c)| (sv.clone(), c)).collect()
    }

    /// Sum of the counts of length `n` whose vector satisfies `keep`.
    pub fn count_where(&self, n: usize, keep: impl Fn(&StatisticsVector) -> bool) -> u64 {
        self.row(n).filter(|(sv, _)| keep(sv)).map(|(_, c)| c).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::coefficient;

    fn set(s: &str) -> PatternSet {
        PatternSet::parse_spec(s, false).unwrap()
    }

    #[test]
    fn empty_set_gives_involutions() {
        let f = involution_series(6);
        assert_eq!(coefficient(&f, &[("x", 3), ("t", 3)]), 1.into());
        assert_eq!(coefficient(&f, &[("x", 3), ("t", 1)]), 3.into());
        let sums: Vec<BigInt> = (0..=6).map(|n| f.grade(n).evaluate(&[("t", 1)]).unwrap().coeff(&[n, 0])).collect();
        let want: Vec<BigInt> = [1, 1, 2, 4, 10, 26, 76].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(sums, want);
    }

    #[test]
    fn pure_coefficient() {
        let i = pure_involution_series(6);
        assert_eq!(coefficient(&i, &[("x", 3), ("t", 1), ("y", 1)]), 3.into());
        assert_eq!(coefficient(&i, &[("x", 4), ("y", 2)]), 3.into());
    }

    #[test]
    fn trivial_and_bad_arguments() {
        let v = VarSet::new(&["t"]).unwrap();
        let zero = MultiSeries::zero(&v, 6);
        assert_eq!(cf_eval(&zero, &zero, 6, CfDepth(4)).unwrap(), MultiSeries::one(&v, 6));
        let t = MultiSeries::var(&v, 6, "t").unwrap();
        let x = MultiSeries::var(&v, 6, "x").unwrap();
        assert!(matches!(cf_eval(&t, &zero, 6, CfDepth(4)), Err(Error::BadCfArgument("A"))));
        assert!(matches!(cf_eval(&zero, &x, 6, CfDepth(4)), Err(Error::BadCfArgument("B"))));
        assert!(matches!(
            cf_eval(&x, &x.pow(2), 6, CfDepth(3)),
            Err(Error::InsufficientDepth { needed: 4, .. })
        ));
        assert!(cf_eval_checked(&x, &x.pow(2), 6, CfDepth(4)).is_ok());
    }

    #[test]
    fn adjacent_length_two() {
        let t = apply_main_theorem(&set("12,21"), 4, Source::ClosedForm, None).unwrap();
        let row = t.row_map(2);
        assert_eq!(row.len(), 2);
        let sv = |fp, a: usize, b: usize| StatisticsVector {
            n: 2,
            fp,
            involutive: vec![SibCounts { sib: a, nsib: 0 }, SibCounts { sib: b, nsib: 0 }],
            transversal: vec![],
        };
        assert_eq!(row[&sv(2, 1, 0)], 1);
        assert_eq!(row[&sv(0, 0, 1)], 1);
    }

    #[test]
    fn rotation_length_four() {
        let t = apply_main_theorem(&set("231,312"), 4, Source::Enumerated, None).unwrap();
        assert_eq!(t.row_sum(4), 10);
        assert_eq!(t.count_where(4, |sv| sv.transversal[0] == 1), 1);
        assert_eq!(t.count_where(4, |sv| sv.transversal[0] == 1 && sv.fp == 2), 1);
        assert_eq!(t.count_where(4, StatisticsVector::is_avoiding), 9);
    }

    #[test]
    fn marked_adjacent() {
        let mi = marked_gf(&set("12,21"), 4, Source::ClosedForm).unwrap();
        let g = mi.grade(2);
        assert_eq!(coefficient(&g, &[("x", 2), ("t", 2)]), 1.into());
        assert_eq!(coefficient(&g, &[("x", 2), ("t", 2), ("u1", 1)]), 1.into());
        assert_eq!(coefficient(&g, &[("x", 2)]), 1.into());
        assert_eq!(coefficient(&g, &[("x", 2), ("u2", 1)]), 1.into());
        assert_eq!(g.num_terms(), 4);
    }
}
