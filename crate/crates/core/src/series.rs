//! Exact multivariate formal power series truncated in the length variable.
//!
//! A [`MultiSeries`] lives over an ordered [`VarSet`] whose first variable is
//! always `x`. Truncation is by `x`-degree only: no stored term has
//! `x`-degree above [`MultiSeries::trunc`]. The other variables are
//! unbounded, so every `x`-grade is a finite polynomial in them.
//!
//! Monomials in the non-`x` variables are packed into a `u128`, eight bits
//! per variable, which caps a variable set at [`MAX_AUX_VARS`] extra
//! variables and individual exponents at 255.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Truncation order meaning "no truncation" (exact polynomials).
pub const EXACT: u32 = u32::MAX;

/// Maximum number of variables besides `x`.
pub const MAX_AUX_VARS: usize = 16;

const FIELD_BITS: u32 = 8;
const FIELD_MASK: u128 = 0xff;
// bit 0 of every field except the first
const CARRY_BITS: u128 = 0x0101_0101_0101_0101_0101_0101_0101_0100;

type Mono = u128;
type Grade = HashMap<Mono, BigInt>;

/// Ordered list of variable names; the first one is the length variable `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet(Arc<[String]>);

impl VarSet {
    /// `names` lists the variables after `x`.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.len() > MAX_AUX_VARS {
            return Err(Error::InvalidArgument(format!(
                "at most {MAX_AUX_VARS} variables besides x are supported"
            )));
        }
        let mut all: Vec<String> = vec!["x".to_string()];
        for n in names {
            let n = n.as_ref();
            if n.is_empty() || all.iter().any(|m| m == n) {
                return Err(Error::VariableMismatch(format!("duplicate or empty variable {n:?}")));
            }
            all.push(n.to_string());
        }
        Ok(VarSet(all.into()))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    fn aux_count(&self) -> usize {
        self.0.len() - 1
    }
}

fn field(m: Mono, i: usize) -> u32 {
    ((m >> (FIELD_BITS as usize * i)) & FIELD_MASK) as u32
}

fn pack(exps: &[u32]) -> Result<Mono> {
    let mut m: Mono = 0;
    for (i, &e) in exps.iter().enumerate() {
        if e > FIELD_MASK as u32 {
            return Err(Error::InvalidArgument(format!("exponent {e} exceeds 255")));
        }
        m |= (e as u128) << (FIELD_BITS as usize * i);
    }
    Ok(m)
}

fn unpack(m: Mono, k: usize) -> Vec<u32> {
    (0..k).map(|i| field(m, i)).collect()
}

#[inline]
fn mono_mul(a: Mono, b: Mono) -> Mono {
    let (s, top) = a.overflowing_add(b);
    assert!(
        !top && (a ^ b ^ s) & CARRY_BITS == 0,
        "monomial exponent overflow (limit 255)"
    );
    s
}

/// Exact truncated multivariate power series with big-integer coefficients.
#[derive(Clone)]
pub struct MultiSeries {
    vars: VarSet,
    trunc: u32,
    grades: Vec<Grade>,
}

impl MultiSeries {
    pub fn zero(vars: &VarSet, trunc: u32) -> Self {
        MultiSeries {
            vars: vars.clone(),
            trunc,
            grades: Vec::new(),
        }
    }

    pub fn constant(vars: &VarSet, trunc: u32, c: impl Into<BigInt>) -> Self {
        let mut s = MultiSeries::zero(vars, trunc);
        s.add_term(0, 0, c.into());
        s
    }

    pub fn one(vars: &VarSet, trunc: u32) -> Self {
        MultiSeries::constant(vars, trunc, 1)
    }

    /// The series consisting of the single variable `name`.
    pub fn var(vars: &VarSet, trunc: u32, name: &str) -> Result<Self> {
        MultiSeries::monomial(vars, trunc, &[(name, 1)], 1)
    }

    /// `coef · ∏ name^exp`.
    pub fn monomial(
        vars: &VarSet,
        trunc: u32,
        exps: &[(&str, u32)],
        coef: impl Into<BigInt>,
    ) -> Result<Self> {
        let mut full = vec![0u32; vars.len()];
        for &(name, e) in exps {
            let i = vars.index(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            full[i] += e;
        }
        let mut s = MultiSeries::zero(vars, trunc);
        if full[0] <= trunc {
            s.add_term(full[0], pack(&full[1..])?, coef.into());
        }
        Ok(s)
    }

    /// Builds from `(full exponent vector, coefficient)` pairs; terms above the
    /// truncation order are dropped.
    pub fn from_terms(
        vars: &VarSet,
        trunc: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>,
    ) -> Result<Self> {
        let mut s = MultiSeries::zero(vars, trunc);
        for (exps, c) in terms {
            if exps.len() != vars.len() {
                return Err(Error::VariableMismatch(format!(
                    "exponent vector of length {} for {} variables",
                    exps.len(),
                    vars.len()
                )));
            }
            if exps[0] <= trunc {
                s.add_term(exps[0], pack(&exps[1..])?, c);
            }
        }
        Ok(s)
    }

    fn add_term(&mut self, deg: u32, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let d = deg as usize;
        if self.grades.len() <= d {
            self.grades.resize_with(d + 1, Grade::default);
        }
        let g = &mut self.grades[d];
        let entry = g.entry(m).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            g.remove(&m);
        }
        self.normalize_tail();
    }

    fn normalize_tail(&mut self) {
        while self.grades.last().is_some_and(|g| g.is_empty()) {
            self.grades.pop();
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc == EXACT
    }

    pub fn is_zero(&self) -> bool {
        self.grades.iter().all(|g| g.is_empty())
    }

    /// Highest `x`-degree present, `None` for zero.
    pub fn x_degree(&self) -> Option<u32> {
        self.grades
            .iter()
            .rposition(|g| !g.is_empty())
            .map(|d| d as u32)
    }

    /// Lowest `x`-degree present, `None` for zero.
    pub fn x_order(&self) -> Option<u32> {
        self.grades.iter().position(|g| !g.is_empty()).map(|d| d as u32)
    }

    pub fn num_terms(&self) -> usize {
        self.grades.iter().map(|g| g.len()).sum()
    }

    /// Coefficient of the monomial with the given full exponent vector.
    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        if exps.len() != self.vars.len() {
            return BigInt::zero();
        }
        let Ok(m) = pack(&exps[1..]) else {
            return BigInt::zero();
        };
        self.grades
            .get(exps[0] as usize)
            .and_then(|g| g.get(&m))
            .cloned()
            .unwrap_or_default()
    }

    /// Coefficient by variable names; unnamed variables have exponent zero.
    pub fn coeff_of(&self, exps: &[(&str, u32)]) -> Result<BigInt> {
        let mut full = vec![0u32; self.vars.len()];
        for &(name, e) in exps {
            let i = self
                .vars
                .index(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            full[i] += e;
        }
        Ok(self.coeff(&full))
    }

    /// The `x^d` grade as a series in the same variables (exponent of `x` kept).
    pub fn grade(&self, d: u32) -> MultiSeries {
        let mut s = MultiSeries::zero(&self.vars, self.trunc);
        if let Some(g) = self.grades.get(d as usize) {
            if !g.is_empty() {
                s.grades.resize_with(d as usize + 1, Grade::default);
                s.grades[d as usize] = g.clone();
            }
        }
        s
    }

    /// Terms sorted by `(x-degree, other exponents)`.
    pub fn terms(&self) -> Vec<(Vec<u32>, BigInt)> {
        let k = self.vars.aux_count();
        let mut out = Vec::with_capacity(self.num_terms());
        for (d, g) in self.grades.iter().enumerate() {
            let mut row: Vec<(Vec<u32>, BigInt)> = g
                .iter()
                .map(|(&m, c)| {
                    let mut e = Vec::with_capacity(k + 1);
                    e.push(d as u32);
                    e.extend(unpack(m, k));
                    (e, c.clone())
                })
                .collect();
            row.sort_by(|a, b| a.0.cmp(&b.0));
            out.extend(row);
        }
        out
    }

    /// The `x⁰` grade, when it is a plain constant.
    pub fn constant_term(&self) -> Option<BigInt> {
        match self.grades.first() {
            None => Some(BigInt::zero()),
            Some(g) => {
                if g.keys().all(|&m| m == 0) {
                    Some(g.get(&0).cloned().unwrap_or_default())
                } else {
                    None
                }
            }
        }
    }

    pub fn truncate(&self, n: u32) -> MultiSeries {
        let n = n.min(self.trunc);
        let mut s = self.clone();
        s.trunc = n;
        if n != EXACT && s.grades.len() > n as usize + 1 {
            s.grades.truncate(n as usize + 1);
        }
        s.normalize_tail();
        s
    }

    /// `x → x^k` applied grade-wise. A series known through `x^N` becomes
    /// known through `x^(kN + k - 1)`; the result is truncated at the
    /// smaller of that and `trunc`.
    pub fn dilate_x(&self, k: u32, trunc: u32) -> Result<MultiSeries> {
        if k == 0 {
            return Err(Error::IllFoundedSubstitution(
                "x must map to a series without x⁰ terms".into(),
            ));
        }
        let known = if self.is_exact() {
            EXACT
        } else {
            (self.trunc as u64 * k as u64 + k as u64 - 1).min(EXACT as u64 - 1) as u32
        };
        let trunc = trunc.min(known);
        let mut out = MultiSeries::zero(&self.vars, trunc);
        for (d, g) in self.grades.iter().enumerate() {
            let nd = d as u64 * k as u64;
            if nd > trunc as u64 {
                break;
            }
            if g.is_empty() {
                continue;
            }
            if out.grades.len() <= nd as usize {
                out.grades.resize_with(nd as usize + 1, Grade::default);
            }
            out.grades[nd as usize] = g.clone();
        }
        Ok(out)
    }

    fn check_vars(&self, other: &MultiSeries) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(format!(
                "[{}] vs [{}]",
                self.vars.names().join(","),
                other.vars.names().join(",")
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiSeries) -> Result<MultiSeries> {
        self.check_vars(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut out = self.truncate(trunc);
        for (d, g) in other.grades.iter().enumerate() {
            if d as u64 > trunc as u64 {
                break;
            }
            if out.grades.len() <= d {
                out.grades.resize_with(d + 1, Grade::default);
            }
            let dst = &mut out.grades[d];
            for (&m, c) in g {
                accumulate(dst, m, c.clone());
            }
        }
        out.normalize_tail();
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiSeries) -> Result<MultiSeries> {
        self.checked_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> MultiSeries {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> MultiSeries {
        if k.is_zero() {
            return MultiSeries::zero(&self.vars, self.trunc);
        }
        let mut out = self.clone();
        for g in &mut out.grades {
            for c in g.values_mut() {
                *c *= k;
            }
        }
        out
    }

    pub fn checked_mul(&self, other: &MultiSeries) -> Result<MultiSeries> {
        self.check_vars(other)?;
        let trunc = self.trunc.min(other.trunc);
        let (Some(da), Some(db)) = (self.x_degree(), other.x_degree()) else {
            return Ok(MultiSeries::zero(&self.vars, trunc));
        };
        let top = (da as u64 + db as u64).min(trunc as u64) as usize;
        let mut grades: Vec<Grade> = vec![Grade::default(); top + 1];
        for (i, ga) in self.grades.iter().enumerate() {
            if i > top || ga.is_empty() {
                continue;
            }
            for (j, gb) in other.grades.iter().enumerate() {
                if i + j > top {
                    break;
                }
                if gb.is_empty() {
                    continue;
                }
                mul_grade_into(&mut grades[i + j], ga, gb);
            }
        }
        let mut out = MultiSeries {
            vars: self.vars.clone(),
            trunc,
            grades,
        };
        out.normalize_tail();
        Ok(out)
    }

    /// `self^k`.
    pub fn pow(&self, k: u32) -> MultiSeries {
        let mut acc = MultiSeries::one(&self.vars, self.trunc);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse up to the truncation order. The `x⁰` grade must
    /// be the constant `1` or `-1`, and the series must be truncated.
    pub fn reciprocal(&self) -> Result<MultiSeries> {
        if self.is_exact() {
            return Err(Error::InvalidArgument(
                "reciprocal of an untruncated series needs an explicit order".into(),
            ));
        }
        let c0 = self.constant_term().ok_or(Error::NonUnitConstant)?;
        let unit = if c0.is_one() {
            BigInt::one()
        } else if c0 == BigInt::from(-1) {
            BigInt::from(-1)
        } else {
            return Err(Error::NonUnitConstant);
        };
        let n = self.trunc as usize;
        let mut r: Vec<Grade> = Vec::with_capacity(n + 1);
        let mut g0 = Grade::default();
        g0.insert(0, unit.clone());
        r.push(g0);
        let neg_unit = -unit;
        for d in 1..=n {
            let mut acc = Grade::default();
            for k in 1..=d.min(self.grades.len().saturating_sub(1)) {
                let sk = &self.grades[k];
                if sk.is_empty() || r[d - k].is_empty() {
                    continue;
                }
                mul_grade_into(&mut acc, sk, &r[d - k]);
            }
            if !neg_unit.is_one() {
                for c in acc.values_mut() {
                    *c *= &neg_unit;
                }
            }
            r.push(acc);
        }
        let mut out = MultiSeries {
            vars: self.vars.clone(),
            trunc: self.trunc,
            grades: r,
        };
        out.normalize_tail();
        Ok(out)
    }

    /// Substitutes series for variables. The result lives over `target`;
    /// variables without a binding must also exist in `target` and map to
    /// themselves. A binding for `x` must have positive `x`-order, otherwise
    /// coefficients at a fixed order would need infinitely many terms.
    pub fn substitute(
        &self,
        target: &VarSet,
        bindings: &[(&str, MultiSeries)],
    ) -> Result<MultiSeries> {
        let mut trunc = self.trunc;
        for (name, b) in bindings {
            if self.vars.index(name).is_none() {
                return Err(Error::UnknownVariable(name.to_string()));
            }
            if b.vars != *target {
                return Err(Error::VariableMismatch(format!(
                    "binding for {name} is not over the target variables"
                )));
            }
            trunc = trunc.min(b.trunc);
        }
        let mut images: Vec<MultiSeries> = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            let img = match bindings.iter().find(|(n, _)| n == name) {
                Some((_, b)) => b.truncate(trunc),
                None => MultiSeries::var(target, trunc, name)
                    .map_err(|_| Error::UnknownVariable(name.clone()))?,
            };
            if i == 0 && img.x_order().is_some_and(|o| o == 0) {
                return Err(Error::IllFoundedSubstitution(
                    "x must map to a series without x⁰ terms".into(),
                ));
            }
            images.push(img);
        }
        let k = self.vars.aux_count();
        let mut powers: Vec<Vec<MultiSeries>> = images
            .iter()
            .map(|img| vec![MultiSeries::one(target, trunc), img.clone()])
            .collect();
        let mut out = MultiSeries::zero(target, trunc);
        for (d, g) in self.grades.iter().enumerate() {
            if d as u64 > trunc as u64 {
                break;
            }
            for (&m, c) in g {
                let mut term = MultiSeries::constant(target, trunc, c.clone());
                let exps = std::iter::once(d as u32).chain(unpack(m, k));
                for (i, e) in exps.enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let e = e as usize;
                    while powers[i].len() <= e {
                        let next = &powers[i][powers[i].len() - 1] * &images[i];
                        powers[i].push(next);
                    }
                    term = &term * &powers[i][e];
                    if term.is_zero() {
                        break;
                    }
                }
                out = &out + &term;
            }
        }
        Ok(out)
    }

    /// Convenience: substitute integer constants for some variables, keeping
    /// the variable set.
    pub fn evaluate(&self, values: &[(&str, i64)]) -> Result<MultiSeries> {
        let bindings: Vec<(&str, MultiSeries)> = values
            .iter()
            .map(|&(n, v)| (n, MultiSeries::constant(&self.vars, self.trunc, v)))
            .collect();
        self.substitute(&self.vars.clone(), &bindings)
    }

    /// Re-expresses the series over `target`, which must contain every
    /// variable that has a nonzero exponent somewhere.
    pub fn embed(&self, target: &VarSet) -> Result<MultiSeries> {
        let k = self.vars.aux_count();
        let map: Vec<Option<usize>> = self.vars.names().iter().map(|n| target.index(n)).collect();
        let mut out = MultiSeries::zero(target, self.trunc);
        for (d, g) in self.grades.iter().enumerate() {
            for (&m, c) in g {
                let mut full = vec![0u32; target.len()];
                full[0] = d as u32;
                for (i, e) in unpack(m, k).into_iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let j = map[i + 1]
                        .ok_or_else(|| Error::UnknownVariable(self.vars.names()[i + 1].clone()))?;
                    full[j] += e;
                }
                out.add_term(full[0], pack(&full[1..])?, c.clone());
            }
        }
        Ok(out)
    }

    fn term_string(names: &[String], exps: &[u32], c: &BigInt, first: bool) -> String {
        let mono: Vec<String> = names
            .iter()
            .zip(exps)
            .filter(|(_, &e)| e > 0)
            .map(|(n, &e)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        let mag = c.abs();
        let sign = if c.is_negative() {
            if first {
                "-"
            } else {
                " - "
            }
        } else if first {
            ""
        } else {
            " + "
        };
        let body = if mono.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            mono.join("*")
        } else {
            format!("{}*{}", mag, mono.join("*"))
        };
        format!("{sign}{body}")
    }
}

#[inline]
fn accumulate(dst: &mut Grade, m: Mono, c: BigInt) {
    use std::collections::hash_map::Entry;
    match dst.entry(m) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
    }
}

fn mul_grade_into(dst: &mut Grade, a: &Grade, b: &Grade) {
    let (a, b) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    // small coefficients take the machine-word path
    let small_b: Vec<(Mono, Option<i64>, &BigInt)> =
        b.iter().map(|(&m, c)| (m, c.to_i64(), c)).collect();
    for (&ma, ca) in a {
        let ca_small = ca.to_i64();
        for &(mb, cb_small, cb) in &small_b {
            let m = mono_mul(ma, mb);
            let prod = match (ca_small, cb_small) {
                (Some(x), Some(y)) => match x.checked_mul(y) {
                    Some(p) => BigInt::from(p),
                    None => ca * cb,
                },
                _ => ca * cb,
            };
            accumulate(dst, m, prod);
        }
    }
}

impl PartialEq for MultiSeries {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
            && self.trunc == other.trunc
            && self.grades.len() == other.grades.len()
            && self.grades.iter().zip(&other.grades).all(|(a, b)| a == b)
    }
}

impl Eq for MultiSeries {}

impl fmt::Debug for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiSeries(trunc={}, {})", self.trunc, self)
    }
}

impl fmt::Display for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.vars.names();
        for (i, (e, c)) in terms.iter().enumerate() {
            f.write_str(&MultiSeries::term_string(names, e, c, i == 0))?;
        }
        Ok(())
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&MultiSeries> for &MultiSeries {
            type Output = MultiSeries;

            /// Panics on mismatched variable sets; use the `checked_` form to
            /// get an error instead.
            fn $method(self, rhs: &MultiSeries) -> MultiSeries {
                self.$checked(rhs).expect("series over different variable sets")
            }
        }

        impl $tr<MultiSeries> for MultiSeries {
            type Output = MultiSeries;

            fn $method(self, rhs: MultiSeries) -> MultiSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &MultiSeries {
    type Output = MultiSeries;

    fn neg(self) -> MultiSeries {
        self.neg_ref()
    }
}

impl Neg for MultiSeries {
    type Output = MultiSeries;

    fn neg(self) -> MultiSeries {
        self.neg_ref()
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exps: BTreeMap<String, u32>,
    coef: String,
}

impl Serialize for MultiSeries {
    /// `{"trunc": N, "vars": [...], "terms": [{"exps": {...}, "coef": "1"}]}`;
    /// `trunc` is `null` for exact polynomials.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let names = self.vars.names();
        let terms: Vec<TermRepr> = self
            .terms()
            .into_iter()
            .map(|(e, c)| TermRepr {
                exps: names
                    .iter()
                    .zip(&e)
                    .filter(|(_, &k)| k > 0)
                    .map(|(n, &k)| (n.clone(), k))
                    .collect(),
                coef: c.to_string(),
            })
            .collect();
        let mut st = s.serialize_struct("MultiSeries", 3)?;
        st.serialize_field("trunc", &(!self.is_exact()).then_some(self.trunc))?;
        st.serialize_field("vars", names)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct SeriesRepr {
    trunc: Option<u32>,
    #[serde(default)]
    vars: Option<Vec<String>>,
    terms: Vec<TermRepr>,
}

impl<'de> Deserialize<'de> for MultiSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SeriesRepr::deserialize(d)?;
        let names: Vec<String> = match r.vars {
            Some(v) => v,
            None => {
                let mut seen: Vec<String> = vec!["x".into()];
                for t in &r.terms {
                    for n in t.exps.keys() {
                        if !seen.contains(n) {
                            seen.push(n.clone());
                        }
                    }
                }
                seen
            }
        };
        if names.first().map(String::as_str) != Some("x") {
            return Err(D::Error::custom("first variable must be x"));
        }
        let vars = VarSet::new(&names[1..]).map_err(D::Error::custom)?;
        let trunc = r.trunc.unwrap_or(EXACT);
        let mut terms = Vec::with_capacity(r.terms.len());
        for t in r.terms {
            let mut full = vec![0u32; vars.len()];
            for (n, e) in t.exps {
                let i = vars
                    .index(&n)
                    .ok_or_else(|| D::Error::custom(format!("unknown variable {n}")))?;
                full[i] = e;
            }
            let c: BigInt = t.coef.parse().map_err(D::Error::custom)?;
            terms.push((full, c));
        }
        MultiSeries::from_terms(&vars, trunc, terms).map_err(D::Error::custom)
    }
}

/// A quotient of exact polynomials whose denominator has constant term 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalExpr {
    num: MultiSeries,
    den: MultiSeries,
}

impl RationalExpr {
    /// Normalizes the denominator's constant term to `1`; it must be `±1`.
    pub fn new(num: MultiSeries, den: MultiSeries) -> Result<Self> {
        num.check_vars(&den)?;
        let c = den.constant_term().ok_or(Error::NonUnitConstant)?;
        if c.is_one() {
            Ok(RationalExpr { num, den })
        } else if c == BigInt::from(-1) {
            Ok(RationalExpr {
                num: -num,
                den: -den,
            })
        } else {
            Err(Error::NonUnitConstant)
        }
    }

    pub fn polynomial(num: MultiSeries) -> Self {
        let den = MultiSeries::one(num.vars(), num.trunc());
        RationalExpr { num, den }
    }

    pub fn num(&self) -> &MultiSeries {
        &self.num
    }

    pub fn den(&self) -> &MultiSeries {
        &self.den
    }

    pub fn vars(&self) -> &VarSet {
        self.num.vars()
    }

    /// `num · den⁻¹` truncated to order `n`.
    pub fn expand(&self, n: u32) -> Result<MultiSeries> {
        let den = self.den.truncate(n);
        Ok(&self.num.truncate(n) * &den.reciprocal()?)
    }

    pub fn checked_add(&self, other: &RationalExpr) -> Result<RationalExpr> {
        if self.den == other.den {
            return RationalExpr::new(self.num.checked_add(&other.num)?, self.den.clone());
        }
        let num = self.num.checked_mul(&other.den)? + other.num.checked_mul(&self.den)?;
        RationalExpr::new(num, self.den.checked_mul(&other.den)?)
    }

    pub fn substitute(&self, target: &VarSet, bindings: &[(&str, MultiSeries)]) -> Result<Self> {
        RationalExpr::new(
            self.num.substitute(target, bindings)?,
            self.den.substitute(target, bindings)?,
        )
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vs(names: &[&str]) -> VarSet {
        VarSet::new(names).unwrap()
    }

    fn var(v: &VarSet, n: u32, name: &str) -> MultiSeries {
        MultiSeries::var(v, n, name).unwrap()
    }

    #[test]
    fn product_examples() {
        let v = vs(&[]);
        let one = MultiSeries::one(&v, 5);
        let x = var(&v, 5, "x");
        let got = &(&one + &x) * &(&one - &x);
        assert_eq!(got, &one - &x.pow(2));
        let zero = MultiSeries::zero(&v, 5);
        assert!((&got * &zero).is_zero());
        let geo = (0..=5).fold(MultiSeries::zero(&v, 5), |acc, k| &acc + &x.pow(k));
        assert_eq!(&geo * &(&one - &x), one);
    }

    #[test]
    fn mismatched_variables() {
        let a = MultiSeries::one(&vs(&["t"]), 3);
        let b = MultiSeries::one(&vs(&["u"]), 3);
        assert!(matches!(a.checked_add(&b), Err(Error::VariableMismatch(_))));
        assert!(matches!(a.checked_mul(&b), Err(Error::VariableMismatch(_))));
        assert!(VarSet::new(&["x"]).is_err());
    }

    #[test]
    fn mixed_truncation_takes_min() {
        let v = vs(&[]);
        let a = &MultiSeries::one(&v, 8) + &var(&v, 8, "x").pow(6);
        let b = MultiSeries::one(&v, 4);
        let s = &a * &b;
        assert_eq!(s.trunc(), 4);
        assert_eq!(s, MultiSeries::one(&v, 4));
    }

    #[test]
    fn reciprocal_examples() {
        let v = vs(&[]);
        let n = 10;
        let one = MultiSeries::one(&v, n);
        let x = var(&v, n, "x");
        let r = (&one - &x).reciprocal().unwrap();
        for k in 0..=n {
            assert_eq!(r.coeff(&[k]), BigInt::one());
        }
        assert_eq!(one.reciprocal().unwrap(), one);
        let s = &(&one - &x) - &x.pow(2);
        let r = s.reciprocal().unwrap();
        let fib: Vec<i64> = (0..=n).map(|k| r.coeff(&[k]).to_i64().unwrap()).collect();
        assert_eq!(fib, vec![1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]);
        assert_eq!(&s * &r, one);
        let neg = -&one - x.clone();
        let r = neg.reciprocal().unwrap();
        assert_eq!(&neg * &r, one);
    }

    #[test]
    fn reciprocal_errors() {
        let v = vs(&["u"]);
        let two = MultiSeries::constant(&v, 4, 2);
        assert!(matches!(two.reciprocal(), Err(Error::NonUnitConstant)));
        let one_minus_u = &MultiSeries::one(&v, 4) - &var(&v, 4, "u");
        assert!(matches!(one_minus_u.reciprocal(), Err(Error::NonUnitConstant)));
        assert!(MultiSeries::one(&v, EXACT).reciprocal().is_err());
    }

    #[test]
    fn dilation_matches_substitution() {
        let v = vs(&["u"]);
        let one = MultiSeries::one(&v, 5);
        let s = (&(&one - &var(&v, 5, "x")) - &(&var(&v, 5, "x") * &var(&v, 5, "u")))
            .reciprocal()
            .unwrap();
        let d = s.dilate_x(2, 11).unwrap();
        assert_eq!(d.trunc(), 11);
        let x2 = var(&v, EXACT, "x").pow(2);
        let full = (&(&MultiSeries::one(&v, 11) - &var(&v, 11, "x")) - &(&var(&v, 11, "x") * &var(&v, 11, "u")))
            .reciprocal()
            .unwrap()
            .substitute(&v, &[("x", x2)])
            .unwrap();
        assert_eq!(d, full);
        assert_eq!(s.dilate_x(2, 7).unwrap().trunc(), 7);
        assert!(s.dilate_x(0, 7).is_err());
    }

    #[test]
    fn substitution_examples() {
        let v = vs(&["t", "u"]);
        let n = 6;
        let one = MultiSeries::one(&v, n);
        let x = var(&v, n, "x");
        let u = var(&v, n, "u");
        let t = var(&v, n, "t");
        let s = &x * &u;
        let got = s.substitute(&v, &[("u", &u - &one)]).unwrap();
        assert_eq!(got, &(&x * &u) - &x);

        let geo = (&one - &(&x * &t)).reciprocal().unwrap();
        let got = geo.substitute(&v, &[("t", one.clone())]).unwrap();
        assert_eq!(got, (&one - &x).reciprocal().unwrap());

        let sq = geo.substitute(&v, &[("x", x.pow(2))]).unwrap();
        assert_eq!(sq.coeff_of(&[("x", 6), ("t", 3)]).unwrap(), BigInt::one());
        assert_eq!(sq.coeff_of(&[("x", 5), ("t", 2)]).unwrap(), BigInt::zero());

        let bad = s.substitute(&v, &[("x", &one + &x)]);
        assert!(matches!(bad, Err(Error::IllFoundedSubstitution(_))));
        assert!(matches!(
            s.substitute(&v, &[("w", one.clone())]),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn substitution_into_other_variables() {
        let src = vs(&["a"]);
        let dst = vs(&["v"]);
        let n = 8;
        let s = &MultiSeries::var(&src, n, "x").unwrap() * &MultiSeries::var(&src, n, "a").unwrap();
        let v = MultiSeries::var(&dst, n, "v").unwrap();
        let got = s
            .substitute(&dst, &[("a", &v - &MultiSeries::one(&dst, n))])
            .unwrap();
        assert_eq!(got.coeff_of(&[("x", 1), ("v", 1)]).unwrap(), BigInt::one());
        assert_eq!(got.coeff_of(&[("x", 1)]).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn expand_examples() {
        let v = vs(&["t", "u"]);
        let e = EXACT;
        let x = var(&v, e, "x");
        let t = var(&v, e, "t");
        let u = var(&v, e, "u");
        let one = MultiSeries::one(&v, e);
        let xt = &x * &t;
        let num = &xt.pow(3) * &u;
        let den = &(&one - &(&xt * &u)) - &(&xt.pow(2) * &u);
        let r = RationalExpr::new(num, den).unwrap();
        let got = r.expand(5).unwrap();
        let want = MultiSeries::from_terms(
            &v,
            5,
            vec![
                (vec![3, 3, 1], BigInt::one()),
                (vec![4, 4, 2], BigInt::one()),
                (vec![5, 5, 2], BigInt::one()),
                (vec![5, 5, 3], BigInt::one()),
            ],
        )
        .unwrap();
        assert_eq!(got, want);

        let p = &(&x * &u) + &one;
        assert_eq!(RationalExpr::polynomial(p.clone()).expand(4).unwrap(), p.truncate(4));

        let r = RationalExpr::new(&xt.pow(2) * &u, &one - &(&xt * &u)).unwrap();
        let got = r.expand(4).unwrap();
        let want = MultiSeries::from_terms(
            &v,
            4,
            (2..=4).map(|m| (vec![m, m, m - 1], BigInt::one())),
        )
        .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn rational_sum_and_normalization() {
        let v = vs(&[]);
        let e = EXACT;
        let x = var(&v, e, "x");
        let one = MultiSeries::one(&v, e);
        let a = RationalExpr::new(x.clone(), &one - &x).unwrap();
        let b = RationalExpr::new(x.clone(), -(&one + &x)).unwrap();
        assert_eq!(b.den().constant_term(), Some(BigInt::one()));
        let s = a.checked_add(&b).unwrap();
        let direct = &a.expand(9).unwrap() + &b.expand(9).unwrap();
        assert_eq!(s.expand(9).unwrap(), direct);
        assert!(RationalExpr::new(x.clone(), &one + &one).is_err());
    }

    #[test]
    fn json_shape() {
        let v = vs(&["t", "w"]);
        let s = MultiSeries::monomial(&v, 6, &[("x", 4), ("t", 2), ("w", 1)], 1).unwrap();
        let j = serde_json::to_value(&s).unwrap();
        assert_eq!(j["trunc"], 6);
        assert_eq!(j["terms"][0]["exps"], serde_json::json!({"x": 4, "t": 2, "w": 1}));
        assert_eq!(j["terms"][0]["coef"], "1");
        let back: MultiSeries = serde_json::from_value(j).unwrap();
        assert_eq!(back, s);
        let big = MultiSeries::constant(&v, 2, "123456789012345678901234567890".parse::<BigInt>().unwrap());
        let j = serde_json::to_string(&big).unwrap();
        assert!(j.contains("\"123456789012345678901234567890\""));
        assert_eq!(serde_json::from_str::<MultiSeries>(&j).unwrap(), big);
    }

    #[test]
    fn display() {
        let v = vs(&["t", "u"]);
        let s = MultiSeries::from_terms(
            &v,
            4,
            vec![(vec![2, 2, 1], BigInt::one()), (vec![2, 0, 0], BigInt::from(-3)), (vec![0, 0, 0], BigInt::one())],
        )
        .unwrap();
        assert_eq!(s.to_string(), "1 - 3*x^2 + x^2*t^2*u");
    }

    fn arb_series(vars: VarSet, n: u32) -> impl Strategy<Value = MultiSeries> {
        proptest::collection::vec(((0..=n), (0u32..3), (0u32..3), -4i64..=4), 0..8).prop_map(
            move |terms| {
                MultiSeries::from_terms(
                    &vars,
                    n,
                    terms.into_iter().map(|(d, a, b, c)| (vec![d, a, b], BigInt::from(c))),
                )
                .unwrap()
            },
        )
    }

    fn arb_unit(vars: VarSet, n: u32) -> impl Strategy<Value = MultiSeries> {
        (arb_series(vars.clone(), n), prop::bool::ANY).prop_map(move |(s, neg)| {
            let rest = MultiSeries::from_terms(
                &vars,
                n,
                s.terms().into_iter().filter(|(e, _)| e[0] > 0),
            )
            .unwrap();
            let c = MultiSeries::constant(&vars, n, if neg { -1 } else { 1 });
            &c + &rest
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn ring_axioms(a in arb_series(vs(&["t", "u"]), 8),
                       b in arb_series(vs(&["t", "u"]), 8),
                       c in arb_series(vs(&["t", "u"]), 8)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn reciprocal_inverts(s in arb_unit(vs(&["t", "u"]), 8)) {
            let r = s.reciprocal().unwrap();
            prop_assert_eq!(&s * &r, MultiSeries::one(s.vars(), 8));
        }

        #[test]
        fn expand_is_truncation_stable(num in arb_series(vs(&["t", "u"]), 6),
                                       den in arb_unit(vs(&["t", "u"]), 6),
                                       small in 0u32..6) {
            let num = MultiSeries::from_terms(num.vars(), EXACT, num.terms()).unwrap();
            let den = MultiSeries::from_terms(den.vars(), EXACT, den.terms()).unwrap();
            let r = RationalExpr::new(num, den).unwrap();
            prop_assert_eq!(r.expand(12).unwrap().truncate(small), r.expand(small).unwrap());
        }

        #[test]
        fn json_roundtrip(s in arb_series(vs(&["t", "u"]), 8)) {
            let j = serde_json::to_string(&s).unwrap();
            let back: MultiSeries = serde_json::from_str(&j).unwrap();
            prop_assert_eq!(back, s);
        }
    }
}
