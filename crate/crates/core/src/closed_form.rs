//! Rational closed forms of `C_T` and `CI_T` for the four pattern sets of
//! length two and three: `{12,21}`, `{123,321}`, `{231,312}`, `{132,213}`.
//!
//! `v_i` stands for `ū_i²`. For `{12,21}` and `{132,213}` the cluster series
//! is obtained from the involutory one by `t → 1, u_i → a_i, v_i → a_i²`.
//! That identity fails for `{123,321}`: a cluster on `n…1` may carry marks not
//! closed under siblings, so `C_T` there uses the increasing shape twice.

use num_bigint::BigInt;

use crate::cluster::Layout;
use crate::error::{Error, Result};
use crate::pattern::PatternSet;
use crate::series::{MultiSeries, RationalExpr, VarSet, EXACT};

/// The pattern sets with known closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `{12, 21}`
    Adjacent,
    /// `{123, 321}`
    Monotone,
    /// `{231, 312}`
    Rotation,
    /// `{132, 213}`
    Staircase,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Adjacent,
        Family::Monotone,
        Family::Rotation,
        Family::Staircase,
    ];

    pub fn of(set: &PatternSet) -> Option<Family> {
        match set.spec_string().as_str() {
            "12,21" => Some(Family::Adjacent),
            "123,321" => Some(Family::Monotone),
            "231,312" => Some(Family::Rotation),
            "132,213" => Some(Family::Staircase),
            _ => None,
        }
    }

    pub fn spec(self) -> &'static str {
        match self {
            Family::Adjacent => "12,21",
            Family::Monotone => "123,321",
            Family::Rotation => "231,312",
            Family::Staircase => "132,213",
        }
    }

    pub fn pattern_set(self) -> PatternSet {
        PatternSet::parse_spec(self.spec(), false).expect("built-in family is valid")
    }
}

/// `C_T` over `x, a…, b…, c…` and `CI_T` over `x, t, u…, v…, w…`.
#[derive(Debug, Clone)]
pub struct ClosedForms {
    pub cluster: RationalExpr,
    pub involutory: RationalExpr,
}

/// Monomial builder over exact polynomials.
struct Poly<'a>(&'a VarSet);

impl Poly<'_> {
    fn m(&self, coef: i64, exps: &[(&str, u32)]) -> MultiSeries {
        MultiSeries::monomial(self.0, EXACT, exps, coef).expect("known variable")
    }

    fn one(&self) -> MultiSeries {
        MultiSeries::one(self.0, EXACT)
    }

    fn frac(&self, num: MultiSeries, den: MultiSeries) -> RationalExpr {
        RationalExpr::new(num, den).expect("denominator has constant term 1")
    }
}

/// The closed forms for `set`, or [`Error::UnsupportedFamily`].
pub fn closed_form(set: &PatternSet) -> Result<ClosedForms> {
    let family = Family::of(set).ok_or_else(|| Error::UnsupportedFamily(set.to_string()))?;
    let layout = Layout::new(set)?;
    let iv = layout.involution_vars();
    let p = Poly(iv);
    let involutory = match family {
        Family::Adjacent => {
            // x²t²u1/(1 − xtu1) + (u2 + xt·v2)x²/(1 − x²v2)
            let increasing = p.frac(
                p.m(1, &[("x", 2), ("t", 2), ("u1", 1)]),
                p.one() - p.m(1, &[("x", 1), ("t", 1), ("u1", 1)]),
            );
            let decreasing = p.frac(
                p.m(1, &[("x", 2), ("u2", 1)]) + p.m(1, &[("x", 3), ("t", 1), ("v2", 1)]),
                p.one() - p.m(1, &[("x", 2), ("v2", 1)]),
            );
            increasing.checked_add(&decreasing)?
        }
        Family::Monotone => {
            let [k1, k2, k3] = monotone_parts();
            k1.checked_add(&k2)?.checked_add(&k3)?
        }
        Family::Rotation => {
            // x⁴wt(t + x + x³w + x⁴wt)/(1 − x⁶w²)
            let inner = p.m(1, &[("t", 1)])
                + p.m(1, &[("x", 1)])
                + p.m(1, &[("x", 3), ("w1", 1)])
                + p.m(1, &[("x", 4), ("w1", 1), ("t", 1)]);
            p.frac(
                &p.m(1, &[("x", 4), ("w1", 1), ("t", 1)]) * &inner,
                p.one() - p.m(1, &[("x", 6), ("w1", 2)]),
            )
        }
        Family::Staircase => {
            // ((u1+u2)x³t + x⁴t²u1u2 + x⁵tu1u2)/(1 − x³tu1u2)
            let num = p.m(1, &[("x", 3), ("t", 1), ("u1", 1)])
                + p.m(1, &[("x", 3), ("t", 1), ("u2", 1)])
                + p.m(1, &[("x", 4), ("t", 2), ("u1", 1), ("u2", 1)])
                + p.m(1, &[("x", 5), ("t", 1), ("u1", 1), ("u2", 1)]);
            p.frac(num, p.one() - p.m(1, &[("x", 3), ("t", 1), ("u1", 1), ("u2", 1)]))
        }
    };
    let cluster = match family {
        Family::Rotation => {
            // x³(b + c + xbc + x²bc)/(1 − x³bc)
            let q = Poly(layout.cluster_vars());
            let num = q.m(1, &[("x", 3), ("b1", 1)])
                + q.m(1, &[("x", 3), ("c1", 1)])
                + q.m(1, &[("x", 4), ("b1", 1), ("c1", 1)])
                + q.m(1, &[("x", 5), ("b1", 1), ("c1", 1)]);
            q.frac(num, q.one() - q.m(1, &[("x", 3), ("b1", 1), ("c1", 1)]))
        }
        Family::Monotone => {
            // x³a/(1 − xa − x²a) for each of a1, a2
            let q = Poly(layout.cluster_vars());
            let run = |a: &str| {
                q.frac(
                    q.m(1, &[("x", 3), (a, 1)]),
                    q.one() - q.m(1, &[("x", 1), (a, 1)]) - q.m(1, &[("x", 2), (a, 1)]),
                )
            };
            run("a1").checked_add(&run("a2"))?
        }
        _ => cluster_from_involutory(&layout, &involutory)?,
    };
    Ok(ClosedForms {
        cluster,
        involutory,
    })
}

/// `C_T = CI_T(x, 1, a…, a²…)` for sets made of involutions only.
pub fn cluster_from_involutory(layout: &Layout, ci: &RationalExpr) -> Result<RationalExpr> {
    if layout.s() > 0 {
        return Err(Error::InvalidArgument(
            "identity C = CI(x,1,a,a²) needs a set of involutions".into(),
        ));
    }
    let cv = layout.cluster_vars();
    let mut bindings = vec![("t".to_string(), MultiSeries::one(cv, EXACT))];
    for i in 0..layout.r() {
        let a = MultiSeries::var(cv, EXACT, &Layout::a(i))?;
        bindings.push((Layout::u(i), a.clone()));
        bindings.push((Layout::v(i), a.pow(2)));
    }
    let refs: Vec<(&str, MultiSeries)> = bindings.iter().map(|(n, s)| (n.as_str(), s.clone())).collect();
    ci.substitute(cv, &refs)
}

/// `K1, K2, K3` for `{123, 321}`: clusters on `12…m`, clusters on `n…1`
/// containing the central self-sibling mark, and the remaining ones on `n…1`.
pub fn monotone_parts() -> [RationalExpr; 3] {
    let layout = Layout::new(&Family::Monotone.pattern_set()).expect("layout");
    let p = Poly(layout.involution_vars());
    let k1 = p.frac(
        p.m(1, &[("x", 3), ("t", 3), ("u1", 1)]),
        p.one() - p.m(1, &[("u1", 1), ("x", 1), ("t", 1)]) - p.m(1, &[("u1", 1), ("x", 2), ("t", 2)]),
    );
    let den = p.one() - p.m(1, &[("v2", 1), ("x", 2)]) - p.m(1, &[("v2", 1), ("x", 4)]);
    let k2 = p.frac(p.m(1, &[("x", 3), ("t", 1), ("u2", 1)]), den.clone());
    let k3 = p.frac(
        p.m(1, &[("x", 4), ("v2", 1)]) + p.m(1, &[("x", 5), ("t", 1), ("v2", 1)]),
        den,
    );
    [k1, k2, k3]
}

/// Expansion coefficient helper used by tests and the CLI.
pub fn coefficient(s: &MultiSeries, exps: &[(&str, u32)]) -> BigInt {
    s.coeff_of(exps).unwrap_or_default()
}
