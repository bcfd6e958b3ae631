use std::io::Write;

use hertzinv_core::closed_form::closed_form;
use hertzinv_core::cluster::{cluster_gf, involutory_cluster_gf};
use hertzinv_core::oracle::{brute_force_distribution, brute_force_marked, brute_force_marked_subsets, for_each_involution};
use hertzinv_core::theorem::{apply_main_theorem, main_series, marked_gf};
use hertzinv_core::{CfDepth, Family, PatternSet, Role, Source};
use serde::Serialize;

use crate::args::Format;
use crate::commands::depth_stable;
use crate::render::write_json;
use crate::CliError;

/// Marked-involution checks enumerate mark subsets and stop at this length.
const MARKED_LIMIT: u32 = 8;

#[derive(Debug, Serialize)]
struct CheckResult {
    name: String,
    pass: bool,
    detail: String,
}

fn check(name: &str, f: impl FnOnce() -> Result<(bool, String), CliError>) -> CheckResult {
    match f() {
        Ok((pass, detail)) => CheckResult {
            name: name.into(),
            pass,
            detail,
        },
        Err(e) => CheckResult {
            name: name.into(),
            pass: false,
            detail: e.message,
        },
    }
}

pub fn verify(
    out: &mut dyn Write,
    format: Format,
    set: &PatternSet,
    n: u32,
    depth: Option<usize>,
) -> Result<(), CliError> {
    let depth = depth.map(CfDepth).unwrap_or_else(|| CfDepth::default_for(n));
    let family = Family::of(set);
    let mut results = Vec::new();

    results.push(check("theorem vs oracle (enumerated clusters)", || {
        let table = apply_main_theorem(set, n, Source::Enumerated, Some(depth))?;
        for k in 0..=n as usize {
            if table.row_map(k) != brute_force_distribution(set, k) {
                return Ok((false, format!("row n={k} differs")));
            }
        }
        Ok((true, format!("all coefficients equal for n <= {n}")))
    }));

    if let Some(fam) = family {
        results.push(check("closed-form vs enumerated route", || {
            let e = main_series(set, n, Source::Enumerated, Some(depth))?;
            let c = main_series(set, n, Source::ClosedForm, Some(depth))?;
            Ok((e == c, format!("F_T for {} through x^{n}", fam.spec())))
        }));
        results.push(check("cluster series vs closed forms", || {
            let forms = closed_form(set)?;
            let c = cluster_gf(set, n)? == forms.cluster.expand(n)?;
            let ci = involutory_cluster_gf(set, n)? == forms.involutory.expand(n)?;
            Ok((c && ci, format!("C {}, CI {} through x^{n}", verdict(c), verdict(ci))))
        }));
    }

    results.push(check("continued fraction depth stability", || {
        let source = if family.is_some() { Source::ClosedForm } else { Source::Enumerated };
        let ok = depth_stable(set, n, source, depth)?;
        Ok((ok, format!("depth {} vs {} through x^{n}", depth.0, depth.0 + 1)))
    }));

    results.push(check("sibling parity and bijection", || {
        let mut bad = None;
        let mut seen = 0u64;
        for k in 0..=n as usize {
            for_each_involution(k, |p| {
                seen += 1;
                if bad.is_some() {
                    return;
                }
                let occs = set.find_occurrences(p.word());
                let stats = set.count_stats(p).expect("involution");
                let parity = stats.vector.involutive.iter().all(|c| c.nsib % 2 == 0);
                let closed = occs.iter().all(|o| {
                    let s = o.sibling_unchecked();
                    s.matches(p.word()) && s.sibling_unchecked() == *o
                });
                let balanced = set.patterns().iter().enumerate().all(|(i, q)| {
                    !matches!(set.role(q), Some(Role::Transversal(_)))
                        || stats.totals[i] == stats.totals[set.patterns().binary_search(&q.inverse()).unwrap()]
                });
                if !(parity && closed && balanced) {
                    bad = Some(p.to_string());
                }
            });
        }
        Ok(match bad {
            None => (true, format!("{seen} involutions")),
            Some(p) => (false, format!("fails at {p}")),
        })
    }));

    let m = n.min(MARKED_LIMIT);
    results.push(check("marked involutions: product formula, mark subsets, MI_T", || {
        let mi = marked_gf(set, m, Source::Enumerated)?;
        for k in 0..=m {
            let product = brute_force_marked(set, k as usize)?;
            if product.terms() != brute_force_marked_subsets(set, k as usize)?.terms() {
                return Ok((false, format!("product and subset routes differ at n={k}")));
            }
            if mi.grade(k).terms() != product.terms() {
                return Ok((false, format!("MI_T differs from the oracle at n={k}")));
            }
        }
        Ok((true, format!("n <= {m}")))
    }));

    let all = results.iter().all(|r| r.pass);
    match format {
        Format::Json => write_json(
            out,
            &serde_json::json!({"patterns": set.spec_string(), "n": n, "pass": all, "checks": results}),
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["check", "pass", "detail"]).map_err(CliError::io)?;
            for r in &results {
                w.write_record([r.name.as_str(), if r.pass { "true" } else { "false" }, r.detail.as_str()])
                    .map_err(CliError::io)?;
            }
            w.flush()?;
        }
        Format::Plain => {
            for r in &results {
                writeln!(out, "{} {}: {}", verdict(r.pass), r.name, r.detail)?;
            }
            let passed = results.iter().filter(|r| r.pass).count();
            writeln!(out, "{passed}/{} checks passed for {set}, n <= {n}", results.len())?;
        }
    }
    if all {
        Ok(())
    } else {
        Err(CliError::mismatch(format!("verification failed for {set}")))
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
