use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use hertzinv_core::closed_form::closed_form;
use hertzinv_core::cluster::{cluster_gf, enumerate_clusters, involutory_cluster_gf};
use hertzinv_core::oracle::brute_force_distribution;
use hertzinv_core::specialize::specialize;
use hertzinv_core::theorem::{apply_main_theorem, cf_eval, main_series, marked_gf, theorem_arguments};
use hertzinv_core::wilf::wilf_classes;
use hertzinv_core::{CfDepth, Family, Layout, PatternSet, Preset, Source};
use serde_json::json;

use crate::args::{Format, PatternArgs, SeriesKind, SourceArg};
use crate::render::{grade_polynomial, legend, stats_json, write_json, write_stats_csv, write_stats_plain};
use crate::CliError;

/// Largest `n` the brute-force commands accept without `--force`.
pub const ORACLE_LIMIT: usize = 12;

pub fn parse_set(args: &PatternArgs) -> Result<PatternSet, CliError> {
    Ok(PatternSet::parse_spec(&args.patterns, args.close)?)
}

pub fn pick_source(set: &PatternSet, arg: Option<SourceArg>) -> Source {
    match arg {
        Some(SourceArg::Enumerated) => Source::Enumerated,
        Some(SourceArg::ClosedForm) => Source::ClosedForm,
        None if Family::of(set).is_some() => Source::ClosedForm,
        None => Source::Enumerated,
    }
}

fn source_name(s: Source) -> &'static str {
    match s {
        Source::Enumerated => "enumerated",
        Source::ClosedForm => "closed-form",
    }
}

pub fn guard(n: usize, force: bool) -> Result<(), CliError> {
    if n > ORACLE_LIMIT && !force {
        return Err(CliError::guard(format!(
            "n = {n} exceeds the brute-force limit {ORACLE_LIMIT}; pass --force to run anyway"
        )));
    }
    Ok(())
}

pub fn distribution(
    out: &mut dyn Write,
    format: Format,
    set: &PatternSet,
    n: u32,
    depth: Option<usize>,
    source: Source,
) -> Result<(), CliError> {
    let depth = depth.map(CfDepth).unwrap_or_else(|| CfDepth::default_for(n));
    let f = main_series(set, n, source, Some(depth))?;
    let table = hertzinv_core::DistributionTable::from_series(set, &f)?;
    match format {
        Format::Plain => {
            writeln!(
                out,
                "# F_T for {set}, n <= {n}, depth {}, {} cluster series",
                depth.0,
                source_name(source)
            )?;
            for line in legend(&Layout::new(set)?) {
                writeln!(out, "# {line}")?;
            }
            for k in 0..=n {
                writeln!(out, "n={k}: {}", grade_polynomial(&f, k))?;
            }
        }
        Format::Csv => write_stats_csv(out, set, table.entries())?,
        Format::Json => {
            let rows: Vec<_> = (0..=n as usize)
                .map(|k| {
                    let entries: Vec<_> = table
                        .row(k)
                        .map(|(sv, c)| json!({"stats": stats_json(set, sv), "count": c}))
                        .collect();
                    json!({"n": k, "total": table.row_sum(k), "entries": entries})
                })
                .collect();
            let doc = json!({
                "patterns": set.spec_string(),
                "order": n,
                "depth": depth.0,
                "source": source_name(source),
                "variables": legend(&Layout::new(set)?),
                "rows": rows,
                "series": f,
            });
            write_json(out, &doc)?;
        }
    }
    Ok(())
}

pub fn oracle(out: &mut dyn Write, format: Format, set: &PatternSet, n: usize) -> Result<(), CliError> {
    let map = brute_force_distribution(set, n);
    match format {
        Format::Plain => {
            writeln!(out, "# involutions of length {n} by statistics for {set}")?;
            write_stats_plain(out, set, &map)?;
        }
        Format::Csv => write_stats_csv(out, set, &map)?,
        Format::Json => {
            let entries: Vec<_> = map
                .iter()
                .map(|(sv, c)| json!({"stats": stats_json(set, sv), "count": c}))
                .collect();
            let total: u64 = map.values().sum();
            write_json(
                out,
                &json!({"patterns": set.spec_string(), "n": n, "total": total, "entries": entries}),
            )?;
        }
    }
    Ok(())
}

pub fn clusters(
    out: &mut dyn Write,
    format: Format,
    set: &PatternSet,
    max_n: usize,
    involutory: bool,
) -> Result<(), CliError> {
    let list: Vec<_> = enumerate_clusters(set, max_n)
        .into_iter()
        .filter(|c| !involutory || c.is_involutory())
        .collect();
    match format {
        Format::Plain => {
            for c in &list {
                writeln!(out, "{c}")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["length", "word", "marks", "involutory"]).map_err(CliError::io)?;
            for c in &list {
                w.write_record([
                    c.len().to_string(),
                    c.permutation().to_string(),
                    c.marked().mark_factors().join(" "),
                    c.is_involutory().to_string(),
                ])
                .map_err(CliError::io)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let items: Vec<_> = list
                .iter()
                .map(|c| {
                    json!({
                        "length": c.len(),
                        "word": c.permutation(),
                        "marks": c.marks().iter().collect::<Vec<_>>(),
                        "involutory": c.is_involutory(),
                    })
                })
                .collect();
            write_json(out, &json!({"patterns": set.spec_string(), "max_n": max_n, "clusters": items}))?;
        }
    }
    Ok(())
}

pub struct SeriesRequest {
    pub n: u32,
    pub kind: SeriesKind,
    pub source: Source,
    pub depth: Option<usize>,
    pub rational: bool,
}

pub fn series(out: &mut dyn Write, format: Format, set: &PatternSet, req: SeriesRequest) -> Result<(), CliError> {
    let n = req.n;
    if req.rational {
        let forms = closed_form(set)?;
        let r = match req.kind {
            SeriesKind::C => forms.cluster,
            SeriesKind::Ci => forms.involutory,
            _ => return Err(CliError::usage("--rational applies to --kind c or ci")),
        };
        match format {
            Format::Json => write_json(out, &json!({"num": r.num(), "den": r.den(), "text": r.to_string()}))?,
            _ => writeln!(out, "{r}")?,
        }
        return Ok(());
    }
    let s = match req.kind {
        SeriesKind::C => match req.source {
            Source::Enumerated => cluster_gf(set, n)?,
            Source::ClosedForm => closed_form(set)?.cluster.expand(n)?,
        },
        SeriesKind::Ci => match req.source {
            Source::Enumerated => involutory_cluster_gf(set, n)?,
            Source::ClosedForm => closed_form(set)?.involutory.expand(n)?,
        },
        SeriesKind::A => theorem_arguments(set, n, req.source)?.a,
        SeriesKind::B => theorem_arguments(set, n, req.source)?.b,
        SeriesKind::F => main_series(set, n, req.source, req.depth.map(CfDepth))?,
        SeriesKind::Mi => marked_gf(set, n, req.source)?,
    };
    match format {
        Format::Json => write_json(out, &s)?,
        Format::Plain => {
            for k in 0..=n {
                writeln!(out, "x^{k}: {}", grade_polynomial(&s, k))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let names = s.vars().names().to_vec();
            let mut header = names.clone();
            header.push("coef".into());
            w.write_record(&header).map_err(CliError::io)?;
            for (e, c) in s.terms() {
                let mut rec: Vec<String> = e.iter().map(|v| v.to_string()).collect();
                rec.push(c.to_string());
                w.write_record(&rec).map_err(CliError::io)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Parses a b-file: `n value` per line, `#` comments and blank lines ignored.
pub fn read_bfile(path: &Path) -> Result<BTreeMap<usize, u64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parsed = (|| Some((parts.next()?.parse().ok()?, parts.next()?.parse().ok()?)))();
        let Some((k, v)) = parsed else {
            return Err(CliError::usage(format!("{}:{}: expected \"n value\"", path.display(), i + 1)));
        };
        out.insert(k, v);
    }
    Ok(out)
}

pub fn sequence(
    out: &mut dyn Write,
    format: Format,
    preset: &str,
    n: u32,
    expect: Option<&Path>,
) -> Result<(), CliError> {
    let preset: Preset = preset.parse()?;
    let set = Family::Adjacent.pattern_set();
    let table = apply_main_theorem(&set, n, Source::ClosedForm, None)?;
    let spec = specialize(&table, preset)?;
    match format {
        Format::Json => write_json(out, &spec)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            if preset.is_bivariate() {
                w.write_record(["n", "short_pairs", "count"]).map_err(CliError::io)?;
                for (k, row) in spec.rows.iter().enumerate() {
                    for (j, c) in row.iter().enumerate() {
                        w.write_record([k.to_string(), j.to_string(), c.to_string()]).map_err(CliError::io)?;
                    }
                }
            } else {
                w.write_record(["n", "value"]).map_err(CliError::io)?;
                for (k, v) in spec.sequence().iter().enumerate() {
                    w.write_record([k.to_string(), v.to_string()]).map_err(CliError::io)?;
                }
            }
            w.flush()?;
        }
        Format::Plain => {
            if preset.is_bivariate() {
                writeln!(out, "# n: counts by number of short pairs 0, 1, 2, ...")?;
                for (k, row) in spec.rows.iter().enumerate() {
                    let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                    writeln!(out, "{k}: {}", cells.join(" "))?;
                }
            } else {
                for (k, v) in spec.sequence().iter().enumerate() {
                    writeln!(out, "{k} {v}")?;
                }
            }
        }
    }
    let Some(path) = expect else {
        return Ok(());
    };
    if preset.is_bivariate() {
        return Err(CliError::usage("--expect-file needs a univariate preset"));
    }
    let expected = read_bfile(path)?;
    let got = spec.sequence();
    let mut compared = 0;
    let mut bad = Vec::new();
    for (&k, &v) in &expected {
        let Some(&g) = got.get(k) else { continue };
        compared += 1;
        if g != v {
            bad.push(format!("n={k}: expected {v}, computed {g}"));
        }
    }
    if bad.is_empty() {
        eprintln!("expect-file: {compared} terms match");
        Ok(())
    } else {
        Err(CliError::mismatch(format!("expect-file: {} of {compared} terms differ; {}", bad.len(), bad.join("; "))))
    }
}

pub fn wilf(out: &mut dyn Write, format: Format, length: usize, max_n: usize) -> Result<(), CliError> {
    let report = wilf_classes(length, max_n)?;
    match format {
        Format::Json => write_json(out, &report)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["class", "pattern", "avoiders"]).map_err(CliError::io)?;
            for (i, class) in report.classes.iter().enumerate() {
                for p in class {
                    let seq: Vec<String> = report.sequences[p].iter().map(|v| v.to_string()).collect();
                    w.write_record([i.to_string(), p.to_string(), seq.join(" ")]).map_err(CliError::io)?;
                }
            }
            w.flush()?;
        }
        Format::Plain => {
            for (class, text) in report.classes.iter().zip(report.class_strings()) {
                let seq: Vec<String> = report.sequences[&class[0]].iter().map(|v| v.to_string()).collect();
                writeln!(out, "{text}: {}", seq.join(" "))?;
            }
        }
    }
    Ok(())
}

/// Depth check used by `verify`: levels `d` and `d + 1` agree.
pub fn depth_stable(set: &PatternSet, n: u32, source: Source, depth: CfDepth) -> Result<bool, CliError> {
    let args = theorem_arguments(set, n, source)?;
    let lo = cf_eval(&args.a, &args.b, n, depth)?;
    let hi = cf_eval(&args.a, &args.b, n, CfDepth(depth.0 + 1))?;
    Ok(lo == hi)
}
