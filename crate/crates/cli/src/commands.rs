use std::fs;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use fcy_core::analysis::{analyze_full, AnalyzeOptions, CyReport};
use fcy_core::category::{base_category, roundtrip, serre_structure, verify_serre};
use fcy_core::constructions::{
    classical_preprojective, cobweb_builtin, cut_from_json, cut_subalgebra, dynkin, higher_type_a,
    jacobi_presentation, DynkinType, Family, Potential,
};
use fcy_core::quiver::Presentation;
use fcy_core::FcyError;
use serde::Serialize;
use thiserror::Error;

use crate::cli::{Cli, Command, Format, Input, RunOptions};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] FcyError),
    #[error("{path}: {source}")]
    Input { path: String, source: FcyError },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(
                FcyError::DimensionBoundExceeded { .. }
                | FcyError::NoOrderFound { .. }
                | FcyError::WindowTooSmall { .. },
            ) => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_file<T>(path: &Path, parse: impl FnOnce(&str) -> fcy_core::Result<T>) -> CliResult<T> {
    let text = read(path)?;
    parse(&text).map_err(|source| CliError::Input {
        path: path.display().to_string(),
        source,
    })
}

fn write_output(run: &RunOptions, text: &str) -> CliResult<()> {
    match &run.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn options(run: &RunOptions) -> AnalyzeOptions {
    AnalyzeOptions {
        field: run.field,
        max_len: run.max_len as usize,
        k_max: run.k_max as usize,
        allow_inner: !run.strict_order,
        seed: run.seed,
        form_seed: run.form_seed,
    }
}

fn family(input: &Input) -> CliResult<Option<Family>> {
    let Some(name) = &input.family else {
        return Ok(None);
    };
    if name == "typeA" {
        let (Some(d), Some(s)) = (input.d_param, input.s) else {
            return Err(CliError::Usage(
                "--family typeA needs --d-param and --s".into(),
            ));
        };
        return Ok(Some(Family::TypeA { d, s }));
    }
    Ok(Some(name.parse()?))
}

/// The presentation, its source name and the natural `d`.
fn resolve(input: &Input) -> CliResult<(Presentation, String, usize)> {
    if let Some(f) = family(input)? {
        return Ok((f.presentation()?, f.source(), f.default_d()));
    }
    if let Some(path) = &input.quiver {
        let pres = parse_file(path, Presentation::from_json)?;
        return Ok((pres, format!("file:{}", path.display()), 1));
    }
    Err(CliError::Usage(
        "one of --family or --quiver is required".into(),
    ))
}

fn render(run: &RunOptions, report: &CyReport) -> String {
    match run.format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Tsv => format!("{}\n{}\n", CyReport::tsv_header(), report.tsv_row()),
    }
}

fn analyze_and_print(
    pres: &Presentation,
    source: &str,
    d: usize,
    run: &RunOptions,
) -> CliResult<u8> {
    let analysis = analyze_full(pres, source, d, &run.chi, &options(run))?;
    write_output(run, &render(run, &analysis.report))?;
    Ok(analysis.report.verdict.exit_code() as u8)
}

fn emit(run: &RunOptions, pres: &Presentation) -> CliResult<u8> {
    write_output(run, &format!("{}\n", pres.to_json()))?;
    Ok(0)
}

pub fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Analyze { input, run } => {
            let (pres, source, d) = resolve(&input)?;
            analyze_and_print(&pres, &source, run.d.unwrap_or(d), &run)
        }
        Command::Preprojective {
            input,
            run,
            emit: only_emit,
        } => {
            let (pres, source) = match (family(&input)?, &input.quiver) {
                (Some(f @ Family::Dynkin(..)), _) => (f.presentation()?, f.source()),
                (Some(f), _) => return Err(CliError::Usage(format!("{f} is not a Dynkin family"))),
                (None, Some(path)) => {
                    let q = parse_file(path, |t| Ok(Presentation::from_json(t)?.quiver))?;
                    (
                        classical_preprojective(&q)?,
                        format!("preprojective:file:{}", path.display()),
                    )
                }
                (None, None) => {
                    return Err(CliError::Usage(
                        "one of --family or --quiver is required".into(),
                    ))
                }
            };
            if only_emit {
                return emit(&run, &pres);
            }
            analyze_and_print(&pres, &source, run.d.unwrap_or(1), &run)
        }
        Command::Jacobi {
            quiver,
            potential,
            cut,
            family: name,
            run,
            emit: only_emit,
            cut_subalgebra: degree_zero,
        } => {
            let (q, w, c, source) = match (name.as_deref(), quiver, potential, cut) {
                (Some("cobweb"), ..) => {
                    let (q, w, c) = cobweb_builtin();
                    (q, w, c, Family::Cobweb.source())
                }
                (Some(other), ..) => {
                    return Err(CliError::Usage(format!(
                        "no builtin quiver with potential named {other:?}"
                    )))
                }
                (None, Some(qp), Some(wp), Some(cp)) => {
                    let q = parse_file(&qp, |t| Ok(Presentation::from_json(t)?.quiver))?;
                    let w = parse_file(&wp, |t| Potential::from_json(&q, t))?;
                    let c = parse_file(&cp, |t| cut_from_json(&q, t))?;
                    (q, w, c, format!("jacobi:file:{}", qp.display()))
                }
                _ => {
                    return Err(CliError::Usage(
                        "jacobi needs --family or all of --quiver, --potential, --cut".into(),
                    ))
                }
            };
            let mut pres = jacobi_presentation(&q, &w, &c)?;
            if degree_zero {
                pres = cut_subalgebra(&pres, &c)?;
            }
            if only_emit {
                return emit(&run, &pres);
            }
            analyze_and_print(&pres, &source, run.d.unwrap_or(2), &run)
        }
        Command::TypeA {
            d_param,
            s,
            run,
            emit: only_emit,
        } => {
            let pres = higher_type_a(d_param, s)?;
            if only_emit {
                return emit(&run, &pres);
            }
            let source = Family::TypeA { d: d_param, s }.source();
            analyze_and_print(&pres, &source, run.d.unwrap_or(d_param), &run)
        }
        Command::DynkinTable {
            types,
            run,
            threads,
        } => dynkin_table(&types, &run, threads),
        Command::Roundtrip { input, run, window } => {
            let (pres, source, d) = resolve(&input)?;
            let d = run.d.unwrap_or(d);
            let mut analysis = analyze_full(&pres, &source, d, &run.chi, &options(&run))?;
            let alg = &analysis.algebra;
            let c = base_category(alg)?;
            let rt = roundtrip(&c, window.0, window.1)?;
            let mut passed = rt.isomorphic;
            let mut checks = serde_json::json!({ "roundtrip": rt });
            if let (Some(form), Some(twisted)) = (&analysis.form, &analysis.twisted) {
                let chi = run.chi.value(d, alg.field())?;
                let sd = serre_structure(alg, &c, form, twisted, &chi);
                let serre = verify_serre(&c, &sd);
                passed &= serre.passed();
                checks["serre"] = serde_json::to_value(serre).expect("serializable");
            }
            analysis.report.category_checks = Some(checks);
            write_output(&run, &render(&run, &analysis.report))?;
            Ok(if passed { 0 } else { 1 })
        }
    }
}

#[derive(Clone, Debug, Serialize)]
struct DynkinRow {
    #[serde(rename = "type")]
    name: String,
    n: usize,
    h: usize,
    #[serde(rename = "R")]
    roots: usize,
    rho_identity: bool,
    k: Option<usize>,
    #[serde(rename = "N")]
    big_n: Option<i64>,
    m: Option<i64>,
    expected: [i64; 2],
    #[serde(rename = "match")]
    matches: bool,
    used_inner: bool,
}

const DYNKIN_COLUMNS: [&str; 11] = [
    "type",
    "n",
    "h",
    "R",
    "rho_identity",
    "k",
    "N",
    "m",
    "expected",
    "match",
    "used_inner",
];

fn parse_dynkin(name: &str) -> CliResult<(DynkinType, usize)> {
    let bad = || CliError::Usage(format!("bad Dynkin type {name:?}; expected e.g. A3 or E6"));
    let name = name.trim();
    let (ty, n) = name.split_at(name.char_indices().nth(1).map_or(name.len(), |(i, _)| i));
    let ty: DynkinType = ty.parse().map_err(|_| bad())?;
    let n: usize = n.parse().map_err(|_| bad())?;
    Ok((ty, n))
}

fn dynkin_row(ty: DynkinType, n: usize, run: &RunOptions) -> CliResult<DynkinRow> {
    let (q, data) = dynkin(ty, n, None)?;
    let pres = classical_preprojective(&q)?;
    let report = analyze_full(
        &pres,
        &Family::Dynkin(ty, n).source(),
        1,
        &run.chi,
        &options(run),
    )?
    .report;
    let h = data.coxeter as i64;
    let expected = if data.rho_is_identity() {
        [h / 2 - 1, h / 2]
    } else {
        [h - 2, h]
    };
    Ok(DynkinRow {
        name: data.name(),
        n,
        h: data.coxeter,
        roots: data.positive_roots,
        rho_identity: data.rho_is_identity(),
        k: report.k,
        big_n: report.n,
        m: report.m,
        expected,
        matches: report.n == Some(expected[0]) && report.m == Some(expected[1]),
        used_inner: report.used_inner,
    })
}

fn dynkin_table(types: &[String], run: &RunOptions, threads: usize) -> CliResult<u8> {
    let parsed = types
        .iter()
        .map(|t| parse_dynkin(t))
        .collect::<CliResult<Vec<_>>>()?;
    let results: Vec<OnceLock<CliResult<DynkinRow>>> =
        parsed.iter().map(|_| OnceLock::new()).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..threads.clamp(1, parsed.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(ty, n)) = parsed.get(i) else { break };
                let _ = results[i].set(dynkin_row(ty, n, run));
            });
        }
    });
    let rows = results
        .into_iter()
        .map(|r| r.into_inner().expect("every row is computed"))
        .collect::<CliResult<Vec<_>>>()?;
    let text = match run.format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&rows).expect("serializable")
        ),
        Format::Tsv => {
            let mut out = DYNKIN_COLUMNS.join("\t");
            out.push('\n');
            for row in &rows {
                let v = serde_json::to_value(row).expect("serializable");
                let cells: Vec<String> = DYNKIN_COLUMNS
                    .iter()
                    .map(|c| match &v[*c] {
                        serde_json::Value::Null => String::new(),
                        serde_json::Value::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                    .collect();
                out.push_str(&cells.join("\t"));
                out.push('\n');
            }
            out
        }
    };
    write_output(run, &text)?;
    Ok(if rows.iter().all(|r| r.matches) { 0 } else { 1 })
}
