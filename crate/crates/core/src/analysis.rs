//! The full pipeline from a presentation to a fractional Calabi-Yau verdict.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::algebra::{quotient_basis, FiniteDimAlgebra};
use crate::error::{FcyError, Result};
use crate::frobenius::{
    chi_twist, da_order, frobenius_form, graded_nakayama, nakayama_automorphism, radical_and_socle,
    random_coefficients, selfinjectivity_test, CharSpec, DegreeAdjusted, FrobeniusForm,
    OrderResult,
};
use crate::linalg::Field;
use crate::quiver::Presentation;

pub const ELL_CONVENTION: &str = "left-projective: ell(e_i) = deg soc(A e_i)";

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub field: Field,
    pub max_len: usize,
    pub k_max: usize,
    pub allow_inner: bool,
    pub seed: u64,
    /// Randomizes the socle coefficients of `λ` when set.
    pub form_seed: Option<u64>,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            field: Field::Rational,
            max_len: 64,
            k_max: 64,
            allow_inner: true,
            seed: 0,
            form_seed: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    FractionalCy,
    NotFrobenius,
    NotHomogeneous,
    NotConnected,
    NoOrderFound,
}

impl Verdict {
    /// Exit status: 0 for a definite verdict, 2 when the search bound was hit.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::NoOrderFound => 2,
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyReport {
    pub source: String,
    pub verdict: Verdict,
    pub frobenius: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub field: String,
    pub dimension: usize,
    pub nu: Vec<Vec<String>>,
    pub ell: IndexMap<String, Vec<i64>>,
    pub ell_convention: String,
    pub character: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cy: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_order_strict: Option<usize>,
    pub used_inner: bool,
    pub connected: bool,
    pub homogeneous: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category_checks: Option<serde_json::Value>,
}

impl CyReport {
    /// Column order of the TSV encoding.
    pub const COLUMNS: [&'static str; 20] = [
        "source",
        "verdict",
        "frobenius",
        "reason",
        "field",
        "dimension",
        "nu",
        "ell",
        "ell_convention",
        "character",
        "k",
        "N",
        "m",
        "d",
        "cy",
        "alpha_order_strict",
        "used_inner",
        "connected",
        "homogeneous",
        "category_checks",
    ];

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn tsv_header() -> String {
        Self::COLUMNS.join("\t")
    }

    /// One TSV row; strings are written raw, other values as compact JSON,
    /// absent fields as empty cells.
    pub fn tsv_row(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        Self::COLUMNS
            .iter()
            .map(|c| match value.get(*c) {
                None | Some(serde_json::Value::Null) => String::new(),
                Some(serde_json::Value::String(s)) => s.clone(),
                Some(v) => v.to_string(),
            })
            .collect::<Vec<_>>()
            .join("\t")
    }
}

/// Everything computed along the way, for callers that need more than the report.
pub struct Analysis {
    pub algebra: FiniteDimAlgebra,
    pub report: CyReport,
    pub form: Option<FrobeniusForm>,
    pub nakayama: Option<DegreeAdjusted>,
    pub twisted: Option<DegreeAdjusted>,
    pub order: Option<OrderResult>,
}

/// Cycles of a permutation, each starting at its least element.
pub fn permutation_cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            cycle.push(v);
            v = perm[v];
        }
        out.push(cycle);
    }
    out
}

pub fn analyze(
    pres: &Presentation,
    source: &str,
    d: usize,
    chi: &CharSpec,
    opts: &AnalyzeOptions,
) -> Result<CyReport> {
    Ok(analyze_full(pres, source, d, chi, opts)?.report)
}

pub fn analyze_full(
    pres: &Presentation,
    source: &str,
    d: usize,
    chi: &CharSpec,
    opts: &AnalyzeOptions,
) -> Result<Analysis> {
    let algebra = quotient_basis(pres, opts.field, opts.max_len)?;
    log::info!("{source}: quotient of dimension {}", algebra.dim());
    let mut out = Analysis {
        report: CyReport {
            source: source.to_string(),
            verdict: Verdict::NotFrobenius,
            frobenius: false,
            reason: None,
            field: opts.field.to_string(),
            dimension: algebra.dim(),
            nu: Vec::new(),
            ell: IndexMap::new(),
            ell_convention: ELL_CONVENTION.to_string(),
            character: chi.to_string(),
            k: None,
            n: None,
            m: None,
            d,
            cy: None,
            alpha_order_strict: None,
            used_inner: false,
            connected: algebra.is_connected(),
            homogeneous: algebra.is_homogeneous(),
            category_checks: None,
        },
        algebra,
        form: None,
        nakayama: None,
        twisted: None,
        order: None,
    };
    run_pipeline(&mut out, d, chi, opts)?;
    Ok(out)
}

fn run_pipeline(out: &mut Analysis, d: usize, chi: &CharSpec, opts: &AnalyzeOptions) -> Result<()> {
    let alg = &out.algebra;
    let report = &mut out.report;
    let pres = alg.presentation();
    let names = pres.quiver.vertices();

    let soc = radical_and_socle(alg);
    let nu = match selfinjectivity_test(alg, &soc) {
        Ok(nu) => nu,
        Err(reason) => {
            report.reason = Some(reason);
            return Ok(());
        }
    };
    report.frobenius = true;
    report.nu = permutation_cycles(&nu)
        .into_iter()
        .map(|c| c.into_iter().map(|v| names[v].clone()).collect())
        .collect();
    let coefficients = opts
        .form_seed
        .map(|s| random_coefficients(opts.field, alg.vertex_count(), s));
    let form = frobenius_form(alg, &soc, &nu, coefficients.as_deref())?;
    let alpha = nakayama_automorphism(alg, &form)?;
    let graded = graded_nakayama(alg, &form, alpha);
    out.form = Some(form);
    let da = match graded {
        Ok(da) => da,
        Err(FcyError::NotHomogeneous) => {
            report.verdict = Verdict::NotHomogeneous;
            report.reason = Some("relations are not homogeneous for the grading".into());
            return Ok(());
        }
        Err(FcyError::NonHomogeneousSocle(v)) => {
            report.verdict = Verdict::NotHomogeneous;
            report.reason = Some(format!("socle of the projective at {v} is not homogeneous"));
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    for (v, l) in names.iter().zip(&da.ell) {
        report.ell.insert(v.clone(), l.clone());
    }
    let character = chi.resolve(d, opts.field, &pres.projection)?;
    let twisted = chi_twist(alg, &da, &character);
    out.nakayama = Some(da);

    if !report.connected {
        report.verdict = Verdict::NotConnected;
        report.reason = Some("quiver is not connected".into());
        out.twisted = Some(twisted);
        return Ok(());
    }
    match da_order(alg, &twisted, opts.k_max, opts.allow_inner, opts.seed) {
        Ok(order) => {
            let k = order.k as i64;
            report.verdict = Verdict::FractionalCy;
            report.k = Some(order.k);
            report.n = Some(order.n);
            report.m = Some(k + order.n);
            report.cy = Some([d as i64 * order.n, k + order.n]);
            report.alpha_order_strict = order.alpha_order_strict;
            report.used_inner = order.used_inner;
            out.order = Some(order);
        }
        Err(FcyError::NoOrderFound { k_max }) => {
            report.verdict = Verdict::NoOrderFound;
            report.reason = Some(format!(
                "no k <= {k_max} with (alpha, ell)^k isomorphic to (id, N)"
            ));
        }
        Err(e) => return Err(e),
    }
    out.twisted = Some(twisted);
    Ok(())
}
