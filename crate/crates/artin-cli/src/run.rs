//! Command execution: validation, computation, rendering.

use std::path::{Path, PathBuf};

use serde_json::json;

use artin_core::maass::{HalfPlanePoint, TruncationSpec, WaveContext};
use artin_core::scattering::{approx_resonances, exact_resonances, phase_scan};
use artin_core::zeros::{first_n_zeros, refine_zero, scan_brackets, ZetaZero};
use artin_core::verify;

use crate::plot::{emit_plot_script, PlotKind};
use crate::table::{Table, Value};

/// Scan ceiling used when a custom refinement tolerance bypasses the
/// cached zero list (the 50th zero sits near 143.1).
const ZERO_SCAN_CEILING: f64 = 150.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    Approx,
    Both,
}

impl Method {
    fn as_str(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Approx => "approx",
            Method::Both => "both",
        }
    }
}

/// Errors split by exit code: usage problems exit 2, computation
/// failures exit 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Compute(m) => write!(f, "{m}"),
        }
    }
}

impl From<artin_core::Error> for CliError {
    fn from(e: artin_core::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

fn compute_zeros(count: usize, tol: Option<f64>) -> Result<Vec<ZetaZero>, CliError> {
    if !(1..=50).contains(&count) {
        return Err(CliError::Usage(format!("--count must be in 1..=50, got {count}")));
    }
    match tol {
        None => Ok(first_n_zeros(count)?),
        Some(tol) => {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(CliError::Usage(format!("--tol must be in (0, 1), got {tol}")));
            }
            let brackets = scan_brackets(0.0, ZERO_SCAN_CEILING, 0.25)?;
            if brackets.len() < count {
                return Err(CliError::Compute(format!(
                    "only {} zeros below the scan ceiling",
                    brackets.len()
                )));
            }
            brackets[..count]
                .iter()
                .enumerate()
                .map(|(i, &b)| {
                    let mut z = refine_zero(b, tol)?;
                    z.index = i + 1;
                    Ok(z)
                })
                .collect()
        }
    }
}

pub fn run_zeros(count: usize, tol: Option<f64>, format: Format) -> Result<String, CliError> {
    let zeros = compute_zeros(count, tol)?;
    let mut table = Table::new(vec!["n", "u", "residual"]);
    for z in &zeros {
        table.push(vec![
            Value::Int(z.index as u64),
            Value::Float(z.u),
            Value::Float(z.residual),
        ]);
    }
    Ok(render(&table, format, "zeros", json!({ "count": count, "tol": tol })))
}

pub fn run_resonances(
    method: Method,
    count: usize,
    tol: Option<f64>,
    format: Format,
) -> Result<String, CliError> {
    let zeros = compute_zeros(count, tol)?;
    let mut table = match method {
        Method::Exact => Table::new(vec!["n", "u", "E", "Gamma"]),
        Method::Approx => Table::new(vec!["n", "u", "E_approx", "Gamma_approx", "delta_offset"]),
        Method::Both => Table::new(vec![
            "n", "u", "E", "Gamma", "E_approx", "Gamma_approx", "delta_offset",
        ]),
    };
    let exact = exact_resonances(&zeros)?;
    let approx = if method != Method::Exact { approx_resonances(&zeros)? } else { Vec::new() };
    for i in 0..zeros.len() {
        let mut row = vec![Value::Int(zeros[i].index as u64), Value::Float(zeros[i].u)];
        if method != Method::Approx {
            row.push(Value::Float(exact[i].energy));
            row.push(Value::Float(exact[i].width));
        }
        if method != Method::Exact {
            row.push(Value::Float(approx[i].energy));
            row.push(Value::Float(approx[i].width));
            row.push(Value::Float(approx[i].phase_offset.unwrap_or(f64::NAN)));
        }
        table.push(row);
    }
    Ok(render(
        &table,
        format,
        "resonances",
        json!({ "method": method.as_str(), "count": count, "tol": tol }),
    ))
}

pub fn run_phase(
    e_min: f64,
    e_max: f64,
    samples: usize,
    format: Format,
) -> Result<String, CliError> {
    if !(e_min > 0.25 && e_min < e_max) {
        return Err(CliError::Usage(format!(
            "need 1/4 < --e-min < --e-max, got [{e_min}, {e_max}]"
        )));
    }
    if samples < 2 {
        return Err(CliError::Usage(format!("--samples must be >= 2, got {samples}")));
    }
    let scan = phase_scan(e_min, e_max, samples)?;
    let mut table = Table::new(vec!["E", "p", "delta", "re_S", "im_S"]);
    for s in &scan {
        table.push(vec![
            Value::Float(s.energy),
            Value::Float(s.momentum),
            Value::Float(s.delta),
            Value::Float(s.s_value.re),
            Value::Float(s.s_value.im),
        ]);
    }
    Ok(render(
        &table,
        format,
        "phase",
        json!({ "e_min": e_min, "e_max": e_max, "samples": samples }),
    ))
}

#[allow(clippy::too_many_arguments)]
pub fn run_wave(
    momentum: f64,
    x_min: f64,
    x_max: f64,
    nx: usize,
    y_tilde_min: f64,
    y_tilde_max: f64,
    ny: usize,
    tol: Option<f64>,
    format: Format,
) -> Result<String, CliError> {
    if !(momentum > 0.0) {
        return Err(CliError::Usage(format!("--momentum must be positive, got {momentum}")));
    }
    if !(x_min < x_max) || !(y_tilde_min < y_tilde_max) {
        return Err(CliError::Usage("grid bounds must be increasing".into()));
    }
    if nx < 2 || ny < 2 {
        return Err(CliError::Usage("grid needs at least 2 points per axis".into()));
    }
    let mut trunc = TruncationSpec::default();
    if let Some(tol) = tol {
        trunc = TruncationSpec::new(tol, trunc.l_min, trunc.l_max_cap)
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let ctx = WaveContext::new(momentum, trunc)?;
    let mut table = Table::new(vec!["x", "y_tilde", "re_psi", "im_psi", "modes_used"]);
    for j in 0..ny {
        let yt = y_tilde_min + (y_tilde_max - y_tilde_min) * j as f64 / (ny - 1) as f64;
        for i in 0..nx {
            let x = x_min + (x_max - x_min) * i as f64 / (nx - 1) as f64;
            let sample = ctx.evaluate(HalfPlanePoint::new(x, yt))?;
            table.push(vec![
                Value::Float(x),
                Value::Float(yt),
                Value::Float(sample.psi.re),
                Value::Float(sample.psi.im),
                Value::Int(sample.modes_used as u64),
            ]);
        }
    }
    Ok(render(
        &table,
        format,
        "wave",
        json!({
            "momentum": momentum,
            "x_min": x_min, "x_max": x_max, "nx": nx,
            "y_tilde_min": y_tilde_min, "y_tilde_max": y_tilde_max, "ny": ny,
            "tail_tol": trunc.tail_tol,
        }),
    ))
}

/// Run the invariant suites; returns (report text, all passed).
pub fn run_verify() -> (String, bool) {
    let outcomes = verify::run_all();
    let mut out = String::new();
    let mut passed = 0;
    for o in &outcomes {
        if o.passed {
            passed += 1;
            out.push_str(&format!("PASS {} ({})\n", o.name, o.detail));
        } else {
            out.push_str(&format!("FAIL {} ({})\n", o.name, o.detail));
        }
    }
    out.push_str(&format!("passed {passed}/{} checks\n", outcomes.len()));
    (out, passed == outcomes.len())
}

fn render(table: &Table, format: Format, command: &str, params: serde_json::Value) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(command, params),
    }
}

/// Write the rendered output, then optionally a plot script next to it.
pub fn deliver(
    text: &str,
    output: Option<&Path>,
    plot: Option<(&PathBuf, PlotKind, Format)>,
) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Compute(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    if let Some((script_path, kind, format)) = plot {
        let data_path = output.ok_or_else(|| {
            CliError::Usage("--plot-script needs --output so the script has a data file".into())
        })?;
        if format != Format::Csv {
            return Err(CliError::Usage("--plot-script requires --format csv".into()));
        }
        let script = emit_plot_script(data_path, kind).map_err(|e| CliError::Compute(e.to_string()))?;
        std::fs::write(script_path, script).map_err(|e| {
            CliError::Compute(format!("cannot write {}: {e}", script_path.display()))
        })?;
    }
    Ok(())
}
