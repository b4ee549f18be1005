//! Pipeline driver and report formats for the `psolve` binary.
//!
//! [`run_pipeline`] wires the stages together: parse the ODE, search for
//! Darboux polynomials (merging caller hints after certification), try the
//! elementary branch, fall through to the Liouvillian branch when needed,
//! then verify. [`emit_report`] renders the result either as a
//! human-readable summary or as a JSON object with stable key order and
//! all polynomials in canonical text form.

use psolve::arith::{parse_rational, Rational};
use psolve::darboux::{find_darboux, DarbouxPair, VectorField};
use psolve::parse::{parse_ode, parse_poly, ParseError};
use psolve::psengine::{solve_elementary, solve_liouvillian, IntegratingFactor};
use psolve::verify::{numeric_drift, verify_symbolic, NumericCheckConfig};
use serde::Serialize;
use std::time::Instant;
use thiserror::Error;

pub const DEFAULT_DEGREE_BOUND: u32 = 3;
pub const DEFAULT_NUM_DEGREE_BOUND: u32 = 4;
pub const DEFAULT_MULT_BOUND: u32 = 2;

/// Everything the pipeline needs for one run.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub ode_text: String,
    pub degree_bound: u32,
    pub num_degree_bound: u32,
    pub mult_bound: u32,
    pub hints: Vec<String>,
    pub force_liouvillian: bool,
    pub numeric: Option<NumericWindow>,
}

impl PipelineConfig {
    pub fn new(ode_text: impl Into<String>) -> Self {
        PipelineConfig {
            ode_text: ode_text.into(),
            degree_bound: DEFAULT_DEGREE_BOUND,
            num_degree_bound: DEFAULT_NUM_DEGREE_BOUND,
            mult_bound: DEFAULT_MULT_BOUND,
            hints: Vec::new(),
            force_liouvillian: false,
            numeric: None,
        }
    }
}

/// Trajectory window for `--numeric`.
#[derive(Debug, Clone)]
pub struct NumericWindow {
    pub x_start: Rational,
    pub y_start: Rational,
    pub x_end: Rational,
    pub step: Rational,
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("hint '{hint}' rejected: {reason}")]
    RejectedHint { hint: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchStatus {
    Found,
    NoSolution,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct OdeReport {
    pub source: String,
    pub m: String,
    pub n: String,
    pub common_factor_reduced: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DarbouxReport {
    pub poly: String,
    pub cofactor: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchReport {
    pub status: BranchStatus,
    /// `[polynomial, exponent]` pairs in canonical text.
    pub factors: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LiouvillianReport {
    pub status: BranchStatus,
    pub r0: Option<String>,
    pub factors: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    /// "pass" / "fail"; `null` when no factor was found.
    pub symbolic: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric_drift: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric_error: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Timings {
    pub parse_ms: u64,
    pub darboux_ms: u64,
    pub elementary_ms: u64,
    pub liouvillian_ms: u64,
    pub verify_ms: u64,
    pub numeric_ms: u64,
}

/// Full machine-readable record of one pipeline run.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub ode: OdeReport,
    pub degree_bound: u32,
    pub num_degree_bound: u32,
    pub mult_bound: u32,
    pub darboux: Vec<DarbouxReport>,
    pub elementary: BranchReport,
    pub liouvillian: LiouvillianReport,
    pub verification: VerificationReport,
    pub timings: Timings,
}

impl RunReport {
    pub fn found(&self) -> bool {
        self.elementary.status == BranchStatus::Found
            || self.liouvillian.status == BranchStatus::Found
    }
}

fn factor_strings(factor: &IntegratingFactor) -> Vec<(String, String)> {
    factor
        .factors
        .iter()
        .map(|(p, c)| (p.to_string(), c.to_string()))
        .collect()
}

/// Parse, search, solve, verify; assemble the report.
pub fn run_pipeline(cfg: &PipelineConfig) -> Result<RunReport, PipelineError> {
    let mut timings = Timings::default();

    let t = Instant::now();
    let ode = parse_ode(&cfg.ode_text)?;
    timings.parse_ms = t.elapsed().as_millis() as u64;
    let vf = VectorField::from_ode(&ode);

    let t = Instant::now();
    let mut pairs = find_darboux(&vf, cfg.degree_bound);
    for hint in &cfg.hints {
        let poly = parse_poly(hint).map_err(|e| PipelineError::RejectedHint {
            hint: hint.clone(),
            reason: e.to_string(),
        })?;
        let monic = poly.monic();
        let cofactor = vf
            .cofactor(&monic)
            .map_err(|e| PipelineError::RejectedHint {
                hint: hint.clone(),
                reason: e.to_string(),
            })?;
        if !pairs.iter().any(|p| p.poly == monic) {
            pairs.push(DarbouxPair { poly: monic, cofactor });
        }
    }
    pairs.sort_by_key(|p| (p.poly.total_degree().unwrap_or(0), p.poly.clone()));
    timings.darboux_ms = t.elapsed().as_millis() as u64;

    let t = Instant::now();
    let elementary = solve_elementary(&vf, &pairs);
    timings.elementary_ms = t.elapsed().as_millis() as u64;

    let run_liouvillian = elementary.is_none() || cfg.force_liouvillian;
    let t = Instant::now();
    let liouvillian = if run_liouvillian {
        Some(solve_liouvillian(
            &vf,
            &pairs,
            cfg.num_degree_bound,
            cfg.mult_bound,
        ))
    } else {
        None
    };
    timings.liouvillian_ms = t.elapsed().as_millis() as u64;

    let final_factor: Option<&IntegratingFactor> = match &liouvillian {
        Some(Some(found)) => Some(found),
        _ => elementary.as_ref(),
    };

    let t = Instant::now();
    let symbolic = final_factor.map(|f| verify_symbolic(&vf, f));
    timings.verify_ms = t.elapsed().as_millis() as u64;

    let mut numeric_drift_value = None;
    let mut numeric_error = None;
    if let (Some(window), Some(factor)) = (&cfg.numeric, final_factor) {
        let t = Instant::now();
        let check = NumericCheckConfig::new(
            window.x_start.clone(),
            window.y_start.clone(),
            window.x_end.clone(),
            window.step.clone(),
        );
        match numeric_drift(&vf, factor, &check) {
            Ok(drift) => numeric_drift_value = Some(drift),
            Err(e) => numeric_error = Some(e.to_string()),
        }
        timings.numeric_ms = t.elapsed().as_millis() as u64;
    }

    let report = RunReport {
        ode: OdeReport {
            source: ode.source_text.clone(),
            m: ode.m.to_string(),
            n: ode.n.to_string(),
            common_factor_reduced: ode.common_factor_reduced,
        },
        degree_bound: cfg.degree_bound,
        num_degree_bound: cfg.num_degree_bound,
        mult_bound: cfg.mult_bound,
        darboux: pairs
            .iter()
            .map(|p| DarbouxReport {
                poly: p.poly.to_string(),
                cofactor: p.cofactor.to_string(),
            })
            .collect(),
        elementary: BranchReport {
            status: match &elementary {
                Some(_) => BranchStatus::Found,
                None => BranchStatus::NoSolution,
            },
            factors: elementary.as_ref().map(factor_strings).unwrap_or_default(),
        },
        liouvillian: match &liouvillian {
            None => LiouvillianReport {
                status: BranchStatus::Skipped,
                r0: None,
                factors: Vec::new(),
            },
            Some(None) => LiouvillianReport {
                status: BranchStatus::NoSolution,
                r0: None,
                factors: Vec::new(),
            },
            Some(Some(found)) => LiouvillianReport {
                status: BranchStatus::Found,
                r0: Some(found.r0.to_string()),
                factors: factor_strings(found),
            },
        },
        verification: VerificationReport {
            symbolic: symbolic.map(|r| if r.pass { "pass".into() } else { "fail".into() }),
            numeric_drift: numeric_drift_value,
            numeric_error,
        },
        timings,
    };
    debug_assert!(
        report.liouvillian.status != BranchStatus::Found
            || report.verification.symbolic.as_deref() == Some("pass")
    );
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

/// Render `R = e^(r0) * (p1)^(c1) * ...` from the report fields.
fn render_r(r0: Option<&str>, factors: &[(String, String)]) -> String {
    let mut parts = Vec::new();
    if let Some(r0) = r0 {
        if r0 != "0" {
            parts.push(format!("e^({r0})"));
        }
    }
    for (poly, exp) in factors {
        parts.push(format!("({poly})^({exp})"));
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" * ")
    }
}

pub fn emit_report(report: &RunReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            serde_json::to_string_pretty(report).expect("report serializes")
        }
        ReportFormat::Text => {
            let mut out = String::new();
            let push = |out: &mut String, line: String| {
                out.push_str(&line);
                out.push('\n');
            };
            push(&mut out, format!("ode: {}", report.ode.source.trim()));
            push(&mut out, format!("  M = {}", report.ode.m));
            push(&mut out, format!("  N = {}", report.ode.n));
            if report.ode.common_factor_reduced {
                push(&mut out, "  (a common polynomial factor was cancelled)".into());
            }
            push(
                &mut out,
                format!("darboux polynomials (degree bound {}):", report.degree_bound),
            );
            if report.darboux.is_empty() {
                push(&mut out, "  none".into());
            }
            for d in &report.darboux {
                push(&mut out, format!("  {}    [cofactor {}]", d.poly, d.cofactor));
            }
            match report.elementary.status {
                BranchStatus::Found => {
                    push(&mut out, "elementary branch: found".into());
                    push(
                        &mut out,
                        format!("  R = {}", render_r(None, &report.elementary.factors)),
                    );
                }
                BranchStatus::NoSolution => {
                    push(&mut out, "elementary branch: no solution".into())
                }
                BranchStatus::Skipped => push(&mut out, "elementary branch: skipped".into()),
            }
            match report.liouvillian.status {
                BranchStatus::Found => {
                    push(&mut out, "liouvillian branch: found".into());
                    push(
                        &mut out,
                        format!(
                            "  R = {}",
                            render_r(
                                report.liouvillian.r0.as_deref(),
                                &report.liouvillian.factors
                            )
                        ),
                    );
                }
                BranchStatus::NoSolution => {
                    push(&mut out, "liouvillian branch: no solution".into())
                }
                BranchStatus::Skipped => push(&mut out, "liouvillian branch: skipped".into()),
            }
            match &report.verification.symbolic {
                Some(v) => push(&mut out, format!("verification: symbolic {v}")),
                None => push(&mut out, "verification: not run (nothing to verify)".into()),
            }
            if let Some(drift) = report.verification.numeric_drift {
                push(&mut out, format!("  numeric drift: {drift:.3e}"));
            }
            if let Some(err) = &report.verification.numeric_error {
                push(&mut out, format!("  numeric check failed: {err}"));
            }
            let t = &report.timings;
            push(
                &mut out,
                format!(
                    "timings: parse {} ms, darboux {} ms, elementary {} ms, liouvillian {} ms, verify {} ms",
                    t.parse_ms, t.darboux_ms, t.elementary_ms, t.liouvillian_ms, t.verify_ms
                ),
            );
            out
        }
    }
}

/// The bundled fixture corpus: one ODE per line, `#` comments allowed.
pub const FIXTURES: &str = include_str!("../fixtures/odes.txt");

/// Parse the fixture file format into ODE strings.
pub fn fixture_lines(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

/// Parse "x,y" into a rational point.
pub fn parse_point(text: &str) -> Option<(Rational, Rational)> {
    let (a, b) = text.split_once(',')?;
    Some((parse_rational(a)?, parse_rational(b)?))
}
