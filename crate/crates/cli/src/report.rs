//! Analysis orchestration and the report schema emitted on stdout.
//!
//! The JSON field set is part of the tool's contract and is exercised by
//! golden-file tests; every field is always serialized (absent values are
//! `null`). Timing values vary run to run and are excluded from any
//! determinism expectations.

use std::time::Instant;

use powermat::{
    classifier, classify, fixed_point_residual, iterate, matrix, AnalyticVerdict,
    ComplexMatrix, ConditionDiagnostics, Error, IterationConfig, NumericVerdict,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input_digest: String,
    pub normalization: NormalizationDto,
    pub analytic: AnalyticDto,
    pub numeric: NumericDto,
    pub agreement: bool,
    pub limit_summary: Option<LimitSummaryDto>,
    pub timings: TimingsDto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationDto {
    pub column_sums: Vec<f64>,
    pub max_deviation: f64,
    pub min_modulus: f64,
    pub normalized: bool,
    pub all_nonzero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticDto {
    pub verdict: AnalyticVerdictDto,
    pub scope_reason: Option<String>,
    pub diagnostics: Option<DiagnosticsDto>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnalyticVerdictDto {
    NonzeroLimit,
    NoNonzeroLimit,
    OutOfScope,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "kebab-case")]
pub enum DiagnosticsDto {
    TwoByTwo {
        diagonal_positive_real: Vec<bool>,
        offdiag_product_positive: bool,
        offdiag_negative_real_present: bool,
        tolerance_used: f64,
    },
    General {
        diagonal_positive_real: Vec<bool>,
        offdiag_negative_real_present: bool,
        all_entries_positive_real: bool,
        tolerance_used: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericDto {
    pub verdict: NumericVerdictDto,
    pub iterations_used: u64,
    pub final_step_delta: Option<f64>,
    pub period_detected: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NumericVerdictDto {
    NonzeroLimit,
    ZeroLimit,
    Oscillates,
    Inconclusive,
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitSummaryDto {
    pub max_entry_modulus: f64,
    pub fixed_point_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingsDto {
    pub classify_seconds: f64,
    pub iterate_seconds: f64,
    pub total_seconds: f64,
}

impl AnalysisReport {
    /// True when the run should trip `--strict` (numeric side gave no
    /// usable verdict).
    pub fn strict_trip(&self) -> bool {
        matches!(
            self.numeric.verdict,
            NumericVerdictDto::Inconclusive | NumericVerdictDto::Overflow
        )
    }
}

/// Runs the full analysis pipeline on one matrix. Only iteration-config
/// problems surface as errors; verdict-level outcomes (including overflow)
/// are reported in-band.
pub fn analyze(
    m: &ComplexMatrix,
    input_digest: String,
    cfg: &IterationConfig,
) -> Result<AnalysisReport, Error> {
    cfg.validate()?;
    let started = Instant::now();

    let normalization = m.validate_normalized(
        matrix::DEFAULT_NORMALIZATION_TOL,
        matrix::DEFAULT_ZERO_ENTRY_THRESHOLD,
    );

    let classify_started = Instant::now();
    let analytic = classify(m, classifier::DEFAULT_TOL);
    let classify_seconds = classify_started.elapsed().as_secs_f64();

    let iterate_started = Instant::now();
    let iteration = iterate(m, cfg);
    let iterate_seconds = iterate_started.elapsed().as_secs_f64();

    let (numeric, limit_summary) = match iteration {
        Ok(v) => {
            let limit_summary = v.limit.as_ref().map(|limit| LimitSummaryDto {
                max_entry_modulus: limit.max_entry_modulus(),
                fixed_point_residual: fixed_point_residual(limit, m)
                    .expect("limit has the input's dimension"),
            });
            let numeric = NumericDto {
                verdict: match v.verdict {
                    NumericVerdict::NonzeroLimit => NumericVerdictDto::NonzeroLimit,
                    NumericVerdict::ZeroLimit => NumericVerdictDto::ZeroLimit,
                    NumericVerdict::Oscillates => NumericVerdictDto::Oscillates,
                    NumericVerdict::Inconclusive => NumericVerdictDto::Inconclusive,
                },
                iterations_used: v.iterations_used,
                final_step_delta: Some(v.final_step_delta),
                period_detected: v.period_detected,
            };
            (numeric, limit_summary)
        }
        Err(Error::Overflow { steps }) => (
            NumericDto {
                verdict: NumericVerdictDto::Overflow,
                iterations_used: steps,
                final_step_delta: None,
                period_detected: None,
            },
            None,
        ),
        Err(other) => return Err(other),
    };

    let analytic_nonzero = analytic.verdict == AnalyticVerdict::NonzeroLimit;
    let numeric_nonzero = numeric.verdict == NumericVerdictDto::NonzeroLimit;
    let agreement = if matches!(
        numeric.verdict,
        NumericVerdictDto::Inconclusive | NumericVerdictDto::Overflow
    ) {
        false
    } else {
        analytic_nonzero == numeric_nonzero
    };

    Ok(AnalysisReport {
        input_digest,
        normalization: NormalizationDto {
            column_sums: normalization.column_sums,
            max_deviation: normalization.max_deviation,
            min_modulus: normalization.min_modulus,
            normalized: normalization.normalized,
            all_nonzero: normalization.all_nonzero,
        },
        analytic: AnalyticDto {
            verdict: match analytic.verdict {
                AnalyticVerdict::NonzeroLimit => AnalyticVerdictDto::NonzeroLimit,
                AnalyticVerdict::NoNonzeroLimit => AnalyticVerdictDto::NoNonzeroLimit,
                AnalyticVerdict::OutOfScope => AnalyticVerdictDto::OutOfScope,
            },
            scope_reason: analytic.scope_reason,
            diagnostics: analytic.diagnostics.map(|d| match d {
                ConditionDiagnostics::TwoByTwo {
                    diagonal_positive_real,
                    offdiag_product_positive,
                    offdiag_negative_real_present,
                    tolerance_used,
                } => DiagnosticsDto::TwoByTwo {
                    diagonal_positive_real,
                    offdiag_product_positive,
                    offdiag_negative_real_present,
                    tolerance_used,
                },
                ConditionDiagnostics::General {
                    diagonal_positive_real,
                    offdiag_negative_real_present,
                    all_entries_positive_real,
                    tolerance_used,
                } => DiagnosticsDto::General {
                    diagonal_positive_real,
                    offdiag_negative_real_present,
                    all_entries_positive_real,
                    tolerance_used,
                },
            }),
        },
        numeric,
        agreement,
        limit_summary,
        timings: TimingsDto {
            classify_seconds,
            iterate_seconds,
            total_seconds: started.elapsed().as_secs_f64(),
        },
    })
}

fn verdict_name(v: AnalyticVerdictDto) -> &'static str {
    match v {
        AnalyticVerdictDto::NonzeroLimit => "nonzero-limit",
        AnalyticVerdictDto::NoNonzeroLimit => "no-nonzero-limit",
        AnalyticVerdictDto::OutOfScope => "out-of-scope",
    }
}

fn numeric_name(v: NumericVerdictDto) -> &'static str {
    match v {
        NumericVerdictDto::NonzeroLimit => "nonzero-limit",
        NumericVerdictDto::ZeroLimit => "zero-limit",
        NumericVerdictDto::Oscillates => "oscillates",
        NumericVerdictDto::Inconclusive => "inconclusive",
        NumericVerdictDto::Overflow => "overflow",
    }
}

/// Human-readable rendering of a report.
pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("input:            {}", r.input_digest));
    line(format!("dimension:        {}", r.normalization.column_sums.len()));
    line(format!(
        "normalized:       {} (max column-sum deviation {:.3e}, min entry modulus {:.3e})",
        if r.normalization.normalized { "yes" } else { "no" },
        r.normalization.max_deviation,
        r.normalization.min_modulus,
    ));
    line(format!("analytic verdict: {}", verdict_name(r.analytic.verdict)));
    if let Some(reason) = &r.analytic.scope_reason {
        line(format!("  reason:         {reason}"));
    }
    let mut numeric = format!(
        "numeric verdict:  {} (power index {}",
        numeric_name(r.numeric.verdict),
        r.numeric.iterations_used
    );
    if let Some(delta) = r.numeric.final_step_delta {
        numeric.push_str(&format!(", final step delta {delta:.3e}"));
    }
    if let Some(p) = r.numeric.period_detected {
        numeric.push_str(&format!(", period {p}"));
    }
    numeric.push(')');
    line(numeric);
    line(format!("agreement:        {}", if r.agreement { "yes" } else { "no" }));
    match &r.limit_summary {
        Some(s) => line(format!(
            "limit:            max entry modulus {:.6}, fixed-point residual {:.3e}",
            s.max_entry_modulus, s.fixed_point_residual
        )),
        None => line("limit:            none".to_string()),
    }
    line(format!(
        "timings:          classify {:.1}us, iterate {:.1}us, total {:.1}us",
        r.timings.classify_seconds * 1e6,
        r.timings.iterate_seconds * 1e6,
        r.timings.total_seconds * 1e6,
    ));
    out
}
