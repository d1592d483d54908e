//! Report envelopes and their text renderings. JSON output is the
//! pretty-printed serde form plus a trailing newline, so identical runs
//! produce identical bytes.

use gact_core::catalog::CatalogReport;
use gact_core::filtertop::{OpennessReport, OpennessVerdict, SeparationReport};
use gact_core::sets::KSetSpec;
use gact_core::special::SequenceFile;
use gact_core::zariski::{DiscretenessReport, PsiValueRecord, Summary, TruncationParams};
use serde::Serialize;

#[derive(Serialize)]
pub struct AnalyzeOutput {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    pub seed: u64,
    pub report: DiscretenessReport,
}

#[derive(Serialize)]
pub struct SpecialOutput {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    pub seed: u64,
    pub base_point: i64,
    pub search_window: (i64, i64),
    pub sequence: SequenceFile,
}

#[derive(Serialize)]
pub struct OpenOutput {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    pub seed: u64,
    pub set: KSetSpec,
    pub sequence_points: Vec<i64>,
    pub report: OpennessReport,
}

#[derive(Serialize)]
pub struct SeparateOutput {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    pub seed: u64,
    pub depth: usize,
    pub seeds: (KSetSpec, KSetSpec),
    pub sequence_points: Vec<i64>,
    pub report: SeparationReport,
}

#[derive(Serialize)]
pub struct CatalogOutput {
    pub command: &'static str,
    pub scenarios: Vec<CatalogReport>,
    pub all_pass: bool,
}

fn params_line(p: &TruncationParams) -> String {
    format!(
        "carrier {} | generators {} | closure {}{} | word len {} | constants {} | subbase {}",
        p.carrier,
        p.generator_count,
        p.closure_size,
        if p.closure_complete {
            " (complete)"
        } else {
            " (truncated)"
        },
        p.max_word_len,
        p.const_window.len(),
        p.subbase_size,
    )
}

pub fn analyze_text(out: &AnalyzeOutput) -> String {
    let mut lines = Vec::new();
    lines.push(format!(
        "analyze{}",
        out.scenario
            .as_deref()
            .map(|s| format!(" ({s})"))
            .unwrap_or_default()
    ));
    lines.push(params_line(&out.report.parameters));
    for record in &out.report.points {
        let cert = record
            .certificate
            .as_ref()
            .map(|tags| {
                tags.iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .unwrap_or_else(|| "-".into());
        let psi = match &record.psi.value {
            PsiValueRecord::Finite(k) => {
                format!(
                    "{k}{}",
                    if record.psi.exact {
                        ""
                    } else {
                        " (upper bound)"
                    }
                )
            }
            PsiValueRecord::Infinite(_) => "infinite".into(),
        };
        lines.push(format!(
            "point {:>4}: {} | psi {psi} | certificate [{cert}]",
            record.point,
            if record.isolated {
                "isolated"
            } else {
                "not isolated"
            },
        ));
    }
    lines.push(match &out.report.summary {
        Summary::DiscreteOnProbe => "summary: discrete on probe".into(),
        Summary::NonDiscreteWitness { point } => {
            format!("summary: non-discrete, witness {point}")
        }
    });
    lines.join("\n") + "\n"
}

pub fn special_text(out: &SpecialOutput) -> String {
    format!(
        "special sequence from {} ({} maps, {} points, window [{},{})):\n{:?}\nverified: {}{}\n",
        out.base_point,
        out.sequence.enumeration.len(),
        out.sequence.points.len(),
        out.search_window.0,
        out.search_window.1,
        out.sequence.points,
        out.sequence.verified,
        if out.sequence.constraints_padded {
            " (sequence longer than the enumeration; missing constraints are vacuous)"
        } else {
            ""
        },
    )
}

pub fn open_text(out: &OpenOutput) -> String {
    let verdict = match &out.report.verdict {
        OpennessVerdict::Open { checked_maps } => {
            format!("open (checked {checked_maps} maps)")
        }
        OpennessVerdict::NotOpen { map_index, trace } => format!(
            "not open: map {map_index} pulls the set back to the trace {:?}",
            KSetSpec::of(trace).points
        ),
        OpennessVerdict::Indeterminate { reason } => format!("indeterminate: {reason}"),
    };
    format!(
        "open? {} over a {}-point sequence: {verdict}\n",
        serde_json::to_string(&out.set).unwrap(),
        out.sequence_points.len(),
    )
}

pub fn separate_text(out: &SeparateOutput) -> String {
    let mut lines = vec![format!(
        "separate to depth {}: {}",
        out.depth,
        if out.report.disjoint {
            "chains stay disjoint"
        } else {
            "chains collide"
        }
    )];
    for warning in &out.report.warnings {
        lines.push(format!("warning: {warning}"));
    }
    for (i, (a, b)) in out
        .report
        .a_chain
        .iter()
        .zip(&out.report.b_chain)
        .enumerate()
    {
        lines.push(format!(
            "depth {i}: |a| = {:?}, |b| = {:?}",
            KSetSpec::of(a).points.len(),
            KSetSpec::of(b).points.len(),
        ));
    }
    lines.join("\n") + "\n"
}

pub fn catalog_text(out: &CatalogOutput) -> String {
    let mut lines = Vec::new();
    for report in &out.scenarios {
        lines.push(format!(
            "scenario {}: {}",
            report.scenario,
            if report.all_pass { "pass" } else { "FAIL" }
        ));
        lines.push(format!("  {}", params_line(&report.parameters)));
        for check in &report.checks {
            lines.push(format!(
                "  [{}] {} - {}{}",
                if check.pass { "ok" } else { "XX" },
                check.name,
                check.note,
                if check.detail.is_empty() {
                    String::new()
                } else {
                    format!(" ({})", check.detail)
                }
            ));
        }
    }
    lines.push(format!(
        "catalog: {}",
        if out.all_pass {
            "all expectations match"
        } else {
            "MISMATCHES"
        }
    ));
    lines.join("\n") + "\n"
}
