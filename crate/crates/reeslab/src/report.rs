//! Analysis orchestration and deterministic report emission.
//!
//! The JSON form is canonical: keys sorted, seed and version stamped, no
//! wall-clock data, so identical input plus identical seed gives
//! byte-identical output.

use crate::bourbaki::{self, BourbakiMode};
use crate::checker::{self, Status, TheoremReport};
use crate::config::{Budget, Config};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::input::InputSpec;
use crate::modlib::{self, PresentedModule};
use crate::rees::{self, CmReport, ReductionNumber};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, Serialize)]
pub struct BourbakiSummary {
    pub height: i64,
    pub mode: String,
    pub seed: u64,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Invariants {
    pub rank: usize,
    pub mu: usize,
    pub depth_of_powers: BTreeMap<u32, i64>,
    pub analytic_spread: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction_number: Option<ReductionNumber>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction_number_error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bourbaki: Option<BourbakiSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bourbaki_error: Option<String>,
    pub linear_type: bool,
    pub rees_cm: CmReport,
    pub dim_rees: i64,
    /// l(E) <= d + e - 1, asserted on every non-free torsion-free module.
    pub spread_bound_holds: bool,
    /// dim R(E) = d + e, asserted on every torsion-free module.
    pub dim_rees_expected: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Environment {
    pub field: String,
    pub seed: u64,
    pub budget: Budget,
    pub version: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub invariants: Invariants,
    pub theorem_reports: Vec<TheoremReport>,
    pub environment: Environment,
}

impl AnalysisReport {
    /// True when some pipeline saw every hypothesis hold while the direct
    /// verification contradicted the claimed conclusion.
    pub fn soundness_violation(&self) -> bool {
        self.theorem_reports.iter().any(|t| !t.consistent)
    }
}

pub fn field_name(f: &FieldSpec) -> String {
    match f {
        FieldSpec::Rationals => "q".into(),
        FieldSpec::PrimeField(p) => format!("zmod {p}"),
    }
}

#[derive(Debug, Clone, Default)]
pub struct AnalyzeFlags {
    /// Restrict to one pipeline: linear, cm, minrank, cm2 or cm3.
    pub theorem: Option<String>,
    pub seed: Option<u64>,
    pub mode: Option<BourbakiMode>,
}

fn mode_name(mode: BourbakiMode) -> &'static str {
    match mode {
        BourbakiMode::Symbolic => "symbolic",
        BourbakiMode::Random => "random",
    }
}

fn bourbaki_summary(
    e: &PresentedModule,
    u: Option<&[usize]>,
    mode: BourbakiMode,
    config: &Config,
    budget: &Budget,
) -> (Option<BourbakiSummary>, Option<String>) {
    match bourbaki::generic_bourbaki(e, u, mode, config, budget) {
        Ok(b) => {
            let gens = b.ideal.gens.iter().map(|g| g.render()).collect();
            (
                Some(BourbakiSummary {
                    height: b.height,
                    mode: mode_name(b.mode).into(),
                    seed: b.seed,
                    generators: gens,
                }),
                None,
            )
        }
        Err(err) => (None, Some(err.to_string())),
    }
}

/// Run the full analysis: invariants plus the requested theorem pipelines.
pub fn analyze(spec: &InputSpec, flags: &AnalyzeFlags) -> Result<AnalysisReport> {
    let mut config = spec.config.clone();
    if let Some(seed) = flags.seed {
        config.seed = seed;
    }
    let budget = config.budget.clone();
    let mode = flags.mode.unwrap_or(spec.bourbaki_mode);
    let e = spec.build_module(&budget)?;
    let d = e.ring.nvars() as i64;
    let rank = modlib::module_rank(&e)?;
    let mu = modlib::minimal_generators(&e);
    let package = rees::rees_algebra(&e, &budget)?;
    let spread = rees::analytic_spread(&package, &budget)?;
    let linear_type = rees::is_linear_type(&package, &budget)?;
    let cm = rees::rees_cm_test(&package, &budget)?;
    let dim_rees = cm.dim;

    let n_max = ((spread - rank as i64).max(1) as u32).min(4);
    let mut depth_of_powers = BTreeMap::new();
    for n in 1..=n_max {
        let en = rees::power_component(&package, n, &budget)?;
        depth_of_powers.insert(n, modlib::depth(&en, &budget)?);
    }

    let (reduction_number, reduction_number_error) =
        match rees::reduction_number(&package, &config, &budget) {
            Ok(r) => (Some(r), None),
            Err(err) => (None, Some(err.to_string())),
        };

    let (bourbaki, bourbaki_error) =
        bourbaki_summary(&e, spec.submodule_u.as_deref(), mode, &config, &budget);

    let torsion_free = modlib::is_torsion_free(&e, &budget)?;
    let free = modlib::minimal_presentation(&e).phi.cols == 0;
    let spread_bound_holds = free || !torsion_free || spread <= d + rank as i64 - 1;
    let dim_rees_expected = !torsion_free || dim_rees == d + rank as i64;

    let s_for_corollaries = reduction_number
        .as_ref()
        .map(|r| (r.value as i64).max(1))
        .unwrap_or(1);
    let mut theorem_reports = vec![];
    let wanted: Vec<&str> = match flags.theorem.as_deref() {
        Some(t) => vec![t],
        None => {
            let mut all = vec!["linear", "cm", "minrank"];
            if spec.submodule_u.is_some() {
                all.push("cm2");
            }
            all.push("cm3");
            all
        }
    };
    for t in wanted {
        let report = match t {
            "linear" => checker::check_theorem_linear(&e, &config, &budget)?,
            "cm" => checker::check_theorem_cm(&e, &config, &budget)?,
            "minrank" => checker::check_prop_minrank(&e, &config, &budget)?,
            "cm2" => {
                let u = spec.submodule_u.as_deref().ok_or_else(|| {
                    Error::Input("the cm2 pipeline needs a submodule_U line".into())
                })?;
                checker::check_cor_cm2(&e, u, s_for_corollaries, &config, &budget)?
            }
            "cm3" => checker::check_cor_cm3(&e, s_for_corollaries, &config, &budget)?,
            other => {
                return Err(Error::Input(format!(
                    "unknown theorem `{other}`; expected linear, cm, minrank, cm2 or cm3"
                )))
            }
        };
        theorem_reports.push(report);
    }

    Ok(AnalysisReport {
        invariants: Invariants {
            rank,
            mu,
            depth_of_powers,
            analytic_spread: spread,
            reduction_number,
            reduction_number_error,
            bourbaki,
            bourbaki_error,
            linear_type,
            rees_cm: cm,
            dim_rees,
            spread_bound_holds,
            dim_rees_expected,
        },
        theorem_reports,
        environment: Environment {
            field: field_name(&spec.ring.field),
            seed: config.seed,
            budget,
            version: env!("CARGO_PKG_VERSION").into(),
        },
    })
}

/// Canonical JSON: route through `serde_json::Value`, whose object maps
/// are ordered, so key order never depends on struct layout.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)
        .map_err(|e| Error::Input(format!("serialization failed: {e}")))?;
    let mut s = serde_json::to_string_pretty(&v)
        .map_err(|e| Error::Input(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn glyph(status: Status) -> &'static str {
    match status {
        Status::Holds => "ok",
        Status::Fails => "XX",
        Status::ProbabilisticHolds => "p?",
        Status::NotComputable => "--",
    }
}

pub fn render_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let inv = &report.invariants;
    let env = &report.environment;
    let _ = writeln!(out, "reeslab analysis (field {}, seed {})", env.field, env.seed);
    let _ = writeln!(out, "  rank e = {}   mu = {}", inv.rank, inv.mu);
    let depths: Vec<String> = inv
        .depth_of_powers
        .iter()
        .map(|(n, d)| format!("depth E^{n} = {d}"))
        .collect();
    let _ = writeln!(out, "  {}", depths.join("   "));
    let _ = writeln!(
        out,
        "  analytic spread l = {}   dim R(E) = {}",
        inv.analytic_spread, inv.dim_rees
    );
    match (&inv.reduction_number, &inv.reduction_number_error) {
        (Some(r), _) => {
            let _ = writeln!(
                out,
                "  reduction number r = {} ({}, seed {})",
                r.value, r.status, r.seed
            );
        }
        (None, Some(e)) => {
            let _ = writeln!(out, "  reduction number: not computable ({e})");
        }
        _ => {}
    }
    match (&inv.bourbaki, &inv.bourbaki_error) {
        (Some(b), _) => {
            let _ = writeln!(
                out,
                "  bourbaki ideal: height {} ({} mode, seed {})",
                b.height, b.mode, b.seed
            );
        }
        (None, Some(e)) => {
            let _ = writeln!(out, "  bourbaki ideal: not computable ({e})");
        }
        _ => {}
    }
    let _ = writeln!(
        out,
        "  linear type: {}   R(E) Cohen-Macaulay: {} (depth {}, dim {})",
        inv.linear_type, inv.rees_cm.is_cm, inv.rees_cm.depth, inv.rees_cm.dim
    );
    for t in &report.theorem_reports {
        let verdict = if !t.consistent {
            "INCONSISTENT"
        } else if t.all_hypotheses_hold {
            "hypotheses hold, conclusion verified"
        } else {
            "hypotheses incomplete"
        };
        let _ = writeln!(out, "\ntheorem {}: {}", t.theorem_id, verdict);
        for h in &t.hypotheses {
            let w = h
                .witness
                .as_ref()
                .map(|w| format!("  ({w})"))
                .unwrap_or_default();
            let _ = writeln!(out, "  [{}] {}{}", glyph(h.status), h.name, w);
        }
        let _ = writeln!(
            out,
            "  direct: linear type {}, CM {} (depth {}, dim {})",
            t.direct_verification.linear_type,
            t.direct_verification.cm.is_cm,
            t.direct_verification.cm.depth,
            t.direct_verification.cm.dim
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::parse_input;

    const EXAMPLE: &str = "\
ring {
  vars = x y z
}
module {
  kind = direct_sum_of_ideals
  ideal = x^2, x*y
  ideal = y, z
}
";

    #[test]
    fn example_report_invariants() {
        let spec = parse_input(EXAMPLE).unwrap();
        let flags = AnalyzeFlags {
            theorem: Some("linear".into()),
            ..Default::default()
        };
        let report = analyze(&spec, &flags).unwrap();
        let inv = &report.invariants;
        assert_eq!(inv.rank, 2);
        assert_eq!(inv.mu, 4);
        assert_eq!(inv.analytic_spread, 4);
        assert_eq!(inv.depth_of_powers.get(&1), Some(&2));
        assert!(inv.linear_type);
        assert!(inv.rees_cm.is_cm);
        assert_eq!(inv.dim_rees, 5);
        assert!(inv.spread_bound_holds);
        assert!(inv.dim_rees_expected);
        assert!(!report.soundness_violation());
    }

    #[test]
    fn json_is_byte_deterministic() {
        let spec = parse_input(EXAMPLE).unwrap();
        let flags = AnalyzeFlags {
            theorem: Some("minrank".into()),
            ..Default::default()
        };
        let a = to_canonical_json(&analyze(&spec, &flags).unwrap()).unwrap();
        let b = to_canonical_json(&analyze(&spec, &flags).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"probabilistic\""));
    }

    #[test]
    fn free_module_trivial_report() {
        let text = "\
ring {
  vars = x y
}
module {
  kind = presentation
  twists = 2 2
}
";
        // a presentation with zero relations is the free module
        let spec = parse_input(text).unwrap();
        let report = analyze(&spec, &AnalyzeFlags::default()).unwrap();
        assert_eq!(report.invariants.rank, 2);
        assert!(report.invariants.linear_type);
        assert!(!report.soundness_violation());
    }

    #[test]
    fn text_rendering_mentions_verdicts() {
        let spec = parse_input(EXAMPLE).unwrap();
        let flags = AnalyzeFlags {
            theorem: Some("minrank".into()),
            ..Default::default()
        };
        let report = analyze(&spec, &flags).unwrap();
        let text = render_text(&report);
        assert!(text.contains("theorem minrank"));
        assert!(text.contains("analytic spread l = 4"));
    }
}
