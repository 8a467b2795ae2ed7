//! Analysis orchestration: runs the chart, fundamental-form, osculation,
//! syzygy, Monge, and complete-intersection pipelines on a variety and
//! assembles one report that renders identically as text and as JSON.

use serde::Serialize;


use crate::osculate::{
    expected_dim_316, monge_quadrics, osculating_space, MongeReport, MongeVerdict, OsculateError,
};
use crate::quadsys::{prolongation, split_dims, thresholds, QuadricSystem, ThresholdReport};
use crate::rat::{binom, fmt_rat, Rat};
use crate::rng::SplitMix64;
use crate::variety::{
    adapt_at_point, ci_verdict, second_fundamental_forms, third_fundamental_form, CiReport,
    ParamVariety, VarietyError,
};

#[derive(Clone, Debug)]
pub struct AnalysisConfig {
    pub max_degree: u32,
    pub max_order: u32,
    pub run_monge: bool,
    pub run_ci: bool,
    pub seed: Option<u64>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            max_degree: 3,
            max_order: 7,
            run_monge: true,
            run_ci: true,
            seed: None,
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.max_degree < 1 {
            return Err("max degree must be at least 1".into());
        }
        if self.run_monge && self.max_order < 2 * self.max_degree + 1 {
            return Err(format!(
                "max order {} too small: need at least 2*D+1 = {} when Monge checks run",
                self.max_order,
                2 * self.max_degree + 1
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OscRow {
    pub degree: u32,
    pub order: u32,
    pub vector_dim: usize,
    pub projective_dim: i64,
    /// The fixed value of the dimension formula when order <= degree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_low_order: Option<usize>,
    /// The lower bound C(a+d-1, d) when order = 2d-1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<usize>,
    pub equality_flag: bool,
    pub stabilized: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FundSummary {
    pub ii_span_dim: usize,
    pub iii_dim: usize,
    pub iii_zero: bool,
    pub linear_syzygy_dim: usize,
    pub prolongation_dim: usize,
    pub multiplication_image_dim: usize,
    pub f3_zero: bool,
    pub f4_zero: bool,
    pub f5_zero: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub label: String,
    pub n: usize,
    pub a: usize,
    pub point: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub coord_degree: u32,
    pub chart_cap: u32,
    pub fundamental: FundSummary,
    pub osculation: Vec<OscRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monge: Option<MongeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci: Option<CiReport>,
    pub thresholds: ThresholdReport,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Osculate(#[from] OsculateError),
}

/// Draws a point with small-height rational coordinates such that the chart
/// adapts (smooth, on-chart); the attempt count is bounded.
pub fn random_point(v: &ParamVariety, seed: u64) -> Result<Vec<Rat>, VarietyError> {
    let mut rng = SplitMix64::new(seed);
    for _ in 0..64 {
        let t0: Vec<Rat> = (0..v.n).map(|_| rng.small_rat(3)).collect();
        if adapt_at_point(v, &t0, 2).is_ok() {
            return Ok(t0);
        }
    }
    Err(VarietyError::SingularPoint { got: 0, need: v.n })
}

pub fn analyze(
    v: &ParamVariety,
    t0: &[Rat],
    cfg: &AnalysisConfig,
) -> Result<AnalyzeReport, ReportError> {
    cfg.validate().map_err(ReportError::Config)?;
    let cap = cfg.max_order.max(if cfg.run_monge { 5 } else { 2 });
    let chart = adapt_at_point(v, t0, cap)?;
    let q = second_fundamental_forms(&chart);
    let sys = QuadricSystem::new(v.n, q);
    let iii = third_fundamental_form(&chart)?;
    let (img, ker) = split_dims(&sys);
    let f3_zero = chart.f.iter().all(|j| j.base().homogeneous_part(3).is_zero());
    let f4_zero = if cap >= 4 {
        chart.f.iter().all(|j| j.base().homogeneous_part(4).is_zero())
    } else {
        true
    };
    let f5_zero = if cap >= 5 {
        Some(chart.f.iter().all(|j| j.base().homogeneous_part(5).is_zero()))
    } else {
        None
    };
    let fundamental = FundSummary {
        ii_span_dim: sys.a(),
        iii_dim: iii.len(),
        iii_zero: iii.is_empty(),
        linear_syzygy_dim: ker,
        prolongation_dim: prolongation(&sys).len(),
        multiplication_image_dim: img,
        f3_zero,
        f4_zero,
        f5_zero,
    };

    let mut osculation = Vec::new();
    for d in 1..=cfg.max_degree {
        for k in 1..=cfg.max_order {
            let osc = osculating_space(&chart, d, k)?;
            let expected_low = if k <= d {
                Some(expected_dim_316(v.n, v.a, d, k).expect("k <= d"))
            } else {
                None
            };
            let lower = if k == 2 * d - 1 {
                Some(binom(v.a + d as usize - 1, d as usize))
            } else {
                None
            };
            let equality = expected_low.map(|e| e == osc.dim()).unwrap_or(false);
            osculation.push(OscRow {
                degree: d,
                order: k,
                vector_dim: osc.dim(),
                projective_dim: osc.dim() as i64 - 1,
                expected_low_order: expected_low,
                lower_bound: lower,
                equality_flag: equality,
                stabilized: osc.stabilized,
            });
        }
    }

    let monge = if cfg.run_monge {
        Some(monge_quadrics(&chart)?)
    } else {
        None
    };
    let ci = if cfg.run_ci {
        Some(ci_verdict(v, t0, cfg.max_degree)?)
    } else {
        None
    };
    let thr = thresholds(v.n as i64, v.a as i64, -1);
    Ok(AnalyzeReport {
        label: v.label.clone(),
        n: v.n,
        a: v.a,
        point: t0.iter().map(fmt_rat).collect(),
        seed: cfg.seed,
        coord_degree: v.coord_degree(),
        chart_cap: cap,
        fundamental,
        osculation,
        monge,
        ci,
        thresholds: thr,
    })
}

// ---------------------------------------------------------------------------
// Text rendering
// ---------------------------------------------------------------------------

pub fn render_text(r: &AnalyzeReport) -> String {
    let mut out = String::new();
    let push = |out: &mut String, s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    push(&mut out, format!("variety {}  (n = {}, a = {}, ambient P^{})", r.label, r.n, r.a, r.n + r.a));
    push(&mut out, format!("point   [{}]{}", r.point.join(", "),
        r.seed.map(|s| format!("  (seed {s})")).unwrap_or_default()));
    push(&mut out, format!("chart   coord degree {}, jet cap {}", r.coord_degree, r.chart_cap));
    let f = &r.fundamental;
    push(&mut out, String::new());
    push(&mut out, format!(
        "II span {} | III dim {} ({}) | linear syzygies {} | prolongation {} | image {}",
        f.ii_span_dim,
        f.iii_dim,
        if f.iii_zero { "zero" } else { "nonzero" },
        f.linear_syzygy_dim,
        f.prolongation_dim,
        f.multiplication_image_dim
    ));
    push(&mut out, format!(
        "higher variations: F3 {} F4 {} F5 {}",
        if f.f3_zero { "= 0" } else { "!= 0" },
        if f.f4_zero { "= 0" } else { "!= 0" },
        match f.f5_zero {
            Some(true) => "= 0",
            Some(false) => "!= 0",
            None => "(n/a)",
        }
    ));
    push(&mut out, String::new());
    push(&mut out, "osculating spaces (vector dim / projective dim):".to_string());
    push(&mut out, "  d  k   dim  proj  expected  lower-bound  flags".to_string());
    for row in &r.osculation {
        push(&mut out, format!(
            "  {}  {}  {:4}  {:4}  {:>8}  {:>11}  {}{}",
            row.degree,
            row.order,
            row.vector_dim,
            row.projective_dim,
            row.expected_low_order.map(|e| e.to_string()).unwrap_or_else(|| "-".into()),
            row.lower_bound.map(|e| e.to_string()).unwrap_or_else(|| "-".into()),
            if row.equality_flag { "=" } else { " " },
            if row.stabilized { " stable" } else { "" }
        ));
    }
    if let Some(m) = &r.monge {
        push(&mut out, String::new());
        push(&mut out, format!("monge verdict: {:?}", m.verdict));
        push(&mut out, format!(
            "  hypothesis: III dim {} | syzygies {} -> {}",
            m.iii_dim,
            m.linear_syzygy_dim,
            if m.hypothesis_ok { "ok" } else { "fails" }
        ));
        push(&mut out, format!(
            "  kernel dims (orders 3,4,5): {} {} {}  bounds {} {}  equality [{}{}]",
            m.dim_ker_ff3, m.dim_ker_ff4, m.dim_ker_ff5,
            m.bound_order3, m.bound_order4,
            if m.order3_equality { "3" } else { "-" },
            if m.order4_equality { "4" } else { "-" }
        ));
        push(&mut out, format!(
            "  stages solvable: {} {} {}  solution set dim {}",
            m.stage3_solvable, m.stage4_solvable, m.stage5_solvable, m.solution_set_dim
        ));
        if !m.generators.is_empty() {
            push(&mut out, format!(
                "  reconstructed generators ({}verified):",
                if m.generators_verified { "" } else { "NOT " }
            ));
            for g in &m.generators {
                push(&mut out, format!("    {g}"));
            }
        }
    }
    if let Some(ci) = &r.ci {
        push(&mut out, String::new());
        push(&mut out, format!(
            "complete intersection up to degree {}: {}{}",
            ci.degree_bound,
            if ci.complete_intersection_up_to_bound { "YES" } else { "NO" },
            if ci.degenerate { "  (degenerate: lies in a hyperplane)" } else { "" }
        ));
        for row in &ci.rows {
            push(&mut out, format!(
                "  degree {}: dim I = {}, trivial {}, essential {}, [d]-injective {}{}",
                row.degree,
                row.dim_ideal,
                row.dim_trivial,
                row.dim_essential,
                row.map_injective,
                row.witness.as_ref().map(|w| format!(", witness {w}")).unwrap_or_default()
            ));
        }
        push(&mut out, format!(
            "  conormal filtration jumps: {:?}  exhausted: {}",
            ci.filtration.jumps, ci.filtration.exhausted
        ));
    }
    let t = &r.thresholds;
    push(&mut out, String::new());
    push(&mut out, format!(
        "thresholds (b = {}): prolongation forced zero {}, no syzygies forced {}, CI if quadric-generated {}",
        t.b_sing, t.prolongation_forced_zero, t.no_linear_syzygies_forced, t.ci_if_quadric_generated
    ));
    out
}

pub fn monge_verdict_name(v: MongeVerdict) -> &'static str {
    match v {
        MongeVerdict::MongeHolds => "MongeHolds",
        MongeVerdict::Order3Fails => "Order3Fails",
        MongeVerdict::Order4Fails => "Order4Fails",
        MongeVerdict::Order5Fails => "Order5Fails",
        MongeVerdict::HypothesisFails => "HypothesisFails",
    }
}

/// Numeric fields must agree between the two renderings; tested by parsing
/// the JSON and spot-checking against the text.
pub fn render_json(r: &AnalyzeReport) -> String {
    serde_json::to_string_pretty(r).expect("report serializes")
}
