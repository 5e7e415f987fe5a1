//! Subcommand implementations. Each returns an [`Output`] and leaves
//! rendering and exit codes to the caller.

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::Value;

use tfbound::concentration::{transform_auto, variance_stats, ConcentrationPair, VarianceStats};
use tfbound::corpus::random_systems;
use tfbound::feasibility::{
    admissible_at_angle, concentration_angle, spec_feasible_with, ExtremalMeasurement, ExtremalSignal,
};
use tfbound::figures::{figure, range, spectrum_table, Table};
use tfbound::gaussian::{design_from, DesignTarget, GaussianDesign};
use tfbound::lti::{bandwidth_3db, rise_bandwidth_product, step_metrics, RiseBandwidth, StepMetrics};
use tfbound::pswf::TimeBandwidthProduct;
use tfbound::{Signal, Spec, System, Verdict};

use crate::output::Output;

/// Fields accepted in a spec-sheet document.
pub const SPEC_FIELDS: [&str; 8] = ["T", "delta", "E", "E1", "W", "beta", "beta1", "beta1_prime"];

/// Parses a spec sheet, naming every missing, unknown or non-numeric field.
pub fn parse_spec(text: &str) -> Result<Spec> {
    let doc: Value = serde_json::from_str(text).context("spec sheet is not valid JSON")?;
    let Value::Object(map) = &doc else {
        bail!("spec sheet must be a JSON object with fields {}", SPEC_FIELDS.join(", "));
    };
    let mut problems = Vec::new();
    let missing: Vec<&str> = ["T", "delta", "E"].into_iter().filter(|k| !map.contains_key(*k)).collect();
    if !missing.is_empty() {
        problems.push(format!("missing field(s): {}", missing.join(", ")));
    }
    if !map.contains_key("W") && !map.contains_key("beta") {
        problems.push("missing field: W or beta".into());
    }
    let unknown: Vec<&str> = map.keys().map(String::as_str).filter(|k| !SPEC_FIELDS.contains(k)).collect();
    if !unknown.is_empty() {
        problems.push(format!("unknown field(s): {}", unknown.join(", ")));
    }
    let non_numeric: Vec<&str> = map.iter().filter(|(_, v)| !v.is_number()).map(|(k, _)| k.as_str()).collect();
    if !non_numeric.is_empty() {
        problems.push(format!("non-numeric field(s): {}", non_numeric.join(", ")));
    }
    if !problems.is_empty() {
        bail!("invalid spec sheet: {}", problems.join("; "));
    }
    let spec: Spec = serde_json::from_value(doc)?;
    spec.validate()?;
    Ok(spec)
}

pub fn parse_system(text: &str) -> Result<System> {
    serde_json::from_str(text).context("system must be JSON {\"num\": [...], \"den\": [...]} in ascending powers of s")
}

pub enum CRange {
    List(Vec<f64>),
    Range { start: f64, end: f64, step: f64 },
}

pub fn spectrum(cs: CRange, n_max: usize, quad_order: usize) -> Result<Output> {
    let cs = match cs {
        CRange::List(v) => v,
        CRange::Range { start, end, step } => range(start, end, step)?,
    };
    Ok(Output::Table(spectrum_table(&cs, n_max, quad_order)?))
}

pub fn check(spec: &Spec, slack: f64) -> Result<(Output, bool)> {
    let verdict: Verdict = spec_feasible_with(spec, slack)?;
    Ok((Output::record(&verdict)?, verdict.feasible))
}

#[derive(Serialize)]
struct DesignRecord {
    a: f64,
    rise_time: f64,
    settling_time: f64,
    freq_std: f64,
    rise_product: f64,
    settling_product: f64,
}

pub fn design(target: Option<DesignTarget<f64>>, a: Option<f64>) -> Result<Output> {
    let d = match (target, a) {
        (Some(t), None) => design_from(t)?,
        (None, Some(a)) => GaussianDesign::new(a)?,
        _ => bail!("give exactly one of --a, --rise-time, --settling-time, --freq-std"),
    };
    let (rise_product, settling_product) = d.products();
    Output::record(&DesignRecord {
        a: d.a(),
        rise_time: d.rise_time(),
        settling_time: d.settling_time(),
        freq_std: d.freq_std(),
        rise_product,
        settling_product,
    })
}

#[derive(Serialize)]
struct SystemRecord {
    order: usize,
    relative_degree: usize,
    dc_gain: f64,
    stable: bool,
    poles: Vec<[f64; 2]>,
    metrics: StepMetrics<f64>,
    rise_bandwidth: Option<RiseBandwidth<f64>>,
    omega_3db: Option<f64>,
}

pub fn analyze_system(sys: &System) -> Result<Output> {
    sys.require_stable()?;
    let metrics = step_metrics(sys)?;
    let rise_bandwidth = if sys.relative_degree() >= 2 { Some(rise_bandwidth_product(sys)?) } else { None };
    Output::record(&SystemRecord {
        order: sys.order(),
        relative_degree: sys.relative_degree(),
        dc_gain: sys.dc_gain(),
        stable: true,
        poles: sys.poles().iter().map(|p| [p.re, p.im]).collect(),
        metrics,
        rise_bandwidth,
        omega_3db: bandwidth_3db(sys, None).ok(),
    })
}

pub struct Windows {
    pub slot: Option<(f64, f64)>,
    pub band: Option<f64>,
}

#[derive(Serialize)]
struct SignalRecord {
    samples: usize,
    t0: f64,
    dt: f64,
    energy: f64,
    l1_norm: f64,
    variances: VarianceStats<f64>,
    heisenberg_product: f64,
    concentration: Option<WindowRecord>,
}

#[derive(Serialize)]
struct WindowRecord {
    t_lo: f64,
    t_hi: f64,
    band_edge: f64,
    alpha: f64,
    beta: f64,
    c: f64,
    verdict: Verdict,
}

pub fn analyze_signal(h: &Signal, windows: Windows) -> Result<Output> {
    let s = transform_auto(h)?;
    let variances = variance_stats(h, &s)?;
    let concentration = match (windows.slot, windows.band) {
        (Some((t_lo, t_hi)), Some(band_edge)) => {
            let pair = ConcentrationPair::measure(h, &s, t_lo, t_hi, band_edge)?;
            let c = TimeBandwidthProduct::from_band_and_slot(band_edge, t_hi - t_lo)?;
            let verdict = admissible_at_angle(&pair, concentration_angle(c)?)?;
            Some(WindowRecord { t_lo, t_hi, band_edge, alpha: pair.alpha, beta: pair.beta, c: c.value(), verdict })
        }
        (None, None) => None,
        _ => bail!("--slot and --band must be given together"),
    };
    Output::record(&SignalRecord {
        samples: h.len(),
        t0: h.t0(),
        dt: h.dt(),
        energy: h.energy(),
        l1_norm: h.l1_norm(),
        heisenberg_product: variances.var_time * variances.var_freq,
        variances,
        concentration,
    })
}

/// Rise-time/bandwidth figures for a seeded corpus of random systems.
pub fn analyze_corpus(seed: u64, count: usize) -> Result<Output> {
    let systems: Vec<System> = random_systems(seed, count)?;
    let cols = ["index", "order", "t_r_slope", "omega_b", "product", "t_r_1090", "omega_3db", "overshoot", "t_s"];
    let mut table = Table::new(cols.iter().map(|c| c.to_string()).collect());
    for (i, sys) in systems.iter().enumerate() {
        let rb = rise_bandwidth_product(sys)?;
        let m = step_metrics(sys)?;
        table.push(vec![
            Some(i as f64),
            Some(sys.order() as f64),
            Some(rb.t_r_slope),
            Some(rb.omega_b),
            Some(rb.product),
            Some(rb.t_r_1090),
            rb.omega_3db,
            Some(m.overshoot),
            Some(m.t_s),
        ]);
    }
    Ok(Output::Table(table))
}

#[derive(Serialize)]
struct ExtremalRecord {
    alpha: f64,
    c: f64,
    lambda0: f64,
    p: f64,
    q: f64,
    measured: ExtremalMeasurement<f64>,
}

pub fn extremal(alpha: f64, c: f64, samples: Option<(f64, usize)>) -> Result<Output> {
    let e = ExtremalSignal::new(alpha, TimeBandwidthProduct::new(c)?)?;
    if let Some((half_width, per_unit)) = samples {
        let h = e.sample(half_width, per_unit)?;
        let mut table = Table::new(vec!["t".into(), "h".into()]);
        for (t, v) in h.times().zip(h.values()) {
            table.push(vec![Some(t), Some(*v)]);
        }
        return Ok(Output::Table(table));
    }
    Output::record(&ExtremalRecord { alpha: e.alpha, c, lambda0: e.lambda0, p: e.p, q: e.q, measured: e.measure()? })
}

pub fn figdata(id: u32) -> Result<Output> {
    Ok(Output::Table(figure(id)?))
}
