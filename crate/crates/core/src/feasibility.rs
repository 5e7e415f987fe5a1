//! Admissibility of concentration pairs and feasibility of transient
//! specifications.
//!
//! Every check returns a [`Verdict`] with `feasible ⇔ margin ≥ 0`. Strict
//! inequalities subtract a small slack from their raw slack so that boundary
//! cases count as infeasible; non-strict ones snap rounding noise to zero.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::concentration::{ConcentrationPair, SampledSignal, VarianceStats};
use crate::error::{invalid, Error, Result};
use crate::lti::StepMetrics;
use crate::pswf::{compute_spectrum, lambda0, ProlateSpectrum, TimeBandwidthProduct, DEFAULT_QUAD_ORDER};
use crate::quadrature::GaussLegendre;
use crate::scalar::{from_usize, lit, to_f64, Real};

/// Default slack subtracted from strict inequalities.
pub const DEFAULT_STRICT_SLACK: f64 = 1e-9;
/// Above this `c` the concentration angle comes from the large-`c`
/// asymptotic. Past this point `1 − λ₀ < 3e-12`, so the Nyström value has
/// lost relative precision, while the asymptotic defect is within 3 % and
/// the angle itself is below 2e-6.
pub const ASYMPTOTIC_C: f64 = 15.0;

/// Outcome of a single inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult<T> {
    pub name: String,
    pub lhs: T,
    pub rhs: T,
    pub margin: T,
    pub passed: bool,
    /// False when the test's hypothesis does not hold or an input it needs
    /// was not supplied; such results never decide feasibility.
    pub applicable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict<T> {
    pub feasible: bool,
    pub margin: T,
    pub governing_test: String,
    pub applicable: bool,
    pub details: Vec<TestResult<T>>,
}

impl<T: Real> TestResult<T> {
    fn new(name: &str, lhs: T, rhs: T, margin: T) -> Self {
        Self { name: name.to_string(), lhs, rhs, margin, passed: margin >= T::zero(), applicable: true }
    }

    fn informational(mut self) -> Self {
        self.applicable = false;
        self
    }
}

impl<T: Real> Verdict<T> {
    fn single(test: TestResult<T>) -> Self {
        Self {
            feasible: test.passed,
            margin: test.margin,
            governing_test: test.name.clone(),
            applicable: test.applicable,
            details: vec![test],
        }
    }
}

/// Zeroes values within rounding distance of an angle-sized quantity.
fn snap<T: Real>(x: T) -> T {
    if x.abs() <= lit::<T>(64.0) * T::epsilon() * T::PI() {
        T::zero()
    } else {
        x
    }
}

/// `arccos √λ₀(c)`, evaluated as `arcsin √(1 − λ₀)` to keep precision when
/// `λ₀` is close to one.
pub fn concentration_angle<T: Real>(c: TimeBandwidthProduct<T>) -> Result<T> {
    let defect = if c.value() > lit(ASYMPTOTIC_C) {
        let cv = c.value();
        lit::<T>(4.0) * (T::PI() * cv).sqrt() * (lit::<T>(-2.0) * cv).exp()
    } else {
        T::one() - lambda0(c)?
    };
    Ok(defect.max(T::zero()).sqrt().asin())
}

/// `λ₀(c)`, from the Nyström solve or, for large `c`, the asymptotic form.
pub fn lambda0_any<T: Real>(c: TimeBandwidthProduct<T>) -> Result<T> {
    let a = concentration_angle(c)?;
    Ok(a.cos() * a.cos())
}

fn admissibility_result<T: Real>(pair: &ConcentrationPair<T>, angle: T) -> Result<TestResult<T>> {
    let (a, b) = (pair.alpha, pair.beta);
    if (a == T::one() && b == T::zero()) || (a == T::zero() && b == T::one()) {
        return Err(Error::ExcludedPair { alpha: to_f64(a), beta: to_f64(b) });
    }
    let lhs = a.acos() + b.acos();
    Ok(TestResult::new("admissibility", lhs, angle, snap(lhs - angle)))
}

/// `arccos α + arccos β ≥ arccos √λ₀`.
pub fn admissible<T: Real>(pair: &ConcentrationPair<T>, c: TimeBandwidthProduct<T>) -> Result<Verdict<T>> {
    admissible_at_angle(pair, concentration_angle(c)?)
}

/// [`admissible`] with a precomputed `arccos √λ₀`.
pub fn admissible_at_angle<T: Real>(pair: &ConcentrationPair<T>, angle: T) -> Result<Verdict<T>> {
    Ok(Verdict::single(admissibility_result(pair, angle)?))
}

/// Downward closure as a checkable implication: if `pair` is admissible then so is
/// every componentwise smaller pair.
pub fn downward_closure_check<T: Real>(
    pair: &ConcentrationPair<T>,
    smaller: &ConcentrationPair<T>,
    c: TimeBandwidthProduct<T>,
) -> Result<bool> {
    let ordered = |s: T, l: T| s > T::zero() && s <= l;
    if !ordered(smaller.alpha, pair.alpha) || !ordered(smaller.beta, pair.beta) {
        return Err(Error::OrderingViolated);
    }
    let angle = concentration_angle(c)?;
    let big = admissible_at_angle(pair, angle)?;
    let small = admissible_at_angle(smaller, angle)?;
    Ok(!big.feasible || small.feasible)
}

/// If `α² + β² ≤ 1` then `arccos α + arccos β ≥ π/2`.
pub fn quarter_circle_check<T: Real>(pair: &ConcentrationPair<T>) -> Verdict<T> {
    Verdict::single(quarter_circle_result("quarter_circle", pair.alpha, pair.beta))
}

/// The quarter-circle test applied to a specification: if
/// `(1+δ)²/(ET) + β² ≤ 1` then `arccos((1+δ)/√(ET)) + arccos β ≥ π/2`.
/// Not applicable when the hypothesis fails or the step ratio exceeds one.
pub fn energy_quarter_circle_check<T: Real>(spec: &SpecSheet<T>) -> Result<Verdict<T>> {
    spec.validate()?;
    let x = spec.step_ratio();
    let r = quarter_circle_result("energy_quarter_circle", x.min(T::one()), spec.beta_or_default());
    Ok(Verdict::single(if x > T::one() { r.informational() } else { r }))
}

fn quarter_circle_result<T: Real>(name: &str, a: T, b: T) -> TestResult<T> {
    let lhs = a.acos() + b.acos();
    let rhs = T::FRAC_PI_2();
    let hypothesis = a * a + b * b <= T::one() + lit::<T>(4.0) * T::epsilon();
    let r = TestResult::new(name, lhs, rhs, snap(lhs - rhs));
    if hypothesis {
        r
    } else {
        r.informational()
    }
}

/// Transient specification: horizon `T` (the peak time), signed deviation
/// `δ(T)`, impulse-response energy `E`, and the bandwidth constraint as a
/// band edge `W`, a direct `β`, or both.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecSheet<T> {
    #[serde(rename = "T")]
    pub horizon: T,
    pub delta: T,
    #[serde(rename = "E")]
    pub energy: T,
    #[serde(rename = "E1", default, skip_serializing_if = "Option::is_none")]
    pub l1_energy: Option<T>,
    #[serde(rename = "W", default, skip_serializing_if = "Option::is_none")]
    pub band_edge: Option<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<T>,
    /// L¹ frequency fraction for the energy form of Chalk's bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta1: Option<T>,
    /// L¹ frequency fraction for the L¹-energy form of Chalk's bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta1_prime: Option<T>,
}

impl<T: Real> SpecSheet<T> {
    pub fn new(horizon: T, delta: T, energy: T) -> Self {
        Self { horizon, delta, energy, l1_energy: None, band_edge: None, beta: None, beta1: None, beta1_prime: None }
    }

    pub fn with_band_edge(mut self, w: T) -> Self {
        self.band_edge = Some(w);
        self
    }

    pub fn with_beta(mut self, beta: T) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn with_l1_energy(mut self, e1: T) -> Self {
        self.l1_energy = Some(e1);
        self
    }

    pub fn with_beta1(mut self, b1: T, b1_prime: Option<T>) -> Self {
        self.beta1 = Some(b1);
        self.beta1_prime = b1_prime;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |x: T| x > T::zero() && x.is_finite();
        if !pos(self.horizon) {
            return Err(invalid("T", "horizon must be positive"));
        }
        if !pos(self.energy) {
            return Err(invalid("E", "energy must be positive"));
        }
        if !self.delta.is_finite() || !(T::one() + self.delta > T::zero()) {
            return Err(invalid("delta", "need 1 + delta > 0"));
        }
        if let Some(w) = self.band_edge {
            if !pos(w) {
                return Err(invalid("W", "band edge must be positive"));
            }
        }
        if let Some(b) = self.beta {
            if !(b > T::zero() && b <= T::one()) {
                return Err(invalid("beta", "must lie in (0, 1]"));
            }
        }
        if self.band_edge.is_none() && self.beta.is_none() {
            return Err(Error::InconsistentSpec("one of W or beta is required".into()));
        }
        if let Some(e1) = self.l1_energy {
            if !pos(e1) {
                return Err(invalid("E1", "L1 energy must be positive"));
            }
        }
        for (name, v) in [("beta1", self.beta1), ("beta1_prime", self.beta1_prime)] {
            if let Some(b) = v {
                if !(b >= T::zero() && b <= T::one()) {
                    return Err(invalid(name, "must lie in [0, 1]"));
                }
            }
        }
        Ok(())
    }

    /// `(1 + δ) / √(E T)`.
    pub fn step_ratio(&self) -> T {
        (T::one() + self.delta) / (self.energy * self.horizon).sqrt()
    }

    /// `c = W T / 2` when a band edge is present.
    pub fn time_bandwidth(&self) -> Result<Option<TimeBandwidthProduct<T>>> {
        self.band_edge.map(|w| TimeBandwidthProduct::from_band_and_slot(w, self.horizon)).transpose()
    }

    /// `β`, defaulting to one (no constraint beyond the band edge).
    pub fn beta_or_default(&self) -> T {
        self.beta.unwrap_or(T::one())
    }
}

/// [`spec_feasible_with`] at the default slack.
pub fn spec_feasible<T: Real>(spec: &SpecSheet<T>) -> Result<Verdict<T>> {
    spec_feasible_with(spec, lit(DEFAULT_STRICT_SLACK))
}

/// Runs the energy-budget precondition, the quick test
/// `(1+δ)/√(ET) < √λ₀` (deciding only when `β = 1`, the band-limited case
/// it is derived for), the main test
/// `arccos((1+δ)/√(ET)) + arccos β > arccos √λ₀`, and the Chalk-type
/// bounds. The quarter-circle test on `((1+δ)/√(ET), β)` is reported
/// alongside but never decides.
///
/// Without a band edge there is no `λ₀`; the spec is then decided only when
/// `(1+δ)²/(ET) + β² ≤ 1` holds, since its conclusion exceeds
/// `arccos √λ₀` for every `c`.
pub fn spec_feasible_with<T: Real>(spec: &SpecSheet<T>, slack: T) -> Result<Verdict<T>> {
    spec.validate()?;
    if !(slack >= T::zero()) {
        return Err(invalid("tol", "slack must be non-negative"));
    }
    let x = spec.step_ratio();
    let beta = spec.beta_or_default();
    let mut details = Vec::new();

    let budget = TestResult::new("energy_budget", x, T::one(), T::one() - x);
    let over_budget = !budget.passed;
    details.push(budget);

    let quarter = quarter_circle_result("energy_quarter_circle", x.min(T::one()), beta);
    let c = spec.time_bandwidth()?;
    if c.is_none() && !over_budget {
        if !quarter.applicable {
            return Err(Error::InconsistentSpec(
                "W is required: (1+delta)^2/(ET) + beta^2 > 1, so the verdict depends on lambda0".into(),
            ));
        }
        let mut main = quarter.clone();
        main.name = "angle_sum".into();
        main.rhs = T::FRAC_PI_2();
        details.push(quarter);
        details.push(main);
        return Ok(conclude(details, &["angle_sum"]));
    }
    if over_budget {
        details.push(quarter);
        return Ok(conclude(details, &[]));
    }
    let c = c.expect("checked above");
    let angle = concentration_angle(c)?;
    let ax = x.acos();
    let quick = TestResult::new("quick", ax, angle, ax - angle - slack);
    // necessary only for band-limited responses
    details.push(if beta < T::one() { quick.informational() } else { quick });
    let lhs_sum = ax + beta.acos();
    details.push(TestResult::new("angle_sum", lhs_sum, angle, lhs_sum - angle - slack));
    details.push(quarter);

    let (energy_test, l1_test) = chalk_results(spec, slack)?;
    details.extend(energy_test);
    details.extend(l1_test);
    Ok(conclude(details, &["quick", "angle_sum"]))
}

/// Feasible when every applicable deciding test passes. The governing test is
/// the first failure, else the tightest of `rank` (by margin).
fn conclude<T: Real>(details: Vec<TestResult<T>>, rank: &[&str]) -> Verdict<T> {
    let deciding = |t: &&TestResult<T>| t.applicable && !t.name.ends_with("quarter_circle");
    let failed = details.iter().filter(deciding).find(|t| !t.passed).cloned();
    let (feasible, governing) = match failed {
        Some(t) => (false, t),
        None => {
            let tight = details
                .iter()
                .filter(|t| t.applicable && rank.contains(&t.name.as_str()))
                .min_by(|a, b| a.margin.partial_cmp(&b.margin).unwrap_or(std::cmp::Ordering::Equal))
                .cloned();
            (true, tight.expect("ranked tests present when feasible"))
        }
    };
    Verdict { feasible, margin: governing.margin, governing_test: governing.name, applicable: true, details }
}

/// Left-hand sides of the Chalk-type spec bounds:
/// `E W (T/(1+δ))²` and `E₁ W T/(1+δ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChalkBounds<T> {
    pub energy_form: T,
    pub l1_form: Option<T>,
}

pub fn chalk_spec_bounds<T: Real>(spec: &SpecSheet<T>) -> Result<ChalkBounds<T>> {
    spec.validate()?;
    let w = spec.band_edge.ok_or_else(|| invalid("W", "band edge is required for Chalk's bounds"))?;
    let s = spec.horizon / (T::one() + spec.delta);
    Ok(ChalkBounds { energy_form: spec.energy * w * s * s, l1_form: spec.l1_energy.map(|e1| e1 * w * s) })
}

/// Like [`chalk_spec_bounds`], but a missing `E₁` is an error.
pub fn chalk_spec_bounds_full<T: Real>(spec: &SpecSheet<T>) -> Result<(T, T)> {
    let b = chalk_spec_bounds(spec)?;
    let l1 = b.l1_form.ok_or_else(|| invalid("E1", "L1 energy is required for the second bound"))?;
    Ok((b.energy_form, l1))
}

type ChalkResults<T> = (Option<TestResult<T>>, Option<TestResult<T>>);

fn chalk_results<T: Real>(spec: &SpecSheet<T>, slack: T) -> Result<ChalkResults<T>> {
    if spec.band_edge.is_none() {
        return Ok((None, None));
    }
    let b = chalk_spec_bounds(spec)?;
    let two_pi = lit::<T>(2.0) * T::PI();
    let make = |name: &str, lhs: T, frac: Option<T>| {
        let rhs = two_pi * frac.unwrap_or(T::one());
        let r = TestResult::new(name, lhs, rhs, lhs - rhs - slack);
        // without a measured fraction the bound is only indicative
        if frac.is_some() {
            r
        } else {
            r.informational()
        }
    };
    let energy_test = make("chalk_energy", b.energy_form, spec.beta1);
    let l1_test = b.l1_form.map(|l| make("chalk_l1", l, spec.beta1_prime));
    Ok((Some(energy_test), l1_test))
}

/// `W T > 2π a₁ b₁`, for L² time / L¹ frequency fractions (or the dual).
pub fn chalk_check<T: Real>(horizon: T, band_edge: T, a1: T, b1: T, slack: T) -> Result<Verdict<T>> {
    if !(horizon > T::zero()) || !(band_edge > T::zero()) {
        return Err(invalid("window", "T and W must be positive"));
    }
    let unit = |x: T| x >= T::zero() && x <= T::one();
    if !unit(a1) || !unit(b1) {
        return Err(invalid("fractions", "a1 and b1 must lie in [0, 1]"));
    }
    let lhs = band_edge * horizon;
    let rhs = lit::<T>(2.0) * T::PI() * a1 * b1;
    Ok(Verdict::single(TestResult::new("chalk", lhs, rhs, lhs - rhs - slack)))
}

/// Lower bound `E (1 − λ₀(c))` on the deviation at the peak time.
pub fn min_overshoot<T: Real>(spec: &SpecSheet<T>, c_at_tp: TimeBandwidthProduct<T>) -> Result<T> {
    min_overshoot_bound(spec.energy, c_at_tp)
}

pub fn min_overshoot_bound<T: Real>(energy: T, c: TimeBandwidthProduct<T>) -> Result<T> {
    let a = concentration_angle(c)?;
    let s = a.sin();
    Ok(energy * s * s)
}

/// `δ(t_p) t_p`, the bound on `t_p − t_r` for the idealised response shape,
/// and the measured gap when the 0→100 % rise time exists.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeakRiseGap<T> {
    pub bound: T,
    pub measured: Option<T>,
}

pub fn peak_rise_gap<T: Real>(m: &StepMetrics<T>) -> Result<PeakRiseGap<T>> {
    let t_p = m.t_p.ok_or(Error::NoPeak)?;
    Ok(PeakRiseGap { bound: m.overshoot * t_p, measured: m.t_r_full.map(|tr| t_p - tr) })
}

/// Both sides of the local bounds `∫₀ᵀ h² ≤ K′σ_ω E T` and
/// `(1+δ(T))/T ≤ √(K′σ_ω E)`. Informational: the constant is unknown.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalBoundReport<T> {
    pub energy_lhs: T,
    pub energy_rhs: T,
    pub energy_ratio: T,
    pub slope_lhs: T,
    pub slope_rhs: T,
    pub slope_ratio: T,
}

pub fn local_bound_check<T: Real>(
    h: &SampledSignal<T>,
    horizon: T,
    k_prime: T,
    v: &VarianceStats<T>,
) -> Result<LocalBoundReport<T>> {
    if !(k_prime > T::zero()) {
        return Err(invalid("K_prime", "must be positive"));
    }
    if !(horizon > T::zero()) {
        return Err(invalid("T", "must be positive"));
    }
    if !(v.var_freq > T::zero()) {
        return Err(invalid("variance", "frequency variance must be positive"));
    }
    let sigma = v.var_freq.sqrt();
    let e = h.energy();
    let start = T::zero().max(h.t0());
    let energy_lhs = h.energy_in(start, horizon);
    let energy_rhs = k_prime * sigma * e * horizon;
    let slope_lhs = h.integral(start, horizon) / horizon;
    let slope_rhs = (k_prime * sigma * e).sqrt();
    Ok(LocalBoundReport {
        energy_lhs,
        energy_rhs,
        energy_ratio: energy_lhs / energy_rhs,
        slope_lhs,
        slope_rhs,
        slope_ratio: slope_lhs / slope_rhs,
    })
}

/// `h = pψ₀ + q P_T ψ₀` on the normalised slot `(−1, 1)` with band edge `c`
/// (so `T = 2` and `W = c`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtremalSignal<T: Real> {
    pub alpha: T,
    pub p: T,
    pub q: T,
    pub lambda0: T,
    spectrum: ProlateSpectrum<T>,
}

/// Concentrations of an [`ExtremalSignal`] measured by quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremalMeasurement<T> {
    pub alpha: T,
    pub beta: T,
    /// `arccos α + arccos β − arccos √λ₀`.
    pub margin: T,
}

impl<T: Real> ExtremalSignal<T> {
    pub fn new(alpha: T, c: TimeBandwidthProduct<T>) -> Result<Self> {
        if !(alpha > T::zero() && alpha < T::one()) {
            return Err(invalid("alpha", format!("must lie in (0, 1), got {alpha}")));
        }
        let spectrum = compute_spectrum(c, 0, DEFAULT_QUAD_ORDER)?;
        let l = spectrum.lambda0();
        let p = ((T::one() - alpha * alpha) / (T::one() - l)).sqrt();
        let q = alpha / l.sqrt() - p;
        Ok(Self { alpha, p, q, lambda0: l, spectrum })
    }

    pub fn c(&self) -> TimeBandwidthProduct<T> {
        self.spectrum.c()
    }

    /// `h(x)`; the slot's end points count as inside.
    pub fn eval(&self, x: T) -> Result<T> {
        let psi = self.spectrum.eval_extended(0, x)?;
        let inside = if x.abs() <= T::one() { self.q } else { T::zero() };
        Ok((self.p + inside) * psi)
    }

    /// Samples on `[-half_width, half_width]` with `n` points per unit
    /// length, aligned so that `±1` are grid points.
    pub fn sample(&self, half_width: T, per_unit: usize) -> Result<SampledSignal<T>> {
        if !(half_width >= T::one()) || per_unit < 2 {
            return Err(invalid("grid", "need half_width >= 1 and at least two points per unit"));
        }
        let dt = T::one() / from_usize(per_unit);
        let cells = (to_f64(half_width) * per_unit as f64).ceil() as usize;
        let t0 = -dt * from_usize(cells);
        let values = (0..=2 * cells).map(|i| self.eval(t0 + dt * from_usize(i))).collect::<Result<Vec<T>>>()?;
        SampledSignal::new(t0, dt, values)
    }

    /// Measures `(α, β)` with quadrature rules independent of the eigen
    /// solve: the slot energy directly, the band energy through the Fourier
    /// transform of `P_T ψ₀` on `[-c, c]`, and the total energy through
    /// Parseval on the band for the band-limited component.
    pub fn measure(&self) -> Result<ExtremalMeasurement<T>> {
        let c = self.c().value();
        let order = 2 * DEFAULT_QUAD_ORDER + 1;
        let rule = GaussLegendre::<T>::new(order)?;
        let (xs, ws) = rule.mapped(-T::one(), T::one());
        let psi: Vec<T> = xs.iter().map(|&x| self.spectrum.eval_extended(0, x)).collect::<Result<_>>()?;
        let inside: T = psi.iter().zip(&ws).map(|(&v, &w)| w * v * v).sum();

        let transform = |omega: T| -> Complex<T> {
            xs.iter().zip(&ws).zip(&psi).fold(Complex::new(T::zero(), T::zero()), |acc, ((&x, &w), &v)| {
                acc + Complex::from_polar(w * v, -omega * x)
            })
        };
        let band_rule = GaussLegendre::<T>::new(order)?;
        let two_pi = lit::<T>(2.0) * T::PI();
        let g2 = band_rule.integrate(-c, c, |w| transform(w).norm_sqr()) / two_pi;

        let l = self.lambda0;
        let phi_norm = g2 / (l * l);
        let total = self.p * self.p * phi_norm + (lit::<T>(2.0) * self.p * self.q + self.q * self.q) * inside;
        let slot = (self.p + self.q) * (self.p + self.q) * inside;
        let band_amp = self.p / l + self.q;
        let band = band_amp * band_amp * g2;

        let alpha = (slot / total).sqrt().min(T::one());
        let beta = (band / total).sqrt().min(T::one());
        let margin = alpha.acos() + beta.acos() - (T::one() - l).sqrt().asin();
        Ok(ExtremalMeasurement { alpha, beta, margin })
    }
}

/// Samples the extremal signal for `alpha` at `c` on `[-half_width, half_width]`.
pub fn extremal_signal<T: Real>(
    alpha: T,
    c: TimeBandwidthProduct<T>,
    half_width: T,
    per_unit: usize,
) -> Result<SampledSignal<T>> {
    ExtremalSignal::new(alpha, c)?.sample(half_width, per_unit)
}
