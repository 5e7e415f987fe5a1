//! Continuous-time rational transfer functions: simulation, step-response
//! metrics and bandwidth measures.
//!
//! Coefficients are stored in ascending powers of `s`, so `[1, 2, 1]` is
//! `1 + 2s + s²`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::concentration::SampledSignal;
use crate::error::{invalid, Error, Result};
use crate::quadrature::integrate_adaptive;
use crate::scalar::{from_usize, lit, to_f64, Real};

/// Largest accepted `dt · max|pole|` for simulation.
pub const MAX_STEP_PRODUCT: f64 = 0.1;
/// `dt · max|pole|` used when the grid is chosen automatically.
pub const AUTO_STEP_PRODUCT: f64 = 0.02;
/// Horizon in units of the slowest time constant for automatic grids.
pub const AUTO_HORIZON: f64 = 30.0;
/// Settling band used by [`step_metrics`].
pub const DEFAULT_SETTLING_BAND: f64 = 0.03;
/// Upper bound on automatically chosen grid sizes.
pub const MAX_AUTO_SAMPLES: usize = 4_000_000;

const OVERSHOOT_FLOOR: f64 = 1e-9;

/// `H(s) = num(s) / den(s)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSystem<T>", into = "RawSystem<T>")]
pub struct RationalSystem<T: Real> {
    num: Vec<T>,
    den: Vec<T>,
}

#[derive(Serialize, Deserialize)]
struct RawSystem<T> {
    num: Vec<T>,
    den: Vec<T>,
}

impl<T: Real> TryFrom<RawSystem<T>> for RationalSystem<T> {
    type Error = Error;
    fn try_from(raw: RawSystem<T>) -> Result<Self> {
        Self::new(raw.num, raw.den)
    }
}

impl<T: Real> From<RationalSystem<T>> for RawSystem<T> {
    fn from(sys: RationalSystem<T>) -> Self {
        RawSystem { num: sys.num, den: sys.den }
    }
}

fn trim<T: Real>(mut p: Vec<T>) -> Vec<T> {
    while p.len() > 1 && p[p.len() - 1] == T::zero() {
        p.pop();
    }
    p
}

fn eval_poly<T: Real>(p: &[T], z: Complex<T>) -> Complex<T> {
    p.iter().rev().fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc * z + c)
}

impl<T: Real> RationalSystem<T> {
    pub fn new(num: Vec<T>, den: Vec<T>) -> Result<Self> {
        if num.is_empty() || den.is_empty() {
            return Err(invalid("system", "numerator and denominator need at least one coefficient"));
        }
        if num.iter().chain(&den).any(|c| !c.is_finite()) {
            return Err(invalid("system", "coefficients must be finite"));
        }
        let num = trim(num);
        let den = trim(den);
        if den.iter().all(|&c| c == T::zero()) {
            return Err(invalid("den", "denominator is identically zero"));
        }
        if den[0] == T::zero() {
            return Err(invalid("den", "denominator has a root at s = 0"));
        }
        let (nd, dd) = (num.len() - 1, den.len() - 1);
        if nd > dd {
            return Err(Error::Improper { num: nd, den: dd });
        }
        Ok(Self { num, den })
    }

    pub fn num(&self) -> &[T] {
        &self.num
    }

    pub fn den(&self) -> &[T] {
        &self.den
    }

    pub fn order(&self) -> usize {
        self.den.len() - 1
    }

    /// Denominator degree minus numerator degree (zero numerator counts as
    /// infinitely strictly proper and reports the denominator degree).
    pub fn relative_degree(&self) -> usize {
        if self.num.iter().all(|&c| c == T::zero()) {
            return self.order();
        }
        self.order() - (self.num.len() - 1)
    }

    /// `H(0)`.
    pub fn dc_gain(&self) -> T {
        self.num[0] / self.den[0]
    }

    pub fn eval(&self, s: Complex<T>) -> Complex<T> {
        eval_poly(&self.num, s) / eval_poly(&self.den, s)
    }

    /// `H(jω)`.
    pub fn freq_response(&self, omega: T) -> Complex<T> {
        self.eval(Complex::new(T::zero(), omega))
    }

    /// `H(s/k)`: stretches the frequency axis by `k`, compresses time by `k`.
    pub fn frequency_scaled(&self, k: T) -> Result<Self> {
        let scale = |p: &[T]| -> Vec<T> {
            let mut f = T::one();
            p.iter()
                .map(|&c| {
                    let v = c * f;
                    f = f / k;
                    v
                })
                .collect()
        };
        Self::new(scale(&self.num), scale(&self.den))
    }

    /// `k H(s)`.
    pub fn gain_scaled(&self, k: T) -> Result<Self> {
        Self::new(self.num.iter().map(|&c| c * k).collect(), self.den.clone())
    }

    pub fn poles(&self) -> Vec<Complex<T>> {
        poly_roots(&self.den)
    }

    pub fn zeros(&self) -> Vec<Complex<T>> {
        poly_roots(&self.num)
    }

    /// Routh–Hurwitz test: every pole strictly in the open left half-plane.
    pub fn is_stable(&self) -> bool {
        routh_stable(&self.den)
    }

    pub fn require_stable(&self) -> Result<()> {
        if self.is_stable() {
            return Ok(());
        }
        let poles: Vec<String> =
            self.poles().iter().map(|p| format!("{:.6}{:+.6}i", to_f64(p.re), to_f64(p.im))).collect();
        Err(Error::Unstable(format!("poles [{}]", poles.join(", "))))
    }

    fn max_pole_magnitude(&self) -> T {
        self.poles().iter().fold(T::zero(), |m, p| m.max(p.norm()))
    }

    /// Grid `(t_end, dt)` resolving the fastest pole and covering the slowest.
    pub fn auto_grid(&self) -> Result<(T, T)> {
        self.require_stable()?;
        let poles = self.poles();
        if poles.is_empty() {
            return Err(Error::ImproperForSimulation);
        }
        let fastest = poles.iter().fold(T::zero(), |m, p| m.max(p.norm()));
        let slowest = poles.iter().fold(T::infinity(), |m, p| m.min(-p.re));
        let dt = lit::<T>(AUTO_STEP_PRODUCT) / fastest;
        let t_end = lit::<T>(AUTO_HORIZON) / slowest;
        let samples = to_f64(t_end / dt);
        if samples > MAX_AUTO_SAMPLES as f64 {
            return Err(invalid("system", format!("pole spread needs {samples:.0} samples, limit {MAX_AUTO_SAMPLES}")));
        }
        Ok((t_end, dt))
    }
}

/// Routh array sign test on ascending coefficients.
fn routh_stable<T: Real>(den: &[T]) -> bool {
    let n = den.len() - 1;
    if n == 0 {
        return true;
    }
    let desc: Vec<T> = den.iter().rev().copied().collect();
    let width = n / 2 + 1;
    let row = |start: usize| -> Vec<T> {
        (0..width).map(|k| desc.get(start + 2 * k).copied().unwrap_or(T::zero())).collect()
    };
    let mut prev = row(0);
    let mut cur = row(1);
    let sign = desc[0].signum();
    for _ in 0..n {
        if cur[0] == T::zero() || cur[0].signum() != sign {
            return false;
        }
        let next: Vec<T> = (0..width)
            .map(|k| {
                let a = prev.get(k + 1).copied().unwrap_or(T::zero());
                let b = cur.get(k + 1).copied().unwrap_or(T::zero());
                (cur[0] * a - prev[0] * b) / cur[0]
            })
            .collect();
        prev = cur;
        cur = next;
    }
    true
}

/// Durand–Kerner iteration on ascending coefficients.
fn poly_roots<T: Real>(p: &[T]) -> Vec<Complex<T>> {
    let p = trim(p.to_vec());
    let n = p.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = p[n];
    let monic: Vec<T> = p.iter().map(|&c| c / lead).collect();
    let radius =
        (0..n).fold(T::zero(), |m, i| m.max(monic[i].abs().powf(T::one() / from_usize(n - i)))) * lit(2.0) + lit(1e-3);
    let mut z: Vec<Complex<T>> = (0..n)
        .map(|k| {
            let theta = lit::<T>(2.0) * T::PI() * from_usize(k) / from_usize(n) + lit(0.4);
            Complex::from_polar(radius, theta)
        })
        .collect();
    for _ in 0..2000 {
        let mut change = T::zero();
        for k in 0..n {
            let mut denom = Complex::new(T::one(), T::zero());
            for j in 0..n {
                if j != k {
                    denom = denom * (z[k] - z[j]);
                }
            }
            let delta = eval_poly(&monic, z[k]) / denom;
            if delta.re.is_finite() && delta.im.is_finite() {
                z[k] = z[k] - delta;
                change = change.max(delta.norm() / (T::one() + z[k].norm()));
            }
        }
        if change < T::epsilon() * lit(4.0) {
            break;
        }
    }
    z.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    z
}

/// Dense row-major square matrix, only what the propagator needs.
#[derive(Clone)]
struct Dense<T> {
    n: usize,
    a: Vec<T>,
}

impl<T: Real> Dense<T> {
    fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut a = vec![T::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                if x == T::zero() {
                    continue;
                }
                for j in 0..n {
                    a[i * n + j] = a[i * n + j] + x * o.a[k * n + j];
                }
            }
        }
        Self { n, a }
    }

    fn scale_add_identity(mut self, k: T) -> Self {
        for v in &mut self.a {
            *v = *v * k;
        }
        for i in 0..self.n {
            self.a[i * self.n + i] = self.a[i * self.n + i] + T::one();
        }
        self
    }

    fn apply(&self, x: &[T], out: &mut [T]) {
        let n = self.n;
        for (i, o) in out.iter_mut().enumerate().take(n) {
            *o = (0..n).map(|j| self.a[i * n + j] * x[j]).sum();
        }
    }
}

/// One RK4 step of `x' = Mx` is exactly `x ← (I + hM + … + (hM)⁴/24) x`.
fn rk4_propagator<T: Real>(m: &Dense<T>, h: T) -> Dense<T> {
    let mut hm = m.clone();
    for v in &mut hm.a {
        *v = *v * h;
    }
    let mut p = hm.clone().scale_add_identity(lit(0.25));
    for k in [3.0, 2.0, 1.0] {
        p = hm.mul(&p).scale_add_identity(lit::<T>(1.0 / k));
    }
    p
}

/// Controllable canonical form `(A, B, C)` of a strictly proper system,
/// plus an extra constant-input state so step responses stay homogeneous.
struct Realization<T> {
    a: Dense<T>,
    c: Vec<T>,
    n: usize,
}

impl<T: Real> Realization<T> {
    fn new(sys: &RationalSystem<T>) -> Result<Self> {
        let n = sys.order();
        if n == 0 || sys.num.len() > n {
            return Err(Error::ImproperForSimulation);
        }
        let lead = sys.den[n];
        // states: x₀..x_{n−1}, then the held input u
        let dim = n + 1;
        let mut a = Dense { n: dim, a: vec![T::zero(); dim * dim] };
        for i in 0..n - 1 {
            a.a[i * dim + i + 1] = T::one();
        }
        for j in 0..n {
            a.a[(n - 1) * dim + j] = -sys.den[j] / lead;
        }
        a.a[(n - 1) * dim + n] = T::one();
        let mut c = vec![T::zero(); dim];
        for (j, &b) in sys.num.iter().enumerate() {
            c[j] = b / lead;
        }
        Ok(Self { a, c, n })
    }

    fn simulate(&self, x0: Vec<T>, t_end: T, dt: T) -> Result<SampledSignal<T>> {
        let mut out = self.simulate_outputs(x0, t_end, dt, 1);
        SampledSignal::new(T::zero(), dt, out.remove(0))
    }

    /// Samples of `C x`, `C A x`, … (`derivs` rows) along the trajectory.
    fn simulate_outputs(&self, x0: Vec<T>, t_end: T, dt: T, derivs: usize) -> Vec<Vec<T>> {
        let steps = (to_f64(t_end / dt)).round() as usize;
        let dim = self.n + 1;
        let mut rows = vec![self.c.clone()];
        for _ in 1..derivs {
            let prev = rows.last().unwrap();
            let next: Vec<T> = (0..dim).map(|j| (0..dim).map(|i| prev[i] * self.a.a[i * dim + j]).sum()).collect();
            rows.push(next);
        }
        let phi = rk4_propagator(&self.a, dt);
        let mut x = x0;
        let mut next = vec![T::zero(); dim];
        let mut out: Vec<Vec<T>> = (0..derivs).map(|_| Vec::with_capacity(steps + 1)).collect();
        for step in 0..=steps {
            if step > 0 {
                phi.apply(&x, &mut next);
                std::mem::swap(&mut x, &mut next);
            }
            for (row, o) in rows.iter().zip(out.iter_mut()) {
                o.push(row.iter().zip(&x).map(|(&c, &v)| c * v).sum());
            }
        }
        out
    }

    fn impulse_state(&self) -> Vec<T> {
        let mut x = vec![T::zero(); self.n + 1];
        x[self.n - 1] = T::one();
        x
    }

    fn step_state(&self) -> Vec<T> {
        let mut x = vec![T::zero(); self.n + 1];
        x[self.n] = T::one();
        x
    }
}

fn check_grid<T: Real>(sys: &RationalSystem<T>, t_end: T, dt: T) -> Result<()> {
    if !(dt > T::zero()) || !(t_end > dt) {
        return Err(invalid("grid", "need dt > 0 and t_end > dt"));
    }
    sys.require_stable()?;
    let product = dt * sys.max_pole_magnitude();
    if product > lit(MAX_STEP_PRODUCT) {
        return Err(Error::InadequateStep { dt: to_f64(dt), product: to_f64(product), limit: MAX_STEP_PRODUCT });
    }
    Ok(())
}

/// Simulated `h(t)` on `[0, t_end]`.
pub fn impulse_response<T: Real>(sys: &RationalSystem<T>, t_end: T, dt: T) -> Result<SampledSignal<T>> {
    let real = Realization::new(sys)?;
    check_grid(sys, t_end, dt)?;
    let h = real.simulate(real.impulse_state(), t_end, dt)?;
    let last = h.values()[h.len() - 1].abs();
    if last > h.max_abs() * lit(1e-6) {
        log::warn!("impulse response has not decayed by t_end = {}", to_f64(t_end));
    }
    Ok(h)
}

/// Simulated unit-step response on `[0, t_end]` (not normalised).
pub fn step_response<T: Real>(sys: &RationalSystem<T>, t_end: T, dt: T) -> Result<SampledSignal<T>> {
    let real = Realization::new(sys)?;
    check_grid(sys, t_end, dt)?;
    real.simulate(real.step_state(), t_end, dt)
}

/// Step-response metrics of the response normalised by `H(0)`.
///
/// Quantities that a monotone response does not have (peak time, 0→100 %
/// rise time) are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepMetrics<T> {
    /// `H(0) / max h`.
    pub t_r_slope: T,
    pub t_r_1090: T,
    pub t_r_full: Option<T>,
    pub t_p: Option<T>,
    pub t_s: T,
    /// `max(u/H(0)) − 1`, zero for responses that never exceed one.
    pub overshoot: T,
    pub steady_state: T,
}

/// [`step_metrics_with`] on the automatic grid and 3 % band.
pub fn step_metrics<T: Real>(sys: &RationalSystem<T>) -> Result<StepMetrics<T>> {
    let (t_end, dt) = sys.auto_grid()?;
    step_metrics_with(sys, t_end, dt, lit(DEFAULT_SETTLING_BAND))
}

pub fn step_metrics_with<T: Real>(sys: &RationalSystem<T>, t_end: T, dt: T, band: T) -> Result<StepMetrics<T>> {
    if !(band > T::zero() && band < T::one()) {
        return Err(invalid("band", "settling band must lie in (0, 1)"));
    }
    let k = sys.dc_gain();
    if k == T::zero() {
        return Err(Error::ZeroDcGain);
    }
    let real = Realization::new(sys)?;
    check_grid(sys, t_end, dt)?;
    let mut out = real.simulate_outputs(real.step_state(), t_end, dt, 3);
    let norm = |v: Vec<T>| -> Vec<T> { v.into_iter().map(|x| x / k).collect() };
    let hd = norm(out.pop().unwrap());
    let h = norm(out.pop().unwrap());
    let y = norm(out.pop().unwrap());
    let y_curve = Hermite { f: &y, d: &h, dt };
    let h_curve = Hermite { f: &h, d: &hd, dt };
    let time = |i: usize| dt * from_usize(i);

    let (_, h_max) = h_curve.maximum();
    let t_r_slope = T::one() / h_max;

    let t10 = y_curve.first_crossing(lit(0.1)).ok_or_else(|| invalid("system", "step response never reaches 10 %"))?;
    let t90 = y_curve.first_crossing(lit(0.9)).ok_or_else(|| invalid("system", "step response never reaches 90 %"))?;

    let (t_peak, peak) = y_curve.maximum();
    let overshoot = (peak - T::one()).max(T::zero());
    let (t_p, t_r_full) =
        if overshoot > lit(OVERSHOOT_FLOOR) { (Some(t_peak), y_curve.first_crossing(T::one())) } else { (None, None) };

    let outside = y.iter().rposition(|&v| (v - T::one()).abs() > band);
    let t_s = match outside {
        None => T::zero(),
        Some(i) if i + 1 >= y.len() => {
            log::warn!("response has not settled by t_end = {}", to_f64(t_end));
            time(i)
        }
        Some(i) => {
            let level = if y[i] > T::one() { T::one() + band } else { T::one() - band };
            y_curve.crossing_in(i, level)
        }
    };
    if t_s > t_end * lit(0.9) {
        log::warn!("settling time {} is close to the simulated horizon {}", to_f64(t_s), to_f64(t_end));
    }
    Ok(StepMetrics { t_r_slope, t_r_1090: t90 - t10, t_r_full, t_p, t_s, overshoot, steady_state: k })
}

/// Piecewise cubic Hermite interpolant of samples `f` with slopes `d`.
struct Hermite<'a, T> {
    f: &'a [T],
    d: &'a [T],
    dt: T,
}

impl<T: Real> Hermite<'_, T> {
    /// Power-basis coefficients of the cubic on cell `i`, in `s ∈ [0, 1]`.
    fn cell(&self, i: usize) -> [T; 4] {
        let (f0, f1) = (self.f[i], self.f[i + 1]);
        let (d0, d1) = (self.d[i] * self.dt, self.d[i + 1] * self.dt);
        let three = lit::<T>(3.0);
        let two = lit::<T>(2.0);
        [f0, d0, three * (f1 - f0) - two * d0 - d1, two * (f0 - f1) + d0 + d1]
    }

    fn eval_cell(p: &[T; 4], s: T) -> T {
        ((p[3] * s + p[2]) * s + p[1]) * s + p[0]
    }

    fn time(&self, i: usize, s: T) -> T {
        self.dt * (from_usize::<T>(i) + s)
    }

    /// Root of `f − level` inside cell `i`, which must bracket it.
    fn crossing_in(&self, i: usize, level: T) -> T {
        let p = self.cell(i);
        let g = |s: T| Self::eval_cell(&p, s) - level;
        let (mut a, mut b) = (T::zero(), T::one());
        let ga = g(a);
        for _ in 0..64 {
            let m = (a + b) / lit(2.0);
            if (g(m) > T::zero()) == (ga > T::zero()) {
                a = m;
            } else {
                b = m;
            }
        }
        self.time(i, (a + b) / lit(2.0))
    }

    fn first_crossing(&self, level: T) -> Option<T> {
        let i = self.f.iter().position(|&v| v >= level)?;
        if i == 0 {
            return Some(T::zero());
        }
        Some(self.crossing_in(i - 1, level))
    }

    /// Location and value of the global maximum, refined on the cells next
    /// to the largest sample.
    fn maximum(&self) -> (T, T) {
        let (i, v) = self
            .f
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) });
        let mut best = (self.time(i, T::zero()), v);
        let cells = [i.checked_sub(1), if i + 1 < self.f.len() { Some(i) } else { None }];
        for c in cells.into_iter().flatten() {
            let p = self.cell(c);
            // critical points of the cubic: 3p₃s² + 2p₂s + p₁ = 0
            let (qa, qb, qc) = (lit::<T>(3.0) * p[3], lit::<T>(2.0) * p[2], p[1]);
            let mut roots = Vec::new();
            if qa.abs() > T::epsilon() * (qb.abs() + qc.abs()) {
                let disc = qb * qb - lit::<T>(4.0) * qa * qc;
                if disc >= T::zero() {
                    let r = disc.sqrt();
                    roots.push((-qb + r) / (lit::<T>(2.0) * qa));
                    roots.push((-qb - r) / (lit::<T>(2.0) * qa));
                }
            } else if qb != T::zero() {
                roots.push(-qc / qb);
            }
            for s in roots {
                if s > T::zero() && s < T::one() {
                    let val = Self::eval_cell(&p, s);
                    if val > best.1 {
                        best = (self.time(c, s), val);
                    }
                }
            }
        }
        best
    }
}

/// `ω_b = ∫₀^∞ |H(jω)| dω / (π H(0))`.
pub fn bandwidth_integral<T: Real>(sys: &RationalSystem<T>) -> Result<T> {
    let r = sys.relative_degree();
    if r < 2 {
        return Err(Error::NonIntegrable { relative_degree: r });
    }
    let k = sys.dc_gain();
    if k == T::zero() {
        return Err(Error::ZeroDcGain);
    }
    let scale = sys
        .poles()
        .iter()
        .chain(sys.zeros().iter())
        .fold(T::zero(), |m, p| m.max(p.norm()))
        .max(T::min_positive_value());
    let omega_split = scale * lit(4.0);
    let tol = lit::<T>(1e-10).max(T::epsilon() * lit(1e3));
    let mag = |w: T| sys.freq_response(w).norm();
    let mut head = T::zero();
    let mut lo = T::zero();
    // separate pieces keep narrow resonances from being stepped over
    let mut edges: Vec<T> = sys.poles().iter().map(|p| p.im.abs()).filter(|&w| w > T::zero()).collect();
    edges.push(omega_split);
    edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for hi in edges {
        if hi > lo {
            head = head + integrate_adaptive(mag, lo, hi, tol, 4000)?;
            lo = hi;
        }
    }
    // ω = Ω/u maps (Ω, ∞) onto (0, 1]
    let tail = integrate_adaptive(|u: T| mag(omega_split / u) * omega_split / (u * u), T::zero(), T::one(), tol, 4000)?;
    Ok((head + tail) / (T::PI() * k.abs()))
}

/// First frequency where `|H(jω)|` drops below `|H(0)|/√2`.
pub fn bandwidth_3db<T: Real>(sys: &RationalSystem<T>, omega_max: Option<T>) -> Result<T> {
    let k = sys.dc_gain().abs();
    if k == T::zero() {
        return Err(Error::ZeroDcGain);
    }
    let scale = sys.poles().iter().fold(T::zero(), |m, p| m.max(p.norm())).max(lit(1e-12));
    let hi = omega_max.unwrap_or(scale * lit(1e6));
    let thr = k / lit::<T>(2.0).sqrt();
    let below = |w: T| sys.freq_response(w).norm() < thr;
    let per_decade = 64.0;
    let mut lo = (scale * lit(1e-6)).min(hi * lit(1e-6));
    let ratio = lit::<T>(10f64.powf(1.0 / per_decade));
    if below(lo) {
        return Err(invalid("system", "magnitude is already below -3 dB at the lowest scanned frequency"));
    }
    while lo < hi {
        let next = (lo * ratio).min(hi);
        if below(next) {
            let (mut a, mut b) = (lo, next);
            for _ in 0..200 {
                let m = (a + b) / lit(2.0);
                if below(m) {
                    b = m;
                } else {
                    a = m;
                }
                if b - a <= b * lit(1e-13) {
                    break;
                }
            }
            return Ok((a + b) / lit(2.0));
        }
        lo = next;
    }
    Err(Error::NoCrossing { omega_max: to_f64(hi) })
}

/// Slope rise time times integral bandwidth, with the textbook 10–90 % /
/// −3 dB product alongside for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiseBandwidth<T> {
    pub t_r_slope: T,
    pub omega_b: T,
    pub product: T,
    pub t_r_1090: T,
    pub omega_3db: Option<T>,
    pub rule_of_thumb: Option<T>,
}

pub fn rise_bandwidth_product<T: Real>(sys: &RationalSystem<T>) -> Result<RiseBandwidth<T>> {
    let m = step_metrics(sys)?;
    let omega_b = bandwidth_integral(sys)?;
    let omega_3db = bandwidth_3db(sys, None).ok();
    Ok(RiseBandwidth {
        t_r_slope: m.t_r_slope,
        omega_b,
        product: m.t_r_slope * omega_b,
        t_r_1090: m.t_r_1090,
        omega_3db,
        rule_of_thumb: omega_3db.map(|w| w * m.t_r_1090),
    })
}

/// Underdamped `ω₀² / (s² + 2ζω₀ s + ω₀²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecondOrderParams<T> {
    pub zeta: T,
    pub omega0: T,
}

impl<T: Real> SecondOrderParams<T> {
    pub fn new(zeta: T, omega0: T) -> Result<Self> {
        if !(zeta > T::zero() && zeta < T::one()) {
            return Err(invalid("zeta", format!("damping ratio must lie in (0, 1), got {zeta}")));
        }
        if !(omega0 > T::zero()) || !omega0.is_finite() {
            return Err(invalid("omega0", format!("natural frequency must be positive, got {omega0}")));
        }
        Ok(Self { zeta, omega0 })
    }

    pub fn system(&self) -> RationalSystem<T> {
        let w2 = self.omega0 * self.omega0;
        RationalSystem::new(vec![w2], vec![w2, lit::<T>(2.0) * self.zeta * self.omega0, T::one()])
            .expect("validated parameters give a proper system")
    }

    fn damped(&self) -> T {
        (T::one() - self.zeta * self.zeta).sqrt()
    }

    /// `π / (ω₀ √(1−ζ²))`.
    pub fn peak_time(&self) -> T {
        T::PI() / (self.omega0 * self.damped())
    }

    /// `exp(−πζ / √(1−ζ²))`.
    pub fn overshoot(&self) -> T {
        (-T::PI() * self.zeta / self.damped()).exp()
    }
}

/// 0→100 % rise time `(π − atan(√(1−ζ²)/ζ)) / (ω₀ √(1−ζ²))`.
pub fn second_order_rise<T: Real>(p: &SecondOrderParams<T>) -> T {
    let d = p.damped();
    (T::PI() - (d / p.zeta).atan()) / (p.omega0 * d)
}
