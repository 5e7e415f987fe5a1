//! Time and frequency concentration measures of sampled signals.
//!
//! Every integral over a [`SampledSignal`] or [`SampledSpectrum`] uses the
//! composite trapezoid rule on its uniform grid. Window edges that fall
//! between samples are handled by integrating the linear interpolant of the
//! integrand, so a window covering the whole grid reproduces the cached norms
//! exactly.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::scalar::{from_usize, lit, to_f64, Real};

/// Minimum number of samples in a signal.
pub const MIN_SAMPLES: usize = 16;
/// Edge-to-peak ratio above which [`transform`] logs a warning.
pub const TRANSFORM_DECAY_WARN: f64 = 1e-8;
/// Edge-to-peak ratio above which [`variance_stats`] rejects a signal.
pub const VARIANCE_DECAY_LIMIT: f64 = 1e-6;

/// Real signal on a uniform time grid `t_i = t0 + i dt`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledSignal<T> {
    t0: T,
    dt: T,
    values: Vec<T>,
    energy_l2: T,
    norm_l1: T,
}

impl<T: Real> SampledSignal<T> {
    pub fn new(t0: T, dt: T, values: Vec<T>) -> Result<Self> {
        if !(dt > T::zero()) || !dt.is_finite() {
            return Err(invalid("dt", format!("sample spacing must be positive, got {dt}")));
        }
        if !t0.is_finite() {
            return Err(invalid("t0", "start time must be finite"));
        }
        if values.len() < MIN_SAMPLES {
            return Err(invalid("values", format!("need at least {MIN_SAMPLES} samples, got {}", values.len())));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(invalid("values", "samples must be finite"));
        }
        let squares: Vec<T> = values.iter().map(|&v| v * v).collect();
        let abs: Vec<T> = values.iter().map(|&v| v.abs()).collect();
        let energy_l2 = trapezoid(&squares, dt);
        let norm_l1 = trapezoid(&abs, dt);
        Ok(Self { t0, dt, values, energy_l2, norm_l1 })
    }

    /// Samples `f` at `n` points starting from `t0`.
    pub fn from_fn<F: FnMut(T) -> T>(t0: T, dt: T, n: usize, mut f: F) -> Result<Self> {
        let values = (0..n).map(|i| f(t0 + dt * from_usize(i))).collect();
        Self::new(t0, dt, values)
    }

    /// Samples `f` on `[start, end]` with `n` points (both ends included).
    pub fn over<F: FnMut(T) -> T>(start: T, end: T, n: usize, f: F) -> Result<Self> {
        if n < 2 || !(end > start) {
            return Err(invalid("range", "need end > start and at least two points"));
        }
        let dt = (end - start) / from_usize(n - 1);
        Self::from_fn(start, dt, n, f)
    }

    pub fn t0(&self) -> T {
        self.t0
    }

    pub fn dt(&self) -> T {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn t_end(&self) -> T {
        self.time(self.values.len() - 1)
    }

    #[inline]
    pub fn time(&self, i: usize) -> T {
        self.t0 + self.dt * from_usize(i)
    }

    pub fn times(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.values.len()).map(move |i| self.time(i))
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Cached `E = ∫ h² dt`.
    pub fn energy(&self) -> T {
        self.energy_l2
    }

    /// Cached `E₁ = ∫ |h| dt`.
    pub fn l1_norm(&self) -> T {
        self.norm_l1
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// `max(|h_first|, |h_last|) / max |h|`.
    pub fn edge_ratio(&self) -> T {
        let peak = self.max_abs();
        if peak == T::zero() {
            return T::zero();
        }
        let first = self.values[0].abs();
        let last = self.values[self.values.len() - 1].abs();
        first.max(last) / peak
    }

    /// `∫_lo^hi h dt` (signed).
    pub fn integral(&self, lo: T, hi: T) -> T {
        integrate_window(&self.values, self.t0, self.dt, lo, hi)
    }

    /// `∫_lo^hi h² dt`.
    pub fn energy_in(&self, lo: T, hi: T) -> T {
        let sq: Vec<T> = self.values.iter().map(|&v| v * v).collect();
        integrate_window(&sq, self.t0, self.dt, lo, hi)
    }

    /// `∫_lo^hi |h| dt`.
    pub fn l1_in(&self, lo: T, hi: T) -> T {
        let abs: Vec<T> = self.values.iter().map(|&v| v.abs()).collect();
        integrate_window(&abs, self.t0, self.dt, lo, hi)
    }

    /// Same samples with the time axis shifted by `shift`.
    pub fn shifted(&self, shift: T) -> Self {
        Self { t0: self.t0 + shift, ..self.clone() }
    }

    /// Same time axis, samples multiplied by `k`.
    pub fn scaled(&self, k: T) -> Self {
        let values = self.values.iter().map(|&v| v * k).collect();
        Self::new(self.t0, self.dt, values).expect("scaling preserves validity")
    }

    /// Parses whitespace- or comma-separated `(time, value)` rows. Blank
    /// lines and `#` comments are skipped; times must be uniformly spaced.
    pub fn from_two_column(text: &str) -> Result<Self> {
        let mut t = Vec::new();
        let mut v = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> =
                line.split(|ch: char| ch == ',' || ch.is_whitespace()).filter(|s| !s.is_empty()).collect();
            if cols.len() != 2 {
                // tolerate a header row
                if t.is_empty() && cols.iter().any(|c| c.parse::<f64>().is_err()) {
                    continue;
                }
                return Err(invalid("signal", format!("line {}: expected two columns", lineno + 1)));
            }
            let parse = |s: &str| {
                s.parse::<f64>().map_err(|_| invalid("signal", format!("line {}: `{s}` is not a number", lineno + 1)))
            };
            match (parse(cols[0]), parse(cols[1])) {
                (Ok(a), Ok(b)) => {
                    t.push(a);
                    v.push(lit::<T>(b));
                }
                (Err(e), _) | (_, Err(e)) => {
                    if t.is_empty() {
                        continue;
                    }
                    return Err(e);
                }
            }
        }
        if t.len() < MIN_SAMPLES {
            return Err(invalid("signal", format!("need at least {MIN_SAMPLES} rows, got {}", t.len())));
        }
        let dt = (t[t.len() - 1] - t[0]) / (t.len() - 1) as f64;
        for (i, &ti) in t.iter().enumerate() {
            let expected = t[0] + dt * i as f64;
            if (ti - expected).abs() > 1e-6 * dt {
                return Err(invalid("signal", format!("row {} breaks the uniform time grid", i + 1)));
            }
        }
        Self::new(lit(t[0]), lit(dt), v)
    }

    /// Two-column `time,value` text with a header row.
    pub fn to_two_column(&self) -> String {
        let mut out = String::from("t,h\n");
        for (t, v) in self.times().zip(&self.values) {
            out.push_str(&format!("{},{}\n", to_f64(t), to_f64(*v)));
        }
        out
    }
}

/// Composite trapezoid rule on a uniform grid.
pub fn trapezoid<T: Real>(samples: &[T], dx: T) -> T {
    match samples.len() {
        0 | 1 => T::zero(),
        n => {
            let inner: T = samples[1..n - 1].iter().copied().sum();
            dx * (inner + (samples[0] + samples[n - 1]) / lit(2.0))
        }
    }
}

/// Integral over `[lo, hi]` of the piecewise-linear interpolant of `g`,
/// sampled at `x0 + k dx`. Zero outside the grid.
pub fn integrate_window<T: Real>(g: &[T], x0: T, dx: T, lo: T, hi: T) -> T {
    let n = g.len();
    if n < 2 {
        return T::zero();
    }
    let end = x0 + dx * from_usize(n - 1);
    let lo = lo.max(x0);
    let hi = hi.min(end);
    if !(hi > lo) {
        return T::zero();
    }
    let half = lit::<T>(0.5);
    let cell = |x: T| -> usize {
        let s = ((x - x0) / dx).floor();
        s.to_usize().unwrap_or(0).min(n - 2)
    };
    let interp = |x: T| -> T {
        let k = cell(x);
        let f = (x - x0) / dx - from_usize(k);
        g[k] * (T::one() - f) + g[k + 1] * f
    };
    let node = |k: usize| x0 + dx * from_usize(k);
    let ka = cell(lo);
    let kb = cell(hi);
    if ka == kb {
        return (hi - lo) * (interp(lo) + interp(hi)) * half;
    }
    let mut total = (node(ka + 1) - lo) * (interp(lo) + g[ka + 1]) * half;
    for k in ka + 1..kb {
        total = total + dx * (g[k] + g[k + 1]) * half;
    }
    total + (hi - node(kb)) * (g[kb] + interp(hi)) * half
}

/// Complex samples of `ĥ(ω) = ∫ h(t) e^{-iωt} dt` on a uniform frequency grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledSpectrum<T> {
    omega0: T,
    domega: T,
    values: Vec<Complex<T>>,
}

impl<T: Real> SampledSpectrum<T> {
    pub fn omega0(&self) -> T {
        self.omega0
    }

    pub fn domega(&self) -> T {
        self.domega
    }

    pub fn omega_max(&self) -> T {
        self.omega(self.values.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn omega(&self, k: usize) -> T {
        self.omega0 + self.domega * from_usize(k)
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    /// `|ĥ(ω_k)|²`.
    pub fn power(&self) -> Vec<T> {
        self.values.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn magnitude(&self) -> Vec<T> {
        self.values.iter().map(|z| z.norm()).collect()
    }

    /// `∫ |ĥ|² dω` over the sampled band.
    pub fn power_integral(&self) -> T {
        trapezoid(&self.power(), self.domega)
    }

    /// `(1/2π) ∫ |ĥ|² dω`, which equals the signal energy by Parseval.
    pub fn energy(&self) -> T {
        self.power_integral() / (lit::<T>(2.0) * T::PI())
    }

    /// `∫ |ĥ| dω` over the sampled band.
    pub fn l1_norm(&self) -> T {
        trapezoid(&self.magnitude(), self.domega)
    }
}

/// Direct trapezoid evaluation of the Fourier integral on `n_freq` points
/// spanning `[-omega_max, omega_max]`.
pub fn transform<T: Real>(h: &SampledSignal<T>, omega_max: T, n_freq: usize) -> Result<SampledSpectrum<T>> {
    if h.energy() == T::zero() {
        return Err(Error::ZeroEnergy);
    }
    if !(omega_max > T::zero()) || !omega_max.is_finite() {
        return Err(invalid("omega_max", "must be positive and finite"));
    }
    if n_freq < 2 {
        return Err(invalid("n_freq", "need at least two frequency samples"));
    }
    let nyquist = T::PI() / h.dt();
    if omega_max > nyquist * (T::one() + lit(1e-12)) {
        return Err(Error::GridTooCoarse { omega_max: to_f64(omega_max), nyquist: to_f64(nyquist) });
    }
    let ratio = h.edge_ratio();
    if ratio > lit(TRANSFORM_DECAY_WARN) {
        log::warn!("signal edges are at {:e} of peak; transform truncates the tails", to_f64(ratio));
    }
    let domega = lit::<T>(2.0) * omega_max / from_usize(n_freq - 1);
    let omega0 = -omega_max;
    let n = h.len();
    let weights: Vec<T> =
        h.values().iter().enumerate().map(|(i, &v)| if i == 0 || i == n - 1 { v * lit(0.5) } else { v }).collect();
    let t0 = h.t0();
    let dt = h.dt();
    let values = (0..n_freq)
        .into_par_iter()
        .map(|k| {
            let omega = omega0 + domega * from_usize(k);
            fourier_sum(&weights, t0, dt, omega) * dt
        })
        .collect();
    Ok(SampledSpectrum { omega0, domega, values })
}

/// `Σ_i w_i e^{-iω t_i}` by phasor recurrence, re-anchored every 64 terms.
fn fourier_sum<T: Real>(weights: &[T], t0: T, dt: T, omega: T) -> Complex<T> {
    const ANCHOR: usize = 64;
    let step = Complex::from_polar(T::one(), -omega * dt);
    let mut acc = Complex::new(T::zero(), T::zero());
    for (block, chunk) in weights.chunks(ANCHOR).enumerate() {
        let t = t0 + dt * from_usize(block * ANCHOR);
        let mut z = Complex::from_polar(T::one(), -omega * t);
        for &w in chunk {
            acc = acc + z * w;
            z = z * step;
        }
    }
    acc
}

/// [`transform`] up to the Nyquist frequency with a frequency spacing fine
/// enough (`≤ π / duration`) that `|ĥ|²` integrals are alias-free.
pub fn transform_auto<T: Real>(h: &SampledSignal<T>) -> Result<SampledSpectrum<T>> {
    transform(h, T::PI() / h.dt(), 2 * h.len() + 1)
}

/// `∫_lo^hi h² dt / E`.
pub fn time_concentration<T: Real>(h: &SampledSignal<T>, t_lo: T, t_hi: T) -> Result<T> {
    check_window(t_lo, t_hi)?;
    if h.energy() == T::zero() {
        return Err(Error::ZeroEnergy);
    }
    Ok(clamp_unit(h.energy_in(t_lo, t_hi) / h.energy()))
}

/// `∫_lo^hi |ĥ|² dω / ∫ |ĥ|² dω`.
pub fn freq_concentration<T: Real>(s: &SampledSpectrum<T>, w_lo: T, w_hi: T) -> Result<T> {
    check_window(w_lo, w_hi)?;
    let p = s.power();
    let total = trapezoid(&p, s.domega);
    if total == T::zero() {
        return Err(Error::ZeroEnergy);
    }
    Ok(clamp_unit(integrate_window(&p, s.omega0, s.domega, w_lo, w_hi) / total))
}

/// `∫_lo^hi |h| dt / ∫ |h| dt`.
pub fn l1_fraction_time<T: Real>(h: &SampledSignal<T>, t_lo: T, t_hi: T) -> Result<T> {
    check_window(t_lo, t_hi)?;
    if h.l1_norm() == T::zero() {
        return Err(Error::ZeroL1Norm);
    }
    Ok(clamp_unit(h.l1_in(t_lo, t_hi) / h.l1_norm()))
}

/// `∫_lo^hi |ĥ| dω / ∫ |ĥ| dω`.
pub fn l1_fraction_freq<T: Real>(s: &SampledSpectrum<T>, w_lo: T, w_hi: T) -> Result<T> {
    check_window(w_lo, w_hi)?;
    let m = s.magnitude();
    let total = trapezoid(&m, s.domega);
    if total == T::zero() {
        return Err(Error::ZeroL1Norm);
    }
    Ok(clamp_unit(integrate_window(&m, s.omega0, s.domega, w_lo, w_hi) / total))
}

fn check_window<T: Real>(lo: T, hi: T) -> Result<()> {
    if !(lo <= hi) {
        return Err(Error::InvalidWindow { lo: to_f64(lo), hi: to_f64(hi) });
    }
    Ok(())
}

fn clamp_unit<T: Real>(x: T) -> T {
    x.max(T::zero()).min(T::one())
}

/// Root-energy fractions `(α, β)` inside a time slot and a frequency band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationPair<T> {
    pub alpha: T,
    pub beta: T,
}

impl<T: Real> ConcentrationPair<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        let unit = |x: T| x >= T::zero() && x <= T::one();
        if !unit(alpha) {
            return Err(invalid("alpha", format!("must lie in [0, 1], got {alpha}")));
        }
        if !unit(beta) {
            return Err(invalid("beta", format!("must lie in [0, 1], got {beta}")));
        }
        Ok(Self { alpha, beta })
    }

    /// Measures `α` on `[t_lo, t_hi]` and `β` on the symmetric band `(-W, W)`.
    pub fn measure(h: &SampledSignal<T>, s: &SampledSpectrum<T>, t_lo: T, t_hi: T, band_edge: T) -> Result<Self> {
        let a2 = time_concentration(h, t_lo, t_hi)?;
        let b2 = freq_concentration(s, -band_edge, band_edge)?;
        Self::new(a2.sqrt(), b2.sqrt())
    }
}

/// First and second moments of `|h|²` and `|ĥ|²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VarianceStats<T> {
    pub mean_time: T,
    pub mean_freq: T,
    pub var_time: T,
    pub var_freq: T,
}

/// Means and variances of the normalised densities `|h|²/E` and
/// `|ĥ|²/∫|ĥ|²`.
pub fn variance_stats<T: Real>(h: &SampledSignal<T>, s: &SampledSpectrum<T>) -> Result<VarianceStats<T>> {
    if h.energy() == T::zero() {
        return Err(Error::ZeroEnergy);
    }
    let ratio = h.edge_ratio();
    if ratio > lit(VARIANCE_DECAY_LIMIT) {
        return Err(Error::NonDecayingTails { ratio: to_f64(ratio), limit: VARIANCE_DECAY_LIMIT });
    }
    let sq: Vec<T> = h.values().iter().map(|&v| v * v).collect();
    let (mean_time, var_time) = moments(&sq, h.t0(), h.dt());
    let p = s.power();
    if trapezoid(&p, s.domega) == T::zero() {
        return Err(Error::ZeroEnergy);
    }
    let (mean_freq, var_freq) = moments(&p, s.omega0, s.domega);
    Ok(VarianceStats { mean_time, mean_freq, var_time, var_freq })
}

fn moments<T: Real>(density: &[T], x0: T, dx: T) -> (T, T) {
    let mass = trapezoid(density, dx);
    let first: Vec<T> = density.iter().enumerate().map(|(i, &d)| d * (x0 + dx * from_usize(i))).collect();
    let mean = trapezoid(&first, dx) / mass;
    let second: Vec<T> = density
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let x = x0 + dx * from_usize(i) - mean;
            d * x * x
        })
        .collect();
    (mean, trapezoid(&second, dx) / mass)
}

/// `σ_t² σ_ω²`; at least 1/4 for every finite-energy signal.
pub fn heisenberg_product<T: Real>(v: &VarianceStats<T>) -> T {
    v.var_time * v.var_freq
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::erf::erf;
    use std::f64::consts::PI;

    fn gaussian(a: f64, shift: f64) -> SampledSignal<f64> {
        let half = 12.0 / a.sqrt();
        SampledSignal::over(-half + shift, half + shift, 1601, |t| {
            2.0 * (a / PI).sqrt() * (-a * (t - shift).powi(2)).exp()
        })
        .unwrap()
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(SampledSignal::new(0.0, 0.0, vec![1.0; 20]).is_err());
        assert!(SampledSignal::new(0.0, 0.1, vec![1.0; 5]).is_err());
        assert!(SampledSignal::new(0.0, 0.1, vec![f64::NAN; 20]).is_err());
    }

    #[test]
    fn cached_norms_match_reintegration() {
        let h = gaussian(1.0, 0.3);
        let e = h.energy_in(-1e9, 1e9);
        assert!((e - h.energy()).abs() <= 1e-10 * h.energy());
        let l1 = h.l1_in(h.t0(), h.t_end());
        assert!((l1 - h.l1_norm()).abs() <= 1e-10 * h.l1_norm());
        // ∫ h = 2 for the two-sided normalised Gaussian
        assert!((h.integral(-100.0, 100.0) - 2.0).abs() < 1e-10);
    }

    #[test]
    fn window_integral_is_exact_for_linear_integrand() {
        let g: Vec<f64> = (0..20).map(|k| 3.0 * k as f64 * 0.5 + 1.0).collect();
        // f(x) = 3x + 1 on x = 0, 0.5, ...
        let got = integrate_window(&g, 0.0, 0.5, 0.3, 7.7);
        let f = |x: f64| 1.5 * x * x + x;
        assert!((got - (f(7.7) - f(0.3))).abs() < 1e-12);
        assert_eq!(integrate_window(&g, 0.0, 0.5, 2.0, 2.0), 0.0);
        assert_eq!(integrate_window(&g, 0.0, 0.5, 20.0, 30.0), 0.0);
    }

    #[test]
    fn gaussian_transform_matches_closed_form() {
        let h = gaussian(1.0, 0.0);
        let s = transform(&h, 10.0, 201).unwrap();
        for (k, z) in s.values().iter().enumerate() {
            let w = s.omega(k);
            let want = 2.0 * (-w * w / 4.0).exp();
            assert!((z.re - want).abs() < 1e-6 && z.im.abs() < 1e-6, "w = {w}");
        }
        assert!((s.energy() - h.energy()).abs() < 1e-6 * h.energy());
    }

    #[test]
    fn time_shift_only_changes_phase() {
        let a = gaussian(1.0, 0.0);
        let b = a.shifted(1.7);
        let sa = transform(&a, 8.0, 161).unwrap();
        let sb = transform(&b, 8.0, 161).unwrap();
        for (za, zb) in sa.values().iter().zip(sb.values()) {
            assert!((za.norm() - zb.norm()).abs() < 1e-8);
        }
    }

    #[test]
    fn transform_guards() {
        let zero = SampledSignal::new(0.0, 0.1, vec![0.0; 32]).unwrap();
        assert_eq!(transform(&zero, 1.0, 16), Err(Error::ZeroEnergy));
        let h = gaussian(1.0, 0.0);
        let nyq = PI / h.dt();
        assert!(matches!(transform(&h, 1.01 * nyq, 64), Err(Error::GridTooCoarse { .. })));
    }

    #[test]
    fn time_concentration_examples() {
        let h = gaussian(1.0, 0.0);
        assert!((time_concentration(&h, -1e3, 1e3).unwrap() - 1.0).abs() < 1e-15);
        // erf(√(2a) T/2) with a = 1, T = 2
        let got = time_concentration(&h, -1.0, 1.0).unwrap();
        assert!((got - erf(2f64.sqrt())).abs() < 5e-5, "{got}");
        assert_eq!(time_concentration(&h, 0.4, 0.4).unwrap(), 0.0);
        assert!(matches!(time_concentration(&h, 1.0, -1.0), Err(Error::InvalidWindow { .. })));
    }

    #[test]
    fn freq_concentration_examples() {
        let h = gaussian(1.0, 0.0);
        let s = transform(&h, 12.0, 481).unwrap();
        assert!((freq_concentration(&s, -100.0, 100.0).unwrap() - 1.0).abs() < 1e-15);
        // |ĥ|² = 4 e^{-ω²/2}: fraction in [-2, 2] is erf(2/√2)
        let got = freq_concentration(&s, -2.0, 2.0).unwrap();
        assert!((got - erf(2.0 / 2f64.sqrt())).abs() < 5e-5, "{got}");
        assert_eq!(freq_concentration(&s, 1.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn l1_fractions() {
        let h = gaussian(1.0, 0.0);
        assert!((l1_fraction_time(&h, -1e3, 1e3).unwrap() - 1.0).abs() < 1e-15);
        let half = l1_fraction_time(&h, 0.0, 1.0).unwrap();
        let full = l1_fraction_time(&h, -1.0, 1.0).unwrap();
        assert!((2.0 * half - full).abs() < 1e-12);
        let s = transform(&h, 12.0, 481).unwrap();
        assert!((l1_fraction_freq(&s, -100.0, 100.0).unwrap() - 1.0).abs() < 1e-15);
        let zero = SampledSignal::new(0.0, 0.1, vec![0.0; 32]).unwrap();
        assert_eq!(l1_fraction_time(&zero, 0.0, 1.0), Err(Error::ZeroL1Norm));
    }

    #[test]
    fn l1_fraction_recovers_step_value() {
        // causal positive h: α₁' E₁ = ∫₀ᵀ h = u(T)
        let h = SampledSignal::over(0.0, 40.0, 8001, |t: f64| t * (-t).exp()).unwrap();
        let t_cut = 1.5;
        let a1 = l1_fraction_time(&h, 0.0, t_cut).unwrap();
        let step = 1.0 - (1.0 + t_cut) * (-t_cut).exp();
        let got = a1 * h.l1_norm();
        assert!((got - step).abs() < 1e-5, "{got} vs {step}");
    }

    #[test]
    fn gaussian_variances() {
        let h = gaussian(1.0, 0.0);
        let s = transform_auto(&h).unwrap();
        let v = variance_stats(&h, &s).unwrap();
        // energy density |ĥ|² = 4e^{-ω²/2} has variance a = 1
        assert!((v.var_freq - 1.0).abs() < 1e-6, "{}", v.var_freq);
        assert!((v.var_time - 0.25).abs() < 1e-6);
        assert!((heisenberg_product(&v) - 0.25).abs() < 1e-6);

        let h = gaussian(0.5, 0.0);
        let s = transform_auto(&h).unwrap();
        let v = variance_stats(&h, &s).unwrap();
        assert!((v.var_time - v.var_freq).abs() < 1e-6);
    }

    #[test]
    fn shift_moves_mean_not_variance() {
        let a = gaussian(2.0, 0.0);
        let b = a.shifted(3.0);
        let va = variance_stats(&a, &transform_auto(&a).unwrap()).unwrap();
        let vb = variance_stats(&b, &transform_auto(&b).unwrap()).unwrap();
        assert!((vb.mean_time - va.mean_time - 3.0).abs() < 1e-9);
        assert!((vb.var_time - va.var_time).abs() < 1e-9);
    }

    #[test]
    fn heisenberg_exceeds_quarter_for_non_gaussians() {
        let two =
            SampledSignal::over(-15.0, 15.0, 3001, |t: f64| (-(t - 3.0).powi(2)).exp() + (-(t + 3.0).powi(2)).exp())
                .unwrap();
        let v = variance_stats(&two, &transform_auto(&two).unwrap()).unwrap();
        assert!(heisenberg_product(&v) > 0.25 * 1.5);

        // rectangle: frequency variance is dominated by the 1/ω² tail
        let rect = SampledSignal::over(-4.0, 4.0, 1601, |t: f64| if t.abs() < 1.0 { 1.0 } else { 0.0 }).unwrap();
        let v = variance_stats(&rect, &transform_auto(&rect).unwrap()).unwrap();
        assert!(heisenberg_product(&v) > 10.0, "{}", heisenberg_product(&v));
    }

    #[test]
    fn variance_rejects_non_decaying_tails() {
        let h = SampledSignal::over(0.0, 5.0, 501, |t: f64| (-t).exp()).unwrap();
        let s = transform_auto(&h).unwrap();
        assert!(matches!(variance_stats(&h, &s), Err(Error::NonDecayingTails { .. })));
    }

    #[test]
    fn two_column_round_trip() {
        let h = gaussian(1.0, 0.0);
        let text = h.to_two_column();
        let back = SampledSignal::<f64>::from_two_column(&text).unwrap();
        assert_eq!(back.len(), h.len());
        assert!((back.dt() - h.dt()).abs() < 1e-12);
        assert!((back.energy() - h.energy()).abs() < 1e-12);
        let bad = "0 1\n0.1 2\n0.3 3\n";
        assert!(SampledSignal::<f64>::from_two_column(bad).is_err());
    }

    #[test]
    fn pair_validation() {
        assert!(ConcentrationPair::new(1.2, 0.5).is_err());
        assert!(ConcentrationPair::new(0.5, -0.1).is_err());
        assert!(ConcentrationPair::new(1.0, 0.0).is_ok());
    }
}
