//! Gaussian impulse responses: the monotone-step design that attains
//! Heisenberg equality.
//!
//! `h(t) = 2√(a/π) e^{-at²}` integrates to one over `t ≥ 0`, giving the step
//! response `u(t) = erf(√a t)`. The frequency spread follows the classical
//! convention `σ_ω = √(2a)`, which is the standard deviation of
//! `ĥ(ω) = 2e^{-ω²/4a}` read as a density.

use serde::{Deserialize, Serialize};
use statrs::function::erf::{erf, erf_inv};

use crate::concentration::SampledSignal;
use crate::error::{invalid, Result};
use crate::scalar::{lit, to_f64, Real};

/// `erfinv(0.9) − erfinv(0.1)`: the 10–90 % rise time at `a = 1`.
pub fn rise_constant() -> f64 {
    erf_inv(0.9) - erf_inv(0.1)
}

/// `erfinv(0.97)`: the 3 % settling time at `a = 1`.
pub fn settling_constant() -> f64 {
    erf_inv(0.97)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianDesign<T> {
    a: T,
}

/// Design target accepted by [`design_from`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "target", content = "value")]
pub enum DesignTarget<T> {
    RiseTime(T),
    SettlingTime(T),
    FreqStd(T),
}

impl<T: Real> GaussianDesign<T> {
    pub fn new(a: T) -> Result<Self> {
        if !(a > T::zero()) || !a.is_finite() {
            return Err(invalid("a", format!("must be positive and finite, got {a}")));
        }
        Ok(Self { a })
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn impulse(&self, t: T) -> T {
        lit::<T>(2.0) * (self.a / T::PI()).sqrt() * (-self.a * t * t).exp()
    }

    /// `erf(√a t)`, clamped to zero for `t < 0`.
    pub fn step(&self, t: T) -> T {
        if t <= T::zero() {
            return T::zero();
        }
        lit(erf(to_f64(self.a.sqrt() * t)))
    }

    /// Closed-form transform `2e^{-ω²/4a}` of the two-sided impulse.
    pub fn transform(&self, omega: T) -> T {
        lit::<T>(2.0) * (-omega * omega / (lit::<T>(4.0) * self.a)).exp()
    }

    pub fn rise_time(&self) -> T {
        lit::<T>(rise_constant()) / self.a.sqrt()
    }

    pub fn settling_time(&self) -> T {
        lit::<T>(settling_constant()) / self.a.sqrt()
    }

    pub fn freq_std(&self) -> T {
        (lit::<T>(2.0) * self.a).sqrt()
    }

    /// `(t_r σ_ω, t_s σ_ω)`; both are independent of `a`.
    pub fn products(&self) -> (T, T) {
        let s = self.freq_std();
        (self.rise_time() * s, self.settling_time() * s)
    }

    /// Two-sided impulse on `[-span, span]` with `span = k/√a`.
    pub fn sample_impulse(&self, widths: T, n: usize) -> Result<SampledSignal<T>> {
        let span = widths / self.a.sqrt();
        SampledSignal::over(-span, span, n, |t| self.impulse(t))
    }

    /// Step response on `[0, t_end]`.
    pub fn sample_step(&self, t_end: T, n: usize) -> Result<SampledSignal<T>> {
        SampledSignal::over(T::zero(), t_end, n, |t| self.step(t))
    }
}

/// Inverts the closed forms for `a`.
pub fn design_from<T: Real>(target: DesignTarget<T>) -> Result<GaussianDesign<T>> {
    let (name, v) = match target {
        DesignTarget::RiseTime(v) => ("rise_time", v),
        DesignTarget::SettlingTime(v) => ("settling_time", v),
        DesignTarget::FreqStd(v) => ("freq_std", v),
    };
    if !(v > T::zero()) || !v.is_finite() {
        return Err(invalid(name, format!("must be positive and finite, got {v}")));
    }
    let a = match target {
        DesignTarget::RiseTime(t) => (lit::<T>(rise_constant()) / t).powi(2),
        DesignTarget::SettlingTime(t) => (lit::<T>(settling_constant()) / t).powi(2),
        DesignTarget::FreqStd(s) => s * s / lit(2.0),
    };
    GaussianDesign::new(a)
}
