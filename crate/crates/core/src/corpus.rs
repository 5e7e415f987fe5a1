//! Seeded random test corpora: finite-energy signals and stable rational
//! systems. The same seed and [`CORPUS_VERSION`] always give the same corpus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::concentration::SampledSignal;
use crate::error::Result;
use crate::lti::RationalSystem;
use crate::pswf::{compute_spectrum, TimeBandwidthProduct};
use crate::scalar::{lit, Real};

/// Bumped whenever the generators change their output for a given seed.
pub const CORPUS_VERSION: u32 = 1;
/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignalKind {
    GaussianMixture,
    DampedSine,
    TruncatedProlate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSignal<T> {
    pub kind: SignalKind,
    pub signal: SampledSignal<T>,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ u64::from(CORPUS_VERSION) << 48)
}

/// `count` signals cycling through the three kinds.
pub fn random_signals<T: Real>(seed: u64, count: usize) -> Result<Vec<CorpusSignal<T>>> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let kind = [SignalKind::GaussianMixture, SignalKind::DampedSine, SignalKind::TruncatedProlate][i % 3];
            let signal = match kind {
                SignalKind::GaussianMixture => gaussian_mixture(&mut r)?,
                SignalKind::DampedSine => damped_sine(&mut r)?,
                SignalKind::TruncatedProlate => truncated_prolate(&mut r)?,
            };
            Ok(CorpusSignal { kind, signal })
        })
        .collect()
}

/// One to three Gaussians with random centres, widths and signed amplitudes.
pub fn gaussian_mixture<T: Real, R: Rng>(r: &mut R) -> Result<SampledSignal<T>> {
    let k = r.random_range(1..=3);
    let comps: Vec<(f64, f64, f64)> = (0..k)
        .map(|_| {
            let amp = r.random_range(0.3..1.0) * if r.random_bool(0.3) { -1.0 } else { 1.0 };
            (amp, r.random_range(-3.0..3.0), r.random_range(0.3..1.5))
        })
        .collect();
    let narrow = comps.iter().map(|c| c.2).fold(f64::INFINITY, f64::min);
    let wide = comps.iter().map(|c| c.2).fold(0.0, f64::max);
    let reach = comps.iter().map(|c| c.1.abs()).fold(0.0, f64::max) + 9.0 * wide;
    let n = ((2.0 * reach) / (narrow / 16.0)).ceil() as usize + 1;
    SampledSignal::over(lit(-reach), lit(reach), n, |t: T| {
        let t = crate::scalar::to_f64(t);
        lit(comps.iter().map(|&(a, m, s)| a * (-((t - m) / s).powi(2) / 2.0).exp()).sum::<f64>())
    })
}

/// Causal `t² e^{-σt} sin(ωt + φ)`, smooth at the origin.
pub fn damped_sine<T: Real, R: Rng>(r: &mut R) -> Result<SampledSignal<T>> {
    let sigma: f64 = r.random_range(0.4..2.0);
    let omega: f64 = r.random_range(0.5..4.0);
    let phi: f64 = r.random_range(0.0..std::f64::consts::TAU);
    let t_end = 45.0 / sigma;
    let dt = (1.0 / sigma).min(1.0 / omega) / 24.0;
    let n = (t_end / dt).ceil() as usize + 1;
    SampledSignal::over(T::zero(), lit(t_end), n, |t: T| {
        let t = crate::scalar::to_f64(t);
        lit(t * t * (-sigma * t).exp() * (omega * t + phi).sin())
    })
}

/// A prolate `ψ_n` (n ≤ 3) on a slot of random width, zero elsewhere, with
/// the same width of zero padding on both sides.
pub fn truncated_prolate<T: Real, R: Rng>(r: &mut R) -> Result<SampledSignal<T>> {
    let c: f64 = r.random_range(0.5..6.0);
    let n = r.random_range(0..=3usize);
    let half: f64 = r.random_range(0.5..2.0);
    let spectrum = compute_spectrum(TimeBandwidthProduct::new(c)?, 3, 64)?;
    let per_half = 600;
    let dt = half / per_half as f64;
    let samples = 6 * per_half + 1;
    let values = (0..samples)
        .map(|i| {
            let x = (-3.0 * half + dt * i as f64) / half;
            if x.abs() <= 1.0 {
                spectrum.eval(n, x).map(lit::<T>)
            } else {
                Ok(T::zero())
            }
        })
        .collect::<Result<Vec<T>>>()?;
    SampledSignal::new(lit(-3.0 * half), lit(dt), values)
}

/// Stable, minimum-phase systems of order 2–6 with relative degree ≥ 2 and
/// unit DC gain. Pole magnitudes lie in `[0.3, 3]`.
pub fn random_systems<T: Real>(seed: u64, count: usize) -> Result<Vec<RationalSystem<T>>> {
    let mut r = rng(seed.wrapping_add(1));
    (0..count).map(|_| random_system(&mut r)).collect()
}

pub fn random_system<T: Real, R: Rng>(r: &mut R) -> Result<RationalSystem<T>> {
    let order = r.random_range(2..=6usize);
    let mut den = vec![1.0];
    let mut left = order;
    while left > 0 {
        if left >= 2 && r.random_bool(0.5) {
            let w: f64 = r.random_range(0.3..3.0);
            let z: f64 = r.random_range(0.1..0.95);
            den = poly_mul(&den, &[w * w, 2.0 * z * w, 1.0]);
            left -= 2;
        } else {
            let p: f64 = r.random_range(0.3..3.0);
            den = poly_mul(&den, &[p, 1.0]);
            left -= 1;
        }
    }
    let zeros = r.random_range(0..=order - 2);
    let mut num = vec![1.0];
    for _ in 0..zeros {
        let z: f64 = r.random_range(0.3..5.0);
        num = poly_mul(&num, &[z, 1.0]);
    }
    let gain = den[0] / num[0];
    RationalSystem::new(num.iter().map(|&c| lit(c * gain)).collect(), den.into_iter().map(lit).collect())
}

/// Product of two ascending-coefficient polynomials.
pub fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
