//! Time–frequency limits on transient performance.
//!
//! The crate computes the prolate spheroidal eigenproblem of the sinc kernel,
//! measures how a signal's energy concentrates in a time slot and a frequency
//! band, and turns those measures into feasibility checks for step-response
//! specifications of linear systems.
//!
//! All numerics are generic over [`scalar::Real`] (`f32` or `f64`). The
//! aliases below fix the scalar for the common `f64` case.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod concentration;
pub mod corpus;
pub mod error;
pub mod feasibility;
pub mod figures;
pub mod gaussian;
pub mod linalg;
pub mod lti;
pub mod pswf;
pub mod quadrature;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Signal = concentration::SampledSignal<f64>;
pub type Signal32 = concentration::SampledSignal<f32>;
pub type Spectrum = concentration::SampledSpectrum<f64>;
pub type Pair = concentration::ConcentrationPair<f64>;
pub type Variances = concentration::VarianceStats<f64>;
pub type Prolate = pswf::ProlateSpectrum<f64>;
pub type Prolate32 = pswf::ProlateSpectrum<f32>;
pub type Tbp = pswf::TimeBandwidthProduct<f64>;
pub type Spec = feasibility::SpecSheet<f64>;
pub type Verdict = feasibility::Verdict<f64>;
pub type Extremal = feasibility::ExtremalSignal<f64>;
pub type Gaussian = gaussian::GaussianDesign<f64>;
pub type System = lti::RationalSystem<f64>;
pub type System32 = lti::RationalSystem<f32>;
pub type Metrics = lti::StepMetrics<f64>;
pub type SecondOrder = lti::SecondOrderParams<f64>;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;
