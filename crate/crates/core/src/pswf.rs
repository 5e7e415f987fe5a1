//! Prolate spheroidal wave functions from the sinc-kernel eigenproblem
//!
//! ```text
//! ∫_{-1}^{1} sin c(x - y) / (π (x - y)) ψ(y) dy = λ ψ(x),   |x| ≤ 1
//! ```
//!
//! The operator is discretised with a Gauss–Legendre Nyström scheme and
//! symmetrised by the `√w` similarity, so the eigenvalues are those of the
//! dense matrix `√w_i K(x_i, x_j) √w_j`. Because the nodes are mirrored and
//! the kernel is even under `(x, y) -> (-x, -y)`, the matrix splits into an
//! even and an odd block which are solved separately; mode parity is then
//! exact rather than approximate.
//!
//! Off-node values come from the Nyström interpolant
//! `ψ(x) = λ⁻¹ Σ_j w_j K(x, x_j) ψ(x_j)`, which is also the band-limited
//! continuation of `ψ` to the whole real line.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linalg::{symmetric_eigen, SymmetricMatrix};
use crate::quadrature::GaussLegendre;
use crate::scalar::{from_usize, lit, to_f64, Real};

/// Smallest accepted quadrature order.
pub const MIN_QUAD_ORDER: usize = 8;
/// Default Nyström quadrature order.
pub const DEFAULT_QUAD_ORDER: usize = 128;
/// Default highest mode index.
pub const DEFAULT_N_MAX: usize = 9;

/// Dimensionless time-bandwidth product `c = W T / 2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TimeBandwidthProduct<T>(T);

impl<T: Real> TimeBandwidthProduct<T> {
    pub fn new(c: T) -> Result<Self> {
        if !(c > T::zero()) || !c.is_finite() {
            return Err(invalid("c", format!("time-bandwidth product must be positive and finite, got {c}")));
        }
        Ok(Self(c))
    }

    /// From a band edge `W` (rad/s) and a time-slot length `T` (s).
    pub fn from_band_and_slot(band_edge: T, slot: T) -> Result<Self> {
        if !(band_edge > T::zero()) || !(slot > T::zero()) {
            return Err(invalid("W/T", "band edge and slot length must be positive"));
        }
        Self::new(band_edge * slot / lit(2.0))
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }
}

/// `K(x, y) = sin(c (x - y)) / (π (x - y))`, with the removable singularity
/// filled in by `c / π`.
#[inline]
pub fn sinc_kernel<T: Real>(c: T, x: T, y: T) -> T {
    let d = x - y;
    if d == T::zero() {
        c / T::PI()
    } else {
        (c * d).sin() / (T::PI() * d)
    }
}

/// `∂K/∂x` at `(x, y)`; zero on the diagonal.
#[inline]
fn sinc_kernel_dx<T: Real>(c: T, x: T, y: T) -> T {
    let d = x - y;
    if d == T::zero() {
        return T::zero();
    }
    let cd = c * d;
    (cd * cd.cos() - cd.sin()) / (T::PI() * d * d)
}

/// Assembles the symmetrised Nyström matrix `√w_i K(x_i, x_j) √w_j` on an
/// order-`quad_order` Gauss–Legendre rule.
pub fn build_kernel<T: Real>(c: TimeBandwidthProduct<T>, quad_order: usize) -> Result<SymmetricMatrix<T>> {
    check_order(quad_order)?;
    let rule = GaussLegendre::<T>::new(quad_order)?;
    Ok(kernel_matrix(c.value(), &rule))
}

fn check_order(quad_order: usize) -> Result<()> {
    if quad_order < MIN_QUAD_ORDER {
        return Err(Error::QuadOrderTooSmall { got: quad_order, min: MIN_QUAD_ORDER });
    }
    Ok(())
}

fn kernel_matrix<T: Real>(c: T, rule: &GaussLegendre<T>) -> SymmetricMatrix<T> {
    let x = rule.nodes();
    let sw: Vec<T> = rule.weights().iter().map(|w| w.sqrt()).collect();
    SymmetricMatrix::from_fn(x.len(), |i, j| sw[i] * sinc_kernel(c, x[i], x[j]) * sw[j])
}

/// One parity block of the kernel matrix, expressed in the orthonormal basis
/// `(e_i ± e_mirror(i)) / √2` over the nonnegative-half nodes.
struct ParityBlock<T> {
    /// Indices (into the full node list) of the half-nodes, ascending in x.
    nodes: Vec<usize>,
    /// Whether the centre node (x = 0, odd orders only) is part of the block.
    centre: Option<usize>,
    matrix: SymmetricMatrix<T>,
}

fn parity_blocks<T: Real>(full: &SymmetricMatrix<T>) -> (ParityBlock<T>, ParityBlock<T>) {
    let n = full.dim();
    let half = n / 2;
    let mirror = |i: usize| n - 1 - i;
    let pos: Vec<usize> = (n - half..n).collect();
    let centre = (n % 2 == 1).then_some(half);
    let sqrt2 = lit::<T>(2.0).sqrt();

    let even_dim = half + usize::from(centre.is_some());
    let even = SymmetricMatrix::from_fn(even_dim, |a, b| match (a < half, b < half) {
        (true, true) => full.get(pos[a], pos[b]) + full.get(pos[a], mirror(pos[b])),
        (true, false) => sqrt2 * full.get(pos[a], half),
        (false, true) => sqrt2 * full.get(half, pos[b]),
        (false, false) => full.get(half, half),
    });
    let odd = SymmetricMatrix::from_fn(half, |a, b| full.get(pos[a], pos[b]) - full.get(pos[a], mirror(pos[b])));
    (ParityBlock { nodes: pos.clone(), centre, matrix: even }, ParityBlock { nodes: pos, centre: None, matrix: odd })
}

/// Eigenvalues and sampled eigenfunctions of the concentration operator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProlateSpectrum<T> {
    c: TimeBandwidthProduct<T>,
    eigenvalues: Vec<T>,
    quad_nodes: Vec<T>,
    quad_weights: Vec<T>,
    /// `eigenvectors[n][i] = ψ_n(x_i)`, unit norm under the quadrature inner product.
    eigenvectors: Vec<Vec<T>>,
    extension_constants: Vec<T>,
}

/// All eigenvalues of the discretised operator, descending. No resolution
/// checks; the small end of the list sits at rounding level.
pub fn kernel_eigenvalues<T: Real>(c: TimeBandwidthProduct<T>, quad_order: usize) -> Result<Vec<T>> {
    check_order(quad_order)?;
    let rule = GaussLegendre::<T>::new(quad_order)?;
    let full = kernel_matrix(c.value(), &rule);
    let (even, odd) = parity_blocks(&full);
    let mut values = symmetric_eigen(&even.matrix)?.values;
    values.extend(symmetric_eigen(&odd.matrix)?.values);
    values.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    Ok(values)
}

/// Solves for modes `0..=n_max` on an order-`quad_order` rule.
pub fn compute_spectrum<T: Real>(
    c: TimeBandwidthProduct<T>,
    n_max: usize,
    quad_order: usize,
) -> Result<ProlateSpectrum<T>> {
    check_order(quad_order)?;
    if n_max + 1 > quad_order / 2 {
        return Err(Error::InsufficientResolution { modes: n_max + 1, quad_order, max: quad_order / 2 });
    }
    let rule = GaussLegendre::<T>::new(quad_order)?;
    let full = kernel_matrix(c.value(), &rule);
    let (even, odd) = parity_blocks(&full);
    let even_eig = symmetric_eigen(&even.matrix)?;
    let odd_eig = symmetric_eigen(&odd.matrix)?;

    // Merge the two parity spectra, remembering where each mode came from.
    let mut modes: Vec<(T, bool, usize)> = even_eig
        .values
        .iter()
        .enumerate()
        .map(|(k, &v)| (v, true, k))
        .chain(odd_eig.values.iter().enumerate().map(|(k, &v)| (v, false, k)))
        .collect();
    modes.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
    modes.truncate(n_max + 1);

    let floor = lit::<T>(10.0) * T::epsilon();
    for (i, m) in modes.iter().enumerate() {
        if !(m.0 > floor) {
            return Err(Error::Unresolvable { index: i, value: to_f64(m.0), floor: to_f64(floor) });
        }
    }
    for (i, w) in modes.windows(2).enumerate() {
        if !(w[0].0 > w[1].0) {
            return Err(Error::Unresolvable { index: i + 1, value: to_f64(w[1].0), floor: to_f64(floor) });
        }
    }

    let n = quad_order;
    let sqrt2 = lit::<T>(2.0).sqrt();
    let weights = rule.weights();
    let mut eigenvalues = Vec::with_capacity(modes.len());
    let mut eigenvectors = Vec::with_capacity(modes.len());
    for &(lambda, is_even, k) in &modes {
        let (block, vec) = if is_even { (&even, &even_eig.vectors[k]) } else { (&odd, &odd_eig.vectors[k]) };
        let sign = if is_even { T::one() } else { -T::one() };
        // Unfold the half-vector into the full symmetrised vector, then undo √w.
        let mut v = vec![T::zero(); n];
        for (a, &idx) in block.nodes.iter().enumerate() {
            v[idx] = vec[a] / sqrt2;
            v[n - 1 - idx] = sign * vec[a] / sqrt2;
        }
        if let Some(mid) = block.centre {
            v[mid] = vec[block.nodes.len()];
        }
        let mut psi: Vec<T> = v.iter().zip(weights).map(|(&vi, &w)| vi / w.sqrt()).collect();
        fix_sign(&mut psi, rule.nodes());
        eigenvalues.push(lambda);
        eigenvectors.push(psi);
    }

    let mut spectrum = ProlateSpectrum {
        c,
        eigenvalues,
        quad_nodes: rule.nodes().to_vec(),
        quad_weights: weights.to_vec(),
        eigenvectors,
        extension_constants: Vec::new(),
    };
    spectrum.extension_constants = (0..=n_max).map(|m| spectrum.measure_extension_constant(m)).collect();
    Ok(spectrum)
}

/// Sign convention: positive at the first node with `x ≥ 0` whose magnitude
/// exceeds 1e-12.
fn fix_sign<T: Real>(psi: &mut [T], nodes: &[T]) {
    let tiny = lit::<T>(1e-12);
    let pivot = nodes.iter().zip(psi.iter()).find(|(&x, &p)| x >= T::zero() && p.abs() > tiny).map(|(_, &p)| p);
    if let Some(p) = pivot {
        if p < T::zero() {
            psi.iter_mut().for_each(|v| *v = -*v);
        }
    }
}

/// Large-`c` asymptotic `λ₀ ≈ 1 − 4 √(π c) e^{−2c}`, clamped into (0, 1).
///
/// Only meaningful when `c` is large; for `c ≲ 1.5` the raw expression is
/// negative and the clamp dominates.
pub fn lambda0_asymptotic<T: Real>(c: TimeBandwidthProduct<T>) -> T {
    let c = c.value();
    let raw = T::one() - lit::<T>(4.0) * (T::PI() * c).sqrt() * (lit::<T>(-2.0) * c).exp();
    let lo = T::min_positive_value();
    let hi = T::one() - T::epsilon();
    raw.max(lo).min(hi)
}

/// Large-`c` asymptotic for the `n`-th eigenvalue,
/// `1 − λ_n ≈ 4 √π 8ⁿ / n! · c^{n+1/2} e^{−2c}`, clamped into (0, 1).
pub fn lambda_n_asymptotic<T: Real>(c: TimeBandwidthProduct<T>, n: usize) -> T {
    let c = c.value();
    let n_fact: T = (1..=n).map(from_usize::<T>).fold(T::one(), |a, b| a * b);
    let gap = lit::<T>(4.0) * T::PI().sqrt() * lit::<T>(8.0).powi(n as i32) / n_fact
        * c.powf(from_usize::<T>(n) + lit(0.5))
        * (lit::<T>(-2.0) * c).exp();
    (T::one() - gap).max(T::min_positive_value()).min(T::one() - T::epsilon())
}

impl<T: Real> ProlateSpectrum<T> {
    pub fn c(&self) -> TimeBandwidthProduct<T> {
        self.c
    }

    pub fn n_max(&self) -> usize {
        self.eigenvalues.len() - 1
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn lambda0(&self) -> T {
        self.eigenvalues[0]
    }

    pub fn quad_nodes(&self) -> &[T] {
        &self.quad_nodes
    }

    pub fn quad_weights(&self) -> &[T] {
        &self.quad_weights
    }

    /// `ψ_n` at the quadrature nodes.
    pub fn eigenvector(&self, n: usize) -> Result<&[T]> {
        self.check_mode(n)?;
        Ok(&self.eigenvectors[n])
    }

    /// Constant `α_n` in `g_n(t) = α_n ψ_n(t / c)`, where `g_n` is the
    /// real band-limited transform of `ψ_n` (see [`Self::extend_time`]).
    pub fn extension_constant(&self, n: usize) -> Result<T> {
        self.check_mode(n)?;
        Ok(self.extension_constants[n])
    }

    pub fn extension_constants(&self) -> &[T] {
        &self.extension_constants
    }

    /// Quadrature Gram matrix `G_ab = Σ_i w_i ψ_a(x_i) ψ_b(x_i)`.
    pub fn gram(&self) -> Vec<Vec<T>> {
        let m = self.eigenvectors.len();
        (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| {
                        self.quad_weights
                            .iter()
                            .zip(self.eigenvectors[a].iter().zip(&self.eigenvectors[b]))
                            .map(|(&w, (&x, &y))| w * x * y)
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }

    fn check_mode(&self, n: usize) -> Result<()> {
        if n > self.n_max() {
            return Err(Error::ModeOutOfRange { mode: n, n_max: self.n_max() });
        }
        Ok(())
    }

    /// `ψ_n(x)` for `|x| ≤ 1` via the Nyström interpolant.
    pub fn eval(&self, n: usize, x: T) -> Result<T> {
        self.check_mode(n)?;
        if !(x.abs() <= T::one()) {
            return Err(Error::AbscissaOutOfRange { x: to_f64(x) });
        }
        Ok(self.nystrom(n, x))
    }

    /// Band-limited continuation of `ψ_n` to any real `x`; equal to
    /// [`Self::eval`] on `[-1, 1]`.
    pub fn eval_extended(&self, n: usize, x: T) -> Result<T> {
        self.check_mode(n)?;
        Ok(self.nystrom(n, x))
    }

    fn nystrom(&self, n: usize, x: T) -> T {
        let c = self.c.value();
        let s: T = self
            .quad_nodes
            .iter()
            .zip(&self.quad_weights)
            .zip(&self.eigenvectors[n])
            .map(|((&y, &w), &p)| w * sinc_kernel(c, x, y) * p)
            .sum();
        s / self.eigenvalues[n]
    }

    fn nystrom_dx(&self, n: usize, x: T) -> T {
        let c = self.c.value();
        let s: T = self
            .quad_nodes
            .iter()
            .zip(&self.quad_weights)
            .zip(&self.eigenvectors[n])
            .map(|((&y, &w), &p)| w * sinc_kernel_dx(c, x, y) * p)
            .sum();
        s / self.eigenvalues[n]
    }

    /// `(1/2π) ∫_{-1}^{1} ψ_n(ω) cos(ω t) dω` for even `n`, `sin` for odd `n`,
    /// by quadrature on the spectrum's nodes.
    fn band_limited_integral(&self, n: usize, t: T) -> T {
        let odd = n % 2 == 1;
        let s: T = self
            .quad_nodes
            .iter()
            .zip(&self.quad_weights)
            .zip(&self.eigenvectors[n])
            .map(|((&w_node, &w), &p)| {
                let arg = w_node * t;
                w * p * if odd { arg.sin() } else { arg.cos() }
            })
            .sum();
        s / (lit::<T>(2.0) * T::PI())
    }

    fn measure_extension_constant(&self, n: usize) -> T {
        let c = self.c.value();
        if n.is_multiple_of(2) {
            self.band_limited_integral(n, T::zero()) / self.nystrom(n, T::zero())
        } else {
            // d/dt of the sine transform at 0 is (1/2π) ∫ ω ψ_n(ω) dω
            let dg: T = self
                .quad_nodes
                .iter()
                .zip(&self.quad_weights)
                .zip(&self.eigenvectors[n])
                .map(|((&x, &w), &p)| w * p * x)
                .sum::<T>()
                / (lit::<T>(2.0) * T::PI());
            c * dg / self.nystrom_dx(n, T::zero())
        }
    }

    /// Time-axis continuation of mode `n`:
    /// `g_n(t) = (1/2π) ∫_{-1}^{1} ψ_n(ω) e^{iωt} dω` with the constant phase
    /// `iⁿ` removed so the result is real. Returns `α_n ψ_n(t/c)` for
    /// `|t/c| ≤ 1` and evaluates the band-limited integral otherwise.
    pub fn extend_time(&self, n: usize, t: T) -> Result<T> {
        self.check_mode(n)?;
        let x = t / self.c.value();
        if x.abs() <= T::one() {
            Ok(self.extension_constants[n] * self.nystrom(n, x))
        } else {
            Ok(self.band_limited_integral(n, t))
        }
    }

    /// Band-limited integral path of [`Self::extend_time`], for any `t`.
    pub fn extend_time_by_quadrature(&self, n: usize, t: T) -> Result<T> {
        self.check_mode(n)?;
        Ok(self.band_limited_integral(n, t))
    }
}

/// Free-function form of [`ProlateSpectrum::eval`].
pub fn eval_pswf<T: Real>(spectrum: &ProlateSpectrum<T>, n: usize, x: T) -> Result<T> {
    spectrum.eval(n, x)
}

/// Free-function form of [`ProlateSpectrum::extend_time`].
pub fn extend_pswf_time<T: Real>(spectrum: &ProlateSpectrum<T>, n: usize, t: T) -> Result<T> {
    spectrum.extend_time(n, t)
}

/// `λ₀` at `c` with the default quadrature order.
pub fn lambda0<T: Real>(c: TimeBandwidthProduct<T>) -> Result<T> {
    Ok(compute_spectrum(c, 0, DEFAULT_QUAD_ORDER)?.lambda0())
}
