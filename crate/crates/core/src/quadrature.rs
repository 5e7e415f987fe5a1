//! Gauss–Legendre rules and adaptive Gauss–Kronrod integration.

use crate::error::{Error, Result};
use crate::scalar::{from_usize, lit, to_f64, Real};

/// Gauss–Legendre rule on [-1, 1], nodes in ascending order.
///
/// Nodes are mirrored exactly (`x[n-1-i] == -x[i]`), which the prolate
/// solver relies on for its parity split.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Builds an `n`-point rule by Newton iteration on the Legendre recurrence.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(crate::error::invalid("n", "a Gauss-Legendre rule needs at least 2 nodes"));
        }
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let nf = from_usize::<T>(n);
        let half = n / 2;
        let two = lit::<T>(2.0);
        for i in 0..half {
            // i-th largest root, starting from the Tricomi-style estimate.
            let k = from_usize::<T>(i) + lit(0.75);
            let mut x = (T::PI() * k / (nf + lit(0.5))).cos();
            let mut dp = T::one();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x = x - dx;
                if dx.abs() <= T::epsilon() * lit(4.0) {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            let w = two / ((T::one() - x * x) * dp * dp);
            nodes[n - 1 - i] = x;
            nodes[i] = -x;
            weights[n - 1 - i] = w;
            weights[i] = w;
        }
        if n % 2 == 1 {
            let (_, d) = legendre_with_derivative(n, T::zero());
            nodes[half] = T::zero();
            weights[half] = two / (d * d);
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate<F: FnMut(T) -> T>(&self, a: T, b: T, mut f: F) -> T {
        let half = (b - a) / lit(2.0);
        let mid = (b + a) / lit(2.0);
        let sum: T = self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(mid + half * x)).sum();
        sum * half
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: T, b: T) -> (Vec<T>, Vec<T>) {
        let half = (b - a) / lit(2.0);
        let mid = (b + a) / lit(2.0);
        let x = self.nodes.iter().map(|&x| mid + half * x).collect();
        let w = self.weights.iter().map(|&w| w * half).collect();
        (x, w)
    }
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=n {
        let kf = from_usize::<T>(k);
        let p2 = ((lit::<T>(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = from_usize::<T>(n);
    let d = nf * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

const GK15_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK15_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const G7_WEIGHTS: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

fn gk15<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> (T, T) {
    let half = (b - a) / lit(2.0);
    let mid = (b + a) / lit(2.0);
    let fc = f(mid);
    let mut kronrod = fc * lit(GK15_WEIGHTS[7]);
    let mut gauss = fc * lit(G7_WEIGHTS[3]);
    for j in 0..7 {
        let dx = half * lit(GK15_NODES[j]);
        let s = f(mid - dx) + f(mid + dx);
        kronrod = kronrod + s * lit(GK15_WEIGHTS[j]);
        if j % 2 == 1 {
            gauss = gauss + s * lit(G7_WEIGHTS[j / 2]);
        }
    }
    let k = kronrod * half;
    let g = gauss * half;
    (k, (k - g).abs())
}

/// Globally adaptive G7/K15 integration of `f` over a finite `[a, b]`.
pub fn integrate_adaptive<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    a: T,
    b: T,
    rel_tol: T,
    max_intervals: usize,
) -> Result<T> {
    let (v, e) = gk15(&mut f, a, b);
    let mut segments = vec![(a, b, v, e)];
    loop {
        let total: T = segments.iter().map(|s| s.2).sum();
        let err: T = segments.iter().map(|s| s.3).sum();
        let tol = rel_tol * total.abs();
        if err <= tol || err <= T::min_positive_value() {
            return Ok(total);
        }
        if segments.len() >= max_intervals {
            return Err(Error::QuadratureFailure { tol: to_f64(rel_tol), estimate: to_f64(err / total.abs()) });
        }
        let (worst, _) =
            segments
                .iter()
                .enumerate()
                .fold((0, T::neg_infinity()), |acc, (i, s)| if s.3 > acc.1 { (i, s.3) } else { acc });
        let (lo, hi, _, _) = segments.swap_remove(worst);
        let m = (lo + hi) / lit(2.0);
        let (v1, e1) = gk15(&mut f, lo, m);
        let (v2, e2) = gk15(&mut f, m, hi);
        segments.push((lo, m, v1, e1));
        segments.push((m, hi, v2, e2));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        let rule = GaussLegendre::<f64>::new(10).unwrap();
        // degree 19 is the highest exact degree
        let got = rule.integrate(-1.0, 1.0, |x| x.powi(18));
        assert!((got - 2.0 / 19.0).abs() < 1e-14);
        let got = rule.integrate(0.0, 2.0, |x| x * x);
        assert!((got - 8.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn nodes_are_mirrored_and_weights_sum_to_two() {
        for n in [8, 9, 64, 128, 257] {
            let rule = GaussLegendre::<f64>::new(n).unwrap();
            let x = rule.nodes();
            for i in 0..n {
                assert_eq!(x[i], -x[n - 1 - i]);
            }
            assert!(x.windows(2).all(|w| w[0] < w[1]));
            let s: f64 = rule.weights().iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n = {n}: {s}");
        }
    }

    #[test]
    fn f32_rule_is_usable() {
        let rule = GaussLegendre::<f32>::new(16).unwrap();
        let got = rule.integrate(0.0, std::f32::consts::PI, |x| x.sin());
        assert!((got - 2.0).abs() < 1e-5);
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        // Lorentzian with a narrow peak
        let eps = 1e-3;
        let got = integrate_adaptive(|x: f64| eps / (x * x + eps * eps), -1.0, 1.0, 1e-12, 2000).unwrap();
        let exact = 2.0 * (1.0 / eps).atan();
        assert!((got - exact).abs() < 1e-10 * exact);
    }

    #[test]
    fn rejects_degenerate_rule() {
        assert!(GaussLegendre::<f64>::new(1).is_err());
    }
}
