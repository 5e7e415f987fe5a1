//! Acceptance criteria, one line per criterion.
//!
//! Run with `cargo test -p tfbound --test acceptance -- --nocapture` to see
//! the report. Criteria listed in `KNOWN_RED` are expected to fail for the
//! reasons given there; the test asserts both that every other criterion
//! passes and that the known-red ones are still red, so a change in either
//! direction is noticed.

use rand::Rng;
use rayon::prelude::*;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use tfbound::concentration::{
    freq_concentration, l1_fraction_freq, time_concentration, transform, transform_auto, variance_stats,
    ConcentrationPair, SampledSignal,
};
use tfbound::corpus::{random_signals, random_systems, rng, CorpusSignal, DEFAULT_SEED};
use tfbound::feasibility::{
    admissible_at_angle, chalk_check, concentration_angle, downward_closure_check, min_overshoot_bound, ExtremalSignal,
};
use tfbound::figures::fig3;
use tfbound::gaussian::GaussianDesign;
use tfbound::lti::{
    impulse_response, rise_bandwidth_product, second_order_rise, step_metrics, RationalSystem, SecondOrderParams,
};
use tfbound::pswf::{compute_spectrum, kernel_eigenvalues, lambda0_asymptotic, TimeBandwidthProduct};
use tfbound::quadrature::integrate_adaptive;

type Tbp = TimeBandwidthProduct<f64>;

/// Criteria that cannot pass as stated.
///
/// 6: equality in `arccos α + arccos β ≥ arccos √λ₀` needs `α ≥ √λ₀`. For
///    `α < √λ₀` the left side exceeds the right for every `β`, and all six
///    required `(α, c)` pairs have `α < √λ₀(c)` (`√λ₀(2) ≈ 0.938`,
///    `√λ₀(4) ≈ 0.998`). Criterion 6s checks attainment where it is possible.
/// 8: the mixed L²-time / L¹-frequency form of Chalk's relation fails for
///    short windows over a signal's peak: there `2πα₁β₁ / (WT)` tends to
///    `2π h(t₀)² |ĥ(ω₀)| / (E ∫|ĥ|)`, which is `√2` for a Gaussian.
const KNOWN_RED: &[&str] = &["6", "8"];

struct Outcome {
    id: &'static str,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn tbp(c: f64) -> Tbp {
    TimeBandwidthProduct::new(c).unwrap()
}

fn corpus(count: usize) -> Vec<CorpusSignal<f64>> {
    random_signals(DEFAULT_SEED, count).unwrap()
}

/// Root of `f` on a bracket where `f` increases.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if f(m) < 0.0 {
            lo = m;
        } else {
            hi = m;
        }
    }
    0.5 * (lo + hi)
}

fn c1_gaussian_constants() -> Outcome {
    let mut worst = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    let mut pass = true;
    for a in [0.01f64, 0.25, 1.0, 25.0, 400.0] {
        let d = GaussianDesign::new(a).unwrap();
        let span = 10.0 / a.sqrt();
        let t10 = bisect(|t| d.step(t) - 0.1, 0.0, span);
        let t90 = bisect(|t| d.step(t) - 0.9, 0.0, span);
        let ts = bisect(|t| d.step(t) - 0.97, 0.0, span);
        // spread of ĥ itself read as a density, from the sampled impulse
        let h = d.sample_impulse(12.0, 1201).unwrap();
        let s = transform(&h, 14.0 * a.sqrt(), 1401).unwrap();
        let (mut m0, mut m2) = (0.0, 0.0);
        for (k, z) in s.values().iter().enumerate() {
            let w = s.omega(k);
            m0 += z.re;
            m2 += w * w * z.re;
        }
        let sigma = (m2 / m0).sqrt();
        let p1 = (t90 - t10) * sigma;
        let p2 = ts * sigma;
        worst = (worst.0.min(p1), worst.1.max(p1), worst.2.min(p2), worst.3.max(p2));
        pass &= (1.51..=1.53).contains(&p1) && (2.16..=2.18).contains(&p2);
    }
    Outcome {
        id: "1",
        name: "Gaussian constants",
        pass,
        detail: format!("t_r*sigma in [{:.5}, {:.5}], t_s*sigma in [{:.5}, {:.5}]", worst.0, worst.1, worst.2, worst.3),
    }
}

fn c2_asymptotic() -> Outcome {
    let mut worst: f64 = 0.0;
    for c in [4.0, 5.0, 6.0, 8.0] {
        let l = compute_spectrum(tbp(c), 0, 128).unwrap().lambda0();
        worst = worst.max((l - lambda0_asymptotic(tbp(c))).abs());
    }
    let table = fig3().unwrap();
    let row = table.rows.iter().find(|r| (r[0].unwrap() - 0.5).abs() < 1e-9).unwrap();
    let gap = (row[1].unwrap() - row[2].unwrap()).abs() / row[1].unwrap();
    Outcome {
        id: "2",
        name: "lambda0 asymptotic",
        pass: worst <= 1e-3 && gap > 0.05,
        detail: format!("max |err| for c>=4: {worst:.3e}; relative gap at c=0.5: {gap:.3}"),
    }
}

fn c3_trace() -> Outcome {
    let mut worst: f64 = 0.0;
    for c in [1.0, 2.0, 4.0] {
        let values = kernel_eigenvalues(tbp(c), 128).unwrap();
        let sum: f64 = values.iter().take(40).sum();
        worst = worst.max((sum - 2.0 * c / PI).abs());
    }
    Outcome { id: "3", name: "trace identity", pass: worst <= 1e-3, detail: format!("max |sum - 2c/pi| = {worst:.3e}") }
}

fn c4_heisenberg() -> Outcome {
    let signals = corpus(100);
    let products: Vec<f64> = signals
        .par_iter()
        .map(|s| {
            let v = variance_stats(&s.signal, &transform_auto(&s.signal).unwrap()).unwrap();
            v.var_time * v.var_freq
        })
        .collect();
    let min = products.iter().copied().fold(f64::INFINITY, f64::min);
    let mut gauss_err: f64 = 0.0;
    for a in [0.01f64, 0.25, 1.0, 25.0, 400.0] {
        let h = GaussianDesign::<f64>::new(a).unwrap().sample_impulse(12.0, 1201).unwrap();
        let v = variance_stats(&h, &transform_auto(&h).unwrap()).unwrap();
        gauss_err = gauss_err.max((v.var_time * v.var_freq - 0.25).abs());
    }
    Outcome {
        id: "4",
        name: "Heisenberg",
        pass: min >= 0.25 * (1.0 - 1e-6) && gauss_err <= 1e-3,
        detail: format!("min product over 100 signals {min:.6}; Gaussian max |p - 1/4| = {gauss_err:.2e}"),
    }
}

/// Slot and band drawn around the signal's energy centre.
fn random_window<R: Rng>(r: &mut R, h: &SampledSignal<f64>) -> (f64, f64, f64) {
    let sq: Vec<f64> = h.values().iter().map(|v| v * v).collect();
    let centre = h.times().zip(&sq).map(|(t, w)| t * w).sum::<f64>() / sq.iter().sum::<f64>();
    let width = r.random_range(0.3..4.0);
    let lo = centre - width * r.random_range(0.0..1.0);
    let band = r.random_range(0.3..8.0);
    (lo, lo + width, band)
}

fn c5_admissibility() -> Outcome {
    let signals = corpus(200);
    let mut r = rng(DEFAULT_SEED ^ 5);
    let windows: Vec<_> = signals.iter().map(|s| random_window(&mut r, &s.signal)).collect();
    let margins: Vec<f64> = signals
        .par_iter()
        .zip(&windows)
        .map(|(s, &(lo, hi, w))| {
            let spec = transform_auto(&s.signal).unwrap();
            let a2 = time_concentration(&s.signal, lo, hi).unwrap();
            let b2 = freq_concentration(&spec, -w, w).unwrap();
            let pair = ConcentrationPair::new(a2.sqrt(), b2.sqrt()).unwrap();
            let angle = concentration_angle(tbp(w * (hi - lo) / 2.0)).unwrap();
            admissible_at_angle(&pair, angle).unwrap().margin
        })
        .collect();
    let min = margins.iter().copied().fold(f64::INFINITY, f64::min);
    Outcome {
        id: "5",
        name: "admissibility necessity",
        pass: min >= -1e-4,
        detail: format!("min margin over 200 signals {min:.4e}"),
    }
}

fn extremal_margins(cases: &[(f64, f64)]) -> Vec<(f64, f64, f64)> {
    cases.par_iter().map(|&(c, a)| (c, a, ExtremalSignal::new(a, tbp(c)).unwrap().measure().unwrap().margin)).collect()
}

fn c6_extremal() -> Outcome {
    let cases: Vec<(f64, f64)> = [2.0, 4.0].iter().flat_map(|&c| [0.5, 0.7, 0.9].map(|a| (c, a))).collect();
    let m = extremal_margins(&cases);
    let worst = m.iter().map(|x| x.2.abs()).fold(0.0, f64::max);
    let list: Vec<String> = m.iter().map(|(c, a, g)| format!("c={c},a={a}:{g:.4}")).collect();
    Outcome {
        id: "6",
        name: "extremal attainment (alpha in {.5,.7,.9})",
        pass: worst <= 1e-4,
        detail: format!("margins {} (equality impossible for alpha < sqrt(lambda0))", list.join(" ")),
    }
}

fn c6s_extremal_attainable() -> Outcome {
    let cases = [(2.0, 0.95), (2.0, 0.97), (2.0, 0.99), (4.0, 0.998), (4.0, 0.999)];
    let m = extremal_margins(&cases);
    let worst = m.iter().map(|x| x.2.abs()).fold(0.0, f64::max);
    Outcome {
        id: "6s",
        name: "extremal attainment (alpha >= sqrt(lambda0))",
        pass: worst <= 1e-4,
        detail: format!("max |margin| {worst:.3e} over {} pairs", cases.len()),
    }
}

fn c7_closure() -> Outcome {
    let mut r = rng(DEFAULT_SEED ^ 7);
    let mut violations = 0;
    for _ in 0..500 {
        let (a, b) = (r.random_range(0.01..1.0), r.random_range(0.01..1.0));
        let big = ConcentrationPair::new(a, b).unwrap();
        let small = ConcentrationPair::new(a * r.random_range(0.01..=1.0), b * r.random_range(0.01..=1.0)).unwrap();
        if !downward_closure_check(&big, &small, tbp(r.random_range(0.2..8.0))).unwrap() {
            violations += 1;
        }
    }
    Outcome {
        id: "7",
        name: "downward closure",
        pass: violations == 0,
        detail: format!("{violations} violations in 500 pairs"),
    }
}

fn c8_chalk() -> Outcome {
    let signals = corpus(200);
    let mut r = rng(DEFAULT_SEED ^ 8);
    let windows: Vec<Vec<(f64, f64, f64, f64)>> = signals
        .iter()
        .map(|s| {
            let (t0, t1) = (s.signal.t0(), s.signal.t_end());
            (0..20)
                .map(|_| {
                    let t = r.random_range(t0..t1);
                    let width = r.random_range(0.05..5.0);
                    let w0 = r.random_range(-8.0..8.0);
                    let band = r.random_range(0.05..10.0);
                    (t, width, w0, band)
                })
                .collect()
        })
        .collect();
    let results: Vec<(usize, f64)> = signals
        .par_iter()
        .zip(&windows)
        .map(|(s, ws)| {
            let spec = transform_auto(&s.signal).unwrap();
            let mut bad = 0;
            let mut worst = f64::INFINITY;
            for &(t, width, w0, band) in ws {
                let a1 = time_concentration(&s.signal, t, t + width).unwrap();
                let b1 = l1_fraction_freq(&spec, w0, w0 + band).unwrap();
                let v = chalk_check(width, band, a1, b1, 0.0).unwrap();
                // strict: equality is a violation too
                if v.margin <= 0.0 || v.margin.is_nan() {
                    bad += 1;
                }
                worst = worst.min(v.margin / (width * band));
            }
            (bad, worst)
        })
        .collect();
    let bad: usize = results.iter().map(|r| r.0).sum();
    let worst = results.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    Outcome {
        id: "8",
        name: "Chalk necessity (L2 time / L1 freq)",
        pass: bad == 0,
        detail: format!("{bad} of 4000 windows violate; worst margin/(WT) = {worst:.3}"),
    }
}

fn c9_rise_bandwidth() -> Outcome {
    let systems: Vec<RationalSystem<f64>> = random_systems(DEFAULT_SEED, 100).unwrap();
    let products: Vec<f64> = systems.par_iter().map(|s| rise_bandwidth_product(s).unwrap().product).collect();
    let min = products.iter().copied().fold(f64::INFINITY, f64::min);
    let worked = rise_bandwidth_product(&RationalSystem::new(vec![1.0], vec![1.0, 2.0, 1.0]).unwrap()).unwrap().product;
    let err = (worked - std::f64::consts::E / 2.0).abs();
    Outcome {
        id: "9",
        name: "rise-bandwidth bound",
        pass: min >= 1.0 - 1e-6 && err <= 1e-4,
        detail: format!("min t_r*w_b over 100 systems {min:.6}; 1/(s+1)^2 error {err:.2e}"),
    }
}

fn c10_second_order() -> Outcome {
    let mut worst: f64 = 0.0;
    for zeta in [0.2, 0.5, FRAC_1_SQRT_2, 0.9] {
        for w in [0.5, 1.0, 2.0] {
            let p = SecondOrderParams::new(zeta, w).unwrap();
            let sim = step_metrics(&p.system()).unwrap().t_r_full.unwrap();
            let closed = second_order_rise(&p);
            worst = worst.max((sim - closed).abs() / closed);
        }
    }
    Outcome {
        id: "10",
        name: "second-order rise time",
        pass: worst <= 0.01,
        detail: format!("max relative error {worst:.2e}"),
    }
}

fn c11_fig5() -> Outcome {
    let s = compute_spectrum(tbp(8.0), 0, 128).unwrap();
    let inside = (0..=1000).map(|i| s.eval_extended(0, i as f64 / 1000.0).unwrap().abs()).fold(0.0, f64::max);
    let outside = (1..=2000).map(|i| s.eval_extended(0, 1.0 + i as f64 / 1000.0).unwrap().abs()).fold(0.0, f64::max);
    let ratio = outside / inside;
    Outcome {
        id: "11",
        name: "prolate extension beyond the slot",
        pass: ratio < 0.05,
        detail: format!("max outside / max inside = {ratio:.4}"),
    }
}

/// Band edge holding all but `1e-14` of the energy of a system's impulse
/// response, by bisection on the tail integral.
fn energy_band_edge(sys: &RationalSystem<f64>, energy: f64) -> f64 {
    let tail = |w: f64| {
        integrate_adaptive(|u: f64| sys.freq_response(w / u).norm_sqr() * w / (u * u), 0.0, 1.0, 1e-10, 4000).unwrap()
            / PI
    };
    let target = 1e-14 * energy;
    let mut hi = 1.0;
    while tail(hi) > target {
        hi *= 4.0;
    }
    let lo = hi / 4.0;
    bisect(|w| target - tail(w.exp()), lo.ln(), hi.ln()).exp()
}

fn c12_min_overshoot() -> Outcome {
    let mut checked = 0;
    let mut skipped = 0;
    let mut pass = true;
    let mut worst = f64::INFINITY;
    let mut local_ok = 0;
    let mut local_n = 0;

    // Gaussians: no peak, so the horizon is the 3 % settling time
    for a in [0.01f64, 0.25, 1.0, 25.0, 400.0] {
        let d = GaussianDesign::new(a).unwrap();
        let t = d.settling_time();
        if d.impulse(t) >= 1.0 {
            skipped += 1;
            continue;
        }
        let energy = (2.0 * a / PI).sqrt() * 2.0;
        // |ĥ|² is a Gaussian of variance a in ω
        let w = (2.0 * a).sqrt() * statrs::function::erf::erf_inv(1.0 - 1e-14);
        let c = w * t / 2.0;
        let bound = min_overshoot_bound(energy, tbp(c)).unwrap();
        let dev = (d.step(t) - 1.0).abs();
        worst = worst.min(dev - bound);
        pass &= dev >= bound - 1e-6;
        checked += 1;
    }

    for zeta in [0.2, 0.3, 0.4, 0.5, 0.6, FRAC_1_SQRT_2, 0.8, 0.9] {
        for w0 in [0.5, 1.0, 2.0] {
            let p = SecondOrderParams::new(zeta, w0).unwrap();
            let sys = p.system();
            let m = step_metrics(&sys).unwrap();
            let tp = m.t_p.unwrap();
            let (t_end, dt) = sys.auto_grid().unwrap();
            let h = impulse_response(&sys, t_end, dt).unwrap();
            let tail_ok = h.times().zip(h.values()).filter(|(t, _)| *t > tp).all(|(_, v)| v.abs() < 1.0);
            if !tail_ok {
                skipped += 1;
                continue;
            }
            let energy = h.energy();
            let c = energy_band_edge(&sys, energy) * tp / 2.0;
            let bound = min_overshoot_bound(energy, tbp(c)).unwrap();
            worst = worst.min(m.overshoot - bound);
            pass &= m.overshoot >= bound - 1e-6;
            checked += 1;
            // the first link of the chain, with the measured time fraction
            let a2 = time_concentration(&h, 0.0, tp).unwrap();
            local_n += 1;
            if m.overshoot >= energy * (1.0 - a2) - 1e-6 {
                local_ok += 1;
            }
        }
    }
    Outcome {
        id: "12",
        name: "minimum-overshoot bound",
        pass: pass && checked > 0,
        detail: format!(
            "{checked} checked, {skipped} fail |h|<1 after T; min(|delta| - bound) = {worst:.3e}; \
             |delta| >= E(1-alpha^2) held for {local_ok}/{local_n} second-order cases"
        ),
    }
}

#[test]
fn acceptance() {
    let t0 = std::time::Instant::now();
    let outcomes = vec![
        c1_gaussian_constants(),
        c2_asymptotic(),
        c3_trace(),
        c4_heisenberg(),
        c5_admissibility(),
        c6_extremal(),
        c6s_extremal_attainable(),
        c7_closure(),
        c8_chalk(),
        c9_rise_bandwidth(),
        c10_second_order(),
        c11_fig5(),
        c12_min_overshoot(),
    ];
    println!();
    for o in &outcomes {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let note = if KNOWN_RED.contains(&o.id) { " [known red]" } else { "" };
        println!("[{tag}] {:>3} {}{note}: {}", o.id, o.name, o.detail);
    }
    println!("acceptance finished in {:.1} s", t0.elapsed().as_secs_f64());

    let unexpected: Vec<&str> =
        outcomes.iter().filter(|o| !o.pass && !KNOWN_RED.contains(&o.id)).map(|o| o.id).collect();
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
    let turned_green: Vec<&str> =
        outcomes.iter().filter(|o| o.pass && KNOWN_RED.contains(&o.id)).map(|o| o.id).collect();
    assert!(turned_green.is_empty(), "known-red criteria now pass, update KNOWN_RED: {turned_green:?}");
}
