//! Plot-ready tables for the step-response family, the λ₀ curve and the
//! prolate extension plots.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::gaussian::GaussianDesign;
use crate::pswf::{compute_spectrum, kernel_eigenvalues, TimeBandwidthProduct, DEFAULT_QUAD_ORDER};

/// Column-major numeric table; `None` cells are values that could not be
/// resolved and are written as empty fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Option<f64>>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }
}

/// `√a` values of the Gaussian step-response family.
pub const FIG2_ROOT_A: [f64; 5] = [0.1, 0.5, 1.0, 5.0, 20.0];
/// `c` values of the extension plot, in curve order.
pub const FIG4_C: [f64; 3] = [8.0, 4.0, 2.0];

/// `1 − 4√(πc) e^{−2c}` without clamping, so the small-`c` breakdown shows.
pub fn lambda0_asymptotic_raw(c: f64) -> f64 {
    1.0 - 4.0 * (std::f64::consts::PI * c).sqrt() * (-2.0 * c).exp()
}

fn grid(start: f64, step: f64, count: usize) -> impl Iterator<Item = f64> {
    (0..count).map(move |i| start + step * i as f64)
}

/// Step responses `erf(√a t)` on `t ∈ [0, 20]`.
pub fn fig2() -> Result<Table> {
    let designs = FIG2_ROOT_A.iter().map(|&r| GaussianDesign::new(r * r)).collect::<Result<Vec<_>>>()?;
    let mut cols = vec!["t".to_string()];
    cols.extend(FIG2_ROOT_A.iter().map(|r| format!("u_sqrt_a_{r}")));
    let mut table = Table::new(cols);
    for t in grid(0.0, 0.005, 4001) {
        let mut row = vec![Some(t)];
        row.extend(designs.iter().map(|d| Some(d.step(t))));
        table.push(row);
    }
    Ok(table)
}

/// `λ₀` and its asymptotic for `c = 0.1, 0.2, …, 8`.
pub fn fig3() -> Result<Table> {
    let mut table = Table::new(vec!["c".into(), "lambda0".into(), "lambda0_asymptotic".into()]);
    for k in 1..=80 {
        let c = k as f64 / 10.0;
        let l = compute_spectrum(TimeBandwidthProduct::new(c)?, 0, DEFAULT_QUAD_ORDER)?.lambda0();
        table.push(vec![Some(c), Some(l), Some(lambda0_asymptotic_raw(c))]);
    }
    Ok(table)
}

fn extension_table(cs: &[f64], start: f64, step: f64, count: usize) -> Result<Table> {
    let spectra = cs
        .iter()
        .map(|&c| compute_spectrum(TimeBandwidthProduct::new(c)?, 0, DEFAULT_QUAD_ORDER))
        .collect::<Result<Vec<_>>>()?;
    let mut cols = vec!["tau".to_string()];
    cols.extend(cs.iter().map(|c| format!("psi0_c{c}")));
    let mut table = Table::new(cols);
    for tau in grid(start, step, count) {
        let mut row = vec![Some(tau)];
        for s in &spectra {
            row.push(Some(s.eval_extended(0, tau)?));
        }
        table.push(row);
    }
    Ok(table)
}

/// `ψ₀` and its band-limited extension on `τ ∈ [−3, 3]` for `c = 8, 4, 2`.
pub fn fig4() -> Result<Table> {
    extension_table(&FIG4_C, -3.0, 0.01, 601)
}

/// The `c = 8` extension beyond the slot, `τ ∈ (1, 3]`.
pub fn fig5() -> Result<Table> {
    extension_table(&[8.0], 1.01, 0.01, 200)
}

pub fn figure(id: u32) -> Result<Table> {
    match id {
        2 => fig2(),
        3 => fig3(),
        4 => fig4(),
        5 => fig5(),
        _ => Err(invalid("figure", format!("unknown figure {id}; expected 2, 3, 4 or 5"))),
    }
}

/// Rows `(c, λ₀ … λ_{n_max}, asymptotic λ₀)`. Eigenvalues below the
/// resolvable floor are left empty.
pub fn spectrum_table(cs: &[f64], n_max: usize, quad_order: usize) -> Result<Table> {
    if cs.is_empty() {
        return Err(invalid("c", "empty range"));
    }
    if n_max + 1 > quad_order / 2 {
        return Err(invalid("n_max", format!("at most {} modes at quadrature order {quad_order}", quad_order / 2)));
    }
    let mut cols = vec!["c".to_string()];
    cols.extend((0..=n_max).map(|n| format!("lambda{n}")));
    cols.push("lambda0_asymptotic".into());
    let mut table = Table::new(cols);
    let floor = 10.0 * f64::EPSILON;
    for &c in cs {
        let values = kernel_eigenvalues(TimeBandwidthProduct::new(c)?, quad_order)?;
        let mut row = vec![Some(c)];
        row.extend(values.iter().take(n_max + 1).map(|&v| if v > floor { Some(v) } else { None }));
        row.push(Some(lambda0_asymptotic_raw(c)));
        table.push(row);
    }
    Ok(table)
}

/// `start, start + step, …` up to and including `end` (within rounding).
pub fn range(start: f64, end: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(end >= start) || !(start > 0.0) {
        return Err(invalid("range", "need 0 < start <= end and step > 0"));
    }
    let count = ((end - start) / step + 1e-9).floor() as usize + 1;
    Ok(grid(start, step, count).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig2_columns_are_monotone_to_one() {
        let t = fig2().unwrap();
        assert_eq!(t.columns.len(), 6);
        for k in 1..6 {
            let col: Vec<f64> = t.rows.iter().map(|r| r[k].unwrap()).collect();
            assert!(col.windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(col[0], 0.0);
            assert!((col[col.len() - 1] - 1.0).abs() < 0.05);
        }
    }

    #[test]
    fn fig3_shows_small_c_breakdown() {
        let t = fig3().unwrap();
        assert_eq!(t.rows.len(), 80);
        let at = |c: f64| t.rows.iter().find(|r| (r[0].unwrap() - c).abs() < 1e-9).unwrap().clone();
        let r = at(0.5);
        let gap = (r[1].unwrap() - r[2].unwrap()).abs() / r[1].unwrap();
        assert!(gap > 0.05);
        let r = at(8.0);
        assert!((r[1].unwrap() - r[2].unwrap()).abs() < 1e-3);
    }

    #[test]
    fn fig5_is_small() {
        let t = fig5().unwrap();
        assert!(t.rows[0][0].unwrap() > 1.0);
        assert!((t.rows[t.rows.len() - 1][0].unwrap() - 3.0).abs() < 1e-9);
        let peak = t.rows.iter().map(|r| r[1].unwrap().abs()).fold(0.0, f64::max);
        assert!(peak < 0.1);
    }

    #[test]
    fn spectrum_rows_and_blanks() {
        let t = spectrum_table(&[1.0, 2.0, 4.0, 8.0], 3, 128).unwrap();
        assert_eq!(t.rows.len(), 4);
        assert_eq!(t.columns, vec!["c", "lambda0", "lambda1", "lambda2", "lambda3", "lambda0_asymptotic"]);
        let only0 = spectrum_table(&[1.0], 0, 128).unwrap();
        assert_eq!(only0.columns.len(), 3);
        let deep = spectrum_table(&[0.1], 20, 128).unwrap();
        assert!(deep.rows[0].iter().any(|v| v.is_none()));
        assert!(spectrum_table(&[], 0, 128).is_err());
        assert!(figure(7).is_err());
    }

    #[test]
    fn range_includes_end() {
        let r = range(0.1, 8.0, 0.1).unwrap();
        assert_eq!(r.len(), 80);
        assert!(range(1.0, 0.5, 0.1).is_err());
    }
}
