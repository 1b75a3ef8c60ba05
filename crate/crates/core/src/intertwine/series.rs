//! The Jack hypergeometric series
//!
//! ```text
//! 0F0(x, y) = sum_n sum_{|tau| = n} (c_tau / c'_tau) P_tau(x) P_tau(y) / (kN)_tau
//! ```
//!
//! with Jack quantities at `alpha = 1/k`, summed degree by degree in `f64`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{factorial, Partition};
use crate::symfunc::{jack_table, MonomialValues};

/// Truncation controls for [`hypergeom_00`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesControls {
    pub max_degree: u32,
    /// Stop once two consecutive degree layers are below `rel_tol` times
    /// the running sum.
    pub rel_tol: f64,
}

impl Default for SeriesControls {
    fn default() -> Self {
        Self {
            max_degree: 40,
            rel_tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: f64,
    /// Highest degree summed.
    pub degree: u32,
    /// Magnitude of the last layer added.
    pub last_layer: f64,
    pub converged: bool,
}

/// Coefficient `c_tau / (c'_tau (kN)_tau)` at `alpha = 1/k`, taken cell by
/// cell so that no factor overflows for small `k`:
///
/// ```text
/// prod_{(i,j)} (a + k(l+1)) / ((a + 1 + k l)(k(N-i) + j))
/// ```
///
/// with 0-based cell `(i,j)`, arm `a` and leg `l`.
pub fn series_weight(tau: &Partition, k: f64, n_vars: usize) -> f64 {
    let conj = tau.conjugate();
    tau.cells()
        .map(|(i, j)| {
            let arm = (tau.part(i) as usize - j - 1) as f64;
            let leg = (conj.part(j) as usize - i - 1) as f64;
            let pos = k * (n_vars - i) as f64 + j as f64;
            (arm + k * (leg + 1.0)) / ((arm + 1.0 + k * leg) * pos)
        })
        .product()
}

/// Sum of the series up to convergence or `controls.max_degree`.
///
/// Both arguments are first centered with the exact shift rule
/// `0F0(x + a1, y + b1) = e^{N a b} 0F0(x, y)` for `sum x = sum y = 0`;
/// for ordered inputs the centered series has no sign cancellation
/// between degrees. Non-convergence is reported in the returned value, not
/// as an error.
pub fn hypergeom_00(x: &[f64], y: &[f64], k: f64, controls: SeriesControls) -> Result<SeriesValue> {
    let (v, log_factor) = centered_series(x, y, k, controls)?;
    Ok(v.scaled(log_factor.exp()))
}

impl SeriesValue {
    pub(crate) fn scaled(self, s: f64) -> Self {
        Self {
            value: self.value * s,
            last_layer: self.last_layer * s,
            ..self
        }
    }
}

/// The series at centered arguments and the log of the shift factor.
pub(crate) fn centered_series(x: &[f64], y: &[f64], k: f64, controls: SeriesControls) -> Result<(SeriesValue, f64)> {
    let n_vars = x.len();
    if y.len() != n_vars {
        return Err(Error::Dimension {
            expected: n_vars,
            got: y.len(),
        });
    }
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain(format!("k must be positive, got {k}")));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::Domain("non-finite argument".into()));
    }
    if n_vars == 0 {
        let one = SeriesValue {
            value: 1.0,
            degree: 0,
            last_layer: 0.0,
            converged: true,
        };
        return Ok((one, 0.0));
    }
    let nf = n_vars as f64;
    let (xm, ym) = (x.iter().sum::<f64>() / nf, y.iter().sum::<f64>() / nf);
    let xc: Vec<f64> = x.iter().map(|v| v - xm).collect();
    let yc: Vec<f64> = y.iter().map(|v| v - ym).collect();
    Ok((raw_series(&xc, &yc, k, controls)?, nf * xm * ym))
}

fn raw_series(x: &[f64], y: &[f64], k: f64, controls: SeriesControls) -> Result<SeriesValue> {
    let n_vars = x.len();
    let alpha = 1.0 / k;
    let mut sum = 1.0;
    let mut last_layer = 0.0;
    let mut small_run = 0;
    for n in 1..=controls.max_degree {
        let table = jack_table(n, &alpha, n_vars)?;
        let mx = MonomialValues::new(table.parts(), x);
        let my = MonomialValues::new(table.parts(), y);
        let layer: f64 = table
            .parts()
            .iter()
            .enumerate()
            .map(|(t, tau)| series_weight(tau, k, n_vars) * mx.combine(table.row(t)) * my.combine(table.row(t)))
            .sum();
        sum += layer;
        last_layer = layer.abs();
        if last_layer <= controls.rel_tol * sum.abs() {
            small_run += 1;
            if small_run == 2 {
                return Ok(SeriesValue {
                    value: sum,
                    degree: n,
                    last_layer,
                    converged: true,
                });
            }
        } else {
            small_run = 0;
        }
    }
    Ok(SeriesValue {
        value: sum,
        degree: controls.max_degree,
        last_layer,
        converged: false,
    })
}

/// The symmetrized Dunkl kernel `N! 0F0(x, y)`.
pub fn symmetrized_kernel(x: &[f64], y: &[f64], k: f64, controls: SeriesControls) -> Result<SeriesValue> {
    let v = hypergeom_00(x, y, k, controls)?;
    let nf: f64 = factorial(x.len() as u32).to_string().parse().expect("factorial parses");
    Ok(v.scaled(nf))
}
