//! Transition densities of Dyson's Brownian motion and of the symmetric
//! (radial) type-A Dunkl process, plus the Gaussian normalization `c_k`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;
use statrs::function::gamma::ln_gamma;

use super::series::{centered_series, SeriesControls, SeriesValue};
use crate::error::{Error, Result};
use crate::symfunc::{rational_from_f64, rational_to_f64, Rational};

const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Evaluation point of a transition density `p(t, y | x)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TpdQuery {
    pub t: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub beta: f64,
    #[serde(default)]
    pub controls: SeriesControls,
}

impl TpdQuery {
    pub fn new(t: f64, x: Vec<f64>, y: Vec<f64>, beta: f64) -> Self {
        Self {
            t,
            x,
            y,
            beta,
            controls: SeriesControls::default(),
        }
    }

    /// Query parametrized by the Dunkl coupling, `beta = 2k`.
    pub fn with_k(t: f64, x: Vec<f64>, y: Vec<f64>, k: f64) -> Self {
        Self::new(t, x, y, 2.0 * k)
    }

    pub fn k(&self) -> f64 {
        self.beta / 2.0
    }

    pub fn n_vars(&self) -> usize {
        self.x.len()
    }

    fn validate(&self) -> Result<()> {
        if !(self.t > 0.0 && self.t.is_finite()) {
            return Err(Error::Domain(format!("t must be positive, got {}", self.t)));
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::Domain(format!("beta must be positive, got {}", self.beta)));
        }
        if self.y.len() != self.x.len() {
            return Err(Error::Dimension {
                expected: self.x.len(),
                got: self.y.len(),
            });
        }
        if self.x.is_empty() {
            return Err(Error::Domain("N must be at least 1".into()));
        }
        check_increasing(&self.x, "x")?;
        check_increasing(&self.y, "y")
    }

    fn scaled(&self) -> (Vec<f64>, Vec<f64>) {
        let s = self.t.sqrt();
        (
            self.x.iter().map(|v| v / s).collect(),
            self.y.iter().map(|v| v / s).collect(),
        )
    }
}

/// A density value with the series diagnostics when a series was summed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Density {
    pub value: f64,
    pub series: Option<SeriesValue>,
}

fn check_increasing(v: &[f64], name: &'static str) -> Result<()> {
    if v.iter().any(|c| !c.is_finite()) {
        return Err(Error::Domain(format!("{name} has non-finite components")));
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Coincident { name });
    }
    if v.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Unordered { name });
    }
    Ok(())
}

/// Determinant by partial pivoting; exactly zero once a pivot column
/// vanishes (LU in nalgebra yields NaN there).
fn determinant(mut m: DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut det = 1.0;
    for c in 0..n {
        let (piv, val) = (c..n)
            .map(|r| (r, m[(r, c)].abs()))
            .fold((c, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if val == 0.0 {
            return 0.0;
        }
        if piv != c {
            m.swap_rows(piv, c);
            det = -det;
        }
        let p = m[(c, c)];
        det *= p;
        for r in (c + 1)..n {
            let f = m[(r, c)] / p;
            if f != 0.0 {
                for j in c..n {
                    let v = m[(c, j)];
                    m[(r, j)] -= f * v;
                }
            }
        }
    }
    det
}

/// Sorted copy of `v`; fails on coincident or non-finite components.
pub fn sort_strict(v: &[f64], name: &'static str) -> Result<Vec<f64>> {
    let mut s = v.to_vec();
    if s.iter().any(|c| !c.is_finite()) {
        return Err(Error::Domain(format!("{name} has non-finite components")));
    }
    s.sort_by(f64::total_cmp);
    check_increasing(&s, name)?;
    Ok(s)
}

/// `h_N(x) = prod_{i<j} (x_j - x_i)`.
pub fn vandermonde(x: &[f64]) -> f64 {
    let mut h = 1.0;
    for j in 0..x.len() {
        for i in 0..j {
            h *= x[j] - x[i];
        }
    }
    h
}

fn log_abs_vandermonde(x: &[f64]) -> f64 {
    let mut s = 0.0;
    for j in 0..x.len() {
        for i in 0..j {
            s += (x[j] - x[i]).abs().ln();
        }
    }
    s
}

fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

fn converged(v: SeriesValue) -> Result<SeriesValue> {
    if v.converged {
        Ok(v)
    } else {
        Err(Error::SeriesNotConverged {
            degree: v.degree as usize,
            last_layer: v.last_layer,
        })
    }
}

/// Density of Dyson's Brownian motion from its Jack series:
///
/// ```text
/// N! e^{-(x^2+y^2)/2t} / (2 pi t)^{N/2} prod_j G(1+beta/2)/G(1+j beta/2)
///    |h_N(y/sqrt t)|^beta  0F0^{(2/beta)}(x/sqrt t, y/sqrt t)
/// ```
pub fn dyson_tpd_series(q: &TpdQuery) -> Result<Density> {
    q.validate()?;
    let n = q.n_vars();
    let (xs, ys) = q.scaled();
    let (series, log_shift) = centered_series(&xs, &ys, q.k(), q.controls)?;
    let series = converged(series)?;
    let sq: f64 = q.x.iter().chain(&q.y).map(|v| v * v).sum();
    let half_beta = q.beta / 2.0;
    let gammas: f64 = (1..=n)
        .map(|j| ln_gamma(1.0 + half_beta) - ln_gamma(1.0 + j as f64 * half_beta))
        .sum();
    let log_pre = ln_factorial(n) - sq / (2.0 * q.t) - 0.5 * n as f64 * (LN_2PI + q.t.ln())
        + gammas
        + q.beta * log_abs_vandermonde(&ys)
        + log_shift;
    Ok(Density {
        value: log_pre.exp() * series.value,
        series: Some(series.scaled(log_shift.exp())),
    })
}

/// Non-colliding Brownian motion density `h(y)/h(x) det[phi_t(x_i - y_j)]`.
/// Only defined at `beta = 2`.
pub fn grabiner_tpd(q: &TpdQuery) -> Result<Density> {
    q.validate()?;
    if q.beta != 2.0 {
        return Err(Error::Domain(format!(
            "determinantal density requires beta = 2, got {}",
            q.beta
        )));
    }
    let n = q.n_vars();
    let norm = (2.0 * std::f64::consts::PI * q.t).sqrt();
    let m = DMatrix::from_fn(n, n, |i, j| {
        let d = q.x[i] - q.y[j];
        (-d * d / (2.0 * q.t)).exp() / norm
    });
    Ok(Density {
        value: vandermonde(&q.y) / vandermonde(&q.x) * determinant(m),
        series: None,
    })
}

/// Symmetric Dunkl process density
/// `e^{-(x^2+y^2)/2t} / (c_k t^{N/2}) w_k(y/sqrt t) N! 0F0(x/sqrt t, y/sqrt t)`
/// with `k = beta/2`.
pub fn dunkl_tpd_symmetric(q: &TpdQuery) -> Result<Density> {
    q.validate()?;
    let n = q.n_vars();
    let norm = WeightNorm::from_f64(n, q.k())?;
    let (xs, ys) = q.scaled();
    let (series, log_shift) = centered_series(&xs, &ys, q.k(), q.controls)?;
    let series = converged(series)?;
    let sq: f64 = q.x.iter().chain(&q.y).map(|v| v * v).sum();
    let log_pre = ln_factorial(n) - sq / (2.0 * q.t) - norm.log_c_k - 0.5 * n as f64 * q.t.ln()
        + norm.log_weight(&ys)
        + log_shift;
    Ok(Density {
        value: log_pre.exp() * series.value,
        series: Some(series.scaled((ln_factorial(n) + log_shift).exp())),
    })
}

/// Root-system weight `w_k(x) = |h_N(x)|^{2k} / 2^{gamma}` and its Gaussian
/// integral `c_k = int e^{-x^2/2} w_k(x) dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightNorm {
    pub n_vars: usize,
    pub k: f64,
    /// `gamma = k N (N-1) / 2`.
    pub gamma: Rational,
    pub c_k: f64,
    pub log_c_k: f64,
}

impl WeightNorm {
    fn build(n_vars: usize, k: f64, gamma: Rational) -> Result<Self> {
        if n_vars == 0 {
            return Err(Error::Domain("N must be at least 1".into()));
        }
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::Domain(format!("k must be positive, got {k}")));
        }
        let g = rational_to_f64(&gamma);
        let log_c_k = 0.5 * n_vars as f64 * LN_2PI - g * std::f64::consts::LN_2
            + (1..=n_vars)
                .map(|j| ln_gamma(1.0 + j as f64 * k) - ln_gamma(1.0 + k))
                .sum::<f64>();
        Ok(Self {
            n_vars,
            k,
            gamma,
            c_k: log_c_k.exp(),
            log_c_k,
        })
    }

    pub fn from_f64(n_vars: usize, k: f64) -> Result<Self> {
        let kr = rational_from_f64(k).ok_or_else(|| Error::Domain(format!("k = {k}")))?;
        Self::build(n_vars, k, gamma_of(n_vars, &kr))
    }

    pub fn log_weight(&self, x: &[f64]) -> f64 {
        2.0 * self.k * log_abs_vandermonde(x) - rational_to_f64(&self.gamma) * std::f64::consts::LN_2
    }

    pub fn weight(&self, x: &[f64]) -> f64 {
        self.log_weight(x).exp()
    }

    pub fn description(&self) -> String {
        format!(
            "w_k(x) = |h_N(x)|^(2k) / 2^gamma with N = {}, k = {}, gamma = {}",
            self.n_vars, self.k, self.gamma
        )
    }
}

fn gamma_of(n_vars: usize, k: &Rational) -> Rational {
    k * Rational::from_integer((n_vars * n_vars.saturating_sub(1) / 2).into())
}

/// Weight and normalization for rational `k > 0`.
pub fn weight_norm(n_vars: usize, k: &Rational) -> Result<WeightNorm> {
    if *k <= Rational::from_integer(0.into()) {
        return Err(Error::Domain(format!("k must be positive, got {k}")));
    }
    WeightNorm::build(n_vars, rational_to_f64(k), gamma_of(n_vars, k))
}

/// `int_{-inf}^{b} z^r phi(z) dz` for `r = 0..=r_max`.
fn truncated_gaussian_moments(b: f64, r_max: usize) -> Vec<f64> {
    let phi = (-0.5 * b * b).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut j = Vec::with_capacity(r_max + 1);
    j.push(0.5 * erfc(-b / std::f64::consts::SQRT_2));
    if r_max >= 1 {
        j.push(-phi);
    }
    let mut bp = b;
    for r in 2..=r_max {
        // b^{r-1} phi(b) vanishes as |b| grows; skip it to avoid inf * 0
        let tail = if b.is_finite() { bp * phi } else { 0.0 };
        j.push((r - 1) as f64 * j[r - 2] - tail);
        bp *= b;
    }
    j
}

/// `int_{-inf}^{a} y^i phi_t(y - x) dy` for `i = 0..=n`.
fn lower_moments(x: f64, t: f64, a: f64, n: usize) -> Vec<f64> {
    let s = t.sqrt();
    let j = truncated_gaussian_moments((a - x) / s, n);
    let mut binom = vec![1.0f64];
    (0..=n)
        .map(|i| {
            if i > 0 {
                let mut next = vec![1.0; i + 1];
                for r in 1..i {
                    next[r] = binom[r - 1] + binom[r];
                }
                binom = next;
            }
            (0..=i)
                .map(|r| binom[r] * x.powi((i - r) as i32) * s.powi(r as i32) * j[r])
                .sum()
        })
        .collect()
}

/// `int y^i phi_t(y - x) dy` over the whole line.
fn full_moments(x: f64, t: f64, n: usize) -> Vec<f64> {
    lower_moments(x, t, f64::INFINITY, n)
        .into_iter()
        .enumerate()
        .map(|(i, v)| if i == 0 { 1.0 } else { v })
        .collect()
}

/// Exact CDF `P(Y_(m) <= a)` of the `m`-th smallest coordinate (0-based)
/// under the non-colliding density started from ordered `x`.
///
/// The count of coordinates below `a` has generating function
/// `det[int y^i (1 + (s-1) 1{y<=a}) phi_t(x_j - y) dy] / h_N(x)`, which is
/// expanded column by column over subsets.
pub fn grabiner_sorted_marginal_cdf(x: &[f64], t: f64, m: usize, a: f64) -> Result<f64> {
    let n = x.len();
    if m >= n {
        return Err(Error::Domain(format!("coordinate {m} out of range for N = {n}")));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("t must be positive, got {t}")));
    }
    check_increasing(x, "x")?;
    if n > 16 {
        return Err(Error::Unsupported(format!("marginal by subset expansion with N = {n}")));
    }
    if a.is_nan() {
        return Err(Error::Domain("a is NaN".into()));
    }
    let below: Vec<Vec<f64>> = x.iter().map(|&xj| lower_moments(xj, t, a, n - 1)).collect();
    let above: Vec<Vec<f64>> = x
        .iter()
        .zip(&below)
        .map(|(&xj, b)| full_moments(xj, t, n - 1).iter().zip(b).map(|(f, l)| f - l).collect())
        .collect();
    let hx = vandermonde(x);
    let mut counts = vec![0.0; n + 1];
    for mask in 0u32..(1 << n) {
        let mat = DMatrix::from_fn(
            n,
            n,
            |i, j| {
                if mask & (1 << j) != 0 {
                    below[j][i]
                } else {
                    above[j][i]
                }
            },
        );
        counts[mask.count_ones() as usize] += determinant(mat);
    }
    let p: f64 = counts[m + 1..].iter().sum::<f64>() / hx;
    if !p.is_finite() {
        return Err(Error::Domain(format!("marginal CDF not finite at a = {a}")));
    }
    Ok(p.clamp(0.0, 1.0))
}
