//! The large-deviation function
//!
//! ```text
//! F_N(v, t) = (N/2)(N-1)(1 - log t) - sum_j j log j + 2 log|h_N(v)| - v^2/2t
//! ```
//!
//! whose unique maximum (value zero) sits at `sqrt(2t) rho z_N`, and the
//! deterministic flow `dv_i/dt = sum_{j != i} 1/(v_i - v_j)`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{hermite_roots, sum_j_log_j};
use crate::error::{Error, Result};

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("t must be positive, got {t}")))
    }
}

fn check_distinct(v: &[f64]) -> Result<()> {
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            if v[i] == v[j] {
                return Err(Error::Coincident { name: "v" });
            }
        }
    }
    Ok(())
}

/// `F_N(., t)` for a fixed `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreezeFunction {
    pub n: usize,
    pub t: f64,
}

impl FreezeFunction {
    pub fn new(n: usize, t: f64) -> Result<Self> {
        check_t(t)?;
        Ok(Self { n, t })
    }

    fn check_dim(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `-inf` when two components coincide.
    pub fn eval(&self, v: &[f64]) -> Result<f64> {
        self.check_dim(v)?;
        let n = self.n as f64;
        let mut log_h = 0.0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                log_h += (v[j] - v[i]).abs().ln();
            }
        }
        let sq: f64 = v.iter().map(|x| x * x).sum();
        Ok(0.5 * n * (n - 1.0) * (1.0 - self.t.ln()) - sum_j_log_j(self.n) + 2.0 * log_h - sq / (2.0 * self.t))
    }

    pub fn grad(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(v)?;
        check_distinct(v)?;
        Ok((0..self.n)
            .map(|i| {
                let rep: f64 = (0..self.n).filter(|&j| j != i).map(|j| 2.0 / (v[i] - v[j])).sum();
                rep - v[i] / self.t
            })
            .collect())
    }

    pub fn hess(&self, v: &[f64]) -> Result<DMatrix<f64>> {
        self.check_dim(v)?;
        check_distinct(v)?;
        let mut h = DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            let mut diag = -1.0 / self.t;
            for j in 0..self.n {
                if j != i {
                    let c = 2.0 / (v[i] - v[j]).powi(2);
                    h[(i, j)] = c;
                    diag -= c;
                }
            }
            h[(i, i)] = diag;
        }
        Ok(h)
    }
}

pub fn freeze_eval(v: &[f64], t: f64) -> Result<f64> {
    FreezeFunction::new(v.len(), t)?.eval(v)
}

pub fn freeze_grad(v: &[f64], t: f64) -> Result<Vec<f64>> {
    FreezeFunction::new(v.len(), t)?.grad(v)
}

pub fn freeze_hess(v: &[f64], t: f64) -> Result<DMatrix<f64>> {
    FreezeFunction::new(v.len(), t)?.hess(v)
}

/// Frozen configuration `sqrt(2t) z_N`, sorted.
pub fn freeze_prediction(n: usize, t: f64) -> Result<Vec<f64>> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("t must be non-negative, got {t}")));
    }
    let s = (2.0 * t).sqrt();
    Ok(hermite_roots(n)?.roots.iter().map(|z| s * z).collect())
}

/// Step control for [`freeze_ode`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeControls {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Smallest step relative to the current time before giving up.
    pub min_step_ratio: f64,
}

impl Default for OdeControls {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            max_steps: 1_000_000,
            min_step_ratio: 1e-14,
        }
    }
}

/// Accepted steps of [`freeze_ode`], including both end points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OdeTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

impl OdeTrajectory {
    pub fn last(&self) -> &[f64] {
        self.states.last().expect("trajectory holds its start")
    }
}

fn field(v: &[f64], out: &mut [f64]) {
    for i in 0..v.len() {
        out[i] = (0..v.len()).filter(|&j| j != i).map(|j| 1.0 / (v[i] - v[j])).sum();
    }
}

const A: [&[f64]; 6] = [
    &[1.0 / 5.0],
    &[3.0 / 40.0, 9.0 / 40.0],
    &[44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0],
    &[19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0],
    &[
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
    ],
    &[
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrates the freezing flow from `(t0, v0)` to `t1` with the
/// Dormand-Prince 5(4) pair. Each accepted state is checked to be strictly
/// increasing.
pub fn freeze_ode(v0: &[f64], t0: f64, t1: f64, controls: OdeControls) -> Result<OdeTrajectory> {
    check_t(t0)?;
    if !(t1 > t0 && t1.is_finite()) {
        return Err(Error::Domain(format!("need t1 > t0, got t0 = {t0}, t1 = {t1}")));
    }
    if v0.iter().any(|x| !x.is_finite()) || v0.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Unordered { name: "v0" });
    }
    let n = v0.len();
    let mut traj = OdeTrajectory {
        times: vec![t0],
        states: vec![v0.to_vec()],
    };
    if n < 2 {
        traj.times.push(t1);
        traj.states.push(v0.to_vec());
        return Ok(traj);
    }

    let mut t = t0;
    let mut y = v0.to_vec();
    let mut k = vec![vec![0.0; n]; 7];
    field(&y, &mut k[0]);
    let min_gap = v0.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let mut h = (0.01 * min_gap * min_gap).min(t1 - t0);
    let mut stage = vec![0.0; n];
    let mut y_new = vec![0.0; n];

    for _ in 0..controls.max_steps {
        if t >= t1 {
            return Ok(traj);
        }
        let last = h >= t1 - t;
        if last {
            h = t1 - t;
        }
        for s in 0..6 {
            for i in 0..n {
                stage[i] = y[i] + h * A[s].iter().enumerate().map(|(j, a)| a * k[j][i]).sum::<f64>();
            }
            if s == 5 {
                y_new.copy_from_slice(&stage);
            }
            field(&stage, &mut k[s + 1]);
        }
        let mut err = 0.0;
        for i in 0..n {
            let e: f64 = h * (0..7).map(|j| E[j] * k[j][i]).sum::<f64>();
            let sc = controls.atol + controls.rtol * y[i].abs().max(y_new[i].abs());
            err += (e / sc).powi(2);
        }
        let err = (err / n as f64).sqrt();
        let ordered = y_new.windows(2).all(|w| w[0] < w[1]);
        if err.is_finite() && err <= 1.0 && ordered {
            t = if last { t1 } else { t + h };
            y.copy_from_slice(&y_new);
            k.swap(0, 6);
            traj.times.push(t);
            traj.states.push(y.clone());
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            h *= factor;
        } else {
            let factor = if err.is_finite() {
                (0.9 * err.powf(-0.2)).clamp(0.1, 0.5)
            } else {
                0.1
            };
            h *= factor;
            if h < controls.min_step_ratio * t.max(1.0) {
                return Err(Error::StepUnderflow { time: t });
            }
        }
    }
    if t >= t1 {
        Ok(traj)
    } else {
        Err(Error::StepUnderflow { time: t })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ordered(raw: &[f64]) -> Vec<f64> {
        // cumulative gaps keep components well separated
        let mut v = Vec::with_capacity(raw.len());
        let mut acc = -1.5;
        for g in raw {
            acc += 0.2 + g;
            v.push(acc);
        }
        v
    }

    #[test]
    fn maximum_at_scaled_roots() {
        for n in 1..=12 {
            for t in [0.25, 1.0, 3.5] {
                let v = freeze_prediction(n, t).unwrap();
                assert!(freeze_eval(&v, t).unwrap().abs() < 1e-9, "N = {n}, t = {t}");
                let g = freeze_grad(&v, t).unwrap();
                assert!(g.iter().map(|x| x * x).sum::<f64>().sqrt() < 1e-9);
                let mut p = v.clone();
                p.reverse();
                p.rotate_left(n / 2);
                assert!(freeze_eval(&p, t).unwrap().abs() < 1e-9);
            }
        }
    }

    #[test]
    fn prediction_values() {
        let v = freeze_prediction(2, 0.5).unwrap();
        assert!((v[1] - 0.5f64.sqrt()).abs() < 1e-15 && (v[0] + v[1]).abs() == 0.0);
        assert_eq!(freeze_prediction(3, 0.0).unwrap(), vec![0.0; 3]);
        let v = freeze_prediction(3, 2.0).unwrap();
        assert!((v[2] - 2.0 * 1.5f64.sqrt()).abs() < 1e-14);
        assert!(freeze_prediction(3, -1.0).is_err());
    }

    #[test]
    fn coincident_components() {
        let v = [0.0, 1.0, 1.0];
        assert_eq!(freeze_eval(&v, 1.0).unwrap(), f64::NEG_INFINITY);
        assert!(freeze_grad(&v, 1.0).is_err());
        assert!(freeze_hess(&v, 1.0).is_err());
        assert!(freeze_eval(&v, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn gradient_matches_differences(raw in prop::collection::vec(0.0f64..1.0, 2..=6), t in 0.2f64..3.0) {
            let v = ordered(&raw);
            let g = freeze_grad(&v, t).unwrap();
            for i in 0..v.len() {
                let h = 1e-5;
                let mut p = v.clone();
                let mut m = v.clone();
                p[i] += h;
                m[i] -= h;
                let fd = (freeze_eval(&p, t).unwrap() - freeze_eval(&m, t).unwrap()) / (2.0 * h);
                prop_assert!((fd - g[i]).abs() <= 1e-6 * (1.0 + g[i].abs()));
            }
        }

        #[test]
        fn hessian_matches_differences(raw in prop::collection::vec(0.0f64..1.0, 2..=6), t in 0.2f64..3.0) {
            let v = ordered(&raw);
            let hs = freeze_hess(&v, t).unwrap();
            for j in 0..v.len() {
                let h = 1e-6;
                let mut p = v.clone();
                let mut m = v.clone();
                p[j] += h;
                m[j] -= h;
                let gp = freeze_grad(&p, t).unwrap();
                let gm = freeze_grad(&m, t).unwrap();
                for i in 0..v.len() {
                    let fd = (gp[i] - gm[i]) / (2.0 * h);
                    prop_assert!((fd - hs[(i, j)]).abs() <= 1e-5 * (1.0 + hs[(i, j)].abs()));
                }
            }
        }

        #[test]
        fn hessian_is_negative_definite(
            raw in prop::collection::vec(0.0f64..1.0, 2..=6),
            u in prop::collection::vec(-1.0f64..1.0, 6),
            t in 0.2f64..3.0,
        ) {
            let v = ordered(&raw);
            let n = v.len();
            let u = &u[..n];
            prop_assume!(u.iter().any(|x| x.abs() > 1e-3));
            let hs = freeze_hess(&v, t).unwrap();
            let mut q = 0.0;
            for i in 0..n {
                for j in 0..n {
                    q += u[i] * hs[(i, j)] * u[j];
                }
            }
            let mut closed = -u.iter().map(|x| x * x).sum::<f64>() / t;
            for i in 0..n {
                for j in (i + 1)..n {
                    closed -= 2.0 * (u[i] - u[j]).powi(2) / (v[i] - v[j]).powi(2);
                }
            }
            prop_assert!(q < 0.0);
            prop_assert!((q - closed).abs() <= 1e-10 * closed.abs());
        }

        #[test]
        fn flow_conserves_centre(raw in prop::collection::vec(0.0f64..1.0, 2..=5)) {
            let v0 = ordered(&raw);
            let traj = freeze_ode(&v0, 0.5, 2.0, OdeControls::default()).unwrap();
            let s0: f64 = v0.iter().sum();
            for s in &traj.states {
                prop_assert!(s.windows(2).all(|w| w[0] < w[1]));
                prop_assert!((s.iter().sum::<f64>() - s0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn self_similar_solution() {
        for n in 2..=8 {
            let v0 = freeze_prediction(n, 0.5).unwrap();
            let traj = freeze_ode(&v0, 0.5, 4.0, OdeControls::default()).unwrap();
            assert_eq!(*traj.times.last().unwrap(), 4.0);
            let expected = freeze_prediction(n, 4.0).unwrap();
            for (a, b) in traj.last().iter().zip(&expected) {
                assert!((a - b).abs() < 1e-8, "N = {n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn arbitrary_start_approaches_roots() {
        let v0 = [-0.3, -0.1, 0.05, 0.4];
        let z = hermite_roots(4).unwrap().roots.clone();
        let centre = v0.iter().sum::<f64>() / 4.0;
        let mut t = 1.0;
        let mut prev = f64::INFINITY;
        let mut v = v0.to_vec();
        let mut t_prev = 0.1;
        for _ in 0..8 {
            let traj = freeze_ode(&v, t_prev, t, OdeControls::default()).unwrap();
            v = traj.last().to_vec();
            let dev = v
                .iter()
                .zip(&z)
                .map(|(a, b)| ((a - centre) / (2.0 * t).sqrt() - b).abs())
                .fold(0.0, f64::max);
            assert!(dev < prev, "deviation {dev} did not decrease");
            prev = dev;
            t_prev = t;
            t *= 2.0;
        }
        assert!(prev < 0.05);
    }

    #[test]
    fn rejects_bad_starts() {
        let c = OdeControls::default();
        assert!(freeze_ode(&[1.0, 0.0], 1.0, 2.0, c).is_err());
        assert!(freeze_ode(&[0.0, 1.0], 0.0, 2.0, c).is_err());
        assert!(freeze_ode(&[0.0, 1.0], 1.0, 0.5, c).is_err());
        let single = freeze_ode(&[0.3], 1.0, 2.0, c).unwrap();
        assert_eq!(single.last(), &[0.3]);
    }
}
