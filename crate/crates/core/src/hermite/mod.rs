//! Roots of the physicists' Hermite polynomials and the strong-coupling
//! (freezing) analysis built on them.
//!
//! The roots `z_N` are the eigenvalues of the Jacobi matrix with zero
//! diagonal and off-diagonal `sqrt(i/2)`, polished by one Newton step on the
//! orthonormal three-term recurrence.

mod freeze;

pub use freeze::{
    freeze_eval, freeze_grad, freeze_hess, freeze_ode, freeze_prediction, FreezeFunction, OdeControls, OdeTrajectory,
};

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_HERMITE_DEGREE: usize = 50;

/// Sorted roots `z_1 < ... < z_N` of `H_N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HermiteRoots {
    pub n: usize,
    pub roots: Vec<f64>,
}

/// Orthonormal Hermite values `(h_N(x), h_{N-1}(x))`, with
/// `h_{n+1} = sqrt(2/(n+1)) x h_n - sqrt(n/(n+1)) h_{n-1}`.
///
/// These are `H_n` up to positive constants, so they share roots and
/// `h_N' = sqrt(2N) h_{N-1}`.
fn orthonormal_pair(n: usize, x: f64) -> (f64, f64) {
    let (mut prev, mut cur) = (0.0, 1.0);
    for m in 0..n {
        let next = (2.0 / (m + 1) as f64).sqrt() * x * cur - (m as f64 / (m + 1) as f64).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Newton correction `h_N(x) / h_N'(x)`, a local distance-to-root estimate.
fn newton_step(n: usize, x: f64) -> f64 {
    let (h, hm) = orthonormal_pair(n, x);
    h / ((2.0 * n as f64).sqrt() * hm)
}

fn compute_roots(n: usize) -> HermiteRoots {
    let jacobi = DMatrix::from_fn(n, n, |i, j| {
        if i + 1 == j || j + 1 == i {
            (i.max(j) as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    });
    let mut roots: Vec<f64> = SymmetricEigen::new(jacobi)
        .eigenvalues
        .iter()
        .map(|z| z - newton_step(n, *z))
        .collect();
    roots.sort_by(f64::total_cmp);
    // exact symmetry about the origin
    for i in 0..n / 2 {
        let m = 0.5 * (roots[n - 1 - i] - roots[i]);
        roots[i] = -m;
        roots[n - 1 - i] = m;
    }
    if n % 2 == 1 {
        roots[n / 2] = 0.0;
    }
    HermiteRoots { n, roots }
}

type Cache = RwLock<HashMap<usize, Arc<HermiteRoots>>>;

/// Roots of `H_N` for `1 <= N <= 50`, memoized.
pub fn hermite_roots(n: usize) -> Result<Arc<HermiteRoots>> {
    if !(1..=MAX_HERMITE_DEGREE).contains(&n) {
        return Err(Error::Domain(format!(
            "Hermite degree must lie in 1..={MAX_HERMITE_DEGREE}, got {n}"
        )));
    }
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.read().expect("root cache poisoned").get(&n) {
        return Ok(Arc::clone(r));
    }
    let r = Arc::new(compute_roots(n));
    Ok(Arc::clone(
        cache.write().expect("root cache poisoned").entry(n).or_insert(r),
    ))
}

impl HermiteRoots {
    /// `max_i |H_N(z_i) / H_N'(z_i)|`.
    pub fn max_residual(&self) -> f64 {
        self.roots
            .iter()
            .map(|z| newton_step(self.n, *z).abs())
            .fold(0.0, f64::max)
    }

    /// `max_i |z_i - sum_{j != i} 1/(z_i - z_j)|`.
    pub fn fixed_point_residual(&self) -> f64 {
        let z = &self.roots;
        (0..self.n)
            .map(|i| {
                let field: f64 = (0..self.n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
                (z[i] - field).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Sum rules of the Hermite roots next to their closed forms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootIdentities {
    pub n: usize,
    pub sum: f64,
    pub sum_sq: f64,
    /// `N(N-1)/2`.
    pub sum_sq_expected: f64,
    /// `2 log|h_N(z_N)|`.
    pub log_discriminant: f64,
    /// `sum_j j log j - (N/2)(N-1) log 2`.
    pub log_discriminant_expected: f64,
    pub max_residual: f64,
    pub fixed_point_residual: f64,
}

pub fn root_identities(n: usize) -> Result<RootIdentities> {
    let r = hermite_roots(n)?;
    let z = &r.roots;
    let mut log_disc = 0.0;
    for j in 0..n {
        for i in 0..j {
            log_disc += 2.0 * (z[j] - z[i]).ln();
        }
    }
    let nf = n as f64;
    Ok(RootIdentities {
        n,
        sum: z.iter().sum(),
        sum_sq: z.iter().map(|v| v * v).sum(),
        sum_sq_expected: nf * (nf - 1.0) / 2.0,
        log_discriminant: log_disc,
        log_discriminant_expected: sum_j_log_j(n) - 0.5 * nf * (nf - 1.0) * std::f64::consts::LN_2,
        max_residual: r.max_residual(),
        fixed_point_residual: r.fixed_point_residual(),
    })
}

pub(crate) fn sum_j_log_j(n: usize) -> f64 {
    (1..=n).map(|j| j as f64 * (j as f64).ln()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `H_n(x)` by the physicists' recurrence.
    fn hermite_h(n: usize, x: f64) -> f64 {
        let (mut prev, mut cur) = (0.0, 1.0);
        for m in 0..n {
            let next = 2.0 * x * cur - 2.0 * m as f64 * prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    #[test]
    fn small_degrees() {
        assert_eq!(hermite_roots(1).unwrap().roots, vec![0.0]);
        let r = &hermite_roots(2).unwrap().roots;
        let s = 0.5f64.sqrt();
        assert!((r[0] + s).abs() < 1e-15 && (r[1] - s).abs() < 1e-15);
        let r = &hermite_roots(3).unwrap().roots;
        let s = 1.5f64.sqrt();
        assert!((r[0] + s).abs() < 1e-15 && r[1] == 0.0 && (r[2] - s).abs() < 1e-15);
        assert!(hermite_roots(0).is_err());
        assert!(hermite_roots(51).is_err());
    }

    #[test]
    fn roots_are_zeros_of_the_recurrence() {
        for n in 1..=50 {
            let r = hermite_roots(n).unwrap();
            assert!(r.roots.windows(2).all(|w| w[0] < w[1]));
            assert!(r.max_residual() < 1e-12, "N = {n}: {}", r.max_residual());
            if n <= 12 {
                for z in &r.roots {
                    let scale = hermite_h(n - 1, *z).abs() * 2.0 * n as f64;
                    assert!(hermite_h(n, *z).abs() <= 1e-9 * scale);
                }
            }
        }
    }

    #[test]
    fn identities() {
        for n in 1..=50 {
            let id = root_identities(n).unwrap();
            assert!(id.sum.abs() < 1e-12);
            assert!((id.sum_sq - id.sum_sq_expected).abs() < 1e-10 * (n * n) as f64);
            assert!(
                (id.log_discriminant - id.log_discriminant_expected).abs()
                    < 1e-10 * (1.0 + id.log_discriminant_expected.abs()),
                "N = {n}"
            );
            assert!(id.fixed_point_residual < 1e-9, "N = {n}: {}", id.fixed_point_residual);
        }
        // N = 2: (z2 - z1)^2 = 2
        let id = root_identities(2).unwrap();
        assert!((id.log_discriminant.exp() - 2.0).abs() < 1e-14);
        assert!((id.log_discriminant_expected.exp() - 2.0).abs() < 1e-14);
        let id = root_identities(1).unwrap();
        assert_eq!((id.sum, id.sum_sq, id.log_discriminant), (0.0, 0.0, 0.0));
    }

    #[test]
    fn interlacing() {
        for n in 1..50 {
            let a = hermite_roots(n).unwrap();
            let b = hermite_roots(n + 1).unwrap();
            for i in 0..n {
                assert!(b.roots[i] < a.roots[i] && a.roots[i] < b.roots[i + 1]);
            }
        }
    }
}
