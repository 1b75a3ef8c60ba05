//! The type-A intertwining operator `V_k` on symmetric polynomials and the
//! transition densities built from it.
//!
//! On monomial symmetric functions,
//!
//! ```text
//! V_k m_lambda = lambda! M(lambda, N) sum_{|tau| = |lambda|, l(tau) <= N}
//!                (c_tau / c'_tau) u_{tau,lambda} / (kN)_tau  P_tau
//! ```
//!
//! with all Jack quantities at `alpha = 1/k`. [`intertwine_monomial`]
//! evaluates this exactly and returns the result in the monomial basis.
//! As `k -> infinity` only one-row partitions survive and the image
//! collapses onto a power of `e_1`; see [`intertwine_limit`].

mod series;
mod tpd;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use series::{hypergeom_00, series_weight, symmetrized_kernel, SeriesControls, SeriesValue};
pub use tpd::{
    dunkl_tpd_symmetric, dyson_tpd_series, grabiner_sorted_marginal_cdf, grabiner_tpd, sort_strict, vandermonde,
    weight_norm, Density, TpdQuery, WeightNorm,
};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::symfunc::{hook_products, jack_table, pochhammer_general, Basis, Rational, SymPoly};

/// `V_k m_lambda` in the monomial basis.
#[derive(Debug, Clone, PartialEq)]
pub struct IntertwineResult {
    pub lambda: Partition,
    pub k: Rational,
    pub n_vars: usize,
    pub output: SymPoly,
}

/// Exact action of `V_k` on `m_lambda` in `n_vars` variables.
pub fn intertwine_monomial(lambda: &Partition, k: &Rational, n_vars: usize) -> Result<IntertwineResult> {
    lambda.check_len(n_vars)?;
    if k.is_negative() {
        return Err(Error::Domain(format!("k must be non-negative, got {k}")));
    }
    let result = |output| IntertwineResult {
        lambda: lambda.clone(),
        k: k.clone(),
        n_vars,
        output,
    };
    if k.is_zero() {
        return Ok(result(SymPoly::monomial(lambda, n_vars)?));
    }

    let alpha = Rational::one() / k;
    let degree = lambda.modulus();
    let table = jack_table(degree, &alpha, n_vars)?;
    let l = table.index_of(lambda).expect("partition enumerated for its degree");
    let prefactor =
        Rational::from_integer(BigInt::from(lambda.factorial()) * BigInt::from(lambda.multiplicity_count(n_vars)?));
    let kn = k * Rational::from_integer(n_vars.into());

    let mut out = SymPoly::zero(Basis::Monomial, degree, n_vars);
    for (t, tau) in table.parts().iter().enumerate() {
        let u = table.entry(t, l);
        if u.is_zero() {
            continue;
        }
        let (c, c_prime) = hook_products(tau, &alpha)?;
        let poch = pochhammer_general(&kn, tau, &alpha)?;
        let weight = &prefactor * c / c_prime * u / poch;
        for (mu, u_mu) in table.row(t) {
            out.add_term(&table.parts()[*mu], &weight * u_mu)?;
        }
    }
    Ok(result(out))
}

/// Strong-coupling limit `lim_{k->inf} V_k m_lambda = M(lambda,N)/N^|lambda| e_1^|lambda|`.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitResult {
    pub lambda: Partition,
    pub n_vars: usize,
    /// `M(lambda, N) / N^|lambda|`, multiplying `e_1^|lambda|`.
    pub coefficient: Rational,
    /// The full limit expanded in monomials.
    pub expansion: SymPoly,
}

pub fn intertwine_limit(lambda: &Partition, n_vars: usize) -> Result<LimitResult> {
    let m = BigInt::from(lambda.multiplicity_count(n_vars)?);
    let n = lambda.modulus();
    let coefficient = Rational::new(m, num_traits::pow(BigInt::from(n_vars), n as usize));
    let expansion = SymPoly::power_sum_one(n, n_vars).scaled(&coefficient);
    Ok(LimitResult {
        lambda: lambda.clone(),
        n_vars,
        coefficient,
        expansion,
    })
}

/// Closed forms of `V_k` on non-symmetric monomials of degree one and two
/// available for small `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonSymCase {
    /// `V_k x_i`, any `N`.
    Linear,
    /// `V_k x_i^2`, `N = 2`.
    QuadraticN2,
    /// `V_k x_i^2`, `N = 3`.
    QuadraticN3,
}

/// Evaluates `V_k x_i` or `V_k x_i^2` at `x` (index `i` is 0-based).
pub fn nonsym_reference(case: NonSymCase, i: usize, k: f64, x: &[f64]) -> Result<f64> {
    let n = x.len();
    if i >= n {
        return Err(Error::Domain(format!("index {i} out of range for N = {n}")));
    }
    let s: f64 = x.iter().sum();
    let xi = x[i];
    match case {
        NonSymCase::Linear => Ok((xi + k * s) / (1.0 + n as f64 * k)),
        NonSymCase::QuadraticN2 if n == 2 => Ok((2.0 * xi * xi + k * s * s) / (2.0 * (1.0 + 2.0 * k))),
        NonSymCase::QuadraticN3 if n == 3 => {
            let sq: f64 = x.iter().map(|v| v * v).sum();
            Ok((2.0 * xi * (xi + k * s) + k * (sq + k * s * s)) / ((2.0 + 3.0 * k) * (1.0 + 3.0 * k)))
        }
        _ => Err(Error::Unsupported(format!("{case:?} with N = {n}"))),
    }
}
