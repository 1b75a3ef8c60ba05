//! Symmetric functions in `N` variables over an exact or floating field.
//!
//! The engine is generic over [`Scalar`], implemented for `f64` and for
//! [`Rational`] (arbitrary-precision). Exact results (Jack coefficients,
//! hook products, intertwining coefficients) use `Rational`; the analytic
//! layer reuses the same code paths in `f64`.

mod eval;
mod hooks;
mod jack;
mod operator;
mod sympoly;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Num, Signed, Zero};

pub use eval::{eval_elementary, eval_elementary_partition, eval_monomial, eval_schur, MonomialValues};
pub use hooks::{hook_products, jack_at_ones, jack_c_from_p, pochhammer_general};
pub use jack::{jack_eigenvalue, jack_expansion, jack_table, JackExpansion, JackTable};
pub use operator::{operator_matrix, OperatorMatrix};
pub use sympoly::{Basis, SymPoly};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

/// Field of coefficients the symmetric-function engine computes over.
pub trait Scalar: Clone + Debug + Num + Signed + FromPrimitive + PartialOrd + Send + Sync + 'static {
    fn from_int(i: i64) -> Self {
        Self::from_i64(i).expect("integer fits in scalar")
    }

    /// Key identifying the value exactly, used for memoization.
    fn memo_key(&self) -> String;
}

impl Scalar for f64 {
    fn memo_key(&self) -> String {
        format!("{:016x}", self.to_bits())
    }
}

impl Scalar for Rational {
    fn memo_key(&self) -> String {
        self.to_string()
    }
}

/// Integer power by repeated squaring.
pub(crate) fn pow<T: Scalar>(x: &T, e: u32) -> T {
    num_traits::pow(x.clone(), e as usize)
}

pub(crate) fn check_alpha<T: Scalar>(alpha: &T) -> Result<()> {
    if *alpha <= T::zero() {
        return Err(Error::Domain(format!("alpha must be positive, got {alpha:?}")));
    }
    Ok(())
}

/// Parses "p/q", an integer, or a terminating decimal into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Domain(format!("cannot parse {s:?} as a rational"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(digits, scale));
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// Converts an exact rational to the nearest `f64` (via a scaled integer
/// quotient so huge numerators and denominators do not overflow).
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = 60 - (nb - db);
    let scaled = if shift >= 0 {
        (r.numer() << shift as usize) / r.denom()
    } else {
        r.numer() / (r.denom() << (-shift) as usize)
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-shift as i32)
}

/// Exact rational from an `f64` (dyadic expansion).
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}
