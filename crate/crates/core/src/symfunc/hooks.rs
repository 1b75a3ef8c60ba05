//! Hook products, generalized Pochhammer symbols and the P/C normalization
//! conversions. All are finite products, exact when `T` is `Rational`.

use super::{check_alpha, pow, Scalar};
use crate::error::Result;
use crate::partition::Partition;

/// Generalized Pochhammer symbol
/// `(a)_tau = prod_i prod_{m=0}^{tau_i - 1} (a - (i-1)/alpha + m)`.
pub fn pochhammer_general<T: Scalar>(a: &T, tau: &Partition, alpha: &T) -> Result<T> {
    check_alpha(alpha)?;
    let mut acc = T::one();
    for (i, &part) in tau.parts().iter().enumerate() {
        let shift = a.clone() - T::from_int(i as i64) / alpha.clone();
        for m in 0..part {
            acc = acc * (shift.clone() + T::from_int(m as i64));
        }
    }
    Ok(acc)
}

/// Upper and lower hook products `(c_tau(alpha), c'_tau(alpha))`:
///
/// ```text
/// c  = prod_{(i,j)} (alpha (tau_i - j)     + tau'_j - i + 1)
/// c' = prod_{(i,j)} (alpha (tau_i - j + 1) + tau'_j - i)
/// ```
pub fn hook_products<T: Scalar>(tau: &Partition, alpha: &T) -> Result<(T, T)> {
    check_alpha(alpha)?;
    let conj = tau.conjugate();
    let mut c = T::one();
    let mut c_prime = T::one();
    // 0-based cells: arm = tau_i - j - 1, leg = tau'_j - i - 1
    for (i, j) in tau.cells() {
        let arm = T::from_int(tau.part(i) as i64 - j as i64 - 1);
        let leg = T::from_int(conj.part(j) as i64 - i as i64 - 1);
        c = c * (alpha.clone() * arm.clone() + leg.clone() + T::one());
        c_prime = c_prime * (alpha.clone() * (arm + T::one()) + leg);
    }
    Ok((c, c_prime))
}

/// Multiplier taking `P_tau` to `C_tau`: `alpha^|tau| |tau|! / c'_tau(alpha)`.
pub fn jack_c_from_p<T: Scalar>(tau: &Partition, alpha: &T) -> Result<T> {
    let (_, c_prime) = hook_products(tau, alpha)?;
    let n = tau.modulus();
    let fact = (1..=n as i64).fold(T::one(), |acc, i| acc * T::from_int(i));
    Ok(pow(alpha, n) * fact / c_prime)
}

/// `P_tau(1, ..., 1) = alpha^|tau| (N/alpha)_tau / c_tau(alpha)` in `N` variables.
pub fn jack_at_ones<T: Scalar>(tau: &Partition, alpha: &T, n_vars: usize) -> Result<T> {
    tau.check_len(n_vars)?;
    let (c, _) = hook_products(tau, alpha)?;
    let a = T::from_int(n_vars as i64) / alpha.clone();
    Ok(pow(alpha, tau.modulus()) * pochhammer_general(&a, tau, alpha)? / c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::Rational;
    use num_traits::One;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn pochhammer_values() {
        let alpha = q(2, 3);
        let a = q(5, 7);
        assert_eq!(pochhammer_general(&a, &p(&[1]), &alpha).unwrap(), a);
        assert_eq!(
            pochhammer_general(&a, &Partition::empty(), &alpha).unwrap(),
            Rational::one()
        );
        // a = kN, tau = (2), alpha = 1/k: kN (kN + 1)
        let k = q(3, 2);
        let kn = k.clone() * q(4, 1);
        let alpha = Rational::one() / k;
        assert_eq!(
            pochhammer_general(&kn, &p(&[2]), &alpha).unwrap(),
            kn.clone() * (kn + Rational::one())
        );
        // second row shifted by -1/alpha
        let alpha = q(1, 2);
        let a = q(3, 1);
        assert_eq!(pochhammer_general(&a, &p(&[1, 1]), &alpha).unwrap(), q(3, 1) * q(1, 1));
    }

    #[test]
    fn hook_values() {
        let alpha = q(5, 3);
        assert_eq!(hook_products(&p(&[1]), &alpha).unwrap(), (q(1, 1), alpha.clone()));
        let (c, cp) = hook_products(&p(&[2]), &alpha).unwrap();
        assert_eq!(c, alpha.clone() + q(1, 1));
        assert_eq!(cp, q(2, 1) * alpha.clone() * alpha.clone());
        assert_eq!(hook_products(&Partition::empty(), &alpha).unwrap(), (q(1, 1), q(1, 1)));
        // at alpha = 1 both products are the classical hook-length product
        let (c, cp) = hook_products(&p(&[3, 2]), &q(1, 1)).unwrap();
        assert_eq!(c, q(24, 1));
        assert_eq!(cp, q(24, 1));
    }

    #[test]
    fn conversions() {
        for nv in 1..=5 {
            let alpha = q(7, 4);
            assert_eq!(jack_at_ones(&p(&[1]), &alpha, nv).unwrap(), q(nv as i64, 1));
        }
        assert_eq!(jack_at_ones(&Partition::empty(), &q(2, 1), 3).unwrap(), Rational::one());
        assert_eq!(jack_c_from_p(&Partition::empty(), &q(2, 1)).unwrap(), Rational::one());
        // s_(2)(1,1) = 3
        assert_eq!(jack_at_ones(&p(&[2]), &q(1, 1), 2).unwrap(), q(3, 1));
        assert!(jack_at_ones(&p(&[1, 1, 1]), &q(1, 1), 2).is_err());
    }
}
