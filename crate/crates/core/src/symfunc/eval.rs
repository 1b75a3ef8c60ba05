//! Pointwise evaluation of monomial, elementary, and Schur functions.

use nalgebra::DMatrix;

use super::operator::distinct_permutations;
use super::{jack_table, pow, Scalar};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// `m_lambda(x)`: sum of the distinct monomials `prod_j x_j^{lambda_sigma(j)}`.
pub fn eval_monomial<T: Scalar>(lambda: &Partition, x: &[T]) -> Result<T> {
    lambda.check_len(x.len())?;
    let powers = PowerTable::new(x, lambda.part(0));
    Ok(powers.monomial(lambda))
}

/// `e_n(x)`, the sum over `n`-subsets of products.
pub fn eval_elementary<T: Scalar>(n: usize, x: &[T]) -> Result<T> {
    if n > x.len() {
        return Err(Error::ElementaryIndex { n, n_vars: x.len() });
    }
    // e_j of the first i variables, updated in place
    let mut e = vec![T::zero(); n + 1];
    e[0] = T::one();
    for xi in x {
        for j in (1..=n).rev() {
            e[j] = e[j].clone() + e[j - 1].clone() * xi.clone();
        }
    }
    Ok(e[n].clone())
}

/// `e_tau(x) = prod_i e_{tau_i}(x)`.
pub fn eval_elementary_partition<T: Scalar>(tau: &Partition, x: &[T]) -> Result<T> {
    tau.parts()
        .iter()
        .try_fold(T::one(), |acc, &p| Ok(acc * eval_elementary(p as usize, x)?))
}

/// Schur function by the bialternant ratio `det[x_j^{tau_i+N-i}] / det[x_j^{N-i}]`.
///
/// When two components coincide (relative gap below `1e-8`) the ratio is
/// ill-defined, and the value is taken from the monomial expansion of
/// `P_tau^(1)` instead.
pub fn eval_schur(tau: &Partition, x: &[f64]) -> Result<f64> {
    let n = x.len();
    tau.check_len(n)?;
    if tau.is_empty() {
        return Ok(1.0);
    }
    let scale = x.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let mut distinct = true;
    for i in 0..n {
        for j in (i + 1)..n {
            if (x[i] - x[j]).abs() <= 1e-8 * scale {
                distinct = false;
            }
        }
    }
    if distinct {
        let num = DMatrix::from_fn(n, n, |i, j| x[j].powi((tau.part(i) as usize + n - 1 - i) as i32));
        let den = DMatrix::from_fn(n, n, |i, j| x[j].powi((n - 1 - i) as i32));
        return Ok(num.determinant() / den.determinant());
    }
    let table = jack_table(tau.modulus(), &1.0, n)?;
    let t = table.index_of(tau).expect("partition enumerated for its degree");
    let values = MonomialValues::new(table.parts(), x);
    Ok(values.combine(table.row(t)))
}

/// Powers `x_i^e` for `e <= max_exp`.
pub(crate) struct PowerTable<T> {
    pows: Vec<Vec<T>>,
}

impl<T: Scalar> PowerTable<T> {
    pub(crate) fn new(x: &[T], max_exp: u32) -> Self {
        let pows = x
            .iter()
            .map(|xi| {
                let mut row = Vec::with_capacity(max_exp as usize + 1);
                row.push(T::one());
                for e in 1..=max_exp as usize {
                    row.push(row[e - 1].clone() * xi.clone());
                }
                row
            })
            .collect();
        Self { pows }
    }

    fn get(&self, i: usize, e: u32) -> T {
        match self.pows[i].get(e as usize) {
            Some(v) => v.clone(),
            None => pow(&self.pows[i][1], e),
        }
    }

    pub(crate) fn monomial(&self, lambda: &Partition) -> T {
        let n = self.pows.len();
        distinct_permutations(&lambda.padded(n))
            .iter()
            .map(|e| {
                e.iter()
                    .enumerate()
                    .fold(T::one(), |acc, (i, &ei)| acc * self.get(i, ei))
            })
            .fold(T::zero(), |a, b| a + b)
    }
}

/// `m_lambda(x)` for every partition of one degree, for reuse across the
/// rows of a Jack table.
#[derive(Debug, Clone)]
pub struct MonomialValues<T> {
    values: Vec<T>,
}

impl<T: Scalar> MonomialValues<T> {
    pub fn new(parts: &[Partition], x: &[T]) -> Self {
        let max = parts.iter().map(|p| p.part(0)).max().unwrap_or(0);
        let powers = PowerTable::new(x, max);
        Self {
            values: parts.iter().map(|p| powers.monomial(p)).collect(),
        }
    }

    pub fn get(&self, i: usize) -> &T {
        &self.values[i]
    }

    /// `sum_l c_l m_l(x)` over sparse `(index, coefficient)` pairs.
    pub fn combine(&self, coeffs: &[(usize, T)]) -> T {
        coeffs
            .iter()
            .fold(T::zero(), |acc, (l, c)| acc + c.clone() * self.values[*l].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn monomials() {
        let x = [1.0, 2.0, 3.0];
        assert_eq!(eval_monomial(&p(&[2]), &x).unwrap(), 14.0);
        assert_eq!(eval_monomial(&p(&[1, 1]), &x).unwrap(), 11.0);
        assert_eq!(eval_monomial(&Partition::empty(), &x).unwrap(), 1.0);
        assert_eq!(
            eval_monomial(&p(&[2, 1]), &x).unwrap(),
            2.0 + 3.0 + 4.0 + 12.0 + 9.0 + 18.0
        );
        assert!(eval_monomial(&p(&[1, 1, 1, 1]), &x).is_err());
    }

    #[test]
    fn elementary() {
        let x = [1.0, 2.0, 3.0];
        assert_eq!(eval_elementary(0, &x).unwrap(), 1.0);
        assert_eq!(eval_elementary(1, &x).unwrap(), 6.0);
        assert_eq!(eval_elementary(2, &x).unwrap(), 11.0);
        assert_eq!(eval_elementary(3, &x).unwrap(), 6.0);
        assert!(eval_elementary(4, &x).is_err());
        assert_eq!(eval_elementary_partition(&p(&[2, 1]), &x).unwrap(), 66.0);
    }

    #[test]
    fn schur_values() {
        let x = [1.0, 2.0, 3.0];
        assert!((eval_schur(&p(&[1]), &x).unwrap() - 6.0).abs() < 1e-12);
        assert_eq!(eval_schur(&Partition::empty(), &x).unwrap(), 1.0);
        // repeated components go through the Kostka fallback:
        // 8 semistandard tableaux of shape (2,1) with entries <= 3
        assert!((eval_schur(&p(&[2, 1]), &[1.0, 1.0, 1.0]).unwrap() - 8.0).abs() < 1e-12);
        // s_(2,1)(1,2,3) = m_(2,1) + 2 m_(1,1,1) = 48 + 12
        assert!((eval_schur(&p(&[2, 1]), &x).unwrap() - 60.0).abs() < 1e-9);
    }
}
