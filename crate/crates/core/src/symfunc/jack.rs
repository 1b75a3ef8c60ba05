//! Jack polynomials in the P normalization, expanded in monomials.
//!
//! `P_tau = sum_{lambda <= tau} u_{tau,lambda} m_lambda` with `u_{tau,tau} = 1`.
//! The row `u_tau` follows from the eigenrelation `D_k P_tau = E_tau P_tau`
//! by back-substitution down the dominance order:
//!
//! ```text
//! u_lambda (E_tau - E_lambda) = 2k sum_{lambda < mu <= tau} b_{mu,lambda} u_mu
//! ```
//!
//! where `b` is the integer cross matrix from [`super::operator_matrix`] and
//! `k = 1/alpha`.

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::{check_alpha, operator_matrix, OperatorMatrix, Scalar};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// One Jack polynomial: its partition, parameter, and monomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct JackExpansion<T> {
    pub tau: Partition,
    pub alpha: T,
    pub n_vars: usize,
    /// `(lambda, u_{tau,lambda})`, nonzero entries only, in reverse-lex order
    /// starting with `(tau, 1)`.
    pub coeffs: Vec<(Partition, T)>,
    /// Eigenvalue of `D_k` with `k = 1/alpha`.
    pub eigenvalue: T,
}

impl<T: Scalar> JackExpansion<T> {
    pub fn coefficient(&self, lambda: &Partition) -> T {
        self.coeffs
            .iter()
            .find(|(l, _)| l == lambda)
            .map_or_else(T::zero, |(_, u)| u.clone())
    }
}

/// All Jack rows of one degree for fixed `alpha` and `N`.
#[derive(Debug)]
pub struct JackTable<T> {
    op: Arc<OperatorMatrix>,
    alpha: T,
    eigen: Vec<T>,
    rows: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> JackTable<T> {
    fn build(degree: u32, alpha: &T, n_vars: usize) -> Result<Self> {
        check_alpha(alpha)?;
        let op = operator_matrix(degree, n_vars)?;
        let k = T::one() / alpha.clone();
        let two_k = k.clone() + k.clone();
        let eigen: Vec<T> = (0..op.parts().len())
            .map(|i| {
                let (main, cross) = op.diagonal(i);
                T::from_int(main) + two_k.clone() * T::from_int(cross)
            })
            .collect();

        let p = op.parts().len();
        let mut rows = Vec::with_capacity(p);
        for t in 0..p {
            let tau = &op.parts()[t];
            let mut u = vec![T::zero(); p];
            u[t] = T::one();
            for l in (t + 1)..p {
                let lambda = &op.parts()[l];
                if !lambda.is_dominated_by(tau) {
                    continue;
                }
                let denom = eigen[t].clone() - eigen[l].clone();
                if denom.is_zero() {
                    return Err(Error::DegenerateSpectrum {
                        tau: tau.clone(),
                        lambda: lambda.clone(),
                        alpha: format!("{alpha:?}"),
                        n_vars,
                    });
                }
                let mut acc = T::zero();
                for (mu, b) in op.column(l) {
                    if *mu >= t && !u[*mu].is_zero() {
                        acc = acc + T::from_int(*b) * u[*mu].clone();
                    }
                }
                if !acc.is_zero() {
                    u[l] = two_k.clone() * acc / denom;
                }
            }
            rows.push(u.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
        }
        Ok(Self {
            op,
            alpha: alpha.clone(),
            eigen,
            rows,
        })
    }

    pub fn degree(&self) -> u32 {
        self.op.degree()
    }

    pub fn n_vars(&self) -> usize {
        self.op.n_vars()
    }

    pub fn alpha(&self) -> &T {
        &self.alpha
    }

    pub fn parts(&self) -> &[Partition] {
        self.op.parts()
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.op.index_of(p)
    }

    /// Nonzero `(lambda index, u)` entries of row `t`.
    pub fn row(&self, t: usize) -> &[(usize, T)] {
        &self.rows[t]
    }

    pub fn eigenvalue(&self, t: usize) -> &T {
        &self.eigen[t]
    }

    /// `u_{tau,lambda}` by index.
    pub fn entry(&self, t: usize, l: usize) -> T {
        self.rows[t]
            .iter()
            .find(|(i, _)| *i == l)
            .map_or_else(T::zero, |(_, u)| u.clone())
    }

    pub fn expansion(&self, t: usize) -> JackExpansion<T> {
        JackExpansion {
            tau: self.parts()[t].clone(),
            alpha: self.alpha.clone(),
            n_vars: self.n_vars(),
            coeffs: self.rows[t]
                .iter()
                .map(|(l, u)| (self.parts()[*l].clone(), u.clone()))
                .collect(),
            eigenvalue: self.eigen[t].clone(),
        }
    }
}

type AnyTable = Arc<dyn Any + Send + Sync>;
type Cache = RwLock<HashMap<(TypeId, u32, usize, String), AnyTable>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized table of all Jack rows of `degree` for `(alpha, n_vars)`.
pub fn jack_table<T: Scalar>(degree: u32, alpha: &T, n_vars: usize) -> Result<Arc<JackTable<T>>> {
    check_alpha(alpha)?;
    let key = (TypeId::of::<T>(), degree, n_vars, alpha.memo_key());
    if let Some(t) = cache().read().expect("jack cache poisoned").get(&key) {
        return Ok(Arc::clone(t).downcast().expect("cache keyed by type"));
    }
    let table: AnyTable = Arc::new(JackTable::build(degree, alpha, n_vars)?);
    let mut w = cache().write().expect("jack cache poisoned");
    let entry = Arc::clone(w.entry(key).or_insert(table));
    Ok(entry.downcast().expect("cache keyed by type"))
}

/// Monomial expansion of `P_tau^(alpha)` in `n_vars` variables.
pub fn jack_expansion<T: Scalar>(tau: &Partition, alpha: &T, n_vars: usize) -> Result<JackExpansion<T>> {
    tau.check_len(n_vars)?;
    let table = jack_table(tau.modulus(), alpha, n_vars)?;
    let t = table.index_of(tau).expect("partition enumerated for its degree");
    Ok(table.expansion(t))
}

/// Closed-form eigenvalue `sum_j tau_j (tau_j - 1 - 2k(j-1)) + 2k (N-1) |tau|`.
pub fn jack_eigenvalue<T: Scalar>(tau: &Partition, k: &T, n_vars: usize) -> T {
    let two_k = k.clone() + k.clone();
    let main: i64 = tau.parts().iter().map(|&p| p as i64 * (p as i64 - 1)).sum();
    let cross = (n_vars as i64 - 1) * tau.modulus() as i64 - tau.weighted_sum() as i64;
    T::from_int(main) + two_k * T::from_int(cross)
}
