//! Monomial-basis matrix of the Jack eigenoperator
//!
//! ```text
//! D_k = sum_i x_i^2 d_i^2 + 2k sum_{i != j} x_i^2 / (x_i - x_j) d_i
//! ```
//!
//! restricted to homogeneous symmetric polynomials of a fixed degree in
//! `N` variables. The operator splits as `D_k = D_diag + 2k D_cross`, both
//! with integer entries independent of `k`, so one matrix per `(degree, N)`
//! serves every parameter value.
//!
//! `D_cross` is expanded symbolically: for each pair `i < j` the numerator
//! `x_i^2 d_i f - x_j^2 d_j f` is antisymmetric in `(i, j)` and is divided by
//! `x_i - x_j` term by term. Every division is checked to be exact.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, Partition};

/// Integer matrix of `D_diag` and `D_cross` on the monomial basis of one
/// degree, indexed by the reverse-lexicographic partition list.
#[derive(Debug)]
pub struct OperatorMatrix {
    degree: u32,
    n_vars: usize,
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// coefficient of m_mu in D_diag m_mu
    diag_main: Vec<i64>,
    /// coefficient of m_mu in D_cross m_mu
    diag_cross: Vec<i64>,
    /// `below[l]` lists (mu, b) with b = coefficient of m_l in D_cross m_mu, mu != l
    below: Vec<Vec<(usize, i64)>>,
}

impl OperatorMatrix {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn parts(&self) -> &[Partition] {
        &self.parts
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Diagonal entries `(D_diag, D_cross)` at position `i`.
    pub fn diagonal(&self, i: usize) -> (i64, i64) {
        (self.diag_main[i], self.diag_cross[i])
    }

    /// Off-diagonal `D_cross` entries feeding basis element `i`: pairs
    /// `(mu, b)` with `D_cross m_mu` containing `b * m_i`.
    pub fn column(&self, i: usize) -> &[(usize, i64)] {
        &self.below[i]
    }

    /// Full coefficient of `m_lambda` in `D_cross m_mu`.
    pub fn cross_entry(&self, mu: usize, lambda: usize) -> i64 {
        if mu == lambda {
            return self.diag_cross[mu];
        }
        self.below[lambda].iter().find(|(m, _)| *m == mu).map_or(0, |(_, b)| *b)
    }

    fn build(degree: u32, n_vars: usize) -> Result<Self> {
        let parts = enumerate_partitions(degree, n_vars);
        let index: HashMap<_, _> = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut diag_main = Vec::with_capacity(parts.len());
        let mut diag_cross = Vec::with_capacity(parts.len());
        let mut below = vec![Vec::new(); parts.len()];

        for (mu_idx, mu) in parts.iter().enumerate() {
            diag_main.push(mu.parts().iter().map(|&p| p as i64 * (p as i64 - 1)).sum());
            let image = cross_action(mu, n_vars)?;
            let mut own = 0;
            for (lambda, coef) in image {
                let l_idx = index[&lambda];
                if l_idx == mu_idx {
                    own = coef;
                } else {
                    below[l_idx].push((mu_idx, coef));
                }
            }
            diag_cross.push(own);
        }
        for col in &mut below {
            col.sort_unstable();
        }
        Ok(Self {
            degree,
            n_vars,
            parts,
            index,
            diag_main,
            diag_cross,
            below,
        })
    }
}

type Exponents = Vec<u32>;

/// All distinct permutations of `exps` (multiset permutations).
pub(crate) fn distinct_permutations(exps: &[u32]) -> Vec<Exponents> {
    let mut cur: Vec<u32> = exps.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn next_permutation(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `D_cross m_mu` expanded in monomial symmetric functions.
fn cross_action(mu: &Partition, n_vars: usize) -> Result<Vec<(Partition, i64)>> {
    let terms = distinct_permutations(&mu.padded(n_vars));
    let mut result: HashMap<Exponents, i64> = HashMap::new();

    for i in 0..n_vars {
        for j in (i + 1)..n_vars {
            // numerator x_i^2 d_i f - x_j^2 d_j f
            let mut numer: HashMap<Exponents, i64> = HashMap::new();
            for e in &terms {
                if e[i] > 0 {
                    let mut f = e.clone();
                    f[i] += 1;
                    *numer.entry(f).or_default() += e[i] as i64;
                }
                if e[j] > 0 {
                    let mut f = e.clone();
                    f[j] += 1;
                    *numer.entry(f).or_default() -= e[j] as i64;
                }
            }
            numer.retain(|_, c| *c != 0);
            divide_by_difference(&numer, i, j, &mut result)?;
        }
    }
    result.retain(|_, c| *c != 0);

    // the image must be symmetric: every monomial carries the coefficient of
    // its sorted representative
    let mut out = Vec::new();
    for (e, &c) in &result {
        let mut sorted = e.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        if result.get(&sorted) != Some(&c) {
            return Err(Error::NonPolynomial { exponents: e.clone() });
        }
        if *e == sorted {
            out.push((Partition::from_unsorted(sorted), c));
        }
    }
    Ok(out)
}

/// Adds `numer / (x_i - x_j)` into `acc`, requiring `numer` antisymmetric
/// under the swap of `i` and `j`.
fn divide_by_difference(
    numer: &HashMap<Exponents, i64>,
    i: usize,
    j: usize,
    acc: &mut HashMap<Exponents, i64>,
) -> Result<()> {
    for (e, &c) in numer {
        let (a, b) = (e[i], e[j]);
        if a == b {
            return Err(Error::NonPolynomial { exponents: e.clone() });
        }
        let mut partner = e.clone();
        partner.swap(i, j);
        if numer.get(&partner).copied().unwrap_or(0) != -c {
            return Err(Error::NonPolynomial { exponents: e.clone() });
        }
        if a < b {
            continue;
        }
        // (x_i^a x_j^b - x_i^b x_j^a) / (x_i - x_j)
        //   = x_i^b x_j^b sum_{m=0}^{a-b-1} x_i^{a-b-1-m} x_j^m
        let d = a - b;
        for m in 0..d {
            let mut f = e.clone();
            f[i] = b + d - 1 - m;
            f[j] = b + m;
            *acc.entry(f).or_default() += c;
        }
    }
    Ok(())
}

type Cache = RwLock<HashMap<(u32, usize), Arc<OperatorMatrix>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized operator matrix for `(degree, n_vars)`.
pub fn operator_matrix(degree: u32, n_vars: usize) -> Result<Arc<OperatorMatrix>> {
    if n_vars == 0 {
        return Err(Error::Domain("number of variables must be positive".into()));
    }
    let key = (degree, n_vars);
    if let Some(m) = cache().read().expect("operator cache poisoned").get(&key) {
        return Ok(Arc::clone(m));
    }
    let built = Arc::new(OperatorMatrix::build(degree, n_vars)?);
    let mut w = cache().write().expect("operator cache poisoned");
    Ok(Arc::clone(w.entry(key).or_insert(built)))
}
