use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{jack_table, rational_to_f64, MonomialValues, Rational};
use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, factorial, Partition};

/// Basis a [`SymPoly`] is expressed in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Basis {
    Monomial,
    JackP { alpha: Rational },
}

/// Homogeneous symmetric polynomial in `n_vars` variables with exact
/// coefficients, stored sparsely by partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPoly {
    basis: Basis,
    degree: u32,
    n_vars: usize,
    coeffs: BTreeMap<Partition, Rational>,
}

impl SymPoly {
    pub fn zero(basis: Basis, degree: u32, n_vars: usize) -> Self {
        Self {
            basis,
            degree,
            n_vars,
            coeffs: BTreeMap::new(),
        }
    }

    /// The single basis element `m_lambda`.
    pub fn monomial(lambda: &Partition, n_vars: usize) -> Result<Self> {
        let mut p = Self::zero(Basis::Monomial, lambda.modulus(), n_vars);
        p.add_term(lambda, Rational::one())?;
        Ok(p)
    }

    /// `(x_1 + ... + x_N)^n = sum_tau n!/tau! m_tau`.
    pub fn power_sum_one(n: u32, n_vars: usize) -> Self {
        let mut p = Self::zero(Basis::Monomial, n, n_vars);
        let nf = BigInt::from(factorial(n));
        for tau in enumerate_partitions(n, n_vars) {
            let c = Rational::new(nf.clone(), BigInt::from(tau.factorial()));
            p.coeffs.insert(tau, c);
        }
        p
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Adds `c` to the coefficient of `lambda`; zero results are dropped.
    pub fn add_term(&mut self, lambda: &Partition, c: Rational) -> Result<()> {
        if lambda.modulus() != self.degree {
            return Err(Error::Domain(format!(
                "{lambda} has modulus {} but polynomial degree is {}",
                lambda.modulus(),
                self.degree
            )));
        }
        lambda.check_len(self.n_vars)?;
        let entry = self.coeffs.entry(lambda.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(lambda);
        }
        Ok(())
    }

    pub fn coefficient(&self, lambda: &Partition) -> Rational {
        self.coeffs.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in reverse-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.coeffs.iter().rev()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.basis.clone(), self.degree, self.n_vars);
        if !s.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(k, v)| (k.clone(), v * s)).collect();
        }
        out
    }

    /// Re-expresses the polynomial in the monomial basis.
    pub fn to_monomial(&self) -> Result<SymPoly> {
        match &self.basis {
            Basis::Monomial => Ok(self.clone()),
            Basis::JackP { alpha } => {
                let table = jack_table(self.degree, alpha, self.n_vars)?;
                let mut out = Self::zero(Basis::Monomial, self.degree, self.n_vars);
                for (tau, c) in &self.coeffs {
                    let t = table.index_of(tau).expect("partition enumerated for its degree");
                    for (l, u) in table.row(t) {
                        out.add_term(&table.parts()[*l], c * u)?;
                    }
                }
                Ok(out)
            }
        }
    }

    /// Exact value at a rational point.
    pub fn eval_exact(&self, x: &[Rational]) -> Result<Rational> {
        self.check_point(x.len())?;
        let m = self.to_monomial()?;
        let parts: Vec<Partition> = m.coeffs.keys().cloned().collect();
        let values = MonomialValues::new(&parts, x);
        Ok(m.coeffs
            .values()
            .enumerate()
            .fold(Rational::zero(), |acc, (i, c)| acc + c * values.get(i)))
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        self.check_point(x.len())?;
        let m = self.to_monomial()?;
        let parts: Vec<Partition> = m.coeffs.keys().cloned().collect();
        let values = MonomialValues::new(&parts, x);
        Ok(m.coeffs
            .values()
            .enumerate()
            .map(|(i, c)| rational_to_f64(c) * values.get(i))
            .sum())
    }

    fn check_point(&self, len: usize) -> Result<()> {
        if len != self.n_vars {
            return Err(Error::Dimension {
                expected: self.n_vars,
                got: len,
            });
        }
        Ok(())
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.basis {
            Basis::Monomial => "m",
            Basis::JackP { .. } => "P",
        };
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{sym}{p}")?;
        }
        Ok(())
    }
}
