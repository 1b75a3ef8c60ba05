//! Test-only oracles: an explicit sparse polynomial type over the rationals,
//! alternants, Gauss-Legendre rules and random rational points.

#![allow(dead_code)]

use std::collections::BTreeMap;

use dunkl::{Partition, Rational};
use itertools::Itertools;
use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{One, Zero};
use rand::Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

/// Polynomial in `n` variables as exponent vector -> coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub n: usize,
    pub terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        let entry = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// `x_i^a * self`.
    pub fn shift(&self, i: usize, a: u32) -> Poly {
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e[i] += a;
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn deriv(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut d = e.clone();
                d[i] -= 1;
                out.add_term(d, c * Rational::from_integer(e[i].into()));
            }
        }
        out
    }

    /// Exact quotient by `x_i - x_j`, or `None` if it leaves a remainder.
    pub fn div_difference(&self, i: usize, j: usize) -> Option<Poly> {
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.n);
        while let Some((e, c)) = rem
            .terms
            .iter()
            .max_by_key(|(e, _)| e[i])
            .map(|(e, c)| (e.clone(), c.clone()))
        {
            if e[i] == 0 {
                return None;
            }
            let mut lower = e.clone();
            lower[i] -= 1;
            quot.add_term(lower.clone(), c.clone());
            rem.add_term(e, -c.clone());
            let mut swapped = lower;
            swapped[j] += 1;
            rem.add_term(swapped, c);
        }
        Some(quot)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            acc + e
                .iter()
                .zip(x)
                .fold(c.clone(), |m, (&k, xi)| m * num_traits::pow(xi.clone(), k as usize))
        })
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                dunkl::symfunc::rational_to_f64(c) * e.iter().zip(x).map(|(&k, xi)| xi.powi(k as i32)).product::<f64>()
            })
            .sum()
    }
}

/// `sum_lambda c_lambda m_lambda` written out monomial by monomial.
pub fn symmetric_poly<'a>(terms: impl IntoIterator<Item = (&'a Partition, &'a Rational)>, n: usize) -> Poly {
    let mut out = Poly::zero(n);
    for (lambda, c) in terms {
        for e in lambda.padded(n).into_iter().permutations(n).unique() {
            out.add_term(e, c.clone());
        }
    }
    out
}

/// `sum_sigma sgn(sigma) x^{sigma(exps)}`.
pub fn alternant(exps: &[u32]) -> Poly {
    let n = exps.len();
    let mut out = Poly::zero(n);
    for perm in (0..n).permutations(n) {
        let mut inversions = 0;
        for a in 0..n {
            for b in (a + 1)..n {
                if perm[a] > perm[b] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        let mut e = vec![0; n];
        for (slot, &src) in perm.iter().enumerate() {
            e[slot] = exps[src];
        }
        out.add_term(e, sign);
    }
    out
}

/// `sum_i x_i^2 d_i^2 P + 2k sum_{i != j} x_i^2/(x_i - x_j) d_i P`, with each
/// pair's fraction divided out exactly.
pub fn apply_operator(poly: &Poly, k: &Rational) -> Poly {
    let n = poly.n;
    let mut out = Poly::zero(n);
    let firsts: Vec<Poly> = (0..n).map(|i| poly.deriv(i)).collect();
    for (i, f) in firsts.iter().enumerate() {
        out = out.add(&f.deriv(i).shift(i, 2));
    }
    let two_k = k * q(2, 1);
    for i in 0..n {
        for j in (i + 1)..n {
            let num = firsts[i]
                .shift(i, 2)
                .add(&firsts[j].shift(j, 2).scale(&-Rational::one()));
            let quotient = num.div_difference(i, j).expect("operator output is polynomial");
            out = out.add(&quotient.scale(&two_k));
        }
    }
    out
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let jacobi = DMatrix::from_fn(m, m, |i, j| {
        if i + 1 == j || j + 1 == i {
            let k = i.max(j) as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| (eig.eigenvalues[i], 2.0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Composite rule on `[a, b]` with `panels` panels of `m` nodes each.
pub fn composite_rule(a: f64, b: f64, panels: usize, m: usize) -> Vec<(f64, f64)> {
    let (nodes, weights) = gauss_legendre(m);
    let width = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * m);
    for p in 0..panels {
        let lo = a + p as f64 * width;
        for (x, w) in nodes.iter().zip(&weights) {
            out.push((lo + 0.5 * width * (x + 1.0), 0.5 * width * w));
        }
    }
    out
}

/// `n` distinct rationals with numerators and denominators drawn widely.
pub fn random_rational_point(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    loop {
        let v: Vec<Rational> = (0..n)
            .map(|_| q(rng.random_range(-1_000_000..=1_000_000), rng.random_range(1..=997)))
            .collect();
        if v.iter().tuple_combinations().all(|(a, b)| a != b) {
            return v;
        }
    }
}

/// Sorted vector in `[-r, r]^n` with consecutive gaps at least `min_gap`.
pub fn random_ordered(rng: &mut impl Rng, n: usize, r: f64, min_gap: f64) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-r..r)).collect();
        v.sort_by(f64::total_cmp);
        if v.windows(2).all(|w| w[1] - w[0] >= min_gap) {
            return v;
        }
    }
}

/// Coefficients on `m_mu` of a symmetric polynomial, or `None` if some term
/// differs from its sorted image.
pub fn to_symmetric(poly: &Poly) -> Option<BTreeMap<Partition, Rational>> {
    let mut out = BTreeMap::new();
    for (e, c) in &poly.terms {
        let mu = Partition::from_unsorted(e.clone());
        match out.get(&mu) {
            Some(prev) if prev != c => return None,
            Some(_) => {}
            None => {
                out.insert(mu, c.clone());
            }
        }
    }
    // every permutation of each exponent must be present
    for mu in out.keys() {
        let count = mu.padded(poly.n).into_iter().permutations(poly.n).unique().count();
        let present = poly
            .terms
            .keys()
            .filter(|e| Partition::from_unsorted((*e).clone()) == *mu)
            .count();
        if count != present {
            return None;
        }
    }
    Some(out)
}

/// `sum_i d_i^2 f + 2k sum_{i<j} (d_i f - d_j f)/(x_i - x_j)`: the Dunkl
/// Laplacian restricted to symmetric `f`.
pub fn dunkl_laplacian_symmetric(f: &Poly, k: &Rational) -> Poly {
    let n = f.n;
    let d: Vec<Poly> = (0..n).map(|i| f.deriv(i)).collect();
    let mut out = Poly::zero(n);
    for (i, di) in d.iter().enumerate() {
        out = out.add(&di.deriv(i));
    }
    let two_k = k * q(2, 1);
    for i in 0..n {
        for j in (i + 1)..n {
            let diff = d[i].add(&d[j].scale(&-Rational::one()));
            let quotient = diff.div_difference(i, j).expect("symmetric difference quotient");
            out = out.add(&quotient.scale(&two_k));
        }
    }
    out
}
