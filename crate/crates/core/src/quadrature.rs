//! Gauss-Legendre rules from the Jacobi matrix eigenproblem.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Nodes and weights of the `m`-point rule on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if m == 0 {
        return Err(Error::Domain("rule needs at least one node".into()));
    }
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
    Ok(pairs.into_iter().unzip())
}

/// `(node, weight)` pairs of `panels` equal panels on `[a, b]`, `m` nodes each.
pub fn composite_rule(a: f64, b: f64, panels: usize, m: usize) -> Result<Vec<(f64, f64)>> {
    if a.is_nan() || b.is_nan() || a >= b || panels == 0 {
        return Err(Error::Domain(format!(
            "bad interval [{a}, {b}] or panel count {panels}"
        )));
    }
    let (nodes, weights) = gauss_legendre(m)?;
    let width = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * m);
    for p in 0..panels {
        let lo = a + p as f64 * width;
        for (x, w) in nodes.iter().zip(&weights) {
            out.push((lo + 0.5 * width * (x + 1.0), 0.5 * width * w));
        }
    }
    Ok(out)
}
