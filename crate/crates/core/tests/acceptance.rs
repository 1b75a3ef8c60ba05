//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::{alternant, apply_operator, composite_rule, p, q, random_ordered, symmetric_poly};
use dunkl::hermite::{freeze_eval, freeze_grad, freeze_hess, freeze_prediction, root_identities};
use dunkl::intertwine::{
    dyson_tpd_series, grabiner_sorted_marginal_cdf, grabiner_tpd, intertwine_limit, intertwine_monomial, TpdQuery,
};
use dunkl::sim::{
    freeze_experiment, ks_compare, ks_one_sample, mc_norm_check, simulate_dunkl, simulate_dyson, sorted_marginals,
    SimConfig,
};
use dunkl::symfunc::{jack_table, rational_to_f64};
use dunkl::{enumerate_partitions, Partition, Rational};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn quadratic_intertwining() -> Outcome {
    let mut checked = 0;
    let mut wrong = Vec::new();
    for n in 2..=6i64 {
        for k in [q(1, 2), q(1, 1), q(2, 1), q(5, 1)] {
            let den = &k * q(n, 1) + q(1, 1);
            let expected = [
                (p(&[2]), p(&[2]), (&k + q(1, 1)) / &den),
                (p(&[2]), p(&[1, 1]), &k * q(2, 1) / &den),
                (p(&[1, 1]), p(&[2]), &k * q(n - 1, 1) / (q(2, 1) * &den)),
                (p(&[1, 1]), p(&[1, 1]), (&k * q(n - 1, 1) + q(1, 1)) / &den),
            ];
            for (lambda, mu, want) in expected {
                let got = intertwine_monomial(&lambda, &k, n as usize)
                    .unwrap()
                    .output
                    .coefficient(&mu);
                checked += 1;
                if got != want {
                    wrong.push(format!("N={n} k={k} V m{lambda} on m{mu}: {got} != {want}"));
                }
            }
        }
    }
    outcome(
        wrong.is_empty(),
        format!(
            "{checked} exact coefficients, {} mismatches{}",
            wrong.len(),
            listed(&wrong)
        ),
    )
}

fn strong_coupling_limit() -> Outcome {
    let (k1, k2) = (q(10_000, 1), q(20_000, 1));
    let mut max_gap = 0.0f64;
    let mut not_shrinking = Vec::new();
    let mut count = 0;
    for n in 0..=4 {
        for nv in 1..=4 {
            for lambda in enumerate_partitions(n, nv) {
                let limit = intertwine_limit(&lambda, nv).unwrap().expansion;
                let a = intertwine_monomial(&lambda, &k1, nv).unwrap().output;
                let b = intertwine_monomial(&lambda, &k2, nv).unwrap().output;
                for mu in enumerate_partitions(n, nv) {
                    let l = limit.coefficient(&mu);
                    let g1 = (a.coefficient(&mu) - &l).abs();
                    let g2 = (b.coefficient(&mu) - &l).abs();
                    count += 1;
                    max_gap = max_gap.max(rational_to_f64(&g1));
                    // coefficients already equal to their limit stay equal
                    let exact = g1.is_zero() && g2.is_zero();
                    if !(g2 < g1 || exact) {
                        not_shrinking.push(format!("N={nv} V m{lambda} on m{mu}"));
                    }
                }
            }
        }
    }
    outcome(
        max_gap <= 1e-3 && not_shrinking.is_empty(),
        format!(
            "{count} coefficients, max gap at k=1e4 {max_gap:.3e} (tol 1e-3), {} non-shrinking{}",
            not_shrinking.len(),
            listed(&not_shrinking)
        ),
    )
}

fn density_equality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let mut worst = 0.0f64;
    let mut evaluated = 0;
    for n in [2usize, 3] {
        for t in [0.5, 1.0, 2.0] {
            for _ in 0..50 {
                let mut draw = || loop {
                    let v = random_ordered(&mut rng, n, 2.0, 0.1);
                    if v.iter().map(|c| c * c).sum::<f64>() <= 4.0 {
                        return v;
                    }
                };
                let x = draw();
                let y = draw();
                let query = TpdQuery::new(t, x, y, 2.0);
                let s = dyson_tpd_series(&query).unwrap().value;
                let g = grabiner_tpd(&query).unwrap().value;
                worst = worst.max((s - g).abs() / g.abs());
                evaluated += 1;
            }
        }
    }
    outcome(
        worst <= 1e-8,
        format!("{evaluated} points, max relative error {worst:.3e} (tol 1e-8)"),
    )
}

fn symmetric_dunkl_equals_dyson() -> Outcome {
    let x0 = [-1.0, 0.0, 1.0];
    let dyson = simulate_dyson(&SimConfig::new(3, 1.0, 1e-3, 1.0, 10_000, 101), &x0).unwrap();
    let dunkl = simulate_dunkl(&SimConfig::new(3, 1.0, 1e-3, 1.0, 10_000, 202), &x0).unwrap();
    let ks_pair = ks_compare(&dunkl, &dyson).unwrap();
    let marginals = sorted_marginals(&dyson, dyson.times.len() - 1);
    let ks_exact: Vec<f64> = marginals
        .iter()
        .enumerate()
        .map(|(m, sample)| ks_one_sample(sample, |a| grabiner_sorted_marginal_cdf(&x0, 1.0, m, a).unwrap()))
        .collect();
    let pass = ks_pair.iter().chain(&ks_exact).all(|d| *d <= 0.05);
    outcome(
        pass,
        format!(
            "KS dunkl vs dyson {:?}, KS dyson vs exact {:?} (tol 0.05), {} jumps",
            rounded(&ks_pair),
            rounded(&ks_exact),
            dunkl.total_jumps()
        ),
    )
}

fn listed(v: &[String]) -> String {
    if v.is_empty() {
        String::new()
    } else {
        format!(" {v:?}")
    }
}

fn rounded(v: &[f64]) -> Vec<String> {
    v.iter().map(|x| format!("{x:.4}")).collect()
}

fn hermite_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    let (mut w_sum, mut w_sq, mut w_disc, mut w_f, mut w_g) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for n in 1..=20usize {
        let id = root_identities(n).unwrap();
        w_sum = w_sum.max(id.sum.abs());
        w_sq = w_sq.max((id.sum_sq - id.sum_sq_expected).abs() / (n * n) as f64);
        w_disc = w_disc.max((id.log_discriminant - id.log_discriminant_expected).abs());
        for t in [0.5, 1.0, 3.0] {
            let v = freeze_prediction(n, t).unwrap();
            w_f = w_f.max(freeze_eval(&v, t).unwrap().abs());
            if n >= 2 {
                let g = freeze_grad(&v, t).unwrap();
                w_g = w_g.max(g.iter().map(|c| c * c).sum::<f64>().sqrt());
                let h = freeze_hess(&v, t).unwrap();
                for _ in 0..100 {
                    let u: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
                    let form: f64 = (0..n)
                        .flat_map(|i| (0..n).map(move |j| (i, j)))
                        .map(|(i, j)| u[i] * h[(i, j)] * u[j])
                        .sum();
                    if form >= 0.0 {
                        failures.push(format!("N={n} t={t}: form {form}"));
                    }
                }
            }
        }
    }
    let pass = w_sum <= 1e-12 && w_sq <= 1e-10 && w_disc <= 1e-9 && w_f <= 1e-9 && w_g <= 1e-9 && failures.is_empty();
    outcome(
        pass,
        format!(
            "|sum z| {w_sum:.1e}, |sum z^2 - N(N-1)/2|/N^2 {w_sq:.1e}, discriminant {w_disc:.1e}, \
             |F| {w_f:.1e}, |grad F| {w_g:.1e}, non-negative forms {}",
            failures.len()
        ),
    )
}

fn freezing() -> Outcome {
    let starts: [&[f64]; 2] = [&[-1.0, 0.0, 1.0], &[-1.5, -0.5, 0.5, 1.5]];
    let mut lines = Vec::new();
    let mut pass = true;
    for x0 in starts {
        let n = x0.len();
        let base = SimConfig::new(n, 1e4, 1e-4, 1.0, 100, 77 + n as u64);
        let low = freeze_experiment(&base, x0).unwrap();
        let high = freeze_experiment(&SimConfig { k: 4e4, ..base }, x0).unwrap();
        pass &= low.mean_max_dev <= 0.05 && high.rms_dev < low.rms_dev;
        lines.push(format!(
            "N={n}: mean max dev {:.4} (tol 0.05), rms {:.4} -> {:.4}",
            low.mean_max_dev, low.rms_dev, high.rms_dev
        ));
    }
    outcome(pass, lines.join("; "))
}

fn eigenvalue(tau: &Partition, k: &Rational, n_vars: usize) -> Rational {
    let mut e = Rational::zero();
    for (j, &part) in tau.parts().iter().enumerate() {
        let t = Rational::from_integer(part.into());
        e += &t * (&t - Rational::one()) - q(2, 1) * k * Rational::from_integer(j.into()) * &t;
    }
    e + q(2, 1) * k * Rational::from_integer(((n_vars - 1) as u64 * tau.modulus() as u64).into())
}

fn jack_engine() -> Outcome {
    let mut residuals = 0;
    let mut checked = 0;
    for alpha in [q(1, 2), q(1, 1), q(2, 1)] {
        let k = Rational::one() / &alpha;
        for nv in 1..=4 {
            for n in 0..=5 {
                let table = jack_table(n, &alpha, nv).unwrap();
                for (t, tau) in table.parts().iter().enumerate() {
                    let exp = table.expansion(t);
                    let poly = symmetric_poly(exp.coeffs.iter().map(|(a, b)| (a, b)), nv);
                    let lhs = apply_operator(&poly, &k);
                    let residual = lhs.add(&poly.scale(&-eigenvalue(tau, &k, nv)));
                    checked += 1;
                    if !residual.is_zero() {
                        residuals += 1;
                    }
                }
            }
        }
    }
    let mut schur_mismatch = 0;
    let mut schur_checked = 0;
    for nv in 1..=4usize {
        let delta: Vec<u32> = (0..nv as u32).rev().collect();
        let vandermonde = alternant(&delta);
        for n in 0..=4 {
            let table = jack_table(n, &Rational::one(), nv).unwrap();
            for (t, tau) in table.parts().iter().enumerate() {
                let exp = table.expansion(t);
                let schur = symmetric_poly(exp.coeffs.iter().map(|(a, b)| (a, b)), nv);
                let shifted: Vec<u32> = tau.padded(nv).iter().zip(&delta).map(|(a, b)| a + b).collect();
                schur_checked += 1;
                if schur.mul(&vandermonde) != alternant(&shifted) {
                    schur_mismatch += 1;
                }
            }
        }
    }
    outcome(
        residuals == 0 && schur_mismatch == 0,
        format!(
            "{checked} eigenrelations with {residuals} nonzero residuals; \
             {schur_checked} bialternant rows with {schur_mismatch} mismatches"
        ),
    )
}

fn selberg_normalization() -> Outcome {
    let mut pass = true;
    let mut lines = Vec::new();
    for (n, k, seed) in [(2usize, 1.0, 8u64), (3, 0.5, 9)] {
        let r = mc_norm_check(n, k, 1_000_000, seed).unwrap();
        pass &= r.z_score.abs() <= 3.0;
        lines.push(format!(
            "N={n} k={k}: {:.5} vs {:.5}, {:.2} standard errors",
            r.estimate, r.closed_form, r.z_score
        ));
    }
    outcome(pass, lines.join("; "))
}

fn density_normalization() -> Outcome {
    let centre = composite_rule(-9.0, 9.0, 12, 16);
    let gap = composite_rule(0.0, 14.0, 10, 16);
    let x = vec![-0.5, 0.5];
    let mut pass = true;
    let mut lines = Vec::new();
    for beta in [1.0, 2.0, 4.0] {
        let total: f64 = centre
            .par_iter()
            .map(|&(c, wc)| {
                gap.iter()
                    .map(|&(g, wg)| {
                        let y = vec![c - 0.5 * g, c + 0.5 * g];
                        let query = TpdQuery::new(1.0, x.clone(), y, beta);
                        wc * wg * dyson_tpd_series(&query).unwrap().value
                    })
                    .sum::<f64>()
            })
            .collect::<Vec<f64>>()
            .iter()
            .sum();
        pass &= (total - 1.0).abs() <= 1e-4;
        lines.push(format!("beta={beta}: {total:.8}"));
    }
    outcome(pass, format!("{} (tol 1e-4)", lines.join(", ")))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("quadratic intertwining coefficients", quadratic_intertwining),
        ("strong-coupling limit", strong_coupling_limit),
        ("beta=2 series vs determinant density", density_equality),
        ("symmetric Dunkl vs Dyson marginals", symmetric_dunkl_equals_dyson),
        ("Hermite root identities and F_N extremum", hermite_identities),
        ("freezing to scaled Hermite roots", freezing),
        ("Jack eigenrelation and Schur rows", jack_engine),
        ("Gaussian normalization c_k", selberg_normalization),
        ("density integrates to one", density_normalization),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let verdict = if result.pass { "PASS" } else { "FAIL" };
        if !result.pass {
            failed += 1;
        }
        println!(
            "criterion {} {verdict} {name}: {} [{:.1}s]",
            i + 1,
            result.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
