use std::cell::RefCell;

use clap::{Args, ValueEnum};
use dunkl::hermite::{freeze_eval, freeze_grad, freeze_hess, freeze_prediction, root_identities};
use dunkl::intertwine::{
    dyson_tpd_series, grabiner_sorted_marginal_cdf, grabiner_tpd, intertwine_limit, intertwine_monomial, TpdQuery,
};
use dunkl::quadrature::composite_rule;
use dunkl::sim::{
    freeze_experiment, ks_compare, ks_one_sample, mc_norm_check, simulate_dunkl, simulate_dyson, sorted_marginals,
    SimConfig,
};
use dunkl::symfunc::{eval_monomial, eval_schur, jack_table, operator_matrix, rational_to_f64};
use dunkl::{enumerate_partitions, Rational};
use num_bigint::BigInt;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::default_start;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Closed-form quadratic coefficients of the intertwiner.
    Quadratic,
    /// Convergence to the strong-coupling limit.
    Limit,
    /// Series against determinant at beta = 2.
    Density,
    /// Symmetric Dunkl process against Dyson's model.
    #[value(alias = "thm1")]
    Marginals,
    /// Hermite root identities and the extremum of F_N.
    Hermite,
    /// Freezing to scaled Hermite roots.
    Freeze,
    /// Jack eigenrelation and Schur rows.
    Jack,
    /// Monte Carlo check of c_k.
    Selberg,
    /// Density integrates to one.
    Normalization,
    All,
}

/// Runs a named check suite; exits 5 if any check fails.
#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub traj: Option<usize>,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long)]
    pub dt: Option<f64>,
}

#[derive(Default)]
struct Report {
    total: usize,
    failed: usize,
}

impl Report {
    fn check(&mut self, name: &str, measured: f64, tol: f64, pass: bool) {
        self.total += 1;
        self.failed += usize::from(!pass);
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!("check {name}: measured {measured:.4e} tol {tol:.1e} {verdict}");
    }

    fn at_most(&mut self, name: &str, measured: f64, tol: f64) {
        self.check(name, measured, tol, measured <= tol);
    }
}

fn q(n: i64, d: i64) -> Rational {
    Ratio::new(BigInt::from(n), BigInt::from(d))
}

pub fn run(a: &VerifyArgs) -> CliResult<()> {
    let mut r = Report::default();
    let suites = match a.suite {
        Suite::All => vec![
            Suite::Quadratic,
            Suite::Limit,
            Suite::Density,
            Suite::Marginals,
            Suite::Hermite,
            Suite::Freeze,
            Suite::Jack,
            Suite::Selberg,
            Suite::Normalization,
        ],
        s => vec![s],
    };
    for s in suites {
        match s {
            Suite::Quadratic => quadratic(&mut r)?,
            Suite::Limit => limit(&mut r)?,
            Suite::Density => density(&mut r, a)?,
            Suite::Marginals => marginals(&mut r, a)?,
            Suite::Hermite => hermite(&mut r, a)?,
            Suite::Freeze => freeze(&mut r, a)?,
            Suite::Jack => jack(&mut r)?,
            Suite::Selberg => selberg(&mut r, a)?,
            Suite::Normalization => normalization(&mut r)?,
            Suite::All => unreachable!("expanded above"),
        }
    }
    println!("verify: {} of {} checks passed", r.total - r.failed, r.total);
    if r.failed > 0 {
        return Err(CliError::Assertion {
            failed: r.failed,
            total: r.total,
        });
    }
    Ok(())
}

fn quadratic(r: &mut Report) -> CliResult<()> {
    let (two, one_one) = (dunkl::Partition::new(vec![2])?, dunkl::Partition::new(vec![1, 1])?);
    for n in 2..=6i64 {
        for k in [q(1, 2), q(1, 1), q(2, 1), q(5, 1)] {
            let den = &k * q(n, 1) + q(1, 1);
            let expected = [
                (&two, &two, (&k + q(1, 1)) / &den),
                (&two, &one_one, &k * q(2, 1) / &den),
                (&one_one, &two, &k * q(n - 1, 1) / (q(2, 1) * &den)),
                (&one_one, &one_one, (&k * q(n - 1, 1) + q(1, 1)) / &den),
            ];
            let mut wrong = 0;
            for (lambda, mu, want) in expected {
                let got = intertwine_monomial(lambda, &k, n as usize)?.output.coefficient(mu);
                wrong += usize::from(got != want);
            }
            r.at_most(&format!("quadratic N={n} k={k} mismatches"), wrong as f64, 0.0);
        }
    }
    Ok(())
}

fn limit(r: &mut Report) -> CliResult<()> {
    let (k1, k2) = (q(10_000, 1), q(20_000, 1));
    let mut max_gap = 0.0f64;
    let mut growing = 0;
    for deg in 0..=4 {
        for nv in 1..=4 {
            for lambda in enumerate_partitions(deg, nv) {
                let lim = intertwine_limit(&lambda, nv)?.expansion;
                let a = intertwine_monomial(&lambda, &k1, nv)?.output;
                let b = intertwine_monomial(&lambda, &k2, nv)?.output;
                for mu in enumerate_partitions(deg, nv) {
                    let l = lim.coefficient(&mu);
                    let g1 = rational_to_f64(&(a.coefficient(&mu) - &l)).abs();
                    let g2 = rational_to_f64(&(b.coefficient(&mu) - &l)).abs();
                    max_gap = max_gap.max(g1);
                    growing += usize::from(!(g2 < g1 || (g1 == 0.0 && g2 == 0.0)));
                }
            }
        }
    }
    r.at_most("limit max gap at k=1e4", max_gap, 1e-3);
    r.at_most("limit coefficients not shrinking at k=2e4", growing as f64, 0.0);
    Ok(())
}

fn ordered_in_ball(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        v.sort_by(f64::total_cmp);
        let spaced = v.windows(2).all(|w| w[1] - w[0] >= 0.1);
        if spaced && v.iter().map(|c| c * c).sum::<f64>() <= 4.0 {
            return v;
        }
    }
}

fn density(r: &mut Report, a: &VerifyArgs) -> CliResult<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    for n in [2usize, 3] {
        for t in [0.5, 1.0, 2.0] {
            let mut worst = 0.0f64;
            for _ in 0..50 {
                let q = TpdQuery::new(t, ordered_in_ball(&mut rng, n), ordered_in_ball(&mut rng, n), 2.0);
                let s = dyson_tpd_series(&q)?.value;
                let g = grabiner_tpd(&q)?.value;
                worst = worst.max((s - g).abs() / g.abs());
            }
            r.at_most(&format!("density N={n} t={t} relative error"), worst, 1e-8);
        }
    }
    Ok(())
}

fn marginals(r: &mut Report, a: &VerifyArgs) -> CliResult<()> {
    let n = a.n.unwrap_or(3);
    let k = a.k.unwrap_or(1.0);
    let traj = a.traj.unwrap_or(10_000);
    let x0 = default_start(n);
    let cfg = SimConfig::new(n, k, a.dt.unwrap_or(1e-3), 1.0, traj, a.seed);
    let dyson = simulate_dyson(&cfg, &x0)?;
    let dunkl = simulate_dunkl(
        &SimConfig {
            seed: a.seed.wrapping_add(1),
            ..cfg
        },
        &x0,
    )?;
    for (m, d) in ks_compare(&dunkl, &dyson)?.iter().enumerate() {
        r.at_most(&format!("marginals KS dunkl vs dyson coordinate {m}"), *d, 0.05);
    }
    if k == 1.0 {
        let marginals = sorted_marginals(&dyson, dyson.times.len() - 1);
        for (m, sample) in marginals.iter().enumerate() {
            let failure = RefCell::new(None);
            let d = ks_one_sample(sample, |y| {
                grabiner_sorted_marginal_cdf(&x0, 1.0, m, y).unwrap_or_else(|e| {
                    failure.replace(Some(e));
                    f64::NAN
                })
            });
            if let Some(e) = failure.into_inner() {
                return Err(e.into());
            }
            r.at_most(&format!("marginals KS dyson vs exact coordinate {m}"), d, 0.05);
        }
    }
    Ok(())
}

fn hermite(r: &mut Report, a: &VerifyArgs) -> CliResult<()> {
    let top = a.n.unwrap_or(20);
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let (mut w_sum, mut w_sq, mut w_disc, mut w_f, mut w_g) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut non_negative = 0;
    for n in 1..=top {
        let id = root_identities(n)?;
        w_sum = w_sum.max(id.sum.abs());
        w_sq = w_sq.max((id.sum_sq - id.sum_sq_expected).abs() / (n * n) as f64);
        w_disc = w_disc.max((id.log_discriminant - id.log_discriminant_expected).abs());
        for t in [0.5, 1.0, 3.0] {
            let v = freeze_prediction(n, t)?;
            w_f = w_f.max(freeze_eval(&v, t)?.abs());
            if n < 2 {
                continue;
            }
            w_g = w_g.max(freeze_grad(&v, t)?.iter().map(|c| c * c).sum::<f64>().sqrt());
            let h = freeze_hess(&v, t)?;
            for _ in 0..100 {
                let u = random_direction(&mut rng, n);
                let form: f64 = (0..n)
                    .map(|i| (0..n).map(|j| u[i] * h[(i, j)] * u[j]).sum::<f64>())
                    .sum();
                non_negative += usize::from(form >= 0.0);
            }
        }
    }
    r.at_most(&format!("hermite |sum z| N<={top}"), w_sum, 1e-12);
    r.at_most(&format!("hermite |sum z^2 - N(N-1)/2|/N^2 N<={top}"), w_sq, 1e-10);
    r.at_most(&format!("hermite log discriminant N<={top}"), w_disc, 1e-9);
    r.at_most(&format!("hermite |F_N| at prediction N<={top}"), w_f, 1e-9);
    r.at_most(&format!("hermite |grad F_N| at prediction N<={top}"), w_g, 1e-9);
    r.at_most("hermite non-negative Hessian forms", non_negative as f64, 0.0);
    Ok(())
}

fn random_direction(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

fn freeze(r: &mut Report, a: &VerifyArgs) -> CliResult<()> {
    let sizes = a.n.map_or(vec![3, 4], |n| vec![n]);
    let k = a.k.unwrap_or(1e4);
    for n in sizes {
        let x0 = default_start(n);
        let base = SimConfig::new(
            n,
            k,
            a.dt.unwrap_or(1e-4),
            1.0,
            a.traj.unwrap_or(100),
            a.seed + n as u64,
        );
        let low = freeze_experiment(&base, &x0)?;
        let high = freeze_experiment(&SimConfig { k: 4.0 * k, ..base }, &x0)?;
        r.at_most(&format!("freeze N={n} mean max deviation"), low.mean_max_dev, 0.05);
        r.check(
            &format!("freeze N={n} rms at 4k below rms at k"),
            high.rms_dev - low.rms_dev,
            0.0,
            high.rms_dev < low.rms_dev,
        );
    }
    Ok(())
}

fn jack(r: &mut Report) -> CliResult<()> {
    let mut residuals = 0;
    for alpha in [q(1, 2), q(1, 1), q(2, 1)] {
        let two_k = q(2, 1) / &alpha;
        for nv in 1..=4 {
            for deg in 0..=5 {
                let table = jack_table(deg, &alpha, nv)?;
                let op = operator_matrix(deg, nv)?;
                let size = table.parts().len();
                for t in 0..size {
                    for l in 0..size {
                        // coefficient of m_l in D_k P_t minus E_t u_{t,l}
                        let mut acc = Rational::from_integer(0.into());
                        for mu in 0..size {
                            let u = table.entry(t, mu);
                            if u == Rational::from_integer(0.into()) {
                                continue;
                            }
                            let main = if mu == l { op.diagonal(mu).0 } else { 0 };
                            let cross = op.cross_entry(mu, l);
                            acc += u
                                * (Rational::from_integer(main.into()) + &two_k * Rational::from_integer(cross.into()));
                        }
                        acc -= table.eigenvalue(t) * table.entry(t, l);
                        residuals += usize::from(acc != Rational::from_integer(0.into()));
                    }
                }
            }
        }
    }
    r.at_most("jack eigenrelation nonzero residual entries", residuals as f64, 0.0);

    let points = [[0.3, -1.2, 0.8, 2.1], [1.5, 0.4, -0.7, -0.2]];
    let mut worst = 0.0f64;
    for nv in 1..=4usize {
        for deg in 0..=4 {
            let table = jack_table(deg, &q(1, 1), nv)?;
            for (t, tau) in table.parts().iter().enumerate() {
                for x in &points {
                    let x = &x[..nv];
                    let mut p = 0.0;
                    for (l, lambda) in table.parts().iter().enumerate() {
                        p += rational_to_f64(&table.entry(t, l)) * eval_monomial(lambda, x)?;
                    }
                    let s = eval_schur(tau, x)?;
                    worst = worst.max((p - s).abs() / s.abs().max(1.0));
                }
            }
        }
    }
    r.at_most("jack alpha=1 rows vs bialternant Schur values", worst, 1e-10);
    Ok(())
}

fn selberg(r: &mut Report, a: &VerifyArgs) -> CliResult<()> {
    let samples = a.traj.unwrap_or(1_000_000);
    for (n, k) in [(2usize, 1.0), (3, 0.5)] {
        let c = mc_norm_check(n, k, samples, a.seed + n as u64)?;
        r.at_most(&format!("selberg N={n} k={k} |z-score|"), c.z_score.abs(), 3.0);
    }
    Ok(())
}

fn normalization(r: &mut Report) -> CliResult<()> {
    let centre = composite_rule(-9.0, 9.0, 12, 16)?;
    let gap = composite_rule(0.0, 14.0, 10, 16)?;
    let x = vec![-0.5, 0.5];
    for beta in [1.0, 2.0, 4.0] {
        let parts: Vec<f64> = centre
            .par_iter()
            .map(|&(c, wc)| -> dunkl::Result<f64> {
                let mut s = 0.0;
                for &(g, wg) in &gap {
                    let q = TpdQuery::new(1.0, x.clone(), vec![c - 0.5 * g, c + 0.5 * g], beta);
                    s += wc * wg * dyson_tpd_series(&q)?.value;
                }
                Ok(s)
            })
            .collect::<dunkl::Result<Vec<_>>>()?;
        let total: f64 = parts.iter().sum();
        r.at_most(
            &format!("normalization beta={beta} |mass - 1|"),
            (total - 1.0).abs(),
            1e-4,
        );
    }
    Ok(())
}
