use clap::Args;
use dunkl::symfunc::{jack_expansion, Basis, SymPoly};
use dunkl::{Partition, Rational};

use super::list;
use crate::error::CliResult;
use crate::parse;

/// Monomial expansion of the Jack polynomial `P_tau` in `N` variables.
#[derive(Debug, Args)]
pub struct JackArgs {
    /// Partition, e.g. `2,1`.
    #[arg(long, value_parser = parse::partition)]
    pub tau: Partition,
    /// Jack parameter as `p/q`.
    #[arg(long, value_parser = parse::rational)]
    pub alpha: Rational,
    #[arg(long)]
    pub n: usize,
    /// Exact evaluation point `x_1,...,x_N`; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    pub at: Vec<String>,
}

pub fn run(a: &JackArgs) -> CliResult<()> {
    let e = jack_expansion(&a.tau, &a.alpha, a.n)?;
    println!("P_{} alpha={} N={}", a.tau, a.alpha, a.n);
    println!("eigenvalue {}", e.eigenvalue);
    println!("lambda u");
    let mut poly = SymPoly::zero(Basis::Monomial, a.tau.modulus(), a.n);
    for (lambda, u) in &e.coeffs {
        println!("{lambda} {u}");
        poly.add_term(lambda, u.clone())?;
    }
    for point in &a.at {
        let x = list("at", point, parse::rationals)?;
        let shown: Vec<String> = x.iter().map(|v| v.to_string()).collect();
        println!("P({}) = {}", shown.join(","), poly.eval_exact(&x)?);
    }
    Ok(())
}
