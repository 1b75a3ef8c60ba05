use clap::Args;
use dunkl::intertwine::{intertwine_limit, intertwine_monomial};
use dunkl::symfunc::SymPoly;
use dunkl::{Partition, Rational};

use crate::error::{CliError, CliResult};
use crate::parse;

/// Exact coefficients of `V_k m_lambda` on the monomial basis.
#[derive(Debug, Args)]
pub struct IntertwineArgs {
    #[arg(long, value_parser = parse::partition)]
    pub lambda: Partition,
    /// Coupling as `p/q`; not used with `--limit`.
    #[arg(long, value_parser = parse::rational)]
    pub k: Option<Rational>,
    #[arg(long)]
    pub n: usize,
    /// Print the `k -> infinity` limit instead.
    #[arg(long)]
    pub limit: bool,
}

fn print_rows(p: &SymPoly) {
    for (mu, c) in p.terms() {
        println!("m_{mu} {c}");
    }
}

pub fn run(a: &IntertwineArgs) -> CliResult<()> {
    if a.limit {
        let r = intertwine_limit(&a.lambda, a.n)?;
        println!("limit V m_{} N={}", a.lambda, a.n);
        println!("e_1^{} coefficient {}", a.lambda.modulus(), r.coefficient);
        print_rows(&r.expansion);
        return Ok(());
    }
    let k =
        a.k.as_ref()
            .ok_or_else(|| CliError::Parse("--k is required unless --limit is given".into()))?;
    let r = intertwine_monomial(&a.lambda, k, a.n)?;
    println!("V m_{} k={} N={}", a.lambda, k, a.n);
    print_rows(&r.output);
    Ok(())
}
