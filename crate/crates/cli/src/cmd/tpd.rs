use clap::{Args, ValueEnum};
use dunkl::intertwine::{dunkl_tpd_symmetric, dyson_tpd_series, grabiner_tpd, Density, SeriesControls, TpdQuery};
use serde::Serialize;

use super::list;
use crate::error::{CliError, CliResult};
use crate::io::fmt_f64;
use crate::parse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Jack series for Dyson's model.
    Series,
    /// Determinantal formula, beta = 2 only.
    Grabiner,
    /// Symmetric Dunkl process density.
    Dunkl,
    /// Series and determinant side by side.
    Both,
}

/// Transition density `p(t, y | x)` for ordered `x`, `y`.
#[derive(Debug, Args)]
pub struct TpdArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
    #[arg(long)]
    pub t: f64,
    #[arg(long, conflicts_with = "k", required_unless_present = "k")]
    pub beta: Option<f64>,
    /// Coupling, `beta = 2k`.
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long, value_enum, default_value_t = Method::Series)]
    pub method: Method,
    #[arg(long, default_value_t = 40)]
    pub max_degree: u32,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Serialize)]
struct Row {
    method: Method,
    value: f64,
    degree: Option<u32>,
    last_layer: Option<f64>,
}

#[derive(Debug, Serialize)]
struct Output<'a> {
    query: &'a TpdQuery,
    results: Vec<Row>,
    relative_difference: Option<f64>,
}

fn row(method: Method, d: Density) -> Row {
    Row {
        method,
        value: d.value,
        degree: d.series.map(|s| s.degree),
        last_layer: d.series.map(|s| s.last_layer),
    }
}

pub fn run(a: &TpdArgs) -> CliResult<()> {
    let beta = match (a.beta, a.k) {
        (Some(b), _) => b,
        (None, Some(k)) => 2.0 * k,
        (None, None) => return Err(CliError::Parse("one of --beta, --k is required".into())),
    };
    let mut query = TpdQuery::new(
        a.t,
        list("x", &a.x, parse::floats)?,
        list("y", &a.y, parse::floats)?,
        beta,
    );
    query.controls = SeriesControls {
        max_degree: a.max_degree,
        rel_tol: a.tol,
    };
    let results = match a.method {
        Method::Series => vec![row(Method::Series, dyson_tpd_series(&query)?)],
        Method::Grabiner => vec![row(Method::Grabiner, grabiner_tpd(&query)?)],
        Method::Dunkl => vec![row(Method::Dunkl, dunkl_tpd_symmetric(&query)?)],
        Method::Both => {
            let g = grabiner_tpd(&query)?;
            vec![row(Method::Series, dyson_tpd_series(&query)?), row(Method::Grabiner, g)]
        }
    };
    let relative_difference =
        (results.len() == 2).then(|| (results[0].value - results[1].value).abs() / results[1].value.abs());
    if a.json {
        let out = Output {
            query: &query,
            results,
            relative_difference,
        };
        println!("{}", serde_json::to_string_pretty(&out)?);
        return Ok(());
    }
    println!("method value degree last_layer");
    for r in &results {
        let name = format!("{:?}", r.method).to_lowercase();
        let degree = r.degree.map_or("-".into(), |d| d.to_string());
        let layer = r.last_layer.map_or("-".into(), |l| format!("{l:.3e}"));
        println!("{name} {} {degree} {layer}", fmt_f64(r.value));
    }
    if let Some(d) = relative_difference {
        println!("relative difference {d:.3e}");
    }
    Ok(())
}
