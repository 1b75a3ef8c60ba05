//! Type-A Dunkl intertwining operator on symmetric polynomials, closed-form
//! transition densities of Dyson's Brownian motion and of symmetric Dunkl
//! processes, and Monte Carlo / ODE tools for the strong-coupling
//! (freezing) regime.
//!
//! Module map:
//!
//! - [`partition`]: integer partitions, dominance order, multiplicities.
//! - [`symfunc`]: monomial, elementary, Schur and Jack symmetric functions
//!   over exact rationals or `f64`.
//! - [`intertwine`]: the intertwining operator on `m_lambda`, its
//!   strong-coupling limit, the `0F0` series and transition densities.
//! - [`hermite`]: Hermite roots, the large-deviation function `F_N` and the
//!   deterministic freezing flow.
//! - [`quadrature`]: Gauss-Legendre rules.
//! - [`sim`]: Euler-Maruyama simulation of Dyson and Dunkl processes,
//!   ensemble statistics and Monte Carlo checks.
//!
//! The guide under `book/` walks through each of these with runnable
//! snippets; the snippets are compiled and run as doc-tests of this crate.

pub mod error;
pub mod hermite;
pub mod intertwine;
pub mod partition;
pub mod quadrature;
pub mod sim;
pub mod symfunc;

pub use error::{Error, Result};
pub use partition::{enumerate_partitions, Dominance, Partition};
pub use symfunc::Rational;

/// Library version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/partitions.md")]
    mod partitions {}
    #[doc = include_str!("../../../book/src/jack.md")]
    mod jack {}
    #[doc = include_str!("../../../book/src/intertwining.md")]
    mod intertwining {}
    #[doc = include_str!("../../../book/src/densities.md")]
    mod densities {}
    #[doc = include_str!("../../../book/src/freezing.md")]
    mod freezing {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
}
