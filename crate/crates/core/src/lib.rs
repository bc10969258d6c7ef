//! Numerics for the Riesz / Hardy-Littlewood critical wave.
//!
//! The crate evaluates Baez-Duarte coefficients `c_k(alpha, beta)`, the
//! two-parameter Pochhammer polynomials they pair with in the expansion of
//! `1/zeta(s)`, and the critical function
//!
//! ```text
//! psi(x; alpha, beta, rho) = exp((alpha - rho) x / beta) * sum_{n <= N} mu(n) n^-alpha exp(-e^x / n^beta)
//! ```
//!
//! together with its decomposition into trivial-zero and nontrivial-zero
//! contributions, and the tail/stability bounds that go with a finite Möbius
//! truncation `N`.
//!
//! Module map:
//!
//! - [`numtheory`]: Möbius sieve, real/complex zeta, complex log-Gamma, zeta derivatives at zeros.
//! - [`pochhammer`]: `P_k(s, alpha, beta)` by direct product or Gamma ratio, plus the growth diagnostic.
//! - [`coefficients`]: `c_k` in exact and exponential form and the fluctuation analysis between them.
//! - [`wave`]: critical-wave traces and oscillation analysis.
//! - [`reciprocal`]: partial sums of the `1/zeta` expansion and the functional-equation duality.
//! - [`stability`]: truncation-stability thresholds in `x = log k`.
//! - [`cli`]: experiment configuration, figure and report generation (CSV / SVG).

pub mod cli;
pub mod coefficients;
mod error;
pub mod numtheory;
pub mod pochhammer;
pub mod reciprocal;
pub mod stability;
pub mod sum;
pub mod wave;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Default exponent `alpha` of the main experiments.
pub const DEFAULT_ALPHA: f64 = 7.5;
/// Default exponent `beta` of the main experiments.
pub const DEFAULT_BETA: f64 = 4.0;
/// Default Möbius truncation `N`.
pub const DEFAULT_TRUNCATION: usize = 2000;
