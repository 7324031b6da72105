//! Numerical core for Toeplitz-operator boundedness experiments on
//! Bergman-type spaces of entire functions.
//!
//! The crate computes the scalar eigenvalue sequences attached to Toeplitz
//! operators with structured symbols (radial, Gaussian, slice-dependent) on
//! four families of spaces — Fock, heat Bergman, Hermite–Bergman, twisted
//! Bergman — and on rank-one compact-group Segal–Bargmann spaces, and checks
//! every closed-form identity it uses against brute-force quadrature.
//!
//! Everything here is `no_std + alloc`; all floating-point transcendentals go
//! through `libm` so results are bit-identical across hosts. IO, the CLI and
//! file formats live in the companion `sbt-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod error;
pub(crate) mod fmath;
pub mod scaled;

pub mod params;
pub mod report;
pub mod symbol;

pub mod quad;
pub mod specfun;

pub mod fock;
pub mod group;
pub mod hermite;
pub mod twisted;

pub use error::Error;
pub use num_complex::Complex64;
pub use params::SpaceParams;
pub use report::{classify_verdict, SequenceReport, TailFit, Verdict};
pub use scaled::ScaledValue;
pub use symbol::{parse_symbol, DecayBudget, SymbolKind, SymbolSpec};

pub type Result<T> = core::result::Result<T, Error>;
