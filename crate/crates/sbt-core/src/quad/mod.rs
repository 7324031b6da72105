//! Gaussian-type quadrature rules and the tensor / radial integration
//! engine used as the brute-force oracle everywhere else in the crate.

mod integrate;
mod rules;

pub use integrate::{
    integrate_nd, line_integral_gh, radial_integral, radial_integral_bounded,
    radial_integral_with_min, TensorRule, DEFAULT_TOL,
};
pub use rules::{gauss_hermite, gauss_laguerre, gauss_legendre, uniform_periodic, Rule1D, RuleKind};
