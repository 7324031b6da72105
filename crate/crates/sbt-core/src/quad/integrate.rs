//! Tensor-product and radial integration on top of the 1-D rules.
//!
//! All integrators translate their rule into a plain Lebesgue rule by
//! compensating the Gaussian/Laguerre weight, so callables receive raw
//! points and return raw integrand values. Oscillatory integrands are
//! handled by recentering the rule at the integrand's Gaussian peak and
//! letting the doubling ladder grow the node count; at desk scale all
//! oscillation frequencies are O(10), which this resolves comfortably.

use super::rules::{gauss_hermite, gauss_laguerre, gauss_legendre, Rule1D};
use crate::fmath;
use crate::scaled::ScaledValue;
use crate::symbol::DecayBudget;
use crate::{Error, Result};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

pub const DEFAULT_TOL: f64 = 1e-10;

const MAX_DOUBLINGS: usize = 6;

/// Tensor product of 1-D rules with optional per-factor node scaling.
#[derive(Clone)]
pub struct TensorRule {
    factors: Vec<Arc<Rule1D>>,
    scales: Vec<f64>,
}

impl TensorRule {
    pub fn new(factors: Vec<Arc<Rule1D>>) -> Self {
        let scales = vec![1.0; factors.len()];
        Self { factors, scales }
    }

    pub fn with_scales(factors: Vec<Arc<Rule1D>>, scales: Vec<f64>) -> Result<Self> {
        if factors.len() != scales.len() {
            return Err(Error::Shape(
                "one scale per tensor factor is required".into(),
            ));
        }
        Ok(Self { factors, scales })
    }

    /// Isotropic Gauss–Hermite tensor with per-axis scales.
    pub fn hermite(m: usize, scales: &[f64]) -> Result<Self> {
        let rule = gauss_hermite(m)?;
        Ok(Self {
            factors: vec![rule; scales.len()],
            scales: scales.to_vec(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.factors.len()
    }

    /// Total node count (product of factor sizes).
    pub fn len(&self) -> usize {
        self.factors.iter().map(|r| r.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `int f(x) dx` over `R^d` (or the rule's box) as a weighted sum over the
/// tensor grid, recentered by `recenter`. The engine owns the rule's weight:
/// the callable sees the raw point.
pub fn integrate_nd(
    rule: &TensorRule,
    recenter: &[f64],
    mut f: impl FnMut(&[f64]) -> Complex64,
) -> Result<Complex64> {
    let d = rule.dimension();
    if d == 0 || d > 4 {
        return Err(Error::Shape(alloc::format!(
            "tensor integration supports dimensions 1..=4, got {d}"
        )));
    }
    if recenter.len() != d {
        return Err(Error::Shape(alloc::format!(
            "recentering vector has length {}, rule dimension is {d}",
            recenter.len()
        )));
    }

    // per-axis tables of shifted nodes and log-compensated weights
    let mut points: Vec<Vec<f64>> = Vec::with_capacity(d);
    let mut logw: Vec<Vec<f64>> = Vec::with_capacity(d);
    for j in 0..d {
        let r = &rule.factors[j];
        let s = rule.scales[j];
        let ln_s = fmath::ln(s);
        points.push(
            r.nodes
                .iter()
                .map(|&x| recenter[j] + s * x)
                .collect(),
        );
        logw.push(
            r.nodes
                .iter()
                .zip(&r.weights)
                .map(|(&x, &w)| {
                    if w > 0.0 {
                        fmath::ln(w) + r.comp_log(x) + ln_s
                    } else {
                        f64::NEG_INFINITY
                    }
                })
                .collect(),
        );
    }

    let mut idx = [0usize; 4];
    let sizes: Vec<usize> = rule.factors.iter().map(|r| r.len()).collect();
    let mut pt = [0.0f64; 4];
    let mut sum = Complex64::new(0.0, 0.0);
    loop {
        let mut lw = 0.0;
        for j in 0..d {
            pt[j] = points[j][idx[j]];
            lw += logw[j][idx[j]];
        }
        let w = fmath::exp(lw);
        if w > 0.0 {
            sum += w * f(&pt[..d]);
        }
        // odometer
        let mut j = 0;
        loop {
            idx[j] += 1;
            if idx[j] < sizes[j] {
                break;
            }
            idx[j] = 0;
            j += 1;
            if j == d {
                return Ok(sum);
            }
        }
    }
}

/// `int_R f(x) dx` for an integrand with a Gaussian envelope of width
/// `sigma` centered at `center`, by a doubling Gauss–Hermite ladder.
pub fn line_integral_gh(
    center: f64,
    sigma: f64,
    tol: f64,
    m0: usize,
    mut f: impl FnMut(f64) -> Complex64,
) -> Result<Complex64> {
    let mut m = m0.max(4);
    let mut prev: Option<Complex64> = None;
    for _ in 0..=MAX_DOUBLINGS {
        let rule = gauss_hermite(m)?;
        let mut sum = Complex64::new(0.0, 0.0);
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            if w == 0.0 {
                continue;
            }
            let lw = fmath::ln(w) + x * x;
            sum += fmath::exp(lw) * sigma * f(center + sigma * x);
        }
        if let Some(p) = prev {
            let scale = sum.norm().max(p.norm());
            if (sum - p).norm() <= tol * scale || scale < 1e-280 {
                return Ok(sum);
            }
        }
        prev = Some(sum);
        m *= 2;
    }
    let last = prev.unwrap();
    Err(Error::Accuracy {
        context: "line integral did not converge".into(),
        last,
        previous: last,
    })
}

/// `int_0^infty f(r) r^{2n-1} dr` by substitution `s = r^2` onto a
/// Gauss–Laguerre rule sized from the decay budget, doubling until
/// successive estimates agree within `tol`.
pub fn radial_integral(
    f: &dyn Fn(f64) -> ScaledValue,
    budget: &DecayBudget,
    n: u32,
    tol: f64,
) -> Result<Complex64> {
    Ok(radial_integral_scaled(f, budget, n, tol, 32)?.to_complex())
}

/// As [`radial_integral`] but with a caller-chosen starting rule size (useful
/// when the integrand contains a degree-`k` oscillation).
pub fn radial_integral_with_min(
    f: &dyn Fn(f64) -> ScaledValue,
    budget: &DecayBudget,
    n: u32,
    tol: f64,
    m_min: usize,
) -> Result<Complex64> {
    Ok(radial_integral_scaled(f, budget, n, tol, m_min)?.to_complex())
}

pub fn radial_integral_scaled(
    f: &dyn Fn(f64) -> ScaledValue,
    budget: &DecayBudget,
    n: u32,
    tol: f64,
    m_min: usize,
) -> Result<ScaledValue> {
    if budget.gaussian_rate >= 0.0 {
        return Err(Error::Divergence(alloc::format!(
            "radial integrand must decay like a Gaussian; budget rate {} >= 0",
            budget.gaussian_rate
        )));
    }
    let kappa = -budget.gaussian_rate;
    let alpha = n as f64 - 1.0;
    // prefactor 1/(2 kappa^n)
    let pref = ScaledValue::exp_of(-(n as f64) * fmath::ln(kappa)) * 0.5;

    let mut m = m_min.max(8);
    let mut prev: Option<ScaledValue> = None;
    let ln_tol = fmath::ln(tol);
    for _ in 0..=MAX_DOUBLINGS {
        let rule = gauss_laguerre(m, alpha)?;
        let mut sum = ScaledValue::ZERO;
        for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
            if w == 0.0 {
                continue;
            }
            let r = fmath::sqrt(u / kappa);
            let term = f(r) * ScaledValue::exp_of(u) * w;
            sum = sum + term;
        }
        let est = pref * sum;
        if let Some(p) = prev {
            let diff = est - p;
            let scale = est.abs_ln().max(p.abs_ln());
            if diff.is_zero() || diff.abs_ln() <= ln_tol + scale.max(-650.0) {
                return Ok(est);
            }
        }
        prev = Some(est);
        m *= 2;
    }
    let last = prev.unwrap();
    Err(Error::Accuracy {
        context: "radial integral did not converge".into(),
        last: last.to_complex(),
        previous: last.to_complex(),
    })
}

/// `int_lo^hi f(r) dr` on a compact interval by a doubling Gauss–Legendre
/// ladder; for the indicator-supported symbols where the half-line
/// substitution does not apply.
pub fn radial_integral_bounded(
    f: &dyn Fn(f64) -> ScaledValue,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<ScaledValue> {
    let mut m = 16usize;
    let mut prev: Option<ScaledValue> = None;
    let ln_tol = fmath::ln(tol);
    for _ in 0..=MAX_DOUBLINGS {
        let rule = gauss_legendre(m, lo, hi)?;
        let mut sum = ScaledValue::ZERO;
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            sum = sum + f(x) * w;
        }
        if let Some(p) = prev {
            let diff = sum - p;
            let scale = sum.abs_ln().max(p.abs_ln());
            if diff.is_zero() || diff.abs_ln() <= ln_tol + scale.max(-650.0) {
                return Ok(sum);
            }
        }
        prev = Some(sum);
        m *= 2;
    }
    let last = prev.unwrap();
    Err(Error::Accuracy {
        context: "bounded radial integral did not converge".into(),
        last: last.to_complex(),
        previous: last.to_complex(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmath::SQRT_PI;

    fn sv(x: f64) -> ScaledValue {
        ScaledValue::from_f64(x)
    }

    #[test]
    fn radial_gaussian_masses() {
        let budget = DecayBudget::new(-1.0, 0, 1.0);
        // n=1: int_0^infty r e^{-r^2} dr = 1/2
        let got = radial_integral(&|r| sv((-r * r).exp()), &budget, 1, 1e-12).unwrap();
        assert!((got.re - 0.5).abs() < 1e-12);
        // n=2: int_0^infty r^3 e^{-r^2} dr = 1/2
        let got = radial_integral(&|r| sv((-r * r).exp()), &budget, 2, 1e-12).unwrap();
        assert!((got.re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn radial_divergence_guard() {
        let budget = DecayBudget::new(1.0, 0, 1.0);
        let e = radial_integral(&|r| sv((r * r).exp()), &budget, 1, 1e-10);
        assert!(matches!(e, Err(Error::Divergence(_))));
    }

    #[test]
    fn radial_doubling_deltas_shrink() {
        // stage-by-stage estimates of int_0^infty e^{-r^2}/(1+r^2) r dr
        let kappa = 1.0f64;
        let estimates: Vec<f64> = [16usize, 32, 64, 128, 256, 512]
            .iter()
            .map(|&m| {
                let rule = gauss_laguerre(m, 0.0).unwrap();
                let mut sum = 0.0;
                for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
                    let r2 = u / kappa;
                    sum += w * (1.0 / (1.0 + r2));
                }
                0.5 * sum
            })
            .collect();
        let exact = estimates[estimates.len() - 1];
        let mut last_delta = f64::INFINITY;
        for pair in estimates.windows(2) {
            let delta = (pair[1] - pair[0]).abs();
            if delta < 1e-13 * exact.abs() {
                break;
            }
            assert!(delta < last_delta, "deltas must shrink: {estimates:?}");
            last_delta = delta;
        }
    }

    #[test]
    fn bounded_radial_matches_closed_form() {
        // int_1^2 r^3 dr = 15/4
        let got = radial_integral_bounded(&|r| sv(r * r * r), 1.0, 2.0, 1e-13).unwrap();
        assert!((got.to_f64() - 3.75).abs() < 1e-12);
    }

    #[test]
    fn nd_gaussian_mass_and_second_moment() {
        let rule = TensorRule::hermite(24, &[1.0, 1.0]).unwrap();
        // normalized Gaussian has unit mass
        let got = integrate_nd(&rule, &[0.0, 0.0], |p| {
            Complex64::new((-p[0] * p[0] - p[1] * p[1]).exp() / core::f64::consts::PI, 0.0)
        })
        .unwrap();
        assert!((got.re - 1.0).abs() < 1e-12);

        // int (x^2+y^2) e^{-x^2-y^2}/pi = 1
        let got = integrate_nd(&rule, &[0.0, 0.0], |p| {
            let r2 = p[0] * p[0] + p[1] * p[1];
            Complex64::new(r2 * (-r2).exp() / core::f64::consts::PI, 0.0)
        })
        .unwrap();
        assert!((got.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nd_recentering_preserves_mass_and_matches_closed_form() {
        let rule = TensorRule::hermite(32, &[1.0, 1.0]).unwrap();
        // unit-mass Gaussian far from the origin, rule recentered there
        let c = [5.0, -0.0];
        let got = integrate_nd(&rule, &c, |p| {
            let dx = p[0] - 5.0;
            let dy = p[1];
            Complex64::new((-dx * dx - dy * dy).exp() / core::f64::consts::PI, 0.0)
        })
        .unwrap();
        assert!((got.re - 1.0).abs() < 1e-10);

        // recentered bump at generic c vs closed form, a few random centers
        let mut state = 1234u64;
        let mut rand = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 4.0 - 2.0
        };
        for _ in 0..5 {
            let cx = rand();
            let cy = rand();
            let got = integrate_nd(&rule, &[cx, cy], |p| {
                let dx = p[0] - cx;
                let dy = p[1] - cy;
                Complex64::new((-(dx * dx) - dy * dy).exp(), 0.0)
            })
            .unwrap();
            assert!((got.re - core::f64::consts::PI).abs() < 1e-10);
        }
    }

    #[test]
    fn nd_shape_errors() {
        let rule = TensorRule::hermite(8, &[1.0, 1.0]).unwrap();
        assert!(matches!(
            integrate_nd(&rule, &[0.0], |_| Complex64::new(1.0, 0.0)),
            Err(Error::Shape(_))
        ));
        let rule5 = TensorRule::hermite(4, &[1.0; 5]).unwrap();
        assert!(matches!(
            integrate_nd(&rule5, &[0.0; 5], |_| Complex64::new(1.0, 0.0)),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn line_integral_shifted_and_oscillatory() {
        // int e^{-(x-3)^2} dx = sqrt(pi)
        let got = line_integral_gh(3.0, 1.0, 1e-12, 16, |x| {
            Complex64::new((-(x - 3.0) * (x - 3.0)).exp(), 0.0)
        })
        .unwrap();
        assert!((got.re - SQRT_PI).abs() < 1e-12);

        // int e^{ix} e^{-x^2} dx = sqrt(pi) e^{-1/4}
        let got = line_integral_gh(0.0, 1.0, 1e-12, 16, |x| {
            Complex64::new(0.0, x).exp() * (-x * x).exp()
        })
        .unwrap();
        let want = SQRT_PI * (-0.25f64).exp();
        assert!((got.re - want).abs() < 1e-12 && got.im.abs() < 1e-12);
    }
}
