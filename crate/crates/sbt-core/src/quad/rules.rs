//! One-dimensional rules built Golub–Welsch style from the three-term
//! recurrence of the orthogonal family: eigenvalues of the Jacobi matrix are
//! the nodes, squared first eigenvector components give the weights.
//!
//! Construction cost dominates setup, so finished rules are cached behind a
//! reader-writer lock keyed by `(kind, m, parameters)`.

use crate::fmath;
use crate::{Error, Result};
use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RuleKind {
    /// Weight `e^{-x^2}` on the real line.
    GaussHermite { m: usize },
    /// Weight `x^alpha e^{-x}` on the half line.
    GaussLaguerre { m: usize, alpha: f64 },
    /// Plain Gauss rule on `[lo, hi]`.
    GaussLegendre { m: usize, lo: f64, hi: f64 },
    /// Midpoint rule on `[lo, hi]`; spectrally accurate for periodic
    /// integrands over a full period.
    TruncatedUniform { m: usize, lo: f64, hi: f64 },
}

#[derive(Clone, Debug)]
pub struct Rule1D {
    pub kind: RuleKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule1D {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// log of the weight-compensation factor turning the rule into a plain
    /// Lebesgue rule: `sum_i w_i e^{comp(x_i)} f(x_i) ~ int f`.
    pub(crate) fn comp_log(&self, x: f64) -> f64 {
        match self.kind {
            RuleKind::GaussHermite { .. } => x * x,
            RuleKind::GaussLaguerre { alpha, .. } => x - alpha * fmath::ln(x),
            RuleKind::GaussLegendre { .. } | RuleKind::TruncatedUniform { .. } => 0.0,
        }
    }
}

const MAX_GH: usize = 4096;
const MAX_GLAG: usize = 8192;

type CacheKey = (u8, u64, u64, u64);

static RULE_CACHE: spin::RwLock<BTreeMap<CacheKey, Arc<Rule1D>>> =
    spin::RwLock::new(BTreeMap::new());

fn cache_key(kind: &RuleKind) -> CacheKey {
    match *kind {
        RuleKind::GaussHermite { m } => (0, m as u64, 0, 0),
        RuleKind::GaussLaguerre { m, alpha } => (1, m as u64, alpha.to_bits(), 0),
        RuleKind::GaussLegendre { m, lo, hi } => (2, m as u64, lo.to_bits(), hi.to_bits()),
        RuleKind::TruncatedUniform { m, lo, hi } => (3, m as u64, lo.to_bits(), hi.to_bits()),
    }
}

fn cached(kind: RuleKind, build: impl FnOnce() -> Result<Rule1D>) -> Result<Arc<Rule1D>> {
    let key = cache_key(&kind);
    if let Some(rule) = RULE_CACHE.read().get(&key) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(build()?);
    let mut guard = RULE_CACHE.write();
    Ok(guard.entry(key).or_insert(rule).clone())
}

/// `m`-point rule for the weight `e^{-x^2}` on the real line.
pub fn gauss_hermite(m: usize) -> Result<Arc<Rule1D>> {
    if m < 1 || m > MAX_GH {
        return Err(Error::Range(alloc::format!(
            "gauss_hermite size must lie in 1..={MAX_GH}, got {m}"
        )));
    }
    cached(RuleKind::GaussHermite { m }, || {
        let mut d = vec![0.0; m];
        let mut e: Vec<f64> = (1..m).map(|i| fmath::sqrt(i as f64 / 2.0)).collect();
        e.push(0.0);
        let (nodes, weights) = golub_welsch(&mut d, &mut e, fmath::SQRT_PI)?;
        let (nodes, weights) = symmetrize(nodes, weights);
        Ok(Rule1D {
            kind: RuleKind::GaussHermite { m },
            nodes,
            weights,
        })
    })
}

/// `m`-point rule for the weight `x^alpha e^{-x}` on the half line.
pub fn gauss_laguerre(m: usize, alpha: f64) -> Result<Arc<Rule1D>> {
    if m < 1 || m > MAX_GLAG {
        return Err(Error::Range(alloc::format!(
            "gauss_laguerre size must lie in 1..={MAX_GLAG}, got {m}"
        )));
    }
    if alpha <= -1.0 {
        return Err(Error::Range("gauss_laguerre needs alpha > -1".into()));
    }
    cached(RuleKind::GaussLaguerre { m, alpha }, || {
        let mut d: Vec<f64> = (0..m).map(|i| 2.0 * i as f64 + alpha + 1.0).collect();
        let mut e: Vec<f64> = (1..m)
            .map(|i| fmath::sqrt(i as f64 * (i as f64 + alpha)))
            .collect();
        e.push(0.0);
        let mu0 = fmath::exp(fmath::ln_gamma(alpha + 1.0));
        let (nodes, weights) = golub_welsch(&mut d, &mut e, mu0)?;
        Ok(Rule1D {
            kind: RuleKind::GaussLaguerre { m, alpha },
            nodes,
            weights,
        })
    })
}

/// `m`-point Gauss rule on `[lo, hi]`.
pub fn gauss_legendre(m: usize, lo: f64, hi: f64) -> Result<Arc<Rule1D>> {
    if m < 1 || m > MAX_GLAG {
        return Err(Error::Range(alloc::format!(
            "gauss_legendre size must lie in 1..={MAX_GLAG}, got {m}"
        )));
    }
    if !(lo < hi) {
        return Err(Error::Range("gauss_legendre needs lo < hi".into()));
    }
    cached(RuleKind::GaussLegendre { m, lo, hi }, || {
        let mut d = vec![0.0; m];
        let mut e: Vec<f64> = (1..m)
            .map(|i| {
                let i = i as f64;
                i / fmath::sqrt(4.0 * i * i - 1.0)
            })
            .collect();
        e.push(0.0);
        let (nodes, weights) = golub_welsch(&mut d, &mut e, 2.0)?;
        let (nodes, weights) = symmetrize(nodes, weights);
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        Ok(Rule1D {
            kind: RuleKind::GaussLegendre { m, lo, hi },
            nodes: nodes.iter().map(|x| mid + half * x).collect(),
            weights: weights.iter().map(|w| w * half).collect(),
        })
    })
}

/// Midpoint rule with `m` points on `[lo, hi]`.
pub fn uniform_periodic(m: usize, lo: f64, hi: f64) -> Result<Arc<Rule1D>> {
    if m < 1 {
        return Err(Error::Range("uniform rule needs at least one point".into()));
    }
    if !(lo < hi) {
        return Err(Error::Range("uniform rule needs lo < hi".into()));
    }
    cached(RuleKind::TruncatedUniform { m, lo, hi }, || {
        let h = (hi - lo) / m as f64;
        Ok(Rule1D {
            kind: RuleKind::TruncatedUniform { m, lo, hi },
            nodes: (0..m).map(|i| lo + (i as f64 + 0.5) * h).collect(),
            weights: vec![h; m],
        })
    })
}

/// QL with implicit shifts on a symmetric tridiagonal matrix, tracking only
/// the first row of the eigenvector matrix. Returns sorted nodes and weights
/// `mu0 * z_i^2`.
fn golub_welsch(d: &mut [f64], e: &mut [f64], mu0: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = d.len();
    let mut z = vec![0.0; n];
    z[0] = 1.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = fmath::abs(d[m]) + fmath::abs(d[m + 1]);
                if fmath::abs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 64 {
                return Err(Error::Accuracy {
                    context: "tridiagonal eigenvalue iteration".into(),
                    last: num_complex::Complex64::new(d[l], 0.0),
                    previous: num_complex::Complex64::new(e[l], 0.0),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = fmath::hypot(g, 1.0);
            let denom = g + if g >= 0.0 { r } else { -r };
            g = d[m] - d[l] + e[l] / denom;
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut broke = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = fmath::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    broke = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;

                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if broke {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap());
    let nodes: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let weights: Vec<f64> = order.iter().map(|&i| mu0 * z[i] * z[i]).collect();
    Ok((nodes, weights))
}

/// Enforce exact +/- symmetry for rules with an even weight.
fn symmetrize(mut nodes: Vec<f64>, mut weights: Vec<f64>) -> (Vec<f64>, Vec<f64>) {
    let n = nodes.len();
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = 0.5 * (nodes[j] - nodes[i]);
        nodes[i] = -x;
        nodes[j] = x;
        let w = 0.5 * (weights[i] + weights[j]);
        weights[i] = w;
        weights[j] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hermite_two_points() {
        let r = gauss_hermite(2).unwrap();
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        assert!((r.nodes[0] + inv_sqrt2).abs() < 1e-14);
        assert!((r.nodes[1] - inv_sqrt2).abs() < 1e-14);
        let half_sqrt_pi = fmath::SQRT_PI / 2.0;
        assert!((r.weights[0] - half_sqrt_pi).abs() < 1e-14);
        assert!((r.weights[1] - half_sqrt_pi).abs() < 1e-14);

        // int x^2 e^{-x^2} = sqrt(pi)/2
        let got: f64 = r
            .nodes
            .iter()
            .zip(&r.weights)
            .map(|(x, w)| w * x * x)
            .sum();
        assert!((got - half_sqrt_pi).abs() < 1e-14);
    }

    #[test]
    fn hermite_fourth_moment_with_three_points() {
        let r = gauss_hermite(3).unwrap();
        let got: f64 = r
            .nodes
            .iter()
            .zip(&r.weights)
            .map(|(x, w)| w * x.powi(4))
            .sum();
        let want = 3.0 * fmath::SQRT_PI / 4.0;
        assert!((got - want).abs() < 1e-13, "got {got}, want {want}");
    }

    #[test]
    fn hermite_weight_sums_and_monotone_nodes() {
        for m in [1usize, 2, 5, 16, 64, 128, 256, 512] {
            let r = gauss_hermite(m).unwrap();
            let sum: f64 = r.weights.iter().sum();
            assert!(
                (sum - fmath::SQRT_PI).abs() <= 1e-13 * fmath::SQRT_PI,
                "m={m}: weight sum {sum}"
            );
            // beyond m ~ 256 the extreme weights are below the f64 subnormal
            // range and round to +0, which the integrators tolerate
            for w in &r.weights {
                if m <= 256 {
                    assert!(*w > 0.0);
                } else {
                    assert!(*w >= 0.0);
                }
            }
            for i in 1..m {
                assert!(r.nodes[i] > r.nodes[i - 1]);
            }
        }
    }

    #[test]
    fn hermite_even_moments_to_degree_2m_minus_1() {
        for m in [4usize, 16, 64, 128] {
            let r = gauss_hermite(m).unwrap();
            let mut j = 0usize;
            while j <= 2 * m - 1 {
                // Gamma((j+1)/2), computed in logs to survive large j
                let want_ln = fmath::ln_gamma((j as f64 + 1.0) / 2.0);
                let got: f64 = r
                    .nodes
                    .iter()
                    .zip(&r.weights)
                    .map(|(x, w)| w * fmath::powi(x.abs(), j as i32))
                    .sum();
                let rel = (got.ln() - want_ln).abs();
                assert!(rel < 1e-12 * (1.0 + j as f64), "m={m} j={j}: ln ratio {rel}");
                j += 2;
            }
        }
    }

    #[test]
    fn laguerre_moments() {
        // int_0^infty x^j x^alpha e^{-x} dx = Gamma(j + alpha + 1)
        for (m, alpha) in [(8usize, 0.0), (16, 1.0), (32, 0.5)] {
            let r = gauss_laguerre(m, alpha).unwrap();
            let sum: f64 = r.weights.iter().sum();
            let mu0 = fmath::exp(fmath::ln_gamma(alpha + 1.0));
            assert!((sum - mu0).abs() < 1e-12 * mu0);
            for j in 0..(2 * m) {
                let want = fmath::exp(fmath::ln_gamma(j as f64 + alpha + 1.0));
                let got: f64 = r
                    .nodes
                    .iter()
                    .zip(&r.weights)
                    .map(|(x, w)| w * fmath::powi(*x, j as i32))
                    .sum();
                assert!(
                    (got - want).abs() < 1e-11 * want,
                    "m={m} alpha={alpha} j={j}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn legendre_moments() {
        let r = gauss_legendre(12, -1.0, 3.0).unwrap();
        for j in 0..20usize {
            let want = (3.0f64.powi(j as i32 + 1) - (-1.0f64).powi(j as i32 + 1)) / (j as f64 + 1.0);
            let got: f64 = r
                .nodes
                .iter()
                .zip(&r.weights)
                .map(|(x, w)| w * x.powi(j as i32))
                .sum();
            assert!((got - want).abs() < 1e-12 * want.abs().max(1.0));
        }
    }

    #[test]
    fn uniform_periodic_full_period() {
        // trapezoid-grade rule is spectrally accurate on periodic integrands
        let r = uniform_periodic(32, 0.0, fmath::TAU).unwrap();
        let got: f64 = r
            .nodes
            .iter()
            .zip(&r.weights)
            .map(|(x, w)| w * (3.0 * x.cos()).exp())
            .sum();
        // 2*pi*I_0(3)
        let want = fmath::TAU * 4.880_792_585_865_024;
        assert!((got - want).abs() < 1e-10 * want);
    }

    #[test]
    fn range_errors() {
        assert!(matches!(gauss_hermite(0), Err(Error::Range(_))));
        assert!(matches!(gauss_hermite(5000), Err(Error::Range(_))));
        assert!(matches!(gauss_laguerre(4, -1.5), Err(Error::Range(_))));
    }

    #[test]
    fn cache_returns_same_rule() {
        let a = gauss_hermite(17).unwrap();
        let b = gauss_hermite(17).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }

    proptest! {
        // random polynomials of degree <= 2m-1 are integrated to rel err 1e-11
        #[test]
        fn polynomial_exactness(m in 2usize..24, coeffs in proptest::collection::vec(-1.0f64..1.0, 1..16)) {
            let deg = (coeffs.len() - 1).min(2 * m - 1);
            let r = gauss_hermite(m).unwrap();
            let got: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| {
                let mut p = 0.0;
                for c in coeffs[..=deg].iter().rev() {
                    p = p * x + c;
                }
                w * p
            }).sum();
            let mut want = 0.0;
            for (j, c) in coeffs[..=deg].iter().enumerate() {
                if j % 2 == 0 {
                    want += c * fmath::exp(fmath::ln_gamma((j as f64 + 1.0) / 2.0));
                }
            }
            let scale: f64 = coeffs[..=deg]
                .iter()
                .enumerate()
                .map(|(j, c)| (c * fmath::exp(fmath::ln_gamma((j as f64 + 1.0) / 2.0))).abs())
                .sum::<f64>()
                .max(1e-30);
            prop_assert!((got - want).abs() <= 1e-11 * scale);
        }
    }
}
