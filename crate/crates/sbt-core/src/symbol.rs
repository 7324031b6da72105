//! Symbol families, their decay metadata, and the text grammar.
//!
//! Symbols at the CLI boundary form a closed enum; library consumers can
//! additionally supply arbitrary radial profiles through [`RadialSymbol`]
//! with a caller-provided [`DecayBudget`].
//!
//! Grammar (exact):
//!
//! ```text
//! one
//! gauss-radial:a=<f>
//! poly-gauss-radial:p=<u>,a=<f>
//! annulus:r0=<f>,r1=<f>
//! gauss-yv:alpha=<c>,beta=<c>
//! gauss-y:a=<f>
//! gauss-h:c=<f>
//! group-gauss:b=<f>
//! ```
//!
//! where `<f>` is a decimal float, `<u>` a nonnegative integer and `<c>` a
//! complex number written `re+imi` (no whitespace), e.g. `-0.5+0.25i`.

use crate::fmath;
use crate::{Error, Result};
use alloc::format;
use alloc::string::{String, ToString};
use num_complex::Complex64;

/// Envelope `|g(x)| <= constant * max(1,|x|)^poly_degree * e^{gaussian_rate |x|^2}`.
///
/// The sign convention is `gaussian_rate < 0` for decay. Convergence guards
/// throughout the crate are expressed against this budget.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayBudget {
    pub gaussian_rate: f64,
    pub poly_degree: u32,
    pub constant: f64,
}

impl DecayBudget {
    pub fn new(gaussian_rate: f64, poly_degree: u32, constant: f64) -> Self {
        Self {
            gaussian_rate,
            poly_degree,
            constant,
        }
    }

    /// The envelope value at radius `r` (slack factor 1.01 included).
    pub fn bound(&self, r: f64) -> f64 {
        self.constant
            * fmath::powf(r.max(1.0), self.poly_degree as f64)
            * fmath::exp(self.gaussian_rate * r * r)
            * 1.01
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SymbolKind {
    /// Constant symbol 1.
    One,
    /// `e^{-a|z|^2/2}` on the plane, radial; requires `a > -1`.
    GaussRadial { a: f64 },
    /// `|z|^p e^{-a|z|^2/2}` with even `p`; requires `a > -1`.
    PolyGaussRadial { p: u32, a: f64 },
    /// Indicator of `r0 <= |z| <= r1`.
    Annulus { r0: f64, r1: f64 },
    /// `e^{alpha|y|^2 + beta|v|^2}` on the split plane.
    GaussYv { alpha: Complex64, beta: Complex64 },
    /// `e^{-a|y|^2}` depending on the imaginary slice only; requires `a > 0`.
    GaussY { a: f64 },
    /// Auxiliary radial profile `e^{-c(|y|^2+|v|^2)}`; requires `c > 1`.
    GaussH { c: f64 },
    /// Group symbol `g0(exp H) = e^{-bH^2}`; requires `b > 0`.
    GroupGauss { b: f64 },
}

/// A parsed, typed symbol with consistent decay metadata.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymbolSpec {
    kind: SymbolKind,
    decay: DecayBudget,
}

impl SymbolSpec {
    pub fn new(kind: SymbolKind) -> Result<Self> {
        let check_finite = |x: f64, name: &str| -> Result<()> {
            if x.is_finite() {
                Ok(())
            } else {
                Err(Error::Constraint(format!("{name} must be finite")))
            }
        };
        let decay = match kind {
            SymbolKind::One => DecayBudget::new(0.0, 0, 1.0),
            SymbolKind::GaussRadial { a } => {
                check_finite(a, "a")?;
                if a <= -1.0 {
                    return Err(Error::Constraint("a must exceed -1".into()));
                }
                DecayBudget::new(-a / 2.0, 0, 1.0)
            }
            SymbolKind::PolyGaussRadial { p, a } => {
                check_finite(a, "a")?;
                if p % 2 != 0 {
                    return Err(Error::Constraint("p must be even".into()));
                }
                if a <= -1.0 {
                    return Err(Error::Constraint("a must exceed -1".into()));
                }
                DecayBudget::new(-a / 2.0, p, 1.0)
            }
            SymbolKind::Annulus { r0, r1 } => {
                check_finite(r0, "r0")?;
                check_finite(r1, "r1")?;
                if !(0.0 <= r0 && r0 < r1) {
                    return Err(Error::Constraint("annulus radii must satisfy 0 <= r0 < r1".into()));
                }
                DecayBudget::new(0.0, 0, 1.0)
            }
            SymbolKind::GaussYv { alpha, beta } => {
                check_finite(alpha.re, "alpha")?;
                check_finite(alpha.im, "alpha")?;
                check_finite(beta.re, "beta")?;
                check_finite(beta.im, "beta")?;
                DecayBudget::new(alpha.re.max(beta.re), 0, 1.0)
            }
            SymbolKind::GaussY { a } => {
                check_finite(a, "a")?;
                if a <= 0.0 {
                    return Err(Error::Constraint("a must be positive".into()));
                }
                DecayBudget::new(-a, 0, 1.0)
            }
            SymbolKind::GaussH { c } => {
                check_finite(c, "c")?;
                if c <= 1.0 {
                    return Err(Error::Constraint("c must exceed 1".into()));
                }
                DecayBudget::new(-c, 0, 1.0)
            }
            SymbolKind::GroupGauss { b } => {
                check_finite(b, "b")?;
                if b <= 0.0 {
                    return Err(Error::Constraint("b must be positive".into()));
                }
                DecayBudget::new(-b, 0, 1.0)
            }
        };
        Ok(Self { kind, decay })
    }

    pub fn one() -> Self {
        Self::new(SymbolKind::One).unwrap()
    }

    pub fn gauss_radial(a: f64) -> Result<Self> {
        Self::new(SymbolKind::GaussRadial { a })
    }

    pub fn poly_gauss_radial(p: u32, a: f64) -> Result<Self> {
        Self::new(SymbolKind::PolyGaussRadial { p, a })
    }

    pub fn annulus(r0: f64, r1: f64) -> Result<Self> {
        Self::new(SymbolKind::Annulus { r0, r1 })
    }

    pub fn gauss_yv(alpha: Complex64, beta: Complex64) -> Result<Self> {
        Self::new(SymbolKind::GaussYv { alpha, beta })
    }

    pub fn gauss_y(a: f64) -> Result<Self> {
        Self::new(SymbolKind::GaussY { a })
    }

    pub fn gauss_h(c: f64) -> Result<Self> {
        Self::new(SymbolKind::GaussH { c })
    }

    pub fn group_gauss(b: f64) -> Result<Self> {
        Self::new(SymbolKind::GroupGauss { b })
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn decay(&self) -> DecayBudget {
        self.decay
    }

    /// Whether the symbol is a radial function on the plane `R^{2n}`.
    pub fn is_radial_plane(&self) -> bool {
        match self.kind {
            SymbolKind::One
            | SymbolKind::GaussRadial { .. }
            | SymbolKind::PolyGaussRadial { .. }
            | SymbolKind::Annulus { .. }
            | SymbolKind::GaussH { .. } => true,
            SymbolKind::GaussYv { alpha, beta } => alpha == beta,
            _ => false,
        }
    }

    /// View this symbol as a radial profile on the plane, if it is one.
    pub fn as_radial(&self) -> Result<RadialView> {
        if !self.is_radial_plane() {
            return Err(Error::Constraint(format!(
                "symbol {} is not radial on the plane",
                self.render()
            )));
        }
        Ok(RadialView { spec: *self })
    }

    /// Evaluate as a function on the split plane `(y, v)`.
    pub fn eval_plane(&self, y: &[f64], v: &[f64]) -> Complex64 {
        let r2: f64 = y.iter().chain(v.iter()).map(|x| x * x).sum();
        match self.kind {
            SymbolKind::One => Complex64::new(1.0, 0.0),
            SymbolKind::GaussRadial { a } => Complex64::new(fmath::exp(-a * r2 / 2.0), 0.0),
            SymbolKind::PolyGaussRadial { p, a } => Complex64::new(
                fmath::powf(r2, p as f64 / 2.0) * fmath::exp(-a * r2 / 2.0),
                0.0,
            ),
            SymbolKind::Annulus { r0, r1 } => {
                let r = fmath::sqrt(r2);
                Complex64::new(if r0 <= r && r <= r1 { 1.0 } else { 0.0 }, 0.0)
            }
            SymbolKind::GaussYv { alpha, beta } => {
                let y2: f64 = y.iter().map(|x| x * x).sum();
                let v2: f64 = v.iter().map(|x| x * x).sum();
                (alpha * y2 + beta * v2).exp()
            }
            SymbolKind::GaussY { a } => {
                let y2: f64 = y.iter().map(|x| x * x).sum();
                Complex64::new(fmath::exp(-a * y2), 0.0)
            }
            SymbolKind::GaussH { c } => Complex64::new(fmath::exp(-c * r2), 0.0),
            SymbolKind::GroupGauss { b } => Complex64::new(fmath::exp(-b * r2), 0.0),
        }
    }

    /// Evaluate a slice-dependent symbol on the `y`-slice.
    pub fn eval_y(&self, y: &[f64]) -> Complex64 {
        self.eval_plane(y, &[])
    }

    /// Exact inverse of [`parse_symbol`].
    pub fn render(&self) -> String {
        fn c(z: Complex64) -> String {
            if z.im.is_sign_negative() {
                format!("{}{}i", z.re, z.im)
            } else {
                format!("{}+{}i", z.re, z.im)
            }
        }
        match self.kind {
            SymbolKind::One => "one".to_string(),
            SymbolKind::GaussRadial { a } => format!("gauss-radial:a={a}"),
            SymbolKind::PolyGaussRadial { p, a } => format!("poly-gauss-radial:p={p},a={a}"),
            SymbolKind::Annulus { r0, r1 } => format!("annulus:r0={r0},r1={r1}"),
            SymbolKind::GaussYv { alpha, beta } => {
                format!("gauss-yv:alpha={},beta={}", c(alpha), c(beta))
            }
            SymbolKind::GaussY { a } => format!("gauss-y:a={a}"),
            SymbolKind::GaussH { c } => format!("gauss-h:c={c}"),
            SymbolKind::GroupGauss { b } => format!("group-gauss:b={b}"),
        }
    }
}

/// A radial integrand with decay metadata. Implemented by [`RadialView`] for
/// builtin symbols and by [`CustomRadial`] for caller-supplied profiles.
pub trait RadialSymbol {
    fn eval(&self, r: f64) -> Complex64;
    fn budget(&self) -> DecayBudget;
    /// Compact support, when the profile has one.
    fn support(&self) -> Option<(f64, f64)> {
        None
    }
}

/// Radial view of a builtin [`SymbolSpec`].
#[derive(Clone, Copy, Debug)]
pub struct RadialView {
    spec: SymbolSpec,
}

impl RadialSymbol for RadialView {
    fn eval(&self, r: f64) -> Complex64 {
        self.spec.eval_plane(&[r], &[])
    }

    fn budget(&self) -> DecayBudget {
        self.spec.decay()
    }

    fn support(&self) -> Option<(f64, f64)> {
        match self.spec.kind {
            SymbolKind::Annulus { r0, r1 } => Some((r0, r1)),
            _ => None,
        }
    }
}

/// Arbitrary radial profile with a caller-provided budget.
pub struct CustomRadial<F: Fn(f64) -> Complex64> {
    pub f: F,
    pub budget: DecayBudget,
    pub support: Option<(f64, f64)>,
}

impl<F: Fn(f64) -> Complex64> RadialSymbol for CustomRadial<F> {
    fn eval(&self, r: f64) -> Complex64 {
        (self.f)(r)
    }

    fn budget(&self) -> DecayBudget {
        self.budget
    }

    fn support(&self) -> Option<(f64, f64)> {
        self.support
    }
}

fn parse_f64(tok: &str) -> Result<f64> {
    tok.parse::<f64>()
        .map_err(|_| Error::Parse(format!("expected a float, found `{tok}`")))
}

fn parse_u32(tok: &str) -> Result<u32> {
    tok.parse::<u32>()
        .map_err(|_| Error::Parse(format!("expected a nonnegative integer, found `{tok}`")))
}

/// Parse `re+imi` (e.g. `-0.5+0.25i`, `2-1i`).
fn parse_complex(tok: &str) -> Result<Complex64> {
    let body = tok
        .strip_suffix('i')
        .ok_or_else(|| Error::Parse(format!("complex value `{tok}` must end in `i`")))?;
    let bytes = body.as_bytes();
    let mut split = None;
    for i in 1..bytes.len() {
        let c = bytes[i];
        if (c == b'+' || c == b'-') && bytes[i - 1] != b'e' && bytes[i - 1] != b'E' {
            split = Some(i);
        }
    }
    let i = split.ok_or_else(|| Error::Parse(format!("complex value `{tok}` must be re+imi")))?;
    let re = parse_f64(&body[..i])?;
    let im = parse_f64(&body[i..])?;
    Ok(Complex64::new(re, im))
}

/// Expect `key=value` and return the value.
fn expect_kv<'a>(part: &'a str, key: &str) -> Result<&'a str> {
    match part.split_once('=') {
        Some((k, v)) if k == key => Ok(v),
        _ => Err(Error::Parse(format!("expected `{key}=<value>`, found `{part}`"))),
    }
}

/// Parse a symbol from the grammar in the module docs.
pub fn parse_symbol(text: &str) -> Result<SymbolSpec> {
    if text == "one" {
        return SymbolSpec::new(SymbolKind::One);
    }
    let (head, rest) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("unknown symbol `{text}`")))?;
    let parts: alloc::vec::Vec<&str> = rest.split(',').collect();
    let expect_arity = |want: usize| -> Result<()> {
        if parts.len() == want {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "`{head}` takes {want} parameter(s), found {}",
                parts.len()
            )))
        }
    };
    let kind = match head {
        "gauss-radial" => {
            expect_arity(1)?;
            SymbolKind::GaussRadial {
                a: parse_f64(expect_kv(parts[0], "a")?)?,
            }
        }
        "poly-gauss-radial" => {
            expect_arity(2)?;
            SymbolKind::PolyGaussRadial {
                p: parse_u32(expect_kv(parts[0], "p")?)?,
                a: parse_f64(expect_kv(parts[1], "a")?)?,
            }
        }
        "annulus" => {
            expect_arity(2)?;
            SymbolKind::Annulus {
                r0: parse_f64(expect_kv(parts[0], "r0")?)?,
                r1: parse_f64(expect_kv(parts[1], "r1")?)?,
            }
        }
        "gauss-yv" => {
            expect_arity(2)?;
            SymbolKind::GaussYv {
                alpha: parse_complex(expect_kv(parts[0], "alpha")?)?,
                beta: parse_complex(expect_kv(parts[1], "beta")?)?,
            }
        }
        "gauss-y" => {
            expect_arity(1)?;
            SymbolKind::GaussY {
                a: parse_f64(expect_kv(parts[0], "a")?)?,
            }
        }
        "gauss-h" => {
            expect_arity(1)?;
            SymbolKind::GaussH {
                c: parse_f64(expect_kv(parts[0], "c")?)?,
            }
        }
        "group-gauss" => {
            expect_arity(1)?;
            SymbolKind::GroupGauss {
                b: parse_f64(expect_kv(parts[0], "b")?)?,
            }
        }
        _ => return Err(Error::Parse(format!("unknown symbol family `{head}`"))),
    };
    SymbolSpec::new(kind)
}
