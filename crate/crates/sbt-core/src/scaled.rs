//! Extended-exponent arithmetic.
//!
//! Laguerre values at negative arguments and the `e^{|y|^2+|v|^2}` factors in
//! the imaginary-argument Laguerre functions overflow `f64` long before the
//! quantities of interest (their products with heat kernels) do. A
//! [`ScaledValue`] carries a complex mantissa with `|m| in [1,2)` together
//! with a natural-log exponent, so products and sums across ~10^6 orders of
//! magnitude stay exact to rounding.

use crate::fmath;
use core::ops::{Add, Mul, Neg, Sub};
use num_complex::Complex64;

/// A number `mantissa * e^{log_scale}` with `|mantissa| in [1,2)` or zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledValue {
    mantissa: Complex64,
    log_scale: f64,
}

/// Below this gap the smaller addend cannot affect the larger one.
const ADD_CUTOFF: f64 = 800.0;

impl ScaledValue {
    pub const ZERO: ScaledValue = ScaledValue {
        mantissa: Complex64::new(0.0, 0.0),
        log_scale: 0.0,
    };

    pub const ONE: ScaledValue = ScaledValue {
        mantissa: Complex64::new(1.0, 0.0),
        log_scale: 0.0,
    };

    fn renormalized(m: Complex64, ls: f64) -> Self {
        let a = m.norm();
        if a == 0.0 {
            return Self::ZERO;
        }
        let e = fmath::floor(fmath::log2(a));
        if e == 0.0 {
            return Self {
                mantissa: m,
                log_scale: ls,
            };
        }
        let f = fmath::exp2(-e);
        Self {
            mantissa: m * f,
            log_scale: ls + e * fmath::LN_2,
        }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::renormalized(Complex64::new(x, 0.0), 0.0)
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::renormalized(z, 0.0)
    }

    /// `e^{log}` without ever forming the native float.
    pub fn exp_of(log: f64) -> Self {
        Self {
            mantissa: Complex64::new(1.0, 0.0),
            log_scale: log,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.norm() == 0.0
    }

    pub fn mantissa(&self) -> Complex64 {
        self.mantissa
    }

    pub fn log_scale(&self) -> f64 {
        self.log_scale
    }

    /// ln |value|; `-inf` for zero.
    pub fn abs_ln(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            fmath::ln(self.mantissa.norm()) + self.log_scale
        }
    }

    /// Multiply by `e^{log}`.
    pub fn scaled_by_exp(self, log: f64) -> Self {
        if self.is_zero() {
            return Self::ZERO;
        }
        Self {
            mantissa: self.mantissa,
            log_scale: self.log_scale + log,
        }
    }

    pub fn conj(self) -> Self {
        Self {
            mantissa: self.mantissa.conj(),
            log_scale: self.log_scale,
        }
    }

    /// Collapse to a native complex number. Values outside the `f64` range
    /// come back as signed infinities; `log_scale()` remains available to
    /// report the true magnitude.
    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        if self.log_scale > 705.0 {
            let part = |x: f64| -> f64 {
                if x == 0.0 {
                    0.0
                } else if x > 0.0 {
                    f64::INFINITY
                } else {
                    f64::NEG_INFINITY
                }
            };
            return Complex64::new(part(self.mantissa.re), part(self.mantissa.im));
        }
        self.mantissa * fmath::exp(self.log_scale)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_complex().re
    }
}

impl Mul for ScaledValue {
    type Output = ScaledValue;
    fn mul(self, rhs: ScaledValue) -> ScaledValue {
        if self.is_zero() || rhs.is_zero() {
            return ScaledValue::ZERO;
        }
        ScaledValue::renormalized(self.mantissa * rhs.mantissa, self.log_scale + rhs.log_scale)
    }
}

impl Mul<f64> for ScaledValue {
    type Output = ScaledValue;
    fn mul(self, rhs: f64) -> ScaledValue {
        ScaledValue::renormalized(self.mantissa * rhs, self.log_scale)
    }
}

impl Mul<Complex64> for ScaledValue {
    type Output = ScaledValue;
    fn mul(self, rhs: Complex64) -> ScaledValue {
        ScaledValue::renormalized(self.mantissa * rhs, self.log_scale)
    }
}

impl Add for ScaledValue {
    type Output = ScaledValue;
    fn add(self, rhs: ScaledValue) -> ScaledValue {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (hi, lo) = if self.log_scale >= rhs.log_scale {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let d = lo.log_scale - hi.log_scale;
        if d < -ADD_CUTOFF {
            return hi;
        }
        ScaledValue::renormalized(hi.mantissa + lo.mantissa * fmath::exp(d), hi.log_scale)
    }
}

impl Sub for ScaledValue {
    type Output = ScaledValue;
    fn sub(self, rhs: ScaledValue) -> ScaledValue {
        self + (-rhs)
    }
}

impl Neg for ScaledValue {
    type Output = ScaledValue;
    fn neg(self) -> ScaledValue {
        ScaledValue {
            mantissa: -self.mantissa,
            log_scale: self.log_scale,
        }
    }
}
