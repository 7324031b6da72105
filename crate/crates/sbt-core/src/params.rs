use crate::{Error, Result};

/// Ambient complex dimension `n` and semigroup time `t` selecting which
/// Bergman-type space is in play.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpaceParams {
    n: u32,
    t: f64,
}

impl SpaceParams {
    pub fn new(n: u32, t: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::Constraint("dimension n must be at least 1".into()));
        }
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Constraint("time t must be positive and finite".into()));
        }
        Ok(Self { n, t })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Real dimension of the underlying plane `R^{2n}`.
    pub fn plane_dim(&self) -> usize {
        2 * self.n as usize
    }
}
