//! Sequence reports and the boundedness verdict heuristic.
//!
//! The verdict is a numerical heuristic over finitely many terms, not a proof
//! of operator boundedness: the tail of `|value_k|` is fitted by
//! `C * k^p * rho^k` and classified by where `(rho, p)` lands relative to a
//! dead band `delta` (0.02 by default). `delta` is a tool parameter with no
//! externally given value; it is chosen so that cleanly geometric sequences
//! with ratio outside `[0.98, 1.02]` classify decisively.

use crate::fmath;
use crate::{Error, Result};
use alloc::vec::Vec;
use num_complex::Complex64;

pub const DEFAULT_DELTA: f64 = 0.02;

/// Minimum number of entries the tail fit needs.
pub const MIN_ENTRIES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Bounded,
    Unbounded,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Bounded => "Bounded",
            Verdict::Unbounded => "Unbounded",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

/// Fitted tail model of a sequence.
#[derive(Clone, Copy, Debug)]
pub struct TailFit {
    /// Geometric ratio `rho` of `|value_k|` over the fitted window.
    pub ratio: f64,
    /// Polynomial exponent `p`.
    pub power: f64,
}

/// A computed sequence `k -> value` with its boundedness verdict and tail
/// diagnostics.
#[derive(Clone, Debug)]
pub struct SequenceReport {
    pub entries: Vec<(u32, Complex64)>,
    pub sup_abs: f64,
    pub verdict: Verdict,
    pub tail_ratio: f64,
    pub tail_power: f64,
}

impl SequenceReport {
    /// Build a report from entries, classifying with the default dead band.
    pub fn from_entries(entries: Vec<(u32, Complex64)>) -> Result<Self> {
        Self::from_entries_with_delta(entries, DEFAULT_DELTA)
    }

    pub fn from_entries_with_delta(entries: Vec<(u32, Complex64)>, delta: f64) -> Result<Self> {
        let values: Vec<Complex64> = entries.iter().map(|&(_, v)| v).collect();
        let (verdict, fit) = classify_verdict_with_delta(&values, delta)?;
        let sup_abs = values.iter().fold(0.0f64, |m, v| m.max(v.norm()));
        Ok(Self {
            entries,
            sup_abs,
            verdict,
            tail_ratio: fit.ratio,
            tail_power: fit.power,
        })
    }
}

/// Classify a sequence with the default dead band.
pub fn classify_verdict(values: &[Complex64]) -> Result<(Verdict, TailFit)> {
    classify_verdict_with_delta(values, DEFAULT_DELTA)
}

/// Fit `|value_k| ~ C * k^p * rho^k` on the last third of the entries and
/// classify. Requires at least [`MIN_ENTRIES`] values.
pub fn classify_verdict_with_delta(values: &[Complex64], delta: f64) -> Result<(Verdict, TailFit)> {
    if values.len() < MIN_ENTRIES {
        return Err(Error::InsufficientData(alloc::format!(
            "classification needs at least {MIN_ENTRIES} entries, got {}",
            values.len()
        )));
    }
    let start = values.len() - values.len() / 3;
    let tail = &values[start..];

    if tail.iter().all(|v| v.norm() == 0.0) {
        return Ok((
            Verdict::Bounded,
            TailFit {
                ratio: 0.0,
                power: 0.0,
            },
        ));
    }

    // Least squares for ln|a_k| = c + p ln k + (ln rho) k, variables centred
    // for conditioning.
    let m = tail.len() as f64;
    let mut su = 0.0;
    let mut sw = 0.0;
    let mut sy = 0.0;
    let pts: Vec<(f64, f64, f64)> = tail
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let k = (start + i) as f64;
            let a = v.norm().max(1e-300);
            (fmath::ln(k), k, fmath::ln(a))
        })
        .collect();
    for &(u, w, y) in &pts {
        su += u;
        sw += w;
        sy += y;
    }
    let (mu, mw, my) = (su / m, sw / m, sy / m);
    let (mut suu, mut sww, mut suw, mut suy, mut swy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(u, w, y) in &pts {
        let (du, dw, dy) = (u - mu, w - mw, y - my);
        suu += du * du;
        sww += dw * dw;
        suw += du * dw;
        suy += du * dy;
        swy += dw * dy;
    }
    let det = suu * sww - suw * suw;
    let (power, log_ratio) = if det.abs() < 1e-14 * suu.max(sww).max(1.0) {
        // degenerate window; fall back to a pure geometric fit
        (0.0, if sww > 0.0 { swy / sww } else { 0.0 })
    } else {
        ((sww * suy - suw * swy) / det, (suu * swy - suw * suy) / det)
    };
    let ratio = fmath::exp(log_ratio);

    let verdict = if ratio < 1.0 - delta || ((ratio - 1.0).abs() <= delta && power <= delta) {
        Verdict::Bounded
    } else if ratio > 1.0 + delta || ((ratio - 1.0).abs() <= delta && power > 2.0 * delta) {
        Verdict::Unbounded
    } else {
        Verdict::Inconclusive
    };

    Ok((verdict, TailFit { ratio, power }))
}
