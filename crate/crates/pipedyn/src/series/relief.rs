//! Line with a constant incline, initially at uniform pressure, leaking at `ell`.

use serde::{Deserialize, Serialize};

use super::Pipe;
use crate::error::{ensure, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReliefLine {
    pub pipe: Pipe,
    pub p_h: f64,
    pub g_ut: f64,
    pub ell: f64,
    pub sin_alpha: f64,
    pub gravity: f64,
}

/// Exponential and spatial rates induced by the incline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReliefDerived {
    pub lambda1: f64,
    pub lambda2: f64,
}

impl ReliefDerived {
    pub fn new(s: &ReliefLine) -> Self {
        let c2 = s.pipe.c * s.pipe.c;
        let gs = s.gravity * s.sin_alpha;
        Self { lambda1: -gs * gs / (s.pipe.two_a * 4.0 * c2), lambda2: -gs / (2.0 * c2) }
    }
}

/// P_H − (c²G/L)·e^{λ₂(ℓ−x)}·A(t) with A(t) = t/2 + (e^{−λ₁t} − 1)/(−2λ₁).
///
/// A(t) tends to t as the incline vanishes, which recovers the uniform drain
/// P_H − c²G·t/L of a flat closed line.
pub fn relief_field(s: &ReliefLine, x: f64, t: f64) -> Result<f64> {
    ensure(t >= 0.0, || "t must be nonnegative".into())?;
    ensure((0.0..=s.pipe.length).contains(&x), || format!("x = {x} outside the line"))?;
    ensure(s.sin_alpha.abs() < 1.0, || "|sin_alpha| must be below 1".into())?;
    let d = ReliefDerived::new(s);
    let mu = -d.lambda1;
    let growth = if mu == 0.0 { t } else { (mu * t).exp_m1() / mu };
    let a = 0.5 * (t + growth);
    let c2 = s.pipe.c * s.pipe.c;
    Ok(s.p_h - c2 * s.g_ut / s.pipe.length * (d.lambda2 * (s.ell - x)).exp() * a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(sin_alpha: f64) -> ReliefLine {
        ReliefLine { pipe: Pipe::new(3e4, 383.3, 0.1), p_h: 14e4, g_ut: 10.0, ell: 5e3, sin_alpha, gravity: 9.81 }
    }

    #[test]
    fn rates_are_nonpositive_for_ascent() {
        let d = ReliefDerived::new(&line(2.0f64.sin()));
        assert!(d.lambda1 < 0.0 && d.lambda2 < 0.0);
    }

    #[test]
    fn flat_limit_is_uniform_drain() {
        let s = line(0.0);
        let p = relief_field(&s, 12000.0, 300.0).unwrap();
        let flat = 14e4 - 383.3f64.powi(2) * 10.0 * 300.0 / 3e4;
        assert!((p - flat).abs() <= 1e-9 * flat);
    }

    #[test]
    fn first_table_cell() {
        let p = relief_field(&line(2.0f64.sin()), 0.0, 50.0).unwrap();
        assert!((p / 1e4 - 13.85).abs() < 0.02 * 13.85, "{p}");
    }
}
