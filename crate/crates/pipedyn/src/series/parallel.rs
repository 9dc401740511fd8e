//! Two-line parallel pipeline during an emergency: end-section history,
//! valve closing time and the empirical decay law fitted to it.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{sign, sum_series, Pipe};
use crate::error::{ensure, Error, Result};
use crate::model::SeriesControl;

/// Parallel line with a leak between the valve at `ell` and the connector at
/// `ell1`, and an exponential pressure decay at rate `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmergencyParallel {
    pub pipe: Pipe,
    pub p_start: f64,
    pub g0: f64,
    pub g_ut: f64,
    pub ell: f64,
    pub ell1: f64,
    pub beta: f64,
    pub gravity: f64,
    /// Valve closing time; leak and decay terms are frozen after it.
    pub t1: Option<f64>,
    pub series: SeriesControl,
}

impl EmergencyParallel {
    fn validate(&self) -> Result<()> {
        ensure(self.beta > 0.0, || format!("beta must be positive, got {}", self.beta))?;
        ensure(self.ell > 0.0 && self.ell1 > 0.0, || "ell and ell1 must be positive".into())?;
        ensure(self.gravity > 0.0, || "g must be positive".into())
    }
}

/// Pressure in the damaged parallel line. The same expression serves both
/// sides of the leak coordinate.
pub fn parallel_emergency_field(s: &EmergencyParallel, x: f64, t: f64) -> Result<f64> {
    s.validate()?;
    ensure(t >= 0.0, || format!("t must be nonnegative, got {t}"))?;
    ensure((0.0..=s.pipe.length).contains(&x), || format!("x = {x} outside the line"))?;
    let c2 = s.pipe.c * s.pipe.c;
    let two_a = s.pipe.two_a;
    let (ell, ell1, beta, g) = (s.ell, s.ell1, s.beta, s.gravity);
    let alpha = s.pipe.decay(ell);
    let alpha1 = s.pipe.decay(ell1) / 4.0;
    let tw = s.t1.map_or(t, |t1| t.min(t1));

    let mut p = s.p_start - two_a * s.g0 * x + c2 * s.g0 * t / ell;
    p += 2.0 * c2 * s.g0 / ell
        * sum_series(&s.series, |n| {
            let an = alpha * n * n;
            sign(n) * (PI * n * x / ell).cos() * (1.0 - (-an * t).exp()) / an
        });

    p -= s.p_start * c2 / (g * ell) * (1.0 - (-beta * tw).exp());
    p -= 2.0 * s.p_start * c2 * beta / (g * ell)
        * sum_series(&s.series, |n| {
            let an = alpha * n * n;
            sign(n) * (PI * n * x / ell).cos() * ((-beta * tw).exp() - (-an * tw).exp()) / (an - beta)
        });

    let leak_modes = sum_series(&s.series, |n| {
        let m = 2.0 * n - 1.0;
        let am = alpha1 * m * m;
        (-sign(n) - 1.0) * (PI * x * m / (2.0 * ell1)).sin() * (-am * tw).exp() / am
    });
    p -= two_a * s.g_ut * ((ell1 - x) + c2 / (two_a * ell1) * leak_modes);
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValveTiming {
    pub t1: f64,
    /// Fractional stationary-pressure drop at the valve when it closes.
    pub calibration_indicator: f64,
}

/// Valve operating time from the closed-form drop criterion, with the
/// indicator read off the emergency field at the valve.
#[allow(clippy::too_many_arguments)]
pub fn valve_closing_time(
    p_start: f64,
    g0: f64,
    two_a: f64,
    ell: f64,
    beta: f64,
    c: f64,
    g: f64,
    drop_fraction: f64,
    field: Option<&EmergencyParallel>,
) -> Result<ValveTiming> {
    ensure(drop_fraction > 0.0 && drop_fraction < 1.0, || {
        format!("drop fraction must lie in (0, 1), got {drop_fraction}")
    })?;
    let denom = 3.0 * c * c * (p_start * beta / g - g0);
    if denom == 0.0 {
        return Err(Error::Singular("P1*beta/g equals G0".into()));
    }
    let t1 = drop_fraction * ell * (p_start - two_a * g0 * ell) / denom;
    if t1 < 0.0 {
        return Err(Error::infeasible(format!("negative closing time {t1}")));
    }
    let calibration_indicator = match field {
        Some(s) => {
            let x = ell.min(s.pipe.length);
            let p0 = s.p_start - s.pipe.two_a * s.g0 * x;
            1.0 - parallel_emergency_field(s, x, t1)? / p0
        }
        None => f64::NAN,
    };
    Ok(ValveTiming { t1, calibration_indicator })
}

/// First time the emergency field at the valve has lost `drop_fraction` of its
/// stationary value, scanned at 1 s resolution.
pub fn closing_time_by_threshold(s: &EmergencyParallel, drop_fraction: f64, t_max: f64) -> Result<Option<f64>> {
    let x = s.ell.min(s.pipe.length);
    let p0 = s.p_start - s.pipe.two_a * s.g0 * x;
    let target = (1.0 - drop_fraction) * p0;
    let steps = t_max.ceil() as usize;
    for k in 1..=steps {
        let t = k as f64;
        if parallel_emergency_field(s, x, t)? <= target {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Outcome of fitting one multiplicative factor to the closed-form closing
/// time against observed (beta, ell, t1) rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosingTimeCalibration {
    pub scale: f64,
    pub max_rel_residual: f64,
    pub predicted: Vec<f64>,
}

pub fn calibrate_closing_time(
    p_start: f64,
    g0: f64,
    two_a: f64,
    c: f64,
    g: f64,
    drop_fraction: f64,
    rows: &[(f64, f64, f64)],
) -> Result<ClosingTimeCalibration> {
    let raw = rows
        .iter()
        .map(|&(beta, ell, _)| {
            valve_closing_time(p_start, g0, two_a, ell, beta, c, g, drop_fraction, None).map(|v| v.t1)
        })
        .collect::<Result<Vec<_>>>()?;
    // least squares in relative terms: minimise Σ(k·raw/obs − 1)²
    let (num, den) = rows.iter().zip(&raw).fold((0.0, 0.0), |(n, d), (&(_, _, obs), &r)| {
        let q = r / obs;
        (n + q, d + q * q)
    });
    ensure(den > 0.0, || "no usable calibration rows".into())?;
    let scale = num / den;
    let predicted: Vec<f64> = raw.iter().map(|r| scale * r).collect();
    let max_rel_residual =
        rows.iter().zip(&predicted).map(|(&(_, _, obs), &p)| ((p - obs) / obs).abs()).fold(0.0, f64::max);
    Ok(ClosingTimeCalibration { scale, max_rel_residual, predicted })
}

/// Empirical end-section decay P(L,0)·(1.1 − G_ut/(10G₀))·exp(−(P₂/(1.3P₁))·β·t).
pub fn empirical_end_decay(p_l0: f64, gut_over_g0: f64, p2_over_p1: f64, beta: f64, t: f64) -> Result<f64> {
    ensure(beta > 0.0, || "beta must be positive".into())?;
    ensure((0.0..=2.0).contains(&gut_over_g0) && (0.0..=2.0).contains(&p2_over_p1), || {
        "ratios must lie in [0, 2]".into()
    })?;
    let level = 1.1 - gut_over_g0 / 10.0;
    Ok(p_l0 * level * (-(p2_over_p1 / 1.3) * beta * t).exp())
}

/// β = (P₂/(P₁t₁))·ln(φ/ψ) with φ = 1 − P(L,t₁)/P(L,0) and ψ = 0.1(1 − G_ut/G₀).
pub fn decay_rate_from_observation(p_lt1: f64, p_l0: f64, gut_over_g0: f64, p1: f64, p2: f64, t1: f64) -> Result<f64> {
    ensure(t1 > 0.0, || "t1 must be positive".into())?;
    let phi = 1.0 - p_lt1 / p_l0;
    let psi = 0.1 * (1.0 - gut_over_g0);
    ensure(phi > 0.0, || "no observable decay (phi <= 0)".into())?;
    ensure(psi > 0.0, || "total leak (psi <= 0)".into())?;
    Ok(p2 / (p1 * t1) * (phi / psi).ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column(ell: f64, ell1: f64, beta: f64, ratio: f64) -> EmergencyParallel {
        EmergencyParallel {
            pipe: Pipe::new(1e5, 383.3, 0.1),
            p_start: 55e4,
            g0: 30.0,
            g_ut: ratio * 30.0,
            ell,
            ell1,
            beta,
            gravity: 9.81,
            t1: None,
            series: SeriesControl::terms(12),
        }
    }

    #[test]
    fn end_section_history_matches_worked_cells() {
        let s = column(3e4, 3.5e4, 0.9e-3, 0.1);
        let p = parallel_emergency_field(&s, 1e5, 250.0).unwrap();
        assert!((p / 1e4 - 24.87).abs() < 0.02 * 24.87, "{p}");
        let s = column(7e4, 7.5e4, 5.8e-3, 0.5);
        let p = parallel_emergency_field(&s, 1e5, 500.0).unwrap();
        assert!((p / 1e4 - 19.78).abs() < 0.02 * 19.78, "{p}");
    }

    #[test]
    fn decay_terms_freeze_after_valve_time() {
        let mut s = column(4e4, 4.5e4, 2.5e-3, 0.3);
        s.t1 = Some(200.0);
        let mut open = s;
        open.t1 = None;
        // only the stationary-inflow part keeps evolving after t1
        let d_frozen =
            parallel_emergency_field(&s, 1e5, 500.0).unwrap() - parallel_emergency_field(&s, 1e5, 400.0).unwrap();
        let d_open =
            parallel_emergency_field(&open, 1e5, 500.0).unwrap() - parallel_emergency_field(&open, 1e5, 400.0).unwrap();
        assert!(d_frozen > d_open);
    }

    #[test]
    fn rejects_bad_inputs() {
        let mut s = column(3e4, 3.5e4, 0.9e-3, 0.1);
        assert!(parallel_emergency_field(&s, 0.0, -1.0).is_err());
        s.beta = 0.0;
        assert!(parallel_emergency_field(&s, 0.0, 1.0).is_err());
    }

    #[test]
    fn empirical_decay_cells() {
        let p = empirical_end_decay(25e4, 0.1, 25.0 / 55.0, 1.3e-3, 250.0).unwrap();
        assert!((p / 1e4 - 24.33).abs() < 0.01, "{p}");
        let p = empirical_end_decay(25e4, 0.5, 25.0 / 55.0, 2.09e-3, 500.0).unwrap();
        assert!((p / 1e4 - 18.22).abs() < 0.05, "{p}");
    }

    #[test]
    fn closing_time_limits() {
        let v = valve_closing_time(55e4, 30.0, 0.1, 3e4, 0.0057, 383.3, 9.81, 1e-9, None).unwrap();
        assert!(v.t1 < 1e-6);
        let err = valve_closing_time(55e4, 0.0, 0.1, 3e4, 0.0, 383.3, 9.81, 0.2, None);
        assert!(matches!(err, Err(Error::Singular(_))));
    }

    #[test]
    fn decay_rate_domain() {
        assert!(decay_rate_from_observation(26e4, 25e4, 0.1, 55e4, 25e4, 100.0).is_err());
        assert!(decay_rate_from_observation(20e4, 25e4, 1.0, 55e4, 25e4, 100.0).is_err());
        let b = decay_rate_from_observation(18e4, 25e4, 0.1, 55e4, 25e4, 224.0).unwrap();
        assert!(b.is_finite() && b > 0.0);
    }
}
