//! Single damaged line before and after the sectioning valves close, and the
//! steady state that settles once the connectors are in service.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{sign, sum_series, Pipe};
use crate::error::{ensure, Error, Result};
use crate::model::{LeakEvent, SeriesControl};

/// Line metered at both ends (inflow = outflow = G₀) with one leak.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PreClosure {
    pub pipe: Pipe,
    pub p_start: f64,
    pub g0: f64,
    pub leak: LeakEvent,
    pub series: SeriesControl,
}

impl PreClosure {
    pub fn p_end(&self) -> f64 {
        self.p_start - self.pipe.two_a * self.g0 * self.pipe.length
    }
}

/// Open-valve field of the leaking line. The x ≥ ℓ₂ branch shares the
/// series with the upstream branch and differs by the leak's kink only.
pub fn pre_closure_field(s: &PreClosure, x: f64, t: f64) -> Result<f64> {
    let l = s.pipe.length;
    let ell2 = s.leak.ell2;
    if ell2 <= 0.0 || ell2 >= l {
        return Err(Error::infeasible("leak at a line end collides with the boundary condition"));
    }
    ensure((0.0..=l).contains(&x), || format!("x = {x} outside the line"))?;
    ensure(t >= 0.0, || "t must be nonnegative".into())?;
    let two_a = s.pipe.two_a;
    let c2 = s.pipe.c * s.pipe.c;
    let g = s.leak.g_ut;
    let te = (t - s.leak.onset).max(0.0);
    let alpha = s.pipe.decay(l);
    let modes = sum_series(&s.series, |n| {
        (PI * n * x / l).cos() * (PI * n * ell2 / l).cos() * (-n * n * alpha * te).exp() / (n * n)
    });
    Ok(s.p_start
        - two_a * s.g0 * x
        - c2 * te * g / l
        - two_a * g * (x * x / (2.0 * l) + ell2 * ell2 / (2.0 * l) + l / 3.0 - x.max(ell2))
        + 2.0 * two_a * l / (PI * PI) * g * modes)
}

/// Snapshot of the damaged line when the valves at ℓ₁ and ℓ₃ close.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionState {
    pub pipe: Pipe,
    pub ell1: f64,
    pub ell2: f64,
    pub ell3: f64,
    pub t1: f64,
    /// P(x, t₁) samples, interpolated linearly between points.
    pub snapshot: Vec<(f64, f64)>,
    pub dp_start: f64,
    pub dp_end: f64,
    pub g0: f64,
    pub g_s: f64,
    pub g_ut: f64,
    pub series: SeriesControl,
}

impl SectionState {
    pub fn validate(&self) -> Result<()> {
        let l = self.pipe.length;
        ensure(0.0 < self.ell1 && self.ell1 < self.ell2 && self.ell2 < self.ell3 && self.ell3 < l, || {
            "section endpoints must satisfy 0 < l1 < l2 < l3 < L".into()
        })?;
        ensure(self.snapshot.len() >= 2, || "snapshot needs at least two points".into())?;
        ensure(self.snapshot.iter().all(|p| p.1 > 0.0), || "snapshot pressures must be positive".into())?;
        ensure(self.snapshot.windows(2).all(|w| w[0].0 < w[1].0), || "snapshot coordinates must increase".into())
    }

    pub fn snapshot_at(&self, x: f64) -> f64 {
        let pts = &self.snapshot;
        if x <= pts[0].0 {
            return pts[0].1;
        }
        for w in pts.windows(2) {
            let ((x0, p0), (x1, p1)) = (w[0], w[1]);
            if x <= x1 {
                return p0 + (p1 - p0) * (x - x0) / (x1 - x0);
            }
        }
        pts[pts.len() - 1].1
    }

    /// Flux each section boundary actually carries after closure: the metered
    /// flux corrected by the snapshot gradient.
    pub fn effective_inflow(&self) -> f64 {
        self.g0 + self.dp_start / self.pipe.two_a
    }
    pub fn effective_outflow(&self) -> f64 {
        self.g_s + self.dp_end / self.pipe.two_a
    }
}

/// Pressure in section 1 (filling), 2 (leak-driven emptying) or 3
/// (consumer-driven emptying) after the valves close at t₁.
pub fn post_closure_field(state: &SectionState, section: u8, x: f64, t: f64) -> Result<f64> {
    state.validate()?;
    let t1 = state.t1;
    ensure(t >= t1, || format!("t = {t} precedes the closing time {t1}"))?;
    let (l, l1, l2, l3) = (state.pipe.length, state.ell1, state.ell2, state.ell3);
    let range = match section {
        1 => (0.0, l1),
        2 => (l1, l3),
        3 => (l3, l),
        _ => return Err(Error::domain(format!("no section {section}"))),
    };
    ensure((range.0..=range.1).contains(&x), || {
        format!("x = {x} outside section {section} [{}, {}]", range.0, range.1)
    })?;
    let a = t - t1;
    let c2 = state.pipe.c * state.pipe.c;
    let two_a = state.pipe.two_a;
    let ctrl = &state.series;
    let snap = state.snapshot_at(x);
    let p = match section {
        1 => {
            let alpha = state.pipe.decay(l1);
            let fill = sum_series(ctrl, |n| {
                let an = alpha * n * n;
                (PI * n * x / l1).cos() * -(-an * a).exp_m1() / an
            });
            let grad = sum_series(ctrl, |n| {
                let an = alpha * n * n;
                (PI * n * x / l1).cos() * ((-an * t1).exp() - (-an * t).exp()) / an
            });
            snap + c2 / l1 * state.g0 * (a + 2.0 * fill) + c2 / (two_a * l1) * state.dp_start * (a + 2.0 * grad)
        }
        2 => {
            let len = l3 - l1;
            let alpha = state.pipe.decay(len);
            let drain = sum_series(ctrl, |n| {
                let an = alpha * n * n;
                sign(n) * (PI * n * (l2 - l3) / len).cos() * (PI * n * (x - l1) / len).cos() * -(-an * a).exp_m1() / an
            });
            snap - c2 / len * state.g_ut * (a + 2.0 * drain)
        }
        _ => {
            let len = l - l3;
            let alpha = state.pipe.decay(len);
            let drain = sum_series(ctrl, |n| {
                let an = alpha * n * n;
                sign(n) * (PI * n * (x - l3) / len).cos() * -(-an * a).exp_m1() / an
            });
            let grad = sum_series(ctrl, |n| {
                let an = alpha * n * n;
                sign(n) * (PI * n * (x - l3) / len).cos() * ((-an * t1).exp() - (-an * t).exp()) / an
            });
            snap - c2 / len * state.g_s * (a + 2.0 * drain) - c2 / (two_a * len) * state.dp_end * (a + 2.0 * grad)
        }
    };
    Ok(p)
}

/// Gas that must escape from the isolated section, −((ℓ₃−ℓ₁)/c²)·ΔP̃₂(ℓ₃).
pub fn emptied_section_mass(ell1: f64, ell3: f64, c: f64, dp2_at_ell3: f64) -> Result<f64> {
    ensure(ell3 > ell1, || "ell3 must exceed ell1".into())?;
    ensure(c > 0.0, || "c must be positive".into())?;
    Ok(-((ell3 - ell1) / (c * c)) * dp2_at_ell3)
}

/// Inflow at ℓ₁ and offtake at ℓ₃ after the connectors open.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfluxDischarge {
    pub length: f64,
    pub two_a: f64,
    pub g0: f64,
    pub p_start: f64,
    pub ell1: f64,
    pub ell3: f64,
    /// Transient pressures at t₂ at the two tie-in points.
    pub p_ell1_t2: f64,
    pub p_ell3_t2: f64,
    /// Stationary pressures there before the transition.
    pub p_ell1_0: f64,
    pub p_ell3_0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfluxSection {
    I,
    II,
    III,
}

/// Newly established piecewise-affine steady profile.
pub fn influx_discharge_new_steady(s: &InfluxDischarge, x: f64, section: InfluxSection) -> Result<f64> {
    let (l, l1, l3) = (s.length, s.ell1, s.ell3);
    ensure(0.0 < l1 && l1 < l3 && l3 < l, || "need 0 < l1 < l3 < L".into())?;
    let range = match section {
        InfluxSection::I => (0.0, l1),
        InfluxSection::II => (l1, l3),
        InfluxSection::III => (l3, l),
    };
    ensure((range.0..=range.1).contains(&x), || format!("x = {x} outside section {section:?}"))?;
    let ta = s.two_a;
    let g0 = s.g0;
    let alpha = (l / (l + 3.0 * (l - l3))).sqrt();
    let k = ta * g0 * (alpha - 1.0);
    let den = 2.0 * l + l1 - l3;
    let d1 = s.p_ell1_t2 - s.p_ell1_0;
    let d3 = s.p_ell3_t2 - s.p_ell3_0;
    let handoff = l1 * d1 / den + (l - l3) * d3 / den;
    let base = s.p_start - ta * g0 * x;
    Ok(match section {
        InfluxSection::I => {
            base - k * (x - l1)
                + 2.0 * k * (l - l3) * (l3 - l1) / den
                + k * ((l - l1).powi(2) - l1 * l1) / den
                + handoff
        }
        InfluxSection::II => {
            base - 2.0 * k / den * (l1 * (x - l1) - (l - l3) * (l3 - x) + x * x / 2.0 - (l - x).powi(2) / 2.0) + handoff
        }
        InfluxSection::III => {
            base - k * (x - l3) - 2.0 * k / den * (l1 * (l3 - l1) + l3 * l3 / 2.0 - (l - l3).powi(2) / 2.0) + handoff
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn worked_state() -> SectionState {
        SectionState {
            pipe: Pipe::new(3e4, 383.3, 0.1),
            ell1: 1e4,
            ell2: 1.45e4,
            ell3: 2e4,
            t1: 300.0,
            snapshot: vec![
                (0.0, 13.36e4),
                (5000.0, 12.82e4),
                (10000.0, 12.19e4),
                (14500.0, 11.56e4),
                (20000.0, 11.24e4),
                (25000.0, 10.86e4),
                (30000.0, 10.40e4),
            ],
            dp_start: -0.5,
            dp_end: -0.5,
            g0: 10.0,
            g_s: 10.0,
            g_ut: 5.0,
            series: SeriesControl::default(),
        }
    }

    fn pre(ell2: f64) -> PreClosure {
        PreClosure {
            pipe: Pipe::new(1e5, 383.3, 0.1),
            p_start: 55e4,
            g0: 30.0,
            leak: LeakEvent { ell2, g_ut: 30.0, onset: 0.0 },
            series: SeriesControl::terms(12),
        }
    }

    #[test]
    fn pre_closure_worked_cells() {
        let p = pre_closure_field(&pre(5e3), 0.0, 100.0).unwrap();
        assert!((p / 1e4 - 52.23).abs() < 0.01, "{p}");
        let p = pre_closure_field(&pre(5e4), 5e4, 300.0).unwrap();
        assert!((p / 1e4 - 36.45).abs() < 0.02 * 36.45, "{p}");
        assert!(pre_closure_field(&pre(0.0), 0.0, 1.0).is_err());
    }

    #[test]
    fn pre_closure_midpoint_symmetry() {
        let s = pre(5e4);
        for t in [50.0, 300.0, 900.0] {
            let d0 = s.p_start - pre_closure_field(&s, 0.0, t).unwrap();
            let dl = s.p_end() - pre_closure_field(&s, 1e5, t).unwrap();
            assert!((d0 - dl).abs() < 1e-6 * d0.abs().max(1.0));
        }
    }

    #[test]
    fn post_closure_worked_cells() {
        let s = worked_state();
        let p = post_closure_field(&s, 1, 0.0, 420.0).unwrap();
        assert!((p / 1e4 - 14.58).abs() < 0.02, "{p}");
        let p = post_closure_field(&s, 2, 1e4, 360.0).unwrap();
        assert!((p / 1e4 - 11.77).abs() < 0.02, "{p}");
        let p = post_closure_field(&s, 3, 3e4, 900.0).unwrap();
        assert!((p / 1e4 - 5.63).abs() < 0.05, "{p}");
        assert!(post_closure_field(&s, 1, 0.0, 299.0).is_err());
        assert!(post_closure_field(&s, 1, 15000.0, 400.0).is_err());
    }

    #[test]
    fn post_closure_starts_from_snapshot() {
        let s = worked_state();
        for (sec, x) in [(1, 5000.0), (2, 14500.0), (3, 25000.0)] {
            let p = post_closure_field(&s, sec, x, 300.0).unwrap();
            assert!((p - s.snapshot_at(x)).abs() < 1e-9);
        }
    }

    #[test]
    fn emptied_mass_linear() {
        assert_eq!(emptied_section_mass(1e4, 2e4, 383.3, 0.0).unwrap(), 0.0);
        let a = emptied_section_mass(1e4, 2e4, 383.3, -1e4).unwrap();
        let b = emptied_section_mass(1e4, 3e4, 383.3, -1e4).unwrap();
        assert!((b - 2.0 * a).abs() < 1e-12);
    }

    fn influx() -> InfluxDischarge {
        InfluxDischarge {
            length: 3e4,
            two_a: 0.1,
            g0: 10.0,
            p_start: 14e4,
            ell1: 1e4,
            ell3: 2e4,
            p_ell1_t2: 14.24e4,
            p_ell3_t2: 9.1e4,
            p_ell1_0: 13e4,
            p_ell3_0: 12e4,
        }
    }

    #[test]
    fn influx_continuity_and_cells() {
        let s = influx();
        let a = influx_discharge_new_steady(&s, 1e4, InfluxSection::I).unwrap();
        let b = influx_discharge_new_steady(&s, 1e4, InfluxSection::II).unwrap();
        assert!((a - b).abs() < 1e-9);
        let c = influx_discharge_new_steady(&s, 2e4, InfluxSection::II).unwrap();
        let d = influx_discharge_new_steady(&s, 2e4, InfluxSection::III).unwrap();
        assert!((c - d).abs() < 1e-9);
        let p0 = influx_discharge_new_steady(&s, 0.0, InfluxSection::I).unwrap();
        assert!((p0 / 1e4 - 13.09).abs() < 0.02 * 13.09);
        assert!((a / 1e4 - 12.38).abs() < 0.02 * 12.38);
        assert!(influx_discharge_new_steady(&s, 25000.0, InfluxSection::I).is_err());
    }
}
