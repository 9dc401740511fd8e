//! Two identical lines joined at both ends, one of them leaking.
//!
//! The pair is unfolded into a single coordinate y on [−L, L]: the damaged
//! line occupies one half and the intact line the other, so the shared node
//! becomes an interior point and the boundary conditions of the three
//! operating modes become conditions at y = ±L (or a ring of length 2L).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{convolve_decay, sum_series, Pipe};
use crate::error::{ensure, Error, Result};
use crate::model::SeriesControl;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryVariant {
    /// Pressure held at the outlet node, inflow metered at the inlet.
    FixedEndPressure,
    /// Pressure held at the inlet node, offtake metered at the outlet.
    FixedStartPressure,
    /// Both nodes metered.
    FluxBothEnds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoupledSection {
    Undamaged,
    DamagedBeforeLeak,
    DamagedAfterLeak,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoupledParallel {
    pub pipe: Pipe,
    pub p_start: f64,
    /// Stationary flux carried by each line.
    pub g0_line: f64,
    pub ell2: f64,
    pub g_ut: f64,
    pub series: SeriesControl,
}

impl CoupledParallel {
    /// Unfolded coordinate of a point on one of the lines.
    pub fn unfold(&self, variant: BoundaryVariant, damaged: bool, x: f64) -> f64 {
        let l = self.pipe.length;
        let y = match variant {
            BoundaryVariant::FixedStartPressure => l - x,
            _ => x,
        };
        if damaged {
            y
        } else {
            -y
        }
    }

    pub fn leak_coordinate(&self, variant: BoundaryVariant) -> f64 {
        self.unfold(variant, true, self.ell2)
    }

    pub fn steady(&self, x: f64) -> f64 {
        self.p_start - self.pipe.two_a * self.g0_line * x
    }
}

fn check(s: &CoupledParallel, section: CoupledSection, x: f64, t: f64) -> Result<()> {
    let l = s.pipe.length;
    ensure(t >= 0.0, || "t must be nonnegative".into())?;
    if s.ell2 <= 0.0 || s.ell2 >= l {
        return Err(Error::infeasible("leak at a line end collides with the node condition"));
    }
    let ok = match section {
        CoupledSection::Undamaged => (0.0..=l).contains(&x),
        CoupledSection::DamagedBeforeLeak => (0.0..=s.ell2).contains(&x),
        CoupledSection::DamagedAfterLeak => (s.ell2..=l).contains(&x),
    };
    ensure(ok, || format!("x = {x} does not belong to section {section:?}"))
}

/// Pressure drop caused by a unit-rate history `weight(α)` at unfolded y.
fn drop(s: &CoupledParallel, variant: BoundaryVariant, y: f64, mode_zero: f64, weight: &dyn Fn(f64) -> f64) -> f64 {
    let l = s.pipe.length;
    let c2 = s.pipe.c * s.pipe.c;
    let xi = s.leak_coordinate(variant);
    match variant {
        BoundaryVariant::FixedEndPressure | BoundaryVariant::FixedStartPressure => {
            let k = PI / (2.0 * l);
            let base = s.pipe.diffusivity() * k * k;
            c2 / l
                * sum_series(&s.series, |n| (n * k * (xi + l)).sin() * (n * k * (y + l)).sin() * weight(base * n * n))
        }
        BoundaryVariant::FluxBothEnds => {
            let k = PI / l;
            let base = s.pipe.diffusivity() * k * k;
            c2 * mode_zero / (2.0 * l)
                + c2 / l * sum_series(&s.series, |n| (n * k * (y - xi)).cos() * weight(base * n * n))
        }
    }
}

/// Pressure on either line for a constant leak rate.
pub fn coupled_parallel_field(
    variant: BoundaryVariant,
    s: &CoupledParallel,
    section: CoupledSection,
    x: f64,
    t: f64,
) -> Result<f64> {
    check(s, section, x, t)?;
    let y = s.unfold(variant, section != CoupledSection::Undamaged, x);
    let g = s.g_ut;
    let weight = |alpha: f64| g * -(-alpha * t).exp_m1() / alpha;
    Ok(s.steady(x) - drop(s, variant, y, g * t, &weight))
}

/// Same field for a time-varying leak rate, evaluated by quadrature of the
/// convolution integrals.
pub fn coupled_parallel_field_varying(
    variant: BoundaryVariant,
    s: &CoupledParallel,
    section: CoupledSection,
    x: f64,
    t: f64,
    g_ut: &dyn Fn(f64) -> f64,
) -> Result<f64> {
    check(s, section, x, t)?;
    let y = s.unfold(variant, section != CoupledSection::Undamaged, x);
    let released = convolve_decay(g_ut, 0.0, t);
    let weight = |alpha: f64| convolve_decay(g_ut, alpha, t);
    Ok(s.steady(x) - drop(s, variant, y, released, &weight))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario() -> CoupledParallel {
        CoupledParallel {
            pipe: Pipe::new(1e5, 383.3, 0.1),
            p_start: 55e4,
            g0_line: 15.0,
            ell2: 25000.0,
            g_ut: 12.0,
            series: SeriesControl::terms(400),
        }
    }

    #[test]
    fn starts_from_steady_profile() {
        let s = scenario();
        for v in [BoundaryVariant::FixedEndPressure, BoundaryVariant::FixedStartPressure, BoundaryVariant::FluxBothEnds]
        {
            let p = coupled_parallel_field(v, &s, CoupledSection::Undamaged, 25000.0, 0.0).unwrap();
            assert!((p - 51.25e4).abs() < 1e-6);
        }
    }

    #[test]
    fn damaged_line_drops_more_at_leak() {
        let s = scenario();
        for v in [BoundaryVariant::FixedEndPressure, BoundaryVariant::FluxBothEnds] {
            let d = coupled_parallel_field(v, &s, CoupledSection::DamagedBeforeLeak, 25000.0, 300.0).unwrap();
            let u = coupled_parallel_field(v, &s, CoupledSection::Undamaged, 25000.0, 300.0).unwrap();
            assert!(d < u, "{v:?}: {d} vs {u}");
        }
    }

    #[test]
    fn section_mismatch_is_rejected() {
        let s = scenario();
        let r = coupled_parallel_field(
            BoundaryVariant::FixedEndPressure,
            &s,
            CoupledSection::DamagedBeforeLeak,
            50000.0,
            10.0,
        );
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn varying_rate_matches_constant_closed_form() {
        let s = CoupledParallel { series: SeriesControl::terms(30), ..scenario() };
        for v in [BoundaryVariant::FixedStartPressure, BoundaryVariant::FluxBothEnds] {
            let a = coupled_parallel_field(v, &s, CoupledSection::Undamaged, 40000.0, 120.0).unwrap();
            let b =
                coupled_parallel_field_varying(v, &s, CoupledSection::Undamaged, 40000.0, 120.0, &|_| 12.0).unwrap();
            assert!((a - b).abs() < 1e-4 * a.abs(), "{a} {b}");
        }
    }
}
