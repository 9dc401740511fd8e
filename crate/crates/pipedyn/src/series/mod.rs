//! Closed-form time-domain solutions of ∂²P/∂x² = (2a/c²)∂P/∂t with point sources.

mod coupled;
mod parallel;
mod relief;
mod ring;
mod sections;

pub use coupled::{
    coupled_parallel_field, coupled_parallel_field_varying, BoundaryVariant, CoupledParallel, CoupledSection,
};
pub use parallel::{
    calibrate_closing_time, closing_time_by_threshold, decay_rate_from_observation, empirical_end_decay,
    parallel_emergency_field, valve_closing_time, ClosingTimeCalibration, EmergencyParallel, ValveTiming,
};
pub use relief::{relief_field, ReliefDerived, ReliefLine};
pub use ring::{hydraulic_junction_location, ring_field, RingLine};
pub use sections::{
    emptied_section_mass, influx_discharge_new_steady, post_closure_field, pre_closure_field, InfluxDischarge,
    InfluxSection, PreClosure, SectionState,
};

use std::f64::consts::PI;

use crate::model::SeriesControl;

/// Wave speed, Charny coefficient and length shared by every closed form.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Pipe {
    pub length: f64,
    pub c: f64,
    pub two_a: f64,
}

impl Pipe {
    pub fn new(length: f64, c: f64, two_a: f64) -> Self {
        Self { length, c, two_a }
    }

    /// Diffusivity c²/2a.
    pub fn diffusivity(&self) -> f64 {
        self.c * self.c / self.two_a
    }

    /// Base decay constant π²c²/(2a·len²) of a segment of length `len`.
    pub fn decay(&self, len: f64) -> f64 {
        PI * PI * self.diffusivity() / (len * len)
    }
}

/// Σ_{n=1}^{N} term(n). The truncation count is fixed so table reproduction
/// is independent of the tail heuristic.
pub(crate) fn sum_series(ctrl: &SeriesControl, mut term: impl FnMut(f64) -> f64) -> f64 {
    let mut acc = 0.0;
    for n in 1..=ctrl.n_terms.max(1) {
        acc += term(n as f64);
    }
    acc
}

/// Whether the last retained term is below the relative tail tolerance.
pub fn tail_converged(ctrl: &SeriesControl, term: impl Fn(f64) -> f64) -> bool {
    let partial = sum_series(ctrl, &term);
    let last = term(ctrl.n_terms.max(1) as f64);
    last.abs() <= ctrl.tail_tol * partial.abs().max(f64::MIN_POSITIVE)
}

pub(crate) fn sign(n: f64) -> f64 {
    if (n as i64) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// ∫₀ᵗ g(τ)·e^{−α(t−τ)} dτ by the trapezoid rule with step ≤ 1 s.
pub(crate) fn convolve_decay(g: &dyn Fn(f64) -> f64, alpha: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let steps = t.ceil().max(1.0) as usize;
    let h = t / steps as f64;
    let mut acc = 0.0;
    for k in 0..=steps {
        let tau = k as f64 * h;
        let w = if k == 0 || k == steps { 0.5 } else { 1.0 };
        acc += w * g(tau) * (-alpha * (t - tau)).exp();
    }
    acc * h
}
