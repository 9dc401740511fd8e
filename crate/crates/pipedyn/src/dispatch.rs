//! Dispatcher decision rules: pressure-drop ratio, fixation time, regime
//! band, leak and valve localization, connector timing and the emergency
//! sequencer.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};

/// Euler's constant as used in the valve formulas.
pub const EULER_C: f64 = 0.577215;

/// End drops smaller than this mean the pressure wave has not arrived.
pub const PENDING_THRESHOLD_PA: f64 = 10.0;

/// Serialized as a bare number, or null while pending.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PRatio {
    Value(f64),
    Pending,
}

impl PRatio {
    pub fn value(self) -> Option<f64> {
        match self {
            PRatio::Value(v) => Some(v),
            PRatio::Pending => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    Accident,
    Technological,
    Pending,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::Accident => "accident",
            Regime::Technological => "technological",
            Regime::Pending => "pending",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompressionGuard {
    pub epsilon: f64,
}

impl Default for CompressionGuard {
    fn default() -> Self {
        Self { epsilon: 1.3 }
    }
}

impl CompressionGuard {
    pub fn new(epsilon: f64) -> Result<Self> {
        ensure(epsilon > 1.0, || format!("epsilon must exceed 1, got {epsilon}"))?;
        Ok(Self { epsilon })
    }
}

/// p(t) = (P₁ − P₁(0,t)) / (P₂ − P₂(L,t)).
pub fn pressure_drop_ratio(p1: f64, p1_0t: f64, p2: f64, p2_lt: f64) -> PRatio {
    let end_drop = p2 - p2_lt;
    if end_drop.abs() < PENDING_THRESHOLD_PA {
        PRatio::Pending
    } else {
        PRatio::Value((p1 - p1_0t) / end_drop)
    }
}

/// Time of the first interior extremum of p(t); the first ready sample when
/// the series has none.
pub fn fixation_time(series: &[(f64, PRatio)]) -> Result<f64> {
    let ready: Vec<(f64, f64)> = series.iter().filter_map(|&(t, p)| p.value().map(|v| (t, v))).collect();
    if ready.is_empty() {
        return Err(Error::NotReady("every sample is pending".into()));
    }
    if ready.len() < 3 {
        return Err(Error::NotReady(format!("{} ready samples, need 3", ready.len())));
    }
    let step = |a: f64, b: f64| {
        let d = b - a;
        if d.abs() <= 1e-9 * a.abs().max(b.abs()) {
            0.0
        } else {
            d.signum()
        }
    };
    for w in ready.windows(3) {
        let before = step(w[0].1, w[1].1);
        let after = step(w[1].1, w[2].1);
        if before != 0.0 && after != 0.0 && before != after {
            return Ok(w[1].0);
        }
    }
    Ok(ready[0].0)
}

/// φ(t) = 2/3 + (e^{−2α₂t} − 4e^{−α₂t})/π² with α₂ = π²c²/(2aL²).
pub fn localization_phi(t: f64, length: f64, two_a: f64, c: f64) -> f64 {
    let alpha2 = PI * PI * c * c / (two_a * length * length);
    2.0 / 3.0 + ((-2.0 * alpha2 * t).exp() - 4.0 * (-alpha2 * t).exp()) / (PI * PI)
}

/// Accident iff p lies strictly inside (|φ−½|/(φ+½), (φ+½)/|φ−½|). Taking the
/// magnitude keeps the band around p = 1 when φ < ½; for φ > ½ it is the
/// plain ((φ−½)/(φ+½), (φ+½)/(φ−½)).
pub fn classify_regime(p: f64, t: f64, length: f64, two_a: f64, c: f64) -> Result<Regime> {
    let phi = localization_phi(t, length, two_a, c);
    if (phi - 0.5).abs() < 1e-12 {
        return Err(Error::Singular("phi = 0.5 collapses the band".into()));
    }
    let lo = (phi - 0.5).abs() / (phi + 0.5);
    let hi = (phi + 0.5) / (phi - 0.5).abs();
    Ok(if lo < p && p < hi { Regime::Accident } else { Regime::Technological })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeakEstimate {
    pub theta: f64,
    pub ell2: f64,
    pub phi: f64,
    pub clamped: bool,
}

/// θ = ½ + φ·(1−p)/(1+p), ℓ₂ = θL clamped to the line.
pub fn locate_leak(p: f64, t1: f64, length: f64, two_a: f64, c: f64) -> Result<LeakEstimate> {
    if p == -1.0 {
        return Err(Error::Singular("p = -1".into()));
    }
    let phi = localization_phi(t1, length, two_a, c);
    let theta = 0.5 + phi * (1.0 - p) / (1.0 + p);
    let raw = theta * length;
    let ell2 = raw.clamp(0.0, length);
    Ok(LeakEstimate { theta: theta.clamp(0.0, 1.0), ell2, phi, clamped: ell2 != raw })
}

/// Unclamped θ·L, for reporting estimates outside the line.
pub fn leak_estimate_unclamped(p: f64, t1: f64, length: f64, two_a: f64, c: f64) -> f64 {
    let phi = localization_phi(t1, length, two_a, c);
    (0.5 + phi * (1.0 - p) / (1.0 + p)) * length
}

pub fn locate_leak_ratio(p: PRatio, t1: f64, length: f64, two_a: f64, c: f64) -> Result<LeakEstimate> {
    match p {
        PRatio::Value(v) => locate_leak(v, t1, length, two_a, c),
        PRatio::Pending => Err(Error::NotReady("pressure wave has not reached the far end".into())),
    }
}

/// κ(t) = (P(L/2,t) − P₁)/P(0,t).
pub fn kappa_indicator(p_mid: f64, p1_initial: f64, p_start_t: f64) -> Result<f64> {
    ensure(p_start_t > 0.0, || "P(0,t) must be positive".into())?;
    Ok((p_mid - p1_initial) / p_start_t)
}

/// Decision thresholds on κ; κ > `accident_above` flags an accident.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KappaRule {
    pub accident_above: f64,
}

impl Default for KappaRule {
    fn default() -> Self {
        Self { accident_above: 1.0 }
    }
}

impl KappaRule {
    pub fn classify(&self, kappa: f64) -> Regime {
        if kappa > self.accident_above {
            Regime::Accident
        } else {
            Regime::Technological
        }
    }
}

/// Valve coordinates bracketing the leak from the inlet pressure rise.
#[allow(clippy::too_many_arguments)]
pub fn locate_closed_valves(
    p0_t: f64,
    p0_t1: f64,
    t: f64,
    t1: f64,
    g0: f64,
    two_a: f64,
    c: f64,
    step_ell: f64,
) -> Result<(f64, f64)> {
    ensure(t > t1, || format!("t = {t} must follow t1 = {t1}"))?;
    let z = p0_t - p0_t1;
    let z1 = two_a * g0 * (1.0 / 3.0 + 2.0 / (PI * PI));
    ensure(z1 > 0.0, || "Z1 must be positive".into())?;
    let disc = z * z + 8.0 * c * c * g0 * (1.0 - EULER_C) * (t - t1) * z1;
    ensure(disc >= 0.0, || "negative discriminant".into())?;
    let ell1 = (disc.sqrt() - z) / (2.0 * z1);
    Ok((ell1, ell1 + step_ell))
}

/// Time at which the connectors may open without overloading compressors.
#[allow(clippy::too_many_arguments)]
pub fn connector_opening_time(
    t1: f64,
    ell1: f64,
    g0: f64,
    guard: CompressionGuard,
    p_b: f64,
    p0_t1: f64,
    two_a: f64,
    c: f64,
) -> Result<f64> {
    let limit = guard.epsilon * p_b;
    if limit <= p0_t1 {
        return Err(Error::infeasible(format!("inlet pressure {p0_t1} already exceeds the compression limit {limit}")));
    }
    ensure(g0 > 0.0 && c > 0.0, || "G0 and c must be positive".into())?;
    let numer = limit - p0_t1 - two_a * ell1 * g0 * (1.0 / 3.0 - 1.0 / (PI * PI));
    let dt = ell1 / (c * c * g0) * numer / (2.0 - EULER_C);
    Ok(t1 + dt.max(0.0))
}

/// Connectors may open once the inlet stays within the compression guard
/// and the damaged line at ℓ₁ has recovered above its reference pressure.
pub fn reopen_condition(p1: f64, p0_t: f64, p_ell1_ref: f64, p_ell1_t: f64, guard: CompressionGuard) -> Result<bool> {
    ensure(p1 > 0.0 && p0_t > 0.0 && p_ell1_ref > 0.0 && p_ell1_t > 0.0, || "pressures must be positive".into())?;
    Ok(p0_t / p1 < guard.epsilon && p_ell1_t / p_ell1_ref > 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValvePlan {
    pub ell1: f64,
    pub ell3: f64,
    pub t2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DispatchDecision {
    pub p_series: Vec<(f64, PRatio)>,
    pub t1: Option<f64>,
    pub regime: Regime,
    pub theta: Option<f64>,
    pub ell2_estimate: Option<f64>,
    pub valve_plan: Option<ValvePlan>,
    pub kappa_series: Vec<(f64, f64)>,
}

impl DispatchDecision {
    pub fn validate(&self) -> Result<()> {
        if let Some(th) = self.theta {
            ensure((0.0..=1.0).contains(&th), || "theta outside [0, 1]".into())?;
        }
        if let (Some(plan), Some(l2)) = (&self.valve_plan, self.ell2_estimate) {
            ensure(plan.ell1 < l2 && l2 < plan.ell3, || "valves must bracket the leak".into())?;
        }
        if let (Some(plan), Some(t1)) = (&self.valve_plan, self.t1) {
            ensure(plan.t2 >= t1, || "t2 precedes t1".into())?;
        }
        Ok(())
    }
}

/// Fixation, regime check and localization from a sampled p(t) series.
pub fn analyze_ratio_series(series: &[(f64, PRatio)], length: f64, two_a: f64, c: f64) -> Result<DispatchDecision> {
    let mut decision = DispatchDecision {
        p_series: series.to_vec(),
        t1: None,
        regime: Regime::Pending,
        theta: None,
        ell2_estimate: None,
        valve_plan: None,
        kappa_series: Vec::new(),
    };
    let t1 = match fixation_time(series) {
        Ok(t1) => t1,
        Err(Error::NotReady(_)) => return Ok(decision),
        Err(e) => return Err(e),
    };
    let p = series
        .iter()
        .find(|(t, _)| *t == t1)
        .and_then(|(_, p)| p.value())
        .ok_or_else(|| Error::NotReady("no ratio at the fixation time".into()))?;
    decision.t1 = Some(t1);
    decision.regime = classify_regime(p, t1, length, two_a, c)?;
    let est = locate_leak(p, t1, length, two_a, c)?;
    decision.theta = Some(est.theta);
    decision.ell2_estimate = Some(est.ell2);
    Ok(decision)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DispatchEvent {
    /// Fixation fired: the classified regime and the valve pair bracketing
    /// the located leak, with the pressure at ℓ₁ when the valves close.
    Fixation {
        t: f64,
        regime: Regime,
        p: f64,
        ell1: f64,
        ell3: f64,
        p_ell1: f64,
    },
    /// Telemetry from the damaged line after isolation.
    Pressures {
        t: f64,
        p_start: f64,
        p_ell1: f64,
    },
    Repaired {
        t: f64,
    },
}

impl DispatchEvent {
    pub fn time(&self) -> f64 {
        match *self {
            DispatchEvent::Fixation { t, .. } | DispatchEvent::Pressures { t, .. } | DispatchEvent::Repaired { t } => t,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Action {
    Close {
        ell1: f64,
        ell3: f64,
    },
    /// Carries the inlet compression ratio and the ℓ₁ pressure that allowed it.
    OpenConnectors {
        ratio: f64,
        p_ell1: f64,
    },
    Advisory {
        p: f64,
    },
    Restore,
}

impl Action {
    pub fn name(&self) -> &'static str {
        match self {
            Action::Close { .. } => "close_valves",
            Action::OpenConnectors { .. } => "open_connectors",
            Action::Advisory { .. } => "advisory",
            Action::Restore => "restore",
        }
    }

    pub fn params(&self) -> (f64, f64) {
        match *self {
            Action::Close { ell1, ell3 } => (ell1, ell3),
            Action::OpenConnectors { ratio, p_ell1 } => (ratio, p_ell1),
            Action::Advisory { p } => (p, 0.0),
            Action::Restore => (0.0, 0.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogEntry {
    pub t: f64,
    pub action: Action,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Phase {
    Stationary,
    Isolated { p_ell1_ref: f64 },
    Rerouted,
}

/// Single-threaded state machine turning an event stream into an action log.
#[derive(Debug, Clone)]
pub struct EmergencySequencer {
    p1: f64,
    guard: CompressionGuard,
    phase: Phase,
    last_t: f64,
    log: Vec<LogEntry>,
}

impl EmergencySequencer {
    pub fn new(p1: f64, guard: CompressionGuard) -> Self {
        Self { p1, guard, phase: Phase::Stationary, last_t: f64::NEG_INFINITY, log: Vec::new() }
    }

    pub fn log(&self) -> &[LogEntry] {
        &self.log
    }

    pub fn push(&mut self, event: DispatchEvent) -> Result<()> {
        let t = event.time();
        if t < self.last_t {
            return Err(Error::Protocol(format!("event at {t} arrives after {}", self.last_t)));
        }
        self.last_t = t;
        match (self.phase, event) {
            (Phase::Stationary, DispatchEvent::Fixation { regime, p, ell1, ell3, p_ell1, .. }) => match regime {
                Regime::Accident => {
                    self.log.push(LogEntry { t, action: Action::Close { ell1, ell3 } });
                    self.phase = Phase::Isolated { p_ell1_ref: p_ell1 };
                }
                Regime::Technological => {
                    self.log.push(LogEntry { t, action: Action::Advisory { p } });
                }
                Regime::Pending => {}
            },
            (Phase::Isolated { p_ell1_ref }, DispatchEvent::Pressures { p_start, p_ell1, .. }) => {
                if p_start > 0.0 && p_ell1 > 0.0 && reopen_condition(self.p1, p_start, p_ell1_ref, p_ell1, self.guard)?
                {
                    let ratio = p_start / self.p1;
                    self.log.push(LogEntry { t, action: Action::OpenConnectors { ratio, p_ell1 } });
                    self.phase = Phase::Rerouted;
                }
            }
            (Phase::Isolated { .. } | Phase::Rerouted, DispatchEvent::Repaired { .. }) => {
                self.log.push(LogEntry { t, action: Action::Restore });
                self.phase = Phase::Stationary;
            }
            _ => {}
        }
        Ok(())
    }

    pub fn run(p1: f64, guard: CompressionGuard, events: &[DispatchEvent]) -> Result<Vec<LogEntry>> {
        let mut seq = Self::new(p1, guard);
        for &e in events {
            seq.push(e)?;
        }
        Ok(seq.log)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_and_pending() {
        let p = pressure_drop_ratio(55e4, 49.30e4, 25e4, 24.97e4).value().unwrap();
        assert!((p - 190.0).abs() < 1e-9);
        assert_eq!(pressure_drop_ratio(55e4, 52e4, 25e4, 25e4 - 5.0), PRatio::Pending);
        assert_eq!(pressure_drop_ratio(1.0, 0.5, 1e3, 1e3 - 500.0), PRatio::Value(0.001));
    }

    #[test]
    fn fixation_cases() {
        let s: Vec<_> =
            [1.0, 2.0, 3.0, 2.5, 2.0].iter().enumerate().map(|(i, &v)| (i as f64 * 10.0, PRatio::Value(v))).collect();
        assert_eq!(fixation_time(&s).unwrap(), 20.0);
        let mono: Vec<_> = (0..5).map(|i| (i as f64, PRatio::Value(i as f64))).collect();
        assert_eq!(fixation_time(&mono).unwrap(), 0.0);
        let pend = vec![(0.0, PRatio::Pending); 4];
        assert!(matches!(fixation_time(&pend), Err(Error::NotReady(_))));
    }

    #[test]
    fn band_and_localization() {
        assert_eq!(classify_regime(1.0, 300.0, 1e5, 0.1, 383.3).unwrap(), Regime::Accident);
        let est = locate_leak(1.0, 300.0, 1e5, 0.1, 383.3).unwrap();
        assert_eq!(est.ell2, 5e4);
        assert!(locate_leak(-1.0, 300.0, 1e5, 0.1, 383.3).is_err());
        let phi = localization_phi(300.0, 1e5, 0.1, 383.3);
        assert!((phi - 0.45).abs() < 0.01);
    }

    #[test]
    fn kappa_cells() {
        assert_eq!(kappa_indicator(14e4, 14e4, 12e4).unwrap(), 0.0);
        let k = kappa_indicator(31.7, 14.0, 9.6).unwrap();
        assert!((k - 1.84).abs() < 0.01);
    }

    #[test]
    fn valve_location_worked() {
        let (l1, l3) = locate_closed_valves(14.58e4, 13.36e4, 420.0, 300.0, 10.0, 0.1, 383.3, 1e4).unwrap();
        assert!((l1 - 8811.0).abs() < 5.0, "{l1}");
        assert!((l3 - l1 - 1e4).abs() < 1e-9);
        let (l1, _) = locate_closed_valves(13.36e4 + 1e3, 13.36e4, 300.0 + 1e-9, 300.0, 10.0, 0.1, 383.3, 1e4).unwrap();
        assert!(l1 < 1e-3);
    }

    #[test]
    fn opening_time_worked() {
        let g = CompressionGuard::new(1.35).unwrap();
        let t2 = connector_opening_time(300.0, 1e4, 10.0, g, 14e4, 13.36e4, 0.1, 383.3).unwrap();
        assert!((t2 - 300.0 - 255.0).abs() < 10.0, "{t2}");
        assert!(connector_opening_time(300.0, 1e4, 10.0, g, 9e4, 13.36e4, 0.1, 383.3).is_err());
    }

    #[test]
    fn reopen_cases() {
        let g = CompressionGuard::default();
        assert!(reopen_condition(14e4, 14.58e4, 12.19e4, 12.91e4, g).unwrap());
        assert!(!reopen_condition(14e4, 13.36e4, 13e4, 12.19e4, g).unwrap());
        assert!(!reopen_condition(14e4, 14e4, 13e4, 13e4, g).unwrap());
    }

    #[test]
    fn worked_stream() {
        let events = [
            DispatchEvent::Fixation {
                t: 300.0,
                regime: Regime::Accident,
                p: 190.0,
                ell1: 9e3,
                ell3: 1.9e4,
                p_ell1: 12.19e4,
            },
            DispatchEvent::Pressures { t: 360.0, p_start: 14.13e4, p_ell1: 12.0e4 },
            DispatchEvent::Pressures { t: 420.0, p_start: 14.58e4, p_ell1: 12.91e4 },
        ];
        let log = EmergencySequencer::run(14e4, CompressionGuard::default(), &events).unwrap();
        assert_eq!(log.len(), 2);
        assert_eq!(log[0].t, 300.0);
        assert!(matches!(log[0].action, Action::Close { .. }));
        assert_eq!(log[1].t, 420.0);
        assert!(matches!(log[1].action, Action::OpenConnectors { .. }));
    }

    #[test]
    fn out_of_order_is_protocol_error() {
        let events = [DispatchEvent::Repaired { t: 5.0 }, DispatchEvent::Repaired { t: 4.0 }];
        assert!(matches!(EmergencySequencer::run(1.0, CompressionGuard::default(), &events), Err(Error::Protocol(_))));
    }
}
