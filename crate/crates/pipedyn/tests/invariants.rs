use proptest::prelude::*;

use pipedyn::dispatch::{
    leak_estimate_unclamped, pressure_drop_ratio, Action, CompressionGuard, DispatchEvent, EmergencySequencer, Regime,
};
use pipedyn::recon::{telescopic_cost, telescopic_reuse, WearState};
use pipedyn::series::{pre_closure_field, relief_field, ring_field, PreClosure, ReliefLine, RingLine};
use pipedyn::{LeakEvent, OfftakeSet, Pipe, SeriesControl, STANDARD_GRAVITY};

const C: f64 = 383.3;
const TWO_A: f64 = 0.1;

fn regime() -> impl Strategy<Value = Regime> {
    prop_oneof![Just(Regime::Accident), Just(Regime::Technological), Just(Regime::Pending)]
}

fn event() -> impl Strategy<Value = (f64, DispatchEvent)> {
    let dt = 0.0..120.0f64;
    prop_oneof![
        (dt.clone(), regime(), 0.1..10.0f64, 10e4..14e4f64).prop_map(|(dt, regime, p, p_ell1)| {
            (dt, DispatchEvent::Fixation { t: 0.0, regime, p, ell1: 1e4, ell3: 2e4, p_ell1 })
        }),
        (dt.clone(), 12e4..20e4f64, 10e4..14e4f64)
            .prop_map(|(dt, p_start, p_ell1)| (dt, DispatchEvent::Pressures { t: 0.0, p_start, p_ell1 })),
        dt.prop_map(|dt| (dt, DispatchEvent::Repaired { t: 0.0 })),
    ]
}

/// Turns time increments into absolute, nondecreasing timestamps.
fn stream() -> impl Strategy<Value = Vec<DispatchEvent>> {
    prop::collection::vec(event(), 1..25).prop_map(|steps| {
        let mut t = 0.0;
        steps
            .into_iter()
            .map(|(dt, ev)| {
                t += dt;
                match ev {
                    DispatchEvent::Fixation { regime, p, ell1, ell3, p_ell1, .. } => {
                        DispatchEvent::Fixation { t, regime, p, ell1, ell3, p_ell1 }
                    }
                    DispatchEvent::Pressures { p_start, p_ell1, .. } => DispatchEvent::Pressures { t, p_start, p_ell1 },
                    DispatchEvent::Repaired { .. } => DispatchEvent::Repaired { t },
                }
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn midpoint_leak_gives_unit_ratio(
        length in 2e4..1.5e5f64,
        g0 in 5.0..40.0f64,
        share in 0.1..1.0f64,
        t in 20.0..900.0f64,
    ) {
        let s = PreClosure {
            pipe: Pipe::new(length, C, TWO_A),
            p_start: 0.1 * g0 * length + 1e5,
            g0,
            leak: LeakEvent { ell2: length / 2.0, g_ut: share * g0, onset: 0.0 },
            series: SeriesControl::terms(12),
        };
        let p0 = pre_closure_field(&s, 0.0, t).unwrap();
        let pl = pre_closure_field(&s, length, t).unwrap();
        if let Some(p) = pressure_drop_ratio(s.p_start, p0, s.p_end(), pl).value() {
            prop_assert!((p - 1.0).abs() <= 1e-9, "p = {p}");
        }
    }

    #[test]
    fn ring_is_periodic(
        x1 in 0.0..1e4f64,
        x2 in 1e4..2e4f64,
        x3 in 2e4..3e4f64,
        w1 in 0.1..1.0f64,
        w2 in 0.1..1.0f64,
        t in 1.0..5000.0f64,
    ) {
        let g0 = 10.0;
        let total = w1 + w2 + 1.0;
        let s = RingLine {
            pipe: Pipe::new(3e4, C, TWO_A),
            p_start: 14e4,
            g0,
            offtakes: OfftakeSet::new(&[(x1, g0 * w1 / total), (x2, g0 * w2 / total), (x3, g0 / total)]),
            leak: None,
            series: SeriesControl::terms(12),
        };
        let a = ring_field(&s, 0.0, t).unwrap();
        let b = ring_field(&s, 3e4, t).unwrap();
        prop_assert!(((a - b) / a).abs() <= 1e-9);
    }

    #[test]
    fn flat_relief_drains_uniformly(ell in 1e3..2.9e4f64, x in 0.0..3e4f64, t in 10.0..600.0f64) {
        let s = ReliefLine {
            pipe: Pipe::new(3e4, C, TWO_A),
            p_h: 14e4,
            g_ut: 10.0,
            ell,
            sin_alpha: 1e-12,
            gravity: STANDARD_GRAVITY,
        };
        let flat = s.p_h - C * C * s.g_ut * t / s.pipe.length;
        let p = relief_field(&s, x, t).unwrap();
        prop_assert!(((p - flat) / flat).abs() <= 1e-9);
    }

    #[test]
    fn larger_start_drop_points_upstream(p in 0.01..100.0f64, t in 20.0..900.0f64, length in 1e4..2e5f64) {
        prop_assume!((p - 1.0).abs() > 1e-9);
        let ell2 = leak_estimate_unclamped(p, t, length, TWO_A, C);
        if p > 1.0 {
            prop_assert!(ell2 < length / 2.0);
        } else {
            prop_assert!(ell2 > length / 2.0);
        }
    }

    #[test]
    fn sequencer_never_reopens_unsafely(events in stream(), epsilon in 1.05..2.0f64) {
        let guard = CompressionGuard::new(epsilon).unwrap();
        let log = EmergencySequencer::run(14e4, guard, &events).unwrap();
        let mut closed = false;
        let mut opened = false;
        let mut last_t = f64::NEG_INFINITY;
        for entry in &log {
            prop_assert!(entry.t >= last_t);
            last_t = entry.t;
            match entry.action {
                Action::Close { .. } => {
                    prop_assert!(!closed, "second closure");
                    closed = true;
                    opened = false;
                }
                Action::OpenConnectors { ratio, .. } => {
                    prop_assert!(closed && !opened, "connectors opened out of order");
                    prop_assert!(ratio < epsilon);
                    opened = true;
                }
                Action::Restore => {
                    closed = false;
                    opened = false;
                }
                Action::Advisory { .. } => {}
            }
        }
    }

    #[test]
    fn telescopic_cost_is_convex(lc in 2u32..60, s_p in 10.0..300.0f64, s_h in 10.0..300.0f64, k in 0.05..1.0f64) {
        let tr = telescopic_reuse(lc, s_p, s_h, &WearState::with_factor(k)).unwrap();
        let f: Vec<f64> = tr.curve.iter().map(|&(_, v)| v).collect();
        for w in f.windows(3) {
            prop_assert!(w[0] + w[2] - 2.0 * w[1] >= -1e-9 * w[1].abs().max(1.0));
        }
        let best = telescopic_cost(lc as f64, s_p, s_h, k, tr.lp_bruteforce as f64);
        prop_assert!(f.iter().all(|&v| v >= best - 1e-9 * best.abs().max(1.0)));
    }
}
