//! Ring main with constant road-side offtakes and an optional leak.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{sum_series, Pipe};
use crate::error::{ensure, Error, Result};
use crate::model::{LeakEvent, OfftakeSet, SeriesControl};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingLine {
    pub pipe: Pipe,
    pub p_start: f64,
    pub g0: f64,
    pub offtakes: OfftakeSet,
    pub leak: Option<LeakEvent>,
    pub series: SeriesControl,
}

impl RingLine {
    /// Decay constant of the first ring mode, 4π²c²/(2aL²).
    pub fn alpha(&self) -> f64 {
        4.0 * self.pipe.decay(self.pipe.length)
    }
}

/// Ring pressure. Both x = 0 and x = L are the feed node, and the expression
/// takes identical values there.
pub fn ring_field(s: &RingLine, x: f64, t: f64) -> Result<f64> {
    let l = s.pipe.length;
    s.offtakes.validate(l)?;
    ensure(t >= 0.0, || "t must be nonnegative".into())?;
    ensure((0.0..=l).contains(&x), || format!("x = {x} outside the ring"))?;
    let c2 = s.pipe.c * s.pipe.c;
    let two_a = s.pipe.two_a;
    let alpha = s.alpha();
    let fill = |n: f64| -(-n * n * alpha * t).exp_m1();

    let mut sinks: Vec<(f64, f64)> = s.offtakes.0.iter().map(|o| (o.x, o.g)).collect();
    if let Some(leak) = s.leak {
        leak.validate(l)?;
        sinks.push((leak.ell2, leak.g_ut));
    }
    let total: f64 = sinks.iter().map(|s| s.1).sum();

    // the endpoint sine series vanishes identically at the feed node
    let feed = if x == 0.0 || x == l {
        0.0
    } else {
        sum_series(&s.series, |n| (PI * n * x / l).sin() * fill(n) / (n * n * n))
    };
    let mut p = s.p_start - two_a * s.g0 * l / 2.0 + two_a * s.g0 * l * PI * PI / 2.0 * feed;
    p -= c2 * t / l * total;
    for &(xi, g) in &sinks {
        p -= 2.0 * c2 / l
            * g
            * sum_series(&s.series, |n| (2.0 * PI * n * (x - xi) / l).cos() * fill(n) / (alpha * n * n));
    }
    Ok(p)
}

/// Coordinate of the ring's hydraulic junction node.
pub fn hydraulic_junction_location(length: f64, g1_over_g0: f64, two_a: f64, c: f64, t: f64) -> Result<f64> {
    ensure(length > 0.0 && two_a > 0.0 && c > 0.0, || "L, 2a, c must be positive".into())?;
    let alpha = 4.0 * PI * PI * c * c / (two_a * length * length);
    let e = (-4.0 * alpha * t).exp();
    let z = 1.0 + 8.0 * e;
    let disc = 1.0 - 4.0 * z / (PI * PI) * ((2.0 * PI * PI - 3.0 * e) / 12.0 + alpha * g1_over_g0);
    if disc < 0.0 {
        return Err(Error::infeasible(format!("demand ratio {g1_over_g0} too large: discriminant {disc}")));
    }
    Ok(length * (1.0 - disc.sqrt()) / z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> RingLine {
        RingLine {
            pipe: Pipe::new(3e4, 383.3, 0.1),
            p_start: 14e4,
            g0: 10.0,
            offtakes: OfftakeSet::new(&[(3e3, 3.0), (1.5e4, 4.0), (2.7e4, 3.0)]),
            leak: None,
            series: SeriesControl::terms(12),
        }
    }

    #[test]
    fn first_table_cell() {
        let p = ring_field(&ring(), 0.0, 50.0).unwrap();
        assert!((p - 122717.5).abs() < 0.005 * 122717.5, "{p}");
    }

    #[test]
    fn closure() {
        let s = ring();
        for t in [10.0, 300.0, 900.0] {
            assert_eq!(ring_field(&s, 0.0, t).unwrap(), ring_field(&s, 3e4, t).unwrap());
        }
    }

    #[test]
    fn junction_worked_values() {
        let x = hydraulic_junction_location(3e4, 1.0, 0.1, 383.3, 50.0).unwrap();
        assert!((x - 13372.0).abs() < 1.0, "{x}");
        let x = hydraulic_junction_location(3e4, 1.55, 0.1, 383.3, 700.0).unwrap();
        assert!((x - 13765.3).abs() < 1.0, "{x}");
        assert!(hydraulic_junction_location(3e4, 100.0, 0.1, 383.3, 50.0).is_err());
    }

    #[test]
    fn offtake_outside_is_rejected() {
        let mut s = ring();
        s.offtakes = OfftakeSet::new(&[(4e4, 10.0)]);
        assert!(ring_field(&s, 0.0, 1.0).is_err());
    }
}
