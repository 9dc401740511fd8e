//! Domain records, unit conventions and the stationary-regime primitives.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};

/// Gravitational acceleration used when a scenario does not override it.
pub const STANDARD_GRAVITY: f64 = 9.81;

/// Pressure unit a scenario or table is written in. Everything inside the
/// library is Pa.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitScale {
    #[serde(rename = "Pa")]
    Pa,
    #[serde(rename = "1e4Pa")]
    TenKiloPa,
    #[serde(rename = "1e-2MPa")]
    CentiMegaPa,
}

impl UnitScale {
    pub fn factor(self) -> f64 {
        match self {
            UnitScale::Pa => 1.0,
            UnitScale::TenKiloPa | UnitScale::CentiMegaPa => 1e4,
        }
    }
    pub fn to_pa(self, v: f64) -> f64 {
        v * self.factor()
    }
    pub fn from_pa(self, v: f64) -> f64 {
        v / self.factor()
    }
    pub fn label(self) -> &'static str {
        match self {
            UnitScale::Pa => "Pa",
            UnitScale::TenKiloPa => "1e4Pa",
            UnitScale::CentiMegaPa => "1e-2MPa",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasProperties {
    pub z: Option<f64>,
    #[serde(rename = "R")]
    pub r: Option<f64>,
    #[serde(rename = "T")]
    pub t: Option<f64>,
    pub c: f64,
    pub rho: Option<f64>,
}

impl GasProperties {
    pub fn with_sound_speed(c: f64) -> Result<Self> {
        ensure(c > 0.0 && c.is_finite(), || format!("sound speed must be positive, got {c}"))?;
        Ok(Self { z: None, r: None, t: None, c, rho: None })
    }

    pub fn from_state(z: f64, r: f64, t: f64) -> Result<Self> {
        let c = sound_speed(z, r, t)?;
        Ok(Self { z: Some(z), r: Some(r), t: Some(t), c, rho: None })
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.c > 0.0 && self.c.is_finite(), || "c must be positive".into())?;
        if let (Some(z), Some(r), Some(t)) = (self.z, self.r, self.t) {
            ensure(z > 0.0 && t > 0.0 && r > 0.0, || "z, R, T must be positive".into())?;
            let c = (z * r * t).sqrt();
            ensure((c - self.c).abs() <= 1e-9 * c, || format!("c = {} disagrees with sqrt(zRT) = {c}", self.c))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineGeometry {
    #[serde(rename = "L")]
    pub length: f64,
    pub d: f64,
    pub lambda_h: f64,
    pub n_lines: u32,
    #[serde(default)]
    pub sin_alpha: f64,
    #[serde(default = "default_gravity")]
    pub g: f64,
}

fn default_gravity() -> f64 {
    STANDARD_GRAVITY
}

impl LineGeometry {
    pub fn validate(&self) -> Result<()> {
        ensure(self.length > 0.0, || "L must be positive".into())?;
        ensure(self.d > 0.0, || "d must be positive".into())?;
        ensure(self.lambda_h > 0.0, || "lambda_h must be positive".into())?;
        ensure(self.n_lines >= 1, || "n_lines must be at least 1".into())?;
        ensure(self.sin_alpha.abs() < 1.0, || "|sin_alpha| must be below 1".into())
    }

    /// Elevation gain over the line.
    pub fn rise(&self) -> f64 {
        self.length * self.sin_alpha
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Linearization {
    pub two_a: f64,
}

impl Linearization {
    pub fn new(two_a: f64) -> Result<Self> {
        ensure(two_a > 0.0, || format!("2a must be positive, got {two_a}"))?;
        Ok(Self { two_a })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteadyState {
    pub p_start: f64,
    pub p_end: Option<f64>,
    pub g0: f64,
}

impl SteadyState {
    pub fn validate(&self, two_a: f64, length: f64) -> Result<()> {
        ensure(self.p_start > 0.0, || "p_start must be positive".into())?;
        ensure(self.g0 >= 0.0, || "g0 must be nonnegative".into())?;
        if let Some(p_end) = self.p_end {
            let linear = self.p_start - two_a * self.g0 * length;
            ensure((p_end - linear).abs() <= 0.005 * self.p_start, || {
                format!("p_end = {p_end} is inconsistent with the linear profile end {linear}")
            })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeakEvent {
    pub ell2: f64,
    pub g_ut: f64,
    #[serde(default)]
    pub onset: f64,
}

impl LeakEvent {
    pub fn validate(&self, length: f64) -> Result<()> {
        ensure((0.0..=length).contains(&self.ell2), || format!("leak coordinate {} outside [0, {length}]", self.ell2))?;
        ensure(self.g_ut >= 0.0, || "leak flux must be nonnegative".into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Offtake {
    pub x: f64,
    pub g: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OfftakeSet(pub Vec<Offtake>);

impl OfftakeSet {
    pub fn new(items: &[(f64, f64)]) -> Self {
        Self(items.iter().map(|&(x, g)| Offtake { x, g }).collect())
    }

    pub fn total(&self) -> f64 {
        self.0.iter().map(|o| o.g).sum()
    }

    pub fn validate(&self, length: f64) -> Result<()> {
        for o in &self.0 {
            ensure((0.0..=length).contains(&o.x), || format!("offtake at {} outside [0, {length}]", o.x))?;
            ensure(o.g >= 0.0, || "offtake flux must be nonnegative".into())?;
        }
        Ok(())
    }

    /// Ring initial condition: offtakes must consume exactly the inflow.
    pub fn validate_ring_balance(&self, g0: f64) -> Result<()> {
        let total = self.total();
        ensure((total - g0).abs() <= 1e-9 * g0.abs().max(1e-300), || format!("offtakes sum to {total}, expected {g0}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesControl {
    pub n_terms: usize,
    pub tail_tol: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self { n_terms: 50, tail_tol: 1e-10 }
    }
}

impl SeriesControl {
    pub fn terms(n_terms: usize) -> Self {
        Self { n_terms: n_terms.max(1), ..Self::default() }
    }
}

/// Section tag carried by every sample of a [`PressureField`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Section {
    Whole,
    BeforeLeak,
    AfterLeak,
    First,
    Second,
    Third,
    Undamaged,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PressureField {
    pub xs: Vec<f64>,
    pub ts: Vec<f64>,
    /// `values[i][j]` is P(xs[i], ts[j]).
    pub values: Vec<Vec<f64>>,
    pub section_of_x: Vec<Section>,
}

impl PressureField {
    pub fn tabulate(
        xs: &[f64],
        ts: &[f64],
        section: impl Fn(f64) -> Section,
        mut f: impl FnMut(f64, f64) -> Result<f64>,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(xs.len());
        for &x in xs {
            let row = ts.iter().map(|&t| f(x, t)).collect::<Result<Vec<_>>>()?;
            values.push(row);
        }
        let field =
            Self { xs: xs.to_vec(), ts: ts.to_vec(), values, section_of_x: xs.iter().map(|&x| section(x)).collect() };
        field.validate()?;
        Ok(field)
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.values.len() == self.xs.len(), || "row count mismatch".into())?;
        ensure(self.section_of_x.len() == self.xs.len(), || "section tags mismatch".into())?;
        for row in &self.values {
            ensure(row.len() == self.ts.len(), || "column count mismatch".into())?;
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Numerical("non-finite pressure value".into()));
            }
        }
        Ok(())
    }

    pub fn get(&self, ix: usize, it: usize) -> f64 {
        self.values[ix][it]
    }
}

/// The single input record every solver entry point is built from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineScenario {
    pub gas: GasProperties,
    pub line: LineGeometry,
    pub lin: Linearization,
    pub steady: SteadyState,
    pub leaks: Vec<LeakEvent>,
    pub offtakes: OfftakeSet,
    pub valve_step: Option<f64>,
    pub series: SeriesControl,
}

impl PipelineScenario {
    pub fn validate(&self) -> Result<()> {
        self.gas.validate()?;
        self.line.validate()?;
        Linearization::new(self.lin.two_a)?;
        self.steady.validate(self.lin.two_a, self.line.length)?;
        for leak in &self.leaks {
            leak.validate(self.line.length)?;
        }
        self.offtakes.validate(self.line.length)?;
        ensure(self.series.n_terms >= 1, || "n_terms must be at least 1".into())
    }

    pub fn c(&self) -> f64 {
        self.gas.c
    }
    pub fn two_a(&self) -> f64 {
        self.lin.two_a
    }
    pub fn length(&self) -> f64 {
        self.line.length
    }
}

/// Isothermal sound speed sqrt(zRT).
pub fn sound_speed(z: f64, r: f64, t: f64) -> Result<f64> {
    ensure(z > 0.0 && r > 0.0 && t > 0.0, || format!("z, R, T must be positive (got {z}, {r}, {t})"))?;
    Ok((z * r * t).sqrt())
}

/// Charny coefficient 2a = λv/(2d).
pub fn charny_linearization(lambda_h: f64, v_mean: f64, d: f64) -> Result<f64> {
    ensure(d > 0.0, || format!("diameter must be positive, got {d}"))?;
    ensure(lambda_h >= 0.0 && v_mean >= 0.0, || "lambda_h and v_mean must be nonnegative".into())?;
    Ok(lambda_h * v_mean / (2.0 * d))
}

/// Mean velocity that produces a given 2a; inverse of [`charny_linearization`].
pub fn velocity_for_linearization(two_a: f64, lambda_h: f64, d: f64) -> Result<f64> {
    ensure(lambda_h > 0.0 && d > 0.0, || "lambda_h and d must be positive".into())?;
    Ok(two_a * 2.0 * d / lambda_h)
}

/// Linear stationary profile P(x) = P₁ − 2aG₀x.
pub fn steady_profile(steady: &SteadyState, two_a: f64, length: f64, x: f64) -> Result<f64> {
    ensure((0.0..=length).contains(&x), || format!("x = {x} outside [0, {length}]"))?;
    Ok(steady.p_start - two_a * steady.g0 * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sound_speed_identity_and_reference_value() {
        assert_eq!(sound_speed(1.0, 1.0, 1.0).unwrap(), 1.0);
        let c = sound_speed(0.9, 519.0, 288.0).unwrap();
        assert!((c - (0.9f64 * 519.0 * 288.0).sqrt()).abs() < 1e-12);
        assert!(GasProperties::with_sound_speed(383.3).is_ok());
        assert!(sound_speed(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn charny_coefficient() {
        assert_eq!(charny_linearization(0.0, 4.0, 0.7).unwrap(), 0.0);
        let two_a = charny_linearization(0.03, 4.67, 0.7).unwrap();
        assert!((two_a - 0.1001).abs() < 1e-4);
        assert!(charny_linearization(0.03, 4.0, 0.0).is_err());
    }

    #[test]
    fn steady_profile_reference_points() {
        let per_line = SteadyState { p_start: 55e4, p_end: None, g0: 15.0 };
        let p = steady_profile(&per_line, 0.1, 1e5, 25000.0).unwrap();
        assert!((p - 51.25e4).abs() < 1e-6);
        let single = SteadyState { p_start: 55e4, p_end: Some(25e4), g0: 30.0 };
        single.validate(0.1, 1e5).unwrap();
        assert!((steady_profile(&single, 0.1, 1e5, 1e5).unwrap() - 25e4).abs() < 1e-6);
        assert!(steady_profile(&single, 0.1, 1e5, 1.1e5).is_err());
    }

    #[test]
    fn inconsistent_end_pressure_rejected() {
        let s = SteadyState { p_start: 55e4, p_end: Some(30e4), g0: 30.0 };
        assert!(s.validate(0.1, 1e5).is_err());
    }

    #[test]
    fn unit_scales() {
        assert!((UnitScale::TenKiloPa.to_pa(52.23) - 522300.0).abs() < 1e-9);
        assert_eq!(UnitScale::CentiMegaPa.to_pa(1.0), 1e4);
        assert_eq!(UnitScale::Pa.from_pa(3.0), 3.0);
    }

    #[test]
    fn ring_balance() {
        let set = OfftakeSet::new(&[(3e3, 3.0), (1.5e4, 4.0), (2.7e4, 3.0)]);
        set.validate_ring_balance(10.0).unwrap();
        assert!(set.validate_ring_balance(11.0).is_err());
    }
}
