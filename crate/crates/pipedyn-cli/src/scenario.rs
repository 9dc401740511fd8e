//! Scenario files: JSON schema, validation and normalization to Pa.

use serde::{Deserialize, Serialize};

use pipedyn::model::{GasProperties, LeakEvent, OfftakeSet, SeriesControl, UnitScale};
use pipedyn::recon::EconomicParams;
use pipedyn::series::{BoundaryVariant, Pipe};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    PreClosure,
    Ring,
    Relief,
    CoupledFixedEnd,
    CoupledFixedStart,
    CoupledFluxBoth,
}

impl ModelKind {
    pub fn coupled_variant(self) -> Option<BoundaryVariant> {
        match self {
            ModelKind::CoupledFixedEnd => Some(BoundaryVariant::FixedEndPressure),
            ModelKind::CoupledFixedStart => Some(BoundaryVariant::FixedStartPressure),
            ModelKind::CoupledFluxBoth => Some(BoundaryVariant::FluxBothEnds),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GasSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
    #[serde(default, rename = "R", skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, rename = "T", skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineSection {
    #[serde(rename = "L")]
    pub length: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_mean: Option<f64>,
    #[serde(default = "one")]
    pub n_lines: u32,
    #[serde(default)]
    pub sin_alpha: f64,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SteadySection {
    pub p_start: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_end: Option<f64>,
    pub g0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeakSpec {
    pub ell2: f64,
    pub g_ut: f64,
    #[serde(default)]
    pub onset: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OfftakeSpec {
    pub x: f64,
    pub g: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventsSection {
    #[serde(default)]
    pub leaks: Vec<LeakSpec>,
    #[serde(default)]
    pub offtakes: Vec<OfftakeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valve_step: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesSection {
    #[serde(default = "default_terms")]
    pub n_terms: usize,
}

impl Default for SeriesSection {
    fn default() -> Self {
        Self { n_terms: default_terms() }
    }
}

fn default_terms() -> usize {
    50
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EconomicsSection {
    #[serde(default = "d_e")]
    pub e: f64,
    #[serde(default = "d_c_gas")]
    pub c_gas: f64,
    #[serde(default = "d_k_av")]
    pub k_av: f64,
    #[serde(default = "d_k_con")]
    pub k_con: f64,
    #[serde(default = "d_c_av")]
    pub c_av: f64,
    #[serde(default = "d_c_con")]
    pub c_con: f64,
    #[serde(default = "d_e_n")]
    pub e_n: f64,
    #[serde(default = "d_omega")]
    pub omega: f64,
    #[serde(default = "d_t_repair")]
    pub t_repair: f64,
    #[serde(default = "d_s_pc")]
    pub s_pc: f64,
}

fn d_e() -> f64 {
    EconomicParams::default().e
}
fn d_c_gas() -> f64 {
    EconomicParams::default().c_gas
}
fn d_k_av() -> f64 {
    EconomicParams::default().k_av
}
fn d_k_con() -> f64 {
    EconomicParams::default().k_con
}
fn d_c_av() -> f64 {
    EconomicParams::default().c_av
}
fn d_c_con() -> f64 {
    EconomicParams::default().c_con
}
fn d_e_n() -> f64 {
    EconomicParams::default().e_n
}
fn d_omega() -> f64 {
    EconomicParams::default().omega
}
fn d_t_repair() -> f64 {
    EconomicParams::default().t_repair
}
fn d_s_pc() -> f64 {
    EconomicParams::default().s_pc
}

impl EconomicsSection {
    pub fn params(&self) -> EconomicParams {
        EconomicParams {
            e: self.e,
            c_gas: self.c_gas,
            k_av: self.k_av,
            k_con: self.k_con,
            c_av: self.c_av,
            c_con: self.c_con,
            e_n: self.e_n,
            omega: self.omega,
            t_repair: self.t_repair,
            s_pc: self.s_pc,
        }
    }
}

/// Optional inputs for the reconstruction optimizers.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReconstructionSection {
    /// Pressure at the far end for the steady capacity, in scenario units.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth_b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loop_ell: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub economic_phi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub telescopic: Option<TelescopicSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compressor: Option<CompressorSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TelescopicSpec {
    pub lc_km: u32,
    pub s_p: f64,
    pub s_h: f64,
    pub k_tech: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompressorSpec {
    pub s0: f64,
    pub s1: f64,
    pub s2: f64,
    pub epsilon: f64,
    #[serde(default)]
    pub q: f64,
    pub q_bar: f64,
    pub alpha_reserve: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputsSection {
    #[serde(default = "d_x_points")]
    pub x_points: usize,
    #[serde(default = "d_t_points")]
    pub t_points: usize,
    #[serde(default = "d_t_start")]
    pub t_start: f64,
    #[serde(default = "d_t_end")]
    pub t_end: f64,
    /// Sampling step of the dispatch pipeline.
    #[serde(default = "d_sample_step")]
    pub sample_step: f64,
}

impl Default for OutputsSection {
    fn default() -> Self {
        Self {
            x_points: d_x_points(),
            t_points: d_t_points(),
            t_start: d_t_start(),
            t_end: d_t_end(),
            sample_step: d_sample_step(),
        }
    }
}

fn d_x_points() -> usize {
    11
}
fn d_t_points() -> usize {
    9
}
fn d_t_start() -> f64 {
    100.0
}
fn d_t_end() -> f64 {
    900.0
}
fn d_sample_step() -> f64 {
    20.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub units: UnitScale,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelKind>,
    pub gas: GasSection,
    pub line: LineSection,
    pub steady: SteadySection,
    #[serde(default)]
    pub events: EventsSection,
    #[serde(default)]
    pub series: SeriesSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub economics: Option<EconomicsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reconstruction: Option<ReconstructionSection>,
    #[serde(default)]
    pub outputs: OutputsSection,
}

#[derive(Debug)]
pub enum ScenarioError {
    /// Malformed JSON or schema violation, with line and column.
    Schema(String),
    Invalid(String),
}

impl std::fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScenarioError::Schema(m) => write!(f, "schema error: {m}"),
            ScenarioError::Invalid(m) => write!(f, "invalid scenario: {m}"),
        }
    }
}

impl std::error::Error for ScenarioError {}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        serde_json::from_str(text)
            .map_err(|e| ScenarioError::Schema(format!("line {} column {}: {e}", e.line(), e.column())))
    }

    /// Convert every pressure to Pa and fill derived and default fields, so
    /// the result is self-describing and idempotent under normalization.
    pub fn normalize(&self) -> Result<ScenarioFile, ScenarioError> {
        let bad = |m: String| ScenarioError::Invalid(m);
        let mut s = self.clone();
        let k = self.units.factor();
        s.units = UnitScale::Pa;
        s.steady.p_start *= k;
        s.steady.p_end = s.steady.p_end.map(|p| p * k);

        let c = match (self.gas.c, self.gas.z, self.gas.r, self.gas.t) {
            (Some(c), _, _, _) => c,
            (None, Some(z), Some(r), Some(t)) => pipedyn::sound_speed(z, r, t).map_err(|e| bad(format!("gas: {e}")))?,
            _ => return Err(bad("gas: give c or all of z, R, T".into())),
        };
        s.gas.c = Some(c);

        let two_a = match (self.line.two_a, self.line.lambda_h, self.line.v_mean, self.line.d) {
            (Some(v), _, _, _) => v,
            (None, Some(lam), Some(v), Some(d)) => {
                pipedyn::charny_linearization(lam, v, d).map_err(|e| bad(format!("line: {e}")))?
            }
            _ => return Err(bad("line: give two_a or lambda_h, v_mean and d".into())),
        };
        s.line.two_a = Some(two_a);
        if s.model.is_none() {
            s.model = Some(if !self.events.offtakes.is_empty() {
                ModelKind::Ring
            } else if self.line.sin_alpha != 0.0 {
                ModelKind::Relief
            } else {
                ModelKind::PreClosure
            });
        }
        if s.economics.is_none() && s.reconstruction.is_some() {
            s.economics = serde_json::from_str("{}").ok();
        }
        let n = NormalizedScenario::from_file(&s)?;
        n.validate()?;
        Ok(s)
    }
}

/// Scenario resolved into library types, all pressures in Pa.
#[derive(Debug, Clone)]
pub struct NormalizedScenario {
    pub file: ScenarioFile,
    pub model: ModelKind,
    pub pipe: Pipe,
    pub gas: GasProperties,
    pub leaks: Vec<LeakEvent>,
    pub offtakes: OfftakeSet,
    pub series: SeriesControl,
}

impl NormalizedScenario {
    fn from_file(s: &ScenarioFile) -> Result<Self, ScenarioError> {
        let c = s.gas.c.ok_or_else(|| ScenarioError::Invalid("gas.c missing".into()))?;
        let two_a = s.line.two_a.ok_or_else(|| ScenarioError::Invalid("line.two_a missing".into()))?;
        Ok(Self {
            file: s.clone(),
            model: s.model.unwrap_or(ModelKind::PreClosure),
            pipe: Pipe::new(s.line.length, c, two_a),
            gas: GasProperties { z: s.gas.z, r: s.gas.r, t: s.gas.t, c, rho: s.gas.rho },
            leaks: s.events.leaks.iter().map(|l| LeakEvent { ell2: l.ell2, g_ut: l.g_ut, onset: l.onset }).collect(),
            offtakes: OfftakeSet(s.events.offtakes.iter().map(|o| pipedyn::Offtake { x: o.x, g: o.g }).collect()),
            series: SeriesControl::terms(s.series.n_terms),
        })
    }

    pub fn load(text: &str) -> Result<Self, ScenarioError> {
        let file = ScenarioFile::parse(text)?.normalize()?;
        Self::from_file(&file)
    }

    fn validate(&self) -> Result<(), ScenarioError> {
        let bad = |m: String| ScenarioError::Invalid(m);
        self.gas.validate().map_err(|e| bad(format!("gas: {e}")))?;
        let l = self.pipe.length;
        if l.is_nan() || l <= 0.0 {
            return Err(bad("line.L must be positive".into()));
        }
        if self.pipe.two_a.is_nan() || self.pipe.two_a <= 0.0 {
            return Err(bad("line.two_a must be positive".into()));
        }
        if self.file.line.sin_alpha.abs() >= 1.0 {
            return Err(bad("line.sin_alpha must lie in (-1, 1)".into()));
        }
        let steady = pipedyn::SteadyState {
            p_start: self.file.steady.p_start,
            p_end: self.file.steady.p_end,
            g0: self.file.steady.g0,
        };
        steady.validate(self.pipe.two_a, l).map_err(|e| bad(format!("steady: {e}")))?;
        for (i, leak) in self.leaks.iter().enumerate() {
            leak.validate(l).map_err(|e| bad(format!("events.leaks[{i}]: {e}")))?;
        }
        self.offtakes.validate(l).map_err(|e| bad(format!("events.offtakes: {e}")))?;
        let o = &self.file.outputs;
        if o.x_points < 2 || o.t_points < 1 {
            return Err(bad("outputs: need at least 2 x points and 1 t point".into()));
        }
        if !(o.t_end >= o.t_start && o.t_start >= 0.0 && o.sample_step > 0.0) {
            return Err(bad("outputs: need 0 <= t_start <= t_end and sample_step > 0".into()));
        }
        if self.model == ModelKind::Ring {
            self.offtakes.validate_ring_balance(self.g0()).map_err(|e| bad(format!("events.offtakes: {e}")))?;
        }
        Ok(())
    }

    pub fn p_start(&self) -> f64 {
        self.file.steady.p_start
    }

    pub fn g0(&self) -> f64 {
        self.file.steady.g0
    }

    pub fn p_end(&self) -> f64 {
        self.p_start() - self.pipe.two_a * self.g0() * self.pipe.length
    }

    pub fn xs(&self, points: usize) -> Vec<f64> {
        linspace(0.0, self.pipe.length, points)
    }

    pub fn ts(&self, points: usize) -> Vec<f64> {
        let o = &self.file.outputs;
        linspace(o.t_start, o.t_end, points)
    }
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{
        "units": "1e4Pa",
        "gas": {"c": 383.3},
        "line": {"L": 100000, "two_a": 0.1},
        "steady": {"p_start": 55, "g0": 30},
        "events": {"leaks": [{"ell2": 50000, "g_ut": 30}]},
        "series": {"n_terms": 12}
    }"#;

    #[test]
    fn normalizes_units() {
        let n = NormalizedScenario::load(BASE).unwrap();
        assert_eq!(n.p_start(), 55e4);
        assert_eq!(n.model, ModelKind::PreClosure);
    }

    #[test]
    fn normalization_is_idempotent() {
        let once = ScenarioFile::parse(BASE).unwrap().normalize().unwrap();
        let text = serde_json::to_string_pretty(&once).unwrap();
        let twice = ScenarioFile::parse(&text).unwrap().normalize().unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = BASE.replace("\"two_a\": 0.1", "\"two_a\": 0.1, \"colour\": 1");
        match ScenarioFile::parse(&text) {
            Err(ScenarioError::Schema(m)) => assert!(m.contains("colour") && m.contains("line")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_unit_rejected() {
        let text = BASE.replace("1e4Pa", "bar");
        assert!(matches!(ScenarioFile::parse(&text), Err(ScenarioError::Schema(_))));
    }

    #[test]
    fn sound_speed_from_state() {
        let text = BASE.replace("\"c\": 383.3", "\"z\": 0.9, \"R\": 500, \"T\": 300");
        let n = NormalizedScenario::load(&text).unwrap();
        assert!((n.pipe.c - (0.9f64 * 500.0 * 300.0).sqrt()).abs() < 1e-9);
    }
}
