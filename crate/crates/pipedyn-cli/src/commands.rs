//! Subcommand bodies. Each returns the bytes of its primary output so runs
//! can be compared byte for byte.

use std::fmt;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use pipedyn::dispatch::{
    analyze_ratio_series, classify_regime, connector_opening_time, pressure_drop_ratio, CompressionGuard,
    DispatchDecision, DispatchEvent, EmergencySequencer, LogEntry, PRatio, ValvePlan,
};
use pipedyn::recon::{
    capacity_ratio, compressor_units, connector_step_economics, economic_looping_length, looping_length_for_demand,
    mass_flux_to_hourly_volume, optimal_connector_step, steady_capacity, telescopic_reuse, CompressorParams, WearState,
};
use pipedyn::series::{
    coupled_parallel_field, pre_closure_field, relief_field, ring_field, CoupledParallel, CoupledSection, PreClosure,
    ReliefLine, RingLine,
};
use pipedyn::STANDARD_GRAVITY;

use crate::scenario::{ModelKind, NormalizedScenario, ScenarioError, ScenarioFile};
use crate::verify;

/// Density used for volume conversions when the scenario gives none.
pub const DEFAULT_RHO: f64 = 0.73;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Infeasible(String),
    VerifyFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::VerifyFailed(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Infeasible(m) => f.write_str(m),
            CliError::VerifyFailed(n) => write!(f, "verification failed: {n} check(s)"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ScenarioError> for CliError {
    fn from(e: ScenarioError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<pipedyn::Error> for CliError {
    fn from(e: pipedyn::Error) -> Self {
        if e.is_infeasible() {
            CliError::Infeasible(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn load_scenario(path: &std::path::Path) -> CliResult<NormalizedScenario> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(NormalizedScenario::load(&text)?)
}

/// Pretty JSON of the normalized scenario, newline terminated.
pub fn dump_normalized(s: &NormalizedScenario) -> String {
    let mut text = serde_json::to_string_pretty(&s.file).expect("scenario serializes");
    text.push('\n');
    text
}

/// Re-parse a dump and normalize it again.
pub fn reload_normalized(text: &str) -> CliResult<ScenarioFile> {
    Ok(ScenarioFile::parse(text)?.normalize()?)
}

/// Analytic field of the scenario's model, on the damaged line for the
/// coupled variants.
pub enum Model {
    Pre(PreClosure),
    Ring(RingLine),
    Relief(ReliefLine),
    Coupled(pipedyn::series::BoundaryVariant, CoupledParallel),
}

impl Model {
    pub fn from_scenario(s: &NormalizedScenario) -> CliResult<Self> {
        let leak = s.leaks.first().copied();
        let need_leak = || CliError::Input(format!("model {:?} needs a leak", s.model));
        Ok(match s.model {
            ModelKind::PreClosure => Model::Pre(PreClosure {
                pipe: s.pipe,
                p_start: s.p_start(),
                g0: s.g0(),
                leak: leak.ok_or_else(need_leak)?,
                series: s.series,
            }),
            ModelKind::Ring => Model::Ring(RingLine {
                pipe: s.pipe,
                p_start: s.p_start(),
                g0: s.g0(),
                offtakes: s.offtakes.clone(),
                leak,
                series: s.series,
            }),
            ModelKind::Relief => {
                let leak = leak.ok_or_else(need_leak)?;
                Model::Relief(ReliefLine {
                    pipe: s.pipe,
                    p_h: s.p_start(),
                    g_ut: leak.g_ut,
                    ell: leak.ell2,
                    sin_alpha: s.file.line.sin_alpha,
                    gravity: STANDARD_GRAVITY,
                })
            }
            kind => {
                let leak = leak.ok_or_else(need_leak)?;
                let variant = kind.coupled_variant().expect("coupled kind");
                Model::Coupled(
                    variant,
                    CoupledParallel {
                        pipe: s.pipe,
                        p_start: s.p_start(),
                        g0_line: s.g0(),
                        ell2: leak.ell2,
                        g_ut: leak.g_ut,
                        series: s.series,
                    },
                )
            }
        })
    }

    pub fn eval(&self, x: f64, t: f64) -> pipedyn::Result<f64> {
        match self {
            Model::Pre(m) => pre_closure_field(m, x, t),
            Model::Ring(m) => ring_field(m, x, t),
            Model::Relief(m) => relief_field(m, x, t),
            Model::Coupled(v, m) => {
                let section =
                    if x <= m.ell2 { CoupledSection::DamagedBeforeLeak } else { CoupledSection::DamagedAfterLeak };
                coupled_parallel_field(*v, m, section, x, t)
            }
        }
    }

    /// Stationary pressure before the event, None for the ring.
    pub fn steady(&self, x: f64) -> Option<f64> {
        match self {
            Model::Pre(m) => Some(m.p_start - m.pipe.two_a * m.g0 * x),
            Model::Relief(m) => Some(m.p_h),
            Model::Coupled(_, m) => Some(m.steady(x)),
            Model::Ring(_) => None,
        }
    }
}

fn parse_grid(spec: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Input(format!("grid must look like 13x9, got {spec:?}"));
    let (a, b) = spec.split_once(['x', 'X']).ok_or_else(bad)?;
    let nx: usize = a.trim().parse().map_err(|_| bad())?;
    let nt: usize = b.trim().parse().map_err(|_| bad())?;
    if nx < 1 || nt < 1 {
        return Err(bad());
    }
    Ok((nx, nt))
}

/// `x_m,t_s,P_Pa` rows, x-major.
pub fn simulate(s: &NormalizedScenario, grid: Option<&str>) -> CliResult<String> {
    let (nx, nt) = match grid {
        Some(g) => parse_grid(g)?,
        None => (s.file.outputs.x_points, s.file.outputs.t_points),
    };
    let model = Model::from_scenario(s)?;
    let xs = s.xs(nx);
    let ts = s.ts(nt);
    let rows: Vec<CliResult<String>> = xs
        .par_iter()
        .map(|&x| {
            let mut block = String::new();
            for &t in &ts {
                let p = model.eval(x, t)?;
                writeln!(block, "{x},{t},{p}").expect("write to string");
            }
            Ok(block)
        })
        .collect();
    let mut out = String::from("x_m,t_s,P_Pa\n");
    for r in rows {
        out.push_str(&r?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct DispatchOutput {
    pub csv: String,
    pub decision: DispatchDecision,
    pub log: Vec<LogEntry>,
}

fn sample_times(s: &NormalizedScenario) -> Vec<f64> {
    let o = &s.file.outputs;
    let first = if o.t_start > 0.0 { o.t_start } else { o.sample_step };
    let n = ((o.t_end - first) / o.sample_step + 1e-9).floor().max(0.0) as usize;
    (0..=n).map(|k| first + k as f64 * o.sample_step).collect()
}

/// Ratio series, decision record and sequencer log for a line scenario.
pub fn dispatch(s: &NormalizedScenario, guard: CompressionGuard) -> CliResult<DispatchOutput> {
    let model = Model::from_scenario(s)?;
    let l = s.pipe.length;
    let (p1, p2) = match (model.steady(0.0), model.steady(l)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(CliError::Input("dispatch needs a line model, not a ring".into())),
    };
    let (two_a, c) = (s.pipe.two_a, s.pipe.c);
    let ts = sample_times(s);
    let series: Vec<CliResult<(f64, PRatio)>> = ts
        .par_iter()
        .map(|&t| {
            let p0 = model.eval(0.0, t)?;
            let pl = model.eval(l, t)?;
            Ok((t, pressure_drop_ratio(p1, p0, p2, pl)))
        })
        .collect();
    let series = series.into_iter().collect::<CliResult<Vec<_>>>()?;

    let mut csv = String::from("t_s,p_ratio,regime\n");
    for &(t, p) in &series {
        match p.value() {
            Some(v) => {
                let regime = classify_regime(v, t, l, two_a, c)?;
                writeln!(csv, "{t},{v},{}", regime.label()).expect("write to string");
            }
            None => writeln!(csv, "{t},,pending").expect("write to string"),
        }
    }

    let mut decision = analyze_ratio_series(&series, l, two_a, c)?;
    let mut log = Vec::new();
    if let (Some(t1), Some(ell2), Some(step)) = (decision.t1, decision.ell2_estimate, s.file.events.valve_step) {
        if step.is_nan() || step <= 0.0 {
            return Err(CliError::Input("events.valve_step must be positive".into()));
        }
        let ell1 = ((ell2 / step).floor() * step).min(l - step).max(0.0);
        let ell3 = ell1 + step;
        let p0_t1 = model.eval(0.0, t1)?;
        let t2 = connector_opening_time(t1, ell1, s.g0(), guard, p1, p0_t1, two_a, c)?;
        decision.valve_plan = Some(ValvePlan { ell1, ell3, t2 });
        let p = decision.p_series.iter().find(|e| e.0 == t1).and_then(|e| e.1.value()).unwrap_or(f64::NAN);
        let event =
            DispatchEvent::Fixation { t: t1, regime: decision.regime, p, ell1, ell3, p_ell1: model.eval(ell1, t1)? };
        log = EmergencySequencer::run(p1, guard, &[event])?;
    }
    decision.validate()?;
    Ok(DispatchOutput { csv, decision, log })
}

pub fn log_csv(log: &[LogEntry]) -> String {
    let mut out = String::from("t_s,action,param1,param2\n");
    for e in log {
        let (a, b) = e.action.params();
        writeln!(out, "{},{},{a},{b}", e.t, e.action.name()).expect("write to string");
    }
    out
}

/// `name,value,units` rows for every optimizer the scenario has inputs for.
pub fn optimize(s: &NormalizedScenario) -> CliResult<String> {
    let mut rows: Vec<(String, f64, &str)> = Vec::new();
    let line = &s.file.line;
    let n_lines = line.n_lines;
    let mut q0 = None;
    if let (Some(d), Some(lambda), Some(p_end)) = (line.d, line.lambda_h, s.file.steady.p_end) {
        let g = steady_capacity(s.p_start(), p_end, d, lambda, &s.gas, s.pipe.length, n_lines)?;
        let q = mass_flux_to_hourly_volume(g, d, s.gas.rho.unwrap_or(DEFAULT_RHO));
        rows.push(("capacity_flux".into(), g, "Pa*s/m"));
        rows.push(("capacity_q0".into(), q, "m3/h"));
        q0 = Some(q);
    }
    if let (Some(econ), Some(q0)) = (&s.file.economics, q0) {
        let params = econ.params();
        let step = connector_step_economics(&params, q0, n_lines, s.pipe.length / 1e3)?;
        rows.push(("step_cost_z".into(), step.z, "currency/km"));
        rows.push(("step_loss_s_g".into(), step.s_g, "currency"));
        rows.push(("step_phi".into(), step.phi, "1"));
        let cs = optimal_connector_step(s.pipe.length, step.phi)?;
        rows.push(("connector_step".into(), cs.ell, "m"));
        if let Some(b) = cs.ell_balance {
            rows.push(("connector_step_balance_root".into(), b, "m"));
        }
    }
    if let Some(rec) = &s.file.reconstruction {
        if let Some(b) = rec.growth_b {
            rows.push(("looping_length".into(), looping_length_for_demand(s.pipe.length, b)?, "m"));
        }
        if let Some(ell) = rec.loop_ell {
            rows.push(("capacity_ratio".into(), capacity_ratio(s.pipe.length, ell)?, "1"));
        }
        if let Some(phi) = rec.economic_phi {
            let c = economic_looping_length(s.pipe.length, phi)?;
            rows.push(("economic_looping_length".into(), c.value, "m"));
            rows.push(("economic_looping_length_raw".into(), c.raw, "m"));
        }
        if let Some(t) = &rec.telescopic {
            let tr = telescopic_reuse(t.lc_km, t.s_p, t.s_h, &WearState::with_factor(t.k_tech))?;
            rows.push(("telescopic_reuse_bruteforce".into(), f64::from(tr.lp_bruteforce), "km"));
            rows.push(("telescopic_reuse_formula".into(), tr.lp_formula, "km"));
            rows.push(("telescopic_reuse_stationary".into(), tr.lp_stationary, "km"));
            rows.push(("telescopic_reuse_deviation".into(), tr.deviation, "km"));
        }
        if let Some(cp) = &rec.compressor {
            let p = CompressorParams {
                s0: cp.s0,
                s1: cp.s1,
                s2: cp.s2,
                epsilon: cp.epsilon,
                q: cp.q,
                q_bar: cp.q_bar,
                alpha_reserve: cp.alpha_reserve,
            };
            let units = compressor_units(&p)?;
            match units.n {
                Some(n) => rows.push(("compressor_units".into(), n, "1")),
                None => rows.push(("compressor_units_degenerate".into(), 1.0, "1")),
            }
        }
    }
    if rows.is_empty() {
        return Err(CliError::Input(
            "nothing to optimize: give line.d, line.lambda_h and steady.p_end, or a reconstruction section".into(),
        ));
    }
    let mut out = String::from("name,value,units\n");
    for (name, value, units) in rows {
        writeln!(out, "{name},{value},{units}").expect("write to string");
    }
    Ok(out)
}

/// Regenerated table as `cell,computed_Pa,reference_Pa,rel_dev`, plus the
/// register exclusions as notes.
pub fn tables(id: &str) -> CliResult<(String, Vec<String>)> {
    let data = verify::table_data(id)
        .ok_or_else(|| CliError::Input(format!("unknown table {id:?}; known: {}", verify::TABLE_IDS.join(", "))))??;
    let mut out = String::from("cell,computed_Pa,reference_Pa,rel_dev\n");
    for (label, got, want) in &data.cells {
        let dev = ((got - want) / want).abs();
        writeln!(out, "{label},{got},{want},{dev}").expect("write to string");
    }
    let notes = data.excluded.iter().map(|(cell, why)| format!("excluded {cell} [{why}]")).collect();
    Ok((out, notes))
}

/// Matrix text and the number of failed checks.
pub fn verify(criterion: Option<u8>) -> CliResult<(String, usize)> {
    let checks = match criterion {
        Some(n) if (1..=10).contains(&n) => verify::run_criterion(n),
        Some(n) => return Err(CliError::Input(format!("no criterion {n}; use 1..10"))),
        None => verify::run_all(),
    };
    let failed = checks.iter().filter(|c| c.status == verify::Status::Fail).count();
    Ok((verify::report(&checks), failed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("13x9").unwrap(), (13, 9));
        assert_eq!(parse_grid("2X3").unwrap(), (2, 3));
        assert!(parse_grid("13").is_err());
        assert!(parse_grid("0x3").is_err());
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::from(pipedyn::Error::Infeasible("x".into())).exit_code(), 3);
        assert_eq!(CliError::from(pipedyn::Error::Domain("x".into())).exit_code(), 2);
        assert_eq!(CliError::VerifyFailed(1).exit_code(), 4);
    }
}
