//! Steady capacity and the reconstruction optimizers: connector spacing,
//! looping length and diameter, telescopic reuse and compressor units.
//!
//! Every optimizer that has both a closed form and a brute-force answer
//! returns both, together with their deviation.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::model::GasProperties;
use crate::oracle::root_scan;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EconomicParams {
    /// Income per m³ delivered.
    pub e: f64,
    /// Cost per m³ lost.
    pub c_gas: f64,
    pub k_av: f64,
    pub k_con: f64,
    pub c_av: f64,
    pub c_con: f64,
    pub e_n: f64,
    /// Accidents per km per year.
    pub omega: f64,
    /// Repair duration in hours.
    pub t_repair: f64,
    /// Installed valve cost.
    pub s_pc: f64,
}

impl Default for EconomicParams {
    fn default() -> Self {
        Self {
            e: 1.2,
            c_gas: 300.0,
            k_av: 1500.0,
            k_con: 103.0,
            c_av: 145.5,
            c_con: 10.0,
            e_n: 0.12,
            omega: 0.04,
            t_repair: 6.0,
            s_pc: 150000.0,
        }
    }
}

impl EconomicParams {
    pub fn validate(&self) -> Result<()> {
        let all =
            [self.e, self.c_gas, self.k_av, self.k_con, self.c_av, self.c_con, self.omega, self.t_repair, self.s_pc];
        ensure(all.iter().all(|v| *v >= 0.0 && v.is_finite()), || "economic parameters must be nonnegative".into())?;
        ensure(self.e_n > 0.0 && self.e_n <= 1.0, || format!("e_n must lie in (0, 1], got {}", self.e_n))
    }

    /// Same parameters with every currency amount multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        Self {
            e: self.e * k,
            c_gas: self.c_gas * k,
            k_av: self.k_av * k,
            k_con: self.k_con * k,
            c_av: self.c_av * k,
            c_con: self.c_con * k,
            s_pc: self.s_pc * k,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WearState {
    pub f_phys: f64,
    pub m_moral: f64,
    pub alpha_t: f64,
    pub alpha_lambda: f64,
    pub k_tech: f64,
}

impl WearState {
    /// Wear state with K = α_λ·α_t·(1−F)(1−M) and α_t = 1 − F.
    pub fn from_wear(f_phys: f64, m_moral: f64, alpha_lambda: f64) -> Result<Self> {
        let w = Self {
            f_phys,
            m_moral,
            alpha_t: 1.0 - f_phys,
            alpha_lambda,
            k_tech: alpha_lambda * (1.0 - f_phys) * (1.0 - f_phys) * (1.0 - m_moral),
        };
        w.validate()?;
        Ok(w)
    }

    /// Wear state carrying only a directly supplied technical factor.
    pub fn with_factor(k_tech: f64) -> Self {
        Self { f_phys: 0.0, m_moral: 0.0, alpha_t: 1.0, alpha_lambda: 1.0, k_tech }
    }

    pub fn validate(&self) -> Result<()> {
        ensure((0.0..1.0).contains(&self.f_phys) && (0.0..1.0).contains(&self.m_moral), || {
            "wear fractions must lie in [0, 1)".into()
        })?;
        ensure(self.alpha_t > 0.0 && self.alpha_t <= 1.0, || "alpha_t must lie in (0, 1]".into())?;
        ensure(self.alpha_lambda > 0.0, || "alpha_lambda must be positive".into())?;
        ensure(self.k_tech > 0.0, || "technical factor must be positive".into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoopDesign {
    pub ell: f64,
    pub d_loop: f64,
    pub beta_cons: f64,
    pub beta0_cons: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompressorParams {
    pub s0: f64,
    pub s1: f64,
    pub s2: f64,
    pub epsilon: f64,
    pub q: f64,
    pub q_bar: f64,
    pub alpha_reserve: f64,
}

/// Steady throughput of `n_lines` identical parallel lines, in the pressure
/// unit of the inputs times s/m.
#[allow(clippy::too_many_arguments)]
pub fn steady_capacity(
    p_h: f64,
    p_k: f64,
    d: f64,
    lambda_h: f64,
    gas: &GasProperties,
    length: f64,
    n_lines: u32,
) -> Result<f64> {
    if !(p_h > p_k && p_k > 0.0) {
        return Err(Error::domain(format!("need p_h > p_k > 0, got {p_h} and {p_k}")));
    }
    ensure(d > 0.0 && lambda_h > 0.0 && length > 0.0 && n_lines > 0, || "d, lambda, L and n must be positive".into())?;
    let c2 = gas.c * gas.c;
    Ok(((p_h * p_h - p_k * p_k) * n_lines as f64 * d / (c2 * lambda_h)).sqrt() / length.sqrt())
}

/// Convert a mass flux in Pa·s/m through a bore of diameter `d` into m³/h.
pub fn mass_flux_to_hourly_volume(g: f64, d: f64, rho: f64) -> f64 {
    g * PI * d * d / 4.0 / rho * 3600.0
}

/// Throughput ratio of the rerouted three-line system to the intact one.
pub fn loop_transfer_ratio(length: f64, ell: f64) -> Result<f64> {
    ensure((0.0..=length).contains(&ell), || format!("ell = {ell} outside [0, L]"))?;
    Ok(((2.0 * length / (ell + length)).sqrt() + 1.0) / 3f64.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepEconomics {
    /// Annual cost of one reconstruction step.
    pub z: f64,
    /// Annual profit from uninterrupted supply.
    pub s_g: f64,
    pub phi: f64,
}

/// Cost per step, profit and their ratio. `q0` is in m³/h and `length` in km.
pub fn connector_step_economics(
    params: &EconomicParams,
    q0: f64,
    n_lines: u32,
    length_km: f64,
) -> Result<StepEconomics> {
    params.validate()?;
    ensure(n_lines > 0, || "n_lines must be positive".into())?;
    let z = params.e_n * (8.0 * params.k_av + 3.0 * params.k_con) + 8.0 * params.c_av + 3.0 * params.c_con;
    if z == 0.0 {
        return Err(Error::Singular("step cost is zero".into()));
    }
    let s_g = q0 * params.t_repair * params.e / n_lines as f64 * params.omega * length_km;
    Ok(StepEconomics { z, s_g, phi: s_g / z })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConnectorStep {
    pub mu: f64,
    pub eta: f64,
    pub xi: f64,
    pub angle: f64,
    /// Closed-form step length.
    pub ell: f64,
    /// Root of the balance equation between profit and step cost.
    pub ell_balance: Option<f64>,
    /// |closed form − balance root| / balance root.
    pub deviation: Option<f64>,
}

/// Balance between profit ratio and cost per step, zero at the optimum.
pub fn connector_balance_residual(length: f64, phi_econ: f64, ell: f64) -> f64 {
    (2.0 * length / (3.0 * ell + 3.0 * length) + 1.0 / 3f64.sqrt()).sqrt() * phi_econ - length / ell
}

pub fn optimal_connector_step(length: f64, phi_econ: f64) -> Result<ConnectorStep> {
    ensure(phi_econ > 0.0, || format!("phi must be positive, got {phi_econ}"))?;
    let s3 = 3f64.sqrt();
    let disc = (1.0 / phi_econ - 5.0 / s3).powi(2) - 8.0;
    if disc < 0.0 {
        return Err(Error::infeasible(format!("negative discriminant {disc} for phi = {phi_econ}")));
    }
    let mu = disc.sqrt();
    let eta = 9.0 * s3 / phi_econ * (3.0 / (phi_econ * phi_econ) + 1.0) - (2.0 * s3 / phi_econ - 1.0).powi(3);
    let xi = eta / (3.0 * s3 * mu);
    let angle = xi.asinh();
    let ell = 2.0 * length / s3 * (mu * (angle / 3.0).sinh() - 1.0 / phi_econ + 1.0 / (2.0 * s3));
    let ell_balance =
        root_scan(|l| connector_balance_residual(length, phi_econ, l), 1e-6 * length, length, 1e-6, 4000).ok();
    let deviation = ell_balance.map(|b| ((ell - b) / b).abs());
    Ok(ConnectorStep { mu, eta, xi, angle, ell, ell_balance, deviation })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossConstants {
    pub rho: f64,
    pub t_m: f64,
    pub t0: f64,
    pub p0: f64,
    pub gravity: f64,
}

impl Default for LossConstants {
    fn default() -> Self {
        Self { rho: 0.73, t_m: 323.0, t0: 293.0, p0: 1e4, gravity: 9.81 }
    }
}

/// Inputs of the post-accident gas loss balance. Pressures in kg/m².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossInputs {
    pub t1: f64,
    pub p_b: f64,
    pub p_s: f64,
    pub g0: f64,
    pub two_a: f64,
    pub length: f64,
    pub ell2: f64,
    pub d: f64,
    /// Mean pressure; computed from `p_b` and `p_s` when absent.
    pub p_m: Option<f64>,
    pub constants: LossConstants,
}

impl LossInputs {
    pub fn mean_pressure(&self) -> f64 {
        self.p_m.unwrap_or_else(|| mean_pressure(self.p_b, self.p_s))
    }

    fn leak_term(&self) -> Result<f64> {
        let off = self.ell2 - self.length / 2.0;
        if off == 0.0 {
            return Err(Error::Singular("leak at the midpoint leaves the end drops symmetric".into()));
        }
        Ok((self.p_b - self.p_s - self.two_a * self.g0 * self.length) / off)
    }
}

/// P_m = (2/3)(P_b + P_s²/(P_b + P_s)).
pub fn mean_pressure(p_b: f64, p_s: f64) -> f64 {
    2.0 / 3.0 * (p_b + p_s * p_s / (p_b + p_s))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GasLoss {
    pub g_ut: f64,
    /// Lost from the leak point until closure.
    pub q1: f64,
    /// Lost from the isolated section of length `ell`.
    pub q2: f64,
}

pub fn emergency_gas_loss(inp: &LossInputs, ell: f64) -> Result<GasLoss> {
    ensure(inp.two_a > 0.0 && inp.d > 0.0, || "2a and d must be positive".into())?;
    ensure(ell >= 0.0, || "ell must be nonnegative".into())?;
    let k = &inp.constants;
    let g_ut = inp.leak_term()? / inp.two_a;
    let area = PI * inp.d * inp.d / 4.0;
    let q1 = area * k.gravity * inp.t1 * g_ut / k.rho;
    let q2 = area * ell * inp.mean_pressure() / k.p0 * k.t_m / k.t0;
    Ok(GasLoss { g_ut, q1, q2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossSpacing {
    pub ell: f64,
    /// Smallest whole metre at which the valve cost no longer exceeds the
    /// recoverable loss.
    pub ell_grid: Option<f64>,
}

/// Valve spacing that balances valve cost against recoverable gas loss.
pub fn loss_based_spacing(inp: &LossInputs, econ: &EconomicParams) -> Result<LossSpacing> {
    ensure(econ.s_pc > 0.0 && econ.c_gas > 0.0, || "valve cost and gas price must be positive".into())?;
    let p_m = inp.mean_pressure();
    ensure(p_m > 0.0, || "mean pressure must be positive".into())?;
    let off = inp.ell2 - inp.length / 2.0;
    if off == 0.0 {
        return Err(Error::Singular("leak at the midpoint".into()));
    }
    let loss = 113.6 * (inp.t1 * inp.p_b - inp.p_s - 0.1 * inp.g0 * inp.length) / (p_m * off);
    let cost = 10767.0 / p_m * econ.s_pc / (econ.c_gas * inp.d * inp.d);
    let ell = cost - loss;
    if ell < 0.0 {
        return Err(Error::infeasible(format!("valve cost exceeds recoverable loss (ell = {ell})")));
    }
    // recoverable value as a function of spacing, in the same folded units
    let value = |l: f64| econ.c_gas * inp.d * inp.d * p_m / 10767.0 * (l + loss);
    let limit = (ell.ceil() as i64 + 10).max(10);
    let ell_grid = (0..=limit).map(|m| m as f64).find(|&l| econ.s_pc <= value(l) * (1.0 + 1e-12));
    Ok(LossSpacing { ell, ell_grid })
}

/// ℓ = 4L(b²−1)/(3b²).
pub fn looping_length_for_demand(length: f64, b: f64) -> Result<f64> {
    ensure(b >= 1.0, || format!("growth factor must be at least 1, got {b}"))?;
    Ok(4.0 * length * (b * b - 1.0) / (3.0 * b * b))
}

/// α = sqrt((L+ℓ)/L).
pub fn capacity_ratio(length: f64, ell: f64) -> Result<f64> {
    ensure(ell >= 0.0 && length > 0.0, || "need ell >= 0 and L > 0".into())?;
    Ok(((length + ell) / length).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Clamped {
    pub value: f64,
    pub raw: f64,
    pub clamped: bool,
}

/// ℓ = L(2φ−1)/φ², clamped to the line.
pub fn economic_looping_length(length: f64, phi_ratio: f64) -> Result<Clamped> {
    ensure(phi_ratio > 0.0, || format!("phi must be positive, got {phi_ratio}"))?;
    let raw = length * (2.0 * phi_ratio - 1.0) / (phi_ratio * phi_ratio);
    let value = raw.clamp(0.0, length);
    Ok(Clamped { value, raw, clamped: value != raw })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoopDiameter {
    pub beta: f64,
    pub d_loop: f64,
    /// Q_ℓ²/Q₀² in the quadratic friction zone.
    pub quadratic_ratio: f64,
}

pub fn optimal_loop_diameter(d: f64, length: f64, ell: f64) -> Result<LoopDiameter> {
    ensure(d > 0.0 && length > 0.0 && ell > 0.0, || "D, L and ell must be positive".into())?;
    if ell <= 0.75 * length {
        return Err(Error::infeasible(format!("ell = {ell} must exceed 3L/4")));
    }
    let quadratic_ratio = 1.0 - 3.0 * length / (4.0 * ell);
    let beta = length / ell * (1.0 - 1.0 / quadratic_ratio);
    if beta <= 0.0 {
        return Err(Error::infeasible(format!("resistance coefficient {beta} is not positive")));
    }
    Ok(LoopDiameter { beta, d_loop: d * beta.powf(-0.2), quadratic_ratio })
}

/// Q_ℓ/Q₀ for a loop with consumption coefficient `beta` on a line with `beta0`.
pub fn consumption_capacity_ratio(length: f64, ell: f64, beta0: f64, beta: f64) -> Result<f64> {
    ensure(beta0 > 0.0 && beta >= 0.0, || "consumption coefficients must be positive".into())?;
    ensure((0.0..=length).contains(&ell), || "ell outside [0, L]".into())?;
    let r = beta0 / (beta0 + beta);
    Ok((1.0 - ell / length * (1.0 - r * r)).sqrt())
}

/// Diameter ratio D_ℓ/D₀ from β² = (D₀/D_ℓ)⁵.
pub fn loop_diameter_ratio(beta: f64) -> f64 {
    beta.powf(-0.4)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TelescopicReuse {
    /// (reused length km, cost) on the 1 km grid.
    pub curve: Vec<(u32, f64)>,
    /// Same costs in tenths of a currency unit when every input is a whole
    /// number of tenths.
    pub curve_tenths: Option<Vec<i64>>,
    pub lp_formula: f64,
    pub lp_bruteforce: u32,
    pub lp_stationary: f64,
    pub deviation: f64,
}

fn whole_tenths(v: f64) -> Option<i64> {
    let t = (v * 10.0).round();
    ((v * 10.0 - t).abs() < 1e-9).then_some(t as i64)
}

/// Cost of reusing `lp` of `lc` km: S_p·Lp² + S_H·(Lc−Lp)²·K.
pub fn telescopic_cost(lc: f64, s_p: f64, s_h: f64, k: f64, lp: f64) -> f64 {
    s_p * lp * lp + s_h * (lc - lp) * (lc - lp) * k
}

pub fn telescopic_reuse(lc: u32, s_p: f64, s_h: f64, wear: &WearState) -> Result<TelescopicReuse> {
    ensure(s_p > 0.0 && s_h > 0.0, || "cost rates must be positive".into())?;
    ensure(wear.k_tech > 0.0, || "technical factor must be positive".into())?;
    let k = wear.k_tech;
    let lcf = lc as f64;
    let curve: Vec<(u32, f64)> = (0..=lc).map(|lp| (lp, telescopic_cost(lcf, s_p, s_h, k, lp as f64))).collect();
    let curve_tenths = match (whole_tenths(s_p), whole_tenths(s_h), whole_tenths(k)) {
        (Some(sp), Some(sh), Some(kt)) if sp % 10 == 0 && sh % 10 == 0 => {
            let (sp, sh, lc) = (sp / 10, sh / 10, lc as i64);
            Some((0..=lc).map(|lp| 10 * sp * lp * lp + sh * (lc - lp) * (lc - lp) * kt).collect::<Vec<i64>>())
        }
        _ => None,
    };
    let lp_bruteforce = match &curve_tenths {
        Some(c) => c.iter().enumerate().min_by_key(|(_, v)| **v).map(|(i, _)| i as u32).unwrap_or(0),
        None => curve.iter().fold((0u32, f64::INFINITY), |b, &(lp, v)| if v < b.1 { (lp, v) } else { b }).0,
    };
    let lp_formula = lcf / (1.0 + s_p / (2.0 * s_h * k));
    let lp_stationary = s_h * k * lcf / (s_p + s_h * k);
    Ok(TelescopicReuse {
        curve,
        curve_tenths,
        lp_formula,
        lp_bruteforce,
        lp_stationary,
        deviation: lp_formula - lp_bruteforce as f64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompressorUnits {
    pub n: Option<f64>,
    /// No positive root exists because the reserve is zero and n = 0 solves.
    pub degenerate: bool,
}

/// F(n) = (S₀+S₁ε)n^{2/3} + ½S₂√Q̄(n−α).
pub fn compressor_balance(p: &CompressorParams, n: f64) -> f64 {
    (p.s0 + p.s1 * p.epsilon) * n.powf(2.0 / 3.0) + 0.5 * p.s2 * p.q_bar.sqrt() * (n - p.alpha_reserve)
}

pub fn compressor_units(p: &CompressorParams) -> Result<CompressorUnits> {
    ensure(p.s1 > 0.0, || "S1 must be positive".into())?;
    ensure(p.q_bar >= 0.0 && p.alpha_reserve >= 0.0, || "capacity and reserve must be nonnegative".into())?;
    if p.epsilon < p.s0 / p.s1 {
        return Err(Error::infeasible(format!("compression ratio {} is below S0/S1 = {}", p.epsilon, p.s0 / p.s1)));
    }
    if p.alpha_reserve == 0.0 {
        return Ok(CompressorUnits { n: None, degenerate: true });
    }
    let hi = p.alpha_reserve.max(1.0) * 2.0;
    let n = root_scan(|n| compressor_balance(p, n), 1e-12, hi, 1e-10, 2000)?;
    Ok(CompressorUnits { n: Some(n), degenerate: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_line_capacity() {
        let gas = GasProperties::with_sound_speed(383.3).unwrap();
        let q = steady_capacity(2.0, 0.85, 0.5, 0.03, &gas, 40000.0, 3).unwrap();
        assert!((q - 0.167e-3).abs() < 0.001e-3, "{q}");
        let hourly = mass_flux_to_hourly_volume(q * 1e6, 0.5, 0.73);
        assert!((hourly - 161028.0).abs() / 161028.0 < 0.005, "{hourly}");
        let one = steady_capacity(2.0, 0.85, 0.5, 0.03, &gas, 40000.0, 1).unwrap();
        assert!((q / one - 3f64.sqrt()).abs() < 1e-12);
        assert!(steady_capacity(1.0, 1.0, 0.5, 0.03, &gas, 1.0, 1).is_err());
    }

    #[test]
    fn transfer_ratio_limits() {
        let a = loop_transfer_ratio(1.0, 0.0).unwrap();
        assert!((a - (2f64.sqrt() + 1.0) / 3f64.sqrt()).abs() < 1e-12);
        let b = loop_transfer_ratio(1.0, 1.0).unwrap();
        assert!((b - 2.0 / 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn step_economics_worked() {
        let e = connector_step_economics(&EconomicParams::default(), 161028.0, 3, 40.0).unwrap();
        assert!((e.s_g - 618348.0).abs() <= 1.0, "{}", e.s_g);
        assert!((e.z - 2671.08).abs() < 1e-9);
        let zero = EconomicParams { omega: 0.0, ..Default::default() };
        assert_eq!(connector_step_economics(&zero, 161028.0, 3, 40.0).unwrap().s_g, 0.0);
    }

    #[test]
    fn connector_step_coefficients() {
        let s = optimal_connector_step(40000.0, 232.55).unwrap();
        assert!((s.mu - 0.555).abs() < 0.002);
        assert!((s.eta - 1.023).abs() < 0.001);
        assert!((s.xi - 0.355).abs() < 0.002);
        assert!(s.ell_balance.is_some());
    }

    #[test]
    fn looping_formulas() {
        assert!((looping_length_for_demand(50000.0, 1.2).unwrap() - 20370.37).abs() < 0.01);
        assert_eq!(looping_length_for_demand(50000.0, 1.0).unwrap(), 0.0);
        assert!((capacity_ratio(100.0, 20.0).unwrap() - 1.0954).abs() < 1e-4);
        assert_eq!(economic_looping_length(1.0, 1.0).unwrap().value, 1.0);
        assert_eq!(economic_looping_length(1.0, 0.5).unwrap().value, 0.0);
        assert_eq!(economic_looping_length(4.0, 2.0).unwrap().value, 3.0);
        assert!(optimal_loop_diameter(1.0, 100.0, 50.0).is_err());
        assert!(optimal_loop_diameter(1.0, 100.0, 90.0).is_err());
    }

    #[test]
    fn telescopic_table() {
        let r = telescopic_reuse(10, 80.0, 150.0, &WearState::with_factor(0.2)).unwrap();
        let t = r.curve_tenths.as_ref().unwrap();
        assert_eq!((t[0], t[3], t[10]), (30000, 21900, 80000));
        assert_eq!(r.lp_bruteforce, 3);
        assert!((r.lp_formula - 4.2857).abs() < 1e-3);
        assert!((r.lp_stationary - 30.0 / 11.0).abs() < 1e-12);
    }

    #[test]
    fn compressor_roots() {
        let mut p =
            CompressorParams { s0: 1.0, s1: 2.0, s2: 1.0, epsilon: 1.4, q: 1.0, q_bar: 4.0, alpha_reserve: 2.0 };
        let n = compressor_units(&p).unwrap().n.unwrap();
        assert!(compressor_balance(&p, n).abs() < 1e-8);
        p.alpha_reserve = 0.0;
        assert!(compressor_units(&p).unwrap().degenerate);
        p.epsilon = 0.1;
        assert!(compressor_units(&p).unwrap_err().is_infeasible());
    }

    #[test]
    fn gas_loss_midpoint_blind() {
        let inp = LossInputs {
            t1: 300.0,
            p_b: 5.381e4,
            p_s: 3.41e4,
            g0: 3.0,
            two_a: 0.1,
            length: 1e5,
            ell2: 5e4,
            d: 0.7,
            p_m: None,
            constants: LossConstants::default(),
        };
        assert!(matches!(emergency_gas_loss(&inp, 1000.0), Err(Error::Singular(_))));
        let inp = LossInputs { ell2: 7500.0, ..inp };
        let a = emergency_gas_loss(&inp, 1000.0).unwrap();
        let b = emergency_gas_loss(&inp, 2000.0).unwrap();
        assert!((b.q2 - 2.0 * a.q2).abs() < 1e-9 * b.q2);
    }
}
