//! Independent verifiers: a Crank–Nicolson solver for the linearized
//! transient equation and brute-force 1-D scanners.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::model::{PressureField, Section};

/// Boundary condition at one end of the FD domain. Flux is positive in the
/// +x direction, so a metered inflow at the start and a metered outflow at
/// the end are both positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Boundary {
    FixedPressure(f64),
    FixedFlux(f64),
    RingClosure,
}

/// Point source; positive `g` withdraws gas (leak, offtake), negative injects.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointSource {
    pub x: f64,
    pub g: f64,
}

pub struct FdSetup {
    pub x_start: f64,
    pub x_end: f64,
    pub nx: usize,
    pub dt: f64,
    pub t_end: f64,
    pub c: f64,
    pub two_a: f64,
    /// First-derivative coefficient k₁ of P_xx − k₁P_x (incline).
    pub k1: f64,
    pub bc_start: Boundary,
    pub bc_end: Boundary,
    pub sources: Vec<PointSource>,
    pub initial: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    /// Store every `save_every`-th step.
    pub save_every: usize,
}

impl FdSetup {
    fn validate(&self) -> Result<()> {
        ensure(self.nx >= 16, || format!("nx = {} below 16", self.nx))?;
        ensure(self.dt > 0.0 && self.dt <= 5.0, || format!("dt = {} outside (0, 5]", self.dt))?;
        ensure(self.t_end >= 0.0, || "t_end must be nonnegative".into())?;
        ensure(self.x_end > self.x_start, || "empty domain".into())?;
        ensure(self.c > 0.0 && self.two_a > 0.0, || "c and 2a must be positive".into())?;
        let ring_start = matches!(self.bc_start, Boundary::RingClosure);
        let ring_end = matches!(self.bc_end, Boundary::RingClosure);
        ensure(ring_start == ring_end, || "ring closure must be paired".into())?;
        for s in &self.sources {
            ensure((self.x_start..=self.x_end).contains(&s.x), || format!("source at {} outside the domain", s.x))?;
        }
        Ok(())
    }

    fn is_ring(&self) -> bool {
        matches!(self.bc_start, Boundary::RingClosure)
    }

    pub fn spacing(&self) -> f64 {
        (self.x_end - self.x_start) / self.nx as f64
    }
}

/// Solve and return every stored time level (including t = 0).
pub fn fd_transient_solve(setup: &FdSetup) -> Result<PressureField> {
    setup.validate()?;
    let ring = setup.is_ring();
    let h = setup.spacing();
    let nodes = if ring { setup.nx } else { setup.nx + 1 };
    let xs: Vec<f64> = (0..nodes).map(|i| setup.x_start + i as f64 * h).collect();
    let diff = setup.c * setup.c / setup.two_a;
    let two_a = setup.two_a;
    let k1 = setup.k1;

    // semi-discrete system dP/dt = diff·(D·P + r)
    let mut lower = vec![0.0; nodes];
    let mut diag = vec![0.0; nodes];
    let mut upper = vec![0.0; nodes];
    let mut r = vec![0.0; nodes];
    let mut fixed = vec![None; nodes];
    let inv_h2 = 1.0 / (h * h);
    for i in 0..nodes {
        lower[i] = inv_h2 + k1 / (2.0 * h);
        diag[i] = -2.0 * inv_h2;
        upper[i] = inv_h2 - k1 / (2.0 * h);
    }
    if !ring {
        match setup.bc_start {
            Boundary::FixedPressure(p) => fixed[0] = Some(p),
            Boundary::FixedFlux(g) => {
                // ghost node P₋₁ = P₁ + 2h·2aG
                upper[0] = 2.0 * inv_h2;
                lower[0] = 0.0;
                r[0] += 2.0 * two_a * g / h + k1 * two_a * g;
            }
            Boundary::RingClosure => unreachable!(),
        }
        let n = nodes - 1;
        match setup.bc_end {
            Boundary::FixedPressure(p) => fixed[n] = Some(p),
            Boundary::FixedFlux(g) => {
                lower[n] = 2.0 * inv_h2;
                upper[n] = 0.0;
                r[n] += -2.0 * two_a * g / h + k1 * two_a * g;
            }
            Boundary::RingClosure => unreachable!(),
        }
    }
    for s in &setup.sources {
        let pos = (s.x - setup.x_start) / h;
        let mut i = pos.floor() as usize;
        let mut w = pos - i as f64;
        if ring {
            i %= nodes;
        } else if i >= nodes {
            i = nodes - 1;
            w = 0.0;
        }
        let mut deposit = |k: usize, frac: f64| {
            let k = if ring { k % nodes } else { k.min(nodes - 1) };
            let edge = !ring && (k == 0 || k == nodes - 1);
            let scale = if edge { 2.0 } else { 1.0 };
            r[k] -= two_a * scale * frac * s.g / h;
        };
        if w < 1e-12 {
            deposit(i, 1.0);
        } else {
            deposit(i, 1.0 - w);
            deposit(i + 1, w);
        }
    }

    // Crank–Nicolson: (I − ½Δt·diff·D)Pⁿ⁺¹ = (I + ½Δt·diff·D)Pⁿ + Δt·diff·r
    let theta = 0.5;
    let kappa = setup.dt * diff;
    let mut a = vec![0.0; nodes];
    let mut b = vec![0.0; nodes];
    let mut cc = vec![0.0; nodes];
    for i in 0..nodes {
        if fixed[i].is_some() {
            b[i] = 1.0;
            continue;
        }
        a[i] = -theta * kappa * lower[i];
        b[i] = 1.0 - theta * kappa * diag[i];
        cc[i] = -theta * kappa * upper[i];
    }
    let mut p: Vec<f64> = xs.iter().map(|&x| (setup.initial)(x)).collect();
    for i in 0..nodes {
        if let Some(v) = fixed[i] {
            p[i] = v;
        }
    }
    let steps = (setup.t_end / setup.dt).round() as usize;
    let save_every = setup.save_every.max(1);
    let mut ts = vec![0.0];
    let mut columns = vec![p.clone()];
    let mut rhs = vec![0.0; nodes];
    for step in 1..=steps {
        for i in 0..nodes {
            if let Some(v) = fixed[i] {
                rhs[i] = v;
                continue;
            }
            let (left, right) = neighbours(i, nodes, ring);
            let dp = diag[i] * p[i] + left.map_or(0.0, |j| lower[i] * p[j]) + right.map_or(0.0, |j| upper[i] * p[j]);
            rhs[i] = p[i] + (1.0 - theta) * kappa * dp + kappa * r[i];
        }
        p = if ring { solve_cyclic(&a, &b, &cc, &rhs)? } else { solve_tridiagonal(&a, &b, &cc, &rhs)? };
        if step % save_every == 0 || step == steps {
            ts.push(step as f64 * setup.dt);
            columns.push(p.clone());
        }
    }
    let values: Vec<Vec<f64>> = (0..nodes).map(|i| columns.iter().map(|col| col[i]).collect()).collect();
    let field = PressureField { xs, ts, values, section_of_x: vec![Section::Whole; nodes] };
    field.validate()?;
    Ok(field)
}

fn neighbours(i: usize, nodes: usize, ring: bool) -> (Option<usize>, Option<usize>) {
    if ring {
        ((i + nodes - 1).checked_rem(nodes), Some((i + 1) % nodes))
    } else {
        let left = if i > 0 { Some(i - 1) } else { None };
        let right = if i + 1 < nodes { Some(i + 1) } else { None };
        (left, right)
    }
}

/// Thomas algorithm; `a[0]` and `c[n−1]` are ignored.
fn solve_tridiagonal(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> Result<Vec<f64>> {
    let n = b.len();
    let mut cp = vec![0.0; n];
    let mut dp = vec![0.0; n];
    let mut denom = b[0];
    if denom.abs() < 1e-300 {
        return Err(Error::Numerical("singular tridiagonal system".into()));
    }
    cp[0] = c[0] / denom;
    dp[0] = d[0] / denom;
    for i in 1..n {
        denom = b[i] - a[i] * cp[i - 1];
        if denom.abs() < 1e-300 {
            return Err(Error::Numerical("singular tridiagonal system".into()));
        }
        cp[i] = c[i] / denom;
        dp[i] = (d[i] - a[i] * dp[i - 1]) / denom;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = dp[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = dp[i] - cp[i] * x[i + 1];
    }
    Ok(x)
}

/// Periodic tridiagonal system via Sherman–Morrison; `a[0]` couples to the
/// last unknown and `c[n−1]` to the first.
fn solve_cyclic(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> Result<Vec<f64>> {
    let n = b.len();
    let gamma = -b[0];
    let mut bb = b.to_vec();
    bb[0] = b[0] - gamma;
    bb[n - 1] = b[n - 1] - a[0] * c[n - 1] / gamma;
    let x = solve_tridiagonal(a, &bb, c, d)?;
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = c[n - 1];
    let z = solve_tridiagonal(a, &bb, c, &u)?;
    let fact = (x[0] + a[0] * x[n - 1] / gamma) / (1.0 + z[0] + a[0] * z[n - 1] / gamma);
    Ok(x.iter().zip(&z).map(|(xi, zi)| xi - fact * zi).collect())
}

/// Bilinear lookup in an FD field; ring fields wrap at the domain end.
pub fn sample(field: &PressureField, x: f64, t: f64) -> f64 {
    let ix = bracket(&field.xs, x);
    let it = bracket(&field.ts, t);
    let lerp = |i: usize, j: usize| field.values[i][j];
    let (i0, i1, wx) = ix;
    let (j0, j1, wt) = it;
    let v0 = lerp(i0, j0) * (1.0 - wx) + lerp(i1, j0) * wx;
    let v1 = lerp(i0, j1) * (1.0 - wx) + lerp(i1, j1) * wx;
    v0 * (1.0 - wt) + v1 * wt
}

fn bracket(grid: &[f64], v: f64) -> (usize, usize, f64) {
    let n = grid.len();
    if n == 1 || v <= grid[0] {
        return (0, 0, 0.0);
    }
    if v >= grid[n - 1] {
        return (n - 1, n - 1, 0.0);
    }
    let i = grid.partition_point(|&g| g <= v) - 1;
    let w = (v - grid[i]) / (grid[i + 1] - grid[i]);
    (i, i + 1, w)
}

/// Gas content Σ w·P·Δx/c² with trapezoid weights (uniform weights on a ring).
pub fn gas_content(field: &PressureField, it: usize, c: f64, ring: bool) -> f64 {
    let n = field.xs.len();
    let h = if n > 1 { field.xs[1] - field.xs[0] } else { 0.0 };
    (0..n)
        .map(|i| {
            let w = if !ring && (i == 0 || i == n - 1) { 0.5 } else { 1.0 };
            w * field.values[i][it]
        })
        .sum::<f64>()
        * h
        / (c * c)
}

/// Global minimum of `f` on `points` uniformly spaced samples of [lo, hi];
/// ties go to the smaller argument.
pub fn grid_argmin(f: impl Fn(f64) -> f64, lo: f64, hi: f64, points: usize) -> (f64, f64) {
    let points = points.max(2);
    let step = (hi - lo) / (points - 1) as f64;
    let mut best = (lo, f(lo));
    for k in 1..points {
        let x = lo + k as f64 * step;
        let v = f(x);
        if v < best.1 {
            best = (x, v);
        }
    }
    best
}

/// Minimum over an explicit list of arguments, ties to the earliest.
pub fn grid_argmin_over(f: impl Fn(f64) -> f64, args: &[f64]) -> Option<(f64, f64)> {
    args.iter().fold(None, |best, &x| {
        let v = f(x);
        match best {
            Some((_, bv)) if v >= bv => best,
            _ => Some((x, v)),
        }
    })
}

/// Root by sign-change bracketing on `scan` subintervals followed by bisection.
pub fn root_scan(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64, scan: usize) -> Result<f64> {
    let scan = scan.max(1);
    let step = (hi - lo) / scan as f64;
    let mut a = lo;
    let mut fa = f(a);
    if fa == 0.0 {
        return Ok(a);
    }
    for k in 1..=scan {
        let b = if k == scan { hi } else { lo + k as f64 * step };
        let fb = f(b);
        if fb == 0.0 {
            return Ok(b);
        }
        if fa.signum() != fb.signum() && fa.is_finite() && fb.is_finite() {
            let (mut lo, mut hi, mut flo) = (a, b, fa);
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if fm == 0.0 {
                    return Ok(mid);
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            return Ok(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    Err(Error::NotFound(format!("no sign change on [{lo}, {hi}]")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(bc_start: Boundary, bc_end: Boundary, sources: Vec<PointSource>) -> FdSetup {
        FdSetup {
            x_start: 0.0,
            x_end: 1e5,
            nx: 200,
            dt: 2.0,
            t_end: 600.0,
            c: 383.3,
            two_a: 0.1,
            k1: 0.0,
            bc_start,
            bc_end,
            sources,
            initial: Box::new(|x| 55e4 - 0.1 * 30.0 * x),
            save_every: 10,
        }
    }

    #[test]
    fn steady_flux_line_stays_put() {
        let f = fd_transient_solve(&line(Boundary::FixedFlux(30.0), Boundary::FixedFlux(30.0), vec![])).unwrap();
        let last = f.ts.len() - 1;
        for (i, &x) in f.xs.iter().enumerate() {
            assert!((f.values[i][last] - (55e4 - 3.0 * x)).abs() < 1e-6);
        }
    }

    #[test]
    fn conservation_with_leak() {
        let setup =
            line(Boundary::FixedFlux(30.0), Boundary::FixedFlux(30.0), vec![PointSource { x: 50123.0, g: 30.0 }]);
        let f = fd_transient_solve(&setup).unwrap();
        let last = f.ts.len() - 1;
        let change = gas_content(&f, last, 383.3, false) - gas_content(&f, 0, 383.3, false);
        let expected = -30.0 * 600.0;
        assert!((change - expected).abs() < 1e-6 * expected.abs(), "{change}");
    }

    #[test]
    fn ring_conserves_and_is_periodic() {
        let mut setup = line(
            Boundary::RingClosure,
            Boundary::RingClosure,
            vec![PointSource { x: 0.0, g: -10.0 }, PointSource { x: 4e4, g: 10.0 }],
        );
        setup.initial = Box::new(|_| 14e4);
        let f = fd_transient_solve(&setup).unwrap();
        let last = f.ts.len() - 1;
        let change = gas_content(&f, last, 383.3, true) - gas_content(&f, 0, 383.3, true);
        assert!(change.abs() < 1e-6);
    }

    #[test]
    fn rejects_bad_setups() {
        let mut s = line(Boundary::RingClosure, Boundary::FixedFlux(0.0), vec![]);
        assert!(fd_transient_solve(&s).is_err());
        s.bc_end = Boundary::RingClosure;
        s.dt = 10.0;
        assert!(fd_transient_solve(&s).is_err());
    }

    #[test]
    fn scanners() {
        assert!((root_scan(|x| x - 1.0, 0.0, 2.0, 1e-12, 7).unwrap() - 1.0).abs() < 1e-10);
        assert!(root_scan(|x| x * x + 1.0, -1.0, 1.0, 1e-9, 10).is_err());
        let (x, _) = grid_argmin(|x| (x - 0.37).powi(2), 0.0, 1.0, 11);
        assert!((x - 0.4).abs() < 1e-12);
        let (x, _) = grid_argmin(|x| (x - 0.5f64).abs().min(1.0), 0.0, 1.0, 3);
        assert_eq!(x, 0.5);
    }
}
