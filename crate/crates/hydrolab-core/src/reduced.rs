//! Reduced solver on the symmetry line x = 0 of the odd-in-x channel flow:
//!
//! ```text
//! W_tz - (W_z)^2 + W W_zz + 2 int_0^1 W_z^2 dz - Omega V + Omega int_0^1 V dz = 0,
//! V_t - W_z V + W V_z + Omega W_z = 0,         W(t,0) = W(t,1) = 0.
//! ```
//!
//! Chebyshev collocation in z with Clenshaw-Curtis quadrature for the
//! nonlocal integrals; `W_t` is recovered from `W_tz` by the spectral
//! antiderivative from z = 0, so `W_t(0) = 0` by construction and the drift
//! of `W_t(1)` is a discretization diagnostic (the identity
//! `int_0^1 W_tz dz = 0` is analytically exact). Explicit RK4 stepping with
//! an adaptive step bounded by the gradient and advective time scales.

use crate::blowup::{extrapolate_blowup_time, BlowupReport, HistorySample};
use crate::chebyshev::ChebyshevGrid;
use crate::profile::BlowupProfile;
use serde::Serialize;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReducedError {
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("non-finite value encountered at t={0}: blowup signal")]
    NonFinite(f64),
    #[error("dt {dt:e} exceeds the stability limit {limit:e}")]
    UnstableDt { dt: f64, limit: f64 },
    #[error("mismatched grids: {0}")]
    GridMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("hypothesis check failed: {0}")]
    Hypothesis(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

type Result<T> = std::result::Result<T, ReducedError>;

/// Fields W(z), V(z) at one instant on a shared collocation grid.
#[derive(Debug, Clone)]
pub struct ReducedState {
    pub time: f64,
    pub grid: Arc<ChebyshevGrid>,
    pub w: Vec<f64>,
    pub v: Vec<f64>,
    pub omega: f64,
}

impl ReducedState {
    /// Validates the wall values of W and finiteness of both fields.
    pub fn new(grid: Arc<ChebyshevGrid>, w: Vec<f64>, v: Vec<f64>, omega: f64) -> Result<Self> {
        let n = grid.len();
        if w.len() != n || v.len() != n {
            return Err(ReducedError::InvalidState(format!(
                "field lengths {} / {} do not match grid size {n}",
                w.len(),
                v.len()
            )));
        }
        if w[0].abs() > 1e-12 || w[n - 1].abs() > 1e-12 {
            return Err(ReducedError::InvalidState(format!(
                "W must vanish at the walls, got W(0)={:e}, W(1)={:e}",
                w[0],
                w[n - 1]
            )));
        }
        if !w.iter().chain(v.iter()).all(|x| x.is_finite()) {
            return Err(ReducedError::InvalidState("non-finite field entry".into()));
        }
        Ok(ReducedState {
            time: 0.0,
            grid,
            w,
            v,
            omega,
        })
    }

    pub fn sup_wz(&self) -> f64 {
        self.grid
            .diff(&self.w)
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn sup_v(&self) -> f64 {
        self.v.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Tendencies plus the `W_t(1)` drift diagnostic.
#[derive(Debug, Clone)]
pub struct ReducedRhs {
    pub w_t: Vec<f64>,
    pub v_t: Vec<f64>,
    pub compat_residual: f64,
}

/// Right-hand side of the reduced system.
pub fn reduced_rhs(state: &ReducedState) -> Result<ReducedRhs> {
    let rhs = rhs_inner(state);
    if !rhs
        .w_t
        .iter()
        .chain(rhs.v_t.iter())
        .all(|x| x.is_finite())
    {
        return Err(ReducedError::NonFinite(state.time));
    }
    Ok(rhs)
}

fn rhs_inner(state: &ReducedState) -> ReducedRhs {
    let g = &state.grid;
    let n = g.len();
    let omega = state.omega;
    let wz = g.diff(&state.w);
    let wzz = g.diff2(&state.w);
    // derivative of the deviation from the bottom value so that constant V
    // has an exactly zero derivative
    let v_dev: Vec<f64> = state.v.iter().map(|v| v - state.v[0]).collect();
    let vz = g.diff(&v_dev);

    let wz_sq: Vec<f64> = wz.iter().map(|x| x * x).collect();
    let int_wz2 = g.integrate(&wz_sq);
    let int_v = g.integrate(&state.v);

    // W_tz = (W_z)^2 - W W_zz - 2 int W_z^2 + Omega V - Omega int V
    let mut w_tz = vec![0.0; n];
    for j in 0..n {
        w_tz[j] = wz_sq[j] - state.w[j] * wzz[j] - 2.0 * int_wz2
            + omega * (state.v[j] - int_v);
    }
    let w_t = g.cumulative_integral(&w_tz);
    let compat_residual = w_t[n - 1].abs();

    // V_t = W_z V - W V_z - Omega W_z; for V identically Omega the first and
    // last terms cancel bitwise and V_z is exactly zero
    let mut v_t = vec![0.0; n];
    for j in 0..n {
        v_t[j] = wz[j] * state.v[j] - state.w[j] * vz[j] - omega * wz[j];
    }

    ReducedRhs {
        w_t,
        v_t,
        compat_residual,
    }
}

/// Time-step controls for [`simulate`].
#[derive(Debug, Clone, Copy)]
pub struct SimOptions {
    /// Base step; the adaptive limiter can only shrink below it.
    pub dt0: f64,
    /// Safety factor in the stability limit.
    pub cfl: f64,
    /// Cadence of stored field snapshots (simulation time units).
    pub snapshot_dt: f64,
    /// Hard cap on step count.
    pub max_steps: usize,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions {
            dt0: 1e-3,
            cfl: 0.5,
            snapshot_dt: 0.01,
            max_steps: 2_000_000,
        }
    }
}

/// Largest stable RK4 step for the current state: gradient (Riccati) scale,
/// vertical advective scale, and the rotation frequency.
pub fn stability_limit(state: &ReducedState, cfl: f64) -> f64 {
    let n = state.grid.len() as f64;
    let sup_wz = state.sup_wz();
    let sup_w = state.w.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let gradient = 2.0 / (1.0 + sup_wz);
    let advective = std::f64::consts::PI / (1.0 + n * sup_w);
    let rotation = 2.0 / (1.0 + state.omega.abs());
    cfl * gradient.min(advective).min(rotation)
}

/// One classical RK4 step; W wall values are re-pinned afterwards.
pub fn step(state: &ReducedState, dt: f64) -> Result<ReducedState> {
    let limit = stability_limit(state, 1.0);
    if dt > limit {
        return Err(ReducedError::UnstableDt { dt, limit });
    }
    let k1 = reduced_rhs(state)?;
    let s2 = advance(state, &k1, 0.5 * dt);
    let k2 = reduced_rhs(&s2)?;
    let s3 = advance(state, &k2, 0.5 * dt);
    let k3 = reduced_rhs(&s3)?;
    let s4 = advance(state, &k3, dt);
    let k4 = reduced_rhs(&s4)?;

    let n = state.grid.len();
    let mut w = vec![0.0; n];
    let mut v = vec![0.0; n];
    for j in 0..n {
        w[j] = state.w[j]
            + dt / 6.0 * (k1.w_t[j] + 2.0 * k2.w_t[j] + 2.0 * k3.w_t[j] + k4.w_t[j]);
        v[j] = state.v[j]
            + dt / 6.0 * (k1.v_t[j] + 2.0 * k2.v_t[j] + 2.0 * k3.v_t[j] + k4.v_t[j]);
    }
    w[0] = 0.0;
    w[n - 1] = 0.0;
    if !w.iter().chain(v.iter()).all(|x| x.is_finite()) {
        return Err(ReducedError::NonFinite(state.time));
    }
    Ok(ReducedState {
        time: state.time + dt,
        grid: Arc::clone(&state.grid),
        w,
        v,
        omega: state.omega,
    })
}

fn advance(state: &ReducedState, rhs: &ReducedRhs, dt: f64) -> ReducedState {
    let n = state.grid.len();
    let mut w = vec![0.0; n];
    let mut v = vec![0.0; n];
    for j in 0..n {
        w[j] = state.w[j] + dt * rhs.w_t[j];
        v[j] = state.v[j] + dt * rhs.v_t[j];
    }
    ReducedState {
        time: state.time + dt,
        grid: Arc::clone(&state.grid),
        w,
        v,
        omega: state.omega,
    }
}

/// Stored field snapshot.
#[derive(Debug, Clone, Serialize)]
pub struct Snapshot {
    pub t: f64,
    pub w: Vec<f64>,
    pub v: Vec<f64>,
}

/// Full record of a reduced run.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub omega: f64,
    pub history: Vec<HistorySample>,
    pub snapshots: Vec<Snapshot>,
    pub max_compat_residual: f64,
    pub grid: Arc<ChebyshevGrid>,
}

/// Integrate until `t_end` or until `sup |W_z|` crosses `threshold`.
///
/// Steps are clipped to land exactly on snapshot times so that independent
/// runs share snapshot instants. A step-size underflow below 1e-12 is
/// reported as blowup-adjacent termination.
pub fn simulate(
    init: &ReducedState,
    t_end: f64,
    threshold: f64,
    opts: &SimOptions,
) -> Result<(Trajectory, BlowupReport)> {
    if threshold <= init.sup_wz() {
        return Err(ReducedError::Precondition(format!(
            "threshold {threshold} must exceed the initial sup|W_z| = {}",
            init.sup_wz()
        )));
    }
    let mut state = init.clone();
    state.time = 0.0;
    let mut history = Vec::new();
    let mut snapshots = vec![Snapshot {
        t: 0.0,
        w: state.w.clone(),
        v: state.v.clone(),
    }];
    let mut max_compat = 0.0f64;
    let mut next_snapshot = opts.snapshot_dt;
    let mut blew_up = false;
    let mut t_detect = None;
    let mut witness = "none".to_string();

    history.push(HistorySample {
        t: 0.0,
        sup_wz: state.sup_wz(),
        sup_v: state.sup_v(),
    });

    for _ in 0..opts.max_steps {
        if state.time >= t_end {
            break;
        }
        let mut dt = opts.dt0.min(stability_limit(&state, opts.cfl));
        if dt < 1e-12 {
            blew_up = true;
            t_detect = Some(state.time);
            witness = "dt_underflow".to_string();
            break;
        }
        // clip to snapshot and final times so comparisons share instants
        dt = dt.min(t_end - state.time);
        if state.time + dt > next_snapshot - 1e-14 {
            dt = next_snapshot - state.time;
        }

        match step(&state, dt) {
            Ok(next) => state = next,
            Err(ReducedError::NonFinite(t)) => {
                blew_up = true;
                t_detect = Some(t);
                witness = "non_finite".to_string();
                break;
            }
            Err(e) => return Err(e),
        }
        let rhs_now = rhs_inner(&state);
        max_compat = max_compat.max(rhs_now.compat_residual);

        let sup_wz = state.sup_wz();
        let sup_v = state.sup_v();
        history.push(HistorySample {
            t: state.time,
            sup_wz,
            sup_v,
        });
        if (state.time - next_snapshot).abs() < 1e-12 {
            snapshots.push(Snapshot {
                t: state.time,
                w: state.w.clone(),
                v: state.v.clone(),
            });
            next_snapshot += opts.snapshot_dt;
        }
        if sup_wz > threshold {
            blew_up = true;
            t_detect = Some(state.time);
            witness = "sup_wz".to_string();
            break;
        }
    }

    let t_extrapolated = if blew_up {
        extrapolate_blowup_time(&history, 30)
    } else {
        None
    };
    let report = BlowupReport {
        blew_up,
        t_detect,
        t_extrapolated,
        witness_norm: witness,
        history: history.clone(),
    };
    Ok((
        Trajectory {
            omega: init.omega,
            history,
            snapshots,
            max_compat_residual: max_compat,
            grid: Arc::clone(&init.grid),
        },
        report,
    ))
}

/// `max over snapshots with t <= 0.9 of sup_z |(1-t) W(t,z) - phi(z)|`.
pub fn self_similar_error(traj: &Trajectory, profile: &BlowupProfile) -> Result<f64> {
    if traj.grid.len() != profile.grid.len() {
        return Err(ReducedError::GridMismatch(format!(
            "trajectory has {} nodes, profile {}",
            traj.grid.len(),
            profile.grid.len()
        )));
    }
    let mut worst = 0.0f64;
    for snap in traj.snapshots.iter().filter(|s| s.t <= 0.9) {
        for (j, &w) in snap.w.iter().enumerate() {
            worst = worst.max(((1.0 - snap.t) * w - profile.phi[j]).abs());
        }
    }
    Ok(worst)
}

/// `sup over snapshots of sup_z |V - omega|` (exactness of the constant-V channel).
pub fn v_constancy_error(traj: &Trajectory, omega: f64) -> f64 {
    let mut worst = 0.0f64;
    for snap in &traj.snapshots {
        for &v in &snap.v {
            worst = worst.max((v - omega).abs());
        }
    }
    worst
}

/// Initial data of the analytic blowup family: `W(0,z) = lambda (z^3 - z)/3`,
/// `V(0,z) = Omega`, i.e. the line restriction of
/// `u_0 = lambda (-z^2 + 1/3) f(x)`, `v_0 = -Omega f(x)` with `f'(0) = 1`.
pub fn wong_initial_state(grid: Arc<ChebyshevGrid>, lambda: f64, omega: f64) -> ReducedState {
    let w: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|&z| lambda * (z * z * z - z) / 3.0)
        .collect();
    let v = vec![omega; grid.len()];
    ReducedState::new(grid, w, v, omega).expect("analytic data satisfies the wall conditions")
}

/// Guaranteed-blowup horizon `-3 / du0_dx(0, 1)`; requires a negative slope
/// of the initial x-derivative at the top wall.
pub fn wong_bound(u0_x_top_wall: f64) -> Result<f64> {
    if !(u0_x_top_wall < 0.0) {
        return Err(ReducedError::Precondition(format!(
            "need du0/dx(0,1) < 0, got {u0_x_top_wall}"
        )));
    }
    Ok(-3.0 / u0_x_top_wall)
}

/// Per-condition outcome of the analytic-blowup hypothesis check
/// (`W_zz(0,0) = 0`, `W_zzz(0,z) > 0`, `V(0,.) = Omega`).
#[derive(Debug, Clone, Serialize)]
pub struct WongHypothesisReport {
    pub wzz_at_bottom: f64,
    pub min_wzzz: f64,
    pub max_v_deviation: f64,
    pub satisfied: bool,
}

pub fn wong_hypothesis_check(state: &ReducedState) -> WongHypothesisReport {
    let g = &state.grid;
    let wzz = g.diff2(&state.w);
    let wzzz = g.diff(&wzz);
    let min_wzzz = wzzz.iter().fold(f64::INFINITY, |m, v| m.min(*v));
    let max_v_dev = state
        .v
        .iter()
        .fold(0.0f64, |m, v| m.max((v - state.omega).abs()));
    let wzz0 = wzz[0];
    let scale = wzz.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    let satisfied = wzz0.abs() <= 1e-8 * scale && min_wzzz > 0.0 && max_v_dev <= 1e-10;
    WongHypothesisReport {
        wzz_at_bottom: wzz0,
        min_wzzz,
        max_v_deviation: max_v_dev,
        satisfied,
    }
}

/// Outcome of the pointwise lower-bound verification
/// `W_z(t,1) >= 3 W_z(0,1) / (3 - W_z(0,1) t)`.
#[derive(Debug, Clone, Serialize)]
pub struct WongBoundCheck {
    pub hypothesis: WongHypothesisReport,
    pub skipped: bool,
    pub holds: bool,
    pub max_relative_violation: f64,
}

/// Verify the lower bound along recorded snapshots with relative tolerance
/// `rel_tol`; skipped (with the hypothesis report) if the initial data fails
/// the hypothesis gate.
pub fn wong_lower_bound_check(traj: &Trajectory, rel_tol: f64) -> WongBoundCheck {
    let first = &traj.snapshots[0];
    let init = ReducedState {
        time: first.t,
        grid: Arc::clone(&traj.grid),
        w: first.w.clone(),
        v: first.v.clone(),
        omega: traj.omega,
    };
    let hypothesis = wong_hypothesis_check(&init);
    if !hypothesis.satisfied {
        return WongBoundCheck {
            hypothesis,
            skipped: true,
            holds: false,
            max_relative_violation: f64::NAN,
        };
    }
    let n = traj.grid.len();
    let wz0_top = traj.grid.diff(&first.w)[n - 1];
    let mut max_violation = 0.0f64;
    for snap in &traj.snapshots {
        let wz_top = traj.grid.diff(&snap.w)[n - 1];
        let denom = 3.0 - wz0_top * snap.t;
        if denom <= 0.0 {
            break; // past the guaranteed singular time of the bound itself
        }
        let bound = 3.0 * wz0_top / denom;
        let violation = (bound - wz_top) / bound.abs().max(1e-300);
        max_violation = max_violation.max(violation);
    }
    WongBoundCheck {
        hypothesis,
        skipped: false,
        holds: max_violation <= rel_tol,
        max_relative_violation: max_violation,
    }
}

/// Outcome of the quadratic-mean inequality check for a single field:
/// hypotheses `f'(0) = 0`, `f'' > 0`, `int f = 0`, conclusion `f(1) > 0` and
/// `int f^2 <= f(1)^2 / 3`.
#[derive(Debug, Clone, Serialize)]
pub struct WongLemmaReport {
    pub f_at_top: f64,
    pub int_f_sq: f64,
    pub bound: f64,
    pub holds: bool,
}

pub fn wong_lemma_check(grid: &ChebyshevGrid, f: &[f64]) -> Result<WongLemmaReport> {
    let n = grid.len();
    if f.len() != n {
        return Err(ReducedError::GridMismatch(format!(
            "field has {} entries, grid {n}",
            f.len()
        )));
    }
    let scale = f.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    let fp = grid.diff(f);
    if fp[0].abs() > 1e-8 * scale {
        return Err(ReducedError::Hypothesis(format!(
            "f'(0) = {:e} is not zero",
            fp[0]
        )));
    }
    let fpp = grid.diff2(f);
    if let Some(min) = fpp.iter().cloned().reduce(f64::min) {
        if min <= 0.0 {
            return Err(ReducedError::Hypothesis(format!(
                "f'' must be positive, min is {min:e}"
            )));
        }
    }
    let mean = grid.integrate(f);
    if mean.abs() > 1e-8 * scale {
        return Err(ReducedError::Hypothesis(format!(
            "int f = {mean:e} is not zero"
        )));
    }
    let f_sq: Vec<f64> = f.iter().map(|v| v * v).collect();
    let int_f_sq = grid.integrate(&f_sq);
    let f_top = f[n - 1];
    let bound = f_top * f_top / 3.0;
    Ok(WongLemmaReport {
        f_at_top: f_top,
        int_f_sq,
        bound,
        holds: f_top > 0.0 && int_f_sq <= bound + 1e-10,
    })
}

/// How the envelope constant of [`uniqueness_diagnostic`] is chosen.
#[derive(Debug, Clone, Copy)]
pub enum GronwallConstant {
    /// Smallest constant that keeps this pair inside its own envelope.
    Fit,
    /// Use a constant calibrated on a different (training) pair.
    Fixed(f64),
}

/// Separation history `D(t) = ||W_z^a - W_z^b||^2 + ||V^a - V^b||^2` against
/// the exponential envelope `D(0) exp(C int (||Wbar||_{H2} + ||Vbar||_{H1}))`.
#[derive(Debug, Clone, Serialize)]
pub struct GronwallDiagnostic {
    pub times: Vec<f64>,
    pub separation: Vec<f64>,
    pub envelope: Vec<f64>,
    pub c_used: f64,
    pub sup_ratio: f64,
}

pub fn uniqueness_diagnostic(
    a: &Trajectory,
    b: &Trajectory,
    constant: GronwallConstant,
) -> Result<GronwallDiagnostic> {
    let g = &a.grid;
    let n = g.len();
    if b.grid.len() != n {
        return Err(ReducedError::GridMismatch(
            "trajectories use different grids".into(),
        ));
    }
    if (a.omega - b.omega).abs() > 0.0 {
        return Err(ReducedError::Precondition(
            "trajectories must share Omega".into(),
        ));
    }
    let count = a.snapshots.len().min(b.snapshots.len());
    let mut times = Vec::with_capacity(count);
    let mut separation = Vec::with_capacity(count);
    let mut norm_integrand = Vec::with_capacity(count);
    for i in 0..count {
        let sa = &a.snapshots[i];
        let sb = &b.snapshots[i];
        if (sa.t - sb.t).abs() > 1e-10 {
            return Err(ReducedError::GridMismatch(format!(
                "snapshot times diverge: {} vs {}",
                sa.t, sb.t
            )));
        }
        let wza = g.diff(&sa.w);
        let wzb = g.diff(&sb.w);
        let dwz_sq: Vec<f64> = wza
            .iter()
            .zip(wzb.iter())
            .map(|(x, y)| (x - y) * (x - y))
            .collect();
        let dv_sq: Vec<f64> = sa
            .v
            .iter()
            .zip(sb.v.iter())
            .map(|(x, y)| (x - y) * (x - y))
            .collect();
        let d = g.integrate(&dwz_sq) + g.integrate(&dv_sq);

        let wbar: Vec<f64> = sa.w.iter().zip(sb.w.iter()).map(|(x, y)| 0.5 * (x + y)).collect();
        let vbar: Vec<f64> = sa.v.iter().zip(sb.v.iter()).map(|(x, y)| 0.5 * (x + y)).collect();
        let wbar_z = g.diff(&wbar);
        let wbar_zz = g.diff2(&wbar);
        let vdev: Vec<f64> = vbar.iter().map(|v| v - vbar[0]).collect();
        let vbar_z = g.diff(&vdev);
        let sq = |f: &[f64]| -> f64 {
            let s: Vec<f64> = f.iter().map(|v| v * v).collect();
            g.integrate(&s)
        };
        let h2 = (sq(&wbar) + sq(&wbar_z) + sq(&wbar_zz)).sqrt();
        let h1 = (sq(&vbar) + sq(&vbar_z)).sqrt();
        times.push(sa.t);
        separation.push(d);
        norm_integrand.push(h2 + h1);
    }

    // cumulative trapezoid of the norm history
    let mut cumulative = vec![0.0; count];
    for i in 1..count {
        cumulative[i] = cumulative[i - 1]
            + 0.5 * (norm_integrand[i] + norm_integrand[i - 1]) * (times[i] - times[i - 1]);
    }

    let d0 = separation[0];
    let c_used = match constant {
        GronwallConstant::Fixed(c) => c,
        GronwallConstant::Fit => {
            let mut c: f64 = 0.0;
            if d0 > 0.0 {
                for i in 1..count {
                    if separation[i] > 0.0 && cumulative[i] > 0.0 {
                        c = c.max((separation[i] / d0).ln() / cumulative[i]);
                    }
                }
            }
            c
        }
    };

    let envelope: Vec<f64> = cumulative.iter().map(|&s| d0 * (c_used * s).exp()).collect();
    let mut sup_ratio: f64 = 0.0;
    for i in 0..count {
        let r = if envelope[i] > 0.0 {
            separation[i] / envelope[i]
        } else if separation[i] == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        sup_ratio = sup_ratio.max(r);
    }
    Ok(GronwallDiagnostic {
        times,
        separation,
        envelope,
        c_used,
        sup_ratio,
    })
}

/// JSONL trajectory export: one record per snapshot,
/// `{t, sup_wz, sup_v, w: [...], v: [...]}` at 17 significant digits.
pub fn write_trajectory_jsonl(traj: &Trajectory, path: &Path) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    for snap in &traj.snapshots {
        let state = ReducedState {
            time: snap.t,
            grid: Arc::clone(&traj.grid),
            w: snap.w.clone(),
            v: snap.v.clone(),
            omega: traj.omega,
        };
        let fields = |xs: &[f64]| -> String {
            let parts: Vec<String> = xs.iter().map(|x| format!("{x:.16e}")).collect();
            parts.join(",")
        };
        writeln!(
            f,
            "{{\"t\":{:.16e},\"sup_wz\":{:.16e},\"sup_v\":{:.16e},\"w\":[{}],\"v\":[{}]}}",
            snap.t,
            state.sup_wz(),
            state.sup_v(),
            fields(&snap.w),
            fields(&snap.v)
        )?;
    }
    Ok(())
}

/// Blowup report export as JSON.
pub fn write_report_json(report: &BlowupReport, path: &Path) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    let text = serde_json::to_string_pretty(report).expect("report serialize");
    f.write_all(text.as_bytes())?;
    writeln!(f)?;
    Ok(())
}
