//! Blowup detection shared by the reduced and 2D solvers: threshold
//! monitoring and singularity-time extrapolation from the reciprocal of the
//! witness norm.

use serde::Serialize;

/// One monitoring sample along a trajectory.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HistorySample {
    pub t: f64,
    pub sup_wz: f64,
    pub sup_v: f64,
}

/// Outcome of a blowup-monitored run.
#[derive(Debug, Clone, Serialize)]
pub struct BlowupReport {
    pub blew_up: bool,
    pub t_detect: Option<f64>,
    pub t_extrapolated: Option<f64>,
    pub witness_norm: String,
    pub history: Vec<HistorySample>,
}

/// Least-squares fit of `1/sup` against `t` over the last `n_fit` samples in
/// the final decade of growth; the singularity time is the root of the line.
/// For an exactly self-similar amplitude `A/(T-t)` the fit is exact.
pub fn extrapolate_blowup_time(history: &[HistorySample], n_fit: usize) -> Option<f64> {
    let max_sup = history.iter().fold(0.0f64, |m, h| m.max(h.sup_wz));
    if !(max_sup > 0.0) {
        return None;
    }
    let decade: Vec<&HistorySample> = history
        .iter()
        .filter(|h| h.sup_wz >= 0.1 * max_sup && h.sup_wz > 0.0)
        .collect();
    let tail = if decade.len() > n_fit {
        &decade[decade.len() - n_fit..]
    } else {
        &decade[..]
    };
    if tail.len() < 2 {
        return None;
    }
    let n = tail.len() as f64;
    let mx = tail.iter().map(|h| h.t).sum::<f64>() / n;
    let my = tail.iter().map(|h| 1.0 / h.sup_wz).sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for h in tail {
        num += (h.t - mx) * (1.0 / h.sup_wz - my);
        den += (h.t - mx) * (h.t - mx);
    }
    let m = num / den;
    if !(m < 0.0) {
        return None; // not growing
    }
    let b = my - m * mx;
    Some(-b / m)
}
