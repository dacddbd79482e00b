//! Construction of the nontrivial profile `phi` of the degenerate elliptic
//! boundary value problem
//!
//! ```text
//! phi' - (phi')^2 + phi phi'' + 2 int_0^1 (phi')^2 dz = 0,   phi(0) = phi(1) = 0,
//! ```
//!
//! with the amplitude constraint `2 int (phi')^2 = m^2`. Writing
//! `psi = phi'`, the solution is given in closed form in terms of `psi`:
//!
//! ```text
//! phi       = C(m) (psi_+ - psi)^a (psi - psi_-)^b,
//! dpsi/dz   = -(1/C(m)) (psi_+ - psi)^b (psi - psi_-)^a,
//! z(psi)    = I((psi_+ - psi)/(psi_+ - psi_-); a, b),
//! ```
//!
//! where `psi_± = ±sqrt(m^2 + 1/4) + 1/2`, `a = psi_+/(psi_+ - psi_-)`,
//! `b = -psi_-/(psi_+ - psi_-)` (note `a + b = 1`), `C(m) = 1/B(a, b)`, and
//! `I` is the regularized incomplete Beta function. The map `z(psi)` is
//! evaluated with Gauss-Jacobi rules carrying exactly the endpoint exponents,
//! and inverted by bisection-safeguarded Newton.

use crate::chebyshev::ChebyshevGrid;
use crate::specfun::{self, JacobiQuadrature, SpecFunError};
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("root bracketing failed: {0}")]
    BracketFailure(String),
    #[error("profile invariants violated:\n{0}")]
    InvariantViolation(ProfileChecks),
    #[error("insufficient near-boundary samples: {found} grid nodes in [{lo:e}, {hi:e}], need {needed}")]
    InsufficientNearBoundarySamples {
        found: usize,
        needed: usize,
        lo: f64,
        hi: f64,
    },
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

type Result<T> = std::result::Result<T, ProfileError>;

/// Closed-form constants of a profile with Holder exponent `alpha`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ProfileParams {
    pub alpha: f64,
    pub m: f64,
    pub psi_plus: f64,
    pub psi_minus: f64,
    pub c_m: f64,
}

impl ProfileParams {
    /// Exponent `a = psi_+ / (psi_+ - psi_-)` in (1/2, 1).
    pub fn exponent_a(&self) -> f64 {
        self.psi_plus / (self.psi_plus - self.psi_minus)
    }

    /// Exponent `b = -psi_- / (psi_+ - psi_-) = 1 - a` in (0, 1/2).
    pub fn exponent_b(&self) -> f64 {
        -self.psi_minus / (self.psi_plus - self.psi_minus)
    }
}

/// Derive all profile constants from `alpha` in (0, 1).
pub fn params_from_alpha(alpha: f64) -> Result<ProfileParams> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(ProfileError::Domain(format!(
            "alpha must lie in (0,1), got {alpha}"
        )));
    }
    // s = sqrt(m^2 + 1/4) solves alpha = (s - 1/2)/(s + 1/2)
    let s = (1.0 + alpha) / (2.0 * (1.0 - alpha));
    let m = (s * s - 0.25).sqrt();
    let psi_plus = s + 0.5;
    let psi_minus = 0.5 - s;
    let a = psi_plus / (2.0 * s);
    let b = -psi_minus / (2.0 * s);
    let c_m = 1.0 / specfun::beta(a, b)?;
    Ok(ProfileParams {
        alpha,
        m,
        psi_plus,
        psi_minus,
        c_m,
    })
}

/// Evaluator owning the two endpoint-singular quadrature rules for `z(psi)`.
pub struct ProfileSolver {
    pub params: ProfileParams,
    rule_top: JacobiQuadrature,    // weight u^{-b}, for psi near psi_+
    rule_bottom: JacobiQuadrature, // weight u^{-a}, for psi near psi_-
}

const Z_RULE_NODES: usize = 48;

impl ProfileSolver {
    pub fn new(params: ProfileParams) -> Result<Self> {
        let a = params.exponent_a();
        let b = params.exponent_b();
        let rule_top = specfun::gauss_jacobi(Z_RULE_NODES, -b, 0.0)?;
        let rule_bottom = specfun::gauss_jacobi(Z_RULE_NODES, -a, 0.0)?;
        Ok(ProfileSolver {
            params,
            rule_top,
            rule_bottom,
        })
    }

    pub fn from_alpha(alpha: f64) -> Result<Self> {
        Self::new(params_from_alpha(alpha)?)
    }

    /// Clamp values within a few ulps of the range; reject anything farther out.
    fn check_psi(&self, psi: f64) -> Result<f64> {
        let slack = 1e-13 * (self.params.psi_plus - self.params.psi_minus);
        if psi < self.params.psi_minus - slack || psi > self.params.psi_plus + slack {
            return Err(ProfileError::Domain(format!(
                "psi={psi} outside [{}, {}]",
                self.params.psi_minus, self.params.psi_plus
            )));
        }
        Ok(psi.clamp(self.params.psi_minus, self.params.psi_plus))
    }

    /// `z(psi) = C(m) int_psi^{psi_+} (psi_+ - s)^{-b} (s - psi_-)^{-a} ds`,
    /// rescaled so the Gauss-Jacobi weight absorbs the active endpoint
    /// singularity; the far endpoint is handled by the symmetry flip.
    pub fn z_of_psi(&self, psi: f64) -> Result<f64> {
        let psi = self.check_psi(psi)?;
        let p = &self.params;
        let delta = p.psi_plus - p.psi_minus;
        let a = p.exponent_a();
        let b = p.exponent_b();
        let x = (p.psi_plus - psi) / delta;
        if x <= 0.0 {
            return Ok(0.0);
        }
        if x >= 1.0 {
            return Ok(1.0);
        }
        if x <= 0.5 {
            let integral = self.rule_top.integrate(|t| (1.0 - x * t).powf(-a));
            Ok(p.c_m * x.powf(1.0 - b) * integral)
        } else {
            let y = 1.0 - x;
            let integral = self.rule_bottom.integrate(|t| (1.0 - y * t).powf(-b));
            Ok(1.0 - p.c_m * y.powf(1.0 - a) * integral)
        }
    }

    /// `dz/dpsi = -(C/Delta^0) (psi_+-psi)^{-b} (psi-psi_-)^{-a}` (negative).
    fn dz_dpsi(&self, psi: f64) -> f64 {
        let p = &self.params;
        let a = p.exponent_a();
        let b = p.exponent_b();
        -p.c_m * (p.psi_plus - psi).powf(-b) * (psi - p.psi_minus).powf(-a)
    }

    /// Monotone inverse of `z_of_psi` by bisection-safeguarded Newton.
    ///
    /// The residual `|z(psi_of_z(z)) - z|` is at most 5e-13 wherever the
    /// inverse is resolvable in f64. Near the top wall the contact is
    /// infinitely flat (`psi - psi_- ~ (1-z)^{1/b}`), so the residual there
    /// is limited by representability, roughly `|dz/dpsi| * ulp(psi)`; see
    /// [`ProfileSolver::roundtrip_resolution`].
    pub fn psi_of_z(&self, z: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&z) {
            return Err(ProfileError::Domain(format!("z={z} outside [0,1]")));
        }
        let p = &self.params;
        if z == 0.0 {
            return Ok(p.psi_plus);
        }
        if z == 1.0 {
            return Ok(p.psi_minus);
        }
        let mut lo = p.psi_minus; // z(lo) = 1 >= z
        let mut hi = p.psi_plus; // z(hi) = 0 <= z
        let mut psi = p.psi_plus - z * (p.psi_plus - p.psi_minus);
        let mut g = self.z_of_psi(psi)? - z;
        for _ in 0..200 {
            if g.abs() <= 5e-13 {
                return Ok(psi);
            }
            if g > 0.0 {
                lo = psi; // z too large -> psi too small
            } else {
                hi = psi;
            }
            let slope = self.dz_dpsi(psi);
            let mut next = psi - g / slope;
            if !next.is_finite() || next <= lo || next >= hi {
                next = 0.5 * (lo + hi);
            }
            if (hi - lo) <= f64::EPSILON * p.psi_plus.abs().max(1.0) {
                return Ok(next);
            }
            psi = next;
            g = self.z_of_psi(psi)? - z;
        }
        Err(ProfileError::BracketFailure(format!(
            "psi_of_z stalled at z={z}, bracket [{lo}, {hi}]"
        )))
    }

    /// `phi = C(m) (psi_+ - psi)^a (psi - psi_-)^b`, nonnegative on the range.
    pub fn phi_of_psi(&self, psi: f64) -> f64 {
        let p = &self.params;
        let a = p.exponent_a();
        let b = p.exponent_b();
        p.c_m * (p.psi_plus - psi).max(0.0).powf(a) * (psi - p.psi_minus).max(0.0).powf(b)
    }

    pub fn phi_of_z(&self, z: f64) -> Result<f64> {
        Ok(self.phi_of_psi(self.psi_of_z(z)?))
    }

    /// `phi'' = dpsi/dz` from the closed form (vanishes at both walls).
    pub fn dpsi_dz_of_psi(&self, psi: f64) -> f64 {
        let p = &self.params;
        let a = p.exponent_a();
        let b = p.exponent_b();
        -(1.0 / p.c_m)
            * (p.psi_plus - psi).max(0.0).powf(b)
            * (psi - p.psi_minus).max(0.0).powf(a)
    }

    /// Smallest z-increment resolvable at this `psi`: one ulp of `psi`
    /// propagated through the slope of `z(psi)`. The round-trip residual of
    /// `psi_of_z` cannot beat this floor.
    pub fn roundtrip_resolution(&self, psi: f64) -> f64 {
        let ulp = f64::EPSILON * psi.abs().max(self.params.psi_plus.abs());
        (self.dz_dpsi(psi).abs() * ulp).max(f64::EPSILON)
    }

    /// `2 int_0^1 psi(z)^2 dz` by the change of variables `z -> psi`, which
    /// turns the constraint into a polynomial moment of the Jacobi weight
    /// `u^{-a} (1-u)^{-b}`; exact up to rule construction error.
    pub fn constraint_integral(&self) -> Result<f64> {
        let p = &self.params;
        let a = p.exponent_a();
        let b = p.exponent_b();
        let delta = p.psi_plus - p.psi_minus;
        let rule = specfun::gauss_jacobi(8, -a, -b)?;
        let val = rule.integrate(|u| {
            let psi = p.psi_minus + delta * u;
            psi * psi
        });
        Ok(2.0 * p.c_m * val)
    }
}

/// Free-function forms of the solver operations.
pub fn z_of_psi(psi: f64, params: &ProfileParams) -> Result<f64> {
    ProfileSolver::new(*params)?.z_of_psi(psi)
}

pub fn psi_of_z(z: f64, params: &ProfileParams) -> Result<f64> {
    ProfileSolver::new(*params)?.psi_of_z(z)
}

pub fn phi_of_z(z: f64, params: &ProfileParams) -> Result<f64> {
    ProfileSolver::new(*params)?.phi_of_z(z)
}

/// Sampled profile on a Chebyshev-Lobatto grid with verified invariants.
#[derive(Debug, Clone, Serialize)]
pub struct BlowupProfile {
    pub params: ProfileParams,
    pub grid: Vec<f64>,
    pub phi: Vec<f64>,
    pub phi_prime: Vec<f64>,
    pub phi_double_prime: Vec<f64>,
}

/// One verified invariant with its measured magnitude.
#[derive(Debug, Clone, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ProfileChecks {
    pub items: Vec<CheckItem>,
}

impl ProfileChecks {
    fn push(&mut self, name: &str, value: f64, tolerance: f64) {
        self.items.push(CheckItem {
            name: name.to_string(),
            value,
            tolerance,
            passed: value.abs() <= tolerance,
        });
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|c| c.name == name)
    }
}

impl std::fmt::Display for ProfileChecks {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.items {
            writeln!(
                f,
                "  {} {}: |{:.3e}| vs tol {:.1e}",
                if c.passed { "ok  " } else { "FAIL" },
                c.name,
                c.value,
                c.tolerance
            )?;
        }
        Ok(())
    }
}

/// Build and verify the profile on `node_count >= 33` Lobatto nodes.
pub fn build_profile(alpha: f64, node_count: usize) -> Result<BlowupProfile> {
    if node_count < 33 {
        return Err(ProfileError::Domain(format!(
            "node_count must be at least 33, got {node_count}"
        )));
    }
    let solver = ProfileSolver::from_alpha(alpha)?;
    let p = solver.params;
    let cheb = ChebyshevGrid::new(node_count);
    let n = node_count;
    let mut phi = vec![0.0; n];
    let mut psi = vec![0.0; n];
    let mut ddpsi = vec![0.0; n];
    for (j, &z) in cheb.nodes().iter().enumerate() {
        let pv = solver.psi_of_z(z)?;
        psi[j] = pv;
        phi[j] = solver.phi_of_psi(pv);
        ddpsi[j] = solver.dpsi_dz_of_psi(pv);
    }
    let profile = BlowupProfile {
        params: p,
        grid: cheb.nodes().to_vec(),
        phi,
        phi_prime: psi,
        phi_double_prime: ddpsi,
    };
    let checks = verify_profile(&profile, &cheb, &solver)?;
    if !checks.all_passed() {
        return Err(ProfileError::InvariantViolation(checks));
    }
    Ok(profile)
}

/// Evaluate every type invariant of the sampled profile.
pub fn verify_profile(
    profile: &BlowupProfile,
    cheb: &ChebyshevGrid,
    solver: &ProfileSolver,
) -> Result<ProfileChecks> {
    let p = &profile.params;
    let n = profile.grid.len();
    let mut checks = ProfileChecks::default();

    checks.push("phi_at_0", profile.phi[0], 1e-12);
    checks.push("phi_at_1", profile.phi[n - 1], 1e-12);
    checks.push("psi_at_0_minus_psi_plus", profile.phi_prime[0] - p.psi_plus, 1e-12);
    checks.push(
        "psi_at_1_minus_psi_minus",
        profile.phi_prime[n - 1] - p.psi_minus,
        1e-12,
    );

    // strictly decreasing wherever f64 can resolve the gap; adjacent ties are
    // tolerated only flat against a wall value, where psi - psi_- underflows
    let wall_tie = |v: f64| {
        (v - p.psi_minus).abs() <= 4.0 * f64::EPSILON * p.psi_plus
            || (p.psi_plus - v).abs() <= 4.0 * f64::EPSILON * p.psi_plus
    };
    let mut monotone = true;
    let mut in_range = true;
    for j in 0..n {
        if j > 0 {
            let prev = profile.phi_prime[j - 1];
            let cur = profile.phi_prime[j];
            let ok = cur < prev || (cur == prev && wall_tie(cur));
            if !ok {
                monotone = false;
            }
        }
        if profile.phi_prime[j] < p.psi_minus - 1e-12 || profile.phi_prime[j] > p.psi_plus + 1e-12 {
            in_range = false;
        }
    }
    checks.push("psi_strictly_decreasing", if monotone { 0.0 } else { 1.0 }, 0.5);
    checks.push("psi_within_bounds", if in_range { 0.0 } else { 1.0 }, 0.5);

    // constraint 2 int psi^2 = m^2, on the grid and by change of variables
    let psi_sq: Vec<f64> = profile.phi_prime.iter().map(|v| v * v).collect();
    let grid_constraint = 2.0 * cheb.integrate(&psi_sq) - p.m * p.m;
    checks.push("constraint_grid", grid_constraint, 1e-6);
    let exact_constraint = solver.constraint_integral()? - p.m * p.m;
    checks.push("constraint_quadrature", exact_constraint, 1e-10);

    // int psi dz = phi(1) - phi(0) = 0
    let psi_mean = cheb.integrate(&profile.phi_prime);
    checks.push("psi_mean", psi_mean, 1e-8);

    // pointwise residual of psi - psi^2 + phi phi'' + 2 int psi^2 on the
    // interior, with the nonlocal term taken from the grid quadrature
    let two_int = 2.0 * cheb.integrate(&psi_sq);
    let mut worst = 0.0f64;
    for j in 1..n - 1 {
        let r = profile.phi_prime[j] - psi_sq[j]
            + profile.phi[j] * profile.phi_double_prime[j]
            + two_int;
        worst = worst.max(r.abs());
    }
    checks.push("ode_residual_interior", worst, 1e-6);

    Ok(checks)
}

const HOLDER_WINDOW: (f64, f64) = (1e-6, 1e-3);
const HOLDER_MIN_SAMPLES: usize = 4;

/// Least-squares slope of `log |dpsi/dz|` against `log z` over the stored
/// grid nodes inside `[1e-6, 1e-3]`; near the bottom wall
/// `dpsi/dz ~ const * z^alpha`, so the slope estimates `alpha`.
pub fn holder_exponent_estimate(profile: &BlowupProfile) -> Result<f64> {
    let (lo, hi) = HOLDER_WINDOW;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (j, &z) in profile.grid.iter().enumerate() {
        if z >= lo && z <= hi && profile.phi_double_prime[j] != 0.0 {
            xs.push(z.ln());
            ys.push(profile.phi_double_prime[j].abs().ln());
        }
    }
    if xs.len() < HOLDER_MIN_SAMPLES {
        return Err(ProfileError::InsufficientNearBoundarySamples {
            found: xs.len(),
            needed: HOLDER_MIN_SAMPLES,
            lo,
            hi,
        });
    }
    Ok(least_squares_slope(&xs, &ys))
}

fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}

impl BlowupProfile {
    /// CSV export, 17 significant digits, header `z,phi,phi_prime,phi_double_prime`.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        writeln!(f, "z,phi,phi_prime,phi_double_prime")?;
        for j in 0..self.grid.len() {
            writeln!(
                f,
                "{:.16e},{:.16e},{:.16e},{:.16e}",
                self.grid[j], self.phi[j], self.phi_prime[j], self.phi_double_prime[j]
            )?;
        }
        Ok(())
    }

    /// JSON sidecar carrying the profile constants.
    pub fn write_params_json(&self, path: &Path) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        let text = serde_json::to_string_pretty(&self.params).expect("params serialize");
        f.write_all(text.as_bytes())?;
        writeln!(f)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_for_one_third() {
        let p = params_from_alpha(1.0 / 3.0).unwrap();
        assert!((p.m - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((p.psi_plus - 1.5).abs() < 1e-15);
        assert!((p.psi_minus + 0.5).abs() < 1e-15);
        // C(m) = 1/B(3/4, 1/4) = 1/(pi sqrt 2)
        let expect = 0.22507907903927651;
        assert!((p.c_m - expect).abs() < 1e-12);
    }

    #[test]
    fn params_invariants_hold_for_any_alpha() {
        for alpha in [0.05, 0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.9] {
            let p = params_from_alpha(alpha).unwrap();
            assert!((p.psi_plus + p.psi_minus - 1.0).abs() < 1e-14);
            assert!((p.psi_plus * p.psi_minus + p.m * p.m).abs() < 1e-13);
            let back = -p.psi_minus / p.psi_plus;
            assert!((back - alpha).abs() < 1e-14, "round trip for alpha={alpha}");
        }
        assert!(params_from_alpha(0.0).is_err());
        assert!(params_from_alpha(1.0).is_err());
        assert!(params_from_alpha(1.5).is_err());
    }

    #[test]
    fn z_of_psi_boundary_values() {
        let s = ProfileSolver::from_alpha(1.0 / 3.0).unwrap();
        let p = s.params;
        assert_eq!(s.z_of_psi(p.psi_plus).unwrap(), 0.0);
        assert_eq!(s.z_of_psi(p.psi_minus).unwrap(), 1.0);
        assert_eq!(s.z_of_psi(-0.5).unwrap(), 1.0); // ideal endpoint, ulp-clamped
        assert!(s.z_of_psi(1.6).is_err());
        assert!(s.z_of_psi(-0.6).is_err());
        // frozen 40-digit value of I(1/2; 3/4, 1/4)
        let z_star = s.z_of_psi(0.5).unwrap();
        assert!((z_star - 0.21945007383040994).abs() < 1e-12, "z* = {z_star}");
    }

    #[test]
    fn z_branches_agree_at_split() {
        // x = 1/2 sits exactly on the branch boundary; evaluate just on
        // either side and require continuity at quadrature accuracy
        let s = ProfileSolver::from_alpha(0.41).unwrap();
        let p = s.params;
        let delta = p.psi_plus - p.psi_minus;
        let psi_mid = p.psi_plus - 0.5 * delta;
        let eps = 1e-9 * delta;
        let zl = s.z_of_psi(psi_mid + eps).unwrap();
        let zr = s.z_of_psi(psi_mid - eps).unwrap();
        assert!((zl - zr).abs() < 1e-8);
    }

    #[test]
    fn psi_of_z_inverts() {
        let s = ProfileSolver::from_alpha(1.0 / 3.0).unwrap();
        assert_eq!(s.psi_of_z(0.0).unwrap(), s.params.psi_plus);
        assert_eq!(s.psi_of_z(1.0).unwrap(), s.params.psi_minus);
        let psi = s.psi_of_z(0.21945007383040994).unwrap();
        assert!((psi - 0.5).abs() < 1e-8);
        for z in [1e-6, 1e-3, 0.1, 0.37, 0.5, 0.82, 0.99] {
            let psi = s.psi_of_z(z).unwrap();
            let back = s.z_of_psi(psi).unwrap();
            assert!((back - z).abs() < 1e-10, "round trip at z={z}: {back}");
        }
        // near the flat corner the residual is representability-limited
        for z in [0.999, 0.9999] {
            let psi = s.psi_of_z(z).unwrap();
            let back = s.z_of_psi(psi).unwrap();
            let floor = 8.0 * s.roundtrip_resolution(psi);
            assert!(
                (back - z).abs() < floor.max(1e-10),
                "round trip at z={z}: err {:e}, floor {floor:e}",
                (back - z).abs()
            );
        }
    }

    #[test]
    fn phi_reference_value_and_positivity() {
        let s = ProfileSolver::from_alpha(1.0 / 3.0).unwrap();
        assert_eq!(s.phi_of_z(0.0).unwrap(), 0.0);
        assert_eq!(s.phi_of_z(1.0).unwrap(), 0.0);
        // frozen 30-digit reference for phi(1/2)
        let v = s.phi_of_z(0.5).unwrap();
        assert!((v - 0.23117618191906063).abs() < 1e-10, "phi(1/2) = {v}");
        for z in [0.01, 0.2, 0.5, 0.8, 0.99] {
            assert!(s.phi_of_z(z).unwrap() > 0.0);
        }
    }

    #[test]
    fn build_profile_verifies_invariants() {
        let prof = build_profile(1.0 / 3.0, 129).unwrap();
        assert_eq!(prof.grid.len(), 129);
        assert!(build_profile(1.0 / 3.0, 16).is_err());
        // m^2 = 3/4 constraint on the grid
        let cheb = ChebyshevGrid::new(129);
        let psi_sq: Vec<f64> = prof.phi_prime.iter().map(|v| v * v).collect();
        let c = 2.0 * cheb.integrate(&psi_sq);
        assert!((c - 0.75).abs() < 1e-6, "grid constraint {c}");
    }

    #[test]
    fn holder_estimate_recovers_alpha() {
        for (alpha, lo, hi) in [(1.0 / 3.0, 0.32, 0.35), (0.5, 0.48, 0.52)] {
            let prof = build_profile(alpha, 257).unwrap();
            let est = holder_exponent_estimate(&prof).unwrap();
            assert!(est > lo && est < hi, "alpha={alpha} estimate {est}");
        }
    }

    #[test]
    fn holder_estimate_needs_near_boundary_nodes() {
        let mut prof = build_profile(0.5, 257).unwrap();
        // keep only nodes with z >= 0.1
        let keep: Vec<usize> = (0..prof.grid.len()).filter(|&j| prof.grid[j] >= 0.1).collect();
        prof.grid = keep.iter().map(|&j| prof.grid[j]).collect();
        prof.phi = keep.iter().map(|&j| prof.phi[j]).collect();
        prof.phi_prime = keep.iter().map(|&j| prof.phi_prime[j]).collect();
        prof.phi_double_prime = keep.iter().map(|&j| prof.phi_double_prime[j]).collect();
        match holder_exponent_estimate(&prof) {
            Err(ProfileError::InsufficientNearBoundarySamples { found, .. }) => {
                assert_eq!(found, 0)
            }
            other => panic!("expected sample error, got {other:?}"),
        }
    }

    #[test]
    fn csv_export_round_trips_header() {
        let prof = build_profile(0.5, 33).unwrap();
        let dir = std::env::temp_dir().join("hydrolab_profile_test");
        std::fs::create_dir_all(&dir).unwrap();
        let csv = dir.join("profile.csv");
        let json = dir.join("profile.json");
        prof.write_csv(&csv).unwrap();
        prof.write_params_json(&json).unwrap();
        let text = std::fs::read_to_string(&csv).unwrap();
        assert!(text.starts_with("z,phi,phi_prime,phi_double_prime\n"));
        assert_eq!(text.lines().count(), 34);
        let params: ProfileParams =
            serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
        assert!((params.alpha - 0.5).abs() < 1e-15);
    }
}
