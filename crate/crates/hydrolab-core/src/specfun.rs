//! Special functions: log-Gamma, Beta, incomplete/regularized Beta, and
//! Gauss-Jacobi quadrature for endpoint-singular weights on (0, 1).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecFunError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
}

type Result<T> = std::result::Result<T, SpecFunError>;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_74;

// Stirling series coefficients B_{2j} / (2j (2j-1)) for j = 1..7
const STIRLING: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
];

/// Natural log of the Gamma function for `x > 0`.
///
/// Asymptotic Stirling series after shifting the argument above 10; relative
/// accuracy of about 1e-14 over `[1e-3, 1e6]`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(SpecFunError::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    let mut shift = 0.0;
    let mut y = x;
    while y < 10.0 {
        shift += y.ln();
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv;
    for c in STIRLING {
        series += c * p;
        p *= inv2;
    }
    Ok((y - 0.5) * y.ln() - y + LN_SQRT_2PI + series - shift)
}

/// log Beta, `ln B(a, b)`.
pub fn ln_beta(a: f64, b: f64) -> Result<f64> {
    Ok(ln_gamma(a)? + ln_gamma(b)? - ln_gamma(a + b)?)
}

/// Beta function `B(a, b) = Gamma(a) Gamma(b) / Gamma(a+b)` for `a, b > 0`.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    Ok(ln_beta(a, b)?.exp())
}

/// Incomplete Beta `B(x; a, b) = int_0^x t^{a-1} (1-t)^{b-1} dt`.
pub fn beta_inc(x: f64, a: f64, b: f64) -> Result<f64> {
    Ok(beta_reg(x, a, b)? * beta(a, b)?)
}

/// Regularized incomplete Beta `I(x; a, b) = B(x; a, b) / B(a, b)`.
///
/// Continued fraction with the symmetry flip at `x > (a+1)/(a+b+2)`, which
/// keeps the fraction in its fast-converging regime on both sides.
pub fn beta_reg(x: f64, a: f64, b: f64) -> Result<f64> {
    check_reg_args(x, a, b)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    let front = (a * x.ln() + b * (1.0 - x).ln() - ln_beta(a, b)?).exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        Ok(front * beta_cf(x, a, b)? / a)
    } else {
        Ok(1.0 - front * beta_cf(1.0 - x, b, a)? / b)
    }
}

/// Series form of the regularized Beta,
/// `I(x;a,b) = x^a (1-x)^b / (a B(a,b)) * {1 + sum_{n>=0} [B(a+1,n+1)/B(a+b,n+1)] x^{n+1}}`.
///
/// Slowly convergent as `x -> 1`; intended as an independent evaluation route
/// for `x` away from 1, agreeing with [`beta_reg`] to 1e-10.
pub fn beta_reg_series(x: f64, a: f64, b: f64) -> Result<f64> {
    check_reg_args(x, a, b)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    // ratio B(a+1, n+1)/B(a+b, n+1) obeys r_{n+1}/r_n = (a+b+n+1)/(a+n+2)
    let mut ratio = (a + b) / (a + 1.0);
    let mut power = x;
    let mut sum = 1.0;
    let mut converged = false;
    for n in 0..200_000 {
        let term = ratio * power;
        sum += term;
        if term <= sum * 1e-17 {
            converged = true;
            break;
        }
        let nf = n as f64;
        ratio *= (a + b + nf + 1.0) / (a + nf + 2.0);
        power *= x;
    }
    if !converged {
        return Err(SpecFunError::NoConvergence(format!(
            "beta_reg_series stalled at x={x}, a={a}, b={b}"
        )));
    }
    let front = (a * x.ln() + b * (1.0 - x).ln() - ln_beta(a, b)?).exp() / a;
    Ok(front * sum)
}

fn check_reg_args(x: f64, a: f64, b: f64) -> Result<()> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(SpecFunError::Domain(format!(
            "beta arguments must be positive, got a={a}, b={b}"
        )));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(SpecFunError::Domain(format!("x must lie in [0,1], got {x}")));
    }
    Ok(())
}

/// Lentz continued fraction for the regularized Beta (valid for
/// `x < (a+1)/(a+b+2)`).
fn beta_cf(x: f64, a: f64, b: f64) -> Result<f64> {
    const FPMIN: f64 = 1e-300;
    const EPS: f64 = 3e-16;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < FPMIN {
        d = FPMIN;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..500 {
        let mf = m as f64;
        let m2 = 2.0 * mf;
        let aa = mf * (b - mf) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + mf) * (qab + mf) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() <= EPS {
            return Ok(h);
        }
    }
    Err(SpecFunError::NoConvergence(format!(
        "incomplete beta continued fraction: x={x}, a={a}, b={b}"
    )))
}

/// Gauss-Jacobi rule for `int_0^1 f(t) t^le (1-t)^re dt` with `le, re > -1`.
///
/// Nodes strictly inside (0, 1), ascending; exact for polynomial `f` up to
/// degree `2 node_count - 1`.
#[derive(Debug, Clone)]
pub struct JacobiQuadrature {
    pub node_count: usize,
    pub left_exponent: f64,
    pub right_exponent: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl JacobiQuadrature {
    /// Apply the rule; the weight `t^le (1-t)^re` is built into the weights.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(self.weights.iter())
            .map(|(&t, &w)| w * f(t))
            .sum()
    }

    /// Largest relative moment error against the closed-form Beta moments
    /// `int t^{k+le} (1-t)^{re} dt = B(k+le+1, re+1)` for `k = 0..2n-1`.
    pub fn max_moment_error(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for k in 0..2 * self.node_count {
            let exact = beta(k as f64 + self.left_exponent + 1.0, self.right_exponent + 1.0)?;
            let got = self.integrate(|t| t.powi(k as i32));
            worst = worst.max(((got - exact) / exact).abs());
        }
        Ok(worst)
    }
}

/// Construct a Gauss-Jacobi rule by bracketed Newton iteration on the Jacobi
/// polynomial, scanning a Chebyshev grid in theta for the sign changes.
pub fn gauss_jacobi(node_count: usize, left_exponent: f64, right_exponent: f64) -> Result<JacobiQuadrature> {
    if node_count == 0 {
        return Err(SpecFunError::Domain("node_count must be positive".into()));
    }
    if left_exponent <= -1.0 || right_exponent <= -1.0 {
        return Err(SpecFunError::Domain(format!(
            "Jacobi exponents must exceed -1, got ({left_exponent}, {right_exponent})"
        )));
    }
    // standard weight (1-x)^alpha (1+x)^beta on [-1,1]; the map t=(1+x)/2
    // puts alpha at t=1 and beta at t=0
    let alpha = right_exponent;
    let beta_e = left_exponent;
    let n = node_count;

    let roots = jacobi_roots(n, alpha, beta_e)?;

    // w_i = 2^{a+b+1} G(n+a+1) G(n+b+1) / (G(n+a+b+1) n!) / ((1-x^2) P_n'(x)^2);
    // the log-gamma combination cancels exactly for the Legendre case
    let ln_pref = ln_gamma(n as f64 + alpha + 1.0)? + ln_gamma(n as f64 + beta_e + 1.0)?
        - ln_gamma(n as f64 + alpha + beta_e + 1.0)?
        - ln_gamma(n as f64 + 1.0)?;
    let pref = ln_pref.exp() * 2f64.powf(alpha + beta_e + 1.0);
    let scale_01 = 0.5f64.powf(left_exponent + right_exponent + 1.0);

    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for &x in &roots {
        let (pn, pnm1) = jacobi_eval(n, alpha, beta_e, x);
        let dp = jacobi_derivative(n, alpha, beta_e, x, pn, pnm1);
        let w = pref / ((1.0 - x * x) * dp * dp);
        if !(w > 0.0) || !w.is_finite() {
            return Err(SpecFunError::NoConvergence(format!(
                "nonpositive Jacobi weight at node x={x}: {w}"
            )));
        }
        nodes.push(0.5 * (1.0 + x));
        weights.push(w * scale_01);
    }
    Ok(JacobiQuadrature {
        node_count: n,
        left_exponent,
        right_exponent,
        nodes,
        weights,
    })
}

/// Evaluate `(P_n, P_{n-1})` by the three-term recurrence.
fn jacobi_eval(n: usize, a: f64, b: f64, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut pm1 = 1.0;
    let mut p = 0.5 * ((a + b + 2.0) * x + (a - b));
    for k in 2..=n {
        let kf = k as f64;
        let a1 = 2.0 * kf * (kf + a + b) * (2.0 * kf + a + b - 2.0);
        let a2 = (2.0 * kf + a + b - 1.0) * (a * a - b * b);
        let a3 = (2.0 * kf + a + b - 1.0) * (2.0 * kf + a + b) * (2.0 * kf + a + b - 2.0);
        let a4 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * (2.0 * kf + a + b);
        let next = ((a2 + a3 * x) * p - a4 * pm1) / a1;
        pm1 = p;
        p = next;
    }
    (p, pm1)
}

fn jacobi_derivative(n: usize, a: f64, b: f64, x: f64, pn: f64, pnm1: f64) -> f64 {
    let nf = n as f64;
    (nf * (a - b - (2.0 * nf + a + b) * x) * pn + 2.0 * (nf + a) * (nf + b) * pnm1)
        / ((2.0 * nf + a + b) * (1.0 - x * x))
}

/// All `n` roots of `P_n^{(a,b)}` in (-1, 1), ascending.
fn jacobi_roots(n: usize, a: f64, b: f64) -> Result<Vec<f64>> {
    use std::f64::consts::PI;
    let mut samples_per_root = 16usize;
    loop {
        let k = samples_per_root * (n + 1);
        let xs: Vec<f64> = (0..=k).map(|j| (PI * j as f64 / k as f64).cos()).collect();
        let vals: Vec<f64> = xs.iter().map(|&x| jacobi_eval(n, a, b, x).0).collect();
        let mut brackets = Vec::new();
        for i in 0..k {
            if vals[i] == 0.0 {
                brackets.push((xs[i], xs[i]));
            } else if vals[i] * vals[i + 1] < 0.0 {
                brackets.push((xs[i + 1], xs[i])); // ascending order
            }
        }
        if brackets.len() == n {
            let mut roots: Vec<f64> = brackets
                .into_iter()
                .map(|(lo, hi)| polish_root(n, a, b, lo, hi))
                .collect::<Result<_>>()?;
            roots.sort_by(|p, q| p.partial_cmp(q).unwrap());
            return Ok(roots);
        }
        samples_per_root *= 2;
        if samples_per_root > 512 {
            return Err(SpecFunError::NoConvergence(format!(
                "found {} sign changes for {} Jacobi roots (a={a}, b={b})",
                brackets.len(),
                n
            )));
        }
    }
}

/// Newton iteration safeguarded by the bracket; tolerance 1e-14, 100 iterations.
fn polish_root(n: usize, a: f64, b: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut flo = jacobi_eval(n, a, b, lo).0;
    if flo == 0.0 {
        return Ok(lo);
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..100 {
        let (p, pm1) = jacobi_eval(n, a, b, x);
        if p == 0.0 {
            return Ok(x);
        }
        if p * flo < 0.0 {
            hi = x;
        } else {
            lo = x;
            flo = p;
        }
        let dp = jacobi_derivative(n, a, b, x, p, pm1);
        let mut next = x - p / dp;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-14 * x.abs().max(1.0) {
            return Ok(next);
        }
        x = next;
    }
    Err(SpecFunError::NoConvergence(format!(
        "Jacobi root iteration stalled in [{lo}, {hi}]"
    )))
}
