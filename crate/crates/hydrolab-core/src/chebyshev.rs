//! Chebyshev-Lobatto collocation on [0, 1]: differentiation matrices,
//! Clenshaw-Curtis quadrature, coefficient transforms and antiderivatives.
//!
//! Nodes are stored ascending, `z_j = (1 - cos(j pi / (n-1))) / 2`, so the
//! first node is the bottom wall `z = 0` and the last is the top wall `z = 1`.

use std::f64::consts::PI;

/// Collocation grid with precomputed operators.
///
/// The grid owns dense first/second derivative matrices (negative-sum-trick
/// diagonals so that constants differentiate to exactly zero), quadrature
/// weights, and a cumulative-integration matrix `Q` with
/// `(Q f)_i = int_0^{z_i} f`.
#[derive(Debug, Clone)]
pub struct ChebyshevGrid {
    n: usize,
    nodes: Vec<f64>,
    d1: Vec<f64>,
    d2: Vec<f64>,
    weights: Vec<f64>,
    cumulative: Vec<f64>,
    // cos(pi * l / (n-1)) for l = 0..2(n-1), used by the coefficient transforms
    cos_table: Vec<f64>,
}

impl ChebyshevGrid {
    /// Build a grid with `n >= 2` nodes.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "need at least two collocation nodes");
        let m = n - 1;
        let nodes: Vec<f64> = (0..n)
            .map(|j| {
                // sin^2 form avoids cancellation near the walls
                let s = (0.5 * PI * j as f64 / m as f64).sin();
                s * s
            })
            .collect();

        let d1 = diff_matrix(&nodes);
        let d2 = square_with_nst(&d1, n);
        let weights = clenshaw_curtis(n);
        let cos_table: Vec<f64> = (0..2 * m).map(|l| (PI * l as f64 / m as f64).cos()).collect();

        let mut grid = ChebyshevGrid {
            n,
            nodes,
            d1,
            d2,
            weights,
            cumulative: Vec::new(),
            cos_table,
        };
        grid.cumulative = grid.build_cumulative();
        grid
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> f64 {
        self.nodes[i]
    }

    /// Quadrature weights for `int_0^1 f dz = sum_i w_i f_i`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Smallest node spacing (next to the walls).
    pub fn min_spacing(&self) -> f64 {
        self.nodes[1] - self.nodes[0]
    }

    pub fn apply(matrix: &[f64], f: &[f64], n: usize) -> Vec<f64> {
        let mut out = vec![0.0; n];
        for i in 0..n {
            let row = &matrix[i * n..(i + 1) * n];
            let mut acc = 0.0;
            for (a, b) in row.iter().zip(f.iter()) {
                acc += a * b;
            }
            out[i] = acc;
        }
        out
    }

    /// First derivative of grid values.
    pub fn diff(&self, f: &[f64]) -> Vec<f64> {
        debug_assert_eq!(f.len(), self.n);
        Self::apply(&self.d1, f, self.n)
    }

    /// Second derivative of grid values.
    pub fn diff2(&self, f: &[f64]) -> Vec<f64> {
        debug_assert_eq!(f.len(), self.n);
        Self::apply(&self.d2, f, self.n)
    }

    pub fn d1(&self) -> &[f64] {
        &self.d1
    }

    pub fn d2(&self) -> &[f64] {
        &self.d2
    }

    /// Clenshaw-Curtis integral over [0, 1].
    pub fn integrate(&self, f: &[f64]) -> f64 {
        debug_assert_eq!(f.len(), self.n);
        self.weights.iter().zip(f.iter()).map(|(w, v)| w * v).sum()
    }

    /// Cumulative integral `F(z_i) = int_0^{z_i} f`, exact for the interpolant.
    pub fn cumulative_integral(&self, f: &[f64]) -> Vec<f64> {
        debug_assert_eq!(f.len(), self.n);
        Self::apply(&self.cumulative, f, self.n)
    }

    /// Chebyshev coefficients `a_k` of the interpolant in `x = 2z - 1`.
    pub fn to_coeffs(&self, f: &[f64]) -> Vec<f64> {
        let n = self.n;
        let m = n - 1;
        let mut a = vec![0.0; n];
        for (k, ak) in a.iter_mut().enumerate() {
            // standard ordering g_i = f(x_i), x_i = cos(i pi / m); our nodes
            // ascend in z so g_i = f[m - i]
            let mut acc = 0.5 * (f[m] + if k % 2 == 0 { f[0] } else { -f[0] });
            for i in 1..m {
                acc += f[m - i] * self.cos_table[(k * i) % (2 * m)];
            }
            let ck = if k == 0 || k == m { 2.0 } else { 1.0 };
            *ak = 2.0 * acc / (m as f64 * ck);
        }
        a
    }

    /// Evaluate a coefficient vector back on the grid nodes.
    pub fn from_coeffs(&self, a: &[f64]) -> Vec<f64> {
        let n = self.n;
        let m = n - 1;
        let mut f = vec![0.0; n];
        for j in 0..n {
            let i = m - j; // standard index of node j
            let mut acc = 0.0;
            for (k, ak) in a.iter().enumerate() {
                acc += ak * self.cos_table[(k * i) % (2 * m)];
            }
            f[j] = acc;
        }
        f
    }

    /// Evaluate the interpolant of coefficients `a` at arbitrary `z` (Clenshaw).
    pub fn eval_coeffs(a: &[f64], z: f64) -> f64 {
        let x = 2.0 * z - 1.0;
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for &ak in a[1..].iter().rev() {
            let b0 = 2.0 * x * b1 - b2 + ak;
            b2 = b1;
            b1 = b0;
        }
        a[0] + x * b1 - b2
    }

    fn build_cumulative(&self) -> Vec<f64> {
        let n = self.n;
        let mut q = vec![0.0; n * n];
        let mut unit = vec![0.0; n];
        for j in 0..n {
            unit[j] = 1.0;
            let col = self.antiderivative_direct(&unit);
            for i in 0..n {
                q[i * n + j] = col[i];
            }
            unit[j] = 0.0;
        }
        q
    }

    /// Antiderivative via the coefficient recurrence (used to build `Q`).
    fn antiderivative_direct(&self, f: &[f64]) -> Vec<f64> {
        let n = self.n;
        let a = self.to_coeffs(f);
        // coefficients of the antiderivative in x, truncated to degree n-1;
        // dz = dx / 2 contributes the factor 1/2
        let mut b = vec![0.0; n + 1];
        for k in 1..=n {
            // int T_0 = T_1 carries weight 1, not 1/(2k)
            let am1 = if k == 1 { 2.0 * a[0] } else { a[k - 1] };
            let ap1 = if k + 1 < n { a[k + 1] } else { 0.0 };
            b[k] = 0.5 * (am1 - ap1) / (2.0 * k as f64);
        }
        // fix b_0 so that F(z=0) = F(x=-1) = 0
        let mut alt = 0.0;
        for k in 1..=n {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            alt += s * b[k];
        }
        b[0] = -alt;
        let mut vals = self.from_coeffs(&b[..n]);
        // degree-n tail evaluated exactly: T_n at the nodes
        let m = n - 1;
        for (j, v) in vals.iter_mut().enumerate() {
            let i = m - j;
            *v += b[n] * (PI * (n as f64) * i as f64 / m as f64).cos();
        }
        vals
    }
}

fn diff_matrix(nodes: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut d = vec![0.0; n * n];
    let c = |i: usize| if i == 0 || i == n - 1 { 2.0 } else { 1.0 };
    for i in 0..n {
        let mut row_sum = 0.0;
        for j in 0..n {
            if i != j {
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                let v = (c(i) / c(j)) * sign / (nodes[i] - nodes[j]);
                d[i * n + j] = v;
                row_sum += v;
            }
        }
        d[i * n + i] = -row_sum;
    }
    d
}

/// `D2 = D * D` with the diagonal rebuilt by the negative-sum trick, which
/// keeps the boundary rows from amplifying roundoff.
fn square_with_nst(d: &[f64], n: usize) -> Vec<f64> {
    let mut d2 = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let dik = d[i * n + k];
            if dik == 0.0 {
                continue;
            }
            for j in 0..n {
                d2[i * n + j] += dik * d[k * n + j];
            }
        }
    }
    for i in 0..n {
        let mut row_sum = 0.0;
        for j in 0..n {
            if j != i {
                row_sum += d2[i * n + j];
            }
        }
        d2[i * n + i] = -row_sum;
    }
    d2
}

/// Clenshaw-Curtis weights on [0, 1] for the ascending Lobatto nodes.
fn clenshaw_curtis(n: usize) -> Vec<f64> {
    let m = n - 1;
    let mut w = vec![0.0; n];
    let boundary = if m % 2 == 0 {
        1.0 / (m * m - 1) as f64
    } else {
        1.0 / (m * m) as f64
    };
    w[0] = boundary;
    w[m] = boundary;
    for j in 1..m {
        let theta = PI * j as f64 / m as f64;
        let mut v = 1.0;
        if m % 2 == 0 {
            for k in 1..m / 2 {
                v -= 2.0 * (2.0 * k as f64 * theta).cos() / (4 * k * k - 1) as f64;
            }
            v -= (m as f64 * theta).cos() / (m * m - 1) as f64;
        } else {
            for k in 1..=(m - 1) / 2 {
                v -= 2.0 * (2.0 * k as f64 * theta).cos() / (4 * k * k - 1) as f64;
            }
        }
        w[j] = 2.0 * v / m as f64;
    }
    // the formulas above are for [-1, 1]; halve for [0, 1]
    for wi in w.iter_mut() {
        *wi *= 0.5;
    }
    w
}
