//! Minimal dense complex matrix kernel.
//!
//! Sized for the matrices that appear in this crate: 4x4 reduced density
//! matrices, site-local generators and full registers up to a few hundred
//! basis states. Storage is row-major.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

pub use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::DEFAULT_TOL;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == n_cols), "ragged rows");
        Self::from_fn(n_rows, n_cols, |r, c| rows[r][c])
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n_cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == n_cols), "ragged rows");
        Self::from_fn(rows.len(), n_cols, |r, c| C64::new(rows[r][c], 0.0))
    }

    pub fn diag(values: &[C64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (k, v) in values.iter().enumerate() {
            m[(k, k)] = *v;
        }
        m
    }

    pub fn column(values: &[C64]) -> Self {
        Self::from_fn(values.len(), 1, |r, _| values[r])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn shape(&self) -> String {
        format!("{}x{}", self.rows, self.cols)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    pub fn scale(&self, k: C64) -> Self {
        self.map(|z| z * k)
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|k| self[(k, k)]).sum()
    }

    /// Largest entry modulus.
    pub fn norm_max(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn norm_one(&self) -> f64 {
        (0..self.cols).map(|c| (0..self.rows).map(|r| self[(r, c)].norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows).map(|r| self.data[r * self.cols..(r + 1) * self.cols].iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ: {} vs {}", self.shape(), rhs.shape());
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let out_row = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// Max deviation from Hermiticity, `max |m_ij - conj(m_ji)|`.
    pub fn hermiticity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0_f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_square() && self.adjoint().matmul(self).max_abs_diff(&Self::identity(self.rows)) <= tol
    }

    /// Hermitian with every eigenvalue `>= -tol`.
    pub fn is_psd(&self, tol: f64) -> bool {
        if !self.is_hermitian(tol) {
            return false;
        }
        match eigh(self) {
            Ok((values, _)) => values.iter().all(|&v| v >= -tol),
            Err(_) => false,
        }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

pub fn sigma_x() -> CMatrix {
    CMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]])
}

pub fn sigma_y() -> CMatrix {
    CMatrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]])
}

pub fn sigma_z() -> CMatrix {
    CMatrix::from_rows(&[vec![ONE, ZERO], vec![ZERO, -ONE]])
}

/// Kronecker product; `(ra*rb) x (ca*cb)`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    CMatrix::from_fn(a.rows * b.rows, a.cols * b.cols, |r, c| a[(r / b.rows, c / b.cols)] * b[(r % b.rows, c % b.cols)])
}

// LU factorisation with partial pivoting, stored in place.
struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
    sign: f64,
}

fn lu_decompose(a: &CMatrix) -> Result<Lu> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: "square matrix".into(), found: a.shape() });
    }
    let n = a.rows;
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    for k in 0..n {
        let pivot = (k..n).max_by(|&x, &y| lu[(x, k)].norm().total_cmp(&lu[(y, k)].norm())).expect("nonempty range");
        if lu[(pivot, k)] == ZERO {
            return Err(Error::Singular);
        }
        if pivot != k {
            for c in 0..n {
                lu.data.swap(k * n + c, pivot * n + c);
            }
            perm.swap(k, pivot);
            sign = -sign;
        }
        let d = lu[(k, k)];
        for r in k + 1..n {
            let factor = lu[(r, k)] / d;
            lu[(r, k)] = factor;
            if factor == ZERO {
                continue;
            }
            for c in k + 1..n {
                let u = lu[(k, c)];
                lu[(r, c)] -= factor * u;
            }
        }
    }
    Ok(Lu { lu, perm, sign })
}

/// Solves `a * x = b` for a square `a`.
pub fn solve(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch { expected: format!("{} rows", a.rows), found: b.shape() });
    }
    let Lu { lu, perm, .. } = lu_decompose(a)?;
    let n = a.rows;
    let mut x = CMatrix::from_fn(n, b.cols, |r, c| b[(perm[r], c)]);
    for c in 0..b.cols {
        for r in 0..n {
            let mut acc = x[(r, c)];
            for k in 0..r {
                acc -= lu[(r, k)] * x[(k, c)];
            }
            x[(r, c)] = acc;
        }
        for r in (0..n).rev() {
            let mut acc = x[(r, c)];
            for k in r + 1..n {
                acc -= lu[(r, k)] * x[(k, c)];
            }
            x[(r, c)] = acc / lu[(r, r)];
        }
    }
    Ok(x)
}

pub fn det(a: &CMatrix) -> Result<C64> {
    match lu_decompose(a) {
        Ok(Lu { lu, sign, .. }) => Ok((0..a.rows).fold(C64::new(sign, 0.0), |acc, k| acc * lu[(k, k)])),
        Err(Error::Singular) => Ok(ZERO),
        Err(e) => Err(e),
    }
}

// Pade(13) coefficients and the 1-norm bound below which no scaling is needed.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// Matrix exponential by scaling and squaring around a degree-13 Pade core.
pub fn expm(a: &CMatrix) -> Result<CMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: "square matrix".into(), found: a.shape() });
    }
    let n = a.rows;
    let norm = a.norm_one();
    let squarings = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    let a = a.scale(C64::new(0.5_f64.powi(squarings), 0.0));

    let b = |k: usize| C64::new(PADE13[k], 0.0);
    let ident = CMatrix::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let lin = |c6: usize, c4: usize, c2: usize, c0: usize| -> CMatrix {
        let mut m = a6.scale(b(c6));
        m = &m + &a4.scale(b(c4));
        m = &m + &a2.scale(b(c2));
        &m + &ident.scale(b(c0))
    };
    let inner_u = &a6 * &(&(&a6.scale(b(13)) + &a4.scale(b(11))) + &a2.scale(b(9)));
    let u = &a * &(&inner_u + &lin(7, 5, 3, 1));
    let inner_v = &a6 * &(&(&a6.scale(b(12)) + &a4.scale(b(10))) + &a2.scale(b(8)));
    let v = &inner_v + &lin(6, 4, 2, 0);

    let mut x = solve(&(&v - &u), &(&v + &u))?;
    for _ in 0..squarings {
        x = &x * &x;
    }
    Ok(x)
}

/// `exp(-i h t)` for a Hermitian generator `h`.
pub fn expm_unitary(h: &CMatrix, t: f64) -> Result<CMatrix> {
    expm_unitary_with_tol(h, t, DEFAULT_TOL)
}

pub fn expm_unitary_with_tol(h: &CMatrix, t: f64, tol: f64) -> Result<CMatrix> {
    let residual = h.hermiticity_residual();
    if residual > tol {
        return Err(Error::NonHermitianInput { residual });
    }
    expm(&h.scale(C64::new(0.0, -t)))
}

// Householder reduction to upper Hessenberg form (eigenvalues only).
fn hessenberg(mut h: CMatrix) -> CMatrix {
    let n = h.rows;
    for k in 0..n.saturating_sub(2) {
        let x: Vec<C64> = (k + 1..n).map(|r| h[(r, k)]).collect();
        let x_norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if x_norm == 0.0 {
            continue;
        }
        let phase = if x[0] == ZERO { ONE } else { x[0] / x[0].norm() };
        let mut v = x.clone();
        v[0] += phase * x_norm;
        let v_norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if v_norm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= v_norm;
        }
        // H <- (I - 2 v v^H) H
        for c in 0..n {
            let dot: C64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * h[(k + 1 + i, c)]).sum();
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i, c)] -= 2.0 * vi * dot;
            }
        }
        // H <- H (I - 2 v v^H)
        for r in 0..n {
            let dot: C64 = v.iter().enumerate().map(|(i, vi)| h[(r, k + 1 + i)] * vi).sum();
            for (i, vi) in v.iter().enumerate() {
                h[(r, k + 1 + i)] -= 2.0 * dot * vi.conj();
            }
        }
        for r in k + 2..n {
            h[(r, k)] = ZERO;
        }
    }
    h
}

// Complex Givens pair (c, s) with [c s; -conj(s) c] [a; b] = [r; 0].
fn givens(a: C64, b: C64) -> (f64, C64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, ZERO);
    }
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let r = an.hypot(bn);
    (an / r, (a / an) * b.conj() / r)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let (m1, m2) = (mid + disc, mid - disc);
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// All eigenvalues of a general square complex matrix, with multiplicity.
///
/// Hessenberg reduction followed by single-shift QR sweeps with Wilkinson
/// shifts and deflation. Order of the returned values is unspecified.
pub fn eigvals_general(m: &CMatrix) -> Result<Vec<C64>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: "square matrix".into(), found: m.shape() });
    }
    let n = m.rows;
    let mut h = hessenberg(m.clone());
    let mut eig = vec![ZERO; n];
    let scale = h.norm_max().max(f64::MIN_POSITIVE);
    let max_iter = 30 * n.max(1);
    let mut hi = n - 1;
    let mut iter = 0;
    let mut total = 0;
    loop {
        if hi == 0 {
            eig[0] = h[(0, 0)];
            break;
        }
        let mut lo = hi;
        while lo > 0 {
            let s = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            let s = if s == 0.0 { scale } else { s };
            if h[(lo, lo - 1)].norm() <= f64::EPSILON * s {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if iter > max_iter {
            return Err(Error::ConvergenceFailure { iterations: total });
        }
        let mu = if iter % 10 == 0 {
            // exceptional shift to break cycles
            h[(hi, hi)] + C64::new(1.5 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        for k in lo..=hi {
            h[(k, k)] -= mu;
        }
        let mut rotations = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..=hi {
                let a = h[(k, j)];
                let b = h[(k + 1, j)];
                h[(k, j)] = a * c + s * b;
                h[(k + 1, j)] = -s.conj() * a + b * c;
            }
            rotations.push((c, s));
        }
        for (offset, &(c, s)) in rotations.iter().enumerate() {
            let k = lo + offset;
            for r in lo..=(k + 1).min(hi) {
                let x = h[(r, k)];
                let y = h[(r, k + 1)];
                h[(r, k)] = x * c + y * s.conj();
                h[(r, k + 1)] = -x * s + y * c;
            }
        }
        for k in lo..=hi {
            h[(k, k)] += mu;
        }
    }
    Ok(eig)
}

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the unitary whose columns are
/// the matching eigenvectors. Only the Hermitian part of `m` is used.
pub fn eigh(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: "square matrix".into(), found: m.shape() });
    }
    let n = m.rows;
    let mut a = CMatrix::from_fn(n, n, |r, c| (m[(r, c)] + m[(c, r)].conj()) * 0.5);
    let mut v = CMatrix::identity(n);
    let scale = a.norm_frobenius();
    const MAX_SWEEPS: usize = 60;
    let mut converged = n == 1 || scale == 0.0;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        let off: f64 =
            (0..n).flat_map(|r| (0..n).filter(move |&c| c != r).map(move |c| (r, c))).map(|(r, c)| a[(r, c)].norm_sqr()).sum::<f64>().sqrt();
        if off <= 1e-17 * scale {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                // G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q)
                let g_pp = C64::new(c, 0.0);
                let g_pq = C64::new(s, 0.0);
                let g_qp = -phase.conj() * s;
                let g_qq = phase.conj() * c;
                for k in 0..n {
                    let x = a[(k, p)];
                    let y = a[(k, q)];
                    a[(k, p)] = x * g_pp + y * g_qp;
                    a[(k, q)] = x * g_pq + y * g_qq;
                }
                for k in 0..n {
                    let x = a[(p, k)];
                    let y = a[(q, k)];
                    a[(p, k)] = g_pp.conj() * x + g_qp.conj() * y;
                    a[(q, k)] = g_pq.conj() * x + g_qq.conj() * y;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let x = v[(k, p)];
                    let y = v[(k, q)];
                    v[(k, p)] = x * g_pp + y * g_qp;
                    v[(k, q)] = x * g_pq + y * g_qq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure { iterations: sweeps });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok((values, vectors))
}

/// Singular values in descending order, by one-sided Jacobi orthogonalisation
/// of the columns. Absolute accuracy is of order `eps * ||m||`, with no loss
/// for the small singular values.
pub fn singular_values(m: &CMatrix) -> Result<Vec<f64>> {
    let (rows, n) = (m.rows, m.cols);
    let mut cols: Vec<Vec<C64>> = (0..n).map(|c| (0..rows).map(|r| m[(r, c)]).collect()).collect();
    const MAX_SWEEPS: usize = 60;
    let mut sweeps = 0;
    loop {
        sweeps += 1;
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: C64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + zeta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                #[allow(clippy::needless_range_loop)]
                for k in 0..rows {
                    let x = cols[p][k];
                    let y = cols[q][k];
                    cols[p][k] = x * c - y * phase.conj() * s;
                    cols[q][k] = x * s + y * phase.conj() * c;
                }
            }
        }
        if !rotated {
            break;
        }
        if sweeps >= MAX_SWEEPS {
            return Err(Error::ConvergenceFailure { iterations: sweeps });
        }
    }
    let mut values: Vec<f64> = cols.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}
