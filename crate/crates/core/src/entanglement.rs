//! Reduced two-qubit density matrices and concurrences.
//!
//! Two-qubit matrices use the excitation-first basis `|11>, |10>, |01>, |00>`
//! (first label: the site-A qubit). The spin-flip operator `sigma_y (x)
//! sigma_y` has the same matrix in this order as in the computational one,
//! so the Wootters construction needs no reordering.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::{eigh, eigvals_general, kron, sigma_y, singular_values, CMatrix, C64};
use crate::sector::{PhiSectorState, PsiSectorState, SectorState};
use crate::DEFAULT_TOL;

/// Eigenvalues of `rho` at or below this floor are treated as exact zeros
/// when factoring `rho = W W^H`.
const EIGEN_FLOOR: f64 = 1e-14;

/// Pair `(a_i, b_j)`, zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QubitPairIndex {
    pub i: usize,
    pub j: usize,
}

impl QubitPairIndex {
    pub fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }
}

/// Two nonlocal groups of qubits, zero-based indices into each site.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    pub subset_a: BTreeSet<usize>,
    pub subset_b: BTreeSet<usize>,
}

impl Partition {
    pub fn new(a: impl IntoIterator<Item = usize>, b: impl IntoIterator<Item = usize>) -> Result<Self> {
        let subset_a: BTreeSet<usize> = a.into_iter().collect();
        let subset_b: BTreeSet<usize> = b.into_iter().collect();
        if subset_a.is_empty() || subset_b.is_empty() {
            return Err(Error::EmptyPartition);
        }
        Ok(Self { subset_a, subset_b })
    }

    /// Whole site A against whole site B.
    pub fn full(n_a: usize, n_b: usize) -> Result<Self> {
        Self::new(0..n_a, 0..n_b)
    }

    pub fn check(&self, n_a: usize, n_b: usize) -> Result<()> {
        if self.subset_a.is_empty() || self.subset_b.is_empty() {
            return Err(Error::EmptyPartition);
        }
        if let Some(&i) = self.subset_a.iter().find(|&&i| i >= n_a) {
            return Err(Error::IndexOutOfRange { index: i, size: n_a });
        }
        if let Some(&j) = self.subset_b.iter().find(|&&j| j >= n_b) {
            return Err(Error::IndexOutOfRange { index: j, size: n_b });
        }
        Ok(())
    }
}

fn check_index(index: usize, size: usize) -> Result<()> {
    if index >= size {
        return Err(Error::IndexOutOfRange { index, size });
    }
    Ok(())
}

fn check_pair(p: QubitPairIndex, n_a: usize, n_b: usize) -> Result<()> {
    check_index(p.i, n_a)?;
    check_index(p.j, n_b)
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Reduced state of `(a_I, b_J)` for the one-excitation sector.
pub fn rho_pair_psi(s: &PsiSectorState, p: QubitPairIndex) -> Result<CMatrix> {
    check_pair(p, s.n_a(), s.n_b())?;
    let (da, db) = (s.d_a[p.i], s.d_b[p.j]);
    let rest: f64 = s.d_a.iter().enumerate().filter(|&(k, _)| k != p.i).map(|(_, z)| z.norm_sqr()).sum::<f64>()
        + s.d_b.iter().enumerate().filter(|&(k, _)| k != p.j).map(|(_, z)| z.norm_sqr()).sum::<f64>();
    let mut rho = CMatrix::zeros(4, 4);
    rho[(1, 1)] = real(da.norm_sqr());
    rho[(1, 2)] = da * db.conj();
    rho[(2, 1)] = da.conj() * db;
    rho[(2, 2)] = real(db.norm_sqr());
    rho[(3, 3)] = real(rest);
    Ok(rho)
}

/// Reduced state of `(a_I, b_J)` for the {two-excitation, vacuum} sector.
pub fn rho_pair_phi(s: &PhiSectorState, p: QubitPairIndex) -> Result<CMatrix> {
    check_pair(p, s.n_a(), s.n_b())?;
    let (n, m) = (s.n_a(), s.n_b());
    let c = &s.c;
    let cij = c[(p.i, p.j)];
    let row_rest: f64 = (0..m).filter(|&l| l != p.j).map(|l| c[(p.i, l)].norm_sqr()).sum();
    let col_rest: f64 = (0..n).filter(|&k| k != p.i).map(|k| c[(k, p.j)].norm_sqr()).sum();
    let mut elsewhere = s.c0.norm_sqr();
    for k in (0..n).filter(|&k| k != p.i) {
        for l in (0..m).filter(|&l| l != p.j) {
            elsewhere += c[(k, l)].norm_sqr();
        }
    }
    let mut rho = CMatrix::zeros(4, 4);
    rho[(0, 0)] = real(cij.norm_sqr());
    rho[(0, 3)] = cij * s.c0.conj();
    rho[(3, 0)] = cij.conj() * s.c0;
    rho[(1, 1)] = real(row_rest);
    rho[(2, 2)] = real(col_rest);
    rho[(3, 3)] = real(elsewhere);
    Ok(rho)
}

pub fn rho_pair(state: &SectorState, p: QubitPairIndex) -> Result<CMatrix> {
    match state {
        SectorState::Psi(s) => rho_pair_psi(s, p),
        SectorState::Phi(s) => rho_pair_phi(s, p),
    }
}

/// Checks that `rho` is a 4x4 density matrix within `tol`.
pub fn check_density_matrix(rho: &CMatrix, tol: f64) -> Result<()> {
    if rho.rows() != 4 || rho.cols() != 4 {
        return Err(Error::InvalidDensityMatrix(format!("expected 4x4, got {}", rho.shape())));
    }
    let herm = rho.hermiticity_residual();
    if herm > tol {
        return Err(Error::InvalidDensityMatrix(format!("not Hermitian (residual {herm:.3e})")));
    }
    let trace = rho.trace();
    if (trace - real(1.0)).norm() > tol {
        return Err(Error::InvalidDensityMatrix(format!("trace {:.12} != 1", trace.re)));
    }
    let (values, _) = eigh(rho)?;
    if values[0] < -tol {
        return Err(Error::InvalidDensityMatrix(format!("negative eigenvalue {:.3e}", values[0])));
    }
    Ok(())
}

fn spin_flip() -> CMatrix {
    kron(&sigma_y(), &sigma_y())
}

/// Wootters concurrence `max(0, s1 - s2 - s3 - s4)` of a two-qubit state,
/// where `s_k = sqrt(lambda_k)` and `lambda_k` are the eigenvalues of
/// `rho (Y rho* Y)` in decreasing order.
///
/// The `s_k` are taken directly as the singular values of `W^T Y W`, with
/// `rho = W W^H` from a Hermitian eigen-decomposition; this keeps the
/// small `s_k` at round-off level instead of at the square root of it.
pub fn concurrence_wootters(rho: &CMatrix) -> Result<f64> {
    concurrence_wootters_with_tol(rho, DEFAULT_TOL)
}

pub fn concurrence_wootters_with_tol(rho: &CMatrix, tol: f64) -> Result<f64> {
    check_density_matrix(rho, tol)?;
    let roots = spin_flip_roots(rho)?;
    Ok(combine_roots(&roots))
}

/// `sqrt(lambda_k)` of the spin-flip spectrum, descending, four entries.
pub fn spin_flip_roots(rho: &CMatrix) -> Result<Vec<f64>> {
    let (values, vectors) = eigh(rho)?;
    let kept: Vec<usize> = (0..values.len()).filter(|&k| values[k] > EIGEN_FLOOR).collect();
    if kept.is_empty() {
        return Ok(vec![0.0; 4]);
    }
    let w = CMatrix::from_fn(4, kept.len(), |r, c| vectors[(r, kept[c])] * values[kept[c]].sqrt());
    let tau = &(&w.transpose() * &spin_flip()) * &w;
    let mut roots = singular_values(&tau)?;
    roots.resize(4, 0.0);
    Ok(roots)
}

fn combine_roots(roots: &[f64]) -> f64 {
    (roots[0] - roots[1..].iter().sum::<f64>()).clamp(0.0, 1.0)
}

/// Eigenvalues of `rho (Y rho* Y)` from the general eigen-solver, real parts
/// clamped at zero, sorted descending.
pub fn spin_flip_spectrum(rho: &CMatrix) -> Result<Vec<f64>> {
    let y = spin_flip();
    let rho_tilde = &(&y * &rho.conj()) * &y;
    let mut values: Vec<f64> = eigvals_general(&(rho * &rho_tilde))?.iter().map(|z| z.re.max(0.0)).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Concurrence from the square roots of [`spin_flip_spectrum`]. Round-off in
/// vanishing eigenvalues enters at its square root, so expect ~1e-8 accuracy.
pub fn concurrence_from_spectrum(rho: &CMatrix) -> Result<f64> {
    check_density_matrix(rho, DEFAULT_TOL)?;
    let roots: Vec<f64> = spin_flip_spectrum(rho)?.iter().map(|v| v.sqrt()).collect();
    Ok(combine_roots(&roots))
}

/// Closed form for an X-shaped two-qubit matrix:
/// `2 max(0, |r03| - sqrt(r11 r22), |r12| - sqrt(r00 r33))`.
pub fn concurrence_x_state(rho: &CMatrix) -> f64 {
    let d = |k: usize| rho[(k, k)].re.max(0.0);
    let outer = rho[(0, 3)].norm() - (d(1) * d(2)).sqrt();
    let inner = rho[(1, 2)].norm() - (d(0) * d(3)).sqrt();
    (2.0 * outer.max(inner)).max(0.0)
}

/// `C_IJ = 2 |d_AI| |d_BJ|`.
pub fn concurrence_pair_psi(s: &PsiSectorState, p: QubitPairIndex) -> Result<f64> {
    check_pair(p, s.n_a(), s.n_b())?;
    Ok(2.0 * s.d_a[p.i].norm() * s.d_b[p.j].norm())
}

/// `C_IJ = max(0, 2 (|c_IJ| |c_0| - sqrt(sum_{n!=J} |c_In|^2 * sum_{m!=I} |c_mJ|^2)))`.
pub fn concurrence_pair_phi(s: &PhiSectorState, p: QubitPairIndex) -> Result<f64> {
    check_pair(p, s.n_a(), s.n_b())?;
    let row_rest: f64 = (0..s.n_b()).filter(|&l| l != p.j).map(|l| s.c[(p.i, l)].norm_sqr()).sum();
    let col_rest: f64 = (0..s.n_a()).filter(|&k| k != p.i).map(|k| s.c[(k, p.j)].norm_sqr()).sum();
    let value = 2.0 * (s.c[(p.i, p.j)].norm() * s.c0.norm() - (row_rest * col_rest).sqrt());
    Ok(value.max(0.0))
}

pub fn concurrence_pair(state: &SectorState, p: QubitPairIndex) -> Result<f64> {
    match state {
        SectorState::Psi(s) => concurrence_pair_psi(s, p),
        SectorState::Phi(s) => concurrence_pair_phi(s, p),
    }
}

/// All pairwise concurrences, `out[i][j] = C_{a_i b_j}`.
pub fn pair_concurrences(state: &SectorState) -> Vec<Vec<f64>> {
    (0..state.n_a())
        .map(|i| (0..state.n_b()).map(|j| concurrence_pair(state, QubitPairIndex::new(i, j)).expect("indices in range")).collect())
        .collect()
}

/// Concurrence between two groups of qubits in the one-excitation sector:
/// `2 sqrt(sum_{I in S} |d_AI|^2) sqrt(sum_{J in T} |d_BJ|^2)`.
///
/// Each group collapses to an effective qubit spanned by its vacuum and its
/// normalised excitation vector; the result is the pure-block X-state value.
pub fn concurrence_partition_psi(s: &PsiSectorState, q: &Partition) -> Result<f64> {
    q.check(s.n_a(), s.n_b())?;
    let wa: f64 = q.subset_a.iter().map(|&i| s.d_a[i].norm_sqr()).sum();
    let wb: f64 = q.subset_b.iter().map(|&j| s.d_b[j].norm_sqr()).sum();
    Ok(2.0 * wa.sqrt() * wb.sqrt())
}

/// `C_{A, b_J}` in the one-excitation sector.
pub fn concurrence_site_to_single_psi(s: &PsiSectorState, j: usize) -> Result<f64> {
    concurrence_partition_psi(s, &Partition::new(0..s.n_a(), [j])?)
}

/// `C_{a_I, B}` in the one-excitation sector.
pub fn concurrence_single_to_site_psi(s: &PsiSectorState, i: usize) -> Result<f64> {
    concurrence_partition_psi(s, &Partition::new([i], 0..s.n_b())?)
}

fn require_product(s: &PhiSectorState, tol: f64) -> Result<()> {
    let residual = s.rank1_residual();
    if residual > tol {
        return Err(Error::NonProductState { residual });
    }
    Ok(())
}

/// `C_{A, b_J} = 2 |c_0| sqrt(sum_i |c_iJ|^2)`; needs `c` of rank one.
pub fn concurrence_site_to_single_phi(s: &PhiSectorState, j: usize, tol: f64) -> Result<f64> {
    check_index(j, s.n_b())?;
    require_product(s, tol)?;
    Ok(2.0 * s.c0.norm() * s.col_weight(j).sqrt())
}

/// `C_{a_I, B} = 2 |c_0| sqrt(sum_j |c_Ij|^2)`; needs `c` of rank one.
pub fn concurrence_single_to_site_phi(s: &PhiSectorState, i: usize, tol: f64) -> Result<f64> {
    check_index(i, s.n_a())?;
    require_product(s, tol)?;
    Ok(2.0 * s.c0.norm() * s.row_weight(i).sqrt())
}

pub fn concurrence_site_to_single(state: &SectorState, j: usize, tol: f64) -> Result<f64> {
    match state {
        SectorState::Psi(s) => concurrence_site_to_single_psi(s, j),
        SectorState::Phi(s) => concurrence_site_to_single_phi(s, j, tol),
    }
}

pub fn concurrence_single_to_site(state: &SectorState, i: usize, tol: f64) -> Result<f64> {
    match state {
        SectorState::Psi(s) => concurrence_single_to_site_psi(s, i),
        SectorState::Phi(s) => concurrence_single_to_site_phi(s, i, tol),
    }
}

/// Effective two-qubit state of `(A, b_J)` for a product-form `Phi` state,
/// in the excitation-first basis.
pub fn rho_site_to_single_phi(s: &PhiSectorState, j: usize, tol: f64) -> Result<CMatrix> {
    check_index(j, s.n_b())?;
    require_product(s, tol)?;
    let on = s.col_weight(j);
    let rest = s.excited_weight() - on;
    let mut rho = CMatrix::zeros(4, 4);
    // site A collapsed onto its excitation direction, phase chosen so that
    // the |1_A 1_J> amplitude is real
    let coherence = on.sqrt() * s.c0.conj();
    rho[(0, 0)] = real(on);
    rho[(0, 3)] = coherence;
    rho[(3, 0)] = coherence.conj();
    rho[(1, 1)] = real(rest.max(0.0));
    rho[(3, 3)] = real(s.c0.norm_sqr());
    Ok(rho)
}
