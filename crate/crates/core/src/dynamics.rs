//! Local single-excitation propagators and their action on sector states.
//!
//! Every propagator acts on one site's single-excitation subspace, with basis
//! vector `k` meaning "qubit `k` of this site carries the excitation". The
//! vacuum of each site carries zero energy, so free phases between sectors
//! are dropped; no concurrence depends on them.

use crate::error::{Error, Result};
use crate::linalg::{expm_unitary_with_tol, CMatrix, C64};
use crate::sector::{PhiSectorState, PsiSectorState, SectorState};
use crate::DEFAULT_TOL;

/// Jaynes-Cummings site: one two-level atom (qubit 1) coupled to one cavity
/// mode truncated to a single photon (qubit 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JcParams {
    /// Atom-cavity coupling `g >= 0`.
    pub g: f64,
    /// Detuning `(omega_0 - omega_cav) / 2`.
    pub delta: f64,
}

impl JcParams {
    pub fn new(g: f64, delta: f64) -> Result<Self> {
        if !(g.is_finite() && delta.is_finite()) || g < 0.0 {
            return Err(Error::InvalidParams(format!("coupling must be finite and >= 0 (g = {g}, delta = {delta})")));
        }
        Ok(Self { g, delta })
    }

    /// Generalised Rabi frequency `sqrt(delta^2 + g^2)`.
    pub fn rabi_frequency(&self) -> f64 {
        self.delta.hypot(self.g)
    }

    /// Restriction of the site Hamiltonian to its single-excitation subspace,
    /// measured from the mean of the two levels: `[[delta, g], [g, -delta]]`.
    pub fn restricted_hamiltonian(&self) -> CMatrix {
        CMatrix::from_real_rows(&[&[self.delta, self.g], &[self.g, -self.delta]])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalPropagator {
    pub u: CMatrix,
    pub t: f64,
}

impl LocalPropagator {
    pub fn identity(n: usize) -> Self {
        Self { u: CMatrix::identity(n), t: 0.0 }
    }

    pub fn dim(&self) -> usize {
        self.u.rows()
    }
}

/// Closed-form JC propagator `exp(-i t [[delta, g], [g, -delta]])`
/// on the basis (atom excited, cavity excited).
///
/// `g = delta = 0` gives the identity. Negative `t` gives the inverse.
pub fn jc_propagator(params: JcParams, t: f64) -> LocalPropagator {
    let omega = params.rabi_frequency();
    if omega == 0.0 {
        return LocalPropagator { u: CMatrix::identity(2), t };
    }
    let (sin, cos) = (omega * t).sin_cos();
    let k = sin / omega;
    let u = CMatrix::from_rows(&[
        vec![C64::new(cos, -params.delta * k), C64::new(0.0, -params.g * k)],
        vec![C64::new(0.0, -params.g * k), C64::new(cos, params.delta * k)],
    ]);
    LocalPropagator { u, t }
}

/// `exp(-i h t)` for a Hermitian single-excitation generator `h`.
pub fn generic_propagator(h_local: &CMatrix, t: f64) -> Result<LocalPropagator> {
    generic_propagator_with_tol(h_local, t, DEFAULT_TOL)
}

pub fn generic_propagator_with_tol(h_local: &CMatrix, t: f64, tol: f64) -> Result<LocalPropagator> {
    if !h_local.is_square() {
        return Err(Error::DimensionMismatch { expected: "square generator".into(), found: h_local.shape() });
    }
    Ok(LocalPropagator { u: expm_unitary_with_tol(h_local, t, tol)?, t })
}

fn check_dim(what: &str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected: format!("{what} of size {expected}"), found: found.to_string() });
    }
    Ok(())
}

/// `d_A -> U_A d_A`, `d_B -> U_B d_B`.
pub fn evolve_psi(s: &PsiSectorState, ua: &LocalPropagator, ub: &LocalPropagator) -> Result<PsiSectorState> {
    check_dim("site A propagator", s.n_a(), ua.dim())?;
    check_dim("site B propagator", s.n_b(), ub.dim())?;
    Ok(PsiSectorState { d_a: ua.u.mul_vec(&s.d_a), d_b: ub.u.mul_vec(&s.d_b) })
}

/// `c -> U_A c U_B^T`; the vacuum amplitude is untouched.
pub fn evolve_phi(s: &PhiSectorState, ua: &LocalPropagator, ub: &LocalPropagator) -> Result<PhiSectorState> {
    check_dim("site A propagator", s.n_a(), ua.dim())?;
    check_dim("site B propagator", s.n_b(), ub.dim())?;
    Ok(PhiSectorState { c: &(&ua.u * &s.c) * &ub.u.transpose(), c0: s.c0 })
}

pub fn evolve(s: &SectorState, ua: &LocalPropagator, ub: &LocalPropagator) -> Result<SectorState> {
    Ok(match s {
        SectorState::Psi(psi) => SectorState::Psi(evolve_psi(psi, ua, ub)?),
        SectorState::Phi(phi) => SectorState::Phi(evolve_phi(phi, ua, ub)?),
    })
}

/// Markovian loss treated as an envelope on concurrences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampingParams {
    /// Per-qubit decay rate, applied to every pairwise concurrence.
    pub gamma: f64,
    /// Decay rate of the global concurrence; equal to `gamma` unless set.
    pub kappa: f64,
}

impl DampingParams {
    pub fn new(gamma: f64) -> Result<Self> {
        Self::with_kappa(gamma, gamma)
    }

    pub fn with_kappa(gamma: f64, kappa: f64) -> Result<Self> {
        if !(gamma.is_finite() && kappa.is_finite()) || gamma < 0.0 || kappa < 0.0 {
            return Err(Error::InvalidParams(format!("decay rates must be >= 0 (gamma = {gamma}, kappa = {kappa})")));
        }
        Ok(Self { gamma, kappa })
    }

    pub fn none() -> Self {
        Self { gamma: 0.0, kappa: 0.0 }
    }

    pub fn envelope(&self, t: f64) -> f64 {
        (-self.gamma * t).exp()
    }

    pub fn global_envelope(&self, t: f64) -> f64 {
        (-self.kappa * t).exp()
    }

    /// `C_AB(0) exp(-kappa t)`.
    pub fn global_concurrence(&self, cab0: f64, t: f64) -> f64 {
        cab0 * self.global_envelope(t)
    }
}

/// Multiplies each concurrence sample by `exp(-gamma t)`.
pub fn apply_damping(series: &[f64], times: &[f64], p: &DampingParams) -> Vec<f64> {
    assert_eq!(series.len(), times.len(), "series and time grid differ in length");
    series.iter().zip(times).map(|(c, &t)| c * p.envelope(t)).collect()
}

/// Parses a site Hamiltonian restricted to its single-excitation subspace.
///
/// Format: first line `N`, then `N` lines of `N` whitespace-separated
/// `re,im` entries. The matrix must be Hermitian within `tol`.
pub fn parse_hamiltonian(text: &str, tol: f64) -> Result<CMatrix> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (first_idx, first) = lines.next().ok_or(Error::Parse { line: 1, message: "empty Hamiltonian file".into() })?;
    let n: usize =
        first.trim().parse().map_err(|_| Error::Parse { line: first_idx + 1, message: format!("expected dimension, found '{}'", first.trim()) })?;
    if n == 0 {
        return Err(Error::Parse { line: first_idx + 1, message: "dimension must be positive".into() });
    }
    let mut rows = Vec::with_capacity(n);
    for (idx, line) in lines {
        let line_no = idx + 1;
        let row = line
            .split_whitespace()
            .map(|tok| parse_entry(tok).ok_or_else(|| Error::Parse { line: line_no, message: format!("bad entry '{tok}', expected re,im") }))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::Parse { line: line_no, message: format!("expected {n} entries, found {}", row.len()) });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Parse { line: 0, message: format!("expected {n} rows, found {}", rows.len()) });
    }
    let h = CMatrix::from_rows(&rows);
    let residual = h.hermiticity_residual();
    if residual > tol {
        return Err(Error::NonHermitianInput { residual });
    }
    Ok(h)
}

fn parse_entry(tok: &str) -> Option<C64> {
    let (re, im) = tok.split_once(',')?;
    Some(C64::new(re.trim().parse().ok()?, im.trim().parse().ok()?))
}

/// Inverse of [`parse_hamiltonian`].
pub fn format_hamiltonian(h: &CMatrix) -> String {
    let mut out = format!("{}\n", h.rows());
    for r in 0..h.rows() {
        let row: Vec<String> = (0..h.cols()).map(|c| format!("{},{}", h[(r, c)].re, h[(r, c)].im)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
