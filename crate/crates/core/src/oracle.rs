//! Brute-force verification path on the full `2^(N+M)` register.
//!
//! Nothing here uses the sector closed forms: states are embedded as full
//! amplitude vectors, evolved with the matrix exponential of the lifted site
//! Hamiltonians, reduced by explicit partial traces and scored with the
//! general Wootters formula.
//!
//! Register positions `0..N` are `a_1..a_N`, positions `N..N+M` are
//! `b_1..b_M`. Position 0 is the most significant bit of a basis index.

use crate::entanglement::{concurrence_wootters_with_tol, Partition};
use crate::error::{Error, Result};
use crate::linalg::{expm_unitary_with_tol, kron, CMatrix, C64, ZERO};
use crate::sector::{BellKind, PhiSectorState, PsiSectorState, SectorState};
use crate::DEFAULT_TOL;

/// Largest register handled, in qubits.
pub const MAX_QUBITS: usize = 12;
/// Largest reduced state `partial_trace` returns, in qubits.
pub const MAX_KEPT: usize = 4;
/// Registers up to this dimension are evolved with the full generator
/// `H_A (x) 1 + 1 (x) H_B`; larger ones with the factorised site unitaries.
pub const FULL_GENERATOR_MAX_DIM: usize = 256;

// amplitudes below this are treated as structurally zero
const AMPLITUDE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct FullState {
    n_a: usize,
    n_b: usize,
    amps: Vec<C64>,
}

impl FullState {
    pub fn new(n_a: usize, n_b: usize, amps: Vec<C64>) -> Result<Self> {
        check_register(n_a, n_b)?;
        if amps.len() != 1 << (n_a + n_b) {
            return Err(Error::DimensionMismatch { expected: format!("{} amplitudes", 1usize << (n_a + n_b)), found: amps.len().to_string() });
        }
        Ok(Self { n_a, n_b, amps })
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    pub fn qubits(&self) -> usize {
        self.n_a + self.n_b
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Basis index with exactly the listed register positions set.
    pub fn index_of(&self, positions: &[usize]) -> usize {
        positions.iter().fold(0, |acc, &p| acc | bit(self.qubits(), p))
    }

    /// Excitation count on each site for basis index `x`.
    pub fn site_weights(&self, x: usize) -> (u32, u32) {
        let b_mask = (1usize << self.n_b) - 1;
        ((x >> self.n_b).count_ones(), (x & b_mask).count_ones())
    }

    /// Total probability on basis states outside the given Bell sector.
    pub fn leakage(&self, kind: BellKind) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|&(x, _)| {
                let w = self.site_weights(x);
                match kind {
                    BellKind::Psi => w != (1, 0) && w != (0, 1),
                    BellKind::Phi => w != (1, 1) && w != (0, 0),
                }
            })
            .map(|(_, z)| z.norm_sqr())
            .sum()
    }
}

fn check_register(n_a: usize, n_b: usize) -> Result<()> {
    if n_a == 0 || n_b == 0 {
        return Err(Error::InvalidParams("each site needs at least one qubit".into()));
    }
    if n_a + n_b > MAX_QUBITS {
        return Err(Error::RegisterTooLarge { qubits: n_a + n_b, max: MAX_QUBITS });
    }
    Ok(())
}

fn bit(qubits: usize, position: usize) -> usize {
    1 << (qubits - 1 - position)
}

/// Places sector amplitudes on their register basis strings.
pub fn embed(state: &SectorState) -> Result<FullState> {
    let (n_a, n_b) = (state.n_a(), state.n_b());
    check_register(n_a, n_b)?;
    let q = n_a + n_b;
    let mut amps = vec![ZERO; 1 << q];
    match state {
        SectorState::Psi(s) => {
            for (i, z) in s.d_a.iter().enumerate() {
                amps[bit(q, i)] = *z;
            }
            for (j, z) in s.d_b.iter().enumerate() {
                amps[bit(q, n_a + j)] = *z;
            }
        }
        SectorState::Phi(s) => {
            for i in 0..n_a {
                for j in 0..n_b {
                    amps[bit(q, i) | bit(q, n_a + j)] = s.c[(i, j)];
                }
            }
            amps[0] = s.c0;
        }
    }
    FullState::new(n_a, n_b, amps)
}

/// Reads the sector amplitudes back out; anything outside the sector is
/// dropped (see [`FullState::leakage`]).
pub fn extract(s: &FullState, kind: BellKind) -> SectorState {
    let (n_a, n_b, q) = (s.n_a, s.n_b, s.qubits());
    match kind {
        BellKind::Psi => SectorState::Psi(PsiSectorState {
            d_a: (0..n_a).map(|i| s.amps[bit(q, i)]).collect(),
            d_b: (0..n_b).map(|j| s.amps[bit(q, n_a + j)]).collect(),
        }),
        BellKind::Phi => {
            SectorState::Phi(PhiSectorState { c: CMatrix::from_fn(n_a, n_b, |i, j| s.amps[bit(q, i) | bit(q, n_a + j)]), c0: s.amps[0] })
        }
    }
}

/// Lifts a single-excitation generator to the site's `2^n` register: the
/// weight-1 block is `h`, every other block is zero.
pub fn lift_site_hamiltonian(h: &CMatrix, n: usize) -> Result<CMatrix> {
    if h.rows() != n || h.cols() != n {
        return Err(Error::DimensionMismatch { expected: format!("{n}x{n} generator"), found: h.shape() });
    }
    let mut lifted = CMatrix::zeros(1 << n, 1 << n);
    for r in 0..n {
        for c in 0..n {
            lifted[(bit(n, r), bit(n, c))] = h[(r, c)];
        }
    }
    Ok(lifted)
}

fn check_generator(h: &CMatrix, n: usize, site: &str, tol: f64) -> Result<()> {
    if h.rows() != n || h.cols() != n {
        return Err(Error::DimensionMismatch { expected: format!("{n}x{n} generator for site {site}"), found: h.shape() });
    }
    let residual = h.hermiticity_residual();
    if residual > tol {
        return Err(Error::NonHermitianInput { residual });
    }
    Ok(())
}

/// `exp(-i (H_A + H_B) t)` applied to the full register.
pub fn evolve_full(s: &FullState, h_a: &CMatrix, h_b: &CMatrix, t: f64) -> Result<FullState> {
    evolve_full_with_tol(s, h_a, h_b, t, DEFAULT_TOL)
}

pub fn evolve_full_with_tol(s: &FullState, h_a: &CMatrix, h_b: &CMatrix, t: f64, tol: f64) -> Result<FullState> {
    check_generator(h_a, s.n_a, "A", tol)?;
    check_generator(h_b, s.n_b, "B", tol)?;
    let lifted_a = lift_site_hamiltonian(h_a, s.n_a)?;
    let lifted_b = lift_site_hamiltonian(h_b, s.n_b)?;
    let dim = s.amps.len();
    if dim <= FULL_GENERATOR_MAX_DIM {
        let total = &kron(&lifted_a, &CMatrix::identity(1 << s.n_b)) + &kron(&CMatrix::identity(1 << s.n_a), &lifted_b);
        let u = expm_unitary_with_tol(&total, t, tol)?;
        return Ok(FullState { amps: u.mul_vec(&s.amps), ..s.clone() });
    }
    let ua = expm_unitary_with_tol(&lifted_a, t, tol)?;
    let ub = expm_unitary_with_tol(&lifted_b, t, tol)?;
    Ok(apply_site_unitaries(s, &ua, &ub))
}

/// Evolves site A only.
pub fn evolve_site_a(s: &FullState, h_a: &CMatrix, t: f64) -> Result<FullState> {
    check_generator(h_a, s.n_a, "A", DEFAULT_TOL)?;
    let ua = expm_unitary_with_tol(&lift_site_hamiltonian(h_a, s.n_a)?, t, DEFAULT_TOL)?;
    Ok(apply_site_unitaries(s, &ua, &CMatrix::identity(1 << s.n_b)))
}

/// Evolves site B only.
pub fn evolve_site_b(s: &FullState, h_b: &CMatrix, t: f64) -> Result<FullState> {
    check_generator(h_b, s.n_b, "B", DEFAULT_TOL)?;
    let ub = expm_unitary_with_tol(&lift_site_hamiltonian(h_b, s.n_b)?, t, DEFAULT_TOL)?;
    Ok(apply_site_unitaries(s, &CMatrix::identity(1 << s.n_a), &ub))
}

// psi viewed as a 2^N x 2^M matrix transforms as U_A psi U_B^T.
fn apply_site_unitaries(s: &FullState, ua: &CMatrix, ub: &CMatrix) -> FullState {
    let (da, db) = (1usize << s.n_a, 1usize << s.n_b);
    let psi = CMatrix::from_fn(da, db, |r, c| s.amps[r * db + c]);
    let out = &(ua * &psi) * &ub.transpose();
    FullState { amps: out.as_slice().to_vec(), ..s.clone() }
}

/// Reduced density matrix on `keep` (register positions, at most four).
///
/// Basis order is excitation-first: with `keep = [p, q]` the rows are
/// `|11>, |10>, |01>, |00>`, the first label belonging to `p`.
pub fn partial_trace(s: &FullState, keep: &[usize]) -> Result<CMatrix> {
    reduce(&s.amps, s.qubits(), keep)
}

fn reduce(amps: &[C64], qubits: usize, keep: &[usize]) -> Result<CMatrix> {
    if keep.is_empty() {
        return Err(Error::InvalidParams("partial trace must keep at least one qubit".into()));
    }
    if keep.len() > MAX_KEPT {
        return Err(Error::TooManyKept { requested: keep.len(), max: MAX_KEPT });
    }
    for (k, &p) in keep.iter().enumerate() {
        if p >= qubits {
            return Err(Error::IndexOutOfRange { index: p, size: qubits });
        }
        if keep[..k].contains(&p) {
            return Err(Error::InvalidParams(format!("register position {p} kept twice")));
        }
    }
    let k = keep.len();
    let dim = 1usize << k;
    let keep_mask = keep.iter().fold(0, |acc, &p| acc | bit(qubits, p));
    // excitation-first label of the kept bits of x
    let label = |x: usize| -> usize {
        let pattern = keep.iter().enumerate().fold(0, |acc, (slot, &p)| if x & bit(qubits, p) != 0 { acc | (1 << (k - 1 - slot)) } else { acc });
        dim - 1 - pattern
    };
    let mut blocks: std::collections::BTreeMap<usize, Vec<C64>> = std::collections::BTreeMap::new();
    for (x, z) in amps.iter().enumerate() {
        if *z == ZERO {
            continue;
        }
        blocks.entry(x & !keep_mask).or_insert_with(|| vec![ZERO; dim])[label(x)] = *z;
    }
    let mut rho = CMatrix::zeros(dim, dim);
    for v in blocks.values() {
        for r in 0..dim {
            if v[r] == ZERO {
                continue;
            }
            for c in 0..dim {
                rho[(r, c)] += v[r] * v[c].conj();
            }
        }
    }
    Ok(rho)
}

/// Replaces the qubits at `subset` by one effective qubit placed at position
/// 0; the remaining qubits keep their relative order after it.
///
/// The subset must carry at most one excitation, and its one-excitation
/// component must factor as a single direction `v` times a state of the
/// rest. The effective `|0>` is the subset vacuum and the effective `|1>` is
/// `v`.
fn collapse_subset(amps: &[C64], qubits: usize, subset: &[usize], tol: f64) -> Result<Vec<C64>> {
    let others: Vec<usize> = (0..qubits).filter(|p| !subset.contains(p)).collect();
    let rest_dim = 1usize << others.len();
    let rest_index = |x: usize| -> usize {
        others.iter().enumerate().fold(0, |acc, (slot, &p)| if x & bit(qubits, p) != 0 { acc | (1 << (others.len() - 1 - slot)) } else { acc })
    };
    let mut vacuum = vec![ZERO; rest_dim];
    // excited[k][r]: subset qubit k excited, rest in configuration r
    let mut excited = vec![vec![ZERO; rest_dim]; subset.len()];
    for (x, z) in amps.iter().enumerate() {
        let set: Vec<usize> = (0..subset.len()).filter(|&k| x & bit(qubits, subset[k]) != 0).collect();
        match set.len() {
            0 => vacuum[rest_index(x)] = *z,
            1 => excited[set[0]][rest_index(x)] = *z,
            _ if z.norm() > AMPLITUDE_FLOOR => return Err(Error::WeightOverflow { amplitude: z.norm() }),
            _ => {}
        }
    }
    let column_norm = |r: usize| excited.iter().map(|row| row[r].norm_sqr()).sum::<f64>();
    let best = (0..rest_dim).max_by(|&a, &b| column_norm(a).total_cmp(&column_norm(b))).expect("nonempty");
    let best_norm = column_norm(best).sqrt();
    let mut effective = vec![ZERO; 2 * rest_dim];
    effective[..rest_dim].copy_from_slice(&vacuum);
    if best_norm > 0.0 {
        let mut direction: Vec<C64> = excited.iter().map(|row| row[best] / best_norm).collect();
        let lead = direction.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).expect("nonempty subset");
        let phase = lead.conj() / lead.norm();
        direction.iter_mut().for_each(|v| *v *= phase);
        let mut residual = 0.0;
        for r in 0..rest_dim {
            let overlap: C64 = direction.iter().zip(&excited).map(|(v, row)| v.conj() * row[r]).sum();
            effective[rest_dim + r] = overlap;
            residual += direction.iter().zip(&excited).map(|(v, row)| (row[r] - v * overlap).norm_sqr()).sum::<f64>();
        }
        let residual = residual.sqrt();
        if residual > tol {
            return Err(Error::NonProductState { residual });
        }
    }
    Ok(effective)
}

/// Effective two-qubit state for a nonlocal partition: each subset is
/// collapsed onto one effective qubit, everything else is traced out.
/// Rows follow the excitation-first order, site-A group first.
pub fn partition_collapse(s: &FullState, q: &Partition) -> Result<CMatrix> {
    partition_collapse_with_tol(s, q, DEFAULT_TOL)
}

pub fn partition_collapse_with_tol(s: &FullState, q: &Partition, tol: f64) -> Result<CMatrix> {
    q.check(s.n_a, s.n_b)?;
    let qubits = s.qubits();
    let subset_a: Vec<usize> = q.subset_a.iter().copied().collect();
    let after_a = collapse_subset(&s.amps, qubits, &subset_a, tol)?;
    // remaining register: [eff_A, others in original order]
    let remaining: Vec<usize> = (0..qubits).filter(|p| !q.subset_a.contains(p)).collect();
    let subset_b: Vec<usize> =
        q.subset_b.iter().map(|&j| 1 + remaining.iter().position(|&p| p == s.n_a + j).expect("site B position survives")).collect();
    let qubits_after_a = 1 + remaining.len();
    let after_b = collapse_subset(&after_a, qubits_after_a, &subset_b, tol)?;
    // register is now [eff_B, eff_A, rest...]
    let qubits_after_b = 1 + qubits_after_a - subset_b.len();
    reduce(&after_b, qubits_after_b, &[1, 0])
}

/// `C_{a_i b_j}` from the partial trace.
pub fn pair_concurrence(s: &FullState, i: usize, j: usize) -> Result<f64> {
    if i >= s.n_a {
        return Err(Error::IndexOutOfRange { index: i, size: s.n_a });
    }
    if j >= s.n_b {
        return Err(Error::IndexOutOfRange { index: j, size: s.n_b });
    }
    concurrence_wootters_with_tol(&partial_trace(s, &[i, s.n_a + j])?, DEFAULT_TOL)
}

pub fn partition_concurrence(s: &FullState, q: &Partition) -> Result<f64> {
    concurrence_wootters_with_tol(&partition_collapse(s, q)?, DEFAULT_TOL)
}

/// `C_{A, b_j}`.
pub fn site_to_single_concurrence(s: &FullState, j: usize) -> Result<f64> {
    partition_concurrence(s, &Partition::new(0..s.n_a, [j])?)
}

/// `C_{a_i, B}`.
pub fn single_to_site_concurrence(s: &FullState, i: usize) -> Result<f64> {
    partition_concurrence(s, &Partition::new([i], 0..s.n_b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{evolve, generic_propagator, JcParams};
    use crate::entanglement::{concurrence_wootters, rho_pair, QubitPairIndex};
    use crate::sector::{make_bell, BellParams};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    fn random_hermitian(rng: &mut impl Rng, n: usize) -> CMatrix {
        let a = CMatrix::from_fn(n, n, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        (&a + &a.adjoint()).scale(C64::new(0.5, 0.0))
    }

    fn bell(kind: BellKind, alpha: f64, n_a: usize, n_b: usize) -> SectorState {
        make_bell(&BellParams::new(kind, alpha, 0.0, n_a, n_b).unwrap()).unwrap()
    }

    #[test]
    fn embed_psi_layout() {
        let full = embed(&bell(BellKind::Psi, FRAC_PI_4, 2, 2)).unwrap();
        let amps = full.amplitudes();
        assert_abs_diff_eq!(amps[0b1000].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(amps[0b0010].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_eq!(amps.iter().filter(|z| z.norm() > 0.0).count(), 2);
        assert_eq!(full.index_of(&[0]), 0b1000);
    }

    #[test]
    fn embed_phi_layout() {
        let alpha = 0.3_f64;
        let s = make_bell(&BellParams::new(BellKind::Phi, alpha, 0.8, 2, 2).unwrap()).unwrap();
        let full = embed(&s).unwrap();
        assert_abs_diff_eq!(full.amplitudes()[0b1010].re, alpha.cos(), epsilon = 1e-15);
        assert!((full.amplitudes()[0] - C64::from_polar(alpha.sin(), 0.8)).norm() < 1e-15);
        assert_eq!(extract(&full, BellKind::Phi), s);
    }

    #[test]
    fn embed_extract_round_trip() {
        for kind in [BellKind::Psi, BellKind::Phi] {
            let s = bell(kind, 0.5, 3, 2);
            let full = embed(&s).unwrap();
            assert_eq!(extract(&full, kind), s);
            assert_eq!(full.leakage(kind), 0.0);
            assert_abs_diff_eq!(full.norm_sqr(), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn register_cap() {
        let big = bell(BellKind::Psi, 0.5, 7, 6);
        assert!(matches!(embed(&big), Err(Error::RegisterTooLarge { qubits: 13, .. })));
    }

    #[test]
    fn zero_hamiltonians_leave_state_unchanged() {
        let full = embed(&bell(BellKind::Phi, 0.5, 2, 3)).unwrap();
        let out = evolve_full(&full, &CMatrix::zeros(2, 2), &CMatrix::zeros(3, 3), 3.0).unwrap();
        assert!(out.amplitudes().iter().zip(full.amplitudes()).all(|(a, b)| (a - b).norm() < 1e-15));
    }

    #[test]
    fn full_evolution_agrees_with_sector_evolution() {
        let mut rng = ChaCha8Rng::seed_from_u64(404);
        for &(n_a, n_b) in &[(2, 2), (2, 3), (3, 3), (5, 4)] {
            let (ha, hb) = (random_hermitian(&mut rng, n_a), random_hermitian(&mut rng, n_b));
            for kind in [BellKind::Psi, BellKind::Phi] {
                let s = bell(kind, 0.6, n_a, n_b);
                let t = rng.gen_range(0.0..6.0);
                let full = evolve_full(&embed(&s).unwrap(), &ha, &hb, t).unwrap();
                assert_abs_diff_eq!(full.norm_sqr(), 1.0, epsilon = 1e-12);
                assert!(full.leakage(kind) < 1e-24);
                let sector = evolve(&s, &generic_propagator(&ha, t).unwrap(), &generic_propagator(&hb, t).unwrap()).unwrap();
                let reference = embed(&sector).unwrap();
                let diff = full.amplitudes().iter().zip(reference.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                assert!(diff < 1e-10, "({n_a},{n_b}) {kind:?}: {diff}");
            }
        }
    }

    #[test]
    fn site_actions_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (ha, hb) = (random_hermitian(&mut rng, 2), random_hermitian(&mut rng, 3));
        let full = embed(&bell(BellKind::Phi, 0.9, 2, 3)).unwrap();
        let ab = evolve_site_b(&evolve_site_a(&full, &ha, 1.1).unwrap(), &hb, 1.1).unwrap();
        let ba = evolve_site_a(&evolve_site_b(&full, &hb, 1.1).unwrap(), &ha, 1.1).unwrap();
        let both = evolve_full(&full, &ha, &hb, 1.1).unwrap();
        for ((x, y), z) in ab.amplitudes().iter().zip(ba.amplitudes()).zip(both.amplitudes()) {
            assert!((x - y).norm() < 1e-12);
            assert!((x - z).norm() < 1e-12);
        }
    }

    #[test]
    fn non_hermitian_generator_is_rejected() {
        let full = embed(&bell(BellKind::Psi, 0.5, 2, 2)).unwrap();
        let bad = CMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(evolve_full(&full, &bad, &CMatrix::zeros(2, 2), 1.0), Err(Error::NonHermitianInput { .. })));
    }

    #[test]
    fn partial_trace_keep_all_is_projector() {
        let full = embed(&bell(BellKind::Psi, 0.4, 2, 2)).unwrap();
        let rho = partial_trace(&full, &[0, 1, 2, 3]).unwrap();
        assert!((&rho * &rho).max_abs_diff(&rho) < 1e-15);
        assert_abs_diff_eq!(rho.trace().re, 1.0, epsilon = 1e-15);
        // excitation-first: |1000> sits at label 15 - 8 = 7
        assert_abs_diff_eq!(rho[(7, 7)].re, 0.4f64.cos().powi(2), epsilon = 1e-15);
    }

    #[test]
    fn partial_trace_guards() {
        let full = embed(&bell(BellKind::Psi, 0.4, 3, 3)).unwrap();
        assert!(matches!(partial_trace(&full, &[0, 1, 2, 3, 4]), Err(Error::TooManyKept { .. })));
        assert!(partial_trace(&full, &[]).is_err());
        assert!(partial_trace(&full, &[0, 0]).is_err());
        assert!(partial_trace(&full, &[6]).is_err());
    }

    #[test]
    fn partial_trace_of_seed_matches_phi_form() {
        let alpha = 0.7_f64;
        let s = bell(BellKind::Phi, alpha, 2, 2);
        let full = embed(&s).unwrap();
        let rho = partial_trace(&full, &[0, 2]).unwrap();
        assert_abs_diff_eq!(rho[(0, 0)].re, alpha.cos().powi(2), epsilon = 1e-15);
        assert_abs_diff_eq!(rho[(0, 3)].re, alpha.cos() * alpha.sin(), epsilon = 1e-15);
        assert_abs_diff_eq!(rho[(3, 3)].re, alpha.sin().powi(2), epsilon = 1e-15);
        assert!(rho.max_abs_diff(&rho_pair(&s, QubitPairIndex::new(0, 0)).unwrap()) < 1e-15);
    }

    #[test]
    fn partial_trace_matches_closed_form_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let (ha, hb) = (random_hermitian(&mut rng, 3), random_hermitian(&mut rng, 2));
        for kind in [BellKind::Psi, BellKind::Phi] {
            let s = bell(kind, 0.45, 3, 2);
            let t = 2.3;
            let sector = evolve(&s, &generic_propagator(&ha, t).unwrap(), &generic_propagator(&hb, t).unwrap()).unwrap();
            let full = evolve_full(&embed(&s).unwrap(), &ha, &hb, t).unwrap();
            for i in 0..3 {
                for j in 0..2 {
                    let brute = partial_trace(&full, &[i, 3 + j]).unwrap();
                    let closed = rho_pair(&sector, QubitPairIndex::new(i, j)).unwrap();
                    assert!(brute.max_abs_diff(&closed) < 1e-10);
                }
            }
        }
    }

    #[test]
    fn full_partition_of_psi_is_global_bell_pair() {
        let alpha = 0.35_f64;
        let full = embed(&bell(BellKind::Psi, alpha, 2, 2)).unwrap();
        let q = Partition::full(2, 2).unwrap();
        let rho = partition_collapse(&full, &q).unwrap();
        assert_abs_diff_eq!(rho[(1, 1)].re, alpha.cos().powi(2), epsilon = 1e-15);
        assert_abs_diff_eq!(rho[(2, 2)].re, alpha.sin().powi(2), epsilon = 1e-15);
        assert_abs_diff_eq!(concurrence_wootters(&rho).unwrap(), (2.0 * alpha).sin(), epsilon = 1e-12);
    }

    #[test]
    fn full_partition_concurrence_is_invariant_in_time() {
        let p = JcParams::new(1.0, 0.5).unwrap();
        let h = p.restricted_hamiltonian();
        let alpha = 0.5_f64;
        let s0 = embed(&bell(BellKind::Psi, alpha, 2, 2)).unwrap();
        let q = Partition::full(2, 2).unwrap();
        for k in 0..20 {
            let s = evolve_full(&s0, &h, &h, 0.37 * k as f64).unwrap();
            assert_abs_diff_eq!(partition_concurrence(&s, &q).unwrap(), (2.0 * alpha).sin(), epsilon = 1e-10);
        }
    }

    #[test]
    fn singleton_partition_is_pair_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let (ha, hb) = (random_hermitian(&mut rng, 2), random_hermitian(&mut rng, 2));
        for kind in [BellKind::Psi, BellKind::Phi] {
            let full = evolve_full(&embed(&bell(kind, 0.8, 2, 2)).unwrap(), &ha, &hb, 1.7).unwrap();
            let collapsed = partition_collapse(&full, &Partition::new([1], [0]).unwrap()).unwrap();
            let traced = partial_trace(&full, &[1, 2]).unwrap();
            assert!(collapsed.max_abs_diff(&traced) < 1e-14);
        }
    }

    #[test]
    fn weight_overflow_is_detected() {
        // |1100> puts two excitations inside subset {a_1, a_2}
        let mut amps = vec![ZERO; 16];
        amps[0b1100] = C64::new(FRAC_1_SQRT_2, 0.0);
        amps[0b0000] = C64::new(FRAC_1_SQRT_2, 0.0);
        let full = FullState::new(2, 2, amps).unwrap();
        let q = Partition::full(2, 2).unwrap();
        assert!(matches!(partition_collapse(&full, &q), Err(Error::WeightOverflow { .. })));
    }

    #[test]
    fn non_product_subset_is_refused() {
        // c = diag(1,1)/sqrt(2): site A excitation direction depends on site B
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        let s = SectorState::Phi(PhiSectorState::new(CMatrix::from_rows(&[vec![h, ZERO], vec![ZERO, h]]), ZERO));
        let full = embed(&s).unwrap();
        let q = Partition::new([0, 1], [0]).unwrap();
        assert!(matches!(partition_collapse(&full, &q), Err(Error::NonProductState { .. })));
    }
}
