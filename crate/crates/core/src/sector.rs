//! Sector states reachable from a Bell seed on `(a_1, b_1)`.
//!
//! Index 0 of every amplitude vector (and row/column 0 of the `Phi`
//! amplitude matrix) is the seeded qubit `a_1` / `b_1`.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellKind {
    /// `cos a |10> + e^{ib} sin a |01>`, one excitation shared between sites.
    Psi,
    /// `cos a |11> + e^{ib} sin a |00>`, both sites excited or neither.
    Phi,
}

impl BellKind {
    pub fn name(self) -> &'static str {
        match self {
            BellKind::Psi => "psi",
            BellKind::Phi => "phi",
        }
    }
}

impl std::str::FromStr for BellKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "psi" => Ok(BellKind::Psi),
            "phi" => Ok(BellKind::Phi),
            other => Err(Error::InvalidParams(format!("unknown Bell kind '{other}' (expected psi or phi)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellParams {
    pub kind: BellKind,
    /// Mixing angle, `0 <= alpha <= pi/2`.
    pub alpha: f64,
    /// Relative phase; never affects a concurrence.
    pub beta: f64,
    pub n_a: usize,
    pub n_b: usize,
}

impl BellParams {
    pub fn new(kind: BellKind, alpha: f64, beta: f64, n_a: usize, n_b: usize) -> Result<Self> {
        let params = Self { kind, alpha, beta, n_a, n_b };
        params.check()?;
        Ok(params)
    }

    pub fn check(&self) -> Result<()> {
        if !self.alpha.is_finite() || !self.beta.is_finite() {
            return Err(Error::InvalidParams("alpha and beta must be finite".into()));
        }
        if !(-1e-12..=FRAC_PI_2 + 1e-12).contains(&self.alpha) {
            return Err(Error::InvalidParams(format!("alpha = {} outside [0, pi/2]", self.alpha)));
        }
        if self.n_a == 0 || self.n_b == 0 {
            return Err(Error::InvalidParams("each site needs at least one qubit".into()));
        }
        Ok(())
    }

    /// `C_AB = 2 sin(alpha) cos(alpha)`.
    pub fn global_concurrence(&self) -> f64 {
        2.0 * self.alpha.sin() * self.alpha.cos()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsiSectorState {
    pub d_a: Vec<C64>,
    pub d_b: Vec<C64>,
}

impl PsiSectorState {
    pub fn new(d_a: Vec<C64>, d_b: Vec<C64>) -> Result<Self> {
        if d_a.is_empty() || d_b.is_empty() {
            return Err(Error::InvalidParams("amplitude vectors must be nonempty".into()));
        }
        Ok(Self { d_a, d_b })
    }

    /// Equal-amplitude state on `N + M` qubits (the W state).
    pub fn w_state(n_a: usize, n_b: usize) -> Result<Self> {
        let amp = C64::new(1.0 / ((n_a + n_b) as f64).sqrt(), 0.0);
        Self::new(vec![amp; n_a], vec![amp; n_b])
    }

    pub fn n_a(&self) -> usize {
        self.d_a.len()
    }

    pub fn n_b(&self) -> usize {
        self.d_b.len()
    }

    /// Total excitation probability held by site A, `sum_I |d_AI|^2`.
    pub fn weight_a(&self) -> f64 {
        self.d_a.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn weight_b(&self) -> f64 {
        self.d_b.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.weight_a() + self.weight_b()
    }

    pub fn global_concurrence(&self) -> f64 {
        2.0 * self.weight_a().sqrt() * self.weight_b().sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhiSectorState {
    /// `c[(i, j)]`: amplitude of `a_i` and `b_j` both excited.
    pub c: CMatrix,
    /// Vacuum amplitude.
    pub c0: C64,
}

impl PhiSectorState {
    pub fn new(c: CMatrix, c0: C64) -> Self {
        Self { c, c0 }
    }

    /// All `N*M + 1` amplitudes equal to `1/sqrt(N*M + 1)`.
    pub fn equal_amplitude(n_a: usize, n_b: usize) -> Self {
        let amp = C64::new(1.0 / ((n_a * n_b + 1) as f64).sqrt(), 0.0);
        Self { c: CMatrix::from_fn(n_a, n_b, |_, _| amp), c0: amp }
    }

    pub fn n_a(&self) -> usize {
        self.c.rows()
    }

    pub fn n_b(&self) -> usize {
        self.c.cols()
    }

    /// `sum_ij |c_ij|^2`.
    pub fn excited_weight(&self) -> f64 {
        self.c.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// `sum_j |c_ij|^2`.
    pub fn row_weight(&self, i: usize) -> f64 {
        (0..self.n_b()).map(|j| self.c[(i, j)].norm_sqr()).sum()
    }

    /// `sum_i |c_ij|^2`.
    pub fn col_weight(&self, j: usize) -> f64 {
        (0..self.n_a()).map(|i| self.c[(i, j)].norm_sqr()).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c0.norm_sqr() + self.excited_weight()
    }

    pub fn global_concurrence(&self) -> f64 {
        2.0 * self.c0.norm() * self.excited_weight().sqrt()
    }

    /// Distance of `c` from rank one: the root sum of squared 2x2 minors,
    /// which equals `sqrt(sum_{k<l} s_k^2 s_l^2)` over singular values.
    pub fn rank1_residual(&self) -> f64 {
        let (n, m) = (self.n_a(), self.n_b());
        let mut acc = 0.0;
        for i in 0..n {
            for k in i + 1..n {
                for j in 0..m {
                    for l in j + 1..m {
                        let minor = self.c[(i, j)] * self.c[(k, l)] - self.c[(i, l)] * self.c[(k, j)];
                        acc += minor.norm_sqr();
                    }
                }
            }
        }
        acc.sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SectorState {
    Psi(PsiSectorState),
    Phi(PhiSectorState),
}

impl SectorState {
    pub fn kind(&self) -> BellKind {
        match self {
            SectorState::Psi(_) => BellKind::Psi,
            SectorState::Phi(_) => BellKind::Phi,
        }
    }

    pub fn n_a(&self) -> usize {
        match self {
            SectorState::Psi(s) => s.n_a(),
            SectorState::Phi(s) => s.n_a(),
        }
    }

    pub fn n_b(&self) -> usize {
        match self {
            SectorState::Psi(s) => s.n_b(),
            SectorState::Phi(s) => s.n_b(),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        match self {
            SectorState::Psi(s) => s.norm_sqr(),
            SectorState::Phi(s) => s.norm_sqr(),
        }
    }

    /// Site-to-site concurrence read off the sector weights; constant under
    /// any local evolution.
    pub fn global_concurrence(&self) -> f64 {
        match self {
            SectorState::Psi(s) => s.global_concurrence(),
            SectorState::Phi(s) => s.global_concurrence(),
        }
    }

    pub fn as_psi(&self) -> Option<&PsiSectorState> {
        match self {
            SectorState::Psi(s) => Some(s),
            SectorState::Phi(_) => None,
        }
    }

    pub fn as_phi(&self) -> Option<&PhiSectorState> {
        match self {
            SectorState::Phi(s) => Some(s),
            SectorState::Psi(_) => None,
        }
    }

    /// Plain-text dump: a `# kind N M` header, then one `re im` line per
    /// amplitude. `Psi` lists `d_A` then `d_B`; `Phi` lists `c` row-major
    /// then `c0`.
    pub fn to_text(&self) -> String {
        let mut out = format!("# {} {} {}\n", self.kind().name(), self.n_a(), self.n_b());
        let mut push = |z: &C64| {
            let _ = writeln!(out, "{} {}", fmt_plain(z.re), fmt_plain(z.im));
        };
        match self {
            SectorState::Psi(s) => s.d_a.iter().chain(&s.d_b).for_each(&mut push),
            SectorState::Phi(s) => {
                s.c.as_slice().iter().for_each(&mut push);
                push(&s.c0);
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse { line: 1, message: "empty input".into() })?;
        let fields: Vec<&str> = header.trim_start_matches('#').split_whitespace().collect();
        let header_err = |message: &str| Error::Parse { line: 1, message: message.into() };
        if fields.len() != 3 {
            return Err(header_err("header must read '# <psi|phi> N M'"));
        }
        let kind: BellKind = fields[0].parse().map_err(|_| header_err("unknown sector kind"))?;
        let n_a: usize = fields[1].parse().map_err(|_| header_err("bad N"))?;
        let n_b: usize = fields[2].parse().map_err(|_| header_err("bad M"))?;
        if n_a == 0 || n_b == 0 {
            return Err(header_err("site sizes must be positive"));
        }
        let mut amps = Vec::new();
        for (idx, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| s.parse::<f64>().map_err(|e| Error::Parse { line: idx + 1, message: format!("'{s}': {e}") });
            if parts.len() != 2 {
                return Err(Error::Parse { line: idx + 1, message: "expected 're im'".into() });
            }
            amps.push(C64::new(parse(parts[0])?, parse(parts[1])?));
        }
        let expected = match kind {
            BellKind::Psi => n_a + n_b,
            BellKind::Phi => n_a * n_b + 1,
        };
        if amps.len() != expected {
            return Err(Error::Parse { line: 0, message: format!("expected {expected} amplitudes, found {}", amps.len()) });
        }
        Ok(match kind {
            BellKind::Psi => {
                let d_b = amps.split_off(n_a);
                SectorState::Psi(PsiSectorState { d_a: amps, d_b })
            }
            BellKind::Phi => {
                let c0 = amps.pop().expect("nonempty");
                SectorState::Phi(PhiSectorState { c: CMatrix::from_fn(n_a, n_b, |i, j| amps[i * n_b + j]), c0 })
            }
        })
    }
}

// Shortest round-trip decimal, never in exponent form; `-0` prints as `0`.
fn fmt_plain(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x}")
    }
}

impl From<PsiSectorState> for SectorState {
    fn from(s: PsiSectorState) -> Self {
        SectorState::Psi(s)
    }
}

impl From<PhiSectorState> for SectorState {
    fn from(s: PhiSectorState) -> Self {
        SectorState::Phi(s)
    }
}

/// Seeds the sector state for a Bell pair on `(a_1, b_1)`.
pub fn make_bell(params: &BellParams) -> Result<SectorState> {
    params.check()?;
    let (cos, sin) = (params.alpha.cos(), params.alpha.sin());
    let phased = C64::from_polar(sin, params.beta);
    Ok(match params.kind {
        BellKind::Psi => {
            let mut d_a = vec![ZERO; params.n_a];
            let mut d_b = vec![ZERO; params.n_b];
            d_a[0] = C64::new(cos, 0.0);
            d_b[0] = phased;
            SectorState::Psi(PsiSectorState { d_a, d_b })
        }
        BellKind::Phi => {
            let mut c = CMatrix::zeros(params.n_a, params.n_b);
            c[(0, 0)] = C64::new(cos, 0.0);
            SectorState::Phi(PhiSectorState { c, c0: phased })
        }
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    /// `|norm^2 - 1|`.
    pub norm_residual: f64,
    /// `Phi` only.
    pub rank1_residual: Option<f64>,
    pub tol: f64,
    pub pass: bool,
}

pub fn validate(state: &SectorState, tol: f64) -> ValidationReport {
    let norm_residual = (state.norm_sqr() - 1.0).abs();
    let rank1_residual = state.as_phi().map(PhiSectorState::rank1_residual);
    let pass = norm_residual <= tol && rank1_residual.is_none_or(|r| r <= tol);
    ValidationReport { norm_residual, rank1_residual, tol, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, FRAC_PI_6};

    #[test]
    fn psi_seed_at_quarter_pi() {
        let s = make_bell(&BellParams::new(BellKind::Psi, FRAC_PI_4, 0.0, 2, 2).unwrap()).unwrap();
        let s = s.as_psi().unwrap();
        assert_abs_diff_eq!(s.d_a[0].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(s.d_b[0].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_eq!(s.d_a[1], ZERO);
        assert_eq!(s.d_b[1], ZERO);
    }

    #[test]
    fn phi_seed_at_sixth_pi() {
        let s = make_bell(&BellParams::new(BellKind::Phi, FRAC_PI_6, 0.0, 2, 2).unwrap()).unwrap();
        let s = s.as_phi().unwrap();
        assert_abs_diff_eq!(s.c[(0, 0)].re, 3f64.sqrt() / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.c0.re, 0.5, epsilon = 1e-15);
        assert_eq!(s.excited_weight() - s.c[(0, 0)].norm_sqr(), 0.0);
    }

    #[test]
    fn separable_limit() {
        let params = BellParams::new(BellKind::Psi, 0.0, 0.3, 3, 2).unwrap();
        let s = make_bell(&params).unwrap();
        let psi = s.as_psi().unwrap();
        assert_eq!(psi.d_a[0], C64::new(1.0, 0.0));
        assert!(psi.d_b.iter().all(|z| z.norm() == 0.0));
        assert_eq!(s.global_concurrence(), 0.0);
        assert_eq!(params.global_concurrence(), 0.0);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(BellParams::new(BellKind::Psi, 2.0, 0.0, 2, 2).is_err());
        assert!(BellParams::new(BellKind::Psi, -0.1, 0.0, 2, 2).is_err());
        assert!(BellParams::new(BellKind::Phi, 0.3, 0.0, 0, 2).is_err());
        assert!(BellParams::new(BellKind::Phi, f64::NAN, 0.0, 1, 1).is_err());
    }

    #[test]
    fn fresh_seed_validates() {
        for kind in [BellKind::Psi, BellKind::Phi] {
            let s = make_bell(&BellParams::new(kind, 0.7, 1.1, 3, 2).unwrap()).unwrap();
            let report = validate(&s, 1e-10);
            assert!(report.pass);
            assert!(report.norm_residual < 1e-15);
        }
    }

    #[test]
    fn scaled_amplitudes_fail_validation() {
        let s = make_bell(&BellParams::new(BellKind::Psi, 0.4, 0.0, 2, 2).unwrap()).unwrap();
        let SectorState::Psi(mut psi) = s else { unreachable!() };
        for z in psi.d_a.iter_mut().chain(psi.d_b.iter_mut()) {
            *z *= 1.1;
        }
        let report = validate(&psi.into(), 1e-10);
        assert!(!report.pass);
        assert_abs_diff_eq!(report.norm_residual, 0.21, epsilon = 1e-12);
    }

    #[test]
    fn rank1_residual_flags_entangled_amplitudes() {
        let h = FRAC_1_SQRT_2;
        let c = CMatrix::from_real_rows(&[&[h, 0.0], &[0.0, h]]);
        let s = PhiSectorState::new(c, ZERO);
        assert_abs_diff_eq!(s.rank1_residual(), 0.5, epsilon = 1e-15);
        let report = validate(&s.into(), 1e-10);
        assert!(!report.pass);
        assert!(PhiSectorState::equal_amplitude(2, 3).rank1_residual() < 1e-15);
    }

    #[test]
    fn global_concurrence_matches_seed() {
        for alpha in [0.0, 0.2, FRAC_PI_6, FRAC_PI_4, 1.3] {
            let p = BellParams::new(BellKind::Phi, alpha, 0.0, 2, 2).unwrap();
            let s = make_bell(&p).unwrap();
            assert_abs_diff_eq!(s.global_concurrence(), (2.0 * alpha).sin(), epsilon = 1e-15);
        }
    }

    #[test]
    fn text_dump_round_trips() {
        let psi = PsiSectorState::new(
            vec![C64::new(0.1, -0.2), C64::new(1e-17, 0.3)],
            vec![C64::new(-0.5, 0.0), C64::new(0.0, 0.25), C64::new(0.125, -1.0 / 3.0)],
        )
        .unwrap();
        let state = SectorState::from(psi);
        let text = state.to_text();
        assert!(text.starts_with("# psi 2 3\n"));
        assert_eq!(text.lines().count(), 6);
        assert_eq!(SectorState::from_text(&text).unwrap(), state);

        let phi = SectorState::from(PhiSectorState::equal_amplitude(2, 2));
        let text = phi.to_text();
        assert_eq!(text.lines().count(), 6);
        assert!(!text.contains('e'));
        assert_eq!(SectorState::from_text(&text).unwrap(), phi);
    }

    #[test]
    fn text_parse_errors() {
        assert!(SectorState::from_text("").is_err());
        assert!(SectorState::from_text("# psi 1 1\n0 1\n").is_err());
        assert!(SectorState::from_text("# chi 1 1\n0 1\n1 0\n").is_err());
        assert!(SectorState::from_text("# phi 1 1\n0 x\n1 0\n").is_err());
    }
}
