//! Time sweeps over a configured scenario, rendered as CSV.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::dynamics::{evolve, generic_propagator_with_tol, jc_propagator, DampingParams, JcParams, LocalPropagator};
use crate::entanglement::{concurrence_site_to_single, pair_concurrences};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::oracle::{self, FullState};
use crate::rules::{yonac_sum, Rule, RuleReport};
use crate::sector::{make_bell, BellKind, BellParams, SectorState};
use crate::DEFAULT_TOL;

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    /// Atom plus single-photon cavity on each site; forces two qubits per site.
    Jc,
    /// Arbitrary Hermitian generators on each site's single-excitation space.
    Custom { h_a: CMatrix, h_b: CMatrix },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub kind: BellKind,
    pub alpha: f64,
    pub beta: f64,
    pub n_a: usize,
    pub n_b: usize,
    pub model: Model,
    pub g_a: f64,
    pub g_b: f64,
    pub delta_a: f64,
    pub delta_b: f64,
    pub gamma: f64,
    /// Global-concurrence decay rate; `gamma` when unset.
    pub kappa: Option<f64>,
    /// End of the grid in units of `1/g`, `g = (g_a + g_b) / 2`.
    pub t_max: f64,
    /// Number of grid points, both ends included.
    pub steps: usize,
    pub tol: f64,
    pub oracle: bool,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            kind: BellKind::Psi,
            alpha: std::f64::consts::FRAC_PI_4,
            beta: 0.0,
            n_a: 2,
            n_b: 2,
            model: Model::Jc,
            g_a: 1.0,
            g_b: 1.0,
            delta_a: 0.0,
            delta_b: 0.0,
            gamma: 0.0,
            kappa: None,
            t_max: 12.0,
            steps: 500,
            tol: DEFAULT_TOL,
            oracle: false,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::InvalidParams(format!("steps must be at least 2, got {}", self.steps)));
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(Error::InvalidParams(format!("tmax must be positive, got {}", self.t_max)));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidParams(format!("tol must be positive, got {}", self.tol)));
        }
        for (name, v) in [("ga", self.g_a), ("gb", self.g_b), ("da", self.delta_a), ("db", self.delta_b)] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} must be finite")));
            }
        }
        if self.g_a < 0.0 || self.g_b < 0.0 {
            return Err(Error::InvalidParams("couplings must be >= 0".into()));
        }
        if self.g_ref() <= 0.0 {
            return Err(Error::InvalidParams("mean coupling (ga + gb) / 2 must be positive".into()));
        }
        self.damping()?;
        self.bell_params()?;
        match &self.model {
            Model::Jc => {
                if (self.n_a, self.n_b) != (2, 2) {
                    return Err(Error::InvalidParams(format!("the jc model has two qubits per site, got na = {}, nb = {}", self.n_a, self.n_b)));
                }
            }
            Model::Custom { h_a, h_b } => {
                for (site, h, n) in [("A", h_a, self.n_a), ("B", h_b, self.n_b)] {
                    if h.rows() != n || h.cols() != n {
                        return Err(Error::DimensionMismatch { expected: format!("{n}x{n} Hamiltonian for site {site}"), found: h.shape() });
                    }
                    let residual = h.hermiticity_residual();
                    if residual > self.tol {
                        return Err(Error::NonHermitianInput { residual });
                    }
                }
            }
        }
        if self.oracle && self.n_a + self.n_b > oracle::MAX_QUBITS {
            return Err(Error::RegisterTooLarge { qubits: self.n_a + self.n_b, max: oracle::MAX_QUBITS });
        }
        Ok(())
    }

    pub fn g_ref(&self) -> f64 {
        (self.g_a + self.g_b) / 2.0
    }

    pub fn damping(&self) -> Result<DampingParams> {
        DampingParams::with_kappa(self.gamma, self.kappa.unwrap_or(self.gamma))
    }

    pub fn bell_params(&self) -> Result<BellParams> {
        BellParams::new(self.kind, self.alpha, self.beta, self.n_a, self.n_b)
    }

    /// Grid in units of `1/g`.
    pub fn grid(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps).map(|k| self.t_max * k as f64 / last).collect()
    }

    /// Site generators restricted to the single-excitation subspace.
    pub fn hamiltonians(&self) -> Result<(CMatrix, CMatrix)> {
        Ok(match &self.model {
            Model::Jc => {
                (JcParams::new(self.g_a, self.delta_a)?.restricted_hamiltonian(), JcParams::new(self.g_b, self.delta_b)?.restricted_hamiltonian())
            }
            Model::Custom { h_a, h_b } => (h_a.clone(), h_b.clone()),
        })
    }

    fn propagators(&self, t: f64) -> Result<(LocalPropagator, LocalPropagator)> {
        Ok(match &self.model {
            Model::Jc => (jc_propagator(JcParams::new(self.g_a, self.delta_a)?, t), jc_propagator(JcParams::new(self.g_b, self.delta_b)?, t)),
            Model::Custom { h_a, h_b } => (generic_propagator_with_tol(h_a, t, self.tol)?, generic_propagator_with_tol(h_b, t, self.tol)?),
        })
    }

    /// Whether the `yonac` column is filled.
    pub fn has_yonac(&self) -> bool {
        self.kind == BellKind::Psi && self.n_a == 2 && self.n_b == 2
    }
}

/// One grid point. Concurrence columns are squared and damped.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    /// Dimensionless `g t`.
    pub gt: f64,
    pub cab2: f64,
    pub sspc: f64,
    pub yonac: Option<f64>,
    /// `C_{a_i b_j}^2`, row-major.
    pub pairs: Vec<f64>,
    /// `C_{A, b_j}^2`.
    pub site: Vec<f64>,
    pub oracle_pairs: Option<Vec<f64>>,
    pub oracle_site: Option<Vec<f64>>,
}

impl Row {
    /// Largest `|closed - oracle|` over the emitted concurrence columns.
    pub fn oracle_deviation(&self) -> Option<f64> {
        let op = self.oracle_pairs.as_ref()?;
        let os = self.oracle_site.as_ref()?;
        Some(self.pairs.iter().zip(op).chain(self.site.iter().zip(os)).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RuleSummary {
    pub rule: Rule,
    pub checks: usize,
    pub failures: usize,
    pub min_residual: f64,
    pub max_residual: f64,
    /// Grid time of the largest residual.
    pub worst_gt: f64,
}

impl RuleSummary {
    fn new(rule: Rule) -> Self {
        Self { rule, checks: 0, failures: 0, min_residual: f64::INFINITY, max_residual: f64::NEG_INFINITY, worst_gt: 0.0 }
    }

    fn add(&mut self, r: &RuleReport) {
        self.checks += 1;
        if !r.pass {
            self.failures += 1;
        }
        self.min_residual = self.min_residual.min(r.residual);
        if r.residual > self.max_residual {
            self.max_residual = r.residual;
            self.worst_gt = r.t;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioOutput {
    pub config: ScenarioConfig,
    pub rows: Vec<Row>,
    pub rules: Vec<RuleSummary>,
    /// Largest oracle deviation over all rows, when the oracle ran.
    pub oracle_max_deviation: Option<f64>,
    pub final_state: SectorState,
}

impl ScenarioOutput {
    pub fn passed(&self) -> bool {
        self.rules.iter().all(|r| r.failures == 0) && self.oracle_max_deviation.is_none_or(|d| d <= self.config.tol)
    }

    pub fn csv(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let mut header = vec!["t".to_string(), "cab2".into(), "sspc".into(), "yonac".into()];
        let mut conc = Vec::new();
        for i in 1..=c.n_a {
            for j in 1..=c.n_b {
                conc.push(format!("c_{i}_{j}2"));
            }
        }
        for j in 1..=c.n_b {
            conc.push(format!("cA_b{j}2"));
        }
        header.extend(conc.iter().cloned());
        if c.oracle {
            header.extend(conc.iter().map(|h| format!("{h}_orc")));
        }
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let mut fields = vec![format_g12(row.gt), format_g12(row.cab2), format_g12(row.sspc), row.yonac.map(format_g12).unwrap_or_default()];
            fields.extend(row.pairs.iter().chain(&row.site).map(|&v| format_g12(v)));
            if let (Some(op), Some(os)) = (&row.oracle_pairs, &row.oracle_site) {
                fields.extend(op.iter().chain(os).map(|&v| format_g12(v)));
            }
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn summary(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "scenario: {} alpha={} na={} nb={} steps={} tmax={} tol={:e}",
            c.kind.name(),
            c.alpha,
            c.n_a,
            c.n_b,
            c.steps,
            c.t_max,
            c.tol
        );
        for r in &self.rules {
            let _ = writeln!(
                out,
                "{:<18} checks={} failures={} residual min={:.3e} max={:.3e} (gt={})",
                r.rule.id(),
                r.checks,
                r.failures,
                r.min_residual,
                r.max_residual,
                format_g12(r.worst_gt)
            );
        }
        if let Some(d) = self.oracle_max_deviation {
            let _ = writeln!(out, "{:<18} max |closed - oracle| = {:.3e}", "oracle", d);
        }
        let _ = writeln!(out, "status: {}", if self.passed() { "pass" } else { "FAIL" });
        out
    }
}

pub fn run(config: &ScenarioConfig) -> Result<ScenarioOutput> {
    config.validate()?;
    let damping = config.damping()?;
    let s0 = make_bell(&config.bell_params()?)?;
    let cab0 = s0.global_concurrence();
    let (h_a, h_b) = config.hamiltonians()?;
    let full0 = if config.oracle { Some(oracle::embed(&s0)?) } else { None };
    let g = config.g_ref();
    let tol = config.tol;

    let mut summaries: BTreeMap<&'static str, RuleSummary> = BTreeMap::new();
    let mut record = |r: RuleReport| summaries.entry(r.rule.id()).or_insert_with(|| RuleSummary::new(r.rule)).add(&r);

    let mut rows = Vec::with_capacity(config.steps);
    let mut state = s0.clone();
    for gt in config.grid() {
        let t = gt / g;
        let (ua, ub) = config.propagators(t)?;
        state = evolve(&s0, &ua, &ub)?;
        let env = damping.envelope(t);
        let pair_c: Vec<f64> = pair_concurrences(&state).into_iter().flatten().collect();
        let site_c = (0..config.n_b).map(|j| concurrence_site_to_single(&state, j, tol)).collect::<Result<Vec<_>>>()?;
        let squared = |cs: &[f64]| cs.iter().map(|c| (c * env).powi(2)).collect::<Vec<_>>();
        let pairs = squared(&pair_c);
        let site = squared(&site_c);
        let cab = state.global_concurrence();
        let cab2 = damping.global_concurrence(cab, t).powi(2);
        let sspc: f64 = pairs.iter().sum();
        let yonac = match state.as_psi() {
            Some(psi) if config.has_yonac() => Some(yonac_sum(psi)? * env),
            _ => None,
        };

        let pair_rule = if config.kind == BellKind::Psi { Rule::PairSum } else { Rule::PairBound };
        record(RuleReport::evaluate(pair_rule, sspc, cab2, tol).at(gt));
        record(RuleReport::evaluate(Rule::OneSidedSum, site.iter().sum(), cab2, tol).at(gt));
        record(RuleReport::evaluate(Rule::GlobalInvariance, cab, cab0, tol).at(gt));

        let (oracle_pairs, oracle_site) = match &full0 {
            Some(f0) => {
                let (op, os) = oracle_columns(f0, &h_a, &h_b, t, tol)?;
                (Some(squared(&op)), Some(squared(&os)))
            }
            None => (None, None),
        };
        rows.push(Row { gt, cab2, sspc, yonac, pairs, site, oracle_pairs, oracle_site });
    }

    let oracle_max_deviation = if config.oracle { rows.iter().filter_map(Row::oracle_deviation).reduce(f64::max) } else { None };
    Ok(ScenarioOutput { config: config.clone(), rows, rules: summaries.into_values().collect(), oracle_max_deviation, final_state: state })
}

fn oracle_columns(full0: &FullState, h_a: &CMatrix, h_b: &CMatrix, t: f64, tol: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let full = oracle::evolve_full_with_tol(full0, h_a, h_b, t, tol)?;
    let mut pairs = Vec::with_capacity(full.n_a() * full.n_b());
    for i in 0..full.n_a() {
        for j in 0..full.n_b() {
            pairs.push(oracle::pair_concurrence(&full, i, j)?);
        }
    }
    let site = (0..full.n_b()).map(|j| oracle::site_to_single_concurrence(&full, j)).collect::<Result<Vec<_>>>()?;
    Ok((pairs, site))
}

/// `printf("%.12g")`.
pub fn format_g12(x: f64) -> String {
    format_g(x, 12)
}

fn format_g(x: f64, precision: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", precision - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= precision as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    } else {
        let decimals = (precision as i32 - 1 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
