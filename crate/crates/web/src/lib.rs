//! Browser bindings. Every export returns a JSON string so the page only
//! needs `JSON.parse`.

use std::f64::consts::FRAC_PI_2;

use entangle_core::dynamics::{evolve, jc_propagator, JcParams};
use entangle_core::entanglement::{concurrence_pair, concurrence_wootters, rho_pair, QubitPairIndex};
use entangle_core::oracle;
use entangle_core::rules::sspc;
use entangle_core::scenario::{run, ScenarioConfig};
use entangle_core::sector::{make_bell, BellKind, BellParams};
use serde::Serialize;
use wasm_bindgen::prelude::wasm_bindgen;

const MAX_STEPS: usize = 4000;
const MAX_CELLS: usize = 250_000;

#[derive(Debug, Serialize)]
pub struct Curves {
    pub gt: Vec<f64>,
    pub cab2: Vec<f64>,
    pub sspc: Vec<f64>,
    pub yonac: Option<Vec<f64>>,
    pub pair_labels: Vec<String>,
    /// One series per pair, in `pair_labels` order.
    pub pairs: Vec<Vec<f64>>,
    pub site_labels: Vec<String>,
    pub site: Vec<Vec<f64>>,
    pub passed: bool,
    pub summary: String,
}

#[derive(Debug, Serialize)]
pub struct DeathMap {
    pub alpha: Vec<f64>,
    pub gt: Vec<f64>,
    /// `sspc / cab2`, indexed `[alpha][gt]`.
    pub ratio: Vec<Vec<f64>>,
    /// Per alpha, the fraction of the grid where every pair is disentangled.
    pub dead_fraction: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct PairSnapshot {
    pub label: String,
    /// `|rho|` row by row in the order |11>, |10>, |01>, |00>.
    pub rho_abs: Vec<Vec<f64>>,
    pub closed: f64,
    pub wootters: f64,
    pub oracle: f64,
}

#[derive(Debug, Serialize)]
pub struct Snapshot {
    pub gt: f64,
    pub cab: f64,
    pub sspc: f64,
    pub pairs: Vec<PairSnapshot>,
}

fn parse_kind(kind: &str) -> Result<BellKind, String> {
    kind.parse().map_err(|e: entangle_core::Error| e.to_string())
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

/// Squared concurrence curves for two Jaynes-Cummings sites.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn transfer_curves(kind: &str, alpha: f64, g_a: f64, g_b: f64, delta: f64, gamma: f64, t_max: f64, steps: usize) -> Result<String, String> {
    if steps > MAX_STEPS {
        return Err(format!("at most {MAX_STEPS} steps"));
    }
    let config =
        ScenarioConfig { kind: parse_kind(kind)?, alpha, g_a, g_b, delta_a: delta, delta_b: delta, gamma, t_max, steps, ..Default::default() };
    let out = run(&config).map_err(|e| e.to_string())?;
    let n_pairs = out.rows.first().map_or(0, |r| r.pairs.len());
    let n_site = out.rows.first().map_or(0, |r| r.site.len());
    let curves = Curves {
        gt: out.rows.iter().map(|r| r.gt).collect(),
        cab2: out.rows.iter().map(|r| r.cab2).collect(),
        sspc: out.rows.iter().map(|r| r.sspc).collect(),
        yonac: out.rows.iter().map(|r| r.yonac).collect(),
        pair_labels: (0..n_pairs).map(|k| format!("C{}{}^2", k / 2 + 1, k % 2 + 1)).collect(),
        pairs: (0..n_pairs).map(|k| out.rows.iter().map(|r| r.pairs[k]).collect()).collect(),
        site_labels: (0..n_site).map(|j| format!("C(A,b{})^2", j + 1)).collect(),
        site: (0..n_site).map(|j| out.rows.iter().map(|r| r.site[j]).collect()).collect(),
        passed: out.passed(),
        summary: out.summary(),
    };
    to_json(&curves)
}

/// Where the correlated seed loses all pairwise entanglement, over seed
/// angle and time, for symmetric resonant sites.
#[wasm_bindgen]
pub fn sudden_death_map(alpha_steps: usize, t_steps: usize, t_max: f64) -> Result<String, String> {
    if alpha_steps < 2 || t_steps < 2 || alpha_steps * t_steps > MAX_CELLS {
        return Err(format!("need at least 2 points per axis and at most {MAX_CELLS} cells"));
    }
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err("t_max must be positive".into());
    }
    let jc = JcParams::new(1.0, 0.0).map_err(|e| e.to_string())?;
    let gt: Vec<f64> = (0..t_steps).map(|k| t_max * k as f64 / (t_steps - 1) as f64).collect();
    let props: Vec<_> = gt.iter().map(|&t| jc_propagator(jc, t)).collect();
    // open interval: both ends are product states
    let alpha: Vec<f64> = (1..=alpha_steps).map(|k| FRAC_PI_2 * k as f64 / (alpha_steps + 1) as f64).collect();
    let mut ratio = Vec::with_capacity(alpha_steps);
    let mut dead_fraction = Vec::with_capacity(alpha_steps);
    for &a in &alpha {
        let s0 = make_bell(&BellParams::new(BellKind::Phi, a, 0.0, 2, 2).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let cab2 = s0.global_concurrence().powi(2);
        let row: Vec<f64> = props.iter().map(|u| evolve(&s0, u, u).map(|s| sspc(&s) / cab2)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        dead_fraction.push(row.iter().filter(|&&r| r == 0.0).count() as f64 / t_steps as f64);
        ratio.push(row);
    }
    to_json(&DeathMap { alpha, gt, ratio, dead_fraction })
}

/// Reduced two-qubit states at one instant, scored three ways: closed form,
/// Wootters on the closed-form matrix, and Wootters on the full register.
#[wasm_bindgen]
pub fn snapshot(kind: &str, alpha: f64, g_a: f64, g_b: f64, delta: f64, gt: f64) -> Result<String, String> {
    let err = |e: entangle_core::Error| e.to_string();
    let s0 = make_bell(&BellParams::new(parse_kind(kind)?, alpha, 0.0, 2, 2).map_err(err)?).map_err(err)?;
    let g = (g_a + g_b) / 2.0;
    if g.is_nan() || g <= 0.0 {
        return Err("mean coupling must be positive".into());
    }
    let t = gt / g;
    let (ja, jb) = (JcParams::new(g_a, delta).map_err(err)?, JcParams::new(g_b, delta).map_err(err)?);
    let state = evolve(&s0, &jc_propagator(ja, t), &jc_propagator(jb, t)).map_err(err)?;
    let full = oracle::evolve_full(&oracle::embed(&s0).map_err(err)?, &ja.restricted_hamiltonian(), &jb.restricted_hamiltonian(), t).map_err(err)?;
    let mut pairs = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let p = QubitPairIndex::new(i, j);
            let rho = rho_pair(&state, p).map_err(err)?;
            pairs.push(PairSnapshot {
                label: format!("a{} b{}", i + 1, j + 1),
                rho_abs: (0..4).map(|r| (0..4).map(|c| rho[(r, c)].norm()).collect()).collect(),
                closed: concurrence_pair(&state, p).map_err(err)?,
                wootters: concurrence_wootters(&rho).map_err(err)?,
                oracle: oracle::pair_concurrence(&full, i, j).map_err(err)?,
            });
        }
    }
    to_json(&Snapshot { gt, cab: state.global_concurrence(), sspc: sspc(&state), pairs })
}
