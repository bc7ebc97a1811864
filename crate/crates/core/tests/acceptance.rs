//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};
use std::time::{Duration, Instant};

use entangle_core::dynamics::{evolve, generic_propagator, jc_propagator, JcParams, LocalPropagator};
use entangle_core::entanglement::{
    concurrence_pair, concurrence_partition_psi, concurrence_single_to_site, concurrence_site_to_single, concurrence_wootters, pair_concurrences,
    rho_pair, Partition, QubitPairIndex,
};
use entangle_core::linalg::{CMatrix, C64};
use entangle_core::oracle;
use entangle_core::rules::{check_one_sided_sum, check_pair_bound, check_pair_sum, sspc, three_tangle_phi};
use entangle_core::scenario::{run, ScenarioConfig, ScenarioOutput};
use entangle_core::sector::{make_bell, BellKind, BellParams, PhiSectorState, PsiSectorState, SectorState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn random_hermitian(rng: &mut impl Rng, n: usize) -> CMatrix {
    let a = CMatrix::from_fn(n, n, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    (&a + &a.adjoint()).scale(C64::new(0.5, 0.0))
}

fn bell(kind: BellKind, alpha: f64, n_a: usize, n_b: usize) -> SectorState {
    make_bell(&BellParams::new(kind, alpha, 0.0, n_a, n_b).unwrap()).unwrap()
}

fn jc_pair(ga: f64, gb: f64, delta: f64, t: f64) -> (LocalPropagator, LocalPropagator) {
    (jc_propagator(JcParams::new(ga, delta).unwrap(), t), jc_propagator(JcParams::new(gb, delta).unwrap(), t))
}

/// Random product-form evolution: random sizes, random Hermitian generators, random time.
struct RandomEvolution {
    s0: SectorState,
    h_a: CMatrix,
    h_b: CMatrix,
    t: f64,
}

impl RandomEvolution {
    fn draw(rng: &mut impl Rng, kind: BellKind) -> Self {
        let (n_a, n_b) = (rng.gen_range(2..=3), rng.gen_range(2..=3));
        let alpha = rng.gen_range(0.0..FRAC_PI_2);
        let beta = rng.gen_range(0.0..2.0 * PI);
        let s0 = make_bell(&BellParams::new(kind, alpha, beta, n_a, n_b).unwrap()).unwrap();
        Self { s0, h_a: random_hermitian(rng, n_a), h_b: random_hermitian(rng, n_b), t: rng.gen_range(0.0..20.0) }
    }

    fn sector(&self, t: f64) -> SectorState {
        evolve(&self.s0, &generic_propagator(&self.h_a, t).unwrap(), &generic_propagator(&self.h_b, t).unwrap()).unwrap()
    }
}

fn fig2() -> ScenarioConfig {
    ScenarioConfig { kind: BellKind::Psi, alpha: FRAC_PI_6, ..Default::default() }
}

fn fig3() -> ScenarioConfig {
    ScenarioConfig { g_a: 2.0, g_b: 1.0, ..fig2() }
}

fn fig4() -> ScenarioConfig {
    ScenarioConfig { kind: BellKind::Phi, alpha: PI / 12.0, ..Default::default() }
}

fn fig5() -> ScenarioConfig {
    ScenarioConfig { kind: BellKind::Psi, alpha: FRAC_PI_4, delta_a: 2.0, delta_b: 2.0, gamma: 0.3, ..Default::default() }
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let out = run(&fig2()).unwrap();
    let elapsed = start.elapsed();
    let grid_worst = out.rows.iter().map(|r| (r.sspc - 0.75).abs()).fold(0.0, f64::max);
    let grid_ok = out.rows.len() == 500 && grid_worst <= 1e-10 && elapsed < Duration::from_secs(1);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut random_worst: f64 = 0.0;
    for _ in 0..200 {
        let ev = RandomEvolution::draw(&mut rng, BellKind::Psi);
        for _ in 0..50 {
            let s = ev.sector(rng.gen_range(0.0..20.0));
            random_worst = random_worst.max(check_pair_sum(&s, 1e-9).unwrap().residual);
        }
    }
    verdict(
        grid_ok && random_worst <= 1e-9,
        format!("grid max |SSPC - 3/4| = {grid_worst:.1e} over {} points in {elapsed:.0?}; random max residual = {random_worst:.1e}", out.rows.len()),
    )
}

fn yonac_gap(out: &ScenarioOutput) -> f64 {
    out.rows.iter().map(|r| (r.yonac.unwrap() - r.cab2.sqrt()).abs()).fold(0.0, f64::max)
}

fn criterion_2() -> Verdict {
    let sym = run(&fig2()).unwrap();
    let asym = run(&fig3()).unwrap();
    let sym_gap = yonac_gap(&sym);
    let asym_gap = yonac_gap(&asym);
    let asym_pair_sum = asym.rows.iter().map(|r| (r.sspc - r.cab2).abs()).fold(0.0, f64::max);
    verdict(
        sym_gap <= 1e-10 && asym_gap > 1e-3 && asym_pair_sum <= 1e-10,
        format!("symmetric max |C11+C22 - C_AB| = {sym_gap:.1e}; ga=2gb gap = {asym_gap:.3}, SSPC residual there = {asym_pair_sum:.1e}"),
    )
}

fn criterion_3() -> Verdict {
    let alpha = PI / 12.0;
    let s0 = bell(BellKind::Phi, alpha, 2, 2);
    let at = |gt: f64| {
        let (ua, ub) = jc_pair(1.0, 1.0, 0.0, gt);
        evolve(&s0, &ua, &ub).unwrap()
    };
    let target = (PI / 6.0).sin().powi(2);
    let sat_worst = (0..8)
        .map(|k| {
            let s = at(k as f64 * FRAC_PI_2);
            let cab2 = s.global_concurrence().powi(2);
            (sspc(&s) - target).abs().max((cab2 - target).abs())
        })
        .fold(0.0, f64::max);

    // With amplitudes cos a cos^2, cos a cos sin, cos a sin^2 and sin a, every
    // pair is dead once tan a <= min(sin^2 gt, cos^2 gt, sin gt cos gt).
    let edge = alpha.tan().sqrt();
    let (lo, hi) = (edge.asin(), edge.acos());
    let inside: Vec<f64> = (1..200).map(|k| lo + (hi - lo) * k as f64 / 200.0).collect();
    let dead = inside.iter().all(|&gt| sspc(&at(gt)) == 0.0) && lo < FRAC_PI_4 && FRAC_PI_4 < hi;
    let alive_outside = sspc(&at(lo - 0.05)) > 0.0 && sspc(&at(hi + 0.05)) > 0.0;

    let out = run(&fig4()).unwrap();
    let c12_max = out.rows.iter().map(|r| r.pairs[1]).fold(0.0, f64::max);
    let bound_ok = out.rows.iter().all(|r| r.sspc >= 0.0 && r.sspc <= r.cab2 + 1e-10)
        && (0..200).all(|k| check_pair_bound(&at(0.06 * k as f64), 1e-10).unwrap().pass);
    verdict(
        sat_worst <= 1e-10 && dead && alive_outside && c12_max < 0.01 && bound_ok,
        format!(
            "max |SSPC - 1/4| at k*pi/2 = {sat_worst:.1e}; SSPC = 0 on gt in [{lo:.4}, {hi:.4}]; max C12^2 = {c12_max:.5}; bound held = {bound_ok}"
        ),
    )
}

fn criterion_4() -> Verdict {
    let tol = 1e-12;
    let s = SectorState::Phi(PhiSectorState::equal_amplitude(2, 2));
    let pairs_max = pair_concurrences(&s).into_iter().flatten().fold(0.0, f64::max);
    let site: Vec<f64> = (0..2).map(|j| concurrence_site_to_single(&s, j, 1e-10).unwrap().powi(2)).collect();
    let cab2 = s.global_concurrence().powi(2);
    let tau = three_tangle_phi(s.as_phi().unwrap(), 0, 1e-10).unwrap();
    let ok = pairs_max <= tol
        && site.iter().all(|c| (c - 8.0 / 25.0).abs() <= tol)
        && (site.iter().sum::<f64>() - 16.0 / 25.0).abs() <= tol
        && (cab2 - 16.0 / 25.0).abs() <= tol
        && (tau - 8.0 / 25.0).abs() <= tol;
    verdict(ok, format!("max pair C = {pairs_max:.1e}; C_A,bj^2 = {:.12}, {:.12}; C_AB^2 = {cab2:.12}; tau3 = {tau:.12}", site[0], site[1]))
}

fn criterion_5() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut checks = 0;
    for cfg in [fig2(), fig3(), fig4(), fig5()] {
        let out = run(&cfg).unwrap();
        for r in &out.rows {
            worst = worst.max((r.site.iter().sum::<f64>() - r.cab2).abs());
            checks += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..200 {
        let kind = if k % 2 == 0 { BellKind::Psi } else { BellKind::Phi };
        let ev = RandomEvolution::draw(&mut rng, kind);
        worst = worst.max(check_one_sided_sum(&ev.sector(ev.t), 1e-10).unwrap().residual);
        checks += 1;
    }
    verdict(worst <= 1e-10, format!("max |sum_j C_A,bj^2 - C_AB^2| = {worst:.1e} over {checks} states"))
}

#[derive(Default)]
struct OracleTally {
    concurrence: f64,
    matrix: f64,
    comparisons: usize,
}

impl OracleTally {
    fn c(&mut self, closed: f64, brute: f64) {
        self.concurrence = self.concurrence.max((closed - brute).abs());
        self.comparisons += 1;
    }

    fn m(&mut self, closed: &CMatrix, brute: &CMatrix) {
        self.matrix = self.matrix.max(closed.max_abs_diff(brute));
        self.comparisons += 1;
    }

    fn compare(&mut self, s0: &SectorState, sector: &SectorState, h_a: &CMatrix, h_b: &CMatrix, t: f64, rng: &mut impl Rng) {
        let full = oracle::evolve_full(&oracle::embed(s0).unwrap(), h_a, h_b, t).unwrap();
        let (n_a, n_b) = (sector.n_a(), sector.n_b());
        for i in 0..n_a {
            for j in 0..n_b {
                let p = QubitPairIndex::new(i, j);
                self.m(&rho_pair(sector, p).unwrap(), &oracle::partial_trace(&full, &[i, n_a + j]).unwrap());
                self.c(concurrence_pair(sector, p).unwrap(), oracle::pair_concurrence(&full, i, j).unwrap());
            }
        }
        for j in 0..n_b {
            self.c(concurrence_site_to_single(sector, j, 1e-10).unwrap(), oracle::site_to_single_concurrence(&full, j).unwrap());
        }
        for i in 0..n_a {
            self.c(concurrence_single_to_site(sector, i, 1e-10).unwrap(), oracle::single_to_site_concurrence(&full, i).unwrap());
        }
        if let Some(psi) = sector.as_psi() {
            let q = loop {
                let a: Vec<usize> = (0..n_a).filter(|_| rng.gen_bool(0.5)).collect();
                let b: Vec<usize> = (0..n_b).filter(|_| rng.gen_bool(0.5)).collect();
                if let Ok(q) = Partition::new(a, b) {
                    break q;
                }
            };
            self.c(concurrence_partition_psi(psi, &q).unwrap(), oracle::partition_concurrence(&full, &q).unwrap());
        }
    }
}

fn criterion_6() -> Verdict {
    let start = Instant::now();
    let mut tally = OracleTally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut emitted: f64 = 0.0;
    for cfg in [fig2(), fig3(), fig4(), fig5()] {
        let out = run(&ScenarioConfig { oracle: true, steps: 100, ..cfg.clone() }).unwrap();
        emitted = emitted.max(out.oracle_max_deviation.unwrap());
        let s0 = make_bell(&cfg.bell_params().unwrap()).unwrap();
        let (h_a, h_b) = cfg.hamiltonians().unwrap();
        for k in 0..25 {
            let t = k as f64 * 0.5 / cfg.g_ref();
            let ua = jc_propagator(JcParams::new(cfg.g_a, cfg.delta_a).unwrap(), t);
            let ub = jc_propagator(JcParams::new(cfg.g_b, cfg.delta_b).unwrap(), t);
            let sector = evolve(&s0, &ua, &ub).unwrap();
            tally.compare(&s0, &sector, &h_a, &h_b, t, &mut rng);
        }
    }
    for k in 0..200 {
        let kind = if k % 2 == 0 { BellKind::Psi } else { BellKind::Phi };
        let ev = RandomEvolution::draw(&mut rng, kind);
        tally.compare(&ev.s0, &ev.sector(ev.t), &ev.h_a, &ev.h_b, ev.t, &mut rng);
    }
    let elapsed = start.elapsed();
    verdict(
        tally.concurrence <= 1e-9 && tally.matrix <= 1e-9 && emitted <= 1e-9 && elapsed < Duration::from_secs(60),
        format!(
            "max |closed - oracle|: concurrence {:.1e}, reduced matrix {:.1e}, CSV columns {emitted:.1e}; {} comparisons in {elapsed:.1?}",
            tally.concurrence, tally.matrix, tally.comparisons
        ),
    )
}

fn criterion_7() -> Verdict {
    let mut worst: f64 = 0.0;
    for n in [2, 3] {
        let s = SectorState::Psi(PsiSectorState::w_state(n, n).unwrap());
        let seeded = bell(BellKind::Psi, FRAC_PI_4, n, n);
        assert_eq!(seeded.n_a(), n);
        for c in pair_concurrences(&s).into_iter().flatten() {
            worst = worst.max((c - 1.0 / n as f64).abs());
        }
        let full = oracle::embed(&s).unwrap();
        worst = worst.max((oracle::pair_concurrence(&full, 0, n - 1).unwrap() - 1.0 / n as f64).abs());
    }
    verdict(worst <= 1e-12, format!("max |C_IJ - 1/N| for N in {{2, 3}} = {worst:.1e}"))
}

fn criterion_8() -> Verdict {
    let damped = run(&fig5()).unwrap();
    let undamped = run(&ScenarioConfig { gamma: 0.0, ..fig5() }).unwrap();
    let cab0 = FRAC_PI_2.sin();
    let mut column_worst: f64 = 0.0;
    let mut sspc_worst: f64 = 0.0;
    for (d, u) in damped.rows.iter().zip(&undamped.rows) {
        let t = d.gt;
        let env = (-0.3 * t).exp();
        for (x, y) in d.pairs.iter().chain(&d.site).zip(u.pairs.iter().chain(&u.site)) {
            column_worst = column_worst.max((x.sqrt() - y.sqrt() * env).abs());
        }
        sspc_worst = sspc_worst.max((d.sspc - (cab0 * env).powi(2)).abs());
    }
    verdict(
        column_worst <= 1e-12 && sspc_worst <= 1e-12 && damped.passed(),
        format!("max |C_damped - C e^-gt| = {column_worst:.1e}; max |SSPC_damped - (C_AB(0) e^-gt)^2| = {sspc_worst:.1e}"),
    )
}

fn random_amplitude(rng: &mut impl Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn criterion_9() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    let mut dead = 0;
    for k in 0..1000 {
        let (n_a, n_b) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let state = if k % 2 == 0 {
            let mut d_a: Vec<C64> = (0..n_a).map(|_| random_amplitude(&mut rng)).collect();
            let mut d_b: Vec<C64> = (0..n_b).map(|_| random_amplitude(&mut rng)).collect();
            let norm = d_a.iter().chain(&d_b).map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            d_a.iter_mut().chain(d_b.iter_mut()).for_each(|z| *z /= norm);
            SectorState::Psi(PsiSectorState::new(d_a, d_b).unwrap())
        } else {
            let c = CMatrix::from_fn(n_a, n_b, |_, _| random_amplitude(&mut rng));
            let c0 = random_amplitude(&mut rng) * rng.gen_range(0.0..3.0);
            let norm = (c.norm_frobenius().powi(2) + c0.norm_sqr()).sqrt();
            SectorState::Phi(PhiSectorState::new(c.scale(C64::new(1.0 / norm, 0.0)), c0 / norm))
        };
        let p = QubitPairIndex::new(rng.gen_range(0..n_a), rng.gen_range(0..n_b));
        let closed = concurrence_pair(&state, p).unwrap();
        let general = concurrence_wootters(&rho_pair(&state, p).unwrap()).unwrap();
        if closed == 0.0 {
            dead += 1;
        }
        worst = worst.max((closed - general).abs());
    }
    verdict(worst <= 1e-10, format!("max |closed form - Wootters| = {worst:.1e} over 1000 states ({dead} with zero concurrence)"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("pairwise sum equals C_AB^2 (psi)", criterion_1),
        ("linear C11 + C22 rule: exact when symmetric, broken when ga = 2gb", criterion_2),
        ("pairwise sum bounded by C_AB^2 (phi), saturation and sudden death", criterion_3),
        ("equal-amplitude phi point", criterion_4),
        ("one-sided sum rule", criterion_5),
        ("closed forms match the full-register oracle", criterion_6),
        ("W point pairwise concurrence 1/N", criterion_7),
        ("damping envelope", criterion_8),
        ("closed forms match Wootters on random X states", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!("[{}] criterion {}: {name}: {}", if v.pass { "PASS" } else { "FAIL" }, k + 1, v.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
