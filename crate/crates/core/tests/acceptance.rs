//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qstirling::asymptotics::{
    self, numeric_max_of, numeric_max_work, regime_point, regime_report, Order, Regime as Limit,
};
use qstirling::cycle::{CycleParams, SweepRow};
use qstirling::figures::{check_preset, Figure};
use qstirling::oracle::{
    energy_expectation, lindblad_steady_state_tls, squeezed_thermal_state_auto,
    tls_stationary_state, von_neumann_entropy, HamiltonianSpec, LindbladParams,
};
use qstirling::{ho, tls, Medium, Reservoir};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
        }
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn lin_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn params(medium: Medium, w1: f64, w2: f64, th: f64, tc: f64, r: f64) -> CycleParams {
    CycleParams {
        medium,
        omega1: w1,
        omega2: w2,
        t_hot: th,
        t_cold: tc,
        squeeze_r: r,
        squeeze_phi: 0.0,
    }
}

fn two_level_oracle() -> Outcome {
    let mut worst: f64 = 0.0;
    for x in log_grid(1e-2, 20.0, 40) {
        for r in lin_grid(0.0, 2.0, 20) {
            let res = Reservoir::squeezed(1.0, r, 0.0).unwrap();
            let rho = tls_stationary_state(x, 1.0, r).unwrap();
            let e = energy_expectation(&rho, &HamiltonianSpec::TwoLevel { omega: x }).unwrap();
            worst = worst.max((e - tls::internal_energy(x, &res).unwrap()).abs());
            worst = worst.max((von_neumann_entropy(&rho) - tls::entropy(x, &res).unwrap()).abs());
        }
    }
    Outcome::new(
        worst <= 1e-10,
        format!("max abs error {worst:.2e} (limit 1e-10)"),
    )
}

fn lindblad_fixed_point() -> Outcome {
    let mut triples = Vec::new();
    for &phi in &[0.0, FRAC_PI_2, PI] {
        for &gamma in &[0.1, 1.0, 10.0] {
            triples.push((gamma, phi, 1.0, 1.0, 0.5));
        }
    }
    triples.extend([
        (1.0, 0.3, 0.2, 1.0, 1.5),
        (0.1, 2.0, 5.0, 2.0, 0.1),
        (10.0, PI, 20.0, 1.0, 2.0),
    ]);
    let mut worst: f64 = 0.0;
    for &(gamma, phi, omega, t, r) in &triples {
        let p = LindbladParams::new(gamma, omega, Reservoir::squeezed(t, r, phi).unwrap()).unwrap();
        let ss = lindblad_steady_state_tls(&p).unwrap();
        let expected = tls_stationary_state(omega, t, r).unwrap();
        worst = worst.max(ss.state.trace_distance(&expected).unwrap());
    }
    Outcome::new(
        worst <= 1e-8,
        format!(
            "{} triples, max trace distance {worst:.2e} (limit 1e-8)",
            triples.len()
        ),
    )
}

fn oscillator_oracle() -> Outcome {
    let triples: [(f64, f64, f64); 9] = [
        (1.0, 1.0, 0.0),
        (1.0, 1.0, 0.5),
        (1.0, 2.0, 0.3),
        (2.0, 1.0, 1.0),
        (1.0, 0.5, 1.2),
        (1.0, 3.0, 0.7),
        (0.5, 1.0, 0.4),
        (1.0, 5.0, 0.2),
        (3.0, 2.0, 1.5),
    ];
    let mut worst: f64 = 0.0;
    let mut largest_cutoff = 0;
    for &(omega, t, r) in &triples {
        let n = 1.0 / (omega / t).exp_m1();
        assert!(n * (2.0 * r).cosh() <= 20.0);
        let state = squeezed_thermal_state_auto(omega, t, r, 0.0).unwrap();
        largest_cutoff = largest_cutoff.max(state.cutoff());
        let closed = ho::internal_energy(omega, &Reservoir::squeezed(t, r, 0.0).unwrap()).unwrap();
        worst = worst.max((state.mean_energy().unwrap() - closed).abs() / closed);
    }
    Outcome::new(
        worst <= 1e-8,
        format!("max rel error {worst:.2e} (limit 1e-8), largest cutoff {largest_cutoff}"),
    )
}

fn first_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut closure: f64 = 0.0;
    let mut forms: f64 = 0.0;
    let mut engines = 0;
    for medium in [Medium::TwoLevel, Medium::Oscillator] {
        for _ in 0..10_000 {
            let w1 = rng.gen_range(0.05..5.0);
            let tc = rng.gen_range(0.1..5.0);
            let p = CycleParams {
                medium,
                omega1: w1,
                omega2: w1 * rng.gen_range(1.0..10.0),
                t_hot: tc * rng.gen_range(1.01..10.0),
                t_cold: tc,
                squeeze_r: rng.gen_range(0.0..2.0),
                squeeze_phi: rng.gen_range(0.0..TAU),
            };
            let row = SweepRow::evaluate(p).unwrap();
            let l = row.ledger;
            let scale = [l.q_ab, l.q_bc, l.q_cd, l.q_da]
                .iter()
                .fold(f64::MIN_POSITIVE, |m, q| m.max(q.abs()));
            closure = closure.max((l.total_heat() - l.total_work()).abs() / scale);
            if let (Some(a), Some(b)) =
                (row.performance.eta, row.performance.eta_from_rejected_heat)
            {
                forms = forms.max((a - b).abs());
                engines += 1;
            }
        }
    }
    Outcome::new(
        closure <= 1e-10 && forms <= 1e-10,
        format!("closure {closure:.2e}, efficiency forms {forms:.2e} over {engines} engines (limit 1e-10)"),
    )
}

fn thermal_reduction() -> Outcome {
    let mut q_gap: f64 = 0.0;
    for &w1 in &[0.05, 0.3, 1.0, 3.0] {
        for &ratio in &[1.5, 2.0, 5.0, 10.0] {
            for &t in &[0.2, 1.0, 2.0, 10.0] {
                let w2 = w1 * ratio;
                let a = tls::heat_isothermal_hot(w1, w2, &Reservoir::thermal(t).unwrap()).unwrap();
                let b = tls::heat_isothermal_thermal(w1, w2, t).unwrap();
                q_gap = q_gap.max((a - b).abs() / a.abs().max(1.0));
            }
        }
    }
    let mut excess = f64::NEG_INFINITY;
    for medium in [Medium::TwoLevel, Medium::Oscillator] {
        for ratio in lin_grid(1.1, 10.0, 12) {
            for tr in lin_grid(1.05, 5.0, 12) {
                let perf = SweepRow::evaluate(params(medium, 1.0, ratio, tr, 1.0, 0.0))
                    .unwrap()
                    .performance;
                if let Some(eta) = perf.eta {
                    excess = excess.max(eta - perf.eta_carnot);
                }
            }
        }
    }
    Outcome::new(
        q_gap <= 1e-12 && excess <= 1e-12,
        format!("Q_AB gap {q_gap:.2e} (limit 1e-12), max eta - eta_C at r = 0 {excess:.2e}"),
    )
}

fn carnot_surpass() -> Outcome {
    let mut parts = Vec::new();
    let mut passed = true;
    for medium in [Medium::TwoLevel, Medium::Oscillator] {
        let mut best = f64::NEG_INFINITY;
        let mut hit = None;
        let mut thermal_hits = 0;
        for tr in lin_grid(1.05, 1.5, 10) {
            for ratio in lin_grid(2.0, 8.0, 13) {
                for r in lin_grid(0.5, 1.5, 11) {
                    let perf = SweepRow::evaluate(params(medium, 1.0, ratio, tr, 1.0, r))
                        .unwrap()
                        .performance;
                    if let Some(eta) = perf.eta {
                        if eta - perf.eta_carnot > best {
                            best = eta - perf.eta_carnot;
                            hit = Some((tr, ratio, r));
                        }
                    }
                }
                let thermal = SweepRow::evaluate(params(medium, 1.0, ratio, tr, 1.0, 0.0)).unwrap();
                if thermal.performance.surpasses_carnot() {
                    thermal_hits += 1;
                }
            }
        }
        passed &= best > 0.0 && thermal_hits == 0;
        let (tr, ratio, r) = hit.unwrap_or_default();
        parts.push(format!(
            "{medium}: best eta - eta_C {best:.3} at Th/Tc={tr:.3} omega2/omega1={ratio} r={r:.1}, r=0 surpasses {thermal_hits}"
        ));
    }
    Outcome::new(passed, parts.join("; "))
}

fn effective_temperature() -> Outcome {
    let mut min_gap = f64::INFINITY;
    let mut equal_gap: f64 = 0.0;
    for x in log_grid(1e-2, 20.0, 40) {
        for r in lin_grid(0.0, 2.0, 20) {
            for &t in &[0.5, 1.0, 3.0] {
                let teff = tls::effective_temperature(x * t, t, r).unwrap();
                if r == 0.0 {
                    equal_gap = equal_gap.max((teff - t).abs() / t);
                } else {
                    min_gap = min_gap.min((teff - t) / t);
                }
            }
        }
    }
    Outcome::new(
        min_gap > 1e-12 && equal_gap <= 1e-12,
        format!(
            "min (T_eff - T)/T at r > 0 {min_gap:.3e}, max |T_eff - T|/T at r = 0 {equal_gap:.2e}"
        ),
    )
}

fn convergence(base: CycleParams, limit: Limit, ks: &[f64]) -> Vec<f64> {
    ks.iter()
        .map(|&k| {
            let p = regime_point(&base, limit, k).unwrap();
            regime_report(&p, limit, Order::Second)
                .unwrap()
                .relative_error()
        })
        .collect()
}

fn asymptotic_convergence() -> Outcome {
    let tls_base = params(Medium::TwoLevel, 1.0, 2.0, 2.0, 1.0, 0.5);
    let ho_base = params(Medium::Oscillator, 0.5, 1.0, 2.0, 1.0, 0.5);
    let tls_ks = [20.0, 40.0, 80.0];
    let ho_ks = [0.1, 0.05, 0.01];
    let a = convergence(tls_base, Limit::LowT, &tls_ks);
    let b = convergence(ho_base, Limit::HighT, &ho_ks);
    let shrinking = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]);
    let monotone = shrinking(&a) && shrinking(&b);

    let mut stationarity: f64 = 0.0;
    let mut exact_gap: f64 = 0.0;
    let mut parts = Vec::new();
    for (base, limit, k) in [(tls_base, Limit::LowT, 80.0), (ho_base, Limit::HighT, 0.01)] {
        let p = regime_point(&base, limit, k).unwrap();
        let star = asymptotics::analytic_omega2_star(&p, limit).unwrap();
        let stationary = asymptotics::stationary_omega2_star(&p, limit).unwrap();
        let hi = 20.0 * star.max(stationary);
        let approx = |w2| {
            asymptotics::approximate_work(&CycleParams { omega2: w2, ..p }, limit, Order::Second)
        };
        let m = numeric_max_of(approx, p.omega1, hi).unwrap();
        let exact = numeric_max_work(&p, p.omega1, hi).unwrap();
        let s_gap = (star - m.x).abs() / m.x;
        let e_gap = (star - exact.x).abs() / exact.x;
        stationarity = stationarity.max(s_gap);
        exact_gap = exact_gap.max(e_gap);
        parts.push(format!(
            "{} {}: omega2* {star:.6}, argmax W_approx {:.6} (stationary point {stationary:.6}), argmax W_exact {:.4}{}",
            p.medium,
            limit,
            m.x,
            exact.x,
            if exact.at_boundary { " at range end" } else { "" }
        ));
    }
    let sci = |v: &[f64]| {
        v.iter()
            .map(|e| format!("{e:.2e}"))
            .collect::<Vec<_>>()
            .join(" > ")
    };
    Outcome::new(
        monotone && stationarity <= 1e-6 && exact_gap <= 0.05,
        format!(
            "errors tls low-T [{}] ho high-T [{}] monotone={monotone}; stationarity gap {stationarity:.2e} (limit 1e-6); exact gap {exact_gap:.2e} (limit 0.05); {}",
            sci(&a),
            sci(&b),
            parts.join("; ")
        ),
    )
}

fn otto_limit() -> Outcome {
    let mut worst: f64 = 0.0;
    for &(w1, w2) in &[(1.0, 2.0), (1.0, 5.0), (0.3, 0.4)] {
        for &c in &[1.0, 0.01, 250.0] {
            for &r in &[0.0, 0.7, 2.0] {
                for &th in &[0.5, 2.0] {
                    let eta = asymptotics::tls_eta_mw_low_t(c * w1, c * w2, th, r, Order::First);
                    worst = worst.max((eta - (1.0 - w1 / w2)).abs());
                }
            }
        }
    }
    Outcome::new(
        worst <= 1e-15,
        format!("max |eta - (1 - omega1/omega2)| {worst:.2e}"),
    )
}

fn figures() -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for f in Figure::ALL {
        let preset = f.preset();
        let table = preset.table().unwrap();
        for (key, m) in check_preset(&preset, &table) {
            let ok = m.holds(1e-12);
            passed &= ok;
            parts.push(format!(
                "{f} along {}: min diff {:.2e} {}",
                key.label(),
                m.min_difference,
                if ok { "ok" } else { "DECREASES" }
            ));
        }
    }
    Outcome::new(passed, parts.join("; "))
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "1 two-level oracle equivalence",
            two_level_oracle,
            Duration::from_secs(1),
        ),
        (
            "2 master-equation fixed point",
            lindblad_fixed_point,
            Duration::from_secs(10),
        ),
        (
            "3 oscillator oracle equivalence",
            oscillator_oracle,
            Duration::from_secs(30),
        ),
        (
            "4 first law and cycle closure",
            first_law,
            Duration::from_secs(5),
        ),
        ("5 thermal reduction", thermal_reduction, Duration::MAX),
        (
            "6 Carnot surpass existence",
            carnot_surpass,
            Duration::from_secs(5),
        ),
        (
            "7 effective temperature",
            effective_temperature,
            Duration::MAX,
        ),
        (
            "8 asymptotic convergence",
            asymptotic_convergence,
            Duration::MAX,
        ),
        ("9 Otto limit", otto_limit, Duration::MAX),
        ("10 figure data", figures, Duration::from_secs(30)),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let passed = outcome.passed && in_time;
        if !passed {
            failed += 1;
        }
        let budget_note = if budget == Duration::MAX {
            String::new()
        } else {
            format!(
                " (budget {:.0?}{})",
                budget,
                if in_time { "" } else { ", exceeded" }
            )
        };
        println!(
            "{} criterion {name}: {} [{:.3?}{budget_note}]",
            if passed { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed
        );
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
