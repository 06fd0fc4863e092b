//! Acceptance suite: every exit criterion as one test, printing a PASS/FAIL
//! line with the measured worst case. Run with `--nocapture` to see the
//! lines for passing tests too.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

use pasipcs_core::coherent::{
    coefficient_closed, coefficient_raw, lowering_eigenvalue_check, normalization, overlap,
    overlap_closed, ZChoice,
};
use pasipcs_core::measure::{identity_resolution_report, weight_function, WeightSpec};
use pasipcs_core::poschl_teller::PTParams;
use pasipcs_core::specfun::{hypergeometric_pfq, SeriesControl};
use pasipcs_core::susy::{cross_validate_with_eigensolver, verify_partner_relations};
use pasipcs_core::thermal::{
    closed_form_crosscheck, thermal_report, trace_check, ThermalConfig,
};

fn report(label: &str, pass: bool, detail: &str) {
    println!(
        "acceptance {label}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{label}: {detail}");
}

fn pt() -> PTParams {
    PTParams::symmetric(1.0, 2.0).unwrap()
}

fn phase(alpha: f64) -> ZChoice {
    ZChoice::PhaseOnly { alpha }
}

fn gamma(alpha: f64) -> ZChoice {
    ZChoice::GammaWeighted { alpha, kappa: 1.0 }
}

/// Criterion 1: partial-sum spectrum equals λ²n(n+2ρ) to 1e-12 relative for
/// n <= 50 across five parameter sets, in under a second.
#[test]
fn criterion_1_spectrum_equivalence() {
    let start = Instant::now();
    let sets = [
        PTParams::symmetric(1.0, 2.0).unwrap(),
        PTParams::symmetric(0.5, 2.5).unwrap(),
        PTParams::symmetric(2.0, 3.0).unwrap(),
        PTParams::new(1.5, 3.5, 0.8).unwrap(),
        PTParams::new(4.0, 2.0, 2.0).unwrap(),
    ];
    let mut worst: f64 = 0.0;
    for p in &sets {
        let table = p.chain().spectrum(50);
        for n in 0..=50usize {
            let closed = p.energy(n);
            let diff = (table.level(n) - closed).abs();
            if n > 0 {
                worst = worst.max(diff / closed);
            } else {
                worst = worst.max(diff);
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        "1 (spectrum equivalence)",
        worst <= 1e-12 && elapsed.as_secs_f64() < 1.0,
        &format!("worst rel diff {worst:.2e}, {elapsed:?}"),
    );
}

/// Criterion 2: coefficient_raw vs coefficient_closed to 1e-10 relative for
/// m <= 6, n <= 20, both choices, including |K_1^1|² = 7/12; under 5 s.
#[test]
fn criterion_2_coefficient_oracle_equivalence() {
    let start = Instant::now();
    let p = pt();
    let mut worst_mod: f64 = 0.0;
    let mut worst_phase: f64 = 0.0;
    for choice in [phase(0.4), gamma(0.4)] {
        for m in 0..=6usize {
            for n in 0..=20usize {
                let raw = coefficient_raw(&choice, &p, m, n).unwrap();
                let closed = coefficient_closed(&choice, &p, m, n).unwrap();
                // log-space comparison of moduli, direct for phases.
                worst_mod = worst_mod.max(
                    (raw.log_modulus - closed.log_modulus).abs()
                        / closed.log_modulus.abs().max(1.0),
                );
                worst_phase = worst_phase
                    .max((raw.phase - closed.phase).abs() / closed.phase.abs().max(1.0));
            }
        }
    }
    let k11 = coefficient_closed(&phase(0.0), &p, 1, 1).unwrap().mod2();
    let worked = (k11 - 7.0 / 12.0).abs();
    let elapsed = start.elapsed();
    report(
        "2 (coefficient oracle equivalence)",
        worst_mod <= 1e-10 && worst_phase <= 1e-10 && worked < 1e-12
            && elapsed.as_secs_f64() < 5.0,
        &format!(
            "worst modulus {worst_mod:.2e}, worst phase {worst_phase:.2e}, |K_1^1|² off by {worked:.2e}, {elapsed:?}"
        ),
    );
}

/// Criterion 3: the four m = 0 reductions recovered to 1e-8 pointwise on
/// 100-point grids.
#[test]
fn criterion_3_m0_reductions() {
    let p = pt(); // ρ = 2, ν = 3
    let ctl = SeriesControl::default();

    // 1F2 normalization: N_0 = [1F2(2ρ; ρ, ρ+1/2; x/4)]^{-1/2}.
    let mut worst_1f2: f64 = 0.0;
    for j in 1..=100 {
        let x = 8.0 * j as f64 / 100.0;
        let series = normalization(&phase(0.0), &p, 0, x).unwrap();
        let f = hypergeometric_pfq(&[4.0], &[2.0, 2.5], x / 4.0, &ctl).unwrap();
        worst_1f2 = worst_1f2.max((series - f.powf(-0.5)).abs() / series);
    }

    // Beta-ratio h_n: |K_n^0|² = Γ(n+1)Γ(ν+1)/Γ(n+ν+1) for the
    // Gamma-weighted family, against the explicit ratio product.
    let mut worst_hn: f64 = 0.0;
    for n in 0..100usize {
        let got = coefficient_closed(&gamma(0.0), &p, 0, n).unwrap().mod2();
        let mut oracle = 1.0;
        for j in 1..=n {
            oracle *= j as f64 / (3.0 + j as f64);
        }
        worst_hn = worst_hn.max((got - oracle).abs() / oracle);
    }

    // Corrected N_0 = (1-x)^{(ν+1)/2}.
    let mut worst_n0: f64 = 0.0;
    for j in 1..=100 {
        let x = 0.95 * j as f64 / 100.0;
        let got = normalization(&gamma(0.0), &p, 0, x).unwrap();
        let exact = (1.0 - x).powf(2.0);
        worst_n0 = worst_n0.max((got - exact).abs() / exact);
    }

    // ω_0 = (ν/π)(1-x)^{-2} through the contour kernel.
    let tight = SeriesControl {
        rel_tol: 1e-10,
        ..SeriesControl::default()
    };
    let spec = WeightSpec::new(gamma(0.0), p, 0).unwrap();
    let mut worst_w0: f64 = 0.0;
    for j in 1..=100 {
        let x = 0.9 * j as f64 / 100.0;
        let got = weight_function(&spec, x, &tight).unwrap();
        let exact = 3.0 / std::f64::consts::PI / ((1.0 - x) * (1.0 - x));
        worst_w0 = worst_w0.max((got - exact).abs() / exact);
    }

    let pass = worst_1f2 <= 1e-8 && worst_hn <= 1e-8 && worst_n0 <= 1e-8 && worst_w0 <= 1e-8;
    report(
        "3 (m = 0 reductions)",
        pass,
        &format!(
            "1F2 {worst_1f2:.2e}, h_n {worst_hn:.2e}, N_0 {worst_n0:.2e}, ω_0 {worst_w0:.2e}"
        ),
    );
}

/// Criterion 4: Stieltjes moments — Gamma-weighted at 1e-6 for m <= 3,
/// n <= 10 (with the analytic Beta case), phase-only at 1e-4 for m <= 2,
/// n <= 6; under two minutes.
#[test]
fn criterion_4_stieltjes_moments() {
    let start = Instant::now();
    let p = pt();

    let gw_ctl = SeriesControl {
        rel_tol: 1e-7,
        ..SeriesControl::default()
    };
    let mut worst_gw: f64 = 0.0;
    let mut analytic_case = f64::NAN;
    for m in 0..=3usize {
        let spec = WeightSpec::new(gamma(0.0), p, m).unwrap();
        let checks = identity_resolution_report(&spec, 10, &gw_ctl).unwrap();
        for c in &checks {
            worst_gw = worst_gw.max(c.rel_err);
            if m == 0 && c.n == 1 {
                analytic_case = (c.target - 0.25).abs();
            }
        }
    }

    let po_ctl = SeriesControl {
        rel_tol: 1e-6,
        ..SeriesControl::default()
    };
    let mut worst_po: f64 = 0.0;
    for m in 0..=2usize {
        let spec = WeightSpec::new(phase(0.0), p, m).unwrap();
        let checks = identity_resolution_report(&spec, 6, &po_ctl).unwrap();
        for c in &checks {
            worst_po = worst_po.max(c.rel_err);
        }
    }

    let elapsed = start.elapsed();
    report(
        "4 (Stieltjes moments)",
        worst_gw <= 1e-6 && worst_po <= 1e-4 && analytic_case < 1e-14
            && elapsed.as_secs_f64() < 120.0,
        &format!(
            "Gamma-weighted worst {worst_gw:.2e}, phase-only worst {worst_po:.2e}, Beta case off {analytic_case:.1e}, {elapsed:?}"
        ),
    );
}

/// Criterion 5: SUSY grid suite at N = 2048: Riccati <= 1e-8,
/// ‖Aψ0‖ <= 1e-8, Hamiltonian residual <= 1e-6 and eigensolver overlap
/// >= 1 − 1e-6 for n <= 5; under 30 s.
#[test]
fn criterion_5_susy_grid_suite() {
    let start = Instant::now();
    let p = pt();
    let n_nodes = 2048;

    let partner = verify_partner_relations(&p, n_nodes, 5).unwrap();
    let mut worst_ham: f64 = 0.0;
    for item in &partner.items {
        worst_ham = worst_ham.max(item.hamiltonian_residual);
    }
    let cross = cross_validate_with_eigensolver(&p, n_nodes, 5).unwrap();
    let mut worst_energy: f64 = 0.0;
    let mut worst_overlap: f64 = 1.0;
    for c in &cross {
        worst_energy =
            worst_energy.max((c.energy_chain - c.energy_solver).abs() / c.energy_chain.max(1.0));
        worst_overlap = worst_overlap.min(c.overlap);
        worst_ham = worst_ham.max(pasipcs_core::susy::hamiltonian_residual(
            &p,
            1,
            &pasipcs_core::susy::build_eigenfunction(&p, n_nodes, c.n).unwrap(),
            p.energy(c.n),
        ));
    }

    let elapsed = start.elapsed();
    let pass = partner.riccati_max_residual <= 1e-8
        && partner.annihilation_residual <= 1e-8
        && partner.ground_state_consistency <= 1e-8
        && worst_ham <= 1e-6
        && worst_overlap >= 1.0 - 1e-6
        && worst_energy <= 1e-6
        && elapsed.as_secs_f64() < 30.0;
    report(
        "5 (SUSY grid suite)",
        pass,
        &format!(
            "Riccati {:.2e}, ‖Aψ0‖ {:.2e}, exp(−∫W) {:.2e}, H-residual {worst_ham:.2e}, overlap 1−{:.2e}, energy {worst_energy:.2e}, {elapsed:?}",
            partner.riccati_max_residual,
            partner.annihilation_residual,
            partner.ground_state_consistency,
            1.0 - worst_overlap
        ),
    );
}

/// Criterion 6: Figure-1 reproduction for ρ = 2, λ = 1: the m ∈ {0..4}
/// weight curves are positive on (0, 10], blow up toward x = 0, decay at
/// large x, and the m >= 1 curves approach the m = 0 curve (ratio within
/// 10% at the tail of the extended grid; the approach goes like a fractional
/// power of x, so the asymptotic regime sits beyond x = 10).
#[test]
fn criterion_6_figure1_reproduction() {
    let p = pt();
    let ctl = SeriesControl::contour_default();
    let specs: Vec<WeightSpec> = (0..=4)
        .map(|m| WeightSpec::new(phase(0.0), p, m).unwrap())
        .collect();

    let mut all_positive = true;
    let mut min_value = f64::INFINITY;
    for spec in &specs {
        for j in 1..=50 {
            let x = 10.0 * j as f64 / 50.0;
            let w = weight_function(spec, x, &ctl).unwrap();
            min_value = min_value.min(w);
            all_positive &= w >= -1e-10;
        }
    }

    // Singularity toward x -> 0 and decay toward large x.
    let mut singular_and_decaying = true;
    for spec in &specs {
        let near0: Vec<f64> = [0.002, 0.02, 0.2]
            .iter()
            .map(|&x| weight_function(spec, x, &ctl).unwrap())
            .collect();
        singular_and_decaying &= near0[0] > near0[1] && near0[1] > near0[2];
        let tail: Vec<f64> = [4.0, 7.0, 10.0]
            .iter()
            .map(|&x| weight_function(spec, x, &ctl).unwrap())
            .collect();
        singular_and_decaying &= tail[0] > tail[1] && tail[1] > tail[2];
    }

    // Approach to the m = 0 curve: ratios decrease monotonically along the
    // tail and land within 10% by its end.
    let tail_grid = [10.0, 40.0, 160.0, 320.0];
    let mut approach_ok = true;
    let mut worst_tail_ratio: f64 = 0.0;
    for m in 1..=4usize {
        let mut prev = f64::INFINITY;
        for &x in &tail_grid {
            let w0 = weight_function(&specs[0], x, &ctl).unwrap();
            let wm = weight_function(&specs[m], x, &ctl).unwrap();
            let ratio = wm / w0;
            approach_ok &= ratio < prev && ratio > 1.0;
            prev = ratio;
        }
        worst_tail_ratio = worst_tail_ratio.max((prev - 1.0).abs());
    }
    approach_ok &= worst_tail_ratio <= 0.10;

    report(
        "6 (Figure-1 reproduction)",
        all_positive && singular_and_decaying && approach_ok,
        &format!(
            "min value {min_value:.3e}, singular+decaying {singular_and_decaying}, tail |ratio−1| {worst_tail_ratio:.3}"
        ),
    );
}

/// Criterion 7: lowering-eigenvalue residual <= 1e-8 for m = 0 states at
/// ten labels per variant.
#[test]
fn criterion_7_lowering_eigenvalue() {
    let p = pt();
    let mut worst: f64 = 0.0;
    for j in 0..10 {
        let angle = 0.61 * j as f64;
        let r_phase = 0.2 + 0.23 * j as f64;
        let z = Complex64::from_polar(r_phase, angle);
        worst = worst.max(lowering_eigenvalue_check(&phase(0.3), &p, z, 500).unwrap());
        let r_gamma = 0.05 + 0.08 * j as f64;
        let zg = Complex64::from_polar(r_gamma, angle);
        worst = worst.max(lowering_eigenvalue_check(&gamma(0.3), &p, zg, 1500).unwrap());
    }
    report(
        "7 (lowering-eigenvalue property)",
        worst <= 1e-8,
        &format!("worst residual {worst:.2e}"),
    );
}

/// Criterion 8: thermal suite — trace recovery by quadrature, the Mandel
/// identity at 1e-12, the frozen limits at β = 50, and a crosscheck report
/// that is stable under truncation doubling.
#[test]
fn criterion_8_thermal_suite() {
    let p = pt();

    let gw_ctl = SeriesControl {
        rel_tol: 1e-8,
        ..SeriesControl::default()
    };
    let mut worst_trace_gw: f64 = 0.0;
    for m in 0..=2usize {
        let cfg = ThermalConfig::auto(&p, 1.0, m).unwrap();
        let tr = trace_check(&gamma(0.0), &p, &cfg, &gw_ctl).unwrap();
        worst_trace_gw = worst_trace_gw.max((tr - 1.0).abs());
    }
    let po_ctl = SeriesControl {
        rel_tol: 1e-6,
        ..SeriesControl::default()
    };
    let mut worst_trace_po: f64 = 0.0;
    for m in 0..=1usize {
        let cfg = ThermalConfig::auto(&p, 1.0, m).unwrap();
        let tr = trace_check(&phase(0.0), &p, &cfg, &po_ctl).unwrap();
        worst_trace_po = worst_trace_po.max((tr - 1.0).abs());
    }

    let mut worst_identity: f64 = 0.0;
    for m in 0..=2usize {
        for &beta in &[0.5, 1.0, 2.0, 4.0, 8.0] {
            let cfg = ThermalConfig::auto(&p, beta, m).unwrap();
            let r = thermal_report(&p, &cfg);
            let variance = r.mean_n2 - r.mean_n * r.mean_n;
            worst_identity = worst_identity.max(
                (r.mandel_q - (variance / r.mean_n - 1.0)).abs()
                    / (variance / r.mean_n - 1.0).abs().max(1.0),
            );
        }
    }

    let mut worst_limit: f64 = 0.0;
    for m in 0..=2usize {
        let cfg = ThermalConfig::auto(&p, 50.0, m).unwrap();
        let r = thermal_report(&p, &cfg);
        worst_limit = worst_limit.max((r.mean_n - p.energy(m)).abs());
        if m >= 1 {
            worst_limit = worst_limit.max((r.mandel_q + 1.0).abs());
        }
    }

    // Crosscheck report: present for both variants, deviations finite, and
    // the direct side stable under truncation doubling.
    let mut crosscheck_ok = true;
    let mut worst_stability: f64 = 0.0;
    for choice in [phase(0.0), gamma(0.0)] {
        let cfg = ThermalConfig::auto(&p, 1.0, 1).unwrap();
        let entries = closed_form_crosscheck(&choice, &p, &cfg);
        crosscheck_ok &= entries.len() == 4
            && entries.iter().all(|e| {
                e.direct.is_finite() && e.printed.is_finite() && e.substituted.is_finite()
            });
        let doubled = ThermalConfig {
            truncation: cfg.truncation * 2,
            ..cfg
        };
        let (r1, r2) = (thermal_report(&p, &cfg), thermal_report(&p, &doubled));
        worst_stability = worst_stability
            .max((r1.mean_n - r2.mean_n).abs() / r1.mean_n.abs().max(1e-30))
            .max((r1.mean_n2 - r2.mean_n2).abs() / r1.mean_n2.abs().max(1e-30));
    }

    let pass = worst_trace_gw <= 1e-6
        && worst_trace_po <= 1e-6
        && worst_identity <= 1e-12
        && worst_limit <= 1e-8
        && crosscheck_ok
        && worst_stability <= 1e-10;
    report(
        "8 (thermal suite)",
        pass,
        &format!(
            "trace GW {worst_trace_gw:.2e}, trace PO {worst_trace_po:.2e}, Q-identity {worst_identity:.2e}, frozen limits {worst_limit:.2e}, crosscheck stable {worst_stability:.2e}"
        ),
    );
}

/// Criterion 9: overlap series vs closed hypergeometric forms at 1e-8 over
/// twenty random in-domain label pairs per variant.
#[test]
fn criterion_9_overlap_equivalence() {
    let p = pt();
    let ctl = SeriesControl::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let z1 = Complex64::from_polar(rng.gen_range(0.1..2.2), rng.gen_range(0.0..6.28));
        let z2 = Complex64::from_polar(rng.gen_range(0.1..2.2), rng.gen_range(0.0..6.28));
        let m1 = rng.gen_range(0..5usize);
        let m2 = rng.gen_range(0..5usize);
        let series = overlap(&phase(0.0), &p, z1, m1, z2, m2).unwrap();
        let closed = overlap_closed(&phase(0.0), &p, z1, m1, z2, m2, &ctl).unwrap();
        worst = worst.max((series - closed).norm() / series.norm().max(1e-8));
    }
    for _ in 0..20 {
        let z1 = Complex64::from_polar(rng.gen_range(0.05..0.85), rng.gen_range(0.0..6.28));
        let z2 = Complex64::from_polar(rng.gen_range(0.05..0.85), rng.gen_range(0.0..6.28));
        let m1 = rng.gen_range(0..5usize);
        let m2 = rng.gen_range(0..5usize);
        let series = overlap(&gamma(0.0), &p, z1, m1, z2, m2).unwrap();
        let closed = overlap_closed(&gamma(0.0), &p, z1, m1, z2, m2, &ctl).unwrap();
        worst = worst.max((series - closed).norm() / series.norm().max(1e-8));
    }
    report(
        "9 (overlap equivalence)",
        worst <= 1e-8,
        &format!("worst rel deviation {worst:.2e}"),
    );
}
