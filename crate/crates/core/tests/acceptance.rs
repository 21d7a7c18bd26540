//! End-to-end verification gate. Each numbered check prints one
//! pass/fail line; the test fails only after every check has run.

use dzlab_core::*;
use num::complex::Complex64;
use std::time::Instant;

const CATALAN: f64 = 0.915_965_594_177_219_0;

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn check(&mut self, id: u32, label: &str, ok: bool, detail: String) {
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("criterion {id:2}: {verdict}  {label}  [{detail}]");
        if !ok {
            self.failures.push(format!("{id}: {label} ({detail})"));
        }
    }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<u64> {
    let mut xs: Vec<u64> = (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp() as u64)
        .collect();
    xs.dedup();
    xs
}

#[test]
fn acceptance() {
    let mut gate = Gate { failures: vec![] };
    let gauss = NumberField::quadratic(-1).unwrap();
    let root5 = NumberField::quadratic(5).unwrap();
    let rational = NumberField::rational();

    // 1. sieved a_K against the divisor-sum oracle, four discriminants
    {
        let t0 = Instant::now();
        let mut worst: Option<(i64, u64)> = None;
        for d in [-1i64, -3, 5, 2] {
            let field = NumberField::quadratic(d).unwrap();
            let disc = field.discriminant;
            let table = build_table(&field, 100_000, CoeffKind::IdealCount).unwrap();
            for m in 1..=100_000u64 {
                if table.get(m) != oracle_quadratic_count(disc, m) as i128 {
                    worst = worst.or(Some((disc, m)));
                }
            }
        }
        let elapsed = t0.elapsed().as_secs_f64();
        gate.check(
            1,
            "quadratic a_K = divisor-sum oracle, m <= 1e5, D in {-4,-3,5,8}",
            worst.is_none() && elapsed < 30.0,
            format!("mismatch {worst:?}, {elapsed:.1}s"),
        );
    }

    // 2. summatory ideal count on Q(i) against the lattice count
    {
        let table = build_table(&gauss, 10_000, CoeffKind::IdealCount).unwrap();
        let mut acc = 0i128;
        let mut bad = 0u64;
        for x in 1..=10_000u64 {
            acc += table.get(x);
            if acc != oracle_gaussian_count(x) {
                bad = x;
                break;
            }
        }
        gate.check(
            2,
            "Gaussian lattice oracle, all x <= 1e4",
            bad == 0,
            format!("first mismatch at x = {bad}"),
        );
    }

    // 3. Moebius and totient convolution identities on three fields
    {
        let x = 10_000u64;
        let mut ok = true;
        let mut where_bad = String::new();
        for field in [
            gauss.clone(),
            root5.clone(),
            NumberField::monogenic(&[1, 0, 0, -2]).unwrap(),
        ] {
            let [a, s_phi, s_mu] = build_all_tables(&field, x).unwrap();
            let n = x as usize;
            let mut mob = vec![0i128; n + 1];
            let mut tot = vec![0i128; n + 1];
            for d in 1..=x {
                let mu = s_mu.get(d);
                if mu == 0 {
                    continue;
                }
                for k in 1..=x / d {
                    mob[(d * k) as usize] += mu * a.get(k);
                    tot[(d * k) as usize] += mu * k as i128 * a.get(k);
                }
            }
            for m in 1..=x {
                let delta = if m == 1 { 1 } else { 0 };
                if mob[m as usize] != delta || tot[m as usize] != s_phi.get(m) {
                    ok = false;
                    where_bad = format!("{field} at m = {m}");
                    break;
                }
            }
        }
        gate.check(
            3,
            "mu*a = delta and mu*(id a) = S_phi, m <= 1e4, three fields",
            ok,
            where_bad,
        );
    }

    // shared large Gaussian tables for 4, 6, 7, 8
    let gauss_ideal_1m = build_table(&gauss, 1_000_000, CoeffKind::IdealCount).unwrap();
    let gauss_phi_1m = build_table(&gauss, 1_000_000, CoeffKind::TotientSum).unwrap();
    let gauss_inv = compute_invariants(&gauss, &gauss_ideal_1m);

    // 4. residue at s = 1 for Q(i)
    {
        let (kappa, method, _) = residue_kappa(&gauss, &gauss_ideal_1m);
        let exact_gap = (kappa - std::f64::consts::PI / 4.0).abs();
        let (reg, reg_err) = kappa_regression(&gauss_ideal_1m);
        let reg_gap = (reg - std::f64::consts::PI / 4.0).abs();
        gate.check(
            4,
            "kappa(Q(i)) = pi/4: character series 1e-10, regression in its error bar",
            method == KappaMethod::ExactCharacterSeries
                && exact_gap < 1e-10
                && reg_gap <= reg_err,
            format!("series gap {exact_gap:.1e}, regression gap {reg_gap:.1e} vs bar {reg_err:.1e}"),
        );
    }

    // 5. zeta_{Q(i)}(2) = (pi^2/6) G
    {
        let expect = std::f64::consts::PI.powi(2) / 6.0 * CATALAN;
        let gap = (gauss_inv.zeta_k2 - expect).abs();
        gate.check(5, "zeta_{Q(i)}(2) = (pi^2/6)*Catalan within 1e-8", gap < 1e-8, format!("gap {gap:.1e}"));
    }

    // 6. generalized Mertens on Q, Q(i), Q(sqrt5)
    {
        let mut ok = true;
        let mut detail = String::new();
        for field in [rational.clone(), gauss.clone(), root5.clone()] {
            let t0 = Instant::now();
            let (phi, inv) = if field.is_quadratic() && field.discriminant == -4 {
                (gauss_phi_1m.clone(), gauss_inv.clone())
            } else {
                let ideal = build_table(&field, 1_000_000, CoeffKind::IdealCount).unwrap();
                let phi = build_table(&field, 1_000_000, CoeffKind::TotientSum).unwrap();
                let inv = compute_invariants(&field, &ideal);
                (phi, inv)
            };
            // table + report working set stays far below the memory cap
            let bytes = 3 * 1_000_000 * 16u64;
            let xs = log_grid(1e4, 1e6, 51);
            let report = mertens_report(&phi, &field, &inv, &xs).unwrap();
            let last = report.last().unwrap();
            let ratio_gap = (last.value as f64 / 1e12 - inv.mertens_constant).abs();
            let first_decade = report
                .iter()
                .filter(|r| r.x <= 100_000)
                .map(|r| r.normalized_error.abs())
                .fold(0.0f64, f64::max);
            let last_decade = report
                .iter()
                .filter(|r| r.x >= 100_000)
                .map(|r| r.normalized_error.abs())
                .fold(0.0f64, f64::max);
            let elapsed = t0.elapsed().as_secs_f64();
            let field_ok = ratio_gap < 5e-3
                && last_decade <= 3.0 * first_decade
                && elapsed < 60.0
                && bytes < 1_500_000_000;
            if !field_ok {
                ok = false;
            }
            detail.push_str(&format!(
                "{field}: gap {ratio_gap:.1e}, decade ratio {:.2}, {elapsed:.0}s; ",
                last_decade / first_decade
            ));
        }
        gate.check(
            6,
            "Phi_K(x)/x^2 -> kappa/(2 zeta_K(2)) at x = 1e6, stable normalized error",
            ok,
            detail,
        );
    }

    // 7. smooth test functions decay visibly faster
    {
        let f = TestFunction::smooth_bump(1.0, 2.0).unwrap();
        let limit = m_limit(&gauss_inv, &f);
        let e = |q: f64| (m_q(&gauss_phi_1m, &f, q).unwrap() - limit).abs() / q.sqrt();
        let hi = e(1e-1);
        let lo = e(1e-5);
        gate.check(
            7,
            "SmoothBump on Q(i): q^{-1/2}|E| at 1e-5 is <= 0.5x its value at 1e-1",
            lo <= 0.5 * hi,
            format!("ratio {:.3}", lo / hi),
        );
    }

    // 8. indicator exponent band and supercritical scan growth
    {
        let f = TestFunction::indicator(1.0, 2.0).unwrap();
        let grid = geometric_grid(-5.0, -1.0, 12);
        let curve = error_curve(&gauss_phi_1m, &gauss_inv, &f, &grid).unwrap();
        let fit = exponent_fit(&curve).unwrap();
        let scan = &critical_exponent_scan(&curve, &[0.75])[0];
        let growth = scan.running_max.last().unwrap() / scan.running_max.first().unwrap();
        gate.check(
            8,
            "Indicator on Q(i): alpha in [0.20, 0.55]; alpha = 0.75 scan grows >= 10x",
            (0.20..=0.55).contains(&fit.alpha_hat) && growth >= 10.0,
            format!("alpha {:.3}, growth {growth:.1}x", fit.alpha_hat),
        );
    }

    // 9. Mellin transform: quadrature vs closed form
    {
        let points = [
            Complex64::new(1.5, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(1.25, 1.0),
            Complex64::new(2.0, 3.0),
        ];
        let fs = [
            TestFunction::indicator(1.0, 2.0).unwrap(),
            TestFunction::poly_bump(2).unwrap(),
            TestFunction::poly_bump(3).unwrap(),
        ];
        let mut worst = 0.0f64;
        for field in [rational.clone(), gauss.clone()] {
            let ideal = build_table(&field, 20_000, CoeffKind::IdealCount).unwrap();
            let phi = build_table(&field, 20_000, CoeffKind::TotientSum).unwrap();
            let inv = compute_invariants(&field, &ideal);
            for f in &fs {
                for s in points {
                    let num = mellin_numeric(&phi, &inv, f, s).unwrap().value.value;
                    let closed = mellin_closed(&field, &ideal, f, s).unwrap().value.value;
                    worst = worst.max((num - closed).norm() / closed.norm());
                }
            }
        }
        gate.check(
            9,
            "Eq.-of-variables Mellin identity, 24 (field, f, s) combinations",
            worst < 1e-3,
            format!("worst rel {worst:.1e}"),
        );
    }

    // 10. residue of the Mellin transform at s = 1
    {
        let f = TestFunction::poly_bump(2).unwrap();
        let ideal = build_table(&gauss, 1000, CoeffKind::IdealCount).unwrap();
        let samples: Vec<(f64, f64)> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&eps| {
                let m = mellin_closed(&gauss, &ideal, &f, Complex64::new(1.0 + eps, 0.0)).unwrap();
                (eps, eps * m.value.re())
            })
            .collect();
        let limit = extrapolate_to_zero(&samples);
        let gap = (limit - m_limit(&gauss_inv, &f)).abs();
        gate.check(
            10,
            "Richardson limit of (s-1) M_f(s) equals the limit measure, F_2 on Q(i)",
            gap < 1e-4,
            format!("gap {gap:.1e}"),
        );
    }

    // 11. Hecke functional equation for the completed zeta
    {
        let mut worst = 0.0f64;
        for field in [&gauss, &root5] {
            for s in [
                Complex64::new(0.25, 3.0),
                Complex64::new(0.3, 0.0),
                Complex64::new(0.7, 1.0),
            ] {
                worst = worst.max(functional_equation_check(field, s).unwrap());
            }
        }
        gate.check(
            11,
            "xi_K(s) = xi_K(1-s) defect < 1e-6, Q(i) and Q(sqrt5)",
            worst < 1e-6,
            format!("worst defect {worst:.1e}"),
        );
    }

    // 12. empirical Phragmen-Lindelof profile
    {
        let sigmas = [0.0, 0.25, 0.5, 0.75, 1.0, 1.5];
        let fits: Vec<NuFit> = sigmas
            .iter()
            .map(|&s| lindelof_probe(&gauss, s, 1e4, 160).unwrap())
            .collect();
        let monotone = fits
            .windows(2)
            .all(|w| w[1].nu_hat <= w[0].nu_hat + 0.05);
        let flat_right = fits.last().unwrap().nu_hat <= 0.05;
        let profile: Vec<String> = fits.iter().map(|f| format!("{:.2}", f.nu_hat)).collect();
        gate.check(
            12,
            "nu-hat over sigma grid nonincreasing (+-0.05), nu-hat(1.5) <= 0.05",
            monotone && flat_right,
            profile.join(" "),
        );
    }

    assert!(
        gate.failures.is_empty(),
        "failed criteria:\n{}",
        gate.failures.join("\n")
    );
}
