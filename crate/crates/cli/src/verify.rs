//! `dzlab verify`: re-run the library's cross-checks on a concrete
//! field and table bound, reporting each as pass/fail/skip JSON.

use crate::Common;
use dzlab_core::*;
use num::complex::Complex64;
use serde_json::json;
use std::process::ExitCode;

struct Suite {
    checks: Vec<serde_json::Value>,
    failed: usize,
}

impl Suite {
    fn record(&mut self, name: &str, ok: bool, detail: String) {
        if !ok {
            self.failed += 1;
        }
        self.checks.push(json!({
            "name": name,
            "status": if ok { "pass" } else { "fail" },
            "detail": detail,
        }));
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.checks.push(json!({ "name": name, "status": "skip", "detail": why }));
    }
}

pub fn run(c: &Common) -> Result<ExitCode> {
    let field = NumberField::parse_spec(&c.field)?;
    let tables = build_all_tables(&field, c.x)?;
    let [ideal, phi, mu] = &tables;
    let inv = compute_invariants(&field, ideal);
    let mut suite = Suite { checks: vec![], failed: 0 };

    // splitting: sum of e*f equals the degree at every prime
    {
        let mut bad = None;
        for p in primes_up_to(c.x.min(10_000)) {
            let s = split_prime(&field, p)?;
            if s.ef_sum() != field.degree {
                bad = Some(p);
                break;
            }
        }
        suite.record("splitting_ef_sum", bad.is_none(), format!("first bad prime {bad:?}"));
    }

    // quadratic-only: sieve against the character divisor-sum oracle
    if field.is_quadratic() {
        let lim = c.x.min(20_000);
        let bad = (1..=lim).find(|&m| ideal.get(m) != oracle_quadratic_count(field.discriminant, m) as i128);
        suite.record("quadratic_divisor_oracle", bad.is_none(), format!("m <= {lim}, first mismatch {bad:?}"));
    } else {
        suite.skip("quadratic_divisor_oracle", "field is not quadratic");
    }

    // Q(i)-only: lattice point count oracle
    if field.discriminant == -4 {
        let lim = c.x.min(5_000);
        let mut acc = 0i128;
        let mut bad = None;
        for x in 1..=lim {
            acc += ideal.get(x);
            if acc != oracle_gaussian_count(x) {
                bad = Some(x);
                break;
            }
        }
        suite.record("gaussian_lattice_oracle", bad.is_none(), format!("x <= {lim}, first mismatch {bad:?}"));
    } else {
        suite.skip("gaussian_lattice_oracle", "field is not Q(i)");
    }

    // Moebius and totient convolution identities
    {
        let lim = c.x.min(2_000);
        let mut bad = None;
        'outer: for m in 1..=lim {
            let mut conv_delta = 0i128;
            let mut conv_phi = 0i128;
            let mut d = 1u64;
            while d <= m {
                if m % d == 0 {
                    conv_delta += mu.get(d) * ideal.get(m / d);
                    conv_phi += mu.get(d) * (m / d) as i128 * ideal.get(m / d);
                }
                d += 1;
            }
            let delta = if m == 1 { 1 } else { 0 };
            if conv_delta != delta || conv_phi != phi.get(m) {
                bad = Some(m);
                break 'outer;
            }
        }
        suite.record("convolution_identities", bad.is_none(), format!("m <= {lim}, first mismatch {bad:?}"));
    }

    // totient sums within their trivial bounds
    {
        let bad = (1..=c.x).find(|&m| phi.get(m) < 0 || phi.get(m) > m as i128 * ideal.get(m));
        suite.record("totient_bounds", bad.is_none(), format!("first violation {bad:?}"));
    }

    // residue: exact route vs slope regression
    {
        let (reg, reg_err) = kappa_regression(ideal);
        let gap = (reg - inv.kappa).abs();
        suite.record(
            "kappa_regression_consistency",
            gap <= reg_err.max(0.05 * inv.kappa),
            format!("kappa {:.6}, regression {reg:.6} +- {reg_err:.1e}", inv.kappa),
        );
    }

    // zeta_K(2): truncated series vs the stored invariant
    {
        let v = zeta_series(ideal, Complex64::new(2.0, 0.0))?;
        let gap = (v.re() - inv.zeta_k2).abs();
        suite.record(
            "zeta_k2_series_consistency",
            gap <= v.abs_err + inv.zeta_k2_error + 1e-12,
            format!("gap {gap:.1e} vs budget {:.1e}", v.abs_err + inv.zeta_k2_error),
        );
    }

    // Mertens trend at the table edge
    {
        let r = mertens_report(phi, &field, &inv, &[c.x])?.remove(0);
        let rel = (r.value as f64 / (c.x as f64 * c.x as f64) - inv.mertens_constant).abs() / inv.mertens_constant;
        suite.record("mertens_main_term", rel < 0.05, format!("relative gap {rel:.1e} at x = {}", c.x));
    }

    // measure: dilation covariance at machine precision
    {
        let f = TestFunction::indicator(1.0, 2.0).unwrap();
        let scaled = TestFunction::indicator(0.5, 1.0).unwrap();
        let q = 4.0 * (2.0 / c.x as f64).powi(2).max(1e-5);
        let lhs = m_q(phi, &scaled, q)?;
        let rhs = m_q(phi, &f, 4.0 * q)? / 4.0;
        let gap = (lhs - rhs).abs();
        suite.record("measure_dilation_covariance", gap < 1e-12 * (1.0 + lhs.abs()), format!("gap {gap:.1e} at q = {q:.1e}"));
    }

    // Mellin: defining integral vs closed form
    {
        let f = TestFunction::poly_bump(2).unwrap();
        let mut worst = 0.0f64;
        for s in [Complex64::new(1.5, 0.0), Complex64::new(2.0, 3.0)] {
            let num = mellin_numeric(phi, &inv, &f, s)?;
            let closed = mellin_closed(&field, ideal, &f, s)?;
            worst = worst.max((num.value.value - closed.value.value).norm() / closed.value.value.norm());
        }
        suite.record("mellin_identity", worst < 1e-3, format!("worst rel {worst:.1e}"));
    }

    // Mellin residue at s = 1 (needs the continuation)
    if field.is_quadratic() || field.kind == FieldKind::Rational {
        let f = TestFunction::poly_bump(2).unwrap();
        let samples: Vec<(f64, f64)> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&eps| {
                let m = mellin_closed(&field, ideal, &f, Complex64::new(1.0 + eps, 0.0))?;
                Ok((eps, eps * m.value.re()))
            })
            .collect::<Result<_>>()?;
        let gap = (extrapolate_to_zero(&samples) - m_limit(&inv, &f)).abs();
        suite.record("mellin_pole_residue", gap < 1e-4, format!("gap {gap:.1e}"));
    } else {
        suite.skip("mellin_pole_residue", "needs the quadratic continuation");
    }

    // completed zeta symmetry
    if field.is_quadratic() {
        let mut worst = 0.0f64;
        for s in [Complex64::new(0.3, 0.0), Complex64::new(0.7, 1.0)] {
            worst = worst.max(functional_equation_check(&field, s)?);
        }
        suite.record("hecke_symmetry", worst < 1e-6, format!("worst defect {worst:.1e}"));
    } else {
        suite.skip("hecke_symmetry", "needs the quadratic continuation");
    }

    // cache round-trip is bit-exact
    {
        let dir = std::env::temp_dir();
        let path = dir.join(format!("dzlab-verify-{}.dzsv", std::process::id()));
        cache::write_tables(&path, &tables)?;
        let back = cache::read_tables(&path)?;
        let ok = back == tables;
        let _ = std::fs::remove_file(&path);
        suite.record("cache_round_trip", ok, "write/read equality".into());
    }

    let all_passed = suite.failed == 0;
    println!(
        "{}",
        serde_json::to_string_pretty(&json!({
            "field": field.spec_string(),
            "X": c.x,
            "checks": suite.checks,
            "failed": suite.failed,
            "all_passed": all_passed,
        }))
        .expect("serialize json")
    );
    Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
