//! Evaluation of the Dedekind zeta function, its residue at s = 1, the
//! ratio zeta_K(2s-1)/zeta_K(2s), vertical-line growth probes, and the
//! completed-zeta symmetry check.
//!
//! General fields are evaluated by truncated Dirichlet series on
//! Re(s) > 1; quadratic fields get the full strip through the
//! factorization zeta_K = zeta * L(., chi_D), each factor computed by
//! Euler-Maclaurin Hurwitz sums.

use crate::error::{Error, Result};
use crate::field::{FieldInvariants, FieldKind, KappaMethod, NumberField};
use crate::sieve::{summatory, CoeffKind, CoeffTable};
use crate::special::{digamma, gamma, hurwitz_zeta};
use crate::splitting::chi_d;
use num::complex::Complex64;

/// A complex evaluation with a best-effort absolute error bound.
#[derive(Debug, Clone, Copy)]
pub struct ComplexValue {
    pub value: Complex64,
    pub abs_err: f64,
}

impl ComplexValue {
    pub fn new(value: Complex64, abs_err: f64) -> ComplexValue {
        assert!(abs_err.is_finite() && abs_err >= 0.0);
        ComplexValue { value, abs_err }
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn im(&self) -> f64 {
        self.value.im
    }
}

/// Riemann zeta by Euler-Maclaurin, valid off s = 1.
pub fn riemann_zeta(s: Complex64) -> ComplexValue {
    let (v, e) = hurwitz_zeta(s, 1.0);
    ComplexValue::new(v, e)
}

/// Dirichlet L-function L(s, chi_D) through Hurwitz zeta values at the
/// rationals a/|D|. Entire for non-principal chi_D.
pub fn l_function(disc: i64, s: Complex64) -> ComplexValue {
    let q = disc.unsigned_abs();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for a in 1..=q {
        let ch = chi_d(disc, a);
        if ch == 0 {
            continue;
        }
        let (v, e) = hurwitz_zeta(s, a as f64 / q as f64);
        acc += ch as f64 * v;
        err += e;
    }
    let scale = (-s * (q as f64).ln()).exp();
    ComplexValue::new(scale * acc, err * scale.norm())
}

/// Truncated Dirichlet series for zeta_K(s) with an N(x) ~ kappa x tail
/// bound. Requires Re(s) comfortably right of 1.
pub fn zeta_series(table: &CoeffTable, s: Complex64) -> Result<ComplexValue> {
    assert_eq!(table.kind, CoeffKind::IdealCount);
    let sigma = s.re;
    if sigma <= 1.01 {
        return Err(Error::Domain(format!(
            "zeta series needs Re(s) > 1.01, got {sigma}; use the quadratic continuation"
        )));
    }
    let x = table.bound;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for m in 1..=x {
        let a = table.get(m);
        if a == 0 {
            continue;
        }
        let term = a as f64 * (-s * (m as f64).ln()).exp();
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    // rough residue estimate for the tail: N(X)/X
    let kappa_rough = summatory(table, x)? as f64 / x as f64;
    let tail = kappa_rough * (x as f64).powf(1.0 - sigma) * sigma / (sigma - 1.0);
    Ok(ComplexValue::new(sum, tail.abs()))
}

/// zeta_K(s) for quadratic fields (and the rational baseline) via the
/// character factorization, valid in the strip and beyond, s != 1.
pub fn zeta_quadratic(field: &NumberField, s: Complex64) -> Result<ComplexValue> {
    if (s - Complex64::new(1.0, 0.0)).norm() < 1e-9 {
        return Err(Error::PoleAt1);
    }
    match field.kind {
        FieldKind::Rational => Ok(riemann_zeta(s)),
        FieldKind::Quadratic { .. } => {
            let z = riemann_zeta(s);
            let l = l_function(field.discriminant, s);
            let value = z.value * l.value;
            let err = z.abs_err * l.value.norm() + l.abs_err * z.value.norm();
            Ok(ComplexValue::new(value, err))
        }
        FieldKind::Monogenic { .. } => Err(Error::Domain(
            "analytic continuation implemented for quadratic fields only".into(),
        )),
    }
}

/// Best available evaluation of zeta_K(s): continuation when the field
/// supports it, truncated series otherwise.
pub fn zeta_any(field: &NumberField, table: &CoeffTable, s: Complex64) -> Result<ComplexValue> {
    match field.kind {
        FieldKind::Monogenic { .. } => zeta_series(table, s),
        _ => zeta_quadratic(field, s),
    }
}

/// Residue kappa of zeta_K at s = 1, never through h*R/omega.
pub fn residue_kappa(field: &NumberField, table: &CoeffTable) -> (f64, KappaMethod, f64) {
    assert_eq!(table.kind, CoeffKind::IdealCount);
    match field.kind {
        FieldKind::Rational => (1.0, KappaMethod::ExactCharacterSeries, 0.0),
        FieldKind::Quadratic { .. } => {
            // kappa = L(1, chi_D) = -(1/q) sum chi(a) psi(a/q)
            let disc = field.discriminant;
            let q = disc.unsigned_abs();
            let mut acc = 0.0;
            for a in 1..q {
                let ch = chi_d(disc, a);
                if ch != 0 {
                    acc += ch as f64 * digamma(a as f64 / q as f64);
                }
            }
            (-acc / q as f64, KappaMethod::ExactCharacterSeries, 1e-12)
        }
        FieldKind::Monogenic { .. } => {
            let (kappa, err) = kappa_regression(table);
            (kappa, KappaMethod::RegressionEstimate, err)
        }
    }
}

/// Least-squares slope through the origin of N(x) over x in [X/10, X],
/// with the worst relative residual as its error bar.
pub fn kappa_regression(table: &CoeffTable) -> (f64, f64) {
    assert_eq!(table.kind, CoeffKind::IdealCount);
    let x_max = table.bound;
    let x_min = (x_max / 10).max(1);
    let points = 64u64;
    let mut xs = Vec::with_capacity(points as usize);
    for i in 0..points {
        xs.push(x_min + (x_max - x_min) * i / (points - 1));
    }
    xs.dedup();
    // single pass prefix sums at the sample points
    let mut acc = 0i128;
    let mut samples = Vec::with_capacity(xs.len());
    let mut iter = xs.iter().peekable();
    for m in 1..=x_max {
        acc += table.get(m);
        while iter.peek() == Some(&&m) {
            iter.next();
            samples.push((m as f64, acc as f64));
        }
    }
    let sxy: f64 = samples.iter().map(|&(x, y)| x * y).sum();
    let sxx: f64 = samples.iter().map(|&(x, _)| x * x).sum();
    let kappa = sxy / sxx;
    let err = samples
        .iter()
        .map(|&(x, y)| ((y - kappa * x) / x).abs())
        .fold(0.0f64, f64::max);
    (kappa, err)
}

/// zeta_K(2) with a truncation error bound.
pub fn zeta_k2(field: &NumberField, table: &CoeffTable) -> (f64, f64) {
    match field.kind {
        FieldKind::Rational => (std::f64::consts::PI.powi(2) / 6.0, 1e-14),
        FieldKind::Quadratic { .. } => {
            let v = zeta_quadratic(field, Complex64::new(2.0, 0.0)).expect("2 is not the pole");
            (v.re(), v.abs_err + 1e-13)
        }
        FieldKind::Monogenic { .. } => {
            let v = zeta_series(table, Complex64::new(2.0, 0.0)).expect("Re(2) > 1.01");
            (v.re(), v.abs_err)
        }
    }
}

/// Compute the analytic constants of a field from its ideal-count table.
pub fn compute_invariants(field: &NumberField, table: &CoeffTable) -> FieldInvariants {
    let (kappa, method, kappa_err) = residue_kappa(field, table);
    let (z2, z2_err) = zeta_k2(field, table);
    FieldInvariants::new(kappa, method, kappa_err, z2, z2_err)
}

/// The ratio zeta_K(2s-1)/zeta_K(2s) governing the Mellin transform.
pub fn phi_ratio(field: &NumberField, table: &CoeffTable, s: Complex64) -> Result<ComplexValue> {
    let s2 = 2.0 * s;
    let num_arg = s2 - 1.0;
    let (num, den) = match field.kind {
        FieldKind::Monogenic { .. } => {
            if s.re <= 1.005 {
                return Err(Error::Domain(
                    "series route for the zeta ratio needs Re(s) > 1".into(),
                ));
            }
            (zeta_series(table, num_arg)?, zeta_series(table, s2)?)
        }
        _ => {
            if num_arg.re <= 0.0 {
                return Err(Error::Domain(
                    "continuation route needs Re(2s-1) > 0".into(),
                ));
            }
            (
                zeta_quadratic(field, num_arg)?,
                zeta_quadratic(field, s2)?,
            )
        }
    };
    if den.value.norm() < 10.0 * den.abs_err {
        return Err(Error::DivisionNearZero);
    }
    let value = num.value / den.value;
    let err = (num.abs_err + den.abs_err * value.norm()) / den.value.norm();
    Ok(ComplexValue::new(value, err))
}

/// Fitted vertical-line growth exponent.
#[derive(Debug, Clone)]
pub struct NuFit {
    pub sigma: f64,
    pub nu_hat: f64,
    pub intercept: f64,
    pub n_samples: usize,
}

/// Empirical Phragmen-Lindelof exponent: 95th-quantile fit of
/// log|zeta_K(sigma+it)| against log t over a log-spaced grid
/// t in [2, t_max].
pub fn lindelof_probe(
    field: &NumberField,
    sigma: f64,
    t_max: f64,
    samples: usize,
) -> Result<NuFit> {
    if !field.is_quadratic() && field.kind != FieldKind::Rational {
        return Err(Error::Domain(
            "growth probe needs the quadratic continuation".into(),
        ));
    }
    let samples = samples.max(16);
    let lo = 2.0f64.ln();
    let hi = t_max.ln();
    let mut xs = Vec::with_capacity(samples);
    let mut ys = Vec::with_capacity(samples);
    for i in 0..samples {
        let lt = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
        let t = lt.exp();
        let z = zeta_quadratic(field, Complex64::new(sigma, t))?;
        let m = z.value.norm();
        if m > 0.0 {
            xs.push(lt);
            ys.push(m.ln());
        }
    }
    let (slope, intercept) = quantile_line_fit(&xs, &ys, 0.95);
    Ok(NuFit {
        sigma,
        nu_hat: slope,
        intercept,
        n_samples: xs.len(),
    })
}

/// Fit y ~ a x + b minimizing the tau-pinball loss; the intercept is
/// profiled out as the tau-quantile of residuals, the slope found by
/// golden-section search (the profiled loss is convex).
fn quantile_line_fit(xs: &[f64], ys: &[f64], tau: f64) -> (f64, f64) {
    let intercept_for = |slope: f64| -> f64 {
        let mut r: Vec<f64> = xs.iter().zip(ys).map(|(&x, &y)| y - slope * x).collect();
        r.sort_by(|a, b| a.total_cmp(b));
        let idx = ((r.len() - 1) as f64 * tau).round() as usize;
        r[idx]
    };
    let loss = |slope: f64| -> f64 {
        let b = intercept_for(slope);
        xs.iter()
            .zip(ys)
            .map(|(&x, &y)| {
                let u = y - slope * x - b;
                if u >= 0.0 {
                    tau * u
                } else {
                    (tau - 1.0) * u
                }
            })
            .sum()
    };
    let mut a = -2.0;
    let mut b = 4.0;
    let gr = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut c = b - gr * (b - a);
    let mut d = a + gr * (b - a);
    for _ in 0..80 {
        if loss(c) < loss(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - gr * (b - a);
        d = a + gr * (b - a);
    }
    let slope = 0.5 * (a + b);
    (slope, intercept_for(slope))
}

/// Completed zeta factor Lambda(s) = 2^{-r2 s} |D|^{s/2} pi^{-ns/2}
/// Gamma(s/2)^{r1} Gamma(s)^{r2}.
fn completed_factor(field: &NumberField, s: Complex64) -> Complex64 {
    let (r1, r2) = field.signature;
    let n = field.degree as f64;
    let d_abs = field.discriminant.unsigned_abs() as f64;
    let two_pow = (-(r2 as f64) * s * 2.0f64.ln()).exp();
    let d_pow = (s * 0.5 * d_abs.ln()).exp();
    let pi_pow = (-(n * 0.5) * s * std::f64::consts::PI.ln()).exp();
    let mut g = Complex64::new(1.0, 0.0);
    for _ in 0..r1 {
        g *= gamma(s / 2.0);
    }
    for _ in 0..r2 {
        g *= gamma(s);
    }
    two_pow * d_pow * pi_pow * g
}

/// Completed zeta xi_K(s) = Lambda(s) zeta_K(s) for quadratic fields.
pub fn xi_completed(field: &NumberField, s: Complex64) -> Result<Complex64> {
    let z = zeta_quadratic(field, s)?;
    Ok(completed_factor(field, s) * z.value)
}

/// Relative defect |xi_K(s) - xi_K(1-s)| / max(|xi_K(s)|, |xi_K(1-s)|).
pub fn functional_equation_check(field: &NumberField, s: Complex64) -> Result<f64> {
    if !field.is_quadratic() {
        return Err(Error::Domain(
            "functional-equation check needs the quadratic continuation".into(),
        ));
    }
    let one = Complex64::new(1.0, 0.0);
    for point in [s, one - s] {
        if point.norm() < 1e-3 || (point - one).norm() < 1e-3 {
            return Err(Error::PoleProximity);
        }
    }
    let a = xi_completed(field, s)?;
    let b = xi_completed(field, one - s)?;
    Ok((a - b).norm() / a.norm().max(b.norm()))
}
