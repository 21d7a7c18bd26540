//! Mellin transform of q -> m_q(f)/q: direct quadrature of the defining
//! integral, the closed form through the zeta ratio, vertical-line decay
//! profiles, and truncated Mellin inversion.
//!
//! The numeric route integrates int_0^{T*} m_q(f) q^{s-2} dq with
//! T* = support_hi^2. Splitting the sum defining m_q by norm class and
//! substituting u = q^{1/2} m turns each class into an integral of
//! f(u) u^{2s-1} over an interval clipped at u = q_min^{1/2} m, so the
//! whole transform is a suffix-summed family of short smooth segments;
//! the region below the table-limited q_min is handled analytically
//! through the limit measure. No part of this shares machinery with the
//! closed form (Hurwitz continuation plus Gamma factors), so agreement
//! of the two is a genuine identity check.

use crate::error::{Error, Result};
use crate::field::{FieldInvariants, FieldKind, NumberField};
use crate::measure::{m_limit, m_q, TestFunction};
use crate::sieve::{CoeffKind, CoeffTable};
use crate::special::beta;
use crate::zeta::{phi_ratio, xi_completed, ComplexValue};
use num::complex::Complex64;

/// How a Mellin value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MellinMethod {
    NumericIntegral,
    ClosedForm,
}

/// One evaluation of M_f(s).
#[derive(Debug, Clone, Copy)]
pub struct MellinPoint {
    pub s: Complex64,
    pub value: ComplexValue,
    pub method: MellinMethod,
}

// 4-point Gauss-Legendre on [-1, 1]; segments are short enough that this
// is effectively exact for the piecewise-smooth integrands here.
const GL4_X: [f64; 4] = [
    -0.861_136_311_594_052_6,
    -0.339_981_043_584_856_3,
    0.339_981_043_584_856_3,
    0.861_136_311_594_052_6,
];
const GL4_W: [f64; 4] = [
    0.347_854_845_137_453_85,
    0.652_145_154_862_546_1,
    0.652_145_154_862_546_1,
    0.347_854_845_137_453_85,
];

/// int_a^b f(u) u^{2s-1} du over one short segment.
fn segment_integral(f: &TestFunction, a: f64, b: f64, s: Complex64) -> Complex64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let p = 2.0 * s - 1.0;
    let mut acc = Complex64::new(0.0, 0.0);
    for (&x, &w) in GL4_X.iter().zip(&GL4_W) {
        let u = mid + half * x;
        acc += w * f.eval(u) * (p * u.ln()).exp();
    }
    half * acc
}

/// M_f(s) by quadrature of the defining integral, truncated below
/// q_min = (support_hi / X)^2 where the table runs out; the missing head
/// is m(f) q_min^{s-1}/(s-1) up to the decay of m_q(f) - m(f).
pub fn mellin_numeric(
    table: &CoeffTable,
    invariants: &FieldInvariants,
    f: &TestFunction,
    s: Complex64,
) -> Result<MellinPoint> {
    assert_eq!(table.kind, CoeffKind::TotientSum);
    if s.re < 1.1 {
        return Err(Error::Domain(format!(
            "numeric Mellin transform needs Re(s) >= 1.1, got {}",
            s.re
        )));
    }
    let hi = f.support_hi();
    let lo = f.support_lo();
    let x = table.bound;
    let required = (10.0 * hi).ceil() as u64;
    if x < required {
        return Err(Error::TableTooSmall { required, have: x });
    }
    let rq = hi / x as f64; // q_min^{1/2}
    let qmin = rq * rq;

    // norm classes whose support interval is uncut by the truncation
    let m_full = ((lo / rq).floor() as u64).min(x);
    let m_lo = m_full + 1;

    // suffix sums of short segments: partial(m) = int_{rq m}^{hi}
    let mut sum = Complex64::new(0.0, 0.0);
    let mut tail = Complex64::new(0.0, 0.0);
    for m in (m_lo..x).rev() {
        let a = rq * m as f64;
        let b = (rq * (m + 1) as f64).min(hi);
        tail += segment_integral(f, a, b, s);
        let w = table.get(m);
        if w != 0 {
            sum += w as f64 * (-2.0 * s * (m as f64).ln()).exp() * tail;
        }
    }
    if m_full >= 1 {
        let full = tail + segment_integral(f, lo, rq * m_lo as f64, s);
        for m in 1..=m_full {
            let w = table.get(m);
            if w != 0 {
                sum += w as f64 * (-2.0 * s * (m as f64).ln()).exp() * full;
            }
        }
    }

    let limit = m_limit(invariants, f);
    let head = limit * ((s - 1.0) * qmin.ln()).exp() / (s - 1.0);
    // the head replaces m_q by its limit; the neglected part decays at
    // least like q^{1/4} on every field in scope
    let head_err = 4.0 * limit.abs() * qmin.powf(s.re - 0.75) / (s.re - 0.75);
    let value = 2.0 * sum + head;
    Ok(MellinPoint {
        s,
        value: ComplexValue::new(value, head_err + 1e-12 * value.norm()),
        method: MellinMethod::NumericIntegral,
    })
}

/// int_0^infty f(u) u^{2s-1} du: exact for the indicator, the Beta
/// function for the polynomial bump, adaptive quadrature otherwise.
pub(crate) fn profile_integral(f: &TestFunction, s: Complex64) -> Complex64 {
    let p2 = 2.0 * s;
    match *f {
        TestFunction::Indicator { a, b } => {
            ((p2 * b.ln()).exp() - (p2 * a.ln()).exp()) / p2
        }
        TestFunction::PolyBump { r } => beta(Complex64::new(r as f64 + 1.0, 0.0), p2),
        TestFunction::SmoothBump { a, b } => {
            let g = |u: f64| f.eval(u) * ((p2 - 1.0) * u.ln()).exp();
            simpson_c(&g, a, b, 1e-12, 48)
        }
    }
}

/// M_f(s) = 2 (zeta_K(2s-1)/zeta_K(2s)) int_0^infty f(u) u^{2s-1} du.
pub fn mellin_closed(
    field: &NumberField,
    ideal_table: &CoeffTable,
    f: &TestFunction,
    s: Complex64,
) -> Result<MellinPoint> {
    let ratio = phi_ratio(field, ideal_table, s)?;
    let integral = profile_integral(f, s);
    let value = 2.0 * ratio.value * integral;
    let err = 2.0 * ratio.abs_err * integral.norm() + 1e-13 * value.norm();
    Ok(MellinPoint {
        s,
        value: ComplexValue::new(value, err),
        method: MellinMethod::ClosedForm,
    })
}

/// Vertical-line magnitude profile of M_f with a fitted log-log slope.
#[derive(Debug, Clone)]
pub struct DecayProfile {
    pub sigma: f64,
    /// (t, |M_f(sigma + it)|) for the points that evaluated cleanly.
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub skipped: usize,
}

/// |M_f(sigma + it)| over a t grid, with the least-squares slope of
/// log |M_f| against log t. Points where zeta_K(2s) is too small are
/// skipped and counted.
pub fn decay_profile(
    field: &NumberField,
    ideal_table: &CoeffTable,
    f: &TestFunction,
    sigma: f64,
    t_grid: &[f64],
) -> Result<DecayProfile> {
    if field.kind == FieldKind::Rational || field.is_quadratic() {
        // continuation available
    } else {
        return Err(Error::Domain(
            "decay profile needs the quadratic continuation".into(),
        ));
    }
    if !(0.6..=2.0).contains(&sigma) {
        return Err(Error::Domain(format!(
            "decay profile restricted to sigma in [0.6, 2], got {sigma}"
        )));
    }
    let mut points = Vec::with_capacity(t_grid.len());
    let mut skipped = 0usize;
    for &t in t_grid {
        assert!(t > 0.0);
        match mellin_closed(field, ideal_table, f, Complex64::new(sigma, t)) {
            Ok(p) => points.push((t, p.value.value.norm())),
            Err(Error::DivisionNearZero) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(_, m)| m > 0.0)
        .map(|&(t, m)| (t.ln(), m.ln()))
        .collect();
    if usable.len() < 2 {
        return Err(Error::InsufficientData);
    }
    let n = usable.len() as f64;
    let sx: f64 = usable.iter().map(|p| p.0).sum();
    let sy: f64 = usable.iter().map(|p| p.1).sum();
    let sxx: f64 = usable.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = usable.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    Ok(DecayProfile {
        sigma,
        points,
        slope,
        intercept,
        skipped,
    })
}

/// Result of reconstructing m_q(f) from the truncated inversion integral.
#[derive(Debug, Clone, Copy)]
pub struct InversionCheck {
    pub q: f64,
    pub reconstructed: f64,
    pub direct: f64,
    pub defect: f64,
    pub tail_estimate: f64,
}

/// m_q(f) = (1/2 pi i) int_{b-iT}^{b+iT} M_f(s) q^{1-s} ds, trapezoid in
/// t, using conjugate symmetry to fold onto t >= 0. The discarded tail
/// is estimated from the local decay of |M_f| near t = t_max and must
/// fit under `tol`.
pub fn inversion_check(
    field: &NumberField,
    ideal_table: &CoeffTable,
    phi_table: &CoeffTable,
    f: &TestFunction,
    q: f64,
    b: f64,
    t_max: f64,
    tol: f64,
) -> Result<InversionCheck> {
    if !(1.1..=2.0).contains(&b) {
        return Err(Error::Domain(format!(
            "inversion line must have b in (1.1, 2], got {b}"
        )));
    }
    match f.smoothness() {
        crate::measure::Smoothness::Infinite => {}
        crate::measure::Smoothness::Finite(l) if l >= 2 => {}
        _ => {
            return Err(Error::Domain(
                "inversion needs at least a C^2 test function".into(),
            ))
        }
    }
    let eval = |t: f64| -> Result<Complex64> {
        let s = Complex64::new(b, t);
        let m = mellin_closed(field, ideal_table, f, s)?;
        Ok(m.value.value * ((1.0 - s) * q.ln()).exp())
    };
    // tail from the decay of |M_f| between 0.8 t_max and t_max
    let m_hi = mellin_closed(field, ideal_table, f, Complex64::new(b, t_max))?
        .value
        .value
        .norm();
    let m_mid = mellin_closed(field, ideal_table, f, Complex64::new(b, 0.8 * t_max))?
        .value
        .value
        .norm();
    let local_slope = (m_hi / m_mid).ln() / (1.0f64 / 0.8).ln();
    let tail_estimate = if local_slope < -1.05 {
        q.powf(1.0 - b) * m_hi * t_max / (-local_slope - 1.0) / std::f64::consts::PI
    } else {
        f64::INFINITY
    };
    if !(tail_estimate <= tol) {
        return Err(Error::TailTooLarge {
            estimate: tail_estimate,
            tolerance: tol,
        });
    }
    // step resolving the q^{-it} oscillation and the transform itself
    let period = 2.0 * std::f64::consts::PI / (1.0 + q.ln().abs());
    let h = (period / 24.0).min(0.1);
    let n = (t_max / h).ceil() as usize;
    let h = t_max / n as f64;
    let mut acc = 0.5 * (eval(0.0)?.re + eval(t_max)?.re);
    for k in 1..n {
        acc += eval(k as f64 * h)?.re;
    }
    let reconstructed = acc * h / std::f64::consts::PI;
    let direct = m_q(phi_table, f, q)?;
    Ok(InversionCheck {
        q,
        reconstructed,
        direct,
        defect: (reconstructed - direct).abs(),
        tail_estimate,
    })
}

/// Completed transform M*(f, s) = xi_K(2s-1) int f(u) u^{2s-1} du, the
/// form satisfying M*(s) = M*(1-s) for quadratic fields.
pub fn m_star(field: &NumberField, f: &TestFunction, s: Complex64) -> Result<Complex64> {
    let xi = xi_completed(field, 2.0 * s - 1.0)?;
    Ok(xi * profile_integral(f, s))
}

/// Polynomial (Neville) extrapolation of (eps, value) samples to eps = 0.
pub fn extrapolate_to_zero(points: &[(f64, f64)]) -> f64 {
    assert!(!points.is_empty());
    let x: Vec<f64> = points.iter().map(|p| p.0).collect();
    let mut v: Vec<f64> = points.iter().map(|p| p.1).collect();
    for j in 1..v.len() {
        for i in (j..v.len()).rev() {
            v[i] = (x[i - j] * v[i] - x[i] * v[i - 1]) / (x[i - j] - x[i]);
        }
    }
    *v.last().unwrap()
}

fn simpson_c(g: &dyn Fn(f64) -> Complex64, a: f64, b: f64, tol: f64, depth: u32) -> Complex64 {
    let quick = |a: f64, m: f64, b: f64| (b - a) / 6.0 * (g(a) + 4.0 * g(m) + g(b));
    fn go(
        g: &dyn Fn(f64) -> Complex64,
        quick: &dyn Fn(f64, f64, f64) -> Complex64,
        a: f64,
        b: f64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let left = quick(a, 0.5 * (a + m), m);
        let right = quick(m, 0.5 * (m + b), b);
        let delta = left + right - whole;
        if depth == 0 || delta.norm() < 15.0 * tol {
            left + right + delta / 15.0
        } else {
            go(g, quick, a, m, left, tol / 2.0, depth - 1)
                + go(g, quick, m, b, right, tol / 2.0, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    let whole = quick(a, m, b);
    go(g, &quick, a, b, whole, tol, depth)
}
