//! The discrete measures m_q(f), their limit m(f), error curves, and
//! decay-exponent estimation.
//!
//! m_q(f) = sum over ideals of q * phi_K(n) * f(q^{1/2} N(n)), evaluated
//! at norm level: q * sum_m S_phi(m) f(q^{1/2} m). The limit measure is
//! kappa/zeta_K(2) * q dq.

use crate::error::{Error, Result};
use crate::field::FieldInvariants;
use crate::sieve::{CoeffKind, CoeffTable};

/// Test function families the measures are evaluated against.
#[derive(Debug, Clone, PartialEq)]
pub enum TestFunction {
    /// Characteristic function of [a, b], 0 < a < b.
    Indicator { a: f64, b: f64 },
    /// F_r(t) = (1-t)^r on (0, 1], zero beyond; C^{r-1} at t = 1.
    PolyBump { r: u32 },
    /// exp(-1/((t-a)(b-t))) on (a, b), zero outside; C^infinity.
    SmoothBump { a: f64, b: f64 },
}

/// Declared smoothness class of a test function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    /// Not even continuous.
    None,
    /// C^l for the given l.
    Finite(u32),
    /// C^infinity.
    Infinite,
}

impl TestFunction {
    pub fn indicator(a: f64, b: f64) -> Result<TestFunction> {
        if !(0.0 < a && a < b) {
            return Err(Error::Domain(format!(
                "indicator needs 0 < a < b, got ({a}, {b})"
            )));
        }
        Ok(TestFunction::Indicator { a, b })
    }

    pub fn poly_bump(r: u32) -> Result<TestFunction> {
        if r < 1 {
            return Err(Error::Domain("poly bump needs r >= 1".into()));
        }
        Ok(TestFunction::PolyBump { r })
    }

    pub fn smooth_bump(a: f64, b: f64) -> Result<TestFunction> {
        if !(0.0 < a && a < b) {
            return Err(Error::Domain(format!(
                "smooth bump needs 0 < a < b, got ({a}, {b})"
            )));
        }
        Ok(TestFunction::SmoothBump { a, b })
    }

    /// Parse a CLI spec: "indicator:1,2", "polybump:2", "smoothbump:1,2".
    pub fn parse_spec(spec: &str) -> Result<TestFunction> {
        let bad = || Error::Domain(format!("bad test-function spec {spec:?}"));
        let (name, args) = spec.split_once(':').ok_or_else(bad)?;
        match name {
            "indicator" | "smoothbump" => {
                let (a, b) = args.split_once(',').ok_or_else(bad)?;
                let a: f64 = a.parse().map_err(|_| bad())?;
                let b: f64 = b.parse().map_err(|_| bad())?;
                if name == "indicator" {
                    TestFunction::indicator(a, b)
                } else {
                    TestFunction::smooth_bump(a, b)
                }
            }
            "polybump" => TestFunction::poly_bump(args.parse().map_err(|_| bad())?),
            _ => Err(bad()),
        }
    }

    pub fn spec_string(&self) -> String {
        match self {
            TestFunction::Indicator { a, b } => format!("indicator:{a},{b}"),
            TestFunction::PolyBump { r } => format!("polybump:{r}"),
            TestFunction::SmoothBump { a, b } => format!("smoothbump:{a},{b}"),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            TestFunction::Indicator { a, b } => {
                if t >= a && t <= b {
                    1.0
                } else {
                    0.0
                }
            }
            TestFunction::PolyBump { r } => {
                if t > 0.0 && t <= 1.0 {
                    (1.0 - t).powi(r as i32)
                } else {
                    0.0
                }
            }
            TestFunction::SmoothBump { a, b } => {
                if t > a && t < b {
                    (-1.0 / ((t - a) * (b - t))).exp()
                } else {
                    0.0
                }
            }
        }
    }

    /// f(t) = 0 for all t beyond this point.
    pub fn support_hi(&self) -> f64 {
        match *self {
            TestFunction::Indicator { b, .. } => b,
            TestFunction::PolyBump { .. } => 1.0,
            TestFunction::SmoothBump { b, .. } => b,
        }
    }

    /// f(t) = 0 for all t below this point (0 when the support touches 0).
    pub fn support_lo(&self) -> f64 {
        match *self {
            TestFunction::Indicator { a, .. } => a,
            TestFunction::PolyBump { .. } => 0.0,
            TestFunction::SmoothBump { a, .. } => a,
        }
    }

    pub fn smoothness(&self) -> Smoothness {
        match *self {
            TestFunction::Indicator { .. } => Smoothness::None,
            TestFunction::PolyBump { r } => Smoothness::Finite(r - 1),
            TestFunction::SmoothBump { .. } => Smoothness::Infinite,
        }
    }
}

/// Table bound required to evaluate m_q at this q: the largest norm with
/// q^{1/2} m inside the support.
pub fn required_bound(f: &TestFunction, q: f64) -> u64 {
    (f.support_hi() / q.sqrt()).floor() as u64
}

/// Limit measure m(f) = kappa/zeta_K(2) * integral of f(q) q dq.
pub fn m_limit(invariants: &FieldInvariants, f: &TestFunction) -> f64 {
    let density = invariants.limit_density();
    let integral = match *f {
        TestFunction::Indicator { a, b } => (b * b - a * a) / 2.0,
        // int_0^1 (1-t)^r t dt = B(r+1, 2) = 1/((r+1)(r+2))
        TestFunction::PolyBump { r } => 1.0 / ((r as f64 + 1.0) * (r as f64 + 2.0)),
        TestFunction::SmoothBump { a, b } => {
            adaptive_simpson(&|t| f.eval(t) * t, a, b, 1e-12, 40)
        }
    };
    density * integral
}

/// m_q(f) as a finite compensated sum over the totient table.
pub fn m_q(table: &CoeffTable, f: &TestFunction, q: f64) -> Result<f64> {
    assert_eq!(table.kind, CoeffKind::TotientSum);
    assert!(q > 0.0);
    let m_max = required_bound(f, q);
    if m_max > table.bound {
        return Err(Error::TableTooSmall {
            required: m_max,
            have: table.bound,
        });
    }
    let rq = q.sqrt();
    let m_lo = ((f.support_lo() / rq).floor() as u64).max(1);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for m in m_lo..=m_max {
        let w = table.get(m);
        if w == 0 {
            continue;
        }
        let term = w as f64 * f.eval(rq * m as f64);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    Ok(q * sum)
}

/// One (q, m_q, m, error) record.
#[derive(Debug, Clone, Copy)]
pub struct MeasureSample {
    pub q: f64,
    pub m_q: f64,
    pub m_limit: f64,
    pub error: f64,
}

/// Geometric grid of q values, descending from 10^hi to 10^lo.
pub fn geometric_grid(lo_decade: f64, hi_decade: f64, points_per_decade: u32) -> Vec<f64> {
    assert!(hi_decade > lo_decade && points_per_decade >= 1);
    let total = ((hi_decade - lo_decade) * points_per_decade as f64).round() as usize + 1;
    (0..total)
        .map(|i| {
            let e = hi_decade - (hi_decade - lo_decade) * i as f64 / (total - 1) as f64;
            10f64.powf(e)
        })
        .collect()
}

/// Error curve over a q grid, sorted by decreasing q.
pub fn error_curve(
    table: &CoeffTable,
    invariants: &FieldInvariants,
    f: &TestFunction,
    q_grid: &[f64],
) -> Result<Vec<MeasureSample>> {
    let limit = m_limit(invariants, f);
    let mut qs: Vec<f64> = q_grid.to_vec();
    qs.sort_by(|a, b| b.total_cmp(a));
    qs.iter()
        .map(|&q| {
            let v = m_q(table, f, q)?;
            Ok(MeasureSample {
                q,
                m_q: v,
                m_limit: limit,
                error: v - limit,
            })
        })
        .collect()
}

/// Fitted decay exponent of |error| ~ C q^alpha.
#[derive(Debug, Clone, Copy)]
pub struct ExponentFit {
    pub alpha_hat: f64,
    pub stderr: f64,
    pub q_range: (f64, f64),
    pub n_points: usize,
}

/// Least-squares slope of log|error| against log q, dropping samples at
/// the float noise floor.
pub fn exponent_fit(samples: &[MeasureSample]) -> Result<ExponentFit> {
    let floor = samples
        .first()
        .map(|s| 1e-13 * s.m_limit.abs())
        .unwrap_or(0.0);
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.error.abs() > floor && s.error != 0.0)
        .map(|s| (s.q.ln(), s.error.abs().ln()))
        .collect();
    if pts.len() < 8 {
        return Err(Error::InsufficientData);
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let ss_res: f64 = pts
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
        .sum();
    let stderr = (ss_res / (n - 2.0) / (sxx - sx * sx / n)).sqrt();
    let q_min = samples.iter().map(|s| s.q).fold(f64::INFINITY, f64::min);
    let q_max = samples.iter().map(|s| s.q).fold(0.0f64, f64::max);
    Ok(ExponentFit {
        alpha_hat: slope,
        stderr,
        q_range: (q_min, q_max),
        n_points: pts.len(),
    })
}

/// Running maxima of q^{-alpha} |error| over shrinking-q prefixes.
#[derive(Debug, Clone)]
pub struct ScanCurve {
    pub alpha: f64,
    /// Paired with the (descending) q of the input samples.
    pub running_max: Vec<f64>,
}

/// For each alpha, the running max of q^{-alpha}|E_f(q)| as q decreases;
/// growth indicates the exponent is past critical.
pub fn critical_exponent_scan(samples: &[MeasureSample], alphas: &[f64]) -> Vec<ScanCurve> {
    alphas
        .iter()
        .map(|&alpha| {
            let mut running = Vec::with_capacity(samples.len());
            let mut best = 0.0f64;
            for s in samples {
                best = best.max(s.q.powf(-alpha) * s.error.abs());
                running.push(best);
            }
            ScanCurve {
                alpha,
                running_max: running,
            }
        })
        .collect()
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let simpson = |a: f64, m: f64, b: f64| (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
    let whole = simpson(a, m, b);
    rec(f, a, b, whole, tol, depth, &simpson)
}

fn rec(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    simpson: &dyn Fn(f64, f64, f64) -> f64,
) -> f64 {
    let m = 0.5 * (a + b);
    let left = simpson(a, 0.5 * (a + m), m);
    let right = simpson(m, 0.5 * (m + b), b);
    if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
        left + right + (left + right - whole) / 15.0
    } else {
        rec(f, a, m, left, tol / 2.0, depth - 1, simpson)
            + rec(f, m, b, right, tol / 2.0, depth - 1, simpson)
    }
}
