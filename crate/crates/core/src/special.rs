//! Scalar special functions: complex gamma (Lanczos), real digamma, and
//! Hurwitz zeta by Euler-Maclaurin summation. All heuristically
//! error-tracked, not ball arithmetic.

use num::complex::Complex64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Bernoulli numbers B_2, B_4, ..., B_28.
pub const BERNOULLI_EVEN: [f64; 14] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
];

/// Complex gamma function, Lanczos approximation with reflection for
/// Re(z) < 1/2. Relative accuracy around 1e-13 for moderate |z|.
pub fn gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi = std::f64::consts::PI;
        pi / ((pi * z).sin() * gamma(Complex64::new(1.0, 0.0) - z))
    } else {
        let z = z - 1.0;
        let mut x = Complex64::new(LANCZOS[0], 0.0);
        for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
            x += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        (2.0 * std::f64::consts::PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
    }
}

/// Real digamma function for x > 0, by upward recurrence into the
/// asymptotic regime.
pub fn digamma(mut x: f64) -> f64 {
    assert!(x > 0.0);
    let mut acc = 0.0;
    while x < 15.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut series = 0.0;
    let mut pw = inv2;
    for (j, &b) in BERNOULLI_EVEN.iter().take(7).enumerate() {
        series += b / (2.0 * (j as f64 + 1.0)) * pw;
        pw *= inv2;
    }
    acc + x.ln() - 0.5 / x - series
}

/// Hurwitz zeta zeta(s, a) for a in (0, 1], s != 1, by Euler-Maclaurin.
/// Valid well left of Re(s) = 1; returns (value, heuristic abs error).
pub fn hurwitz_zeta(s: Complex64, a: f64) -> (Complex64, f64) {
    debug_assert!(a > 0.0 && a <= 1.0);
    let t = s.im.abs();
    let n = (0.55 * t).ceil().max(25.0) as usize;
    let mut sum = Complex64::new(0.0, 0.0);
    // compensated accumulation; terms span many magnitudes for large t
    let mut comp = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let base = a + k as f64;
        let term = (-s * base.ln()).exp();
        let y = term - comp;
        let t_new = sum + y;
        comp = (t_new - sum) - y;
        sum = t_new;
    }
    let big = a + n as f64;
    let tail_main = (-(s - 1.0) * big.ln()).exp() / (s - 1.0);
    let tail_half = 0.5 * (-s * big.ln()).exp();
    let inv2 = big.powi(-2);
    let mut poch = s; // (s)_{2j-1} built incrementally
    let mut pw = (-(s + 1.0) * big.ln()).exp();
    let mut fact = 2.0; // (2j)!
    let mut correction = Complex64::new(0.0, 0.0);
    let mut last_mag = 0.0;
    for (j, &b2j) in BERNOULLI_EVEN.iter().enumerate() {
        let term = b2j / fact * poch * pw;
        correction += term;
        last_mag = term.norm();
        // advance to j+1: poch *= (s+2j-1)(s+2j), pw *= big^-2, fact *= (2j+1)(2j+2)
        let two_j = 2.0 * (j as f64 + 1.0);
        poch *= (s + (two_j - 1.0)) * (s + two_j);
        pw *= inv2;
        fact *= (two_j + 1.0) * (two_j + 2.0);
    }
    let value = sum + tail_main + tail_half + correction;
    let err = 2.0 * last_mag + 1e-15 * (n as f64) * sum.norm();
    (value, err)
}

/// Principal log-gamma, Lanczos in log form with log-space reflection;
/// stays finite where gamma itself under- or overflows.
pub fn log_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let pi = std::f64::consts::PI;
        Complex64::new(pi.ln(), 0.0) - log_sin_pi(z) - log_gamma(Complex64::new(1.0, 0.0) - z)
    } else {
        let z = z - 1.0;
        let mut x = Complex64::new(LANCZOS[0], 0.0);
        for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
            x += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
    }
}

/// log sin(pi z) without overflow for large |Im z| (branch cuts are
/// irrelevant to callers that exponentiate).
fn log_sin_pi(z: Complex64) -> Complex64 {
    let pi = std::f64::consts::PI;
    let i = Complex64::new(0.0, 1.0);
    if z.im >= 0.0 {
        -i * pi * z + (1.0 - (2.0 * i * pi * z).exp()).ln() - 2.0f64.ln() + i * pi / 2.0
    } else {
        i * pi * z + (1.0 - (-2.0 * i * pi * z).exp()).ln() - 2.0f64.ln() - i * pi / 2.0
    }
}

/// Beta function B(x, y), evaluated in log space so that strongly
/// decaying regions (large imaginary parts) stay representable.
pub fn beta(x: Complex64, y: Complex64) -> Complex64 {
    (log_gamma(x) + log_gamma(y) - log_gamma(x + y)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_known_values() {
        assert_relative_eq!(gamma(4.0.into()).re, 6.0, max_relative = 1e-12);
        assert_relative_eq!(
            gamma(0.5.into()).re,
            std::f64::consts::PI.sqrt(),
            max_relative = 1e-12
        );
        // Gamma(1+i) reference value
        let g = gamma(Complex64::new(1.0, 1.0));
        assert_relative_eq!(g.re, 0.498_015_668_118_356_24, max_relative = 1e-10);
        assert_relative_eq!(g.im, -0.154_949_828_301_810_68, max_relative = 1e-10);
    }

    #[test]
    fn gamma_reflection() {
        let z = Complex64::new(-0.75, 2.0);
        let lhs = gamma(z) * gamma(1.0 - z);
        let rhs = std::f64::consts::PI / (std::f64::consts::PI * z).sin();
        assert_relative_eq!(lhs.re, rhs.re, max_relative = 1e-10);
        assert_relative_eq!(lhs.im, rhs.im, max_relative = 1e-10);
    }

    #[test]
    fn digamma_values() {
        // psi(1) = -gamma_E
        assert_relative_eq!(digamma(1.0), -0.577_215_664_901_532_9, max_relative = 1e-12);
        // psi(3/4) - psi(1/4) = pi
        assert_relative_eq!(
            digamma(0.75) - digamma(0.25),
            std::f64::consts::PI,
            max_relative = 1e-12
        );
    }

    #[test]
    fn hurwitz_matches_riemann_zeta() {
        // zeta(2) = pi^2/6
        let (v, e) = hurwitz_zeta(Complex64::new(2.0, 0.0), 1.0);
        assert!((v.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12 + e);
        // zeta(3) (Apery)
        let (v, _) = hurwitz_zeta(Complex64::new(3.0, 0.0), 1.0);
        assert_relative_eq!(v.re, 1.202_056_903_159_594_2, max_relative = 1e-12);
        // zeta(-1) = -1/12 via the continuation
        let (v, _) = hurwitz_zeta(Complex64::new(-1.0, 0.0), 1.0);
        assert_relative_eq!(v.re, -1.0 / 12.0, max_relative = 1e-9);
    }

    #[test]
    fn hurwitz_on_critical_line() {
        // zeta(1/2 + 14.134725i) is near the first zero: modulus small
        let (v, _) = hurwitz_zeta(Complex64::new(0.5, 14.134_725_141_734_693), 1.0);
        assert!(v.norm() < 1e-6, "|zeta(rho_1)| = {}", v.norm());
    }

    #[test]
    fn log_gamma_consistent_with_gamma() {
        for z in [
            Complex64::new(3.2, 1.0),
            Complex64::new(0.25, -2.0),
            Complex64::new(-1.3, 0.7),
        ] {
            let direct = gamma(z);
            let via_log = log_gamma(z).exp();
            assert!((direct - via_log).norm() < 1e-10 * direct.norm(), "{z}");
        }
    }

    #[test]
    fn beta_survives_large_imaginary_argument() {
        // B(a, z) ~ Gamma(a) z^{-a} for |z| large; direct Gamma quotients
        // underflow here
        let a = Complex64::new(3.0, 0.0);
        let z = Complex64::new(3.0, 400.0);
        let b = beta(a, z);
        let asymptotic = 2.0 * (-a * z.ln()).exp();
        assert!(b.norm().is_finite() && b.norm() > 0.0);
        assert!((b - asymptotic).norm() < 0.05 * asymptotic.norm());
    }

    #[test]
    fn beta_integer_values() {
        // B(3, 3) = 1/30
        let b = beta(3.0.into(), 3.0.into());
        assert_relative_eq!(b.re, 1.0 / 30.0, max_relative = 1e-12);
    }
}
