//! Number field presentations and their exact invariants.

use crate::error::{Error, Result};
use crate::poly::{count_real_roots, discriminant, IntPoly};
use num::bigint::BigInt;
use num::ToPrimitive;
use std::fmt;

/// How a field is presented to the rest of the system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldKind {
    /// Degree-1 baseline; the classical Mertens 3/pi^2 oracle lives here.
    Rational,
    /// Q(sqrt(d)) for squarefree d not in {0, 1}.
    Quadratic { d: i64 },
    /// Q[x]/(poly) for a monic irreducible integer polynomial.
    Monogenic { poly: IntPoly },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    pub kind: FieldKind,
    pub degree: u32,
    /// (real embeddings, conjugate pairs of complex embeddings)
    pub signature: (u32, u32),
    pub discriminant: i64,
    /// Set when disc(poly) is not squarefree, so the index
    /// [O_K : Z[theta]] may exceed 1 and splitting at bad primes needs
    /// the Dedekind check.
    pub disc_not_squarefree: bool,
}

impl NumberField {
    pub fn rational() -> NumberField {
        NumberField {
            kind: FieldKind::Rational,
            degree: 1,
            signature: (1, 0),
            discriminant: 1,
            disc_not_squarefree: false,
        }
    }

    pub fn quadratic(d: i64) -> Result<NumberField> {
        if d == 0 || d == 1 {
            return Err(Error::DisallowedValue(d));
        }
        if !is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        let signature = if d > 0 { (2, 0) } else { (0, 1) };
        let field = NumberField {
            kind: FieldKind::Quadratic { d },
            degree: 2,
            signature,
            discriminant: disc,
            disc_not_squarefree: false,
        };
        field.check_signature();
        Ok(field)
    }

    /// Monic irreducible polynomial, coefficients highest degree first.
    pub fn monogenic(coeffs_desc: &[i64]) -> Result<NumberField> {
        let poly = IntPoly::from_desc(coeffs_desc);
        if poly.is_zero() || !poly.is_monic() {
            return Err(Error::NotMonic);
        }
        let n = poly.degree();
        if n < 2 {
            return Err(Error::DegreeTooSmall);
        }
        check_irreducible(&poly)?;
        let disc_big = discriminant(&poly);
        let disc = disc_big
            .to_i64()
            .ok_or_else(|| Error::Domain("polynomial discriminant exceeds i64".into()))?;
        let r1 = count_real_roots(&poly);
        let r2 = (n as u32 - r1) / 2;
        let field = NumberField {
            kind: FieldKind::Monogenic { poly },
            degree: n as u32,
            signature: (r1, r2),
            discriminant: disc,
            disc_not_squarefree: !bigint_squarefree(&disc_big),
        };
        field.check_signature();
        Ok(field)
    }

    fn check_signature(&self) {
        assert_eq!(
            self.degree,
            self.signature.0 + 2 * self.signature.1,
            "n = r1 + 2 r2 violated"
        );
    }

    /// Parse a field spec string: "rat", "quad:-1", "poly:1,0,0,-2".
    /// Whitespace anywhere is rejected.
    pub fn parse_spec(spec: &str) -> Result<NumberField> {
        if spec.chars().any(|c| c.is_whitespace()) {
            return Err(Error::BadFieldSpec(spec.into()));
        }
        if spec == "rat" {
            return Ok(NumberField::rational());
        }
        if let Some(rest) = spec.strip_prefix("quad:") {
            let d: i64 = rest
                .parse()
                .map_err(|_| Error::BadFieldSpec(spec.into()))?;
            return NumberField::quadratic(d);
        }
        if let Some(rest) = spec.strip_prefix("poly:") {
            let coeffs: std::result::Result<Vec<i64>, _> =
                rest.split(',').map(|t| t.parse::<i64>()).collect();
            let coeffs = coeffs.map_err(|_| Error::BadFieldSpec(spec.into()))?;
            return NumberField::monogenic(&coeffs);
        }
        Err(Error::BadFieldSpec(spec.into()))
    }

    pub fn spec_string(&self) -> String {
        match &self.kind {
            FieldKind::Rational => "rat".into(),
            FieldKind::Quadratic { d } => format!("quad:{d}"),
            FieldKind::Monogenic { poly } => {
                let parts: Vec<String> =
                    poly.desc_coeffs().iter().map(|c| c.to_string()).collect();
                format!("poly:{}", parts.join(","))
            }
        }
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(self.kind, FieldKind::Quadratic { .. })
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (n={}, sig=({},{}), D={})",
            self.spec_string(),
            self.degree,
            self.signature.0,
            self.signature.1,
            self.discriminant
        )
    }
}

/// How the zeta residue kappa was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KappaMethod {
    /// L(1, chi_D) summed exactly through the character/digamma series.
    ExactCharacterSeries,
    /// Least-squares slope of the ideal-count summatory N(x) ~ kappa x.
    RegressionEstimate,
}

/// Analytic constants of a field, computed once and shared.
#[derive(Debug, Clone)]
pub struct FieldInvariants {
    pub kappa: f64,
    pub kappa_method: KappaMethod,
    pub kappa_error: f64,
    pub zeta_k2: f64,
    pub zeta_k2_error: f64,
    /// kappa / (2 zeta_K(2)), the coefficient of x^2 in the summatory
    /// totient asymptotic.
    pub mertens_constant: f64,
}

impl FieldInvariants {
    pub fn new(
        kappa: f64,
        kappa_method: KappaMethod,
        kappa_error: f64,
        zeta_k2: f64,
        zeta_k2_error: f64,
    ) -> FieldInvariants {
        assert!(kappa > 0.0, "kappa must be positive");
        assert!(zeta_k2 > 1.0, "zeta_K(2) must exceed 1");
        FieldInvariants {
            kappa,
            kappa_method,
            kappa_error,
            zeta_k2,
            zeta_k2_error,
            mertens_constant: kappa / (2.0 * zeta_k2),
        }
    }

    /// Density of the limit measure: kappa / zeta_K(2).
    pub fn limit_density(&self) -> f64 {
        self.kappa / self.zeta_k2
    }
}

fn is_squarefree(d: i64) -> bool {
    let mut m = d.unsigned_abs();
    let mut f = 2u64;
    while f * f <= m {
        if m % f == 0 {
            m /= f;
            if m % f == 0 {
                return false;
            }
        }
        f += 1;
    }
    true
}

fn bigint_squarefree(v: &BigInt) -> bool {
    // Used only to flag a possible index > 1; discriminants here fit i64.
    match v.to_i64() {
        Some(x) => is_squarefree(x),
        None => false,
    }
}

/// Irreducibility over Q: rational-root test, then factorization degree
/// patterns modulo several primes. Accepts only on a sound witness
/// (irreducible image mod p, or degree patterns that rule out every
/// proper factor degree); otherwise rejects as undecided.
fn check_irreducible(poly: &IntPoly) -> Result<()> {
    let n = poly.degree();
    // rational roots divide the constant term (monic)
    let c0 = poly.coeffs[0];
    if c0 == 0 {
        return Err(Error::Reducible("x divides the polynomial".into()));
    }
    let mut r = 1i64;
    while r * r <= c0.abs() {
        if c0 % r == 0 {
            for root in [r, -r, c0 / r, -c0 / r] {
                if poly.eval_i128(root as i128) == 0 {
                    return Err(Error::Reducible(format!("rational root {root}")));
                }
            }
        }
        r += 1;
    }
    // degree patterns mod 5 good primes
    let mut possible: u64 = (1 << (n + 1)) - 1; // bitmask of achievable factor degrees
    let mut used = 0;
    let mut p = 3u64;
    while used < 5 {
        let fp = poly.reduce_mod(p);
        if fp.degree() == n && fp.gcd(&fp.derivative()).degree() == 0 {
            used += 1;
            let degs = crate::poly::distinct_degree_factorization(&fp);
            if degs.len() == 1 && degs[0] == (n as u32, 1) {
                return Ok(());
            }
            // subset sums of the factor degrees achievable mod p
            let mut sums: u64 = 1;
            for &(d, count) in &degs {
                for _ in 0..count {
                    sums |= sums << d;
                }
            }
            possible &= sums;
        }
        p += 2;
        while !is_prime_small(p) {
            p += 2;
        }
        if p > 10_000 {
            break;
        }
    }
    // a proper factor would have degree in 1..n achievable mod every prime
    let proper_mask = ((1u64 << n) - 2) & possible;
    if proper_mask == 0 {
        return Ok(());
    }
    Err(Error::UndecidedIrreducibility)
}

fn is_prime_small(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= p {
        if p % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_gaussian() {
        let f = NumberField::quadratic(-1).unwrap();
        assert_eq!(f.discriminant, -4);
        assert_eq!(f.signature, (0, 1));
        assert_eq!(f.degree, 2);
    }

    #[test]
    fn quadratic_real() {
        let f = NumberField::quadratic(5).unwrap();
        assert_eq!(f.discriminant, 5);
        assert_eq!(f.signature, (2, 0));
    }

    #[test]
    fn quadratic_rejects_non_squarefree() {
        assert!(matches!(
            NumberField::quadratic(12),
            Err(Error::NotSquarefree(12))
        ));
        assert!(matches!(
            NumberField::quadratic(0),
            Err(Error::DisallowedValue(0))
        ));
        assert!(matches!(
            NumberField::quadratic(1),
            Err(Error::DisallowedValue(1))
        ));
    }

    #[test]
    fn monogenic_cubic() {
        // x^3 - 2
        let f = NumberField::monogenic(&[1, 0, 0, -2]).unwrap();
        assert_eq!(f.degree, 3);
        assert_eq!(f.signature, (1, 1));
        assert_eq!(f.discriminant, -108);
    }

    #[test]
    fn monogenic_matches_quadratic() {
        let a = NumberField::monogenic(&[1, 0, 1]).unwrap();
        let b = NumberField::quadratic(-1).unwrap();
        assert_eq!(a.degree, b.degree);
        assert_eq!(a.signature, b.signature);
        assert_eq!(a.discriminant, b.discriminant);
    }

    #[test]
    fn monogenic_rejects_reducible() {
        assert!(matches!(
            NumberField::monogenic(&[1, 0, -1]),
            Err(Error::Reducible(_))
        ));
        assert!(matches!(
            NumberField::monogenic(&[2, 0, 1]),
            Err(Error::NotMonic)
        ));
    }

    #[test]
    fn spec_round_trip() {
        for s in ["rat", "quad:-1", "quad:5", "poly:1,0,0,-2"] {
            let f = NumberField::parse_spec(s).unwrap();
            assert_eq!(f.spec_string(), s);
        }
        assert!(NumberField::parse_spec("quad: -1").is_err());
        assert!(NumberField::parse_spec("cubic:3").is_err());
    }
}
