//! Norm-indexed coefficient tables for the Dirichlet series of zeta_K,
//! 1/zeta_K, and zeta_K(s-1)/zeta_K(s), with their summatory functions.
//!
//! Tables are built by an Euler-product sieve: start from the delta
//! coefficient at norm 1 and, for each prime-ideal norm class, apply the
//! local Dirichlet factor in place. Coefficients are exact integers;
//! arithmetic is checked in 64 bits with an automatic 128-bit retry.

use crate::error::{Error, Result};
use crate::field::{FieldInvariants, NumberField};
use crate::splitting::{chi_d, prime_ideals_up_to, PrimeIdealClassList};

/// Which Dirichlet series the table holds, aggregated at norm level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffKind {
    /// a_K(m): number of integral ideals of norm m.
    IdealCount,
    /// S_phi(m): sum of phi_K over ideals of norm m.
    TotientSum,
    /// S_mu(m): sum of mu_K over ideals of norm m.
    MoebiusSum,
}

impl CoeffKind {
    pub const ALL: [CoeffKind; 3] = [
        CoeffKind::IdealCount,
        CoeffKind::TotientSum,
        CoeffKind::MoebiusSum,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            CoeffKind::IdealCount => "ideal_count",
            CoeffKind::TotientSum => "totient_sum",
            CoeffKind::MoebiusSum => "moebius_sum",
        }
    }
}

/// Coefficient storage; widened to 128 bits only when 64 bits overflow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffValues {
    I64(Vec<i64>),
    I128(Vec<i128>),
}

impl CoeffValues {
    pub fn len(&self) -> usize {
        match self {
            CoeffValues::I64(v) => v.len(),
            CoeffValues::I128(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn width_bytes(&self) -> u8 {
        match self {
            CoeffValues::I64(_) => 8,
            CoeffValues::I128(_) => 16,
        }
    }
}

/// Exact Dirichlet coefficients of one series for one field, indexed by
/// norm 1..=bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    pub field_spec: String,
    pub bound: u64,
    pub kind: CoeffKind,
    values: CoeffValues,
}

impl CoeffTable {
    pub fn get(&self, m: u64) -> i128 {
        debug_assert!(m >= 1 && m <= self.bound);
        match &self.values {
            CoeffValues::I64(v) => v[m as usize - 1] as i128,
            CoeffValues::I128(v) => v[m as usize - 1],
        }
    }

    pub fn values(&self) -> &CoeffValues {
        &self.values
    }

    pub(crate) fn from_parts(
        field_spec: String,
        bound: u64,
        kind: CoeffKind,
        values: CoeffValues,
    ) -> CoeffTable {
        assert_eq!(values.len() as u64, bound);
        CoeffTable {
            field_spec,
            bound,
            kind,
            values,
        }
    }
}

/// Local Dirichlet factor of one prime-ideal norm class, as the list of
/// (norm^k, coefficient) pairs with norm^k <= bound, k >= 1.
fn local_terms(kind: CoeffKind, norm: u64, bound: u64) -> Vec<(u64, i64)> {
    let mut terms = Vec::new();
    let mut nk = norm;
    loop {
        let coeff = match kind {
            CoeffKind::IdealCount => 1,
            CoeffKind::TotientSum => (nk - nk / norm) as i64,
            CoeffKind::MoebiusSum => {
                if nk == norm {
                    -1
                } else {
                    0
                }
            }
        };
        if coeff != 0 {
            terms.push((nk, coeff));
        }
        match nk.checked_mul(norm) {
            Some(v) if v <= bound => nk = v,
            _ => break,
        }
    }
    terms
}

fn sieve_i64(classes: &PrimeIdealClassList, kind: CoeffKind, bound: u64) -> Option<Vec<i64>> {
    let n = bound as usize;
    let mut a = vec![0i64; n];
    a[0] = 1;
    for &(norm, count) in &classes.items {
        let terms = local_terms(kind, norm, bound);
        for _ in 0..count {
            // descending in-place Dirichlet convolution: positions m/norm^k
            // still hold pre-update values when m is visited
            let mut m = (bound / norm) * norm;
            while m >= norm {
                let mut acc = a[m as usize - 1];
                for &(e, c) in &terms {
                    if e > m {
                        break;
                    }
                    if m % e == 0 {
                        acc = acc.checked_add(c.checked_mul(a[(m / e) as usize - 1])?)?;
                    }
                }
                a[m as usize - 1] = acc;
                m -= norm;
            }
        }
    }
    Some(a)
}

fn sieve_i128(classes: &PrimeIdealClassList, kind: CoeffKind, bound: u64) -> Result<Vec<i128>> {
    let n = bound as usize;
    let mut a = vec![0i128; n];
    a[0] = 1;
    for &(norm, count) in &classes.items {
        let terms = local_terms(kind, norm, bound);
        for _ in 0..count {
            let mut m = (bound / norm) * norm;
            while m >= norm {
                let mut acc = a[m as usize - 1];
                for &(e, c) in &terms {
                    if e > m {
                        break;
                    }
                    if m % e == 0 {
                        acc = acc
                            .checked_add(
                                (c as i128)
                                    .checked_mul(a[(m / e) as usize - 1])
                                    .ok_or(Error::Overflow)?,
                            )
                            .ok_or(Error::Overflow)?;
                    }
                }
                a[m as usize - 1] = acc;
                m -= norm;
            }
        }
    }
    Ok(a)
}

/// Build the coefficient table for one series up to bound X.
pub fn build_table(field: &NumberField, bound: u64, kind: CoeffKind) -> Result<CoeffTable> {
    if bound < 1 {
        return Err(Error::Domain("table bound must be >= 1".into()));
    }
    let classes = prime_ideals_up_to(field, bound)?;
    let values = match sieve_i64(&classes, kind, bound) {
        Some(v) => CoeffValues::I64(v),
        None => CoeffValues::I128(sieve_i128(&classes, kind, bound)?),
    };
    Ok(CoeffTable::from_parts(
        field.spec_string(),
        bound,
        kind,
        values,
    ))
}

/// Build all three tables for one field.
pub fn build_all_tables(field: &NumberField, bound: u64) -> Result<[CoeffTable; 3]> {
    Ok([
        build_table(field, bound, CoeffKind::IdealCount)?,
        build_table(field, bound, CoeffKind::TotientSum)?,
        build_table(field, bound, CoeffKind::MoebiusSum)?,
    ])
}

/// Prefix sum of the table through x.
pub fn summatory(table: &CoeffTable, x: u64) -> Result<i128> {
    if x < 1 || x > table.bound {
        return Err(Error::OutOfRange {
            x,
            bound: table.bound,
        });
    }
    let mut acc = 0i128;
    for m in 1..=x {
        acc += table.get(m);
    }
    Ok(acc)
}

/// Summatory value alongside the Mertens main term and its error.
#[derive(Debug, Clone)]
pub struct SummatoryResult {
    pub x: u64,
    pub value: i128,
    pub main_term: f64,
    pub error: f64,
    /// error / x^{2 - 1/n}, the unconditional-trend normalization.
    pub normalized_error: f64,
    /// error / x^{3/2}, the Lindelof-conditional trend normalization.
    pub normalized_error_lindelof: f64,
    /// error / x^{3/2 - 1/(2n)}, the circle-problem trend normalization.
    pub normalized_error_circle: f64,
}

/// Mertens report: totient summatory vs kappa/(2 zeta_K(2)) x^2 at each
/// requested x, with trend normalizations.
pub fn mertens_report(
    table: &CoeffTable,
    field: &NumberField,
    invariants: &FieldInvariants,
    xs: &[u64],
) -> Result<Vec<SummatoryResult>> {
    assert_eq!(table.kind, CoeffKind::TotientSum);
    let n = field.degree as f64;
    let mut sorted: Vec<u64> = xs.to_vec();
    sorted.sort_unstable();
    for &x in &sorted {
        if x < 1 || x > table.bound {
            return Err(Error::OutOfRange {
                x,
                bound: table.bound,
            });
        }
    }
    // one pass over the table, emitting at each requested x
    let mut out = Vec::with_capacity(sorted.len());
    let mut acc = 0i128;
    let mut next = sorted.iter().peekable();
    for m in 1..=table.bound {
        acc += table.get(m);
        while next.peek() == Some(&&m) {
            next.next();
            let xf = m as f64;
            let main = invariants.mertens_constant * xf * xf;
            let error = acc as f64 - main;
            out.push(SummatoryResult {
                x: m,
                value: acc,
                main_term: main,
                error,
                normalized_error: error / xf.powf(2.0 - 1.0 / n),
                normalized_error_lindelof: error / xf.powf(1.5),
                normalized_error_circle: error / xf.powf(1.5 - 1.0 / (2.0 * n)),
            });
        }
        if next.peek().is_none() {
            break;
        }
    }
    // restore caller order
    let mut by_x: std::collections::HashMap<u64, SummatoryResult> =
        out.into_iter().map(|r| (r.x, r)).collect();
    Ok(xs.iter().map(|x| by_x.remove(x).unwrap()).collect())
}

/// Independent oracle for quadratic fields: a_K(m) = sum_{d|m} chi_D(d),
/// by trial division.
pub fn oracle_quadratic_count(disc: i64, m: u64) -> i64 {
    let mut total = 0i64;
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            total += chi_d(disc, d) as i64;
            let other = m / d;
            if other != d {
                total += chi_d(disc, other) as i64;
            }
        }
        d += 1;
    }
    total
}

/// Independent oracle for Q(i): ideals of norm <= x correspond to
/// nonzero Gaussian integers up to units, so count lattice points with
/// 0 < a^2 + b^2 <= x and divide by 4.
pub fn oracle_gaussian_count(x: u64) -> i128 {
    let r = (x as f64).sqrt() as i64 + 2;
    let mut count = 0i128;
    for a in -r..=r {
        let aa = (a * a) as u64;
        if aa > x {
            continue;
        }
        let rem = x - aa;
        let mut b_hi = (rem as f64).sqrt() as i64;
        while ((b_hi + 1) * (b_hi + 1)) as u64 <= rem {
            b_hi += 1;
        }
        while b_hi >= 0 && (b_hi * b_hi) as u64 > rem {
            b_hi -= 1;
        }
        count += (2 * b_hi + 1) as i128;
    }
    (count - 1) / 4 // drop the origin, then quotient by the unit group
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;

    fn gaussian_tables(x: u64) -> [CoeffTable; 3] {
        build_all_tables(&NumberField::quadratic(-1).unwrap(), x).unwrap()
    }

    #[test]
    fn delta_at_one() {
        let [a, s, mu] = gaussian_tables(50);
        assert_eq!(a.get(1), 1);
        assert_eq!(s.get(1), 1);
        assert_eq!(mu.get(1), 1);
    }

    #[test]
    fn gaussian_examples() {
        let [a, s, _] = gaussian_tables(30);
        assert_eq!(a.get(25), 3);
        assert_eq!(s.get(9), 8);
        assert_eq!(a.get(5), 2);
        assert_eq!(a.get(3), 0);
    }

    #[test]
    fn gaussian_summatory_small() {
        let [a, _, _] = gaussian_tables(10);
        assert_eq!(summatory(&a, 1).unwrap(), 1);
        assert_eq!(summatory(&a, 5).unwrap(), 5);
    }

    #[test]
    fn rational_totient_summatory() {
        let field = NumberField::rational();
        let t = build_table(&field, 10, CoeffKind::TotientSum).unwrap();
        assert_eq!(summatory(&t, 10).unwrap(), 32);
    }

    #[test]
    fn quadratic_oracle_agrees() {
        let x = 2000;
        let [a, _, _] = gaussian_tables(x);
        for m in 1..=x {
            assert_eq!(a.get(m), oracle_quadratic_count(-4, m) as i128, "m = {m}");
        }
    }

    #[test]
    fn gaussian_lattice_oracle() {
        let x = 500;
        let [a, _, _] = gaussian_tables(x);
        let mut acc = 0i128;
        for m in 1..=x {
            acc += a.get(m);
            assert_eq!(acc, oracle_gaussian_count(m), "x = {m}");
        }
    }

    #[test]
    fn gaussian_lattice_oracle_examples() {
        assert_eq!(oracle_gaussian_count(1), 1);
        assert_eq!(oracle_gaussian_count(2), 2);
        assert_eq!(oracle_gaussian_count(4), 3);
    }

    #[test]
    fn convolution_identities() {
        let x = 500;
        for field in [
            NumberField::quadratic(-1).unwrap(),
            NumberField::quadratic(5).unwrap(),
            NumberField::monogenic(&[1, 0, 0, -2]).unwrap(),
        ] {
            let [a, s_phi, s_mu] = build_all_tables(&field, x).unwrap();
            for m in 1..=x {
                let mut mobius_conv = 0i128;
                let mut totient_conv = 0i128;
                let mut d = 1u64;
                while d <= m {
                    if m % d == 0 {
                        mobius_conv += s_mu.get(d) * a.get(m / d);
                        totient_conv += s_mu.get(d) * (m / d) as i128 * a.get(m / d);
                    }
                    d += 1;
                }
                assert_eq!(mobius_conv, if m == 1 { 1 } else { 0 }, "{field} m={m}");
                assert_eq!(totient_conv, s_phi.get(m), "{field} m={m}");
            }
        }
    }

    #[test]
    fn totient_bound() {
        let [a, s, _] = gaussian_tables(300);
        for m in 1..=300u64 {
            assert!(s.get(m) >= 0);
            assert!(s.get(m) <= m as i128 * a.get(m));
        }
    }

    #[test]
    fn out_of_range() {
        let [a, _, _] = gaussian_tables(10);
        assert!(matches!(
            summatory(&a, 11),
            Err(Error::OutOfRange { x: 11, bound: 10 })
        ));
    }
}
