//! Factorization shape of rational primes in O_K and enumeration of
//! prime-ideal norm classes up to a bound.

use crate::error::{Error, Result};
use crate::field::{FieldKind, NumberField};
use crate::poly::{distinct_degree_factorization, squarefree_decomposition, ModPoly};

/// One group of prime ideals above p sharing the same residue degree
/// and ramification index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitEntry {
    pub residue_degree: u32,
    pub ramification: u32,
    pub count: u32,
}

/// Factorization shape of a rational prime in O_K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSplit {
    pub p: u64,
    pub entries: Vec<SplitEntry>,
}

impl PrimeSplit {
    /// Sum of e*f over all primes above p; must equal the field degree.
    pub fn ef_sum(&self) -> u32 {
        self.entries
            .iter()
            .map(|e| e.count * e.ramification * e.residue_degree)
            .sum()
    }
}

/// Prime-ideal norms up to a bound, with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeIdealClassList {
    pub bound: u64,
    /// (norm = p^f, number of distinct prime ideals with that norm),
    /// sorted by norm.
    pub items: Vec<(u64, u32)>,
}

/// Kronecker symbol (a|n) for n >= 1.
pub fn kronecker(a: i64, n: u64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i32;
    // factor out 2s from n
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if r == 3 || r == 5 {
            result = -result;
        }
    }
    // now n odd; Jacobi symbol with reciprocity
    a = a.rem_euclid(n as i64);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        let tmp = a as u64;
        let new_a = (n % tmp) as i64;
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        n = tmp;
        a = new_a;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Quadratic character chi_D(m) attached to a fundamental discriminant.
pub fn chi_d(disc: i64, m: u64) -> i32 {
    kronecker(disc, m)
}

/// Factorization shape of p in O_K.
pub fn split_prime(field: &NumberField, p: u64) -> Result<PrimeSplit> {
    let entries = match &field.kind {
        FieldKind::Rational => vec![SplitEntry {
            residue_degree: 1,
            ramification: 1,
            count: 1,
        }],
        FieldKind::Quadratic { .. } => match chi_d(field.discriminant, p) {
            1 => vec![SplitEntry {
                residue_degree: 1,
                ramification: 1,
                count: 2,
            }],
            -1 => vec![SplitEntry {
                residue_degree: 2,
                ramification: 1,
                count: 1,
            }],
            _ => vec![SplitEntry {
                residue_degree: 1,
                ramification: 2,
                count: 1,
            }],
        },
        FieldKind::Monogenic { poly } => {
            let fp = poly.reduce_mod(p);
            if fp.degree() != poly.degree() {
                // monic, so this cannot happen
                return Err(Error::IndexDivisor(p));
            }
            let needs_check = fp.gcd(&fp.derivative()).degree() > 0;
            if needs_check && !dedekind_index_ok(poly, p) {
                return Err(Error::IndexDivisor(p));
            }
            let mut entries = Vec::new();
            for (g, e) in squarefree_decomposition(&fp) {
                for (d, count) in distinct_degree_factorization(&g) {
                    entries.push(SplitEntry {
                        residue_degree: d,
                        ramification: e,
                        count,
                    });
                }
            }
            entries.sort_by_key(|e| (e.residue_degree, e.ramification));
            merge_entries(entries)
        }
    };
    let split = PrimeSplit { p, entries };
    debug_assert_eq!(split.ef_sum(), field.degree, "sum e*f != n at p = {p}");
    Ok(split)
}

fn merge_entries(entries: Vec<SplitEntry>) -> Vec<SplitEntry> {
    let mut out: Vec<SplitEntry> = Vec::new();
    for e in entries {
        match out.last_mut() {
            Some(last)
                if last.residue_degree == e.residue_degree
                    && last.ramification == e.ramification =>
            {
                last.count += e.count
            }
            _ => out.push(e),
        }
    }
    out
}

/// Dedekind criterion: p does not divide the index [O_K : Z[theta]]
/// iff gcd(Fbar, gbar, hbar) = 1, where f = g*h + p*F with g a lift of
/// the radical of f mod p and h a lift of f/rad(f) mod p.
fn dedekind_index_ok(poly: &crate::poly::IntPoly, p: u64) -> bool {
    let fp = poly.reduce_mod(p);
    let mut radical = ModPoly::one(p);
    for (g, _) in squarefree_decomposition(&fp) {
        radical = radical.mul(&g);
    }
    let hbar = fp.div_exact(&radical);
    // integer lifts with coefficients in [0, p)
    let g_lift: Vec<i128> = radical.c.iter().map(|&c| c as i128).collect();
    let h_lift: Vec<i128> = hbar.c.iter().map(|&c| c as i128).collect();
    let mut prod = vec![0i128; g_lift.len() + h_lift.len() - 1];
    for (i, &a) in g_lift.iter().enumerate() {
        for (j, &b) in h_lift.iter().enumerate() {
            prod[i + j] += a * b;
        }
    }
    let mut big_f = vec![0i128; prod.len().max(poly.coeffs.len())];
    for (i, v) in big_f.iter_mut().enumerate() {
        let fp_coeff = poly.coeffs.get(i).copied().unwrap_or(0) as i128;
        let pr = prod.get(i).copied().unwrap_or(0);
        debug_assert_eq!((pr - fp_coeff).rem_euclid(p as i128), 0);
        *v = (pr - fp_coeff) / p as i128;
    }
    let fbar = ModPoly::new(
        p,
        big_f
            .iter()
            .map(|&c| c.rem_euclid(p as i128) as u64)
            .collect(),
    );
    let d = fbar.gcd(&radical).gcd(&hbar);
    d.degree() == 0
}

/// Simple prime sieve.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return vec![];
    }
    let n = n as usize;
    let mut is_p = vec![true; n + 1];
    is_p[0] = false;
    is_p[1] = false;
    let mut i = 2usize;
    while i * i <= n {
        if is_p[i] {
            let mut j = i * i;
            while j <= n {
                is_p[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&i| is_p[i]).map(|i| i as u64).collect()
}

/// Enumerate prime-ideal norms <= bound with multiplicities.
pub fn prime_ideals_up_to(field: &NumberField, bound: u64) -> Result<PrimeIdealClassList> {
    let mut items: Vec<(u64, u32)> = Vec::new();
    for p in primes_up_to(bound) {
        let split = split_prime(field, p)?;
        for entry in &split.entries {
            // norm p^f, overflow-safe
            let mut norm = 1u64;
            let mut ok = true;
            for _ in 0..entry.residue_degree {
                norm = match norm.checked_mul(p) {
                    Some(v) if v <= bound => v,
                    _ => {
                        ok = false;
                        break;
                    }
                };
            }
            if ok {
                items.push((norm, entry.count));
            }
        }
    }
    items.sort_unstable();
    // distinct (f, e) groups above the same p with equal norm share one slot
    let mut merged: Vec<(u64, u32)> = Vec::new();
    for (norm, count) in items {
        match merged.last_mut() {
            Some((n, c)) if *n == norm => *c += count,
            _ => merged.push((norm, count)),
        }
    }
    Ok(PrimeIdealClassList {
        bound,
        items: merged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian() -> NumberField {
        NumberField::quadratic(-1).unwrap()
    }

    #[test]
    fn kronecker_chi_minus4() {
        assert_eq!(chi_d(-4, 5), 1);
        assert_eq!(chi_d(-4, 2), 0);
        assert_eq!(chi_d(-4, 3), -1);
        assert_eq!(chi_d(-4, 1), 1);
    }

    #[test]
    fn kronecker_periodic_and_multiplicative() {
        for disc in [-4i64, -3, 5, 8, -8, 12] {
            let period = disc.unsigned_abs();
            for m in 1..200u64 {
                assert_eq!(chi_d(disc, m), chi_d(disc, m + period));
                for k in 1..20u64 {
                    assert_eq!(chi_d(disc, m * k), chi_d(disc, m) * chi_d(disc, k));
                }
            }
        }
    }

    #[test]
    fn gaussian_split_shapes() {
        let f = gaussian();
        let s5 = split_prime(&f, 5).unwrap();
        assert_eq!(
            s5.entries,
            vec![SplitEntry {
                residue_degree: 1,
                ramification: 1,
                count: 2
            }]
        );
        let s2 = split_prime(&f, 2).unwrap();
        assert_eq!(
            s2.entries,
            vec![SplitEntry {
                residue_degree: 1,
                ramification: 2,
                count: 1
            }]
        );
        let s3 = split_prime(&f, 3).unwrap();
        assert_eq!(s3.entries[0].residue_degree, 2);
    }

    #[test]
    fn cubic_split_at_5() {
        // x^3 - 2 mod 5 = (x - 3)(x^2 + 3x + 4)
        let f = NumberField::monogenic(&[1, 0, 0, -2]).unwrap();
        let s = split_prime(&f, 5).unwrap();
        assert_eq!(
            s.entries,
            vec![
                SplitEntry {
                    residue_degree: 1,
                    ramification: 1,
                    count: 1
                },
                SplitEntry {
                    residue_degree: 2,
                    ramification: 1,
                    count: 1
                },
            ]
        );
    }

    #[test]
    fn quadratic_and_monogenic_agree() {
        let quad = gaussian();
        let mono = NumberField::monogenic(&[1, 0, 1]).unwrap();
        for p in primes_up_to(1000) {
            let a = split_prime(&quad, p).unwrap();
            let b = split_prime(&mono, p).unwrap();
            assert_eq!(a.entries, b.entries, "disagree at p = {p}");
        }
    }

    #[test]
    fn ef_sum_matches_degree() {
        let fields = [
            gaussian(),
            NumberField::quadratic(5).unwrap(),
            NumberField::monogenic(&[1, 0, 0, -2]).unwrap(),
            NumberField::monogenic(&[1, 0, 0, 0, -2]).unwrap(),
        ];
        for f in &fields {
            for p in primes_up_to(500) {
                let s = split_prime(f, p).unwrap();
                assert_eq!(s.ef_sum(), f.degree, "{f} at p = {p}");
            }
        }
    }

    #[test]
    fn gaussian_norms_up_to_10() {
        let list = prime_ideals_up_to(&gaussian(), 10).unwrap();
        assert_eq!(list.items, vec![(2, 1), (5, 2), (9, 1)]);
    }

    #[test]
    fn rational_norms() {
        let list = prime_ideals_up_to(&NumberField::rational(), 10).unwrap();
        assert_eq!(list.items, vec![(2, 1), (3, 1), (5, 1), (7, 1)]);
    }

    #[test]
    fn empty_below_two() {
        let list = prime_ideals_up_to(&gaussian(), 1).unwrap();
        assert!(list.items.is_empty());
    }
}
