//! Exact integer polynomial arithmetic and polynomials over F_p.
//!
//! Integer polynomials back the field presentations (discriminants via
//! resultants, real-root counts via Sturm chains); the mod-p side drives
//! prime splitting (distinct-degree factorization, squarefree
//! decomposition, Dedekind index test).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Dense integer polynomial, coefficients in ascending degree order.
/// The zero polynomial is the empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    pub coeffs: Vec<i64>,
}

impl IntPoly {
    /// Build from coefficients listed highest degree first, trimming
    /// leading zeros.
    pub fn from_desc(coeffs: &[i64]) -> Self {
        let mut asc: Vec<i64> = coeffs.iter().rev().copied().collect();
        while asc.last() == Some(&0) {
            asc.pop();
        }
        IntPoly { coeffs: asc }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> i64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn derivative(&self) -> IntPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * i as i64)
            .collect();
        IntPoly { coeffs }
    }

    /// Coefficients highest degree first, as used in field specs.
    pub fn desc_coeffs(&self) -> Vec<i64> {
        self.coeffs.iter().rev().copied().collect()
    }

    pub fn eval_i128(&self, x: i128) -> i128 {
        let mut acc = 0i128;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c as i128;
        }
        acc
    }

    /// Reduction mod p (coefficients mapped to [0, p)).
    pub fn reduce_mod(&self, p: u64) -> ModPoly {
        let c = self
            .coeffs
            .iter()
            .map(|&a| a.rem_euclid(p as i64) as u64)
            .collect();
        ModPoly::new(p, c)
    }
}

/// Exact resultant Res(f, g) over Z via Bareiss fraction-free elimination
/// of the Sylvester matrix.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let n = f.degree();
    let m = g.degree();
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    if n == 0 {
        return BigInt::from(f.coeffs[0]).pow(m as u32);
    }
    if m == 0 {
        return BigInt::from(g.coeffs[0]).pow(n as u32);
    }
    let size = n + m;
    let mut a = vec![vec![BigInt::zero(); size]; size];
    for row in 0..m {
        for (k, &c) in f.coeffs.iter().rev().enumerate() {
            a[row][row + k] = BigInt::from(c);
        }
    }
    for row in 0..n {
        for (k, &c) in g.coeffs.iter().rev().enumerate() {
            a[m + row][row + k] = BigInt::from(c);
        }
    }
    // Bareiss with partial pivoting by row swaps; sign tracked.
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..size - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..size).find(|&r| !a[r][k].is_zero());
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let val = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = val;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[size - 1][size - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Discriminant of a monic integer polynomial:
/// disc(f) = (-1)^{n(n-1)/2} Res(f, f').
pub fn discriminant(f: &IntPoly) -> BigInt {
    debug_assert!(f.is_monic());
    let n = f.degree();
    let res = resultant(f, &f.derivative());
    if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}

fn rat_poly(f: &IntPoly) -> Vec<BigRational> {
    f.coeffs
        .iter()
        .map(|&c| BigRational::from(BigInt::from(c)))
        .collect()
}

fn rat_trim(p: &mut Vec<BigRational>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

/// Remainder of a by b over Q (b nonzero).
fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r: Vec<BigRational> = a.to_vec();
    rat_trim(&mut r);
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let q = r.last().unwrap() / &lb;
        for j in 0..=db {
            let t = &q * &b[j];
            r[dr - db + j] = &r[dr - db + j] - t;
        }
        rat_trim(&mut r);
        if r.is_empty() {
            break;
        }
        if r.len() > dr {
            // guard; cannot happen with exact arithmetic
            break;
        }
    }
    r
}

fn sign_at_plus_inf(p: &[BigRational]) -> i32 {
    match p.last() {
        None => 0,
        Some(c) => {
            if c.is_positive() {
                1
            } else {
                -1
            }
        }
    }
}

fn sign_at_minus_inf(p: &[BigRational]) -> i32 {
    let s = sign_at_plus_inf(p);
    if (p.len() - 1) % 2 == 1 {
        -s
    } else {
        s
    }
}

fn sign_changes(signs: &[i32]) -> u32 {
    let mut count = 0;
    let mut last = 0;
    for &s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of a squarefree integer polynomial,
/// by the Sturm chain evaluated at -inf and +inf.
pub fn count_real_roots(f: &IntPoly) -> u32 {
    if f.degree() == 0 {
        return 0;
    }
    let mut chain: Vec<Vec<BigRational>> = Vec::new();
    chain.push(rat_poly(f));
    chain.push(rat_poly(&f.derivative()));
    loop {
        let k = chain.len();
        if chain[k - 1].is_empty() {
            chain.pop();
            break;
        }
        if chain[k - 1].len() == 1 {
            break;
        }
        let r = rat_rem(&chain[k - 2], &chain[k - 1]);
        let neg: Vec<BigRational> = r.iter().map(|c| -c.clone()).collect();
        if neg.is_empty() {
            break;
        }
        chain.push(neg);
    }
    let lo: Vec<i32> = chain.iter().map(|p| sign_at_minus_inf(p)).collect();
    let hi: Vec<i32> = chain.iter().map(|p| sign_at_plus_inf(p)).collect();
    sign_changes(&lo) - sign_changes(&hi)
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod_u64(a, p - 2, p)
}

/// Dense polynomial over F_p, coefficients ascending, normalized
/// (no leading zeros).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { p, c }
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        ModPoly { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        ModPoly { p, c: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lead = *self.c.last().unwrap();
        if lead == 1 {
            return self.clone();
        }
        let inv = invmod(lead, self.p);
        let c = self.c.iter().map(|&a| mulmod(a, inv, self.p)).collect();
        ModPoly::new(self.p, c)
    }

    pub fn mul(&self, other: &ModPoly) -> ModPoly {
        if self.is_zero() || other.is_zero() {
            return ModPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, p)) % p;
            }
        }
        ModPoly::new(p, out)
    }

    pub fn sub(&self, other: &ModPoly) -> ModPoly {
        let p = self.p;
        let n = self.c.len().max(other.c.len());
        let mut out = vec![0u64; n];
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = other.c.get(i).copied().unwrap_or(0);
            out[i] = (a + p - b) % p;
        }
        ModPoly::new(p, out)
    }

    pub fn rem(&self, m: &ModPoly) -> ModPoly {
        let p = self.p;
        let dm = m.degree();
        let lead_inv = invmod(*m.c.last().unwrap(), p);
        let mut r = self.c.clone();
        while r.len() > dm && !r.is_empty() {
            let dr = r.len() - 1;
            let q = mulmod(*r.last().unwrap(), lead_inv, p);
            if q != 0 {
                for j in 0..=dm {
                    let t = mulmod(q, m.c[j], p);
                    r[dr - dm + j] = (r[dr - dm + j] + p - t) % p;
                }
            }
            while r.last() == Some(&0) {
                r.pop();
            }
            if r.len() <= dm {
                break;
            }
        }
        ModPoly::new(p, r)
    }

    pub fn div_exact(&self, d: &ModPoly) -> ModPoly {
        // exact quotient; caller guarantees divisibility
        let p = self.p;
        let dd = d.degree();
        let lead_inv = invmod(*d.c.last().unwrap(), p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; self.c.len().saturating_sub(dd)];
        while r.len() > dd {
            let dr = r.len() - 1;
            let qc = mulmod(*r.last().unwrap(), lead_inv, p);
            q[dr - dd] = qc;
            if qc != 0 {
                for j in 0..=dd {
                    let t = mulmod(qc, d.c[j], p);
                    r[dr - dd + j] = (r[dr - dd + j] + p - t) % p;
                }
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        ModPoly::new(p, q)
    }

    pub fn gcd(&self, other: &ModPoly) -> ModPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> ModPoly {
        let p = self.p;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mulmod(a, (i as u64) % p, p))
            .collect();
        ModPoly::new(p, c)
    }

    /// x^e mod self, by repeated squaring.
    pub fn pow_x_mod(&self, e: u64) -> ModPoly {
        let mut acc = ModPoly::one(self.p);
        let mut base = ModPoly::x(self.p).rem(self);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(self);
            }
            base = base.mul(&base).rem(self);
            e >>= 1;
        }
        acc
    }

    pub fn pow_mod(&self, base: &ModPoly, e: u64) -> ModPoly {
        let mut acc = ModPoly::one(self.p);
        let mut b = base.rem(self);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(self);
            }
            b = b.mul(&b).rem(self);
            e >>= 1;
        }
        acc
    }

    /// p-th root of a polynomial in x^p (every exponent divisible by p).
    /// Over F_p the coefficient map a -> a^{1/p} is the identity.
    fn pth_root(&self) -> ModPoly {
        let p = self.p as usize;
        let c = self.c.iter().step_by(p).copied().collect();
        ModPoly::new(self.p, c)
    }
}

/// Squarefree decomposition over F_p: returns pairs (g, e) with g monic
/// squarefree, pairwise coprime, and self = lead * prod g^e.
pub fn squarefree_decomposition(f: &ModPoly) -> Vec<(ModPoly, u32)> {
    let mut out = Vec::new();
    sqf_rec(&f.monic(), 1, &mut out);
    out.sort_by_key(|(g, e)| (*e, g.degree()));
    out
}

fn sqf_rec(f: &ModPoly, mult: u32, out: &mut Vec<(ModPoly, u32)>) {
    if f.degree() == 0 {
        return;
    }
    let d = f.derivative();
    if d.is_zero() {
        // f = g(x^p), so f = (pth_root)^p
        sqf_rec(&f.pth_root().monic(), mult * f.p as u32, out);
        return;
    }
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c).monic();
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).monic();
        if z.degree() > 0 {
            out.push((z, mult * i));
        }
        c = c.div_exact(&y).monic();
        w = y;
        i += 1;
    }
    if c.degree() > 0 {
        // leftover is a p-th power
        sqf_rec(&c.pth_root().monic(), mult * f.p as u32, out);
    }
}

/// Distinct-degree factorization of a squarefree monic polynomial over
/// F_p: returns (degree d, number of irreducible factors of degree d).
pub fn distinct_degree_factorization(f: &ModPoly) -> Vec<(u32, u32)> {
    let p = f.p;
    let mut f = f.monic();
    let mut out = Vec::new();
    let mut h = ModPoly::x(p).rem(&f);
    let mut d = 0u32;
    while f.degree() >= 2 * (d as usize + 1) {
        d += 1;
        h = f.pow_mod(&h, p);
        let g = h.sub(&ModPoly::x(p).rem(&f)).gcd(&f);
        if g.degree() > 0 {
            out.push((d, (g.degree() / d as usize) as u32));
            f = f.div_exact(&g);
            h = h.rem(&f);
        }
    }
    if f.degree() > 0 {
        out.push((f.degree() as u32, 1));
    }
    out.sort_unstable();
    out
}
