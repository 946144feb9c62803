//! Exact arithmetic in cyclotomic fields `Q(zeta_m)`.
//!
//! A value is a residue mod the `m`-th cyclotomic polynomial, stored as a
//! dense vector of rationals of length `deg Phi_m`. Rationals are the `m = 1`
//! case. Mixed-modulus arithmetic lifts both operands into `Q(zeta_lcm)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

/// Largest cyclotomic modulus supported; verifier instances stay well below.
pub const MAX_MODULUS: u64 = 240;

/// The `m`-th cyclotomic polynomial, monic with integer coefficients,
/// index `i` holding the coefficient of `x^i`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by all proper cyclotomic factors
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    cache.lock().unwrap().insert(m, num.clone());
    num
}

/// Euler totient.
pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Exact division of integer polynomials (panics if not exact).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = rem.len() - 1;
    let mut quo = vec![BigInt::zero(); dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        quo[i] = c.clone();
        for j in 0..=dd {
            let t = &rem[i + j] - &c * &den[j];
            rem[i + j] = t;
        }
    }
    assert!(rem.iter().all(|x| x.is_zero()), "inexact polynomial division");
    quo
}

/// An element of `Q(zeta_m)` in the power basis `1, zeta, ..., zeta^(phi(m)-1)`.
#[derive(Clone)]
pub struct CycloNumber {
    modulus: u64,
    coeffs: Vec<BigRational>,
}

impl CycloNumber {
    fn raw(modulus: u64, coeffs: Vec<BigRational>) -> Self {
        debug_assert_eq!(coeffs.len() as u64, euler_phi(modulus));
        CycloNumber { modulus, coeffs }
    }

    /// The rational number `q`, living in `Q(zeta_1) = Q`.
    pub fn from_rational(q: BigRational) -> Self {
        CycloNumber::raw(1, vec![q])
    }

    pub fn from_int(n: i64) -> Self {
        CycloNumber::from_rational(BigRational::from(BigInt::from(n)))
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        CycloNumber::from_rational(BigRational::from(n.clone()))
    }

    /// A primitive `m`-th root of unity.
    pub fn zeta(m: u64) -> Self {
        assert!(m >= 1 && m <= MAX_MODULUS, "modulus {m} out of range");
        CycloNumber::zeta_power(m, 1)
    }

    /// `zeta_m^k`.
    pub fn zeta_power(m: u64, k: u64) -> Self {
        assert!(m >= 1 && m <= MAX_MODULUS, "modulus {m} out of range");
        let deg = euler_phi(m) as usize;
        let k = (k % m) as usize;
        let mut poly = vec![BigRational::zero(); k + 1];
        poly[k] = BigRational::one();
        let coeffs = reduce_mod_cyclotomic(poly, m, deg);
        CycloNumber::raw(m, coeffs)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Lifts into `Q(zeta_target)`; requires `modulus | target`.
    pub fn lift(&self, target: u64) -> Self {
        assert!(
            target % self.modulus == 0,
            "cannot lift Q(zeta_{}) into Q(zeta_{})",
            self.modulus,
            target
        );
        assert!(target <= MAX_MODULUS, "modulus {target} out of range");
        if target == self.modulus {
            return self.clone();
        }
        let step = (target / self.modulus) as usize;
        let deg = euler_phi(target) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        CycloNumber::raw(target, reduce_mod_cyclotomic(poly, target, deg))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exact rational value, when the element lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    /// Applies the Galois automorphism `zeta -> zeta^a`; requires
    /// `gcd(a, m) = 1`.
    pub fn galois(&self, a: u64) -> Self {
        let m = self.modulus;
        let a = a % m;
        if m > 1 {
            assert_eq!(num_integer::gcd(a, m), 1, "galois exponent not coprime");
        }
        let deg = euler_phi(m) as usize;
        let mut poly = vec![BigRational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = (i as u64 * a % m) as usize;
            poly[e] = &poly[e] + c;
        }
        CycloNumber::raw(m, reduce_mod_cyclotomic(poly, m, deg))
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conjugate(&self) -> Self {
        if self.modulus <= 2 {
            return self.clone();
        }
        self.galois(self.modulus - 1)
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "division by zero cyclotomic number");
        if let Some(q) = self.to_rational() {
            let mut out = self.clone();
            out.coeffs[0] = q.recip();
            for c in out.coeffs[1..].iter_mut() {
                *c = BigRational::zero();
            }
            return out;
        }
        // extended Euclid in Q[x] against Phi_m
        let m = self.modulus;
        let phi: Vec<BigRational> = cyclotomic_polynomial(m)
            .into_iter()
            .map(BigRational::from)
            .collect();
        let (g, _, t) = poly_ext_gcd(&phi, &self.coeffs);
        // g is a nonzero constant
        let g0 = g[0].clone();
        assert!(g.len() == 1 && !g0.is_zero(), "element not invertible mod Phi_m");
        let deg = euler_phi(m) as usize;
        let inv: Vec<BigRational> = t.iter().map(|c| c / &g0).collect();
        CycloNumber::raw(m, reduce_mod_cyclotomic(inv, m, deg))
    }

    /// Numeric value under the embedding `zeta_m -> exp(2 pi i t / m)`.
    pub fn embed(&self, t: u64) -> (f64, f64) {
        let m = self.modulus as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * (i as f64) * (t as f64) / m;
            let cf = rational_to_f64(c);
            re += cf * angle.cos();
            im += cf * angle.sin();
        }
        (re, im)
    }

    /// `|x|` under the embedding `zeta_m -> exp(2 pi i t / m)`.
    pub fn abs_embed(&self, t: u64) -> f64 {
        let (re, im) = self.embed(t);
        re.hypot(im)
    }

    /// Product of `x` over all Galois conjugates (an exact rational).
    pub fn norm(&self) -> BigRational {
        let m = self.modulus;
        let mut acc = CycloNumber::from_int(1);
        for a in 1..=m.max(1) {
            if num_integer::gcd(a, m) == 1 {
                acc = &acc * &self.galois(a % m);
            }
        }
        acc.to_rational().expect("norm must be rational")
    }

    /// Scales by a rational.
    pub fn scale(&self, q: &BigRational) -> Self {
        CycloNumber::raw(self.modulus, self.coeffs.iter().map(|c| c * q).collect())
    }

    fn align(&self, other: &Self) -> (CycloNumber, CycloNumber) {
        if self.modulus == other.modulus {
            return (self.clone(), other.clone());
        }
        let l = num_integer::lcm(self.modulus, other.modulus);
        (self.lift(l), other.lift(l))
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    // exact conversion path for small values, falling back to string parsing
    let n = q.numer();
    let d = q.denom();
    if let (Some(nf), Some(df)) = (n.to_string().parse::<f64>().ok(), d.to_string().parse::<f64>().ok()) {
        if nf.is_finite() && df.is_finite() && df != 0.0 {
            return nf / df;
        }
    }
    // very large entries: use bit-shifted quotient
    let shift = 64usize;
    let scaled = (n << shift) / d;
    let sf = scaled.to_string().parse::<f64>().unwrap_or(f64::NAN);
    sf / (2f64).powi(shift as i32)
}

fn reduce_mod_cyclotomic(mut poly: Vec<BigRational>, m: u64, deg: usize) -> Vec<BigRational> {
    let phi: Vec<BigInt> = cyclotomic_polynomial(m);
    while poly.len() > deg {
        let top = poly.len() - 1;
        let c = poly.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        // x^top = x^(top-deg) * (x^deg) and x^deg = -(lower terms of Phi)
        for j in 0..deg {
            let t = &poly[top - deg + j] - &c * &BigRational::from(phi[j].clone());
            poly[top - deg + j] = t;
        }
    }
    poly.resize(deg, BigRational::zero());
    poly
}

/// Extended gcd for polynomials over `Q`: returns `(g, s, t)` with
/// `s*a + t*b = g`, all coefficient vectors trimmed.
fn poly_ext_gcd(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    let trim = |v: &[BigRational]| -> Vec<BigRational> {
        let mut v = v.to_vec();
        while v.len() > 1 && v.last().unwrap().is_zero() {
            v.pop();
        }
        v
    };
    let mut r0 = trim(a);
    let mut r1 = trim(b);
    let mut s0 = vec![BigRational::one()];
    let mut s1 = vec![BigRational::zero()];
    let mut t0 = vec![BigRational::zero()];
    let mut t1 = vec![BigRational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let new_s = poly_sub(&s0, &poly_mul(&q, &s1));
        let new_t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = trim(&r);
        s0 = s1;
        s1 = trim(&new_s);
        t0 = t1;
        t1 = trim(&new_t);
    }
    (r0, s0, t0)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (vec![BigRational::zero()], rem);
    }
    let mut quo = vec![BigRational::zero(); rem.len() - db];
    for i in (0..rem.len() - db).rev() {
        let c = &rem[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        quo[i] = c.clone();
        for j in 0..=db {
            let t = &rem[i + j] - &c * &b[j];
            rem[i + j] = t;
        }
    }
    rem.truncate(db.max(1));
    (quo, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = &out[i + j] + x * y;
            out[i + j] = t;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] = x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        let t = &out[i] - y;
        out[i] = t;
    }
    out
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.align(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloNumber {}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "z{}^{}", self.modulus, i)?;
            } else {
                write!(f, "{}*z{}^{}", c, self.modulus, i)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        let (mut a, b) = self.align(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x = &*x + y;
        }
        a
    }
}

impl Sub for &CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        let (mut a, b) = self.align(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x = &*x - y;
        }
        a
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber::raw(self.modulus, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        let (a, b) = self.align(rhs);
        let m = a.modulus;
        let deg = euler_phi(m) as usize;
        let prod = poly_mul(&a.coeffs, &b.coeffs);
        CycloNumber::raw(m, reduce_mod_cyclotomic(prod, m, deg))
    }
}

macro_rules! forward_owned_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: CycloNumber) -> CycloNumber {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}
forward_owned_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

impl Zero for CycloNumber {
    fn zero() -> Self {
        CycloNumber::from_int(0)
    }
    fn is_zero(&self) -> bool {
        CycloNumber::is_zero(self)
    }
}

impl One for CycloNumber {
    fn one() -> Self {
        CycloNumber::from_int(1)
    }
}

impl CycloNumber {
    /// `x^k` for signed `k` (negative powers via the inverse).
    pub fn pow(&self, k: i64) -> CycloNumber {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CycloNumber::from_int(1);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        let p = cyclotomic_polynomial(1);
        assert_eq!(p, vec![BigInt::from(-1), BigInt::from(1)]);
        let p = cyclotomic_polynomial(6);
        // x^2 - x + 1
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]);
        let p = cyclotomic_polynomial(12);
        // x^4 - x^2 + 1
        assert_eq!(
            p,
            vec![
                BigInt::from(1),
                BigInt::from(0),
                BigInt::from(-1),
                BigInt::from(0),
                BigInt::from(1)
            ]
        );
    }

    #[test]
    fn zeta_has_multiplicative_order() {
        for m in [3u64, 4, 5, 8, 12] {
            let z = CycloNumber::zeta(m);
            let mut acc = CycloNumber::from_int(1);
            for k in 1..=m {
                acc = &acc * &z;
                if k < m {
                    assert!(acc != CycloNumber::from_int(1), "zeta_{m} has order < {m}");
                }
            }
            assert_eq!(acc, CycloNumber::from_int(1));
        }
    }

    #[test]
    fn lift_and_mixed_arithmetic() {
        let z6 = CycloNumber::zeta(6);
        let z3 = CycloNumber::zeta(3);
        // zeta_6^2 = zeta_3
        assert_eq!(&z6 * &z6, z3);
        // -zeta_6 is a primitive cube root times -1: zeta_3 + zeta_6 relation
        let sum = &z3 + &CycloNumber::from_int(1);
        assert_eq!(sum, z6); // 1 + zeta_3 = zeta_6
    }

    #[test]
    fn inverse_round_trip() {
        let x = &CycloNumber::zeta(5) + &CycloNumber::from_int(2);
        let inv = x.inverse();
        assert_eq!(&x * &inv, CycloNumber::from_int(1));
    }

    #[test]
    fn norm_of_one_minus_zeta_p() {
        for p in [3u64, 5, 7, 11] {
            let x = &CycloNumber::from_int(1) - &CycloNumber::zeta(p);
            assert_eq!(x.norm(), BigRational::from(BigInt::from(p as i64)));
        }
    }

    #[test]
    fn galois_is_automorphism() {
        let x = &CycloNumber::zeta(7) + &CycloNumber::from_int(3);
        let y = &CycloNumber::zeta_power(7, 4) - &CycloNumber::from_int(1);
        let a = 3;
        let lhs = (&x * &y).galois(a);
        let rhs = &x.galois(a) * &y.galois(a);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn embedding_matches_algebra() {
        let x = &CycloNumber::from_int(1) - &CycloNumber::zeta(5);
        // |1 - zeta_5| = 2 sin(pi/5)
        let expect = 2.0 * (std::f64::consts::PI / 5.0).sin();
        assert!((x.abs_embed(1) - expect).abs() < 1e-12);
    }
}
