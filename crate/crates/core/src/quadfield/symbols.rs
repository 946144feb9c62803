//! Kronecker and Hilbert symbols.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Kronecker symbol `(a | n)`, fully extended (n may be negative, even or
/// zero).
pub fn kronecker_symbol(a: i64, n: i64) -> i32 {
    kronecker_big(&BigInt::from(a), &BigInt::from(n))
}

pub fn kronecker_big(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.clone();
    let mut n = n.clone();
    if n.is_zero() {
        return if a.abs() == BigInt::from(1) { 1 } else { 0 };
    }
    let mut result = 1i32;
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            result = -result;
        }
    }
    // factor out twos from n
    let mut twos = 0u32;
    while n.is_even() {
        n /= 2;
        twos += 1;
    }
    if twos > 0 {
        if a.is_even() {
            return 0;
        }
        // (a|2)^twos = ((-1)^((a^2-1)/8))^twos
        if twos % 2 == 1 {
            let r: BigInt = (&a).mod_floor(&BigInt::from(8));
            let r = r.to_string().parse::<i64>().unwrap();
            if r == 3 || r == 5 {
                result = -result;
            }
        }
    }
    a = a.mod_floor(&n);
    // now a Jacobi symbol (a|n) with n odd positive
    while !a.is_zero() {
        while a.is_even() {
            a /= 2;
            let r: BigInt = (&n).mod_floor(&BigInt::from(8));
            let r = r.to_string().parse::<i64>().unwrap();
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a).mod_floor(&BigInt::from(4)) == BigInt::from(3)
            && (&n).mod_floor(&BigInt::from(4)) == BigInt::from(3)
        {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n == BigInt::from(1) {
        result
    } else {
        0
    }
}

/// Legendre symbol `(a | p)` for an odd prime `p`.
pub fn legendre_symbol(a: i64, p: u64) -> i32 {
    kronecker_symbol(a, p as i64)
}

/// Quadratic Hilbert symbol `(a, b)_v` for nonzero rationals at a finite
/// prime (`v = p`) or the real place (`v = 0`).
pub fn hilbert_symbol(a: (i64, i64), b: (i64, i64), v: u64) -> i32 {
    // represent a = an/ad as integer pair; symbols only depend on square
    // classes, so clear denominators
    let an = a.0 as i128 * a.1 as i128;
    let bn = b.0 as i128 * b.1 as i128;
    assert!(an != 0 && bn != 0, "hilbert symbol of zero");
    hilbert_int(an, bn, v)
}

/// Hilbert symbol for nonzero integers.
pub fn hilbert_int(a: i128, b: i128, v: u64) -> i32 {
    assert!(a != 0 && b != 0);
    if v == 0 {
        // real place
        return if a < 0 && b < 0 { -1 } else { 1 };
    }
    let p = v as i128;
    let (alpha, u) = strip_p(a, p);
    let (beta, w) = strip_p(b, p);
    if p == 2 {
        let eps = |x: i128| ((x.rem_euclid(8) - 1) / 2) % 2; // (x-1)/2 mod 2
        let omega = |x: i128| {
            let r = x.rem_euclid(8);
            if r == 1 || r == 7 {
                0
            } else {
                1
            }
        }; // (x^2-1)/8 mod 2
        let e = eps(u) * eps(w) + (alpha as i128) * omega(w) + (beta as i128) * omega(u);
        return if e % 2 == 0 { 1 } else { -1 };
    }
    // odd p
    let mut result = 1i32;
    if (alpha * beta) % 2 == 1 && (p - 1) / 2 % 2 == 1 {
        result = -result;
    }
    if beta % 2 == 1 {
        result *= legendre_i128(u, p);
    }
    if alpha % 2 == 1 {
        result *= legendre_i128(w, p);
    }
    result
}

fn strip_p(mut x: i128, p: i128) -> (i128, i128) {
    let mut k = 0i128;
    while x % p == 0 {
        x /= p;
        k += 1;
    }
    (k, x)
}

fn legendre_i128(a: i128, p: i128) -> i32 {
    kronecker_big(&BigInt::from(a), &BigInt::from(p))
}
