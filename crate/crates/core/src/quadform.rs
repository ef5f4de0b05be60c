//! Representations `4p = a^2 + d b^2`, class numbers of imaginary quadratic
//! fields by reduced-form counting, and the list-length bound `M(d)`.

use serde::Serialize;

use crate::arith::{is_prime, is_square, isqrt, kronecker, mod_sqrt, squarefree_part};
use crate::error::{Error, Result};

/// A prime written in the norm form of the CM field.
///
/// For `d > 3`: `4p = a^2 + d b^2` with `a, b > 0`.
/// For `d = 3`: `p = a^2 + 3 b^2` with `b > 0` and `a = -1 (mod 3)`; `a` may be negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CmDecomposition {
    pub p: u64,
    pub d: u64,
    pub a: i64,
    pub b: i64,
}

pub(crate) fn check_cm_discriminant(d: u64) -> Result<()> {
    if d % 8 != 3 {
        return Err(Error::invalid(format!("d = {d} is not 3 mod 8")));
    }
    if squarefree_part(d).f != 1 {
        return Err(Error::invalid(format!("d = {d} is not square-free")));
    }
    Ok(())
}

fn check_prime_above_three(p: u64) -> Result<()> {
    if p <= 3 || !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not a prime greater than 3")));
    }
    Ok(())
}

/// Cornacchia's descent on `4p = x^2 + d y^2` for odd `d`, no argument checks.
pub(crate) fn cornacchia_4p(p: u64, d: u64) -> Option<(u64, u64)> {
    let four_p = 4 * p;
    if d >= four_p {
        return None;
    }
    if d.is_multiple_of(p) {
        // only b = 1 can work
        return is_square((four_p - d) as i128)
            .filter(|&a| a > 0)
            .map(|a| (a, 1));
    }
    let mut x0 = mod_sqrt(-(d as i64), p)?;
    if x0 % 2 != d % 2 {
        x0 = p - x0;
    }
    let limit = isqrt(four_p);
    let (mut r0, mut r1) = (2 * p, x0);
    while r1 > limit {
        (r0, r1) = (r1, r0 % r1);
    }
    let rest = four_p - r1 * r1;
    if !rest.is_multiple_of(d) {
        return None;
    }
    let c = is_square((rest / d) as i128)?;
    (r1 > 0 && c > 0).then_some((r1, c))
}

/// The unique positive `(a, b)` with `4p = a^2 + d b^2`, if `p` has one.
pub fn decompose(p: u64, d: u64) -> Result<Option<CmDecomposition>> {
    check_cm_discriminant(d)?;
    if d == 3 {
        return Err(Error::invalid("decompose needs d > 3; use decompose3"));
    }
    check_prime_above_three(p)?;
    Ok(cornacchia_4p(p, d).map(|(a, b)| CmDecomposition {
        p,
        d,
        a: a as i64,
        b: b as i64,
    }))
}

/// Cornacchia on `p = x^2 + 3 y^2`, then the sign of `x` fixed by `x = -1 (mod 3)`.
pub(crate) fn decompose3_unchecked(p: u64) -> CmDecomposition {
    let x0 = mod_sqrt(-3, p).expect("-3 is a square mod p = 1 (mod 3)");
    let limit = isqrt(p);
    let (mut r0, mut r1) = (p, x0);
    while r1 > limit {
        (r0, r1) = (r1, r0 % r1);
    }
    let rest = p - r1 * r1;
    debug_assert_eq!(rest % 3, 0);
    let b = is_square((rest / 3) as i128).expect("p = 1 (mod 3) has a representation") as i64;
    let x = r1 as i64;
    let a = if x % 3 == 2 { x } else { -x };
    CmDecomposition { p, d: 3, a, b }
}

/// `p = a^2 + 3 b^2` with `b > 0` and `a = -1 (mod 3)`.
pub fn decompose3(p: u64) -> Result<CmDecomposition> {
    check_prime_above_three(p)?;
    if p % 3 != 1 {
        return Err(Error::domain(format!(
            "p = {p} is 2 mod 3 and has no form a^2 + 3b^2"
        )));
    }
    Ok(decompose3_unchecked(p))
}

/// Class number `h(-d)` for square-free `d = 3 (mod 4)`.
///
/// Counts reduced forms `(A, B, C)` with `B^2 - 4AC = -d`, `|B| <= A <= C`,
/// and `B >= 0` whenever `|B| = A` or `A = C`.
pub fn class_number(d: u64) -> Result<u64> {
    if d % 4 != 3 {
        return Err(Error::invalid(format!("d = {d} is not 3 mod 4")));
    }
    if squarefree_part(d).f != 1 {
        return Err(Error::invalid(format!("d = {d} is not square-free")));
    }
    let mut h = 0;
    let mut b = 1u64;
    // |B| <= A <= C forces 3B^2 <= d
    while 3 * b * b <= d {
        let n = (b * b + d) / 4;
        let mut a = b.max(1);
        while a * a <= n {
            if n.is_multiple_of(a) {
                let c = n / a;
                h += if b == a || a == c { 1 } else { 2 };
            }
            a += 1;
        }
        b += 2;
    }
    Ok(h)
}

/// `M(d)`: the smallest prime `z` with `(-d/z) != -1` when `d = 3 (mod 8)`, else 1.
pub fn max_allowable(d: u64) -> u64 {
    if d % 8 != 3 {
        return 1;
    }
    let mut z = 2u64;
    loop {
        if is_prime(z) && kronecker(-(d as i64), z as i64) != -1 {
            return z;
        }
        z += 1;
    }
}
