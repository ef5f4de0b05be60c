//! The elliptic-pair relation, decided arithmetically.
//!
//! `(p, q)` is a pair over the square-free part `d` of
//! `2pq + 2p + 2q - p^2 - q^2 - 1 = 4p - (p + 1 - q)^2`, provided that value is
//! positive. The cofactor is the certificate `A_pq` (up to sign).

use serde::Serialize;

use crate::arith::{is_prime, is_square, squarefree_part};
use crate::curves::six_orders;
use crate::error::{Error, Result};
use crate::quadform::{check_cm_discriminant, cornacchia_4p};

/// A certified pair `(p, q)_d` with its integer `A` (`A^2 d = numerator`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EllipticPair {
    pub p: u64,
    pub q: u64,
    pub d: u64,
    pub a: i64,
}

impl EllipticPair {
    /// Certifies `(p, q)` over whichever `d` its numerator determines.
    pub fn certify(p: u64, q: u64) -> Option<Self> {
        if !is_prime_above_three(p) || !is_prime_above_three(q) {
            return None;
        }
        let (d, _) = find_d(p, q)?;
        let a = a_pq(p, q, d)?;
        Some(EllipticPair { p, q, d, a })
    }
}

fn is_prime_above_three(n: u64) -> bool {
    n > 3 && is_prime(n)
}

/// `2pq + 2p + 2q - p^2 - q^2 - 1`, symmetric in `p` and `q`.
pub fn pair_numerator(p: u64, q: u64) -> i128 {
    let t = p as i128 + 1 - q as i128;
    4 * p as i128 - t * t
}

/// The unique square-free `d` and `|A|` making `(p, q)` a pair, if the two
/// primes lie strictly inside each other's Hasse interval.
pub fn find_d(p: u64, q: u64) -> Option<(u64, u64)> {
    let n = pair_numerator(p, q);
    if n <= 0 {
        return None;
    }
    let split = squarefree_part(n as u64);
    Some((split.d, split.f))
}

/// Whether `(p, q)` is an elliptic pair over `d`. Primes must exceed 3.
pub fn is_pair(p: u64, q: u64, d: u64) -> bool {
    is_prime_above_three(p) && is_prime_above_three(q) && find_d(p, q).is_some_and(|(e, _)| e == d)
}

/// The certificate `A_pq`.
///
/// For `d = 3` it is signed so that `A = p + q + 1 (mod 4)`; for `d > 3` it is
/// `b_p > 0` from `4p = a_p^2 + d b_p^2`.
pub fn a_pq(p: u64, q: u64, d: u64) -> Option<i64> {
    if !is_pair(p, q, d) {
        return None;
    }
    let (_, f) = find_d(p, q)?;
    let f = f as i64;
    if d != 3 {
        return Some(f);
    }
    let target = ((p + q + 1) % 4) as i64;
    Some(if f.rem_euclid(4) == target { f } else { -f })
}

/// Six orders over `F_q` of `y^2 = x^3 + g^m`, labelled by `m mod 6`, written in
/// terms of a pair `(p, q)_3` and its `A`. Index `i` of the result is `m = i`.
pub fn orders_from_a(p: u64, q: u64) -> Result<[u64; 6]> {
    let a =
        a_pq(p, q, 3).ok_or_else(|| Error::invalid(format!("({p}, {q}) is not a pair over 3")))?;
    let (p, q) = (p as i64, q as i64);
    let half = |x: i64| -> u64 {
        debug_assert_eq!(x % 2, 0);
        (x / 2) as u64
    };
    Ok([
        half(p + q + 1 + 3 * a),
        p as u64,
        half(p + q + 1 - 3 * a),
        half(-p + 3 * q + 3 - 3 * a),
        (2 * q + 2 - p) as u64,
        half(-p + 3 * q + 3 + 3 * a),
    ])
}

/// Pair membership through the curve side: for `d = 3`, `q` is one of the six
/// orders over `F_p`; for `d > 3`, `q = p + 1 ± a_p`.
pub fn is_pair_by_traces(p: u64, q: u64, d: u64) -> Result<bool> {
    if !is_prime_above_three(p) || !is_prime_above_three(q) {
        return Ok(false);
    }
    if d == 3 {
        return Ok(p % 3 == 1 && six_orders(p)?.contains(q));
    }
    check_cm_discriminant(d)?;
    Ok(cornacchia_4p(p, d).is_some_and(|(a, _)| q == p + 1 + a || q + a == p + 1))
}

/// Anomalous primes `3 < p < bound` over `d`: those with `(p, p)_d` a pair.
///
/// Generated by `12b^2 - 6b + 1` over nonzero `b` for `d = 3` and by
/// `dc^2 + dc + (1 + d)/4` over `c >= 0` otherwise.
pub fn anomalous_primes(d: u64, bound: u64) -> Result<Vec<u64>> {
    check_cm_discriminant(d)?;
    let mut out = Vec::new();
    if d == 3 {
        let value = |b: i64| (12 * b * b - 6 * b + 1) as u64;
        let mut b = 1i64;
        while value(-b).min(value(b)) < bound {
            // value(b) < value(-b) for b > 0
            for v in [value(b), value(-b)] {
                if v > 3 && v < bound && is_prime(v) {
                    out.push(v);
                }
            }
            b += 1;
        }
    } else {
        let mut c = 0u64;
        loop {
            let v = d * c * c + d * c + (1 + d) / 4;
            if v >= bound {
                break;
            }
            if v > 3 && is_prime(v) {
                out.push(v);
            }
            c += 1;
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `true` when `numerator / d` is a perfect square (the quick screen for a pair over `d`).
pub fn numerator_is_square_over(p: u64, q: u64, d: u64) -> bool {
    let n = pair_numerator(p, q);
    n > 0 && n % d as i128 == 0 && is_square(n / d as i128).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::decompose;

    #[test]
    fn numerator_examples() {
        assert_eq!(pair_numerator(7, 13), 3);
        assert_eq!(pair_numerator(41, 43), 163);
        assert_eq!(pair_numerator(13, 7), 3);
        // q outside the Hasse interval of p
        assert!(pair_numerator(7, 7 + 1 + 6) <= 0);
    }

    #[test]
    fn find_d_examples() {
        assert_eq!(find_d(7, 13), Some((3, 1)));
        assert_eq!(find_d(13, 17), Some((43, 1)));
        assert_eq!(find_d(31, 37), Some((11, 3)));
        assert_eq!(find_d(7, 101), None);
        assert_eq!(decompose(13, 43).unwrap().map(|c| (c.a, c.b)), Some((3, 1)));
    }

    #[test]
    fn is_pair_examples() {
        assert!(is_pair(7, 13, 3));
        assert!(is_pair(41, 43, 163));
        assert!(!is_pair(7, 11, 3));
        assert!(!is_pair(3, 7, 3));
        assert!(!is_pair(7, 9, 3));
    }

    #[test]
    fn a_pq_examples() {
        assert_eq!(a_pq(7, 13, 3), Some(1));
        assert_eq!(a_pq(13, 7, 3), Some(1));
        assert_eq!(a_pq(41, 43, 163), Some(1));
        assert_eq!(a_pq(31, 37, 11), Some(3));
        assert_eq!(a_pq(7, 11, 3), None);
    }

    #[test]
    fn orders_from_a_examples() {
        assert_eq!(orders_from_a(7, 13).unwrap(), [12, 7, 9, 16, 21, 19]);
        let mut set = orders_from_a(7, 13).unwrap();
        set.sort_unstable();
        assert_eq!(set, six_orders(13).unwrap().sorted());
        assert!(orders_from_a(7, 11).is_err());
    }

    #[test]
    fn orders_from_a_match_six_orders_everywhere() {
        let primes: Vec<u64> = (5..3000).filter(|&n| is_prime(n)).collect();
        for &p in &primes {
            for &q in &primes {
                if is_pair(p, q, 3) {
                    let mut v = orders_from_a(p, q).unwrap();
                    assert_eq!(v[1], p);
                    v.sort_unstable();
                    assert_eq!(v, six_orders(q).unwrap().sorted(), "({p}, {q})");
                }
            }
        }
    }

    #[test]
    fn anomalous_examples() {
        assert_eq!(anomalous_primes(3, 100).unwrap(), vec![7, 19, 37, 61]);
        assert_eq!(anomalous_primes(11, 1000).unwrap(), vec![223, 619]);
        assert!(anomalous_primes(3, 120_000).unwrap().contains(&114661));
        assert!(anomalous_primes(7, 100).is_err());
        for d in [3u64, 11, 19, 43, 163] {
            for p in anomalous_primes(d, 50_000).unwrap() {
                assert!(is_pair(p, p, d), "({p}, {p})_{d}");
            }
        }
    }

    #[test]
    fn anomalous_primes_are_complete() {
        // every (p, p)_d below the bound comes out of the polynomial
        for d in [3u64, 11, 19, 43, 67, 163] {
            let brute: Vec<u64> = (5..20_000).filter(|&p| is_pair(p, p, d)).collect();
            assert_eq!(anomalous_primes(d, 20_000).unwrap(), brute, "d={d}");
        }
    }

    #[test]
    fn certify_round_trip() {
        let pair = EllipticPair::certify(31, 37).unwrap();
        assert_eq!(
            pair,
            EllipticPair {
                p: 31,
                q: 37,
                d: 11,
                a: 3
            }
        );
        assert!(EllipticPair::certify(7, 101).is_none());
        assert!(numerator_is_square_over(31, 37, 11));
        assert!(!numerator_is_square_over(31, 37, 33));
    }
}
