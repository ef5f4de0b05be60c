use crate::error::{Error, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut base = base % m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// The Kronecker symbol `(a/n)`, defined for every pair of integers.
pub fn kronecker(a: i64, n: i64) -> i8 {
    let mut a = a as i128;
    let mut n = n as i128;
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut sign = 1i8;
    if n < 0 {
        n = -n;
        if a < 0 {
            sign = -sign;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        // (a/2) = 1 for a = ±1 (mod 8), -1 for a = ±3 (mod 8)
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            sign = -sign;
        }
        n >>= twos;
    }
    // n is now odd and positive: Jacobi symbol
    a = a.rem_euclid(n);
    while a != 0 {
        let t = a.trailing_zeros();
        a >>= t;
        if t % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        (a, n) = (n % a, a);
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Square root of `a` modulo the prime `p` (Tonelli-Shanks).
///
/// Returns the smaller of the two roots, `Some(0)` when `p | a`, and `None`
/// for a non-residue.
pub fn mod_sqrt(a: i64, p: u64) -> Option<u64> {
    let a = (a as i128).rem_euclid(p as i128) as u64;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let root = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        let s = (p - 1).trailing_zeros();
        let q = (p - 1) >> s;
        let mut z = 2;
        while pow_mod(z, (p - 1) / 2, p) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = pow_mod(z, q, p);
        let mut t = pow_mod(a, q, p);
        let mut r = pow_mod(a, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul_mod(t2, t2, p);
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        r
    };
    Some(root.min(p - root))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Solves a system of congruences with pairwise coprime moduli.
///
/// Returns `(x, M)` with `M` the product of the moduli and `0 <= x < M`.
/// Moduli whose product does not fit in 128 bits are rejected.
pub fn crt(congruences: &[(i64, u64)]) -> Result<(u128, u128)> {
    if congruences.is_empty() {
        return Err(Error::invalid("crt needs at least one congruence"));
    }
    let mut x: u128 = 0;
    let mut modulus: u128 = 1;
    for (i, &(r, m)) in congruences.iter().enumerate() {
        if m < 2 {
            return Err(Error::invalid(format!("modulus {m} must be at least 2")));
        }
        for &(_, prev) in &congruences[..i] {
            if gcd(prev, m) != 1 {
                return Err(Error::invalid(format!(
                    "moduli {prev} and {m} are not coprime"
                )));
            }
        }
        let r = (r as i128).rem_euclid(m as i128) as u64;
        // x + modulus * t = r (mod m)
        let x_mod = (x % m as u128) as u64;
        let big_mod = (modulus % m as u128) as u64;
        let inv = inv_mod(big_mod, m).expect("coprime moduli");
        let t = mul_mod((r + m - x_mod) % m, inv, m);
        let next = modulus
            .checked_mul(m as u128)
            .ok_or_else(|| Error::invalid("product of moduli exceeds 128 bits"))?;
        x += modulus * t as u128;
        modulus = next;
    }
    Ok((x, modulus))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euler_symbol(a: i64, p: u64) -> i8 {
        match pow_mod(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p) {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-11, 3), 1);
        assert_eq!(kronecker(-3, 3), 0);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-163, 41), 1);
        assert_eq!(kronecker(5, 0), 0);
        assert_eq!(kronecker(-1, 0), 1);
        assert_eq!(kronecker(3, -1), 1);
        assert_eq!(kronecker(-3, -1), -1);
        assert_eq!(kronecker(2, 4), 0);
        // (-19/2): -19 = 5 (mod 8)
        assert_eq!(kronecker(-19, 2), -1);
        assert_eq!(kronecker(-7, 2), 1);
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        let odd_primes: Vec<u64> = (3..1000u64)
            .filter(|&n| crate::arith::is_prime(n))
            .collect();
        for p in odd_primes {
            for a in 0..p as i64 {
                assert_eq!(kronecker(a, p as i64), euler_symbol(a, p), "({a}/{p})");
            }
        }
    }

    #[test]
    fn kronecker_is_multiplicative_in_the_modulus() {
        for a in -60i64..60 {
            for m in 1i64..40 {
                for n in 1i64..40 {
                    assert_eq!(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
                }
            }
        }
    }

    #[test]
    fn mod_sqrt_examples() {
        assert_eq!(mod_sqrt(-3, 7), Some(2));
        assert_eq!(mod_sqrt(0, 5), Some(0));
        assert_eq!(mod_sqrt(2, 5), None);
        assert_eq!(mod_sqrt(10, 5), Some(0));
    }

    #[test]
    fn mod_sqrt_exists_iff_residue() {
        for p in (3..500u64).filter(|&n| crate::arith::is_prime(n)) {
            for a in -(p as i64)..(2 * p as i64) {
                let root = mod_sqrt(a, p);
                assert_eq!(root.is_some(), kronecker(a, p as i64) != -1, "a={a} p={p}");
                if let Some(r) = root {
                    assert!(r <= p - r || r == 0);
                    assert_eq!(mul_mod(r, r, p), a.rem_euclid(p as i64) as u64);
                }
            }
        }
    }

    #[test]
    fn mod_sqrt_large_two_adic_prime() {
        // p - 1 = 2^32 * 3 * 5 * 17 * 257 * 65537 / ... : highly 2-adic
        let p = 0xffff_ffff_0000_0001u64;
        for a in [2u64, 3, 5, 12345, 987654321] {
            let a2 = mul_mod(a, a, p);
            let r = mod_sqrt(a2 as i64, p).unwrap();
            assert_eq!(mul_mod(r, r, p), a2);
        }
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt(&[(1, 3), (2, 5)]).unwrap(), (7, 15));
        assert_eq!(crt(&[(0, 7)]).unwrap(), (0, 7));
        assert_eq!(crt(&[(2, 3), (3, 5), (2, 7)]).unwrap(), (23, 105));
        assert!(matches!(
            crt(&[(1, 4), (3, 6)]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(crt(&[]).is_err());
        assert!(crt(&[(0, 1)]).is_err());
    }

    #[test]
    fn crt_agrees_with_direct_scan() {
        let moduli = [4u64, 9, 5, 7];
        for r0 in 0..4 {
            for r1 in 0..9 {
                let sys = [(r0, 4), (r1, 9), (-3, 5), (11, 7)];
                let (x, m) = crt(&sys).unwrap();
                assert_eq!(m, 1260);
                let scan = (0..1260u128)
                    .find(|&y| {
                        sys.iter().zip(moduli).all(|(&(r, _), md)| {
                            y % md as u128 == (r as i128).rem_euclid(md as i128) as u128
                        })
                    })
                    .unwrap();
                assert_eq!(x, scan);
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(4, 8), None);
        for a in 1..97 {
            assert_eq!(mul_mod(a, inv_mod(a, 97).unwrap(), 97), 1);
        }
    }
}
