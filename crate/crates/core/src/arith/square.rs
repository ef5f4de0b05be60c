/// Square-free decomposition `n = d * f^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct SquarefreeSplit {
    pub d: u64,
    pub f: u64,
}

/// Floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while (r as u128) * (r as u128) > n as u128 {
        r -= 1;
    }
    while ((r + 1) as u128) * ((r + 1) as u128) <= n as u128 {
        r += 1;
    }
    r
}

fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// The non-negative square root of `n` if `n` is a perfect square.
pub fn is_square(n: i128) -> Option<u64> {
    if n < 0 {
        return None;
    }
    let r = isqrt_u128(n as u128);
    (r * r == n as u128).then_some(r as u64)
}

/// Splits `n >= 1` as `d * f^2` with `d` square-free.
///
/// Trial division runs only to the cube root: whatever is left has at most two
/// prime factors, so it is either a square or square-free.
pub fn squarefree_part(n: u64) -> SquarefreeSplit {
    assert!(n >= 1, "squarefree_part needs n >= 1");
    let mut rest = n;
    let mut d = 1u64;
    let mut f = 1u64;
    let mut p = 2u64;
    while (p as u128).pow(3) <= rest as u128 {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            f *= p.pow(e / 2);
            if e % 2 == 1 {
                d *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    match is_square(rest as i128) {
        Some(r) if rest > 1 => f *= r,
        _ => d *= rest,
    }
    SquarefreeSplit { d, f }
}
