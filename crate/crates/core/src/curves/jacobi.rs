use std::ops::{Add, Mul};

use serde::Serialize;

use crate::arith::{is_prime, pow_mod};
use crate::error::{Error, Result};

/// `u + v·ω` in `Z[ω]`, `ω = e^{2πi/3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Eisenstein {
    pub u: i64,
    pub v: i64,
}

impl Eisenstein {
    pub const ONE: Eisenstein = Eisenstein { u: 1, v: 0 };
    pub const OMEGA: Eisenstein = Eisenstein { u: 0, v: 1 };
    /// `e^{iπ/3} = 1 + ω`
    pub const ZETA6: Eisenstein = Eisenstein { u: 1, v: 1 };

    /// `z + z̄`
    pub fn trace(self) -> i64 {
        2 * self.u - self.v
    }

    pub fn norm(self) -> i64 {
        self.u * self.u - self.u * self.v + self.v * self.v
    }

    pub fn pow(self, n: u32) -> Eisenstein {
        (0..n).fold(Eisenstein::ONE, |acc, _| acc * self)
    }

    /// Coordinates `(a, b)` with `self = a + i b √3`, when both are integers.
    pub fn to_sqrt3_coords(self) -> Option<(i64, i64)> {
        // u + v(-1 + i√3)/2
        (self.v % 2 == 0).then(|| (self.u - self.v / 2, self.v / 2))
    }
}

impl Add for Eisenstein {
    type Output = Eisenstein;
    fn add(self, o: Eisenstein) -> Eisenstein {
        Eisenstein {
            u: self.u + o.u,
            v: self.v + o.v,
        }
    }
}

impl Mul for Eisenstein {
    type Output = Eisenstein;
    fn mul(self, o: Eisenstein) -> Eisenstein {
        // ω^2 = -1 - ω
        Eisenstein {
            u: self.u * o.u - self.v * o.v,
            v: self.u * o.v + self.v * o.u - self.v * o.v,
        }
    }
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            out.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if p == 2 {
        return Ok(1);
    }
    let factors = distinct_prime_factors(p - 1);
    Ok((2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("every prime has a primitive root"))
}

struct SexticCharacter {
    p: u64,
    /// `g^{(p-1)/6}` for the smallest primitive root `g`
    zeta: u64,
}

impl SexticCharacter {
    fn new(p: u64) -> Result<Self> {
        if p <= 3 || !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not a prime greater than 3")));
        }
        if p % 3 != 1 {
            return Err(Error::domain(format!("p = {p} is not 1 mod 3")));
        }
        let g = primitive_root(p)?;
        Ok(SexticCharacter {
            p,
            zeta: pow_mod(g, (p - 1) / 6, p),
        })
    }

    /// `j mod 6` with `chi_6(x) = e^{iπj/3}`, i.e. the discrete log of `x` mod 6.
    fn index(&self, x: u64) -> u32 {
        let t = pow_mod(x, (self.p - 1) / 6, self.p);
        let mut z = 1;
        for j in 0..6 {
            if z == t {
                return j;
            }
            z = crate::arith::mul_mod(z, self.zeta, self.p);
        }
        unreachable!("x^((p-1)/6) is a sixth root of unity")
    }
}

fn jacobi_sum_eisenstein(chi: &SexticCharacter) -> Eisenstein {
    let p = chi.p;
    // chi_2 = chi_6^3, chi_3 = chi_6^2
    let mut acc = [0i64; 3];
    let mut sign_sum = [0i64; 3];
    for x in 2..p {
        let quad = if chi.index(x).is_multiple_of(2) {
            1
        } else {
            -1
        };
        let cubic = (2 * chi.index(p + 1 - x)) % 6 / 2;
        sign_sum[cubic as usize] += quad;
    }
    acc.copy_from_slice(&sign_sum);
    // sum of c_j ω^j with ω^2 = -1 - ω
    Eisenstein {
        u: acc[0] - acc[2],
        v: acc[1] - acc[2],
    }
}

/// The Jacobi sum `J(chi_2, chi_3) = a + i b √3` with the characters built on
/// the smallest primitive root. Satisfies `a^2 + 3b^2 = p` and `a = -1 (mod 3)`.
pub fn jacobi_sum(p: u64) -> Result<(i64, i64)> {
    let chi = SexticCharacter::new(p)?;
    let j = jacobi_sum_eisenstein(&chi);
    j.to_sqrt3_coords().ok_or_else(|| {
        Error::domain(format!(
            "J(chi_2, chi_3) = {j:?} is not in Z[√-3] for p = {p}"
        ))
    })
}

/// `#E(F_p) = p + 1 + Tr(chi_6(k)^{-1} J(chi_2, chi_3))`, an exact `O(p)` count
/// independent of point arithmetic.
pub fn order_via_jacobi(p: u64, k: i64) -> Result<u64> {
    if p > 3 && p % 3 == 2 && is_prime(p) {
        return Ok(p + 1);
    }
    let chi = SexticCharacter::new(p)?;
    let k = (k as i128).rem_euclid(p as i128) as u64;
    if k == 0 {
        return Err(Error::invalid(format!("k is divisible by p = {p}")));
    }
    let j = jacobi_sum_eisenstein(&chi);
    let inv = Eisenstein::ZETA6.pow((6 - chi.index(k)) % 6);
    Ok((p as i64 + 1 + (inv * j).trace()) as u64)
}
