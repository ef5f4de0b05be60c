use rand::Rng;
use serde::Serialize;

use crate::arith::{inv_mod, is_prime, mod_sqrt, mul_mod};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CurvePoint {
    Identity,
    Affine { x: u64, y: u64 },
}

/// `y^2 = x^3 + k` over `F_p`, `p > 3` prime, `p` not dividing `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Curve {
    p: u64,
    k: u64,
}

impl Curve {
    pub fn new(p: u64, k: i64) -> Result<Self> {
        if p <= 3 || !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not a prime greater than 3")));
        }
        let k = (k as i128).rem_euclid(p as i128) as u64;
        if k == 0 {
            return Err(Error::invalid(format!("k is divisible by p = {p}")));
        }
        Ok(Curve { p, k })
    }

    pub(crate) fn new_unchecked(p: u64, k: u64) -> Self {
        Curve { p, k: k % p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    fn rhs(&self, x: u64) -> u64 {
        (mul_mod(mul_mod(x, x, self.p), x, self.p) + self.k) % self.p
    }

    pub fn contains(&self, pt: &CurvePoint) -> bool {
        match *pt {
            CurvePoint::Identity => true,
            CurvePoint::Affine { x, y } => {
                x < self.p && y < self.p && mul_mod(y, y, self.p) == self.rhs(x)
            }
        }
    }

    pub fn neg(&self, pt: &CurvePoint) -> CurvePoint {
        match *pt {
            CurvePoint::Identity => CurvePoint::Identity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x,
                y: (self.p - y) % self.p,
            },
        }
    }

    pub fn add(&self, lhs: &CurvePoint, rhs: &CurvePoint) -> CurvePoint {
        let p = self.p;
        let (x1, y1, x2, y2) = match (*lhs, *rhs) {
            (CurvePoint::Identity, q) | (q, CurvePoint::Identity) => return q,
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let slope = if x1 == x2 {
            if (y1 + y2) % p == 0 {
                return CurvePoint::Identity;
            }
            // tangent: 3x^2 / 2y
            let num = mul_mod(3, mul_mod(x1, x1, p), p);
            mul_mod(num, inv_mod(2 * y1 % p, p).expect("y != 0"), p)
        } else {
            let num = (y2 + p - y1) % p;
            let den = (x2 + p - x1) % p;
            mul_mod(num, inv_mod(den, p).expect("distinct x"), p)
        };
        let x3 = (mul_mod(slope, slope, p) + 2 * p - x1 - x2) % p;
        let y3 = (mul_mod(slope, (x1 + p - x3) % p, p) + p - y1) % p;
        CurvePoint::Affine { x: x3, y: y3 }
    }

    /// `[n]P` by double-and-add.
    pub fn mul(&self, pt: &CurvePoint, mut n: u64) -> CurvePoint {
        let mut acc = CurvePoint::Identity;
        let mut base = *pt;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// A uniformly chosen affine point.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> CurvePoint {
        loop {
            let x = rng.gen_range(0..self.p);
            if let Some(y) = mod_sqrt(self.rhs(x) as i64, self.p) {
                let y = if rng.gen::<bool>() {
                    (self.p - y) % self.p
                } else {
                    y
                };
                return CurvePoint::Affine { x, y };
            }
        }
    }
}

/// `[n]P` on `y^2 = x^3 + k` over `F_p`.
pub fn ec_mul(p: u64, k: i64, pt: &CurvePoint, n: u64) -> Result<CurvePoint> {
    let curve = Curve::new(p, k)?;
    if !curve.contains(pt) {
        return Err(Error::invalid(format!(
            "{pt:?} is not on y^2 = x^3 + {k} over F_{p}"
        )));
    }
    Ok(curve.mul(pt, n))
}
