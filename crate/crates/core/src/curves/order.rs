use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::jacobi::order_via_jacobi;
use super::point::{Curve, CurvePoint};
use crate::arith::{is_prime, mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::quadform::decompose3_unchecked;

/// Seed used by [`curve_order`] for its point sampling.
pub const DEFAULT_SEED: u64 = 0x0005_eed0_fe11;

/// Below this size ambiguous orders are settled by counting points.
pub const NAIVE_FALLBACK_LIMIT: u64 = 100_000;

const POINT_SAMPLES: usize = 20;
const EXTENDED_SAMPLES: usize = 256;
const JACOBI_FALLBACK_LIMIT: u64 = 1 << 32;

fn check_field(p: u64, k: i64) -> Result<u64> {
    if p <= 3 || !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not a prime greater than 3")));
    }
    let k = (k as i128).rem_euclid(p as i128) as u64;
    if k == 0 {
        return Err(Error::invalid(format!("k is divisible by p = {p}")));
    }
    Ok(k)
}

/// Multiplicity of each value as a square: `sq[v] = #{y : y^2 = v}`.
fn square_counts(p: u64) -> Vec<u32> {
    let mut sq = vec![0u32; p as usize];
    for y in 0..p {
        sq[mul_mod(y, y, p) as usize] += 1;
    }
    sq
}

/// `#E(F_p)` by enumerating every `x`; `O(p)` time and memory.
pub fn naive_order(p: u64, k: i64) -> Result<u64> {
    let k = check_field(p, k)?;
    let sq = square_counts(p);
    let affine: u64 = (0..p)
        .map(|x| sq[((mul_mod(mul_mod(x, x, p), x, p) + k) % p) as usize] as u64)
        .sum();
    Ok(affine + 1)
}

/// Point counts for every `k` in `1..p` at once; entry `k - 1` is `#E_k(F_p)`.
pub fn naive_orders(p: u64) -> Result<Vec<u64>> {
    check_field(p, 1)?;
    let sq = square_counts(p);
    let mut cubes = vec![0u64; p as usize];
    for x in 0..p {
        cubes[mul_mod(mul_mod(x, x, p), x, p) as usize] += 1;
    }
    let cube_values: Vec<(usize, u64)> = cubes
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(v, &c)| (v, c))
        .collect();
    let pu = p as usize;
    Ok((1..pu)
        .map(|k| {
            1 + cube_values
                .iter()
                .map(|&(v, c)| {
                    let s = v + k;
                    c * sq[if s >= pu { s - pu } else { s }] as u64
                })
                .sum::<u64>()
        })
        .collect())
}

/// Sextic residue class of `k` modulo a prime `p = 1 (mod 3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ResidueClass {
    SixthPower,
    CubicNotQuadratic,
    QuadraticNotCubic,
    Neither,
}

/// Class of `k` mod `p` by Euler-criterion exponentiation. `p = 1 (mod 3)`, `p ∤ k`.
pub fn classify(p: u64, k: u64) -> ResidueClass {
    let qr = pow_mod(k, (p - 1) / 2, p) == 1;
    let cr = pow_mod(k, (p - 1) / 3, p) == 1;
    match (qr, cr) {
        (true, true) => ResidueClass::SixthPower,
        (false, true) => ResidueClass::CubicNotQuadratic,
        (true, false) => ResidueClass::QuadraticNotCubic,
        (false, false) => ResidueClass::Neither,
    }
}

/// The six possible orders of `y^2 = x^3 + k` over `F_p`, `p = 1 (mod 3)`,
/// labelled by the residue class of `k`. Built from `p = a^2 + 3b^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SixOrders {
    pub p: u64,
    pub a: i64,
    pub b: i64,
    pub sixth_power: u64,
    pub cubic_not_quadratic: u64,
    /// `p + 1 - a - 3b`, `p + 1 - a + 3b`
    pub quadratic_not_cubic: [u64; 2],
    /// `p + 1 + a - 3b`, `p + 1 + a + 3b`
    pub neither: [u64; 2],
}

impl SixOrders {
    fn from_ab(p: u64, a: i64, b: i64) -> Self {
        let base = p as i64 + 1;
        let v = |x: i64| x as u64;
        SixOrders {
            p,
            a,
            b,
            sixth_power: v(base + 2 * a),
            cubic_not_quadratic: v(base - 2 * a),
            quadratic_not_cubic: [v(base - a - 3 * b), v(base - a + 3 * b)],
            neither: [v(base + a - 3 * b), v(base + a + 3 * b)],
        }
    }

    pub fn values(&self) -> [u64; 6] {
        [
            self.sixth_power,
            self.cubic_not_quadratic,
            self.quadratic_not_cubic[0],
            self.quadratic_not_cubic[1],
            self.neither[0],
            self.neither[1],
        ]
    }

    /// Values in ascending order.
    pub fn sorted(&self) -> [u64; 6] {
        let mut v = self.values();
        v.sort_unstable();
        v
    }

    pub fn contains(&self, n: u64) -> bool {
        self.values().contains(&n)
    }

    pub fn candidates(&self, class: ResidueClass) -> &[u64] {
        match class {
            ResidueClass::SixthPower => std::slice::from_ref(&self.sixth_power),
            ResidueClass::CubicNotQuadratic => std::slice::from_ref(&self.cubic_not_quadratic),
            ResidueClass::QuadraticNotCubic => &self.quadratic_not_cubic,
            ResidueClass::Neither => &self.neither,
        }
    }
}

pub(crate) fn six_orders_unchecked(p: u64) -> SixOrders {
    let dec = decompose3_unchecked(p);
    SixOrders::from_ab(p, dec.a, dec.b)
}

pub fn six_orders(p: u64) -> Result<SixOrders> {
    let dec = crate::quadform::decompose3(p)?;
    Ok(SixOrders::from_ab(p, dec.a, dec.b))
}

/// Exact `#E(F_p)` for `y^2 = x^3 + k`, sampling with [`DEFAULT_SEED`].
pub fn curve_order(p: u64, k: i64) -> Result<u64> {
    curve_order_with(p, k, &mut ChaCha8Rng::seed_from_u64(DEFAULT_SEED))
}

/// Exact `#E(F_p)` for `y^2 = x^3 + k`.
///
/// The residue class of `k` leaves at most two candidates. A sampled point
/// `P` with `[N]P != O` rules `N` out, and since the true order is one of the
/// two, eliminating either certifies the other. Points that every candidate
/// annihilates are inconclusive; after enough of them the order is counted
/// directly (small `p`) or read off the Jacobi sum.
pub fn curve_order_with<R: Rng + ?Sized>(p: u64, k: i64, rng: &mut R) -> Result<u64> {
    let k = check_field(p, k)?;
    if p % 3 == 2 {
        return Ok(p + 1);
    }
    let orders = six_orders_unchecked(p);
    let candidates = orders.candidates(classify(p, k));
    if let [only] = candidates {
        return Ok(*only);
    }
    let curve = Curve::new_unchecked(p, k);
    let mut alive = [true; 2];
    let budget = if p < NAIVE_FALLBACK_LIMIT {
        POINT_SAMPLES
    } else {
        EXTENDED_SAMPLES
    };
    for _ in 0..budget {
        let pt = curve.random_point(rng);
        for (i, &n) in candidates.iter().enumerate() {
            if alive[i] && curve.mul(&pt, n) != CurvePoint::Identity {
                alive[i] = false;
            }
        }
        match alive {
            [true, false] => return Ok(candidates[0]),
            [false, true] => return Ok(candidates[1]),
            [false, false] => return Err(Error::Uncertified { p, k }),
            [true, true] => {}
        }
    }
    if p < NAIVE_FALLBACK_LIMIT {
        naive_order(p, k as i64)
    } else if p < JACOBI_FALLBACK_LIMIT {
        order_via_jacobi(p, k as i64)
    } else {
        Err(Error::Uncertified { p, k })
    }
}

/// The smallest `k` in `[1, p)` whose curve has exactly `target` points.
pub fn find_k(p: u64, target: u64) -> Result<Option<u64>> {
    check_field(p, 1)?;
    if p % 3 == 2 {
        return Ok((target == p + 1).then_some(1));
    }
    let orders = six_orders_unchecked(p);
    if !orders.contains(target) {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for k in 1..p {
        let cands = orders.candidates(classify(p, k));
        if !cands.contains(&target) {
            continue;
        }
        if cands.len() == 1 || curve_order_with(p, k as i64, &mut rng)? == target {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
