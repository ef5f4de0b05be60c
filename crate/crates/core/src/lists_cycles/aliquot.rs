use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::curves::{classify, curve_order_with, six_orders, SixOrders, DEFAULT_SEED};
use crate::error::{Error, Result};

pub const DEFAULT_ALIQUOT_LIMIT: u64 = 10_000_000;

/// Smallest `k >= 1` such that `y^2 = x^3 + k` has exactly `cycle[i + 1]` points
/// over `F_{cycle[i]}` for every `i`, wrapping around at the end.
///
/// The order given is the one used; rotate or reverse the cycle first to
/// pick its starting prime and direction. Repeated primes with different
/// successors can never be realised by one curve and fail immediately.
pub fn aliquot_k(cycle: &[u64], limit: u64) -> Result<u64> {
    let n = cycle.len();
    if n < 2 {
        return Err(Error::invalid("an aliquot cycle needs at least two primes"));
    }
    let steps: Vec<(u64, u64, SixOrders)> = cycle
        .iter()
        .enumerate()
        .map(|(i, &p)| Ok((p, cycle[(i + 1) % n], six_orders(p)?)))
        .collect::<Result<_>>()?;
    for (i, &(p, next, ref orders)) in steps.iter().enumerate() {
        let conflicting = steps[..i]
            .iter()
            .any(|&(q, other, _)| q == p && other != next);
        if conflicting || !orders.contains(next) {
            return Err(Error::NotFound { limit });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    'k: for k in 1..=limit {
        for &(p, next, ref orders) in &steps {
            let residue = k % p;
            if residue == 0 {
                continue 'k;
            }
            let candidates = orders.candidates(classify(p, residue));
            if !candidates.contains(&next) {
                continue 'k;
            }
            if candidates.len() > 1 && curve_order_with(p, residue as i64, &mut rng)? != next {
                continue 'k;
            }
        }
        return Ok(k);
    }
    Err(Error::NotFound { limit })
}
