use super::modular::{mul_mod, pow_mod};

/// Bases for which strong-probable-prime testing is exact on all of `u64`.
const MR_BASES: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in SMALL_PRIMES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    if n < 37 * 37 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for base in MR_BASES {
        let a = base % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Bits per sieve segment (odd numbers only, so one segment spans twice this).
pub const SEGMENT_BITS: usize = 1 << 18;

fn base_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Marks odd composites of `[lo, lo + 2 * len)` (`lo` odd) in `seg`, where bit `i`
/// stands for `lo + 2i`. Returns nothing; `seg[i] == true` means composite.
fn mark_segment(lo: u64, seg: &mut [bool], base: &[u64]) {
    seg.iter_mut().for_each(|b| *b = false);
    let hi = lo + 2 * seg.len() as u64;
    for &p in base.iter().skip(1) {
        if p * p >= hi {
            break;
        }
        let mut start = (p * p).max(lo.div_ceil(p) * p);
        if start % 2 == 0 {
            start += p;
        }
        let mut j = ((start - lo) / 2) as usize;
        while j < seg.len() {
            seg[j] = true;
            j += p as usize;
        }
    }
}

/// Streaming segmented sieve over the primes below a bound.
///
/// Memory is one segment plus the primes up to the square root of the bound.
pub struct PrimeIter {
    limit: u64,
    base: Vec<u64>,
    seg: Vec<bool>,
    seg_lo: u64,
    pos: usize,
    emitted_two: bool,
}

impl PrimeIter {
    pub fn new(limit: u64) -> Self {
        Self::with_segment(limit, SEGMENT_BITS)
    }

    pub fn with_segment(limit: u64, segment_bits: usize) -> Self {
        let base = base_primes(super::isqrt(limit) + 1);
        let mut it = PrimeIter {
            limit,
            base,
            seg: vec![false; segment_bits.max(1)],
            seg_lo: 1,
            pos: 0,
            emitted_two: false,
        };
        mark_segment(it.seg_lo, &mut it.seg, &it.base);
        // 1 is not prime
        it.seg[0] = true;
        it
    }
}

impl Iterator for PrimeIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if !self.emitted_two {
            self.emitted_two = true;
            if self.limit > 2 {
                return Some(2);
            }
            return None;
        }
        loop {
            if self.pos == self.seg.len() {
                self.seg_lo += 2 * self.seg.len() as u64;
                if self.seg_lo >= self.limit {
                    return None;
                }
                mark_segment(self.seg_lo, &mut self.seg, &self.base);
                self.pos = 0;
            }
            let n = self.seg_lo + 2 * self.pos as u64;
            if n >= self.limit {
                return None;
            }
            let composite = self.seg[self.pos];
            self.pos += 1;
            if !composite {
                return Some(n);
            }
        }
    }
}

/// All primes `p < limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    PrimeIter::new(limit).collect()
}

/// Bitset of the primes below a bound, for O(1) membership tests in hot loops.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    /// Bit `i` is set when `2i + 1` is prime.
    odd_bits: Vec<u64>,
}

impl PrimeTable {
    pub fn new(limit: u64) -> Self {
        let words = (limit / 2 / 64 + 1) as usize;
        let mut odd_bits = vec![0u64; words];
        for p in PrimeIter::new(limit).skip(1) {
            let i = (p / 2) as usize;
            odd_bits[i / 64] |= 1 << (i % 64);
        }
        PrimeTable { limit, odd_bits }
    }

    /// Exclusive upper bound of the table.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Primality of `n`; falls back to Miller-Rabin beyond the table.
    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        if n >= self.limit {
            return is_prime(n);
        }
        if n.is_multiple_of(2) {
            return n == 2;
        }
        let i = (n / 2) as usize;
        self.odd_bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> u64 {
        self.odd_bits
            .iter()
            .map(|w| w.count_ones() as u64)
            .sum::<u64>()
            + u64::from(self.limit > 2)
    }
}
