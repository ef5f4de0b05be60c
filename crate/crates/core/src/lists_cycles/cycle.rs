use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_prime, isqrt};
use crate::error::{Error, Result};
use crate::pairs::is_pair;

/// Which 6-cycles a search returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CycleKind {
    /// Six distinct primes.
    Proper,
    /// `p1 = p2`, `p4 = p5`, `p3 = p6`: three anomalous-linked primes, each twice.
    Anomalous,
}

/// Six values generated from `p1 = a^2 + 3b^2` (`a = -1 mod 3`, `a + b` odd).
///
/// The sign of `b` fixes the orientation: `p2 = p1 + 1 + a - 3b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SixCycle {
    pub a: i64,
    pub b: i64,
    pub values: [u64; 6],
    pub proper: bool,
    pub anomalous: bool,
}

fn sq(x: i64) -> i64 {
    x * x
}

/// The six closed-form values for a generator `(a, b)`.
pub fn cycle_values(a: i64, b: i64) -> Result<[u64; 6]> {
    if a.rem_euclid(3) != 2 {
        return Err(Error::invalid(format!("a = {a} is not -1 mod 3")));
    }
    if (a + b).rem_euclid(2) != 1 {
        return Err(Error::invalid(format!("a + b = {} is not odd", a + b)));
    }
    let v = [
        sq(a) + 3 * sq(b),
        sq((a + 3 * b - 1) / 2) + 3 * sq((a - b + 1) / 2),
        sq((-a + 3 * b - 3) / 2) + 3 * sq((a + b + 1) / 2),
        sq(-a - 2) + 3 * sq(b),
        sq((-a - 3 * b - 3) / 2) + 3 * sq((a - b + 1) / 2),
        sq((a - 3 * b - 1) / 2) + 3 * sq((a + b + 1) / 2),
    ];
    Ok(v.map(|x| x as u64))
}

fn links_are_pairs(v: &[u64; 6]) -> bool {
    (0..6).all(|i| is_pair(v[i], v[(i + 1) % 6], 3))
}

/// Evaluates the cycle for `(a, b)` and its properness/anomalous flags. A flag
/// is set only when all six values are primes above 3 and every link,
/// including `p6 -> p1`, is a pair over 3.
pub fn cycle_from_ab(a: i64, b: i64) -> Result<SixCycle> {
    let values = cycle_values(a, b)?;
    let all_prime = values.iter().all(|&p| p > 3 && is_prime(p));
    let mut sorted = values;
    sorted.sort_unstable();
    let distinct = sorted.windows(2).all(|w| w[0] != w[1]);
    let pattern = values[0] == values[1] && values[3] == values[4] && values[2] == values[5];
    let linked = all_prime && links_are_pairs(&values);
    Ok(SixCycle {
        a,
        b,
        values,
        proper: linked && distinct,
        anomalous: linked && pattern,
    })
}

impl SixCycle {
    pub fn min_value(&self) -> u64 {
        *self.values.iter().min().expect("six values")
    }

    pub fn max_value(&self) -> u64 {
        *self.values.iter().max().expect("six values")
    }

    /// The values starting at index `start`, same orientation.
    pub fn rotated(&self, start: usize) -> [u64; 6] {
        std::array::from_fn(|i| self.values[(start + i) % 6])
    }

    /// The values traversed backwards from index `start`.
    pub fn reversed(&self, start: usize) -> [u64; 6] {
        std::array::from_fn(|i| self.values[(start + 6 - i) % 6])
    }

    /// Lexicographically smallest rotation or reflection; equal exactly for
    /// the same cycle.
    pub fn canonical(&self) -> [u64; 6] {
        (0..6)
            .flat_map(|s| [self.rotated(s), self.reversed(s)])
            .min()
            .expect("twelve arrangements")
    }

    /// `p_i - p_{i+1} = p_{i+4} - p_{i+3}` on every cyclic 5-window.
    pub fn window_identity_holds(&self) -> bool {
        let v = self.values.map(|x| x as i64);
        (0..6).all(|i| v[i] - v[(i + 1) % 6] == v[(i + 4) % 6] - v[(i + 3) % 6])
    }

    fn matches(&self, kind: CycleKind) -> bool {
        match kind {
            CycleKind::Proper => self.proper,
            CycleKind::Anomalous => self.anomalous,
        }
    }
}

/// Generator preference among the twelve `(a, b)` describing one cycle:
/// positive `a` first, then the smallest `|a|`, then positive `b`.
fn generator_rank(c: &SixCycle) -> (bool, i64, bool) {
    (c.a <= 0, c.a.abs(), c.b <= 0)
}

/// All 6-cycles of the requested kind whose smallest member is below `bound`,
/// sorted by smallest member.
///
/// Proper cycles are searched over `a = -1 (mod 21)` and `b = 0 (mod 7)`: every
/// member of a proper cycle has `a = -1 (mod 7)` and `7 | b`, otherwise one of the
/// six values is divisible by 7. Anomalous cycles need `p1 = p2`, i.e.
/// `a = 3b - 1`, which makes the search one-dimensional. Every member is the
/// `p1` of some generator, so bounding `p1 < bound` reaches each cycle through
/// its least member.
pub fn find_6cycles(bound: u64, kind: CycleKind) -> Vec<SixCycle> {
    let generators: Vec<(i64, i64)> = match kind {
        CycleKind::Proper => {
            let b_max = isqrt(bound / 3) as i64 + 1;
            (-b_max / 7..=b_max / 7)
                .map(|j| 7 * j)
                .flat_map(|b| {
                    let a_max = isqrt(bound.saturating_sub(3 * (b * b) as u64)) as i64 + 1;
                    // a = 20 (mod 21)
                    let first = -a_max - (-a_max - 20).rem_euclid(21);
                    (0..)
                        .map(move |i| first + 21 * i)
                        .take_while(move |&a| a <= a_max)
                        .filter(move |&a| (a + b) % 2 != 0)
                        .map(move |a| (a, b))
                })
                .collect()
        }
        CycleKind::Anomalous => {
            let b_max = isqrt(bound / 12) as i64 + 1;
            (-b_max..=b_max).map(|b| (3 * b - 1, b)).collect()
        }
    };
    search(generators, bound, kind)
}

/// Same contract as [`find_6cycles`] for proper cycles, scanning every `(a, b)`
/// with `a = -1 (mod 3)` and no mod-7 filter. Used to check the filter.
pub fn find_proper_6cycles_unfiltered(bound: u64) -> Vec<SixCycle> {
    let b_max = isqrt(bound / 3) as i64 + 1;
    let a_max = isqrt(bound) as i64 + 1;
    let generators: Vec<(i64, i64)> = (-b_max..=b_max)
        .flat_map(|b| {
            (-a_max..=a_max)
                .filter(move |&a| a.rem_euclid(3) == 2 && (a + b) % 2 != 0)
                .map(move |a| (a, b))
        })
        .collect();
    search(generators, bound, CycleKind::Proper)
}

fn search(generators: Vec<(i64, i64)>, bound: u64, kind: CycleKind) -> Vec<SixCycle> {
    let found: Vec<SixCycle> = generators
        .into_par_iter()
        .filter(|&(a, b)| ((a * a + 3 * b * b) as u64) < bound)
        .filter_map(|(a, b)| cycle_from_ab(a, b).ok())
        .filter(|c| c.matches(kind) && c.min_value() < bound)
        .collect();
    let mut by_cycle: BTreeMap<(u64, [u64; 6]), SixCycle> = BTreeMap::new();
    for c in found {
        let key = (c.min_value(), c.canonical());
        match by_cycle.get(&key) {
            Some(kept) if generator_rank(kept) <= generator_rank(&c) => {}
            _ => {
                by_cycle.insert(key, c);
            }
        }
    }
    by_cycle.into_values().collect()
}
