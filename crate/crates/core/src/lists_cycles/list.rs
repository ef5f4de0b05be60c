use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_prime, PrimeIter};
use crate::error::{Error, Result};
use crate::pairs::is_pair;
use crate::quadform::{check_cm_discriminant, cornacchia_4p, max_allowable};

/// An ascending chain of primes over `d > 3`, each consecutive pair an
/// elliptic pair. Member `i` (0-based) satisfies `4p_i = (a1 + 2i)^2 + d b^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EllipticList {
    pub d: u64,
    pub primes: Vec<u64>,
    pub a1: i64,
    pub b: i64,
}

impl EllipticList {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Checks the pair relation along the list and the progression of `a`.
    pub fn verify(&self) -> bool {
        let progression = self.primes.iter().enumerate().all(|(i, &p)| {
            let a = (self.a1 + 2 * i as i64) as i128;
            4 * p as i128 == a * a + self.d as i128 * (self.b * self.b) as i128
        });
        let pairs = self.primes.windows(2).all(|w| is_pair(w[0], w[1], self.d));
        progression && pairs
    }
}

fn check_list_domain(d: u64) -> Result<()> {
    check_cm_discriminant(d)?;
    if d == 3 {
        return Err(Error::domain(
            "lists over d = 3 are built from cycles, not build_list",
        ));
    }
    Ok(())
}

fn chain_from(p1: u64, a1: u64, b: u64, d: u64) -> EllipticList {
    let mut primes = vec![p1];
    let (mut p, mut a) = (p1, a1);
    loop {
        let q = p + 1 + a;
        if !is_prime(q) {
            break;
        }
        primes.push(q);
        p = q;
        a += 2;
    }
    EllipticList {
        d,
        primes,
        a1: a1 as i64,
        b: b as i64,
    }
}

/// The maximal ascending list starting at `p1`: step `q = p + 1 + a`, `a += 2`
/// while `q` stays prime.
pub fn build_list(p1: u64, d: u64) -> Result<EllipticList> {
    check_list_domain(d)?;
    if p1 <= 3 || !is_prime(p1) {
        return Err(Error::invalid(format!(
            "{p1} is not a prime greater than 3"
        )));
    }
    let (a, b) = cornacchia_4p(p1, d)
        .ok_or_else(|| Error::invalid(format!("{p1} has no representation 4p = a^2 + {d} b^2")))?;
    Ok(chain_from(p1, a, b, d))
}

/// Best list found by [`longest_list`]; `start` is `None` when no prime below
/// the bound is represented by the form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LongestList {
    pub length: usize,
    pub start: Option<u64>,
}

/// Longest [`build_list`] over all starts `p1 < bound`; ties go to the smaller start.
pub fn longest_list(d: u64, bound: u64) -> Result<LongestList> {
    check_list_domain(d)?;
    let starts: Vec<u64> = PrimeIter::new(bound).filter(|&p| p > 3).collect();
    let best = starts
        .par_iter()
        .filter_map(|&p| cornacchia_4p(p, d).map(|(a, b)| (chain_from(p, a, b, d).len(), p)))
        .reduce_with(|x, y| {
            if (x.0, std::cmp::Reverse(x.1)) >= (y.0, std::cmp::Reverse(y.1)) {
                x
            } else {
                y
            }
        });
    Ok(match best {
        Some((length, start)) => LongestList {
            length,
            start: Some(start),
        },
        None => LongestList {
            length: 0,
            start: None,
        },
    })
}

/// `M(d) - L̂(d)`, an upper bound on the discrepancy `f(d)`.
pub fn discrepancy(d: u64, bound: u64) -> Result<i64> {
    let longest = longest_list(d, bound)?;
    Ok(max_allowable(d) as i64 - longest.length as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_polynomial_list() {
        let list = build_list(41, 163).unwrap();
        assert_eq!(list.len(), 40);
        assert_eq!(list.primes[..3], [41, 43, 47]);
        assert_eq!(*list.primes.last().unwrap(), 1601);
        assert!(list.verify());
        for (i, &p) in list.primes.iter().enumerate() {
            let i = i as u64;
            assert_eq!(p, i * i + i + 41);
        }
    }

    #[test]
    fn short_lists() {
        assert_eq!(build_list(31, 11).unwrap().primes, vec![31, 37]);
        assert_eq!(build_list(5, 11).unwrap().primes, vec![5]);
        assert!(matches!(build_list(7, 11), Err(Error::InvalidArgument(_))));
        assert!(matches!(build_list(7, 3), Err(Error::Domain(_))));
        assert!(build_list(7, 15).is_err());
    }

    #[test]
    fn longest_examples() {
        assert_eq!(
            longest_list(163, 100).unwrap(),
            LongestList {
                length: 40,
                start: Some(41)
            }
        );
        assert_eq!(
            longest_list(11, 10_000).unwrap(),
            LongestList {
                length: 2,
                start: Some(31)
            }
        );
        assert_eq!(
            longest_list(19, 10_000).unwrap(),
            LongestList {
                length: 4,
                start: Some(5)
            }
        );
        assert_eq!(
            longest_list(43, 10_000).unwrap(),
            LongestList {
                length: 10,
                start: Some(11)
            }
        );
        assert_eq!(
            longest_list(67, 10_000).unwrap(),
            LongestList {
                length: 16,
                start: Some(17)
            }
        );
        assert_eq!(
            longest_list(163, 41).unwrap(),
            LongestList {
                length: 0,
                start: None
            }
        );
    }

    #[test]
    fn discrepancy_examples() {
        assert_eq!(discrepancy(163, 100).unwrap(), 1);
        assert_eq!(discrepancy(11, 10_000).unwrap(), 1);
        assert_eq!(discrepancy(43, 10_000).unwrap(), 1);
    }
}
