//! Counting elliptic pairs `(p, q)_d` with `p <= q < X`, and the normalized
//! counts `Y ln^2 X / X` compared against `sqrt(d) / h(-d)^2`.

mod csv;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{isqrt, primes_up_to, PrimeTable};
use crate::curves::six_orders;
use crate::error::{Error, Result};
use crate::pairs::find_d;
use crate::quadform::{check_cm_discriminant, class_number};

pub use self::csv::{parse_csv, write_csv, CsvRow, CSV_HEADER};

/// Largest census bound accepted by [`count_pairs`]. The prime table for it
/// is about 60 MiB.
pub const CENSUS_LIMIT: u64 = 1_000_000_000;

/// Largest bound accepted by [`scan_census`], which tries every prime pair.
pub const SCAN_CENSUS_LIMIT: u64 = 1_000_000;

/// One row of the census table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub d: u64,
    pub h: u64,
    /// `sqrt(d) / h^2`
    pub xi: f64,
    #[serde(rename = "Y")]
    pub y: u64,
    pub c_hat: f64,
    #[serde(rename = "X")]
    pub x: u64,
}

impl CensusRecord {
    pub fn new(d: u64, h: u64, y: u64, x: u64) -> Self {
        CensusRecord {
            d,
            h,
            xi: xi(d, h),
            y,
            c_hat: cd_estimate(x, y),
            x,
        }
    }
}

pub fn xi(d: u64, h: u64) -> f64 {
    (d as f64).sqrt() / (h * h) as f64
}

/// `Y ln^2 X / X`.
pub fn cd_estimate(x: u64, y: u64) -> f64 {
    let l = (x as f64).ln();
    y as f64 * l * l / x as f64
}

fn check_bound(x: u64, max: u64) -> Result<()> {
    if x < 5 {
        return Err(Error::invalid(format!(
            "census bound X = {x} must be at least 5"
        )));
    }
    if x > max {
        return Err(Error::invalid(format!(
            "census bound X = {x} exceeds {max}"
        )));
    }
    Ok(())
}

/// Number of pairs `(p, q)_d` with `3 < p <= q < X`, both prime.
pub fn count_pairs(d: u64, x: u64) -> Result<u64> {
    check_bound(x, CENSUS_LIMIT)?;
    check_cm_discriminant(d)?;
    Ok(count_unchecked(d, x, &PrimeTable::new(x)))
}

/// [`count_pairs`] against a prebuilt table. A table shorter than `x` is
/// still correct, only slower.
pub fn count_pairs_in(d: u64, x: u64, primes: &PrimeTable) -> Result<u64> {
    check_bound(x, CENSUS_LIMIT)?;
    check_cm_discriminant(d)?;
    Ok(count_unchecked(d, x, primes))
}

fn count_unchecked(d: u64, x: u64, primes: &PrimeTable) -> u64 {
    if d == 3 {
        count_d3(x, primes)
    } else {
        count_by_representation(d, x, primes)
    }
}

// Each prime has one representation 4p = a^2 + d b^2 up to sign, so a pair
// with p < q is met exactly once, at a = q - p - 1 > 0. The anomalous pair
// (p, p) sits at a = -1 and is picked up alongside a = 1.
fn count_by_representation(d: u64, x: u64, primes: &PrimeTable) -> u64 {
    let four_x = 4 * x;
    let b_max = isqrt((four_x - 1) / d);
    (1..=b_max)
        .into_par_iter()
        .map(|b| {
            let db2 = d * b * b;
            let mut n = 0;
            let mut a = if b % 2 == 1 { 1 } else { 2 };
            while a * a + db2 < four_x {
                let p = (a * a + db2) / 4;
                if p > 3 && primes.is_prime(p) {
                    let q = p + 1 + a;
                    if q < x && primes.is_prime(q) {
                        n += 1;
                    }
                    if a == 1 {
                        n += 1;
                    }
                }
                a += 2;
            }
            n
        })
        .sum()
}

fn count_d3(x: u64, primes: &PrimeTable) -> u64 {
    // p = 1 (mod 3) and odd, so p = 1 (mod 6)
    (1..=(x - 2) / 6)
        .into_par_iter()
        .map(|i| 6 * i + 1)
        .filter(|&p| primes.is_prime(p))
        .map(|p| {
            let mut qs = six_orders(p).expect("p = 1 (mod 3)").values();
            qs.sort_unstable();
            let mut last = 0;
            let mut n = 0;
            for q in qs {
                if q != last && q >= p && q < x && primes.is_prime(q) {
                    n += 1;
                }
                last = q;
            }
            n
        })
        .sum()
}

/// Histogram of `d` over every prime pair `3 < p <= q < X` whose numerator is
/// positive. Quadratic in the prime count; an oracle for [`count_pairs`].
pub fn scan_census(x: u64) -> Result<BTreeMap<u64, u64>> {
    check_bound(x, SCAN_CENSUS_LIMIT)?;
    let table = PrimeTable::new(x);
    let ps: Vec<u64> = primes_up_to(x).into_iter().filter(|&p| p > 3).collect();
    Ok(ps
        .par_iter()
        .fold(BTreeMap::new, |mut hist, &p| {
            let mut q = p;
            while q < x {
                let t = (q - p) as i64 - 1;
                if t * t >= 4 * p as i64 {
                    break;
                }
                if table.is_prime(q) {
                    if let Some((d, _)) = find_d(p, q) {
                        *hist.entry(d).or_insert(0u64) += 1;
                    }
                }
                q += 2;
            }
            hist
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (d, n) in b {
                *a.entry(d).or_insert(0) += n;
            }
            a
        }))
}

/// Square-free `d = 3 (mod 8)` up to `d_max` with `h(-d) <= h_max`, sorted by
/// `(h, d)`.
pub fn census_discriminants(h_max: u64, d_max: u64) -> Vec<(u64, u64)> {
    let mut out: Vec<(u64, u64)> = (3..=d_max)
        .step_by(8)
        .filter_map(|d| class_number(d).ok().map(|h| (h, d)))
        .filter(|&(h, _)| h <= h_max)
        .collect();
    out.sort_unstable();
    out.into_iter().map(|(h, d)| (d, h)).collect()
}

/// Ordinary least squares fit `c_hat = slope * xi + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub n: usize,
}

impl LinearFit {
    pub fn fit(points: &[(f64, f64)]) -> Option<Self> {
        let n = points.len();
        if n < 2 {
            return None;
        }
        let mx = points.iter().map(|p| p.0).sum::<f64>() / n as f64;
        let my = points.iter().map(|p| p.1).sum::<f64>() / n as f64;
        let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        if sxx == 0.0 {
            return None;
        }
        let slope = sxy / sxx;
        Some(LinearFit {
            slope,
            intercept: my - slope * mx,
            n,
        })
    }
}

/// The `d = 3` row measured against `slope * xi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Outlier {
    pub d: u64,
    pub c_hat: f64,
    pub predicted: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table2 {
    pub x: u64,
    pub records: Vec<CensusRecord>,
    /// Fit over every row except `d = 3`.
    pub fit: Option<LinearFit>,
    pub outlier: Option<Outlier>,
}

/// Census over every discriminant of [`census_discriminants`].
pub fn table2(x: u64, h_max: u64, d_max: u64) -> Result<Table2> {
    check_bound(x, CENSUS_LIMIT)?;
    let primes = PrimeTable::new(x);
    let records: Vec<CensusRecord> = census_discriminants(h_max, d_max)
        .into_iter()
        .map(|(d, h)| CensusRecord::new(d, h, count_unchecked(d, x, &primes), x))
        .collect();
    let points: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.d != 3)
        .map(|r| (r.xi, r.c_hat))
        .collect();
    let fit = LinearFit::fit(&points);
    let outlier = match (fit, records.iter().find(|r| r.d == 3)) {
        (Some(f), Some(r)) => {
            let predicted = f.slope * r.xi;
            Some(Outlier {
                d: 3,
                c_hat: r.c_hat,
                predicted,
                ratio: r.c_hat / predicted,
            })
        }
        _ => None,
    };
    Ok(Table2 {
        x,
        records,
        fit,
        outlier,
    })
}
