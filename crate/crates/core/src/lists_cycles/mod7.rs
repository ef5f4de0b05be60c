use serde::Serialize;

/// One row of the residue table: the six cycle values and their product mod 7.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Mod7Row {
    pub a: u8,
    pub b: u8,
    pub values: [u8; 6],
    pub product: u8,
}

const HALF: i64 = 4; // 2^{-1} mod 7

fn m7(x: i64) -> i64 {
    x.rem_euclid(7)
}

/// The six cycle values reduced mod 7 from `a, b` mod 7, halves taken as
/// multiplication by the inverse of 2.
pub fn mod7_row(a: u8, b: u8) -> [u8; 6] {
    let (a, b) = (a as i64 % 7, b as i64 % 7);
    let form = |x: i64, y: i64| m7(x * x + 3 * y * y);
    let half = |x: i64| m7(x * HALF);
    [
        form(a, b),
        form(half(a + 3 * b - 1), half(a - b + 1)),
        form(half(-a + 3 * b - 3), half(a + b + 1)),
        form(-a - 2, b),
        form(half(-a - 3 * b - 3), half(a - b + 1)),
        form(half(a - 3 * b - 1), half(a + b + 1)),
    ]
    .map(|v| v as u8)
}

pub fn mod7_product(a: u8, b: u8) -> u8 {
    mod7_row(a, b).iter().fold(1u8, |acc, &v| acc * v % 7)
}

/// All 49 residue classes, ordered by `(a, b)`.
pub fn mod7_table() -> Vec<Mod7Row> {
    (0..7u8)
        .flat_map(|a| (0..7u8).map(move |b| (a, b)))
        .map(|(a, b)| Mod7Row {
            a,
            b,
            values: mod7_row(a, b),
            product: mod7_product(a, b),
        })
        .collect()
}
