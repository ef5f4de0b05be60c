//! Elliptic lists over `d > 3` and elliptic 6-cycles over `d = 3`.

mod aliquot;
mod cycle;
mod list;
mod mod7;

pub use aliquot::{aliquot_k, DEFAULT_ALIQUOT_LIMIT};
pub use cycle::{
    cycle_from_ab, cycle_values, find_6cycles, find_proper_6cycles_unfiltered, CycleKind, SixCycle,
};
pub use list::{build_list, discrepancy, longest_list, EllipticList, LongestList};
pub use mod7::{mod7_product, mod7_row, mod7_table, Mod7Row};
