//! Elliptic pairs, lists and cycles for curves with complex multiplication by
//! `Q(sqrt(-d))`, `d` square-free and `3 (mod 8)`.

pub mod arith;
pub mod census;
pub mod curves;
pub mod error;
pub mod lists_cycles;
pub mod pairs;
pub mod quadform;

pub use error::{Error, Result};
