//! Exact integer arithmetic shared by every other module.
//!
//! All values are machine integers. Products that can leave the 64-bit range
//! are carried out in `u128`/`i128`; nothing here allocates big integers.

mod modular;
mod prime;
mod square;

pub use modular::{crt, inv_mod, kronecker, mod_sqrt, mul_mod, pow_mod};
pub use prime::{is_prime, primes_up_to, PrimeIter, PrimeTable, SEGMENT_BITS};
pub use square::{is_square, isqrt, squarefree_part, SquarefreeSplit};
