//! Curves `y^2 = x^3 + k` over prime fields: the group law, exact group
//! orders from the sextic residue class of `k`, and two independent oracles
//! (direct point counting and the Jacobi sum `J(chi_2, chi_3)`).

mod jacobi;
mod order;
mod point;

pub use jacobi::{jacobi_sum, order_via_jacobi, primitive_root, Eisenstein};
pub use order::{
    classify, curve_order, curve_order_with, find_k, naive_order, naive_orders, six_orders,
    ResidueClass, SixOrders, DEFAULT_SEED, NAIVE_FALLBACK_LIMIT,
};
pub use point::{ec_mul, Curve, CurvePoint};
