//! The twisted base algebra `A`, the ring `A[ξ]` and twisted powers.

mod aelem;
mod algebra;
mod xi;

pub use aelem::AElem;
pub use algebra::{TwistedAlgebra, Variant};
pub use xi::{q1_comul_check, sigma_xi, PInfQuotient, Twist, XiPoly};
pub(crate) use xi::{strip, write_series};
