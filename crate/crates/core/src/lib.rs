// Guards are written `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bspline;
pub mod cli;
pub mod error;
pub mod frame_bounds;
pub mod poh;
pub mod poly;
pub mod quadrature;
pub mod stability;
pub mod verifier;
pub mod window;

pub use error::{Error, Result};
