//! Special functions and quadrature primitives.

mod gamma;
mod hyper;
mod interp;
mod legendre;
mod quad;

pub use gamma::{gamma_fn, ln_gamma};
pub use hyper::hyp2f1;
pub use interp::MonotoneCubic;
pub use legendre::GaussLegendre;
pub(crate) use quad::ErrorSlot;
pub use quad::{
    integrate_1d, integrate_truncated, integrate_with_breaks, Estimate, QuadratureSpec,
};
