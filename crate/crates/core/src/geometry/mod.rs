//! Point processes, samplers and geometric kernels.

mod kernels;
mod process;
mod sample;

pub(crate) use kernels::lens_area_unchecked;
pub use kernels::{
    association_radii, first_order_density, lens_area, matern_density, pdf_serving_distance,
    serving_distance_quantile,
};
pub use process::{MatClusterSpec, PointPattern, Site, SocpSpec, Tier, Window};
pub use sample::{
    first_order_offset, poisson, reverse_gaussian_radius, sample_mcp, sample_ppp, sample_socp,
    socp_from_parents, uniform_in_disk,
};
