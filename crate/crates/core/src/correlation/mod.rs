//! Interference moments and spatial-temporal correlation coefficients.

mod kernel;
mod mc;
mod moments;
mod zeta;

pub use kernel::{
    cross_integral, g2_integral, g_eps, g_integral, kernel_scale, lens_weighted_integral,
    radial_integral,
};
pub use mc::{cluster_pair, estimate_zeta_mc, sample_tier, smoothed_interference, MIN_ZETA_TRIALS};
pub use moments::{
    f_approx, f_exact, mean_interference, mean_product, mean_product_with_f, second_moment,
};
pub use zeta::{
    theta_prime, zeta_cluster, zeta_cluster_approx, zeta_cluster_with_f, zeta_from_parts, zeta_ppp,
    zeta_tier, CorrelationReport, ZetaMethod, REPORT_HEADER,
};
