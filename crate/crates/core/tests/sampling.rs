//! Intensities and cluster structure of the point-process samplers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hcncorr::geometry::{
    sample_mcp, sample_ppp, sample_socp, MatClusterSpec, SocpSpec, Tier, Window,
};

fn mean_count(reps: usize, mut draw: impl FnMut(&mut ChaCha8Rng) -> usize) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let xs: Vec<f64> = (0..reps).map(|_| draw(&mut rng) as f64).collect();
    let m = xs.iter().sum::<f64>() / reps as f64;
    let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (reps - 1) as f64;
    (m, (v / reps as f64).sqrt())
}

#[test]
fn ppp_intensity() {
    let w = Window::centered(50.0).unwrap();
    let (m, se) = mean_count(2000, |r| sample_ppp(0.02, &w, Tier::Sbs, r).unwrap().len());
    let want = 0.02 * w.area();
    assert!((m - want).abs() < 4.0 * se, "{m} {want} {se}");
}

#[test]
fn mcp_intensity_and_cluster_radius() {
    let w = Window::centered(60.0).unwrap();
    let spec = MatClusterSpec::new(0.002, 4.0, 8.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let pp = sample_mcp(&spec, &w, &mut rng).unwrap();
        for s in &pp.sites {
            let p = pp.parents[s.parent.unwrap() as usize];
            assert!((s.pos[0] - p[0]).hypot(s.pos[1] - p[1]) <= spec.radius);
            assert!(w.contains(s.pos));
        }
    }
    let (m, se) = mean_count(2000, |r| sample_mcp(&spec, &w, r).unwrap().len());
    let want = spec.density() * w.area();
    assert!((m - want).abs() < 4.0 * se, "{m} {want} {se}");
}

#[test]
fn socp_intensity_and_tags() {
    let w = Window::centered(80.0).unwrap();
    let spec = SocpSpec::new(2e-4, 6.0, 30.0, 15.0, 3.0, 5.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let pp = sample_socp(&spec, &w, &mut rng).unwrap();
        for s in &pp.sites {
            let q = pp.first_order[s.first_order.unwrap() as usize];
            assert!((s.pos[0] - q[0]).hypot(s.pos[1] - q[1]) <= spec.second_order_radius);
        }
    }
    let (m, se) = mean_count(3000, |r| sample_socp(&spec, &w, r).unwrap().len());
    let want = spec.density() * w.area();
    assert!((m - want).abs() < 4.0 * se, "{m} {want} {se}");
}
