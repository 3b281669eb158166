//! Edge-effect control and scheduling invariance of the simulator.

use hcncorr::geometry::association_radii;
use hcncorr::presets;
use hcncorr::simkit::{simulate_jsp_sweep, simulate_retransmission, SchemeDescriptor, SimConfig};
use hcncorr::UserClass;

#[test]
fn doubling_the_window_stays_inside_the_interval() {
    for user in [UserClass::Mu, UserClass::Su] {
        let m = presets::jsp_mcp(0.0).unwrap();
        let d_m = association_radii(&m).unwrap().0;
        let base = SimConfig::new(m, user)
            .with_trials(20_000)
            .with_slots(2)
            .with_seed(3);
        let a = simulate_jsp_sweep(&base.with_window(10.0 * d_m), &[0.0]).unwrap();
        let b = simulate_jsp_sweep(&base.with_window(20.0 * d_m), &[0.0]).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(
                (x.estimate - y.estimate).abs() < x.half_width(),
                "{user:?} n={}: {} vs {}",
                x.n,
                x.estimate,
                y.estimate
            );
        }
    }
}

#[test]
fn worker_count_does_not_matter() {
    let pool = |n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
    };
    let cfg = SimConfig::new(presets::jsp_socp(0.0).unwrap(), UserClass::Su).with_trials(500);
    let one = pool(1).install(|| simulate_jsp_sweep(&cfg, &[-5.0, 0.0]).unwrap());
    let four = pool(4).install(|| simulate_jsp_sweep(&cfg, &[-5.0, 0.0]).unwrap());
    assert_eq!(one, four);
    let r = SimConfig::new(presets::retrans_mcp(3.0).unwrap(), UserClass::Su)
        .with_trials(100)
        .with_slots(10)
        .with_scheme(SchemeDescriptor::correlation_aware());
    let one = pool(1).install(|| simulate_retransmission(&r).unwrap());
    let four = pool(4).install(|| simulate_retransmission(&r).unwrap());
    assert_eq!(one, four);
}

#[test]
fn joint_success_nested_in_n_and_beta() {
    let cfg = SimConfig::new(presets::jsp_mcp(0.0).unwrap(), UserClass::Su)
        .with_trials(2_000)
        .with_seed(8);
    let est = simulate_jsp_sweep(&cfg, &[-5.0, 0.0, 5.0]).unwrap();
    for w in est.windows(2) {
        if w[0].beta_db == w[1].beta_db {
            assert!(w[1].successes <= w[0].successes);
        }
    }
    for n in 1..=4 {
        let by_beta: Vec<u64> = est
            .iter()
            .filter(|e| e.n == n)
            .map(|e| e.successes)
            .collect();
        assert!(by_beta.windows(2).all(|w| w[1] <= w[0]));
    }
}
