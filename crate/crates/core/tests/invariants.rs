//! Property-based invariants of the analytic quantities.

use proptest::prelude::*;

use hcncorr::correlation::{zeta_cluster, zeta_ppp};
use hcncorr::csvfmt::g9;
use hcncorr::jsp::{jsp_bounds, jsp_ppp};
use hcncorr::presets;
use hcncorr::stats::{wilson, Z95};
use hcncorr::UserClass;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cluster_correlation_dominates(c in 0.0f64..6.0, r in 1.0f64..60.0, u in 0.0f64..10.0) {
        let radio = presets::correlation_radio();
        let zm = zeta_cluster(c, r, u, &radio).unwrap().zeta;
        let zp = zeta_ppp(u, &radio).unwrap().zeta;
        prop_assert!(zm >= zp - 1e-12);
        prop_assert!(zm <= 1.0);
    }

    #[test]
    fn ppp_jsp_monotone(beta in -10.0f64..10.0, n in 1u32..6, su in any::<bool>()) {
        let user = if su { UserClass::Su } else { UserClass::Mu };
        let at = |b: f64, n: u32| jsp_ppp(n, user, &presets::jsp_ppp(b).unwrap(), true).unwrap().value;
        let p = at(beta, n);
        prop_assert!((0.0..=1.0).contains(&p));
        prop_assert!(at(beta, n + 1) <= p + 1e-12);
        prop_assert!(at(beta + 1.0, n) <= p + 1e-12);
    }

    #[test]
    fn bounds_are_ordered(beta in -10.0f64..5.0, n in 1u32..4, socp in any::<bool>(), su in any::<bool>()) {
        let user = if su { UserClass::Su } else { UserClass::Mu };
        let m = if socp { presets::jsp_socp(beta) } else { presets::jsp_mcp(beta) }.unwrap();
        let (lo, hi) = jsp_bounds(n, user, &m).unwrap();
        prop_assert!(0.0 <= lo && lo <= hi && hi <= 1.0);
    }

    #[test]
    fn wilson_contains_estimate(k in 0u64..500, extra in 0u64..500) {
        let n = k + extra + 1;
        let (lo, hi) = wilson(k, n, Z95);
        let p = k as f64 / n as f64;
        prop_assert!(lo <= p + 1e-12 && p <= hi + 1e-12);
        prop_assert!(0.0 <= lo && hi <= 1.0);
    }

    #[test]
    fn g9_round_trips(x in -1e12f64..1e12) {
        let y: f64 = g9(x).parse().unwrap();
        prop_assert!((y - x).abs() <= 1e-8 * x.abs());
    }
}
