//! A wrong density in the closed form must make the mean-interference
//! check fail.

use hcncorr::validation::{run_criterion, ValidationOptions};

#[test]
fn perturbed_density_fails_mean_interference() {
    let o = ValidationOptions {
        mean_trials: 400,
        mean_probes: 8,
        lambda_perturbation: 1.1,
        ..Default::default()
    };
    let r = run_criterion(5, &o);
    assert!(!r.passed, "{}", r.line());
}
