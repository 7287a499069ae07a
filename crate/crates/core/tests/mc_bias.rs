use torsion::domain::Domain;
use torsion::mc::mc_exit_time_with;

// Exact value at the midpoint of (0,1) is 1/8.
#[test]
fn crossing_test_removes_coarse_step_bias() {
    let d = Domain::interval(0.0, 1.0).unwrap();
    let dt = 1e-3;
    let naive = mc_exit_time_with(&d, &[0.5], 20_000, dt, 9, false).unwrap();
    let corrected = mc_exit_time_with(&d, &[0.5], 20_000, dt, 9, true).unwrap();
    assert!(naive.mean_exit - 0.125 > 3.0 * naive.stderr, "{naive:?}");
    assert!((corrected.mean_exit - 0.125).abs() < 3.0 * corrected.stderr, "{corrected:?}");
}
