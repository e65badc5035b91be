//! The randomized oracle over unconstrained POVMs against the symmetric family.

use pyramid_core::optimize::{optimize_ims_default, run_oracle, OracleConfig};
use pyramid_core::{accessible_info_oracle, make_ensemble, max_success_oracle, Execution};

#[test]
fn oracle_matches_family_at_moderate_overlap() {
    let ens = make_ensemble(3, 0.5).unwrap();
    let family = optimize_ims_default(&ens);
    let oracle = accessible_info_oracle(&ens, 6, 50, 42, false).unwrap();
    assert!(
        (oracle.i_best - family.i_ims).abs() < 1e-3,
        "{oracle:?} vs {family:?}"
    );
    assert!(oracle.i_best <= ens.holevo_chi() + 1e-9);
    assert_eq!(oracle.restarts, 50);
    assert!(oracle.converged_runs > 0);
}

#[test]
fn oracle_finds_axis_advantage() {
    // Only N outcomes cannot express the axis outcome; N(N+1)/2 can.
    let ens = make_ensemble(4, 0.9).unwrap();
    let family = optimize_ims_default(&ens);
    assert!(family.delta_i > 1e-3);
    let oracle = accessible_info_oracle(&ens, 10, 12, 1, false).unwrap();
    assert!(oracle.i_best > family.i_srm + 1e-3);
    assert!((oracle.i_best - family.i_ims).abs() < 1e-3);
}

#[test]
fn oracle_is_deterministic_across_execution_modes() {
    let ens = make_ensemble(3, 0.8).unwrap();
    let mut cfg = OracleConfig::information(3, 8, 9);
    cfg.execution = Execution::Sequential;
    let seq = run_oracle(&ens, &cfg).unwrap();
    cfg.execution = Execution::Parallel;
    let par = run_oracle(&ens, &cfg).unwrap();
    assert_eq!(seq.i_best.to_bits(), par.i_best.to_bits());
    assert_eq!(seq, par);
}

#[test]
fn success_oracle_matches_srm() {
    for (dim, gamma) in [(3, 0.5), (4, 0.7)] {
        let ens = make_ensemble(dim, gamma).unwrap();
        let p_srm = (ens.comp_edge() + ens.comp_flat()).powi(2);
        let best = max_success_oracle(&ens, 20, 42).unwrap();
        assert!(
            best >= p_srm - 1e-9 || (p_srm - best) < 1e-6,
            "{best} vs {p_srm}"
        );
        assert!(best <= p_srm + 1e-3, "{best} vs {p_srm}");
    }
}

#[test]
fn complex_search_does_not_exceed_holevo() {
    let ens = make_ensemble(3, 0.7).unwrap();
    let r = accessible_info_oracle(&ens, 6, 4, 3, true).unwrap();
    assert!(r.i_best <= ens.holevo_chi() + 1e-9);
    assert!(r.i_best > 0.3);
}
