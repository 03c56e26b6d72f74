//! Frozen expected values, each checked against an oracle that is
//! independent of the formula path: outcome-tree enumeration for expected
//! values, bisection on the defining equation for thresholds.

mod common;

use common::{solve_alpha, solve_beta, tree_fs, tree_ps};
use deleg_core::{
    alpha_star_fs, alpha_star_ps, beta_double_star, beta_star, classify_region, decide_policy,
    expected_value_fs, expected_value_ps, DelegationParams, FsStatus, Mode,
};

const TOL: f64 = 1e-12;

fn assert_close(actual: f64, expected: f64, what: &str) {
    assert!(
        (actual - expected).abs() <= TOL,
        "{what}: expected {expected}, got {actual}"
    );
}

#[test]
fn expected_values_match_outcome_tree() {
    let cases = [
        (0.8, 0.9, 0.5, 1.0, -1.0),
        (0.5, 0.5, 0.3, 1.0, -1.0),
        (0.91, 0.85, 0.5, 1.0, -1.0),
        (0.7, 0.8, 0.5, 2.0, -3.0),
        (0.25, 0.95, 0.1, 0.7, -0.2),
    ];
    for (alpha, beta, v, gain, loss) in cases {
        let params = DelegationParams::builder()
            .alpha(alpha)
            .beta(beta)
            .v(v)
            .gain(gain)
            .loss(loss)
            .build()
            .unwrap();
        assert_close(
            expected_value_ps(&params).value(),
            tree_ps(alpha, gain, loss),
            "E_ps vs tree",
        );
        assert_close(
            expected_value_fs(&params).unwrap().value(),
            tree_fs(alpha, beta, gain, loss),
            "E_fs vs tree",
        );
    }
}

#[test]
fn generalized_fs_payoff_frozen_value() {
    // 0.7*0.8*2 + 0.3*0.2*(-3) = 1.12 - 0.18 = 0.94 by enumeration.
    assert_close(tree_fs(0.7, 0.8, 2.0, -3.0), 0.94, "tree oracle");
    let params = DelegationParams::builder()
        .alpha(0.7)
        .beta(0.8)
        .v(0.5)
        .gain(2.0)
        .loss(-3.0)
        .build()
        .unwrap();
    assert_close(expected_value_fs(&params).unwrap().value(), 0.94, "E_fs");
}

#[test]
fn ps_threshold_solves_indifference_equation() {
    // alpha_star_ps is where E_ps(alpha) = v.
    let solved = solve_alpha(|alpha| tree_ps(alpha, 1.0, -1.0) - 0.5);
    assert_close(solved, 0.75, "bisection oracle");
    assert_close(alpha_star_ps(0.5, 1.0, -1.0).unwrap(), solved, "formula");

    // Asymmetric payoffs: solve alpha*2 + (1-alpha)*(-1) = 0.5.
    let solved = solve_alpha(|alpha| tree_ps(alpha, 2.0, -1.0) - 0.5);
    assert_close(solved, 0.5, "bisection oracle");
    assert_close(alpha_star_ps(0.5, 2.0, -1.0).unwrap(), solved, "formula");
}

#[test]
fn fs_feasibility_threshold_solves_best_case_equation() {
    // alpha_star_fs is where the best-case payoff alpha*gain meets v.
    let solved = solve_alpha(|alpha| alpha * 2.0 - 0.5);
    assert_close(solved, 0.25, "bisection oracle");
    assert_close(alpha_star_fs(0.5, 2.0).unwrap(), solved, "formula");
    assert_close(alpha_star_fs(0.5, 1.0).unwrap(), 0.5, "default payoffs");
}

#[test]
fn beta_threshold_solves_engineer_indifference() {
    // Default payoffs: beta_star(0.6, v=0.5) = 0.9.
    let solved = solve_beta(0.6, 1.0, -1.0, 0.5);
    assert_close(solved, 0.9, "bisection oracle");
    assert_close(
        beta_star(0.6, 0.5, 1.0, -1.0).unwrap().raw(),
        solved,
        "formula",
    );

    // Raw threshold above 1 is reported infeasible but still matches the
    // extended solve.
    let solved = solve_beta(0.4, 1.0, -1.0, 0.5);
    assert_close(solved, 1.1, "bisection oracle");
    let t = beta_star(0.4, 0.5, 1.0, -1.0).unwrap();
    assert!(!t.is_admissible());
    assert_close(t.raw(), solved, "formula");

    // Asymmetric payoffs: solve E_fs(0.7, beta) = 0.3 with gain 2, loss -1.
    let solved = solve_beta(0.7, 2.0, -1.0, 0.3);
    assert_close(solved, 0.6 / 1.7, "bisection oracle");
    assert_close(
        beta_star(0.7, 0.3, 2.0, -1.0).unwrap().raw(),
        solved,
        "formula",
    );
}

#[test]
fn validation_dominance_threshold_solves_ps_indifference() {
    // beta_double_star is where E_fs(alpha, beta) = E_ps(alpha).
    let solved = solve_beta(0.7, 1.0, -1.0, tree_ps(0.7, 1.0, -1.0));
    assert_close(solved, 0.7, "bisection oracle");
    assert_close(beta_double_star(0.7, 1.0, -1.0).unwrap(), solved, "formula");

    // Heavier loss (gain 1, loss -3) lowers the threshold to 0.4375.
    let solved = solve_beta(0.7, 1.0, -3.0, tree_ps(0.7, 1.0, -3.0));
    assert_close(solved, 0.4375, "bisection oracle");
    assert_close(beta_double_star(0.7, 1.0, -3.0).unwrap(), solved, "formula");
}

#[test]
fn fs_status_agrees_with_argmax() {
    for (alpha, beta, v) in [
        (0.8, 0.95, 0.5),
        (0.8, 0.75, 0.5),
        (0.6, 0.95, 0.5),
        (0.4, 0.99, 0.5),
        (0.55, 0.8, 0.35),
    ] {
        let params = DelegationParams::fs(alpha, beta, v).unwrap();
        let label = classify_region(&params).unwrap();
        let chosen = decide_policy(&params).chosen;
        assert_eq!(
            label.fs_status == FsStatus::FsWins,
            chosen == Mode::FullSupport,
            "at alpha={alpha} beta={beta} v={v}"
        );
    }
}
