//! Independent oracles for the closed forms under test. These enumerate the
//! outcome tree or solve the defining equations numerically; they share no
//! code with the library's formula path.
#![allow(dead_code)] // each test binary uses a different subset

/// Expected PS payoff by explicit enumeration of the two outcomes.
pub fn tree_ps(alpha: f64, gain: f64, loss: f64) -> f64 {
    let outcomes = [(alpha, gain), (1.0 - alpha, loss)];
    outcomes.iter().map(|(p, pay)| p * pay).sum()
}

/// Expected FS payoff by explicit enumeration of the four
/// correctness-by-verdict outcomes; rejected branches pay zero.
pub fn tree_fs(alpha: f64, beta: f64, gain: f64, loss: f64) -> f64 {
    let outcomes = [
        (alpha * beta, gain),                 // correct, accepted
        ((1.0 - alpha) * (1.0 - beta), loss), // incorrect, accepted
        (alpha * (1.0 - beta), 0.0),          // correct, rejected
        ((1.0 - alpha) * beta, 0.0),          // incorrect, rejected
    ];
    outcomes.iter().map(|(p, pay)| p * pay).sum()
}

/// Root of a strictly increasing function on `[lo, hi]` by bisection.
pub fn bisect_increasing(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Root of a strictly increasing function of alpha: used for accuracy
/// thresholds.
pub fn solve_alpha(f: impl Fn(f64) -> f64) -> f64 {
    bisect_increasing(1e-9, 1.0 - 1e-9, f)
}

/// Beta solving `tree_fs(alpha, beta, ..) = target`; E_fs is strictly
/// increasing in beta.
pub fn solve_beta(alpha: f64, gain: f64, loss: f64, target: f64) -> f64 {
    bisect_increasing(0.0, 2.0, |beta| tree_fs(alpha, beta, gain, loss) - target)
}
