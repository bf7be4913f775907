//! Upper bound for spanning trees of the double chain: the chain forests
//! times the interior forest, maximized over the number of interior edges.

use super::entropy::{golden_max, h};
use super::{BoundConstants, BoundKind, BoundReport};

/// Quoted maximizer of `t`.
pub const ALPHA_STAR: f64 = 0.750614;

/// Both chain forests, `β n` and `(α - β) n` components.
pub fn g(alpha: f64, beta: f64) -> f64 {
    let ok = beta > 0.0 && beta < 1.0 && alpha - beta > 0.0 && alpha - beta < 1.0;
    if !ok {
        return f64::NAN;
    }
    let side = |x: f64| h(x) + (3.0 - 2.0 * x) * h((2.0 - x) / (3.0 - 2.0 * x));
    side(beta) + side(alpha - beta)
}

/// Largest summand of the interior count, `k = αn` edges and a matching of
/// `λ n` edges.
pub fn h_alpha(alpha: f64, lambda: f64) -> f64 {
    if !(lambda > 0.0 && lambda < 1.0 && lambda <= alpha && alpha - lambda <= 2.0 - lambda) {
        return f64::NAN;
    }
    2.0 * h(lambda) + (2.0 - lambda) * h((alpha - lambda) / (2.0 - lambda))
}

/// `d/dλ h_α(λ)` in closed form.
pub fn h_alpha_prime(alpha: f64, lambda: f64) -> f64 {
    2.0 * ((1.0 - lambda) / lambda).log2() + ((alpha - lambda) / (2.0 - lambda)).log2()
}

/// `h'_α(λ) = 0` cleared of logarithms: `(1-λ)^2 (α-λ) - λ^2 (2-λ)`.
pub fn stationarity(alpha: f64, lambda: f64) -> f64 {
    (1.0 - lambda).powi(2) * (alpha - lambda) - lambda * lambda * (2.0 - lambda)
}

/// The two roots of the stationarity condition, `(minus, plus)`.
pub fn lambda_branches(alpha: f64) -> (f64, f64) {
    let r = (1.0 + 4.0 * alpha).sqrt();
    ((1.0 + 2.0 * alpha - r) / (2.0 * alpha), (1.0 + 2.0 * alpha + r) / (2.0 * alpha))
}

pub fn lambda_star(alpha: f64) -> f64 {
    lambda_branches(alpha).0
}

/// Total exponent (per chain point) with the chain forests split evenly.
pub fn t(alpha: f64) -> f64 {
    g(alpha, alpha / 2.0) + h_alpha(alpha, lambda_star(alpha))
}

/// `argmax_β g_α(β)` by golden section.
pub fn argmax_beta(alpha: f64) -> f64 {
    let lo = (alpha - 1.0).max(0.0);
    let hi = alpha.min(1.0);
    golden_max(|b| g(alpha, b), lo + 1e-12, hi - 1e-12, 1e-10)
}

/// Largest `|argmax_β g_α - α/2|` over a grid of `α` in `(0, 2)`.
pub fn even_split_deviation(points: usize) -> f64 {
    (1..points)
        .map(|i| 2.0 * i as f64 / points as f64)
        .map(|a| (argmax_beta(a) - a / 2.0).abs())
        .fold(0.0, f64::max)
}

pub fn ub_trees(c: &BoundConstants) -> BoundReport {
    // t is smooth and unimodal on (0, 2); a coarse scan brackets the top
    let coarse = (1..2000)
        .map(|i| i as f64 * 1e-3)
        .max_by(|a, b| t(*a).total_cmp(&t(*b)))
        .expect("non-empty grid");
    let a = golden_max(t, coarse - 1e-3, coarse + 1e-3, 1e-10);
    let ta = t(a);
    let tq = t(ALPHA_STAR);
    BoundReport {
        kind: BoundKind::UbTrees,
        parameters: vec![("alpha".into(), a), ("lambda".into(), lambda_star(a))],
        exponent_per_point: ta / 2.0,
        base: 2f64.powf(ta / 2.0),
        quoted_parameters: vec![("alpha".into(), ALPHA_STAR), ("lambda".into(), lambda_star(ALPHA_STAR))],
        quoted_base: 2f64.powf(tq / 2.0),
        constants: c.used_by(BoundKind::UbTrees),
        extra: vec![
            ("t".into(), ta),
            ("even_split_deviation".into(), even_split_deviation(200)),
            ("h_prime_at_lambda_star".into(), h_alpha_prime(a, lambda_star(a))),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branches_at_three_quarters() {
        let (m, p) = lambda_branches(0.75);
        assert!((m - 1.0 / 3.0).abs() < 1e-12);
        assert!((p - 3.0).abs() < 1e-12);
        assert!(stationarity(0.75, m).abs() < 1e-12 && stationarity(0.75, p).abs() < 1e-12);
        assert!(h_alpha_prime(0.75, m).abs() < 1e-12);
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let (a, l) = (1.1, 0.4);
        let d = (h_alpha(a, l + 1e-6) - h_alpha(a, l - 1e-6)) / 2e-6;
        assert!((d - h_alpha_prime(a, l)).abs() < 1e-6);
    }

    #[test]
    fn even_split() {
        assert!(even_split_deviation(50) < 1e-6);
    }

    #[test]
    fn quoted_maximizer() {
        let r = ub_trees(&BoundConstants::printed());
        assert!((r.parameters[0].1 - ALPHA_STAR).abs() < 1e-4);
        assert!((t(ALPHA_STAR) - 8.93341).abs() < 1e-4);
        assert!((r.base - 22.1112).abs() < 1e-3);
    }
}
