//! Threshold curves in the `(p, α)` plane.
//!
//! * `p* = (√2 − 1)/√2`: the final state can violate CHSH only for `p < p*`.
//! * `α*(p)`, `cos²α* = p / ((1 − p)(√2 − 1))`: the final state violates for
//!   `α < α*(p)`.
//! * `p′ = ½ p* (1 + √p*)`: where `α′` and `α*` meet.
//! * `α′(p)`: the initial states do not violate for `α ≤ α′(p)` (and for
//!   `α ≥ π/2 − α′(p)`), with `sin²(2α′) = 4p/(1 − p)` for `p ≤ ½p*` and
//!   `sin²(2α′) = 1/(2(1 − p)²)` for `p ≥ ½p*`.
//!
//! For `p ∈ (p′, p*)` the binding curve is `α*`: every `α ≤ α*(p)` leaves the
//! initial states non-violating, so the superactivation region is
//! `α < min(α′(p), α*(p))`.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use crate::states::Params;

pub fn p_star() -> f64 {
    (SQRT_2 - 1.0) / SQRT_2
}

pub fn p_prime() -> f64 {
    let ps = p_star();
    0.5 * ps * (1.0 + ps.sqrt())
}

/// `α*(p)`, absent for `p ≥ p*` (the right-hand side reaches 1).
pub fn alpha_star(p: f64) -> Option<f64> {
    if !(0.0..1.0).contains(&p) {
        return None;
    }
    let rhs = p / ((1.0 - p) * (SQRT_2 - 1.0));
    if rhs >= 1.0 {
        return None;
    }
    Some(rhs.sqrt().acos())
}

/// Lower root of the binding initial-state curve, in `[0, π/4]`; absent for
/// `p` outside `[0, p′]`.
pub fn alpha_prime(p: f64) -> Option<f64> {
    if !(0.0..=p_prime()).contains(&p) {
        return None;
    }
    let rhs = if p <= 0.5 * p_star() {
        4.0 * p / (1.0 - p)
    } else {
        1.0 / (2.0 * (1.0 - p).powi(2))
    };
    Some(0.5 * rhs.min(1.0).sqrt().asin())
}

/// Upper root `π/2 − α′(p)` of the same equation.
pub fn alpha_prime_upper(p: f64) -> Option<f64> {
    alpha_prime(p).map(|a| FRAC_PI_2 - a)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdReport {
    pub p: f64,
    pub p_star: f64,
    pub p_prime: f64,
    pub alpha_star: Option<f64>,
    pub alpha_prime: Option<f64>,
    pub alpha_prime_upper: Option<f64>,
}

pub fn thresholds(p: f64) -> ThresholdReport {
    ThresholdReport {
        p,
        p_star: p_star(),
        p_prime: p_prime(),
        alpha_star: alpha_star(p),
        alpha_prime: alpha_prime(p),
        alpha_prime_upper: alpha_prime_upper(p),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionLabel {
    pub initial_violates: bool,
    pub final_violates: bool,
}

impl RegionLabel {
    /// Neither input violates, the swapped state does.
    pub fn is_superactivation(&self) -> bool {
        !self.initial_violates && self.final_violates
    }
}

/// Labels a point by the inequalities directly, without evaluating `r`.
///
/// The initial states do not violate when either regime holds:
/// `sin²2α ≤ 4p/(1 − p)` and `sin²2α ≤ (2p − 1)²/(p − 1)²`, or
/// `sin²2α ≤ 1/(2(1 − p)²)` and `sin²2α > (2p − 1)²/(p − 1)²`.
/// The final state violates when `cos²α > p / ((1 − p)(√2 − 1))`.
pub fn classify(params: &Params) -> RegionLabel {
    let (p, alpha) = (params.p(), params.alpha());
    if p >= 1.0 {
        // |00⟩⟨00| and |11⟩⟨11|: r = 1 exactly, and no Φ outcome occurs.
        return RegionLabel {
            initial_violates: false,
            final_violates: false,
        };
    }
    let s = (2.0 * alpha).sin().powi(2);
    let split = (2.0 * p - 1.0).powi(2) / (p - 1.0).powi(2);
    let first = s <= 4.0 * p / (1.0 - p) && s <= split;
    let second = s <= 1.0 / (2.0 * (1.0 - p).powi(2)) && s > split;
    let final_violates = alpha.cos().powi(2) > p / ((1.0 - p) * (SQRT_2 - 1.0));
    RegionLabel {
        initial_violates: !(first || second),
        final_violates,
    }
}
