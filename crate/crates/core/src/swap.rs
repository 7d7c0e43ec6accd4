//! Entanglement swapping: Bob's Bell measurement on qubits `B, B'`.
//!
//! The joint state `ρ_AB ⊗ ρ_BC` lives on `A, B, B', C`. For each Bell
//! outcome the measurement projects with `I_A ⊗ P ⊗ I_C`, traces out the
//! middle pair, and Charlie applies a correction unitary:
//!
//! | outcome | correction on C |
//! |---------|-----------------|
//! | Φ⁺      | `I`             |
//! | Φ⁻      | `σ_z`           |
//! | Ψ⁺      | `σ_x`           |
//! | Ψ⁻      | `σ_z σ_x`       |
//!
//! With these, the corrected Φ⁻ state equals the Φ⁺ state, and for the
//! pure-state component each Ψ outcome ends up with its coherence between
//! `|00⟩` and `|11⟩`, the same support as `|Φ⁺⟩`.

use num_complex::Complex64;

use crate::error::Result;
use crate::qmat::{partial_trace_middle, sigma_x, sigma_z, tensor, ComplexMatrix};
use crate::states::{bell_state, Params, TwoQubitState};

pub use crate::states::BellState as BellOutcome;

/// Outcomes less likely than this carry no conditional state.
pub const MIN_PROBABILITY: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SwapResult {
    pub outcome: BellOutcome,
    pub probability: f64,
    /// Phase-corrected, normalized state of `A, C`.
    pub post_state: Option<TwoQubitState>,
}

/// Correction Charlie applies after hearing `outcome`.
pub fn phase_correction(outcome: BellOutcome) -> ComplexMatrix {
    match outcome {
        BellOutcome::PhiPlus => ComplexMatrix::identity(2).expect("2 is supported"),
        BellOutcome::PhiMinus => sigma_z(),
        BellOutcome::PsiPlus => sigma_x(),
        BellOutcome::PsiMinus => &sigma_z() * &sigma_x(),
    }
}

fn joint_state(rho_ab: &TwoQubitState, rho_bc: &TwoQubitState) -> Result<ComplexMatrix> {
    tensor(rho_ab.matrix(), rho_bc.matrix())
}

fn outcome_of_joint(joint: &ComplexMatrix, outcome: BellOutcome) -> Result<SwapResult> {
    let i2 = ComplexMatrix::identity(2)?;
    let bell = bell_state(outcome).projector();
    let projector = tensor(&tensor(&i2, &bell)?, &i2)?;
    let projected = projector.matmul(joint)?.matmul(&projector)?;
    let probability = projected.trace().re.clamp(0.0, 1.0);
    if probability < MIN_PROBABILITY {
        return Ok(SwapResult {
            outcome,
            probability,
            post_state: None,
        });
    }

    let reduced = partial_trace_middle(&projected)?;
    // Average with the adjoint to remove rounding asymmetry from P ρ P.
    let reduced = (&reduced + &reduced.adjoint()).scale_real(0.5);
    let correction = tensor(&i2, &phase_correction(outcome))?;
    let corrected = reduced
        .conjugate_by(&correction)?
        .scale_real(1.0 / probability);
    Ok(SwapResult {
        outcome,
        probability,
        post_state: Some(TwoQubitState::new(corrected)?),
    })
}

pub fn swap_outcome(
    rho_ab: &TwoQubitState,
    rho_bc: &TwoQubitState,
    outcome: BellOutcome,
) -> Result<SwapResult> {
    outcome_of_joint(&joint_state(rho_ab, rho_bc)?, outcome)
}

/// All four outcomes, ordered Φ⁺, Φ⁻, Ψ⁺, Ψ⁻.
pub fn swap_all(rho_ab: &TwoQubitState, rho_bc: &TwoQubitState) -> Result<[SwapResult; 4]> {
    let joint = joint_state(rho_ab, rho_bc)?;
    let [a, b, c, d] = BellOutcome::ALL.map(|o| outcome_of_joint(&joint, o));
    Ok([a?, b?, c?, d?])
}

/// `p(Φ±) = (1 − p)² cos²α sin²α + p(1 − p) sin²α`, the probability of each
/// Φ outcome for the swapping family.
pub fn phi_probability(params: &Params) -> f64 {
    let (p, alpha) = (params.p(), params.alpha());
    let (s, c) = alpha.sin_cos();
    let (s2, c2) = (s * s, c * c);
    (1.0 - p).powi(2) * c2 * s2 + p * (1.0 - p) * s2
}

/// Closed-form A–C state after a Φ outcome (already phase-corrected):
/// `[(1 − p)² cos²α sin²α |Φ⁺⟩⟨Φ⁺| + p(1 − p) sin²α |01⟩⟨01|] / p(Φ±)`.
///
/// `None` when `p(Φ±)` vanishes.
pub fn phi_post_state_closed_form(params: &Params) -> Option<ComplexMatrix> {
    let norm = phi_probability(params);
    if norm < MIN_PROBABILITY {
        return None;
    }
    let (p, alpha) = (params.p(), params.alpha());
    let (s, c) = alpha.sin_cos();
    let coherent = (1.0 - p).powi(2) * c * c * s * s / norm;
    let mixed = p * (1.0 - p) * s * s / norm;
    let mut m = bell_state(BellOutcome::PhiPlus).projector().scale_real(coherent);
    m[(1, 1)] += Complex64::new(mixed, 0.0);
    Some(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{rho_ab, rho_bc};
    use std::f64::consts::FRAC_PI_4;

    fn run(p: f64, alpha: f64) -> [SwapResult; 4] {
        let pr = Params::new(p, alpha).unwrap();
        swap_all(&rho_ab(&pr), &rho_bc(&pr)).unwrap()
    }

    #[test]
    fn maximally_entangled_inputs() {
        let results = run(0.0, FRAC_PI_4);
        let phi = bell_state(BellOutcome::PhiPlus).projector();
        for res in &results {
            assert!((res.probability - 0.25).abs() < 1e-15);
            let state = res.post_state.as_ref().unwrap();
            // Ψ outcomes are also mapped onto Φ⁺ when sin α = cos α.
            assert!(state.matrix().max_abs_diff(&phi).unwrap() < 1e-14);
        }
    }

    #[test]
    fn worked_probability() {
        // 40-digit mpmath value of the closed form.
        let results = run(0.2, 0.5);
        let expected = 0.150_067_562_454_320_2;
        assert!((results[0].probability - expected).abs() < 1e-15);
        assert!((results[1].probability - expected).abs() < 1e-15);
        let total: f64 = results.iter().map(|r| r.probability).sum();
        assert!((total - 1.0).abs() < 1e-14);
    }

    #[test]
    fn fully_mixed_weight_leaves_only_psi() {
        let results = run(1.0, 0.3);
        assert_eq!(results[0].probability, 0.0);
        assert!(results[0].post_state.is_none());
        assert!(results[1].post_state.is_none());
        assert!((results[2].probability - 0.5).abs() < 1e-15);
        assert!((results[3].probability - 0.5).abs() < 1e-15);
    }

    #[test]
    fn single_outcome_matches_swap_all() {
        let pr = Params::new(0.35, 0.9).unwrap();
        let all = swap_all(&rho_ab(&pr), &rho_bc(&pr)).unwrap();
        for (k, o) in BellOutcome::ALL.into_iter().enumerate() {
            assert_eq!(swap_outcome(&rho_ab(&pr), &rho_bc(&pr), o).unwrap(), all[k]);
        }
    }

    #[test]
    fn corrections_are_unitary() {
        for o in BellOutcome::ALL {
            let u = phase_correction(o);
            let uu = u.matmul(&u.adjoint()).unwrap();
            assert_eq!(uu, ComplexMatrix::identity(2).unwrap());
        }
        assert_eq!(phase_correction(BellOutcome::PhiPlus), ComplexMatrix::identity(2).unwrap());
        assert_eq!(phase_correction(BellOutcome::PhiMinus), sigma_z());
    }

    #[test]
    fn closed_form_state_matches_simulation() {
        let pr = Params::new(0.2, 0.5).unwrap();
        let sim = &run(0.2, 0.5)[0];
        let closed = phi_post_state_closed_form(&pr).unwrap();
        let got = sim.post_state.as_ref().unwrap().matrix();
        assert!(got.max_abs_diff(&closed).unwrap() < 1e-14);
        assert!((closed[(0, 0)].re - 0.377_469).abs() < 1e-6);
        assert!((closed[(1, 1)].re - 0.245_062).abs() < 1e-6);
    }
}
