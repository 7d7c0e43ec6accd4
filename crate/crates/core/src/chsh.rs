//! CHSH violation of two-qubit states.
//!
//! A state violates some CHSH inequality iff `r = √(λ₁ + λ₂) > 1`, where
//! `λ₁ ≥ λ₂` are the two largest eigenvalues of `RᵀR` and
//! `R_ij = Tr(ρ σ_i ⊗ σ_j)`. The maximal CHSH expectation is `2r`.
//!
//! Three routes are provided: [`violation_numeric`] works from any density
//! matrix, [`violation_initial_analytic`] and [`violation_final_analytic`]
//! evaluate closed forms for the swapping family, and
//! [`oracle::chsh_max_bruteforce`] searches measurement settings directly.

pub mod oracle;

use crate::error::{Error, Result};
use crate::qmat::{eig_sym3, pauli, tensor, ComplexMatrix, RealSymmetric3};
use crate::states::{Params, TwoQubitState};

pub use oracle::{chsh_max_bruteforce, ChshSettings, DEFAULT_GRID_DENSITY};

/// Largest imaginary part tolerated in a Pauli correlator.
pub const IMAG_TOL: f64 = 1e-12;

/// `R_ij = Tr(ρ σ_i ⊗ σ_j)` for `i, j ∈ {x, y, z}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationMatrix {
    entries: [[f64; 3]; 3],
}

impl CorrelationMatrix {
    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.entries
    }

    /// `RᵀR`.
    pub fn gram(&self) -> RealSymmetric3 {
        RealSymmetric3::gram(&self.entries)
    }
}

/// Closed-form intermediates, when the report came from an analytic path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnalyticTerms {
    /// Initial states. `z` is absent when `(p − 1) sin 2α = 0`, in which case
    /// `r` was taken directly from the eigenvalues.
    Initial { z: Option<f64> },
    Final { y_tilde: f64, z_tilde: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViolationReport {
    /// Eigenvalues of `RᵀR`, descending.
    pub lambdas: [f64; 3],
    pub r: f64,
    pub analytic: Option<AnalyticTerms>,
}

impl ViolationReport {
    fn from_eigenvalues(mut lambdas: [f64; 3], analytic: Option<AnalyticTerms>) -> Self {
        lambdas.sort_by(|a, b| b.total_cmp(a));
        let r = (lambdas[0] + lambdas[1]).max(0.0).sqrt();
        Self {
            lambdas,
            r,
            analytic,
        }
    }

    /// Strict: `r = 1` does not violate.
    pub fn violates(&self) -> bool {
        self.r > 1.0
    }
}

pub fn correlation_matrix(rho: &TwoQubitState) -> Result<CorrelationMatrix> {
    correlations_of(rho.matrix())
}

fn correlations_of(m: &ComplexMatrix) -> Result<CorrelationMatrix> {
    let mut entries = [[0.0; 3]; 3];
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let op = tensor(&pauli(i + 1), &pauli(j + 1))?;
            let t = m.matmul(&op)?.trace();
            if t.im.abs() > IMAG_TOL {
                return Err(Error::NumericalIntegrity {
                    what: format!("correlator R[{i}][{j}]"),
                    residue: t.im.abs(),
                });
            }
            *slot = t.re;
        }
    }
    Ok(CorrelationMatrix { entries })
}

pub fn violation_numeric(rho: &TwoQubitState) -> Result<ViolationReport> {
    let r = correlation_matrix(rho)?;
    let lambdas = eig_sym3(&r.gram());
    Ok(ViolationReport::from_eigenvalues(lambdas, None))
}

/// Closed form for `ρ_AB(p, α)` and `ρ_BC(p, α)` (both share the spectrum of
/// `RᵀR`): `λ₁ = (2p − 1)²`, `λ₂ = λ₃ = ((p − 1) sin 2α)²` and
/// `r = (1 − p) sin 2α √(1 + z)` with
/// `z = max{1, ((2p − 1) / ((p − 1) sin 2α))²}`.
pub fn violation_initial_analytic(params: &Params) -> ViolationReport {
    let (p, alpha) = (params.p(), params.alpha());
    let s2 = (2.0 * alpha).sin();
    let denom = (p - 1.0) * s2;
    let l1 = (2.0 * p - 1.0).powi(2);
    let l23 = denom * denom;
    let lambdas = [l1, l23, l23];

    if denom != 0.0 {
        let z = ((2.0 * p - 1.0) / denom).powi(2).max(1.0);
        let r = (1.0 - p) * s2 * (1.0 + z).sqrt();
        if z.is_finite() && r.is_finite() {
            let mut report =
                ViolationReport::from_eigenvalues(lambdas, Some(AnalyticTerms::Initial { z: Some(z) }));
            report.r = r;
            return report;
        }
    }
    ViolationReport::from_eigenvalues(lambdas, Some(AnalyticTerms::Initial { z: None }))
}

/// Closed form for the A–C state after a `Φ±` outcome:
/// `ỹ = p / ((1 − p) cos²α)`, `λ₁ = ((1 − ỹ)/(1 + ỹ))²`,
/// `λ₂ = λ₃ = (1/(1 + ỹ))²`, `r̃ = √(1 + z̃) / (1 + ỹ)` with
/// `z̃ = max{1, (1 − ỹ)²}`.
///
/// Fails at `p = 1` and `α = π/2`, where `ỹ` has no finite value.
pub fn violation_final_analytic(params: &Params) -> Result<ViolationReport> {
    let (p, alpha) = (params.p(), params.alpha());
    let undefined = Error::UndefinedConditionalState { p, alpha };
    if p >= 1.0 || alpha >= std::f64::consts::FRAC_PI_2 {
        return Err(undefined);
    }
    let y = p / ((1.0 - p) * alpha.cos().powi(2));
    if !y.is_finite() {
        return Err(undefined);
    }
    let l1 = ((1.0 - y) / (1.0 + y)).powi(2);
    let l23 = (1.0 / (1.0 + y)).powi(2);
    let z = (1.0 - y).powi(2).max(1.0);
    let r = (1.0 + z).sqrt() / (1.0 + y);
    let mut report = ViolationReport::from_eigenvalues(
        [l1, l23, l23],
        Some(AnalyticTerms::Final {
            y_tilde: y,
            z_tilde: z,
        }),
    );
    report.r = r;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bell_state, rho_ab, rho_bc, BellState};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    fn params(p: f64, alpha: f64) -> Params {
        Params::new(p, alpha).unwrap()
    }

    fn basis_00() -> TwoQubitState {
        TwoQubitState::new(ComplexMatrix::diag(&[1.0, 0.0, 0.0, 0.0]).unwrap()).unwrap()
    }

    #[test]
    fn phi_plus_correlations() {
        let rho = TwoQubitState::pure(&bell_state(BellState::PhiPlus));
        let r = correlation_matrix(&rho).unwrap();
        let expected = [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((r.entries()[i][j] - expected[i][j]).abs() < 1e-15);
            }
        }
        let report = violation_numeric(&rho).unwrap();
        assert!((report.r - SQRT_2).abs() < 1e-14);
        assert!(report.violates());
    }

    #[test]
    fn product_state_sits_on_the_boundary() {
        let r = correlation_matrix(&basis_00()).unwrap();
        assert_eq!(r.entries(), &[[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        let report = violation_numeric(&basis_00()).unwrap();
        assert_eq!(report.r, 1.0);
        assert!(!report.violates());
    }

    #[test]
    fn worked_initial_state() {
        // λ values and r evaluated to 40 digits with mpmath.
        let pr = params(0.2, 0.5);
        let num = violation_numeric(&rho_ab(&pr)).unwrap();
        let lam = 0.453_166_987_695_085_56;
        assert!((num.lambdas[0] - lam).abs() < 1e-14);
        assert!((num.lambdas[1] - lam).abs() < 1e-14);
        assert!((num.lambdas[2] - 0.36).abs() < 1e-14);
        assert!((num.r - 0.952_015_743_247_017_5).abs() < 1e-13);

        let ana = violation_initial_analytic(&pr);
        assert!((ana.r - 0.952_015_743_247_017_5).abs() < 1e-14);
        match ana.analytic {
            Some(AnalyticTerms::Initial { z: Some(z) }) => assert_eq!(z, 1.0),
            other => panic!("unexpected terms {other:?}"),
        }
        let bc = violation_numeric(&rho_bc(&pr)).unwrap();
        assert!((bc.r - ana.r).abs() < 1e-13);
    }

    #[test]
    fn initial_analytic_limits() {
        let max_ent = violation_initial_analytic(&params(0.0, FRAC_PI_4));
        assert!((max_ent.r - SQRT_2).abs() < 1e-15);

        for alpha in [0.1, 0.4, 1.2] {
            let half = violation_initial_analytic(&params(0.5, alpha));
            assert_eq!(half.lambdas[2], 0.0);
            let expected = 0.5 * (2.0 * alpha).sin() * SQRT_2;
            assert!((half.r - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn initial_analytic_degenerate_denominator() {
        let at_one = violation_initial_analytic(&params(1.0, 0.7));
        assert_eq!(at_one.r, 1.0);
        assert_eq!(at_one.analytic, Some(AnalyticTerms::Initial { z: None }));
        let at_zero = violation_initial_analytic(&params(0.3, 0.0));
        assert!((at_zero.r - 0.4).abs() < 1e-15);
        assert_eq!(at_zero.analytic, Some(AnalyticTerms::Initial { z: None }));
    }

    #[test]
    fn final_analytic_values() {
        for alpha in [0.0, 0.3, 1.5] {
            let rep = violation_final_analytic(&params(0.0, alpha)).unwrap();
            assert!((rep.r - SQRT_2).abs() < 1e-15);
        }
        let rep = violation_final_analytic(&params(0.2, 0.5)).unwrap();
        match rep.analytic {
            Some(AnalyticTerms::Final { y_tilde, z_tilde }) => {
                assert!((y_tilde - 0.324_611_602_602_381_2).abs() < 1e-14);
                assert_eq!(z_tilde, 1.0);
            }
            other => panic!("unexpected terms {other:?}"),
        }
        assert!((rep.r - 1.067_643_949_059_995).abs() < 1e-14);
        assert!((rep.lambdas[0] - 0.569_931_800_982_210_6).abs() < 1e-14);
        assert!((rep.lambdas[2] - 0.259_974_098_836_412_9).abs() < 1e-14);
    }

    #[test]
    fn final_analytic_undefined_edges() {
        assert!(matches!(
            violation_final_analytic(&params(1.0, 0.3)),
            Err(Error::UndefinedConditionalState { .. })
        ));
        assert!(matches!(
            violation_final_analytic(&params(0.3, FRAC_PI_2)),
            Err(Error::UndefinedConditionalState { .. })
        ));
    }

    #[test]
    fn imaginary_residue_is_reported() {
        let mut m = ComplexMatrix::diag(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        m[(0, 3)] = num_complex::Complex64::new(0.0, 1e-6);
        m[(3, 0)] = num_complex::Complex64::new(0.0, 1e-6);
        assert!(TwoQubitState::new(m.clone()).is_err());
        assert!(matches!(
            correlations_of(&m),
            Err(Error::NumericalIntegrity { .. })
        ));
    }
}
