//! The two-qubit states of the swapping scenario.
//!
//! Basis order is `|00⟩, |01⟩, |10⟩, |11⟩` throughout. All amplitudes built
//! here are real, but everything is stored as complex so downstream code
//! only ever handles the general type.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qmat::{hermitize_check, ComplexMatrix};

pub const NORM_TOL: f64 = 1e-12;
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;

/// Mixing weight `p ∈ [0, 1]` and angle `alpha ∈ [0, π/2]` (radians).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    p: f64,
    alpha: f64,
}

impl Params {
    pub fn new(p: f64, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::contract(format!("p = {p} is outside [0, 1]")));
        }
        if !(0.0..=FRAC_PI_2).contains(&alpha) {
            return Err(Error::contract(format!(
                "alpha = {alpha} is outside [0, pi/2]"
            )));
        }
        Ok(Self { p, alpha })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Normalized state vector of two qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureTwoQubitVector {
    amplitudes: [Complex64; 4],
}

impl PureTwoQubitVector {
    pub fn new(amplitudes: [Complex64; 4]) -> Result<Self> {
        let norm2: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > NORM_TOL {
            return Err(Error::contract(format!(
                "state vector has squared norm {norm2}, expected 1"
            )));
        }
        Ok(Self { amplitudes })
    }

    pub fn from_real(amplitudes: [f64; 4]) -> Result<Self> {
        Self::new(amplitudes.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes).expect("4 is a supported dimension")
    }
}

/// A 4×4 density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitState {
    matrix: ComplexMatrix,
}

impl TwoQubitState {
    /// Validates `matrix` against the density-matrix invariants.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.dim() != 4 {
            return Err(Error::contract(format!(
                "two-qubit state must be 4x4, got {}x{}",
                matrix.dim(),
                matrix.dim()
            )));
        }
        if !hermitize_check(&matrix, HERMITIAN_TOL) {
            return Err(Error::contract("density matrix is not Hermitian"));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::contract(format!(
                "density matrix has trace {tr}, expected 1"
            )));
        }
        if !is_psd(&matrix, PSD_TOL) {
            return Err(Error::contract(
                "density matrix has an eigenvalue below -1e-10",
            ));
        }
        Ok(Self { matrix })
    }

    pub fn pure(v: &PureTwoQubitVector) -> Self {
        Self {
            matrix: v.projector(),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

impl fmt::Display for TwoQubitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..4 {
            let row: Vec<String> = (0..4)
                .map(|j| {
                    let z = self.matrix[(i, j)];
                    if z.im.abs() < 1e-15 {
                        format!("{:>10.6}", z.re)
                    } else {
                        format!("{:.6}{:+.6}i", z.re, z.im)
                    }
                })
                .collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Positive semidefiniteness within `tol`: Cholesky of `m + tol·I` must
/// succeed, which happens exactly when the smallest eigenvalue exceeds `-tol`.
fn is_psd(m: &ComplexMatrix, tol: f64) -> bool {
    let n = m.dim();
    let mut l = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        let mut d = m[(j, j)].re + tol;
        for k in 0..j {
            d -= l[j * n + k].norm_sqr();
        }
        if d <= 0.0 {
            return false;
        }
        let djj = d.sqrt();
        l[j * n + j] = Complex64::new(djj, 0.0);
        for i in (j + 1)..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k].conj();
            }
            l[i * n + j] = s / djj;
        }
    }
    true
}

/// `sin α |01⟩ + cos α |10⟩`.
pub fn psi_alpha(params: &Params) -> PureTwoQubitVector {
    let (s, c) = params.alpha.sin_cos();
    PureTwoQubitVector {
        amplitudes: [0.0, s, c, 0.0].map(|x| Complex64::new(x, 0.0)),
    }
}

/// `(1 − p)|Ψ(α)⟩⟨Ψ(α)| + p|00⟩⟨00|`, the state shared by Alice and Bob.
pub fn rho_ab(params: &Params) -> TwoQubitState {
    mixed_with_basis_state(params, 0)
}

/// `(1 − p)|Ψ(α)⟩⟨Ψ(α)| + p|11⟩⟨11|`, the state shared by Bob and Charlie.
pub fn rho_bc(params: &Params) -> TwoQubitState {
    mixed_with_basis_state(params, 3)
}

fn mixed_with_basis_state(params: &Params, basis: usize) -> TwoQubitState {
    let p = params.p;
    let mut m = psi_alpha(params).projector().scale_real(1.0 - p);
    m[(basis, basis)] += Complex64::new(p, 0.0);
    TwoQubitState { matrix: m }
}

/// The Bell basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellState {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [
        BellState::PhiPlus,
        BellState::PhiMinus,
        BellState::PsiPlus,
        BellState::PsiMinus,
    ];

    pub fn label(self) -> &'static str {
        match self {
            BellState::PhiPlus => "Phi+",
            BellState::PhiMinus => "Phi-",
            BellState::PsiPlus => "Psi+",
            BellState::PsiMinus => "Psi-",
        }
    }

    pub fn is_phi(self) -> bool {
        matches!(self, BellState::PhiPlus | BellState::PhiMinus)
    }
}

impl fmt::Display for BellState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn bell_state(kind: BellState) -> PureTwoQubitVector {
    let h = FRAC_1_SQRT_2;
    let amps = match kind {
        BellState::PhiPlus => [h, 0.0, 0.0, h],
        BellState::PhiMinus => [h, 0.0, 0.0, -h],
        BellState::PsiPlus => [0.0, h, h, 0.0],
        BellState::PsiMinus => [0.0, h, -h, 0.0],
    };
    PureTwoQubitVector {
        amplitudes: amps.map(|x| Complex64::new(x, 0.0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{sigma_x, tensor};
    use std::f64::consts::FRAC_PI_4;

    fn params(p: f64, alpha: f64) -> Params {
        Params::new(p, alpha).unwrap()
    }

    #[test]
    fn params_reject_out_of_range() {
        assert!(Params::new(-0.01, 0.1).is_err());
        assert!(Params::new(1.01, 0.1).is_err());
        assert!(Params::new(0.5, -1e-9).is_err());
        assert!(Params::new(0.5, FRAC_PI_2 + 1e-9).is_err());
        assert!(Params::new(0.5, f64::NAN).is_err());
        assert!(Params::new(1.0, FRAC_PI_2).is_ok());
    }

    #[test]
    fn psi_alpha_amplitudes() {
        let v = psi_alpha(&params(0.0, FRAC_PI_4));
        let a = v.amplitudes();
        assert!((a[1].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((a[2].re - FRAC_1_SQRT_2).abs() < 1e-15);

        let v = psi_alpha(&params(0.0, 0.0));
        assert_eq!(v.amplitudes()[2], Complex64::new(1.0, 0.0));
        assert_eq!(v.amplitudes()[1], Complex64::new(0.0, 0.0));

        let v = psi_alpha(&params(0.3, 0.5));
        assert!((v.amplitudes()[1].re - 0.479_425_538_604_203).abs() < 1e-15);
        assert!((v.amplitudes()[2].re - 0.877_582_561_890_372_7).abs() < 1e-15);
    }

    #[test]
    fn rho_ab_limits() {
        let pr = params(0.0, 0.7);
        assert_eq!(rho_ab(&pr).matrix(), &psi_alpha(&pr).projector());
        let m = rho_ab(&params(1.0, 0.7));
        assert_eq!(m.matrix(), &ComplexMatrix::diag(&[1.0, 0.0, 0.0, 0.0]).unwrap());
    }

    #[test]
    fn rho_ab_worked_entries() {
        let m = rho_ab(&params(0.2, FRAC_PI_4)).into_matrix();
        let expected = ComplexMatrix::from_real(
            4,
            &[
                0.2, 0.0, 0.0, 0.0, //
                0.0, 0.4, 0.4, 0.0, //
                0.0, 0.4, 0.4, 0.0, //
                0.0, 0.0, 0.0, 0.0,
            ],
        )
        .unwrap();
        assert!(m.max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn rho_bc_limits() {
        let m = rho_bc(&params(1.0, 0.3));
        assert_eq!(m.matrix(), &ComplexMatrix::diag(&[0.0, 0.0, 0.0, 1.0]).unwrap());
        let pr = params(0.0, 0.3);
        assert_eq!(rho_bc(&pr), rho_ab(&pr));
    }

    #[test]
    fn rho_bc_is_flipped_rho_ab() {
        let xx = tensor(&sigma_x(), &sigma_x()).unwrap();
        for i in 0..=20 {
            for j in 0..=20 {
                let p = i as f64 / 20.0;
                let alpha = FRAC_PI_2 * j as f64 / 20.0;
                let bc = rho_bc(&params(p, alpha));
                let flipped = rho_ab(&params(p, FRAC_PI_2 - alpha))
                    .matrix()
                    .conjugate_by(&xx)
                    .unwrap();
                assert!(bc.matrix().max_abs_diff(&flipped).unwrap() < 1e-15);
            }
        }
    }

    #[test]
    fn bell_states_are_orthonormal() {
        for a in BellState::ALL {
            for b in BellState::ALL {
                let g = bell_state(a).inner(&bell_state(b));
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((g - Complex64::new(expected, 0.0)).norm() < 1e-14);
            }
        }
        let phi_minus = bell_state(BellState::PhiMinus);
        assert!((phi_minus.amplitudes()[3].re + FRAC_1_SQRT_2).abs() < 1e-16);
    }

    #[test]
    fn state_validation_rejects_bad_matrices() {
        let not_unit = ComplexMatrix::diag(&[0.5, 0.4, 0.0, 0.0]).unwrap();
        assert!(TwoQubitState::new(not_unit).is_err());
        let negative = ComplexMatrix::diag(&[1.1, -0.1, 0.0, 0.0]).unwrap();
        assert!(TwoQubitState::new(negative).is_err());
        let mut non_herm = ComplexMatrix::diag(&[0.5, 0.5, 0.0, 0.0]).unwrap();
        non_herm[(0, 1)] = Complex64::new(0.1, 0.0);
        assert!(TwoQubitState::new(non_herm).is_err());
        let pure = ComplexMatrix::diag(&[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(TwoQubitState::new(pure).is_ok());
        assert!(PureTwoQubitVector::from_real([1.0, 1.0, 0.0, 0.0]).is_err());
    }
}
