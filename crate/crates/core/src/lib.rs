//! CHSH violation of two-qubit states before and after entanglement
//! swapping.
//!
//! Alice–Bob share `ρ_AB(p, α) = (1 − p)|Ψ(α)⟩⟨Ψ(α)| + p|00⟩⟨00|` and
//! Bob–Charlie share `ρ_BC(p, α)`, the same mixture with `|11⟩⟨11|`, where
//! `|Ψ(α)⟩ = sin α|01⟩ + cos α|10⟩`. A Bell measurement on Bob's two qubits
//! leaves Alice and Charlie with a state that can violate CHSH even when
//! neither input does.
//!
//! Modules:
//! * [`qmat`]: small dense complex matrices, Kronecker products, partial
//!   trace, 3×3 symmetric eigenvalues.
//! * [`states`]: the state family and the Bell basis.
//! * [`chsh`]: the violation parameter `r`, numerically, in closed form, and
//!   by direct search over measurement settings.
//! * [`swap`]: the Bell measurement and correction unitaries.
//! * [`regions`]: threshold curves and region labels.
//! * [`cli`]: the command-line reports and sweep CSV.

pub mod chsh;
pub mod cli;
pub mod error;
pub mod qmat;
pub mod regions;
pub mod states;
pub mod swap;

pub use error::{Error, Result};
