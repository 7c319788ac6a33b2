//! A single nuclear spin 3/2 in combined electric-quadrupole and Zeeman
//! fields, realized as two coupled fictitious spins 1/2 via the Kronecker
//! product of Pauli matrices.
//!
//! The crate computes the two-qubit form of the spin-3/2 Hamiltonian, its
//! closed-form and numerical spectra, ground-state and thermal (Wootters)
//! concurrence, the entangled/separable phase boundary, and the data behind
//! the published figures. Because the printed closed forms are not mutually
//! consistent, the model keeps both readings side by side (`Mode::Paper` /
//! `Mode::Exact`) and ships a numerical consistency report that adjudicates
//! them.
//!
//! Units: Hamiltonians are dimensionless (divided by the quadrupole
//! frequency omega_Q), the field enters as alpha = omega_0/omega_Q and the
//! inverse temperature as beta = omega_Q/(k_B T).

pub mod cli;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod model;
pub mod pauli;
pub mod scan;

pub use entanglement::{
    closed_form_concurrence, pure_concurrence, thermal_state, wootters_concurrence,
    DensityMatrix, WoottersResult,
};
pub use error::{Error, Result};
pub use linalg::{
    herm_eigensolve, kron2, mat_exp_hermitian, mat_sqrt_psd, Complex, ComplexMat4, Spectrum4,
};
pub use model::{
    analytic_energies, consistency_report, ground_amplitudes, hamiltonian_spin32,
    hamiltonian_two_qubit, printed_eq11_energies, resonance_frequencies, spin32_operators,
    ConsistencyReport, CouplingConstants, GroundAmplitudes, Mode, ModelParams,
    ResonanceFrequencies,
};
pub use pauli::{basis_element, decompose, reconstruct, Pauli, PauliCoeffs, PauliIndex};
pub use scan::{
    critical_beta, cu63_temperature, phase_boundary, sweep_pure, sweep_thermal, AxisSpec,
    Convention, GridSpec, PhaseBoundary, PhaseBoundaryPoint, PureRow, ThermalRow,
};
