//! Spin-3/2 operators, the quadrupole + Zeeman Hamiltonian in both the
//! native spin-3/2 form and the two-qubit (fictitious spin) form, analytic
//! spectra, ground-state amplitudes, resonance frequencies, and the
//! printed-formula consistency report.
//!
//! Everything is dimensionless: Hamiltonians are divided by the quadrupole
//! frequency omega_Q, the field enters as alpha = omega_0/omega_Q, and the
//! thermal exponent downstream is -beta * H with beta = omega_Q/(k_B T).
//!
//! Two Hamiltonian modes coexist on purpose. `Paper` uses the transverse
//! quadrupole field (sqrt3/2) eta exactly as printed; `Exact` uses sqrt3 eta,
//! which is what trace projection of the spin-3/2 quadrupole Hamiltonian
//! actually gives. The two differ only by eta -> eta/2, and Paper is the
//! default because the published figures and closed forms follow it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c64, herm_eigensolve, Complex, ComplexMat4, DEFAULT_EIG_TOL};
use crate::pauli::{basis_element, decompose, Pauli, PauliIndex};

pub(crate) const SQRT3: f64 = 1.732_050_807_568_877_3;

/// Which transverse quadrupole coupling the two-qubit Hamiltonian carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    /// h01 = (sqrt3/2) eta, as printed; reproduces the published figures.
    Paper,
    /// h01 = sqrt3 eta, the faithful decomposition of the spin-3/2 form.
    Exact,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Paper => f.write_str("paper"),
            Mode::Exact => f.write_str("exact"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "paper" => Ok(Mode::Paper),
            "exact" => Ok(Mode::Exact),
            other => Err(format!("unknown mode `{other}` (expected paper|exact)")),
        }
    }
}

/// Dimensionless model parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Normalized field alpha = omega_0/omega_Q, >= 0.
    pub alpha: f64,
    /// EFG asymmetry, in [0, 1].
    pub eta: f64,
    /// Normalized inverse temperature beta = omega_Q/(k_B T), >= 0.
    pub beta: f64,
    pub mode: Mode,
    /// Quadrupole coupling in MHz, only for dimensional output.
    pub omega_q_mhz: Option<f64>,
}

impl ModelParams {
    pub fn new(alpha: f64, eta: f64, beta: f64, mode: Mode) -> Result<Self> {
        let p = ModelParams {
            alpha,
            eta,
            beta,
            mode,
            omega_q_mhz: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_omega_q_mhz(mut self, mhz: f64) -> Self {
        self.omega_q_mhz = Some(mhz);
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Result<Self> {
        self.beta = beta;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| Err(Error::InvalidParams { reason });
        if !self.alpha.is_finite() || self.alpha < 0.0 {
            return bad(format!("alpha must be finite and >= 0, got {}", self.alpha));
        }
        if !self.eta.is_finite() || !(0.0..=1.0).contains(&self.eta) {
            return bad(format!("eta must lie in [0, 1], got {}", self.eta));
        }
        if !self.beta.is_finite() || self.beta < 0.0 {
            return bad(format!("beta must be finite and >= 0, got {}", self.beta));
        }
        Ok(())
    }
}

/// Couplings of the two-qubit Hamiltonian
/// H = jz zz + h01 x0 + h02 0x + jx xx + jy yy, in units omega_Q.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingConstants {
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub h01: f64,
    pub h02: f64,
}

impl CouplingConstants {
    pub fn for_params(p: &ModelParams) -> Self {
        let h01 = match p.mode {
            Mode::Paper => SQRT3 / 2.0 * p.eta,
            Mode::Exact => SQRT3 * p.eta,
        };
        CouplingConstants {
            jx: p.alpha / 2.0,
            jy: p.alpha / 2.0,
            jz: 3.0,
            h01,
            h02: SQRT3 / 2.0 * p.alpha,
        }
    }
}

/// Standard spin-3/2 operators in the basis |3/2>, |1/2>, |-1/2>, |-3/2>.
pub fn spin32_operators() -> (ComplexMat4, ComplexMat4, ComplexMat4) {
    // Ladder matrix elements sqrt(I(I+1) - m(m+1)): sqrt3, 2, sqrt3.
    let mut ix = ComplexMat4::ZERO;
    let mut iy = ComplexMat4::ZERO;
    let off = [SQRT3 / 2.0, 1.0, SQRT3 / 2.0];
    for (k, &x) in off.iter().enumerate() {
        ix[(k, k + 1)] = c64(x, 0.0);
        ix[(k + 1, k)] = c64(x, 0.0);
        iy[(k, k + 1)] = c64(0.0, -x);
        iy[(k + 1, k)] = c64(0.0, x);
    }
    let iz = ComplexMat4::from_diag([1.5, 0.5, -0.5, -1.5]);
    (ix, iy, iz)
}

/// Hamiltonian in the native spin-3/2 form, units omega_Q:
/// 3 Iz^2 - I^2 + eta (Ix^2 - Iy^2) + alpha Ix.
///
/// The Zeeman term is +alpha Ix with alpha >= 0; the spectra and ground
/// state of the published closed forms correspond to this sign.
pub fn hamiltonian_spin32(p: &ModelParams) -> ComplexMat4 {
    let (ix, iy, iz) = spin32_operators();
    let quad = (iz * iz).scale(3.0) - ComplexMat4::identity().scale(15.0 / 4.0)
        + (ix * ix - iy * iy).scale(p.eta);
    quad + ix.scale(p.alpha)
}

/// Hamiltonian in the two-qubit product basis, from the mode's couplings.
pub fn hamiltonian_two_qubit(p: &ModelParams) -> ComplexMat4 {
    let c = CouplingConstants::for_params(p);
    let term = |a: Pauli, b: Pauli, w: f64| basis_element(PauliIndex::new(a, b)).scale(w);
    term(Pauli::Z, Pauli::Z, c.jz)
        + term(Pauli::X, Pauli::I, c.h01)
        + term(Pauli::I, Pauli::X, c.h02)
        + term(Pauli::X, Pauli::X, c.jx)
        + term(Pauli::Y, Pauli::Y, c.jy)
}

/// Radicand shared by the odd-sector spectrum, the ground amplitudes and
/// the closed-form concurrence: 36 + 4 alpha (3 + alpha) - 6 alpha eta + 3 eta^2.
pub(crate) fn odd_sector_radicand(alpha: f64, eta: f64) -> f64 {
    36.0 + 4.0 * alpha * (3.0 + alpha) - 6.0 * alpha * eta + 3.0 * eta * eta
}

/// Closed-form spectrum of the paper-mode Hamiltonian, ascending.
///
/// This is the corrected form, obtained from the two 2x2 parity-sector
/// blocks: odd sector (-alpha -+ sqrt(4a^2 + 6a(2-eta) + 36 + 3eta^2))/2,
/// even sector (alpha -+ sqrt(4a^2 - 6a(2-eta) + 36 + 3eta^2))/2. The
/// formulas as printed disagree with the spectrum; those are available
/// verbatim in `printed_eq11_energies` for the consistency report.
pub fn analytic_energies(p: &ModelParams) -> Result<[f64; 4]> {
    if p.mode != Mode::Paper {
        return Err(Error::ModeUnsupported);
    }
    let (a, e) = (p.alpha, p.eta);
    let odd = (4.0 * a * a + 6.0 * a * (2.0 - e) + 36.0 + 3.0 * e * e).sqrt();
    let even = (4.0 * a * a - 6.0 * a * (2.0 - e) + 36.0 + 3.0 * e * e).sqrt();
    let mut vals = [
        0.5 * (-a - odd),
        0.5 * (-a + odd),
        0.5 * (a - even),
        0.5 * (a + even),
    ];
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// The four energies of the originally printed closed form, evaluated
/// exactly as typeset, in units omega_Q. Order: E(+3/2), E(-3/2), E(+1/2),
/// E(-1/2). Kept verbatim for the consistency report; these do NOT match
/// the spectrum of the Hamiltonian.
pub fn printed_eq11_energies(p: &ModelParams) -> [f64; 4] {
    let (a, e) = (p.alpha, p.eta);
    let r32 = (4.0 * a * a - 6.0 * a * (2.0 - e) + 12.0 + e * e).sqrt();
    let r12 = (4.0 * a * a + 6.0 * a * (2.0 - e) + 12.0 + e * e).sqrt();
    [
        0.5 * (-a - r32),
        0.5 * (-a + r32),
        0.5 * (a - r12),
        0.5 * (a + r12),
    ]
}

/// Ground-state amplitudes of the paper-mode Hamiltonian, listed in basis
/// order (a-, b+, b-, a+) under the map |3/2> = |00>, |1/2> = |01>,
/// |-1/2> = |10>, |-3/2> = |11>.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroundAmplitudes {
    pub a_minus: f64,
    pub b_plus: f64,
    pub b_minus: f64,
    pub a_plus: f64,
    /// Normalization denominator.
    pub d: f64,
}

impl GroundAmplitudes {
    /// Components in basis order (a-, b+, b-, a+).
    pub fn as_vector(&self) -> [f64; 4] {
        [self.a_minus, self.b_plus, self.b_minus, self.a_plus]
    }

    pub fn norm_sq(&self) -> f64 {
        self.as_vector().iter().map(|x| x * x).sum()
    }
}

/// Closed-form ground state for alpha > 0.
///
/// Amplitudes: a+- = +-sqrt3 (alpha - eta)/d, b+- = +-(6 + alpha + R)/d with
/// R the odd-sector radical and d the printed normalization. Relative to
/// the printed form the sign of the a-pair is flipped: as typeset the
/// state is not an eigenvector of the two-qubit Hamiltonian (it differs
/// from one by the local unitary sz (x) sz, which the concurrence cannot
/// see but an overlap check does). This form matches the numerical ground
/// eigenvector up to global sign.
pub fn ground_amplitudes(p: &ModelParams) -> Result<GroundAmplitudes> {
    if p.alpha <= 0.0 {
        return Err(Error::DegenerateGround);
    }
    let (a, e) = (p.alpha, p.eta);
    let r = odd_sector_radicand(a, e).sqrt();
    let big = 6.0 + a + r;
    let d = (6.0 * (a - e) * (a - e) + 2.0 * big * big).sqrt();
    Ok(GroundAmplitudes {
        a_minus: -SQRT3 * (a - e) / d,
        b_plus: big / d,
        b_minus: -big / d,
        a_plus: SQRT3 * (a - e) / d,
        d,
    })
}

/// Selective RF resonance frequencies of the two fictitious spins,
/// Omega_1 = sqrt3 eta and Omega_2 = sqrt3 alpha in units omega_Q.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResonanceFrequencies {
    pub omega1: f64,
    pub omega2: f64,
    pub omega1_mhz: Option<f64>,
    pub omega2_mhz: Option<f64>,
}

pub fn resonance_frequencies(p: &ModelParams) -> ResonanceFrequencies {
    let omega1 = SQRT3 * p.eta;
    let omega2 = SQRT3 * p.alpha;
    ResonanceFrequencies {
        omega1,
        omega2,
        omega1_mhz: p.omega_q_mhz.map(|w| omega1 * w),
        omega2_mhz: p.omega_q_mhz.map(|w| omega2 * w),
    }
}

/// Numerical adjudication of the printed formulas against each other.
#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyReport {
    /// sigma_x (x) sigma_0 coefficient from trace projection of the
    /// spin-3/2 quadrupole Hamiltonian: sqrt3 eta.
    pub hq_eta_coeff_exact: f64,
    /// The printed coefficient: (sqrt3/2) eta.
    pub hq_eta_coeff_printed: f64,
    /// Printed closed-form energies, evaluated verbatim.
    pub eq11_printed_energies: [f64; 4],
    /// Jacobi spectrum of the paper-mode Hamiltonian, ascending.
    pub numeric_energies: [f64; 4],
    /// Max |sorted printed - sorted numeric|.
    pub max_energy_mismatch: f64,
    /// |<numerical ground | closed-form ground>|.
    pub eq12_state_overlap: f64,
    /// |closed-form concurrence - concurrence of the numerical ground state|.
    pub eq15_concurrence_mismatch: f64,
}

/// Ground eigenvector of the paper-mode Hamiltonian, phase-fixed so the
/// largest component is real positive.
pub(crate) fn numerical_ground_vector(p: &ModelParams) -> Result<[Complex; 4]> {
    let paper = ModelParams {
        mode: Mode::Paper,
        ..*p
    };
    let h = hamiltonian_two_qubit(&paper);
    let spec = herm_eigensolve(&h, DEFAULT_EIG_TOL)?;
    let mut v = spec.vector(0);
    let k = (0..4)
        .max_by(|&i, &j| v[i].norm().total_cmp(&v[j].norm()))
        .unwrap();
    let phase = v[k] / v[k].norm();
    for z in v.iter_mut() {
        *z /= phase;
    }
    Ok(v)
}

pub fn consistency_report(p: &ModelParams) -> Result<ConsistencyReport> {
    if p.alpha <= 0.0 {
        return Err(Error::DegenerateGround);
    }

    let exact = ModelParams {
        mode: Mode::Exact,
        ..*p
    };
    let hq_only = ModelParams::new(0.0, p.eta, 0.0, Mode::Exact)?;
    let coeffs = decompose(&hamiltonian_spin32(&hq_only));
    let hq_eta_coeff_exact = coeffs.get(PauliIndex::new(Pauli::X, Pauli::I)).re;
    let hq_eta_coeff_printed = CouplingConstants::for_params(&ModelParams {
        mode: Mode::Paper,
        ..exact
    })
    .h01;

    let paper = ModelParams {
        mode: Mode::Paper,
        ..*p
    };
    let spec = herm_eigensolve(&hamiltonian_two_qubit(&paper), DEFAULT_EIG_TOL)?;
    let numeric_energies = spec.values;
    let eq11_printed_energies = printed_eq11_energies(&paper);
    let mut printed_sorted = eq11_printed_energies;
    printed_sorted.sort_by(f64::total_cmp);
    let max_energy_mismatch = printed_sorted
        .iter()
        .zip(numeric_energies.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let ground = ground_amplitudes(&paper)?;
    let num_ground = numerical_ground_vector(&paper)?;
    let closed = ground.as_vector();
    let overlap: Complex = (0..4)
        .map(|i| num_ground[i].conj() * c64(closed[i], 0.0))
        .sum();
    let eq12_state_overlap = overlap.norm().min(1.0);

    // Concurrence of the numerical eigenvector via the pure-state formula,
    // compared against the closed form.
    let amp = |i: usize| num_ground[i].re;
    let c_numeric = 2.0 * (amp(3) * amp(0) - amp(1) * amp(2)).abs();
    let c_closed = crate::entanglement::closed_form_concurrence(&paper)?;
    let eq15_concurrence_mismatch = (c_closed - c_numeric).abs();

    Ok(ConsistencyReport {
        hq_eta_coeff_exact,
        hq_eta_coeff_printed,
        eq11_printed_energies,
        numeric_energies,
        max_energy_mismatch,
        eq12_state_overlap,
        eq15_concurrence_mismatch,
    })
}
