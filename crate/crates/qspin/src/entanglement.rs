//! Pure-state concurrence, thermal Gibbs states, and the Wootters
//! concurrence for mixed two-qubit states.
//!
//! The Wootters spectrum is computed through the Hermitian similarity
//! sqrt(rho) (sy(x)sy) conj(rho) (sy(x)sy) sqrt(rho) rather than the
//! non-Hermitian product, which has the same eigenvalues but keeps the
//! Jacobi solver applicable and the numerical negativity controlled.
//! Complex conjugation is entrywise in the fixed computational basis
//! defined in `model` (the spin-flip construction is basis-dependent).

use crate::error::{Error, Result};
use crate::linalg::{
    herm_eigensolve, singular_values4, ComplexMat4, Spectrum4, DEFAULT_EIG_TOL,
};
use crate::model::{
    hamiltonian_two_qubit, odd_sector_radicand, GroundAmplitudes, ModelParams,
};
use crate::pauli::{basis_element, Pauli, PauliIndex};

/// Hermiticity / unit-trace tolerance on admissible density matrices.
const STATE_TOL: f64 = 1e-12;

/// Smallest admissible eigenvalue of a density matrix; anything in
/// [-EIG_CLAMP, 0) is clamped to zero.
const EIG_CLAMP: f64 = 1e-10;

/// Jacobi tolerance for eigendecomposing a density matrix (norm <= 1).
/// Tighter than the general default: the tiny Gibbs weights must come out
/// with high relative accuracy or their square roots contaminate the small
/// Wootters lambdas of nearly pure states.
const RHO_EIG_TOL: f64 = 4e-15;

/// A validated two-qubit density matrix: Hermitian, unit trace, PSD up to
/// the clamp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    rho: ComplexMat4,
}

impl DensityMatrix {
    pub fn new(rho: ComplexMat4) -> Result<Self> {
        let herm = rho.hermiticity_defect();
        if herm > STATE_TOL {
            return Err(Error::InvalidState {
                reason: format!("not Hermitian (defect {herm:e})"),
            });
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState {
                reason: format!("trace is {tr}, expected 1"),
            });
        }
        let spec = herm_eigensolve(&rho, DEFAULT_EIG_TOL).map_err(|e| Error::InvalidState {
            reason: format!("eigendecomposition failed: {e}"),
        })?;
        if spec.values[0] < -EIG_CLAMP {
            return Err(Error::InvalidState {
                reason: format!("negative eigenvalue {:e}", spec.values[0]),
            });
        }
        Ok(DensityMatrix { rho })
    }

    /// Projector |psi><psi| of a normalized real-amplitude state.
    pub fn pure_state(amplitudes: &[f64; 4]) -> Result<Self> {
        let norm_sq: f64 = amplitudes.iter().map(|x| x * x).sum();
        if (norm_sq - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized { norm_sq });
        }
        let v = amplitudes.map(|x| crate::linalg::c64(x, 0.0));
        Self::new(ComplexMat4::outer(&v))
    }

    pub fn matrix(&self) -> &ComplexMat4 {
        &self.rho
    }

    /// Tr(rho^2); 1 for pure states, 1/4 for the maximally mixed state.
    pub fn purity(&self) -> f64 {
        (self.rho * self.rho).trace().re
    }
}

/// Wootters spin-flip spectrum and the resulting concurrence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WoottersResult {
    /// max(0, lambda_1 - lambda_2 - lambda_3 - lambda_4), clamped to [0, 1].
    pub concurrence: f64,
    /// Square roots of the flip-product eigenvalues, descending.
    pub lambdas: [f64; 4],
}

/// Pure-state concurrence C = 2 |a+ a- - b+ b-| of the ground amplitudes.
pub fn pure_concurrence(g: &GroundAmplitudes) -> Result<f64> {
    let norm_sq = g.norm_sq();
    if (norm_sq - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized { norm_sq });
    }
    Ok((2.0 * (g.a_plus * g.a_minus - g.b_plus * g.b_minus).abs()).min(1.0))
}

/// Closed-form ground-state concurrence
/// C = (6 + alpha) / sqrt(36 + 4 alpha (3 + alpha) - 6 alpha eta + 3 eta^2),
/// valid for alpha > 0. At exactly zero field the ground level is degenerate
/// and no entanglement is present, so this errors instead of extrapolating.
pub fn closed_form_concurrence(p: &ModelParams) -> Result<f64> {
    if p.alpha <= 0.0 {
        return Err(Error::DegenerateGround);
    }
    let c = (6.0 + p.alpha) / odd_sector_radicand(p.alpha, p.eta).sqrt();
    Ok(c.min(1.0))
}

/// Gibbs state exp(-beta H) / Z of the Hamiltonian selected by `p.mode`.
/// Weights are shifted by the ground energy before exponentiating so large
/// beta cannot overflow.
pub fn thermal_state(p: &ModelParams) -> Result<DensityMatrix> {
    p.validate()?;
    let h = hamiltonian_two_qubit(p);
    let spec = herm_eigensolve(&h, DEFAULT_EIG_TOL)?;
    let e0 = spec.values[0];
    let weights: [f64; 4] = spec.values.map(|e| (-p.beta * (e - e0)).exp());
    let z: f64 = weights.iter().sum();
    let mut rho = ComplexMat4::ZERO;
    for (k, &w) in weights.iter().enumerate() {
        rho = rho + ComplexMat4::outer(&spec.vector(k)).scale(w / z);
    }
    DensityMatrix::new(rho)
}

/// Wootters concurrence of a mixed state.
///
/// The lambdas are the square roots of the eigenvalues of the Hermitian
/// product A = sqrt(rho) (sy(x)sy) conj(rho) (sy(x)sy) sqrt(rho). They are
/// computed as the singular values of Y = sqrt(rho) (sy(x)sy) conj(sqrt(rho)),
/// which satisfies Y Y^dag = A exactly, so the spectrum is the same in exact
/// arithmetic; the singular-value route keeps the small lambdas at full
/// absolute accuracy instead of amplifying formation dust through a square
/// root, which matters for nearly pure states.
pub fn wootters_concurrence(d: &DensityMatrix) -> Result<WoottersResult> {
    let rho = *d.matrix();
    let spec = herm_eigensolve(&rho, RHO_EIG_TOL)?;
    let sqrt_rho = clamped_sqrt(&spec)?;

    let yy = basis_element(PauliIndex::new(Pauli::Y, Pauli::Y));
    let y = sqrt_rho * yy * sqrt_rho.conj();
    let lambdas = singular_values4(&y)?;

    let hinge = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(WoottersResult {
        concurrence: hinge.clamp(0.0, 1.0),
        lambdas,
    })
}

fn clamped_sqrt(spec: &Spectrum4) -> Result<ComplexMat4> {
    if spec.values[0] < -EIG_CLAMP {
        return Err(Error::InvalidState {
            reason: format!("negative eigenvalue {:e}", spec.values[0]),
        });
    }
    Ok(spec.map_values(|x| x.max(0.0).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, mat_sqrt_psd};
    use crate::model::{ground_amplitudes, Mode};

    fn params(alpha: f64, eta: f64, beta: f64) -> ModelParams {
        ModelParams::new(alpha, eta, beta, Mode::Paper).unwrap()
    }

    #[test]
    fn bell_state_is_maximally_entangled() {
        let inv = 1.0 / 2f64.sqrt();
        let d = DensityMatrix::pure_state(&[inv, 0.0, 0.0, inv]).unwrap();
        let w = wootters_concurrence(&d).unwrap();
        assert!((w.concurrence - 1.0).abs() < 1e-12);
        assert!((w.lambdas[0] - 1.0).abs() < 1e-12);
        for k in 1..4 {
            assert!(w.lambdas[k].abs() < 1e-12);
        }
    }

    #[test]
    fn product_state_is_separable() {
        let d = DensityMatrix::pure_state(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(wootters_concurrence(&d).unwrap().concurrence, 0.0);
    }

    #[test]
    fn maximally_mixed_state() {
        let d = DensityMatrix::new(ComplexMat4::identity().scale(0.25)).unwrap();
        let w = wootters_concurrence(&d).unwrap();
        assert_eq!(w.concurrence, 0.0);
        for l in w.lambdas {
            assert!((l - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn pure_concurrence_cases() {
        let inv = 1.0 / 2f64.sqrt();
        let bell = GroundAmplitudes {
            a_minus: inv,
            b_plus: 0.0,
            b_minus: 0.0,
            a_plus: inv,
            d: 1.0,
        };
        assert!((pure_concurrence(&bell).unwrap() - 1.0).abs() < 1e-15);

        let product = GroundAmplitudes {
            a_minus: 1.0,
            b_plus: 0.0,
            b_minus: 0.0,
            a_plus: 0.0,
            d: 1.0,
        };
        assert_eq!(pure_concurrence(&product).unwrap(), 0.0);

        let junk = GroundAmplitudes {
            a_minus: 1.0,
            b_plus: 1.0,
            b_minus: 0.0,
            a_plus: 0.0,
            d: 1.0,
        };
        assert!(matches!(
            pure_concurrence(&junk),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn ground_concurrence_alpha_one() {
        // Eq-level cross-check: closed form, amplitude formula and Wootters
        // on the projector all give 7/sqrt(52).
        let p = params(1.0, 0.0, 0.0);
        let expect = 7.0 / 52f64.sqrt();
        let c_closed = closed_form_concurrence(&p).unwrap();
        assert!((c_closed - expect).abs() < 1e-12);

        let g = ground_amplitudes(&p).unwrap();
        assert!((pure_concurrence(&g).unwrap() - expect).abs() < 1e-12);

        let d = DensityMatrix::pure_state(&g.as_vector()).unwrap();
        let w = wootters_concurrence(&d).unwrap();
        assert!((w.concurrence - expect).abs() < 1e-9);
    }

    #[test]
    fn closed_form_limits() {
        // Small field, eta = 0: maximum concurrence 1.
        let c = closed_form_concurrence(&params(1e-10, 0.0, 0.0)).unwrap();
        assert!((c - 1.0).abs() < 1e-9);
        // alpha = eta = 1: exactly 1 (radicand 49).
        let c = closed_form_concurrence(&params(1.0, 1.0, 0.0)).unwrap();
        assert_eq!(c, 1.0);
        // High field: 0.5.
        let c = closed_form_concurrence(&params(1e4, 0.14, 0.0)).unwrap();
        assert!((c - 0.5).abs() < 5e-4);
        // Small field at eta = 1: (1 + 1/12)^(-1/2).
        let c = closed_form_concurrence(&params(1e-10, 1.0, 0.0)).unwrap();
        assert!((c - (1.0 + 1.0 / 12.0f64).powf(-0.5)).abs() < 1e-9);
        // Zero field: degenerate.
        assert!(matches!(
            closed_form_concurrence(&params(0.0, 0.5, 0.0)),
            Err(Error::DegenerateGround)
        ));
    }

    #[test]
    fn closed_form_matches_amplitudes_on_grid() {
        for i in 1..=15 {
            for j in 0..=5 {
                let p = params(5.0 * i as f64 / 15.0, j as f64 / 5.0, 0.0);
                let c1 = closed_form_concurrence(&p).unwrap();
                let c2 = pure_concurrence(&ground_amplitudes(&p).unwrap()).unwrap();
                assert!((c1 - c2).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn thermal_infinite_temperature() {
        let d = thermal_state(&params(1.0, 0.14, 0.0)).unwrap();
        assert!(d.matrix().max_abs_diff(&ComplexMat4::identity().scale(0.25)) < 1e-14);
        assert_eq!(wootters_concurrence(&d).unwrap().concurrence, 0.0);
    }

    #[test]
    fn thermal_low_temperature_is_ground_projector() {
        // Gap at (1, 0) is about 1.96, so beta = 50 leaves e^{-98} of
        // excited weight.
        let d = thermal_state(&params(1.0, 0.0, 50.0)).unwrap();
        let g = ground_amplitudes(&params(1.0, 0.0, 0.0)).unwrap();
        let proj = DensityMatrix::pure_state(&g.as_vector()).unwrap();
        assert!(d.matrix().max_abs_diff(proj.matrix()) < 1e-9);
    }

    #[test]
    fn thermal_mixedness_at_finite_beta() {
        let d = thermal_state(&params(1.0, 0.14, 1.0)).unwrap();
        assert!((d.matrix().trace().re - 1.0).abs() < 1e-12);
        assert!(d.purity() < 1.0);
    }

    #[test]
    fn thermal_zero_field_stays_separable() {
        let d = thermal_state(&params(0.0, 0.14, 5.0)).unwrap();
        assert_eq!(wootters_concurrence(&d).unwrap().concurrence, 0.0);
    }

    #[test]
    fn thermal_large_beta_approaches_closed_form() {
        for &(a, e) in &[(0.5, 0.14), (1.0, 0.5), (2.0, 1.0)] {
            let ct = wootters_concurrence(&thermal_state(&params(a, e, 40.0)).unwrap())
                .unwrap()
                .concurrence;
            let c = closed_form_concurrence(&params(a, e, 0.0)).unwrap();
            assert!((ct - c).abs() < 1e-6, "alpha={a} eta={e}: {ct} vs {c}");
        }
    }

    #[test]
    fn sqrt_of_thermal_state_squares_back() {
        let d = thermal_state(&params(1.0, 0.14, 2.0)).unwrap();
        let s = mat_sqrt_psd(d.matrix()).unwrap();
        assert!((s * s).max_abs_diff(d.matrix()) < 1e-9);
    }

    #[test]
    fn wootters_equals_pure_formula_on_random_states() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let mut v = [0.0f64; 4];
            for x in v.iter_mut() {
                *x = rng.gen_range(-1.0..1.0);
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-3 {
                continue;
            }
            for x in v.iter_mut() {
                *x /= norm;
            }
            let expect = 2.0 * (v[0] * v[3] - v[1] * v[2]).abs();
            let d = DensityMatrix::pure_state(&v).unwrap();
            let got = wootters_concurrence(&d).unwrap().concurrence;
            assert!((got - expect.min(1.0)).abs() < 1e-9, "{v:?}");
        }
    }

    #[test]
    fn rejects_invalid_states() {
        // Wrong trace.
        assert!(matches!(
            DensityMatrix::new(ComplexMat4::identity()),
            Err(Error::InvalidState { .. })
        ));
        // Not Hermitian.
        let mut m = ComplexMat4::identity().scale(0.25);
        m[(0, 1)] = c64(0.1, 0.1);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::InvalidState { .. })
        ));
        // Negative eigenvalue with unit trace.
        let m = ComplexMat4::from_diag([0.7, 0.5, -0.2, 0.0]);
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::InvalidState { .. })
        ));
        // Unnormalized pure state.
        assert!(matches!(
            DensityMatrix::pure_state(&[1.0, 1.0, 0.0, 0.0]),
            Err(Error::NotNormalized { .. })
        ));
    }
}
