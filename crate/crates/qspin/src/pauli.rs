//! The 16-element operator basis sigma_i (x) sigma_j for the two fictitious
//! spins, and exact decomposition/reconstruction of any 4x4 operator in it.
//!
//! Conventions are fixed here and used identically everywhere else:
//! sigma_z = diag(1, -1), sigma_x off-diagonal real, sigma_y off-diagonal
//! -i/+i, and the first Kronecker factor is the first fictitious spin.
//! Tr(B_k B_l) = 4 delta_kl, so coefficients are Tr(m B)/4.

use std::fmt;
use std::sync::OnceLock;

use crate::linalg::{c64, kron2, Complex, ComplexMat4, Mat2};

/// Single-spin basis label: identity or one of the three Pauli axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> Mat2 {
        match self {
            Pauli::I => sigma_0(),
            Pauli::X => sigma_x(),
            Pauli::Y => sigma_y(),
            Pauli::Z => sigma_z(),
        }
    }

    fn ordinal(self) -> usize {
        match self {
            Pauli::I => 0,
            Pauli::X => 1,
            Pauli::Y => 2,
            Pauli::Z => 3,
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Pauli::I => "0",
            Pauli::X => "x",
            Pauli::Y => "y",
            Pauli::Z => "z",
        };
        f.write_str(s)
    }
}

pub fn sigma_0() -> Mat2 {
    [[c64(1.0, 0.0), c64(0.0, 0.0)], [c64(0.0, 0.0), c64(1.0, 0.0)]]
}

pub fn sigma_x() -> Mat2 {
    [[c64(0.0, 0.0), c64(1.0, 0.0)], [c64(1.0, 0.0), c64(0.0, 0.0)]]
}

pub fn sigma_y() -> Mat2 {
    [[c64(0.0, 0.0), c64(0.0, -1.0)], [c64(0.0, 1.0), c64(0.0, 0.0)]]
}

pub fn sigma_z() -> Mat2 {
    [[c64(1.0, 0.0), c64(0.0, 0.0)], [c64(0.0, 0.0), c64(-1.0, 0.0)]]
}

/// Index into the product basis: (first spin label, second spin label).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliIndex {
    pub first: Pauli,
    pub second: Pauli,
}

impl PauliIndex {
    pub const fn new(first: Pauli, second: Pauli) -> Self {
        PauliIndex { first, second }
    }

    /// All 16 indices, first label varying slowest.
    pub fn all() -> impl Iterator<Item = PauliIndex> {
        Pauli::ALL
            .into_iter()
            .flat_map(|a| Pauli::ALL.into_iter().map(move |b| PauliIndex::new(a, b)))
    }

    fn flat(self) -> usize {
        4 * self.first.ordinal() + self.second.ordinal()
    }
}

impl fmt::Display for PauliIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

fn basis_table() -> &'static [ComplexMat4; 16] {
    static TABLE: OnceLock<[ComplexMat4; 16]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [ComplexMat4::ZERO; 16];
        for idx in PauliIndex::all() {
            table[idx.flat()] = kron2(&idx.first.matrix(), &idx.second.matrix());
        }
        table
    })
}

/// The basis element sigma_first (x) sigma_second.
pub fn basis_element(idx: PauliIndex) -> ComplexMat4 {
    basis_table()[idx.flat()]
}

/// Coefficients of an operator in the product basis. Kept complex so that
/// non-Hermitian intermediates can be decomposed for diagnostics; Hermitian
/// sources give real coefficients (checked by `max_imag`).
#[derive(Debug, Clone, PartialEq)]
pub struct PauliCoeffs {
    coeffs: [Complex; 16],
}

impl PauliCoeffs {
    pub fn zero() -> Self {
        PauliCoeffs {
            coeffs: [c64(0.0, 0.0); 16],
        }
    }

    pub fn get(&self, idx: PauliIndex) -> Complex {
        self.coeffs[idx.flat()]
    }

    pub fn set(&mut self, idx: PauliIndex, value: Complex) {
        self.coeffs[idx.flat()] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = (PauliIndex, Complex)> + '_ {
        PauliIndex::all().map(move |idx| (idx, self.coeffs[idx.flat()]))
    }

    /// Entries with modulus above `cutoff`, for display.
    pub fn nonzero(&self, cutoff: f64) -> Vec<(PauliIndex, Complex)> {
        self.iter().filter(|(_, c)| c.norm() > cutoff).collect()
    }

    /// Largest imaginary part in modulus; ~0 for Hermitian sources.
    pub fn max_imag(&self) -> f64 {
        self.coeffs.iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }
}

/// Project an operator onto the basis: c_ij = Tr(m sigma_i (x) sigma_j) / 4.
pub fn decompose(m: &ComplexMat4) -> PauliCoeffs {
    let mut out = PauliCoeffs::zero();
    for idx in PauliIndex::all() {
        let b = basis_element(idx);
        out.set(idx, (*m * b).trace() * 0.25);
    }
    out
}

/// Sum c_ij sigma_i (x) sigma_j.
pub fn reconstruct(c: &PauliCoeffs) -> ComplexMat4 {
    let mut out = ComplexMat4::ZERO;
    for (idx, coeff) in c.iter() {
        out = out + basis_element(idx) * coeff;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    #[test]
    fn basis_identity_and_z0() {
        let e = basis_element(PauliIndex::new(Pauli::I, Pauli::I));
        assert!(e.max_abs_diff(&ComplexMat4::identity()) == 0.0);
        let z0 = basis_element(PauliIndex::new(Pauli::Z, Pauli::I));
        assert!(z0.max_abs_diff(&ComplexMat4::from_diag([1.0, 1.0, -1.0, -1.0])) == 0.0);
    }

    #[test]
    fn basis_yy_entries() {
        // Direct Kronecker expansion: (1,4) = -1, (2,3) = (3,2) = +1,
        // (4,1) = -1 in 1-based indexing, zeros elsewhere.
        let yy = basis_element(PauliIndex::new(Pauli::Y, Pauli::Y));
        let mut expect = ComplexMat4::ZERO;
        expect[(0, 3)] = c64(-1.0, 0.0);
        expect[(1, 2)] = c64(1.0, 0.0);
        expect[(2, 1)] = c64(1.0, 0.0);
        expect[(3, 0)] = c64(-1.0, 0.0);
        assert!(yy.max_abs_diff(&expect) == 0.0);
    }

    #[test]
    fn orthonormality_exact() {
        let all: Vec<ComplexMat4> = PauliIndex::all().map(basis_element).collect();
        for (k, bk) in all.iter().enumerate() {
            for (l, bl) in all.iter().enumerate() {
                let t = (*bk * *bl).trace();
                let expect = if k == l { 4.0 } else { 0.0 };
                assert_eq!(t, c64(expect, 0.0), "pair ({k},{l})");
            }
        }
    }

    #[test]
    fn decompose_identity() {
        let c = decompose(&ComplexMat4::identity());
        for (idx, coeff) in c.iter() {
            let expect = if idx == PauliIndex::new(Pauli::I, Pauli::I) {
                c64(1.0, 0.0)
            } else {
                c64(0.0, 0.0)
            };
            assert!((coeff - expect).norm() < 1e-15);
        }
    }

    #[test]
    fn decompose_spin_ix() {
        // I_x = (sqrt3/2) s0(x)sx + (1/2) sx(x)sx + (1/2) sy(x)sy.
        let (ix, _, _) = crate::model::spin32_operators();
        let c = decompose(&ix);
        let cases = [
            (PauliIndex::new(Pauli::I, Pauli::X), SQRT3 / 2.0),
            (PauliIndex::new(Pauli::X, Pauli::X), 0.5),
            (PauliIndex::new(Pauli::Y, Pauli::Y), 0.5),
        ];
        for (idx, expect) in cases {
            assert!((c.get(idx) - c64(expect, 0.0)).norm() < 1e-14, "{idx}");
        }
        let named: Vec<PauliIndex> = cases.iter().map(|(i, _)| *i).collect();
        for (idx, coeff) in c.iter() {
            if !named.contains(&idx) {
                assert!(coeff.norm() < 1e-14, "{idx} should vanish");
            }
        }
    }

    #[test]
    fn decompose_quadrupole_eta_coefficient_is_sqrt3() {
        // Trace projection of the eta = 1 quadrupole Hamiltonian: the
        // sigma_x (x) sigma_0 coefficient comes out sqrt(3), twice the
        // printed value. The model module carries both as modes.
        let p = crate::model::ModelParams::new(0.0, 1.0, 0.0, crate::model::Mode::Exact).unwrap();
        let hq = crate::model::hamiltonian_spin32(&p);
        let c = decompose(&hq);
        assert!(
            (c.get(PauliIndex::new(Pauli::Z, Pauli::Z)) - c64(3.0, 0.0)).norm() < 1e-14
        );
        assert!(
            (c.get(PauliIndex::new(Pauli::X, Pauli::I)) - c64(SQRT3, 0.0)).norm() < 1e-14
        );
    }

    #[test]
    fn reconstruct_printed_quadrupole_matrix() {
        // {(z,z): 3, (x,0): sqrt3 * eta / 2} at eta = 0.14 reproduces the
        // printed two-qubit quadrupole matrix in units of omega_Q.
        let eta = 0.14;
        let mut c = PauliCoeffs::zero();
        c.set(PauliIndex::new(Pauli::Z, Pauli::Z), c64(3.0, 0.0));
        c.set(PauliIndex::new(Pauli::X, Pauli::I), c64(SQRT3 * eta / 2.0, 0.0));
        let m = reconstruct(&c);

        let h = SQRT3 * eta / 2.0;
        let mut expect = ComplexMat4::from_diag([3.0, -3.0, -3.0, 3.0]);
        expect[(0, 2)] = c64(h, 0.0);
        expect[(2, 0)] = c64(h, 0.0);
        expect[(1, 3)] = c64(h, 0.0);
        expect[(3, 1)] = c64(h, 0.0);
        assert!(m.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn round_trip_random_hermitian() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..32 {
            let raw = ComplexMat4::from_fn(|_, _| {
                c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let m = (raw + raw.adjoint()).scale(0.5);
            let c = decompose(&m);
            assert!(c.max_imag() < 1e-12, "Hermitian source, real coefficients");
            assert!(reconstruct(&c).max_abs_diff(&m) < 1e-12);
        }
    }
}
