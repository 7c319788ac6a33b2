//! Dense complex 4x4 (and 2x2) matrix arithmetic, a cyclic Jacobi Hermitian
//! eigensolver, and spectral matrix functions. Everything here is fixed-size
//! and dependency-free by design: the whole model lives in a 4x4 Hilbert
//! space, so general linear algebra would be dead weight.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type Complex = Complex64;

/// Shorthand for a complex number from real/imaginary parts.
pub const fn c64(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// A 2x2 complex matrix, row-major. Only used as a Kronecker factor.
pub type Mat2 = [[Complex; 2]; 2];

/// Dense 4x4 complex matrix, row-major logical indexing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMat4 {
    entries: [[Complex; 4]; 4],
}

impl ComplexMat4 {
    pub const ZERO: ComplexMat4 = ComplexMat4 {
        entries: [[c64(0.0, 0.0); 4]; 4],
    };

    pub fn zeros() -> Self {
        Self::ZERO
    }

    pub fn identity() -> Self {
        let mut m = Self::ZERO;
        for k in 0..4 {
            m.entries[k][k] = c64(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: [[Complex; 4]; 4]) -> Self {
        ComplexMat4 { entries: rows }
    }

    /// Matrix with the given real diagonal, zeros elsewhere.
    pub fn from_diag(d: [f64; 4]) -> Self {
        let mut m = Self::ZERO;
        for (k, &x) in d.iter().enumerate() {
            m.entries[k][k] = c64(x, 0.0);
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut m = Self::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = f(i, j);
            }
        }
        m
    }

    /// Rank-one outer product v v^dag of a 4-vector.
    pub fn outer(v: &[Complex; 4]) -> Self {
        Self::from_fn(|i, j| v[i] * v[j].conj())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.entries[j][i].conj())
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.entries[i][j].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.entries[j][i])
    }

    pub fn trace(&self) -> Complex {
        (0..4).map(|k| self.entries[k][k]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_fn(|i, j| self.entries[i][j] * s)
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of the difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// Column k as a 4-vector.
    pub fn column(&self, k: usize) -> [Complex; 4] {
        [
            self.entries[0][k],
            self.entries[1][k],
            self.entries[2][k],
            self.entries[3][k],
        ]
    }

    /// Apply the matrix to a vector.
    pub fn mul_vec(&self, v: &[Complex; 4]) -> [Complex; 4] {
        let mut out = [c64(0.0, 0.0); 4];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, &x) in v.iter().enumerate() {
                *o += self.entries[i][j] * x;
            }
        }
        out
    }

    /// Deviation from Hermiticity, max |m - m^dag|.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    fn require_hermitian(&self) -> Result<()> {
        let dev = self.hermiticity_defect();
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        Ok(())
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    s += self.entries[i][j].norm_sqr();
                }
            }
        }
        s.sqrt()
    }
}

impl Index<(usize, usize)> for ComplexMat4 {
    type Output = Complex;
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.entries[i][j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMat4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.entries[i][j]
    }
}

impl Add for ComplexMat4 {
    type Output = ComplexMat4;
    fn add(self, rhs: ComplexMat4) -> ComplexMat4 {
        ComplexMat4::from_fn(|i, j| self.entries[i][j] + rhs.entries[i][j])
    }
}

impl Sub for ComplexMat4 {
    type Output = ComplexMat4;
    fn sub(self, rhs: ComplexMat4) -> ComplexMat4 {
        ComplexMat4::from_fn(|i, j| self.entries[i][j] - rhs.entries[i][j])
    }
}

impl Neg for ComplexMat4 {
    type Output = ComplexMat4;
    fn neg(self) -> ComplexMat4 {
        ComplexMat4::from_fn(|i, j| -self.entries[i][j])
    }
}

impl Mul for ComplexMat4 {
    type Output = ComplexMat4;
    fn mul(self, rhs: ComplexMat4) -> ComplexMat4 {
        let mut out = ComplexMat4::ZERO;
        for i in 0..4 {
            for k in 0..4 {
                let a = self.entries[i][k];
                if a == c64(0.0, 0.0) {
                    continue;
                }
                for j in 0..4 {
                    out.entries[i][j] += a * rhs.entries[k][j];
                }
            }
        }
        out
    }
}

impl Mul<Complex> for ComplexMat4 {
    type Output = ComplexMat4;
    fn mul(self, s: Complex) -> ComplexMat4 {
        ComplexMat4::from_fn(|i, j| self.entries[i][j] * s)
    }
}

impl Mul<f64> for ComplexMat4 {
    type Output = ComplexMat4;
    fn mul(self, s: f64) -> ComplexMat4 {
        self.scale(s)
    }
}

/// Hermiticity precondition for the eigensolver and spectral functions.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Default Jacobi convergence tolerance on the off-diagonal Frobenius norm.
pub const DEFAULT_EIG_TOL: f64 = 1e-12;

/// Hard cap on Jacobi sweeps. A 4x4 Hermitian matrix converges in a handful.
const MAX_SWEEPS: usize = 100;

/// Eigenvalue clamp for the PSD square root: values in [-PSD_CLAMP, 0) are
/// treated as zero.
pub const PSD_CLAMP: f64 = 1e-12;

/// Eigendecomposition of a Hermitian 4x4: ascending values, orthonormal
/// column eigenvectors, value k paired with column k.
#[derive(Debug, Clone, Copy)]
pub struct Spectrum4 {
    pub values: [f64; 4],
    pub vectors: ComplexMat4,
}

impl Spectrum4 {
    /// Eigenvector paired with `values[k]`.
    pub fn vector(&self, k: usize) -> [Complex; 4] {
        self.vectors.column(k)
    }

    /// Sum of f(lambda_k) v_k v_k^dag — the spectral calculus backing
    /// exp, sqrt and Gibbs weights.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> ComplexMat4 {
        let mut out = ComplexMat4::ZERO;
        for k in 0..4 {
            out = out + ComplexMat4::outer(&self.vector(k)).scale(f(self.values[k]));
        }
        out
    }

    /// Reconstruct the original matrix.
    pub fn reconstruct(&self) -> ComplexMat4 {
        self.map_values(|x| x)
    }
}

/// Cyclic Jacobi eigensolver for a Hermitian 4x4 matrix.
///
/// Sweeps the six upper-triangle pairs with complex plane rotations until the
/// off-diagonal Frobenius norm drops below `tol` (cap 100 sweeps). Vectors
/// are orthonormal by construction; degenerate eigenspaces come back in an
/// arbitrary orthonormal basis, so callers must only rely on projectors.
pub fn herm_eigensolve(m: &ComplexMat4, tol: f64) -> Result<Spectrum4> {
    m.require_hermitian()?;

    let mut a = *m;
    // Fold any sub-tolerance asymmetry away so the iteration sees an exactly
    // Hermitian matrix.
    a = (a + a.adjoint()).scale(0.5);
    let mut v = ComplexMat4::identity();

    let mut converged = a.off_diagonal_norm() < tol;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
        a = (a + a.adjoint()).scale(0.5);
        converged = a.off_diagonal_norm() < tol;
    }
    if !converged {
        return Err(Error::NoConvergence {
            off_norm: a.off_diagonal_norm(),
            tol,
        });
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));

    let mut values = [0.0; 4];
    let mut vectors = ComplexMat4::ZERO;
    for (k, &src) in order.iter().enumerate() {
        values[k] = a[(src, src)].re;
        for i in 0..4 {
            vectors[(i, k)] = v[(i, src)];
        }
    }
    Ok(Spectrum4 { values, vectors })
}

/// One complex Jacobi rotation annihilating a[(p, q)].
fn jacobi_rotate(a: &mut ComplexMat4, v: &mut ComplexMat4, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
    // Smaller root of t^2 - 2*theta*t - 1 = 0, for a rotation angle <= 45 deg.
    let t = if theta >= 0.0 {
        -1.0 / (theta + (1.0 + theta * theta).sqrt())
    } else {
        1.0 / (-theta + (1.0 + theta * theta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let sigma = t * c;

    // G is the identity outside the (p, q) plane.
    let mut g = ComplexMat4::identity();
    g[(p, p)] = c64(c, 0.0);
    g[(p, q)] = -(sigma * phase);
    g[(q, p)] = c64(sigma, 0.0) * phase.conj();
    g[(q, q)] = c64(c, 0.0);

    *a = g.adjoint() * *a * g;
    *v = *v * g;
}

/// exp(m) for Hermitian m, via the spectral decomposition.
pub fn mat_exp_hermitian(m: &ComplexMat4) -> Result<ComplexMat4> {
    let spec = herm_eigensolve(m, DEFAULT_EIG_TOL)?;
    Ok(spec.map_values(f64::exp))
}

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-1e-12, 0) clamp to zero; anything below that is an error.
pub fn mat_sqrt_psd(m: &ComplexMat4) -> Result<ComplexMat4> {
    let spec = herm_eigensolve(m, DEFAULT_EIG_TOL)?;
    if let Some(&bad) = spec.values.iter().find(|&&x| x < -PSD_CLAMP) {
        return Err(Error::NegativeEigenvalue { value: bad });
    }
    Ok(spec.map_values(|x| x.max(0.0).sqrt()))
}

/// Singular values of a 4x4 complex matrix, descending, via one-sided
/// (Hestenes) Jacobi: column pairs are rotated until mutually orthogonal,
/// then the values are the column norms. Small singular values come out
/// with absolute accuracy ~eps * |m|, without the squaring loss of an
/// eigendecomposition of m^dag m.
pub fn singular_values4(m: &ComplexMat4) -> Result<[f64; 4]> {
    const ORTH_TOL: f64 = 1e-14;
    let mut y = *m;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        // Columns at rounding scale carry no resolvable singular value;
        // rotating them against real columns only chases noise (and can
        // spiral their norms through underflow), so such pairs are skipped.
        let scale_sq = (0..4)
            .map(|k| (0..4).map(|i| y[(i, k)].norm_sqr()).sum::<f64>())
            .fold(0.0, f64::max);
        let null_sq = 16.0 * f64::EPSILON * f64::EPSILON * scale_sq;
        let mut rotated = false;
        for p in 0..3 {
            for q in (p + 1)..4 {
                let mut a = 0.0;
                let mut b = 0.0;
                let mut cross = c64(0.0, 0.0);
                for i in 0..4 {
                    a += y[(i, p)].norm_sqr();
                    b += y[(i, q)].norm_sqr();
                    cross += y[(i, p)].conj() * y[(i, q)];
                }
                if a <= null_sq || b <= null_sq {
                    continue;
                }
                let denom = (a * b).sqrt();
                if cross.norm() <= ORTH_TOL * denom {
                    continue;
                }
                rotated = true;
                // Jacobi rotation diagonalizing the 2x2 Gram block
                // [[a, cross], [conj(cross), b]].
                let mag = cross.norm();
                let phase = cross / mag;
                let theta = (b - a) / (2.0 * mag);
                let t = if theta >= 0.0 {
                    -1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for i in 0..4 {
                    let yp = y[(i, p)];
                    let yq = y[(i, q)];
                    y[(i, p)] = yp * c + yq * (s * phase.conj());
                    y[(i, q)] = yq * c - yp * (s * phase);
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            off_norm: f64::NAN,
            tol: ORTH_TOL,
        });
    }
    let mut sigma = [0.0f64; 4];
    for (k, s) in sigma.iter_mut().enumerate() {
        *s = (0..4).map(|i| y[(i, k)].norm_sqr()).sum::<f64>().sqrt();
    }
    sigma.sort_by(|x, z| z.total_cmp(x));
    Ok(sigma)
}

/// Kronecker product of two 2x2 matrices:
/// (a (x) b)[2i+k, 2j+l] = a[i][j] * b[k][l].
pub fn kron2(a: &Mat2, b: &Mat2) -> ComplexMat4 {
    ComplexMat4::from_fn(|r, c| a[r / 2][c / 2] * b[r % 2][c % 2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{sigma_0, sigma_x, sigma_y, sigma_z};

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn eigensolve_identity() {
        let spec = herm_eigensolve(&ComplexMat4::identity(), DEFAULT_EIG_TOL).unwrap();
        for k in 0..4 {
            assert_close(spec.values[k], 1.0, 1e-14);
        }
        // Orthonormality even in the fully degenerate case.
        let vtv = spec.vectors.adjoint() * spec.vectors;
        assert!(vtv.max_abs_diff(&ComplexMat4::identity()) < 1e-12);
    }

    #[test]
    fn eigensolve_diagonal() {
        let m = ComplexMat4::from_diag([3.0, -3.0, -3.0, 3.0]);
        let spec = herm_eigensolve(&m, DEFAULT_EIG_TOL).unwrap();
        assert_eq!(spec.values, [-3.0, -3.0, 3.0, 3.0]);
    }

    #[test]
    fn eigensolve_paper_hamiltonian_ground() {
        // Lowest eigenvalue of H(alpha=1, eta=0) in paper mode is
        // (-1 - sqrt(52))/2, from the odd-parity 2x2 block; the full
        // closed-form check lives in the model tests.
        let p = crate::model::ModelParams::new(1.0, 0.0, 0.0, crate::model::Mode::Paper).unwrap();
        let h = crate::model::hamiltonian_two_qubit(&p);
        let spec = herm_eigensolve(&h, DEFAULT_EIG_TOL).unwrap();
        assert_close(spec.values[0], (-1.0 - f64::sqrt(52.0)) / 2.0, 1e-12);
    }

    #[test]
    fn eigensolve_rejects_non_hermitian() {
        let mut m = ComplexMat4::identity();
        m[(0, 1)] = c64(1.0, 0.0);
        assert!(matches!(
            herm_eigensolve(&m, DEFAULT_EIG_TOL),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let e = mat_exp_hermitian(&ComplexMat4::ZERO).unwrap();
        assert!(e.max_abs_diff(&ComplexMat4::identity()) < 1e-14);
    }

    #[test]
    fn exp_of_diagonal() {
        let m = ComplexMat4::from_diag([(2.0f64).ln(), 0.0, 0.0, 0.0]);
        let e = mat_exp_hermitian(&m).unwrap();
        assert!(e.max_abs_diff(&ComplexMat4::from_diag([2.0, 1.0, 1.0, 1.0])) < 1e-12);
    }

    #[test]
    fn sqrt_identity_and_diagonal() {
        let s = mat_sqrt_psd(&ComplexMat4::identity()).unwrap();
        assert!(s.max_abs_diff(&ComplexMat4::identity()) < 1e-14);
        let s = mat_sqrt_psd(&ComplexMat4::from_diag([4.0, 1.0, 0.0, 9.0])).unwrap();
        assert!(s.max_abs_diff(&ComplexMat4::from_diag([2.0, 1.0, 0.0, 3.0])) < 1e-12);
    }

    #[test]
    fn sqrt_rejects_negative() {
        let m = ComplexMat4::from_diag([1.0, 1.0, -1e-6, 1.0]);
        assert!(matches!(
            mat_sqrt_psd(&m),
            Err(Error::NegativeEigenvalue { .. })
        ));
    }

    #[test]
    fn kron_pauli_cases() {
        assert!(kron2(&sigma_0(), &sigma_0()).max_abs_diff(&ComplexMat4::identity()) == 0.0);
        assert!(
            kron2(&sigma_z(), &sigma_z()).max_abs_diff(&ComplexMat4::from_diag([
                1.0, -1.0, -1.0, 1.0
            ])) == 0.0
        );
        let xx = kron2(&sigma_x(), &sigma_x());
        let mut anti = ComplexMat4::ZERO;
        for k in 0..4 {
            anti[(k, 3 - k)] = c64(1.0, 0.0);
        }
        assert!(xx.max_abs_diff(&anti) == 0.0);
    }

    #[test]
    fn kron_mixed_product_property() {
        // (a (x) b)(c (x) d) = (ac) (x) (bd), exactly for Pauli factors.
        let paulis = [sigma_0(), sigma_x(), sigma_y(), sigma_z()];
        let mul2 = |a: &Mat2, b: &Mat2| -> Mat2 {
            let mut out = [[c64(0.0, 0.0); 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        out[i][j] += a[i][k] * b[k][j];
                    }
                }
            }
            out
        };
        for a in &paulis {
            for b in &paulis {
                for c in &paulis {
                    for d in &paulis {
                        let lhs = kron2(a, b) * kron2(c, d);
                        let rhs = kron2(&mul2(a, c), &mul2(b, d));
                        assert!(lhs.max_abs_diff(&rhs) == 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn exp_commutes_with_argument() {
        let p = crate::model::ModelParams::new(1.3, 0.4, 0.0, crate::model::Mode::Paper).unwrap();
        let h = crate::model::hamiltonian_two_qubit(&p);
        let e = mat_exp_hermitian(&h).unwrap();
        assert!((e * h).max_abs_diff(&(h * e)) < 1e-9);
    }
}
