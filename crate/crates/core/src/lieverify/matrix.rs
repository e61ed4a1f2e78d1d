//! Skew-Hermitian traceless matrices, i.e. elements of `su(N)`.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{LieError, TOL_ARITHMETIC};

pub type CMatrix = DMatrix<Complex64>;

/// An element of `su(N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixElement {
    m: CMatrix,
}

impl MatrixElement {
    /// Checks that `m` is square, skew-Hermitian and traceless to `1e-12`
    /// relative to its Frobenius norm.
    pub fn new(m: CMatrix) -> Result<Self, LieError> {
        if !m.is_square() {
            return Err(LieError::NotSquare(m.nrows(), m.ncols()));
        }
        let scale = m.norm().max(1.0);
        let skew = (&m + m.adjoint()).norm() / scale;
        if skew > TOL_ARITHMETIC {
            return Err(LieError::NotSkewHermitian(skew));
        }
        let trace = m.trace().norm() / scale;
        if trace > TOL_ARITHMETIC {
            return Err(LieError::NotTraceless(trace));
        }
        Ok(MatrixElement { m })
    }

    pub(crate) fn from_matrix(m: CMatrix) -> Self {
        debug_assert!(m.is_square());
        MatrixElement { m }
    }

    pub fn zeros(size: usize) -> Self {
        MatrixElement {
            m: CMatrix::zeros(size, size),
        }
    }

    pub fn size(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    /// Frobenius norm, i.e. the norm of `Re tr(X* Y)`.
    pub fn frobenius(&self) -> f64 {
        self.m.norm()
    }

    /// Entrywise complex conjugation, an automorphism of `su(N)`.
    pub fn conjugate(&self) -> Self {
        MatrixElement {
            m: self.m.map(|z| z.conj()),
        }
    }

    /// `g X g*` for unitary `g`.
    pub fn conjugate_by(&self, g: &CMatrix) -> Self {
        MatrixElement {
            m: g * &self.m * g.adjoint(),
        }
    }

    pub fn scaled(&self, t: f64) -> Self {
        MatrixElement { m: &self.m * Complex64::new(t, 0.0) }
    }

    /// `X + t Y`.
    pub fn add_scaled(&mut self, t: f64, other: &MatrixElement) {
        self.m.zip_apply(&other.m, |a, b| *a += b * t);
    }
}

impl Add for &MatrixElement {
    type Output = MatrixElement;
    fn add(self, rhs: &MatrixElement) -> MatrixElement {
        MatrixElement { m: &self.m + &rhs.m }
    }
}

impl Sub for &MatrixElement {
    type Output = MatrixElement;
    fn sub(self, rhs: &MatrixElement) -> MatrixElement {
        MatrixElement { m: &self.m - &rhs.m }
    }
}

impl Neg for &MatrixElement {
    type Output = MatrixElement;
    fn neg(self) -> MatrixElement {
        MatrixElement { m: -&self.m }
    }
}

impl Mul<f64> for &MatrixElement {
    type Output = MatrixElement;
    fn mul(self, t: f64) -> MatrixElement {
        self.scaled(t)
    }
}

/// `[X, Y] = XY - YX`.
pub fn bracket(x: &MatrixElement, y: &MatrixElement) -> Result<MatrixElement, LieError> {
    if x.size() != y.size() {
        return Err(LieError::SizeMismatch(x.size(), y.size()));
    }
    Ok(commutator(x, y))
}

pub(crate) fn commutator(x: &MatrixElement, y: &MatrixElement) -> MatrixElement {
    MatrixElement {
        m: &x.m * &y.m - &y.m * &x.m,
    }
}

/// `Re tr(A* B)` on the whole matrix.
pub fn re_trace_inner(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
}

/// `E_{ab}` with entry `value`, as an `N × N` matrix.
pub(crate) fn unit(size: usize, a: usize, b: usize, value: Complex64) -> CMatrix {
    let mut m = CMatrix::zeros(size, size);
    m[(a, b)] = value;
    m
}

/// Random element of `su(N)` with Gaussian entries.
pub fn random_element<R: Rng + ?Sized>(size: usize, rng: &mut R) -> MatrixElement {
    let mut g = CMatrix::zeros(size, size);
    for z in g.iter_mut() {
        *z = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    }
    let mut skew = (&g - g.adjoint()) * Complex64::new(0.5, 0.0);
    let shift = skew.trace() / Complex64::new(size as f64, 0.0);
    for i in 0..size {
        skew[(i, i)] -= shift;
    }
    MatrixElement { m: skew }
}

/// Random element of `SU(N)`: Cayley transform of a random skew-Hermitian
/// matrix, rescaled to unit determinant.
pub fn random_special_unitary<R: Rng + ?Sized>(size: usize, rng: &mut R) -> CMatrix {
    let a = random_element(size, rng).into_matrix();
    let id = CMatrix::identity(size, size);
    let inv = (&id + &a)
        .try_inverse()
        .expect("I + A is invertible for skew-Hermitian A");
    let u = (&id - &a) * inv;
    let det = u.clone().determinant();
    let phase = Complex64::from_polar(1.0, -det.arg() / size as f64);
    u * phase
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// `i σ / 2` for the Pauli matrix `σ`.
    fn su2(which: char) -> MatrixElement {
        let m = match which {
            'x' => CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., 0.5), c(0., 0.5), c(0., 0.)]),
            'y' => CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0.5, 0.), c(-0.5, 0.), c(0., 0.)]),
            _ => CMatrix::from_row_slice(2, 2, &[c(0., 0.5), c(0., 0.), c(0., 0.), c(0., -0.5)]),
        };
        MatrixElement::new(m).unwrap()
    }

    #[test]
    fn self_bracket_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = random_element(4, &mut rng);
        assert!(bracket(&x, &x).unwrap().frobenius() < 1e-15);
    }

    #[test]
    fn pauli_bracket_sign() {
        // [iσx/2, iσy/2] = -iσz/2 since [σx, σy] = 2iσz.
        let z = bracket(&su2('x'), &su2('y')).unwrap();
        let want = -&su2('z');
        assert!((&z - &want).frobenius() < 1e-15);
    }

    #[test]
    fn jacobi_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (x, y, z) = (
            random_element(5, &mut rng),
            random_element(5, &mut rng),
            random_element(5, &mut rng),
        );
        let b = |a: &MatrixElement, b: &MatrixElement| bracket(a, b).unwrap();
        let sum = &(&b(&x, &b(&y, &z)) + &b(&y, &b(&z, &x))) + &b(&z, &b(&x, &y));
        let scale = x.frobenius() * y.frobenius() * z.frobenius();
        assert!(sum.frobenius() / scale <= 1e-12);
    }

    #[test]
    fn bracket_stays_in_su() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = random_element(3, &mut rng);
        let y = random_element(3, &mut rng);
        assert!(MatrixElement::new(bracket(&x, &y).unwrap().into_matrix()).is_ok());
    }

    #[test]
    fn size_mismatch_and_validation() {
        assert_eq!(
            bracket(&MatrixElement::zeros(2), &MatrixElement::zeros(3)),
            Err(LieError::SizeMismatch(2, 3))
        );
        let hermitian = CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]);
        assert!(matches!(
            MatrixElement::new(hermitian),
            Err(LieError::NotSkewHermitian(_))
        ));
        let id_i = CMatrix::identity(2, 2) * c(0., 1.);
        assert!(matches!(MatrixElement::new(id_i), Err(LieError::NotTraceless(_))));
    }

    #[test]
    fn random_special_unitary_is_special_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let u = random_special_unitary(4, &mut rng);
        let id = CMatrix::identity(4, 4);
        assert!((u.adjoint() * &u - id).norm() < 1e-12);
        assert!((u.clone().determinant() - c(1., 0.)).norm() < 1e-12);
    }
}
