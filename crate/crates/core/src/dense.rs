//! Dense `2^n x 2^n` complex matrices.
//!
//! Basis index `i` carries qubit 1 in its most significant bit. Bit value 0
//! is the `+1` eigenvector of `sigma_z` and bit value 1 the `-1` eigenvector,
//! so the computation-basis label of qubit `a` is `1 - bit_a`.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest qubit count accepted by the dense path.
pub const DENSE_CAP: usize = 12;

pub type Matrix2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub const UNIT: Matrix2 = [[ONE, ZERO], [ZERO, ONE]];
pub const SIGMA_X: Matrix2 = [[ZERO, ONE], [ONE, ZERO]];
pub const SIGMA_Y: Matrix2 = [[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]];
pub const SIGMA_Z: Matrix2 = [[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]];

/// A square operator on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    n: usize,
    mat: Array2<Complex64>,
}

fn check_cap(n: usize) -> Result<()> {
    if n > DENSE_CAP {
        return Err(Error::DenseCapExceeded { n, cap: DENSE_CAP });
    }
    Ok(())
}

impl DenseOperator {
    pub fn zeros(n: usize) -> Result<Self> {
        check_cap(n)?;
        let dim = 1usize << n;
        Ok(Self {
            n,
            mat: Array2::zeros((dim, dim)),
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_cap(n)?;
        Ok(Self {
            n,
            mat: Array2::eye(1usize << n),
        })
    }

    pub fn from_matrix(n: usize, mat: Array2<Complex64>) -> Result<Self> {
        check_cap(n)?;
        let dim = 1usize << n;
        if mat.dim() != (dim, dim) {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: mat.nrows(),
            });
        }
        Ok(Self { n, mat })
    }

    /// Kronecker product of 2x2 factors, first factor acting on qubit 1.
    pub fn kron_product(factors: &[Matrix2]) -> Result<Self> {
        let n = factors.len();
        check_cap(n)?;
        let mut mat = Array2::from_elem((1, 1), ONE);
        for f in factors {
            let small = Array2::from_shape_fn((2, 2), |(r, c)| f[r][c]);
            mat = ndarray::linalg::kron(&mat, &small);
        }
        Ok(Self { n, mat })
    }

    /// `m` acting on `qubit` (1-based), unit matrix elsewhere.
    pub fn single_qubit(m: &Matrix2, qubit: usize, n: usize) -> Result<Self> {
        if qubit == 0 || qubit > n {
            return Err(Error::QubitOutOfRange { index: qubit, n });
        }
        let factors: Vec<Matrix2> = (1..=n).map(|a| if a == qubit { *m } else { UNIT }).collect();
        Self::kron_product(&factors)
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.mat
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.mat[[row, col]]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.mat[[row, col]] = value;
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self {
            n: self.n,
            mat: self.mat.dot(&other.mat),
        })
    }

    pub fn adjoint(&self) -> Self {
        Self {
            n: self.n,
            mat: self.mat.t().mapv(|z| z.conj()),
        }
    }

    /// `u^dagger * self * u`.
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        u.adjoint().matmul(self)?.matmul(u)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self {
            n: self.n,
            mat: &self.mat + &other.mat,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self {
            n: self.n,
            mat: &self.mat - &other.mat,
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            n: self.n,
            mat: self.mat.mapv(|z| z * c),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.mat.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.same_shape(other)?;
        Ok(self
            .mat
            .iter()
            .zip(other.mat.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn apply(&self, v: &Array1<Complex64>) -> Result<Array1<Complex64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: v.len(),
            });
        }
        Ok(self.mat.dot(v))
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }
}
