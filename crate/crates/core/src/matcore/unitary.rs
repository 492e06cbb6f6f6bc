use std::ops::Deref;

use serde::Serialize;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Default bound on `max |(U U* - I)_ij|` for constructed matrices.
pub const UNITARY_TOL: f64 = 1e-10;

/// A square complex matrix checked to be unitary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitaryMatrix {
    #[serde(skip)]
    matrix: ComplexMatrix,
    unitarity_residual: f64,
}

impl UnitaryMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, UNITARY_TOL)
    }

    pub fn with_tolerance(matrix: ComplexMatrix, tolerance: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::mismatch(
                "a square matrix",
                format!("{}x{}", matrix.rows(), matrix.cols()),
            ));
        }
        if matrix.rows() == 0 {
            return Err(Error::invalid("a unitary matrix needs N >= 1"));
        }
        let residual = matrix.unitarity_residual();
        if !(residual <= tolerance) {
            return Err(Error::NotUnitary { residual, tolerance });
        }
        Ok(UnitaryMatrix {
            matrix,
            unitarity_residual: residual,
        })
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn unitarity_residual(&self) -> f64 {
        self.unitarity_residual
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn transpose(&self) -> Self {
        self.rewrap(self.matrix.transpose())
    }

    pub fn conj(&self) -> Self {
        self.rewrap(self.matrix.conj())
    }

    pub fn adjoint(&self) -> Self {
        self.rewrap(self.matrix.adjoint())
    }

    // transpose and conjugation are exact, the residual cannot change
    fn rewrap(&self, matrix: ComplexMatrix) -> Self {
        UnitaryMatrix {
            unitarity_residual: matrix.unitarity_residual(),
            matrix,
        }
    }
}

impl Deref for UnitaryMatrix {
    type Target = ComplexMatrix;

    fn deref(&self) -> &ComplexMatrix {
        &self.matrix
    }
}
