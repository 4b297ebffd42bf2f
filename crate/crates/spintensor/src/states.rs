//! Named reference states spanning anticoherence orders 0, 1, 2, and 2j.

use ndarray::Array1;
use num_complex::Complex64;

use crate::angular::{coherent_state, StateVector};
use crate::error::{Error, Result};
use crate::spin::HalfIntegerSpin;
use crate::tensor::DensityMatrix;

/// Projector onto the coherent state at (theta, phi); order 0.
pub fn coherent_projector(spin: HalfIntegerSpin, theta: f64, phi: f64) -> DensityMatrix {
    DensityMatrix::from_pure(&coherent_state(spin, theta, phi))
}

/// Projector onto |j, 0| for integer j; order 1 for j = 1.
pub fn m_zero_projector(spin: HalfIntegerSpin) -> Result<DensityMatrix> {
    if !spin.is_integer() {
        return Err(Error::TensorLabelOutOfRange {
            two_j: spin.two_j(),
            k: 0,
            q: 0,
        });
    }
    Ok(DensityMatrix::from_pure(&StateVector::basis(spin, 0)?))
}

/// The cat state (|j,-j> + |j,j>)/sqrt(2); requires 2j >= 1.
pub fn cat_state(spin: HalfIntegerSpin) -> Result<StateVector> {
    if spin.two_j() < 1 {
        return Err(Error::SpinTooSmall {
            required: 1,
            got: spin.two_j(),
        });
    }
    let dim = spin.dim();
    let mut amps: Array1<Complex64> = Array1::zeros(dim);
    let inv_sqrt2 = Complex64::new(0.5f64.sqrt(), 0.0);
    amps[0] = inv_sqrt2;
    amps[dim - 1] = inv_sqrt2;
    StateVector::new(spin, amps)
}

/// Projector onto the cat state; order 1 at j = 1.
pub fn cat_projector(spin: HalfIntegerSpin) -> Result<DensityMatrix> {
    Ok(DensityMatrix::from_pure(&cat_state(spin)?))
}

/// The j = 2 tetrahedron state (|2,2> + sqrt(2)|2,-1>)/sqrt(3); order 2.
pub fn tetrahedron() -> DensityMatrix {
    let spin = HalfIntegerSpin::from_two_j(4);
    let mut amps: Array1<Complex64> = Array1::zeros(5);
    let inv_sqrt3 = (1.0f64 / 3.0).sqrt();
    amps[0] = Complex64::new(inv_sqrt3, 0.0); // m = 2
    amps[3] = Complex64::new((2.0f64 / 3.0).sqrt(), 0.0); // m = -1
    DensityMatrix::from_pure(&StateVector::new(spin, amps).expect("normalized"))
}

/// The maximally mixed state; order 2j.
pub fn maximally_mixed(spin: HalfIntegerSpin) -> DensityMatrix {
    DensityMatrix::maximally_mixed(spin)
}
