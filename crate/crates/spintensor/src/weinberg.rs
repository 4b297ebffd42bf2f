//! Weinberg covariant matrices S_{mu_1...mu_N} and the boost operator they
//! expand.
//!
//! Construction goes through the symmetric-subspace projection: the matrix
//! element between Dicke states |D_N^(k)> and |D_N^(l)> equals the same
//! element of the N-fold Pauli product sigma_{mu_1} x ... x sigma_{mu_N}.
//! The sandwich is evaluated on the sparse weight-k supports; 2^N x 2^N
//! operators are never materialized. The closed-form polynomial in q and the
//! boost exponential provide two independent evaluation routes used for
//! cross-validation.

use ndarray::Array2;
use num_complex::Complex64;

use crate::angular::{coherent_state, direction_of, spin_operators};
use crate::comb::binomial_f64;
use crate::dicke::weight_classes;
use crate::error::{Error, Result};
use crate::four_vector::FourVector;
use crate::linalg::{exp_hermitian, identity, CMatrix};
use crate::multi_index::{CanonicalIndices, MultiIndex};
use crate::spin::{HalfIntegerSpin, DEFAULT_SPIN_CAP};

/// The full canonical set of covariant matrices for one spin.
#[derive(Clone, Debug)]
pub struct CovariantMatrixSet {
    spin: HalfIntegerSpin,
    indices: CanonicalIndices,
    matrices: Vec<CMatrix>,
}

impl CovariantMatrixSet {
    pub fn spin(&self) -> HalfIntegerSpin {
        self.spin
    }

    pub fn indices(&self) -> &CanonicalIndices {
        &self.indices
    }

    pub fn matrix(&self, idx: &MultiIndex) -> Result<&CMatrix> {
        Ok(&self.matrices[self.indices.position(idx)?])
    }

    pub fn matrix_at(&self, position: usize) -> &CMatrix {
        &self.matrices[position]
    }

    /// Iterate (canonical index, matrix) pairs in the stable enumeration order.
    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &CMatrix)> {
        self.indices.iter().zip(self.matrices.iter())
    }
}

/// Covariant matrix for the index string in the given (not necessarily
/// sorted) order, straight from the Dicke-sandwich definition.
///
/// The result is independent of the ordering; the unsorted entry point exists
/// so that permutation invariance can be verified explicitly.
pub fn covariant_matrix_ordered(n: usize, indices: &[u8]) -> Result<CMatrix> {
    if indices.len() != n {
        return Err(Error::RankMismatch {
            expected: n,
            got: indices.len(),
        });
    }
    if let Some(&bad) = indices.iter().find(|&&v| v > 3) {
        return Err(Error::IndexEntryOutOfRange(bad));
    }

    let mut mask1: u32 = 0; // sigma_1 sites
    let mut mask2: u32 = 0; // sigma_2 sites
    let mut mask3: u32 = 0; // sigma_3 sites
    for (site, &mu) in indices.iter().enumerate() {
        match mu {
            1 => mask1 |= 1 << site,
            2 => mask2 |= 1 << site,
            3 => mask3 |= 1 << site,
            _ => {}
        }
    }
    let flip = mask1 | mask2;
    let p2 = mask2.count_ones() as i32;
    let p3 = mask3.count_ones() as i32;
    let flips = flip.count_ones() as i64;

    // global phase i^(p2)
    let phase = match p2.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };

    let classes = weight_classes(n);
    let dim = n + 1;
    let mut out: CMatrix = Array2::zeros((dim, dim));
    for row in 0..dim {
        let k = (n - row) as i64; // bra weight
        for col in 0..dim {
            let l = (n - col) as i64; // ket weight
            // weight after flipping: k = l + flips - 2*overlap, so the
            // element vanishes unless k - l and flips share parity and range
            if (k - l).abs() > flips || (k - l - flips) % 2 != 0 {
                continue;
            }
            let mut acc: i64 = 0;
            for &y in &classes[l as usize] {
                let y = y as u32;
                let x = y ^ flip;
                if x.count_ones() as i64 != k {
                    continue;
                }
                // sign: sigma_3 sites give +1 on up bits, -1 on down bits;
                // sigma_2 sites give i * (+1 on up kets, -1 on down kets)
                let down2 = p2 - (y & mask2).count_ones() as i32;
                let down3 = p3 - (y & mask3).count_ones() as i32;
                acc += if (down2 + down3) % 2 == 0 { 1 } else { -1 };
            }
            if acc != 0 {
                let norm = (binomial_f64(n as u32, k as u32)
                    * binomial_f64(n as u32, l as u32))
                .sqrt();
                out[(row, col)] = phase * acc as f64 / norm;
            }
        }
    }
    Ok(out)
}

/// Covariant matrix for a canonical multi-index of rank N.
pub fn covariant_matrix(n: usize, idx: &MultiIndex) -> Result<CMatrix> {
    if idx.rank() != n {
        return Err(Error::RankMismatch {
            expected: n,
            got: idx.rank(),
        });
    }
    covariant_matrix_ordered(n, idx.indices())
}

/// All canonical covariant matrices for spin j, under the default cap.
pub fn covariant_set(spin: HalfIntegerSpin) -> Result<CovariantMatrixSet> {
    covariant_set_with_cap(spin, DEFAULT_SPIN_CAP)
}

pub fn covariant_set_with_cap(spin: HalfIntegerSpin, cap: u32) -> Result<CovariantMatrixSet> {
    if spin.two_j() > cap {
        return Err(Error::SpinCapExceeded {
            two_j: spin.two_j(),
            cap,
        });
    }
    let n = spin.qubit_count();
    let indices = CanonicalIndices::new(n);
    let matrices = indices
        .iter()
        .map(|idx| covariant_matrix(n, idx))
        .collect::<Result<Vec<_>>>()?;
    Ok(CovariantMatrixSet {
        spin,
        indices,
        matrices,
    })
}

/// The closed-form polynomial for Pi^(j)(q): one expression for integer j,
/// one for half-integer j, with the identity matrix implicit in front of
/// constant terms.
pub fn pi_polynomial(spin: HalfIntegerSpin, q: &FourVector) -> CMatrix {
    let dim = spin.dim();
    let ops = spin_operators(spin);
    let q_sq = q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3;
    let d = q.q0 * q.q0 - q_sq;
    // A = 2 q.J
    let a = ops.dot([2.0 * q.q1, 2.0 * q.q2, 2.0 * q.q3]);
    let a_sq = a.dot(&a);
    let eye = identity(dim);
    let q0 = Complex64::new(q.q0, 0.0);

    let two_j = spin.two_j();
    if two_j % 2 == 0 {
        // integer j
        let j_int = (two_j / 2) as i32;
        let mut result = eye.mapv(|z| z * d.powi(j_int));
        let mut inv_factorial = 1.0f64; // 1/(2k)!
        for k in 1..=j_int {
            inv_factorial /= ((2 * k - 1) * (2 * k)) as f64;
            let mut product = a.clone();
            for r in 1..k {
                let shift = (2 * r) as f64 * (2 * r) as f64 * q_sq;
                let factor = &a_sq - &eye.mapv(|z| z * shift);
                product = product.dot(&factor);
            }
            let tail = &a + &eye.mapv(|z| z * (2 * k) as f64 * q0);
            let coef = d.powi(j_int - k) * inv_factorial;
            result = &result + &product.dot(&tail).mapv(|z| z * coef);
        }
        result
    } else {
        // half-integer j; j - 1/2 is an integer
        let jm = ((two_j - 1) / 2) as i32;
        let lead = &eye.mapv(|z| z * (-q0)) - &a;
        let mut result = lead.mapv(|z| z * d.powi(jm));
        let mut inv_factorial = 1.0f64; // 1/(2k+1)!
        for k in 1..=jm {
            inv_factorial /= ((2 * k) * (2 * k + 1)) as f64;
            let mut product = eye.clone();
            for r in 1..=k {
                let odd = (2 * r - 1) as f64;
                let shift = odd * odd * q_sq;
                let factor = &a_sq - &eye.mapv(|z| z * shift);
                product = product.dot(&factor);
            }
            let tail = &a + &eye.mapv(|z| z * (2 * k + 1) as f64 * q0);
            let coef = d.powi(jm - k) * inv_factorial;
            result = &result - &product.dot(&tail).mapv(|z| z * coef);
        }
        result
    }
}

/// Pi^(j)(q) resummed from the canonical matrix set:
/// (-1)^N sum over canonical indices of multiplicity * q-monomial * S.
pub fn pi_from_set(set: &CovariantMatrixSet, q: &FourVector) -> CMatrix {
    let dim = set.spin.dim();
    let n = set.spin.qubit_count();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut out: CMatrix = Array2::zeros((dim, dim));
    for (idx, matrix) in set.iter() {
        let weight = sign * idx.multiplicity() as f64 * q.monomial(idx.counts());
        if weight != 0.0 {
            out.zip_mut_with(matrix, |o, &s| *o += s * weight);
        }
    }
    out
}

/// Pi^(j)(q) from the boost form (q0^2 - |q|^2)^j exp(-2 eta (qhat . J)),
/// eta = arctanh(-|q|/q0), restricted to the branch q0 < 0, 0 < |q| < -q0.
pub fn pi_boost(spin: HalfIntegerSpin, q: &FourVector) -> Result<CMatrix> {
    let q_norm = q.spatial_norm();
    if !(q.q0 < 0.0 && q_norm > 0.0 && q_norm < -q.q0) {
        return Err(Error::BoostDomain {
            q0: q.q0,
            q_norm,
        });
    }
    let eta = (-q_norm / q.q0).atanh();
    let mass_sq = q.q0 * q.q0 - q_norm * q_norm;
    let prefactor = mass_sq.powf(spin.j());
    let ops = spin_operators(spin);
    let qhat = [q.q1 / q_norm, q.q2 / q_norm, q.q3 / q_norm];
    let generator = ops.dot(qhat);
    let exp = exp_hermitian(&generator, Complex64::new(-2.0 * eta, 0.0));
    Ok(exp.mapv(|z| z * prefactor))
}

/// Max over canonical indices of |<alpha|S_idx|alpha> - prod n_mu| for the
/// coherent state at (theta, phi).
pub fn husimi_max_deviation(set: &CovariantMatrixSet, theta: f64, phi: f64) -> f64 {
    let alpha = coherent_state(set.spin, theta, phi);
    let n = direction_of(theta, phi);
    let mut worst = 0.0f64;
    for (idx, matrix) in set.iter() {
        let lhs = alpha.expectation(matrix);
        let rhs = n.monomial(idx.counts());
        worst = worst.max((lhs - Complex64::new(rhs, 0.0)).norm());
    }
    worst
}
