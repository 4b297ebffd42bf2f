//! Coordinate tensors of density matrices: expansion over the covariant
//! matrices, reconstruction, inner products, rotation action, partial-trace
//! slicing, and closed-form coordinates of named states.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::angular::StateVector;
use crate::comb::{binomial_f64, multinomial};
use crate::error::{Error, Result};
use crate::four_vector::FourVector;
use crate::linalg::{self, CMatrix};
use crate::multi_index::{CanonicalIndices, MultiIndex};
use crate::spin::HalfIntegerSpin;
use crate::weinberg::CovariantMatrixSet;

const HERMITICITY_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;

/// A validated spin-j density matrix: Hermitian, unit trace, positive
/// semi-definite within tolerance. Inputs failing the PSD check are rejected,
/// not clipped.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    spin: HalfIntegerSpin,
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(spin: HalfIntegerSpin, matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare(matrix.nrows(), matrix.ncols()));
        }
        if matrix.nrows() != spin.dim() {
            return Err(Error::DimensionMismatch {
                expected: spin.dim(),
                got: matrix.nrows(),
            });
        }
        let herm = linalg::hermiticity_error(&matrix);
        if herm > HERMITICITY_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let tr = linalg::trace(&matrix);
        let tr_dev = (tr - Complex64::new(1.0, 0.0)).norm();
        if tr_dev > TRACE_TOL {
            return Err(Error::NotUnitTrace(tr_dev));
        }
        let min_eig = linalg::min_eigenvalue(&matrix);
        if min_eig < -PSD_TOL {
            return Err(Error::NotPositiveSemidefinite(min_eig));
        }
        Ok(Self { spin, matrix })
    }

    /// |psi><psi| for a pure state.
    pub fn from_pure(state: &StateVector) -> Self {
        let dim = state.spin().dim();
        let amps = state.amplitudes();
        let mut matrix: CMatrix = Array2::zeros((dim, dim));
        for i in 0..dim {
            for j in 0..dim {
                matrix[(i, j)] = amps[i] * amps[j].conj();
            }
        }
        Self {
            spin: state.spin(),
            matrix,
        }
    }

    /// The maximally mixed state, identity over the dimension.
    pub fn maximally_mixed(spin: HalfIntegerSpin) -> Self {
        let dim = spin.dim();
        Self {
            spin,
            matrix: linalg::identity(dim).mapv(|z| z / dim as f64),
        }
    }

    pub fn spin(&self) -> HalfIntegerSpin {
        self.spin
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// tr(rho^2), computed directly from the matrix.
    pub fn purity_direct(&self) -> f64 {
        linalg::trace_of_product(&self.matrix, &self.matrix).re
    }

    /// U rho U^dagger. The conjugated matrix is revalidated.
    pub fn conjugated(&self, u: &CMatrix) -> Result<Self> {
        let rotated = u.dot(&self.matrix).dot(&linalg::dagger(u));
        Self::new(self.spin, rotated)
    }

    /// <op> = tr(rho op).
    pub fn expectation(&self, op: &CMatrix) -> Complex64 {
        linalg::trace_of_product(&self.matrix, op)
    }
}

/// Real, permutation-symmetric expansion coefficients x_{mu_1...mu_N} stored
/// on canonical multi-indices. Constraint checks live in `canonical_check`.
#[derive(Clone, Debug)]
pub struct CoordinateTensor {
    spin: HalfIntegerSpin,
    indices: CanonicalIndices,
    values: Vec<f64>,
}

impl CoordinateTensor {
    /// Wraps a value vector aligned with the canonical enumeration for
    /// rank N = 2j.
    pub fn from_values(spin: HalfIntegerSpin, values: Vec<f64>) -> Result<Self> {
        let indices = CanonicalIndices::new(spin.qubit_count());
        if values.len() != indices.len() {
            return Err(Error::DimensionMismatch {
                expected: indices.len(),
                got: values.len(),
            });
        }
        Ok(Self {
            spin,
            indices,
            values,
        })
    }

    fn zeros(spin: HalfIntegerSpin) -> Self {
        let indices = CanonicalIndices::new(spin.qubit_count());
        let values = vec![0.0; indices.len()];
        Self {
            spin,
            indices,
            values,
        }
    }

    pub fn spin(&self) -> HalfIntegerSpin {
        self.spin
    }

    pub fn indices(&self) -> &CanonicalIndices {
        &self.indices
    }

    pub fn value(&self, idx: &MultiIndex) -> Result<f64> {
        Ok(self.values[self.indices.position(idx)?])
    }

    pub fn value_at(&self, position: usize) -> f64 {
        self.values[position]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, f64)> {
        self.indices.iter().zip(self.values.iter().copied())
    }

    /// Max |x - y| over canonical entries.
    pub fn max_abs_diff(&self, other: &CoordinateTensor) -> f64 {
        self.values
            .iter()
            .zip(other.values.iter())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    }
}

fn check_same_spin(a: HalfIntegerSpin, b: HalfIntegerSpin) -> Result<()> {
    if a != b {
        return Err(Error::SpinMismatch {
            expected: a.two_j(),
            got: b.two_j(),
        });
    }
    Ok(())
}

/// Coordinates x_idx = tr(rho S_idx). The traces are real for Hermitian
/// input; imaginary parts above 1e-12 are rejected, below are discarded.
pub fn coordinates_of(rho: &DensityMatrix, set: &CovariantMatrixSet) -> Result<CoordinateTensor> {
    check_same_spin(set.spin(), rho.spin())?;
    let mut values = Vec::with_capacity(set.indices().len());
    for (_, matrix) in set.iter() {
        let t = linalg::trace_of_product(rho.matrix(), matrix);
        if t.im.abs() > 1e-12 {
            return Err(Error::NotReal(t.im));
        }
        values.push(t.re);
    }
    CoordinateTensor::from_values(rho.spin(), values)
}

/// The linear combination (1/2^N) sum multiplicity * x_idx * S_idx, without
/// any state validation. `reconstruct` wraps this with the density-matrix
/// checks.
pub fn reconstruct_matrix(x: &CoordinateTensor, set: &CovariantMatrixSet) -> Result<CMatrix> {
    check_same_spin(set.spin(), x.spin())?;
    let dim = x.spin().dim();
    let scale = 2f64.powi(-(x.spin().qubit_count() as i32));
    let mut out: CMatrix = Array2::zeros((dim, dim));
    for ((idx, matrix), &value) in set.iter().zip(x.values.iter()) {
        let weight = scale * idx.multiplicity() as f64 * value;
        if weight != 0.0 {
            out.zip_mut_with(matrix, |o, &s| *o += s * weight);
        }
    }
    Ok(out)
}

/// Reconstructs the density matrix of a coordinate tensor.
pub fn reconstruct(x: &CoordinateTensor, set: &CovariantMatrixSet) -> Result<DensityMatrix> {
    let matrix = reconstruct_matrix(x, set)?;
    DensityMatrix::new(x.spin(), matrix)
}

/// Hilbert-Schmidt product through coordinates:
/// tr(rho rho') = (1/2^N) sum multiplicity * x * x'.
pub fn hs_inner(x: &CoordinateTensor, y: &CoordinateTensor) -> Result<f64> {
    check_same_spin(x.spin(), y.spin())?;
    let scale = 2f64.powi(-(x.spin().qubit_count() as i32));
    let mut acc = 0.0;
    for ((idx, a), b) in x.iter().zip(y.values.iter()) {
        acc += idx.multiplicity() as f64 * a * b;
    }
    Ok(scale * acc)
}

/// tr(rho^2) of the represented state.
pub fn purity(x: &CoordinateTensor) -> f64 {
    hs_inner(x, x).expect("same tensor")
}

fn check_rotation(r: &Array2<f64>) -> Result<()> {
    if r.nrows() != 3 || r.ncols() != 3 {
        return Err(Error::NotRotation(f64::INFINITY));
    }
    let rtr = r.t().dot(r);
    let mut dev = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let target = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((rtr[(i, j)] - target).abs());
        }
    }
    let det = r[(0, 0)] * (r[(1, 1)] * r[(2, 2)] - r[(1, 2)] * r[(2, 1)])
        - r[(0, 1)] * (r[(1, 0)] * r[(2, 2)] - r[(1, 2)] * r[(2, 0)])
        + r[(0, 2)] * (r[(1, 0)] * r[(2, 1)] - r[(1, 1)] * r[(2, 0)]);
    dev = dev.max((det - 1.0).abs());
    if dev > 1e-12 {
        return Err(Error::NotRotation(dev));
    }
    Ok(())
}

/// Applies x -> R x R ... R (one factor per index), with the 3x3 rotation
/// extended to 4x4 by R_00 = 1, R_0a = R_a0 = 0.
///
/// The contraction runs one index at a time; the intermediate object stays
/// symmetric separately in the rotated and unrotated index groups, so storage
/// is a pair of canonical enumerations rather than 4^N entries.
pub fn rotate_tensor(x: &CoordinateTensor, r: &Array2<f64>) -> Result<CoordinateTensor> {
    check_rotation(r)?;
    let n = x.spin().qubit_count();
    let mut r4 = [[0.0f64; 4]; 4];
    r4[0][0] = 1.0;
    for a in 0..3 {
        for b in 0..3 {
            r4[a + 1][b + 1] = r[(a, b)];
        }
    }

    // stage k: values indexed by (rotated multiset of size k, source multiset
    // of size n - k)
    let mut current = x.values.clone();
    let spaces: Vec<CanonicalIndices> = (0..=n).map(CanonicalIndices::new).collect();
    for k in 0..n {
        let rotated = &spaces[k + 1];
        let source = &spaces[n - k - 1];
        let prev_source = &spaces[n - k];
        let mut next = vec![0.0f64; rotated.len() * source.len()];
        for (ri, rot_idx) in rotated.iter().enumerate() {
            // designate the largest entry of the rotated multiset as the one
            // produced by this contraction step
            let m = *rot_idx.indices().last().expect("rank >= 1") as usize;
            let mut rot_rest = rot_idx.counts();
            rot_rest[m] -= 1;
            let prev_ri = spaces[k].position_of_counts(rot_rest);
            for (si, src_idx) in source.iter().enumerate() {
                let mut acc = 0.0;
                for nu in 0..4usize {
                    let weight = r4[m][nu];
                    if weight == 0.0 {
                        continue;
                    }
                    let mut src_counts = src_idx.counts();
                    src_counts[nu] += 1;
                    let prev_si = prev_source.position_of_counts(src_counts);
                    acc += weight * current[prev_ri * prev_source.len() + prev_si];
                }
                next[ri * source.len() + si] = acc;
            }
        }
        current = next;
    }
    CoordinateTensor::from_values(x.spin(), current)
}

/// Partial-trace slicing on coordinates: the rank-2k tensor read off by
/// appending zeros to the index.
pub fn reduced_coordinates(x: &CoordinateTensor, k: HalfIntegerSpin) -> Result<CoordinateTensor> {
    let two_j = x.spin().two_j();
    let two_k = k.two_j();
    if two_k > two_j {
        return Err(Error::ReductionTooLarge { two_j, two_k });
    }
    let n = x.spin().qubit_count();
    let target = CanonicalIndices::new(k.qubit_count());
    let mut values = Vec::with_capacity(target.len());
    for idx in target.iter() {
        let padded = idx.padded_to(n)?;
        values.push(x.value(&padded)?);
    }
    CoordinateTensor::from_values(k, values)
}

/// Physically reduced state: embed into the symmetric subspace of N qubits,
/// trace out 2j - 2k of them, and re-express in the spin-k Dicke basis. The
/// Dicke decomposition is used in closed form, so nothing of size 2^N is
/// built.
pub fn reduced_density(rho: &DensityMatrix, k: HalfIntegerSpin) -> Result<DensityMatrix> {
    let two_j = rho.spin().two_j();
    let two_k = k.two_j();
    if two_k > two_j {
        return Err(Error::ReductionTooLarge { two_j, two_k });
    }
    let n = two_j as usize;
    let t = two_k as usize;
    let rest = n - t;
    let dim_out = t + 1;
    let mut out: CMatrix = Array2::zeros((dim_out, dim_out));
    // |D_n^(k2)> = sum_w sqrt(C(t,w) C(n-t,k2-w)/C(n,k2)) |D_t^(w)> |D_{n-t}^(k2-w)>
    for k2 in 0..=n {
        for l2 in 0..=n {
            let rho_elem = rho.matrix()[(n - k2, n - l2)];
            if rho_elem.norm() == 0.0 {
                continue;
            }
            let delta = k2 as i64 - l2 as i64;
            for w in 0..=t.min(k2) {
                let wp = w as i64 - delta;
                if wp < 0 || wp > t as i64 {
                    continue;
                }
                let wp = wp as usize;
                let shared = k2 as i64 - w as i64;
                if shared < 0 || shared > rest as i64 {
                    continue;
                }
                let coef = binomial_f64(rest as u32, shared as u32)
                    * (binomial_f64(t as u32, w as u32) * binomial_f64(t as u32, wp as u32)
                        / (binomial_f64(n as u32, k2 as u32)
                            * binomial_f64(n as u32, l2 as u32)))
                    .sqrt();
                out[(t - w, t - wp)] += rho_elem * coef;
            }
        }
    }
    DensityMatrix::new(k, out)
}

/// Product coordinates of a coherent state: x_idx = n_{mu_1} ... n_{mu_N}.
pub fn coherent_coordinates(spin: HalfIntegerSpin, theta: f64, phi: f64) -> CoordinateTensor {
    let n = FourVector::unit_direction(theta, phi);
    let mut x = CoordinateTensor::zeros(spin);
    let values: Vec<f64> = x.indices.iter().map(|idx| n.monomial(idx.counts())).collect();
    x.values = values;
    x
}

/// Coordinates of the maximally mixed state, from the closed-form generating
/// polynomial sum_k C(2j,2k)/(2k+1) q0^(2j-2k) |q|^(2k); each monomial
/// coefficient is divided by the index multiplicity so the stored symmetric
/// representative matches tr(rho_0 S_idx).
pub fn maximally_mixed_coordinates(spin: HalfIntegerSpin) -> CoordinateTensor {
    let n = spin.two_j();
    let mut x = CoordinateTensor::zeros(spin);
    for k in 0..=(n / 2) {
        let poly_coef = binomial_f64(n, 2 * k) / (2.0 * k as f64 + 1.0);
        // expand (q1^2 + q2^2 + q3^2)^k
        for k1 in 0..=k {
            for k2 in 0..=(k - k1) {
                let k3 = k - k1 - k2;
                let multi = multinomial(&[k1, k2, k3]) as f64;
                let counts = [
                    (n - 2 * k) as usize,
                    2 * k1 as usize,
                    2 * k2 as usize,
                    2 * k3 as usize,
                ];
                let pos = x.indices.position_of_counts(counts);
                let multiplicity = x.indices.get(pos).multiplicity() as f64;
                x.values[pos] = poly_coef * multi / multiplicity;
            }
        }
    }
    x
}

/// Closed-form coordinates of the cat state (|j,-j> + |j,j>)/sqrt(2):
/// the average of the two polar product tensors plus the real part of the
/// (0, 1, -i, 0) cross product term.
pub fn cat_coordinates(spin: HalfIntegerSpin) -> CoordinateTensor {
    assert!(
        spin.two_j() >= 1,
        "cat coordinates need two_j >= 1, got {}",
        spin.two_j()
    );
    let mut x = CoordinateTensor::zeros(spin);
    let values: Vec<f64> = x
        .indices
        .iter()
        .map(|idx| {
            let [p0, p1, p2, p3] = idx.counts();
            let mut v = 0.0;
            if p1 == 0 && p2 == 0 {
                // product terms from n = (1, 0, 0, +1) and (1, 0, 0, -1)
                let minus = if p3 % 2 == 0 { 1.0 } else { -1.0 };
                v += 0.5 * (1.0 + minus);
            }
            if p0 == 0 && p3 == 0 {
                // Re[(-i)^(p2)] from the cross term (0, 1, -i, 0)
                v += match p2 % 4 {
                    0 => 1.0,
                    2 => -1.0,
                    _ => 0.0,
                };
            }
            v
        })
        .collect();
    x.values = values;
    x
}

/// Validity report for a raw symmetric value map: how far it is from the
/// canonical coordinate representation of the same operator.
#[derive(Clone, Debug)]
pub struct CanonicalReport {
    /// |x_{0...0} - 1|.
    pub unit_trace_deviation: f64,
    /// One residual per rank-(N-2) suffix: |-x_{00 s} + x_{11 s} + x_{22 s} + x_{33 s}|.
    pub g_trace_deviations: Vec<(MultiIndex, f64)>,
    /// Largest suffix residual.
    pub max_g_trace_deviation: f64,
    /// Max |x_idx - tr(M S_idx)| with M reconstructed from x: zero exactly
    /// when x already is the unique canonical representative.
    pub projection_deviation: f64,
}

impl CanonicalReport {
    pub fn is_canonical(&self, tol: f64) -> bool {
        self.unit_trace_deviation <= tol
            && self.max_g_trace_deviation <= tol
            && self.projection_deviation <= tol
    }
}

/// Checks g-tracelessness and the unit-trace entry, and measures whether the
/// values coincide with the canonical coordinates of the operator they
/// reconstruct.
pub fn canonical_check(x: &CoordinateTensor, set: &CovariantMatrixSet) -> Result<CanonicalReport> {
    check_same_spin(set.spin(), x.spin())?;
    let n = x.spin().qubit_count();
    let unit_pos = x.indices.position_of_counts([n, 0, 0, 0]);
    let unit_trace_deviation = (x.values[unit_pos] - 1.0).abs();

    let mut g_trace_deviations = Vec::new();
    let mut max_g = 0.0f64;
    if n >= 2 {
        for suffix in CanonicalIndices::new(n - 2).iter() {
            let mut acc = 0.0;
            for nu in 0..4usize {
                let mut counts = suffix.counts();
                counts[nu] += 2;
                let sign = if nu == 0 { -1.0 } else { 1.0 };
                acc += sign * x.values[x.indices.position_of_counts(counts)];
            }
            max_g = max_g.max(acc.abs());
            g_trace_deviations.push((suffix.clone(), acc.abs()));
        }
    }

    // reconstruct without validation, re-extract canonical coordinates
    let matrix = reconstruct_matrix(x, set)?;
    let mut projection_deviation = 0.0f64;
    for ((_, s_idx), &value) in set.iter().zip(x.values.iter()) {
        let canonical = linalg::trace_of_product(&matrix, s_idx).re;
        projection_deviation = projection_deviation.max((canonical - value).abs());
    }

    Ok(CanonicalReport {
        unit_trace_deviation,
        g_trace_deviations,
        max_g_trace_deviation: max_g,
        projection_deviation,
    })
}

/// Hilbert-Schmidt-ensemble random density matrix: G G^dagger normalized by
/// its trace, G a square matrix of independent standard complex Gaussians.
pub fn random_density_matrix<R: rand::Rng + ?Sized>(
    spin: HalfIntegerSpin,
    rng: &mut R,
) -> DensityMatrix {
    use rand_distr::StandardNormal;
    let dim = spin.dim();
    let mut g: CMatrix = Array2::zeros((dim, dim));
    for i in 0..dim {
        for j in 0..dim {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            g[(i, j)] = Complex64::new(re, im);
        }
    }
    let gg = g.dot(&linalg::dagger(&g));
    let tr = linalg::trace(&gg).re;
    let matrix = gg.mapv(|z| z / tr);
    DensityMatrix::new(spin, matrix).expect("Wishart matrices are valid states")
}

/// A random pure state, uniform under the unitary group.
pub fn random_pure_state<R: rand::Rng + ?Sized>(
    spin: HalfIntegerSpin,
    rng: &mut R,
) -> StateVector {
    use rand_distr::StandardNormal;
    let dim = spin.dim();
    let mut v: Array1<Complex64> = Array1::zeros(dim);
    for i in 0..dim {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        v[i] = Complex64::new(re, im);
    }
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    StateVector::new(spin, v.mapv(|z| z / norm)).expect("normalized by construction")
}
