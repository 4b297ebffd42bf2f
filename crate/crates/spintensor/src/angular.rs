//! Angular-momentum primitives for arbitrary spin j: operators, basis and
//! coherent states, rotations, Clebsch-Gordan coefficients, and irreducible
//! tensor operators.
//!
//! Basis ordering is fixed as m = j down to -j everywhere, so Jz is diagonal
//! with a descending diagonal. Clebsch-Gordan coefficients follow the
//! Condon-Shortley convention.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::comb::{binomial_f64, ln_factorial};
use crate::error::{Error, Result};
use crate::four_vector::FourVector;
use crate::linalg::{exp_hermitian, CMatrix, CVector};
use crate::spin::HalfIntegerSpin;

/// A pure spin-j state in the |j, m> basis, m descending.
#[derive(Clone, Debug)]
pub struct StateVector {
    spin: HalfIntegerSpin,
    amplitudes: CVector,
}

impl StateVector {
    /// Wraps amplitudes after checking unit norm (tolerance 1e-12).
    pub fn new(spin: HalfIntegerSpin, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != spin.dim() {
            return Err(Error::DimensionMismatch {
                expected: spin.dim(),
                got: amplitudes.len(),
            });
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized((norm - 1.0).abs()));
        }
        Ok(Self { spin, amplitudes })
    }

    /// The basis state |j, m>, with m given doubled.
    pub fn basis(spin: HalfIntegerSpin, two_m: i32) -> Result<Self> {
        let idx = spin
            .index_of_two_m(two_m)
            .ok_or(Error::TensorLabelOutOfRange {
                two_j: spin.two_j(),
                k: 0,
                q: two_m,
            })?;
        let mut amplitudes: CVector = Array1::zeros(spin.dim());
        amplitudes[idx] = Complex64::new(1.0, 0.0);
        Ok(Self { spin, amplitudes })
    }

    pub fn spin(&self) -> HalfIntegerSpin {
        self.spin
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// <self|other>.
    pub fn overlap(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// <self|op|self>.
    pub fn expectation(&self, op: &CMatrix) -> Complex64 {
        let v = op.dot(&self.amplitudes);
        self.amplitudes
            .iter()
            .zip(v.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// The three angular momentum matrices for a given spin.
#[derive(Clone, Debug)]
pub struct SpinOperators {
    spin: HalfIntegerSpin,
    pub jx: CMatrix,
    pub jy: CMatrix,
    pub jz: CMatrix,
}

impl SpinOperators {
    pub fn spin(&self) -> HalfIntegerSpin {
        self.spin
    }

    /// a . J for a real 3-vector a.
    pub fn dot(&self, a: [f64; 3]) -> CMatrix {
        let mut out = self.jx.mapv(|z| z * a[0]);
        out.zip_mut_with(&self.jy, |o, &z| *o += z * a[1]);
        out.zip_mut_with(&self.jz, |o, &z| *o += z * a[2]);
        out
    }
}

/// Standard (2j+1)-dimensional angular momentum matrices from ladder
/// operator matrix elements; Jz is diagonal with entries j, j-1, ..., -j.
pub fn spin_operators(spin: HalfIntegerSpin) -> SpinOperators {
    let dim = spin.dim();
    let j = spin.j();
    let mut jz: CMatrix = Array2::zeros((dim, dim));
    let mut jp: CMatrix = Array2::zeros((dim, dim)); // J+
    for (i, two_m) in spin.two_m_values().enumerate() {
        let m = two_m as f64 / 2.0;
        jz[(i, i)] = Complex64::new(m, 0.0);
        if i > 0 {
            // <j, m+1 | J+ | j, m>
            let amp = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
            jp[(i - 1, i)] = Complex64::new(amp, 0.0);
        }
    }
    let jm = crate::linalg::dagger(&jp);
    let jx = (&jp + &jm).mapv(|z| z * 0.5);
    let jy = (&jp - &jm).mapv(|z| z * Complex64::new(0.0, -0.5));
    SpinOperators { spin, jx, jy, jz }
}

/// Spin-j coherent state pointing along (theta, phi):
/// amplitude at m is sqrt(C(2j, j+m)) [sin(t/2)]^(j-m) [cos(t/2) e^(-i phi)]^(j+m).
pub fn coherent_state(spin: HalfIntegerSpin, theta: f64, phi: f64) -> StateVector {
    let n = spin.two_j();
    let half = theta / 2.0;
    let (sin_h, cos_h) = (half.sin(), half.cos());
    let dim = spin.dim();
    let mut amplitudes: CVector = Array1::zeros(dim);
    for i in 0..dim {
        // i = j - m, so j + m = N - i
        let j_plus_m = (n as usize - i) as u32;
        let magnitude = binomial_f64(n, j_plus_m).sqrt()
            * sin_h.powi(i as i32)
            * cos_h.powi(j_plus_m as i32);
        let angle = -(j_plus_m as f64) * phi;
        amplitudes[i] = Complex64::from_polar(magnitude, angle);
    }
    StateVector { spin, amplitudes }
}

/// The direction 4-vector n = (1, sin t cos p, sin t sin p, cos t).
pub fn direction_of(theta: f64, phi: f64) -> FourVector {
    FourVector::unit_direction(theta, phi)
}

fn check_unit_axis(axis: [f64; 3]) -> Result<()> {
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::NonUnitAxis(norm));
    }
    Ok(())
}

/// exp(-i angle (axis . J)), computed by eigendecomposition of the Hermitian
/// generator. The axis must be a unit vector.
pub fn rotation_operator(spin: HalfIntegerSpin, axis: [f64; 3], angle: f64) -> Result<CMatrix> {
    check_unit_axis(axis)?;
    let ops = spin_operators(spin);
    let generator = ops.dot(axis);
    Ok(exp_hermitian(&generator, Complex64::new(0.0, -angle)))
}

/// Proper 3x3 rotation about a unit axis (Rodrigues form). Matches
/// `rotation_operator` in the sense U (a.J) U^dagger = (R a).J.
pub fn rotation_matrix_3d(axis: [f64; 3], angle: f64) -> Result<Array2<f64>> {
    check_unit_axis(axis)?;
    let (s, c) = angle.sin_cos();
    let [x, y, z] = axis;
    let mut r = Array2::zeros((3, 3));
    let u = [x, y, z];
    for a in 0..3 {
        for b in 0..3 {
            r[(a, b)] = (1.0 - c) * u[a] * u[b] + if a == b { c } else { 0.0 };
        }
    }
    r[(0, 1)] += -s * z;
    r[(1, 0)] += s * z;
    r[(0, 2)] += s * y;
    r[(2, 0)] += -s * y;
    r[(1, 2)] += -s * x;
    r[(2, 1)] += s * x;
    Ok(r)
}

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> in the Condon-Shortley
/// convention, all quantum numbers doubled. Invalid or incompatible quantum
/// numbers give 0.
pub fn clebsch_gordan(
    two_j1: u32,
    two_m1: i32,
    two_j2: u32,
    two_m2: i32,
    two_j: u32,
    two_m: i32,
) -> f64 {
    let (j1, j2, j) = (two_j1 as i32, two_j2 as i32, two_j as i32);
    if two_m != two_m1 + two_m2 {
        return 0.0;
    }
    if two_m1.abs() > j1 || two_m2.abs() > j2 || two_m.abs() > j {
        return 0.0;
    }
    // m and j must have the same parity when doubled
    if (j1 - two_m1) % 2 != 0 || (j2 - two_m2) % 2 != 0 || (j - two_m) % 2 != 0 {
        return 0.0;
    }
    // triangle rule and integer perimeter
    if j > j1 + j2 || j < (j1 - j2).abs() || (j1 + j2 + j) % 2 != 0 {
        return 0.0;
    }

    // All of these are guaranteed integers now; work with halved values.
    let f = |x: i32| -> f64 {
        debug_assert!(x >= 0 && x % 2 == 0);
        ln_factorial((x / 2) as u32)
    };

    let ln_prefactor = 0.5
        * ((((j + 1) as f64) / 1.0).ln()
            + f(j1 + j2 - j)
            + f(j1 - j2 + j)
            + f(-j1 + j2 + j)
            - f(j1 + j2 + j + 2)
            + f(j + two_m)
            + f(j - two_m)
            + f(j1 - two_m1)
            + f(j1 + two_m1)
            + f(j2 - two_m2)
            + f(j2 + two_m2));

    // sum over k with all factorial arguments nonnegative (doubled values)
    let k_min = 0.max(-(j - j2 + two_m1)).max(-(j - j1 - two_m2));
    let k_max = (j1 + j2 - j).min(j1 - two_m1).min(j2 + two_m2);
    let mut sum = 0.0;
    let mut two_k = k_min;
    while two_k <= k_max {
        let ln_term = f(two_k)
            + f(j1 + j2 - j - two_k)
            + f(j1 - two_m1 - two_k)
            + f(j2 + two_m2 - two_k)
            + f(j - j2 + two_m1 + two_k)
            + f(j - j1 - two_m2 + two_k);
        let sign = if (two_k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (ln_prefactor - ln_term).exp();
        two_k += 2;
    }
    sum
}

/// Irreducible tensor operator T_kq for spin j.
#[derive(Clone, Debug)]
pub struct TensorOperator {
    pub spin: HalfIntegerSpin,
    pub k: u32,
    pub q: i32,
    pub matrix: CMatrix,
}

/// T_kq with matrix elements sqrt((2k+1)/(2j+1)) <j m; k q | j m'>.
pub fn tensor_operator(spin: HalfIntegerSpin, k: u32, q: i32) -> Result<TensorOperator> {
    let two_j = spin.two_j();
    if k > two_j || q.unsigned_abs() > k {
        return Err(Error::TensorLabelOutOfRange { two_j, k, q });
    }
    let dim = spin.dim();
    let scale = ((2.0 * k as f64 + 1.0) / dim as f64).sqrt();
    let mut matrix: CMatrix = Array2::zeros((dim, dim));
    for (col, two_m) in spin.two_m_values().enumerate() {
        let two_mp = two_m + 2 * q;
        if let Some(row) = spin.index_of_two_m(two_mp) {
            let cg = clebsch_gordan(two_j, two_m, 2 * k, 2 * q, two_j, two_mp);
            matrix[(row, col)] = Complex64::new(scale * cg, 0.0);
        }
    }
    Ok(TensorOperator {
        spin,
        k,
        q,
        matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dagger, frobenius_norm, identity, max_abs, trace_of_product};
    use ndarray::array;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spin(two_j: u32) -> HalfIntegerSpin {
        HalfIntegerSpin::from_two_j(two_j)
    }

    fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
        &a.dot(b) - &b.dot(a)
    }

    /// Independent matrix exponential: Taylor series with scaling and squaring.
    fn expm_taylor(a: &CMatrix) -> CMatrix {
        let n = a.nrows();
        let norm = max_abs(a) * n as f64;
        let scalings = (norm.log2().ceil() as i32 + 1).max(0) as u32;
        let scaled = a.mapv(|z| z / 2f64.powi(scalings as i32));
        let mut term = identity(n);
        let mut sum = identity(n);
        for k in 1..30 {
            term = term.dot(&scaled).mapv(|z| z / k as f64);
            sum = &sum + &term;
        }
        let mut result = sum;
        for _ in 0..scalings {
            result = result.dot(&result);
        }
        result
    }

    #[test]
    fn spin_half_operators_are_half_paulis() {
        let ops = spin_operators(spin(1));
        let expected_z = array![[c(0.5, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-0.5, 0.0)]];
        let expected_x = array![[c(0.0, 0.0), c(0.5, 0.0)], [c(0.5, 0.0), c(0.0, 0.0)]];
        let expected_y = array![[c(0.0, 0.0), c(0.0, -0.5)], [c(0.0, 0.5), c(0.0, 0.0)]];
        assert!(frobenius_norm(&(&ops.jz - &expected_z)) < 1e-15);
        assert!(frobenius_norm(&(&ops.jx - &expected_x)) < 1e-15);
        assert!(frobenius_norm(&(&ops.jy - &expected_y)) < 1e-15);
    }

    #[test]
    fn spin_one_jz_is_descending_diagonal() {
        let ops = spin_operators(spin(2));
        for (i, expect) in [1.0, 0.0, -1.0].iter().enumerate() {
            assert!((ops.jz[(i, i)] - c(*expect, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn commutation_and_casimir_up_to_cap() {
        for two_j in 1..=12u32 {
            let s = spin(two_j);
            let ops = spin_operators(s);
            let i_unit = c(0.0, 1.0);
            let comm_xy = commutator(&ops.jx, &ops.jy);
            let comm_yz = commutator(&ops.jy, &ops.jz);
            let comm_zx = commutator(&ops.jz, &ops.jx);
            assert!(
                frobenius_norm(&(&comm_xy - &ops.jz.mapv(|z| z * i_unit))) < 1e-10,
                "[Jx,Jy] != iJz at two_j = {two_j}"
            );
            assert!(frobenius_norm(&(&comm_yz - &ops.jx.mapv(|z| z * i_unit))) < 1e-10);
            assert!(frobenius_norm(&(&comm_zx - &ops.jy.mapv(|z| z * i_unit))) < 1e-10);

            let j = s.j();
            let casimir = &(&ops.jx.dot(&ops.jx) + &ops.jy.dot(&ops.jy)) + &ops.jz.dot(&ops.jz);
            let expected = identity(s.dim()).mapv(|z| z * (j * (j + 1.0)));
            assert!(frobenius_norm(&(&casimir - &expected)) < 1e-10);
        }
    }

    #[test]
    fn coherent_state_poles_and_equator() {
        // theta = 0 -> |1,1>
        let north = coherent_state(spin(2), 0.0, 0.0);
        assert!((north.amplitudes()[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(north.amplitudes()[1].norm() < 1e-15);
        assert!(north.amplitudes()[2].norm() < 1e-15);

        // theta = pi -> |1,-1> regardless of phi
        let south = coherent_state(spin(2), PI, 1.234);
        assert!(south.amplitudes()[0].norm() < 1e-15);
        assert!(south.amplitudes()[1].norm() < 1e-15);
        assert!((south.amplitudes()[2].norm() - 1.0).abs() < 1e-15);

        // spin-1/2 equator: (|up> + |down>)/sqrt(2)
        let eq = coherent_state(spin(1), FRAC_PI_2, 0.0);
        let inv_sqrt2 = 0.5f64.sqrt();
        assert!((eq.amplitudes()[0] - c(inv_sqrt2, 0.0)).norm() < 1e-15);
        assert!((eq.amplitudes()[1] - c(inv_sqrt2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn coherent_state_mean_spin_points_along_n() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for two_j in 1..=8u32 {
            let s = spin(two_j);
            let ops = spin_operators(s);
            for _ in 0..5 {
                let theta = rng.gen::<f64>() * PI;
                let phi = rng.gen::<f64>() * 2.0 * PI;
                let st = coherent_state(s, theta, phi);
                let n = direction_of(theta, phi);
                let j = s.j();
                assert!((st.expectation(&ops.jx).re - j * n.q1).abs() < 1e-12);
                assert!((st.expectation(&ops.jy).re - j * n.q2).abs() < 1e-12);
                assert!((st.expectation(&ops.jz).re - j * n.q3).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rotated_highest_weight_matches_coherent_up_to_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for two_j in 1..=6u32 {
            let s = spin(two_j);
            let top = StateVector::basis(s, two_j as i32).unwrap();
            for _ in 0..5 {
                let theta = rng.gen::<f64>() * PI;
                let phi = rng.gen::<f64>() * 2.0 * PI;
                // rotate |j,j> from the pole down to (theta, phi)
                let axis = [-phi.sin(), phi.cos(), 0.0];
                let u = rotation_operator(s, axis, theta).unwrap();
                let rotated = StateVector::new(s, u.dot(top.amplitudes())).unwrap();
                let target = coherent_state(s, theta, phi);
                assert!(
                    (rotated.overlap(&target).norm() - 1.0).abs() < 1e-10,
                    "overlap deviates at two_j = {two_j}"
                );
            }
        }
    }

    #[test]
    fn direction_of_axis_cases() {
        let n = direction_of(0.0, 0.0);
        assert_eq!(n.q0, 1.0);
        assert!((n.q3 - 1.0).abs() < 1e-15);
        let n = direction_of(FRAC_PI_2, 0.0);
        assert!((n.q1 - 1.0).abs() < 1e-15 && n.q3.abs() < 1e-15);
        let n = direction_of(FRAC_PI_2, FRAC_PI_2);
        assert!((n.q2 - 1.0).abs() < 1e-15 && n.q1.abs() < 1e-15);
    }

    #[test]
    fn rotation_operator_identity_and_z_axis() {
        let s = spin(1);
        let u0 = rotation_operator(s, [0.0, 0.0, 1.0], 0.0).unwrap();
        assert!(frobenius_norm(&(&u0 - &identity(2))) < 1e-14);

        let theta = 0.9;
        let u = rotation_operator(s, [0.0, 0.0, 1.0], theta).unwrap();
        let expected = array![
            [c((theta / 2.0).cos(), -(theta / 2.0).sin()), c(0.0, 0.0)],
            [c(0.0, 0.0), c((theta / 2.0).cos(), (theta / 2.0).sin())]
        ];
        assert!(frobenius_norm(&(&u - &expected)) < 1e-13);
    }

    #[test]
    fn full_turn_gives_spinor_sign() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for two_j in 0..=5u32 {
            let s = spin(two_j);
            let z = rng.gen::<f64>() * 2.0 - 1.0;
            let azimuth = rng.gen::<f64>() * 2.0 * PI;
            let r = (1.0 - z * z).sqrt();
            let axis = [r * azimuth.cos(), r * azimuth.sin(), z];
            let u = rotation_operator(s, axis, 2.0 * PI).unwrap();
            let sign = if two_j % 2 == 0 { 1.0 } else { -1.0 };
            let expected = identity(s.dim()).mapv(|v| v * sign);
            assert!(
                frobenius_norm(&(&u - &expected)) < 1e-12,
                "2 pi rotation sign wrong at two_j = {two_j}"
            );

            // cross-check the eigendecomposition path against a Taylor oracle
            let ops = spin_operators(s);
            let angle = rng.gen::<f64>() * PI;
            let gen_mat = ops.dot(axis).mapv(|v| v * c(0.0, -angle));
            let via_taylor = expm_taylor(&gen_mat);
            let via_eig = rotation_operator(s, axis, angle).unwrap();
            assert!(frobenius_norm(&(&via_taylor - &via_eig)) < 1e-12);
        }
    }

    #[test]
    fn rotation_operator_rejects_non_unit_axis() {
        assert!(matches!(
            rotation_operator(spin(2), [0.0, 0.0, 2.0], 1.0),
            Err(Error::NonUnitAxis(_))
        ));
        assert!(matches!(
            rotation_matrix_3d([0.3, 0.0, 0.0], 1.0),
            Err(Error::NonUnitAxis(_))
        ));
    }

    #[test]
    fn rotation_matrix_quarter_turn_about_z() {
        let r = rotation_matrix_3d([0.0, 0.0, 1.0], FRAC_PI_2).unwrap();
        // (1,0,0) -> (0,1,0)
        assert!((r[(0, 0)]).abs() < 1e-15);
        assert!((r[(1, 0)] - 1.0).abs() < 1e-15);
        assert!((r[(2, 0)]).abs() < 1e-15);
    }

    #[test]
    fn rotation_matrix_is_proper_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let z = rng.gen::<f64>() * 2.0 - 1.0;
            let az = rng.gen::<f64>() * 2.0 * PI;
            let rad = (1.0 - z * z).sqrt();
            let axis = [rad * az.cos(), rad * az.sin(), z];
            let angle = rng.gen::<f64>() * 2.0 * PI;
            let r = rotation_matrix_3d(axis, angle).unwrap();
            let rtr = r.t().dot(&r);
            let mut dev = 0.0f64;
            for a in 0..3 {
                for b in 0..3 {
                    let target = if a == b { 1.0 } else { 0.0 };
                    dev = dev.max((rtr[(a, b)] - target).abs());
                }
            }
            assert!(dev < 1e-12);
            let det = r[(0, 0)] * (r[(1, 1)] * r[(2, 2)] - r[(1, 2)] * r[(2, 1)])
                - r[(0, 1)] * (r[(1, 0)] * r[(2, 2)] - r[(1, 2)] * r[(2, 0)])
                + r[(0, 2)] * (r[(1, 0)] * r[(2, 1)] - r[(1, 1)] * r[(2, 0)]);
            assert!((det - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn conjugation_consistency_of_the_two_rotation_forms() {
        // U(R) (a.J) U(R)^dagger = (R a).J
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for two_j in 1..=6u32 {
            let s = spin(two_j);
            let ops = spin_operators(s);
            for _ in 0..5 {
                let sample_axis = |rng: &mut ChaCha8Rng| {
                    let z: f64 = rng.gen::<f64>() * 2.0 - 1.0;
                    let az = rng.gen::<f64>() * 2.0 * PI;
                    let rad = (1.0 - z * z).sqrt();
                    [rad * az.cos(), rad * az.sin(), z]
                };
                let axis = sample_axis(&mut rng);
                let a = sample_axis(&mut rng);
                let angle = rng.gen::<f64>() * 2.0 * PI;
                let u = rotation_operator(s, axis, angle).unwrap();
                let r = rotation_matrix_3d(axis, angle).unwrap();
                let lhs = u.dot(&ops.dot(a)).dot(&dagger(&u));
                let ra = [
                    r[(0, 0)] * a[0] + r[(0, 1)] * a[1] + r[(0, 2)] * a[2],
                    r[(1, 0)] * a[0] + r[(1, 1)] * a[1] + r[(1, 2)] * a[2],
                    r[(2, 0)] * a[0] + r[(2, 1)] * a[1] + r[(2, 2)] * a[2],
                ];
                let rhs = ops.dot(ra);
                assert!(
                    frobenius_norm(&(&lhs - &rhs)) < 1e-10,
                    "conjugation consistency fails at two_j = {two_j}"
                );
            }
        }
    }

    #[test]
    fn clebsch_gordan_stretched_and_lowered() {
        // <1/2 1/2; 1/2 1/2 | 1 1> = 1
        assert!((clebsch_gordan(1, 1, 1, 1, 2, 2) - 1.0).abs() < 1e-14);
        // one lowering step from the stretched state gives 1/sqrt(2)
        let expected = 0.5f64.sqrt();
        assert!((clebsch_gordan(1, 1, 1, -1, 2, 0) - expected).abs() < 1e-14);
        assert!((clebsch_gordan(1, -1, 1, 1, 2, 0) - expected).abs() < 1e-14);
        // singlet has opposite signs (Condon-Shortley)
        assert!((clebsch_gordan(1, 1, 1, -1, 0, 0) - expected).abs() < 1e-14);
        assert!((clebsch_gordan(1, -1, 1, 1, 0, 0) + expected).abs() < 1e-14);
    }

    #[test]
    fn clebsch_gordan_invalid_labels_are_zero() {
        assert_eq!(clebsch_gordan(1, 1, 1, 1, 2, 0), 0.0); // M != m1+m2
        assert_eq!(clebsch_gordan(1, 1, 1, 1, 6, 2), 0.0); // J outside triangle
        assert_eq!(clebsch_gordan(1, 3, 1, -1, 2, 2), 0.0); // |m1| > j1
    }

    #[test]
    fn clebsch_gordan_normalization_sums() {
        // sum over (m1, m2) of C^2 = 1 for every valid (J, M)
        for two_j1 in 0..=6u32 {
            for two_j2 in 0..=6u32 {
                let lo = two_j1.abs_diff(two_j2);
                let hi = two_j1 + two_j2;
                let mut two_jj = lo;
                while two_jj <= hi {
                    let two_m = if two_jj >= 2 { two_jj as i32 - 2 } else { two_jj as i32 };
                    let mut total = 0.0;
                    for two_m1 in (-(two_j1 as i32)..=two_j1 as i32).step_by(2.max(1)) {
                        let two_m2 = two_m - two_m1;
                        let cg = clebsch_gordan(two_j1, two_m1, two_j2, two_m2, two_jj, two_m);
                        total += cg * cg;
                    }
                    assert!(
                        (total - 1.0).abs() < 1e-10,
                        "normalization fails for two_j1={two_j1} two_j2={two_j2} two_J={two_jj}"
                    );
                    two_jj += 2;
                }
            }
        }
    }

    #[test]
    fn clebsch_gordan_orthogonality_both_groupings() {
        // fixed j1, j2: rows indexed by (m1, m2), columns by (J, M); the
        // coefficient matrix is orthogonal in both groupings
        for (two_j1, two_j2) in [(1u32, 1u32), (2, 1), (2, 2), (3, 2), (6, 5)] {
            let mut pairs = vec![];
            for two_m1 in (-(two_j1 as i32)..=(two_j1 as i32)).step_by(2) {
                for two_m2 in (-(two_j2 as i32)..=(two_j2 as i32)).step_by(2) {
                    pairs.push((two_m1, two_m2));
                }
            }
            let mut labels = vec![];
            let mut two_jj = two_j1.abs_diff(two_j2);
            while two_jj <= two_j1 + two_j2 {
                for two_m in (-(two_jj as i32)..=(two_jj as i32)).step_by(2.max(1)) {
                    labels.push((two_jj, two_m));
                }
                two_jj += 2;
            }
            assert_eq!(pairs.len(), labels.len());
            let dim = pairs.len();
            let mut mat = Array2::<f64>::zeros((dim, dim));
            for (r, &(two_m1, two_m2)) in pairs.iter().enumerate() {
                for (col, &(two_jj, two_m)) in labels.iter().enumerate() {
                    mat[(r, col)] =
                        clebsch_gordan(two_j1, two_m1, two_j2, two_m2, two_jj, two_m);
                }
            }
            let gram = mat.t().dot(&mat);
            let gram2 = mat.dot(&mat.t());
            for i in 0..dim {
                for j in 0..dim {
                    let target = if i == j { 1.0 } else { 0.0 };
                    assert!((gram[(i, j)] - target).abs() < 1e-10);
                    assert!((gram2[(i, j)] - target).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn tensor_operator_rank_zero_is_scaled_identity() {
        for two_j in 0..=6u32 {
            let s = spin(two_j);
            let t00 = tensor_operator(s, 0, 0).unwrap();
            let expected = identity(s.dim()).mapv(|z| z / (s.dim() as f64).sqrt());
            assert!(frobenius_norm(&(&t00.matrix - &expected)) < 1e-12);
        }
    }

    #[test]
    fn tensor_operator_orthonormality_small_spins() {
        for two_j in 1..=6u32 {
            let s = spin(two_j);
            let mut all = vec![];
            for k in 0..=two_j {
                for q in -(k as i32)..=(k as i32) {
                    all.push(tensor_operator(s, k, q).unwrap());
                }
            }
            for a in &all {
                for b in &all {
                    let ip = trace_of_product(&dagger(&a.matrix), &b.matrix);
                    let target = if a.k == b.k && a.q == b.q { 1.0 } else { 0.0 };
                    assert!(
                        (ip - c(target, 0.0)).norm() < 1e-10,
                        "tr(T{}{}^dag T{}{}) off at two_j = {two_j}",
                        a.k,
                        a.q,
                        b.k,
                        b.q
                    );
                }
            }
        }
    }

    #[test]
    fn tensor_operator_t10_proportional_to_jz() {
        let s = spin(2);
        let t10 = tensor_operator(s, 1, 0).unwrap();
        let ops = spin_operators(s);
        // ratio of diagonals is constant
        let r0 = t10.matrix[(0, 0)].re / ops.jz[(0, 0)].re;
        let r2 = t10.matrix[(2, 2)].re / ops.jz[(2, 2)].re;
        assert!((r0 - r2).abs() < 1e-13);
        assert!(t10.matrix[(1, 1)].norm() < 1e-15);
        assert!(r0 > 0.0, "Condon-Shortley phase pins T10 parallel to Jz");
    }

    #[test]
    fn tensor_operator_rejects_bad_labels() {
        assert!(tensor_operator(spin(2), 3, 0).is_err());
        assert!(tensor_operator(spin(2), 1, 2).is_err());
    }

    #[test]
    fn state_vector_rejects_unnormalized() {
        let s = spin(1);
        let v: CVector = array![c(1.0, 0.0), c(1.0, 0.0)];
        assert!(matches!(
            StateVector::new(s, v),
            Err(Error::NotNormalized(_))
        ));
    }

    proptest::proptest! {
        #[test]
        fn coherent_state_is_normalized(
            two_j in 0u32..=12,
            theta in 0.0..PI,
            phi in 0.0..(2.0 * PI),
        ) {
            let st = coherent_state(spin(two_j), theta, phi);
            let norm: f64 = st.amplitudes().iter().map(|z| z.norm_sqr()).sum();
            proptest::prop_assert!((norm - 1.0).abs() < 1e-12);
        }
    }
}
