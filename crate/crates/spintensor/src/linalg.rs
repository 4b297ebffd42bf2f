//! Dense complex linear algebra for small matrices.
//!
//! Dimensions here never exceed a few tens (the spin cap keeps 2j + 1 <= 13),
//! so a cyclic Jacobi eigensolver for Hermitian matrices is accurate and more
//! than fast enough; no external LAPACK backend is pulled in.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

pub type CMatrix = Array2<Complex64>;
pub type CVector = Array1<Complex64>;

pub fn identity(n: usize) -> CMatrix {
    Array2::eye(n)
}

/// Conjugate transpose.
pub fn dagger(a: &CMatrix) -> CMatrix {
    a.t().mapv(|z| z.conj())
}

pub fn trace(a: &CMatrix) -> Complex64 {
    a.diag().sum()
}

/// Max |a_ij - conj(a_ji)| over all entries.
pub fn hermiticity_error(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().fold(0.0f64, |m, z| m.max(z.norm()))
}

pub fn frobenius_norm(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// tr(a b) without forming the product.
pub fn trace_of_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the unitary matrix whose columns
/// are the matching eigenvectors, so that `a = u diag(w) u^dagger`.
/// The input is assumed Hermitian; only its Hermitian part is meaningful.
pub fn eigh(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "eigh requires a square matrix");
    let mut m = a.clone();
    let mut u = identity(n);
    if n <= 1 {
        let w = if n == 1 { vec![m[(0, 0)].re] } else { vec![] };
        return (w, u);
    }

    let scale = max_abs(&m).max(f64::MIN_POSITIVE);
    let stop = 1e-15 * scale;

    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(m[(p, q)].norm());
            }
        }
        if off <= stop {
            break;
        }

        for p in 0..n {
            for q in (p + 1)..n {
                let g = m[(p, q)];
                let abs_g = g.norm();
                if abs_g <= stop * 1e-2 {
                    continue;
                }
                let alpha = m[(p, p)].re;
                let beta = m[(q, q)].re;
                // Phase removing the complex part of the pivot, then a real
                // Jacobi rotation on the remaining symmetric 2x2 block.
                let phase = g / abs_g;
                let tau = (beta - alpha) / (2.0 * abs_g);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // V differs from the identity in the (p,q) block:
                //   V_pp = c          V_pq = s
                //   V_qp = -s conj(phase)   V_qq = c conj(phase)
                let cs = Complex64::new(c, 0.0);
                let sp = Complex64::new(s, 0.0);

                // columns: M <- M V, U <- U V
                for i in 0..n {
                    let mip = m[(i, p)];
                    let miq = m[(i, q)];
                    m[(i, p)] = cs * mip - sp * phase.conj() * miq;
                    m[(i, q)] = sp * mip + cs * phase.conj() * miq;

                    let uip = u[(i, p)];
                    let uiq = u[(i, q)];
                    u[(i, p)] = cs * uip - sp * phase.conj() * uiq;
                    u[(i, q)] = sp * uip + cs * phase.conj() * uiq;
                }
                // rows: M <- V^dagger M
                for j in 0..n {
                    let mpj = m[(p, j)];
                    let mqj = m[(q, j)];
                    m[(p, j)] = cs * mpj - sp * phase * mqj;
                    m[(q, j)] = sp * mpj + cs * phase * mqj;
                }
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap());

    let w: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vecs = Array2::zeros((n, n));
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vecs[(row, col)] = u[(row, src)];
        }
    }
    (w, vecs)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(a: &CMatrix) -> f64 {
    let (w, _) = eigh(a);
    w.first().copied().unwrap_or(0.0)
}

/// exp(scale * h) for Hermitian h, via eigendecomposition.
pub fn exp_hermitian(h: &CMatrix, scale: Complex64) -> CMatrix {
    let n = h.nrows();
    let (w, u) = eigh(h);
    let mut exp_diag = Array2::zeros((n, n));
    for (i, &lambda) in w.iter().enumerate() {
        exp_diag[(i, i)] = (scale * lambda).exp();
    }
    u.dot(&exp_diag).dot(&dagger(&u))
}

/// Number of singular values of a real matrix above `rel_threshold` times the
/// largest one.
///
/// Computed by one-sided Jacobi orthogonalization of the columns; unlike the
/// Gram-matrix route this resolves singular values all the way down to
/// machine precision relative to the largest one, so thresholds like 1e-8
/// sit far above the noise floor.
pub fn singular_rank(rows: &Array2<f64>, rel_threshold: f64) -> usize {
    let mut a = if rows.nrows() >= rows.ncols() {
        rows.clone()
    } else {
        rows.t().to_owned()
    };
    let (m, n) = (a.nrows(), a.ncols());
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = 0.0;
                for i in 0..m {
                    app += a[(i, p)] * a[(i, p)];
                    aqq += a[(i, q)] * a[(i, q)];
                    apq += a[(i, p)] * a[(i, q)];
                }
                if apq.abs() <= 1e-15 * (app * aqq).sqrt().max(f64::MIN_POSITIVE) {
                    continue;
                }
                rotated = true;
                let tau = (aqq - app) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for i in 0..m {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = c * aip - s * aiq;
                    a[(i, q)] = s * aip + c * aiq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut singular_values: Vec<f64> = (0..n)
        .map(|p| (0..m).map(|i| a[(i, p)] * a[(i, p)]).sum::<f64>().sqrt())
        .collect();
    singular_values.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let max_sv = singular_values[0];
    if max_sv == 0.0 {
        return 0;
    }
    singular_values
        .iter()
        .filter(|&&s| s > rel_threshold * max_sv)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigh_diagonal_matrix() {
        let a = array![
            [c(3.0, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(-1.0, 0.0)]
        ];
        let (w, u) = eigh(&a);
        assert!((w[0] + 1.0).abs() < 1e-14);
        assert!((w[1] - 3.0).abs() < 1e-14);
        // unitary
        let id = dagger(&u).dot(&u);
        assert!(frobenius_norm(&(&id - &identity(2))) < 1e-13);
    }

    #[test]
    fn eigh_pauli_y_spectrum() {
        let a = array![
            [c(0.0, 0.0), c(0.0, -1.0)],
            [c(0.0, 1.0), c(0.0, 0.0)]
        ];
        let (w, u) = eigh(&a);
        assert!((w[0] + 1.0).abs() < 1e-14);
        assert!((w[1] - 1.0).abs() < 1e-14);
        // reconstruct
        let mut d: CMatrix = Array2::zeros((2, 2));
        d[(0, 0)] = c(w[0], 0.0);
        d[(1, 1)] = c(w[1], 0.0);
        let back = u.dot(&d).dot(&dagger(&u));
        assert!(frobenius_norm(&(&back - &a)) < 1e-13);
    }

    #[test]
    fn eigh_reconstructs_random_hermitian() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..=13usize {
            let mut a: CMatrix = Array2::zeros((n, n));
            for i in 0..n {
                for j in 0..n {
                    a[(i, j)] = c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
                }
            }
            let h = (&a + &dagger(&a)).mapv(|z| z * 0.5);
            let (w, u) = eigh(&h);
            let mut d: CMatrix = Array2::zeros((n, n));
            for i in 0..n {
                d[(i, i)] = c(w[i], 0.0);
            }
            let back = u.dot(&d).dot(&dagger(&u));
            assert!(
                frobenius_norm(&(&back - &h)) < 1e-12 * (n as f64),
                "reconstruction failed at n = {n}"
            );
            let gram = dagger(&u).dot(&u);
            assert!(frobenius_norm(&(&gram - &identity(n))) < 1e-12 * (n as f64));
            for k in 1..n {
                assert!(w[k] >= w[k - 1]);
            }
        }
    }

    #[test]
    fn eigh_handles_degenerate_spectrum() {
        let a = identity(5).mapv(|z| z * 0.2);
        let (w, u) = eigh(&a);
        for &lambda in &w {
            assert!((lambda - 0.2).abs() < 1e-15);
        }
        let gram = dagger(&u).dot(&u);
        assert!(frobenius_norm(&(&gram - &identity(5))) < 1e-13);
    }

    #[test]
    fn exp_hermitian_of_zero_is_identity() {
        let z: CMatrix = Array2::zeros((4, 4));
        let e = exp_hermitian(&z, c(1.0, 0.0));
        assert!(frobenius_norm(&(&e - &identity(4))) < 1e-14);
    }

    #[test]
    fn exp_hermitian_pauli_z_rotation() {
        // exp(-i t sigma_z) = diag(e^{-it}, e^{it})
        let sz = array![
            [c(1.0, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), c(-1.0, 0.0)]
        ];
        let t = 0.7;
        let e = exp_hermitian(&sz, c(0.0, -t));
        assert!((e[(0, 0)] - c(t.cos(), -t.sin())).norm() < 1e-14);
        assert!((e[(1, 1)] - c(t.cos(), t.sin())).norm() < 1e-14);
        assert!(e[(0, 1)].norm() < 1e-14);
    }

    #[test]
    fn singular_rank_detects_dependent_rows() {
        // rows: (1,0,0), (0,1,0), (1,1,0) -> rank 2
        let rows = array![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0]];
        assert_eq!(singular_rank(&rows, 1e-10), 2);
    }
}
