//! Anticoherence order of spin states, detected through three provably
//! equivalent criteria:
//!
//! 1. reduced-state: the spin-(t/2) reduction is maximally mixed,
//! 2. multipole: all multipole coefficients rho_kq with 1 <= k <= t vanish,
//! 3. direct-moment: <(n.J)^k> is direction-independent for k <= t.
//!
//! The criteria are computed independently; a disagreement is reported as an
//! error, never resolved by majority vote.

use ndarray::Array2;
use num_complex::Complex64;

use crate::angular::{spin_operators, tensor_operator};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::multi_index::MultiIndex;
use crate::spin::HalfIntegerSpin;
use crate::tensor::DensityMatrix;
use crate::weinberg::covariant_matrix;

/// Default tolerance for order decisions.
pub const DEFAULT_ORDER_TOL: f64 = 1e-8;

/// Multipole coefficients rho_kq = tr(rho T_kq^dagger), k = 0..2j, |q| <= k.
#[derive(Clone, Debug)]
pub struct MultipoleCoefficients {
    spin: HalfIntegerSpin,
    /// Flat storage: block for rank k starts at k^2, entry q at offset q + k.
    values: Vec<Complex64>,
}

impl MultipoleCoefficients {
    pub fn spin(&self) -> HalfIntegerSpin {
        self.spin
    }

    pub fn get(&self, k: u32, q: i32) -> Complex64 {
        debug_assert!(k <= self.spin.two_j() && q.unsigned_abs() <= k);
        self.values[(k * k) as usize + (q + k as i32) as usize]
    }

    /// Largest |rho_kq| at fixed rank k.
    pub fn max_abs_at_rank(&self, k: u32) -> f64 {
        (-(k as i32)..=k as i32)
            .map(|q| self.get(k, q).norm())
            .fold(0.0, f64::max)
    }
}

/// Expansion of a density matrix over the irreducible tensor operators.
pub fn multipole_expand(rho: &DensityMatrix) -> MultipoleCoefficients {
    let spin = rho.spin();
    let two_j = spin.two_j();
    let mut values = Vec::with_capacity(((two_j + 1) * (two_j + 1)) as usize);
    for k in 0..=two_j {
        for q in -(k as i32)..=k as i32 {
            let t_kq = tensor_operator(spin, k, q).expect("labels in range");
            let coef = linalg::trace_of_product(rho.matrix(), &linalg::dagger(&t_kq.matrix));
            values.push(coef);
        }
    }
    MultipoleCoefficients { spin, values }
}

/// Rebuilds the matrix sum rho_kq T_kq; inverse of `multipole_expand`.
pub fn multipole_reconstruct(coeffs: &MultipoleCoefficients) -> CMatrix {
    let spin = coeffs.spin;
    let dim = spin.dim();
    let mut out: CMatrix = Array2::zeros((dim, dim));
    for k in 0..=spin.two_j() {
        for q in -(k as i32)..=k as i32 {
            let t_kq = tensor_operator(spin, k, q).expect("labels in range");
            let c = coeffs.get(k, q);
            out.zip_mut_with(&t_kq.matrix, |o, &t| *o += c * t);
        }
    }
    out
}

/// A deterministic set of unit vectors for moment sweeps: the six axis
/// directions plus Fibonacci-sphere points.
#[derive(Clone, Debug)]
pub struct DirectionSet {
    directions: Vec<[f64; 3]>,
}

impl DirectionSet {
    /// Six axes plus `extra` Fibonacci-sphere points (26 directions with the
    /// default extra = 20). Fully deterministic.
    pub fn standard() -> Self {
        Self::with_sphere_points(20)
    }

    pub fn with_sphere_points(extra: usize) -> Self {
        let mut directions = vec![
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ];
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        for i in 0..extra {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / extra as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let az = 2.0 * std::f64::consts::PI * (i as f64 / golden).fract();
            directions.push([r * az.cos(), r * az.sin(), z]);
        }
        Self { directions }
    }

    pub fn from_vectors(directions: Vec<[f64; 3]>) -> Self {
        Self { directions }
    }

    pub fn directions(&self) -> &[[f64; 3]] {
        &self.directions
    }
}

impl Default for DirectionSet {
    fn default() -> Self {
        Self::standard()
    }
}

/// Residuals of all three criteria at every order t = 1..=2j; entry t-1 in
/// each vector is the residual that must fall below tolerance for the state
/// to be anticoherent at order t.
#[derive(Clone, Debug)]
pub struct CriterionResiduals {
    pub reduction: Vec<f64>,
    pub multipole: Vec<f64>,
    pub moments: Vec<f64>,
}

/// Largest t such that residuals[0..t] all stay below tol. Residual vectors
/// are indexed by order, entry t-1 belonging to order t, so callers can
/// re-threshold reported residuals.
pub fn order_from_residuals(residuals: &[f64], tol: f64) -> u32 {
    let mut order = 0;
    for (i, &r) in residuals.iter().enumerate() {
        if r < tol {
            order = i as u32 + 1;
        } else {
            break;
        }
    }
    order
}

/// Residual per order for the reduced-state criterion:
/// Frobenius distance of the spin-(t/2) reduction from 1/(t+1).
pub fn reduction_residuals(rho: &DensityMatrix) -> Vec<f64> {
    let two_j = rho.spin().two_j();
    (1..=two_j)
        .map(|t| {
            let k = HalfIntegerSpin::from_two_j(t);
            let red = crate::tensor::reduced_density(rho, k)
                .expect("reduction to smaller spin is valid");
            let target = linalg::identity(t as usize + 1).mapv(|z| z / (t as f64 + 1.0));
            linalg::frobenius_norm(&(red.matrix() - &target))
        })
        .collect()
}

/// Residual per order for the multipole criterion: max |rho_kq| at rank k = t.
pub fn multipole_residuals(rho: &DensityMatrix) -> Vec<f64> {
    let coeffs = multipole_expand(rho);
    (1..=rho.spin().two_j())
        .map(|k| coeffs.max_abs_at_rank(k))
        .collect()
}

/// Residual per order for the direct-moment criterion: max-minus-min of
/// <(n.J)^k> over the direction set at power k = t.
pub fn moment_residuals(rho: &DensityMatrix, directions: &DirectionSet) -> Vec<f64> {
    let spin = rho.spin();
    let two_j = spin.two_j();
    let ops = spin_operators(spin);
    let mut lo = vec![f64::INFINITY; two_j as usize];
    let mut hi = vec![f64::NEG_INFINITY; two_j as usize];
    for &n in directions.directions() {
        let nj = ops.dot(n);
        let mut power = nj.clone();
        for t in 1..=two_j as usize {
            let moment = rho.expectation(&power).re;
            lo[t - 1] = lo[t - 1].min(moment);
            hi[t - 1] = hi[t - 1].max(moment);
            if t < two_j as usize {
                power = power.dot(&nj);
            }
        }
    }
    lo.iter().zip(hi.iter()).map(|(a, b)| b - a).collect()
}

/// Anticoherence order by the reduced-state criterion.
pub fn order_by_reduction(rho: &DensityMatrix, tol: f64) -> u32 {
    order_from_residuals(&reduction_residuals(rho), tol)
}

/// Anticoherence order by the multipole criterion.
pub fn order_by_multipole(rho: &DensityMatrix, tol: f64) -> u32 {
    order_from_residuals(&multipole_residuals(rho), tol)
}

/// Anticoherence order by direction-independence of moments.
pub fn order_by_moments(rho: &DensityMatrix, tol: f64, directions: &DirectionSet) -> u32 {
    order_from_residuals(&moment_residuals(rho, directions), tol)
}

/// Combined report: the order all three criteria agree on, with the residual
/// tables so callers can re-threshold.
#[derive(Clone, Debug)]
pub struct AnticoherenceReport {
    pub order: u32,
    pub tolerance: f64,
    pub residuals: CriterionResiduals,
}

/// Runs all three criteria and errors if they disagree (the criteria are
/// equivalent, so disagreement means a bug, not a borderline state).
pub fn classify(rho: &DensityMatrix, tol: f64) -> Result<AnticoherenceReport> {
    let residuals = CriterionResiduals {
        reduction: reduction_residuals(rho),
        multipole: multipole_residuals(rho),
        moments: moment_residuals(rho, &DirectionSet::standard()),
    };
    let reduction = order_from_residuals(&residuals.reduction, tol);
    let multipole = order_from_residuals(&residuals.multipole, tol);
    let moments = order_from_residuals(&residuals.moments, tol);
    if reduction != multipole || multipole != moments {
        return Err(Error::CriterionDisagreement {
            reduction,
            multipole,
            moments,
            residuals: Box::new(residuals),
        });
    }
    Ok(AnticoherenceReport {
        order: reduction,
        tolerance: tol,
        residuals,
    })
}

/// The 4x4 matrix A_mn = <S_{mn 0...0}> characterizing order-2 anticoherence;
/// the state is order-2 anticoherent iff A = diag(1, 1/3, 1/3, 1/3) (and
/// order 1 holds). Needs 2j >= 2.
pub fn order2_matrix(rho: &DensityMatrix) -> Result<Array2<f64>> {
    let two_j = rho.spin().two_j();
    if two_j < 2 {
        return Err(Error::SpinTooSmall {
            required: 2,
            got: two_j,
        });
    }
    let n = rho.spin().qubit_count();
    let mut a = Array2::<f64>::zeros((4, 4));
    for mu in 0..4u8 {
        for nu in 0..4u8 {
            let mut counts = [0usize; 4];
            counts[mu as usize] += 1;
            counts[nu as usize] += 1;
            counts[0] += n - 2;
            let idx = MultiIndex::from_counts(counts);
            let s = covariant_matrix(n, &idx)?;
            a[(mu as usize, nu as usize)] = rho.expectation(&s).re;
        }
    }
    Ok(a)
}

/// Parameters of the spin-1 family of order-1 anticoherent states.
#[derive(Clone, Copy, Debug)]
pub struct Spin1FamilyParams {
    pub a: f64,
    pub beta: Complex64,
    pub gamma: Complex64,
}

impl Spin1FamilyParams {
    /// Slack of the two principal-minor inequalities; both nonnegative means
    /// the conditions hold.
    pub fn positivity_slack(&self) -> (f64, f64) {
        let b2 = self.beta.norm_sqr();
        let first = -b2 - self.a * (1.0 + 2.0 * self.a);
        let second = 2.0 * self.a
            * (self.gamma.norm_sqr() - b2 - 0.25 - self.a * (1.0 + self.a))
            - b2
            - 2.0 * (self.gamma * self.beta.conj() * self.beta.conj()).re;
        (first, second)
    }

    pub fn satisfies_conditions(&self) -> bool {
        let (first, second) = self.positivity_slack();
        first >= 0.0 && second >= 0.0
    }
}

/// Diagnostic output of the spin-1 family constructor: the matrix together
/// with both positivity views, built even when the parameters fail them.
#[derive(Clone, Debug)]
pub struct Spin1FamilyState {
    pub params: Spin1FamilyParams,
    pub matrix: CMatrix,
    /// Slack of the two closed-form inequalities.
    pub condition_slack: (f64, f64),
    pub conditions_hold: bool,
    /// Smallest eigenvalue of the matrix.
    pub min_eigenvalue: f64,
    /// Eigenvalue test at the same tolerance used for density matrices.
    pub psd: bool,
    /// True when the closed-form conditions and the eigenvalue test differ.
    pub disagreement: bool,
}

impl Spin1FamilyState {
    /// The validated density matrix, when PSD holds.
    pub fn density_matrix(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(HalfIntegerSpin::from_two_j(2), self.matrix.clone())
    }
}

/// The general spin-1 state anticoherent to order 1, in the |1, m> basis
/// (m = 1, 0, -1):
///
/// ```text
/// [ 1/2 + a    beta     gamma   ]
/// [ beta^*    -2a      -beta    ]
/// [ gamma^*   -beta^*   1/2 + a ]
/// ```
///
/// Positivity is diagnosed, not enforced.
pub fn spin1_family(params: Spin1FamilyParams) -> Spin1FamilyState {
    let h = Complex64::new(0.5 + params.a, 0.0);
    let d = Complex64::new(-2.0 * params.a, 0.0);
    let matrix = ndarray::array![
        [h, params.beta, params.gamma],
        [params.beta.conj(), d, -params.beta],
        [params.gamma.conj(), -params.beta.conj(), h]
    ];
    let condition_slack = params.positivity_slack();
    let conditions_hold = params.satisfies_conditions();
    let min_eigenvalue = linalg::min_eigenvalue(&matrix);
    let psd = min_eigenvalue >= -1e-10;
    Spin1FamilyState {
        params,
        matrix,
        condition_slack,
        conditions_hold,
        min_eigenvalue,
        psd,
        disagreement: conditions_hold != psd,
    }
}
