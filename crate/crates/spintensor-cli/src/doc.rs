//! JSON interchange documents.
//!
//! All files are UTF-8 JSON with complex numbers as {"re": ..., "im": ...}
//! and matrices row-major. NaN and infinities are rejected on both read and
//! write. Every emitted document carries a metadata block with the tool
//! version and the active spin cap.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use spintensor::multi_index::{CanonicalIndices, MultiIndex};
use spintensor::spin::HalfIntegerSpin;
use spintensor::tensor::{CoordinateTensor, DensityMatrix};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Metadata {
    pub version: String,
    pub two_j_cap: u32,
}

impl Metadata {
    pub fn current(cap: u32) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            two_j_cap: cap,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ComplexEntry {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexEntry {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// A density matrix with its spin, as stored on disk.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
    pub two_j: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub matrix: Vec<Vec<ComplexEntry>>,
}

impl StateDocument {
    pub fn from_density_matrix(
        rho: &DensityMatrix,
        label: Option<String>,
        metadata: Metadata,
    ) -> Self {
        let dim = rho.spin().dim();
        let matrix = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| ComplexEntry::from(rho.matrix()[(i, j)]))
                    .collect()
            })
            .collect();
        Self {
            metadata: Some(metadata),
            two_j: rho.spin().two_j(),
            label,
            matrix,
        }
    }

    /// Parses and validates against the density-matrix invariants, naming the
    /// failed invariant on rejection.
    pub fn to_density_matrix(&self, cap: u32) -> Result<DensityMatrix, CliError> {
        if self.two_j > cap {
            return Err(CliError::input(format!(
                "two_j = {} exceeds the spin cap {cap}",
                self.two_j
            )));
        }
        let spin = HalfIntegerSpin::from_two_j(self.two_j);
        let dim = spin.dim();
        if self.matrix.len() != dim || self.matrix.iter().any(|row| row.len() != dim) {
            return Err(CliError::input(format!(
                "matrix must be {dim}x{dim} for two_j = {}",
                self.two_j
            )));
        }
        let mut m: Array2<Complex64> = Array2::zeros((dim, dim));
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !e.re.is_finite() || !e.im.is_finite() {
                    return Err(CliError::input(format!(
                        "matrix entry ({i}, {j}) is not finite"
                    )));
                }
                m[(i, j)] = Complex64::new(e.re, e.im);
            }
        }
        DensityMatrix::new(spin, m)
            .map_err(|e| CliError::input(format!("invalid density matrix: {e}")))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TensorEntry {
    pub index: Vec<u8>,
    pub value: f64,
}

/// A coordinate tensor: canonical (sorted) indices with real values; entries
/// that are exactly zero are omitted.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TensorDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
    pub two_j: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub entries: Vec<TensorEntry>,
}

impl TensorDocument {
    pub fn from_tensor(
        x: &CoordinateTensor,
        label: Option<String>,
        metadata: Metadata,
    ) -> Self {
        let entries = x
            .iter()
            .filter(|(_, v)| *v != 0.0)
            .map(|(idx, value)| TensorEntry {
                index: idx.indices().to_vec(),
                value,
            })
            .collect();
        Self {
            metadata: Some(metadata),
            two_j: x.spin().two_j(),
            label,
            entries,
        }
    }

    pub fn to_tensor(&self, cap: u32) -> Result<CoordinateTensor, CliError> {
        if self.two_j > cap {
            return Err(CliError::input(format!(
                "two_j = {} exceeds the spin cap {cap}",
                self.two_j
            )));
        }
        let spin = HalfIntegerSpin::from_two_j(self.two_j);
        let rank = spin.qubit_count();
        let space = CanonicalIndices::new(rank);
        let mut values = vec![0.0f64; space.len()];
        let mut seen = vec![false; space.len()];
        for entry in &self.entries {
            if entry.index.len() != rank {
                return Err(CliError::input(format!(
                    "index {:?} has rank {}, want {rank}",
                    entry.index,
                    entry.index.len()
                )));
            }
            if entry.index.windows(2).any(|w| w[0] > w[1]) {
                return Err(CliError::input(format!(
                    "index {:?} is not sorted nondecreasing",
                    entry.index
                )));
            }
            if !entry.value.is_finite() {
                return Err(CliError::input(format!(
                    "value for index {:?} is not finite",
                    entry.index
                )));
            }
            let idx = MultiIndex::new(entry.index.clone())
                .map_err(|e| CliError::input(format!("bad index {:?}: {e}", entry.index)))?;
            let pos = space
                .position(&idx)
                .map_err(|e| CliError::input(format!("bad index {:?}: {e}", entry.index)))?;
            if seen[pos] {
                return Err(CliError::input(format!(
                    "duplicate index {:?}",
                    entry.index
                )));
            }
            seen[pos] = true;
            values[pos] = entry.value;
        }
        CoordinateTensor::from_values(spin, values)
            .map_err(|e| CliError::input(format!("invalid tensor: {e}")))
    }
}

/// One covariant matrix with its canonical index and permutation multiplicity.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeinbergEntry {
    pub index: Vec<u8>,
    pub multiplicity: u64,
    pub matrix: Vec<Vec<ComplexEntry>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeinbergDocument {
    pub metadata: Metadata,
    pub two_j: u32,
    pub matrices: Vec<WeinbergEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CriterionReport {
    pub order: u32,
    /// Residual at each order t = 1..=2j (entry t-1).
    pub residuals: Vec<f64>,
}

/// Anticoherence classification output. `order` is null when the three
/// criteria disagree (which also sets exit code 2).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnticoherenceDocument {
    pub metadata: Metadata,
    pub two_j: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub tolerance: f64,
    pub order: Option<u32>,
    pub reduced_state: CriterionReport,
    pub multipole: CriterionReport,
    pub direct_moment: CriterionReport,
}
