//! Dicke states: the symmetric basis of N qubits, kept in sparse form.
//!
//! |D_N^(k)> is the uniform superposition of the C(N, k) computational basis
//! strings with k up-spins; it corresponds to |j, m> with j = N/2 and
//! m = k - N/2. Bitstrings are stored as integers with bit i = 1 meaning the
//! i-th qubit is up.

use crate::error::{Error, Result};
use crate::spin::DEFAULT_SPIN_CAP;

/// One Dicke vector: its weight, uniform amplitude, and support.
#[derive(Clone, Debug)]
pub struct DickeVector {
    pub weight: usize,
    pub amplitude: f64,
    pub bitstrings: Vec<u16>,
}

/// The N+1 Dicke vectors spanning the symmetric subspace of N qubits.
#[derive(Clone, Debug)]
pub struct DickeBasis {
    n: usize,
    vectors: Vec<DickeVector>,
}

/// All bitstrings of `n` bits grouped by Hamming weight.
pub(crate) fn weight_classes(n: usize) -> Vec<Vec<u16>> {
    let mut classes: Vec<Vec<u16>> = vec![Vec::new(); n + 1];
    for s in 0..(1u32 << n) {
        classes[s.count_ones() as usize].push(s as u16);
    }
    classes
}

pub fn dicke_basis(n: usize) -> Result<DickeBasis> {
    dicke_basis_with_cap(n, DEFAULT_SPIN_CAP)
}

pub fn dicke_basis_with_cap(n: usize, cap: u32) -> Result<DickeBasis> {
    if n as u32 > cap {
        return Err(Error::SpinCapExceeded {
            two_j: n as u32,
            cap,
        });
    }
    let classes = weight_classes(n);
    let vectors = classes
        .into_iter()
        .enumerate()
        .map(|(weight, bitstrings)| DickeVector {
            weight,
            amplitude: 1.0 / (bitstrings.len() as f64).sqrt(),
            bitstrings,
        })
        .collect();
    Ok(DickeBasis { n, vectors })
}

impl DickeBasis {
    pub fn qubit_count(&self) -> usize {
        self.n
    }

    /// Vector of weight k (i.e. |j, m = k - N/2>).
    pub fn vector(&self, k: usize) -> &DickeVector {
        &self.vectors[k]
    }

    pub fn vectors(&self) -> &[DickeVector] {
        &self.vectors
    }
}

impl DickeVector {
    /// Sparse inner product with another Dicke vector.
    pub fn dot(&self, other: &DickeVector) -> f64 {
        if self.weight != other.weight {
            return 0.0;
        }
        self.amplitude * other.amplitude * self.bitstrings.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comb::binomial;

    #[test]
    fn single_qubit_dicke_states() {
        let basis = dicke_basis(1).unwrap();
        // k = 0 is the all-down string, k = 1 the all-up string
        assert_eq!(basis.vector(0).bitstrings, vec![0b0]);
        assert_eq!(basis.vector(1).bitstrings, vec![0b1]);
        assert_eq!(basis.vector(0).amplitude, 1.0);
    }

    #[test]
    fn two_qubit_weight_one_support() {
        let basis = dicke_basis(2).unwrap();
        let v = basis.vector(1);
        assert_eq!(v.bitstrings.len(), 2);
        assert!((v.amplitude - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn three_qubit_weight_two_support() {
        let basis = dicke_basis(3).unwrap();
        let v = basis.vector(2);
        assert_eq!(v.bitstrings.len(), 3);
        assert!((v.amplitude - (1.0 / 3.0f64).sqrt()).abs() < 1e-15);
        for &s in &v.bitstrings {
            assert_eq!(s.count_ones(), 2);
        }
    }

    #[test]
    fn supports_match_binomials_and_orthonormality() {
        for n in 1..=10usize {
            let basis = dicke_basis(n).unwrap();
            for k in 0..=n {
                let v = basis.vector(k);
                assert_eq!(v.bitstrings.len() as u128, binomial(n as u32, k as u32));
                for l in 0..=n {
                    let target = if k == l { 1.0 } else { 0.0 };
                    assert!((v.dot(basis.vector(l)) - target).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(dicke_basis(13).is_err());
        assert!(dicke_basis_with_cap(13, 14).is_ok());
    }
}
