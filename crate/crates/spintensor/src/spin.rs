//! The spin quantum number j, stored exactly as the integer N = 2j.

use std::fmt;

/// Default cap on two_j; combinatorial sizes stay desk-scale below it.
pub const DEFAULT_SPIN_CAP: u32 = 12;

/// A half-integer spin j >= 0, stored as N = 2j so that all quantum-number
/// arithmetic is exact integer arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfIntegerSpin {
    two_j: u32,
}

impl HalfIntegerSpin {
    pub fn from_two_j(two_j: u32) -> Self {
        Self { two_j }
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    /// j as a float.
    pub fn j(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    /// Dimension of the spin-j state space, 2j + 1.
    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    /// Number of constituent spin-1/2 in the symmetric-subspace picture, N = 2j.
    pub fn qubit_count(&self) -> usize {
        self.two_j as usize
    }

    pub fn is_integer(&self) -> bool {
        self.two_j % 2 == 0
    }

    /// Doubled magnetic quantum numbers 2m, ordered m = j, j-1, ..., -j.
    pub fn two_m_values(&self) -> impl Iterator<Item = i32> + '_ {
        let two_j = self.two_j as i32;
        (0..self.dim()).map(move |i| two_j - 2 * i as i32)
    }

    /// Row/column index of |j, m> in the fixed m-descending basis ordering.
    pub fn index_of_two_m(&self, two_m: i32) -> Option<usize> {
        let two_j = self.two_j as i32;
        if two_m.abs() > two_j || (two_j - two_m) % 2 != 0 {
            return None;
        }
        Some(((two_j - two_m) / 2) as usize)
    }

    /// 2m for a basis index (0 is m = j).
    pub fn two_m_at(&self, index: usize) -> i32 {
        self.two_j as i32 - 2 * index as i32
    }
}

impl fmt::Display for HalfIntegerSpin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.two_j % 2 == 0 {
            write!(f, "{}", self.two_j / 2)
        } else {
            write!(f, "{}/2", self.two_j)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_ordering_is_m_descending() {
        let s = HalfIntegerSpin::from_two_j(3);
        let ms: Vec<i32> = s.two_m_values().collect();
        assert_eq!(ms, vec![3, 1, -1, -3]);
        assert_eq!(s.index_of_two_m(3), Some(0));
        assert_eq!(s.index_of_two_m(-3), Some(3));
        assert_eq!(s.index_of_two_m(0), None); // wrong parity for j = 3/2
        assert_eq!(s.index_of_two_m(5), None);
    }

    #[test]
    fn display_integer_and_half_integer() {
        assert_eq!(HalfIntegerSpin::from_two_j(4).to_string(), "2");
        assert_eq!(HalfIntegerSpin::from_two_j(3).to_string(), "3/2");
    }
}
