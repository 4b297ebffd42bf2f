//! Real 4-vectors q = (q0, q1, q2, q3) = (q0, **q**).

/// A real 4-vector. Directions n = (1, **n**) with |**n**| = 1 are the
/// unit-vector specialization used for coherent-state coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourVector {
    pub q0: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

impl FourVector {
    pub fn new(q0: f64, q1: f64, q2: f64, q3: f64) -> Self {
        Self { q0, q1, q2, q3 }
    }

    /// The direction 4-vector (1, sin t cos p, sin t sin p, cos t).
    pub fn unit_direction(theta: f64, phi: f64) -> Self {
        Self {
            q0: 1.0,
            q1: theta.sin() * phi.cos(),
            q2: theta.sin() * phi.sin(),
            q3: theta.cos(),
        }
    }

    pub fn component(&self, mu: usize) -> f64 {
        match mu {
            0 => self.q0,
            1 => self.q1,
            2 => self.q2,
            3 => self.q3,
            _ => panic!("four-vector component index {mu} out of range"),
        }
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.q1, self.q2, self.q3]
    }

    pub fn spatial_norm(&self) -> f64 {
        (self.q1 * self.q1 + self.q2 * self.q2 + self.q3 * self.q3).sqrt()
    }

    /// Product q_{mu_1} ... q_{mu_N} for an index multiset given as counts
    /// (p0, p1, p2, p3).
    pub fn monomial(&self, counts: [usize; 4]) -> f64 {
        self.q0.powi(counts[0] as i32)
            * self.q1.powi(counts[1] as i32)
            * self.q2.powi(counts[2] as i32)
            * self.q3.powi(counts[3] as i32)
    }
}
