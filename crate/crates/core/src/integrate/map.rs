//! Compactification maps from (-1, 1) onto ℝ.

use super::Compactification;

impl Compactification {
    /// Image of u ∈ (-1, 1) on the real line. Odd and strictly increasing.
    pub(crate) fn forward(self, u: f64) -> f64 {
        match self {
            Compactification::RationalMap => u / (1.0 - u * u),
            Compactification::TanhMap => u.atanh(),
        }
    }

    /// dt/du at u.
    pub(crate) fn jacobian(self, u: f64) -> f64 {
        match self {
            Compactification::RationalMap => {
                let d = 1.0 - u * u;
                (1.0 + u * u) / (d * d)
            }
            Compactification::TanhMap => 1.0 / (1.0 - u * u),
        }
    }

    /// Preimage of t ∈ ℝ in (-1, 1).
    pub(crate) fn inverse(self, t: f64) -> f64 {
        match self {
            Compactification::RationalMap => {
                if t == 0.0 {
                    0.0
                } else {
                    // root of t u² + u - t = 0 inside (-1, 1)
                    ((1.0 + 4.0 * t * t).sqrt() - 1.0) / (2.0 * t)
                }
            }
            Compactification::TanhMap => t.tanh(),
        }
    }
}
