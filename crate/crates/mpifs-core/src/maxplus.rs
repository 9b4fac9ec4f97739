//! Max-plus scalar arithmetic and grid-indexed densities.
//!
//! Scalars live in ℝ ∪ {−∞} with ⊕ = max and ⊙ = +. The bottom element −∞ is
//! represented by [`f64::NEG_INFINITY`] directly: IEEE arithmetic then
//! satisfies the absorption laws natively (`max(-∞, a) = a`, `-∞ + a = -∞`),
//! which keeps dense array processing branch-free. The semiring laws are
//! pinned by tests rather than by a tagged representation.

use crate::error::{Error, Result};

/// Additive identity of the max-plus semiring (the bottom element −∞).
pub const BOTTOM: f64 = f64::NEG_INFINITY;

/// Multiplicative identity of the max-plus semiring.
pub const UNIT: f64 = 0.0;

/// Max-plus addition: `a ⊕ b = max(a, b)`, with −∞ as identity.
#[inline]
pub fn oplus(a: f64, b: f64) -> f64 {
    a.max(b)
}

/// Max-plus multiplication: `a ⊙ b = a + b`, with −∞ absorbing.
#[inline]
pub fn odot(a: f64, b: f64) -> f64 {
    a + b
}

/// Shape of a grid-indexed value array: `len` points on a segment, or a
/// square `side × side` block stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridShape {
    OneDim { len: usize },
    TwoDim { side: usize },
}

impl GridShape {
    /// Spatial dimension (1 or 2).
    pub fn dimension(&self) -> usize {
        match self {
            GridShape::OneDim { .. } => 1,
            GridShape::TwoDim { .. } => 2,
        }
    }

    /// Total number of grid points.
    pub fn num_points(&self) -> usize {
        match self {
            GridShape::OneDim { len } => *len,
            GridShape::TwoDim { side } => side * side,
        }
    }
}

/// The density of an idempotent measure restricted to a finite grid: one
/// value in [−∞, 0] per grid point. Normalized means the maximum over all
/// values is exactly 0.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDensity {
    shape: GridShape,
    values: Vec<f64>,
}

impl DiscreteDensity {
    /// Density with every point set to `value` (must lie in [−∞, 0]).
    pub fn filled(shape: GridShape, value: f64) -> Result<Self> {
        Self::from_values(shape, vec![value; shape.num_points()])
    }

    /// Wraps a value array, validating the length and that every entry lies
    /// in [−∞, 0] (NaN and +∞ are rejected).
    pub fn from_values(shape: GridShape, values: Vec<f64>) -> Result<Self> {
        if values.len() != shape.num_points() {
            return Err(Error::invalid(format!(
                "value array of length {} does not match shape {:?}",
                values.len(),
                shape
            )));
        }
        for (i, &v) in values.iter().enumerate() {
            if v.is_nan() || v > 0.0 {
                return Err(Error::invalid(format!(
                    "density value {v} at index {i} is outside [-inf, 0]"
                )));
            }
        }
        Ok(Self { shape, values })
    }

    /// Density that is 0 on `support` and −∞ elsewhere.
    pub fn indicator(shape: GridShape, support: &[usize]) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::EmptySupport);
        }
        let mut values = vec![BOTTOM; shape.num_points()];
        for &i in support {
            if i >= values.len() {
                return Err(Error::invalid(format!(
                    "support index {i} out of range for shape {shape:?}"
                )));
            }
            values[i] = UNIT;
        }
        Ok(Self { shape, values })
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Maximum over all stored values; −∞ for an all-bottom density.
    pub fn sup(&self) -> f64 {
        self.values.iter().copied().fold(BOTTOM, oplus)
    }

    /// Number of grid points with a finite value.
    pub fn support_size(&self) -> usize {
        self.values.iter().filter(|v| v.is_finite()).count()
    }

    /// Indices of the grid points with a finite value.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i].is_finite()).collect()
    }

    /// Whether the maximum over all values equals 0 exactly.
    pub fn is_normalized(&self) -> bool {
        self.sup() == 0.0
    }

    /// Shifts every value so the maximum becomes exactly 0. Errors with
    /// [`Error::EmptySupport`] when all values are −∞. Idempotent bit-exactly:
    /// a normalized density is returned unchanged.
    pub fn renormalize(&self) -> Result<Self> {
        let s = self.sup();
        if s == BOTTOM {
            return Err(Error::EmptySupport);
        }
        let values = self.values.iter().map(|&v| v - s).collect();
        Ok(Self { shape: self.shape, values })
    }

    /// Pointwise max-plus scaling `c ⊙ λ` (adds `c` to every finite value).
    /// `c` must be ≤ 0 to preserve the value range.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if c.is_nan() || c > 0.0 {
            return Err(Error::invalid(format!("scale {c} is outside [-inf, 0]")));
        }
        let values = self.values.iter().map(|&v| odot(c, v)).collect();
        Ok(Self { shape: self.shape, values })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(values: &[f64]) -> DiscreteDensity {
        DiscreteDensity::from_values(GridShape::OneDim { len: values.len() }, values.to_vec())
            .unwrap()
    }

    #[test]
    fn oplus_bottom_is_identity() {
        assert_eq!(oplus(3.0, BOTTOM), 3.0);
        assert_eq!(oplus(BOTTOM, 3.0), 3.0);
        assert_eq!(oplus(-1.0, -2.0), -1.0);
        assert_eq!(oplus(0.0, 0.0), 0.0);
    }

    #[test]
    fn odot_bottom_absorbs() {
        assert_eq!(odot(BOTTOM, 5.0), BOTTOM);
        assert_eq!(odot(5.0, BOTTOM), BOTTOM);
        assert_eq!(odot(UNIT, -3.5), -3.5);
        assert_eq!(odot(-1.0, -2.0), -3.0);
    }

    #[test]
    fn sup_of_densities() {
        assert_eq!(line(&[0.0, 0.0, 0.0]).sup(), 0.0);
        assert_eq!(line(&[BOTTOM, -0.5, -0.25]).sup(), -0.25);
        assert_eq!(line(&[BOTTOM, BOTTOM]).sup(), BOTTOM);
    }

    #[test]
    fn renormalize_shifts_by_sup() {
        let d = line(&[-1.0, -2.0]).renormalize().unwrap();
        assert_eq!(d.values(), &[0.0, -1.0]);

        let d = line(&[BOTTOM, -3.0]).renormalize().unwrap();
        assert_eq!(d.values(), &[BOTTOM, 0.0]);
    }

    #[test]
    fn renormalize_is_idempotent_bit_exact() {
        let d = line(&[-0.3, BOTTOM, -1.7, -0.3]).renormalize().unwrap();
        let dd = d.renormalize().unwrap();
        assert_eq!(d, dd);
        assert_eq!(dd.sup(), 0.0);
    }

    #[test]
    fn renormalize_empty_support_errors() {
        assert_eq!(line(&[BOTTOM, BOTTOM]).renormalize(), Err(Error::EmptySupport));
    }

    #[test]
    fn from_values_rejects_positive_and_nan() {
        let shape = GridShape::OneDim { len: 2 };
        assert!(DiscreteDensity::from_values(shape, vec![0.0, 0.1]).is_err());
        assert!(DiscreteDensity::from_values(shape, vec![0.0, f64::NAN]).is_err());
        assert!(DiscreteDensity::from_values(shape, vec![0.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn indicator_support() {
        let d = DiscreteDensity::indicator(GridShape::OneDim { len: 4 }, &[1, 3]).unwrap();
        assert_eq!(d.values(), &[BOTTOM, 0.0, BOTTOM, 0.0]);
        assert_eq!(d.support(), vec![1, 3]);
        assert!(d.is_normalized());
        assert_eq!(
            DiscreteDensity::indicator(GridShape::OneDim { len: 4 }, &[]),
            Err(Error::EmptySupport)
        );
    }

    #[test]
    fn two_dim_shape_points() {
        let s = GridShape::TwoDim { side: 3 };
        assert_eq!(s.num_points(), 9);
        assert_eq!(s.dimension(), 2);
    }
}
