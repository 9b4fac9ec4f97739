//! Uniform ε-nets on [0,1] and [0,1]² with nearest-point projection.
//!
//! A grid with `M` subdivisions per axis has points `{i/M : 0 ≤ i ≤ M}` and
//! mesh `ε = 1/(2M)`: projection moves no point of the domain by more than ε
//! in the max metric. Maps are discretized by tabulating `r ∘ φ` over all
//! grid points once; the iteration loops then reduce to integer indexing.

use crate::error::{Error, Result};
use crate::ifs::AffineMap;
use crate::maxplus::GridShape;

/// A point of the unit segment or unit square.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    One(f64),
    Two(f64, f64),
}

impl Point {
    pub fn dimension(&self) -> usize {
        match self {
            Point::One(_) => 1,
            Point::Two(..) => 2,
        }
    }
}

/// Tolerance within which coordinates slightly outside [0,1] are clamped
/// instead of rejected.
pub const DOMAIN_TOLERANCE: f64 = 1e-9;

/// Uniform grid on `[0,1]^d` with `M ≥ 2` subdivisions per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniformGrid {
    dimension: usize,
    subdivisions: usize,
}

impl UniformGrid {
    pub fn new(dimension: usize, subdivisions: usize) -> Result<Self> {
        if dimension != 1 && dimension != 2 {
            return Err(Error::invalid(format!("grid dimension must be 1 or 2, got {dimension}")));
        }
        if subdivisions < 2 {
            return Err(Error::invalid(format!("grid needs at least 2 subdivisions, got {subdivisions}")));
        }
        Ok(Self { dimension, subdivisions })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Subdivisions per axis (`M`).
    pub fn subdivisions(&self) -> usize {
        self.subdivisions
    }

    /// Grid points per axis (`M + 1`).
    pub fn points_per_axis(&self) -> usize {
        self.subdivisions + 1
    }

    pub fn shape(&self) -> GridShape {
        match self.dimension {
            1 => GridShape::OneDim { len: self.points_per_axis() },
            _ => GridShape::TwoDim { side: self.points_per_axis() },
        }
    }

    pub fn num_points(&self) -> usize {
        self.shape().num_points()
    }

    /// Mesh of the net: `ε = 1/(2M)`.
    pub fn mesh(&self) -> f64 {
        1.0 / (2.0 * self.subdivisions as f64)
    }

    /// Euclidean diameter of the domain (1 for the segment, √2 for the square).
    pub fn diameter(&self) -> f64 {
        match self.dimension {
            1 => 1.0,
            _ => std::f64::consts::SQRT_2,
        }
    }

    /// Flat index of the 2D grid point with axis indices `(i, j)`; row-major
    /// in the first coordinate.
    pub fn flat_index(&self, i: usize, j: usize) -> usize {
        i * self.points_per_axis() + j
    }

    /// Axis indices of a flat 2D index.
    pub fn axis_indices(&self, flat: usize) -> (usize, usize) {
        let side = self.points_per_axis();
        (flat / side, flat % side)
    }

    /// Coordinates of the grid point with flat index `flat`.
    pub fn point(&self, flat: usize) -> Point {
        let m = self.subdivisions as f64;
        match self.dimension {
            1 => Point::One(flat as f64 / m),
            _ => {
                let (i, j) = self.axis_indices(flat);
                Point::Two(i as f64 / m, j as f64 / m)
            }
        }
    }

    fn project_axis(&self, x: f64) -> usize {
        let m = self.subdivisions;
        // round() is half-up for non-negative arguments, breaking ties
        // toward the larger index
        let i = (x.clamp(0.0, 1.0) * m as f64).round() as usize;
        i.min(m)
    }

    /// Index of the nearest grid point, ties per axis broken toward the
    /// larger index. Coordinates off the domain by at most
    /// [`DOMAIN_TOLERANCE`] are clamped; beyond that the projection fails
    /// with [`Error::OutOfDomain`].
    pub fn project(&self, p: Point) -> Result<usize> {
        self.check_point_dimension(p)?;
        let check = |x: f64| -> Result<f64> {
            if !x.is_finite() || x < -DOMAIN_TOLERANCE || x > 1.0 + DOMAIN_TOLERANCE {
                Err(Error::OutOfDomain { coordinate: x })
            } else {
                Ok(x)
            }
        };
        match p {
            Point::One(x) => Ok(self.project_axis(check(x)?)),
            Point::Two(x, y) => {
                Ok(self.flat_index(self.project_axis(check(x)?), self.project_axis(check(y)?)))
            }
        }
    }

    /// Projection that clamps arbitrary finite coordinates onto the domain
    /// first. Non-finite coordinates still fail with [`Error::OutOfDomain`].
    pub fn project_clamped(&self, p: Point) -> Result<usize> {
        self.check_point_dimension(p)?;
        let check = |x: f64| -> Result<f64> {
            if x.is_finite() {
                Ok(x)
            } else {
                Err(Error::OutOfDomain { coordinate: x })
            }
        };
        match p {
            Point::One(x) => Ok(self.project_axis(check(x)?)),
            Point::Two(x, y) => {
                Ok(self.flat_index(self.project_axis(check(x)?), self.project_axis(check(y)?)))
            }
        }
    }

    fn check_point_dimension(&self, p: Point) -> Result<()> {
        if p.dimension() != self.dimension {
            return Err(Error::ShapeMismatch {
                expected: self.shape(),
                found: match p {
                    Point::One(_) => GridShape::OneDim { len: 0 },
                    Point::Two(..) => GridShape::TwoDim { side: 0 },
                },
            });
        }
        Ok(())
    }

    /// Euclidean distance between two grid points given by flat index.
    pub fn distance(&self, a: usize, b: usize) -> f64 {
        let m = self.subdivisions as f64;
        match self.dimension {
            1 => ((a as f64 - b as f64) / m).abs(),
            _ => {
                let (ai, aj) = self.axis_indices(a);
                let (bi, bj) = self.axis_indices(b);
                let dx = (ai as f64 - bi as f64) / m;
                let dy = (aj as f64 - bj as f64) / m;
                dx.hypot(dy)
            }
        }
    }
}

/// Tabulation of `φ̂ = r ∘ φ` over all grid points: entry `i` is the grid
/// index of the (clamped) projection of `φ(pᵢ)`. Map images are clamped onto
/// the unit domain before projection; builtin families such as the maple
/// leaf overflow the square slightly and the clamp absorbs that.
pub fn discretize_map(map: &AffineMap, grid: &UniformGrid) -> Result<Vec<usize>> {
    if map.dimension() != grid.dimension() {
        return Err(Error::ShapeMismatch {
            expected: grid.shape(),
            found: match map.dimension() {
                1 => GridShape::OneDim { len: 0 },
                _ => GridShape::TwoDim { side: 0 },
            },
        });
    }
    (0..grid.num_points())
        .map(|i| grid.project_clamped(map.apply(grid.point(i))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::AffineMap;

    #[test]
    fn project_nearest_point() {
        let g = UniformGrid::new(1, 1000).unwrap();
        assert_eq!(g.project(Point::One(0.2503)).unwrap(), 250);
    }

    #[test]
    fn project_half_up_tie_break() {
        let g = UniformGrid::new(1, 2).unwrap();
        // 0.25 is equidistant from 0 and 0.5; half-up picks index 1
        assert_eq!(g.project(Point::One(0.25)).unwrap(), 1);
    }

    #[test]
    fn project_endpoints_2d() {
        let g = UniformGrid::new(2, 256).unwrap();
        let idx = g.project(Point::Two(1.0, 0.0)).unwrap();
        assert_eq!(g.axis_indices(idx), (256, 0));
    }

    #[test]
    fn project_tolerance_and_out_of_domain() {
        let g = UniformGrid::new(1, 10).unwrap();
        assert_eq!(g.project(Point::One(1.0 + 1e-10)).unwrap(), 10);
        assert_eq!(g.project(Point::One(-1e-10)).unwrap(), 0);
        assert!(matches!(g.project(Point::One(1.0 + 1e-8)), Err(Error::OutOfDomain { .. })));
        assert!(matches!(g.project(Point::One(f64::NAN)), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn project_clamped_pulls_back_inside() {
        let g = UniformGrid::new(1, 10).unwrap();
        assert_eq!(g.project_clamped(Point::One(1.3)).unwrap(), 10);
        assert_eq!(g.project_clamped(Point::One(-0.2)).unwrap(), 0);
        assert!(g.project_clamped(Point::One(f64::INFINITY)).is_err());
    }

    #[test]
    fn project_is_idempotent_on_grid_points() {
        for m in [2usize, 7, 50] {
            let g = UniformGrid::new(1, m).unwrap();
            for i in 0..=m {
                assert_eq!(g.project(g.point(i)).unwrap(), i);
            }
        }
        let g = UniformGrid::new(2, 9).unwrap();
        for i in 0..g.num_points() {
            assert_eq!(g.project(g.point(i)).unwrap(), i);
        }
    }

    #[test]
    fn discretize_dyadic_map() {
        // φ(x) = (1+x)/2 on M=4: grid point 0.5 maps to 0.75 = index 3
        let g = UniformGrid::new(1, 4).unwrap();
        let t = discretize_map(&AffineMap::one_d(0.5, 0.5), &g).unwrap();
        assert_eq!(t[2], 3);

        // φ(x) = (1+x)/4 on M=10: φ(0.5) = 0.375 projects to 0.4 = index 4
        let g = UniformGrid::new(1, 10).unwrap();
        let t = discretize_map(&AffineMap::one_d(0.25, 0.25), &g).unwrap();
        assert_eq!(t[5], 4);
    }

    #[test]
    fn discretize_constant_map() {
        let g = UniformGrid::new(1, 10).unwrap();
        let t = discretize_map(&AffineMap::one_d(0.0, 0.3), &g).unwrap();
        assert!(t.iter().all(|&i| i == 3));
    }

    #[test]
    fn discretized_image_within_mesh() {
        let g = UniformGrid::new(1, 17).unwrap();
        let map = AffineMap::one_d(0.39, 0.11);
        let t = discretize_map(&map, &g).unwrap();
        for i in 0..g.num_points() {
            let exact = match map.apply(g.point(i)) {
                Point::One(x) => x,
                _ => unreachable!(),
            };
            let snapped = match g.point(t[i]) {
                Point::One(x) => x,
                _ => unreachable!(),
            };
            assert!((exact - snapped).abs() <= g.mesh() + 1e-15);
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let g = UniformGrid::new(2, 4).unwrap();
        assert!(matches!(
            discretize_map(&AffineMap::one_d(0.5, 0.0), &g),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(g.project(Point::One(0.5)).is_err());
    }

    #[test]
    fn grid_constructor_validation() {
        assert!(UniformGrid::new(3, 10).is_err());
        assert!(UniformGrid::new(1, 1).is_err());
    }
}
