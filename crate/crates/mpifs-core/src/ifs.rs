//! Countable families of contractive affine maps with normalized weights,
//! and their finite truncations.
//!
//! A system is a family `φ_j : [0,1]^d → [0,1]^d` (j = 1, 2, …) with a
//! uniform contraction rate γ < 1 and weights `q_j ≤ 0` whose supremum is 0.
//! Truncating to the first `n` maps and re-normalizing the weights by
//! `α_n = max_{j≤n} q_j` yields a finite system whose largest weight is
//! exactly 0.
//!
//! Three families from the literature are built in; anything else is
//! supplied as an explicit finite list. Builtin maple-leaf branches overflow
//! the unit square slightly (by less than 0.1); discretization clamps their
//! images back onto the grid, so the corner-containment check is enforced
//! only for explicit user systems.

use crate::error::{Error, Result};
use crate::grid::Point;

/// Contractive affine self-map of the unit segment or unit square.
#[derive(Debug, Clone, PartialEq)]
pub enum AffineMap {
    /// `x ↦ slope·x + offset`
    One { slope: f64, offset: f64 },
    /// `x ↦ linear·x + offset`
    Two { linear: [[f64; 2]; 2], offset: [f64; 2] },
}

impl AffineMap {
    pub fn one_d(slope: f64, offset: f64) -> Self {
        AffineMap::One { slope, offset }
    }

    pub fn two_d(linear: [[f64; 2]; 2], offset: [f64; 2]) -> Self {
        AffineMap::Two { linear, offset }
    }

    pub fn dimension(&self) -> usize {
        match self {
            AffineMap::One { .. } => 1,
            AffineMap::Two { .. } => 2,
        }
    }

    pub fn apply(&self, p: Point) -> Point {
        match (self, p) {
            (AffineMap::One { slope, offset }, Point::One(x)) => Point::One(slope * x + offset),
            (AffineMap::Two { linear, offset }, Point::Two(x, y)) => Point::Two(
                linear[0][0] * x + linear[0][1] * y + offset[0],
                linear[1][0] * x + linear[1][1] * y + offset[1],
            ),
            _ => panic!("affine map applied to point of wrong dimension"),
        }
    }

    /// Lipschitz constant: |slope| in 1D, the spectral norm (largest singular
    /// value) of the linear part in 2D.
    pub fn lipschitz(&self) -> f64 {
        match self {
            AffineMap::One { slope, .. } => slope.abs(),
            AffineMap::Two { linear: a, .. } => {
                let s = a[0][0] * a[0][0]
                    + a[0][1] * a[0][1]
                    + a[1][0] * a[1][0]
                    + a[1][1] * a[1][1];
                let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
                let disc = (s * s - 4.0 * det * det).max(0.0);
                ((s + disc.sqrt()) / 2.0).sqrt()
            }
        }
    }

    fn corners(&self) -> Vec<Point> {
        match self.dimension() {
            1 => vec![Point::One(0.0), Point::One(1.0)],
            _ => vec![
                Point::Two(0.0, 0.0),
                Point::Two(1.0, 0.0),
                Point::Two(0.0, 1.0),
                Point::Two(1.0, 1.0),
            ],
        }
    }

    /// Corner check that the image of `[0,1]^d` stays inside `[0,1]^d`
    /// within `slack` (an affine map sends the cube into the convex hull of
    /// its corner images).
    pub fn maps_unit_into_itself(&self, slack: f64) -> bool {
        self.corners().iter().all(|&c| match self.apply(c) {
            Point::One(x) => x >= -slack && x <= 1.0 + slack,
            Point::Two(x, y) => {
                x >= -slack && x <= 1.0 + slack && y >= -slack && y <= 1.0 + slack
            }
        })
    }
}

/// Named builtin weight families, or an explicit finite list.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightFamily {
    /// `q_j = −(j−1)²`
    NegSquare,
    /// `q_j = −1/2^j`
    NegGeometric,
    Explicit(Vec<f64>),
}

impl WeightFamily {
    fn weight_at(&self, j: usize) -> Option<f64> {
        match self {
            WeightFamily::NegSquare => {
                let d = (j - 1) as f64;
                Some(-(d * d))
            }
            WeightFamily::NegGeometric => Some(-0.5f64.powi(j as i32)),
            WeightFamily::Explicit(list) => list.get(j - 1).copied(),
        }
    }

    fn len(&self) -> Option<usize> {
        match self {
            WeightFamily::Explicit(list) => Some(list.len()),
            _ => None,
        }
    }

    fn validate(&self) -> Result<()> {
        if let WeightFamily::Explicit(list) = self {
            if list.is_empty() {
                return Err(Error::invalid("explicit weight list is empty"));
            }
            for (i, &q) in list.iter().enumerate() {
                if q.is_nan() || q > 0.0 {
                    return Err(Error::invalid(format!(
                        "weight {q} at position {} is outside [-inf, 0]",
                        i + 1
                    )));
                }
            }
            let max = list.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if max != 0.0 {
                return Err(Error::invalid(format!(
                    "explicit weights must be normalized (max weight is {max}, not 0)"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum MapFamily {
    DyadicShift1D,
    Checker2D,
    MapleLeaf2D,
    Explicit(Vec<AffineMap>),
}

impl MapFamily {
    fn dimension(&self) -> usize {
        match self {
            MapFamily::DyadicShift1D => 1,
            MapFamily::Checker2D | MapFamily::MapleLeaf2D => 2,
            MapFamily::Explicit(maps) => maps[0].dimension(),
        }
    }

    fn len(&self) -> Option<usize> {
        match self {
            MapFamily::Explicit(maps) => Some(maps.len()),
            _ => None,
        }
    }

    fn map_at(&self, j: usize) -> Option<AffineMap> {
        match self {
            // φ_j(x) = (1 + x) / 2^j
            MapFamily::DyadicShift1D => {
                let s = 0.5f64.powi(j as i32);
                Some(AffineMap::one_d(s, s))
            }
            // the four quadrant maps of the unit square, cycled mod 4
            MapFamily::Checker2D => {
                let half = [[0.5, 0.0], [0.0, 0.5]];
                Some(match j % 4 {
                    0 => AffineMap::two_d(half, [0.0, 0.0]),
                    1 => AffineMap::two_d(half, [0.5, 0.0]),
                    2 => AffineMap::two_d(half, [0.0, 0.5]),
                    _ => AffineMap::two_d(half, [0.5, 0.5]),
                })
            }
            MapFamily::MapleLeaf2D => Some(match j {
                1 => AffineMap::two_d([[0.008, 0.0], [0.0, 0.008]], [0.1, 0.04]),
                2 => AffineMap::two_d([[0.5, 0.0], [0.0, 0.5]], [0.25, 0.4]),
                3 => AffineMap::two_d([[0.355, -0.355], [0.355, 0.355]], [0.266, 0.078]),
                _ => {
                    let drift = 1.0 - 1.0 / j as f64;
                    AffineMap::two_d(
                        [[0.355, 0.355], [-0.355, 0.355]],
                        [0.378 * drift, 0.434 * drift],
                    )
                }
            }),
            MapFamily::Explicit(maps) => maps.get(j - 1).cloned(),
        }
    }

    fn gamma(&self) -> f64 {
        match self {
            MapFamily::DyadicShift1D => 0.5,
            MapFamily::Checker2D => 0.5,
            // rotation-scaling branches dominate: √(0.355² + 0.355²)
            MapFamily::MapleLeaf2D => (2.0 * 0.355 * 0.355).sqrt(),
            MapFamily::Explicit(maps) => {
                maps.iter().map(AffineMap::lipschitz).fold(0.0, f64::max)
            }
        }
    }
}

/// A countable (or explicit finite) family of maps and weights with a
/// uniform contraction rate.
#[derive(Debug, Clone, PartialEq)]
pub struct CountableSystem {
    maps: MapFamily,
    weights: WeightFamily,
    gamma: f64,
}

/// Builds one of the builtin map families by name:
/// `dyadic-shift-1d`, `checker-2d` or `maple-leaf-2d`.
pub fn builtin_family(name: &str, weights: WeightFamily) -> Result<CountableSystem> {
    let maps = match name {
        "dyadic-shift-1d" => MapFamily::DyadicShift1D,
        "checker-2d" => MapFamily::Checker2D,
        "maple-leaf-2d" => MapFamily::MapleLeaf2D,
        _ => return Err(Error::UnknownFamily { name: name.to_string() }),
    };
    weights.validate()?;
    let gamma = maps.gamma();
    Ok(CountableSystem { maps, weights, gamma })
}

impl CountableSystem {
    /// Explicit finite system. Every map must be contractive, share one
    /// dimension and send the unit domain into itself (corner check with the
    /// projection tolerance as slack).
    pub fn explicit(maps: Vec<AffineMap>, weights: WeightFamily) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::invalid("explicit map list is empty"));
        }
        let dim = maps[0].dimension();
        for (i, map) in maps.iter().enumerate() {
            if map.dimension() != dim {
                return Err(Error::invalid(format!(
                    "map {} has dimension {} but map 1 has dimension {dim}",
                    i + 1,
                    map.dimension()
                )));
            }
            let lip = map.lipschitz();
            if !(lip < 1.0) {
                return Err(Error::NotContractive { lipschitz: lip });
            }
            if !map.maps_unit_into_itself(crate::grid::DOMAIN_TOLERANCE) {
                return Err(Error::invalid(format!(
                    "map {} does not send the unit domain into itself",
                    i + 1
                )));
            }
        }
        weights.validate()?;
        let family = MapFamily::Explicit(maps);
        let gamma = family.gamma();
        Ok(CountableSystem { maps: family, weights, gamma })
    }

    pub fn dimension(&self) -> usize {
        self.maps.dimension()
    }

    /// The uniform contraction rate γ = sup_j Lip(φ_j).
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// The j-th map (1-based); `None` past the end of an explicit list.
    pub fn map_at(&self, j: usize) -> Option<AffineMap> {
        self.maps.map_at(j)
    }

    /// The j-th raw weight (1-based).
    pub fn weight_at(&self, j: usize) -> Option<f64> {
        self.weights.weight_at(j)
    }

    /// Truncation to the first `n` maps with weights re-normalized by
    /// `α_n = max_{j≤n} q_j`, so the largest truncated weight is exactly 0.
    pub fn partial(&self, n: usize) -> Result<PartialSystem> {
        if n < 1 {
            return Err(Error::InvalidTruncation { n, available: None });
        }
        let available = self.maps.len().into_iter().chain(self.weights.len()).min();
        if let Some(a) = available {
            if n > a {
                return Err(Error::InvalidTruncation { n, available: Some(a) });
            }
        }
        let maps: Vec<AffineMap> = (1..=n).map(|j| self.maps.map_at(j).unwrap()).collect();
        let raw_weights: Vec<f64> = (1..=n).map(|j| self.weights.weight_at(j).unwrap()).collect();
        let alpha = raw_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let weights = raw_weights.iter().map(|&q| q - alpha).collect();
        Ok(PartialSystem {
            dimension: self.dimension(),
            truncation: n,
            maps,
            raw_weights,
            alpha,
            weights,
            gamma: self.gamma,
        })
    }
}

/// A finite normalized system: the first `n` maps of a countable family with
/// weights shifted so that `max_j q̃_j = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSystem {
    dimension: usize,
    truncation: usize,
    maps: Vec<AffineMap>,
    raw_weights: Vec<f64>,
    alpha: f64,
    weights: Vec<f64>,
    gamma: f64,
}

impl PartialSystem {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn maps(&self) -> &[AffineMap] {
        &self.maps
    }

    /// Normalized weights `q̃_j = q_j − α_n`; at least one entry is exactly 0.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// The weights of the countable family before normalization.
    pub fn raw_weights(&self) -> &[f64] {
        &self.raw_weights
    }

    /// `α_n = max_{j≤n} q_j`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// Resolution bound `δ = 2ε/(1−γ)` achieved by iterating a discretized
/// γ-contractive system on an ε-net.
pub fn resolution_delta(gamma: f64, epsilon: f64) -> Result<f64> {
    if gamma >= 1.0 {
        return Err(Error::NotContractive { lipschitz: gamma });
    }
    if !(gamma >= 0.0) || !(epsilon > 0.0) {
        return Err(Error::invalid(format!(
            "resolution needs 0 <= gamma < 1 and epsilon > 0, got gamma={gamma}, epsilon={epsilon}"
        )));
    }
    Ok(2.0 * epsilon / (1.0 - gamma))
}
