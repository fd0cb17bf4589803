use serde::{Deserialize, Serialize};

use super::evaluator::{check_dim, distance};
use crate::error::{Error, Result};

/// A time-frequency point `(x, omega)` in `R^{2n}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TFPoint {
    pub x: Vec<f64>,
    pub omega: Vec<f64>,
}

impl TFPoint {
    pub fn new(x: Vec<f64>, omega: Vec<f64>) -> Result<Self> {
        if x.len() != omega.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                got: omega.len(),
            });
        }
        check_dim(x.len())?;
        Ok(Self { x, omega })
    }

    pub fn origin(dim: usize) -> Self {
        Self {
            x: vec![0.0; dim],
            omega: vec![0.0; dim],
        }
    }

    /// One-dimensional shorthand.
    pub fn scalar(x: f64, omega: f64) -> Self {
        Self {
            x: vec![x],
            omega: vec![omega],
        }
    }

    /// Splits a row `[x..., omega...]` of length `2 * dim`.
    pub fn from_row(row: &[f64], dim: usize) -> Result<Self> {
        if row.len() != 2 * dim {
            return Err(Error::DimensionMismatch {
                expected: 2 * dim,
                got: row.len(),
            });
        }
        Self::new(row[..dim].to_vec(), row[dim..].to_vec())
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// The concatenated coordinates `(x, omega)`.
    pub fn coords(&self) -> Vec<f64> {
        self.x.iter().chain(&self.omega).copied().collect()
    }

    /// Image under the Fourier transform: `(x, omega) -> (omega, -x)`.
    pub fn fourier_rotated(&self) -> Self {
        Self {
            x: self.omega.clone(),
            omega: self.x.iter().map(|v| -v).collect(),
        }
    }
}

/// A finite, duplicate-free set of time-frequency points of uniform dimension.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSet {
    points: Vec<TFPoint>,
}

impl PointSet {
    pub fn new(points: Vec<TFPoint>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyPointSet)?;
        let dim = first.dim();
        for (i, p) in points.iter().enumerate() {
            if p.dim() != dim || p.omega.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            if points[..i].iter().any(|q| q == p) {
                return Err(Error::DuplicatePoint(i));
            }
        }
        Ok(Self { points })
    }

    pub fn from_rows(rows: &[Vec<f64>], dim: usize) -> Result<Self> {
        let points = rows
            .iter()
            .map(|r| TFPoint::from_row(r, dim))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    /// One-dimensional points from `(x, omega)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(x, w)| TFPoint::scalar(x, w)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn points(&self) -> &[TFPoint] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, TFPoint> {
        self.points.iter()
    }

    pub fn times(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(|p| p.x.clone()).collect()
    }

    pub fn frequencies(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(|p| p.omega.clone()).collect()
    }

    /// The set `{(omega_i, -x_i)}`, which is not deduplicated against collisions
    /// because the map is a bijection.
    pub fn fourier_rotated(&self) -> Self {
        Self {
            points: self.points.iter().map(TFPoint::fourier_rotated).collect(),
        }
    }

    /// Shifts every time coordinate by `a`.
    pub fn shifted_in_time(&self, a: &[f64]) -> Self {
        Self {
            points: self
                .points
                .iter()
                .map(|p| TFPoint {
                    x: p.x.iter().zip(a).map(|(x, s)| x + s).collect(),
                    omega: p.omega.clone(),
                })
                .collect(),
        }
    }

    /// Minimum pairwise distance of the time coordinates (`0` when `N = 1`).
    pub fn min_time_separation(&self) -> f64 {
        min_pairwise(&self.times())
    }

    pub fn min_frequency_separation(&self) -> f64 {
        min_pairwise(&self.frequencies())
    }

    /// Minimum pairwise distance in the full time-frequency plane.
    pub fn min_tf_separation(&self) -> f64 {
        let coords: Vec<Vec<f64>> = self.points.iter().map(TFPoint::coords).collect();
        min_pairwise(&coords)
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a TFPoint;
    type IntoIter = std::slice::Iter<'a, TFPoint>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Minimum distance over unordered pairs; `0` for fewer than two points.
pub fn min_pairwise(points: &[Vec<f64>]) -> f64 {
    if points.len() < 2 {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            best = best.min(distance(&points[i], &points[j]));
        }
    }
    best
}
