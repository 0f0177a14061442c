//! Objective vectors, dominance and Pareto filtering.

use crate::error::{Error, Result};
use crate::rational::Rat;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Optimization direction. Everything outside the maximization module is `Min`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Min,
    Max,
}

/// A point in the objective space, nonnegative in every coordinate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectiveVector {
    coords: Vec<Rat>,
}

impl ObjectiveVector {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidInstance("zero-dimensional vector".into()));
        }
        if coords.iter().any(|c| c.is_negative()) {
            return Err(Error::InvalidInstance(
                "objective coordinates must be nonnegative".into(),
            ));
        }
        Ok(ObjectiveVector { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        ObjectiveVector::new(coords.iter().map(|&c| Rat::from_int(c)).collect())
            .expect("integer coordinates")
    }

    pub fn k(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> &Rat {
        &self.coords[i]
    }

    /// True when every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn check_dim(&self, k: usize) -> Result<()> {
        if self.k() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: self.k(),
            });
        }
        Ok(())
    }

    /// Component-wise `self <= other`.
    pub fn le(&self, other: &ObjectiveVector) -> bool {
        self.k() == other.k()
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(a, b)| a <= b)
    }

    /// Component-wise `self >= other`.
    pub fn ge(&self, other: &ObjectiveVector) -> bool {
        other.le(self)
    }

    /// Component-wise scaling by a nonnegative factor.
    pub fn scale(&self, factor: &Rat) -> ObjectiveVector {
        ObjectiveVector {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    /// Component-wise absolute difference `|self - other|`.
    pub fn abs_diff(&self, other: &ObjectiveVector) -> ObjectiveVector {
        ObjectiveVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| (a - b).abs())
                .collect(),
        }
    }

    /// Component-wise `max(self - other, 0)`.
    pub fn pos_diff(&self, other: &ObjectiveVector) -> ObjectiveVector {
        ObjectiveVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| {
                    let d = a - b;
                    if d.is_negative() {
                        Rat::zero()
                    } else {
                        d
                    }
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &ObjectiveVector) -> ObjectiveVector {
        ObjectiveVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn max_coord(&self) -> &Rat {
        self.coords.iter().max().expect("nonempty")
    }

    pub fn zero(k: usize) -> ObjectiveVector {
        ObjectiveVector {
            coords: vec![Rat::zero(); k],
        }
    }
}

impl fmt::Debug for ObjectiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for ObjectiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Strict Pareto dominance: `u` dominates `v` when `u` is at least as good
/// everywhere and not equal (better in at least one coordinate).
pub fn dominates(u: &ObjectiveVector, v: &ObjectiveVector, sense: Sense) -> bool {
    if u.k() != v.k() || u == v {
        return false;
    }
    match sense {
        Sense::Min => u.le(v),
        Sense::Max => u.ge(v),
    }
}

/// Non-dominated subset of `points`, duplicates collapsed, in lexicographic order.
pub fn pareto_filter(points: &[ObjectiveVector], sense: Sense) -> Vec<ObjectiveVector> {
    let mut unique: Vec<ObjectiveVector> = points.to_vec();
    unique.sort();
    unique.dedup();
    unique
        .iter()
        .filter(|p| !unique.iter().any(|q| dominates(q, p, sense)))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(coords: &[i64]) -> ObjectiveVector {
        ObjectiveVector::from_ints(coords)
    }

    #[test]
    fn dominance_min_max() {
        assert!(dominates(&v(&[1, 2]), &v(&[2, 2]), Sense::Min));
        assert!(!dominates(&v(&[1, 2]), &v(&[2, 1]), Sense::Min));
        assert!(!dominates(&v(&[3, 0]), &v(&[1, 1]), Sense::Max));
        assert!(!dominates(&v(&[1, 2]), &v(&[1, 2]), Sense::Min));
    }

    #[test]
    fn pareto_filter_examples() {
        let routes = vec![v(&[10, 1]), v(&[6, 6]), v(&[1, 10])];
        assert_eq!(pareto_filter(&routes, Sense::Min).len(), 3);

        let pts = vec![v(&[1, 1]), v(&[1, 2]), v(&[2, 1])];
        assert_eq!(pareto_filter(&pts, Sense::Min), vec![v(&[1, 1])]);

        let max_pts = vec![v(&[1, 1]), v(&[3, 0]), v(&[0, 3])];
        assert_eq!(pareto_filter(&max_pts, Sense::Max).len(), 3);
    }

    #[test]
    fn pareto_filter_idempotent_and_antichain() {
        let pts = vec![
            v(&[4, 4]),
            v(&[2, 5]),
            v(&[5, 2]),
            v(&[3, 3]),
            v(&[3, 3]),
            v(&[6, 1]),
        ];
        let once = pareto_filter(&pts, Sense::Min);
        let twice = pareto_filter(&once, Sense::Min);
        assert_eq!(once, twice);
        for p in &once {
            for q in &once {
                assert!(!dominates(p, q, Sense::Min));
            }
        }
    }

    #[test]
    fn rejects_negative_coordinates() {
        assert!(ObjectiveVector::new(vec![Rat::from_int(-1)]).is_err());
    }
}
