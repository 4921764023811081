use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported sensor position (in units of the base spacing).
pub const MAX_POSITION: i64 = 1 << 31;

/// Physical array: strictly increasing, non-negative integer sensor positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct SensorArray {
    positions: Vec<i64>,
}

impl SensorArray {
    /// Validates an already sorted position list.
    pub fn new(positions: Vec<i64>) -> Result<Self> {
        for &p in &positions {
            check_position(p)?;
        }
        for w in positions.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::NotStrictlyIncreasing { prev: w[0], next: w[1] });
            }
        }
        Ok(Self { positions })
    }

    /// Builds an array from any collection of positions, sorting and removing duplicates.
    pub fn from_positions<I: IntoIterator<Item = i64>>(positions: I) -> Result<Self> {
        let mut positions: Vec<i64> = positions.into_iter().collect();
        for &p in &positions {
            check_position(p)?;
        }
        positions.sort_unstable();
        positions.dedup();
        Ok(Self { positions })
    }

    pub fn positions(&self) -> &[i64] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn min(&self) -> Option<i64> {
        self.positions.first().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.positions.last().copied()
    }

    /// `max - min`, zero for an empty array.
    pub fn aperture(&self) -> i64 {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.min() == Some(0)
    }

    pub fn contains(&self, position: i64) -> bool {
        self.positions.binary_search(&position).is_ok()
    }

    /// Translates the array so that its first sensor sits at 0.
    pub fn normalized(&self) -> Self {
        match self.min() {
            Some(lo) => Self { positions: self.positions.iter().map(|p| p - lo).collect() },
            None => self.clone(),
        }
    }

    pub fn shifted(&self, offset: i64) -> Result<Self> {
        Self::new(self.positions.iter().map(|p| p + offset).collect())
    }

    /// `max - D + shift`, the shifted mirror image.
    pub fn mirrored(&self, shift: i64) -> Result<Self> {
        let Some(hi) = self.max() else {
            return Ok(self.clone());
        };
        Self::from_positions(self.positions.iter().map(|p| hi - p + shift))
    }

    pub fn union(&self, other: &SensorArray) -> Self {
        let mut positions = Vec::with_capacity(self.len() + other.len());
        let (a, b) = (&self.positions, &other.positions);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    positions.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    positions.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    positions.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        positions.extend_from_slice(&a[i..]);
        positions.extend_from_slice(&b[j..]);
        Self { positions }
    }
}

fn check_position(p: i64) -> Result<()> {
    if p < 0 {
        Err(Error::NegativePosition(p))
    } else if p > MAX_POSITION {
        Err(Error::PositionOutOfRange(p))
    } else {
        Ok(())
    }
}

impl TryFrom<Vec<i64>> for SensorArray {
    type Error = Error;

    fn try_from(positions: Vec<i64>) -> Result<Self> {
        Self::new(positions)
    }
}

impl From<SensorArray> for Vec<i64> {
    fn from(array: SensorArray) -> Self {
        array.positions
    }
}

impl fmt::Display for SensorArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.positions.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsorted_and_negative() {
        assert!(matches!(SensorArray::new(vec![0, 2, 1]), Err(Error::NotStrictlyIncreasing { prev: 2, next: 1 })));
        assert!(matches!(SensorArray::new(vec![0, 0]), Err(Error::NotStrictlyIncreasing { .. })));
        assert_eq!(SensorArray::new(vec![-1, 0]), Err(Error::NegativePosition(-1)));
        assert_eq!(SensorArray::new(vec![0, MAX_POSITION + 1]), Err(Error::PositionOutOfRange(MAX_POSITION + 1)));
    }

    #[test]
    fn union_and_mirror() {
        let a = SensorArray::new(vec![0, 1, 3]).unwrap();
        let m = a.mirrored(2).unwrap();
        assert_eq!(m.positions(), &[2, 4, 5]);
        assert_eq!(a.union(&m).positions(), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(a.to_string(), "{0,1,3}");
    }

    #[test]
    fn serde_rejects_invalid() {
        let err = SensorArray::try_from(vec![3, 1]);
        assert!(err.is_err());
        let ok = SensorArray::from_positions([5, 1, 1, 0]).unwrap();
        assert_eq!(ok.positions(), &[0, 1, 5]);
        assert_eq!(ok.aperture(), 5);
        assert_eq!(ok.normalized(), ok);
        assert_eq!(ok.shifted(2).unwrap().normalized(), ok);
    }
}
