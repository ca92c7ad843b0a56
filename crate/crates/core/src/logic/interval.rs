use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Q;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntervalError {
    #[error("empty interval {0}")]
    Empty(String),
}

/// Interval over the non-negative reals with natural endpoints.
///
/// `upper = None` stands for `+inf`, which is always open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub lower: u32,
    pub upper: Option<u32>,
    pub lower_closed: bool,
    pub upper_closed: bool,
}

impl Interval {
    pub fn new(
        lower: u32,
        upper: Option<u32>,
        lower_closed: bool,
        upper_closed: bool,
    ) -> Result<Self, IntervalError> {
        let upper_closed = upper_closed && upper.is_some();
        let iv = Interval {
            lower,
            upper,
            lower_closed,
            upper_closed,
        };
        let nonempty = match upper {
            None => true,
            Some(u) => lower < u || (lower == u && lower_closed && upper_closed),
        };
        if nonempty {
            Ok(iv)
        } else {
            Err(IntervalError::Empty(iv.to_string()))
        }
    }

    /// `[0, inf)`, the interval of unconstrained modalities.
    pub const fn full() -> Self {
        Interval {
            lower: 0,
            upper: None,
            lower_closed: true,
            upper_closed: false,
        }
    }

    pub fn closed(lower: u32, upper: u32) -> Self {
        Interval::new(lower, Some(upper), true, true).expect("closed interval with lower <= upper")
    }

    pub fn is_full(&self) -> bool {
        *self == Interval::full()
    }

    pub fn is_singular(&self) -> bool {
        self.upper == Some(self.lower)
    }

    pub fn is_bounded(&self) -> bool {
        self.upper.is_some()
    }

    pub fn contains(&self, d: &Q) -> bool {
        let lo = Q::from_integer(self.lower as i64);
        let lower_ok = if self.lower_closed { *d >= lo } else { *d > lo };
        let upper_ok = match self.upper {
            None => true,
            Some(u) => {
                let hi = Q::from_integer(u as i64);
                if self.upper_closed {
                    *d <= hi
                } else {
                    *d < hi
                }
            }
        };
        lower_ok && upper_ok
    }

    pub fn contains_zero(&self) -> bool {
        self.lower == 0 && self.lower_closed
    }

    /// Largest finite endpoint.
    pub fn max_constant(&self) -> u32 {
        self.upper.unwrap_or(self.lower).max(self.lower)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lower_closed { '[' } else { '(' };
        match self.upper {
            None => write!(f, "{}{},inf)", open, self.lower),
            Some(u) => {
                let close = if self.upper_closed { ']' } else { ')' };
                write!(f, "{}{},{}{}", open, self.lower, u, close)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn emptiness_rules() {
        assert!(Interval::new(1, Some(1), true, true).is_ok());
        assert!(Interval::new(1, Some(1), true, false).is_err());
        assert!(Interval::new(2, Some(1), true, true).is_err());
        let inf = Interval::new(3, None, false, true).unwrap();
        assert!(!inf.upper_closed);
    }

    #[test]
    fn membership() {
        let iv = Interval::new(2, Some(3), false, false).unwrap();
        assert!(!iv.contains(&Q::from_integer(2)));
        assert!(iv.contains(&Q::new(5, 2)));
        assert!(!iv.contains(&Q::from_integer(3)));
        assert!(Interval::full().contains(&Q::from_integer(0)));
        assert_eq!(iv.to_string(), "(2,3)");
        assert_eq!(Interval::full().to_string(), "[0,inf)");
    }
}
