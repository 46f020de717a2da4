//! Partial knowledge of an integer-valued invariant.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("contradictory knowledge: {0}")]
pub struct Contradiction(pub String);

/// `Bounds` endpoints are inclusive; `None` is an infinite endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Knowledge<T> {
    Exact(T),
    Bounds { lo: Option<T>, hi: Option<T> },
    Unknown,
}

impl<T: Copy + Ord + fmt::Display> Knowledge<T> {
    pub fn at_most(hi: T) -> Self {
        Knowledge::Bounds { lo: None, hi: Some(hi) }
    }

    /// Builds bounds, collapsing to `Exact` when they pin a single value.
    pub fn bounds(lo: Option<T>, hi: Option<T>) -> Result<Self, Contradiction> {
        match (lo, hi) {
            (Some(l), Some(h)) if l > h => Err(Contradiction(format!("empty range [{l}, {h}]"))),
            (Some(l), Some(h)) if l == h => Ok(Knowledge::Exact(l)),
            (None, None) => Ok(Knowledge::Unknown),
            _ => Ok(Knowledge::Bounds { lo, hi }),
        }
    }

    pub fn exact(&self) -> Option<T> {
        match self {
            Knowledge::Exact(v) => Some(*v),
            _ => None,
        }
    }

    pub fn lower(&self) -> Option<T> {
        match self {
            Knowledge::Exact(v) => Some(*v),
            Knowledge::Bounds { lo, .. } => *lo,
            Knowledge::Unknown => None,
        }
    }

    pub fn upper(&self) -> Option<T> {
        match self {
            Knowledge::Exact(v) => Some(*v),
            Knowledge::Bounds { hi, .. } => *hi,
            Knowledge::Unknown => None,
        }
    }

    pub fn admits(&self, v: T) -> bool {
        self.lower().is_none_or(|l| l <= v) && self.upper().is_none_or(|h| v <= h)
    }

    /// Intersection of two sources of knowledge. Never widens; fails when
    /// the sources are incompatible.
    pub fn merge(&self, other: &Self) -> Result<Self, Contradiction> {
        let lo = match (self.lower(), other.lower()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let hi = match (self.upper(), other.upper()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Self::bounds(lo, hi)
            .map_err(|_| Contradiction(format!("{self} incompatible with {other}")))
    }

    pub fn map_exact(&self, f: impl Fn(T) -> T) -> Self {
        match self {
            Knowledge::Exact(v) => Knowledge::Exact(f(*v)),
            _ => Knowledge::Unknown,
        }
    }
}

impl<T: Copy + Ord + fmt::Display + std::ops::Neg<Output = T>> Knowledge<T> {
    /// Negation; bounds swap ends.
    pub fn negate(&self) -> Self {
        match self {
            Knowledge::Exact(v) => Knowledge::Exact(-*v),
            Knowledge::Bounds { lo, hi } => Knowledge::Bounds {
                lo: hi.map(|h| -h),
                hi: lo.map(|l| -l),
            },
            Knowledge::Unknown => Knowledge::Unknown,
        }
    }
}

impl<T: fmt::Display> fmt::Display for Knowledge<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Knowledge::Exact(v) => write!(f, "{v}"),
            Knowledge::Bounds { lo: None, hi: Some(h) } => write!(f, "<= {h}"),
            Knowledge::Bounds { lo: Some(l), hi: None } => write!(f, ">= {l}"),
            Knowledge::Bounds { lo, hi } => {
                let l = lo.as_ref().map_or("-inf".to_string(), |v| v.to_string());
                let h = hi.as_ref().map_or("+inf".to_string(), |v| v.to_string());
                write!(f, "[{l}, {h}]")
            }
            Knowledge::Unknown => f.write_str("unknown"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_intersects() {
        let a = Knowledge::<i64>::at_most(0);
        let b = Knowledge::at_most(-2);
        assert_eq!(a.merge(&b), Ok(Knowledge::at_most(-2)));
        assert_eq!(a.merge(&Knowledge::Unknown), Ok(a));
        assert_eq!(a.merge(&Knowledge::Exact(-4)), Ok(Knowledge::Exact(-4)));
        assert!(a.merge(&Knowledge::Exact(2)).is_err());
        assert_eq!(
            Knowledge::bounds(Some(-2), None).unwrap().merge(&b),
            Ok(Knowledge::Exact(-2))
        );
    }

    #[test]
    fn negation_swaps_bounds() {
        assert_eq!(
            Knowledge::<i64>::at_most(-2).negate(),
            Knowledge::Bounds { lo: Some(2), hi: None }
        );
        assert_eq!(Knowledge::Exact(3i64).negate(), Knowledge::Exact(-3));
    }

    #[test]
    fn display() {
        assert_eq!(Knowledge::<i64>::at_most(-2).to_string(), "<= -2");
        assert_eq!(Knowledge::Exact(1i64).to_string(), "1");
        assert_eq!(Knowledge::<i64>::Unknown.to_string(), "unknown");
    }
}
