use std::fmt;

use serde::{Serialize, Serializer};

/// Value of φ or β as far as a computation could determine it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    Finite(u32),
    Infinite,
    /// Nothing found up to and including this bound.
    GreaterThan(u32),
}

impl Level {
    pub fn is(self, i: u32) -> bool {
        self == Level::Finite(i)
    }

    /// `true` when the value is known to be at least `i`.
    pub fn at_least(self, i: u32) -> bool {
        match self {
            Level::Finite(v) => v >= i,
            Level::Infinite => true,
            Level::GreaterThan(b) => b + 1 >= i,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(v) => write!(f, "{v}"),
            Level::Infinite => write!(f, "inf"),
            Level::GreaterThan(b) => write!(f, ">{b}"),
        }
    }
}

/// Finite values serialize as JSON numbers, the markers as `"inf"` and `">c"`.
impl Serialize for Level {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Level::Finite(v) => s.serialize_u32(*v),
            other => s.collect_str(other),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_forms() {
        assert_eq!(serde_json::to_string(&Level::Finite(2)).unwrap(), "2");
        assert_eq!(serde_json::to_string(&Level::Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&Level::GreaterThan(3)).unwrap(), "\">3\"");
    }

    #[test]
    fn lower_bounds() {
        assert!(Level::GreaterThan(1).at_least(2));
        assert!(!Level::GreaterThan(1).at_least(3));
        assert!(Level::Infinite.at_least(100));
        assert!(!Level::Finite(1).at_least(2));
    }
}
