use std::fmt;
use std::ops::{Add, Mul};

use serde::Serialize;

/// A nonnegative count that saturates at `2^63 - 1` and remembers doing so.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Count {
    pub value: u64,
    pub saturated: bool,
}

impl Count {
    pub const CAP: u64 = i64::MAX as u64;
    pub const ZERO: Count = Count::exact(0);
    pub const ONE: Count = Count::exact(1);

    pub const fn exact(value: u64) -> Self {
        Count {
            value,
            saturated: false,
        }
    }

    fn clamp(value: Option<u64>, saturated: bool) -> Self {
        match value {
            Some(v) if v <= Self::CAP => Count {
                value: v,
                saturated,
            },
            _ => Count {
                value: Self::CAP,
                saturated: true,
            },
        }
    }

    /// True iff the count is known to be exactly one.
    pub fn is_unique(self) -> bool {
        self.value == 1 && !self.saturated
    }
}

impl Add for Count {
    type Output = Count;

    fn add(self, rhs: Count) -> Count {
        Count::clamp(
            self.value.checked_add(rhs.value),
            self.saturated || rhs.saturated,
        )
    }
}

impl Mul for Count {
    type Output = Count;

    fn mul(self, rhs: Count) -> Count {
        if self.value == 0 || rhs.value == 0 {
            // a saturated factor is still at least 2^63 - 1, never zero
            return Count::ZERO;
        }
        Count::clamp(
            self.value.checked_mul(rhs.value),
            self.saturated || rhs.saturated,
        )
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.saturated {
            write!(f, ">={}", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}
