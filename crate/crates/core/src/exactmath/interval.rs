use core::fmt;

use super::Rat;
use crate::{Error, Result};

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatInterval {
    lo: Rat,
    hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyInterval { lo: alloc::format!("{lo}"), hi: alloc::format!("{hi}") });
        }
        Ok(RatInterval { lo, hi })
    }

    pub fn point(x: Rat) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    /// `[center − radius, center + radius]`; panics on negative radius.
    pub fn around(center: &Rat, radius: &Rat) -> Self {
        assert!(!radius.is_negative(), "negative radius");
        RatInterval { lo: center - radius, hi: center + radius }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval { lo: -&self.hi, hi: -&self.lo }
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `[Σ lo, Σ hi]`; the empty sum is `[0, 0]`.
pub fn interval_sum<'a>(items: impl IntoIterator<Item = &'a RatInterval>) -> RatInterval {
    items.into_iter().fold(RatInterval::point(Rat::zero()), |acc, x| acc.add(x))
}

/// True iff every `x` in `interval` has `|x| > t`.
pub fn certified_abs_exceeds(interval: &RatInterval, t: &Rat) -> bool {
    debug_assert!(!t.is_negative());
    interval.lo() > t || interval.hi() < &-t
}
