//! Regions on which the null hypothesis is tested: sorted disjoint unions of
//! closed intervals.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Interval>", into = "Vec<Interval>")]
pub struct Region {
    intervals: Vec<Interval>,
}

impl Region {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::InvalidRegion("region has no intervals".into()));
        }
        for (k, iv) in intervals.iter().enumerate() {
            if !(iv.lo.is_finite() && iv.hi.is_finite()) {
                return Err(Error::InvalidRegion(format!("interval {k} is not finite")));
            }
            if !(iv.lo < iv.hi) {
                return Err(Error::InvalidRegion(format!(
                    "interval {k} has lo = {} >= hi = {}",
                    iv.lo, iv.hi
                )));
            }
        }
        for (k, pair) in intervals.windows(2).enumerate() {
            if !(pair[0].hi < pair[1].lo) {
                return Err(Error::InvalidRegion(format!(
                    "intervals {k} and {} overlap or are out of order",
                    k + 1
                )));
            }
        }
        Ok(Region { intervals })
    }

    pub fn single(lo: f64, hi: f64) -> Result<Self> {
        Region::new(alloc::vec![Interval { lo, hi }])
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn upper(&self) -> f64 {
        self.intervals[self.intervals.len() - 1].hi
    }

    /// Parses `lo:hi[,lo:hi...]`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut intervals = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            let (lo, hi) = part
                .split_once(':')
                .ok_or_else(|| Error::InvalidRegion(format!("expected lo:hi, got {part:?}")))?;
            let lo: f64 = lo
                .trim()
                .parse()
                .map_err(|_| Error::InvalidRegion(format!("bad lower endpoint in {part:?}")))?;
            let hi: f64 = hi
                .trim()
                .parse()
                .map_err(|_| Error::InvalidRegion(format!("bad upper endpoint in {part:?}")))?;
            intervals.push(Interval { lo, hi });
        }
        Region::new(intervals)
    }
}

impl TryFrom<Vec<Interval>> for Region {
    type Error = Error;

    fn try_from(v: Vec<Interval>) -> Result<Self> {
        Region::new(v)
    }
}

impl From<Region> for Vec<Interval> {
    fn from(r: Region) -> Self {
        r.intervals
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, iv) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}:{}", iv.lo, iv.hi)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parse_round_trips_through_display() {
        let r = Region::parse("0:1.5, 2:3").unwrap();
        assert_eq!(r.intervals().len(), 2);
        assert_eq!(Region::parse(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn rejects_bad_regions() {
        assert!(Region::new(Vec::new()).is_err());
        assert!(Region::single(1.0, 1.0).is_err());
        assert!(Region::parse("0:2,1:3").is_err());
        assert!(Region::parse("0-2").is_err());
        assert!(Region::parse("0:x").is_err());
    }
}
