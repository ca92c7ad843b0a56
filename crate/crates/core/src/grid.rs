//! Region grid shared by plant analysis and the region abstraction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Q;

/// Region of a single clock value on the grid `1/den` up to `max_num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Region {
    /// Exactly `n/den`.
    Point(i64),
    /// Strictly between `n/den` and `(n+1)/den`.
    Open(i64),
    /// Strictly above the grid maximum.
    Above,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grid {
    pub den: i64,
    pub max_num: i64,
}

impl Grid {
    pub fn new(den: i64, max_num: i64) -> Grid {
        assert!(den >= 1 && max_num >= 0, "grid needs den >= 1 and max >= 0");
        Grid { den, max_num }
    }

    pub fn max(&self) -> Q {
        Q::new(self.max_num, self.den)
    }

    pub fn region(&self, v: &Q) -> Region {
        let scaled = *v * Q::from_integer(self.den);
        let fl = scaled.floor().to_integer();
        if scaled > Q::from_integer(self.max_num) {
            Region::Above
        } else if scaled.is_integer() {
            Region::Point(fl)
        } else {
            Region::Open(fl)
        }
    }

    /// Regions in increasing order.
    pub fn all_regions(&self) -> Vec<Region> {
        let mut v = Vec::with_capacity(2 * self.max_num as usize + 2);
        for a in 0..self.max_num {
            v.push(Region::Point(a));
            v.push(Region::Open(a));
        }
        v.push(Region::Point(self.max_num));
        v.push(Region::Above);
        v
    }

    /// Fractional part of `den * v`, or `None` in the unbounded region.
    fn frac(&self, v: &Q) -> Option<Q> {
        if self.region(v) == Region::Above {
            return None;
        }
        let s = *v * Q::from_integer(self.den);
        Some(s - s.floor())
    }

    /// Region of each value plus its fractional class: 0 for integer-grid and unbounded
    /// values, then `1..=p` by increasing fractional part. Returns `p` too.
    pub fn classify(&self, values: &[Q]) -> (Vec<Region>, Vec<usize>, usize) {
        let fracs: Vec<Option<Q>> = values.iter().map(|v| self.frac(v)).collect();
        let mut distinct: Vec<Q> = fracs.iter().flatten().filter(|f| **f != Q::from_integer(0)).copied().collect();
        distinct.sort();
        distinct.dedup();
        let classes = fracs
            .iter()
            .map(|f| match f {
                Some(f) if *f != Q::from_integer(0) => distinct.binary_search(f).unwrap() + 1,
                _ => 0,
            })
            .collect();
        (values.iter().map(|v| self.region(v)).collect(), classes, distinct.len())
    }

    /// Canonical value for `region` in fractional class `class` of `classes`.
    pub fn representative(&self, region: Region, class: usize, classes: usize) -> Q {
        match region {
            Region::Point(a) => Q::new(a, self.den),
            Region::Open(a) => (Q::from_integer(a) + Q::new(class as i64, classes as i64 + 1)) / Q::from_integer(self.den),
            Region::Above => self.max() + 1,
        }
    }

    /// Replaces every value by the canonical value of its region and class.
    pub fn canonicalise(&self, values: &[Q]) -> Vec<Q> {
        let (regions, classes, p) = self.classify(values);
        regions.iter().zip(&classes).map(|(r, c)| self.representative(*r, *c, p)).collect()
    }

    /// One delay per region class of the time successors of `values`: 0, every delay at
    /// which some value hits a grid point, a midpoint between consecutive such delays and
    /// one delay past the last.
    pub fn delay_classes(&self, values: &[Q]) -> Vec<Q> {
        let zero = Q::from_integer(0);
        let mut crit = vec![zero];
        for v in values {
            let s = *v * Q::from_integer(self.den);
            let mut n = s.ceil().to_integer();
            while n <= self.max_num {
                crit.push(Q::from_integer(n) / Q::from_integer(self.den) - *v);
                n += 1;
            }
        }
        crit.sort();
        crit.dedup();
        let mut out = Vec::with_capacity(2 * crit.len());
        for w in crit.windows(2) {
            out.push(w[0]);
            out.push((w[0] + w[1]) / Q::from_integer(2));
        }
        let last = *crit.last().unwrap();
        out.push(last);
        out.push(last + Q::new(1, 2 * self.den));
        out
    }

    pub fn contains(&self, region: Region, v: &Q) -> bool {
        self.region(v) == region
    }
}

impl Region {
    /// Bounds of the region as `(lower, lower_closed, upper, upper_closed)` on `grid`.
    pub fn bounds(&self, grid: &Grid) -> (Q, bool, Option<Q>, bool) {
        match *self {
            Region::Point(a) => (Q::new(a, grid.den), true, Some(Q::new(a, grid.den)), true),
            Region::Open(a) => (Q::new(a, grid.den), false, Some(Q::new(a + 1, grid.den)), false),
            Region::Above => (grid.max(), false, None, false),
        }
    }

    /// Region reached from `self` on a coarser grid `coarse`, `self` being on `fine`.
    pub fn coarsen(&self, fine: &Grid, coarse: &Grid) -> Region {
        let (lo, lo_closed, hi, _) = self.bounds(fine);
        let probe = match (lo_closed, hi) {
            (true, _) => lo,
            (false, Some(h)) => (lo + h) / Q::from_integer(2),
            (false, None) => lo + 1,
        };
        coarse.region(&probe)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Point(a) => write!(f, "={a}"),
            Region::Open(a) => write!(f, "({a},{})", a + 1),
            Region::Above => write!(f, ">max"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regions_and_classes() {
        let g = Grid::new(1, 1);
        let vals = [Q::new(1, 10), Q::new(3, 10), Q::from_integer(0), Q::from_integer(2), Q::new(13, 10)];
        let (regs, classes, p) = g.classify(&vals);
        assert_eq!(regs, vec![Region::Open(0), Region::Open(0), Region::Point(0), Region::Above, Region::Above]);
        assert_eq!(classes, vec![1, 2, 0, 0, 0]);
        assert_eq!(p, 2);
        assert_eq!(g.canonicalise(&vals), vec![Q::new(1, 3), Q::new(2, 3), Q::from_integer(0), Q::from_integer(2), Q::from_integer(2)]);
        assert_eq!(g.all_regions().len(), 4);
    }

    #[test]
    fn delay_classes_cover_each_region_once() {
        let g = Grid::new(1, 1);
        let d = g.delay_classes(&[Q::new(3, 10)]);
        let seen: Vec<Region> = d.iter().map(|t| g.region(&(Q::new(3, 10) + *t))).collect();
        assert_eq!(seen, vec![Region::Open(0), Region::Open(0), Region::Point(1), Region::Above]);
        assert_eq!(d[0], Q::from_integer(0));
    }

    #[test]
    fn coarsening() {
        let fine = Grid::new(2, 6);
        let coarse = Grid::new(1, 2);
        assert_eq!(Region::Point(2).coarsen(&fine, &coarse), Region::Point(1));
        assert_eq!(Region::Open(3).coarsen(&fine, &coarse), Region::Open(1));
        assert_eq!(Region::Point(5).coarsen(&fine, &coarse), Region::Above);
        assert_eq!(Region::Above.coarsen(&fine, &coarse), Region::Above);
    }
}
