//! Exact integer geometry primitives.

use core::cmp::Ordering;
use core::ops::{Add, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::Error;

pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: BigInt,
    pub y: BigInt,
}

impl Point {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Point { x: x.into(), y: y.into() }
    }

    pub fn origin() -> Self {
        Point::new(0, 0)
    }

    pub fn scale(&self, k: &BigInt) -> Point {
        Point { x: &self.x * k, y: &self.y * k }
    }

    /// Counter-clockwise rotation by `quarters` quarter turns about the origin.
    pub fn rotate_quarters(&self, quarters: u8) -> Point {
        match quarters % 4 {
            0 => self.clone(),
            1 => Point { x: -&self.y, y: self.x.clone() },
            2 => Point { x: -&self.x, y: -&self.y },
            _ => Point { x: self.y.clone(), y: -&self.x },
        }
    }

    pub fn norm2(&self) -> BigInt {
        &self.x * &self.x + &self.y * &self.y
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, o: &Point) -> Point {
        Point { x: &self.x + &o.x, y: &self.y + &o.y }
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, o: &Point) -> Point {
        Point { x: &self.x - &o.x, y: &self.y - &o.y }
    }
}

pub fn cross(a: &Point, b: &Point) -> BigInt {
    &a.x * &b.y - &a.y * &b.x
}

pub fn dot(a: &Point, b: &Point) -> BigInt {
    &a.x * &b.x + &a.y * &b.y
}

/// Sign of the turn `a -> b -> c`: positive for counter-clockwise.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    cross(&(b - a), &(c - a)).cmp(&BigInt::zero())
}

/// Whether `p` lies on the closed segment `ab`.
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    if orient(a, b, p) != Ordering::Equal {
        return false;
    }
    let d = dot(&(p - a), &(b - a));
    d >= BigInt::zero() && d <= (b - a).norm2()
}

/// Whether the open segments `ab` and `cd` cross at a single interior point.
pub fn segments_cross_properly(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    o1 != Ordering::Equal
        && o2 != Ordering::Equal
        && o3 != Ordering::Equal
        && o4 != Ordering::Equal
        && o1 != o2
        && o3 != o4
}

/// Whether the closed segments `ab` and `cd` share a point.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    segments_cross_properly(a, b, c, d)
        || on_segment(a, c, d)
        || on_segment(b, c, d)
        || on_segment(c, a, b)
        || on_segment(d, a, b)
}

/// Squared distance from `p` to the line through `a` and `b`, as an exact rational.
pub fn point_line_distance_exact(p: &Point, a: &Point, b: &Point) -> Result<Rat, Error> {
    if a == b {
        return Err(Error::Precondition("line through coincident points".into()));
    }
    let num = cross(&(b - a), &(p - a));
    Ok(Rat::new(&num * &num, (b - a).norm2()))
}

/// Squared distance from `p` to the closed segment `ab`.
pub fn point_segment_dist2(p: &Point, a: &Point, b: &Point) -> Rat {
    let ab = b - a;
    let len2 = ab.norm2();
    if len2.is_zero() {
        return Rat::from_integer((p - a).norm2());
    }
    let t = dot(&(p - a), &ab);
    if t <= BigInt::zero() {
        Rat::from_integer((p - a).norm2())
    } else if t >= len2 {
        Rat::from_integer((p - b).norm2())
    } else {
        let c = cross(&ab, &(p - a));
        Rat::new(&c * &c, len2)
    }
}

/// Compares direction angles of non-zero vectors in `[0, 2*pi)`, measured
/// counter-clockwise from the positive x axis.
pub fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    fn half(p: &Point) -> u8 {
        // 0 for angles in [0, pi), 1 for [pi, 2pi)
        if p.y.is_positive() || (p.y.is_zero() && p.x.is_positive()) {
            0
        } else {
            1
        }
    }
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    // a before b when b is counter-clockwise of a
    BigInt::zero().cmp(&cross(a, b))
}

/// Compares directions by their counter-clockwise angle measured from `start`.
pub fn angle_cmp_from(start: &Point, a: &Point, b: &Point) -> Ordering {
    let frame = |v: &Point| Point { x: dot(v, start), y: cross(start, v) };
    angle_cmp(&frame(a), &frame(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn line_distance_examples() {
        let one = Rat::from_integer(1.into());
        assert_eq!(point_line_distance_exact(&p(0, 0), &p(0, 1), &p(1, 1)).unwrap(), one);
        assert_eq!(
            point_line_distance_exact(&p(0, 0), &p(1, 0), &p(0, 1)).unwrap(),
            Rat::new(1.into(), 2.into())
        );
        assert!(point_line_distance_exact(&p(0, 0), &p(1, 1), &p(1, 1)).is_err());
    }

    #[test]
    fn segment_predicates() {
        assert!(segments_cross_properly(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)));
        assert!(!segments_cross_properly(&p(0, 0), &p(2, 2), &p(1, 1), &p(3, 0)));
        assert!(segments_intersect(&p(0, 0), &p(2, 2), &p(1, 1), &p(3, 0)));
        assert!(on_segment(&p(1, 1), &p(0, 0), &p(2, 2)));
        assert!(!on_segment(&p(3, 3), &p(0, 0), &p(2, 2)));
    }

    #[test]
    fn angles_sort_counter_clockwise() {
        let mut v = alloc::vec![p(0, -1), p(-1, 0), p(1, 0), p(0, 1), p(1, 1)];
        v.sort_by(angle_cmp);
        assert_eq!(v, alloc::vec![p(1, 0), p(1, 1), p(0, 1), p(-1, 0), p(0, -1)]);
        assert_eq!(angle_cmp_from(&p(0, 1), &p(1, 0), &p(-1, 0)), Ordering::Greater);
    }

    #[test]
    fn rotation_quarters() {
        assert_eq!(p(1, -1).rotate_quarters(1), p(1, 1));
        assert_eq!(p(3, 5).rotate_quarters(4), p(3, 5));
    }
}
