//! Circular sectors around parent-child edges and exact or conservative
//! intersection tests against points, segments and boxes.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::drawing::SquareBox;
use crate::geom::{cross, dot, Point, Rat};

/// Sector centered at a parent `apex`, bisected by the edge to `child` as
/// drawn after scaling, with radius `sqrt(len2) + sqrt(2) n` and half-angle
/// `arcsin(1 / inv_sin)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sector {
    pub apex: Point,
    pub parent: usize,
    pub child: usize,
    /// Direction of the edge, child minus parent.
    pub bisector: Point,
    /// Squared edge length.
    pub len2: BigInt,
    pub n: usize,
    /// `1 / sin(alpha)`.
    pub inv_sin: BigInt,
}

impl Sector {
    pub fn sin_alpha(&self) -> Rat {
        Rat::new(1.into(), self.inv_sin.clone())
    }

    /// Whether direction `d` lies in the closed wedge of the sector. The zero vector does.
    pub fn wedge_contains_dir(&self, d: &Point) -> bool {
        if d.x.is_zero() && d.y.is_zero() {
            return true;
        }
        if !dot(d, &self.bisector).is_positive() {
            return false;
        }
        let c = cross(&self.bisector, d);
        &c * &c * &self.inv_sin * &self.inv_sin <= d.norm2() * &self.len2
    }

    /// Whether `|d| <= sqrt(len2) + sqrt(2) n`.
    fn within_radius(&self, d: &Point) -> bool {
        let n = BigInt::from(self.n);
        let lhs = d.norm2() - &self.len2 - BigInt::from(2) * &n * &n;
        if !lhs.is_positive() {
            return true;
        }
        &lhs * &lhs <= BigInt::from(8) * &n * &n * &self.len2
    }

    /// Exact closed membership.
    pub fn contains(&self, p: &Point) -> bool {
        let d = p - &self.apex;
        self.within_radius(&d) && self.wedge_contains_dir(&d)
    }

    pub fn contains_box(&self, b: &SquareBox) -> bool {
        let two = BigInt::from(2);
        b.corners2().iter().all(|c| {
            // corners are doubled; halve exactly when possible, else test the doubled sector
            if c.x.is_even() && c.y.is_even() {
                self.contains(&Point { x: &c.x / &two, y: &c.y / &two })
            } else {
                self.doubled().contains(c)
            }
        })
    }

    fn doubled(&self) -> Sector {
        let two = BigInt::from(2);
        Sector {
            apex: self.apex.scale(&two),
            parent: self.parent,
            child: self.child,
            bisector: self.bisector.scale(&two),
            len2: &self.len2 * 4u32,
            n: self.n * 2,
            inv_sin: self.inv_sin.clone(),
        }
    }

    /// Triangle containing the sector, as integer points together with the
    /// common factor they were multiplied by.
    ///
    /// The apex is kept; the two other corners sit at `k (b +- t b_perp)` with
    /// `t = s (1 + s^2) >= tan(alpha)` and `k = 1 + 1.415 n / isqrt(len2)`, so
    /// the far side lies beyond the arc.
    pub fn outer_triangle(&self) -> ([Point; 3], BigInt) {
        let q = self.len2.sqrt().max(BigInt::from(1));
        let inv = &self.inv_sin;
        let inv3 = inv * inv * inv;
        let n = BigInt::from(self.n);
        // t = s + s^3 = (inv^2 + 1) / inv^3, k = (200 q + 283 n) / (200 q)
        let den = BigInt::from(200) * &q * &inv3;
        let kk = BigInt::from(200) * &q + BigInt::from(283) * &n;
        let along = &kk * &inv3;
        let side = &kk * (inv * inv + 1u32);
        let b = &self.bisector;
        let perp = Point { x: -&b.y, y: b.x.clone() };
        let base = self.apex.scale(&den);
        let mid = &base + &b.scale(&along);
        let off = perp.scale(&side);
        ([base, &mid + &off, &mid - &off], den)
    }

    /// Conservative test: `false` proves the closed segment misses the sector.
    pub fn may_meet_segment(&self, a: &Point, b: &Point) -> bool {
        let (tri, den) = self.outer_triangle();
        !convex_disjoint(&tri, &[a.scale(&den), b.scale(&den)])
    }

    /// Conservative test: `false` proves the closed box misses the sector.
    pub fn may_meet_box(&self, bx: &SquareBox) -> bool {
        let (tri, den) = self.outer_triangle();
        let two = BigInt::from(2);
        let tri2: Vec<Point> = tri.iter().map(|p| p.scale(&two)).collect();
        let corners: Vec<Point> = bx.corners2().iter().map(|c| c.scale(&den)).collect();
        !convex_disjoint(&tri2, &corners)
    }
}

/// Whether two closed wedges with a common apex, half-angle `arcsin(1/inv_sin)`
/// and bisectors `b1`, `b2` have disjoint interiors.
pub fn wedges_disjoint(b1: &Point, b2: &Point, inv_sin: &BigInt) -> bool {
    // angle(b1, b2) >= 2 alpha  <=>  cos <= 1 - 2 s^2
    let d = dot(b1, b2);
    if !d.is_positive() {
        return true;
    }
    let i2 = inv_sin * inv_sin;
    let c = &i2 - 2u32;
    &d * &d * &i2 * &i2 <= &c * &c * b1.norm2() * b2.norm2()
}

fn projections(poly: &[Point], axis: &Point) -> (BigInt, BigInt) {
    let mut it = poly.iter().map(|p| dot(p, axis));
    let first = it.next().expect("non-empty polygon");
    it.fold((first.clone(), first), |(lo, hi), v| (lo.min(v.clone()), hi.max(v)))
}

/// Separating-axis test for closed convex polygons given by their vertices in
/// order; a polygon may degenerate to a segment or a point.
pub fn convex_disjoint(a: &[Point], b: &[Point]) -> bool {
    let mut axes = Vec::new();
    for poly in [a, b] {
        let k = poly.len();
        if k < 2 {
            continue;
        }
        for i in 0..k {
            let d = &poly[(i + 1) % k] - &poly[i];
            if d.x.is_zero() && d.y.is_zero() {
                continue;
            }
            axes.push(Point { x: -&d.y, y: d.x.clone() });
            axes.push(d);
        }
    }
    if axes.is_empty() {
        return a[0] != b[0];
    }
    axes.iter().any(|ax| {
        let (alo, ahi) = projections(a, ax);
        let (blo, bhi) = projections(b, ax);
        ahi < blo || bhi < alo
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    fn sector() -> Sector {
        // edge of length 100 along +x, n = 1, sin(alpha) = 1/10
        Sector { apex: p(0, 0), parent: 0, child: 1, bisector: p(100, 0), len2: 10000.into(), n: 1, inv_sin: 10.into() }
    }

    #[test]
    fn membership() {
        let s = sector();
        assert!(s.contains(&p(0, 0)));
        assert!(s.contains(&p(101, 0)));
        assert!(!s.contains(&p(102, 0)));
        // tan(alpha) is about 0.1005
        assert!(s.contains(&p(100, 10)));
        assert!(!s.contains(&p(100, 11)));
        assert!(!s.contains(&p(-1, 0)));
    }

    #[test]
    fn outer_triangle_contains_sector() {
        let s = sector();
        let (tri, den) = s.outer_triangle();
        for q in [p(101, 0), p(100, 10), p(50, 5), p(0, 0)] {
            assert!(!convex_disjoint(&tri, &[q.scale(&den)]));
        }
        assert!(!s.may_meet_segment(&p(0, 30), &p(200, 30)));
        assert!(s.may_meet_segment(&p(50, -100), &p(50, 100)));
        assert!(!s.may_meet_box(&SquareBox::new(p(300, 0), 10)));
        assert!(s.may_meet_box(&SquareBox::new(p(100, 0), 2)));
    }

    #[test]
    fn wedge_disjointness() {
        let inv = BigInt::from(10);
        assert!(wedges_disjoint(&p(1, 0), &p(0, 1), &inv));
        assert!(!wedges_disjoint(&p(10, 0), &p(10, 1), &inv));
        assert!(wedges_disjoint(&p(10, 0), &p(10, 3), &inv));
    }

    #[test]
    fn separating_axis() {
        assert!(convex_disjoint(&[p(0, 0), p(1, 0)], &[p(2, 0), p(3, 0)]));
        assert!(!convex_disjoint(&[p(0, 0), p(2, 0)], &[p(2, 0), p(3, 0)]));
        assert!(!convex_disjoint(&[p(0, 0), p(4, 0), p(0, 4)], &[p(1, 1)]));
        assert!(convex_disjoint(&[p(0, 0), p(4, 0), p(0, 4)], &[p(3, 3)]));
    }
}
