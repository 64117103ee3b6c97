//! Resolution of drawings with rational coordinates and the two-step
//! snap of such a drawing onto the integer grid.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::drawing::{extent_of, planarity_violation, GridDrawing};
use crate::error::Error;
use crate::geom::{Point, Rat};
use crate::morph::{certify_step, StepCertificate};
use crate::tree::OrderedTree;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatPoint {
    pub x: Rat,
    pub y: Rat,
}

impl RatPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        RatPoint { x, y }
    }

    pub fn from_point(p: &Point) -> Self {
        RatPoint { x: Rat::from_integer(p.x.clone()), y: Rat::from_integer(p.y.clone()) }
    }

    fn dist2(&self, o: &RatPoint) -> Rat {
        let dx = &self.x - &o.x;
        let dy = &self.y - &o.y;
        &dx * &dx + &dy * &dy
    }
}

/// Drawing whose node coordinates are exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealDrawing {
    pub tree: Arc<OrderedTree>,
    pub pos: Vec<RatPoint>,
}

impl RealDrawing {
    pub fn new(tree: Arc<OrderedTree>, pos: Vec<RatPoint>) -> Result<Self, Error> {
        if pos.len() != tree.len() {
            return Err(Error::Mismatch("position count differs from node count".into()));
        }
        Ok(RealDrawing { tree, pos })
    }

    pub fn from_grid(g: &GridDrawing) -> Self {
        RealDrawing { tree: g.tree.clone(), pos: g.pos.iter().map(RatPoint::from_point).collect() }
    }
}

fn point_segment_dist2_rat(p: &RatPoint, a: &RatPoint, b: &RatPoint) -> Rat {
    let (abx, aby) = (&b.x - &a.x, &b.y - &a.y);
    let (apx, apy) = (&p.x - &a.x, &p.y - &a.y);
    let len2 = &abx * &abx + &aby * &aby;
    if len2.is_zero() {
        return p.dist2(a);
    }
    let t = &apx * &abx + &apy * &aby;
    if !t.is_positive() {
        p.dist2(a)
    } else if t >= len2 {
        p.dist2(b)
    } else {
        let c = &abx * &apy - &aby * &apx;
        &c * &c / len2
    }
}

/// Squared ratio between the largest vertex distance and the smallest distance
/// between a vertex and another vertex or a non-incident edge. `None` when the
/// smallest distance is zero; `1` for fewer than two nodes.
pub fn resolution_sq_rat(tree: &OrderedTree, pos: &[RatPoint]) -> Option<Rat> {
    let n = pos.len();
    if n < 2 {
        return Some(Rat::one());
    }
    let (min, max) = min_max_dist2(tree, pos);
    if min.is_zero() {
        None
    } else {
        Some(max / min)
    }
}

fn min_max_dist2(tree: &OrderedTree, pos: &[RatPoint]) -> (Rat, Rat) {
    let n = pos.len();
    let mut min: Option<Rat> = None;
    let mut max = Rat::zero();
    let take = |d: Rat, min: &mut Option<Rat>| {
        if min.as_ref().is_none_or(|m| d < *m) {
            *min = Some(d);
        }
    };
    for u in 0..n {
        for v in u + 1..n {
            let d = pos[u].dist2(&pos[v]);
            if d > max {
                max = d.clone();
            }
            take(d, &mut min);
        }
    }
    for (p, c) in tree.edges() {
        for u in 0..n {
            if u != p && u != c {
                take(point_segment_dist2_rat(&pos[u], &pos[p], &pos[c]), &mut min);
            }
        }
    }
    (min.unwrap_or_else(Rat::zero), max)
}

/// Squared resolution of a drawing with at least one pair of distinct objects.
pub fn drawing_resolution(g: &RealDrawing) -> Result<Rat, Error> {
    resolution_sq_rat(&g.tree, &g.pos).ok_or_else(|| Error::Precondition("two objects touch".into()))
}

pub fn grid_resolution(g: &GridDrawing) -> Result<Rat, Error> {
    drawing_resolution(&RealDrawing::from_grid(g))
}

/// Decimal expansion of `sqrt(r)` truncated to `digits` fractional digits.
pub fn sqrt_decimal(r: &Rat, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let v = (r.numer() * &scale * &scale / r.denom()).sqrt();
    let (int, frac) = v.div_rem(&scale);
    if digits == 0 {
        return alloc::format!("{int}");
    }
    let mut f = alloc::format!("{frac}");
    while f.len() < digits as usize {
        f.insert(0, '0');
    }
    alloc::format!("{int}.{f}")
}

/// Multiplies every coordinate by the lcm of all denominators.
fn clear_denominators(sets: &[&[RatPoint]]) -> Vec<Vec<Point>> {
    let mut l = BigInt::one();
    for s in sets {
        for p in s.iter() {
            l = l.lcm(p.x.denom()).lcm(p.y.denom());
        }
    }
    let lr = Rat::from_integer(l);
    sets.iter()
        .map(|s| {
            s.iter()
                .map(|p| Point { x: (&p.x * &lr).to_integer(), y: (&p.y * &lr).to_integer() })
                .collect()
        })
        .collect()
}

pub fn is_planar_rat(tree: &OrderedTree, pos: &[RatPoint]) -> bool {
    let ints = clear_denominators(&[pos]);
    planarity_violation(tree, &ints[0]).is_none()
}

/// Exact planarity certificate of a linear step between rational drawings.
/// Both endpoints must be planar.
pub fn certify_rat_step(tree: &OrderedTree, a: &[RatPoint], b: &[RatPoint]) -> StepCertificate {
    let ints = clear_denominators(&[a, b]);
    certify_step(tree, &ints[0], &ints[1], false)
}

/// The two-step morph from a rational drawing onto the grid.
#[derive(Debug, Clone)]
pub struct SnapMorph {
    pub start: RealDrawing,
    /// Uniform scaling of `start` about the origin.
    pub scaled: RealDrawing,
    pub snapped: GridDrawing,
    pub scale: Rat,
    /// Whether the scale makes the minimum distance exactly two rather than at least two.
    pub scale_exact: bool,
    pub steps: [StepCertificate; 2],
    pub max_displacement_sq: Rat,
    pub grid_side: BigInt,
}

/// Rational lower bound on `sqrt(m)` for positive rational `m`, exact when `m` is a square.
fn sqrt_lower(m: &Rat) -> (Rat, bool) {
    let (a, b) = (m.numer(), m.denom());
    let ra = a.sqrt();
    let rb = b.sqrt();
    if &ra * &ra == *a && &rb * &rb == *b {
        return (Rat::new(ra, rb), true);
    }
    let mut k = BigInt::from(1u32 << 20);
    loop {
        // sqrt(a/b) = sqrt(a b k^2) / (b k)
        let s = (a * b * &k * &k).sqrt();
        if s.is_positive() {
            return (Rat::new(s, b * &k), false);
        }
        k = &k * &k;
    }
}

/// Rounds to the nearest integer, halves toward negative infinity.
fn round_half_down(x: &Rat) -> BigInt {
    (x - Rat::new(BigInt::one(), BigInt::from(2))).ceil().to_integer()
}

/// Scales `g` so its smallest object distance is at least two, then moves
/// each node to its nearest grid point.
pub fn snap_to_grid_morph(g: &RealDrawing) -> Result<SnapMorph, Error> {
    let tree = &g.tree;
    if !is_planar_rat(tree, &g.pos) {
        return Err(Error::Precondition("input drawing is not planar".into()));
    }
    let (scale, scale_exact) = if g.pos.len() < 2 {
        (Rat::one(), true)
    } else {
        let (min, _) = min_max_dist2(tree, &g.pos);
        let (root, exact) = sqrt_lower(&min);
        (Rat::from_integer(BigInt::from(2)) / root, exact)
    };
    let scaled_pos: Vec<RatPoint> =
        g.pos.iter().map(|p| RatPoint { x: &p.x * &scale, y: &p.y * &scale }).collect();
    let snapped_pos: Vec<Point> =
        scaled_pos.iter().map(|p| Point { x: round_half_down(&p.x), y: round_half_down(&p.y) }).collect();
    let snapped_rat: Vec<RatPoint> = snapped_pos.iter().map(RatPoint::from_point).collect();
    let max_displacement_sq =
        scaled_pos.iter().zip(&snapped_rat).map(|(a, b)| a.dist2(b)).max().unwrap_or_else(Rat::zero);
    if planarity_violation(tree, &snapped_pos).is_some() {
        return Err(Error::Internal("snapped drawing is not planar".into()));
    }
    let steps = [certify_rat_step(tree, &g.pos, &scaled_pos), certify_rat_step(tree, &scaled_pos, &snapped_rat)];
    let (w, h) = extent_of(&snapped_pos);
    Ok(SnapMorph {
        start: g.clone(),
        scaled: RealDrawing { tree: tree.clone(), pos: scaled_pos },
        snapped: GridDrawing { tree: tree.clone(), pos: snapped_pos },
        scale,
        scale_exact,
        steps,
        max_displacement_sq,
        grid_side: w.max(h),
    })
}
