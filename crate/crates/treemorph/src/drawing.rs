//! Grid drawings of ordered trees, drawing-standard checks and canonical drawings.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::geom::{angle_cmp, angle_cmp_from, on_segment, segments_cross_properly, Point, Rat};
use crate::tree::{rightmost_leaf, OrderedTree};

/// Node positions of a tree on the integer grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridDrawing {
    pub tree: Arc<OrderedTree>,
    pub pos: Vec<Point>,
}

/// Orientation of a canonical drawing; each is a quarter turn of the previous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Upward,
    Leftward,
    Downward,
    Rightward,
}

impl Orientation {
    /// Counter-clockwise quarter turns from `Upward`.
    pub fn quarters(self) -> u8 {
        match self {
            Orientation::Upward => 0,
            Orientation::Leftward => 1,
            Orientation::Downward => 2,
            Orientation::Rightward => 3,
        }
    }

    pub fn from_quarters(q: u8) -> Self {
        match q % 4 {
            0 => Orientation::Upward,
            1 => Orientation::Leftward,
            2 => Orientation::Downward,
            _ => Orientation::Rightward,
        }
    }

    /// The orientation after rotating the drawing by `q` quarter turns.
    pub fn turned(self, q: u8) -> Self {
        Orientation::from_quarters(self.quarters() + q)
    }
}

/// Axis-aligned square of side `side` centered at `center`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareBox {
    pub center: Point,
    pub side: BigInt,
}

impl SquareBox {
    pub fn new(center: Point, side: impl Into<BigInt>) -> Self {
        SquareBox { center, side: side.into() }
    }

    /// Closed-box membership; the half side may be fractional.
    pub fn contains(&self, p: &Point) -> bool {
        let dx: BigInt = (&p.x - &self.center.x).abs() * 2;
        let dy: BigInt = (&p.y - &self.center.y).abs() * 2;
        dx <= self.side && dy <= self.side
    }

    /// Whether the closed boxes share a point.
    pub fn intersects(&self, o: &SquareBox) -> bool {
        let lim = &self.side + &o.side;
        let dx: BigInt = (&self.center.x - &o.center.x).abs() * 2;
        let dy: BigInt = (&self.center.y - &o.center.y).abs() * 2;
        dx <= lim && dy <= lim
    }

    /// Corners doubled (coordinates times two) to stay integral for odd sides.
    pub fn corners2(&self) -> [Point; 4] {
        let cx: BigInt = &self.center.x * 2;
        let cy: BigInt = &self.center.y * 2;
        let s = &self.side;
        [
            Point { x: &cx - s, y: &cy - s },
            Point { x: &cx + s, y: &cy - s },
            Point { x: &cx + s, y: &cy + s },
            Point { x: &cx - s, y: &cy + s },
        ]
    }

    /// Whether the closed segment `ab` meets the closed box.
    pub fn meets_segment(&self, a: &Point, b: &Point) -> bool {
        if self.contains(a) || self.contains(b) {
            return true;
        }
        let a2 = a.scale(&BigInt::from(2));
        let b2 = b.scale(&BigInt::from(2));
        let c = self.corners2();
        (0..4).any(|i| crate::geom::segments_intersect(&a2, &b2, &c[i], &c[(i + 1) % 4]))
    }
}

/// First reason a drawing fails to be planar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanarityViolation {
    Coincident(usize, usize),
    /// `node` lies on the edge `(parent, child)`.
    NodeOnEdge { node: usize, edge: (usize, usize) },
    Crossing((usize, usize), (usize, usize)),
}

impl GridDrawing {
    pub fn new(tree: Arc<OrderedTree>, pos: Vec<Point>) -> Result<Self, Error> {
        if pos.len() != tree.len() {
            return Err(Error::Mismatch("position count differs from node count".into()));
        }
        Ok(GridDrawing { tree, pos })
    }

    pub fn len(&self) -> usize {
        self.pos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_empty()
    }

    pub fn translated(&self, d: &Point) -> GridDrawing {
        GridDrawing { tree: self.tree.clone(), pos: self.pos.iter().map(|p| p + d).collect() }
    }

    pub fn with_pos(&self, pos: Vec<Point>) -> GridDrawing {
        GridDrawing { tree: self.tree.clone(), pos }
    }
}

/// Width and height in grid columns and rows.
pub fn bounding_extent(g: &GridDrawing) -> (BigInt, BigInt) {
    extent_of(&g.pos)
}

pub fn extent_of(pos: &[Point]) -> (BigInt, BigInt) {
    if pos.is_empty() {
        return (BigInt::zero(), BigInt::zero());
    }
    let minx = pos.iter().map(|p| &p.x).min().unwrap();
    let maxx = pos.iter().map(|p| &p.x).max().unwrap();
    let miny = pos.iter().map(|p| &p.y).min().unwrap();
    let maxy = pos.iter().map(|p| &p.y).max().unwrap();
    (maxx - minx + 1u32, maxy - miny + 1u32)
}

pub fn is_planar(g: &GridDrawing) -> bool {
    planarity_violation(&g.tree, &g.pos).is_none()
}

/// Exact planarity test; returns the first violation in a fixed scan order.
pub fn planarity_violation(tree: &OrderedTree, pos: &[Point]) -> Option<PlanarityViolation> {
    let n = pos.len();
    for u in 0..n {
        for v in u + 1..n {
            if pos[u] == pos[v] {
                return Some(PlanarityViolation::Coincident(u, v));
            }
        }
    }
    let edges = tree.edges();
    for u in 0..n {
        for &(a, b) in &edges {
            if u != a && u != b && on_segment(&pos[u], &pos[a], &pos[b]) {
                return Some(PlanarityViolation::NodeOnEdge { node: u, edge: (a, b) });
            }
        }
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if segments_cross_properly(&pos[a], &pos[b], &pos[c], &pos[d]) {
                return Some(PlanarityViolation::Crossing((a, b), (c, d)));
            }
        }
    }
    None
}

/// Every non-root node lies strictly below its parent.
pub fn is_strictly_upward(g: &GridDrawing) -> bool {
    strictly_upward_pos(&g.tree, &g.pos)
}

pub fn strictly_upward_pos(tree: &OrderedTree, pos: &[Point]) -> bool {
    tree.edges().iter().all(|&(p, c)| pos[c].y < pos[p].y)
}

pub fn is_order_preserving(g: &GridDrawing) -> bool {
    order_violation(&g.tree, &g.pos).is_none()
}

/// First node whose counter-clockwise edge order differs from the prescribed rotation.
///
/// In a strictly-upward drawing the root's children must also appear in
/// counter-clockwise order starting from the upward ray, that is left to right.
pub fn order_violation(tree: &OrderedTree, pos: &[Point]) -> Option<usize> {
    order_violation_impl(tree, pos, strictly_upward_pos(tree, pos))
}

/// First node whose cyclic counter-clockwise edge order differs from the
/// prescribed rotation, with no special rule at the root.
pub fn cyclic_order_violation(tree: &OrderedTree, pos: &[Point]) -> Option<usize> {
    order_violation_impl(tree, pos, false)
}

fn order_violation_impl(tree: &OrderedTree, pos: &[Point], upward: bool) -> Option<usize> {
    let up = Point::new(0, 1);
    for u in 0..tree.len() {
        let expected = tree.rotation(u);
        let linear = upward && u == tree.root();
        if expected.len() < 2 {
            continue;
        }
        let mut dirs: Vec<(Point, usize)> =
            expected.iter().map(|&w| (&pos[w] - &pos[u], w)).collect();
        if dirs.iter().any(|(d, _)| d.x.is_zero() && d.y.is_zero()) {
            return Some(u);
        }
        dirs.sort_by(|a, b| angle_cmp_from(&up, &a.0, &b.0));
        if dirs.windows(2).any(|w| angle_cmp(&w[0].0, &w[1].0) == Ordering::Equal) {
            return Some(u);
        }
        let start = if linear { 0 } else { dirs.iter().position(|(_, w)| *w == expected[0]).unwrap() };
        let k = dirs.len();
        if (0..k).any(|i| dirs[(start + i) % k].1 != expected[i]) {
            return Some(u);
        }
    }
    None
}

/// Offsets of the upward canonical drawing of the subtree at `u`, root at the origin.
/// The x offset of a node is its preorder rank in the subtree; y is minus its depth.
pub fn canonical_offsets(tree: &OrderedTree, u: usize, orientation: Orientation) -> Vec<(usize, Point)> {
    let q = orientation.quarters();
    let mut out = Vec::new();
    let mut stack = vec![(u, 0i64)];
    let mut rank = 0i64;
    while let Some((x, d)) = stack.pop() {
        out.push((x, Point::new(rank, -d).rotate_quarters(q)));
        rank += 1;
        for &c in tree.children(x).iter().rev() {
            stack.push((c, d + 1));
        }
    }
    out
}

/// Canonical drawing of `tree` in the given orientation with the root at `anchor`.
pub fn canonical_drawing(tree: &Arc<OrderedTree>, orientation: Orientation, anchor: &Point) -> GridDrawing {
    let mut pos = vec![Point::origin(); tree.len()];
    for (v, off) in canonical_offsets(tree, tree.root(), orientation) {
        pos[v] = anchor + &off;
    }
    GridDrawing { tree: tree.clone(), pos }
}

/// Exact emptiness test of the region right of the rightmost path, between
/// the horizontal half-lines through the root and the rightmost leaf.
pub fn check_rightmost_region_empty(g: &GridDrawing) -> Result<bool, Error> {
    let tree = &g.tree;
    if !is_planar(g) || !is_strictly_upward(g) || !is_order_preserving(g) {
        return Err(Error::Precondition("drawing must be planar, strictly upward and order-preserving".into()));
    }
    Ok(rightmost_region_empty_pos(tree, &g.pos))
}

pub(crate) fn rightmost_region_empty_pos(tree: &OrderedTree, pos: &[Point]) -> bool {
    let n = tree.len();
    let mut path = vec![tree.root()];
    while let Some(&c) = tree.children(*path.last().unwrap()).last() {
        path.push(c);
    }
    debug_assert_eq!(*path.last().unwrap(), rightmost_leaf(tree));
    let mut on_path = vec![false; n];
    for &u in &path {
        on_path[u] = true;
    }
    let ytop = &pos[path[0]].y;
    let ybot = &pos[*path.last().unwrap()].y;
    // x of the rightmost path at height y (path is strictly decreasing in y)
    let path_x = |y: &Rat| -> Rat {
        for w in path.windows(2) {
            let (a, b) = (&pos[w[0]], &pos[w[1]]);
            let ya = Rat::from_integer(a.y.clone());
            let yb = Rat::from_integer(b.y.clone());
            if *y <= ya && *y >= yb {
                let xa = Rat::from_integer(a.x.clone());
                let xb = Rat::from_integer(b.x.clone());
                return &xa + (&xb - &xa) * ((&ya - y) / (&ya - &yb));
            }
        }
        Rat::from_integer(pos[path[0]].x.clone())
    };
    let in_band = |y: &BigInt| y <= ytop && y >= ybot;
    for u in 0..n {
        if on_path[u] || !in_band(&pos[u].y) {
            continue;
        }
        let y = Rat::from_integer(pos[u].y.clone());
        if Rat::from_integer(pos[u].x.clone()) >= path_x(&y) {
            return false;
        }
    }
    let breaks: Vec<&BigInt> = path.iter().map(|&u| &pos[u].y).collect();
    for (p, c) in tree.edges() {
        if on_path[p] && on_path[c] {
            continue;
        }
        let (a, b) = (&pos[p], &pos[c]);
        let hi = if a.y < *ytop { a.y.clone() } else { ytop.clone() };
        let lo = if b.y > *ybot { b.y.clone() } else { ybot.clone() };
        if hi < lo {
            continue;
        }
        let mut ys: Vec<BigInt> = vec![hi.clone(), lo.clone()];
        ys.extend(breaks.iter().filter(|y| ***y < hi && ***y > lo).map(|y| (*y).clone()));
        let seg_x = |y: &Rat| -> Rat {
            let ya = Rat::from_integer(a.y.clone());
            let yb = Rat::from_integer(b.y.clone());
            let xa = Rat::from_integer(a.x.clone());
            let xb = Rat::from_integer(b.x.clone());
            &xa + (&xb - &xa) * ((&ya - y) / (&ya - &yb))
        };
        for y in ys {
            // the parent endpoint on the path touches the boundary legitimately
            if on_path[p] && y == a.y {
                continue;
            }
            let yr = Rat::from_integer(y);
            if seg_x(&yr) >= path_x(&yr) {
                return false;
            }
        }
    }
    true
}

/// Position equality up to one common translation.
pub fn is_translate_of(a: &[Point], b: &[Point]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let d = &b[0] - &a[0];
    a.iter().zip(b).all(|(p, q)| &(p + &d) == q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_tree;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn extent_examples() {
        let t = Arc::new(parse_tree("(())").unwrap());
        let g = GridDrawing::new(t, vec![p(0, 0), p(2, 1)]).unwrap();
        assert_eq!(bounding_extent(&g), (BigInt::from(3), BigInt::from(2)));
    }

    #[test]
    fn canonical_two_children() {
        let t = Arc::new(parse_tree("(()())").unwrap());
        let up = canonical_drawing(&t, Orientation::Upward, &p(0, 0));
        assert_eq!(up.pos, vec![p(0, 0), p(1, -1), p(2, -1)]);
        let left = canonical_drawing(&t, Orientation::Leftward, &p(0, 0));
        assert_eq!(left.pos, vec![p(0, 0), p(1, 1), p(1, 2)]);
        let single = canonical_drawing(&Arc::new(parse_tree("()").unwrap()), Orientation::Upward, &p(5, 7));
        assert_eq!(single.pos, vec![p(5, 7)]);
    }

    #[test]
    fn coincident_nodes_are_not_planar() {
        let t = Arc::new(parse_tree("(()()())").unwrap());
        let g = GridDrawing::new(t, vec![p(0, 0), p(-1, -1), p(1, -1), p(-1, -1)]).unwrap();
        assert_eq!(planarity_violation(&g.tree, &g.pos), Some(PlanarityViolation::Coincident(1, 3)));
    }

    #[test]
    fn order_examples() {
        let t = Arc::new(parse_tree("(()())").unwrap());
        let good = GridDrawing::new(t.clone(), vec![p(0, 1), p(-1, 0), p(1, 0)]).unwrap();
        assert!(is_order_preserving(&good));
        let bad = GridDrawing::new(t, vec![p(0, 1), p(1, 0), p(-1, 0)]).unwrap();
        assert!(!is_order_preserving(&bad));
    }

    #[test]
    fn upward_examples() {
        let t = Arc::new(parse_tree("(())").unwrap());
        assert!(is_strictly_upward(&GridDrawing::new(t.clone(), vec![p(0, 1), p(0, 0)]).unwrap()));
        assert!(!is_strictly_upward(&GridDrawing::new(t, vec![p(0, 0), p(0, 0)]).unwrap()));
    }

    #[test]
    fn boxes() {
        let b = SquareBox::new(p(0, 0), 4);
        assert!(b.contains(&p(2, -2)));
        assert!(!b.contains(&p(3, 0)));
        assert!(b.intersects(&SquareBox::new(p(4, 0), 4)));
        assert!(!b.intersects(&SquareBox::new(p(5, 0), 4)));
        assert!(b.meets_segment(&p(-5, 3), &p(5, -3)));
        assert!(!b.meets_segment(&p(3, -5), &p(3, 5)));
    }

    #[test]
    fn rightmost_region_single_node() {
        let t = Arc::new(parse_tree("()").unwrap());
        let g = GridDrawing::new(t, vec![p(0, 0)]).unwrap();
        assert!(check_rightmost_region_empty(&g).unwrap());
    }
}
