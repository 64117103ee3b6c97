//! Quarter-turn morphs between canonical drawings of a subtree.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::drawing::{canonical_offsets, GridDrawing, Orientation};
use crate::error::Error;
use crate::geom::Point;
use crate::tree::OrderedTree;

/// Whether `from` and `to` differ by one quarter turn.
pub fn adjacent(from: Orientation, to: Orientation) -> bool {
    let d = (to.quarters() + 4 - from.quarters()) % 4;
    d == 1 || d == 3
}

/// Half of the `2n`-box centered at the root that holds both canonical
/// drawings of an adjacent pair, as the unit outward normal of the half.
pub fn containing_half(from: Orientation, to: Orientation) -> Result<Point, Error> {
    use Orientation::*;
    match (from, to) {
        (Upward, Leftward) | (Leftward, Upward) => Ok(Point::new(1, 0)),
        (Leftward, Downward) | (Downward, Leftward) => Ok(Point::new(0, 1)),
        (Downward, Rightward) | (Rightward, Downward) => Ok(Point::new(-1, 0)),
        (Rightward, Upward) | (Upward, Rightward) => Ok(Point::new(0, -1)),
        _ => Err(Error::NonAdjacent),
    }
}

/// Whether `p` lies in the closed half of the `2n`-box centered at `root`
/// facing `normal`.
pub fn in_half_box(p: &Point, root: &Point, n: usize, normal: &Point) -> bool {
    let d = p - root;
    let n = BigInt::from(n);
    let inside = d.x.magnitude() <= n.magnitude() && d.y.magnitude() <= n.magnitude();
    inside && crate::geom::dot(&d, normal) >= BigInt::from(0)
}

/// Positions of the subtree at `u` drawn canonically in `orientation` with `u` at `anchor`.
pub fn place_subtree(tree: &OrderedTree, u: usize, orientation: Orientation, anchor: &Point) -> Vec<(usize, Point)> {
    canonical_offsets(tree, u, orientation).into_iter().map(|(w, off)| (w, anchor + &off)).collect()
}

/// Target of a pinwheel step: the `to`-oriented canonical drawing with the
/// same root position as the `from`-oriented canonical drawing `g`.
pub fn pinwheel_step(g: &GridDrawing, from: Orientation, to: Orientation) -> Result<GridDrawing, Error> {
    if !adjacent(from, to) {
        return Err(Error::NonAdjacent);
    }
    let tree = &g.tree;
    let root = tree.root();
    let anchor = g.pos[root].clone();
    if place_subtree(tree, root, from, &anchor).iter().any(|(w, p)| g.pos[*w] != *p) {
        return Err(Error::Precondition("drawing is not canonical in the given orientation".into()));
    }
    let mut pos = g.pos.clone();
    for (w, p) in place_subtree(tree, root, to, &anchor) {
        pos[w] = p;
    }
    Ok(g.with_pos(pos))
}
