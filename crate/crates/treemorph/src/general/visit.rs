//! Relocation of the children of one node into the canonical drawing of its subtree.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::drawing::{canonical_offsets, planarity_violation, GridDrawing, Orientation};
use crate::error::Error;
use crate::geom::{angle_cmp_from, Point};
use crate::morph::certify_step;
use crate::tree::OrderedTree;

use super::state::PartialState;

/// Positions of the subtree of `v` in a frame where `v` is the origin and the
/// subtree must end upward canonical.
struct Frame<'a> {
    tree: &'a OrderedTree,
    v: usize,
    origin: Point,
    /// Quarter turns taking real offsets to frame offsets.
    rot: u8,
    pos: Vec<Point>,
    frames: Vec<GridDrawing>,
    last: Vec<Point>,
    base: GridDrawing,
}

impl<'a> Frame<'a> {
    fn rel(&self, w: usize) -> Point {
        (&self.pos[w] - &self.origin).rotate_quarters(self.rot)
    }

    fn to_real(&self, rel: &Point) -> Point {
        &self.origin + &rel.rotate_quarters((4 - self.rot) % 4)
    }

    /// Draws the subtree at `u` canonically in frame orientation `o` with `u` at frame point `anchor`.
    fn place(&mut self, u: usize, o: Orientation, anchor: &Point) {
        for (w, off) in canonical_offsets(self.tree, u, o) {
            self.pos[w] = self.to_real(&(anchor + &off));
        }
    }

    fn emit(&mut self, what: &str) -> Result<(), Error> {
        if let Some(bad) = planarity_violation(self.tree, &self.pos) {
            return Err(Error::Internal(format!("visit of {}: {what} gives a non-planar drawing: {bad:?}", self.v)));
        }
        let cert = certify_step(self.tree, &self.last, &self.pos, false);
        if !cert.planar {
            return Err(Error::Internal(format!(
                "visit of {}: {what} is not a planar step: {:?}",
                self.v, cert.first_violation
            )));
        }
        self.last = self.pos.clone();
        self.frames.push(self.base.with_pos(self.pos.clone()));
        Ok(())
    }
}

fn reflect_y(p: &Point) -> Point {
    Point { x: p.x.clone(), y: -&p.y }
}

/// Morphs the subtree of `v` to its canonical drawing, keeping `v` fixed.
///
/// Returns the keyframes after the current drawing and the updated state.
pub fn visit_morph(state: &PartialState, v: usize) -> Result<(Vec<GridDrawing>, PartialState), Error> {
    let tree: &OrderedTree = &state.tree;
    if state.visited[v] {
        return Err(Error::Precondition(format!("node {v} is already visited")));
    }
    let kids = tree.children(v).to_vec();
    if kids.iter().any(|&u| !state.visited[u]) {
        return Err(Error::Precondition(format!("a child of node {v} is not visited")));
    }
    let n = state.n();
    let parent = tree.parent(v);
    let rot = match parent {
        Some(p) if state.pos(p).y < state.pos(v).y => 2,
        _ => 0,
    };
    let mut f = Frame {
        tree,
        v,
        origin: state.pos(v).clone(),
        rot,
        pos: state.current.pos.clone(),
        frames: Vec::new(),
        last: state.current.pos.clone(),
        base: state.current.clone(),
    };
    let frame_orient: Vec<Orientation> = kids.iter().map(|&u| state.expected_orientation(u).turned(rot)).collect();

    for (i, &u) in kids.iter().enumerate() {
        let c = state.landing[u].as_ref().ok_or_else(|| Error::Internal(format!("node {u} has no landing point")))?;
        let anchor = (c - &f.origin).rotate_quarters(rot);
        f.place(u, frame_orient[i], &anchor);
    }
    f.emit("landing translation")?;

    let h = state.constants.big_half();
    let nb = BigInt::from(n);
    let right = Point::new(1, 0);
    let left = Point::new(-1, 0);
    let p_rel = parent.map(|p| f.rel(p));
    let mut below = Vec::new();
    let mut r_group = Vec::new();
    let mut l_group = Vec::new();
    for (i, &u) in kids.iter().enumerate() {
        let r = f.rel(u);
        if frame_orient[i] == Orientation::Upward {
            below.push(u);
            continue;
        }
        let to_right = match &p_rel {
            None => !r.x.is_negative(),
            Some(pr) => match angle_cmp_from(&right, &r, pr) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => {
                    return Err(Error::Internal(format!("child {u} of {v} is aligned with the parent edge")));
                }
            },
        };
        if to_right {
            r_group.push(u);
        } else {
            l_group.push(u);
        }
    }
    below.sort_by(|&a, &b| angle_cmp_from(&right, &reflect_y(&f.rel(a)), &reflect_y(&f.rel(b))));
    r_group.sort_by(|&a, &b| angle_cmp_from(&right, &f.rel(a), &f.rel(b)));
    l_group.sort_by(|&a, &b| angle_cmp_from(&left, &reflect_y(&f.rel(a)), &reflect_y(&f.rel(b))));

    let slot: Vec<Option<Point>> = {
        let mut s = alloc::vec![None; n];
        for &u in &kids {
            s[u] = Some(Point::new(0, -1));
        }
        for (w, off) in canonical_offsets(tree, v, Orientation::Upward) {
            if s[w].is_some() {
                s[w] = Some(off);
            }
        }
        s
    };
    let slot_of = |u: usize| slot[u].clone().expect("child slot");

    let mut right_edge = h.clone();
    for &u in &below {
        let size = BigInt::from(tree.subtree_size(u));
        let x = &right_edge - (size - 1u32);
        f.place(u, Orientation::Upward, &Point { x: x.clone(), y: BigInt::from(-1) });
        f.emit("parking below")?;
        right_edge = x - 1u32;
    }
    if !below.is_empty() {
        for &u in &below {
            f.place(u, Orientation::Upward, &slot_of(u));
        }
        f.emit("shift of parked children")?;
    }

    let dock_r = Point { x: &h - &nb, y: BigInt::from(-1) };
    for &u in &r_group {
        let mut r = f.rel(u);
        if r.x.is_negative() {
            r = Point { x: -&r.x + &nb, y: r.y.clone() };
            f.place(u, Orientation::Downward, &r);
            f.emit("shift to the right side")?;
        }
        f.place(u, Orientation::Leftward, &r);
        f.emit("quarter turn to leftward")?;
        f.place(u, Orientation::Leftward, &dock_r);
        f.emit("move to the right buffer")?;
        f.place(u, Orientation::Upward, &dock_r);
        f.emit("quarter turn to upward")?;
        f.place(u, Orientation::Upward, &slot_of(u));
        f.emit("shift to final slot")?;
    }

    let dock_l = Point { x: -(&h - &nb), y: BigInt::from(-1) };
    for &u in &l_group {
        let mut r = f.rel(u);
        if r.x.is_positive() {
            r = Point { x: -&r.x - &nb, y: r.y.clone() };
            f.place(u, Orientation::Downward, &r);
            f.emit("shift to the left side")?;
        }
        f.place(u, Orientation::Rightward, &r);
        f.emit("quarter turn to rightward")?;
        f.place(u, Orientation::Rightward, &dock_l);
        f.emit("move to the left buffer")?;
        f.place(u, Orientation::Upward, &dock_l);
        f.emit("quarter turn to upward")?;
        f.place(u, Orientation::Upward, &slot_of(u));
        f.emit("shift to final slot")?;
    }

    for (w, off) in canonical_offsets(tree, v, Orientation::Upward) {
        if f.pos[w] != f.to_real(&off) {
            return Err(Error::Internal(format!("visit of {v} left node {w} off its canonical position")));
        }
    }
    if f.frames.len() > 5 * kids.len() + 2 {
        return Err(Error::Internal(format!("visit of {v} used {} steps", f.frames.len())));
    }
    let mut next = state.clone();
    next.current = state.current.with_pos(f.pos);
    next.visited[v] = true;
    Ok((f.frames, next))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::general::state::{scale_to_partially_canonical, validate_partially_canonical};
    use crate::tree::parse_tree;
    use alloc::sync::Arc;
    use alloc::vec;

    #[test]
    fn single_child_directly_below() {
        // root 0 (a leaf of the path) above its child 1, which has child 2
        let t = Arc::new(parse_tree("((()))").unwrap());
        let g = GridDrawing::new(t.clone(), vec![Point::new(0, 2), Point::new(0, 1), Point::new(0, 0)]).unwrap();
        let s = scale_to_partially_canonical(&t, &g).unwrap();
        let (frames, s1) = visit_morph(&s, 1).unwrap();
        // landing translation, parking and the final shift
        assert_eq!(frames.len(), 3);
        assert!(validate_partially_canonical(&s1).is_green());
        let v = s1.pos(1).clone();
        assert_eq!(s1.pos(2), &(&v + &Point::new(1, -1)));
        let (frames, s2) = visit_morph(&s1, 0).unwrap();
        assert!(frames.len() <= 7);
        assert!(s2.is_complete());
        assert_eq!(s2.pos(1), &(s2.pos(0) + &Point::new(1, -1)));
    }

    #[test]
    fn children_on_all_sides() {
        // node 1 has children 2, 3, 4, 5 around it; its parent 0 is above right
        let t = Arc::new(parse_tree("((()()()()))").unwrap());
        let pos = vec![
            Point::new(1, 2),
            Point::new(0, 0),
            Point::new(-1, 1),
            Point::new(-1, -1),
            Point::new(1, -1),
            Point::new(1, 0),
        ];
        let g = GridDrawing::new(t.clone(), pos).unwrap();
        assert_eq!(crate::drawing::cyclic_order_violation(&t, &g.pos), None);
        let s = scale_to_partially_canonical(&t, &g).unwrap();
        let (frames, s1) = visit_morph(&s, 1).unwrap();
        assert!(frames.len() <= 5 * 4 + 2);
        assert!(validate_partially_canonical(&s1).is_green());
        let (_, s2) = visit_morph(&s1, 0).unwrap();
        assert!(validate_partially_canonical(&s2).is_green());
    }

    #[test]
    fn rejects_unready_nodes() {
        let t = Arc::new(parse_tree("((()))").unwrap());
        let g = GridDrawing::new(t.clone(), vec![Point::new(0, 2), Point::new(0, 1), Point::new(0, 0)]).unwrap();
        let s = scale_to_partially_canonical(&t, &g).unwrap();
        assert!(matches!(visit_morph(&s, 0), Err(Error::Precondition(_))));
        assert!(matches!(visit_morph(&s, 2), Err(Error::Precondition(_))));
    }
}
