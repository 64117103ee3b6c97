//! Upward planar morph with `2n - 1` linear steps between strictly-upward
//! drawings of a rooted ordered tree.
//!
//! The rightmost leaf is removed, the smaller tree is morphed, and the leaf is
//! re-inserted in every intermediate keyframe one unit below its parent and
//! one column right of the drawing. The recursion is unrolled: leaves are
//! peeled off first and re-inserted from the innermost level outwards.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::drawing::{order_violation, planarity_violation, strictly_upward_pos, GridDrawing};
use crate::error::Error;
use crate::geom::Point;
use crate::morph::Morph;
use crate::tree::OrderedTree;

/// Checks that `g` is planar, strictly upward and order-preserving.
pub fn validate_upward_input(g: &GridDrawing, name: &str) -> Result<(), Error> {
    if let Some(v) = planarity_violation(&g.tree, &g.pos) {
        return Err(Error::Precondition(format!("{name} is not planar: {v:?}")));
    }
    if !strictly_upward_pos(&g.tree, &g.pos) {
        return Err(Error::Precondition(format!("{name} is not strictly upward")));
    }
    if let Some(u) = order_violation(&g.tree, &g.pos) {
        return Err(Error::Precondition(format!("{name} is not order-preserving at node {u}")));
    }
    Ok(())
}

fn max_x<'a>(pos: &'a [Point], nodes: &[usize]) -> &'a BigInt {
    nodes.iter().map(|&u| &pos[u].x).max().expect("non-empty node set")
}

/// Builds the morph; both drawings are validated first.
pub fn morph_upward_linear(tree: &Arc<OrderedTree>, g0: &GridDrawing, g1: &GridDrawing) -> Result<Morph, Error> {
    for g in [g0, g1] {
        if *g.tree != **tree || g.pos.len() != tree.len() {
            return Err(Error::Mismatch("drawing does not belong to the tree".into()));
        }
    }
    validate_upward_input(g0, "first drawing")?;
    validate_upward_input(g1, "second drawing")?;
    let n = tree.len();

    // peel rightmost leaves; each removed leaf is the last child of its parent
    let mut kids: Vec<Vec<usize>> = (0..n).map(|u| tree.children(u).to_vec()).collect();
    let mut peeled = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let mut u = tree.root();
        while let Some(&c) = kids[u].last() {
            u = c;
        }
        let p = tree.parent(u).expect("non-root leaf");
        kids[p].pop();
        peeled.push(u);
    }

    let mut present = vec![tree.root()];
    let mut frames: Vec<Vec<Point>> = vec![g0.pos.clone(), g1.pos.clone()];
    for &l in peeled.iter().rev() {
        let pi = tree.parent(l).unwrap();
        let prev = present.clone();
        present.push(l);
        let k = frames.len();
        let mut next = Vec::with_capacity(k + 2);
        next.push(g0.pos.clone());
        for (i, f) in frames.into_iter().enumerate() {
            let col = if i == 0 {
                max_x(&g0.pos, &present).clone()
            } else if i == k - 1 {
                max_x(&g1.pos, &present).clone()
            } else {
                max_x(&f, &prev).clone()
            };
            let mut f = f;
            f[l] = Point { x: col + 1u32, y: &f[pi].y - 1u32 };
            next.push(f);
        }
        next.push(g1.pos.clone());
        frames = next;
    }
    if frames.len() != 2 * n {
        return Err(Error::Internal("keyframe count differs from 2n".into()));
    }
    let root = tree.root();
    for f in &frames {
        for u in 0..n {
            let d = (&f[u].y - &f[root].y).abs();
            let d0 = (&g0.pos[u].y - &g0.pos[root].y).abs();
            let d1 = (&g1.pos[u].y - &g1.pos[root].y).abs();
            if d > d0.max(d1) {
                return Err(Error::Internal(format!("vertical distance of node {u} to the root grew")));
            }
        }
    }
    let keyframes = frames.into_iter().map(|pos| GridDrawing { tree: tree.clone(), pos }).collect();
    Morph::new(tree.clone(), keyframes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morph::{verify_morph, Standard};
    use crate::tree::parse_tree;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn single_node_is_one_step() {
        let t = Arc::new(parse_tree("()").unwrap());
        let a = GridDrawing::new(t.clone(), vec![p(0, 0)]).unwrap();
        let b = GridDrawing::new(t.clone(), vec![p(4, 2)]).unwrap();
        let m = morph_upward_linear(&t, &a, &b).unwrap();
        assert_eq!(m.steps(), 1);
    }

    #[test]
    fn two_node_path_places_leaf_right() {
        let t = Arc::new(parse_tree("(())").unwrap());
        let a = GridDrawing::new(t.clone(), vec![p(0, 1), p(0, 0)]).unwrap();
        let m = morph_upward_linear(&t, &a, &a).unwrap();
        assert_eq!(m.steps(), 3);
        assert_eq!(m.keyframes[1].pos[1], p(1, 0));
        assert_eq!(m.keyframes[2].pos[1], p(1, 0));
        assert!(verify_morph(&m, Standard::UpwardPlanar).unwrap().all_green());
    }

    #[test]
    fn rejects_downward_input() {
        let t = Arc::new(parse_tree("(())").unwrap());
        let a = GridDrawing::new(t.clone(), vec![p(0, 0), p(0, 1)]).unwrap();
        assert!(matches!(morph_upward_linear(&t, &a, &a), Err(Error::Precondition(_))));
    }
}
