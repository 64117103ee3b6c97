//! Three-step upward planar morphs.
//!
//! Both drawings are first flattened horizontally onto a structure-only
//! x-assignment keeping every y-coordinate; the middle step then moves nodes
//! vertically only.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::drawing::{extent_of, GridDrawing};
use crate::error::Error;
use crate::geom::Point;
use crate::morph::Morph;
use crate::tree::OrderedTree;
use crate::upward_linear::validate_upward_input;

/// Attached to every result of [`morph_upward_3step_general`].
pub const WIDTH_WARNING: &str = "intermediate width may be exponential in the number of nodes";

/// In-order x-coordinates with the root at 0; a single child counts as a left child.
pub fn canonical_x_assignment(tree: &OrderedTree) -> Result<Vec<i64>, Error> {
    if let Some(u) = (0..tree.len()).find(|&u| tree.children(u).len() > 2) {
        return Err(Error::NotBinary { node: u });
    }
    let mut order = Vec::with_capacity(tree.len());
    // (node, whether its left subtree is done)
    let mut stack = vec![(tree.root(), false)];
    while let Some((u, expanded)) = stack.pop() {
        let ch = tree.children(u);
        if expanded {
            order.push(u);
            if let Some(&r) = ch.get(1) {
                stack.push((r, false));
            }
        } else {
            stack.push((u, true));
            if let Some(&l) = ch.first() {
                stack.push((l, false));
            }
        }
    }
    let mut x = vec![0i64; tree.len()];
    for (i, &u) in order.iter().enumerate() {
        x[u] = i as i64;
    }
    let r = x[tree.root()];
    Ok(x.into_iter().map(|v| v - r).collect())
}

fn check_inputs(tree: &Arc<OrderedTree>, g0: &GridDrawing, g1: &GridDrawing) -> Result<(), Error> {
    for g in [g0, g1] {
        if *g.tree != **tree || g.pos.len() != tree.len() {
            return Err(Error::Mismatch("drawing does not belong to the tree".into()));
        }
    }
    validate_upward_input(g0, "first drawing")?;
    validate_upward_input(g1, "second drawing")
}

fn flatten(tree: &Arc<OrderedTree>, g: &GridDrawing, x: &[BigInt]) -> GridDrawing {
    let pos = (0..tree.len()).map(|u| Point { x: x[u].clone(), y: g.pos[u].y.clone() }).collect();
    GridDrawing { tree: tree.clone(), pos }
}

/// Three-step morph for binary trees.
pub fn morph_upward_3step(tree: &Arc<OrderedTree>, g0: &GridDrawing, g1: &GridDrawing) -> Result<Morph, Error> {
    let x: Vec<BigInt> = canonical_x_assignment(tree)?.into_iter().map(BigInt::from).collect();
    check_inputs(tree, g0, g1)?;
    let a = flatten(tree, g0, &x);
    let b = flatten(tree, g1, &x);
    Morph::new(tree.clone(), vec![g0.clone(), a, b, g1.clone()])
}

/// Shared x-coordinates for both y-profiles, with every child subtree to the
/// right of its parent.
///
/// Each node sits at relative x 0 and its subtrees occupy later columns with
/// one empty column between consecutive bounding boxes. A subtree is pushed
/// right just far enough that, in both profiles, the edge to its root keeps
/// every node of the earlier subtrees strictly on its left; this also makes
/// the edge directions turn counter-clockwise in child order.
pub fn general_x_assignment(tree: &OrderedTree, y0: &[BigInt], y1: &[BigInt]) -> Vec<BigInt> {
    let n = tree.len();
    // subtree members with x relative to the subtree root
    let mut rel: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); n];
    let mut post = tree.preorder();
    post.reverse();
    for &u in &post {
        let mut placed: Vec<(usize, BigInt)> = vec![(u, BigInt::zero())];
        let mut cursor = BigInt::one();
        for &c in tree.children(u) {
            let mut xc = cursor.clone();
            for ys in [y0, y1] {
                let dc = (&ys[c] - &ys[u]).abs();
                for (w, a) in placed.iter().skip(1) {
                    let b = (&ys[*w] - &ys[u]).abs();
                    let bound = (&dc * a).div_floor(&b) + 1u32;
                    if bound > xc {
                        xc = bound;
                    }
                }
            }
            let sub = core::mem::take(&mut rel[c]);
            let width = sub.iter().map(|(_, x)| x).max().cloned().unwrap_or_default() + 1u32;
            placed.extend(sub.into_iter().map(|(w, x)| (w, x + &xc)));
            cursor = xc + width + 1u32;
        }
        rel[u] = placed;
    }
    let mut x = vec![BigInt::zero(); n];
    for (w, v) in core::mem::take(&mut rel[tree.root()]) {
        x[w] = v;
    }
    x
}

#[derive(Debug, Clone)]
pub struct GeneralThreeStep {
    pub morph: Morph,
    /// Width of the flattened intermediate drawings.
    pub intermediate_width: BigInt,
    pub warning: &'static str,
}

/// Three-step morph for trees of any degree.
pub fn morph_upward_3step_general(
    tree: &Arc<OrderedTree>,
    g0: &GridDrawing,
    g1: &GridDrawing,
) -> Result<GeneralThreeStep, Error> {
    check_inputs(tree, g0, g1)?;
    let y0: Vec<BigInt> = g0.pos.iter().map(|p| p.y.clone()).collect();
    let y1: Vec<BigInt> = g1.pos.iter().map(|p| p.y.clone()).collect();
    let x = general_x_assignment(tree, &y0, &y1);
    let a = flatten(tree, g0, &x);
    let b = flatten(tree, g1, &x);
    let intermediate_width = extent_of(&a.pos).0;
    let morph = Morph::new(tree.clone(), vec![g0.clone(), a, b, g1.clone()])?;
    Ok(GeneralThreeStep { morph, intermediate_width, warning: WIDTH_WARNING })
}

/// Star whose children alternate between a top row at depth one and a bottom
/// row at depth `h`; flattening it forces geometric width growth.
pub fn gen_exponential_example(children: usize, h: i64) -> Result<(Arc<OrderedTree>, GridDrawing), Error> {
    if children < 2 || h < 2 {
        return Err(Error::Precondition("need at least two children and h >= 2".into()));
    }
    let kids: Vec<usize> = (1..=children).collect();
    let mut ch = vec![Vec::new(); children + 1];
    ch[0] = kids;
    let tree = Arc::new(OrderedTree::from_children(0, ch)?);
    let mut pos = vec![Point::origin()];
    for k in 0..children {
        let i = (k / 2 + 1) as i64;
        pos.push(if k % 2 == 0 { Point::new(i, -1) } else { Point::new(i * h + 1, -h) });
    }
    let g = GridDrawing::new(tree.clone(), pos)?;
    Ok((tree, g))
}
