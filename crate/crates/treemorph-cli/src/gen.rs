//! Seeded random trees and valid drawings.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use treemorph::drawing::{
    canonical_drawing, cyclic_order_violation, extent_of, order_violation, planarity_violation, strictly_upward_pos,
};
use treemorph::morph::certify_step;
use treemorph::tree::parse_tree;
use treemorph::{GridDrawing, Orientation, OrderedTree, Point};

pub use rand::SeedableRng;
pub type GenRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random ordered tree with `n` nodes; every node gets at most `max_children` children.
pub fn random_tree(rng: &mut GenRng, n: usize, max_children: Option<usize>) -> Arc<OrderedTree> {
    assert!(n >= 1);
    let cap = max_children.unwrap_or(usize::MAX);
    assert!(cap >= 1 || n == 1);
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); n];
    for u in 1..n {
        let p = loop {
            let p = rng.gen_range(0..u);
            if kids[p].len() < cap {
                break p;
            }
        };
        let at = rng.gen_range(0..=kids[p].len());
        kids[p].insert(at, u);
    }
    let mut text = String::with_capacity(2 * n);
    let mut stack = vec![(0usize, 0usize)];
    text.push('(');
    while let Some(top) = stack.last_mut() {
        let (u, i) = *top;
        if i < kids[u].len() {
            top.1 += 1;
            stack.push((kids[u][i], 0));
            text.push('(');
        } else {
            stack.pop();
            text.push(')');
        }
    }
    Arc::new(parse_tree(&text).expect("generated tree string is balanced"))
}

fn fits(pos: &[Point], max_side: i64) -> bool {
    let (w, h) = extent_of(pos);
    w <= BigInt::from(max_side) && h <= BigInt::from(max_side)
}

/// Whether `pos` is a planar, strictly-upward, order-preserving drawing of `tree`.
pub fn is_valid_upward(tree: &OrderedTree, pos: &[Point]) -> bool {
    planarity_violation(tree, pos).is_none() && strictly_upward_pos(tree, pos) && order_violation(tree, pos).is_none()
}

/// Whether `pos` is a planar drawing of `tree` preserving its cyclic edge order.
pub fn is_valid_free(tree: &OrderedTree, pos: &[Point]) -> bool {
    planarity_violation(tree, pos).is_none() && cyclic_order_violation(tree, pos).is_none()
}

/// Strictly-upward drawing with x increasing in preorder and random gaps and drops,
/// rejection-sampled until valid and within `max_side` columns and rows.
/// Falls back to the upward canonical drawing.
pub fn random_upward_drawing(rng: &mut GenRng, tree: &Arc<OrderedTree>, max_side: i64) -> GridDrawing {
    let n = tree.len();
    for _ in 0..200 {
        let mut pos = vec![Point::origin(); n];
        let mut x = 0i64;
        for u in tree.preorder() {
            let y = match tree.parent(u) {
                None => 0,
                Some(p) => pos[p].y.to_i64().unwrap() - rng.gen_range(1..=2),
            };
            pos[u] = Point::new(x, y);
            x += rng.gen_range(1..=2);
        }
        if fits(&pos, max_side) && is_valid_upward(tree, &pos) {
            return GridDrawing { tree: tree.clone(), pos };
        }
    }
    canonical_drawing(tree, Orientation::Upward, &Point::origin())
}

/// Strictly-upward drawing with the same y-coordinates as `g` and fresh random x-coordinates.
pub fn random_equal_y_drawing(rng: &mut GenRng, g: &GridDrawing, max_side: i64) -> Option<GridDrawing> {
    let tree = &g.tree;
    for _ in 0..200 {
        let mut pos = g.pos.clone();
        let mut x = rng.gen_range(-2..=2);
        for u in tree.preorder() {
            pos[u].x = BigInt::from(x);
            x += rng.gen_range(1..=3);
        }
        if fits(&pos, max_side) && is_valid_upward(tree, &pos) {
            return Some(GridDrawing { tree: tree.clone(), pos });
        }
    }
    None
}

/// Planar order-preserving drawing: a randomly rotated canonical drawing
/// moved by random single-node steps, each certified planar.
pub fn random_free_drawing(rng: &mut GenRng, tree: &Arc<OrderedTree>, max_side: i64) -> GridDrawing {
    let n = tree.len();
    let start = Orientation::from_quarters(rng.gen_range(0..4));
    let mut pos = canonical_drawing(tree, start, &Point::origin()).pos;
    for _ in 0..20 * n {
        let u = rng.gen_range(0..n);
        let d = Point::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let mut next = pos.clone();
        next[u] = &next[u] + &d;
        if !fits(&next, max_side) || planarity_violation(tree, &next).is_some() {
            continue;
        }
        if certify_step(tree, &pos, &next, false).planar {
            pos = next;
        }
    }
    debug_assert!(is_valid_free(tree, &pos));
    GridDrawing { tree: tree.clone(), pos }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trees_respect_size_and_degree() {
        let mut rng = rng_from_seed(7);
        for n in 1..15 {
            let t = random_tree(&mut rng, n, Some(2));
            assert_eq!(t.len(), n);
            assert!((0..n).all(|u| t.children(u).len() <= 2));
        }
    }

    #[test]
    fn drawings_are_valid_and_deterministic() {
        let mut rng = rng_from_seed(3);
        for n in 1..10 {
            let t = random_tree(&mut rng, n, None);
            let g = random_upward_drawing(&mut rng, &t, 12);
            assert!(is_valid_upward(&t, &g.pos));
            let f = random_free_drawing(&mut rng, &t, 8);
            assert!(is_valid_free(&t, &f.pos));
            assert!(fits(&f.pos, 8));
        }
        let a = random_free_drawing(&mut rng_from_seed(11), &parse_tree("(()(()))").map(Arc::new).unwrap(), 8);
        let b = random_free_drawing(&mut rng_from_seed(11), &parse_tree("(()(()))").map(Arc::new).unwrap(), 8);
        assert_eq!(a, b);
    }
}
