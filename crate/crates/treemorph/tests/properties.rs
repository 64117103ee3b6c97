use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use treemorph::drawing::{
    canonical_drawing, cyclic_order_violation, is_order_preserving, is_strictly_upward, planarity_violation,
};
use treemorph::general::morph_general_detailed;
use treemorph::morph::{certify_step, verify_morph, BoundAudit, Standard};
use treemorph::tree::{lca, parse_tree, postorder_internal, reroot_at_leaf, rightmost_leaf, serialize_tree};
use treemorph::{GridDrawing, Orientation, OrderedTree, Point};

/// Random tree as a parenthesis string built from a parent array.
fn tree_text(parents: &[usize]) -> String {
    let n = parents.len() + 1;
    let mut kids = vec![Vec::new(); n];
    for (i, &p) in parents.iter().enumerate() {
        kids[p % (i + 1)].push(i + 1);
    }
    fn emit(u: usize, kids: &[Vec<usize>], out: &mut String) {
        out.push('(');
        for &c in &kids[u] {
            emit(c, kids, out);
        }
        out.push(')');
    }
    let mut s = String::new();
    emit(0, &kids, &mut s);
    s
}

fn arb_tree(max: usize) -> impl Strategy<Value = Arc<OrderedTree>> {
    prop::collection::vec(0usize..64, 0..max).prop_map(|p| Arc::new(parse_tree(&tree_text(&p)).unwrap()))
}

fn root_path(t: &OrderedTree, mut u: usize) -> Vec<usize> {
    let mut path = vec![u];
    while let Some(p) = t.parent(u) {
        path.push(p);
        u = p;
    }
    path.reverse();
    path
}

fn small(p: &Point) -> (i64, i64) {
    (p.x.clone().try_into().unwrap(), p.y.clone().try_into().unwrap())
}

/// Independent crossing test on machine integers.
fn planar_oracle(t: &OrderedTree, pos: &[(i64, i64)]) -> bool {
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let within = |p: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
    };
    let touch = |a, b, c, d| {
        let (d1, d2, d3, d4) = (cross(a, b, c), cross(a, b, d), cross(c, d, a), cross(c, d, b));
        if d1.signum() * d2.signum() < 0 && d3.signum() * d4.signum() < 0 {
            return true;
        }
        (d1 == 0 && within(c, a, b)) || (d2 == 0 && within(d, a, b)) || (d3 == 0 && within(a, c, d)) || (d4 == 0 && within(b, c, d))
    };
    let n = pos.len();
    if (0..n).any(|u| (u + 1..n).any(|v| pos[u] == pos[v])) {
        return false;
    }
    let edges = t.edges();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for w in 0..n {
            if w != a && w != b && cross(pos[a], pos[b], pos[w]) == 0 && within(pos[w], pos[a], pos[b]) {
                return false;
            }
        }
        for &(c, d) in &edges[i + 1..] {
            let shared = [a, b].iter().any(|x| *x == c || *x == d);
            if !shared && touch(pos[a], pos[b], pos[c], pos[d]) {
                return false;
            }
        }
    }
    true
}

/// Counter-clockwise neighbour order from floating angles; exact enough for small grids.
fn ccw_neighbours(t: &OrderedTree, pos: &[(i64, i64)], u: usize) -> Vec<usize> {
    let mut nb = t.rotation(u);
    let ang = |v: usize| ((pos[v].1 - pos[u].1) as f64).atan2((pos[v].0 - pos[u].0) as f64);
    nb.sort_by(|&a, &b| ang(a).partial_cmp(&ang(b)).unwrap());
    nb
}

fn is_cyclic_shift(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|k| a.iter().cycle().skip(k).take(a.len()).eq(b.iter())))
}

fn arb_positions(n: usize, side: i64) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((0..side, 0..side), n).prop_map(|v| v.into_iter().map(|(x, y)| Point::new(x, y)).collect())
}

fn tree_and_positions(max: usize, side: i64) -> impl Strategy<Value = (Arc<OrderedTree>, Vec<Point>, Vec<Point>)> {
    arb_tree(max).prop_flat_map(move |t| {
        let n = t.len();
        (Just(t), arb_positions(n, side), arb_positions(n, side))
    })
}

proptest! {
    #[test]
    fn parse_serialize_roundtrip(t in arb_tree(20)) {
        let text = serialize_tree(&t);
        prop_assert_eq!(&parse_tree(&text).unwrap(), &*t);
        prop_assert_eq!(serialize_tree(&parse_tree(&text).unwrap()), text);
    }

    #[test]
    fn rightmost_leaf_follows_last_children(t in arb_tree(20)) {
        let mut u = t.root();
        while let Some(&c) = t.children(u).iter().max_by_key(|&&c| t.children(t.parent(c).unwrap()).iter().position(|&x| x == c)) {
            u = c;
        }
        prop_assert_eq!(rightmost_leaf(&t), u);
    }

    #[test]
    fn lca_is_deepest_common_root_path_node(t in arb_tree(20), a in 0usize..64, b in 0usize..64) {
        let (u, v) = (a % t.len(), b % t.len());
        let (pu, pv) = (root_path(&t, u), root_path(&t, v));
        let common = pu.iter().zip(&pv).take_while(|(x, y)| x == y).last().map(|(x, _)| *x).unwrap();
        prop_assert_eq!(lca(&t, u, v), common);
    }

    #[test]
    fn postorder_lists_internal_nodes_after_children(t in arb_tree(20)) {
        let order = postorder_internal(&t);
        let internal: Vec<usize> = (0..t.len()).filter(|&u| !t.is_leaf(u)).collect();
        let mut sorted = order.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, internal);
        for (i, &u) in order.iter().enumerate() {
            for &c in t.children(u) {
                if let Some(j) = order.iter().position(|&x| x == c) {
                    prop_assert!(j < i);
                }
            }
        }
    }

    #[test]
    fn reroot_keeps_the_rotation_system(t in arb_tree(16)) {
        let r = reroot_at_leaf(&t);
        prop_assert_eq!(r.len(), t.len());
        if t.len() >= 2 {
            let leaf = (0..t.len()).find(|&u| t.is_leaf(u)).unwrap();
            prop_assert_eq!(r.root(), leaf);
            prop_assert_eq!(r.children(leaf).len(), 1);
        }
        for u in 0..t.len() {
            prop_assert!(is_cyclic_shift(&t.rotation(u), &r.rotation(u)), "node {}", u);
        }
    }

    #[test]
    fn planarity_matches_brute_force((t, a, _b) in tree_and_positions(7, 5)) {
        let small_pos: Vec<(i64, i64)> = a.iter().map(small).collect();
        prop_assert_eq!(planarity_violation(&t, &a).is_none(), planar_oracle(&t, &small_pos));
    }

    #[test]
    fn cyclic_order_matches_angle_sort((t, a, _b) in tree_and_positions(7, 6)) {
        let p: Vec<(i64, i64)> = a.iter().map(small).collect();
        prop_assume!(planar_oracle(&t, &p));
        let ok = (0..t.len()).all(|u| is_cyclic_shift(&t.rotation(u), &ccw_neighbours(&t, &p, u)));
        prop_assert_eq!(cyclic_order_violation(&t, &a).is_none(), ok);
    }

    #[test]
    fn step_verdict_is_symmetric_and_translation_invariant(
        (t, a, b) in tree_and_positions(6, 5),
        dx in -7i64..7,
        dy in -7i64..7,
    ) {
        let fwd = certify_step(&t, &a, &b, false);
        let back = certify_step(&t, &b, &a, false);
        prop_assert_eq!(fwd.planar, back.planar);
        let shift = Point::new(dx, dy);
        let ta: Vec<Point> = a.iter().map(|p| p + &shift).collect();
        let tb: Vec<Point> = b.iter().map(|p| p + &shift).collect();
        prop_assert_eq!(certify_step(&t, &ta, &tb, false).planar, fwd.planar);
    }

    #[test]
    fn canonical_drawings_are_valid(t in arb_tree(16), q in 0u8..4, x in -5i64..5, y in -5i64..5) {
        let o = Orientation::from_quarters(q);
        let g = canonical_drawing(&t, o, &Point::new(x, y));
        prop_assert!(planarity_violation(&t, &g.pos).is_none());
        prop_assert!(cyclic_order_violation(&t, &g.pos).is_none());
        if o == Orientation::Upward {
            prop_assert!(is_strictly_upward(&g));
            prop_assert!(is_order_preserving(&g));
        }
    }
}

fn general_case(t: &Arc<OrderedTree>, a: &[Point], b: &[Point]) -> Result<(), TestCaseError> {
    let ga = GridDrawing::new(t.clone(), a.to_vec()).unwrap();
    let gb = GridDrawing::new(t.clone(), b.to_vec()).unwrap();
    let r = morph_general_detailed(t, &ga, &gb).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(verify_morph(&r.morph, Standard::Planar).unwrap().all_green());
    prop_assert!(r.audits.iter().all(BoundAudit::holds));
    prop_assert!(r.morph.steps() <= 5 * t.len() + 10);
    prop_assert_eq!(&r.morph.first().pos, &ga.pos);
    prop_assert_eq!(&r.morph.last().pos, &gb.pos);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn general_morph_on_random_drawings((t, a, b) in tree_and_positions(6, 5)) {
        prop_assume!(planarity_violation(&t, &a).is_none() && cyclic_order_violation(&t, &a).is_none());
        prop_assume!(planarity_violation(&t, &b).is_none() && cyclic_order_violation(&t, &b).is_none());
        general_case(&t, &a, &b)?;
    }

    #[test]
    fn general_morph_between_rotated_canonical_drawings(t in arb_tree(6), q in 0u8..4, k in 1i64..4) {
        let a = canonical_drawing(&t, Orientation::Upward, &Point::origin());
        let b = canonical_drawing(&t, Orientation::from_quarters(q), &Point::new(k, -k));
        let scale = BigInt::from(k);
        let b: Vec<Point> = b.pos.iter().map(|p| p.scale(&scale)).collect();
        general_case(&t, &a.pos, &b)?;
    }
}
