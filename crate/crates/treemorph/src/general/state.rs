//! Partially-canonical drawings: visited subtrees are canonical, unvisited
//! nodes keep empty boxes around them and sectors isolate their child edges.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::drawing::{bounding_extent, canonical_offsets, SquareBox, GridDrawing, Orientation};
use crate::error::Error;
use crate::geom::Point;
use crate::tree::OrderedTree;

use super::constants::{make_constants, AlgorithmConstants};
use super::sector::{wedges_disjoint, Sector};

/// A drawing together with the bookkeeping of the bottom-up visit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialState {
    pub tree: Arc<OrderedTree>,
    pub constants: AlgorithmConstants,
    /// The scaled input drawing.
    pub delta0: GridDrawing,
    pub current: GridDrawing,
    pub visited: Vec<bool>,
    /// Sector of the edge from each non-root node to its parent.
    pub sectors: Vec<Option<Sector>>,
    /// Landing center of each non-root node inside its parent's medium box.
    pub landing: Vec<Option<Point>>,
}

/// A violated property of a partially-canonical drawing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PcViolation {
    /// A visited subtree is not drawn canonically with the expected orientation.
    NotCanonical { node: usize },
    /// The sector of the edge to `child` does not cover the small box of `child`.
    SectorMissesChildBox { child: usize },
    /// The sector of the edge to `child` contains a foreign node.
    SectorHoldsNode { child: usize, node: usize },
    /// The sector of the edge to `child` may meet the foreign edge ending at `other`.
    SectorMeetsEdge { child: usize, other: usize },
    /// The landing box of `child` is misplaced.
    LandingBox { child: usize },
    /// The sectors of two edges at the same parent overlap.
    SectorsOverlap { a: usize, b: usize },
    /// Big boxes of two unvisited nodes meet.
    BoxesMeet { v: usize, w: usize },
    /// The big box of `v` contains another node.
    BoxHoldsNode { v: usize, node: usize },
    /// The big box of `v` meets an edge not incident to `v`, named by its child.
    BoxMeetsEdge { v: usize, edge: usize },
    /// The big box of `v` may meet the sector of an edge not incident to `v`.
    BoxMeetsSector { v: usize, edge: usize },
}

impl PcViolation {
    /// Label of the violated property.
    pub fn property(&self) -> &'static str {
        match self {
            PcViolation::NotCanonical { .. } => "canonical-subtree",
            PcViolation::SectorMissesChildBox { .. } => "sector-encloses-child-box",
            PcViolation::SectorHoldsNode { .. } | PcViolation::SectorMeetsEdge { .. } => "sector-empty",
            PcViolation::LandingBox { .. } => "landing-box",
            PcViolation::SectorsOverlap { .. } => "sectors-disjoint",
            PcViolation::BoxesMeet { .. } => "boxes-disjoint",
            PcViolation::BoxHoldsNode { .. }
            | PcViolation::BoxMeetsEdge { .. }
            | PcViolation::BoxMeetsSector { .. } => "box-empty",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub violations: Vec<PcViolation>,
}

impl Diagnostics {
    pub fn is_green(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_property(&self, label: &str) -> bool {
        self.violations.iter().any(|v| v.property() == label)
    }
}

impl PartialState {
    pub fn n(&self) -> usize {
        self.tree.len()
    }

    pub fn pos(&self, u: usize) -> &Point {
        &self.current.pos[u]
    }

    /// The `(ell0 + 4n)`-box around `v`.
    pub fn big_box(&self, v: usize) -> SquareBox {
        SquareBox::new(self.pos(v).clone(), &self.constants.ell0 + 4 * self.n())
    }

    /// The `ell0`-box around `v`.
    pub fn medium_box(&self, v: usize) -> SquareBox {
        SquareBox::new(self.pos(v).clone(), self.constants.ell0.clone())
    }

    /// The `2n`-box around `u`.
    pub fn small_box(&self, u: usize) -> SquareBox {
        SquareBox::new(self.pos(u).clone(), 2 * self.n())
    }

    /// The `2n`-box around the landing center of `u`.
    pub fn landing_box(&self, u: usize) -> Option<SquareBox> {
        self.landing[u].as_ref().map(|c| SquareBox::new(c.clone(), 2 * self.n()))
    }

    pub fn unvisited(&self) -> Vec<usize> {
        (0..self.n()).filter(|&u| !self.visited[u]).collect()
    }

    /// Whether every node is visited.
    pub fn is_complete(&self) -> bool {
        self.visited.iter().all(|&b| b)
    }

    /// Orientation a visited subtree at `u` must have.
    pub fn expected_orientation(&self, u: usize) -> Orientation {
        match self.tree.parent(u) {
            Some(p) if self.pos(u).y > self.pos(p).y => Orientation::Downward,
            _ => Orientation::Upward,
        }
    }
}

/// `floor(a * l / sqrt(len2))` for `l >= 0`, `len2 > 0`.
fn floor_scaled(a: &BigInt, l: &BigInt, len2: &BigInt) -> BigInt {
    let num = a * a * l * l;
    let (fl, rem) = num.div_rem(len2);
    let r = fl.sqrt();
    let exact = rem.is_zero() && &r * &r == fl;
    if !a.is_negative() {
        r
    } else if exact {
        -r
    } else {
        -(r + 1u32)
    }
}

/// `ceil(a * l / sqrt(len2))`.
fn ceil_scaled(a: &BigInt, l: &BigInt, len2: &BigInt) -> BigInt {
    -floor_scaled(&-a, l, len2)
}

/// Larger side of a drawing counted in columns or rows, at least one.
pub fn drawing_side(g: &GridDrawing) -> BigInt {
    let (w, h) = bounding_extent(g);
    w.max(h).max(BigInt::one())
}

/// Scales `g` by `B0` and sets up sectors and landing centers.
///
/// The tree must be rooted at a node with at most one child.
pub fn scale_to_partially_canonical(tree: &Arc<OrderedTree>, g: &GridDrawing) -> Result<PartialState, Error> {
    if *g.tree != **tree {
        return Err(Error::Mismatch("drawing does not belong to the tree".into()));
    }
    if tree.children(tree.root()).len() > 1 {
        return Err(Error::Precondition("the tree must be rooted at a leaf".into()));
    }
    let n = tree.len();
    let constants = make_constants(n, drawing_side(g))?;
    let pos: Vec<Point> = g.pos.iter().map(|p| p.scale(&constants.b0)).collect();
    let delta0 = GridDrawing { tree: tree.clone(), pos };
    let mut sectors = vec![None; n];
    let mut landing = vec![None; n];
    let l = constants.landing_distance();
    for (v, u) in tree.edges() {
        let (pv, pu) = (&delta0.pos[v], &delta0.pos[u]);
        let b = pu - pv;
        let len2 = b.norm2();
        if len2.is_zero() {
            return Err(Error::Precondition(format!("nodes {v} and {u} coincide")));
        }
        let cx = &pv.x + floor_scaled(&b.x, &l, &len2);
        let cy = if pu.y <= pv.y {
            &pv.y + floor_scaled(&b.y, &l, &len2)
        } else {
            &pv.y + ceil_scaled(&b.y, &l, &len2)
        };
        landing[u] = Some(Point { x: cx, y: cy });
        sectors[u] =
            Some(Sector { apex: pv.clone(), parent: v, child: u, bisector: b, len2, n, inv_sin: constants.inv_sin() });
    }
    let visited = (0..n).map(|u| tree.is_leaf(u)).collect();
    let state = PartialState { tree: tree.clone(), constants, current: delta0.clone(), delta0, visited, sectors, landing };
    let diag = validate_partially_canonical(&state);
    if !diag.is_green() {
        return Err(Error::Internal(format!("scaled drawing is not partially canonical: {:?}", diag.violations)));
    }
    Ok(state)
}

/// Checks every property of a partially-canonical drawing and lists the violations.
pub fn validate_partially_canonical(state: &PartialState) -> Diagnostics {
    let mut out = Vec::new();
    let tree = &state.tree;
    let n = state.n();
    let pos = &state.current.pos;
    let edges = tree.edges();

    for u in (0..n).filter(|&u| state.visited[u]) {
        let o = state.expected_orientation(u);
        if canonical_offsets(tree, u, o).iter().any(|(w, off)| pos[*w] != &pos[u] + off) {
            out.push(PcViolation::NotCanonical { node: u });
        }
    }

    let unvisited = state.unvisited();
    for &v in &unvisited {
        let kids = tree.children(v);
        for &u in kids {
            let Some(sec) = state.sectors[u].as_ref() else {
                out.push(PcViolation::SectorMissesChildBox { child: u });
                continue;
            };
            if !sec.contains_box(&state.small_box(u)) {
                out.push(PcViolation::SectorMissesChildBox { child: u });
            }
            for w in (0..n).filter(|&w| w != v && !tree.is_ancestor(u, w)) {
                if sec.contains(&pos[w]) {
                    out.push(PcViolation::SectorHoldsNode { child: u, node: w });
                }
            }
            for &(a, b) in &edges {
                if b == u || tree.is_ancestor(u, a) {
                    continue;
                }
                let meets = if a == v || b == v {
                    let other = if a == v { b } else { a };
                    sec.wedge_contains_dir(&(&pos[other] - &pos[v]))
                } else {
                    sec.may_meet_segment(&pos[a], &pos[b])
                };
                if meets {
                    out.push(PcViolation::SectorMeetsEdge { child: u, other: b });
                }
            }
            let landing_ok = match (state.landing_box(u), &state.landing[u]) {
                (Some(bx), Some(c)) => {
                    let m = state.medium_box(v);
                    let inside_m = bx.corners2().iter().all(|q| {
                        (&q.x - &m.center.x * 2u32).abs() <= m.side && (&q.y - &m.center.y * 2u32).abs() <= m.side
                    });
                    let side_ok = (c.y <= pos[v].y) == (pos[u].y <= pos[v].y);
                    inside_m && side_ok && sec.contains_box(&bx)
                }
                _ => false,
            };
            if !landing_ok {
                out.push(PcViolation::LandingBox { child: u });
            }
        }
        for (i, &a) in kids.iter().enumerate() {
            for &b in &kids[i + 1..] {
                if let (Some(sa), Some(sb)) = (&state.sectors[a], &state.sectors[b]) {
                    if !wedges_disjoint(&sa.bisector, &sb.bisector, &sa.inv_sin) {
                        out.push(PcViolation::SectorsOverlap { a, b });
                    }
                }
            }
        }
    }

    for (i, &v) in unvisited.iter().enumerate() {
        let bv = state.big_box(v);
        for &w in &unvisited[i + 1..] {
            if bv.intersects(&state.big_box(w)) {
                out.push(PcViolation::BoxesMeet { v, w });
            }
        }
        for w in (0..n).filter(|&w| w != v) {
            if bv.contains(&pos[w]) {
                out.push(PcViolation::BoxHoldsNode { v, node: w });
            }
        }
        for &(a, b) in &edges {
            if a != v && b != v && bv.meets_segment(&pos[a], &pos[b]) {
                out.push(PcViolation::BoxMeetsEdge { v, edge: b });
            }
        }
        for &x in &unvisited {
            for &u in tree.children(x) {
                if x == v || u == v {
                    continue;
                }
                if let Some(sec) = &state.sectors[u] {
                    if sec.may_meet_box(&bv) {
                        out.push(PcViolation::BoxMeetsSector { v, edge: u });
                    }
                }
            }
        }
    }
    Diagnostics { violations: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_tree;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn scaling_two_node_path() {
        let t = Arc::new(parse_tree("(())").unwrap());
        let g = GridDrawing::new(t.clone(), vec![p(0, 1), p(0, 0)]).unwrap();
        let s = scale_to_partially_canonical(&t, &g).unwrap();
        assert_eq!(s.constants.d0, BigInt::from(2));
        assert_eq!(s.constants.b0, BigInt::from(12800));
        assert_eq!(s.current.pos, vec![p(0, 12800), p(0, 0)]);
        // landing point at distance 600 - 6 below the parent
        assert_eq!(s.landing[1], Some(p(0, 12800 - 594)));
        assert!(validate_partially_canonical(&s).is_green());
    }

    #[test]
    fn single_node_is_vacuous() {
        let t = Arc::new(parse_tree("()").unwrap());
        let g = GridDrawing::new(t.clone(), vec![p(3, 4)]).unwrap();
        let s = scale_to_partially_canonical(&t, &g).unwrap();
        assert_eq!(s.current.pos, vec![p(2400, 3200)]);
        assert!(s.is_complete());
    }

    #[test]
    fn corrupted_node_in_big_box_is_reported() {
        // path 0 - 1 - 2 rooted at the leaf 0
        let t = Arc::new(parse_tree("((()))").unwrap());
        let g = GridDrawing::new(t.clone(), vec![p(0, 0), p(1, 0), p(2, 0)]).unwrap();
        let mut s = scale_to_partially_canonical(&t, &g).unwrap();
        assert!(validate_partially_canonical(&s).is_green());
        // move the leaf 2 into the big box of node 1
        s.current.pos[2] = &s.current.pos[1] + &p(1, 0);
        let d = validate_partially_canonical(&s);
        assert!(d.has_property("box-empty"), "{:?}", d);
    }

    #[test]
    fn rounding_helpers() {
        let l = BigInt::from(3);
        let len2 = BigInt::from(2);
        // 1 * 3 / sqrt(2) = 2.12
        assert_eq!(floor_scaled(&BigInt::from(1), &l, &len2), BigInt::from(2));
        assert_eq!(floor_scaled(&BigInt::from(-1), &l, &len2), BigInt::from(-3));
        assert_eq!(ceil_scaled(&BigInt::from(1), &l, &len2), BigInt::from(3));
        assert_eq!(floor_scaled(&BigInt::from(-2), &BigInt::from(2), &BigInt::from(4)), BigInt::from(-2));
    }
}
