//! `O(n)`-step planar morph between any two order-preserving planar grid
//! drawings of the same ordered tree.
//!
//! Each drawing is scaled up, then the internal nodes are visited bottom-up;
//! a visit relocates the children of a node so that its subtree becomes
//! canonical. Both runs end at translates of the same upward canonical
//! drawing, which are joined by one translation.

pub mod constants;
pub mod pinwheel;
pub mod sector;
pub mod state;
pub mod visit;

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::drawing::{
    canonical_offsets, cyclic_order_violation, extent_of, is_translate_of, planarity_violation, GridDrawing,
    Orientation,
};
use crate::error::Error;
use crate::morph::{certify_step, BoundAudit, Morph};
use crate::tree::{postorder_internal, reroot_at_leaf, OrderedTree};

pub use constants::{make_constants, validate_constants, AlgorithmConstants};
pub use pinwheel::pinwheel_step;
pub use sector::Sector;
pub use state::{scale_to_partially_canonical, validate_partially_canonical, Diagnostics, PartialState, PcViolation};
pub use visit::visit_morph;

/// Steps spent on one visit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisitRecord {
    /// 0 for the run from the source drawing, 1 for the run from the target.
    pub run: usize,
    pub node: usize,
    pub children: usize,
    pub steps: usize,
}

/// A general morph together with the data gathered while building it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralMorphReport {
    pub morph: Morph,
    /// Steps before null steps were removed and certified steps merged.
    pub raw_steps: usize,
    pub visits: Vec<VisitRecord>,
    /// Width and height bounds of each run, checked on its raw keyframes.
    pub audits: Vec<BoundAudit>,
    pub constants: [AlgorithmConstants; 2],
    /// Number of partially-canonical checks that came out green.
    pub validations: usize,
}

struct Run {
    keyframes: Vec<GridDrawing>,
    constants: AlgorithmConstants,
    visits: Vec<VisitRecord>,
    audits: Vec<BoundAudit>,
    validations: usize,
}

fn run_to_canonical(tree: &Arc<OrderedTree>, g: &GridDrawing, run: usize) -> Result<Run, Error> {
    let start = GridDrawing { tree: tree.clone(), pos: g.pos.clone() };
    let mut state = scale_to_partially_canonical(tree, &start)?;
    let mut validations = 1;
    let delta0 = state.current.clone();
    if !certify_step(tree, &start.pos, &delta0.pos, false).planar {
        return Err(Error::Internal("scaling step is not planar".into()));
    }
    let mut keyframes = vec![start, delta0.clone()];
    let mut visits = Vec::new();
    for v in postorder_internal(tree) {
        let (frames, next) = visit_morph(&state, v)?;
        visits.push(VisitRecord { run, node: v, children: tree.children(v).len(), steps: frames.len() });
        keyframes.extend(frames);
        state = next;
        let diag = validate_partially_canonical(&state);
        if !diag.is_green() {
            return Err(Error::Internal(format!("state after visiting {v} is not partially canonical: {:?}", diag.violations)));
        }
        validations += 1;
    }
    let root = tree.root();
    let anchor = state.pos(root).clone();
    if canonical_offsets(tree, root, Orientation::Upward).iter().any(|(w, off)| *state.pos(*w) != &anchor + off) {
        return Err(Error::Internal("run did not end at the upward canonical drawing".into()));
    }
    let c = &state.constants;
    let (w0, h0) = extent_of(&delta0.pos);
    let slack = &c.ell0 + BigInt::from(4 * c.n);
    let (mut w, mut h) = (BigInt::from(0), BigInt::from(0));
    for k in &keyframes[1..] {
        let (a, b) = extent_of(&k.pos);
        w = w.max(a);
        h = h.max(b);
    }
    let audits = vec![
        BoundAudit::new(&format!("run {run} width"), w0 + &slack, w),
        BoundAudit::new(&format!("run {run} height"), h0 + &slack, h),
    ];
    Ok(Run { keyframes, constants: state.constants.clone(), visits, audits, validations })
}

/// Builds the general morph and reports step counts, audits and constants.
pub fn morph_general_detailed(
    tree: &Arc<OrderedTree>,
    g0: &GridDrawing,
    g1: &GridDrawing,
) -> Result<GeneralMorphReport, Error> {
    for g in [g0, g1] {
        if *g.tree != **tree || g.pos.len() != tree.len() {
            return Err(Error::Mismatch("drawing does not belong to the tree".into()));
        }
        if let Some(bad) = planarity_violation(tree, &g.pos) {
            return Err(Error::Precondition(format!("drawing is not planar: {bad:?}")));
        }
        if let Some(u) = cyclic_order_violation(tree, &g.pos) {
            return Err(Error::Precondition(format!("drawing does not preserve the edge order at node {u}")));
        }
    }
    let rerooted = Arc::new(reroot_at_leaf(tree));
    let r0 = run_to_canonical(&rerooted, g0, 0)?;
    let r1 = run_to_canonical(&rerooted, g1, 1)?;
    let end0 = r0.keyframes.last().unwrap();
    let end1 = r1.keyframes.last().unwrap();
    if !is_translate_of(&end0.pos, &end1.pos) {
        return Err(Error::Internal("terminal drawings are not translates of each other".into()));
    }
    let mut keyframes: Vec<GridDrawing> = Vec::with_capacity(r0.keyframes.len() + r1.keyframes.len());
    keyframes.extend(r0.keyframes.iter().cloned());
    keyframes.extend(r1.keyframes.iter().rev().cloned());
    let keyframes: Vec<GridDrawing> =
        keyframes.into_iter().map(|k| GridDrawing { tree: tree.clone(), pos: k.pos }).collect();
    let mut morph = Morph::new(tree.clone(), keyframes)?;
    let raw_steps = morph.steps();
    morph.collapse_null_steps();
    morph.merge_certified_steps(false);
    let mut visits = r0.visits;
    visits.extend(r1.visits);
    let mut audits = r0.audits;
    audits.extend(r1.audits);
    Ok(GeneralMorphReport {
        morph,
        raw_steps,
        visits,
        audits,
        constants: [r0.constants, r1.constants],
        validations: r0.validations + r1.validations,
    })
}

/// Planar morph with `O(n)` steps between two order-preserving planar grid
/// drawings of `tree`.
pub fn morph_general(tree: &Arc<OrderedTree>, g0: &GridDrawing, g1: &GridDrawing) -> Result<Morph, Error> {
    Ok(morph_general_detailed(tree, g0, g1)?.morph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;
    use crate::morph::{verify_morph, Standard};
    use crate::tree::parse_tree;

    fn drawing(t: &Arc<OrderedTree>, pts: &[(i64, i64)]) -> GridDrawing {
        GridDrawing::new(t.clone(), pts.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn single_node() {
        let t = Arc::new(parse_tree("()").unwrap());
        let g = drawing(&t, &[(0, 0)]);
        let m = morph_general(&t, &g, &g).unwrap();
        assert!(m.steps() <= 3);
        assert!(verify_morph(&m, Standard::Planar).unwrap().all_green());
    }

    #[test]
    fn two_node_path() {
        let t = Arc::new(parse_tree("(())").unwrap());
        let g = drawing(&t, &[(0, 1), (0, 0)]);
        let r = morph_general_detailed(&t, &g, &g).unwrap();
        assert!(r.audits.iter().all(BoundAudit::holds));
        assert!(verify_morph(&r.morph, Standard::Planar).unwrap().all_green());
        assert_eq!(r.morph.first().pos, g.pos);
        assert_eq!(r.morph.last().pos, g.pos);
    }

    #[test]
    fn star_flipped() {
        let t = Arc::new(parse_tree("(()()())").unwrap());
        let g0 = drawing(&t, &[(0, 0), (-1, -1), (0, -1), (1, -1)]);
        let g1 = drawing(&t, &[(0, 0), (1, 1), (0, 1), (-1, 1)]);
        let r = morph_general_detailed(&t, &g0, &g1).unwrap();
        assert!(verify_morph(&r.morph, Standard::Planar).unwrap().all_green());
        assert!(r.audits.iter().all(BoundAudit::holds));
        assert!(r.morph.steps() <= 5 * 4 + 10);
        for v in &r.visits {
            assert!(v.steps <= 5 * v.children + 2);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let t = Arc::new(parse_tree("(()()())").unwrap());
        let good = drawing(&t, &[(0, 0), (-1, -1), (0, -1), (1, -1)]);
        let swapped = drawing(&t, &[(0, 0), (1, -1), (0, -1), (-1, -1)]);
        assert!(matches!(morph_general(&t, &good, &swapped), Err(Error::Precondition(_))));
        let collinear = drawing(&t, &[(0, 0), (1, 0), (2, 0), (0, 1)]);
        assert!(matches!(morph_general(&t, &good, &collinear), Err(Error::Precondition(_))));
    }
}
