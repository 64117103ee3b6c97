//! Morphs as keyframe sequences and their exact verification.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::drawing::{
    extent_of, order_violation, planarity_violation, strictly_upward_pos, GridDrawing, PlanarityViolation,
};
use crate::error::Error;
use crate::geom::{Point, Rat};
use crate::poly::{AlgRoot, Quad};
use crate::resolution::{resolution_sq_rat, RatPoint};
use crate::tree::OrderedTree;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morph {
    pub tree: Arc<OrderedTree>,
    pub keyframes: Vec<GridDrawing>,
}

/// Drawing standard a morph is verified against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Standard {
    Planar,
    UpwardPlanar,
}

/// A geometric object taking part in a collision. Edges are named by their child node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Element {
    Vertex(usize),
    Edge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepViolation {
    pub first: Element,
    pub second: Element,
    /// Closed rational interval containing the collision time.
    pub time_lo: Rat,
    pub time_hi: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepCertificate {
    pub planar: bool,
    pub upward: bool,
    pub first_violation: Option<StepViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyframeCheck {
    pub planar: bool,
    pub upward: bool,
    pub order_preserving: bool,
}

/// Expected-versus-actual comparison of a proven bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundAudit {
    pub name: String,
    pub bound: BigInt,
    pub actual: BigInt,
}

impl BoundAudit {
    pub fn new(name: &str, bound: impl Into<BigInt>, actual: impl Into<BigInt>) -> Self {
        BoundAudit { name: name.into(), bound: bound.into(), actual: actual.into() }
    }

    pub fn holds(&self) -> bool {
        self.actual <= self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphReport {
    pub standard: Standard,
    pub steps: usize,
    pub width: BigInt,
    pub height: BigInt,
    pub step_certificates: Vec<StepCertificate>,
    pub keyframe_checks: Vec<KeyframeCheck>,
    pub audits: Vec<BoundAudit>,
}

impl MorphReport {
    /// Index of the first step that is not certified for the standard.
    pub fn first_bad_step(&self) -> Option<usize> {
        let up = self.standard == Standard::UpwardPlanar;
        self.step_certificates.iter().position(|c| !c.planar || (up && !c.upward))
    }

    pub fn all_green(&self) -> bool {
        let up = self.standard == Standard::UpwardPlanar;
        self.first_bad_step().is_none()
            && self
                .keyframe_checks
                .iter()
                .all(|k| k.planar && (!up || (k.upward && k.order_preserving)))
            && self.audits.iter().all(BoundAudit::holds)
    }
}

impl Morph {
    pub fn new(tree: Arc<OrderedTree>, keyframes: Vec<GridDrawing>) -> Result<Self, Error> {
        if keyframes.is_empty() {
            return Err(Error::Mismatch("a morph needs at least one keyframe".into()));
        }
        for k in &keyframes {
            if *k.tree != *tree || k.pos.len() != tree.len() {
                return Err(Error::Mismatch("keyframes refer to different trees".into()));
            }
        }
        Ok(Morph { tree, keyframes })
    }

    pub fn steps(&self) -> usize {
        self.keyframes.len() - 1
    }

    pub fn first(&self) -> &GridDrawing {
        &self.keyframes[0]
    }

    pub fn last(&self) -> &GridDrawing {
        self.keyframes.last().unwrap()
    }

    /// Maximum keyframe width and height.
    pub fn extent(&self) -> (BigInt, BigInt) {
        let mut w = BigInt::zero();
        let mut h = BigInt::zero();
        for k in &self.keyframes {
            let (a, b) = extent_of(&k.pos);
            w = w.max(a);
            h = h.max(b);
        }
        (w, h)
    }

    /// Removes consecutive duplicate keyframes.
    pub fn collapse_null_steps(&mut self) {
        self.keyframes.dedup_by(|a, b| a.pos == b.pos);
    }

    /// `self` followed by `other`; the last keyframe of `self` must equal the first of `other`.
    pub fn concat(mut self, other: Morph) -> Result<Morph, Error> {
        if self.last().pos != other.first().pos {
            return Err(Error::Mismatch("morphs do not share the junction drawing".into()));
        }
        self.keyframes.extend(other.keyframes.into_iter().skip(1));
        Ok(self)
    }

    pub fn reversed(mut self) -> Morph {
        self.keyframes.reverse();
        self
    }

    /// Greedily drops intermediate keyframes while the direct linear step
    /// from the last kept keyframe stays certified. Keyframes must be planar.
    pub fn merge_certified_steps(&mut self, require_upward: bool) {
        let kf = core::mem::take(&mut self.keyframes);
        let mut out = Vec::with_capacity(kf.len());
        let mut i = 0;
        out.push(kf[0].clone());
        while i + 1 < kf.len() {
            let mut j = i + 1;
            while j + 1 < kf.len() {
                let c = certify_step(&self.tree, &kf[i].pos, &kf[j + 1].pos, require_upward);
                if !(c.planar && c.upward) {
                    break;
                }
                j += 1;
            }
            out.push(kf[j].clone());
            i = j;
        }
        self.keyframes = out;
    }
}

/// Product of two linear polynomials `(b1 t + c1)(b2 t + c2)`.
fn mul_lin(b1: &BigInt, c1: &BigInt, b2: &BigInt, c2: &BigInt) -> Quad {
    Quad::new(b1 * b2, b1 * c2 + c1 * b2, c1 * c2)
}

fn sub_q(p: Quad, o: Quad) -> Quad {
    Quad::new(p.a - o.a, p.b - o.b, p.c - o.c)
}

fn add_q(p: Quad, o: Quad) -> Quad {
    Quad::new(p.a + o.a, p.b + o.b, p.c + o.c)
}

/// Relative linear motion `q(t) - p(t)` as start and velocity per coordinate.
struct Rel {
    x0: BigInt,
    vx: BigInt,
    y0: BigInt,
    vy: BigInt,
}

fn rel(a0: &Point, a1: &Point, b0: &Point, b1: &Point) -> Rel {
    let x0 = &b0.x - &a0.x;
    let y0 = &b0.y - &a0.y;
    Rel { vx: (&b1.x - &a1.x) - &x0, vy: (&b1.y - &a1.y) - &y0, x0, y0 }
}

fn cross_q(e: &Rel, f: &Rel) -> Quad {
    sub_q(mul_lin(&e.vx, &e.x0, &f.vy, &f.y0), mul_lin(&e.vy, &e.y0, &f.vx, &f.x0))
}

fn dot_q(e: &Rel, f: &Rel) -> Quad {
    add_q(mul_lin(&e.vx, &e.x0, &f.vx, &f.x0), mul_lin(&e.vy, &e.y0, &f.vy, &f.y0))
}

fn nonneg_at(g: &Quad, r: &AlgRoot) -> bool {
    g.sign_at(r) != Ordering::Less
}

/// Earliest time in `(0, 1)` where the moving vertex `p` meets the closed moving segment `ab`.
fn vertex_edge_collision(p: (&Point, &Point), a: (&Point, &Point), b: (&Point, &Point)) -> Option<AlgRoot> {
    let e = rel(a.0, a.1, b.0, b.1);
    let f = rel(a.0, a.1, p.0, p.1);
    let g = rel(p.0, p.1, b.0, b.1);
    let c = cross_q(&e, &f);
    let d = dot_q(&e, &f);
    let fq = dot_q(&e, &g);
    let hit = |r: &AlgRoot| c.sign_at(r) == Ordering::Equal && nonneg_at(&d, r) && nonneg_at(&fq, r);
    let mut cands: Vec<AlgRoot> = Vec::new();
    if !c.is_zero() {
        cands.extend(c.roots_in_unit());
    } else {
        if !d.is_zero() {
            cands.extend(d.roots_in_unit());
        }
        if !fq.is_zero() {
            cands.extend(fq.roots_in_unit());
        }
        if d.is_zero() && fq.is_zero() {
            cands.push(AlgRoot::rational(BigInt::one(), BigInt::from(2)));
        }
    }
    let mut best: Option<AlgRoot> = None;
    for r in cands.into_iter().filter(hit) {
        let better = match &best {
            None => true,
            Some(b) => root_cmp(&r, b) == Ordering::Less,
        };
        if better {
            best = Some(r);
        }
    }
    best
}

/// Order on roots that may come from different quadratics.
fn root_cmp(x: &AlgRoot, y: &AlgRoot) -> Ordering {
    if let Some(v) = y.to_rat() {
        return x.cmp_rat(&v);
    }
    if let Some(v) = x.to_rat() {
        return y.cmp_rat(&v).reverse();
    }
    let mut bits = 32;
    loop {
        let (xl, xh) = x.enclose(bits);
        let (yl, yh) = y.enclose(bits);
        if xh < yl {
            return Ordering::Less;
        }
        if yh < xl {
            return Ordering::Greater;
        }
        if bits > 512 {
            return Ordering::Equal;
        }
        bits *= 2;
    }
}

fn vertex_vertex_collision(p: (&Point, &Point), q: (&Point, &Point)) -> Option<AlgRoot> {
    let r = rel(p.0, p.1, q.0, q.1);
    let dx = Quad::linear(r.vx.clone(), r.x0.clone());
    let dy = Quad::linear(r.vy.clone(), r.y0.clone());
    let (probe, other) = if dx.is_zero() { (&dy, &dx) } else { (&dx, &dy) };
    if probe.is_zero() {
        return Some(AlgRoot::rational(BigInt::one(), BigInt::from(2)));
    }
    probe.roots_in_unit().into_iter().find(|t| other.sign_at(t) == Ordering::Equal)
}

type Bbox = (BigInt, BigInt, BigInt, BigInt);

fn bbox(pts: &[&Point]) -> Bbox {
    let minx = pts.iter().map(|p| &p.x).min().unwrap().clone();
    let maxx = pts.iter().map(|p| &p.x).max().unwrap().clone();
    let miny = pts.iter().map(|p| &p.y).min().unwrap().clone();
    let maxy = pts.iter().map(|p| &p.y).max().unwrap().clone();
    (minx, maxx, miny, maxy)
}

fn boxes_meet(a: &Bbox, b: &Bbox) -> bool {
    a.0 <= b.1 && b.0 <= a.1 && a.2 <= b.3 && b.2 <= a.3
}

fn violation_from_endpoint(v: PlanarityViolation, t: Rat) -> StepViolation {
    let (first, second) = match v {
        PlanarityViolation::Coincident(a, b) => (Element::Vertex(a), Element::Vertex(b)),
        PlanarityViolation::NodeOnEdge { node, edge } => (Element::Vertex(node), Element::Edge(edge.1)),
        PlanarityViolation::Crossing(e1, e2) => (Element::Edge(e1.1), Element::Edge(e2.1)),
    };
    StepViolation { first, second, time_lo: t.clone(), time_hi: t }
}

/// Exact planarity certificate of the linear morph from `a` to `b`.
///
/// The reported violation is the lexicographically smallest colliding
/// (vertex, element) pair, with vertices ordered before edges.
pub fn verify_linear_step(a: &GridDrawing, b: &GridDrawing, require_upward: bool) -> Result<StepCertificate, Error> {
    if *a.tree != *b.tree || a.pos.len() != b.pos.len() {
        return Err(Error::Mismatch("step endpoints refer to different trees".into()));
    }
    if planarity_violation(&a.tree, &a.pos).is_some() || planarity_violation(&b.tree, &b.pos).is_some() {
        return Err(Error::Precondition("step endpoint is not planar".into()));
    }
    Ok(certify_step(&a.tree, &a.pos, &b.pos, require_upward))
}

/// Step certificate for planar endpoints given as raw positions.
pub fn certify_step(tree: &OrderedTree, pa: &[Point], pb: &[Point], require_upward: bool) -> StepCertificate {
    let upward = !require_upward || (strictly_upward_pos(tree, pa) && strictly_upward_pos(tree, pb));
    let violation = if pa == pb { None } else { first_collision(tree, pa, pb) };
    StepCertificate { planar: violation.is_none(), upward, first_violation: violation }
}

fn first_collision(tree: &OrderedTree, pa: &[Point], pb: &[Point]) -> Option<StepViolation> {
    let n = pa.len();
    let edges = tree.edges();
    let vbox: Vec<Bbox> = (0..n).map(|u| bbox(&[&pa[u], &pb[u]])).collect();
    let ebox: Vec<Bbox> = edges.iter().map(|&(p, c)| bbox(&[&pa[p], &pb[p], &pa[c], &pb[c]])).collect();
    let report = |u: usize, e: Element, r: AlgRoot| {
        let (lo, hi) = r.enclose(24);
        StepViolation { first: Element::Vertex(u), second: e, time_lo: lo, time_hi: hi }
    };
    for u in 0..n {
        let moving_u = pa[u] != pb[u];
        for v in u + 1..n {
            if (!moving_u && pa[v] == pb[v]) || !boxes_meet(&vbox[u], &vbox[v]) {
                continue;
            }
            if let Some(r) = vertex_vertex_collision((&pa[u], &pb[u]), (&pa[v], &pb[v])) {
                return Some(report(u, Element::Vertex(v), r));
            }
        }
        for (i, &(p, c)) in edges.iter().enumerate() {
            if u == p || u == c || !boxes_meet(&vbox[u], &ebox[i]) {
                continue;
            }
            if !moving_u && pa[p] == pb[p] && pa[c] == pb[c] {
                continue;
            }
            if let Some(r) = vertex_edge_collision((&pa[u], &pb[u]), (&pa[p], &pb[p]), (&pa[c], &pb[c])) {
                return Some(report(u, Element::Edge(c), r));
            }
        }
    }
    None
}

/// Verifies every keyframe and every step of `m`.
pub fn verify_morph(m: &Morph, standard: Standard) -> Result<MorphReport, Error> {
    let tree = &m.tree;
    for k in &m.keyframes {
        if *k.tree != **tree || k.pos.len() != tree.len() {
            return Err(Error::Mismatch("keyframes refer to different trees".into()));
        }
    }
    let up = standard == Standard::UpwardPlanar;
    let mut keyframe_checks = Vec::with_capacity(m.keyframes.len());
    let mut endpoint_violation = Vec::with_capacity(m.keyframes.len());
    for k in &m.keyframes {
        let pv = planarity_violation(tree, &k.pos);
        keyframe_checks.push(KeyframeCheck {
            planar: pv.is_none(),
            upward: strictly_upward_pos(tree, &k.pos),
            order_preserving: order_violation(tree, &k.pos).is_none(),
        });
        endpoint_violation.push(pv);
    }
    let mut step_certificates = Vec::with_capacity(m.steps());
    for i in 0..m.steps() {
        let upward = !up || (keyframe_checks[i].upward && keyframe_checks[i + 1].upward);
        let cert = match (&endpoint_violation[i], &endpoint_violation[i + 1]) {
            (Some(v), _) => StepCertificate {
                planar: false,
                upward,
                first_violation: Some(violation_from_endpoint(v.clone(), Rat::zero())),
            },
            (None, Some(v)) => StepCertificate {
                planar: false,
                upward,
                first_violation: Some(violation_from_endpoint(v.clone(), Rat::one())),
            },
            (None, None) => certify_step(tree, &m.keyframes[i].pos, &m.keyframes[i + 1].pos, up),
        };
        step_certificates.push(cert);
    }
    let (width, height) = m.extent();
    Ok(MorphReport { standard, steps: m.steps(), width, height, step_certificates, keyframe_checks, audits: Vec::new() })
}

/// Whether every node keeps its y-coordinate.
pub fn is_unidirectional_equal_y(a: &GridDrawing, b: &GridDrawing) -> bool {
    a.pos.len() == b.pos.len() && a.pos.iter().zip(&b.pos).all(|(p, q)| p.y == q.y)
}

/// Estimated maximum squared resolution over the morph.
///
/// Each step is sampled at `samples_per_step` evenly spaced times plus every
/// time in `(0, 1)` at which some pair of vertices is closest. Between samples
/// a vertex may come closer to an edge than observed, so the true maximum can
/// exceed the estimate.
pub fn morph_resolution_estimate(m: &Morph, samples_per_step: usize) -> Result<Rat, Error> {
    if samples_per_step < 2 {
        return Err(Error::Precondition("at least two samples per step are required".into()));
    }
    let n = m.tree.len();
    if n < 2 {
        return Ok(Rat::one());
    }
    let degenerate = || Error::Precondition("morph passes through a degenerate drawing".into());
    if m.keyframes.len() == 1 {
        let pos: Vec<RatPoint> = m.keyframes[0].pos.iter().map(RatPoint::from_point).collect();
        return resolution_sq_rat(&m.tree, &pos).ok_or_else(degenerate);
    }
    let mut best = Rat::zero();
    for w in m.keyframes.windows(2) {
        let (pa, pb) = (&w[0].pos, &w[1].pos);
        let last = BigInt::from(samples_per_step - 1);
        let mut times: Vec<Rat> = (0..samples_per_step).map(|i| Rat::new(BigInt::from(i), last.clone())).collect();
        for u in 0..n {
            for v in u + 1..n {
                let r = rel(&pa[u], &pb[u], &pa[v], &pb[v]);
                let a = &r.vx * &r.vx + &r.vy * &r.vy;
                if a.is_zero() {
                    continue;
                }
                let b = BigInt::from(2) * (&r.x0 * &r.vx + &r.y0 * &r.vy);
                let t = Rat::new(-b, BigInt::from(2) * a);
                if t.is_positive() && t < Rat::one() {
                    times.push(t);
                }
            }
        }
        times.sort();
        times.dedup();
        for t in times {
            let pos: Vec<RatPoint> = (0..n)
                .map(|u| {
                    let x0 = Rat::from_integer(pa[u].x.clone());
                    let y0 = Rat::from_integer(pa[u].y.clone());
                    let x1 = Rat::from_integer(pb[u].x.clone());
                    let y1 = Rat::from_integer(pb[u].y.clone());
                    RatPoint { x: &x0 + (x1 - &x0) * &t, y: &y0 + (y1 - &y0) * &t }
                })
                .collect();
            let r = resolution_sq_rat(&m.tree, &pos).ok_or_else(degenerate)?;
            if r > best {
                best = r;
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_tree;
    use alloc::vec;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    fn star() -> Arc<OrderedTree> {
        Arc::new(parse_tree("(()())").unwrap())
    }

    #[test]
    fn static_step_is_planar() {
        let g = GridDrawing::new(star(), vec![p(0, 0), p(-1, -1), p(1, -1)]).unwrap();
        let c = verify_linear_step(&g, &g, true).unwrap();
        assert!(c.planar && c.upward && c.first_violation.is_none());
    }

    #[test]
    fn swap_collides_at_half() {
        let t = star();
        let a = GridDrawing::new(t.clone(), vec![p(0, 0), p(-1, -1), p(1, -1)]).unwrap();
        let b = GridDrawing::new(t, vec![p(0, 0), p(1, -1), p(-1, -1)]).unwrap();
        let c = verify_linear_step(&a, &b, false).unwrap();
        assert!(!c.planar);
        let v = c.first_violation.unwrap();
        assert_eq!((v.first, v.second), (Element::Vertex(1), Element::Vertex(2)));
        let half = Rat::new(1.into(), 2.into());
        assert_eq!((v.time_lo, v.time_hi), (half.clone(), half));
    }

    #[test]
    fn vertex_crosses_edge() {
        let t = star();
        let a = GridDrawing::new(t.clone(), vec![p(0, 0), p(0, -4), p(-2, -2)]).unwrap();
        let b = GridDrawing::new(t, vec![p(0, 0), p(0, -4), p(2, -3)]).unwrap();
        let c = verify_linear_step(&a, &b, true).unwrap();
        assert!(!c.planar);
        assert_eq!(c.first_violation.unwrap().second, Element::Edge(1));
    }

    #[test]
    fn irrational_collision_time() {
        // the vertex meets the edge at t = 1/sqrt(2)
        let t = star();
        let a = GridDrawing::new(t.clone(), vec![p(0, 0), p(0, -10), p(-1, -5)]).unwrap();
        let b = GridDrawing::new(t, vec![p(0, 0), p(10, -10), p(4, -3)]).unwrap();
        let c = verify_linear_step(&a, &b, false).unwrap();
        assert!(!c.planar);
        let v = c.first_violation.unwrap();
        assert_eq!((v.first, v.second), (Element::Vertex(2), Element::Edge(1)));
        let t = Rat::new(7071.into(), 10000.into());
        assert!(v.time_lo < v.time_hi && v.time_lo > t && v.time_hi < t + Rat::new(1.into(), 10000.into()));
    }

    #[test]
    fn report_extent_and_steps() {
        let t = star();
        let g = GridDrawing::new(t.clone(), vec![p(0, 0), p(-1, -1), p(1, -1)]).unwrap();
        let m = Morph::new(t, vec![g.clone(), g]).unwrap();
        let r = verify_morph(&m, Standard::UpwardPlanar).unwrap();
        assert!(r.all_green());
        assert_eq!((r.steps, r.width, r.height), (1, BigInt::from(3), BigInt::from(2)));
    }

    #[test]
    fn resolution_of_static_pair() {
        let t = Arc::new(parse_tree("(())").unwrap());
        let g = GridDrawing::new(t.clone(), vec![p(0, 0), p(0, 1)]).unwrap();
        let m = Morph::new(t, vec![g.clone(), g]).unwrap();
        assert_eq!(morph_resolution_estimate(&m, 3).unwrap(), Rat::one());
    }
}
