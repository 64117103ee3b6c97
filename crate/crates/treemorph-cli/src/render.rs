//! Animated SVG rendering of morphs.

use std::fmt::Write;

use treemorph::resolution::RatPoint;
use treemorph::OrderedTree;

use crate::io::rat_to_f64;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Morph steps shown per second.
    pub steps_per_second: f64,
    /// Output width in pixels; the height follows the aspect ratio.
    pub pixel_width: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { steps_per_second: 1.0, pixel_width: 640.0 }
    }
}

/// Fixed-precision number with trailing zeros removed.
fn num(v: f64) -> String {
    let mut s = format!("{v:.4}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

struct View {
    min_x: f64,
    min_y: f64,
    width: f64,
    height: f64,
}

/// Bounding box of all keyframes with the y axis flipped, padded by 5% per side.
fn view_of(frames: &[Vec<(f64, f64)>]) -> View {
    let pts = frames.iter().flatten();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x0 > x1 {
        (x0, x1, y0, y1) = (0.0, 0.0, 0.0, 0.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1.0);
    let pad_x = 0.05 * (x1 - x0).max(span * 0.2);
    let pad_y = 0.05 * (y1 - y0).max(span * 0.2);
    View { min_x: x0 - pad_x, min_y: y0 - pad_y, width: x1 - x0 + 2.0 * pad_x, height: y1 - y0 + 2.0 * pad_y }
}

fn screen(frames: &[Vec<RatPoint>]) -> Vec<Vec<(f64, f64)>> {
    frames.iter().map(|k| k.iter().map(|p| (rat_to_f64(&p.x), -rat_to_f64(&p.y))).collect()).collect()
}

fn animate(out: &mut String, attr: &str, values: &[f64], key_times: &str, dur: &str) {
    let vals: Vec<String> = values.iter().map(|&v| num(v)).collect();
    let _ = write!(
        out,
        "<animate attributeName=\"{attr}\" values=\"{}\" keyTimes=\"{key_times}\" dur=\"{dur}\" calcMode=\"linear\" repeatCount=\"indefinite\"/>",
        vals.join(";")
    );
}

/// SVG document animating the keyframes at constant speed per step.
/// A single keyframe gives a static picture.
pub fn render_morph(tree: &OrderedTree, frames: &[Vec<RatPoint>], opts: &RenderOptions) -> String {
    let pts = screen(frames);
    let view = view_of(&pts);
    let scale = view.width.max(view.height);
    let radius = scale * 0.012;
    let stroke = scale * 0.005;
    let pixel_height = opts.pixel_width * view.height / view.width;
    let animated = pts.len() > 1;
    let steps = pts.len().saturating_sub(1);
    let key_times = (0..pts.len()).map(|i| num(i as f64 / steps.max(1) as f64)).collect::<Vec<_>>().join(";");
    let dur = format!("{}s", num(steps as f64 / opts.steps_per_second));

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        num(opts.pixel_width),
        num(pixel_height),
        num(view.min_x),
        num(view.min_y),
        num(view.width),
        num(view.height)
    );
    let _ = writeln!(out, "<g stroke=\"#333\" stroke-width=\"{}\">", num(stroke));
    for (p, c) in tree.edges() {
        let first = &pts[0];
        let _ = write!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\">",
            num(first[p].0),
            num(first[p].1),
            num(first[c].0),
            num(first[c].1)
        );
        if animated {
            let col = |u: usize, k: usize| -> Vec<f64> {
                pts.iter().map(|f| if k == 0 { f[u].0 } else { f[u].1 }).collect()
            };
            animate(&mut out, "x1", &col(p, 0), &key_times, &dur);
            animate(&mut out, "y1", &col(p, 1), &key_times, &dur);
            animate(&mut out, "x2", &col(c, 0), &key_times, &dur);
            animate(&mut out, "y2", &col(c, 1), &key_times, &dur);
        }
        out.push_str("</line>\n");
    }
    out.push_str("</g>\n<g fill=\"#1f77b4\">\n");
    for u in 0..tree.len() {
        let first = &pts[0];
        let _ = write!(out, "<circle cx=\"{}\" cy=\"{}\" r=\"{}\">", num(first[u].0), num(first[u].1), num(radius));
        if animated {
            let xs: Vec<f64> = pts.iter().map(|f| f[u].0).collect();
            let ys: Vec<f64> = pts.iter().map(|f| f[u].1).collect();
            animate(&mut out, "cx", &xs, &key_times, &dur);
            animate(&mut out, "cy", &ys, &key_times, &dur);
        }
        out.push_str("</circle>\n");
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use treemorph::geom::Rat;
    use treemorph::tree::parse_tree;

    fn rp(x: i64, y: i64) -> RatPoint {
        RatPoint::new(Rat::from_integer(BigInt::from(x)), Rat::from_integer(BigInt::from(y)))
    }

    #[test]
    fn static_keyframe_has_no_animation() {
        let t = parse_tree("(())").unwrap();
        let svg = render_morph(&t, &[vec![rp(0, 0), rp(0, -1)]], &RenderOptions::default());
        assert!(!svg.contains("<animate"));
        assert_eq!(svg.matches("<circle").count(), 2);
    }

    #[test]
    fn key_times_follow_keyframes() {
        let t = parse_tree("(())").unwrap();
        let frames = vec![vec![rp(0, 0), rp(0, -1)]; 4];
        let svg = render_morph(&t, &frames, &RenderOptions::default());
        assert!(svg.contains("keyTimes=\"0;0.3333;0.6667;1\""));
        assert!(svg.contains("dur=\"3s\""));
    }

    #[test]
    fn viewbox_is_padded() {
        let t = parse_tree("(())").unwrap();
        let svg = render_morph(&t, &[vec![rp(0, 0), rp(10, -10)]], &RenderOptions::default());
        assert!(svg.contains("viewBox=\"-0.5 -0.5 11 11\""), "{svg}");
        assert_eq!(num(-0.00001), "0");
    }
}
