//! JSON drawing and morph files.
//!
//! Coordinates are JSON integers when their magnitude is below `2^53` and
//! decimal strings otherwise. Rational coordinates are `"p/q"` strings; real
//! drawings also accept decimal strings such as `"1.25"`.

use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use treemorph::resolution::{RatPoint, RealDrawing};
use treemorph::tree::{parse_tree, serialize_tree};
use treemorph::{GridDrawing, Morph, OrderedTree, Point};

pub const SCHEMA_VERSION: u32 = 1;

const SAFE_INT: i64 = 1 << 53;

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Format(String),
    Invalid(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "io: {m}"),
            CliError::Format(m) => write!(f, "format: {m}"),
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<treemorph::Error> for CliError {
    fn from(e: treemorph::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

/// One coordinate as stored in a file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Int(i64),
    Text(String),
}

impl Coord {
    pub fn from_int(v: &BigInt) -> Coord {
        match v.to_i64() {
            Some(x) if x.abs() < SAFE_INT => Coord::Int(x),
            _ => Coord::Text(v.to_string()),
        }
    }

    pub fn from_rat(v: &BigRational) -> Coord {
        if v.is_integer() {
            Coord::from_int(v.numer())
        } else {
            Coord::Text(format!("{}/{}", v.numer(), v.denom()))
        }
    }

    pub fn to_rat(&self) -> Result<BigRational, CliError> {
        match self {
            Coord::Int(x) => Ok(BigRational::from_integer(BigInt::from(*x))),
            Coord::Text(s) => parse_rational(s),
        }
    }

    pub fn to_int(&self) -> Result<BigInt, CliError> {
        let r = self.to_rat()?;
        if r.is_integer() {
            Ok(r.to_integer())
        } else {
            Err(CliError::Invalid(format!("coordinate {} is not an integer", r)))
        }
    }
}

/// Parses `"p"`, `"p/q"` or a decimal such as `"-1.25"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Format(format!("cannot parse coordinate {s:?}"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int = int.trim_start_matches(['-', '+']);
        let whole: BigInt = if int.is_empty() { BigInt::zero() } else { int.parse().map_err(|_| bad())? };
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let v = BigRational::new(whole * &den + f, den);
        return Ok(if neg { -v } else { v });
    }
    s.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawingFile {
    pub schema: u32,
    /// Balanced-parenthesis tree; nodes are numbered in preorder.
    pub tree: String,
    pub positions: Vec<[Coord; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub name: String,
    pub bound: Coord,
    pub actual: Coord,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphMetadata {
    pub algorithm: String,
    pub steps: usize,
    #[serde(default)]
    pub bounds: Vec<BoundEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphFile {
    pub schema: u32,
    pub tree: String,
    pub keyframes: Vec<Vec<[Coord; 2]>>,
    pub metadata: MorphMetadata,
}

fn check_schema(v: u32) -> Result<(), CliError> {
    if v == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(CliError::Format(format!("unsupported schema version {v}")))
    }
}

fn tree_of(text: &str) -> Result<Arc<OrderedTree>, CliError> {
    Ok(Arc::new(parse_tree(text)?))
}

fn grid_coords(pos: &[Point]) -> Vec<[Coord; 2]> {
    pos.iter().map(|p| [Coord::from_int(&p.x), Coord::from_int(&p.y)]).collect()
}

fn rat_coords(pos: &[RatPoint]) -> Vec<[Coord; 2]> {
    pos.iter().map(|p| [Coord::from_rat(&p.x), Coord::from_rat(&p.y)]).collect()
}

fn grid_points(c: &[[Coord; 2]]) -> Result<Vec<Point>, CliError> {
    c.iter().map(|[x, y]| Ok(Point { x: x.to_int()?, y: y.to_int()? })).collect()
}

fn rat_points(c: &[[Coord; 2]]) -> Result<Vec<RatPoint>, CliError> {
    c.iter().map(|[x, y]| Ok(RatPoint::new(x.to_rat()?, y.to_rat()?))).collect()
}

impl DrawingFile {
    pub fn from_grid(g: &GridDrawing) -> Self {
        DrawingFile { schema: SCHEMA_VERSION, tree: serialize_tree(&g.tree), positions: grid_coords(&g.pos) }
    }

    pub fn from_real(g: &RealDrawing) -> Self {
        DrawingFile { schema: SCHEMA_VERSION, tree: serialize_tree(&g.tree), positions: rat_coords(&g.pos) }
    }

    pub fn to_grid(&self) -> Result<GridDrawing, CliError> {
        check_schema(self.schema)?;
        Ok(GridDrawing::new(tree_of(&self.tree)?, grid_points(&self.positions)?)?)
    }

    pub fn to_real(&self) -> Result<RealDrawing, CliError> {
        check_schema(self.schema)?;
        Ok(RealDrawing::new(tree_of(&self.tree)?, rat_points(&self.positions)?)?)
    }
}

/// A morph whose keyframes may have rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealMorph {
    pub tree: Arc<OrderedTree>,
    pub keyframes: Vec<Vec<RatPoint>>,
}

impl RealMorph {
    /// The grid morph, when every coordinate is an integer.
    pub fn to_grid(&self) -> Option<Morph> {
        let mut frames = Vec::with_capacity(self.keyframes.len());
        for k in &self.keyframes {
            let mut pos = Vec::with_capacity(k.len());
            for p in k {
                if !p.x.is_integer() || !p.y.is_integer() {
                    return None;
                }
                pos.push(Point { x: p.x.to_integer(), y: p.y.to_integer() });
            }
            frames.push(GridDrawing { tree: self.tree.clone(), pos });
        }
        Morph::new(self.tree.clone(), frames).ok()
    }
}

impl MorphFile {
    pub fn from_morph(m: &Morph, metadata: MorphMetadata) -> Self {
        MorphFile {
            schema: SCHEMA_VERSION,
            tree: serialize_tree(&m.tree),
            keyframes: m.keyframes.iter().map(|k| grid_coords(&k.pos)).collect(),
            metadata,
        }
    }

    pub fn from_real_frames(tree: &OrderedTree, frames: &[Vec<RatPoint>], metadata: MorphMetadata) -> Self {
        MorphFile {
            schema: SCHEMA_VERSION,
            tree: serialize_tree(tree),
            keyframes: frames.iter().map(|k| rat_coords(k)).collect(),
            metadata,
        }
    }

    pub fn to_real(&self) -> Result<RealMorph, CliError> {
        check_schema(self.schema)?;
        let tree = tree_of(&self.tree)?;
        if self.keyframes.is_empty() {
            return Err(CliError::Invalid("morph has no keyframes".into()));
        }
        let keyframes = self.keyframes.iter().map(|k| rat_points(k)).collect::<Result<Vec<_>, _>>()?;
        if keyframes.iter().any(|k| k.len() != tree.len()) {
            return Err(CliError::Invalid("keyframe size differs from node count".into()));
        }
        Ok(RealMorph { tree, keyframes })
    }

    pub fn to_morph(&self) -> Result<Morph, CliError> {
        self.to_real()?
            .to_grid()
            .ok_or_else(|| CliError::Invalid("morph has non-integer coordinates".into()))
    }
}

pub fn bound_entry(name: &str, bound: &BigInt, actual: &BigInt) -> BoundEntry {
    BoundEntry { name: name.into(), bound: Coord::from_int(bound), actual: Coord::from_int(actual) }
}

/// Either kind of file, told apart by the presence of keyframes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnyFile {
    Morph(MorphFile),
    Drawing(DrawingFile),
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Format(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Format(e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Exact rational as a short decimal for display.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        return n / d;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    let bits = r.numer().bits() as i64 - r.denom().bits() as i64;
    sign * 2f64.powi(bits.clamp(-1000, 1000) as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_switch_to_strings_past_double_precision() {
        assert_eq!(Coord::from_int(&BigInt::from(5)), Coord::Int(5));
        let big = BigInt::from(1i64 << 53);
        assert_eq!(Coord::from_int(&big), Coord::Text("9007199254740992".into()));
        assert_eq!(Coord::Text("9007199254740992".into()).to_int().unwrap(), big);
        let q = BigRational::new(3.into(), 4.into());
        assert_eq!(Coord::from_rat(&q), Coord::Text("3/4".into()));
    }

    #[test]
    fn rational_parsing() {
        let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
        assert_eq!(parse_rational("3/6").unwrap(), r(1, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), r(-5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), r(-1, 2));
        assert_eq!(parse_rational("42").unwrap(), r(42, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn drawing_roundtrip() {
        let t = Arc::new(parse_tree("(()())").unwrap());
        let g = GridDrawing::new(t, vec![Point::new(0, 0), Point::new(-1, -1), Point::new(1i64 << 60, -1)]).unwrap();
        let f = DrawingFile::from_grid(&g);
        let text = serde_json::to_string(&f).unwrap();
        let back: DrawingFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_grid().unwrap(), g);
        match serde_json::from_str::<AnyFile>(&text).unwrap() {
            AnyFile::Drawing(_) => {}
            AnyFile::Morph(_) => panic!("drawing read as morph"),
        }
    }
}
