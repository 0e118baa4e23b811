//! Exact planar PL cobordism diagrams.
//!
//! Coordinates are exact rationals. A strand is a polyline whose terminal
//! vertices may carry a horizontal end ray (towards −∞ or +∞) at a
//! non-negative integer height. Rays on the right are positive ends, rays on
//! the left negative ends.

mod crossings;
mod segment;
mod shadow;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

pub use crossings::{detect_crossings, junctions, Crossing};
pub use segment::{intersect, orient, Intersection, Segment};
pub use shadow::shadow;

use crate::{Error, Result};

pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn floor_i64(r: &Rat) -> i64 {
    num_traits::ToPrimitive::to_i64(&r.floor().to_integer()).expect("coordinate fits in i64")
}

pub fn ceil_i64(r: &Rat) -> i64 {
    num_traits::ToPrimitive::to_i64(&r.ceil().to_integer()).expect("coordinate fits in i64")
}

/// Exact planar point. Ordered lexicographically by `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point2 {
    pub x: Rat,
    pub y: Rat,
}

impl Point2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        Self { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Self { x: rat(x), y: rat(y) }
    }

    #[must_use]
    pub fn shifted(&self, dx: &Rat, dy: &Rat) -> Self {
        Self { x: &self.x + dx, y: &self.y + dy }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// Extends horizontally to −∞ (negative end).
    Left,
    /// Extends horizontally to +∞ (positive end).
    Right,
}

impl Side {
    pub fn flipped(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A horizontal end ray attached to a terminal vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct End {
    pub side: Side,
    pub height: u32,
}

impl End {
    pub fn left(height: u32) -> Self {
        Self { side: Side::Left, height }
    }

    pub fn right(height: u32) -> Self {
        Self { side: Side::Right, height }
    }
}

/// A PL curve. `first_end` is attached at `vertices[0]`, `last_end` at the last vertex.
///
/// A curve whose first and last vertex coincide and which has no ends is a
/// closed loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlCurve {
    pub vertices: Vec<Point2>,
    pub first_end: Option<End>,
    pub last_end: Option<End>,
}

impl PlCurve {
    pub fn new(vertices: Vec<Point2>, first_end: Option<End>, last_end: Option<End>) -> Self {
        Self { vertices, first_end, last_end }
    }

    /// Horizontal line at `height` through `(x, height)`: a negative and a positive end.
    pub fn horizontal(x: Rat, height: u32) -> Self {
        Self::new(alloc::vec![Point2::new(x, rat(height.into()))], Some(End::left(height)), Some(End::right(height)))
    }

    /// Closed polygon through `corners` (the closing vertex is added).
    pub fn polygon(corners: &[Point2]) -> Self {
        let mut vertices = corners.to_vec();
        vertices.push(corners[0].clone());
        Self::new(vertices, None, None)
    }

    pub fn is_closed(&self) -> bool {
        self.first_end.is_none() && self.last_end.is_none() && self.vertices.len() > 1 && self.vertices.first() == self.vertices.last()
    }

    pub fn ends(&self) -> impl Iterator<Item = End> + '_ {
        self.first_end.iter().chain(self.last_end.iter()).copied()
    }

    /// Terminal vertices without an attached ray (possible gluing points).
    pub fn free_terminals(&self) -> Vec<&Point2> {
        if self.is_closed() {
            return Vec::new();
        }
        let mut out = Vec::new();
        if self.first_end.is_none() {
            out.push(&self.vertices[0]);
        }
        if self.last_end.is_none() {
            out.push(self.vertices.last().expect("nonempty"));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    pub curve: PlCurve,
    pub object: String,
}

impl Strand {
    pub fn new(curve: PlCurve, object: impl Into<String>) -> Self {
        Self { curve, object: object.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnnotationKind {
    /// Marking pair for intersection point `point`; `positive` means order `(P₋, P₊)`.
    Mark { point: String, positive: bool },
    /// Handle of the given area.
    Handle { area: Rat },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Annotation {
    pub at: Point2,
    pub kind: AnnotationKind,
}

/// Planar projection of a cobordism: labeled strands, annotations at crossing
/// or gluing points, and inert pivot points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CobordismDiagram {
    pub strands: Vec<Strand>,
    pub annotations: Vec<Annotation>,
    pub pivots: Vec<Point2>,
}

/// Axis-aligned box `[min_x, max_x] × [min_y, max_y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BBox {
    pub min_x: Rat,
    pub max_x: Rat,
    pub min_y: Rat,
    pub max_y: Rat,
}

impl BBox {
    fn around(points: impl Iterator<Item = Point2>) -> Option<Self> {
        let mut out: Option<BBox> = None;
        for p in points {
            out = Some(match out {
                None => BBox { min_x: p.x.clone(), max_x: p.x.clone(), min_y: p.y.clone(), max_y: p.y },
                Some(b) => BBox {
                    min_x: b.min_x.min(p.x.clone()),
                    max_x: b.max_x.max(p.x),
                    min_y: b.min_y.min(p.y.clone()),
                    max_y: b.max_y.max(p.y),
                },
            });
        }
        out
    }
}

impl CobordismDiagram {
    pub fn new(strands: Vec<Strand>) -> Self {
        Self { strands, ..Self::default() }
    }

    pub fn is_empty(&self) -> bool {
        self.strands.is_empty()
    }

    pub fn with_annotation(mut self, at: Point2, kind: AnnotationKind) -> Self {
        self.annotations.push(Annotation { at, kind });
        self
    }

    pub fn with_pivot(mut self, p: Point2) -> Self {
        self.pivots.push(p);
        self
    }

    /// Positive ends (right rays), height → object.
    pub fn pos_ends(&self) -> BTreeMap<u32, String> {
        self.ends_on(Side::Right)
    }

    /// Negative ends (left rays), height → object.
    pub fn neg_ends(&self) -> BTreeMap<u32, String> {
        self.ends_on(Side::Left)
    }

    fn ends_on(&self, side: Side) -> BTreeMap<u32, String> {
        self.strands
            .iter()
            .flat_map(|s| s.curve.ends().filter(move |e| e.side == side).map(move |e| (e.height, s.object.clone())))
            .collect()
    }

    pub fn end_count(&self) -> usize {
        self.strands.iter().map(|s| s.curve.ends().count()).sum()
    }

    /// Bounding box of all vertices, annotations and pivots.
    pub fn bbox(&self) -> Option<BBox> {
        BBox::around(
            self.strands
                .iter()
                .flat_map(|s| s.curve.vertices.iter().cloned())
                .chain(self.annotations.iter().map(|a| a.at.clone()))
                .chain(self.pivots.iter().cloned()),
        )
    }

    /// Checks the structural invariants and rejects overlaps and tangencies.
    pub fn validate(&self) -> Result<()> {
        for (i, s) in self.strands.iter().enumerate() {
            let c = &s.curve;
            if c.vertices.is_empty() {
                return Err(Error::InvalidDiagram(format!("strand {i} has no vertices")));
            }
            if c.vertices.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidDiagram(format!("strand {i} repeats a vertex consecutively")));
            }
            if c.vertices.len() == 1 && c.first_end.is_none() && c.last_end.is_none() {
                return Err(Error::InvalidDiagram(format!("strand {i} is a bare point")));
            }
            if c.first_end.is_none() && c.last_end.is_none() && c.vertices.first() == c.vertices.last() && c.vertices.len() < 4 {
                return Err(Error::InvalidDiagram(format!("closed strand {i} needs at least three corners")));
            }
            for (end, v) in [(c.first_end, c.vertices.first()), (c.last_end, c.vertices.last())] {
                if let (Some(e), Some(v)) = (end, v) {
                    if v.y != rat(e.height.into()) {
                        return Err(Error::InvalidDiagram(format!("strand {i}: end at height {} attached at y = {}", e.height, v.y)));
                    }
                }
            }
            if c.vertices.len() == 1 {
                if let (Some(a), Some(b)) = (c.first_end, c.last_end) {
                    if a.side == b.side {
                        return Err(Error::OverlappingSegments(i, i));
                    }
                }
            }
        }
        for side in [Side::Left, Side::Right] {
            let mut heights: Vec<u32> = self.strands.iter().flat_map(|s| s.curve.ends()).filter(|e| e.side == side).map(|e| e.height).collect();
            let n = heights.len();
            heights.sort_unstable();
            heights.dedup();
            if heights.len() != n {
                return Err(Error::InvalidDiagram(format!("repeated end height on the {side:?} side")));
            }
        }
        let crossings = detect_crossings(self)?;
        let glue = junctions(self);
        for a in &self.annotations {
            if !crossings.iter().any(|c| c.point == a.at) && !glue.contains(&a.at) {
                return Err(Error::InvalidDiagram(format!("annotation at ({}, {}) is not at a crossing", a.at.x, a.at.y)));
            }
        }
        for p in &self.pivots {
            if self.segments().iter().any(|(_, _, s)| s.contains(p)) {
                return Err(Error::InvalidDiagram(format!("pivot ({}, {}) lies on a strand", p.x, p.y)));
            }
        }
        Ok(())
    }

    /// All segments `(strand, segment index, segment)`, rays clipped one unit
    /// beyond the bounding box.
    pub fn segments(&self) -> Vec<(usize, usize, Segment)> {
        let Some(bb) = self.bbox() else { return Vec::new() };
        let left = &bb.min_x - Rat::one();
        let right = &bb.max_x + Rat::one();
        let mut out = Vec::new();
        for (si, s) in self.strands.iter().enumerate() {
            let c = &s.curve;
            let ray = |v: &Point2, e: End| {
                let x = if e.side == Side::Left { left.clone() } else { right.clone() };
                Segment::new(v.clone(), Point2::new(x, v.y.clone()))
            };
            let mut k = 0;
            if let Some(e) = c.first_end {
                out.push((si, k, ray(&c.vertices[0], e)));
                k += 1;
            }
            for w in c.vertices.windows(2) {
                out.push((si, k, Segment::new(w[0].clone(), w[1].clone())));
                k += 1;
            }
            if let Some(e) = c.last_end {
                out.push((si, k, ray(c.vertices.last().expect("nonempty"), e)));
            }
        }
        out
    }

    /// The strand carrying the end ray on `side` at `height`, and whether it is the first end.
    pub fn locate_end(&self, side: Side, height: u32) -> Option<(usize, bool)> {
        let want = Some(End { side, height });
        self.strands.iter().enumerate().find_map(|(i, s)| {
            if s.curve.first_end == want {
                Some((i, true))
            } else if s.curve.last_end == want {
                Some((i, false))
            } else {
                None
            }
        })
    }

    /// Replaces an end ray by the path through `via` (listed moving away from
    /// the strand), finishing with `new_end` at the last via point.
    pub fn reroute_end(&mut self, strand: usize, first: bool, via: &[Point2], new_end: Option<End>) {
        let c = &mut self.strands[strand].curve;
        if first {
            let mut vs: Vec<Point2> = via.iter().rev().cloned().collect();
            vs.append(&mut c.vertices);
            c.vertices = vs;
            c.first_end = new_end;
        } else {
            c.vertices.extend(via.iter().cloned());
            c.last_end = new_end;
        }
    }

    #[must_use]
    pub fn map_points(&self, f: impl Fn(&Point2) -> Point2) -> Self {
        CobordismDiagram {
            strands: self
                .strands
                .iter()
                .map(|s| Strand { curve: PlCurve { vertices: s.curve.vertices.iter().map(&f).collect(), ..s.curve.clone() }, object: s.object.clone() })
                .collect(),
            annotations: self.annotations.iter().map(|a| Annotation { at: f(&a.at), kind: a.kind.clone() }).collect(),
            pivots: self.pivots.iter().map(&f).collect(),
        }
    }

    /// Horizontal translation by `dx`.
    #[must_use]
    pub fn translate(&self, dx: &Rat) -> Self {
        let zero = Rat::zero();
        self.map_points(|p| p.shifted(dx, &zero))
    }

    /// Vertical translation by an integer amount; end heights move with it.
    pub fn shift_up(&self, dy: i64) -> Result<Self> {
        let mut out = self.map_points(|p| p.shifted(&Rat::zero(), &rat(dy)));
        for s in &mut out.strands {
            for e in [&mut s.curve.first_end, &mut s.curve.last_end].into_iter().flatten() {
                let h = i64::from(e.height) + dy;
                e.height = u32::try_from(h).map_err(|_| Error::InvalidDiagram(format!("end height {h} is negative")))?;
            }
        }
        Ok(out)
    }

    /// Moves the diagram so that its lowest end sits at height `base` (no-op without ends).
    pub fn normalize_heights(&self, base: u32) -> Result<Self> {
        match self.strands.iter().flat_map(|s| s.curve.ends()).map(|e| e.height).min() {
            Some(lo) => self.shift_up(i64::from(base) - i64::from(lo)),
            None => Ok(self.clone()),
        }
    }

    /// 180° rotation; heights are re-normalized so that the set of end
    /// heights is mirrored inside its own range.
    pub fn invert(&self) -> Result<Self> {
        let n = self.end_count();
        if n > 2 {
            return Err(Error::NotSimple(n));
        }
        let heights: Vec<u32> = self.strands.iter().flat_map(|s| s.curve.ends()).map(|e| e.height).collect();
        let span = match (heights.iter().min(), heights.iter().max()) {
            (Some(lo), Some(hi)) => lo + hi,
            _ => 0,
        };
        let s = rat(span.into());
        let mut out = self.map_points(|p| Point2::new(-&p.x, &s - &p.y));
        for st in &mut out.strands {
            for e in [&mut st.curve.first_end, &mut st.curve.last_end].into_iter().flatten() {
                *e = End { side: e.side.flipped(), height: span - e.height };
            }
        }
        Ok(out)
    }
}
