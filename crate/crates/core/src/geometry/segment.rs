use core::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::{Point2, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

/// Sign of the cross product `(b − a) × (c − a)`.
pub fn orient(a: &Point2, b: &Point2, c: &Point2) -> Ordering {
    cross(&a.x, &a.y, b, c).cmp(&Rat::zero())
}

fn cross(ax: &Rat, ay: &Rat, b: &Point2, c: &Point2) -> Rat {
    (&b.x - ax) * (&c.y - ay) - (&b.y - ay) * (&c.x - ax)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection {
    None,
    /// Transverse crossing in the interior of both segments.
    Cross(Point2),
    /// A single common point that is an endpoint of at least one segment.
    Touch(Point2),
    /// Collinear overlap of positive length.
    Overlap,
}

impl Segment {
    pub fn new(a: Point2, b: Point2) -> Self {
        Self { a, b }
    }

    /// Whether `p` lies on the closed segment.
    pub fn contains(&self, p: &Point2) -> bool {
        orient(&self.a, &self.b, p) == Ordering::Equal && self.in_box(p)
    }

    fn in_box(&self, p: &Point2) -> bool {
        let (x0, x1) = if self.a.x <= self.b.x { (&self.a.x, &self.b.x) } else { (&self.b.x, &self.a.x) };
        let (y0, y1) = if self.a.y <= self.b.y { (&self.a.y, &self.b.y) } else { (&self.b.y, &self.a.y) };
        x0 <= &p.x && &p.x <= x1 && y0 <= &p.y && &p.y <= y1
    }

    fn bbox_meets(&self, t: &Segment) -> bool {
        let span = |u: &Rat, v: &Rat| if u <= v { (u.clone(), v.clone()) } else { (v.clone(), u.clone()) };
        let ((sx0, sx1), (tx0, tx1)) = (span(&self.a.x, &self.b.x), span(&t.a.x, &t.b.x));
        if sx1 < tx0 || tx1 < sx0 {
            return false;
        }
        let ((sy0, sy1), (ty0, ty1)) = (span(&self.a.y, &self.b.y), span(&t.a.y, &t.b.y));
        !(sy1 < ty0 || ty1 < sy0)
    }

    pub fn is_endpoint(&self, p: &Point2) -> bool {
        &self.a == p || &self.b == p
    }

    /// Signed twice-area contribution `a × b` for the shoelace formula.
    pub fn shoelace(&self) -> Rat {
        &self.a.x * &self.b.y - &self.b.x * &self.a.y
    }

    pub fn length_is_positive(&self) -> bool {
        self.a != self.b
    }
}

/// Exact classification of the intersection of two closed segments.
pub fn intersect(s: &Segment, t: &Segment) -> Intersection {
    if !s.bbox_meets(t) {
        return Intersection::None;
    }
    let o1 = orient(&s.a, &s.b, &t.a);
    let o2 = orient(&s.a, &s.b, &t.b);
    let o3 = orient(&t.a, &t.b, &s.a);
    let o4 = orient(&t.a, &t.b, &s.b);
    if o1 == Ordering::Equal && o2 == Ordering::Equal {
        return collinear(s, t);
    }
    if o1 != Ordering::Equal && o2 != Ordering::Equal && o3 != Ordering::Equal && o4 != Ordering::Equal {
        if o1 != o2 && o3 != o4 {
            return Intersection::Cross(crossing_point(s, t));
        }
        return Intersection::None;
    }
    for p in [&t.a, &t.b] {
        if s.contains(p) {
            return Intersection::Touch(p.clone());
        }
    }
    for p in [&s.a, &s.b] {
        if t.contains(p) {
            return Intersection::Touch(p.clone());
        }
    }
    Intersection::None
}

fn collinear(s: &Segment, t: &Segment) -> Intersection {
    let (s0, s1) = ordered(s);
    let (t0, t1) = ordered(t);
    let lo = if s0 >= t0 { s0 } else { t0 };
    let hi = if s1 <= t1 { s1 } else { t1 };
    match lo.cmp(hi) {
        Ordering::Less => Intersection::Overlap,
        Ordering::Equal => Intersection::Touch(lo.clone()),
        Ordering::Greater => Intersection::None,
    }
}

fn ordered(s: &Segment) -> (&Point2, &Point2) {
    if s.a <= s.b {
        (&s.a, &s.b)
    } else {
        (&s.b, &s.a)
    }
}

fn crossing_point(s: &Segment, t: &Segment) -> Point2 {
    let rx = &s.b.x - &s.a.x;
    let ry = &s.b.y - &s.a.y;
    let qx = &t.b.x - &t.a.x;
    let qy = &t.b.y - &t.a.y;
    let denom = &rx * &qy - &ry * &qx;
    let num = (&t.a.x - &s.a.x) * &qy - (&t.a.y - &s.a.y) * &qx;
    debug_assert!(!denom.is_zero());
    let u = num / denom;
    Point2::new(&s.a.x + &u * rx, &s.a.y + &u * ry)
}

/// Total order of directions by angle in `[0, 2π)` from the positive x-axis.
pub(crate) fn angle_cmp(dx1: &Rat, dy1: &Rat, dx2: &Rat, dy2: &Rat) -> Ordering {
    let half = |dx: &Rat, dy: &Rat| u8::from(dy.is_negative() || (dy.is_zero() && dx.is_negative()));
    half(dx1, dy1).cmp(&half(dx2, dy2)).then_with(|| (dx2 * dy1).cmp(&(dx1 * dy2)))
}
