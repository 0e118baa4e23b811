use alloc::format;
use alloc::vec::Vec;

use super::segment::{intersect, Intersection};
use super::{CobordismDiagram, Point2};
use crate::{Error, Result};

/// A transverse double point between two strand segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub point: Point2,
    /// `(strand, segment index)` of the two segments, the smaller first.
    pub first: (usize, usize),
    pub second: (usize, usize),
}

/// Points where terminal vertices of distinct strands are glued together.
pub fn junctions(d: &CobordismDiagram) -> Vec<Point2> {
    let mut out = Vec::new();
    for (i, s) in d.strands.iter().enumerate() {
        for p in s.curve.free_terminals() {
            let shared = d.strands.iter().enumerate().any(|(j, t)| j != i && t.curve.free_terminals().contains(&p));
            if shared && !out.contains(p) {
                out.push(p.clone());
            }
        }
    }
    out.sort();
    out
}

/// All transverse crossings, sorted by point.
///
/// Touching at a vertex is only allowed between consecutive segments of one
/// strand and at gluing junctions; everything else is a tangency.
pub fn detect_crossings(d: &CobordismDiagram) -> Result<Vec<Crossing>> {
    let segs = d.segments();
    let glue = junctions(d);
    let seg_count: Vec<usize> = (0..d.strands.len()).map(|i| segs.iter().filter(|s| s.0 == i).count()).collect();
    let mut out = Vec::new();
    for (ia, (sa, ka, a)) in segs.iter().enumerate() {
        for (sb, kb, b) in &segs[ia + 1..] {
            match intersect(a, b) {
                Intersection::None => {}
                Intersection::Overlap => return Err(Error::OverlappingSegments(*sa, *sb)),
                Intersection::Cross(point) => out.push(Crossing { point, first: (*sa, *ka), second: (*sb, *kb) }),
                Intersection::Touch(p) => {
                    let adjacent = sa == sb && {
                        let n = seg_count[*sa];
                        kb - ka == 1 || (d.strands[*sa].curve.is_closed() && *ka == 0 && *kb == n - 1)
                    };
                    let glued = sa != sb && glue.contains(&p) && a.is_endpoint(&p) && b.is_endpoint(&p);
                    if !(adjacent && a.is_endpoint(&p) && b.is_endpoint(&p)) && !glued {
                        return Err(Error::Tangency(format!("strands {sa} and {sb} touch at ({}, {})", p.x, p.y)));
                    }
                }
            }
        }
    }
    out.sort_by(|x, y| x.point.cmp(&y.point));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{End, PlCurve, Strand};
    use alloc::vec;

    #[test]
    fn x_shape_has_one_crossing() {
        let d = CobordismDiagram::new(vec![
            Strand::new(PlCurve::new(vec![Point2::int(0, 0), Point2::int(2, 1)], Some(End::left(0)), Some(End::right(1))), "L"),
            Strand::new(PlCurve::new(vec![Point2::int(0, 1), Point2::int(2, 0)], Some(End::left(1)), Some(End::right(0))), "M"),
        ]);
        let c = detect_crossings(&d).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].point, Point2::new(crate::geometry::rat(1), crate::geometry::ratio(1, 2)));
    }

    #[test]
    fn vertex_on_other_strand_is_a_tangency() {
        let d = CobordismDiagram::new(vec![
            Strand::new(PlCurve::horizontal(crate::geometry::rat(0), 0), "L"),
            Strand::new(PlCurve::new(vec![Point2::int(0, 0), Point2::int(1, 3)], None, Some(End::right(3))), "M"),
        ]);
        assert!(matches!(detect_crossings(&d), Err(Error::Tangency(_))));
    }

    #[test]
    fn junctions_are_allowed() {
        let j = Point2::int(0, 1);
        let d = CobordismDiagram::new(vec![
            Strand::new(PlCurve::new(vec![Point2::int(-1, 1), j.clone()], Some(End::left(1)), None), "A"),
            Strand::new(PlCurve::new(vec![j.clone(), Point2::int(1, 0)], None, Some(End::right(0))), "B"),
            Strand::new(PlCurve::new(vec![j.clone(), Point2::int(1, 2)], None, Some(End::right(2))), "C"),
        ]);
        assert!(detect_crossings(&d).unwrap().is_empty());
        assert_eq!(junctions(&d), vec![j]);
    }

    #[test]
    fn self_crossing_figure_eight() {
        let d = CobordismDiagram::new(vec![Strand::new(
            PlCurve::new(vec![Point2::int(0, 0), Point2::int(2, 2), Point2::int(2, 0), Point2::int(0, 2), Point2::int(0, 0)], None, None),
            "L",
        )]);
        assert_eq!(detect_crossings(&d).unwrap().len(), 1);
    }
}
