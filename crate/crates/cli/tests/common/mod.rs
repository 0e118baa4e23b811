//! Random diagrams shared by the integration tests.

use cobcalc::geometry::{detect_crossings, ratio, AnnotationKind, CobordismDiagram, End, PlCurve, Point2, Strand};
use proptest::prelude::*;

/// Open strands from the left side to the right side, plus at most one triangle.
pub fn random_diagram(strands: Vec<(i64, i64, i64, i64)>, perm: Vec<u32>, tri: Option<(i64, i64, i64)>) -> CobordismDiagram {
    let n = strands.len();
    let mut out = Vec::new();
    for (k, (mx, my, den, lx)) in strands.into_iter().enumerate() {
        let (hl, hr) = (k as u32, perm[k] % n as u32);
        let vertices = vec![
            Point2::new(ratio(-3 - lx, 1), ratio(hl.into(), 1)),
            Point2::new(ratio(mx, den), ratio(my, den)),
            Point2::new(ratio(3, 1), ratio(hr.into(), 1)),
        ];
        out.push(Strand::new(PlCurve::new(vertices, Some(End::left(hl)), Some(End::right(hr))), format!("L{k}")));
    }
    if let Some((x, y, s)) = tri {
        let corners = [Point2::new(ratio(x, 3), ratio(y, 3)), Point2::new(ratio(x, 3) + ratio(s, 2), ratio(y, 3)), Point2::new(ratio(x, 3), ratio(y, 3) + ratio(s, 2))];
        out.push(Strand::new(PlCurve::polygon(&corners), "T"));
    }
    let mut d = CobordismDiagram::new(out);
    if let Ok(cs) = detect_crossings(&d) {
        for (i, c) in cs.iter().enumerate() {
            let kind = if i % 2 == 0 { AnnotationKind::Mark { point: format!("q{i}"), positive: i % 4 == 0 } } else { AnnotationKind::Handle { area: ratio(i as i64 + 1, 7) } };
            d = d.with_annotation(c.point.clone(), kind);
        }
    }
    d.with_pivot(Point2::new(ratio(-1, 3), ratio(9, 2)))
}

pub fn diagrams() -> impl Strategy<Value = CobordismDiagram> {
    let strand = (-9i64..9, -9i64..30, 1i64..6, 0i64..3);
    (prop::collection::vec(strand, 1..4), prop::collection::vec(0u32..4, 4), prop::option::of((-6i64..6, -3i64..12, 1i64..4)))
        .prop_map(|(s, perm, tri)| {
            let n = s.len();
            let mut perm: Vec<u32> = perm.into_iter().take(n).collect();
            let mut seen = Vec::new();
            for h in &mut perm {
                while seen.contains(&(*h % n as u32)) {
                    *h += 1;
                }
                seen.push(*h % n as u32);
            }
            random_diagram(s, perm, tri)
        })
}
