//! Line format of planar diagrams:
//!
//! ```text
//! strand A : (0/1,0/1) (1/1,1/2) ; first=left:0 last=right:1
//! mark x (P-,P+) at (1/2,0/1)
//! handle area=1/4 at (0/1,1/1)
//! pivot (2/1,0/1)
//! ```

use cobcalc::geometry::{Annotation, AnnotationKind, CobordismDiagram, End, PlCurve, Side, Strand};

use crate::error::Result;
use crate::text::{fmt_point, fmt_rat, rational, Fields};

fn fmt_end(e: &End) -> String {
    let side = match e.side {
        Side::Left => "left",
        Side::Right => "right",
    };
    format!("{side}:{}", e.height)
}

fn parse_end(s: &str) -> Option<End> {
    let (side, h) = s.split_once(':')?;
    let height: u32 = h.parse().ok()?;
    match side {
        "left" => Some(End::left(height)),
        "right" => Some(End::right(height)),
        _ => None,
    }
}

pub fn print_diagram(d: &CobordismDiagram, out: &mut String) {
    for s in &d.strands {
        out.push_str("strand ");
        out.push_str(&s.object);
        out.push_str(" :");
        for v in &s.curve.vertices {
            out.push(' ');
            out.push_str(&fmt_point(v));
        }
        if s.curve.first_end.is_some() || s.curve.last_end.is_some() {
            out.push_str(" ;");
            if let Some(e) = &s.curve.first_end {
                out.push_str(&format!(" first={}", fmt_end(e)));
            }
            if let Some(e) = &s.curve.last_end {
                out.push_str(&format!(" last={}", fmt_end(e)));
            }
        }
        out.push('\n');
    }
    for a in &d.annotations {
        match &a.kind {
            AnnotationKind::Mark { point, positive } => {
                let order = if *positive { "(P-,P+)" } else { "(P+,P-)" };
                out.push_str(&format!("mark {point} {order} at {}\n", fmt_point(&a.at)));
            }
            AnnotationKind::Handle { area } => out.push_str(&format!("handle area={} at {}\n", fmt_rat(area), fmt_point(&a.at))),
        }
    }
    for p in &d.pivots {
        out.push_str(&format!("pivot {}\n", fmt_point(p)));
    }
}

/// Consumes one diagram line. Returns `false` when the keyword is not a
/// diagram keyword, leaving the line to the caller.
pub fn parse_diagram_line(f: &Fields<'_>, d: &mut CobordismDiagram) -> Result<bool> {
    let head = f.get(0, "a keyword")?;
    match head.text {
        "strand" => d.strands.push(strand(f)?),
        "mark" => {
            let id = f.get(1, "an intersection id")?;
            let order = f.get(2, "(P-,P+) or (P+,P-)")?;
            let positive = match order.text {
                "(P-,P+)" => true,
                "(P+,P-)" => false,
                other => return Err(f.err(order.col, format!("`{other}` is not (P-,P+) or (P+,P-)"))),
            };
            let at = at(f, 3)?;
            d.annotations.push(Annotation { at, kind: AnnotationKind::Mark { point: id.text.to_string(), positive } });
        }
        "handle" => {
            let t = f.get(1, "area=<rational>")?;
            let area = t.text.strip_prefix("area=").and_then(rational).ok_or_else(|| f.err(t.col, "expected area=<rational>"))?;
            let at = at(f, 2)?;
            d.annotations.push(Annotation { at, kind: AnnotationKind::Handle { area } });
        }
        "pivot" => {
            d.pivots.push(f.point(1)?);
            f.exact(2, "the pivot")?;
        }
        _ => return Ok(false),
    }
    Ok(true)
}

fn at(f: &Fields<'_>, i: usize) -> Result<cobcalc::geometry::Point2> {
    let t = f.get(i, "`at`")?;
    if t.text != "at" {
        return Err(f.err(t.col, format!("expected `at`, found `{}`", t.text)));
    }
    let p = f.point(i + 1)?;
    f.exact(i + 2, "the annotation")?;
    Ok(p)
}

fn strand(f: &Fields<'_>) -> Result<Strand> {
    let object = f.get(1, "an object label")?;
    let colon = f.get(2, "`:`")?;
    if colon.text != ":" {
        return Err(f.err(colon.col, format!("expected `:`, found `{}`", colon.text)));
    }
    let mut vertices = Vec::new();
    let mut i = 3;
    while i < f.len() && f.tokens[i].text != ";" {
        vertices.push(f.point(i)?);
        i += 1;
    }
    if vertices.is_empty() {
        return Err(f.err(f.get(3, "a vertex").map_or(f.end_col, |t| t.col), "a strand needs at least one vertex"));
    }
    let (mut first_end, mut last_end) = (None, None);
    if i < f.len() {
        i += 1;
        if i == f.len() {
            return Err(f.err(f.end_col, "expected first=<side>:<h> or last=<side>:<h>"));
        }
        for t in &f.tokens[i..] {
            let (key, value) = t.text.split_once('=').ok_or_else(|| f.err(t.col, format!("`{}` is not an end", t.text)))?;
            let end = parse_end(value).ok_or_else(|| f.err(t.col, format!("`{value}` is not <left|right>:<height>")))?;
            let slot = match key {
                "first" if last_end.is_none() => &mut first_end,
                "last" => &mut last_end,
                _ => return Err(f.err(t.col, format!("unexpected `{key}=`"))),
            };
            if slot.replace(end).is_some() {
                return Err(f.err(t.col, format!("`{key}` given twice")));
            }
        }
    }
    Ok(Strand::new(PlCurve::new(vertices, first_end, last_end), object.text))
}
