//! SVG 1.1 rendering of planar diagrams.
//!
//! Every strand, end, crossing, annotation and pivot becomes one element.
//! Exact coordinates ride along in `data-*` attributes, so a reader can
//! rebuild the diagram without trusting the floating-point drawing.

use std::fmt::Write;

use cobcalc::geometry::{detect_crossings, AnnotationKind, CobordismDiagram, Point2, Side};
use cobcalc::Rat;
use num_traits::ToPrimitive;

use crate::error::Result;
use crate::text::{fmt_point, fmt_rat};

const SCALE: f64 = 60.0;
const MARGIN: f64 = 1.5;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn f(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

fn end_attr(e: Option<cobcalc::geometry::End>) -> String {
    match e {
        None => String::new(),
        Some(e) => format!("{}:{}", if e.side == Side::Left { "left" } else { "right" }, e.height),
    }
}

struct Frame {
    min_x: f64,
    max_y: f64,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        (x - self.min_x + MARGIN) * SCALE
    }

    fn y(&self, y: f64) -> f64 {
        (self.max_y - y + MARGIN) * SCALE
    }

    fn p(&self, p: &Point2) -> (f64, f64) {
        (self.x(f(&p.x)), self.y(f(&p.y)))
    }
}

pub fn render(d: &CobordismDiagram) -> Result<String> {
    let crossings = detect_crossings(d)?;
    let (min_x, max_x, min_y, max_y) = match d.bbox() {
        Some(b) => (f(&b.min_x), f(&b.max_x), f(&b.min_y), f(&b.max_y)),
        None => (0.0, 0.0, 0.0, 0.0),
    };
    let frame = Frame { min_x, max_y };
    let (width, height) = ((max_x - min_x + 2.0 * MARGIN) * SCALE, (max_y - min_y + 2.0 * MARGIN) * SCALE);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#);
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{width:.1}" height="{height:.1}" fill="white"/>"#);
    for (i, strand) in d.strands.iter().enumerate() {
        let c = &strand.curve;
        let exact: Vec<String> = c.vertices.iter().map(fmt_point).collect();
        let drawn: Vec<String> = c.vertices.iter().map(|v| frame.p(v)).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            s,
            r#"<polyline class="strand" data-index="{i}" data-object="{}" data-points="{}" data-first="{}" data-last="{}" points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
            escape(&strand.object),
            exact.join(" "),
            end_attr(c.first_end),
            end_attr(c.last_end),
            drawn.join(" ")
        );
        let terminals = [(c.first_end, c.vertices.first()), (c.last_end, c.vertices.last())];
        for (e, v) in terminals.into_iter().filter_map(|(e, v)| Some((e?, v?))) {
            let (x1, y1) = frame.p(v);
            let x2 = if e.side == Side::Left { 0.0 } else { width };
            let _ = writeln!(
                s,
                r#"<line class="end" data-strand="{i}" data-end="{}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y1:.2}" stroke="gray" stroke-width="2" stroke-dasharray="6,3"/>"#,
                end_attr(Some(e))
            );
            let _ = writeln!(s, r#"<text class="end-label" x="{:.2}" y="{:.2}" font-size="12">{}</text>"#, if x2 == 0.0 { 2.0 } else { width - 40.0 }, y1 - 4.0, escape(&strand.object));
        }
    }
    for c in &crossings {
        let (x, y) = frame.p(&c.point);
        let _ = writeln!(s, r#"<circle class="crossing" data-at="{}" data-strands="{} {}" cx="{x:.2}" cy="{y:.2}" r="4" fill="red"/>"#, fmt_point(&c.point), c.first.0, c.second.0);
    }
    for a in &d.annotations {
        let (x, y) = frame.p(&a.at);
        let (class, label) = match &a.kind {
            AnnotationKind::Mark { point, positive } => ("mark", format!("{} {}", point, if *positive { "(P-,P+)" } else { "(P+,P-)" })),
            AnnotationKind::Handle { area } => ("handle", format!("area={}", fmt_rat(area))),
        };
        let _ = writeln!(s, r#"<text class="{class}" data-at="{}" x="{x:.2}" y="{y:.2}" font-size="12" fill="blue">{}</text>"#, fmt_point(&a.at), escape(&label));
    }
    for p in &d.pivots {
        let (x, y) = frame.p(p);
        let _ = writeln!(s, r#"<circle class="pivot" data-at="{}" cx="{x:.2}" cy="{y:.2}" r="3" fill="green"/>"#, fmt_point(p));
    }
    s.push_str("</svg>\n");
    Ok(s)
}
