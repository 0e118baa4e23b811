//! Placement of realized diagrams. Every construction here adds bends and
//! connectors that enclose no area, except the cabling arcs.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::geometry::{ceil_i64, floor_i64, rat, ratio, AnnotationKind, CobordismDiagram, End, PlCurve, Point2, Rat, Side, Strand};
use crate::{Error, Result};

fn bbox(d: &CobordismDiagram) -> Result<crate::geometry::BBox> {
    d.bbox().ok_or_else(|| Error::InvalidDiagram("empty diagram has no ends".into()))
}

fn pos_height(d: &CobordismDiagram) -> Result<u32> {
    d.pos_ends().keys().next().copied().ok_or_else(|| Error::InvalidDiagram("diagram has no positive end".into()))
}

fn locate(d: &CobordismDiagram, side: Side, height: u32) -> Result<(usize, bool)> {
    d.locate_end(side, height).ok_or_else(|| Error::InvalidDiagram(format!("no {side:?} end at height {height}")))
}

fn pt(x: Rat, y: Rat) -> Point2 {
    Point2::new(x, y)
}

fn h(height: u32) -> Rat {
    rat(height.into())
}

fn absorb(into: &mut CobordismDiagram, other: CobordismDiagram) {
    into.strands.extend(other.strands);
    into.annotations.extend(other.annotations);
    into.pivots.extend(other.pivots);
}

/// Glues the positive end of `k` onto negative leg `leg` of `v`.
///
/// `k` is placed to the left of `v`, above the legs below `leg`; the legs
/// above are bent upwards past `k` first.
pub(crate) fn splice(v: &CobordismDiagram, leg: usize, k: &CobordismDiagram) -> Result<CobordismDiagram> {
    let legs: Vec<u32> = v.neg_ends().keys().copied().collect();
    let m = legs.len() - 1;
    let kb = bbox(k)?;
    let mut kk = if leg > 0 { k.shift_up(i64::from(legs[leg - 1]) + 1 - floor_i64(&kb.min_y))? } else { k.clone() };
    let kb = bbox(&kk)?;
    let lift = match legs.get(leg + 1) {
        Some(&above) => (ceil_i64(&kb.max_y) + 1 - i64::from(above)).max(0),
        None => 0,
    };
    let vb = bbox(v)?;
    let x_cut = &vb.min_x - Rat::one();
    let x_leg = |j: usize| &x_cut - rat((m - j) as i64);

    let mut out = v.clone();
    let located: Vec<(usize, bool)> = legs.iter().map(|&hj| locate(v, Side::Left, hj)).collect::<Result<_>>()?;
    if lift > 0 {
        for j in leg + 1..=m {
            let up = u32::try_from(i64::from(legs[j]) + lift).expect("height fits");
            let via = [pt(x_leg(j), h(legs[j])), pt(x_leg(j), h(up))];
            out.reroute_end(located[j].0, located[j].1, &via, Some(End::left(up)));
        }
    }
    let xi = x_leg(leg);
    kk = kk.translate(&(&xi - Rat::from_integer(2.into()) - &kb.max_x));
    let kp = pos_height(&kk)?;
    let (ks, kf) = locate(&kk, Side::Right, kp)?;
    let kx = &xi - Rat::one();
    kk.reroute_end(ks, kf, &[pt(kx.clone(), h(kp))], None);
    let leg_point = pt(xi, h(legs[leg]));
    out.reroute_end(located[leg].0, located[leg].1, core::slice::from_ref(&leg_point), None);
    let label = out.strands[located[leg].0].object.clone();
    out.strands.push(Strand::new(PlCurve::new(vec![pt(kx, h(kp)), leg_point], None, None), label));
    absorb(&mut out, kk);
    Ok(out)
}

/// One rotation step: the top negative end goes over the top and becomes the
/// positive end; the positive end goes under the bottom and becomes the
/// lowest negative end.
pub(crate) fn rotate_once(d: &CobordismDiagram) -> Result<CobordismDiagram> {
    let bb = bbox(d)?;
    let lift = (2 - floor_i64(&bb.min_y)).max(0);
    let mut out = d.shift_up(lift)?;
    let bb = bbox(&out)?;
    let top = *out.neg_ends().keys().last().ok_or(Error::TooFewEnds(1))?;
    let pos = pos_height(&out)?;
    let t = locate(&out, Side::Left, top)?;
    let p = locate(&out, Side::Right, pos)?;
    let x_l = &bb.min_x - Rat::one();
    let x_r = &bb.max_x + Rat::one();
    let h_top = u32::try_from(ceil_i64(&bb.max_y) + 1).expect("height fits");
    let h_bot = u32::try_from(floor_i64(&bb.min_y) - 1).expect("lifted above zero");
    out.reroute_end(t.0, t.1, &[pt(x_l.clone(), h(top)), pt(x_l, h(h_top))], Some(End::right(h_top)));
    out.reroute_end(p.0, p.1, &[pt(x_r.clone(), h(pos)), pt(x_r, h(h_bot))], Some(End::left(h_bot)));
    Ok(out)
}

/// Places `lower` entirely below `upper` (moving `upper` up when needed).
pub(crate) fn stack(upper: &CobordismDiagram, lower: &CobordismDiagram) -> Result<CobordismDiagram> {
    let (Some(ub), Some(lb)) = (upper.bbox(), lower.bbox()) else {
        let mut out = upper.clone();
        absorb(&mut out, lower.clone());
        return Ok(out);
    };
    let dy = ceil_i64(&lb.max_y) + 1 - floor_i64(&ub.min_y);
    let (mut out, low) = if dy > 0 { (upper.shift_up(dy)?, lower.clone()) } else { (upper.clone(), lower.clone()) };
    absorb(&mut out, low);
    Ok(out)
}

/// Closed rhombus of area `eps` centered at `(cx, cy)` with height 1.
fn rhombus(cx: &Rat, cy: &Rat, eps: &Rat) -> PlCurve {
    let half = ratio(1, 2);
    PlCurve::polygon(&[
        pt(cx - eps, cy.clone()),
        pt(cx.clone(), cy - &half),
        pt(cx + eps, cy.clone()),
        pt(cx.clone(), cy + &half),
    ])
}

/// Handle loops of area `eps`, one per marked point, in a row starting at `(x, y)`.
fn handles(x: &Rat, y: &Rat, count: usize, eps: &Rat, label: &str) -> Vec<Strand> {
    if eps.is_zero() {
        return Vec::new();
    }
    (0..count)
        .map(|i| {
            let step = rat(i as i64) * (eps * rat(2) + Rat::one());
            Strand::new(rhombus(&(x + eps + step), y, eps), label)
        })
        .collect()
}

fn annotate(d: &mut CobordismDiagram, at: &Point2, c: &[String], positive: bool, eps: &Rat) {
    for id in c {
        d.annotations.push(crate::geometry::Annotation { at: at.clone(), kind: AnnotationKind::Mark { point: id.clone(), positive } });
    }
    if !eps.is_zero() {
        for _ in c {
            d.annotations.push(crate::geometry::Annotation { at: at.clone(), kind: AnnotationKind::Handle { area: eps.clone() } });
        }
    }
}

/// Y-shaped surgery diagram: `first` enters from the right at height 1 and
/// splits into `surgered` (height 0) and `second` (height 2).
pub(crate) fn surgery(first: &str, second: &str, surgered: &str, c: &[String], eps: &Rat) -> CobordismDiagram {
    let j = Point2::int(0, 1);
    let mut d = CobordismDiagram::new(vec![
        Strand::new(PlCurve::new(vec![j.clone()], None, Some(End::right(1))), first),
        Strand::new(PlCurve::new(vec![j.clone(), Point2::int(-1, 0)], None, Some(End::left(0))), surgered),
        Strand::new(PlCurve::new(vec![j.clone(), Point2::int(-1, 2)], None, Some(End::left(2))), second),
    ]);
    d.strands.extend(handles(&rat(1), &rat(3), c.len(), eps, surgered));
    annotate(&mut d, &j, c, true, eps);
    d
}

/// Where the two inputs of a cabling sit inside the result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CablePlacement {
    /// Vertical shift applied to the first diagram.
    pub first_dy: i64,
    /// Shift `(dx, dy)` applied to the second diagram.
    pub second_dx: Rat,
    pub second_dy: i64,
    /// The crossing of the two connecting arcs.
    pub crossing: Point2,
}

/// Cabling layout. `v` keeps its place, `w` moves to the upper left; the
/// positive ends are joined by one arc and the top negative ends by another,
/// the arcs crossing once above `v`. The bottom negative end of `v` is bent
/// under everything into the new positive end. `clearance` sets the arc heights.
pub(crate) fn cable(v: &CobordismDiagram, w: &CobordismDiagram, c: &[String], eps: &Rat, clearance: &Rat) -> Result<(CobordismDiagram, CablePlacement)> {
    if clearance <= &Rat::zero() {
        return Err(Error::InvalidDiagram("bend clearance must be positive".into()));
    }
    let legs: Vec<u32> = v.neg_ends().keys().copied().collect();
    if legs.len() < 2 {
        return Err(Error::TooFewEnds(legs.len() + 1));
    }
    let vb0 = bbox(v)?;
    let wb0 = bbox(w)?;
    // keep the final bottom bend at a non-negative height
    let first_dy = (2 - floor_i64(&vb0.min_y)).max(0);
    let vv = v.shift_up(first_dy)?;
    let legs: Vec<u32> = vv.neg_ends().keys().copied().collect();
    let secondary_top = legs[legs.len() - 2];
    let second_dy = i64::from(secondary_top) + 1 - floor_i64(&wb0.min_y);
    let vb = bbox(&vv)?;
    let x_cut = &vb.min_x - Rat::one();
    let second_dx = &x_cut - rat(2) - &wb0.max_x;
    let ww = w.shift_up(second_dy)?.translate(&second_dx);
    let wb = bbox(&ww)?;

    let (a, b) = (legs[legs.len() - 1], legs[0]);
    let a2 = *ww.neg_ends().keys().last().ok_or(Error::TooFewEnds(1))?;
    let (hv, hw) = (pos_height(&vv)?, pos_height(&ww)?);
    let y1 = vb.max_y.clone().max(wb.max_y.clone()).ceil() + clearance;
    let y2 = &y1 + clearance;

    let v_pos = locate(&vv, Side::Right, hv)?;
    let v_top = locate(&vv, Side::Left, a)?;
    let v_bottom = locate(&vv, Side::Left, b)?;
    let w_pos = locate(&ww, Side::Right, hw)?;
    let w_top = locate(&ww, Side::Left, a2)?;
    let source_label = vv.strands[v_pos.0].object.clone();
    let target_label = vv.strands[v_top.0].object.clone();

    let mut out = vv;
    let mut ww = ww;
    let wx = &wb.max_x + Rat::one();
    let vx = &vb.max_x + Rat::one();
    ww.reroute_end(w_pos.0, w_pos.1, &[pt(wx.clone(), h(hw))], None);
    out.reroute_end(v_pos.0, v_pos.1, &[pt(vx.clone(), h(hv))], None);
    let arc1 = vec![pt(wx.clone(), h(hw)), pt(wx, y1.clone()), pt(vx.clone(), y1.clone()), pt(vx, h(hv))];

    let wl = &wb.min_x - Rat::from_integer(2.into());
    let w_end = pt(&wb.min_x - Rat::one(), h(a2));
    ww.reroute_end(w_top.0, w_top.1, core::slice::from_ref(&w_end), None);
    out.reroute_end(v_top.0, v_top.1, &[pt(x_cut.clone(), h(a))], None);
    let arc2 = vec![pt(x_cut.clone(), h(a)), pt(x_cut.clone(), y2.clone()), pt(wl.clone(), y2.clone()), pt(wl, h(a2)), w_end];

    let x_b = vb.min_x.clone().min(wb.min_x.clone()) - rat(3);
    let h_bot = u32::try_from(floor_i64(&vb.min_y.clone().min(wb.min_y.clone())) - 1).expect("lifted above zero");
    out.reroute_end(v_bottom.0, v_bottom.1, &[pt(x_b.clone(), h(b)), pt(x_b, h(h_bot))], Some(End::right(h_bot)));

    let crossing = pt(x_cut, y1);
    out.strands.push(Strand::new(PlCurve::new(arc1, None, None), source_label));
    out.strands.push(Strand::new(PlCurve::new(arc2, None, None), target_label.clone()));
    let row_y = &y2 + Rat::one();
    out.strands.extend(handles(&wb.min_x, &row_y, c.len(), eps, &target_label));
    annotate(&mut out, &crossing, c, false, eps);
    absorb(&mut out, ww);
    Ok((out, CablePlacement { first_dy, second_dx, second_dy, crossing }))
}


/// Joins the two lowest negative ends at a junction left of the diagram;
/// one strand labelled `merged` leaves it at the lower height.
pub(crate) fn merge_bottom(d: &CobordismDiagram, merged: &str) -> Result<CobordismDiagram> {
    let legs: Vec<u32> = d.neg_ends().keys().copied().collect();
    if legs.len() < 2 {
        return Err(Error::TooFewEnds(legs.len() + 1));
    }
    let (lo, hi) = (legs[0], legs[1]);
    let b = bbox(d)?;
    let x_j = &b.min_x - Rat::one();
    let junction = pt(x_j.clone(), h(lo));
    let s_lo = locate(d, Side::Left, lo)?;
    let s_hi = locate(d, Side::Left, hi)?;
    let mut out = d.clone();
    out.reroute_end(s_lo.0, s_lo.1, core::slice::from_ref(&junction), None);
    out.reroute_end(s_hi.0, s_hi.1, &[pt(x_j.clone(), h(hi)), junction.clone()], None);
    out.strands.push(Strand::new(PlCurve::new(vec![junction, pt(x_j - Rat::one(), h(lo))], None, Some(End::left(lo))), merged));
    Ok(out)
}
