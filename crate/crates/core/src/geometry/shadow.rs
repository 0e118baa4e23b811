//! Shadow: total area of the bounded complementary regions of a diagram.
//!
//! Rays are clipped at a frame around the diagram and the frame rectangle is
//! added to the arrangement. Faces are traced with half-edges; a face is
//! unbounded iff its boundary uses a frame edge. Components not attached to
//! the frame become holes of the innermost face containing them.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::segment::{angle_cmp, intersect, Intersection, Segment};
use super::{detect_crossings, CobordismDiagram, Point2, Rat};
use crate::Result;

struct Cycle {
    vertices: Vec<usize>,
    twice_area: Rat,
    on_frame: bool,
    component: usize,
}

/// Exact shadow of a valid diagram.
pub fn shadow(d: &CobordismDiagram) -> Result<Rat> {
    detect_crossings(d)?;
    let Some(bb) = d.bbox() else { return Ok(Rat::zero()) };
    let mut segs: Vec<(Segment, bool)> = d.segments().into_iter().map(|(_, _, s)| (s, false)).collect();
    if segs.is_empty() {
        return Ok(Rat::zero());
    }
    let (x0, x1) = (&bb.min_x - Rat::one(), &bb.max_x + Rat::one());
    let (y0, y1) = (&bb.min_y - Rat::one(), &bb.max_y + Rat::one());
    let corners = [
        Point2::new(x0.clone(), y0.clone()),
        Point2::new(x1.clone(), y0.clone()),
        Point2::new(x1.clone(), y1.clone()),
        Point2::new(x0.clone(), y1.clone()),
    ];
    for i in 0..4 {
        segs.push((Segment::new(corners[i].clone(), corners[(i + 1) % 4].clone()), true));
    }
    let frame_area = (&x1 - &x0) * (&y1 - &y0);

    // split every segment at all points it shares with another
    let mut splits: Vec<Vec<Point2>> = segs.iter().map(|(s, _)| vec![s.a.clone(), s.b.clone()]).collect();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            match intersect(&segs[i].0, &segs[j].0) {
                Intersection::Cross(p) | Intersection::Touch(p) => {
                    splits[i].push(p.clone());
                    splits[j].push(p);
                }
                Intersection::None | Intersection::Overlap => {}
            }
        }
    }
    let mut index: BTreeMap<Point2, usize> = BTreeMap::new();
    let mut points: Vec<Point2> = Vec::new();
    let mut edges: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    for (pts, (_, frame)) in splits.iter_mut().zip(&segs) {
        pts.sort();
        pts.dedup();
        let ids: Vec<usize> = pts
            .iter()
            .map(|p| {
                *index.entry(p.clone()).or_insert_with(|| {
                    points.push(p.clone());
                    points.len() - 1
                })
            })
            .collect();
        for w in ids.windows(2) {
            let key = (w[0].min(w[1]), w[0].max(w[1]));
            *edges.entry(key).or_insert(false) |= *frame;
        }
    }

    // half-edges: 2e is u→v, 2e+1 is v→u
    let edge_list: Vec<((usize, usize), bool)> = edges.into_iter().collect();
    let head = |h: usize| if h.is_multiple_of(2) { edge_list[h / 2].0 .1 } else { edge_list[h / 2].0 .0 };
    let tail = |h: usize| if h.is_multiple_of(2) { edge_list[h / 2].0 .0 } else { edge_list[h / 2].0 .1 };
    let mut around: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
    for h in 0..2 * edge_list.len() {
        around[tail(h)].push(h);
    }
    for (v, hs) in around.iter_mut().enumerate() {
        let dir = |h: &usize| (&points[head(*h)].x - &points[v].x, &points[head(*h)].y - &points[v].y);
        hs.sort_by(|a, b| {
            let (ax, ay) = dir(a);
            let (bx, by) = dir(b);
            angle_cmp(&ax, &ay, &bx, &by)
        });
    }
    let mut position = vec![0usize; 2 * edge_list.len()];
    for hs in &around {
        for (k, h) in hs.iter().enumerate() {
            position[*h] = k;
        }
    }
    let next = |h: usize| {
        let twin = h ^ 1;
        let hs = &around[head(h)];
        hs[(position[twin] + hs.len() - 1) % hs.len()]
    };

    // connected components by union-find on vertices
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for ((u, v), _) in &edge_list {
        let (a, b) = (find(&mut parent, *u), find(&mut parent, *v));
        parent[a] = b;
    }

    let mut seen = vec![false; 2 * edge_list.len()];
    let mut cycles = Vec::new();
    for start in 0..2 * edge_list.len() {
        if seen[start] {
            continue;
        }
        let mut h = start;
        let mut cycle = Cycle { vertices: Vec::new(), twice_area: Rat::zero(), on_frame: false, component: find(&mut parent, tail(start)) };
        while !seen[h] {
            seen[h] = true;
            let (p, q) = (&points[tail(h)], &points[head(h)]);
            cycle.twice_area += &p.x * &q.y - &q.x * &p.y;
            cycle.on_frame |= edge_list[h / 2].1;
            cycle.vertices.push(tail(h));
            h = next(h);
        }
        cycles.push(cycle);
    }

    let frame_component = find(&mut parent, index[&corners[0]]);
    let mut unbounded: BTreeMap<usize, Rat> =
        cycles.iter().enumerate().filter(|(_, c)| c.on_frame && c.twice_area > Rat::zero()).map(|(i, c)| (i, c.twice_area.clone())).collect();
    for outer in cycles.iter().filter(|c| c.component != frame_component && c.twice_area <= Rat::zero()) {
        let probe = &points[outer.vertices[0]];
        let host = cycles
            .iter()
            .enumerate()
            .filter(|(_, c)| c.component != outer.component && c.twice_area > Rat::zero())
            .filter(|(_, c)| encloses(&points, &c.vertices, probe))
            .min_by(|a, b| a.1.twice_area.cmp(&b.1.twice_area))
            .map(|(i, _)| i);
        if let Some(area) = host.and_then(|i| unbounded.get_mut(&i)) {
            *area += &outer.twice_area;
        }
    }
    let open: Rat = unbounded.values().fold(Rat::zero(), |acc, a| acc + a);
    Ok(frame_area - open / Rat::from_integer(2.into()))
}

/// Even-odd test; `p` must not lie on the polygon.
fn encloses(points: &[Point2], cycle: &[usize], p: &Point2) -> bool {
    let mut inside = false;
    for k in 0..cycle.len() {
        let a = &points[cycle[k]];
        let b = &points[cycle[(k + 1) % cycle.len()]];
        if (a.y > p.y) != (b.y > p.y) {
            let x = &a.x + (&p.y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    inside
}
