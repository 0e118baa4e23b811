//! Independent shadow oracle: vertical trapezoid decomposition of the plane
//! cut along the diagram. Trapezoids are joined across slab walls where the
//! wall is not covered by a vertical piece of the diagram; the shadow is the
//! total area of trapezoids not joined to infinity.

use cobcalc::geometry::{CobordismDiagram, Side};
use cobcalc::Rat;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

#[derive(Clone, Debug)]
struct Seg {
    x1: Rat,
    y1: Rat,
    x2: Rat,
    y2: Rat,
}

impl Seg {
    fn y_at(&self, x: &Rat) -> Rat {
        &self.y1 + (&self.y2 - &self.y1) * (x - &self.x1) / (&self.x2 - &self.x1)
    }
}

fn cross(ax: &Rat, ay: &Rat, bx: &Rat, by: &Rat) -> Rat {
    ax * by - ay * bx
}

/// x-coordinates where two closed segments meet (none for parallel pairs).
fn meet_x(p: &(Rat, Rat, Rat, Rat), q: &(Rat, Rat, Rat, Rat)) -> Option<Rat> {
    let (rx, ry) = (&p.2 - &p.0, &p.3 - &p.1);
    let (sx, sy) = (&q.2 - &q.0, &q.3 - &q.1);
    let den = cross(&rx, &ry, &sx, &sy);
    if den.is_zero() {
        return None;
    }
    let (qpx, qpy) = (&q.0 - &p.0, &q.1 - &p.1);
    let t = cross(&qpx, &qpy, &sx, &sy) / &den;
    let u = cross(&qpx, &qpy, &rx, &ry) / &den;
    let unit = Rat::one();
    if t.is_negative() || t > unit || u.is_negative() || u > unit {
        return None;
    }
    Some(&p.0 + t * rx)
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, i: usize) -> usize {
        let p = self.0[i];
        if p == i {
            return i;
        }
        let r = self.find(p);
        self.0[i] = r;
        r
    }
    fn join(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

pub struct Trapezoids {
    xs: Vec<Rat>,
    segs: Vec<Seg>,
    /// Per slab, segment indices sorted bottom to top.
    slabs: Vec<Vec<usize>>,
    /// Per slab, whether gap `k` (between sorted segments `k − 1` and `k`) is bounded.
    bounded: Vec<Vec<bool>>,
    fx: Vec<f64>,
    fsegs: Vec<(f64, f64, f64, f64)>,
}

/// Lower and upper ends of gap `k` on a vertical line (`None` is infinite).
fn gap_at(segs: &[Seg], order: &[usize], k: usize, x: &Rat) -> (Option<Rat>, Option<Rat>) {
    let lo = if k == 0 { None } else { Some(segs[order[k - 1]].y_at(x)) };
    let hi = if k == order.len() { None } else { Some(segs[order[k]].y_at(x)) };
    (lo, hi)
}

fn covered(lo: &Rat, hi: &Rat, walls: &[(Rat, Rat)]) -> bool {
    let mut reach = lo.clone();
    for (a, b) in walls {
        if *a > reach {
            return false;
        }
        if *b > reach {
            reach = b.clone();
        }
        if reach >= *hi {
            return true;
        }
    }
    reach >= *hi
}

impl Trapezoids {
    pub fn new(d: &CobordismDiagram) -> Self {
        let pts: Vec<_> = d.strands.iter().flat_map(|s| s.curve.vertices.iter()).collect();
        let min_x = pts.iter().map(|p| p.x.clone()).min().unwrap();
        let max_x = pts.iter().map(|p| p.x.clone()).max().unwrap();
        let far_l = min_x - Rat::from_integer(3.into());
        let far_r = max_x + Rat::from_integer(3.into());
        let mut raw: Vec<(Rat, Rat, Rat, Rat)> = Vec::new();
        for s in &d.strands {
            let c = &s.curve;
            for w in c.vertices.windows(2) {
                raw.push((w[0].x.clone(), w[0].y.clone(), w[1].x.clone(), w[1].y.clone()));
            }
            for (end, v) in [(c.first_end, c.vertices.first().unwrap()), (c.last_end, c.vertices.last().unwrap())] {
                if let Some(e) = end {
                    let x = if e.side == Side::Left { far_l.clone() } else { far_r.clone() };
                    raw.push((v.x.clone(), v.y.clone(), x, v.y.clone()));
                }
            }
        }
        let mut xs: Vec<Rat> = raw.iter().flat_map(|r| [r.0.clone(), r.2.clone()]).collect();
        for i in 0..raw.len() {
            for j in i + 1..raw.len() {
                if let Some(x) = meet_x(&raw[i], &raw[j]) {
                    xs.push(x);
                }
            }
        }
        xs.sort();
        xs.dedup();
        let mut segs = Vec::new();
        let mut walls: Vec<(Rat, Rat, Rat)> = Vec::new();
        for r in raw {
            if r.0 == r.2 {
                let (a, b) = if r.1 < r.3 { (r.1, r.3) } else { (r.3, r.1) };
                walls.push((r.0, a, b));
            } else if r.0 < r.2 {
                segs.push(Seg { x1: r.0, y1: r.1, x2: r.2, y2: r.3 });
            } else {
                segs.push(Seg { x1: r.2, y1: r.3, x2: r.0, y2: r.1 });
            }
        }
        walls.sort();
        let two = Rat::from_integer(2.into());
        let slabs: Vec<Vec<usize>> = xs
            .windows(2)
            .map(|w| {
                let mid = (&w[0] + &w[1]) / &two;
                let mut order: Vec<usize> = (0..segs.len()).filter(|&i| segs[i].x1 <= w[0] && segs[i].x2 >= w[1]).collect();
                order.sort_by(|&a, &b| segs[a].y_at(&mid).cmp(&segs[b].y_at(&mid)));
                order
            })
            .collect();
        // node 0 is the outside
        let mut offset = vec![1usize];
        for s in &slabs {
            offset.push(offset.last().unwrap() + s.len() + 1);
        }
        let mut dsu = Dsu((0..*offset.last().unwrap()).collect());
        for (si, s) in slabs.iter().enumerate() {
            dsu.join(offset[si], 0);
            dsu.join(offset[si] + s.len(), 0);
        }
        for (wi, x) in xs.iter().enumerate() {
            let here: Vec<(Rat, Rat)> = walls.iter().filter(|w| w.0 == *x).map(|w| (w.1.clone(), w.2.clone())).collect();
            let side = |slab: Option<usize>| -> Vec<(usize, Option<Rat>, Option<Rat>)> {
                match slab {
                    None => vec![(0, None, None)],
                    Some(si) => (0..=slabs[si].len())
                        .map(|k| {
                            let (lo, hi) = gap_at(&segs, &slabs[si], k, x);
                            (offset[si] + k, lo, hi)
                        })
                        .collect(),
                }
            };
            let left = side(if wi == 0 { None } else { Some(wi - 1) });
            let right = side(if wi + 1 == xs.len() { None } else { Some(wi) });
            for (a, alo, ahi) in &left {
                for (b, blo, bhi) in &right {
                    let lo = match (alo, blo) {
                        (Some(p), Some(q)) => Some(p.clone().max(q.clone())),
                        (p, q) => p.clone().or_else(|| q.clone()),
                    };
                    let hi = match (ahi, bhi) {
                        (Some(p), Some(q)) => Some(p.clone().min(q.clone())),
                        (p, q) => p.clone().or_else(|| q.clone()),
                    };
                    let open = match (&lo, &hi) {
                        (Some(l), Some(h)) => l < h && !covered(l, h, &here),
                        _ => true,
                    };
                    if open {
                        dsu.join(*a, *b);
                    }
                }
            }
        }
        let out = dsu.find(0);
        let bounded = slabs.iter().enumerate().map(|(si, s)| (0..=s.len()).map(|k| dsu.find(offset[si] + k) != out).collect()).collect();
        let f = |r: &Rat| r.to_f64().unwrap();
        let fx = xs.iter().map(f).collect();
        let fsegs = segs.iter().map(|s| (f(&s.x1), f(&s.y1), f(&s.x2), f(&s.y2))).collect();
        Self { xs, segs, slabs, bounded, fx, fsegs }
    }

    /// Exact total area of the bounded trapezoids.
    pub fn area(&self) -> Rat {
        let mut total = Rat::zero();
        let two = Rat::from_integer(2.into());
        for (si, order) in self.slabs.iter().enumerate() {
            let (xl, xr) = (&self.xs[si], &self.xs[si + 1]);
            for k in 1..order.len() {
                if self.bounded[si][k] {
                    let (lo, hi) = (&self.segs[order[k - 1]], &self.segs[order[k]]);
                    let h_l = hi.y_at(xl) - lo.y_at(xl);
                    let h_r = hi.y_at(xr) - lo.y_at(xr);
                    total += (xr - xl) * (h_l + h_r) / &two;
                }
            }
        }
        total
    }

    /// Box `(x0, x1, y0, y1)` around the bounded trapezoids, if any.
    pub fn window(&self) -> Option<(f64, f64, f64, f64)> {
        let mut w: Option<(f64, f64, f64, f64)> = None;
        for (si, order) in self.slabs.iter().enumerate() {
            for k in 1..order.len() {
                if !self.bounded[si][k] {
                    continue;
                }
                let (xl, xr) = (&self.xs[si], &self.xs[si + 1]);
                let ys = [self.segs[order[k - 1]].y_at(xl), self.segs[order[k - 1]].y_at(xr), self.segs[order[k]].y_at(xl), self.segs[order[k]].y_at(xr)];
                let f = |r: &Rat| r.to_f64().unwrap();
                let lo = ys.iter().map(f).fold(f64::INFINITY, f64::min);
                let hi = ys.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
                let b = (f(xl), f(xr), lo, hi);
                w = Some(match w {
                    None => b,
                    Some(a) => (a.0.min(b.0), a.1.max(b.1), a.2.min(b.2), a.3.max(b.3)),
                });
            }
        }
        w
    }

    /// Floating-point point location: whether `(x, y)` lies in a bounded face.
    pub fn inside(&self, x: f64, y: f64) -> bool {
        let n = self.fx.len();
        if n < 2 || x < self.fx[0] || x >= self.fx[n - 1] {
            return false;
        }
        let si = self.fx.partition_point(|&v| v <= x) - 1;
        let k = self.slabs[si]
            .iter()
            .filter(|&&i| {
                let (x1, y1, x2, y2) = self.fsegs[i];
                y1 + (y2 - y1) * (x - x1) / (x2 - x1) < y
            })
            .count();
        self.bounded[si][k]
    }

    /// Stratified Monte-Carlo estimate with one jittered sample per cell of a
    /// `g × g` grid over the bounded window.
    pub fn monte_carlo<R: Rng>(&self, g: usize, rng: &mut R) -> f64 {
        let Some((x0, x1, y0, y1)) = self.window() else { return 0.0 };
        let (cw, ch) = ((x1 - x0) / g as f64, (y1 - y0) / g as f64);
        let mut hits = 0usize;
        for i in 0..g {
            for j in 0..g {
                let x = x0 + (i as f64 + rng.gen::<f64>()) * cw;
                let y = y0 + (j as f64 + rng.gen::<f64>()) * ch;
                if self.inside(x, y) {
                    hits += 1;
                }
            }
        }
        hits as f64 / (g * g) as f64 * (x1 - x0) * (y1 - y0)
    }
}

/// Independent GF(2) elimination on plain boolean rows: is `v` in the span
/// of `vectors`?
pub fn in_span(vectors: &[Vec<bool>], v: &[bool]) -> bool {
    rank(vectors.to_vec()) == rank(vectors.iter().cloned().chain([v.to_vec()]).collect())
}

pub fn rank(mut rows: Vec<Vec<bool>>) -> usize {
    let width = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col]) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][col] {
                let pivot = rows[r].clone();
                rows[i].iter_mut().zip(pivot).for_each(|(x, y)| *x ^= y);
            }
        }
        r += 1;
    }
    r
}

pub fn bools(v: &cobcalc::gf2::BitVec) -> Vec<bool> {
    (0..v.len()).map(|i| v.get(i)).collect()
}

/// Cheapest weighted decomposition `start → (F…, target, F…)` by plain
/// enumeration of every move sequence of length at most `depth`, with end
/// lists capped at `max_ends`. `None` is `∞`.
pub fn brute_force(moves: &[cobcalc::metrics::DecompositionMove], start: &str, target: &str, family: &[String], depth: usize, max_ends: usize) -> Option<Rat> {
    fn admissible(ends: &[String], target: &str, family: &[String]) -> bool {
        (0..ends.len()).any(|i| ends[i] == target && ends.iter().enumerate().all(|(j, e)| j == i || family.contains(e)))
    }
    fn go(moves: &[cobcalc::metrics::DecompositionMove], ends: Vec<String>, cost: Rat, left: usize, cx: (&str, &[String], usize), best: &mut Option<Rat>) {
        let (target, family, max_ends) = cx;
        if admissible(&ends, target, family) && best.as_ref().is_none_or(|b| cost < *b) {
            *best = Some(cost.clone());
        }
        if left == 0 {
            return;
        }
        for m in moves {
            let mut options = Vec::new();
            if m.source == cobcalc::category::VOID {
                let mut e = m.negs.clone();
                e.extend(ends.iter().cloned());
                options.push(e);
            } else {
                for leg in (0..ends.len()).filter(|&l| ends[l] == m.source) {
                    let mut e = ends[..leg].to_vec();
                    e.extend(m.negs.iter().cloned());
                    e.extend(ends[leg + 1..].iter().cloned());
                    options.push(e);
                }
            }
            for e in options.into_iter().filter(|e| e.len() <= max_ends) {
                go(moves, e, &cost + &m.weight, left - 1, cx, best);
            }
        }
    }
    let mut best = None;
    go(moves, vec![start.to_string()], Rat::zero(), depth, (target, family, max_ends), &mut best);
    best
}
