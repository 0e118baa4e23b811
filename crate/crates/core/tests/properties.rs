//! Property tests for the geometric layer and the word calculus.

mod common;

use cobcalc::category::{compose, distinguished_triangle, rotate, surgery, surgery_sum, Word};
use cobcalc::geometry::{detect_crossings, rat, shadow, CobordismDiagram, End, Point2, Side};
use cobcalc::Rat;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::gen;
use common::oracle::Trapezoids;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn diagram(seed: u64) -> CobordismDiagram {
    let mut rng = rng(seed);
    if rng.gen_bool(0.5) {
        gen::raw_diagram(&mut rng)
    } else {
        let cat = gen::fan_catalog(&mut rng, 3);
        let ops = rng.gen_range(0..3);
        gen::random_word(&mut rng, &cat, 5, ops).diagram().clone()
    }
}

fn cross(ox: &Rat, oy: &Rat, ax: &Rat, ay: &Rat, bx: &Rat, by: &Rat) -> Rat {
    (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)
}

/// Proper crossings by brute force over all pairs of pieces, rays clipped far out.
fn crossing_points(d: &CobordismDiagram) -> Vec<Point2> {
    let far = rat(1000);
    let mut pieces: Vec<(Point2, Point2)> = Vec::new();
    for s in &d.strands {
        let c = &s.curve;
        let ray = |v: &Point2, side: Side| Point2::new(if side == Side::Left { -far.clone() } else { far.clone() }, v.y.clone());
        if let Some(e) = c.first_end {
            pieces.push((ray(&c.vertices[0], e.side), c.vertices[0].clone()));
        }
        for w in c.vertices.windows(2) {
            pieces.push((w[0].clone(), w[1].clone()));
        }
        if let Some(e) = c.last_end {
            let v = c.vertices.last().unwrap();
            pieces.push((v.clone(), ray(v, e.side)));
        }
    }
    let mut out = Vec::new();
    for (i, (p, p2)) in pieces.iter().enumerate() {
        for (q, q2) in &pieces[i + 1..] {
            let (rx, ry) = (&p2.x - &p.x, &p2.y - &p.y);
            let (sx, sy) = (&q2.x - &q.x, &q2.y - &q.y);
            let denom = &rx * &sy - &ry * &sx;
            if denom.is_zero() {
                continue;
            }
            let zero = Rat::zero();
            let t = cross(&zero, &zero, &(&q.x - &p.x), &(&q.y - &p.y), &sx, &sy) / &denom;
            let u = cross(&zero, &zero, &(&q.x - &p.x), &(&q.y - &p.y), &rx, &ry) / &denom;
            let one = rat(1);
            if t.is_positive() && t < one && u.is_positive() && u < one {
                out.push(Point2::new(&p.x + &t * &rx, &p.y + &t * &ry));
            }
        }
    }
    out.sort();
    out
}

/// The 180° rotation about `(0, H/2)` with `H` the largest end height.
fn half_turn(d: &CobordismDiagram) -> CobordismDiagram {
    let h = d.strands.iter().flat_map(|s| s.curve.ends()).map(|e| e.height).max().unwrap_or(0);
    let mut out = d.map_points(|p| Point2::new(-&p.x, rat(h.into()) - &p.y));
    for s in &mut out.strands {
        for e in [&mut s.curve.first_end, &mut s.curve.last_end].into_iter().flatten() {
            *e = End { side: e.side.flipped(), height: h - e.height };
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shadow_is_nonnegative_and_zero_iff_no_bounded_face(seed in any::<u64>()) {
        let d = diagram(seed);
        let s = shadow(&d).unwrap();
        prop_assert!(!s.is_negative());
        prop_assert_eq!(s.is_zero(), Trapezoids::new(&d).window().is_none());
    }

    #[test]
    fn shadow_is_invariant_under_translation_and_half_turn(seed in any::<u64>(), num in -40i64..40, den in 1i64..9) {
        let d = diagram(seed);
        let s = shadow(&d).unwrap();
        prop_assert_eq!(&shadow(&d.translate(&cobcalc::geometry::ratio(num, den))).unwrap(), &s);
        prop_assert_eq!(&shadow(&d.shift_up(3).unwrap()).unwrap(), &s);
        prop_assert_eq!(&shadow(&half_turn(&d)).unwrap(), &s);
        if d.end_count() <= 2 {
            prop_assert_eq!(&shadow(&d.invert().unwrap()).unwrap(), &s);
        }
    }

    #[test]
    fn crossings_match_all_pairs(seed in any::<u64>()) {
        let d = diagram(seed);
        let found: Vec<Point2> = detect_crossings(&d).unwrap().into_iter().map(|c| c.point).collect();
        prop_assert_eq!(found, crossing_points(&d));
    }

    #[test]
    fn word_ends_match_the_diagram(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let cat = gen::fan_catalog(&mut rng, 4);
        let ops = rng.gen_range(0..4);
        let w = gen::random_word(&mut rng, &cat, 6, ops);
        w.check_ends().unwrap();
        let pos: Vec<String> = w.diagram().pos_ends().into_values().collect();
        let neg: Vec<String> = w.diagram().neg_ends().into_values().collect();
        prop_assert_eq!(pos, vec![w.source().to_string()]);
        prop_assert_eq!(neg.as_slice(), w.negs());
    }

    #[test]
    fn full_rotation_is_the_identity(seed in any::<u64>(), k in -7i64..7) {
        let mut rng = rng(seed);
        let cat = gen::fan_catalog(&mut rng, 4);
        let ops = rng.gen_range(0..4);
        let w = gen::random_word(&mut rng, &cat, 6, ops);
        let n = w.end_count() as i64;
        prop_assert_eq!(&rotate(&w, n).unwrap(), &w);
        prop_assert_eq!(&rotate(&rotate(&w, k).unwrap(), -k).unwrap(), &w);
        prop_assert_eq!(rotate(&rotate(&w, k).unwrap(), n - k).unwrap(), w);
    }

    #[test]
    fn composition_adds_shadows(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let cat = gen::fan_catalog(&mut rng, 3);
        let v1 = gen::random_word(&mut rng, &cat, 4, 1);
        let v2 = gen::random_word(&mut rng, &cat, 4, 1);
        if let Some(v2) = (0..v2.end_count() as i64).map(|s| rotate(&v2, s).unwrap()).find(|r| r.source() == v1.target()) {
            let c = compose(&v2, &v1).unwrap();
            prop_assert_eq!(c.shadow().unwrap(), v1.shadow().unwrap() + v2.shadow().unwrap());
        }
    }

    #[test]
    fn triangles_cycle_under_rotation(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let cat = gen::fan_catalog(&mut rng, 2);
        let name = format!("f{}", rng.gen_range(2..4));
        let u: Word = cobcalc::category::generator(&cat, &name).unwrap();
        prop_assert_eq!(u.end_count(), 3);
        let (a, b, c) = distinguished_triangle(&u).unwrap();
        let (a2, b2, c2) = distinguished_triangle(&b).unwrap();
        prop_assert_eq!(a2, b.clone());
        prop_assert_eq!(b2, rotate(&u, 2).unwrap());
        prop_assert_eq!(c2, a);
        prop_assert_eq!(c, rotate(&u, 2).unwrap());
    }

    #[test]
    fn surgery_sums_form_the_power_set(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let p = gen::random_presentation(&mut rng);
        let objects = p.objects();
        let (a, b) = (&objects[0], &objects[1]);
        let ids: Vec<String> = p.catalog.intersections.points(a, b).iter().map(|x| x.id.clone()).take(4).collect();
        let n = ids.len();
        let mut words = Vec::new();
        for mask in 0u32..1 << n {
            let c: Vec<String> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| ids[i].clone()).collect();
            words.push(surgery(&p.catalog, a, b, &c, &Rat::zero()).unwrap());
        }
        let distinct: std::collections::BTreeSet<String> = words.iter().map(|w| w.to_string()).collect();
        prop_assert_eq!(distinct.len(), 1 << n);
        for (i, x) in words.iter().enumerate() {
            prop_assert_eq!(&surgery_sum(&p.catalog, x, x).unwrap(), &words[0]);
            for (j, y) in words.iter().enumerate() {
                prop_assert_eq!(&surgery_sum(&p.catalog, x, y).unwrap(), &words[i ^ j]);
            }
        }
    }
}
