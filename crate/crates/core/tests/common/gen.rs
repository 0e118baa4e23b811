//! Random catalogs, words, diagrams and presentations for the property and
//! acceptance tests.

use cobcalc::cabling::find_isomorphism;
use cobcalc::category::{compose, compose_at_leg, generator, rotate, surgery, Catalog, GeneratorShape, Word};
use cobcalc::demo::simple_diagram;
use cobcalc::geometry::{ratio, CobordismDiagram, End, PlCurve, Point2, Strand};
use cobcalc::gf2::{BitVec, ChainComplex, DgModel, GF2Matrix, Presentation};
use cobcalc::objects::{split_surgery_label, MarkedObject};
use rand::seq::SliceRandom;
use rand::Rng;

pub const OBJECTS: [&str; 3] = ["P0", "P1", "P2"];

/// A rational in `[lo, hi]` on the grid of step `1/den`.
pub fn coord<R: Rng>(rng: &mut R, lo: i64, hi: i64, den: i64) -> cobcalc::Rat {
    ratio(rng.gen_range(lo * den..=hi * den), den)
}

fn point<R: Rng>(rng: &mut R, x: (i64, i64), y: (i64, i64)) -> Point2 {
    let den = *[7, 11, 13].choose(rng).unwrap();
    Point2::new(coord(rng, x.0, x.1, den), coord(rng, y.0, y.1, den))
}

fn polygon<R: Rng>(rng: &mut R, x: (i64, i64), y: (i64, i64)) -> PlCurve {
    let n = rng.gen_range(3..=5);
    PlCurve::polygon(&(0..n).map(|_| point(rng, x, y)).collect::<Vec<_>>())
}

/// Adds up to `loops` random closed curves to `d`, keeping it valid.
pub fn decorate<R: Rng>(rng: &mut R, d: &CobordismDiagram, object: &str, loops: usize, x: (i64, i64), y: (i64, i64)) -> CobordismDiagram {
    let mut out = d.clone();
    for _ in 0..loops {
        for _ in 0..20 {
            let mut trial = out.clone();
            trial.strands.push(Strand::new(polygon(rng, x, y), object));
            if trial.validate().is_ok() {
                out = trial;
                break;
            }
        }
    }
    out
}

/// A random valid diagram: one to three open strands with rays on both sides
/// and up to three closed curves, all in a small box.
pub fn raw_diagram<R: Rng>(rng: &mut R) -> CobordismDiagram {
    loop {
        let mut strands = Vec::new();
        let open = rng.gen_range(1..=3);
        let mut left: Vec<u32> = (0..6).collect();
        let mut right: Vec<u32> = (0..6).collect();
        left.shuffle(rng);
        right.shuffle(rng);
        for k in 0..open {
            let (hl, hr) = (left[k], right[k]);
            let mut vs = vec![Point2::new(coord(rng, -4, -3, 1), ratio(hl as i64, 1))];
            for _ in 0..rng.gen_range(1..=3) {
                vs.push(point(rng, (-2, 2), (-1, 6)));
            }
            vs.push(Point2::new(coord(rng, 3, 4, 1), ratio(hr as i64, 1)));
            strands.push(Strand::new(PlCurve::new(vs, Some(End::left(hl)), Some(End::right(hr))), OBJECTS[k]));
        }
        for _ in 0..rng.gen_range(0..=3) {
            strands.push(Strand::new(polygon(rng, (-3, 3), (-1, 6)), "P0"));
        }
        let d = CobordismDiagram::new(strands);
        if d.validate().is_ok() {
            return d;
        }
    }
}

/// A catalog over [`OBJECTS`] with fan generators of every arity from one
/// to `max_negs` negative ends, each decorated with random loops.
pub fn fan_catalog<R: Rng>(rng: &mut R, max_negs: usize) -> Catalog {
    let mut cat = Catalog::new();
    for o in OBJECTS {
        cat.add_object(MarkedObject::new(o)).unwrap();
    }
    let mut count = 0;
    for n in 1..=max_negs {
        for _ in 0..2 {
            let source = OBJECTS.choose(rng).unwrap().to_string();
            let negs: Vec<String> = (0..n).map(|_| OBJECTS.choose(rng).unwrap().to_string()).collect();
            let top = n as i64;
            let base = Catalog::fan_diagram(&source, &negs);
            let loops = rng.gen_range(0..=2);
            let diagram = decorate(rng, &base, &source, loops, (-1, 2), (top - 2, top + 2));
            cat.add_generator(&format!("f{count}"), GeneratorShape { source, negs, diagram }).unwrap();
            count += 1;
        }
    }
    cat
}

/// A random word of at most `max_ends` ends built from the catalog's
/// generators by composition, leg composition and rotation.
pub fn random_word<R: Rng>(rng: &mut R, cat: &Catalog, max_ends: usize, ops: usize) -> Word {
    let names: Vec<&String> = cat.generators.keys().collect();
    let pick = |rng: &mut R, max: usize| -> Option<Word> {
        let fits: Vec<&&String> = names.iter().filter(|n| cat.generators[n.as_str()].negs.len() < max).collect();
        fits.choose(rng).map(|n| generator(cat, n).unwrap())
    };
    let mut w = pick(rng, max_ends).unwrap();
    for _ in 0..ops {
        let room = max_ends + 1 - w.end_count();
        match rng.gen_range(0..3) {
            0 => w = rotate(&w, rng.gen_range(-3..=3)).unwrap(),
            1 => {
                if let Some(k) = pick(rng, room) {
                    let k = retarget(rng, &k, w.target());
                    if let Some(k) = k {
                        w = compose(&k, &w).unwrap();
                    }
                }
            }
            _ => {
                if let Some(k) = pick(rng, room) {
                    let leg = rng.gen_range(0..w.negs().len());
                    if let Some(k) = retarget(rng, &k, &w.negs()[leg]) {
                        w = compose_at_leg(&w, leg, &k).unwrap();
                    }
                }
            }
        }
    }
    w
}

/// Some rotation of `k` whose source is `label`.
fn retarget<R: Rng>(rng: &mut R, k: &Word, label: &str) -> Option<Word> {
    let n = k.end_count() as i64;
    let mut shifts: Vec<i64> = (0..n).collect();
    shifts.shuffle(rng);
    shifts.into_iter().map(|s| rotate(k, s).unwrap()).find(|r| r.source() == label)
}

/// A complex of dimension `dim` with basis `{prefix}0, …`: a random
/// matching differential conjugated by an elementary change of basis.
pub fn random_complex<R: Rng>(rng: &mut R, prefix: &str, dim: usize) -> ChainComplex {
    let mut order: Vec<usize> = (0..dim).collect();
    order.shuffle(rng);
    let pairs = rng.gen_range(0..=dim / 2);
    let mut d = GF2Matrix::zeros(dim, dim);
    for k in 0..pairs {
        d.set(order[2 * k + 1], order[2 * k], true);
    }
    if dim >= 2 {
        let (a, b) = (rng.gen_range(0..dim), rng.gen_range(0..dim));
        if a != b {
            // (I + e_ab) is its own inverse
            let mut e = GF2Matrix::identity(dim);
            e.set(a, b, true);
            d = e.mul(&d).mul(&e);
        }
    }
    let basis = (0..dim).map(|i| format!("{prefix}{i}")).collect();
    ChainComplex::new(basis, (0..dim).map(|j| d.column(j)).collect()).unwrap()
}

/// A basis of the chain maps `a → b`, computed as the kernel of
/// `φ ↦ d_b φ + φ d_a` on all `dim b × dim a` matrices.
pub fn chain_maps(a: &ChainComplex, b: &ChainComplex) -> Vec<GF2Matrix> {
    let (na, nb) = (a.dim(), b.dim());
    let (da, db) = (a.d_matrix(), b.d_matrix());
    let unit = |k: usize| {
        let mut m = GF2Matrix::zeros(nb, na);
        m.set(k % nb, k / nb, true);
        m
    };
    let flat = |m: &GF2Matrix| BitVec::from_indices(na * nb, (0..na * nb).filter(|&k| m.get(k % nb, k / nb)));
    let columns: Vec<BitVec> = (0..na * nb).map(|k| {
        let e = unit(k);
        flat(&db.mul(&e)).xor(&flat(&e.mul(&da)))
    }).collect();
    GF2Matrix::from_columns(na * nb, &columns)
        .kernel()
        .into_iter()
        .map(|v| {
            let mut m = GF2Matrix::zeros(nb, na);
            for k in v.iter_ones() {
                m.set(k % nb, k / nb, true);
            }
            m
        })
        .collect()
}

pub fn random_combination<R: Rng>(rng: &mut R, basis: &[GF2Matrix], rows: usize, cols: usize) -> GF2Matrix {
    let mut m = GF2Matrix::zeros(rows, cols);
    for b in basis {
        if rng.gen_bool(0.5) {
            m = add(&m, b);
        }
    }
    m
}

pub fn add(x: &GF2Matrix, y: &GF2Matrix) -> GF2Matrix {
    let mut m = x.clone();
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            m.set(i, j, x.get(i, j) ^ y.get(i, j));
        }
    }
    m
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> GF2Matrix {
    let mut m = GF2Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rng.gen_bool(0.5));
        }
    }
    m
}

/// A random cone model: two or three base complexes and one or two cones of
/// random chain maps, some of them over earlier cones.
pub fn random_model<R: Rng>(rng: &mut R) -> DgModel {
    let mut m = DgModel::new();
    let mut objects: Vec<String> = Vec::new();
    for (i, o) in OBJECTS.iter().enumerate().take(rng.gen_range(2..=3)) {
        let dim = rng.gen_range(1..=3);
        m.add_object(MarkedObject::new(*o), random_complex(rng, &format!("p{i}_"), dim));
        objects.push(o.to_string());
    }
    let mut used = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let a = objects.choose(rng).unwrap().clone();
        let b = objects.choose(rng).unwrap().clone();
        let (ca, cb) = (m.complex(&a).unwrap().clone(), m.complex(&b).unwrap().clone());
        if a == b || ca.dim() + cb.dim() > 4 {
            continue;
        }
        let f = random_combination(rng, &chain_maps(&ca, &cb), cb.dim(), ca.dim());
        if used.contains(&(a.clone(), b.clone(), f.clone())) {
            continue;
        }
        if let Ok(label) = m.add_surgery_cone(&a, &b, &f) {
            used.push((a, b, f));
            objects.push(label);
        }
    }
    m
}

/// A validated presentation over [`random_model`] with simple generators
/// for every pair of objects found isomorphic (with declared inverses),
/// a surgery generator of positive size for every triangle, and the
/// triangle tuples declared null-cobordant in random rotations.
pub fn random_presentation<R: Rng>(rng: &mut R) -> Presentation {
    let mut p = random_model(rng).build(Catalog::new()).unwrap();
    let objects = p.objects();
    let mut k = 0;
    for (i, a) in objects.iter().enumerate() {
        for b in &objects[i + 1..] {
            let (ha, hb) = (p.hom(a, a).unwrap().homology().dim, p.hom(b, b).unwrap().homology().dim);
            if ha != hb || ha > 4 {
                continue;
            }
            if let Some((x, y)) = find_isomorphism(&p, a, b).unwrap() {
                let (g, gi) = (format!("i{k}"), format!("j{k}"));
                let shape = |s: &str, t: &str, area: i64| GeneratorShape { source: s.into(), negs: vec![t.into()], diagram: simple_diagram(s, t, area) };
                p.add_generator(&g, shape(a, b, rng.gen_range(0..=3)), x.rep, Some(gi.clone())).unwrap();
                p.add_generator(&gi, shape(b, a, rng.gen_range(0..=3)), y.rep, Some(g)).unwrap();
                k += 1;
            }
        }
    }
    for (i, t) in p.triangles.clone().iter().enumerate() {
        let (first, c, second) = split_surgery_label(&t.c).unwrap();
        let eps = ratio(1, rng.gen_range(2..=5));
        let w = surgery(&p.catalog, &first, &second, &c, &eps).unwrap();
        let shape = GeneratorShape { source: w.source().to_string(), negs: w.negs().to_vec(), diagram: w.diagram().clone() };
        p.add_generator(&format!("s{i}"), shape, t.f.clone(), None).unwrap();
        if rng.gen_bool(0.5) {
            let mut tuple = vec![t.a.clone(), t.c.clone(), t.b.clone()];
            tuple.rotate_left(rng.gen_range(0..3));
            p.nullcobs.push(tuple);
        }
    }
    p.validate().unwrap();
    p
}
