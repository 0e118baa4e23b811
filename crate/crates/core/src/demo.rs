//! The demo presentation used throughout the tests and the CLI examples.
//!
//! `A = ⟨a⟩` and `B = ⟨b₁, b₂, b₃⟩` with `d b₃ = b₁ + b₂`, so
//! `CF(A, B) = ⟨x, y, z⟩` with `d z = x + y` and `CF(B, A) = ⟨u₁, u₂, u₃⟩`
//! with `d u₁ = d u₂ = u₃`. The cones of `x` and `y` are the surgery objects
//! `A#[x]B` and `A#[y]B`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::category::{self, Catalog, GeneratorShape};
use crate::geometry::{ratio, CobordismDiagram, End, PlCurve, Point2, Strand};
use crate::gf2::{BitVec, ChainComplex, DgModel, GF2Matrix, Presentation};
use crate::objects::{surgery_label, MarkedObject};
use crate::Result;

/// A simple generator drawn as two rays glued at the origin plus a
/// triangular loop of area `area_twice / 2` over the target ray (no loop
/// when `area_twice` is zero).
pub fn simple_diagram(source: &str, target: &str, area_twice: i64) -> CobordismDiagram {
    let o = Point2::int(0, 0);
    let mut strands = vec![
        Strand::new(PlCurve::new(vec![o.clone()], None, Some(End::right(0))), source),
        Strand::new(PlCurve::new(vec![o], None, Some(End::left(0))), target),
    ];
    if area_twice > 0 {
        strands.push(Strand::new(PlCurve::polygon(&[Point2::int(-1, 1), Point2::int(0, 1), Point2::new(ratio(-1, 1), ratio(1 + area_twice, 1))]), target));
    }
    CobordismDiagram::new(strands)
}

fn complex(labels: &[&str], images: &[&str]) -> ChainComplex {
    ChainComplex::new(labels.iter().map(|s| s.to_string()).collect(), images.iter().map(|s| BitVec::from_bit_str(s).expect("bit string")).collect())
        .expect("demo complex")
}

fn map(rows: &[&str]) -> GF2Matrix {
    let rows: Vec<BitVec> = rows.iter().map(|s| BitVec::from_bit_str(s).expect("bit string")).collect();
    GF2Matrix::from_rows(rows[0].len(), rows)
}

pub fn demo_model() -> DgModel {
    let mut m = DgModel::new();
    m.add_object(MarkedObject::new("A"), complex(&["a"], &["0"]));
    m.add_object(MarkedObject::new("B"), complex(&["b1", "b2", "b3"], &["000", "000", "110"]));
    m.relabel("A", "B", &["x", "y", "z"]).expect("dimensions");
    m.relabel("B", "A", &["u1", "u2", "u3"]).expect("dimensions");
    for (id, row) in [("x", ["1", "0", "0"]), ("y", ["0", "1", "0"])] {
        let label = surgery_label("A", &[id.to_string()], "B");
        m.add_cone(MarkedObject::new(label), "A", "B", &map(&row)).expect("chain map");
    }
    m
}

/// The demo presentation: objects `A`, `B`, `A#[x]B`, `A#[y]B`; generators
/// `g: A → B` (class `[x]`, shadow 1/2) and its inverse `gi: B → A` (class
/// `[u₁ + u₂]`, shadow 1/2); surgery generators `sx`, `sy` with handles of
/// size 1/4; δ(A, B) = δ(B, A) = 1/4.
pub fn demo_presentation() -> Result<Presentation> {
    let mut p = demo_model().build(Catalog::new())?;
    let x = p.chain("A", "B", &["x".into()])?;
    let u = p.chain("B", "A", &["u1".into(), "u2".into()])?;
    let g = GeneratorShape { source: "A".into(), negs: vec!["B".into()], diagram: simple_diagram("A", "B", 1) };
    p.add_generator("g", g, x, Some("gi".into()))?;
    let gi = GeneratorShape { source: "B".into(), negs: vec!["A".into()], diagram: simple_diagram("B", "A", 1) };
    p.add_generator("gi", gi, u, Some("g".into()))?;
    for (name, id) in [("sx", "x"), ("sy", "y")] {
        let c = vec![String::from(id)];
        let w = category::surgery(&p.catalog, "A", "B", &c, &ratio(1, 4))?;
        let shape = GeneratorShape { source: w.source().to_string(), negs: w.negs().to_vec(), diagram: w.diagram().clone() };
        let cycle = p.chain("A", "B", &c)?;
        p.add_generator(name, shape, cycle, None)?;
    }
    p.deltas.insert(("A".into(), "B".into()), ratio(1, 4));
    p.deltas.insert(("B".into(), "A".into()), ratio(1, 4));
    p.validate()?;
    Ok(p)
}

/// The demo presentation plus a generator `h: A → B` of shadow zero in the
/// class `[x]`: a counterexample for any positive width bound on `(A, B)`.
pub fn adversarial_presentation() -> Result<Presentation> {
    let mut p = demo_presentation()?;
    let x = p.chain("A", "B", &["x".into()])?;
    let h = GeneratorShape { source: "A".into(), negs: vec!["B".into()], diagram: simple_diagram("A", "B", 0) };
    p.add_generator("h", h, x, Some("gi".into()))?;
    p.validate()?;
    Ok(p)
}
