use cobcalc::cabling::{braid_ends, cabling_equivalent, check_axioms, default_sample, erases_to_inputs, find_isomorphism, naturality_square, triangle_word, Verdict};
use cobcalc::category::{generator, identity, rotate, surgery};
use cobcalc::demo::demo_presentation;
use cobcalc::geometry::rat;

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

#[test]
fn x_and_y_surgeries_are_equivalent_with_witness_z() {
    let p = demo_presentation().unwrap();
    let sx = surgery(&p.catalog, "A", "B", &labels(&["x"]), &rat(0)).unwrap();
    let sy = surgery(&p.catalog, "A", "B", &labels(&["y"]), &rat(0)).unwrap();
    let c = cabling_equivalent(&sx, &sy, &p).unwrap();
    assert_eq!(c.verdict, Verdict::Equivalent);
    let eta = c.witness.clone().unwrap();
    assert_eq!(p.hom("A", "B").unwrap().labels_of(&eta), vec!["z"]);
    assert!(c.verify(&p).unwrap());
    let cabled = c.cable.unwrap();
    assert_eq!(cabled.source(), "A#[x]B");
    assert_eq!(cabled.negs(), ["A#[y]B"]);
    assert!(cabled.shadow().unwrap() > rat(0));
}

#[test]
fn self_equivalence_has_zero_witness_and_empty_marking_differs() {
    let p = demo_presentation().unwrap();
    let sx = surgery(&p.catalog, "A", "B", &labels(&["x"]), &rat(0)).unwrap();
    let c = cabling_equivalent(&sx, &sx, &p).unwrap();
    assert!(c.witness.unwrap().is_zero());
    let s0 = surgery(&p.catalog, "A", "B", &[], &rat(0)).unwrap();
    let c = cabling_equivalent(&sx, &s0, &p).unwrap();
    assert_eq!(c.verdict, Verdict::Inequivalent);
    assert!(c.witness.is_none() && c.verify(&p).unwrap());
}

#[test]
fn braiding_a_rotated_surgery_recovers_its_source() {
    let p = demo_presentation().unwrap();
    let sx = surgery(&p.catalog, "A", "B", &labels(&["x"]), &rat(0)).unwrap();
    let cone = rotate(&sx, 2).unwrap();
    assert_eq!(cone.negs(), ["B", "A"]);
    let b = braid_ends(&cone, &p).unwrap();
    assert_eq!(b.object.label, "A#[x]B");
    assert_eq!(b.word.negs(), ["A#[x]B"]);
    assert!(b.word.diagram().validate().is_ok());
    assert!(find_isomorphism(&p, cone.source(), &b.object.label).unwrap().is_some());
    let g = generator(&p.catalog, "g").unwrap();
    assert_eq!(braid_ends(&g, &p).unwrap().word.negs(), g.negs());
    assert!(find_isomorphism(&p, "A", "B").unwrap().is_some());
}

#[test]
fn braided_object_collects_double_points() {
    let p = demo_presentation().unwrap();
    let sx = surgery(&p.catalog, "A", "B", &labels(&["x"]), &rat(0)).unwrap();
    let b = braid_ends(&rotate(&sx, 2).unwrap(), &p).unwrap();
    let (a, bb) = (p.catalog.object("A").unwrap(), p.catalog.object("B").unwrap());
    assert_eq!(b.object.double_points.len(), a.double_points.len() + bb.double_points.len() + 1);
}

#[test]
fn naturality_square_of_the_two_surgeries() {
    let p = demo_presentation().unwrap();
    let (tx, ty) = (p.triangle("A", "B", "A#[x]B").unwrap(), p.triangle("A", "B", "A#[y]B").unwrap());
    let (sx, sy) = (triangle_word(&p, tx).unwrap(), triangle_word(&p, ty).unwrap());
    let sq = naturality_square(&identity("A"), &sx, &identity("B"), &sy, &p).unwrap();
    assert!(sq.holds(), "{:?}", sq.checks);
    assert_eq!(p.hom("A", "B").unwrap().labels_of(&sq.witness), vec!["z"]);
    assert_eq!((sq.fill.source.as_str(), sq.fill.target.as_str()), ("A#[x]B", "A#[y]B"));
    assert!(find_isomorphism(&p, "A#[x]B", "A#[y]B").unwrap().is_some());
    let back = naturality_square(&identity("A"), &sy, &identity("B"), &sx, &p).unwrap();
    assert!(back.holds());
}

#[test]
fn cable_erases_to_its_inputs() {
    let p = demo_presentation().unwrap();
    let sx = surgery(&p.catalog, "A", "B", &labels(&["x"]), &rat(0)).unwrap();
    let sy = surgery(&p.catalog, "A", "B", &labels(&["y"]), &rat(0)).unwrap();
    assert!(erases_to_inputs(&sx, &sy, &p.catalog).unwrap());
    assert!(erases_to_inputs(&sx, &sx, &p.catalog).unwrap());
}

#[test]
fn demo_passes_all_axioms() {
    let p = demo_presentation().unwrap();
    let sample = default_sample(&p);
    let report = check_axioms(&p, &sample).unwrap();
    for axiom in 1..=5 {
        assert!(report.count(axiom) > 0, "no instance of axiom {axiom}");
    }
    assert!(report.passed(), "{report}");
}

mod octahedral {
    use cobcalc::cabling::{octahedron, triangle_word};
    use cobcalc::category::Catalog;
    use cobcalc::gf2::{BitVec, ChainComplex, DgModel, GF2Matrix};
    use cobcalc::objects::MarkedObject;

    fn trivial(names: &[&str]) -> ChainComplex {
        ChainComplex::trivial(names.iter().map(|s| s.to_string()).collect())
    }

    fn matrix(rows: &[&str]) -> GF2Matrix {
        GF2Matrix::from_rows(rows[0].len(), rows.iter().map(|r| BitVec::from_bit_str(r).unwrap()).collect())
    }

    fn check(f: &[&str], g: &[&str], gf: &[&str], dims: [&[&str]; 3]) {
        let mut m = DgModel::new();
        for (label, basis) in ["L", "M", "N"].iter().zip(dims) {
            m.add_object(MarkedObject::new(*label), trivial(basis));
        }
        let k = m.add_surgery_cone("L", "M", &matrix(f)).unwrap();
        let k2 = m.add_surgery_cone("L", "N", &matrix(gf)).unwrap();
        let n = m.add_surgery_cone("M", "N", &matrix(g)).unwrap();
        let p = m.build(Catalog::new()).unwrap();
        let word = |a: &str, b: &str, c: &str| triangle_word(&p, p.triangle(a, b, c).unwrap()).unwrap();
        let (s, s2, v2) = (word("L", "M", &k), word("L", "N", &k2), word("M", "N", &n));
        let oct = octahedron(&s, &s2, &v2, &p).unwrap();
        assert!(oct.holds(), "{:?}", oct.checks);
        assert_eq!((oct.first.source.as_str(), oct.second.source.as_str(), oct.third.source.as_str()), (k.as_str(), k2.as_str(), n.as_str()));
        assert_eq!(oct.word.source(), k);
        assert_eq!(oct.word.target(), k2);
    }

    #[test]
    fn isomorphisms_compose() {
        check(&["1"], &["1"], &["1"], [&["l"], &["m"], &["n"]]);
    }

    #[test]
    fn rank_one_maps_through_a_plane() {
        check(&["1", "0"], &["11"], &["1"], [&["l"], &["m1", "m2"], &["n"]]);
        check(&["1", "1"], &["10"], &["1"], [&["l"], &["m1", "m2"], &["n"]]);
    }

    #[test]
    fn zero_composite() {
        check(&["1", "1"], &["11"], &["0"], [&["l"], &["m1", "m2"], &["n"]]);
    }
}
