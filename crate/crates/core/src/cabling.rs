//! Cabling equivalence decided through Θ, braiding of ends, and executable
//! forms of the cabling axioms and the triangulation constructions.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::category::{braid, cable, cable_with_placement, compose, identity, invert, rotate, surgery, union, Expr, Word, VOID};
use crate::geometry::{detect_crossings, CobordismDiagram, Point2, Rat};
use crate::gf2::{theta, triangle_of, BitVec, Presentation, Square, ThetaClass, Triangle};
use crate::objects::MarkedObject;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equivalent,
    Inequivalent,
}

/// Outcome of comparing two words up to cabling.
#[derive(Clone, Debug)]
pub struct EquivalenceCertificate {
    pub verdict: Verdict,
    /// A chain `η` with `d η = w + w′` for the two representatives.
    pub witness: Option<BitVec>,
    pub theta_values: (ThetaClass, ThetaClass),
    /// The cabling realizing the equivalence, when both words have enough ends.
    pub cable: Option<Word>,
}

impl EquivalenceCertificate {
    /// Re-checks the boundary equation of the witness.
    pub fn verify(&self, p: &Presentation) -> Result<bool> {
        let (a, b) = &self.theta_values;
        match (&self.verdict, &self.witness) {
            (Verdict::Equivalent, Some(eta)) => Ok(p.hom(&a.source, &a.target)?.d(eta) == a.rep.xor(&b.rep)),
            (Verdict::Equivalent, None) => Ok(false),
            (Verdict::Inequivalent, _) => Ok(!a.same_as(b, p)?),
        }
    }
}

/// Decides cabling equivalence as equality of Θ-classes and witnesses it.
pub fn cabling_equivalent(v: &Word, w: &Word, p: &Presentation) -> Result<EquivalenceCertificate> {
    let (tv, tw) = (theta(v, p)?, theta(w, p)?);
    let witness = if tv.source == tw.source && tv.target == tw.target {
        p.hom(&tv.source, &tv.target)?.bounding_chain(&tv.rep.xor(&tw.rep))
    } else {
        None
    };
    let verdict = if witness.is_some() { Verdict::Equivalent } else { Verdict::Inequivalent };
    let cable = match &witness {
        Some(eta) if v.negs().len() >= 2 => {
            let labels: Vec<String> = p.hom(&tv.source, &tv.target)?.labels_of(eta).into_iter().map(String::from).collect();
            cable(&p.catalog, v, w, &labels, &Rat::zero()).ok()
        }
        _ => None,
    };
    Ok(EquivalenceCertificate { verdict, witness, theta_values: (tv, tw), cable })
}

/// Result of braiding all negative ends of a word into one.
#[derive(Clone, Debug)]
pub struct Braided {
    pub word: Word,
    pub object: MarkedObject,
    pub markings: Vec<Vec<String>>,
}

/// Replaces the two lowest negative ends by their surgery until one end is
/// left. Each marking is the map of a declared triangle between the two
/// objects, or empty when none is declared.
pub fn braid_ends(v: &Word, p: &Presentation) -> Result<Braided> {
    let negs = v.negs();
    if negs.is_empty() {
        return Err(Error::TooFewEnds(v.end_count()));
    }
    let mut markings = Vec::with_capacity(negs.len() - 1);
    let mut merged = negs[0].clone();
    for next in &negs[1..] {
        let c = declared_marking(p, next, &merged)?;
        merged = crate::objects::surgery_label(next, &c, &merged);
        markings.push(c);
    }
    let (word, object) = braid(&p.catalog, v, &markings)?;
    Ok(Braided { word, object, markings })
}

fn declared_marking(p: &Presentation, a: &str, b: &str) -> Result<Vec<String>> {
    match p.triangles.iter().find(|t| t.a == a && t.b == b) {
        Some(t) => Ok(p.hom(a, b)?.labels_of(&t.f).into_iter().map(String::from).collect()),
        None => Ok(Vec::new()),
    }
}

/// An isomorphism `a → b` in homology, with its inverse, found by search.
pub fn find_isomorphism(p: &Presentation, a: &str, b: &str) -> Result<Option<(ThetaClass, ThetaClass)>> {
    let forward = p.hom(a, b)?.homology().representatives;
    let backward = p.hom(b, a)?.homology().representatives;
    if forward.len() > 16 || backward.len() > 16 {
        return Err(Error::Dimension(format!("homology of ({a}, {b}) too large to search")));
    }
    let (ea, eb) = (p.unit(a)?, p.unit(b)?);
    for x in combinations(&forward, p.hom_dim(a, b)) {
        for y in combinations(&backward, p.hom_dim(b, a)) {
            if p.same_class(a, a, &p.mu2(a, b, a, &x, &y)?, ea)? && p.same_class(b, b, &p.mu2(b, a, b, &y, &x)?, eb)? {
                let class = |s: &str, t: &str, rep: BitVec| ThetaClass { source: s.to_string(), target: t.to_string(), rep };
                return Ok(Some((class(a, b, x), class(b, a, y))));
            }
        }
    }
    Ok(None)
}

fn combinations(basis: &[BitVec], dim: usize) -> Vec<BitVec> {
    (0u32..1 << basis.len())
        .map(|mask| {
            let mut v = BitVec::zeros(dim);
            for (i, b) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    v.xor_assign(b);
                }
            }
            v
        })
        .collect()
}

/// A 3-ended word `a → (c, b)` whose class is the map of `t`: a surgery when
/// `c` is the surgery object, else a generator with those ends.
pub fn triangle_word(p: &Presentation, t: &Triangle) -> Result<Word> {
    let c: Vec<String> = p.hom(&t.a, &t.b)?.labels_of(&t.f).into_iter().map(String::from).collect();
    if let Ok(s) = surgery(&p.catalog, &t.a, &t.b, &c, &Rat::zero()) {
        if s.negs()[0] == t.c {
            return Ok(s);
        }
    }
    p.generators
        .iter()
        .filter(|(_, g)| g.cycle == t.f)
        .filter_map(|(name, _)| crate::category::generator(&p.catalog, name).ok())
        .find(|g| g.source() == t.a && g.negs() == [t.c.clone(), t.b.clone()])
        .ok_or_else(|| Error::NotEvaluable(format!("no word realizes the triangle {} → {} → {}", t.a, t.b, t.c)))
}

/// One checked identity of a construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

fn check(name: &str, pass: bool) -> Check {
    Check { name: name.to_string(), pass }
}

/// The fill-in of a commuting square of triangles, realized as a cable.
#[derive(Clone, Debug)]
pub struct NaturalitySquare {
    /// `V″ = cable(v′ ∘ s, s′ ∘ v; h)`, a word `K → K′`.
    pub word: Word,
    pub fill: ThetaClass,
    /// `h` with `d h = s·v′ + v·s′`.
    pub witness: BitVec,
    pub checks: Vec<Check>,
}

impl NaturalitySquare {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Builds `V″: K → K′` for `v: L → L′`, `s: L → (K, M)`, `v′: M → M′`,
/// `s′: L′ → (K′, M′)` and checks the two squares it closes.
pub fn naturality_square(v: &Word, s: &Word, v2: &Word, s2: &Word, p: &Presentation) -> Result<NaturalitySquare> {
    let square = Square::new(v, s, v2, s2, p)?;
    let (l, m2) = (&square.s.a, &square.s2.b);
    let hom = p.hom(l, m2)?;
    let witness = hom.bounding_chain(&square.defect(p)?).ok_or_else(|| Error::NotCommuting(format!("Θ({v2} ∘ {s}) ≠ Θ({s2} ∘ {v})")))?;
    let labels: Vec<String> = hom.labels_of(&witness).into_iter().map(String::from).collect();
    let word = cable(&p.catalog, &compose(v2, s)?, &compose(s2, v)?, &labels, &Rat::zero())?;
    let fill = theta(&word, p)?;
    let (t, t2) = (rotate(s, 1)?, rotate(s2, 1)?);
    let (u, u2) = (rotate(s, 2)?, rotate(s2, 2)?);
    let same = |a: &Word, b: &Word| -> Result<bool> { theta(a, p)?.same_as(&theta(b, p)?, p) };
    let checks = vec![
        check("Θ(V″ ∘ Rs) = Θ(Rs′ ∘ V′)", same(&compose(&word, &t)?, &compose(&t2, v2)?)?),
        check("Θ(V ∘ R²s) = Θ(R²s′ ∘ V″)", same(&compose(v, &u)?, &compose(&u2, &word)?)?),
    ];
    Ok(NaturalitySquare { word, fill, witness, checks })
}

/// The third side of the octahedron for `s: L → (K, M)`, `s′: L → (K′, M′)`
/// and `v′: M → (N, M′)` with `s′ ≃ v′ ∘ s`.
#[derive(Clone, Debug)]
pub struct Octahedron {
    /// `K → K′`, realized by `word`.
    pub first: ThetaClass,
    /// `K′ → N`.
    pub second: ThetaClass,
    /// `N → K`, the composite through `M`.
    pub third: ThetaClass,
    pub word: Word,
    pub checks: Vec<Check>,
}

impl Octahedron {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn triangle(&self) -> Triangle {
        Triangle {
            a: self.first.source.clone(),
            b: self.second.source.clone(),
            c: self.third.source.clone(),
            f: self.first.rep.clone(),
            iota: self.second.rep.clone(),
            pi: self.third.rep.clone(),
            split: None,
        }
    }
}

pub fn octahedron(s: &Word, s2: &Word, v2: &Word, p: &Presentation) -> Result<Octahedron> {
    let exact = |w: &Word| triangle_of(w, p).map_err(|e| Error::NotExact(format!("{w}: {e}")));
    let (ts, ts2, tv) = (exact(s)?, exact(s2)?, exact(v2)?);
    if ts.a != ts2.a || tv.a != ts.b || tv.b != ts2.b {
        return Err(Error::NotExact(format!("{s}, {s2}, {v2} do not share their corners")));
    }
    let (l, m, m2) = (ts.a.as_str(), ts.b.as_str(), ts2.b.as_str());
    let (k, k2, n) = (ts.c.as_str(), ts2.c.as_str(), tv.c.as_str());
    let f_sq = Square::new(&identity(l), s, v2, s2, p)?;
    let g_sq = Square::new(s, s2, &identity(m2), v2, p)?;
    let solve = |sq: &Square| -> Result<BitVec> {
        p.hom(l, m2)?.bounding_chain(&sq.defect(p)?).ok_or_else(|| Error::NotCommuting(format!("{s2} is not homotopic to {v2} ∘ {s}")))
    };
    let h = solve(&f_sq)?;
    let labels: Vec<String> = p.hom(l, m2)?.labels_of(&h).into_iter().map(String::from).collect();
    let word = cable(&p.catalog, &compose(v2, s)?, &compose(s2, &identity(l))?, &labels, &Rat::zero())?;
    let first = theta(&word, p)?;
    let second = g_sq.fill(&solve(&g_sq)?, p)?;
    let third = ThetaClass { source: n.to_string(), target: k.to_string(), rep: p.mu2(n, m, k, &tv.pi, &ts.iota)? };

    let same = |a: &str, b: &str, x: &BitVec, y: &BitVec| p.same_class(a, b, x, y);
    let mut checks = vec![
        check("F ∘ ι_s = ι_s′ ∘ v′", same(m, k2, &p.mu2(m, k, k2, &ts.iota, &first.rep)?, &p.mu2(m, m2, k2, &tv.f, &ts2.iota)?)?),
        check("π_s′ ∘ F = π_s", same(k, l, &p.mu2(k, k2, l, &first.rep, &ts2.pi)?, &ts.pi)?),
        check("G ∘ ι_s′ = ι_v′", same(m2, n, &p.mu2(m2, k2, n, &ts2.iota, &second.rep)?, &tv.iota)?),
        check("π_v′ ∘ G = s ∘ π_s′", same(k2, m, &p.mu2(k2, n, m, &second.rep, &tv.pi)?, &p.mu2(k2, l, m, &ts2.pi, &ts.f)?)?),
    ];
    let oct = Octahedron { first, second, third, word, checks: Vec::new() };
    checks.push(check("K → K′ → N → K exact", p.check_triangle(&oct.triangle()).is_ok()));
    Ok(Octahedron { checks, ..oct })
}

/// One instance of an axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomLine {
    pub axiom: u8,
    pub instance: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub lines: Vec<AxiomLine>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomLine> {
        self.lines.iter().filter(|l| !l.pass)
    }

    pub fn count(&self, axiom: u8) -> usize {
        self.lines.iter().filter(|l| l.axiom == axiom).count()
    }

    fn push(&mut self, axiom: u8, instance: String, pass: bool, detail: impl Into<String>) {
        self.lines.push(AxiomLine { axiom, instance, pass, detail: detail.into() });
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{} axiom {} {} | {}", if l.pass { "PASS" } else { "FAIL" }, l.axiom, l.instance, l.detail)?;
        }
        Ok(())
    }
}

/// Identities, generators and their rotations, and one word per declared
/// triangle; only the Θ-evaluable ones are kept.
pub fn default_sample(p: &Presentation) -> Vec<Word> {
    let mut out: Vec<Word> = p.objects().iter().map(|o| identity(o)).collect();
    let mut bases: Vec<Word> = p.catalog.generators.keys().filter_map(|g| crate::category::generator(&p.catalog, g).ok()).collect();
    bases.extend(p.triangles.iter().filter_map(|t| triangle_word(p, t).ok()));
    for b in bases {
        for k in 0..b.end_count() as i64 {
            if let Ok(r) = rotate(&b, k) {
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out.retain(|w| theta(w, p).is_ok());
    out
}

fn cert_detail(c: &EquivalenceCertificate, p: &Presentation) -> String {
    let (a, _) = &c.theta_values;
    match &c.witness {
        Some(eta) => format!("witness {{{}}}", p.hom(&a.source, &a.target).map(|h| h.labels_of(eta).join(",")).unwrap_or_default()),
        None => "no witness".into(),
    }
}

/// Runs the Θ-level form of each cabling axiom over `sample`.
pub fn check_axioms(p: &Presentation, sample: &[Word]) -> Result<AxiomReport> {
    for w in sample {
        theta(w, p)?;
    }
    let mut report = AxiomReport::default();
    axiom1(p, sample, &mut report)?;
    axiom2(p, sample, &mut report)?;
    axiom3(p, sample, &mut report)?;
    axiom4(p, sample, &mut report)?;
    axiom5(p, sample, &mut report)?;
    Ok(report)
}

fn same_hom(v: &Word, w: &Word) -> bool {
    v.source() == w.source() && v.target() == w.target()
}

fn axiom1(p: &Presentation, sample: &[Word], report: &mut AxiomReport) -> Result<()> {
    let n = sample.len();
    let mut equiv = vec![vec![false; n]; n];
    for (i, v) in sample.iter().enumerate() {
        for (j, w) in sample.iter().enumerate() {
            if !same_hom(v, w) || j < i {
                continue;
            }
            let c = cabling_equivalent(v, w, p)?;
            let back = cabling_equivalent(w, v, p)?;
            let ok = c.verify(p)? && back.verify(p)? && c.verdict == back.verdict && (i != j || c.verdict == Verdict::Equivalent);
            equiv[i][j] = c.verdict == Verdict::Equivalent;
            equiv[j][i] = equiv[i][j];
            let kind = if i == j { "reflexive" } else { "symmetric" };
            report.push(1, format!("{kind} {v} ~ {w}"), ok, format!("{:?}, {}", c.verdict, cert_detail(&c, p)));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k && i != k && equiv[i][j] && equiv[j][k] {
                    report.push(1, format!("transitive {} ~ {}", sample[i], sample[k]), equiv[i][k], "via the middle word");
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j || !equiv[i][j] {
                continue;
            }
            let (v, w) = (&sample[i], &sample[j]);
            for u in sample.iter().filter(|u| u.source() == v.target() && u.source() != VOID) {
                let pass = cabling_equivalent(&compose(u, v)?, &compose(u, w)?, p)?.verdict == Verdict::Equivalent;
                report.push(1, format!("left congruence {u} ∘ ({v} ~ {w})"), pass, "compose after");
            }
            for u in sample.iter().filter(|u| u.target() == v.source() && u.is_simple()) {
                let pass = cabling_equivalent(&compose(v, u)?, &compose(w, u)?, p)?.verdict == Verdict::Equivalent;
                report.push(1, format!("right congruence ({v} ~ {w}) ∘ {u}"), pass, "compose before");
            }
        }
    }
    for v in sample {
        let padded = union(v, &identity(VOID))?;
        let pass = cabling_equivalent(v, &padded, p)?.verdict == Verdict::Equivalent;
        report.push(1, format!("void end {v}"), pass, "union with the void identity");
    }
    Ok(())
}

/// Crossing points of a diagram, shifted.
fn crossing_points(d: &CobordismDiagram, dx: &Rat, dy: i64) -> Result<Vec<Point2>> {
    let dy = Rat::from_integer(dy.into());
    Ok(detect_crossings(d)?.into_iter().map(|c| c.point.shifted(dx, &dy)).collect())
}

/// Erasing the cabling crossing leaves exactly the crossings of the two inputs.
pub fn erases_to_inputs(v: &Word, w: &Word, cat: &crate::category::Catalog) -> Result<bool> {
    let (cabled, place) = cable_with_placement(cat, v, w, &[], &Rat::zero())?;
    let mut found = crossing_points(cabled.diagram(), &Rat::zero(), 0)?;
    let Some(at) = found.iter().position(|q| *q == place.crossing) else {
        return Ok(false);
    };
    found.remove(at);
    let mut expected = crossing_points(v.diagram(), &Rat::zero(), place.first_dy)?;
    expected.extend(crossing_points(w.diagram(), &place.second_dx, place.second_dy)?);
    found.sort();
    expected.sort();
    Ok(found == expected)
}

fn axiom2(p: &Presentation, sample: &[Word], report: &mut AxiomReport) -> Result<()> {
    for v in sample.iter().filter(|v| v.negs().len() >= 2) {
        for w in sample.iter().filter(|w| same_hom(v, w) && w.negs().len() >= 2) {
            let pass = erases_to_inputs(v, w, &p.catalog)?;
            report.push(2, format!("erase crossing of cable {v} {w}"), pass, "crossings outside P belong to the inputs");
        }
    }
    Ok(())
}

fn axiom3(p: &Presentation, sample: &[Word], report: &mut AxiomReport) -> Result<()> {
    for v in sample.iter().filter(|v| v.is_simple() && v.source() != VOID) {
        let instance = format!("{v} ∘ inverse");
        let outcome = invert(v).and_then(|bar| {
            let there = theta(&compose(&bar, v)?, p)?.same_as(&theta(&identity(v.source()), p)?, p)?;
            let back = theta(&compose(v, &bar)?, p)?.same_as(&theta(&identity(v.target()), p)?, p)?;
            Ok(there && back)
        });
        match outcome {
            Ok(pass) => report.push(3, instance, pass, "Θ(V̄) ∘ Θ(V) = e and Θ(V) ∘ Θ(V̄) = e"),
            Err(e) => report.push(3, instance, false, format!("{e}")),
        }
    }
    Ok(())
}

fn axiom4(p: &Presentation, sample: &[Word], report: &mut AxiomReport) -> Result<()> {
    for u in sample.iter().filter(|u| u.end_count() == 3) {
        let t = theta(u, p)?;
        // CF(L, L) has no intersection points to mark, so self-surgery is out of reach
        if t.source == t.target {
            continue;
        }
        let labels: Vec<String> = p.hom(&t.source, &t.target)?.labels_of(&t.rep).into_iter().map(String::from).collect();
        let instance = format!("surgery for {u}");
        match surgery(&p.catalog, &t.source, &t.target, &labels, &Rat::zero()) {
            Ok(s) => {
                let pass = theta(&s, p)?.same_as(&t, p)?;
                let ends = if s.negs() == u.negs() { "same ends" } else { "same class, different surgery object" };
                report.push(4, instance, pass, format!("{s}, {ends}"));
            }
            Err(e) => report.push(4, instance, false, format!("{e}")),
        }
    }
    Ok(())
}

fn axiom5(p: &Presentation, sample: &[Word], report: &mut AxiomReport) -> Result<()> {
    let words: Vec<Word> = p.triangles.iter().filter(|t| t.split.is_some()).filter_map(|t| triangle_word(p, t).ok()).collect();
    let maps = |a: &str, b: &str| -> Vec<Word> {
        let mut out: Vec<Word> = sample.iter().filter(|w| w.is_simple() && w.source() == a && w.target() == b).cloned().collect();
        if a == b && !out.iter().any(|w| matches!(w.expr(), Expr::Identity(_))) {
            out.push(identity(a));
        }
        out
    };
    for s in &words {
        for s2 in &words {
            for v in maps(s.source(), s2.source()) {
                for v2 in maps(s.target(), s2.target()) {
                    match naturality_square(&v, s, &v2, s2, p) {
                        Ok(sq) => {
                            let failed: Vec<&str> = sq.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
                            let detail = if failed.is_empty() { format!("V″ = {}", sq.word) } else { failed.join("; ") };
                            report.push(5, format!("square {s} {s2} along {v}, {v2}"), failed.is_empty(), detail);
                        }
                        Err(Error::NotCommuting(_)) => {}
                        Err(e) => report.push(5, format!("square {s} {s2} along {v}, {v2}"), false, format!("{e}")),
                    }
                }
            }
        }
    }
    Ok(())
}
