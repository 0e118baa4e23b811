//! Morphism words of the cobordism category and their realized diagrams.
//!
//! A word `L → (L₁, …, L_m)` has one positive end (its source `L`) and
//! negative ends listed bottom to top; the top one is the target. The end
//! cycle is `[L, L₁, …, L_m]`.

mod layout;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

pub use layout::CablePlacement;

use crate::geometry::{shadow, CobordismDiagram, PlCurve, Rat, Strand};
use crate::objects::{check_action, surgery_object, ActionRule, IntersectionTable, MarkedObject};
use crate::{Error, Result};

/// Label of the empty object.
pub const VOID: &str = "void";

/// Shape of a generating cobordism: its ends and realized diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorShape {
    pub source: String,
    pub negs: Vec<String>,
    pub diagram: CobordismDiagram,
}

/// Objects, intersection data and generator shapes that words are built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub objects: BTreeMap<String, MarkedObject>,
    pub intersections: IntersectionTable,
    pub generators: BTreeMap<String, GeneratorShape>,
    pub rule: ActionRule,
    /// Height of the cabling arcs above the diagrams they join.
    pub bend_clearance: Rat,
}

impl Default for Catalog {
    fn default() -> Self {
        Self {
            objects: BTreeMap::new(),
            intersections: IntersectionTable::new(),
            generators: BTreeMap::new(),
            rule: ActionRule::Pointwise,
            bend_clearance: Rat::one(),
        }
    }
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, object: MarkedObject) -> Result<()> {
        object.validate()?;
        self.objects.insert(object.label.clone(), object);
        Ok(())
    }

    pub fn object(&self, label: &str) -> Result<&MarkedObject> {
        self.objects.get(label).ok_or_else(|| Error::UnknownObject(label.to_string()))
    }

    /// Registers a generator after checking that its diagram realizes the declared ends.
    pub fn add_generator(&mut self, name: &str, shape: GeneratorShape) -> Result<()> {
        for l in core::iter::once(&shape.source).chain(&shape.negs) {
            if l != VOID {
                self.object(l)?;
            }
        }
        if shape.negs.is_empty() || shape.negs.iter().any(|n| n == VOID) {
            return Err(Error::InvalidDiagram(format!("generator {name} needs non-void negative ends")));
        }
        shape.diagram.validate()?;
        check_realization(&shape.diagram, &shape.source, &shape.negs)?;
        self.generators.insert(name.to_string(), shape);
        Ok(())
    }

    /// Default straight-line diagram for a generator: a Y-shaped fan of
    /// strands, the source entering from the right at height 0.
    pub fn fan_diagram(source: &str, negs: &[String]) -> CobordismDiagram {
        use crate::geometry::{End, Point2};
        let top = negs.len() as i64;
        let hub = Point2::int(0, top);
        let mut strands = Vec::new();
        if source != VOID {
            strands.push(Strand::new(PlCurve::new(vec![Point2::int(1, top), hub.clone()], Some(crate::geometry::End::right(top as u32)), None), source));
        }
        for (i, n) in negs.iter().enumerate() {
            let hgt = 2 * i as i64;
            strands.push(Strand::new(PlCurve::new(vec![hub.clone(), Point2::int(-1, hgt)], None, Some(End::left(hgt as u32))), n.clone()));
        }
        CobordismDiagram::new(strands)
    }
}

fn check_realization(d: &CobordismDiagram, source: &str, negs: &[String]) -> Result<()> {
    let pos: Vec<String> = d.pos_ends().into_values().collect();
    let want_pos: Vec<String> = if source == VOID { Vec::new() } else { vec![source.to_string()] };
    if pos != want_pos {
        return Err(Error::EndMismatch { expected: want_pos.join(","), found: pos.join(",") });
    }
    let found: Vec<String> = d.neg_ends().into_values().collect();
    if found != negs {
        return Err(Error::EndMismatch { expected: negs.join(","), found: found.join(",") });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Identity(String),
    Generator(String),
    /// `Compose(second, first)`: `first` then `second` glued on its target.
    Compose(Box<Word>, Box<Word>),
    ComposeAtLeg(Box<Word>, usize, Box<Word>),
    /// `Rotate(base, k)` with `base` not itself a rotation and `0 < k < ends`.
    Rotate(Box<Word>, usize),
    Surgery { first: String, second: String, c: Vec<String>, eps: Rat },
    Union(Box<Word>, Box<Word>),
    Cable { first: Box<Word>, second: Box<Word>, c: Vec<String>, eps: Rat },
    Invert(Box<Word>),
    /// Negative ends merged bottom-up by 0-size surgeries with the given markings.
    Braid(Box<Word>, Vec<Vec<String>>),
}

/// A morphism word together with its realized diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    expr: Expr,
    source: String,
    negs: Vec<String>,
    diagram: CobordismDiagram,
}

impl Word {
    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Negative ends, bottom to top.
    pub fn negs(&self) -> &[String] {
        &self.negs
    }

    pub fn target(&self) -> &str {
        self.negs.last().map_or(VOID, String::as_str)
    }

    /// The end cycle `[source, negs…]` (a void source is omitted).
    pub fn ends(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.negs.len() + 1);
        if self.source != VOID {
            out.push(self.source.clone());
        }
        out.extend(self.negs.iter().cloned());
        out
    }

    pub fn end_count(&self) -> usize {
        usize::from(self.source != VOID) + self.negs.len()
    }

    pub fn is_simple(&self) -> bool {
        self.source != VOID && self.negs.len() == 1
    }

    pub fn diagram(&self) -> &CobordismDiagram {
        &self.diagram
    }

    pub fn shadow(&self) -> Result<Rat> {
        shadow(&self.diagram)
    }

    /// Checks that the realized diagram carries exactly the word's ends.
    pub fn check_ends(&self) -> Result<()> {
        self.diagram.validate()?;
        check_realization(&self.diagram, &self.source, &self.negs)
    }
}

pub fn identity(label: &str) -> Word {
    if label == VOID {
        return Word { expr: Expr::Identity(label.to_string()), source: VOID.into(), negs: Vec::new(), diagram: CobordismDiagram::default() };
    }
    Word {
        expr: Expr::Identity(label.to_string()),
        source: label.to_string(),
        negs: vec![label.to_string()],
        diagram: CobordismDiagram::new(vec![Strand::new(PlCurve::horizontal(Rat::zero(), 0), label)]),
    }
}

pub fn generator(cat: &Catalog, name: &str) -> Result<Word> {
    let g = cat.generators.get(name).ok_or_else(|| Error::NotEvaluable(format!("unknown generator {name}")))?;
    Ok(Word { expr: Expr::Generator(name.to_string()), source: g.source.clone(), negs: g.negs.clone(), diagram: g.diagram.clone() })
}

/// `second ∘ first`: glues the source of `second` onto the target of `first`.
pub fn compose(second: &Word, first: &Word) -> Result<Word> {
    if first.target() != second.source() {
        return Err(Error::EndMismatch { expected: first.target().to_string(), found: second.source().to_string() });
    }
    let top = first.negs.len().checked_sub(1).ok_or(Error::TooFewEnds(first.end_count()))?;
    let diagram = layout::splice(&first.diagram, top, &second.diagram)?;
    let mut negs = first.negs[..top].to_vec();
    negs.extend(second.negs.iter().cloned());
    Ok(Word { expr: Expr::Compose(Box::new(second.clone()), Box::new(first.clone())), source: first.source.clone(), negs, diagram })
}

/// Glues `k` below negative end `leg` of `v`; the ends of `k` take its place.
pub fn compose_at_leg(v: &Word, leg: usize, k: &Word) -> Result<Word> {
    if leg >= v.negs.len() {
        return Err(Error::BadIndex { index: leg, ends: v.negs.len() });
    }
    if v.negs[leg] != k.source {
        return Err(Error::EndMismatch { expected: v.negs[leg].clone(), found: k.source.clone() });
    }
    let diagram = layout::splice(&v.diagram, leg, &k.diagram)?;
    let mut negs = v.negs[..leg].to_vec();
    negs.extend(k.negs.iter().cloned());
    negs.extend(v.negs[leg + 1..].iter().cloned());
    Ok(Word { expr: Expr::ComposeAtLeg(Box::new(v.clone()), leg, Box::new(k.clone())), source: v.source.clone(), negs, diagram })
}

/// `Rᵏ w`. One step turns `[L, L₁, …, L_m]` into `[L_m, L, L₁, …, L_{m−1}]`.
pub fn rotate(w: &Word, steps: i64) -> Result<Word> {
    let n = w.end_count();
    if n < 2 {
        return Err(Error::TooFewEnds(n));
    }
    if w.source == VOID {
        return Err(Error::InvalidDiagram("cannot rotate a word with a void source".into()));
    }
    let (base, k0) = match &w.expr {
        Expr::Rotate(base, k) => (base.as_ref(), *k),
        _ => (w, 0),
    };
    let k = (k0 as i64 + steps).rem_euclid(n as i64) as usize;
    if k == 0 {
        return Ok(base.clone());
    }
    let mut diagram = base.diagram.clone();
    for _ in 0..k {
        diagram = layout::rotate_once(&diagram)?;
    }
    let mut cycle = base.ends();
    cycle.rotate_right(k);
    let source = cycle.remove(0);
    Ok(Word { expr: Expr::Rotate(Box::new(base.clone()), k), source, negs: cycle, diagram })
}

/// `(u, Ru, R⁻¹u)` for a 3-ended `u`.
pub fn distinguished_triangle(u: &Word) -> Result<(Word, Word, Word)> {
    match u.end_count() {
        n if n < 3 => Err(Error::TooFewEnds(n)),
        3 => Ok((u.clone(), rotate(u, 1)?, rotate(u, -1)?)),
        n => Err(Error::TooManyEnds(n)),
    }
}

fn canonical_marking(c: &[String]) -> Vec<String> {
    let mut c = c.to_vec();
    c.sort();
    c.dedup();
    c
}

/// The 0-size (or `eps`-size) surgery `L → (L #_c L′, L′)`.
pub fn surgery(cat: &Catalog, first: &str, second: &str, c: &[String], eps: &Rat) -> Result<Word> {
    if eps.is_negative() {
        return Err(Error::InvalidDiagram(format!("handle size {eps} is negative")));
    }
    let c = canonical_marking(c);
    let points = cat.intersections.resolve(first, second, &c)?;
    let object = surgery_object(cat.object(first)?, cat.object(second)?, &points, cat.rule)?;
    let diagram = layout::surgery(first, second, &object.label, &c, eps);
    Ok(Word {
        expr: Expr::Surgery { first: first.to_string(), second: second.to_string(), c, eps: eps.clone() },
        source: first.to_string(),
        negs: vec![object.label, second.to_string()],
        diagram,
    })
}

/// The object `L #_c L′` produced by a surgery word, as a marked object.
pub fn surgery_target(cat: &Catalog, first: &str, second: &str, c: &[String]) -> Result<MarkedObject> {
    let points = cat.intersections.resolve(first, second, &canonical_marking(c))?;
    surgery_object(cat.object(first)?, cat.object(second)?, &points, cat.rule)
}

/// GF(2) sum of two surgeries between the same objects: markings add as sets.
pub fn surgery_sum(cat: &Catalog, s1: &Word, s2: &Word) -> Result<Word> {
    match (&s1.expr, &s2.expr) {
        (Expr::Surgery { first, second, c: c1, eps }, Expr::Surgery { first: f2, second: g2, c: c2, eps: e2 }) if first == f2 && second == g2 && eps == e2 => {
            let c: Vec<String> = c1.iter().filter(|x| !c2.contains(x)).chain(c2.iter().filter(|x| !c1.contains(x))).cloned().collect();
            surgery(cat, first, second, &c, eps)
        }
        _ => Err(Error::IncompatibleSurgeries(format!("{s1} and {s2}"))),
    }
}

/// Union of `w1` with a word `w2` of void source placed beneath it.
pub fn union(w1: &Word, w2: &Word) -> Result<Word> {
    if w2.source != VOID {
        return Err(Error::EndMismatch { expected: VOID.into(), found: w2.source.clone() });
    }
    let diagram = layout::stack(&w1.diagram, &w2.diagram)?;
    let mut negs = w2.negs.clone();
    negs.extend(w1.negs.iter().cloned());
    Ok(Word { expr: Expr::Union(Box::new(w1.clone()), Box::new(w2.clone())), source: w1.source.clone(), negs, diagram })
}

/// Cabling of `v: L → (L₁, …, L_m, L′)` with `w: L → (L′₁, …, L′_s, L′)`,
/// a word `L₁ → (L₂, …, L_m, L′₁, …, L′_s)`.
pub fn cable(cat: &Catalog, v: &Word, w: &Word, c: &[String], eps: &Rat) -> Result<Word> {
    Ok(cable_with_placement(cat, v, w, c, eps)?.0)
}

pub fn cable_with_placement(cat: &Catalog, v: &Word, w: &Word, c: &[String], eps: &Rat) -> Result<(Word, CablePlacement)> {
    if v.source != w.source || v.target() != w.target() || v.source == VOID {
        return Err(Error::ProfileMismatch(format!("{} → {} against {} → {}", v.source, v.target(), w.source, w.target())));
    }
    if v.negs.len() < 2 {
        return Err(Error::TooFewEnds(v.end_count()));
    }
    if eps.is_negative() {
        return Err(Error::InvalidDiagram(format!("handle size {eps} is negative")));
    }
    let c = canonical_marking(c);
    let points = cat.intersections.resolve(&v.source, v.target(), &c)?;
    check_action(&v.source, v.target(), &points, cat.rule)?;
    let (diagram, placement) = layout::cable(&v.diagram, &w.diagram, &c, eps, &cat.bend_clearance)?;
    let mut negs = v.negs[1..v.negs.len() - 1].to_vec();
    negs.extend(w.negs[..w.negs.len() - 1].iter().cloned());
    let word = Word {
        expr: Expr::Cable { first: Box::new(v.clone()), second: Box::new(w.clone()), c, eps: eps.clone() },
        source: v.negs[0].clone(),
        negs,
        diagram,
    };
    Ok((word, placement))
}

/// `V̄`: the 180° rotation of a simple word.
pub fn invert(w: &Word) -> Result<Word> {
    if !w.is_simple() {
        return Err(Error::NotSimple(w.end_count()));
    }
    if let Expr::Invert(inner) = &w.expr {
        return Ok(inner.as_ref().clone());
    }
    Ok(Word { expr: Expr::Invert(Box::new(w.clone())), source: w.target().to_string(), negs: vec![w.source.clone()], diagram: w.diagram.invert()? })
}

/// Braids the negative ends of `v: L → (L₁, …, L_m)` into one end
/// `L_m #_{c_{m-1}} (… (L₂ #_{c_1} L₁))`. `markings[i]` marks the surgery of
/// `L_{i+2}` with the object built so far.
pub fn braid(cat: &Catalog, v: &Word, markings: &[Vec<String>]) -> Result<(Word, MarkedObject)> {
    if v.negs.is_empty() || v.source == VOID {
        return Err(Error::TooFewEnds(v.end_count()));
    }
    if markings.len() + 1 != v.negs.len() {
        return Err(Error::BadIndex { index: markings.len(), ends: v.negs.len() });
    }
    let mut local = cat.clone();
    let mut merged = cat.object(&v.negs[0])?.clone();
    let mut diagram = v.diagram.clone();
    let mut canonical = Vec::with_capacity(markings.len());
    for (next, c) in v.negs[1..].iter().zip(markings) {
        let c = canonical_marking(c);
        let points = local.intersections.resolve(next, &merged.label, &c)?;
        merged = surgery_object(local.object(next)?, &merged, &points, cat.rule)?;
        local.add_object(merged.clone())?;
        diagram = layout::merge_bottom(&diagram, &merged.label)?;
        canonical.push(c);
    }
    let word = Word { expr: Expr::Braid(Box::new(v.clone()), canonical), source: v.source.clone(), negs: vec![merged.label.clone()], diagram };
    Ok((word, merged))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.expr {
            Expr::Identity(l) => write!(f, "(id {l})"),
            Expr::Generator(g) => write!(f, "(gen {g})"),
            Expr::Compose(b, a) => write!(f, "(compose {b} {a})"),
            Expr::ComposeAtLeg(v, i, k) => write!(f, "(leg {v} {i} {k})"),
            Expr::Rotate(w, k) => write!(f, "(rotate {w} {k})"),
            Expr::Surgery { first, second, c, eps } => write!(f, "(surgery {first} {second} ({}) {eps})", c.join(" ")),
            Expr::Union(a, b) => write!(f, "(union {a} {b})"),
            Expr::Cable { first, second, c, eps } => write!(f, "(cable {first} {second} ({}) {eps})", c.join(" ")),
            Expr::Invert(w) => write!(f, "(invert {w})"),
            Expr::Braid(w, cs) => {
                write!(f, "(braid {w}")?;
                for c in cs {
                    write!(f, " ({})", c.join(" "))?;
                }
                write!(f, ")")
            }
        }
    }
}
