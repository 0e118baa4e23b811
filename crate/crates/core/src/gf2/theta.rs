//! The evaluator Θ: morphism words to homology classes of the presentation.

use alloc::format;
use alloc::string::{String, ToString};

use super::presentation::{Presentation, Triangle};
use super::BitVec;
use crate::category::{Expr, Word, VOID};
use crate::{Error, Result};

/// A homology class in `HF(source, target)`, given by a representative cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaClass {
    pub source: String,
    pub target: String,
    pub rep: BitVec,
}

impl ThetaClass {
    /// Class equality (representatives differ by a boundary).
    pub fn same_as(&self, other: &ThetaClass, p: &Presentation) -> Result<bool> {
        if self.source != other.source || self.target != other.target {
            return Ok(false);
        }
        p.same_class(&self.source, &self.target, &self.rep, &other.rep)
    }

    /// `other ∘ self` at the chain level.
    pub fn then(&self, other: &ThetaClass, p: &Presentation) -> Result<ThetaClass> {
        if self.target != other.source {
            return Err(Error::EndMismatch { expected: self.target.clone(), found: other.source.clone() });
        }
        Ok(ThetaClass { source: self.source.clone(), target: other.target.clone(), rep: p.mu2(&self.source, &self.target, &other.target, &self.rep, &other.rep)? })
    }
}

fn class(source: &str, target: &str, rep: BitVec) -> ThetaClass {
    ThetaClass { source: source.to_string(), target: target.to_string(), rep }
}

fn not_evaluable(w: &Word, why: &str) -> Error {
    Error::NotEvaluable(format!("{w}: {why}"))
}

/// Evaluates Θ on a word by structural recursion.
pub fn theta(w: &Word, p: &Presentation) -> Result<ThetaClass> {
    if w.source() == VOID || w.target() == VOID {
        return Err(not_evaluable(w, "void source or target"));
    }
    match w.expr() {
        Expr::Identity(l) => Ok(class(l, l, p.unit(l)?.clone())),
        Expr::Generator(g) => {
            let data = p.generators.get(g).ok_or_else(|| not_evaluable(w, "generator without an assigned cycle"))?;
            Ok(class(w.source(), w.target(), data.cycle.clone()))
        }
        Expr::Compose(second, first) => theta(first, p)?.then(&theta(second, p)?, p),
        Expr::ComposeAtLeg(v, leg, k) => {
            let tv = theta(v, p)?;
            if *leg + 1 == v.negs().len() {
                tv.then(&theta(k, p)?, p)
            } else {
                Ok(tv)
            }
        }
        Expr::Rotate(base, k) => match base.end_count() {
            2 => theta_inverse(base, p),
            3 => {
                let t = triangle_of(base, p)?;
                Ok(match k {
                    1 => class(&t.b, &t.c, t.iota.clone()),
                    _ => class(&t.c, &t.a, t.pi.clone()),
                })
            }
            _ => Err(not_evaluable(w, "rotation of a word with more than three ends")),
        },
        Expr::Surgery { first, second, c, .. } => {
            let chain = p.chain(first, second, c)?;
            if !p.hom(first, second)?.is_cycle(&chain) {
                return Err(Error::MarkingNotCycle(w.to_string(), chain.to_bit_string()));
            }
            Ok(class(first, second, chain))
        }
        Expr::Union(w1, _) => theta(w1, p),
        Expr::Cable { first, second, c, .. } => theta_naturality_cable(w, first, second, c, p),
        Expr::Invert(inner) => theta_inverse(inner, p),
        Expr::Braid(base, cs) if cs.is_empty() => theta(base, p),
        Expr::Braid(..) => Err(not_evaluable(w, "braided ends have no assigned class")),
    }
}

/// Θ of the 180° rotation of a simple word.
fn theta_inverse(w: &Word, p: &Presentation) -> Result<ThetaClass> {
    match w.expr() {
        Expr::Identity(l) => Ok(class(l, l, p.unit(l)?.clone())),
        Expr::Generator(g) => {
            let inv = p.generators.get(g).and_then(|d| d.inverse.clone()).ok_or_else(|| not_evaluable(w, "generator without a declared inverse"))?;
            let data = &p.generators[&inv];
            Ok(class(w.target(), w.source(), data.cycle.clone()))
        }
        Expr::Invert(inner) => theta(inner, p),
        Expr::Rotate(base, 1) if base.is_simple() => theta(base, p),
        Expr::Compose(second, first) if first.is_simple() && second.is_simple() => theta_inverse(second, p)?.then(&theta_inverse(first, p)?, p),
        _ => Err(not_evaluable(w, "no inverse is known for this simple word")),
    }
}

/// The declared triangle `A → B → C` for a word `u: A → (C, B)` with the class of its `f`.
pub fn triangle_of<'p>(u: &Word, p: &'p Presentation) -> Result<&'p Triangle> {
    if u.end_count() != 3 || u.source() == VOID {
        return Err(not_evaluable(u, "not a 3-ended word"));
    }
    let f = theta(u, p)?;
    let (a, b, c) = (u.source(), u.target(), u.negs()[0].as_str());
    p.triangles
        .iter()
        .filter(|t| t.a == a && t.b == b && t.c == c)
        .find(|t| p.same_class(a, b, &t.f, &f.rep).unwrap_or(false))
        .ok_or_else(|| not_evaluable(u, "no declared triangle"))
}

/// Pieces of a naturality square `v: L → L′`, `s: L → (K, M)`,
/// `s′: L′ → (K′, M′)`, `v′: M → M′`.
pub struct Square<'p> {
    pub s: &'p Triangle,
    pub s2: &'p Triangle,
    pub v: ThetaClass,
    pub v2: ThetaClass,
}

impl<'p> Square<'p> {
    pub fn new(v: &Word, s: &Word, v2: &Word, s2: &Word, p: &'p Presentation) -> Result<Self> {
        let (ts, ts2) = (exact_triangle(s, p)?, exact_triangle(s2, p)?);
        let (tv, tv2) = (theta(v, p)?, theta(v2, p)?);
        if tv.source != ts.a || tv.target != ts2.a || tv2.source != ts.b || tv2.target != ts2.b {
            return Err(Error::NotCommuting(format!("{v}, {s}, {v2}, {s2} do not form a square")));
        }
        if ts.split.is_none() || ts2.split.is_none() {
            return Err(Error::NotEvaluable("naturality needs split triangles".into()));
        }
        Ok(Self { s: ts, s2: ts2, v: tv, v2: tv2 })
    }

    /// `μ₂(s, v′) + μ₂(v, s′)` in `CF(L, M′)`; a witness `h` has `d h` equal to it.
    pub fn defect(&self, p: &Presentation) -> Result<BitVec> {
        let a = p.mu2(&self.s.a, &self.s.b, &self.s2.b, &self.s.f, &self.v2.rep)?;
        let b = p.mu2(&self.s.a, &self.s2.a, &self.s2.b, &self.v.rep, &self.s2.f)?;
        Ok(a.xor(&b))
    }

    /// The fill-in `F: K → K′` determined by a witness `h`.
    pub fn fill(&self, h: &BitVec, p: &Presentation) -> Result<ThetaClass> {
        let (s, s2) = (self.s, self.s2);
        let (_, rho) = s.split.as_ref().expect("checked in new");
        let (sigma2, _) = s2.split.as_ref().expect("checked in new");
        let (l, m, k, l2, m2, k2) = (&s.a, &s.b, &s.c, &s2.a, &s2.b, &s2.c);
        let pv = p.mu2(k, l, l2, &s.pi, &self.v.rep)?;
        let t1 = p.mu2(k, l2, k2, &pv, sigma2)?;
        let rv = p.mu2(k, m, m2, rho, &self.v2.rep)?;
        let t2 = p.mu2(k, m2, k2, &rv, &s2.iota)?;
        let ph = p.mu2(k, l, m2, &s.pi, h)?;
        let t3 = p.mu2(k, m2, k2, &ph, &s2.iota)?;
        Ok(class(k, k2, t1.xor(&t2).xor(&t3)))
    }
}

/// Triangle of a 3-ended word whose class is exactly the triangle's `f`.
fn exact_triangle<'p>(u: &Word, p: &'p Presentation) -> Result<&'p Triangle> {
    let t = triangle_of(u, p)?;
    if theta(u, p)?.rep != t.f {
        return Err(not_evaluable(u, "class representative differs from the triangle's map"));
    }
    Ok(t)
}

fn theta_naturality_cable(w: &Word, first: &Word, second: &Word, c: &[String], p: &Presentation) -> Result<ThetaClass> {
    let (Expr::Compose(v2, s), Expr::Compose(s2, v)) = (first.expr(), second.expr()) else {
        return Err(not_evaluable(w, "cable outside the naturality pattern"));
    };
    let square = Square::new(v, s, v2, s2, p)?;
    let h = p.chain(&square.s.a, &square.s2.b, c)?;
    if p.hom(&square.s.a, &square.s2.b)?.d(&h) != square.defect(p)? {
        return Err(Error::NotCommuting(format!("{w}: marking does not bound the square's defect")));
    }
    square.fill(&h, p)
}
