//! Shadow-weighted fragmentation pseudo-metrics, the abstract weighted
//! decomposition metric, rigidity scans and the non-contraction check.
//!
//! Every value is an exact minimum over a bounded enumeration, so it is an
//! upper bound for the infimum it stands for.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::category::{compose, Expr, compose_at_leg, generator, identity, rotate, union, Word, VOID};
use crate::geometry::Rat;
use crate::gf2::Presentation;
use crate::{Error, Result};

/// Words never grow past this many negative ends during a search.
pub const MAX_ENDS: usize = 8;

/// A decomposition step `source → (negs…)` with its weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionMove {
    pub name: String,
    pub source: String,
    pub negs: Vec<String>,
    pub weight: Rat,
}

impl DecompositionMove {
    pub fn new(name: impl Into<String>, source: &str, negs: &[&str], weight: Rat) -> Self {
        Self { name: name.into(), source: source.to_string(), negs: negs.iter().map(|s| s.to_string()).collect(), weight }
    }
}

/// Where a move is applied: the move index and the leg it replaces.
/// A void-source move is stacked below instead and has no leg.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Step {
    pub mv: usize,
    pub leg: Option<usize>,
}

/// The cheapest path found by a search, with its cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub cost: Rat,
    pub steps: Vec<Step>,
    pub ends: Vec<String>,
}

/// Admissible end lists: `target` once, everything else in `family`.
fn admissible(ends: &[String], target: &str, family: &BTreeSet<String>) -> bool {
    ends.iter().enumerate().any(|(i, e)| e == target && ends.iter().enumerate().all(|(j, f)| j == i || family.contains(f)))
}

fn sorted(ends: &[String]) -> Vec<String> {
    let mut s = ends.to_vec();
    s.sort();
    s
}

/// Uniform-cost search from the identity on `start` for end lists
/// `(F…, target, F…)` using at most `depth` moves. Ties go to the
/// lexicographically smaller step sequence.
pub fn search(moves: &[DecompositionMove], start: &str, target: &str, family: &BTreeSet<String>, depth: usize) -> Result<Option<Path>> {
    for m in moves {
        if m.weight.is_negative() {
            return Err(Error::BadWeight(format!("move {} has negative weight {}", m.name, m.weight)));
        }
        if m.source == VOID && m.negs.is_empty() {
            return Err(Error::BadWeight(format!("move {} has no ends", m.name)));
        }
    }
    let mut heap = BinaryHeap::new();
    let mut seen: BTreeSet<(Vec<String>, usize)> = BTreeSet::new();
    heap.push(Reverse((Rat::zero(), Vec::<Step>::new(), vec![start.to_string()])));
    while let Some(Reverse((cost, steps, ends))) = heap.pop() {
        if admissible(&ends, target, family) {
            return Ok(Some(Path { cost, steps, ends }));
        }
        if !seen.insert((sorted(&ends), steps.len())) || steps.len() == depth {
            continue;
        }
        for (i, m) in moves.iter().enumerate() {
            let next = if m.source == VOID {
                let mut e = m.negs.clone();
                e.extend(ends.iter().cloned());
                (e, None)
            } else if let Some(leg) = ends.iter().position(|e| *e == m.source) {
                let mut e = ends[..leg].to_vec();
                e.extend(m.negs.iter().cloned());
                e.extend(ends[leg + 1..].iter().cloned());
                (e, Some(leg))
            } else {
                continue;
            };
            if next.0.len() > MAX_ENDS || seen.contains(&(sorted(&next.0), steps.len() + 1)) {
                continue;
            }
            let mut s = steps.clone();
            s.push(Step { mv: i, leg: next.1 });
            heap.push(Reverse((&cost + &m.weight, s, next.0)));
        }
    }
    Ok(None)
}

/// Value of a bounded metric search; `None` is `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricResult {
    pub value: Option<Rat>,
    /// A word `L → (F…, L′, F…)` (or the reverse) of shadow `value`.
    pub certificate: Option<Word>,
    /// Search depth used.
    pub bound: usize,
}

impl MetricResult {
    fn infinite(bound: usize) -> Self {
        Self { value: None, certificate: None, bound }
    }
}

impl fmt::Display for MetricResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Some(v) => write!(f, "value={v} bound={} certificate=", self.bound)?,
            None => write!(f, "value=inf bound={} certificate=", self.bound)?,
        }
        match &self.certificate {
            Some(w) => write!(f, "{w}"),
            None => write!(f, "none"),
        }
    }
}

/// Generator words with all their rotations, weighted by shadow.
pub fn shadow_moves(p: &Presentation) -> Result<Vec<(Word, DecompositionMove)>> {
    let mut out: Vec<(Word, DecompositionMove)> = Vec::new();
    for name in p.catalog.generators.keys() {
        let g = generator(&p.catalog, name)?;
        let turns = if g.source() == VOID { 1 } else { g.end_count() };
        for k in 0..turns {
            let w = if k == 0 { g.clone() } else { rotate(&g, k as i64)? };
            if out.iter().any(|(u, _)| *u == w) {
                continue;
            }
            let negs: Vec<&str> = w.negs().iter().map(String::as_str).collect();
            let mv = DecompositionMove::new(w.to_string(), w.source(), &negs, w.shadow()?);
            out.push((w, mv));
        }
    }
    Ok(out)
}

/// Replays a search path as a word starting from the identity on `start`.
pub fn realize(words: &[Word], start: &str, steps: &[Step]) -> Result<Word> {
    let mut w = identity(start);
    for s in steps {
        let m = &words[s.mv];
        w = match s.leg {
            None => union(&w, m)?,
            Some(_) if matches!(w.expr(), Expr::Identity(_)) => m.clone(),
            Some(leg) if leg + 1 == w.negs().len() => compose(m, &w)?,
            Some(leg) => compose_at_leg(&w, leg, m)?,
        };
    }
    Ok(w)
}

fn check_object(p: &Presentation, l: &str) -> Result<()> {
    p.catalog.object(l).map(|_| ())
}

fn one_way(words: &[Word], moves: &[DecompositionMove], from: &str, to: &str, family: &BTreeSet<String>, depth: usize) -> Result<Option<(Rat, Word)>> {
    match search(moves, from, to, family, depth)? {
        Some(path) => Ok(Some((path.cost, realize(words, from, &path.steps)?))),
        None => Ok(None),
    }
}

/// The shadow moves of a presentation, computed once for many searches.
pub struct ShadowMetric<'p> {
    p: &'p Presentation,
    words: Vec<Word>,
    moves: Vec<DecompositionMove>,
}

impl<'p> ShadowMetric<'p> {
    pub fn new(p: &'p Presentation) -> Result<Self> {
        let (words, moves) = shadow_moves(p)?.into_iter().unzip();
        Ok(Self { p, words, moves })
    }

    pub fn moves(&self) -> &[DecompositionMove] {
        &self.moves
    }

    /// `d^F(L, L′)`: least shadow of a word `L → (F…, L′, F…)` or
    /// `L′ → (F…, L, F…)` with at most `depth` generator moves.
    pub fn distance(&self, l: &str, l2: &str, family: &[String], depth: usize) -> Result<MetricResult> {
        check_object(self.p, l)?;
        check_object(self.p, l2)?;
        let family: BTreeSet<String> = family.iter().cloned().collect();
        let there = one_way(&self.words, &self.moves, l, l2, &family, depth)?;
        let back = if l == l2 { None } else { one_way(&self.words, &self.moves, l2, l, &family, depth)? };
        let best = match (there, back) {
            (Some(a), Some(b)) => Some(if b.0 < a.0 || (b.0 == a.0 && b.1.to_string() < a.1.to_string()) { b } else { a }),
            (a, b) => a.or(b),
        };
        Ok(match best {
            Some((value, word)) => MetricResult { value: Some(value), certificate: Some(word), bound: depth },
            None => MetricResult::infinite(depth),
        })
    }

    /// `(d^F + d^F′) / 2`, infinite when either is.
    pub fn average(&self, l: &str, l2: &str, f1: &[String], f2: &[String], depth: usize) -> Result<MetricResult> {
        let (a, b) = (self.distance(l, l2, f1, depth)?, self.distance(l, l2, f2, depth)?);
        Ok(match (a.value, b.value) {
            (Some(x), Some(y)) => MetricResult { value: Some((x + y) / Rat::from_integer(2.into())), certificate: None, bound: depth },
            _ => MetricResult::infinite(depth),
        })
    }
}

pub fn frag_distance(p: &Presentation, l: &str, l2: &str, family: &[String], depth: usize) -> Result<MetricResult> {
    ShadowMetric::new(p)?.distance(l, l2, family, depth)
}

pub fn avg_distance(p: &Presentation, l: &str, l2: &str, f1: &[String], f2: &[String], depth: usize) -> Result<MetricResult> {
    ShadowMetric::new(p)?.average(l, l2, f1, f2, depth)
}

/// `s^F(K′, K)` over declared moves, with its symmetrization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractResult {
    pub value: Option<Rat>,
    /// `max(s^F(K′, K), s^F(K, K′))`.
    pub symmetrized: Option<Rat>,
    pub path: Option<Path>,
}

fn ext_max(a: &Option<Rat>, b: &Option<Rat>) -> Option<Rat> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.clone().max(y.clone())),
        _ => None,
    }
}

fn ext_min(a: &Option<Rat>, b: &Option<Rat>) -> Option<Rat> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.clone().min(y.clone())),
        (x, y) => x.clone().or_else(|| y.clone()),
    }
}

/// Rejects move sets whose identity moves carry weight.
pub fn check_weights(moves: &[DecompositionMove]) -> Result<()> {
    for m in moves {
        if m.weight.is_negative() {
            return Err(Error::BadWeight(format!("move {} has negative weight {}", m.name, m.weight)));
        }
        if m.negs.len() == 1 && m.negs[0] == m.source && !m.weight.is_zero() {
            return Err(Error::BadWeight(format!("identity move {} has weight {}", m.name, m.weight)));
        }
    }
    Ok(())
}

/// Shortest weighted decomposition `from → (F…, to, F…)`.
#[allow(non_snake_case)]
pub fn abstract_metric_sF(moves: &[DecompositionMove], from: &str, to: &str, family: &[String], depth: usize) -> Result<AbstractResult> {
    check_weights(moves)?;
    let family: BTreeSet<String> = family.iter().cloned().collect();
    let path = search(moves, from, to, &family, depth)?;
    let back = search(moves, to, from, &family, depth)?;
    let value = path.as_ref().map(|p| p.cost.clone());
    let symmetrized = ext_max(&value, &back.map(|p| p.cost));
    Ok(AbstractResult { value, symmetrized, path })
}

/// One scanned simple word in a rigidity scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityLine {
    pub word: Word,
    pub shadow: Rat,
    pub delta: Rat,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityReport {
    pub lines: Vec<RigidityLine>,
    /// `d^{F,F′}(L, L′) > 0` for every pair of distinct objects.
    pub nondegenerate: bool,
    pub bound: usize,
}

impl RigidityReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }
}

impl fmt::Display for RigidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{} {} shadow={} delta={}", if l.pass { "PASS" } else { "FAIL" }, l.word, l.shadow, l.delta)?;
        }
        writeln!(f, "nondegenerate={} bound={}", self.nondegenerate, self.bound)
    }
}

/// Simple words between distinct objects built from at most `depth` simple moves.
pub fn simple_words(p: &Presentation, depth: usize) -> Result<Vec<Word>> {
    let simple: Vec<Word> = shadow_moves(p)?.into_iter().map(|(w, _)| w).filter(|w| w.is_simple() && w.source() != VOID).collect();
    let mut frontier: Vec<Word> = p.objects().iter().map(|o| identity(o)).collect();
    let mut out = Vec::new();
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &frontier {
            for m in simple.iter().filter(|m| m.source() == w.target()) {
                let c = if matches!(w.expr(), Expr::Identity(_)) { m.clone() } else { compose(m, w)? };
                if c.source() != c.target() {
                    out.push(c.clone());
                }
                next.push(c);
            }
        }
        frontier = next;
    }
    Ok(out)
}

/// Checks `shadow ≥ δ(source, target)` on every enumerated simple word and
/// whether `d^{F,F′}` separates the objects.
pub fn rigidity_scan(p: &Presentation, f1: &[String], f2: &[String], delta: &BTreeMap<(String, String), Rat>, depth: usize) -> Result<RigidityReport> {
    let mut lines = Vec::new();
    for word in simple_words(p, depth)? {
        let key = (word.source().to_string(), word.target().to_string());
        let d = delta.get(&key).ok_or_else(|| Error::MissingDelta(key.0.clone(), key.1.clone()))?.clone();
        let shadow = word.shadow()?;
        lines.push(RigidityLine { pass: shadow >= d, word, shadow, delta: d });
    }
    let metric = ShadowMetric::new(p)?;
    let objects = p.objects();
    let mut nondegenerate = true;
    for (i, a) in objects.iter().enumerate() {
        for b in &objects[i + 1..] {
            if let Some(v) = metric.average(a, b, f1, f2, depth)?.value {
                nondegenerate &= v.is_positive();
            }
        }
    }
    Ok(RigidityReport { lines, nondegenerate, bound: depth })
}

/// One object pair of a non-contraction check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoncontractionLine {
    pub first: String,
    pub second: String,
    pub geometric: Option<Rat>,
    pub algebraic: Option<Rat>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoncontractionReport {
    pub lines: Vec<NoncontractionLine>,
    pub bound: usize,
}

impl NoncontractionReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }
}

impl fmt::Display for NoncontractionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &Option<Rat>| v.as_ref().map_or("inf".to_string(), |r| r.to_string());
        for l in &self.lines {
            writeln!(f, "{} d({}, {})={} s_a={}", if l.pass { "PASS" } else { "FAIL" }, l.first, l.second, show(&l.geometric), show(&l.algebraic))?;
        }
        Ok(())
    }
}

/// Algebraic moves induced by the generators (same weights) and, when
/// `zero_triangles` is set, the three rotations of every declared triangle at
/// weight zero.
pub fn algebraic_moves(p: &Presentation, zero_triangles: bool) -> Result<Vec<DecompositionMove>> {
    let mut moves: Vec<DecompositionMove> = shadow_moves(p)?.into_iter().map(|(_, m)| m).collect();
    if zero_triangles {
        moves.extend(triangle_moves(p));
    }
    Ok(moves)
}

fn triangle_moves(p: &Presentation) -> Vec<DecompositionMove> {
    let mut moves = Vec::new();
    for t in &p.triangles {
        let (a, b, c) = (t.a.as_str(), t.b.as_str(), t.c.as_str());
        moves.push(DecompositionMove::new(format!("{a}→({c},{b})"), a, &[c, b], Rat::zero()));
        moves.push(DecompositionMove::new(format!("{b}→({a},{c})"), b, &[a, c], Rat::zero()));
        moves.push(DecompositionMove::new(format!("{c}→({b},{a})"), c, &[b, a], Rat::zero()));
    }
    moves
}

/// Checks `d^F(L, L′) ≥ s^F_a(Θ L, Θ L′)` on every pair of objects, the
/// algebraic side symmetrized the same way as `d^F` (least direction).
pub fn theta_noncontraction(p: &Presentation, family: &[String], depth: usize, zero_triangles: bool) -> Result<NoncontractionReport> {
    let metric = ShadowMetric::new(p)?;
    let mut moves = metric.moves().to_vec();
    if zero_triangles {
        moves.extend(triangle_moves(p));
    }
    let objects = p.objects();
    let mut lines = Vec::new();
    for (i, a) in objects.iter().enumerate() {
        for b in &objects[i..] {
            let geometric = metric.distance(a, b, family, depth)?.value;
            let s = abstract_metric_sF(&moves, a, b, family, depth)?;
            let back = abstract_metric_sF(&moves, b, a, family, depth)?;
            let algebraic = ext_min(&s.value, &back.value);
            let pass = match (&geometric, &algebraic) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some(g), Some(s)) => g >= s,
            };
            lines.push(NoncontractionLine { first: a.clone(), second: b.clone(), geometric, algebraic, pass });
        }
    }
    Ok(NoncontractionReport { lines, bound: depth })
}
