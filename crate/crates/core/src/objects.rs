//! Marked objects, intersection data and 0-size surgeries of objects.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Rat, Result};

/// Label of the empty object.
pub const VOID: &str = "void";

/// A double point `(P₋, P₊)` with the primitive's values at both preimages.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DoublePoint {
    pub id: String,
    pub f_minus: Rat,
    pub f_plus: Rat,
}

impl DoublePoint {
    pub fn new(id: impl Into<String>, f_minus: Rat, f_plus: Rat) -> Result<Self> {
        let id = id.into();
        if f_minus == f_plus {
            return Err(Error::InvalidPresentation(format!("double point {id} has equal primitive values")));
        }
        Ok(Self { id, f_minus, f_plus })
    }

    /// `f(P₊) < f(P₋)`: the only kind of point a marking may use.
    pub fn is_action_negative(&self) -> bool {
        self.f_plus < self.f_minus
    }
}

/// A formal marked immersed object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedObject {
    pub label: String,
    pub double_points: BTreeMap<String, DoublePoint>,
    pub marking: BTreeSet<String>,
    pub components: Vec<String>,
}

impl MarkedObject {
    pub fn new(label: impl Into<String>) -> Self {
        let label = label.into();
        let components = if label == VOID { Vec::new() } else { vec![label.clone()] };
        Self { label, double_points: BTreeMap::new(), marking: BTreeSet::new(), components }
    }

    pub fn void() -> Self {
        Self::new(VOID)
    }

    pub fn is_void(&self) -> bool {
        self.label == VOID
    }

    pub fn with_double_point(mut self, p: DoublePoint) -> Self {
        self.double_points.insert(p.id.clone(), p);
        self
    }

    pub fn with_marked_point(mut self, p: DoublePoint) -> Result<Self> {
        let id = p.id.clone();
        self.double_points.insert(id.clone(), p);
        self.mark(&id)?;
        Ok(self)
    }

    pub fn mark(&mut self, id: &str) -> Result<()> {
        let p = self
            .double_points
            .get(id)
            .ok_or_else(|| Error::InvalidPresentation(format!("marking {id} is not a double point of {}", self.label)))?;
        if !p.is_action_negative() {
            return Err(Error::ActionViolation { point: id.to_string(), first: self.label.clone(), second: self.label.clone() });
        }
        self.marking.insert(id.to_string());
        Ok(())
    }

    /// Checks marking ⊆ double points and action-negativity of marked points.
    pub fn validate(&self) -> Result<()> {
        for id in &self.marking {
            match self.double_points.get(id) {
                None => return Err(Error::InvalidPresentation(format!("marking {id} is not a double point of {}", self.label))),
                Some(p) if !p.is_action_negative() => {
                    return Err(Error::ActionViolation { point: id.clone(), first: self.label.clone(), second: self.label.clone() })
                }
                Some(_) => {}
            }
        }
        Ok(())
    }
}

/// An intersection point of an ordered pair `(L, L′)` with `f_L(x)` and `f_{L′}(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoint {
    pub id: String,
    pub f_first: Rat,
    pub f_second: Rat,
}

/// Intersection points for ordered object pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntersectionTable {
    points: BTreeMap<(String, String), Vec<IntersectionPoint>>,
}

impl IntersectionTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, first: &str, second: &str, point: IntersectionPoint) {
        self.points.entry((first.to_string(), second.to_string())).or_default().push(point);
    }

    pub fn points(&self, first: &str, second: &str) -> &[IntersectionPoint] {
        self.points.get(&(first.to_string(), second.to_string())).map_or(&[], Vec::as_slice)
    }

    pub fn get(&self, first: &str, second: &str, id: &str) -> Result<&IntersectionPoint> {
        self.points(first, second).iter().find(|p| p.id == id).ok_or_else(|| Error::UnknownIntersection {
            point: id.to_string(),
            first: first.to_string(),
            second: second.to_string(),
        })
    }

    /// All ordered pairs with at least one listed point, in sorted order.
    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str, &[IntersectionPoint])> {
        self.points.iter().map(|((a, b), v)| (a.as_str(), b.as_str(), v.as_slice()))
    }

    /// Resolves ids to points, in the given order.
    pub fn resolve(&self, first: &str, second: &str, ids: &[String]) -> Result<Vec<IntersectionPoint>> {
        ids.iter().map(|id| self.get(first, second, id).cloned()).collect()
    }
}

/// How the action condition on a surgery marking is enforced.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ActionRule {
    /// `f_L(x) > f_{L′}(x)` for every `x ∈ c`.
    #[default]
    Pointwise,
    /// `min_c f_L > max_c f_{L′}`.
    MinMax,
}

pub fn check_action(first: &str, second: &str, c: &[IntersectionPoint], rule: ActionRule) -> Result<()> {
    let violation = |p: &IntersectionPoint| Error::ActionViolation {
        point: p.id.clone(),
        first: first.to_string(),
        second: second.to_string(),
    };
    match rule {
        ActionRule::Pointwise => match c.iter().find(|p| p.f_first <= p.f_second) {
            Some(p) => Err(violation(p)),
            None => Ok(()),
        },
        ActionRule::MinMax => {
            let (Some(lo), Some(hi)) = (c.iter().min_by(|a, b| a.f_first.cmp(&b.f_first)), c.iter().max_by(|a, b| a.f_second.cmp(&b.f_second)))
            else {
                return Ok(());
            };
            if lo.f_first > hi.f_second {
                Ok(())
            } else {
                Err(violation(lo))
            }
        }
    }
}

fn wrap(label: &str) -> String {
    if label.contains('#') || label.contains('|') {
        format!("[{label}]")
    } else {
        label.to_string()
    }
}

/// Label of `L #_c L′`, e.g. `A#[x,y]B`.
pub fn surgery_label(first: &str, c: &[String], second: &str) -> String {
    let mut ids: Vec<&str> = c.iter().map(String::as_str).collect();
    ids.sort_unstable();
    format!("{}#[{}]{}", wrap(first), ids.join(","), wrap(second))
}

/// Inverse of [`surgery_label`]: `(L, c, L′)` when `label` is a surgery label.
pub fn split_surgery_label(label: &str) -> Option<(String, Vec<String>, String)> {
    let bytes = label.as_bytes();
    let mut depth = 0usize;
    for (i, &ch) in bytes.iter().enumerate() {
        match ch {
            b'[' => depth += 1,
            b']' => depth = depth.checked_sub(1)?,
            b'#' if depth == 0 => {
                let (first, rest) = (&label[..i], &label[i + 1..]);
                let rest = rest.strip_prefix('[')?;
                let close = rest.find(']')?;
                let ids: Vec<String> = rest[..close].split(',').filter(|s| !s.is_empty()).map(ToString::to_string).collect();
                let unwrap = |s: &str| s.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(s).to_string();
                let (first, second) = (unwrap(first), unwrap(&rest[close + 1..]));
                return (surgery_label(&first, &ids, &second) == label).then_some((first, ids, second));
            }
            _ => {}
        }
    }
    None
}

/// Label of `L ⊕ L′`.
pub fn sum_label(first: &str, second: &str) -> String {
    format!("{}|{}", wrap(first), wrap(second))
}

fn fresh(taken: &BTreeMap<String, DoublePoint>, id: &str) -> String {
    let mut out = id.to_string();
    while taken.contains_key(&out) {
        out.push('\'');
    }
    out
}

fn disjoint_union(label: String, first: &MarkedObject, second: &MarkedObject) -> MarkedObject {
    let mut out = MarkedObject { label, double_points: first.double_points.clone(), marking: first.marking.clone(), components: first.components.clone() };
    for (id, p) in &second.double_points {
        let new_id = fresh(&out.double_points, id);
        if second.marking.contains(id) {
            out.marking.insert(new_id.clone());
        }
        out.double_points.insert(new_id.clone(), DoublePoint { id: new_id, ..p.clone() });
    }
    out.components.extend(second.components.iter().cloned());
    out
}

/// `L ⊕ L′`: disjoint union with concatenated double points and markings.
pub fn direct_sum(first: &MarkedObject, second: &MarkedObject) -> MarkedObject {
    if second.is_void() {
        return first.clone();
    }
    if first.is_void() {
        return second.clone();
    }
    disjoint_union(sum_label(&first.label, &second.label), first, second)
}

/// The 0-size surgery `(L₁, c₁) #_c (L₂, c₂)`: the union marked by `c₁ ∪ c ∪ c₂`.
pub fn surgery_object(first: &MarkedObject, second: &MarkedObject, c: &[IntersectionPoint], rule: ActionRule) -> Result<MarkedObject> {
    check_action(&first.label, &second.label, c, rule)?;
    let ids: Vec<String> = c.iter().map(|p| p.id.clone()).collect();
    let mut out = disjoint_union(surgery_label(&first.label, &ids, &second.label), first, second);
    for p in c {
        let id = fresh(&out.double_points, &p.id);
        out.double_points.insert(id.clone(), DoublePoint { id: id.clone(), f_minus: p.f_first.clone(), f_plus: p.f_second.clone() });
        out.marking.insert(id);
    }
    Ok(out)
}
