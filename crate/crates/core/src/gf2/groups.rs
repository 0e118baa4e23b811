//! K₀ and the cobordism group Ω as GF(2) quotients of the free space on objects.

use alloc::string::String;
use alloc::vec::Vec;

use super::presentation::Presentation;
use super::{BitVec, GF2Matrix};
use crate::category::VOID;
use crate::objects::split_surgery_label;

/// `GF(2)⟨objects⟩ / span(relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    /// Canonical (sorted) object order indexing the coordinates.
    pub objects: Vec<String>,
    /// Reduced row-echelon basis of the relation space.
    pub relations: Vec<BitVec>,
    /// Objects whose classes form a basis of the quotient.
    pub basis: Vec<String>,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn from_tuples(objects: Vec<String>, tuples: &[Vec<String>]) -> Self {
        let n = objects.len();
        let rows: Vec<BitVec> = tuples
            .iter()
            .map(|t| {
                let mut v = BitVec::zeros(n);
                for l in t.iter().filter(|l| l.as_str() != VOID) {
                    if let Ok(i) = objects.binary_search(l) {
                        v.flip(i);
                    }
                }
                v
            })
            .collect();
        let ech = GF2Matrix::from_rows(n, rows).echelon();
        let relations: Vec<BitVec> = (0..ech.pivots.len()).map(|i| ech.matrix.row(i).clone()).collect();
        let basis = objects.iter().enumerate().filter(|(i, _)| !ech.pivots.contains(i)).map(|(_, l)| l.clone()).collect();
        Self { objects, relations, basis }
    }
}

/// Relations `A + B + C` for each declared triangle and `L + L′` for each
/// simple generator (its class is invertible).
pub fn k0(p: &Presentation) -> Quotient {
    let mut tuples: Vec<Vec<String>> = p.triangles.iter().map(|t| alloc::vec![t.a.clone(), t.b.clone(), t.c.clone()]).collect();
    for shape in p.catalog.generators.values().filter(|g| g.negs.len() == 1 && g.source != VOID) {
        tuples.push(alloc::vec![shape.source.clone(), shape.negs[0].clone()]);
    }
    Quotient::from_tuples(p.objects(), &tuples)
}

/// Relations `L₁ + … + L_m` for declared null-cobordant tuples, for the end
/// tuple of every generator, and for the bent 3-ended tuple of every
/// declared surgery triangle.
pub fn omega(p: &Presentation) -> Quotient {
    let mut tuples = p.nullcobs.clone();
    for shape in p.catalog.generators.values() {
        let mut t = alloc::vec![shape.source.clone()];
        t.extend(shape.negs.iter().cloned());
        tuples.push(t);
    }
    for t in &p.triangles {
        if matches!(split_surgery_label(&t.c), Some((a, _, b)) if a == t.a && b == t.b) {
            tuples.push(alloc::vec![t.a.clone(), t.b.clone(), t.c.clone()]);
        }
    }
    Quotient::from_tuples(p.objects(), &tuples)
}
