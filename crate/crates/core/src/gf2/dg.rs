//! Presentations generated by small chain complexes: objects are complexes,
//! `CF(A, B)` is the complex of all linear maps `A → B` with
//! `d φ = d_B φ + φ d_A`, and `μ₂(φ, ψ) = ψ ∘ φ`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::presentation::{Presentation, Triangle};
use super::{cone, BitVec, ChainComplex, GF2Matrix};
use crate::category::Catalog;
use crate::geometry::rat;
use crate::objects::{surgery_object, ActionRule, IntersectionPoint, MarkedObject};
use crate::{Error, Result};

struct ConeData {
    a: String,
    b: String,
    c: String,
    f: GF2Matrix,
    iota: GF2Matrix,
    pi: GF2Matrix,
    sigma: GF2Matrix,
    rho: GF2Matrix,
}

#[derive(Default)]
pub struct DgModel {
    complexes: BTreeMap<String, ChainComplex>,
    marked: BTreeMap<String, MarkedObject>,
    labels: BTreeMap<(String, String), Vec<String>>,
    cones: Vec<ConeData>,
}

impl DgModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn complex(&self, label: &str) -> Result<&ChainComplex> {
        self.complexes.get(label).ok_or_else(|| Error::UnknownObject(label.to_string()))
    }

    pub fn add_object(&mut self, object: MarkedObject, complex: ChainComplex) {
        self.complexes.insert(object.label.clone(), complex);
        self.marked.insert(object.label.clone(), object);
    }

    /// Renames the basis of `CF(a, b)`; the order is that of [`DgModel::map_to_chain`].
    pub fn relabel(&mut self, a: &str, b: &str, labels: &[&str]) -> Result<()> {
        let n = self.complex(a)?.dim() * self.complex(b)?.dim();
        if labels.len() != n {
            return Err(Error::Dimension(format!("CF({a}, {b}) has {n} generators, got {} labels", labels.len())));
        }
        self.labels.insert((a.to_string(), b.to_string()), labels.iter().map(|s| s.to_string()).collect());
        Ok(())
    }

    fn hom_labels(&self, a: &str, b: &str) -> Result<Vec<String>> {
        if let Some(l) = self.labels.get(&(a.to_string(), b.to_string())) {
            return Ok(l.clone());
        }
        let (ca, cb) = (self.complex(a)?, self.complex(b)?);
        Ok(ca.basis().iter().flat_map(|x| cb.basis().iter().map(move |y| format!("{x}>{y}"))).collect())
    }

    /// Flattens a linear map `a → b` (a `dim b × dim a` matrix) into a chain
    /// of `CF(a, b)`: the generator sending the `j`-th basis vector of `a` to
    /// the `i`-th of `b` has index `j · dim b + i`.
    pub fn map_to_chain(&self, a: &str, b: &str, m: &GF2Matrix) -> Result<BitVec> {
        let (na, nb) = (self.complex(a)?.dim(), self.complex(b)?.dim());
        if m.rows() != nb || m.cols() != na {
            return Err(Error::Dimension(format!("map {a} → {b} must be {nb}×{na}")));
        }
        Ok(BitVec::from_indices(na * nb, (0..na).flat_map(|j| (0..nb).filter(move |&i| m.get(i, j)).map(move |i| j * nb + i))))
    }

    /// Adds the cone of the chain map `f: a → b` as a new object, with its
    /// split triangle `a → b → cone → a`.
    pub fn add_cone(&mut self, object: MarkedObject, a: &str, b: &str, f: &GF2Matrix) -> Result<()> {
        let (ca, cb) = (self.complex(a)?.clone(), self.complex(b)?.clone());
        let built = cone(f, &ca, &cb)?;
        let (na, nb) = (ca.dim(), cb.dim());
        let sigma = GF2Matrix::from_columns(na + nb, &(0..na).map(|j| BitVec::unit(na + nb, j)).collect::<Vec<_>>());
        let rho = GF2Matrix::from_columns(nb, &(0..na + nb).map(|j| if j < na { BitVec::zeros(nb) } else { BitVec::unit(nb, j - na) }).collect::<Vec<_>>());
        let label = object.label.clone();
        self.add_object(object, built.complex);
        self.cones.push(ConeData { a: a.to_string(), b: b.to_string(), c: label, f: f.clone(), iota: built.inclusion, pi: built.projection, sigma, rho });
        Ok(())
    }

    /// Adds the cone of `f: a → b` as the surgery object of `a` and `b`
    /// marked by the generators of `CF(a, b)` in the chain of `f`.
    pub fn add_surgery_cone(&mut self, a: &str, b: &str, f: &GF2Matrix) -> Result<String> {
        let chain = self.map_to_chain(a, b, f)?;
        let labels = self.hom_labels(a, b)?;
        let points: Vec<IntersectionPoint> = chain.iter_ones().map(|i| IntersectionPoint { id: labels[i].clone(), f_first: rat(1), f_second: rat(0) }).collect();
        let (ma, mb) = (self.marked(a)?, self.marked(b)?);
        let object = surgery_object(ma, mb, &points, ActionRule::Pointwise)?;
        let label = object.label.clone();
        self.add_cone(object, a, b, f)?;
        Ok(label)
    }

    fn marked(&self, label: &str) -> Result<&MarkedObject> {
        self.marked.get(label).ok_or_else(|| Error::UnknownObject(label.to_string()))
    }

    fn hom_complex(&self, a: &str, b: &str) -> Result<ChainComplex> {
        let (ca, cb) = (self.complex(a)?, self.complex(b)?);
        let (na, nb) = (ca.dim(), cb.dim());
        let mut images = Vec::with_capacity(na * nb);
        for j in 0..na {
            for i in 0..nb {
                let mut img = BitVec::zeros(na * nb);
                for k in cb.images()[i].iter_ones() {
                    img.flip(j * nb + k);
                }
                for l in 0..na {
                    if ca.images()[l].get(j) {
                        img.flip(l * nb + i);
                    }
                }
                images.push(img);
            }
        }
        ChainComplex::new(self.hom_labels(a, b)?, images)
    }

    /// Builds the presentation. Every hom generator between distinct objects
    /// is registered as an intersection point with `f_first = 1`,
    /// `f_second = 0` unless `catalog` already lists it.
    pub fn build(&self, mut catalog: Catalog) -> Result<Presentation> {
        for m in self.marked.values() {
            catalog.add_object(m.clone())?;
        }
        let labels: Vec<String> = self.complexes.keys().cloned().collect();
        for a in &labels {
            for b in &labels {
                if a == b {
                    continue;
                }
                for id in self.hom_labels(a, b)? {
                    if catalog.intersections.get(a, b, &id).is_err() {
                        catalog.intersections.insert(a, b, IntersectionPoint { id, f_first: rat(1), f_second: rat(0) });
                    }
                }
            }
        }
        let mut p = Presentation::new(catalog);
        for a in &labels {
            for b in &labels {
                p.homs.insert((a.clone(), b.clone()), self.hom_complex(a, b)?);
            }
            let n = self.complex(a)?.dim();
            p.units.insert(a.clone(), self.map_to_chain(a, a, &GF2Matrix::identity(n))?);
        }
        for a in &labels {
            let na = self.complex(a)?.dim();
            for b in &labels {
                let nb = self.complex(b)?.dim();
                for c in &labels {
                    let nc = self.complex(c)?.dim();
                    // E(j→i) then E(l→k) is E(j→k) when l = i
                    let mut table = Vec::with_capacity(na * nb * nb * nc);
                    for j in 0..na {
                        for i in 0..nb {
                            for l in 0..nb {
                                for k in 0..nc {
                                    table.push(if l == i { BitVec::unit(na * nc, j * nc + k) } else { BitVec::zeros(na * nc) });
                                }
                            }
                        }
                    }
                    p.mu2.insert((a.clone(), b.clone(), c.clone()), table);
                }
            }
        }
        for t in &self.cones {
            p.triangles.push(Triangle {
                a: t.a.clone(),
                b: t.b.clone(),
                c: t.c.clone(),
                f: self.map_to_chain(&t.a, &t.b, &t.f)?,
                iota: self.map_to_chain(&t.b, &t.c, &t.iota)?,
                pi: self.map_to_chain(&t.c, &t.a, &t.pi)?,
                split: Some((self.map_to_chain(&t.a, &t.c, &t.sigma)?, self.map_to_chain(&t.c, &t.b, &t.rho)?)),
            });
        }
        p.finalize()?;
        Ok(p)
    }
}
