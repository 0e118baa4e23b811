//! Finite presentations of a dg-category over GF(2): hom complexes, a
//! strictly associative and unital composition μ₂, generator cycles,
//! declared exact triangles and null-cobordant tuples.
//!
//! Composition is written in diagrammatic order: `μ₂(a, b)` with
//! `a ∈ CF(A, B)` and `b ∈ CF(B, C)` lies in `CF(A, C)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Signed;

use super::{span_basis, BitVec, ChainComplex};
use crate::category::{Catalog, VOID};
use crate::geometry::Rat;
use crate::{Error, Result};

/// Algebraic data attached to a generating cobordism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorData {
    /// Cycle in `CF(source, target)` representing its class.
    pub cycle: BitVec,
    /// Generator declared to be its inverse (for simple generators).
    pub inverse: Option<String>,
}

/// An exact triangle `A →f B →ι C →π A`, optionally with a splitting
/// `σ ∈ CF(A, C)`, `ρ ∈ CF(C, B)` exhibiting `C` as the cone of `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub a: String,
    pub b: String,
    pub c: String,
    pub f: BitVec,
    pub iota: BitVec,
    pub pi: BitVec,
    pub split: Option<(BitVec, BitVec)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Presentation {
    pub catalog: Catalog,
    pub homs: BTreeMap<(String, String), ChainComplex>,
    /// `mu2[(A, B, C)][i * dim CF(B, C) + j] = μ₂(eᵢ, eⱼ)`.
    pub mu2: BTreeMap<(String, String, String), Vec<BitVec>>,
    pub units: BTreeMap<String, BitVec>,
    pub generators: BTreeMap<String, GeneratorData>,
    pub triangles: Vec<Triangle>,
    pub nullcobs: Vec<Vec<String>>,
    /// Lower bounds δ(L, L′) used by rigidity scans.
    pub deltas: BTreeMap<(String, String), Rat>,
}

fn key2(a: &str, b: &str) -> (String, String) {
    (a.to_string(), b.to_string())
}

fn key3(a: &str, b: &str, c: &str) -> (String, String, String) {
    (a.to_string(), b.to_string(), c.to_string())
}

impl Presentation {
    pub fn new(catalog: Catalog) -> Self {
        Self { catalog, ..Self::default() }
    }

    /// Object labels in canonical (sorted) order.
    pub fn objects(&self) -> Vec<String> {
        self.catalog.objects.keys().cloned().collect()
    }

    fn known(&self, label: &str) -> Result<()> {
        self.catalog.object(label).map(|_| ())
    }

    pub fn hom(&self, a: &str, b: &str) -> Result<&ChainComplex> {
        self.known(a)?;
        self.known(b)?;
        self.homs.get(&key2(a, b)).ok_or_else(|| Error::InvalidPresentation(format!("no hom complex CF({a}, {b})")))
    }

    pub fn hom_dim(&self, a: &str, b: &str) -> usize {
        self.homs.get(&key2(a, b)).map_or(0, ChainComplex::dim)
    }

    pub fn unit(&self, l: &str) -> Result<&BitVec> {
        self.units.get(l).ok_or_else(|| Error::InvalidPresentation(format!("no unit for {l}")))
    }

    pub fn chain(&self, a: &str, b: &str, labels: &[String]) -> Result<BitVec> {
        let hom = self.hom(a, b)?;
        labels
            .iter()
            .try_fold(BitVec::zeros(hom.dim()), |mut acc, l| {
                let i = hom.index_of(l).ok_or_else(|| Error::UnknownIntersection { point: l.clone(), first: a.to_string(), second: b.to_string() })?;
                acc.flip(i);
                Ok(acc)
            })
    }

    /// `μ₂(x, y)` for `x ∈ CF(a, b)`, `y ∈ CF(b, c)`.
    pub fn mu2(&self, a: &str, b: &str, c: &str, x: &BitVec, y: &BitVec) -> Result<BitVec> {
        let (nab, nbc, nac) = (self.hom_dim(a, b), self.hom_dim(b, c), self.hom_dim(a, c));
        if x.len() != nab || y.len() != nbc {
            return Err(Error::Dimension(format!("μ₂ on CF({a},{b}) × CF({b},{c}) got lengths {} and {}", x.len(), y.len())));
        }
        let mut out = BitVec::zeros(nac);
        if let Some(table) = self.mu2.get(&key3(a, b, c)) {
            for i in x.iter_ones() {
                for j in y.iter_ones() {
                    out.xor_assign(&table[i * nbc + j]);
                }
            }
        }
        Ok(out)
    }

    /// Whether `x + y` is a boundary in `CF(a, b)`.
    pub fn same_class(&self, a: &str, b: &str, x: &BitVec, y: &BitVec) -> Result<bool> {
        Ok(self.hom(a, b)?.is_boundary(&x.xor(y)))
    }

    /// Fills in zero hom complexes for unlisted pairs and checks every axiom.
    pub fn finalize(&mut self) -> Result<()> {
        let objects = self.objects();
        for a in &objects {
            for b in &objects {
                self.homs.entry(key2(a, b)).or_insert_with(ChainComplex::zero);
            }
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        for (a, b) in self.homs.keys() {
            self.known(a)?;
            self.known(b)?;
        }
        self.check_tables()?;
        self.check_leibniz()?;
        self.check_associativity()?;
        self.check_units()?;
        self.check_generators()?;
        for t in &self.triangles {
            self.check_triangle(t)?;
        }
        for tuple in &self.nullcobs {
            for l in tuple.iter().filter(|l| l.as_str() != VOID) {
                self.known(l)?;
            }
        }
        for ((a, b), d) in &self.deltas {
            self.known(a)?;
            self.known(b)?;
            if d.is_negative() {
                return Err(Error::BadWeight(format!("δ({a}, {b}) = {d} is negative")));
            }
        }
        Ok(())
    }

    fn check_tables(&self) -> Result<()> {
        for ((a, b, c), table) in &self.mu2 {
            let (nab, nbc, nac) = (self.hom(a, b)?.dim(), self.hom(b, c)?.dim(), self.hom(a, c)?.dim());
            if table.len() != nab * nbc || table.iter().any(|v| v.len() != nac) {
                return Err(Error::Dimension(format!("μ₂ table ({a}, {b}, {c}) has the wrong shape")));
            }
        }
        Ok(())
    }

    fn check_leibniz(&self) -> Result<()> {
        for (a, b, c) in self.mu2.keys() {
            let (hab, hbc, hac) = (self.hom(a, b)?, self.hom(b, c)?, self.hom(a, c)?);
            for i in 0..hab.dim() {
                let ei = BitVec::unit(hab.dim(), i);
                for j in 0..hbc.dim() {
                    let ej = BitVec::unit(hbc.dim(), j);
                    let lhs = hac.d(&self.mu2(a, b, c, &ei, &ej)?);
                    let rhs = self.mu2(a, b, c, &hab.d(&ei), &ej)?.xor(&self.mu2(a, b, c, &ei, &hbc.d(&ej))?);
                    if lhs != rhs {
                        return Err(Error::NotChainMap(format!("μ₂ on ({a}, {b}, {c}) fails the Leibniz rule at ({}, {})", hab.basis()[i], hbc.basis()[j])));
                    }
                }
            }
        }
        Ok(())
    }

    fn table(&self, a: &str, b: &str, c: &str) -> Option<&[BitVec]> {
        self.mu2.get(&key3(a, b, c)).map(Vec::as_slice)
    }

    fn check_associativity(&self) -> Result<()> {
        let objects = self.objects();
        let zero = |n: usize| BitVec::zeros(n);
        for a in &objects {
            for b in &objects {
                let nab = self.hom_dim(a, b);
                if nab == 0 {
                    continue;
                }
                for c in &objects {
                    let (nbc, nac) = (self.hom_dim(b, c), self.hom_dim(a, c));
                    if nbc == 0 {
                        continue;
                    }
                    for d in &objects {
                        let (ncd, nbd, nad) = (self.hom_dim(c, d), self.hom_dim(b, d), self.hom_dim(a, d));
                        let (abc, acd, bcd, abd) = (self.table(a, b, c), self.table(a, c, d), self.table(b, c, d), self.table(a, b, d));
                        for i in 0..nab {
                            for j in 0..nbc {
                                let ij = abc.map_or_else(|| zero(nac), |t| t[i * nbc + j].clone());
                                for k in 0..ncd {
                                    let mut left = zero(nad);
                                    if let Some(t) = acd {
                                        for p in ij.iter_ones() {
                                            left.xor_assign(&t[p * ncd + k]);
                                        }
                                    }
                                    let mut right = zero(nad);
                                    if let (Some(t), Some(u)) = (bcd, abd) {
                                        for q in t[j * ncd + k].iter_ones() {
                                            right.xor_assign(&u[i * nbd + q]);
                                        }
                                    }
                                    if left != right {
                                        return Err(Error::InvalidPresentation(format!("μ₂ is not associative on ({a}, {b}, {c}, {d})")));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_units(&self) -> Result<()> {
        let objects = self.objects();
        for l in &objects {
            let e = self.unit(l)?;
            let hom = self.hom(l, l)?;
            if e.len() != hom.dim() || !hom.is_cycle(e) {
                return Err(Error::InvalidPresentation(format!("unit of {l} is not a cycle of CF({l}, {l})")));
            }
        }
        for a in &objects {
            for b in &objects {
                let n = self.hom_dim(a, b);
                for i in 0..n {
                    let x = BitVec::unit(n, i);
                    if self.mu2(a, a, b, self.unit(a)?, &x)? != x || self.mu2(a, b, b, &x, self.unit(b)?)? != x {
                        return Err(Error::InvalidPresentation(format!("units are not strict on CF({a}, {b})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_generators(&self) -> Result<()> {
        for (name, data) in &self.generators {
            let shape = self.catalog.generators.get(name).ok_or_else(|| Error::InvalidPresentation(format!("generator {name} has no shape")))?;
            let target = shape.negs.last().map_or(VOID, String::as_str);
            if shape.source == VOID {
                continue;
            }
            let hom = self.hom(&shape.source, target)?;
            if data.cycle.len() != hom.dim() {
                return Err(Error::Dimension(format!("cycle of {name} has length {} in CF of dimension {}", data.cycle.len(), hom.dim())));
            }
            if !hom.is_cycle(&data.cycle) {
                return Err(Error::MarkingNotCycle(name.clone(), data.cycle.to_bit_string()));
            }
            if let Some(inv) = &data.inverse {
                let other = self.catalog.generators.get(inv).ok_or_else(|| Error::InvalidPresentation(format!("inverse {inv} of {name} is unknown")))?;
                if shape.negs.len() != 1 || other.negs.len() != 1 || other.source != target || other.negs[0] != shape.source {
                    return Err(Error::InvalidPresentation(format!("{inv} cannot be inverse to {name}")));
                }
            }
        }
        Ok(())
    }

    /// Dimension of the image of `vectors` in homology of `hom` (all vectors must be cycles).
    fn rank_in_homology(hom: &ChainComplex, vectors: &[BitVec]) -> usize {
        let boundaries = span_basis(hom.dim(), hom.images());
        let mut all = boundaries.clone();
        all.extend(vectors.iter().cloned());
        span_basis(hom.dim(), &all).len() - boundaries.len()
    }

    /// Rank of `[x] ↦ [μ₂(x, m)]` from `H(x_obj, a)` to `H(x_obj, b)`, for `m ∈ CF(a, b)`.
    fn post_rank(&self, x_obj: &str, a: &str, b: &str, m: &BitVec) -> Result<usize> {
        let reps = self.hom(x_obj, a)?.homology().representatives;
        let images: Vec<BitVec> = reps.iter().map(|r| self.mu2(x_obj, a, b, r, m)).collect::<Result<_>>()?;
        Ok(Self::rank_in_homology(self.hom(x_obj, b)?, &images))
    }

    /// Rank of `[y] ↦ [μ₂(m, y)]` from `H(b, x_obj)` to `H(a, x_obj)`, for `m ∈ CF(a, b)`.
    fn pre_rank(&self, x_obj: &str, a: &str, b: &str, m: &BitVec) -> Result<usize> {
        let reps = self.hom(b, x_obj)?.homology().representatives;
        let images: Vec<BitVec> = reps.iter().map(|r| self.mu2(a, b, x_obj, m, r)).collect::<Result<_>>()?;
        Ok(Self::rank_in_homology(self.hom(a, x_obj)?, &images))
    }

    /// Checks that `A →f B →ι C →π A` is exact: consecutive composites are
    /// boundaries and the long exact sequences of `H(X, −)` and `H(−, X)` are
    /// exact for every object `X`. A declared splitting is checked exactly.
    pub fn check_triangle(&self, t: &Triangle) -> Result<()> {
        let not_exact = |what: String| Error::NotExact(format!("triangle {} → {} → {}: {what}", t.a, t.b, t.c));
        let maps = [(&t.a, &t.b, &t.f, "f"), (&t.b, &t.c, &t.iota, "ι"), (&t.c, &t.a, &t.pi, "π")];
        for (x, y, m, name) in maps {
            let hom = self.hom(x, y)?;
            if m.len() != hom.dim() || !hom.is_cycle(m) {
                return Err(not_exact(format!("{name} is not a cycle")));
            }
        }
        for k in 0..3 {
            let (x, y, m1, n1) = maps[k];
            let (_, z, m2, n2) = maps[(k + 1) % 3];
            if !self.hom(x, z)?.is_boundary(&self.mu2(x, y, z, m1, m2)?) {
                return Err(not_exact(format!("{n2}∘{n1} is not a boundary")));
            }
        }
        for x in self.objects() {
            for k in 0..3 {
                let (p, q, m1, _) = maps[k];
                let (_, r, m2, _) = maps[(k + 1) % 3];
                let post = self.post_rank(&x, p, q, m1)? + self.post_rank(&x, q, r, m2)?;
                if post != self.hom(&x, q)?.homology().dim {
                    return Err(not_exact(format!("H({x}, −) is not exact at {q}")));
                }
                let pre = self.pre_rank(&x, q, r, m2)? + self.pre_rank(&x, p, q, m1)?;
                if pre != self.hom(q, &x)?.homology().dim {
                    return Err(not_exact(format!("H(−, {x}) is not exact at {q}")));
                }
            }
        }
        if let Some((sigma, rho)) = &t.split {
            self.check_split(t, sigma, rho).map_err(not_exact)?;
        }
        Ok(())
    }

    fn check_split(&self, t: &Triangle, sigma: &BitVec, rho: &BitVec) -> core::result::Result<(), String> {
        let (a, b, c) = (t.a.as_str(), t.b.as_str(), t.c.as_str());
        let m = |x: &str, y: &str, z: &str, u: &BitVec, v: &BitVec| self.mu2(x, y, z, u, v).map_err(|e| e.to_string());
        let hom = |x: &str, y: &str| self.hom(x, y).map_err(|e| e.to_string());
        let unit = |x: &str| self.unit(x).cloned().map_err(|e| e.to_string());
        if sigma.len() != hom(a, c)?.dim() || rho.len() != hom(c, b)?.dim() {
            return Err("splitting has the wrong dimensions".into());
        }
        let checks = [
            (hom(a, c)?.d(sigma) == m(a, b, c, &t.f, &t.iota)?, "dσ = μ₂(f, ι)"),
            (hom(c, b)?.d(rho) == m(c, a, b, &t.pi, &t.f)?, "dρ = μ₂(π, f)"),
            (m(a, c, a, sigma, &t.pi)? == unit(a)?, "μ₂(σ, π) = e_A"),
            (m(b, c, b, &t.iota, rho)? == unit(b)?, "μ₂(ι, ρ) = e_B"),
            (m(b, c, a, &t.iota, &t.pi)?.is_zero(), "μ₂(ι, π) = 0"),
            (m(a, c, b, sigma, rho)?.is_zero(), "μ₂(σ, ρ) = 0"),
            (m(c, a, c, &t.pi, sigma)?.xor(&m(c, b, c, rho, &t.iota)?) == unit(c)?, "μ₂(π, σ) + μ₂(ρ, ι) = e_C"),
        ];
        match checks.iter().find(|(ok, _)| !ok) {
            Some((_, what)) => Err(format!("splitting fails {what}")),
            None => Ok(()),
        }
    }

    /// The declared triangle with the given vertices, if any.
    pub fn triangle(&self, a: &str, b: &str, c: &str) -> Option<&Triangle> {
        self.triangles.iter().find(|t| t.a == a && t.b == b && t.c == c)
    }
}

impl Presentation {
    /// Registers a generator: its shape in the catalog and its cycle.
    pub fn add_generator(&mut self, name: &str, shape: crate::category::GeneratorShape, cycle: BitVec, inverse: Option<String>) -> Result<()> {
        self.catalog.add_generator(name, shape)?;
        self.generators.insert(name.to_string(), GeneratorData { cycle, inverse });
        Ok(())
    }

    /// Registers a generator drawn as a straight fan of strands.
    pub fn add_fan_generator(&mut self, name: &str, source: &str, negs: &[&str], cycle: BitVec, inverse: Option<&str>) -> Result<()> {
        let negs: Vec<String> = negs.iter().map(|s| s.to_string()).collect();
        let diagram = Catalog::fan_diagram(source, &negs);
        let shape = crate::category::GeneratorShape { source: source.to_string(), negs, diagram };
        self.add_generator(name, shape, cycle, inverse.map(str::to_string))
    }
}
