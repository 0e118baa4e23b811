use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{span_basis, BitVec, GF2Matrix};
use crate::{Error, Result};

/// An ungraded chain complex over GF(2) with a labeled basis.
///
/// The differential is stored column-wise: `images[j] = d(e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    basis: Vec<String>,
    images: Vec<BitVec>,
}

/// Homology of a complex: dimension plus cycle representatives of a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub dim: usize,
    pub representatives: Vec<BitVec>,
}

/// A mapping cone with its triangle maps `ι: B → Cone` and `π: Cone → A`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: ChainComplex,
    pub inclusion: GF2Matrix,
    pub projection: GF2Matrix,
}

impl ChainComplex {
    pub fn new(basis: Vec<String>, images: Vec<BitVec>) -> Result<Self> {
        let n = basis.len();
        if images.len() != n || images.iter().any(|v| v.len() != n) {
            return Err(Error::Dimension(format!("differential must be {n}x{n}")));
        }
        for (i, b) in basis.iter().enumerate() {
            if basis[..i].contains(b) {
                return Err(Error::InvalidPresentation(format!("duplicate basis label {b}")));
            }
        }
        let c = Self { basis, images };
        for j in 0..n {
            if !c.d(&c.images[j]).is_zero() {
                return Err(Error::InvalidPresentation(format!("d² ≠ 0 on basis element {}", c.basis[j])));
            }
        }
        Ok(c)
    }

    /// The complex with the given basis and zero differential.
    pub fn trivial(basis: Vec<String>) -> Self {
        let n = basis.len();
        Self { basis, images: (0..n).map(|_| BitVec::zeros(n)).collect() }
    }

    pub fn zero() -> Self {
        Self::trivial(Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn images(&self) -> &[BitVec] {
        &self.images
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    /// The chain that is the sum of the named basis elements.
    pub fn chain<'a, I: IntoIterator<Item = &'a str>>(&self, labels: I) -> Result<BitVec> {
        let mut v = BitVec::zeros(self.dim());
        for l in labels {
            let i = self.index_of(l).ok_or_else(|| Error::InvalidPresentation(format!("unknown basis element {l}")))?;
            v.flip(i);
        }
        Ok(v)
    }

    pub fn labels_of(&self, v: &BitVec) -> Vec<&str> {
        v.iter_ones().map(|i| self.basis[i].as_str()).collect()
    }

    pub fn d(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.dim());
        for j in v.iter_ones() {
            out.xor_assign(&self.images[j]);
        }
        out
    }

    pub fn d_matrix(&self) -> GF2Matrix {
        GF2Matrix::from_columns(self.dim(), &self.images)
    }

    pub fn is_cycle(&self, v: &BitVec) -> bool {
        self.d(v).is_zero()
    }

    /// Some `η` with `d η = v`, if `v` is a boundary.
    pub fn bounding_chain(&self, v: &BitVec) -> Option<BitVec> {
        self.d_matrix().solve(v)
    }

    pub fn is_boundary(&self, v: &BitVec) -> bool {
        self.bounding_chain(v).is_some()
    }

    pub fn homology(&self) -> Homology {
        let boundaries = span_basis(self.dim(), &self.images);
        let mut span = boundaries.clone();
        let mut representatives = Vec::new();
        for z in self.d_matrix().kernel() {
            let mut trial = span.clone();
            trial.push(z.clone());
            let trial = span_basis(self.dim(), &trial);
            if trial.len() > span.len() {
                span = trial;
                representatives.push(z);
            }
        }
        Homology { dim: representatives.len(), representatives }
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology().dim == 0
    }

    /// Direct sum with basis labels kept (collisions get a `'` suffix).
    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let mut basis = self.basis.clone();
        for b in &other.basis {
            let mut label = b.clone();
            while basis.contains(&label) {
                label.push('\'');
            }
            basis.push(label);
        }
        let n = self.dim();
        let images = self
            .images
            .iter()
            .map(|v| v.concat(&BitVec::zeros(other.dim())))
            .chain(other.images.iter().map(|v| BitVec::zeros(n).concat(v)))
            .collect();
        ChainComplex { basis, images }
    }
}

/// `true` iff `f ∘ d_A = d_B ∘ f` (`f` has `A.dim()` columns, `B.dim()` rows).
pub fn is_chain_map(f: &GF2Matrix, a: &ChainComplex, b: &ChainComplex) -> bool {
    f.cols() == a.dim() && f.rows() == b.dim() && f.mul(&a.d_matrix()) == b.d_matrix().mul(f)
}

/// Mapping cone of `f: A → B` on `A ⊕ B` with `d(a, b) = (d a, f a + d b)`.
pub fn cone(f: &GF2Matrix, a: &ChainComplex, b: &ChainComplex) -> Result<Cone> {
    if !is_chain_map(f, a, b) {
        return Err(Error::NotChainMap(format!("{}x{} map", f.rows(), f.cols())));
    }
    let (na, nb) = (a.dim(), b.dim());
    let mut basis: Vec<String> = a.basis.iter().map(|s| format!("{s}@src")).collect();
    basis.extend(b.basis.iter().map(|s| format!("{s}@tgt")));
    let mut images = Vec::with_capacity(na + nb);
    for j in 0..na {
        images.push(a.images[j].concat(&f.column(j)));
    }
    for j in 0..nb {
        images.push(BitVec::zeros(na).concat(&b.images[j]));
    }
    let complex = ChainComplex::new(basis, images)?;
    let inclusion = GF2Matrix::from_columns(na + nb, &(0..nb).map(|j| BitVec::unit(na + nb, na + j)).collect::<Vec<_>>());
    let projection = GF2Matrix::from_columns(na, &(0..na + nb).map(|j| if j < na { BitVec::unit(na, j) } else { BitVec::zeros(na) }).collect::<Vec<_>>());
    Ok(Cone { complex, inclusion, projection })
}

/// Quasi-isomorphism test over GF(2): the cone of `f` is acyclic.
pub fn is_quasi_iso(f: &GF2Matrix, a: &ChainComplex, b: &ChainComplex) -> Result<bool> {
    Ok(cone(f, a, b)?.complex.is_acyclic())
}
