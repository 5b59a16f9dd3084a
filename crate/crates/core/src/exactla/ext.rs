use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::QMatrix;
use super::rational::{format_rational, int, parse_rational, Rational};
use crate::error::{Error, Result};

/// Labelling of a basis of `V`.
///
/// `Plain(n)` uses labels `1..=n`. `Signed(n)` is a `2n`-dimensional space with basis
/// `e_1, ..., e_n, e_{-n}, ..., e_{-1}` in that order; labels are nonzero in `-n..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IndexSpace {
    Plain(usize),
    Signed(usize),
}

impl IndexSpace {
    pub fn dim(self) -> usize {
        match self {
            IndexSpace::Plain(n) => n,
            IndexSpace::Signed(n) => 2 * n,
        }
    }

    pub fn position(self, label: i64) -> Result<usize> {
        let bad = Err(Error::IndexOutOfRange(label));
        match self {
            IndexSpace::Plain(n) => {
                if label >= 1 && label as usize <= n {
                    Ok(label as usize - 1)
                } else {
                    bad
                }
            }
            IndexSpace::Signed(n) => {
                let a = label.unsigned_abs() as usize;
                if label == 0 || a > n {
                    bad
                } else if label > 0 {
                    Ok(a - 1)
                } else {
                    Ok(2 * n - a)
                }
            }
        }
    }

    pub fn label(self, pos: usize) -> i64 {
        match self {
            IndexSpace::Plain(_) => pos as i64 + 1,
            IndexSpace::Signed(n) => {
                if pos < n {
                    pos as i64 + 1
                } else {
                    -((2 * n - pos) as i64)
                }
            }
        }
    }
}

/// Positions of the set bits of a blade, ascending.
pub fn blade_positions(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask >> i & 1 == 1)
}

/// Sign of `e_a ∧ e_b` relative to the sorted blade `e_{a ∪ b}`; `None` if they overlap.
pub fn blade_sign(a: u64, b: u64) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let inversions: u32 = blade_positions(b)
        .map(|y| if y >= 63 { 0 } else { (a >> (y + 1)).count_ones() })
        .sum();
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

/// Element of the exterior algebra of a labelled space, stored as blade bitmask to coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtVector {
    space: IndexSpace,
    terms: BTreeMap<u64, Rational>,
}

impl ExtVector {
    pub fn zero(space: IndexSpace) -> Self {
        assert!(space.dim() <= 64, "ambient dimension above 64");
        ExtVector {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: IndexSpace) -> Self {
        let mut v = Self::zero(space);
        v.terms.insert(0, Rational::one());
        v
    }

    /// `e_{l_1} ∧ ... ∧ e_{l_p}` in the given order.
    pub fn blade(space: IndexSpace, labels: &[i64]) -> Result<Self> {
        let mut v = Self::one(space);
        for &l in labels {
            let p = space.position(l)?;
            v = v.wedge(&Self::basis_vector(space, p));
        }
        Ok(v)
    }

    pub fn basis_vector(space: IndexSpace, pos: usize) -> Self {
        assert!(pos < space.dim());
        let mut v = Self::zero(space);
        v.terms.insert(1 << pos, Rational::one());
        v
    }

    /// Vector `sum_p coords[p] e_p`.
    pub fn from_coords(space: IndexSpace, coords: &[Rational]) -> Self {
        assert_eq!(coords.len(), space.dim());
        let mut v = Self::zero(space);
        for (p, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                v.terms.insert(1 << p, c.clone());
            }
        }
        v
    }

    pub fn space(&self) -> IndexSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coefficient(&self, mask: u64) -> Rational {
        self.terms.get(&mask).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.count_ones() as usize);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    /// Single sorted blade with coefficient `c`.
    pub fn from_blade(space: IndexSpace, mask: u64, c: Rational) -> Self {
        let mut v = Self::zero(space);
        v.add_term(mask, c);
        v
    }

    pub(crate) fn add_term(&mut self, mask: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, other: &ExtVector) -> ExtVector {
        assert_eq!(self.space, other.space, "mismatched spaces");
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> ExtVector {
        let mut out = Self::zero(self.space);
        for (m, x) in self.terms() {
            out.add_term(m, x * c);
        }
        out
    }

    pub fn sub(&self, other: &ExtVector) -> ExtVector {
        self.add(&other.scale(&int(-1)))
    }

    pub fn wedge(&self, other: &ExtVector) -> ExtVector {
        assert_eq!(self.space, other.space, "mismatched spaces");
        let mut out = Self::zero(self.space);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                if let Some(s) = blade_sign(a, b) {
                    out.add_term(a | b, x * y * int(s));
                }
            }
        }
        out
    }

    /// Interior product with a covector given by its values on the basis.
    pub fn interior(&self, f: &[Rational]) -> ExtVector {
        assert_eq!(f.len(), self.dim());
        let mut out = Self::zero(self.space);
        for (m, x) in self.terms() {
            for (j, p) in blade_positions(m).enumerate() {
                if f[p].is_zero() {
                    continue;
                }
                let sign = if j % 2 == 0 { 1 } else { -1 };
                out.add_term(m & !(1 << p), x * &f[p] * int(sign));
            }
        }
        out
    }

    /// Image under the induced action of `g` (columns are images of basis vectors).
    pub fn transform(&self, g: &QMatrix) -> ExtVector {
        let n = self.dim();
        assert_eq!((g.rows(), g.cols()), (n, n));
        let mut out = Self::zero(self.space);
        for (m, x) in self.terms() {
            let mut image = Self::one(self.space);
            for p in blade_positions(m) {
                let col: Vec<Rational> = (0..n).map(|i| g.get(i, p).clone()).collect();
                image = image.wedge(&Self::from_coords(self.space, &col));
            }
            out = out.add(&image.scale(x));
        }
        out
    }

    /// Basis (as rows) of `{v in V : v ∧ self = 0}`.
    pub fn wedge_annihilator(&self) -> QMatrix {
        let n = self.dim();
        let images: Vec<ExtVector> = (0..n)
            .map(|p| Self::basis_vector(self.space, p).wedge(self))
            .collect();
        linear_map_kernel(&images, n)
    }

    /// `true` for nonzero homogeneous elements that are products of vectors.
    pub fn is_decomposable(&self) -> bool {
        match self.degree() {
            Some(0) => true,
            Some(p) => self.wedge_annihilator().rows() == p,
            None => false,
        }
    }

    /// Terms as `(labels, coefficient)` sorted by degree then positions.
    pub fn labelled_terms(&self) -> Vec<(Vec<i64>, Rational)> {
        let mut out: Vec<(u32, Vec<usize>, Rational)> = self
            .terms()
            .map(|(m, c)| (m.count_ones(), blade_positions(m).collect(), c.clone()))
            .collect();
        out.sort();
        out.into_iter()
            .map(|(_, ps, c)| (ps.into_iter().map(|p| self.space.label(p)).collect(), c))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct ExtVectorDoc {
    space: IndexSpace,
    terms: Vec<(Vec<i64>, String)>,
}

impl Serialize for ExtVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExtVectorDoc {
            space: self.space,
            terms: self
                .labelled_terms()
                .into_iter()
                .map(|(l, c)| (l, format_rational(&c)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExtVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ExtVectorDoc::deserialize(d)?;
        if doc.space.dim() > 64 {
            return Err(serde::de::Error::custom("ambient dimension above 64"));
        }
        let mut v = ExtVector::zero(doc.space);
        for (labels, c) in doc.terms {
            let c = parse_rational(&c).map_err(serde::de::Error::custom)?;
            let b = ExtVector::blade(doc.space, &labels).map_err(serde::de::Error::custom)?;
            v = v.add(&b.scale(&c));
        }
        Ok(v)
    }
}

/// Kernel of the linear map sending basis vector `p` to `images[p]`, as rows of length `n`.
pub(crate) fn linear_map_kernel(images: &[ExtVector], n: usize) -> QMatrix {
    let mut blades: Vec<u64> = images.iter().flat_map(|v| v.terms.keys().copied()).collect();
    blades.sort_unstable();
    blades.dedup();
    let mut m = QMatrix::zeros(blades.len(), n);
    for (p, v) in images.iter().enumerate() {
        for (mask, c) in v.terms() {
            let row = blades.binary_search(&mask).expect("blade collected above");
            m.set(row, p, c.clone());
        }
    }
    m.nullspace()
}
