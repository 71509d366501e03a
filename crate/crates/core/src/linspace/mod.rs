//! Subspaces in canonical echelon form, algebra maps, quotient algebras.

mod matrix;

use std::fmt;

use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::exact::{Field, Scalar};

pub(crate) use matrix::rref;
pub use matrix::Matrix;

/// A linear subspace of `field^dim`, kept in reduced row echelon form.
///
/// The representation is canonical: two subspaces are equal iff their
/// bases are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Self::from_rows_unchecked(
            field,
            ambient,
            Matrix::identity(field, ambient).rows().to_vec(),
        )
    }

    /// Canonical basis of the span of `vectors`.
    pub fn span(field: Field, ambient: usize, vectors: &[Element]) -> Result<Self> {
        for v in vectors {
            if v.dim() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: v.dim(),
                });
            }
            if let Some(bad) = v.coords().iter().find(|c| c.field() != field) {
                return Err(Error::FieldMismatch(field, bad.field()));
            }
        }
        Ok(Self::from_rows_unchecked(
            field,
            ambient,
            vectors.iter().map(|v| v.coords().to_vec()).collect(),
        ))
    }

    pub(crate) fn from_rows_unchecked(
        field: Field,
        ambient: usize,
        rows: Vec<Vec<Scalar>>,
    ) -> Self {
        let rows: Vec<_> = rows
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let (rows, pivots) = rref(rows, ambient);
        Subspace {
            field,
            ambient,
            rows,
            pivots,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<Element> {
        self.rows.iter().cloned().map(Element::new).collect()
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        Ok(self.sum_unchecked(other))
    }

    pub(crate) fn sum_unchecked(&self, other: &Subspace) -> Subspace {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Self::from_rows_unchecked(self.field, self.ambient, rows)
    }

    /// Intersection via the left kernel of the stacked bases `[V; W]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        let mut stacked = self.rows.clone();
        stacked.extend(other.rows.iter().cloned());
        let m = Matrix::from_rows(self.field, self.ambient, stacked);
        let v = Matrix::from_rows(self.field, self.ambient, self.rows.clone());
        let k = self.dim();
        let vectors = m
            .left_kernel()
            .into_iter()
            .map(|coeffs| v.apply(&coeffs[..k]))
            .collect();
        Ok(Self::from_rows_unchecked(self.field, self.ambient, vectors))
    }

    /// Reduces `x` against the echelon basis; zero iff `x` lies in the span.
    pub fn residual(&self, x: &[Scalar]) -> Vec<Scalar> {
        let mut r = x.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let factor = -&r[p];
            for (a, b) in r.iter_mut().zip(row) {
                if !b.is_zero() {
                    a.add_mul(&factor, b);
                }
            }
        }
        r
    }

    pub fn contains(&self, x: &Element) -> Result<bool> {
        if x.dim() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: x.dim(),
            });
        }
        Ok(self.contains_coords(x.coords()))
    }

    pub(crate) fn contains_coords(&self, x: &[Scalar]) -> bool {
        self.residual(x).iter().all(Scalar::is_zero)
    }

    /// `other ⊆ self`
    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.includes(other))
    }

    pub(crate) fn includes(&self, other: &Subspace) -> bool {
        other.dim() <= self.dim() && other.rows.iter().all(|r| self.contains_coords(r))
    }

    /// Coordinates of `x ∈ self` with respect to the echelon basis.
    pub fn coordinates(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains_coords(x) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| x[p].clone()).collect())
    }

    /// Image under a linear map (row-vector convention).
    pub fn image(&self, map: &Matrix) -> Subspace {
        Self::from_rows_unchecked(
            self.field,
            map.ncols(),
            self.rows.iter().map(|r| map.apply(r)).collect(),
        )
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let items: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", items.join(","))?;
        }
        write!(f, "}}")
    }
}

/// `span{ v w : v ∈ basis(V), w ∈ basis(W) }`
pub fn product_space(alg: &Algebra, v: &Subspace, w: &Subspace) -> Result<Subspace> {
    for s in [v, w] {
        if s.ambient_dim() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                found: s.ambient_dim(),
            });
        }
    }
    Ok(product_unchecked(alg, v, w))
}

pub(crate) fn product_unchecked(alg: &Algebra, v: &Subspace, w: &Subspace) -> Subspace {
    let vb = v.basis();
    let wb = w.basis();
    let mut products = Vec::with_capacity(vb.len() * wb.len());
    for x in &vb {
        for y in &wb {
            let p = alg.mul(x, y);
            if !p.is_zero() {
                products.push(p.into_coords());
            }
        }
    }
    Subspace::from_rows_unchecked(alg.field(), alg.dim(), products)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubspaceKind {
    None,
    Subalgebra,
    RightIdeal,
    Ideal,
}

impl fmt::Display for SubspaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubspaceKind::None => "not a subalgebra",
            SubspaceKind::Subalgebra => "subalgebra",
            SubspaceKind::RightIdeal => "right ideal",
            SubspaceKind::Ideal => "ideal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub subalgebra: bool,
    pub right_ideal: bool,
    pub left_ideal: bool,
    pub summary: SubspaceKind,
}

impl Classification {
    pub fn is_ideal(&self) -> bool {
        self.summary == SubspaceKind::Ideal
    }
}

/// Which closure properties `v` has inside `alg`.
pub fn classify(alg: &Algebra, v: &Subspace) -> Result<Classification> {
    let full = Subspace::full(alg.field(), alg.dim());
    let right_ideal = v.includes(&product_space(alg, v, &full)?);
    let left_ideal = v.includes(&product_unchecked(alg, &full, v));
    let subalgebra = right_ideal || v.includes(&product_unchecked(alg, v, v));
    let summary = if right_ideal && left_ideal {
        SubspaceKind::Ideal
    } else if right_ideal {
        SubspaceKind::RightIdeal
    } else if subalgebra {
        SubspaceKind::Subalgebra
    } else {
        SubspaceKind::None
    };
    Ok(Classification {
        subalgebra,
        right_ideal,
        left_ideal,
        summary,
    })
}

/// A linear map between coordinate spaces; row `i` is the image of `e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraMap {
    matrix: Matrix,
}

impl AlgebraMap {
    pub fn new(matrix: Matrix) -> Self {
        AlgebraMap { matrix }
    }

    pub fn identity(field: Field, dim: usize) -> Self {
        AlgebraMap::new(Matrix::identity(field, dim))
    }

    /// `e_i -> d_i e_i`
    pub fn diagonal(field: Field, entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        let mut rows = Matrix::zeros(field, n, n).rows().to_vec();
        for (i, d) in entries.into_iter().enumerate() {
            rows[i][i] = d;
        }
        AlgebraMap::new(Matrix::from_rows(field, n, rows))
    }

    /// Map sending `e_i` to `e_{perm[i]}`.
    pub fn permutation(field: Field, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut rows = Matrix::zeros(field, n, n).rows().to_vec();
        for (i, &j) in perm.iter().enumerate() {
            rows[i][j] = field.one();
        }
        AlgebraMap::new(Matrix::from_rows(field, n, rows))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.dim() != self.source_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim(),
                found: x.dim(),
            });
        }
        Ok(Element::new(self.matrix.apply(x.coords())))
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &AlgebraMap) -> AlgebraMap {
        AlgebraMap::new(first.matrix.mul(&self.matrix))
    }

    pub fn inverse(&self) -> Result<AlgebraMap> {
        Ok(AlgebraMap::new(self.matrix.inverse()?))
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }
}

/// The subalgebra `v` as an algebra in its own right, on its echelon basis.
/// Returns the algebra and the inclusion map into `alg`.
pub fn restrict_to_subalgebra(alg: &Algebra, v: &Subspace) -> Result<(Algebra, AlgebraMap)> {
    if v.ambient_dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: v.ambient_dim(),
        });
    }
    let basis = v.basis();
    let mut entries = Vec::new();
    for (a, x) in basis.iter().enumerate() {
        for (b, y) in basis.iter().enumerate() {
            let p = alg.mul(x, y);
            let coords = v.coordinates(p.coords()).ok_or(Error::NotASubalgebra)?;
            for (k, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    entries.push((a, b, k, c));
                }
            }
        }
    }
    let names = v
        .pivots()
        .iter()
        .map(|&p| alg.basis_names()[p].clone())
        .collect();
    let sub = Algebra::new(alg.field(), names, entries)?;
    let inclusion = Matrix::from_rows(alg.field(), alg.dim(), v.basis_rows().to_vec());
    Ok((sub, AlgebraMap::new(inclusion)))
}

/// `alg / ideal` on the complement spanned by the non-pivot coordinates of `ideal`.
/// Returns the quotient and the projection `alg -> quotient`.
pub fn quotient_algebra(alg: &Algebra, ideal: &Subspace) -> Result<(Algebra, AlgebraMap)> {
    if !classify(alg, ideal)?.is_ideal() {
        return Err(Error::NotAnIdeal);
    }
    let complement: Vec<usize> = (0..alg.dim())
        .filter(|c| !ideal.pivots().contains(c))
        .collect();
    let project = |coords: &[Scalar]| -> Vec<Scalar> {
        let r = ideal.residual(coords);
        complement.iter().map(|&c| r[c].clone()).collect()
    };
    let mut entries = Vec::new();
    for (a, &i) in complement.iter().enumerate() {
        for (b, &j) in complement.iter().enumerate() {
            let p = alg.mul(&alg.basis_element(i), &alg.basis_element(j));
            for (k, c) in project(p.coords()).into_iter().enumerate() {
                if !c.is_zero() {
                    entries.push((a, b, k, c));
                }
            }
        }
    }
    let names = complement
        .iter()
        .map(|&c| alg.basis_names()[c].clone())
        .collect();
    let quotient = Algebra::new(alg.field(), names, entries)?;
    let proj_rows = (0..alg.dim())
        .map(|i| project(alg.basis_element(i).coords()))
        .collect();
    let projection = Matrix::from_rows(alg.field(), complement.len(), proj_rows);
    Ok((quotient, AlgebraMap::new(projection)))
}
