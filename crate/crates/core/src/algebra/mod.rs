//! Finite-dimensional algebras given by structure constants.

mod identities;

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{is_negative, Field, Scalar};
use crate::linspace::Matrix;

pub use identities::{
    check_derived_identities, check_novikov, Identity, IdentityReport, Violation,
};

pub const DEFAULT_DIM_CAP: usize = 64;

/// A coordinate vector over the basis of some algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    coords: Vec<Scalar>,
}

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Element { coords }
    }

    pub fn zero(field: Field, dim: usize) -> Self {
        Element {
            coords: vec![field.zero(); dim],
        }
    }

    pub fn basis(field: Field, dim: usize, i: usize) -> Self {
        let mut e = Self::zero(field, dim);
        e.coords[i] = field.one();
        e
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// Indices of nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn add(&self, other: &Element) -> Element {
        debug_assert_eq!(self.dim(), other.dim());
        Element {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        debug_assert_eq!(self.dim(), other.dim());
        Element {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Scalar, other: &Element) {
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                a.add_mul(c, b);
            }
        }
    }
}

/// An algebra over `field` with product `e_i e_j = sum_k c[i][j][k] e_k`.
///
/// Products are stored as one sparse list per basis pair; every zero
/// coefficient is dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    basis: Vec<String>,
    table: Vec<Vec<(usize, Scalar)>>,
}

impl Algebra {
    /// Builds an algebra from `(i, j, k, c)` entries; repeated entries add up.
    pub fn new(
        field: Field,
        basis: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        Self::with_cap(field, basis, entries, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(
        field: Field,
        basis: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        cap: usize,
    ) -> Result<Self> {
        let dim = basis.len();
        if dim > cap {
            return Err(Error::DimensionCap { dim, cap });
        }
        let mut dense = vec![field.zero(); dim * dim * dim];
        for (i, j, k, c) in entries {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange {
                        index: idx,
                        len: dim,
                    });
                }
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(field, c.field()));
            }
            let slot = &mut dense[(i * dim + j) * dim + k];
            *slot = &*slot + &c;
        }
        let table = dense
            .chunks(dim.max(1))
            .take(dim * dim)
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect()
            })
            .collect();
        Ok(Algebra {
            field,
            basis,
            table,
        })
    }

    /// Default basis names `e0, e1, ...`.
    pub fn default_names(dim: usize) -> Vec<String> {
        (0..dim).map(|i| format!("e{i}")).collect()
    }

    /// The algebra with every product zero.
    pub fn zero_algebra(field: Field, dim: usize) -> Self {
        Algebra {
            field,
            basis: Self::default_names(dim),
            table: vec![Vec::new(); dim * dim],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.field, self.dim())
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.field, self.dim(), i)
    }

    pub fn basis_elements(&self) -> Vec<Element> {
        (0..self.dim()).map(|i| self.basis_element(i)).collect()
    }

    /// Validated element from coordinates.
    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element> {
        self.check_coords(&coords)?;
        Ok(Element::new(coords))
    }

    fn check_coords(&self, coords: &[Scalar]) -> Result<()> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        if let Some(bad) = coords.iter().find(|c| c.field() != self.field) {
            return Err(Error::FieldMismatch(self.field, bad.field()));
        }
        Ok(())
    }

    fn check(&self, x: &Element) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok(())
    }

    /// Nonzero structure constants of `e_i e_j`.
    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim() + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.product_terms(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    /// All nonzero `(i, j, k, c)` in lexicographic order.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        let dim = self.dim();
        self.table.iter().enumerate().flat_map(move |(ij, terms)| {
            terms.iter().map(move |(k, c)| (ij / dim, ij % dim, *k, c))
        })
    }

    pub fn is_zero_product(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn associator(&self, x: &Element, y: &Element, z: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        self.check(z)?;
        Ok(self.assoc(x, y, z))
    }

    /// Jordan product `xy + yx`.
    pub fn jordan(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.jordan_unchecked(x, y))
    }

    pub(crate) fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = self.zero();
        let ys: Vec<_> = y.support().collect();
        for (i, xi) in x.support() {
            for &(j, yj) in &ys {
                let xy = xi * yj;
                for (k, c) in self.product_terms(i, j) {
                    out.coords[*k].add_mul(&xy, c);
                }
            }
        }
        out
    }

    /// `x e_j`
    pub(crate) fn mul_right_basis(&self, x: &Element, j: usize) -> Element {
        let mut out = self.zero();
        for (i, xi) in x.support() {
            for (k, c) in self.product_terms(i, j) {
                out.coords[*k].add_mul(xi, c);
            }
        }
        out
    }

    pub(crate) fn assoc(&self, x: &Element, y: &Element, z: &Element) -> Element {
        self.mul(&self.mul(x, y), z)
            .sub(&self.mul(x, &self.mul(y, z)))
    }

    pub(crate) fn jordan_unchecked(&self, x: &Element, y: &Element) -> Element {
        self.mul(x, y).add(&self.mul(y, x))
    }

    /// Matrix of `v -> v y` in the row-vector convention.
    pub fn right_multiplication(&self, y: &Element) -> Matrix {
        Matrix::from_rows(
            self.field,
            self.dim(),
            (0..self.dim())
                .map(|i| self.mul(&self.basis_element(i), y).into_coords())
                .collect(),
        )
    }

    /// Matrix of `v -> x v` in the row-vector convention.
    pub fn left_multiplication(&self, x: &Element) -> Matrix {
        Matrix::from_rows(
            self.field,
            self.dim(),
            (0..self.dim())
                .map(|i| self.mul(x, &self.basis_element(i)).into_coords())
                .collect(),
        )
    }

    /// Renders an element with basis names, e.g. `e0 + 2*e2`.
    pub fn format(&self, x: &Element) -> String {
        let mut out = String::new();
        for (i, c) in x.support() {
            let neg = is_negative(c);
            let mag = if neg { (-c).to_string() } else { c.to_string() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag != "1" {
                out.push_str(&mag);
                out.push('*');
            }
            out.push_str(&self.basis[i]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra over {} of dimension {}", self.field, self.dim())?;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if self.product_terms(i, j).is_empty() {
                    continue;
                }
                let prod = self.mul(&self.basis_element(i), &self.basis_element(j));
                writeln!(
                    f,
                    "  {} * {} = {}",
                    self.basis[i],
                    self.basis[j],
                    self.format(&prod)
                )?;
            }
        }
        Ok(())
    }
}
