//! Gradings by finite abelian groups in invariant-factor form.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::exact::Field;
use crate::linspace::{product_unchecked, Matrix, Subspace};

/// `Z_{n_1} ⊕ ... ⊕ Z_{n_k}`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

/// Group element as a tuple of residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement(pub Vec<u64>);

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FiniteAbelianGroup {
    /// Factors of 1 are allowed and give the trivial group `Z_1`.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::InvalidGrading(
                "invariant factors must be positive".into(),
            ));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn cyclic(n: u64) -> Self {
        FiniteAbelianGroup { factors: vec![n] }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// `Some(n)` when the group is `Z_n`.
    pub fn cyclic_order(&self) -> Option<u64> {
        match self.factors.as_slice() {
            [n] => Some(*n),
            _ => None,
        }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.factors.len()])
    }

    pub fn element(&self, coords: Vec<u64>) -> Result<GroupElement> {
        if coords.len() != self.factors.len()
            || coords.iter().zip(&self.factors).any(|(a, n)| a >= n)
        {
            return Err(Error::InvalidGrading(format!(
                "({}) is not an element of Z{:?}",
                GroupElement(coords),
                self.factors
            )));
        }
        Ok(GroupElement(coords))
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&h.0)
                .zip(&self.factors)
                .map(|((a, b), n)| (a + b) % n)
                .collect(),
        )
    }

    pub fn neg(&self, g: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&self.factors)
                .map(|(a, n)| (n - a) % n)
                .collect(),
        )
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![GroupElement(Vec::new())];
        for &n in &self.factors {
            out = out
                .into_iter()
                .flat_map(|g| {
                    (0..n).map(move |a| {
                        let mut v = g.0.clone();
                        v.push(a);
                        GroupElement(v)
                    })
                })
                .collect();
        }
        out
    }

    /// Direct sum of groups; element tuples concatenate.
    pub fn direct_sum(&self, other: &FiniteAbelianGroup) -> FiniteAbelianGroup {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        FiniteAbelianGroup { factors }
    }
}

/// `N = ⊕_g N_g` with zero components omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    group: FiniteAbelianGroup,
    field: Field,
    dim: usize,
    components: BTreeMap<GroupElement, Subspace>,
}

impl Grading {
    pub fn new(
        group: FiniteAbelianGroup,
        field: Field,
        dim: usize,
        components: impl IntoIterator<Item = (GroupElement, Subspace)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<GroupElement, Subspace> = BTreeMap::new();
        for (g, space) in components {
            let g = group.element(g.0)?;
            if space.ambient_dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: space.ambient_dim(),
                });
            }
            if space.field() != field {
                return Err(Error::FieldMismatch(field, space.field()));
            }
            if space.is_zero() {
                continue;
            }
            let merged = match map.remove(&g) {
                Some(prev) => prev.sum_unchecked(&space),
                None => space,
            };
            map.insert(g, merged);
        }
        Ok(Grading {
            group,
            field,
            dim,
            components: map,
        })
    }

    /// One component per basis vector: `e_i` sits in degree `degrees[i]`.
    pub fn from_degrees(
        group: FiniteAbelianGroup,
        alg: &Algebra,
        degrees: &[GroupElement],
    ) -> Result<Self> {
        if degrees.len() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                found: degrees.len(),
            });
        }
        let comps = degrees.iter().enumerate().map(|(i, g)| {
            let line = Subspace::span(alg.field(), alg.dim(), &[alg.basis_element(i)])
                .expect("basis vector has the right shape");
            (g.clone(), line)
        });
        Self::new(group, alg.field(), alg.dim(), comps)
    }

    /// `N_i = span{e_i}` over `Z_dim`.
    pub fn coordinate_cyclic(alg: &Algebra) -> Self {
        let n = alg.dim() as u64;
        let degrees: Vec<_> = (0..n).map(|i| GroupElement(vec![i])).collect();
        Self::from_degrees(FiniteAbelianGroup::cyclic(n), alg, &degrees)
            .expect("coordinate degrees are in range")
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Nonzero components in group-element order.
    pub fn components(&self) -> &BTreeMap<GroupElement, Subspace> {
        &self.components
    }

    pub fn component(&self, g: &GroupElement) -> Subspace {
        self.components
            .get(g)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.field, self.dim))
    }

    /// The 0-component `N_0`.
    pub fn zero_component(&self) -> Subspace {
        self.component(&self.group.zero())
    }

    fn is_direct_sum(&self) -> bool {
        let total: usize = self.components.values().map(Subspace::dim).sum();
        if total != self.dim {
            return false;
        }
        let rows: Vec<_> = self
            .components
            .values()
            .flat_map(|s| s.basis_rows().iter().cloned())
            .collect();
        Matrix::from_rows(self.field, self.dim, rows).rank() == self.dim
    }

    /// Basis made of the component bases, in component order.
    fn adapted_basis(&self) -> (Matrix, Vec<GroupElement>) {
        let mut rows = Vec::new();
        let mut owners = Vec::new();
        for (g, s) in &self.components {
            for r in s.basis_rows() {
                rows.push(r.clone());
                owners.push(g.clone());
            }
        }
        (Matrix::from_rows(self.field, self.dim, rows), owners)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    pub direct_sum: bool,
    /// Pairs `(g, h)` with `N_g N_h ⊄ N_{g+h}`.
    pub violations: Vec<(GroupElement, GroupElement)>,
}

impl GradingReport {
    pub fn passed(&self) -> bool {
        self.direct_sum && self.violations.is_empty()
    }
}

/// Checks the direct-sum decomposition and `N_g N_h ⊆ N_{g+h}`.
/// With `full` every violating pair is collected, otherwise only the first.
pub fn check_grading(alg: &Algebra, g: &Grading, full: bool) -> Result<GradingReport> {
    if g.ambient_dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: g.ambient_dim(),
        });
    }
    let direct_sum = g.is_direct_sum();
    let mut violations = Vec::new();
    'outer: for (a, na) in &g.components {
        for (b, nb) in &g.components {
            let target = g.component(&g.group.add(a, b));
            if !target.includes(&product_unchecked(alg, na, nb)) {
                violations.push((a.clone(), b.clone()));
                if !full {
                    break 'outer;
                }
            }
        }
    }
    Ok(GradingReport {
        direct_sum,
        violations,
    })
}

pub(crate) fn require_valid(alg: &Algebra, g: &Grading) -> Result<()> {
    let report = check_grading(alg, g, false)?;
    if !report.direct_sum {
        return Err(Error::InvalidGrading(
            "components do not form a direct sum".into(),
        ));
    }
    if let Some((a, b)) = report.violations.first() {
        return Err(Error::InvalidGrading(format!(
            "N_({a}) N_({b}) is not inside N_({})",
            g.group.add(a, b)
        )));
    }
    Ok(())
}

/// Coarsens a grading along the projection onto one cyclic factor.
pub fn project_grading(g: &Grading, coordinate: usize) -> Result<Grading> {
    let factors = g.group.factors();
    if coordinate >= factors.len() {
        return Err(Error::IndexOutOfRange {
            index: coordinate,
            len: factors.len(),
        });
    }
    let target = FiniteAbelianGroup::cyclic(factors[coordinate]);
    let comps = g
        .components
        .iter()
        .map(|(h, s)| (GroupElement(vec![h.0[coordinate]]), s.clone()));
    Grading::new(target, g.field, g.dim, comps)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BConditions {
    /// (a): `N N_0 = 0`
    pub na_zero: bool,
    /// (b): `x ∘ y = 0` for `x ∈ N_g`, `y ∈ N_{-g}`
    pub opposite_jordan_zero: bool,
    /// First pair of degrees where (b) fails.
    pub jordan_witness: Option<(GroupElement, GroupElement)>,
}

impl BConditions {
    pub fn both(&self) -> bool {
        self.na_zero && self.opposite_jordan_zero
    }
}

pub fn check_b_conditions(alg: &Algebra, g: &Grading) -> Result<BConditions> {
    require_valid(alg, g)?;
    let full = Subspace::full(alg.field(), alg.dim());
    let na_zero = product_unchecked(alg, &full, &g.zero_component()).is_zero();
    let mut witness = None;
    'outer: for (a, na) in &g.components {
        let b = g.group.neg(a);
        let nb = g.component(&b);
        for x in na.basis() {
            for y in nb.basis() {
                if !alg.jordan_unchecked(&x, &y).is_zero() {
                    witness = Some((a.clone(), b));
                    break 'outer;
                }
            }
        }
    }
    Ok(BConditions {
        na_zero,
        opposite_jordan_zero: witness.is_none(),
        jordan_witness: witness,
    })
}

/// Splits `x` into homogeneous parts; zero parts are omitted.
pub fn homogeneous_decomposition(
    g: &Grading,
    x: &Element,
) -> Result<BTreeMap<GroupElement, Element>> {
    if x.dim() != g.dim {
        return Err(Error::DimensionMismatch {
            expected: g.dim,
            found: x.dim(),
        });
    }
    if !g.is_direct_sum() {
        return Err(Error::InvalidGrading(
            "components do not form a direct sum".into(),
        ));
    }
    let (basis, owners) = g.adapted_basis();
    let inv = basis
        .inverse()
        .map_err(|_| Error::InvalidGrading("components do not form a direct sum".into()))?;
    let coeffs = inv.apply(x.coords());
    let mut parts: BTreeMap<GroupElement, Element> = BTreeMap::new();
    for ((c, owner), row) in coeffs.iter().zip(&owners).zip(basis.rows()) {
        if c.is_zero() {
            continue;
        }
        let part = parts
            .entry(owner.clone())
            .or_insert_with(|| Element::zero(g.field, g.dim));
        part.add_scaled(c, &Element::new(row.clone()));
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Scalar;
    use crate::gdgen;

    fn q(n: i64) -> Scalar {
        Field::Rationals.from_i64(n)
    }

    fn e1_grading() -> (Algebra, Grading) {
        let e1 = gdgen::family_example1(Field::Rationals);
        let g = Grading::from_degrees(
            FiniteAbelianGroup::cyclic(2),
            &e1,
            &[GroupElement(vec![0]), GroupElement(vec![1])],
        )
        .unwrap();
        (e1, g)
    }

    #[test]
    fn group_arithmetic() {
        let g = FiniteAbelianGroup::new(vec![3, 4]).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.elements().len(), 12);
        let a = g.element(vec![2, 3]).unwrap();
        assert_eq!(g.add(&a, &a), GroupElement(vec![1, 2]));
        assert_eq!(g.add(&a, &g.neg(&a)), g.zero());
        assert!(g.element(vec![3, 0]).is_err());
    }

    #[test]
    fn truncated_and_witt_gradings_pass() {
        let t3 = gdgen::family_truncated(3, Field::Rationals).unwrap();
        assert!(check_grading(&t3, &Grading::coordinate_cyclic(&t3), false)
            .unwrap()
            .passed());
        let w5 = gdgen::family_witt(5, Field::prime(5).unwrap()).unwrap();
        assert!(check_grading(&w5, &Grading::coordinate_cyclic(&w5), false)
            .unwrap()
            .passed());
    }

    #[test]
    fn example1_z2_grading_passes() {
        let (e1, g) = e1_grading();
        assert!(check_grading(&e1, &g, true).unwrap().passed());
    }

    #[test]
    fn bad_grading_reports_pairs() {
        // Degrees (0, 0, 1): e1 e1 = e2 lands in N_1 but must lie in N_0.
        let t3 = gdgen::family_truncated(3, Field::Rationals).unwrap();
        let degrees: Vec<_> = [0, 0, 1].iter().map(|&d| GroupElement(vec![d])).collect();
        let g = Grading::from_degrees(FiniteAbelianGroup::cyclic(2), &t3, &degrees).unwrap();
        let first = check_grading(&t3, &g, false).unwrap();
        assert!(!first.passed());
        assert_eq!(first.violations.len(), 1);
        let all = check_grading(&t3, &g, true).unwrap();
        assert!(all.violations.len() >= first.violations.len());
        assert!(check_b_conditions(&t3, &g).is_err());
    }

    #[test]
    fn overlapping_components_are_not_direct() {
        let t3 = gdgen::family_truncated(3, Field::Rationals).unwrap();
        let full = Subspace::full(Field::Rationals, 3);
        let line = Subspace::span(Field::Rationals, 3, &[t3.basis_element(0)]).unwrap();
        let g = Grading::new(
            FiniteAbelianGroup::cyclic(2),
            Field::Rationals,
            3,
            [(GroupElement(vec![0]), full), (GroupElement(vec![1]), line)],
        )
        .unwrap();
        assert!(!check_grading(&t3, &g, false).unwrap().direct_sum);
    }

    #[test]
    fn projection_of_cyclic_grading_is_identity() {
        let t4 = gdgen::family_truncated(4, Field::Rationals).unwrap();
        let g = Grading::coordinate_cyclic(&t4);
        assert_eq!(project_grading(&g, 0).unwrap(), g);
        assert!(matches!(
            project_grading(&g, 1),
            Err(Error::IndexOutOfRange { index: 1, len: 1 })
        ));
    }

    #[test]
    fn projecting_a_product_grading() {
        // E1 ⊕ E1 graded by Z_2 ⊕ Z_2: a_1, a_2 in (0,0), b_1 in (1,0), b_2 in (0,1).
        let e1 = gdgen::family_example1(Field::Rationals);
        let sum = gdgen::direct_sum(&e1, &e1).unwrap();
        let g1 = gdgen::example1_grading(&e1).unwrap();
        let g = gdgen::direct_sum_grading(&[&g1, &g1]).unwrap();
        assert!(check_grading(&sum, &g, true).unwrap().passed());
        let p = project_grading(&g, 0).unwrap();
        assert!(check_grading(&sum, &p, true).unwrap().passed());
        let dims: Vec<usize> = p.components().values().map(Subspace::dim).collect();
        assert_eq!(dims, [3, 1]);
    }

    #[test]
    fn b_conditions() {
        let w5 = gdgen::family_witt(5, Field::prime(5).unwrap()).unwrap();
        assert!(check_b_conditions(&w5, &Grading::coordinate_cyclic(&w5))
            .unwrap()
            .both());
        let t3 = gdgen::family_truncated(3, Field::Rationals).unwrap();
        assert!(check_b_conditions(&t3, &Grading::coordinate_cyclic(&t3))
            .unwrap()
            .both());
        let (e1, g) = e1_grading();
        let c = check_b_conditions(&e1, &g).unwrap();
        assert!(c.na_zero && c.opposite_jordan_zero);
    }

    #[test]
    fn b_condition_a_can_fail() {
        // T3 with the trivial grading: N_0 = N and e0 e1 = e1 ≠ 0.
        let t3 = gdgen::family_truncated(3, Field::Rationals).unwrap();
        let g = Grading::new(
            FiniteAbelianGroup::cyclic(1),
            Field::Rationals,
            3,
            [(GroupElement(vec![0]), Subspace::full(Field::Rationals, 3))],
        )
        .unwrap();
        let c = check_b_conditions(&t3, &g).unwrap();
        assert!(!c.na_zero);
        assert!(!c.opposite_jordan_zero);
    }

    #[test]
    fn decomposition_examples() {
        let t3 = gdgen::family_truncated(3, Field::Rationals).unwrap();
        let g = Grading::coordinate_cyclic(&t3);
        let x = t3.element(vec![q(1), q(0), q(2)]).unwrap();
        let parts = homogeneous_decomposition(&g, &x).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&GroupElement(vec![0])], t3.basis_element(0));
        assert_eq!(
            parts[&GroupElement(vec![2])],
            t3.basis_element(2).scale(&q(2))
        );
        assert!(homogeneous_decomposition(&g, &t3.zero())
            .unwrap()
            .is_empty());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn decomposition_sums_back(xs in proptest::collection::vec(-5i64..5, 4)) {
                // Non-coordinate components: N_0 = span{e0 + e1}, N_1 = span{e1, e2 + e3}, N_2 = span{e3}
                let q = Field::Rationals;
                let el = |v: &[i64]| Element::new(v.iter().map(|&x| q.from_i64(x)).collect());
                let span = |vs: &[&[i64]]| {
                    let v: Vec<Element> = vs.iter().map(|v| el(v)).collect();
                    Subspace::span(q, 4, &v).unwrap()
                };
                let g = Grading::new(
                    FiniteAbelianGroup::cyclic(3),
                    q,
                    4,
                    [
                        (GroupElement(vec![0]), span(&[&[1, 1, 0, 0]])),
                        (GroupElement(vec![1]), span(&[&[0, 1, 0, 0], &[0, 0, 1, 1]])),
                        (GroupElement(vec![2]), span(&[&[0, 0, 0, 1]])),
                    ],
                ).unwrap();
                let x = el(&xs);
                let parts = homogeneous_decomposition(&g, &x).unwrap();
                let mut total = Element::zero(q, 4);
                for (deg, part) in &parts {
                    prop_assert!(g.component(deg).contains(part).unwrap());
                    total = total.add(part);
                }
                prop_assert_eq!(total, x);
            }
        }
    }
}
