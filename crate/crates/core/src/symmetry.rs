//! Automorphisms, finite matrix groups, fixed subalgebras and eigenspace gradings.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::grading::{require_valid, FiniteAbelianGroup, Grading, GroupElement};
use crate::linspace::{AlgebraMap, Matrix, Subspace};

pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// A finite group of invertible maps, closed under composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismGroup {
    dim: usize,
    field: crate::exact::Field,
    /// Sorted by matrix, identity included.
    elements: Vec<AlgebraMap>,
    generators: Vec<AlgebraMap>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[AlgebraMap] {
        &self.elements
    }

    pub fn generators(&self) -> &[AlgebraMap] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, phi: &AlgebraMap) -> bool {
        self.elements.binary_search(phi).is_ok()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|a| {
            self.generators
                .iter()
                .all(|b| compose(a, b) == compose(b, a))
        })
    }

    /// `H` is a subgroup of `self` stable under conjugation.
    pub fn is_normal_subgroup(&self, h: &AutomorphismGroup) -> bool {
        h.elements.iter().all(|x| self.contains(x))
            && self.generators.iter().all(|g| {
                let g_inv = g.inverse().expect("group elements are invertible");
                h.generators
                    .iter()
                    .all(|x| h.contains(&compose(&compose(&g_inv, x), g)))
            })
    }
}

/// Apply `a`, then `b`.
fn compose(a: &AlgebraMap, b: &AlgebraMap) -> AlgebraMap {
    b.after(a)
}

fn closure(
    field: crate::exact::Field,
    dim: usize,
    gens: &[AlgebraMap],
    cap: usize,
) -> Result<AutomorphismGroup> {
    let identity = AlgebraMap::identity(field, dim);
    let mut seen: BTreeSet<AlgebraMap> = BTreeSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = compose(&x, g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                seen.insert(y.clone());
                frontier.push(y);
            }
        }
    }
    let mut generators: Vec<AlgebraMap> =
        gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    generators.sort();
    generators.dedup();
    Ok(AutomorphismGroup {
        dim,
        field,
        elements: seen.into_iter().collect(),
        generators,
    })
}

fn check_square(alg: &Algebra, phi: &AlgebraMap) -> Result<()> {
    for d in [phi.source_dim(), phi.target_dim()] {
        if d != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                found: d,
            });
        }
    }
    if phi.matrix().field() != alg.field() {
        return Err(Error::FieldMismatch(alg.field(), phi.matrix().field()));
    }
    Ok(())
}

/// Invertible and `φ(e_i e_j) = φ(e_i) φ(e_j)` on all basis pairs.
pub fn is_automorphism(alg: &Algebra, phi: &AlgebraMap) -> Result<bool> {
    check_square(alg, phi)?;
    if phi.matrix().rank() != alg.dim() {
        return Ok(false);
    }
    let images: Vec<Element> = (0..alg.dim())
        .map(|i| Element::new(phi.matrix().row(i).to_vec()))
        .collect();
    for (i, x) in images.iter().enumerate() {
        for (j, y) in images.iter().enumerate() {
            let lhs = phi.apply(&alg.mul(&alg.basis_element(i), &alg.basis_element(j)))?;
            if lhs != alg.mul(x, y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Closes `gens` under composition. Finite order makes inverses automatic.
pub fn group_closure(alg: &Algebra, gens: &[AlgebraMap], cap: usize) -> Result<AutomorphismGroup> {
    for g in gens {
        if !is_automorphism(alg, g)? {
            return Err(Error::NotAnAutomorphism);
        }
    }
    closure(alg.field(), alg.dim(), gens, cap)
}

fn fixed_space(field: crate::exact::Field, dim: usize, maps: &[AlgebraMap]) -> Subspace {
    let mut acc = Subspace::full(field, dim);
    for phi in maps {
        let ker = phi
            .matrix()
            .sub(&Matrix::identity(field, dim))
            .left_kernel();
        let space = Subspace::span(
            field,
            dim,
            &ker.into_iter().map(Element::new).collect::<Vec<_>>(),
        )
        .expect("kernel vectors have the right shape");
        acc = acc.intersect(&space).expect("same ambient space");
    }
    acc
}

/// `N^G`, computed from the generators.
pub fn fixed_subalgebra(group: &AutomorphismGroup) -> Subspace {
    fixed_space(group.field, group.dim, &group.generators)
}

/// `N_i = ker(φ - ε^i)` for a primitive `n`-th root of unity `ε` in the base field.
pub fn eigenspace_grading(alg: &Algebra, phi: &AlgebraMap, n: u64) -> Result<Grading> {
    check_square(alg, phi)?;
    if n == 0 {
        return Err(Error::OrderMismatch(0));
    }
    if !is_automorphism(alg, phi)? {
        return Err(Error::NotAnAutomorphism);
    }
    if !phi.matrix().pow(n).is_identity() {
        return Err(Error::OrderMismatch(n));
    }
    let field = alg.field();
    let eps = field.primitive_root_of_unity(n)?;
    let mut comps = Vec::new();
    let mut found = 0;
    for i in 0..n {
        let ker = phi.matrix().sub_scalar(&eps.pow(i)).left_kernel();
        let space = Subspace::span(
            field,
            alg.dim(),
            &ker.into_iter().map(Element::new).collect::<Vec<_>>(),
        )?;
        found += space.dim();
        comps.push((GroupElement(vec![i]), space));
    }
    if found != alg.dim() {
        return Err(Error::NotDiagonalizable {
            dim: alg.dim(),
            found,
        });
    }
    let g = Grading::new(FiniteAbelianGroup::cyclic(n), field, alg.dim(), comps)?;
    require_valid(alg, &g)?;
    Ok(g)
}

/// Subgroup generated by all commutators `g h g^-1 h^-1`.
pub fn commutator_subgroup(group: &AutomorphismGroup) -> AutomorphismGroup {
    let mut comms = BTreeSet::new();
    for g in &group.elements {
        let g_inv = g.inverse().expect("group elements are invertible");
        for h in &group.elements {
            let h_inv = h.inverse().expect("group elements are invertible");
            let c = compose(&compose(&compose(&h_inv, &g_inv), h), g);
            if !c.is_identity() {
                comms.insert(c);
            }
        }
    }
    let gens: Vec<AlgebraMap> = comms.into_iter().collect();
    closure(group.field, group.dim, &gens, group.order().max(1))
        .expect("a subgroup is no larger than the group")
}

/// The derived series reaches the trivial group.
pub fn is_solvable_group(group: &AutomorphismGroup) -> bool {
    let mut g = group.clone();
    loop {
        if g.is_trivial() {
            return true;
        }
        let next = commutator_subgroup(&g);
        if next.order() == g.order() {
            return false;
        }
        g = next;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma9Report {
    pub order_g: usize,
    pub order_h: usize,
    pub dim_fixed_h: usize,
    pub dim_fixed_g: usize,
    /// `φ(N^H) = N^H` for every `φ ∈ G`.
    pub invariant: bool,
    /// Representatives of one coset act identically on `N^H`.
    pub quotient_well_defined: bool,
    /// `(N^H)^{G/H} = N^G`.
    pub fixed_equal: bool,
}

impl Lemma9Report {
    pub fn passed(&self) -> bool {
        self.invariant && self.quotient_well_defined && self.fixed_equal
    }
}

/// Matrix of `φ` restricted to `v`, in the echelon basis of `v`.
fn restricted_matrix(v: &Subspace, phi: &AlgebraMap) -> Option<Matrix> {
    let rows = v
        .basis_rows()
        .iter()
        .map(|r| v.coordinates(&phi.matrix().apply(r)))
        .collect::<Option<Vec<_>>>()?;
    Some(Matrix::from_rows(v.field(), v.dim(), rows))
}

pub fn verify_lemma9(
    alg: &Algebra,
    g: &AutomorphismGroup,
    h: &AutomorphismGroup,
) -> Result<Lemma9Report> {
    for grp in [g, h] {
        if grp.dim != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                found: grp.dim,
            });
        }
    }
    if !g.is_normal_subgroup(h) {
        return Err(Error::NotNormal);
    }
    let fixed_h = fixed_subalgebra(h);
    let invariant = g
        .elements
        .iter()
        .all(|phi| fixed_h.image(phi.matrix()) == fixed_h);

    // Group G by cosets gH and compare the restrictions of their members.
    let mut reps: Vec<Matrix> = Vec::new();
    let mut well_defined = invariant;
    let mut covered: BTreeSet<&AlgebraMap> = BTreeSet::new();
    if invariant {
        for phi in &g.elements {
            if covered.contains(phi) {
                continue;
            }
            let rep = restricted_matrix(&fixed_h, phi).expect("N^H is invariant");
            for eta in &h.elements {
                let member = compose(eta, phi);
                let restricted = restricted_matrix(&fixed_h, &member).expect("N^H is invariant");
                if restricted != rep {
                    well_defined = false;
                }
                covered.insert(
                    g.elements
                        .iter()
                        .find(|x| **x == member)
                        .expect("G is closed"),
                );
            }
            reps.push(rep);
        }
    }

    let fixed_g = fixed_subalgebra(g);
    let fixed_equal = if well_defined {
        let quotient_maps: Vec<AlgebraMap> = reps.into_iter().map(AlgebraMap::new).collect();
        let inner = fixed_space(alg.field(), fixed_h.dim(), &quotient_maps);
        let basis = Matrix::from_rows(alg.field(), alg.dim(), fixed_h.basis_rows().to_vec());
        inner.image(&basis) == fixed_g
    } else {
        false
    };
    Ok(Lemma9Report {
        order_g: g.order(),
        order_h: h.order(),
        dim_fixed_h: fixed_h.dim(),
        dim_fixed_g: fixed_g.dim(),
        invariant,
        quotient_well_defined: well_defined,
        fixed_equal,
    })
}
