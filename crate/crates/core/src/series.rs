//! Power chains, right-ideal closures and the graded chains `L_k`, `A^{r}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::grading::{require_valid, Grading, GroupElement};
use crate::linspace::{classify, product_unchecked, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainKind {
    /// `N^m = sum_{i<m} N^i N^{m-i}`
    Powers,
    /// `N^[m+1] = N^[m] N`
    RightPowers,
    /// `N^(m+1) = N^(m) N^(m)`
    DerivedPowers,
}

impl fmt::Display for ChainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainKind::Powers => "powers",
            ChainKind::RightPowers => "right powers",
            ChainKind::DerivedPowers => "derived powers",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The chain reaches zero at term number `index` (counting the start as 1).
    Nilpotent { index: usize },
    /// Term number `at` repeats forever and is nonzero.
    Stabilized { at: usize, dim: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    pub kind: ChainKind,
    /// Distinct terms, starting from the generating subspace.
    pub chain: Vec<Subspace>,
    pub verdict: Verdict,
}

impl ChainReport {
    pub fn dims(&self) -> Vec<usize> {
        self.chain.iter().map(Subspace::dim).collect()
    }

    pub fn index(&self) -> Option<usize> {
        match self.verdict {
            Verdict::Nilpotent { index } => Some(index),
            Verdict::Stabilized { .. } => None,
        }
    }

    /// Dimension sequence such as `2 ⊃ 1 ⊃ 0`, or `2 ⊃ 1 ⊃ 1 ...` when stable.
    pub fn render_dims(&self) -> String {
        let mut parts: Vec<String> = self.dims().iter().map(usize::to_string).collect();
        if let Verdict::Stabilized { dim, .. } = self.verdict {
            parts.push(format!("{dim} ..."));
        }
        parts.join(" ⊃ ")
    }

    pub fn summary(&self) -> ChainSummary {
        ChainSummary {
            kind: self.kind,
            dims: self.dims(),
            verdict: self.verdict.clone(),
        }
    }
}

/// Serializable view of a [`ChainReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainSummary {
    pub kind: ChainKind,
    pub dims: Vec<usize>,
    pub verdict: Verdict,
}

fn check_ambient(alg: &Algebra, v: &Subspace) -> Result<()> {
    if v.ambient_dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: v.ambient_dim(),
        });
    }
    Ok(())
}

/// Least right ideal containing `s`.
pub fn right_ideal_closure(alg: &Algebra, s: &Subspace) -> Result<Subspace> {
    check_ambient(alg, s)?;
    Ok(closure_unchecked(alg, s))
}

pub(crate) fn closure_unchecked(alg: &Algebra, s: &Subspace) -> Subspace {
    let full = Subspace::full(alg.field(), alg.dim());
    let mut v = s.clone();
    loop {
        let next = v.sum_unchecked(&product_unchecked(alg, &v, &full));
        if next.dim() == v.dim() {
            return v;
        }
        v = next;
    }
}

/// `[V^[1], ..., V^[count]]` with `V^[r+1] = V^[r] V`.
pub fn right_powers(alg: &Algebra, v: &Subspace, count: usize) -> Result<Vec<Subspace>> {
    check_ambient(alg, v)?;
    Ok(right_powers_unchecked(alg, v, count))
}

pub(crate) fn right_powers_unchecked(alg: &Algebra, v: &Subspace, count: usize) -> Vec<Subspace> {
    let mut out: Vec<Subspace> = Vec::with_capacity(count);
    for _ in 0..count {
        let next = match out.last() {
            None => v.clone(),
            Some(prev) if prev.is_zero() => prev.clone(),
            Some(prev) => product_unchecked(alg, prev, v),
        };
        out.push(next);
    }
    out
}

/// Chain of `kind` generated by the subspace `v`.
///
/// Right and derived powers are stable after one repeat. For powers a run
/// `N^m = ... = N^{2m}` is required, which forces every later term to agree.
pub fn subspace_chain(alg: &Algebra, v: &Subspace, kind: ChainKind) -> Result<ChainReport> {
    check_ambient(alg, v)?;
    // terms[m - 1] is term number m.
    let mut terms = vec![v.clone()];
    let mut run_start = 1;
    loop {
        let m = terms.len();
        let last = &terms[m - 1];
        if last.is_zero() {
            return Ok(ChainReport {
                kind,
                chain: dedup(&terms),
                verdict: Verdict::Nilpotent { index: m },
            });
        }
        let needed = match kind {
            ChainKind::Powers => 2 * run_start,
            _ => run_start + 1,
        };
        if m > run_start && m >= needed {
            return Ok(ChainReport {
                kind,
                chain: dedup(&terms),
                verdict: Verdict::Stabilized {
                    at: run_start,
                    dim: last.dim(),
                },
            });
        }
        let next = match kind {
            ChainKind::RightPowers => product_unchecked(alg, last, v),
            ChainKind::DerivedPowers => product_unchecked(alg, last, last),
            ChainKind::Powers => {
                let n = m + 1;
                let mut acc = Subspace::zero(alg.field(), alg.dim());
                for i in 1..n {
                    acc = acc.sum_unchecked(&product_unchecked(
                        alg,
                        &terms[i - 1],
                        &terms[n - i - 1],
                    ));
                }
                acc
            }
        };
        if !last.includes(&next) {
            return Err(Error::NotDescending(m));
        }
        if next != *last {
            run_start = m + 1;
        }
        terms.push(next);
    }
}

fn dedup(terms: &[Subspace]) -> Vec<Subspace> {
    let mut out: Vec<Subspace> = Vec::new();
    for t in terms {
        if out.last() != Some(t) {
            out.push(t.clone());
        }
    }
    out
}

/// Chain of `kind` for the whole algebra.
pub fn chain(alg: &Algebra, kind: ChainKind) -> ChainReport {
    subspace_chain(alg, &Subspace::full(alg.field(), alg.dim()), kind)
        .expect("chains of the full space always descend")
}

/// Derived length when solvable.
pub fn derived_length(alg: &Algebra) -> Option<usize> {
    chain(alg, ChainKind::DerivedPowers).index().map(|i| i - 1)
}

/// Least `m` with `N^[m] = 0`.
pub fn right_nilpotency_index(alg: &Algebra) -> Option<usize> {
    chain(alg, ChainKind::RightPowers).index()
}

/// Least `m` with `N^m = 0`.
pub fn nilpotency_index(alg: &Algebra) -> Option<usize> {
    chain(alg, ChainKind::Powers).index()
}

pub fn is_solvable(alg: &Algebra) -> bool {
    derived_length(alg).is_some()
}

pub fn is_right_nilpotent(alg: &Algebra) -> bool {
    right_nilpotency_index(alg).is_some()
}

pub fn is_nilpotent(alg: &Algebra) -> bool {
    nilpotency_index(alg).is_some()
}

/// Solvability of a subalgebra, computed inside the ambient algebra.
pub fn subspace_is_solvable(alg: &Algebra, v: &Subspace) -> Result<bool> {
    Ok(subspace_chain(alg, v, ChainKind::DerivedPowers)?
        .index()
        .is_some())
}

fn require_subalgebra(alg: &Algebra, l: &Subspace) -> Result<()> {
    if !classify(alg, l)?.subalgebra {
        return Err(Error::NotASubalgebra);
    }
    Ok(())
}

/// Right-nilpotency index of a subalgebra `L` (least `n` with `L^[n] = 0`).
pub fn subalgebra_right_index(alg: &Algebra, l: &Subspace) -> Result<Option<usize>> {
    require_subalgebra(alg, l)?;
    Ok(subspace_chain(alg, l, ChainKind::RightPowers)?.index())
}

/// Default window for [`l_chain`]: the right-nilpotency index of `L` plus one,
/// or `dim + 2` when `L` is not right nilpotent.
pub fn default_l_depth(alg: &Algebra, l: &Subspace) -> Result<usize> {
    Ok(subalgebra_right_index(alg, l)?.map_or(alg.dim() + 2, |n| n + 1))
}

/// `[L_0 = N, L_1, ..., L_depth]` with `L_k = <L^[k]>`.
pub fn l_chain(alg: &Algebra, l: &Subspace, depth: usize) -> Result<Vec<Subspace>> {
    require_subalgebra(alg, l)?;
    let mut out = vec![Subspace::full(alg.field(), alg.dim())];
    out.extend(
        right_powers_unchecked(alg, l, depth)
            .iter()
            .map(|p| closure_unchecked(alg, p)),
    );
    Ok(out)
}

/// One term `A^{r}` of the chain generated by the 0-component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraceTerm {
    pub r: usize,
    pub space: Subspace,
    /// Nonzero graded components `A^{r} ∩ N_g`.
    pub components: BTreeMap<GroupElement, Subspace>,
}

/// `A^{0} = N` and `A^{r} = <A^[r]>` for `r = 1..=depth`, where `A = N_0`.
/// Each term is checked to be graded with 0-component `A^[r]`.
pub fn a_brace_chain(alg: &Algebra, g: &Grading, depth: usize) -> Result<Vec<BraceTerm>> {
    require_valid(alg, g)?;
    let a = g.zero_component();
    let powers = right_powers_unchecked(alg, &a, depth);
    let mut out = Vec::with_capacity(depth + 1);
    for r in 0..=depth {
        let space = if r == 0 {
            Subspace::full(alg.field(), alg.dim())
        } else {
            closure_unchecked(alg, &powers[r - 1])
        };
        let mut components = BTreeMap::new();
        let mut total = 0;
        for (deg, comp) in g.components() {
            let part = space.intersect(comp)?;
            total += part.dim();
            if !part.is_zero() {
                components.insert(deg.clone(), part);
            }
        }
        if total != space.dim() {
            return Err(Error::InvalidGrading(format!(
                "A^{{{r}}} is not a graded subspace"
            )));
        }
        if r >= 1 {
            let zero = components
                .get(&g.group().zero())
                .cloned()
                .unwrap_or_else(|| Subspace::zero(alg.field(), alg.dim()));
            if zero != powers[r - 1] {
                return Err(Error::Corollary2Violation { r });
            }
        }
        out.push(BraceTerm {
            r,
            space,
            components,
        });
    }
    Ok(out)
}

/// Least `m` with `N^[m] ⊆ A^{1}`, searched up to `cap`.
pub fn lemma6_m(alg: &Algebra, g: &Grading, cap: usize) -> Result<usize> {
    require_valid(alg, g)?;
    let a = g.zero_component();
    if subspace_chain(alg, &a, ChainKind::RightPowers)?
        .index()
        .is_none()
    {
        return Err(Error::ZeroComponentNotRightNilpotent);
    }
    let a1 = closure_unchecked(alg, &a);
    let full = Subspace::full(alg.field(), alg.dim());
    let mut term = full.clone();
    for m in 1..=cap {
        if a1.includes(&term) {
            return Ok(m);
        }
        let next = product_unchecked(alg, &term, &full);
        if next == term {
            break;
        }
        term = next;
    }
    Err(Error::CapExceeded(cap))
}

/// Default search cap for [`lemma6_m`].
pub fn default_lemma6_cap(alg: &Algebra) -> usize {
    4 * alg.dim().max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Element;
    use crate::exact::Field;
    use crate::gdgen;
    use crate::linspace::SubspaceKind;

    fn span(alg: &Algebra, idx: &[usize]) -> Subspace {
        let v: Vec<Element> = idx.iter().map(|&i| alg.basis_element(i)).collect();
        Subspace::span(alg.field(), alg.dim(), &v).unwrap()
    }

    #[test]
    fn closure_examples() {
        let e1 = gdgen::family_example1(Field::Rationals);
        assert_eq!(
            right_ideal_closure(&e1, &span(&e1, &[1])).unwrap(),
            span(&e1, &[1])
        );
        assert!(right_ideal_closure(&e1, &span(&e1, &[0]))
            .unwrap()
            .is_full());
        let zero = Subspace::zero(Field::Rationals, 2);
        assert!(right_ideal_closure(&e1, &zero).unwrap().is_zero());
        assert!(right_ideal_closure(&e1, &Subspace::zero(Field::Rationals, 3)).is_err());
    }

    #[test]
    fn example1_chains() {
        let e1 = gdgen::family_example1(Field::Rationals);
        let rp = chain(&e1, ChainKind::RightPowers);
        assert_eq!(rp.verdict, Verdict::Nilpotent { index: 3 });
        assert_eq!(rp.dims(), [2, 1, 0]);
        let p = chain(&e1, ChainKind::Powers);
        assert_eq!(p.verdict, Verdict::Stabilized { at: 2, dim: 1 });
        assert_eq!(p.chain[1], span(&e1, &[1]));
        assert_eq!(derived_length(&e1), Some(2));
        assert!(is_solvable(&e1) && is_right_nilpotent(&e1) && !is_nilpotent(&e1));
        assert_eq!(p.render_dims(), "2 ⊃ 1 ⊃ 1 ...");
    }

    #[test]
    fn truncated_derived_chain() {
        let t3 = gdgen::family_truncated(3, Field::Rationals).unwrap();
        let d = chain(&t3, ChainKind::DerivedPowers);
        assert_eq!(d.verdict, Verdict::Nilpotent { index: 4 });
        assert_eq!(d.chain[1], span(&t3, &[1, 2]));
        assert_eq!(d.chain[2], span(&t3, &[2]));
        assert_eq!(derived_length(&t3), Some(3));
    }

    #[test]
    fn zero_algebra_is_everything() {
        let z = Algebra::zero_algebra(Field::Rationals, 3);
        assert!(is_solvable(&z) && is_right_nilpotent(&z) && is_nilpotent(&z));
        assert_eq!(right_nilpotency_index(&z), Some(2));
    }

    #[test]
    fn witt_is_not_solvable() {
        let w5 = gdgen::family_witt(5, Field::prime(5).unwrap()).unwrap();
        let d = chain(&w5, ChainKind::DerivedPowers);
        assert_eq!(d.verdict, Verdict::Stabilized { at: 1, dim: 5 });
        assert!(!is_solvable(&w5));
        assert!(!is_right_nilpotent(&w5));
    }

    #[test]
    fn non_subalgebra_chain_is_refused() {
        let t3 = gdgen::family_truncated(3, Field::Rationals).unwrap();
        let v = span(&t3, &[1]);
        // e1 e1 = e2 leaves span{e1}.
        assert!(matches!(
            subspace_chain(&t3, &v, ChainKind::RightPowers),
            Err(Error::NotDescending(_))
        ));
        assert!(matches!(l_chain(&t3, &v, 2), Err(Error::NotASubalgebra)));
    }

    #[test]
    fn l_chain_examples() {
        let e1 = gdgen::family_example1(Field::Rationals);
        let full = Subspace::full(Field::Rationals, 2);
        let l = l_chain(&e1, &full, 3).unwrap();
        assert!(l[1].is_full());
        assert_eq!(l[2], span(&e1, &[1]));
        assert!(l[3].is_zero());
        assert_eq!(default_l_depth(&e1, &full).unwrap(), 4);

        let zero = Subspace::zero(Field::Rationals, 2);
        assert!(l_chain(&e1, &zero, 3).unwrap()[1..]
            .iter()
            .all(Subspace::is_zero));

        let (e2, x) = gdgen::family_example2_modp(5, 2).unwrap();
        let l1 = &l_chain(&e2, &x, 1).unwrap()[1];
        assert!(!l1.is_full());
        assert!(!l1.contains(&e2.basis_element(2)).unwrap());
        assert_eq!(classify(&e2, l1).unwrap().summary, SubspaceKind::RightIdeal);
    }

    #[test]
    fn brace_chain_examples() {
        let t3 = gdgen::family_truncated(3, Field::Rationals).unwrap();
        let g = Grading::coordinate_cyclic(&t3);
        let terms = a_brace_chain(&t3, &g, 2).unwrap();
        assert!(terms[1].space.is_full());
        assert!(terms[2].space.is_zero());

        let w5 = gdgen::family_witt(5, Field::prime(5).unwrap()).unwrap();
        let terms = a_brace_chain(&w5, &Grading::coordinate_cyclic(&w5), 2).unwrap();
        assert!(terms[1].space.is_full());
        assert!(terms[2].space.is_zero());
    }

    #[test]
    fn lemma6_examples() {
        let t3 = gdgen::family_truncated(3, Field::Rationals).unwrap();
        assert_eq!(
            lemma6_m(&t3, &Grading::coordinate_cyclic(&t3), 12).unwrap(),
            1
        );
        // Zero algebra: N^[2] = 0, and N^[1] ⊆ A^{1} exactly when N_0 = N.
        let z1 = Algebra::zero_algebra(Field::Rationals, 1);
        assert_eq!(
            lemma6_m(&z1, &Grading::coordinate_cyclic(&z1), 8).unwrap(),
            1
        );
        let z2 = Algebra::zero_algebra(Field::Rationals, 2);
        assert_eq!(
            lemma6_m(&z2, &Grading::coordinate_cyclic(&z2), 8).unwrap(),
            2
        );
    }

    #[test]
    fn lemma6_against_brute_force() {
        let t4 = gdgen::family_truncated(4, Field::Rationals).unwrap();
        let g = Grading::coordinate_cyclic(&t4);
        let m = lemma6_m(&t4, &g, default_lemma6_cap(&t4)).unwrap();
        // Oracle: recompute both chains from raw element products.
        let a1 = {
            let mut v = span(&t4, &[0]);
            loop {
                let mut vecs = v.basis();
                for x in v.basis() {
                    for y in t4.basis_elements() {
                        vecs.push(t4.multiply(&x, &y).unwrap());
                    }
                }
                let next = Subspace::span(Field::Rationals, 4, &vecs).unwrap();
                if next == v {
                    break v;
                }
                v = next;
            }
        };
        let mut term = t4.basis_elements();
        let mut first = None;
        for k in 1..=16 {
            let s = Subspace::span(Field::Rationals, 4, &term).unwrap();
            if a1.contains_subspace(&s).unwrap() {
                first = Some(k);
                break;
            }
            term = term
                .iter()
                .flat_map(|x| t4.basis_elements().into_iter().map(move |y| (x.clone(), y)))
                .map(|(x, y)| t4.multiply(&x, &y).unwrap())
                .collect();
        }
        assert_eq!(Some(m), first);
    }

    #[test]
    fn lemma6_needs_right_nilpotent_zero_component() {
        let e1 = gdgen::family_example1(Field::Rationals);
        let trivial = Grading::new(
            crate::grading::FiniteAbelianGroup::cyclic(1),
            Field::Rationals,
            2,
            [(GroupElement(vec![0]), Subspace::full(Field::Rationals, 2))],
        )
        .unwrap();
        // N_0 = N is right nilpotent here, so m exists.
        assert_eq!(lemma6_m(&e1, &trivial, 8).unwrap(), 1);
        let w5 = gdgen::family_witt(5, Field::prime(5).unwrap()).unwrap();
        let trivial = Grading::new(
            crate::grading::FiniteAbelianGroup::cyclic(1),
            w5.field(),
            5,
            [(GroupElement(vec![0]), Subspace::full(w5.field(), 5))],
        )
        .unwrap();
        assert!(matches!(
            lemma6_m(&w5, &trivial, 8),
            Err(Error::ZeroComponentNotRightNilpotent)
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn corpus() -> Vec<Algebra> {
            vec![
                gdgen::family_example1(Field::Rationals),
                gdgen::family_truncated(4, Field::Rationals).unwrap(),
                gdgen::family_truncated(5, Field::prime(7).unwrap()).unwrap(),
                gdgen::family_witt(5, Field::prime(5).unwrap()).unwrap(),
                gdgen::family_example2_modp(3, 2).unwrap().0,
            ]
        }

        #[test]
        fn chains_descend_for_every_kind() {
            for alg in corpus() {
                for kind in [
                    ChainKind::Powers,
                    ChainKind::RightPowers,
                    ChainKind::DerivedPowers,
                ] {
                    let c = chain(&alg, kind);
                    for w in c.chain.windows(2) {
                        assert!(w[0].includes(&w[1]) && w[0] != w[1]);
                    }
                }
            }
        }

        proptest! {
            #[test]
            fn closure_is_a_right_ideal(mask in 0u32..32, which in 0usize..5) {
                let alg = corpus().swap_remove(which);
                let idx: Vec<usize> = (0..alg.dim()).filter(|i| mask >> (i % 5) & 1 == 1).collect();
                let s = span(&alg, &idx);
                let c = right_ideal_closure(&alg, &s).unwrap();
                prop_assert!(c.includes(&s));
                let kind = classify(&alg, &c).unwrap();
                prop_assert!(kind.right_ideal);
                prop_assert_eq!(right_ideal_closure(&alg, &c).unwrap(), c);
            }
        }
    }
}
