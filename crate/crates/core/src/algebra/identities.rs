//! Identity checking on basis tuples.
//!
//! Every identity here is multilinear, so holding on all tuples of basis
//! vectors is equivalent to holding on the whole algebra.

use std::fmt;

use serde::Serialize;

use super::{Algebra, Element};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `(x,y,z) = (y,x,z)`
    LeftSymmetry,
    /// `(xy)z = (xz)y`
    RightCommutativity,
    /// `(xy,z,t) = (x,z,t)y`
    ProductInFirstSlot,
    /// `(x,yz,t) = (x,y,t)z`
    ProductInMiddleSlot,
    /// `a(b x1..xt) = ab x1..xt - sum_i (a,b,xi) x1..^xi..xt`
    LeftWordExpansion,
    /// `(a x1..xs) o (b x(s+1)..xt) = (a o b) x1..xt - sum_i (a,b,xi) x1..^xi..xt`
    WordJordanExpansion,
    /// `(a x1..xs) o (b x(s+1)..xt) = a o (b x1..xt)`
    WordJordanShift,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Identity::LeftSymmetry => "left symmetry (x,y,z) = (y,x,z)",
            Identity::RightCommutativity => "right commutativity (xy)z = (xz)y",
            Identity::ProductInFirstSlot => "(xy,z,t) = (x,z,t)y",
            Identity::ProductInMiddleSlot => "(x,yz,t) = (x,y,t)z",
            Identity::LeftWordExpansion => "a(b x1..xt) expansion",
            Identity::WordJordanExpansion => "Jordan product of words, expanded",
            Identity::WordJordanShift => "Jordan product of words, shifted",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub identity: Identity,
    /// Basis indices in the identity's variable order (`a, b, x1, ..` for the word identities).
    pub tuple: Vec<usize>,
    /// Split point `s` for the Jordan word identities.
    pub split: Option<usize>,
    /// Left side minus right side.
    pub value: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub identities: Vec<Identity>,
    pub checked: u64,
    pub violation: Option<Violation>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }

    pub fn describe(&self, alg: &Algebra) -> String {
        match &self.violation {
            None => format!("pass ({} tuple checks)", self.checked),
            Some(v) => {
                let names: Vec<&str> = v
                    .tuple
                    .iter()
                    .map(|&i| alg.basis_names()[i].as_str())
                    .collect();
                let split = v.split.map(|s| format!(", s = {s}")).unwrap_or_default();
                format!(
                    "{} fails on ({}){}: difference {}",
                    v.identity,
                    names.join(", "),
                    split,
                    alg.format(&v.value)
                )
            }
        }
    }
}

/// Checks left symmetry and right commutativity on all basis triples.
pub fn check_novikov(alg: &Algebra) -> IdentityReport {
    let basis = alg.basis_elements();
    let mut checked = 0;
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let xy = alg.mul(x, y);
            let yx = alg.mul(y, x);
            for (k, z) in basis.iter().enumerate() {
                checked += 2;
                let yz = alg.mul(y, z);
                let xz = alg.mul(x, z);
                let xy_z = alg.mul(&xy, z);
                let xyz = xy_z.sub(&alg.mul(x, &yz));
                let yxz = alg.mul(&yx, z).sub(&alg.mul(y, &xz));
                let diff = xyz.sub(&yxz);
                if !diff.is_zero() {
                    return IdentityReport {
                        identities: vec![Identity::LeftSymmetry, Identity::RightCommutativity],
                        checked,
                        violation: Some(Violation {
                            identity: Identity::LeftSymmetry,
                            tuple: vec![i, j, k],
                            split: None,
                            value: diff,
                        }),
                    };
                }
                let diff = xy_z.sub(&alg.mul(&xz, y));
                if !diff.is_zero() {
                    return IdentityReport {
                        identities: vec![Identity::LeftSymmetry, Identity::RightCommutativity],
                        checked,
                        violation: Some(Violation {
                            identity: Identity::RightCommutativity,
                            tuple: vec![i, j, k],
                            split: None,
                            value: diff,
                        }),
                    };
                }
            }
        }
    }
    IdentityReport {
        identities: vec![Identity::LeftSymmetry, Identity::RightCommutativity],
        checked,
        violation: None,
    }
}

/// Checks the associator identities on all basis 4-tuples and the word
/// identities on all basis
/// tuples `(a, b, x1, .., xt)` with `1 <= t <= max_t` and every split `0 <= s < t`.
pub fn check_derived_identities(alg: &Algebra, max_t: usize) -> Result<IdentityReport> {
    let base = check_novikov(alg);
    if let Some(v) = &base.violation {
        return Err(Error::NotNovikov(format!(
            "{} on basis triple {:?}",
            v.identity, v.tuple
        )));
    }
    let identities = vec![
        Identity::ProductInFirstSlot,
        Identity::ProductInMiddleSlot,
        Identity::LeftWordExpansion,
        Identity::WordJordanExpansion,
        Identity::WordJordanShift,
    ];
    let mut checked = 0u64;
    let report = |checked, violation| IdentityReport {
        identities: identities.clone(),
        checked,
        violation,
    };

    let dim = alg.dim();
    let basis = alg.basis_elements();
    for x in 0..dim {
        for y in 0..dim {
            let xy = alg.mul(&basis[x], &basis[y]);
            for z in 0..dim {
                let yz = alg.mul(&basis[y], &basis[z]);
                for t in 0..dim {
                    checked += 2;
                    let lhs = alg.assoc(&xy, &basis[z], &basis[t]);
                    let rhs = alg.mul(&alg.assoc(&basis[x], &basis[z], &basis[t]), &basis[y]);
                    if lhs != rhs {
                        return Ok(report(
                            checked,
                            Some(Violation {
                                identity: Identity::ProductInFirstSlot,
                                tuple: vec![x, y, z, t],
                                split: None,
                                value: lhs.sub(&rhs),
                            }),
                        ));
                    }
                    let lhs = alg.assoc(&basis[x], &yz, &basis[t]);
                    let rhs = alg.mul(&alg.assoc(&basis[x], &basis[y], &basis[t]), &basis[z]);
                    if lhs != rhs {
                        return Ok(report(
                            checked,
                            Some(Violation {
                                identity: Identity::ProductInMiddleSlot,
                                tuple: vec![x, y, z, t],
                                split: None,
                                value: lhs.sub(&rhs),
                            }),
                        ));
                    }
                }
            }
        }
    }

    if max_t == 0 {
        return Ok(report(checked, None));
    }
    for a in 0..dim {
        for b in 0..dim {
            let mut walk = PairWalk::new(alg, &basis, a, b, max_t);
            let root = walk.root();
            let mut path = Vec::with_capacity(max_t);
            if let Some(v) = walk.descend(&root, &mut path) {
                return Ok(report(checked + walk.checked, Some(v)));
            }
            checked += walk.checked;
        }
    }
    Ok(report(checked, None))
}

/// Running products along one path `x1, .., xk` of the tuple tree.
#[derive(Clone)]
struct Frame {
    /// `b x1..xk`
    b_path: Element,
    /// `(ab) x1..xk`
    ab_path: Element,
    /// `(a o b) x1..xk`
    jordan_path: Element,
    /// `(a,b,xi) x1..^xi..xk` for each i
    omitted: Vec<Element>,
}

/// Depth-first walk over `x`-tuples for fixed basis vectors `a`, `b`,
/// sharing prefix products between siblings.
struct PairWalk<'a> {
    alg: &'a Algebra,
    a: usize,
    b: usize,
    max_t: usize,
    basis: &'a [Element],
    /// `(a, b, e_x)` for every basis index `x`
    assoc: Vec<Element>,
    checked: u64,
}

impl<'a> PairWalk<'a> {
    fn new(alg: &'a Algebra, basis: &'a [Element], a: usize, b: usize, max_t: usize) -> Self {
        let assoc = basis
            .iter()
            .map(|x| alg.assoc(&basis[a], &basis[b], x))
            .collect();
        PairWalk {
            alg,
            a,
            b,
            max_t,
            basis,
            assoc,
            checked: 0,
        }
    }

    fn root(&self) -> Frame {
        let (a, b) = (&self.basis[self.a], &self.basis[self.b]);
        Frame {
            b_path: b.clone(),
            ab_path: self.alg.mul(a, b),
            jordan_path: self.alg.jordan_unchecked(a, b),
            omitted: Vec::new(),
        }
    }

    fn right_normed(&self, start: &Element, xs: &[usize]) -> Element {
        xs.iter()
            .fold(start.clone(), |acc, &x| self.alg.mul_right_basis(&acc, x))
    }

    fn descend(&mut self, frame: &Frame, path: &mut Vec<usize>) -> Option<Violation> {
        let alg = self.alg;
        for x in 0..alg.dim() {
            let mut omitted: Vec<Element> = frame
                .omitted
                .iter()
                .map(|q| alg.mul_right_basis(q, x))
                .collect();
            omitted.push(self.right_normed(&self.assoc[x], path));
            let next = Frame {
                b_path: alg.mul_right_basis(&frame.b_path, x),
                ab_path: alg.mul_right_basis(&frame.ab_path, x),
                jordan_path: alg.mul_right_basis(&frame.jordan_path, x),
                omitted,
            };
            path.push(x);
            if let Some(v) = self.check_node(&next, path) {
                return Some(v);
            }
            if path.len() < self.max_t {
                if let Some(v) = self.descend(&next, path) {
                    return Some(v);
                }
            }
            path.pop();
        }
        None
    }

    fn check_node(&mut self, frame: &Frame, path: &[usize]) -> Option<Violation> {
        let alg = self.alg;
        let t = path.len();
        let a = &self.basis[self.a];
        let b = &self.basis[self.b];
        let tuple = || {
            let mut v = vec![self.a, self.b];
            v.extend_from_slice(path);
            v
        };
        let mut sum = alg.zero();
        for q in &frame.omitted {
            sum = sum.add(q);
        }

        self.checked += 1;
        let lhs = alg.mul(a, &frame.b_path);
        let rhs = frame.ab_path.sub(&sum);
        if lhs != rhs {
            return Some(Violation {
                identity: Identity::LeftWordExpansion,
                tuple: tuple(),
                split: None,
                value: lhs.sub(&rhs),
            });
        }

        let rhs6 = frame.jordan_path.sub(&sum);
        let rhs7 = alg.jordan_unchecked(a, &frame.b_path);
        let mut a_prefix = a.clone();
        for s in 0..t {
            if s > 0 {
                a_prefix = alg.mul_right_basis(&a_prefix, path[s - 1]);
            }
            let b_suffix = self.right_normed(b, &path[s..]);
            let lhs = alg.jordan_unchecked(&a_prefix, &b_suffix);
            self.checked += 2;
            for (identity, rhs) in [
                (Identity::WordJordanExpansion, &rhs6),
                (Identity::WordJordanShift, &rhs7),
            ] {
                if &lhs != rhs {
                    return Some(Violation {
                        identity,
                        tuple: tuple(),
                        split: Some(s),
                        value: lhs.sub(rhs),
                    });
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Field;
    use crate::gdgen;

    fn neg_example() -> Algebra {
        // ab = a, ba = b
        let q = Field::Rationals;
        Algebra::new(
            q,
            vec!["a".into(), "b".into()],
            [(0, 1, 0, q.one()), (1, 0, 1, q.one())],
        )
        .unwrap()
    }

    #[test]
    fn example1_is_novikov() {
        assert!(check_novikov(&gdgen::family_example1(Field::Rationals)).passed());
    }

    #[test]
    fn zero_algebra_is_novikov() {
        assert!(check_novikov(&Algebra::zero_algebra(Field::Rationals, 3)).passed());
    }

    #[test]
    fn left_symmetry_failure_located() {
        let alg = neg_example();
        let report = check_novikov(&alg);
        let v = report.violation.clone().unwrap();
        assert_eq!(v.identity, Identity::LeftSymmetry);
        assert_eq!(v.tuple, vec![0, 1, 0]);
        // (a,b,a) - (b,a,a) = -a - b
        let q = Field::Rationals;
        assert_eq!(
            v.value,
            alg.element(vec![q.from_i64(-1), q.from_i64(-1)]).unwrap()
        );
        assert!(report.describe(&alg).contains("(a, b, a)"));
    }

    #[test]
    fn derived_identities_on_families() {
        let f5 = Field::prime(5).unwrap();
        let cases = [
            (gdgen::family_truncated(3, Field::Rationals).unwrap(), 3),
            (gdgen::family_example1(Field::Rationals), 4),
            (gdgen::family_witt(5, f5).unwrap(), 3),
        ];
        for (alg, t) in cases {
            let report = check_derived_identities(&alg, t).unwrap();
            assert!(report.passed(), "{}", report.describe(&alg));
        }
    }

    #[test]
    fn derived_identities_refuse_non_novikov() {
        assert!(matches!(
            check_derived_identities(&neg_example(), 2),
            Err(Error::NotNovikov(_))
        ));
    }

    #[test]
    fn witt_structure_outside_its_characteristic() {
        // t d/dt is not a derivation of F_11[t]/(t^5 - 1).
        let alg = gdgen::family_witt(5, Field::prime(11).unwrap()).unwrap();
        let v = check_novikov(&alg).violation.unwrap();
        assert_eq!(v.identity, Identity::LeftSymmetry);
    }
}
