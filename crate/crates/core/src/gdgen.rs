//! Instance families: the Gelfand-Dorfman construction, small examples,
//! truncated polynomial algebras and direct sums.

use crate::algebra::{check_novikov, Algebra, Element};
use crate::error::{Error, Result};
use crate::exact::{Field, Scalar};
use crate::grading::{FiniteAbelianGroup, Grading, GroupElement};
use crate::linspace::{AlgebraMap, Subspace};

/// A commutative associative algebra together with a derivation.
#[derive(Debug, Clone)]
pub struct DifferentialAlgebra {
    comm: Algebra,
    derivation: AlgebraMap,
}

impl DifferentialAlgebra {
    pub fn new(comm: Algebra, derivation: AlgebraMap) -> Result<Self> {
        let n = comm.dim();
        if derivation.source_dim() != n || derivation.target_dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: derivation.source_dim(),
            });
        }
        let basis = comm.basis_elements();
        for x in &basis {
            for y in &basis {
                if comm.mul(x, y) != comm.mul(y, x) {
                    return Err(Error::NotCommutativeAssociative);
                }
                for z in &basis {
                    if !comm.assoc(x, y, z).is_zero() {
                        return Err(Error::NotCommutativeAssociative);
                    }
                }
            }
        }
        let d = |v: &Element| derivation.apply(v).expect("dimension checked");
        for x in &basis {
            for y in &basis {
                let lhs = d(&comm.mul(x, y));
                let rhs = comm.mul(&d(x), y).add(&comm.mul(x, &d(y)));
                if lhs != rhs {
                    return Err(Error::NotADerivation);
                }
            }
        }
        Ok(DifferentialAlgebra { comm, derivation })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.comm
    }

    pub fn derivation(&self) -> &AlgebraMap {
        &self.derivation
    }
}

/// `x * y = x D(y)`.
pub fn gelfand_dorfman(da: &DifferentialAlgebra) -> Algebra {
    let comm = &da.comm;
    let n = comm.dim();
    let field = comm.field();
    let d = da.derivation.matrix();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, djk) in d.row(j).iter().enumerate() {
                if djk.is_zero() {
                    continue;
                }
                for (l, c) in comm.product_terms(i, k) {
                    entries.push((i, j, *l, djk * c));
                }
            }
        }
    }
    Algebra::new(field, comm.basis_names().to_vec(), entries)
        .expect("indices come from a valid algebra")
}

/// Basis `a, b` with `ab = b` and every other product zero.
pub fn family_example1(field: Field) -> Algebra {
    Algebra::new(
        field,
        vec!["a".into(), "b".into()],
        [(0, 1, 1, field.one())],
    )
    .expect("fixed structure constants")
}

/// `Z_2`-grading of [`family_example1`] with `a` in degree 0 and `b` in degree 1.
pub fn example1_grading(alg: &Algebra) -> Result<Grading> {
    Grading::from_degrees(
        FiniteAbelianGroup::cyclic(2),
        alg,
        &[GroupElement(vec![0]), GroupElement(vec![1])],
    )
}

/// `K[t]/(t^m)` with `D = t d/dt`, so `e_i * e_j = j e_{i+j}` (zero once `i + j >= m`).
pub fn family_truncated(m: usize, field: Field) -> Result<Algebra> {
    if m < 2 {
        return Err(Error::InvalidGrading(format!(
            "truncation order {m} is below 2"
        )));
    }
    let one = field.one();
    let comm = Algebra::new(
        field,
        Algebra::default_names(m),
        (0..m)
            .flat_map(|i| (0..m - i).map(move |j| (i, j, i + j)))
            .map(|(i, j, k)| (i, j, k, one.clone())),
    )?;
    let degrees = (0..m).map(|i| field.from_i64(i as i64)).collect();
    let da = DifferentialAlgebra::new(comm, AlgebraMap::diagonal(field, degrees))?;
    Ok(gelfand_dorfman(&da))
}

/// `e_i * e_j = j e_{(i+j) mod p}`, the product of `F_p[t]/(t^p - 1)` with
/// `D = t d/dt`. Over a field of characteristic other than `p` the same
/// structure constants are built but the result is not Novikov.
pub fn family_witt(p: u64, field: Field) -> Result<Algebra> {
    if !crate::exact::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = p as usize;
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 1..n {
            entries.push((i, j, (i + j) % n, field.from_i64(j as i64)));
        }
    }
    Algebra::new(field, Algebra::default_names(n), entries)
}

/// Monomials `x^a y^c` with `a < p`, `c < b`, by total degree and then
/// descending power of `x`.
fn bivariate_monomials(p: usize, b: usize) -> Vec<(usize, usize)> {
    let mut monos: Vec<(usize, usize)> = (0..p).flat_map(|a| (0..b).map(move |c| (a, c))).collect();
    monos.sort_by_key(|&(a, c)| (a + c, std::cmp::Reverse(a)));
    monos
}

fn monomial_name(a: usize, c: usize) -> String {
    let part = |v: &str, e: usize| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    let name = format!("{}{}", part("x", a), part("y", c));
    if name.is_empty() {
        "1".into()
    } else {
        name
    }
}

/// `F_p[x, y]/(x^p, y^b)` with `D = d/dx`, and `L = span{x}`.
///
/// A finite-dimensional stand-in for the polynomial algebra `K[x, y]` with
/// `f * g = f dg/dx`, where `L_1` is a right ideal but not an ideal.
pub fn family_example2_modp(p: u64, b: usize) -> Result<(Algebra, Subspace)> {
    let field = Field::prime(p)?;
    if b == 0 {
        return Err(Error::InvalidGrading(
            "y-truncation must be at least 1".into(),
        ));
    }
    let monos = bivariate_monomials(p as usize, b);
    let index = |a: usize, c: usize| monos.iter().position(|&m| m == (a, c));
    let n = monos.len();
    let mut comm_entries = Vec::new();
    let mut d_rows = vec![vec![field.zero(); n]; n];
    for (i, &(a, c)) in monos.iter().enumerate() {
        for (j, &(a2, c2)) in monos.iter().enumerate() {
            if let Some(k) = index(a + a2, c + c2) {
                comm_entries.push((i, j, k, field.one()));
            }
        }
        if a > 0 {
            let k = index(a - 1, c).expect("lower monomial exists");
            d_rows[i][k] = field.from_i64(a as i64);
        }
    }
    let names = monos.iter().map(|&(a, c)| monomial_name(a, c)).collect();
    let comm = Algebra::new(field, names, comm_entries)?;
    let d = AlgebraMap::new(crate::linspace::Matrix::from_rows(field, n, d_rows));
    let alg = gelfand_dorfman(&DifferentialAlgebra::new(comm, d)?);
    let x = index(1, 0).map(|i| alg.basis_element(i));
    let l = Subspace::span(field, n, &x.into_iter().collect::<Vec<_>>())?;
    Ok((alg, l))
}

/// `Z_b`-grading of [`family_example2_modp`] by the degree in `y`.
pub fn example2_grading(alg: &Algebra, p: u64, b: usize) -> Result<Grading> {
    let monos = bivariate_monomials(p as usize, b);
    if monos.len() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: monos.len(),
            found: alg.dim(),
        });
    }
    let degrees: Vec<_> = monos
        .iter()
        .map(|&(_, c)| GroupElement(vec![c as u64]))
        .collect();
    Grading::from_degrees(FiniteAbelianGroup::cyclic(b as u64), alg, &degrees)
}

/// Block-diagonal sum; basis names get the summand index appended.
pub fn direct_sum(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    direct_sum_all(&[a, b])
}

pub fn direct_sum_all(parts: &[&Algebra]) -> Result<Algebra> {
    let field = parts.first().map_or(Field::Rationals, |a| a.field());
    let mut names = Vec::new();
    let mut entries = Vec::new();
    let mut offset = 0;
    for (idx, alg) in parts.iter().enumerate() {
        if alg.field() != field {
            return Err(Error::FieldMismatch(field, alg.field()));
        }
        names.extend(alg.basis_names().iter().map(|s| format!("{s}_{}", idx + 1)));
        entries.extend(
            alg.structure_constants()
                .map(|(i, j, k, c)| (i + offset, j + offset, k + offset, c.clone())),
        );
        offset += alg.dim();
    }
    Algebra::new(field, names, entries)
}

/// Combines gradings of the summands of a direct sum into a grading by the
/// direct sum of their groups: `N_g` of summand `s` sits in the degree that
/// is `g` in slot `s` and zero elsewhere.
pub fn direct_sum_grading(gradings: &[&Grading]) -> Result<Grading> {
    let field = gradings.first().map_or(Field::Rationals, |g| g.field());
    let group = gradings
        .iter()
        .fold(FiniteAbelianGroup::new(Vec::new())?, |acc, g| {
            acc.direct_sum(g.group())
        });
    let total: usize = gradings.iter().map(|g| g.ambient_dim()).sum();
    let mut comps = Vec::new();
    let mut offset = 0;
    let mut slot = 0;
    for g in gradings {
        if g.field() != field {
            return Err(Error::FieldMismatch(field, g.field()));
        }
        for (deg, space) in g.components() {
            let mut coords = vec![0; group.factors().len()];
            coords[slot..slot + deg.0.len()].copy_from_slice(&deg.0);
            let vectors: Vec<Element> = space
                .basis_rows()
                .iter()
                .map(|r| {
                    let mut v = vec![field.zero(); total];
                    v[offset..offset + r.len()].clone_from_slice(r);
                    Element::new(v)
                })
                .collect();
            comps.push((
                GroupElement(coords),
                Subspace::span(field, total, &vectors)?,
            ));
        }
        offset += g.ambient_dim();
        slot += g.group().factors().len();
    }
    Grading::new(group, field, total, comps)
}

/// Permutes equal summands of dimension `block`: summand `s` goes to summand `perm[s]`.
pub fn summand_permutation(field: Field, block: usize, perm: &[usize]) -> AlgebraMap {
    let full: Vec<usize> = (0..perm.len() * block)
        .map(|i| perm[i / block] * block + i % block)
        .collect();
    AlgebraMap::permutation(field, &full)
}

/// `e_i -> c^i e_i`.
pub fn power_diagonal(field: Field, dim: usize, c: &Scalar) -> AlgebraMap {
    AlgebraMap::diagonal(field, (0..dim as u64).map(|i| c.pow(i)).collect())
}

/// Checks the construction guarantee that a generated algebra is Novikov.
pub fn is_novikov(alg: &Algebra) -> bool {
    check_novikov(alg).passed()
}
