//! JSON encodings for algebras, subspaces, maps and gradings.
//!
//! Scalars are written as strings (`"3"`, `"-1/2"`); integers are accepted
//! on input too. Fields are written `"Q"` or `{"Fp": p}`; the strings
//! `"Fp:7"`, `"F7"` and `"F_7"` are accepted on input as well.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::exact::{Field, Scalar};
use crate::grading::{FiniteAbelianGroup, Grading, GroupElement};
use crate::linspace::{AlgebraMap, Matrix, Subspace};

pub fn field_name(field: Field) -> String {
    match field {
        Field::Rationals => "Q".into(),
        Field::Prime(p) => format!("Fp:{p}"),
    }
}

/// Accepts `Q`, `Fp:7`, `F7` and `F_7`.
pub fn parse_field(s: &str) -> Result<Field> {
    let s = s.trim();
    if s == "Q" {
        return Ok(Field::Rationals);
    }
    let digits = s
        .strip_prefix("Fp:")
        .or_else(|| s.strip_prefix("F_"))
        .or_else(|| s.strip_prefix('F'))
        .ok_or_else(|| Error::Parse(format!("unknown field {s:?}; expected Q or Fp:<prime>")))?;
    let p: u64 = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad prime in field {s:?}")))?;
    Field::prime(p)
}

pub fn field_to_value(field: Field) -> Value {
    match field {
        Field::Rationals => Value::String("Q".into()),
        Field::Prime(p) => serde_json::json!({ "Fp": p }),
    }
}

pub fn field_from_value(v: &Value) -> Result<Field> {
    match v {
        Value::String(s) => parse_field(s),
        Value::Object(map) if map.len() == 1 => match map.get("Fp").and_then(Value::as_u64) {
            Some(p) => Field::prime(p),
            None => Err(Error::Parse(format!(
                "field: expected {{\"Fp\": <prime>}}, found {v}"
            ))),
        },
        other => Err(Error::Parse(format!(
            "field: expected \"Q\" or {{\"Fp\": <prime>}}, found {other}"
        ))),
    }
}

fn scalar_json(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

fn parse_scalar(field: Field, v: &Value, at: &str) -> Result<Scalar> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        other => {
            return Err(Error::Parse(format!(
                "{at}: expected a scalar, found {other}"
            )))
        }
    };
    field
        .parse(&text)
        .map_err(|e| Error::Parse(format!("{at}: {e}")))
}

fn from_str<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductJson {
    i: usize,
    j: usize,
    k: usize,
    c: Value,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraJson {
    field: Value,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<String>>,
    products: Vec<ProductJson>,
}

/// Nonzero structure constants in `(i, j, k)` order.
pub fn algebra_to_value(alg: &Algebra) -> Value {
    let doc = AlgebraJson {
        field: field_to_value(alg.field()),
        dim: alg.dim(),
        basis: Some(alg.basis_names().to_vec()),
        products: alg
            .structure_constants()
            .map(|(i, j, k, c)| ProductJson {
                i,
                j,
                k,
                c: scalar_json(c),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("plain data serializes")
}

pub fn algebra_to_json(alg: &Algebra) -> String {
    pretty(&algebra_to_value(alg))
}

pub fn algebra_from_json(text: &str) -> Result<Algebra> {
    let doc: AlgebraJson = from_str(text, "algebra")?;
    let field = field_from_value(&doc.field)?;
    if doc.dim == 0 {
        return Err(Error::Parse("dim: must be at least 1".into()));
    }
    let basis = match doc.basis {
        Some(b) if b.len() != doc.dim => {
            return Err(Error::Parse(format!(
                "basis: {} names for dim {}",
                b.len(),
                doc.dim
            )))
        }
        Some(b) => b,
        None => Algebra::default_names(doc.dim),
    };
    let mut entries = Vec::with_capacity(doc.products.len());
    for (n, p) in doc.products.iter().enumerate() {
        for (name, idx) in [("i", p.i), ("j", p.j), ("k", p.k)] {
            if idx >= doc.dim {
                return Err(Error::Parse(format!(
                    "products[{n}].{name}: index {idx} out of range for dim {}",
                    doc.dim
                )));
            }
        }
        let c = parse_scalar(field, &p.c, &format!("products[{n}].c"))?;
        entries.push((p.i, p.j, p.k, c));
    }
    Algebra::new(field, basis, entries)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubspaceJson {
    vectors: Vec<Vec<Value>>,
}

fn rows_json(rows: &[Vec<Scalar>]) -> Vec<Vec<Value>> {
    rows.iter()
        .map(|r| r.iter().map(scalar_json).collect())
        .collect()
}

fn parse_rows(
    field: Field,
    dim: usize,
    rows: &[Vec<Value>],
    what: &str,
) -> Result<Vec<Vec<Scalar>>> {
    rows.iter()
        .enumerate()
        .map(|(n, r)| {
            if r.len() != dim {
                return Err(Error::Parse(format!(
                    "{what}[{n}]: length {} but dim is {dim}",
                    r.len()
                )));
            }
            r.iter()
                .enumerate()
                .map(|(m, v)| parse_scalar(field, v, &format!("{what}[{n}][{m}]")))
                .collect()
        })
        .collect()
}

/// Echelon basis vectors.
pub fn subspace_to_value(v: &Subspace) -> Value {
    serde_json::to_value(SubspaceJson {
        vectors: rows_json(v.basis_rows()),
    })
    .expect("plain data serializes")
}

pub fn subspace_to_json(v: &Subspace) -> String {
    pretty(&subspace_to_value(v))
}

pub fn subspace_from_json(text: &str, field: Field, dim: usize) -> Result<Subspace> {
    let doc: SubspaceJson = from_str(text, "subspace")?;
    subspace_from_doc(&doc, field, dim, "vectors")
}

fn subspace_from_doc(doc: &SubspaceJson, field: Field, dim: usize, what: &str) -> Result<Subspace> {
    let rows = parse_rows(field, dim, &doc.vectors, what)?;
    Subspace::span(
        field,
        dim,
        &rows.into_iter().map(Element::new).collect::<Vec<_>>(),
    )
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapJson {
    matrix: Vec<Vec<Value>>,
}

/// Row `i` is the image of `e_i`.
pub fn map_to_json(phi: &AlgebraMap) -> String {
    pretty(
        &serde_json::to_value(MapJson {
            matrix: rows_json(phi.matrix().rows()),
        })
        .expect("plain data serializes"),
    )
}

pub fn map_from_json(text: &str, field: Field, dim: usize) -> Result<AlgebraMap> {
    let doc: MapJson = from_str(text, "map")?;
    if doc.matrix.len() != dim {
        return Err(Error::Parse(format!(
            "matrix: {} rows but dim is {dim}",
            doc.matrix.len()
        )));
    }
    let rows = parse_rows(field, dim, &doc.matrix, "matrix")?;
    Ok(AlgebraMap::new(Matrix::from_rows(field, dim, rows)))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GradingJson {
    group: Vec<u64>,
    components: BTreeMap<String, SubspaceJson>,
}

fn parse_degree(key: &str) -> Result<Vec<u64>> {
    let inner = key.trim();
    let inner = inner
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(inner);
    inner
        .split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("components: bad group element key {key:?}")))
        })
        .collect()
}

/// Keys are parenthesized coordinates such as `"(1,0)"`; bare `"1,0"` is
/// accepted on input.
pub fn grading_to_json(g: &Grading) -> String {
    let doc = GradingJson {
        group: g.group().factors().to_vec(),
        components: g
            .components()
            .iter()
            .map(|(deg, s)| {
                (
                    format!("({deg})"),
                    SubspaceJson {
                        vectors: rows_json(s.basis_rows()),
                    },
                )
            })
            .collect(),
    };
    pretty(&serde_json::to_value(doc).expect("plain data serializes"))
}

pub fn grading_from_json(text: &str, field: Field, dim: usize) -> Result<Grading> {
    let doc: GradingJson = from_str(text, "grading")?;
    let group = FiniteAbelianGroup::new(doc.group)?;
    let mut comps = Vec::new();
    for (key, sub) in &doc.components {
        let deg = GroupElement(parse_degree(key)?);
        let space = subspace_from_doc(sub, field, dim, &format!("components[{key:?}].vectors"))?;
        comps.push((deg, space));
    }
    Grading::new(group, field, dim, comps)
}

/// Two-space indented JSON with a trailing newline.
pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
