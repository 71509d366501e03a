use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::*;
use crate::exact::Field;
use crate::gdgen;
use crate::grading::{project_grading, FiniteAbelianGroup};
use crate::linspace::AlgebraMap;
use crate::symmetry::{eigenspace_grading, DEFAULT_GROUP_CAP};

/// An algebra with the gradings, subalgebras and automorphism groups the
/// statements are checked against.
#[derive(Debug, Clone)]
pub struct InstanceBundle {
    pub id: String,
    pub algebra: Algebra,
    pub gradings: Vec<(String, Grading)>,
    pub subalgebras: Vec<(String, Subspace)>,
    /// Generators of each group.
    pub groups: Vec<(String, Vec<AlgebraMap>)>,
}

impl InstanceBundle {
    pub fn new(id: impl Into<String>, algebra: Algebra) -> Self {
        InstanceBundle {
            id: id.into(),
            algebra,
            gradings: Vec::new(),
            subalgebras: Vec::new(),
            groups: Vec::new(),
        }
    }

    pub fn with_grading(mut self, name: &str, g: Grading) -> Self {
        self.gradings.push((name.to_string(), g));
        self
    }

    pub fn with_subalgebra(mut self, name: &str, l: Subspace) -> Self {
        self.subalgebras.push((name.to_string(), l));
        self
    }

    pub fn with_group(mut self, name: &str, gens: Vec<AlgebraMap>) -> Self {
        self.groups.push((name.to_string(), gens));
        self
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Longest word in the word identities.
    pub max_t: usize,
    /// Range of `s, t, n` for the `L_k` filtration checks.
    pub window: usize,
    /// Longest degree tuple for the `A^[r]` stability check.
    pub k_max: usize,
    /// Largest `r` for the `A^[r]` and `V^[r]` checks.
    pub r_max: usize,
    /// Largest power `k` for `xu = -k ux` (at least the group order is used).
    pub lemma7_k: usize,
    pub group_cap: usize,
    /// Restrict to these statements; `None` runs everything.
    pub statements: Option<BTreeSet<Statement>>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_t: 4,
            window: 4,
            k_max: 3,
            r_max: 3,
            lemma7_k: 5,
            group_cap: DEFAULT_GROUP_CAP,
            statements: None,
        }
    }
}

impl SuiteConfig {
    fn wants(&self, sts: &[Statement]) -> bool {
        match &self.statements {
            None => true,
            Some(set) => sts.iter().any(|s| set.contains(s)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    /// Sorted by statement, then instance.
    pub reports: Vec<VerifyReport>,
}

impl SuiteReport {
    pub fn count(&self, outcome: Outcome) -> usize {
        self.reports.iter().filter(|r| r.outcome == outcome).count()
    }

    /// True when no asserted conclusion failed.
    pub fn passed(&self) -> bool {
        self.count(Outcome::Violated) == 0
    }
}

/// Runs every applicable verifier on every bundle. Bundles are processed in
/// parallel; the output order does not depend on scheduling.
pub fn run_suite(bundles: &[InstanceBundle], cfg: &SuiteConfig) -> SuiteReport {
    let mut reports: Vec<VerifyReport> = bundles
        .par_iter()
        .flat_map_iter(|b| run_bundle(b, cfg))
        .collect();
    if let Some(set) = &cfg.statements {
        reports.retain(|r| set.contains(&r.statement));
    }
    reports.sort_by(|a, b| (a.statement, &a.instance).cmp(&(b.statement, &b.instance)));
    SuiteReport { reports }
}

fn na(sts: &[Statement], instance: &str, e: &Error) -> Vec<VerifyReport> {
    sts.iter()
        .map(|&s| VerifyReport::not_applicable(s, instance, e.to_string()))
        .collect()
}

fn collect(sts: &[Statement], instance: &str, r: Result<Vec<VerifyReport>>) -> Vec<VerifyReport> {
    r.unwrap_or_else(|e| na(sts, instance, &e))
}

fn one(st: Statement, instance: &str, r: Result<VerifyReport>) -> VerifyReport {
    r.unwrap_or_else(|e| VerifyReport::not_applicable(st, instance, e.to_string()))
}

fn run_bundle(b: &InstanceBundle, cfg: &SuiteConfig) -> Vec<VerifyReport> {
    let alg = &b.algebra;
    let id = b.id.as_str();
    let mut out = Vec::new();

    if cfg.wants(&[Statement::Lemma1]) {
        out.push(verify_lemma1(id, alg, cfg.max_t));
    }
    if cfg.wants(&[Statement::ShestakovZhang]) {
        out.push(one(
            Statement::ShestakovZhang,
            id,
            verify_shestakov_zhang(id, alg),
        ));
    }

    for (name, l) in &b.subalgebras {
        let inst = format!("{id} L={name}");
        let sts = [Statement::Lemma2, Statement::Corollary1];
        if cfg.wants(&sts) {
            out.extend(collect(
                &sts,
                &inst,
                verify_lemma2_cor1(&inst, alg, l, cfg.window),
            ));
        }
        if cfg.wants(&[Statement::Theorem1]) {
            out.push(one(
                Statement::Theorem1,
                &inst,
                verify_theorem1(&inst, alg, l),
            ));
        }
    }

    let sts = [Statement::Lemma5, Statement::Corollary3];
    if cfg.wants(&sts) {
        let whole = ("N".to_string(), Subspace::full(alg.field(), alg.dim()));
        let extra = (!b.subalgebras.iter().any(|(_, l)| l == &whole.1)).then_some(&whole);
        for (name, v) in extra.into_iter().chain(&b.subalgebras) {
            let inst = format!("{id} V={name}");
            out.extend(collect(
                &sts,
                &inst,
                verify_lemma5_cor3(&inst, alg, v, cfg.r_max),
            ));
        }
    }

    let mut cyclic: Vec<(String, Grading)> = Vec::new();
    for (name, gens) in &b.groups {
        let inst = format!("{id} G={name}");
        let group = match group_closure(alg, gens, cfg.group_cap) {
            Ok(g) => g,
            Err(e) => {
                out.extend(na(&COR5_THM3, &inst, &e));
                out.extend(na(&[Statement::Lemma9], &inst, &e));
                continue;
            }
        };
        if cfg.wants(&COR5_THM3) {
            out.extend(collect(
                &COR5_THM3,
                &inst,
                verify_cor5_thm3(&inst, alg, &group),
            ));
        }
        if cfg.wants(&[Statement::Lemma9]) {
            match lemma9_subgroups(alg, &group) {
                Ok(hs) => {
                    for (hname, h) in hs {
                        let inst = format!("{inst} H={hname}");
                        out.push(one(
                            Statement::Lemma9,
                            &inst,
                            verify_lemma9(&inst, alg, &group, &h),
                        ));
                    }
                }
                Err(e) => out.extend(na(&[Statement::Lemma9], &inst, &e)),
            }
        }
        // A cyclic group with enough roots of unity grades the algebra by eigenspaces.
        if let [phi] = gens.as_slice() {
            if let Ok(g) = eigenspace_grading(alg, phi, group.order() as u64) {
                cyclic.push((format!("eig({name})"), g));
            }
        }
    }

    let mut non_cyclic = Vec::new();
    for (name, g) in &b.gradings {
        if g.group().cyclic_order().is_some() {
            cyclic.push((name.clone(), g.clone()));
        } else {
            non_cyclic.push((name.clone(), g.clone()));
            for k in 0..g.group().factors().len() {
                if let Ok(p) = project_grading(g, k) {
                    cyclic.push((format!("{name}/{k}"), p));
                }
            }
        }
    }

    for (name, g) in &cyclic {
        let inst = format!("{id} g={name}");
        let sts = [Statement::Lemma3, Statement::Corollary2];
        if cfg.wants(&sts) {
            out.extend(collect(
                &sts,
                &inst,
                verify_lemma3_cor2(&inst, alg, g, cfg.k_max, cfg.r_max),
            ));
        }
        if cfg.wants(&[Statement::Lemma4]) {
            out.push(one(Statement::Lemma4, &inst, verify_lemma4(&inst, alg, g)));
        }
        if cfg.wants(&[Statement::Lemma6]) {
            out.push(one(Statement::Lemma6, &inst, verify_lemma6(&inst, alg, g)));
        }
        if cfg.wants(&LEMMA7_8_COR4) {
            out.extend(collect(
                &LEMMA7_8_COR4,
                &inst,
                verify_lemma7_8_cor4(&inst, alg, g, cfg.lemma7_k),
            ));
        }
        if cfg.wants(&PROP1_PROP2_THM2) {
            out.extend(collect(
                &PROP1_PROP2_THM2,
                &inst,
                verify_prop1_prop2_thm2(&inst, alg, g),
            ));
        }
    }
    for (name, g) in &non_cyclic {
        let inst = format!("{id} g={name}");
        if cfg.wants(&PROP1_PROP2_THM2) {
            out.extend(collect(
                &PROP1_PROP2_THM2,
                &inst,
                verify_prop1_prop2_thm2(&inst, alg, g),
            ));
        }
    }
    out
}

fn q() -> Field {
    Field::Rationals
}

fn fp(p: u64) -> Field {
    Field::prime(p).expect("corpus primes are prime")
}

fn span(alg: &Algebra, idx: &[usize]) -> Subspace {
    let v: Vec<_> = idx.iter().map(|&i| alg.basis_element(i)).collect();
    Subspace::span(alg.field(), alg.dim(), &v).expect("basis vectors fit")
}

fn whole(alg: &Algebra) -> Subspace {
    Subspace::full(alg.field(), alg.dim())
}

fn truncated(m: usize, field: Field, id: &str) -> InstanceBundle {
    let t = gdgen::family_truncated(m, field).expect("m >= 2");
    let g = Grading::coordinate_cyclic(&t);
    InstanceBundle::new(id, t.clone())
        .with_grading(&format!("Z{m}"), g)
        .with_subalgebra("N", whole(&t))
}

/// The built-in instances: the Gelfand-Dorfman families over `Q` and small
/// prime fields, direct sums with product gradings and permutation groups,
/// and two non-Novikov controls.
pub fn default_corpus() -> Vec<InstanceBundle> {
    let mut out = Vec::new();

    let zero = Algebra::zero_algebra(q(), 1);
    let g = Grading::new(
        FiniteAbelianGroup::cyclic(1),
        q(),
        1,
        [(GroupElement(vec![0]), whole(&zero))],
    )
    .expect("trivial grading");
    out.push(
        InstanceBundle::new("zero1", zero.clone())
            .with_grading("Z1", g)
            .with_subalgebra("N", whole(&zero)),
    );

    let e1 = gdgen::family_example1(q());
    out.push(
        InstanceBundle::new("e1", e1.clone())
            .with_grading("Z2", gdgen::example1_grading(&e1).expect("Z2 grading"))
            .with_subalgebra("N", whole(&e1))
            .with_subalgebra("a", span(&e1, &[0]))
            .with_subalgebra("b", span(&e1, &[1]))
            .with_subalgebra("0", Subspace::zero(q(), 2)),
    );

    out.push(truncated(2, q(), "t2_q"));
    let t3 = truncated(3, q(), "t3_q");
    let t3_alg = t3.algebra.clone();
    out.push(
        t3.with_subalgebra("e1,e2", span(&t3_alg, &[1, 2]))
            .with_subalgebra("e2", span(&t3_alg, &[2])),
    );

    let f7 = fp(7);
    let t3f7 = truncated(3, f7, "t3_f7");
    let phi = gdgen::power_diagonal(f7, 3, &f7.from_i64(2));
    out.push(t3f7.with_group("diag(1,2,4)", vec![phi]));

    let t4 = truncated(4, q(), "t4_q");
    let t4_alg = t4.algebra.clone();
    out.push(t4.with_subalgebra("e2,e3", span(&t4_alg, &[2, 3])));

    let t6 = truncated(6, q(), "t6_q");
    let t6_alg = t6.algebra.clone();
    out.push(t6.with_subalgebra("e1..e5", span(&t6_alg, &[1, 2, 3, 4, 5])));

    for p in [5, 7] {
        let w = gdgen::family_witt(p, fp(p)).expect("prime p");
        let g = Grading::coordinate_cyclic(&w);
        out.push(
            InstanceBundle::new(format!("w{p}_f{p}"), w.clone())
                .with_grading(&format!("Z{p}"), g)
                .with_subalgebra("e0", span(&w, &[0]))
                .with_subalgebra("N", whole(&w)),
        );
    }

    // The Witt table over a field of the wrong characteristic is not Novikov.
    let f11 = fp(11);
    let w11 = gdgen::family_witt(5, f11).expect("prime field");
    let phi = gdgen::power_diagonal(f11, 5, &f11.from_i64(3));
    out.push(
        InstanceBundle::new("w5_f11", w11.clone())
            .with_grading("Z5", Grading::coordinate_cyclic(&w11))
            .with_group("3^i", vec![phi]),
    );

    let one = q().one();
    let neg = Algebra::new(
        q(),
        vec!["a".into(), "b".into()],
        [(0, 1, 0, one.clone()), (1, 0, 1, one)],
    )
    .expect("valid table");
    out.push(InstanceBundle::new("neg2", neg.clone()).with_subalgebra("N", whole(&neg)));

    let (e2, l) = gdgen::family_example2_modp(5, 2).expect("p = 5, b = 2");
    let g = gdgen::example2_grading(&e2, 5, 2).expect("y-degree grading");
    out.push(
        InstanceBundle::new("e2_f5_b2", e2.clone())
            .with_grading("Z2", g)
            .with_subalgebra("x", l),
    );

    let t3 = gdgen::family_truncated(3, q()).expect("m = 3");
    let t4 = gdgen::family_truncated(4, q()).expect("m = 4");
    let sum = gdgen::direct_sum(&t3, &t4).expect("same field");
    let g = gdgen::direct_sum_grading(&[
        &Grading::coordinate_cyclic(&t3),
        &Grading::coordinate_cyclic(&t4),
    ])
    .expect("gradings over one field");
    out.push(
        InstanceBundle::new("t3+t4_q", sum.clone())
            .with_grading("Z3+Z4", g)
            .with_subalgebra("N", whole(&sum)),
    );

    let e1g = gdgen::example1_grading(&e1).expect("Z2 grading");
    let e1x2 = gdgen::direct_sum_all(&[&e1, &e1]).expect("same field");
    let g = gdgen::direct_sum_grading(&[&e1g, &e1g]).expect("gradings over one field");
    out.push(
        InstanceBundle::new("e1x2", e1x2.clone())
            .with_grading("Z2+Z2", g)
            .with_subalgebra("N", whole(&e1x2))
            .with_group("swap", vec![gdgen::summand_permutation(q(), 2, &[1, 0])]),
    );

    let e1x3 = gdgen::direct_sum_all(&[&e1, &e1, &e1]).expect("same field");
    out.push(
        InstanceBundle::new("e1x3", e1x3.clone())
            .with_subalgebra("N", whole(&e1x3))
            .with_group(
                "S3",
                vec![
                    gdgen::summand_permutation(q(), 2, &[1, 0, 2]),
                    gdgen::summand_permutation(q(), 2, &[1, 2, 0]),
                ],
            ),
    );

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shape() {
        let corpus = default_corpus();
        let novikov = corpus
            .iter()
            .filter(|b| gdgen::is_novikov(&b.algebra))
            .count();
        assert!(novikov >= 8);
        let pairs = corpus
            .iter()
            .filter(|b| gdgen::is_novikov(&b.algebra))
            .flat_map(|b| b.subalgebras.iter().map(move |(_, l)| (b, l)))
            .filter(|(b, l)| {
                crate::series::subalgebra_right_index(&b.algebra, l)
                    .ok()
                    .flatten()
                    .is_some()
            })
            .count();
        assert!(pairs >= 10, "{pairs} right nilpotent pairs");
        let ids: BTreeSet<_> = corpus.iter().map(|b| b.id.clone()).collect();
        assert_eq!(ids.len(), corpus.len());
    }

    #[test]
    fn statement_filter() {
        let corpus = vec![default_corpus().swap_remove(1)];
        let cfg = SuiteConfig {
            statements: Some([Statement::ShestakovZhang].into()),
            ..SuiteConfig::default()
        };
        let r = run_suite(&corpus, &cfg);
        assert_eq!(r.reports.len(), 1);
        assert_eq!(r.reports[0].instance, "e1");
    }
}
