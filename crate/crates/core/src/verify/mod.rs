//! Statement verifiers over concrete instances.
//!
//! A verifier asserts a conclusion only when every premise has been checked
//! to hold. When a premise fails, the conclusion is still evaluated where it
//! makes sense and recorded as informational; it never counts as a failure.

mod corpus;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{check_derived_identities, check_novikov, Algebra};
use crate::error::{Error, Result};
use crate::grading::{check_b_conditions, check_grading, require_valid, Grading, GroupElement};
use crate::linspace::{
    classify, product_unchecked, quotient_algebra, restrict_to_subalgebra, Subspace,
};
use crate::series::{
    a_brace_chain, chain, closure_unchecked, l_chain, right_powers_unchecked, subspace_chain,
    subspace_is_solvable, ChainKind,
};
use crate::symmetry::{
    commutator_subgroup, fixed_subalgebra, group_closure, is_solvable_group,
    verify_lemma9 as lemma9, AutomorphismGroup,
};

pub use corpus::{default_corpus, run_suite, InstanceBundle, SuiteConfig, SuiteReport};

/// Statement identifiers, in the order the statements build on each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statement {
    Lemma1,
    Lemma2,
    Corollary1,
    Theorem1,
    Lemma3,
    Corollary2,
    Lemma4,
    Lemma5,
    Corollary3,
    Lemma6,
    Lemma7,
    Corollary4,
    Lemma8,
    Proposition1,
    Proposition2,
    Theorem2,
    Lemma9,
    Corollary5,
    Theorem3,
    ShestakovZhang,
}

impl Statement {
    pub const ALL: [Statement; 20] = [
        Statement::Lemma1,
        Statement::Lemma2,
        Statement::Corollary1,
        Statement::Theorem1,
        Statement::Lemma3,
        Statement::Corollary2,
        Statement::Lemma4,
        Statement::Lemma5,
        Statement::Corollary3,
        Statement::Lemma6,
        Statement::Lemma7,
        Statement::Corollary4,
        Statement::Lemma8,
        Statement::Proposition1,
        Statement::Proposition2,
        Statement::Theorem2,
        Statement::Lemma9,
        Statement::Corollary5,
        Statement::Theorem3,
        Statement::ShestakovZhang,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Statement::Lemma1 => "lemma1",
            Statement::Lemma2 => "lemma2",
            Statement::Corollary1 => "corollary1",
            Statement::Theorem1 => "theorem1",
            Statement::Lemma3 => "lemma3",
            Statement::Corollary2 => "corollary2",
            Statement::Lemma4 => "lemma4",
            Statement::Lemma5 => "lemma5",
            Statement::Corollary3 => "corollary3",
            Statement::Lemma6 => "lemma6",
            Statement::Lemma7 => "lemma7",
            Statement::Corollary4 => "corollary4",
            Statement::Lemma8 => "lemma8",
            Statement::Proposition1 => "proposition1",
            Statement::Proposition2 => "proposition2",
            Statement::Theorem2 => "theorem2",
            Statement::Lemma9 => "lemma9",
            Statement::Corollary5 => "corollary5",
            Statement::Theorem3 => "theorem3",
            Statement::ShestakovZhang => "shestakov_zhang",
        }
    }

    pub fn from_id(s: &str) -> Option<Statement> {
        Statement::ALL.into_iter().find(|st| st.id() == s)
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Premises held and the conclusion held.
    Verified,
    /// Premises held and the conclusion failed.
    Violated,
    /// A premise failed; the conclusion was evaluated for the record.
    Informational,
    /// A premise failed and the conclusion is not defined or not evaluated.
    NotApplicable,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Verified => "verified",
            Outcome::Violated => "VIOLATED",
            Outcome::Informational => "informational",
            Outcome::NotApplicable => "n/a",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub statement: Statement,
    pub instance: String,
    pub premises_held: bool,
    /// `None` when the conclusion was not evaluated.
    pub conclusion_held: Option<bool>,
    pub outcome: Outcome,
    /// Values and witnesses, deterministic text.
    pub detail: String,
}

impl VerifyReport {
    pub fn new(
        statement: Statement,
        instance: &str,
        premises_held: bool,
        conclusion_held: Option<bool>,
        detail: impl Into<String>,
    ) -> Self {
        let outcome = match (premises_held, conclusion_held) {
            (true, Some(true)) => Outcome::Verified,
            (true, Some(false)) => Outcome::Violated,
            (false, Some(_)) => Outcome::Informational,
            (_, None) => Outcome::NotApplicable,
        };
        VerifyReport {
            statement,
            instance: instance.to_string(),
            premises_held,
            conclusion_held,
            outcome,
            detail: detail.into(),
        }
    }

    pub fn not_applicable(statement: Statement, instance: &str, reason: impl Into<String>) -> Self {
        Self::new(statement, instance, false, None, reason)
    }

    fn asserted(
        statement: Statement,
        instance: &str,
        held: bool,
        detail: impl Into<String>,
    ) -> Self {
        Self::new(statement, instance, true, Some(held), detail)
    }
}

fn require_novikov(alg: &Algebra) -> Result<()> {
    let r = check_novikov(alg);
    if r.passed() {
        Ok(())
    } else {
        Err(Error::NotNovikov(r.describe(alg)))
    }
}

fn cyclic_order(g: &Grading) -> Result<u64> {
    g.group().cyclic_order().ok_or_else(|| {
        Error::InvalidGrading(format!("group Z{:?} is not cyclic", g.group().factors()))
    })
}

fn deg(i: u64) -> GroupElement {
    GroupElement(vec![i])
}

/// Right-normed product `((V W_1) W_2) ... W_k`.
fn right_normed(alg: &Algebra, start: &Subspace, factors: &[&Subspace]) -> Subspace {
    let mut v = start.clone();
    for w in factors {
        if v.is_zero() {
            break;
        }
        v = product_unchecked(alg, &v, w);
    }
    v
}

/// `P_1 = V`, `P_n = sum_{i<n} P_i P_{n-i}` for `n <= count`.
fn powers(alg: &Algebra, v: &Subspace, count: usize) -> Vec<Subspace> {
    let mut out: Vec<Subspace> = vec![v.clone()];
    for n in 2..=count {
        let mut acc = Subspace::zero(alg.field(), alg.dim());
        for i in 1..n {
            acc = acc.sum_unchecked(&product_unchecked(alg, &out[i - 1], &out[n - i - 1]));
        }
        out.push(acc);
    }
    out
}

fn full(alg: &Algebra) -> Subspace {
    Subspace::full(alg.field(), alg.dim())
}

/// Word identities with words of length up to `max_t`.
pub fn verify_lemma1(instance: &str, alg: &Algebra, max_t: usize) -> VerifyReport {
    if let Err(e) = require_novikov(alg) {
        return VerifyReport::not_applicable(Statement::Lemma1, instance, e.to_string());
    }
    let report = check_derived_identities(alg, max_t).expect("Novikov checked above");
    let detail = match &report.violation {
        None => format!("{} basis tuples checked, t <= {max_t}", report.checked),
        Some(_) => report.describe(alg),
    };
    VerifyReport::asserted(Statement::Lemma1, instance, report.passed(), detail)
}

/// `L_s L_t ⊆ L_{s+t-1}` and `L_2^n ⊆ L_{n+1}` for `s, t, n <= window`.
pub fn verify_lemma2_cor1(
    instance: &str,
    alg: &Algebra,
    l: &Subspace,
    window: usize,
) -> Result<Vec<VerifyReport>> {
    require_novikov(alg)?;
    let chain = l_chain(alg, l, 2 * window)?;
    let mut bad = None;
    'outer: for s in 1..=window {
        for t in 1..=window {
            if !chain[s + t - 1].includes(&product_unchecked(alg, &chain[s], &chain[t])) {
                bad = Some((s, t));
                break 'outer;
            }
        }
    }
    let lemma2 = VerifyReport::asserted(
        Statement::Lemma2,
        instance,
        bad.is_none(),
        match bad {
            None => format!("L_k dims {:?}", dims(&chain[..=window + 1])),
            Some((s, t)) => format!("L_{s} L_{t} is not inside L_{}", s + t - 1),
        },
    );
    let p = powers(alg, &chain[2], window);
    let bad = (1..=window).find(|&n| !chain[n + 1].includes(&p[n - 1]));
    let cor1 = VerifyReport::asserted(
        Statement::Corollary1,
        instance,
        bad.is_none(),
        match bad {
            None => format!("powers of L_2 dims {:?}", dims(&p)),
            Some(n) => format!("L_2^{n} is not inside L_{}", n + 1),
        },
    );
    Ok(vec![lemma2, cor1])
}

fn dims(v: &[Subspace]) -> Vec<usize> {
    v.iter().map(Subspace::dim).collect()
}

/// If `L^[n] = 0` then the `(n-1)`-th power of `L_2 = <L^2>` is zero.
pub fn verify_theorem1(instance: &str, alg: &Algebra, l: &Subspace) -> Result<VerifyReport> {
    require_novikov(alg)?;
    if !classify(alg, l)?.subalgebra {
        return Err(Error::NotASubalgebra);
    }
    let n = subspace_chain(alg, l, ChainKind::RightPowers)?
        .index()
        .ok_or(Error::NotRightNilpotent)?;
    let l2 = closure_unchecked(alg, &product_unchecked(alg, l, l));
    let held = if n <= 2 {
        l2.is_zero()
    } else {
        powers(alg, &l2, n - 1)[n - 2].is_zero()
    };
    let l2_index = subspace_chain(alg, &l2, ChainKind::Powers)?.index();
    let detail = format!(
        "L^[{n}] = 0; dim L_2 = {}; nilpotency index of L_2 = {}",
        l2.dim(),
        l2_index.map_or("none".into(), |i| i.to_string())
    );
    Ok(VerifyReport::asserted(
        Statement::Theorem1,
        instance,
        held,
        detail,
    ))
}

/// `A^[r] N_{i_1} ... N_{i_k} ⊆ A^[r]` when the degrees sum to 0, and the
/// description of the components of `A^{r}`.
pub fn verify_lemma3_cor2(
    instance: &str,
    alg: &Algebra,
    g: &Grading,
    k_max: usize,
    r_max: usize,
) -> Result<Vec<VerifyReport>> {
    require_novikov(alg)?;
    require_valid(alg, g)?;
    let n = cyclic_order(g)?;
    let a = g.zero_component();
    let a_pows = right_powers_unchecked(alg, &a, r_max);
    let comps: Vec<Subspace> = (0..n).map(|i| g.component(&deg(i))).collect();

    let mut checked = 0u64;
    let mut bad = None;
    'outer: for (r, ar) in a_pows.iter().enumerate() {
        for k in 1..=k_max {
            for tuple in tuples(n, k) {
                if tuple.iter().sum::<u64>() % n != 0 {
                    continue;
                }
                checked += 1;
                let factors: Vec<&Subspace> = tuple.iter().map(|&i| &comps[i as usize]).collect();
                if !ar.includes(&right_normed(alg, ar, &factors)) {
                    bad = Some((r + 1, tuple));
                    break 'outer;
                }
            }
        }
    }
    let lemma3 = VerifyReport::asserted(
        Statement::Lemma3,
        instance,
        bad.is_none(),
        match bad {
            None => format!("{checked} products checked, k <= {k_max}, r <= {r_max}"),
            Some((r, t)) => format!("A^[{r}] N_{t:?} is not inside A^[{r}]"),
        },
    );

    let cor2 = match a_brace_chain(alg, g, r_max) {
        Err(Error::Corollary2Violation { r }) => VerifyReport::asserted(
            Statement::Corollary2,
            instance,
            false,
            format!("A^{{{r}}}_0 differs from A^[{r}]"),
        ),
        Err(e) => return Err(e),
        Ok(terms) => {
            let mut bad = None;
            for term in terms.iter().skip(1) {
                let words = graded_words(alg, &a_pows[term.r - 1], &comps);
                for i in 0..n {
                    let have = term
                        .components
                        .get(&deg(i))
                        .cloned()
                        .unwrap_or_else(|| Subspace::zero(alg.field(), alg.dim()));
                    if have != words[i as usize] {
                        bad = Some((term.r, i));
                    }
                }
                if bad.is_some() {
                    break;
                }
            }
            VerifyReport::asserted(
                Statement::Corollary2,
                instance,
                bad.is_none(),
                match bad {
                    None => format!(
                        "A^{{r}} dims {:?}",
                        terms.iter().map(|t| t.space.dim()).collect::<Vec<_>>()
                    ),
                    Some((r, i)) => format!("A^{{{r}}}_{i} differs from its word description"),
                },
            )
        }
    };
    Ok(vec![lemma3, cor2])
}

/// `W_i = sum A^[r] N_{i_1} ... N_{i_k}` over degree tuples whose integer sum
/// is `i < n`, computed as a fixpoint.
fn graded_words(alg: &Algebra, ar: &Subspace, comps: &[Subspace]) -> Vec<Subspace> {
    let n = comps.len();
    let mut w: Vec<Subspace> = (0..n)
        .map(|i| {
            if i == 0 {
                ar.clone()
            } else {
                Subspace::zero(alg.field(), alg.dim())
            }
        })
        .collect();
    loop {
        let mut changed = false;
        for s in 0..n {
            for j in 0..n - s {
                let add = product_unchecked(alg, &w[s], &comps[j]);
                if !w[s + j].includes(&add) {
                    w[s + j] = w[s + j].sum_unchecked(&add);
                    changed = true;
                }
            }
        }
        if !changed {
            return w;
        }
    }
}

fn tuples(n: u64, k: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t: Vec<u64>| {
                (0..n).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// The quotient `B = A^{1}/A^{2}` with its induced grading.
#[derive(Debug, Clone)]
pub struct QuotientB {
    pub algebra: Algebra,
    pub grading: Grading,
    /// Image of `A = N_0`.
    pub image_of_a: Subspace,
}

pub fn quotient_b(alg: &Algebra, g: &Grading) -> Result<QuotientB> {
    let terms = a_brace_chain(alg, g, 2)?;
    let (a1, a2) = (&terms[1], &terms[2]);
    let (sub, _) = restrict_to_subalgebra(alg, &a1.space)?;
    let to_sub = |v: &Subspace| -> Result<Subspace> {
        let rows = v
            .basis_rows()
            .iter()
            .map(|r| a1.space.coordinates(r).ok_or(Error::NotASubalgebra))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::from_rows_unchecked(alg.field(), sub.dim(), rows))
    };
    let (b, proj) = quotient_algebra(&sub, &to_sub(&a2.space)?)?;
    let mut comps = Vec::new();
    for (d, c) in &a1.components {
        comps.push((d.clone(), to_sub(c)?.image(proj.matrix())));
    }
    let grading = Grading::new(g.group().clone(), alg.field(), b.dim(), comps)?;
    let image_of_a = to_sub(&g.zero_component())?.image(proj.matrix());
    Ok(QuotientB {
        algebra: b,
        grading,
        image_of_a,
    })
}

/// `B_0 = A/A^2`, `B B_0 = 0`, and opposite-degree Jordan products vanish in `B`.
pub fn verify_lemma4(instance: &str, alg: &Algebra, g: &Grading) -> Result<VerifyReport> {
    require_novikov(alg)?;
    require_valid(alg, g)?;
    cyclic_order(g)?;
    let a = g.zero_component();
    let a_sq = product_unchecked(alg, &a, &a);
    let q = match quotient_b(alg, g) {
        Ok(q) => q,
        Err(Error::NotAnIdeal) => {
            return Ok(VerifyReport::asserted(
                Statement::Lemma4,
                instance,
                false,
                "A^{2} is not an ideal of A^{1}",
            ))
        }
        Err(e) => return Err(e),
    };
    let b = &q.algebra;
    let graded = check_grading(b, &q.grading, false)?.passed();
    let b0 = q.grading.zero_component();
    let part_i = b0 == q.image_of_a && b0.dim() == a.dim() - a_sq.dim();
    let part_ii = product_unchecked(b, &full(b), &b0).is_zero();
    let cond = check_b_conditions(b, &q.grading);
    let part_iii = matches!(&cond, Ok(c) if c.opposite_jordan_zero);
    let held = graded && part_i && part_ii && part_iii;
    let detail = format!(
        "dim B = {}, dim B_0 = {}; induced grading {}; (i) {} (ii) {} (iii) {}",
        b.dim(),
        b0.dim(),
        ok(graded),
        ok(part_i),
        ok(part_ii),
        ok(part_iii)
    );
    Ok(VerifyReport::asserted(
        Statement::Lemma4,
        instance,
        held,
        detail,
    ))
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "fails"
    }
}

/// `N V^[r] V ⊆ <V^[r]> + N V^[r+1]` and the `(r+1)`-fold version, `r <= r_max`.
pub fn verify_lemma5_cor3(
    instance: &str,
    alg: &Algebra,
    v: &Subspace,
    r_max: usize,
) -> Result<Vec<VerifyReport>> {
    require_novikov(alg)?;
    if v.ambient_dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: v.ambient_dim(),
        });
    }
    let n = full(alg);
    let vp = right_powers_unchecked(alg, v, r_max + 1);
    let mut bad5 = None;
    let mut bad3 = None;
    for r in 1..=r_max {
        let rhs =
            closure_unchecked(alg, &vp[r - 1]).sum_unchecked(&product_unchecked(alg, &n, &vp[r]));
        let lhs5 = right_normed(alg, &product_unchecked(alg, &n, &vp[r - 1]), &[v]);
        if bad5.is_none() && !rhs.includes(&lhs5) {
            bad5 = Some(r);
        }
        let vs: Vec<&Subspace> = std::iter::repeat_n(v, r + 1).collect();
        let lhs3 = right_normed(alg, &n, &vs);
        if bad3.is_none() && !rhs.includes(&lhs3) {
            bad3 = Some(r);
        }
    }
    let report = |st, bad: Option<usize>| {
        VerifyReport::asserted(
            st,
            instance,
            bad.is_none(),
            match bad {
                None => format!("dim V = {}, r <= {r_max}", v.dim()),
                Some(r) => format!("inclusion fails at r = {r}"),
            },
        )
    };
    Ok(vec![
        report(Statement::Lemma5, bad5),
        report(Statement::Corollary3, bad3),
    ])
}

/// Least `m` with `N^[m] ⊆ A^{1}`; reported, with existence asserted.
pub fn verify_lemma6(instance: &str, alg: &Algebra, g: &Grading) -> Result<VerifyReport> {
    require_novikov(alg)?;
    require_valid(alg, g)?;
    let a = g.zero_component();
    let premise = subspace_chain(alg, &a, ChainKind::RightPowers)?
        .index()
        .is_some();
    let a1 = closure_unchecked(alg, &a);
    // The right-power chain of N is stable after at most dim + 1 terms.
    let rp = chain(alg, ChainKind::RightPowers);
    let m = rp.chain.iter().position(|t| a1.includes(t)).map(|p| p + 1);
    let detail = match m {
        Some(m) => format!("m = {m}; dim A^{{1}} = {}", a1.dim()),
        None => format!("no right power of N lies in A^{{1}} (dim {})", a1.dim()),
    };
    Ok(VerifyReport::new(
        Statement::Lemma6,
        instance,
        premise,
        Some(m.is_some()),
        detail,
    ))
}

pub const LEMMA7_8_COR4: [Statement; 3] =
    [Statement::Lemma7, Statement::Corollary4, Statement::Lemma8];

/// Under conditions (a), (b): `xu = -k ux`, `N_i^[n] N_{n-i} = 0` and
/// `N N_i ... N_i = 0` (`2n` factors). The last two need `char ∤ n`.
pub fn verify_lemma7_8_cor4(
    instance: &str,
    alg: &Algebra,
    g: &Grading,
    k_max: usize,
) -> Result<Vec<VerifyReport>> {
    require_novikov(alg)?;
    let n = cyclic_order(g)?;
    let cond = check_b_conditions(alg, g)?;
    if !cond.na_zero {
        return Err(Error::ConditionsABViolated('a'));
    }
    if !cond.opposite_jordan_zero {
        return Err(Error::ConditionsABViolated('b'));
    }
    let field = alg.field();
    let comps: Vec<Subspace> = (0..n).map(|i| g.component(&deg(i))).collect();
    let neg = |i: u64| ((n - i) % n) as usize;
    let k_top = k_max.max(n as usize);

    let mut checked = 0u64;
    let mut bad7 = None;
    'outer: for i in 0..n {
        let pows = right_powers_unchecked(alg, &comps[i as usize], k_top);
        for (k, nk) in pows.iter().enumerate() {
            let k = k + 1;
            let minus_k = field.from_i64(-(k as i64));
            for x in comps[neg(i)].basis() {
                for u in nk.basis() {
                    checked += 1;
                    let lhs = alg.mul(&x, &u);
                    let rhs = alg.mul(&u, &x).scale(&minus_k);
                    if lhs != rhs {
                        bad7 = Some((i, k, alg.format(&x), alg.format(&u)));
                        break 'outer;
                    }
                }
            }
        }
    }
    let lemma7 = VerifyReport::asserted(
        Statement::Lemma7,
        instance,
        bad7.is_none(),
        match &bad7 {
            None => format!("{checked} pairs checked, k <= {k_top}"),
            Some((i, k, x, u)) => format!("i = {i}, k = {k}: x = {x}, u = {u}"),
        },
    );

    let premise = !field.char_divides(n);
    let char_note = if premise {
        String::new()
    } else {
        format!("characteristic {} divides {n}; ", field.characteristic())
    };
    let bad4 = (0..n).find_map(|i| {
        let top = right_powers_unchecked(alg, &comps[i as usize], n as usize).pop()?;
        let p = product_unchecked(alg, &top, &comps[neg(i)]);
        (!p.is_zero()).then_some((i, top, p))
    });
    let cor4 = VerifyReport::new(
        Statement::Corollary4,
        instance,
        premise,
        Some(bad4.is_none()),
        match &bad4 {
            None => format!("{char_note}N_i^[{n}] N_(n-i) = 0 for all i"),
            Some((i, top, p)) => format!(
                "{char_note}N_{i}^[{n}] N_{} != 0: N_{i}^[{n}] = {}, product = {}",
                neg(*i),
                render_span(alg, top),
                render_span(alg, p)
            ),
        },
    );
    let n_full = full(alg);
    let bad8 = (0..n).find(|&i| {
        let factors: Vec<&Subspace> =
            std::iter::repeat_n(&comps[i as usize], 2 * n as usize).collect();
        !right_normed(alg, &n_full, &factors).is_zero()
    });
    let lemma8 = VerifyReport::new(
        Statement::Lemma8,
        instance,
        premise,
        Some(bad8.is_none()),
        match bad8 {
            None => format!("{char_note}N N_i...N_i ({} factors) = 0 for all i", 2 * n),
            Some(i) => format!("{char_note}N N_{i}...N_{i} ({} factors) != 0", 2 * n),
        },
    );
    Ok(vec![lemma7, cor4, lemma8])
}

fn render_span(alg: &Algebra, v: &Subspace) -> String {
    let parts: Vec<String> = v.basis().iter().map(|x| alg.format(x)).collect();
    format!("span{{{}}}", parts.join(", "))
}

pub const PROP1_PROP2_THM2: [Statement; 3] = [
    Statement::Proposition1,
    Statement::Proposition2,
    Statement::Theorem2,
];

/// Right nilpotency under (a), (b); solvability from a solvable 0-component.
/// Propositions need a cyclic group; the theorem takes any finite abelian group.
pub fn verify_prop1_prop2_thm2(
    instance: &str,
    alg: &Algebra,
    g: &Grading,
) -> Result<Vec<VerifyReport>> {
    require_novikov(alg)?;
    require_valid(alg, g)?;
    let field = alg.field();
    let order = g.group().order();
    let a = g.zero_component();
    let a_solvable = subspace_is_solvable(alg, &a)?;
    let rn = chain(alg, ChainKind::RightPowers).index();
    let solvable = chain(alg, ChainKind::DerivedPowers).index();
    let fmt_idx = |i: Option<usize>| i.map_or("no".to_string(), |i| format!("yes (index {i})"));
    let char_ok = !field.char_divides(order);
    let char_note = if char_ok {
        String::new()
    } else {
        format!(
            "characteristic {} divides {order}; ",
            field.characteristic()
        )
    };

    let mut out = Vec::new();
    match g.group().cyclic_order() {
        Some(_) => {
            let cond = check_b_conditions(alg, g)?;
            let p1_premise = cond.both() && char_ok;
            let mut note = char_note.clone();
            if !cond.na_zero {
                note.push_str("condition (a) fails; ");
            }
            if !cond.opposite_jordan_zero {
                note.push_str("condition (b) fails; ");
            }
            out.push(VerifyReport::new(
                Statement::Proposition1,
                instance,
                p1_premise,
                Some(rn.is_some()),
                format!("{note}right nilpotent: {}", fmt_idx(rn)),
            ));
            let mut note = char_note.clone();
            if !a_solvable {
                note.push_str("N_0 not solvable; ");
            }
            out.push(VerifyReport::new(
                Statement::Proposition2,
                instance,
                a_solvable && char_ok,
                Some(solvable.is_some()),
                format!("{note}solvable: {}", fmt_idx(solvable.map(|i| i - 1))),
            ));
        }
        None => {
            for st in [Statement::Proposition1, Statement::Proposition2] {
                out.push(VerifyReport::not_applicable(
                    st,
                    instance,
                    "grading group is not cyclic",
                ));
            }
        }
    }
    let mut note = char_note;
    note.push_str(&format!(
        "N_0 solvable: {}; ",
        if a_solvable { "yes" } else { "no" }
    ));
    out.push(VerifyReport::new(
        Statement::Theorem2,
        instance,
        a_solvable && char_ok,
        Some(solvable.is_some()),
        format!("{note}N solvable: {}", fmt_idx(solvable.map(|i| i - 1))),
    ));
    Ok(out)
}

pub const COR5_THM3: [Statement; 2] = [Statement::Corollary5, Statement::Theorem3];

/// Solvable invariants force a solvable algebra, for abelian (Corollary 5)
/// and solvable (Theorem 3) groups of order prime to the characteristic.
pub fn verify_cor5_thm3(
    instance: &str,
    alg: &Algebra,
    group: &AutomorphismGroup,
) -> Result<Vec<VerifyReport>> {
    require_novikov(alg)?;
    let field = alg.field();
    let order = group.order() as u64;
    let fixed = fixed_subalgebra(group);
    if !classify(alg, &fixed)?.subalgebra {
        return Err(Error::NotASubalgebra);
    }
    let fixed_solvable = subspace_is_solvable(alg, &fixed)?;
    let solvable = chain(alg, ChainKind::DerivedPowers).index().is_some();
    let char_ok = !field.char_divides(order);
    let abelian = group.is_abelian();
    let solvable_group = is_solvable_group(group);
    let base = format!(
        "|G| = {order}, dim N^G = {}, N^G solvable: {}, N solvable: {}",
        fixed.dim(),
        yes(fixed_solvable),
        yes(solvable)
    );
    let note = |group_ok: bool, what: &str| {
        let mut parts = Vec::new();
        if !group_ok {
            parts.push(format!("G is not {what}"));
        }
        if !char_ok {
            parts.push(format!(
                "characteristic {} divides |G|",
                field.characteristic()
            ));
        }
        if !fixed_solvable {
            parts.push("N^G not solvable".to_string());
        }
        parts.push(base.clone());
        parts.join("; ")
    };
    Ok(vec![
        VerifyReport::new(
            Statement::Corollary5,
            instance,
            abelian && char_ok && fixed_solvable,
            Some(solvable),
            note(abelian, "abelian"),
        ),
        VerifyReport::new(
            Statement::Theorem3,
            instance,
            solvable_group && char_ok && fixed_solvable,
            Some(solvable),
            note(solvable_group, "solvable"),
        ),
    ])
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// `N^H` is `G`-invariant and `(N^H)^{G/H} = N^G` for normal `H`.
pub fn verify_lemma9(
    instance: &str,
    alg: &Algebra,
    g: &AutomorphismGroup,
    h: &AutomorphismGroup,
) -> Result<VerifyReport> {
    require_novikov(alg)?;
    let r = lemma9(alg, g, h)?;
    let detail = format!(
        "|G| = {}, |H| = {}, dim N^H = {}, dim N^G = {}; invariant {}, quotient action {}, fixed spaces {}",
        r.order_g,
        r.order_h,
        r.dim_fixed_h,
        r.dim_fixed_g,
        ok(r.invariant),
        if r.quotient_well_defined { "well defined" } else { "ill defined" },
        if r.fixed_equal { "equal" } else { "differ" }
    );
    Ok(VerifyReport::asserted(
        Statement::Lemma9,
        instance,
        r.passed(),
        detail,
    ))
}

/// Normal subgroups used for the Lemma 9 check: `G'`, the trivial group and `G`.
pub fn lemma9_subgroups(
    alg: &Algebra,
    g: &AutomorphismGroup,
) -> Result<Vec<(String, AutomorphismGroup)>> {
    let mut out = vec![
        ("derived".to_string(), commutator_subgroup(g)),
        ("trivial".to_string(), group_closure(alg, &[], 1)?),
        ("whole".to_string(), g.clone()),
    ];
    let mut seen = Vec::new();
    out.retain(|(_, h)| {
        let key = h.elements().to_vec();
        if seen.contains(&key) {
            false
        } else {
            seen.push(key);
            true
        }
    });
    Ok(out)
}

/// Solvable, `N^2` nilpotent and right nilpotent agree.
pub fn verify_shestakov_zhang(instance: &str, alg: &Algebra) -> Result<VerifyReport> {
    require_novikov(alg)?;
    let solvable = chain(alg, ChainKind::DerivedPowers).index().is_some();
    let n_sq = product_unchecked(alg, &full(alg), &full(alg));
    let sq_nilpotent = subspace_chain(alg, &n_sq, ChainKind::Powers)?
        .index()
        .is_some();
    let right_nilpotent = chain(alg, ChainKind::RightPowers).index().is_some();
    let held = solvable == sq_nilpotent && sq_nilpotent == right_nilpotent;
    Ok(VerifyReport::asserted(
        Statement::ShestakovZhang,
        instance,
        held,
        format!(
            "solvable: {}, N^2 nilpotent: {}, right nilpotent: {}",
            yes(solvable),
            yes(sq_nilpotent),
            yes(right_nilpotent)
        ),
    ))
}
