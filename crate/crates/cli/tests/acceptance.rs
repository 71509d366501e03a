//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! The lines go straight to the stderr handle, which the test harness does
//! not capture, so they show up in a plain `cargo test` run.

use std::io::Write;
use std::path::Path;
use std::process::Command;

use novikov_core::linspace::{classify, SubspaceKind};
use novikov_core::series::{self, ChainKind};
use novikov_core::symmetry::{eigenspace_grading, fixed_subalgebra, group_closure};
use novikov_core::verify::{
    self, default_corpus, run_suite, Outcome, Statement, SuiteConfig, SuiteReport,
};
use novikov_core::{gdgen, Algebra, Field, Grading, GroupElement, Subspace};
use serde_json::Value;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn novikov(args: &[&str], dir: &Path) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_novikov"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

fn suite(statements: &[Statement]) -> SuiteReport {
    let cfg = SuiteConfig {
        statements: Some(statements.iter().copied().collect()),
        ..SuiteConfig::default()
    };
    run_suite(&default_corpus(), &cfg)
}

fn record<'a>(
    r: &'a SuiteReport,
    st: Statement,
    instance: &str,
) -> Result<&'a verify::VerifyReport, String> {
    r.reports
        .iter()
        .find(|x| x.statement == st && x.instance == instance)
        .ok_or_else(|| format!("no {st} record for {instance}"))
}

fn span(alg: &Algebra, idx: &[usize]) -> Subspace {
    let v: Vec<_> = idx.iter().map(|&i| alg.basis_element(i)).collect();
    Subspace::span(alg.field(), alg.dim(), &v).unwrap()
}

fn criterion1(dir: &Path) -> Check {
    let (code, _) = novikov(&["generate", "--family", "example1", "-o", "e1.json"], dir);
    ensure(code == 0, "generate failed")?;
    let (code, out) = novikov(&["analyze", "e1.json", "--json"], dir);
    ensure(code == 0, format!("analyze exit {code}"))?;
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    ensure(
        v["right_nilpotent_index"] == 3,
        format!("right index {}", v["right_nilpotent_index"]),
    )?;
    ensure(
        v["derived_length"] == 2,
        format!("derived length {}", v["derived_length"]),
    )?;
    ensure(v["nilpotency_index"].is_null(), "reported nilpotent")?;
    let powers = &v["chains"][0];
    ensure(
        powers["kind"] == "powers",
        "first chain is not the power chain",
    )?;
    ensure(
        powers["verdict"]["stabilized"]["dim"] == 1,
        format!("power chain verdict {}", powers["verdict"]),
    )?;
    Ok("right index 3, derived length 2, powers stabilize at dim 1".into())
}

fn criterion2() -> Check {
    let (alg, l) = gdgen::family_example2_modp(5, 2).map_err(|e| e.to_string())?;
    let idx = |name: &str| alg.basis_names().iter().position(|n| n == name).unwrap();
    let x = alg.basis_element(idx("x"));
    let y = alg.basis_element(idx("y"));
    ensure(alg.multiply(&x, &x).unwrap() == x, "x*x != x")?;
    ensure(l == span(&alg, &[idx("x")]), "L is not span{x}")?;
    let closure = series::right_ideal_closure(&alg, &l).unwrap();
    ensure(!closure.contains(&y).unwrap(), "y lies in the closure")?;
    let c = classify(&alg, &closure).unwrap();
    ensure(
        c.summary == SubspaceKind::RightIdeal && !c.left_ideal,
        format!("{c:?}"),
    )?;
    Ok(format!(
        "closure of span{{x}} has dim {}, excludes y, right ideal only",
        closure.dim()
    ))
}

fn criterion3() -> Check {
    let r = suite(&[Statement::Theorem1]);
    let verified = r.count(Outcome::Verified);
    ensure(r.count(Outcome::Violated) == 0, "violations")?;
    ensure(verified >= 10, format!("only {verified} (N, L) pairs"))?;
    // Independent oracle: nilpotency index of <L^2> from the power chain.
    let mut pairs = 0;
    for b in default_corpus()
        .iter()
        .filter(|b| gdgen::is_novikov(&b.algebra))
    {
        for (name, l) in &b.subalgebras {
            let alg = &b.algebra;
            let Some(n) = series::subalgebra_right_index(alg, l).unwrap() else {
                continue;
            };
            let l_sq = series::right_ideal_closure(
                alg,
                &novikov_core::linspace::product_space(alg, l, l).unwrap(),
            )
            .unwrap();
            let idx = series::subspace_chain(alg, &l_sq, ChainKind::Powers)
                .unwrap()
                .index();
            let bound = n.saturating_sub(1).max(1);
            ensure(
                idx.is_some_and(|i| i <= bound),
                format!("{} L={name}: index {idx:?}, n = {n}", b.id),
            )?;
            pairs += 1;
        }
    }
    ensure(
        pairs == verified,
        format!("oracle saw {pairs} pairs, suite verified {verified}"),
    )?;
    Ok(format!("{verified} pairs, zero failures"))
}

fn criterion4() -> Check {
    let r = suite(&[Statement::Lemma1]);
    ensure(r.count(Outcome::Violated) == 0, "violations")?;
    let corpus = default_corpus();
    let novikov: Vec<_> = corpus
        .iter()
        .filter(|b| gdgen::is_novikov(&b.algebra))
        .collect();
    ensure(novikov.len() >= 8, "fewer than 8 Novikov instances")?;
    for b in &novikov {
        let rec = record(&r, Statement::Lemma1, &b.id)?;
        ensure(
            rec.outcome == Outcome::Verified,
            format!("{}: {}", b.id, rec.detail),
        )?;
        ensure(
            rec.detail.contains("t <= 4"),
            format!("{}: {}", b.id, rec.detail),
        )?;
    }
    let max_dim = novikov.iter().map(|b| b.algebra.dim()).max().unwrap_or(0);
    Ok(format!(
        "{} instances up to dim {max_dim}, t <= 4",
        novikov.len()
    ))
}

fn criterion5() -> Check {
    let f5 = Field::prime(5).unwrap();
    let w = gdgen::family_witt(5, f5).unwrap();
    let e = |i| w.basis_element(i);
    let x = e(4);
    let u = w.multiply(&e(1), &e(1)).unwrap();
    let xu = w.multiply(&x, &u).unwrap();
    let ux = w.multiply(&u, &x).unwrap();
    ensure(
        xu == e(1).scale(&f5.from_i64(2)),
        format!("xu = {}", w.format(&xu)),
    )?;
    ensure(
        ux == e(1).scale(&f5.from_i64(4)),
        format!("ux = {}", w.format(&ux)),
    )?;
    ensure(xu == ux.scale(&f5.from_i64(-2)), "xu != -2 ux")?;
    let g = Grading::coordinate_cyclic(&w);
    let recs = verify::verify_lemma7_8_cor4("w5", &w, &g, 5).map_err(|e| e.to_string())?;
    let l7 = recs
        .iter()
        .find(|r| r.statement == Statement::Lemma7)
        .unwrap();
    ensure(l7.outcome == Outcome::Verified, l7.detail.clone())?;
    Ok(format!("xu = 2e1, ux = 4e1; sweep: {}", l7.detail))
}

fn criterion6(dir: &Path) -> Check {
    let (code, _) = novikov(&["generate", "--family", "witt:5", "-o", "w5.json"], dir);
    ensure(code == 0, "generate failed")?;
    let (code, out) = novikov(
        &[
            "verify",
            "w5.json",
            "--grading",
            "w5.grading.json",
            "--suite",
            "all",
            "--json",
        ],
        dir,
    );
    ensure(code == 0, format!("verify exit {code}"))?;
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    ensure(v["summary"]["violated"] == 0, "asserted failures on W5")?;
    let find = |st: &str| {
        v["reports"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["statement"] == st)
            .cloned()
            .ok_or_else(|| format!("no {st} record"))
    };
    for st in ["corollary4", "theorem2"] {
        let r = find(st)?;
        ensure(
            r["premises_held"] == false
                && r["conclusion_held"] == false
                && r["outcome"] == "informational",
            format!("{st}: {r}"),
        )?;
    }
    ensure(
        find("corollary4")?["detail"]
            .as_str()
            .unwrap()
            .contains("N_1^[5] N_4 != 0"),
        "corollary 4 witness missing",
    )?;
    ensure(
        find("theorem2")?["detail"]
            .as_str()
            .unwrap()
            .contains("N_0 solvable: yes; N solvable: no"),
        "theorem 2 detail",
    )?;

    let r = suite(&[
        Statement::Corollary4,
        Statement::Theorem2,
        Statement::Proposition1,
        Statement::Proposition2,
    ]);
    for st in [Statement::Corollary4, Statement::Theorem2] {
        let rec = record(&r, st, "w5_f11 g=Z5")?;
        ensure(
            rec.outcome == Outcome::NotApplicable,
            format!("w5_f11 {st}: {:?}", rec.outcome),
        )?;
    }
    for inst in ["t3_q g=Z3", "t3_f7 g=Z3", "t4_q g=Z4"] {
        for st in [
            Statement::Proposition1,
            Statement::Proposition2,
            Statement::Theorem2,
        ] {
            let rec = record(&r, st, inst)?;
            ensure(
                rec.outcome == Outcome::Verified,
                format!("{inst} {st}: {}", rec.detail),
            )?;
        }
    }
    Ok(
        "W5/F5 records both conclusions false under failed premises; W5/F11 n/a; T3, T4 asserted"
            .into(),
    )
}

fn criterion7() -> Check {
    let r = suite(&[Statement::ShestakovZhang]);
    let mut n = 0;
    for b in default_corpus()
        .iter()
        .filter(|b| gdgen::is_novikov(&b.algebra))
    {
        let rec = record(&r, Statement::ShestakovZhang, &b.id)?;
        ensure(
            rec.outcome == Outcome::Verified,
            format!("{}: {}", b.id, rec.detail),
        )?;
        // Recompute the three booleans directly.
        let alg = &b.algebra;
        let full = Subspace::full(alg.field(), alg.dim());
        let sq = novikov_core::linspace::product_space(alg, &full, &full).unwrap();
        let flags = [
            series::is_solvable(alg),
            series::subspace_chain(alg, &sq, ChainKind::Powers)
                .unwrap()
                .index()
                .is_some(),
            series::is_right_nilpotent(alg),
        ];
        ensure(
            flags.iter().all(|&f| f == flags[0]),
            format!("{}: {flags:?}", b.id),
        )?;
        let expect = match b.id.as_str() {
            "e1" | "t3_q" | "t4_q" => Some(true),
            "w5_f5" => Some(false),
            _ => None,
        };
        if let Some(e) = expect {
            ensure(flags[0] == e, format!("{}: expected {e}", b.id))?;
        }
        n += 1;
    }
    Ok(format!("{n} instances agree; both polarities present"))
}

fn criterion8() -> Check {
    let f7 = Field::prime(7).unwrap();
    let t3 = gdgen::family_truncated(3, f7).unwrap();
    let phi = gdgen::power_diagonal(f7, 3, &f7.from_i64(2));
    let g = eigenspace_grading(&t3, &phi, 3).map_err(|e| e.to_string())?;
    for i in 0..3u64 {
        let comp = g.component(&GroupElement(vec![i]));
        ensure(
            comp == span(&t3, &[i as usize]),
            format!("N_{i} has dim {}", comp.dim()),
        )?;
    }
    let group = group_closure(&t3, &[phi], 100).unwrap();
    ensure(
        g.zero_component() == fixed_subalgebra(&group),
        "N_0 differs from the fixed subalgebra",
    )?;
    let recs = verify::verify_cor5_thm3("t3_f7", &t3, &group).map_err(|e| e.to_string())?;
    let c5 = recs
        .iter()
        .find(|r| r.statement == Statement::Corollary5)
        .unwrap();
    ensure(c5.outcome == Outcome::Verified, c5.detail.clone())?;
    Ok("N_i = span{e_i}, N_0 = N^G, corollary 5 asserted".into())
}

fn criterion9() -> Check {
    let r = suite(&[Statement::Theorem3, Statement::Lemma9]);
    let t3 = record(&r, Statement::Theorem3, "e1x3 G=S3")?;
    ensure(t3.outcome == Outcome::Verified, t3.detail.clone())?;
    ensure(t3.detail.starts_with("|G| = 6"), t3.detail.clone())?;
    ensure(
        t3.detail.contains("N^G solvable: yes, N solvable: yes"),
        t3.detail.clone(),
    )?;
    let l9 = record(&r, Statement::Lemma9, "e1x3 G=S3 H=derived")?;
    ensure(l9.outcome == Outcome::Verified, l9.detail.clone())?;
    ensure(l9.detail.contains("|H| = 3"), l9.detail.clone())?;
    ensure(
        l9.detail.contains("invariant ok") && l9.detail.contains("fixed spaces equal"),
        l9.detail.clone(),
    )?;
    Ok("S3 on E1^3: theorem 3 asserted; lemma 9 holds for the order-3 subgroup".into())
}

fn criterion10(dir: &Path) -> Check {
    let (c1, a) = novikov(&["suite", "--json"], dir);
    let (c2, b) = novikov(&["suite", "--json"], dir);
    ensure(c1 == 0 && c2 == 0, format!("exit codes {c1}, {c2}"))?;
    ensure(a == b, "outputs differ")?;
    ensure(!a.is_empty(), "empty output")?;
    Ok(format!("{} bytes, identical", a.len()))
}

#[test]
fn acceptance() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let results: Vec<(u32, Check)> = vec![
        (1, criterion1(dir)),
        (2, criterion2()),
        (3, criterion3()),
        (4, criterion4()),
        (5, criterion5()),
        (6, criterion6(dir)),
        (7, criterion7()),
        (8, criterion8()),
        (9, criterion9()),
        (10, criterion10(dir)),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr().lock();
    for (n, r) in &results {
        let line = match r {
            Ok(msg) => format!("criterion {n:>2}: PASS  {msg}"),
            Err(msg) => {
                failed.push(*n);
                format!("criterion {n:>2}: FAIL  {msg}")
            }
        };
        writeln!(err, "{line}").unwrap();
    }
    drop(err);
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
