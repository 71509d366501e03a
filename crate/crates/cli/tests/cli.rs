use std::fs;
use std::path::Path;
use std::process::Command;

use novikov_core::io::{algebra_from_json, grading_from_json, subspace_from_json};
use novikov_core::{gdgen, Field, Grading};
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn novikov(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_novikov"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("{e}: {}", run.stdout))
}

const NEG: &str = r#"{"field": "Q", "dim": 2, "basis": ["a", "b"],
  "products": [{"i": 0, "j": 1, "k": 0, "c": "1"}, {"i": 1, "j": 0, "k": 1, "c": "1"}]}"#;

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(
        novikov(d, &["generate", "--family", "example1", "-o", "e1.json"]).code,
        0
    );
    let ok = novikov(d, &["check", "e1.json", "--max-t", "4"]);
    assert_eq!(ok.code, 0, "{}", ok.stderr);
    assert!(ok.stdout.starts_with("novikov: yes"));

    fs::write(d.join("neg.json"), NEG).unwrap();
    let bad = novikov(d, &["check", "neg.json", "--json"]);
    assert_eq!(bad.code, 1);
    assert_eq!(json(&bad)["novikov"], false);

    let missing = novikov(d, &["check", "nope.json"]);
    assert_eq!(missing.code, 2);
    assert!(missing.stderr.contains("nope.json"));
}

#[test]
fn parse_errors_point_at_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let k_out = r#"{"field": "Q", "dim": 2, "products": [{"i": 0, "j": 1, "k": 2, "c": "1"}]}"#;
    fs::write(d.join("k.json"), k_out).unwrap();
    let r = novikov(d, &["analyze", "k.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("products[0].k"), "{}", r.stderr);

    let div0 =
        r#"{"field": {"Fp": 7}, "dim": 1, "products": [{"i": 0, "j": 0, "k": 0, "c": "1/0"}]}"#;
    fs::write(d.join("z.json"), div0).unwrap();
    let r = novikov(d, &["analyze", "z.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("products[0].c"), "{}", r.stderr);

    let unknown = r#"{"field": "Q", "dim": 1, "products": [], "extra": 1}"#;
    fs::write(d.join("u.json"), unknown).unwrap();
    assert_eq!(novikov(d, &["analyze", "u.json"]).code, 2);
}

#[test]
fn generated_files_reparse_to_the_construction() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let f7 = Field::prime(7).unwrap();
    let cases = [
        ("example1", None, gdgen::family_example1(Field::Rationals)),
        (
            "truncated:4",
            None,
            gdgen::family_truncated(4, Field::Rationals).unwrap(),
        ),
        (
            "truncated:3",
            Some("Fp:7"),
            gdgen::family_truncated(3, f7).unwrap(),
        ),
        (
            "witt:5",
            None,
            gdgen::family_witt(5, Field::prime(5).unwrap()).unwrap(),
        ),
        (
            "witt:5",
            Some("Fp:11"),
            gdgen::family_witt(5, Field::prime(11).unwrap()).unwrap(),
        ),
        (
            "example2modp:5,2",
            None,
            gdgen::family_example2_modp(5, 2).unwrap().0,
        ),
    ];
    for (n, (family, field, expected)) in cases.into_iter().enumerate() {
        let out = format!("f{n}.json");
        let mut args = vec!["generate", "--family", family, "-o", &out];
        if let Some(f) = field {
            args.extend(["--field", f]);
        }
        let r = novikov(d, &args);
        assert_eq!(r.code, 0, "{family}: {}", r.stderr);
        let alg = algebra_from_json(&fs::read_to_string(d.join(&out)).unwrap()).unwrap();
        assert_eq!(alg, expected, "{family}");
        let g = grading_from_json(
            &fs::read_to_string(d.join(format!("f{n}.grading.json"))).unwrap(),
            alg.field(),
            alg.dim(),
        )
        .unwrap();
        assert!(novikov_core::grading::check_grading(&alg, &g, false)
            .unwrap()
            .passed());
    }
    let l = subspace_from_json(
        &fs::read_to_string(d.join("f5.subalgebra.json")).unwrap(),
        Field::prime(5).unwrap(),
        10,
    )
    .unwrap();
    assert_eq!(l.dim(), 1);

    let r = novikov(
        d,
        &[
            "generate",
            "--family",
            "example2modp:5,2",
            "--field",
            "Q",
            "-o",
            "x.json",
        ],
    );
    assert_eq!(r.code, 2);
    let r = novikov(d, &["generate", "--family", "lie:3", "-o", "x.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("unknown family"));
}

#[test]
fn generated_json_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    novikov(
        d,
        &[
            "generate",
            "--family",
            "truncated:3",
            "--field",
            "Fp:7",
            "-o",
            "t3.json",
        ],
    );
    let text = fs::read_to_string(d.join("t3.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["field"], serde_json::json!({"Fp": 7}));
    assert_eq!(v["dim"], 3);
    // e_i * e_j = j e_{i+j}, sorted by (i, j).
    assert_eq!(
        v["products"],
        serde_json::json!([
            {"c": "1", "i": 0, "j": 1, "k": 1},
            {"c": "2", "i": 0, "j": 2, "k": 2},
            {"c": "1", "i": 1, "j": 1, "k": 2}
        ])
    );
    let grading = fs::read_to_string(d.join("t3.grading.json")).unwrap();
    assert!(grading.contains("\"(2)\""));
}

#[test]
fn eigengrade_and_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    novikov(
        d,
        &[
            "generate",
            "--family",
            "truncated:3",
            "--field",
            "Fp:7",
            "-o",
            "t3.json",
        ],
    );
    fs::write(
        d.join("phi.json"),
        r#"{"matrix": [["1","0","0"],["0","2","0"],["0","0","4"]]}"#,
    )
    .unwrap();
    let r = novikov(
        d,
        &[
            "eigengrade",
            "t3.json",
            "--auto",
            "phi.json",
            "--order",
            "3",
            "-o",
            "eig.json",
        ],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let alg = algebra_from_json(&fs::read_to_string(d.join("t3.json")).unwrap()).unwrap();
    let g = grading_from_json(
        &fs::read_to_string(d.join("eig.json")).unwrap(),
        alg.field(),
        3,
    )
    .unwrap();
    assert_eq!(g, Grading::coordinate_cyclic(&alg));

    let r = novikov(
        d,
        &["invariants", "t3.json", "--auto", "phi.json", "--json"],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r);
    assert_eq!(v["order"], 3);
    assert_eq!(v["fixed"]["dim"], 1);
    assert_eq!(v["fixed"]["solvable"], true);

    // Over Q there is no primitive cube root of unity.
    novikov(
        d,
        &["generate", "--family", "truncated:3", "-o", "t3q.json"],
    );
    fs::write(
        d.join("id.json"),
        r#"{"matrix": [[1,0,0],[0,1,0],[0,0,1]]}"#,
    )
    .unwrap();
    let r = novikov(
        d,
        &[
            "eigengrade",
            "t3q.json",
            "--auto",
            "id.json",
            "--order",
            "3",
        ],
    );
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("rerun over Fp:p"), "{}", r.stderr);

    fs::write(
        d.join("bad.json"),
        r#"{"matrix": [[1,0,0],[0,2,0],[0,0,1]]}"#,
    )
    .unwrap();
    let r = novikov(d, &["invariants", "t3q.json", "--auto", "bad.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("not an automorphism"));
}

#[test]
fn s3_on_three_copies() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let e1 = gdgen::family_example1(Field::Rationals);
    let alg = gdgen::direct_sum_all(&[&e1, &e1, &e1]).unwrap();
    fs::write(d.join("e1x3.json"), novikov_core::io::algebra_to_json(&alg)).unwrap();
    for (name, perm) in [("swap.json", [1, 0, 2]), ("cycle.json", [1, 2, 0])] {
        let phi = gdgen::summand_permutation(Field::Rationals, 2, &perm);
        fs::write(d.join(name), novikov_core::io::map_to_json(&phi)).unwrap();
    }
    let r = novikov(
        d,
        &[
            "invariants",
            "e1x3.json",
            "--auto",
            "swap.json",
            "--auto",
            "cycle.json",
            "--json",
        ],
    );
    let v = json(&r);
    assert_eq!(v["order"], 6);
    assert_eq!(v["abelian"], false);
    assert_eq!(v["solvable_group"], true);
    assert_eq!(v["derived_subgroup_order"], 3);
    assert_eq!(v["fixed"]["dim"], 2);

    let r = novikov(
        d,
        &[
            "verify",
            "e1x3.json",
            "--auto",
            "swap.json",
            "--auto",
            "cycle.json",
            "--suite",
            "theorem3,corollary5,lemma9",
        ],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("theorem3    e1x3 G=G"), "{}", r.stdout);
    assert!(r
        .stdout
        .lines()
        .last()
        .unwrap()
        .starts_with("5 checks: 4 verified, 0 violated, 1 informational"));
}

#[test]
fn rideal_and_grade() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    novikov(
        d,
        &["generate", "--family", "example2modp:5,2", "-o", "e2.json"],
    );
    let r = novikov(
        d,
        &[
            "rideal",
            "e2.json",
            "e2.subalgebra.json",
            "--depth",
            "2",
            "--json",
        ],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r);
    assert_eq!(v["input"]["classification"]["summary"], "subalgebra");
    assert_eq!(v["closure"]["classification"]["summary"], "right_ideal");
    assert_eq!(v["l_chain"], serde_json::json!([10, 8, 8]));

    let r = novikov(d, &["grade", "e2.json", "e2.grading.json", "--json"]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert_eq!(v["valid"], true);
    assert_eq!(v["conditions"]["na_zero"], false);

    // Everything in degree 1 of Z2 is not a grading of a nonzero product.
    let bad = r#"{"group": [2], "components": {"(1)": {"vectors": [[1,0],[0,1]]}}}"#;
    novikov(d, &["generate", "--family", "example1", "-o", "e1.json"]);
    fs::write(d.join("bad.json"), bad).unwrap();
    let r = novikov(d, &["grade", "e1.json", "bad.json"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("invalid"));
    let r = novikov(d, &["verify", "e1.json", "--grading", "bad.json"]);
    assert_eq!(r.code, 2);
}

#[test]
fn verify_non_novikov_is_not_applicable() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("neg.json"), NEG).unwrap();
    let r = novikov(d, &["verify", "neg.json", "--json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r);
    assert!(v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .all(|x| x["outcome"] == "not_applicable"));
    assert!(v["summary"]["checks"].as_u64().unwrap() >= 4);

    let r = novikov(d, &["verify", "neg.json", "--suite", "lemma42"]);
    assert_eq!(r.code, 2);
    let r = novikov(d, &["verify", "neg.json", "--max-t", "0"]);
    assert_eq!(r.code, 2);
}
