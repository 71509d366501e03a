//! Argument parsing, file loading, command dispatch and report rendering for
//! the `novikov` binary.
//!
//! Every command reads the algebra JSON interchange format. Exit codes:
//! 0 when the check passes, 1 when an asserted property fails, 2 on input
//! errors.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use novikov_core::grading::{check_b_conditions, check_grading};
use novikov_core::io;
use novikov_core::linspace::classify;
use novikov_core::series::{self, ChainKind};
use novikov_core::symmetry::{self, DEFAULT_GROUP_CAP};
use novikov_core::verify::{self, InstanceBundle, Outcome, Statement, SuiteConfig, SuiteReport};
use novikov_core::{
    check_derived_identities, check_novikov, gdgen, Algebra, AlgebraMap, Field, Grading, Subspace,
};

#[derive(Debug, Parser)]
#[command(
    name = "novikov",
    version,
    about = "Exact computation in finite-dimensional Novikov algebras"
)]
pub struct RunConfig {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Novikov identities, and the word identities with --max-t.
    Check {
        algebra: PathBuf,
        /// Longest word for the word identities; 0 skips them.
        #[arg(long, default_value_t = 0)]
        max_t: usize,
    },
    /// Power, right-power and derived chains with their indices.
    Analyze { algebra: PathBuf },
    /// Right-ideal closure of a subspace and its classification.
    Rideal {
        algebra: PathBuf,
        subspace: PathBuf,
        /// Also print the chain L_1, ..., L_depth when the subspace is a subalgebra.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        depth: Option<u64>,
    },
    /// Validate a grading; report conditions (a), (b) and the chain A^{r}.
    Grade {
        algebra: PathBuf,
        grading: PathBuf,
        /// Number of terms of A^{r} to print.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
    },
    /// Eigenspace grading of an automorphism with φ^n = id.
    Eigengrade {
        algebra: PathBuf,
        /// Automorphism matrix file.
        #[arg(long)]
        auto: PathBuf,
        /// An n with φ^n = id.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        order: u64,
        /// Write the grading JSON here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The group generated by automorphisms and its fixed subalgebra.
    Invariants {
        algebra: PathBuf,
        /// Generator matrix file; repeatable.
        #[arg(long = "auto", required = true)]
        autos: Vec<PathBuf>,
        /// Give up once the group exceeds this order.
        #[arg(long, default_value_t = DEFAULT_GROUP_CAP, value_parser = positive_usize)]
        cap: usize,
    },
    /// Write a family member as algebra JSON, with grading and subalgebra
    /// sidecar files where the family defines them.
    Generate {
        /// example1 | truncated:m | witt:p | example2modp:p,b
        #[arg(long)]
        family: String,
        /// Q or Fp:q
        #[arg(long)]
        field: Option<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run the statement verifiers on one algebra.
    Verify {
        algebra: PathBuf,
        /// Grading file; repeatable.
        #[arg(long)]
        grading: Vec<PathBuf>,
        /// Subalgebra file; repeatable.
        #[arg(long)]
        subalgebra: Vec<PathBuf>,
        /// Generators of one automorphism group.
        #[arg(long = "auto")]
        autos: Vec<PathBuf>,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Run the statement verifiers on the built-in corpus.
    Suite {
        #[command(flatten)]
        bounds: Bounds,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Bounds {
    /// `all` or a comma-separated list of statement ids.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Longest word for the Lemma 1 identities.
    #[arg(long, default_value_t = 4, value_parser = positive_usize)]
    pub max_t: usize,
    /// Range of s, t, n in the L_k checks.
    #[arg(long, default_value_t = 4, value_parser = positive_usize)]
    pub window: usize,
    /// Largest k in A^{k} for Lemma 3 and Corollary 2.
    #[arg(long, default_value_t = 3, value_parser = positive_usize)]
    pub k_max: usize,
    /// Largest r for the product checks of Lemmas 3 and 5.
    #[arg(long, default_value_t = 3, value_parser = positive_usize)]
    pub r_max: usize,
    /// Largest k in N_i^[k] for Lemmas 7 and 8 (raised to the group order).
    #[arg(long, default_value_t = 5, value_parser = positive_usize)]
    pub lemma7_k: usize,
    /// Give up once a generated group exceeds this order.
    #[arg(long, default_value_t = DEFAULT_GROUP_CAP, value_parser = positive_usize)]
    pub group_cap: usize,
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

impl Bounds {
    pub fn suite_config(&self) -> Result<SuiteConfig, CliError> {
        let statements = if self.suite.trim() == "all" {
            None
        } else {
            let mut set = BTreeSet::new();
            for id in self.suite.split(',').map(str::trim) {
                let st = Statement::from_id(id)
                    .ok_or_else(|| CliError::Usage(format!("unknown statement id {id:?}")))?;
                set.insert(st);
            }
            Some(set)
        };
        Ok(SuiteConfig {
            max_t: self.max_t,
            window: self.window,
            k_max: self.k_max,
            r_max: self.r_max,
            lemma7_k: self.lemma7_k,
            group_cap: self.group_cap,
            statements,
        })
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Input {
        path: PathBuf,
        source: novikov_core::Error,
    },
    #[error(transparent)]
    Core(#[from] novikov_core::Error),
    #[error("{0}")]
    Usage(String),
}

/// Text to print and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub text: String,
    pub code: i32,
}

impl CommandOutput {
    fn new(text: String, passed: bool) -> Self {
        CommandOutput {
            text,
            code: if passed { 0 } else { 1 },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn input<T>(path: &Path, r: novikov_core::Result<T>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads and validates an algebra file. The Novikov identities are not checked here.
pub fn parse_algebra_file(path: &Path) -> Result<Algebra, CliError> {
    input(path, io::algebra_from_json(&read(path)?))
}

fn parse_subspace_file(path: &Path, alg: &Algebra) -> Result<Subspace, CliError> {
    input(
        path,
        io::subspace_from_json(&read(path)?, alg.field(), alg.dim()),
    )
}

fn parse_map_file(path: &Path, alg: &Algebra) -> Result<AlgebraMap, CliError> {
    input(
        path,
        io::map_from_json(&read(path)?, alg.field(), alg.dim()),
    )
}

fn parse_grading_file(path: &Path, alg: &Algebra) -> Result<Grading, CliError> {
    input(
        path,
        io::grading_from_json(&read(path)?, alg.field(), alg.dim()),
    )
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn dispatch(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let format = if cfg.json {
        Format::Json
    } else {
        Format::Human
    };
    match &cfg.command {
        Command::Check { algebra, max_t } => check(&parse_algebra_file(algebra)?, *max_t, format),
        Command::Analyze { algebra } => Ok(analyze(&parse_algebra_file(algebra)?, format)),
        Command::Rideal {
            algebra,
            subspace,
            depth,
        } => {
            let alg = parse_algebra_file(algebra)?;
            let v = parse_subspace_file(subspace, &alg)?;
            rideal(&alg, &v, depth.map(|d| d as usize), format)
        }
        Command::Grade {
            algebra,
            grading,
            depth,
        } => {
            let alg = parse_algebra_file(algebra)?;
            let g = parse_grading_file(grading, &alg)?;
            grade(&alg, &g, *depth as usize, format)
        }
        Command::Eigengrade {
            algebra,
            auto,
            order,
            output,
        } => {
            let alg = parse_algebra_file(algebra)?;
            let phi = parse_map_file(auto, &alg)?;
            eigengrade(&alg, &phi, *order, output.as_deref(), format)
        }
        Command::Invariants {
            algebra,
            autos,
            cap,
        } => {
            let alg = parse_algebra_file(algebra)?;
            let gens = autos
                .iter()
                .map(|p| parse_map_file(p, &alg))
                .collect::<Result<Vec<_>, _>>()?;
            invariants(&alg, &gens, *cap, format)
        }
        Command::Generate {
            family,
            field,
            output,
        } => generate(family, field.as_deref(), output, format),
        Command::Verify {
            algebra,
            grading,
            subalgebra,
            autos,
            bounds,
        } => {
            let bundle = load_bundle(algebra, grading, subalgebra, autos)?;
            let report = verify::run_suite(&[bundle], &bounds.suite_config()?);
            Ok(CommandOutput::new(
                render_report(&report, format),
                report.passed(),
            ))
        }
        Command::Suite { bounds } => {
            let report = verify::run_suite(&verify::default_corpus(), &bounds.suite_config()?);
            Ok(CommandOutput::new(
                render_report(&report, format),
                report.passed(),
            ))
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn json_text(v: &Value) -> String {
    io::pretty(v)
}

fn check(alg: &Algebra, max_t: usize, format: Format) -> Result<CommandOutput, CliError> {
    let base = check_novikov(alg);
    let words = if base.passed() && max_t > 0 {
        Some(check_derived_identities(alg, max_t)?)
    } else {
        None
    };
    let passed = base.passed() && words.as_ref().is_none_or(|w| w.passed());
    let text = match format {
        Format::Json => json_text(&json!({
            "novikov": base.passed(),
            "novikov_detail": base.describe(alg),
            "word_identities": words.as_ref().map(|w| json!({
                "max_t": max_t,
                "passed": w.passed(),
                "detail": w.describe(alg),
            })),
        })),
        Format::Human => {
            let mut s = format!("novikov: {}, {}\n", yes(base.passed()), base.describe(alg));
            if let Some(w) = &words {
                s.push_str(&format!(
                    "word identities, t <= {max_t}: {}\n",
                    w.describe(alg)
                ));
            }
            s
        }
    };
    Ok(CommandOutput::new(text, passed))
}

fn analyze(alg: &Algebra, format: Format) -> CommandOutput {
    let chains: Vec<_> = [
        ChainKind::Powers,
        ChainKind::RightPowers,
        ChainKind::DerivedPowers,
    ]
    .into_iter()
    .map(|k| series::chain(alg, k))
    .collect();
    let nilpotency_index = chains[0].index();
    let right_index = chains[1].index();
    let derived_length = chains[2].index().map(|i| i - 1);
    let novikov = check_novikov(alg).passed();
    let text = match format {
        Format::Json => json_text(&json!({
            "field": io::field_to_value(alg.field()),
            "dim": alg.dim(),
            "novikov": novikov,
            "chains": chains.iter().map(|c| c.summary()).collect::<Vec<_>>(),
            "nilpotency_index": nilpotency_index,
            "right_nilpotent_index": right_index,
            "derived_length": derived_length,
        })),
        Format::Human => {
            let mut s = format!(
                "dim {} over {}, novikov: {}\n",
                alg.dim(),
                io::field_name(alg.field()),
                yes(novikov)
            );
            let notes = [
                nilpotency_index.map(|i| format!("nilpotent, index {i}")),
                right_index.map(|i| format!("right nilpotent, index {i}")),
                derived_length.map(|l| format!("solvable, derived length {l}")),
            ];
            for (c, note) in chains.iter().zip(notes) {
                let note = note.unwrap_or_else(|| match c.verdict {
                    novikov_core::Verdict::Stabilized { at, dim } => {
                        format!("stabilized at term {at}, dim {dim}")
                    }
                    novikov_core::Verdict::Nilpotent { .. } => unreachable!("index is set"),
                });
                s.push_str(&format!(
                    "{:<15} {:<24} {note}\n",
                    format!("{}:", c.kind),
                    c.render_dims()
                ));
            }
            s
        }
    };
    CommandOutput::new(text, true)
}

fn rideal(
    alg: &Algebra,
    v: &Subspace,
    depth: Option<usize>,
    format: Format,
) -> Result<CommandOutput, CliError> {
    let closure = series::right_ideal_closure(alg, v)?;
    let cv = classify(alg, v)?;
    let cc = classify(alg, &closure)?;
    let l_chain = match depth {
        Some(d) if cv.subalgebra => Some(series::l_chain(alg, v, d)?),
        Some(_) => return Err(CliError::Usage("--depth needs a subalgebra".into())),
        None => None,
    };
    let dims = |c: &[Subspace]| c.iter().map(Subspace::dim).collect::<Vec<_>>();
    let text = match format {
        Format::Json => json_text(&json!({
            "input": { "dim": v.dim(), "classification": cv },
            "closure": {
                "dim": closure.dim(),
                "classification": cc,
                "vectors": io::subspace_to_value(&closure)["vectors"],
            },
            "l_chain": l_chain.as_deref().map(dims),
        })),
        Format::Human => {
            let basis: Vec<String> = closure.basis().iter().map(|x| alg.format(x)).collect();
            let mut s = format!(
                "input:   dim {}, {}\nclosure: dim {}, {}, basis {{{}}}\n",
                v.dim(),
                cv.summary,
                closure.dim(),
                cc.summary,
                basis.join(", ")
            );
            if let Some(c) = &l_chain {
                let d: Vec<String> = dims(c).iter().map(usize::to_string).collect();
                s.push_str(&format!("L_k dims (k = 0..): {}\n", d.join(" ⊇ ")));
            }
            s
        }
    };
    Ok(CommandOutput::new(text, true))
}

fn grade(
    alg: &Algebra,
    g: &Grading,
    depth: usize,
    format: Format,
) -> Result<CommandOutput, CliError> {
    let report = check_grading(alg, g, true)?;
    let components: serde_json::Map<String, Value> = g
        .components()
        .iter()
        .map(|(d, s)| (format!("({d})"), json!(s.dim())))
        .collect();
    let (conditions, chain, m) = if report.passed() {
        let conditions = check_b_conditions(alg, g)?;
        let chain = series::a_brace_chain(alg, g, depth);
        let m = series::lemma6_m(alg, g, series::default_lemma6_cap(alg));
        (Some(conditions), Some(chain), Some(m))
    } else {
        (None, None, None)
    };
    let text = match format {
        Format::Json => json_text(&json!({
            "valid": report.passed(),
            "direct_sum": report.direct_sum,
            "violations": report.violations,
            "components": components,
            "conditions": conditions,
            "a_chain_dims": chain.as_ref().map(|c| match c {
                Ok(terms) => json!(terms.iter().map(|t| t.space.dim()).collect::<Vec<_>>()),
                Err(e) => json!(e.to_string()),
            }),
            "lemma6_m": m.as_ref().map(|m| match m {
                Ok(m) => json!(m),
                Err(e) => json!(e.to_string()),
            }),
        })),
        Format::Human => {
            let mut s = format!(
                "grading by {}: {}\n",
                group_label(g.group().factors()),
                if report.passed() { "valid" } else { "invalid" }
            );
            if !report.direct_sum {
                s.push_str("components do not form a direct sum of the whole space\n");
            }
            for (a, b) in &report.violations {
                s.push_str(&format!(
                    "N_({a}) N_({b}) is not inside N_({})\n",
                    g.group().add(a, b)
                ));
            }
            for (d, c) in g.components() {
                s.push_str(&format!("  N_({d}): dim {}\n", c.dim()));
            }
            if let Some(c) = &conditions {
                s.push_str(&format!(
                    "condition (a) N N_0 = 0: {}\ncondition (b) opposite Jordan products vanish: {}\n",
                    yes(c.na_zero),
                    yes(c.opposite_jordan_zero)
                ));
            }
            match &chain {
                Some(Ok(terms)) => {
                    let d: Vec<String> = terms.iter().map(|t| t.space.dim().to_string()).collect();
                    s.push_str(&format!(
                        "A^{{r}} dims, r = 0..{depth}: {}\n",
                        d.join(" ⊇ ")
                    ));
                }
                Some(Err(e)) => s.push_str(&format!("A^{{r}} chain: {e}\n")),
                None => {}
            }
            match &m {
                Some(Ok(m)) => s.push_str(&format!("least m with N^[m] inside A^{{1}}: {m}\n")),
                Some(Err(e)) => s.push_str(&format!("least m with N^[m] inside A^{{1}}: {e}\n")),
                None => {}
            }
            s
        }
    };
    Ok(CommandOutput::new(text, report.passed()))
}

/// `Z2`, `Z2 ⊕ Z4`
fn group_label(factors: &[u64]) -> String {
    factors
        .iter()
        .map(|n| format!("Z{n}"))
        .collect::<Vec<_>>()
        .join(" ⊕ ")
}

fn eigengrade(
    alg: &Algebra,
    phi: &AlgebraMap,
    order: u64,
    output: Option<&Path>,
    format: Format,
) -> Result<CommandOutput, CliError> {
    let g = symmetry::eigenspace_grading(alg, phi, order).map_err(|e| match e {
        novikov_core::Error::NoSuchRoot { field, n } => CliError::Usage(format!(
            "{field} has no primitive {n}-th root of unity; rerun over Fp:p with {n} dividing p - 1"
        )),
        e => CliError::Core(e),
    })?;
    let grading_json = io::grading_to_json(&g);
    if let Some(path) = output {
        write(path, &grading_json)?;
    }
    let text = match format {
        Format::Json => grading_json,
        Format::Human => {
            let mut s = format!("eigenspace grading by Z{order}\n");
            for (d, c) in g.components() {
                let basis: Vec<String> = c.basis().iter().map(|x| alg.format(x)).collect();
                s.push_str(&format!("  N_{d}: {{{}}}\n", basis.join(", ")));
            }
            s
        }
    };
    Ok(CommandOutput::new(text, true))
}

fn invariants(
    alg: &Algebra,
    gens: &[AlgebraMap],
    cap: usize,
    format: Format,
) -> Result<CommandOutput, CliError> {
    for (i, phi) in gens.iter().enumerate() {
        if !symmetry::is_automorphism(alg, phi)? {
            return Err(CliError::Usage(format!(
                "generator {} is not an automorphism",
                i + 1
            )));
        }
    }
    let group = symmetry::group_closure(alg, gens, cap)?;
    let fixed = symmetry::fixed_subalgebra(&group);
    let derived = symmetry::commutator_subgroup(&group);
    let fixed_solvable = series::subspace_is_solvable(alg, &fixed)?;
    let text = match format {
        Format::Json => json_text(&json!({
            "order": group.order(),
            "abelian": group.is_abelian(),
            "solvable_group": symmetry::is_solvable_group(&group),
            "derived_subgroup_order": derived.order(),
            "fixed": {
                "dim": fixed.dim(),
                "vectors": io::subspace_to_value(&fixed)["vectors"],
                "solvable": fixed_solvable,
            },
            "algebra_solvable": series::is_solvable(alg),
        })),
        Format::Human => {
            let basis: Vec<String> = fixed.basis().iter().map(|x| alg.format(x)).collect();
            format!(
                "|G| = {}, abelian: {}, solvable: {}, |G'| = {}\nfixed subalgebra: dim {}, basis {{{}}}, solvable: {}\nalgebra solvable: {}\n",
                group.order(),
                yes(group.is_abelian()),
                yes(symmetry::is_solvable_group(&group)),
                derived.order(),
                fixed.dim(),
                basis.join(", "),
                yes(fixed_solvable),
                yes(series::is_solvable(alg)),
            )
        }
    };
    Ok(CommandOutput::new(text, true))
}

/// A generated family member and its sidecar files.
pub struct Generated {
    pub algebra: Algebra,
    pub grading: Option<Grading>,
    pub subalgebra: Option<Subspace>,
}

fn parse_usize(s: &str, what: &str) -> Result<usize, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad {what} {s:?}")))
}

/// Builds a family member from a descriptor such as `truncated:4` or `example2modp:5,2`.
pub fn generate_family(family: &str, field: Option<&str>) -> Result<Generated, CliError> {
    let field = field.map(io::parse_field).transpose()?;
    let (name, arg) = family.split_once(':').unwrap_or((family, ""));
    let no_arg = |name: &str| -> Result<(), CliError> {
        if arg.is_empty() {
            Ok(())
        } else {
            Err(CliError::Usage(format!("{name} takes no parameter")))
        }
    };
    match name {
        "example1" => {
            no_arg(name)?;
            let alg = gdgen::family_example1(field.unwrap_or(Field::Rationals));
            let grading = gdgen::example1_grading(&alg)?;
            Ok(Generated {
                algebra: alg,
                grading: Some(grading),
                subalgebra: None,
            })
        }
        "truncated" => {
            let m = parse_usize(arg, "truncation order")?;
            let alg = gdgen::family_truncated(m, field.unwrap_or(Field::Rationals))?;
            let grading = Grading::coordinate_cyclic(&alg);
            Ok(Generated {
                algebra: alg,
                grading: Some(grading),
                subalgebra: None,
            })
        }
        "witt" => {
            let p = parse_usize(arg, "prime")? as u64;
            let field = match field {
                Some(f) => f,
                None => Field::prime(p)?,
            };
            let alg = gdgen::family_witt(p, field)?;
            let grading = Grading::coordinate_cyclic(&alg);
            Ok(Generated {
                algebra: alg,
                grading: Some(grading),
                subalgebra: None,
            })
        }
        "example2modp" => {
            let (p, b) = arg
                .split_once(',')
                .ok_or_else(|| CliError::Usage("example2modp needs p,b".into()))?;
            let p = parse_usize(p, "prime")? as u64;
            let b = parse_usize(b, "exponent")?;
            if let Some(f) = field {
                if f != Field::prime(p)? {
                    return Err(CliError::Usage(format!(
                        "example2modp:{p},{b} is defined over Fp:{p} only"
                    )));
                }
            }
            let (alg, l) = gdgen::family_example2_modp(p, b)?;
            let grading = gdgen::example2_grading(&alg, p, b)?;
            Ok(Generated {
                algebra: alg,
                grading: Some(grading),
                subalgebra: Some(l),
            })
        }
        _ => Err(CliError::Usage(format!(
            "unknown family {family:?}; expected example1, truncated:m, witt:p or example2modp:p,b"
        ))),
    }
}

/// `out.json` becomes `out.<kind>.json`.
pub fn sidecar_path(output: &Path, kind: &str) -> PathBuf {
    let stem = stem(output);
    output.with_file_name(format!("{stem}.{kind}.json"))
}

fn generate(
    family: &str,
    field: Option<&str>,
    output: &Path,
    format: Format,
) -> Result<CommandOutput, CliError> {
    let gen = generate_family(family, field)?;
    let mut written = vec![output.to_path_buf()];
    write(output, &io::algebra_to_json(&gen.algebra))?;
    if let Some(g) = &gen.grading {
        let path = sidecar_path(output, "grading");
        write(&path, &io::grading_to_json(g))?;
        written.push(path);
    }
    if let Some(l) = &gen.subalgebra {
        let path = sidecar_path(output, "subalgebra");
        write(&path, &io::subspace_to_json(l))?;
        written.push(path);
    }
    let names: Vec<String> = written.iter().map(|p| p.display().to_string()).collect();
    let text = match format {
        Format::Json => {
            json_text(&json!({ "family": family, "dim": gen.algebra.dim(), "files": names }))
        }
        Format::Human => names.iter().map(|n| format!("wrote {n}\n")).collect(),
    };
    Ok(CommandOutput::new(text, true))
}

fn load_bundle(
    algebra: &Path,
    gradings: &[PathBuf],
    subalgebras: &[PathBuf],
    autos: &[PathBuf],
) -> Result<InstanceBundle, CliError> {
    let alg = parse_algebra_file(algebra)?;
    let mut bundle = InstanceBundle::new(stem(algebra), alg.clone());
    for path in gradings {
        let g = parse_grading_file(path, &alg)?;
        if !check_grading(&alg, &g, false)?.passed() {
            return Err(CliError::Input {
                path: path.clone(),
                source: novikov_core::Error::InvalidGrading("not a grading of the algebra".into()),
            });
        }
        bundle = bundle.with_grading(&stem(path), g);
    }
    for path in subalgebras {
        bundle = bundle.with_subalgebra(&stem(path), parse_subspace_file(path, &alg)?);
    }
    if !autos.is_empty() {
        let mut gens = Vec::new();
        for path in autos {
            let phi = parse_map_file(path, &alg)?;
            if !symmetry::is_automorphism(&alg, &phi)? {
                return Err(CliError::Input {
                    path: path.clone(),
                    source: novikov_core::Error::NotAnAutomorphism,
                });
            }
            gens.push(phi);
        }
        bundle = bundle.with_group("G", gens);
    }
    Ok(bundle)
}

#[derive(serde::Serialize)]
struct Summary {
    checks: usize,
    verified: usize,
    violated: usize,
    informational: usize,
    not_applicable: usize,
}

fn summary(report: &SuiteReport) -> Summary {
    Summary {
        checks: report.reports.len(),
        verified: report.count(Outcome::Verified),
        violated: report.count(Outcome::Violated),
        informational: report.count(Outcome::Informational),
        not_applicable: report.count(Outcome::NotApplicable),
    }
}

/// One row per (statement, instance), in that order, with a count footer;
/// or JSON with a summary object and the report list.
pub fn render_report(report: &SuiteReport, format: Format) -> String {
    let mut rows: Vec<_> = report.reports.iter().collect();
    rows.sort_by(|a, b| (a.statement, &a.instance).cmp(&(b.statement, &b.instance)));
    let s = summary(report);
    match format {
        Format::Json => json_text(&json!({ "summary": s, "reports": rows })),
        Format::Human => {
            let header = ["statement", "instance", "outcome", "detail"];
            let cells: Vec<[String; 4]> = rows
                .iter()
                .map(|r| {
                    [
                        r.statement.to_string(),
                        r.instance.clone(),
                        r.outcome.to_string(),
                        r.detail.clone(),
                    ]
                })
                .collect();
            let width = |i: usize| {
                cells
                    .iter()
                    .map(|c| c[i].chars().count())
                    .chain([header[i].len()])
                    .max()
                    .unwrap_or(0)
            };
            let (w0, w1, w2) = (width(0), width(1), width(2));
            let mut out = String::new();
            let mut line = |c: [&str; 4]| {
                out.push_str(
                    format!("{:<w0$}  {:<w1$}  {:<w2$}  {}", c[0], c[1], c[2], c[3]).trim_end(),
                );
                out.push('\n');
            };
            line(header);
            for c in &cells {
                line([&c[0], &c[1], &c[2], &c[3]]);
            }
            out.push_str(&format!(
                "{} checks: {} verified, {} violated, {} informational, {} not applicable\n",
                s.checks, s.verified, s.violated, s.informational, s.not_applicable
            ));
            out
        }
    }
}
