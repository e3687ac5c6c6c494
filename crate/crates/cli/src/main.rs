//! `grl`: build, validate and analyze groupoid-graded algebras from JSON
//! fixtures, and check the ideal intersection theorems on them.
//!
//! Exit codes: 0 success, 1 load or validation failure, 2 a theorem's
//! hypotheses do not hold, 3 a theorem's conclusion failed.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use grl_core::analysis::{self, AnalysisError};
use grl_core::constructions::{build_matrix_graded, build_theorem5_witness, MatrixGradingSpec};
use grl_core::fixture::{self, AlgebraFixture, Fixture};
use grl_core::groupoid::{build_group, build_thin_connected, cyclic_table, Groupoid};
use grl_core::ideals::{self, CheckOptions, IdealError, Mode};
use grl_core::{Field, GradedAlgebra, Subspace};

const EXIT_INVALID: u8 = 1;
const EXIT_HYPOTHESIS: u8 = 2;
const EXIT_CONCLUSION: u8 = 3;

#[derive(Parser)]
#[command(name = "grl", version, about = "Groupoid-graded algebras over exact fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the main output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check a fixture's axioms and print every violation.
    Validate { fixture: PathBuf },
    /// Build a groupoid or algebra fixture.
    Construct {
        #[command(subcommand)]
        kind: Construct,
    },
    /// Compute the requested reports for an algebra fixture.
    Analyze {
        fixture: PathBuf,
        /// Comma-separated subset of grading, strong, commutant, center,
        /// sigma, ideal-property.
        #[arg(long, value_delimiter = ',', default_value = "grading,strong,commutant,center,sigma,ideal-property")]
        reports: Vec<Report>,
    },
    /// Verify a theorem on a fixture after checking its hypotheses.
    Check {
        #[arg(value_enum)]
        theorem: Theorem,
        fixture: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// The thin connected groupoid on the given number of objects.
    Thin {
        #[arg(long)]
        objects: usize,
    },
    /// A group from a cyclic order or a JSON multiplication table.
    Group {
        #[arg(long, conflicts_with = "table", required_unless_present = "table")]
        cyclic: Option<usize>,
        /// JSON array of rows, `table[a][b]` the index of `ab`.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// The graded subalgebra of a matrix ring given by a section list.
    MatrixGraded {
        #[arg(long)]
        groupoid: PathBuf,
        /// Comma-separated morphism indices.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        section: Vec<usize>,
        #[arg(long, default_value = "rational")]
        field: Field,
    },
    /// The skew category algebra of a skew system fixture.
    Skew {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// The crossed product of a crossed system fixture.
    Crossed {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// A strongly graded algebra with a component that is not free of rank one.
    Theorem5 {
        #[arg(long)]
        groupoid: PathBuf,
        #[arg(long, default_value = "gf2")]
        field: Field,
        /// Where to write the construction report; standard error otherwise.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Report {
    Grading,
    Strong,
    Commutant,
    Center,
    Sigma,
    IdealProperty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    T1,
    T2,
    T3,
    T4,
    Corollary,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeKind {
    Exhaustive,
    Sampled,
}

#[derive(Args)]
struct ModeArgs {
    #[arg(long, value_enum, default_value_t = ModeKind::Exhaustive)]
    mode: ModeKind,
    #[arg(long, default_value_t = 256)]
    trials: u64,
    /// Required in sampled mode.
    #[arg(long)]
    seed: Option<u64>,
}

impl ModeArgs {
    fn options(&self) -> Result<CheckOptions> {
        let mode = match self.mode {
            ModeKind::Exhaustive => Mode::Exhaustive,
            ModeKind::Sampled => {
                let Some(seed) = self.seed else { bail!("sampled mode needs --seed") };
                Mode::Sampled {
                    trials: self.trials,
                    seed,
                }
            }
        };
        Ok(CheckOptions {
            mode,
            max_exhaustive: ideals::max_exhaustive_from_env(),
        })
    }
}

/// What a command produced: the document to print and the exit code.
struct Outcome {
    value: Value,
    code: u8,
}

impl Outcome {
    fn ok(value: Value) -> Outcome {
        Outcome { value, code: 0 }
    }
}

fn read_fixture(path: &Path) -> Result<Fixture> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    fixture::parse(&text).with_context(|| format!("loading {}", path.display()))
}

fn read_groupoid(path: &Path) -> Result<Groupoid> {
    match read_fixture(path)? {
        Fixture::Groupoid(f) => Ok(Groupoid::from_fixture(&f)?),
        other => bail!("{} holds a {} fixture, expected a groupoid", path.display(), other.kind()),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn write_side(path: Option<&Path>, value: &Value) -> Result<()> {
    let text = fixture::to_json(value);
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            eprint!("{text}");
            Ok(())
        }
    }
}

fn validate(path: &Path) -> Result<Outcome> {
    let fx = read_fixture(path)?;
    let (value, valid) = match &fx {
        Fixture::Groupoid(f) => {
            let report = Groupoid::from_fixture(f)?.validate();
            (to_value(&report), report.is_valid())
        }
        Fixture::Algebra(f) => {
            let a = f.to_graded()?;
            let groupoid = a.groupoid().validate();
            let grading = a.validate_grading();
            let valid = groupoid.is_valid() && grading.is_valid();
            (json!({"groupoid": groupoid, "algebra": grading}), valid)
        }
        Fixture::Skew(f) => {
            let violations = f.to_system()?.validate();
            (json!({"violations": violations}), violations.is_empty())
        }
        Fixture::Crossed(f) => {
            let violations = f.to_system()?.validate();
            (json!({"violations": violations}), violations.is_empty())
        }
    };
    Ok(Outcome {
        value: json!({"kind": fx.kind(), "valid": valid, "report": value}),
        code: if valid { 0 } else { EXIT_INVALID },
    })
}

fn construct(kind: &Construct) -> Result<Outcome> {
    let algebra = |a: &GradedAlgebra| to_value(&AlgebraFixture::from_graded(a));
    Ok(Outcome::ok(match kind {
        Construct::Thin { objects } => to_value(&build_thin_connected(*objects)?.to_fixture()),
        Construct::Group { cyclic, table } => {
            let t = match (cyclic, table) {
                (Some(n), _) => cyclic_table(*n),
                (None, Some(p)) => serde_json::from_str(&fs::read_to_string(p)?)?,
                (None, None) => bail!("give --cyclic or --table"),
            };
            to_value(&build_group(&t)?.to_fixture())
        }
        Construct::MatrixGraded {
            groupoid,
            section,
            field,
        } => algebra(&build_matrix_graded(&MatrixGradingSpec {
            groupoid: read_groupoid(groupoid)?,
            field: *field,
            section: section.clone(),
        })?),
        Construct::Skew { system, report } => {
            let Fixture::Skew(f) = read_fixture(system)? else { bail!("expected a skew system fixture") };
            let sys = f.to_system()?;
            let violations = sys.validate();
            write_side(report.as_deref(), &json!({"violations": violations}))?;
            algebra(&sys.build()?)
        }
        Construct::Crossed { system, report } => {
            let Fixture::Crossed(f) = read_fixture(system)? else { bail!("expected a crossed system fixture") };
            let sys = f.to_system()?;
            let summary = json!({
                "violations": sys.validate(),
                "sigma_automorphic": sys.sigma_automorphic(),
                "alpha_regular": sys.alpha_regular(),
            });
            write_side(report.as_deref(), &summary)?;
            algebra(&sys.build()?)
        }
        Construct::Theorem5 {
            groupoid,
            field,
            report,
        } => {
            let (a, r) = build_theorem5_witness(&read_groupoid(groupoid)?, *field)?;
            write_side(report.as_deref(), &to_value(&r))?;
            algebra(&a)
        }
    }))
}

fn subspace_value(a: &GradedAlgebra, s: &Subspace) -> Value {
    json!({
        "dim": s.dim(),
        "basis": s.vectors().map(|v| v.iter().map(fixture::scalar_text).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "rendered": s.vectors().map(|v| a.render(&grl_core::Element::new(v.to_vec()))).collect::<Vec<_>>(),
    })
}

fn analyze(path: &Path, reports: &[Report]) -> Result<Outcome> {
    let Some(a) = read_fixture(path)?.graded()? else { bail!("a groupoid fixture has nothing to analyze") };
    let grading = a.validate_grading();
    let groupoid = a.groupoid().validate();
    if !grading.is_valid() || !groupoid.is_valid() {
        return Ok(Outcome {
            value: json!({"grading": {"valid": false, "groupoid": groupoid, "algebra": grading}}),
            code: EXIT_INVALID,
        });
    }
    let strong = a.is_strongly_graded()?;
    let mut out = serde_json::Map::new();
    for r in reports {
        let (key, value) = match r {
            Report::Grading => ("grading", json!({"valid": true, "groupoid": groupoid, "algebra": grading})),
            Report::Strong => ("strong", json!({"strongly_graded": strong.holds, "failure": strong.failure})),
            Report::Commutant => {
                let gc = analysis::graded_commutant(&a);
                let maximal = match analysis::is_maximal_commutative(&a) {
                    Ok(m) => json!(m),
                    Err(AnalysisError::NonCommutativePrincipal) => Value::Null,
                    Err(e) => return Err(e.into()),
                };
                let checks = analysis::check_graded_commutant(&a);
                (
                    "commutant",
                    json!({
                        "principal_commutative": analysis::principal_is_commutative(&a),
                        "maximal_commutative": maximal,
                        "commutant_of_principal": subspace_value(&a, &gc.commutant),
                        "component_dims": gc.components.iter().map(Subspace::dim).collect::<Vec<_>>(),
                        "checks": checks,
                        "unit_lemma": analysis::check_unit_lemma(&a),
                    }),
                )
            }
            Report::Center => {
                let direct = analysis::center_direct(&a);
                let mut section = json!({"center_direct": subspace_value(&a, &direct)});
                if strong.holds {
                    let via = analysis::center_via_sigma(&a)?;
                    section["center_via_sigma"] = subspace_value(&a, &via);
                    section["equal"] = json!(via == direct);
                }
                ("center", section)
            }
            Report::Sigma => (
                "sigma",
                if strong.holds {
                    to_value(&analysis::check_sigma_functor(&a)?)
                } else {
                    json!({"applicable": false, "reason": "not strongly graded"})
                },
            ),
            Report::IdealProperty => ("ideal_property", to_value(&ideals::nonzero_ideal_property(&a)?)),
        };
        out.insert(key.to_string(), value);
    }
    Ok(Outcome::ok(Value::Object(out)))
}

fn check(theorem: Theorem, path: &Path, mode: &ModeArgs) -> Result<Outcome> {
    let options = mode.options()?;
    let fx = read_fixture(path)?;
    let result = match theorem {
        Theorem::T4 => {
            let Fixture::Skew(f) = &fx else { bail!("t4 needs a skew system fixture") };
            ideals::verify_theorem4(&f.to_system()?, &options).map(|r| (r.passed(), to_value(&r)))
        }
        Theorem::T2 => {
            let Fixture::Crossed(f) = &fx else { bail!("t2 needs a crossed system fixture") };
            ideals::verify_theorem2(&f.to_system()?, &options).map(|r| (r.passed(), to_value(&r)))
        }
        Theorem::T1 | Theorem::T3 | Theorem::Corollary => {
            let Some(a) = fx.graded()? else { bail!("a groupoid fixture has no algebra to check") };
            let report = match theorem {
                Theorem::T1 => ideals::verify_theorem1(&a, &options),
                Theorem::T3 => ideals::verify_theorem3(&a, &options),
                _ => ideals::verify_corollary(&a, &options),
            };
            report.map(|r| (r.passed(), to_value(&r)))
        }
    };
    Ok(match result {
        Ok((passed, report)) => Outcome {
            value: json!({"passed": passed, "report": report}),
            code: if passed { 0 } else { EXIT_CONCLUSION },
        },
        Err(IdealError::Hypothesis(reason)) => Outcome {
            value: json!({"passed": false, "hypothesis_failed": reason}),
            code: EXIT_HYPOTHESIS,
        },
        Err(e) => return Err(e.into()),
    })
}

/// One `path: value` line per leaf.
fn render_text(value: &Value, prefix: &str, out: &mut String) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| render_text(v, &join(k), out)),
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = xs.iter().map(scalar_text).collect();
            out.push_str(&format!("{prefix}: [{}]\n", items.join(", ")));
        }
        Value::Array(xs) => xs
            .iter()
            .enumerate()
            .for_each(|(i, v)| render_text(v, &join(&i.to_string()), out)),
        leaf => out.push_str(&format!("{prefix}: {}\n", scalar_text(leaf))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn emit(cli: &Cli, value: &Value) -> Result<()> {
    let text = match cli.format {
        Format::Json => fixture::to_json(value),
        Format::Text => {
            let mut s = String::new();
            render_text(value, "", &mut s);
            s
        }
    };
    match &cli.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let outcome = match &cli.command {
        Command::Validate { fixture } => validate(fixture)?,
        Command::Construct { kind } => construct(kind)?,
        Command::Analyze { fixture, reports } => analyze(fixture, reports)?,
        Command::Check { theorem, fixture, mode } => check(*theorem, fixture, mode)?,
    };
    emit(cli, &outcome.value)?;
    Ok(outcome.code)
}

fn main() -> ExitCode {
    // Clap reports usage errors with code 2, which is reserved for failed
    // hypotheses here.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
