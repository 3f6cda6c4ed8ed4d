//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use plconj::{
    are_conjugate, centralizer_generator, conjugator_with_slope, germ_breakpoint_classes,
    linearity_boxes, mather_invariant, nth_root, verify_conjugator, BumpClass, ConjugacyOutcome,
    Error, FixedSet, NonConjugacy, PlMap, Rat, RootOutcome,
};

use crate::document::{Field, ResultDocument};
use crate::format::{parse_map, parse_rational};
use crate::svg;

#[derive(Parser, Debug)]
#[command(
    name = "plconj",
    version,
    about = "Exact conjugacy tools for piecewise-linear maps of [0, 1]"
)]
struct Cli {
    /// Output format for results.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate f at a point t.
    Eval { f: PathBuf, t: String },
    /// Compose maps; the last one is applied first.
    Compose {
        #[arg(required = true, num_args = 2..)]
        maps: Vec<PathBuf>,
    },
    /// Inverse of f.
    Invert { f: PathBuf },
    /// n-th power of f (n may be negative).
    Power {
        f: PathBuf,
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// Position of f relative to the diagonal.
    Classify { f: PathBuf },
    /// Linearity boxes of a pair.
    Boxes { y: PathBuf, z: PathBuf },
    /// Mather germ of a one-bump map.
    Mather { z: PathBuf },
    /// Decide whether y and z are conjugate.
    Conjugate { y: PathBuf, z: PathBuf },
    /// The conjugator from y to z with initial slope q, if any.
    ConjugatorWithSlope { y: PathBuf, z: PathBuf, q: String },
    /// Generator of the centralizer of z.
    Centralizer { z: PathBuf },
    /// n-th root of z.
    Root {
        z: PathBuf,
        #[arg(short = 'n', long = "order", default_value_t = 2)]
        n: u32,
    },
    /// Check that g⁻¹ y g = z.
    Verify { g: PathBuf, y: PathBuf, z: PathBuf },
    /// Render the graph of f as SVG.
    Plot {
        f: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub document: Option<ResultDocument>,
}

enum Failure {
    Input(String),
    Precondition(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Precondition(e)
    }
}

fn variant_name(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or("")
        .to_string()
}

fn load(path: &Path) -> Result<PlMap, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_map(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn rational_arg(s: &str) -> Result<Rat, Failure> {
    parse_rational(s).map_err(Failure::Input)
}

fn root_name(n: u32) -> String {
    match n {
        2 => "square".into(),
        3 => "cube".into(),
        _ => format!("{n}-th"),
    }
}

fn class_fields(class: &BumpClass) -> (String, Option<Field>) {
    match class {
        BumpClass::Identity => ("identity".into(), None),
        BumpClass::AboveDiagonal => ("above".into(), None),
        BumpClass::BelowDiagonal => ("below".into(), None),
        BumpClass::Crossing(sets) => {
            let items = sets
                .iter()
                .map(|s| match s {
                    FixedSet::Point(p) => Field::Rational(p.clone()),
                    FixedSet::Interval(a, b) => Field::List(vec![a.into(), b.into()]),
                })
                .collect();
            ("crossing".into(), Some(Field::List(items)))
        }
    }
}

fn execute(cmd: Command) -> Result<(i32, ResultDocument, Option<String>), Failure> {
    let ok = |doc| Ok((0, doc, None));
    match cmd {
        Command::Eval { f, t } => {
            let f = load(&f)?;
            let t = rational_arg(&t)?;
            ok(ResultDocument::new("ok").with("value", f.evaluate(&t)?))
        }
        Command::Compose { maps } => {
            let mut acc = PlMap::identity();
            for p in maps.iter().rev() {
                acc = PlMap::compose(&load(p)?, &acc);
            }
            ok(ResultDocument::new("ok").with("map", &acc))
        }
        Command::Invert { f } => ok(ResultDocument::new("ok").with("map", &load(&f)?.invert())),
        Command::Power { f, n } => ok(ResultDocument::new("ok").with("map", &load(&f)?.power(n))),
        Command::Classify { f } => {
            let (name, fixed) = class_fields(&load(&f)?.classify());
            let doc = ResultDocument::new("ok").with("class", name);
            ok(match fixed {
                Some(sets) => doc.with("fixed", sets),
                None => doc,
            })
        }
        Command::Boxes { y, z } => {
            let b = linearity_boxes(&load(&y)?, &load(&z)?)?;
            ok(ResultDocument::new("ok")
                .with("alpha", b.alpha)
                .with("beta", b.beta)
                .with("c0", b.c0)
                .with("c1", b.c1))
        }
        Command::Mather { z } => {
            let z = load(&z)?;
            let g = mather_invariant(&z)?;
            let classes = germ_breakpoint_classes(&g);
            ok(ResultDocument::new("ok")
                .with("m0", &g.m0)
                .with("m1", &g.m1)
                .with("t0", &g.t0)
                .with("N", Field::Integer(g.power as i64))
                .with("V", Field::Points(g.v.points().to_vec()))
                .with(
                    "classes",
                    Field::List(classes.iter().map(Field::from).collect()),
                ))
        }
        Command::Conjugate { y, z } => {
            let (y, z) = (load(&y)?, load(&z)?);
            Ok(match are_conjugate(&y, &z)? {
                ConjugacyOutcome::Conjugate {
                    conjugator,
                    rotation,
                } => (
                    0,
                    ResultDocument::new("conjugate")
                        .with("certificate", &conjugator)
                        .with(
                            "rotation",
                            Field::Record(vec![
                                ("k".into(), rotation.k.into()),
                                ("l".into(), rotation.l.into()),
                            ]),
                        ),
                    None,
                ),
                ConjugacyOutcome::NotConjugate(reason) => (1, non_conjugacy(reason), None),
            })
        }
        Command::ConjugatorWithSlope { y, z, q } => {
            let (y, z) = (load(&y)?, load(&z)?);
            let q = rational_arg(&q)?;
            Ok(match conjugator_with_slope(&y, &z, &q)? {
                Some(g) => (
                    0,
                    ResultDocument::new("found").with("certificate", &g),
                    None,
                ),
                None => (
                    1,
                    ResultDocument::new("none")
                        .with("reason", format!("no conjugator has initial slope {q}")),
                    None,
                ),
            })
        }
        Command::Centralizer { z } => {
            let c = centralizer_generator(&load(&z)?)?;
            ok(ResultDocument::new("found")
                .with("generator", &c.generator)
                .with("k_star", c.k_star)
                .with("d", Field::Integer(c.d as i64)))
        }
        Command::Root { z, n } => {
            let z = load(&z)?;
            Ok(match nth_root(&z, n)? {
                RootOutcome::Root(r) => (0, ResultDocument::new("found").with("root", &r), None),
                RootOutcome::IrrationalSlope { slope, n } => (
                    1,
                    ResultDocument::new("none")
                        .with("reason", format!("initial slope {slope} has no rational {} root", root_name(n))),
                    None,
                ),
                RootOutcome::NotInCentralizer { slope, d } => (
                    1,
                    ResultDocument::new("none")
                        .with(
                            "reason",
                            format!("no centralizing element has initial slope {slope}; the centralizer generator is a {d}-th root"),
                        )
                        .with("d", Field::Integer(d as i64)),
                    None,
                ),
            })
        }
        Command::Verify { g, y, z } => {
            let (g, y, z) = (load(&g)?, load(&y)?, load(&z)?);
            Ok(if verify_conjugator(&g, &y, &z) {
                (0, ResultDocument::new("valid"), None)
            } else {
                (
                    1,
                    ResultDocument::new("invalid").with("reason", "g⁻¹ y g differs from z"),
                    None,
                )
            })
        }
        Command::Plot { f, output } => {
            let image = svg::plot(&load(&f)?);
            match output {
                Some(path) => {
                    fs::write(&path, &image)
                        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    ok(ResultDocument::new("written").with("path", path.display().to_string()))
                }
                None => Ok((0, ResultDocument::new("written"), Some(image))),
            }
        }
    }
}

fn non_conjugacy(reason: NonConjugacy) -> ResultDocument {
    let doc = ResultDocument::new("not-conjugate");
    match reason {
        NonConjugacy::ClassMismatch => {
            doc.with("reason", "the maps lie on opposite sides of the diagonal")
        }
        NonConjugacy::SlopeMismatch(s) => doc
            .with("reason", "endpoint slopes differ")
            .with(
                "y_slopes",
                Field::List(vec![s.y_initial.clone().into(), s.y_final.clone().into()]),
            )
            .with(
                "z_slopes",
                Field::List(vec![s.z_initial.into(), s.z_final.into()]),
            ),
        NonConjugacy::InvariantMismatch {
            y_classes,
            z_classes,
        } => doc
            .with("reason", "Mather invariants are not rotation equivalent")
            .with("y_classes", Field::Integer(y_classes as i64))
            .with("z_classes", Field::Integer(z_classes as i64)),
    }
}

/// Runs one command line (including the program name) and returns the exit
/// code together with what should be written to stdout and stderr.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return Outcome {
                code,
                stdout,
                stderr,
                document: None,
            };
        }
    };
    let format = cli.format;
    let (code, doc, raw) = match execute(cli.command) {
        Ok(r) => r,
        Err(Failure::Input(msg)) => (2, ResultDocument::new("error").with("reason", msg), None),
        Err(Failure::Precondition(e)) => (
            2,
            ResultDocument::new("error")
                .with("reason", e.to_string())
                .with("violated", variant_name(&e)),
            None,
        ),
    };
    let rendered = match (raw, format) {
        (Some(image), _) => image,
        (None, OutputFormat::Json) => doc.render_json(),
        (None, OutputFormat::Text) => doc.render_text(),
    };
    let (stdout, stderr) = if code == 2 {
        (String::new(), rendered)
    } else {
        (rendered, String::new())
    };
    Outcome {
        code,
        stdout,
        stderr,
        document: Some(doc),
    }
}
