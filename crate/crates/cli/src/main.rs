//! `superquad`: validate catalog or JSON algebras, compute cohomology and
//! Poisson brackets, and build one-dimensional double extensions.
//!
//! Exit status: 0 on success, 1 when an algebra or extension datum fails
//! validation, 2 on input or usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use superquad_core::algebra::{LieSuperalgebra, Parity, ValidationReport};
use superquad_core::catalog::{self, Params};
use superquad_core::cohomology::{self, CohomologyReport, CohomologyResult, DEFAULT_SIZE_LIMIT};
use superquad_core::extensions::{self, ExtensionDatum, Superderivation};
use superquad_core::format::{self, DerivationDoc, Imported};
use superquad_core::quadratic::{BilinearForm, QuadraticLieSuperalgebra};
use superquad_core::superexterior::{associated_three_form, Cochain, PoissonStructure};
use superquad_core::{scalar, GradedBasis};

#[derive(Parser, Debug)]
#[command(name = "superquad", version, about = "Exact computations with quadratic Lie superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List catalog entries and their parameters.
    List {
        #[command(flatten)]
        out: Output,
    },
    /// Check the Lie superalgebra axioms and, if present, the invariant form.
    Validate {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        out: Output,
    },
    /// Cohomology with trivial coefficients in one degree.
    Cohomology {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = DEFAULT_SIZE_LIMIT)]
        limit: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Betti numbers in degrees 0..=max-degree.
    Betti {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        /// Also print class representatives.
        #[arg(long)]
        representatives: bool,
        #[arg(long, default_value_t = DEFAULT_SIZE_LIMIT)]
        limit: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Super Poisson bracket of two cochains; `I` denotes the associated 3-form.
    Poisson {
        #[command(flatten)]
        target: Target,
        left: String,
        right: String,
        #[command(flatten)]
        out: Output,
    },
    /// Double extension of a quadratic algebra by a skew-supersymmetric
    /// superderivation; writes the result as algebra JSON.
    DoubleExtend {
        #[command(flatten)]
        target: Target,
        /// JSON file `{"degree": 0, "matrix": [[...], ...]}`.
        #[arg(long)]
        derivation: PathBuf,
        /// Labels of the new vector and its dual, e.g. `X3,Z3`.
        #[arg(long, default_value = "e,f")]
        labels: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Write an algebra in the JSON algebra format.
    Export {
        #[command(flatten)]
        target: Target,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct Target {
    /// Catalog key or path to an algebra JSON file.
    target: String,
    /// Parameter binding `name=p/q`; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
}

#[derive(Args, Debug)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A failure with its exit status and one-line diagnostic.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<superquad_core::Error> for Failure {
    fn from(e: superquad_core::Error) -> Self {
        let code = match e {
            superquad_core::Error::InvalidDatum { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

/// A successful report, and whether it records a validation failure.
struct Report {
    body: String,
    invalid: bool,
}

impl Report {
    fn ok(body: String) -> Self {
        Report { body, invalid: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> CliResult<u8> {
    let (report, dest) = match cmd {
        Command::List { out } => (list(out.format)?, out.output),
        Command::Validate { target, out } => (validate(&target, out.format)?, out.output),
        Command::Cohomology {
            target,
            degree,
            limit,
            out,
        } => {
            let g = load_valid(&target)?;
            let r = cohomology::cohomology_with_limit(g.algebra(), degree, limit)?;
            (betti_report(g.algebra(), &[r], true, out.format)?, out.output)
        }
        Command::Betti {
            target,
            max_degree,
            representatives,
            limit,
            out,
        } => {
            let g = load_valid(&target)?;
            let rs = cohomology::betti_table_with_limit(g.algebra(), max_degree, limit)?;
            (betti_report(g.algebra(), &rs, representatives, out.format)?, out.output)
        }
        Command::Poisson {
            target,
            left,
            right,
            out,
        } => (poisson(&target, &left, &right, out.format)?, out.output),
        Command::DoubleExtend {
            target,
            derivation,
            labels,
            output,
        } => (double_extend(&target, &derivation, &labels)?, output),
        Command::Export { target, output } => {
            let body = match load(&target)? {
                Imported::Quadratic(q) => format::export_quadratic(&q)?,
                Imported::Plain(g) => format::export_algebra(&g)?,
            };
            (Report::ok(body), output)
        }
    };
    emit(&report.body, dest.as_deref())?;
    Ok(if report.invalid { 1 } else { 0 })
}

fn emit(body: &str, dest: Option<&Path>) -> CliResult<()> {
    let mut text = body.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match dest {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_params(bindings: &[String]) -> CliResult<Params> {
    let mut out = Params::new();
    for b in bindings {
        let (k, v) = b
            .split_once('=')
            .ok_or_else(|| Failure::input(format!("parameter binding `{b}` is not NAME=VALUE")))?;
        let k = k.trim();
        if out.insert(k.to_string(), scalar::parse(v)?).is_some() {
            return Err(Failure::input(format!("parameter `{k}` bound twice")));
        }
    }
    Ok(out)
}

/// Catalog keys take precedence over file paths.
fn load(t: &Target) -> CliResult<Imported> {
    let params = parse_params(&t.params)?;
    if catalog::entry(&t.target).is_ok() {
        return Ok(match catalog::build(&t.target, &params)? {
            catalog::Built::Quadratic(q) => Imported::Quadratic(q),
            catalog::Built::Plain(g) => Imported::Plain(g),
        });
    }
    let path = Path::new(&t.target);
    if !path.is_file() {
        return Err(Failure::input(format!(
            "`{}` is neither a catalog key nor a readable file",
            t.target
        )));
    }
    if !params.is_empty() {
        return Err(Failure::input("--param applies only to catalog entries"));
    }
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(format::import_algebra(&text)?)
}

fn report_of(g: &Imported) -> ValidationReport {
    match g {
        Imported::Quadratic(q) => q.validate_quadratic(),
        Imported::Plain(a) => a.validate(),
    }
}

fn describe_violation(g: &LieSuperalgebra, r: &ValidationReport) -> String {
    let v = r.first().expect("non-empty report");
    let labels: Vec<&str> = v.witness.iter().map(|&i| g.basis().label(i)).collect();
    format!("{} fails at ({}): {}", v.axiom, labels.join(", "), v.detail)
}

/// Loads and refuses algebras that fail validation (exit 1).
fn load_valid(t: &Target) -> CliResult<Imported> {
    let g = load(t)?;
    let r = report_of(&g);
    if !r.is_ok() {
        return Err(Failure {
            code: 1,
            message: describe_violation(g.algebra(), &r),
        });
    }
    Ok(g)
}

fn list(fmt: Format) -> CliResult<Report> {
    let entries = catalog::list();
    let body = match fmt {
        Format::Json => {
            let items: Vec<_> = entries
                .iter()
                .map(|e| {
                    json!({
                        "key": e.key,
                        "description": e.description,
                        "quadratic": e.has_form,
                        "params": e.params.iter().map(|p| json!({
                            "name": p.name,
                            "default": scalar::format(&p.default),
                            "constraint": p.constraint,
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            pretty(&json!({ "schema": 1, "entries": items }))?
        }
        Format::Text => {
            let width = entries.iter().map(|e| e.key.len()).max().unwrap_or(0);
            let mut s = String::new();
            for e in &entries {
                let params = catalog::format_params(&e.default_params());
                let params = if params.is_empty() { String::new() } else { format!(" [{params}]") };
                s.push_str(&format!("{:width$}  {}{params}\n", e.key, e.description));
            }
            s
        }
    };
    Ok(Report::ok(body))
}

fn validate(t: &Target, fmt: Format) -> CliResult<Report> {
    let g = load(t)?;
    let r = report_of(&g);
    let kind = if g.quadratic().is_some() {
        "quadratic Lie superalgebra"
    } else {
        "Lie superalgebra"
    };
    let algebra = g.algebra();
    let body = match fmt {
        Format::Json => {
            let violations: Vec<_> = r
                .violations
                .iter()
                .map(|v| {
                    json!({
                        "axiom": v.axiom.to_string(),
                        "witness": v.witness.iter().map(|&i| algebra.basis().label(i)).collect::<Vec<_>>(),
                        "detail": v.detail,
                    })
                })
                .collect();
            pretty(&json!({
                "schema": 1,
                "algebra": algebra.name(),
                "kind": kind,
                "ok": r.is_ok(),
                "violations": violations,
            }))?
        }
        Format::Text if r.is_ok() => format!("{kind}: OK"),
        Format::Text => format!("{kind}: FAILED\n{}", describe_violation(algebra, &r)),
    };
    Ok(Report {
        body,
        invalid: !r.is_ok(),
    })
}

fn betti_report(
    g: &LieSuperalgebra,
    rs: &[CohomologyResult],
    representatives: bool,
    fmt: Format,
) -> CliResult<Report> {
    let body = match fmt {
        Format::Json => {
            let mut report = serde_json::to_value(CohomologyReport::new(g.name(), rs))
                .map_err(superquad_core::Error::from)?;
            // Labelled forms next to the index-based ones.
            for (d, r) in report["degrees"]
                .as_array_mut()
                .expect("degrees array")
                .iter_mut()
                .zip(rs)
            {
                d["representatives_labelled"] = r
                    .representatives
                    .iter()
                    .map(|c| c.display(g.basis()).to_string())
                    .collect();
            }
            pretty(&report)?
        }
        Format::Text => {
            let mut s = format!("algebra: {}\n", g.name());
            s.push_str(&format!(
                "{:>3} {:>10} {:>10} {:>10} {:>6}\n",
                "k", "dim C^k", "dim Z^k", "dim B^k", "b_k"
            ));
            for r in rs {
                s.push_str(&format!(
                    "{:>3} {:>10} {:>10} {:>10} {:>6}\n",
                    r.degree, r.dim_cochains, r.dim_cocycles, r.dim_coboundaries, r.betti
                ));
            }
            if representatives {
                for r in rs {
                    s.push_str(&format!("H^{} representatives:\n", r.degree));
                    for c in &r.representatives {
                        s.push_str(&format!("  {}\n", c.display(g.basis())));
                    }
                }
            }
            for r in rs {
                s.push_str(&format!("b_{} = {}\n", r.degree, r.betti));
            }
            s
        }
    };
    Ok(Report::ok(body))
}

fn parse_cochain(q: &QuadraticLieSuperalgebra, text: &str) -> CliResult<Cochain> {
    if text.trim() == "I" {
        return Ok(associated_three_form(q));
    }
    Ok(Cochain::parse_labelled(q.algebra.basis(), text)?)
}

fn poisson(t: &Target, left: &str, right: &str, fmt: Format) -> CliResult<Report> {
    let g = load_valid(t)?;
    let q = g
        .quadratic()
        .ok_or_else(|| Failure::input(format!("`{}` carries no invariant form", g.algebra().name())))?;
    let a = parse_cochain(q, left)?;
    let b = parse_cochain(q, right)?;
    let p = PoissonStructure::from_quadratic(q)?;
    let c = p.bracket(&a, &b)?;
    let basis = q.algebra.basis();
    let body = match fmt {
        Format::Json => pretty(&json!({
            "schema": 1,
            "algebra": q.name(),
            "left": a.display(basis).to_string(),
            "right": b.display(basis).to_string(),
            "bracket": c.display(basis).to_string(),
            "bracket_raw": c.render(),
        }))?,
        Format::Text => format!(
            "{{{}, {}}} = {}",
            a.display(basis),
            b.display(basis),
            c.display(basis)
        ),
    };
    Ok(Report::ok(body))
}

fn double_extend(t: &Target, derivation: &Path, labels: &str) -> CliResult<Report> {
    let g = load_valid(t)?;
    let q = match g {
        Imported::Quadratic(q) => q,
        Imported::Plain(a) => {
            return Err(Failure::input(format!("`{}` carries no invariant form", a.name())))
        }
    };
    let (e, f) = labels
        .split_once(',')
        .map(|(a, b)| (a.trim(), b.trim()))
        .filter(|(a, b)| !a.is_empty() && !b.is_empty())
        .ok_or_else(|| Failure::input("--labels expects two comma-separated labels"))?;
    let text = fs::read_to_string(derivation)
        .map_err(|err| Failure::input(format!("cannot read {}: {err}", derivation.display())))?;
    let doc = DerivationDoc::from_json(&text)?;
    let d = doc.matrix()?;
    if d.rows() != q.dim() || d.cols() != q.dim() {
        return Err(Failure::input(format!(
            "derivation is {}x{}, base has dimension {}",
            d.rows(),
            d.cols(),
            q.dim()
        )));
    }
    let out = match doc.parity()? {
        Parity::Even => extensions::one_dim_double_extension_labeled(&q, &d, (e, f))?,
        Parity::Odd => {
            // h spanned by one odd vector with zero bracket.
            let h = LieSuperalgebra::new("odd_line", GradedBasis::from_labels(&[], &[e])?);
            let datum = ExtensionDatum {
                base: q,
                h,
                gamma: BilinearForm::zero(1),
                psi: vec![Superderivation::new(d, Parity::Odd)],
                dual_labels: vec![f.to_string()],
            };
            extensions::double_extension(&datum)?
        }
    };
    Ok(Report::ok(format::export_quadratic(&out)?))
}

fn pretty(v: &serde_json::Value) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(v).map_err(superquad_core::Error::from)?)
}
