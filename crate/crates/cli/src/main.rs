use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bincov::brackets::{enumerate_generators, straighten, BracketPoly, BracketPolyJson};
use bincov::covariant::{
    hilbert_conditions, is_covariant, lower_order, BinaryFormSpec, Covariant, CovariantError, CovariantJson,
    Unipotent,
};
use bincov::membership::in_algebra;
use bincov::scalar::Field;
use bincov::symring::{separating_pipeline, PipelineJson};
use bincov::transfer::{symmetrize, Transfer};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "bincov", version, about = "Covariants of binary forms, exactly")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Degree of the binary form (number of points).
    #[arg(long)]
    n: Option<u32>,
    /// Field characteristic: 0 or a prime.
    #[arg(long = "char", default_value_t = 0)]
    p: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct Input {
    /// Input file: JSON or canonical text.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Inline canonical text, instead of --in.
    #[arg(long, conflicts_with = "input")]
    expr: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Crossing-free generators of the bracket algebra.
    Enumerate {
        #[command(flatten)]
        common: Common,
    },
    /// Rewrite a bracket polynomial into crossing-free form.
    Straighten {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: Input,
    },
    /// Symmetrize a regular bracket polynomial and express it in the coefficients.
    Transfer {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: Input,
    },
    /// Separating covariants from the symmetric group action.
    Pipeline {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
    },
    /// `z^-l d^l/dx^l` applied to a covariant (the form itself by default).
    Operator {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        l: u32,
    },
    /// Exact SL2 check with unipotent residuals.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: Input,
    },
    /// Membership in the algebra generated by --gens, with a certificate.
    Member {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: Input,
        /// Generator files; each holds one covariant, an array, or a pipeline report.
        #[arg(long, required = true)]
        gens: Vec<PathBuf>,
    },
    /// Hilbert's differential conditions.
    Hilbert {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: Input,
    },
}

enum Failure {
    Usage(String),
    Condition(String),
}

impl From<CovariantError> for Failure {
    fn from(e: CovariantError) -> Self {
        match e {
            CovariantError::ConditionFailed { .. } => Failure::Condition(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// 0 on success or a true verdict, 1 on a false verdict.
type Outcome = Result<u8, Failure>;

fn need_n(c: &Common) -> Result<u32, Failure> {
    c.n.ok_or_else(|| usage("--n is required"))
}

fn field(c: &Common) -> Result<Field, Failure> {
    Field::new(c.p).map_err(usage)
}

fn read_input(input: &Input) -> Result<String, Failure> {
    match (&input.input, &input.expr) {
        (Some(path), _) => read(path),
        (None, Some(e)) => Ok(e.clone()),
        (None, None) => Err(usage("one of --in or --expr is required")),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

// bracket text starts with '[', so only objects count as JSON here
fn looks_like_json(s: &str) -> bool {
    s.trim_start().starts_with('{')
}

/// A covariant from JSON, or from canonical text graded against `--n` and `--char`.
fn parse_covariant(src: &str, c: &Common) -> Result<Covariant, Failure> {
    if looks_like_json(src) {
        let j: CovariantJson = serde_json::from_str(src).map_err(usage)?;
        let cov = Covariant::from_json(&j)?;
        if c.n.is_some_and(|n| n != j.n) {
            return Err(usage(format!("--n disagrees with the input (n = {})", j.n)));
        }
        return Ok(cov);
    }
    let spec = BinaryFormSpec::with_char(need_n(c)?, c.p)?;
    Ok(Covariant::parse(&spec, src)?)
}

fn load_gens(path: &Path) -> Result<Vec<Covariant>, Failure> {
    let src = read(path)?;
    let v: serde_json::Value = serde_json::from_str(&src).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let list: Vec<CovariantJson> = if v.is_array() {
        serde_json::from_value(v).map_err(usage)?
    } else if v.get("covariants").is_some() {
        serde_json::from_value::<PipelineJson>(v).map_err(usage)?.covariants
    } else {
        vec![serde_json::from_value(v).map_err(usage)?]
    };
    list.iter()
        .map(|j| Covariant::from_json(j).map_err(Failure::from))
        .collect()
}

fn parse_brackets(src: &str, n: u32, field: Field) -> Result<BracketPoly, Failure> {
    if looks_like_json(src) {
        let j: BracketPolyJson = serde_json::from_str(src).map_err(usage)?;
        return BracketPoly::from_json(&j, field).map_err(usage);
    }
    BracketPoly::parse(n, field, src).map_err(usage)
}

fn emit(format: Format, text: impl FnOnce() -> String, value: impl FnOnce() -> serde_json::Value) {
    let out = match format {
        Format::Text => text(),
        Format::Json => serde_json::to_string_pretty(&value()).expect("serializable"),
    };
    // a closed pipe downstream is not our error
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

fn enumerate(c: &Common) -> Outcome {
    let gens = enumerate_generators(need_n(c)?).map_err(usage)?;
    emit(
        c.format,
        || gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("\n"),
        || json!(gens.iter().map(|g| g.to_json()).collect::<Vec<_>>()),
    );
    Ok(0)
}

fn straighten_cmd(c: &Common, input: &Input) -> Outcome {
    let b = parse_brackets(&read_input(input)?, need_n(c)?, field(c)?)?;
    let s = straighten(&b);
    emit(c.format, || s.to_string(), || json!(s.to_json()));
    Ok(0)
}

fn transfer(c: &Common, input: &Input) -> Outcome {
    let n = need_n(c)?;
    let b = parse_brackets(&read_input(input)?, n, field(c)?)?;
    let (first, _) = b.monomials().next().ok_or_else(|| usage("input is zero"))?;
    let (d, r) = (first.regularity_degree(), first.order());
    let Some(d) = d else {
        return Err(usage("input is not regular"));
    };
    for (m, _) in b.monomials() {
        if m.regularity_degree() != Some(d) || m.order() != r {
            return Err(usage(format!("{m} is not regular of degree {d} and order {r}")));
        }
    }
    let spec = BinaryFormSpec::with_char(n, c.p)?;
    let sym = symmetrize(&b);
    if sym.zero_orbit_sum {
        eprintln!("note: orbit sum vanishes in characteristic {}", c.p);
    }
    let mut tr = Transfer::new(&spec);
    let poly = tr
        .to_coefficients(&sym.poly.expand(tr.roots()), d, r)
        .map_err(usage)?;
    let cov = Covariant::with_grade(&spec, poly, d, r, (n as i64 * d as i64 - r as i64) / 2)?;
    emit(c.format, || cov.to_string(), || json!(cov.to_json()));
    Ok(0)
}

fn pipeline(c: &Common, max_degree: u32) -> Outcome {
    let report = separating_pipeline(need_n(c)?, c.p, max_degree).map_err(usage)?;
    emit(
        c.format,
        || {
            let mut out = Vec::new();
            for (cov, br) in report.covariants.iter().zip(&report.brackets) {
                out.push(format!("# degree {}, order {}: {br}", cov.degree(), cov.order()));
                out.push(cov.to_string());
            }
            out.join("\n")
        },
        || json!(report.to_json()),
    );
    Ok(0)
}

fn operator(c: &Common, input: &Input, l: u32) -> Outcome {
    let q = if input.input.is_none() && input.expr.is_none() {
        Covariant::form(&BinaryFormSpec::with_char(need_n(c)?, c.p)?)
    } else {
        parse_covariant(&read_input(input)?, c)?
    };
    if q.spec().characteristic() != c.p {
        return Err(usage("--char disagrees with the input"));
    }
    let out = lower_order(&q, l)?;
    if 2 * l == q.order() {
        eprintln!("note: boundary case l = m0/2, output is an invariant");
    }
    emit(c.format, || out.to_string(), || json!(out.to_json()));
    Ok(0)
}

fn verify(c: &Common, input: &Input) -> Outcome {
    let cov = parse_covariant(&read_input(input)?, c)?;
    let spec = cov.spec();
    let v = is_covariant(spec, cov.poly())?;
    let one = spec.field().one();
    emit(
        c.format,
        || {
            let mut out = vec![format!("covariant: {}", v.covariant)];
            if let Some(r) = &v.reason {
                out.push(format!("reason: {r}"));
            }
            out.push(format!("torus: {}", v.torus_ok));
            out.push(format!("upper residual: {}", v.upper_residual));
            out.push(format!("lower residual: {}", v.lower_residual));
            out.push(format!("upper residual at t=1: {}", v.residual_at(spec, Unipotent::Upper, &one)));
            out.join("\n")
        },
        || json!(v.to_json()),
    );
    Ok(if v.covariant { 0 } else { 1 })
}

fn member(c: &Common, input: &Input, gens: &[PathBuf]) -> Outcome {
    let target = parse_covariant(&read_input(input)?, c)?;
    let mut all = Vec::new();
    for g in gens {
        all.extend(load_gens(g)?);
    }
    let m = in_algebra(&target, &all)?;
    let j = m.to_json(&target);
    emit(
        c.format,
        || match &j {
            bincov::membership::MembershipJson::Yes { expression, .. } => {
                let terms: Vec<String> = expression
                    .iter()
                    .map(|t| {
                        let mut parts = Vec::new();
                        if t.coeff != "1" || t.powers.is_empty() {
                            parts.push(t.coeff.clone());
                        }
                        for p in &t.powers {
                            match p.exponent {
                                1 => parts.push(format!("g{}", p.gen)),
                                e => parts.push(format!("g{}^{e}", p.gen)),
                            }
                        }
                        parts.join("*")
                    })
                    .collect();
                format!("yes\n{}", terms.join(" + "))
            }
            bincov::membership::MembershipJson::No { slice_dim, rank, .. } => {
                format!("no\nslice dimension {slice_dim}, rank {rank}")
            }
        },
        || json!(j),
    );
    Ok(if m.is_member() { 0 } else { 1 })
}

fn hilbert(c: &Common, input: &Input) -> Outcome {
    let cov = parse_covariant(&read_input(input)?, c)?;
    let r = hilbert_conditions(cov.spec(), cov.poly())?;
    emit(
        c.format,
        || {
            format!(
                "isobaric: {}\nD: {}\nDelta: {}\napplicable: {}",
                r.isobaric_ok, r.d_ok, r.delta_ok, r.applicable
            )
        },
        || json!(r),
    );
    Ok(if r.all_ok() { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Enumerate { common } => enumerate(common),
        Cmd::Straighten { common, input } => straighten_cmd(common, input),
        Cmd::Transfer { common, input } => transfer(common, input),
        Cmd::Pipeline { common, max_degree } => pipeline(common, *max_degree),
        Cmd::Operator { common, input, l } => operator(common, input, *l),
        Cmd::Verify { common, input } => verify(common, input),
        Cmd::Member { common, input, gens } => member(common, input, gens),
        Cmd::Hilbert { common, input } => hilbert(common, input),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Condition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
