//! `maxcurve`: command-line access to semigroups, maximal elements, gaps and
//! verification for the curves `X(a,b,n,s)` and `Y(n,s)`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use maxcurve::curve::{derive, CurveParams, DerivedConstants, PointVector};
use maxcurve::error::Error;
use maxcurve::gaps::{
    count_gaps_two_points, count_gaps_via_complement, gap_count_upper_bound, gaps_in_simplex,
    gaps_via_lambda, pure_gaps_in_simplex, pure_gaps_via_lambda, simplex_bound,
};
use maxcurve::maximal::{
    count_lambda, enumerate_classical_gamma, enumerate_classical_lambda, gamma_hat_in_c,
    lambda_hat_in_c,
};
use maxcurve::membership::Membership;
use maxcurve::oracle::consistency_report;
use maxcurve::semigroup::NumericalSemigroup;

const SCHEMA_VERSION: &str = "1";
/// Largest integer a JSON double represents exactly.
const JSON_SAFE: u64 = 1 << 53;

#[derive(Parser)]
#[command(
    name = "maxcurve",
    version,
    about = "Weierstrass semigroups at several points of X(a,b,n,s) and Y(n,s)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validated parameters, derived constants and H(P_inf).
    Params(Common),
    /// Absolute maximal elements in the fundamental region, or the minimal generating set with --classical.
    Gamma(WithM),
    /// Relative maximal elements in the fundamental region, or Λ with --classical.
    Lambda(WithM),
    /// Gaps (or pure gaps with --pure) in lexicographic order.
    Gaps(GapsArgs),
    /// Membership of one vector, with witnesses.
    Member(MemberArgs),
    /// Closed-form and enumerated counts.
    Counts(WithM),
    /// Cross-check formulas against the brute-force oracle.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "X", alias = "x")]
    X,
    #[value(name = "Y", alias = "y")]
    Y,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    p: Option<i64>,
    #[arg(long)]
    a: Option<i64>,
    #[arg(long)]
    b: Option<i64>,
    #[arg(long)]
    q: Option<i64>,
    #[arg(long)]
    n: i64,
    #[arg(long)]
    s: i64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Worker threads for enumeration; output does not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct WithM {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long)]
    classical: bool,
}

#[derive(Args)]
struct GapsArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long)]
    pure: bool,
    /// Scan the simplex of this degree with the membership test instead of
    /// expanding Λ; must be at least 2g - 1.
    #[arg(long)]
    box_sum: Option<i64>,
}

#[derive(Args)]
struct MemberArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Comma-separated coordinates, P_inf first.
    #[arg(
        long,
        allow_hyphen_values = true,
        value_delimiter = ',',
        required = true
    )]
    vector: Vec<i64>,
    #[arg(long)]
    classical: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Degree bound of the simplex on which the oracle is compared; defaults to 2g.
    #[arg(long)]
    box_sum: Option<i64>,
}

#[derive(Serialize)]
struct OutputRecord<'a> {
    schema_version: &'static str,
    command: &'static str,
    params: &'a CurveParams,
    derived: &'a DerivedConstants,
    payload: Value,
}

enum Failure {
    Invalid(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(format!("{e:?}: {e}"))
    }
}

/// What a command produced, before formatting.
enum Payload {
    Vectors {
        key: &'static str,
        vectors: BTreeSet<PointVector>,
        extra: BTreeMap<&'static str, Value>,
    },
    Fields(BTreeMap<&'static str, Value>),
}

impl Common {
    fn params(&self) -> Result<CurveParams, Failure> {
        let need = |v: Option<i64>, name: &str| {
            v.ok_or_else(|| Failure::Invalid(format!("--{name} is required for this family")))
        };
        let params = match self.family {
            FamilyArg::X => CurveParams::x(
                need(self.p, "p")?,
                need(self.a, "a")?,
                need(self.b, "b")?,
                self.n,
                self.s,
            )?,
            FamilyArg::Y => CurveParams::y(need(self.q, "q")?, self.n, self.s)?,
        };
        Ok(params)
    }
}

/// Replaces integers outside the exactly representable JSON range by strings.
fn json_safe(value: Value) -> Value {
    match value {
        Value::Number(n) => {
            let big = n.as_i64().is_none_or(|v| v.unsigned_abs() > JSON_SAFE);
            if big {
                Value::String(n.to_string())
            } else {
                Value::Number(n)
            }
        }
        Value::Array(items) => Value::Array(items.into_iter().map(json_safe).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, json_safe(v))).collect())
        }
        other => other,
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn render(
    format: Format,
    command: &'static str,
    params: &CurveParams,
    dc: &DerivedConstants,
    payload: Payload,
) -> String {
    match format {
        Format::Json => {
            let body = match payload {
                Payload::Vectors {
                    key,
                    vectors,
                    extra,
                } => {
                    let mut map = serde_json::Map::new();
                    map.insert("count".to_owned(), Value::from(vectors.len()));
                    for (k, v) in extra {
                        map.insert(k.to_owned(), v);
                    }
                    map.insert(key.to_owned(), to_value(&vectors));
                    Value::Object(map)
                }
                Payload::Fields(fields) => {
                    Value::Object(fields.into_iter().map(|(k, v)| (k.to_owned(), v)).collect())
                }
            };
            let record = OutputRecord {
                schema_version: SCHEMA_VERSION,
                command,
                params,
                derived: dc,
                payload: body,
            };
            let mut text =
                serde_json::to_string_pretty(&json_safe(to_value(&record))).expect("serializable");
            text.push('\n');
            text
        }
        Format::Tsv => {
            let mut text = String::new();
            match payload {
                Payload::Vectors { vectors, .. } => {
                    for v in &vectors {
                        let row: Vec<String> = v.coords().iter().map(i64::to_string).collect();
                        writeln!(text, "{}", row.join("\t")).unwrap();
                    }
                }
                Payload::Fields(fields) => {
                    for (k, v) in fields {
                        let cell = match v {
                            Value::String(s) => s,
                            other => other.to_string(),
                        };
                        writeln!(text, "{k}\t{cell}").unwrap();
                    }
                }
            }
            text
        }
    }
}

fn run(command: Command) -> Result<String, (Failure, Option<String>)> {
    let (common, name) = match &command {
        Command::Params(c) => (c, "params"),
        Command::Gamma(a) => (&a.common, "gamma"),
        Command::Lambda(a) => (&a.common, "lambda"),
        Command::Gaps(a) => (&a.common, "gaps"),
        Command::Member(a) => (&a.common, "member"),
        Command::Counts(a) => (&a.common, "counts"),
        Command::Verify(a) => (&a.common, "verify"),
    };
    let invalid = |f: Failure| (f, None);
    let params = common.params().map_err(invalid)?;
    let dc = derive(&params).map_err(|e| invalid(e.into()))?;
    let format = common.format;
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(jobs) = common.jobs {
            if jobs == 0 {
                return Err(invalid(Failure::Invalid(
                    "--jobs must be positive".to_owned(),
                )));
            }
            builder = builder.num_threads(jobs);
        }
        builder
            .build()
            .map_err(|e| invalid(Failure::Invalid(e.to_string())))?
    };
    let mut verification_failed = false;
    let payload = pool
        .install(|| execute(&command, &dc, &mut verification_failed))
        .map_err(invalid)?;
    let text = render(format, name, &params, &dc, payload);
    if verification_failed {
        return Err((Failure::Verification, Some(text)));
    }
    Ok(text)
}

fn execute(
    command: &Command,
    dc: &DerivedConstants,
    verification_failed: &mut bool,
) -> Result<Payload, Failure> {
    let payload = match command {
        Command::Params(_) => {
            let semigroup = NumericalSemigroup::from_generators(&dc.gens())?;
            let mut fields = BTreeMap::new();
            fields.insert("generators", to_value(&dc.gens()));
            fields.insert("genus", Value::from(dc.genus));
            fields.insert("frobenius", Value::from(semigroup.frobenius()));
            fields.insert("gaps", to_value(&semigroup.gaps()));
            fields.insert("max_m", Value::from(dc.max_m));
            Payload::Fields(fields)
        }
        Command::Gamma(a) => {
            let vectors = if a.classical {
                enumerate_classical_gamma(dc, a.m)?
            } else {
                gamma_hat_in_c(dc, a.m)?
            };
            Payload::Vectors {
                key: "vectors",
                vectors,
                extra: extra_m(a.m, a.classical),
            }
        }
        Command::Lambda(a) => {
            let vectors = if a.classical {
                enumerate_classical_lambda(dc, a.m)?
            } else {
                lambda_hat_in_c(dc, a.m)?
            };
            Payload::Vectors {
                key: "vectors",
                vectors,
                extra: extra_m(a.m, a.classical),
            }
        }
        Command::Gaps(a) => {
            let vectors = match a.box_sum {
                None if a.pure => pure_gaps_via_lambda(dc, a.m)?,
                None => gaps_via_lambda(dc, a.m)?,
                Some(bound) => {
                    if bound < simplex_bound(dc) {
                        return Err(Failure::Invalid(format!(
                            "--box-sum {bound} is below the gap bound 2g - 1 = {}",
                            simplex_bound(dc)
                        )));
                    }
                    if a.pure {
                        pure_gaps_in_simplex(dc, a.m, bound)?
                    } else {
                        gaps_in_simplex(dc, a.m, bound)?
                    }
                }
            };
            let mut extra = BTreeMap::new();
            extra.insert("m", Value::from(a.m));
            extra.insert("pure", Value::from(a.pure));
            Payload::Vectors {
                key: "vectors",
                vectors,
                extra,
            }
        }
        Command::Member(a) => {
            let engine = Membership::new(dc, a.m)?;
            let alpha = PointVector::new(a.vector.clone());
            let mut fields = BTreeMap::new();
            fields.insert("vector", to_value(&alpha));
            fields.insert("classical", Value::from(a.classical));
            if a.classical {
                fields.insert("member", Value::from(engine.in_classical_h(&alpha)?));
            } else {
                let verdict = engine.in_generalized_h(&alpha)?;
                fields.insert("member", Value::from(verdict.member));
                fields.insert("failing_coordinate", to_value(&verdict.failing_coordinate));
                fields.insert("witnesses", to_value(&verdict.witnesses));
            }
            Payload::Fields(fields)
        }
        Command::Counts(a) => {
            let mut fields = BTreeMap::new();
            fields.insert("m", Value::from(a.m));
            fields.insert(
                "lambda_formula",
                Value::String(count_lambda(dc, a.m)?.to_string()),
            );
            fields.insert(
                "lambda_enumerated",
                Value::from(enumerate_classical_lambda(dc, a.m)?.len()),
            );
            fields.insert(
                "gamma_hat_in_c",
                Value::from(gamma_hat_in_c(dc, a.m)?.len()),
            );
            fields.insert(
                "gap_count",
                Value::from(count_gaps_via_complement(dc, a.m)?),
            );
            fields.insert(
                "gap_upper_bound",
                Value::String(gap_count_upper_bound(dc, a.m)?.to_string()),
            );
            if a.m == 1 {
                fields.insert(
                    "two_point_gap_count",
                    Value::from(count_gaps_two_points(dc)?),
                );
            }
            Payload::Fields(fields)
        }
        Command::Verify(a) => {
            let bound = a.box_sum.unwrap_or(2 * dc.genus);
            let checks = consistency_report(dc, a.m, bound)?;
            let pass = checks.values().all(|&ok| ok);
            *verification_failed = !pass;
            let mut fields = BTreeMap::new();
            fields.insert("m", Value::from(a.m));
            fields.insert("box_sum", Value::from(bound));
            fields.insert("checks", to_value(&checks));
            fields.insert("pass", Value::from(pass));
            Payload::Fields(fields)
        }
    };
    Ok(payload)
}

fn extra_m(m: usize, classical: bool) -> BTreeMap<&'static str, Value> {
    let mut extra = BTreeMap::new();
    extra.insert("m", Value::from(m));
    extra.insert("classical", Value::from(classical));
    extra
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err((Failure::Verification, text)) => {
            if let Some(text) = text {
                print!("{text}");
            }
            eprintln!("error: verification failed");
            ExitCode::from(1)
        }
        Err((Failure::Invalid(msg), _)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
