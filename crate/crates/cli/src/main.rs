//! `waring`: command-line front end for the waring-forms library.
//!
//! Every command prints either a human-readable summary or, with `--json`, a
//! single JSON object tagged with the schema version `waring-forms/1`.
//! Exit status: 0 on success, 1 on a domain error or a failed verification,
//! 2 on a usage error.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use waring_forms::apolarity::{
    apolar_pair, border_rank, catalecticant, decompose, forbidden_probe, waring_rank, Decomposition,
    RankCertificate,
};
use waring_forms::binpoly::{parse_form, BinaryForm, LinearForm};
use waring_forms::exactla::{self, Matrix};
use waring_forms::hypersurface::{
    context_make, defining_gradient, defining_value, degree_of_equation, minors, probe_singular, q_form,
};
use waring_forms::partitions::{
    annihilation_check, conormal_sample, deg_delta, deg_dual, dim_delta, dim_dual, dual_included,
    refines, Partition,
};
use waring_forms::strata::{
    rank_raising_chain, sample_rank_r, special_point, stratum_census, tangent_dimension, Specialization,
    DEFAULT_HEIGHT,
};
use waring_forms::verify::{self, Suite, VerifyOptions};
use waring_forms::{seeded_rng, Error, Field, Result, Scalar};

const SCHEMA: &str = "waring-forms/1";

#[derive(Parser, Debug)]
#[command(name = "waring", version, about = "Exact Waring ranks and rank strata of binary forms")]
struct Cli {
    /// Base field: `q` for the rationals or `fp:<p>` for a prime field.
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// Seed for randomized commands; echoed in the output.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Number of random samples for sampling commands.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Coefficient height of random data.
    #[arg(long, global = true)]
    height: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Waring rank over the algebraic closure, with its certificate.
    Rank { form: String },
    /// Rank of the most square catalecticant.
    BorderRank { form: String },
    /// The two generators of the apolar ideal.
    Apolar { form: String },
    /// The catalecticant matrix of order e.
    Cat {
        form: String,
        #[arg(long)]
        e: usize,
    },
    /// An explicit decomposition into powers of linear forms, when one exists
    /// over the base field.
    Decompose { form: String },
    /// Ranks of f and of f + c l^d.
    Forbidden {
        form: String,
        /// The linear form l, e.g. `x + 2*y`.
        linear: String,
        /// The coefficient c, e.g. `3/2`.
        c: String,
    },
    /// Multiple root loci and their duals.
    Partition {
        #[command(subcommand)]
        op: PartitionOp,
    },
    /// A random form of rank exactly r.
    Sample {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
    },
    /// Ranks of random points of the stratum of rank d - k and its degenerations.
    Census {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
    },
    /// Tangent dimensions of the parametrization of the stratum of rank d - k.
    Tangent {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Special::General)]
        special: Special,
    },
    /// Adds powers of linear forms, one rank at a time, until the rank is d.
    Chain { form: String },
    /// The hypersurface of forms of degree 2k+1 and rank k+2.
    Hyp {
        #[command(subcommand)]
        op: HypOp,
    },
    /// Runs the acceptance checks.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        /// Wall-clock budget in seconds; an exhausted budget gives a partial report.
        #[arg(long)]
        budget: Option<u64>,
        /// Restricts the hypersurface checks to one k.
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum PartitionOp {
    /// Dimension of the locus of forms with root multiplicities λ.
    Dim { lambda: String },
    /// Dimension of its dual variety.
    DimDual { lambda: String },
    /// Degree of the locus.
    Deg { lambda: String },
    /// Degree of the dual variety.
    DegDual { lambda: String },
    /// Whether mu refines lambda.
    Refines { mu: String, lambda: String },
    /// Whether the dual of the locus of lambda lies in the dual of the locus of mu.
    DualIncl { lambda: String, mu: String },
    /// A random conormal point and the annihilation check.
    Conormal { lambda: String },
}

#[derive(Subcommand, Debug)]
enum HypOp {
    /// The defining equation at a form of degree 2k+1.
    Value { form: String },
    /// Its gradient in the normalized coordinates.
    Grad { form: String },
    /// The signed maximal minors and the form q they define.
    Minors { form: String },
    /// The degree 2k(k+1) of the equation.
    Degree {
        #[arg(long)]
        k: usize,
    },
    /// How often the equation and its gradient vanish at forms of a given rank.
    ProbeSingular {
        #[arg(long)]
        k: usize,
        /// Defaults to k.
        #[arg(long)]
        rank: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Special {
    General,
    #[value(name = "g-eq-l0")]
    GEqL0,
    #[value(name = "li-eq-lj")]
    LiEqLj,
}

impl From<Special> for Specialization {
    fn from(s: Special) -> Specialization {
        match s {
            Special::General => Specialization::General,
            Special::GEqL0 => Specialization::GEqualsL0,
            Special::LiEqLj => Specialization::Coincident,
        }
    }
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What a command produced: the JSON object and the exit status.
struct Output {
    body: Map<String, Value>,
    text: Option<String>,
    ok: bool,
}

impl Output {
    fn new(body: Value) -> Output {
        let Value::Object(body) = body else {
            unreachable!("command bodies are objects")
        };
        Output { body, text: None, ok: true }
    }
}

fn s(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

fn scalars(xs: &[Scalar]) -> Value {
    Value::Array(xs.iter().map(s).collect())
}

fn form(f: &BinaryForm) -> Value {
    Value::String(f.to_string())
}

fn matrix(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| s(m.get(i, j))).collect()))
            .collect(),
    )
}

fn counts(map: &BTreeMap<usize, usize>) -> Value {
    Value::Object(map.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn certificate(c: &RankCertificate) -> Value {
    json!({
        "rank": c.rank,
        "g1": form(&c.g1),
        "g1_squarefree": c.g1_squarefree,
        "g1_profile": c.g1_profile.entries,
        "d1": c.d1,
        "d2": c.d2,
    })
}

fn linear(text: &str, field: Field) -> Result<LinearForm> {
    let l = parse_form(text, field)?;
    if l.degree() != 1 {
        return Err(Error::Degree(format!("expected a linear form, got degree {}", l.degree())));
    }
    LinearForm::new(l.coeff(0).clone(), l.coeff(1).clone())
}

fn scalar(text: &str, field: Field) -> Result<Scalar> {
    let c = parse_form(text, field)?;
    if c.degree() != 0 {
        return Err(Error::Degree(format!("expected a number, got a form of degree {}", c.degree())));
    }
    Ok(c.coeff(0).clone())
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let field = Field::from_spec(&cli.field)?;
    let height = cli.height.unwrap_or(DEFAULT_HEIGHT);
    let mut rng = seeded_rng(cli.seed);
    let parse = |t: &str| parse_form(t, field);
    let out = match &cli.command {
        Command::Rank { form: text } => {
            let f = parse(text)?;
            let cert = waring_rank(&f)?;
            let mut body = json!({ "form": form(&f), "degree": f.degree() });
            body.as_object_mut().unwrap().extend(certificate(&cert).as_object().unwrap().clone());
            Output::new(body)
        }
        Command::BorderRank { form: text } => {
            let f = parse(text)?;
            Output::new(json!({ "form": form(&f), "degree": f.degree(), "border_rank": border_rank(&f)? }))
        }
        Command::Apolar { form: text } => {
            let f = parse(text)?;
            let pair = apolar_pair(&f)?;
            Output::new(json!({
                "form": form(&f),
                "degree": f.degree(),
                "g1": form(&pair.g1),
                "g2": form(&pair.g2),
                "d1": pair.d1(),
                "d2": pair.d2(),
            }))
        }
        Command::Cat { form: text, e } => {
            let f = parse(text)?;
            let m = catalecticant(&f, *e)?;
            Output::new(json!({
                "form": form(&f),
                "e": e,
                "matrix": matrix(&m),
                "rank": exactla::rank(&m),
            }))
        }
        Command::Decompose { form: text } => {
            let f = parse(text)?;
            let body = match decompose(&f, &mut rng)? {
                Decomposition::Split(dec) => json!({
                    "form": form(&f),
                    "seed": cli.seed,
                    "kind": "split",
                    "rank": dec.len(),
                    "terms": dec.terms.iter().map(|(c, l)| json!({
                        "coefficient": s(c),
                        "linear": l.to_string(),
                    })).collect::<Vec<_>>(),
                }),
                Decomposition::CertificateOnly { certificate: cert, generator } => json!({
                    "form": form(&f),
                    "seed": cli.seed,
                    "kind": "certificate-only",
                    "rank": cert.rank,
                    "certificate": certificate(&cert),
                    "generator": form(&generator),
                }),
            };
            Output::new(body)
        }
        Command::Forbidden { form: text, linear: l, c } => {
            let f = parse(text)?;
            let l = linear(l, field)?;
            let c = scalar(c, field)?;
            let (before, after) = forbidden_probe(&f, &l, &c)?;
            Output::new(json!({
                "form": form(&f),
                "linear": l.to_string(),
                "c": s(&c),
                "rank_before": before,
                "rank_after": after,
            }))
        }
        Command::Partition { op } => partition(op, cli, field, height)?,
        Command::Sample { d, r } => {
            let (f, cert) = sample_rank_r(*d, *r, field, height, &mut rng)?;
            Output::new(json!({
                "seed": cli.seed,
                "d": d,
                "r": r,
                "form": form(&f),
                "certificate": certificate(&cert),
            }))
        }
        Command::Census { d, k } => {
            let samples = cli.samples.unwrap_or(200);
            let c = stratum_census(*d, *k, samples, field, height, &mut rng)?;
            let by: Map<String, Value> = c
                .by_specialization
                .iter()
                .map(|(sp, m)| (sp.name().to_string(), counts(m)))
                .collect();
            let mut out = Output::new(json!({
                "seed": cli.seed,
                "d": d,
                "k": k,
                "samples": samples,
                "frequencies": counts(&c.frequencies),
                "by_specialization": by,
                "flagged": c.flagged.iter().map(|fl| json!({
                    "specialization": fl.special.name(),
                    "rank": fl.rank,
                    "form": form(&fl.form),
                })).collect::<Vec<_>>(),
                "border_violations": c.border_violations,
            }));
            out.ok = c.flagged.is_empty() && c.border_violations == 0;
            out
        }
        Command::Tangent { d, k, special } => {
            let samples = cli.samples.unwrap_or(1);
            let mut dims = BTreeMap::new();
            let mut first = None;
            for _ in 0..samples {
                let p = special_point(*d, *k, (*special).into(), field, height, &mut rng)?;
                *dims.entry(tangent_dimension(&p)).or_insert(0) += 1;
                first.get_or_insert(p.f);
            }
            Output::new(json!({
                "seed": cli.seed,
                "d": d,
                "k": k,
                "specialization": Specialization::from(*special).name(),
                "samples": samples,
                "first_point": first.as_ref().map(form),
                "dimensions": counts(&dims),
            }))
        }
        Command::Chain { form: text } => {
            let f = parse(text)?;
            let start = waring_rank(&f)?.rank;
            let steps = rank_raising_chain(&f, height, &mut rng)?;
            let mut end = f.clone();
            for st in &steps {
                end = end.add(&waring_forms::binpoly::power_of_linear(&st.l, f.degree(), f.tag()).scale(&st.c));
            }
            Output::new(json!({
                "seed": cli.seed,
                "form": form(&f),
                "start_rank": start,
                "steps": steps.iter().map(|st| json!({
                    "linear": st.l.to_string(),
                    "c": s(&st.c),
                    "rank": st.rank,
                })).collect::<Vec<_>>(),
                "final_form": form(&end),
            }))
        }
        Command::Hyp { op } => hyp(op, cli, field, height)?,
        Command::Verify { suite, budget, k } => {
            let options = VerifyOptions {
                seed: cli.seed,
                budget: budget.map(Duration::from_secs),
                k: *k,
            };
            let report = verify::run(*suite, &options)?;
            let mut out = Output::new(json!({
                "seed": report.seed,
                "suite": report.suite.name(),
                "partial": report.partial,
                "passed": report.passed(),
                "criteria": report.criteria.iter().map(|c| json!({
                    "id": c.id,
                    "title": c.title,
                    "status": c.status.name(),
                    "checks": c.checks,
                    "failures": c.failures,
                    "notes": c.notes,
                })).collect::<Vec<_>>(),
            }));
            out.text = Some(report.to_string());
            out.ok = report.passed();
            out
        }
    };
    Ok(out)
}

fn partition(op: &PartitionOp, cli: &Cli, field: Field, height: u64) -> Result<Output> {
    let p = |t: &str| t.parse::<Partition>();
    Ok(match op {
        PartitionOp::Dim { lambda } => {
            let l = p(lambda)?;
            Output::new(json!({ "partition": l.to_string(), "dim": dim_delta(&l) }))
        }
        PartitionOp::DimDual { lambda } => {
            let l = p(lambda)?;
            Output::new(json!({ "partition": l.to_string(), "dim_dual": dim_dual(&l)? }))
        }
        PartitionOp::Deg { lambda } => {
            let l = p(lambda)?;
            Output::new(json!({ "partition": l.to_string(), "deg": deg_delta(&l).to_string() }))
        }
        PartitionOp::DegDual { lambda } => {
            let l = p(lambda)?;
            Output::new(json!({ "partition": l.to_string(), "deg_dual": deg_dual(&l)?.to_string() }))
        }
        PartitionOp::Refines { mu, lambda } => {
            let (m, l) = (p(mu)?, p(lambda)?);
            Output::new(json!({ "mu": m.to_string(), "lambda": l.to_string(), "refines": refines(&m, &l)? }))
        }
        PartitionOp::DualIncl { lambda, mu } => {
            let (l, m) = (p(lambda)?, p(mu)?);
            Output::new(json!({ "lambda": l.to_string(), "mu": m.to_string(), "included": dual_included(&l, &m)? }))
        }
        PartitionOp::Conormal { lambda } => {
            let l = p(lambda)?;
            let mut rng = seeded_rng(cli.seed);
            let sample = conormal_sample(&l, field, height, &mut rng)?;
            Output::new(json!({
                "seed": cli.seed,
                "partition": l.to_string(),
                "points": sample.points.iter().map(|(a, b)| json!([s(a), s(b)])).collect::<Vec<_>>(),
                "f": form(&sample.f),
                "g": form(&sample.g),
                "annihilated": annihilation_check(&sample)?,
            }))
        }
    })
}

fn k_of_form(f: &BinaryForm) -> Result<usize> {
    let d = f.degree();
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::Degree(format!("expected odd degree 2k+1 >= 3, got {d}")));
    }
    Ok((d - 1) / 2)
}

fn hyp(op: &HypOp, cli: &Cli, field: Field, height: u64) -> Result<Output> {
    Ok(match op {
        HypOp::Value { form: text } => {
            let f = parse_form(text, field)?;
            let ctx = context_make(k_of_form(&f)?)?;
            Output::new(json!({ "form": form(&f), "k": ctx.k(), "value": s(&defining_value(&ctx, &f)?) }))
        }
        HypOp::Grad { form: text } => {
            let f = parse_form(text, field)?;
            let ctx = context_make(k_of_form(&f)?)?;
            let grad = defining_gradient(&ctx, &f)?;
            Output::new(json!({
                "form": form(&f),
                "k": ctx.k(),
                "gradient": scalars(&grad),
                "zero": grad.iter().all(Scalar::is_zero),
            }))
        }
        HypOp::Minors { form: text } => {
            let f = parse_form(text, field)?;
            let k = k_of_form(&f)?;
            Output::new(json!({
                "form": form(&f),
                "k": k,
                "minors": scalars(&minors(&f)?),
                "q": form(&q_form(&f)?),
            }))
        }
        HypOp::Degree { k } => {
            let ctx = context_make(*k)?;
            Output::new(json!({ "k": k, "degree": degree_of_equation(&ctx) }))
        }
        HypOp::ProbeSingular { k, rank } => {
            let ctx = context_make(*k)?;
            let rank = rank.unwrap_or(*k);
            let samples = cli.samples.unwrap_or(100);
            let mut rng = seeded_rng(cli.seed);
            let probe = probe_singular(&ctx, rank, samples, field, height, &mut rng)?;
            Output::new(json!({
                "seed": cli.seed,
                "k": probe.k,
                "rank": probe.rank,
                "samples": probe.samples,
                "zero_value": probe.zero_value,
                "zero_gradient": probe.zero_gradient,
            }))
        }
    })
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Rank { .. } => "rank".into(),
        Command::BorderRank { .. } => "border-rank".into(),
        Command::Apolar { .. } => "apolar".into(),
        Command::Cat { .. } => "cat".into(),
        Command::Decompose { .. } => "decompose".into(),
        Command::Forbidden { .. } => "forbidden".into(),
        Command::Partition { op } => format!(
            "partition {}",
            match op {
                PartitionOp::Dim { .. } => "dim",
                PartitionOp::DimDual { .. } => "dim-dual",
                PartitionOp::Deg { .. } => "deg",
                PartitionOp::DegDual { .. } => "deg-dual",
                PartitionOp::Refines { .. } => "refines",
                PartitionOp::DualIncl { .. } => "dual-incl",
                PartitionOp::Conormal { .. } => "conormal",
            }
        ),
        Command::Sample { .. } => "sample".into(),
        Command::Census { .. } => "census".into(),
        Command::Tangent { .. } => "tangent".into(),
        Command::Chain { .. } => "chain".into(),
        Command::Hyp { op } => format!(
            "hyp {}",
            match op {
                HypOp::Value { .. } => "value",
                HypOp::Grad { .. } => "grad",
                HypOp::Minors { .. } => "minors",
                HypOp::Degree { .. } => "degree",
                HypOp::ProbeSingular { .. } => "probe-singular",
            }
        ),
        Command::Verify { .. } => "verify".into(),
    }
}

/// `key: value` lines; arrays of scalars on one line, nested values as JSON.
fn render_text(body: &Map<String, Value>) -> String {
    let mut out = String::new();
    for (key, value) in body {
        let shown = match value {
            Value::String(s) => s.clone(),
            Value::Array(items) if items.iter().all(|v| !v.is_object() && !v.is_array()) => items
                .iter()
                .map(|v| v.as_str().map_or_else(|| v.to_string(), str::to_string))
                .collect::<Vec<_>>()
                .join(", "),
            Value::Array(items) if items.iter().all(|v| !v.is_object()) => value.to_string(),
            Value::Array(items) => {
                let mut s = String::new();
                for item in items {
                    s.push_str("\n  ");
                    s.push_str(&item.to_string());
                }
                s
            }
            other => other.to_string(),
        };
        out.push_str(&format!("{key}: {shown}\n"));
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let name = command_name(&cli.command);
    match dispatch(&cli) {
        Ok(out) => {
            let mut body = Map::new();
            body.insert("schema".into(), json!(SCHEMA));
            body.insert("command".into(), json!(name));
            body.insert("field".into(), json!(cli.field.trim()));
            body.extend(out.body);
            if cli.json {
                println!("{}", Value::Object(body));
            } else if let Some(text) = out.text {
                print!("{text}");
            } else {
                print!("{}", render_text(&body));
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "schema": SCHEMA,
                        "command": name,
                        "error": { "kind": e.kind(), "message": e.to_string() },
                    })
                );
            } else {
                eprintln!("error [{}]: {e}", e.kind());
            }
            ExitCode::from(1)
        }
    }
}
