mod output;

use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use thompson_fp::automaton::{count_language_bruteforce, phi_series, CountingAutomaton};
use thompson_fp::fordham::classify;
use thompson_fp::normal_forms::{bar, rewrite_with_trace};
use thompson_fp::oracle::{enumerate_positive_by_weight, verify_suite, Profile};
use thompson_fp::rates::{self, default_tolerance, parse_tolerance, RateResult};
use thompson_fp::series::positive_growth_series;
use thompson_fp::{evaluate, Word};

use output::{cell, csv, document, integer, rational, Format};

#[derive(Parser)]
#[command(name = "thompson-fp", version, about = "Growth and normal forms in the generalized Thompson groups F(p)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Growth series coefficients
    #[command(subcommand)]
    Growth(GrowthCommand),
    /// Certified growth-rate enclosures
    #[command(subcommand)]
    Rate(RateCommand),
    /// Rewrite a word to its infinite or finite normal form
    Normalize {
        #[arg(long, value_parser = parse_p)]
        p: usize,
        #[arg(long, value_enum, default_value_t = Form::Fin)]
        form: Form,
        /// Include every rewriting step
        #[arg(long)]
        trace: bool,
        word: String,
    },
    /// Word length of a positive element, with the caret classification
    Length {
        #[arg(long, value_parser = parse_p)]
        p: usize,
        word: String,
    },
    /// Decide whether two words represent the same element
    Equal {
        #[arg(long, value_parser = parse_p)]
        p: usize,
        left: String,
        right: String,
    },
    /// Reduced tree-pair diagram of a word
    Eval {
        #[arg(long, value_parser = parse_p)]
        p: usize,
        word: String,
    },
    /// Run every brute-force cross-check
    Verify {
        #[arg(long, value_parser = parse_p)]
        p: usize,
        #[arg(long, value_enum, default_value_t = ProfileArg::Small)]
        profile: ProfileArg,
    },
}

#[derive(Subcommand)]
enum GrowthCommand {
    /// Positive elements counted by word length (methods: series, brute)
    Positive(GrowthArgs),
    /// Words of the normal-form language by length (methods: automaton, closed-form, brute)
    Language(GrowthArgs),
}

#[derive(Args)]
struct GrowthArgs {
    #[arg(long, value_parser = parse_p)]
    p: usize,
    /// Number of coefficients, for lengths 0..n-1
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    method: Option<Method>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum RateCommand {
    /// Growth rate of the positive monoid
    Positive(RateArgs),
    /// Lower bound for the growth rate of the group
    LowerBound(RateArgs),
    /// Both rates and derived columns for p = 2..pmax
    Report {
        #[arg(long, value_parser = parse_p)]
        pmax: usize,
        #[arg(long, value_parser = parse_tol)]
        tol: Option<BigRational>,
        #[arg(long)]
        float: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct RateArgs {
    #[arg(long, value_parser = parse_p)]
    p: usize,
    /// Enclosure width, as a rational ("1/1000") or decimal ("1e-9")
    #[arg(long, value_parser = parse_tol)]
    tol: Option<BigRational>,
    /// Render values as decimals instead of exact rationals
    #[arg(long)]
    float: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Series,
    Brute,
    Automaton,
    ClosedForm,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Form {
    Inf,
    Fin,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProfileArg {
    Small,
    Full,
}

fn parse_p(s: &str) -> Result<usize, String> {
    let p: usize = s.parse().map_err(|_| format!("{s:?} is not an integer"))?;
    if p < 2 {
        return Err("p must be at least 2".into());
    }
    Ok(p)
}

fn parse_tol(s: &str) -> Result<BigRational, String> {
    parse_tolerance(s).map_err(|e| e.to_string())
}

fn parse_word(s: &str) -> Result<Word> {
    Ok(Word::parse(s)?)
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Series => "series",
        Method::Brute => "brute",
        Method::Automaton => "automaton",
        Method::ClosedForm => "closed-form",
    }
}

fn growth(kind: &str, args: &GrowthArgs) -> Result<String> {
    let (p, n) = (args.p, args.n);
    let counts: Vec<Value> = match (kind, args.method) {
        ("positive", None | Some(Method::Series)) => {
            let s = positive_growth_series(p, n)?.s;
            s.coeffs().iter().map(|c| integer(&c.to_integer())).collect()
        }
        ("positive", Some(Method::Brute)) => {
            if n == 0 {
                Vec::new()
            } else {
                enumerate_positive_by_weight(p, n - 1)?.counts.into_iter().map(|c| json!(c)).collect()
            }
        }
        ("language", None | Some(Method::Automaton)) => {
            let a = CountingAutomaton::new(p)?;
            let mut v = a.path_counts(n);
            v.pop();
            v.iter().map(|c| integer(&BigInt::from(c.clone()))).collect()
        }
        ("language", Some(Method::ClosedForm)) => {
            phi_series(p, n)?.coeffs().iter().map(|c| integer(&c.to_integer())).collect()
        }
        ("language", Some(Method::Brute)) => {
            (0..n).map(|k| count_language_bruteforce(p, k).map(|c| json!(c))).collect::<Result<_, _>>()?
        }
        (_, Some(m)) => bail!("method {} does not apply to growth {kind}", method_name(m)),
        _ => unreachable!("growth kinds are fixed by the parser"),
    };
    let method = args.method.map_or(if kind == "positive" { "series" } else { "automaton" }, method_name);
    match args.format {
        Format::Json => Ok(document(
            &format!("growth {kind}"),
            json!({"p": p, "n": n, "method": method, "coefficients": counts}),
        )
        .to_string()),
        Format::Csv => {
            let rows: Vec<Vec<String>> = counts.iter().enumerate().map(|(k, c)| vec![k.to_string(), cell(c)]).collect();
            Ok(csv(&["n", "count"], &rows))
        }
    }
}

fn rate_json(r: &RateResult, float: bool) -> Value {
    let alternates: Vec<Value> = r
        .alternates
        .iter()
        .map(|(eq, e)| {
            json!({"equation": eq.name(), "value_lo": rational(&e.lo, float), "value_hi": rational(&e.hi, float)})
        })
        .collect();
    json!({
        "p": r.p,
        "value_lo": rational(&r.value.lo, float),
        "value_hi": rational(&r.value.hi, float),
        "value": rational(&r.value.midpoint(), float),
        "equation": r.equation.name(),
        "residual_bound": rational(&r.residual_bound, float),
        "alternates": alternates,
    })
}

fn rate(name: &str, args: &RateArgs, f: fn(usize, &BigRational) -> thompson_fp::Result<RateResult>) -> Result<String> {
    let tol = args.tol.clone().unwrap_or_else(default_tolerance);
    let r = f(args.p, &tol)?;
    let row = rate_json(&r, args.float);
    match args.format {
        Format::Json => Ok(document(&format!("rate {name}"), row).to_string()),
        Format::Csv => {
            let fields = ["p", "value_lo", "value_hi", "equation"];
            Ok(csv(&fields, &[fields.iter().map(|k| cell(&row[*k])).collect()]))
        }
    }
}

fn report(pmax: usize, tol: Option<BigRational>, float: bool, format: Format) -> Result<String> {
    let tol = tol.unwrap_or_else(default_tolerance);
    let r = rates::rate_report(pmax, &tol)?;
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            json!({
                "p": row.p,
                "zeta_lo": rational(&row.zeta.value.lo, float),
                "zeta_hi": rational(&row.zeta.value.hi, float),
                "lambda_lo": rational(&row.lambda.lo, float),
                "lambda_hi": rational(&row.lambda.hi, float),
                "xi_lo": rational(&row.xi.value.lo, float),
                "xi_hi": rational(&row.xi.value.hi, float),
                "xi_ratio_lo": rational(&row.xi_ratio.lo, float),
                "xi_ratio_hi": rational(&row.xi_ratio.hi, float),
                "asymptotic_gap": rational(&row.asymptotic_gap, float),
                "violation": row.violation,
            })
        })
        .collect();
    match format {
        Format::Json => Ok(document(
            "rate report",
            json!({
                "rows": rows,
                "violations": r.violations(),
                "lambda_nondecreasing": r.lambda_nondecreasing,
                "gap_inversions": r.gap_inversions,
            }),
        )
        .to_string()),
        Format::Csv => {
            let fields = [
                "p", "zeta_lo", "zeta_hi", "lambda_lo", "lambda_hi", "xi_lo", "xi_hi", "xi_ratio_lo", "xi_ratio_hi",
                "asymptotic_gap", "violation",
            ];
            let cells: Vec<Vec<String>> =
                rows.iter().map(|row| fields.iter().map(|k| cell(&row[*k])).collect()).collect();
            Ok(csv(&fields, &cells))
        }
    }
}

fn normalize(p: usize, form: Form, trace: bool, word: &str) -> Result<String> {
    let w = parse_word(word)?;
    let reduced = w.free_reduce();
    let (inf, steps) = rewrite_with_trace(p, &reduced);
    let (form_name, nf) = match form {
        Form::Inf => ("inf", inf.clone()),
        Form::Fin => ("fin", bar(p, &inf)),
    };
    let mut fields = json!({"p": p, "form": form_name, "input": w.to_string(), "normal_form": nf.to_string()});
    if trace {
        fields["free_reduction"] = json!(reduced.to_string());
        fields["trace"] = serde_json::to_value(&steps)?;
        fields["infinite_normal_form"] = json!(inf.to_string());
    }
    Ok(document("normalize", fields).to_string())
}

fn length(p: usize, word: &str) -> Result<String> {
    let w = parse_word(word)?;
    let d = evaluate(p, &w);
    let len = thompson_fp::positive_length(&d)?;
    let (carets, order) = if d.source().is_leaf() {
        (Vec::new(), Vec::new())
    } else {
        let c = classify(p, d.source())?;
        (c.records(), c.order)
    };
    Ok(document(
        "length",
        json!({
            "p": p,
            "word": w.to_string(),
            "length": len,
            "source": d.source().to_string(),
            "carets": serde_json::to_value(carets)?,
            "order": order,
        }),
    )
    .to_string())
}

fn equal(p: usize, left: &str, right: &str) -> Result<String> {
    let (a, b) = (parse_word(left)?, parse_word(right)?);
    let eq = evaluate(p, &a).equal(&evaluate(p, &b))?;
    Ok(document("equal", json!({"p": p, "left": a.to_string(), "right": b.to_string(), "equal": eq})).to_string())
}

fn eval(p: usize, word: &str) -> Result<String> {
    let w = parse_word(word)?;
    let d = evaluate(p, &w);
    Ok(document(
        "eval",
        json!({
            "p": p,
            "word": w.to_string(),
            "source": d.source().to_string(),
            "target": d.target().to_string(),
            "carets": d.source().carets(),
            "positive": d.is_positive(),
            "identity": d.is_identity(),
        }),
    )
    .to_string())
}

fn run(cli: Cli) -> Result<(String, ExitCode)> {
    let ok = |s: String| Ok((s, ExitCode::SUCCESS));
    match cli.command {
        Command::Growth(GrowthCommand::Positive(args)) => ok(growth("positive", &args)?),
        Command::Growth(GrowthCommand::Language(args)) => ok(growth("language", &args)?),
        Command::Rate(RateCommand::Positive(args)) => ok(rate("positive", &args, rates::zeta)?),
        Command::Rate(RateCommand::LowerBound(args)) => ok(rate("lower-bound", &args, rates::xi)?),
        Command::Rate(RateCommand::Report { pmax, tol, float, format }) => ok(report(pmax, tol, float, format)?),
        Command::Normalize { p, form, trace, word } => ok(normalize(p, form, trace, &word)?),
        Command::Length { p, word } => ok(length(p, &word)?),
        Command::Equal { p, left, right } => ok(equal(p, &left, &right)?),
        Command::Eval { p, word } => ok(eval(p, &word)?),
        Command::Verify { p, profile } => {
            let profile = match profile {
                ProfileArg::Small => Profile::Small,
                ProfileArg::Full => Profile::Full,
            };
            let report = verify_suite(p, profile)?;
            for c in report.failures() {
                eprintln!("FAIL {}: {}", c.check_name, c.details);
            }
            let code = if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) };
            let mut doc = document("verify", serde_json::to_value(&report)?);
            doc["all_passed"] = json!(report.all_passed());
            Ok((doc.to_string(), code))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((payload, code)) => {
            if payload.ends_with('\n') {
                print!("{payload}");
            } else {
                println!("{payload}");
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
