//! Command-line front end: field tables, code construction,
//! encode/decode, seeded simulation, and the rate comparison.
//!
//! Exit codes: 0 for success (including positive decode verdicts),
//! 1 for a negative decode verdict, 2 for usage or validation errors.

use crate::code::{Code, DecodeOutcome, ErrorLocation, Verdict};
use crate::field::{Label, OmegaSign, ResidueField};
use crate::sim::{rate_report, run_trials, ChannelSpec, ValueMode};
use crate::zw::{find_prime, ZwInt};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::collections::HashSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "octonion-codes",
    version,
    about = "Error-correcting codes over the octonion integers Z[w]"
)]
pub struct Cli {
    /// Key=value file supplying defaults for any long flag.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<String>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the labeling table of the residue field V_pi.
    FieldTable(FieldArgs),
    /// Show the parameters of a code: H rows, generator polynomial.
    MakeCode(CodeSpecArgs),
    /// Encode a message of k labels.
    Encode(EncodeArgs),
    /// Decode a received word and report the verdict.
    Decode(DecodeArgs),
    /// Run seeded Monte-Carlo decoding trials.
    Simulate(SimulateArgs),
    /// Compare code rates with the quaternion-subring construction.
    RateCompare(RateArgs),
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Modulus pi as "a,b" meaning a + bw.
    #[arg(long, value_name = "A,B", allow_hyphen_values = true)]
    pub pi: Option<String>,
    /// Rational prime p = 7k + 1; the canonical pi with N(pi) = p is used.
    #[arg(long)]
    pub p: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlphaTarget {
    /// alpha^n = w
    #[value(name = "+w")]
    Plus,
    /// alpha^n = -w
    #[value(name = "-w")]
    Minus,
    /// whichever of the two is reachable
    Auto,
}

#[derive(Debug, Args)]
pub struct CodeSpecArgs {
    /// Modulus pi as "a,b" meaning a + bw.
    #[arg(long, value_name = "A,B", allow_hyphen_values = true)]
    pub pi: Option<String>,
    /// Rational prime p = 7k + 1; the canonical pi with N(pi) = p is used.
    #[arg(long)]
    pub p: Option<i64>,
    /// Generator label; alpha^n must be w or -w.
    #[arg(long)]
    pub alpha: Option<u64>,
    /// Pick the smallest primitive alpha with alpha^n equal to this target.
    #[arg(long, value_enum, allow_hyphen_values = true)]
    pub alpha_target: Option<AlphaTarget>,
    /// Number of parity rows (1..=4).
    #[arg(long, default_value_t = 1)]
    pub rows: usize,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub code: CodeSpecArgs,
    /// Message as k comma-separated labels.
    #[arg(long, value_name = "M1,M2,...", allow_hyphen_values = true)]
    pub message: String,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[command(flatten)]
    pub code: CodeSpecArgs,
    /// Received word: labels "5,0,1,0" or pairs "(-2,-1),(0,0),(1,0),(0,0)".
    #[arg(long, allow_hyphen_values = true)]
    pub received: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ValueModeArg {
    UniformNonzero,
    Weight1Only,
    PowerOfW,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub code: CodeSpecArgs,
    /// Error-count distribution, e.g. "0=0.1,1=0.8,2=0.1".
    #[arg(long, default_value = "1=1.0")]
    pub dist: String,
    /// How error values are drawn.
    #[arg(long, value_enum, default_value_t = ValueModeArg::UniformNonzero)]
    pub value_mode: ValueModeArg,
    /// Number of trials (>= 1).
    #[arg(long)]
    pub trials: u64,
    /// Master seed; the trial stream is a pure function of it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 uses the default pool.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Args)]
pub struct RateArgs {
    /// Rational prime p = 7k + 1.
    #[arg(long)]
    pub p: i64,
    /// Common code dimension k >= 1.
    #[arg(long)]
    pub k: i64,
}

/// Injects `key=value` lines from a `--config` file as trailing
/// `--key=value` arguments, skipping keys already given on the command
/// line.
pub fn expand_config_args(mut args: Vec<String>) -> Result<Vec<String>, String> {
    let mut path = None;
    for (i, a) in args.iter().enumerate() {
        if a == "--config" {
            path = args.get(i + 1).cloned();
        } else if let Some(rest) = a.strip_prefix("--config=") {
            path = Some(rest.to_string());
        }
    }
    let Some(path) = path else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| format!("cannot read config file {path}: {e}"))?;
    let present: HashSet<String> = args
        .iter()
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a).to_string())
        .collect();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", lineno + 1))?;
        let key = key.trim();
        if !present.contains(key) {
            args.push(format!("--{key}={}", value.trim()));
        }
    }
    Ok(args)
}

pub fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::FieldTable(args) => cmd_field_table(&args, cli.format),
        Command::MakeCode(args) => cmd_make_code(&args, cli.format),
        Command::Encode(args) => cmd_encode(&args, cli.format),
        Command::Decode(args) => cmd_decode(&args, cli.format),
        Command::Simulate(args) => cmd_simulate(&args, cli.format),
        Command::RateCompare(args) => cmd_rate_compare(&args, cli.format),
    }
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"a,b\", got \"{s}\""))?;
    let a = a
        .trim()
        .parse::<i64>()
        .map_err(|e| format!("bad integer \"{a}\": {e}"))?;
    let b = b
        .trim()
        .parse::<i64>()
        .map_err(|e| format!("bad integer \"{b}\": {e}"))?;
    Ok((a, b))
}

fn resolve_pi(pi: &Option<String>, p: &Option<i64>) -> Result<ZwInt, String> {
    match (pi, p) {
        (Some(s), None) => {
            let (a, b) = parse_pair(s)?;
            Ok(ZwInt::new(a, b))
        }
        (None, Some(p)) => {
            find_prime(*p).map_err(|_| format!("{p} is not a prime congruent to 1 mod 7"))
        }
        (Some(_), Some(_)) => Err("give either --pi or --p, not both".into()),
        (None, None) => Err("missing --pi or --p".into()),
    }
}

fn build_field(pi: ZwInt) -> Result<ResidueField, String> {
    ResidueField::build(pi).map_err(|e| format!("cannot build the field for pi = {pi}: {e}"))
}

fn build_code(spec: &CodeSpecArgs) -> Result<Code, String> {
    let pi = resolve_pi(&spec.pi, &spec.p)?;
    let mut field = build_field(pi)?;
    let alpha = match (spec.alpha, spec.alpha_target) {
        (Some(_), Some(_)) => return Err("give either --alpha or --alpha-target, not both".into()),
        (Some(a), None) => Label(a),
        (None, target) => {
            let target = target.unwrap_or(AlphaTarget::Auto);
            let found = match target {
                AlphaTarget::Plus => field.find_primitive(OmegaSign::Plus),
                AlphaTarget::Minus => field.find_primitive(OmegaSign::Minus),
                AlphaTarget::Auto => field
                    .find_primitive(OmegaSign::Plus)
                    .or_else(|_| field.find_primitive(OmegaSign::Minus)),
            };
            found.map_err(|e| format!("no usable generator: {e}"))?
        }
    };
    Code::build(field, alpha, spec.rows).map_err(|e| format!("cannot build the code: {e}"))
}

fn parse_vector(s: &str, field: &ResidueField) -> Result<Vec<Label>, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.contains('(') {
        let inner = compact
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| format!("malformed pair vector \"{s}\""))?;
        inner
            .split("),(")
            .map(|pair| {
                let (a, b) = parse_pair(pair)?;
                Ok(field.label(&ZwInt::new(a, b)))
            })
            .collect()
    } else {
        compact
            .split(',')
            .map(|tok| {
                let v = tok
                    .parse::<i64>()
                    .map_err(|e| format!("bad label \"{tok}\": {e}"))?;
                Ok(field.label_of_int(v))
            })
            .collect()
    }
}

fn cmd_field_table(args: &FieldArgs, format: Format) -> Result<i32, String> {
    let pi = resolve_pi(&args.pi, &args.p)?;
    let field = build_field(pi)?;
    let entries = field.entries();
    match format {
        Format::Json => {
            let meta = serde_json::json!({
                "pi_a": pi.a, "pi_b": pi.b, "p": field.p(), "slope": field.slope(),
            });
            println!("{meta}");
            for e in &entries {
                println!("{}", serde_json::to_string(e).unwrap());
            }
        }
        Format::Csv => {
            println!("k,a,b,norm,weight");
            for e in &entries {
                println!("{},{},{},{},{}", e.k, e.a, e.b, e.norm, e.weight);
            }
        }
        Format::Text => {
            println!("pi = {pi}, p = {}, slope = {}", field.p(), field.slope());
            let width = field.p().to_string().len();
            for e in &entries {
                let rep = ZwInt::new(e.a, e.b);
                println!("f({:>width$}) = {rep}", e.k);
            }
        }
    }
    Ok(0)
}

fn cmd_make_code(spec: &CodeSpecArgs, format: Format) -> Result<i32, String> {
    let code = build_code(spec)?;
    let field = code.field();
    let info = code.alpha_info();
    let alpha_rep = field.unlabel(info.alpha);
    match format {
        Format::Json => {
            let out = serde_json::json!({
                "p": field.p(),
                "pi": { "a": field.pi().a, "b": field.pi().b },
                "alpha": info.alpha.0,
                "alpha_rep": { "a": alpha_rep.a, "b": alpha_rep.b },
                "order": info.order,
                "primitive": info.primitive,
                "sign": info.sign.to_string(),
                "n": code.n(),
                "k": code.k(),
                "rows": code.rows(),
                "gen_poly": code.gen_poly(),
                "h": code.parity_check(),
            });
            println!("{out}");
        }
        Format::Text => {
            println!("pi = {}, p = {}", field.pi(), field.p());
            println!(
                "alpha = {} = {}, order {}, primitive: {}, alpha^n = {}",
                info.alpha, alpha_rep, info.order, info.primitive, info.sign
            );
            println!("n = {}, k = {}, rows = {}", code.n(), code.k(), code.rows());
            let g: Vec<String> = code.gen_poly().iter().map(|c| c.to_string()).collect();
            println!("g(x) coefficients (constant first): {}", g.join(","));
            for (t, row) in code.parity_check().iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                println!("H row {t}: {}", cells.join(","));
            }
        }
        Format::Csv => return Err("csv output is not supported for make-code".into()),
    }
    Ok(0)
}

fn cmd_encode(args: &EncodeArgs, format: Format) -> Result<i32, String> {
    let code = build_code(&args.code)?;
    let message = parse_vector(&args.message, code.field())?;
    let word = code
        .encode(&message)
        .map_err(|e| format!("cannot encode: {e}"))?;
    match format {
        Format::Json => {
            println!("{}", serde_json::json!({ "codeword": word }));
        }
        Format::Text => {
            println!("codeword (labels): {}", join_labels(&word));
            println!("codeword (a+bw):   {}", join_reps(code.field(), &word));
        }
        Format::Csv => return Err("csv output is not supported for encode".into()),
    }
    Ok(0)
}

#[derive(Serialize)]
struct DecodeReport<'a> {
    p: u64,
    pi_a: i64,
    pi_b: i64,
    alpha: u64,
    rows: usize,
    syndrome: &'a [Label],
    syndrome_dlog: &'a [Option<u64>],
    verdict: Verdict,
    errors: &'a [ErrorLocation],
    corrected: &'a Option<Vec<Label>>,
    reason: &'a Option<String>,
}

fn cmd_decode(args: &DecodeArgs, format: Format) -> Result<i32, String> {
    let code = build_code(&args.code)?;
    let field = code.field();
    let received = parse_vector(&args.received, field)?;
    if received.len() != code.n() {
        return Err(format!(
            "received word has {} coordinates, the code length is {}",
            received.len(),
            code.n()
        ));
    }
    let syndrome = code.syndrome(&received).map_err(|e| e.to_string())?;
    let dlogs: Vec<Option<u64>> = syndrome.iter().map(|s| field.dlog(*s).ok()).collect();
    let outcome: DecodeOutcome = code.decode(&received).map_err(|e| e.to_string())?;
    match format {
        Format::Json => {
            let report = DecodeReport {
                p: field.p(),
                pi_a: field.pi().a,
                pi_b: field.pi().b,
                alpha: code.alpha_info().alpha.0,
                rows: code.rows(),
                syndrome: &syndrome,
                syndrome_dlog: &dlogs,
                verdict: outcome.verdict,
                errors: &outcome.errors,
                corrected: &outcome.corrected,
                reason: &outcome.reason,
            };
            println!("{}", serde_json::to_string(&report).unwrap());
        }
        Format::Text => {
            let s: Vec<String> = syndrome
                .iter()
                .zip(&dlogs)
                .map(|(c, d)| match d {
                    Some(e) => format!("{c} (alpha^{e})"),
                    None => format!("{c}"),
                })
                .collect();
            println!("syndrome: {}", s.join(", "));
            println!("verdict: {:?}", outcome.verdict);
            for e in &outcome.errors {
                println!(
                    "error: position {}, value {} = {}",
                    e.pos,
                    e.value_label,
                    ZwInt::new(e.value_a, e.value_b)
                );
            }
            if let Some(word) = &outcome.corrected {
                println!("corrected (labels): {}", join_labels(word));
                println!("corrected (a+bw):   {}", join_reps(field, word));
            }
            if let Some(reason) = &outcome.reason {
                println!("reason: {reason}");
            }
        }
        Format::Csv => return Err("csv output is not supported for decode".into()),
    }
    Ok(if outcome.is_positive() { 0 } else { 1 })
}

fn cmd_simulate(args: &SimulateArgs, format: Format) -> Result<i32, String> {
    if args.trials == 0 {
        return Err("--trials must be at least 1".into());
    }
    let dist = parse_dist(&args.dist)?;
    let code = build_code(&args.code)?;
    let channel = ChannelSpec {
        dist,
        value_mode: match args.value_mode {
            ValueModeArg::UniformNonzero => ValueMode::UniformNonzero,
            ValueModeArg::Weight1Only => ValueMode::WeightOne,
            ValueModeArg::PowerOfW => ValueMode::OmegaPower,
        },
        seed: args.seed,
    };
    channel.validate()?;
    let stats = if args.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(args.threads)
            .build()
            .map_err(|e| e.to_string())?
            .install(|| run_trials(&code, &channel, args.trials))
    } else {
        run_trials(&code, &channel, args.trials)
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string(&stats).unwrap()),
        Format::Csv => println!("{}", stats.to_csv()),
        Format::Text => {
            println!("trials: {}", stats.trials);
            println!("no_error: {}", stats.no_error);
            println!("corrected_ok: {}", stats.corrected_ok);
            println!("miscorrected: {}", stats.miscorrected);
            println!("detected: {}", stats.detected);
            println!("failed: {}", stats.failed);
            println!("rate: {}/{}", stats.rate.num, stats.rate.den);
            println!("seed: {}, p: {}, rows: {}", stats.seed, stats.p, stats.rows);
        }
    }
    Ok(0)
}

fn parse_dist(s: &str) -> Result<[f64; 3], String> {
    let mut dist = [0.0f64; 3];
    for part in s.split(',') {
        let (count, prob) = part
            .split_once('=')
            .ok_or_else(|| format!("bad distribution term \"{part}\", expected COUNT=PROB"))?;
        let count: usize = count
            .trim()
            .parse()
            .map_err(|e| format!("bad error count \"{count}\": {e}"))?;
        if count > 2 {
            return Err(format!("error count {count} is out of range 0..=2"));
        }
        let prob: f64 = prob
            .trim()
            .parse()
            .map_err(|e| format!("bad probability \"{prob}\": {e}"))?;
        dist[count] = prob;
    }
    Ok(dist)
}

fn cmd_rate_compare(args: &RateArgs, format: Format) -> Result<i32, String> {
    if args.k < 1 {
        return Err("--k must be at least 1".into());
    }
    let report = rate_report(args.p, args.k)
        .map_err(|_| format!("{} is not a prime congruent to 1 mod 7", args.p))?;
    match format {
        Format::Json => println!("{}", serde_json::to_string(&report).unwrap()),
        Format::Text => {
            println!("p = {}, k = {}", report.p, report.k);
            println!(
                "octonion-subring rate 7k/(p-1) = {}/{}",
                report.r_octonion.num, report.r_octonion.den
            );
            println!(
                "quaternion-subring rate 6k/(p-1) = {}/{}",
                report.r_hurwitz_subring.num, report.r_hurwitz_subring.den
            );
            println!("ratio = {}/{}", report.ratio.num, report.ratio.den);
        }
        Format::Csv => return Err("csv output is not supported for rate-compare".into()),
    }
    Ok(0)
}

fn join_labels(word: &[Label]) -> String {
    word.iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn join_reps(field: &ResidueField, word: &[Label]) -> String {
    word.iter()
        .map(|l| field.unlabel(*l).to_string())
        .collect::<Vec<_>>()
        .join(", ")
}
