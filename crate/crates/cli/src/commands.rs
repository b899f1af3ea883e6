//! Subcommand argument types and implementations.
//!
//! Exit-code contract: 0 on success, 1 on a verification mismatch or
//! counterexample, 2 on usage errors. Field elements cross this boundary as
//! integer codes; residues print as canonical representatives 0..p-1.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dickson_core::gf::{FieldCtx, PrimePower};
use dickson_core::rdp::PairTable;
use dickson_core::search::{records_to_csv, search_desirable, SearchOutcome};
use dickson_core::sums::{
    cube_sum_closed, first_sum_closed, power_sum_oracle, triple_index, uv_decompose, IndexPair,
};

use crate::report::{
    to_json, EvalRecord, FieldInfoRecord, Meta, Report, SearchRow, SuiteOutcome, SumRecord,
};
use crate::suites::{parse_suite, run_suites};

#[derive(Parser)]
#[command(
    name = "dickson",
    version,
    about = "Reversed Dickson polynomial power sums and permutation-pair search over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Evaluate d_n over F_q (full table, or one element with --a)
    Eval(EvalArgs),
    /// Power sum of d_n: closed form, brute-force oracle, or both
    Sum(SumArgs),
    /// Run the verification suites over a set of field orders
    Verify(VerifyArgs),
    /// Sweep n in [1, q^2-2] for permutation ("desirable") pairs
    Search(SearchArgs),
    /// Show how GF(q) and its quadratic extension are realized
    FieldInfo(FieldInfoArgs),
}

#[derive(Args)]
pub struct FieldSel {
    /// Field order q = p^e (auto-factored)
    #[arg(long)]
    pub q: Option<u64>,
    /// Characteristic p (use together with --e)
    #[arg(long)]
    pub p: Option<u64>,
    /// Extension degree e (use together with --p)
    #[arg(long)]
    pub e: Option<u32>,
}

#[derive(Args)]
pub struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the output to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FilterMode {
    On,
    Off,
}

#[derive(Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub field: FieldSel,
    /// Index n >= 0
    #[arg(long)]
    pub n: u64,
    /// Element a as an integer code; omit for the full table
    #[arg(long)]
    pub a: Option<u64>,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args)]
pub struct SumArgs {
    #[command(flatten)]
    pub field: FieldSel,
    /// Index n in [1, q^2-1]
    #[arg(long)]
    pub n: u64,
    /// Power i of the sum (1, 2 or 3)
    #[arg(long)]
    pub power: u32,
    /// Which route(s) to compute
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Comma-separated field orders, e.g. 2,3,4,5
    #[arg(long, required = true, value_delimiter = ',')]
    pub qset: Vec<u64>,
    /// identities | h | sums | cases | filters | evaluators | all
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Worker threads for the sweeps
    #[arg(long)]
    pub jobs: Option<usize>,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub field: FieldSel,
    /// Apply the necessary-condition filters (brute force is skipped on
    /// filter failures; use off to brute-force everything)
    #[arg(long, value_enum, default_value_t = FilterMode::On)]
    pub filters: FilterMode,
    /// Worker threads for the sweep
    #[arg(long)]
    pub jobs: Option<usize>,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args)]
pub struct FieldInfoArgs {
    #[command(flatten)]
    pub field: FieldSel,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

/// What a subcommand leaves behind: stdout text, an optional stderr note,
/// and whether a verification check failed (exit 1).
pub struct CmdOutput {
    pub text: String,
    pub note: Option<String>,
    pub check_failed: bool,
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn resolve_field(sel: &FieldSel) -> Result<PrimePower, CliError> {
    match (sel.q, sel.p, sel.e) {
        (Some(q), None, None) => PrimePower::from_order(q).or_else(|e| usage(e.to_string())),
        (None, Some(p), Some(e)) => PrimePower::new(p, e).or_else(|e| usage(e.to_string())),
        (Some(q), Some(p), Some(e)) => {
            let pp = PrimePower::new(p, e).or_else(|e| usage(e.to_string()))?;
            if pp.q() != q {
                return usage(format!("--q {q} is inconsistent with --p {p} --e {e}"));
            }
            Ok(pp)
        }
        (None, None, None) => usage("select a field with --q, or with --p and --e"),
        _ => usage("--p and --e must be given together (optionally with --q)"),
    }
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match jobs {
        Some(0) => usage("--jobs must be at least 1"),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| CliError::Io(e.to_string()))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

fn finish(
    output: &OutputOpts,
    text: String,
    check_failed: bool,
    note: Option<String>,
) -> Result<CmdOutput, CliError> {
    match &output.out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            Ok(CmdOutput {
                text: String::new(),
                note,
                check_failed,
            })
        }
        None => Ok(CmdOutput {
            text,
            note,
            check_failed,
        }),
    }
}

pub fn run(cli: Cli) -> Result<CmdOutput, CliError> {
    match cli.command {
        Command::Eval(args) => run_eval(args),
        Command::Sum(args) => run_sum(args),
        Command::Verify(args) => run_verify(args),
        Command::Search(args) => run_search(args),
        Command::FieldInfo(args) => run_field_info(args),
    }
}

fn run_eval(args: EvalArgs) -> Result<CmdOutput, CliError> {
    let pw = resolve_field(&args.field)?;
    let q = pw.q();
    if let Some(a) = args.a {
        if a >= q {
            return usage(format!("--a {a} is not an element code of F_{q}"));
        }
    }
    let table = PairTable::for_prime_power(&pw);
    let records: Vec<EvalRecord> = match args.a {
        Some(a) => vec![EvalRecord {
            a,
            value: table.eval_by_code(args.n, a),
        }],
        None => (0..q)
            .map(|a| EvalRecord {
                a,
                value: table.eval_by_code(args.n, a),
            })
            .collect(),
    };
    let text = match args.output.format {
        Format::Text => {
            if args.a.is_some() {
                format!("{}\n", records[0].value)
            } else {
                let mut s = String::new();
                for r in &records {
                    writeln!(s, "a={} d={}", r.a, r.value).unwrap();
                }
                s
            }
        }
        Format::Csv => {
            let mut s = String::from("q,n,a,value\n");
            for r in &records {
                writeln!(s, "{q},{},{},{}", args.n, r.a, r.value).unwrap();
            }
            s
        }
        Format::Json => to_json(&Report {
            meta: Meta::new(
                "eval",
                json!({"q": q, "p": pw.p(), "e": pw.e(), "n": args.n, "a": args.a}),
            ),
            records,
        }),
    };
    finish(&args.output, text, false, None)
}

fn run_sum(args: SumArgs) -> Result<CmdOutput, CliError> {
    let pw = resolve_field(&args.field)?;
    let q = pw.q();
    let n = args.n;
    if n < 1 || n > q * q - 1 {
        return usage(format!("--n {n} outside [1, {}]", q * q - 1));
    }
    if !(1..=3).contains(&args.power) {
        return usage("--power must be 1, 2 or 3");
    }
    let want_closed = args.method != Method::Oracle;
    let want_oracle = args.method != Method::Closed;

    let closed = if want_closed {
        match args.power {
            1 => Some(first_sum_closed(&pw, n).expect("n in range")),
            2 => return usage("no closed form is implemented for power 2; use --method oracle"),
            3 => {
                if !pw.is_even() && n == q * q - 1 {
                    return usage(format!(
                        "n = {n} = q^2-1 is outside the closed-form range for power 3 when q is odd; use --method oracle"
                    ));
                }
                Some(cube_sum_closed(&pw, n).expect("n in range"))
            }
            _ => unreachable!(),
        }
    } else {
        None
    };
    let oracle = if want_oracle {
        let table = PairTable::for_prime_power(&pw);
        Some(power_sum_oracle(&table, n, args.power).code())
    } else {
        None
    };
    let matches = match (closed, oracle) {
        (Some(c), Some(o)) => Some(c == o),
        _ => None,
    };
    let IndexPair { u, v } = uv_decompose(n, q).expect("n in range");
    let tri = triple_index(n, q);
    let record = SumRecord {
        q,
        n,
        u,
        v,
        u_prime: tri.u,
        v_prime: tri.v,
        closed,
        oracle,
        matches,
    };
    let check_failed = matches == Some(false);

    let opt = |x: Option<u64>| x.map_or(String::new(), |v| v.to_string());
    let text = match args.output.format {
        Format::Text => {
            let mut s = format!(
                "q={q} n={n} power={} u={u} v={v} u'={} v'={}",
                args.power, tri.u, tri.v
            );
            if let Some(c) = closed {
                write!(s, " closed={c}").unwrap();
            }
            if let Some(o) = oracle {
                write!(s, " oracle={o}").unwrap();
            }
            if let Some(m) = matches {
                write!(s, " match={m}").unwrap();
            }
            s.push('\n');
            s
        }
        Format::Csv => {
            format!(
                "q,n,u,v,u_prime,v_prime,closed,oracle,match\n{q},{n},{u},{v},{},{},{},{},{}\n",
                tri.u,
                tri.v,
                opt(closed),
                opt(oracle),
                matches.map_or(String::new(), |m| m.to_string())
            )
        }
        Format::Json => to_json(&Report {
            meta: Meta::new(
                "sum",
                json!({
                    "q": q, "p": pw.p(), "e": pw.e(), "n": n,
                    "power": args.power,
                    "method": format!("{:?}", args.method).to_lowercase(),
                }),
            ),
            records: vec![record],
        }),
    };
    let note = check_failed.then(|| {
        format!(
            "mismatch: closed={} oracle={} at q={q}, n={n}, power={}\n",
            opt(closed),
            opt(oracle),
            args.power
        )
    });
    finish(&args.output, text, check_failed, note)
}

fn run_verify(args: VerifyArgs) -> Result<CmdOutput, CliError> {
    let kinds = parse_suite(&args.suite).or_else(usage)?;
    let mut qset = Vec::new();
    for &q in &args.qset {
        qset.push(PrimePower::from_order(q).or_else(|e| usage(format!("--qset: {e}")))?);
    }
    let outcomes = with_pool(args.jobs, || run_suites(&kinds, &qset))?;
    let any_failed = outcomes.iter().any(|o| o.failures > 0);

    let text = match args.output.format {
        Format::Text => {
            let mut s = String::new();
            for o in &outcomes {
                let status = if o.failures == 0 { "pass" } else { "FAIL" };
                writeln!(
                    s,
                    "suite={} cases={} failures={} status={status}",
                    o.suite, o.cases, o.failures
                )
                .unwrap();
                if let Some(c) = &o.first_counterexample {
                    writeln!(
                        s,
                        "  first counterexample: (q={}, n={}, lhs={}, rhs={})",
                        c.q, c.n, c.lhs, c.rhs
                    )
                    .unwrap();
                }
            }
            writeln!(
                s,
                "verify: {}",
                if any_failed {
                    "FAILURES FOUND"
                } else {
                    "all suites passed"
                }
            )
            .unwrap();
            s
        }
        Format::Csv => {
            let mut s = String::from("suite,cases,failures\n");
            for o in &outcomes {
                writeln!(s, "{},{},{}", o.suite, o.cases, o.failures).unwrap();
            }
            s
        }
        Format::Json => to_json(&Report {
            meta: Meta::new(
                "verify",
                json!({"qset": args.qset, "suite": args.suite, "jobs": args.jobs}),
            ),
            records: outcomes.clone(),
        }),
    };
    let note = first_counterexample_note(&outcomes, args.output.format);
    finish(&args.output, text, any_failed, note)
}

fn first_counterexample_note(outcomes: &[SuiteOutcome], format: Format) -> Option<String> {
    if format == Format::Text {
        return None; // already in the report body
    }
    outcomes
        .iter()
        .find_map(|o| o.first_counterexample.as_ref().map(|c| (o, c)))
        .map(|(o, c)| {
            format!(
                "suite {} failed: first counterexample (q={}, n={}, lhs={}, rhs={})\n",
                o.suite, c.q, c.n, c.lhs, c.rhs
            )
        })
}

fn run_search(args: SearchArgs) -> Result<CmdOutput, CliError> {
    let pw = resolve_field(&args.field)?;
    let table = PairTable::for_prime_power(&pw);
    let use_filter = args.filters == FilterMode::On;
    let outcome = with_pool(args.jobs, || search_desirable(&table, use_filter))?;
    let summary_text = summary_lines(&outcome, use_filter);

    let (text, note) = match args.output.format {
        Format::Text => (summary_text, None),
        Format::Csv => (records_to_csv(&outcome.records), Some(summary_text)),
        Format::Json => {
            let s = &outcome.summary;
            let mut meta = Meta::new(
                "search",
                json!({
                    "q": pw.q(), "p": pw.p(), "e": pw.e(),
                    "filters": if use_filter { "on" } else { "off" },
                    "jobs": args.jobs,
                }),
            );
            meta.summary = Some(json!({
                "total": s.total,
                "filter_pass": s.filter_pass,
                "fail_uv": s.fail_uv,
                "fail_identity": s.fail_identity,
                "not_applicable": s.not_applicable,
                "desirable": s
                    .desirable
                    .iter()
                    .map(|&(n, g)| json!({"n": n, "gcd_with_order": g}))
                    .collect::<Vec<_>>(),
            }));
            let report = Report {
                meta,
                records: outcome.records.iter().map(SearchRow::from).collect(),
            };
            (to_json(&report), Some(summary_text))
        }
    };
    finish(&args.output, text, false, note)
}

fn summary_lines(outcome: &SearchOutcome, use_filter: bool) -> String {
    let s = &outcome.summary;
    let mut text = format!(
        "search q={} filters={}\n\
         records={} pass={} fail_uv={} fail_identity={} not_applicable={}\n",
        s.q,
        if use_filter { "on" } else { "off" },
        s.total,
        s.filter_pass,
        s.fail_uv,
        s.fail_identity,
        s.not_applicable
    );
    if s.desirable.is_empty() {
        text.push_str("desirable pairs: none\n");
    } else {
        writeln!(text, "desirable pairs ({}):", s.desirable.len()).unwrap();
        for &(n, g) in &s.desirable {
            writeln!(text, "  n={n} gcd(n, q^2-1)={g}").unwrap();
        }
    }
    text
}

fn poly_pretty(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match (i, c) {
            (0, _) => format!("{c}"),
            (1, 1) => "T".to_string(),
            (1, _) => format!("{c}*T"),
            (_, 1) => format!("T^{i}"),
            (_, _) => format!("{c}*T^{i}"),
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn run_field_info(args: FieldInfoArgs) -> Result<CmdOutput, CliError> {
    let pw = resolve_field(&args.field)?;
    let ctx_q = FieldCtx::for_prime_power(&pw);
    let ctx_q2 = FieldCtx::quadratic(&ctx_q);
    let record = FieldInfoRecord {
        q: pw.q(),
        p: pw.p(),
        e: pw.e(),
        modulus: ctx_q.modulus_coeffs().to_vec(),
        modulus_pretty: poly_pretty(ctx_q.modulus_coeffs()),
        ext_modulus: ctx_q2.modulus_coeffs().to_vec(),
        ext_modulus_pretty: poly_pretty(ctx_q2.modulus_coeffs()),
    };
    let text = match args.output.format {
        Format::Text => format!(
            "q={} p={} e={}\n\
             GF({}) = F_{}[T]/({})\n\
             GF({}) = GF({})[T]/({})   (coefficients are GF({}) element codes)\n",
            record.q,
            record.p,
            record.e,
            record.q,
            record.p,
            record.modulus_pretty,
            pw.q() * pw.q(),
            record.q,
            record.ext_modulus_pretty,
            record.q,
        ),
        Format::Csv => format!(
            "q,p,e,modulus,ext_modulus\n{},{},{},{},{}\n",
            record.q,
            record.p,
            record.e,
            record
                .modulus
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" "),
            record
                .ext_modulus
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        ),
        Format::Json => to_json(&Report {
            meta: Meta::new("field-info", json!({"q": pw.q(), "p": pw.p(), "e": pw.e()})),
            records: vec![record],
        }),
    };
    finish(&args.output, text, false, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_resolution() {
        let sel = FieldSel {
            q: Some(9),
            p: None,
            e: None,
        };
        assert_eq!(resolve_field(&sel).unwrap().p(), 3);
        let sel = FieldSel {
            q: None,
            p: Some(3),
            e: Some(2),
        };
        assert_eq!(resolve_field(&sel).unwrap().q(), 9);
        let sel = FieldSel {
            q: Some(9),
            p: Some(2),
            e: Some(3),
        };
        assert!(matches!(resolve_field(&sel), Err(CliError::Usage(_))));
        let sel = FieldSel {
            q: None,
            p: Some(3),
            e: None,
        };
        assert!(matches!(resolve_field(&sel), Err(CliError::Usage(_))));
        let sel = FieldSel {
            q: Some(6),
            p: None,
            e: None,
        };
        assert!(matches!(resolve_field(&sel), Err(CliError::Usage(_))));
    }

    #[test]
    fn poly_pretty_formats() {
        assert_eq!(poly_pretty(&[1, 1, 1]), "T^2 + T + 1");
        assert_eq!(poly_pretty(&[1, 0, 1]), "T^2 + 1");
        assert_eq!(poly_pretty(&[0, 1]), "T");
        assert_eq!(poly_pretty(&[0, 2, 1]), "T^2 + 2*T");
        assert_eq!(poly_pretty(&[]), "0");
    }
}
