//! wdx: construct decreasing monomial codes and compute their weight
//! distributions, with closed forms cross-checked against a brute-force
//! oracle and an explicit orbit enumerator.

use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use wdx_core::{
    blended_order, brute_force_wd_with_limit, complete_wd_rm2_subcode, construct_polar,
    construct_rm, construct_rmxpolar, construct_wmin_beta, dual_set, low_weight_spectrum,
    macwilliams_dual_wd, run_suite, CodeSpec, Error, SpectrumEntry, WeightDistribution,
    DEFAULT_BRUTE_LIMIT, SUITES,
};

#[derive(Parser)]
#[command(name = "wdx", version, about = "Weight distributions of decreasing monomial codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Rm,
    Polar,
    Rmxpolar,
    WminBeta,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Closed,
    Brute,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum Range {
    Full,
    Low,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Where the code under analysis comes from: a JSON file (`-` reads from
/// standard input) or inline construction parameters.
#[derive(Args)]
struct CodeSource {
    /// Path to a code JSON file, or - for stdin
    #[arg(long)]
    code: Option<String>,
    /// Variable count (inline construction)
    #[arg(long)]
    m: Option<u8>,
    /// Dimension (inline construction)
    #[arg(long)]
    k: Option<usize>,
    /// Construction rule (inline construction)
    #[arg(long, value_enum)]
    rule: Option<Rule>,
    /// Order for the rm rule
    #[arg(long)]
    r: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Build an information set from a construction rule
    Construct {
        #[arg(long)]
        m: u8,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum)]
        rule: Rule,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Weight distribution (complete or low-weight spectrum)
    Wdist {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        #[arg(long, value_enum, default_value = "full")]
        range: Range,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Cap on the oracle dimension (also WDX_BRUTE_LIMIT)
        #[arg(long)]
        limit_k: Option<usize>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Dual information set and dual distribution, computed two ways
    Dual {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        limit_k: Option<usize>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Run verification suites
    Verify {
        #[arg(long)]
        m: u8,
        /// Suite name, repeatable; "all" runs every suite
        #[arg(long, required = true)]
        suite: Vec<String>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// The blended ordering of degree-2 monomials
    Order {
        #[arg(long)]
        m: u8,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(cli);
    eprintln!("# elapsed: {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Consistency(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn init_threads(threads: Option<usize>) {
    if let Some(t) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
}

fn brute_limit(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("WDX_BRUTE_LIMIT")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_BRUTE_LIMIT)
}

fn build(m: u8, k: Option<usize>, rule: Rule, r: Option<u32>) -> Result<CodeSpec, Error> {
    match rule {
        Rule::Rm => {
            let r = r.ok_or_else(|| Error::invalid("--rule rm needs --r"))?;
            construct_rm(r, m)
        }
        Rule::Polar => construct_polar(m, need_k(k)?),
        Rule::Rmxpolar => construct_rmxpolar(m, need_k(k)?),
        Rule::WminBeta => construct_wmin_beta(m, need_k(k)?),
    }
}

fn need_k(k: Option<usize>) -> Result<usize, Error> {
    k.ok_or_else(|| Error::invalid("this rule needs --k"))
}

fn load_code(source: &CodeSource) -> Result<CodeSpec, Error> {
    if let Some(path) = &source.code {
        let text = if path == "-" {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::invalid(format!("reading stdin: {e}")))?;
            buf
        } else {
            std::fs::read_to_string(path)
                .map_err(|e| Error::invalid(format!("reading {path}: {e}")))?
        };
        return serde_json::from_str(&text)
            .map_err(|e| Error::invalid(format!("parsing code JSON: {e}")));
    }
    let m = source
        .m
        .ok_or_else(|| Error::invalid("need --code or --m/--k/--rule"))?;
    let rule = source
        .rule
        .ok_or_else(|| Error::invalid("need --rule with inline construction"))?;
    build(m, source.k, rule, source.r)
}

#[derive(Serialize)]
struct CodeReport<'a> {
    code: &'a CodeSpec,
    n: usize,
    k: usize,
    r: Option<u32>,
    w_min: Option<usize>,
}

fn code_report(code: &CodeSpec) -> CodeReport<'_> {
    CodeReport {
        code,
        n: code.n(),
        k: code.dimension(),
        r: code.max_degree(),
        w_min: code.min_weight(),
    }
}

fn print_code(code: &CodeSpec, format: Format) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&code_report(code)).unwrap()
        ),
        Format::Text => {
            println!(
                "n={} k={} r={:?} w_min={:?}",
                code.n(),
                code.dimension(),
                code.max_degree(),
                code.min_weight()
            );
            let mut members: Vec<_> = code.info_set().iter().collect();
            members.sort_by(wdx_core::canonical_cmp);
            let names: Vec<String> = members.iter().map(|f| f.to_string()).collect();
            println!("{}", names.join(" "));
        }
    }
}

fn print_distribution(wd: &WeightDistribution, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(wd).unwrap()),
        Format::Text => println!("{}", wd.polynomial_text()),
    }
}

fn print_spectrum(entries: &[SpectrumEntry], format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(entries).unwrap()),
        Format::Text => {
            for e in entries {
                let caveat = if e.exact { "" } else { "  (lower bound: further contributions possible)" };
                println!("w={}: {}{}", e.weight, e.count, caveat);
            }
        }
    }
}

/// Closed-form distribution, and the oracle beside it in auto mode; any
/// disagreement is a consistency failure.
fn wdist_full(code: &CodeSpec, method: Method, limit: usize) -> Result<WeightDistribution, Error> {
    match method {
        Method::Closed => complete_wd_rm2_subcode(code.info_set()),
        Method::Brute => brute_force_wd_with_limit(code, limit),
        Method::Auto => {
            let closed = complete_wd_rm2_subcode(code.info_set());
            match closed {
                Ok(closed) => {
                    if code.dimension() <= limit {
                        let oracle = brute_force_wd_with_limit(code, limit)?;
                        if oracle != closed {
                            return Err(Error::consistency(format!(
                                "closed form {} disagrees with oracle {}",
                                closed.polynomial_text(),
                                oracle.polynomial_text()
                            )));
                        }
                    }
                    Ok(closed)
                }
                // no closed form for this code shape; fall back to the oracle
                Err(Error::InvalidInput(_)) => brute_force_wd_with_limit(code, limit),
                Err(e) => Err(e),
            }
        }
    }
}

fn wdist_low(code: &CodeSpec, method: Method, limit: usize) -> Result<Vec<SpectrumEntry>, Error> {
    let entries = low_weight_spectrum(code.info_set())?;
    let check = matches!(method, Method::Auto | Method::Brute) && code.dimension() <= limit;
    if matches!(method, Method::Brute) && code.dimension() > limit {
        return Err(Error::DimensionLimit {
            k: code.dimension(),
            limit,
        });
    }
    if check {
        let oracle = brute_force_wd_with_limit(code, limit)?;
        for e in &entries {
            let got = oracle.count(e.weight);
            let ok = if e.exact { got == e.count } else { got >= e.count };
            if !ok {
                return Err(Error::consistency(format!(
                    "spectrum count {} at weight {} disagrees with oracle {}",
                    e.count, e.weight, got
                )));
            }
        }
    }
    Ok(entries)
}

#[derive(Serialize)]
struct DualReport {
    dual: CodeSpec,
    n: usize,
    k: usize,
    distribution: WeightDistribution,
    checked_against: &'static str,
}

fn cmd_dual(source: &CodeSource, format: Format, limit: usize) -> Result<ExitCode, Error> {
    let code = load_code(source)?;
    let dual = dual_set(code.info_set())?;
    let dual_code = CodeSpec::new(dual)?;
    // primal distribution: closed form when available, oracle otherwise
    let primal = match complete_wd_rm2_subcode(code.info_set()) {
        Ok(wd) => wd,
        Err(Error::InvalidInput(_)) => brute_force_wd_with_limit(&code, limit)?,
        Err(e) => return Err(e),
    };
    let transformed = macwilliams_dual_wd(&primal)?;
    // second route through the dual information set
    let mut checked_against = "none (dual dimension over the oracle limit)";
    if let Ok(direct) = complete_wd_rm2_subcode(dual_code.info_set()) {
        if direct != transformed {
            return Err(Error::consistency(
                "MacWilliams transform disagrees with the dual closed form",
            ));
        }
        checked_against = "closed form on the dual set";
    } else if dual_code.dimension() <= limit {
        let direct = brute_force_wd_with_limit(&dual_code, limit)?;
        if direct != transformed {
            return Err(Error::consistency(
                "MacWilliams transform disagrees with the dual-code oracle",
            ));
        }
        checked_against = "oracle on the dual set";
    }
    match format {
        Format::Json => {
            let report = DualReport {
                n: dual_code.n(),
                k: dual_code.dimension(),
                dual: dual_code,
                distribution: transformed,
                checked_against,
            };
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        }
        Format::Text => {
            print_code(&dual_code, Format::Text);
            println!("{}", transformed.polynomial_text());
            println!("checked against: {checked_against}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Construct { m, k, rule, r, format } => {
            let code = build(m, k, rule, r)?;
            print_code(&code, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Wdist {
            source,
            method,
            range,
            format,
            limit_k,
            threads,
        } => {
            init_threads(threads);
            let code = load_code(&source)?;
            let limit = brute_limit(limit_k);
            match range {
                Range::Full => {
                    let wd = wdist_full(&code, method, limit)?;
                    if wd.total() != (BigUint::from(1u32) << code.dimension()) {
                        return Err(Error::consistency(
                            "distribution does not sum to 2^K",
                        ));
                    }
                    print_distribution(&wd, format);
                }
                Range::Low => {
                    let entries = wdist_low(&code, method, limit)?;
                    print_spectrum(&entries, format);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dual {
            source,
            format,
            limit_k,
            threads,
        } => {
            init_threads(threads);
            cmd_dual(&source, format, brute_limit(limit_k))
        }
        Command::Verify { m, suite, threads } => {
            init_threads(threads);
            let names: Vec<&str> = if suite.iter().any(|s| s == "all") {
                SUITES.to_vec()
            } else {
                suite.iter().map(|s| s.as_str()).collect()
            };
            let mut all_pass = true;
            for name in names {
                let report = run_suite(name, m)?;
                let status = if report.passed() { "pass" } else { "FAIL" };
                println!("{status} {name} (m={m}, {} checks)", report.checks);
                for f in &report.failures {
                    println!("  counterexample: {f}");
                }
                all_pass &= report.passed();
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Order { m, format } => {
            let order = blended_order(m)?;
            match format {
                Format::Json => {
                    let pairs: Vec<Vec<u8>> = order.iter().map(|f| f.indices()).collect();
                    println!("{}", serde_json::to_string(&pairs).unwrap());
                }
                Format::Text => {
                    for f in &order {
                        println!("level {:>2}  {}", f.lambda_size(), f);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
