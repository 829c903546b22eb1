//! `polymat`: stability invariants of powers of monomial ideals from the command line.
//!
//! Ideals are read from a file argument or stdin in the text format
//! (`ring <n>` followed by generators such as `x1*x2^2`). Exit status is 2 on
//! parse or usage errors, 3 when a computation budget is exhausted, and 1 when
//! a verify check fails or any other error occurs.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use polymat::decomposition::{
    ass_polymatroidal_fast, associated_primes, decomposition_to_json, irreducible_decomposition,
};
use polymat::families::{
    almost_squarefree_veronese, enumerate_matroidal, enumerate_polymatroidal, veronese_type,
    EnumerationMode, VeroneseSpec,
};
use polymat::format::{format_ideal, ideal_to_json, parse_ideal};
use polymat::homology::HomologyBudget;
use polymat::stability::{depth_with_method, stability_report, StabilityOptions, DEFAULT_MAX_POWER};
use polymat::structure::{analytic_spread, is_matroidal, is_polymatroidal, linear_relation_graph};
use polymat::verify::{check_ideals, run_suite, CheckId, Context, SuiteConfig, SuiteReport};
use polymat::{Error, Monomial, MonomialIdeal, MonomialPrime};

#[derive(Parser, Debug)]
#[command(name = "polymat", version, about = "Associated primes, depth, astab and dstab of powers of monomial ideals")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Highest power traced when no proven bound applies.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_POWER)]
    max_power: u32,

    /// Cost bound for the homology oracle (sum over the lcm lattice of 2^|supp| * |G|).
    #[arg(long, global = true)]
    budget: Option<u128>,

    /// Seed for random enumeration and the verify corpora.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct Input {
    /// Ideal file; stdin when omitted or `-`.
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PoweredInput {
    #[command(flatten)]
    input: Input,

    /// Work with the power I^t.
    #[arg(short = 't', long = "power", default_value_t = 1)]
    power: u32,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Basic invariants: degrees, exchange property, support, gcd, graph, analytic spread.
    Info(Input),
    /// Associated primes of I^t.
    Ass(PoweredInput),
    /// depth R/I^t.
    Depth(PoweredInput),
    /// Index of Ass stability.
    Astab(Input),
    /// Index of depth stability.
    Dstab(Input),
    /// The linear relation graph.
    Gamma(Input),
    /// Irreducible decomposition of I^t.
    Decompose(PoweredInput),
    /// Monomial localization: variables outside the prime are set to 1.
    Localize {
        #[command(flatten)]
        input: Input,
        /// 1-based variables of the prime, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        prime: Vec<usize>,
    },
    /// The power I^t.
    Power(PoweredInput),
    /// Veronese type ideal of degree d with exponent caps.
    Veronese {
        n: usize,
        d: u32,
        /// Ascending caps a_1,...,a_n; all ones when omitted.
        #[arg(long, value_delimiter = ',')]
        caps: Option<Vec<u32>>,
    },
    /// Square-free Veronese ideal with at most one generator removed.
    Asfv {
        n: usize,
        d: u32,
        /// Generator to remove, e.g. `x3*x4`.
        #[arg(long)]
        omit: Option<String>,
    },
    /// Full-supported, gcd-1 matroidal (or polymatroidal) ideals.
    Enumerate {
        n: usize,
        d: u32,
        /// Sample this many with a seeded sampler instead of enumerating all.
        #[arg(long)]
        count: Option<usize>,
        /// Enumerate polymatroidal rather than matroidal ideals.
        #[arg(long)]
        polymatroidal: bool,
    },
    /// Run the theorem suite.
    Verify {
        /// Only the two fixed-ideal regressions.
        #[arg(long)]
        regressions: bool,
        /// Restrict to these check ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Random cubic matroidal instances on 7 variables.
        #[arg(long, default_value_t = 200)]
        random_count: usize,
        /// Write failures, inconclusive instances and witnesses as ideal files here.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
        /// Evaluate the selected checks on the ideals of this file instead of their corpora.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidArgument(_) => 2,
            Error::BudgetExceeded { .. } => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(e: io::Error) -> Failure {
    Failure {
        code: 1,
        message: e.to_string(),
    }
}

/// Text and JSON renderings of a result, plus the exit status.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }
}

fn read_source(path: Option<&PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(|e| Failure {
            code: 2,
            message: format!("{}: {e}", p.display()),
        }),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(io_failure)?;
            Ok(s)
        }
    }
}

fn read_ideal(input: &Input) -> Result<MonomialIdeal, Failure> {
    Ok(parse_ideal(&read_source(input.file.as_ref())?)?)
}

fn options(cli: &Cli) -> StabilityOptions {
    let mut opts = StabilityOptions {
        max_power: cli.max_power,
        ..StabilityOptions::default()
    };
    if let Some(b) = cli.budget {
        opts.homology.cost = b;
    }
    opts
}

fn homology_budget(cli: &Cli) -> HomologyBudget {
    options(cli).homology
}

fn vars_text(vars: &[usize]) -> String {
    vars.iter()
        .map(|v| format!("x{}", v + 1))
        .collect::<Vec<_>>()
        .join(" ")
}

fn info(ideal: &MonomialIdeal) -> Result<Output, Failure> {
    let mut degrees: Vec<u64> = ideal.generators().iter().map(Monomial::degree).collect();
    degrees.dedup();
    degrees.sort_unstable();
    degrees.dedup();
    let poly = is_polymatroidal(ideal)?;
    let matroidal = is_matroidal(ideal)?;
    let info = ideal.support_and_gcd()?;
    let graph = linear_relation_graph(ideal)?;
    let ell = if poly { Some(analytic_spread(ideal)?) } else { None };
    let comps: Vec<String> = graph
        .component_primes()
        .iter()
        .map(MonomialPrime::to_string)
        .collect();
    let mut text = format!(
        "ring: {}\ngenerators: {}\ndegrees: {}\nsquare-free: {}\npolymatroidal: {poly}\nmatroidal: {matroidal}\nsupport: {}\nfull-supported: {}\ngcd: {}\nlinear relation graph: {} vertices, {} edges, {} components {}\n",
        ideal.n(),
        ideal.len(),
        degrees
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(", "),
        ideal.is_squarefree(),
        vars_text(&info.support),
        info.full_supported,
        info.gcd,
        graph.vertex_count(),
        graph.edges.len(),
        graph.component_count(),
        comps.join(" "),
    );
    if let Some(l) = ell {
        text.push_str(&format!("analytic spread: {l}\n"));
    }
    let json = json!({
        "n": ideal.n(),
        "generators": ideal.len(),
        "degrees": degrees,
        "squarefree": ideal.is_squarefree(),
        "polymatroidal": poly,
        "matroidal": matroidal,
        "support": info.support.iter().map(|v| v + 1).collect::<Vec<_>>(),
        "full_supported": info.full_supported,
        "gcd": info.gcd.exponents(),
        "gamma": graph.to_json(),
        "ell": ell,
    });
    Ok(Output::new(text, json))
}

fn powered(input: &PoweredInput) -> Result<MonomialIdeal, Failure> {
    let ideal = read_ideal(&input.input)?;
    Ok(ideal.power(input.power)?)
}

fn ideal_output(ideal: &MonomialIdeal) -> Output {
    Output::new(format_ideal(ideal), ideal_to_json(ideal))
}

fn stability(cli: &Cli, input: &Input, which: &str) -> Result<Output, Failure> {
    let ideal = read_ideal(input)?;
    let report = stability_report(&ideal, &options(cli))?;
    let index = if which == "astab" { report.astab } else { report.dstab };
    let mut text = format!("{index}\n");
    if !report.certified {
        text.push_str(&format!(
            "# not certified: traced t = 1..{}{}\n",
            report.trace.steps.len(),
            if report.trace.polymatroidal {
                " below the analytic spread bound"
            } else {
                " without a proven bound"
            }
        ));
    }
    for d in &report.trace.diagnostics {
        text.push_str(&format!("# {d}\n"));
    }
    let mut out = Output::new(text, report.to_json());
    if report.trace.budget_exhausted {
        out.code = 3;
    }
    Ok(out)
}

fn enumerate(cli: &Cli, n: usize, d: u32, count: Option<usize>, poly: bool) -> Result<Output, Failure> {
    let mode = match count {
        Some(count) => EnumerationMode::Random {
            seed: cli.seed.unwrap_or(0),
            count,
        },
        None => EnumerationMode::Exhaustive,
    };
    let ideals = if poly {
        enumerate_polymatroidal(n, d, mode)?
    } else {
        enumerate_matroidal(n, d, mode)?
    };
    let text: String = ideals.iter().map(format_ideal).collect();
    let json = Value::Array(ideals.iter().map(ideal_to_json).collect());
    Ok(Output::new(text, json))
}

fn parse_omit(n: usize, text: &str) -> Result<Monomial, Failure> {
    let ideal = parse_ideal(&format!("ring {n}\n{text}\n"))?;
    match ideal.generators() {
        [g] => Ok(g.clone()),
        _ => Err(Error::InvalidArgument(format!("`{text}` is not a single monomial")).into()),
    }
}

fn verify(
    cli: &Cli,
    regressions: bool,
    only: &[String],
    random_count: usize,
    witness_dir: Option<&PathBuf>,
    input: Option<&PathBuf>,
) -> Result<Output, Failure> {
    let only = if only.is_empty() {
        None
    } else {
        Some(
            only.iter()
                .map(|s| s.parse::<CheckId>())
                .collect::<Result<Vec<_>, _>>()?,
        )
    };
    let mut config = SuiteConfig {
        max_power: cli.max_power,
        random_count,
        regressions_only: regressions,
        only,
        ..SuiteConfig::default()
    };
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    let report = match input {
        Some(path) => {
            let ideals = polymat::format::parse_ideals(&read_source(Some(path))?)?;
            let start = std::time::Instant::now();
            let ctx = Context::new(config.clone());
            let results = config
                .selected()
                .into_iter()
                .map(|id| check_ideals(id, &ctx, &ideals))
                .collect();
            SuiteReport {
                results,
                elapsed: start.elapsed(),
            }
        }
        None => run_suite(config),
    };
    if let Some(dir) = witness_dir {
        report.write_witnesses(dir).map_err(io_failure)?;
    }
    let mut out = Output::new(report.table(), report.to_json());
    out.code = report.exit_code() as u8;
    Ok(out)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.verb {
        Verb::Info(input) => info(&read_ideal(input)?),
        Verb::Ass(input) => {
            let ideal = powered(input)?;
            let ass = if is_polymatroidal(&ideal)? {
                ass_polymatroidal_fast(&ideal)?
            } else {
                associated_primes(&ideal)?
            };
            let text: String = ass.primes().iter().map(|p| format!("{p}\n")).collect();
            let json = json!({"t": input.power, "ass": ass.to_lists()});
            Ok(Output::new(text, json))
        }
        Verb::Depth(input) => {
            let ideal = powered(input)?;
            let (depth, method) = depth_with_method(&ideal, &homology_budget(cli))?;
            let json = json!({"t": input.power, "depth": depth, "method": method.to_string()});
            Ok(Output::new(format!("{depth}\n"), json))
        }
        Verb::Astab(input) => stability(cli, input, "astab"),
        Verb::Dstab(input) => stability(cli, input, "dstab"),
        Verb::Gamma(input) => {
            let g = linear_relation_graph(&read_ideal(input)?)?;
            let mut text = format!("vertices: {}\nedges:", vars_text(&g.vertices));
            for &(a, b) in &g.edges {
                text.push_str(&format!(" x{}-x{}", a + 1, b + 1));
            }
            text.push_str(&format!("\ncomponents: {}\n", g.component_count()));
            for c in &g.components {
                text.push_str(&format!("  {}\n", vars_text(c)));
            }
            Ok(Output::new(text, g.to_json()))
        }
        Verb::Decompose(input) => {
            let ideal = powered(input)?;
            let comps = irreducible_decomposition(&ideal)?;
            let ass = associated_primes(&ideal)?;
            let mut text = String::new();
            for c in &comps {
                text.push_str(&format!("{}\n", c.to_ideal(ideal.n())?));
            }
            Ok(Output::new(text, decomposition_to_json(&comps, &ass)))
        }
        Verb::Localize { input, prime } => {
            let ideal = read_ideal(input)?;
            let mut vars = Vec::with_capacity(prime.len());
            for &v in prime {
                if v == 0 || v > ideal.n() {
                    return Err(Error::InvalidArgument(format!(
                        "x{v} outside ring of {} variables",
                        ideal.n()
                    ))
                    .into());
                }
                vars.push(v - 1);
            }
            Ok(ideal_output(&ideal.localize(&MonomialPrime::new(vars))?))
        }
        Verb::Power(input) => Ok(ideal_output(&powered(input)?)),
        Verb::Veronese { n, d, caps } => {
            let caps = caps.clone().unwrap_or_else(|| vec![1; *n]);
            Ok(ideal_output(&veronese_type(&VeroneseSpec::new(*n, *d, caps)?)?))
        }
        Verb::Asfv { n, d, omit } => {
            let omit = omit.as_deref().map(|t| parse_omit(*n, t)).transpose()?;
            Ok(ideal_output(&almost_squarefree_veronese(*n, *d, omit.as_ref())?))
        }
        Verb::Enumerate {
            n,
            d,
            count,
            polymatroidal,
        } => enumerate(cli, *n, *d, *count, *polymatroidal),
        Verb::Verify {
            regressions,
            only,
            random_count,
            witness_dir,
            input,
        } => verify(
            cli,
            *regressions,
            only,
            *random_count,
            witness_dir.as_ref(),
            input.as_ref(),
        ),
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("POLYMAT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&out.json).expect("JSON values serialize"))
            } else {
                out.text
            };
            let mut stdout = io::stdout().lock();
            if stdout.write_all(body.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
