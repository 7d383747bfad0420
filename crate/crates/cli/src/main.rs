use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vatican_core::constructions::{
    prescott_triple, primitive_root_arrangement, primitive_root_certificate, walecki,
};
use vatican_core::design::{balance_report, design_from_tuple, BalanceReport, Design, DesignEnvelope};
use vatican_core::search::{
    self, init_global_workers, sweep_with, SearchLimits, SearchMode, SearchSpec, SearchStatus,
    SweepConfig, SweepRow, Target, DEFAULT_NODE_BUDGET,
};
use vatican_core::tables::{check_dataset, Dataset};
use vatican_core::triangle::{expand_pseudoterrace, reverse_pair, roman_k};
use vatican_core::{make_group, Arrangement, Automorphism, Error, GroupDescriptor, TupleFamily};

const EXIT_UNMET: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "vatican", version, about = "Roman-k and Vatican crossover designs from group sequencings")]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for searches and sweeps (0 = available parallelism).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Paper,
}

#[derive(Subcommand)]
enum Command {
    /// Build arrangements with an explicit construction.
    Construct(ConstructArgs),
    /// Expand a pseudoterrace, or a terrace with its reverse, into a tuple.
    Expand(ExpandArgs),
    /// Report the carryover balance of a design CSV.
    Verify(VerifyArgs),
    /// Best primitive root construction for every fold over a range of primes.
    Sweep(SweepArgs),
    /// Exhaustive search for pseudoterraces or tuples.
    Search(SearchArgs),
    /// Recompute a bundled reference data set.
    Tables(TablesArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Walecki,
    Prescott,
    PrimitiveRoot,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    method: Method,
    /// Number of treatments, for walecki and prescott.
    #[arg(long)]
    t: Option<usize>,
    /// Prime, for primitive-root.
    #[arg(long)]
    p: Option<u64>,
    /// Primitive root of p.
    #[arg(long)]
    rho: Option<u64>,
    /// Emit the design of the constructed arrangements.
    #[arg(long)]
    design: bool,
    /// Expand a primitive root construction into its tuple and emit that design.
    #[arg(long)]
    expand: bool,
    /// Write the design here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExpandArgs {
    /// Group descriptor such as Z7, Z4xZ2, D10, Q8.
    #[arg(long)]
    group: String,
    /// Automorphism as generator images, e.g. "1->2" or "u->u, v->u4v".
    #[arg(long, conflicts_with = "terrace")]
    aut: Option<String>,
    /// Pair the arrangement with its reverse instead.
    #[arg(long)]
    terrace: bool,
    /// Comma-separated element names.
    #[arg(long)]
    arrangement: String,
    #[arg(long)]
    design: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Design CSV, one subject per line.
    path: PathBuf,
    /// Exit 1 unless the design is Roman-k for this k.
    #[arg(long, conflicts_with = "require_vatican")]
    require_k: Option<usize>,
    /// Exit 1 unless the design is Vatican.
    #[arg(long)]
    require_vatican: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 3)]
    p_min: u64,
    #[arg(long, default_value_t = 61)]
    p_max: u64,
    #[arg(long, default_value_t = 2)]
    ell_min: u64,
    #[arg(long)]
    ell_max: Option<u64>,
    /// Drop rows whose best k is below this; 0 keeps folds without constructions.
    #[arg(long, default_value_t = 0)]
    k_min: u64,
    /// Also sweep the fold l = p-1.
    #[arg(long)]
    include_full_fold: bool,
    /// Same as `--format paper`.
    #[arg(long)]
    paper_format: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Pseudoterraces under the automorphism given by --aut.
    Pseudoterrace,
    /// Pseudoterraces under every automorphism of order --ell.
    Any,
    /// Tuples of --ell arrangements searched jointly.
    Tuple,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    group: String,
    /// Fold: automorphism order, or tuple size.
    #[arg(long)]
    ell: usize,
    #[arg(long)]
    aut: Option<String>,
    /// Target balance; defaults to Vatican.
    #[arg(long, conflicts_with = "vatican")]
    k: Option<usize>,
    #[arg(long)]
    vatican: bool,
    /// Defaults to pseudoterrace with --aut, any without.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Fixed tuple member (tuple mode), repeatable.
    #[arg(long)]
    fixed: Vec<String>,
    /// Stop after this many witnesses.
    #[arg(long)]
    limit: Option<usize>,
    /// Node budget; 0 means unlimited.
    #[arg(long, env = "VATICAN_NODE_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    time_budget: Option<f64>,
    /// Raise the group order bound.
    #[arg(long)]
    max_order: Option<usize>,
    /// Try one second entry per orbit of the automorphisms normalizing the
    /// fold's automorphism; reports canonical witnesses only.
    #[arg(long)]
    reduce_symmetry: bool,
}

#[derive(Args)]
struct TablesArgs {
    /// 1, 2, 3, 4, 5, list-1000, list-10000, text, or a data set name.
    which: String,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_global_workers(cli.workers);
    let result = match &cli.command {
        Command::Construct(a) => construct(&cli, a),
        Command::Expand(a) => expand(&cli, a),
        Command::Verify(a) => verify(a),
        Command::Sweep(a) => sweep(&cli, a),
        Command::Search(a) => run_search(&cli, a),
        Command::Tables(a) => tables(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn parse_group(text: &str) -> Result<std::sync::Arc<vatican_core::FiniteGroup>, Failure> {
    let d: GroupDescriptor = text.parse()?;
    Ok(make_group(&d)?)
}

fn paren(a: &Arrangement) -> String {
    format!("({a})")
}

fn report_json(r: &BalanceReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

fn report_line(r: &BalanceReport) -> String {
    let property = if r.vatican {
        "Vatican".to_string()
    } else if r.roman {
        format!("Roman-{}", r.max_k)
    } else {
        "not Roman".to_string()
    };
    format!(
        "{}x{} design, n/t = {}, M = {:?}, max k = {} ({property})",
        r.n, r.t, r.threshold, r.max_per_distance, r.max_k
    )
}

/// Writes `text` to `path`, or stdout.
fn emit(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn emit_family(
    format: Format,
    family: &TupleFamily,
    extra: Option<Value>,
    with_design: bool,
    output: Option<&PathBuf>,
) -> CmdResult {
    // the report always comes from the design-level counts
    let design = design_from_tuple(family);
    let report = balance_report(&design)?;
    let triangle_k = roman_k(family);
    if triangle_k != report.max_k {
        return Err(Failure {
            code: EXIT_UNMET,
            message: format!(
                "triangle scan gives k={triangle_k} but design counts give k={}",
                report.max_k
            ),
        });
    }
    match format {
        Format::Json => {
            let mut v = json!({
                "group": family.group().descriptor().to_string(),
                "members": family.members().iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                "k": report.max_k,
                "report": report_json(&report),
            });
            if let Some(Value::Object(extra)) = extra {
                v.as_object_mut().unwrap().extend(extra);
            }
            if with_design {
                v["design"] = serde_json::to_value(DesignEnvelope::new(&design, Some(report.clone())))
                    .expect("design serializes");
            }
            emit(output, &format!("{v}\n"))?;
        }
        Format::Csv | Format::Paper => {
            let mut head = String::new();
            for m in family.members() {
                let shown = if format == Format::Paper { paren(m) } else { m.to_string() };
                head.push_str(&format!("# {shown}\n"));
            }
            if let Some(Value::Object(extra)) = &extra {
                if let Some(Value::String(q)) = extra.get("quadruple") {
                    head.push_str(&format!("# certificate {q}\n"));
                }
            }
            head.push_str(&format!("# {}\n", report_line(&report)));
            if with_design {
                match output {
                    Some(_) => {
                        print!("{head}");
                        emit(output, &design.to_csv())?;
                    }
                    None => emit(None, &format!("{head}{}", design.to_csv()))?,
                }
            } else {
                emit(None, &head)?;
            }
        }
    }
    Ok(0)
}

fn construct(cli: &Cli, a: &ConstructArgs) -> CmdResult {
    let format = cli.format.unwrap_or(Format::Csv);
    match a.method {
        Method::Walecki | Method::Prescott => {
            if a.p.is_some() || a.rho.is_some() {
                return Err(usage("--p/--rho apply only to --method primitive-root"));
            }
            if a.expand {
                return Err(usage("--expand applies only to --method primitive-root"));
            }
            let t = a.t.ok_or_else(|| usage("--t is required"))?;
            let family = if a.method == Method::Walecki {
                TupleFamily::singleton(walecki(t)?)
            } else {
                prescott_triple(t)?
            };
            emit_family(format, &family, None, a.design, a.output.as_ref())
        }
        Method::PrimitiveRoot => {
            if a.t.is_some() {
                return Err(usage("--t does not apply to --method primitive-root"));
            }
            let p = a.p.ok_or_else(|| usage("--p is required"))?;
            let rho = a.rho.ok_or_else(|| usage("--rho is required"))?;
            let arrangement = primitive_root_arrangement(p, rho)?;
            let cert = primitive_root_certificate(p, rho)?;
            if a.expand {
                let alpha = Automorphism::multiplication(arrangement.group(), cert.r)?;
                let family = expand_pseudoterrace(&arrangement, &alpha)?;
                let extra = json!({ "certificate": cert.to_json(), "quadruple": cert.quadruple() });
                let code = emit_family(format, &family, Some(extra), true, a.output.as_ref())?;
                return Ok(code);
            }
            match format {
                Format::Json => println!(
                    "{}",
                    json!({ "arrangement": arrangement.to_string(), "certificate": cert.to_json() })
                ),
                Format::Csv => {
                    println!("{arrangement}");
                    println!("# certificate {}", cert.quadruple());
                }
                Format::Paper => {
                    println!("{}", paren(&arrangement));
                    println!("{}", cert.quadruple());
                }
            }
            Ok(0)
        }
    }
}

fn expand(cli: &Cli, a: &ExpandArgs) -> CmdResult {
    let g = parse_group(&a.group)?;
    let arrangement = Arrangement::parse(&g, &a.arrangement)?;
    let family = match (&a.aut, a.terrace) {
        (Some(spec), false) => expand_pseudoterrace(&arrangement, &Automorphism::parse(&g, spec)?)?,
        (None, true) => reverse_pair(&arrangement)?,
        _ => return Err(usage("give exactly one of --aut or --terrace")),
    };
    emit_family(
        cli.format.unwrap_or(Format::Csv),
        &family,
        None,
        a.design,
        a.output.as_ref(),
    )
}

fn verify(a: &VerifyArgs) -> CmdResult {
    let text = std::fs::read_to_string(&a.path)?;
    let design = Design::from_csv(&text)?;
    let report = balance_report(&design)?;
    println!("{}", report_json(&report));
    let met = match (a.require_k, a.require_vatican) {
        (Some(k), _) => report.max_k >= k,
        (None, true) => report.vatican,
        (None, false) => true,
    };
    Ok(if met { 0 } else { EXIT_UNMET })
}

fn sweep(cli: &Cli, a: &SweepArgs) -> CmdResult {
    let format = if a.paper_format {
        Format::Paper
    } else {
        cli.format.unwrap_or(Format::Json)
    };
    let config = SweepConfig {
        p_min: a.p_min,
        p_max: a.p_max,
        ell_min: a.ell_min,
        ell_max: a.ell_max.unwrap_or(u64::MAX),
        k_min: a.k_min,
        include_full_fold: a.include_full_fold,
    };
    if config.p_max > search::SWEEP_P_LIMIT {
        return Err(usage(format!("--p-max above {} is not supported", search::SWEEP_P_LIMIT)));
    }
    let rows = sweep_with(&config);
    let mut out = String::new();
    match format {
        Format::Json => {
            for r in &rows {
                out.push_str(&format!("{}\n", r.to_json()));
            }
        }
        Format::Csv => {
            out.push_str("p,ell,best_k,rho,r\n");
            for r in &rows {
                match r.best {
                    Some(b) => out.push_str(&format!("{},{},{},{},{}\n", r.p, r.ell, b.k, b.rho, b.r)),
                    None => out.push_str(&format!("{},{},,,\n", r.p, r.ell)),
                }
            }
        }
        Format::Paper => {
            let mut i = 0;
            while i < rows.len() {
                let p = rows[i].p;
                let entries: Vec<String> = rows[i..]
                    .iter()
                    .take_while(|r| r.p == p)
                    .map(|r: &SweepRow| {
                        let star = if r.vatican() { "*" } else { "" };
                        format!("{star}{}", r.paper_format())
                    })
                    .collect();
                i += entries.len();
                out.push_str(&format!("{p}: {}\n", entries.join(" ")));
            }
        }
    }
    emit(None, &out)?;
    Ok(0)
}

fn run_search(cli: &Cli, a: &SearchArgs) -> CmdResult {
    let format = cli.format.unwrap_or(Format::Csv);
    let g = parse_group(&a.group)?;
    let target = match a.k {
        Some(k) => Target::Roman(k),
        None => Target::Vatican,
    };
    let mode = match (a.mode, &a.aut) {
        (Some(Mode::Pseudoterrace) | None, Some(spec)) => SearchMode::Pseudoterrace(Automorphism::parse(&g, spec)?),
        (Some(Mode::Pseudoterrace), None) => return Err(usage("pseudoterrace mode needs --aut")),
        (Some(Mode::Any) | None, None) => SearchMode::AnyAutomorphism,
        (Some(Mode::Tuple), None) => SearchMode::Tuple {
            fixed: a
                .fixed
                .iter()
                .map(|m| Arrangement::parse(&g, m))
                .collect::<Result<_, _>>()?,
        },
        (Some(_), Some(_)) => return Err(usage("--aut applies only to pseudoterrace mode")),
    };
    if !a.fixed.is_empty() && !matches!(mode, SearchMode::Tuple { .. }) {
        return Err(usage("--fixed applies only to tuple mode"));
    }
    let limits = SearchLimits {
        node_budget: (a.budget > 0).then_some(a.budget),
        time_budget: a.time_budget.map(Duration::from_secs_f64),
        max_witnesses: a.limit,
        workers: cli.workers,
        max_order: a.max_order,
    };
    let mut spec = SearchSpec::new(&g, a.ell, target, mode)?.with_limits(limits);
    if a.reduce_symmetry {
        if matches!(spec.mode, SearchMode::Tuple { .. }) {
            return Err(usage("--reduce-symmetry applies only to pseudoterrace searches"));
        }
        spec = spec.with_symmetry_reduction();
    }
    let k = spec.k();
    let outcome = search::search(&spec)?;
    for w in &outcome.witnesses {
        if !w.verify(k) {
            return Err(Failure {
                code: EXIT_UNMET,
                message: format!("witness {} failed re-verification", w.describe()),
            });
        }
    }
    let status = match outcome.status {
        SearchStatus::Complete => "complete",
        SearchStatus::WitnessLimit => "witness-limit",
        SearchStatus::BudgetExhausted => "budget-exhausted",
    };
    match format {
        Format::Json => {
            let ws: Vec<Value> = outcome
                .witnesses
                .iter()
                .map(|w| match w {
                    search::Witness::Pseudoterrace {
                        arrangement,
                        automorphism,
                    } => json!({
                        "arrangement": arrangement.to_string(),
                        "automorphism": automorphism.spec_string(),
                        "k": w.k(),
                    }),
                    search::Witness::Tuple(f) => json!({
                        "members": f.members().iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                        "k": w.k(),
                    }),
                })
                .collect();
            println!(
                "{}",
                json!({
                    "group": g.descriptor().to_string(),
                    "ell": a.ell,
                    "k": k,
                    "status": status,
                    "nodes": outcome.nodes,
                    "witnesses": ws,
                })
            );
        }
        Format::Csv | Format::Paper => {
            for w in &outcome.witnesses {
                println!("{}", w.describe());
            }
            let summary = match outcome.status {
                SearchStatus::Complete if outcome.witnesses.is_empty() => {
                    "none exist (search complete)".to_string()
                }
                SearchStatus::Complete => format!("{} found (search complete)", outcome.witnesses.len()),
                SearchStatus::WitnessLimit => format!("{} found (witness limit)", outcome.witnesses.len()),
                SearchStatus::BudgetExhausted => format!(
                    "{} found before the budget ran out; nothing is claimed about the rest",
                    outcome.witnesses.len()
                ),
            };
            println!("# {} l={} k={}: {summary}; {} nodes", g.descriptor(), a.ell, k, outcome.nodes);
        }
    }
    Ok(match outcome.status {
        SearchStatus::BudgetExhausted => EXIT_BUDGET,
        _ if outcome.witnesses.is_empty() => EXIT_UNMET,
        _ => 0,
    })
}

fn tables(a: &TablesArgs) -> CmdResult {
    let which: Dataset = a.which.parse()?;
    let rows = check_dataset(which);
    let failed = rows.iter().filter(|r| !r.pass).count();
    for r in &rows {
        println!("{r}");
    }
    println!("# {which}: {} rows, {failed} failed", rows.len());
    Ok(if failed == 0 { 0 } else { EXIT_UNMET })
}
