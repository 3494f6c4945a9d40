//! Command-line front end. `run` returns the process exit code:
//! 0 success, 1 usage error or instance too large, 2 invalid instance,
//! 3 verification failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigRational;
use serde_json::{json, Value};

use crate::decomp::{
    fujishige_decmin, groenevelt_decmin, DominatorOrder, FujishigeOptions, GroeneveltOptions,
    TieRule,
};
use crate::error::Error;
use crate::instance::{parse_cost, parse_instance, Instance};
use crate::partitions::{
    canonical_partition_iterative, min_norm_point, principal_partition, ValuedChain,
};
use crate::relaxation::{
    continuous_relaxation_decmin, decmin_structure, min_cost_decmin, BASIS_ENUMERATION_BOUND,
};
use crate::setfn::vector::{format_rational, parse_rational};
use crate::setfn::{GroundSet, IntVec, RatVec, Subset, SupermodularOracle};
use crate::verify::battery::{run_batch, run_theorem_battery, BatteryOptions, BatteryReport};
use crate::verify::brute::brute_decmin_set;
use crate::verify::enumerate::{enumerate_members, DEFAULT_CAP};
use crate::verify::generate::{generate, rng_from_seed, GenKind, MAX_TABLE_N};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "decmin",
    version,
    about = "Decreasingly minimal elements of M-convex sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a dec-min element.
    Decmin(DecminArgs),
    /// Print the canonical or principal partition.
    Partition(PartitionArgs),
    /// Print the min-norm point of the base polyhedron.
    Minnorm(InstanceArg),
    /// Cheapest dec-min element for a linear cost.
    Mincost(MincostArgs),
    /// Print the dec-min structure: base vector, block matroids and bases.
    Structure(InstanceArg),
    /// Run the property battery on an instance or on generated instances.
    Verify(VerifyArgs),
    /// Write a random instance.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct InstanceArg {
    instance: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algorithm {
    Groenevelt,
    Fujishige,
    Relax,
    Brute,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Tie {
    Lowest,
    Highest,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Index,
    Reverse,
}

#[derive(Args, Debug)]
struct DecminArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "groenevelt")]
    alg: Algorithm,
    /// Include the recursion trace (groenevelt, fujishige).
    #[arg(long)]
    trace: bool,
    /// Root start vector, comma-separated (groenevelt: the uniform start; fujishige: the seed).
    #[arg(long)]
    start: Option<String>,
    /// Which elements get the extra unit in the uniform start (groenevelt).
    #[arg(long, value_enum, default_value = "lowest")]
    tie: Tie,
    /// Coordinate order of the minimal dominator search (groenevelt).
    #[arg(long, value_enum, default_value = "index")]
    order: Order,
    /// Continuous minimizer to round, comma-separated rationals (relax); defaults to the min-norm point.
    #[arg(long)]
    xstar: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    Canonical,
    Principal,
}

#[derive(Args, Debug)]
struct PartitionArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "canonical")]
    which: Which,
}

#[derive(Args, Debug)]
struct MincostArgs {
    instance: PathBuf,
    /// A JSON file holding a cost array, or an inline comma-separated list; defaults to the instance's cost.
    #[arg(long)]
    cost: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Instance file; without it, generated instances are checked.
    instance: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    /// Potential bound for the min-max scan (default 2·max|bound| + 2).
    #[arg(long)]
    scan_bound: Option<i64>,
    /// Print every check of every instance, not only failures.
    #[arg(long)]
    verbose: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Graph,
    Modular,
    Table,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            _ if e.is_size_limit() => EXIT_USAGE,
            Error::Io(_) => EXIT_USAGE,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
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

type Outcome = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Decmin(a) => cmd_decmin(&a, out, err),
        Command::Partition(a) => cmd_partition(&a, out, err),
        Command::Minnorm(a) => cmd_minnorm(&a.instance, out, err),
        Command::Mincost(a) => cmd_mincost(&a, out, err),
        Command::Structure(a) => cmd_structure(&a.instance, out, err),
        Command::Verify(a) => cmd_verify(&a, out, err),
        Command::Gen(a) => cmd_gen(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load(
    path: &Path,
    err: &mut dyn Write,
) -> std::result::Result<(Instance, SupermodularOracle), Failure> {
    let (inst, p, warnings) = parse_instance(path)?;
    for w in warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    Ok((inst, p))
}

fn emit(out: &mut dyn Write, v: &Value) -> Outcome {
    let text = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    writeln!(out, "{text}").map_err(|e| usage(e.to_string()))?;
    Ok(EXIT_OK)
}

fn names(ground: &GroundSet, set: Subset) -> Value {
    json!(set
        .iter()
        .map(|s| ground.names[s].as_str())
        .collect::<Vec<_>>())
}

fn rationals(v: &[BigRational]) -> Value {
    json!(v.iter().map(format_rational).collect::<Vec<_>>())
}

fn parse_int_list(text: &str) -> std::result::Result<IntVec, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| usage(format!("not an integer: {t:?}")))
        })
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(IntVec)
}

fn parse_rational_list(text: &str) -> std::result::Result<Vec<BigRational>, Failure> {
    text.split(',')
        .map(|t| parse_rational(t).map_err(|e| usage(e.to_string())))
        .collect()
}

fn check_dim(what: &str, got: usize, n: usize) -> std::result::Result<(), Failure> {
    if got != n {
        return Err(usage(format!(
            "{what} has {got} entries, the instance has {n} elements"
        )));
    }
    Ok(())
}

fn cmd_decmin(a: &DecminArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (_, p) = load(&a.instance, err)?;
    let start = a.start.as_deref().map(parse_int_list).transpose()?;
    if let Some(s) = &start {
        check_dim("--start", s.dim(), p.n())?;
    }
    let mut report = serde_json::Map::new();
    let z = match a.alg {
        Algorithm::Groenevelt => {
            let opts = GroeneveltOptions {
                root_start: start,
                tie: match a.tie {
                    Tie::Lowest => TieRule::Lowest,
                    Tie::Highest => TieRule::Highest,
                },
                dominator_order: match a.order {
                    Order::Index => DominatorOrder::Index,
                    Order::Reverse => DominatorOrder::Reverse,
                },
            };
            let res = groenevelt_decmin(&p, &opts)?;
            if a.trace {
                report.insert("trace".into(), json!(res.trace));
            }
            res.z
        }
        Algorithm::Fujishige => {
            let res = fujishige_decmin(&p, &FujishigeOptions { root_start: start })?;
            if a.trace {
                report.insert("trace".into(), json!(res.trace));
            }
            res.z
        }
        Algorithm::Relax => {
            let xstar = match &a.xstar {
                Some(text) => {
                    let x = RatVec(parse_rational_list(text)?);
                    check_dim("--xstar", x.dim(), p.n())?;
                    x
                }
                None => min_norm_point(&p)?,
            };
            let res = continuous_relaxation_decmin(&p, &xstar)?;
            report.insert("xstar".into(), rationals(&xstar));
            report.insert(
                "weights".into(),
                json!(res.weights.iter().map(|w| *w as i64).collect::<Vec<_>>()),
            );
            report.insert("basis".into(), names(p.ground(), res.basis));
            report.insert("basis_weight".into(), json!(res.basis_weight as i64));
            res.z
        }
        Algorithm::Brute => {
            let e = enumerate_members(&p, DEFAULT_CAP)?;
            brute_decmin_set(&e.members)
                .into_iter()
                .next()
                .ok_or_else(|| Failure::from(Error::Invalid("the M-convex set is empty".into())))?
        }
    };
    report.insert(
        "algorithm".into(),
        json!(format!("{:?}", a.alg).to_lowercase()),
    );
    report.insert("square_sum".into(), json!(z.square_sum() as i64));
    report.insert("element".into(), json!(z));
    let stats = p.stats();
    report.insert("oracle_calls".into(), json!(stats.calls));
    emit(out, &Value::Object(report))
}

fn chain_json<V>(ground: &GroundSet, chain: &ValuedChain<V>, values: Value) -> Value
where
    V: Ord,
{
    json!({
        "values": values,
        "chain": chain.chain.iter().map(|&c| names(ground, c)).collect::<Vec<_>>(),
        "blocks": chain.blocks().into_iter().map(|b| names(ground, b)).collect::<Vec<_>>(),
    })
}

fn cmd_partition(a: &PartitionArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (_, p) = load(&a.instance, err)?;
    let v = match a.which {
        Which::Canonical => {
            let c = canonical_partition_iterative(&p)?;
            let mut v = chain_json(p.ground(), &c, json!(c.values));
            v["which"] = json!("canonical");
            v
        }
        Which::Principal => {
            let pp = principal_partition(&p)?;
            let mut v = chain_json(p.ground(), &pp, rationals(&pp.values));
            v["which"] = json!("principal");
            v
        }
    };
    emit(out, &v)
}

fn cmd_minnorm(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (_, p) = load(path, err)?;
    let mr = min_norm_point(&p)?;
    emit(out, &json!({ "min_norm_point": rationals(&mr) }))
}

fn cmd_mincost(a: &MincostArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (inst, p) = load(&a.instance, err)?;
    let cost = match &a.cost {
        Some(text) if Path::new(text).is_file() => {
            let body = std::fs::read_to_string(text).map_err(|e| usage(format!("{text}: {e}")))?;
            let v: Value = serde_json::from_str(&body)
                .map_err(|e| Failure::from(Error::Parse(e.to_string())))?;
            parse_cost(v.get("cost").unwrap_or(&v))?
        }
        Some(text) => parse_rational_list(text)?,
        None => inst.cost.clone().ok_or_else(|| {
            usage("no cost given: pass --cost or add a cost array to the instance")
        })?,
    };
    check_dim("cost", cost.len(), p.n())?;
    let (m, value) = min_cost_decmin(&p, &cost)?;
    emit(
        out,
        &json!({
            "cost": rationals(&cost),
            "element": m,
            "total_cost": format_rational(&value),
        }),
    )
}

fn cmd_structure(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let (_, p) = load(path, err)?;
    let st = decmin_structure(&p)?;
    let ground = p.ground();
    let blocks: Vec<Value> = st
        .blocks
        .iter()
        .map(|b| {
            json!({
                "elements": b.elements.iter().map(|&s| ground.names[s].as_str()).collect::<Vec<_>>(),
                "beta": b.beta,
                "rank": b.rank,
            })
        })
        .collect();
    let mut v = json!({
        "delta": st.delta,
        "canonical": chain_json(ground, &st.canonical, json!(st.canonical.values)),
        "blocks": blocks,
        "rank": st.rank(),
    });
    if p.n() <= BASIS_ENUMERATION_BOUND {
        let bases = st.bases()?;
        v["bases"] = json!(bases.iter().map(|&b| names(ground, b)).collect::<Vec<_>>());
        v["decmin_elements"] = json!(st.decmin_elements()?);
    } else {
        let _ = writeln!(
            err,
            "note: bases are listed only for n <= {BASIS_ENUMERATION_BOUND}"
        );
    }
    emit(out, &v)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let opts = BatteryOptions {
        scan_bound: a.scan_bound,
        seed: a.seed,
        ..BatteryOptions::default()
    };
    let reports: Vec<BatteryReport> = match &a.instance {
        Some(path) => {
            let (_, p) = load(path, err)?;
            vec![run_theorem_battery(&p, &path.display().to_string(), &opts)?]
        }
        None => {
            if a.max_n < 2 {
                return Err(usage("--max-n must be at least 2"));
            }
            let instances = crate::verify::generate::generate_batch(a.seed, a.count, a.max_n);
            run_batch(&instances, &opts)
                .into_iter()
                .collect::<Result<_, _>>()?
        }
    };
    let all_pass = reports.iter().all(BatteryReport::passed);
    let with_duality: Vec<_> = reports.iter().filter_map(|r| r.duality.as_ref()).collect();
    let attained = with_duality.iter().filter(|d| d.equality_attained).count();
    if a.json {
        emit(
            out,
            &json!({
                "passed": all_pass,
                "instances": reports.len(),
                "duality_equality": { "attained": attained, "scanned_instances": with_duality.len() },
                "reports": reports,
            }),
        )?;
    } else {
        let mut text = String::new();
        for r in &reports {
            if a.verbose || !r.passed() || reports.len() == 1 {
                text.push_str(&r.render_text());
            } else {
                text.push_str(&format!("PASS {}\n", r.label));
            }
        }
        let failed = reports.iter().filter(|r| !r.passed()).count();
        text.push_str(&format!(
            "{} instances, {failed} failed; min-max equality attained on {attained} of {} scanned\n",
            reports.len(),
            with_duality.len()
        ));
        write!(out, "{text}").map_err(|e| usage(e.to_string()))?;
    }
    Ok(if all_pass {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Outcome {
    if a.n < 1 {
        return Err(usage("--n must be positive"));
    }
    let kind = match a.kind {
        Kind::Graph => GenKind::Graph,
        Kind::Modular => GenKind::Modular,
        Kind::Table => GenKind::Table,
    };
    if kind == GenKind::Table && a.n > MAX_TABLE_N {
        return Err(usage(format!(
            "table generator is limited to n <= {MAX_TABLE_N}, got {}",
            a.n
        )));
    }
    if a.n > crate::setfn::subset::MAX_ELEMENTS {
        return Err(Error::GroundSetTooLarge {
            n: a.n,
            max: crate::setfn::subset::MAX_ELEMENTS,
        }
        .into());
    }
    let inst = generate(kind, &mut rng_from_seed(a.seed), a.n);
    let text = inst.to_json_string();
    match &a.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        None => write!(out, "{text}").map_err(|e| usage(e.to_string()))?,
    }
    Ok(EXIT_OK)
}
