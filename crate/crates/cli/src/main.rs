//! Batch front-end. Every subcommand reads the file formats of the core
//! crate, runs one operation, and emits a JSON report on stdout:
//!
//! ```json
//! {"tool": "trasdim", "version": …, "command": …, "config": {…},
//!  "seed": …, "timestamp": …, "result": {…}}
//! ```
//!
//! Reports are byte-identical across runs with the same inputs and seed,
//! except for the `timestamp` field. Exit codes: 0 success / cover found,
//! 1 input or precondition error, 2 budget exceeded, 3 negative
//! mathematical verdict (no cover, failed verification, failed selftest),
//! 4 inconclusive.

use std::fs;
use std::io::BufReader;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use trasdim_core::cover::{
    a2_check, greedy_cover, search_cover, verify_cover, A2Outcome, CoverError, CoverSpec,
    SearchMode, SearchOutcome, DEFAULT_NODE_BUDGET,
};
use trasdim_core::finfam::{Family, FinSet};
use trasdim_core::ordinal::Ordinal;
use trasdim_core::partition::{
    epsilon_partition_chain, skeleton_refute, DiscreteCube, GridFamily, PartitionError,
};
use trasdim_core::selftest;
use trasdim_core::sfamily::{ord_truncated, s_member, truncate};
use trasdim_core::space::{
    d_xi, enumerate_x_tau, format_point, parse_point, read_point_cloud, Label,
};

#[derive(Parser)]
#[command(
    name = "trasdim",
    version,
    about = "Transfinite asymptotic dimension toolkit"
)]
struct Cli {
    /// Force JSON output even for point-cloud subcommands.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed recorded in the report and used by randomized subcommands.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Borst rank of a family file.
    Ord(OrdArgs),
    /// Validate, canonicalize and transform a family file.
    Family(FamilyArgs),
    /// Recursive-family membership and truncation ranks.
    Sxi {
        #[command(subcommand)]
        cmd: SxiCmd,
    },
    /// Lattice component enumeration and distances.
    Space {
        #[command(subcommand)]
        cmd: SpaceCmd,
    },
    /// Cover verification and search.
    Cover {
        #[command(subcommand)]
        cmd: CoverCmd,
    },
    /// Partition chains and uncovered-witness generation.
    Partition {
        #[command(subcommand)]
        cmd: PartitionCmd,
    },
    /// Run the acceptance checks.
    Selftest,
}

#[derive(Args)]
struct OrdArgs {
    /// Family file: {"members": [[1,3],[2],…]}.
    #[arg(long)]
    family: PathBuf,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    input: PathBuf,
    /// Derive by this set (comma-separated elements).
    #[arg(long)]
    derive: Option<String>,
    /// Take the inclusive closure.
    #[arg(long)]
    closure: bool,
    /// Report whether the family is inclusive.
    #[arg(long)]
    check_inclusive: bool,
    /// Reindex along this strictly increasing sequence.
    #[arg(long)]
    reindex: Option<String>,
}

#[derive(Subcommand)]
enum SxiCmd {
    /// Membership of a set at an ordinal level.
    Member {
        /// Ordinal, e.g. `w`, `w^2+w*3+1`, `5`.
        #[arg(long)]
        xi: String,
        /// Comma-separated elements, e.g. `2,3,4`.
        #[arg(long)]
        sigma: String,
    },
    /// Borst rank of the truncation to {1..n}.
    TruncOrd {
        #[arg(long)]
        xi: String,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum SpaceCmd {
    /// Enumerate a component inside a box (CSV point cloud by default).
    Enum {
        /// Label elements, e.g. `2,3`.
        #[arg(long)]
        tau: String,
        /// Per-axis inclusive intervals, e.g. `0:8,0:8`.
        #[arg(long = "box")]
        bounds: String,
    },
    /// Distance between two points in the union metric.
    Dist {
        /// Point as `label;x0;x1;…`.
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
}

#[derive(Subcommand)]
enum CoverCmd {
    /// Check a cover file against a point cloud.
    Verify {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        points: PathBuf,
    },
    /// Search for a cover of a point cloud.
    Search {
        #[arg(long)]
        points: PathBuf,
        /// Comma-separated family radii, e.g. `4,8`.
        #[arg(long)]
        radii: String,
        #[arg(long)]
        bound: u64,
        /// `exhaustive` or `greedy`.
        #[arg(long, default_value = "exhaustive")]
        mode: String,
    },
    /// Dyadic-radii refutation for one component truncation.
    A2 {
        #[arg(long)]
        tau: String,
        #[arg(long)]
        bound: u64,
    },
}

#[derive(Subcommand)]
enum PartitionCmd {
    /// Run the ε-partition chain from a JSON instance file:
    /// {"cube": {"dim":…, "side":…, "step":…}, "families": […], "epsilon": …}.
    Chain {
        #[arg(long)]
        input: PathBuf,
    },
    /// Produce an uncovered witness against a candidate cover file.
    Refute {
        #[arg(long)]
        tau: String,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        cover: PathBuf,
    },
}

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_NEGATIVE: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

struct Budgets {
    nodes: u64,
    points: u128,
    time_cap: Option<Duration>,
}

impl Budgets {
    fn from_env() -> Self {
        let nodes = std::env::var("TRASDIM_NODE_BUDGET")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_NODE_BUDGET);
        let points = std::env::var("TRASDIM_POINT_BUDGET")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(50_000_000u128);
        let time_cap = std::env::var("TRASDIM_TIME_CAP_SECS")
            .ok()
            .and_then(|v| v.parse().ok())
            .map(Duration::from_secs);
        Budgets {
            nodes,
            points,
            time_cap,
        }
    }
}

fn parse_u32_list(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| format!("bad list entry {t:?}: {e}"))
        })
        .collect()
}

fn parse_u64_list(s: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad list entry {t:?}: {e}"))
        })
        .collect()
}

fn parse_bounds(s: &str) -> Result<Vec<(i64, i64)>, String> {
    s.split(',')
        .map(|axis| {
            let (lo, hi) = axis
                .split_once(':')
                .ok_or_else(|| format!("bad interval {axis:?}, expected lo:hi"))?;
            let lo = lo.trim().parse::<i64>().map_err(|e| e.to_string())?;
            let hi = hi.trim().parse::<i64>().map_err(|e| e.to_string())?;
            Ok((lo, hi))
        })
        .collect()
}

fn parse_label(s: &str) -> Result<Label, String> {
    Label::from_elements(&parse_u32_list(s)?).map_err(|e| e.to_string())
}

fn parse_finset(s: &str) -> Result<FinSet, String> {
    FinSet::from_unsorted(parse_u32_list(s)?).map_err(|e| e.to_string())
}

/// Accepts both the text shorthand (`w^2+w*3+1`) and the JSON encoding
/// (`0`, `[{"exp": 1, "coef": 2}]`).
fn parse_ordinal(s: &str) -> Result<Ordinal, String> {
    if let Ok(o) = s.parse::<Ordinal>() {
        return Ok(o);
    }
    serde_json::from_str(s).map_err(|e| format!("neither ordinal text nor JSON: {e}"))
}

fn load_family(path: &PathBuf) -> Result<Family, String> {
    #[derive(serde::Deserialize)]
    struct FamilyFile {
        members: Vec<FinSet>,
    }
    let data = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: FamilyFile = serde_json::from_str(&data).map_err(|e| e.to_string())?;
    Ok(Family::from_members(file.members))
}

fn family_json(fam: &Family) -> Value {
    json!({ "members": fam.members().map(|m| m.elements().to_vec()).collect::<Vec<_>>() })
}

fn load_points(path: &PathBuf) -> Result<Vec<trasdim_core::LatticePoint>, String> {
    let file = fs::File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
    read_point_cloud(BufReader::new(file)).map_err(|e| e.to_string())
}

fn load_cover(path: &PathBuf) -> Result<CoverSpec, String> {
    let data = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&data).map_err(|e| e.to_string())
}

fn cover_exit(e: &CoverError) -> u8 {
    match e {
        CoverError::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

fn partition_exit(e: &PartitionError) -> u8 {
    match e {
        PartitionError::BudgetExceeded(..) => EXIT_BUDGET,
        PartitionError::ChainCollapsed { .. }
        | PartitionError::DescentCollapsed { .. }
        | PartitionError::WitnessCovered(..) => EXIT_INCONCLUSIVE,
        _ => EXIT_INPUT,
    }
}

/// Runs `f` on a worker thread and gives up after the time cap; the
/// process exits right after, so the abandoned worker never outlives us.
fn with_deadline<T: Send + 'static>(
    cap: Option<Duration>,
    f: impl FnOnce() -> T + Send + 'static,
) -> Option<T> {
    match cap {
        None => Some(f()),
        Some(cap) => {
            let (tx, rx) = mpsc::channel();
            std::thread::spawn(move || {
                let _ = tx.send(f());
            });
            rx.recv_timeout(cap).ok()
        }
    }
}

fn run(cli: &Cli, budgets: &Budgets) -> (Value, Value, u8, Option<String>) {
    // returns (config echo, result, exit code, optional plain output)
    match &cli.cmd {
        Cmd::Ord(args) => {
            let config = json!({ "family": args.family.display().to_string() });
            match load_family(&args.family) {
                Ok(fam) => {
                    let ord = fam.ord();
                    (
                        config,
                        json!({ "ord": ord, "members": fam.len() }),
                        EXIT_OK,
                        None,
                    )
                }
                Err(e) => (config, json!({ "error": e }), EXIT_INPUT, None),
            }
        }
        Cmd::Family(args) => {
            let config = json!({
                "input": args.input.display().to_string(),
                "derive": args.derive,
                "closure": args.closure,
                "checkInclusive": args.check_inclusive,
                "reindex": args.reindex,
            });
            let run = || -> Result<Value, String> {
                let mut fam = load_family(&args.input)?;
                let mut result = serde_json::Map::new();
                if let Some(sigma) = &args.derive {
                    fam = fam.derive(&parse_finset(sigma)?);
                }
                if args.closure {
                    fam = fam.inclusive_closure();
                }
                if args.check_inclusive {
                    result.insert("inclusive".into(), json!(fam.is_inclusive()));
                }
                if let Some(target) = &args.reindex {
                    fam = fam
                        .reindex(&parse_u32_list(target)?)
                        .map_err(|e| e.to_string())?;
                }
                result.insert("family".into(), family_json(&fam));
                Ok(Value::Object(result))
            };
            match run() {
                Ok(v) => (config, v, EXIT_OK, None),
                Err(e) => (config, json!({ "error": e }), EXIT_INPUT, None),
            }
        }
        Cmd::Sxi { cmd } => match cmd {
            SxiCmd::Member { xi, sigma } => {
                let config = json!({ "xi": xi, "sigma": sigma });
                match (parse_ordinal(xi), parse_finset(sigma)) {
                    (Ok(xi), Ok(sigma)) => {
                        let member = s_member(&sigma, &xi);
                        (config, json!({ "member": member }), EXIT_OK, None)
                    }
                    (Err(e), _) | (_, Err(e)) => (config, json!({ "error": e }), EXIT_INPUT, None),
                }
            }
            SxiCmd::TruncOrd { xi, n } => {
                let config = json!({ "xi": xi, "n": n });
                let run = || -> Result<Value, String> {
                    let xi = parse_ordinal(xi)?;
                    let t = truncate(&xi, *n).map_err(|e| e.to_string())?;
                    let ord = ord_truncated(&xi, *n).map_err(|e| e.to_string())?;
                    Ok(json!({ "ord": ord, "familySize": t.family.len() }))
                };
                match run() {
                    Ok(v) => (config, v, EXIT_OK, None),
                    Err(e) => (config, json!({ "error": e }), EXIT_INPUT, None),
                }
            }
        },
        Cmd::Space { cmd } => match cmd {
            SpaceCmd::Enum { tau, bounds } => {
                let config = json!({ "tau": tau, "box": bounds });
                let run = || -> Result<(Value, String), String> {
                    let label = parse_label(tau)?;
                    let bounds = parse_bounds(bounds)?;
                    let pts = enumerate_x_tau(&label, &bounds).map_err(|e| e.to_string())?;
                    let csv: String = pts.iter().map(|p| format_point(p) + "\n").collect();
                    let v = json!({
                        "count": pts.len(),
                        "points": pts.iter().map(format_point).collect::<Vec<_>>(),
                    });
                    Ok((v, csv))
                };
                match run() {
                    Ok((v, csv)) => (config, v, EXIT_OK, Some(csv)),
                    Err(e) => (config, json!({ "error": e }), EXIT_INPUT, None),
                }
            }
            SpaceCmd::Dist { p, q } => {
                let config = json!({ "p": p, "q": q });
                match (parse_point(p), parse_point(q)) {
                    (Ok(a), Ok(b)) => (config, json!({ "distance": d_xi(&a, &b) }), EXIT_OK, None),
                    (Err(e), _) | (_, Err(e)) => {
                        (config, json!({ "error": e.to_string() }), EXIT_INPUT, None)
                    }
                }
            }
        },
        Cmd::Cover { cmd } => match cmd {
            CoverCmd::Verify { cover, points } => {
                let config = json!({
                    "cover": cover.display().to_string(),
                    "points": points.display().to_string(),
                });
                let run = || -> Result<Value, String> {
                    let spec = load_cover(cover)?;
                    let pts = load_points(points)?;
                    let verdict = verify_cover(&spec, &pts);
                    Ok(serde_json::to_value(&verdict).unwrap())
                };
                match run() {
                    Ok(v) => {
                        let ok = v["violations"]
                            .as_array()
                            .map(|a| a.is_empty())
                            .unwrap_or(false);
                        let code = if ok { EXIT_OK } else { EXIT_NEGATIVE };
                        (config, v, code, None)
                    }
                    Err(e) => (config, json!({ "error": e }), EXIT_INPUT, None),
                }
            }
            CoverCmd::Search {
                points,
                radii,
                bound,
                mode,
            } => {
                let config = json!({
                    "points": points.display().to_string(),
                    "radii": radii,
                    "bound": bound,
                    "mode": mode,
                    "nodeBudget": budgets.nodes,
                });
                let parsed = (load_points(points), parse_u64_list(radii));
                let (pts, radii) = match parsed {
                    (Ok(p), Ok(r)) => (p, r),
                    (Err(e), _) | (_, Err(e)) => {
                        return (config, json!({ "error": e }), EXIT_INPUT, None)
                    }
                };
                if mode == "greedy" {
                    let spec = greedy_cover(&pts, &radii, *bound, cli.seed);
                    let uncovered = pts.iter().filter(|p| !spec.covers(p)).count();
                    let outcome = if uncovered == 0 {
                        "cover"
                    } else {
                        "inconclusive"
                    };
                    let code = if uncovered == 0 {
                        EXIT_OK
                    } else {
                        EXIT_INCONCLUSIVE
                    };
                    let v = json!({
                        "outcome": outcome,
                        "uncovered": uncovered,
                        "spec": serde_json::to_value(&spec).unwrap(),
                    });
                    (config, v, code, None)
                } else if mode == "exhaustive" {
                    let nodes = budgets.nodes;
                    let b = *bound;
                    let result = with_deadline(budgets.time_cap, move || {
                        search_cover(&pts, &radii, b, SearchMode::Exhaustive, nodes)
                    });
                    match result {
                        None => (
                            config,
                            json!({ "error": "time cap exceeded" }),
                            EXIT_BUDGET,
                            None,
                        ),
                        Some(Ok(out)) => {
                            let code = match &out {
                                SearchOutcome::Cover { .. } => EXIT_OK,
                                SearchOutcome::NoCover { .. } => EXIT_NEGATIVE,
                                SearchOutcome::Inconclusive { .. } => EXIT_INCONCLUSIVE,
                            };
                            (config, serde_json::to_value(&out).unwrap(), code, None)
                        }
                        Some(Err(e)) => {
                            let code = cover_exit(&e);
                            (config, json!({ "error": e.to_string() }), code, None)
                        }
                    }
                } else {
                    (
                        config,
                        json!({ "error": format!("unknown mode {mode:?}") }),
                        EXIT_INPUT,
                        None,
                    )
                }
            }
            CoverCmd::A2 { tau, bound } => {
                let config = json!({ "tau": tau, "bound": bound, "nodeBudget": budgets.nodes });
                let label = match parse_label(tau) {
                    Ok(l) => l,
                    Err(e) => return (config, json!({ "error": e }), EXIT_INPUT, None),
                };
                let nodes = budgets.nodes;
                let b = *bound;
                let result = with_deadline(budgets.time_cap, move || a2_check(&label, b, nodes));
                match result {
                    None => (
                        config,
                        json!({ "error": "time cap exceeded" }),
                        EXIT_BUDGET,
                        None,
                    ),
                    Some(Ok(out)) => {
                        let code = match &out {
                            A2Outcome::NoCover(_) => EXIT_NEGATIVE,
                            A2Outcome::Cover { .. } => EXIT_OK,
                            A2Outcome::Inconclusive => EXIT_INCONCLUSIVE,
                        };
                        (config, serde_json::to_value(&out).unwrap(), code, None)
                    }
                    Some(Err(e)) => {
                        let code = cover_exit(&e);
                        (config, json!({ "error": e.to_string() }), code, None)
                    }
                }
            }
        },
        Cmd::Partition { cmd } => match cmd {
            PartitionCmd::Chain { input } => {
                let config = json!({ "input": input.display().to_string() });
                #[derive(serde::Deserialize)]
                struct ChainFile {
                    cube: DiscreteCube,
                    families: Vec<GridFamily>,
                    epsilon: i64,
                }
                let run = || -> Result<ChainFile, String> {
                    let data = fs::read_to_string(input)
                        .map_err(|e| format!("{}: {e}", input.display()))?;
                    serde_json::from_str(&data).map_err(|e| e.to_string())
                };
                match run() {
                    Ok(file) => {
                        match epsilon_partition_chain(&file.cube, &file.families, file.epsilon) {
                            Ok(chain) => {
                                let v = json!({
                                    "scale": chain.scale,
                                    "levelSizes": chain.levels.iter().map(|l| l.len()).collect::<Vec<_>>(),
                                    "finalLevel": chain.final_level(),
                                    "steps": serde_json::to_value(&chain.steps).unwrap(),
                                });
                                (config, v, EXIT_OK, None)
                            }
                            Err(e) => {
                                let code = partition_exit(&e);
                                (config, json!({ "error": e.to_string() }), code, None)
                            }
                        }
                    }
                    Err(e) => (config, json!({ "error": e }), EXIT_INPUT, None),
                }
            }
            PartitionCmd::Refute { tau, bound, cover } => {
                let config = json!({
                    "tau": tau,
                    "bound": bound,
                    "cover": cover.display().to_string(),
                    "pointBudget": budgets.points.to_string(),
                });
                let parsed = (parse_label(tau), load_cover(cover));
                let (label, spec) = match parsed {
                    (Ok(l), Ok(s)) => (l, s),
                    (Err(e), _) | (_, Err(e)) => {
                        return (config, json!({ "error": e }), EXIT_INPUT, None)
                    }
                };
                let pb = budgets.points;
                let b = *bound;
                let result = with_deadline(budgets.time_cap, move || {
                    skeleton_refute(&label, b, &spec, pb)
                });
                match result {
                    None => (
                        config,
                        json!({ "error": "time cap exceeded" }),
                        EXIT_BUDGET,
                        None,
                    ),
                    Some(Ok(report)) => {
                        let v = json!({
                            "witness": format_point(&report.witness),
                            "witnessJson": serde_json::to_value(&report.witness).unwrap(),
                            "side": report.side,
                            "survivors": report.survivors,
                        });
                        (config, v, EXIT_OK, None)
                    }
                    Some(Err(e)) => {
                        let code = partition_exit(&e);
                        (config, json!({ "error": e.to_string() }), code, None)
                    }
                }
            }
        },
        Cmd::Selftest => {
            let config = json!({});
            let results = selftest::run_all(cli.seed);
            let all_passed = results.iter().all(|r| r.passed);
            for r in &results {
                eprintln!(
                    "{} {}: {} ({} ms) {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.id,
                    r.name,
                    r.millis,
                    r.details
                );
            }
            let v = json!({
                "passed": all_passed,
                "checks": results.iter().map(|r| json!({
                    "id": r.id,
                    "name": r.name,
                    "passed": r.passed,
                    "details": r.details,
                })).collect::<Vec<_>>(),
            });
            let code = if all_passed { EXIT_OK } else { EXIT_NEGATIVE };
            (config, v, code, None)
        }
    }
}

fn command_name(cmd: &Cmd) -> String {
    match cmd {
        Cmd::Ord(_) => "ord".into(),
        Cmd::Family(_) => "family".into(),
        Cmd::Sxi { cmd } => match cmd {
            SxiCmd::Member { .. } => "sxi member".into(),
            SxiCmd::TruncOrd { .. } => "sxi trunc-ord".into(),
        },
        Cmd::Space { cmd } => match cmd {
            SpaceCmd::Enum { .. } => "space enum".into(),
            SpaceCmd::Dist { .. } => "space dist".into(),
        },
        Cmd::Cover { cmd } => match cmd {
            CoverCmd::Verify { .. } => "cover verify".into(),
            CoverCmd::Search { .. } => "cover search".into(),
            CoverCmd::A2 { .. } => "cover a2".into(),
        },
        Cmd::Partition { cmd } => match cmd {
            PartitionCmd::Chain { .. } => "partition chain".into(),
            PartitionCmd::Refute { .. } => "partition refute".into(),
        },
        Cmd::Selftest => "selftest".into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budgets = Budgets::from_env();
    let (config, result, code, plain) = run(&cli, &budgets);

    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let report = json!({
        "tool": "trasdim",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command_name(&cli.cmd),
        "config": config,
        "seed": cli.seed,
        "timestamp": timestamp,
        "result": result,
    });
    let rendered = serde_json::to_string_pretty(&report).unwrap();

    // point clouds go to stdout as CSV unless --json is set
    match (&plain, cli.json) {
        (Some(csv), false) => print!("{csv}"),
        _ => println!("{rendered}"),
    }
    if let Some(path) = &cli.out {
        let payload = match (&plain, cli.json) {
            (Some(csv), false) => csv.clone(),
            _ => rendered.clone(),
        };
        if let Err(e) = fs::write(path, payload) {
            eprintln!("failed to write {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT);
        }
    }
    ExitCode::from(code)
}
