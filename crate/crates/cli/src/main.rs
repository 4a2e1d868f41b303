mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use config::{Format, Overrides, RunConfig};
use rotorlab::circlelift::{lower_map, rotation_interval, upper_map, Lift};
use rotorlab::combinatorics::{over_rotation_pair, CyclicPattern};
use rotorlab::horseshoe::{
    enumerate_cycles_trunc, extrema_images, kneading_vector, psi, realize_cycle_in_h2, truncated_map,
    TruncationParams,
};
use rotorlab::overtwist::{color_of, identify, modality_of, overtwist_permutation, OvertwistSpec};
use rotorlab::plinear::{forced_cycles, is_overtwist, pattern_graph, rotation_interval_of_pattern};
use rotorlab::tracts::{
    classify_point, kappa_witness, leading_set, level_set_connected, read_csv, render_svg, retract,
    staircase_by_sweep, staircase_json, sweep, write_csv,
};
use rotorlab::{Error, Rational};

const THREADS_VAR: &str = "ROTORLAB_THREADS";

#[derive(Parser)]
#[command(name = "rotorlab", version, about = "Over-rotation combinatorics and truncated bimodal horseshoes, exactly")]
struct Cli {
    /// key = value file with cap, grid, tol, format, out; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Period cap for cycle searches and psi.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Tolerance as a fraction.
    #[arg(long, global = true, value_parser = parse_rational)]
    tol: Option<Rational>,
    /// Grid as MxN for sweeps and level sets.
    #[arg(long, global = true, value_parser = config::parse_grid)]
    grid: Option<(usize, usize)>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the main artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also show decimal approximations.
    #[arg(long, global = true)]
    approx: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Over-twist patterns.
    #[command(subcommand)]
    Otw(OtwCommand),
    /// Cyclic patterns given as a comma-separated image list, e.g. 3,1,2.
    #[command(subcommand)]
    Pat(PatCommand),
    /// psi(alpha, beta) for the truncated horseshoe.
    Psi(PsiArgs),
    /// Degree-one circle lifts.
    #[command(subcommand)]
    Lift(LiftCommand),
    /// The staircase Z_{p/q}.
    Stair(StairArgs),
    /// psi on an m x n parameter grid, as CSV.
    Sweep(SweepArgs),
    /// Points of the parameter plane against a staircase.
    #[command(subcommand)]
    Tract(TractCommand),
    /// Run the invariant suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum OtwCommand {
    /// The permutation of one over-twist pattern.
    Gen { p: usize, q: usize, r: usize },
    /// All members of the family p/q.
    Family { p: usize, q: usize },
    /// Recognise a pattern as a family member.
    Identify {
        #[arg(value_parser = parse_pattern)]
        pattern: CyclicPattern,
    },
}

#[derive(Subcommand)]
enum PatCommand {
    /// Over-rotation pair and number.
    Pair {
        #[arg(value_parser = parse_pattern)]
        pattern: CyclicPattern,
    },
    /// Over-rotation interval of the P-linear map.
    Interval {
        #[arg(value_parser = parse_pattern)]
        pattern: CyclicPattern,
    },
    /// Whether the pattern is an over-twist.
    Otwist {
        #[arg(value_parser = parse_pattern)]
        pattern: CyclicPattern,
    },
    /// Patterns of the cycles of the P-linear map up to the cap.
    Forced {
        #[arg(value_parser = parse_pattern)]
        pattern: CyclicPattern,
    },
    /// Covering graph of the P-linear map.
    Graph {
        #[arg(value_parser = parse_pattern)]
        pattern: CyclicPattern,
    },
    /// Exact realisation in H2 and the extremal images.
    Realize {
        #[arg(value_parser = parse_pattern)]
        pattern: CyclicPattern,
    },
}

#[derive(Args)]
struct PointArgs {
    #[arg(long, value_parser = parse_rational)]
    alpha: Rational,
    #[arg(long, value_parser = parse_rational)]
    beta: Rational,
}

#[derive(Args)]
struct PsiArgs {
    #[command(flatten)]
    point: PointArgs,
    /// List the periodic orbits up to the cap.
    #[arg(long)]
    orbits: bool,
    /// Kneading vector of this many symbols.
    #[arg(long)]
    kneading: Option<usize>,
    /// Fail when the value is not converged.
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum LiftCommand {
    /// Rotation interval [rho(F_l), rho(F_u)] of a lift given as JSON.
    Rot {
        #[arg(long)]
        spec: PathBuf,
    },
    /// The monotone hulls F_l and F_u.
    Hulls {
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Args)]
struct StairArgs {
    p: u64,
    q: u64,
    /// Write an SVG picture to this path.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Rebuild the corners by the sweep and check they agree.
    #[arg(long)]
    sweep: bool,
}

#[derive(Args)]
struct SweepArgs {
    m: Option<usize>,
    n: Option<usize>,
}

#[derive(Subcommand)]
enum TractCommand {
    /// Side of Z_{p/q} with a psi cross-check.
    Classify {
        p: u64,
        q: u64,
        #[command(flatten)]
        point: PointArgs,
    },
    /// First point of the ray towards (1,0) on Z_{p/q}.
    Retract {
        p: u64,
        q: u64,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Axis-aligned move onto Z_{p/q}.
    Kappa {
        p: u64,
        q: u64,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Connectivity of a level set of a sweep.
    Level {
        #[arg(long, value_parser = parse_rational)]
        value: Rational,
        /// Sweep CSV; computed from the configured grid when absent.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Only the fast checks.
    #[arg(long)]
    quick: bool,
    /// Only checks whose name contains this.
    #[arg(long)]
    filter: Option<String>,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_pattern(s: &str) -> Result<CyclicPattern, String> {
    let image = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad entry {t:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    CyclicPattern::new(image).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Compute { code: String, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute { code: e.code().into(), message: e.to_string() }
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::Compute { code: "io".into(), message: e.to_string() }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    cfg: RunConfig,
    approx: bool,
}

impl Ctx {
    fn emit(&self, body: &str) -> Outcome {
        match &self.cfg.out {
            Some(path) => std::fs::write(path, body).map_err(io_failure),
            None => {
                let mut out = std::io::stdout().lock();
                match out.write_all(body.as_bytes()) {
                    // the reader went away, e.g. `| head`
                    Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                    r => r.map_err(io_failure),
                }
            }
        }
    }

    fn emit_json(&self, v: &Value) -> Outcome {
        let mut s = serde_json::to_string_pretty(v).expect("values serialise");
        s.push('\n');
        self.emit(&s)
    }

    fn frac(&self, r: &Rational) -> Value {
        if self.approx {
            json!({ "exact": r.to_string(), "approx": r.to_f64() })
        } else {
            json!(r.to_string())
        }
    }
}

fn params(p: &PointArgs) -> Result<TruncationParams, Failure> {
    Ok(TruncationParams::new(p.alpha.clone(), p.beta.clone())?)
}

fn pattern_json(pat: &CyclicPattern) -> Value {
    let pair = over_rotation_pair(pat).ok();
    json!({
        "q": pat.period(),
        "permutation": pat.image(),
        "pair": pair.map(|p| json!([p.p, p.q])),
    })
}

fn spec_json(spec: &OvertwistSpec) -> Result<Value, Failure> {
    let pat = overtwist_permutation(spec);
    let colors = (1..=spec.q()).map(|j| color_of(spec, j)).collect::<Result<Vec<_>, _>>()?;
    let pair = over_rotation_pair(&pat)?;
    Ok(json!({
        "p": spec.p(),
        "q": spec.q(),
        "r": spec.r(),
        "permutation": pat.image(),
        "pair": [pair.p, pair.q],
        "colors": colors,
        "modality": modality_of(spec),
    }))
}

fn read_lift(path: &PathBuf) -> Result<Lift, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Compute { code: "invalid_lift".into(), message: e.to_string() })
}

fn run_otw(ctx: &Ctx, cmd: OtwCommand) -> Outcome {
    match cmd {
        OtwCommand::Gen { p, q, r } => ctx.emit_json(&spec_json(&OvertwistSpec::new(p, q, r)?)?),
        OtwCommand::Family { p, q } => {
            let all = OvertwistSpec::family(p, q)?.iter().map(spec_json).collect::<Result<Vec<_>, _>>()?;
            ctx.emit_json(&Value::Array(all))
        }
        OtwCommand::Identify { pattern } => {
            let found = identify(&pattern).map(|s| spec_json(&s)).transpose()?;
            ctx.emit_json(&json!({ "pattern": pattern_json(&pattern), "overtwist": found }))
        }
    }
}

fn run_pat(ctx: &Ctx, cmd: PatCommand) -> Outcome {
    match cmd {
        PatCommand::Pair { pattern } => {
            let pair = over_rotation_pair(&pattern)?;
            ctx.emit_json(&json!({ "pair": [pair.p, pair.q], "number": ctx.frac(&pair.number()) }))
        }
        PatCommand::Interval { pattern } => {
            let (lo, hi) = rotation_interval_of_pattern(&pattern)?;
            ctx.emit_json(&json!({ "interval": [ctx.frac(&lo), ctx.frac(&hi)] }))
        }
        PatCommand::Otwist { pattern } => {
            let pair = over_rotation_pair(&pattern)?;
            let (lo, _) = rotation_interval_of_pattern(&pattern)?;
            ctx.emit_json(&json!({
                "overtwist": is_overtwist(&pattern)?,
                "pair": [pair.p, pair.q],
                "left_endpoint": ctx.frac(&lo),
            }))
        }
        PatCommand::Forced { pattern } => {
            let cycles = forced_cycles(&pattern, ctx.cfg.period_cap)?;
            ctx.emit_json(&json!({
                "cap": ctx.cfg.period_cap,
                "cycles": cycles.iter().map(pattern_json).collect::<Vec<_>>(),
            }))
        }
        PatCommand::Graph { pattern } => ctx.emit_json(&serde_json::to_value(pattern_graph(&pattern)?).expect("graph")),
        PatCommand::Realize { pattern } => {
            let pts = realize_cycle_in_h2(&pattern)?;
            let (top, bottom) = extrema_images(&pattern)?;
            ctx.emit_json(&json!({
                "points": pts.iter().map(|x| ctx.frac(x)).collect::<Vec<_>>(),
                "extrema_images": [ctx.frac(&top), ctx.frac(&bottom)],
            }))
        }
    }
}

fn run_psi(ctx: &Ctx, args: PsiArgs) -> Outcome {
    let pt = params(&args.point)?;
    let cap = ctx.cfg.period_cap;
    let v = psi(&pt, cap);
    if args.strict && !v.converged() {
        return Err(Failure::Compute {
            code: "unconverged".into(),
            message: format!("psi is {} at cap {cap} but {} at cap {}", v.value, v.doubled.clone().unwrap_or(v.value.clone()), 2 * cap),
        });
    }
    let flag = if v.converged() { "converged" } else { "unconverged" };
    let wants_json = ctx.cfg.format == Some(Format::Json) || args.orbits || args.kneading.is_some();
    if !wants_json {
        let mut line = format!("{} {flag}", v.value);
        if ctx.approx {
            line.push_str(&format!(" {:.9}", v.value.to_f64()));
        }
        line.push('\n');
        return ctx.emit(&line);
    }
    let mut out = json!({
        "alpha": pt.alpha().to_string(),
        "beta": pt.beta().to_string(),
        "cap": cap,
        "psi": ctx.frac(&v.value),
        "converged": v.converged(),
        "convergence": v.convergence,
        "doubled": v.doubled.as_ref().map(|d| d.to_string()),
    });
    if args.orbits {
        let orbits = enumerate_cycles_trunc(&pt, cap)?;
        out["orbits"] = orbits
            .iter()
            .map(|o| {
                json!({
                    "points": o.points.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "kind": o.kind,
                    "over_rotation": o.over_rotation_number().map(|r| r.to_string()),
                })
            })
            .collect();
    }
    if let Some(n) = args.kneading {
        let map = truncated_map(&pt);
        let k = kneading_vector(&map, n)?;
        out["kneading"] = json!({ "k1": k.k1, "k2": k.k2 });
    }
    ctx.emit_json(&out)
}

fn run_lift(ctx: &Ctx, cmd: LiftCommand) -> Outcome {
    match cmd {
        LiftCommand::Rot { spec } => {
            let f = read_lift(&spec)?;
            let (lo, hi) = rotation_interval(&f)?;
            ctx.emit_json(&json!({ "lower": lo, "upper": hi }))
        }
        LiftCommand::Hulls { spec } => {
            let f = read_lift(&spec)?;
            ctx.emit_json(&json!({ "lower": lower_map(&f), "upper": upper_map(&f) }))
        }
    }
}

fn run_stair(ctx: &Ctx, args: StairArgs) -> Outcome {
    let z = leading_set(args.p, args.q)?;
    if args.sweep && staircase_by_sweep(args.p, args.q)? != z {
        return Err(Failure::Compute {
            code: "sweep_mismatch".into(),
            message: format!("the sweep visits different corners for {}/{}", args.p, args.q),
        });
    }
    if let Some(path) = &args.svg {
        std::fs::write(path, render_svg(std::slice::from_ref(&z))).map_err(io_failure)?;
    }
    if ctx.cfg.format == Some(Format::Svg) {
        return ctx.emit(&render_svg(&[z]));
    }
    let mut v = staircase_json(&z);
    v["steps"] = json!(z.steps());
    v["symmetric"] = json!(z.is_symmetric());
    ctx.emit_json(&v)
}

fn run_sweep(ctx: &Ctx, args: SweepArgs) -> Outcome {
    let (m, n) = match (args.m, args.n) {
        (Some(m), Some(n)) => (m, n),
        (None, None) => ctx.cfg.grid,
        _ => return Err(Failure::Usage("give both m and n, or neither".into())),
    };
    let table = sweep(m, n, ctx.cfg.period_cap)?;
    if ctx.cfg.format == Some(Format::Json) {
        return ctx.emit_json(&serde_json::to_value(&table).expect("table"));
    }
    let mut buf = Vec::new();
    write_csv(&table, &mut buf).map_err(io_failure)?;
    ctx.emit(&String::from_utf8(buf).expect("ascii"))
}

fn run_tract(ctx: &Ctx, cmd: TractCommand) -> Outcome {
    match cmd {
        TractCommand::Classify { p, q, point } => {
            let c = classify_point(p, q, &params(&point)?, ctx.cfg.period_cap)?;
            ctx.emit_json(&serde_json::to_value(&c).expect("classification"))
        }
        TractCommand::Retract { p, q, point } => {
            let hit = retract(p, q, &params(&point)?, &ctx.cfg.tolerance)?;
            ctx.emit_json(&json!({ "alpha": ctx.frac(hit.alpha()), "beta": ctx.frac(hit.beta()) }))
        }
        TractCommand::Kappa { p, q, point } => {
            let k = kappa_witness(p, q, &params(&point)?)?;
            ctx.emit_json(&json!({
                "kappa1": ctx.frac(&k.kappa1),
                "kappa2": ctx.frac(&k.kappa2),
                "direction": k.direction,
            }))
        }
        TractCommand::Level { value, input } => {
            let table = match input {
                Some(path) => {
                    let f = std::fs::File::open(&path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    read_csv(std::io::BufReader::new(f))?
                }
                None => sweep(ctx.cfg.grid.0, ctx.cfg.grid.1, ctx.cfg.period_cap)?,
            };
            let connected = level_set_connected(&table, &value, &ctx.cfg.tolerance)?;
            ctx.emit_json(&json!({
                "value": value.to_string(),
                "tol": ctx.cfg.tolerance.to_string(),
                "grid": [table.m, table.n],
                "connected": connected,
            }))
        }
    }
}

fn run_verify(ctx: &Ctx, args: VerifyArgs) -> Outcome {
    let reports = rotorlab::verify::run(args.quick, args.filter.as_deref());
    if reports.is_empty() {
        return Err(Failure::Usage("no check matches the filter".into()));
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.name).collect();
    if ctx.cfg.format == Some(Format::Json) {
        ctx.emit_json(&serde_json::to_value(&reports).expect("reports"))?;
    } else {
        let mut s = String::new();
        for r in &reports {
            let tag = if r.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!("[{tag}] {} ({} ms): {}\n", r.name, r.millis, r.detail));
        }
        ctx.emit(&s)?;
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Compute { code: "verify_failed".into(), message: format!("failed: {}", failed.join(", ")) })
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("{THREADS_VAR} must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: Cli) -> Outcome {
    configure_threads()?;
    let base = match &cli.config {
        Some(path) => RunConfig::load(path).map_err(Failure::Usage)?,
        None => RunConfig::default(),
    };
    let cfg = base
        .merge(Overrides {
            period_cap: cli.cap,
            grid: cli.grid,
            tolerance: cli.tol,
            format: cli.format,
            out: cli.out,
        })
        .map_err(Failure::Usage)?;
    let ctx = Ctx { cfg, approx: cli.approx };
    match cli.command {
        Command::Otw(c) => run_otw(&ctx, c),
        Command::Pat(c) => run_pat(&ctx, c),
        Command::Psi(a) => run_psi(&ctx, a),
        Command::Lift(c) => run_lift(&ctx, c),
        Command::Stair(a) => run_stair(&ctx, a),
        Command::Sweep(a) => run_sweep(&ctx, a),
        Command::Tract(c) => run_tract(&ctx, c),
        Command::Verify(a) => run_verify(&ctx, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute { code, message }) => {
            eprintln!("{}", json!({ "error": code, "message": message }));
            ExitCode::from(1)
        }
    }
}
