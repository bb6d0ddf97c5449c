//! Command-line surface for the marked-curve toolkit.
//!
//! Exit codes: 0 on success, 1 when a precondition or input fails,
//! 2 when an internal invariant is violated (a bug or fixture mismatch).

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::collections::BTreeSet;
use std::fs;
use std::process::ExitCode;
use vfcurve::bubble::{bubble_down, inflate_at_zero, knudsen_stabilize, BubbleError, ContractionMap};
use vfcurve::curve::{curve_isomorphic, ChartPoint, CurvePoint, Kind, MarkedCurve};
use vfcurve::diagnostics::Diagnostics;
use vfcurve::exactalg::rat::{format_rat, parse_rat, Rat};
use vfcurve::hopf::{check_iso_to_gm, group_law, verify_axioms, HopfPresentation};
use vfcurve::limits::{
    specialize_lm_jobs, stable_limit, Mode, PathFamily, SampleGrid, SpecializeReport,
};
use vfcurve::strata::{
    lm_closure_leq, lm_dim, lm_types, pn_closure_leq, pn_dim, pn_types, LMType, PnType,
};

#[derive(Parser)]
#[command(name = "vfcurve", version, about = "Exact-arithmetic lab for marked nodal curves with vector fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hopf structure of the interpolating group scheme
    Hopf {
        #[command(subcommand)]
        cmd: HopfCmd,
    },
    /// Predicates and operations on marked curves
    Curve {
        #[command(subcommand)]
        cmd: CurveCmd,
    },
    /// Boundary-stratum enumeration
    Strata(StrataArgs),
    /// Stable limit of a path family
    Limit(LimitArgs),
    /// Sample the specialization of one chain-side stratum
    Specialize(SpecializeArgs),
    /// Golden fixture replay
    Fixtures {
        #[command(subcommand)]
        cmd: FixturesCmd,
    },
}

#[derive(Subcommand)]
enum HopfCmd {
    /// Verify the Hopf axioms of the standard presentation
    Verify {
        /// Also run the grouplike checks for y = 1 + tx
        #[arg(long)]
        gm: bool,
    },
    /// Evaluate the group law a + b + tau·a·b
    Law {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
}

#[derive(Subcommand)]
enum CurveCmd {
    /// Structural validity of a curve file
    Validate(CurveIn),
    /// Negative coresidue of the field at p_infty
    Ncr(CurveIn),
    /// Category membership check
    Check {
        #[command(flatten)]
        input: CurveIn,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Extra section as comp:point, e.g. 0:inf or 1:3/2
        #[arg(long)]
        x: Option<String>,
    },
    /// Knudsen stabilization at a section
    Stabilize(BubbleArgs),
    /// Inflation at a zero of the field
    Inflate(BubbleArgs),
    /// Bubbling down (contraction of the degree-zero component)
    Contract {
        #[command(flatten)]
        args: BubbleArgs,
        #[arg(long, value_enum)]
        kind: DownKind,
    },
    /// Move markings by the flow of the field
    Act {
        #[command(flatten)]
        input: CurveIn,
        /// Comma-separated shifts, one per marking, e.g. 1,2,-1/2
        #[arg(long, allow_hyphen_values = true)]
        shifts: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Isomorphism test between two curve files
    Iso {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        with: String,
    },
}

#[derive(Args)]
struct CurveIn {
    #[arg(long = "in")]
    input: String,
    /// Write the dual tree as DOT to this path
    #[arg(long)]
    dot: Option<String>,
}

#[derive(Args)]
struct BubbleArgs {
    #[arg(long = "in")]
    input: String,
    /// Section as comp:point
    #[arg(long)]
    x: String,
    /// Write the resulting curve JSON here (stdout carries the full report)
    #[arg(long)]
    out: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    V,
    C1,
    C2,
    C3,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::V => Kind::V,
            KindArg::C1 => Kind::C1,
            KindArg::C2 => Kind::C2,
            KindArg::C3 => Kind::C3,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DownKind {
    C2,
    C3,
}

#[derive(Args)]
struct StrataArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: usize,
    /// Print only the number of types (default)
    #[arg(long)]
    count: bool,
    /// Print one type per line
    #[arg(long)]
    list: bool,
    /// Print the dimension histogram
    #[arg(long)]
    dims: bool,
    /// Print all closure relations a < b
    #[arg(long)]
    poset: bool,
    /// JSON output instead of text
    #[arg(long)]
    json: bool,
    /// Write the closure poset as DOT to this path
    #[arg(long)]
    dot: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Lm,
    Pn,
}

#[derive(Args)]
struct LimitArgs {
    #[arg(long = "in")]
    input: String,
    /// Override the mode stored in the path file
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    dot: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Affine,
    Degeneration,
}

#[derive(Args)]
struct SpecializeArgs {
    #[arg(long)]
    n: usize,
    /// Chain-side stratum, blocks from the 0-end, e.g. 12|3
    #[arg(long)]
    lm: String,
    #[arg(long, value_enum, default_value = "default")]
    grid: GridArg,
    #[arg(long, value_enum, default_value = "table")]
    report: ReportArg,
    /// Worker threads for the sampling sweep (output is order-independent)
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Seed for randomized grids; the built-in grids are exhaustive, so
    /// this is recorded but does not affect the result
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridArg {
    Default,
    Coarse,
}

impl From<GridArg> for SampleGrid {
    fn from(g: GridArg) -> SampleGrid {
        match g {
            GridArg::Default => SampleGrid::default(),
            GridArg::Coarse => SampleGrid::coarse(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportArg {
    Table,
    Json,
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// Replay a golden fixture and compare
    Replay {
        /// Fixture name (available: figure3)
        name: String,
        #[arg(long, value_enum, default_value = "default")]
        grid: GridArg,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// Errors with their process exit codes.
enum Failure {
    /// Bad input or an unmet precondition (exit 1).
    Precondition(String),
    /// Broken internal invariant or fixture mismatch (exit 2).
    Invariant(String),
}

impl Failure {
    fn pre(msg: impl Into<String>) -> Self {
        Failure::Precondition(msg.into())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Precondition(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Precondition(e.to_string())
    }
}

impl From<BubbleError> for Failure {
    fn from(e: BubbleError) -> Self {
        match e {
            BubbleError::NonUniqueContraction(_, _) => Failure::Invariant(e.to_string()),
            other => Failure::Precondition(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<(), Failure> {
    match Cli::parse().command {
        Command::Hopf { cmd } => run_hopf(cmd),
        Command::Curve { cmd } => run_curve(cmd),
        Command::Strata(args) => run_strata(args),
        Command::Limit(args) => run_limit(args),
        Command::Specialize(args) => run_specialize(args),
        Command::Fixtures { cmd } => run_fixtures(cmd),
    }
}

fn parse_rat_arg(s: &str, what: &str) -> Result<Rat, Failure> {
    parse_rat(s).map_err(|e| Failure::pre(format!("{what}: {e}")))
}

fn parse_point(s: &str) -> Result<CurvePoint, Failure> {
    let (comp, at) = s
        .split_once(':')
        .ok_or_else(|| Failure::pre(format!("point {s:?} is not comp:at")))?;
    let comp = comp
        .trim()
        .parse()
        .map_err(|e| Failure::pre(format!("component id in {s:?}: {e}")))?;
    let at = ChartPoint::parse(at).map_err(Failure::Precondition)?;
    Ok(CurvePoint::new(comp, at))
}

fn read_curve(path: &str) -> Result<MarkedCurve, Failure> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn write_text(path: &str, text: &str) -> Result<(), Failure> {
    fs::write(path, text)?;
    Ok(())
}

fn print_diagnostics(d: &Diagnostics) -> Result<(), Failure> {
    println!("{d}");
    if d.pass() {
        Ok(())
    } else {
        Err(Failure::pre("checks failed"))
    }
}

fn run_hopf(cmd: HopfCmd) -> Result<(), Failure> {
    match cmd {
        HopfCmd::Verify { gm } => {
            let standard = HopfPresentation::standard();
            let report = verify_axioms(&standard);
            println!("{:<28} status", "axiom");
            for o in &report.outcomes {
                println!("{:<28} {}", o.name, if o.result.is_ok() { "PASS" } else { "FAIL" });
            }
            let mut ok = report.pass();
            if gm {
                let iso = check_iso_to_gm(&standard);
                println!("{:<28} status", "grouplike check");
                for o in &iso.outcomes {
                    println!("{:<28} {}", o.name, if o.result.is_ok() { "PASS" } else { "FAIL" });
                }
                ok &= iso.pass();
            }
            if ok {
                Ok(())
            } else {
                Err(Failure::Invariant("standard presentation failed an axiom".into()))
            }
        }
        HopfCmd::Law { a, b, tau } => {
            let a = parse_rat_arg(&a, "--a")?;
            let b = parse_rat_arg(&b, "--b")?;
            let tau = parse_rat_arg(&tau, "--tau")?;
            let value = group_law(&a, &b, &tau).map_err(|e| Failure::pre(e.to_string()))?;
            println!("{}", format_rat(&value));
            Ok(())
        }
    }
}

fn emit_bubble(
    curve: &MarkedCurve,
    new_x: &CurvePoint,
    map: &ContractionMap,
    out: Option<&str>,
) -> Result<(), Failure> {
    let report = serde_json::json!({
        "curve": curve,
        "new_x": {"comp": new_x.comp, "at": new_x.at.render()},
        "contraction": map.to_json(),
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    if let Some(path) = out {
        write_text(path, &format!("{}\n", serde_json::to_string_pretty(curve)?))?;
    }
    Ok(())
}

fn run_curve(cmd: CurveCmd) -> Result<(), Failure> {
    match cmd {
        CurveCmd::Validate(input) => {
            let c = read_curve(&input.input)?;
            if let Some(dot) = &input.dot {
                write_text(dot, &c.to_dot())?;
            }
            print_diagnostics(&c.validate())
        }
        CurveCmd::Ncr(input) => {
            let c = read_curve(&input.input)?;
            let n = c.ncr().map_err(|e| Failure::pre(e.to_string()))?;
            println!("{}", format_rat(&n));
            Ok(())
        }
        CurveCmd::Check { input, kind, x } => {
            let c = read_curve(&input.input)?;
            let x = x.as_deref().map(parse_point).transpose()?;
            print_diagnostics(&c.category_check(kind.into(), x.as_ref()))
        }
        CurveCmd::Stabilize(args) => {
            let c = read_curve(&args.input)?;
            let x = parse_point(&args.x)?;
            let (out, new_x, map) = knudsen_stabilize(&c, &x)?;
            emit_bubble(&out, &new_x, &map, args.out.as_deref())
        }
        CurveCmd::Inflate(args) => {
            let c = read_curve(&args.input)?;
            let x = parse_point(&args.x)?;
            let (out, new_x, map) = inflate_at_zero(&c, &x)?;
            emit_bubble(&out, &new_x, &map, args.out.as_deref())
        }
        CurveCmd::Contract { args, kind } => {
            let c = read_curve(&args.input)?;
            let x = parse_point(&args.x)?;
            let kind = match kind {
                DownKind::C2 => Kind::C2,
                DownKind::C3 => Kind::C3,
            };
            let (out, new_x, map) = bubble_down(&c, kind, &x)?;
            emit_bubble(&out, &new_x, &map, args.out.as_deref())
        }
        CurveCmd::Act { input, shifts, out } => {
            let c = read_curve(&input.input)?;
            let shifts: Vec<Rat> = shifts
                .split(',')
                .map(|s| parse_rat_arg(s.trim(), "--shifts"))
                .collect::<Result<_, _>>()?;
            let moved = c.gan_act(&shifts).map_err(|e| Failure::pre(e.to_string()))?;
            let text = serde_json::to_string_pretty(&moved)?;
            println!("{text}");
            if let Some(path) = out {
                write_text(&path, &format!("{text}\n"))?;
            }
            Ok(())
        }
        CurveCmd::Iso { input, with } => {
            let a = read_curve(&input)?;
            let b = read_curve(&with)?;
            match curve_isomorphic(&a, &b) {
                Some(iso) => {
                    println!("ISOMORPHIC");
                    for (ca, cb, m) in &iso.comp_map {
                        println!("  {ca} -> {cb} via {m}");
                    }
                }
                None => println!("NOT ISOMORPHIC"),
            }
            Ok(())
        }
    }
}

fn strata_err(e: vfcurve::strata::StrataError) -> Failure {
    Failure::pre(e.to_string())
}

fn run_strata(args: StrataArgs) -> Result<(), Failure> {
    enum Types {
        Lm(Vec<LMType>),
        Pn(Vec<PnType>),
    }
    let types = match args.family {
        Family::Lm => Types::Lm(lm_types(args.n).map_err(strata_err)?),
        Family::Pn => Types::Pn(pn_types(args.n).map_err(strata_err)?),
    };
    let rendered: Vec<String> = match &types {
        Types::Lm(ts) => ts.iter().map(|t| t.render()).collect(),
        Types::Pn(ts) => ts.iter().map(|t| t.render()).collect(),
    };
    let dims: Vec<usize> = match &types {
        Types::Lm(ts) => ts.iter().map(lm_dim).collect(),
        Types::Pn(ts) => ts.iter().map(pn_dim).collect(),
    };
    let leq = |i: usize, j: usize| -> Result<bool, Failure> {
        match &types {
            Types::Lm(ts) => lm_closure_leq(&ts[i], &ts[j]).map_err(strata_err),
            Types::Pn(ts) => pn_closure_leq(&ts[i], &ts[j]).map_err(strata_err),
        }
    };

    let mode_list = args.list;
    let mode_dims = args.dims;
    let mode_poset = args.poset;

    if let Some(dot_path) = &args.dot {
        // covering relations of the closure order
        let mut edges = Vec::new();
        for i in 0..rendered.len() {
            for j in 0..rendered.len() {
                if i == j || !leq(i, j)? {
                    continue;
                }
                let mut covering = true;
                for k in 0..rendered.len() {
                    if k != i && k != j && leq(i, k)? && leq(k, j)? {
                        covering = false;
                        break;
                    }
                }
                if covering {
                    edges.push((i, j));
                }
            }
        }
        let mut dot = String::from("digraph closure {\n  rankdir=BT;\n");
        for (i, name) in rendered.iter().enumerate() {
            dot.push_str(&format!("  t{} [label=\"{}\"];\n", i, name));
        }
        for (i, j) in edges {
            dot.push_str(&format!("  t{i} -> t{j};\n"));
        }
        dot.push_str("}\n");
        write_text(dot_path, &dot)?;
    }

    if args.json {
        let mut items = Vec::new();
        for (i, name) in rendered.iter().enumerate() {
            items.push(serde_json::json!({"type": name, "dim": dims[i]}));
        }
        let mut doc = serde_json::json!({
            "family": match args.family { Family::Lm => "lm", Family::Pn => "pn" },
            "n": args.n,
            "count": rendered.len(),
        });
        if mode_list || mode_dims {
            doc["types"] = serde_json::Value::Array(items);
        }
        if mode_poset {
            let mut rels = Vec::new();
            for i in 0..rendered.len() {
                for j in 0..rendered.len() {
                    if i != j && leq(i, j)? {
                        rels.push(serde_json::json!([rendered[i], rendered[j]]));
                    }
                }
            }
            doc["closure"] = serde_json::Value::Array(rels);
        }
        println!("{}", serde_json::to_string_pretty(&doc)?);
        return Ok(());
    }

    if mode_list {
        for (name, d) in rendered.iter().zip(&dims) {
            println!("{name}  (dim {d})");
        }
    }
    if mode_dims {
        let max = dims.iter().copied().max().unwrap_or(0);
        for d in 0..=max {
            println!("dim {d}: {}", dims.iter().filter(|&&x| x == d).count());
        }
    }
    if mode_poset {
        for i in 0..rendered.len() {
            for j in 0..rendered.len() {
                if i != j && leq(i, j)? {
                    println!("{} < {}", rendered[i], rendered[j]);
                }
            }
        }
    }
    if !mode_list && !mode_dims && !mode_poset {
        println!("{}", rendered.len());
    }
    Ok(())
}

fn run_limit(args: LimitArgs) -> Result<(), Failure> {
    let text = fs::read_to_string(&args.input)?;
    let mut family: PathFamily = serde_json::from_str(&text)?;
    if let Some(mode) = args.mode {
        family.mode = match mode {
            ModeArg::Affine => Mode::Affine,
            ModeArg::Degeneration => Mode::Degeneration,
        };
    }
    let curve = stable_limit(&family).map_err(|e| Failure::pre(e.to_string()))?;
    let text = serde_json::to_string_pretty(&curve)?;
    println!("{text}");
    if let Some(path) = &args.out {
        write_text(path, &format!("{text}\n"))?;
    }
    if let Some(path) = &args.dot {
        write_text(path, &curve.to_dot())?;
    }
    Ok(())
}

fn report_json(t: &LMType, report: &SpecializeReport) -> serde_json::Value {
    serde_json::json!({
        "lm": t.render(),
        "dim": lm_dim(t),
        "samples": report.samples,
        "maximal": report.maximal.iter().map(|s| s.render()).collect::<Vec<_>>(),
        "collected": report.collected.iter().map(|s| s.render()).collect::<Vec<_>>(),
    })
}

fn run_specialize(args: SpecializeArgs) -> Result<(), Failure> {
    let t = LMType::parse(&args.lm, args.n).map_err(strata_err)?;
    let grid: SampleGrid = args.grid.into();
    let report = specialize_lm_jobs(&t, &grid, args.jobs.max(1))
        .map_err(|e| Failure::pre(e.to_string()))?;
    match args.report {
        ReportArg::Json => {
            let mut doc = report_json(&t, &report);
            if let Some(seed) = args.seed {
                doc["seed"] = serde_json::json!(seed);
            }
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        ReportArg::Table => {
            println!("stratum {} (dim {})", t.render(), lm_dim(&t));
            if let Some(seed) = args.seed {
                println!("seed {seed}");
            }
            println!("samples {}", report.samples);
            println!("maximal:");
            for s in &report.maximal {
                println!("  {}", s.render());
            }
            println!("collected:");
            for s in &report.collected {
                println!("  {}", s.render());
            }
        }
    }
    Ok(())
}

fn run_fixtures(cmd: FixturesCmd) -> Result<(), Failure> {
    let FixturesCmd::Replay { name, grid, jobs } = cmd;
    if name != "figure3" {
        return Err(Failure::pre(format!("unknown fixture {name:?} (available: figure3)")));
    }
    let doc: serde_json::Value = serde_json::from_str(include_str!("../fixtures/figure3.json"))?;
    let n = doc["n"].as_u64().expect("fixture n") as usize;
    let grid: SampleGrid = grid.into();
    let mut mismatches = 0usize;
    for column in doc["columns"].as_array().expect("fixture columns") {
        println!("== {}", column["label"].as_str().unwrap_or(""));
        for entry in column["entries"].as_array().expect("fixture entries") {
            let lm = entry["lm"].as_str().expect("fixture lm");
            let expected: BTreeSet<String> = entry["sigmas"]
                .as_array()
                .expect("fixture sigmas")
                .iter()
                .map(|s| s.as_str().expect("sigma string").to_string())
                .collect();
            let t = LMType::parse(lm, n).map_err(strata_err)?;
            let report = specialize_lm_jobs(&t, &grid, jobs.max(1))
                .map_err(|e| Failure::pre(e.to_string()))?;
            let got: BTreeSet<String> = report.maximal.iter().map(|s| s.render()).collect();
            let verdict = if got == expected { "MATCH" } else { "MISMATCH" };
            if got != expected {
                mismatches += 1;
            }
            println!(
                "{:<8} -> {:<55} {}",
                lm,
                got.iter().cloned().collect::<Vec<_>>().join(" + "),
                verdict
            );
        }
    }
    if mismatches == 0 {
        println!("all MATCH");
        Ok(())
    } else {
        Err(Failure::Invariant(format!("{mismatches} fixture rows mismatched")))
    }
}
