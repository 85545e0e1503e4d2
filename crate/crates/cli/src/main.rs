//! `sls`: build, analyze, merge, verify and simulate subsystem lattice
//! surgery from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or IO error.

mod text;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use sls_core::builders::{bacon_shor, Family};
use sls_core::distance::{bare_distance, default_max_weight};
use sls_core::io::{parse_code_file, rebuild_merge, AnalysisExport, CodeFile};
use sls_core::render::{render_code, RenderOptions};
use sls_core::sim::{StateLabel, Teleporter};
use sls_core::surgery::{
    build_merged_code, compressed_relabeling, same_group_up_to_phase, split,
    verify_merged_parameters, MergeResult, MergeSpec,
};
use sls_core::{
    boundary_logical, distance, LogicalKind, PauliOperator, Side, SlsError, SubsystemCode,
};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Serialize)]
#[command(name = "sls", version, about = "Subsystem lattice surgery toolkit")]
struct Cli {
    /// Report format on stdout.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
enum Command {
    /// Write a code file for a built-in family.
    Build(BuildArgs),
    /// Stabilizer, logical and gauge structure of a code.
    Analyze(AnalyzeArgs),
    /// Exact distance by exhaustive search.
    Distance(DistanceArgs),
    /// Merge two codes along a boundary logical.
    Merge(MergeArgs),
    /// Recover the two codes of a merged code file.
    Split(SplitArgs),
    /// Simulate logical teleportation through a merge.
    Teleport(TeleportArgs),
    /// Check a merged code file against its recorded parents.
    Verify(VerifyArgs),
    /// Draw a code file as SVG.
    Render(RenderArgs),
}

#[derive(Args, Serialize)]
struct BuildArgs {
    /// surface, color, ssc or bacon-shor
    #[arg(long)]
    family: String,
    #[arg(long)]
    size: usize,
    /// rows of a Bacon-Shor code (defaults to --size)
    #[arg(long)]
    size_y: Option<usize>,
    /// write the code file here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct AnalyzeArgs {
    code: PathBuf,
    #[arg(long)]
    max_weight: Option<usize>,
    /// skip the distance search
    #[arg(long)]
    no_distance: bool,
}

#[derive(Args, Serialize)]
struct DistanceArgs {
    code: PathBuf,
    #[arg(long)]
    max_weight: Option<usize>,
    /// minimum weight of a bare logical instead of a dressed one
    #[arg(long)]
    bare: bool,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum KindArg {
    X,
    Z,
}

impl From<KindArg> for LogicalKind {
    fn from(k: KindArg) -> LogicalKind {
        match k {
            KindArg::X => LogicalKind::X,
            KindArg::Z => LogicalKind::Z,
        }
    }
}

#[derive(Args, Serialize)]
struct MergeArgs {
    /// code placed on the left
    code_a: PathBuf,
    /// code placed on the right
    code_b: PathBuf,
    #[arg(long, value_enum, default_value_t = SideArg::Right)]
    side_a: SideArg,
    #[arg(long, value_enum, default_value_t = SideArg::Left)]
    side_b: SideArg,
    /// requested type of the boundary logical
    #[arg(long, value_enum, default_value_t = KindArg::Z)]
    kind: KindArg,
    #[arg(long)]
    logical_index: Option<usize>,
    /// merge directly, without the ancilla column
    #[arg(long)]
    no_ancillas: bool,
    #[arg(long)]
    max_weight: Option<usize>,
    /// write the merged code file here
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct SplitArgs {
    merged: PathBuf,
    #[arg(long)]
    output_a: Option<PathBuf>,
    #[arg(long)]
    output_b: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct TeleportArgs {
    /// code holding the input state (placed on the right)
    #[arg(long)]
    input: PathBuf,
    /// code receiving the state (placed on the left)
    #[arg(long)]
    memory: PathBuf,
    /// single input label such as Z+ or Y-; all six when omitted
    #[arg(long)]
    state: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    no_ancillas: bool,
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    code: PathBuf,
    #[arg(long)]
    max_weight: Option<usize>,
}

#[derive(Args, Serialize)]
struct RenderArgs {
    code: PathBuf,
    /// draw the boundary logicals of a merged code
    #[arg(long)]
    logicals: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    /// usage, input or IO problem
    Usage(String),
    /// a check ran and did not pass; the report is still printed
    Verify(Value),
}

impl From<SlsError> for Failure {
    fn from(e: SlsError) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<Value, Failure>;

fn read_code_file(path: &Path) -> Result<CodeFile, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_code_file(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_code(path: &Path) -> Result<SubsystemCode, Failure> {
    read_code_file(path)?
        .to_code()
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn max_weight(requested: Option<usize>, code: &SubsystemCode) -> usize {
    requested.unwrap_or_else(|| default_max_weight(code.n()))
}

fn cmd_build(a: &BuildArgs) -> CmdResult {
    let family = Family::parse(&a.family)
        .ok_or_else(|| Failure::Usage(format!("unknown family {:?}", a.family)))?;
    let code = family.build(a.size, a.size_y)?;
    let mut file = CodeFile::from_code(&code);
    file.family = Some(family.name().into());
    let text = file.to_json();
    if let Some(path) = &a.output {
        write_file(path, &text)?;
        Ok(json!({ "written": path, "name": file.name, "n": file.n }))
    } else {
        Ok(serde_json::to_value(&file).expect("code file serializes"))
    }
}

fn cmd_analyze(a: &AnalyzeArgs) -> CmdResult {
    let code = read_code(&a.code)?;
    let analysis = code.analyze()?;
    let d = if a.no_distance {
        None
    } else {
        Some(distance(&code, max_weight(a.max_weight, &code))?)
    };
    Ok(json!({
        "name": code.name(),
        "analysis": AnalysisExport::new(&analysis, d),
        "distance": d,
    }))
}

fn cmd_distance(a: &DistanceArgs) -> CmdResult {
    let code = read_code(&a.code)?;
    let w = max_weight(a.max_weight, &code);
    let d = if a.bare {
        bare_distance(&code, w)?
    } else {
        distance(&code, w)?
    };
    Ok(json!({ "name": code.name(), "max_weight": w, "distance": d }))
}

fn merge_summary(m: &MergeResult) -> Value {
    json!({
        "merged_name": m.merged.name(),
        "logical_a": m.spec.logical_a.operator,
        "logical_b": m.spec.logical_b.operator,
        "logical_type_a": m.spec.logical_a.pauli_type().map(|p| p.as_char().to_string()),
        "logical_type_b": m.spec.logical_b.pauli_type().map(|p| p.as_char().to_string()),
        "merging_operators": m.merging_operators,
        "merging_generators": m.merging_generators,
        "delta_g": m.delta_g,
        "ancillas": m.ancillas(),
        "witnesses": m.stabilizer_witnesses.iter()
            .map(|w| json!([w.generator, w.stabilizer]))
            .collect::<Vec<_>>(),
    })
}

/// Ledger and locality checks; `Err` carries the named violation.
fn ledger(m: &MergeResult, max_w: usize) -> Result<Value, String> {
    let r = verify_merged_parameters(m, max_w).map_err(|e| e.to_string())?;
    Ok(json!({
        "ledger": { "n": r.n, "k": r.k, "g": r.g, "d": r.d },
        "parents": {
            "a": { "n": r.n_a, "k": r.k_a, "g": r.g_a, "d": r.d_a },
            "b": { "n": r.n_b, "k": r.k_b, "g": r.g_b, "d": r.d_b },
        },
        "g_ancilla": r.g_ancilla,
        "locality": { "r_before": r.r_a.max(r.r_b), "r_after": r.r_after },
    }))
}

fn cmd_merge(a: &MergeArgs) -> CmdResult {
    let file_a = read_code_file(&a.code_a)?;
    let file_b = read_code_file(&a.code_b)?;
    let code_a = file_a.to_code()?;
    let code_b = file_b.to_code()?;
    let kind = LogicalKind::from(a.kind);
    let idx = a.logical_index.unwrap_or(0);
    let la = boundary_logical(&code_a, a.side_a.into(), idx, kind)?;
    let lb = boundary_logical(&code_b, a.side_b.into(), idx, kind)?;
    let spec = MergeSpec::with_logicals(code_a, code_b, la, lb, !a.no_ancillas)?;
    let m = build_merged_code(spec)?;
    let max_w = max_weight(a.max_weight, &m.merged);
    let mut report = merge_summary(&m);
    if let Some(path) = &a.output {
        let mut file = CodeFile::from_merge(&m, kind);
        if let Some(info) = file.merge.as_mut() {
            info.code_a.family = file_a.family.clone();
            info.code_b.family = file_b.family.clone();
        }
        write_file(path, &file.to_json())?;
        report["written"] = json!(path);
    }
    match ledger(&m, max_w) {
        Ok(v) => {
            merge_into(&mut report, v);
            report["pass"] = json!(true);
            Ok(report)
        }
        Err(violation) => {
            report["pass"] = json!(false);
            report["violation"] = json!(violation);
            Err(Failure::Verify(report))
        }
    }
}

fn merge_into(dst: &mut Value, src: Value) {
    if let (Value::Object(d), Value::Object(s)) = (dst, src) {
        d.extend(s);
    }
}

fn merge_info(file: &CodeFile, path: &Path) -> Result<MergeResult, Failure> {
    let info = file
        .merge
        .as_ref()
        .ok_or_else(|| Failure::Usage(format!("{} has no merge record", path.display())))?;
    Ok(rebuild_merge(info)?)
}

fn cmd_split(a: &SplitArgs) -> CmdResult {
    let file = read_code_file(&a.merged)?;
    let m = merge_info(&file, &a.merged)?;
    let (code_a, code_b, joint) = split(&m);
    for (out, code) in [(&a.output_a, &code_a), (&a.output_b, &code_b)] {
        if let Some(path) = out {
            write_file(path, &CodeFile::from_code(code).to_json())?;
        }
    }
    Ok(json!({
        "code_a": code_a.name(),
        "code_b": code_b.name(),
        "joint_logical": joint.joint,
        "measured_ancillas": joint.measured_ancillas,
    }))
}

fn cmd_teleport(a: &TeleportArgs) -> CmdResult {
    let input = read_code(&a.input)?;
    let memory = read_code(&a.memory)?;
    let labels: Vec<StateLabel> = match &a.state {
        Some(s) => vec![s.parse()?],
        None => StateLabel::ALL.to_vec(),
    };
    let t = Teleporter::new(&input, &memory, !a.no_ancillas)?;
    let mut runs = Vec::new();
    for label in labels {
        runs.push(t.run(label, a.seed)?);
    }
    let passed = runs.iter().filter(|r| r.pass).count();
    let report = json!({
        "seed": a.seed,
        "rounds": t.rounds,
        "runs": runs,
        "passed": passed,
        "total": runs.len(),
        "pass": passed == runs.len(),
    });
    if passed == runs.len() {
        Ok(report)
    } else {
        Err(Failure::Verify(report))
    }
}

/// Compare the merged group of two Bacon-Shor codes with the wider
/// Bacon-Shor code after dropping the seam column.
fn bacon_shor_closure(m: &MergeResult, file: &CodeFile) -> Option<Result<String, String>> {
    let info = file.merge.as_ref()?;
    let is_bs = |f: &CodeFile| f.family.as_deref() == Some("bacon-shor");
    if !is_bs(&info.code_a) || !is_bs(&info.code_b) || info.with_ancillas {
        return None;
    }
    let (ga, gb) = (m.spec.code_a.geometry()?, m.spec.code_b.geometry()?);
    if ga.height() != gb.height() {
        return None;
    }
    let (lx, ly) = (ga.width() + gb.width(), ga.height());
    let target = bacon_shor(lx, ly).ok()?;
    let map = compressed_relabeling(m);
    let n = m.merged.n();
    let relabeled: Vec<PauliOperator> = m
        .merged
        .gauge_generators()
        .iter()
        .map(|g| g.embed(n, &map))
        .collect();
    Some(
        match same_group_up_to_phase(&relabeled, target.gauge_generators(), n) {
            Ok(true) => Ok(format!("equals {lx}x{ly} Bacon-Shor")),
            Ok(false) => Err(format!("differs from {lx}x{ly} Bacon-Shor")),
            Err(e) => Err(e.to_string()),
        },
    )
}

fn cmd_verify(a: &VerifyArgs) -> CmdResult {
    let file = read_code_file(&a.code)?;
    let mut report = json!({ "name": file.name });
    let fail = |mut report: Value, violation: String| {
        report["pass"] = json!(false);
        report["violation"] = json!(violation);
        Err(Failure::Verify(report))
    };
    let code = match file.to_code() {
        Ok(c) => c,
        Err(e) => return fail(report, e.to_string()),
    };
    let analysis = match code.analyze() {
        Ok(an) => an,
        Err(e) => return fail(report, e.to_string()),
    };
    if let Err(e) = analysis.verify_structure(&code) {
        return fail(report, e);
    }
    report["params"] = json!(analysis.params);
    let Some(_) = file.merge else {
        let d = distance(&code, max_weight(a.max_weight, &code))?;
        report["distance"] = json!(d);
        report["pass"] = json!(true);
        return Ok(report);
    };

    let m = merge_info(&file, &a.code)?;
    let expect = m.analysis.params;
    for (q, want, got) in [
        ("n", expect.n, analysis.params.n),
        ("k", expect.k, analysis.params.k),
        ("g", expect.g, analysis.params.g),
    ] {
        if want != got {
            return fail(
                report,
                format!("ledger mismatch on {q}: expected {want}, found {got}"),
            );
        }
    }
    match same_group_up_to_phase(
        code.gauge_generators(),
        m.merged.gauge_generators(),
        code.n(),
    ) {
        Ok(true) => {}
        Ok(false) => return fail(report, "gauge group mismatch with the rebuilt merge".into()),
        Err(e) => return fail(report, e.to_string()),
    }
    merge_into(&mut report, merge_summary(&m));
    match ledger(&m, max_weight(a.max_weight, &m.merged)) {
        Ok(v) => merge_into(&mut report, v),
        Err(violation) => return fail(report, violation),
    }
    if let Some(closure) = bacon_shor_closure(&m, &file) {
        match closure {
            Ok(line) => report["closure"] = json!(line),
            Err(violation) => return fail(report, violation),
        }
    }
    report["pass"] = json!(true);
    Ok(report)
}

fn cmd_render(a: &RenderArgs) -> CmdResult {
    let file = read_code_file(&a.code)?;
    let code = file.to_code()?;
    let mut opts = RenderOptions {
        ancillas: file.ancillas.clone(),
        title: Some(file.name.clone()),
        ..RenderOptions::default()
    };
    if a.logicals {
        if let Some(info) = &file.merge {
            let n = code.n();
            let (na, nb) = (info.code_a.n, info.code_b.n);
            let ia: Vec<usize> = (0..na).collect();
            let ib: Vec<usize> = (na..na + nb).collect();
            opts.logicals = vec![info.logical_a.embed(n, &ia), info.logical_b.embed(n, &ib)];
        }
    }
    let svg = render_code(&code, &opts)?;
    match &a.output {
        Some(path) => {
            write_file(path, &svg)?;
            Ok(json!({ "written": path, "bytes": svg.len() }))
        }
        None => Ok(json!({ "svg": svg })),
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Build(a) => cmd_build(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Distance(a) => cmd_distance(a),
        Command::Merge(a) => cmd_merge(a),
        Command::Split(a) => cmd_split(a),
        Command::Teleport(a) => cmd_teleport(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Render(a) => cmd_render(a),
    }
}

fn emit(cli: &Cli, result: Value) {
    let report = json!({
        "tool": "sls",
        "version": VERSION,
        "config": cli,
        "result": result,
    });
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("reports serialize")
        ),
        Format::Text => print!("{}", text::render(&report)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            emit(&cli, v);
            ExitCode::SUCCESS
        }
        Err(Failure::Verify(v)) => {
            if let Some(why) = v.get("violation").and_then(Value::as_str) {
                eprintln!("verification failed: {why}");
            } else {
                eprintln!("verification failed");
            }
            emit(&cli, v);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
