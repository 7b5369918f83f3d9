//! The `qslide` command line.
//!
//! Exit codes: 0 success, 1 a claim failed, 2 usage error, 3 partial result
//! (resource cap or interrupt).

pub mod claims;

use crate::cube::{fmt_set, to_list, CubeContext, SimpleGraph};
use crate::error::Error;
use crate::exec::{default_workers, Exec};
use crate::signature::{enumerate_ordered_signatures, Classification, Signature};
use crate::slide::{
    disconnection_witness, explicit_graph, explore_signature, ComponentReport, ExploreMode, ExploreOptions, TreeSpace,
};
use crate::tree::{
    collect_trees_capped, count_spanning_trees, enumerate_spanning_trees, spanning_tree_formula, trees_with_signature,
    SpanningTree,
};
use claims::{exit_code, select, ClaimResult, ClaimStatus, Ctx};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARTIAL: i32 = 3;

/// Largest `n` accepted by `signatures`.
pub const MAX_TABLE_DIM: usize = 10;
/// Largest slide graph written by `export` and `components --format dot`.
pub const EXPORT_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Json,
    Dot,
    #[default]
    Table,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    /// Dimension bound for `verify`.
    pub n: usize,
    pub memory_cap_bytes: Option<u64>,
    pub worker_count: usize,
    pub output_format: OutputFormat,
    pub checkpoint_path: Option<PathBuf>,
    /// Permits tree enumeration beyond the default dimension.
    pub allow_large: bool,
}

impl RunConfig {
    pub fn exec(&self) -> Exec {
        Exec::with_workers(self.worker_count)
    }

    pub fn explore_options(&self, mode: ExploreMode) -> ExploreOptions {
        ExploreOptions {
            mode,
            mem_cap: self.memory_cap_bytes,
            exec: self.exec(),
            checkpoint: self.checkpoint_path.clone(),
            allow_large: self.allow_large,
            ..Default::default()
        }
    }
}

fn parse_bytes(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let (digits, mult) = match s.chars().last() {
        Some('k' | 'K') => (&s[..s.len() - 1], 1u64 << 10),
        Some('m' | 'M') => (&s[..s.len() - 1], 1 << 20),
        Some('g' | 'G') => (&s[..s.len() - 1], 1 << 30),
        _ => (s, 1),
    };
    digits
        .parse::<u64>()
        .ok()
        .and_then(|d| d.checked_mul(mult))
        .ok_or_else(|| format!("{s:?} is not a byte count (e.g. 4096, 512M, 2G)"))
}

#[derive(Debug, Parser)]
#[command(
    name = "qslide",
    version,
    about = "Signatures and edge-slide graphs of spanning trees of the n-cube"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Worker threads (default: all available).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    /// Memory budget for visited sets, in bytes (suffixes K, M, G).
    #[arg(long = "mem-cap", global = true, env = "QSLIDE_MEM_CAP", value_parser = parse_bytes)]
    mem_cap: Option<u64>,
    /// State file for resumable searches.
    #[arg(long, global = true)]
    checkpoint: Option<PathBuf>,
    /// Allow tree enumeration for n = 5.
    #[arg(long = "allow-large", global = true)]
    allow_large: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the ordered signatures of Q_n with their classification.
    Signatures { n: usize },
    /// Classify one signature, e.g. `classify 1,3,3`.
    Classify { signature: String },
    /// Count or list spanning trees.
    Trees {
        #[command(subcommand)]
        cmd: TreesCmd,
    },
    /// Connected components of the slide graph E(S).
    Components {
        signature: String,
        #[arg(long, default_value_t = ExploreMode::Exhaustive)]
        mode: ExploreMode,
    },
    /// Two trees of a strictly reducible signature in different components.
    Witness { signature: String },
    /// Run the registered claim checks: `all`, `fast` or `thm:<id>`.
    Verify {
        selector: String,
        /// Largest dimension for the exhaustive checks (2 to 4).
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(2..=4))]
        n: u64,
    },
    /// Write the whole slide graph E(S) as DOT (default) or JSON.
    Export { signature: String },
}

#[derive(Debug, Subcommand)]
enum TreesCmd {
    Count {
        n: usize,
    },
    /// One tree per line.
    Enum {
        n: usize,
        #[arg(long)]
        signature: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn lib_exit(e: &Error) -> i32 {
    match e {
        Error::ResourceCap(_) => EXIT_PARTIAL,
        Error::Checkpoint(_) | Error::MalformedDecomposition(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

type Out<'a> = &'a mut dyn Write;

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: Out, err: Out) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let cfg = RunConfig {
        n: match cli.command {
            Command::Verify { n, .. } => n as usize,
            _ => 4,
        },
        memory_cap_bytes: cli.mem_cap,
        worker_count: cli.workers.map_or_else(default_workers, |w| w as usize),
        output_format: cli.format,
        checkpoint_path: cli.checkpoint.clone(),
        allow_large: cli.allow_large,
    };
    match dispatch(&cli.command, &cfg, out) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            lib_exit(&e)
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAIL
        }
    }
}

fn parse_sig(text: &str) -> Result<Signature, Failure> {
    Ok(Signature::parse(text)?)
}

fn json_line<T: Serialize>(out: Out, v: &T) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(v).expect("serialisable");
    writeln!(out, "{s}")?;
    Ok(())
}

fn unsupported(cmd: &str, f: OutputFormat) -> Failure {
    let name = match f {
        OutputFormat::Json => "json",
        OutputFormat::Dot => "dot",
        OutputFormat::Table => "table",
    };
    Failure::Usage(format!("{cmd} does not support --format {name}"))
}

fn dispatch(cmd: &Command, cfg: &RunConfig, out: Out) -> Result<i32, Failure> {
    match cmd {
        Command::Signatures { n } => cmd_signatures(*n, cfg, out),
        Command::Classify { signature } => cmd_classify(&parse_sig(signature)?, cfg, out),
        Command::Trees {
            cmd: TreesCmd::Count { n },
        } => cmd_trees_count(*n, cfg, out),
        Command::Trees {
            cmd: TreesCmd::Enum { n, signature },
        } => {
            let sig = signature.as_deref().map(parse_sig).transpose()?;
            cmd_trees_enum(*n, sig.as_ref(), cfg, out)
        }
        Command::Components { signature, mode } => cmd_components(&parse_sig(signature)?, *mode, cfg, out),
        Command::Witness { signature } => cmd_witness(&parse_sig(signature)?, cfg, out),
        Command::Verify { selector, .. } => cmd_verify(selector, cfg, out),
        Command::Export { signature } => cmd_export(&parse_sig(signature)?, cfg, out),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignatureRow {
    pub signature: Signature,
    pub excess: Vec<u64>,
    pub reducing_prefix_sizes: Vec<usize>,
    pub class: crate::signature::ClassKind,
    pub saturated_above: Option<usize>,
    pub unsaturated_part: Signature,
}

pub fn signature_rows(n: usize) -> Vec<SignatureRow> {
    enumerate_ordered_signatures(n)
        .into_iter()
        .map(|s| {
            let c = s.classify();
            SignatureRow {
                excess: s.excess_vector(),
                reducing_prefix_sizes: c.reducing_prefix_sizes,
                class: c.kind,
                saturated_above: c.saturated_above,
                unsaturated_part: s.unsaturated_part(),
                signature: s,
            }
        })
        .collect()
}

fn list<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(T::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn cmd_signatures(n: usize, cfg: &RunConfig, out: Out) -> Result<i32, Failure> {
    if n == 0 || n > MAX_TABLE_DIM {
        return Err(Failure::Usage(format!("n must be between 1 and {MAX_TABLE_DIM}")));
    }
    let rows = signature_rows(n);
    match cfg.output_format {
        OutputFormat::Json => json_line(out, &rows)?,
        OutputFormat::Table => {
            let cells: Vec<[String; 6]> = rows
                .iter()
                .map(|r| {
                    [
                        r.signature.to_string(),
                        list(&r.excess),
                        list(&r.reducing_prefix_sizes),
                        r.class.to_string(),
                        r.saturated_above.map_or("-".into(), |s| s.to_string()),
                        r.unsaturated_part.to_string(),
                    ]
                })
                .collect();
            let head = [
                "signature",
                "excess",
                "reducing",
                "class",
                "saturated_above",
                "unsaturated",
            ];
            write_table(out, &head, &cells)?;
        }
        f => return Err(unsupported("signatures", f)),
    }
    Ok(EXIT_OK)
}

fn write_table<const K: usize>(out: Out, head: &[&str; K], rows: &[[String; K]]) -> Result<(), Failure> {
    let mut width = head.map(str::len);
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (k, c) in cells.iter().enumerate() {
            if k + 1 == K {
                s.push_str(c);
            } else {
                let _ = write!(s, "{c:<w$}  ", w = width[k]);
            }
        }
        s
    };
    writeln!(out, "{}", line(head.to_vec()))?;
    for r in rows {
        writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassifyOutput {
    signature: Signature,
    excess: Vec<u64>,
    /// Every reducing set, 1-based.
    reducing_sets: Vec<Vec<usize>>,
    unsaturated_part: Signature,
    classification: Classification,
}

fn cmd_classify(sig: &Signature, cfg: &RunConfig, out: Out) -> Result<i32, Failure> {
    let o = ClassifyOutput {
        signature: sig.clone(),
        excess: sig.excess_vector(),
        reducing_sets: sig.reducing_sets().into_iter().map(to_list).collect(),
        unsaturated_part: sig.unsaturated_part(),
        classification: sig.classify(),
    };
    match cfg.output_format {
        OutputFormat::Json => json_line(out, &o)?,
        OutputFormat::Table => {
            let c = &o.classification;
            writeln!(out, "signature        {}", o.signature)?;
            writeln!(out, "class            {}", c.kind)?;
            writeln!(out, "excess           {}", list(&o.excess))?;
            let sets: Vec<String> = sig.reducing_sets().into_iter().map(fmt_set).collect();
            writeln!(
                out,
                "reducing sets    {}",
                if sets.is_empty() { "-".into() } else { sets.join(" ") }
            )?;
            writeln!(
                out,
                "saturated above  {}",
                c.saturated_above.map_or("-".into(), |s| s.to_string())
            )?;
            writeln!(out, "unsaturated part {}", o.unsaturated_part)?;
            writeln!(out, "supersaturated   {}", c.supersaturated)?;
        }
        f => return Err(unsupported("classify", f)),
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CountOutput {
    n: usize,
    enumerated: u64,
    formula: String,
    equal: bool,
}

fn cmd_trees_count(n: usize, cfg: &RunConfig, out: Out) -> Result<i32, Failure> {
    let cube = CubeContext::new(n)?;
    let enumerated = count_spanning_trees(cube, cfg.allow_large, &cfg.exec())?;
    let formula = spanning_tree_formula(n);
    let o = CountOutput {
        n,
        enumerated,
        equal: formula == enumerated.into(),
        formula: formula.to_string(),
    };
    match cfg.output_format {
        OutputFormat::Json => json_line(out, &o)?,
        OutputFormat::Table => writeln!(out, "Q_{n}: {} spanning trees (formula {})", o.enumerated, o.formula)?,
        f => return Err(unsupported("trees count", f)),
    }
    Ok(if o.equal { EXIT_OK } else { EXIT_FAIL })
}

fn tree_line(t: &SpanningTree) -> String {
    let cube = t.cube();
    let edges: Vec<String> = t
        .edges()
        .map(|e| {
            let (a, b) = cube.endpoints(e);
            format!("{}-{}", fmt_set(a), fmt_set(b))
        })
        .collect();
    format!("{} {}", t.signature(), edges.join(" "))
}

fn cmd_trees_enum(n: usize, sig: Option<&Signature>, cfg: &RunConfig, out: Out) -> Result<i32, Failure> {
    let cube = CubeContext::new(n)?;
    if let Some(s) = sig {
        if s.n() != n {
            return Err(Failure::Usage(format!("signature {s} does not belong to Q_{n}")));
        }
    }
    if !matches!(cfg.output_format, OutputFormat::Json | OutputFormat::Table) {
        return Err(unsupported("trees enum", cfg.output_format));
    }
    let json = cfg.output_format == OutputFormat::Json;
    let mut failed = None;
    let mut emit = |t: SpanningTree| {
        if failed.is_some() {
            return;
        }
        let line = if json {
            serde_json::to_string(&t.to_json()).expect("serialisable")
        } else {
            tree_line(&t)
        };
        if let Err(e) = writeln!(out, "{line}") {
            failed = Some(e);
        }
    };
    match sig {
        Some(s) => trees_with_signature(s, cfg.allow_large, &mut emit)?,
        None => enumerate_spanning_trees(cube, cfg.allow_large, &mut emit)?,
    };
    if let Some(e) = failed {
        return Err(e.into());
    }
    Ok(EXIT_OK)
}

fn render_components(r: &ComponentReport, out: Out) -> Result<(), Failure> {
    writeln!(out, "signature  {}", r.signature)?;
    writeln!(out, "mode       {}", r.mode)?;
    let total = r.total.map_or("unknown".into(), |t| t.to_string());
    writeln!(out, "trees      {} explored, {} total", r.explored, total)?;
    let status = if r.partial { "partial" } else { "complete" };
    writeln!(out, "components {} ({status})", r.components.len())?;
    for (k, c) in r.components.iter().enumerate() {
        let cube = c.cube_dimension.map_or(String::new(), |d| format!(", cube Q_{d}"));
        let degree = c.regular_degree.map_or(String::new(), |d| format!(", {d}-regular"));
        writeln!(out, "  #{k}: {} trees, {} upright{degree}{cube}", c.size, c.upright)?;
        for f in &c.fingerprints {
            let parts: Vec<String> = f
                .subsets()
                .map(|x| format!("{}:{}", fmt_set(x), list(f.get(x))))
                .collect();
            writeln!(out, "      R={} {}", fmt_set(f.r), parts.join(" "))?;
        }
    }
    if let Some(n) = &r.note {
        writeln!(out, "note       {n}")?;
    }
    Ok(())
}

fn slide_graph_dot(sig: &Signature, cfg: &RunConfig) -> Result<SimpleGraph, Failure> {
    let cube = CubeContext::new(sig.n())?;
    let trees = collect_trees_capped(sig, cfg.allow_large, &cfg.exec(), EXPORT_LIMIT)?.ok_or_else(|| {
        Failure::Lib(Error::ResourceCap(format!(
            "E{sig} has more than {EXPORT_LIMIT} vertices"
        )))
    })?;
    let mut g = explicit_graph(&TreeSpace(cube), &trees);
    g.set_names(trees.iter().map(|b| format!("{b:#x}")).collect());
    Ok(g)
}

fn cmd_components(sig: &Signature, mode: ExploreMode, cfg: &RunConfig, out: Out) -> Result<i32, Failure> {
    if cfg.output_format == OutputFormat::Dot {
        let g = slide_graph_dot(sig, cfg)?;
        write!(out, "{}", g.to_dot(&format!("E{sig}")))?;
        return Ok(EXIT_OK);
    }
    let r = explore_signature(sig, &cfg.explore_options(mode))?;
    match cfg.output_format {
        OutputFormat::Json => json_line(out, &r)?,
        _ => render_components(&r, out)?,
    }
    Ok(if r.partial { EXIT_PARTIAL } else { EXIT_OK })
}

fn cmd_witness(sig: &Signature, cfg: &RunConfig, out: Out) -> Result<i32, Failure> {
    let w = disconnection_witness(sig)?;
    match cfg.output_format {
        OutputFormat::Json => json_line(out, &w)?,
        OutputFormat::Table => {
            writeln!(out, "signature {}", w.signature)?;
            writeln!(
                out,
                "R = {}, swapped parts X = {} and Y = {}",
                fmt_set(w.r),
                fmt_set(w.x),
                fmt_set(w.y)
            )?;
            writeln!(out, "first  {}", tree_line(&w.first))?;
            writeln!(out, "second {}", tree_line(&w.second))?;
            writeln!(
                out,
                "fingerprints differ: {}",
                w.first_fingerprint != w.second_fingerprint
            )?;
        }
        f => return Err(unsupported("witness", f)),
    }
    Ok(if w.separated() { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_verify(selector: &str, cfg: &RunConfig, out: Out) -> Result<i32, Failure> {
    let selected = select(selector).ok_or_else(|| {
        Failure::Usage(format!(
            "unknown claim selector {selector:?}; use all, fast or thm:<id>"
        ))
    })?;
    if !matches!(cfg.output_format, OutputFormat::Json | OutputFormat::Table) {
        return Err(unsupported("verify", cfg.output_format));
    }
    let n = if selector == "fast" { cfg.n.min(3) } else { cfg.n };
    let ctx = Ctx::new(n, cfg.exec(), cfg.memory_cap_bytes);
    let mut results: Vec<ClaimResult> = Vec::new();
    for claim in selected {
        let r = claim.run(&ctx);
        if cfg.output_format == OutputFormat::Table {
            let tag = match r.status {
                ClaimStatus::Pass => "PASS",
                ClaimStatus::Fail => "FAIL",
                ClaimStatus::Partial => "PARTIAL",
            };
            writeln!(out, "{tag:<8}{:<28}{}", r.id, r.title)?;
            if let Some(c) = &r.counterexample {
                writeln!(out, "        counterexample: {c}")?;
            }
        }
        results.push(r);
    }
    if cfg.output_format == OutputFormat::Json {
        json_line(out, &results)?
    }
    Ok(exit_code(&results))
}

fn cmd_export(sig: &Signature, cfg: &RunConfig, out: Out) -> Result<i32, Failure> {
    let g = slide_graph_dot(sig, cfg)?;
    match cfg.output_format {
        OutputFormat::Json => json_line(out, &g.export(sig.n()))?,
        _ => write!(out, "{}", g.to_dot(&format!("E{sig}")))?,
    }
    Ok(EXIT_OK)
}
