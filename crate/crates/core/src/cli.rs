//! Command-line front end. Every subcommand resolves its configuration,
//! logs it, runs one library call and writes its artifacts atomically.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::census::brute::brute_force_surfaces;
use crate::census::orbit::orbit_stabilizer_check;
use crate::census::sample::sampled_vertex_statistics;
use crate::census::{census_table, CensusTable};
use crate::complex::{complex_to_doc, parse_complex, Complex2};
use crate::cycles::{
    enumerate_minimal_cycles, filling_area, min_weight_cycle, wiener_fill_index, SearchBudget,
};
use crate::dense::{find_suspension_cycle, short_graph_cycle, shortest_cycle, GraphDoc, SimpleGraph};
use crate::error::{Error, Result};
use crate::gluing::story::{run_story, GluingStory};
use crate::gluing::verify::{exhaustive_verify, sampled_verify, StorySource, EXHAUSTIVE_MAX_F};
use crate::gluing::PotentialParams;
use crate::random_model::{construct_large_girth, fill_instance, sample_y, FillRow, ModelParams};

pub const TOOL: &str = "twogirth";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CSV_SCHEMA: u32 = 1;
/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "TWOGIRTH_THREADS";

#[derive(Parser, Serialize, Debug, Clone)]
#[command(name = "twogirth", version, about = "2-girth, fillings, random complexes and surface census over Z/2")]
pub struct RunConfig {
    /// Worker threads; defaults to $TWOGIRTH_THREADS, then to all cores.
    /// Results do not depend on it.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Serialize, Debug, Clone)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Sample Y(n, p) and write it as complex JSON.
    Gen(GenArgs),
    /// Print the 2-girth of a complex.
    Girth(GirthArgs),
    /// List inclusion-minimal 2-cycles.
    MinimalCycles(MinimalCyclesArgs),
    /// Minimum filling of the boundary of a triangle.
    Fill(FillArgs),
    /// Sum of squared filling areas over all vertex triples.
    Wiener(InputArgs),
    /// Run the large-girth construction on a random complex.
    Construct(ConstructArgs),
    /// Find a suspension 2-cycle through a pair of vertices.
    DenseCycle(InputArgs),
    /// Shortest cycle of a graph, or the short-cycle bound check.
    GraphGirth(GraphGirthArgs),
    /// Census of small triangulated surfaces as CSV.
    Census(CensusArgs),
    /// Orbit and stabilizer of a gluing story.
    OrbitCheck(StoryArgs),
    /// Vertex-count histogram of random gluing stories.
    SampleStories(SampleArgs),
    /// Check the potential-function properties.
    VerifyPotential(VerifyArgs),
    /// Seeded batches with one CSV row per seed.
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct OutArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct BudgetArgs {
    /// Node limit for exact searches.
    #[arg(long, default_value_t = SearchBudget::default().max_nodes)]
    pub max_nodes: u64,
    /// Largest cycle-space dimension swept exhaustively before falling
    /// back to branch-and-bound.
    #[arg(long, default_value_t = SearchBudget::default().exhaustive_dim)]
    pub exhaustive_dim: usize,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_nodes: self.max_nodes,
            exhaustive_dim: self.exhaustive_dim,
        }
    }
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    /// Sets p = n^(alpha - 1) unless --p is given.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct InputArgs {
    /// Complex JSON file.
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct GirthArgs {
    #[command(flatten)]
    pub common: InputArgs,
    /// Emit a JSON envelope with a minimum cycle instead of a bare number.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct MinimalCyclesArgs {
    #[command(flatten)]
    pub common: InputArgs,
    #[arg(long)]
    pub max_faces: Option<usize>,
    #[arg(long)]
    pub max_vertices: Option<usize>,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct FillArgs {
    #[command(flatten)]
    pub common: InputArgs,
    /// Triangle whose boundary is filled, as "a,b,c".
    #[arg(long, default_value = "0,1,2")]
    pub triangle: String,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct ConstructArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub eps: f64,
    #[arg(long)]
    pub seed: u64,
    /// Where to write the resulting complex.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Where to write the construction report.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct GraphGirthArgs {
    /// Graph JSON: {"n": .., "edges": [[a, b], ..]}.
    #[arg(long)]
    pub input: PathBuf,
    /// With --n-bound, require at least n^(1 + beta) edges and a cycle of
    /// length at most 2 ceil(1 / beta).
    #[arg(long, requires = "n_bound")]
    pub beta: Option<f64>,
    #[arg(long)]
    pub n_bound: Option<usize>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CensusMode {
    /// Unpruned up to f = 4, pruned beyond.
    Auto,
    Exhaustive,
    Pruned,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct CensusArgs {
    #[arg(long)]
    pub f_max: usize,
    #[arg(long, value_enum, default_value_t = CensusMode::Auto)]
    pub mode: CensusMode,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct StoryArgs {
    /// Story JSON: {"f": .., "moves": [{"a": [t, s], "b": [t, s], "flip": ..}]}.
    #[arg(long)]
    pub story: PathBuf,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct SampleArgs {
    #[arg(long)]
    pub f: usize,
    #[arg(long)]
    pub samples: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.5)]
    pub delta: f64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum SourceArg {
    /// Uniformly random stories.
    Uniform,
    /// Random stories ending in a triangulated surface.
    Surfaces,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct VerifyArgs {
    /// Triangle count; every order is checked when f <= 4.
    #[arg(long, required_unless_present = "story")]
    pub f: Option<usize>,
    /// Comma-separated delta values.
    #[arg(long, default_value = "0.5,0.2", value_delimiter = ',')]
    pub delta: Vec<f64>,
    /// Sample this many stories instead of the exhaustive sweep.
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = SourceArg::Uniform)]
    pub source: SourceArg,
    /// Trace one story and write its trajectory as JSON lines.
    #[arg(long, conflicts_with_all = ["f", "samples"])]
    pub story: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Subcommand, Serialize, Debug, Clone)]
#[serde(tag = "experiment", rename_all = "kebab-case")]
pub enum Experiment {
    /// Filling area of the triangle 012 in Y(n, p) per seed and n.
    Fill(FillExperimentArgs),
    /// Large-girth construction statistics per seed.
    Construct(ConstructExperimentArgs),
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct FillExperimentArgs {
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    /// Seeds as "a..b" (inclusive) or "s1,s2,...".
    #[arg(long)]
    pub seeds: String,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Serialize, Debug, Clone)]
pub struct ConstructExperimentArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub eps: f64,
    #[arg(long)]
    pub seeds: String,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

/// Parses "a..b" (inclusive), "a..=b" or a comma-separated list.
pub fn parse_seeds(text: &str) -> Result<Vec<u64>> {
    let text = text.trim();
    let bad = || Error::InvalidParams(format!("cannot parse seeds {text:?}"));
    if text.is_empty() {
        return Ok(Vec::new());
    }
    if let Some((a, b)) = text.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        if b < a {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect()
}

fn parse_triangle(text: &str) -> Result<[usize; 3]> {
    let v: Vec<usize> = text
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidParams(format!("cannot parse triangle {text:?}")))?;
    <[usize; 3]>::try_from(v)
        .map_err(|_| Error::InvalidParams(format!("a triangle needs three vertices: {text:?}")))
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, bytes),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn read_complex(path: &Path) -> Result<Complex2> {
    parse_complex(&read_text(path)?)
}

/// `{"tool", "version", "config", "result"}`, pretty-printed.
pub fn envelope(config: &Value, result: impl Serialize) -> Result<Vec<u8>> {
    let doc = json!({
        "tool": TOOL,
        "version": VERSION,
        "config": config,
        "result": result,
    });
    let mut bytes = serde_json::to_vec_pretty(&doc)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// CSV with a leading comment line naming the tool, schema and config.
pub fn csv_bytes<I, R>(config: &Value, header: &[&str], rows: I) -> Result<Vec<u8>>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut buf = format!(
        "# {TOOL} {VERSION} schema={CSV_SCHEMA} config={}\n",
        serde_json::to_string(config)?
    )
    .into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
    }
    Ok(buf)
}

fn complex_json(x: &Complex2, config: &Value) -> Result<Vec<u8>> {
    let mut doc = complex_to_doc(x);
    doc.meta = Some(json!({ "tool": TOOL, "version": VERSION, "config": config }));
    let mut bytes = serde_json::to_vec(&doc)?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn faces_of(x: &Complex2, c: &crate::complex::Chain2) -> Vec<[usize; 3]> {
    x.chain_faces(c)
}

fn fill_row_fields(r: &FillRow) -> Vec<String> {
    vec![
        r.n.to_string(),
        r.seed.to_string(),
        r.alpha.to_string(),
        r.p.to_string(),
        r.faces.to_string(),
        r.area.map_or(String::new(), |a| a.to_string()),
        r.small_filling_sets.to_string(),
        r.small_filling.to_string(),
        r.status.clone(),
    ]
}

/// Runs one subcommand and writes its artifacts.
pub fn dispatch(config: &RunConfig) -> Result<()> {
    let cfg = serde_json::to_value(&config.command)?;
    log::info!("{TOOL} {VERSION} config {}", serde_json::to_string(&cfg)?);
    match &config.command {
        Command::Gen(a) => {
            let p = match (a.p, a.alpha) {
                (Some(p), _) => p,
                (None, Some(alpha)) => {
                    if !(alpha < 1.0) {
                        return Err(Error::InvalidParams(format!("alpha = {alpha} must be below 1")));
                    }
                    (a.n as f64).powf(alpha - 1.0)
                }
                (None, None) => {
                    return Err(Error::InvalidParams("give --p or --alpha".into()));
                }
            };
            let y = sample_y(a.n, p, a.seed)?;
            emit(&a.out.out, &complex_json(&y, &cfg)?)
        }
        Command::Girth(a) => {
            let x = read_complex(&a.common.input)?;
            let cycle = min_weight_cycle(&x, &a.common.budget.budget())?;
            if a.json {
                let result = json!({
                    "girth": cycle.as_ref().map(|c| c.weight()),
                    "cycle": cycle.as_ref().map(|c| faces_of(&x, c)),
                });
                emit(&a.common.out.out, &envelope(&cfg, result)?)
            } else {
                let text = cycle.map_or("none".to_string(), |c| c.weight().to_string());
                emit(&a.common.out.out, format!("{text}\n").as_bytes())
            }
        }
        Command::MinimalCycles(a) => {
            let x = read_complex(&a.common.input)?;
            let cycles =
                enumerate_minimal_cycles(&x, a.max_faces, a.max_vertices, &a.common.budget.budget())?;
            let list: Vec<Value> = cycles
                .iter()
                .map(|c| {
                    json!({
                        "f": c.f, "v": c.v, "e": c.e, "beta1": c.beta1,
                        "faces": c.faces(&x),
                    })
                })
                .collect();
            emit(&a.common.out.out, &envelope(&cfg, json!({ "count": list.len(), "cycles": list }))?)
        }
        Command::Fill(a) => {
            let x = read_complex(&a.common.input)?;
            let [i, j, k] = parse_triangle(&a.triangle)?;
            let tau = x.triangle_cycle(i, j, k)?;
            let r = filling_area(&x, &tau, &a.common.budget.budget())?;
            let result = json!({
                "triangle": [i, j, k],
                "area": r.area,
                "filler": r.filler.as_ref().map(|c| faces_of(&x, c)),
            });
            emit(&a.common.out.out, &envelope(&cfg, result)?)
        }
        Command::Wiener(a) => {
            let x = read_complex(&a.input)?;
            let w = wiener_fill_index(&x, &a.budget.budget())?;
            emit(&a.out.out, format!("{w}\n").as_bytes())
        }
        Command::Construct(a) => {
            let params = ModelParams::new(a.n, a.alpha, a.eps)?;
            let (z, report) = construct_large_girth(&params, a.seed, &a.budget.budget())?;
            match (&a.out, &a.report) {
                (None, None) => emit(
                    &None,
                    &envelope(
                        &cfg,
                        json!({ "params": params, "report": report, "complex": complex_to_doc(&z) }),
                    )?,
                ),
                (out, rep) => {
                    if let Some(p) = out {
                        write_atomic(p, &complex_json(&z, &cfg)?)?;
                    }
                    let rep_bytes = envelope(&cfg, json!({ "params": params, "report": report }))?;
                    match rep {
                        Some(p) => write_atomic(p, &rep_bytes),
                        None => emit(&None, &rep_bytes),
                    }
                }
            }
        }
        Command::DenseCycle(a) => {
            let x = read_complex(&a.input)?;
            let result = find_suspension_cycle(&x)?.map(|s| {
                json!({
                    "poles": [s.poles.0, s.poles.1],
                    "equator": s.equator,
                    "faces": s.faces(&x),
                    "size": s.chain.weight(),
                })
            });
            emit(&a.out.out, &envelope(&cfg, result)?)
        }
        Command::GraphGirth(a) => {
            let doc: GraphDoc = serde_json::from_str(&read_text(&a.input)?)
                .map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
            let g = SimpleGraph::from_doc(&doc)?;
            let cycle = match (a.beta, a.n_bound) {
                (Some(beta), Some(n)) => Some(short_graph_cycle(&g, beta, n)?),
                _ => shortest_cycle(&g),
            };
            let result = json!({ "girth": cycle.as_ref().map(Vec::len), "cycle": cycle });
            emit(&a.out.out, &envelope(&cfg, result)?)
        }
        Command::Census(a) => {
            let prune = match a.mode {
                CensusMode::Auto => a.f_max > 4,
                CensusMode::Exhaustive => false,
                CensusMode::Pruned => true,
            };
            let table = census_table(a.f_max, prune)?;
            emit(&a.out.out, &census_csv(&table, &cfg)?)
        }
        Command::OrbitCheck(a) => {
            let story = GluingStory::from_json(&read_text(&a.story)?)?;
            let report = orbit_stabilizer_check(&story)?;
            emit(&a.out.out, &envelope(&cfg, report)?)
        }
        Command::SampleStories(a) => {
            let params = PotentialParams::new(a.delta)?;
            let h = sampled_vertex_statistics(a.f, a.samples, a.seed, &params)?;
            let rows: Vec<Vec<String>> = h
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.w.to_string(),
                        r.count.to_string(),
                        r.surfaces.to_string(),
                        format!("{:.6}", r.frequency),
                    ]
                })
                .collect();
            log::info!(
                "mode w = {:?}, nearmoves failures {} (collapsed: {})",
                h.mode(),
                h.nearmoves_failures,
                h.nearmoves_failures_degenerate
            );
            emit(&a.out.out, &csv_bytes(&cfg, &["w", "count", "surfaces", "frequency"], rows)?)
        }
        Command::VerifyPotential(a) => verify_potential(a, &cfg),
        Command::Experiment(Experiment::Fill(a)) => {
            let seeds = parse_seeds(&a.seeds)?;
            let rows = run_fill_batch(&a.n_list, a.alpha, a.eps, &seeds, &a.budget.budget())?;
            let header = [
                "n", "seed", "alpha", "p", "faces", "area", "small_filling_sets", "small_filling",
                "status",
            ];
            emit(&a.out.out, &csv_bytes(&cfg, &header, rows.iter().map(fill_row_fields))?)
        }
        Command::Experiment(Experiment::Construct(a)) => {
            let seeds = parse_seeds(&a.seeds)?;
            let rows = run_construct_batch(a.n, a.alpha, a.eps, &seeds, &a.budget.budget())?;
            let header = [
                "seed",
                "status",
                "faces_before",
                "faces_after",
                "small_cycles_found",
                "faces_deleted",
                "deleted_fraction",
                "barely_dense_count",
                "barely_dense_expected",
                "m_vertices",
                "residual_girth_floor",
                "recheck_passed",
            ];
            emit(&a.out.out, &csv_bytes(&cfg, &header, rows)?)
        }
    }
}

fn census_csv(table: &CensusTable, cfg: &Value) -> Result<Vec<u8>> {
    let rows: Vec<Vec<String>> = table
        .rows()
        .into_iter()
        .map(|(f, w, c, m)| vec![f.to_string(), w.to_string(), c.to_string(), m])
        .collect();
    csv_bytes(cfg, &["f", "w", "count", "mode"], rows)
}

fn verify_potential(a: &VerifyArgs, cfg: &Value) -> Result<()> {
    if let Some(path) = &a.story {
        let story = GluingStory::from_json(&read_text(path)?)?;
        let mut buf = Vec::new();
        for &d in &a.delta {
            let t = run_story(&story, &PotentialParams::new(d)?)?;
            t.write_json_lines(&mut buf)?;
            let summary = json!({
                "summary": true, "delta": d, "closed": t.closed, "surface": t.surface,
                "v": t.v, "h": t.h, "n_near": t.n_near, "bound": t.nearmoves_bound(),
            });
            serde_json::to_writer(&mut buf, &summary)?;
            buf.push(b'\n');
        }
        return emit(&a.out.out, &buf);
    }
    let f = a.f.expect("clap requires --f without --story");
    match a.samples {
        None if f <= EXHAUSTIVE_MAX_F && a.source == SourceArg::Uniform => {
            let rep = exhaustive_verify(f, &a.delta)?;
            let ok = rep.all_hold();
            emit(&a.out.out, &envelope(cfg, &rep)?)?;
            if !ok {
                return Err(Error::PropertyViolation("see the report".into()));
            }
            Ok(())
        }
        None => Err(Error::InvalidParams(format!(
            "give --samples: exhaustive verification supports uniform stories with f <= {EXHAUSTIVE_MAX_F}"
        ))),
        Some(samples) => {
            let seed = a
                .seed
                .ok_or_else(|| Error::InvalidParams("--seed is required when sampling".into()))?;
            let source = match a.source {
                SourceArg::Uniform => StorySource::Uniform,
                SourceArg::Surfaces => StorySource::Surfaces(surfaces_with(f)?),
            };
            let rep = sampled_verify(f, samples, seed, &a.delta, &source)?;
            let ok = rep.all_hold();
            emit(&a.out.out, &envelope(cfg, &rep)?)?;
            if !ok {
                return Err(Error::PropertyViolation(
                    rep.first_violation.unwrap_or_else(|| "see the report".into()),
                ));
            }
            Ok(())
        }
    }
}

/// Labeled representatives of every surface with `f` faces on at most six
/// vertices; complete for `f <= 8`.
pub fn surfaces_with(f: usize) -> Result<Vec<Vec<[usize; 3]>>> {
    let all = brute_force_surfaces(6, f)?;
    let list: Vec<Vec<[usize; 3]>> = all
        .into_iter()
        .filter(|((ff, _), _)| *ff == f)
        .flat_map(|(_, reps)| reps)
        .collect();
    if list.is_empty() {
        return Err(Error::InvalidParams(format!("no surface with {f} faces on at most 6 vertices")));
    }
    Ok(list)
}

/// One row per (n, seed), sorted by n then seed. Failures are recorded in
/// the status column; the batch fails only when every row failed.
pub fn run_fill_batch(
    n_list: &[usize],
    alpha: f64,
    eps: f64,
    seeds: &[u64],
    budget: &SearchBudget,
) -> Result<Vec<FillRow>> {
    use rayon::prelude::*;
    if seeds.is_empty() {
        return Err(Error::EmptySeedList);
    }
    let mut params = Vec::new();
    for &n in n_list {
        params.push(ModelParams::new(n, alpha, eps)?);
    }
    let jobs: Vec<(ModelParams, u64)> = params
        .iter()
        .flat_map(|p| seeds.iter().map(move |&s| (*p, s)))
        .collect();
    let mut rows: Vec<FillRow> = jobs
        .par_iter()
        .map(|(p, s)| {
            fill_instance(p, *s, budget).unwrap_or_else(|e| FillRow {
                seed: *s,
                n: p.n,
                alpha: p.alpha,
                p: p.p,
                faces: 0,
                area: None,
                small_filling_sets: 0,
                small_filling: false,
                status: format!("error: {e}"),
            })
        })
        .collect();
    rows.sort_by_key(|r| (r.n, r.seed));
    if rows.iter().all(|r| r.status != "ok") {
        return Err(Error::AllSeedsFailed);
    }
    Ok(rows)
}

pub fn run_construct_batch(
    n: usize,
    alpha: f64,
    eps: f64,
    seeds: &[u64],
    budget: &SearchBudget,
) -> Result<Vec<Vec<String>>> {
    use rayon::prelude::*;
    if seeds.is_empty() {
        return Err(Error::EmptySeedList);
    }
    let params = ModelParams::new(n, alpha, eps)?;
    let mut rows: Vec<(u64, bool, Vec<String>)> = seeds
        .par_iter()
        .map(|&s| match construct_large_girth(&params, s, budget) {
            Ok((_, r)) => (
                s,
                true,
                vec![
                    s.to_string(),
                    "ok".into(),
                    r.faces_before.to_string(),
                    r.faces_after.to_string(),
                    r.small_cycles_found.to_string(),
                    r.faces_deleted.to_string(),
                    format!("{:.6}", r.faces_deleted as f64 / r.faces_before.max(1) as f64),
                    r.barely_dense_count.to_string(),
                    format!("{:.6}", r.barely_dense_expected),
                    r.m_vertices.to_string(),
                    r.residual_girth_floor.to_string(),
                    r.recheck_passed.to_string(),
                ],
            ),
            Err(e) => {
                let mut row = vec![String::new(); 12];
                row[0] = s.to_string();
                row[1] = format!("error: {e}");
                (s, false, row)
            }
        })
        .collect();
    rows.sort_by_key(|r| r.0);
    if rows.iter().all(|r| !r.1) {
        return Err(Error::AllSeedsFailed);
    }
    Ok(rows.into_iter().map(|r| r.2).collect())
}

fn init_threads(requested: Option<usize>) {
    let n = requested.or_else(|| std::env::var(THREADS_ENV).ok()?.parse().ok());
    if let Some(n) = n.filter(|&n| n > 0) {
        // Fails only if a pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Exit status for an error: 2 for bad input, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_invalid_input() {
        2
    } else {
        1
    }
}

/// Parses arguments, runs, and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .try_init();
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    init_threads(config.threads);
    match dispatch(&config) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
