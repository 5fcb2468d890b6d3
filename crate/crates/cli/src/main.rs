use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fracdef::anneal::{anneal, seeded_anneal_with_baseline, AnnealConfig};
use fracdef::audit::{audit, AuditOptions, Conjecture, Verdict};
use fracdef::coloring::{evaluate, read_coloring, write_coloring, FractionalColoring};
use fracdef::exact::{min_defect_2, min_defect_monochromatic, min_total_defect, ExactOptions, ExactResult};
use fracdef::families::{self, CompositionConstruction, FamilyAnswer, Measure};
use fracdef::graph::{write_graph, Graph};

mod config;
mod report;
mod target;

use report::{Format, RunReport};

#[derive(Parser, Debug)]
#[command(name = "fracdef", version, about = "Minimum fractional-defect colorings of graphs")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Number of colors.
    #[arg(long, global = true, default_value_t = 2)]
    k: usize,
    /// Seed for randomized search.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the witness coloring (or the graph, for `gen`) to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Edge cap of the orientation enumeration.
    #[arg(long, global = true)]
    cap_edges: Option<usize>,
    /// Cap on monochromatic colorings examined.
    #[arg(long, global = true)]
    cap_colorings: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a coloring file against a graph file.
    Eval { graph: PathBuf, coloring: PathBuf },
    /// Solve exactly: D(G,2) by default, TD(G,k) with --td, the
    /// monochromatic optimum with --mono.
    Exact {
        /// Edge-list file or family spec, e.g. `rooks 3 3`.
        #[arg(required = true, num_args = 1..)]
        target: Vec<String>,
        #[arg(long, conflicts_with = "mono")]
        td: bool,
        #[arg(long)]
        mono: bool,
        /// Prune orientations by the degree bound (default).
        #[arg(long, overrides_with = "no_prune")]
        prune: bool,
        #[arg(long)]
        no_prune: bool,
    },
    /// Simulated annealing with exact certification of the result.
    Anneal {
        #[arg(required = true, num_args = 1..)]
        target: Vec<String>,
        #[command(flatten)]
        anneal: AnnealFlags,
        /// Warm-start coloring file; the result is never worse than it.
        #[arg(long)]
        baseline: Option<PathBuf>,
    },
    /// Closed-form answer for a known family, e.g. `family wheel 4`.
    Family {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        /// Construction for `cycle-blowup`.
        #[arg(long, value_enum, default_value_t = BlowupConstruction::Replicated)]
        construction: BlowupConstruction,
    },
    /// Check a conjecture (conj1, conj2, conj3a, conj3b, conj4) on a small corpus.
    Audit {
        conjecture: String,
        /// Corpus size limit.
        #[arg(long, default_value_t = 6)]
        max: usize,
        /// Instances with more edges get brackets instead of exact values.
        #[arg(long, default_value_t = 18)]
        exact_edges: usize,
        #[command(flatten)]
        anneal: AnnealFlags,
    },
    /// Write a family graph in the edge-list format.
    Gen {
        #[arg(required = true, num_args = 1..)]
        target: Vec<String>,
    },
}

#[derive(Args, Debug, Clone, Default)]
struct AnnealFlags {
    /// key=value file with annealing settings; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    iterations: Option<u64>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    temperature: Option<f64>,
    #[arg(long)]
    cooling_rate: Option<f64>,
    #[arg(long)]
    move_scale: Option<f64>,
    /// Largest denominator used when snapping.
    #[arg(long)]
    snap_denominator: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BlowupConstruction {
    Replicated,
    Split,
}

impl Common {
    fn exact_options(&self) -> ExactOptions {
        let mut o = ExactOptions::default();
        if let Some(c) = self.cap_edges {
            o.edge_cap = c;
        }
        if let Some(c) = self.cap_colorings {
            o.coloring_cap = c;
        }
        o
    }
}

impl AnnealFlags {
    fn config(&self, common: &Common, base: AnnealConfig) -> Result<AnnealConfig> {
        let mut cfg = base;
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            config::apply(&mut cfg, &text).with_context(|| format!("in {}", path.display()))?;
        }
        cfg.k = common.k;
        if let Some(s) = common.seed {
            cfg.seed = s;
        }
        macro_rules! set {
            ($($field:ident => $flag:ident),*) => {
                $(if let Some(v) = self.$flag { cfg.$field = v; })*
            };
        }
        set!(iterations => iterations, restarts => restarts, initial_temperature => temperature,
             cooling_rate => cooling_rate, move_scale => move_scale, snap_max_denominator => snap_denominator);
        cfg.validate()?;
        Ok(cfg)
    }
}

fn attach_witness(report: &mut RunReport, common: &Common, witness: FractionalColoring) -> Result<()> {
    if let Some(path) = &common.out {
        std::fs::write(path, write_coloring(&witness)).with_context(|| format!("writing {}", path.display()))?;
        report.witness_path = Some(path.display().to_string());
    }
    report.witness = Some(witness);
    Ok(())
}

fn stats_counters(report: &mut RunReport, r: &ExactResult) {
    report.counter("orientations", r.stats.orientations_enumerated);
    report.counter("orientations_pruned", r.stats.orientations_pruned);
    report.counter("lps_solved", r.stats.lp_solved);
    report.counter("colorings_checked", r.stats.colorings_checked);
}

fn cmd_eval(common: &Common, graph: &Path, coloring: &Path, report: &mut RunReport) -> Result<()> {
    let g = target::resolve(&[graph.display().to_string()])?;
    let text = std::fs::read_to_string(coloring).with_context(|| format!("reading {}", coloring.display()))?;
    let c = read_coloring(&text, Some(common.k)).with_context(|| format!("parsing coloring {}", coloring.display()))?;
    if c.order() != g.order() {
        bail!("coloring {} has {} rows but the graph has {} vertices", coloring.display(), c.order(), g.order());
    }
    let r = evaluate(&g, &c)?;
    report.graph = Some(g.summary());
    report.value("max_defect", &r.max_defect);
    report.value("total_defect", &r.total_defect);
    let per_vertex: Vec<String> = r.per_vertex.iter().map(ToString::to_string).collect();
    report.value("vertex_defects", per_vertex.join(" "));
    Ok(())
}

fn cmd_exact(common: &Common, g: &Graph, td: bool, mono: bool, prune: bool, report: &mut RunReport) -> Result<()> {
    let opts = ExactOptions { prune, ..common.exact_options() };
    report.graph = Some(g.summary());
    let (key, r, measure) = if td {
        ("TD", min_total_defect(g, common.k, &opts)?, Measure::TotalDefect)
    } else if mono {
        ("D_mono", min_defect_monochromatic(g, common.k, &opts)?, Measure::MaxDefect)
    } else {
        if common.k != 2 {
            bail!("the fractional exact solver handles k = 2 only; use --mono, --td or anneal for k = {}", common.k);
        }
        ("D", min_defect_2(g, &opts)?, Measure::MaxDefect)
    };
    let check = evaluate(g, &r.witness)?;
    let found = if measure == Measure::TotalDefect { check.total_defect } else { check.max_defect };
    report.certified = found == r.value;
    report.value(key, &r.value);
    stats_counters(report, &r);
    attach_witness(report, common, r.witness)
}

fn cmd_anneal(
    common: &Common,
    g: &Graph,
    flags: &AnnealFlags,
    baseline: Option<&PathBuf>,
    report: &mut RunReport,
) -> Result<()> {
    let cfg = flags.config(common, AnnealConfig::default())?;
    report.graph = Some(g.summary());
    let result = match baseline {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let b = read_coloring(&text, Some(cfg.k)).with_context(|| format!("parsing {}", path.display()))?;
            seeded_anneal_with_baseline(g, &cfg, &b)?
        }
        None => anneal(g, &cfg)?,
    };
    eprintln!("best float objective {:.6}", result.best_float_defect);
    report.certified = evaluate(g, &result.snapped_coloring)?.max_defect == result.certified_defect;
    report.value("max_defect", &result.certified_defect);
    for t in &result.trace {
        report.value(format!("restart_{}", t.restart), &t.certified_defect);
    }
    if baseline.is_some() {
        report.value("from_baseline", result.from_baseline);
    }
    report.counter("iterations", cfg.iterations);
    report.counter("restarts", cfg.restarts as u64);
    report.counter("snap_max_denominator", cfg.snap_max_denominator);
    report.seed = Some(cfg.seed);
    attach_witness(report, common, result.snapped_coloring)
}

fn family_answer(common: &Common, spec: &[String], how: BlowupConstruction) -> Result<FamilyAnswer> {
    let Some((head, rest)) = spec.split_first() else {
        bail!("missing family");
    };
    let nums: Vec<usize> = rest
        .iter()
        .map(|a| a.parse::<usize>().with_context(|| format!("{head}: parameter {a:?} is not a nonnegative integer")))
        .collect::<Result<_>>()?;
    let arity = |n: usize| -> Result<()> {
        if nums.len() != n {
            bail!("{head} takes {n} parameter(s), got {}", nums.len());
        }
        Ok(())
    };
    let answer = match head.as_str() {
        "complete" => {
            arity(1)?;
            families::formula_complete(nums[0], common.k)?
        }
        "complete-total" => {
            arity(1)?;
            families::formula_total_complete(nums[0], common.k)?
        }
        "fan" => {
            arity(1)?;
            families::formula_fan(nums[0])?
        }
        "wheel" => {
            arity(1)?;
            families::formula_wheel(nums[0])?
        }
        "multipartite" => {
            arity(2)?;
            families::formula_multipartite_equal(nums[0], nums[1])?
        }
        "tripartite" => {
            arity(3)?;
            families::formula_tripartite(nums[0], nums[1], nums[2])?
        }
        "cycle-blowup" => {
            arity(1)?;
            let how = match how {
                BlowupConstruction::Replicated => CompositionConstruction::Replicated,
                BlowupConstruction::Split => CompositionConstruction::SplitPairs,
            };
            families::formula_odd_cycle_composition(nums[0], how)?
        }
        "rooks" => {
            arity(2)?;
            families::rooks_bound(nums[0], nums[1])?
        }
        other => bail!(
            "unknown family {other:?}; expected complete, complete-total, fan, wheel, multipartite, tripartite, \
             cycle-blowup or rooks"
        ),
    };
    if answer.k != common.k && !matches!(head.as_str(), "complete" | "complete-total") {
        bail!("{head} is a 2-color result; drop --k {}", common.k);
    }
    Ok(answer)
}

fn cmd_family(common: &Common, spec: &[String], how: BlowupConstruction, report: &mut RunReport) -> Result<()> {
    let a = family_answer(common, spec, how)?;
    report.graph = Some(a.graph.summary());
    let key = match a.measure {
        Measure::MaxDefect => "D",
        Measure::TotalDefect => "TD",
    };
    let bound = if a.status == families::Status::UpperBoundOnly { "<= " } else { "" };
    report.value(key, format!("{bound}{} ({})", a.value, a.citation));
    report.value("status", a.status);
    if a.family == "rooks" {
        let (m, n) = (a.params[0], a.params[1]);
        report.value("lower_bound", families::rooks_lower_bound(m, n)?);
        if m.min(n) == 3 && m.max(n) >= 5 && m.max(n) % 2 == 1 {
            report.value("claimed_bound", families::rooks_three_odd_bound(m.max(n))?);
        }
    }
    report.certified = a.certify()?;
    attach_witness(report, common, a.construction)
}

fn cmd_audit(
    common: &Common,
    conjecture: &str,
    max: usize,
    exact_edges: usize,
    flags: &AnnealFlags,
    report: &mut RunReport,
) -> Result<()> {
    let conj: Conjecture = conjecture.parse()?;
    let defaults = AuditOptions::default();
    let anneal = flags.config(&Common { k: 2, ..common.clone() }, defaults.anneal.clone())?;
    let opts = AuditOptions { max, exact_edge_limit: exact_edges, exact: common.exact_options(), anneal, ..defaults };
    let r = audit(conj, &opts)?;
    report.value("conjecture", format!("{}: {}", conj.id(), conj.statement()));
    for v in [Verdict::Consistent, Verdict::Violated, Verdict::Inconclusive, Verdict::Excluded] {
        report.counter(v.to_string(), r.count(v) as u64);
    }
    report.seed = Some(opts.anneal.seed);
    report.table.push(["instance", "k", "D", "target", "verdict", "note"].map(String::from).to_vec());
    for row in r.rows {
        let d = row.bracket.to_string();
        report.table.push(vec![row.instance, row.k.to_string(), d, row.target.to_string(), row.verdict.to_string(), row.note]);
    }
    Ok(())
}

fn cmd_gen(common: &Common, g: &Graph, report: &mut RunReport) -> Result<Option<String>> {
    let text = write_graph(g);
    match &common.out {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            report.graph = Some(g.summary());
            report.value("graph_file", path.display());
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("FRACDEF_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().with_context(|| format!("FRACDEF_THREADS={raw:?} is not a count"))?;
    if n == 0 {
        bail!("FRACDEF_THREADS must be at least 1");
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the thread pool")?;
    Ok(())
}

fn run(cli: Cli) -> Result<RunReport> {
    configure_threads()?;
    let command: Vec<String> = std::env::args().skip(1).collect();
    let mut report = RunReport::new(command.join(" "));
    let common = &cli.common;
    match &cli.command {
        Command::Eval { graph, coloring } => cmd_eval(common, graph, coloring, &mut report)?,
        Command::Exact { target, td, mono, prune: _, no_prune } => {
            let g = target::resolve(target)?;
            cmd_exact(common, &g, *td, *mono, !no_prune, &mut report)?;
        }
        Command::Anneal { target, anneal, baseline } => {
            let g = target::resolve(target)?;
            cmd_anneal(common, &g, anneal, baseline.as_ref(), &mut report)?;
        }
        Command::Family { spec, construction } => cmd_family(common, spec, *construction, &mut report)?,
        Command::Audit { conjecture, max, exact_edges, anneal } => {
            cmd_audit(common, conjecture, *max, *exact_edges, anneal, &mut report)?
        }
        Command::Gen { target } => {
            let g = target::resolve(target)?;
            if let Some(text) = cmd_gen(common, &g, &mut report)? {
                print!("{text}");
                return Ok(RunReport::new(String::new()));
            }
        }
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.common.format;
    let quiet = matches!(cli.command, Command::Gen { .. }) && cli.common.out.is_none();
    let start = Instant::now();
    match run(cli) {
        Ok(report) => {
            if !quiet {
                print!("{}", report.render(format));
            }
            eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
            if report.certified {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: certification failed");
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
