//! Argument parsing and command dispatch.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use petgraph::dot::Dot;
use petgraph::graph::DiGraph;
use reebseq::pl::{fiber_components, level_set, Provenance};
use reebseq::reeb::SignedWord;
use reebseq::spectral::{assemble_homology, spectral_homology, two_column_report};
use reebseq::{
    betti_groups, build_e1, compute_e2, pi1_generators, reduce_word, reeb_betti, Coefficients, Instance, LeveledComplex, ReebGraph,
    SectionPipeline,
};
use thiserror::Error;

use crate::files::{coefficients_label, load_e1, load_instance, parse_coefficients, parse_rational, AbstractE1File, InputError, LoadedInstance};
use crate::report::*;

#[derive(Debug, Parser)]
#[command(name = "reebseq", version, about = "Homology and Reeb graphs of piecewise-linear functions on simplicial complexes")]
pub struct Cli {
    /// Print the result as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Second page of the critical spectral sequence.
    Ss,
    /// Simplicial homology of the whole complex.
    Direct,
}

#[derive(Debug, Args)]
pub struct CoeffArg {
    /// Coefficients: z, q or zp:<prime>.
    #[arg(long, default_value = "z", value_parser = parse_coefficients)]
    pub coeff: Coefficients,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that an instance file describes a valid complex with values.
    Validate { instance: PathBuf },
    /// List the distinct vertex values in increasing order.
    CriticalValues { instance: PathBuf },
    /// Extract the level set at a value.
    Levelset {
        instance: PathBuf,
        /// Level as an integer or p/q.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// Also report the homology of the level set.
        #[arg(long)]
        homology: bool,
        #[command(flatten)]
        coeff: CoeffArg,
    },
    /// Build the Reeb graph.
    ReebGraph {
        instance: PathBuf,
        /// Write the graph in DOT format to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Also list free generators of the fundamental group.
        #[arg(long)]
        generators: bool,
        /// Base vertex for the generators.
        #[arg(long, default_value_t = 0)]
        base: usize,
    },
    /// Compute the first page.
    E1 {
        instance: PathBuf,
        /// Write the page as an abstract page file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        coeff: CoeffArg,
    },
    /// Compute the second page and the assembled homology.
    E2 {
        #[arg(required_unless_present = "from_e1", conflicts_with = "from_e1")]
        instance: Option<PathBuf>,
        /// Read the first page from an abstract page file.
        #[arg(long)]
        from_e1: Option<PathBuf>,
        #[command(flatten)]
        coeff: CoeffArg,
    },
    /// Homology of the complex.
    Homology {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "ss")]
        method: Method,
        #[command(flatten)]
        coeff: CoeffArg,
    },
    /// Check endpoint isomorphisms and, optionally, the two-column comparison.
    Verify {
        instance: PathBuf,
        #[arg(long)]
        two_columns: bool,
        #[command(flatten)]
        coeff: CoeffArg,
    },
    /// Operations on words in the Reeb graph.
    Words {
        #[command(subcommand)]
        action: WordsCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum WordsCommand {
    /// Reduce a word such as "0+ 3- 3+ 1+" (edge index and direction).
    Reduce {
        instance: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Start vertex; defaults to the start of the first letter.
        #[arg(long)]
        base: Option<usize>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("{0}")]
    Compute(#[from] reebseq::Error),
    #[error("cannot write {path}: {source}")]
    Output { path: String, source: std::io::Error },
}

impl CliError {
    /// 1 for failed checks and reports that cannot be completed, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        use reebseq::Error as E;
        match self {
            CliError::Compute(E::NotReeb { .. } | E::SolveFailure { .. } | E::ReportMismatch(_) | E::UndeterminedExtension { .. }) => 1,
            _ => 2,
        }
    }
}

/// A finished command: its report and the process exit code.
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

fn loaded(path: &Path) -> Result<LoadedInstance, CliError> {
    Ok(load_instance(path)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Output { path: path.display().to_string(), source })
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let report = match &cli.command {
        Command::Validate { instance } => {
            let c = &loaded(instance)?.instance.complex;
            let top = c.dim().map_or(0, |d| d + 1);
            Report::Validate(ValidateReport { vertices: c.count(0), dimension: c.dim(), f_vector: (0..top).map(|q| c.count(q)).collect() })
        }
        Command::CriticalValues { instance } => {
            let inst = loaded(instance)?.instance;
            Report::CriticalValues(CriticalValuesReport { values: inst.critical_values().values().iter().map(ToString::to_string).collect() })
        }
        Command::Levelset { instance, at, homology, coeff } => Report::Levelset(levelset(&loaded(instance)?, at, *homology, coeff.coeff)?),
        Command::ReebGraph { instance, dot, generators, base } => {
            let inst = loaded(instance)?.instance;
            let g = reebseq::build_reeb_graph(&inst)?;
            if let Some(path) = dot {
                write_file(path, &to_dot(&g))?;
            }
            Report::ReebGraph(reeb_report(&g, generators.then_some(*base))?)
        }
        Command::E1 { instance, out, coeff } => {
            let page = build_e1(&SectionPipeline::new(&loaded(instance)?.instance, coeff.coeff)?)?;
            let file = AbstractE1File::from_page(&page);
            if let Some(path) = out {
                write_file(path, &(serde_json::to_string_pretty(&file).expect("page serializes") + "\n"))?;
            }
            Report::E1(file)
        }
        Command::E2 { instance, from_e1, coeff } => {
            let page = match (instance, from_e1) {
                (_, Some(path)) => load_e1(path)?,
                (Some(path), None) => build_e1(&SectionPipeline::new(&loaded(path)?.instance, coeff.coeff)?)?,
                (None, None) => return Err(CliError::Argument("an instance or --from-e1 is required".into())),
            };
            let e2 = compute_e2(&page)?;
            let h = assemble_homology(&e2)?;
            Report::E2(E2Report::new(coefficients_label(page.ring), &e2, &h))
        }
        Command::Homology { instance, method, coeff } => {
            let inst = loaded(instance)?.instance;
            let (name, groups) = match method {
                Method::Ss => ("ss", spectral_homology(&SectionPipeline::new(&inst, coeff.coeff)?)?.2.groups()),
                Method::Direct => ("direct", direct_homology(&inst, coeff.coeff)?),
            };
            Report::Homology(HomologyReport { method: name.into(), coefficients: coefficients_label(coeff.coeff), groups: GroupReport::list(&groups) })
        }
        Command::Verify { instance, two_columns, coeff } => {
            let inst = loaded(instance)?.instance;
            let p = SectionPipeline::new(&inst, coeff.coeff)?;
            let endpoint_isomorphisms = match p.check_reeb() {
                Ok(()) => true,
                Err(reebseq::Error::NotReeb { .. } | reebseq::Error::SolveFailure { .. }) => false,
                Err(e) => return Err(e.into()),
            };
            let two_columns = if *two_columns && endpoint_isomorphisms { Some(two_column_report(&p)?) } else { None };
            let report = VerifyReport { endpoint_isomorphisms, two_columns };
            let exit_code = if report.passed() { 0 } else { 1 };
            return Ok(Outcome { report: Report::Verify(report), exit_code });
        }
        Command::Words { action: WordsCommand::Reduce { instance, word, base } } => {
            let g = reebseq::build_reeb_graph(&loaded(instance)?.instance)?;
            Report::Reduce(reduce(&g, word, *base)?)
        }
    };
    Ok(Outcome { report, exit_code: 0 })
}

/// Homology of the whole complex in degrees `0..=dim`.
pub fn direct_homology(inst: &Instance, ring: Coefficients) -> Result<Vec<reebseq::AbelianGroup>, CliError> {
    let top = inst.complex.dim().ok_or(reebseq::Error::EmptyInstance)?;
    Ok(betti_groups(&inst.complex, top, ring))
}

fn levelset(loaded: &LoadedInstance, at: &str, with_homology: bool, ring: Coefficients) -> Result<LevelSetReport, CliError> {
    let level = parse_rational(at).map_err(CliError::Argument)?;
    let (ambient, fiber) = level_set(&LeveledComplex::from(&loaded.instance), &level);
    let id = |v: usize| loaded.ids[v].to_string();
    let vertices = fiber
        .fiber
        .vertex_map
        .iter()
        .map(|&v| match &ambient.provenance[v] {
            Provenance::Original(o) => FiberVertex::Vertex(id(*o)),
            Provenance::Crossing { edge: (a, b), .. } => FiberVertex::Crossing(id(*a), id(*b)),
        })
        .collect();
    let c = fiber.complex();
    let top = c.dim().map_or(0, |d| d + 1);
    let homology = with_homology.then(|| GroupReport::list(&betti_groups(c, c.dim().unwrap_or(0), ring)));
    Ok(LevelSetReport {
        level: level.to_string(),
        vertices,
        f_vector: (0..top).map(|q| c.count(q)).collect(),
        components: fiber_components(&fiber).count(),
        homology,
    })
}

fn vertex_label(g: &ReebGraph, v: usize) -> String {
    format!("c{}#{}", g.vertices[v].level_index, g.vertices[v].component)
}

fn edge_label(g: &ReebGraph, e: usize) -> String {
    format!("g{}#{}", g.edges[e].gap, g.edges[e].component)
}

/// DOT text with vertices labeled `c{level}#{component}` and edges `g{gap}#{component}`.
pub fn to_dot(g: &ReebGraph) -> String {
    let mut graph = DiGraph::<String, String>::new();
    let nodes: Vec<_> = (0..g.vertices.len()).map(|v| graph.add_node(vertex_label(g, v))).collect();
    for (k, e) in g.edges.iter().enumerate() {
        graph.add_edge(nodes[e.source], nodes[e.target], edge_label(g, k));
    }
    format!("{}", Dot::new(&graph))
}

fn reeb_report(g: &ReebGraph, base: Option<usize>) -> Result<ReebGraphReport, CliError> {
    let (components, cycle_rank) = reeb_betti(g);
    let generators = match base {
        None => None,
        Some(base) => {
            let words = pi1_generators(g, base)?
                .into_iter()
                .map(|w| WordReport { run_length: w.run_length(), word: w.to_string() })
                .collect();
            Some(GeneratorsReport { base, words })
        }
    };
    Ok(ReebGraphReport {
        vertices: (0..g.vertices.len())
            .map(|v| ReebVertexReport { id: v, label: vertex_label(g, v), level: g.vertices[v].level.to_string() })
            .collect(),
        edges: (0..g.edges.len())
            .map(|k| ReebEdgeReport { id: k, label: edge_label(g, k), source: g.edges[k].source, target: g.edges[k].target })
            .collect(),
        components,
        cycle_rank,
        generators,
    })
}

fn reduce(g: &ReebGraph, text: &str, base: Option<usize>) -> Result<ReduceReport, CliError> {
    let probe = SignedWord::parse(0, text).map_err(CliError::Argument)?;
    let base = match (base, probe.letters.first()) {
        (Some(b), _) => b,
        (None, Some(first)) => {
            let e = g.edges.get(first.edge).ok_or(reebseq::Error::UnknownEdge(first.edge))?;
            if first.sign == reebseq::reeb::Sign::Plus {
                e.source
            } else {
                e.target
            }
        }
        (None, None) => 0,
    };
    let word = SignedWord { base, letters: probe.letters };
    let end = g.word_end(&word)?;
    let reduced = reduce_word(g, &word)?;
    Ok(ReduceReport { input: word.to_string(), reduced: reduced.word.to_string(), run_length: reduced.run_length, end })
}
