//! The `permuto-decomp` command line.
//!
//! Exit codes: 0 when every check passes, 1 on a verification failure, 2 on
//! an input error.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bigraph::{BipartiteGraph, Tree};
use crate::decomp::{
    count_brute, count_via_cells, count_via_draconian, decompose, ehrhart_terms, verify_chain, ChainReport,
};
use crate::error::{Error, Result};
use crate::io::{self, CellsFile, DecompositionReport, HeightsFile};
use crate::lattice::WeightVector;
use crate::render::render_svg;
use crate::subdivision::{
    generate_regular_with_limit, random_heights_with_limit, validate, HeightFunction, SizeLimit, Subdivision,
    ValidationReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Count,
    Decompose,
    Subdivide,
    Draconian,
    Verify,
    Render,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Method {
    Cells,
    Draconian,
    Brute,
    #[default]
    All,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "permuto-decomp", version, about = "Semi-polytope decompositions of generalized permutohedra")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Graph JSON: {"m":..,"n":..,"edges":[[i,j],..]}
    #[arg(long)]
    pub graph: PathBuf,
    /// Comma-separated positive weights y_1,..,y_m.
    #[arg(long, value_delimiter = ',')]
    pub y: Option<Vec<i64>>,
    /// Height seed(s); `verify` accepts several.
    #[arg(long, value_delimiter = ',')]
    pub seed: Vec<u64>,
    /// Heights JSON: {"heights":[{"edge":[i,j],"h":..},..]}
    #[arg(long)]
    pub heights: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Method::All)]
    pub method: Method,
    /// Subdivision JSON used instead of generating one.
    #[arg(long)]
    pub cells_file: Option<PathBuf>,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// How a subdivision is obtained.
#[derive(Debug, Clone)]
pub enum CellSource {
    Seed(u64),
    Heights(HeightFunction),
    Cells(Vec<Tree>),
}

impl CellSource {
    fn label(&self) -> String {
        match self {
            CellSource::Seed(s) => format!("seed {s}"),
            CellSource::Heights(_) => "heights file".into(),
            CellSource::Cells(_) => "cells file".into(),
        }
    }

    pub fn subdivision(&self, g: &BipartiteGraph, y: &WeightVector, limit: &SizeLimit) -> Result<Subdivision> {
        match self {
            CellSource::Seed(seed) => {
                let h = random_heights_with_limit(g, *seed, limit)?;
                generate_regular_with_limit(g, y, &h, limit)
            }
            CellSource::Heights(h) => generate_regular_with_limit(g, y, h, limit),
            CellSource::Cells(cells) => Subdivision::from_cells(g, y, cells.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_count")]
    pub cells: Option<BigUint>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_count")]
    pub draconian: Option<BigUint>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_count")]
    pub brute: Option<BigUint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equal: Option<bool>,
}

mod opt_count {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(c) => crate::serde_count::serialize(c, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "crate::serde_count")] BigUint);
        Ok(Some(Wrap::deserialize(d)?.0))
    }
}

pub fn cmd_count(
    g: &BipartiteGraph,
    y: &WeightVector,
    method: Method,
    source: Option<&CellSource>,
    limit: &SizeLimit,
) -> Result<CountReport> {
    let wants = |m: Method| method == m || method == Method::All;
    let cells = if wants(Method::Cells) {
        let source =
            source.ok_or_else(|| Error::Usage("counting via cells needs --seed, --heights or --cells-file".into()))?;
        Some(count_via_cells(&source.subdivision(g, y, limit)?, y))
    } else {
        None
    };
    let draconian = wants(Method::Draconian).then(|| count_via_draconian(g, y));
    let brute = wants(Method::Brute).then(|| count_brute(g, y));
    let equal = (method == Method::All).then(|| cells == draconian && draconian == brute);
    Ok(CountReport { cells, draconian, brute, equal })
}

pub fn cmd_decompose(
    g: &BipartiteGraph,
    y: &WeightVector,
    source: &CellSource,
    limit: &SizeLimit,
) -> Result<DecompositionReport> {
    let s = source.subdivision(g, y, limit)?;
    let d = decompose(&s, y)?;
    Ok(DecompositionReport::new(&s, y, &d))
}

pub fn cmd_subdivide(
    g: &BipartiteGraph,
    y: &WeightVector,
    source: &CellSource,
    limit: &SizeLimit,
) -> Result<CellsFile> {
    let s = source.subdivision(g, y, limit)?;
    Ok(CellsFile::from(s.cells()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DraconianReport {
    pub sequences: Vec<Vec<usize>>,
    pub polynomial: String,
}

pub fn cmd_draconian(g: &BipartiteGraph) -> DraconianReport {
    let terms = ehrhart_terms(g);
    DraconianReport { polynomial: terms.display(), sequences: terms.terms }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRun {
    pub source: String,
    pub validation: ValidationReport,
    /// Absent when validation failed.
    pub chain: Option<ChainReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub runs: Vec<VerifyRun>,
    /// Every run produced the same multiset of left-degree vectors.
    pub ld_multisets_equal: bool,
}

pub fn cmd_verify(
    g: &BipartiteGraph,
    y: &WeightVector,
    sources: &[CellSource],
    limit: &SizeLimit,
) -> Result<VerifyReport> {
    let mut runs = Vec::new();
    for source in sources {
        let cells = match source {
            CellSource::Cells(cells) => cells.clone(),
            other => match other.subdivision(g, y, limit) {
                Ok(s) => s.cells().to_vec(),
                Err(Error::ValidationFailed(report)) => {
                    runs.push(VerifyRun { source: other.label(), validation: *report, chain: None });
                    continue;
                }
                Err(e) => return Err(e),
            },
        };
        let validation = validate(g, y, &cells);
        let chain = if validation.pass {
            let s = Subdivision::from_cells(g, y, cells)?;
            Some(verify_chain(g, y, &s))
        } else {
            None
        };
        runs.push(VerifyRun { source: source.label(), validation, chain });
    }
    let lds: Vec<_> = runs.iter().filter_map(|r| r.chain.as_ref().map(|c| &c.cell_ld_vectors)).collect();
    let ld_multisets_equal = lds.windows(2).all(|w| w[0] == w[1]);
    let pass = !runs.is_empty()
        && ld_multisets_equal
        && runs.iter().all(|r| r.validation.pass && r.chain.as_ref().is_some_and(|c| c.pass));
    Ok(VerifyReport { pass, runs, ld_multisets_equal })
}

pub fn cmd_render(g: &BipartiteGraph, y: &WeightVector, source: &CellSource, limit: &SizeLimit) -> Result<String> {
    if g.n() != 2 && g.n() != 3 {
        return Err(Error::UnsupportedDimension(g.n()));
    }
    let s = source.subdivision(g, y, limit)?;
    render_svg(&s, y)
}

/// Text to emit and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl RunConfig {
    fn weights(&self, g: &BipartiteGraph) -> Result<WeightVector> {
        let y = self.y.clone().ok_or_else(|| Error::Usage("--y is required".into()))?;
        WeightVector::for_graph(g, y)
    }

    fn sources(&self, g: &BipartiteGraph) -> Result<Vec<CellSource>> {
        let given = usize::from(!self.seed.is_empty())
            + usize::from(self.heights.is_some())
            + usize::from(self.cells_file.is_some());
        if given > 1 {
            return Err(Error::Usage("give only one of --seed, --heights, --cells-file".into()));
        }
        if let Some(path) = &self.heights {
            return Ok(vec![CellSource::Heights(io::read_json::<HeightsFile>(path)?.into_heights(g)?)]);
        }
        if let Some(path) = &self.cells_file {
            return Ok(vec![CellSource::Cells(io::read_json::<CellsFile>(path)?.into_trees(g)?)]);
        }
        Ok(self.seed.iter().map(|&s| CellSource::Seed(s)).collect())
    }

    fn single_source(&self, g: &BipartiteGraph) -> Result<Option<CellSource>> {
        let mut sources = self.sources(g)?;
        match sources.len() {
            0 => Ok(None),
            1 => Ok(sources.pop()),
            _ => Err(Error::Usage("this command takes a single --seed".into())),
        }
    }
}

fn required(source: Option<CellSource>) -> Result<CellSource> {
    source.ok_or_else(|| Error::Usage("a subdivision is needed: give --seed, --heights or --cells-file".into()))
}

/// Runs one command. Input problems come back as `Err`; failed checks come
/// back as an [`Outcome`] with code [`EXIT_FAILED`].
pub fn execute(config: &RunConfig, limit: &SizeLimit) -> Result<Outcome> {
    let g = io::read_graph(&config.graph)?;
    let ok = |output: String, pass: bool| Outcome { output, code: if pass { EXIT_OK } else { EXIT_FAILED } };
    match config.command {
        Command::Draconian => Ok(ok(io::to_sorted_json(&cmd_draconian(&g))?, true)),
        Command::Count => {
            let y = config.weights(&g)?;
            let source = config.single_source(&g)?;
            let report = cmd_count(&g, &y, config.method, source.as_ref(), limit)?;
            let pass = report.equal != Some(false);
            Ok(ok(io::to_sorted_json(&report)?, pass))
        }
        Command::Decompose => {
            let y = config.weights(&g)?;
            let report = cmd_decompose(&g, &y, &required(config.single_source(&g)?)?, limit)?;
            Ok(ok(io::to_sorted_json(&report)?, true))
        }
        Command::Subdivide => {
            let y = config.weights(&g)?;
            let cells = cmd_subdivide(&g, &y, &required(config.single_source(&g)?)?, limit)?;
            Ok(ok(io::to_sorted_json(&cells)?, true))
        }
        Command::Verify => {
            let y = config.weights(&g)?;
            let sources = config.sources(&g)?;
            if sources.is_empty() {
                return Err(Error::Usage("verify needs --seed, --heights or --cells-file".into()));
            }
            let report = cmd_verify(&g, &y, &sources, limit)?;
            Ok(ok(io::to_sorted_json(&report)?, report.pass))
        }
        Command::Render => {
            let y = config.weights(&g)?;
            let svg = cmd_render(&g, &y, &required(config.single_source(&g)?)?, limit)?;
            Ok(ok(svg, true))
        }
    }
}

/// Parses `args`, runs, writes the output, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&config, &SizeLimit::from_env()) {
        Ok(outcome) => {
            let written = match &config.out {
                Some(path) => std::fs::write(path, &outcome.output),
                None => {
                    print!("{}", outcome.output);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return EXIT_INPUT;
            }
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ValidationFailed(_) | Error::BrokenPartition { .. } | Error::SignRuleMismatch(_) => EXIT_FAILED,
                _ => EXIT_INPUT,
            }
        }
    }
}
