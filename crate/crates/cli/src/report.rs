//! Structured command results. Every report serializes to JSON and parses
//! back to an equal value.

use std::fmt;

use reebseq::spectral::{AssembledHomology, E2Page, TwoColumnReport};
use reebseq::AbelianGroup;
use serde::{Deserialize, Serialize};

use crate::files::AbstractE1File;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub degree: usize,
    pub group: AbelianGroup,
    pub display: String,
}

impl GroupReport {
    pub fn list(groups: &[AbelianGroup]) -> Vec<GroupReport> {
        groups
            .iter()
            .enumerate()
            .map(|(degree, g)| GroupReport { degree, group: g.clone(), display: g.to_string() })
            .collect()
    }
}

fn line(groups: &[GroupReport]) -> String {
    groups.iter().map(|g| format!("H{}={}", g.degree, g.display)).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub vertices: usize,
    pub dimension: Option<usize>,
    /// Simplex counts by dimension.
    pub f_vector: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalValuesReport {
    pub values: Vec<String>,
}

/// Where a fiber vertex comes from: an input vertex, or a crossing on the
/// edge between two input vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberVertex {
    Vertex(String),
    Crossing(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSetReport {
    pub level: String,
    pub vertices: Vec<FiberVertex>,
    pub f_vector: Vec<usize>,
    pub components: usize,
    pub homology: Option<Vec<GroupReport>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReebVertexReport {
    pub id: usize,
    pub label: String,
    pub level: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReebEdgeReport {
    pub id: usize,
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordReport {
    pub word: String,
    pub run_length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorsReport {
    pub base: usize,
    pub words: Vec<WordReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReebGraphReport {
    pub vertices: Vec<ReebVertexReport>,
    pub edges: Vec<ReebEdgeReport>,
    pub components: usize,
    pub cycle_rank: usize,
    pub generators: Option<GeneratorsReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2RowReport {
    pub degree: usize,
    pub critical: AbelianGroup,
    pub section: AbelianGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2Report {
    pub coefficients: String,
    pub rows: Vec<E2RowReport>,
    pub homology: Vec<GroupReport>,
}

impl E2Report {
    pub fn new(coefficients: String, e2: &E2Page, h: &AssembledHomology) -> Self {
        let rows = e2
            .degrees
            .iter()
            .map(|d| E2RowReport { degree: d.degree, critical: d.critical.clone(), section: d.section.clone() })
            .collect();
        E2Report { coefficients, rows, homology: GroupReport::list(&h.groups()) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub method: String,
    pub coefficients: String,
    pub groups: Vec<GroupReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub endpoint_isomorphisms: bool,
    pub two_columns: Option<TwoColumnReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.endpoint_isomorphisms && self.two_columns.as_ref().is_none_or(TwoColumnReport::matches)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceReport {
    pub input: String,
    pub reduced: String,
    pub run_length: usize,
    pub end: usize,
}

/// Any command result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Validate(ValidateReport),
    CriticalValues(CriticalValuesReport),
    Levelset(LevelSetReport),
    ReebGraph(ReebGraphReport),
    E1(AbstractE1File),
    E2(E2Report),
    Homology(HomologyReport),
    Verify(VerifyReport),
    Reduce(ReduceReport),
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Report::Validate(r) => {
                let dim = r.dimension.map_or("empty".to_string(), |d| d.to_string());
                writeln!(f, "valid: {} vertices, dimension {dim}, f-vector {:?}", r.vertices, r.f_vector)
            }
            Report::CriticalValues(r) => writeln!(f, "{}", r.values.join(" ")),
            Report::Levelset(r) => {
                writeln!(f, "level {}: {} vertices, f-vector {:?}, components {}", r.level, r.vertices.len(), r.f_vector, r.components)?;
                for v in &r.vertices {
                    match v {
                        FiberVertex::Vertex(id) => writeln!(f, "  vertex {id}")?,
                        FiberVertex::Crossing(a, b) => writeln!(f, "  crossing {a}-{b}")?,
                    }
                }
                if let Some(h) = &r.homology {
                    writeln!(f, "{}", line(h))?;
                }
                Ok(())
            }
            Report::ReebGraph(r) => {
                writeln!(f, "{} vertices, {} edges, b0={} b1={}", r.vertices.len(), r.edges.len(), r.components, r.cycle_rank)?;
                for v in &r.vertices {
                    writeln!(f, "  v{} {} at {}", v.id, v.label, v.level)?;
                }
                for e in &r.edges {
                    writeln!(f, "  e{} {}: v{} -> v{}", e.id, e.label, e.source, e.target)?;
                }
                if let Some(g) = &r.generators {
                    writeln!(f, "generators at v{}:", g.base)?;
                    for w in &g.words {
                        writeln!(f, "  {} (runs {})", w.word, w.run_length)?;
                    }
                }
                Ok(())
            }
            Report::E1(page) => {
                writeln!(f, "first page over {}", page.coefficients)?;
                for d in &page.degrees {
                    let show = |s: &[crate::files::SummandEntry]| {
                        s.iter()
                            .map(|g| {
                                let mut parts = vec![format!("{}", g.free_rank)];
                                parts.extend(g.torsion.iter().map(|t| format!("/{}", t.0)));
                                parts.join("")
                            })
                            .collect::<Vec<_>>()
                            .join(",")
                    };
                    writeln!(
                        f,
                        "  q={}: critical [{}] sections [{}] differential {}x{} ({} nonzero)",
                        d.degree,
                        show(&d.critical),
                        show(&d.sections),
                        d.differential.rows,
                        d.differential.cols,
                        d.differential.entries.len()
                    )?;
                }
                Ok(())
            }
            Report::E2(r) => {
                for row in &r.rows {
                    writeln!(f, "E2[0,{q}]={} E2[1,{q}]={}", row.critical, row.section, q = row.degree)?;
                }
                writeln!(f, "{}", line(&r.homology))
            }
            Report::Homology(r) => writeln!(f, "{}", line(&r.groups)),
            Report::Verify(r) => {
                writeln!(f, "endpoint isomorphisms: {}", if r.endpoint_isomorphisms { "ok" } else { "FAILED" })?;
                if let Some(t) = &r.two_columns {
                    for d in &t.degrees {
                        let full: Vec<String> = d.full.iter().map(ToString::to_string).collect();
                        writeln!(f, "q={}: full second page [{}] {}", d.degree, full.join(", "), if d.matches() { "ok" } else { "MISMATCH" })?;
                    }
                }
                writeln!(f, "{}", if r.passed() { "verified" } else { "verification failed" })
            }
            Report::Reduce(r) => writeln!(f, "{} (runs {}, ends at v{})", r.reduced, r.run_length, r.end),
        }
    }
}

