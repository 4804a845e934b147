//! On-disk formats: instance files and abstract first-page files.
//!
//! Both are versioned JSON. Rationals are written as `"p/q"` strings and
//! integers as JSON numbers, or as decimal strings when they do not fit in 64
//! bits.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use reebseq::spectral::{E1Degree, E1Page};
use reebseq::{AbelianGroup, Coefficients, ComplexViolation, Instance, IntegerMatrix, Rational, SimplicialComplex, VertexFunction};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

/// Problems with an input file. Parse errors mean the file does not follow
/// the schema; validation errors mean it does but describes no valid complex.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("parse error in {field}: {message}")]
    Field { field: String, message: String },
    #[error("validation error: {0}")]
    Validation(ComplexViolation),
    #[error("validation error: {0}")]
    Page(String),
}

impl InputError {
    fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        InputError::Field { field: field.into(), message: message.into() }
    }

    pub fn is_validation(&self) -> bool {
        matches!(self, InputError::Validation(_) | InputError::Page(_))
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io { path: path.display().to_string(), source })
}

fn check_version(version: u32) -> Result<(), InputError> {
    if version == FORMAT_VERSION {
        Ok(())
    } else {
        Err(InputError::field("version", format!("unsupported version {version}, expected {FORMAT_VERSION}")))
    }
}

/// A vertex identifier: an integer or a string. Integers sort before strings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexId {
    Int(i64),
    Name(String),
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Int(i) => write!(f, "{i}"),
            VertexId::Name(s) => write!(f, "{s}"),
        }
    }
}

/// A rational value as written in a file: a string, or a bare integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueText {
    Text(String),
    Int(i64),
}

impl ValueText {
    fn parse(&self) -> Result<Rational, String> {
        match self {
            ValueText::Int(i) => Ok(Rational::from_integer((*i).into())),
            ValueText::Text(s) => parse_rational(s),
        }
    }
}

/// Parses `"p/q"` or an integer string.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|e| format!("malformed rational {s:?}: {e}"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexEntry {
    pub id: VertexId,
    pub value: ValueText,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub version: u32,
    pub vertices: Vec<VertexEntry>,
    pub simplices: Vec<Vec<VertexId>>,
}

/// An instance with its original vertex identifiers; `ids[k]` names internal
/// vertex `k`.
#[derive(Debug, Clone)]
pub struct LoadedInstance {
    pub instance: Instance,
    pub ids: Vec<VertexId>,
}

impl LoadedInstance {
    pub fn index_of(&self, id: &VertexId) -> Option<usize> {
        self.ids.binary_search(id).ok()
    }
}

impl InstanceFile {
    /// Writes an instance with integer ids `0..n`. Every simplex is listed,
    /// vertices included.
    pub fn from_instance(instance: &Instance) -> Self {
        let vertices = instance
            .function
            .values
            .iter()
            .enumerate()
            .map(|(k, v)| VertexEntry { id: VertexId::Int(k as i64), value: ValueText::Text(v.to_string()) })
            .collect();
        let simplices = instance.complex.iter().map(|s| s.iter().map(|&v| VertexId::Int(v as i64)).collect()).collect();
        InstanceFile { version: FORMAT_VERSION, vertices, simplices }
    }

    /// Internal vertex order is the sorted id order. Declared vertices are
    /// 0-simplices whether or not they are listed; the listed simplices
    /// together with them must be closed under faces.
    pub fn into_instance(self) -> Result<LoadedInstance, InputError> {
        check_version(self.version)?;
        let mut by_id: BTreeMap<VertexId, (usize, Rational)> = BTreeMap::new();
        for (k, entry) in self.vertices.iter().enumerate() {
            let value = entry.value.parse().map_err(|m| InputError::field(format!("vertices[{k}].value"), m))?;
            if by_id.insert(entry.id.clone(), (k, value)).is_some() {
                return Err(InputError::field(format!("vertices[{k}].id"), format!("duplicate id {}", entry.id)));
            }
        }
        let ids: Vec<VertexId> = by_id.keys().cloned().collect();
        let values: Vec<Rational> = by_id.into_values().map(|(_, v)| v).collect();
        let mut simplices: Vec<Vec<usize>> = (0..ids.len()).map(|v| vec![v]).collect();
        for (k, s) in self.simplices.iter().enumerate() {
            let mut mapped = Vec::with_capacity(s.len());
            for (j, id) in s.iter().enumerate() {
                let v = ids
                    .binary_search(id)
                    .map_err(|_| InputError::field(format!("simplices[{k}][{j}]"), format!("unknown vertex id {id}")))?;
                mapped.push(v);
            }
            mapped.sort_unstable();
            if mapped.windows(2).any(|w| w[0] == w[1]) {
                return Err(InputError::field(format!("simplices[{k}]"), "repeated vertex"));
            }
            if mapped.is_empty() {
                return Err(InputError::field(format!("simplices[{k}]"), "empty simplex"));
            }
            if mapped.len() > 1 {
                simplices.push(mapped);
            }
        }
        let complex = SimplicialComplex::new(simplices).map_err(InputError::Validation)?;
        let instance = Instance::new(complex, VertexFunction::new(values)).map_err(|e| match e {
            reebseq::Error::Complex(v) => InputError::Validation(v),
            other => InputError::Page(other.to_string()),
        })?;
        Ok(LoadedInstance { instance, ids })
    }
}

pub fn parse_instance(text: &str) -> Result<LoadedInstance, InputError> {
    parse_json::<InstanceFile>(text)?.into_instance()
}

pub fn load_instance(path: &Path) -> Result<LoadedInstance, InputError> {
    parse_instance(&read(path)?)
}

/// An integer that serializes as a JSON number when it fits in 64 bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Integer(pub BigInt);

impl Serialize for Integer {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Integer {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Integer(v.into())),
            Raw::Text(s) => BigInt::from_str(&s).map(Integer).map_err(serde::de::Error::custom),
        }
    }
}

/// Parses `z`, `q` or `zp:<p>` (case-insensitive).
pub fn parse_coefficients(s: &str) -> Result<Coefficients, String> {
    let lower = s.trim().to_ascii_lowercase();
    match lower.as_str() {
        "z" => Ok(Coefficients::Integers),
        "q" => Ok(Coefficients::Rationals),
        _ => {
            let p = lower
                .strip_prefix("zp:")
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| format!("unknown coefficients {s:?}; use z, q or zp:<prime>"))?;
            reebseq::complex::ring::PrimeField::new(p).ok_or_else(|| format!("{p} is not a supported prime"))?;
            Ok(Coefficients::Prime(p))
        }
    }
}

pub fn coefficients_label(ring: Coefficients) -> String {
    match ring {
        Coefficients::Integers => "z".into(),
        Coefficients::Rationals => "q".into(),
        Coefficients::Prime(p) => format!("zp:{p}"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandEntry {
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<Integer>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixEntry {
    pub rows: usize,
    pub cols: usize,
    /// `(row, col, value)` triples for the nonzero entries.
    pub entries: Vec<(usize, usize, Integer)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct E1DegreeEntry {
    pub degree: usize,
    /// One entry per critical level, in increasing order.
    pub critical: Vec<SummandEntry>,
    /// One entry per gap, in increasing order.
    pub sections: Vec<SummandEntry>,
    pub differential: MatrixEntry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractE1File {
    pub version: u32,
    pub coefficients: String,
    pub degrees: Vec<E1DegreeEntry>,
}

fn summand(g: &AbelianGroup) -> SummandEntry {
    SummandEntry { free_rank: g.free_rank, torsion: g.torsion.iter().cloned().map(Integer).collect() }
}

impl AbstractE1File {
    pub fn from_page(page: &E1Page) -> Self {
        let degrees = page
            .degrees
            .iter()
            .map(|d| E1DegreeEntry {
                degree: d.degree,
                critical: d.critical.iter().map(summand).collect(),
                sections: d.sections.iter().map(summand).collect(),
                differential: MatrixEntry {
                    rows: d.differential.rows(),
                    cols: d.differential.cols(),
                    entries: d.differential.iter().map(|(i, j, v)| (i, j, Integer(v.clone()))).collect(),
                },
            })
            .collect();
        AbstractE1File { version: FORMAT_VERSION, coefficients: coefficients_label(page.ring), degrees }
    }

    pub fn into_page(self) -> Result<E1Page, InputError> {
        check_version(self.version)?;
        let ring = parse_coefficients(&self.coefficients).map_err(|m| InputError::field("coefficients", m))?;
        let mut degrees = Vec::with_capacity(self.degrees.len());
        for (k, d) in self.degrees.into_iter().enumerate() {
            let group = |s: &SummandEntry, field: String| -> Result<AbelianGroup, InputError> {
                if ring != Coefficients::Integers && !s.torsion.is_empty() {
                    return Err(InputError::field(field, "torsion listed over a field"));
                }
                if s.torsion.iter().any(|t| t.0 <= BigInt::from(1)) {
                    return Err(InputError::field(field, "torsion orders must exceed 1"));
                }
                let orders: Vec<BigInt> = s.torsion.iter().map(|t| t.0.clone()).collect();
                Ok(AbelianGroup::new(ring, s.free_rank, &orders))
            };
            let critical = d
                .critical
                .iter()
                .enumerate()
                .map(|(i, s)| group(s, format!("degrees[{k}].critical[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let sections = d
                .sections
                .iter()
                .enumerate()
                .map(|(i, s)| group(s, format!("degrees[{k}].sections[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let m = &d.differential;
            let mut differential = IntegerMatrix::zeros(m.rows, m.cols);
            for (e, (i, j, v)) in m.entries.iter().enumerate() {
                if *i >= m.rows || *j >= m.cols {
                    return Err(InputError::field(format!("degrees[{k}].differential.entries[{e}]"), "index out of range"));
                }
                if !v.0.is_zero() {
                    differential.set(*i, *j, v.0.clone());
                }
            }
            degrees.push(E1Degree { degree: d.degree, critical, sections, differential });
        }
        let page = E1Page { ring, degrees };
        page.check_shape().map_err(|e| InputError::Page(e.to_string()))?;
        Ok(page)
    }
}

pub fn parse_e1(text: &str) -> Result<E1Page, InputError> {
    parse_json::<AbstractE1File>(text)?.into_page()
}

pub fn load_e1(path: &Path) -> Result<E1Page, InputError> {
    parse_e1(&read(path)?)
}

/// File name and contents of every shipped fixture. The four-level torus is
/// `torus.json`; its abstract first page is `torus.e1.json`.
pub fn fixture_files() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = reebseq::fixtures::all()
        .into_iter()
        .map(|(name, inst)| {
            let name = if name == "level_torus" { "torus" } else { name };
            let text = serde_json::to_string_pretty(&InstanceFile::from_instance(&inst)).expect("instance serializes");
            (format!("{name}.json"), text + "\n")
        })
        .collect();
    let page = AbstractE1File::from_page(&reebseq::fixtures::torus_e1_page());
    out.push(("torus.e1.json".into(), serde_json::to_string_pretty(&page).expect("page serializes") + "\n"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use reebseq::fixtures;

    #[test]
    fn minimal_file_is_a_point() {
        let loaded = parse_instance(r#"{"version":1,"vertices":[{"id":0,"value":"0"}],"simplices":[]}"#).unwrap();
        assert_eq!(loaded.instance.complex.count(0), 1);
        assert_eq!(loaded.instance.complex.dim(), Some(0));
    }

    #[test]
    fn ids_are_sorted() {
        let text = r#"{"version":1,"vertices":[{"id":"b","value":"1/2"},{"id":7,"value":2},{"id":"a","value":"-3"}],
                      "simplices":[["b","a"],[7,"a"],["b",7],["a","b",7]]}"#;
        let loaded = parse_instance(text).unwrap();
        assert_eq!(loaded.ids, vec![VertexId::Int(7), VertexId::Name("a".into()), VertexId::Name("b".into())]);
        assert_eq!(loaded.instance.function.values, vec![fixtures::rational("2"), fixtures::rational("-3"), fixtures::rational("1/2")]);
        assert_eq!(loaded.instance.complex.count(2), 1);
    }

    #[test]
    fn diagnostics() {
        let unknown = parse_instance(r#"{"version":1,"vertices":[{"id":0,"value":"0"}],"simplices":[[0,1]]}"#).unwrap_err();
        assert_eq!(unknown.to_string(), "parse error in simplices[0][1]: unknown vertex id 1");
        let dup = parse_instance(r#"{"version":1,"vertices":[{"id":0,"value":"0"},{"id":0,"value":"1"}],"simplices":[]}"#).unwrap_err();
        assert!(dup.to_string().contains("vertices[1].id"));
        let bad = parse_instance(r#"{"version":1,"vertices":[{"id":0,"value":"1/0"}],"simplices":[]}"#).unwrap_err();
        assert!(bad.to_string().contains("vertices[0].value"), "{bad}");
        let syntax = parse_instance("{\n\"version\": 1,\n\"vertices\": [,\n").unwrap_err();
        assert!(matches!(syntax, InputError::Syntax { line: 3, .. }), "{syntax}");
        let open = parse_instance(
            r#"{"version":1,"vertices":[{"id":0,"value":"0"},{"id":1,"value":"1"},{"id":2,"value":"2"}],"simplices":[[0,1,2]]}"#,
        )
        .unwrap_err();
        assert!(open.is_validation());
        let version = parse_instance(r#"{"version":2,"vertices":[],"simplices":[]}"#).unwrap_err();
        assert!(version.to_string().contains("version"));
    }

    #[test]
    fn instance_round_trip() {
        for (name, inst) in fixtures::all() {
            let text = serde_json::to_string(&InstanceFile::from_instance(&inst)).unwrap();
            let back = parse_instance(&text).unwrap().instance;
            assert_eq!(back.complex, inst.complex, "{name}");
            assert_eq!(back.function.values, inst.function.values, "{name}");
        }
    }

    #[test]
    fn page_round_trip() {
        let page = fixtures::torus_e1_page();
        let text = serde_json::to_string_pretty(&AbstractE1File::from_page(&page)).unwrap();
        assert_eq!(parse_e1(&text).unwrap(), page);
        let big = Integer(BigInt::from(u64::MAX) * 3);
        let json = serde_json::to_string(&big).unwrap();
        assert_eq!(serde_json::from_str::<Integer>(&json).unwrap(), big);
    }

    #[test]
    fn coefficient_labels() {
        for ring in [Coefficients::Integers, Coefficients::Rationals, Coefficients::Prime(5)] {
            assert_eq!(parse_coefficients(&coefficients_label(ring)), Ok(ring));
        }
        assert!(parse_coefficients("zp:4").is_err());
        assert!(parse_coefficients("r").is_err());
    }
}
