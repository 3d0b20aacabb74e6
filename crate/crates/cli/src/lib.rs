//! Document types and renderers behind the `rmx` binary.
//!
//! Every renderer is a pure function of its input, so output is byte-stable.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use rmx_core::ar_quiver::{DeltaVertex, Happel};
use rmx_core::denominators::{Convention, Denominator};
use rmx_core::quantum_cartan::CTildeTable;
use rmx_core::root_system::{build_cartan_with_parity, Family, LieType, ParityChoice};
use rmx_core::schur_weyl::{GammaJ, GammaWindow};
use rmx_core::{Error, Result};

/// A finite quiver in the export schema `{vertices, arrows}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub vertices: Vec<GraphVertex>,
    pub arrows: Vec<GraphArrow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphVertex {
    pub id: String,
    pub i: usize,
    pub p: i64,
    /// Index in `J`, for family graphs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<i64>,
    /// The object `M_root[shift]`, for the AR quiver.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphArrow {
    pub from: String,
    pub to: String,
    pub mult: u32,
}

fn grid_vertex(v: DeltaVertex) -> GraphVertex {
    GraphVertex { id: v.to_string(), i: v.i, p: v.p, j: None, object: None }
}

/// The repetition quiver on `p_lo <= p <= p_hi`, each vertex tagged with its
/// object under `frame`. Arrows are `(i,p) -> (j,p+1)` for adjacent `i, j`.
pub fn ar_quiver_graph(frame: &Happel, p_lo: i64, p_hi: i64) -> Result<Graph> {
    let cd = frame.cartan();
    let mut vertices = Vec::new();
    let mut arrows = Vec::new();
    for p in p_lo..=p_hi {
        for i in cd.vertices() {
            let Ok(v) = DeltaVertex::new(cd, i, p) else {
                continue;
            };
            let obj = frame.happel_object(v)?;
            vertices.push(GraphVertex { object: Some(obj.to_string()), ..grid_vertex(v) });
            if p < p_hi {
                for &k in cd.neighbors(i) {
                    let w = DeltaVertex { i: k, p: p + 1 };
                    arrows.push(GraphArrow { from: v.to_string(), to: w.to_string(), mult: 1 });
                }
            }
        }
    }
    Ok(Graph { vertices, arrows })
}

pub fn gamma_graph(w: &GammaWindow) -> Graph {
    Graph {
        vertices: w.vertices.iter().map(|&v| grid_vertex(v)).collect(),
        arrows: w
            .arrows
            .iter()
            .map(|a| GraphArrow { from: a.from.to_string(), to: a.to.to_string(), mult: a.mult })
            .collect(),
    }
}

pub fn gamma_j_graph(g: &GammaJ) -> Graph {
    Graph {
        vertices: g
            .vertices
            .iter()
            .map(|&(j, v)| GraphVertex { id: j.to_string(), j: Some(j), ..grid_vertex(v) })
            .collect(),
        arrows: g
            .arrows
            .iter()
            .map(|a| GraphArrow { from: a.from.to_string(), to: a.to.to_string(), mult: a.mult })
            .collect(),
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n")
}

pub fn graph_to_dot(name: &str, g: &Graph) -> String {
    let mut out = format!("digraph \"{}\" {{\n", dot_escape(name));
    for v in &g.vertices {
        let mut label = format!("{},{}", v.i, v.p);
        if let Some(j) = v.j {
            label = format!("j={j}\n{label}");
        }
        if let Some(obj) = &v.object {
            label = format!("{label}\n{obj}");
        }
        writeln!(out, "  \"{}\" [label=\"{}\"];", dot_escape(&v.id), dot_escape(&label)).unwrap();
    }
    for a in &g.arrows {
        writeln!(
            out,
            "  \"{}\" -> \"{}\" [mult={}, label=\"{}\"];",
            dot_escape(&a.from),
            dot_escape(&a.to),
            a.mult,
            a.mult
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

/// The `c~` table as a document: one row per `(i, j)` with `c~_ij(1..=order)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CTildeDoc {
    pub family: String,
    pub rank: usize,
    pub order: usize,
    pub rows: Vec<CTildeRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CTildeRow {
    pub i: usize,
    pub j: usize,
    pub values: Vec<i64>,
}

impl CTildeDoc {
    pub fn from_table(t: &CTildeTable) -> Self {
        let cd = t.cartan();
        let mut rows = Vec::new();
        for i in cd.vertices() {
            for j in cd.vertices() {
                rows.push(CTildeRow { i, j, values: t.series(i, j).to_vec() });
            }
        }
        let ty = cd.lie_type();
        CTildeDoc { family: ty.family().letter().to_string(), rank: ty.rank(), order: t.order(), rows }
    }

    /// Rebuilds the table; the rows may come in any order but must cover every `(i, j)`.
    pub fn to_table(&self) -> Result<CTildeTable> {
        let family: Family = self.family.parse()?;
        let cd = build_cartan_with_parity(LieType::new(family, self.rank)?, ParityChoice::Standard);
        let n = self.rank;
        let mut raw = vec![vec![Vec::new(); n]; n];
        for row in &self.rows {
            cd.check_vertex(row.i)?;
            cd.check_vertex(row.j)?;
            if row.values.len() != self.order {
                return Err(Error::OutOfRange(format!(
                    "row ({}, {}) has {} values, expected {}",
                    row.i,
                    row.j,
                    row.values.len(),
                    self.order
                )));
            }
            raw[row.i - 1][row.j - 1] = row.values.clone();
        }
        CTildeTable::from_raw(cd, raw)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j");
        for l in 1..=self.order {
            write!(out, ",c({l})").unwrap();
        }
        out.push('\n');
        for row in &self.rows {
            let values: Vec<String> = row.values.iter().map(i64::to_string).collect();
            writeln!(out, "{},{},{}", row.i, row.j, values.join(",")).unwrap();
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| i | j |");
        let mut rule = String::from("|---|---|");
        for l in 1..=self.order {
            write!(out, " {l} |").unwrap();
            rule.push_str("---|");
        }
        out.push('\n');
        out.push_str(&rule);
        out.push('\n');
        for row in &self.rows {
            write!(out, "| {} | {} |", row.i, row.j).unwrap();
            for v in &row.values {
                write!(out, " {v} |").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// A denominator as a sorted factor list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenominatorDoc {
    pub lie_type: String,
    pub i: usize,
    pub j: usize,
    pub convention: Convention,
    pub factors: Vec<Factor>,
    pub polynomial: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub exponent: u32,
    pub multiplicity: u32,
}

impl DenominatorDoc {
    pub fn new(ty: LieType, i: usize, j: usize, d: &Denominator) -> Self {
        DenominatorDoc {
            lie_type: ty.to_string(),
            i,
            j,
            convention: d.convention,
            factors: d
                .factors
                .iter()
                .map(|(&exponent, &multiplicity)| Factor { exponent, multiplicity })
                .collect(),
            polynomial: d.to_string(),
        }
    }

    fn convention_name(&self) -> &'static str {
        match self.convention {
            Convention::Q => "q",
            Convention::MinusQ => "-q",
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("exponent,multiplicity,convention\n");
        for f in &self.factors {
            writeln!(out, "{},{},{}", f.exponent, f.multiplicity, self.convention_name()).unwrap();
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| exponent | multiplicity | convention |\n|---|---|---|\n");
        for f in &self.factors {
            writeln!(out, "| {} | {} | {} |", f.exponent, f.multiplicity, self.convention_name()).unwrap();
        }
        out
    }
}
