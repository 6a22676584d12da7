//! JSON interchange format for embedded graphs and family instances.
//!
//! ```json
//! { "format": 1, "family": "Q", "params": [3],
//!   "vertices": [{"id": 0, "x": 0.0, "y": 1.0}, ...],
//!   "edges": [[0, 1], ...],
//!   "alpha": {"0": 2, ...},
//!   "markers": {"s": 0, ...},
//!   "reference": "0110..." }
//! ```
//!
//! Only `vertices` and `edges` are required. Output is canonical: keys are
//! sorted, so writing a loaded document reproduces it byte for byte.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::FamilyInstance;
use crate::orientations::{AlphaSpec, Orientation};
use crate::planegraph::PlaneGraph;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: i64,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDoc {
    #[serde(default = "default_format")]
    pub format: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<usize>,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<BTreeMap<String, u32>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub markers: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<String>,
}

fn default_format() -> u32 {
    FORMAT_VERSION
}

/// A graph loaded from JSON with whatever extra data the document carried.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub graph: PlaneGraph,
    pub alpha: Option<AlphaSpec>,
    pub markers: BTreeMap<String, usize>,
    pub family: Option<String>,
    pub params: Vec<usize>,
    pub reference: Option<Orientation>,
}

impl GraphDoc {
    pub fn from_graph(g: &PlaneGraph, alpha: Option<&AlphaSpec>) -> Self {
        GraphDoc {
            format: FORMAT_VERSION,
            family: None,
            params: vec![],
            vertices: (0..g.num_vertices())
                .map(|v| VertexDoc { id: g.id(v), x: g.coords()[v][0], y: g.coords()[v][1] })
                .collect(),
            edges: g.edges().iter().map(|&(a, b)| [g.id(a), g.id(b)]).collect(),
            alpha: alpha.map(|a| (0..g.num_vertices()).map(|v| (g.id(v).to_string(), a.get(v))).collect()),
            markers: BTreeMap::new(),
            reference: None,
        }
    }

    pub fn from_instance(f: &FamilyInstance) -> Self {
        let mut doc = Self::from_graph(&f.graph, Some(&f.alpha));
        doc.family = Some(f.family.clone());
        doc.params = f.params.clone();
        doc.markers = f.markers.iter().map(|(k, &v)| (k.clone(), f.graph.id(v))).collect();
        doc.reference = f.reference.as_ref().map(|x| x.to_bitstring());
        doc
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: GraphDoc = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if doc.format != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported format version {}", doc.format)));
        }
        Ok(doc)
    }

    pub fn load(&self) -> Result<Loaded> {
        let ids: Vec<i64> = self.vertices.iter().map(|v| v.id).collect();
        let coords: Vec<[f64; 2]> = self.vertices.iter().map(|v| [v.x, v.y]).collect();
        let pos: BTreeMap<i64, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let lookup = |id: i64| {
            pos.get(&id)
                .copied()
                .ok_or_else(|| Error::Format(format!("unknown vertex id {id}")))
        };
        let edges = self
            .edges
            .iter()
            .map(|&[a, b]| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let graph = PlaneGraph::new(ids.clone(), coords, edges)?;
        let alpha = match &self.alpha {
            None => None,
            Some(map) => {
                let mut a = vec![0u32; ids.len()];
                for (k, &val) in map {
                    let id: i64 = k.parse().map_err(|_| Error::Format(format!("bad alpha key {k}")))?;
                    a[lookup(id)?] = val;
                }
                Some(AlphaSpec(a))
            }
        };
        let markers = self
            .markers
            .iter()
            .map(|(k, &id)| Ok((k.clone(), lookup(id)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let reference = self.reference.as_deref().map(Orientation::from_bitstring).transpose()?;
        Ok(Loaded { graph, alpha, markers, family: self.family.clone(), params: self.params.clone(), reference })
    }
}

/// Renders an orientation in Graphviz DOT with pinned positions.
pub fn orientation_to_dot(g: &PlaneGraph, x: &Orientation) -> String {
    let mut s = String::from("digraph G {\n  node [shape=circle, fontsize=10];\n");
    for v in 0..g.num_vertices() {
        s.push_str(&format!("  {} [pos=\"{:.6},{:.6}!\"];\n", g.id(v), g.coords()[v][0], g.coords()[v][1]));
    }
    for e in 0..g.num_edges() {
        let (a, b) = x.arc(g, e);
        s.push_str(&format!("  {} -> {};\n", g.id(a), g.id(b)));
    }
    s.push_str("}\n");
    s
}

/// Parses and loads a JSON document.
pub fn load_json(text: &str) -> Result<Loaded> {
    GraphDoc::parse(text)?.load()
}
