//! JSON, DOT and TSV encodings of atlas results.

use std::fmt::Write as _;

use graphviz_rust::dot_structures::{Attribute, EdgeTy, Graph, Id, Stmt, Vertex};
use petgraph::algo::is_cyclic_directed;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::{Deserialize, Serialize};

use crate::comatlas::{build_orbit_poset, loci_report, CominusculeFamily, LociReport, OrbitNode};
use crate::error::{Error, Result};
use crate::exactla::QMatrix;
use crate::isolab::{IsoContext, IsoOrbit, TangentElement, TangentialNode};
use crate::poset::HasseDiagram;

/// On-disk form of a tangent element `(sigma, H)` of `IG(k, 2N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TangentDocument {
    pub n: usize,
    pub k: usize,
    pub sigma: QMatrix,
    pub h: QMatrix,
}

impl TangentDocument {
    pub fn new(ctx: &IsoContext, x: &TangentElement) -> Self {
        TangentDocument {
            n: ctx.n(),
            k: ctx.k(),
            sigma: x.sigma().clone(),
            h: x.h().clone(),
        }
    }

    pub fn into_element(self) -> Result<(IsoContext, TangentElement)> {
        let ctx = IsoContext::new(self.n, self.k)?;
        let x = TangentElement::new(&ctx, self.sigma, self.h)?;
        Ok((ctx, x))
    }
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_tangent_json(data: &[u8]) -> Result<(IsoContext, TangentElement)> {
    serde_json::from_slice::<TangentDocument>(data)
        .map_err(json_err)?
        .into_element()
}

pub fn tangent_json(ctx: &IsoContext, x: &TangentElement) -> String {
    to_json(&TangentDocument::new(ctx, x))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("in-memory serialization");
    s.push('\n');
    s
}

/// Parses a closure diagram of tangent orbits and checks it is a DAG on its own nodes.
pub fn parse_hasse_json(data: &[u8]) -> Result<HasseDiagram<IsoOrbit>> {
    let d: HasseDiagram<IsoOrbit> = serde_json::from_slice(data).map_err(json_err)?;
    let n = d.node_count();
    if let Some(e) = d.edges.iter().find(|e| e.lower >= n || e.upper >= n) {
        return Err(Error::Parse(format!("edge {} -> {} out of range", e.lower, e.upper)));
    }
    if !d.is_acyclic() {
        return Err(Error::Parse("cyclic diagram".into()));
    }
    Ok(d)
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport<'a> {
    pub family: &'a CominusculeFamily,
    pub loci: LociReport,
    pub poset: HasseDiagram<OrbitNode>,
}

pub fn family_report(fam: &CominusculeFamily) -> FamilyReport<'_> {
    FamilyReport {
        family: fam,
        loci: loci_report(fam),
        poset: build_orbit_poset(fam),
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Deterministic DOT rendering; `label` gives each node's display text.
pub fn to_dot<N>(name: &str, d: &HasseDiagram<N>, label: impl Fn(&N) -> String) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=BT;\n", quote(name));
    for (i, node) in d.nodes.iter().enumerate() {
        writeln!(out, "  n{i} [label={}];", quote(&label(node))).expect("string write");
    }
    for e in &d.edges {
        match &e.witness {
            Some(w) => writeln!(out, "  n{} -> n{} [label={}];", e.lower, e.upper, quote(w)),
            None => writeln!(out, "  n{} -> n{};", e.lower, e.upper),
        }
        .expect("string write");
    }
    out.push_str("}\n");
    out
}

pub fn orbit_poset_dot(fam: &CominusculeFamily, d: &HasseDiagram<OrbitNode>) -> String {
    to_dot(&fam.name, d, |n| match n.dim {
        Some(dim) => format!("{} dim {dim}", n.label),
        None => format!("{} dim ?", n.label),
    })
}

pub fn iso_hasse_dot(ctx: &IsoContext, d: &HasseDiagram<IsoOrbit>) -> String {
    to_dot(&format!("T {}", ctx.name()), d, |o| format!("{} dim {}", o.triplet, o.dim))
}

pub fn tangential_dot(ctx: &IsoContext, d: &HasseDiagram<TangentialNode>) -> String {
    to_dot(&format!("tau {}", ctx.name()), d, |t| t.label.clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotNode {
    pub id: String,
    pub label: Option<String>,
}

/// Directed graph read back from DOT text; edges index into `nodes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotGraph {
    pub name: String,
    pub nodes: Vec<DotNode>,
    pub edges: Vec<(usize, usize, Option<String>)>,
}

impl DotGraph {
    pub fn is_dag(&self) -> bool {
        let mut g = DiGraph::<(), ()>::new();
        for _ in &self.nodes {
            g.add_node(());
        }
        for &(a, b, _) in &self.edges {
            g.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
        }
        !is_cyclic_directed(&g)
    }

    fn node_index(&mut self, id: String) -> usize {
        match self.nodes.iter().position(|n| n.id == id) {
            Some(i) => i,
            None => {
                self.nodes.push(DotNode { id, label: None });
                self.nodes.len() - 1
            }
        }
    }
}

fn id_text(id: &Id) -> String {
    match id {
        Id::Escaped(s) => {
            let inner = s.strip_prefix('"').and_then(|t| t.strip_suffix('"')).unwrap_or(s);
            inner.replace("\\\"", "\"").replace("\\\\", "\\")
        }
        Id::Html(s) | Id::Plain(s) | Id::Anonymous(s) => s.clone(),
    }
}

fn label_of(attrs: &[Attribute]) -> Option<String> {
    attrs
        .iter()
        .find(|a| id_text(&a.0) == "label")
        .map(|a| id_text(&a.1))
}

fn vertex_id(v: &Vertex) -> Result<String> {
    match v {
        Vertex::N(n) => Ok(id_text(&n.0)),
        Vertex::S(_) => Err(Error::Parse("subgraph endpoints are not supported".into())),
    }
}

/// Parses a `digraph` with node and edge statements; attributes other than `label` are ignored.
pub fn parse_dot(text: &str) -> Result<DotGraph> {
    let graph = graphviz_rust::parse(text).map_err(Error::Parse)?;
    let (id, stmts) = match graph {
        Graph::DiGraph { id, stmts, .. } => (id, stmts),
        Graph::Graph { .. } => return Err(Error::Parse("expected a digraph".into())),
    };
    let mut g = DotGraph {
        name: id_text(&id),
        nodes: Vec::new(),
        edges: Vec::new(),
    };
    for stmt in stmts {
        match stmt {
            Stmt::Node(n) => {
                let i = g.node_index(id_text(&n.id.0));
                if let Some(l) = label_of(&n.attributes) {
                    g.nodes[i].label = Some(l);
                }
            }
            Stmt::Edge(e) => {
                let chain = match &e.ty {
                    EdgeTy::Pair(a, b) => vec![vertex_id(a)?, vertex_id(b)?],
                    EdgeTy::Chain(vs) => vs.iter().map(vertex_id).collect::<Result<_>>()?,
                };
                let label = label_of(&e.attributes);
                let idx: Vec<usize> = chain.into_iter().map(|v| g.node_index(v)).collect();
                for w in idx.windows(2) {
                    g.edges.push((w[0], w[1], label.clone()));
                }
            }
            Stmt::Subgraph(_) => return Err(Error::Parse("subgraphs are not supported".into())),
            Stmt::Attribute(_) | Stmt::GAttribute(_) => {}
        }
    }
    Ok(g)
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "unknown".to_string(), |v| v.to_string())
}

/// Orbit table of a cominuscule family, one row per poset node.
pub fn orbit_table_tsv(d: &HasseDiagram<OrbitNode>, loci: &LociReport) -> String {
    let mut out =
        String::from("label\tdim\tidentifiable\tdecomposition_locus_dim\tsmooth\tterracini\n");
    let terracini = serde_json::to_value(loci.terracini).expect("enum serializes");
    for n in &d.nodes {
        let ident = serde_json::to_value(n.identifiability).expect("enum serializes");
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            n.label,
            opt(n.dim),
            ident.as_str().unwrap_or_default(),
            n.decomposition_locus_dim.map_or_else(|| "-".to_string(), |v| v.to_string()),
            n.smooth_in_secant,
            if n.in_terracini_image { terracini.as_str().unwrap_or_default() } else { "none" },
        )
        .expect("string write");
    }
    out
}

/// Triplet enumeration with dimensions and tangential identifiability.
pub fn iso_table_tsv(d: &HasseDiagram<IsoOrbit>) -> String {
    let mut out = String::from("orbit\tr\th\tt\tdim\ttangential_identifiable\n");
    for o in &d.nodes {
        let t = o.triplet;
        writeln!(
            out,
            "{t}\t{}\t{}\t{}\t{}\t{}",
            t.r,
            t.h,
            t.t,
            o.dim,
            t.tangential_identifiable()
        )
        .expect("string write");
    }
    out
}
