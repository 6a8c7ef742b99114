//! Rendering layered graphs as text or DOT, and the versioned JSON envelope used for
//! every stored result.

use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::{CriterionWitness, FactorizationReport};
use crate::homology::{BandSearchReport, PdimResult};
use crate::phantom::{Decision, FindimReport, PhantomResult};
use crate::presentation::QuiverPresentation;
use crate::serial::{Saguaro, SaguaroReport};
use crate::strings::{GeneralizedString, LayeredGraph, StringWord};

pub const FORMAT_NAME: &str = "phantom-artifact";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GraphFormat {
    #[default]
    Ascii,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenderOptions {
    pub format: GraphFormat,
    pub show_labels: bool,
    /// Periods unrolled on each infinite side of a generalized string.
    pub window: usize,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { format: GraphFormat::Ascii, show_labels: true, window: 2 }
    }
}

/// Graph of a finite window of `g`, anchored at the phantom's top.
pub fn generalized_graph(pres: &QuiverPresentation, g: &GeneralizedString, window: usize) -> LayeredGraph {
    let (w, anchor) = g.window_with_anchor(pres, window, window);
    let mut graph = LayeredGraph::of_word(pres, &w);
    graph.anchor = Some(anchor);
    graph
}

pub fn render_generalized(pres: &QuiverPresentation, g: &GeneralizedString, opts: &RenderOptions) -> String {
    let graph = generalized_graph(pres, g, opts.window);
    let open = (g.left.is_some(), g.right.is_some());
    match opts.format {
        GraphFormat::Ascii => ascii(&graph, opts.show_labels, open),
        GraphFormat::Dot => dot(&graph, opts.show_labels, open),
    }
}

pub fn render_graph(g: &LayeredGraph, opts: &RenderOptions) -> String {
    match opts.format {
        GraphFormat::Ascii => ascii(g, opts.show_labels, (false, false)),
        GraphFormat::Dot => dot(g, opts.show_labels, (false, false)),
    }
}

fn node_text(g: &LayeredGraph, i: usize) -> String {
    if g.anchor == Some(i) {
        format!("[{}]", g.nodes[i].label)
    } else {
        g.nodes[i].label.clone()
    }
}

/// One row per layer, one column per node; rays are marked with `...` on the top row.
fn ascii(g: &LayeredGraph, show_labels: bool, open: (bool, bool)) -> String {
    let texts: Vec<String> = (0..g.nodes.len()).map(|i| node_text(g, i)).collect();
    let width = texts.iter().map(|t| t.chars().count()).max().unwrap_or(1).max(3) + 1;
    let mut out = String::new();
    for (row, layer) in g.layers().iter().enumerate() {
        let mut cells = vec![String::new(); g.nodes.len()];
        for &i in layer {
            cells[i] = texts[i].clone();
        }
        let mut line = String::new();
        if open.0 {
            line.push_str(&format!("{:<width$}", if row == 0 { "..." } else { "" }));
        }
        for c in &cells {
            line.push_str(&format!("{c:<width$}"));
        }
        if open.1 && row == 0 {
            line.push_str("...");
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    if show_labels && !g.edges.is_empty() {
        for e in &g.edges {
            let _ = writeln!(out, "  {}: {} -> {}", e.label, texts[e.from], texts[e.to]);
        }
    }
    for (k, pool) in g.pools.iter().enumerate() {
        let names: Vec<&str> = pool.iter().map(|&i| texts[i].as_str()).collect();
        let _ = writeln!(out, "  pool {}: {}", k, names.join(" "));
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn dot(g: &LayeredGraph, show_labels: bool, open: (bool, bool)) -> String {
    let mut out = String::from("digraph G {\n  node [shape=plaintext];\n");
    dot_body(&mut out, g, show_labels, open, "n", "  ");
    out.push_str("}\n");
    out
}

/// Several graphs as clusters of one DOT document, for commands with many results.
pub fn render_dot_many(items: &[(String, LayeredGraph)], show_labels: bool) -> String {
    let mut out = String::from("digraph G {\n  node [shape=plaintext];\n");
    for (k, (title, g)) in items.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{k} {{\n    label={};", quote(title));
        dot_body(&mut out, g, show_labels, (false, false), &format!("g{k}_"), "    ");
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

fn dot_body(out: &mut String, g: &LayeredGraph, show_labels: bool, open: (bool, bool), id: &str, ind: &str) {
    for (i, n) in g.nodes.iter().enumerate() {
        let style = if g.anchor == Some(i) { ", fontname=\"bold\", shape=box" } else { "" };
        let _ = writeln!(out, "{ind}{id}{i} [label={}, layer={}{style}];", quote(&n.label), n.layer);
    }
    for (k, layer) in g.layers().iter().enumerate() {
        let ids: Vec<String> = layer.iter().map(|i| format!("{id}{i}")).collect();
        let _ = writeln!(out, "{ind}subgraph {id}layer{k} {{ rank=same; {}; }}", ids.join("; "));
    }
    for (k, pool) in g.pools.iter().enumerate() {
        let ids: Vec<String> = pool.iter().map(|i| format!("{id}{i}")).collect();
        let _ = writeln!(out, "{ind}subgraph cluster_{id}pool{k} {{ style=dotted; {}; }}", ids.join("; "));
    }
    for e in &g.edges {
        if show_labels {
            let _ = writeln!(out, "{ind}{id}{} -> {id}{} [label={}];", e.from, e.to, quote(&e.label));
        } else {
            let _ = writeln!(out, "{ind}{id}{} -> {id}{};", e.from, e.to);
        }
    }
    if !g.nodes.is_empty() {
        let last = g.nodes.len() - 1;
        if open.0 {
            let _ = writeln!(out, "{ind}{id}left [label=\"...\"];\n{ind}{id}left -> {id}0 [style=dotted, arrowhead=none];");
        }
        if open.1 {
            let _ = writeln!(out, "{ind}{id}right [label=\"...\"];\n{ind}{id}{last} -> {id}right [style=dotted, arrowhead=none];");
        }
    }
}

/// The quiver itself: arrows listed, or a DOT digraph on the vertices.
pub fn render_quiver(pres: &QuiverPresentation, format: GraphFormat) -> String {
    let mut out = String::new();
    match format {
        GraphFormat::Ascii => {
            for a in &pres.quiver.arrows {
                let _ = writeln!(out, "{}: {} -> {}", a.name, pres.vertex_name(a.source), pres.vertex_name(a.target));
            }
        }
        GraphFormat::Dot => {
            out.push_str("digraph Q {\n");
            for v in 0..pres.vertex_count() {
                let _ = writeln!(out, "  v{v} [label={}];", quote(pres.vertex_name(v)));
            }
            for a in &pres.quiver.arrows {
                let _ = writeln!(out, "  v{} -> v{} [label={}];", a.source, a.target, quote(&a.name));
            }
            out.push_str("}\n");
        }
    }
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArtifactError {
    #[error("malformed artifact: {0}")]
    Malformed(String),
    #[error("not a {FORMAT_NAME} document (found {0:?})")]
    Format(String),
    #[error("unsupported artifact version {found} (expected {FORMAT_VERSION})")]
    Version { found: u32 },
    #[error("artifact holds a {found}, expected a {expected}")]
    Kind { found: String, expected: String },
}

/// A result type that can be stored in the envelope.
pub trait Artifact: Serialize + DeserializeOwned {
    const KIND: &'static str;
}

macro_rules! artifact {
    ($($t:ty => $k:expr),* $(,)?) => {
        $(impl Artifact for $t { const KIND: &'static str = $k; })*
    };
}

artifact! {
    QuiverPresentation => "presentation",
    StringWord => "string",
    GeneralizedString => "generalized_string",
    LayeredGraph => "graph",
    PhantomResult => "phantom",
    Saguaro => "saguaro",
    SaguaroReport => "saguaro_report",
    FindimReport => "findim",
    Decision => "decision",
    CriterionWitness => "witness",
    FactorizationReport => "factorization",
    BandSearchReport => "band_search",
    PdimResult<StringWord> => "pdim",
    PdimResult<crate::presentation::Path> => "path_pdim",
    crate::phantom::Approximation => "approximation",
    crate::presentation::AlgebraClass => "classification",
}

#[derive(Serialize)]
struct EnvelopeOut<'a, T> {
    format: &'a str,
    version: u32,
    kind: &'a str,
    data: &'a T,
}

#[derive(Deserialize)]
struct EnvelopeIn {
    format: String,
    version: u32,
    kind: String,
    data: serde_json::Value,
}

pub fn encode<T: Artifact>(value: &T) -> String {
    let env = EnvelopeOut { format: FORMAT_NAME, version: FORMAT_VERSION, kind: T::KIND, data: value };
    let mut s = serde_json::to_string_pretty(&env).expect("artifact types serialize");
    s.push('\n');
    s
}

/// Kind tag of an encoded artifact, without decoding its payload.
pub fn peek_kind(text: &str) -> Result<String, ArtifactError> {
    Ok(envelope(text)?.kind)
}

fn envelope(text: &str) -> Result<EnvelopeIn, ArtifactError> {
    let env: EnvelopeIn = serde_json::from_str(text).map_err(|e| ArtifactError::Malformed(e.to_string()))?;
    if env.format != FORMAT_NAME {
        return Err(ArtifactError::Format(env.format));
    }
    if env.version != FORMAT_VERSION {
        return Err(ArtifactError::Version { found: env.version });
    }
    Ok(env)
}

pub fn decode<T: Artifact>(text: &str) -> Result<T, ArtifactError> {
    let env = envelope(text)?;
    if env.kind != T::KIND {
        return Err(ArtifactError::Kind { found: env.kind, expected: T::KIND.to_string() });
    }
    serde_json::from_value(env.data).map_err(|e| ArtifactError::Malformed(e.to_string()))
}
