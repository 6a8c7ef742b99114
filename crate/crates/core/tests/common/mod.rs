#![allow(dead_code)]

use phantom_core::presentation::{parse_presentation, QuiverPresentation};
use phantom_core::strings::{GeneralizedString, LayeredGraph, StringWord};

pub fn load(name: &str) -> QuiverPresentation {
    let path = format!("{}/algebras/{name}.alg", env!("CARGO_MANIFEST_DIR"));
    parse_presentation(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// A drawing transcribed row by row: node labels with their rows, and edges from the
/// upper node to the lower one, both read left to right.
pub struct Figure {
    pub nodes: &'static [(&'static str, usize)],
    pub edges: &'static [(usize, usize)],
    pub anchor: usize,
}

/// Characteristic phantom of S1 over Example F, up to the dots.
pub const F_ONE: Figure = Figure {
    nodes: &[
        ("3", 2), ("6", 1), ("7", 0), ("9", 1), ("8", 0), ("6", 1), ("2", 2), ("1", 0),
        ("3", 1), ("6", 0), ("2", 1), ("1", 0), ("3", 1), ("6", 0), ("2", 1),
    ],
    edges: &[
        (2, 1), (1, 0), (2, 3), (4, 3), (4, 5), (5, 6), (7, 6), (7, 8), (9, 8), (9, 10), (11, 10),
        (11, 12), (13, 12), (13, 14),
    ],
    anchor: 7,
};

/// Characteristic phantom of S0 over Example H, up to the dots on both sides.
pub const H_ZERO: Figure = Figure {
    nodes: &[
        ("6", 1), ("14", 0), ("12", 1), ("10", 0), ("6", 1), ("14", 0), ("12", 1), ("10", 0), ("6", 1),
        ("2", 2), ("0", 0), ("1", 1), ("3", 0), ("5", 2), ("9", 1), ("13", 0), ("15", 1), ("16", 0),
        ("9", 1), ("13", 0), ("15", 1), ("16", 0), ("9", 1),
    ],
    edges: &[
        (1, 0), (1, 2), (3, 2), (3, 4), (5, 4), (5, 6), (7, 6), (7, 8), (8, 9), (10, 9), (10, 11),
        (12, 11), (12, 13), (14, 13), (15, 14), (15, 16), (17, 16), (17, 18), (19, 18), (19, 20),
        (21, 20), (21, 22),
    ],
    anchor: 10,
};

/// The `periods`-period window of `g` with the closing top on each infinite side
/// removed, which is where the drawings stop.
pub fn drawn_window(pres: &QuiverPresentation, g: &GeneralizedString, periods: usize) -> (LayeredGraph, usize) {
    let (w, mut anchor) = g.window_with_anchor(pres, periods, periods);
    let mut letters = w.letters.clone();
    let mut base = w.base;
    if g.left.is_some() {
        let first = letters.remove(0);
        base = first.right_node(pres);
        anchor -= 1;
    }
    if g.right.is_some() {
        letters.pop();
    }
    let trimmed = StringWord::from_letters(pres, letters, base);
    let mut graph = LayeredGraph::of_word(pres, &trimmed);
    graph.anchor = Some(anchor);
    (graph, anchor)
}

/// Node labels, rows and edge sets agree exactly.
pub fn matches_figure(g: &LayeredGraph, fig: &Figure) -> Result<(), String> {
    let got: Vec<(&str, usize)> = g.nodes.iter().map(|n| (n.label.as_str(), n.layer)).collect();
    if got != fig.nodes {
        return Err(format!("nodes differ: got {got:?}"));
    }
    let mut edges: Vec<(usize, usize)> = g.edges.iter().map(|e| (e.from, e.to)).collect();
    let mut want = fig.edges.to_vec();
    edges.sort();
    want.sort();
    if edges != want {
        return Err(format!("edges differ: got {edges:?}"));
    }
    if g.anchor != Some(fig.anchor) {
        return Err(format!("anchor differs: got {:?}", g.anchor));
    }
    Ok(())
}
