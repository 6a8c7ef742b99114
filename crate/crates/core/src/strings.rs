//! Words in arrows and formal inverses, string and band modules, generalized strings
//! and layered graphs.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::is_prime;
use crate::presentation::{FieldSpec, Path, QuiverPresentation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StringError {
    #[error("letters {0} and {1} do not connect")]
    BrokenWalk(usize, usize),
    #[error("letter {0} is followed by its own inverse")]
    SelfInverse(usize),
    #[error("directed run ending at letter {0} contains a relation")]
    RelationInRun(usize),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("not a string algebra")]
    NotString,
    #[error("band word must close up and contain arrows in both directions")]
    NotCyclic,
    #[error("band word is a proper power")]
    ProperPower,
    #[error("polynomial must be monic with nonzero constant term")]
    BadPolynomial,
    #[error("polynomial is reducible over the field")]
    Reducible,
    #[error("bands over Q are limited to linear polynomials")]
    UnsupportedField,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dir {
    Direct,
    Inverse,
}

/// Letter `k` of a word joins nodes `k-1` and `k`. A direct letter points from node
/// `k` to node `k-1`, an inverse letter from node `k-1` to node `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub arrow: usize,
    pub dir: Dir,
}

impl Letter {
    pub fn direct(arrow: usize) -> Self {
        Letter { arrow, dir: Dir::Direct }
    }

    pub fn inverse(arrow: usize) -> Self {
        Letter { arrow, dir: Dir::Inverse }
    }

    pub fn flipped(self) -> Self {
        let dir = match self.dir {
            Dir::Direct => Dir::Inverse,
            Dir::Inverse => Dir::Direct,
        };
        Letter { arrow: self.arrow, dir }
    }

    /// Node on the left end of this letter.
    pub fn left_node(&self, pres: &QuiverPresentation) -> usize {
        match self.dir {
            Dir::Direct => pres.target(self.arrow),
            Dir::Inverse => pres.source(self.arrow),
        }
    }

    pub fn right_node(&self, pres: &QuiverPresentation) -> usize {
        match self.dir {
            Dir::Direct => pres.source(self.arrow),
            Dir::Inverse => pres.target(self.arrow),
        }
    }
}

pub fn reverse_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.flipped()).collect()
}

/// Letters of a path read downwards from its start, left to right.
pub fn descending_letters(p: &Path) -> Vec<Letter> {
    p.arrows.iter().map(|&a| Letter::inverse(a)).collect()
}

/// Letters climbing a path from its end up to its start, left to right.
pub fn ascending_letters(p: &Path) -> Vec<Letter> {
    p.arrows.iter().rev().map(|&a| Letter::direct(a)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StringWord {
    pub base: usize,
    pub letters: Vec<Letter>,
}

impl PartialOrd for StringWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StringWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters.cmp(&other.letters).then(self.base.cmp(&other.base))
    }
}

/// Position of a node with respect to its neighbouring letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeShape {
    pub out_left: bool,
    pub in_left: bool,
    pub out_right: bool,
    pub in_right: bool,
}

impl NodeShape {
    pub fn is_top(&self) -> bool {
        !self.in_left && !self.in_right
    }

    pub fn is_socle(&self) -> bool {
        !self.out_left && !self.out_right
    }
}

impl StringWord {
    pub fn trivial(v: usize) -> Self {
        StringWord { base: v, letters: Vec::new() }
    }

    /// Word from a nonempty letter list, base taken from the first letter.
    pub fn from_letters(pres: &QuiverPresentation, letters: Vec<Letter>, fallback: usize) -> Self {
        let base = letters.first().map_or(fallback, |l| l.left_node(pres));
        StringWord { base, letters }
    }

    /// The uniserial word of a path, top on the left.
    pub fn from_path(p: &Path) -> Self {
        StringWord { base: p.base, letters: descending_letters(p) }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn nodes(&self, pres: &QuiverPresentation) -> Vec<usize> {
        let mut v = vec![self.base];
        v.extend(self.letters.iter().map(|l| l.right_node(pres)));
        v
    }

    pub fn shape(&self, k: usize) -> NodeShape {
        let left = if k > 0 { Some(self.letters[k - 1].dir) } else { None };
        let right = self.letters.get(k).map(|l| l.dir);
        NodeShape {
            out_left: left == Some(Dir::Direct),
            in_left: left == Some(Dir::Inverse),
            out_right: right == Some(Dir::Inverse),
            in_right: right == Some(Dir::Direct),
        }
    }

    pub fn tops(&self) -> Vec<usize> {
        (0..=self.len()).filter(|&k| self.shape(k).is_top()).collect()
    }

    pub fn socles(&self) -> Vec<usize> {
        (0..=self.len()).filter(|&k| self.shape(k).is_socle()).collect()
    }

    pub fn reversed(&self, pres: &QuiverPresentation) -> Self {
        let base = self.letters.last().map_or(self.base, |l| l.right_node(pres));
        StringWord { base, letters: reverse_letters(&self.letters) }
    }

    pub fn canonical(&self, pres: &QuiverPresentation) -> Self {
        let r = self.reversed(pres);
        if r < *self {
            r
        } else {
            self.clone()
        }
    }

    pub fn concat(&self, pres: &QuiverPresentation, other: &StringWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().copied());
        StringWord::from_letters(pres, letters, self.base)
    }

    /// Left leg of the top at node `k`, as a path from the top.
    pub fn left_leg(&self, k: usize) -> Vec<usize> {
        let mut arrows = Vec::new();
        let mut i = k;
        while i > 0 && self.letters[i - 1].dir == Dir::Direct {
            arrows.push(self.letters[i - 1].arrow);
            i -= 1;
        }
        arrows
    }

    pub fn right_leg(&self, k: usize) -> Vec<usize> {
        self.letters[k..].iter().take_while(|l| l.dir == Dir::Inverse).map(|l| l.arrow).collect()
    }

    /// Paths (q_i, p_i) hanging left and right from each top, left to right.
    pub fn decomposition(&self, pres: &QuiverPresentation) -> Vec<(Path, Path)> {
        let nodes = self.nodes(pres);
        self.tops()
            .into_iter()
            .map(|k| {
                let q = Path { base: nodes[k], arrows: self.left_leg(k) };
                let p = Path { base: nodes[k], arrows: self.right_leg(k) };
                (q, p)
            })
            .collect()
    }

    pub fn from_decomposition(pres: &QuiverPresentation, parts: &[(Path, Path)]) -> Self {
        let mut letters = Vec::new();
        for (q, p) in parts {
            letters.extend(ascending_letters(q));
            letters.extend(descending_letters(p));
        }
        let fallback = parts.first().map_or(0, |(q, _)| q.base);
        StringWord::from_letters(pres, letters, fallback)
    }

    pub fn validate(&self, pres: &QuiverPresentation) -> Result<(), StringError> {
        let n = self.len();
        if self.base >= pres.vertex_count() {
            return Err(StringError::UnknownVertex(self.base.to_string()));
        }
        if self.letters.iter().any(|l| l.arrow >= pres.arrow_count()) {
            return Err(StringError::UnknownArrow("?".into()));
        }
        let mut at = self.base;
        for (i, l) in self.letters.iter().enumerate() {
            if l.left_node(pres) != at {
                return Err(StringError::BrokenWalk(i, i + 1));
            }
            at = l.right_node(pres);
        }
        for k in 1..n {
            let (a, b) = (self.letters[k - 1], self.letters[k]);
            if a.arrow == b.arrow && a.dir != b.dir {
                return Err(StringError::SelfInverse(k - 1));
            }
        }
        let mut i = 0;
        while i < n {
            let dir = self.letters[i].dir;
            let mut j = i;
            while j + 1 < n && self.letters[j + 1].dir == dir {
                j += 1;
            }
            let run: Vec<usize> = match dir {
                Dir::Inverse => (i..=j).map(|t| self.letters[t].arrow).collect(),
                Dir::Direct => (i..=j).rev().map(|t| self.letters[t].arrow).collect(),
            };
            let path = Path { base: pres.source(run[0]), arrows: run };
            if !pres.is_nonzero(&path) {
                return Err(StringError::RelationInRun(j));
            }
            i = j + 1;
        }
        Ok(())
    }

    pub fn text(&self, pres: &QuiverPresentation) -> String {
        if self.letters.is_empty() {
            return format!("@{}", pres.vertex_name(self.base));
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| match l.dir {
                Dir::Direct => pres.arrow_name(l.arrow).to_string(),
                Dir::Inverse => format!("{}~", pres.arrow_name(l.arrow)),
            })
            .collect();
        parts.join(" ")
    }

    /// Zig-zag rendering such as `3 <- 6 -> 2`.
    pub fn walk_text(&self, pres: &QuiverPresentation, mark: Option<usize>) -> String {
        let nodes = self.nodes(pres);
        let label = |k: usize| {
            let v = pres.vertex_name(nodes[k]);
            if mark == Some(k) {
                format!("[{v}]")
            } else {
                v.to_string()
            }
        };
        let mut s = label(0);
        for (i, l) in self.letters.iter().enumerate() {
            s.push_str(match l.dir {
                Dir::Direct => " <- ",
                Dir::Inverse => " -> ",
            });
            s.push_str(&label(i + 1));
        }
        s
    }
}

pub fn parse_letters(pres: &QuiverPresentation, text: &str) -> Result<StringWord, StringError> {
    let t = text.trim();
    if let Some(v) = t.strip_prefix('@') {
        let id = pres
            .quiver
            .vertex_id(v.trim())
            .ok_or_else(|| StringError::UnknownVertex(v.trim().to_string()))?;
        return Ok(StringWord::trivial(id));
    }
    let mut letters = Vec::new();
    for tok in t.split_whitespace() {
        let (name, dir) = match tok.strip_suffix('~') {
            Some(n) => (n, Dir::Inverse),
            None => (tok, Dir::Direct),
        };
        let arrow = pres.quiver.arrow_id(name).ok_or_else(|| StringError::UnknownArrow(name.into()))?;
        letters.push(Letter { arrow, dir });
    }
    if letters.is_empty() {
        return Err(StringError::UnknownVertex(String::new()));
    }
    Ok(StringWord::from_letters(pres, letters, 0))
}

/// Validated word in canonical orientation.
pub fn make_string(pres: &QuiverPresentation, word: StringWord) -> Result<StringWord, StringError> {
    word.validate(pres)?;
    Ok(word.canonical(pres))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub vertex: usize,
    pub label: String,
    pub layer: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub arrow: usize,
    pub label: String,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayeredGraph {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
    pub pools: Vec<Vec<usize>>,
    pub anchor: Option<usize>,
}

impl LayeredGraph {
    pub fn new(pres: &QuiverPresentation, vertices: &[usize], edges: &[(usize, usize, usize)]) -> Self {
        let n = vertices.len();
        let mut layer = vec![0usize; n];
        // Longest distance from a top; the edge relation is acyclic.
        for _ in 0..n {
            let mut changed = false;
            for &(_, from, to) in edges {
                if layer[to] < layer[from] + 1 {
                    layer[to] = layer[from] + 1;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        LayeredGraph {
            nodes: vertices
                .iter()
                .zip(&layer)
                .map(|(&v, &l)| GraphNode { vertex: v, label: pres.vertex_name(v).to_string(), layer: l })
                .collect(),
            edges: edges
                .iter()
                .map(|&(a, from, to)| GraphEdge { arrow: a, label: pres.arrow_name(a).to_string(), from, to })
                .collect(),
            pools: Vec::new(),
            anchor: None,
        }
    }

    pub fn of_word(pres: &QuiverPresentation, w: &StringWord) -> Self {
        let nodes = w.nodes(pres);
        let edges: Vec<(usize, usize, usize)> = w
            .letters
            .iter()
            .enumerate()
            .map(|(i, l)| match l.dir {
                Dir::Direct => (l.arrow, i + 1, i),
                Dir::Inverse => (l.arrow, i, i + 1),
            })
            .collect();
        LayeredGraph::new(pres, &nodes, &edges)
    }

    pub fn layer_count(&self) -> usize {
        self.nodes.iter().map(|n| n.layer + 1).max().unwrap_or(0)
    }

    pub fn layers(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.layer_count()];
        for (i, n) in self.nodes.iter().enumerate() {
            out[n.layer].push(i);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringModule {
    pub word: StringWord,
    pub dim_vector: Vec<usize>,
    pub tops: Vec<(usize, usize)>,
    pub socle: Vec<(usize, usize)>,
    pub graph: LayeredGraph,
}

impl StringModule {
    pub fn dim(&self) -> usize {
        self.dim_vector.iter().sum()
    }
}

pub fn string_module(pres: &QuiverPresentation, word: &StringWord) -> StringModule {
    let nodes = word.nodes(pres);
    let mut dim_vector = vec![0; pres.vertex_count()];
    for &v in &nodes {
        dim_vector[v] += 1;
    }
    StringModule {
        word: word.clone(),
        dim_vector,
        tops: word.tops().into_iter().map(|k| (k, nodes[k])).collect(),
        socle: word.socles().into_iter().map(|k| (k, nodes[k])).collect(),
        graph: LayeredGraph::of_word(pres, word),
    }
}

/// Eventually periodic continuation of a word, in reading order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ray {
    #[serde(rename = "pre")]
    pub preperiod: Vec<Letter>,
    #[serde(rename = "per")]
    pub period: Vec<Letter>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralizedString {
    pub left: Option<Ray>,
    pub core: StringWord,
    pub right: Option<Ray>,
    pub anchor: usize,
}

impl GeneralizedString {
    pub fn finite(core: StringWord, anchor: usize) -> Self {
        GeneralizedString { left: None, core, right: None, anchor }
    }

    pub fn is_finite(&self) -> bool {
        self.left.is_none() && self.right.is_none()
    }

    /// Letters added on the left by unrolling `steps` periods.
    fn left_letters(&self, steps: usize) -> Vec<Letter> {
        let mut out = Vec::new();
        if let Some(r) = &self.left {
            for _ in 0..steps {
                out.extend(r.period.iter().copied());
            }
            out.extend(r.preperiod.iter().copied());
        }
        out
    }

    fn right_letters(&self, steps: usize) -> Vec<Letter> {
        let mut out = Vec::new();
        if let Some(r) = &self.right {
            out.extend(r.preperiod.iter().copied());
            for _ in 0..steps {
                out.extend(r.period.iter().copied());
            }
        }
        out
    }

    /// Finite segment and the position of the anchor in it.
    pub fn window_with_anchor(
        &self,
        pres: &QuiverPresentation,
        left_steps: usize,
        right_steps: usize,
    ) -> (StringWord, usize) {
        let mut letters = self.left_letters(left_steps);
        let shift = letters.len();
        letters.extend(self.core.letters.iter().copied());
        letters.extend(self.right_letters(right_steps));
        (StringWord::from_letters(pres, letters, self.core.base), self.anchor + shift)
    }

    pub fn window(&self, pres: &QuiverPresentation, left_steps: usize, right_steps: usize) -> StringWord {
        self.window_with_anchor(pres, left_steps, right_steps).0
    }

    /// The same generalized string read right to left.
    pub fn mirrored(&self, pres: &QuiverPresentation) -> Self {
        let flip = |r: &Ray| Ray { preperiod: reverse_letters(&r.preperiod), period: reverse_letters(&r.period) };
        GeneralizedString {
            left: self.right.as_ref().map(flip),
            core: self.core.reversed(pres),
            right: self.left.as_ref().map(flip),
            anchor: self.core.len() - self.anchor,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dir::Direct => write!(f, "direct"),
            Dir::Inverse => write!(f, "inverse"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandModule {
    pub word: StringWord,
    /// Monic polynomial, coefficients from the constant term up.
    pub poly: Vec<i64>,
}

impl BandModule {
    pub fn size(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.size() * self.word.len()
    }
}

fn poly_rem(p: u64, num: &[u64], den: &[u64]) -> Vec<u64> {
    let mut r = num.to_vec();
    let dl = den.len();
    let lead_inv = crate::linalg::Field::inv(&crate::linalg::PrimeField::new(p), &den[dl - 1]);
    while r.len() >= dl {
        let c = r[r.len() - 1] * lead_inv % p;
        let shift = r.len() - dl;
        for (i, d) in den.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * d % p) % p;
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

/// Irreducibility over F_p by trial division with monic polynomials.
pub fn is_irreducible_mod_p(poly: &[i64], p: u64) -> bool {
    let f: Vec<u64> = poly.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u128).pow(d as u32);
        if count > 2_000_000 {
            return true;
        }
        for idx in 0..count as u64 {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                g.push(x % p);
                x /= p;
            }
            g.push(1);
            if poly_rem(p, &f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// True when the cyclic word is a proper power of a shorter word.
pub fn is_proper_power(letters: &[Letter]) -> bool {
    let n = letters.len();
    (1..n).any(|d| n % d == 0 && (0..n).all(|i| letters[i] == letters[i % d]))
}

pub fn make_band(
    pres: &QuiverPresentation,
    word: StringWord,
    poly: Vec<i64>,
) -> Result<BandModule, StringError> {
    if !pres.classify().has_string_combinatorics {
        return Err(StringError::NotString);
    }
    let n = word.len();
    let has_both = word.letters.iter().any(|l| l.dir == Dir::Direct)
        && word.letters.iter().any(|l| l.dir == Dir::Inverse);
    if n == 0 || !has_both || *word.nodes(pres).last().unwrap() != word.base {
        return Err(StringError::NotCyclic);
    }
    if is_proper_power(&word.letters) {
        return Err(StringError::ProperPower);
    }
    let doubled = word.concat(pres, &word);
    doubled.validate(pres)?;
    if poly.len() < 2 || *poly.last().unwrap() != 1 || poly[0] == 0 {
        return Err(StringError::BadPolynomial);
    }
    match pres.field {
        FieldSpec::Prime(p) => {
            if poly[0].rem_euclid(p as i64) == 0 {
                return Err(StringError::BadPolynomial);
            }
            if !is_prime(p) || !is_irreducible_mod_p(&poly, p) {
                return Err(StringError::Reducible);
            }
        }
        FieldSpec::Rational => {
            if poly.len() != 2 {
                return Err(StringError::UnsupportedField);
            }
        }
    }
    Ok(BandModule { word, poly })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    pub fn lambda22() -> QuiverPresentation {
        parse_presentation(include_str!("../algebras/lambda22.alg")).unwrap()
    }

    pub fn example_f() -> QuiverPresentation {
        parse_presentation(include_str!("../algebras/example_f.alg")).unwrap()
    }

    #[test]
    fn peak_word_of_projective() {
        let p = lambda22();
        let w = make_string(&p, parse_letters(&p, "a b~").unwrap()).unwrap();
        let m = string_module(&p, &w);
        assert_eq!(m.dim(), 3);
        assert_eq!(m.tops.len(), 1);
        assert_eq!(m.socle.len(), 2);
    }

    #[test]
    fn relation_in_run_rejected() {
        let p = lambda22();
        let w = parse_letters(&p, "a b").unwrap();
        assert!(matches!(make_string(&p, w), Err(StringError::RelationInRun(_))));
        let w = parse_letters(&p, "a a~").unwrap();
        assert!(matches!(make_string(&p, w), Err(StringError::SelfInverse(0))));
    }

    #[test]
    fn uniserial_layers() {
        let p = example_f();
        let w = make_string(&p, parse_letters(&p, "x7_6~ x6_3~").unwrap()).unwrap();
        let m = string_module(&p, &w);
        let labels: Vec<Vec<&str>> = m
            .graph
            .layers()
            .iter()
            .map(|l| l.iter().map(|&i| m.graph.nodes[i].label.as_str()).collect())
            .collect();
        assert_eq!(labels, vec![vec!["7"], vec!["6"], vec!["3"]]);
    }

    #[test]
    fn reversal_gives_same_canonical_word() {
        let p = example_f();
        let w = parse_letters(&p, "x1_2 x1_3~ x6_3").unwrap();
        let r = w.reversed(&p);
        assert_eq!(make_string(&p, w).unwrap(), make_string(&p, r).unwrap());
    }

    #[test]
    fn decomposition_round_trip() {
        let p = example_f();
        let w = parse_letters(&p, "x6_3 x7_6 x7_9~ x8_9 x8_6~ x6_2~ x1_2 x1_3~").unwrap();
        w.validate(&p).unwrap();
        let d = w.decomposition(&p);
        assert_eq!(StringWord::from_decomposition(&p, &d), w);
    }

    #[test]
    fn band_checks() {
        let p = lambda22();
        let w = parse_letters(&p, "a b~").unwrap();
        let b = make_band(&p, w.clone(), vec![-1, 1]).unwrap();
        assert_eq!(b.dim(), 2);
        assert_eq!(make_band(&p, w.clone(), vec![0, 0, 1]), Err(StringError::BadPolynomial));
        assert_eq!(make_band(&p, w.clone(), vec![-1, 0, 1]), Err(StringError::Reducible));
        let ww = w.concat(&p, &w);
        assert_eq!(make_band(&p, ww, vec![-1, 1]), Err(StringError::ProperPower));
        assert!(make_band(&p, w, vec![2, 0, 1]).is_ok() || !is_irreducible_mod_p(&[2, 0, 1], 101));
    }
}
