//! Quivers with relations: parsing, printing, the basis of nonzero paths and classification.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{rref, Field, Matrix, PrimeField, RationalField};

pub const DEFAULT_PRIME: u64 = 101;
pub const DEFAULT_LENGTH_CAP: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: {msg}")]
    Semantic { line: usize, msg: String },
    #[error("infinite-dimensional algebra: a nonzero path of length {0} exists")]
    InfiniteDimensional(usize),
    #[error("{0}")]
    Path(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "{p}"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertex_id(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_id(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn out_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].source == v).collect()
    }

    pub fn in_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].target == v).collect()
    }
}

/// A path, stored with its arrows in the order they are applied.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path {
    pub base: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { base: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn start(&self) -> usize {
        self.base
    }

    pub fn end(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.base, |&a| q.arrows[a].target)
    }

    pub fn first_arrow(&self) -> Option<usize> {
        self.arrows.first().copied()
    }

    pub fn last_arrow(&self) -> Option<usize> {
        self.arrows.last().copied()
    }

    /// `self` followed by `after`, i.e. the composite "after ∘ self".
    pub fn then(&self, after: &Path) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.extend(after.arrows.iter().copied());
        Path { base: self.base, arrows }
    }

    pub fn sort_key(&self) -> (usize, usize, Vec<usize>) {
        (self.arrows.len(), self.base, self.arrows.clone())
    }

    pub fn contains_subpath(&self, sub: &Path) -> bool {
        let n = sub.arrows.len();
        n > 0 && self.arrows.windows(n).any(|w| w == sub.arrows.as_slice())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearRelation {
    pub terms: Vec<(i64, Path)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverPresentation {
    pub name: String,
    pub field: FieldSpec,
    pub quiver: Quiver,
    pub monomial_relations: Vec<Path>,
    pub linear_relations: Vec<LinearRelation>,
    pub nilpotency_bound: usize,
    pub basis: Vec<Path>,
    /// Paths free of monomial relations that vanish because of the linear relations.
    pub killed: Vec<Path>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraClass {
    pub is_monomial: bool,
    pub is_special_biserial: bool,
    pub is_string: bool,
    pub is_left_serial: bool,
    /// Monomial, at most two arrows leave each vertex and every arrow has at most one
    /// nonzero continuation on each side. In-degree is unrestricted.
    pub has_string_combinatorics: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathProduct {
    Zero,
    Basis(Path),
    /// Nonzero but rewritten by the linear relations.
    Reduced(Path),
}

fn sorted_paths(mut v: Vec<Path>) -> Vec<Path> {
    v.sort_by_key(|p| p.sort_key());
    v
}

impl QuiverPresentation {
    pub fn build(
        name: String,
        field: FieldSpec,
        quiver: Quiver,
        monomial_relations: Vec<Path>,
        linear_relations: Vec<LinearRelation>,
    ) -> Result<Self, PresentationError> {
        let mut pres = QuiverPresentation {
            name,
            field,
            quiver,
            monomial_relations,
            linear_relations,
            nilpotency_bound: 0,
            basis: Vec::new(),
            killed: Vec::new(),
        };
        let free = pres.monomial_free_paths(DEFAULT_LENGTH_CAP)?;
        let (basis, killed) = match pres.field {
            FieldSpec::Prime(p) => linear_reduction(&PrimeField::new(p), &pres, &free).summary(),
            FieldSpec::Rational => linear_reduction(&RationalField, &pres, &free).summary(),
        };
        pres.nilpotency_bound = basis.iter().map(|p| p.len()).max().unwrap_or(0) + 1;
        pres.basis = basis;
        pres.killed = killed;
        Ok(pres)
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver.arrows.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.quiver.vertices[v]
    }

    pub fn arrow_name(&self, a: usize) -> &str {
        &self.quiver.arrows[a].name
    }

    pub fn source(&self, a: usize) -> usize {
        self.quiver.arrows[a].source
    }

    pub fn target(&self, a: usize) -> usize {
        self.quiver.arrows[a].target
    }

    pub fn max_relation_length(&self) -> usize {
        let m = self.monomial_relations.iter().map(|p| p.len());
        let l = self.linear_relations.iter().flat_map(|r| r.terms.iter().map(|(_, p)| p.len()));
        m.chain(l).max().unwrap_or(2).max(2)
    }

    /// True when no monomial relation occurs in `p`.
    pub fn is_monomial_free(&self, p: &Path) -> bool {
        !self.monomial_relations.iter().any(|r| p.contains_subpath(r))
    }

    /// True when `p` is nonzero in the algebra.
    pub fn is_nonzero(&self, p: &Path) -> bool {
        self.is_monomial_free(p) && !self.killed.contains(p)
    }

    pub fn is_basis_path(&self, p: &Path) -> bool {
        self.basis.binary_search_by_key(&p.sort_key(), |b| b.sort_key()).is_ok()
    }

    pub fn check_path(&self, p: &Path) -> Result<(), PresentationError> {
        if p.base >= self.vertex_count() {
            return Err(PresentationError::Path(format!("unknown vertex index {}", p.base)));
        }
        let mut at = p.base;
        for &a in &p.arrows {
            if a >= self.arrow_count() || self.source(a) != at {
                return Err(PresentationError::Path("arrows do not compose".into()));
            }
            at = self.target(a);
        }
        Ok(())
    }

    /// The product "q after p".
    pub fn path_product(&self, q: &Path, p: &Path) -> Result<PathProduct, PresentationError> {
        if p.end(&self.quiver) != q.start() {
            return Err(PresentationError::Path(format!(
                "cannot compose {} after {}",
                self.path_text(q),
                self.path_text(p)
            )));
        }
        let qp = p.then(q);
        Ok(if !self.is_nonzero(&qp) {
            PathProduct::Zero
        } else if self.is_basis_path(&qp) {
            PathProduct::Basis(qp)
        } else {
            PathProduct::Reduced(qp)
        })
    }

    /// All paths free of monomial relations, sorted; errors if some has length `cap`.
    pub fn monomial_free_paths(&self, cap: usize) -> Result<Vec<Path>, PresentationError> {
        let mut out = Vec::new();
        let mut frontier: Vec<Path> = (0..self.vertex_count()).map(Path::trivial).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for a in self.quiver.out_arrows(p.end(&self.quiver)) {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    let ext = Path { base: p.base, arrows };
                    if self.monomial_relations.iter().any(|r| ext.arrows.ends_with(&r.arrows)) {
                        continue;
                    }
                    if ext.len() >= cap {
                        return Err(PresentationError::InfiniteDimensional(cap));
                    }
                    next.push(ext);
                }
            }
            out.append(&mut frontier);
            frontier = next;
        }
        Ok(sorted_paths(out))
    }

    /// Nonzero paths starting at `v`.
    pub fn basis_from(&self, v: usize) -> Vec<Path> {
        self.basis.iter().filter(|p| p.base == v).cloned().collect()
    }

    /// Arrows `b` with `b ∘ p` nonzero.
    pub fn continuations(&self, p: &Path) -> Vec<usize> {
        self.quiver
            .out_arrows(p.end(&self.quiver))
            .into_iter()
            .filter(|&b| {
                let mut arrows = p.arrows.clone();
                arrows.push(b);
                self.is_nonzero(&Path { base: p.base, arrows })
            })
            .collect()
    }

    /// Arrows `b` with `p ∘ b` nonzero.
    pub fn precursors(&self, p: &Path) -> Vec<usize> {
        self.quiver
            .in_arrows(p.base)
            .into_iter()
            .filter(|&b| {
                let mut arrows = vec![b];
                arrows.extend(p.arrows.iter().copied());
                self.is_nonzero(&Path { base: self.source(b), arrows })
            })
            .collect()
    }

    pub fn classify(&self) -> AlgebraClass {
        let q = &self.quiver;
        let n = self.vertex_count();
        let is_monomial = self.linear_relations.is_empty();
        let out_ok = (0..n).all(|v| q.out_arrows(v).len() <= 2);
        let in_ok = (0..n).all(|v| q.in_arrows(v).len() <= 2);
        let unique = (0..self.arrow_count()).all(|a| {
            let single = Path { base: self.source(a), arrows: vec![a] };
            self.continuations(&single).len() <= 1 && self.precursors(&single).len() <= 1
        });
        let is_special_biserial = out_ok && in_ok && unique;
        AlgebraClass {
            is_monomial,
            is_special_biserial,
            is_string: is_special_biserial && is_monomial,
            is_left_serial: (0..n).all(|v| q.out_arrows(v).len() <= 1),
            has_string_combinatorics: is_monomial && out_ok && unique,
        }
    }

    pub fn path_text(&self, p: &Path) -> String {
        if p.is_trivial() {
            return format!("@{}", self.vertex_name(p.base));
        }
        let names: Vec<&str> = p.arrows.iter().rev().map(|&a| self.arrow_name(a)).collect();
        names.join("*")
    }

    /// Path along vertices, e.g. `7->6->3`.
    pub fn path_vertices(&self, p: &Path) -> String {
        let mut s = self.vertex_name(p.base).to_string();
        for &a in &p.arrows {
            s.push_str("->");
            s.push_str(self.vertex_name(self.target(a)));
        }
        s
    }

    pub fn parse_path(&self, text: &str) -> Result<Path, PresentationError> {
        let t = text.trim();
        if let Some(v) = t.strip_prefix('@') {
            let id = self
                .quiver
                .vertex_id(v.trim())
                .ok_or_else(|| PresentationError::Path(format!("unknown vertex `{v}`")))?;
            return Ok(Path::trivial(id));
        }
        let mut arrows = Vec::new();
        for name in t.split('*').map(str::trim).rev() {
            let a = self
                .quiver
                .arrow_id(name)
                .ok_or_else(|| PresentationError::Path(format!("unknown arrow `{name}`")))?;
            arrows.push(a);
        }
        if arrows.is_empty() {
            return Err(PresentationError::Path("empty path".into()));
        }
        let p = Path { base: self.source(arrows[0]), arrows };
        self.check_path(&p)?;
        Ok(p)
    }

    /// Canonical text in the input grammar.
    pub fn to_dsl(&self) -> String {
        let mut s = format!("algebra {}\nfield {}\n", self.name, self.field);
        if !self.quiver.vertices.is_empty() {
            s.push_str(&format!("vertex {}\n", self.quiver.vertices.join(" ")));
        }
        for a in &self.quiver.arrows {
            s.push_str(&format!(
                "arrow {}: {} -> {}\n",
                a.name,
                self.vertex_name(a.source),
                self.vertex_name(a.target)
            ));
        }
        for r in &self.monomial_relations {
            s.push_str(&format!("relation {}\n", self.path_text(r).replace('*', " * ")));
        }
        for r in &self.linear_relations {
            let terms: Vec<String> = r
                .terms
                .iter()
                .map(|(c, p)| format!("{} {}", c, self.path_text(p).replace('*', " * ")))
                .collect();
            s.push_str(&format!("linrel {} = 0\n", terms.join(" + ")));
        }
        s
    }
}

/// Normal forms modulo the linear relations.
pub struct LinearReduction<F: Field> {
    pub basis: Vec<Path>,
    /// For each rewritten path its expansion over `basis` indices.
    pub rewrite: BTreeMap<Path, Vec<(usize, F::Elem)>>,
}

impl<F: Field> LinearReduction<F> {
    fn summary(&self) -> (Vec<Path>, Vec<Path>) {
        let killed = self.rewrite.iter().filter(|(_, v)| v.is_empty()).map(|(p, _)| p.clone());
        (self.basis.clone(), sorted_paths(killed.collect()))
    }
}

pub fn linear_reduction<F: Field>(f: &F, pres: &QuiverPresentation, free: &[Path]) -> LinearReduction<F> {
    if pres.linear_relations.is_empty() {
        return LinearReduction { basis: free.to_vec(), rewrite: BTreeMap::new() };
    }
    let q = &pres.quiver;
    // Columns ordered largest first so pivots land on the larger paths.
    let mut order: Vec<Path> = free.to_vec();
    order.reverse();
    let col: HashMap<&Path, usize> = order.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for rel in &pres.linear_relations {
        let Some((_, first)) = rel.terms.first() else { continue };
        let (s, t) = (first.start(), first.end(q));
        for v in free.iter().filter(|v| v.end(q) == s) {
            for u in free.iter().filter(|u| u.start() == t) {
                let mut row = vec![f.zero(); order.len()];
                let mut nonzero = false;
                for (c, p) in &rel.terms {
                    let full = v.then(p).then(u);
                    if let Some(&j) = col.get(&full) {
                        row[j] = f.add(&row[j], &f.from_i64(*c));
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return LinearReduction { basis: free.to_vec(), rewrite: BTreeMap::new() };
    }
    let mut m = Matrix::from_rows(order.len(), &rows, f.zero());
    let pivots = rref(f, &mut m);
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let basis: Vec<Path> =
        free.iter().filter(|p| !pivot_set.contains(&col[p])).cloned().collect();
    let basis_index: HashMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut rewrite = BTreeMap::new();
    for (r, &pc) in pivots.iter().enumerate() {
        let mut expansion = Vec::new();
        for (j, p) in order.iter().enumerate() {
            if pivot_set.contains(&j) || f.is_zero(m.get(r, j)) {
                continue;
            }
            expansion.push((basis_index[p], f.neg(m.get(r, j))));
        }
        expansion.sort_by_key(|(i, _)| *i);
        rewrite.insert(order[pc].clone(), expansion);
    }
    LinearReduction { basis, rewrite }
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
}

impl Cursor<'_> {
    fn syntax(&self, at: &str, msg: impl Into<String>) -> PresentationError {
        let col = at.as_ptr() as usize - self.text.as_ptr() as usize + 1;
        PresentationError::Syntax { line: self.line, col, msg: msg.into() }
    }

    fn semantic(&self, msg: impl Into<String>) -> PresentationError {
        PresentationError::Semantic { line: self.line, msg: msg.into() }
    }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '.')
}

fn words(s: &str) -> Vec<&str> {
    s.split_whitespace().collect()
}

fn parse_factor_path(
    cur: &Cursor,
    quiver: &Quiver,
    text: &str,
) -> Result<Path, PresentationError> {
    let mut arrows = Vec::new();
    for tok in text.split('*').rev() {
        let name = tok.trim();
        if name.is_empty() {
            return Err(cur.syntax(tok, "expected arrow name"));
        }
        let a = quiver.arrow_id(name).ok_or_else(|| cur.semantic(format!("unknown arrow `{name}`")))?;
        arrows.push(a);
    }
    let base = quiver.arrows[arrows[0]].source;
    let mut at = base;
    for &a in &arrows {
        if quiver.arrows[a].source != at {
            return Err(cur.semantic(format!("relation path `{}` is not composable", text.trim())));
        }
        at = quiver.arrows[a].target;
    }
    Ok(Path { base, arrows })
}

pub fn parse_presentation(text: &str) -> Result<QuiverPresentation, PresentationError> {
    let mut name = String::from("unnamed");
    let mut field = FieldSpec::default();
    let mut quiver = Quiver::default();
    let mut monomial = Vec::new();
    let mut linear = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let cur = Cursor { line: i + 1, text: raw };
        let trimmed = line.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let (kw, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        match kw {
            "algebra" => {
                let w = words(rest);
                if w.len() != 1 || !is_ident(w[0]) {
                    return Err(cur.syntax(rest, "expected `algebra <name>`"));
                }
                name = w[0].to_string();
            }
            "field" => {
                let w = words(rest);
                field = match w.as_slice() {
                    ["Q"] => FieldSpec::Rational,
                    [p] => match p.parse::<u64>() {
                        Ok(p) if crate::linalg::is_prime(p) && p < (1 << 31) => FieldSpec::Prime(p),
                        Ok(_) => return Err(cur.semantic(format!("field size {p} is not a prime below 2^31"))),
                        Err(_) => return Err(cur.syntax(rest, "expected a prime or `Q`")),
                    },
                    _ => return Err(cur.syntax(rest, "expected `field <p|Q>`")),
                };
            }
            "vertex" => {
                let w = words(rest);
                if w.is_empty() {
                    return Err(cur.syntax(rest, "expected at least one vertex name"));
                }
                for v in w {
                    if !is_ident(v) {
                        return Err(cur.syntax(v, format!("bad vertex name `{v}`")));
                    }
                    if quiver.vertex_id(v).is_some() {
                        return Err(cur.semantic(format!("duplicate vertex `{v}`")));
                    }
                    quiver.vertices.push(v.to_string());
                }
            }
            "arrow" => {
                let Some((an, ends)) = rest.split_once(':') else {
                    return Err(cur.syntax(rest, "expected `arrow <name>: <src> -> <tgt>`"));
                };
                let an = an.trim();
                if !is_ident(an) {
                    return Err(cur.syntax(rest, format!("bad arrow name `{an}`")));
                }
                let Some((s, t)) = ends.split_once("->") else {
                    return Err(cur.syntax(ends, "expected `->`"));
                };
                let (s, t) = (s.trim(), t.trim());
                let source = quiver.vertex_id(s).ok_or_else(|| cur.semantic(format!("unknown vertex `{s}`")))?;
                let target = quiver.vertex_id(t).ok_or_else(|| cur.semantic(format!("unknown vertex `{t}`")))?;
                if quiver.arrow_id(an).is_some() {
                    return Err(cur.semantic(format!("duplicate arrow `{an}`")));
                }
                quiver.arrows.push(Arrow { name: an.to_string(), source, target });
            }
            "relation" => {
                if rest.trim().is_empty() {
                    return Err(cur.syntax(rest, "expected relation path"));
                }
                let p = parse_factor_path(&cur, &quiver, rest)?;
                if p.len() < 2 {
                    return Err(cur.semantic("relations must have length at least 2"));
                }
                monomial.push(p);
            }
            "linrel" => {
                let Some((lhs, rhs)) = rest.split_once('=') else {
                    return Err(cur.syntax(rest, "expected `= 0`"));
                };
                if rhs.trim() != "0" {
                    return Err(cur.syntax(rhs, "right-hand side must be 0"));
                }
                let mut terms = Vec::new();
                for term in lhs.split('+') {
                    let t = term.trim();
                    let Some((c, p)) = t.split_once(char::is_whitespace) else {
                        return Err(cur.syntax(term, "expected `<coef> <path>`"));
                    };
                    let c: i64 = c.parse().map_err(|_| cur.syntax(term, format!("bad coefficient `{c}`")))?;
                    let p = parse_factor_path(&cur, &quiver, p)?;
                    if p.len() < 2 {
                        return Err(cur.semantic("relation terms must have length at least 2"));
                    }
                    terms.push((c, p));
                }
                let (s, e) = (terms[0].1.start(), terms[0].1.end(&quiver));
                if terms.iter().any(|(_, p)| p.start() != s || p.end(&quiver) != e) {
                    return Err(cur.semantic("linear relation terms must be parallel paths"));
                }
                linear.push(LinearRelation { terms });
            }
            _ => return Err(cur.syntax(trimmed, format!("unknown keyword `{kw}`"))),
        }
    }
    QuiverPresentation::build(name, field, quiver, monomial, linear)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LAMBDA22: &str = "algebra lambda22\nvertex e\narrow a: e -> e\narrow b: e -> e\n\
        relation a * b\nrelation b * a\nrelation a * a\nrelation b * b\n";

    #[test]
    fn single_vertex() {
        let p = parse_presentation("vertex e\n").unwrap();
        assert_eq!(p.basis, vec![Path::trivial(0)]);
        assert_eq!(p.nilpotency_bound, 1);
        let c = p.classify();
        assert!(c.is_monomial && c.is_special_biserial && c.is_string && c.is_left_serial);
    }

    #[test]
    fn lambda22_basis() {
        let p = parse_presentation(LAMBDA22).unwrap();
        assert_eq!(p.dim(), 3);
        assert_eq!(p.nilpotency_bound, 2);
        let a = p.parse_path("a").unwrap();
        let b = p.parse_path("b").unwrap();
        assert_eq!(p.path_product(&b, &a).unwrap(), PathProduct::Zero);
        assert_eq!(p.path_product(&Path::trivial(0), &a).unwrap(), PathProduct::Basis(a));
    }

    #[test]
    fn a3_has_six_paths() {
        let p = parse_presentation("vertex 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\n").unwrap();
        assert_eq!(p.dim(), 6);
        assert_eq!(p.classify().is_left_serial, true);
    }

    #[test]
    fn infinite_dimension_rejected() {
        let e = parse_presentation("vertex e\narrow a: e -> e\n").unwrap_err();
        assert!(matches!(e, PresentationError::InfiniteDimensional(_)));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let e = parse_presentation("vertex e\narrow a e -> e\n").unwrap_err();
        assert!(matches!(e, PresentationError::Syntax { line: 2, .. }));
        let e = parse_presentation("vertex e\nrelation a * a\n").unwrap_err();
        assert!(matches!(e, PresentationError::Semantic { line: 2, .. }));
        let e = parse_presentation("vertex e\narrow a: e -> e\nrelation a\n").unwrap_err();
        assert!(matches!(e, PresentationError::Semantic { .. }));
    }

    #[test]
    fn printer_round_trip() {
        let p = parse_presentation(LAMBDA22).unwrap();
        assert_eq!(parse_presentation(&p.to_dsl()).unwrap(), p);
    }

    #[test]
    fn commutative_square_identifies_paths() {
        let text = "vertex 1 2 3 4\narrow a: 1 -> 2\narrow b: 1 -> 3\narrow c: 2 -> 4\narrow d: 3 -> 4\n\
            linrel 1 c * a + -1 d * b = 0\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.dim(), 4 + 4 + 1);
        assert!(p.killed.is_empty());
        let c = p.classify();
        assert!(!c.is_monomial && c.is_special_biserial && !c.is_string);
    }

    #[test]
    fn basis_matches_subpath_scan() {
        let p = parse_presentation(LAMBDA22).unwrap();
        for path in p.monomial_free_paths(8).unwrap() {
            assert!(p.monomial_relations.iter().all(|r| !path.contains_subpath(r)));
        }
    }
}
