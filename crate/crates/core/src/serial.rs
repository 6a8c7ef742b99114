//! Left serial algebras: uniserial modules, tree-shaped saguaros with simple socle and
//! their use as minimal approximations of simples by modules of bounded projective
//! dimension.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::{path_pdim, HomologyError, PdimResult};
use crate::linalg::{mat_mul, rank, Field, Matrix};
use crate::oracle::{Descriptor, MatrixRep, Oracle, OraclePdim};
use crate::presentation::{Path, QuiverPresentation};
use crate::strings::LayeredGraph;
use crate::with_oracle;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SerialError {
    #[error("the algebra is not left serial")]
    NotLeftSerial,
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("projective dimension undetermined after {0} syzygies")]
    Inconclusive(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
}

/// Bound on projective dimension; `None` means finite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Depth(pub Option<usize>);

impl Depth {
    pub fn admits(&self, pdim: Option<usize>) -> bool {
        match (self.0, pdim) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(d), Some(n)) => n <= d,
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(d) => write!(f, "{d}"),
            None => write!(f, "inf"),
        }
    }
}

fn require(pres: &QuiverPresentation) -> Result<(), SerialError> {
    if pres.classify().is_left_serial && pres.linear_relations.is_empty() {
        Ok(())
    } else {
        Err(SerialError::NotLeftSerial)
    }
}

/// The unique path of length `k` from `v`, if nonzero.
pub fn mast(pres: &QuiverPresentation, v: usize, k: usize) -> Option<Path> {
    let mut p = Path::trivial(v);
    for _ in 0..k {
        let c = pres.continuations(&p);
        p.arrows.push(*c.first()?);
    }
    Some(p)
}

/// Composition length of the projective at `v`.
pub fn loewy_length(pres: &QuiverPresentation, v: usize) -> usize {
    let mut k = 0;
    while mast(pres, v, k).is_some() {
        k += 1;
    }
    k
}

/// Projective dimension of Λe_v / J^ℓ e_v.
pub fn uniserial_pdim(pres: &QuiverPresentation, v: usize, len: usize) -> Result<Option<usize>, SerialError> {
    if len >= loewy_length(pres, v) {
        return Ok(Some(0));
    }
    let p = mast(pres, v, len).expect("inside the projective");
    Ok(match path_pdim(pres, &p)? {
        PdimResult::Finite(n) => Some(n + 1),
        PdimResult::Infinite { .. } => None,
    })
}

/// Smallest `k ≥ 1` such that Λe/J^k e lies in the class.
pub fn minimal_factor(pres: &QuiverPresentation, e: usize, depth: Depth) -> Result<usize, SerialError> {
    require(pres)?;
    if e >= pres.vertex_count() {
        return Err(SerialError::UnknownVertex(e));
    }
    let top = loewy_length(pres, e);
    for k in 1..=top {
        if depth.admits(uniserial_pdim(pres, e, k)?) {
            return Ok(k);
        }
    }
    Ok(top)
}

pub fn minimal_finite_pdim_factor(pres: &QuiverPresentation, e: usize) -> Result<Path, SerialError> {
    let k = minimal_factor(pres, e, Depth(None))?;
    Ok(mast(pres, e, k - 1).unwrap())
}

/// Rank of the action of `p` restricted to the span of `basis`.
fn rank_on<F: Field>(o: &Oracle<F>, rep: &MatrixRep<F>, p: &Path, basis: &[Vec<F::Elem>]) -> usize {
    if basis.is_empty() {
        return 0;
    }
    let b = Matrix::from_columns(rep.dims[p.base], basis, o.field.zero());
    rank(&o.field, &mat_mul(&o.field, &o.path_matrix(rep, p), &b))
}

/// Tops and lengths of uniserial summands, if `rep` is a direct sum of uniserials.
fn uniserial_summands<F: Field>(o: &Oracle<F>, rep: &MatrixRep<F>) -> Option<Vec<(usize, usize)>> {
    let pres = o.pres;
    let rad = o.radical(rep);
    let mut parts = Vec::new();
    for v in 0..pres.vertex_count() {
        if rep.dims[v] == 0 {
            continue;
        }
        let all: Vec<Vec<F::Elem>> = (0..rep.dims[v])
            .map(|i| (0..rep.dims[v]).map(|j| if i == j { o.field.one() } else { o.field.zero() }).collect())
            .collect();
        let top_rank = |k: usize| -> usize {
            match mast(pres, v, k) {
                None => 0,
                Some(p) => rank_on(o, rep, &p, &all) - rank_on(o, rep, &p, &rad[v]),
            }
        };
        let counts: Vec<usize> = (0..=loewy_length(pres, v)).map(top_rank).collect();
        for len in 1..counts.len() {
            for _ in 0..counts[len - 1].saturating_sub(counts[len]) {
                parts.push((v, len));
            }
        }
    }
    let reps: Vec<MatrixRep<F>> = parts.iter().map(|&(v, len)| o.realize(&uniserial(pres, v, len)).unwrap()).collect();
    let sum = o.direct_sum(&reps);
    if o.is_isomorphic(&sum, rep, 0) {
        Some(parts)
    } else {
        None
    }
}

pub fn uniserial(pres: &QuiverPresentation, v: usize, len: usize) -> Descriptor {
    let p = mast(pres, v, len - 1).expect("uniserial inside the projective");
    let mut vertices = vec![v];
    let mut edges = Vec::new();
    for (i, &a) in p.arrows.iter().enumerate() {
        vertices.push(pres.target(a));
        edges.push((a, i, i + 1));
    }
    Descriptor::Graph { vertices, edges }
}

const SYZYGY_TRIES: usize = 4;

fn pdim_with<F: Field>(o: &Oracle<F>, rep: &MatrixRep<F>) -> Result<Option<usize>, SerialError> {
    let mut current = rep.clone();
    for level in 0..SYZYGY_TRIES {
        if current.is_zero() {
            return Ok(Some(level.saturating_sub(1)));
        }
        if let Some(parts) = uniserial_summands(o, &current) {
            let mut worst = 0;
            for (v, len) in parts {
                match uniserial_pdim(o.pres, v, len)? {
                    Some(n) => worst = worst.max(n),
                    None => return Ok(None),
                }
            }
            return Ok(Some(level + worst));
        }
        current = o.cover_and_syzygy(&current).kernel;
    }
    match o.pdim(&current, 4096) {
        OraclePdim::Finite(n) => Ok(Some(SYZYGY_TRIES + n)),
        OraclePdim::InfiniteSuspected(_) => Err(SerialError::Inconclusive(SYZYGY_TRIES)),
    }
}

/// Projective dimension of a module over a left serial algebra, `None` if infinite.
pub fn module_pdim(pres: &QuiverPresentation, d: &Descriptor) -> Result<Option<usize>, SerialError> {
    require(pres)?;
    with_oracle!(pres, |o| {
        let rep = o.realize(d).map_err(|e| SerialError::Homology(HomologyError::InvalidWord(e.to_string())))?;
        pdim_with(&o, &rep)
    })
}

/// A saguaro with simple socle over a left serial algebra. Node `u` is the element
/// reached from the root by reading the path `u` backwards: `u` runs from that node
/// down to the root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Saguaro {
    pub root: usize,
    pub nodes: BTreeSet<Path>,
    /// Mast of the trunk mapped onto the simple.
    pub first: Path,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    pub index: usize,
    pub left: Path,
    pub right: Path,
}

impl Saguaro {
    pub fn trunk_only(first: Path, pres: &QuiverPresentation) -> Self {
        let root = first.end(&pres.quiver);
        let mut nodes = BTreeSet::new();
        for k in 0..=first.len() {
            nodes.insert(Path { base: if k == first.len() { root } else { pres.source(first.arrows[k]) }, arrows: first.arrows[k..].to_vec() });
        }
        Saguaro { root, nodes, first }
    }

    fn ordered(&self) -> Vec<Path> {
        let mut v: Vec<Path> = self.nodes.iter().cloned().collect();
        v.sort_by_key(|p| (p.len(), p.arrows.iter().rev().copied().collect::<Vec<_>>()));
        v
    }

    /// Nodes with nothing above them, i.e. the tops of the trunks.
    pub fn tops(&self) -> Vec<Path> {
        let mut out: Vec<Path> = self
            .ordered()
            .into_iter()
            .filter(|u| !self.nodes.iter().any(|x| x.len() == u.len() + 1 && x.arrows[1..] == u.arrows[..]))
            .collect();
        out.sort_by_key(|u| if *u == self.first { 0 } else { 1 });
        out
    }

    /// Masts of the trunks, first trunk first.
    pub fn trunks(&self) -> Vec<Path> {
        self.tops()
    }

    /// Where consecutive trunks meet: the parts of their masts above the meeting node.
    pub fn gluings(&self) -> Vec<Gluing> {
        let t = self.trunks();
        let mut out = Vec::new();
        for i in 0..t.len().saturating_sub(1) {
            let (a, b) = (&t[i], &t[i + 1]);
            let mut common = 0;
            while common < a.len().min(b.len()) && a.arrows[a.len() - 1 - common] == b.arrows[b.len() - 1 - common] {
                common += 1;
            }
            out.push(Gluing {
                index: i,
                left: Path { base: a.base, arrows: a.arrows[..a.len() - common].to_vec() },
                right: Path { base: b.base, arrows: b.arrows[..b.len() - common].to_vec() },
            });
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.nodes.len()
    }

    /// Basis vertices and arrow edges, nodes in layer order.
    pub fn graph_data(&self, pres: &QuiverPresentation) -> (Vec<usize>, Vec<(usize, usize, usize)>) {
        let order = self.ordered();
        let vertices: Vec<usize> = order.iter().map(|u| u.base).collect();
        let mut edges = Vec::new();
        for (i, u) in order.iter().enumerate() {
            if let Some(&a) = u.arrows.first() {
                let below = Path { base: pres.target(a), arrows: u.arrows[1..].to_vec() };
                let j = order.iter().position(|x| *x == below).expect("tree is closed downward");
                edges.push((a, i, j));
            }
        }
        (vertices, edges)
    }

    pub fn descriptor(&self, pres: &QuiverPresentation) -> Descriptor {
        let (vertices, edges) = self.graph_data(pres);
        Descriptor::Graph { vertices, edges }
    }

    pub fn graph(&self, pres: &QuiverPresentation) -> LayeredGraph {
        let (vertices, edges) = self.graph_data(pres);
        LayeredGraph::new(pres, &vertices, &edges)
    }

    fn with(&self, u: &Path, pres: &QuiverPresentation) -> Saguaro {
        let mut s = self.clone();
        for k in 0..=u.len() {
            let base = if k == u.len() { self.root } else { pres.source(u.arrows[k]) };
            s.nodes.insert(Path { base, arrows: u.arrows[k..].to_vec() });
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaguaroReport {
    pub vertex: usize,
    pub depth: Depth,
    pub saguaro: Saguaro,
    pub pdim: usize,
    /// Whether attaching candidates in reverse order gives the same saguaro.
    pub order_independent: bool,
}

fn grow(pres: &QuiverPresentation, start: &Saguaro, depth: Depth, reverse: bool) -> Result<(Saguaro, usize), SerialError> {
    let mut cands: Vec<Path> = pres
        .basis
        .iter()
        .filter(|u| u.end(&pres.quiver) == start.root && !u.is_trivial())
        .filter(|u| !(u.len() > start.first.len() && u.arrows.ends_with(&start.first.arrows)))
        .cloned()
        .collect();
    cands.sort_by_key(|p| p.sort_key());
    if reverse {
        cands.reverse();
    }
    let mut cur = start.clone();
    let mut pd = module_pdim(pres, &cur.descriptor(pres))?.expect("trunk in the class");
    loop {
        let mut grew = false;
        for u in &cands {
            if cur.nodes.contains(u) {
                continue;
            }
            let next = cur.with(u, pres);
            let p = module_pdim(pres, &next.descriptor(pres))?;
            if depth.admits(p) {
                cur = next;
                pd = p.unwrap();
                grew = true;
                break;
            }
        }
        if !grew {
            return Ok((cur, pd));
        }
    }
}

/// Greedy maximal saguaro in the class whose first trunk is the minimal factor of Λe.
pub fn saguaro_approximation(pres: &QuiverPresentation, e: usize, depth: Depth) -> Result<SaguaroReport, SerialError> {
    let k = minimal_factor(pres, e, depth)?;
    let first = mast(pres, e, k - 1).unwrap();
    let start = Saguaro::trunk_only(first, pres);
    let (saguaro, pdim) = grow(pres, &start, depth, false)?;
    let (other, _) = grow(pres, &start, depth, true)?;
    Ok(SaguaroReport { vertex: e, depth, order_independent: other == saguaro, saguaro, pdim })
}

/// Left finitistic dimension of a left serial algebra: the largest projective dimension
/// among the minimal approximations of the simples.
pub fn serial_findim(pres: &QuiverPresentation) -> Result<(usize, Vec<SaguaroReport>), SerialError> {
    let mut reports = Vec::new();
    for e in 0..pres.vertex_count() {
        reports.push(saguaro_approximation(pres, e, Depth(None))?);
    }
    Ok((reports.iter().map(|r| r.pdim).max().unwrap_or(0), reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn example_e() -> QuiverPresentation {
        parse_presentation(include_str!("../algebras/example_e.alg")).unwrap()
    }

    fn show(p: &QuiverPresentation, s: &Saguaro) -> Vec<String> {
        s.trunks().iter().map(|t| p.path_vertices(t)).collect()
    }

    fn sorted(mut v: Vec<String>) -> Vec<String> {
        v[1..].sort();
        v
    }

    #[test]
    fn example_e_tower() {
        let p = example_e();
        let one = p.quiver.vertex_id("1").unwrap();
        let expect: [(Option<usize>, &[&str], usize); 4] = [
            (Some(1), &["1->2->3->4", "5->2->3->4", "6->3->4", "7->4", "8->3->4"], 1),
            (Some(2), &["1->2->3", "5->2->3", "6->3", "8->3"], 2),
            (Some(3), &["1->2->3", "10->8->3", "11->6->3", "5->2->3", "9->8->3"], 3),
            (None, &["1->2->3", "10->8->3", "11->6->3", "5->2->3", "9->8->3"], 3),
        ];
        for (d, trunks, pd) in expect {
            let r = saguaro_approximation(&p, one, Depth(d)).unwrap();
            assert_eq!(sorted(show(&p, &r.saguaro)), trunks.iter().map(|s| s.to_string()).collect::<Vec<_>>());
            assert_eq!(r.pdim, pd);
            assert!(r.order_independent);
            assert_eq!(r.saguaro.graph(&p).layers().last().unwrap().len(), 1);
        }
    }

    #[test]
    fn example_e_findim() {
        let p = example_e();
        let (d, reports) = serial_findim(&p).unwrap();
        assert_eq!(d, 3);
        assert!(reports.iter().all(|r| r.order_independent));
    }

    #[test]
    fn minimal_factors() {
        let p = example_e();
        let v = |n: &str| p.quiver.vertex_id(n).unwrap();
        assert_eq!(p.path_vertices(&minimal_finite_pdim_factor(&p, v("1")).unwrap()), "1->2->3");
        assert_eq!(minimal_factor(&p, v("1"), Depth(Some(1))).unwrap(), 4);
        // 14 carries a loop with square zero, so only the projective qualifies there.
        assert_eq!(minimal_factor(&p, v("14"), Depth(None)).unwrap(), loewy_length(&p, v("14")));
        let f = parse_presentation(include_str!("../algebras/example_f.alg")).unwrap();
        assert_eq!(minimal_factor(&f, 0, Depth(None)), Err(SerialError::NotLeftSerial));
    }

    #[test]
    fn uniserial_pdims_match_oracle_iteration() {
        let p = example_e();
        for v in 0..p.vertex_count() {
            for len in 1..=loewy_length(&p, v) {
                let comb = uniserial_pdim(&p, v, len).unwrap();
                let orc = with_oracle!(&p, |o| o.pdim(&o.realize(&uniserial(&p, v, len)).unwrap(), 512));
                match (comb, orc) {
                    (Some(n), OraclePdim::Finite(m)) => assert_eq!(n, m),
                    (None, OraclePdim::InfiniteSuspected(_)) => {}
                    other => panic!("{v} {len}: {other:?}"),
                }
            }
        }
    }
}
