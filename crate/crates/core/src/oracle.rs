//! Explicit matrix representations: realization, projective covers, syzygies, homs
//! and isomorphism tests by linear algebra.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::{
    complement_indices, identity, is_zero_matrix, mat_add, mat_mul, mat_scale, mat_vec, nullspace,
    rank, rref, zeros, Field, Matrix,
};
use crate::presentation::{linear_reduction, Path, QuiverPresentation};
use crate::strings::{BandModule, Dir, StringWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("descriptor does not fit the presentation: {0}")]
    BadDescriptor(String),
    #[error("representation violates a relation")]
    RelationViolated,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRep<F: Field> {
    pub dims: Vec<usize>,
    pub mats: Vec<Matrix<F::Elem>>,
}

impl<F: Field> MatrixRep<F> {
    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
}

/// Per-vertex matrices of a homomorphism.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap<F: Field> {
    pub mats: Vec<Matrix<F::Elem>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Descriptor {
    Simple(usize),
    Projective(usize),
    PathModule(Path),
    String(StringWord),
    Band(BandModule),
    /// Basis vectors at the given vertices, edges (arrow, from, to) acting by 1.
    Graph { vertices: Vec<usize>, edges: Vec<(usize, usize, usize)> },
}

pub struct Cover<F: Field> {
    pub projective: MatrixRep<F>,
    pub top: Vec<usize>,
    pub map: ModuleMap<F>,
    pub kernel: MatrixRep<F>,
    pub inclusion: ModuleMap<F>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OraclePdim {
    Finite(usize),
    InfiniteSuspected(usize),
}

pub struct Oracle<'a, F: Field> {
    pub field: F,
    pub pres: &'a QuiverPresentation,
    index: HashMap<Path, usize>,
    rewrite: BTreeMap<Path, Vec<(usize, F::Elem)>>,
    projectives: Vec<MatrixRep<F>>,
    /// Basis paths of each projective, grouped by end vertex.
    proj_paths: Vec<Vec<Vec<Path>>>,
}

/// Runs `$body` with `$o` bound to an oracle over the presentation's field.
#[macro_export]
macro_rules! with_oracle {
    ($pres:expr, |$o:ident| $body:expr) => {
        match $pres.field {
            $crate::presentation::FieldSpec::Prime(p) => {
                let $o = $crate::oracle::Oracle::new($crate::linalg::PrimeField::new(p), $pres);
                $body
            }
            $crate::presentation::FieldSpec::Rational => {
                let $o = $crate::oracle::Oracle::new($crate::linalg::RationalField, $pres);
                $body
            }
        }
    };
}

fn coordinates<F: Field>(f: &F, basis: &Matrix<F::Elem>, vecs: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    // Solve basis * X = vecs for X, basis having independent columns.
    let mut aug = zeros(f, basis.rows, basis.cols + vecs.cols);
    for i in 0..basis.rows {
        for j in 0..basis.cols {
            aug.set(i, j, basis.get(i, j).clone());
        }
        for j in 0..vecs.cols {
            aug.set(i, basis.cols + j, vecs.get(i, j).clone());
        }
    }
    let pivots = rref(f, &mut aug);
    assert!(pivots.iter().all(|&p| p < basis.cols), "vector outside the subspace");
    let mut x = zeros(f, basis.cols, vecs.cols);
    for (r, &pc) in pivots.iter().enumerate() {
        for j in 0..vecs.cols {
            x.set(pc, j, aug.get(r, basis.cols + j).clone());
        }
    }
    x
}

impl<'a, F: Field> Oracle<'a, F> {
    pub fn new(field: F, pres: &'a QuiverPresentation) -> Self {
        let free = pres.monomial_free_paths(crate::presentation::DEFAULT_LENGTH_CAP).expect("validated presentation");
        let red = linear_reduction(&field, pres, &free);
        let index = red.basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut o = Oracle { field, pres, index, rewrite: red.rewrite, projectives: Vec::new(), proj_paths: Vec::new() };
        for v in 0..pres.vertex_count() {
            let (rep, paths) = o.build_projective(v);
            o.projectives.push(rep);
            o.proj_paths.push(paths);
        }
        o
    }

    /// Expansion of a path over basis paths.
    pub fn normal_form(&self, p: &Path) -> Vec<(usize, F::Elem)> {
        if let Some(&i) = self.index.get(p) {
            return vec![(i, self.field.one())];
        }
        if let Some(r) = self.rewrite.get(p) {
            return r.clone();
        }
        Vec::new()
    }

    fn build_projective(&self, v: usize) -> (MatrixRep<F>, Vec<Vec<Path>>) {
        let f = &self.field;
        let q = &self.pres.quiver;
        let n = self.pres.vertex_count();
        let mut by_end: Vec<Vec<Path>> = vec![Vec::new(); n];
        for p in self.pres.basis.iter().filter(|p| p.base == v) {
            by_end[p.end(q)].push(p.clone());
        }
        let pos: HashMap<&Path, usize> =
            by_end.iter().flat_map(|l| l.iter().enumerate().map(|(i, p)| (p, i))).collect();
        let dims: Vec<usize> = by_end.iter().map(Vec::len).collect();
        let mut mats = Vec::new();
        for (a, arrow) in q.arrows.iter().enumerate() {
            let mut m = zeros(f, dims[arrow.target], dims[arrow.source]);
            for (j, p) in by_end[arrow.source].iter().enumerate() {
                let mut ext = p.clone();
                ext.arrows.push(a);
                if !self.pres.is_monomial_free(&ext) {
                    continue;
                }
                for (bi, c) in self.normal_form(&ext) {
                    let target_path = &self.pres.basis[bi];
                    let i = pos[target_path];
                    m.set(i, j, f.add(m.get(i, j), &c));
                }
            }
            mats.push(m);
        }
        (MatrixRep { dims, mats }, by_end)
    }

    pub fn projective(&self, v: usize) -> &MatrixRep<F> {
        &self.projectives[v]
    }

    pub fn zero_rep(&self) -> MatrixRep<F> {
        let f = &self.field;
        let dims = vec![0; self.pres.vertex_count()];
        let mats = self.pres.quiver.arrows.iter().map(|_| zeros(f, 0, 0)).collect();
        MatrixRep { dims, mats }
    }

    pub fn graph_rep(&self, vertices: &[usize], edges: &[(usize, usize, usize)]) -> Result<MatrixRep<F>, OracleError> {
        let f = &self.field;
        let n = self.pres.vertex_count();
        let mut dims = vec![0; n];
        let mut slot = Vec::with_capacity(vertices.len());
        for &v in vertices {
            slot.push(dims[v]);
            dims[v] += 1;
        }
        let arrows = &self.pres.quiver.arrows;
        let mut mats: Vec<Matrix<F::Elem>> =
            arrows.iter().map(|a| zeros(f, dims[a.target], dims[a.source])).collect();
        for &(a, from, to) in edges {
            if vertices[from] != arrows[a].source || vertices[to] != arrows[a].target {
                return Err(OracleError::BadDescriptor(format!("edge {} misplaced", arrows[a].name)));
            }
            mats[a].set(slot[to], slot[from], f.one());
        }
        let rep = MatrixRep { dims, mats };
        if !self.satisfies_relations(&rep) {
            return Err(OracleError::RelationViolated);
        }
        Ok(rep)
    }

    pub fn realize(&self, d: &Descriptor) -> Result<MatrixRep<F>, OracleError> {
        let pres = self.pres;
        match d {
            Descriptor::Simple(v) => self.graph_rep(&[*v], &[]),
            Descriptor::Projective(v) => Ok(self.projectives[*v].clone()),
            Descriptor::PathModule(p) => {
                pres.check_path(p).map_err(|e| OracleError::BadDescriptor(e.to_string()))?;
                let end = p.end(&pres.quiver);
                let mut x = vec![self.field.zero(); self.projectives[p.base].dims[end]];
                for (bi, c) in self.normal_form(p) {
                    let target = &pres.basis[bi];
                    let i = self.proj_paths[p.base][end].iter().position(|q| q == target).unwrap();
                    x[i] = c;
                }
                Ok(self.submodule(&self.projectives[p.base], &[(end, x)]).0)
            }
            Descriptor::String(w) => {
                w.validate(pres).map_err(|e| OracleError::BadDescriptor(e.to_string()))?;
                let nodes = w.nodes(pres);
                let edges: Vec<_> = w
                    .letters
                    .iter()
                    .enumerate()
                    .map(|(i, l)| match l.dir {
                        Dir::Direct => (l.arrow, i + 1, i),
                        Dir::Inverse => (l.arrow, i, i + 1),
                    })
                    .collect();
                self.graph_rep(&nodes, &edges)
            }
            Descriptor::Band(b) => self.band_rep(b),
            Descriptor::Graph { vertices, edges } => self.graph_rep(vertices, edges),
        }
    }

    fn band_rep(&self, b: &BandModule) -> Result<MatrixRep<F>, OracleError> {
        let f = &self.field;
        let pres = self.pres;
        let s = b.size();
        let mut nodes = b.word.nodes(pres);
        nodes.pop();
        let n = nodes.len();
        let mut dims = vec![0; pres.vertex_count()];
        let mut slot = Vec::new();
        for &v in &nodes {
            slot.push(dims[v]);
            dims[v] += s;
        }
        let arrows = &pres.quiver.arrows;
        let mut mats: Vec<Matrix<F::Elem>> =
            arrows.iter().map(|a| zeros(f, dims[a.target], dims[a.source])).collect();
        let mut companion = zeros(f, s, s);
        for i in 1..s {
            companion.set(i, i - 1, f.one());
        }
        for i in 0..s {
            companion.set(i, s - 1, f.neg(&f.from_i64(b.poly[i])));
        }
        for (k, l) in b.word.letters.iter().enumerate() {
            let (left, right) = (k, (k + 1) % n);
            let (from, to) = match l.dir {
                Dir::Direct => (right, left),
                Dir::Inverse => (left, right),
            };
            let block = if k == 0 { companion.clone() } else { identity(f, s) };
            for i in 0..s {
                for j in 0..s {
                    mats[l.arrow].set(slot[to] + i, slot[from] + j, block.get(i, j).clone());
                }
            }
        }
        let rep = MatrixRep { dims, mats };
        if !self.satisfies_relations(&rep) {
            return Err(OracleError::RelationViolated);
        }
        Ok(rep)
    }

    /// Matrix of a path acting on a representation.
    pub fn path_matrix(&self, rep: &MatrixRep<F>, p: &Path) -> Matrix<F::Elem> {
        let mut m = identity(&self.field, rep.dims[p.base]);
        for &a in &p.arrows {
            m = mat_mul(&self.field, &rep.mats[a], &m);
        }
        m
    }

    pub fn satisfies_relations(&self, rep: &MatrixRep<F>) -> bool {
        let f = &self.field;
        let q = &self.pres.quiver;
        let mono = self.pres.monomial_relations.iter().all(|r| is_zero_matrix(f, &self.path_matrix(rep, r)));
        let lin = self.pres.linear_relations.iter().all(|r| {
            let (s, t) = (r.terms[0].1.base, r.terms[0].1.end(q));
            let mut acc = zeros(f, rep.dims[t], rep.dims[s]);
            for (c, p) in &r.terms {
                acc = mat_add(f, &acc, &mat_scale(f, &f.from_i64(*c), &self.path_matrix(rep, p)));
            }
            is_zero_matrix(f, &acc)
        });
        mono && lin
    }

    pub fn direct_sum(&self, reps: &[MatrixRep<F>]) -> MatrixRep<F> {
        let f = &self.field;
        let n = self.pres.vertex_count();
        let mut dims = vec![0; n];
        for r in reps {
            for v in 0..n {
                dims[v] += r.dims[v];
            }
        }
        let mut mats = Vec::new();
        for (a, arrow) in self.pres.quiver.arrows.iter().enumerate() {
            let mut m = zeros(f, dims[arrow.target], dims[arrow.source]);
            let (mut ro, mut co) = (0, 0);
            for r in reps {
                let b = &r.mats[a];
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        m.set(ro + i, co + j, b.get(i, j).clone());
                    }
                }
                ro += b.rows;
                co += b.cols;
            }
            mats.push(m);
        }
        MatrixRep { dims, mats }
    }

    /// Submodule generated by vectors at vertices, with its inclusion.
    pub fn submodule(&self, rep: &MatrixRep<F>, gens: &[(usize, Vec<F::Elem>)]) -> (MatrixRep<F>, ModuleMap<F>) {
        let f = &self.field;
        let n = self.pres.vertex_count();
        let mut spans: Vec<Vec<Vec<F::Elem>>> = vec![Vec::new(); n];
        let mut queue: Vec<(usize, Vec<F::Elem>)> = gens.to_vec();
        while let Some((v, x)) = queue.pop() {
            if x.iter().all(|c| f.is_zero(c)) {
                continue;
            }
            let mut trial = spans[v].clone();
            trial.push(x.clone());
            if crate::linalg::independent_subset(f, rep.dims[v], &trial).len() == trial.len() {
                spans[v].push(x.clone());
                for a in self.pres.quiver.out_arrows(v) {
                    let y = mat_vec(f, &rep.mats[a], &x);
                    queue.push((self.pres.target(a), y));
                }
            }
        }
        let bases: Vec<Matrix<F::Elem>> =
            (0..n).map(|v| Matrix::from_columns(rep.dims[v], &spans[v], f.zero())).collect();
        self.restrict(rep, bases)
    }

    /// Restriction of `rep` to invariant subspaces given by column bases.
    fn restrict(&self, rep: &MatrixRep<F>, bases: Vec<Matrix<F::Elem>>) -> (MatrixRep<F>, ModuleMap<F>) {
        let f = &self.field;
        let dims: Vec<usize> = bases.iter().map(|b| b.cols).collect();
        let mut mats = Vec::new();
        for (a, arrow) in self.pres.quiver.arrows.iter().enumerate() {
            let img = mat_mul(f, &rep.mats[a], &bases[arrow.source]);
            mats.push(coordinates(f, &bases[arrow.target], &img));
        }
        (MatrixRep { dims, mats }, ModuleMap { mats: bases })
    }

    /// Per-vertex column bases of the radical J·rep.
    pub fn radical(&self, rep: &MatrixRep<F>) -> Vec<Vec<Vec<F::Elem>>> {
        let f = &self.field;
        (0..self.pres.vertex_count())
            .map(|v| {
                let mut vecs = Vec::new();
                for a in self.pres.quiver.in_arrows(v) {
                    vecs.extend(rep.mats[a].columns());
                }
                crate::linalg::span_basis(f, rep.dims[v], &vecs)
            })
            .collect()
    }

    /// Top vectors lifting a basis of rep/J·rep at each vertex.
    pub fn top_lifts(&self, rep: &MatrixRep<F>) -> Vec<Vec<Vec<F::Elem>>> {
        let f = &self.field;
        let rad = self.radical(rep);
        (0..self.pres.vertex_count())
            .map(|v| {
                let d = rep.dims[v];
                let units: Vec<Vec<F::Elem>> = (0..d)
                    .map(|i| (0..d).map(|j| if i == j { f.one() } else { f.zero() }).collect())
                    .collect();
                complement_indices(f, d, &rad[v], &units).into_iter().map(|i| units[i].clone()).collect()
            })
            .collect()
    }

    pub fn cover_and_syzygy(&self, rep: &MatrixRep<F>) -> Cover<F> {
        let f = &self.field;
        let n = self.pres.vertex_count();
        let tops = self.top_lifts(rep);
        let mut parts = Vec::new();
        let mut images: Vec<Vec<Vec<F::Elem>>> = vec![Vec::new(); n];
        for v in 0..n {
            for x in &tops[v] {
                parts.push(self.projectives[v].clone());
                for w in 0..n {
                    for p in &self.proj_paths[v][w] {
                        let m = self.path_matrix(rep, p);
                        images[w].push(mat_vec(f, &m, x));
                    }
                }
            }
        }
        let projective = self.direct_sum(&parts);
        let map = ModuleMap {
            mats: (0..n).map(|w| Matrix::from_columns(rep.dims[w], &images[w], f.zero())).collect(),
        };
        let bases: Vec<Matrix<F::Elem>> = (0..n)
            .map(|w| {
                let ker = nullspace(f, &map.mats[w]);
                Matrix::from_columns(projective.dims[w], &ker, f.zero())
            })
            .collect();
        let (kernel, inclusion) = self.restrict(&projective, bases);
        Cover { projective, top: tops.iter().map(Vec::len).collect(), map, kernel, inclusion }
    }

    pub fn hom_basis(&self, a: &MatrixRep<F>, b: &MatrixRep<F>) -> Vec<ModuleMap<F>> {
        let f = &self.field;
        let n = self.pres.vertex_count();
        let mut offset = vec![0; n + 1];
        for v in 0..n {
            offset[v + 1] = offset[v] + b.dims[v] * a.dims[v];
        }
        let unknowns = offset[n];
        if unknowns == 0 {
            return Vec::new();
        }
        let var = |v: usize, i: usize, j: usize| offset[v] + i * a.dims[v] + j;
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        for (ai, arrow) in self.pres.quiver.arrows.iter().enumerate() {
            let (s, t) = (arrow.source, arrow.target);
            let (ba, aa) = (&b.mats[ai], &a.mats[ai]);
            for i in 0..b.dims[t] {
                for j in 0..a.dims[s] {
                    let mut row = vec![f.zero(); unknowns];
                    let mut any = false;
                    for k in 0..b.dims[s] {
                        let c = ba.get(i, k);
                        if !f.is_zero(c) {
                            let idx = var(s, k, j);
                            row[idx] = f.add(&row[idx], c);
                            any = true;
                        }
                    }
                    for k in 0..a.dims[t] {
                        let c = aa.get(k, j);
                        if !f.is_zero(c) {
                            let idx = var(t, i, k);
                            row[idx] = f.sub(&row[idx], c);
                            any = true;
                        }
                    }
                    if any {
                        rows.push(row);
                    }
                }
            }
        }
        let system = Matrix::from_rows(unknowns, &rows, f.zero());
        let sols = if rows.is_empty() {
            (0..unknowns)
                .map(|i| (0..unknowns).map(|j| if i == j { f.one() } else { f.zero() }).collect())
                .collect()
        } else {
            nullspace(f, &system)
        };
        sols.into_iter()
            .map(|x| ModuleMap {
                mats: (0..n)
                    .map(|v| Matrix {
                        rows: b.dims[v],
                        cols: a.dims[v],
                        data: x[offset[v]..offset[v + 1]].to_vec(),
                    })
                    .collect(),
            })
            .collect()
    }

    pub fn is_hom(&self, a: &MatrixRep<F>, b: &MatrixRep<F>, h: &ModuleMap<F>) -> bool {
        let f = &self.field;
        self.pres.quiver.arrows.iter().enumerate().all(|(ai, arrow)| {
            let l = mat_mul(f, &b.mats[ai], &h.mats[arrow.source]);
            let r = mat_mul(f, &h.mats[arrow.target], &a.mats[ai]);
            l == r
        })
    }

    pub fn combine(&self, maps: &[ModuleMap<F>], coeffs: &[F::Elem]) -> ModuleMap<F> {
        let f = &self.field;
        let mut mats: Vec<Matrix<F::Elem>> = maps[0].mats.iter().map(|m| zeros(f, m.rows, m.cols)).collect();
        for (h, c) in maps.iter().zip(coeffs) {
            if f.is_zero(c) {
                continue;
            }
            for (acc, m) in mats.iter_mut().zip(&h.mats) {
                *acc = mat_add(f, acc, &mat_scale(f, c, m));
            }
        }
        ModuleMap { mats }
    }

    pub fn compose(&self, g: &ModuleMap<F>, h: &ModuleMap<F>) -> ModuleMap<F> {
        ModuleMap { mats: g.mats.iter().zip(&h.mats).map(|(x, y)| mat_mul(&self.field, x, y)).collect() }
    }

    fn is_invertible(&self, h: &ModuleMap<F>) -> bool {
        h.mats.iter().all(|m| m.rows == m.cols && rank(&self.field, m) == m.rows)
    }

    pub fn is_isomorphic(&self, a: &MatrixRep<F>, b: &MatrixRep<F>, seed: u64) -> bool {
        let f = &self.field;
        if a.dims != b.dims {
            return false;
        }
        if a.dim() == 0 {
            return true;
        }
        let homs = self.hom_basis(a, b);
        if homs.is_empty() || homs.len() != self.hom_basis(a, a).len() || homs.len() != self.hom_basis(b, a).len() {
            return false;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..32 {
            let c: Vec<F::Elem> = homs.iter().map(|_| f.random(&mut rng)).collect();
            if self.is_invertible(&self.combine(&homs, &c)) {
                return true;
            }
        }
        let k = homs.len().min(8);
        let grid = [f.zero(), f.one(), f.neg(&f.one())];
        let mut idx = vec![0usize; k];
        loop {
            let mut c: Vec<F::Elem> = vec![f.zero(); homs.len()];
            for i in 0..k {
                c[i] = grid[idx[i]].clone();
            }
            if self.is_invertible(&self.combine(&homs, &c)) {
                return true;
            }
            let mut i = 0;
            while i < k && idx[i] == 2 {
                idx[i] = 0;
                i += 1;
            }
            if i == k {
                return false;
            }
            idx[i] += 1;
        }
    }

    /// Iterated syzygies until the kernel vanishes or a cover profile repeats.
    pub fn pdim(&self, rep: &MatrixRep<F>, dim_cap: usize) -> OraclePdim {
        let mut current = rep.clone();
        let mut seen: HashSet<(Vec<usize>, Vec<usize>)> = HashSet::new();
        let mut k = 0;
        loop {
            let c = self.cover_and_syzygy(&current);
            if c.kernel.is_zero() {
                return OraclePdim::Finite(k);
            }
            if !seen.insert((c.top.clone(), c.kernel.dims.clone())) || c.kernel.dim() > dim_cap {
                return OraclePdim::InfiniteSuspected(k);
            }
            current = c.kernel;
            k += 1;
        }
    }

    /// Whether `g: m -> s` factors as `f ∘ h` for some `h: m -> x`.
    pub fn factors_through(
        &self,
        m: &MatrixRep<F>,
        x: &MatrixRep<F>,
        fmap: &ModuleMap<F>,
        g: &ModuleMap<F>,
    ) -> bool {
        let f = &self.field;
        let homs = self.hom_basis(m, x);
        let flat = |h: &ModuleMap<F>| -> Vec<F::Elem> { h.mats.iter().flat_map(|mm| mm.data.iter().cloned()).collect() };
        let target = flat(g);
        if target.iter().all(|c| f.is_zero(c)) {
            return true;
        }
        let cols: Vec<Vec<F::Elem>> = homs.iter().map(|h| flat(&self.compose(fmap, h))).collect();
        if cols.is_empty() {
            return false;
        }
        let a = Matrix::from_columns(target.len(), &cols, f.zero());
        crate::linalg::solve(f, &a, &target).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;
    use crate::presentation::parse_presentation;
    use crate::strings::parse_letters;

    fn load(src: &str) -> QuiverPresentation {
        parse_presentation(src).unwrap()
    }

    #[test]
    fn lambda22_cover_of_simple() {
        let p = load(include_str!("../algebras/lambda22.alg"));
        let o = Oracle::new(PrimeField::new(101), &p);
        let proj = o.realize(&Descriptor::Projective(0)).unwrap();
        assert_eq!(proj.dim(), 3);
        assert_eq!(rank(&o.field, &proj.mats[0]), 1);
        let s = o.realize(&Descriptor::Simple(0)).unwrap();
        let c = o.cover_and_syzygy(&s);
        assert_eq!(c.kernel.dim(), 2);
        let s2 = o.direct_sum(&[s.clone(), s.clone()]);
        assert!(o.is_isomorphic(&c.kernel, &s2, 0));
        assert_eq!(o.hom_basis(&proj, &s).len(), 1);
        let w = parse_letters(&p, "a b~").unwrap();
        assert!(o.is_isomorphic(&o.realize(&Descriptor::String(w)).unwrap(), &proj, 0));
        assert!(matches!(o.pdim(&s, 200), OraclePdim::InfiniteSuspected(_)));
    }

    #[test]
    fn example_f_seven() {
        let p = load(include_str!("../algebras/example_f.alg"));
        let o = Oracle::new(PrimeField::new(101), &p);
        let v7 = p.quiver.vertex_id("7").unwrap();
        assert_eq!(o.projective(v7).dim(), 5);
        let s7 = o.realize(&Descriptor::Simple(v7)).unwrap();
        assert_eq!(o.cover_and_syzygy(&s7).kernel.dim(), 4);
        let w = parse_letters(&p, "x7_6~ x6_3~").unwrap();
        let m = o.realize(&Descriptor::String(w)).unwrap();
        assert_eq!(m.dim(), 3);
        assert_eq!(o.hom_basis(&m, &s7).len(), 1);
        assert_eq!(o.pdim(&m, 200), OraclePdim::Finite(1));
    }

    #[test]
    fn non_isomorphic_simples() {
        let p = load(include_str!("../algebras/a3.alg"));
        let o = Oracle::new(PrimeField::new(101), &p);
        let a = o.realize(&Descriptor::Simple(0)).unwrap();
        let b = o.realize(&Descriptor::Simple(1)).unwrap();
        assert!(!o.is_isomorphic(&a, &b, 0));
        assert!(o.is_isomorphic(&a, &a, 0));
        assert_eq!(o.pdim(&a, 100), OraclePdim::Finite(1));
    }

    #[test]
    fn linear_relations_hold_in_projectives() {
        let p = load(include_str!("../algebras/example_g.alg"));
        let o = Oracle::new(PrimeField::new(101), &p);
        for v in 0..p.vertex_count() {
            assert!(o.satisfies_relations(o.projective(v)));
        }
        assert_eq!((0..p.vertex_count()).map(|v| o.projective(v).dim()).sum::<usize>(), p.dim());
    }

    #[test]
    fn band_realization_satisfies_relations() {
        let p = load(include_str!("../algebras/lambda22.alg"));
        let o = Oracle::new(PrimeField::new(101), &p);
        let w = parse_letters(&p, "a b~").unwrap();
        let b = crate::strings::make_band(&p, w, vec![-1, 1]).unwrap();
        assert_eq!(o.realize(&Descriptor::Band(b)).unwrap().dim(), 2);
    }
}
