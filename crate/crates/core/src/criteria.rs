//! Checks around a computed phantom: maps from finite projective dimension strings
//! factor through it, and zig-zag families certify that no approximation exists.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::homology::enumerate_strings;
use crate::linalg::{zeros, Field};
use crate::oracle::{Descriptor, ModuleMap, Oracle};
use crate::phantom::{Decision, Mode, PhantomEngine, PhantomError, PhantomResult};
use crate::presentation::{Path, QuiverPresentation};
use crate::strings::{ascending_letters, descending_letters, Dir, GeneralizedString, StringWord};
use crate::with_oracle;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub sources: usize,
    pub maps: usize,
    pub factored: usize,
    /// Sources with a map to the simple that factors through no window tried.
    pub failures: Vec<StringWord>,
    /// Largest window used, in letters.
    pub window_letters: usize,
}

impl FactorizationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Finite submodule of the phantom: `k` periods on each infinite side, cut back so
/// that both ends are socle ends. Returns the word and the anchor position.
pub fn submodule_window(pres: &QuiverPresentation, g: &GeneralizedString, k: usize) -> (StringWord, usize) {
    let l = if g.left.is_some() { k } else { 0 };
    let r = if g.right.is_some() { k } else { 0 };
    let (w, mut anchor) = g.window_with_anchor(pres, l, r);
    let mut letters = w.letters;
    if g.right.is_some() {
        while letters.last().is_some_and(|x| x.dir == Dir::Direct) && letters.len() > anchor {
            letters.pop();
        }
    }
    if g.left.is_some() {
        let cut = letters.iter().take(anchor).take_while(|x| x.dir == Dir::Inverse).count();
        letters.drain(..cut);
        anchor -= cut;
    }
    (StringWord::from_letters(pres, letters, w.base), anchor)
}

/// The map from a string module onto the simple at its anchor node.
fn anchor_map<F: Field>(o: &Oracle<F>, w: &StringWord, anchor: usize, dims: &[usize]) -> ModuleMap<F> {
    let nodes = w.nodes(o.pres);
    let e = nodes[anchor];
    let slot = nodes[..anchor].iter().filter(|&&v| v == e).count();
    let mut mats: Vec<_> = (0..o.pres.vertex_count()).map(|v| zeros(&o.field, if v == e { 1 } else { 0 }, dims[v])).collect();
    mats[e].set(0, slot, o.field.one());
    ModuleMap { mats }
}

fn check_with<F: Field>(
    o: &Oracle<F>,
    sources: &[StringWord],
    ph: &PhantomResult,
    seed: u64,
) -> Result<FactorizationReport, PhantomError> {
    let pres = o.pres;
    let f = &o.field;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let simple = o.realize(&Descriptor::Simple(ph.vertex)).expect("simple module");
    let mut windows = Vec::new();
    let sizes: Vec<usize> = if ph.finite { vec![0] } else { vec![1, 2, 4, 8] };
    for &k in &sizes {
        let (w, anchor) = submodule_window(pres, &ph.phantom, k);
        let rep = o.realize(&Descriptor::String(w.clone())).expect("phantom window is a string");
        let map = anchor_map(o, &w, anchor, &rep.dims);
        debug_assert!(o.is_hom(&rep, &simple, &map));
        windows.push((w.len(), rep, map));
    }
    let mut report = FactorizationReport { sources: 0, maps: 0, factored: 0, failures: vec![], window_letters: 0 };
    for src in sources {
        let m = o.realize(&Descriptor::String(src.clone())).expect("valid string");
        let mut homs = o.hom_basis(&m, &simple);
        if homs.is_empty() {
            continue;
        }
        report.sources += 1;
        if homs.len() > 1 {
            let coeffs: Vec<F::Elem> = (0..homs.len()).map(|_| f.random(&mut rng)).collect();
            homs.push(o.combine(&homs, &coeffs));
        }
        let mut ok_all = true;
        for g in &homs {
            report.maps += 1;
            let hit = windows.iter().find(|(_, x, fmap)| o.factors_through(&m, x, fmap, g));
            match hit {
                Some((len, _, _)) => {
                    report.factored += 1;
                    report.window_letters = report.window_letters.max(*len);
                }
                None => ok_all = false,
            }
        }
        if !ok_all {
            report.failures.push(src.clone());
        }
    }
    Ok(report)
}

/// Every map from a finite projective dimension string with at most `letter_bound`
/// letters to the simple should factor through a finite window of its phantom.
pub fn effectiveness_check(
    eng: &mut PhantomEngine,
    ph: &PhantomResult,
    letter_bound: usize,
    seed: u64,
) -> Result<FactorizationReport, PhantomError> {
    let pres = eng.pres;
    let mut sources = Vec::new();
    for w in enumerate_strings(pres, letter_bound) {
        if w.nodes(pres).contains(&ph.vertex) && eng.is_finite(&w)? {
            sources.push(w);
        }
    }
    with_oracle!(pres, |o| check_with(&o, &sources, ph, seed))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionWitness {
    pub vertices: Vec<usize>,
    pub p: Vec<Path>,
    pub q: Vec<Path>,
    pub verified_bound: usize,
}

impl CriterionWitness {
    /// The zig-zag with `n` full rounds followed by one more round without its last leg.
    pub fn zigzag(&self, pres: &QuiverPresentation, n: usize) -> StringWord {
        let m = self.p.len();
        let mut letters = Vec::new();
        for _ in 0..n {
            for i in 0..m {
                letters.extend(descending_letters(&self.p[i]));
                letters.extend(ascending_letters(&self.q[(i + 1) % m]));
            }
        }
        for i in 0..m {
            letters.extend(descending_letters(&self.p[i]));
            if i + 1 < m {
                letters.extend(ascending_letters(&self.q[i + 1]));
            }
        }
        StringWord::from_letters(pres, letters, self.vertices[0])
    }
}

/// Image of node `k` of `w` under path `p`, if nonzero.
fn act(w: &StringWord, k: usize, p: &Path) -> Option<usize> {
    let mut at = k;
    for &a in &p.arrows {
        let left = at.checked_sub(1).filter(|&j| w.letters[j].arrow == a && w.letters[j].dir == Dir::Direct);
        let right = w.letters.get(at).filter(|l| l.arrow == a && l.dir == Dir::Inverse).map(|_| at + 1);
        at = left.or(right)?;
    }
    Some(at)
}

/// Condition (2) on basis elements of one string module.
fn node_condition(pres: &QuiverPresentation, w: &StringWord, wit: &CriterionWitness) -> bool {
    let nodes = w.nodes(pres);
    let m = wit.p.len();
    for k in w.tops() {
        if nodes[k] == wit.vertices[0] && act(w, k, &wit.p[0]).is_none() {
            return false;
        }
    }
    for i in 0..m {
        let (pi, qn, pn) = (&wit.p[i], &wit.q[(i + 1) % m], &wit.p[(i + 1) % m]);
        for a in 0..nodes.len() {
            if nodes[a] != pi.base {
                continue;
            }
            let Some(x) = act(w, a, pi) else { continue };
            for b in 0..nodes.len() {
                if nodes[b] == qn.base && act(w, b, qn) == Some(x) && act(w, b, pn).is_none() {
                    return false;
                }
            }
        }
    }
    true
}

pub const DEFAULT_WITNESS_BOUND: usize = 3;
pub const DEFAULT_WITNESS_LETTERS: usize = 8;

/// Searches for vertices and paths meeting the failure criterion at `e`. Condition (1)
/// is checked for up to `bound` rounds, condition (2) on finite projective dimension
/// strings with at most `letters` letters.
pub fn failure_witness_search(
    eng: &mut PhantomEngine,
    e: usize,
    bound: usize,
    letters: usize,
) -> Result<Option<CriterionWitness>, PhantomError> {
    let pres = eng.pres;
    let mut corpus = Vec::new();
    for w in enumerate_strings(pres, letters) {
        if eng.is_finite(&w)? {
            corpus.push(w);
        }
    }
    let mut found = None;
    let mut stack = vec![(vec![e], Vec::<Path>::new(), vec![Path::trivial(e)])];
    let paths_from = |v: usize| -> Vec<Path> { pres.basis_from(v).into_iter().filter(|p| !p.is_trivial()).collect() };
    let paths_into = |v: usize| -> Vec<Path> {
        let mut out: Vec<Path> = pres.basis.iter().filter(|p| !p.is_trivial() && p.end(&pres.quiver) == v).cloned().collect();
        out.sort_by_key(|p| p.sort_key());
        out
    };
    let mut order: Vec<(Vec<usize>, Vec<Path>, Vec<Path>)> = Vec::new();
    while let Some((verts, ps, qs)) = stack.pop() {
        let i = ps.len();
        let here = verts[i];
        let mut next = Vec::new();
        for p in paths_from(here) {
            if i > 0 && p.first_arrow() == qs[i].first_arrow() {
                continue;
            }
            for q in paths_into(p.end(&pres.quiver)) {
                if q.last_arrow() == p.last_arrow() {
                    continue;
                }
                let s = q.base;
                let mut ps2 = ps.clone();
                ps2.push(p.clone());
                if s == e {
                    if q.first_arrow() == ps2[0].first_arrow() {
                        continue;
                    }
                    let mut qs2 = qs.clone();
                    qs2[0] = q.clone();
                    order.push((verts.clone(), ps2, qs2));
                } else if !verts.contains(&s) && verts.len() < pres.vertex_count() {
                    let mut v2 = verts.clone();
                    v2.push(s);
                    let mut qs2 = qs.clone();
                    qs2.push(q.clone());
                    next.push((v2, ps2, qs2));
                }
            }
        }
        next.reverse();
        stack.extend(next);
    }
    order.sort_by_key(|(v, ps, qs)| (v.len(), ps.iter().chain(qs).map(|p| p.sort_key()).collect::<Vec<_>>()));
    'cand: for (vertices, p, q) in order {
        let wit = CriterionWitness { vertices, p, q, verified_bound: bound };
        for n in 1..=bound {
            let z = wit.zigzag(pres, n);
            if z.validate(pres).is_err() {
                continue 'cand;
            }
            match eng.decide(&z, Mode::Free)? {
                Decision::Yes(_) => {}
                _ => continue 'cand,
            }
        }
        if corpus.iter().all(|w| node_condition(pres, w, &wit)) {
            found = Some(wit);
            break;
        }
    }
    Ok(found)
}

/// Outcome of comparing the string calculus with the matrix oracle on one word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub word: StringWord,
    pub syzygy_agrees: bool,
    /// Set when the combinatorial projective dimension is finite.
    pub pdim: Option<usize>,
    pub pdim_agrees: Option<bool>,
}

impl OracleComparison {
    pub fn passed(&self) -> bool {
        self.syzygy_agrees && self.pdim_agrees != Some(false)
    }
}

fn compare_with<F: Field>(o: &Oracle<F>, eng: &mut PhantomEngine, w: &StringWord, seed: u64) -> Result<OracleComparison, PhantomError> {
    let pres = eng.pres;
    let module = o.realize(&Descriptor::String(w.clone())).expect("valid string");
    let kernel = o.cover_and_syzygy(&module).kernel;
    let comps = crate::homology::string_syzygy(pres, w)?;
    let parts: Vec<_> = comps.iter().map(|c| o.realize(&Descriptor::String(c.clone())).expect("valid string")).collect();
    let sum = o.direct_sum(&parts);
    let syzygy_agrees = o.is_isomorphic(&sum, &kernel, seed);
    let pdim = eng.string_pdim(w)?.value();
    let pdim_agrees = pdim.map(|n| {
        // Exactly n covers until the kernel vanishes.
        let mut current = module.clone();
        for k in 0..=n {
            let c = o.cover_and_syzygy(&current);
            if c.kernel.is_zero() {
                return k == n;
            }
            current = c.kernel;
        }
        false
    });
    Ok(OracleComparison { word: w.clone(), syzygy_agrees, pdim, pdim_agrees })
}

/// Syzygy and projective dimension of `words` computed both ways.
pub fn oracle_comparison(eng: &mut PhantomEngine, words: &[StringWord], seed: u64) -> Result<Vec<OracleComparison>, PhantomError> {
    let pres = eng.pres;
    with_oracle!(pres, |o| {
        let mut out = Vec::new();
        for (i, w) in words.iter().enumerate() {
            out.push(compare_with(&o, eng, w, seed.wrapping_add(i as u64))?);
        }
        Ok(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn load(src: &str) -> QuiverPresentation {
        parse_presentation(src).unwrap()
    }

    #[test]
    fn witnesses() {
        let l = load(include_str!("../algebras/lambda22.alg"));
        let mut eng = PhantomEngine::with_default_bound(&l).unwrap();
        assert!(failure_witness_search(&mut eng, 0, 3, 6).unwrap().is_none());
        let f = load(include_str!("../algebras/example_f.alg"));
        let mut eng = PhantomEngine::with_default_bound(&f).unwrap();
        let one = f.quiver.vertex_id("1").unwrap();
        let seven = f.quiver.vertex_id("7").unwrap();
        let w = failure_witness_search(&mut eng, one, 3, 8).unwrap();
        eprintln!("{:?}", w.as_ref().map(|w| (w.vertices.iter().map(|&v| f.vertex_name(v).to_string()).collect::<Vec<_>>(), w.p.iter().map(|p| f.path_vertices(p)).collect::<Vec<_>>(), w.q.iter().map(|p| f.path_vertices(p)).collect::<Vec<_>>())));
        assert!(w.is_some());
        assert!(failure_witness_search(&mut eng, seven, 3, 8).unwrap().is_none());
    }

    #[test]
    fn effectiveness() {
        let f = load(include_str!("../algebras/example_f.alg"));
        let mut eng = PhantomEngine::with_default_bound(&f).unwrap();
        for name in ["7", "1"] {
            let ph = eng.characteristic_phantom(f.quiver.vertex_id(name).unwrap()).unwrap();
            let r = effectiveness_check(&mut eng, &ph, 6, 0).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.failures);
        }
    }

    #[test]
    fn oracle_agrees_on_random_algebras() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        for _ in 0..8 {
            let pres = crate::sample::random_string_algebra(&mut rng, 5);
            let words = crate::sample::random_words(&mut rng, &pres, 4, 4);
            let mut eng = PhantomEngine::with_default_bound(&pres).unwrap();
            for c in oracle_comparison(&mut eng, &words, 0).unwrap() {
                assert!(c.passed(), "{}\n{:?}", pres.to_dsl(), c);
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}
