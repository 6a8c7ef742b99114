//! Characteristic phantoms of simple modules over string algebras, and what they decide:
//! contravariant finiteness, minimal approximations, finitistic dimension.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::{
    end_component, syzygy_components, top_components, valley_component, HomologyError, PdimResult,
    StringPdim,
};
use crate::presentation::{Path, QuiverPresentation};
use crate::strings::{
    ascending_letters, descending_letters, reverse_letters, Dir, GeneralizedString, Letter, Ray,
    StringWord,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PhantomError {
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("search bound {0} reached before a decision")]
    Inconclusive(usize),
    #[error("no admissible extension at step {0}")]
    NoCandidate(usize),
    #[error("procedure did not stabilize within {0} steps")]
    StepLimit(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    Yes(StringWord),
    No,
    Undecided(usize),
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }
}

/// Which ends of a word may grow and how the first new letter must attach.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Socle ends grow upward, so the word stays a submodule with the same top.
    TopEmbed,
    /// Top ends grow downward, so the word stays a factor with the same socle.
    SocleCover,
    /// Both ends grow in any direction; the word only has to survive as a subword.
    Free,
}

/// Where the search stands at a word end that is being extended to the right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum EndState {
    /// Descending along `D` from the most recent top.
    Desc(Path),
    /// Ascending from a valley, `U` being the path from the current node down to it
    /// and `R` the leg arriving at the valley from the other side.
    Asc(Option<Path>, Path),
}

struct Move {
    letter: Option<Letter>,
    next: Option<EndState>,
    fixed: Vec<StringWord>,
}

pub fn default_bound(pres: &QuiverPresentation) -> usize {
    if let Some(b) = std::env::var("PHANTOM_BOUND").ok().and_then(|s| s.parse().ok()) {
        return b;
    }
    (2 * pres.max_relation_length().max(1) * pres.arrow_count()).max(1)
}

/// Leg ending at the right end of `w` descending from its last top.
fn trailing_descent(pres: &QuiverPresentation, w: &StringWord) -> Path {
    let nodes = w.nodes(pres);
    let n = w.len();
    let mut j = n;
    while j > 0 && w.letters[j - 1].dir == Dir::Inverse {
        j -= 1;
    }
    Path { base: nodes[j], arrows: w.letters[j..n].iter().map(|l| l.arrow).collect() }
}

/// Ascending run ending at the right end of `w`, as a path from the end down to the
/// valley, with the leg arriving at that valley from the left if there is one.
fn trailing_ascent(pres: &QuiverPresentation, w: &StringWord) -> (Option<Path>, Path) {
    let nodes = w.nodes(pres);
    let n = w.len();
    let mut j = n;
    while j > 0 && w.letters[j - 1].dir == Dir::Direct {
        j -= 1;
    }
    let u = Path { base: nodes[n], arrows: w.letters[j..n].iter().rev().map(|l| l.arrow).collect() };
    let r = if j > 0 { Some(trailing_descent(pres, &StringWord { base: w.base, letters: w.letters[..j].to_vec() })) } else { None };
    (r, u)
}

/// Number of monotone runs of letters.
fn runs(w: &StringWord) -> usize {
    if w.is_empty() {
        return 0;
    }
    1 + w.letters.windows(2).filter(|p| p[0].dir != p[1].dir).count()
}

/// Whether the free searches at the two ends look at disjoint runs: a socle end
/// depends on its last run, a top end on its last two.
fn ends_decoupled(w: &StringWord) -> bool {
    if w.is_empty() {
        return false;
    }
    let need = |d: Dir| if d == Dir::Inverse { 1 } else { 2 };
    let right = need(w.letters.last().unwrap().dir);
    let left = need(w.letters[0].flipped().dir);
    runs(w) >= left + right
}

/// Valid words with one more letter at either end.
fn one_letter_extensions(pres: &QuiverPresentation, w: &StringWord) -> Vec<StringWord> {
    let q = &pres.quiver;
    let mut out = Vec::new();
    let nodes = w.nodes(pres);
    let (first, last) = (nodes[0], *nodes.last().unwrap());
    let around = |v: usize| -> Vec<Letter> {
        q.out_arrows(v).into_iter().map(Letter::inverse).chain(q.in_arrows(v).into_iter().map(Letter::direct)).collect()
    };
    for l in around(last) {
        let mut letters = w.letters.clone();
        letters.push(l);
        let cand = StringWord::from_letters(pres, letters, w.base);
        if cand.validate(pres).is_ok() {
            out.push(cand);
        }
    }
    for l in around(first) {
        let mut letters = vec![l.flipped()];
        letters.extend(w.letters.iter().copied());
        let cand = StringWord::from_letters(pres, letters, w.base);
        if cand.validate(pres).is_ok() && !out.contains(&cand) {
            out.push(cand);
        }
    }
    out
}

pub struct PhantomEngine<'a> {
    pub pres: &'a QuiverPresentation,
    pub bound: usize,
    pdim: StringPdim<'a>,
    finite_memo: HashMap<StringWord, bool>,
}

impl<'a> PhantomEngine<'a> {
    pub fn new(pres: &'a QuiverPresentation, bound: usize) -> Result<Self, PhantomError> {
        Ok(PhantomEngine { pres, bound, pdim: StringPdim::new(pres)?, finite_memo: HashMap::new() })
    }

    pub fn with_default_bound(pres: &'a QuiverPresentation) -> Result<Self, PhantomError> {
        Self::new(pres, default_bound(pres))
    }

    pub fn string_pdim(&mut self, w: &StringWord) -> Result<PdimResult<StringWord>, PhantomError> {
        Ok(self.pdim.pdim(w)?)
    }

    pub fn is_finite(&mut self, w: &StringWord) -> Result<bool, PhantomError> {
        let key = w.canonical(self.pres);
        if let Some(&b) = self.finite_memo.get(&key) {
            return Ok(b);
        }
        let b = self.pdim.is_finite(&key)?;
        self.finite_memo.insert(key, b);
        Ok(b)
    }

    fn all_finite(&mut self, ws: &[StringWord]) -> Result<bool, PhantomError> {
        for w in ws {
            if !self.is_finite(w)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn extras(&self, top: usize, used: &[usize]) -> Result<Vec<StringWord>, PhantomError> {
        Ok(top_components(self.pres, top, used)?)
    }

    fn valley(&self, r: &Option<Path>, u: &Path) -> Result<Vec<StringWord>, PhantomError> {
        Ok(match r {
            Some(r) => vec![valley_component(self.pres, r, u)?],
            None => end_component(self.pres, u)?.into_iter().collect(),
        })
    }

    fn moves(&self, s: &EndState, initial: bool) -> Result<Vec<Move>, PhantomError> {
        let pres = self.pres;
        let q = &pres.quiver;
        let mut out = Vec::new();
        match s {
            EndState::Desc(d) => {
                out.push(Move { letter: None, next: None, fixed: end_component(pres, d)?.into_iter().collect() });
                if !initial {
                    for a in pres.continuations(d) {
                        let mut arrows = d.arrows.clone();
                        arrows.push(a);
                        out.push(Move {
                            letter: Some(Letter::inverse(a)),
                            next: Some(EndState::Desc(Path { base: d.base, arrows })),
                            fixed: vec![],
                        });
                    }
                }
                for b in q.in_arrows(d.end(q)) {
                    if Some(b) == d.last_arrow() {
                        continue;
                    }
                    let u = Path { base: pres.source(b), arrows: vec![b] };
                    out.push(Move {
                        letter: Some(Letter::direct(b)),
                        next: Some(EndState::Asc(Some(d.clone()), u)),
                        fixed: vec![],
                    });
                }
            }
            EndState::Asc(r, u) => {
                let top = u.base;
                let used: Vec<usize> = u.first_arrow().into_iter().collect();
                // A top end that keeps its legs leaves the valley as it was.
                let keep_valley = initial;
                let mut stop = if keep_valley { vec![] } else { self.valley(r, u)? };
                stop.extend(self.extras(top, &used)?);
                out.push(Move { letter: None, next: None, fixed: stop });
                if !initial {
                    for b in pres.precursors(u) {
                        let mut arrows = vec![b];
                        arrows.extend(u.arrows.iter().copied());
                        out.push(Move {
                            letter: Some(Letter::direct(b)),
                            next: Some(EndState::Asc(r.clone(), Path { base: pres.source(b), arrows })),
                            fixed: vec![],
                        });
                    }
                }
                for a in q.out_arrows(top) {
                    if used.contains(&a) {
                        continue;
                    }
                    let mut fixed = if keep_valley { vec![] } else { self.valley(r, u)? };
                    let mut both = used.clone();
                    both.push(a);
                    fixed.extend(self.extras(top, &both)?);
                    out.push(Move {
                        letter: Some(Letter::inverse(a)),
                        next: Some(EndState::Desc(Path { base: top, arrows: vec![a] })),
                        fixed,
                    });
                }
            }
        }
        Ok(out)
    }

    /// Shortest right extension from `start` whose newly fixed syzygy components all
    /// have finite projective dimension. Unless `free`, the first letter has to turn.
    fn extend_end(&mut self, start: EndState, free: bool) -> Result<Option<Result<Vec<Letter>, usize>>, PhantomError> {
        let mut parents: Vec<(usize, Letter)> = Vec::new();
        let mut seen: HashMap<EndState, ()> = HashMap::new();
        let mut queue: VecDeque<(EndState, usize, Option<usize>)> = VecDeque::new();
        let reconstruct = |parents: &Vec<(usize, Letter)>, mut at: Option<usize>| {
            let mut out = Vec::new();
            while let Some(i) = at {
                let (p, l) = parents[i];
                out.push(l);
                at = if p == usize::MAX { None } else { Some(p) };
            }
            out.reverse();
            out
        };
        let mut cut = false;
        for m in self.moves(&start, !free)? {
            if !self.all_finite(&m.fixed)? {
                continue;
            }
            match (m.letter, m.next) {
                (None, _) => return Ok(Some(Ok(vec![]))),
                (Some(l), Some(n)) => {
                    if self.bound == 0 {
                        cut = true;
                        continue;
                    }
                    parents.push((usize::MAX, l));
                    if seen.insert(n.clone(), ()).is_none() {
                        queue.push_back((n, 1, Some(parents.len() - 1)));
                    }
                }
                _ => unreachable!(),
            }
        }
        while let Some((s, depth, at)) = queue.pop_front() {
            for m in self.moves(&s, false)? {
                if !self.all_finite(&m.fixed)? {
                    continue;
                }
                match (m.letter, m.next) {
                    (None, _) => return Ok(Some(Ok(reconstruct(&parents, at)))),
                    (Some(l), Some(n)) => {
                        if seen.contains_key(&n) {
                            continue;
                        }
                        if depth >= self.bound {
                            cut = true;
                            continue;
                        }
                        parents.push((at.unwrap(), l));
                        seen.insert(n.clone(), ());
                        queue.push_back((n, depth + 1, Some(parents.len() - 1)));
                    }
                    _ => unreachable!(),
                }
            }
        }
        Ok(if cut { Some(Err(self.bound)) } else { None })
    }

    /// Decides whether `w` extends at its ends, as `mode` allows, to a string of finite
    /// projective dimension; the witness is the extended word.
    pub fn decide(&mut self, w: &StringWord, mode: Mode) -> Result<Decision, PhantomError> {
        let pres = self.pres;
        if w.is_empty() && mode != Mode::Free {
            return Ok(if self.is_finite(w)? { Decision::Yes(w.clone()) } else { Decision::No });
        }
        if mode == Mode::Free && !ends_decoupled(w) {
            return self.decide_by_growing(w);
        }
        let mut frozen = syzygy_components(pres, w)?;
        let mut ends = Vec::new();
        for (side, word) in [(0usize, w.reversed(pres)), (1, w.clone())] {
            let last = word.letters.last().unwrap().dir;
            let state = match last {
                Dir::Inverse => EndState::Desc(trailing_descent(pres, &word)),
                Dir::Direct => {
                    let (r, u) = trailing_ascent(pres, &word);
                    EndState::Asc(r, u)
                }
            };
            let extendable = matches!(
                (mode, &state),
                (Mode::TopEmbed, EndState::Desc(_)) | (Mode::SocleCover, EndState::Asc(..)) | (Mode::Free, _)
            );
            if !extendable {
                continue;
            }
            let replaced: Vec<StringWord> = match &state {
                EndState::Desc(d) => end_component(pres, d)?.into_iter().collect(),
                EndState::Asc(r, u) => {
                    let mut v = if mode == Mode::Free { self.valley(r, u)? } else { vec![] };
                    v.extend(self.extras(u.base, &[u.first_arrow().unwrap()])?);
                    v
                }
            };
            for c in replaced {
                if let Some(i) = frozen.iter().position(|x| *x == c) {
                    frozen.remove(i);
                }
            }
            ends.push((side, state, mode == Mode::Free));
        }
        if !self.all_finite(&frozen)? {
            return Ok(Decision::No);
        }
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (side, state, free) in ends {
            let ext = match self.extend_end(state, free)? {
                None => return Ok(Decision::No),
                Some(Err(b)) => return Ok(Decision::Undecided(b)),
                Some(Ok(ext)) => ext,
            };
            if side == 0 {
                left = reverse_letters(&ext);
            } else {
                right = ext;
            }
        }
        let mut letters = left.clone();
        letters.extend(w.letters.iter().copied());
        letters.extend(right);
        let witness = StringWord::from_letters(pres, letters, w.base);
        debug_assert!(witness.validate(pres).is_ok());
        Ok(Decision::Yes(witness))
    }

    /// Free extension of a word whose end searches would interact: try the word itself,
    /// then every one-letter extension, until the ends separate.
    fn decide_by_growing(&mut self, w: &StringWord) -> Result<Decision, PhantomError> {
        let pres = self.pres;
        if self.is_finite(w)? {
            return Ok(Decision::Yes(w.clone()));
        }
        let mut undecided = None;
        for next in one_letter_extensions(pres, w) {
            match self.decide(&next, Mode::Free)? {
                Decision::Yes(v) => return Ok(Decision::Yes(v)),
                Decision::Undecided(b) => undecided = Some(b),
                Decision::No => {}
            }
        }
        Ok(undecided.map_or(Decision::No, Decision::Undecided))
    }

    pub fn top_embeddable(&mut self, w: &StringWord) -> Result<Decision, PhantomError> {
        self.decide(w, Mode::TopEmbed)
    }

    pub fn socle_coverable(&mut self, w: &StringWord) -> Result<Decision, PhantomError> {
        self.decide(w, Mode::SocleCover)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepKind {
    Minimal,
    Maximal,
}

/// One round of the procedure. `left` is the tilde side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub index: usize,
    pub kind: StepKind,
    pub left: Option<Path>,
    pub right: Option<Path>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SideOutcome {
    Terminated { step: usize },
    /// The start arrow of the minimal path at step `repeat` equals that at step `first`.
    Periodic { first: usize, repeat: usize },
}

impl SideOutcome {
    pub fn step(&self) -> usize {
        match self {
            SideOutcome::Terminated { step } => *step,
            SideOutcome::Periodic { repeat, .. } => *repeat,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhantomResult {
    pub vertex: usize,
    pub phantom: GeneralizedString,
    pub steps: Vec<Step>,
    pub left: SideOutcome,
    pub right: SideOutcome,
    pub finite: bool,
    pub step_count: usize,
}

#[derive(Clone, Debug)]
enum Status {
    Active,
    Terminated(usize),
    Periodic { first: usize, repeat: usize },
}

/// One side of the growing word, read outward from the anchor.
#[derive(Clone, Debug)]
struct Side {
    /// Path chosen at each step, starting with step 1.
    paths: Vec<Path>,
    status: Status,
}

fn segment(kind: StepKind, p: &Path) -> Vec<Letter> {
    match kind {
        StepKind::Minimal => descending_letters(p),
        StepKind::Maximal => ascending_letters(p),
    }
}

fn kind_of(step: usize) -> StepKind {
    if step % 2 == 1 {
        StepKind::Minimal
    } else {
        StepKind::Maximal
    }
}

impl Side {
    fn letters(&self, upto: usize) -> Vec<Letter> {
        let mut out = Vec::new();
        for (i, p) in self.paths.iter().take(upto).enumerate() {
            out.extend(segment(kind_of(i + 1), p));
        }
        out
    }

    fn done(&self) -> bool {
        !matches!(self.status, Status::Active)
    }

    /// Paths that may be chosen at `step`, or `None` when the side no longer grows.
    fn candidates(&self, pres: &QuiverPresentation, step: usize, start: &[usize], anchor: usize) -> Option<Vec<Path>> {
        match self.status {
            Status::Terminated(_) => None,
            Status::Periodic { first, repeat } => {
                let k = first + (step - repeat);
                Some(vec![self.paths[k - 1].clone()])
            }
            Status::Active => {
                let mut out = Vec::new();
                if step % 2 == 1 {
                    let (top, banned) = match self.paths.last() {
                        None => (anchor, None),
                        Some(q) => (q.base, q.first_arrow()),
                    };
                    out.push(Path::trivial(top));
                    for &a in start {
                        if Some(a) != banned && pres.source(a) == top {
                            out.extend(forward_paths(pres, a));
                        }
                    }
                } else {
                    let p = self.paths.last().unwrap();
                    let end = p.end(&pres.quiver);
                    out.push(Path::trivial(end));
                    for b in pres.quiver.in_arrows(end) {
                        if Some(b) != p.last_arrow() {
                            out.extend(backward_paths(pres, b));
                        }
                    }
                }
                Some(out)
            }
        }
    }
}

/// Nonzero paths starting with `a`.
fn forward_paths(pres: &QuiverPresentation, a: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut stack = vec![Path { base: pres.source(a), arrows: vec![a] }];
    while let Some(p) = stack.pop() {
        if !pres.is_nonzero(&p) {
            continue;
        }
        for b in pres.continuations(&p) {
            let mut arrows = p.arrows.clone();
            arrows.push(b);
            stack.push(Path { base: p.base, arrows });
        }
        out.push(p);
    }
    out.sort_by_key(|p| p.sort_key());
    out
}

/// Nonzero paths ending with `b`.
fn backward_paths(pres: &QuiverPresentation, b: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut stack = vec![Path { base: pres.source(b), arrows: vec![b] }];
    while let Some(p) = stack.pop() {
        if !pres.is_nonzero(&p) {
            continue;
        }
        for c in pres.precursors(&p) {
            let mut arrows = vec![c];
            arrows.extend(p.arrows.iter().copied());
            stack.push(Path { base: pres.source(c), arrows });
        }
        out.push(p);
    }
    out.sort_by_key(|p| p.sort_key());
    out
}

fn word_of(pres: &QuiverPresentation, anchor: usize, left: &[Letter], right: &[Letter]) -> (StringWord, usize) {
    let mut letters = reverse_letters(left);
    let at = letters.len();
    letters.extend(right.iter().copied());
    (StringWord::from_letters(pres, letters, anchor), at)
}

/// Picks the componentwise least (or greatest) length pair, falling back to the
/// smallest total (or largest) and then path order when that is not unique.
fn select(pairs: &[(Path, Path)], minimal: bool) -> (usize, Option<String>) {
    let better = |a: (usize, usize), b: (usize, usize)| {
        if minimal {
            a.0 <= b.0 && a.1 <= b.1 && a != b
        } else {
            a.0 >= b.0 && a.1 >= b.1 && a != b
        }
    };
    let lens: Vec<(usize, usize)> = pairs.iter().map(|(l, r)| (l.len(), r.len())).collect();
    let extreme: Vec<usize> = (0..pairs.len()).filter(|&i| !lens.iter().any(|&o| better(o, lens[i]))).collect();
    let key = |i: usize| {
        let (l, r) = &pairs[i];
        let total = l.len() + r.len();
        (if minimal { total } else { usize::MAX - total }, l.len(), l.arrows.clone(), r.arrows.clone())
    };
    let best = *extreme.iter().min_by_key(|&&i| key(i)).unwrap();
    let distinct: BTreeSet<(usize, usize)> = extreme.iter().map(|&i| lens[i]).collect();
    let note = if extreme.len() > 1 {
        Some(format!("{} {} choices with lengths {:?}", extreme.len(), if minimal { "minimal" } else { "maximal" }, distinct))
    } else {
        None
    };
    (best, note)
}

impl<'a> PhantomEngine<'a> {
    pub fn characteristic_phantom(&mut self, e: usize) -> Result<PhantomResult, PhantomError> {
        let pres = self.pres;
        if e >= pres.vertex_count() {
            return Err(PhantomError::UnknownVertex(e));
        }
        let outs = pres.quiver.out_arrows(e);
        let mut sides = [Side { paths: vec![], status: Status::Active }, Side { paths: vec![], status: Status::Active }];
        let limit = 3 * pres.vertex_count() + 3;
        let mut steps: Vec<Step> = Vec::new();
        let mut step = 0;
        while !(sides[0].done() && sides[1].done()) {
            step += 1;
            if step > limit {
                return Err(PhantomError::StepLimit(limit));
            }
            let kind = kind_of(step);
            let starts: [Vec<usize>; 2] = if step == 1 {
                [outs.iter().take(1).copied().collect(), outs.iter().skip(1).copied().collect()]
            } else {
                [outs.clone(), outs.clone()]
            };
            let mut cands: Vec<Vec<Option<Path>>> = Vec::new();
            for (s, side) in sides.iter().enumerate() {
                let all = pres.quiver.arrows.len();
                let start: Vec<usize> = if step == 1 { starts[s].clone() } else { (0..all).collect() };
                cands.push(match side.candidates(pres, step, &start, e) {
                    None => vec![None],
                    Some(v) => v.into_iter().map(Some).collect(),
                });
            }
            let mode = if kind == StepKind::Minimal { Mode::TopEmbed } else { Mode::SocleCover };
            let mut yes: Vec<(Option<Path>, Option<Path>)> = Vec::new();
            let mut undecided = None;
            for l in &cands[0] {
                for r in &cands[1] {
                    let grow = |side: &Side, c: &Option<Path>| {
                        let mut letters = side.letters(side.paths.len());
                        if let Some(p) = c {
                            letters.extend(segment(kind, p));
                        }
                        letters
                    };
                    let (w, _) = word_of(pres, e, &grow(&sides[0], l), &grow(&sides[1], r));
                    match self.decide(&w, mode)? {
                        Decision::Yes(_) => yes.push((l.clone(), r.clone())),
                        Decision::Undecided(b) => undecided = Some(b),
                        Decision::No => {}
                    }
                }
            }
            // An undecided pair might have been the one to choose.
            if let Some(b) = undecided {
                return Err(PhantomError::Inconclusive(b));
            }
            if yes.is_empty() {
                return Err(PhantomError::NoCandidate(step));
            }
            let as_pairs: Vec<(Path, Path)> = yes
                .iter()
                .map(|(l, r)| (l.clone().unwrap_or(Path::trivial(e)), r.clone().unwrap_or(Path::trivial(e))))
                .collect();
            let (best, note) = select(&as_pairs, kind == StepKind::Minimal);
            let chosen = yes[best].clone();
            let mut log = Step { index: step, kind, left: None, right: None, note };
            for (s, c) in [chosen.0, chosen.1].into_iter().enumerate() {
                let side = &mut sides[s];
                let Some(p) = c else { continue };
                let active = matches!(side.status, Status::Active);
                side.paths.push(p.clone());
                if !active {
                    continue;
                }
                if s == 0 {
                    log.left = Some(p.clone());
                } else {
                    log.right = Some(p.clone());
                }
                if p.is_trivial() {
                    side.status = Status::Terminated(step);
                } else if kind == StepKind::Minimal {
                    let earlier = (1..step).step_by(2).find(|&k| side.paths[k - 1].first_arrow() == p.first_arrow());
                    if let Some(k) = earlier {
                        side.status = Status::Periodic { first: k, repeat: step };
                    }
                }
            }
            steps.push(log);
        }
        let mut core = [Vec::new(), Vec::new()];
        let mut rays = [None, None];
        let mut outcomes = Vec::new();
        for (s, side) in sides.iter().enumerate() {
            match side.status {
                Status::Terminated(t) => {
                    core[s] = side.letters(t);
                    outcomes.push(SideOutcome::Terminated { step: t });
                }
                Status::Periodic { first, repeat } => {
                    core[s] = side.letters(first - 1);
                    let mut period = Vec::new();
                    for k in first..repeat {
                        period.extend(segment(kind_of(k), &side.paths[k - 1]));
                    }
                    let period = if s == 0 { reverse_letters(&period) } else { period };
                    rays[s] = Some(Ray { preperiod: vec![], period });
                    outcomes.push(SideOutcome::Periodic { first, repeat });
                }
                Status::Active => unreachable!(),
            }
        }
        let (word, anchor) = word_of(pres, e, &core[0], &core[1]);
        let [left_ray, right_ray] = rays;
        let finite = left_ray.is_none() && right_ray.is_none();
        let right_outcome = outcomes.pop().unwrap();
        let left_outcome = outcomes.pop().unwrap();
        Ok(PhantomResult {
            vertex: e,
            phantom: GeneralizedString { left: left_ray, core: word, right: right_ray, anchor },
            step_count: steps.len(),
            steps,
            left: left_outcome,
            right: right_outcome,
            finite,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Approximation {
    /// The minimal approximation is this string module, anchored at node `anchor`.
    Finite { word: StringWord, anchor: usize },
    Infinite(Box<PhantomResult>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleReport {
    pub vertex: usize,
    pub phantom: PhantomResult,
    /// Projective dimension of the phantom when it is finite.
    pub pdim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FindimValue {
    Exact(usize),
    /// Largest finite projective dimension among strings with at most `letters` letters.
    LowerBound { value: usize, letters: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FindimReport {
    pub contravariantly_finite: bool,
    pub simples: Vec<SimpleReport>,
    pub lfindim: FindimValue,
}

pub const DEFAULT_CORPUS_LETTERS: usize = 8;

impl<'a> PhantomEngine<'a> {
    pub fn minimal_approximation(&mut self, e: usize) -> Result<Approximation, PhantomError> {
        let r = self.characteristic_phantom(e)?;
        Ok(if r.finite {
            Approximation::Finite { word: r.phantom.core.clone(), anchor: r.phantom.anchor }
        } else {
            Approximation::Infinite(Box::new(r))
        })
    }

    pub fn simple_reports(&mut self) -> Result<Vec<SimpleReport>, PhantomError> {
        let mut out = Vec::new();
        for e in 0..self.pres.vertex_count() {
            let phantom = self.characteristic_phantom(e)?;
            let pdim = if phantom.finite { self.string_pdim(&phantom.phantom.core)?.value() } else { None };
            out.push(SimpleReport { vertex: e, phantom, pdim });
        }
        Ok(out)
    }

    pub fn contravariant_finiteness(&mut self) -> Result<bool, PhantomError> {
        for e in 0..self.pres.vertex_count() {
            if !self.characteristic_phantom(e)?.finite {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn findim_report(&mut self, corpus_letters: usize) -> Result<FindimReport, PhantomError> {
        let simples = self.simple_reports()?;
        let finite = simples.iter().all(|s| s.phantom.finite);
        let lfindim = if finite {
            FindimValue::Exact(simples.iter().map(|s| s.pdim.expect("finite phantom of finite pdim")).max().unwrap_or(0))
        } else {
            let mut best = 0;
            for w in crate::homology::enumerate_strings(self.pres, corpus_letters) {
                if let PdimResult::Finite(n) = self.string_pdim(&w)? {
                    best = best.max(n);
                }
            }
            FindimValue::LowerBound { value: best, letters: corpus_letters }
        };
        Ok(FindimReport { contravariantly_finite: finite, simples, lfindim })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use crate::strings::parse_letters;

    fn load(src: &str) -> QuiverPresentation {
        parse_presentation(src).unwrap()
    }

    fn lambda22() -> QuiverPresentation {
        load(include_str!("../algebras/lambda22.alg"))
    }

    fn example_f() -> QuiverPresentation {
        load(include_str!("../algebras/example_f.alg"))
    }

    fn example_h() -> QuiverPresentation {
        load(include_str!("../algebras/example_h.alg"))
    }

    fn v(p: &QuiverPresentation, name: &str) -> usize {
        p.quiver.vertex_id(name).unwrap()
    }

    fn trace(p: &QuiverPresentation, r: &PhantomResult) -> Vec<(String, String)> {
        let show = |x: &Option<Path>| x.as_ref().map_or("-".to_string(), |x| p.path_vertices(x));
        r.steps.iter().map(|s| (show(&s.left), show(&s.right))).collect()
    }

    #[test]
    fn lambda22_simple_needs_both_loops() {
        let p = lambda22();
        let mut eng = PhantomEngine::with_default_bound(&p).unwrap();
        let s = StringWord::trivial(0);
        assert_eq!(eng.top_embeddable(&s).unwrap(), Decision::No);
        let a = parse_letters(&p, "a").unwrap();
        assert_eq!(eng.top_embeddable(&a).unwrap(), Decision::No);
        let proj = parse_letters(&p, "a b~").unwrap();
        assert_eq!(eng.top_embeddable(&proj).unwrap(), Decision::Yes(proj.clone()));
        assert_eq!(eng.socle_coverable(&proj).unwrap(), Decision::Yes(proj.clone()));
        let r = eng.characteristic_phantom(0).unwrap();
        assert!(r.finite);
        assert_eq!(r.step_count, 2);
        assert_eq!(r.phantom.core.canonical(&p), proj.canonical(&p));
    }

    #[test]
    fn reports() {
        let p = lambda22();
        let mut eng = PhantomEngine::with_default_bound(&p).unwrap();
        let r = eng.findim_report(6).unwrap();
        assert!(r.contravariantly_finite);
        assert_eq!(r.lfindim, FindimValue::Exact(0));
        let a3 = load(include_str!("../algebras/a3.alg"));
        let mut eng = PhantomEngine::with_default_bound(&a3).unwrap();
        let r = eng.findim_report(6).unwrap();
        assert!(r.contravariantly_finite);
        assert!(r.simples.iter().all(|s| s.phantom.step_count == 1 && s.phantom.phantom.core.is_empty()));
        assert_eq!(r.lfindim, FindimValue::Exact(1));
        let f = example_f();
        let mut eng = PhantomEngine::with_default_bound(&f).unwrap();
        let r = eng.findim_report(6).unwrap();
        assert!(!r.contravariantly_finite);
        assert!(matches!(r.lfindim, FindimValue::LowerBound { .. }));
        match eng.minimal_approximation(v(&f, "7")).unwrap() {
            Approximation::Finite { word, .. } => assert_eq!(word.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn example_f_seven_is_uniserial() {
        let p = example_f();
        let mut eng = PhantomEngine::with_default_bound(&p).unwrap();
        let r = eng.characteristic_phantom(v(&p, "7")).unwrap();
        assert!(r.finite, "{:?}", trace(&p, &r));
        assert_eq!(r.step_count, 2);
        let h = r.phantom.core.walk_text(&p, None);
        assert!(h == "7 -> 6 -> 3" || h == "3 <- 6 <- 7", "{h}");
    }

    fn pairs(v: &[(&str, &str)]) -> Vec<(String, String)> {
        v.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn example_f_one_is_periodic_on_the_right() {
        let p = example_f();
        let mut eng = PhantomEngine::with_default_bound(&p).unwrap();
        let r = eng.characteristic_phantom(v(&p, "1")).unwrap();
        let expect = pairs(&[
            ("1->2", "1->3"),
            ("8->6->2", "6->3"),
            ("8->9", "6->2"),
            ("7->9", "1->2"),
            ("7->6->3", "1->3"),
            ("3", "-"),
        ]);
        assert_eq!(trace(&p, &r), expect);
        assert_eq!(r.left, SideOutcome::Terminated { step: 6 });
        assert_eq!(r.right, SideOutcome::Periodic { first: 1, repeat: 5 });
        assert!(!r.finite);
        assert!(r.step_count < 3 * p.vertex_count());
    }

    #[test]
    fn example_h_zero_has_different_periods() {
        let p = example_h();
        let mut eng = PhantomEngine::with_default_bound(&p).unwrap();
        let r = eng.characteristic_phantom(v(&p, "0")).unwrap();
        let expect = pairs(&[
            ("0->1", "0->2"),
            ("3->1", "10->6->2"),
            ("3->5", "10->12"),
            ("13->9->5", "14->12"),
            ("13->15", "14->6"),
            ("16->15", "10->6"),
            ("16->9", "10->12"),
            ("13->9", "-"),
            ("13->15", "-"),
        ]);
        assert_eq!(trace(&p, &r), expect);
        assert_eq!(r.left, SideOutcome::Periodic { first: 5, repeat: 9 });
        assert_eq!(r.right, SideOutcome::Periodic { first: 3, repeat: 7 });
        assert!(r.step_count < 3 * p.vertex_count());
    }
}
