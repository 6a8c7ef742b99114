//! Random string algebras and words for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::homology::enumerate_strings;
use crate::presentation::{Arrow, FieldSpec, Path, Quiver, QuiverPresentation};
use crate::strings::StringWord;

fn composites(q: &Quiver, killed: &[Path]) -> Vec<Path> {
    let mut out = Vec::new();
    for (a, arr) in q.arrows.iter().enumerate() {
        for b in q.out_arrows(arr.target) {
            let p = Path { base: arr.source, arrows: vec![a, b] };
            if !killed.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// A random finite dimensional string algebra on 1 to `max_vertices` vertices.
pub fn random_string_algebra<R: Rng>(rng: &mut R, max_vertices: usize) -> QuiverPresentation {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let mut quiver = Quiver { vertices: (1..=n).map(|i| i.to_string()).collect(), arrows: Vec::new() };
    let tries = rng.gen_range(n..=2 * n + 1);
    for _ in 0..tries {
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(0..n);
        if quiver.out_arrows(s).len() < 2 && quiver.in_arrows(t).len() < 2 {
            let name = format!("a{}", quiver.arrows.len());
            quiver.arrows.push(Arrow { name, source: s, target: t });
        }
    }
    // At most one nonzero continuation and one nonzero precursor per arrow.
    let mut rels: Vec<Path> = Vec::new();
    for a in 0..quiver.arrows.len() {
        let mut outs = quiver.out_arrows(quiver.arrows[a].target);
        outs.shuffle(rng);
        for &b in outs.iter().skip(1) {
            rels.push(Path { base: quiver.arrows[a].source, arrows: vec![a, b] });
        }
    }
    for b in 0..quiver.arrows.len() {
        let mut ins = quiver.in_arrows(quiver.arrows[b].source);
        ins.retain(|&a| !rels.contains(&Path { base: quiver.arrows[a].source, arrows: vec![a, b] }));
        ins.shuffle(rng);
        for &a in ins.iter().skip(1) {
            rels.push(Path { base: quiver.arrows[a].source, arrows: vec![a, b] });
        }
    }
    for p in composites(&quiver, &rels) {
        if rng.gen_bool(0.25) {
            rels.push(p);
        }
    }
    loop {
        match QuiverPresentation::build("random".into(), FieldSpec::default(), quiver.clone(), rels.clone(), vec![]) {
            Ok(pres) => {
                // Occasionally a longer relation, to vary the shapes.
                let long: Vec<Path> = pres.basis.iter().filter(|p| p.len() == 3).cloned().collect();
                if let Some(p) = long.choose(rng) {
                    if rng.gen_bool(0.5) {
                        let mut more = rels.clone();
                        more.push(p.clone());
                        if let Ok(pres) =
                            QuiverPresentation::build("random".into(), FieldSpec::default(), quiver.clone(), more, vec![])
                        {
                            return pres;
                        }
                    }
                }
                return pres;
            }
            Err(_) => {
                let open = composites(&quiver, &rels);
                rels.push(open.choose(rng).expect("radical square zero is finite").clone());
            }
        }
    }
}

/// `count` random strings with at most `max_letters` letters.
pub fn random_words<R: Rng>(rng: &mut R, pres: &QuiverPresentation, max_letters: usize, count: usize) -> Vec<StringWord> {
    let all = enumerate_strings(pres, max_letters);
    (0..count).filter_map(|_| all.choose(rng).cloned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_algebras_are_string() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..40 {
            let p = random_string_algebra(&mut rng, 8);
            assert!(p.classify().is_string, "{}", p.to_dsl());
            assert!(p.vertex_count() <= 8);
        }
    }
}
