mod common;

use common::load;
use phantom_core::criteria::CriterionWitness;
use phantom_core::homology::enumerate_strings;
use phantom_core::io::{decode, encode, Artifact, ArtifactError};
use phantom_core::phantom::{Mode, PhantomEngine};
use phantom_core::sample::random_string_algebra;
use phantom_core::serial::{saguaro_approximation, Depth};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn round<T: Artifact + PartialEq + std::fmt::Debug>(x: &T) {
    let text = encode(x);
    assert_eq!(encode(x), text);
    assert_eq!(&decode::<T>(&text).unwrap(), x);
    let cut = &text[..text.len() * 2 / 3];
    assert!(matches!(decode::<T>(cut), Err(ArtifactError::Malformed(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn string_algebra_results_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pres = random_string_algebra(&mut rng, 6);
        round(&pres);
        let mut eng = PhantomEngine::with_default_bound(&pres).unwrap();
        let words = enumerate_strings(&pres, 4);
        let w = words.choose(&mut rng).unwrap().clone();
        round(&w);
        round(&eng.string_pdim(&w).unwrap());
        let mode = [Mode::TopEmbed, Mode::SocleCover, Mode::Free][rng.gen_range(0..3)];
        round(&eng.decide(&w, mode).unwrap());
        let v = rng.gen_range(0..pres.vertex_count());
        let r = eng.characteristic_phantom(v).unwrap();
        round(&r);
        round(&r.phantom);
        round(&eng.findim_report(3).unwrap());
        let paths: Vec<_> = pres.basis.iter().filter(|p| !p.is_trivial()).cloned().collect();
        if !paths.is_empty() {
            let n = rng.gen_range(1..4);
            let witness = CriterionWitness {
                vertices: (0..n).map(|_| rng.gen_range(0..pres.vertex_count())).collect(),
                p: (0..n).map(|_| paths.choose(&mut rng).unwrap().clone()).collect(),
                q: (0..n).map(|_| paths.choose(&mut rng).unwrap().clone()).collect(),
                verified_bound: rng.gen_range(0..5),
            };
            round(&witness);
        }
    }

    #[test]
    fn saguaros_round_trip(v in 0usize..14, d in prop::option::of(1usize..4)) {
        let e = load("example_e");
        let r = saguaro_approximation(&e, v, Depth(d)).unwrap();
        round(&r.saguaro);
        round(&r);
        round(&r.saguaro.graph(&e));
    }
}

#[test]
fn bundled_examples_round_trip() {
    for name in ["example_e", "example_f", "example_g", "example_h", "lambda22", "a3"] {
        round(&load(name));
    }
    let f = load("example_f");
    let mut eng = PhantomEngine::with_default_bound(&f).unwrap();
    let report = eng.findim_report(4).unwrap();
    assert_eq!(encode(&report), encode(&PhantomEngine::with_default_bound(&f).unwrap().findim_report(4).unwrap()));
    round(&report);
}
