mod common;

use common::{drawn_window, load, matches_figure, F_ONE, H_ZERO};
use phantom_core::homology::PdimResult;
use phantom_core::phantom::{Approximation, FindimValue, PhantomEngine, SideOutcome};
use phantom_core::strings::{LayeredGraph, StringWord};

#[test]
fn f_seven_is_its_own_approximation() {
    let f = load("example_f");
    let mut eng = PhantomEngine::with_default_bound(&f).unwrap();
    let v = f.quiver.vertex_id("7").unwrap();
    let r = eng.characteristic_phantom(v).unwrap();
    assert!(r.finite);
    let g = LayeredGraph::of_word(&f, &r.phantom.core);
    let layers: Vec<Vec<&str>> =
        g.layers().iter().map(|l| l.iter().map(|&i| g.nodes[i].label.as_str()).collect()).collect();
    assert_eq!(layers, vec![vec!["7"], vec!["6"], vec!["3"]]);
    match eng.minimal_approximation(v).unwrap() {
        Approximation::Finite { word, .. } => assert_eq!(word, r.phantom.core),
        other => panic!("{other:?}"),
    }
}

#[test]
fn f_one_matches_the_drawing() {
    let f = load("example_f");
    let mut eng = PhantomEngine::with_default_bound(&f).unwrap();
    let r = eng.characteristic_phantom(f.quiver.vertex_id("1").unwrap()).unwrap();
    assert!(!r.finite);
    let (g, _) = drawn_window(&f, &r.phantom, 2);
    matches_figure(&g, &F_ONE).unwrap();
}

#[test]
fn h_zero_matches_the_drawing_read_backwards() {
    let h = load("example_h");
    let mut eng = PhantomEngine::with_default_bound(&h).unwrap();
    let r = eng.characteristic_phantom(h.quiver.vertex_id("0").unwrap()).unwrap();
    assert!(r.phantom.left.is_some() && r.phantom.right.is_some());
    let (g, _) = drawn_window(&h, &r.phantom.mirrored(&h), 2);
    matches_figure(&g, &H_ZERO).unwrap();
    assert_ne!(r.left.step(), r.right.step());
    assert!(matches!(r.left, SideOutcome::Periodic { .. }) && matches!(r.right, SideOutcome::Periodic { .. }));
}

#[test]
fn lambda22() {
    let l = load("lambda22");
    let mut eng = PhantomEngine::with_default_bound(&l).unwrap();
    let s = StringWord::trivial(0);
    assert!(matches!(eng.string_pdim(&s).unwrap(), PdimResult::Infinite { .. }));
    let r = eng.characteristic_phantom(0).unwrap();
    assert!(r.finite);
    assert_eq!(r.phantom.core.len(), 2);
    assert!(eng.contravariant_finiteness().unwrap());
    assert_eq!(eng.findim_report(6).unwrap().lfindim, FindimValue::Exact(0));
}

#[test]
fn g_is_not_a_string_algebra() {
    let g = load("example_g");
    let c = g.classify();
    assert!(c.is_special_biserial && !c.is_string && !c.has_string_combinatorics);
    assert!(PhantomEngine::with_default_bound(&g).is_err());
}
