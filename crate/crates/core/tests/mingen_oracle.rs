mod common;

use std::collections::HashMap;

use hullkit::closure::{
    classify, closure_from_family, enumerate_images, punctured, ClassifyMode, ConvexHullOperator, PseudoClosure, RepresentativeOperator,
};
use hullkit::mingen::{brute_force_min_gen, mgs_decision, min_gen, MgsVerdict};
use hullkit::verify::{random_closed_family, random_subset};
use hullkit::VertexSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn assert_matches_oracle<F: PseudoClosure>(f: &F) -> usize {
    let images = enumerate_images(f).unwrap();
    let table = min_gen(f, &images).unwrap();
    let oracle = brute_force_min_gen(f).unwrap();
    assert_eq!(table.images(), oracle.images());
    for (img, label) in table.iter() {
        assert_eq!(label.len(), oracle.label(img).unwrap().len(), "image {img}");
        assert_eq!(f.evaluate(label), *img);
    }
    table.while_iterations
}

#[test]
fn convexity_of_every_small_connected_graph() {
    for g in connected_graphs(6).into_iter().flatten() {
        let conv = ConvexHullOperator::new(g).unwrap();
        assert!(assert_matches_oracle(&conv) <= 2);
    }
}

#[test]
fn punctured_closures() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let n = rng.gen_range(1..=5);
        let fam = random_closed_family(&mut rng, n);
        let big = random_subset(&mut rng, n, 0.6).with(rng.gen_range(0..n));
        let small = big.iter().find(|_| rng.gen_bool(0.5)).or(big.first()).map(|e| VertexSet::singleton(n, e)).unwrap();
        let p = punctured(closure_from_family(fam), big, small).unwrap();
        assert_matches_oracle(&p);
    }
}

#[test]
fn representative_operators() {
    // pick the lexicographically last minimum-size generator of each closed set
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let n = rng.gen_range(2..=5);
        let fam = random_closed_family(&mut rng, n);
        let cl = closure_from_family(fam.clone());
        let mut pick = HashMap::new();
        for x in hullkit::vset::subsets_in_canonical_order(n) {
            let c = cl.evaluate(&x);
            let better = pick.get(&c).is_none_or(|p: &VertexSet| p.len() == x.len());
            if better {
                pick.insert(c, x);
            }
        }
        let f = RepresentativeOperator::new(cl, pick).unwrap();
        assert!(classify(&f, ClassifyMode::Exhaustive).unwrap().pseudo_closure_law);
        assert_matches_oracle(&f);
    }
}

#[test]
fn three_pass_operator_needs_a_third_sweep() {
    let f = three_pass_operator();
    assert_eq!(assert_matches_oracle(&f), 3);
    let c = classify(&f, ClassifyMode::Exhaustive).unwrap();
    assert!(c.pseudo_closure_law && c.idempotent);
    assert!(!c.extensive && !c.increasing && !c.size_increasing);
}

#[test]
fn decision_agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let cl = closure_from_family(random_closed_family(&mut rng, n));
        let images = enumerate_images(&cl).unwrap();
        let best = brute_force_min_gen(&cl).unwrap().label(&VertexSet::full(n)).unwrap().len();
        for k in 0..=n {
            let v = mgs_decision(&cl, &images, k).unwrap();
            match v {
                MgsVerdict::Yes { witness } => {
                    assert!(k >= best && witness.len() == best);
                    assert!(cl.evaluate(&witness).is_full());
                }
                MgsVerdict::No { minimum } => assert!(k < best && minimum == best),
                MgsVerdict::Unreachable => panic!("closures reach the universe"),
            }
        }
    }
}
