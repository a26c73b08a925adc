//! Minimum generators for every image of a pseudo-closure.
//!
//! [`min_gen`] keeps one label (a generator) per image and repeatedly tries
//! to improve labels by extending the label of each image with one more
//! element, scanning images by size. When the operator is size-increasing
//! (every closure is) all labels are final after the first sweep, so the
//! sweep loop stops after a second, change-free sweep.

use std::collections::HashMap;

use serde::Serialize;

use crate::closure::{classify, ClassifyMode, PseudoClosure, EXHAUSTIVE_LIMIT};
use crate::error::{Error, Result};
use crate::vset::{check_universe, subsets_in_canonical_order, SetFamily, VertexSet, DEFAULT_MAX_UNIVERSE};

/// One label per image, plus instrumentation counters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorTable {
    images: Vec<VertexSet>,
    labels: Vec<VertexSet>,
    /// Number of sweeps of the outer improvement loop.
    pub while_iterations: usize,
    /// Number of label replacements.
    pub label_updates: usize,
    #[serde(skip)]
    index: HashMap<VertexSet, usize>,
}

impl GeneratorTable {
    fn new(images: Vec<VertexSet>, labels: Vec<VertexSet>) -> Self {
        let index = images.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        GeneratorTable {
            images,
            labels,
            while_iterations: 0,
            label_updates: 0,
            index,
        }
    }

    pub fn label(&self, image: &VertexSet) -> Option<&VertexSet> {
        self.index.get(image).map(|&i| &self.labels[i])
    }

    pub fn images(&self) -> &[VertexSet] {
        &self.images
    }

    pub fn labels(&self) -> &[VertexSet] {
        &self.labels
    }

    /// `(image, label)` pairs in canonical image order.
    pub fn iter(&self) -> impl Iterator<Item = (&VertexSet, &VertexSet)> {
        self.images.iter().zip(&self.labels)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MinGenOptions {
    /// Re-verify the pseudo-closure law exhaustively first (universes up to 12).
    pub verify_law: bool,
}

/// Computes a minimum generator for every image of `f`.
///
/// `images` must be exactly `Im(f)`. A generator whose image is missing from
/// `images` aborts with [`Error::ImagesIncomplete`].
pub fn min_gen<F: PseudoClosure + ?Sized>(f: &F, images: &SetFamily) -> Result<GeneratorTable> {
    min_gen_with(f, images, MinGenOptions::default())
}

pub fn min_gen_with<F: PseudoClosure + ?Sized>(f: &F, images: &SetFamily, opts: MinGenOptions) -> Result<GeneratorTable> {
    let n = f.universe_size();
    check_universe(n, DEFAULT_MAX_UNIVERSE)?;
    if images.universe_size() != n {
        return Err(Error::UniverseMismatch {
            left: n,
            right: images.universe_size(),
        });
    }
    if opts.verify_law && n <= 12 {
        let c = classify(f, ClassifyMode::Exhaustive)?;
        if !c.pseudo_closure_law {
            return Err(Error::InvalidInstance("operator violates the pseudo-closure law".into()));
        }
    }

    // images arrive in canonical (size, lex) order, which is the sweep order
    let mut table = GeneratorTable::new(images.sets().to_vec(), images.sets().to_vec());
    let empty = VertexSet::empty(n);
    let f_empty = f.evaluate(&empty);
    let Some(&bottom) = table.index.get(&f_empty) else {
        return Err(Error::ImagesIncomplete {
            generator: empty,
            image: f_empty,
        });
    };
    table.labels[bottom] = empty;

    let mut again = true;
    while again {
        again = false;
        table.while_iterations += 1;
        for y in 0..table.images.len() {
            for z in 0..n {
                if table.labels[y].contains(z) {
                    continue;
                }
                let image = f.extend(&table.images[y], z);
                let Some(&h) = table.index.get(&image) else {
                    return Err(Error::ImagesIncomplete {
                        generator: table.labels[y].with(z),
                        image,
                    });
                };
                if table.labels[y].len() + 1 < table.labels[h].len() {
                    let r = table.labels[y].with(z);
                    debug_assert!(r.len() < table.labels[h].len(), "labels never grow");
                    table.labels[h] = r;
                    table.label_updates += 1;
                    again = true;
                }
            }
        }
    }
    Ok(table)
}

/// Reference solver: scans all subsets in (size, lex) order and records the
/// first generator seen for each image.
pub fn brute_force_min_gen<F: PseudoClosure + ?Sized>(f: &F) -> Result<GeneratorTable> {
    let n = f.universe_size();
    check_universe(n, EXHAUSTIVE_LIMIT)?;
    let mut first: HashMap<VertexSet, VertexSet> = HashMap::new();
    for x in subsets_in_canonical_order(n) {
        first.entry(f.evaluate(&x)).or_insert(x);
    }
    let mut pairs: Vec<(VertexSet, VertexSet)> = first.into_iter().collect();
    pairs.sort();
    let (images, labels) = pairs.into_iter().unzip();
    Ok(GeneratorTable::new(images, labels))
}

/// Answer to "is there `X` with `|X| ≤ k` and `f(X) = A`?".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MgsVerdict {
    Yes { witness: VertexSet },
    No { minimum: usize },
    /// `f` never reaches the full universe.
    Unreachable,
}

pub fn mgs_decision<F: PseudoClosure + ?Sized>(f: &F, images: &SetFamily, k: usize) -> Result<MgsVerdict> {
    let full = VertexSet::full(f.universe_size());
    if !images.contains(&full) {
        return Ok(MgsVerdict::Unreachable);
    }
    let table = min_gen(f, images)?;
    let label = table.label(&full).expect("full universe is an image").clone();
    Ok(if label.len() <= k {
        MgsVerdict::Yes { witness: label }
    } else {
        MgsVerdict::No { minimum: label.len() }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::{enumerate_images, ConvexHullOperator, Identity, TableOperator};
    use crate::graph::Graph;

    fn set(n: usize, m: &[usize]) -> VertexSet {
        VertexSet::from_members(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn identity_labels_are_the_images() {
        let f = Identity(3);
        let t = min_gen(&f, &enumerate_images(&f).unwrap()).unwrap();
        assert_eq!(t.len(), 8);
        for (h, l) in t.iter() {
            assert_eq!(h, l);
        }
        assert_eq!(t.label_updates, 0);
        assert_eq!(brute_force_min_gen(&f).unwrap().labels(), t.labels());
    }

    #[test]
    fn c4_full_set_needs_an_antipodal_pair() {
        let f = ConvexHullOperator::new(Graph::cycle(4)).unwrap();
        let t = min_gen(&f, &enumerate_images(&f).unwrap()).unwrap();
        let l = t.label(&VertexSet::full(4)).unwrap();
        assert_eq!(l.len(), 2);
        assert!(f.evaluate(l).is_full());
        assert_eq!(t.while_iterations, 2);
    }

    #[test]
    fn brute_force_examples() {
        let p3 = ConvexHullOperator::new(Graph::path(3)).unwrap();
        let t = brute_force_min_gen(&p3).unwrap();
        assert_eq!(t.label(&VertexSet::full(3)), Some(&set(3, &[0, 2])));
        let k4 = ConvexHullOperator::new(Graph::complete(4)).unwrap();
        let t = brute_force_min_gen(&k4).unwrap();
        assert_eq!(t.label(&VertexSet::full(4)), Some(&VertexSet::full(4)));
        assert!(brute_force_min_gen(&Identity(21)).is_err());
    }

    #[test]
    fn incomplete_images_are_reported() {
        let f = ConvexHullOperator::new(Graph::path(3)).unwrap();
        let partial = SetFamily::new(3, vec![VertexSet::empty(3), set(3, &[0])]).unwrap();
        assert!(matches!(min_gen(&f, &partial), Err(Error::ImagesIncomplete { .. })));
        let no_bottom = SetFamily::new(3, vec![VertexSet::full(3)]).unwrap();
        assert!(matches!(min_gen(&f, &no_bottom), Err(Error::ImagesIncomplete { .. })));
    }

    #[test]
    fn mgs_examples() {
        let id = Identity(3);
        let im = enumerate_images(&id).unwrap();
        assert_eq!(
            mgs_decision(&id, &im, 3).unwrap(),
            MgsVerdict::Yes {
                witness: VertexSet::full(3)
            }
        );
        assert_eq!(mgs_decision(&id, &im, 2).unwrap(), MgsVerdict::No { minimum: 3 });
        let c6 = ConvexHullOperator::new(Graph::cycle(6)).unwrap();
        match mgs_decision(&c6, &enumerate_images(&c6).unwrap(), 2).unwrap() {
            MgsVerdict::Yes { witness } => {
                assert_eq!(witness.len(), 2);
                assert!(c6.evaluate(&witness).is_full());
            }
            other => panic!("expected yes, got {other:?}"),
        }
        // constant operator never reaches the universe
        let constant = TableOperator::from_fn(2, |_| 0).unwrap();
        let im = enumerate_images(&constant).unwrap();
        assert_eq!(mgs_decision(&constant, &im, 2).unwrap(), MgsVerdict::Unreachable);
    }

    #[test]
    fn verify_law_rejects_non_pseudo_closures() {
        // f(∅)=∅, f({0})={1}, f({1})={0}, f({0,1})={0,1}: not idempotent
        let f = TableOperator::new(2, vec![0, 2, 1, 3]).unwrap();
        let im = enumerate_images(&f).unwrap();
        let r = min_gen_with(&f, &im, MinGenOptions { verify_law: true });
        assert!(matches!(r, Err(Error::InvalidInstance(_))));
    }

    #[test]
    fn singleton_generators_of_non_atomistic_operator_with_empty_bottom() {
        // cl(∅)=∅ and cl({0}) = cl({1}) = {0,1}: the full set has a generator
        // of size one, found only when the empty image is swept as well.
        let f = TableOperator::new(2, vec![0, 3, 3, 3]).unwrap();
        let t = min_gen(&f, &enumerate_images(&f).unwrap()).unwrap();
        assert_eq!(t.label(&VertexSet::full(2)).unwrap().len(), 1);
    }
}
