//! Pseudo-closure operators on finite universes.
//!
//! A pseudo-closure satisfies `f(X ∪ Y) = f(f(X) ∪ f(Y))`. Closures (extensive,
//! increasing, idempotent operators) are exactly the extensive
//! pseudo-closures. This module provides the operator trait, concrete
//! operators, axiom classification and image enumeration.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Geodesics, Graph};
use crate::vset::{check_universe, SetFamily, VertexSet, DEFAULT_MAX_UNIVERSE};

/// Largest universe accepted by exhaustive (all-subsets) routines.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Default number of trials for sampled classification.
pub const DEFAULT_TRIALS: usize = 10_000;

/// Default seed for sampled classification.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// An evaluator for a set operator `f : 2^A → 2^A`.
pub trait PseudoClosure {
    fn universe_size(&self) -> usize;

    fn evaluate(&self, x: &VertexSet) -> VertexSet;

    /// `f(X ∪ {w})` given `image = f(X)`.
    ///
    /// For a pseudo-closure `f(f(X) ∪ {w}) = f(X ∪ {w})`, which is what the
    /// default computes; operators with a cheaper incremental path override it.
    fn extend(&self, image: &VertexSet, w: usize) -> VertexSet {
        self.evaluate(&image.with(w))
    }

    /// True when the operator is known by construction to be a closure.
    fn is_known_closure(&self) -> bool {
        false
    }
}

impl<T: PseudoClosure + ?Sized> PseudoClosure for &T {
    fn universe_size(&self) -> usize {
        (**self).universe_size()
    }
    fn evaluate(&self, x: &VertexSet) -> VertexSet {
        (**self).evaluate(x)
    }
    fn extend(&self, image: &VertexSet, w: usize) -> VertexSet {
        (**self).extend(image, w)
    }
    fn is_known_closure(&self) -> bool {
        (**self).is_known_closure()
    }
}

impl<T: PseudoClosure + ?Sized> PseudoClosure for Box<T> {
    fn universe_size(&self) -> usize {
        (**self).universe_size()
    }
    fn evaluate(&self, x: &VertexSet) -> VertexSet {
        (**self).evaluate(x)
    }
    fn extend(&self, image: &VertexSet, w: usize) -> VertexSet {
        (**self).extend(image, w)
    }
    fn is_known_closure(&self) -> bool {
        (**self).is_known_closure()
    }
}

/// `X ↦ X`.
#[derive(Debug, Clone, Copy)]
pub struct Identity(pub usize);

impl PseudoClosure for Identity {
    fn universe_size(&self) -> usize {
        self.0
    }
    fn evaluate(&self, x: &VertexSet) -> VertexSet {
        x.clone()
    }
    fn extend(&self, image: &VertexSet, w: usize) -> VertexSet {
        image.with(w)
    }
    fn is_known_closure(&self) -> bool {
        true
    }
}

/// An arbitrary operator on a universe of at most 20 elements, stored as a
/// lookup table indexed by subset bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableOperator {
    universe: usize,
    table: Vec<u32>,
}

impl TableOperator {
    pub fn new(universe: usize, table: Vec<u32>) -> Result<Self> {
        check_universe(universe, EXHAUSTIVE_LIMIT)?;
        if table.len() != 1 << universe {
            return Err(Error::InvalidInstance(format!(
                "operator table has {} entries, expected {}",
                table.len(),
                1usize << universe
            )));
        }
        let full = (1u64 << universe) - 1;
        if table.iter().any(|&v| u64::from(v) & !full != 0) {
            return Err(Error::InvalidInstance("operator table value outside universe".into()));
        }
        Ok(TableOperator { universe, table })
    }

    /// Tabulates any operator.
    pub fn tabulate<F: PseudoClosure + ?Sized>(f: &F) -> Result<Self> {
        let n = f.universe_size();
        check_universe(n, EXHAUSTIVE_LIMIT)?;
        let table = (0..1u64 << n)
            .map(|m| f.evaluate(&VertexSet::from_mask(n, m)).to_mask() as u32)
            .collect();
        Ok(TableOperator { universe: n, table })
    }

    pub fn from_fn(universe: usize, f: impl FnMut(u32) -> u32) -> Result<Self> {
        check_universe(universe, EXHAUSTIVE_LIMIT)?;
        Self::new(universe, (0..1u32 << universe).map(f).collect())
    }

    #[inline]
    pub fn at(&self, mask: u32) -> u32 {
        self.table[mask as usize]
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }
}

impl PseudoClosure for TableOperator {
    fn universe_size(&self) -> usize {
        self.universe
    }
    fn evaluate(&self, x: &VertexSet) -> VertexSet {
        VertexSet::from_mask(self.universe, u64::from(self.at(x.to_mask() as u32)))
    }
}

/// Graph convexity: `X ↦ conv(X)` on a connected graph.
#[derive(Debug, Clone)]
pub struct ConvexHullOperator {
    geo: Geodesics,
    intervals: Vec<VertexSet>,
}

impl ConvexHullOperator {
    pub fn new(graph: Graph) -> Result<Self> {
        Self::from_geodesics(Geodesics::new(graph))
    }

    pub fn from_geodesics(geo: Geodesics) -> Result<Self> {
        check_universe(geo.n(), DEFAULT_MAX_UNIVERSE)?;
        if !geo.is_connected() {
            return Err(Error::Disconnected);
        }
        let n = geo.n();
        let mut intervals = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                intervals.push(geo.interval(u, v)?);
            }
        }
        Ok(ConvexHullOperator { geo, intervals })
    }

    pub fn geodesics(&self) -> &Geodesics {
        &self.geo
    }

    fn hull_from<I: IntoIterator<Item = usize>>(&self, base: &VertexSet, extra: I) -> VertexSet {
        let n = self.geo.n();
        let mut hull = base.clone();
        let mut processed: Vec<usize> = base.iter().collect();
        let mut queue: Vec<usize> = extra.into_iter().filter(|&w| hull.insert(w)).collect();
        while let Some(w) = queue.pop() {
            let mut reach = VertexSet::empty(n);
            let row = &self.intervals[w * n..(w + 1) * n];
            for &p in &processed {
                reach.union_with(&row[p]);
            }
            reach.difference_with(&hull);
            for t in reach.iter() {
                hull.insert(t);
                queue.push(t);
            }
            processed.push(w);
        }
        hull
    }
}

impl PseudoClosure for ConvexHullOperator {
    fn universe_size(&self) -> usize {
        self.geo.n()
    }
    fn evaluate(&self, x: &VertexSet) -> VertexSet {
        self.hull_from(&VertexSet::empty(self.geo.n()), x.iter())
    }
    fn extend(&self, image: &VertexSet, w: usize) -> VertexSet {
        if image.contains(w) {
            return image.clone();
        }
        self.hull_from(image, [w])
    }
    fn is_known_closure(&self) -> bool {
        true
    }
}

/// A family of subsets containing the universe and closed under intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFamily {
    family: SetFamily,
}

impl ClosedFamily {
    pub fn new(universe: usize, sets: Vec<VertexSet>) -> Result<Self> {
        Self::from_family(SetFamily::new(universe, sets)?)
    }

    pub fn from_family(family: SetFamily) -> Result<Self> {
        let n = family.universe_size();
        if !family.contains(&VertexSet::full(n)) {
            return Err(Error::MissingUniverse);
        }
        let members: HashSet<&VertexSet> = family.iter().collect();
        let sets = family.sets();
        for (i, a) in sets.iter().enumerate() {
            for b in &sets[i + 1..] {
                if !members.contains(&a.intersection(b)) {
                    return Err(Error::NotIntersectionClosed {
                        left: a.clone(),
                        right: b.clone(),
                    });
                }
            }
        }
        Ok(ClosedFamily { family })
    }

    /// Closes an arbitrary family under intersection and adds the universe.
    pub fn generated_by(universe: usize, generators: &[VertexSet]) -> Result<Self> {
        let mut all: HashSet<VertexSet> = HashSet::new();
        all.insert(VertexSet::full(universe));
        let mut frontier: Vec<VertexSet> = vec![VertexSet::full(universe)];
        while let Some(s) = frontier.pop() {
            for g in generators {
                if g.universe_size() != universe {
                    return Err(Error::UniverseMismatch {
                        left: universe,
                        right: g.universe_size(),
                    });
                }
                let t = s.intersection(g);
                if all.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
        Ok(ClosedFamily {
            family: SetFamily::new(universe, all.into_iter().collect())?,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.family.universe_size()
    }

    pub fn sets(&self) -> &[VertexSet] {
        self.family.sets()
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn into_family(self) -> SetFamily {
        self.family
    }
}

/// The closure whose closed sets are a given [`ClosedFamily`]:
/// `cl(X) = ⋂ { Y ∈ family : X ⊆ Y }`.
#[derive(Debug, Clone)]
pub struct FamilyClosure {
    family: ClosedFamily,
}

/// Builds the closure operator of an intersection-closed family.
pub fn closure_from_family(family: ClosedFamily) -> FamilyClosure {
    FamilyClosure { family }
}

impl FamilyClosure {
    pub fn family(&self) -> &ClosedFamily {
        &self.family
    }
}

impl PseudoClosure for FamilyClosure {
    fn universe_size(&self) -> usize {
        self.family.universe_size()
    }
    fn evaluate(&self, x: &VertexSet) -> VertexSet {
        let mut out = VertexSet::full(self.universe_size());
        for y in self.family.sets() {
            if x.is_subset(y) {
                out.intersect_with(y);
            }
        }
        out
    }
    fn is_known_closure(&self) -> bool {
        true
    }
}

/// `Y ↦ cl(Y ∪ big) \ small`, an increasing pseudo-closure that is not
/// extensive.
#[derive(Debug, Clone)]
pub struct Punctured<C> {
    inner: C,
    big: VertexSet,
    small: VertexSet,
}

/// Builds the punctured operator; `small` must be a nonempty subset of `big`
/// and `cl` a closure.
pub fn punctured<C: PseudoClosure>(cl: C, big: VertexSet, small: VertexSet) -> Result<Punctured<C>> {
    let n = cl.universe_size();
    if big.universe_size() != n || small.universe_size() != n {
        return Err(Error::InvalidPuncture("sets must live in the operator's universe".into()));
    }
    if small.is_empty() {
        return Err(Error::InvalidPuncture("removed set is empty".into()));
    }
    if !small.is_subset(&big) {
        return Err(Error::InvalidPuncture(format!("{small} is not a subset of {big}")));
    }
    if !cl.is_known_closure() && n <= 12 {
        let c = classify(&cl, ClassifyMode::Exhaustive)?;
        if !c.is_closure() {
            return Err(Error::InvalidPuncture("base operator is not a closure".into()));
        }
    }
    Ok(Punctured { inner: cl, big, small })
}

impl<C: PseudoClosure> PseudoClosure for Punctured<C> {
    fn universe_size(&self) -> usize {
        self.inner.universe_size()
    }
    fn evaluate(&self, y: &VertexSet) -> VertexSet {
        let mut out = self.inner.evaluate(&y.union(&self.big));
        out.difference_with(&self.small);
        out
    }
    fn extend(&self, image: &VertexSet, w: usize) -> VertexSet {
        // image ∪ small recovers cl(X ∪ big), which always contains small
        let mut out = self.inner.extend(&image.union(&self.small), w);
        out.difference_with(&self.small);
        out
    }
}

/// Wraps a closure `cl` with a choice of representative generator for each
/// closed set: `f = pick ∘ cl`. Whenever `cl(pick(C)) = C` for every closed
/// `C`, `f` is a pseudo-closure; it is generally neither extensive nor
/// size-increasing.
#[derive(Debug, Clone)]
pub struct RepresentativeOperator<C> {
    inner: C,
    pick: std::collections::HashMap<VertexSet, VertexSet>,
}

impl<C: PseudoClosure> RepresentativeOperator<C> {
    /// `pick` maps closed sets to generators; closed sets missing from the
    /// map represent themselves.
    pub fn new(inner: C, pick: std::collections::HashMap<VertexSet, VertexSet>) -> Result<Self> {
        for (closed, rep) in &pick {
            if inner.evaluate(rep) != *closed {
                return Err(Error::InvalidInstance(format!("{rep} does not generate {closed}")));
            }
        }
        Ok(RepresentativeOperator { inner, pick })
    }

    fn represent(&self, closed: VertexSet) -> VertexSet {
        match self.pick.get(&closed) {
            Some(rep) => rep.clone(),
            None => closed,
        }
    }
}

impl<C: PseudoClosure> PseudoClosure for RepresentativeOperator<C> {
    fn universe_size(&self) -> usize {
        self.inner.universe_size()
    }
    fn evaluate(&self, x: &VertexSet) -> VertexSet {
        self.represent(self.inner.evaluate(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifyMode {
    Exhaustive,
    Sampled { seed: u64, trials: usize },
}

impl Default for ClassifyMode {
    fn default() -> Self {
        ClassifyMode::Sampled {
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
        }
    }
}

/// Which operator axioms hold. In sampled mode a `false` is definitive and a
/// `true` only means "not falsified".
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct OperatorClassification {
    pub extensive: bool,
    pub increasing: bool,
    pub idempotent: bool,
    pub pseudo_closure_law: bool,
    pub size_increasing: bool,
    pub atomistic: bool,
    pub exhaustive: bool,
    pub seed: Option<u64>,
    pub trials: usize,
}

impl OperatorClassification {
    pub fn is_closure(&self) -> bool {
        self.extensive && self.increasing && self.idempotent
    }
}

/// Checks the operator axioms.
///
/// Exhaustive mode tabulates `f` on all `2^|A|` subsets and uses the
/// single-element forms of the pairwise axioms, which are equivalent:
/// monotonicity and size-increase compose along chains `X ⊆ X+w ⊆ … ⊆ Y`,
/// and the pseudo-closure law holds iff `f` is idempotent and
/// `f(X ∪ {w}) = f(f(X) ∪ {w})` for every `X`, `w`.
pub fn classify<F: PseudoClosure + ?Sized>(f: &F, mode: ClassifyMode) -> Result<OperatorClassification> {
    match mode {
        ClassifyMode::Exhaustive => classify_exhaustive(f),
        ClassifyMode::Sampled { seed, trials } => Ok(classify_sampled(f, seed, trials)),
    }
}

fn classify_exhaustive<F: PseudoClosure + ?Sized>(f: &F) -> Result<OperatorClassification> {
    let table = TableOperator::tabulate(f)?;
    let n = table.universe;
    let t = |m: u32| table.at(m);
    let mut c = OperatorClassification {
        extensive: true,
        increasing: true,
        idempotent: true,
        pseudo_closure_law: true,
        size_increasing: true,
        atomistic: true,
        exhaustive: true,
        seed: None,
        trials: 1 << n,
    };
    let mut step_law = true;
    for x in 0..1u32 << n {
        let fx = t(x);
        if x & !fx != 0 {
            c.extensive = false;
        }
        if t(fx) != fx {
            c.idempotent = false;
        }
        for w in 0..n {
            let bit = 1u32 << w;
            let fxw = t(x | bit);
            // w ∈ X still matters here when f is not extensive
            if t(fx | bit) != fxw {
                step_law = false;
            }
            if x & bit != 0 {
                continue;
            }
            if fx & !fxw != 0 {
                c.increasing = false;
            }
            if fx != fxw && fx.count_ones() >= fxw.count_ones() {
                c.size_increasing = false;
            }
        }
    }
    c.pseudo_closure_law = c.idempotent && step_law;
    c.atomistic = (0..n).all(|x| t(1 << x) == 1 << x);
    Ok(c)
}

fn classify_sampled<F: PseudoClosure + ?Sized>(f: &F, seed: u64, trials: usize) -> OperatorClassification {
    let n = f.universe_size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_set = |rng: &mut ChaCha8Rng| {
        let mut s = VertexSet::empty(n);
        for i in 0..n {
            if rng.gen_bool(0.5) {
                s.insert(i);
            }
        }
        s
    };
    let mut c = OperatorClassification {
        extensive: true,
        increasing: true,
        idempotent: true,
        pseudo_closure_law: true,
        size_increasing: true,
        atomistic: true,
        exhaustive: false,
        seed: Some(seed),
        trials,
    };
    for _ in 0..trials {
        let x = random_set(&mut rng);
        let y = random_set(&mut rng);
        let xy = x.union(&y);
        let (fx, fy, fxy) = (f.evaluate(&x), f.evaluate(&y), f.evaluate(&xy));
        c.extensive &= x.is_subset(&fx);
        c.idempotent &= f.evaluate(&fx) == fx;
        c.increasing &= fx.is_subset(&fxy);
        c.size_increasing &= fx == fxy || fx.len() < fxy.len();
        c.pseudo_closure_law &= f.evaluate(&fx.union(&fy)) == fxy;
        if n > 0 {
            let a = VertexSet::singleton(n, rng.gen_range(0..n));
            c.atomistic &= f.evaluate(&a) == a;
        }
    }
    c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ImageStrategy {
    /// Lectic enumeration for known closures, exhaustive otherwise.
    #[default]
    Auto,
    /// NextClosure-style lectic traversal; correct only for closures.
    Lectic,
    /// Evaluate every subset (universe at most 20).
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ImageOptions {
    pub strategy: ImageStrategy,
    /// Maximum number of images before giving up.
    pub budget: Option<usize>,
}

/// All distinct images of `f`, canonically sorted.
pub fn enumerate_images<F: PseudoClosure + ?Sized>(f: &F) -> Result<SetFamily> {
    enumerate_images_with(f, ImageOptions::default())
}

pub fn enumerate_images_with<F: PseudoClosure + ?Sized>(f: &F, opts: ImageOptions) -> Result<SetFamily> {
    let n = f.universe_size();
    let lectic = match opts.strategy {
        ImageStrategy::Auto => f.is_known_closure(),
        ImageStrategy::Lectic => true,
        ImageStrategy::Exhaustive => false,
    };
    let sets = if lectic {
        lectic_closed_sets(f, opts.budget)?
    } else {
        check_universe(n, EXHAUSTIVE_LIMIT)?;
        let mut seen = HashSet::new();
        for m in 0..1u64 << n {
            seen.insert(f.evaluate(&VertexSet::from_mask(n, m)));
            if let Some(b) = opts.budget {
                if seen.len() > b {
                    return Err(Error::BudgetExceeded {
                        what: "image enumeration",
                        limit: b,
                    });
                }
            }
        }
        seen.into_iter().collect()
    };
    SetFamily::new(n, sets)
}

/// Closed sets of a closure in lectic order, each emitted once.
pub fn lectic_closed_sets<F: PseudoClosure + ?Sized>(cl: &F, budget: Option<usize>) -> Result<Vec<VertexSet>> {
    let n = cl.universe_size();
    check_universe(n, DEFAULT_MAX_UNIVERSE)?;
    let mut out = vec![cl.evaluate(&VertexSet::empty(n))];
    while let Some(next) = next_closure(cl, out.last().unwrap()) {
        out.push(next);
        if let Some(b) = budget {
            if out.len() > b {
                return Err(Error::BudgetExceeded {
                    what: "closed-set enumeration",
                    limit: b,
                });
            }
        }
    }
    Ok(out)
}

/// Lectically next closed set after `current`, if any.
fn next_closure<F: PseudoClosure + ?Sized>(cl: &F, current: &VertexSet) -> Option<VertexSet> {
    let n = cl.universe_size();
    let mut prefix = current.clone();
    for i in (0..n).rev() {
        if prefix.remove(i) {
            continue;
        }
        let candidate = cl.evaluate(&prefix.with(i));
        // accept iff nothing below i was added
        if candidate.difference(&prefix).first() == Some(i) {
            return Some(candidate);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, m: &[usize]) -> VertexSet {
        VertexSet::from_members(n, m.iter().copied()).unwrap()
    }

    /// Literal pairwise check of every axiom; independent of the
    /// single-element reformulation used by `classify`.
    fn classify_pairwise(f: &TableOperator) -> [bool; 5] {
        let n = f.universe_size();
        let t = |m: u32| f.at(m);
        let (mut ext, mut inc, mut idem, mut law, mut size) = (true, true, true, true, true);
        for x in 0..1u32 << n {
            ext &= x & !t(x) == 0;
            idem &= t(t(x)) == t(x);
            for y in 0..1u32 << n {
                law &= t(x | y) == t(t(x) | t(y));
                if x & !y == 0 {
                    inc &= t(x) & !t(y) == 0;
                    size &= t(x) == t(y) || t(x).count_ones() < t(y).count_ones();
                }
            }
        }
        [ext, inc, idem, law, size]
    }

    #[test]
    fn single_element_forms_agree_with_pairwise_definitions() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=3usize {
            for _ in 0..300 {
                let op = TableOperator::from_fn(n, |_| rng.gen_range(0..1u32 << n)).unwrap();
                let c = classify(&op, ClassifyMode::Exhaustive).unwrap();
                let p = classify_pairwise(&op);
                assert_eq!([c.extensive, c.increasing, c.idempotent, c.pseudo_closure_law, c.size_increasing], p);
            }
        }
        // every operator on a 2-element universe
        let n = 2;
        for code in 0..(1u32 << 8) {
            let op = TableOperator::from_fn(n, |m| (code >> (2 * m)) & 3).unwrap();
            let c = classify(&op, ClassifyMode::Exhaustive).unwrap();
            let p = classify_pairwise(&op);
            assert_eq!([c.extensive, c.increasing, c.idempotent, c.pseudo_closure_law, c.size_increasing], p);
        }
    }

    #[test]
    fn conv_is_an_atomistic_closure() {
        let op = ConvexHullOperator::new(Graph::cycle(5)).unwrap();
        let c = classify(&op, ClassifyMode::Exhaustive).unwrap();
        assert!(c.extensive && c.increasing && c.idempotent && c.pseudo_closure_law && c.size_increasing && c.atomistic);
        let s = classify(&op, ClassifyMode::default()).unwrap();
        assert_eq!(s.seed, Some(DEFAULT_SEED));
        assert!(s.is_closure() && s.pseudo_closure_law);
    }

    #[test]
    fn identity_passes_everything() {
        let c = classify(&Identity(4), ClassifyMode::Exhaustive).unwrap();
        assert!(c.is_closure() && c.pseudo_closure_law && c.size_increasing && c.atomistic);
    }

    #[test]
    fn exhaustive_rejects_large_universe() {
        assert_eq!(
            classify(&Identity(21), ClassifyMode::Exhaustive),
            Err(Error::UniverseTooLarge { size: 21, limit: 20 })
        );
    }

    #[test]
    fn punctured_is_pseudo_closure_not_extensive() {
        let f = punctured(Identity(3), set(3, &[0]), set(3, &[0])).unwrap();
        assert_eq!(f.evaluate(&set(3, &[0, 1])), set(3, &[1]));
        assert!(!f.evaluate(&set(3, &[0])).contains(0));
        let c = classify(&f, ClassifyMode::Exhaustive).unwrap();
        assert!(c.pseudo_closure_law && !c.extensive && c.increasing);

        let conv = ConvexHullOperator::new(Graph::path(3)).unwrap();
        let g = punctured(&conv, set(3, &[1]), set(3, &[1])).unwrap();
        assert_eq!(g.evaluate(&set(3, &[0, 2])), set(3, &[0, 2]));
        assert_eq!(g.extend(&set(3, &[0]), 2), set(3, &[0, 2]));
    }

    #[test]
    fn punctured_preconditions() {
        assert!(matches!(
            punctured(Identity(3), set(3, &[0]), VertexSet::empty(3)),
            Err(Error::InvalidPuncture(_))
        ));
        assert!(matches!(
            punctured(Identity(3), set(3, &[0]), set(3, &[1])),
            Err(Error::InvalidPuncture(_))
        ));
        let not_closure = TableOperator::from_fn(2, |_| 0).unwrap();
        assert!(matches!(
            punctured(not_closure, set(2, &[0]), set(2, &[0])),
            Err(Error::InvalidPuncture(_))
        ));
    }

    #[test]
    fn family_closure_examples() {
        let all: Vec<VertexSet> = crate::vset::subsets_in_canonical_order(3).collect();
        let id = closure_from_family(ClosedFamily::new(3, all).unwrap());
        for s in crate::vset::subsets_in_canonical_order(3) {
            assert_eq!(id.evaluate(&s), s);
        }
        let trivial = closure_from_family(ClosedFamily::new(3, vec![VertexSet::empty(3), VertexSet::full(3)]).unwrap());
        assert!(trivial.evaluate(&VertexSet::empty(3)).is_empty());
        assert!(trivial.evaluate(&set(3, &[1])).is_full());

        let conv = ConvexHullOperator::new(Graph::cycle(4)).unwrap();
        let fam = ClosedFamily::from_family(enumerate_images(&conv).unwrap()).unwrap();
        let cl = closure_from_family(fam);
        assert!(cl.evaluate(&set(4, &[0, 2])).is_full());
    }

    #[test]
    fn family_validation_errors() {
        assert_eq!(ClosedFamily::new(2, vec![set(2, &[0])]), Err(Error::MissingUniverse));
        let err = ClosedFamily::new(3, vec![set(3, &[0, 1]), set(3, &[1, 2]), VertexSet::full(3)]).unwrap_err();
        assert_eq!(
            err,
            Error::NotIntersectionClosed {
                left: set(3, &[0, 1]),
                right: set(3, &[1, 2])
            }
        );
    }

    #[test]
    fn image_enumeration_examples() {
        assert_eq!(enumerate_images(&Identity(3)).unwrap().len(), 8);
        let c4 = ConvexHullOperator::new(Graph::cycle(4)).unwrap();
        assert_eq!(enumerate_images(&c4).unwrap().len(), 10);
        let k4 = ConvexHullOperator::new(Graph::complete(4)).unwrap();
        assert_eq!(enumerate_images(&k4).unwrap().len(), 16);
        let budget = ImageOptions {
            strategy: ImageStrategy::Lectic,
            budget: Some(5),
        };
        assert!(matches!(enumerate_images_with(&k4, budget), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn lectic_enumeration_is_strictly_increasing_and_complete() {
        let conv = ConvexHullOperator::new(Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5)]).unwrap()).unwrap();
        let lectic = lectic_closed_sets(&conv, None).unwrap();
        for w in lectic.windows(2) {
            assert_eq!(w[0].lectic_cmp(&w[1]), std::cmp::Ordering::Less);
        }
        let brute = enumerate_images_with(
            &conv,
            ImageOptions {
                strategy: ImageStrategy::Exhaustive,
                budget: None,
            },
        )
        .unwrap();
        assert_eq!(SetFamily::new(6, lectic).unwrap(), brute);
    }

    #[test]
    fn conv_extend_matches_evaluate() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)]).unwrap();
        let conv = ConvexHullOperator::new(g).unwrap();
        for s in crate::vset::subsets_in_canonical_order(6) {
            let img = conv.evaluate(&s);
            for w in 0..6 {
                assert_eq!(conv.extend(&img, w), conv.evaluate(&s.with(w)));
            }
        }
    }

    #[test]
    fn representative_operator_is_a_pseudo_closure() {
        let conv = ConvexHullOperator::new(Graph::path(3)).unwrap();
        let mut pick = std::collections::HashMap::new();
        pick.insert(VertexSet::full(3), set(3, &[0, 2]));
        let f = RepresentativeOperator::new(&conv, pick).unwrap();
        let c = classify(&f, ClassifyMode::Exhaustive).unwrap();
        assert!(c.pseudo_closure_law && !c.extensive);
        let mut bad = std::collections::HashMap::new();
        bad.insert(VertexSet::full(3), set(3, &[0, 1]));
        assert!(RepresentativeOperator::new(&conv, bad).is_err());
    }
}
