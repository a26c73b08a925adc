use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::vset::{check_universe, Combinations, VertexSet};

use super::{CubeVectorSet, HittingSetInstance};

/// Largest vector set accepted by [`coordinate_reversal_solve`].
pub const REVERSAL_LIMIT: usize = 25;

/// Hitting set → coordinate reversal, with certificate maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateReduction {
    pub cube: CubeVectorSet,
    /// Index of the extra all-minus vector `x`.
    pub x: usize,
    /// Vector representing each ground element (elements with identical
    /// membership share a vector).
    pub vector_of: Vec<usize>,
    /// A ground element for every vector other than `x`.
    pub element_of: Vec<Option<usize>>,
    /// The family actually encoded: the input sets followed by the ground set.
    pub sets: Vec<VertexSet>,
}

impl CoordinateReduction {
    /// Hitting set of the encoded family → coordinate reversal of size + 1.
    pub fn forward(&self, hitting: &VertexSet) -> VertexSet {
        let mut out = VertexSet::singleton(self.cube.vectors.len(), self.x);
        for e in hitting {
            out.insert(self.vector_of[e]);
        }
        out
    }

    /// Coordinate reversal → hitting set of the encoded family (drops `x`).
    pub fn backward(&self, reversal: &VertexSet) -> VertexSet {
        let universe = self.vector_of.len();
        let mut out = VertexSet::empty(universe);
        for i in reversal {
            if let Some(e) = self.element_of[i] {
                out.insert(e);
            }
        }
        out
    }
}

/// Encodes a hitting-set instance as a coordinate-reversal instance.
///
/// The ground set `V` is appended to the family, elements with identical
/// membership are merged, and a vector `x` lying on the minus side of every
/// coordinate is added. One coordinate per set `S_i`, with `v_i = +` iff
/// `v ∈ S_i`. The minimum reversal is one more than the minimum hitting set
/// of the family with `V` appended.
pub fn hitting_to_coordinate(h: &HittingSetInstance) -> Result<CoordinateReduction> {
    let n = h.universe;
    let mut sets = h.sets.clone();
    sets.push(VertexSet::full(n));
    let d = sets.len();
    let mut vectors: Vec<VertexSet> = Vec::new();
    let mut element_of = Vec::new();
    let mut vector_of = Vec::with_capacity(n);
    let mut index: HashMap<VertexSet, usize> = HashMap::new();
    for v in 0..n {
        let mut vec = VertexSet::empty(d);
        for (i, s) in sets.iter().enumerate() {
            if s.contains(v) {
                vec.insert(i);
            }
        }
        let id = *index.entry(vec.clone()).or_insert_with(|| {
            vectors.push(vec);
            element_of.push(Some(v));
            vectors.len() - 1
        });
        vector_of.push(id);
    }
    // every element lies in V, so no element vector is all-minus
    let x = vectors.len();
    vectors.push(VertexSet::empty(d));
    element_of.push(None);
    Ok(CoordinateReduction {
        cube: CubeVectorSet::new(d, vectors)?,
        x,
        vector_of,
        element_of,
        sets,
    })
}

/// The hitting-set instance `{X⁺_e, X⁻_e}` on the vector indices.
pub fn coordinate_to_hitting(c: &CubeVectorSet) -> Result<HittingSetInstance> {
    let k = c.vectors.len();
    let mut sets = Vec::with_capacity(2 * c.dimension);
    for e in 0..c.dimension {
        let plus: VertexSet = VertexSet::from_members(k, (0..k).filter(|&i| c.vectors[i].contains(e)))?;
        let minus = plus.complement();
        if plus.is_empty() || minus.is_empty() {
            return Err(Error::Infeasible(format!("coordinate {e} is constant on the vector set")));
        }
        sets.push(plus);
        sets.push(minus);
    }
    HittingSetInstance::new(k, sets)
}

/// Smallest subset of the vectors reversing every coordinate, first in
/// lexicographic order among those of minimum size.
pub fn coordinate_reversal_solve(c: &CubeVectorSet) -> Result<(usize, VertexSet)> {
    let k = c.vectors.len();
    check_universe(k, REVERSAL_LIMIT)?;
    let mut plus = vec![0u32; c.dimension];
    for (i, v) in c.vectors.iter().enumerate() {
        for e in v {
            plus[e] |= 1 << i;
        }
    }
    let all = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    if let Some(e) = plus.iter().position(|&p| p == 0 || p == all) {
        return Err(Error::Infeasible(format!("coordinate {e} is constant on the vector set")));
    }
    for size in 0..=k {
        for combo in Combinations::new(k, size) {
            let mask = combo.iter().fold(0u32, |m, &i| m | 1 << i);
            if plus.iter().all(|&p| p & mask != 0 && !p & all & mask != 0) {
                return Ok((size, VertexSet::from_mask(k, u64::from(mask))));
            }
        }
    }
    unreachable!("all vectors together reverse every non-constant coordinate")
}

/// Rows of the `k × 2^k` matrix whose columns are all binary vectors of
/// length `k`; column `j` spells `j` in binary, most significant bit in row 0.
pub fn build_mk_instance(k: usize) -> Result<CubeVectorSet> {
    if !(1..=5).contains(&k) {
        return Err(Error::InvalidParameters(format!("k must be between 1 and 5, got {k}")));
    }
    let d = 1usize << k;
    let rows = (0..k)
        .map(|r| VertexSet::from_members(d, (0..d).filter(|j| (j >> (k - 1 - r)) & 1 == 1)))
        .collect::<Result<Vec<_>>>()?;
    CubeVectorSet::new(d, rows)
}
