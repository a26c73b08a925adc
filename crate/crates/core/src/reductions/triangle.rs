use crate::error::{Error, Result};
use crate::graph::Graph;

use super::{GadgetLayout, GadgetParams};

/// Vertices of one triangle gadget inside a larger graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    pub corners: [usize; 3],
    pub center: usize,
    /// `sides[t]` is the outer path from `corners[t]` to `corners[(t + 1) % 3]`.
    pub sides: [Vec<usize>; 3],
}

/// Number of vertices of `T_gamma`.
pub fn triangle_size(gamma: usize) -> usize {
    (5..=gamma).step_by(2).map(|g| 3 * (g - 2)).sum::<usize>() + 4
}

pub(crate) fn check_gamma(gamma: usize) -> Result<()> {
    if gamma < 3 || gamma.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!("gamma must be odd and at least 3, got {gamma}")));
    }
    Ok(())
}

/// Adds `T_gamma` to `g`. When `corners` is given those existing vertices
/// become the corners, otherwise fresh ones are created.
pub(crate) fn add_triangle(g: &mut Graph, gamma: usize, corners: Option<[usize; 3]>) -> Triangle {
    let corners = corners.unwrap_or_else(|| [g.add_vertex(), g.add_vertex(), g.add_vertex()]);
    if gamma == 3 {
        let center = g.add_vertex();
        for c in corners {
            g.add_edge(center, c).expect("fresh center");
        }
        let sides = std::array::from_fn(|t| vec![corners[t], center, corners[(t + 1) % 3]]);
        return Triangle { corners, center, sides };
    }
    // outer cycle of length 3(gamma - 1); side midpoints carry the inner triangle
    let sides: [Vec<usize>; 3] = std::array::from_fn(|t| super::attach_path(g, corners[t], gamma - 1, Some(corners[(t + 1) % 3])));
    let half = (gamma - 1) / 2;
    let inner = [sides[0][half], sides[1][half], sides[2][half]];
    let center = add_triangle(g, gamma - 2, Some(inner)).center;
    Triangle { corners, center, sides }
}

/// The triangle gadget on its own, with roles `x`, `y`, `z` (corners) and
/// `c` (center).
pub fn triangle_gadget(gamma: usize) -> Result<(Graph, GadgetLayout)> {
    check_gamma(gamma)?;
    let mut g = Graph::new(0);
    let t = add_triangle(&mut g, gamma, None);
    let mut layout = GadgetLayout {
        params: GadgetParams {
            gamma: Some(gamma),
            ..GadgetParams::default()
        },
        ..GadgetLayout::default()
    };
    for (name, v) in ["x", "y", "z"].into_iter().zip(t.corners) {
        layout.role(name, v);
    }
    layout.role("c", t.center);
    for (t_idx, side) in t.sides.into_iter().enumerate() {
        layout.path(["xy", "yz", "zx"][t_idx], side);
    }
    Ok((g, layout))
}
