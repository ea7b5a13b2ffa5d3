use serde::Serialize;

use super::bpg::Walker;
use super::{cb_decompose, validate_convex, validate_convex_y, Claim, Decomposition, OrderError, OrderedBipartite, Side, Window};
use crate::graph::VertexPath;

/// The bipartite permutation core of a biconvex instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiconvexFrame {
    /// Whether the X ordering had to be reversed to get `x_l ≤ x_r`.
    pub reversed: bool,
    /// `x_L` and `x_R` as indices of the working (possibly reversed) ordering.
    pub x_l: usize,
    pub x_r: usize,
    #[serde(skip)]
    pub working: OrderedBipartite,
    /// `G_p`: X restricted to `x_l..=x_r` (re-indexed from 0) and all of Y.
    #[serde(skip)]
    pub gp: OrderedBipartite,
    pub decomposition: Decomposition,
}

fn contained(a: Window, b: Window) -> bool {
    b.lo <= a.lo && a.hi <= b.hi
}

// Vertices of N(y) whose neighborhood is not properly inside another one.
fn ends(b: &OrderedBipartite, nbhd: &[Option<Window>]) -> (usize, usize) {
    let maximal = |x: usize| {
        let w = nbhd[x].expect("connected");
        !nbhd.iter().flatten().any(|&o| o != w && contained(w, o))
    };
    let first = b.y_neighbors(0).iter().copied().find(|&x| maximal(x)).expect("a maximal neighborhood exists");
    let last = b.y_neighbors(b.ny() - 1).iter().copied().rev().find(|&x| maximal(x)).expect("a maximal neighborhood exists");
    (first, last)
}

fn check_flanks(nbhd: &[Option<Window>], x_l: usize, x_r: usize, relabel: impl Fn(usize) -> usize) -> Result<(), OrderError> {
    let w = |x: usize| nbhd[x].expect("connected");
    for i in 0..x_l {
        if !contained(w(i), w(i + 1)) {
            return Err(OrderError::FlankNotNested { inner: relabel(i), outer: relabel(i + 1) });
        }
    }
    for j in x_r..nbhd.len() - 1 {
        if !contained(w(j + 1), w(j)) {
            return Err(OrderError::FlankNotNested { inner: relabel(j + 1), outer: relabel(j) });
        }
    }
    Ok(())
}

/// Picks `x_L`, `x_R`, checks that both flanks have nested neighborhoods and
/// that `G_p` is strongly ordered, and decomposes `G_p`.
pub fn biconvex_frame(b: &OrderedBipartite) -> Result<BiconvexFrame, OrderError> {
    validate_convex(b)?;
    validate_convex_y(b)?;
    if b.m() == 0 {
        return Err(OrderError::NoEdges);
    }
    if !b.is_connected() {
        return Err(OrderError::Disconnected);
    }
    let mut working = b.clone();
    let mut nbhd = validate_convex_y(&working)?;
    let (mut x_l, mut x_r) = ends(&working, &nbhd);
    let mut reversed = false;
    if x_l > x_r {
        working = b.reversed_x();
        nbhd = validate_convex_y(&working)?;
        (x_l, x_r) = ends(&working, &nbhd);
        reversed = true;
        if x_l > x_r {
            return Err(OrderError::FrameOrder);
        }
    }
    let last = b.nx() - 1;
    check_flanks(&nbhd, x_l, x_r, |x| if reversed { last - x } else { x })?;
    let gp = working.induced_x_range(x_l, x_r).with_claim(Claim::Strong);
    let decomposition = cb_decompose(&gp)?;
    Ok(BiconvexFrame { reversed, x_l, x_r, working, gp, decomposition })
}

/// Dominating path of a connected biconvex graph: the bipartite permutation
/// walk over `G_p`, with a head covering the left flank and a tail covering
/// the right one.
pub fn dom_path_biconvex(b: &OrderedBipartite) -> Result<VertexPath, OrderError> {
    let frame = biconvex_frame(b)?;
    let w = &frame.working;
    let dec = &frame.decomposition;
    let mut walker = Walker { b: &frame.gp, dec, path: Vec::new() };

    let first = &dec.blocks[0];
    let n_x1 = w.x_neighbors(0);
    let v = if n_x1.contains(&first.r_y()) {
        walker.path.push((Side::X, first.l_x()));
        (Side::Y, first.r_y())
    } else {
        (Side::Y, n_x1[0])
    };
    let v = walker.run(v)?;

    let k = dec.blocks.len() - 1;
    let last = &dec.blocks[k];
    walker.bridge(k, v, (Side::X, last.r_x()))?;
    let n_xn = w.x_neighbors(w.nx() - 1);
    let in_j = match last.j_side {
        Some(Side::Y) => n_xn.iter().copied().find(|y| last.j.contains(y)),
        _ => None,
    };
    // Right-flank neighborhoods shrink towards x_n, so one neighbor of x_n
    // anywhere on the path (or x_n itself, when x_R = x_n) covers the flank.
    let xn_gp = (w.nx() - 1).checked_sub(frame.x_l).map(|x| (Side::X, x));
    let covered = walker.path.iter().any(|&(s, i)| (s == Side::Y && n_xn.contains(&i)) || Some((s, i)) == xn_gp);
    if let Some(u) = in_j {
        walker.path.push((Side::Y, u));
    } else if !covered {
        // N(x_n) ⊆ N(x_R), so a free neighbor of x_n usually extends the path
        // end directly; prefer one inside K_k.
        let end = *walker.path.last().expect("walk is nonempty");
        let free = |y: &usize| !walker.path.contains(&(Side::Y, *y)) && end.0 == Side::X && frame.gp.has_edge(end.1, *y);
        let u = n_xn
            .iter()
            .filter(|y| free(y))
            .min_by_key(|y| !last.ky.contains(y))
            .copied()
            .ok_or_else(|| OrderError::Internal("no free neighbor of the last X vertex next to the path end".into()))?;
        walker.path.push((Side::Y, u));
    }

    let nx = b.nx();
    let ids: Vec<_> = walker
        .path
        .iter()
        .map(|&(s, i)| match s {
            Side::X => {
                let x = i + frame.x_l;
                if frame.reversed {
                    nx - 1 - x
                } else {
                    x
                }
            }
            Side::Y => b.id(Side::Y, i),
        })
        .collect();
    VertexPath::new(&b.to_graph(), ids).map_err(|e| OrderError::Internal(e.to_string()))
}
