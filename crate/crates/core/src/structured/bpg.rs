use super::{cb_decompose, Decomposition, OrderError, OrderedBipartite, Side};
use crate::graph::VertexPath;

pub(super) type Node = (Side, usize);

/// Builds the path block by block, in side-index coordinates of `b`.
pub(super) struct Walker<'a> {
    pub b: &'a OrderedBipartite,
    pub dec: &'a Decomposition,
    pub path: Vec<Node>,
}

impl Walker<'_> {
    /// Appends a shortest zig-zag inside block `i` from `v` to `t`: one vertex,
    /// an edge, or a detour through the smallest unused vertex of the other side.
    pub fn bridge(&mut self, i: usize, v: Node, t: Node) -> Result<(), OrderError> {
        // The biconvex head may already hold t = ℓ_X(K_1) when entering at r_Y(K_1);
        // the edge then simply runs the other way.
        if self.path == [t] {
            self.path = vec![v, t];
            return Ok(());
        }
        if v == t {
            self.path.push(v);
        } else if v.0 != t.0 {
            self.path.extend([v, t]);
        } else {
            let other = match v.0 {
                Side::X => Side::Y,
                Side::Y => Side::X,
            };
            let w = self.dec.blocks[i]
                .k_side(other)
                .iter()
                .map(|&u| (other, u))
                .find(|u| !self.path.contains(u))
                .ok_or_else(|| OrderError::Internal(format!("no free vertex left in block {i}")))?;
            self.path.extend([v, w, t]);
        }
        Ok(())
    }

    /// Walks blocks `0..k-1`, leaving through `r_X` on an XY link and through
    /// `r_Y` otherwise; returns the entry vertex of the last block.
    pub fn run(&mut self, mut v: Node) -> Result<Node, OrderError> {
        let blocks = &self.dec.blocks;
        for i in 0..blocks.len() - 1 {
            let (t, next) = if self.dec.linked_xy(self.b, i) {
                ((Side::X, blocks[i].r_x()), (Side::Y, blocks[i + 1].l_y()))
            } else {
                ((Side::Y, blocks[i].r_y()), (Side::X, blocks[i + 1].l_x()))
            };
            self.bridge(i, v, t)?;
            v = next;
        }
        Ok(v)
    }
}

/// Dominating path of a connected bipartite permutation graph given a strong ordering.
pub fn dom_path_bpg(b: &OrderedBipartite) -> Result<VertexPath, OrderError> {
    let dec = cb_decompose(b)?;
    let first = &dec.blocks[0];
    let mut walker = Walker { b, dec: &dec, path: Vec::new() };
    let v = walker.run((Side::X, first.l_x()))?;
    let k = dec.blocks.len() - 1;
    let last = &dec.blocks[k];
    // An empty J_k takes the Y branch; either choice dominates.
    let t = match last.j_side {
        Some(Side::X) => (Side::Y, last.r_y()),
        _ => (Side::X, last.r_x()),
    };
    walker.bridge(k, v, t)?;
    let ids: Vec<_> = walker.path.iter().map(|&(s, i)| b.id(s, i)).collect();
    VertexPath::new(&b.to_graph(), ids).map_err(|e| OrderError::Internal(e.to_string()))
}
