use serde::Serialize;

use super::{validate_strong, OrderError, OrderedBipartite, Side};

/// One `(K_i, J_i)` pair: the complete bipartite block and the vertices left
/// isolated once it is removed. Indices are per side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub kx: Vec<usize>,
    pub ky: Vec<usize>,
    pub j: Vec<usize>,
    pub j_side: Option<Side>,
}

impl Block {
    pub fn l_x(&self) -> usize {
        self.kx[0]
    }

    pub fn r_x(&self) -> usize {
        *self.kx.last().expect("blocks have both sides")
    }

    pub fn l_y(&self) -> usize {
        self.ky[0]
    }

    pub fn r_y(&self) -> usize {
        *self.ky.last().expect("blocks have both sides")
    }

    pub fn k_side(&self, side: Side) -> &[usize] {
        match side {
            Side::X => &self.kx,
            Side::Y => &self.ky,
        }
    }

    pub fn contains(&self, side: Side, i: usize) -> bool {
        self.k_side(side).binary_search(&i).is_ok() || (self.j_side == Some(side) && self.j.contains(&i))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub blocks: Vec<Block>,
}

impl Decomposition {
    /// Whether some edge runs from `K_i ∩ X` to `K_{i+1} ∩ Y`.
    pub fn linked_xy(&self, b: &OrderedBipartite, i: usize) -> bool {
        let next = &self.blocks[i + 1];
        self.blocks[i].kx.iter().any(|&x| next.ky.iter().any(|&y| b.has_edge(x, y)))
    }

    /// Whether some edge runs from `K_i ∩ Y` to `K_{i+1} ∩ X`.
    pub fn linked_yx(&self, b: &OrderedBipartite, i: usize) -> bool {
        let next = &self.blocks[i + 1];
        self.blocks[i].ky.iter().any(|&y| next.kx.iter().any(|&x| b.has_edge(x, y)))
    }
}

/// Peels blocks off a strong ordering: `K` is `N(x_first) ∪ N(y_first)` in
/// what remains and `J` the vertices it leaves isolated. The result is checked
/// against every structural property before it is returned.
pub fn cb_decompose(b: &OrderedBipartite) -> Result<Decomposition, OrderError> {
    validate_strong(b)?;
    if b.m() == 0 {
        return Err(OrderError::NoEdges);
    }
    if !b.is_connected() {
        return Err(OrderError::Disconnected);
    }
    let mut alive_x = vec![true; b.nx()];
    let mut alive_y = vec![true; b.ny()];
    let mut blocks = Vec::new();
    loop {
        let xf = alive_x.iter().position(|&a| a);
        let yf = alive_y.iter().position(|&a| a);
        let (xf, yf) = match (xf, yf) {
            (None, None) => break,
            (Some(xf), Some(yf)) => (xf, yf),
            _ => return Err(OrderError::Internal("one side exhausted before the other".into())),
        };
        let kx: Vec<usize> = b.y_neighbors(yf).iter().copied().filter(|&x| alive_x[x]).collect();
        let ky: Vec<usize> = b.x_neighbors(xf).iter().copied().filter(|&y| alive_y[y]).collect();
        if kx.first() != Some(&xf) || ky.first() != Some(&yf) {
            return Err(OrderError::Internal(format!("first remaining vertices x{xf}, y{yf} are not adjacent")));
        }
        kx.iter().for_each(|&x| alive_x[x] = false);
        ky.iter().for_each(|&y| alive_y[y] = false);
        let jx: Vec<usize> = (0..b.nx()).filter(|&x| alive_x[x] && b.x_neighbors(x).iter().all(|&y| !alive_y[y])).collect();
        let jy: Vec<usize> = (0..b.ny()).filter(|&y| alive_y[y] && b.y_neighbors(y).iter().all(|&x| !alive_x[x])).collect();
        let (j, j_side) = match (jx.is_empty(), jy.is_empty()) {
            (true, true) => (Vec::new(), None),
            (false, true) => (jx, Some(Side::X)),
            (true, false) => (jy, Some(Side::Y)),
            (false, false) => return Err(OrderError::Internal("isolated vertices on both sides".into())),
        };
        match j_side {
            Some(Side::X) => j.iter().for_each(|&x| alive_x[x] = false),
            Some(Side::Y) => j.iter().for_each(|&y| alive_y[y] = false),
            None => {}
        }
        blocks.push(Block { kx, ky, j, j_side });
    }
    let dec = Decomposition { blocks };
    validate_decomposition(b, &dec)?;
    Ok(dec)
}

fn fail(msg: String) -> OrderError {
    OrderError::Internal(msg)
}

/// Checks partition, completeness and adjacency of the blocks, the shape and
/// neighborhoods of each `J_i`, and the three linking properties the path
/// algorithms rely on.
pub fn validate_decomposition(b: &OrderedBipartite, dec: &Decomposition) -> Result<(), OrderError> {
    let blocks = &dec.blocks;
    let mut owner_x = vec![usize::MAX; b.nx()];
    let mut owner_y = vec![usize::MAX; b.ny()];
    for (i, blk) in blocks.iter().enumerate() {
        if blk.kx.is_empty() || blk.ky.is_empty() {
            return Err(fail(format!("block {i} has an empty side")));
        }
        if !blk.kx.windows(2).all(|w| w[0] < w[1]) || !blk.ky.windows(2).all(|w| w[0] < w[1]) || !blk.j.windows(2).all(|w| w[0] < w[1]) {
            return Err(fail(format!("block {i} is not sorted")));
        }
        let mut claim = |side: Side, v: usize| {
            let slot = match side {
                Side::X => &mut owner_x[v],
                Side::Y => &mut owner_y[v],
            };
            if *slot != usize::MAX {
                return Err(fail(format!("{side}{v} lies in two blocks")));
            }
            *slot = i;
            Ok(())
        };
        for &x in &blk.kx {
            claim(Side::X, x)?;
        }
        for &y in &blk.ky {
            claim(Side::Y, y)?;
        }
        match blk.j_side {
            Some(side) => {
                for &v in &blk.j {
                    claim(side, v)?;
                }
            }
            None if !blk.j.is_empty() => return Err(fail(format!("block {i} has J without a side"))),
            None => {}
        }
    }
    if owner_x.contains(&usize::MAX) || owner_y.contains(&usize::MAX) {
        return Err(fail("blocks do not cover every vertex".into()));
    }
    let in_k = |side: Side, v: usize, i: usize| blocks[i].k_side(side).binary_search(&v).is_ok();

    for (i, blk) in blocks.iter().enumerate() {
        // a) complete, and adjacent only to the neighboring blocks
        for &x in &blk.kx {
            for &y in &blk.ky {
                if !b.has_edge(x, y) {
                    return Err(fail(format!("block {i} misses edge x{x}y{y}")));
                }
            }
        }
        if i + 1 < blocks.len() && !dec.linked_xy(b, i) && !dec.linked_yx(b, i) {
            return Err(fail(format!("blocks {i} and {} are not adjacent", i + 1)));
        }
        // d) N(J_i) ⊆ K_i, neighborhoods shrink along J_i
        if let Some(side) = blk.j_side {
            let other = match side {
                Side::X => Side::Y,
                Side::Y => Side::X,
            };
            for &v in &blk.j {
                if let Some(&w) = b.neighbors(side, v).iter().find(|&&w| !in_k(other, w, i)) {
                    return Err(fail(format!("J_{i} vertex {side}{v} sees {other}{w} outside K_{i}")));
                }
            }
            for w in blk.j.windows(2) {
                let (a, a2) = (b.neighbors(side, w[0]), b.neighbors(side, w[1]));
                if !a2.iter().all(|u| a.binary_search(u).is_ok()) {
                    return Err(fail(format!("J_{i} neighborhoods not nested at {side}{}", w[1])));
                }
            }
            // c) contiguous, between r(K_i) and ℓ(K_{i+1})
            if blk.j.windows(2).any(|w| w[1] != w[0] + 1) {
                return Err(fail(format!("J_{i} is not contiguous")));
            }
            let lo = *blk.k_side(side).last().expect("nonempty");
            let hi = blocks.get(i + 1).map(|n| n.k_side(side)[0]);
            if blk.j.iter().any(|&a| a < lo || hi.is_some_and(|h| a > h)) {
                return Err(fail(format!("J_{i} lies outside its window")));
            }
            // f) the far end of K_i on the other side dominates J_i
            let r = *blk.k_side(other).last().expect("nonempty");
            if let Some(&v) = blk.j.iter().find(|&&v| !b.neighbors(side, v).contains(&r)) {
                return Err(fail(format!("J_{i} vertex {side}{v} misses r_{other}(K_{i})")));
            }
        }
    }
    // a) no edges between blocks more than one apart
    for (x, y) in b.edges() {
        let (bx, by) = (owner_x[x], owner_y[y]);
        if in_k(Side::X, x, bx) && in_k(Side::Y, y, by) && bx.abs_diff(by) > 1 {
            return Err(fail(format!("edge x{x}y{y} skips from block {bx} to {by}")));
        }
    }
    for i in 0..blocks.len().saturating_sub(1) {
        let (cur, next) = (&blocks[i], &blocks[i + 1]);
        // e) linking edges are realized by the extreme vertices
        let xy = dec.linked_xy(b, i);
        let yx = dec.linked_yx(b, i);
        if xy && !b.has_edge(cur.r_x(), next.l_y()) {
            return Err(fail(format!("XY link {i}->{} not realized by r_X, l_Y", i + 1)));
        }
        if yx && !b.has_edge(next.l_x(), cur.r_y()) {
            return Err(fail(format!("YX link {i}->{} not realized by r_Y, l_X", i + 1)));
        }
        // g)
        if xy && yx && !cur.j.is_empty() {
            return Err(fail(format!("blocks {i}, {} linked both ways but J_{i} is nonempty", i + 1)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structured::Claim;

    fn strong(nx: usize, ny: usize, edges: &[(usize, usize)]) -> OrderedBipartite {
        OrderedBipartite::new(nx, ny, edges, Claim::Strong).unwrap()
    }

    #[test]
    fn complete_bipartite_is_one_block() {
        let edges: Vec<_> = (0..2).flat_map(|x| (0..4).map(move |y| (x, y))).collect();
        let dec = cb_decompose(&strong(2, 4, &edges)).unwrap();
        assert_eq!(dec.blocks, vec![Block { kx: vec![0, 1], ky: vec![0, 1, 2, 3], j: vec![], j_side: None }]);
    }

    #[test]
    fn p5_blocks() {
        let dec = cb_decompose(&strong(3, 2, &[(0, 0), (1, 0), (1, 1), (2, 1)])).unwrap();
        assert_eq!(
            dec.blocks,
            vec![
                Block { kx: vec![0, 1], ky: vec![0], j: vec![], j_side: None },
                Block { kx: vec![2], ky: vec![1], j: vec![], j_side: None },
            ]
        );
    }

    #[test]
    fn isolated_vertex_lands_in_j() {
        let b = strong(3, 3, &[(0, 0), (0, 1), (1, 1), (2, 1), (2, 2)]);
        let dec = cb_decompose(&b).unwrap();
        assert_eq!(
            dec.blocks,
            vec![
                Block { kx: vec![0], ky: vec![0, 1], j: vec![1], j_side: Some(Side::X) },
                Block { kx: vec![2], ky: vec![2], j: vec![], j_side: None },
            ]
        );
        assert!(!dec.linked_xy(&b, 0) && dec.linked_yx(&b, 0));
    }

    #[test]
    fn validator_catches_tampering() {
        let b = strong(3, 2, &[(0, 0), (1, 0), (1, 1), (2, 1)]);
        let mut dec = cb_decompose(&b).unwrap();
        dec.blocks[1].kx.clear();
        assert!(matches!(validate_decomposition(&b, &dec), Err(OrderError::Internal(_))));
        let mut dec = cb_decompose(&b).unwrap();
        dec.blocks.swap(0, 1);
        assert!(validate_decomposition(&b, &dec).is_err());
    }
}
