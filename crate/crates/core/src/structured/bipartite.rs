use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{OrderError, Side};
use crate::graph::{Graph, Vertex, VertexPath};

/// What the vertex ordering of a bipartite instance is claimed to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    ConvexX,
    Biconvex,
    Strong,
}

impl Claim {
    pub fn name(self) -> &'static str {
        match self {
            Claim::ConvexX => "convex-x",
            Claim::Biconvex => "biconvex",
            Claim::Strong => "strong",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Claim {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "convex-x" => Ok(Claim::ConvexX),
            "biconvex" => Ok(Claim::Biconvex),
            "strong" => Ok(Claim::Strong),
            other => Err(format!("unknown claim `{other}`")),
        }
    }
}

/// Contiguous neighbor range `[lo, hi]` of a vertex in the opposite side's ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Window {
    pub lo: usize,
    pub hi: usize,
}

/// Bipartite graph with ordered sides `x_0..x_{nx-1}` and `y_0..y_{ny-1}`.
/// As a [`Graph`], `x_i` is vertex `i` and `y_j` is vertex `nx + j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedBipartite {
    nx: usize,
    ny: usize,
    claim: Claim,
    xadj: Vec<Vec<usize>>,
    yadj: Vec<Vec<usize>>,
}

impl OrderedBipartite {
    /// Builds the instance and runs the validator matching `claim`.
    pub fn new(nx: usize, ny: usize, edges: &[(usize, usize)], claim: Claim) -> Result<Self, OrderError> {
        let b = Self::unvalidated(nx, ny, edges, claim)?;
        match claim {
            Claim::ConvexX => {
                validate_convex(&b)?;
            }
            Claim::Biconvex => {
                validate_convex(&b)?;
                validate_convex_y(&b)?;
            }
            Claim::Strong => validate_strong(&b)?,
        }
        Ok(b)
    }

    /// Structural checks only (ranges, duplicates); the claim is recorded as given.
    pub fn unvalidated(nx: usize, ny: usize, edges: &[(usize, usize)], claim: Claim) -> Result<Self, OrderError> {
        let mut xadj = vec![Vec::new(); nx];
        let mut yadj = vec![Vec::new(); ny];
        for &(x, y) in edges {
            if x >= nx {
                return Err(OrderError::IndexOutOfRange { side: Side::X, index: x, size: nx });
            }
            if y >= ny {
                return Err(OrderError::IndexOutOfRange { side: Side::Y, index: y, size: ny });
            }
            xadj[x].push(y);
            yadj[y].push(x);
        }
        for (x, list) in xadj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(OrderError::DuplicateEdge(x, w[0]));
            }
        }
        yadj.iter_mut().for_each(|l| l.sort_unstable());
        Ok(OrderedBipartite { nx, ny, claim, xadj, yadj })
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn claim(&self) -> Claim {
        self.claim
    }

    pub fn with_claim(mut self, claim: Claim) -> Self {
        self.claim = claim;
        self
    }

    pub fn x_neighbors(&self, x: usize) -> &[usize] {
        &self.xadj[x]
    }

    pub fn y_neighbors(&self, y: usize) -> &[usize] {
        &self.yadj[y]
    }

    pub fn neighbors(&self, side: Side, i: usize) -> &[usize] {
        match side {
            Side::X => &self.xadj[i],
            Side::Y => &self.yadj[i],
        }
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.xadj[x].binary_search(&y).is_ok()
    }

    /// Edges as `(x, y)` index pairs, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.xadj.iter().enumerate().flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
    }

    pub fn m(&self) -> usize {
        self.xadj.iter().map(Vec::len).sum()
    }

    pub fn id(&self, side: Side, i: usize) -> Vertex {
        match side {
            Side::X => i,
            Side::Y => self.nx + i,
        }
    }

    /// Inverse of [`OrderedBipartite::id`].
    pub fn side_of(&self, v: Vertex) -> (Side, usize) {
        if v < self.nx {
            (Side::X, v)
        } else {
            (Side::Y, v - self.nx)
        }
    }

    pub fn to_graph(&self) -> Graph {
        let edges: Vec<_> = self.edges().map(|(x, y)| (x, self.nx + y)).collect();
        Graph::new(self.nx + self.ny, &edges).expect("bipartite edges are valid")
    }

    pub fn is_connected(&self) -> bool {
        self.to_graph().is_connected()
    }

    /// Same graph with the X ordering reversed.
    pub fn reversed_x(&self) -> Self {
        let last = self.nx.saturating_sub(1);
        let edges: Vec<_> = self.edges().map(|(x, y)| (last - x, y)).collect();
        Self::unvalidated(self.nx, self.ny, &edges, self.claim).expect("relabeling keeps edges valid")
    }

    /// Subgraph induced by `x_lo..=x_hi` and all of Y; X indices shift down by `lo`.
    pub fn induced_x_range(&self, lo: usize, hi: usize) -> Self {
        let edges: Vec<_> = self.edges().filter(|&(x, _)| lo <= x && x <= hi).map(|(x, y)| (x - lo, y)).collect();
        Self::unvalidated(hi + 1 - lo, self.ny, &edges, self.claim).expect("restriction keeps edges valid")
    }
}

fn windows(adj: &[Vec<usize>], side: Side) -> Result<Vec<Option<Window>>, OrderError> {
    adj.iter()
        .enumerate()
        .map(|(v, list)| {
            let (Some(&lo), Some(&hi)) = (list.first(), list.last()) else {
                return Ok(None);
            };
            if hi - lo + 1 != list.len() {
                let missing = (lo..=hi).find(|u| list.binary_search(u).is_err()).expect("a gap exists");
                return Err(OrderError::NotConvex { side, vertex: v, missing });
            }
            Ok(Some(Window { lo, hi }))
        })
        .collect()
}

/// X-convexity: each `N(y)` is a contiguous run of X. Returns `(ℓ(y), r(y))`
/// per `y` (`None` for isolated `y`).
pub fn validate_convex(b: &OrderedBipartite) -> Result<Vec<Option<Window>>, OrderError> {
    windows(&b.yadj, Side::Y)
}

/// Y-convexity: each `N(x)` is a contiguous run of Y.
pub fn validate_convex_y(b: &OrderedBipartite) -> Result<Vec<Option<Window>>, OrderError> {
    windows(&b.xadj, Side::X)
}

/// Crossing-closure check over all edge pairs, then the biconvexity it implies.
pub fn validate_strong(b: &OrderedBipartite) -> Result<(), OrderError> {
    let edges: Vec<_> = b.edges().collect();
    for &(xi, yc) in &edges {
        for &(xk, ya) in &edges {
            if xi <= xk && ya <= yc && !(b.has_edge(xi, ya) && b.has_edge(xk, yc)) {
                return Err(OrderError::NotStrong { xi, xk, ya, yc });
            }
        }
    }
    validate_convex(b)?;
    validate_convex_y(b)?;
    Ok(())
}

/// Greedy 2-dominating path from `x_0` to the last X vertex, each hop taking
/// the neighbor whose window reaches furthest (ties: smallest y).
pub fn two_dom_path_convex(b: &OrderedBipartite) -> Result<VertexPath, OrderError> {
    let windows = validate_convex(b)?;
    if b.nx == 0 || b.m() == 0 {
        return Err(OrderError::NoEdges);
    }
    let g = b.to_graph();
    if !g.is_connected() {
        return Err(OrderError::Disconnected);
    }
    let mut a = 0;
    let mut path = vec![b.id(Side::X, 0)];
    while a != b.nx - 1 {
        let (reach, y) = b.xadj[a]
            .iter()
            .map(|&y| (windows[y].expect("y has a neighbor").hi, y))
            .min_by_key(|&(r, y)| (std::cmp::Reverse(r), y))
            .ok_or(OrderError::Disconnected)?;
        if reach <= a {
            return Err(OrderError::Internal(format!("greedy step stalled at x{a}")));
        }
        path.push(b.id(Side::Y, y));
        path.push(b.id(Side::X, reach));
        a = reach;
    }
    VertexPath::new(&g, path).map_err(|e| OrderError::Internal(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ecc_of_set;

    fn c6() -> OrderedBipartite {
        OrderedBipartite::unvalidated(3, 3, &[(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)], Claim::ConvexX).unwrap()
    }

    fn p5() -> OrderedBipartite {
        OrderedBipartite::new(3, 2, &[(0, 0), (1, 0), (1, 1), (2, 1)], Claim::Strong).unwrap()
    }

    fn kab(a: usize, b: usize) -> OrderedBipartite {
        let edges: Vec<_> = (0..a).flat_map(|x| (0..b).map(move |y| (x, y))).collect();
        OrderedBipartite::new(a, b, &edges, Claim::Strong).unwrap()
    }

    #[test]
    fn convexity() {
        assert_eq!(validate_convex(&c6()), Err(OrderError::NotConvex { side: Side::Y, vertex: 2, missing: 1 }));
        let w = validate_convex(&kab(3, 2)).unwrap();
        assert!(w.iter().all(|w| *w == Some(Window { lo: 0, hi: 2 })));
    }

    #[test]
    fn strong_ordering() {
        assert!(validate_strong(&kab(2, 4)).is_ok());
        assert!(matches!(validate_strong(&c6()), Err(OrderError::NotStrong { .. })));
        assert!(validate_strong(&p5()).is_ok());
        // crossing pair x0y1, x1y0 without x0y0
        let crossed = OrderedBipartite::unvalidated(2, 2, &[(0, 1), (1, 0), (1, 1)], Claim::Strong).unwrap();
        assert_eq!(validate_strong(&crossed), Err(OrderError::NotStrong { xi: 0, xk: 1, ya: 0, yc: 1 }));
    }

    #[test]
    fn convex_greedy() {
        let b = p5();
        let p = two_dom_path_convex(&b).unwrap();
        assert_eq!(p.vertices(), &[0, 3, 1, 4, 2]);
        assert_eq!(ecc_of_set(&b.to_graph(), p.vertices()).unwrap().finite(), Some(0));
        let k11 = kab(1, 1);
        let p = two_dom_path_convex(&k11).unwrap();
        assert_eq!(p.vertices(), &[0]);
        assert_eq!(ecc_of_set(&k11.to_graph(), p.vertices()).unwrap().finite(), Some(1));
        let split = OrderedBipartite::new(2, 2, &[(0, 0), (1, 1)], Claim::ConvexX).unwrap();
        assert_eq!(two_dom_path_convex(&split), Err(OrderError::Disconnected));
    }

    #[test]
    fn relabeling() {
        let b = p5();
        let r = b.reversed_x();
        assert!(r.has_edge(2, 0) && r.has_edge(0, 1));
        let sub = b.induced_x_range(1, 2);
        assert_eq!(sub.edges().collect::<Vec<_>>(), vec![(0, 0), (0, 1), (1, 1)]);
        assert_eq!(b.side_of(b.id(Side::Y, 1)), (Side::Y, 1));
        assert_eq!(OrderedBipartite::unvalidated(1, 1, &[(0, 0), (0, 0)], Claim::Strong), Err(OrderError::DuplicateEdge(0, 0)));
    }
}
