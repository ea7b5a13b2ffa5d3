use serde::Serialize;

use super::OrderError;
use crate::graph::{Graph, Vertex, VertexPath};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Interval {
    pub id: usize,
    pub left: i64,
    pub right: i64,
}

/// Closed integer intervals with ids exactly `0..n`, stored in id order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IntervalFamily {
    items: Vec<Interval>,
}

impl IntervalFamily {
    pub fn new(mut items: Vec<Interval>) -> Result<Self, OrderError> {
        let n = items.len();
        let mut seen = vec![false; n];
        for it in &items {
            if it.left > it.right {
                return Err(OrderError::InvertedInterval { id: it.id, left: it.left, right: it.right });
            }
            if it.id >= n {
                return Err(OrderError::BadIntervalId { id: it.id, n, problem: "out of range" });
            }
            if std::mem::replace(&mut seen[it.id], true) {
                return Err(OrderError::BadIntervalId { id: it.id, n, problem: "repeated" });
            }
        }
        items.sort_by_key(|it| it.id);
        Ok(IntervalFamily { items })
    }

    pub fn items(&self) -> &[Interval] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Intersection graph; vertex ids are interval ids.
    pub fn graph(&self) -> Graph {
        let mut edges = Vec::new();
        for (i, a) in self.items.iter().enumerate() {
            for b in &self.items[i + 1..] {
                if a.left.max(b.left) <= a.right.min(b.right) {
                    edges.push((a.id, b.id));
                }
            }
        }
        Graph::new(self.items.len(), &edges).expect("interval ids are distinct and in range")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalOrder {
    #[serde(skip)]
    pub graph: Graph,
    /// `order[k]` is the vertex numbered `k`.
    pub order: Vec<Vertex>,
}

/// Numbers the intervals by right endpoint (then left endpoint, then id),
/// which makes earlier neighbors of every vertex a contiguous run ending just
/// before it.
pub fn interval_order(f: &IntervalFamily) -> Result<IntervalOrder, OrderError> {
    if f.is_empty() {
        return Err(OrderError::EmptyFamily);
    }
    let mut order: Vec<Vertex> = (0..f.len()).collect();
    order.sort_by_key(|&v| {
        let it = f.items[v];
        (it.right, it.left, it.id)
    });
    let graph = f.graph();
    check_numbering(&graph, &order).map_err(|e| OrderError::Internal(format!("right-endpoint ordering rejected: {e}")))?;
    Ok(IntervalOrder { graph, order })
}

fn positions(g: &Graph, order: &[Vertex]) -> Result<Vec<usize>, OrderError> {
    if order.len() != g.n() {
        return Err(OrderError::NotAPermutation);
    }
    let mut pos = vec![usize::MAX; g.n()];
    for (k, &v) in order.iter().enumerate() {
        if v >= g.n() || pos[v] != usize::MAX {
            return Err(OrderError::NotAPermutation);
        }
        pos[v] = k;
    }
    Ok(pos)
}

/// Checks that for positions `i < j < k`, an edge between `i` and `k` forces
/// one between `j` and `k`. Runs in `O(n + m)`.
pub fn check_numbering(g: &Graph, order: &[Vertex]) -> Result<(), OrderError> {
    let pos = positions(g, order)?;
    for (k, &v) in order.iter().enumerate() {
        let earlier: Vec<usize> = g.neighbors(v).iter().map(|&w| pos[w]).filter(|&p| p < k).collect();
        let Some(&i) = earlier.iter().min() else { continue };
        if earlier.len() != k - i {
            let j = (i + 1..k).find(|&j| !g.has_edge(order[j], v)).expect("a gap exists");
            return Err(OrderError::NotIntervalOrder { i, j, k });
        }
    }
    Ok(())
}

/// Greedy dominating path: start at the first vertex and jump to the
/// highest-numbered neighbor until the last vertex is reached.
pub fn dom_path_interval(g: &Graph, order: &[Vertex]) -> Result<VertexPath, OrderError> {
    let pos = positions(g, order)?;
    if g.n() == 0 {
        return Err(OrderError::EmptyFamily);
    }
    check_numbering(g, order)?;
    if !g.is_connected() {
        return Err(OrderError::Disconnected);
    }
    let last = g.n() - 1;
    let mut x = order[0];
    let mut path = vec![x];
    while pos[x] != last {
        let next = *g.neighbors(x).iter().max_by_key(|&&w| pos[w]).ok_or(OrderError::Disconnected)?;
        if pos[next] <= pos[x] {
            return Err(OrderError::Internal(format!("greedy step stalled at position {}", pos[x])));
        }
        path.push(next);
        x = next;
    }
    VertexPath::new(g, path).map_err(|e| OrderError::Internal(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ecc_of_set;

    fn family(spans: &[(i64, i64)]) -> IntervalFamily {
        IntervalFamily::new(spans.iter().enumerate().map(|(id, &(left, right))| Interval { id, left, right }).collect()).unwrap()
    }

    fn cubic_check(g: &Graph, order: &[Vertex]) -> bool {
        let n = order.len();
        (0..n).all(|i| (i + 1..n).all(|j| (j + 1..n).all(|k| !g.has_edge(order[i], order[k]) || g.has_edge(order[j], order[k]))))
    }

    #[test]
    fn chain_orders_naturally() {
        let f = family(&[(1, 2), (2, 3), (3, 4)]);
        let o = interval_order(&f).unwrap();
        assert_eq!(o.order, vec![0, 1, 2]);
        assert_eq!(o.graph, Graph::path(3));
    }

    #[test]
    fn star_plus_ordering() {
        let f = family(&[(1, 10), (2, 3), (4, 5)]);
        let o = interval_order(&f).unwrap();
        assert_eq!(o.order, vec![1, 2, 0]);
        assert!(cubic_check(&o.graph, &o.order));
    }

    #[test]
    fn linear_check_agrees_with_cubic() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap();
        let orders = [[0, 1, 2, 3], [1, 2, 0, 3], [3, 1, 2, 0], [1, 3, 2, 0], [2, 1, 0, 3]];
        for order in orders {
            assert_eq!(check_numbering(&g, &order).is_ok(), cubic_check(&g, &order), "{order:?}");
        }
    }

    #[test]
    fn chain_gives_hamiltonian_path() {
        let f = family(&[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]);
        let o = interval_order(&f).unwrap();
        let p = dom_path_interval(&o.graph, &o.order).unwrap();
        assert_eq!(p.vertices(), &[0, 1, 2, 3, 4]);
        assert_eq!(ecc_of_set(&o.graph, p.vertices()).unwrap().finite(), Some(0));
    }

    #[test]
    fn single_interval() {
        let o = interval_order(&family(&[(3, 7)])).unwrap();
        assert_eq!(dom_path_interval(&o.graph, &o.order).unwrap().vertices(), &[0]);
    }

    #[test]
    fn rejections() {
        assert_eq!(interval_order(&family(&[])), Err(OrderError::EmptyFamily));
        let bad = IntervalFamily::new(vec![Interval { id: 0, left: 3, right: 1 }]);
        assert!(matches!(bad, Err(OrderError::InvertedInterval { .. })));
        let dup = IntervalFamily::new(vec![Interval { id: 0, left: 0, right: 1 }, Interval { id: 0, left: 0, right: 1 }]);
        assert!(matches!(dup, Err(OrderError::BadIntervalId { .. })));
        let split = family(&[(1, 2), (5, 6)]);
        let o = interval_order(&split).unwrap();
        assert_eq!(dom_path_interval(&o.graph, &o.order), Err(OrderError::Disconnected));
        let g = Graph::path(3);
        assert!(matches!(dom_path_interval(&g, &[1, 0, 2]), Err(OrderError::NotIntervalOrder { .. })));
    }
}
