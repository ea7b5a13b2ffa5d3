//! Simple undirected graphs, BFS distances, eccentricity of vertex sets,
//! vertex connectivity and the two composition operators (subdivision and
//! k-matching join) the family generators are built from.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::flow::FlowNetwork;
use crate::par::{self, Exec};

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("source set is empty")]
    EmptySources,
    #[error("operation needs at least {needed} vertices, graph has {n}")]
    TooFewVertices { needed: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("matching endpoint {0} used twice")]
    RepeatedEndpoint(Vertex),
    #[error("fan precondition violated: {0}")]
    FanPrecondition(String),
    #[error("only {found} disjoint paths exist, {wanted} requested")]
    FanInfeasible { found: usize, wanted: usize },
}

/// Distance to a vertex set. `Unreachable` sorts above every finite value so
/// `max` over a field reports disconnection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }
}

// A number, or the string "unreachable".
impl Serialize for Distance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Unreachable => s.serialize_str("unreachable"),
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => f.write_str("unreachable"),
        }
    }
}

/// Immutable simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges (in either
    /// orientation) and out-of-range ids.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { adj, m: edges.len() })
    }

    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::new(n, &edges).expect("complete graph edges are valid")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::new(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        Graph::new(n, &edges).expect("cycle edges are valid")
    }

    /// `K_{a,b}` with the `a` side on ids `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges: Vec<_> = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v))).collect();
        Graph::new(a + b, &edges).expect("complete bipartite edges are valid")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.bfs_from(0).iter().all(|d| *d != Distance::Unreachable)
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.m + 1 == self.n() && self.is_connected()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.adj.iter().all(|l| l.len() + 1 == n)
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v >= self.n() {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        } else {
            Ok(())
        }
    }

    fn bfs_from(&self, s: Vertex) -> Vec<Distance> {
        bfs_layers(self, &[s])
    }

    /// Subgraph induced by `keep` (in the given order); vertex `keep[i]` becomes `i`.
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); keep.len()];
        let mut m = 0;
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                if index[w] != usize::MAX {
                    adj[i].push(index[w]);
                    if index[w] > i {
                        m += 1;
                    }
                }
            }
            adj[i].sort_unstable();
        }
        Graph { adj, m }
    }
}

/// Ordered sequence of distinct vertices, consecutive ones adjacent in the host
/// graph. Length is counted in edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexPath {
    vertices: Vec<Vertex>,
}

impl VertexPath {
    pub fn new(g: &Graph, vertices: Vec<Vertex>) -> Result<Self, GraphError> {
        validate_path(g, &vertices)?;
        Ok(VertexPath { vertices })
    }

    /// Caller guarantees validity; used where the construction itself is the proof.
    pub(crate) fn from_trusted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(!vertices.is_empty());
        VertexPath { vertices }
    }

    pub fn single(v: Vertex) -> Self {
        VertexPath { vertices: vec![v] }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.vertices
    }

    /// Edge count.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().expect("paths are nonempty")
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        VertexPath { vertices }
    }

    /// Lexicographically smaller of the sequence and its reverse.
    pub fn canonical(&self) -> Self {
        let rev = self.reversed();
        if rev.vertices < self.vertices {
            rev
        } else {
            self.clone()
        }
    }

    /// Subpath between positions `i..=j` (either order).
    pub fn subpath(&self, i: usize, j: usize) -> Self {
        let (a, b) = (i.min(j), i.max(j));
        VertexPath { vertices: self.vertices[a..=b].to_vec() }
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }

    /// `d_P(x, y)`: edges between two vertices along the path.
    pub fn distance_along(&self, x: Vertex, y: Vertex) -> Option<usize> {
        Some(self.position(x)?.abs_diff(self.position(y)?))
    }
}

impl fmt::Display for VertexPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(">")
    }
}

pub fn validate_path(g: &Graph, vertices: &[Vertex]) -> Result<(), GraphError> {
    if vertices.is_empty() {
        return Err(GraphError::InvalidPath("empty vertex sequence".into()));
    }
    let mut seen = vec![false; g.n()];
    for &v in vertices {
        g.check_vertex(v)?;
        if std::mem::replace(&mut seen[v], true) {
            return Err(GraphError::InvalidPath(format!("vertex {v} repeated")));
        }
    }
    if let Some(w) = vertices.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
        return Err(GraphError::InvalidPath(format!("{} and {} are not adjacent", w[0], w[1])));
    }
    Ok(())
}

/// BFS distances from a vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceField {
    pub dist: Vec<Distance>,
    pub sources: Vec<Vertex>,
}

impl DistanceField {
    pub fn max(&self) -> Distance {
        self.dist.iter().copied().max().unwrap_or(Distance::Finite(0))
    }

    /// `S_i = { v : d(v, sources) = i }`.
    pub fn layer(&self, i: usize) -> Vec<Vertex> {
        (0..self.dist.len()).filter(|&v| self.dist[v] == Distance::Finite(i)).collect()
    }
}

fn bfs_layers(g: &Graph, sources: &[Vertex]) -> Vec<Distance> {
    let mut dist = vec![Distance::Unreachable; g.n()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s] == Distance::Unreachable {
            dist[s] = Distance::Finite(0);
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let Distance::Finite(du) = dist[u] else { unreachable!() };
        for &w in g.neighbors(u) {
            if dist[w] == Distance::Unreachable {
                dist[w] = Distance::Finite(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn multi_source_bfs(g: &Graph, sources: &[Vertex]) -> Result<DistanceField, GraphError> {
    if sources.is_empty() {
        return Err(GraphError::EmptySources);
    }
    for &s in sources {
        g.check_vertex(s)?;
    }
    let mut sorted = sources.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(DistanceField { dist: bfs_layers(g, &sorted), sources: sorted })
}

/// `max_v d(v, s)`.
pub fn ecc_of_set(g: &Graph, s: &[Vertex]) -> Result<Distance, GraphError> {
    Ok(multi_source_bfs(g, s)?.max())
}

/// Connected components of `g - s`, each sorted, ordered by smallest vertex.
pub fn components_after_removal(g: &Graph, s: &[Vertex]) -> Result<Vec<Vec<Vertex>>, GraphError> {
    let mut removed = vec![false; g.n()];
    for &v in s {
        g.check_vertex(v)?;
        removed[v] = true;
    }
    let mut comp = vec![usize::MAX; g.n()];
    let mut out: Vec<Vec<Vertex>> = Vec::new();
    for start in 0..g.n() {
        if removed[start] || comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[start] = id;
        let mut members = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !removed[w] && comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    Ok(out)
}

/// All-pairs distances by repeated BFS.
pub fn distance_matrix(g: &Graph) -> Vec<Vec<Distance>> {
    distance_matrix_with(g, Exec::default())
}

pub fn distance_matrix_with(g: &Graph, exec: Exec) -> Vec<Vec<Distance>> {
    par::map_range(exec, 0..g.n(), |s| g.bfs_from(s))
}

pub fn diameter(g: &Graph) -> Distance {
    distance_matrix(g)
        .into_iter()
        .flat_map(|row| row.into_iter())
        .max()
        .unwrap_or(Distance::Finite(0))
}

/// Vertex eccentricities; `None` when disconnected.
pub fn vertex_eccentricities(g: &Graph) -> Option<Vec<usize>> {
    distance_matrix(g)
        .into_iter()
        .map(|row| row.into_iter().max().unwrap_or(Distance::Finite(0)).finite())
        .collect()
}

/// Vertices of minimum eccentricity.
pub fn centers(g: &Graph) -> Option<Vec<Vertex>> {
    let ecc = vertex_eccentricities(g)?;
    let best = *ecc.iter().min()?;
    Some((0..g.n()).filter(|&v| ecc[v] == best).collect())
}

// Split digraph: v_in = 2v, v_out = 2v + 1.
fn split_network(g: &Graph, s: Vertex, t: Vertex) -> FlowNetwork {
    let n = g.n();
    let big = n as i32 + 1;
    let mut net = FlowNetwork::new(2 * n);
    for v in 0..n {
        let cap = if v == s || v == t { big } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, cap);
        for &w in g.neighbors(v) {
            net.add_arc(2 * v + 1, 2 * w, big);
        }
    }
    net
}

/// Number of internally disjoint `s`-`t` paths for non-adjacent `s`, `t`, capped at `limit`.
pub fn local_connectivity(g: &Graph, s: Vertex, t: Vertex, limit: usize) -> usize {
    debug_assert!(s != t && !g.has_edge(s, t));
    let mut net = split_network(g, s, t);
    net.max_flow(2 * s + 1, 2 * t, limit as i32) as usize
}

/// Vertex connectivity; `K_n` yields `n - 1`.
pub fn vertex_connectivity(g: &Graph) -> Result<usize, GraphError> {
    vertex_connectivity_with(g, Exec::default())
}

pub fn vertex_connectivity_with(g: &Graph, exec: Exec) -> Result<usize, GraphError> {
    Ok(connectivity_search(g, exec)?.0)
}

/// A minimum vertex cut, or `None` for complete graphs.
pub fn min_vertex_cut(g: &Graph) -> Result<Option<Vec<Vertex>>, GraphError> {
    let (_, pair) = connectivity_search(g, Exec::default())?;
    Ok(pair.map(|(s, t)| {
        let mut net = split_network(g, s, t);
        net.max_flow(2 * s + 1, 2 * t, i32::MAX);
        let reach = net.residual_reachable(2 * s + 1);
        (0..g.n()).filter(|&v| reach[2 * v] && !reach[2 * v + 1]).collect()
    }))
}

// Even's scan: some vertex among the first kappa + 1 lies outside a minimum
// cut, and the smallest such one is separated from a later vertex.
fn connectivity_search(g: &Graph, exec: Exec) -> Result<(usize, Option<(Vertex, Vertex)>), GraphError> {
    let n = g.n();
    if n < 2 {
        return Err(GraphError::TooFewVertices { needed: 2, n });
    }
    if !g.is_connected() {
        let comps = components_after_removal(g, &[])?;
        return Ok((0, Some((comps[0][0], comps[1][0]))));
    }
    let mut best = n - 1;
    let mut witness = None;
    let mut i = 0;
    while i <= best && i < n {
        let limit = best;
        let candidates: Vec<Vertex> = (i + 1..n).filter(|&j| !g.has_edge(i, j)).collect();
        let values = par::map_slice(exec, &candidates, |&j| local_connectivity(g, i, j, limit));
        for (&j, &k) in candidates.iter().zip(&values) {
            if k < best {
                best = k;
                witness = Some((i, j));
            }
        }
        i += 1;
    }
    Ok((best, witness))
}

/// `k` paths from `v` to distinct vertices of `s`, pairwise meeting only at
/// `v`, with interiors avoiding `s`. Checks `κ(g) ≥ k` first.
pub fn fan_paths(g: &Graph, v: Vertex, s: &[Vertex], k: usize) -> Result<Vec<VertexPath>, GraphError> {
    g.check_vertex(v)?;
    if k >= 1 && g.n() >= 2 {
        let kappa = vertex_connectivity(g)?;
        if kappa < k {
            return Err(GraphError::FanPrecondition(format!("graph is {kappa}-connected, fan of size {k} requested")));
        }
    }
    fan_paths_unchecked(g, v, s, k)
}

/// Fan construction without the connectivity check; a shortfall is reported
/// as `FanInfeasible`.
pub fn fan_paths_unchecked(g: &Graph, v: Vertex, s: &[Vertex], k: usize) -> Result<Vec<VertexPath>, GraphError> {
    g.check_vertex(v)?;
    let mut target = vec![false; g.n()];
    for &w in s {
        g.check_vertex(w)?;
        target[w] = true;
    }
    if target[v] {
        return Err(GraphError::FanPrecondition(format!("source {v} lies in the target set")));
    }
    let distinct = target.iter().filter(|&&b| b).count();
    if distinct < k {
        return Err(GraphError::FanPrecondition(format!("target set has {distinct} vertices, fan of size {k} requested")));
    }
    let n = g.n();
    let sink = 2 * n;
    let mut net = FlowNetwork::new(2 * n + 1);
    for (u, &is_target) in target.iter().enumerate() {
        if u == v {
            for &w in g.neighbors(u) {
                net.add_arc(2 * u + 1, 2 * w, 1);
            }
        } else if is_target {
            net.add_arc(2 * u, sink, 1);
        } else {
            net.add_arc(2 * u, 2 * u + 1, 1);
            for &w in g.neighbors(u) {
                if w != v {
                    net.add_arc(2 * u + 1, 2 * w, 1);
                }
            }
        }
    }
    let found = net.max_flow(2 * v + 1, sink, k as i32) as usize;
    if found < k {
        return Err(GraphError::FanInfeasible { found, wanted: k });
    }
    let mut paths = Vec::with_capacity(k);
    for node_path in net.decompose(2 * v + 1, sink) {
        let mut verts = vec![v];
        verts.extend(node_path.iter().filter(|&&x| x < sink && x % 2 == 0).map(|&x| x / 2));
        paths.push(VertexPath::from_trusted(verts));
    }
    paths.sort_by_key(|p| p.last());
    debug_assert_eq!(paths.len(), k);
    Ok(paths)
}

/// Replaces each edge by a path with `t` new internal vertices. Original ids
/// are kept; new ids are appended edge by edge in `edges()` order, walking
/// from the smaller endpoint.
pub fn subdivide(g: &Graph, t: usize) -> Graph {
    let mut next = g.n();
    let mut edges = Vec::with_capacity(g.m() * (t + 1));
    for (u, v) in g.edges() {
        let mut prev = u;
        for _ in 0..t {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    Graph::new(next, &edges).expect("subdivision edges are valid")
}

/// `g1 ≡_k g2`: disjoint union plus the matching `pairs` (g1 vertex, g2
/// vertex); `g2` ids are shifted by `g1.n()`.
pub fn k_matching_join(g1: &Graph, g2: &Graph, pairs: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
    let shift = g1.n();
    let mut used1 = vec![false; g1.n()];
    let mut used2 = vec![false; g2.n()];
    for &(a, b) in pairs {
        g1.check_vertex(a)?;
        g2.check_vertex(b)?;
        if std::mem::replace(&mut used1[a], true) {
            return Err(GraphError::RepeatedEndpoint(a));
        }
        if std::mem::replace(&mut used2[b], true) {
            return Err(GraphError::RepeatedEndpoint(b + shift));
        }
    }
    let mut edges: Vec<_> = g1.edges().collect();
    edges.extend(g2.edges().map(|(u, v)| (u + shift, v + shift)));
    edges.extend(pairs.iter().map(|&(a, b)| (a, b + shift)));
    Graph::new(g1.n() + g2.n(), &edges)
}
