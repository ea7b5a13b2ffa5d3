//! Brute-force oracles: exact path eccentricity with a witness, longest-path
//! enumeration, the polynomial tree routines and the longest-vs-central checks.
//!
//! The general search only visits maximal (non-extendable) paths. That loses
//! nothing: if `V(P) ⊆ V(P')` then `ecc(P') ≤ ecc(P)`, and every path extends
//! to a maximal one, so some maximal path attains the minimum.

use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{centers, Graph, GraphError, Vertex, VertexPath};
use crate::par::{self, Exec};
use crate::structured::{validate_strong, OrderError, OrderedBipartite};

/// Largest graph the bitmask searches accept regardless of the caller's cap.
pub const MASK_LIMIT: usize = 64;
pub const DEFAULT_PE_CAP: usize = 16;
pub const DEFAULT_LONGEST_CAP: usize = 14;
pub const DEFAULT_PATH_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has {n} vertices, budget allows {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("more than {limit} paths would be listed")]
    TooManyPaths { limit: usize },
    #[error("graph is not a tree")]
    NotATree,
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

/// Search budget: vertex cap plus a ceiling on listed paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_vertices: usize,
    pub max_paths: usize,
}

impl Budget {
    pub fn new(max_vertices: usize) -> Self {
        Budget { max_vertices, max_paths: DEFAULT_PATH_LIMIT }
    }

    fn check(&self, g: &Graph) -> Result<(), ExactError> {
        let cap = self.max_vertices.min(MASK_LIMIT);
        if g.n() > cap {
            return Err(ExactError::TooLarge { n: g.n(), cap });
        }
        if !g.is_connected() {
            return Err(ExactError::Disconnected);
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_LONGEST_CAP)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeMethod {
    MaximalPathEnumeration,
    TreeAllPairs,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeResult {
    pub pe: usize,
    pub witness: VertexPath,
    pub method: PeMethod,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LongestPathReport {
    pub length: usize,
    pub paths: Vec<VertexPath>,
    pub eccs: Vec<usize>,
    pub ecc_min: usize,
    pub ecc_max: usize,
}

// Adjacency as bitmasks; graphs here have at most 64 vertices.
struct Masks {
    nbr: Vec<u64>,
    full: u64,
}

impl Masks {
    fn new(g: &Graph) -> Self {
        let nbr = (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect();
        let full = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
        Masks { nbr, full }
    }

    fn grow(&self, mask: u64) -> u64 {
        let mut out = mask;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= self.nbr[v];
        }
        out
    }

    /// Eccentricity of a nonempty vertex set in a connected graph.
    fn ecc(&self, mask: u64) -> usize {
        let mut cur = mask;
        let mut d = 0;
        while cur != self.full {
            cur = self.grow(cur);
            d += 1;
        }
        d
    }

    /// Vertices reachable from `tail` without touching `blocked`.
    fn reach(&self, tail: usize, blocked: u64) -> u64 {
        let mut seen = 0u64;
        let mut frontier = self.nbr[tail] & !blocked;
        while frontier != 0 {
            seen |= frontier;
            frontier = self.grow(frontier) & !blocked & !seen;
        }
        seen
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

struct PeSearch<'a> {
    masks: &'a Masks,
    start: usize,
    shared: &'a AtomicUsize,
    best: usize,
    best_path: Vec<usize>,
}

impl PeSearch<'_> {
    // Lexicographic DFS. Within one start only strict improvements are kept,
    // so the first minimizer in lex order survives; the shared bound only
    // prunes subtrees that cannot even tie the global best.
    fn dfs(&mut self, path: &mut Vec<usize>, in_path: u64) {
        let m = self.masks;
        let tail = *path.last().expect("nonempty");
        let ext = m.nbr[tail] & !in_path;
        if ext == 0 {
            if m.nbr[self.start] & !in_path != 0 {
                return;
            }
            let e = m.ecc(in_path);
            if e < self.best && e <= self.shared.load(Ordering::Relaxed) {
                self.best = e;
                self.best_path = path.clone();
                self.shared.fetch_min(e, Ordering::Relaxed);
            }
            return;
        }
        let avail = in_path | m.reach(tail, in_path);
        if m.nbr[self.start] & !avail != 0 {
            return;
        }
        let lower = m.ecc(avail);
        if lower >= self.best || lower > self.shared.load(Ordering::Relaxed) {
            return;
        }
        for w in bits(ext) {
            path.push(w);
            self.dfs(path, in_path | 1 << w);
            path.pop();
            if self.best <= lower {
                return;
            }
        }
    }
}

/// Exact `pe(g)` with the lexicographically smallest canonical maximal
/// witness path among minimizers.
pub fn pe_exact(g: &Graph, cap: usize) -> Result<PeResult, ExactError> {
    pe_exact_with(g, cap, Exec::default())
}

pub fn pe_exact_with(g: &Graph, cap: usize, exec: Exec) -> Result<PeResult, ExactError> {
    Budget::new(cap).check(g)?;
    if g.n() == 0 {
        return Err(ExactError::Graph(GraphError::TooFewVertices { needed: 1, n: 0 }));
    }
    let masks = Masks::new(g);
    let shared = AtomicUsize::new(usize::MAX);
    let per_start = par::map_range(exec, 0..g.n(), |start| {
        let mut search = PeSearch { masks: &masks, start, shared: &shared, best: usize::MAX, best_path: Vec::new() };
        search.dfs(&mut vec![start], 1 << start);
        (search.best, search.best_path)
    });
    let (pe, path) = per_start
        .into_iter()
        .filter(|(e, _)| *e != usize::MAX)
        .min_by_key(|(e, _)| *e)
        .ok_or_else(|| ExactError::Invariant("no maximal path found".into()))?;
    Ok(PeResult { pe, witness: VertexPath::from_trusted(path), method: PeMethod::MaximalPathEnumeration })
}

/// Calls `f` once per maximal path (canonical orientation, lexicographic
/// order) until it returns `false`.
pub fn visit_maximal_paths<F>(g: &Graph, cap: usize, mut f: F) -> Result<(), ExactError>
where
    F: FnMut(&[Vertex]) -> bool,
{
    Budget::new(cap).check(g)?;
    let masks = Masks::new(g);
    for start in 0..g.n() {
        if !visit_from(&masks, start, &mut vec![start], 1 << start, &mut f) {
            break;
        }
    }
    Ok(())
}

fn visit_from<F>(m: &Masks, start: usize, path: &mut Vec<usize>, in_path: u64, f: &mut F) -> bool
where
    F: FnMut(&[Vertex]) -> bool,
{
    let tail = *path.last().expect("nonempty");
    let ext = m.nbr[tail] & !in_path;
    if ext == 0 {
        if m.nbr[start] & !in_path == 0 && (path.len() == 1 || start < tail) {
            return f(path);
        }
        return true;
    }
    if m.nbr[start] & !(in_path | m.reach(tail, in_path)) != 0 {
        return true;
    }
    for w in bits(ext) {
        path.push(w);
        let go = visit_from(m, start, path, in_path | 1 << w, f);
        path.pop();
        if !go {
            return false;
        }
    }
    true
}

/// First maximal path (lexicographic, canonical) on which `pred` holds.
/// Starts are searched concurrently; the answer does not depend on `exec`.
pub fn find_maximal_path<P>(g: &Graph, cap: usize, exec: Exec, pred: P) -> Result<Option<VertexPath>, ExactError>
where
    P: Fn(&[Vertex]) -> bool + Sync + Send,
{
    Budget::new(cap).check(g)?;
    let masks = Masks::new(g);
    let hits = par::map_range(exec, 0..g.n(), |start| {
        let mut hit = None;
        visit_from(&masks, start, &mut vec![start], 1 << start, &mut |p: &[Vertex]| {
            if pred(p) {
                hit = Some(p.to_vec());
                false
            } else {
                true
            }
        });
        hit
    });
    Ok(hits.into_iter().flatten().next().map(VertexPath::from_trusted))
}

/// Eccentricity of a vertex set via the bitmask BFS (graphs up to 64 vertices).
fn mask_of(path: &[Vertex]) -> u64 {
    path.iter().fold(0u64, |m, &v| m | 1 << v)
}

struct LongestSearch<'a> {
    masks: &'a Masks,
    start: usize,
}

impl LongestSearch<'_> {
    fn max_len(&self, path: &mut Vec<usize>, in_path: u64, best: &AtomicUsize) {
        let m = self.masks;
        let tail = *path.last().expect("nonempty");
        let len = path.len() - 1;
        best.fetch_max(len, Ordering::Relaxed);
        let ext = m.nbr[tail] & !in_path;
        if ext == 0 {
            return;
        }
        let upper = len + m.reach(tail, in_path).count_ones() as usize;
        if upper <= best.load(Ordering::Relaxed) {
            return;
        }
        for w in bits(ext) {
            path.push(w);
            self.max_len(path, in_path | 1 << w, best);
            path.pop();
        }
    }

    fn collect(&self, path: &mut Vec<usize>, in_path: u64, target: usize, out: &mut Vec<Vec<usize>>, count: &AtomicUsize, limit: usize) -> bool {
        let m = self.masks;
        let tail = *path.last().expect("nonempty");
        let len = path.len() - 1;
        if len == target {
            if len == 0 || self.start < tail {
                out.push(path.clone());
                if count.fetch_add(1, Ordering::Relaxed) + 1 > limit {
                    return false;
                }
            }
            return true;
        }
        let ext = m.nbr[tail] & !in_path;
        if ext == 0 || len + (m.reach(tail, in_path).count_ones() as usize) < target {
            return true;
        }
        for w in bits(ext) {
            path.push(w);
            let go = self.collect(path, in_path | 1 << w, target, out, count, limit);
            path.pop();
            if !go {
                return false;
            }
        }
        true
    }
}

/// All longest simple paths (canonical orientation, lexicographic order).
pub fn longest_paths(g: &Graph, budget: Budget) -> Result<LongestPathReport, ExactError> {
    longest_paths_with(g, budget, Exec::default())
}

pub fn longest_paths_with(g: &Graph, budget: Budget, exec: Exec) -> Result<LongestPathReport, ExactError> {
    budget.check(g)?;
    if g.n() == 0 {
        return Err(ExactError::Graph(GraphError::TooFewVertices { needed: 1, n: 0 }));
    }
    let masks = Masks::new(g);
    let best = AtomicUsize::new(0);
    par::map_range(exec, 0..g.n(), |start| {
        LongestSearch { masks: &masks, start }.max_len(&mut vec![start], 1 << start, &best);
    });
    let length = best.load(Ordering::Relaxed);
    let count = AtomicUsize::new(0);
    let limit = budget.max_paths;
    let per_start = par::map_range(exec, 0..g.n(), |start| {
        let mut out = Vec::new();
        let ok = LongestSearch { masks: &masks, start }.collect(&mut vec![start], 1 << start, length, &mut out, &count, limit);
        (ok, out)
    });
    let mut paths = Vec::new();
    for (ok, out) in per_start {
        if !ok {
            return Err(ExactError::TooManyPaths { limit });
        }
        paths.extend(out);
    }
    if paths.len() > limit {
        return Err(ExactError::TooManyPaths { limit });
    }
    let eccs: Vec<usize> = par::map_slice(exec, &paths, |p| masks.ecc(mask_of(p)));
    let ecc_min = *eccs.iter().min().expect("a connected graph has a longest path");
    let ecc_max = *eccs.iter().max().expect("nonempty");
    Ok(LongestPathReport { length, paths: paths.into_iter().map(VertexPath::from_trusted).collect(), eccs, ecc_min, ecc_max })
}

// Tree routines: for a root u, `ecc(u..v)` is the larger of the height of
// v's subtree and the best branch hanging off the u-v path before v.
struct Rooted {
    parent: Vec<usize>,
    depth: Vec<usize>,
    /// Preorder with children visited in ascending id order.
    preorder: Vec<usize>,
    /// Eccentricity of the path from the root to each vertex.
    path_ecc: Vec<usize>,
}

fn rooted(g: &Graph, root: Vertex) -> Rooted {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0; n];
    let mut preorder = Vec::with_capacity(n);
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(u) = stack.pop() {
        preorder.push(u);
        for &w in g.neighbors(u).iter().rev() {
            if parent[w] == usize::MAX {
                parent[w] = u;
                depth[w] = depth[u] + 1;
                stack.push(w);
            }
        }
    }
    let mut height = vec![0usize; n];
    // Two largest (1 + child height) values per vertex, with the child giving the largest.
    let mut top = vec![(0usize, usize::MAX, 0usize); n];
    for &u in preorder.iter().rev() {
        if u != root {
            let p = parent[u];
            let h = height[u] + 1;
            let (a, who, b) = top[p];
            top[p] = if h > a { (h, u, a) } else { (a, who, b.max(h)) };
            height[p] = height[p].max(h);
        }
    }
    let mut acc = vec![0usize; n];
    let mut path_ecc = vec![0usize; n];
    for &u in &preorder {
        path_ecc[u] = acc[u].max(height[u]);
        for &w in g.neighbors(u) {
            if parent[w] == u && w != root {
                let (a, who, b) = top[u];
                let side = if who == w { b } else { a };
                acc[w] = acc[u].max(side);
            }
        }
    }
    Rooted { parent, depth, preorder, path_ecc }
}

fn tree_path(r: &Rooted, root: Vertex, v: Vertex) -> Vec<Vertex> {
    let mut out = vec![v];
    let mut cur = v;
    while cur != root {
        cur = r.parent[cur];
        out.push(cur);
    }
    out.reverse();
    out
}

/// Exact `pe` of a tree over all leaf-to-leaf paths, `O(n²)`. The witness
/// follows the same tie-break as [`pe_exact`].
pub fn pe_tree(g: &Graph) -> Result<PeResult, ExactError> {
    pe_tree_with(g, Exec::default())
}

pub fn pe_tree_with(g: &Graph, exec: Exec) -> Result<PeResult, ExactError> {
    if !g.is_tree() {
        return Err(ExactError::NotATree);
    }
    if g.n() == 1 {
        return Ok(PeResult { pe: 0, witness: VertexPath::single(0), method: PeMethod::TreeAllPairs });
    }
    let leaves: Vec<Vertex> = (0..g.n()).filter(|&v| g.degree(v) == 1).collect();
    let per_leaf = par::map_slice(exec, &leaves, |&u| {
        let r = rooted(g, u);
        let best = r
            .preorder
            .iter()
            .filter(|&&v| v != u && g.degree(v) == 1)
            .map(|&v| (r.path_ecc[v], v))
            .min_by_key(|&(e, _)| e)
            .expect("a tree on two or more vertices has two leaves");
        (best.0, u, tree_path(&r, u, best.1))
    });
    let (pe, _, path) = per_leaf.into_iter().min_by_key(|&(e, u, _)| (e, u)).expect("leaves exist");
    Ok(PeResult { pe, witness: VertexPath::from_trusted(path), method: PeMethod::TreeAllPairs })
}

/// The minimum-length central path of a tree. Fails with `Invariant` if it
/// is not unique or misses a center.
pub fn min_length_central_path_tree(g: &Graph) -> Result<VertexPath, ExactError> {
    let pe = pe_tree(g)?.pe;
    let n = g.n();
    let per_root = par::map_range(Exec::default(), 0..n, |u| {
        let r = rooted(g, u);
        let hits: Vec<(usize, Vertex)> = (u..n).filter(|&v| r.path_ecc[v] == pe).map(|v| (r.depth[v], v)).collect();
        let shortest = hits.iter().map(|h| h.0).min();
        let at_min: Vec<Vertex> = hits.iter().filter(|h| Some(h.0) == shortest).map(|h| h.1).collect();
        (shortest, at_min, r)
    });
    let shortest = per_root.iter().filter_map(|t| t.0).min().ok_or_else(|| ExactError::Invariant("no central path found".into()))?;
    let mut found: Vec<VertexPath> = Vec::new();
    for (u, (len, ends, r)) in per_root.iter().enumerate() {
        if *len == Some(shortest) {
            found.extend(ends.iter().map(|&v| VertexPath::from_trusted(tree_path(r, u, v))));
        }
    }
    if found.len() != 1 {
        return Err(ExactError::Invariant(format!("{} central paths of minimum length {shortest}", found.len())));
    }
    let path = found.pop().expect("one path");
    let tree_centers = centers(g).ok_or(ExactError::NotATree)?;
    if let Some(c) = tree_centers.iter().find(|&&c| !path.contains(c)) {
        return Err(ExactError::Invariant(format!("minimum-length central path misses center {c}")));
    }
    Ok(path)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Property1Verdict {
    Holds { pe: usize, longest_length: usize },
    Fails { pe: usize, longest_length: usize, witness: VertexPath, witness_ecc: usize },
}

impl Property1Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Property1Verdict::Holds { .. })
    }
}

/// Whether every longest path is central.
pub fn property1_check(g: &Graph, budget: Budget) -> Result<Property1Verdict, ExactError> {
    let pe = pe_exact(g, budget.max_vertices)?.pe;
    let report = longest_paths(g, budget)?;
    Ok(match report.eccs.iter().position(|&e| e > pe) {
        None => Property1Verdict::Holds { pe, longest_length: report.length },
        Some(i) => Property1Verdict::Fails {
            pe,
            longest_length: report.length,
            witness: report.paths[i].clone(),
            witness_ecc: report.eccs[i],
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum CerioliVerdict {
    Holds { longest_paths: usize },
    Violated { edge: (Vertex, Vertex), path: VertexPath },
}

/// Every longest path contains at least one end of every edge.
pub fn cerioli_check(b: &OrderedBipartite, budget: Budget) -> Result<CerioliVerdict, ExactError> {
    validate_strong(b)?;
    let g = b.to_graph();
    let report = longest_paths(&g, budget)?;
    for (u, v) in g.edges() {
        if let Some(p) = report.paths.iter().find(|p| !p.contains(u) && !p.contains(v)) {
            return Ok(CerioliVerdict::Violated { edge: (u, v), path: p.clone() });
        }
    }
    Ok(CerioliVerdict::Holds { longest_paths: report.paths.len() })
}
