//! Deterministic constructions with known path eccentricity, plus seeded
//! random generators for the sweeps. Every generator is a pure function of
//! its parameters (and seed).

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{k_matching_join, subdivide, Graph, GraphError, Vertex, VertexPath};
use crate::structured::{Claim, Interval, IntervalFamily, OrderError, OrderedBipartite};

/// Attempts a rejection sampler makes before giving up.
pub const REJECTION_BUDGET: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("parameter {name} = {value}: {reason}")]
    BadParam { name: &'static str, value: String, reason: &'static str },
    #[error("{family}: no acceptable sample after {attempts} attempts (seed {seed})")]
    Budget { family: &'static str, seed: u64, attempts: usize },
    #[error("parameter {name}: cannot parse `{value}`")]
    BadArg { name: &'static str, value: String },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("{family} takes {expected} parameter(s), got {got}")]
    Arity { family: &'static str, expected: usize, got: usize },
    #[error("{family} needs --seed")]
    MissingSeed { family: &'static str },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Graph(Graph),
    Bipartite(OrderedBipartite),
    Intervals(IntervalFamily),
}

impl Instance {
    pub fn graph(&self) -> Graph {
        match self {
            Instance::Graph(g) => g.clone(),
            Instance::Bipartite(b) => b.to_graph(),
            Instance::Intervals(f) => f.graph(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Landmark {
    pub name: String,
    pub vertices: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub name: &'static str,
    pub params: Vec<(&'static str, String)>,
    pub instance: Instance,
    pub landmarks: Vec<Landmark>,
    /// A path whose eccentricity matches the family's known `pe`, when the
    /// construction provides one.
    pub witness: Option<VertexPath>,
}

impl FamilyError {
    /// Errors caused by how the family was named or its arguments spelled,
    /// as opposed to parameters outside a construction's domain.
    pub fn is_usage(&self) -> bool {
        matches!(self, FamilyError::BadArg { .. } | FamilyError::UnknownFamily(_) | FamilyError::Arity { .. } | FamilyError::MissingSeed { .. })
    }
}

impl FamilyInstance {
    pub fn graph(&self) -> Graph {
        self.instance.graph()
    }

    pub fn landmark(&self, name: &str) -> Option<&[Vertex]> {
        self.landmarks.iter().find(|l| l.name == name).map(|l| l.vertices.as_slice())
    }

    fn new(name: &'static str, params: Vec<(&'static str, String)>, instance: Instance) -> Self {
        FamilyInstance { name, params, instance, landmarks: Vec::new(), witness: None }
    }

    fn mark(mut self, name: impl Into<String>, vertices: Vec<Vertex>) -> Self {
        self.landmarks.push(Landmark { name: name.into(), vertices });
        self
    }

    fn with_witness(mut self, w: VertexPath) -> Self {
        self.witness = Some(w);
        self
    }
}

fn param(name: &'static str, v: impl ToString) -> (&'static str, String) {
    (name, v.to_string())
}

fn bad(name: &'static str, value: impl ToString, reason: &'static str) -> FamilyError {
    FamilyError::BadParam { name, value: value.to_string(), reason }
}

// Vertices of the subdivided edge number `e` (in `edges()` order) of a graph
// with `n0` vertices, from `from` to the other endpoint.
fn leg(g: &Graph, t: usize, e: usize, from: Vertex) -> Vec<Vertex> {
    let (u, v) = g.edges().nth(e).expect("edge index in range");
    let n0 = g.n();
    let mut out = vec![u];
    out.extend(n0 + e * t..n0 + (e + 1) * t);
    out.push(v);
    if from == v {
        out.reverse();
    }
    out
}

fn edge_index(g: &Graph, u: Vertex, v: Vertex) -> usize {
    let key = (u.min(v), u.max(v));
    g.edges().position(|e| e == key).expect("edge exists")
}

/// `K_{1,3}` with every edge subdivided `t` times: hub 0, tips 1, 2, 3.
pub fn spider(t: usize) -> FamilyInstance {
    let star = Graph::complete_bipartite(1, 3);
    let g = subdivide(&star, t);
    let mut w = leg(&star, t, 0, 1);
    w.extend(leg(&star, t, 1, 0).into_iter().skip(1));
    let witness = VertexPath::new(&g, w).expect("two legs through the hub form a path");
    FamilyInstance::new("spider", vec![param("t", t)], Instance::Graph(g))
        .mark("hub", vec![0])
        .mark("tips", vec![1, 2, 3])
        .with_witness(witness)
}

/// `K_{2,4}` (sides `v1, v2` = 0, 1 and `u1..u4` = 2..5) with every edge
/// subdivided `l - 1` times.
pub fn subdivided_k24(l: usize) -> Result<FamilyInstance, FamilyError> {
    if l == 0 {
        return Err(bad("l", l, "must be at least 1"));
    }
    let h = Graph::complete_bipartite(2, 4);
    let t = l - 1;
    let g = subdivide(&h, t);
    let seg = |a: Vertex, b: Vertex| leg(&h, t, edge_index(&h, a, b), a);
    // v1's neighbor on the u2 leg, u2, v2, u1, v1.
    let mut w: Vec<Vertex> = seg(0, 3).into_iter().skip(1).collect();
    w.extend(seg(3, 1).into_iter().skip(1));
    w.extend(seg(1, 2).into_iter().skip(1));
    w.extend(seg(2, 0).into_iter().skip(1));
    let witness = VertexPath::new(&g, w).expect("four subdivided legs form a path");
    Ok(FamilyInstance::new("subdivided_k24", vec![param("l", l)], Instance::Graph(g))
        .mark("separator", vec![0, 1])
        .with_witness(witness))
}

/// `K_{k,k(k+2)}` plus `k + 2` pendant-like vertices `z_i`, each joined to
/// its own run of `k` X vertices. Y lists the `k` original vertices first.
pub fn convex_tight(k: usize) -> Result<FamilyInstance, FamilyError> {
    if k == 0 {
        return Err(bad("k", k, "must be at least 1"));
    }
    let nx = k * (k + 2);
    let ny = k + (k + 2);
    let mut edges: Vec<(usize, usize)> = (0..nx).flat_map(|x| (0..k).map(move |y| (x, y))).collect();
    for i in 0..k + 2 {
        edges.extend((i * k..(i + 1) * k).map(|x| (x, k + i)));
    }
    let b = OrderedBipartite::new(nx, ny, &edges, Claim::ConvexX)?;
    let sep = (nx..nx + k).collect();
    Ok(FamilyInstance::new("convex_tight", vec![param("k", k)], Instance::Bipartite(b)).mark("separator", sep))
}

fn check_kl(k: usize, l: usize) -> Result<(), FamilyError> {
    if k < 2 {
        return Err(bad("k", k, "must be at least 2"));
    }
    if l == 0 {
        return Err(bad("l", l, "must be at least 1"));
    }
    Ok(())
}

// Chain K_k ≡ ... ≡ K_k ≡ K_{k+1}; block j occupies ids j*k.. .
fn clique_chain(k: usize, l: usize) -> Graph {
    let mut g = Graph::complete(if l == 1 { k + 1 } else { k });
    for j in 1..l {
        let next = Graph::complete(if j == l - 1 { k + 1 } else { k });
        let base = (j - 1) * k;
        let pairs: Vec<_> = (0..k).map(|i| (base + i, i)).collect();
        g = k_matching_join(&g, &next, &pairs).expect("matching endpoints are distinct");
    }
    g
}

/// `P^k_l`: `l - 1` copies of `K_k` and a final `K_{k+1}`, consecutive blocks
/// joined by the matching of equal ranks.
pub fn p_family(k: usize, l: usize) -> Result<FamilyInstance, FamilyError> {
    check_kl(k, l)?;
    let g = clique_chain(k, l);
    let n = g.n();
    let tail = (0..if l == 1 { k + 1 } else { k }).collect();
    let head = ((l - 1) * k..n).collect();
    Ok(FamilyInstance::new("p_family", vec![param("k", k), param("l", l)], Instance::Graph(g))
        .mark("tail", tail)
        .mark("head", head))
}

/// `H^k_l`: `k + 2` copies of `P^k_l` sharing their first `k` tail vertices
/// (the base, ids `0..k`). Copy `c` puts chain vertex `p >= k` at
/// `k + c((l-1)k+1) + (p-k)`.
pub fn h_family(k: usize, l: usize) -> Result<FamilyInstance, FamilyError> {
    check_kl(k, l)?;
    let chain = clique_chain(k, l);
    let per_copy = (l - 1) * k + 1;
    let n = (k + 2) * per_copy + k;
    let map = |c: usize, p: Vertex| if p < k { p } else { k + c * per_copy + (p - k) };
    let mut edges = BTreeSet::new();
    for c in 0..k + 2 {
        edges.extend(chain.edges().map(|(u, v)| (map(c, u), map(c, v))));
    }
    let edges: Vec<_> = edges.into_iter().collect();
    let g = Graph::new(n, &edges)?;
    let base: Vec<Vertex> = (0..k).collect();
    let witness = VertexPath::new(&g, base.clone()).expect("the base is a clique");
    Ok(FamilyInstance::new("h_family", vec![param("k", k), param("l", l)], Instance::Graph(g))
        .mark("base", base)
        .with_witness(witness))
}

/// Interval graph whose longest paths all have eccentricity `k - 1` while a
/// dominating path exists. Ids: `a_1..a_k` = `0..k`, `b_1..b_k` = `k..2k`,
/// `c_1..c_{k-1}` = `2k..3k-1`, `d` = `3k - 1`.
pub fn interval_counterexample(k: usize) -> Result<FamilyInstance, FamilyError> {
    if !(3..=40).contains(&k) {
        return Err(bad("k", k, "must be in 3..=40"));
    }
    let pow = |e: usize| 1i64 << e;
    let mut items = Vec::with_capacity(3 * k);
    for i in 1..=k {
        items.push(Interval { id: i - 1, left: 1, right: pow(k - i) });
    }
    for i in 1..=k {
        items.push(Interval { id: k + i - 1, left: pow(k - 1) + 1, right: pow(k - 1) + pow(k - i) });
    }
    for i in 1..k {
        let left = pow(k) + i as i64;
        items.push(Interval { id: 2 * k + i - 1, left, right: left + 1 });
    }
    let d = 3 * k - 1;
    items.push(Interval { id: d, left: 1, right: pow(k) + 1 });
    let f = IntervalFamily::new(items)?;
    let g = f.graph();

    let a: Vec<Vertex> = (0..k).collect();
    let b: Vec<Vertex> = (k..2 * k).collect();
    let c: Vec<Vertex> = (2 * k..d).collect();
    let mut longest: Vec<Vertex> = a.iter().rev().copied().collect();
    longest.push(d);
    let mut central = longest.clone();
    longest.extend(&b);
    central.extend(&c);
    let witness = VertexPath::new(&g, central.clone()).expect("a_k..a_1, d, c_1.. is a path");
    debug_assert!(VertexPath::new(&g, longest.clone()).is_ok());
    Ok(FamilyInstance::new("interval_counterexample", vec![param("k", k)], Instance::Intervals(f))
        .mark("a", a)
        .mark("b", b)
        .mark("c", c)
        .mark("d", vec![d])
        .mark("longest", longest)
        .mark("central", central)
        .with_witness(witness))
}

/// `K_{a,b}`; every ordering is strong.
pub fn complete_bipartite(a: usize, b: usize) -> Result<FamilyInstance, FamilyError> {
    if a == 0 {
        return Err(bad("a", a, "must be at least 1"));
    }
    if b == 0 {
        return Err(bad("b", b, "must be at least 1"));
    }
    let edges: Vec<_> = (0..a).flat_map(|x| (0..b).map(move |y| (x, y))).collect();
    let bg = OrderedBipartite::new(a, b, &edges, Claim::Strong)?;
    Ok(FamilyInstance::new("complete_bipartite", vec![param("a", a), param("b", b)], Instance::Bipartite(bg)))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn need_n(n: usize, min: usize) -> Result<(), FamilyError> {
    if n < min {
        return Err(FamilyError::BadParam {
            name: "n",
            value: n.to_string(),
            reason: if min == 1 { "must be at least 1" } else { "must be at least 2" },
        });
    }
    Ok(())
}

/// Uniform labeled tree from a random Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<FamilyInstance, FamilyError> {
    need_n(n, 1)?;
    let mut r = rng(seed);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    if n == 2 {
        edges.push((0, 1));
    } else if n > 2 {
        let code: Vec<usize> = (0..n - 2).map(|_| r.gen_range(0..n)).collect();
        let mut degree = vec![1usize; n];
        for &v in &code {
            degree[v] += 1;
        }
        let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        for &v in &code {
            let leaf = leaves.pop_first().expect("a Prüfer step always has a leaf");
            edges.push((leaf.min(v), leaf.max(v)));
            degree[v] -= 1;
            if degree[v] == 1 {
                leaves.insert(v);
            }
        }
        let u = leaves.pop_first().expect("two leaves remain");
        let v = leaves.pop_first().expect("two leaves remain");
        edges.push((u, v));
    }
    let g = Graph::new(n, &edges)?;
    Ok(FamilyInstance::new("random_tree", vec![param("n", n), param("seed", seed)], Instance::Graph(g)))
}

/// `G(n, p)` resampled until connected.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Result<FamilyInstance, FamilyError> {
    need_n(n, 1)?;
    if !(p > 0.0 && p <= 1.0) && n > 1 {
        return Err(bad("p", p, "must be in (0, 1]"));
    }
    let mut r = rng(seed);
    for _ in 0..REJECTION_BUDGET {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| r.gen_bool(p)).collect();
        let g = Graph::new(n, &edges)?;
        if g.is_connected() {
            return Ok(FamilyInstance::new(
                "random_connected",
                vec![param("n", n), param("p", p), param("seed", seed)],
                Instance::Graph(g),
            ));
        }
    }
    Err(FamilyError::Budget { family: "random_connected", seed, attempts: REJECTION_BUDGET })
}

/// Intervals with two sorted random endpoints in `0..coord_range`, resampled
/// until the intersection graph is connected.
pub fn random_interval(n: usize, coord_range: i64, seed: u64) -> Result<FamilyInstance, FamilyError> {
    need_n(n, 1)?;
    if coord_range < 1 {
        return Err(bad("coord_range", coord_range, "must be at least 1"));
    }
    let mut r = rng(seed);
    for _ in 0..REJECTION_BUDGET {
        let items = (0..n)
            .map(|id| {
                let (a, b) = (r.gen_range(0..coord_range), r.gen_range(0..coord_range));
                Interval { id, left: a.min(b), right: a.max(b) }
            })
            .collect();
        let f = IntervalFamily::new(items)?;
        if f.graph().is_connected() {
            return Ok(FamilyInstance::new(
                "random_interval",
                vec![param("n", n), param("coord_range", coord_range), param("seed", seed)],
                Instance::Intervals(f),
            ));
        }
    }
    Err(FamilyError::Budget { family: "random_interval", seed, attempts: REJECTION_BUDGET })
}

fn split(r: &mut ChaCha8Rng, n: usize) -> (usize, usize) {
    let nx = r.gen_range(1..n);
    (nx, n - nx)
}

/// Connected bipartite permutation graph in a strong ordering: X windows on Y
/// whose left and right ends are both non-decreasing, consecutive windows
/// overlapping.
pub fn random_bpg(n: usize, seed: u64) -> Result<FamilyInstance, FamilyError> {
    need_n(n, 2)?;
    let mut r = rng(seed);
    let (nx, ny) = split(&mut r, n);
    let mut edges = Vec::new();
    let (mut lo, mut hi) = (0, r.gen_range(0..ny));
    for x in 0..nx {
        if x > 0 {
            lo = r.gen_range(lo..=hi);
            hi = r.gen_range(hi.max(lo)..ny);
        }
        if x == nx - 1 {
            hi = ny - 1;
        }
        edges.extend((lo..=hi).map(|y| (x, y)));
    }
    let b = OrderedBipartite::new(nx, ny, &edges, Claim::Strong)?;
    Ok(FamilyInstance::new("random_bpg", vec![param("n", n), param("seed", seed)], Instance::Bipartite(b)))
}

// Each y gets a random window of X; Y is listed by window start.
fn random_windows(r: &mut ChaCha8Rng, nx: usize, ny: usize) -> Vec<(usize, usize)> {
    let mut windows: Vec<(usize, usize)> = (0..ny)
        .map(|_| {
            let a = r.gen_range(0..nx);
            let b = r.gen_range(0..nx);
            (a.min(b), a.max(b))
        })
        .collect();
    windows.sort_unstable();
    windows.iter().enumerate().flat_map(|(y, &(lo, hi))| (lo..=hi).map(move |x| (x, y))).collect()
}

fn accept(b: &OrderedBipartite) -> bool {
    b.is_connected() && (0..b.nx()).all(|x| !b.x_neighbors(x).is_empty())
}

/// Connected X-convex instance: random X windows per y.
pub fn random_convex(n: usize, seed: u64) -> Result<FamilyInstance, FamilyError> {
    need_n(n, 2)?;
    let mut r = rng(seed);
    for _ in 0..REJECTION_BUDGET {
        let (nx, ny) = split(&mut r, n);
        let mut edges = random_windows(&mut r, nx, ny);
        edges.shuffle(&mut r);
        let b = OrderedBipartite::new(nx, ny, &edges, Claim::ConvexX)?;
        if accept(&b) {
            return Ok(FamilyInstance::new("random_convex", vec![param("n", n), param("seed", seed)], Instance::Bipartite(b)));
        }
    }
    Err(FamilyError::Budget { family: "random_convex", seed, attempts: REJECTION_BUDGET })
}

/// Connected biconvex instance: random X windows per y, kept when the
/// Y-convexity validator accepts.
pub fn random_biconvex(n: usize, seed: u64) -> Result<FamilyInstance, FamilyError> {
    need_n(n, 2)?;
    let mut r = rng(seed);
    for _ in 0..REJECTION_BUDGET {
        let (nx, ny) = split(&mut r, n);
        let edges = random_windows(&mut r, nx, ny);
        let Ok(b) = OrderedBipartite::new(nx, ny, &edges, Claim::Biconvex) else {
            continue;
        };
        if accept(&b) {
            return Ok(FamilyInstance::new("random_biconvex", vec![param("n", n), param("seed", seed)], Instance::Bipartite(b)));
        }
    }
    Err(FamilyError::Budget { family: "random_biconvex", seed, attempts: REJECTION_BUDGET })
}

/// Names accepted by [`generate`], with their positional parameters.
pub const FAMILIES: &[(&str, &[&str])] = &[
    ("spider", &["t"]),
    ("subdivided_k24", &["l"]),
    ("convex_tight", &["k"]),
    ("p_family", &["k", "l"]),
    ("h_family", &["k", "l"]),
    ("interval_counterexample", &["k"]),
    ("complete_bipartite", &["a", "b"]),
    ("random_tree", &["n"]),
    ("random_connected", &["n", "p"]),
    ("random_interval", &["n", "coord_range"]),
    ("random_bpg", &["n"]),
    ("random_convex", &["n"]),
    ("random_biconvex", &["n"]),
];

/// Builds a family by name from textual positional parameters. Random
/// families require a seed.
pub fn generate(name: &str, args: &[String], seed: Option<u64>) -> Result<FamilyInstance, FamilyError> {
    let (family, names) = FAMILIES
        .iter()
        .find(|(f, _)| *f == name)
        .copied()
        .ok_or_else(|| FamilyError::UnknownFamily(name.to_string()))?;
    if args.len() != names.len() {
        return Err(FamilyError::Arity { family, expected: names.len(), got: args.len() });
    }
    let uint = |i: usize| args[i].parse::<usize>().map_err(|_| FamilyError::BadArg { name: names[i], value: args[i].clone() });
    let seeded = || seed.ok_or(FamilyError::MissingSeed { family });
    match family {
        "spider" => Ok(spider(uint(0)?)),
        "subdivided_k24" => subdivided_k24(uint(0)?),
        "convex_tight" => convex_tight(uint(0)?),
        "p_family" => p_family(uint(0)?, uint(1)?),
        "h_family" => h_family(uint(0)?, uint(1)?),
        "interval_counterexample" => interval_counterexample(uint(0)?),
        "complete_bipartite" => complete_bipartite(uint(0)?, uint(1)?),
        "random_tree" => random_tree(uint(0)?, seeded()?),
        "random_connected" => {
            let p = args[1].parse::<f64>().map_err(|_| FamilyError::BadArg { name: "p", value: args[1].clone() })?;
            random_connected(uint(0)?, p, seeded()?)
        }
        "random_interval" => {
            let range = args[1].parse::<i64>().map_err(|_| FamilyError::BadArg { name: "coord_range", value: args[1].clone() })?;
            random_interval(uint(0)?, range, seeded()?)
        }
        "random_bpg" => random_bpg(uint(0)?, seeded()?),
        "random_convex" => random_convex(uint(0)?, seeded()?),
        "random_biconvex" => random_biconvex(uint(0)?, seeded()?),
        _ => unreachable!("every listed family is dispatched"),
    }
}
