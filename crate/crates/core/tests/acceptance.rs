//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::VecDeque;
use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use pathecc::bounds::{bound_general, bound_kconn, bound_longest_kconn, bound_path_kconn, certificate_bound, tightness_inequality, Rational};
use pathecc::exact::{
    longest_paths, min_length_central_path_tree, pe_exact, pe_tree, property1_check, visit_maximal_paths, Budget, Property1Verdict,
};
use pathecc::families::{
    complete_bipartite, convex_tight, generate, h_family, interval_counterexample, p_family, random_biconvex, random_bpg, random_connected,
    random_convex, random_interval, random_tree, spider, subdivided_k24, FamilyInstance, Instance, FAMILIES,
};
use pathecc::graph::{centers, diameter, vertex_connectivity, Distance, Graph, Vertex};
use pathecc::io::{parse, serialize, serialize_family};
use pathecc::structured::{
    check_numbering, dom_path_biconvex, dom_path_bpg, dom_path_interval, interval_order, two_dom_path_convex, validate_convex,
    validate_convex_y, validate_strong, OrderedBipartite,
};

const CAP: usize = 16;

type Outcome = Result<String, String>;

// Plain BFS from a vertex set, written against adjacency lists only.
fn bfs_ecc(g: &Graph, s: &[Vertex]) -> Option<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    for &v in s {
        if dist[v] == usize::MAX {
            dist[v] = 0;
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist.into_iter().try_fold(0, |acc, d| (d != usize::MAX).then_some(acc.max(d)))
}

fn int(v: usize) -> Rational {
    Rational::from_integer(v as i64)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn bip(f: &FamilyInstance) -> &OrderedBipartite {
    match &f.instance {
        Instance::Bipartite(b) => b,
        _ => panic!("{} is not bipartite", f.name),
    }
}

/// Solver outputs and certificate bounds collected along the way, checked
/// against the exact oracle at the end.
#[derive(Default)]
struct Record {
    solver: Vec<(String, Graph, usize)>,
    certs: Vec<(String, Graph, usize)>,
}

impl Record {
    fn solver(&mut self, what: impl Into<String>, g: &Graph, ecc: usize) {
        self.solver.push((what.into(), g.clone(), ecc));
    }

    fn cert(&mut self, what: impl Into<String>, g: &Graph, bound: usize) {
        self.certs.push((what.into(), g.clone(), bound));
    }
}

fn c1_spider() -> Outcome {
    for t in 0..=4 {
        let g = spider(t).graph();
        let n = g.n();
        ensure(n == 3 * t + 4, || format!("spider({t}) has {n} vertices"))?;
        let pe = pe_tree(&g).map_err(e2s)?.pe;
        let bound = bound_general(n).map_err(e2s)?;
        ensure(int(pe) == bound, || format!("spider({t}): pe {pe} != (n-1)/3 = {bound}"))?;
        if t <= 3 {
            let brute = pe_exact(&g, CAP).map_err(e2s)?.pe;
            ensure(brute == pe, || format!("spider({t}): tree routine {pe}, enumeration {brute}"))?;
        }
    }
    Ok("t = 0..4, pe = (n-1)/3 exactly".into())
}

fn c2_k24(rec: &mut Record) -> Outcome {
    for l in 1..=3 {
        let f = subdivided_k24(l).map_err(e2s)?;
        let g = f.graph();
        let n = g.n();
        ensure(Rational::new(n as i64 + 2, 8) == int(l), || format!("l={l}: (n+2)/8 != l with n={n}"))?;
        let cert = certificate_bound(&g, f.landmark("separator").unwrap()).map_err(e2s)?;
        let lower = cert.certificate().ok_or("separator is not a certificate")?.bound;
        rec.cert(format!("subdivided_k24({l})"), &g, lower);
        let upper = bfs_ecc(&g, f.witness.as_ref().unwrap().vertices()).ok_or("witness leaves graph disconnected")?;
        ensure(lower == l && upper == l, || format!("l={l}: certificate {lower}, witness ecc {upper}"))?;
        if l <= 2 {
            let pe = pe_exact(&g, CAP).map_err(e2s)?.pe;
            ensure(pe == l, || format!("l={l}: brute force pe {pe}"))?;
        }
    }
    Ok("l = 1..3, pe = l = (n+2)/8 (brute force l<=2, sandwich l=3)".into())
}

fn c3_kk2(rec: &mut Record) -> Outcome {
    for k in 1..=5 {
        let f = complete_bipartite(k, k + 2).map_err(e2s)?;
        let b = bip(&f);
        let g = b.to_graph();
        let sep: Vec<Vertex> = (0..k).collect();
        let cert = certificate_bound(&g, &sep).map_err(e2s)?;
        let c = cert.certificate().ok_or_else(|| format!("k={k}: X side is not a certificate"))?;
        ensure(c.components.len() == k + 2 && c.bound == 1, || format!("k={k}: {} components, bound {}", c.components.len(), c.bound))?;
        rec.cert(format!("K_{{{k},{}}}", k + 2), &g, c.bound);
        let p = dom_path_biconvex(b).map_err(e2s)?;
        let ecc = bfs_ecc(&g, p.vertices()).unwrap();
        rec.solver(format!("biconvex K_{{{k},{}}}", k + 2), &g, ecc);
        ensure(ecc == 1, || format!("k={k}: biconvex path {p} has ecc {ecc}"))?;
    }
    Ok("k = 1..5, certificate 1 and solver ecc 1".into())
}

fn c4_convex(rec: &mut Record) -> Outcome {
    let mut worst = 0;
    for seed in 0..200u64 {
        let n = 2 + (seed as usize % 39);
        let f = random_convex(n, seed).map_err(e2s)?;
        let b = bip(&f);
        validate_convex(b).map_err(|e| format!("seed {seed}: {e}"))?;
        let p = two_dom_path_convex(b).map_err(|e| format!("seed {seed}: {e}"))?;
        let g = b.to_graph();
        let ecc = bfs_ecc(&g, p.vertices()).unwrap();
        rec.solver(format!("convex seed {seed}"), &g, ecc);
        ensure(ecc <= 2, || format!("seed {seed}: ecc {ecc}"))?;
        worst = worst.max(ecc);
    }
    for k in 1..=3 {
        let f = convex_tight(k).map_err(e2s)?;
        let b = bip(&f);
        let g = b.to_graph();
        let p = two_dom_path_convex(b).map_err(e2s)?;
        let ecc = bfs_ecc(&g, p.vertices()).unwrap();
        rec.solver(format!("convex_tight({k})"), &g, ecc);
        ensure(ecc == 2, || format!("convex_tight({k}): solver ecc {ecc}"))?;
        let lower = certificate_bound(&g, f.landmark("separator").unwrap()).map_err(e2s)?;
        if let Some(c) = lower.certificate() {
            rec.cert(format!("convex_tight({k})"), &g, c.bound);
        }
    }
    Ok(format!("200 random instances, max ecc {worst}; convex_tight k=1..3 ecc 2"))
}

fn c5_classes(rec: &mut Record) -> Outcome {
    let mut worst = [0usize; 3];
    for seed in 0..200u64 {
        let n = 2 + (seed as usize % 39);
        let f = random_biconvex(n, seed).map_err(e2s)?;
        let b = bip(&f);
        validate_convex(b).and_then(|_| validate_convex_y(b)).map_err(|e| format!("biconvex seed {seed}: {e}"))?;
        let p = dom_path_biconvex(b).map_err(|e| format!("biconvex seed {seed}: {e}"))?;
        let g = b.to_graph();
        let ecc = bfs_ecc(&g, p.vertices()).unwrap();
        rec.solver(format!("biconvex seed {seed}"), &g, ecc);
        ensure(ecc <= 1, || format!("biconvex seed {seed}: ecc {ecc}"))?;
        worst[0] = worst[0].max(ecc);

        let f = random_bpg(n, seed).map_err(e2s)?;
        let b = bip(&f);
        validate_strong(b).map_err(|e| format!("bpg seed {seed}: {e}"))?;
        let p = dom_path_bpg(b).map_err(|e| format!("bpg seed {seed}: {e}"))?;
        let g = b.to_graph();
        let ecc = bfs_ecc(&g, p.vertices()).unwrap();
        rec.solver(format!("bpg seed {seed}"), &g, ecc);
        ensure(ecc <= 1, || format!("bpg seed {seed}: ecc {ecc}"))?;
        worst[1] = worst[1].max(ecc);

        let f = random_interval(n, 3 * n as i64, seed).map_err(e2s)?;
        let Instance::Intervals(fam) = &f.instance else { unreachable!() };
        let order = interval_order(fam).map_err(e2s)?;
        check_numbering(&order.graph, &order.order).map_err(|e| format!("interval seed {seed}: {e}"))?;
        let p = dom_path_interval(&order.graph, &order.order).map_err(|e| format!("interval seed {seed}: {e}"))?;
        let ecc = bfs_ecc(&order.graph, p.vertices()).unwrap();
        rec.solver(format!("interval seed {seed}"), &order.graph, ecc);
        ensure(ecc <= 1, || format!("interval seed {seed}: ecc {ecc}"))?;
        worst[2] = worst[2].max(ecc);
    }
    Ok(format!("200 each, max ecc biconvex {} / bpg {} / interval {}", worst[0], worst[1], worst[2]))
}

fn c6_h_family(rec: &mut Record) -> Outcome {
    for (k, l) in [(3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (2, 2)] {
        let f = h_family(k, l).map_err(e2s)?;
        let g = f.graph();
        let expected = (k + 2) * ((l - 1) * k + 1) + k;
        ensure(g.n() == expected, || format!("H^{k}_{l}: {} vertices, expected {expected}", g.n()))?;
        let cert = certificate_bound(&g, f.landmark("base").unwrap()).map_err(e2s)?;
        let lower = cert.certificate().ok_or_else(|| format!("H^{k}_{l}: base is not a certificate"))?.bound;
        rec.cert(format!("H^{k}_{l}"), &g, lower);
        let upper = bfs_ecc(&g, f.witness.as_ref().unwrap().vertices()).unwrap();
        ensure(lower == l && upper == l, || format!("H^{k}_{l}: certificate {lower}, witness {upper}"))?;
    }
    // Tight cases: k = 3 for l <= 3, k = 4 for l <= 2, k >= 5 only l = 1.
    for k in 3..=12u64 {
        let limit = match k {
            3 => 3,
            4 => 2,
            _ => 1,
        };
        for l in 1..=20u64 {
            let holds = tightness_inequality(k, l);
            ensure(holds == (l <= limit), || format!("inequality at k={k}, l={l} gives {holds}"))?;
            // Same answer from the vertex count: floor((n + k)/(3k + 2)) = l.
            let n = (k + 2) * ((l - 1) * k + 1) + k;
            let b = bound_kconn(n as usize, k as usize).map_err(e2s)?;
            ensure((b < int(l as usize + 1)) == holds, || format!("bound {b} disagrees with the inequality at k={k}, l={l}"))?;
        }
    }
    Ok("six (k,l) pairs sandwiched at l; case table k=3:l<=3, k=4:l<=2, k>=5:l=1".into())
}

fn c7_diameter() -> Outcome {
    for k in 2..=5 {
        for l in 1..=5 {
            let g = p_family(k, l).map_err(e2s)?.graph();
            let d = diameter(&g);
            ensure(d == Distance::Finite(l), || format!("P^{k}_{l}: diameter {d}"))?;
        }
    }
    Ok("k = 2..5, l = 1..5".into())
}

fn c8_sweep(rec: &mut Record) -> Outcome {
    let (mut kconn, mut dom, mut maximal) = (0, 0, 0u64);
    for seed in 0..500u64 {
        let n = 4 + (seed as usize % 9);
        let p = [0.25, 0.35, 0.45, 0.55][(seed / 9 % 4) as usize];
        let g = random_connected(n, p, seed).map_err(e2s)?.graph();
        let pe = pe_exact(&g, CAP).map_err(e2s)?;
        rec.solver(format!("sweep seed {seed} witness"), &g, bfs_ecc(&g, pe.witness.vertices()).unwrap());
        let pe = pe.pe;
        ensure(int(pe) <= bound_general(n).unwrap(), || format!("seed {seed}: pe {pe} > (n-1)/3"))?;
        let kappa = vertex_connectivity(&g).map_err(e2s)?;
        if kappa < 2 {
            continue;
        }
        kconn += 1;
        if 5 * kappa as i64 > n as i64 - 4 {
            dom += 1;
            ensure(pe <= 1, || format!("seed {seed}: kappa {kappa} > (n-4)/5 but pe {pe}"))?;
        }
        let b = bound_kconn(n, kappa).unwrap();
        ensure(int(pe) <= b, || format!("seed {seed}: pe {pe} > {b}"))?;
        let longest = longest_paths(&g, Budget::new(CAP)).map_err(e2s)?;
        let lb = bound_longest_kconn(longest.length, kappa);
        for path in &longest.paths {
            let e = bfs_ecc(&g, path.vertices()).unwrap();
            ensure(int(e) <= lb, || format!("seed {seed}: longest path {path} ecc {e} > {lb}"))?;
        }
        let mut bad = None;
        visit_maximal_paths(&g, CAP, |vs| {
            maximal += 1;
            let e = bfs_ecc(&g, vs).unwrap();
            let bound = bound_path_kconn(n, vs.len() - 1, kappa).unwrap();
            if int(e) > bound {
                bad = Some(format!("seed {seed}: maximal path {vs:?} ecc {e} > {bound}"));
                return false;
            }
            true
        })
        .map_err(e2s)?;
        if let Some(msg) = bad {
            return Err(msg);
        }
    }
    Ok(format!("500 graphs, {kconn} with kappa>=2, {dom} under the domination corollary, {maximal} maximal paths, zero violations"))
}

fn c9_property1() -> Outcome {
    for seed in 0..500u64 {
        let n = 1 + (seed as usize % 14);
        let g = random_tree(n, seed).map_err(e2s)?.graph();
        let v = property1_check(&g, Budget::new(CAP)).map_err(e2s)?;
        ensure(v.holds(), || format!("tree seed {seed}: {v:?}"))?;
    }
    for seed in 0..200u64 {
        let n = 2 + (seed as usize % 11);
        let g = random_bpg(n, seed).map_err(e2s)?.graph();
        let v = property1_check(&g, Budget::new(CAP)).map_err(e2s)?;
        ensure(v.holds(), || format!("bpg seed {seed}: {v:?}"))?;
    }
    for k in 3..=4 {
        let g = interval_counterexample(k).map_err(e2s)?.graph();
        match property1_check(&g, Budget::new(CAP)).map_err(e2s)? {
            Property1Verdict::Fails { pe: 1, witness_ecc, .. } if witness_ecc == k - 1 => {}
            other => return Err(format!("interval_counterexample({k}): {other:?}")),
        }
        let report = longest_paths(&g, Budget::new(CAP)).map_err(e2s)?;
        ensure(report.ecc_min == k - 1 && report.ecc_max == k - 1, || format!("k={k}: longest eccs {}..{}", report.ecc_min, report.ecc_max))?;
    }
    Ok("holds on 500 trees and 200 BPGs; fails on the interval family k=3,4 with ecc k-1, pe 1".into())
}

fn c10_trees() -> Outcome {
    for seed in 0..500u64 {
        let n = 1 + (seed as usize % 14);
        let g = random_tree(n, seed).map_err(e2s)?.graph();
        let star = min_length_central_path_tree(&g).map_err(|e| format!("seed {seed}: {e}"))?;
        let c = centers(&g).ok_or("tree reported disconnected")?;
        ensure(c.iter().all(|&v| star.contains(v)), || format!("seed {seed}: {star} misses a center of {c:?}"))?;
        let longest = longest_paths(&g, Budget::new(CAP)).map_err(e2s)?;
        for p in &longest.paths {
            ensure(star.vertices().iter().all(|&v| p.contains(v)), || format!("seed {seed}: {star} not inside longest path {p}"))?;
        }
    }
    Ok("500 trees: unique minimum central path, contains centers, inside every longest path".into())
}

fn c11_dominance(rec: &Record) -> Outcome {
    let mut checked = 0;
    let mut cache: Vec<(Graph, usize)> = Vec::new();
    let mut pe_of = |g: &Graph| -> Result<usize, String> {
        if let Some((_, pe)) = cache.iter().find(|(h, _)| h == g) {
            return Ok(*pe);
        }
        let pe = if g.is_tree() { pe_tree(g) } else { pe_exact(g, CAP) }.map_err(e2s)?.pe;
        cache.push((g.clone(), pe));
        Ok(pe)
    };
    for (what, g, ecc) in &rec.solver {
        if g.n() > CAP && !g.is_tree() {
            continue;
        }
        let pe = pe_of(g)?;
        ensure(pe <= *ecc, || format!("{what}: solver ecc {ecc} below pe {pe}"))?;
        checked += 1;
    }
    for (what, g, bound) in &rec.certs {
        if g.n() > CAP && !g.is_tree() {
            continue;
        }
        let pe = pe_of(g)?;
        ensure(*bound <= pe, || format!("{what}: certificate {bound} above pe {pe}"))?;
        checked += 1;
    }
    let total = rec.solver.len() + rec.certs.len();
    Ok(format!("{checked} of {total} recorded instances within budget, none violate"))
}

fn c12_roundtrip() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut files = 0;
    for entry in fs::read_dir(&dir).map_err(e2s)? {
        let path = entry.map_err(e2s)?.path();
        let text = fs::read_to_string(&path).map_err(e2s)?;
        let doc = parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        ensure(serialize(&doc) == text, || format!("{} is not reproduced byte for byte", path.display()))?;
        files += 1;
    }
    let sample: &[(&str, &[&str])] = &[
        ("spider", &["3"]),
        ("subdivided_k24", &["3"]),
        ("convex_tight", &["3"]),
        ("p_family", &["3", "4"]),
        ("h_family", &["3", "2"]),
        ("interval_counterexample", &["5"]),
        ("complete_bipartite", &["3", "5"]),
        ("random_tree", &["12"]),
        ("random_connected", &["10", "0.3"]),
        ("random_interval", &["15", "40"]),
        ("random_bpg", &["20"]),
        ("random_convex", &["20"]),
        ("random_biconvex", &["20"]),
    ];
    ensure(sample.len() == FAMILIES.len(), || "a family is missing from the determinism sample".into())?;
    for (name, args) in sample {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let a = serialize_family(&generate(name, &args, Some(7)).map_err(e2s)?);
        let b = serialize_family(&generate(name, &args, Some(7)).map_err(e2s)?);
        ensure(a == b, || format!("{name} is not deterministic"))?;
        let doc = parse(&a).map_err(|e| format!("{name}: {e}"))?;
        ensure(a.ends_with(&serialize(&doc)), || format!("{name}: output does not reparse to itself"))?;
    }
    Ok(format!("{files} fixtures round-trip; all {} families regenerate byte-identically", FAMILIES.len()))
}

fn main() -> ExitCode {
    let mut rec = Record::default();
    let start = Instant::now();
    let mut failed = 0;
    let mut report = |id: usize, name: &str, out: Outcome| match out {
        Ok(detail) => println!("PASS {id:>2} {name}: {detail}"),
        Err(why) => {
            failed += 1;
            println!("FAIL {id:>2} {name}: {why}");
        }
    };
    report(1, "tight general bound", c1_spider());
    report(2, "tight 2-connected bound", c2_k24(&mut rec));
    report(3, "complete bipartite K_{k,k+2}", c3_kk2(&mut rec));
    report(4, "convex class", c4_convex(&mut rec));
    report(5, "biconvex / bpg / interval classes", c5_classes(&mut rec));
    report(6, "H family", c6_h_family(&mut rec));
    report(7, "P family diameter", c7_diameter());
    report(8, "bound sweep", c8_sweep(&mut rec));
    report(9, "longest vs central", c9_property1());
    report(10, "tree structure", c10_trees());
    report(11, "oracle dominance", c11_dominance(&rec));
    report(12, "round trip and determinism", c12_roundtrip());
    println!("{} of 12 criteria passed in {:.1}s", 12 - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
