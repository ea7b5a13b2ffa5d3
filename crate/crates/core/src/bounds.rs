//! Lower-bound certificates from separators and checkers for the upper bounds
//! on path eccentricity in general and k-connected graphs. All bounds are
//! exact rationals.

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::{longest_paths, pe_exact, pe_tree, Budget, ExactError};
use crate::graph::{components_after_removal, ecc_of_set, fan_paths_unchecked, multi_source_bfs, vertex_connectivity, Graph, GraphError, Vertex, VertexPath};

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("bound needs n >= 1")]
    EmptyGraph,
    #[error("connectivity parameter must be at least {min}, got {k}")]
    BadK { k: usize, min: usize },
    #[error("graph is {kappa}-connected, but k = {k} was claimed")]
    NotKConnected { kappa: usize, k: usize },
}

pub(crate) fn ser_ratio<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_opt_ratio<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

fn int(v: usize) -> Rational {
    Rational::from_integer(v as i64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentEcc {
    pub component: Vec<Vertex>,
    pub ecc: usize,
}

/// Separator `S` whose removal leaves at least `|S| + 2` components; then
/// `pe(G)` is at least the smallest component eccentricity relative to `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub separator: Vec<Vertex>,
    pub components: Vec<ComponentEcc>,
    pub bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum CertificateOutcome {
    Certificate(Certificate),
    NotACertificate { components: usize, required: usize },
}

impl CertificateOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            CertificateOutcome::Certificate(c) => Some(c),
            CertificateOutcome::NotACertificate { .. } => None,
        }
    }
}

pub fn certificate_bound(g: &Graph, s: &[Vertex]) -> Result<CertificateOutcome, BoundsError> {
    if !g.is_connected() {
        return Err(BoundsError::Disconnected);
    }
    let mut separator = s.to_vec();
    separator.sort_unstable();
    separator.dedup();
    let comps = components_after_removal(g, &separator)?;
    let required = separator.len() + 2;
    if comps.len() < required {
        return Ok(CertificateOutcome::NotACertificate { components: comps.len(), required });
    }
    let field = multi_source_bfs(g, &separator)?;
    let components: Vec<ComponentEcc> = comps
        .into_iter()
        .map(|component| {
            let ecc = component.iter().filter_map(|&u| field.dist[u].finite()).max().unwrap_or(0);
            ComponentEcc { component, ecc }
        })
        .collect();
    let bound = components.iter().map(|c| c.ecc).min().expect("at least two components");
    Ok(CertificateOutcome::Certificate(Certificate { separator, components, bound }))
}

/// `(n - 1) / 3`.
pub fn bound_general(n: usize) -> Result<Rational, BoundsError> {
    if n == 0 {
        return Err(BoundsError::EmptyGraph);
    }
    Ok(ratio(n as i64 - 1, 3))
}

/// `(n + k) / (3k + 2)` for `k ≥ 2`.
pub fn bound_kconn(n: usize, k: usize) -> Result<Rational, BoundsError> {
    if k < 2 {
        return Err(BoundsError::BadK { k, min: 2 });
    }
    Ok(ratio((n + k) as i64, 3 * k as i64 + 2))
}

/// `(n - |P| + k - 2) / k`, the bound for any path of a k-connected graph.
pub fn bound_path_kconn(n: usize, path_len: usize, k: usize) -> Result<Rational, BoundsError> {
    if k < 1 {
        return Err(BoundsError::BadK { k, min: 1 });
    }
    Ok(ratio(n as i64 - path_len as i64 + k as i64 - 2, k as i64))
}

/// `(L + 2) / (2k + 2)`, the bound for a longest path of a k-connected graph.
pub fn bound_longest_kconn(length: usize, k: usize) -> Rational {
    ratio(length as i64 + 2, 2 * k as i64 + 2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub measured: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub bound: Rational,
    pub holds: bool,
}

impl BoundCheck {
    fn new(measured: usize, bound: Rational) -> Self {
        BoundCheck { measured, bound, holds: int(measured) <= bound }
    }
}

fn path_ecc(g: &Graph, p: &[Vertex]) -> Result<usize, BoundsError> {
    ecc_of_set(g, p)?.finite().ok_or(BoundsError::Disconnected)
}

/// Checks `ecc(P) ≤ (n − |P| + k − 2)/k`. The caller vouches for `κ(g) ≥ k`.
pub fn check_path_bound_kconn(g: &Graph, k: usize, p: &[Vertex]) -> Result<BoundCheck, BoundsError> {
    let path = VertexPath::new(g, p.to_vec())?;
    Ok(BoundCheck::new(path_ecc(g, p)?, bound_path_kconn(g.n(), path.len(), k)?))
}

/// The fan inequalities re-derived on one longest path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanCheck {
    pub path: VertexPath,
    pub off_path: Vertex,
    /// Fan paths ordered by where they land on `path`, counted from its first vertex.
    pub fan: Vec<VertexPath>,
    pub ends_hold: bool,
    pub gaps_hold: bool,
    pub chain_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LongestBoundCheck {
    pub k: usize,
    pub kappa: usize,
    pub length: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub bound: Rational,
    pub ecc_max: usize,
    pub holds: bool,
    pub fan: Option<FanCheck>,
}

/// Checks `ecc(P) ≤ (L + 2)/(2k + 2)` for every longest path and replays the
/// fan argument on the first longest path from its smallest off-path vertex.
pub fn check_longest_bound_kconn(g: &Graph, k: usize, budget: Budget) -> Result<LongestBoundCheck, BoundsError> {
    if k < 2 {
        return Err(BoundsError::BadK { k, min: 2 });
    }
    if g.n() > budget.max_vertices {
        return Err(ExactError::TooLarge { n: g.n(), cap: budget.max_vertices }.into());
    }
    let kappa = vertex_connectivity(g)?;
    if kappa < k {
        return Err(BoundsError::NotKConnected { kappa, k });
    }
    let report = longest_paths(g, budget)?;
    let bound = bound_longest_kconn(report.length, k);
    let fan = fan_check(g, k, &report.paths[0])?;
    Ok(LongestBoundCheck {
        k,
        kappa,
        length: report.length,
        bound,
        ecc_max: report.ecc_max,
        holds: int(report.ecc_max) <= bound,
        fan,
    })
}

fn fan_check(g: &Graph, k: usize, path: &VertexPath) -> Result<Option<FanCheck>, BoundsError> {
    let Some(x) = (0..g.n()).find(|&v| !path.contains(v)) else {
        return Ok(None);
    };
    let mut fan = fan_paths_unchecked(g, x, path.vertices(), k)?;
    fan.sort_by_key(|q| path.position(q.last()).expect("fan ends on the path"));
    let q: Vec<usize> = fan.iter().map(VertexPath::len).collect();
    let pos: Vec<usize> = fan.iter().map(|f| path.position(f.last()).expect("on path")).collect();
    let last = path.len();
    let (q1, qk) = (q[0], q[k - 1]);
    let ends_hold = pos[0] + 1 >= q1 + qk && last - pos[k - 1] + 1 >= q1 + qk;
    let gaps_hold = (0..k - 1).all(|i| pos[i + 1] - pos[i] >= q[i] + q[i + 1]);
    let chain_holds = last + 2 >= 2 * q.iter().sum::<usize>() + q1 + qk;
    Ok(Some(FanCheck { path: path.clone(), off_path: x, fan, ends_hold, gaps_hold, chain_holds }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominationCheck {
    pub n: usize,
    pub kappa: Option<usize>,
    /// Whether `κ > (n − 4)/5`, so a dominating path must exist.
    pub applies: bool,
    pub pe: Option<usize>,
    pub holds: bool,
}

/// If `κ ≥ 2` and `5κ > n − 4` then `pe ≤ 1`. Graphs with fewer than two vertices are vacuous.
pub fn check_domination_corollary(g: &Graph, cap: usize) -> Result<DominationCheck, BoundsError> {
    let n = g.n();
    if n < 2 {
        return Ok(DominationCheck { n, kappa: None, applies: false, pe: None, holds: true });
    }
    let kappa = vertex_connectivity(g)?;
    // Inherits k >= 2 from the k-connected bound; spider(1) (n = 7, κ = 1, pe 2)
    // shows the inequality alone is not enough.
    let applies = kappa >= 2 && 5 * kappa as i64 > n as i64 - 4;
    if !applies {
        return Ok(DominationCheck { n, kappa: Some(kappa), applies, pe: None, holds: true });
    }
    let pe = pe_exact(g, cap)?.pe;
    Ok(DominationCheck { n, kappa: Some(kappa), applies, pe: Some(pe), holds: pe <= 1 })
}

/// `ℓk + 2(ℓ + k) − (ℓ − 1)k² > 0`, evaluated exactly.
pub fn tightness_inequality(k: u64, l: u64) -> bool {
    let (k, l) = (k as i128, l as i128);
    l * k + 2 * (l + k) - (l - 1) * k * k > 0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Tight,
    Holds,
    Violated,
}

impl Verdict {
    pub fn of(measured: usize, bound: Rational) -> Self {
        let m = int(measured);
        if m == bound {
            Verdict::Tight
        } else if m < bound {
            Verdict::Holds
        } else {
            Verdict::Violated
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub kappa: Option<usize>,
    pub k: Option<usize>,
    pub pe: Option<usize>,
    pub witness: Option<VertexPath>,
    #[serde(serialize_with = "ser_ratio")]
    pub general: Rational,
    pub general_verdict: Option<Verdict>,
    #[serde(serialize_with = "ser_opt_ratio")]
    pub kconn: Option<Rational>,
    pub kconn_verdict: Option<Verdict>,
    pub longest: Option<LongestBoundCheck>,
}

/// Every bound that applies to `g`, with `pe` measured when it fits the budget
/// (trees of any size go through the tree routine).
pub fn bound_report(g: &Graph, k: Option<usize>, budget: Budget) -> Result<BoundReport, BoundsError> {
    let n = g.n();
    if !g.is_connected() {
        return Err(BoundsError::Disconnected);
    }
    let general = bound_general(n)?;
    let kappa = if n >= 2 { Some(vertex_connectivity(g)?) } else { None };
    if let (Some(k), Some(kappa)) = (k, kappa) {
        if k > kappa {
            return Err(BoundsError::NotKConnected { kappa, k });
        }
    }
    let k = k.or(kappa);
    let measured = if g.is_tree() {
        Some(pe_tree(g)?)
    } else if n <= budget.max_vertices {
        Some(pe_exact(g, budget.max_vertices)?)
    } else {
        None
    };
    let pe = measured.as_ref().map(|r| r.pe);
    let kconn = match k {
        Some(k) if k >= 2 => Some(bound_kconn(n, k)?),
        _ => None,
    };
    let longest = match k {
        Some(k) if k >= 2 && n <= budget.max_vertices => Some(check_longest_bound_kconn(g, k, budget)?),
        _ => None,
    };
    Ok(BoundReport {
        n,
        kappa,
        k,
        pe,
        witness: measured.map(|r| r.witness),
        general,
        general_verdict: pe.map(|p| Verdict::of(p, general)),
        kconn,
        kconn_verdict: pe.zip(kconn).map(|(p, b)| Verdict::of(p, b)),
        longest,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioRecord {
    pub seed: u64,
    pub n: usize,
    pub kappa: usize,
    pub pe: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub bound: Rational,
    #[serde(serialize_with = "ser_ratio")]
    pub ratio: Rational,
}

/// Search hook: over the given graphs (tagged by seed) with `κ ≥ 2`, the one
/// maximizing `pe / ((n + κ)/(3κ + 2))`. Reports, claims nothing.
pub fn max_bound_ratio<'a, I>(graphs: I, cap: usize) -> Result<Option<RatioRecord>, BoundsError>
where
    I: IntoIterator<Item = (u64, &'a Graph)>,
{
    let mut best: Option<RatioRecord> = None;
    for (seed, g) in graphs {
        if g.n() < 2 || !g.is_connected() {
            continue;
        }
        let kappa = vertex_connectivity(g)?;
        if kappa < 2 {
            continue;
        }
        let pe = pe_exact(g, cap)?.pe;
        let bound = bound_kconn(g.n(), kappa)?;
        let r = int(pe) / bound;
        if best.as_ref().is_none_or(|b| r > b.ratio) {
            best = Some(RatioRecord { seed, n: g.n(), kappa, pe, bound, ratio: r });
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::subdivide;

    #[test]
    fn certificates() {
        let k24 = Graph::complete_bipartite(2, 4);
        let c = certificate_bound(&k24, &[0, 1]).unwrap();
        let c = c.certificate().unwrap();
        assert_eq!((c.components.len(), c.bound), (4, 1));
        let sub = subdivide(&k24, 1);
        let c = certificate_bound(&sub, &[0, 1]).unwrap();
        let c = c.certificate().unwrap();
        assert_eq!(c.bound, 2);
        assert!(c.components.iter().all(|comp| comp.component.len() == 3));
        assert_eq!(certificate_bound(&Graph::path(4), &[1]).unwrap(), CertificateOutcome::NotACertificate { components: 2, required: 3 });
    }

    #[test]
    fn rational_bounds() {
        assert_eq!(bound_general(7).unwrap(), int(2));
        assert_eq!(bound_general(4).unwrap(), int(1));
        assert_eq!(bound_general(9).unwrap().to_string(), "8/3");
        assert_eq!(bound_kconn(6, 2).unwrap(), int(1));
        assert_eq!(bound_kconn(6, 1), Err(BoundsError::BadK { k: 1, min: 2 }));
    }

    #[test]
    fn path_bound() {
        let k24 = Graph::complete_bipartite(2, 4);
        let c = check_path_bound_kconn(&k24, 2, &[0]).unwrap();
        assert_eq!((c.measured, c.bound, c.holds), (2, int(3), true));
        let p = Graph::path(5);
        let c = check_path_bound_kconn(&p, 1, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!((c.measured, c.bound), (0, int(0)));
        assert!(check_path_bound_kconn(&p, 1, &[0, 2]).is_err());
    }

    #[test]
    fn longest_bound() {
        let c6 = check_longest_bound_kconn(&Graph::cycle(6), 2, Budget::default()).unwrap();
        assert_eq!((c6.length, c6.bound, c6.ecc_max, c6.holds), (5, ratio(7, 6), 0, true));
        assert!(c6.fan.is_none());
        let k24 = check_longest_bound_kconn(&Graph::complete_bipartite(2, 4), 2, Budget::default()).unwrap();
        assert_eq!(k24.length, 4);
        assert!(k24.holds);
        let fan = k24.fan.unwrap();
        assert!(fan.ends_hold && fan.gaps_hold && fan.chain_holds);
        assert_eq!(check_longest_bound_kconn(&Graph::path(4), 2, Budget::default()), Err(BoundsError::NotKConnected { kappa: 1, k: 2 }));
    }

    #[test]
    fn domination() {
        let k4 = check_domination_corollary(&Graph::complete(4), 16).unwrap();
        assert_eq!((k4.applies, k4.pe, k4.holds), (true, Some(0), true));
        let k24 = check_domination_corollary(&Graph::complete_bipartite(2, 4), 16).unwrap();
        assert_eq!((k24.kappa, k24.applies, k24.pe), (Some(2), true, Some(1)));
        assert!(check_domination_corollary(&Graph::empty(1), 16).unwrap().holds);
        let spider = crate::families::spider(1).graph();
        assert!(!check_domination_corollary(&spider, 16).unwrap().applies);
    }

    #[test]
    fn tightness_table() {
        assert_eq!((1..=6).filter(|&l| tightness_inequality(3, l)).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!((1..=6).filter(|&l| tightness_inequality(4, l)).collect::<Vec<_>>(), vec![1, 2]);
        assert!(tightness_inequality(5, 1) && !tightness_inequality(5, 2));
    }

    #[test]
    fn report_on_spider() {
        let spider = subdivide(&Graph::complete_bipartite(1, 3), 1);
        let r = bound_report(&spider, None, Budget::default()).unwrap();
        assert_eq!((r.general, r.pe, r.general_verdict), (int(2), Some(2), Some(Verdict::Tight)));
        assert!(r.kconn.is_none());
    }
}
