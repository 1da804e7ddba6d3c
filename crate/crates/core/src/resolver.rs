//! Metric codes, resolving sets, twin classes, and the exact metric
//! dimension solver.
//!
//! The solver treats metric dimension as a set cover problem. The universe
//! is the set of unordered vertex pairs; landmark `x` covers `{u, v}` when
//! `d(u, x) != d(v, x)`. Pair sets are bit vectors. Search order:
//!
//! 1. Every twin class contributes all members except its lowest index as
//!    forced landmarks. Swapping two twins is an automorphism, so some
//!    minimum resolving set contains them.
//! 2. A greedy cover gives the first incumbent.
//! 3. Depth-first branch and bound branches on the uncovered pair with the
//!    fewest available covering landmarks, trying them in decreasing order of
//!    new coverage. A tried landmark is excluded from its later siblings, so
//!    every subset is visited at most once.
//!
//! Ties are always broken by lowest index, which makes witnesses
//! reproducible for a fixed labeling.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{domain, input, Error, PartialBound, Result};
use crate::graph::{DistanceMatrix, Graph};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Largest order the solver accepts; candidate sets are `u128` masks.
pub const MAX_SOLVER_ORDER: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricCode {
    pub landmarks: Vec<usize>,
    pub entries: Vec<usize>,
}

pub fn metric_code(d: &DistanceMatrix, landmarks: &[usize], v: usize) -> Result<MetricCode> {
    let n = d.order();
    if v >= n || landmarks.iter().any(|&x| x >= n) {
        return input(format!("vertex index out of range for order {n}"));
    }
    let entries = landmarks
        .iter()
        .map(|&x| {
            d.get(v, x)
                .ok_or_else(|| Error::Domain(format!("vertex {v} cannot reach landmark {x}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MetricCode {
        landmarks: landmarks.to_vec(),
        entries,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    Resolving,
    /// The first pair `u < v` (in order of `v`, then `u`) with equal codes.
    Unresolved { u: usize, v: usize },
}

impl Resolution {
    pub fn is_resolving(self) -> bool {
        self == Resolution::Resolving
    }
}

/// Checks whether `landmarks` gives every vertex a distinct code.
pub fn is_resolving(d: &DistanceMatrix, landmarks: &[usize]) -> Result<Resolution> {
    if landmarks.is_empty() {
        return input("resolving-set check needs a non-empty landmark set");
    }
    let n = d.order();
    if landmarks.iter().any(|&x| x >= n) {
        return input(format!("landmark index out of range for order {n}"));
    }
    if !d.is_connected() {
        return domain("metric codes are undefined on a disconnected graph");
    }
    let mut seen: HashMap<Vec<u16>, usize> = HashMap::with_capacity(n);
    for v in 0..n {
        let code: Vec<u16> = landmarks.iter().map(|&x| d.row(x)[v]).collect();
        if let Some(&u) = seen.get(&code) {
            return Ok(Resolution::Unresolved { u, v });
        }
        seen.insert(code, v);
    }
    Ok(Resolution::Resolving)
}

/// Twin equivalence classes: `u ~ v` iff `N(u) - {v} = N(v) - {u}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinPartition {
    /// Each class ascending; classes ordered by their lowest member.
    pub classes: Vec<Vec<usize>>,
    /// Sum of `|class| - 1`: every resolving set has at least this many
    /// vertices.
    pub forced_lower_bound: usize,
}

impl TwinPartition {
    /// All members of every class except its lowest index.
    pub fn forced_landmarks(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.classes.iter().flat_map(|c| c[1..].iter().copied()).collect();
        out.sort_unstable();
        out
    }
}

pub fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    if u == v {
        return true;
    }
    let strip = |x: usize, other: usize| g.neighbors(x).iter().copied().filter(move |&w| w != other);
    strip(u, v).eq(strip(v, u))
}

/// Groups vertices into twin classes, then checks on this instance that the
/// relation is transitive (every pair inside a class is a twin pair).
pub fn twin_partition(g: &Graph) -> Result<TwinPartition> {
    let n = g.order();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            cur = std::mem::replace(&mut parent[cur], root);
        }
        root
    }
    for u in 0..n {
        for v in u + 1..n {
            if are_twins(g, u, v) {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                if ru != rv {
                    parent[ru.max(rv)] = ru.min(rv);
                }
            }
        }
    }
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        let r = find(&mut parent, v);
        by_root[r].push(v);
    }
    let classes: Vec<Vec<usize>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
    for class in &classes {
        for (i, &u) in class.iter().enumerate() {
            if let Some(&v) = class[i + 1..].iter().find(|&&v| !are_twins(g, u, v)) {
                return Err(Error::Internal(format!(
                    "twin relation is not transitive: {u} and {v} share a class but are not twins"
                )));
            }
        }
    }
    let forced_lower_bound = classes.iter().map(|c| c.len() - 1).sum();
    Ok(TwinPartition {
        classes,
        forced_lower_bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Formula,
    Construction,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionResult {
    pub dimension: usize,
    pub witness: Vec<usize>,
    pub method: Method,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_nodes: DEFAULT_NODE_BUDGET,
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Self { max_nodes }
    }
}

#[derive(Clone)]
struct PairSet {
    words: Vec<u64>,
}

impl PairSet {
    fn empty(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn insert(&mut self, p: usize) {
        self.words[p / 64] |= 1 << (p % 64);
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn intersection_count(&self, other: &PairSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn subtract(&mut self, other: &PairSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    i * 64 + bit
                })
            })
        })
    }
}

struct Search {
    /// Pairs resolved by each landmark.
    covers: Vec<PairSet>,
    /// Landmarks resolving each pair, as a vertex mask.
    resolvers: Vec<u128>,
    best: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
    exhausted: bool,
}

impl Search {
    fn lower_bound(&self, uncovered: &PairSet, available: u128) -> usize {
        if uncovered.is_empty() {
            return 0;
        }
        let total = uncovered.count();
        let best_cover = mask_iter(available)
            .map(|c| self.covers[c].intersection_count(uncovered))
            .max()
            .unwrap_or(0);
        if best_cover == 0 {
            usize::MAX
        } else {
            total.div_ceil(best_cover)
        }
    }

    fn dfs(&mut self, chosen: &mut Vec<usize>, uncovered: &PairSet, mut available: u128) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exhausted = true;
            return;
        }
        if uncovered.is_empty() {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
                self.best.sort_unstable();
            }
            return;
        }
        let lb = self.lower_bound(uncovered, available);
        if lb == usize::MAX || chosen.len() + lb >= self.best.len() {
            return;
        }
        // Most constrained uncovered pair; ties to the lowest pair index.
        let mut pivot = None;
        let mut fewest = u32::MAX;
        for p in uncovered.iter() {
            let options = (self.resolvers[p] & available).count_ones();
            if options < fewest {
                fewest = options;
                pivot = Some(p);
                if options <= 1 {
                    break;
                }
            }
        }
        let Some(pivot) = pivot else { return };
        if fewest == 0 {
            return;
        }
        let mut options: Vec<(usize, usize)> = mask_iter(self.resolvers[pivot] & available)
            .map(|c| (self.covers[c].intersection_count(uncovered), c))
            .collect();
        options.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, c) in options {
            let mut rest = uncovered.clone();
            rest.subtract(&self.covers[c]);
            available &= !(1u128 << c);
            chosen.push(c);
            self.dfs(chosen, &rest, available);
            chosen.pop();
            if self.exhausted {
                return;
            }
        }
    }
}

fn mask_iter(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let bit = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            bit
        })
    })
}

fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// Exact metric dimension with a minimum resolving set as witness.
///
/// Fails with [`Error::BudgetExhausted`] (carrying the best bounds found)
/// when the search would visit more than `budget.max_nodes` nodes.
pub fn metric_dimension_exact(g: &Graph, budget: Budget) -> Result<DimensionResult> {
    let start = Instant::now();
    let n = g.order();
    if n > MAX_SOLVER_ORDER {
        return Err(Error::Resource(format!(
            "exact solver accepts order <= {MAX_SOLVER_ORDER}, got {n}"
        )));
    }
    let d = g.distances();
    if !d.is_connected() {
        return domain("metric dimension is only defined here for connected graphs");
    }
    if n == 1 {
        return Ok(DimensionResult {
            dimension: 0,
            witness: Vec::new(),
            method: Method::Exact,
            stats: SearchStats {
                nodes: 0,
                elapsed: start.elapsed(),
            },
        });
    }

    let pairs = n * (n - 1) / 2;
    let mut covers = vec![PairSet::empty(pairs); n];
    let mut resolvers = vec![0u128; pairs];
    for (x, cover) in covers.iter_mut().enumerate() {
        let row = d.row(x);
        for u in 0..n {
            for v in u + 1..n {
                if row[u] != row[v] {
                    let p = pair_index(n, u, v);
                    cover.insert(p);
                    resolvers[p] |= 1 << x;
                }
            }
        }
    }

    let forced = twin_partition(g)?.forced_landmarks();
    let mut uncovered = PairSet::empty(pairs);
    for p in 0..pairs {
        uncovered.insert(p);
    }
    let mut available: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    for &x in &forced {
        uncovered.subtract(&covers[x]);
        available &= !(1u128 << x);
    }

    // Greedy incumbent.
    let mut greedy = forced.clone();
    let mut rest = uncovered.clone();
    let mut pool = available;
    while !rest.is_empty() {
        let pick = mask_iter(pool)
            .map(|c| (covers[c].intersection_count(&rest), c))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
            .filter(|&(gain, _)| gain > 0)
            .map(|(_, c)| c)
            .ok_or_else(|| Error::Internal("greedy cover stalled on a connected graph".into()))?;
        rest.subtract(&covers[pick]);
        pool &= !(1u128 << pick);
        greedy.push(pick);
    }
    greedy.sort_unstable();

    let mut search = Search {
        covers,
        resolvers,
        best: greedy,
        nodes: 0,
        max_nodes: budget.max_nodes,
        exhausted: false,
    };
    let root_lb = forced.len() + search.lower_bound(&uncovered, available);
    let mut chosen = forced.clone();
    search.dfs(&mut chosen, &uncovered, available);

    if search.exhausted {
        return Err(Error::BudgetExhausted(PartialBound {
            lower: root_lb.min(search.best.len()),
            upper: search.best.len(),
            best_witness: search.best,
            nodes: search.nodes,
        }));
    }
    let witness = search.best;
    if !is_resolving(&d, &witness)?.is_resolving() {
        return Err(Error::Internal("solver witness does not resolve the graph".into()));
    }
    Ok(DimensionResult {
        dimension: witness.len(),
        witness,
        method: Method::Exact,
        stats: SearchStats {
            nodes: search.nodes,
            elapsed: start.elapsed(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functigraph::{build_functigraph, VertexFunction};
    use crate::graph::generators::*;

    /// Smallest resolving subset by enumerating subsets in increasing size.
    fn brute_force(g: &Graph) -> usize {
        let d = g.distances();
        let n = g.order();
        if n == 1 {
            return 0;
        }
        (1..=n)
            .find(|&k| {
                (0u32..1 << n)
                    .filter(|m| m.count_ones() as usize == k)
                    .any(|m| {
                        let s: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
                        is_resolving(&d, &s).unwrap().is_resolving()
                    })
            })
            .unwrap()
    }

    fn solve(g: &Graph) -> DimensionResult {
        metric_dimension_exact(g, Budget::default()).unwrap()
    }

    #[test]
    fn metric_code_examples() {
        let c5 = cycle(5).unwrap().distances();
        assert_eq!(metric_code(&c5, &[0, 1], 3).unwrap().entries, vec![2, 2]);
        assert_eq!(metric_code(&c5, &[4, 2, 0], 2).unwrap().entries[1], 0);

        // C(C_3, f_0), landmarks (u_1, u_3, v_3), vertex v_1.
        let fg = build_functigraph(&cycle(3).unwrap(), &VertexFunction::constant(3, 0).unwrap()).unwrap();
        let d = fg.graph().distances();
        assert_eq!(metric_code(&d, &[0, 2, 5], 3).unwrap().entries, vec![1, 1, 1]);
        assert!(metric_code(&d, &[0, 6], 3).is_err());
    }

    #[test]
    fn is_resolving_examples() {
        let c4f0 = build_functigraph(&cycle(4).unwrap(), &VertexFunction::constant(4, 0).unwrap()).unwrap();
        assert!(is_resolving(&c4f0.graph().distances(), &[0, 1, 5]).unwrap().is_resolving());
        let c3f0 = build_functigraph(&cycle(3).unwrap(), &VertexFunction::constant(3, 0).unwrap()).unwrap();
        assert!(is_resolving(&c3f0.graph().distances(), &[0, 2, 5]).unwrap().is_resolving());
        for n in 3..9 {
            let d = cycle(n).unwrap().distances();
            for v in 0..n {
                assert!(!is_resolving(&d, &[v]).unwrap().is_resolving());
            }
        }
        let d = cycle(4).unwrap().distances();
        assert_eq!(is_resolving(&d, &[0]).unwrap(), Resolution::Unresolved { u: 1, v: 3 });
        assert!(matches!(is_resolving(&d, &[]), Err(Error::Input(_))));
        let disconnected = Graph::new(3, [(0, 1)]).unwrap().distances();
        assert!(matches!(is_resolving(&disconnected, &[0]), Err(Error::Domain(_))));
    }

    #[test]
    fn twin_examples() {
        let k5 = twin_partition(&complete(5).unwrap()).unwrap();
        assert_eq!(k5.classes, vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(k5.forced_lower_bound, 4);

        for n in 3..8 {
            let fg = build_functigraph(&complete(n).unwrap(), &VertexFunction::constant(n, 0).unwrap()).unwrap();
            let tp = twin_partition(fg.graph()).unwrap();
            let u: Vec<usize> = (0..n).collect();
            let v_rest: Vec<usize> = (n + 1..2 * n).collect();
            assert_eq!(tp.classes, vec![u, vec![n], v_rest]);
            assert_eq!(tp.forced_lower_bound, 2 * n - 3);
        }

        let c6 = twin_partition(&cycle(6).unwrap()).unwrap();
        assert_eq!(c6.classes.len(), 6);
        assert_eq!(c6.forced_lower_bound, 0);
        // C_4: opposite vertices share both neighbors.
        assert_eq!(twin_partition(&cycle(4).unwrap()).unwrap().classes, vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn solver_examples() {
        assert_eq!(solve(&path(7).unwrap()).dimension, 1);
        assert_eq!(solve(&complete(4).unwrap()).dimension, 3);
        let k4f0 = build_functigraph(&complete(4).unwrap(), &VertexFunction::constant(4, 0).unwrap()).unwrap();
        assert_eq!(solve(k4f0.graph()).dimension, 5);
        let prism5 = build_functigraph(&cycle(5).unwrap(), &VertexFunction::identity(5)).unwrap();
        assert_eq!(solve(prism5.graph()).dimension, 2);
        let prism4 = build_functigraph(&cycle(4).unwrap(), &VertexFunction::identity(4)).unwrap();
        assert_eq!(solve(prism4.graph()).dimension, 3);
        assert_eq!(solve(&wheel(6).unwrap()).dimension, 3);
        assert_eq!(solve(&path(1).unwrap()).dimension, 0);
    }

    #[test]
    fn solver_matches_brute_force_on_small_graphs() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..60 {
            let n = 2 + (rand::Rng::gen_range(&mut rng, 0..8));
            let g = random_connected(n, 0.35, &mut rng).unwrap();
            let r = solve(&g);
            assert_eq!(r.dimension, brute_force(&g), "{}", g.to_text());
            assert!(r.dimension >= twin_partition(&g).unwrap().forced_lower_bound);
        }
    }

    #[test]
    fn solver_errors() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(metric_dimension_exact(&g, Budget::default()), Err(Error::Domain(_))));
        let big = build_functigraph(&cycle(12).unwrap(), &VertexFunction::constant(12, 0).unwrap()).unwrap();
        match metric_dimension_exact(big.graph(), Budget::nodes(3)) {
            Err(Error::BudgetExhausted(b)) => {
                assert!(b.lower <= b.upper);
                assert_eq!(b.best_witness.len(), b.upper);
                assert!(is_resolving(&big.graph().distances(), &b.best_witness).unwrap().is_resolving());
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn solver_is_deterministic() {
        let fg = build_functigraph(&cycle(9).unwrap(), &VertexFunction::parse_literal("1,2,2,3,1,4,4,5,1").unwrap()).unwrap();
        let a = solve(fg.graph());
        let b = solve(fg.graph());
        assert_eq!((a.witness, a.stats.nodes), (b.witness, b.stats.nodes));
    }

    #[test]
    fn pair_index_is_dense() {
        let n = 7;
        let mut idx = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                idx.push(pair_index(n, u, v));
            }
        }
        assert_eq!(idx, (0..n * (n - 1) / 2).collect::<Vec<_>>());
    }
}
