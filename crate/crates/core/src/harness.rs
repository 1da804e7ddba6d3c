//! Theorem sweeps: build every instance in a parameter range, compare the
//! closed form, the exact solver, and the explicit construction, and collect
//! the verdicts into a [`Report`].
//!
//! Instances run in parallel; rows come back in generation order, so two runs
//! of the same sweep serialize identically.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{
    resolving_complete_constant, resolving_complete_general, resolving_cycle_constant, resolving_cycle_general,
    resolving_cycle_permutation, resolving_path_identity, ConstructionResult,
};
use crate::error::{input, Error, Result};
use crate::formulas::{
    self, dim_classical, dim_functi_complete, dim_functi_cycle_constant, dim_tree, functi_dim_bounds, BoundPair,
    ClassicalFamily, FunctiContext,
};
use crate::functigraph::{
    build_functigraph, build_two_clique_bridge, dihedral_maps, enumerate_functions, FunctionFilter, FunctionKind,
    VertexFunction,
};
use crate::graph::generators::{complete, cycle, path, random_tree, spider, wheel};
use crate::graph::Graph;
use crate::resolver::{metric_dimension_exact, Budget};

/// Largest order [`iso_dedup`] accepts.
pub const ISO_ORDER_CAP: usize = 12;
/// Largest base order for exhaustive function sweeps.
pub const EXHAUSTIVE_CAP: usize = 6;
/// Largest base order for solver-backed sweeps (composed order `2n`).
pub const SOLVER_BASE_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "T4_bounds")]
    T4Bounds,
    #[serde(rename = "T5_tree")]
    T5Tree,
    #[serde(rename = "T8_complete_constant")]
    T8CompleteConstant,
    #[serde(rename = "T9_complete_general")]
    T9CompleteGeneral,
    #[serde(rename = "T10_cycle_constant")]
    T10CycleConstant,
    #[serde(rename = "T11_cycle_general")]
    T11CycleGeneral,
    Prism,
    Wheel,
    TwoClique,
    CompletePermutation,
    CyclePermutation,
    #[serde(rename = "L1_lemma_witness")]
    L1LemmaWitness,
    #[serde(rename = "Fig4_six_classes")]
    Fig4SixClasses,
    #[serde(rename = "R1_tree_gap")]
    R1TreeGap,
}

impl TheoremId {
    pub const ALL: [TheoremId; 14] = [
        TheoremId::T4Bounds,
        TheoremId::T5Tree,
        TheoremId::T8CompleteConstant,
        TheoremId::T9CompleteGeneral,
        TheoremId::T10CycleConstant,
        TheoremId::T11CycleGeneral,
        TheoremId::Prism,
        TheoremId::Wheel,
        TheoremId::TwoClique,
        TheoremId::CompletePermutation,
        TheoremId::CyclePermutation,
        TheoremId::L1LemmaWitness,
        TheoremId::Fig4SixClasses,
        TheoremId::R1TreeGap,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            TheoremId::T4Bounds => "T4_bounds",
            TheoremId::T5Tree => "T5_tree",
            TheoremId::T8CompleteConstant => "T8_complete_constant",
            TheoremId::T9CompleteGeneral => "T9_complete_general",
            TheoremId::T10CycleConstant => "T10_cycle_constant",
            TheoremId::T11CycleGeneral => "T11_cycle_general",
            TheoremId::Prism => "Prism",
            TheoremId::Wheel => "Wheel",
            TheoremId::TwoClique => "TwoClique",
            TheoremId::CompletePermutation => "CompletePermutation",
            TheoremId::CyclePermutation => "CyclePermutation",
            TheoremId::L1LemmaWitness => "L1_lemma_witness",
            TheoremId::Fig4SixClasses => "Fig4_six_classes",
            TheoremId::R1TreeGap => "R1_tree_gap",
        }
    }

    /// Smallest meaningful range start.
    fn min_param(self) -> usize {
        match self {
            TheoremId::T5Tree => 4,
            TheoremId::L1LemmaWitness => 6,
            _ => 3,
        }
    }

    /// Default parameter range used by the CLI when none is given.
    pub fn default_range(self) -> (usize, usize) {
        match self {
            TheoremId::T4Bounds | TheoremId::T8CompleteConstant | TheoremId::CompletePermutation => (3, 6),
            TheoremId::T9CompleteGeneral => (3, 5),
            TheoremId::T10CycleConstant => (3, 14),
            TheoremId::T11CycleGeneral | TheoremId::CyclePermutation => (3, 6),
            TheoremId::T5Tree => (4, 12),
            TheoremId::Prism => (3, 12),
            TheoremId::Wheel => (3, 10),
            TheoremId::TwoClique => (3, 6),
            TheoremId::L1LemmaWitness => (6, 14),
            TheoremId::Fig4SixClasses => (4, 4),
            TheoremId::R1TreeGap => (6, 6),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let known: Vec<_> = TheoremId::ALL.iter().map(|id| id.tag()).collect();
                Error::Input(format!("unknown theorem id {s:?}; expected one of {}", known.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    /// Symmetry-reduced: one function per preimage-size partition on `K_n`,
    /// one per relabeling orbit on `C_n`.
    #[default]
    Default,
    /// Every function individually.
    Exhaustive,
    /// `count` random instances per parameter value.
    Sample { count: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub lo: usize,
    pub hi: usize,
    pub mode: SweepMode,
    pub budget: Budget,
}

impl SweepConfig {
    pub fn range(lo: usize, hi: usize) -> Self {
        Self {
            lo,
            hi,
            mode: SweepMode::Default,
            budget: Budget::default(),
        }
    }

    pub fn with_mode(mut self, mode: SweepMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub instance: String,
    pub formula_lower: Option<usize>,
    pub formula_upper: Option<usize>,
    pub solver: Option<usize>,
    pub construction: Option<usize>,
    pub verdict: Verdict,
    /// Counterexample on failure, skip reason, or extra observations.
    pub details: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub theorem: TheoremId,
    pub range: (usize, usize),
    pub mode: SweepMode,
    pub rows: Vec<ReportRow>,
    pub summary: Summary,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    fn new(theorem: TheoremId, config: &SweepConfig, rows: Vec<ReportRow>, elapsed: Duration) -> Self {
        let mut summary = Summary::default();
        for row in &rows {
            match row.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::Skipped => summary.skipped += 1,
            }
        }
        Self {
            theorem,
            range: (config.lo, config.hi),
            mode: config.mode,
            rows,
            summary,
            elapsed,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    /// Every row passed; nothing failed or was skipped.
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.skipped == 0 && !self.rows.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            writer
                .serialize(row)
                .map_err(|e| Error::Internal(format!("csv encoding failed: {e}")))?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| Error::Internal(format!("csv encoding failed: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_table(&self) -> String {
        let formula = |r: &ReportRow| match (r.formula_lower, r.formula_upper) {
            (Some(a), Some(b)) if a == b => a.to_string(),
            (Some(a), Some(b)) => format!("{a}..{b}"),
            _ => "-".into(),
        };
        let opt = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
        let width = self.rows.iter().map(|r| r.instance.len()).max().unwrap_or(8).max(8);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} range {}..{} ({:?})",
            self.theorem, self.range.0, self.range.1, self.mode
        );
        let _ = writeln!(
            out,
            "{:<width$}  {:>8}  {:>6}  {:>12}  verdict",
            "instance", "formula", "solver", "construction"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<width$}  {:>8}  {:>6}  {:>12}  {}",
                r.instance,
                formula(r),
                opt(r.solver),
                opt(r.construction),
                r.verdict
            );
            if r.verdict != Verdict::Pass && !r.details.is_empty() {
                let _ = writeln!(out, "    {}", r.details);
            }
        }
        let _ = writeln!(
            out,
            "summary: {} pass, {} fail, {} skipped",
            self.summary.pass, self.summary.fail, self.summary.skipped
        );
        out
    }
}

#[derive(Debug, Clone, Copy)]
enum Expectation {
    Exact(usize),
    Bounds(BoundPair),
}

impl Expectation {
    fn bounds(self) -> BoundPair {
        match self {
            Expectation::Exact(v) => BoundPair { lower: v, upper: v },
            Expectation::Bounds(b) => b,
        }
    }
}

#[derive(Debug, Clone)]
enum Construct {
    PathIdentity(usize),
    CompleteConstant,
    CompleteGeneral,
    CyclePermutation,
    CycleConstant,
    CycleGeneral,
    TreeFormula,
}

#[derive(Debug, Clone)]
enum Extra {
    None,
    /// Also run the construction on every function in the orbit.
    Orbit(Vec<VertexFunction>),
    /// Sandwich check `dim(G) <= solver <= dim(G) + 1`.
    Sandwich(usize),
    Neighborhood,
}

#[derive(Debug, Clone)]
struct Instance {
    key: String,
    graph: Graph,
    func: Option<VertexFunction>,
    expected: Expectation,
    construct: Option<Construct>,
    extra: Extra,
}

impl Instance {
    fn functi(base: &Graph, f: &VertexFunction, expected: Expectation, construct: Option<Construct>) -> Result<Self> {
        let fg = build_functigraph(base, f)?;
        Ok(Self {
            key: fg.graph().name().unwrap_or_default().to_string(),
            graph: fg.into_graph(),
            func: Some(f.clone()),
            expected,
            construct,
            extra: Extra::None,
        })
    }

    fn plain(graph: Graph, expected: Expectation) -> Self {
        Self {
            key: graph.name().unwrap_or("G").to_string(),
            graph,
            func: None,
            expected,
            construct: None,
            extra: Extra::None,
        }
    }

    fn with_extra(mut self, extra: Extra) -> Self {
        self.extra = extra;
        self
    }

    fn with_key(mut self, key: String) -> Self {
        self.key = key;
        self
    }

    fn build_construction(&self, f: Option<&VertexFunction>) -> Option<Result<ConstructionResult>> {
        let construct = self.construct.as_ref()?;
        Some(match (construct, f) {
            (Construct::PathIdentity(n), _) => resolving_path_identity(*n),
            (Construct::CompleteConstant, Some(f)) => resolving_complete_constant(f),
            (Construct::CompleteGeneral, Some(f)) => resolving_complete_general(f),
            (Construct::CyclePermutation, Some(f)) => resolving_cycle_permutation(f),
            (Construct::CycleConstant, Some(f)) => resolving_cycle_constant(f),
            (Construct::CycleGeneral, Some(f)) => resolving_cycle_general(f),
            (Construct::TreeFormula, _) => dim_tree(&self.graph).map(|(r, _)| ConstructionResult {
                labels: r.witness.iter().map(|v| v.to_string()).collect(),
                claimed_size: r.dimension,
                base_order: self.graph.order(),
                source: "tree_terminals".into(),
                set: r.witness,
            }),
            (_, None) => Err(Error::Internal("construction needs a function".into())),
        })
    }

    fn evaluate(&self, budget: Budget) -> ReportRow {
        let bounds = self.expected.bounds();
        let exact = matches!(self.expected, Expectation::Exact(_));
        let mut problems: Vec<String> = Vec::new();
        let mut notes: Vec<String> = Vec::new();
        let mut skipped = None;

        let solved = match metric_dimension_exact(&self.graph, budget) {
            Ok(r) => Some(r),
            Err(Error::BudgetExhausted(b)) => {
                skipped = Some(format!(
                    "solver budget exhausted after {} nodes; dimension in [{}, {}]",
                    b.nodes, b.lower, b.upper
                ));
                None
            }
            Err(e) => {
                problems.push(format!("solver error: {e}"));
                None
            }
        };
        let solver = solved.as_ref().map(|r| r.dimension);
        if let Some(v) = solver {
            if !bounds.contains(v) {
                problems.push(format!("solver {v} outside expected {}..={}", bounds.lower, bounds.upper));
            }
        }

        let mut construction = None;
        if let Some(built) = self.build_construction(self.func.as_ref()) {
            match built {
                Ok(c) => {
                    construction = Some(c.set.len());
                    match c.verify(&self.graph) {
                        Ok(true) => {}
                        Ok(false) => problems.push(format!("construction {:?} is not resolving", c.labels)),
                        Err(e) => problems.push(format!("construction check error: {e}")),
                    }
                    let size_ok = if exact {
                        c.set.len() == bounds.upper
                    } else {
                        c.set.len() <= bounds.upper
                    };
                    if !size_ok {
                        problems.push(format!("construction size {} vs expected {}", c.set.len(), bounds.upper));
                    }
                }
                Err(e) => problems.push(format!("construction error: {e}")),
            }
        }

        match &self.extra {
            Extra::None => {}
            Extra::Orbit(members) => {
                let n = self.graph.order() / 2;
                let base = cycle(n).expect("orbit sweeps are over cycles");
                let mut bad = Vec::new();
                for f in members {
                    let ok = build_functigraph(&base, f).and_then(|fg| {
                        let c = self.build_construction(Some(f)).expect("orbit rows carry a construction")?;
                        Ok(c.set.len() <= bounds.upper && c.verify(fg.graph())?)
                    });
                    if !matches!(ok, Ok(true)) {
                        bad.push(f.to_literal());
                    }
                }
                notes.push(format!("orbit of {} functions", members.len()));
                if !bad.is_empty() {
                    problems.push(format!("construction fails for orbit members {}", bad.join(" ")));
                }
            }
            Extra::Sandwich(dim_g) => {
                let sandwich = formulas::prism_sandwich(*dim_g);
                if let Some(v) = solver.filter(|v| !sandwich.contains(*v)) {
                    problems.push(format!("solver {v} outside [dim(G), dim(G)+1] = [{}, {}]", sandwich.lower, sandwich.upper));
                }
            }
            Extra::Neighborhood => {
                if let Some(r) = &solved {
                    match lemma1_violation(&self.graph, &r.witness) {
                        Some(msg) => problems.push(msg),
                        None => notes.push(format!("witness {:?}", r.witness)),
                    }
                }
            }
        }

        let (verdict, details) = if !problems.is_empty() {
            let mut details = problems.join("; ");
            let _ = write!(
                details,
                " | graph {} edges [{}]",
                self.key,
                self.graph
                    .edges()
                    .iter()
                    .map(|(a, b)| format!("{a}-{b}"))
                    .collect::<Vec<_>>()
                    .join(",")
            );
            if let Some(f) = &self.func {
                let _ = write!(details, " f={}", f.to_literal());
            }
            let _ = write!(details, " expected {}..={} got {solver:?}", bounds.lower, bounds.upper);
            (Verdict::Fail, details)
        } else if let Some(reason) = skipped {
            (Verdict::Skipped, reason)
        } else {
            (Verdict::Pass, notes.join("; "))
        };

        ReportRow {
            instance: self.key.clone(),
            formula_lower: Some(bounds.lower),
            formula_upper: Some(bounds.upper),
            solver,
            construction,
            verdict,
            details,
        }
    }
}

/// Checks the neighborhood structure of a minimum resolving set `s` of
/// `C(C_n, f_0)`: at most one first-copy vertex lies outside `N[S]`, and if
/// one does on an even cycle then `S` has at least two second-copy vertices.
/// Returns a description of the violation, if any.
pub fn lemma1_violation(composed: &Graph, s: &[usize]) -> Option<String> {
    let n = composed.order() / 2;
    let outside: Vec<usize> = (0..n)
        .filter(|&u| !s.iter().any(|&x| x == u || composed.has_edge(u, x)))
        .collect();
    if outside.len() > 1 {
        return Some(format!("{} first-copy vertices outside N[S]: {outside:?}", outside.len()));
    }
    let in_second = s.iter().filter(|&&x| x >= n).count();
    if outside.len() == 1 && n.is_multiple_of(2) && in_second < 2 {
        return Some(format!("one vertex outside N[S] on an even cycle but |S ∩ G2| = {in_second}"));
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClass {
    /// Index into the input of the first graph seen in this class.
    pub representative: usize,
    pub members: Vec<usize>,
}

/// Groups graphs into isomorphism classes by exhaustive search, pruned by
/// degree sequences, distance multisets and per-vertex distance profiles.
pub fn iso_dedup(graphs: &[Graph], cap: usize) -> Result<Vec<IsoClass>> {
    if let Some((i, g)) = graphs.iter().enumerate().find(|(_, g)| g.order() > cap) {
        return Err(Error::Resource(format!(
            "graph #{i} has order {} above the isomorphism cap {cap}",
            g.order()
        )));
    }
    let profiles: Vec<IsoProfile> = graphs.iter().map(IsoProfile::new).collect();
    let mut classes: Vec<IsoClass> = Vec::new();
    for (i, p) in profiles.iter().enumerate() {
        match classes.iter_mut().find(|c| profiles[c.representative].isomorphic(p)) {
            Some(class) => class.members.push(i),
            None => classes.push(IsoClass {
                representative: i,
                members: vec![i],
            }),
        }
    }
    Ok(classes)
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    IsoProfile::new(a).isomorphic(&IsoProfile::new(b))
}

struct IsoProfile {
    order: usize,
    size: usize,
    degrees: Vec<usize>,
    multiset: Vec<Option<usize>>,
    dist: Vec<Vec<Option<usize>>>,
    /// Per-vertex invariant: degree and sorted distance row.
    vertex_keys: Vec<(usize, Vec<usize>)>,
}

impl IsoProfile {
    fn new(g: &Graph) -> Self {
        let d = g.distances();
        let n = g.order();
        let dist: Vec<Vec<Option<usize>>> = (0..n).map(|u| (0..n).map(|v| d.get(u, v)).collect()).collect();
        let vertex_keys = (0..n)
            .map(|v| {
                let mut row: Vec<usize> = dist[v].iter().map(|x| x.unwrap_or(usize::MAX)).collect();
                row.sort_unstable();
                (g.degree(v), row)
            })
            .collect();
        Self {
            order: n,
            size: g.size(),
            degrees: g.degree_sequence(),
            multiset: d.distance_multiset(),
            dist,
            vertex_keys,
        }
    }

    fn isomorphic(&self, other: &IsoProfile) -> bool {
        if self.order != other.order
            || self.size != other.size
            || self.degrees != other.degrees
            || self.multiset != other.multiset
        {
            return false;
        }
        let mut mapping = vec![usize::MAX; self.order];
        let mut used = vec![false; self.order];
        self.extend(other, 0, &mut mapping, &mut used)
    }

    fn extend(&self, other: &IsoProfile, x: usize, mapping: &mut [usize], used: &mut [bool]) -> bool {
        if x == self.order {
            return true;
        }
        for y in 0..other.order {
            if used[y] || self.vertex_keys[x] != other.vertex_keys[y] {
                continue;
            }
            if (0..x).any(|p| self.dist[x][p] != other.dist[y][mapping[p]]) {
                continue;
            }
            mapping[x] = y;
            used[y] = true;
            if self.extend(other, x + 1, mapping, used) {
                return true;
            }
            used[y] = false;
        }
        mapping[x] = usize::MAX;
        false
    }
}

/// Partitions of `n` into exactly `parts` positive parts, non-increasing.
fn partitions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, parts: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            if rest - p < parts - 1 {
                continue;
            }
            prefix.push(p);
            go(rest - p, parts - 1, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, parts, n, &mut Vec::new(), &mut out);
    out
}

/// `f` sending contiguous blocks of sizes `parts` onto `v_1, v_2, ...`.
fn block_function(parts: &[usize]) -> VertexFunction {
    let images = parts.iter().enumerate().flat_map(|(j, &k)| std::iter::repeat_n(j, k)).collect();
    VertexFunction::new(images).expect("blocks stay in range")
}

fn random_function(n: usize, kind: FunctionKind, rng: &mut ChaCha8Rng) -> VertexFunction {
    loop {
        let f = match kind {
            FunctionKind::Permutation => {
                let mut images: Vec<usize> = (0..n).collect();
                images.shuffle(rng);
                VertexFunction::new(images)
            }
            _ => VertexFunction::new((0..n).map(|_| rng.gen_range(0..n)).collect()),
        }
        .expect("images in range");
        if f.classify().kind == kind {
            return f;
        }
    }
}

/// Groups functions on `C_n` by relabelings of both copies (rotations and
/// reflections applied independently), which preserve `C(C_n, f)` up to
/// isomorphism. Keys are the lexicographically least orbit member.
pub fn cycle_function_orbits(
    functions: impl IntoIterator<Item = VertexFunction>,
    n: usize,
) -> BTreeMap<VertexFunction, Vec<VertexFunction>> {
    let maps = dihedral_maps(n);
    let mut orbits: BTreeMap<VertexFunction, Vec<VertexFunction>> = BTreeMap::new();
    for f in functions {
        let key = maps
            .iter()
            .flat_map(|g| maps.iter().map(|h| f.conjugate(g, h)))
            .min()
            .expect("dihedral group is non-empty");
        orbits.entry(key).or_default().push(f);
    }
    orbits
}

fn rng_for(seed: u64, n: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

const DEFAULT_SAMPLE_SEED: u64 = 2024;
const DEFAULT_RANDOM_PERMUTATIONS: usize = 10;
const DEFAULT_TREES_PER_ORDER: usize = 10;

fn check_range(id: TheoremId, config: &SweepConfig, cap: usize, what: &str) -> Result<()> {
    if config.lo > config.hi {
        return input(format!("empty range {}..{}", config.lo, config.hi));
    }
    if config.lo < id.min_param() {
        return input(format!("{id} needs parameters >= {}, got {}", id.min_param(), config.lo));
    }
    if config.hi > cap {
        let first = config.lo.max(cap + 1);
        return Err(Error::Resource(format!(
            "{id}: instance n={first} exceeds the {what} cap n <= {cap}"
        )));
    }
    Ok(())
}

fn instances(id: TheoremId, config: &SweepConfig) -> Result<Vec<Instance>> {
    let range = config.lo..=config.hi;
    let mut out = Vec::new();
    match id {
        TheoremId::T4Bounds => {
            check_range(id, config, SOLVER_BASE_CAP, "solver")?;
            for n in range {
                let general = functi_dim_bounds(FunctiContext::General { n })?.bounds();
                let id_f = VertexFunction::identity(n);
                out.push(Instance::functi(
                    &path(n)?,
                    &id_f,
                    Expectation::Exact(general.lower),
                    Some(Construct::PathIdentity(n)),
                )?);
                out.push(Instance::functi(
                    &complete(n)?,
                    &VertexFunction::constant(n, 0)?,
                    Expectation::Exact(general.upper),
                    Some(Construct::CompleteConstant),
                )?);
            }
        }
        TheoremId::T8CompleteConstant => {
            check_range(id, config, SOLVER_BASE_CAP, "solver")?;
            for n in range {
                let f = VertexFunction::constant(n, 0)?;
                let expected = dim_functi_complete(n, &f)?;
                out.push(Instance::functi(
                    &complete(n)?,
                    &f,
                    Expectation::Exact(expected),
                    Some(Construct::CompleteConstant),
                )?);
            }
        }
        TheoremId::T9CompleteGeneral => {
            let cap = match config.mode {
                SweepMode::Exhaustive => EXHAUSTIVE_CAP,
                _ => SOLVER_BASE_CAP,
            };
            check_range(id, config, cap, "function sweep")?;
            for n in range {
                let k = complete(n)?;
                let functions: Vec<VertexFunction> = match config.mode {
                    SweepMode::Default => (2..n).flat_map(|s| partitions(n, s)).map(|p| block_function(&p)).collect(),
                    SweepMode::Exhaustive => enumerate_functions(n, FunctionFilter::kind(FunctionKind::General))?.collect(),
                    SweepMode::Sample { count, seed } => {
                        let mut rng = rng_for(seed, n);
                        (0..count).map(|_| random_function(n, FunctionKind::General, &mut rng)).collect()
                    }
                };
                for f in functions {
                    let expected = dim_functi_complete(n, &f)?;
                    out.push(Instance::functi(&k, &f, Expectation::Exact(expected), Some(Construct::CompleteGeneral))?);
                }
            }
        }
        TheoremId::T10CycleConstant => {
            check_range(id, config, SOLVER_BASE_CAP, "solver")?;
            for n in range {
                let f = VertexFunction::constant(n, 0)?;
                out.push(Instance::functi(
                    &cycle(n)?,
                    &f,
                    Expectation::Exact(dim_functi_cycle_constant(n)?),
                    Some(Construct::CycleConstant),
                )?);
            }
        }
        TheoremId::T11CycleGeneral => {
            let cap = match config.mode {
                SweepMode::Sample { .. } => SOLVER_BASE_CAP,
                _ => EXHAUSTIVE_CAP,
            };
            check_range(id, config, cap, "function sweep")?;
            for n in range {
                let c = cycle(n)?;
                let general = || enumerate_functions(n, FunctionFilter::kind(FunctionKind::General));
                let mut push = |f: &VertexFunction, extra: Extra| -> Result<()> {
                    let s = f.image_size();
                    let bounds = functi_dim_bounds(FunctiContext::CycleGeneral { n, s })?.bounds();
                    out.push(
                        Instance::functi(&c, f, Expectation::Bounds(bounds), Some(Construct::CycleGeneral))?
                            .with_extra(extra),
                    );
                    Ok(())
                };
                match config.mode {
                    SweepMode::Default => {
                        for (rep, members) in cycle_function_orbits(general()?, n) {
                            push(&rep, Extra::Orbit(members))?;
                        }
                    }
                    SweepMode::Exhaustive => {
                        for f in general()? {
                            push(&f, Extra::None)?;
                        }
                    }
                    SweepMode::Sample { count, seed } => {
                        let mut rng = rng_for(seed, n);
                        for _ in 0..count {
                            push(&random_function(n, FunctionKind::General, &mut rng), Extra::None)?;
                        }
                    }
                }
            }
        }
        TheoremId::T5Tree => {
            check_range(id, config, 40, "tree order")?;
            let (count, seed) = match config.mode {
                SweepMode::Default => (DEFAULT_TREES_PER_ORDER, DEFAULT_SAMPLE_SEED),
                SweepMode::Sample { count, seed } => (count, seed),
                SweepMode::Exhaustive => return input("T5_tree sweeps random trees; use --sample"),
            };
            for n in range {
                let mut rng = rng_for(seed, n);
                let mut made = 0;
                while made < count {
                    let t = random_tree(n, &mut rng)?;
                    if (0..n).all(|v| t.degree(v) <= 2) {
                        continue;
                    }
                    let (formula, _) = dim_tree(&t)?;
                    let key = format!("tree n={n} #{made} [{}]", edge_list(&t));
                    let mut inst = Instance::plain(t, Expectation::Exact(formula.dimension)).with_key(key);
                    inst.construct = Some(Construct::TreeFormula);
                    out.push(inst);
                    made += 1;
                }
            }
        }
        TheoremId::Prism => {
            check_range(id, config, SOLVER_BASE_CAP, "solver")?;
            for n in range {
                let expected = dim_classical(ClassicalFamily::CyclePrism, n)?;
                let dim_cycle = dim_classical(ClassicalFamily::Cycle, n)?;
                out.push(
                    Instance::functi(&cycle(n)?, &VertexFunction::identity(n), Expectation::Exact(expected), None)?
                        .with_extra(Extra::Sandwich(dim_cycle)),
                );
            }
        }
        TheoremId::Wheel => {
            check_range(id, config, 2 * SOLVER_BASE_CAP, "solver")?;
            for n in range {
                let expected = dim_classical(ClassicalFamily::Wheel, n)?;
                out.push(Instance::plain(wheel(n)?, Expectation::Exact(expected)));
            }
        }
        TheoremId::TwoClique => {
            check_range(id, config, SOLVER_BASE_CAP, "solver")?;
            for m in range.clone() {
                for n in range.clone() {
                    let expected = functi_dim_bounds(FunctiContext::TwoClique { m, n })?.bounds().upper;
                    out.push(Instance::plain(build_two_clique_bridge(m, n)?, Expectation::Exact(expected)));
                }
            }
        }
        TheoremId::CompletePermutation | TheoremId::CyclePermutation => {
            let cap = match config.mode {
                SweepMode::Exhaustive => EXHAUSTIVE_CAP + 1,
                _ => SOLVER_BASE_CAP,
            };
            check_range(id, config, cap, "permutation sweep")?;
            for n in range {
                let perms: Vec<VertexFunction> = match config.mode {
                    SweepMode::Exhaustive => {
                        enumerate_functions(n, FunctionFilter::kind(FunctionKind::Permutation))?.collect()
                    }
                    SweepMode::Default | SweepMode::Sample { .. } => {
                        let (count, seed) = match config.mode {
                            SweepMode::Sample { count, seed } => (count, seed),
                            _ => (DEFAULT_RANDOM_PERMUTATIONS, DEFAULT_SAMPLE_SEED),
                        };
                        let mut rng = rng_for(seed, n);
                        std::iter::once(VertexFunction::identity(n))
                            .chain((0..count).map(|_| random_function(n, FunctionKind::Permutation, &mut rng)))
                            .collect()
                    }
                };
                for (i, f) in perms.iter().enumerate() {
                    let inst = if id == TheoremId::CompletePermutation {
                        let expected = dim_functi_complete(n, f)?;
                        Instance::functi(&complete(n)?, f, Expectation::Exact(expected), None)?
                    } else {
                        let bounds = functi_dim_bounds(FunctiContext::CyclePermutation { n })?.bounds();
                        Instance::functi(&cycle(n)?, f, Expectation::Bounds(bounds), Some(Construct::CyclePermutation))?
                    };
                    let key = format!("{} #{i}", inst.key);
                    out.push(inst.with_key(key));
                }
            }
        }
        TheoremId::L1LemmaWitness => {
            check_range(id, config, SOLVER_BASE_CAP, "solver")?;
            for n in range {
                let f = VertexFunction::constant(n, 0)?;
                out.push(
                    Instance::functi(&cycle(n)?, &f, Expectation::Exact(dim_functi_cycle_constant(n)?), None)?
                        .with_extra(Extra::Neighborhood),
                );
            }
        }
        TheoremId::Fig4SixClasses | TheoremId::R1TreeGap => {
            unreachable!("handled by dedicated sweeps")
        }
    }
    Ok(out)
}

fn edge_list(g: &Graph) -> String {
    g.edges()
        .iter()
        .map(|(a, b)| format!("{a}-{b}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// All `C(C_4, f)` with image size 2, grouped into isomorphism classes; each
/// class representative is checked against the bound `dim <= 4`.
fn fig4_rows(config: &SweepConfig) -> Result<Vec<ReportRow>> {
    let n = 4;
    let base = cycle(n)?;
    let functions: Vec<VertexFunction> = enumerate_functions(n, FunctionFilter::image_size(2))?.collect();
    let graphs = functions
        .iter()
        .map(|f| build_functigraph(&base, f).map(|fg| fg.into_graph()))
        .collect::<Result<Vec<_>>>()?;
    let classes = iso_dedup(&graphs, ISO_ORDER_CAP)?;
    let bounds = functi_dim_bounds(FunctiContext::CycleGeneral { n, s: 2 })?.bounds();
    let class_instances: Vec<Instance> = classes
        .iter()
        .enumerate()
        .map(|(k, class)| {
            let f = &functions[class.representative];
            Instance::functi(&base, f, Expectation::Bounds(bounds), Some(Construct::CycleGeneral))
                .map(|i| i.with_key(format!("class {} f={} ({} functions)", k + 1, f.to_literal(), class.members.len())))
        })
        .collect::<Result<_>>()?;
    let mut rows: Vec<ReportRow> = class_instances.par_iter().map(|i| i.evaluate(config.budget)).collect();
    let count_ok = classes.len() == 6;
    rows.push(ReportRow {
        instance: "isomorphism classes of C(C_4, f), s=2".into(),
        formula_lower: Some(6),
        formula_upper: Some(6),
        solver: None,
        construction: None,
        verdict: if count_ok { Verdict::Pass } else { Verdict::Fail },
        details: format!("{} classes over {} functions", classes.len(), functions.len()),
    });
    Ok(rows)
}

/// Demonstrates that `dim(C(G, f))` can drop below `dim(G)`: `G` is the
/// spider with six legs of length two (`dim = 5`), and a seeded random search
/// looks for an `f` with `dim(C(G, f)) <= 4`.
pub fn tree_gap_demo(budget: Budget) -> Result<(usize, VertexFunction, usize)> {
    let t = spider(6, 2)?;
    let (tree_dim, _) = dim_tree(&t)?;
    let n = t.order();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SAMPLE_SEED);
    let mut best: Option<(VertexFunction, usize)> = None;
    for _ in 0..64 {
        let f = VertexFunction::new((0..n).map(|_| rng.gen_range(0..n)).collect())?;
        let dim = metric_dimension_exact(build_functigraph(&t, &f)?.graph(), budget)?.dimension;
        if best.as_ref().is_none_or(|(_, d)| dim < *d) {
            best = Some((f, dim));
        }
    }
    let (f, dim) = best.expect("at least one candidate");
    Ok((tree_dim.dimension, f, dim))
}

fn r1_rows(config: &SweepConfig) -> Result<Vec<ReportRow>> {
    let t = spider(6, 2)?;
    let solver_tree = metric_dimension_exact(&t, config.budget)?.dimension;
    let (tree_dim, f, functi_dim) = tree_gap_demo(config.budget)?;
    let gap = tree_dim as isize - functi_dim as isize;
    let pass = solver_tree == tree_dim && functi_dim <= 4 && gap >= 1;
    Ok(vec![ReportRow {
        instance: "spider(6x2)".into(),
        formula_lower: Some(tree_dim),
        formula_upper: Some(tree_dim),
        solver: Some(solver_tree),
        construction: None,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        details: format!("dim(C(G, f)) = {functi_dim} for f={}; gap {gap}", f.to_literal()),
    }])
}

pub fn verify_theorem(id: TheoremId, config: SweepConfig) -> Result<Report> {
    let start = Instant::now();
    let rows = match id {
        TheoremId::Fig4SixClasses => fig4_rows(&config)?,
        TheoremId::R1TreeGap => r1_rows(&config)?,
        _ => {
            let instances = instances(id, &config)?;
            instances.par_iter().map(|i| i.evaluate(config.budget)).collect()
        }
    };
    Ok(Report::new(id, &config, rows, start.elapsed()))
}
