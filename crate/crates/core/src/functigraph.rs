//! Functigraphs `C(G, f)`: two copies of `G` joined by the edges `u f(u)`.
//!
//! The composed graph has order `2n`. Indices `0..n` are the first copy
//! (`u_1..u_n` as `0..n`) and `n..2n` the second (`v_j` is `n + j - 1`).
//! A [`VertexFunction`] stores 0-based images; its text literal is 1-based,
//! e.g. `1,1,1` is the constant map onto `v_1` for `n = 3`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::graph::{generators, Graph};

/// Default cap on `n` for [`enumerate_functions`]; there are `n^n` maps.
pub const DEFAULT_ENUMERATION_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexFunction {
    images: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionKind {
    Permutation,
    Constant,
    General,
}

impl fmt::Display for FunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FunctionKind::Permutation => "permutation",
            FunctionKind::Constant => "constant",
            FunctionKind::General => "general",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionClass {
    pub kind: FunctionKind,
    pub image_size: usize,
}

impl VertexFunction {
    /// `images[i]` is the 0-based index of `f(u_{i+1})` in the second copy.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return input("function must have a non-empty domain");
        }
        if let Some(bad) = images.iter().find(|&&j| j >= n) {
            return input(format!("image index {bad} out of range for order {n}"));
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn constant(n: usize, target: usize) -> Result<Self> {
        Self::new(vec![target; n])
    }

    /// `u_{i+1} -> v_{(i + shift) mod n + 1}`.
    pub fn rotation(n: usize, shift: usize) -> Self {
        Self {
            images: (0..n).map(|i| (i + shift) % n).collect(),
        }
    }

    /// Parses a 1-based literal such as `1,2,2`.
    pub fn parse_literal(text: &str) -> Result<Self> {
        let images = text
            .trim()
            .split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(j) if j >= 1 => Ok(j - 1),
                _ => Err(Error::Input(format!("bad function entry {t:?}: expected a 1-based index"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }

    pub fn to_literal(&self) -> String {
        self.images
            .iter()
            .map(|j| (j + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Reads the function file format: one literal line, `#` comments ignored.
    pub fn parse_file(text: &str) -> Result<Self> {
        let line = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .ok_or_else(|| Error::Input("function file has no literal line".into()))?;
        Self::parse_literal(line)
    }

    pub fn to_file(&self) -> String {
        let class = self.classify();
        format!(
            "# kind: {}, image size {}\n{}\n",
            class.kind,
            class.image_size,
            self.to_literal()
        )
    }

    pub fn domain_order(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// f(V(G_1)), ascending.
    pub fn image(&self) -> Vec<usize> {
        self.images.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn image_size(&self) -> usize {
        self.image().len()
    }

    /// f^{-1}(v_{j+1}), ascending.
    pub fn preimage(&self, j: usize) -> Vec<usize> {
        (0..self.images.len()).filter(|&i| self.images[i] == j).collect()
    }

    /// `|f^{-1}(v_{j+1})|` for every `j`.
    pub fn preimage_sizes(&self) -> Vec<usize> {
        let mut counts = vec![0; self.images.len()];
        for &j in &self.images {
            counts[j] += 1;
        }
        counts
    }

    pub fn classify(&self) -> FunctionClass {
        let s = self.image_size();
        let kind = if s == self.images.len() {
            FunctionKind::Permutation
        } else if s == 1 {
            FunctionKind::Constant
        } else {
            FunctionKind::General
        };
        FunctionClass { kind, image_size: s }
    }

    /// `x -> outer(self(inner(x)))` for vertex permutations `inner` (domain)
    /// and `outer` (codomain).
    pub fn conjugate(&self, inner: &[usize], outer: &[usize]) -> Self {
        Self {
            images: inner.iter().map(|&x| outer[self.images[x]]).collect(),
        }
    }
}

pub fn classify_function(f: &VertexFunction) -> FunctionClass {
    f.classify()
}

/// The `2n` rotations and reflections of `C_n`, as vertex maps, identity first.
pub fn dihedral_maps(n: usize) -> Vec<Vec<usize>> {
    let mut maps = Vec::with_capacity(2 * n);
    for r in 0..n {
        maps.push((0..n).map(|i| (i + r) % n).collect());
    }
    for r in 0..n {
        maps.push((0..n).map(|i| (r + n - i) % n).collect());
    }
    maps
}

#[derive(Debug, Clone, Default)]
pub struct FunctionFilter {
    pub kind: Option<FunctionKind>,
    pub image_size: Option<usize>,
    /// Keep one function per orbit under rotations/reflections of the domain
    /// cycle (lexicographically least representative). Only sound when the
    /// base graph is `C_n`.
    pub cycle_domain_symmetry: bool,
}

impl FunctionFilter {
    pub fn kind(kind: FunctionKind) -> Self {
        Self {
            kind: Some(kind),
            ..Self::default()
        }
    }

    pub fn image_size(s: usize) -> Self {
        Self {
            image_size: Some(s),
            ..Self::default()
        }
    }

    fn accepts(&self, images: &[usize], symmetries: &[Vec<usize>]) -> bool {
        let f = VertexFunction {
            images: images.to_vec(),
        };
        let class = f.classify();
        if self.kind.is_some_and(|k| k != class.kind) {
            return false;
        }
        if self.image_size.is_some_and(|s| s != class.image_size) {
            return false;
        }
        symmetries
            .iter()
            .all(|g| g.iter().map(|&x| images[x]).cmp(images.iter().copied()).is_ge())
    }
}

/// Lexicographic odometer over `{0..n}^n`, filtered.
pub struct FunctionIter {
    n: usize,
    next: Option<Vec<usize>>,
    filter: FunctionFilter,
    symmetries: Vec<Vec<usize>>,
}

impl Iterator for FunctionIter {
    type Item = VertexFunction;

    fn next(&mut self) -> Option<VertexFunction> {
        loop {
            let current = self.next.take()?;
            let mut succ = current.clone();
            let mut pos = self.n;
            self.next = loop {
                if pos == 0 {
                    break None;
                }
                pos -= 1;
                succ[pos] += 1;
                if succ[pos] < self.n {
                    break Some(succ);
                }
                succ[pos] = 0;
            };
            if self.filter.accepts(&current, &self.symmetries) {
                return Some(VertexFunction { images: current });
            }
        }
    }
}

pub fn enumerate_functions(n: usize, filter: FunctionFilter) -> Result<FunctionIter> {
    enumerate_functions_capped(n, filter, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_functions_capped(n: usize, filter: FunctionFilter, cap: usize) -> Result<FunctionIter> {
    if n == 0 {
        return input("function enumeration needs n >= 1");
    }
    if n > cap {
        return Err(Error::Resource(format!(
            "enumerating {n}^{n} functions exceeds the enumeration cap n <= {cap}"
        )));
    }
    let symmetries = if filter.cycle_domain_symmetry && n >= 3 {
        dihedral_maps(n).split_off(1)
    } else {
        Vec::new()
    };
    Ok(FunctionIter {
        n,
        next: Some(vec![0; n]),
        filter,
        symmetries,
    })
}

#[derive(Debug, Clone)]
pub struct Functigraph {
    base: Graph,
    func: VertexFunction,
    composed: Graph,
}

impl Functigraph {
    pub fn new(base: &Graph, func: &VertexFunction) -> Result<Self> {
        let n = base.order();
        if func.domain_order() != n {
            return input(format!(
                "function has domain order {} but the base graph has order {n}",
                func.domain_order()
            ));
        }
        let edges = base
            .edges()
            .iter()
            .flat_map(|&(a, b)| [(a, b), (a + n, b + n)])
            .chain((0..n).map(|i| (i, n + func.apply(i))));
        let name = format!("C({}, {})", base.name().unwrap_or("G"), func.to_literal());
        let composed = Graph::new(2 * n, edges)?.with_name(name);
        Ok(Self {
            base: base.clone(),
            func: func.clone(),
            composed,
        })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn func(&self) -> &VertexFunction {
        &self.func
    }

    pub fn graph(&self) -> &Graph {
        &self.composed
    }

    pub fn into_graph(self) -> Graph {
        self.composed
    }

    pub fn base_order(&self) -> usize {
        self.base.order()
    }
}

pub fn build_functigraph(g: &Graph, f: &VertexFunction) -> Result<Functigraph> {
    Functigraph::new(g, f)
}

/// Paper-style label for a composed index: `u_i` for the first copy, `v_j`
/// for the second, both 1-based.
pub fn vertex_label(base_order: usize, index: usize) -> String {
    if index < base_order {
        format!("u_{}", index + 1)
    } else {
        format!("v_{}", index - base_order + 1)
    }
}

/// `K_m` on `0..m`, `K_n` on `m..m+n`, and every `K_m` vertex joined to `m`.
pub fn build_two_clique_bridge(m: usize, n: usize) -> Result<Graph> {
    if m < 3 || n < 3 {
        return input(format!("two-clique bridge needs m, n >= 3, got ({m}, {n})"));
    }
    let union = generators::disjoint_union(&generators::complete(m)?, &generators::complete(n)?)?;
    let bridge = (0..m).map(|i| (i, m));
    Ok(Graph::new(m + n, union.edges().iter().copied().chain(bridge))?.with_name(format!("bridge(K_{m}, K_{n})")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{complete, cycle, path};

    #[test]
    fn build_examples() {
        let c4 = build_functigraph(&path(2).unwrap(), &VertexFunction::identity(2)).unwrap();
        assert_eq!((c4.graph().order(), c4.graph().size()), (4, 4));
        assert!(c4.graph().degree_sequence().iter().all(|&d| d == 2));

        let k3 = build_functigraph(&complete(3).unwrap(), &VertexFunction::constant(3, 0).unwrap()).unwrap();
        assert_eq!((k3.graph().order(), k3.graph().size()), (6, 9));

        let cube = build_functigraph(&cycle(4).unwrap(), &VertexFunction::identity(4)).unwrap();
        assert_eq!((cube.graph().order(), cube.graph().size()), (8, 12));
        assert!(cube.graph().degree_sequence().iter().all(|&d| d == 3));
    }

    #[test]
    fn order_mismatch_is_rejected() {
        let err = build_functigraph(&cycle(4).unwrap(), &VertexFunction::identity(3));
        assert!(matches!(err, Err(Error::Input(_))));
    }

    #[test]
    fn classify_examples() {
        let c = VertexFunction::identity(5).classify();
        assert_eq!((c.kind, c.image_size), (FunctionKind::Permutation, 5));
        let c = VertexFunction::constant(4, 0).unwrap().classify();
        assert_eq!((c.kind, c.image_size), (FunctionKind::Constant, 1));
        // K_6 with preimage sizes (3, 2, 1) onto {v_1, v_2, v_3}
        let f = VertexFunction::parse_literal("1,1,1,2,2,3").unwrap();
        let c = f.classify();
        assert_eq!((c.kind, c.image_size), (FunctionKind::General, 3));
        assert_eq!(f.preimage(1), vec![3, 4]);
        assert_eq!(&f.preimage_sizes()[..3], &[3, 2, 1]);
    }

    #[test]
    fn literal_round_trip_and_errors() {
        let f = VertexFunction::parse_literal(" 2, 1 ,3").unwrap();
        assert_eq!(f.images(), &[1, 0, 2]);
        assert_eq!(f.to_literal(), "2,1,3");
        assert!(VertexFunction::parse_literal("0,1").is_err());
        assert!(VertexFunction::parse_literal("1,4,1").is_err());
        assert!(VertexFunction::parse_literal("1,,1").is_err());
        let file = f.to_file();
        assert!(file.starts_with("# kind: permutation"));
        assert_eq!(VertexFunction::parse_file(&file).unwrap(), f);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_functions(2, FunctionFilter::default()).unwrap().count(), 4);
        assert_eq!(
            enumerate_functions(3, FunctionFilter::kind(FunctionKind::Permutation)).unwrap().count(),
            6
        );
        // Brute-force count over all 256 maps of {0..4} to itself.
        let mut brute = 0;
        for code in 0..256usize {
            let imgs: BTreeSet<usize> = (0..4).map(|i| (code >> (2 * i)) & 3).collect();
            brute += usize::from(imgs.len() == 2);
        }
        assert_eq!(brute, 84);
        assert_eq!(enumerate_functions(4, FunctionFilter::image_size(2)).unwrap().count(), brute);
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let all: Vec<_> = enumerate_functions(3, FunctionFilter::default()).unwrap().collect();
        assert_eq!(all.len(), 27);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0].images(), &[0, 0, 0]);
        assert_eq!(all[26].images(), &[2, 2, 2]);
    }

    #[test]
    fn enumeration_cap() {
        assert!(matches!(
            enumerate_functions(9, FunctionFilter::default()),
            Err(Error::Resource(msg)) if msg.contains("n <= 8")
        ));
        assert!(enumerate_functions_capped(9, FunctionFilter::default(), 9).is_ok());
    }

    #[test]
    fn cycle_domain_symmetry_picks_orbit_representatives() {
        let filter = FunctionFilter {
            cycle_domain_symmetry: true,
            ..FunctionFilter::default()
        };
        let reps: Vec<_> = enumerate_functions(4, filter).unwrap().collect();
        // Every function is equivalent to exactly one representative.
        let maps = dihedral_maps(4);
        let id = vec![0, 1, 2, 3];
        for f in enumerate_functions(4, FunctionFilter::default()).unwrap() {
            let hits = reps
                .iter()
                .filter(|r| maps.iter().any(|g| f.conjugate(g, &id) == **r))
                .count();
            assert_eq!(hits, 1, "{}", f.to_literal());
        }
        // Burnside: (256 + 4 + 4 + 16 + 64 + 64 + 16 + 16) / 8 = 55
        assert_eq!(reps.len(), 55);
    }

    #[test]
    fn two_clique_bridge_examples() {
        let g = build_two_clique_bridge(3, 3).unwrap();
        assert_eq!((g.order(), g.size()), (6, 9));
        assert!(g.is_connected());
        assert!(build_two_clique_bridge(2, 3).is_err());
        assert!(build_two_clique_bridge(3, 2).is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(vertex_label(4, 0), "u_1");
        assert_eq!(vertex_label(4, 5), "v_2");
    }
}
