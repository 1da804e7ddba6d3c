//! Closed-form metric dimensions and bounds. Everything here is arithmetic
//! on parameters except [`dim_tree`], which reads the tree's structure.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{domain, input, Result};
use crate::functigraph::VertexFunction;
use crate::graph::Graph;
use crate::resolver::{DimensionResult, Method, SearchStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundPair {
    pub lower: usize,
    pub upper: usize,
}

impl BoundPair {
    fn new(lower: usize, upper: usize) -> Self {
        debug_assert!(lower <= upper);
        Self { lower, upper }
    }

    pub fn contains(&self, value: usize) -> bool {
        (self.lower..=self.upper).contains(&value)
    }
}

/// Order/diameter bounds: `lower` is the least `k >= 1` with `k + d^k >= n`,
/// `upper` is `n - d`.
pub fn chartrand_bounds(n: usize, d: usize) -> Result<BoundPair> {
    if n < 2 || d < 1 {
        return input(format!("need n >= 2 and d >= 1, got ({n}, {d})"));
    }
    if d >= n {
        return input(format!("diameter {d} is impossible for order {n}"));
    }
    let lower = (1..n)
        .find(|&k| {
            let power = (d as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
            (k as u128).saturating_add(power) >= n as u128
        })
        .unwrap_or(n - 1);
    Ok(BoundPair::new(lower, n - d))
}

/// Whether order `n`, diameter `d` and dimension `k` satisfy
/// `n <= (floor(2d/3) + 1)^k + k * sum_{i=1}^{ceil(d/3)} (2i - 1)^(k-1)`.
pub fn hernando_feasible(n: usize, d: usize, k: usize) -> Result<bool> {
    if d < 2 {
        return input(format!("the order bound needs diameter >= 2, got {d}"));
    }
    if k < 1 {
        return input("the order bound needs dimension >= 1");
    }
    let pow = |base: u128, exp: usize| base.checked_pow(exp as u32).unwrap_or(u128::MAX);
    let first = pow((2 * d / 3 + 1) as u128, k);
    let sum = (1..=d.div_ceil(3)).fold(0u128, |acc, i| acc.saturating_add(pow((2 * i - 1) as u128, k - 1)));
    let bound = first.saturating_add((k as u128).saturating_mul(sum));
    Ok(n as u128 <= bound)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicalFamily {
    Path,
    Complete,
    Cycle,
    Wheel,
    CyclePrism,
}

pub fn dim_classical(family: ClassicalFamily, n: usize) -> Result<usize> {
    use ClassicalFamily::*;
    let min = match family {
        Path | Complete => 2,
        Cycle | Wheel | CyclePrism => 3,
    };
    if n < min {
        return input(format!("{family:?} needs n >= {min}, got {n}"));
    }
    Ok(match family {
        Path => 1,
        Complete => n - 1,
        Cycle => 2,
        Wheel if n == 3 || n == 6 => 3,
        Wheel => (2 * n + 2) / 5,
        CyclePrism if n % 2 == 1 => 2,
        CyclePrism => 3,
    })
}

/// `dim(G) <= dim(G □ K_2) <= dim(G) + 1`.
pub fn prism_sandwich(dim_g: usize) -> BoundPair {
    BoundPair::new(dim_g, dim_g + 1)
}

/// `dim(K_n □ G) = n - 1` once `n >= 2 dim(G) + 1`.
pub fn dim_complete_cartesian(n: usize, dim_g: usize) -> Result<usize> {
    if n < 2 * dim_g + 1 {
        return input(format!("needs n >= 2*dim(G)+1 = {}, got {n}", 2 * dim_g + 1));
    }
    Ok(n - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeStructure {
    /// Vertices of degree at least three, ascending.
    pub major_vertices: Vec<usize>,
    /// Terminal degree of each major vertex (zero entries included).
    pub terminal_degree: BTreeMap<usize, usize>,
    /// End-vertices of each major vertex, ascending.
    pub terminals: BTreeMap<usize, Vec<usize>>,
    pub sigma: usize,
    pub ex: usize,
}

/// Major vertices and their terminal end-vertices. An end-vertex is
/// terminal for `v` only when it is strictly closer to `v` than to every
/// other major vertex.
pub fn tree_structure(t: &Graph) -> Result<TreeStructure> {
    let n = t.order();
    if t.size() + 1 != n || !t.is_connected() {
        return domain("graph is not a tree");
    }
    let d = t.distances();
    let major_vertices: Vec<usize> = (0..n).filter(|&v| t.degree(v) >= 3).collect();
    let mut terminals: BTreeMap<usize, Vec<usize>> = major_vertices.iter().map(|&v| (v, Vec::new())).collect();
    for leaf in (0..n).filter(|&v| t.degree(v) == 1) {
        let mut by_distance: Vec<(usize, usize)> = major_vertices
            .iter()
            .map(|&m| (d.get(leaf, m).expect("tree is connected"), m))
            .collect();
        by_distance.sort_unstable();
        match by_distance.as_slice() {
            [(_, m)] => terminals.get_mut(m).unwrap().push(leaf),
            [(d0, m), (d1, _), ..] if d0 < d1 => terminals.get_mut(m).unwrap().push(leaf),
            _ => {}
        }
    }
    let terminal_degree: BTreeMap<usize, usize> = terminals.iter().map(|(&v, l)| (v, l.len())).collect();
    let sigma = terminal_degree.values().sum();
    let ex = terminal_degree.values().filter(|&&c| c > 0).count();
    Ok(TreeStructure {
        major_vertices,
        terminal_degree,
        terminals,
        sigma,
        ex,
    })
}

/// `dim(T) = sigma(T) - ex(T)` for a tree that is not a path. The witness
/// takes every terminal vertex except the lowest-indexed one of each
/// exterior major vertex.
pub fn dim_tree(t: &Graph) -> Result<(DimensionResult, TreeStructure)> {
    let structure = tree_structure(t)?;
    if structure.major_vertices.is_empty() {
        return domain("tree is a path; use dim_classical(Path, n)");
    }
    let mut witness: Vec<usize> = structure
        .terminals
        .values()
        .flat_map(|leaves| leaves.iter().skip(1).copied())
        .collect();
    witness.sort_unstable();
    let result = DimensionResult {
        dimension: structure.sigma - structure.ex,
        witness,
        method: Method::Formula,
        stats: SearchStats {
            nodes: 0,
            elapsed: Duration::ZERO,
        },
    };
    Ok((result, structure))
}

/// `dim(C(K_n, f))`: `n - 1` for a permutation, otherwise `2n - 2 - s`
/// (which is `2n - 3` for a constant map).
pub fn dim_functi_complete(n: usize, f: &VertexFunction) -> Result<usize> {
    if n < 3 {
        return input(format!("complete functigraph formula needs n >= 3, got {n}"));
    }
    if f.domain_order() != n {
        return input(format!("function order {} does not match n = {n}", f.domain_order()));
    }
    let s = f.image_size();
    Ok(if s == n { n - 1 } else { 2 * n - 2 - s })
}

/// `dim(C(C_n, f_0))` for a constant map.
pub fn dim_functi_cycle_constant(n: usize) -> Result<usize> {
    if n < 3 {
        return input(format!("cycle functigraph formula needs n >= 3, got {n}"));
    }
    Ok(if n == 3 {
        3
    } else if n % 2 == 1 {
        (2 * n + 3).div_ceil(5)
    } else {
        (2 * n).div_ceil(5) + 1
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "context")]
pub enum FunctiContext {
    /// Any connected `G` of order `n` with any `f`.
    General { n: usize },
    /// `G = C_n`, image size `1 < s < n`.
    CycleGeneral { n: usize, s: usize },
    /// `G = C_n`, `f` a permutation.
    CyclePermutation { n: usize },
    /// `K_m` and `K_n` bridged through one vertex of `K_n`.
    TwoClique { m: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctiValue {
    Bounds(BoundPair),
    Exact(usize),
}

impl FunctiValue {
    pub fn bounds(self) -> BoundPair {
        match self {
            FunctiValue::Bounds(b) => b,
            FunctiValue::Exact(v) => BoundPair::new(v, v),
        }
    }
}

pub fn functi_dim_bounds(context: FunctiContext) -> Result<FunctiValue> {
    match context {
        FunctiContext::General { n } if n >= 3 => Ok(FunctiValue::Bounds(BoundPair::new(2, 2 * n - 3))),
        FunctiContext::CycleGeneral { n, s } if n >= 3 && 1 < s && s < n => {
            Ok(FunctiValue::Bounds(BoundPair::new(2, 2 * (n - 1) - s)))
        }
        FunctiContext::CyclePermutation { n } if n >= 3 => Ok(FunctiValue::Bounds(BoundPair::new(2, n - 1))),
        FunctiContext::TwoClique { m, n } if m >= 3 && n >= 3 => Ok(FunctiValue::Exact(m + n - 3)),
        other => input(format!("parameters out of range for {other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::{path, spider, star};
    use crate::resolver::is_resolving;

    #[test]
    fn chartrand_examples() {
        assert_eq!(chartrand_bounds(6, 3).unwrap(), BoundPair { lower: 2, upper: 3 });
        assert_eq!(chartrand_bounds(2, 1).unwrap(), BoundPair { lower: 1, upper: 1 });
        assert_eq!(chartrand_bounds(8, 2).unwrap(), BoundPair { lower: 3, upper: 6 });
        assert_eq!(chartrand_bounds(5, 1).unwrap(), BoundPair { lower: 4, upper: 4 });
        assert!(chartrand_bounds(4, 4).is_err());
        assert!(chartrand_bounds(1, 1).is_err());
    }

    #[test]
    fn chartrand_lower_matches_direct_search() {
        for n in 2..40usize {
            for d in 1..n {
                let direct = (1..).find(|&k: &u32| k as u128 + (d as u128).pow(k) >= n as u128).unwrap();
                assert_eq!(chartrand_bounds(n, d).unwrap().lower, direct as usize);
            }
        }
    }

    #[test]
    fn hernando_examples() {
        assert!(hernando_feasible(6, 2, 2).unwrap());
        assert!(!hernando_feasible(7, 2, 2).unwrap());
        assert!(hernando_feasible(2, 2, 1).unwrap());
        assert!(hernando_feasible(1000, 60, 40).unwrap());
        assert!(hernando_feasible(5, 1, 2).is_err());
        assert!(hernando_feasible(5, 2, 0).is_err());
    }

    #[test]
    fn classical_examples() {
        use ClassicalFamily::*;
        assert_eq!(dim_classical(Wheel, 7).unwrap(), 3);
        assert_eq!(dim_classical(Wheel, 3).unwrap(), 3);
        assert_eq!(dim_classical(Wheel, 6).unwrap(), 3);
        assert_eq!(dim_classical(Wheel, 10).unwrap(), 4);
        assert_eq!(dim_classical(CyclePrism, 5).unwrap(), 2);
        assert_eq!(dim_classical(CyclePrism, 8).unwrap(), 3);
        assert_eq!(dim_classical(Complete, 4).unwrap(), 3);
        assert_eq!(dim_classical(Path, 9).unwrap(), 1);
        assert_eq!(dim_classical(Cycle, 9).unwrap(), 2);
        assert!(dim_classical(Cycle, 2).is_err());
        assert!(dim_classical(Path, 1).is_err());
    }

    #[test]
    fn product_formulas() {
        assert_eq!(prism_sandwich(2), BoundPair { lower: 2, upper: 3 });
        assert_eq!(dim_complete_cartesian(5, 2).unwrap(), 4);
        assert!(dim_complete_cartesian(4, 2).is_err());
    }

    #[test]
    fn tree_examples() {
        let (r, s) = dim_tree(&star(3).unwrap()).unwrap();
        assert_eq!((s.sigma, s.ex, r.dimension), (3, 1, 2));

        // Two adjacent centers with two leaves each.
        let double_star = Graph::new(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        let (r, s) = dim_tree(&double_star).unwrap();
        assert_eq!((s.sigma, s.ex, r.dimension), (4, 2, 2));

        let (r, s) = dim_tree(&spider(6, 2).unwrap()).unwrap();
        assert_eq!((s.sigma, s.ex, r.dimension), (6, 1, 5));

        for t in [star(5).unwrap(), double_star, spider(6, 2).unwrap()] {
            let (r, _) = dim_tree(&t).unwrap();
            assert_eq!(r.witness.len(), r.dimension);
            assert!(is_resolving(&t.distances(), &r.witness).unwrap().is_resolving());
        }
    }

    #[test]
    fn tree_errors() {
        assert!(matches!(dim_tree(&path(5).unwrap()), Err(crate::Error::Domain(msg)) if msg.contains("path")));
        let cyc = crate::graph::generators::cycle(4).unwrap();
        assert!(matches!(dim_tree(&cyc), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn terminals_attach_to_nearest_major() {
        // Majors 0 and 4; leaf 8 sits on a leg of 4 at distance 2.
        let t = Graph::new(
            9,
            [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6), (4, 7), (7, 8)],
        )
        .unwrap();
        let s = tree_structure(&t).unwrap();
        assert_eq!(s.major_vertices, vec![0, 4]);
        assert_eq!(s.terminals[&0], vec![1, 2]);
        assert_eq!(s.terminals[&4], vec![5, 6, 8]);
        assert_eq!((s.sigma, s.ex), (5, 2));
    }

    #[test]
    fn functigraph_formulas() {
        let constant = VertexFunction::constant(4, 0).unwrap();
        assert_eq!(dim_functi_complete(4, &constant).unwrap(), 5);
        let fig3 = VertexFunction::parse_literal("1,1,1,2,2,3").unwrap();
        assert_eq!(dim_functi_complete(6, &fig3).unwrap(), 7);
        assert_eq!(dim_functi_complete(5, &VertexFunction::identity(5)).unwrap(), 4);
        assert!(dim_functi_complete(2, &VertexFunction::identity(2)).is_err());
        assert!(dim_functi_complete(4, &VertexFunction::identity(5)).is_err());

        assert_eq!(dim_functi_cycle_constant(11).unwrap(), 5);
        assert_eq!(dim_functi_cycle_constant(16).unwrap(), 8);
        assert_eq!(dim_functi_cycle_constant(4).unwrap(), 3);
        assert_eq!(dim_functi_cycle_constant(3).unwrap(), 3);
        assert_eq!(dim_functi_cycle_constant(5).unwrap(), 3);
        assert!(dim_functi_cycle_constant(2).is_err());
    }

    #[test]
    fn functi_bound_examples() {
        let b = |c| functi_dim_bounds(c).unwrap();
        assert_eq!(b(FunctiContext::General { n: 3 }), FunctiValue::Bounds(BoundPair { lower: 2, upper: 3 }));
        assert_eq!(
            b(FunctiContext::CycleGeneral { n: 3, s: 2 }),
            FunctiValue::Bounds(BoundPair { lower: 2, upper: 2 })
        );
        assert_eq!(
            b(FunctiContext::CyclePermutation { n: 6 }),
            FunctiValue::Bounds(BoundPair { lower: 2, upper: 5 })
        );
        assert_eq!(b(FunctiContext::TwoClique { m: 3, n: 3 }), FunctiValue::Exact(3));
        assert!(functi_dim_bounds(FunctiContext::CycleGeneral { n: 5, s: 5 }).is_err());
        assert!(functi_dim_bounds(FunctiContext::CycleGeneral { n: 5, s: 1 }).is_err());
        assert!(functi_dim_bounds(FunctiContext::TwoClique { m: 2, n: 3 }).is_err());
        assert!(functi_dim_bounds(FunctiContext::General { n: 2 }).is_err());
    }
}
