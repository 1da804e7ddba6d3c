//! Explicit resolving sets for functigraphs on paths, complete graphs and
//! cycles.
//!
//! Each builder takes the caller's actual function, relabels it into the
//! normalized form its argument assumes (e.g. "the constant map onto `v_1`",
//! "preimages in contiguous blocks of decreasing size"), picks the set there,
//! and maps it back. Returned indices are always in the caller's composed
//! labeling: `0..n` for the first copy and `n..2n` for the second.

use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::formulas::dim_functi_cycle_constant;
use crate::functigraph::{build_functigraph, vertex_label, FunctionKind, VertexFunction};
use crate::graph::generators::cycle;
use crate::graph::Graph;
use crate::resolver::{is_resolving, metric_dimension_exact, Budget};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionResult {
    /// Composed-graph indices, ascending.
    pub set: Vec<usize>,
    /// `u_i` / `v_j` labels matching `set`.
    pub labels: Vec<String>,
    pub source: String,
    pub claimed_size: usize,
    pub base_order: usize,
}

impl ConstructionResult {
    fn new(base_order: usize, mut set: Vec<usize>, source: &str, claimed_size: usize) -> Result<Self> {
        set.sort_unstable();
        set.dedup();
        if set.len() != claimed_size {
            return Err(Error::Internal(format!(
                "{source}: built {} vertices, expected {claimed_size}",
                set.len()
            )));
        }
        if set.iter().any(|&x| x >= 2 * base_order) {
            return Err(Error::Internal(format!("{source}: index outside the composed graph")));
        }
        Ok(Self {
            labels: set.iter().map(|&x| vertex_label(base_order, x)).collect(),
            set,
            source: source.to_string(),
            claimed_size,
            base_order,
        })
    }

    pub fn verify(&self, composed: &Graph) -> Result<bool> {
        Ok(is_resolving(&composed.distances(), &self.set)?.is_resolving())
    }
}

fn require_order(f: &VertexFunction, min: usize) -> Result<usize> {
    let n = f.domain_order();
    if n < min {
        return input(format!("construction needs n >= {min}, got {n}"));
    }
    Ok(n)
}

/// `C(P_n, id)`: the two end-vertices of the first copy.
pub fn resolving_path_identity(n: usize) -> Result<ConstructionResult> {
    if n < 3 {
        return input(format!("construction needs n >= 3, got {n}"));
    }
    ConstructionResult::new(n, vec![0, n - 1], "path_identity", 2)
}

/// `C(K_n, f_0)` for a constant `f_0`: all but one vertex of the first copy,
/// plus all but one of the second copy's vertices outside the image.
pub fn resolving_complete_constant(f: &VertexFunction) -> Result<ConstructionResult> {
    let n = require_order(f, 3)?;
    if f.classify().kind != FunctionKind::Constant {
        return input("complete_constant needs a constant function");
    }
    let target = f.apply(0);
    let mut set: Vec<usize> = (0..n - 1).collect();
    set.extend((0..n).filter(|&j| j != target).take(n - 2).map(|j| n + j));
    ConstructionResult::new(n, set, "complete_constant", 2 * n - 3)
}

/// `C(K_n, f)` with image size `1 < s < n`.
///
/// Image vertices are ordered by decreasing preimage size (ties by index) as
/// `v_1..v_s`, the rest follow ascending as `v_{s+1}..v_n`, and the preimages
/// of `v_1, v_2, ...` fill `u_1, u_2, ...` in contiguous blocks. The set is
/// `{u_2..u_n} ∪ {v_{s+1}..v_{n-1}}`.
pub fn resolving_complete_general(f: &VertexFunction) -> Result<ConstructionResult> {
    let n = require_order(f, 3)?;
    let class = f.classify();
    if class.kind != FunctionKind::General {
        return input(format!("complete_general needs 1 < s < n, got s = {}", class.image_size));
    }
    let s = class.image_size;
    let sizes = f.preimage_sizes();
    let mut image = f.image();
    image.sort_by(|a, b| sizes[*b].cmp(&sizes[*a]).then(a.cmp(b)));
    let non_image: Vec<usize> = (0..n).filter(|j| sizes[*j] == 0).collect();
    // Paper u_1.. in caller indices.
    let u_order: Vec<usize> = image.iter().flat_map(|&j| f.preimage(j)).collect();
    let mut set: Vec<usize> = u_order[1..].to_vec();
    set.extend(non_image[..n - s - 1].iter().map(|&j| n + j));
    ConstructionResult::new(n, set, "complete_general", 2 * n - 2 - s)
}

/// `C(C_n, σ)` for a permutation `σ`: `{u_2..u_n}`.
pub fn resolving_cycle_permutation(f: &VertexFunction) -> Result<ConstructionResult> {
    let n = require_order(f, 3)?;
    if f.classify().kind != FunctionKind::Permutation {
        return input("cycle_permutation needs a permutation");
    }
    ConstructionResult::new(n, (1..n).collect(), "cycle_permutation", n - 1)
}

/// `C(C_n, f_0)` for a constant `f_0`. Both copies are rotated so the target
/// is `v_1`; for `n >= 6` the set depends on `n mod 5` and parity.
pub fn resolving_cycle_constant(f: &VertexFunction) -> Result<ConstructionResult> {
    let n = require_order(f, 3)?;
    if f.classify().kind != FunctionKind::Constant {
        return input("cycle_constant needs a constant function");
    }
    let shift = f.apply(0);
    // 1-based u/v subscripts under the normalized labeling.
    let (us, vs) = cycle_constant_subscripts(n);
    let set = us
        .iter()
        .map(|&i| (shift + i - 1) % n)
        .chain(vs.iter().map(|&j| n + (shift + j - 1) % n))
        .collect();
    ConstructionResult::new(n, set, "cycle_constant", dim_functi_cycle_constant(n)?)
}

fn cycle_constant_subscripts(n: usize) -> (Vec<usize>, Vec<usize>) {
    // Pairs {5i + a, 5i + b} for 0 <= i <= (n - c) / 5; empty when n < c.
    let blocks = |a: usize, b: usize, c: usize| -> Vec<usize> {
        if n < c {
            return Vec::new();
        }
        (0..=(n - c) / 5).flat_map(|i| [5 * i + a, 5 * i + b]).collect()
    };
    let middle = if n % 2 == 1 { vec![n.div_ceil(2)] } else { vec![n / 2, n / 2 + 1] };
    match n {
        3 | 5 => (vec![1, 3], vec![3]),
        4 => (vec![1, 2], vec![2]),
        _ => match n % 5 {
            0 => (blocks(2, 5, 5), vec![2]),
            2 => {
                let mut u = blocks(2, 5, 7);
                u.push(n);
                (u, vec![2])
            }
            4 => {
                let mut u = blocks(2, 5, 9);
                u.extend([n - 2, n]);
                (u, vec![2])
            }
            1 => {
                let mut u = vec![2, n - 2];
                u.extend(blocks(4, 7, 11));
                (u, middle)
            }
            _ => {
                let mut u = vec![2, n - 4, n - 2];
                u.extend(blocks(4, 7, 13));
                (u, middle)
            }
        },
    }
}

/// `C(C_n, f)` with image size `1 < s < n`; the set has at most
/// `2(n - 1) - s` vertices.
///
/// - `s = n - 1`: the first copy minus one vertex of the doubled preimage.
/// - `n` even and `f` constant on each parity class: both copies minus an
///   adjacent pair of the first and the two image vertices of the second.
/// - otherwise (`n >= 5`): pick the lowest `u` whose two cycle neighbors have
///   different images, and the lowest non-image `v'` whose cycle neighbors
///   are not exactly those two images; take the first copy minus `u` and the
///   second copy minus the image and `v'`.
/// - `n = 4`, `s = 2` has no uniform argument and uses the exact solver.
pub fn resolving_cycle_general(f: &VertexFunction) -> Result<ConstructionResult> {
    let n = require_order(f, 3)?;
    let class = f.classify();
    let s = class.image_size;
    if class.kind != FunctionKind::General {
        return input(format!("cycle_general needs 1 < s < n, got s = {s}"));
    }
    let bound = 2 * (n - 1) - s;
    let sizes = f.preimage_sizes();

    if s == n - 1 {
        let doubled = (0..n).find(|&j| sizes[j] == 2).expect("s = n - 1 leaves one doubled image");
        let skip = f.preimage(doubled)[0];
        let set = (0..n).filter(|&i| i != skip).collect();
        return ConstructionResult::new(n, set, "cycle_general/all_but_one", bound);
    }

    if n == 4 {
        let composed = build_functigraph(&cycle(n)?, f)?.into_graph();
        let solved = metric_dimension_exact(&composed, Budget::default())?;
        let size = solved.dimension;
        return ConstructionResult::new(n, solved.witness, "cycle_general/solver", size);
    }

    let image = f.image();
    let alternating = n % 2 == 0 && s == 2 && (0..n).all(|i| f.apply(i) == f.apply((i + 2) % n));
    if alternating {
        let set = (2..n).chain((0..n).filter(|j| !image.contains(j)).map(|j| n + j)).collect();
        return ConstructionResult::new(n, set, "cycle_general/parity_classes", bound);
    }

    for center in 0..n {
        let (left, right) = (f.apply((center + n - 1) % n), f.apply((center + 1) % n));
        if left == right {
            continue;
        }
        let hit = |a: usize, b: usize| (a == left && b == right) || (a == right && b == left);
        let spare = (0..n)
            .filter(|&j| sizes[j] == 0)
            .find(|&j| !hit((j + n - 1) % n, (j + 1) % n));
        let Some(spare) = spare else { continue };
        let set = (0..n)
            .filter(|&i| i != center)
            .chain((0..n).filter(|&j| sizes[j] == 0 && j != spare).map(|j| n + j))
            .collect();
        return ConstructionResult::new(n, set, "cycle_general/split_neighbors", bound);
    }
    Err(Error::Internal(format!(
        "no vertex with differently-mapped neighbors and a usable spare image for f = {}",
        f.to_literal()
    )))
}
