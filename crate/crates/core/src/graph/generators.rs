//! Graph families and operations.
//!
//! Labeling conventions:
//! - `path(n)` and `cycle(n)` number vertices in traversal order, so the
//!   cycle's closing edge is `(0, n - 1)`.
//! - `wheel(n)` is `C_n + K_1`: rim vertices `0..n` in cycle order, hub `n`.
//! - `complete_bipartite(s, t)` puts the `s` side first.
//! - `join(a, b)` and `disjoint_union(a, b)` list `a`'s vertices first, then
//!   `b`'s shifted by `a.order()`.
//! - `spider(legs, len)` has its center at 0 and leg `i` occupying
//!   `1 + i*len ..= (i+1)*len`, nearest the center first.

use rand::seq::SliceRandom;
use rand::Rng;

use super::Graph;
use crate::error::{input, Result};

pub fn path(n: usize) -> Result<Graph> {
    if n < 1 {
        return input("path needs n >= 1");
    }
    Ok(Graph::new(n, (1..n).map(|i| (i - 1, i)))?.with_name(format!("P_{n}")))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return input(format!("cycle needs n >= 3, got {n}"));
    }
    Ok(Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))?.with_name(format!("C_{n}")))
}

pub fn complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return input("complete graph needs n >= 1");
    }
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    Ok(Graph::new(n, edges)?.with_name(format!("K_{n}")))
}

pub fn wheel(n: usize) -> Result<Graph> {
    if n < 3 {
        return input(format!("wheel needs n >= 3, got {n}"));
    }
    let hub = complete(1)?;
    Ok(join(&cycle(n)?, &hub)?.with_name(format!("W_{{1,{n}}}")))
}

pub fn complete_bipartite(s: usize, t: usize) -> Result<Graph> {
    if s < 1 || t < 1 {
        return input(format!("complete bipartite needs s, t >= 1, got ({s}, {t})"));
    }
    let edges = (0..s).flat_map(|a| (s..s + t).map(move |b| (a, b)));
    Ok(Graph::new(s + t, edges)?.with_name(format!("K_{{{s},{t}}}")))
}

/// Edgeless graph on `n` vertices.
pub fn empty(n: usize) -> Result<Graph> {
    Ok(Graph::new(n, [])?.with_name(format!("E_{n}")))
}

pub fn disjoint_union(a: &Graph, b: &Graph) -> Result<Graph> {
    let shift = a.order();
    let edges = a
        .edges()
        .iter()
        .copied()
        .chain(b.edges().iter().map(|&(x, y)| (x + shift, y + shift)));
    Graph::new(a.order() + b.order(), edges)
}

/// `a + b`: disjoint union plus every edge between `a` and `b`.
pub fn join(a: &Graph, b: &Graph) -> Result<Graph> {
    let shift = a.order();
    let union = disjoint_union(a, b)?;
    let cross = (0..a.order()).flat_map(|x| (0..b.order()).map(move |y| (x, y + shift)));
    Graph::new(union.order(), union.edges().iter().copied().chain(cross))
}

pub fn complement(g: &Graph) -> Result<Graph> {
    let n = g.order();
    let edges = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !g.has_edge(a, b));
    Graph::new(n, edges)
}

pub fn star(leaves: usize) -> Result<Graph> {
    Ok(complete_bipartite(1, leaves)?.with_name(format!("K_{{1,{leaves}}}")))
}

/// Subdivided star: one center with `legs` paths of `len` vertices each.
pub fn spider(legs: usize, len: usize) -> Result<Graph> {
    if legs < 1 || len < 1 {
        return input("spider needs at least one leg of length at least one");
    }
    let mut edges = Vec::with_capacity(legs * len);
    for leg in 0..legs {
        let start = 1 + leg * len;
        edges.push((0, start));
        edges.extend((start..start + len - 1).map(|v| (v, v + 1)));
    }
    Ok(Graph::new(1 + legs * len, edges)?.with_name(format!("spider({legs}x{len})")))
}

/// Renames vertex `v` to `perm[v]`.
pub fn relabel(g: &Graph, perm: &[usize]) -> Result<Graph> {
    let n = g.order();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return input("relabeling must be a permutation of the vertex set");
    }
    Graph::new(n, g.edges().iter().map(|&(a, b)| (perm[a], perm[b])))
}

/// Uniform random labeled tree via a random Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Graph> {
    if n < 2 {
        return path(n);
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always remains");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, edges)
}

/// Random connected graph: a random spanning tree plus each remaining pair
/// independently with probability `p`.
pub fn random_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    let tree = random_tree(n, rng)?;
    let mut edges = tree.edges().to_vec();
    for a in 0..n {
        for b in a + 1..n {
            if !tree.has_edge(a, b) && rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    relabel(&Graph::new(n, edges)?, &perm)
}

/// The families reachable by name, e.g. from the command line.
#[derive(Debug, Clone)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Wheel(usize),
    CompleteBipartite(usize, usize),
    Star(usize),
    Spider(usize, usize),
    Join(Graph, Graph),
    DisjointUnion(Graph, Graph),
    Complement(Graph),
}

pub fn gen_family(family: &Family) -> Result<Graph> {
    match family {
        Family::Path(n) => path(*n),
        Family::Cycle(n) => cycle(*n),
        Family::Complete(n) => complete(*n),
        Family::Wheel(n) => wheel(*n),
        Family::CompleteBipartite(s, t) => complete_bipartite(*s, *t),
        Family::Star(k) => star(*k),
        Family::Spider(legs, len) => spider(*legs, *len),
        Family::Join(a, b) => join(a, b),
        Family::DisjointUnion(a, b) => disjoint_union(a, b),
        Family::Complement(g) => complement(g),
    }
}
