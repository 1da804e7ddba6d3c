//! Simple undirected graphs, hop-distance matrices, and the text edge-list
//! format.
//!
//! Vertices are `0..order`. Edges are stored as `(a, b)` with `a < b`, sorted,
//! so two graphs compare equal exactly when they have the same order and the
//! same edge set. The optional name is a label and takes no part in equality.
//!
//! # Text format
//!
//! ```text
//! # optional comments, anywhere
//! 4
//! 0 1
//! 1 2   # trailing comments are fine
//! 2 3
//! ```
//!
//! The first non-comment line is the order; every further non-empty line is
//! one edge given by two 0-based endpoints.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{domain, input, Error, Result};

pub mod generators;

#[derive(Debug, Clone)]
pub struct Graph {
    order: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    name: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an edge list, collapsing duplicates (in either
    /// orientation) and rejecting loops and out-of-range endpoints.
    pub fn new(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if order == 0 {
            return input("graph order must be at least 1");
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= order || b >= order {
                return input(format!("edge ({a}, {b}) has an endpoint outside 0..{order}"));
            }
            if a == b {
                return input(format!("self-loop at vertex {a}"));
            }
            set.insert((a.min(b), a.max(b)));
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); order];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            order,
            edges,
            adjacency,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, `a < b`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Open neighborhood N(v), sorted ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Closed neighborhood N[v], sorted ascending.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = self.adjacency[v].clone();
        let pos = out.binary_search(&v).unwrap_err();
        out.insert(pos, v);
        out
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.order && self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<_> = (0..self.order).map(|v| self.degree(v)).collect();
        seq.sort_unstable_by(|a, b| b.cmp(a));
        seq
    }

    pub fn distances(&self) -> DistanceMatrix {
        DistanceMatrix::new(self)
    }

    pub fn is_connected(&self) -> bool {
        bfs(self, 0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Largest distance between two vertices. Errors on a disconnected graph.
    pub fn diameter(&self) -> Result<usize> {
        self.distances().diameter()
    }

    /// Parses the text edge-list format described in the module docs.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (lineno, header) = lines
            .next()
            .ok_or_else(|| Error::Input("empty graph file: missing order line".into()))?;
        let order: usize = header
            .parse()
            .map_err(|_| Error::Input(format!("line {lineno}: expected vertex count, got {header:?}")))?;
        let mut edges = Vec::new();
        for (lineno, line) in lines {
            let mut parts = line.split_whitespace();
            let mut endpoint = || -> Result<usize> {
                parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Input(format!("line {lineno}: expected `a b`, got {line:?}")))
            };
            let (a, b) = (endpoint()?, endpoint()?);
            if parts.next().is_some() {
                return input(format!("line {lineno}: trailing tokens in {line:?}"));
            }
            edges.push((a, b));
        }
        Graph::new(order, edges)
    }

    /// Serializes to the text edge-list format; the name, if any, is written
    /// as a leading comment.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            let _ = writeln!(out, "# {name}");
        }
        let _ = writeln!(out, "{}", self.order);
        for (a, b) in &self.edges {
            let _ = writeln!(out, "{a} {b}");
        }
        out
    }
}

type Dist = u16;
const UNREACHABLE: Dist = Dist::MAX;

fn bfs(g: &Graph, source: usize) -> Vec<Dist> {
    let mut dist = vec![UNREACHABLE; g.order];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHABLE {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All-pairs hop distances. Unreachable pairs read as `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    order: usize,
    dist: Vec<Dist>,
}

impl DistanceMatrix {
    pub fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut dist = Vec::with_capacity(n * n);
        for v in 0..n {
            dist.extend(bfs(g, v));
        }
        Self { order: n, dist }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        match self.dist[u * self.order + v] {
            UNREACHABLE => None,
            d => Some(d as usize),
        }
    }

    pub fn is_connected(&self) -> bool {
        !self.dist.contains(&UNREACHABLE)
    }

    /// Row of raw distances from `v`. Only meaningful on connected graphs,
    /// where no entry carries the sentinel.
    pub(crate) fn row(&self, v: usize) -> &[Dist] {
        &self.dist[v * self.order..(v + 1) * self.order]
    }

    pub fn diameter(&self) -> Result<usize> {
        if !self.is_connected() {
            return domain("diameter is undefined for a disconnected graph");
        }
        Ok(self.dist.iter().copied().max().unwrap_or(0) as usize)
    }

    /// Sorted multiset of all off-diagonal distances (each unordered pair
    /// once). Unreachable pairs sort last.
    pub fn distance_multiset(&self) -> Vec<Option<usize>> {
        let mut out = Vec::with_capacity(self.order * self.order.saturating_sub(1) / 2);
        for u in 0..self.order {
            for v in u + 1..self.order {
                out.push(self.get(u, v));
            }
        }
        out.sort_unstable_by_key(|d| d.unwrap_or(usize::MAX));
        out
    }
}
