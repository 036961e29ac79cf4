//! Finite simple graphs with the hop metric, integer-indexed paths, and the
//! single-constant quasi-isometry convention.
//!
//! Graph files are plain text: a header line `n <vertex_count>` followed by one
//! `u v` edge per line, vertices 0-indexed. Blank lines and lines starting with
//! `#` are ignored on input; output is canonical (edges as `min max`, sorted).

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Marker for "no path" in BFS output.
pub const UNREACHABLE: u32 = u32::MAX;

/// A finite, undirected, unweighted simple graph.
///
/// Construction rejects self-loops, duplicate edges and out-of-range ids.
/// Connectivity is checked by the operations that need it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidGraph("vertex count must be positive".into()));
        }
        let mut canon: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!("duplicate edge {} {}", w[0].0, w[0].1)));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &canon {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            adjacency,
            edges: canon,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, each edge as `(min, max)`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }

    /// Hop distances from `source`; unreachable vertices get [`UNREACHABLE`].
    pub fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let next = dist[u] + 1;
            for &w in &self.adjacency[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Subgraph induced on `vertices` (deduplicated, in sorted order). The
    /// returned map sends each new vertex id to its id in `self`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut map: Vec<usize> = vertices.to_vec();
        map.sort_unstable();
        map.dedup();
        if map.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in map.iter().enumerate() {
            self.check_vertex(v)?;
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        Ok((Graph::new(map.len(), edges)?, map))
    }

    /// Parses the edge-list text format.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .enumerate()
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, header) = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let mut head = header.split_whitespace();
        let n = match (head.next(), head.next(), head.next()) {
            (Some("n"), Some(count), None) => count
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad vertex count `{count}`")))?,
            _ => {
                return Err(Error::Parse(format!(
                    "expected header `n <vertex_count>`, got `{header}`"
                )))
            }
        };
        let mut edges = Vec::new();
        for (lineno, line) in lines {
            let mut parts = line.split_whitespace();
            let parse = |s: Option<&str>| -> Result<usize> {
                s.and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("line {}: expected `u v`, got `{line}`", lineno + 1)))
            };
            let u = parse(parts.next())?;
            let v = parse(parts.next())?;
            if parts.next().is_some() {
                return Err(Error::Parse(format!(
                    "line {}: trailing tokens in `{line}`",
                    lineno + 1
                )));
            }
            edges.push((u, v));
        }
        Graph::new(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.vertex_count());
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// All-pairs hop distances of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    /// One BFS per source, run in parallel. Fails with "not connected" if
    /// some pair is unreachable.
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.vertex_count();
        let rows: Vec<Vec<u32>> = (0..n).into_par_iter().map(|s| g.bfs(s)).collect();
        if rows[0].contains(&UNREACHABLE) {
            return Err(Error::NotConnected);
        }
        Ok(Self { n, data: rows.concat() })
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.data[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.data[u * self.n..(u + 1) * self.n]
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn eccentricity(&self, v: usize) -> u32 {
        self.row(v).iter().copied().max().unwrap_or(0)
    }

    pub fn diameter(&self) -> u32 {
        self.data.iter().copied().max().unwrap_or(0)
    }

    /// Distance from `v` to the nearest vertex of `set`.
    pub fn distance_to_set(&self, v: usize, set: &[usize]) -> u32 {
        set.iter().map(|&s| self.get(v, s)).min().unwrap_or(UNREACHABLE)
    }
}

/// Exact pairwise hop distances; see [`DistanceMatrix::new`].
pub fn distance_matrix(g: &Graph) -> Result<DistanceMatrix> {
    DistanceMatrix::new(g)
}

/// A path indexed by `0..len`. Consecutive vertices are equal or adjacent, so
/// a path may pause.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathSeq(Vec<usize>);

impl PathSeq {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidPath("path must be nonempty".into()));
        }
        for &v in &vertices {
            g.check_vertex(v)?;
        }
        for (i, w) in vertices.windows(2).enumerate() {
            if w[0] != w[1] && !g.has_edge(w[0], w[1]) {
                return Err(Error::InvalidPath(format!(
                    "step {i}: {} and {} are neither equal nor adjacent",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self(vertices))
    }

    /// Caller guarantees the path invariant.
    pub(crate) fn from_vec_unchecked(vertices: Vec<usize>) -> Self {
        debug_assert!(!vertices.is_empty());
        Self(vertices)
    }

    pub fn trivial(v: usize) -> Self {
        Self(vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.0
    }

    /// Number of indices (vertices counted with multiplicity).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of steps, i.e. the largest index.
    pub fn length(&self) -> usize {
        self.0.len() - 1
    }

    pub fn start(&self) -> usize {
        self.0[0]
    }

    pub fn end(&self) -> usize {
        self.0[self.0.len() - 1]
    }

    pub fn at(&self, i: usize) -> usize {
        self.0[i]
    }

    /// Sorted, deduplicated vertex set of the path.
    pub fn image(&self) -> Vec<usize> {
        let mut img = self.0.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }
}

/// Quasi-isometry constant `K ≥ 1`, a positive rational.
///
/// One constant serves as both the multiplicative and the additive slack:
/// `d/K − K ≤ d' ≤ K·d + K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct QuasiConstant {
    num: u64,
    den: u64,
}

impl QuasiConstant {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidConstant("zero denominator".into()));
        }
        if num < den {
            return Err(Error::InvalidConstant(format!("{num}/{den} is below 1")));
        }
        let g = gcd(num, den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn integer(k: u64) -> Result<Self> {
        Self::new(k, 1)
    }

    pub fn one() -> Self {
        Self { num: 1, den: 1 }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Amount by which the lower bound `span/K − K ≤ dist` is violated,
    /// scaled by `num·den` (positive means violated).
    #[inline]
    pub fn lower_excess(&self, span: u64, dist: u64) -> i128 {
        let (n, m) = (self.num as i128, self.den as i128);
        span as i128 * m * m - n * n - dist as i128 * n * m
    }

    /// Amount by which the upper bound `dist ≤ K·span + K` is violated,
    /// scaled by `num·den` (positive means violated).
    #[inline]
    pub fn upper_excess(&self, span: u64, dist: u64) -> i128 {
        let (n, m) = (self.num as i128, self.den as i128);
        n * (dist as i128 * m - n * span as i128 - n)
    }

    /// Largest final index `N` allowed by the lower bound for a pair whose
    /// first index is `s` and whose endpoints are `dist` apart.
    #[inline]
    pub fn max_span(&self, dist: u64) -> u64 {
        let (n, m) = (self.num as u128, self.den as u128);
        ((dist as u128 * n * m + n * n) / (m * m)) as u64
    }
}

impl fmt::Display for QuasiConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for QuasiConstant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidConstant(format!("cannot parse `{s}`"));
        match s.split_once('/') {
            Some((a, b)) => Self::new(
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ),
            None => Self::integer(s.parse().map_err(|_| bad())?),
        }
    }
}

impl TryFrom<String> for QuasiConstant {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<QuasiConstant> for String {
    fn from(k: QuasiConstant) -> String {
        k.to_string()
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert!(matches!(Graph::new(3, [(1, 1)]), Err(Error::InvalidGraph(_))));
        assert!(matches!(Graph::new(3, [(0, 1), (1, 0)]), Err(Error::InvalidGraph(_))));
        assert!(matches!(Graph::new(3, [(0, 3)]), Err(Error::VertexOutOfRange { .. })));
        assert!(Graph::new(0, []).is_err());
    }

    #[test]
    fn distances_on_small_graphs() {
        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(distance_matrix(&p3).unwrap().get(0, 2), 2);
        let single = Graph::new(1, []).unwrap();
        assert_eq!(distance_matrix(&single).unwrap().get(0, 0), 0);
        let disconnected = Graph::new(3, [(0, 1)]).unwrap();
        let err = distance_matrix(&disconnected).unwrap_err();
        assert_eq!(err.to_string(), "not connected");
    }

    #[test]
    fn edge_list_round_trip() {
        let text = "# a comment\nn 4\n2 1\n\n0 1\n3 2\n";
        let g = Graph::parse_edge_list(text).unwrap();
        assert_eq!(g.to_edge_list(), "n 4\n0 1\n1 2\n2 3\n");
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        assert!(Graph::parse_edge_list("4\n0 1\n").is_err());
        assert!(Graph::parse_edge_list("n 2\n0 x\n").is_err());
    }

    #[test]
    fn path_validation_allows_pauses() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(PathSeq::new(&g, vec![0, 0, 1, 2, 2]).is_ok());
        assert!(PathSeq::new(&g, vec![0, 2]).is_err());
        assert!(PathSeq::new(&g, vec![]).is_err());
    }

    #[test]
    fn quasi_constant_parsing() {
        let k: QuasiConstant = "6/4".parse().unwrap();
        assert_eq!((k.numer(), k.denom()), (3, 2));
        assert_eq!(k.to_string(), "3/2");
        assert!("1/2".parse::<QuasiConstant>().is_err());
        assert!("0".parse::<QuasiConstant>().is_err());
    }

    #[test]
    fn induced_subgraph_maps_back() {
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let (sub, map) = c4.induced_subgraph(&[3, 0, 1]).unwrap();
        assert_eq!(map, vec![0, 1, 3]);
        assert_eq!(sub.edges(), &[(0, 1), (0, 2)]);
    }
}
