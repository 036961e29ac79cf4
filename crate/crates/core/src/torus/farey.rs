//! Distances in the Farey graph.
//!
//! After moving the first endpoint to `∞`, every geodesic to `x` runs through
//! the ladder of `x`: the Farey triangles crossed by the vertical line down to
//! `x`. The ladder is a chain of fans, one per continued-fraction digit, and
//! a geodesic never walks more than two steps along a fan's rim, so each rim
//! is kept only near its ends.

use std::collections::{HashMap, VecDeque};

use crate::graph::Graph;

use super::slope::{MappingClassMatrix, Slope};

pub fn farey_adjacent(a: Slope, b: Slope) -> bool {
    a.intersection(&b) == 1
}

/// Continued-fraction digits of a finite slope; all but the first positive.
pub fn continued_fraction(x: Slope) -> Vec<i64> {
    let (mut p, mut q) = (x.p(), x.q());
    let mut digits = Vec::new();
    while q != 0 {
        let a = p.div_euclid(q);
        digits.push(a);
        (p, q) = (q, p - a * q);
    }
    digits
}

/// Ladder vertices from `∞` down to the finite slope `x`, starting with `∞`
/// and ending with `x`. With `compress`, each fan rim keeps only its first
/// and last three vertices.
pub fn ladder(x: Slope, compress: bool) -> Vec<Slope> {
    let digits = continued_fraction(x);
    let (mut h2, mut k2) = (0i64, 1i64);
    let (mut h1, mut k1) = (1i64, 0i64);
    let mut out = vec![Slope::INFINITY];
    for (i, &a) in digits.iter().enumerate() {
        let (h, k) = (a * h1 + h2, a * k1 + k2);
        // Pivot h/k with rim (h1 + j·h)/(k1 + j·k), j = 0..=next digit.
        out.push(Slope::from_vector(h, k));
        if let Some(&m) = digits.get(i + 1) {
            for j in 0..=m {
                if !compress || j <= 2 || j + 3 > m {
                    out.push(Slope::from_vector(h1 + j * h, k1 + j * k));
                }
            }
        }
        (h2, k2, h1, k1) = (h1, k1, h, k);
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|s| seen.insert(*s));
    out.retain(|s| *s != x);
    out.push(x);
    out
}

/// Shortest path in the subgraph of the Farey graph induced on `vertices`,
/// from the first vertex to the last.
fn induced_path(vertices: &[Slope]) -> Option<Vec<Slope>> {
    let n = vertices.len();
    let mut parent = vec![usize::MAX; n];
    parent[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        if u == n - 1 {
            break;
        }
        for w in 0..n {
            if parent[w] == usize::MAX && farey_adjacent(vertices[u], vertices[w]) {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    if parent[n - 1] == usize::MAX {
        return None;
    }
    let mut path = vec![vertices[n - 1]];
    let mut cur = n - 1;
    while cur != 0 {
        cur = parent[cur];
        path.push(vertices[cur]);
    }
    path.reverse();
    Some(path)
}

/// A Farey geodesic from `a` to `b`.
pub fn farey_geodesic(a: Slope, b: Slope) -> Vec<Slope> {
    if a == b {
        return vec![a];
    }
    let m = MappingClassMatrix::normalizer(a);
    let back = m.inverse();
    let path = induced_path(&ladder(m.apply(b), true)).expect("ladders are connected");
    path.into_iter().map(|s| back.apply(s)).collect()
}

pub fn farey_distance(a: Slope, b: Slope) -> u32 {
    farey_geodesic(a, b).len() as u32 - 1
}

/// Endpoints of the Farey edges that separate `a` from `b`, together with
/// `a` and `b`.
pub fn separating_slopes(a: Slope, b: Slope) -> Vec<Slope> {
    if a == b {
        return vec![a];
    }
    let m = MappingClassMatrix::normalizer(a);
    let back = m.inverse();
    ladder(m.apply(b), false).into_iter().map(|s| back.apply(s)).collect()
}

/// The Farey graph restricted to slopes with `|p|, |q| ≤ n`; the brute-force
/// oracle for `farey_distance`.
#[derive(Clone, Debug)]
pub struct FareyBox {
    slopes: Vec<Slope>,
    index: HashMap<Slope, usize>,
    adjacency: Vec<Vec<usize>>,
}

impl FareyBox {
    pub fn new(n: i64) -> Self {
        let mut slopes = vec![Slope::INFINITY];
        for q in 1..=n {
            for p in -n..=n {
                let s = Slope::from_vector(p, q);
                if s.p() == p && s.q() == q {
                    slopes.push(s);
                }
            }
        }
        let index: HashMap<Slope, usize> = slopes.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let adjacency = slopes
            .iter()
            .map(|&s| {
                // Neighbours are ±(r0 + t·p, s0 + t·q) for one solution (r0, s0).
                let (_, x, y) = super::slope::ext_gcd(s.p(), s.q());
                let (r0, s0) = (-y, x);
                let (lo, hi) = if s.q() == 0 {
                    (-n - r0, n - r0)
                } else {
                    ((-n - s0).div_euclid(s.q()) - 1, (n - s0).div_euclid(s.q()) + 1)
                };
                let mut out: Vec<usize> = (lo..=hi)
                    .map(|t| Slope::from_vector(r0 + t * s.p(), s0 + t * s.q()))
                    .filter_map(|w| index.get(&w).copied())
                    .collect();
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect();
        Self {
            slopes,
            index,
            adjacency,
        }
    }

    pub fn slopes(&self) -> &[Slope] {
        &self.slopes
    }

    pub fn contains(&self, s: Slope) -> bool {
        self.index.contains_key(&s)
    }

    /// Hop distances from `a` to every box slope (`u32::MAX` if unreachable).
    pub fn distances_from(&self, a: Slope) -> Option<Vec<u32>> {
        let start = *self.index.get(&a)?;
        let mut dist = vec![u32::MAX; self.slopes.len()];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        Some(dist)
    }

    pub fn distance(&self, a: Slope, b: Slope) -> Option<u32> {
        let d = self.distances_from(a)?[*self.index.get(&b)?];
        (d != u32::MAX).then_some(d)
    }

    /// The box as a graph, with `slopes()[i]` at vertex `i`.
    pub fn to_graph(&self) -> Graph {
        let edges = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ws)| ws.iter().filter(move |&&w| w > u).map(move |&w| (u, w)));
        Graph::new(self.slopes.len(), edges.collect::<Vec<_>>()).expect("box adjacency is simple")
    }
}
