//! Thin-triangle constants and the nearest-point retraction onto a path.
//!
//! `thin_triangle_delta` is exact over every choice of geodesic sides without
//! enumerating them. For a fixed far point `w`, let `F_w(x, y)` be the largest
//! value of `d(w, σ)` over geodesics `σ` from `x` to `y`; it satisfies a
//! max-min recursion over the BFS layers from `x`. A side `[x, z]` through
//! `w` is then `δ`-far from the other two sides for some choice of them iff
//! `min(F_w(x, y), F_w(y, z)) ≥ δ`.

use rayon::prelude::*;
use serde::Serialize;

use crate::graph::{DistanceMatrix, Graph, PathSeq};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleWitness {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    /// Point of `side_xz` at distance `delta` from `side_xy ∪ side_yz`.
    pub far_point: usize,
    pub side_xz: PathSeq,
    pub side_xy: PathSeq,
    pub side_yz: PathSeq,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThinnessReport {
    pub delta: u32,
    pub witness: TriangleWitness,
}

struct LayerOrder {
    // vertices sorted by distance from each source
    by_source: Vec<Vec<usize>>,
}

impl LayerOrder {
    fn new(dm: &DistanceMatrix) -> Self {
        let n = dm.vertex_count();
        let by_source = (0..n)
            .map(|x| {
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by_key(|&v| (dm.get(x, v), v));
                order
            })
            .collect();
        Self { by_source }
    }
}

/// `best[s]` = max over geodesics from `x` to `s` of their distance to `w`.
fn farthest_geodesic_from(g: &Graph, dm: &DistanceMatrix, order: &[usize], w: usize, best: &mut [u32]) {
    let x = order[0];
    let dw = dm.row(w);
    let dx = dm.row(x);
    best[x] = dw[x];
    for &s in &order[1..] {
        let layer = dx[s];
        let pred = g
            .neighbors(s)
            .iter()
            .filter(|&&p| dx[p] + 1 == layer)
            .map(|&p| best[p])
            .max()
            .expect("every non-source vertex has a BFS predecessor");
        best[s] = pred.min(dw[s]);
    }
}

/// Exact thin-triangle constant of a connected graph over all vertex triples
/// and all choices of geodesic sides.
pub fn thin_triangle_delta(g: &Graph, dm: &DistanceMatrix) -> ThinnessReport {
    let n = g.vertex_count();
    let layers = LayerOrder::new(dm);
    // (delta, w, x, y, z), maximised with the lexicographically smallest tie.
    let best = (0..n)
        .into_par_iter()
        .map(|w| {
            let mut table = vec![0u32; n * n];
            for x in 0..n {
                farthest_geodesic_from(g, dm, &layers.by_source[x], w, &mut table[x * n..(x + 1) * n]);
            }
            let mut local = (0u32, w, w, w, w);
            for x in 0..n {
                let dxw = dm.get(x, w);
                for z in 0..n {
                    if dxw + dm.get(w, z) != dm.get(x, z) {
                        continue;
                    }
                    for y in 0..n {
                        let v = table[x * n + y].min(table[y * n + z]);
                        if v > local.0 {
                            local = (v, w, x, y, z);
                        }
                    }
                }
            }
            local
        })
        .reduce(
            || (0, usize::MAX, 0, 0, 0),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    let (delta, w, x, y, z) = if best.1 == usize::MAX { (0, 0, 0, 0, 0) } else { best };
    let witness = TriangleWitness {
        x,
        y,
        z,
        far_point: w,
        side_xz: geodesic_through(g, dm, x, w, z),
        side_xy: farthest_geodesic(g, dm, &layers.by_source[x], w, y),
        side_yz: farthest_geodesic(g, dm, &layers.by_source[y], w, z),
    };
    ThinnessReport { delta, witness }
}

fn greedy_geodesic(g: &Graph, dm: &DistanceMatrix, from: usize, to: usize) -> Vec<usize> {
    let mut path = vec![from];
    let mut cur = from;
    while cur != to {
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| dm.get(w, to) + 1 == dm.get(cur, to))
            .expect("connected graph has a descending neighbour");
        path.push(cur);
    }
    path
}

fn geodesic_through(g: &Graph, dm: &DistanceMatrix, x: usize, w: usize, z: usize) -> PathSeq {
    let mut path = greedy_geodesic(g, dm, x, w);
    path.extend(greedy_geodesic(g, dm, w, z).into_iter().skip(1));
    PathSeq::from_vec_unchecked(path)
}

/// A geodesic from `order[0]` to `to` realising the max-min distance to `w`.
fn farthest_geodesic(g: &Graph, dm: &DistanceMatrix, order: &[usize], w: usize, to: usize) -> PathSeq {
    let x = order[0];
    let mut best = vec![0u32; g.vertex_count()];
    farthest_geodesic_from(g, dm, order, w, &mut best);
    let mut rev = vec![to];
    let mut cur = to;
    while cur != x {
        let layer = dm.get(x, cur);
        cur = g
            .neighbors(cur)
            .iter()
            .copied()
            .filter(|&p| dm.get(x, p) + 1 == layer)
            .max_by_key(|&p| (best[p], std::cmp::Reverse(p)))
            .expect("BFS predecessor exists");
        rev.push(cur);
    }
    rev.reverse();
    PathSeq::from_vec_unchecked(rev)
}

/// Four-point (Gromov product) constant, exact; half-integers are possible.
///
/// Cross-check only: it is within a bounded factor of the thin-triangle
/// constant but not equal to it.
pub fn four_point_delta(dm: &DistanceMatrix) -> f64 {
    let n = dm.vertex_count();
    let doubled = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut local = 0u32;
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let mut sums = [
                            dm.get(a, b) + dm.get(c, d),
                            dm.get(a, c) + dm.get(b, d),
                            dm.get(a, d) + dm.get(b, c),
                        ];
                        sums.sort_unstable();
                        local = local.max(sums[2] - sums[1]);
                    }
                }
            }
            local
        })
        .max()
        .unwrap_or(0);
    doubled as f64 / 2.0
}

/// All indices of `path` whose point is nearest to `x`.
pub fn nearest_point_projection(dm: &DistanceMatrix, path: &PathSeq, x: usize) -> Vec<usize> {
    let row = dm.row(x);
    let best = path.vertices().iter().map(|&v| row[v]).min().expect("nonempty path");
    path.vertices()
        .iter()
        .enumerate()
        .filter(|&(_, &v)| row[v] == best)
        .map(|(i, _)| i)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RetractionConstants {
    /// Least `p ≥ 1` with `d(n(x), n(y)) ≤ p·d(x, y) + p` for every pair and
    /// every choice of nearest points.
    pub p: u32,
    /// Largest spread `max − min` of a nearest-index set.
    pub ambiguity: usize,
    /// A pair forcing `p` (absent when `p = 1` is forced by convention only).
    pub witness: Option<(usize, usize)>,
}

pub fn retraction_constants(dm: &DistanceMatrix, path: &PathSeq) -> RetractionConstants {
    let n = dm.vertex_count();
    let mut ambiguity = 0;
    let nearest: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let idx = nearest_point_projection(dm, path, x);
            ambiguity = ambiguity.max(idx[idx.len() - 1] - idx[0]);
            let mut verts: Vec<usize> = idx.into_iter().map(|i| path.at(i)).collect();
            verts.sort_unstable();
            verts.dedup();
            verts
        })
        .collect();
    let mut p = 1u32;
    let mut witness = None;
    for x in 0..n {
        for y in x..n {
            let spread = nearest[x]
                .iter()
                .flat_map(|&a| nearest[y].iter().map(move |&b| (a, b)))
                .map(|(a, b)| dm.get(a, b))
                .max()
                .unwrap_or(0);
            let denom = dm.get(x, y) + 1;
            let need = spread.div_ceil(denom);
            if need > p {
                p = need;
                witness = Some((x, y));
            }
        }
    }
    RetractionConstants { p, ambiguity, witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::graph::distance_matrix;

    fn delta_of(g: &Graph) -> ThinnessReport {
        let dm = distance_matrix(g).unwrap();
        thin_triangle_delta(g, &dm)
    }

    #[test]
    fn trees_are_zero_thin() {
        for g in [generators::path(6), generators::star(5), generators::random_tree(20, 4)] {
            assert_eq!(delta_of(&g).delta, 0);
        }
    }

    #[test]
    fn four_cycle_has_delta_one() {
        let c4 = generators::cycle(4);
        let report = delta_of(&c4);
        assert_eq!(report.delta, 1);
        let dm = distance_matrix(&c4).unwrap();
        let w = &report.witness;
        let mut others: Vec<usize> = w.side_xy.image();
        others.extend(w.side_yz.image());
        assert_eq!(dm.distance_to_set(w.far_point, &others), 1);
        assert_eq!(four_point_delta(&dm), 1.0);
    }

    #[test]
    fn projection_examples_on_c6() {
        let c6 = generators::cycle(6);
        let dm = distance_matrix(&c6).unwrap();
        let path = PathSeq::new(&c6, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(nearest_point_projection(&dm, &path, 5), vec![0]);
        assert_eq!(nearest_point_projection(&dm, &path, 4), vec![3]);
        assert_eq!(nearest_point_projection(&dm, &path, 2), vec![2]);
    }

    #[test]
    fn retraction_on_trees_and_points() {
        let t = generators::comb(6, 2);
        let dm = distance_matrix(&t).unwrap();
        let spine = PathSeq::new(&t, (0..=6).collect()).unwrap();
        let rc = retraction_constants(&dm, &spine);
        assert_eq!((rc.p, rc.ambiguity), (1, 0));
        let point = PathSeq::trivial(3);
        let rc = retraction_constants(&dm, &point);
        assert_eq!((rc.p, rc.ambiguity), (1, 0));
    }

    #[test]
    fn retraction_on_eight_cycle_has_finite_witness() {
        let c8 = generators::cycle(8);
        let dm = distance_matrix(&c8).unwrap();
        let path = PathSeq::new(&c8, vec![0, 1, 2, 3]).unwrap();
        let rc = retraction_constants(&dm, &path);
        // 5 and 6 are adjacent but retract to opposite ends of the path.
        assert_eq!(rc.ambiguity, 0);
        assert_eq!(rc.p, 2);
        assert_eq!(rc.witness, Some((5, 6)));
    }
}
