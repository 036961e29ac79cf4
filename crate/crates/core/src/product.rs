//! ℓ¹ products of graphs and the pair of diverging quasigeodesics between
//! two product points.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{distance_matrix, DistanceMatrix, Graph, PathSeq, QuasiConstant};
use crate::metric::{is_quasigeodesic, path_hausdorff, QuasigeodesicCheck};

/// `X × Y` with vertex `(x, y)` at id `x·|Y| + y`; edges move one coordinate
/// along one factor edge.
#[derive(Clone, Debug)]
pub struct ProductGraph {
    x: Graph,
    y: Graph,
    z: Graph,
    dx: DistanceMatrix,
    dy: DistanceMatrix,
    dz: DistanceMatrix,
}

pub fn build_product(x: Graph, y: Graph) -> Result<ProductGraph> {
    let dx = distance_matrix(&x)?;
    let dy = distance_matrix(&y)?;
    let ny = y.vertex_count();
    let mut edges = Vec::with_capacity(x.edge_count() * ny + y.edge_count() * x.vertex_count());
    for &(a, b) in x.edges() {
        edges.extend((0..ny).map(|v| (a * ny + v, b * ny + v)));
    }
    for u in 0..x.vertex_count() {
        edges.extend(y.edges().iter().map(|&(a, b)| (u * ny + a, u * ny + b)));
    }
    let z = Graph::new(x.vertex_count() * ny, edges)?;
    let dz = distance_matrix(&z)?;
    Ok(ProductGraph { x, y, z, dx, dy, dz })
}

impl ProductGraph {
    pub fn graph(&self) -> &Graph {
        &self.z
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dz
    }

    pub fn factors(&self) -> (&Graph, &Graph) {
        (&self.x, &self.y)
    }

    pub fn id(&self, x: usize, y: usize) -> usize {
        x * self.y.vertex_count() + y
    }

    pub fn coords(&self, z: usize) -> (usize, usize) {
        let ny = self.y.vertex_count();
        (z / ny, z % ny)
    }

    /// `d_X + d_Y`, computed from the factor tables.
    pub fn l1_distance(&self, a: (usize, usize), b: (usize, usize)) -> u32 {
        self.dx.get(a.0, b.0) + self.dy.get(a.1, b.1)
    }
}

/// Every index pair satisfies `ℓ(γ|[i, j]) ≤ factor·d(γ_i, γ_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthCertificate {
    pub factor: u32,
    pub holds: bool,
    pub worst: Option<(usize, usize)>,
}

pub fn length_certificate(dm: &DistanceMatrix, path: &PathSeq, factor: u32) -> LengthCertificate {
    let v = path.vertices();
    let mut worst: Option<(u64, usize, usize)> = None;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let length = (j - i) as u64;
            let bound = factor as u64 * dm.get(v[i], v[j]) as u64;
            if length > bound && worst.is_none_or(|(e, _, _)| length - bound > e) {
                worst = Some((length - bound, i, j));
            }
        }
    }
    LengthCertificate {
        factor,
        holds: worst.is_none(),
        worst: worst.map(|(_, i, j)| (i, j)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaPaths {
    pub gamma_a: PathSeq,
    pub gamma_b: PathSeq,
    /// `max(d_X, d_Y)` between the endpoints.
    pub certified_hausdorff_lower_bound: u32,
    /// Point of `gamma_b` at distance at least the bound from `gamma_a`.
    pub far_point: usize,
    /// The factors were exchanged because `d_Y > d_X`.
    pub swapped: bool,
    pub gamma_a_check: QuasigeodesicCheck,
    pub gamma_b_check: QuasigeodesicCheck,
    pub gamma_b_length: LengthCertificate,
    pub hausdorff: u32,
}

fn first_geodesic(g: &Graph, dm: &DistanceMatrix, from: usize, to: usize) -> Vec<usize> {
    let mut path = vec![from];
    let mut cur = from;
    while cur != to {
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| dm.get(w, to) + 1 == dm.get(cur, to))
            .expect("connected factor");
        path.push(cur);
    }
    path
}

/// The geodesic `γ_a` along the long factor then the short one, and the
/// 3-quasigeodesic `γ_b` that first runs distance `d` out along the short
/// factor, crosses, and comes back.
///
/// With `d = d_X(x₁, x₂) ≥ d_Y(y₁, y₂)` and `y₃` the smallest vertex at
/// distance `d` from `y₁`:
/// `γ_a = (σ_X, y₁)·(x₂, σ_Y)` and `γ_b = (x₁, τ)·(σ_X, y₃)·(x₂, ω)`, where
/// every factor geodesic is the lexicographically first one.
pub fn lemma_paths(z: &ProductGraph, z1: (usize, usize), z2: (usize, usize)) -> Result<LemmaPaths> {
    z.x.check_vertex(z1.0)?;
    z.x.check_vertex(z2.0)?;
    z.y.check_vertex(z1.1)?;
    z.y.check_vertex(z2.1)?;
    let swapped = z.dy.get(z1.1, z2.1) > z.dx.get(z1.0, z2.0);
    // (long factor, short factor) in the working orientation.
    let (ga, da, gb, db) = if swapped {
        (&z.y, &z.dy, &z.x, &z.dx)
    } else {
        (&z.x, &z.dx, &z.y, &z.dy)
    };
    let (a1, b1, a2, b2) = if swapped {
        (z1.1, z1.0, z2.1, z2.0)
    } else {
        (z1.0, z1.1, z2.0, z2.1)
    };
    let id = |a: usize, b: usize| if swapped { z.id(b, a) } else { z.id(a, b) };

    let d = da.get(a1, a2);
    let b3 = (0..gb.vertex_count())
        .find(|&b| db.get(b1, b) == d)
        .ok_or(Error::EccentricityTooSmall {
            needed: d,
            eccentricity: db.eccentricity(b1),
        })?;

    let sigma_a = first_geodesic(ga, da, a1, a2);
    let sigma_b = first_geodesic(gb, db, b1, b2);
    let tau = first_geodesic(gb, db, b1, b3);
    let omega = first_geodesic(gb, db, b3, b2);

    let mut gamma_a: Vec<usize> = sigma_a.iter().map(|&a| id(a, b1)).collect();
    gamma_a.extend(sigma_b.iter().skip(1).map(|&b| id(a2, b)));
    let mut gamma_b: Vec<usize> = tau.iter().map(|&b| id(a1, b)).collect();
    gamma_b.extend(sigma_a.iter().skip(1).map(|&a| id(a, b3)));
    gamma_b.extend(omega.iter().skip(1).map(|&b| id(a2, b)));

    let gamma_a = PathSeq::new(&z.z, gamma_a)?;
    let gamma_b = PathSeq::new(&z.z, gamma_b)?;
    let three = QuasiConstant::integer(3)?;
    Ok(LemmaPaths {
        gamma_a_check: is_quasigeodesic(&z.dz, &gamma_a, QuasiConstant::one()),
        gamma_b_check: is_quasigeodesic(&z.dz, &gamma_b, three),
        gamma_b_length: length_certificate(&z.dz, &gamma_b, 3),
        hausdorff: path_hausdorff(&z.dz, &gamma_a, &gamma_b),
        certified_hausdorff_lower_bound: d,
        far_point: id(a1, b3),
        swapped,
        gamma_a,
        gamma_b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn small_products() {
        let c4 = build_product(generators::path(2), generators::path(2)).unwrap();
        assert_eq!(c4.graph().edge_count(), 4);
        assert!((0..4).all(|v| c4.graph().neighbors(v).len() == 2));

        let g = build_product(generators::path(5), generators::path(5)).unwrap();
        assert_eq!(g.graph(), &generators::grid(5, 5));
        assert_eq!(g.distances().get(0, 24), 8);

        let prism = build_product(generators::path(2), generators::cycle(4)).unwrap();
        assert_eq!(prism.distances().get(prism.id(0, 0), prism.id(1, 2)), 3);
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(
                    prism.distances().get(a, b),
                    prism.l1_distance(prism.coords(a), prism.coords(b))
                );
            }
        }
    }

    #[test]
    fn degenerate_pair() {
        let z = build_product(generators::path(3), generators::path(3)).unwrap();
        let lp = lemma_paths(&z, (1, 1), (1, 1)).unwrap();
        assert_eq!(
            (
                lp.gamma_a.length(),
                lp.gamma_b.length(),
                lp.certified_hausdorff_lower_bound
            ),
            (0, 0, 0)
        );
    }

    #[test]
    fn opposite_corners_of_five_grid() {
        let z = build_product(generators::path(5), generators::path(5)).unwrap();
        let lp = lemma_paths(&z, (0, 0), (4, 4)).unwrap();
        assert_eq!(lp.gamma_a.length(), 8);
        // y₃ coincides with y₂, so γ_b is the other L-shaped geodesic.
        assert_eq!(lp.gamma_b.length(), 8);
        assert!(lp.gamma_a_check.holds && lp.gamma_b_check.holds && lp.gamma_b_length.holds);
        assert!(lp.hausdorff >= 4);
    }

    #[test]
    fn detour_through_far_corner() {
        let z = build_product(generators::path(5), generators::path(5)).unwrap();
        let lp = lemma_paths(&z, (0, 0), (4, 0)).unwrap();
        assert!(lp.gamma_b.vertices().contains(&z.id(0, 4)));
        assert_eq!(lp.gamma_b.length(), 12);
        assert!(lp.gamma_b_length.holds && lp.gamma_b_check.holds);
        assert_eq!(lp.hausdorff, 4);
    }

    #[test]
    fn swaps_when_second_factor_is_longer() {
        let z = build_product(generators::path(7), generators::path(7)).unwrap();
        let lp = lemma_paths(&z, (0, 0), (1, 5)).unwrap();
        assert!(lp.swapped);
        assert_eq!(lp.certified_hausdorff_lower_bound, 5);
        assert_eq!(lp.far_point, z.id(5, 0));
        assert!(lp.gamma_b_check.holds && lp.gamma_b_length.holds);
        assert!(lp.hausdorff >= 5);
    }

    #[test]
    fn short_factor_needs_eccentricity() {
        let z = build_product(generators::path(6), generators::path(3)).unwrap();
        assert_eq!(
            lemma_paths(&z, (0, 1), (5, 1)).unwrap_err(),
            Error::EccentricityTooSmall {
                needed: 5,
                eccentricity: 1
            }
        );
    }
}
