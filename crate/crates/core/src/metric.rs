//! Exact metric computations on finite graphs: geodesic enumeration,
//! quasigeodesic certification, Hausdorff distance, quasiconvexity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph, PathSeq, QuasiConstant};

/// Geodesics between two vertices, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeodesicSet {
    pub paths: Vec<PathSeq>,
    /// More than `cap` geodesics exist; `paths` holds the first `cap`.
    pub overflow: bool,
}

/// Enumerates geodesics from `u` to `v` in lexicographic order, keeping at
/// most `cap` of them.
pub fn geodesics_between(g: &Graph, dm: &DistanceMatrix, u: usize, v: usize, cap: usize) -> Result<GeodesicSet> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let distance = dm.get(u, v) as usize;
    if cap < distance {
        return Err(Error::CapBelowDistance { cap, distance });
    }
    let mut out = GeodesicSet {
        paths: Vec::new(),
        overflow: false,
    };
    let mut stack = vec![u];
    descend(g, dm, v, cap, &mut stack, &mut out);
    Ok(out)
}

// Returns false once the cap has been exceeded.
fn descend(
    g: &Graph,
    dm: &DistanceMatrix,
    target: usize,
    cap: usize,
    stack: &mut Vec<usize>,
    out: &mut GeodesicSet,
) -> bool {
    let cur = *stack.last().expect("stack is never empty");
    let remaining = dm.get(cur, target);
    if remaining == 0 {
        if out.paths.len() == cap {
            out.overflow = true;
            return false;
        }
        out.paths.push(PathSeq::from_vec_unchecked(stack.clone()));
        return true;
    }
    for &w in g.neighbors(cur) {
        if dm.get(w, target) + 1 == remaining {
            stack.push(w);
            let keep_going = descend(g, dm, target, cap, stack, out);
            stack.pop();
            if !keep_going {
                return false;
            }
        }
    }
    true
}

/// Exact number of geodesics from `u` to `v` (saturating).
pub fn geodesic_count(g: &Graph, dm: &DistanceMatrix, u: usize, v: usize) -> u128 {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n)
        .filter(|&w| dm.get(u, w) + dm.get(w, v) == dm.get(u, v))
        .collect();
    order.sort_by_key(|&w| dm.get(u, w));
    let mut count = vec![0u128; n];
    count[u] = 1;
    for &w in &order {
        if w == u {
            continue;
        }
        let dw = dm.get(u, w);
        count[w] = g
            .neighbors(w)
            .iter()
            .filter(|&&p| dm.get(u, p) + 1 == dw)
            .fold(0u128, |acc, &p| acc.saturating_add(count[p]));
    }
    count[v]
}

/// Which side of the quasigeodesic inequality failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub bound: Bound,
    pub distance: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasigeodesicCheck {
    pub holds: bool,
    /// Largest violation, ties broken by shortest span and then smallest `i`.
    pub worst: Option<Violation>,
}

/// Checks `|i−j|/K − K ≤ d(p(i), p(j)) ≤ K·|i−j| + K` for all index pairs.
pub fn is_quasigeodesic(dm: &DistanceMatrix, path: &PathSeq, k: QuasiConstant) -> QuasigeodesicCheck {
    let verts = path.vertices();
    let mut worst: Option<(i128, usize, usize, Bound, u32)> = None;
    for i in 0..verts.len() {
        let row = dm.row(verts[i]);
        for (j, &vj) in verts.iter().enumerate().skip(i + 1) {
            let span = (j - i) as u64;
            let d = row[vj];
            for (bound, excess) in [
                (Bound::Lower, k.lower_excess(span, d as u64)),
                (Bound::Upper, k.upper_excess(span, d as u64)),
            ] {
                if excess <= 0 {
                    continue;
                }
                let better = match worst {
                    None => true,
                    Some((e, wi, wj, _, _)) => excess > e || (excess == e && (j - i) < (wj - wi)),
                };
                if better {
                    worst = Some((excess, i, j, bound, d));
                }
            }
        }
    }
    QuasigeodesicCheck {
        holds: worst.is_none(),
        worst: worst.map(|(_, i, j, bound, distance)| Violation { i, j, bound, distance }),
    }
}

/// `max_{a∈A} d(a, B)`.
pub fn directed_hausdorff(dm: &DistanceMatrix, a: &[usize], b: &[usize]) -> u32 {
    a.iter().map(|&x| dm.distance_to_set(x, b)).max().unwrap_or(0)
}

/// Smallest `ε` with `A ⊆ N_ε(B)` and `B ⊆ N_ε(A)`.
pub fn hausdorff_distance(dm: &DistanceMatrix, a: &[usize], b: &[usize]) -> Result<u32> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(directed_hausdorff(dm, a, b).max(directed_hausdorff(dm, b, a)))
}

/// Hausdorff distance between the images of two paths.
pub fn path_hausdorff(dm: &DistanceMatrix, a: &PathSeq, b: &PathSeq) -> u32 {
    let (ia, ib) = (a.image(), b.image());
    directed_hausdorff(dm, &ia, &ib).max(directed_hausdorff(dm, &ib, &ia))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quasiconvexity {
    pub constant: u32,
    /// `(c1, c2, w)`: `w` lies on a geodesic from `c1` to `c2` at distance
    /// `constant` from the set.
    pub witness: Option<(usize, usize, usize)>,
}

/// Minimal `K` such that every geodesic between points of `set` stays in the
/// closed `K`-neighbourhood of `set`.
///
/// A vertex `w` lies on some geodesic from `c1` to `c2` exactly when
/// `d(c1,w) + d(w,c2) = d(c1,c2)`, so no geodesic is enumerated.
pub fn quasiconvexity_constant(dm: &DistanceMatrix, set: &[usize]) -> Result<Quasiconvexity> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut members = set.to_vec();
    members.sort_unstable();
    members.dedup();
    let n = dm.vertex_count();
    let to_set: Vec<u32> = (0..n).map(|w| dm.distance_to_set(w, &members)).collect();
    let mut best = Quasiconvexity {
        constant: 0,
        witness: None,
    };
    for (a, &c1) in members.iter().enumerate() {
        for &c2 in &members[a + 1..] {
            let d12 = dm.get(c1, c2);
            for (w, &far) in to_set.iter().enumerate() {
                if dm.get(c1, w) + dm.get(w, c2) == d12 && far > best.constant {
                    best = Quasiconvexity {
                        constant: far,
                        witness: Some((c1, c2, w)),
                    };
                }
            }
        }
    }
    Ok(best)
}
