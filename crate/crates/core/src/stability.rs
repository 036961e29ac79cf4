//! Empirical stability of a subset: enumerate `L`-quasigeodesics between
//! subset points and measure how far apart they can drift.
//!
//! Quasigeodesics are enumerated by depth-first search. Every partial path is
//! kept valid: a new point is checked against all earlier indices in both
//! directions of the quasigeodesic inequality. Two further prunes are sound:
//! the target must stay reachable in the remaining steps, and the lower bound
//! of each earlier index against the target caps the final index.
//!
//! Only images matter for Hausdorff distances, so the maximal pairwise
//! distance over a candidate pool is `max_B max_{w ∈ U} d(w, B)` where `U` is
//! the union of all images; no pair loop is needed.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{distance_matrix, DistanceMatrix, Graph, PathSeq, QuasiConstant};
use crate::metric::{geodesics_between, is_quasigeodesic};

/// Caps for a quasigeodesic search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchLimits {
    /// Longest path (number of steps) considered.
    pub length_cap: usize,
    /// Most paths returned by a full enumeration.
    pub count_cap: usize,
    /// Most DFS node expansions per search.
    pub node_budget: usize,
    /// Whether length-0 steps are generated.
    pub allow_pauses: bool,
}

impl SearchLimits {
    pub fn new(length_cap: usize, count_cap: usize) -> Self {
        Self {
            length_cap,
            count_cap,
            node_budget: count_cap.saturating_mul(64).max(200_000),
            allow_pauses: false,
        }
    }

    pub fn with_pauses(mut self, allow: bool) -> Self {
        self.allow_pauses = allow;
        self
    }

    pub fn with_node_budget(mut self, budget: usize) -> Self {
        self.node_budget = budget;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasigeodesicSet {
    pub paths: Vec<PathSeq>,
    /// The count cap or node budget was hit; `paths` is a sound subset.
    pub overflow: bool,
    pub nodes_expanded: usize,
}

enum Flow {
    Continue,
    Stop,
}

struct Dfs<'a> {
    g: &'a Graph,
    dm: &'a DistanceMatrix,
    k: QuasiConstant,
    target: usize,
    waypoint: Option<usize>,
    allow_pauses: bool,
    node_budget: usize,
    nodes: usize,
    exhausted: bool,
    path: Vec<usize>,
    // effective cap on the final index, per depth
    caps: Vec<usize>,
    // depth at which the waypoint was first reached
    waypoint_depth: Option<usize>,
}

impl<'a> Dfs<'a> {
    fn new(
        g: &'a Graph,
        dm: &'a DistanceMatrix,
        k: QuasiConstant,
        start: usize,
        target: usize,
        waypoint: Option<usize>,
        limits: &SearchLimits,
    ) -> Self {
        let cap = limits.length_cap.min(k.max_span(dm.get(start, target) as u64) as usize);
        Self {
            g,
            dm,
            k,
            target,
            waypoint,
            allow_pauses: limits.allow_pauses,
            node_budget: limits.node_budget,
            nodes: 0,
            exhausted: false,
            path: vec![start],
            caps: vec![cap],
            waypoint_depth: if waypoint == Some(start) { Some(0) } else { None },
        }
    }

    fn goal(&self) -> usize {
        match (self.waypoint, self.waypoint_depth) {
            (Some(w), None) => w,
            _ => self.target,
        }
    }

    fn remaining_needed(&self, v: usize) -> u32 {
        match (self.waypoint, self.waypoint_depth) {
            (Some(w), None) if v != w => self.dm.get(v, w) + self.dm.get(w, self.target),
            _ => self.dm.get(v, self.target),
        }
    }

    /// Cap on the final index if `w` is appended, or `None` when the
    /// extension is invalid or cannot be completed.
    fn admissible(&self, w: usize) -> Option<usize> {
        let t = self.path.len();
        let row = self.dm.row(w);
        for (s, &ps) in self.path.iter().enumerate() {
            let span = (t - s) as u64;
            let d = row[ps] as u64;
            if self.k.lower_excess(span, d) > 0 || self.k.upper_excess(span, d) > 0 {
                return None;
            }
        }
        let cap = (*self.caps.last().unwrap()).min(t + self.k.max_span(row[self.target] as u64) as usize);
        if cap < t {
            return None;
        }
        let needed = if self.waypoint_depth.is_none() && self.waypoint == Some(w) {
            row[self.target]
        } else {
            self.remaining_needed(w)
        };
        (needed as usize <= cap - t).then_some(cap)
    }

    fn run(&mut self, emit: &mut dyn FnMut(&[usize]) -> Flow) -> Flow {
        let cur = *self.path.last().unwrap();
        if cur == self.target && self.waypoint_depth.is_some() || cur == self.target && self.waypoint.is_none() {
            if let Flow::Stop = emit(&self.path) {
                return Flow::Stop;
            }
        }
        if self.nodes >= self.node_budget {
            self.exhausted = true;
            return Flow::Stop;
        }
        self.nodes += 1;
        let goal = self.goal();
        let mut candidates: Vec<usize> = self.g.neighbors(cur).to_vec();
        if self.allow_pauses {
            candidates.push(cur);
        }
        candidates.sort_by_key(|&w| (self.dm.get(w, goal), w));
        for w in candidates {
            let Some(cap) = self.admissible(w) else { continue };
            self.path.push(w);
            self.caps.push(cap);
            let reached = self.waypoint_depth.is_none() && self.waypoint == Some(w);
            if reached {
                self.waypoint_depth = Some(self.path.len() - 1);
            }
            let flow = self.run(emit);
            if reached {
                self.waypoint_depth = None;
            }
            self.path.pop();
            self.caps.pop();
            if let Flow::Stop = flow {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }
}

fn check_endpoints(g: &Graph, dm: &DistanceMatrix, u: usize, v: usize, length_cap: usize) -> Result<()> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let distance = dm.get(u, v) as usize;
    if length_cap < distance {
        return Err(Error::CapBelowDistance {
            cap: length_cap,
            distance,
        });
    }
    Ok(())
}

/// All `k`-quasigeodesics from `u` to `v` with at most `length_cap` steps, in
/// DFS order (neighbours nearest the target first, then by id), up to
/// `count_cap` paths.
pub fn enumerate_quasigeodesics(
    g: &Graph,
    dm: &DistanceMatrix,
    u: usize,
    v: usize,
    k: QuasiConstant,
    limits: &SearchLimits,
) -> Result<QuasigeodesicSet> {
    check_endpoints(g, dm, u, v, limits.length_cap)?;
    let mut dfs = Dfs::new(g, dm, k, u, v, None, limits);
    let mut paths = Vec::new();
    let mut overflow = false;
    let cap = limits.count_cap;
    dfs.run(&mut |p: &[usize]| {
        if paths.len() == cap {
            overflow = true;
            return Flow::Stop;
        }
        paths.push(PathSeq::from_vec_unchecked(p.to_vec()));
        Flow::Continue
    });
    Ok(QuasigeodesicSet {
        paths,
        overflow: overflow || dfs.exhausted,
        nodes_expanded: dfs.nodes,
    })
}

/// First `k`-quasigeodesic from `u` to `v` passing through `waypoint`, found
/// by a DFS that heads for the waypoint first. `Ok(None)` when none exists
/// within the caps or the node budget ran out.
pub fn quasigeodesic_through(
    g: &Graph,
    dm: &DistanceMatrix,
    u: usize,
    v: usize,
    waypoint: usize,
    k: QuasiConstant,
    limits: &SearchLimits,
) -> Result<Option<PathSeq>> {
    check_endpoints(g, dm, u, v, limits.length_cap)?;
    g.check_vertex(waypoint)?;
    let mut dfs = Dfs::new(g, dm, k, u, v, Some(waypoint), limits);
    let mut found = None;
    dfs.run(&mut |p: &[usize]| {
        found = Some(PathSeq::from_vec_unchecked(p.to_vec()));
        Flow::Stop
    });
    Ok(found)
}

/// Node budget for each waypoint probe.
pub const WAYPOINT_BUDGET: usize = 4_096;

/// Verified `k`-quasigeodesics from `u` to `v`, deduplicated by image.
#[derive(Clone, Debug)]
pub(crate) struct CandidatePool {
    pub paths: Vec<PathSeq>,
    pub images: Vec<Vec<usize>>,
    pub lower_bound: bool,
}

/// Geodesics, the capped enumeration and any seeds. When the enumeration
/// overflows, a waypoint probe is added for every vertex not yet covered so
/// the pool's union of images is not confined to one corner of the DFS tree.
pub(crate) fn candidate_pool(
    g: &Graph,
    dm: &DistanceMatrix,
    u: usize,
    v: usize,
    k: QuasiConstant,
    limits: &SearchLimits,
    seeds: &[PathSeq],
) -> Result<CandidatePool> {
    let geodesics = geodesics_between(g, dm, u, v, limits.count_cap.max(1))?;
    let enumerated = enumerate_quasigeodesics(g, dm, u, v, k, limits)?;
    let mut pool = CandidatePool {
        paths: Vec::new(),
        images: Vec::new(),
        lower_bound: enumerated.overflow,
    };
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut covered = vec![false; g.vertex_count()];
    let mut add = |p: PathSeq, pool: &mut CandidatePool, covered: &mut Vec<bool>| {
        let image = p.image();
        if !seen.contains_key(&image) {
            for &w in &image {
                covered[w] = true;
            }
            seen.insert(image.clone(), pool.paths.len());
            pool.paths.push(p);
            pool.images.push(image);
        }
    };
    for p in geodesics.paths.into_iter().chain(enumerated.paths) {
        add(p, &mut pool, &mut covered);
    }
    for s in seeds {
        let oriented = if s.start() == u { s.clone() } else { s.reversed() };
        add(oriented, &mut pool, &mut covered);
    }
    if enumerated.overflow {
        let probe_limits = limits.with_node_budget(WAYPOINT_BUDGET);
        let slack = limits.length_cap as u32;
        let targets: Vec<usize> = (0..g.vertex_count())
            .filter(|&w| !covered[w] && dm.get(u, w) + dm.get(w, v) <= slack)
            .collect();
        let found: Vec<Option<PathSeq>> = targets
            .par_iter()
            .map(|&w| quasigeodesic_through(g, dm, u, v, w, k, &probe_limits))
            .collect::<Result<_>>()?;
        for p in found.into_iter().flatten() {
            add(p, &mut pool, &mut covered);
        }
    }
    Ok(pool)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivergentWitness {
    pub endpoints: (usize, usize),
    pub first: PathSeq,
    pub second: PathSeq,
    /// Vertex of `first` at distance `r_observed` from `second`.
    pub far_point: usize,
}

/// Largest Hausdorff distance within the pool, with a witnessing pair.
pub(crate) fn pool_spread(dm: &DistanceMatrix, pool: &CandidatePool) -> (u32, usize, usize, usize) {
    let mut union: Vec<usize> = pool.images.iter().flatten().copied().collect();
    union.sort_unstable();
    union.dedup();
    let mut best = (0u32, 0usize, 0usize, pool.paths.first().map_or(0, |p| p.start()));
    for (bi, image) in pool.images.iter().enumerate() {
        let mut to_b = vec![u32::MAX; union.len()];
        for &b in image {
            let row = dm.row(b);
            for (slot, &w) in to_b.iter_mut().zip(&union) {
                *slot = (*slot).min(row[w]);
            }
        }
        if let Some((pos, &r)) = to_b.iter().enumerate().max_by_key(|&(i, &r)| (r, std::cmp::Reverse(i))) {
            if r > best.0 {
                let far = union[pos];
                let ai = pool
                    .images
                    .iter()
                    .position(|img| img.binary_search(&far).is_ok())
                    .unwrap();
                best = (r, ai, bi, far);
            }
        }
    }
    best
}

/// A subset of an ambient graph together with an intrinsic graph on it.
#[derive(Clone, Debug)]
pub struct EmbeddedSubset {
    ambient: Graph,
    ambient_dm: DistanceMatrix,
    intrinsic: Graph,
    /// Intrinsic vertex `i` corresponds to ambient vertex `correspondence[i]`.
    correspondence: Vec<usize>,
}

impl EmbeddedSubset {
    /// Uses the induced subgraph as the intrinsic graph.
    pub fn induced(ambient: Graph, subset: &[usize]) -> Result<Self> {
        let (intrinsic, correspondence) = ambient.induced_subgraph(subset)?;
        let ambient_dm = distance_matrix(&ambient)?;
        Ok(Self {
            ambient,
            ambient_dm,
            intrinsic,
            correspondence,
        })
    }

    pub fn with_intrinsic(ambient: Graph, intrinsic: Graph, correspondence: Vec<usize>) -> Result<Self> {
        if correspondence.len() != intrinsic.vertex_count() {
            return Err(Error::InvalidSubset(
                "correspondence must cover every intrinsic vertex".into(),
            ));
        }
        let mut sorted = correspondence.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubset("correspondence is not injective".into()));
        }
        for &v in &correspondence {
            ambient.check_vertex(v)?;
        }
        let ambient_dm = distance_matrix(&ambient)?;
        Ok(Self {
            ambient,
            ambient_dm,
            intrinsic,
            correspondence,
        })
    }

    pub fn ambient(&self) -> &Graph {
        &self.ambient
    }

    pub fn ambient_distances(&self) -> &DistanceMatrix {
        &self.ambient_dm
    }

    pub fn intrinsic(&self) -> &Graph {
        &self.intrinsic
    }

    pub fn correspondence(&self) -> &[usize] {
        &self.correspondence
    }

    /// Ambient ids of the subset, sorted.
    pub fn subset(&self) -> Vec<usize> {
        let mut s = self.correspondence.clone();
        s.sort_unstable();
        s
    }

    /// Largest ambient distance between two subset points.
    pub fn subset_diameter(&self) -> u32 {
        let s = self.subset();
        s.iter()
            .flat_map(|&a| s.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.ambient_dm.get(a, b))
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityProfile {
    #[serde(rename = "L")]
    pub l: QuasiConstant,
    pub limits: SearchLimits,
    pub r_observed: u32,
    pub endpoint_pairs_tested: usize,
    /// Some enumeration was truncated: `r_observed` is a lower bound.
    pub lower_bound: bool,
    pub candidates_examined: usize,
    pub divergent_witness: Option<DivergentWitness>,
}

fn validate_seed(s: &EmbeddedSubset, l: QuasiConstant, limits: &SearchLimits, seed: &PathSeq) -> Result<()> {
    let checked = PathSeq::new(&s.ambient, seed.vertices().to_vec()).map_err(|e| Error::InvalidSeed(e.to_string()))?;
    let subset = s.subset();
    let (a, b) = (checked.start(), checked.end());
    if a == b || subset.binary_search(&a).is_err() || subset.binary_search(&b).is_err() {
        return Err(Error::InvalidSeed(format!(
            "endpoints {a}, {b} are not two distinct subset points"
        )));
    }
    if checked.length() > limits.length_cap {
        return Err(Error::InvalidSeed(format!(
            "length {} exceeds the length cap",
            checked.length()
        )));
    }
    if !is_quasigeodesic(&s.ambient_dm, &checked, l).holds {
        return Err(Error::InvalidSeed(format!("not an {l}-quasigeodesic")));
    }
    Ok(())
}

/// Largest Hausdorff distance between two observed `l`-quasigeodesics that
/// join the same pair of distinct subset points.
///
/// `seeds` are extra candidate paths (for instance explicit constructions);
/// each must be a valid `l`-quasigeodesic between two subset points.
pub fn stability_profile(
    s: &EmbeddedSubset,
    l: QuasiConstant,
    limits: &SearchLimits,
    seeds: &[PathSeq],
) -> Result<StabilityProfile> {
    let subset = s.subset();
    if subset.len() < 2 {
        return Err(Error::InvalidSubset("need at least two subset vertices".into()));
    }
    for seed in seeds {
        validate_seed(s, l, limits, seed)?;
    }
    let pairs: Vec<(usize, usize)> = subset
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| subset[i + 1..].iter().map(move |&b| (a, b)))
        .collect();
    let results: Vec<(u32, bool, usize, Option<DivergentWitness>)> = pairs
        .par_iter()
        .map(|&(u, v)| {
            let local: Vec<PathSeq> = seeds
                .iter()
                .filter(|p| (p.start(), p.end()) == (u, v) || (p.start(), p.end()) == (v, u))
                .cloned()
                .collect();
            let pool = candidate_pool(&s.ambient, &s.ambient_dm, u, v, l, limits, &local)?;
            let (r, ai, bi, far) = pool_spread(&s.ambient_dm, &pool);
            let witness = DivergentWitness {
                endpoints: (u, v),
                first: pool.paths[ai].clone(),
                second: pool.paths[bi].clone(),
                far_point: far,
            };
            Ok((r, pool.lower_bound, pool.paths.len(), Some(witness)))
        })
        .collect::<Result<_>>()?;
    let mut profile = StabilityProfile {
        l,
        limits: *limits,
        r_observed: 0,
        endpoint_pairs_tested: pairs.len(),
        lower_bound: false,
        candidates_examined: 0,
        divergent_witness: None,
    };
    for (r, lower, count, witness) in results {
        profile.lower_bound |= lower;
        profile.candidates_examined += count;
        if profile.divergent_witness.is_none() || r > profile.r_observed {
            profile.r_observed = r;
            profile.divergent_witness = witness;
        }
    }
    Ok(profile)
}

/// Profiles whose `r_observed` spread stays within this are called bounded.
pub const BOUNDED_SPREAD: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Growth {
    Bounded,
    Growing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityTrend {
    pub profiles: Vec<StabilityProfile>,
    pub spread: u32,
    pub growth: Growth,
    /// Thresholds are a reporting policy, not a decision procedure.
    pub policy: String,
}

pub fn classify_growth(values: &[u32]) -> (u32, Growth) {
    let spread = match (values.iter().min(), values.iter().max()) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => 0,
    };
    (
        spread,
        if spread <= BOUNDED_SPREAD {
            Growth::Bounded
        } else {
            Growth::Growing
        },
    )
}

/// Profiles over increasing length caps, classified as bounded or growing.
pub fn stability_trend(
    s: &EmbeddedSubset,
    l: QuasiConstant,
    length_caps: &[usize],
    count_cap: usize,
    seeds: &[PathSeq],
) -> Result<StabilityTrend> {
    let profiles = length_caps
        .iter()
        .map(|&cap| stability_profile(s, l, &SearchLimits::new(cap, count_cap), seeds))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<u32> = profiles.iter().map(|p| p.r_observed).collect();
    let (spread, growth) = classify_growth(&values);
    Ok(StabilityTrend {
        profiles,
        spread,
        growth,
        policy: format!("bounded iff max-min of r_observed <= {BOUNDED_SPREAD}"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub graph: Graph,
    /// Original vertex `i` becomes `correspondence[i]` (the identity).
    pub correspondence: Vec<usize>,
}

/// Replaces every edge by a path of `k` edges. Original vertices keep their
/// ids; the `k − 1` new vertices of the `e`-th canonical edge get ids
/// `n + e·(k−1) .. n + (e+1)·(k−1)`.
pub fn subdivide(g: &Graph, k: usize) -> Result<Subdivision> {
    if k == 0 {
        return Err(Error::InvalidConstant("subdivision factor must be at least 1".into()));
    }
    let n = g.vertex_count();
    let mut edges = Vec::with_capacity(g.edge_count() * k);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let mut prev = u;
        for j in 0..k - 1 {
            let mid = n + e * (k - 1) + j;
            edges.push((prev, mid));
            prev = mid;
        }
        edges.push((prev, v));
    }
    Ok(Subdivision {
        graph: Graph::new(n + g.edge_count() * (k - 1), edges)?,
        correspondence: (0..n).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Distortion {
    /// `intrinsic / ambient` as an exact fraction.
    pub intrinsic: u32,
    pub ambient: u32,
    pub ratio: f64,
    /// Intrinsic vertex pair realising the ratio.
    pub witness: Option<(usize, usize)>,
}

/// Largest ratio of intrinsic to ambient distance over subset pairs.
pub fn distortion_profile(s: &EmbeddedSubset) -> Result<Distortion> {
    let idm = distance_matrix(&s.intrinsic)?;
    let n = s.intrinsic.vertex_count();
    let mut best = Distortion {
        intrinsic: 1,
        ambient: 1,
        ratio: 1.0,
        witness: None,
    };
    for i in 0..n {
        for j in i + 1..n {
            let di = idm.get(i, j);
            let da = s.ambient_dm.get(s.correspondence[i], s.correspondence[j]);
            if (di as u64) * (best.ambient as u64) > (best.intrinsic as u64) * (da as u64) {
                best = Distortion {
                    intrinsic: di,
                    ambient: da,
                    ratio: di as f64 / da as f64,
                    witness: Some((i, j)),
                };
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::metric::path_hausdorff;

    fn k(n: u64) -> QuasiConstant {
        QuasiConstant::integer(n).unwrap()
    }

    #[test]
    fn trivial_enumeration() {
        let g = generators::path(3);
        let dm = distance_matrix(&g).unwrap();
        let set = enumerate_quasigeodesics(&g, &dm, 1, 1, k(1), &SearchLimits::new(0, 10)).unwrap();
        assert_eq!(set.paths, vec![PathSeq::trivial(1)]);
        assert!(!set.overflow);
        let err = enumerate_quasigeodesics(&g, &dm, 0, 2, k(1), &SearchLimits::new(1, 10)).unwrap_err();
        assert_eq!(err, Error::CapBelowDistance { cap: 1, distance: 2 });
    }

    #[test]
    fn enumeration_on_p4_stays_near_the_geodesic() {
        let g = generators::path(4);
        let dm = distance_matrix(&g).unwrap();
        let set = enumerate_quasigeodesics(&g, &dm, 0, 3, k(1), &SearchLimits::new(5, 100)).unwrap();
        let geodesic = PathSeq::new(&g, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(set.paths[0], geodesic);
        for p in &set.paths {
            assert!(is_quasigeodesic(&dm, p, k(1)).holds);
            assert!(path_hausdorff(&dm, p, &geodesic) <= 1);
        }
    }

    #[test]
    fn pauses_are_generated_when_requested() {
        let g = generators::path(3);
        let dm = distance_matrix(&g).unwrap();
        let limits = SearchLimits::new(3, 100).with_pauses(true);
        let set = enumerate_quasigeodesics(&g, &dm, 0, 2, k(1), &limits).unwrap();
        let got: Vec<Vec<usize>> = set.paths.iter().map(|p| p.vertices().to_vec()).collect();
        assert!(got.contains(&vec![0, 0, 1, 2]));
        assert!(got.contains(&vec![0, 1, 2, 2]));
        assert!(!got.contains(&vec![0, 0, 0, 1, 2]));
    }

    #[test]
    fn count_cap_sets_overflow() {
        let g = generators::grid(4, 4);
        let dm = distance_matrix(&g).unwrap();
        let set = enumerate_quasigeodesics(&g, &dm, 0, 15, k(3), &SearchLimits::new(12, 50)).unwrap();
        assert!(set.overflow);
        assert_eq!(set.paths.len(), 50);
    }

    #[test]
    fn waypoint_probe_reaches_far_corner() {
        let g = generators::grid(4, 4);
        let dm = distance_matrix(&g).unwrap();
        let p = quasigeodesic_through(&g, &dm, 0, 15, 12, k(1), &SearchLimits::new(6, 10))
            .unwrap()
            .unwrap();
        assert_eq!(p.vertices(), &[0, 4, 8, 12, 13, 14, 15]);
        assert!(
            quasigeodesic_through(&g, &dm, 0, 5, 15, k(1), &SearchLimits::new(6, 10))
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn subdivision_scales_distances() {
        let p2 = generators::path(2);
        let s = subdivide(&p2, 3).unwrap();
        assert_eq!(s.graph.vertex_count(), 4);
        assert_eq!(distance_matrix(&s.graph).unwrap().get(0, 1), 3);
        let c4 = generators::cycle(4);
        let s = subdivide(&c4, 2).unwrap();
        assert_eq!(s.graph.vertex_count(), 8);
        assert!(s.graph.neighbors(0).len() == 2 && s.graph.edge_count() == 8);
        assert_eq!(subdivide(&c4, 1).unwrap().graph, c4);
        assert!(subdivide(&c4, 0).is_err());
    }

    #[test]
    fn cut_cycle_distortion() {
        for n in 3..7 {
            let cycle = generators::cycle(2 * n);
            let cut = generators::path(2 * n);
            let s = EmbeddedSubset::with_intrinsic(cycle, cut, (0..2 * n).collect()).unwrap();
            let d = distortion_profile(&s).unwrap();
            assert_eq!((d.intrinsic, d.ambient), (2 * n as u32 - 1, 1));
            assert_eq!(d.witness, Some((0, 2 * n - 1)));
        }
    }

    #[test]
    fn convex_tree_subset_is_undistorted() {
        let t = generators::comb(5, 2);
        let s = EmbeddedSubset::induced(t, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(distortion_profile(&s).unwrap().ratio, 1.0);
        let disconnected = EmbeddedSubset::induced(generators::path(5), &[0, 4]).unwrap();
        assert_eq!(distortion_profile(&disconnected).unwrap_err(), Error::NotConnected);
    }

    #[test]
    fn bad_seeds_are_rejected() {
        let g = generators::grid(3, 3);
        let s = EmbeddedSubset::induced(g.clone(), &[0, 8]).unwrap();
        let limits = SearchLimits::new(8, 100);
        let not_endpoints = PathSeq::new(&g, vec![0, 1, 2]).unwrap();
        assert!(matches!(
            stability_profile(&s, k(1), &limits, &[not_endpoints]),
            Err(Error::InvalidSeed(_))
        ));
        let wiggly = PathSeq::new(&g, vec![0, 1, 0, 1, 2, 5, 8]).unwrap();
        assert!(matches!(
            stability_profile(&s, k(1), &limits, &[wiggly]),
            Err(Error::InvalidSeed(_))
        ));
    }

    #[test]
    fn single_point_subsets_are_rejected() {
        let s = EmbeddedSubset::induced(generators::path(3), &[1]).unwrap();
        assert!(stability_profile(&s, k(1), &SearchLimits::new(4, 10), &[]).is_err());
    }
}
