//! Contracting path families: the three contraction conditions, the
//! fellow-travel radius of quasigeodesics, and ball-projection diameters.
//!
//! All diameters are ambient diameters of a path's image over an index
//! interval, read from a per-path table `seg[i][j] = diam β([i, j])`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{distance_matrix, DistanceMatrix, Graph, PathSeq, QuasiConstant};
use crate::stability::{candidate_pool, SearchLimits};

/// Nearest index of `path` to every vertex, smallest index on ties.
pub fn domain_projection(dm: &DistanceMatrix, path: &PathSeq) -> Vec<usize> {
    let verts = path.vertices();
    (0..dm.vertex_count())
        .map(|x| {
            let row = dm.row(x);
            (0..verts.len())
                .min_by_key(|&i| (row[verts[i]], i))
                .expect("nonempty path")
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct ContractingFamily {
    ambient: Graph,
    dm: DistanceMatrix,
    paths: Vec<PathSeq>,
    projections: Vec<Vec<usize>>,
    endpoints: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    paths: Vec<Vec<usize>>,
    #[serde(default)]
    projections: Vec<Option<Vec<usize>>>,
    #[serde(default)]
    endpoints: Option<Vec<usize>>,
}

impl ContractingFamily {
    /// Family with nearest-point projections. `endpoints` defaults to the set
    /// of path endpoints.
    pub fn new(ambient: Graph, paths: Vec<PathSeq>, endpoints: Option<Vec<usize>>) -> Result<Self> {
        let none = vec![None; paths.len()];
        Self::with_projections(ambient, paths, none, endpoints)
    }

    /// Family with explicit projection tables; `None` entries default to the
    /// nearest-point projection.
    pub fn with_projections(
        ambient: Graph,
        paths: Vec<PathSeq>,
        projections: Vec<Option<Vec<usize>>>,
        endpoints: Option<Vec<usize>>,
    ) -> Result<Self> {
        let dm = distance_matrix(&ambient)?;
        if projections.len() > paths.len() {
            return Err(Error::InvalidFamily("more projection tables than paths".into()));
        }
        let mut tables = Vec::with_capacity(paths.len());
        for (i, p) in paths.iter().enumerate() {
            let p = PathSeq::new(&ambient, p.vertices().to_vec())?;
            match projections.get(i).cloned().flatten() {
                Some(t) => {
                    if t.len() != ambient.vertex_count() || t.iter().any(|&j| j >= p.len()) {
                        return Err(Error::InvalidFamily(format!(
                            "projection table {i} is not a total map into the path"
                        )));
                    }
                    tables.push(t);
                }
                None => tables.push(domain_projection(&dm, &p)),
            }
        }
        let endpoints: Vec<usize> = match endpoints {
            Some(e) => e.into_iter().collect::<BTreeSet<_>>().into_iter().collect(),
            None => paths
                .iter()
                .flat_map(|p| [p.start(), p.end()])
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        };
        let joined: BTreeSet<(usize, usize)> = paths
            .iter()
            .map(|p| (p.start().min(p.end()), p.start().max(p.end())))
            .collect();
        for (i, &a) in endpoints.iter().enumerate() {
            ambient.check_vertex(a)?;
            for &b in &endpoints[i + 1..] {
                if !joined.contains(&(a, b)) {
                    return Err(Error::InvalidFamily(format!(
                        "no family path joins endpoints {a} and {b}"
                    )));
                }
            }
        }
        Ok(Self {
            ambient,
            dm,
            paths,
            projections: tables,
            endpoints,
        })
    }

    /// Parses `{"paths": [[..]], "projections": [null | [..]], "endpoints": [..]}`.
    pub fn from_json(ambient: Graph, text: &str) -> Result<Self> {
        let file: FamilyFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let paths = file
            .paths
            .into_iter()
            .map(|v| PathSeq::new(&ambient, v))
            .collect::<Result<Vec<_>>>()?;
        Self::with_projections(ambient, paths, file.projections, file.endpoints)
    }

    pub fn ambient(&self) -> &Graph {
        &self.ambient
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dm
    }

    pub fn paths(&self) -> &[PathSeq] {
        &self.paths
    }

    pub fn projection(&self, path: usize) -> &[usize] {
        &self.projections[path]
    }

    pub fn endpoints(&self) -> &[usize] {
        &self.endpoints
    }

    fn segment_table(&self, path: usize) -> SegmentDiameters {
        SegmentDiameters::new(&self.dm, &self.paths[path])
    }
}

struct SegmentDiameters {
    len: usize,
    table: Vec<u32>,
}

impl SegmentDiameters {
    fn new(dm: &DistanceMatrix, path: &PathSeq) -> Self {
        let v = path.vertices();
        let len = v.len();
        let mut table = vec![0u32; len * len];
        for span in 1..len {
            for i in 0..len - span {
                let j = i + span;
                let best = table[i * len + j - 1]
                    .max(table[(i + 1) * len + j])
                    .max(dm.get(v[i], v[j]));
                table[i * len + j] = best;
            }
        }
        Self { len, table }
    }

    fn diam(&self, i: usize, j: usize) -> u32 {
        self.table[i.min(j) * self.len + i.max(j)]
    }
}

/// `b` of the contraction constants: a fraction in `(0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(into = "String")]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 || num > den {
            return Err(Error::InvalidConstant(format!("b = {num}/{den} must lie in (0, 1]")));
        }
        let g = crate::graph::gcd(num, den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl From<Fraction> for String {
    fn from(b: Fraction) -> String {
        b.to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionConstants {
    pub a: u32,
    pub b: Fraction,
    pub c: u32,
}

impl ContractionConstants {
    pub fn new(a: u32, b: Fraction, c: u32) -> Result<Self> {
        if a == 0 || c == 0 {
            return Err(Error::InvalidConstant("a and c must be positive".into()));
        }
        Ok(Self { a, b, c })
    }
}

impl FromStr for ContractionConstants {
    type Err = Error;

    /// `a,b,c` with `b` written as `n` or `n/d`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected `a,b,c`, got `{s}`"));
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [a, b, c] = parts[..] else { return Err(bad()) };
        let (bn, bd) = match b.split_once('/') {
            Some((n, d)) => (n.parse().map_err(|_| bad())?, d.parse().map_err(|_| bad())?),
            None => (b.parse().map_err(|_| bad())?, 1),
        };
        Self::new(
            a.parse().map_err(|_| bad())?,
            Fraction::new(bn, bd)?,
            c.parse().map_err(|_| bad())?,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionWitness {
    pub path: usize,
    pub x: usize,
    pub y: usize,
    /// Index interval of the path whose image is too large.
    pub interval: (usize, usize),
    pub diameter: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionResult {
    pub holds: bool,
    pub witness: Option<ConditionWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionReport {
    pub constants: ContractionConstants,
    pub passes: bool,
    /// Conditions (1), (2), (3) in order.
    pub conditions: [ConditionResult; 3],
}

fn first_violation(
    family: &ContractingFamily,
    path: usize,
    seg: &SegmentDiameters,
    k: &ContractionConstants,
) -> [Option<ConditionWitness>; 3] {
    let pi = &family.projections[path];
    let verts = family.paths[path].vertices();
    let dm = &family.dm;
    let n = family.ambient.vertex_count();
    let witness = |x, y, i: usize, j: usize| {
        let d = seg.diam(i, j);
        (d > k.c).then_some(ConditionWitness {
            path,
            x,
            y,
            interval: (i.min(j), i.max(j)),
            diameter: d,
        })
    };
    let first = (0..verts.len()).find_map(|t| witness(verts[t], verts[t], t, pi[verts[t]]));
    let second = (0..n).find_map(|x| {
        family
            .ambient
            .neighbors(x)
            .iter()
            .filter(|&&y| y > x)
            .find_map(|&y| witness(x, y, pi[x], pi[y]))
    });
    let third = (0..n).find_map(|x| {
        let reach = dm.get(x, verts[pi[x]]) as u64;
        if reach < k.a as u64 {
            return None;
        }
        let row = dm.row(x);
        (0..n)
            .filter(|&y| row[y] as u64 * k.b.den <= k.b.num * reach)
            .find_map(|y| witness(x, y, pi[x], pi[y]))
    });
    [first, second, third]
}

/// Checks the three contraction conditions on every path of the family,
/// reporting the first violation per condition in (path, x, y) order.
pub fn check_contraction(family: &ContractingFamily, k: ContractionConstants) -> ContractionReport {
    let per_path: Vec<[Option<ConditionWitness>; 3]> = (0..family.paths.len())
        .into_par_iter()
        .map(|p| first_violation(family, p, &family.segment_table(p), &k))
        .collect();
    let conditions = [0, 1, 2].map(|c| {
        let witness = per_path.iter().find_map(|w| w[c]);
        ConditionResult {
            holds: witness.is_none(),
            witness,
        }
    });
    ContractionReport {
        constants: k,
        passes: conditions.iter().all(|c| c.holds),
        conditions,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FellowTravelWitness {
    pub path: usize,
    pub quasigeodesic: PathSeq,
    pub hausdorff: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FellowTravel {
    #[serde(rename = "L")]
    pub l: QuasiConstant,
    pub limits: SearchLimits,
    pub radius: u32,
    pub lower_bound: bool,
    pub witness: Option<FellowTravelWitness>,
}

/// Largest Hausdorff distance between a family path and an observed
/// `l`-quasigeodesic with the same endpoints. Length-0 family paths
/// contribute 0.
pub fn fellow_travel_radius(
    family: &ContractingFamily,
    l: QuasiConstant,
    limits: &SearchLimits,
) -> Result<FellowTravel> {
    let g = &family.ambient;
    let dm = &family.dm;
    let per_path: Vec<(u32, bool, Option<FellowTravelWitness>)> = family
        .paths
        .par_iter()
        .enumerate()
        .map(|(i, beta)| {
            if beta.length() == 0 || beta.start() == beta.end() {
                return Ok((0, false, None));
            }
            let pool = candidate_pool(g, dm, beta.start(), beta.end(), l, limits, &[])?;
            let beta_image = beta.image();
            let mut best: (u32, Option<usize>) = (0, None);
            for (j, image) in pool.images.iter().enumerate() {
                let h = crate::metric::directed_hausdorff(dm, image, &beta_image)
                    .max(crate::metric::directed_hausdorff(dm, &beta_image, image));
                if best.1.is_none() || h > best.0 {
                    best = (h, Some(j));
                }
            }
            let witness = best.1.map(|j| FellowTravelWitness {
                path: i,
                quasigeodesic: pool.paths[j].clone(),
                hausdorff: best.0,
            });
            Ok((best.0, pool.lower_bound, witness))
        })
        .collect::<Result<_>>()?;
    let mut out = FellowTravel {
        l,
        limits: *limits,
        radius: 0,
        lower_bound: false,
        witness: None,
    };
    for (r, lower, witness) in per_path {
        out.lower_bound |= lower;
        if witness.is_some() && (out.witness.is_none() || r > out.radius) {
            out.radius = r;
            out.witness = witness;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallProjection {
    pub distance_to_path: u32,
    pub radius: u32,
    /// Smallest and largest projection index over the ball.
    pub index_range: (usize, usize),
    pub diameter: u32,
}

// (distance to the path, ball radius, projected indices)
fn projected_ball(family: &ContractingFamily, beta: usize, x: usize, b1: u32) -> Result<(u32, u32, BTreeSet<usize>)> {
    let path = family
        .paths
        .get(beta)
        .ok_or_else(|| Error::InvalidFamily(format!("no path with id {beta}")))?;
    family.ambient.check_vertex(x)?;
    if b1 == 0 {
        return Err(Error::InvalidConstant("B1 must be positive".into()));
    }
    let dm = &family.dm;
    let distance = dm.distance_to_set(x, path.vertices());
    if distance < b1 {
        return Err(Error::BallRadiusBelowThreshold {
            distance,
            threshold: b1,
        });
    }
    let radius = distance / b1;
    let pi = &family.projections[beta];
    let indices = dm
        .row(x)
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d <= radius)
        .map(|(y, _)| pi[y])
        .collect();
    Ok((distance, radius, indices))
}

/// Path indices `π(B_R(x))` for `R = ⌊d(x, β)/b1⌋`.
pub fn ball_projection_indices(family: &ContractingFamily, beta: usize, x: usize, b1: u32) -> Result<BTreeSet<usize>> {
    Ok(projected_ball(family, beta, x, b1)?.2)
}

/// Ambient diameter of `β(π(B_R(x)))` for `R = ⌊d(x, β)/b1⌋`.
pub fn ball_projection_diameter(family: &ContractingFamily, beta: usize, x: usize, b1: u32) -> Result<BallProjection> {
    let (distance, radius, indices) = projected_ball(family, beta, x, b1)?;
    let path = &family.paths[beta];
    let dm = &family.dm;
    let points: Vec<usize> = indices.iter().map(|&i| path.at(i)).collect();
    let diameter = points
        .iter()
        .flat_map(|&a| points.iter().map(move |&b| dm.get(a, b)))
        .max()
        .unwrap_or(0);
    Ok(BallProjection {
        distance_to_path: distance,
        radius,
        index_range: (*indices.first().unwrap(), *indices.last().unwrap()),
        diameter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn constants(a: u32, c: u32) -> ContractionConstants {
        ContractionConstants::new(a, Fraction::new(1, 1).unwrap(), c).unwrap()
    }

    #[test]
    fn projection_examples() {
        let c6 = generators::cycle(6);
        let dm = distance_matrix(&c6).unwrap();
        let p = PathSeq::new(&c6, vec![0, 1, 2, 3]).unwrap();
        let pi = domain_projection(&dm, &p);
        assert_eq!(pi[5], 0);
        assert_eq!(&pi[0..4], &[0, 1, 2, 3]);
        let p6 = generators::path(6);
        let dm = distance_matrix(&p6).unwrap();
        let p = PathSeq::new(&p6, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(domain_projection(&dm, &p)[5], 3);
    }

    #[test]
    fn tree_geodesic_is_contracting() {
        let t = generators::comb(8, 3);
        let spine = PathSeq::new(&t, (0..=8).collect()).unwrap();
        let fam = ContractingFamily::new(t, vec![spine], None).unwrap();
        assert!(check_contraction(&fam, constants(1, 2)).passes);
    }

    #[test]
    fn grid_row_fails_condition_three() {
        let n = 6;
        let g = generators::grid(n, n);
        // Row y = 0 runs through ids x·n.
        let row = PathSeq::new(&g, (0..n).map(|x| x * n).collect()).unwrap();
        let fam = ContractingFamily::new(g, vec![row], None).unwrap();
        let report = check_contraction(&fam, constants(1, 2));
        assert!(report.conditions[0].holds && report.conditions[1].holds);
        let w = report.conditions[2].witness.unwrap();
        assert!(w.diameter > 2);
        // The witness is displaced vertically off the row.
        assert!(!w.x.is_multiple_of(n));
    }

    #[test]
    fn trivial_family_passes_vacuously() {
        let g = generators::path(4);
        let fam = ContractingFamily::new(g, vec![PathSeq::trivial(2)], None).unwrap();
        assert!(check_contraction(&fam, constants(1, 1)).passes);
        let ft = fellow_travel_radius(&fam, QuasiConstant::integer(5).unwrap(), &SearchLimits::new(10, 100)).unwrap();
        assert_eq!(ft.radius, 0);
    }

    #[test]
    fn monotone_in_c() {
        let g = generators::grid(5, 5);
        let row = PathSeq::new(&g, vec![0, 5, 10, 15, 20]).unwrap();
        let fam = ContractingFamily::new(g, vec![row], None).unwrap();
        let mut passed = false;
        for c in 1..10 {
            let p = check_contraction(&fam, constants(1, c)).passes;
            assert!(!passed || p);
            passed |= p;
        }
        assert!(passed);
    }

    #[test]
    fn transitivity_is_enforced() {
        let g = generators::path(5);
        let a = PathSeq::new(&g, vec![0, 1, 2]).unwrap();
        let b = PathSeq::new(&g, vec![2, 3, 4]).unwrap();
        let err = ContractingFamily::new(g.clone(), vec![a.clone(), b.clone()], None).unwrap_err();
        assert!(matches!(err, Error::InvalidFamily(_)));
        let ab = PathSeq::new(&g, vec![0, 1, 2, 3, 4]).unwrap();
        assert!(ContractingFamily::new(g, vec![a, b, ab], None).is_ok());
    }

    #[test]
    fn json_family_with_custom_projection() {
        let g = generators::path(3);
        let text = r#"{"paths": [[0, 1, 2]], "projections": [[0, 0, 2]]}"#;
        let fam = ContractingFamily::from_json(g.clone(), text).unwrap();
        assert_eq!(fam.projection(0), &[0, 0, 2]);
        let bad = r#"{"paths": [[0, 1, 2]], "projections": [[0, 5, 2]]}"#;
        assert!(ContractingFamily::from_json(g, bad).is_err());
    }

    #[test]
    fn tree_fellow_travel_is_small() {
        for len in [4usize, 8, 12] {
            let t = generators::comb(len, 3);
            let spine = PathSeq::new(&t, (0..=len).collect()).unwrap();
            let fam = ContractingFamily::new(t, vec![spine], None).unwrap();
            let ft = fellow_travel_radius(
                &fam,
                QuasiConstant::integer(2).unwrap(),
                &SearchLimits::new(4 * len + 8, 2_000),
            )
            .unwrap();
            assert_eq!(ft.radius, 2, "length {len}");
        }
    }

    #[test]
    fn ball_projections() {
        let t = generators::comb(6, 3);
        let spine = PathSeq::new(&t, (0..=6).collect()).unwrap();
        let fam = ContractingFamily::new(t.clone(), vec![spine], None).unwrap();
        for x in 7..t.vertex_count() {
            assert!(ball_projection_diameter(&fam, 0, x, 1).unwrap().diameter <= 2);
        }
        assert!(matches!(
            ball_projection_diameter(&fam, 0, 3, 1),
            Err(Error::BallRadiusBelowThreshold {
                distance: 0,
                threshold: 1
            })
        ));

        let n = 9;
        let g = generators::grid(n, n);
        let row = PathSeq::new(&g, (0..n).map(|x| x * n).collect()).unwrap();
        let fam = ContractingFamily::new(g, vec![row], None).unwrap();
        // (4, 4) sits 4 above the middle of the row.
        let bp = ball_projection_diameter(&fam, 0, 4 * n + 4, 1).unwrap();
        assert_eq!((bp.radius, bp.diameter), (4, 8));
    }

    #[test]
    fn constants_parse() {
        let k: ContractionConstants = "1,1/2,3".parse().unwrap();
        assert_eq!((k.a, k.b.to_string(), k.c), (1, "1/2".to_string(), 3));
        assert!("0,1,1".parse::<ContractionConstants>().is_err());
        assert!("1,3/2,1".parse::<ContractionConstants>().is_err());
    }
}
