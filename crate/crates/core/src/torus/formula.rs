//! The thresholded distance-formula sum and orbit coboundedness traces.
//!
//! For markings with bases `b1 ≠ b2`, an annulus with core `α ∉ {b1, b2}`
//! sees both markings through their bases, and the integer parts of the
//! normalised bases differ by two or more only if some Farey edge at `α`
//! separates `b1` from `b2`. So for thresholds `A ≥ 2` the cores of the
//! separating edges together with `b1` and `b2` are the only annuli that can
//! contribute, and the sum over them is exact. Smaller thresholds need every
//! annulus and fall back to a height-bounded enumeration.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

use super::farey::{farey_distance, separating_slopes};
use super::marking::{shadow, Marking};
use super::projection::Annulus;
use super::slope::{MappingClassMatrix, Slope};

/// Every slope with `|p| ≤ bound` and `0 ≤ q ≤ bound`.
pub fn slopes_up_to_height(bound: i64) -> Vec<Slope> {
    let mut out = vec![Slope::INFINITY];
    for q in 1..=bound.max(0) {
        for p in -bound..=bound {
            let s = Slope::from_vector(p, q);
            if s.q() == q {
                out.push(s);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Contribution {
    pub annulus: Slope,
    pub distance: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaRhs {
    pub threshold: u32,
    pub rhs: u64,
    /// Unthresholded Farey distance between the shadows.
    pub farey: u32,
    /// Annuli whose projection distance reached the threshold, by slope.
    pub contributions: Vec<Contribution>,
    pub annuli_examined: usize,
    pub denominator_bound: i64,
    /// The threshold is below 2, so annuli beyond the bound were not seen.
    pub truncated: bool,
}

/// `d_F(shadow(m1), shadow(m2)) + Σ_α [d_α(m1, m2)]_A`.
pub fn distance_formula_rhs(m1: &Marking, m2: &Marking, threshold: u32, denominator_bound: i64) -> Result<FormulaRhs> {
    if threshold == 0 {
        return Err(Error::InvalidConstant("the threshold A must be at least 1".into()));
    }
    let (b1, b2) = (shadow(m1), shadow(m2));
    let mut annuli: BTreeSet<Slope> = separating_slopes(b1, b2).into_iter().collect();
    let truncated = threshold < 2;
    if truncated {
        annuli.extend(slopes_up_to_height(denominator_bound));
    }
    let contributions: Vec<Contribution> = annuli
        .iter()
        .map(|&alpha| Contribution {
            annulus: alpha,
            distance: Annulus::new(alpha).marking_distance(m1, m2),
        })
        .filter(|c| c.distance >= threshold)
        .collect();
    let farey = farey_distance(b1, b2);
    Ok(FormulaRhs {
        threshold,
        rhs: farey as u64 + contributions.iter().map(|c| c.distance as u64).sum::<u64>(),
        farey,
        contributions,
        annuli_examined: annuli.len(),
        denominator_bound,
        truncated,
    })
}

/// Smallest integer `K ≥ 1` with `rhs/K − K ≤ d ≤ K·rhs + K` for every
/// `(d, rhs)` sample.
pub fn fit_comparison_constant(samples: &[(u32, u64)]) -> u64 {
    let ok = |k: u64| {
        samples
            .iter()
            .all(|&(d, r)| d as u64 <= k * r + k && r <= k * (d as u64 + k))
    };
    let mut k = 1;
    while !ok(k) {
        k += 1;
    }
    k
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitStep {
    pub k: u32,
    pub marking: Marking,
    /// `max_α d_α(μ, M^k·μ)`.
    pub projection_max: u32,
    pub annulus: Option<Slope>,
    /// `d_F(shadow(μ), shadow(M^k·μ))`.
    pub shadow_distance: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitBound {
    pub matrix: MappingClassMatrix,
    pub start: Marking,
    pub k_max: u32,
    pub denominator_bound: i64,
    /// Largest annular projection distance over the orbit.
    pub e: u32,
    pub shadow_diameter: u32,
    /// `max_k k / d_F(shadow(μ), shadow(M^k·μ))`; absent when some shadow
    /// distance is 0.
    pub linear_growth_constant: Option<f64>,
    pub steps: Vec<OrbitStep>,
}

/// Coboundedness constant and shadow growth of the orbit `M^k·μ`,
/// `1 ≤ k ≤ k_max`. The separating cores of each pair carry every value
/// ≥ 2; annuli of height at most `denominator_bound` are scanned only when
/// those cores all give 0, to tell 0 from 1.
pub fn orbit_projection_bound(
    m: MappingClassMatrix,
    mu: Marking,
    k_max: u32,
    denominator_bound: i64,
) -> Result<OrbitBound> {
    if k_max == 0 {
        return Err(Error::InvalidConstant("k_max must be at least 1".into()));
    }
    let mut bounded: Option<Vec<Annulus>> = None;
    let orbit: Vec<Marking> = (0..=k_max as i64).map(|k| mu.apply(&m.pow(k))).collect();
    let mut steps = Vec::with_capacity(k_max as usize);
    for (k, mk) in orbit.iter().enumerate().skip(1) {
        let best_over = |annuli: &mut dyn Iterator<Item = &Annulus>| {
            let mut best: (u32, Option<Slope>) = (0, None);
            for a in annuli {
                let d = a.marking_distance(&mu, mk);
                if d > best.0 {
                    best = (d, Some(a.core()));
                }
            }
            best
        };
        let separating: Vec<Annulus> = separating_slopes(mu.base(), mk.base())
            .into_iter()
            .map(Annulus::new)
            .collect();
        let mut best = best_over(&mut separating.iter());
        if best.0 == 0 {
            let all = bounded.get_or_insert_with(|| {
                slopes_up_to_height(denominator_bound)
                    .into_iter()
                    .map(Annulus::new)
                    .collect()
            });
            best = best_over(&mut all.iter());
        }
        steps.push(OrbitStep {
            k: k as u32,
            marking: *mk,
            projection_max: best.0,
            annulus: best.1,
            shadow_distance: farey_distance(mu.base(), mk.base()),
        });
    }
    let mut shadow_diameter = 0;
    for i in 0..orbit.len() {
        for j in i + 1..orbit.len() {
            shadow_diameter = shadow_diameter.max(farey_distance(orbit[i].base(), orbit[j].base()));
        }
    }
    let linear_growth_constant = steps
        .iter()
        .map(|s| (s.shadow_distance > 0).then(|| s.k as f64 / s.shadow_distance as f64))
        .try_fold(0.0f64, |acc, r| r.map(|r| acc.max(r)));
    Ok(OrbitBound {
        matrix: m,
        start: mu,
        k_max,
        denominator_bound,
        e: steps.iter().map(|s| s.projection_max).max().unwrap_or(0),
        shadow_diameter,
        linear_growth_constant,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Slope {
        text.parse().unwrap()
    }

    #[test]
    fn identical_markings_give_zero() {
        let mu = Marking::standard();
        for a in [1, 3] {
            assert_eq!(distance_formula_rhs(&mu, &mu, a, 20).unwrap().rhs, 0);
        }
    }

    #[test]
    fn twist_pairs_count_only_their_annulus() {
        let mu = Marking::new(s("1/2"), s("1/1")).unwrap();
        for n in [3i64, 6, -5] {
            let other = mu.twist(n);
            let at = |a| distance_formula_rhs(&mu, &other, a, 20).unwrap();
            let small = at(2);
            assert_eq!(small.rhs, n.unsigned_abs());
            assert_eq!(
                small.contributions,
                vec![Contribution {
                    annulus: s("1/2"),
                    distance: n.unsigned_abs() as u32
                }]
            );
            assert_eq!(at(n.unsigned_abs() as u32 + 1).rhs, 0);
        }
    }

    #[test]
    fn exact_candidates_match_enumeration() {
        let mu = Marking::standard();
        let a = MappingClassMatrix::new(2, 1, 1, 1).unwrap();
        for k in 1..4 {
            let other = mu.apply(&a.pow(k)).twist(2);
            let exact = distance_formula_rhs(&mu, &other, 2, 0).unwrap();
            let all = distance_formula_rhs(&mu, &other, 1, 40).unwrap();
            let wide: u64 = all
                .contributions
                .iter()
                .filter(|c| c.distance >= 2)
                .map(|c| c.distance as u64)
                .sum();
            assert_eq!(exact.rhs, exact.farey as u64 + wide);
            assert!(all.truncated && !exact.truncated);
        }
    }

    #[test]
    fn comparison_fit() {
        assert_eq!(fit_comparison_constant(&[(0, 0), (1, 1), (2, 2)]), 1);
        assert_eq!(fit_comparison_constant(&[(7, 0)]), 7);
        assert_eq!(fit_comparison_constant(&[(1, 12)]), 3);
    }

    #[test]
    fn identity_orbit_is_trivial() {
        let ob = orbit_projection_bound(MappingClassMatrix::IDENTITY, Marking::standard(), 4, 10).unwrap();
        assert_eq!((ob.e, ob.shadow_diameter), (0, 0));
        assert!(orbit_projection_bound(MappingClassMatrix::IDENTITY, Marking::standard(), 0, 10).is_err());
    }

    #[test]
    fn twist_orbit_grows_in_one_annulus() {
        let t = MappingClassMatrix::new(1, 1, 0, 1).unwrap();
        let ob = orbit_projection_bound(t, Marking::standard(), 8, 30).unwrap();
        assert_eq!(ob.e, 8);
        assert_eq!(ob.steps[7].annulus, Some(Slope::INFINITY));
        assert!(ob.shadow_diameter <= 2);
    }

    #[test]
    fn anosov_orbit_is_cobounded() {
        let a = MappingClassMatrix::new(2, 1, 1, 1).unwrap();
        let short = orbit_projection_bound(a, Marking::standard(), 4, 60).unwrap();
        let long = orbit_projection_bound(a, Marking::standard(), 8, 60).unwrap();
        assert_eq!(short.e, long.e);
        assert!(long.steps[7].shadow_distance >= 2);
    }
}
