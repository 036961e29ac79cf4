//! A contracting-family candidate along the axis of a mapping class, inside
//! a finite ball of the marking graph.
//!
//! The projection of a marking to the axis is the axis index whose shadow is
//! nearest in the Farey graph to the marking's shadow, so the family is
//! projected through the curve graph rather than by nearest points.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::contraction::{ball_projection_indices, ContractingFamily};
use crate::error::{Error, Result};
use crate::graph::{distance_matrix, PathSeq};
use crate::metric::geodesics_between;

use super::farey::farey_distance;
use super::marking::{Marking, MarkingBall};
use super::slope::MappingClassMatrix;

#[derive(Clone, Debug)]
pub struct AxisFamily {
    pub family: ContractingFamily,
    /// Marking at each vertex of the ambient ball graph.
    pub markings: Vec<Marking>,
}

/// Concatenated marking-graph geodesics through `M^k·μ`, `|k| ≤ periods`,
/// inside the ball of radius `ball_radius` about `μ`.
pub fn axis_family(m: MappingClassMatrix, mu: Marking, periods: u32, ball_radius: u32) -> Result<AxisFamily> {
    let ball = MarkingBall::new(mu, ball_radius);
    let graph = ball.to_graph();
    let markings = ball.markings().to_vec();
    let index: HashMap<Marking, usize> = markings.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let orbit: Vec<usize> = (-(periods as i64)..=periods as i64)
        .map(|k| {
            let w = mu.apply(&m.pow(k));
            index
                .get(&w)
                .copied()
                .ok_or_else(|| Error::InvalidFamily(format!("orbit point {w} lies outside the ball")))
        })
        .collect::<Result<_>>()?;
    let dm = distance_matrix(&graph)?;
    let mut axis = vec![orbit[0]];
    for pair in orbit.windows(2) {
        let leg = geodesics_between(&graph, &dm, pair[0], pair[1], dm.get(pair[0], pair[1]) as usize + 1)?;
        axis.extend(leg.paths[0].vertices().iter().skip(1));
    }
    let axis = PathSeq::new(&graph, axis)?;
    let shadows: Vec<_> = axis.vertices().iter().map(|&v| markings[v].base()).collect();
    let projection: Vec<usize> = markings
        .iter()
        .map(|w| {
            (0..shadows.len())
                .min_by_key(|&i| (farey_distance(w.base(), shadows[i]), i))
                .unwrap()
        })
        .collect();
    let family = ContractingFamily::with_projections(graph, vec![axis], vec![Some(projection)], None)?;
    Ok(AxisFamily { family, markings })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallProjectionFit {
    pub b1: u32,
    /// Largest marking-graph diameter of a projected ball.
    pub b2_marking: u32,
    /// Largest Farey diameter of the shadows of a projected ball.
    pub b2_curve: u32,
    pub samples: usize,
    pub worst: Option<usize>,
}

/// Fits the ball-projection constant over every ball vertex at distance at
/// least `b1` from the axis.
pub fn fit_ball_projection(af: &AxisFamily, b1: u32) -> Result<BallProjectionFit> {
    let fam = &af.family;
    let axis = &fam.paths()[0];
    let dm = fam.distances();
    let mut fit = BallProjectionFit {
        b1,
        b2_marking: 0,
        b2_curve: 0,
        samples: 0,
        worst: None,
    };
    for x in 0..fam.ambient().vertex_count() {
        if dm.distance_to_set(x, axis.vertices()) < b1 {
            continue;
        }
        let indices: BTreeSet<usize> = ball_projection_indices(fam, 0, x, b1)?;
        let points: Vec<usize> = indices.iter().map(|&i| axis.at(i)).collect();
        let mut marking_diam = 0;
        let mut curve_diam = 0;
        for &a in &points {
            for &b in &points {
                marking_diam = marking_diam.max(dm.get(a, b));
                curve_diam = curve_diam.max(farey_distance(af.markings[a].base(), af.markings[b].base()));
            }
        }
        fit.samples += 1;
        if curve_diam > fit.b2_curve || fit.worst.is_none() {
            fit.worst = Some(x);
        }
        fit.b2_marking = fit.b2_marking.max(marking_diam);
        fit.b2_curve = fit.b2_curve.max(curve_diam);
    }
    Ok(fit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anosov_axis_family_builds_and_fits() {
        let a = MappingClassMatrix::new(2, 1, 1, 1).unwrap();
        let af = axis_family(a, Marking::standard(), 1, 6).unwrap();
        let axis = &af.family.paths()[0];
        assert_eq!(af.markings[axis.start()], Marking::standard().apply(&a.inverse()));
        assert_eq!(af.markings[axis.end()], Marking::standard().apply(&a));
        let fit = fit_ball_projection(&af, 2).unwrap();
        assert!(fit.samples > 0);
        assert!(fit.b2_curve <= fit.b2_marking + 1);
    }

    #[test]
    fn orbit_outside_ball_is_rejected() {
        let a = MappingClassMatrix::new(2, 1, 1, 1).unwrap();
        assert!(matches!(
            axis_family(a, Marking::standard(), 5, 2),
            Err(Error::InvalidFamily(_))
        ));
    }
}
