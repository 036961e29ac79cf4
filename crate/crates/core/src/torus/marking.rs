//! Markings of the once-punctured torus and the marking graph.
//!
//! A marking `(base | transversal)` is the image of `(1/0 | 0/1)` under a
//! unique class in `PSL(2, ℤ)`, and the moves are right multiplication by
//! `[[1,±1],[0,1]]` and `[[0,−1],[1,0]]`. The marking graph is therefore a
//! Cayley graph: the left action is by automorphisms, so
//! `d(m1, m2) = d(μ, g1⁻¹·m2)` for any fixed `μ` and `m1 = g1·μ`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::slope::{MappingClassMatrix, Slope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Marking {
    base: Slope,
    transversal: Slope,
}

impl Marking {
    pub fn new(base: Slope, transversal: Slope) -> Result<Self> {
        if base.intersection(&transversal) != 1 {
            return Err(Error::InvalidMarking(format!(
                "{base} and {transversal} do not intersect once"
            )));
        }
        Ok(Self { base, transversal })
    }

    /// `(0/1 | 1/0)`.
    pub fn standard() -> Self {
        Self {
            base: Slope::integer(0),
            transversal: Slope::INFINITY,
        }
    }

    pub fn base(&self) -> Slope {
        self.base
    }

    pub fn transversal(&self) -> Slope {
        self.transversal
    }

    pub fn apply(&self, m: &MappingClassMatrix) -> Self {
        Self {
            base: m.apply(self.base),
            transversal: m.apply(self.transversal),
        }
    }

    /// The class sending `(1/0 | 0/1)` to this marking.
    pub fn to_matrix(&self) -> MappingClassMatrix {
        MappingClassMatrix::from_columns(self.base, self.transversal).expect("markings intersect once")
    }

    pub fn twist(&self, power: i64) -> Self {
        let t = MappingClassMatrix::twist(self.base).pow(power);
        Self {
            base: self.base,
            transversal: t.apply(self.transversal),
        }
    }

    pub fn flip(&self) -> Self {
        Self {
            base: self.transversal,
            transversal: self.base,
        }
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.base, self.transversal)
    }
}

impl FromStr for Marking {
    type Err = Error;

    /// `(p/q|r/s)`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidMarking(format!("expected `(p/q|r/s)`, got `{s}`")))?;
        let (b, t) = inner
            .split_once('|')
            .ok_or_else(|| Error::InvalidMarking(format!("expected `(p/q|r/s)`, got `{s}`")))?;
        Marking::new(b.parse()?, t.parse()?)
    }
}

impl TryFrom<String> for Marking {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Marking> for String {
    fn from(m: Marking) -> String {
        m.to_string()
    }
}

/// Twist, inverse twist and flip, in that order.
pub fn marking_neighbors(m: &Marking) -> [Marking; 3] {
    [m.twist(1), m.twist(-1), m.flip()]
}

pub fn shadow(m: &Marking) -> Slope {
    m.base()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MarkingDistance {
    pub distance: u32,
    /// `false` when the cap was reached; `distance` is then a lower bound.
    pub exact: bool,
    pub radius_cap: u32,
}

/// Bidirectional BFS over the marking graph, exploring at most `radius_cap`
/// layers in total.
pub fn marking_distance(m1: &Marking, m2: &Marking, radius_cap: u32) -> MarkingDistance {
    if m1 == m2 {
        return MarkingDistance {
            distance: 0,
            exact: true,
            radius_cap,
        };
    }
    let mut seen = [HashMap::from([(*m1, 0u32)]), HashMap::from([(*m2, 0u32)])];
    let mut frontier = [vec![*m1], vec![*m2]];
    let mut radius = [0u32, 0u32];
    while radius[0] + radius[1] < radius_cap {
        let side = usize::from(frontier[1].len() < frontier[0].len());
        let other = 1 - side;
        let mut next = Vec::new();
        let mut best: Option<u32> = None;
        for m in &frontier[side] {
            for w in marking_neighbors(m) {
                if seen[side].contains_key(&w) {
                    continue;
                }
                seen[side].insert(w, radius[side] + 1);
                if let Some(&d) = seen[other].get(&w) {
                    best = Some(best.map_or(d, |b| b.min(d)));
                }
                next.push(w);
            }
        }
        radius[side] += 1;
        if let Some(d) = best {
            return MarkingDistance {
                distance: radius[side] + d,
                exact: true,
                radius_cap,
            };
        }
        frontier[side] = next;
    }
    MarkingDistance {
        distance: radius_cap + 1,
        exact: false,
        radius_cap,
    }
}

/// Distances from `center` to every marking within `radius`, in BFS order.
#[derive(Clone, Debug)]
pub struct MarkingBall {
    center: Marking,
    order: Vec<Marking>,
    dist: HashMap<Marking, u32>,
}

impl MarkingBall {
    pub fn new(center: Marking, radius: u32) -> Self {
        let mut order = vec![center];
        let mut dist = HashMap::from([(center, 0u32)]);
        let mut head = 0;
        while head < order.len() {
            let m = order[head];
            head += 1;
            let d = dist[&m];
            if d == radius {
                continue;
            }
            for w in marking_neighbors(&m) {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d + 1);
                    order.push(w);
                }
            }
        }
        Self { center, order, dist }
    }

    pub fn center(&self) -> Marking {
        self.center
    }

    pub fn markings(&self) -> &[Marking] {
        &self.order
    }

    pub fn distance_from_center(&self, m: &Marking) -> Option<u32> {
        self.dist.get(m).copied()
    }

    /// `d(m1, m2)` by translating `m1` to the center, when the translate of
    /// `m2` lies in the ball.
    pub fn distance(&self, m1: &Marking, m2: &Marking) -> Option<u32> {
        let g = m1.to_matrix().mul(&self.center.to_matrix().inverse());
        self.distance_from_center(&m2.apply(&g.inverse()))
    }

    /// The induced subgraph, with `markings()[i]` at vertex `i`.
    pub fn to_graph(&self) -> Graph {
        let index: HashMap<Marking, usize> = self.order.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut edges = Vec::new();
        for (i, m) in self.order.iter().enumerate() {
            for w in marking_neighbors(m) {
                if let Some(&j) = index.get(&w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        Graph::new(self.order.len(), edges).expect("marking moves are simple edges")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(text: &str) -> Marking {
        text.parse().unwrap()
    }

    #[test]
    fn parsing_and_validation() {
        assert_eq!(m("(0/1|1/0)"), Marking::standard());
        assert_eq!(m("(0/1|1/0)").to_string(), "(0/1|1/0)");
        assert!("(0/1|2/5)".parse::<Marking>().is_err());
        assert!("0/1|1/0".parse::<Marking>().is_err());
    }

    #[test]
    fn moves() {
        assert_eq!(m("(0/1|1/0)").flip(), m("(1/0|0/1)"));
        assert_eq!(m("(1/0|0/1)").twist(1), m("(1/0|1/1)"));
        for start in [m("(0/1|1/0)"), m("(2/3|1/1)"), m("(-5/2|-2/1)")] {
            for w in marking_neighbors(&start) {
                assert!(marking_neighbors(&w).contains(&start));
                assert!(shadow(&start).intersection(&shadow(&w)) <= 1);
            }
            assert_eq!(start.to_matrix().apply(Slope::INFINITY), start.base());
        }
    }

    #[test]
    fn action_on_markings() {
        let a = MappingClassMatrix::new(2, 1, 1, 1).unwrap();
        assert_eq!(Marking::standard().apply(&a), m("(1/1|2/1)"));
        let a_mu = Marking::standard().apply(&a);
        let d = marking_distance(&Marking::standard(), &a_mu, 20);
        assert!(d.exact);
        let ball = MarkingBall::new(Marking::standard(), d.distance);
        assert_eq!(ball.distance_from_center(&a_mu), Some(d.distance));
    }

    #[test]
    fn bidirectional_search_matches_ball() {
        let center = m("(0/1|1/0)");
        let ball = MarkingBall::new(center, 6);
        for w in ball.markings().iter().step_by(5) {
            let d = marking_distance(&center, w, 12);
            assert_eq!(Some(d.distance), ball.distance_from_center(w));
        }
        let far = center.twist(9);
        let capped = marking_distance(&center, &far, 4);
        assert!(!capped.exact && capped.distance == 5);
        assert_eq!(marking_distance(&center, &m("(1/0|0/1)"), 3).distance, 1);
    }

    #[test]
    fn translation_invariance() {
        let ball = MarkingBall::new(Marking::standard(), 6);
        let table = MarkingBall::new(Marking::standard(), 12);
        let pts: Vec<Marking> = ball.markings().iter().step_by(13).copied().collect();
        for a in &pts {
            for b in &pts {
                let direct = marking_distance(a, b, 12);
                assert_eq!(table.distance(a, b), Some(direct.distance), "{a} {b}");
            }
        }
        assert!(ball.to_graph().is_connected());
    }
}
