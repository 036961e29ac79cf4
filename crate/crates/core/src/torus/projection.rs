//! Annular projections.
//!
//! Normalising the core `α` to `∞`, twisting about `α` becomes translation
//! by one, and the projection of a curve is the integer part of its
//! normalised slope. Any two normalisers differ by a translation, which
//! shifts both integer parts equally, so the value does not depend on the
//! normaliser.

use serde::Serialize;

use crate::error::{Error, Result};

use super::marking::Marking;
use super::slope::{MappingClassMatrix, Slope};

/// Normalised integer parts relative to a fixed core.
#[derive(Clone, Copy, Debug)]
pub struct Annulus {
    core: Slope,
    normalizer: MappingClassMatrix,
}

impl Annulus {
    pub fn new(core: Slope) -> Self {
        Self {
            core,
            normalizer: MappingClassMatrix::normalizer(core),
        }
    }

    pub fn core(&self) -> Slope {
        self.core
    }

    pub fn normalizer(&self) -> MappingClassMatrix {
        self.normalizer
    }

    pub fn coordinate(&self, curve: Slope) -> Result<i64> {
        self.normalizer.apply(curve).floor().ok_or(Error::CurveEqualsCore)
    }

    pub fn distance(&self, beta: Slope, gamma: Slope) -> Result<u32> {
        Ok(self.coordinate(beta)?.abs_diff(self.coordinate(gamma)?) as u32)
    }

    /// The transversal when the base is the core, the base otherwise.
    pub fn project(&self, m: &Marking) -> Slope {
        if m.base() == self.core {
            m.transversal()
        } else {
            m.base()
        }
    }

    pub fn marking_distance(&self, m1: &Marking, m2: &Marking) -> u32 {
        self.distance(self.project(m1), self.project(m2))
            .expect("marking projections avoid the core")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AnnularDistance {
    pub value: u32,
    pub normalizer: MappingClassMatrix,
}

pub fn annular_projection_distance(alpha: Slope, beta: Slope, gamma: Slope) -> Result<AnnularDistance> {
    let annulus = Annulus::new(alpha);
    Ok(AnnularDistance {
        value: annulus.distance(beta, gamma)?,
        normalizer: annulus.normalizer(),
    })
}

/// `d_α(μ1, μ2)` for the annulus with core `alpha`.
pub fn marking_annular_distance(alpha: Slope, m1: &Marking, m2: &Marking) -> u32 {
    Annulus::new(alpha).marking_distance(m1, m2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Slope {
        text.parse().unwrap()
    }

    #[test]
    fn examples() {
        let inf = Slope::INFINITY;
        assert_eq!(annular_projection_distance(inf, s("3/7"), s("3/7")).unwrap().value, 0);
        let five = MappingClassMatrix::twist(inf).pow(5).apply(s("0/1"));
        assert_eq!(five, s("5/1"));
        assert_eq!(annular_projection_distance(inf, s("0/1"), five).unwrap().value, 5);
        let v = annular_projection_distance(s("0/1"), s("1/1"), s("1/3")).unwrap().value;
        assert!((1..=5).contains(&v));
        assert_eq!(
            annular_projection_distance(s("1/2"), s("1/2"), s("0/1")),
            Err(Error::CurveEqualsCore)
        );
    }

    #[test]
    fn independent_of_normalizer() {
        let alpha = s("3/5");
        let base = MappingClassMatrix::normalizer(alpha);
        for k in [-3, 1, 4] {
            let other = MappingClassMatrix::new(1, k, 0, 1).unwrap().mul(&base);
            assert_eq!(other.apply(alpha), Slope::INFINITY);
            for (b, g) in [("0/1", "1/0"), ("2/7", "-4/3"), ("1/1", "5/8")] {
                let via =
                    |m: MappingClassMatrix| m.apply(s(b)).floor().unwrap().abs_diff(m.apply(s(g)).floor().unwrap());
                assert_eq!(via(base), via(other));
            }
        }
    }

    #[test]
    fn marking_projection_uses_transversal_on_the_core() {
        let mu = Marking::standard();
        let twisted = mu.twist(4);
        assert_eq!(marking_annular_distance(s("0/1"), &mu, &twisted), 4);
        assert_eq!(marking_annular_distance(s("1/0"), &mu, &mu.flip()), 0);
    }
}
