use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A reduced slope `p/q` with `q ≥ 0`; infinity is `1/0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Slope {
    p: i64,
    q: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(g, x, y)` with `a·x + b·y = g = gcd(a, b) ≥ 0`.
pub(crate) fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let k = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - k * r1);
        (x0, x1) = (x1, x0 - k * x1);
        (y0, y1) = (y1, y0 - k * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

impl Slope {
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };

    /// Reduces and canonicalises `p/q`; `(0, 0)` is rejected.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::InvalidSlope("0/0 is not a slope".into()));
        }
        Ok(Self::from_vector(p, q))
    }

    pub fn integer(n: i64) -> Self {
        Self { p: n, q: 1 }
    }

    // Caller guarantees (p, q) ≠ (0, 0).
    pub(crate) fn from_vector(p: i64, q: i64) -> Self {
        let g = gcd(p, q);
        let (p, q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            Self { p: -p, q: -q }
        } else {
            Self { p, q }
        }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }

    /// `max(|p|, q)`.
    pub fn height(&self) -> i64 {
        self.p.abs().max(self.q)
    }

    /// `⌊p/q⌋` for finite slopes.
    pub fn floor(&self) -> Option<i64> {
        (self.q != 0).then(|| self.p.div_euclid(self.q))
    }

    /// Geometric intersection number `|p·s − q·r|`.
    pub fn intersection(&self, other: &Slope) -> i64 {
        (self.p as i128 * other.q as i128 - self.q as i128 * other.p as i128).unsigned_abs() as i64
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    /// `p/q` or an integer `p`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSlope(format!("cannot parse slope `{s}`"));
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (
                p.trim().parse().map_err(|_| bad())?,
                q.trim().parse().map_err(|_| bad())?,
            ),
            None => (s.trim().parse().map_err(|_| bad())?, 1),
        };
        Slope::new(p, q)
    }
}

impl TryFrom<String> for Slope {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Slope> for String {
    fn from(s: Slope) -> String {
        s.to_string()
    }
}

/// An element of `PSL(2, ℤ)`, stored with `c > 0`, or `c = 0` and `a > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 4]", into = "[i64; 4]")]
pub struct MappingClassMatrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl MappingClassMatrix {
    pub const IDENTITY: Self = Self { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a as i128 * d as i128 - b as i128 * c as i128 != 1 {
            return Err(Error::InvalidMatrix(format!(
                "[[{a},{b}],[{c},{d}]] does not have determinant 1"
            )));
        }
        Ok(Self::canonical(a, b, c, d))
    }

    fn canonical(a: i64, b: i64, c: i64, d: i64) -> Self {
        if c < 0 || (c == 0 && a < 0) {
            Self {
                a: -a,
                b: -b,
                c: -c,
                d: -d,
            }
        } else {
            Self { a, b, c, d }
        }
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::canonical(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    pub fn inverse(&self) -> Self {
        Self::canonical(self.d, -self.b, -self.c, self.a)
    }

    pub fn pow(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inverse() } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn apply(&self, s: Slope) -> Slope {
        Slope::from_vector(self.a * s.p + self.b * s.q, self.c * s.p + self.d * s.q)
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    /// The Dehn twist about `alpha`: the conjugate of `[[1,1],[0,1]]` that
    /// fixes `alpha`.
    pub fn twist(alpha: Slope) -> Self {
        let (p, q) = (alpha.p, alpha.q);
        Self::canonical(1 - p * q, p * p, -q * q, 1 + p * q)
    }

    /// The canonical `M` with `M·alpha = ∞`, from the extended Euclidean
    /// algorithm on `alpha`.
    pub fn normalizer(alpha: Slope) -> Self {
        let (p, q) = (alpha.p, alpha.q);
        let (_, s, minus_r) = ext_gcd(p, q);
        Self::canonical(s, minus_r, -q, p)
    }

    /// The unique class sending `(1/0 | 0/1)` to `(base | transversal)`;
    /// the columns are the two slope vectors, signed to give determinant 1.
    pub fn from_columns(base: Slope, transversal: Slope) -> Result<Self> {
        let det = base.p as i128 * transversal.q as i128 - base.q as i128 * transversal.p as i128;
        match det {
            1 => Self::new(base.p, transversal.p, base.q, transversal.q),
            -1 => Self::new(base.p, -transversal.p, base.q, -transversal.q),
            _ => Err(Error::InvalidMarking(format!(
                "{base} and {transversal} do not intersect once"
            ))),
        }
    }
}

impl fmt::Display for MappingClassMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for MappingClassMatrix {
    type Err = Error;

    /// Four integers, row-major, comma separated.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidMatrix(format!("expected `a,b,c,d`, got `{s}`"));
        let v: Vec<i64> = s
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let [a, b, c, d] = v[..] else { return Err(bad()) };
        Self::new(a, b, c, d)
    }
}

impl TryFrom<[i64; 4]> for MappingClassMatrix {
    type Error = Error;

    fn try_from([a, b, c, d]: [i64; 4]) -> Result<Self> {
        Self::new(a, b, c, d)
    }
}

impl From<MappingClassMatrix> for [i64; 4] {
    fn from(m: MappingClassMatrix) -> [i64; 4] {
        m.entries()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Slope {
        text.parse().unwrap()
    }

    #[test]
    fn canonical_slopes() {
        assert_eq!(Slope::new(2, -4).unwrap(), s("-1/2"));
        assert_eq!(Slope::new(-3, 0).unwrap(), Slope::INFINITY);
        assert_eq!(s("5"), Slope::integer(5));
        assert!(Slope::new(0, 0).is_err());
        assert!("1/x".parse::<Slope>().is_err());
        assert_eq!(s("-7/3").floor(), Some(-3));
        assert_eq!(Slope::INFINITY.to_string(), "1/0");
    }

    #[test]
    fn matrix_basics() {
        let a = MappingClassMatrix::new(2, 1, 1, 1).unwrap();
        assert_eq!(a.mul(&a.inverse()), MappingClassMatrix::IDENTITY);
        assert_eq!(a.pow(3), a.mul(&a).mul(&a));
        assert_eq!(a.pow(-2), a.inverse().pow(2));
        assert_eq!(
            MappingClassMatrix::new(-1, 0, 0, -1).unwrap(),
            MappingClassMatrix::IDENTITY
        );
        assert!(MappingClassMatrix::new(1, 1, 1, 1).is_err());
        let t = MappingClassMatrix::new(1, 1, 0, 1).unwrap();
        assert_eq!(t.apply(s("0/1")), s("1/1"));
        assert_eq!("2,1,1,1".parse::<MappingClassMatrix>().unwrap(), a);
    }

    #[test]
    fn twists_fix_their_curve() {
        assert_eq!(
            MappingClassMatrix::twist(Slope::INFINITY),
            MappingClassMatrix::new(1, 1, 0, 1).unwrap()
        );
        for alpha in ["0/1", "1/2", "-3/5", "7/4"].map(s) {
            let t = MappingClassMatrix::twist(alpha);
            assert_eq!(t.apply(alpha), alpha);
            assert_eq!(t.trace().abs(), 2);
        }
    }

    #[test]
    fn normalizers_send_to_infinity() {
        for alpha in ["0/1", "1/2", "-3/5", "7/4", "1/0", "-1/1"].map(s) {
            assert_eq!(MappingClassMatrix::normalizer(alpha).apply(alpha), Slope::INFINITY);
        }
    }

    #[test]
    fn columns_round_trip() {
        let m = MappingClassMatrix::from_columns(s("1/1"), s("2/1")).unwrap();
        assert_eq!(m.apply(Slope::INFINITY), s("1/1"));
        assert_eq!(m.apply(s("0/1")), s("2/1"));
        assert!(MappingClassMatrix::from_columns(s("0/1"), s("2/5")).is_err());
    }
}
