//! Slopes in Q ∪ {∞}, unimodular 2×2 matrices and their Möbius action.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SlopeError {
    #[error("malformed slope `{0}`")]
    Malformed(String),
    #[error("(0,0) is not a slope")]
    ZeroZero,
    #[error("matrix [{0},{1};{2},{3}] is not unimodular")]
    NotUnimodular(i64, i64, i64, i64),
    #[error("a filling spec needs 1 to 3 slopes, got {0}")]
    SpecArity(usize),
}

/// A slope p/q stored as a coprime pair with q > 0, or ∞ = (1,0).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub const INF: Slope = Slope { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Result<Slope, SlopeError> {
        if p == 0 && q == 0 {
            return Err(SlopeError::ZeroZero);
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    pub fn int(n: i64) -> Slope {
        Slope { p: n, q: 1 }
    }

    /// Panicking constructor for literals known to be valid.
    pub fn frac(p: i64, q: i64) -> Slope {
        Slope::new(p, q).expect("valid slope literal")
    }

    pub fn p(self) -> i64 {
        self.p
    }

    pub fn q(self) -> i64 {
        self.q
    }

    pub fn is_inf(self) -> bool {
        self.q == 0
    }

    pub fn is_integer(self) -> bool {
        self.q == 1
    }

    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.p)
    }

    pub fn distance(self, other: Slope) -> u64 {
        (self.p as i128 * other.q as i128 - self.q as i128 * other.p as i128).unsigned_abs() as u64
    }

    pub fn apply(self, m: &Unimodular) -> Slope {
        m.act(self)
    }

    /// Conversion between this crate's basis and SnapPea's: α ↦ −2−α.
    pub fn snappea_basis(self) -> Slope {
        if self.is_inf() {
            return self;
        }
        Slope::frac(-2 * self.q - self.p, self.q)
    }

    /// Returns n when the slope equals c + 1/n for a nonzero integer n.
    pub fn unit_offset_from(self, c: i64) -> Option<i64> {
        if self.is_inf() {
            return None;
        }
        let num = self.p - c * self.q;
        match num {
            1 => Some(self.q),
            -1 => Some(-self.q),
            _ => None,
        }
    }

    pub fn eq_int(self, n: i64) -> bool {
        self.q == 1 && self.p == n
    }

    pub fn eq_frac(self, p: i64, q: i64) -> bool {
        self == Slope::frac(p, q)
    }
}

impl fmt::Debug for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.q {
            0 => write!(f, "inf"),
            1 => write!(f, "{}", self.p),
            q => write!(f, "{}/{}", self.p, q),
        }
    }
}

/// ∞ first, then finite slopes by increasing value.
impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_inf(), other.is_inf()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => (self.p as i128 * other.q as i128).cmp(&(other.p as i128 * self.q as i128)),
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for Slope {
    type Err = SlopeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_slope(s)
    }
}

fn parse_int(s: &str, whole: &str) -> Result<i64, SlopeError> {
    let t = s.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(SlopeError::Malformed(whole.to_string()));
    }
    t.parse::<i64>().map_err(|_| SlopeError::Malformed(whole.to_string()))
}

/// Parses "inf", "∞", an integer, or "p/q".
pub fn parse_slope(text: &str) -> Result<Slope, SlopeError> {
    let t = text.trim();
    if matches!(t, "inf" | "∞" | "infinity" | "Inf" | "INF") {
        return Ok(Slope::INF);
    }
    match t.split_once('/') {
        Some((a, b)) => Slope::new(parse_int(a, text)?, parse_int(b, text)?),
        None => Ok(Slope::int(parse_int(t, text)?)),
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.p, self.q].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [p, q] = <[i64; 2]>::deserialize(d)?;
        Slope::new(p, q).map_err(serde::de::Error::custom)
    }
}

/// A 2×2 integer matrix of determinant ±1, written [[a,b],[c,d]].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[[i64; 2]; 2]", into = "[[i64; 2]; 2]")]
pub struct Unimodular {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl TryFrom<[[i64; 2]; 2]> for Unimodular {
    type Error = SlopeError;
    fn try_from(m: [[i64; 2]; 2]) -> Result<Self, Self::Error> {
        Unimodular::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl From<Unimodular> for [[i64; 2]; 2] {
    fn from(m: Unimodular) -> Self {
        [[m.a, m.b], [m.c, m.d]]
    }
}

impl Unimodular {
    pub const I: Unimodular = Unimodular { a: 1, b: 0, c: 0, d: 1 };
    /// (μ,λ) ↦ (μ,−λ).
    pub const J: Unimodular = Unimodular { a: 1, b: 0, c: 0, d: -1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Unimodular, SlopeError> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 && det != -1 {
            return Err(SlopeError::NotUnimodular(a, b, c, d));
        }
        Ok(Unimodular { a, b, c, d })
    }

    /// Panicking constructor for literals known to be unimodular.
    pub fn m(a: i64, b: i64, c: i64, d: i64) -> Unimodular {
        Unimodular::new(a, b, c, d).expect("unimodular literal")
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    pub fn mul(&self, o: &Unimodular) -> Unimodular {
        Unimodular {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inv(&self) -> Unimodular {
        let e = self.det();
        Unimodular { a: e * self.d, b: -e * self.b, c: -e * self.c, d: e * self.a }
    }

    pub fn neg(&self) -> Unimodular {
        Unimodular { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    /// Column action on a primitive vector (x, y).
    pub fn apply_vec(&self, x: i64, y: i64) -> (i64, i64) {
        (self.a * x + self.b * y, self.c * x + self.d * y)
    }

    /// Möbius action p/q ↦ (ap+bq)/(cp+dq).
    pub fn act(&self, s: Slope) -> Slope {
        let (x, y) = self.apply_vec(s.p, s.q);
        Slope::new(x, y).expect("unimodular image of a primitive vector is primitive")
    }

    /// Left-endpoint twist [[1,0],[k,1]].
    pub fn twist(k: i64) -> Unimodular {
        Unimodular { a: 1, b: 0, c: k, d: 1 }
    }

    pub fn pow(&self, n: u32) -> Unimodular {
        (0..n).fold(Unimodular::I, |acc, _| acc.mul(self))
    }
}

impl fmt::Debug for Unimodular {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{};{},{}]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for Unimodular {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{};{},{}]", self.a, self.b, self.c, self.d)
    }
}

/// One to three slopes filled on the (mutually symmetric) cusps of N, in input order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<Slope>", into = "Vec<Slope>")]
pub struct FillingSpec {
    slopes: Vec<Slope>,
}

impl TryFrom<Vec<Slope>> for FillingSpec {
    type Error = SlopeError;
    fn try_from(v: Vec<Slope>) -> Result<Self, Self::Error> {
        FillingSpec::new(v)
    }
}

impl From<FillingSpec> for Vec<Slope> {
    fn from(s: FillingSpec) -> Self {
        s.slopes
    }
}

impl FillingSpec {
    pub fn new(slopes: Vec<Slope>) -> Result<FillingSpec, SlopeError> {
        if slopes.is_empty() || slopes.len() > 3 {
            return Err(SlopeError::SpecArity(slopes.len()));
        }
        Ok(FillingSpec { slopes })
    }

    pub fn slopes(&self) -> &[Slope] {
        &self.slopes
    }

    pub fn len(&self) -> usize {
        self.slopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slopes.is_empty()
    }

    /// Sorted copy: the multiset normal form.
    pub fn sorted(&self) -> FillingSpec {
        let mut s = self.slopes.clone();
        s.sort();
        FillingSpec { slopes: s }
    }
}

impl fmt::Display for FillingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N(")?;
        for (i, s) in self.slopes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", s)?;
        }
        write!(f, ")")
    }
}

/// Nonnegative gcd; gcd(0, 0) = 0.
pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Extended Euclid: returns (g, x, y) with a·x + b·y = g ≥ 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

/// For coprime (i, j), the pair (i', j') with i·j' − j·i' = 1 and 0 ≤ i' < |i|
/// (for i = 0 the pair (1, 0) up to the sign of j).
pub fn complement(i: i64, j: i64) -> (i64, i64) {
    if i == 0 {
        return (-j, 0);
    }
    let (g, x, y) = ext_gcd(i, j);
    debug_assert_eq!(g, 1, "complement of a non-primitive pair");
    // i·x + j·y = 1, so (i', j') = (−y, x); solutions differ by multiples of (i, j).
    let (ip, jp) = (-y, x);
    let m = i.abs();
    let k = ip.div_euclid(m) * i.signum();
    (ip - k * i, jp - k * j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_slope("-3/2").unwrap(), Slope::frac(-3, 2));
        assert_eq!(parse_slope("-3/2").unwrap().p(), -3);
        assert_eq!(parse_slope("inf").unwrap(), Slope::INF);
        assert_eq!(parse_slope("∞").unwrap(), Slope::INF);
        let s = parse_slope("6/-4").unwrap();
        assert_eq!((s.p(), s.q()), (-3, 2));
        assert_eq!(parse_slope("1/0").unwrap(), Slope::INF);
        assert_eq!(parse_slope("-1/0").unwrap(), Slope::INF);
        assert!(parse_slope("0/0").is_err());
        assert!(parse_slope("bad").is_err());
        assert!(parse_slope("1/").is_err());
        assert!(parse_slope("").is_err());
        assert!(parse_slope("1/2/3").is_err());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(Slope::frac(-3, 2).distance(Slope::frac(-5, 2)), 4);
        assert_eq!(Slope::INF.distance(Slope::frac(7, 3)), 3);
        assert_eq!(Slope::int(4).distance(Slope::int(5)), 1);
    }

    #[test]
    fn matrix_action_examples() {
        assert_eq!(Unimodular::I.act(Slope::frac(7, 3)), Slope::frac(7, 3));
        assert_eq!(Unimodular::m(0, 1, 1, 0).act(Slope::frac(7, 3)), Slope::frac(3, 7));
        let m = Unimodular::m(-1, -2, 0, -1);
        assert_eq!(m.act(Slope::frac(5, 3)), Slope::frac(11, 3));
        assert_eq!(Unimodular::m(-1, -1, 1, 2).act(Slope::int(-2)), Slope::INF);
    }

    #[test]
    fn snappea_examples() {
        assert_eq!(Slope::int(0).snappea_basis(), Slope::int(-2));
        assert_eq!(Slope::INF.snappea_basis(), Slope::INF);
        assert_eq!(Slope::int(-1).snappea_basis(), Slope::int(-1));
    }

    #[test]
    fn unit_offsets() {
        assert_eq!(Slope::frac(-4, 3).unit_offset_from(-1), Some(-3));
        assert_eq!(Slope::int(-2).unit_offset_from(-1), Some(-1));
        assert_eq!(Slope::int(0).unit_offset_from(-1), Some(1));
        assert_eq!(Slope::frac(-5, 3).unit_offset_from(-1), None);
        assert_eq!(Slope::INF.unit_offset_from(-1), None);
    }

    #[test]
    fn ordering_puts_infinity_first() {
        let mut v = vec![Slope::int(2), Slope::INF, Slope::frac(-3, 2), Slope::int(-2)];
        v.sort();
        assert_eq!(v, vec![Slope::INF, Slope::int(-2), Slope::frac(-3, 2), Slope::int(2)]);
    }

    #[test]
    fn complement_solves_the_determinant() {
        for i in -9i64..=9 {
            for j in -9i64..=9 {
                if i.gcd(&j) != 1 {
                    continue;
                }
                let (ip, jp) = complement(i, j);
                assert_eq!(i * jp - j * ip, 1, "({i},{j}) -> ({ip},{jp})");
                if i != 0 {
                    assert!(ip >= 0 && ip < i.abs(), "({i},{j}) -> ({ip},{jp})");
                }
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let s = Slope::frac(-5, 2);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, "[-5,2]");
        assert_eq!(serde_json::from_str::<Slope>(&j).unwrap(), s);
        let m = Unimodular::m(1, 1, -1, 0);
        let j = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<Unimodular>(&j).unwrap(), m);
        assert!(serde_json::from_str::<Unimodular>("[[2,0],[0,2]]").is_err());
    }
}
