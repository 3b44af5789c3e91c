//! Slope lengths on a horospherical cusp torus and the short-slope enumerations.
//!
//! A shape is given by x + iy and the area A of the torus; the length of p/q satisfies
//! ℓ² = (A/y)·((p + xq)² + (yq)²). For N's shape every ℓ² is rational, so the 2π bound
//! reduces to comparing rationals against a rational enclosure of 4π².

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::io::BufRead;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::classify;
use crate::slope::{parse_slope, FillingSpec, Slope};

pub const PI_DIGITS_ENV: &str = "MAGIC_PI_DIGITS";
pub const DEFAULT_PI_DIGITS: usize = 50;

const PI: &str = "3.14159265358979323846264338327950288419716939937510\
58209749445923078164062862089986280348253421170679\
82148086513282306647093844609550582231725359408128";

#[derive(Debug, Error)]
pub enum CuspError {
    #[error("shape parameter {0} must be positive")]
    NonPositive(&'static str),
    #[error("π is stored to {max} digits, {asked} requested")]
    Precision { asked: usize, max: usize },
    #[error("slope {slope} lies too close to the bound to decide at {digits} digits")]
    Undecided { slope: Slope, digits: usize },
    #[error("line {line}: {msg}")]
    Record { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Largest square dividing n, as (s, n/s²).
fn split_square(n: u64) -> (u64, u64) {
    let (mut out, mut rest, mut f) = (1u64, n, 2u64);
    while f * f <= rest {
        while rest % (f * f) == 0 {
            out *= f;
            rest /= f * f;
        }
        f += 1;
    }
    (out, rest)
}

/// c·√m with squarefree m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub coef: BigRational,
    pub radicand: u64,
}

impl Surd {
    pub fn new(coef: BigRational, radicand: u64) -> Surd {
        let (s, m) = split_square(radicand);
        Surd { coef: coef * BigRational::from_integer(BigInt::from(s)), radicand: m }
    }

    pub fn rational(r: BigRational) -> Surd {
        Surd { coef: r, radicand: 1 }
    }

    pub fn square(&self) -> BigRational {
        &self.coef * &self.coef * BigRational::from_integer(BigInt::from(self.radicand))
    }

    pub fn to_f64(&self) -> f64 {
        self.coef.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt()
    }

    /// Compares with a rational, exactly.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        match (self.coef.signum().cmp(&BigRational::zero()), r.signum().cmp(&BigRational::zero())) {
            (a, b) if a != b => a.cmp(&b),
            (Ordering::Equal, _) => Ordering::Equal,
            (Ordering::Greater, _) => self.square().cmp(&(r * r)),
            _ => (r * r).cmp(&self.square()),
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == 1 {
            write!(f, "{}", self.coef)
        } else {
            write!(f, "({})·√{}", self.coef, self.radicand)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspShape {
    pub x: BigRational,
    pub y: Surd,
    pub area: Surd,
}

impl CuspShape {
    pub fn new(x: BigRational, y: Surd, area: Surd) -> Result<CuspShape, CuspError> {
        if !y.coef.is_positive() {
            return Err(CuspError::NonPositive("y"));
        }
        if !area.coef.is_positive() {
            return Err(CuspError::NonPositive("area"));
        }
        Ok(CuspShape { x, y, area })
    }

    /// N's cusp in SnapPea's basis: x + iy = 1/2 + i√7/2 and A = √7/2.
    pub fn magic() -> CuspShape {
        let h = Surd::new(rat(1, 2), 7);
        CuspShape { x: rat(1, 2), y: h.clone(), area: h }
    }

    /// The same torus in new coordinates (p', q') = m·(p, q). The new basis vectors are
    /// a' = m⁻¹ᵃ + m⁻¹ᶜτ and b' = m⁻¹ᵇ + m⁻¹ᵈτ, τ' = b'/a' (conjugated if m reverses
    /// orientation, which leaves lengths alone) and the area is unchanged.
    pub fn in_basis(&self, m: &crate::slope::Unimodular) -> CuspShape {
        let inv = m.inv();
        let r = |v: i64| BigRational::from_integer(v.into());
        let y2 = self.y.square();
        let re_a = r(inv.a) + r(inv.c) * &self.x;
        let re_b = r(inv.b) + r(inv.d) * &self.x;
        let norm = &re_a * &re_a + r(inv.c) * r(inv.c) * &y2;
        let x = (&re_b * &re_a + r(inv.d) * r(inv.c) * &y2) / &norm;
        let y = Surd::new(&self.y.coef / &norm, self.y.radicand);
        CuspShape { x, y, area: self.area.clone() }
    }
}

/// r·√m, the exact value of a squared length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthSq(pub Surd);

impl LengthSq {
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.0.radicand == 1).then_some(&self.0.coef)
    }
}

impl fmt::Display for LengthSq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// ℓ²(p/q) = (A/y)·((p + xq)² + (yq)²).
pub fn slope_length_sq(shape: &CuspShape, s: Slope) -> LengthSq {
    let (p, q) = (BigRational::from_integer(s.p().into()), BigRational::from_integer(s.q().into()));
    let t = &p + &shape.x * &q;
    let form = &t * &t + shape.y.square() * &q * &q;
    // A/y = (cA/cy)·√(mA/my) = (cA/(cy·my))·√(mA·my)
    let my = BigRational::from_integer(BigInt::from(shape.y.radicand));
    let coef = &shape.area.coef / (&shape.y.coef * my) * form;
    LengthSq(Surd::new(coef, shape.area.radicand * shape.y.radicand))
}

/// A closed rational interval; a point when lo == hi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn point(v: BigRational) -> Interval {
        Interval { lo: v.clone(), hi: v }
    }

    fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    fn scale(&self, k: &BigRational) -> Interval {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().cloned().expect("four products");
        let hi = c.iter().max().cloned().expect("four products");
        Interval { lo, hi }
    }

    fn square(&self) -> Interval {
        let (a, b) = (&self.lo * &self.lo, &self.hi * &self.hi);
        if !self.lo.is_positive() && !self.hi.is_negative() {
            Interval { lo: BigRational::zero(), hi: a.max(b) }
        } else if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    fn recip_positive(&self) -> Interval {
        Interval { lo: self.hi.recip(), hi: self.lo.recip() }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// A bound ℓ² < T (strict) or ℓ² ≤ T, with T known to lie in `value`. When the interval
/// is a point, T is that rational; otherwise T lies strictly inside it.
#[derive(Clone, Debug)]
pub struct Threshold {
    pub value: Interval,
    pub strict: bool,
    pub digits: usize,
}

impl Threshold {
    pub fn exact(t: BigRational, strict: bool) -> Threshold {
        Threshold { value: Interval::point(t), strict, digits: 0 }
    }

    /// 4π² from the stored digits, at `MAGIC_PI_DIGITS` (default 50) places.
    pub fn four_pi_sq(strict: bool) -> Result<Threshold, CuspError> {
        let digits = std::env::var(PI_DIGITS_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_PI_DIGITS);
        Threshold::four_pi_sq_at(digits, strict)
    }

    pub fn four_pi_sq_at(digits: usize, strict: bool) -> Result<Threshold, CuspError> {
        let pi = pi_enclosure(digits)?;
        let four = rat(4, 1);
        Ok(Threshold { value: Interval { lo: &four * &pi.lo * &pi.lo, hi: four * &pi.hi * &pi.hi }, strict, digits })
    }

    fn point(&self) -> bool {
        self.lo() == self.hi()
    }

    fn lo(&self) -> &BigRational {
        &self.value.lo
    }

    fn hi(&self) -> &BigRational {
        &self.value.hi
    }

    /// Some(true) when v certainly satisfies the bound, Some(false) when it certainly
    /// fails, None when the enclosure is too wide.
    pub fn decide(&self, v: &Surd) -> Option<bool> {
        let (lo, hi) = (v.cmp_rational(self.lo()), v.cmp_rational(self.hi()));
        let open = !self.point();
        if lo == Ordering::Less || (lo == Ordering::Equal && (open || !self.strict)) {
            Some(true)
        } else if hi == Ordering::Greater || (hi == Ordering::Equal && (open || self.strict)) {
            Some(false)
        } else {
            None
        }
    }

    /// Same for a value known only to lie in an interval.
    pub fn decide_interval(&self, v: &Interval) -> Option<bool> {
        let (hi_v, lo_v) = (Surd::rational(v.hi.clone()), Surd::rational(v.lo.clone()));
        match (self.decide(&hi_v), self.decide(&lo_v)) {
            (Some(true), _) => Some(true),
            (_, Some(false)) => Some(false),
            _ => None,
        }
    }

    fn upper_f64(&self) -> f64 {
        self.hi().to_f64().unwrap_or(f64::INFINITY)
    }
}

/// π truncated to `digits` places and that value plus one unit in the last place.
pub fn pi_enclosure(digits: usize) -> Result<Interval, CuspError> {
    let frac: String = PI[2..].chars().collect();
    if digits > frac.len() || digits == 0 {
        return Err(CuspError::Precision { asked: digits, max: frac.len() });
    }
    let num: BigInt = format!("3{}", &frac[..digits]).parse().expect("digits");
    let den = BigInt::from(10).pow(digits as u32);
    let lo = BigRational::new(num.clone(), den.clone());
    let hi = BigRational::new(num + 1, den);
    Ok(Interval { lo, hi })
}

fn undecided(slope: Slope, bound: &Threshold) -> CuspError {
    CuspError::Undecided { slope, digits: bound.digits }
}

/// All slopes with ℓ² under the bound.
///
/// Since ℓ² ≥ A·y·q², only q² ≤ T/(A·y) can occur, and for each q the real part
/// satisfies |p + xq| ≤ √(T·y/A). Both ranges are widened by one before the exact test.
pub fn short_slopes(shape: &CuspShape, bound: &Threshold) -> Result<BTreeSet<Slope>, CuspError> {
    let t = bound.upper_f64();
    let (y, a) = (shape.y.to_f64(), shape.area.to_f64());
    let x = shape.x.to_f64().unwrap_or(0.0);
    let qmax = (t / (a * y)).sqrt().ceil() as i64 + 1;
    let reach = (t * y / a).sqrt().ceil() as i64 + 1;
    let mut out = BTreeSet::new();
    for q in 0..=qmax {
        let centre = (-x * q as f64).round() as i64;
        for p in centre - reach - 1..=centre + reach + 1 {
            if q == 0 && p != 1 {
                continue;
            }
            if p.gcd(&q) != 1 {
                continue;
            }
            let s = Slope::frac(p, q);
            let l = slope_length_sq(shape, s);
            match bound.decide(&l.0) {
                Some(true) => {
                    out.insert(s);
                }
                Some(false) => {}
                None => return Err(undecided(s, bound)),
            }
        }
    }
    Ok(out)
}

/// The slopes of N with length under 2π, in SnapPea's basis.
pub fn s1_tilde() -> Result<BTreeSet<Slope>, CuspError> {
    short_slopes(&CuspShape::magic(), &Threshold::four_pi_sq(true)?)
}

/// The short slopes of N whose filling is hyperbolic, in SnapPea's basis.
pub fn s1() -> Result<BTreeSet<Slope>, CuspError> {
    Ok(s1_tilde()?
        .into_iter()
        .filter(|s| classify(&FillingSpec::new(vec![s.snappea_basis()]).expect("one slope")).is_hyperbolic())
        .collect())
}

/// 16·g(p,q) = 4·f² + q², with f as below.
fn g_times_16(p: i64, q: i64) -> i64 {
    let f = if p - q < 0 && 0 < p + 4 * q { 0 } else { (p - q).abs().min((p + 4 * q).abs()) };
    4 * f * f + q * q
}

/// g(p,q) = ¼(f² + q²/4), f = 0 when 0 ∈ (p−q, p+4q) and min(|p−q|, |p+4q|) otherwise.
pub fn g_value(s: Slope) -> BigRational {
    rat(g_times_16(s.p(), s.q()), 16)
}

/// {p/q : g(p,q) ≤ 4π²}, over coprime (p,q) with q ≥ 0.
///
/// g ≥ q²/16 gives q ≤ 8π < 26, and g ≥ f²/4 gives f ≤ 4π < 13, which bounds p to
/// −4q−13 ≤ p ≤ q+13.
pub fn s3_set() -> Result<BTreeSet<Slope>, CuspError> {
    s3_with(&Threshold::four_pi_sq(false)?)
}

pub fn s3_with(bound: &Threshold) -> Result<BTreeSet<Slope>, CuspError> {
    let mut out = BTreeSet::new();
    for q in 0..=26i64 {
        for p in -4 * q - 13..=q + 13 {
            if p.gcd(&q) != 1 || (q == 0 && p != 1) {
                continue;
            }
            let s = Slope::frac(p, q);
            match bound.decide(&Surd::rational(g_value(s))) {
                Some(true) => {
                    out.insert(s);
                }
                Some(false) => {}
                None => return Err(undecided(s, bound)),
            }
        }
    }
    Ok(out)
}

/// A slope written either as text ("-5/2", "inf") or as a pair [p, q].
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum SlopeText {
    Text(String),
    Pair(Slope),
}

#[derive(Clone, Debug, Deserialize)]
struct RawRecord {
    filled: Vec<SlopeText>,
    cusp: usize,
    x: String,
    y: String,
    area: String,
    digits: u32,
}

/// One cusp of a partially filled N, with decimal shape data good to `digits` places.
#[derive(Clone, Debug, Serialize)]
pub struct CuspRecord {
    pub filled: Vec<Slope>,
    pub cusp: usize,
    #[serde(skip)]
    pub x: Interval,
    #[serde(skip)]
    pub y: Interval,
    #[serde(skip)]
    pub area: Interval,
    pub digits: u32,
}

/// Parses a plain decimal such as "-1.3228756" exactly.
pub fn parse_decimal(text: &str) -> Option<BigRational> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let num: BigInt = format!("0{int}{frac}").parse().ok()?;
    let v = BigRational::new(num, BigInt::from(10).pow(frac.len() as u32));
    Some(if neg { -v } else { v })
}

fn widen(v: BigRational, digits: u32) -> Interval {
    let e = BigRational::new(BigInt::one(), BigInt::from(10).pow(digits));
    Interval { lo: &v - &e, hi: v + e }
}

/// Reads JSON lines, one record per non-blank line.
pub fn read_cusp_data(reader: impl BufRead) -> Result<Vec<CuspRecord>, CuspError> {
    let mut out = vec![];
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |msg: String| CuspError::Record { line: i + 1, msg };
        let raw: RawRecord = serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?;
        let mut filled = vec![];
        for s in raw.filled {
            filled.push(match s {
                SlopeText::Pair(s) => s,
                SlopeText::Text(t) => parse_slope(&t).map_err(|e| bad(e.to_string()))?,
            });
        }
        let num = |name: &str, v: &str| parse_decimal(v).ok_or_else(|| bad(format!("{name} is not a decimal: `{v}`")));
        let (x, y, area) = (num("x", &raw.x)?, num("y", &raw.y)?, num("area", &raw.area)?);
        let (y, area) = (widen(y, raw.digits), widen(area, raw.digits));
        if !y.lo.is_positive() {
            return Err(bad("y must be positive".into()));
        }
        if !area.lo.is_positive() {
            return Err(bad("area must be positive".into()));
        }
        out.push(CuspRecord { filled, cusp: raw.cusp, x: widen(x, raw.digits), y, area, digits: raw.digits });
    }
    Ok(out)
}

/// Enclosure of ℓ² for a record.
pub fn record_length_sq(r: &CuspRecord, s: Slope) -> Interval {
    let (p, q) = (rat(s.p(), 1), rat(s.q(), 1));
    let re = r.x.scale(&q).add(&Interval::point(p));
    let im = r.y.scale(&q);
    let form = re.square().add(&im.square());
    r.area.mul(&r.y.recip_positive()).mul(&form)
}

#[derive(Clone, Debug, Serialize)]
pub struct RecordCandidates {
    pub filled: Vec<Slope>,
    pub cusp: usize,
    pub slopes: Vec<Slope>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DataReport {
    pub records: Vec<RecordCandidates>,
    pub union: Vec<Slope>,
}

/// Per record, the slopes shorter than 2π that `exclude` does not remove. Slopes are in
/// SnapPea's basis of the record's cusps.
pub fn short_slopes_from_data(
    records: &[CuspRecord],
    bound: &Threshold,
    exclude: &dyn Fn(&[Slope], Slope) -> bool,
) -> Result<DataReport, CuspError> {
    let mut per = vec![];
    let mut union = BTreeSet::new();
    for r in records {
        let t = bound.upper_f64();
        let (y, a, x) = (r.y.lo.to_f64().unwrap_or(0.0), r.area.lo.to_f64().unwrap_or(0.0), r.x.lo.to_f64().unwrap_or(0.0));
        let qmax = (t / (a * y)).sqrt().ceil() as i64 + 1;
        let yhi = r.y.hi.to_f64().unwrap_or(f64::INFINITY);
        let reach = (t * yhi / a).sqrt().ceil() as i64 + 1;
        let mut got = BTreeSet::new();
        for q in 0..=qmax {
            let centre = (-x * q as f64).round() as i64;
            for p in centre - reach - 1..=centre + reach + 1 {
                if p.gcd(&q) != 1 || (q == 0 && p != 1) {
                    continue;
                }
                let s = Slope::frac(p, q);
                match bound.decide_interval(&record_length_sq(r, s)) {
                    Some(true) if !exclude(&r.filled, s) => {
                        got.insert(s);
                    }
                    Some(_) => {}
                    None => return Err(undecided(s, bound)),
                }
            }
        }
        union.extend(got.iter().copied());
        per.push(RecordCandidates { filled: r.filled.clone(), cusp: r.cusp, slopes: got.into_iter().collect() });
    }
    Ok(DataReport { records: per, union: union.into_iter().collect() })
}

/// Excludes β when filling N along the record's slopes and β is not hyperbolic. All
/// slopes are read in SnapPea's basis.
pub fn non_hyperbolic_exclusion(filled: &[Slope], beta: Slope) -> bool {
    let mut all: Vec<Slope> = filled.iter().map(|s| s.snappea_basis()).collect();
    all.push(beta.snappea_basis());
    match FillingSpec::new(all) {
        Ok(spec) => !classify(&spec).is_hyperbolic(),
        Err(_) => false,
    }
}

/// The number of candidate triples |S₁|·|S₂|·|S₃|.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateCount {
    pub s1: usize,
    pub s2: usize,
    pub s3: usize,
    pub product: u64,
}

impl CandidateCount {
    pub fn new(s1: usize, s2: usize, s3: usize) -> CandidateCount {
        CandidateCount { s1, s2, s3, product: (s1 * s2 * s3) as u64 }
    }
}

impl fmt::Display for CandidateCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·{}·{} = {}", self.s1, self.s2, self.s3, self.product)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slopes(xs: &[&str]) -> BTreeSet<Slope> {
        xs.iter().map(|x| parse_slope(x).unwrap()).collect()
    }

    #[test]
    fn lengths_on_n() {
        let n = CuspShape::magic();
        for (s, v) in [("inf", 1), ("5", 32), ("-6", 32), ("0", 2)] {
            let l = slope_length_sq(&n, parse_slope(s).unwrap());
            assert_eq!(l.as_rational(), Some(&rat(v, 1)), "{s}");
        }
        assert_eq!(slope_length_sq(&n, Slope::frac(1, 2)).as_rational(), Some(&rat(11, 1)));
    }

    #[test]
    fn reflection_symmetry() {
        let n = CuspShape::magic();
        for p in -30..30 {
            for q in 1..12 {
                if p.gcd(&q) != 1 {
                    continue;
                }
                let a = slope_length_sq(&n, Slope::frac(p, q));
                let b = slope_length_sq(&n, Slope::frac(-p - q, q));
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn s1_tilde_matches_listing() {
        let want = slopes(&[
            "inf", "-6", "-5", "-4", "-3", "-5/2", "-2", "-5/3", "-3/2", "-4/3", "-5/4", "-1", "-3/4", "-2/3",
            "-1/2", "-1/3", "-1/4", "0", "1/4", "1/3", "1/2", "2/3", "1", "3/2", "2", "3", "4", "5",
        ]);
        assert_eq!(s1_tilde().unwrap(), want);
        let s1 = s1().unwrap();
        assert_eq!(s1.len(), 23);
        assert!(slopes(&["inf", "-2", "-1", "0", "1"]).is_disjoint(&s1));
    }

    #[test]
    fn degenerate_square() {
        let sq = CuspShape::new(rat(0, 1), Surd::rational(rat(1, 1)), Surd::rational(rat(1, 1))).unwrap();
        let got = short_slopes(&sq, &Threshold::exact(rat(2, 1), true)).unwrap();
        // p² + q² < 2 leaves only the unit vectors.
        assert_eq!(got, slopes(&["inf", "0"]));
        let le = short_slopes(&sq, &Threshold::exact(rat(2, 1), false)).unwrap();
        assert_eq!(le, slopes(&["inf", "0", "1", "-1"]));
    }

    #[test]
    fn s3_against_float_scan() {
        let s3 = s3_set().unwrap();
        let bound = 4.0 * std::f64::consts::PI * std::f64::consts::PI;
        let mut n = 0;
        for q in 0..200i64 {
            for p in -2000..2000i64 {
                if p.gcd(&q) == 1 && (q > 0 || p == 1) && (g_times_16(p, q) as f64) / 16.0 <= bound {
                    n += 1;
                    assert!(s3.contains(&Slope::frac(p, q)));
                }
            }
        }
        assert_eq!(s3.len(), n);
        assert!(s3.contains(&Slope::INF));
        assert!(s3.contains(&Slope::int(0)));
        assert_eq!(g_value(Slope::INF), rat(1, 4));
        assert_eq!(g_value(Slope::int(0)), rat(1, 16));
    }

    #[test]
    fn coarse_enclosure_is_reported() {
        // 5 has ℓ² = 32, inside [30, 40].
        let b = Threshold { value: Interval { lo: rat(30, 1), hi: rat(40, 1) }, strict: true, digits: 0 };
        assert!(matches!(short_slopes(&CuspShape::magic(), &b), Err(CuspError::Undecided { .. })));
        assert!(pi_enclosure(500).is_err());
        let one = Threshold::four_pi_sq_at(1, true).unwrap();
        assert_eq!(short_slopes(&CuspShape::magic(), &one).unwrap().len(), 28);
    }

    #[test]
    fn decimal_record_matches_exact() {
        let line = r#"{"filled":[],"cusp":0,"x":"0.5","y":"1.3228756555322952","area":"1.3228756555322952","digits":15}"#;
        let recs = read_cusp_data(line.as_bytes()).unwrap();
        let b = Threshold::four_pi_sq(true).unwrap();
        let rep = short_slopes_from_data(&recs, &b, &|_, _| false).unwrap();
        assert_eq!(rep.union.into_iter().collect::<BTreeSet<_>>(), s1_tilde().unwrap());
        let bad = r#"{"filled":["1"],"cusp":1,"x":"0.5","y":"-1.0","area":"1.0","digits":3}"#;
        assert!(read_cusp_data(bad.as_bytes()).is_err());
        assert!(read_cusp_data("".as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn basis_change_keeps_lengths() {
        let n = CuspShape::magic();
        // SnapPea coordinates to this crate's: p/q ↦ −2 − p/q.
        let m = crate::slope::Unimodular::m(-1, -2, 0, 1);
        let ours = n.in_basis(&m);
        for p in -12..12 {
            for q in 0..7 {
                if p.gcd(&q) != 1 || (q == 0 && p != 1) {
                    continue;
                }
                let s = Slope::frac(p, q);
                assert_eq!(slope_length_sq(&n, s), slope_length_sq(&ours, s.snappea_basis()));
                let m2 = crate::slope::Unimodular::m(2, 1, 1, 1);
                assert_eq!(slope_length_sq(&n, s), slope_length_sq(&n.in_basis(&m2), m2.act(s)));
            }
        }
    }
}
