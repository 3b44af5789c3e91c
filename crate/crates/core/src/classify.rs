//! Classification of the Dehn fillings of N.
//!
//! `classify` goes through the rules in a fixed precedence: a slope ∞, then an anchor
//! slope in {−3,−2,−1,0}, then one of the pairs (1,1), (−4,−1/2), (−3/2,−5/2), then the
//! sporadic triples. Within a stage the anchor is taken in input order and the two
//! remaining slopes are tried in both orders. `generic_filling` is an independent
//! description built from the block decompositions of N along each anchor; tests compare
//! both through canonical forms.

use serde::Serialize;

use crate::manifold::{Atom, Base, ManifoldDesc, Seifert};
use crate::slope::{FillingSpec, Slope, Unimodular};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Hyperbolic,
    NonHyperbolic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub manifold: Option<ManifoldDesc>,
    pub rule: Option<String>,
    /// Input positions in the order the rule read them.
    pub permutation: Vec<usize>,
}

impl Classification {
    fn hyperbolic(n: usize) -> Classification {
        Classification { verdict: Verdict::Hyperbolic, manifold: None, rule: None, permutation: (0..n).collect() }
    }

    fn found(rule: String, m: ManifoldDesc, perm: Vec<usize>) -> Classification {
        Classification { verdict: Verdict::NonHyperbolic, manifold: Some(m), rule: Some(rule), permutation: perm }
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.verdict == Verdict::Hyperbolic
    }
}

pub const ANCHORS: [i64; 4] = [-3, -2, -1, 0];

fn sfs(base: Base, fibers: &[(i64, i64)]) -> Seifert {
    Seifert::new(base, fibers)
}

fn closed(base: Base, fibers: &[(i64, i64)], b: i64) -> ManifoldDesc {
    ManifoldDesc::closed_sfs(base, fibers, b)
}

fn union(l: Seifert, x: [i64; 4], r: Seifert) -> ManifoldDesc {
    ManifoldDesc::union(l, Unimodular::m(x[0], x[1], x[2], x[3]), r)
}

fn glued(b: Seifert, x: [i64; 4]) -> ManifoldDesc {
    ManifoldDesc::self_glued(b, Unimodular::m(x[0], x[1], x[2], x[3]))
}

fn atom(a: Atom) -> ManifoldDesc {
    ManifoldDesc::atom(a)
}

fn lens(p: i64, q: i64) -> ManifoldDesc {
    ManifoldDesc::lens(p, q)
}

fn sum(a: ManifoldDesc, b: ManifoldDesc) -> ManifoldDesc {
    ManifoldDesc::sum(vec![a, b])
}

/// n with s = c + 1/n, n a nonzero integer.
fn recip(s: Slope, c: i64) -> Option<i64> {
    s.unit_offset_from(c)
}

fn is(s: Slope, n: i64) -> bool {
    s.eq_int(n)
}

fn is_frac(s: Slope, p: i64, q: i64) -> bool {
    s.eq_frac(p, q)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    match n {
        1 => vec![vec![0]],
        2 => vec![vec![0, 1], vec![1, 0]],
        _ => vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]],
    }
}

pub fn classify(spec: &FillingSpec) -> Classification {
    let s = spec.slopes();
    match s.len() {
        1 => classify_one(s[0]),
        2 => classify_two(s[0], s[1]),
        _ => classify_three(s[0], s[1], s[2]),
    }
}

pub fn classify_one(a: Slope) -> Classification {
    one_rule(a).map_or_else(|| Classification::hyperbolic(1), |(r, m)| Classification::found(r, m, vec![0]))
}

fn one_rule(a: Slope) -> Option<(String, ManifoldDesc)> {
    let m = if a.is_inf() {
        atom(Atom::TxI)
    } else {
        match a.as_integer()? {
            -3 => union(sfs(Base::A, &[(2, 1)]), [0, 1, 1, 0], sfs(Base::A, &[(2, 1)])),
            // Two boundary tori remain, so the base is an annulus.
            -2 => ManifoldDesc::sfs(Base::A, &[(3, 1)]),
            -1 => ManifoldDesc::sfs(Base::A, &[(2, 1)]),
            0 => union(sfs(Base::D, &[(2, 1), (3, 1)]), [1, 1, -1, 0], sfs(Base::P, &[])),
            _ => return None,
        }
    };
    Some((format!("Thm1:{a}"), m))
}

pub fn classify_two(a: Slope, b: Slope) -> Classification {
    let input = [a, b];
    for stage in 0..3 {
        for perm in permutations(2) {
            let (p, r) = (input[perm[0]], input[perm[1]]);
            if let Some((rule, m)) = two_rule(stage, p, r) {
                return Classification::found(rule, m, perm);
            }
        }
    }
    Classification::hyperbolic(2)
}

fn two_rule(stage: u8, p: Slope, r: Slope) -> Option<(String, ManifoldDesc)> {
    let row = |name: &str, case: &str, m: ManifoldDesc| Some((format!("T1:row({name}):case({case})"), m));
    let (rr, ss) = (r.p(), r.q());
    match stage {
        0 if p.is_inf() => row("inf", "any", atom(Atom::SolidTorus)),
        1 if !r.is_inf() => match p.as_integer()? {
            -3 => {
                if is(r, -1) {
                    row("-3", "-1", sum(atom(Atom::RP3), atom(Atom::SolidTorus)))
                } else if is(r, -2) {
                    row("-3", "-2", atom(Atom::SolidTorus))
                } else if is(r, -3) {
                    row("-3", "-3", ManifoldDesc::sfs(Base::S, &[(2, 1)]))
                } else if let Some(n) = recip(r, -1) {
                    row("-3", "-1+1/n", ManifoldDesc::sfs(Base::D, &[(2, 1), (2 * n + 1, 2)]))
                } else {
                    row("-3", "generic", union(sfs(Base::D, &[(2, 1), (rr + ss, ss)]), [0, 1, 1, 0], sfs(Base::A, &[(2, 1)])))
                }
            }
            -2 => {
                if is(r, -2) {
                    row("-2", "-2", sum(lens(3, 1), atom(Atom::SolidTorus)))
                } else if recip(r, -2).is_some() {
                    row("-2", "-2+1/n", atom(Atom::SolidTorus))
                } else {
                    row("-2", "generic", ManifoldDesc::sfs(Base::D, &[(3, 1), (rr + 2 * ss, ss)]))
                }
            }
            -1 => {
                if is(r, -3) {
                    row("-1", "-3", sum(atom(Atom::RP3), atom(Atom::SolidTorus)))
                } else if recip(r, -3).is_some() {
                    row("-1", "-3+1/n", atom(Atom::SolidTorus))
                } else {
                    row("-1", "generic", ManifoldDesc::sfs(Base::D, &[(2, 1), (rr + 3 * ss, ss)]))
                }
            }
            0 => {
                if r.is_integer() {
                    row("0", "Z", ManifoldDesc::sfs(Base::D, &[(2, 1), (3, 1)]))
                } else {
                    row("0", "not Z", union(sfs(Base::D, &[(2, 1), (3, 1)]), [1, 1, -1, 0], sfs(Base::A, &[(ss, rr)])))
                }
            }
            _ => None,
        },
        2 => {
            let m = || union(sfs(Base::D, &[(2, 1), (3, 1)]), [1, 1, -1, 0], sfs(Base::A, &[(2, 1)]));
            if is(p, 1) && is(r, 1) {
                row("1", "1", glued(sfs(Base::P, &[]), [0, 1, 1, 0]))
            } else if is_frac(p, -3, 2) && is_frac(r, -5, 2) {
                row("-3/2", "-5/2", m())
            } else if is(p, -4) && is_frac(r, -1, 2) {
                row("-4", "-1/2", m())
            } else {
                None
            }
        }
        _ => None,
    }
}

pub fn classify_three(a: Slope, b: Slope, c: Slope) -> Classification {
    let input = [a, b, c];
    for stage in 0..4 {
        for perm in permutations(3) {
            let (p, r, t) = (input[perm[0]], input[perm[1]], input[perm[2]]);
            if let Some((rule, m)) = three_rule(stage, p, r, t) {
                return Classification::found(rule, m, perm);
            }
        }
    }
    Classification::hyperbolic(3)
}

/// The least (r′,s′), first by r′ ≥ 0 and then by |s′|, with rs′ − sr′ = ±1.
pub fn least_dual(r: i64, s: i64) -> (i64, i64) {
    if r == 0 {
        return (1, 0);
    }
    (0..=r.abs())
        .flat_map(|rp| [1, -1].into_iter().map(move |e| (rp, e + s * rp)))
        .filter(|&(_, num)| num % r == 0)
        .map(|(rp, num)| (rp, num / r))
        .min_by_key(|&(rp, sp)| (rp, sp.abs(), sp < 0))
        .expect("r and s are coprime")
}

/// L(tr − us, tr′ − us′) for the slopes r/s and t/u beside ∞.
pub fn infinity_lens(r: Slope, t: Slope) -> ManifoldDesc {
    let (rr, ss, tt, uu) = (r.p(), r.q(), t.p(), t.q());
    let (rp, sp) = least_dual(rr, ss);
    lens(tt * rr - uu * ss, tt * rp - uu * sp)
}

fn three_rule(stage: u8, p: Slope, r: Slope, t: Slope) -> Option<(String, ManifoldDesc)> {
    match stage {
        0 if p.is_inf() => Some(("Thm3:inf".to_string(), infinity_lens(r, t))),
        1 if !r.is_inf() && !t.is_inf() => table2(p.as_integer()?, r, t),
        2 if !t.is_inf() => table3(p, r, t),
        3 => table4(p, r, t),
        _ => None,
    }
}

fn table2(p: i64, r: Slope, t: Slope) -> Option<(String, ManifoldDesc)> {
    let row = |case: &str, m: ManifoldDesc| Some((format!("T2:row({p}):case({case})"), m));
    let (rr, ss, tt, uu) = (r.p(), r.q(), t.p(), t.q());
    match p {
        -3 => {
            if (is(r, 1) || is_frac(r, -5, 3)) && t == r {
                row("r/s in {1,-5/3},t/u=r/s", closed(Base::K, &[], 1))
            } else if is(r, -1) {
                row("-1,any", sum(atom(Atom::RP3), lens(tt + 3 * uu, uu)))
            } else if is(r, -2) {
                row("-2,any", lens(5 * tt + 7 * uu, 2 * tt + 3 * uu))
            } else if let (Some(n), Some(m)) = (recip(r, -1), recip(t, -1)) {
                row("-1+1/n,-1+1/m", lens((2 * n + 1) * (2 * m + 1) - 4, (2 * n + 1) * m - 2))
            } else if let (Some(n), false) = (recip(r, -1), is(t, -1) || recip(t, -1).is_some()) {
                row("-1+1/n,generic", closed(Base::S2, &[(2, 1), (2 * n + 1, -2), (tt + uu, uu)], 0))
            } else if is(r, -3) && !is(t, -1) && recip(t, -1).is_none() {
                row("-3,generic", closed(Base::RP2, &[(2, 1), (tt + uu, uu)], 0))
            } else {
                let excluded = |x: Slope| is(x, -1) || is(x, -3) || recip(x, -1).is_some();
                let twin = (is(r, 1) || is_frac(r, -5, 3)) && t == r;
                if excluded(r) || excluded(t) || twin {
                    return None;
                }
                row(
                    "generic",
                    union(sfs(Base::D, &[(2, 1), (rr + ss, ss)]), [0, 1, 1, 0], sfs(Base::D, &[(2, 1), (tt + uu, uu)])),
                )
            }
        }
        -2 => {
            if is(r, -2) {
                row("-2,any", sum(lens(3, 1), lens(tt + 2 * uu, uu)))
            } else if let Some(n) = recip(r, -2) {
                row("-2+1/n,any", lens(3 * n * (tt + 2 * uu) - 2 * tt - uu, n * (tt + 2 * uu) - tt - uu))
            } else if is(t, -2) || recip(t, -2).is_some() {
                None
            } else {
                row("generic", closed(Base::S2, &[(3, 2), (rr + 2 * ss, -ss), (tt + 2 * uu, -uu)], 0))
            }
        }
        -1 => {
            if is(r, -3) {
                row("-3,any", sum(atom(Atom::RP3), lens(tt + 3 * uu, uu)))
            } else if let Some(n) = recip(r, -3) {
                row("-3+1/n,any", lens(2 * n * (tt + 3 * uu) - tt - uu, n * (tt + 3 * uu) + uu))
            } else if is(t, -3) || recip(t, -3).is_some() {
                None
            } else {
                row("generic", closed(Base::S2, &[(2, 1), (rr + 3 * ss, -ss), (tt + 3 * uu, -uu)], 0))
            }
        }
        0 => {
            if let Some(n) = r.as_integer() {
                if is(t, -4 - n) {
                    row("n,-4-n", sum(atom(Atom::RP3), lens(3, 1)))
                } else if let Some(m) = recip(t, -4 - n) {
                    row("n,-4-n+1/m", lens(6 * m - 1, 2 * m - 1))
                } else {
                    row("n,generic", closed(Base::S2, &[(2, -1), (3, 1), (tt + (n + 4) * uu, uu)], 0))
                }
            } else if ss == 2 && t == Slope::frac(-rr - 4 * ss, ss) {
                row("1/2+n,-9/2-n", closed(Base::RP2, &[(2, 1), (3, 1)], -1))
            } else if !t.is_integer() {
                row(
                    "not Z,not Z",
                    union(sfs(Base::D, &[(ss, rr + 2 * ss), (uu, tt + 2 * uu)]), [0, 1, -1, -1], sfs(Base::D, &[(2, 1), (3, 1)])),
                )
            } else {
                None
            }
        }
        _ => None,
    }
}

fn table3(p: Slope, r: Slope, t: Slope) -> Option<(String, ManifoldDesc)> {
    let (tt, uu) = (t.p(), t.q());
    let d23 = || sfs(Base::D, &[(2, 1), (3, 1)]);
    let (name, case, m) = if is(p, 1) && is(r, 1) {
        match t.as_integer() {
            Some(n) => ("1,1", "n", ManifoldDesc::TorusBundle { monodromy: Unimodular::m(n + 1, 1, -1, 0) }),
            None => ("1,1", "not Z", glued(sfs(Base::A, &[(uu, tt + uu)]), [0, 1, 1, 0])),
        }
    } else if is_frac(p, -3, 2) && is_frac(r, -5, 2) {
        let row = "-3/2,-5/2";
        if is(t, -2) {
            (row, "-2", atom(Atom::RP3))
        } else if is(t, -1) {
            (row, "-1", lens(13, 5))
        } else if is(t, 0) {
            (row, "0", closed(Base::RP2, &[(2, 1), (3, 1)], -1))
        } else if let Some(n) = recip(t, -2) {
            (row, "-2+1/n", closed(Base::S2, &[(2, 1), (3, -1), (2 * n - 1, 2)], 0))
        } else {
            (row, "generic", union(d23(), [1, 1, 0, -1], sfs(Base::D, &[(2, 1), (tt + 2 * uu, uu)])))
        }
    } else if is(p, -4) && is_frac(r, -1, 2) {
        let row = "-4,-1/2";
        if is(t, -1) {
            (row, "-1", lens(11, 3))
        } else if is_frac(t, -1, 2) {
            (row, "-1/2", closed(Base::RP2, &[(2, 1), (3, 1)], -1))
        } else if is(t, 0) {
            (row, "0", lens(13, 5))
        } else if let Some(n) = t.as_integer() {
            (row, "n", closed(Base::S2, &[(2, 1), (3, -1), (2 * n + 1, 2)], 0))
        } else {
            (row, "not Z", union(d23(), [1, 1, 1, 0], sfs(Base::D, &[(2, 1), (uu, tt)])))
        }
    } else {
        return None;
    };
    Some((format!("T3:row({name}):case({case})"), m))
}

/// The fourteen sporadic triples, sorted increasingly, with their fillings.
pub fn sporadic_triples() -> Vec<([Slope; 3], ManifoldDesc)> {
    let f = Slope::frac;
    let i = Slope::int;
    let a21 = || sfs(Base::A, &[(2, 1)]);
    let d22 = || sfs(Base::D, &[(2, 1), (2, 1)]);
    let d23 = || sfs(Base::D, &[(2, 1), (3, 1)]);
    vec![
        ([i(-5), i(-5), f(-1, 2)], glued(a21(), [0, 1, 1, 0])),
        ([i(-4), i(-4), f(-2, 3)], glued(a21(), [1, 1, 1, 0])),
        ([i(-4), f(-3, 2), f(-3, 2)], ManifoldDesc::TorusBundle { monodromy: Unimodular::m(-3, 1, -1, 0) }),
        ([i(-4), f(-1, 3), i(1)], union(d22(), [0, 1, -1, -1], d23())),
        ([f(-8, 3), f(-3, 2), f(-3, 2)], union(d22(), [0, 1, -1, -1], d23())),
        ([f(-5, 2), f(-5, 2), f(-4, 3)], glued(a21(), [2, 1, 1, 0])),
        ([f(-5, 2), f(-5, 3), f(-5, 3)], union(d22(), [-1, 1, 0, -1], d23())),
        ([f(-7, 3), f(-7, 3), f(-3, 2)], glued(a21(), [1, 1, 1, 0])),
        ([i(1), i(2), i(2)], closed(Base::S2, &[(2, 1), (3, 1), (7, 1)], -1)),
        ([i(1), i(2), i(3)], closed(Base::S2, &[(2, 1), (4, 1), (5, 1)], -1)),
        ([i(1), i(2), i(4)], closed(Base::S2, &[(3, 1), (3, 1), (4, 1)], -1)),
        ([i(1), i(2), i(5)], union(d22(), [0, 1, 1, 0], d23())),
        ([i(1), i(3), i(3)], union(d22(), [1, 2, 0, -1], d23())),
        ([i(2), i(2), i(2)], union(d22(), [2, 3, -1, -2], d23())),
    ]
}

fn table4(p: Slope, r: Slope, t: Slope) -> Option<(String, ManifoldDesc)> {
    let mut key = [p, r, t];
    if key.windows(2).any(|w| w[0] > w[1]) {
        return None;
    }
    key.sort();
    sporadic_triples()
        .into_iter()
        .find(|(k, _)| *k == key)
        .map(|(k, m)| (format!("T4:({},{},{})", k[0], k[1], k[2]), m))
}

/// Every rule matching some ordering of the slopes, for overlap checks.
pub fn all_matches(spec: &FillingSpec) -> Vec<(String, ManifoldDesc)> {
    let s = spec.slopes();
    let mut out: Vec<(String, ManifoldDesc)> = vec![];
    for perm in permutations(s.len()) {
        let got: Vec<Option<(String, ManifoldDesc)>> = match s.len() {
            1 => vec![one_rule(s[0])],
            2 => (0..3).map(|st| two_rule(st, s[perm[0]], s[perm[1]])).collect(),
            _ => (0..4).map(|st| three_rule(st, s[perm[0]], s[perm[1]], s[perm[2]])).collect(),
        };
        for g in got.into_iter().flatten() {
            if !out.iter().any(|(r, _)| *r == g.0) {
                out.push(g);
            }
        }
    }
    out
}

/// The filling read off from the decomposition of N adapted to one anchor slope.
/// Slopes beyond the anchor are optional; an unfilled cusp leaves a boundary torus in
/// place of the corresponding exceptional fiber.
pub fn generic_filling(spec: &FillingSpec) -> Option<ManifoldDesc> {
    let s = spec.slopes();
    for perm in permutations(s.len()) {
        let p = s[perm[0]];
        let rest: Vec<Slope> = perm[1..].iter().map(|&i| s[i]).collect();
        if let Some(m) = generic_from(p, &rest) {
            return Some(m);
        }
    }
    None
}

fn generic_from(p: Slope, rest: &[Slope]) -> Option<ManifoldDesc> {
    // Fibers for the filled cusps; each unfilled cusp adds a boundary to the base.
    let fibers = |f: &dyn Fn(Slope) -> (i64, i64)| -> (Vec<(i64, i64)>, usize) {
        (rest.iter().map(|&x| f(x)).collect(), 2 - rest.len())
    };
    let with_holes = |closed_base: bool, extra: usize, fs: Vec<(i64, i64)>, holes: usize| -> Seifert {
        let base = match (closed_base, extra + holes) {
            (true, 0) => Base::S2,
            (_, 1) => Base::D,
            (_, 2) => Base::A,
            _ => Base::P,
        };
        let mut s = Seifert::new(base, &fs);
        if base == Base::S2 {
            s.b = Some(0);
        }
        s
    };
    if p.is_inf() {
        // (S², (r,s), (−u,t)).
        let mut fs = vec![];
        if let Some(r) = rest.first() {
            fs.push((r.p(), r.q()));
        }
        if let Some(t) = rest.get(1) {
            fs.push((-t.q(), t.p()));
        }
        return Some(ManifoldDesc::Seifert(with_holes(true, 0, fs, 2 - rest.len())));
    }
    if is(p, 1) && rest.first().is_some_and(|&x| is(x, 1)) {
        return Some(match rest.get(1) {
            Some(t) => glued(sfs(Base::A, &[(t.q(), t.p() + t.q())]), [0, 1, 1, 0]),
            None => glued(sfs(Base::P, &[]), [0, 1, 1, 0]),
        });
    }
    if rest.len() == 2 {
        let d22 = || sfs(Base::D, &[(2, 1), (2, 1)]);
        let d23 = || sfs(Base::D, &[(2, 1), (3, 1)]);
        let key = [p, rest[0], rest[1]];
        if key == [Slope::int(1), Slope::int(3), Slope::int(3)] {
            return Some(union(d22(), [1, 2, 0, -1], d23()));
        }
        if key == [Slope::int(2); 3] {
            return Some(union(d22(), [2, 3, -1, -2], d23()));
        }
    }
    match p.as_integer()? {
        -3 => {
            let block = |x: Option<&Slope>| match x {
                Some(x) => sfs(Base::D, &[(2, 1), (x.p() + x.q(), x.q())]),
                None => sfs(Base::A, &[(2, 1)]),
            };
            Some(union(block(rest.first()), [0, 1, 1, 0], block(rest.get(1))))
        }
        -2 => {
            let (mut fs, holes) = fibers(&|x| (x.p() + 2 * x.q(), -x.q()));
            fs.insert(0, (3, 2));
            Some(ManifoldDesc::Seifert(with_holes(true, 0, fs, holes)))
        }
        -1 => {
            let (mut fs, holes) = fibers(&|x| (x.p() + 3 * x.q(), -x.q()));
            fs.insert(0, (2, 1));
            Some(ManifoldDesc::Seifert(with_holes(true, 0, fs, holes)))
        }
        0 => {
            let (fs, holes) = fibers(&|x| (x.q(), x.p() + 2 * x.q()));
            let left = with_holes(false, 1, fs, holes);
            Some(union(left, [0, 1, -1, -1], sfs(Base::D, &[(2, 1), (3, 1)])))
        }
        _ => None,
    }
}
