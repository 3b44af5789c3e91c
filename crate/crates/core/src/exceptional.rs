//! Exceptional slopes of N and its partial fillings, and cosmetic pairs among them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::classify::{classify, sporadic_triples, Classification};
use crate::manifold::{equivalent, EqualityVerdict, ManifoldDesc, ModelError};
use crate::slope::{FillingSpec, Slope};
use crate::symmetry::{symmetry_move, MoveId};

#[derive(Debug, Error)]
pub enum ExceptionalError {
    #[error("{0} is not hyperbolic, so its exceptional slopes are not defined")]
    NonHyperbolic(String),
    #[error("a base fills at most {max} cusps, got {got}")]
    Arity { max: usize, got: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalReport {
    pub base: Vec<Slope>,
    pub slopes: Vec<Slope>,
    pub count: usize,
}

/// Slopes always exceptional on a free cusp.
pub fn universal_slopes() -> [Slope; 5] {
    [Slope::INF, Slope::int(-3), Slope::int(-2), Slope::int(-1), Slope::int(0)]
}

/// The two-cusp sporadic pairs {1,1}, {−3/2,−5/2}, {−4,−1/2}.
fn pairs() -> [(Slope, Slope); 3] {
    [
        (Slope::int(1), Slope::int(1)),
        (Slope::frac(-3, 2), Slope::frac(-5, 2)),
        (Slope::int(-4), Slope::frac(-1, 2)),
    ]
}

/// Slopes β with {s, β} one of the sporadic pairs.
pub fn pair_partners(s: Slope) -> Vec<Slope> {
    let mut out = vec![];
    for (a, b) in pairs() {
        if a == s {
            out.push(b);
        }
        if b == s {
            out.push(a);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Slopes γ completing {a, b} to one of the fourteen sporadic triples.
pub fn sporadic_completions(a: Slope, b: Slope) -> Vec<Slope> {
    let mut out = vec![];
    for (key, _) in sporadic_triples() {
        for i in 0..3 {
            let rest: Vec<Slope> = (0..3).filter(|j| *j != i).map(|j| key[j]).collect();
            if (rest[0] == a && rest[1] == b) || (rest[0] == b && rest[1] == a) {
                out.push(key[i]);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn spec_with(base: &[Slope], s: Slope) -> FillingSpec {
    let mut v = base.to_vec();
    v.push(s);
    FillingSpec::new(v).expect("base has at most two slopes")
}

fn check_base(base: &[Slope]) -> Result<(), ExceptionalError> {
    if base.len() > 2 {
        return Err(ExceptionalError::Arity { max: 2, got: base.len() });
    }
    if !base.is_empty() {
        let spec = FillingSpec::new(base.to_vec()).expect("one or two slopes");
        if !classify(&spec).is_hyperbolic() {
            return Err(ExceptionalError::NonHyperbolic(spec.to_string()));
        }
    }
    Ok(())
}

/// E of N filled along `base`, on one of the remaining cusps.
///
/// With the base hyperbolic, a further slope is exceptional exactly when it is one of the
/// universal slopes, forms a sporadic pair with a base slope, or completes the base to a
/// sporadic triple. Each candidate is confirmed by the classifier.
pub fn exceptional_slopes(base: &[Slope]) -> Result<ExceptionalReport, ExceptionalError> {
    check_base(base)?;
    let mut cand: BTreeSet<Slope> = universal_slopes().into_iter().collect();
    for s in base {
        cand.extend(pair_partners(*s));
    }
    if let [a, b] = base {
        cand.extend(sporadic_completions(*a, *b));
    }
    let slopes: Vec<Slope> = cand.into_iter().filter(|s| !classify(&spec_with(base, *s)).is_hyperbolic()).collect();
    Ok(ExceptionalReport { base: base.to_vec(), count: slopes.len(), slopes })
}

pub fn e_count_distribution(bases: &[Vec<Slope>]) -> Result<BTreeMap<usize, usize>, ExceptionalError> {
    let mut out = BTreeMap::new();
    for b in bases {
        *out.entry(exceptional_slopes(b)?.count).or_insert(0) += 1;
    }
    Ok(out)
}

/// The eleven bases with e ≥ 7, each by its first presentation.
pub fn large_e_bases() -> Vec<Vec<Slope>> {
    let f = Slope::frac;
    let i = Slope::int;
    vec![
        vec![i(1), i(2)],
        vec![i(1), i(-4)],
        vec![i(1), i(3)],
        vec![i(1), f(-3, 2)],
        vec![i(1), f(-1, 2)],
        vec![i(1), f(-5, 2)],
        vec![i(1), i(4)],
        vec![i(1), i(5)],
        vec![i(1), f(-1, 3)],
        vec![i(-4), f(-1, 3)],
        vec![i(2), i(2)],
    ]
}

/// Slopes on a free cusp of N(γ) related to `s` by automorphisms built from the moves.
///
/// A state records the slope filled on the first cusp and the image of `s`, which sits
/// on one of the two free cusps. Moves act with their anchor on the first cusp; swapping
/// the free cusps is also allowed. States returning to γ give automorphisms of N(γ).
pub fn equivalent_slopes(gamma: Slope, s: Slope, depth: usize) -> BTreeSet<Slope> {
    let mut seen = BTreeSet::from([(gamma, 0u8, s)]);
    let mut queue = VecDeque::from([(gamma, 0u8, s, 0usize)]);
    let mut out = BTreeSet::from([s]);
    while let Some((g, slot, x, d)) = queue.pop_front() {
        if d >= depth {
            continue;
        }
        let mut next = vec![(g, 1 - slot, x)];
        for id in MoveId::ALL {
            let mv = symmetry_move(id);
            if mv.anchor.len() != 1 || mv.anchor[0] != g {
                continue;
            }
            let map = if slot == 0 { &mv.alpha } else { &mv.beta };
            next.push((mv.target[0], slot, map.act(x)));
        }
        for st in next {
            if seen.insert(st) {
                if st.0 == gamma {
                    out.insert(st.2);
                }
                queue.push_back((st.0, st.1, st.2, d + 1));
            }
        }
    }
    out
}

pub const EQUIVALENCE_DEPTH: usize = 6;

/// A row of the cosmetic table, with the orientation columns as printed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosmeticRow {
    pub base: &'static str,
    pub alpha: Slope,
    pub beta: Slope,
    pub manifold: &'static str,
    pub truly: bool,
    pub reflectively: bool,
}

/// The rows of the cosmetic table. Family rows use n for the base.
pub fn cosmetic_table() -> Vec<CosmeticRow> {
    let row = |base, alpha, beta, manifold, truly, reflectively| CosmeticRow { base, alpha, beta, manifold, truly, reflectively };
    vec![
        row("", Slope::int(-4), Slope::frac(-3, 2), "Whitehead sister", false, true),
        row("-3+1/n", Slope::INF, Slope::int(-1), "DxS1", true, true),
        row("-2+1/n", Slope::INF, Slope::int(-2), "DxS1", true, true),
        row("-12/5", Slope::int(-2), Slope::int(-1), "SFS(D;(2,1),(3,1))", true, false),
        row("-6", Slope::int(-1), Slope::int(0), "SFS(D;(2,1),(3,1))", false, true),
        row("-4/3", Slope::int(-3), Slope::int(-1), "SFS(D;(2,1),(5,2))", false, true),
    ]
}

/// The tabled row a pair belongs to, if any.
pub fn table_row(base: &[Slope], a: Slope, b: Slope) -> Option<CosmeticRow> {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    cosmetic_table().into_iter().find(|r| {
        let (x, y) = if r.alpha <= r.beta { (r.alpha, r.beta) } else { (r.beta, r.alpha) };
        if (x, y) != (a, b) {
            return false;
        }
        match (r.base, base) {
            ("", []) => true,
            ("-3+1/n", [g]) => g.unit_offset_from(-3).is_some_and(|n| ![1, -1, 2].contains(&n)),
            ("-2+1/n", [g]) => g.unit_offset_from(-2).is_some_and(|n| ![1, -1, 2, -2].contains(&n)),
            (text, [g]) => crate::slope::parse_slope(text).is_ok_and(|s| s == *g),
            _ => false,
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CosmeticPair {
    pub base: Vec<Slope>,
    pub alpha: Slope,
    pub beta: Slope,
    pub manifold: ManifoldDesc,
    /// Not related by a move-built automorphism within the search depth. Whether the
    /// slopes are inequivalent under every automorphism is known only for tabled rows.
    pub move_inequivalent: bool,
    pub tabled: bool,
    pub truly: Option<bool>,
    pub reflectively: Option<bool>,
}

fn filled(c: &Classification) -> Option<&ManifoldDesc> {
    c.manifold.as_ref()
}

/// Pairs of exceptional slopes on one free cusp with homeomorphic fillings, excluding
/// pairs related by the moves.
pub fn cosmetic_pairs(base: &[Slope]) -> Result<Vec<CosmeticPair>, ExceptionalError> {
    if base.len() > 1 {
        return Err(ExceptionalError::Arity { max: 1, got: base.len() });
    }
    let e = exceptional_slopes(base)?;
    let fills: Vec<(Slope, ManifoldDesc)> = e
        .slopes
        .iter()
        .filter_map(|s| filled(&classify(&spec_with(base, *s))).map(|m| (*s, m.clone())))
        .collect();
    let mut out = vec![];
    for (i, (a, ma)) in fills.iter().enumerate() {
        for (b, mb) in &fills[i + 1..] {
            if !matches!(equivalent(ma, mb)?, EqualityVerdict::Equal { .. }) {
                continue;
            }
            let related = match base {
                [g] => equivalent_slopes(*g, *a, EQUIVALENCE_DEPTH).contains(b),
                _ => false,
            };
            if related {
                continue;
            }
            let row = table_row(base, *a, *b);
            out.push(CosmeticPair {
                base: base.to_vec(),
                alpha: *a,
                beta: *b,
                manifold: crate::manifold::canonicalize(ma)?,
                move_inequivalent: true,
                tabled: row.is_some(),
                truly: row.as_ref().map(|r| r.truly),
                reflectively: row.as_ref().map(|r| r.reflectively),
            });
        }
    }
    Ok(out)
}

/// Cosmetic pairs of N(γ) for every hyperbolic γ = p/q with |p|, |q| ≤ bound.
pub fn cosmetic_scan(bound: i64) -> Result<Vec<CosmeticPair>, ExceptionalError> {
    let mut gammas = BTreeSet::new();
    for q in 0..=bound {
        for p in -bound..=bound {
            if let Ok(s) = Slope::new(p, q) {
                gammas.insert(s);
            }
        }
    }
    let mut out = vec![];
    for g in gammas {
        if !classify(&FillingSpec::new(vec![g]).expect("one slope")).is_hyperbolic() {
            continue;
        }
        out.extend(cosmetic_pairs(&[g])?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slope::parse_slope;

    fn s(x: &str) -> Slope {
        parse_slope(x).unwrap()
    }

    fn set(xs: &[&str]) -> Vec<Slope> {
        let mut v: Vec<Slope> = xs.iter().map(|x| s(x)).collect();
        v.sort();
        v
    }

    #[test]
    fn examples() {
        assert_eq!(exceptional_slopes(&[]).unwrap().slopes, set(&["inf", "-3", "-2", "-1", "0"]));
        let r = exceptional_slopes(&[s("1"), s("2")]).unwrap();
        assert_eq!(r.slopes, set(&["inf", "-3", "-2", "-1", "0", "1", "2", "3", "4", "5"]));
        assert_eq!(exceptional_slopes(&[s("-5/2")]).unwrap().slopes, set(&["inf", "-3", "-2", "-3/2", "-1", "0"]));
        assert!(exceptional_slopes(&[s("-3")]).is_err());
        assert!(exceptional_slopes(&[s("1"), s("1")]).is_err());
    }

    #[test]
    fn distributions() {
        let d = e_count_distribution(&large_e_bases()).unwrap();
        assert_eq!(d, BTreeMap::from([(10, 1), (8, 2), (7, 8)]));
        for x in ["-4", "-5/2", "-3/2", "-1/2", "1"] {
            assert_eq!(exceptional_slopes(&[s(x)]).unwrap().count, 6, "{x}");
        }
        assert_eq!(exceptional_slopes(&[s("2")]).unwrap().count, 5);
    }

    #[test]
    fn berge_slopes_cycle() {
        let e = equivalent_slopes(s("-5/2"), Slope::INF, 6);
        assert!(e.contains(&s("-1")) && e.contains(&s("-2")));
    }

    #[test]
    fn cosmetic_examples() {
        let p = cosmetic_pairs(&[s("-12/5")]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!((p[0].alpha, p[0].beta), (s("-2"), s("-1")));
        assert_eq!(p[0].manifold.to_string(), "SFS(D;(2,1),(3,1))");
        let p = cosmetic_pairs(&[s("-6")]).unwrap();
        assert_eq!(p.iter().map(|c| (c.alpha, c.beta)).collect::<Vec<_>>(), [(s("-1"), s("0"))]);
        assert!(cosmetic_pairs(&[s("-7")]).unwrap().is_empty());
    }
}
