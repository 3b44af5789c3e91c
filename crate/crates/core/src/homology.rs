//! First homology via integer presentations and Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::manifold::plumb::Plumb;
use crate::manifold::{Atom, ManifoldDesc, ModelError};
use crate::slope::{FillingSpec, Unimodular};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("invariant factor {0} does not fit in 64 bits")]
    Overflow(String),
}

/// Diagonal of the Smith normal form: d₁ | d₂ | … followed by zeros, min(rows, cols) entries.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigInt>> =
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let n = rows.min(cols);
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let Some((pi, pj)) = min_nonzero(&a, t) else {
            diag.extend(std::iter::repeat(BigInt::zero()).take(n - t));
            break;
        };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let v = &q * &a[i][t];
                    a[i][j] -= v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A smaller remainder sits in row or column t; move it to the pivot.
                let (pi, pj) = min_in_cross(&a, t);
                a.swap(t, pi);
                for r in a.iter_mut() {
                    r.swap(t, pj);
                }
                continue;
            }
            // Pivot must divide the whole trailing block.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

fn min_nonzero(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_in_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let better = |x: &BigInt, b: &BigInt| !x.is_zero() && x.abs() < b.abs();
    for i in t..a.len() {
        if better(&a[i][t], &a[best.0][best.1]) {
            best = (i, t);
        }
    }
    for j in t..a[t].len() {
        if better(&a[t][j], &a[best.0][best.1]) {
            best = (t, j);
        }
    }
    best
}

/// A finitely generated abelian group Z^rank ⊕ Z/d₁ ⊕ … with d₁ | d₂ | …, each dᵢ ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> AbelianGroup {
        AbelianGroup { rank: 0, torsion: vec![] }
    }

    pub fn free(rank: usize) -> AbelianGroup {
        AbelianGroup { rank, torsion: vec![] }
    }

    pub fn cyclic(n: u64) -> AbelianGroup {
        match n {
            0 => AbelianGroup::free(1),
            1 => AbelianGroup::trivial(),
            n => AbelianGroup { rank: 0, torsion: vec![n] },
        }
    }

    /// The cokernel of the relation rows acting on Z^gens.
    pub fn from_relations(rows: &[Vec<i64>], gens: usize) -> Result<AbelianGroup, HomologyError> {
        if rows.is_empty() || gens == 0 {
            return Ok(AbelianGroup::free(gens));
        }
        let diag = smith_normal_form(rows);
        let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
        let mut torsion = vec![];
        for d in diag.iter().filter(|d| !d.is_zero() && !d.is_one()) {
            torsion.push(d.to_u64().ok_or_else(|| HomologyError::Overflow(d.to_string()))?);
        }
        Ok(AbelianGroup { rank: gens - nonzero, torsion })
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let all: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        let n = all.len();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { all[i] as i64 } else { 0 }).collect())
            .collect();
        let torsion = if n == 0 {
            vec![]
        } else {
            smith_normal_form(&rows)
                .into_iter()
                .filter(|d| !d.is_one())
                .map(|d| d.to_u64().expect("product of u64 factors"))
                .collect()
        };
        AbelianGroup { rank: self.rank + other.rank, torsion }
    }

    /// |G| when finite.
    pub fn order(&self) -> Option<u128> {
        (self.rank == 0).then(|| self.torsion.iter().map(|&d| d as u128).product())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![];
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// |Σ qᵢ Π_{j≠i} pⱼ|, the order of H₁ of a closed Seifert manifold over S² (0 when infinite).
pub fn seifert_order_nu(pairs: &[(i64, i64)]) -> u128 {
    let mut total = BigInt::zero();
    for (i, &(_, q)) in pairs.iter().enumerate() {
        let mut term = BigInt::from(q);
        for (j, &(p, _)) in pairs.iter().enumerate() {
            if i != j {
                term *= p;
            }
        }
        total += term;
    }
    total.abs().to_u128().expect("ν fits in 128 bits")
}

/// Z ⊕ coker(A − I).
pub fn torus_bundle_h1(a: &Unimodular) -> AbelianGroup {
    let rows = vec![vec![a.a - 1, a.c], vec![a.b, a.d - 1]];
    let coker = AbelianGroup::from_relations(&rows, 2).expect("2x2 factors fit");
    AbelianGroup::free(1).direct_sum(&coker)
}

pub fn h1(m: &ManifoldDesc) -> Result<AbelianGroup, HomologyError> {
    Ok(match m {
        ManifoldDesc::Lens { p, .. } => AbelianGroup::cyclic(p.unsigned_abs()),
        ManifoldDesc::Atom { atom } => match atom {
            Atom::S3 => AbelianGroup::trivial(),
            Atom::S2xS1 | Atom::SolidTorus => AbelianGroup::free(1),
            Atom::RP3 => AbelianGroup::cyclic(2),
            Atom::TxI => AbelianGroup::free(2),
            Atom::PxS1 => AbelianGroup::free(3),
        },
        ManifoldDesc::TorusBundle { monodromy } => torus_bundle_h1(monodromy),
        ManifoldDesc::ConnectedSum { summands } => {
            let mut acc = AbelianGroup::trivial();
            for s in summands {
                acc = acc.direct_sum(&h1(s)?);
            }
            acc
        }
        ManifoldDesc::Seifert(_) | ManifoldDesc::Graph(_) => plumb_h1(&Plumb::from_desc(m)?)?,
    })
}

pub(crate) fn plumb_h1(p: &Plumb) -> Result<AbelianGroup, HomologyError> {
    let (rows, gens) = p.relation_matrix();
    let g = AbelianGroup::from_relations(&rows, gens)?;
    Ok(g.direct_sum(&AbelianGroup::free(p.cycle_rank())))
}

/// H₁ of a filling of N read off the linking matrix of the chain link: cusp i filled
/// along (pᵢ, qᵢ) kills pᵢ·μᵢ + qᵢ·Σ_{j≠i} μⱼ.
pub fn filling_h1(spec: &FillingSpec) -> AbelianGroup {
    let rows: Vec<Vec<i64>> = spec
        .slopes()
        .iter()
        .enumerate()
        .map(|(i, s)| (0..3).map(|j| if i == j { s.p() } else { s.q() }).collect())
        .collect();
    AbelianGroup::from_relations(&rows, 3).expect("small factors")
}
