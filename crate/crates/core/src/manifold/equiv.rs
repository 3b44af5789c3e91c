//! Deciding homeomorphism (unoriented) between descriptions.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::canon::{canonicalize_traced, prime_pieces, Step};
use super::rewrite::{applicable, rewrite, RewriteId, Site};
use super::{canonicalize, Base, ManifoldDesc, ModelError};
use crate::homology::h1;

pub const DEFAULT_DEPTH: usize = 8;
const NODE_CAP: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Move {
    pub id: RewriteId,
    pub site: Site,
    pub k: Option<i64>,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Rewrites taking the left description to one with the shared normal form.
    pub search: Vec<Move>,
    pub left_trace: Vec<Step>,
    pub right_trace: Vec<Step>,
    pub normal_form: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum EqualityVerdict {
    Equal { witness: Witness },
    Distinct { invariant: String, left: String, right: String },
    Unknown,
}

impl EqualityVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, EqualityVerdict::Equal { .. })
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, EqualityVerdict::Distinct { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            EqualityVerdict::Equal { .. } => "Equal",
            EqualityVerdict::Distinct { .. } => "Distinct",
            EqualityVerdict::Unknown => "Unknown",
        }
    }
}

pub fn equivalent(a: &ManifoldDesc, b: &ManifoldDesc) -> Result<EqualityVerdict, ModelError> {
    equivalent_with_depth(a, b, DEFAULT_DEPTH)
}

pub fn equivalent_with_depth(a: &ManifoldDesc, b: &ManifoldDesc, depth: usize) -> Result<EqualityVerdict, ModelError> {
    let (ca, ta) = canonicalize_traced(a)?;
    let (cb, tb) = canonicalize_traced(b)?;
    if ca == cb {
        return Ok(EqualityVerdict::Equal {
            witness: Witness { search: vec![], left_trace: ta, right_trace: tb, normal_form: ca.to_string() },
        });
    }
    let (ha, hb) = (h1(&ca).map_err(into_model)?, h1(&cb).map_err(into_model)?);
    if ha != hb {
        return Ok(distinct("H1", ha, hb));
    }
    if let Some(v) = separate(&ca, &cb) {
        return Ok(v);
    }
    if let Some(search) = search(a, &cb, depth)? {
        return Ok(EqualityVerdict::Equal {
            witness: Witness { search, left_trace: ta, right_trace: tb, normal_form: cb.to_string() },
        });
    }
    Ok(EqualityVerdict::Unknown)
}

fn into_model(e: crate::homology::HomologyError) -> ModelError {
    match e {
        crate::homology::HomologyError::Model(m) => m,
        other => ModelError::Unsupported(other.to_string()),
    }
}

fn distinct(invariant: &str, l: impl ToString, r: impl ToString) -> EqualityVerdict {
    EqualityVerdict::Distinct { invariant: invariant.to_string(), left: l.to_string(), right: r.to_string() }
}

/// Whether the normal form of a prime piece is known to be unique within its class.
fn complete(m: &ManifoldDesc) -> bool {
    match m {
        ManifoldDesc::Seifert(s) => !matches!(s.base, Base::K | Base::RP2),
        ManifoldDesc::Graph(g) => g.blocks.iter().all(|b| b.base.orientable()),
        _ => true,
    }
}

fn kind(m: &ManifoldDesc) -> &'static str {
    match m {
        ManifoldDesc::Lens { .. } => "lens",
        ManifoldDesc::Seifert(_) => "seifert",
        ManifoldDesc::Graph(_) => "graph",
        ManifoldDesc::TorusBundle { .. } => "bundle",
        ManifoldDesc::Atom { .. } => "atom",
        ManifoldDesc::ConnectedSum { .. } => "sum",
    }
}

fn block_multiset(m: &ManifoldDesc) -> Vec<String> {
    let mut v: Vec<String> = match m {
        ManifoldDesc::Graph(g) => g.blocks.iter().map(|b| ManifoldDesc::Seifert(b.clone()).to_string()).collect(),
        other => vec![other.to_string()],
    };
    v.sort();
    v
}

fn intersections(m: &ManifoldDesc) -> Vec<i64> {
    let mut v: Vec<i64> = match m {
        ManifoldDesc::Graph(g) => g.gluings.iter().map(|x| x.matrix.b.abs()).collect(),
        _ => vec![],
    };
    v.sort();
    v
}

/// A named invariant separating two canonical forms, when both lie in classes whose
/// normal forms are unique.
fn separate(a: &ManifoldDesc, b: &ManifoldDesc) -> Option<EqualityVerdict> {
    let (pa, pb) = (prime_pieces(a), prime_pieces(b));
    if !pa.iter().chain(&pb).all(complete) {
        return None;
    }
    let show = |ps: &[ManifoldDesc]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" # ");
    if pa.len() != pb.len() {
        return Some(distinct("prime-decomposition", show(&pa), show(&pb)));
    }
    let kinds = |ps: &[ManifoldDesc]| {
        let mut k: Vec<&str> = ps.iter().map(kind).collect();
        k.sort();
        k
    };
    if kinds(&pa) != kinds(&pb) {
        return Some(distinct("prime-decomposition", show(&pa), show(&pb)));
    }
    if pa.len() > 1 {
        return Some(distinct("prime-decomposition", show(&pa), show(&pb)));
    }
    let (x, y) = (&pa[0], &pb[0]);
    let name = match (x, y) {
        (ManifoldDesc::Lens { .. }, _) => "lens-classification",
        (ManifoldDesc::TorusBundle { .. }, _) => "monodromy-conjugacy",
        (ManifoldDesc::Seifert(_), _) | (ManifoldDesc::Atom { .. }, _) => "seifert-invariants",
        (ManifoldDesc::Graph(_), _) => {
            let (ba, bb) = (block_multiset(x), block_multiset(y));
            if ba != bb {
                return Some(distinct("jsj-block-multiset", ba.join(", "), bb.join(", ")));
            }
            let (ia, ib) = (intersections(x), intersections(y));
            if ia != ib {
                return Some(distinct("fiber-intersection", format!("{ia:?}"), format!("{ib:?}")));
            }
            "gluing-normal-form"
        }
        _ => return None,
    };
    Some(distinct(name, x, y))
}

/// Breadth-first search over single rewrites from `start` for a description whose normal
/// form is `target`.
fn search(start: &ManifoldDesc, target: &ManifoldDesc, depth: usize) -> Result<Option<Vec<Move>>, ModelError> {
    let mut seen: HashSet<ManifoldDesc> = HashSet::new();
    let mut queue = VecDeque::from([(start.clone(), Vec::<Move>::new())]);
    seen.insert(start.clone());
    while let Some((m, path)) = queue.pop_front() {
        if path.len() >= depth {
            continue;
        }
        for (id, site, k) in applicable(&m) {
            let next = rewrite(id, &m, site, k)?;
            if seen.contains(&next) {
                continue;
            }
            let mut p = path.clone();
            p.push(Move { id, site, k, result: next.to_string() });
            if canonicalize(&next)? == *target {
                return Ok(Some(p));
            }
            seen.insert(next.clone());
            if seen.len() >= NODE_CAP {
                return Ok(None);
            }
            queue.push_back((next, p));
        }
    }
    Ok(None)
}

/// Replays the moves of a witness from `start`, checking each recorded result.
pub fn replay(start: &ManifoldDesc, moves: &[Move]) -> Result<ManifoldDesc, ModelError> {
    let mut cur = start.clone();
    for mv in moves {
        cur = rewrite(mv.id, &cur, mv.site, mv.k)?;
        if cur.to_string() != mv.result {
            return Err(ModelError::Mismatch(mv.id, format!("replay gave {cur}")));
        }
    }
    Ok(cur)
}
