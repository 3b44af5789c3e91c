//! The filling symmetries R1..R6 of N and orbits under them.
//!
//! Each move fixes one or two anchor slopes and sends the remaining slopes α, β through
//! Möbius maps; R1 also changes its anchor from −3/2 to −4, and R1⁻¹ undoes it.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::slope::{FillingSpec, Slope, Unimodular};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("move {0} needs the anchor slopes {1}")]
    AnchorAbsent(MoveId, String),
    #[error("unknown move `{0}`")]
    UnknownMove(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MoveId {
    R1,
    R1Inv,
    R2,
    R3,
    R4,
    R5,
    R6,
}

impl MoveId {
    pub const ALL: [MoveId; 7] = [MoveId::R1, MoveId::R1Inv, MoveId::R2, MoveId::R3, MoveId::R4, MoveId::R5, MoveId::R6];
}

impl fmt::Display for MoveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MoveId::R1 => "R1",
            MoveId::R1Inv => "R1^-1",
            MoveId::R2 => "R2",
            MoveId::R3 => "R3",
            MoveId::R4 => "R4",
            MoveId::R5 => "R5",
            MoveId::R6 => "R6",
        };
        f.write_str(s)
    }
}

impl FromStr for MoveId {
    type Err = SymmetryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "R1" => MoveId::R1,
            "R1^-1" | "R1inv" | "R1⁻¹" => MoveId::R1Inv,
            "R2" => MoveId::R2,
            "R3" => MoveId::R3,
            "R4" => MoveId::R4,
            "R5" => MoveId::R5,
            "R6" => MoveId::R6,
            _ => return Err(SymmetryError::UnknownMove(s.to_string())),
        })
    }
}

/// Anchors before and after the move, and the maps for α and β.
#[derive(Clone, Debug)]
pub struct SymmetryMove {
    pub id: MoveId,
    pub anchor: Vec<Slope>,
    pub target: Vec<Slope>,
    pub alpha: Unimodular,
    pub beta: Unimodular,
}

pub fn symmetry_move(id: MoveId) -> SymmetryMove {
    let f = Slope::frac;
    let m = Unimodular::m;
    let (anchor, target, alpha, beta) = match id {
        MoveId::R1 => (vec![f(-3, 2)], vec![f(-4, 1)], m(-1, -1, 1, 2), m(-1, -3, 0, 1)),
        MoveId::R1Inv => (vec![f(-4, 1)], vec![f(-3, 2)], m(-1, -1, 1, 2).inv(), m(-1, -3, 0, 1).inv()),
        MoveId::R2 => (vec![f(-5, 2)], vec![f(-5, 2)], m(-1, -3, 1, 2), m(-2, -3, 1, 1)),
        MoveId::R3 => (vec![f(-3, 2)], vec![f(-3, 2)], m(-2, -5, 1, 2), m(-2, -5, 1, 2)),
        MoveId::R4 => (vec![f(-1, 2)], vec![f(-1, 2)], m(-1, -4, 0, 1), m(-1, -4, 0, 1)),
        MoveId::R5 => (vec![f(1, 1), f(2, 1)], vec![f(1, 1), f(2, 1)], m(-1, 2, 0, 1), m(-1, 2, 0, 1)),
        MoveId::R6 => (vec![f(1, 1), f(-4, 1)], vec![f(1, 1), f(-4, 1)], m(0, 1, 1, 0), m(0, 1, 1, 0)),
    };
    SymmetryMove { id, anchor, target, alpha, beta }
}

/// Positions of the anchor slopes, each the first unused occurrence.
fn find_anchor(slopes: &[Slope], anchor: &[Slope]) -> Option<Vec<usize>> {
    let mut used = vec![];
    for a in anchor {
        let i = (0..slopes.len()).find(|i| slopes[*i] == *a && !used.contains(i))?;
        used.push(i);
    }
    Some(used)
}

fn apply_at(mv: &SymmetryMove, slopes: &[Slope], anchor: &[usize], free: &[usize]) -> FillingSpec {
    let mut out: Vec<Slope> = mv.target.clone();
    debug_assert_eq!(anchor.len(), mv.anchor.len());
    for (k, &i) in free.iter().enumerate() {
        let map = if k == 0 { &mv.alpha } else { &mv.beta };
        out.push(map.act(slopes[i]));
    }
    FillingSpec::new(out).expect("moves keep the number of slopes")
}

/// Applies a move with the anchor at its first occurrence and α, β the remaining slopes
/// in input order. The result lists the anchor first.
pub fn apply_move(id: MoveId, spec: &FillingSpec) -> Result<FillingSpec, SymmetryError> {
    let mv = symmetry_move(id);
    let s = spec.slopes();
    let anchor = find_anchor(s, &mv.anchor).ok_or_else(|| {
        let names: Vec<String> = mv.anchor.iter().map(Slope::to_string).collect();
        SymmetryError::AnchorAbsent(id, names.join(","))
    })?;
    let free: Vec<usize> = (0..s.len()).filter(|i| !anchor.contains(i)).collect();
    Ok(apply_at(&mv, s, &anchor, &free))
}

/// All results of a move over every choice of anchor occurrence and every assignment of
/// the other slopes to α and β.
pub fn images(id: MoveId, spec: &FillingSpec) -> Vec<FillingSpec> {
    let mv = symmetry_move(id);
    let s = spec.slopes();
    let n = s.len();
    let mut out = vec![];
    let orders: Vec<Vec<usize>> = match n {
        1 => vec![vec![0]],
        2 => vec![vec![0, 1], vec![1, 0]],
        _ => vec![vec![0, 1, 2], vec![0, 2, 1], vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1], vec![2, 1, 0]],
    };
    let k = mv.anchor.len();
    for ord in orders {
        if ord.len() < k || (0..k).any(|j| s[ord[j]] != mv.anchor[j]) {
            continue;
        }
        let img = apply_at(&mv, s, &ord[..k], &ord[k..]).sorted();
        if !out.contains(&img) {
            out.push(img);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitEntry {
    pub spec: FillingSpec,
    pub word: Vec<MoveId>,
}

/// Closure of `spec` under the moves, up to `depth` compositions. The slopes keep their
/// positions, so α and β are always the non-anchor slopes in stored order; specs are
/// identified as multisets, which accounts for permutations of the cusps.
pub fn orbit(spec: &FillingSpec, depth: usize) -> Vec<OrbitEntry> {
    let mut seen: BTreeMap<Vec<Slope>, Vec<MoveId>> = BTreeMap::new();
    seen.insert(spec.sorted().slopes().to_vec(), vec![]);
    let mut queue = VecDeque::from([(spec.clone(), Vec::<MoveId>::new())]);
    while let Some((cur, word)) = queue.pop_front() {
        if word.len() >= depth {
            continue;
        }
        for id in MoveId::ALL {
            let mv = symmetry_move(id);
            let s = cur.slopes();
            let Some(anchor) = find_anchor(s, &mv.anchor) else { continue };
            let free: Vec<usize> = (0..s.len()).filter(|i| !anchor.contains(i)).collect();
            // Keep positions: the anchor's slots receive the target anchor.
            let moved = apply_at(&mv, s, &anchor, &free);
            let mut slots = s.to_vec();
            for (j, &i) in anchor.iter().chain(&free).enumerate() {
                slots[i] = moved.slopes()[j];
            }
            let key = {
                let mut k = slots.clone();
                k.sort();
                k
            };
            if seen.contains_key(&key) {
                continue;
            }
            let mut w = word.clone();
            w.push(id);
            seen.insert(key, w.clone());
            queue.push_back((FillingSpec::new(slots).expect("same arity"), w));
        }
    }
    seen.into_iter()
        .map(|(k, word)| OrbitEntry { spec: FillingSpec::new(k).expect("same arity"), word })
        .collect()
}

/// Whether two specs are related by moves and cusp permutations within `depth` steps.
pub fn slope_equivalent(a: &FillingSpec, b: &FillingSpec, depth: usize) -> bool {
    let target = b.sorted();
    orbit(a, depth).iter().any(|e| e.spec == target)
}
