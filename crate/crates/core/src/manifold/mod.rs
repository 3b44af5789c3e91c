//! Manifold descriptions: lens spaces, Seifert blocks, graph manifolds, torus bundles
//! and connected sums, with canonical forms and a homeomorphism test.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::slope::{gcd, Unimodular};

pub mod canon;
pub mod conj;
pub mod equiv;
pub mod parse;
pub(crate) mod plumb;
pub mod rewrite;

pub use canon::{canonicalize, canonicalize_traced, Step};
pub use conj::{conj_key, gl2z_conjugate, ConjKey};
pub use equiv::{equivalent, equivalent_with_depth, replay, EqualityVerdict, Move, Witness, DEFAULT_DEPTH};
pub use parse::parse_manifold;
pub use rewrite::{rewrite, RewriteId, Site};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("fiber ({0},{1}) is not a coprime pair")]
    NotCoprime(i64, i64),
    #[error("twist b given for bounded base {0}")]
    TwistOnBoundedBase(Base),
    #[error("graph block {0} has a closed base")]
    ClosedBlock(usize),
    #[error("gluing references missing boundary {0}.{1}")]
    NoSuchBoundary(usize, usize),
    #[error("boundary {0}.{1} glued twice")]
    BoundaryReused(usize, usize),
    #[error("graph is empty or disconnected")]
    Disconnected,
    #[error("connected sum needs at least two summands")]
    ShortSum,
    #[error("gluing produces a non-orientable manifold")]
    NonOrientable,
    #[error("result lies outside the supported bases: {0}")]
    Unsupported(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("rewrite {0} does not match: {1}")]
    Mismatch(u8, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Base {
    S2,
    RP2,
    D,
    A,
    S,
    P,
    T,
    K,
}

impl Base {
    pub fn boundary_count(self) -> usize {
        match self {
            Base::S2 | Base::RP2 | Base::T | Base::K => 0,
            Base::D | Base::S => 1,
            Base::A => 2,
            Base::P => 3,
        }
    }

    pub fn is_closed(self) -> bool {
        self.boundary_count() == 0
    }

    pub fn orientable(self) -> bool {
        !matches!(self, Base::RP2 | Base::S | Base::K)
    }

    /// Genus for orientable bases, number of cross-caps otherwise.
    pub fn genus(self) -> u32 {
        match self {
            Base::T | Base::RP2 | Base::S => 1,
            Base::K => 2,
            _ => 0,
        }
    }

    pub(crate) fn from_parts(orientable: bool, genus: u32, holes: usize) -> Option<Base> {
        Some(match (orientable, genus, holes) {
            (true, 0, 0) => Base::S2,
            (true, 0, 1) => Base::D,
            (true, 0, 2) => Base::A,
            (true, 0, 3) => Base::P,
            (true, 1, 0) => Base::T,
            (false, 1, 0) => Base::RP2,
            (false, 1, 1) => Base::S,
            (false, 2, 0) => Base::K,
            _ => return None,
        })
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Base::S2 => "S2",
            Base::RP2 => "RP2",
            Base::D => "D",
            Base::A => "A",
            Base::S => "S",
            Base::P => "P",
            Base::T => "T",
            Base::K => "K",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Atom {
    SolidTorus,
    TxI,
    PxS1,
    S3,
    S2xS1,
    RP3,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Atom::SolidTorus => "DxS1",
            Atom::TxI => "TxI",
            Atom::PxS1 => "PxS1",
            Atom::S3 => "S3",
            Atom::S2xS1 => "S2xS1",
            Atom::RP3 => "RP3",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Seifert {
    pub base: Base,
    pub fibers: Vec<(i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
}

impl Seifert {
    pub fn new(base: Base, fibers: &[(i64, i64)]) -> Seifert {
        Seifert { base, fibers: fibers.to_vec(), b: None }
    }

    pub fn closed(base: Base, fibers: &[(i64, i64)], b: i64) -> Seifert {
        Seifert { base, fibers: fibers.to_vec(), b: Some(b) }
    }

    fn validate(&self) -> Result<(), ModelError> {
        for &(p, q) in &self.fibers {
            if gcd(p, q) != 1 {
                return Err(ModelError::NotCoprime(p, q));
            }
        }
        if self.b.is_some() && !self.base.is_closed() {
            return Err(ModelError::TwistOnBoundedBase(self.base));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Endpoint {
    pub block: usize,
    pub boundary: usize,
}

/// Boundary `from` is identified with boundary `to`; the matrix sends (μ,λ) coordinates
/// of `from` to those of `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gluing {
    pub from: Endpoint,
    pub to: Endpoint,
    pub matrix: Unimodular,
}

impl Gluing {
    pub fn new(from: (usize, usize), to: (usize, usize), matrix: Unimodular) -> Gluing {
        Gluing {
            from: Endpoint { block: from.0, boundary: from.1 },
            to: Endpoint { block: to.0, boundary: to.1 },
            matrix,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Graph {
    pub blocks: Vec<Seifert>,
    pub gluings: Vec<Gluing>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum ManifoldDesc {
    Lens { p: i64, q: i64 },
    Seifert(Seifert),
    Graph(Graph),
    TorusBundle { monodromy: Unimodular },
    ConnectedSum { summands: Vec<ManifoldDesc> },
    Atom { atom: Atom },
}

impl ManifoldDesc {
    pub fn lens(p: i64, q: i64) -> ManifoldDesc {
        ManifoldDesc::Lens { p, q }
    }

    pub fn atom(atom: Atom) -> ManifoldDesc {
        ManifoldDesc::Atom { atom }
    }

    pub fn sfs(base: Base, fibers: &[(i64, i64)]) -> ManifoldDesc {
        ManifoldDesc::Seifert(Seifert::new(base, fibers))
    }

    pub fn closed_sfs(base: Base, fibers: &[(i64, i64)], b: i64) -> ManifoldDesc {
        ManifoldDesc::Seifert(Seifert::closed(base, fibers, b))
    }

    pub fn torus_bundle(a: i64, b: i64, c: i64, d: i64) -> ManifoldDesc {
        ManifoldDesc::TorusBundle { monodromy: Unimodular::m(a, b, c, d) }
    }

    /// Two blocks glued along boundary 0 of each.
    pub fn union(left: Seifert, x: Unimodular, right: Seifert) -> ManifoldDesc {
        ManifoldDesc::Graph(Graph { blocks: vec![left, right], gluings: vec![Gluing::new((0, 0), (1, 0), x)] })
    }

    /// A block with boundaries 0 and 1 glued to each other.
    pub fn self_glued(block: Seifert, x: Unimodular) -> ManifoldDesc {
        ManifoldDesc::Graph(Graph { blocks: vec![block], gluings: vec![Gluing::new((0, 0), (0, 1), x)] })
    }

    pub fn sum(summands: Vec<ManifoldDesc>) -> ManifoldDesc {
        ManifoldDesc::ConnectedSum { summands }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        match self {
            ManifoldDesc::Lens { p, q } => {
                if gcd(*p, *q) != 1 {
                    return Err(ModelError::NotCoprime(*p, *q));
                }
            }
            ManifoldDesc::Seifert(s) => s.validate()?,
            ManifoldDesc::Graph(g) => {
                if g.blocks.is_empty() {
                    return Err(ModelError::Disconnected);
                }
                for (i, b) in g.blocks.iter().enumerate() {
                    b.validate()?;
                    if b.base.is_closed() {
                        return Err(ModelError::ClosedBlock(i));
                    }
                }
                let mut used = std::collections::BTreeSet::new();
                for gl in &g.gluings {
                    for e in [gl.from, gl.to] {
                        let ok = g.blocks.get(e.block).is_some_and(|b| e.boundary < b.base.boundary_count());
                        if !ok {
                            return Err(ModelError::NoSuchBoundary(e.block, e.boundary));
                        }
                        if !used.insert((e.block, e.boundary)) {
                            return Err(ModelError::BoundaryReused(e.block, e.boundary));
                        }
                    }
                }
                // Connectivity by union-find.
                let mut parent: Vec<usize> = (0..g.blocks.len()).collect();
                fn find(p: &mut [usize], x: usize) -> usize {
                    let mut r = x;
                    while p[r] != r {
                        r = p[r];
                    }
                    p[x] = r;
                    r
                }
                for gl in &g.gluings {
                    let (a, b) = (find(&mut parent, gl.from.block), find(&mut parent, gl.to.block));
                    parent[a] = b;
                }
                let root = find(&mut parent, 0);
                if (0..g.blocks.len()).any(|i| find(&mut parent, i) != root) {
                    return Err(ModelError::Disconnected);
                }
            }
            ManifoldDesc::TorusBundle { .. } | ManifoldDesc::Atom { .. } => {}
            ManifoldDesc::ConnectedSum { summands } => {
                if summands.len() < 2 {
                    return Err(ModelError::ShortSum);
                }
                for s in summands {
                    s.validate()?;
                }
            }
        }
        Ok(())
    }

    pub fn is_closed(&self) -> bool {
        match self {
            ManifoldDesc::Lens { .. } | ManifoldDesc::TorusBundle { .. } => true,
            ManifoldDesc::Seifert(s) => s.base.is_closed(),
            ManifoldDesc::Graph(g) => {
                let slots: usize = g.blocks.iter().map(|b| b.base.boundary_count()).sum();
                slots == 2 * g.gluings.len()
            }
            ManifoldDesc::ConnectedSum { summands } => summands.iter().all(ManifoldDesc::is_closed),
            ManifoldDesc::Atom { atom } => matches!(atom, Atom::S3 | Atom::S2xS1 | Atom::RP3),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("descriptions serialize")
    }
}

fn write_fibers(f: &mut fmt::Formatter<'_>, fibers: &[(i64, i64)]) -> fmt::Result {
    let parts: Vec<String> = fibers.iter().map(|(p, q)| format!("({p},{q})")).collect();
    f.write_str(&parts.join(","))
}

impl fmt::Display for Seifert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SFS({};", self.base)?;
        write_fibers(f, &self.fibers)?;
        if let Some(b) = self.b {
            write!(f, ";{b}")?;
        }
        write!(f, ")")
    }
}

impl Graph {
    /// Blocks 0..n glued in a row, each gluing leaving from the first unused boundary of
    /// block k and arriving at boundary 0 of block k+1.
    fn is_chain(&self) -> bool {
        if self.gluings.len() + 1 != self.blocks.len() {
            return false;
        }
        self.gluings.iter().enumerate().all(|(k, g)| {
            let out = if k == 0 { 0 } else { 1 };
            g.from == Endpoint { block: k, boundary: out } && g.to == Endpoint { block: k + 1, boundary: 0 }
        })
    }

    fn is_single_self_glue(&self) -> bool {
        self.blocks.len() == 1
            && self.gluings.len() == 1
            && self.gluings[0].from == Endpoint { block: 0, boundary: 0 }
            && self.gluings[0].to == Endpoint { block: 0, boundary: 1 }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_single_self_glue() {
            return write!(f, "{} /{}", self.blocks[0], self.gluings[0].matrix);
        }
        if self.is_chain() {
            write!(f, "{}", self.blocks[0])?;
            for (g, b) in self.gluings.iter().zip(&self.blocks[1..]) {
                write!(f, " U{} {}", g.matrix, b)?;
            }
            return Ok(());
        }
        let blocks: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        let glues: Vec<String> = self
            .gluings
            .iter()
            .map(|g| format!("{}.{}>{}.{}{}", g.from.block, g.from.boundary, g.to.block, g.to.boundary, g.matrix))
            .collect();
        write!(f, "Graph({}; {})", blocks.join(", "), glues.join(", "))
    }
}

impl fmt::Display for ManifoldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldDesc::Lens { p, q } => write!(f, "L({p},{q})"),
            ManifoldDesc::Seifert(s) => write!(f, "{s}"),
            ManifoldDesc::Graph(g) => write!(f, "{g}"),
            ManifoldDesc::TorusBundle { monodromy } => write!(f, "T{monodromy}"),
            ManifoldDesc::ConnectedSum { summands } => {
                let parts: Vec<String> = summands
                    .iter()
                    .map(|s| match s {
                        ManifoldDesc::ConnectedSum { .. } => format!("({s})"),
                        _ => s.to_string(),
                    })
                    .collect();
                f.write_str(&parts.join(" # "))
            }
            ManifoldDesc::Atom { atom } => write!(f, "{atom}"),
        }
    }
}

impl Seifert {
    /// The tabular notation, e.g. (D,(2,1),(3,1)) or (S2,(2,1),(3,1),(7,1),-1).
    pub fn pretty(&self) -> String {
        let mut parts = vec![self.base.to_string()];
        parts.extend(self.fibers.iter().map(|(p, q)| format!("({p},{q})")));
        if let Some(b) = self.b {
            parts.push(b.to_string());
        }
        format!("({})", parts.join(","))
    }
}

impl ManifoldDesc {
    /// Tabular notation: Seifert spaces as (base,fibers[,b]), gluings as X ∪M Y or X/M,
    /// atoms as D×S1, T×I, P×S1, S3, S2×S1, RP3.
    pub fn pretty(&self) -> String {
        match self {
            ManifoldDesc::Seifert(s) => s.pretty(),
            ManifoldDesc::Graph(g) if g.is_single_self_glue() => format!("{}/{}", g.blocks[0].pretty(), g.gluings[0].matrix),
            ManifoldDesc::Graph(g) if g.is_chain() => {
                let mut out = g.blocks[0].pretty();
                for (x, b) in g.gluings.iter().zip(&g.blocks[1..]) {
                    out.push_str(&format!(" ∪{} {}", x.matrix, b.pretty()));
                }
                out
            }
            ManifoldDesc::ConnectedSum { summands } => {
                summands.iter().map(|s| s.pretty()).collect::<Vec<_>>().join(" # ")
            }
            ManifoldDesc::Atom { atom } => match atom {
                Atom::SolidTorus => "D×S1".into(),
                Atom::TxI => "T×I".into(),
                Atom::PxS1 => "P×S1".into(),
                Atom::S2xS1 => "S2×S1".into(),
                other => other.to_string(),
            },
            other => other.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pretty_printer() {
        let m = ManifoldDesc::union(
            Seifert::new(Base::D, &[(2, 1), (3, 1)]),
            Unimodular::m(0, 1, 1, 0),
            Seifert::new(Base::D, &[(2, 1), (5, 2)]),
        );
        assert_eq!(m.to_string(), "SFS(D;(2,1),(3,1)) U[0,1;1,0] SFS(D;(2,1),(5,2))");
        let m = ManifoldDesc::closed_sfs(Base::S2, &[(2, 1), (3, 1), (6, 1)], -1);
        assert_eq!(m.to_string(), "SFS(S2;(2,1),(3,1),(6,1);-1)");
        let m = ManifoldDesc::self_glued(Seifert::new(Base::A, &[(2, 1)]), Unimodular::m(0, 1, 1, 0));
        assert_eq!(m.to_string(), "SFS(A;(2,1)) /[0,1;1,0]");
        let m = ManifoldDesc::sum(vec![ManifoldDesc::atom(Atom::RP3), ManifoldDesc::lens(3, 1)]);
        assert_eq!(m.to_string(), "RP3 # L(3,1)");
        let m = ManifoldDesc::sfs(Base::S, &[(2, 1)]);
        assert_eq!(m.pretty(), "(S,(2,1))");
        let m = ManifoldDesc::self_glued(Seifert::new(Base::A, &[(2, 1)]), Unimodular::m(1, 1, 1, 0));
        assert_eq!(m.pretty(), "(A,(2,1))/[1,1;1,0]");
    }

    #[test]
    fn json_is_tagged() {
        let m = ManifoldDesc::lens(5, 2);
        let v = m.to_json();
        assert_eq!(v["variant"], "Lens");
        let back: ManifoldDesc = serde_json::from_value(v).unwrap();
        assert_eq!(back, m);
        let m = ManifoldDesc::union(
            Seifert::new(Base::D, &[(2, 1), (3, 1)]),
            Unimodular::m(1, 1, -1, 0),
            Seifert::new(Base::P, &[]),
        );
        let back: ManifoldDesc = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn validation() {
        assert!(ManifoldDesc::sfs(Base::D, &[(4, 2)]).validate().is_err());
        assert!(ManifoldDesc::closed_sfs(Base::D, &[(2, 1)], 1).validate().is_err());
        let g = ManifoldDesc::Graph(Graph {
            blocks: vec![Seifert::new(Base::D, &[(2, 1)])],
            gluings: vec![Gluing::new((0, 0), (0, 1), Unimodular::I)],
        });
        assert!(matches!(g.validate(), Err(ModelError::NoSuchBoundary(0, 1))));
        assert!(ManifoldDesc::sum(vec![ManifoldDesc::lens(3, 1)]).validate().is_err());
    }
}
