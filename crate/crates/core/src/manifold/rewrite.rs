//! Single applications of the graph-manifold identities, numbered 7 to 24.
//!
//! | id | identity |
//! |----|----------|
//! | 7  | all fibers (i,j) ↦ (i,−j), b ↦ −b |
//! | 8  | (i₁,j₁),(i₂,j₂) ↦ (i₁,j₁+k·i₁),(i₂,j₂−k·i₂) |
//! | 9  | (i,j) ↦ (i,j+k·i) on a single block with boundary |
//! | 10 | (S²,(i,j),(i₁,j₁)) ↦ L(i₁j+j₁i, i₁j′+j₁i′) |
//! | 11 | (1,k),(i,j) ↦ (i,j+k·i) |
//! | 12 | fiber of the left block shifted by k, X ↦ X·[1,0;k,1] |
//! | 13 | fiber of the right block shifted by k, X ↦ [1,0;−k,1]·X |
//! | 14 | (D,(i,j)) ∪_X M ↦ M with the fiber X·(i,−j) |
//! | 15 | (D,(2,1),(2,1)) ∪_X M ↦ (S) ∪_{X·[0,−1;1,1]} M |
//! | 16 | M ∪_X (D,(2,1),(2,1)) ↦ M ∪_{[1,1;−1,0]·X} (S) |
//! | 17 | (S²,(i₁,j₁),(i₂,j₂),(0,1)) ↦ L(i₁,j₁) # L(i₂,j₂) |
//! | 18 | (D,(0,1),(i,j)) ∪_X M ↦ L(i,j) # M with the fiber (b,d) |
//! | 19 | (A)/[a,b;c,d] ↦ T[−a,−b;c,d] |
//! | 20 | (S²,(2,1),(3,1),(6,1),−1) ↦ T[1,1;−1,0] |
//! | 21 | (S²,(2,1),(4,1),(4,1),−1) ↦ T[0,1;−1,0] |
//! | 22 | (S²,(3,1),(3,1),(3,1),−1) ↦ T[−1,1;−1,0] |
//! | 23 | (S²,(2,1),(2,1),(2,1),(2,1),−2) ↦ T[−1,0;0,−1] |
//! | 24 | (K,1) ↦ T[−2,1;−1,0] |
//!
//! Identities 19 to 24 also apply right to left when the torus bundle is given.

use serde::{Deserialize, Serialize};

use super::plumb::Plumb;
use super::{Atom, Base, Graph, ManifoldDesc, ModelError, Seifert};
use crate::slope::{complement, Unimodular};

pub type RewriteId = u8;

pub const REWRITE_IDS: std::ops::RangeInclusive<RewriteId> = 7..=24;

/// Where an identity applies. Seifert descriptions have the single block 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Site {
    Whole,
    Fiber { block: usize, index: usize },
    FiberPair { block: usize, first: usize, second: usize },
    Gluing { index: usize },
    GluingFiber { index: usize, fiber: usize },
}

fn mismatch(id: RewriteId, why: &str) -> ModelError {
    ModelError::Mismatch(id, why.to_string())
}

fn block_mut(m: &mut ManifoldDesc, block: usize) -> Option<&mut Seifert> {
    match m {
        ManifoldDesc::Seifert(s) if block == 0 => Some(s),
        ManifoldDesc::Graph(g) => g.blocks.get_mut(block),
        _ => None,
    }
}

const SEIFERT_BUNDLES: [(RewriteId, &[(i64, i64)], i64, Unimodular); 4] = [
    (20, &[(2, 1), (3, 1), (6, 1)], -1, Unimodular { a: 1, b: 1, c: -1, d: 0 }),
    (21, &[(2, 1), (4, 1), (4, 1)], -1, Unimodular { a: 0, b: 1, c: -1, d: 0 }),
    (22, &[(3, 1), (3, 1), (3, 1)], -1, Unimodular { a: -1, b: 1, c: -1, d: 0 }),
    (23, &[(2, 1), (2, 1), (2, 1), (2, 1)], -2, Unimodular { a: -1, b: 0, c: 0, d: -1 }),
];

pub fn rewrite(id: RewriteId, m: &ManifoldDesc, site: Site, k: Option<i64>) -> Result<ManifoldDesc, ModelError> {
    m.validate()?;
    let need_k = || k.ok_or_else(|| mismatch(id, "identity needs k"));
    let mut out = m.clone();
    match (id, site) {
        (7, Site::Whole) => {
            let ManifoldDesc::Seifert(s) = &mut out else { return Err(mismatch(id, "not a Seifert manifold")) };
            for f in &mut s.fibers {
                f.1 = -f.1;
            }
            s.b = s.b.map(|b| -b);
        }
        (8, Site::FiberPair { block, first, second }) => {
            let k = need_k()?;
            let s = block_mut(&mut out, block).ok_or_else(|| mismatch(id, "no such block"))?;
            if first == second || first >= s.fibers.len() || second >= s.fibers.len() {
                return Err(mismatch(id, "fiber indices"));
            }
            s.fibers[first].1 += k * s.fibers[first].0;
            s.fibers[second].1 -= k * s.fibers[second].0;
        }
        (9, Site::Fiber { block, index }) => {
            let k = need_k()?;
            // Inside a graph the shift changes the boundary framing; use 12 or 13 there.
            let ManifoldDesc::Seifert(s) = &mut out else { return Err(mismatch(id, "not a Seifert manifold")) };
            if block != 0 || s.base.is_closed() {
                return Err(mismatch(id, "base has no boundary"));
            }
            let f = s.fibers.get_mut(index).ok_or_else(|| mismatch(id, "no such fiber"))?;
            f.1 += k * f.0;
        }
        (10, Site::Whole) => {
            let ManifoldDesc::Seifert(s) = m else { return Err(mismatch(id, "not a Seifert manifold")) };
            match (s.base, s.fibers.as_slice(), s.b.unwrap_or(0)) {
                (Base::S2, &[(i, j), (i1, j1)], 0) => {
                    let (ip, jp) = complement(i, j);
                    out = ManifoldDesc::lens(i1 * j + j1 * i, i1 * jp + j1 * ip);
                }
                _ => return Err(mismatch(id, "needs (S²,(i,j),(i₁,j₁))")),
            }
        }
        (11, Site::FiberPair { block, first, second }) => {
            let s = block_mut(&mut out, block).ok_or_else(|| mismatch(id, "no such block"))?;
            let n = s.fibers.len();
            if second >= n || first == second || first > n {
                return Err(mismatch(id, "fiber indices"));
            }
            // Index n stands for the twist b of a closed base.
            let kk = if first == n {
                s.b.take().ok_or_else(|| mismatch(id, "no twist to absorb"))?
            } else if s.fibers[first].0 == 1 {
                s.fibers[first].1
            } else {
                return Err(mismatch(id, "first fiber must be (1,k)"));
            };
            s.fibers[second].1 += kk * s.fibers[second].0;
            if first < n {
                s.fibers.remove(first);
            } else {
                s.b = Some(0);
            }
        }
        (12 | 13, Site::GluingFiber { index, fiber }) => {
            let k = need_k()?;
            let ManifoldDesc::Graph(g) = &mut out else { return Err(mismatch(id, "not a graph")) };
            let gl = g.gluings.get(index).copied().ok_or_else(|| mismatch(id, "no such gluing"))?;
            let block = if id == 12 { gl.from.block } else { gl.to.block };
            let f = g.blocks[block].fibers.get_mut(fiber).ok_or_else(|| mismatch(id, "no such fiber"))?;
            f.1 += k * f.0;
            let x = gl.matrix;
            g.gluings[index].matrix =
                if id == 12 { x.mul(&Unimodular::twist(k)) } else { Unimodular::twist(-k).mul(&x) };
        }
        (14 | 15 | 16 | 18, Site::Gluing { index }) => {
            let ManifoldDesc::Graph(g) = m else { return Err(mismatch(id, "not a graph")) };
            let gl = g.gluings.get(index).copied().ok_or_else(|| mismatch(id, "no such gluing"))?;
            let mut p = Plumb::from_desc(m)?;
            let disc_end = |b: usize| g.blocks[b].base == Base::D;
            out = match id {
                14 => {
                    let (v, left) = if disc_end(gl.from.block) && g.blocks[gl.from.block].fibers.len() == 1 {
                        (gl.from.block, true)
                    } else if disc_end(gl.to.block) && g.blocks[gl.to.block].fibers.len() == 1 {
                        (gl.to.block, false)
                    } else {
                        return Err(mismatch(id, "needs a (D,(i,j)) block"));
                    };
                    if gl.from.block == gl.to.block {
                        return Err(mismatch(id, "self-gluing"));
                    }
                    let (i, j) = g.blocks[v].fibers[0];
                    let e = p.edges.remove(index);
                    let (w, fiber) =
                        if left { (e.r, e.x.apply_vec(i, -j)) } else { (e.l, e.x.inv().apply_vec(i, -j)) };
                    p.blocks[w].fibers.push(fiber);
                    p.remove_block(v);
                    p.to_desc()?
                }
                15 | 16 => {
                    let v = if id == 15 { gl.from.block } else { gl.to.block };
                    let b = &g.blocks[v];
                    if b.base != Base::D || b.fibers != [(2, 1), (2, 1)] || gl.from.block == gl.to.block {
                        return Err(mismatch(id, "needs (D,(2,1),(2,1))"));
                    }
                    let x = gl.matrix;
                    p.edges[index].x = if id == 15 {
                        x.mul(&Unimodular::m(0, -1, 1, 1))
                    } else {
                        Unimodular::m(1, 1, -1, 0).mul(&x)
                    };
                    p.blocks[v] = super::plumb::Blk { orientable: false, genus: 1, fibers: vec![], twist: 0, free: 0 };
                    p.to_desc()?
                }
                _ => {
                    let v = gl.from.block;
                    let b = &g.blocks[v];
                    let others: Vec<(i64, i64)> = b.fibers.iter().copied().filter(|f| *f != (0, 1)).collect();
                    if b.base != Base::D || b.fibers.len() != 2 || others.len() != 1 || gl.to.block == v {
                        return Err(mismatch(id, "needs (D,(0,1),(i,j)) on the left"));
                    }
                    let e = p.edges.remove(index);
                    p.blocks[e.r].fibers.push((e.x.b, e.x.d));
                    p.remove_block(v);
                    let (i, j) = others[0];
                    ManifoldDesc::sum(vec![ManifoldDesc::lens(i, j), p.to_desc()?])
                }
            };
        }
        (17, Site::Whole) => {
            let ManifoldDesc::Seifert(s) = m else { return Err(mismatch(id, "not a Seifert manifold")) };
            let zero = s.fibers.iter().position(|f| *f == (0, 1) || *f == (0, -1));
            match (s.base, s.fibers.len(), zero, s.b.unwrap_or(0)) {
                (Base::S2, 3, Some(z), 0) => {
                    let rest: Vec<ManifoldDesc> = (0..3)
                        .filter(|&i| i != z)
                        .map(|i| ManifoldDesc::lens(s.fibers[i].0, s.fibers[i].1))
                        .collect();
                    out = ManifoldDesc::sum(rest);
                }
                _ => return Err(mismatch(id, "needs (S²,(i₁,j₁),(i₂,j₂),(0,1))")),
            }
        }
        (19, Site::Whole) => match m {
            ManifoldDesc::Graph(Graph { blocks, gluings })
                if blocks.len() == 1
                    && blocks[0].base == Base::A
                    && blocks[0].fibers.is_empty()
                    && gluings.len() == 1 =>
            {
                let x = gluings[0].matrix;
                out = ManifoldDesc::TorusBundle { monodromy: Unimodular::m(-x.a, -x.b, x.c, x.d) };
            }
            ManifoldDesc::TorusBundle { monodromy: x } => {
                let block = Seifert::new(Base::A, &[]);
                out = ManifoldDesc::self_glued(block, Unimodular::m(-x.a, -x.b, x.c, x.d));
            }
            _ => return Err(mismatch(id, "needs (A×S¹)/X or a torus bundle")),
        },
        (20..=23, Site::Whole) => {
            let (_, fibers, b, t) = SEIFERT_BUNDLES.iter().find(|e| e.0 == id).copied().unwrap();
            out = match m {
                ManifoldDesc::Seifert(s) if s.base == Base::S2 && s.fibers == fibers && s.b == Some(b) => {
                    ManifoldDesc::TorusBundle { monodromy: t }
                }
                ManifoldDesc::TorusBundle { monodromy } if *monodromy == t => ManifoldDesc::closed_sfs(Base::S2, fibers, b),
                _ => return Err(mismatch(id, "pattern not present")),
            };
        }
        (24, Site::Whole) => {
            let t = Unimodular::m(-2, 1, -1, 0);
            out = match m {
                ManifoldDesc::Seifert(s) if s.base == Base::K && s.fibers.is_empty() && s.b == Some(1) => {
                    ManifoldDesc::TorusBundle { monodromy: t }
                }
                ManifoldDesc::TorusBundle { monodromy } if *monodromy == t => ManifoldDesc::closed_sfs(Base::K, &[], 1),
                _ => return Err(mismatch(id, "needs (K,1) or T[-2,1;-1,0]")),
            };
        }
        (id, _) if REWRITE_IDS.contains(&id) => return Err(mismatch(id, "site does not fit the identity")),
        (id, _) => return Err(mismatch(id, "unknown identity")),
    }
    if let ManifoldDesc::ConnectedSum { summands } = &mut out {
        summands.retain(|s| !matches!(s, ManifoldDesc::Atom { atom: Atom::S3 }));
    }
    Ok(out)
}

/// Every (id, site) that applies to `m`, with k = ±1 for parametric identities.
pub fn applicable(m: &ManifoldDesc) -> Vec<(RewriteId, Site, Option<i64>)> {
    let mut cands: Vec<(RewriteId, Site, Option<i64>)> = vec![];
    for id in [7, 10, 17, 19, 20, 21, 22, 23, 24] {
        cands.push((id, Site::Whole, None));
    }
    let blocks: Vec<Seifert> = match m {
        ManifoldDesc::Seifert(s) => vec![s.clone()],
        ManifoldDesc::Graph(g) => g.blocks.clone(),
        _ => vec![],
    };
    for (bi, b) in blocks.iter().enumerate() {
        let n = b.fibers.len();
        for i in 0..n {
            for k in [-1, 1] {
                cands.push((9, Site::Fiber { block: bi, index: i }, Some(k)));
            }
            for j in 0..n {
                if i != j {
                    for k in [-1, 1] {
                        cands.push((8, Site::FiberPair { block: bi, first: i, second: j }, Some(k)));
                    }
                    cands.push((11, Site::FiberPair { block: bi, first: i, second: j }, None));
                }
            }
            cands.push((11, Site::FiberPair { block: bi, first: n, second: i }, None));
        }
    }
    if let ManifoldDesc::Graph(g) = m {
        for (gi, gl) in g.gluings.iter().enumerate() {
            for id in [14, 15, 16, 18] {
                cands.push((id, Site::Gluing { index: gi }, None));
            }
            for (id, blk) in [(12, gl.from.block), (13, gl.to.block)] {
                for f in 0..g.blocks[blk].fibers.len() {
                    for k in [-1, 1] {
                        cands.push((id, Site::GluingFiber { index: gi, fiber: f }, Some(k)));
                    }
                }
            }
        }
    }
    cands.into_iter().filter(|(id, site, k)| rewrite(*id, m, *site, *k).is_ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::h1;
    use crate::manifold::{canonicalize, parse_manifold};

    fn p(s: &str) -> ManifoldDesc {
        parse_manifold(s).unwrap()
    }

    #[test]
    fn lens_from_two_fibers() {
        let out = rewrite(10, &p("SFS(S2;(2,1),(3,1);0)"), Site::Whole, None).unwrap();
        assert_eq!(out, ManifoldDesc::lens(5, 4));
        assert_eq!(canonicalize(&out).unwrap(), p("L(5,1)"));
    }

    #[test]
    fn reducible_split() {
        let out = rewrite(17, &p("SFS(S2;(2,1),(3,1),(0,1);0)"), Site::Whole, None).unwrap();
        assert_eq!(canonicalize(&out).unwrap().to_string(), "RP3 # L(3,1)");
    }

    #[test]
    fn seifert_to_bundle() {
        let out = rewrite(20, &p("SFS(S2;(2,1),(3,1),(6,1);-1)"), Site::Whole, None).unwrap();
        assert_eq!(out, p("T[1,1;-1,0]"));
        let back = rewrite(24, &p("T[-2,1;-1,0]"), Site::Whole, None).unwrap();
        assert_eq!(back, p("SFS(K;;1)"));
    }

    #[test]
    fn every_applicable_rewrite_keeps_homology() {
        for s in [
            "SFS(D;(2,1),(3,1)) U[1,1;-1,0] SFS(A;(2,1))",
            "SFS(D;(2,1),(2,1)) U[0,1;1,0] SFS(D;(2,1),(3,1))",
            "SFS(S2;(2,1),(3,1),(5,2);-1)",
            "SFS(D;(0,1),(3,1)) U[2,1;1,1] SFS(D;(2,1),(3,1))",
            "SFS(D;(5,2)) U[0,1;1,0] SFS(D;(2,1),(3,1))",
            "SFS(A;) /[2,1;1,1]",
        ] {
            let m = p(s);
            let base = h1(&m).unwrap();
            let moves = applicable(&m);
            assert!(!moves.is_empty(), "{s}");
            for (id, site, k) in moves {
                let out = rewrite(id, &m, site, k).unwrap();
                assert_eq!(h1(&out).unwrap(), base, "{s} by {id} at {site:?}");
                assert_eq!(canonicalize(&out).unwrap(), canonicalize(&m).unwrap(), "{s} by {id} at {site:?}");
            }
        }
    }

    #[test]
    fn mismatches() {
        assert!(rewrite(10, &p("SFS(S2;(2,1),(3,1),(5,1);0)"), Site::Whole, None).is_err());
        assert!(rewrite(9, &p("SFS(S2;(2,1),(3,1);0)"), Site::Fiber { block: 0, index: 0 }, Some(1)).is_err());
        assert!(rewrite(3, &p("L(3,1)"), Site::Whole, None).is_err());
    }
}
