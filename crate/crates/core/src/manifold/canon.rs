//! Normal forms. Descriptions are converted into a plumbing, simplified to a fixpoint with
//! the graph-manifold identities, split into prime pieces, and each piece is written in a
//! unique representative.

use serde::Serialize;

use super::conj::{conj_key, ConjKey};
use super::plumb::{Blk, Edg, Plumb};
use super::{Atom, Base, ManifoldDesc, ModelError, Seifert};
use crate::slope::{complement, ext_gcd, Unimodular};

/// One simplification applied during normalization; `id` is the number of the graph
/// identity it instantiates, 0 for structural steps (merges along fiber-preserving gluings,
/// choice of representative).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub id: u8,
    pub note: String,
}

pub fn canonicalize(m: &ManifoldDesc) -> Result<ManifoldDesc, ModelError> {
    Ok(canonicalize_traced(m)?.0)
}

pub fn canonicalize_traced(m: &ManifoldDesc) -> Result<(ManifoldDesc, Vec<Step>), ModelError> {
    m.validate()?;
    let mut cx = Canon::default();
    let pieces = cx.primes(m)?;
    Ok((assemble(pieces), cx.trace))
}

/// Prime pieces of a canonical description (S³ has none).
pub fn prime_pieces(m: &ManifoldDesc) -> Vec<ManifoldDesc> {
    match m {
        ManifoldDesc::ConnectedSum { summands } => summands.clone(),
        ManifoldDesc::Atom { atom: Atom::S3 } => vec![],
        other => vec![other.clone()],
    }
}

fn assemble(mut pieces: Vec<ManifoldDesc>) -> ManifoldDesc {
    // Atoms first, then everything else in derived order.
    pieces.sort_by(|x, y| {
        let atom = |m: &ManifoldDesc| !matches!(m, ManifoldDesc::Atom { .. });
        (atom(x), x).cmp(&(atom(y), y))
    });
    match pieces.len() {
        0 => ManifoldDesc::atom(Atom::S3),
        1 => pieces.pop().unwrap(),
        _ => ManifoldDesc::sum(pieces),
    }
}

fn modinv(q: i64, p: i64) -> i64 {
    let (_, x, _) = ext_gcd(q, p);
    x.rem_euclid(p)
}

/// L(p,q) with the least q among ±q^{±1} mod p; small cases become atoms.
pub fn lens_normal(p: i64, q: i64) -> ManifoldDesc {
    lens_piece(p, q).unwrap_or(ManifoldDesc::atom(Atom::S3))
}

fn lens_piece(p: i64, q: i64) -> Option<ManifoldDesc> {
    let p = p.abs();
    match p {
        0 => Some(ManifoldDesc::atom(Atom::S2xS1)),
        1 => None,
        2 => Some(ManifoldDesc::atom(Atom::RP3)),
        _ => {
            let q = q.rem_euclid(p);
            let qi = modinv(q, p);
            let best = [q, p - q, qi, p - qi].into_iter().min().unwrap();
            Some(ManifoldDesc::lens(p, best))
        }
    }
}

/// The lens space (S²,(i,j),(i₁,j₁)).
fn two_fiber_lens(i: i64, j: i64, i1: i64, j1: i64) -> (i64, i64) {
    let (ip, jp) = complement(i, j);
    (i1 * j + j1 * i, i1 * jp + j1 * ip)
}

const MOBIUS_FROM_DISC: Unimodular = Unimodular { a: 1, b: 1, c: -1, d: 0 };
const DISC_FROM_MOBIUS: Unimodular = Unimodular { a: 0, b: -1, c: 1, d: 1 };

fn collar(t: i64) -> Unimodular {
    Unimodular { a: -1, b: 0, c: t, d: 1 }
}

enum Collar {
    Changed,
    Done(Vec<ManifoldDesc>),
}

type BlockKey = (bool, u32, usize, Vec<(i64, i64)>);
type EdgeKey = (usize, usize, i64, i64, i64, i64, [i64; 4]);

#[derive(Default)]
struct Canon {
    trace: Vec<Step>,
}

impl Canon {
    fn step(&mut self, id: u8, note: impl Into<String>) {
        self.trace.push(Step { id, note: note.into() });
    }

    fn primes(&mut self, m: &ManifoldDesc) -> Result<Vec<ManifoldDesc>, ModelError> {
        match m {
            ManifoldDesc::Lens { p, q } => {
                let piece = lens_piece(*p, *q);
                if piece.as_ref() != Some(m) {
                    self.step(0, format!("lens normal form of L({p},{q})"));
                }
                Ok(piece.into_iter().collect())
            }
            ManifoldDesc::Atom { atom: Atom::S3 } => Ok(vec![]),
            ManifoldDesc::Atom { .. } => Ok(vec![m.clone()]),
            ManifoldDesc::Seifert(_) | ManifoldDesc::Graph(_) => self.reduce(Plumb::from_desc(m)?),
            ManifoldDesc::TorusBundle { monodromy } => self.torus_bundle(monodromy),
            ManifoldDesc::ConnectedSum { summands } => {
                let mut out = vec![];
                for s in summands {
                    out.extend(self.primes(s)?);
                }
                Ok(out)
            }
        }
    }

    fn torus_bundle(&mut self, a: &Unimodular) -> Result<Vec<ManifoldDesc>, ModelError> {
        let s2 = |fibers: &[(i64, i64)], t: i64| Blk { orientable: true, genus: 0, fibers: fibers.to_vec(), twist: t, free: 0 };
        let blk = match conj_key(a) {
            ConjKey::Elliptic { trace: 1 } => s2(&[(2, 1), (3, 1), (6, 1)], -1),
            ConjKey::Elliptic { trace: 0 } => s2(&[(2, 1), (4, 1), (4, 1)], -1),
            ConjKey::Elliptic { .. } => s2(&[(3, 1), (3, 1), (3, 1)], -1),
            ConjKey::Parabolic { sign: 1, n } => Blk { orientable: true, genus: 1, fibers: vec![], twist: n as i64, free: 0 },
            ConjKey::Parabolic { n: 0, .. } => s2(&[(2, 1), (2, 1), (2, 1), (2, 1)], -2),
            ConjKey::Parabolic { n, .. } => Blk { orientable: false, genus: 2, fibers: vec![], twist: n as i64, free: 0 },
            key => {
                let rep = key.representative();
                if rep != *a {
                    self.step(0, format!("monodromy {a} conjugated to {rep}"));
                }
                return Ok(vec![ManifoldDesc::TorusBundle { monodromy: rep }]);
            }
        };
        let id = match (a.trace(), *a == Unimodular::I.neg()) {
            (1 | 0 | -1, _) => 20 + (1 - a.trace()) as u8,
            (_, true) => 23,
            (-2, _) => 24,
            _ => 19,
        };
        self.step(id, format!("torus bundle T{a} as a Seifert manifold"));
        self.reduce(Plumb::single(blk))
    }

    fn reduce(&mut self, mut g: Plumb) -> Result<Vec<ManifoldDesc>, ModelError> {
        loop {
            self.normalize_fibers(&mut g);
            if let Some(v) = g.blocks.iter().position(|b| b.fibers.iter().any(|f| f.0 == 0)) {
                return self.split(g, v);
            }
            if self.absorb_solid_torus(&mut g) {
                continue;
            }
            match self.collar(&mut g)? {
                Some(Collar::Changed) => continue,
                Some(Collar::Done(pieces)) => return Ok(pieces),
                None => {}
            }
            if self.merge(&mut g)? {
                continue;
            }
            if self.unfold_mobius(&mut g) {
                continue;
            }
            if self.refold_ki(&mut g) {
                continue;
            }
            break;
        }
        self.finish(g)
    }

    fn normalize_fibers(&mut self, g: &mut Plumb) {
        for v in 0..g.blocks.len() {
            let b = &mut g.blocks[v];
            let mut out = Vec::with_capacity(b.fibers.len());
            let mut twist = b.twist;
            for &(p0, q0) in &b.fibers {
                let (p, q) = if p0 < 0 { (-p0, -q0) } else { (p0, q0) };
                match p {
                    0 => out.push((0, 1)),
                    1 => twist += q,
                    _ => {
                        let k = q.div_euclid(p);
                        twist += k;
                        out.push((p, q - k * p));
                    }
                }
            }
            out.sort();
            if out != b.fibers || twist != b.twist {
                b.fibers = out;
                b.twist = twist;
                self.step(8, format!("normalized fibers of block {v}"));
            }
        }
    }

    fn split(&mut self, mut g: Plumb, v: usize) -> Result<Vec<ManifoldDesc>, ModelError> {
        let b = g.blocks[v].clone();
        self.step(17, format!("block {v} has a (0,1) fiber"));
        let mut pieces = vec![];
        let zeros = b.fibers.iter().filter(|f| f.0 == 0).count();
        for &(p, q) in b.fibers.iter().filter(|f| f.0 != 0) {
            pieces.extend(lens_piece(p, q));
        }
        let mut s2s1 = b.crosscaps() as usize + zeros - 1;
        pieces.extend((0..b.free).map(|_| ManifoldDesc::atom(Atom::SolidTorus)));
        let mut touched = vec![];
        let mut keep = vec![];
        for e in std::mem::take(&mut g.edges) {
            if e.l == v && e.r == v {
                self.step(18, format!("self-gluing of block {v} caps off"));
                pieces.extend(lens_piece(e.x.b, e.x.d));
                s2s1 += 1;
            } else if e.l == v {
                g.blocks[e.r].fibers.push(e.x.apply_vec(0, 1));
                touched.push(e.r);
            } else if e.r == v {
                g.blocks[e.l].fibers.push(e.x.inv().apply_vec(0, 1));
                touched.push(e.l);
            } else {
                keep.push(e);
            }
        }
        g.edges = keep;
        let comp = g.component_of();
        let mut reached: Vec<usize> = touched.iter().map(|&w| comp[w]).collect();
        reached.sort();
        reached.dedup();
        s2s1 += touched.len() - reached.len();
        g.remove_block(v);
        for part in g.components() {
            pieces.extend(self.reduce(part)?);
        }
        pieces.extend((0..s2s1).map(|_| ManifoldDesc::atom(Atom::S2xS1)));
        Ok(pieces)
    }

    fn absorb_solid_torus(&mut self, g: &mut Plumb) -> bool {
        for v in 0..g.blocks.len() {
            let b = &g.blocks[v];
            if !(b.orientable && b.genus == 0 && b.free == 0 && b.fibers.len() <= 1 && g.degree(v) == 1) {
                continue;
            }
            let (i, j) = match b.fibers.first() {
                Some(&(p, q)) => (p, q + b.twist * p),
                None => (1, b.twist),
            };
            let ei = g.edges.iter().position(|e| e.l == v || e.r == v).unwrap();
            let e = g.edges.remove(ei);
            let (w, fiber) = if e.l == v {
                (e.r, e.x.apply_vec(i, -j))
            } else {
                (e.l, e.x.inv().apply_vec(i, -j))
            };
            g.blocks[w].fibers.push(fiber);
            g.remove_block(v);
            self.step(14, format!("solid torus block {v} absorbed as fiber {fiber:?}"));
            return true;
        }
        false
    }

    fn collar(&mut self, g: &mut Plumb) -> Result<Option<Collar>, ModelError> {
        for v in 0..g.blocks.len() {
            let b = &g.blocks[v];
            if !(b.orientable && b.genus == 0 && b.fibers.is_empty() && g.slots(v) == 2) {
                continue;
            }
            let (t, free) = (b.twist, b.free);
            let ends: Vec<usize> = (0..g.edges.len()).filter(|&i| g.edges[i].l == v || g.edges[i].r == v).collect();
            match (free, ends.as_slice()) {
                (2, _) => return Ok(Some(Collar::Done(vec![ManifoldDesc::atom(Atom::TxI)]))),
                (1, &[ei]) => {
                    let e = g.edges.remove(ei);
                    let w = if e.l == v { e.r } else { e.l };
                    g.blocks[w].free += 1;
                    g.remove_block(v);
                    self.step(0, format!("collar block {v} removed"));
                    return Ok(Some(Collar::Changed));
                }
                (0, &[ei]) => {
                    let mono = g.edges[ei].x.mul(&collar(t));
                    self.step(19, format!("self-glued collar is the torus bundle T{mono}"));
                    return Ok(Some(Collar::Done(self.torus_bundle(&mono)?)));
                }
                (0, &[e1, e2]) => {
                    let (x1, x2) = (g.edges[e1], g.edges[e2]);
                    let (u, m1) = if x1.r == v { (x1.l, x1.x) } else { (x1.r, x1.x.inv()) };
                    let (w, m2) = if x2.l == v { (x2.r, x2.x) } else { (x2.l, x2.x.inv()) };
                    let x = m2.mul(&collar(t)).mul(&m1);
                    g.edges.remove(e2);
                    g.edges.remove(e1);
                    g.edges.push(Edg { l: u, r: w, x });
                    g.remove_block(v);
                    self.step(0, format!("collar block {v} composed into gluing {x}"));
                    return Ok(Some(Collar::Changed));
                }
                _ => unreachable!("a collar has two boundary tori"),
            }
        }
        Ok(None)
    }

    fn merge(&mut self, g: &mut Plumb) -> Result<bool, ModelError> {
        let Some(ei) = g.edges.iter().position(|e| e.x.b == 0) else {
            return Ok(false);
        };
        let e = g.edges[ei];
        if e.l == e.r {
            let v = e.l;
            if e.x.det() == 1 {
                return Err(ModelError::NonOrientable);
            }
            g.edges.remove(ei);
            let b = &mut g.blocks[v];
            if e.x.a == -1 {
                b.genus += if b.orientable { 1 } else { 2 };
            } else {
                b.genus = b.crosscaps() + 2;
                b.orientable = false;
            }
            b.twist -= e.x.c;
            self.step(0, format!("fiber-preserving self-gluing {} of block {v}", e.x));
            return Ok(true);
        }
        let (u, w) = (e.l, e.r);
        if e.x.a == 1 {
            g.negate_block(w);
        }
        if g.edges[ei].x.d == -1 {
            g.mirror_block(w);
        }
        let x = g.edges.remove(ei).x;
        debug_assert_eq!((x.a, x.b, x.d), (-1, 0, 1));
        let bw = g.blocks[w].clone();
        let bu = &mut g.blocks[u];
        if bu.orientable && bw.orientable {
            bu.genus += bw.genus;
        } else {
            bu.genus = bu.crosscaps() + bw.crosscaps();
            bu.orientable = false;
        }
        bu.fibers.extend(bw.fibers);
        bu.twist += bw.twist - x.c;
        bu.free += bw.free;
        for e in &mut g.edges {
            if e.l == w {
                e.l = u;
            }
            if e.r == w {
                e.r = u;
            }
        }
        g.remove_block(w);
        self.step(0, format!("blocks {u} and {w} merged along a fiber-preserving gluing"));
        Ok(true)
    }

    fn unfold_mobius(&mut self, g: &mut Plumb) -> bool {
        for v in 0..g.blocks.len() {
            let b = &g.blocks[v];
            if b.orientable || b.genus != 1 || !b.fibers.is_empty() || b.free != 0 || g.degree(v) != 1 {
                continue;
            }
            to_disc_form(g, v);
            self.step(15, format!("block {v} refibered over the disc"));
            return true;
        }
        false
    }

    fn refold_ki(&mut self, g: &mut Plumb) -> bool {
        for ei in 0..g.edges.len() {
            let e = g.edges[ei];
            if e.l == e.r {
                continue;
            }
            let (lk, rk) = (is_ki(g, e.l), is_ki(g, e.r));
            for (sl, sr) in [(true, false), (false, true), (true, true)] {
                if (sl && !lk) || (sr && !rk) {
                    continue;
                }
                let mut h = g.clone();
                if sl {
                    to_mobius_form(&mut h, e.l);
                }
                if sr {
                    to_mobius_form(&mut h, e.r);
                }
                if h.edges[ei].x.b == 0 {
                    *g = h;
                    self.step(16, "twisted I-bundle over the Klein bottle refibered over the Möbius band");
                    return true;
                }
            }
        }
        false
    }

    fn finish(&mut self, g: Plumb) -> Result<Vec<ManifoldDesc>, ModelError> {
        if !g.edges.is_empty() {
            return Ok(vec![self.graph(&g)?]);
        }
        debug_assert_eq!(g.blocks.len(), 1);
        let b = g.blocks.into_iter().next().expect("nonempty plumbing");
        if b.free == 0 {
            self.closed_block(b)
        } else {
            Ok(vec![bounded_block(b)?])
        }
    }

    fn closed_block(&mut self, b: Blk) -> Result<Vec<ManifoldDesc>, ModelError> {
        let t = b.twist;
        if b.orientable && b.genus == 0 && b.fibers.len() <= 2 {
            let (p, q) = match b.fibers.as_slice() {
                [] => two_fiber_lens(1, t, 1, 0),
                &[(p, q)] => two_fiber_lens(p, q + t * p, 1, 0),
                &[(p1, q1), (p2, q2)] => two_fiber_lens(p1, q1, p2, q2 + t * p2),
                _ => unreachable!(),
            };
            self.step(10, format!("two-fiber Seifert manifold is L({p},{q})"));
            return Ok(lens_piece(p, q).into_iter().collect());
        }
        if !b.orientable && b.genus == 1 && b.fibers.len() <= 1 {
            // Möbius band plus disc, with the Möbius side refibered over the disc.
            let ki = Blk { orientable: true, genus: 0, fibers: vec![(2, 1), (2, 1)], twist: 0, free: 0 };
            let disc = Blk { orientable: true, genus: 0, fibers: b.fibers.clone(), twist: t, free: 0 };
            let x = Unimodular::m(-1, 0, 0, 1).mul(&DISC_FROM_MOBIUS.inv());
            self.step(15, "Seifert manifold over RP² refibered over S²");
            return self.reduce(Plumb { blocks: vec![ki, disc], edges: vec![Edg { l: 0, r: 1, x }] });
        }
        if !b.orientable && b.genus == 2 && b.fibers.is_empty() && t == 0 {
            self.step(23, "(K,0) refibered over S²");
            let s2 = Blk { orientable: true, genus: 0, fibers: vec![(2, 1); 4], twist: -2, free: 0 };
            return self.closed_block(s2);
        }
        let base = Base::from_parts(b.orientable, b.genus, 0)
            .ok_or_else(|| ModelError::Unsupported(format!("closed base with genus {}", b.genus)))?;
        let (fibers, t) = mirror_min(&b.fibers, t, true);
        Ok(vec![ManifoldDesc::closed_sfs(base, &fibers, t)])
    }

    /// Least key over block relabelings, per-block reflections and sign changes, the choice
    /// of which gluing of a closed-off block carries its twist, and orientation of self-gluings.
    fn graph(&mut self, g: &Plumb) -> Result<ManifoldDesc, ModelError> {
        let n = g.blocks.len();
        if n > 6 {
            return Err(ModelError::Unsupported(format!("graph with {n} blocks")));
        }
        let selfs: Vec<usize> = (0..g.edges.len()).filter(|&i| g.edges[i].l == g.edges[i].r).collect();
        // Endpoints of each block, as (edge, is_left).
        let mut ends: Vec<Vec<(usize, bool)>> = vec![vec![]; n];
        for (i, e) in g.edges.iter().enumerate() {
            ends[e.l].push((i, true));
            ends[e.r].push((i, false));
        }
        let closed: Vec<usize> = (0..n).filter(|&v| g.blocks[v].free == 0).collect();
        let mut best: Option<((Vec<BlockKey>, Vec<EdgeKey>), Plumb)> = None;
        for perm in permutations(n) {
            for flips in 0..(1u32 << (2 * n)) {
                for selfmask in 0..(1u32 << selfs.len()) {
                    let mut choice = vec![0usize; closed.len()];
                    loop {
                        let designated: Vec<Option<(usize, bool)>> = (0..n)
                            .map(|v| closed.iter().position(|&c| c == v).map(|k| ends[v][choice[k]]))
                            .collect();
                        let cand = graph_choice(g, &perm, flips, &selfs, selfmask, &designated);
                        if best.as_ref().is_none_or(|(k, _)| cand.0 < *k) {
                            best = Some(cand);
                        }
                        // Next designation tuple.
                        let mut k = 0;
                        while k < closed.len() {
                            choice[k] += 1;
                            if choice[k] < ends[closed[k]].len() {
                                break;
                            }
                            choice[k] = 0;
                            k += 1;
                        }
                        if k == closed.len() {
                            break;
                        }
                    }
                }
            }
        }
        let (_, plumb) = best.expect("at least one choice");
        self.step(12, "twists pushed into gluings and least representative chosen");
        plumb.to_desc()
    }
}

fn is_ki(g: &Plumb, v: usize) -> bool {
    let b = &g.blocks[v];
    b.orientable && b.genus == 0 && b.free == 0 && b.fibers == [(2, 1), (2, 1)] && g.degree(v) == 1
}

fn push_twist(g: &mut Plumb, v: usize) {
    let t = g.blocks[v].twist;
    if t != 0 {
        g.retarget(v, &Unimodular::twist(t));
        g.blocks[v].twist = 0;
    }
}

fn to_disc_form(g: &mut Plumb, v: usize) {
    push_twist(g, v);
    g.retarget(v, &DISC_FROM_MOBIUS);
    g.blocks[v] = Blk { orientable: true, genus: 0, fibers: vec![(2, 1), (2, 1)], twist: 0, free: 0 };
}

fn to_mobius_form(g: &mut Plumb, v: usize) {
    push_twist(g, v);
    g.retarget(v, &MOBIUS_FROM_DISC);
    g.blocks[v] = Blk { orientable: false, genus: 1, fibers: vec![], twist: 0, free: 0 };
}

/// Normalized fibers and twist, or those of the mirror image, whichever is smaller.
fn mirror_min(fibers: &[(i64, i64)], t: i64, keep_twist: bool) -> (Vec<(i64, i64)>, i64) {
    let norm = |fs: &mut Vec<(i64, i64)>, t: &mut i64| {
        for f in fs.iter_mut() {
            let k = f.1.div_euclid(f.0);
            f.1 -= k * f.0;
            *t += k;
        }
        fs.sort();
    };
    let (mut a, mut ta) = (fibers.to_vec(), t);
    norm(&mut a, &mut ta);
    let (mut b, mut tb) = (fibers.iter().map(|&(p, q)| (p, -q)).collect::<Vec<_>>(), -t);
    norm(&mut b, &mut tb);
    if !keep_twist {
        return (a.min(b), 0);
    }
    if a.is_empty() {
        return (a, ta.abs());
    }
    if (&b, tb) < (&a, ta) {
        (b, tb)
    } else {
        (a, ta)
    }
}

fn bounded_block(b: Blk) -> Result<ManifoldDesc, ModelError> {
    let (fibers, _) = mirror_min(&b.fibers, 0, false);
    Ok(match (b.orientable, b.genus, b.free, fibers.len()) {
        (true, 0, 1, 0 | 1) => ManifoldDesc::atom(Atom::SolidTorus),
        (true, 0, 2, 0) => ManifoldDesc::atom(Atom::TxI),
        (true, 0, 3, 0) => ManifoldDesc::atom(Atom::PxS1),
        (false, 1, 1, 0) => ManifoldDesc::sfs(Base::D, &[(2, 1), (2, 1)]),
        (o, g, h, _) => {
            let base = Base::from_parts(o, g, h)
                .ok_or_else(|| ModelError::Unsupported(format!("bounded base with genus {g} and {h} boundaries")))?;
            ManifoldDesc::Seifert(Seifert::new(base, &fibers))
        }
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = vec![];
    rec(&mut vec![], &mut vec![false; n], &mut out);
    out
}

/// Pushes `s` units of twist from a block into one endpoint of edge `ei`.
fn push_into(h: &mut Plumb, ei: usize, left: bool, s: i64) {
    let e = &mut h.edges[ei];
    let v = if left {
        e.x = e.x.mul(&Unimodular::twist(-s));
        e.l
    } else {
        e.x = Unimodular::twist(s).mul(&e.x);
        e.r
    };
    h.blocks[v].twist -= s;
}

fn graph_choice(
    g: &Plumb,
    perm: &[usize],
    flips: u32,
    selfs: &[usize],
    selfmask: u32,
    designated: &[Option<(usize, bool)>],
) -> ((Vec<BlockKey>, Vec<EdgeKey>), Plumb) {
    let n = g.blocks.len();
    let mut h = g.clone();
    for v in 0..n {
        if flips >> (2 * v) & 1 == 1 {
            h.mirror_block(v);
        }
        if flips >> (2 * v + 1) & 1 == 1 {
            h.negate_block(v);
        }
    }
    for b in &mut h.blocks {
        for f in &mut b.fibers {
            let k = f.1.div_euclid(f.0);
            f.1 -= k * f.0;
            b.twist += k;
        }
        b.fibers.sort();
    }
    let mut flipped = vec![false; h.edges.len()];
    for (i, e) in h.edges.iter_mut().enumerate() {
        let flip = if e.l == e.r {
            selfs.iter().position(|&s| s == i).is_some_and(|k| selfmask >> k & 1 == 1)
        } else {
            perm[e.l] > perm[e.r]
        };
        if flip {
            std::mem::swap(&mut e.l, &mut e.r);
            e.x = e.x.inv();
            flipped[i] = true;
        }
    }
    let designated: Vec<Option<(usize, bool)>> =
        designated.iter().map(|d| d.map(|(ei, left)| (ei, left != flipped[ei]))).collect();
    for ei in 0..h.edges.len() {
        for left in [true, false] {
            let e = h.edges[ei];
            let v = if left { e.l } else { e.r };
            if designated[v] == Some((ei, left)) {
                continue;
            }
            let m = e.x.b.abs();
            let s = if left {
                e.x.a.div_euclid(m) * e.x.b.signum()
            } else {
                -e.x.d.div_euclid(m) * e.x.b.signum()
            };
            push_into(&mut h, ei, left, s);
        }
    }
    for v in 0..n {
        match designated[v] {
            Some((ei, left)) => {
                let t = h.blocks[v].twist;
                push_into(&mut h, ei, left, t);
            }
            None => h.blocks[v].twist = 0,
        }
    }
    // Relabel blocks by the permutation and sort edges by key.
    let mut blocks = vec![h.blocks[0].clone(); n];
    for v in 0..n {
        blocks[perm[v]] = h.blocks[v].clone();
    }
    let mut edges: Vec<(EdgeKey, Edg)> = h
        .edges
        .iter()
        .map(|e| {
            let (l, r) = (perm[e.l], perm[e.r]);
            let x = e.x;
            let key = (l, r, x.b.abs(), x.a.abs(), x.d.abs(), x.c.abs(), [x.b.signum(), x.a.signum(), x.d.signum(), x.c.signum()]);
            (key, Edg { l, r, x })
        })
        .collect();
    edges.sort_by(|a, b| a.0.cmp(&b.0));
    let block_keys: Vec<BlockKey> = blocks.iter().map(|b| (b.orientable, b.genus, b.free, b.fibers.clone())).collect();
    let edge_keys = edges.iter().map(|e| e.0).collect();
    let plumb = Plumb { blocks, edges: edges.into_iter().map(|e| e.1).collect() };
    ((block_keys, edge_keys), plumb)
}
