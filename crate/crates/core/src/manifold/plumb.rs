//! Working representation of Seifert blocks and gluings used by normalization and homology.
//!
//! A block carries its base (orientable genus or cross-cap count), fibers, an integral
//! twist standing for a (1,t) fiber, and a count of free boundary tori. Each edge
//! endpoint occupies one boundary torus of its block.

use super::{Base, Gluing, Graph, ManifoldDesc, ModelError, Seifert};
use crate::slope::Unimodular;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Blk {
    pub orientable: bool,
    /// Handles when orientable, cross-caps otherwise.
    pub genus: u32,
    pub fibers: Vec<(i64, i64)>,
    pub twist: i64,
    pub free: usize,
}

impl Blk {
    pub fn from_seifert(s: &Seifert) -> Blk {
        Blk {
            orientable: s.base.orientable(),
            genus: s.base.genus(),
            fibers: s.fibers.clone(),
            twist: s.b.unwrap_or(0),
            free: 0,
        }
    }

    /// 2g when orientable, the cross-cap count otherwise.
    pub fn crosscaps(&self) -> u32 {
        if self.orientable {
            2 * self.genus
        } else {
            self.genus
        }
    }

    pub fn mirror(&mut self) {
        for f in &mut self.fibers {
            f.1 = -f.1;
        }
        self.twist = -self.twist;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Edg {
    pub l: usize,
    pub r: usize,
    pub x: Unimodular,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Plumb {
    pub blocks: Vec<Blk>,
    pub edges: Vec<Edg>,
}

impl Plumb {
    pub fn single(b: Blk) -> Plumb {
        Plumb { blocks: vec![b], edges: vec![] }
    }

    pub fn from_desc(m: &ManifoldDesc) -> Result<Plumb, ModelError> {
        m.validate()?;
        match m {
            ManifoldDesc::Seifert(s) => {
                let mut b = Blk::from_seifert(s);
                b.free = s.base.boundary_count();
                Ok(Plumb::single(b))
            }
            ManifoldDesc::Graph(g) => {
                let mut blocks: Vec<Blk> = g.blocks.iter().map(Blk::from_seifert).collect();
                for (b, s) in blocks.iter_mut().zip(&g.blocks) {
                    b.free = s.base.boundary_count();
                }
                let mut edges = vec![];
                for gl in &g.gluings {
                    blocks[gl.from.block].free -= 1;
                    blocks[gl.to.block].free -= 1;
                    edges.push(Edg { l: gl.from.block, r: gl.to.block, x: gl.matrix });
                }
                Ok(Plumb { blocks, edges })
            }
            other => Err(ModelError::Unsupported(format!("{other} is not a Seifert or graph description"))),
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|e| (e.l == v) as usize + (e.r == v) as usize).sum()
    }

    pub fn slots(&self, v: usize) -> usize {
        self.blocks[v].free + self.degree(v)
    }

    pub fn cycle_rank(&self) -> usize {
        (self.edges.len() + 1).saturating_sub(self.blocks.len())
    }

    /// Drops block `v` (which must have no edges left) and renumbers the rest.
    pub fn remove_block(&mut self, v: usize) {
        debug_assert!(self.edges.iter().all(|e| e.l != v && e.r != v));
        self.blocks.remove(v);
        for e in &mut self.edges {
            if e.l > v {
                e.l -= 1;
            }
            if e.r > v {
                e.r -= 1;
            }
        }
    }

    /// Replaces every gluing matrix at block `v` after applying the self-map `m` to each
    /// of its boundary coordinate systems (`m` acts on v's side).
    pub fn retarget(&mut self, v: usize, m: &Unimodular) {
        let mi = m.inv();
        for e in &mut self.edges {
            // X maps l-coords to r-coords. New l-coords are m·old, new r-coords m·old.
            if e.l == v && e.r == v {
                e.x = m.mul(&e.x).mul(&mi);
            } else if e.l == v {
                e.x = e.x.mul(&mi);
            } else if e.r == v {
                e.x = m.mul(&e.x);
            }
        }
    }

    /// Mirror of block v: fibers and twist negate, boundary coordinates change by J.
    pub fn mirror_block(&mut self, v: usize) {
        self.blocks[v].mirror();
        self.retarget(v, &Unimodular::J);
    }

    /// −I on every boundary coordinate system of v.
    pub fn negate_block(&mut self, v: usize) {
        self.retarget(v, &Unimodular::I.neg());
    }

    /// Splits into connected components, renumbering blocks.
    pub fn components(self) -> Vec<Plumb> {
        let n = self.blocks.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = count;
            while let Some(v) = stack.pop() {
                for e in &self.edges {
                    for (a, b) in [(e.l, e.r), (e.r, e.l)] {
                        if a == v && comp[b] == usize::MAX {
                            comp[b] = count;
                            stack.push(b);
                        }
                    }
                }
            }
            count += 1;
        }
        let mut out = vec![Plumb::default(); count];
        let mut index = vec![0; n];
        for (v, b) in self.blocks.into_iter().enumerate() {
            index[v] = out[comp[v]].blocks.len();
            out[comp[v]].blocks.push(b);
        }
        for e in self.edges {
            out[comp[e.l]].edges.push(Edg { l: index[e.l], r: index[e.r], x: e.x });
        }
        out
    }

    pub fn component_of(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.blocks.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.l), find(&mut parent, e.r));
            parent[a] = b;
        }
        (0..self.blocks.len()).map(|v| find(&mut parent, v)).collect()
    }

    pub fn to_desc(&self) -> Result<ManifoldDesc, ModelError> {
        let mut next_slot = vec![0usize; self.blocks.len()];
        let mut gluings = vec![];
        for e in &self.edges {
            let rs = next_slot[e.r];
            next_slot[e.r] += 1;
            let ls = next_slot[e.l];
            next_slot[e.l] += 1;
            gluings.push(Gluing::new((e.l, ls), (e.r, rs), e.x));
        }
        let mut blocks = vec![];
        for (v, b) in self.blocks.iter().enumerate() {
            let holes = self.slots(v);
            let base = Base::from_parts(b.orientable, b.genus, holes)
                .ok_or_else(|| ModelError::Unsupported(describe_base(b, holes)))?;
            let mut fibers = b.fibers.clone();
            if b.twist != 0 {
                fibers.push((1, b.twist));
            }
            let s = if holes == 0 {
                Seifert { base, fibers: b.fibers.clone(), b: Some(b.twist) }
            } else {
                Seifert { base, fibers, b: None }
            };
            blocks.push(s);
        }
        if self.edges.is_empty() && blocks.len() == 1 {
            return Ok(ManifoldDesc::Seifert(blocks.pop().unwrap()));
        }
        Ok(ManifoldDesc::Graph(Graph { blocks, gluings }))
    }

    /// Relation rows over the generators of H₁ of the plumbing, excluding the free
    /// generators coming from cycles of the graph (see [`Plumb::cycle_rank`]).
    pub fn relation_matrix(&self) -> (Vec<Vec<i64>>, usize) {
        // Per block: f, base generators, c per fiber, c0, d per slot.
        let mut offsets = vec![];
        let mut n = 0;
        let mut slot_gen: Vec<Vec<usize>> = vec![];
        for (v, b) in self.blocks.iter().enumerate() {
            offsets.push(n);
            let slots = self.slots(v);
            let base_gens = if b.orientable { 2 * b.genus } else { b.genus } as usize;
            let start_d = n + 1 + base_gens + b.fibers.len() + 1;
            slot_gen.push((start_d..start_d + slots).collect());
            n = start_d + slots;
        }
        let mut rows = vec![];
        let mut used = vec![0usize; self.blocks.len()];
        let mut take = |v: usize| {
            let g = slot_gen[v][used[v]];
            used[v] += 1;
            g
        };
        let mut edge_rows = vec![];
        for e in &self.edges {
            let gl = take(e.l);
            let gr = take(e.r);
            let (fl, fr) = (offsets[e.l], offsets[e.r]);
            // μ_l = a μ_r + c λ_r, λ_l = b μ_r + d λ_r.
            edge_rows.push(vec![(gl, 1), (gr, -e.x.a), (fr, -e.x.c)]);
            edge_rows.push(vec![(fl, 1), (gr, -e.x.b), (fr, -e.x.d)]);
        }
        for (v, b) in self.blocks.iter().enumerate() {
            let f = offsets[v];
            let base_gens = if b.orientable { 2 * b.genus } else { b.genus } as usize;
            let c_start = f + 1 + base_gens;
            let c0 = c_start + b.fibers.len();
            let mut sum = vec![(c0, 1)];
            for (i, &(p, q)) in b.fibers.iter().enumerate() {
                rows.push(sparse(n, &[(c_start + i, p), (f, q)]));
                sum.push((c_start + i, 1));
            }
            rows.push(sparse(n, &[(c0, 1), (f, b.twist)]));
            for &d in &slot_gen[v] {
                sum.push((d, 1));
            }
            if !b.orientable {
                for k in 0..base_gens {
                    sum.push((f + 1 + k, 2));
                }
                rows.push(sparse(n, &[(f, 2)]));
            }
            rows.push(sparse(n, &sum));
        }
        for er in edge_rows {
            rows.push(sparse(n, &er));
        }
        (rows, n)
    }
}

fn sparse(n: usize, entries: &[(usize, i64)]) -> Vec<i64> {
    let mut row = vec![0; n];
    for &(i, v) in entries {
        row[i] += v;
    }
    row
}

fn describe_base(b: &Blk, holes: usize) -> String {
    if b.orientable {
        format!("orientable genus {} with {} boundary components", b.genus, holes)
    } else {
        format!("{} cross-caps with {} boundary components", b.genus, holes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::plumb_h1;

    fn h1(m: &ManifoldDesc) -> String {
        plumb_h1(&Plumb::from_desc(m).unwrap()).unwrap().to_string()
    }

    #[test]
    fn seifert_homology() {
        let m = ManifoldDesc::closed_sfs(Base::S2, &[(2, 1), (3, 1), (5, 1)], 0);
        assert_eq!(h1(&m), "Z/31");
        let m = ManifoldDesc::closed_sfs(Base::S2, &[(2, 1), (3, 1), (6, 1)], -1);
        assert_eq!(h1(&m), "Z");
        let m = ManifoldDesc::closed_sfs(Base::T, &[], 3);
        assert_eq!(h1(&m), "Z^2 ⊕ Z/3");
        let m = ManifoldDesc::closed_sfs(Base::K, &[], 1);
        assert_eq!(h1(&m), "Z ⊕ Z/4");
        let m = ManifoldDesc::sfs(Base::D, &[(2, 1), (3, 1)]);
        assert_eq!(h1(&m), "Z");
        let m = ManifoldDesc::sfs(Base::P, &[]);
        assert_eq!(h1(&m), "Z^3");
    }

    #[test]
    fn graph_homology() {
        let m = ManifoldDesc::self_glued(Seifert::new(Base::A, &[]), Unimodular::m(2, 1, 1, 1));
        // Monodromy [-2,1;-1,1] up to conjugacy, so coker(A − I) is trivial.
        assert_eq!(h1(&m), "Z");
        let m = ManifoldDesc::union(
            Seifert::new(Base::D, &[(2, 1)]),
            Unimodular::m(0, 1, 1, 0),
            Seifert::new(Base::D, &[(3, 1)]),
        );
        // The left solid torus caps the right block with a (1,-2) fiber.
        assert_eq!(h1(&m), "Z/5");
    }

    #[test]
    fn roundtrip_desc() {
        let m = ManifoldDesc::union(
            Seifert::new(Base::D, &[(2, 1), (3, 1)]),
            Unimodular::m(1, 1, -1, 0),
            Seifert::new(Base::A, &[(2, 1)]),
        );
        let p = Plumb::from_desc(&m).unwrap();
        assert_eq!(p.to_desc().unwrap(), m);
    }
}
