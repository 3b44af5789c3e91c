//! Literal syntax for manifold descriptions.
//!
//! ```text
//! sum    := chain ('#' chain)*
//! chain  := prim ('U' matrix prim)* ('/' matrix)?
//! prim   := 'S3' | 'S2xS1' | 'RP3' | 'DxS1' | 'TxI' | 'PxS1'
//!         | 'L(' int ',' int ')'
//!         | 'SFS(' base ';' [fiber (',' fiber)*] [';' int] ')'
//!         | 'T' matrix
//!         | 'Graph(' sfs (',' sfs)* ';' glue (',' glue)* ')'
//!         | '(' sum ')'
//! fiber  := '(' int ',' int ')'
//! matrix := '[' int ',' int ';' int ',' int ']'
//! glue   := int '.' int '>' int '.' int matrix
//! base   := 'S2' | 'RP2' | 'D' | 'A' | 'S' | 'P' | 'T' | 'K'
//! ```

use super::{Atom, Base, Gluing, Graph, ManifoldDesc, ModelError, Seifert};
use crate::slope::Unimodular;

pub fn parse_manifold(text: &str) -> Result<ManifoldDesc, ModelError> {
    let mut p = Parser { src: text, pos: 0 };
    let m = p.sum()?;
    p.ws();
    if p.pos != text.len() {
        return Err(p.err("trailing input"));
    }
    m.validate()?;
    Ok(m)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ModelError {
        ModelError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), ModelError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{tok}'")))
        }
    }

    fn int(&mut self) -> Result<i64, ModelError> {
        self.ws();
        let r = self.rest();
        let mut end = 0;
        if r.starts_with('-') || r.starts_with('+') {
            end = 1;
        } else if r.starts_with('−') {
            end = '−'.len_utf8();
        }
        let digits = r[end..].chars().take_while(|c| c.is_ascii_digit()).count();
        if digits == 0 {
            return Err(self.err("expected integer"));
        }
        let text = r[..end + digits].replace('−', "-");
        let v = text.parse::<i64>().map_err(|_| self.err("integer out of range"))?;
        self.pos += end + digits;
        Ok(v)
    }

    fn matrix(&mut self) -> Result<Unimodular, ModelError> {
        self.expect("[")?;
        let a = self.int()?;
        self.expect(",")?;
        let b = self.int()?;
        self.expect(";")?;
        let c = self.int()?;
        self.expect(",")?;
        let d = self.int()?;
        self.expect("]")?;
        Unimodular::new(a, b, c, d).map_err(|e| self.err(&e.to_string()))
    }

    fn sum(&mut self) -> Result<ManifoldDesc, ModelError> {
        let mut parts = vec![self.chain()?];
        while self.eat("#") {
            parts.push(self.chain()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { ManifoldDesc::sum(parts) })
    }

    fn chain(&mut self) -> Result<ManifoldDesc, ModelError> {
        let first = self.prim()?;
        let mut blocks = vec![];
        let mut gluings = vec![];
        let start = self.pos;
        while self.eat("U") || self.eat("∪") {
            if blocks.is_empty() {
                blocks.push(as_block(&first).ok_or_else(|| self.err("only bounded Seifert blocks can be glued"))?);
            }
            let x = self.matrix()?;
            let next = self.prim()?;
            let k = blocks.len() - 1;
            let out = if k == 0 { 0 } else { 1 };
            gluings.push(Gluing::new((k, out), (k + 1, 0), x));
            blocks.push(as_block(&next).ok_or_else(|| self.err("only bounded Seifert blocks can be glued"))?);
        }
        if self.eat("/") {
            if !blocks.is_empty() {
                self.pos = start;
                return Err(self.err("self-gluing applies to a single block"));
            }
            let block = as_block(&first).ok_or_else(|| self.err("only bounded Seifert blocks can be glued"))?;
            let x = self.matrix()?;
            return Ok(ManifoldDesc::self_glued(block, x));
        }
        if blocks.is_empty() {
            Ok(first)
        } else {
            Ok(ManifoldDesc::Graph(Graph { blocks, gluings }))
        }
    }

    fn prim(&mut self) -> Result<ManifoldDesc, ModelError> {
        self.ws();
        for (kw, atom) in [
            ("S2xS1", Atom::S2xS1),
            ("S3", Atom::S3),
            ("RP3", Atom::RP3),
            ("DxS1", Atom::SolidTorus),
            ("TxI", Atom::TxI),
            ("PxS1", Atom::PxS1),
        ] {
            if self.eat(kw) {
                return Ok(ManifoldDesc::atom(atom));
            }
        }
        if self.eat("L(") {
            let p = self.int()?;
            self.expect(",")?;
            let q = self.int()?;
            self.expect(")")?;
            return Ok(ManifoldDesc::lens(p, q));
        }
        if self.rest().starts_with("SFS(") {
            return Ok(ManifoldDesc::Seifert(self.sfs()?));
        }
        if self.eat("Graph(") {
            let mut blocks = vec![self.sfs()?];
            while self.eat(",") {
                blocks.push(self.sfs()?);
            }
            self.expect(";")?;
            let mut gluings = vec![self.glue()?];
            while self.eat(",") {
                gluings.push(self.glue()?);
            }
            self.expect(")")?;
            return Ok(ManifoldDesc::Graph(Graph { blocks, gluings }));
        }
        if self.eat("T") {
            let monodromy = self.matrix()?;
            return Ok(ManifoldDesc::TorusBundle { monodromy });
        }
        if self.eat("(") {
            let m = self.sum()?;
            self.expect(")")?;
            return Ok(m);
        }
        Err(self.err("expected a manifold"))
    }

    fn sfs(&mut self) -> Result<Seifert, ModelError> {
        self.expect("SFS(")?;
        self.ws();
        let base = self.base()?;
        self.expect(";")?;
        let mut fibers = vec![];
        if self.eat("(") {
            loop {
                let p = self.int()?;
                self.expect(",")?;
                let q = self.int()?;
                self.expect(")")?;
                fibers.push((p, q));
                if !self.eat(",") {
                    break;
                }
                self.expect("(")?;
            }
        }
        let b = if self.eat(";") { Some(self.int()?) } else { None };
        self.expect(")")?;
        Ok(Seifert { base, fibers, b })
    }

    fn base(&mut self) -> Result<Base, ModelError> {
        for (kw, base) in [
            ("S2", Base::S2),
            ("RP2", Base::RP2),
            ("D", Base::D),
            ("A", Base::A),
            ("S", Base::S),
            ("P", Base::P),
            ("T", Base::T),
            ("K", Base::K),
        ] {
            if self.eat(kw) {
                return Ok(base);
            }
        }
        Err(self.err("unknown base"))
    }

    fn glue(&mut self) -> Result<Gluing, ModelError> {
        let fb = self.uint()?;
        self.expect(".")?;
        let fi = self.uint()?;
        self.expect(">")?;
        let tb = self.uint()?;
        self.expect(".")?;
        let ti = self.uint()?;
        let x = self.matrix()?;
        Ok(Gluing::new((fb, fi), (tb, ti), x))
    }

    fn uint(&mut self) -> Result<usize, ModelError> {
        let v = self.int()?;
        usize::try_from(v).map_err(|_| self.err("expected index"))
    }
}

fn as_block(m: &ManifoldDesc) -> Option<Seifert> {
    match m {
        ManifoldDesc::Seifert(s) if !s.base.is_closed() => Some(s.clone()),
        ManifoldDesc::Atom { atom: Atom::SolidTorus } => Some(Seifert::new(Base::D, &[])),
        ManifoldDesc::Atom { atom: Atom::TxI } => Some(Seifert::new(Base::A, &[])),
        ManifoldDesc::Atom { atom: Atom::PxS1 } => Some(Seifert::new(Base::P, &[])),
        _ => None,
    }
}
