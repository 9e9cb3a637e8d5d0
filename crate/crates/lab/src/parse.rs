//! Text syntax for field elements, matrices, residues and Hecke elements.
//!
//! Field elements use `pi` (or `t`) for the uniformizer, `a` for the
//! generator of `F_q` when `f > 1`, integers, `+ - * / ^` and parentheses.
//! A trailing `@N` reduces to `o/π^N`. Matrices are written `[[2,0],[0,1]]`.
//! Hecke elements are sums such as `2*t(1,0) + [[1,pi],[0,1]] - 1/2*unit`.

use anyhow::{anyhow, bail, Result};
use kazlab_core::hecke::{CoeffRing, DoubleCosetLabel, HeckeAlgebra, HeckeElement};
use kazlab_core::localfield::{Field, FieldElement, FieldKind, ResidueElement};
use kazlab_core::matgrp::{GroupElement, GroupSpec, ResidueMatrix};
use kazlab_core::matrix::Matrix;
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(d);
                chars.next();
            }
            out.push(Tok::Int(digits.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let mut id = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                id.push(d);
                chars.next();
            }
            out.push(Tok::Ident(id));
        } else if "+-*/^()[],@;".contains(c) {
            out.push(Tok::Sym(c));
            chars.next();
        } else {
            bail!("unexpected character '{c}'");
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    field: &'a Field,
}

impl<'a> Parser<'a> {
    fn new(s: &str, field: &'a Field) -> Result<Self> {
        Ok(Parser { toks: lex(s)?, pos: 0, field })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn eat(&mut self, c: char) -> bool {
        let hit = self.peek_sym(c);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            bail!("expected '{c}' at token {}", self.pos + 1)
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => bail!("trailing input at token {}: {t:?}", self.pos + 1),
        }
    }

    fn small(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let v: i64 = (&n).try_into().map_err(|_| anyhow!("integer {n} too large"))?;
                Ok(if neg { -v } else { v })
            }
            _ => bail!("expected an integer at token {}", self.pos + 1),
        }
    }

    fn expr(&mut self) -> Result<FieldElement> {
        let mut acc = if self.eat('-') { self.term()?.neg() } else { self.term()? };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<FieldElement> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.power()?);
            } else if self.eat('/') {
                acc = acc.div(&self.power()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<FieldElement> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let k = self.small()?;
        let b = base.pow(k.unsigned_abs() as u32);
        if k >= 0 {
            Ok(b)
        } else {
            b.inv().ok_or_else(|| anyhow!("negative power of zero"))
        }
    }

    fn atom(&mut self) -> Result<FieldElement> {
        let f = self.field;
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(f.from_ratio(&n, &BigInt::from(1))?)
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                match id.as_str() {
                    "pi" | "t" => Ok(f.uniformizer()),
                    "a" if f.kind() == FieldKind::EqualChar && f.f() > 1 => {
                        Ok(f.residue_constant(f.residue_field().generator()))
                    }
                    _ => bail!("unknown symbol '{id}' for {f}"),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            other => bail!("unexpected {other:?} at token {}", self.pos + 1),
        }
    }

    fn matrix(&mut self) -> Result<Matrix<FieldElement>> {
        self.expect('[')?;
        let mut rows = Vec::new();
        loop {
            self.expect('[')?;
            let mut row = vec![self.expr()?];
            while self.eat(',') {
                row.push(self.expr()?);
            }
            self.expect(']')?;
            if let Some(first) = rows.first().map(Vec::len) {
                if first != row.len() {
                    bail!("ragged matrix rows");
                }
            }
            rows.push(row);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(']')?;
        Ok(Matrix::from_rows(rows))
    }

    fn precision(&mut self) -> Result<Option<u32>> {
        if !self.eat('@') {
            return Ok(None);
        }
        let n = self.small()?;
        u32::try_from(n).map(Some).map_err(|_| anyhow!("precision must be non-negative"))
    }

    fn rational(&mut self) -> Result<Option<BigRational>> {
        let start = self.pos;
        let neg = self.eat('-');
        let num = match self.toks.get(self.pos).cloned() {
            Some(Tok::Int(n)) => n,
            _ if neg => return Ok(Some(BigRational::from_integer(BigInt::from(-1)))),
            _ => return Ok(None),
        };
        self.pos += 1;
        let mut den = BigInt::from(1);
        if self.eat('/') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Int(d)) if d != BigInt::from(0) => {
                    self.pos += 1;
                    den = d;
                }
                _ => {
                    self.pos = start;
                    bail!("bad rational coefficient");
                }
            }
        }
        let r = BigRational::new(num, den);
        Ok(Some(if neg { -r } else { r }))
    }
}

pub fn field_element(s: &str, field: &Field) -> Result<FieldElement> {
    let mut p = Parser::new(s, field)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// `expr@N`.
pub fn residue(s: &str, field: &Field) -> Result<ResidueElement> {
    let mut p = Parser::new(s, field)?;
    let e = p.expr()?;
    let n = p.precision()?.ok_or_else(|| anyhow!("residue needs a precision suffix '@N'"))?;
    p.finish()?;
    Ok(e.reduce(n)?)
}

pub fn field_matrix(s: &str, field: &Field) -> Result<Matrix<FieldElement>> {
    let mut p = Parser::new(s, field)?;
    let m = p.matrix()?;
    p.finish()?;
    Ok(m)
}

pub fn group_element(s: &str, spec: &GroupSpec) -> Result<GroupElement> {
    let m = field_matrix(s, spec.field())?;
    if m.rows() != spec.n() || m.cols() != spec.n() {
        bail!("expected a {}x{} matrix", spec.n(), spec.n());
    }
    Ok(spec.element(m)?)
}

/// `[[..]]@N`, reduced entrywise.
pub fn residue_matrix(s: &str, spec: &GroupSpec) -> Result<ResidueMatrix> {
    let mut p = Parser::new(s, spec.field())?;
    let m = p.matrix()?;
    let n = p.precision()?.ok_or_else(|| anyhow!("residue matrix needs a precision suffix '@N'"))?;
    p.finish()?;
    let g = spec.element(m)?;
    Ok(spec.reduce(&g, n)?)
}

/// A Hecke basis label: `t(1,-1)`, `unit`, a group element `[[..]]` or a
/// residue class `[[..]]@m`.
fn hecke_atom(p: &mut Parser<'_>, alg: &HeckeAlgebra) -> Result<DoubleCosetLabel> {
    let spec = alg.spec();
    match p.peek().cloned() {
        Some(Tok::Ident(id)) if id == "unit" => {
            p.pos += 1;
            Ok(alg.residue_label(&spec.residue_identity(alg.level())))
        }
        Some(Tok::Ident(id)) if id == "t" => {
            p.pos += 1;
            p.expect('(')?;
            let mut a = vec![p.small()?];
            while p.eat(',') {
                a.push(p.small()?);
            }
            p.expect(')')?;
            Ok(alg.tau_label(&spec.tau(a)?))
        }
        Some(Tok::Sym('[')) => {
            let m = p.matrix()?;
            let g = spec.element(m)?;
            match p.precision()? {
                None => Ok(alg.classify(&g)?),
                Some(n) if n == alg.level() => Ok(alg.residue_label(&spec.reduce(&g, n)?)),
                Some(n) => bail!("residue class must be taken at the level {}, got @{n}", alg.level()),
            }
        }
        other => bail!("expected a Hecke basis element at token {}, found {other:?}", p.pos + 1),
    }
}

pub fn hecke_element(s: &str, alg: &HeckeAlgebra, ring: &CoeffRing) -> Result<HeckeElement> {
    let mut p = Parser::new(s, alg.spec().field())?;
    let mut out = HeckeElement::zero(ring.clone());
    let mut first = true;
    loop {
        let sign = if first || p.eat('+') {
            false
        } else if p.eat('-') {
            true
        } else {
            break;
        };
        first = false;
        let coeff = match p.rational()? {
            Some(c) => {
                p.eat('*');
                if sign {
                    -c
                } else {
                    c
                }
            }
            None => BigRational::from_integer(BigInt::from(if sign { -1 } else { 1 })),
        };
        let label = hecke_atom(&mut p, alg)?;
        out.add_term(label, &coeff)?;
    }
    p.finish()?;
    Ok(out)
}
