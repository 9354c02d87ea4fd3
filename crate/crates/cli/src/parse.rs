//! Quiver and module files.
//!
//! A quiver file is a sequence of statements, separated by `;` or whitespace:
//!
//! ```text
//! vertices=3
//! arrows=[(3,2),(2,1)]          # 1-based (source,target)
//! rel: 1*[a2,a1]                 # a2∘a1, written target to source
//! relations=[{coeff: 1, path: [2,1]}]
//! ```
//!
//! A module file gives the dimension vector and one matrix per arrow
//! (rows indexed by the target space); missing matrices are zero.
//!
//! ```text
//! dims=[1,1]
//! mat 1 = [[1]]
//! ```

use hallkit::quiver::{DimVector, Quiver, Relation};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn error_at(&self, pos: usize, msg: impl Into<String>) -> ParseError {
        let before = &self.text[..pos];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError { line, col, msg: msg.into() }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        self.error_at(self.pos, msg)
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    /// Skips whitespace, `;` separators when `seps`, and `#` comments.
    fn skip(&mut self, seps: bool) {
        loop {
            let r = self.rest();
            let trimmed = r.trim_start_matches(|c: char| c.is_whitespace() || (seps && c == ';'));
            self.pos += r.len() - trimmed.len();
            if self.rest().starts_with('#') {
                self.pos += self.rest().find('\n').unwrap_or(self.rest().len());
            } else {
                return;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip(true);
        self.rest().is_empty()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip(false);
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |f| format!("'{f}'"));
            Err(self.error(format!("expected '{c}', found {found}")))
        }
    }

    fn word(&mut self) -> Result<(usize, &'a str), ParseError> {
        self.skip(false);
        let start = self.pos;
        let len = self.rest().find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected a keyword"));
        }
        self.pos += len;
        Ok((start, &self.text[start..self.pos]))
    }

    fn int(&mut self) -> Result<(usize, i64), ParseError> {
        self.skip(false);
        let start = self.pos;
        let mut len = usize::from(self.rest().starts_with('-'));
        len += self.rest()[len..].find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest().len() - len);
        let s = &self.text[start..start + len];
        let v = s.parse().map_err(|_| self.error("expected an integer"))?;
        self.pos += len;
        Ok((start, v))
    }

    fn natural(&mut self) -> Result<(usize, usize), ParseError> {
        let (at, v) = self.int()?;
        usize::try_from(v).map(|v| (at, v)).map_err(|_| self.error_at(at, "expected a non-negative integer"))
    }

    /// `[item, item, ...]`, possibly empty.
    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, ParseError>) -> Result<Vec<T>, ParseError> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn assign(&mut self) -> Result<(), ParseError> {
        if self.eat('=') || self.eat(':') {
            Ok(())
        } else {
            Err(self.error("expected '=' or ':'"))
        }
    }

    /// `a3` or `3`, 1-based.
    fn arrow_ref(&mut self) -> Result<(usize, usize), ParseError> {
        self.eat('a');
        let (at, v) = self.natural()?;
        if v == 0 {
            return Err(self.error_at(at, "arrow indices are 1-based"));
        }
        Ok((at, v - 1))
    }
}

struct PendingRelation {
    at: usize,
    terms: Vec<(i64, Vec<(usize, usize)>)>,
}

fn relation_expr(c: &mut Cursor) -> Result<PendingRelation, ParseError> {
    c.skip(false);
    let at = c.pos;
    let mut terms = Vec::new();
    let mut sign = if c.eat('-') { -1 } else { 1 };
    c.eat('+');
    loop {
        let coeff = if c.peek() == Some('[') {
            1
        } else {
            let (_, k) = c.int()?;
            c.expect('*')?;
            k
        };
        let path = c.list(Cursor::arrow_ref)?;
        terms.push((sign * coeff, path));
        sign = match c.peek() {
            Some('+') => 1,
            Some('-') => -1,
            _ => break,
        };
        c.pos += 1;
    }
    Ok(PendingRelation { at, terms })
}

fn relation_object(c: &mut Cursor) -> Result<PendingRelation, ParseError> {
    c.skip(false);
    let at = c.pos;
    c.expect('{')?;
    let (mut coeff, mut path) = (None, None);
    loop {
        let (kat, key) = c.word()?;
        c.assign()?;
        match key {
            "coeff" => coeff = Some(c.int()?.1),
            "path" => path = Some(c.list(Cursor::arrow_ref)?),
            other => return Err(c.error_at(kat, format!("unknown relation field '{other}'"))),
        }
        if c.eat('}') {
            break;
        }
        c.expect(',')?;
    }
    let path = path.ok_or_else(|| c.error_at(at, "relation needs a path"))?;
    Ok(PendingRelation { at, terms: vec![(coeff.unwrap_or(1), path)] })
}

pub fn parse_quiver(text: &str) -> Result<Quiver, ParseError> {
    let mut c = Cursor::new(text);
    let mut vertices = None;
    let mut arrows: Vec<(usize, (usize, usize))> = Vec::new();
    let mut relations = Vec::new();
    while !c.at_end() {
        let (at, key) = c.word()?;
        match key {
            "vertices" => {
                c.assign()?;
                vertices = Some(c.natural()?);
            }
            "arrows" => {
                c.assign()?;
                arrows = c.list(|c| {
                    c.skip(false);
                    let at = c.pos;
                    c.expect('(')?;
                    let s = c.natural()?.1;
                    c.expect(',')?;
                    let t = c.natural()?.1;
                    c.expect(')')?;
                    Ok((at, (s, t)))
                })?;
            }
            "relations" => {
                c.assign()?;
                relations.extend(c.list(relation_object)?);
            }
            "rel" => {
                c.assign()?;
                relations.push(relation_expr(&mut c)?);
            }
            other => return Err(c.error_at(at, format!("unknown statement '{other}'"))),
        }
    }
    let (_, n) = vertices.ok_or_else(|| c.error_at(0, "missing 'vertices='"))?;
    let mut edges = Vec::with_capacity(arrows.len());
    for &(at, (s, t)) in &arrows {
        for v in [s, t] {
            if v == 0 || v > n {
                return Err(c.error_at(at, format!("arrow ({s},{t}) references vertex {v} of {n}")));
            }
        }
        edges.push((s - 1, t - 1));
    }
    let mut rels = Vec::with_capacity(relations.len());
    for r in relations {
        let mut terms = Vec::new();
        for (coeff, path) in r.terms {
            if let Some(&(at, a)) = path.iter().find(|(_, a)| *a >= edges.len()) {
                return Err(c.error_at(at, format!("arrow a{} does not exist", a + 1)));
            }
            terms.push((coeff, path.into_iter().map(|(_, a)| a).collect()));
        }
        rels.push((r.at, Relation { terms }));
    }
    let at = rels.first().map_or(0, |r| r.0);
    Quiver::new(n, edges, rels.into_iter().map(|r| r.1).collect()).map_err(|e| c.error_at(at, e.to_string()))
}

/// A module given by integer matrices, reduced modulo each prime on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleFile {
    pub dims: DimVector,
    pub mats: Vec<Vec<Vec<i64>>>,
}

pub fn parse_module(text: &str, quiver: &Quiver) -> Result<ModuleFile, ParseError> {
    let mut c = Cursor::new(text);
    let mut dims = None;
    let mut mats: Vec<Option<(usize, Vec<Vec<i64>>)>> = vec![None; quiver.arrows().len()];
    while !c.at_end() {
        let (at, key) = c.word()?;
        match key {
            "dims" => {
                c.assign()?;
                dims = Some((at, c.list(|c| c.natural().map(|v| v.1))?));
            }
            "mat" => {
                let (aat, a) = c.arrow_ref()?;
                c.assign()?;
                let m = c.list(|c| c.list(|c| c.int().map(|v| v.1)))?;
                let slot = mats.get_mut(a).ok_or_else(|| c.error_at(aat, format!("arrow a{} does not exist", a + 1)))?;
                if slot.is_some() {
                    return Err(c.error_at(aat, format!("matrix for arrow {} given twice", a + 1)));
                }
                *slot = Some((aat, m));
            }
            other => return Err(c.error_at(at, format!("unknown statement '{other}'"))),
        }
    }
    let (dat, dims) = dims.ok_or_else(|| c.error_at(0, "missing 'dims='"))?;
    if dims.len() != quiver.vertex_count() {
        return Err(c.error_at(dat, format!("{} dimensions for {} vertices", dims.len(), quiver.vertex_count())));
    }
    let mut out = Vec::with_capacity(mats.len());
    for (k, (m, arrow)) in mats.into_iter().zip(quiver.arrows()).enumerate() {
        let (rows, cols) = (dims[arrow.target], dims[arrow.source]);
        match m {
            None => out.push(vec![vec![0; cols]; rows]),
            Some((at, m)) => {
                let fits = (m.len() == rows || (rows == 0 && m.iter().all(|r| r.is_empty())))
                    && m.iter().all(|r| r.len() == cols);
                if !fits {
                    return Err(c.error_at(at, format!("matrix for arrow {} must be {rows}×{cols}", k + 1)));
                }
                out.push(if rows == 0 { vec![] } else { m });
            }
        }
    }
    Ok(ModuleFile { dims: DimVector(dims), mats: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2() {
        let q = parse_quiver("vertices=2; arrows=[(1,2)]").unwrap();
        assert_eq!(q, Quiver::linear_a(2));
    }

    #[test]
    fn relations_both_syntaxes() {
        let a = parse_quiver("vertices=3\narrows=[(3,2),(2,1)]\nrel: 1*[a2,a1]").unwrap();
        let b = parse_quiver("vertices=3; arrows=[(3,2),(2,1)]; relations=[{coeff: 1, path: [2,1]}]").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.relations(), &[Relation { terms: vec![(1, vec![1, 0])] }]);
        let c = parse_quiver("vertices=4; arrows=[(1,2),(2,4),(1,3),(3,4)]; rel: [a2,a1] - 1*[a4,a3]").unwrap();
        assert_eq!(c.relations()[0].terms, vec![(1, vec![1, 0]), (-1, vec![3, 2])]);
        assert!(parse_quiver("vertices=3; arrows=[(1,2),(2,3),(1,3)]; rel: [a3]").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_quiver("vertices=3\narrows=[(1,2),(5,3)]").unwrap_err();
        assert_eq!((e.line, e.col), (2, 15));
        assert!(e.msg.contains("vertex 5 of 3"), "{e}");
        let e = parse_quiver("vertices=2\narrows=[(1,2)\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_quiver("vertices=2; loops=[]").unwrap_err();
        assert_eq!((e.line, e.col), (1, 13));
        let e = parse_quiver("vertices=2; arrows=[(1,2)]; rel: [a4]").unwrap_err();
        assert!(e.msg.contains("a4"));
    }

    #[test]
    fn modules() {
        let q = Quiver::linear_a(2);
        let m = parse_module("dims=[1,1]\nmat 1 = [[1]]", &q).unwrap();
        assert_eq!(m.mats, vec![vec![vec![1]]]);
        let z = parse_module("dims=[1,0]", &q).unwrap();
        assert_eq!(z.mats, vec![Vec::<Vec<i64>>::new()]);
        let e = parse_module("dims=[1,1]\nmat 1 = [[1,0]]", &q).unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_module("dims=[1]", &q).is_err());
    }
}
