//! Canonical module descriptors, meaningful over every prime field.
//!
//! Syntax (vertices and arrows 1-based):
//! `0`, `S2`, `P1`, `I3`, `P1[1]`, `iv(1,3)`, `thin(1,2)`, `thin(1,2;a1)`,
//! `u(2)` (= `u(1:2)`), `u(0:1)`, `u(inf)`, `tau(X)`, `tauinv(X)`, `2*S1`, `X+Y`, `(X)`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{reduce, FfMatrix};
use crate::quiver::{DimVector, Quiver};
use crate::rep::{ar_translate, ar_translate_inverse, Rep};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModSpec {
    Zero,
    Simple(usize),
    Projective(usize),
    Injective(usize),
    /// Dimension one on `support`; listed arrows (all arrows inside the support when `None`) act by 1.
    Thin { support: Vec<usize>, arrows: Option<Vec<usize>> },
    /// Two-vertex regular module `k ⇉ k` with the arrows acting by `a` and `b`.
    Regular { a: i64, b: i64 },
    Tau(Box<ModSpec>),
    TauInv(Box<ModSpec>),
    Sum(Vec<ModSpec>),
    /// Integer matrices reduced at each prime.
    Matrices { dims: Vec<usize>, mats: Vec<Vec<Vec<i64>>> },
}

/// A cluster-category object `M ⊕ P[1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decorated {
    pub module: ModSpec,
    /// Vertices `i` of the shifted projectives `P_i[1]`, sorted.
    pub shifted: Vec<usize>,
}

impl ModSpec {
    pub fn sum(parts: Vec<ModSpec>) -> ModSpec {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                ModSpec::Zero => {}
                ModSpec::Sum(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => ModSpec::Zero,
            1 => flat.pop().expect("one part"),
            _ => ModSpec::Sum(flat),
        }
    }

    pub fn interval(a: usize, b: usize) -> ModSpec {
        ModSpec::Thin { support: (a.min(b)..=a.max(b)).collect(), arrows: None }
    }

    pub fn parse(s: &str) -> Result<ModSpec> {
        let d = Decorated::parse(s)?;
        if !d.shifted.is_empty() {
            return Err(Error::Input(format!("'{s}': shifted projectives are not modules")));
        }
        Ok(d.module)
    }

    /// Realize over `F_p`.
    pub fn realize(&self, quiver: &Arc<Quiver>, p: u64) -> Result<Rep> {
        let n = quiver.vertex_count();
        let vertex = |i: usize| {
            if i < n {
                Ok(i)
            } else {
                Err(Error::Input(format!("vertex {} out of range (the quiver has {n})", i + 1)))
            }
        };
        match self {
            ModSpec::Zero => Ok(Rep::zero(quiver.clone(), p)),
            ModSpec::Simple(i) => Rep::simple(quiver.clone(), p, vertex(*i)?),
            ModSpec::Projective(i) => Rep::projective(quiver.clone(), p, vertex(*i)?),
            ModSpec::Injective(i) => Rep::injective(quiver.clone(), p, vertex(*i)?),
            ModSpec::Thin { support, arrows } => {
                let mut sup = vec![false; n];
                for &v in support {
                    sup[vertex(v)?] = true;
                }
                let dims = DimVector(sup.iter().map(|&b| usize::from(b)).collect());
                if let Some(a) = arrows.as_ref().and_then(|a| a.iter().find(|&&a| a >= quiver.arrows().len())) {
                    return Err(Error::Input(format!("arrow a{} out of range", a + 1)));
                }
                let mats = quiver
                    .arrows()
                    .iter()
                    .enumerate()
                    .map(|(k, a)| {
                        let mut m = FfMatrix::zeros(p, dims[a.target], dims[a.source]);
                        let active = arrows.as_ref().is_none_or(|l| l.contains(&k));
                        if sup[a.source] && sup[a.target] && active {
                            m.set(0, 0, 1);
                        }
                        m
                    })
                    .collect();
                Rep::new(quiver.clone(), p, dims, mats)
            }
            ModSpec::Regular { a, b } => {
                let arrows = quiver.arrows();
                if n != 2 || arrows.len() != 2 || arrows.iter().any(|x| x.source != arrows[0].source || x.target != arrows[0].target)
                {
                    return Err(Error::Input("u(..) needs a quiver with two parallel arrows".into()));
                }
                let (ra, rb) = (reduce(*a, p), reduce(*b, p));
                if ra == 0 && rb == 0 {
                    return Err(Error::Input(format!("u({a}:{b}) is not a point of P^1 over F_{p}")));
                }
                let dims = DimVector(vec![1, 1]);
                let mats = vec![FfMatrix::from_vec(p, 1, 1, vec![ra]), FfMatrix::from_vec(p, 1, 1, vec![rb])];
                Rep::new(quiver.clone(), p, dims, mats)
            }
            ModSpec::Tau(inner) => match inner.as_ref() {
                ModSpec::Sum(parts) => {
                    ModSpec::sum(parts.iter().map(|x| ModSpec::Tau(Box::new(x.clone()))).collect()).realize(quiver, p)
                }
                ModSpec::Projective(_) | ModSpec::Zero => Ok(Rep::zero(quiver.clone(), p)),
                other => ar_translate(&other.realize(quiver, p)?),
            },
            ModSpec::TauInv(inner) => match inner.as_ref() {
                ModSpec::Sum(parts) => {
                    ModSpec::sum(parts.iter().map(|x| ModSpec::TauInv(Box::new(x.clone()))).collect()).realize(quiver, p)
                }
                ModSpec::Injective(_) | ModSpec::Zero => Ok(Rep::zero(quiver.clone(), p)),
                other => ar_translate_inverse(&other.realize(quiver, p)?),
            },
            ModSpec::Sum(parts) => {
                let reps = parts.iter().map(|x| x.realize(quiver, p)).collect::<Result<Vec<_>>>()?;
                Ok(Rep::direct_sum_all(quiver.clone(), p, &reps))
            }
            ModSpec::Matrices { dims, mats } => Rep::from_ints(quiver.clone(), p, DimVector(dims.clone()), mats),
        }
    }
}

impl Decorated {
    pub fn module(m: ModSpec) -> Self {
        Decorated { module: m, shifted: vec![] }
    }

    pub fn parse(s: &str) -> Result<Decorated> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let d = p.expr()?;
        p.ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(d)
    }

    pub fn sum(parts: Vec<Decorated>) -> Decorated {
        let mut shifted: Vec<usize> = parts.iter().flat_map(|d| d.shifted.iter().copied()).collect();
        shifted.sort_unstable();
        Decorated { module: ModSpec::sum(parts.into_iter().map(|d| d.module).collect()), shifted }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Input(format!("object descriptor, column {}: {msg}", self.pos + 1))
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{s}'")))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| {
                self.pos = start;
                self.err("expected an integer")
            })
    }

    fn index(&mut self) -> Result<usize> {
        let v = self.int()?;
        if v < 1 {
            return Err(self.err("indices are 1-based"));
        }
        Ok(v as usize - 1)
    }

    fn expr(&mut self) -> Result<Decorated> {
        let mut parts = vec![self.term()?];
        while self.eat("+") {
            parts.push(self.term()?);
        }
        Ok(Decorated::sum(parts))
    }

    fn term(&mut self) -> Result<Decorated> {
        let save = self.pos;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let k = self.int()?;
            if self.eat("*") {
                let a = self.atom()?;
                return Ok(Decorated::sum(vec![a; k.max(0) as usize]));
            }
            self.pos = save;
        }
        self.atom()
    }

    fn module_arg(&mut self) -> Result<ModSpec> {
        self.expect("(")?;
        let d = self.expr()?;
        self.expect(")")?;
        if !d.shifted.is_empty() {
            return Err(self.err("shifted projectives are not allowed here"));
        }
        Ok(d.module)
    }

    fn atom(&mut self) -> Result<Decorated> {
        let m = |x: ModSpec| -> Result<Decorated> { Ok(Decorated::module(x)) };
        if self.eat("(") {
            let d = self.expr()?;
            self.expect(")")?;
            return Ok(d);
        }
        if self.eat("tauinv") {
            return m(ModSpec::TauInv(Box::new(self.module_arg()?)));
        }
        if self.eat("tau") {
            return m(ModSpec::Tau(Box::new(self.module_arg()?)));
        }
        if self.eat("thin(") {
            let mut support = vec![self.index()?];
            while self.eat(",") {
                support.push(self.index()?);
            }
            let mut arrows = None;
            if self.eat(";") {
                let mut list = Vec::new();
                loop {
                    self.expect("a")?;
                    list.push(self.index()?);
                    if !self.eat(",") {
                        break;
                    }
                }
                arrows = Some(list);
            }
            self.expect(")")?;
            support.sort_unstable();
            support.dedup();
            return m(ModSpec::Thin { support, arrows });
        }
        if self.eat("iv(") {
            let a = self.index()?;
            self.expect(",")?;
            let b = self.index()?;
            self.expect(")")?;
            return m(ModSpec::interval(a, b));
        }
        if self.eat("u(") {
            let (a, b) = if self.eat("inf") {
                (0, 1)
            } else {
                let x = self.int()?;
                if self.eat(":") {
                    (x, self.int()?)
                } else {
                    (1, x)
                }
            };
            self.expect(")")?;
            return m(ModSpec::Regular { a, b });
        }
        match self.peek() {
            Some(b'0') => {
                self.pos += 1;
                m(ModSpec::Zero)
            }
            Some(c @ (b'S' | b'P' | b'I')) => {
                self.pos += 1;
                let i = self.index()?;
                match c {
                    b'S' => m(ModSpec::Simple(i)),
                    b'I' => m(ModSpec::Injective(i)),
                    _ => {
                        if self.eat("[1]") {
                            Ok(Decorated { module: ModSpec::Zero, shifted: vec![i] })
                        } else {
                            m(ModSpec::Projective(i))
                        }
                    }
                }
            }
            _ => Err(self.err("expected an object")),
        }
    }
}

impl fmt::Display for ModSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModSpec::Zero => write!(f, "0"),
            ModSpec::Simple(i) => write!(f, "S{}", i + 1),
            ModSpec::Projective(i) => write!(f, "P{}", i + 1),
            ModSpec::Injective(i) => write!(f, "I{}", i + 1),
            ModSpec::Thin { support, arrows } => {
                let contiguous = support.windows(2).all(|w| w[1] == w[0] + 1);
                if arrows.is_none() && contiguous && !support.is_empty() {
                    return write!(f, "iv({},{})", support[0] + 1, support[support.len() - 1] + 1);
                }
                let s: Vec<String> = support.iter().map(|v| (v + 1).to_string()).collect();
                write!(f, "thin({}", s.join(","))?;
                if let Some(a) = arrows {
                    let a: Vec<String> = a.iter().map(|v| format!("a{}", v + 1)).collect();
                    write!(f, ";{}", a.join(","))?;
                }
                write!(f, ")")
            }
            ModSpec::Regular { a, b } => write!(f, "u({a}:{b})"),
            ModSpec::Tau(x) => write!(f, "tau({x})"),
            ModSpec::TauInv(x) => write!(f, "tauinv({x})"),
            ModSpec::Sum(parts) => {
                let s: Vec<String> = parts.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", s.join("+"))
            }
            ModSpec::Matrices { dims, .. } => {
                let d: Vec<String> = dims.iter().map(|v| v.to_string()).collect();
                write!(f, "mod({})", d.join(","))
            }
        }
    }
}

impl fmt::Display for Decorated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.module != ModSpec::Zero || self.shifted.is_empty() {
            parts.push(self.module.to_string());
        }
        parts.extend(self.shifted.iter().map(|i| format!("P{}[1]", i + 1)));
        write!(f, "{}", parts.join("+"))
    }
}
