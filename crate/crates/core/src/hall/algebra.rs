//! Elements of the Hall algebra, its coproduct and the bilinear form, truncated to a universe.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::scalar::TwistScalar;
use super::universe::{int, ratio, Label, Universe};
use crate::error::Result;
use crate::quiver::DimVector;
use crate::report::{Comparison, Sweep};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallElement {
    pub p: u64,
    pub coeffs: BTreeMap<Label, TwistScalar>,
}

/// An element of the tensor square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    pub p: u64,
    pub coeffs: BTreeMap<(Label, Label), TwistScalar>,
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, TwistScalar>, k: K, c: TwistScalar) {
    if c.is_zero() {
        return;
    }
    let merged = match map.remove(&k) {
        Some(old) => &old + &c,
        None => c,
    };
    if !merged.is_zero() {
        map.insert(k, merged);
    }
}

impl HallElement {
    pub fn zero(p: u64) -> Self {
        HallElement { p, coeffs: BTreeMap::new() }
    }

    pub fn basis(l: Label, p: u64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(l, TwistScalar::one(p));
        HallElement { p, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &HallElement) -> HallElement {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            add_into(&mut out.coeffs, *k, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &TwistScalar) -> HallElement {
        let mut out = HallElement::zero(self.p);
        for (k, c) in &self.coeffs {
            add_into(&mut out.coeffs, *k, c * s);
        }
        out
    }

    pub fn sub(&self, other: &HallElement) -> HallElement {
        self.add(&other.scale(&TwistScalar::int(-1, self.p)))
    }

    pub fn display<'a>(&'a self, u: &'a Universe) -> impl fmt::Display + 'a {
        Shown(u, self.coeffs.iter().map(|(l, c)| (format!("u[{}]", u.name(*l)), c.clone())).collect())
    }
}

impl Tensor {
    pub fn zero(p: u64) -> Self {
        Tensor { p, coeffs: BTreeMap::new() }
    }

    pub fn display<'a>(&'a self, u: &'a Universe) -> impl fmt::Display + 'a {
        Shown(
            u,
            self.coeffs.iter().map(|((a, b), c)| (format!("u[{}]⊗u[{}]", u.name(*a), u.name(*b)), c.clone())).collect(),
        )
    }
}

struct Shown<'a>(#[allow(dead_code)] &'a Universe, Vec<(String, TwistScalar)>);

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.1.iter().map(|(b, c)| format!("({c})·{b}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `⟨a, b⟩` from the Euler form of the quiver.
fn euler(u: &Universe, a: &DimVector, b: &DimVector) -> Result<i64> {
    u.quiver().euler_form(a, b)
}

impl Universe {
    fn sum_grade(&self, x: Label, y: Label) -> DimVector {
        self.dims(x) + self.dims(y)
    }

    /// `u_X u_Y = Σ_L g^L_{XY} u_L`, optionally twisted by `v^{⟨dim X, dim Y⟩}`.
    pub fn basis_product(&self, x: Label, y: Label, twisted: bool) -> Result<HallElement> {
        let p = self.p();
        let d = self.sum_grade(x, y);
        let factor = if twisted { TwistScalar::v_pow(euler(self, self.dims(x), self.dims(y))?, p) } else { TwistScalar::one(p) };
        let mut out = HallElement::zero(p);
        for l in self.grade(&d)? {
            let g = self.hall_number(x, y, l);
            if g != 0u32.into() {
                add_into(&mut out.coeffs, l, factor.scale(&int(&g)));
            }
        }
        Ok(out)
    }

    pub fn product(&self, f: &HallElement, g: &HallElement, twisted: bool) -> Result<HallElement> {
        let mut out = HallElement::zero(self.p());
        for (x, a) in &f.coeffs {
            for (y, b) in &g.coeffs {
                let s = a * b;
                for (l, c) in self.basis_product(*x, *y, twisted)?.coeffs {
                    add_into(&mut out.coeffs, l, &s * &c);
                }
            }
        }
        Ok(out)
    }

    /// `δ(u_λ) = Σ h^{αβ}_λ u_α ⊗ u_β`, optionally twisted by `v^{⟨dim α, dim β⟩}`.
    pub fn coproduct(&self, l: Label, twisted: bool) -> Result<Tensor> {
        let p = self.p();
        let d = self.dims(l).clone();
        let mut out = Tensor::zero(p);
        for e in d.below() {
            let rest = d.checked_sub(&e).expect("below");
            for a in self.grade(&e)? {
                for b in self.grade(&rest)? {
                    let h = self.h_value(a, b, l)?;
                    if h == BigRational::from_integer(0.into()) {
                        continue;
                    }
                    let t = if twisted { TwistScalar::v_pow(euler(self, &e, &rest)?, p) } else { TwistScalar::one(p) };
                    add_into(&mut out.coeffs, (a, b), t.scale(&h));
                }
            }
        }
        Ok(out)
    }

    pub fn coproduct_of(&self, f: &HallElement, twisted: bool) -> Result<Tensor> {
        let mut out = Tensor::zero(self.p());
        for (l, c) in &f.coeffs {
            for (k, v) in self.coproduct(*l, twisted)?.coeffs {
                add_into(&mut out.coeffs, k, c * &v);
            }
        }
        Ok(out)
    }

    /// `(u_α⊗u_β) * (u_γ⊗u_δ) = |Ext¹(α,δ)|/|Hom(α,δ)| · u_αu_γ ⊗ u_βu_δ`.
    pub fn tensor_product(&self, s: &Tensor, t: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::zero(self.p());
        for ((a, b), c1) in &s.coeffs {
            for ((g, d), c2) in &t.coeffs {
                let w = self.ext_hom_ratio(*a, *d)?;
                let coeff = (c1 * c2).scale(&w);
                let left = self.basis_product(*a, *g, false)?;
                let right = self.basis_product(*b, *d, false)?;
                for (x, cx) in &left.coeffs {
                    for (y, cy) in &right.coeffs {
                        add_into(&mut out.coeffs, (*x, *y), &coeff * &(cx * cy));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `t_α = |V_α| / a_α`.
    pub fn pairing_weight(&self, l: Label) -> BigRational {
        ratio(self.p_pow(self.dims(l).total()), self.aut(l).clone())
    }

    /// The diagonal form `(u_α, u_β) = δ_{αβ} t_α`, extended bilinearly.
    pub fn pairing(&self, f: &HallElement, g: &HallElement) -> TwistScalar {
        let mut s = TwistScalar::zero(self.p());
        for (l, a) in &f.coeffs {
            if let Some(b) = g.coeffs.get(l) {
                s = &s + &(a * b).scale(&self.pairing_weight(*l));
            }
        }
        s
    }

    pub fn tensor_pairing(&self, s: &Tensor, t: &Tensor) -> TwistScalar {
        let mut out = TwistScalar::zero(self.p());
        for ((a, b), c1) in &s.coeffs {
            if let Some(c2) = t.coeffs.get(&(*a, *b)) {
                let w = self.pairing_weight(*a) * self.pairing_weight(*b);
                out = &out + &(c1 * c2).scale(&w);
            }
        }
        out
    }

    fn tensor_basis(&self, a: Label, b: Label) -> Tensor {
        let mut t = Tensor::zero(self.p());
        t.coeffs.insert((a, b), TwistScalar::one(self.p()));
        t
    }

    /// `(u_α, u_β u_γ) = (δ u_α, u_β ⊗ u_γ)`.
    pub fn hopf_pairing_check(&self, a: Label, b: Label, c: Label, twisted: bool) -> Result<Comparison> {
        let p = self.p();
        let lhs = self.pairing(&HallElement::basis(a, p), &self.basis_product(b, c, twisted)?);
        let rhs = self.tensor_pairing(&self.coproduct(a, twisted)?, &self.tensor_basis(b, c));
        let tw = if twisted { "twisted " } else { "" };
        Ok(Comparison::new(
            format!("{tw}(u[{}], u[{}]u[{}])", self.name(a), self.name(b), self.name(c)),
            lhs,
            rhs,
        ))
    }

    /// `δ(u_X u_Y) = δ(u_X) * δ(u_Y)`.
    pub fn green_compat_check(&self, x: Label, y: Label) -> Result<Comparison> {
        let lhs = self.coproduct_of(&self.basis_product(x, y, false)?, false)?;
        let rhs = self.tensor_product(&self.coproduct(x, false)?, &self.coproduct(y, false)?)?;
        Ok(Comparison::with_verdict(
            format!("δ(u[{}]u[{}])", self.name(x), self.name(y)),
            lhs.display(self),
            rhs.display(self),
            lhs == rhs,
        ))
    }

    /// `(u_X u_Y) u_Z = u_X (u_Y u_Z)`.
    pub fn associativity_check(&self, x: Label, y: Label, z: Label) -> Result<Comparison> {
        let p = self.p();
        let (bx, by, bz) = (HallElement::basis(x, p), HallElement::basis(y, p), HallElement::basis(z, p));
        let lhs = self.product(&self.product(&bx, &by, false)?, &bz, false)?;
        let rhs = self.product(&bx, &self.product(&by, &bz, false)?, false)?;
        Ok(Comparison::with_verdict(
            format!("(u[{}]u[{}])u[{}]", self.name(x), self.name(y), self.name(z)),
            lhs.display(self),
            rhs.display(self),
            lhs == rhs,
        ))
    }

    /// `u_i² u_j − (v+v⁻¹) u_i u_j u_i + u_j u_i²` in the twisted algebra, for vertices joined by one edge.
    pub fn serre_element(&self, i: usize, j: usize) -> Result<HallElement> {
        let p = self.p();
        let n = self.quiver().vertex_count();
        let si = self.find(&crate::rep::Rep::simple(self.quiver().clone(), p, i)?)?;
        let sj = self.find(&crate::rep::Rep::simple(self.quiver().clone(), p, j)?)?;
        debug_assert!(i < n && j < n);
        let (ui, uj) = (HallElement::basis(si, p), HallElement::basis(sj, p));
        let m = |a: &HallElement, b: &HallElement| self.product(a, b, true);
        let uii = m(&ui, &ui)?;
        let t1 = m(&uii, &uj)?;
        let t2 = m(&m(&ui, &uj)?, &ui)?;
        let t3 = m(&uj, &uii)?;
        let vv = &TwistScalar::v(p) + &TwistScalar::v_pow(-1, p);
        Ok(t1.sub(&t2.scale(&vv)).add(&t3))
    }

    pub fn serre_check(&self, i: usize, j: usize) -> Result<Comparison> {
        let e = self.serre_element(i, j)?;
        Ok(Comparison::new(
            format!("u{0}²u{1} − (v+v⁻¹)u{0}u{1}u{0} + u{1}u{0}² at p={2}", i + 1, j + 1, self.p()),
            e.display(self),
            "0",
        ))
    }

    /// Associativity over every triple with total dimension at most `max_total`.
    pub fn associativity_sweep(&self, max_total: usize) -> Result<Sweep> {
        let mut sweep = Sweep::new(format!("associativity, p={}", self.p()));
        for x in self.all() {
            for y in self.all() {
                for z in self.all() {
                    if self.dims(x).total() + self.dims(y).total() + self.dims(z).total() > max_total {
                        continue;
                    }
                    sweep.push(self.associativity_check(x, y, z)?);
                }
            }
        }
        Ok(sweep)
    }

    /// Every non-zero coefficient of `u_X u_Y` is a non-negative integer.
    pub fn product_coefficients(&self, x: Label, y: Label) -> Result<Vec<(Label, BigInt)>> {
        Ok(self
            .basis_product(x, y, false)?
            .coeffs
            .into_iter()
            .map(|(l, c)| (l, c.a.to_integer()))
            .collect())
    }
}
