//! Sparse multivariate polynomials over an exact field.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::field::{Extension, Field};
use super::mono::{Mono, MonomialOrder, NVARS};
use super::upoly::UPoly;
use super::AlgError;

pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;
pub const T: usize = 3;

/// A polynomial in `x, y, z, t`. Terms are kept in a map keyed by monomial;
/// zero coefficients are never stored.
#[derive(Clone)]
pub struct Poly<F: Field> {
    field: F,
    terms: BTreeMap<Mono, F::Elem>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> Poly<F> {
    pub fn zero(field: &F) -> Self {
        Poly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::monomial(field, Mono::ONE, c)
    }

    pub fn one(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn var(field: &F, var: usize) -> Self {
        Self::monomial(field, Mono::var(var, 1), field.one())
    }

    pub fn monomial(field: &F, m: Mono, c: F::Elem) -> Self {
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert(m, c);
        }
        Poly { field: field.clone(), terms }
    }

    pub fn from_terms(field: &F, terms: impl IntoIterator<Item = (Mono, F::Elem)>) -> Self {
        let mut p = Self::zero(field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Image of a polynomial with rational coefficients.
    pub fn from_rational_terms(field: &F, terms: &BTreeMap<Mono, BigRational>) -> Result<Self, AlgError> {
        let mut p = Self::zero(field);
        for (m, c) in terms {
            let c = field.from_rational(c).ok_or_else(|| AlgError::BadCoefficient(c.to_string()))?;
            p.add_term(*m, c);
        }
        Ok(p)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn add_term(&mut self, m: Mono, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.field.add(existing, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: Mono) -> F::Elem {
        self.terms.get(&m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    /// Lowest total degree of a term (the order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    pub fn homogeneous_part(&self, deg: u32) -> Self {
        Poly {
            field: self.field.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == deg).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Poly { field: self.field.clone(), terms: self.terms.iter().map(|(m, c)| (*m, self.field.neg(c))).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, self.field.neg(c));
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field);
        }
        Poly { field: self.field.clone(), terms: self.terms.iter().map(|(m, a)| (*m, self.field.mul(a, c))).collect() }
    }

    pub fn mul_term(&self, m: Mono, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field);
        }
        Poly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), self.field.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.field);
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.mul(*n), self.field.mul(a, b));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps();
            exps[var] -= 1;
            out.add_term(Mono::from_exps(exps), f.mul(&f.from_i64(e as i64), c));
        }
        out
    }

    /// Substitute `images[i]` for variable `i`.
    pub fn substitute(&self, images: &[Self; NVARS]) -> Self {
        let f = &self.field;
        let mut powers: [Vec<Self>; NVARS] = Default::default();
        let mut out = Self::zero(f);
        for (m, c) in &self.terms {
            let mut term = Self::constant(f, c.clone());
            for (v, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(v) as usize;
                if e == 0 {
                    continue;
                }
                if pw.is_empty() {
                    pw.push(Self::one(f));
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(&images[v]);
                    pw.push(next);
                }
                term = term.mul(&pw[e]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Identity substitution to be modified by the caller.
    pub fn identity_images(field: &F) -> [Self; NVARS] {
        [Self::var(field, X), Self::var(field, Y), Self::var(field, Z), Self::var(field, T)]
    }

    /// Evaluate at a point given for all four variables.
    pub fn eval(&self, point: &[F::Elem; NVARS]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, val) in point.iter().enumerate() {
                let e = m.exp(v);
                if e > 0 {
                    t = f.mul(&t, &f.pow(val, e as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Apply a field embedding to every coefficient.
    pub fn embed(&self, ext: &Extension<F>) -> Self {
        Poly { field: ext.field.clone(), terms: self.terms.iter().map(|(m, c)| (*m, ext.embed(c))).collect() }
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(Mono, &F::Elem)> {
        self.terms.iter().max_by_key(|(m, _)| order.key(**m)).map(|(m, c)| (*m, c))
    }

    /// Scale so that the leading coefficient for `order` is one.
    pub fn monic(&self, order: MonomialOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let ci = self.field.inv(c).unwrap();
                self.scale(&ci)
            }
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let order = MonomialOrder::Lex;
        let (lm, lc) = d.leading_term(order)?;
        let lc_inv = self.field.inv(lc).unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.field);
        while let Some((m, c)) = rem.terms.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            let qm = lm.quotient(m)?;
            let qc = self.field.mul(&c, &lc_inv);
            rem = rem.sub(&d.mul_term(qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// View as a univariate polynomial in `var`, if no other variable occurs.
    pub fn to_univariate(&self, var: usize) -> Option<UPoly<F>> {
        let deg = self.degree_in(var) as usize;
        let mut coeffs = vec![self.field.zero(); deg + 1];
        for (m, c) in &self.terms {
            if m.exps().iter().enumerate().any(|(v, &e)| v != var && e > 0) {
                return None;
            }
            coeffs[m.exp(var) as usize] = c.clone();
        }
        Some(UPoly::from_coeffs(&self.field, coeffs))
    }

    pub fn from_univariate(u: &UPoly<F>, var: usize) -> Self {
        Self::from_terms(u.field(), u.coeffs().iter().enumerate().map(|(i, c)| (Mono::var(var, i as u32), c.clone())))
    }

    /// Rename variables: variable `i` becomes `perm[i]`.
    pub fn permute(&self, perm: [usize; NVARS]) -> Self {
        let mut out = Self::zero(&self.field);
        for (m, c) in &self.terms {
            let mut exps = [0; NVARS];
            for (i, &e) in m.exps().iter().enumerate() {
                exps[perm[i]] += e;
            }
            out.add_term(Mono::from_exps(exps), c.clone());
        }
        out
    }

    /// Set `var = 1`.
    pub fn dehomogenize(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.field);
        for (m, c) in &self.terms {
            let mut exps = m.exps();
            exps[var] = 0;
            out.add_term(Mono::from_exps(exps), c.clone());
        }
        out
    }

    /// Terms in printing order (degrevlex, descending).
    pub fn sorted_terms(&self) -> Vec<(Mono, &F::Elem)> {
        let mut v: Vec<(Mono, &F::Elem)> = self.terms.iter().map(|(m, c)| (*m, c)).collect();
        v.sort_by_key(|(m, _)| std::cmp::Reverse(MonomialOrder::DegRevLex.key(*m)));
        v
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let mut coeff = self.field.format(c);
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            if !self.field.is_rational_elem(c) {
                coeff = format!("({coeff})");
            }
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{coeff}")?;
            } else if coeff == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coeff}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> std::ops::Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        Poly::add(self, rhs)
    }
}

impl<F: Field> std::ops::Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        Poly::sub(self, rhs)
    }
}

impl<F: Field> std::ops::Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        Poly::mul(self, rhs)
    }
}

impl<F: Field> std::ops::Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::{Gf, Rationals};
    use crate::exactalg::parse::parse_poly;

    fn q(s: &str) -> Poly<Rationals> {
        parse_poly(&Rationals, s).unwrap()
    }

    #[test]
    fn arithmetic_and_display() {
        let u = q("y^2*z - x^3");
        assert_eq!(u.to_string(), "-x^3 + y^2*z");
        assert!(u.is_homogeneous());
        assert_eq!(u.derivative(X).to_string(), "-3*x^2");
        let sq = q("x + y").pow(2);
        assert_eq!(sq, q("x^2 + 2*x*y + y^2"));
        assert_eq!(q("3/2*x - 1/3").to_string(), "3/2*x - 1/3");
    }

    #[test]
    fn exact_division() {
        let a = q("x^2 - y^2");
        assert_eq!(a.div_exact(&q("x - y")), Some(q("x + y")));
        assert_eq!(a.div_exact(&q("x - 2*y")), None);
    }

    #[test]
    fn substitution() {
        let u = q("y^2 - x^3");
        let mut imgs = Poly::identity_images(&Rationals);
        imgs[Y] = q("x*y");
        assert_eq!(u.substitute(&imgs), q("x^2*y^2 - x^3"));
    }

    #[test]
    fn finite_field_display() {
        let f = Gf::prime(5).unwrap();
        let u = parse_poly(&f, "y^2*z - x^3").unwrap();
        assert_eq!(u.to_string(), "4*x^3 + y^2*z");
    }
}
