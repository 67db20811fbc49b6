//! Dense univariate polynomials, used for eliminants and tangent cones.

use super::field::Field;

#[derive(Clone, Debug)]
pub struct UPoly<F: Field> {
    field: F,
    /// Coefficients from degree 0 upwards; no trailing zeros.
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for UPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> UPoly<F> {
    pub fn from_coeffs(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &F) -> Self {
        UPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    pub fn x(field: &F) -> Self {
        Self::from_coeffs(field, vec![field.zero(), field.one()])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let li = self.field.inv(l).unwrap();
                self.scale(&li)
            }
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::from_coeffs(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = f.zero();
        let coeffs = (0..n)
            .map(|i| f.add(self.coeffs.get(i).unwrap_or(&zero), other.coeffs.get(i).unwrap_or(&zero)))
            .collect();
        Self::from_coeffs(f, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = f.zero();
        let coeffs = (0..n)
            .map(|i| f.sub(self.coeffs.get(i).unwrap_or(&zero), other.coeffs.get(i).unwrap_or(&zero)))
            .collect();
        Self::from_coeffs(f, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::from_coeffs(f, out)
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = f.inv(d.lead().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(&rem[i], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.sub(&rem[idx], &f.mul(&c, b));
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(f, quot), Self::from_coeffs(f, rem))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| f.mul(&f.from_i64(i as i64), c)).collect();
        Self::from_coeffs(f, coeffs)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let f = &self.field;
        let mut base = self.div_rem(m).1;
        let mut acc = Self::constant(f, f.one()).div_rem(m).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).div_rem(m).1;
            }
            base = base.mul(&base).div_rem(m).1;
            e >>= 1;
        }
        acc
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self) -> Self {
        let f = &self.field;
        match self.degree() {
            None => return self.clone(),
            Some(0) => return Self::constant(f, f.one()),
            _ => {}
        }
        let der = self.derivative();
        if der.is_zero() {
            // f(x) = g(x^p) = h(x)^p over a perfect field
            return self.pth_root().radical();
        }
        let g = self.gcd(&der);
        if g.degree() == Some(0) {
            return self.monic();
        }
        let h = self.div_rem(&g).0.monic();
        if f.characteristic() == 0 {
            return h;
        }
        // factors whose multiplicity is divisible by p survive only in g
        let rg = g.radical();
        let common = h.gcd(&rg);
        h.mul(&rg).div_rem(&common).0.monic()
    }

    /// For `f = g(x^p)` over a finite field, the polynomial `h` with `h^p = f`.
    fn pth_root(&self) -> Self {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let q = f.size().expect("p-th roots need a finite field");
        let root_exp = q / p as u64;
        let coeffs = self.coeffs.iter().step_by(p).map(|c| f.pow(c, root_exp)).collect();
        Self::from_coeffs(f, coeffs)
    }

    /// Degrees of the irreducible factors of a squarefree polynomial over a
    /// finite field (distinct-degree factorization), with repetition removed.
    pub fn distinct_degrees(&self) -> Vec<u32> {
        let f = &self.field;
        let q = f.size().expect("distinct-degree factorization needs a finite field");
        let mut rest = self.monic();
        let mut degrees = Vec::new();
        let x = Self::x(f);
        let mut h = x.clone();
        let mut i = 0u32;
        while rest.degree().unwrap_or(0) > 0 {
            i += 1;
            if rest.degree().unwrap() < 2 * i as usize {
                degrees.push(rest.degree().unwrap() as u32);
                break;
            }
            h = h.pow_mod(q, &rest);
            let g = rest.gcd(&h.sub(&x));
            if g.degree().unwrap_or(0) > 0 {
                degrees.push(i);
                rest = rest.div_rem(&g).0.monic();
                h = h.div_rem(&rest).1;
            }
        }
        degrees.sort_unstable();
        degrees.dedup();
        degrees
    }
}
