//! Buchberger's algorithm and the quotient-ring computations built on it.
//!
//! Pairs are selected by the normal strategy (smallest lcm first) and pruned
//! with the coprime and chain criteria. Every basis element is kept monic and
//! the final basis is fully interreduced, so it is unique for a given order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use super::field::Field;
use super::mono::{Mono, MonomialOrder, NVARS};
use super::poly::Poly;

/// A vector-space dimension that may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Length::Finite(_))
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => write!(f, "INFINITE"),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Length::Finite(n) => s.serialize_u64(*n),
            Length::Infinite => s.serialize_str("INFINITE"),
        }
    }
}

/// An ideal of the polynomial ring in the first `nvars` variables of
/// `x, y, z, t`.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    pub nvars: usize,
    pub gens: Vec<Poly<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(nvars: usize, gens: Vec<Poly<F>>) -> Self {
        assert!(nvars <= NVARS);
        for g in &gens {
            for v in nvars..NVARS {
                assert!(!g.uses_var(v), "generator {g} uses a variable outside the ring");
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { nvars, gens }
    }

    pub fn with(&self, more: impl IntoIterator<Item = Poly<F>>) -> Self {
        let mut gens = self.gens.clone();
        gens.extend(more);
        Ideal::new(self.nvars, gens)
    }

    pub fn groebner(&self, order: MonomialOrder) -> Option<GroebnerBasis<F>> {
        let field = self.gens.first()?.field().clone();
        Some(groebner_basis(&field, self, order))
    }

    /// Dimension of the quotient ring over the field.
    pub fn colength(&self, field: &F) -> Length {
        groebner_basis(field, self, MonomialOrder::DegRevLex).colength()
    }

    /// Length of the part of the quotient supported on the locus where the
    /// variables in `vars` vanish, computed as the stable value of
    /// `colength(I + (vars)^N)`. Returns `Infinite` if the sequence has not
    /// stabilized once it exceeds `cap`.
    pub fn local_length(&self, field: &F, vars: &[usize], cap: Option<u64>) -> Length {
        let base = groebner_basis(field, self, MonomialOrder::DegRevLex);
        if base.is_unit() {
            return Length::Finite(0);
        }
        let mut prev: Option<u64> = None;
        for n in 1u32.. {
            let mut gens = base.basis();
            gens.extend(monomials_of_degree(vars, n).into_iter().map(|m| Poly::monomial(field, m, field.one())));
            let c = groebner_basis(field, &Ideal::new(self.nvars, gens), MonomialOrder::DegRevLex).colength();
            let Length::Finite(c) = c else { return Length::Infinite };
            if prev == Some(c) {
                return Length::Finite(c);
            }
            if cap.is_some_and(|cap| c > cap) {
                return Length::Infinite;
            }
            prev = Some(c);
        }
        unreachable!()
    }
}

/// All monomials of total degree `n` in the given variables.
pub fn monomials_of_degree(vars: &[usize], n: u32) -> Vec<Mono> {
    match vars {
        [] => {
            if n == 0 {
                vec![Mono::ONE]
            } else {
                Vec::new()
            }
        }
        [v, rest @ ..] => {
            let mut out = Vec::new();
            for e in (0..=n).rev() {
                for m in monomials_of_degree(rest, n - e) {
                    out.push(m.mul(Mono::var(*v, e)));
                }
            }
            out
        }
    }
}

/// Internal polynomial form: terms sorted by decreasing order key, monic.
#[derive(Clone)]
struct GPoly<E> {
    terms: Vec<(Mono, E)>,
}

impl<E> GPoly<E> {
    fn lm(&self) -> Mono {
        self.terms[0].0
    }
}

struct Engine<'a, F: Field> {
    field: &'a F,
    order: MonomialOrder,
}

impl<F: Field> Engine<'_, F> {
    fn from_poly(&self, p: &Poly<F>) -> Vec<(Mono, F::Elem)> {
        let mut terms: Vec<(Mono, F::Elem)> = p.terms().map(|(m, c)| (*m, c.clone())).collect();
        terms.sort_by_key(|(m, _)| std::cmp::Reverse(self.order.key(*m)));
        terms
    }

    fn make_monic(&self, mut terms: Vec<(Mono, F::Elem)>) -> GPoly<F::Elem> {
        let inv = self.field.inv(&terms[0].1).unwrap();
        for t in terms.iter_mut() {
            t.1 = self.field.mul(&t.1, &inv);
        }
        GPoly { terms }
    }

    /// Full reduction of `terms` modulo `basis`; result in decreasing order.
    fn reduce(&self, terms: Vec<(Mono, F::Elem)>, basis: &[GPoly<F::Elem>]) -> Vec<(Mono, F::Elem)> {
        let f = self.field;
        let mut acc: BTreeMap<u64, (Mono, F::Elem)> = terms.into_iter().map(|(m, c)| (self.order.key(m), (m, c))).collect();
        let mut rem = Vec::new();
        while let Some((_, (m, c))) = acc.pop_last() {
            let Some(g) = basis.iter().find(|g| g.lm().divides(m)) else {
                rem.push((m, c));
                continue;
            };
            let q = g.lm().quotient(m).unwrap();
            for (gm, gc) in &g.terms[1..] {
                let nm = gm.mul(q);
                let key = self.order.key(nm);
                let delta = f.mul(&c, gc);
                match acc.get_mut(&key) {
                    Some(entry) => {
                        entry.1 = f.sub(&entry.1, &delta);
                        if f.is_zero(&entry.1) {
                            acc.remove(&key);
                        }
                    }
                    None => {
                        acc.insert(key, (nm, f.neg(&delta)));
                    }
                }
            }
        }
        rem
    }

    fn spoly(&self, a: &GPoly<F::Elem>, b: &GPoly<F::Elem>) -> Vec<(Mono, F::Elem)> {
        let f = self.field;
        let l = a.lm().lcm(b.lm());
        let qa = a.lm().quotient(l).unwrap();
        let qb = b.lm().quotient(l).unwrap();
        let mut acc: BTreeMap<u64, (Mono, F::Elem)> = BTreeMap::new();
        for (m, c) in &a.terms[1..] {
            let nm = m.mul(qa);
            acc.insert(self.order.key(nm), (nm, c.clone()));
        }
        for (m, c) in &b.terms[1..] {
            let nm = m.mul(qb);
            let key = self.order.key(nm);
            match acc.get_mut(&key) {
                Some(entry) => {
                    entry.1 = f.sub(&entry.1, c);
                    if f.is_zero(&entry.1) {
                        acc.remove(&key);
                    }
                }
                None => {
                    acc.insert(key, (nm, f.neg(c)));
                }
            }
        }
        acc.into_values().rev().collect()
    }

    fn run(&self, gens: &[Poly<F>]) -> Vec<GPoly<F::Elem>> {
        let mut basis: Vec<GPoly<F::Elem>> = Vec::new();
        let mut pending: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
        let mut input: Vec<Vec<(Mono, F::Elem)>> = gens.iter().map(|g| self.from_poly(g)).collect();
        input.sort_by_key(|t| t.first().map(|(m, _)| self.order.key(*m)));
        for t in input {
            let h = self.reduce(t, &basis);
            if !h.is_empty() {
                self.insert(&mut basis, &mut pending, h);
            }
        }
        while let Some(&pair) = pending.iter().next() {
            pending.remove(&pair);
            let (_, i, j) = pair;
            if self.chain_criterion(&basis, &pending, i, j) {
                continue;
            }
            let s = self.spoly(&basis[i], &basis[j]);
            let h = self.reduce(s, &basis);
            if !h.is_empty() {
                self.insert(&mut basis, &mut pending, h);
            }
        }
        self.interreduce(basis)
    }

    fn insert(&self, basis: &mut Vec<GPoly<F::Elem>>, pending: &mut BTreeSet<(u64, usize, usize)>, h: Vec<(Mono, F::Elem)>) {
        let h = self.make_monic(h);
        let k = basis.len();
        for (i, g) in basis.iter().enumerate() {
            if g.lm().coprime(h.lm()) {
                continue;
            }
            let l = g.lm().lcm(h.lm());
            pending.insert((self.order.key(l), i, k));
        }
        basis.push(h);
    }

    fn chain_criterion(&self, basis: &[GPoly<F::Elem>], pending: &BTreeSet<(u64, usize, usize)>, i: usize, j: usize) -> bool {
        let l = basis[i].lm().lcm(basis[j].lm());
        let in_pending = |a: usize, b: usize| {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            let key = self.order.key(basis[a].lm().lcm(basis[b].lm()));
            pending.contains(&(key, a, b))
        };
        (0..basis.len()).any(|k| k != i && k != j && basis[k].lm().divides(l) && !in_pending(i, k) && !in_pending(j, k))
    }

    fn interreduce(&self, basis: Vec<GPoly<F::Elem>>) -> Vec<GPoly<F::Elem>> {
        let mut minimal: Vec<GPoly<F::Elem>> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let redundant = basis.iter().enumerate().any(|(j, h)| {
                j != i && h.lm().divides(g.lm()) && (h.lm() != g.lm() || j < i)
            });
            if !redundant {
                minimal.push(g.clone());
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others: Vec<GPoly<F::Elem>> =
                minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            let g = &minimal[i];
            let mut terms = vec![g.terms[0].clone()];
            terms.extend(self.reduce(g.terms[1..].to_vec(), &others));
            out.push(GPoly { terms });
        }
        out.sort_by_key(|g| self.order.key(g.lm()));
        out
    }
}

/// A reduced Gröbner basis.
#[derive(Clone)]
pub struct GroebnerBasis<F: Field> {
    field: F,
    order: MonomialOrder,
    nvars: usize,
    polys: Vec<GPoly<F::Elem>>,
}

pub fn groebner_basis<F: Field>(field: &F, ideal: &Ideal<F>, order: MonomialOrder) -> GroebnerBasis<F> {
    let engine = Engine { field, order };
    let polys = engine.run(&ideal.gens);
    GroebnerBasis { field: field.clone(), order, nvars: ideal.nvars, polys }
}

impl<F: Field> GroebnerBasis<F> {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The basis elements, sorted by increasing leading monomial.
    pub fn basis(&self) -> Vec<Poly<F>> {
        self.polys.iter().map(|g| Poly::from_terms(&self.field, g.terms.iter().cloned())).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Mono> {
        self.polys.iter().map(|g| g.lm()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|g| g.lm().is_one())
    }

    pub fn normal_form(&self, p: &Poly<F>) -> Poly<F> {
        let engine = Engine { field: &self.field, order: self.order };
        let rem = engine.reduce(engine.from_poly(p), &self.polys);
        Poly::from_terms(&self.field, rem)
    }

    pub fn contains(&self, p: &Poly<F>) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Standard monomials (not divisible by any leading monomial), sorted by
    /// increasing order key; `None` if there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Mono>> {
        if self.is_unit() {
            return Some(Vec::new());
        }
        let lms = self.leading_monomials();
        let mut bounds = [0u32; NVARS];
        for (v, bound) in bounds.iter_mut().enumerate().take(self.nvars) {
            *bound = lms.iter().filter(|m| m.pure_power_of() == Some(v)).map(|m| m.exp(v)).min()?;
        }
        let mut out = Vec::new();
        let mut exps = [0u32; NVARS];
        loop {
            let m = Mono::from_exps(exps);
            if !lms.iter().any(|l| l.divides(m)) {
                out.push(m);
            }
            let mut v = 0;
            loop {
                if v == self.nvars {
                    out.sort_by_key(|m| self.order.key(*m));
                    return Some(out);
                }
                exps[v] += 1;
                if exps[v] < bounds[v] {
                    break;
                }
                exps[v] = 0;
                v += 1;
            }
        }
    }

    pub fn colength(&self) -> Length {
        match self.standard_monomials() {
            Some(s) => Length::Finite(s.len() as u64),
            None => Length::Infinite,
        }
    }
}

impl<F: Field> fmt::Debug for GroebnerBasis<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.basis()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::{Gf, Rationals};
    use crate::exactalg::parse::parse_poly;

    fn ideal(nvars: usize, gens: &[&str]) -> Ideal<Rationals> {
        Ideal::new(nvars, gens.iter().map(|g| parse_poly(&Rationals, g).unwrap()).collect())
    }

    fn basis_strings(gb: &GroebnerBasis<Rationals>) -> Vec<String> {
        gb.basis().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn contained_generator() {
        let gb = groebner_basis(&Rationals, &ideal(1, &["x^2 - 1", "x - 1"]), MonomialOrder::Lex);
        assert_eq!(basis_strings(&gb), ["x - 1"]);
    }

    #[test]
    fn cusp_with_monomials() {
        let gb = groebner_basis(&Rationals, &ideal(2, &["y^2 - x^3", "x^2", "y"]), MonomialOrder::DegRevLex);
        assert_eq!(basis_strings(&gb), ["y", "x^2"]);
    }

    #[test]
    fn already_reduced() {
        let gb = groebner_basis(&Rationals, &ideal(2, &["x", "y"]), MonomialOrder::DegRevLex);
        assert_eq!(basis_strings(&gb), ["y", "x"]);
    }

    #[test]
    fn colength_examples() {
        assert_eq!(ideal(2, &["x", "y"]).colength(&Rationals), Length::Finite(1));
        assert_eq!(ideal(2, &["y", "x^2"]).colength(&Rationals), Length::Finite(2));
        assert_eq!(ideal(2, &["x*y"]).colength(&Rationals), Length::Infinite);
        assert_eq!(ideal(2, &["1"]).colength(&Rationals), Length::Finite(0));
        // cusp Tjurina ideal
        assert_eq!(ideal(2, &["y^2 - x^3", "-3*x^2", "2*y"]).colength(&Rationals), Length::Finite(2));
    }

    #[test]
    fn lex_elimination() {
        // circle and line: eliminating y leaves a quadratic in x
        let gb = groebner_basis(&Rationals, &ideal(2, &["x^2 + y^2 - 1", "x - y"]), MonomialOrder::Lex);
        assert_eq!(basis_strings(&gb), ["y^2 - 1/2", "x - y"]);
    }

    #[test]
    fn local_length_splits_points() {
        // (y, x(x-1)^2): length 1 at the origin, 2 at (1,0)
        let i = ideal(2, &["y", "x^3 - 2*x^2 + x"]);
        assert_eq!(i.colength(&Rationals), Length::Finite(3));
        assert_eq!(i.local_length(&Rationals, &[0, 1], None), Length::Finite(1));
        // local length along y = 0 only keeps everything
        assert_eq!(i.local_length(&Rationals, &[1], None), Length::Finite(3));
    }

    #[test]
    fn finite_field_basis() {
        let f = Gf::prime(2).unwrap();
        let i = Ideal::new(2, vec![parse_poly(&f, "y^2 + x^3").unwrap(), parse_poly(&f, "x^2").unwrap()]);
        assert_eq!(i.colength(&f), Length::Finite(4));
    }

    #[test]
    fn normal_form_and_membership() {
        let gb = groebner_basis(&Rationals, &ideal(2, &["x^2 - y", "y^2 - 1"]), MonomialOrder::DegRevLex);
        let p = parse_poly(&Rationals, "x^4").unwrap();
        assert_eq!(gb.normal_form(&p).to_string(), "1");
        assert!(gb.contains(&parse_poly(&Rationals, "x^4 - 1").unwrap()));
    }
}
