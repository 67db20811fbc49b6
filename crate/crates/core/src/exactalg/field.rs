//! Exact coefficient fields.
//!
//! Two families are provided: the rationals (arbitrary precision fractions)
//! and finite fields `F_{p^k}`. A finite field is a runtime value; passing to
//! an extension produces another [`Gf`] together with an embedding, so code
//! that is generic over [`Field`] never changes type when it needs more roots.

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::upoly::UPoly;
use super::AlgError;

/// Largest finite field (other than a prime field) for which log/exp tables
/// are built.
pub const GF_TABLE_LIMIT: u64 = 1 << 22;

/// A field whose elements are plain values and whose operations take the
/// field as context.
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn characteristic(&self) -> u64;
    /// Number of elements, `None` for infinite fields.
    fn size(&self) -> Option<u64>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of a rational number; `None` when the denominator vanishes.
    fn from_rational(&self, r: &BigRational) -> Option<Self::Elem>;
    /// The `index`-th element of a fixed enumeration of the field
    /// (for finite fields this enumerates every element once).
    fn element(&self, index: u64) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;
    /// True when `a` lies in the prime field and can be printed as an integer
    /// or fraction.
    fn is_rational_elem(&self, a: &Self::Elem) -> bool;

    /// Distinct roots of `f` lying in this field, in a deterministic order.
    fn roots(&self, f: &UPoly<Self>) -> Vec<Self::Elem>;
    /// Degree of the smallest extension over which `f` splits into linear
    /// factors, or `None` if the field cannot be extended.
    fn split_degree(&self, f: &UPoly<Self>) -> Option<u32>;
    /// An extension of the given degree together with the embedding.
    fn extend(&self, degree: u32) -> Result<Extension<Self>, AlgError>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

type EmbedFn<F> = dyn Fn(&<F as Field>::Elem) -> <F as Field>::Elem + Send + Sync;

/// A field extension `K ⊆ L` with `L` of the same representation type.
#[derive(Clone)]
pub struct Extension<F: Field> {
    pub field: F,
    pub degree: u32,
    embed: Arc<EmbedFn<F>>,
}

impl<F: Field> Extension<F> {
    pub fn new(field: F, degree: u32, embed: Arc<EmbedFn<F>>) -> Self {
        Extension { field, degree, embed }
    }

    pub fn trivial(field: &F) -> Self {
        Extension { field: field.clone(), degree: 1, embed: Arc::new(|a| a.clone()) }
    }

    pub fn embed(&self, a: &F::Elem) -> F::Elem {
        (self.embed)(a)
    }

    /// The tower `K ⊆ L ⊆ M` from `self: K ⊆ L` and `next: L ⊆ M`.
    pub fn compose(&self, next: &Extension<F>) -> Extension<F> {
        let (first, second) = (self.embed.clone(), next.embed.clone());
        Extension {
            field: next.field.clone(),
            degree: self.degree * next.degree,
            embed: Arc::new(move |a| second(&first(a))),
        }
    }
}

impl<F: Field> Debug for Extension<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Extension").field("field", &self.field).field("degree", &self.degree).finish()
    }
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }
    fn size(&self) -> Option<u64> {
        None
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(&self, r: &BigRational) -> Option<BigRational> {
        Some(r.clone())
    }
    fn element(&self, index: u64) -> BigRational {
        // 0, 1, -1, 2, -2, ...
        let n = index.div_ceil(2) as i64;
        self.from_i64(if index % 2 == 0 { -n } else { n })
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn is_rational_elem(&self, _: &BigRational) -> bool {
        true
    }

    fn roots(&self, f: &UPoly<Self>) -> Vec<BigRational> {
        rational_roots(f)
    }

    fn split_degree(&self, f: &UPoly<Self>) -> Option<u32> {
        let rad = f.radical();
        if rad.degree().unwrap_or(0) == rational_roots(&rad).len() {
            Some(1)
        } else {
            None
        }
    }

    fn extend(&self, degree: u32) -> Result<Extension<Self>, AlgError> {
        if degree == 1 {
            Ok(Extension::trivial(self))
        } else {
            Err(AlgError::NoExtension)
        }
    }
}

/// Distinct rational roots via the rational root theorem.
fn rational_roots(f: &UPoly<Rationals>) -> Vec<BigRational> {
    let Some(deg) = f.degree() else { return Vec::new() };
    if deg == 0 {
        return Vec::new();
    }
    // clear denominators
    let lcm = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    if ints[0].is_zero() {
        roots.push(BigRational::zero());
        let shift = ints.iter().position(|c| !c.is_zero()).unwrap();
        ints.drain(..shift);
    }
    if ints.len() > 1 {
        let (Some(a0), Some(an)) = (ints[0].abs().to_u64(), ints[ints.len() - 1].abs().to_u64()) else {
            return roots;
        };
        let mut candidates = Vec::new();
        for num in divisors(a0) {
            for den in divisors(an) {
                let r = BigRational::new(BigInt::from(num), BigInt::from(den));
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
        candidates.sort();
        candidates.dedup();
        for c in candidates {
            // f(c) * den^n, evaluated in integers
            let (cn, cd) = (c.numer(), c.denom());
            let mut acc = BigInt::zero();
            let mut denom_pow = BigInt::one();
            for a in ints.iter().rev() {
                acc = acc * cn + a * &denom_pow;
                denom_pow *= cd;
            }
            if acc.is_zero() {
                roots.push(c);
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while (i as u128) * (i as u128) <= n as u128 {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

// ---------------------------------------------------------------------------
// Finite fields
// ---------------------------------------------------------------------------

/// The finite field `F_{p^k}`.
///
/// Elements are encoded as `u32` integers `Σ c_i p^i` where `c_i` is the
/// coefficient of `a^i` and `a` is a root of a fixed primitive polynomial of
/// degree `k` over `F_p`. In particular the prime field is `0..p`.
#[derive(Clone)]
pub struct Gf {
    inner: Arc<GfInner>,
}

struct GfInner {
    p: u64,
    k: u32,
    q: u64,
    /// Monic primitive modulus, coefficients low to high (length k + 1).
    modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Debug for Gf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.inner.k == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            write!(f, "GF({}^{})", self.inner.p, self.inner.k)
        }
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

impl Gf {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Gf, AlgError> {
        Gf::new(p, 1)
    }

    pub fn new(p: u64, k: u32) -> Result<Gf, AlgError> {
        if !is_prime(p) || p >= (1 << 31) {
            return Err(AlgError::InvalidField(format!("{p} is not a supported prime")));
        }
        if k == 0 {
            return Err(AlgError::InvalidField("extension degree must be positive".into()));
        }
        if k == 1 {
            return Ok(Gf {
                inner: Arc::new(GfInner { p, k, q: p, modulus: vec![0, 1], exp: Vec::new(), log: Vec::new() }),
            });
        }
        let q = p.checked_pow(k).filter(|&q| q <= GF_TABLE_LIMIT).ok_or(AlgError::FieldTooLarge)?;
        let (modulus, exp) = find_primitive(p, k, q);
        let mut log = vec![0u32; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        Ok(Gf { inner: Arc::new(GfInner { p, k, q, modulus, exp, log }) })
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    pub fn order(&self) -> u64 {
        self.inner.q
    }

    /// Monic modulus defining the field over `F_p`, low to high.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    fn digits(&self, mut a: u32) -> Vec<u64> {
        let p = self.inner.p;
        (0..self.inner.k)
            .map(|_| {
                let d = a as u64 % p;
                a = (a as u64 / p) as u32;
                d
            })
            .collect()
    }

    fn digitwise(&self, a: u32, b: u32, op: impl Fn(u64, u64) -> u64) -> u32 {
        let p = self.inner.p;
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.inner.k {
            out += op(a % p, b % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out as u32
    }
}

/// Search for the first monic primitive polynomial of degree `k` over `F_p`
/// in encoding order; returns it with the table of powers of its root.
fn find_primitive(p: u64, k: u32, q: u64) -> (Vec<u64>, Vec<u32>) {
    let lower_count = p.pow(k);
    'candidates: for enc in 0..lower_count {
        let mut low: Vec<u64> = Vec::with_capacity(k as usize);
        let mut e = enc;
        for _ in 0..k {
            low.push(e % p);
            e /= p;
        }
        if low[0] == 0 {
            continue;
        }
        let mut cur = vec![0u64; k as usize];
        cur[0] = 1;
        let mut table = Vec::with_capacity((q - 1) as usize);
        for i in 0..(q - 1) {
            let enc_cur = cur.iter().rev().fold(0u64, |acc, &c| acc * p + c);
            if i > 0 && enc_cur == 1 {
                continue 'candidates;
            }
            table.push(enc_cur as u32);
            // multiply by the root: shift and reduce
            let top = cur[k as usize - 1];
            for j in (1..k as usize).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            for j in 0..k as usize {
                cur[j] = (cur[j] + (p - low[j]) * top) % p;
            }
        }
        let enc_cur = cur.iter().rev().fold(0u64, |acc, &c| acc * p + c);
        if enc_cur != 1 {
            continue;
        }
        let mut modulus = low;
        modulus.push(1);
        return (modulus, table);
    }
    unreachable!("primitive polynomials exist in every degree")
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    t.rem_euclid(p as i128) as u64
}

impl Field for Gf {
    type Elem = u32;

    fn characteristic(&self) -> u64 {
        self.inner.p
    }
    fn size(&self) -> Option<u64> {
        Some(self.inner.q)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let p = self.inner.p;
        if self.inner.k == 1 {
            ((*a as u64 + *b as u64) % p) as u32
        } else if p == 2 {
            a ^ b
        } else {
            self.digitwise(*a, *b, |x, y| (x + y) % p)
        }
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let p = self.inner.p;
        if self.inner.k == 1 {
            ((*a as u64 + p - *b as u64) % p) as u32
        } else if p == 2 {
            a ^ b
        } else {
            self.digitwise(*a, *b, |x, y| (x + p - y) % p)
        }
    }
    fn neg(&self, a: &u32) -> u32 {
        self.sub(&0, a)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if self.inner.k == 1 {
            return ((*a as u64 * *b as u64) % self.inner.p) as u32;
        }
        if *a == 0 || *b == 0 {
            return 0;
        }
        let n = self.inner.q - 1;
        let s = (self.inner.log[*a as usize] as u64 + self.inner.log[*b as usize] as u64) % n;
        self.inner.exp[s as usize]
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        if self.inner.k == 1 {
            return Some(mod_inverse(*a as u64, self.inner.p) as u32);
        }
        let n = self.inner.q - 1;
        let l = self.inner.log[*a as usize] as u64;
        Some(self.inner.exp[((n - l) % n) as usize])
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.inner.p as i64) as u32
    }
    fn from_rational(&self, r: &BigRational) -> Option<u32> {
        let p = BigInt::from(self.inner.p);
        let num = r.numer().mod_floor(&p).to_u64().unwrap();
        let den = r.denom().mod_floor(&p).to_u64().unwrap();
        if den == 0 {
            return None;
        }
        Some(((num * mod_inverse(den, self.inner.p)) % self.inner.p) as u32)
    }
    fn element(&self, index: u64) -> u32 {
        (index % self.inner.q) as u32
    }
    fn format(&self, a: &u32) -> String {
        if self.inner.k == 1 || (*a as u64) < self.inner.p {
            return a.to_string();
        }
        let digits = self.digits(*a);
        let mut parts = Vec::new();
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        parts.join("+")
    }
    fn is_rational_elem(&self, a: &u32) -> bool {
        (*a as u64) < self.inner.p
    }

    fn roots(&self, f: &UPoly<Self>) -> Vec<u32> {
        finite_roots(self, f)
    }

    fn split_degree(&self, f: &UPoly<Self>) -> Option<u32> {
        let degrees = f.radical().distinct_degrees();
        Some(degrees.into_iter().fold(1u32, |acc, d| acc.lcm(&d)))
    }

    fn extend(&self, degree: u32) -> Result<Extension<Self>, AlgError> {
        if degree == 1 {
            return Ok(Extension::trivial(self));
        }
        let big = Gf::new(self.inner.p, self.inner.k * degree)?;
        let table: Vec<u32> = if self.inner.k == 1 {
            (0..self.inner.p as u32).collect()
        } else {
            let beta = subfield_root(self, &big);
            let mut powers = vec![1u32];
            for _ in 1..self.inner.k {
                let last = *powers.last().unwrap();
                powers.push(big.mul(&last, &beta));
            }
            (0..self.inner.q as u32)
                .map(|enc| {
                    let digits = self.digits(enc);
                    digits.iter().zip(&powers).fold(0u32, |acc, (&c, pw)| {
                        big.add(&acc, &big.mul(&(c as u32), pw))
                    })
                })
                .collect()
        };
        let table = Arc::new(table);
        Ok(Extension::new(big, degree, Arc::new(move |a: &u32| table[*a as usize])))
    }
}

/// A root in `big` of the modulus of `small`, chosen among the elements of the
/// unique subfield of `big` of order `|small|`.
fn subfield_root(small: &Gf, big: &Gf) -> u32 {
    let n_big = big.inner.q - 1;
    let n_small = small.inner.q - 1;
    let step = n_big / n_small;
    let g = big.inner.exp[1];
    let gen = big.pow(&g, step);
    let mut beta = 1u32;
    for _ in 0..n_small {
        // evaluate the small modulus (coefficients in F_p) at beta
        let val = small.inner.modulus.iter().rev().fold(0u32, |acc, &c| big.add(&big.mul(&acc, &beta), &(c as u32)));
        if val == 0 {
            return beta;
        }
        beta = big.mul(&beta, &gen);
    }
    unreachable!("the subfield contains a root of the modulus")
}

fn finite_roots(field: &Gf, f: &UPoly<Gf>) -> Vec<u32> {
    let Some(deg) = f.degree() else { return Vec::new() };
    if deg == 0 {
        return Vec::new();
    }
    let q = field.inner.q;
    // product of the distinct linear factors: gcd(f, x^q - x)
    let xq = UPoly::x(field).pow_mod(q, f);
    let g = f.gcd(&xq.sub(&UPoly::x(field)));
    let mut roots = Vec::new();
    if field.inner.p == 2 || q <= 1 << 12 {
        for e in 0..q as u32 {
            if field.is_zero(&g.eval(&e)) {
                roots.push(e);
            }
        }
    } else {
        split_linear(field, g, &mut roots, 1);
    }
    roots.sort_unstable();
    roots
}

/// Cantor-Zassenhaus splitting of a product of distinct linear factors
/// (odd characteristic).
fn split_linear(field: &Gf, g: UPoly<Gf>, out: &mut Vec<u32>, mut seed: u64) {
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            let c = g.coeffs();
            out.push(field.neg(&field.div(&c[0], &c[1]).unwrap()));
            return;
        }
        _ => {}
    }
    let exponent = (field.inner.q - 1) / 2;
    loop {
        let shift = UPoly::from_coeffs(field, vec![field.element(seed), field.one()]);
        seed += 1;
        let w = shift.pow_mod(exponent, &g).sub(&UPoly::constant(field, field.one()));
        let d = g.gcd(&w);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < g.degree().unwrap() {
            let (other, _) = g.div_rem(&d);
            split_linear(field, d, out, seed);
            split_linear(field, other, out, seed);
            return;
        }
    }
}

/// Serializable description of a coefficient field, as found in input files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FieldSpec {
    Q,
    Fq { p: u64, #[serde(default = "one_u32")] k: u32 },
}

fn one_u32() -> u32 {
    1
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Q => 0,
            FieldSpec::Fq { p, .. } => *p,
        }
    }

    pub fn label(&self) -> String {
        match self {
            FieldSpec::Q => "Q".to_string(),
            FieldSpec::Fq { p, k: 1 } => format!("F_{p}"),
            FieldSpec::Fq { p, k } => format!("F_{p}^{k}"),
        }
    }
}
