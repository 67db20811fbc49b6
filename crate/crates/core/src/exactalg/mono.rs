//! Packed monomials in the four variables `x, y, z, t` and monomial orders.

use std::fmt;

pub const NVARS: usize = 4;
pub const VAR_NAMES: [&str; NVARS] = ["x", "y", "z", "t"];

const FIELD_BITS: u32 = 16;
const FIELD_MASK: u64 = 0xFFFF;

/// Exponent vector packed into a `u64`, sixteen bits per variable with `x` in
/// the most significant position. The derived `Ord` is lexicographic with
/// `x > y > z > t`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(u64);

impl Mono {
    pub const ONE: Mono = Mono(0);

    fn shift(var: usize) -> u32 {
        FIELD_BITS * (NVARS - 1 - var) as u32
    }

    pub fn from_exps(exps: [u32; NVARS]) -> Mono {
        let mut packed = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e <= FIELD_MASK as u32, "exponent overflow");
            packed |= (e as u64) << Self::shift(i);
        }
        Mono(packed)
    }

    pub fn var(var: usize, exp: u32) -> Mono {
        let mut exps = [0; NVARS];
        exps[var] = exp;
        Mono::from_exps(exps)
    }

    pub fn exp(self, var: usize) -> u32 {
        ((self.0 >> Self::shift(var)) & FIELD_MASK) as u32
    }

    pub fn exps(self) -> [u32; NVARS] {
        [self.exp(0), self.exp(1), self.exp(2), self.exp(3)]
    }

    pub fn degree(self) -> u32 {
        self.exps().iter().sum()
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn mul(self, other: Mono) -> Mono {
        let a = self.exps();
        let b = other.exps();
        Mono::from_exps([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]])
    }

    pub fn divides(self, other: Mono) -> bool {
        (0..NVARS).all(|i| self.exp(i) <= other.exp(i))
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient(self, other: Mono) -> Option<Mono> {
        if !self.divides(other) {
            return None;
        }
        Some(Mono(other.0 - self.0))
    }

    pub fn lcm(self, other: Mono) -> Mono {
        let a = self.exps();
        let b = other.exps();
        Mono::from_exps([a[0].max(b[0]), a[1].max(b[1]), a[2].max(b[2]), a[3].max(b[3])])
    }

    pub fn coprime(self, other: Mono) -> bool {
        (0..NVARS).all(|i| self.exp(i) == 0 || other.exp(i) == 0)
    }

    /// The single variable this monomial is a pure power of, if any.
    pub fn pure_power_of(self) -> Option<usize> {
        let nonzero: Vec<usize> = (0..NVARS).filter(|&i| self.exp(i) > 0).collect();
        match nonzero.as_slice() {
            [v] => Some(*v),
            _ => None,
        }
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, name) in VAR_NAMES.iter().enumerate() {
            let e = self.exp(i);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Supported monomial orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Lexicographic, `x > y > z > t`.
    Lex,
    /// Degree reverse lexicographic, `x > y > z > t`.
    DegRevLex,
    /// Block order eliminating `t`: the exponent of `t` is compared first,
    /// ties broken by degrevlex on `x, y, z`.
    EliminateT,
}

impl MonomialOrder {
    /// An order-preserving injective key: `a < b` in the order iff
    /// `key(a) < key(b)`.
    pub fn key(self, m: Mono) -> u64 {
        let e = m.exps();
        match self {
            MonomialOrder::Lex => m.0,
            MonomialOrder::DegRevLex => {
                let deg = (e[0] + e[1] + e[2] + e[3]) as u64;
                (deg << 48)
                    | ((FIELD_MASK - e[3] as u64) << 32)
                    | ((FIELD_MASK - e[2] as u64) << 16)
                    | (FIELD_MASK - e[1] as u64)
            }
            MonomialOrder::EliminateT => {
                let deg = (e[0] + e[1] + e[2]) as u64;
                ((e[3] as u64) << 48)
                    | (deg << 32)
                    | ((FIELD_MASK - e[2] as u64) << 16)
                    | (FIELD_MASK - e[1] as u64)
            }
        }
    }

    pub fn cmp(self, a: Mono, b: Mono) -> std::cmp::Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: [u32; 4]) -> Mono {
        Mono::from_exps(e)
    }

    #[test]
    fn degrevlex_order() {
        let o = MonomialOrder::DegRevLex;
        // x^2 > xy > y^2 > xz > yz > z^2
        let seq = [m([2, 0, 0, 0]), m([1, 1, 0, 0]), m([0, 2, 0, 0]), m([1, 0, 1, 0]), m([0, 1, 1, 0]), m([0, 0, 2, 0])];
        for w in seq.windows(2) {
            assert!(o.key(w[0]) > o.key(w[1]), "{} > {}", w[0], w[1]);
        }
        assert!(o.key(m([0, 0, 0, 1])) > o.key(Mono::ONE));
    }

    #[test]
    fn lex_and_elimination() {
        assert!(MonomialOrder::Lex.key(m([1, 0, 0, 0])) > MonomialOrder::Lex.key(m([0, 5, 5, 0])));
        let e = MonomialOrder::EliminateT;
        assert!(e.key(m([0, 0, 0, 1])) > e.key(m([9, 9, 9, 0])));
    }

    #[test]
    fn divisibility() {
        let a = m([1, 2, 0, 0]);
        let b = m([2, 2, 1, 0]);
        assert!(a.divides(b));
        assert_eq!(a.quotient(b), Some(m([1, 0, 1, 0])));
        assert_eq!(a.lcm(m([0, 3, 0, 0])), m([1, 3, 0, 0]));
        assert_eq!(m([0, 4, 0, 0]).pure_power_of(), Some(1));
        assert_eq!(a.to_string(), "x*y^2");
    }
}
