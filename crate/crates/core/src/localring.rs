//! Numerical semigroups as models of unibranch monomial-curve local rings
//! `k[[t^a₁, …, t^a_k]]`, their first blowup, and the length bound for
//! `B/A` with its equality case.

use serde::Serialize;
use thiserror::Error;

/// Largest product `min·max` of generators accepted; bounds the Frobenius
/// number and so the size of the membership table.
const MAX_TABLE: u64 = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("no generators given")]
    Empty,
    #[error("generators must be positive")]
    ZeroGenerator,
    #[error("generators have gcd {0}, expected 1")]
    GcdNotOne(u64),
    #[error("generators are too large")]
    TooLarge,
    #[error("multiplicity one: the ring is regular")]
    MultiplicityOne,
    #[error("malformed generator list: {0}")]
    Malformed(String),
}

/// A cofinite submonoid of ℕ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    minimal: Vec<u64>,
    /// `member[n]` for `n ≤ conductor`; every larger integer is a member.
    member: Vec<bool>,
}

impl NumericalSemigroup {
    pub fn new(generators: &[u64]) -> Result<Self, SemigroupError> {
        if generators.is_empty() {
            return Err(SemigroupError::Empty);
        }
        if generators.contains(&0) {
            return Err(SemigroupError::ZeroGenerator);
        }
        let g = generators.iter().fold(0, |acc, &a| num_integer::gcd(acc, a));
        if g != 1 {
            return Err(SemigroupError::GcdNotOne(g));
        }
        let lo = *generators.iter().min().unwrap();
        let hi = *generators.iter().max().unwrap();
        if lo.saturating_mul(hi) > MAX_TABLE {
            return Err(SemigroupError::TooLarge);
        }
        // the Frobenius number is below lo·hi
        let limit = (lo * hi + 1) as usize;
        let mut member = vec![false; limit + 1];
        member[0] = true;
        for n in 1..=limit {
            member[n] = generators.iter().any(|&a| a as usize <= n && member[n - a as usize]);
        }
        let conductor = (0..=limit).rev().find(|&n| !member[n]).map_or(0, |f| f + 1);
        member.truncate(conductor + 1);
        let mut minimal = Vec::new();
        let mut sorted: Vec<u64> = generators.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &a in &sorted {
            let mut reach = vec![false; a as usize + 1];
            reach[0] = true;
            for n in 1..=a as usize {
                reach[n] = minimal.iter().any(|&b: &u64| b as usize <= n && reach[n - b as usize]);
            }
            if !reach[a as usize] {
                minimal.push(a);
            }
        }
        Ok(NumericalSemigroup { minimal, member })
    }

    /// Parse a comma-separated generator list such as `3,4,5`.
    pub fn parse(text: &str) -> Result<Self, SemigroupError> {
        let gens = text
            .split(',')
            .map(|s| s.trim().parse::<u64>().map_err(|_| SemigroupError::Malformed(text.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(&gens)
    }

    pub fn contains(&self, n: u64) -> bool {
        self.member.get(n as usize).copied().unwrap_or(true)
    }

    pub fn minimal_generators(&self) -> &[u64] {
        &self.minimal
    }

    /// Least nonzero element.
    pub fn multiplicity(&self) -> u64 {
        self.minimal[0]
    }

    pub fn embedding_dimension(&self) -> usize {
        self.minimal.len()
    }

    pub fn gaps(&self) -> Vec<u64> {
        (0..self.member.len() as u64).filter(|&n| !self.contains(n)).collect()
    }

    /// Largest gap, `-1` for ℕ.
    pub fn frobenius(&self) -> i64 {
        self.member.len() as i64 - 2
    }
}

impl std::fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.minimal.iter().map(u64::to_string).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

/// Semigroup of the blowup `A[m/t^e]`: generated by `e` and `aᵢ − e`.
pub fn blowup_semigroup(s: &NumericalSemigroup) -> NumericalSemigroup {
    let e = s.multiplicity();
    let mut gens = vec![e];
    gens.extend(s.minimal_generators().iter().filter(|&&a| a > e).map(|&a| a - e));
    NumericalSemigroup::new(&gens).expect("gcd is preserved")
}

/// `ℓ(B/A)`: the gaps of `A` that are filled in `B`.
pub fn colength_b_over_a(s: &NumericalSemigroup) -> u64 {
    let b = blowup_semigroup(s);
    s.gaps().iter().filter(|&&n| b.contains(n)).count() as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HnVerdict {
    pub generators: Vec<u64>,
    pub e: u64,
    pub embdim: usize,
    pub gaps: Vec<u64>,
    pub length: u64,
    pub bound: u64,
    /// `equality` or `strict`.
    pub verdict: &'static str,
    /// Bound holds and equality occurs exactly in embedding dimension 2.
    pub consistent: bool,
}

pub fn hn_check(s: &NumericalSemigroup) -> Result<HnVerdict, SemigroupError> {
    let e = s.multiplicity();
    if e == 1 {
        return Err(SemigroupError::MultiplicityOne);
    }
    let length = colength_b_over_a(s);
    let bound = e * (e - 1) / 2;
    let embdim = s.embedding_dimension();
    let equal = length == bound;
    Ok(HnVerdict {
        generators: s.minimal_generators().to_vec(),
        e,
        embdim,
        gaps: s.gaps(),
        length,
        bound,
        verdict: if equal { "equality" } else { "strict" },
        consistent: length <= bound && equal == (embdim == 2),
    })
}

impl HnVerdict {
    pub fn summary(&self) -> String {
        let gaps: Vec<String> = self.gaps.iter().map(u64::to_string).collect();
        format!(
            "e={} embdim={} gaps={{{}}} ℓ(B/A)={} bound={} verdict={}",
            self.e,
            self.embdim,
            gaps.join(","),
            self.length,
            self.bound,
            self.verdict
        )
    }
}

/// Every numerical semigroup of multiplicity `e` with Frobenius number at
/// most `max_frobenius`, enumerated through Apéry sets: `wᵢ = kᵢe + i` is
/// the least element congruent to `i`, subject to `w_i + w_j ≥ w_{i+j}`.
pub fn semigroups_with(e: u64, max_frobenius: u64) -> Vec<NumericalSemigroup> {
    assert!(e >= 1);
    if e == 1 {
        return vec![NumericalSemigroup::new(&[1]).unwrap()];
    }
    let m = e as usize;
    let kmax = (max_frobenius + e) / e;
    let mut out = Vec::new();
    let mut k = vec![0u64; m];
    fn rec(pos: usize, m: usize, e: u64, kmax: u64, max_f: u64, k: &mut Vec<u64>, out: &mut Vec<NumericalSemigroup>) {
        if pos == m {
            let w = |i: usize| k[i] * e + i as u64;
            for i in 1..m {
                for j in i..m {
                    let s = (i + j) % m;
                    if s != 0 && w(i) + w(j) < w(s) {
                        return;
                    }
                }
            }
            let frob = (1..m).map(w).max().unwrap() - e;
            if frob > max_f {
                return;
            }
            let mut gens = vec![e];
            gens.extend((1..m).map(w));
            out.push(NumericalSemigroup::new(&gens).unwrap());
            return;
        }
        for v in 1..=kmax {
            k[pos] = v;
            rec(pos + 1, m, e, kmax, max_f, k, out);
        }
    }
    rec(1, m, e, kmax, max_frobenius, &mut k, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    #[test]
    fn basic_data() {
        let a = s(&[3, 4, 5]);
        assert_eq!(a.minimal_generators(), [3, 4, 5]);
        assert_eq!(a.gaps(), [1, 2]);
        assert_eq!(a.frobenius(), 2);
        let b = s(&[4, 6, 9, 8]);
        assert_eq!(b.minimal_generators(), [4, 6, 9]);
        assert_eq!(s(&[1]).frobenius(), -1);
        assert_eq!(s(&[2, 5]).gaps(), [1, 3]);
        assert_eq!(NumericalSemigroup::new(&[4, 6]), Err(SemigroupError::GcdNotOne(2)));
    }

    #[test]
    fn blowups() {
        assert_eq!(blowup_semigroup(&s(&[2, 3])), s(&[1]));
        assert_eq!(blowup_semigroup(&s(&[3, 4, 5])), s(&[1]));
        assert_eq!(blowup_semigroup(&s(&[2, 5])), s(&[2, 3]));
        assert_eq!(colength_b_over_a(&s(&[2, 3])), 1);
        assert_eq!(colength_b_over_a(&s(&[3, 4, 5])), 2);
        assert_eq!(colength_b_over_a(&s(&[2, 5])), 1);
    }

    #[test]
    fn verdicts() {
        let v = hn_check(&s(&[2, 3])).unwrap();
        assert_eq!((v.length, v.bound, v.verdict, v.consistent), (1, 1, "equality", true));
        let v = hn_check(&s(&[3, 4, 5])).unwrap();
        assert_eq!((v.length, v.bound, v.verdict, v.consistent), (2, 3, "strict", true));
        assert_eq!(v.summary(), "e=3 embdim=3 gaps={1,2} ℓ(B/A)=2 bound=3 verdict=strict");
        let v = hn_check(&s(&[4, 5, 6, 7])).unwrap();
        assert_eq!((v.length, v.bound, v.embdim), (3, 6, 4));
        assert_eq!(hn_check(&s(&[1])), Err(SemigroupError::MultiplicityOne));
    }

    #[test]
    fn enumeration_counts() {
        // multiplicity 2: <2, 2k+1> with Frobenius 2k−1 ≤ 30
        assert_eq!(semigroups_with(2, 30).len(), 15);
        for e in 2..=6 {
            for sg in semigroups_with(e, 30) {
                assert_eq!(sg.multiplicity(), e);
                assert!(sg.frobenius() <= 30);
            }
        }
    }
}
