//! Multivariate gcd, squarefreeness and resultants.

use super::field::Field;
use super::groebner::{groebner_basis, Ideal};
use super::mono::{MonomialOrder, NVARS};
use super::poly::{Poly, T, X, Y, Z};

/// Least common multiple via elimination: `(t·a, (1−t)·b) ∩ k[x,y,z]`.
/// Inputs must not involve `t`.
pub fn lcm<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    assert!(!a.uses_var(T) && !b.uses_var(T), "lcm inputs must not use t");
    let field = a.field();
    if a.is_zero() || b.is_zero() {
        return Poly::zero(field);
    }
    let t = Poly::var(field, T);
    let one_minus_t = Poly::one(field).sub(&t);
    let ideal = Ideal::new(NVARS, vec![t.mul(a), one_minus_t.mul(b)]);
    let gb = groebner_basis(field, &ideal, MonomialOrder::EliminateT);
    let l = gb
        .basis()
        .into_iter()
        .find(|g| !g.uses_var(T))
        .expect("the product lies in the intersection");
    l.monic(MonomialOrder::DegRevLex)
}

/// Monic greatest common divisor (zero when both inputs vanish).
pub fn gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let field = a.field();
    if a.is_zero() {
        return b.monic(MonomialOrder::DegRevLex);
    }
    if b.is_zero() {
        return a.monic(MonomialOrder::DegRevLex);
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(field);
    }
    let l = lcm(a, b);
    a.mul(b).div_exact(&l).expect("lcm divides the product").monic(MonomialOrder::DegRevLex)
}

pub fn gcd_all<F: Field>(polys: &[Poly<F>]) -> Poly<F> {
    let field = polys.first().expect("gcd of an empty list").field();
    let mut g = Poly::zero(field);
    for p in polys {
        g = gcd(&g, p);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

/// True iff `u` has no repeated factor over the algebraic closure.
pub fn squarefree_test<F: Field>(u: &Poly<F>) -> bool {
    if u.is_zero() {
        return false;
    }
    if u.is_constant() {
        return true;
    }
    let partials: Vec<Poly<F>> = [X, Y, Z].iter().map(|&v| u.derivative(v)).collect();
    if partials.iter().all(|p| p.is_zero()) {
        // u is a p-th power
        return false;
    }
    let mut all = vec![u.clone()];
    all.extend(partials);
    gcd_all(&all).is_constant()
}

/// Resultant with respect to `var`, as the Sylvester determinant.
pub fn resultant<F: Field>(a: &Poly<F>, b: &Poly<F>, var: usize) -> Poly<F> {
    let field = a.field();
    let m = a.degree_in(var) as usize;
    let n = b.degree_in(var) as usize;
    if a.is_zero() || b.is_zero() {
        return Poly::zero(field);
    }
    if m == 0 && n == 0 {
        return Poly::one(field);
    }
    let coeffs = |p: &Poly<F>, deg: usize| -> Vec<Poly<F>> {
        let mut c = vec![Poly::zero(field); deg + 1];
        for (mono, coef) in p.terms() {
            let e = mono.exp(var) as usize;
            let mut exps = mono.exps();
            exps[var] = 0;
            c[e].add_term(super::mono::Mono::from_exps(exps), coef.clone());
        }
        c
    };
    let ca = coeffs(a, m);
    let cb = coeffs(b, n);
    let size = m + n;
    let mut mat = vec![vec![Poly::zero(field); size]; size];
    for row in 0..n {
        for (k, c) in ca.iter().rev().enumerate() {
            mat[row][row + k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in cb.iter().rev().enumerate() {
            mat[n + row][row + k] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// Fraction-free determinant of a square matrix of polynomials.
pub fn bareiss_det<F: Field>(mut mat: Vec<Vec<Poly<F>>>) -> Poly<F> {
    let size = mat.len();
    let field = mat[0][0].field().clone();
    let mut negate = false;
    let mut prev = Poly::one(&field);
    for k in 0..size {
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..size).find(|&r| !mat[r][k].is_zero()) else {
                return Poly::zero(&field);
            };
            mat.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = mat[k][k].mul(&mat[i][j]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            mat[i][k] = Poly::zero(&field);
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if negate {
        det.neg()
    } else {
        det
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
    fn gcd_of_products() {
        let a = q("(x - y)*(x + z)^2");
        let b = q("(x + z)*(y^2 - x*z)");
        assert_eq!(gcd(&a, &b), q("x + z"));
        assert_eq!(gcd(&q("x"), &q("y")), q("1"));
        assert_eq!(lcm(&q("x*y"), &q("y*z")), q("x*y*z"));
    }

    #[test]
    fn squarefree_examples() {
        assert!(!squarefree_test(&q("x^2*y")));
        assert!(squarefree_test(&q("y^2*z - x^3")));
        assert!(squarefree_test(&q("x*y*z")));
        let f = Gf::prime(3).unwrap();
        // a cube in characteristic 3
        assert!(!squarefree_test(&parse_poly(&f, "x^3 + y^3").unwrap()));
        assert!(!squarefree_test(&parse_poly(&f, "x^3*y").unwrap()));
        assert!(squarefree_test(&parse_poly(&f, "y^4 - x^3*z").unwrap()));
    }

    #[test]
    fn linear_resultant() {
        assert_eq!(resultant(&q("y - x"), &q("y - z"), Y), q("x - z"));
    }

    #[test]
    fn resultant_detects_common_roots() {
        // x^2 - 1 and x - 1 share a root
        assert!(resultant(&q("x^2 - 1"), &q("x - 1"), X).is_zero());
        // Res_x(x^2 + y, x - y) = y^2 + y
        assert_eq!(resultant(&q("x^2 + y"), &q("x - y"), X), q("y^2 + y"));
    }
}
