//! Closed points of a zero-dimensional subscheme of the projective plane.
//!
//! Coordinates are found from the minimal polynomials of `x` and `y` in the
//! affine quotient ring. Over a finite field the base is extended until both
//! split; over the rationals only rational points can be returned.

use super::field::{Extension, Field};
use super::groebner::{groebner_basis, Ideal};
use super::linalg::Matrix;
use super::mono::MonomialOrder;
use super::poly::Poly;
use super::scheme::{to_chart, Chart};
use super::upoly::UPoly;
use super::AlgError;

/// A closed point: one geometric representative and its residue degree over
/// the base field.
#[derive(Clone, Debug)]
pub struct ClosedPoint<F: Field> {
    pub coords: [F::Elem; 3],
    pub residue_degree: u32,
}

impl<F: Field> ClosedPoint<F> {
    pub fn format(&self, field: &F) -> String {
        format!("({}:{}:{})", field.format(&self.coords[0]), field.format(&self.coords[1]), field.format(&self.coords[2]))
    }
}

/// Closed points together with the extension their coordinates live in.
#[derive(Clone, Debug)]
pub struct PointSet<F: Field> {
    pub ext: Extension<F>,
    pub points: Vec<ClosedPoint<F>>,
    /// False when some point could not be represented (rational base only).
    pub complete: bool,
}

/// Minimal polynomial of the class of `p` in the quotient by a
/// zero-dimensional Gröbner basis.
fn minimal_polynomial<F: Field>(field: &F, gb: &super::groebner::GroebnerBasis<F>, p: &Poly<F>) -> UPoly<F> {
    let std = gb.standard_monomials().expect("zero-dimensional quotient");
    let vec_of = |q: &Poly<F>| -> Vec<F::Elem> {
        let nf = gb.normal_form(q);
        std.iter().map(|m| nf.coeff(*m)).collect()
    };
    let mut powers = vec![vec_of(&Poly::one(field))];
    let mut cur = Poly::one(field);
    loop {
        cur = gb.normal_form(&cur.mul(p));
        let v = vec_of(&cur);
        let k = powers.len();
        let rows: Vec<Vec<F::Elem>> = (0..std.len()).map(|r| powers.iter().map(|c| c[r].clone()).collect()).collect();
        let mat = Matrix::from_rows(field, rows);
        if let Some(sol) = mat.solve(&v) {
            // p^k = Σ sol_i p^i
            let mut coeffs: Vec<F::Elem> = sol.iter().map(|c| field.neg(c)).collect();
            coeffs.push(field.one());
            debug_assert_eq!(coeffs.len(), k + 1);
            return UPoly::from_coeffs(field, coeffs);
        }
        powers.push(v);
    }
}

/// Univariate polynomials whose roots contain all point coordinates: the
/// minimal polynomials of `x` and `y` in the chart `z = 1` and the gcd of the
/// restrictions to the line `z = 0` (in the coordinate `x`, with `y = 1`).
fn coordinate_polynomials<F: Field>(field: &F, gens: &[Poly<F>]) -> Result<[UPoly<F>; 3], AlgError> {
    let affine = Ideal::new(2, gens.iter().map(|g| to_chart(g, Chart::Z)).collect());
    let gb = groebner_basis(field, &affine, MonomialOrder::DegRevLex);
    if gb.standard_monomials().is_none() {
        return Err(AlgError::NotZeroDimensional);
    }
    let (mx, my) = if gb.is_unit() {
        (UPoly::constant(field, field.one()), UPoly::constant(field, field.one()))
    } else {
        (minimal_polynomial(field, &gb, &Poly::var(field, 0)), minimal_polynomial(field, &gb, &Poly::var(field, 1)))
    };
    let mut line = UPoly::zero(field);
    for g in gens {
        // y = 1, z = 0: slot 1 of the y-chart is z
        let restricted = to_chart(g, Chart::Y);
        let mut imgs = Poly::identity_images(field);
        imgs[1] = Poly::zero(field);
        let r = restricted.substitute(&imgs);
        let u = r.to_univariate(0).expect("restriction is univariate");
        line = line.gcd(&u);
    }
    if line.is_zero() {
        return Err(AlgError::NotZeroDimensional);
    }
    Ok([mx, my, line])
}

/// All closed points of the scheme cut out by homogeneous generators.
pub fn closed_points<F: Field>(field: &F, gens: &[Poly<F>]) -> Result<PointSet<F>, AlgError> {
    let [mx, my, line] = coordinate_polynomials(field, gens)?;
    let mut complete = true;
    let mut degree = 1u32;
    for u in [&mx, &my, &line] {
        match field.split_degree(u) {
            Some(j) => degree = num_integer::lcm(degree, j),
            None => complete = false,
        }
    }
    let ext = field.extend(degree)?;
    let big = &ext.field;
    let gens_big: Vec<Poly<F>> = gens.iter().map(|g| g.embed(&ext)).collect();
    let embed_u = |u: &UPoly<F>| UPoly::from_coeffs(big, u.coeffs().iter().map(|c| ext.embed(c)).collect());
    let xs = big.roots(&embed_u(&mx));
    let ys = big.roots(&embed_u(&my));
    let line_xs = big.roots(&embed_u(&line));

    let vanishes = |pt: &[F::Elem; 3]| {
        let full = [pt[0].clone(), pt[1].clone(), pt[2].clone(), big.zero()];
        gens_big.iter().all(|g| big.is_zero(&g.eval(&full)))
    };
    let mut geometric: Vec<[F::Elem; 3]> = Vec::new();
    for a in &xs {
        for b in &ys {
            let pt = [a.clone(), b.clone(), big.one()];
            if vanishes(&pt) {
                geometric.push(pt);
            }
        }
    }
    for a in &line_xs {
        let pt = [a.clone(), big.one(), big.zero()];
        if vanishes(&pt) {
            geometric.push(pt);
        }
    }
    let corner = [big.one(), big.zero(), big.zero()];
    if vanishes(&corner) {
        geometric.push(corner);
    }

    let points = group_orbits(field, big, geometric);
    Ok(PointSet { ext, points, complete })
}

/// Group geometric points into Frobenius orbits over the base field.
fn group_orbits<F: Field>(base: &F, big: &F, geometric: Vec<[F::Elem; 3]>) -> Vec<ClosedPoint<F>> {
    let mut used = vec![false; geometric.len()];
    let mut out = Vec::new();
    for i in 0..geometric.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut residue_degree = 1u32;
        if let Some(q) = base.size() {
            let frob = |p: &[F::Elem; 3]| [big.pow(&p[0], q), big.pow(&p[1], q), big.pow(&p[2], q)];
            let mut cur = frob(&geometric[i]);
            while cur != geometric[i] {
                if let Some(j) = geometric.iter().position(|g| *g == cur) {
                    used[j] = true;
                }
                residue_degree += 1;
                cur = frob(&cur);
            }
        }
        out.push(ClosedPoint { coords: geometric[i].clone(), residue_degree });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::{Gf, Rationals};
    use crate::exactalg::parse::parse_poly;

    #[test]
    fn rational_points_of_a_scheme() {
        let f = Rationals;
        let gens: Vec<Poly<Rationals>> =
            ["x*y", "x*z", "y*z"].iter().map(|s| parse_poly(&f, s).unwrap()).collect();
        let ps = closed_points(&f, &gens).unwrap();
        assert!(ps.complete);
        let shown: Vec<String> = ps.points.iter().map(|p| p.format(&ps.ext.field)).collect();
        assert_eq!(shown, ["(0:0:1)", "(0:1:0)", "(1:0:0)"]);
    }

    #[test]
    fn irrational_points_are_flagged() {
        let f = Rationals;
        let gens: Vec<Poly<Rationals>> = ["x^2 + y^2", "z"].iter().map(|s| parse_poly(&f, s).unwrap()).collect();
        let ps = closed_points(&f, &gens).unwrap();
        assert!(!ps.complete);
        assert!(ps.points.is_empty());
    }

    #[test]
    fn conjugate_points_form_one_orbit() {
        // x^2 + 1 is irreducible over F_3
        let f = Gf::prime(3).unwrap();
        let gens: Vec<Poly<Gf>> = ["x^2 + z^2", "y"].iter().map(|s| parse_poly(&f, s).unwrap()).collect();
        let ps = closed_points(&f, &gens).unwrap();
        assert!(ps.complete);
        assert_eq!(ps.ext.degree, 2);
        assert_eq!(ps.points.len(), 1);
        assert_eq!(ps.points[0].residue_degree, 2);
    }
}
