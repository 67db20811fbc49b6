//! Zero-dimensional subschemes of the projective plane: chart
//! decomposition, lengths, linear coordinate changes and Hilbert functions.
//!
//! The plane is covered by the chart `z = 1`, the line `z = 0` seen in the
//! chart `y = 1`, and the point `(1:0:0)` seen in the chart `x = 1`. Each
//! affine piece is written in the first two variable slots.

use super::field::Field;
use super::groebner::{groebner_basis, Ideal, Length};
use super::mono::{Mono, MonomialOrder, NVARS};
use super::poly::{Poly, X, Y, Z};

/// One of the three standard affine charts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// `z = 1`, coordinates `(x, y)`.
    Z,
    /// `y = 1`, coordinates `(x, z)`.
    Y,
    /// `x = 1`, coordinates `(y, z)`.
    X,
}

impl Chart {
    /// The homogeneous variables used as the two affine coordinates.
    pub fn coordinates(self) -> [usize; 2] {
        match self {
            Chart::Z => [X, Y],
            Chart::Y => [X, Z],
            Chart::X => [Y, Z],
        }
    }

    pub fn dehomogenizing_var(self) -> usize {
        match self {
            Chart::Z => Z,
            Chart::Y => Y,
            Chart::X => X,
        }
    }

    /// The chart used for a normalized point (`z = 1`, else `y = 1`, else `x = 1`).
    pub fn for_point<F: Field>(field: &F, p: &[F::Elem; 3]) -> Chart {
        if !field.is_zero(&p[2]) {
            Chart::Z
        } else if !field.is_zero(&p[1]) {
            Chart::Y
        } else {
            Chart::X
        }
    }
}

/// Dehomogenize and move the chart coordinates to slots 0 and 1.
pub fn to_chart<F: Field>(p: &Poly<F>, chart: Chart) -> Poly<F> {
    let d = p.dehomogenize(chart.dehomogenizing_var());
    let [a, b] = chart.coordinates();
    let mut perm = [0usize; NVARS];
    perm[a] = 0;
    perm[b] = 1;
    perm[chart.dehomogenizing_var()] = 2;
    perm[3] = 3;
    d.permute(perm)
}

/// Translate slots 0 and 1 by `(a, b)`: `p(s0 + a, s1 + b)`.
pub fn translate<F: Field>(p: &Poly<F>, a: &F::Elem, b: &F::Elem) -> Poly<F> {
    let field = p.field();
    if field.is_zero(a) && field.is_zero(b) {
        return p.clone();
    }
    let mut imgs = Poly::identity_images(field);
    imgs[0] = imgs[0].add(&Poly::constant(field, a.clone()));
    imgs[1] = imgs[1].add(&Poly::constant(field, b.clone()));
    p.substitute(&imgs)
}

/// Scale a point so that its last nonzero coordinate is one.
pub fn normalize_point<F: Field>(field: &F, p: &[F::Elem; 3]) -> [F::Elem; 3] {
    let idx = (0..3).rev().find(|&i| !field.is_zero(&p[i])).expect("the zero vector is not a point");
    let inv = field.inv(&p[idx]).unwrap();
    [field.mul(&p[0], &inv), field.mul(&p[1], &inv), field.mul(&p[2], &inv)]
}

/// Germ of `p` at the point, as a polynomial in slots 0 and 1 vanishing
/// order measured at the origin.
pub fn local_germ<F: Field>(p: &Poly<F>, point: &[F::Elem; 3]) -> Poly<F> {
    let field = p.field();
    let pt = normalize_point(field, point);
    let chart = Chart::for_point(field, &pt);
    let [a, b] = chart.coordinates();
    translate(&to_chart(p, chart), &pt[a], &pt[b])
}

/// Length of the projective scheme cut out by homogeneous generators.
pub fn projective_length<F: Field>(field: &F, gens: &[Poly<F>]) -> Length {
    let in_chart = |chart: Chart| Ideal::new(2, gens.iter().map(|g| to_chart(g, chart)).collect());
    let Length::Finite(affine) = in_chart(Chart::Z).colength(field) else {
        return Length::Infinite;
    };
    let chart_y = in_chart(Chart::Y);
    let slot1 = Poly::var(field, 1);
    if !chart_y.with([slot1]).colength(field).is_finite() {
        return Length::Infinite;
    }
    let Length::Finite(on_line) = chart_y.local_length(field, &[1], None) else {
        return Length::Infinite;
    };
    let Length::Finite(at_corner) = in_chart(Chart::X).local_length(field, &[0, 1], None) else {
        return Length::Infinite;
    };
    Length::Finite(affine + on_line + at_corner)
}

/// Length at a single point of the scheme cut out by homogeneous generators.
pub fn length_at_point<F: Field>(field: &F, gens: &[Poly<F>], point: &[F::Elem; 3], cap: Option<u64>) -> Length {
    let ideal = Ideal::new(2, gens.iter().map(|g| local_germ(g, point)).collect());
    ideal.local_length(field, &[0, 1], cap)
}

/// Substitution `x_i ↦ Σ_j m[i][j] x_j` on the three homogeneous variables.
pub fn linear_change<F: Field>(p: &Poly<F>, m: &[[F::Elem; 3]; 3]) -> Poly<F> {
    let field = p.field();
    let mut imgs = Poly::identity_images(field);
    for (i, row) in m.iter().enumerate() {
        imgs[i] = Poly::from_terms(field, row.iter().enumerate().map(|(j, c)| (Mono::var(j, 1), c.clone())));
    }
    p.substitute(&imgs)
}

/// Inverse of a 3×3 matrix, if it exists.
pub fn invert3<F: Field>(field: &F, m: &[[F::Elem; 3]; 3]) -> Option<[[F::Elem; 3]; 3]> {
    let f = field;
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
        f.sub(&f.mul(&m[r0][c0], &m[r1][c1]), &f.mul(&m[r0][c1], &m[r1][c0]))
    };
    let cof = [
        [minor(1, 2, 1, 2), f.neg(&minor(1, 2, 0, 2)), minor(1, 2, 0, 1)],
        [f.neg(&minor(0, 2, 1, 2)), minor(0, 2, 0, 2), f.neg(&minor(0, 2, 0, 1))],
        [minor(0, 1, 1, 2), f.neg(&minor(0, 1, 0, 2)), minor(0, 1, 0, 1)],
    ];
    let det = (0..3).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(&m[0][j], &cof[0][j])));
    let inv = f.inv(&det)?;
    let mut out = m.clone();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = f.mul(&cof[j][i], &inv);
        }
    }
    Some(out)
}

/// A finite scheme placed in the chart `z = 1` by a coordinate change that
/// moves a line avoiding it to `z = 0`.
pub struct AffineModel<F: Field> {
    pub field: F,
    /// Rows express the new coordinates as linear forms in the old ones.
    pub forward: [[F::Elem; 3]; 3],
    /// Substitution taking old coordinates to new ones.
    pub backward: [[F::Elem; 3]; 3],
    pub ideal: Ideal<F>,
}

impl<F: Field> AffineModel<F> {
    /// Build the model for a line `l = a x + b y + c z` known to avoid the scheme.
    pub fn new(field: &F, gens: &[Poly<F>], line: [F::Elem; 3]) -> Self {
        let f = field;
        let k = (0..3).rev().find(|&i| !f.is_zero(&line[i])).expect("nonzero linear form");
        // new coordinates: the two old variables other than k, then l
        let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        let mut forward = [[f.zero(), f.zero(), f.zero()], [f.zero(), f.zero(), f.zero()], [f.zero(), f.zero(), f.zero()]];
        forward[0][others[0]] = f.one();
        forward[1][others[1]] = f.one();
        forward[2] = line;
        let backward = invert3(f, &forward).expect("forward change is invertible");
        let ideal = Ideal::new(2, gens.iter().map(|g| linear_change(g, &backward).dehomogenize(Z)).collect());
        AffineModel { field: field.clone(), forward, backward, ideal }
    }

    /// Number of standard monomials of degree at most `t`, for every `t` up
    /// to the degree of the scheme.
    pub fn hilbert_function(&self) -> Option<Vec<u64>> {
        let gb = groebner_basis(&self.field, &self.ideal, MonomialOrder::DegRevLex);
        let std = gb.standard_monomials()?;
        let deg = std.len();
        Some((0..=deg as u32).map(|t| std.iter().filter(|m| m.degree() <= t).count() as u64).collect())
    }

    /// Linear forms `α X + β Y + γ` (in new coordinates) in the ideal, returned
    /// as homogeneous linear forms in the original coordinates.
    pub fn linear_forms(&self) -> Vec<[F::Elem; 3]> {
        let f = &self.field;
        let gb = groebner_basis(f, &self.ideal, MonomialOrder::DegRevLex);
        let Some(std) = gb.standard_monomials() else { return Vec::new() };
        let basis_vec = |p: &Poly<F>| -> Vec<F::Elem> {
            let nf = gb.normal_form(p);
            std.iter().map(|m| nf.coeff(*m)).collect()
        };
        let cols = [Poly::var(f, X), Poly::var(f, Y), Poly::one(f)].map(|p| basis_vec(&p));
        let rows: Vec<Vec<F::Elem>> = (0..std.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        if rows.is_empty() {
            return Vec::new();
        }
        let mat = super::linalg::Matrix::from_rows(f, rows);
        mat.kernel_basis()
            .into_iter()
            .map(|v| {
                // v = (α, β, γ) on (X, Y, Z); X, Y, Z are rows of `forward`
                let mut form = [f.zero(), f.zero(), f.zero()];
                for (coef, row) in v.iter().zip(self.forward.iter()) {
                    for j in 0..3 {
                        form[j] = f.add(&form[j], &f.mul(coef, &row[j]));
                    }
                }
                form
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::Rationals;
    use crate::exactalg::parse::parse_poly;

    fn q(s: &str) -> Poly<Rationals> {
        parse_poly(&Rationals, s).unwrap()
    }

    #[test]
    fn coordinate_points_have_length_three() {
        let gens = vec![q("x*y"), q("x*z"), q("y*z")];
        assert_eq!(projective_length(&Rationals, &gens), Length::Finite(3));
    }

    #[test]
    fn fat_point_at_infinity() {
        // (z^2, x) is a double point at (0:1:0)
        let gens = vec![q("z^2"), q("x")];
        assert_eq!(projective_length(&Rationals, &gens), Length::Finite(2));
        // (y^2, z^3) is a triple point... of length 6 at (1:0:0)
        let gens = vec![q("y^2"), q("z^3")];
        assert_eq!(projective_length(&Rationals, &gens), Length::Finite(6));
    }

    #[test]
    fn curves_have_infinite_length() {
        assert_eq!(projective_length(&Rationals, &[q("z")]), Length::Infinite);
        assert_eq!(projective_length(&Rationals, &[q("x*y - z^2")]), Length::Infinite);
    }

    #[test]
    fn bezout_for_conic_and_line() {
        let gens = vec![q("x*z - y^2"), q("x")];
        assert_eq!(projective_length(&Rationals, &gens), Length::Finite(2));
        let one = Rationals.one();
        let zero = Rationals.zero();
        let origin = [zero.clone(), zero.clone(), one.clone()];
        assert_eq!(length_at_point(&Rationals, &gens, &origin, None), Length::Finite(2));
    }

    #[test]
    fn matrix_inverse() {
        let f = Rationals;
        let i = |n| f.from_i64(n);
        let m = [[i(1), i(2), i(0)], [i(0), i(1), i(0)], [i(3), i(0), i(1)]];
        let inv = invert3(&f, &m).unwrap();
        let p = q("x + y*z");
        assert_eq!(linear_change(&linear_change(&p, &m), &inv), p);
    }

    #[test]
    fn collinear_points_hilbert_function() {
        // three points on the line x = 0, away from z = 0
        let gens = vec![q("x"), q("y*(y - z)*(y + z)")];
        let f = Rationals;
        let model = AffineModel::new(&f, &gens, [f.zero(), f.zero(), f.one()]);
        assert_eq!(model.hilbert_function().unwrap(), vec![1, 2, 3, 3]);
        let forms = model.linear_forms();
        assert_eq!(forms.len(), 1);
        assert_eq!(forms[0], [f.one(), f.zero(), f.zero()]);
    }
}
