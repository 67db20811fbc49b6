//! Foliations of the projective plane given by homogeneous vector fields.
//!
//! A triple `φ = (f, g, h)` of forms of degree `m` induces, through the Euler
//! sequence, a map `Ω¹ → O(m − 1)`. It vanishes exactly when `φ` is a
//! multiple of the radial field `(x, y, z)`. The singular scheme is cut out
//! by the 2×2 minors of the matrix with rows `(x, y, z)` and `(f, g, h)`,
//! which are unchanged when a multiple of the radial field is added.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::CurveSpec;
use crate::exactalg::field::{Field, FieldSpec};
use crate::exactalg::gcd::{gcd_all, squarefree_test};
use crate::exactalg::groebner::{monomials_of_degree, Length};
use crate::exactalg::linalg::Matrix;
use crate::exactalg::mono::{Mono, MonomialOrder};
use crate::exactalg::parse::parse_poly;
use crate::exactalg::poly::{Poly, T, X, Y, Z};
use crate::exactalg::scheme::projective_length;
use crate::exactalg::AlgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoliationError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("vector field component {0} is not a form in x, y, z")]
    NotAForm(String),
    #[error("vector field components have different degrees")]
    DegreeMismatch,
    #[error("the vector field is zero")]
    ZeroField,
    #[error("the vector field is a multiple of the radial field")]
    Radial,
    #[error("the characteristic {p} divides the degree {d}")]
    CharDividesDegree { p: u64, d: u32 },
    #[error("the curve is not a leaf of the foliation")]
    NotALeaf,
    #[error("the singular scheme has no divisorial part")]
    NoReductionNeeded,
}

/// Foliation as stored in JSON input files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoliationFile {
    pub field: FieldSpec,
    pub vector_field: [String; 3],
}

/// A homogeneous vector field `f ∂x + g ∂y + h ∂z` of degree `m` defining a
/// foliation.
#[derive(Clone, Debug)]
pub struct VectorField<F: Field> {
    pub field: F,
    pub components: [Poly<F>; 3],
    pub m: u32,
}

impl<F: Field> VectorField<F> {
    pub fn new(field: &F, components: [Poly<F>; 3]) -> Result<Self, FoliationError> {
        let mut degree = None;
        for c in &components {
            if c.is_zero() {
                continue;
            }
            if !c.is_homogeneous() || c.uses_var(T) {
                return Err(FoliationError::NotAForm(c.to_string()));
            }
            match degree {
                None => degree = c.total_degree(),
                Some(m) if Some(m) != c.total_degree() => return Err(FoliationError::DegreeMismatch),
                _ => {}
            }
        }
        let m = degree.ok_or(FoliationError::ZeroField)?;
        let v = VectorField { field: field.clone(), components, m };
        if v.minors().iter().all(Poly::is_zero) {
            return Err(FoliationError::Radial);
        }
        Ok(v)
    }

    pub fn from_file(field: &F, file: &FoliationFile) -> Result<Self, FoliationError> {
        let [f, g, h] = &file.vector_field;
        Self::new(field, [parse_poly(field, f)?, parse_poly(field, g)?, parse_poly(field, h)?])
    }

    /// Degree of the twist: the foliation maps `Ω¹` to `O(m − 1)`.
    pub fn twist(&self) -> i64 {
        self.m as i64 - 1
    }

    /// `(y f − x g, z f − x h, z g − y h)`.
    pub fn minors(&self) -> [Poly<F>; 3] {
        let k = &self.field;
        let [f, g, h] = &self.components;
        let (x, y, z) = (Poly::var(k, X), Poly::var(k, Y), Poly::var(k, Z));
        [y.mul(f).sub(&x.mul(g)), z.mul(f).sub(&x.mul(h)), z.mul(g).sub(&y.mul(h))]
    }

    /// `φu = f u_x + g u_y + h u_z`.
    pub fn apply(&self, u: &Poly<F>) -> Poly<F> {
        let [f, g, h] = &self.components;
        f.mul(&u.derivative(X)).add(&g.mul(&u.derivative(Y))).add(&h.mul(&u.derivative(Z)))
    }

    /// `φ + p·(x, y, z)`.
    pub fn radial_shift(&self, p: &Poly<F>) -> [Poly<F>; 3] {
        let k = &self.field;
        let [f, g, h] = &self.components;
        [f.add(&p.mul(&Poly::var(k, X))), g.add(&p.mul(&Poly::var(k, Y))), h.add(&p.mul(&Poly::var(k, Z)))]
    }

    pub fn format(&self) -> String {
        let [f, g, h] = &self.components;
        format!("({f}, {g}, {h})")
    }
}

/// The singular scheme `S` of a foliation.
#[derive(Clone, Debug)]
pub struct SingularScheme<F: Field> {
    pub minors: [Poly<F>; 3],
    pub degree: Length,
    /// Gcd of the minors: the largest divisor contained in `S`.
    pub divisorial_part: Poly<F>,
}

impl<F: Field> SingularScheme<F> {
    pub fn is_finite(&self) -> bool {
        self.degree.is_finite()
    }
}

pub fn singular_scheme<F: Field>(fol: &VectorField<F>) -> SingularScheme<F> {
    let minors = fol.minors();
    let divisorial_part = gcd_all(&minors);
    let degree = if divisorial_part.is_constant() {
        projective_length(&fol.field, &minors)
    } else {
        Length::Infinite
    };
    SingularScheme { minors, degree, divisorial_part }
}

/// Outcome of the leaf test with its certificate `φu = p·u`.
#[derive(Clone, Debug)]
pub struct LeafTest<F: Field> {
    pub quotient: Option<Poly<F>>,
    /// No component of the curve lies in `S`.
    pub finite_intersection: bool,
}

impl<F: Field> LeafTest<F> {
    pub fn is_leaf(&self) -> bool {
        self.quotient.is_some() && self.finite_intersection
    }
}

pub fn leaf_test_poly<F: Field>(u: &Poly<F>, fol: &VectorField<F>) -> LeafTest<F> {
    let phi_u = fol.apply(u);
    let quotient = if phi_u.is_zero() { Some(Poly::zero(&fol.field)) } else { phi_u.div_exact(u) };
    let finite_intersection = gcd_all(&intersection_generators(u, fol)).is_constant();
    LeafTest { quotient, finite_intersection }
}

pub fn leaf_test<F: Field>(curve: &CurveSpec<F>, fol: &VectorField<F>) -> LeafTest<F> {
    leaf_test_poly(&curve.u, fol)
}

/// Generators of the scheme `C ∩ S`.
pub fn intersection_generators<F: Field>(u: &Poly<F>, fol: &VectorField<F>) -> Vec<Poly<F>> {
    let mut gens = vec![u.clone()];
    gens.extend(fol.minors());
    gens
}

/// Degree of `C ∩ S` for a leaf.
pub fn deg_c_cap_s<F: Field>(curve: &CurveSpec<F>, fol: &VectorField<F>) -> Result<u64, FoliationError> {
    if !leaf_test(curve, fol).is_leaf() {
        return Err(FoliationError::NotALeaf);
    }
    Ok(projective_length(&curve.field, &intersection_generators(&curve.u, fol))
        .finite()
        .expect("a leaf meets S in a finite scheme"))
}

/// The three Hamilton fields `(0, u_z, −u_y)`, `(−u_z, 0, u_x)`, `(u_y, −u_x, 0)`.
pub fn hamilton_fields<F: Field>(u: &Poly<F>) -> [[Poly<F>; 3]; 3] {
    let (ux, uy, uz) = (u.derivative(X), u.derivative(Y), u.derivative(Z));
    let zero = Poly::zero(u.field());
    [
        [zero.clone(), uz.clone(), uy.neg()],
        [uz.neg(), zero.clone(), ux.clone()],
        [uy, ux.neg(), zero],
    ]
}

/// Forms of degree `n` in x, y, z, largest first in degrevlex.
pub fn forms_basis(n: u32) -> Vec<Mono> {
    let mut monos = monomials_of_degree(&[X, Y, Z], n);
    monos.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(*b, *a));
    monos
}

/// Least degree of a nonzero vector field annihilating `u`, with a witness.
#[derive(Clone, Debug)]
pub struct MinAnnihilator<F: Field> {
    pub m: u32,
    pub witness: VectorField<F>,
    /// Dimension of the space of annihilating fields of degree `m`.
    pub kernel_dim: usize,
}

pub fn min_annihilator_degree<F: Field>(curve: &CurveSpec<F>) -> Result<MinAnnihilator<F>, FoliationError> {
    let d = curve.degree();
    let p = curve.characteristic();
    if p != 0 && d as u64 % p == 0 {
        return Err(FoliationError::CharDividesDegree { p, d });
    }
    let k = &curve.field;
    let partials = [curve.u.derivative(X), curve.u.derivative(Y), curve.u.derivative(Z)];
    for m in 0..d {
        let src = forms_basis(m);
        let dst = forms_basis(m + d - 1);
        let index: std::collections::HashMap<Mono, usize> = dst.iter().enumerate().map(|(i, mo)| (*mo, i)).collect();
        let mut mat = Matrix::zeros(k, dst.len(), 3 * src.len());
        for (comp, partial) in partials.iter().enumerate() {
            for (j, mo) in src.iter().enumerate() {
                for (t, c) in partial.mul_term(*mo, &k.one()).terms() {
                    mat.set(index[t], comp * src.len() + j, c.clone());
                }
            }
        }
        let kernel = mat.kernel_basis();
        if kernel.is_empty() {
            continue;
        }
        let build = |v: &[F::Elem]| -> VectorField<F> {
            let lead = v.iter().find(|c| !k.is_zero(c)).expect("nonzero kernel vector");
            let inv = k.inv(lead).unwrap();
            let comps: [Poly<F>; 3] = std::array::from_fn(|comp| {
                Poly::from_terms(k, src.iter().enumerate().map(|(j, mo)| (*mo, k.mul(&v[comp * src.len() + j], &inv))))
            });
            VectorField::new(k, comps).expect("annihilating fields are not radial when p ∤ d")
        };
        let fields: Vec<VectorField<F>> = kernel.iter().map(|v| build(v)).collect();
        let witness = fields
            .iter()
            .find(|f| leaf_test(curve, f).finite_intersection)
            .unwrap_or(&fields[0])
            .clone();
        return Ok(MinAnnihilator { m, witness, kernel_dim: kernel.len() });
    }
    unreachable!("the Hamilton fields annihilate u in degree d − 1")
}

/// `φ = w·φ′ + p·(x, y, z)` with `w` the divisorial part of `S`.
#[derive(Clone, Debug)]
pub struct Reduction<F: Field> {
    pub w: Poly<F>,
    pub reduced: VectorField<F>,
    pub p: Poly<F>,
    pub w_squarefree: bool,
    pub reduced_finite: bool,
    /// Whether `w` divides the equation of the supplied curve.
    pub w_divides_curve: Option<bool>,
}

pub fn divisorial_reduction<F: Field>(fol: &VectorField<F>, curve: Option<&Poly<F>>) -> Result<Reduction<F>, FoliationError> {
    let k = &fol.field;
    let w = gcd_all(&fol.minors());
    let b = w.total_degree().unwrap_or(0);
    if b == 0 {
        return Err(FoliationError::NoReductionNeeded);
    }
    let m = fol.m;
    let src = forms_basis(m - b);
    let radial_src = if m >= 1 { forms_basis(m - 1) } else { Vec::new() };
    let dst = forms_basis(m);
    let index: std::collections::HashMap<Mono, usize> = dst.iter().enumerate().map(|(i, mo)| (*mo, i)).collect();
    let rows = 3 * dst.len();
    let cols = 3 * src.len() + radial_src.len();
    let mut mat = Matrix::zeros(k, rows, cols);
    for comp in 0..3 {
        for (j, mo) in src.iter().enumerate() {
            for (t, c) in w.mul_term(*mo, &k.one()).terms() {
                mat.set(comp * dst.len() + index[t], comp * src.len() + j, c.clone());
            }
        }
    }
    for (j, mo) in radial_src.iter().enumerate() {
        for comp in 0..3 {
            let t = mo.mul(Mono::var(comp, 1));
            mat.set(comp * dst.len() + index[&t], 3 * src.len() + j, k.one());
        }
    }
    let rhs: Vec<F::Elem> = (0..3).flat_map(|comp| dst.iter().map(move |mo| (comp, *mo))).map(|(comp, mo)| fol.components[comp].coeff(mo)).collect();
    let sol = mat.solve(&rhs).expect("the foliation factors through its divisorial part");
    let comps: [Poly<F>; 3] = std::array::from_fn(|comp| {
        Poly::from_terms(k, src.iter().enumerate().map(|(j, mo)| (*mo, sol[comp * src.len() + j].clone())))
    });
    let p = Poly::from_terms(k, radial_src.iter().enumerate().map(|(j, mo)| (*mo, sol[3 * src.len() + j].clone())));
    let reduced = VectorField::new(k, comps).expect("the reduced field defines a foliation");
    let reduced_finite = singular_scheme(&reduced).is_finite();
    Ok(Reduction {
        w_squarefree: squarefree_test(&w),
        w_divides_curve: curve.map(|u| w.divides(u)),
        w,
        reduced,
        p,
        reduced_finite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::{Gf, Rationals};

    fn q(s: &str) -> Poly<Rationals> {
        parse_poly(&Rationals, s).unwrap()
    }

    fn field(f: &str, g: &str, h: &str) -> VectorField<Rationals> {
        VectorField::new(&Rationals, [q(f), q(g), q(h)]).unwrap()
    }

    fn curve(s: &str) -> CurveSpec<Rationals> {
        CurveSpec::irreducible(&Rationals, q(s)).unwrap()
    }

    #[test]
    fn singular_schemes() {
        let s = singular_scheme(&field("0", "y", "-2*z"));
        assert_eq!(s.degree, Length::Finite(3));
        let s = singular_scheme(&field("0", "x", "2*y"));
        assert_eq!(s.degree, Length::Finite(3));
        let s = singular_scheme(&field("0", "x*y", "-2*x*z"));
        assert_eq!(s.degree, Length::Infinite);
        assert_eq!(s.divisorial_part, q("x"));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(VectorField::new(&Rationals, [q("x^2"), q("x*y"), q("x*z")]).unwrap_err(), FoliationError::Radial);
        assert_eq!(VectorField::new(&Rationals, [q("0"), q("0"), q("0")]).unwrap_err(), FoliationError::ZeroField);
        assert_eq!(VectorField::new(&Rationals, [q("x"), q("y^2"), q("0")]).unwrap_err(), FoliationError::DegreeMismatch);
    }

    #[test]
    fn leaves() {
        let t = leaf_test(&curve("y^2*z - x^3"), &field("0", "y", "-2*z"));
        assert!(t.is_leaf());
        assert!(t.quotient.unwrap().is_zero());
        assert!(leaf_test(&curve("x*z - y^2"), &field("0", "x", "2*y")).is_leaf());
        assert!(!leaf_test(&curve("x*z - y^2"), &field("1", "0", "0")).is_leaf());
    }

    #[test]
    fn minimal_degrees() {
        let a = min_annihilator_degree(&curve("y^2*z - x^3")).unwrap();
        assert_eq!(a.m, 1);
        assert_eq!(a.witness.format(), "(0, y, -2*z)");
        assert_eq!(min_annihilator_degree(&curve("y^2*z - x^3 - x^2*z")).unwrap().m, 2);
        assert_eq!(min_annihilator_degree(&curve("x*z - y^2")).unwrap().m, 1);
        assert_eq!(min_annihilator_degree(&curve("x^4 + y^4 + z^4")).unwrap().m, 3);
        let f3 = Gf::prime(3).unwrap();
        let c = CurveSpec::irreducible(&f3, parse_poly(&f3, "y^2*z - x^3 - x*z^2").unwrap()).unwrap();
        assert_eq!(min_annihilator_degree(&c).unwrap_err(), FoliationError::CharDividesDegree { p: 3, d: 3 });
    }

    #[test]
    fn intersection_degrees() {
        assert_eq!(deg_c_cap_s(&curve("y^2*z - x^3"), &field("0", "y", "-2*z")), Ok(2));
        assert_eq!(deg_c_cap_s(&curve("x*z - y^2"), &field("0", "x", "2*y")), Ok(2));
        assert_eq!(deg_c_cap_s(&curve("x*z - y^2"), &field("1", "0", "0")), Err(FoliationError::NotALeaf));
    }

    #[test]
    fn hamilton_fields_annihilate() {
        let u = q("y^2*z - x^3 - x^2*z");
        for comps in hamilton_fields(&u) {
            let v = VectorField::new(&Rationals, comps).unwrap();
            assert!(v.apply(&u).is_zero());
        }
    }

    fn assert_reduction(fol: &VectorField<Rationals>, r: &Reduction<Rationals>) {
        let shifted = VectorField { field: Rationals, components: r.reduced.components.clone().map(|c| c.mul(&r.w)), m: fol.m };
        assert_eq!(shifted.radial_shift(&r.p).to_vec(), fol.components.to_vec());
        let scaled: Vec<_> = r.reduced.minors().iter().map(|mi| mi.mul(&r.w)).collect();
        assert_eq!(scaled, fol.minors().to_vec());
    }

    #[test]
    fn reductions() {
        let fol = field("0", "x*y", "-2*x*z");
        let r = divisorial_reduction(&fol, Some(&q("x*(y^2*z - x^3)"))).unwrap();
        assert_eq!(r.w, q("x"));
        assert_reduction(&fol, &r);
        assert_eq!(singular_scheme(&r.reduced).degree, Length::Finite(3));
        assert!(r.reduced_finite && r.w_squarefree);
        assert_eq!(r.w_divides_curve, Some(true));
        assert_eq!(divisorial_reduction(&field("0", "y", "-2*z"), None).unwrap_err(), FoliationError::NoReductionNeeded);
        let fol = field("x^2", "2*x*y", "-x*z");
        let r = divisorial_reduction(&fol, None).unwrap();
        assert_eq!(r.w, q("x"));
        assert_reduction(&fol, &r);
    }
}
