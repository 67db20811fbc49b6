//! Reduced plane projective curves and their classical invariants.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blowup::{resolve_germ, BlowupError, ResolutionTree};
use crate::exactalg::field::{Extension, Field, FieldSpec};
use crate::exactalg::gcd::{gcd, squarefree_test};
use crate::exactalg::groebner::{Ideal, Length};
use crate::exactalg::parse::parse_poly;
use crate::exactalg::points::{closed_points, ClosedPoint};
use crate::exactalg::poly::{Poly, T, X, Y, Z};
use crate::exactalg::scheme::{length_at_point, local_germ, projective_length};
use crate::exactalg::AlgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
    #[error("polynomial {0} is not a nonzero form in x, y, z")]
    NotAForm(String),
    #[error("the curve has degree zero")]
    ZeroDegree,
    #[error("the equation is not squarefree")]
    NotSquarefree,
    #[error("the product of the declared factors is not the equation")]
    FactorMismatch,
    #[error("declared factors {0} and {1} are not coprime")]
    FactorsNotCoprime(usize, usize),
    #[error("component count {0} is smaller than the number of declared factors")]
    BadComponentCount(u32),
    #[error("a singular point is not rational over the base field")]
    NonRationalPoint,
    #[error("Milnor numbers are only defined in characteristic zero")]
    PositiveCharacteristic,
    #[error("the curves share a component through the point")]
    CommonComponent,
}

/// Curve as stored in JSON input files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub field: FieldSpec,
    pub polynomial: String,
    pub factors: Vec<String>,
    pub components: u32,
}

/// A reduced plane curve `u = 0` with its declared factorization.
#[derive(Clone, Debug)]
pub struct CurveSpec<F: Field> {
    pub field: F,
    pub u: Poly<F>,
    pub factors: Vec<Poly<F>>,
    pub components: u32,
}

fn check_form<F: Field>(p: &Poly<F>) -> Result<(), CurveError> {
    if p.is_zero() || !p.is_homogeneous() || p.uses_var(T) {
        return Err(CurveError::NotAForm(p.to_string()));
    }
    Ok(())
}

impl<F: Field> CurveSpec<F> {
    pub fn new(field: &F, u: Poly<F>, factors: Vec<Poly<F>>, components: u32) -> Result<Self, CurveError> {
        check_form(&u)?;
        if u.total_degree() == Some(0) {
            return Err(CurveError::ZeroDegree);
        }
        for f in &factors {
            check_form(f)?;
        }
        let product = factors.iter().fold(Poly::one(field), |acc, f| acc.mul(f));
        let ratio = product.div_exact(&u);
        if factors.is_empty() || !ratio.is_some_and(|r| r.is_constant()) {
            return Err(CurveError::FactorMismatch);
        }
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                if !gcd(&factors[i], &factors[j]).is_constant() {
                    return Err(CurveError::FactorsNotCoprime(i, j));
                }
            }
        }
        if !squarefree_test(&u) {
            return Err(CurveError::NotSquarefree);
        }
        if (components as usize) < factors.len() {
            return Err(CurveError::BadComponentCount(components));
        }
        Ok(CurveSpec { field: field.clone(), u, factors, components })
    }

    pub fn from_file(field: &F, file: &CurveFile) -> Result<Self, CurveError> {
        let u = parse_poly(field, &file.polynomial)?;
        let factors = file.factors.iter().map(|f| parse_poly(field, f)).collect::<Result<Vec<_>, _>>()?;
        Self::new(field, u, factors, file.components)
    }

    /// A curve given by a single absolutely irreducible equation.
    pub fn irreducible(field: &F, u: Poly<F>) -> Result<Self, CurveError> {
        Self::new(field, u.clone(), vec![u], 1)
    }

    pub fn degree(&self) -> u32 {
        self.u.total_degree().unwrap()
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    /// `u` together with its three partial derivatives.
    pub fn jacobian_generators(&self) -> Vec<Poly<F>> {
        vec![self.u.clone(), self.u.derivative(X), self.u.derivative(Y), self.u.derivative(Z)]
    }
}

pub fn arithmetic_genus(d: u32) -> i64 {
    let d = d as i64;
    (d - 1) * (d - 2) / 2
}

/// Clebsch's formula `p_g = p_a − δ + r − 1`.
pub fn geometric_genus(p_a: i64, delta_total: u64, r: u32) -> i64 {
    p_a - delta_total as i64 + r as i64 - 1
}

/// Total Tjurina number over the algebraic closure.
pub fn tjurina_total<F: Field>(curve: &CurveSpec<F>) -> u64 {
    projective_length(&curve.field, &curve.jacobian_generators()).finite().expect("a reduced curve has isolated singularities")
}

/// Data at one singular point, computed over the extension in which its
/// coordinates live.
#[derive(Clone, Debug)]
pub struct PointAnalysis<F: Field> {
    pub point: ClosedPoint<F>,
    pub label: String,
    pub germ: Poly<F>,
    pub tau: u64,
    pub mu: Option<u64>,
    pub tree: ResolutionTree<F>,
}

/// Singular points, local invariants and resolution trees of a curve.
#[derive(Clone, Debug)]
pub struct Analysis<F: Field> {
    pub ext: Extension<F>,
    pub tau_total: u64,
    pub points: Vec<PointAnalysis<F>>,
    /// False when some singular point is not rational (rational base only).
    pub complete: bool,
}

/// Locate the singular points and resolve each of them. Over a finite field
/// the coefficient field is extended until every point and every infinitely
/// near point is rational.
pub fn analyze<F: Field>(curve: &CurveSpec<F>) -> Result<Analysis<F>, CurveError> {
    let tau_total = tjurina_total(curve);
    let locus = closed_points(&curve.field, &curve.jacobian_generators())?;
    let complete = locus.complete;
    let mut ext = locus.ext;
    let mut coords: Vec<ClosedPoint<F>> = locus.points;
    'restart: loop {
        let big = ext.field.clone();
        let u = curve.u.embed(&ext);
        let mut trees = Vec::with_capacity(coords.len());
        for pt in &coords {
            let germ = local_germ(&u, &pt.coords);
            let (step, tree) = resolve_germ(&germ, "")?;
            if step.degree > 1 {
                for p in coords.iter_mut() {
                    p.coords = p.coords.clone().map(|c| step.embed(&c));
                }
                ext = ext.compose(&step);
                continue 'restart;
            }
            trees.push((germ, tree));
        }
        let d = curve.degree() as u64;
        let mut points = Vec::with_capacity(coords.len());
        for (pt, (germ, mut tree)) in coords.iter().zip(trees) {
            let label = pt.format(&big);
            tree.base_point = label.clone();
            tree.nodes[0].center = label.clone();
            let tau = local_tjurina(&big, &germ, tau_total);
            let mu = (curve.characteristic() == 0).then(|| local_milnor(&big, &germ, (d - 1) * (d - 1)));
            points.push(PointAnalysis { point: pt.clone(), label, germ, tau, mu, tree });
        }
        return Ok(Analysis { ext, tau_total, points, complete });
    }
}

fn local_tjurina<F: Field>(field: &F, germ: &Poly<F>, cap: u64) -> u64 {
    let ideal = Ideal::new(2, vec![germ.clone(), germ.derivative(0), germ.derivative(1)]);
    ideal.local_length(field, &[0, 1], Some(cap)).finite().expect("Tjurina number of an isolated singularity")
}

fn local_milnor<F: Field>(field: &F, germ: &Poly<F>, cap: u64) -> u64 {
    let ideal = Ideal::new(2, vec![germ.derivative(0), germ.derivative(1)]);
    ideal.local_length(field, &[0, 1], Some(cap)).finite().expect("Milnor number in characteristic zero")
}

/// Per-point Milnor numbers and their total; characteristic zero only.
pub fn milnor<F: Field>(analysis: &Analysis<F>, curve: &CurveSpec<F>) -> Result<(Option<u64>, Vec<u64>), CurveError> {
    if curve.characteristic() != 0 {
        return Err(CurveError::PositiveCharacteristic);
    }
    let per_point: Vec<u64> = analysis.points.iter().map(|p| p.mu.unwrap()).collect();
    let total = analysis.complete.then(|| {
        analysis.points.iter().map(|p| p.point.residue_degree as u64 * p.mu.unwrap()).sum()
    });
    Ok((total, per_point))
}

/// Local intersection number of two forms at a point (coordinates in the
/// field of the forms).
pub fn local_intersection<F: Field>(a: &Poly<F>, b: &Poly<F>, point: &[F::Elem; 3]) -> Result<u64, CurveError> {
    let field = a.field();
    let g = gcd(a, b);
    if !g.is_constant() {
        let pt = [point[0].clone(), point[1].clone(), point[2].clone(), field.zero()];
        if field.is_zero(&g.eval(&pt)) {
            return Err(CurveError::CommonComponent);
        }
    }
    let cap = a.total_degree().unwrap_or(0) as u64 * b.total_degree().unwrap_or(0) as u64;
    Ok(length_at_point(field, &[a.clone(), b.clone()], point, Some(cap))
        .finite()
        .expect("coprime germs meet in finite length"))
}

/// Intersection points of two coprime forms with their local numbers.
#[derive(Clone, Debug)]
pub struct IntersectionTable<F: Field> {
    pub ext: Extension<F>,
    pub points: Vec<(ClosedPoint<F>, u64)>,
    pub complete: bool,
}

impl<F: Field> IntersectionTable<F> {
    /// `Σ (residue degree) · (local number)`.
    pub fn total(&self) -> u64 {
        self.points.iter().map(|(p, n)| p.residue_degree as u64 * n).sum()
    }
}

pub fn intersection_table<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<IntersectionTable<F>, CurveError> {
    if !gcd(a, b).is_constant() {
        return Err(CurveError::CommonComponent);
    }
    let field = a.field();
    let ps = closed_points(field, &[a.clone(), b.clone()])?;
    let (ab, bb) = (a.embed(&ps.ext), b.embed(&ps.ext));
    let mut points = Vec::new();
    for p in ps.points {
        let n = local_intersection(&ab, &bb, &p.coords)?;
        points.push((p, n));
    }
    Ok(IntersectionTable { ext: ps.ext, points, complete: ps.complete })
}

/// Total intersection number computed without locating points.
pub fn intersection_total<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Length {
    projective_length(a.field(), &[a.clone(), b.clone()])
}

/// True iff the two curves meet transversally everywhere: no common point at
/// which their gradients are dependent.
pub fn transverse<F: Field>(a: &Poly<F>, b: &Poly<F>) -> bool {
    let ga = [a.derivative(X), a.derivative(Y), a.derivative(Z)];
    let gb = [b.derivative(X), b.derivative(Y), b.derivative(Z)];
    let mut gens = vec![a.clone(), b.clone()];
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        gens.push(ga[i].mul(&gb[j]).sub(&ga[j].mul(&gb[i])));
    }
    projective_length(a.field(), &gens) == Length::Finite(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointRecord {
    pub point: String,
    pub residue_degree: u32,
    pub tau: u64,
    pub delta: u64,
    pub r: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantRecord {
    pub d: u32,
    pub p_a: i64,
    pub tau_total: u64,
    pub mu_total: Option<u64>,
    pub delta_total: Option<u64>,
    pub r_geometric: u32,
    pub p_g: Option<i64>,
    pub complete: bool,
    pub points: Vec<PointRecord>,
}

pub fn invariant_record<F: Field>(curve: &CurveSpec<F>, analysis: &Analysis<F>) -> InvariantRecord {
    let d = curve.degree();
    let p_a = arithmetic_genus(d);
    let points: Vec<PointRecord> = analysis
        .points
        .iter()
        .map(|p| PointRecord {
            point: p.label.clone(),
            residue_degree: p.point.residue_degree,
            tau: p.tau,
            delta: p.tree.delta(),
            r: p.tree.r(),
            mu: p.mu,
        })
        .collect();
    let weighted = |f: &dyn Fn(&PointRecord) -> u64| points.iter().map(|p| p.residue_degree as u64 * f(p)).sum::<u64>();
    let delta_total = analysis.complete.then(|| weighted(&|p| p.delta));
    let mu_total = (analysis.complete && curve.characteristic() == 0).then(|| weighted(&|p| p.mu.unwrap()));
    InvariantRecord {
        d,
        p_a,
        tau_total: analysis.tau_total,
        mu_total,
        delta_total,
        r_geometric: curve.components,
        p_g: delta_total.map(|delta| geometric_genus(p_a, delta, curve.components)),
        complete: analysis.complete,
        points,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::{Gf, Rationals};

    fn curve(s: &str) -> CurveSpec<Rationals> {
        CurveSpec::irreducible(&Rationals, parse_poly(&Rationals, s).unwrap()).unwrap()
    }

    fn record(c: &CurveSpec<Rationals>) -> InvariantRecord {
        invariant_record(c, &analyze(c).unwrap())
    }

    #[test]
    fn genus_formula() {
        assert_eq!([1, 3, 4].map(arithmetic_genus), [0, 1, 3]);
        assert_eq!(geometric_genus(1, 0, 1), 1);
        assert_eq!(geometric_genus(1, 1, 1), 0);
        assert_eq!(geometric_genus(0, 1, 2), 0);
    }

    #[test]
    fn smooth_conic() {
        let r = record(&curve("x*z - y^2"));
        assert_eq!(r.tau_total, 0);
        assert!(r.points.is_empty());
        assert_eq!(r.p_g, Some(0));
    }

    #[test]
    fn cuspidal_cubic() {
        let r = record(&curve("y^2*z - x^3"));
        assert_eq!(r.tau_total, 2);
        assert_eq!(r.mu_total, Some(2));
        assert_eq!(r.delta_total, Some(1));
        assert_eq!(r.p_g, Some(0));
        assert_eq!(r.points.len(), 1);
        assert_eq!(r.points[0].point, "(0:0:1)");
        assert_eq!(r.points[0].residue_degree, 1);
    }

    #[test]
    fn nodal_cubic() {
        let r = record(&curve("y^2*z - x^3 - x^2*z"));
        assert_eq!((r.tau_total, r.mu_total, r.delta_total), (1, Some(1), Some(1)));
        assert_eq!(r.points[0].point, "(0:0:1)");
        assert_eq!(r.points[0].r, 2);
    }

    #[test]
    fn tacnode_milnor_number() {
        let u = parse_poly(&Rationals, "y^2*z^2 - x^4").unwrap();
        let f = [parse_poly(&Rationals, "y*z - x^2").unwrap(), parse_poly(&Rationals, "y*z + x^2").unwrap()];
        let c = CurveSpec::new(&Rationals, u, f.to_vec(), 2).unwrap();
        let r = record(&c);
        let origin = r.points.iter().find(|p| p.point == "(0:0:1)").unwrap();
        assert_eq!((origin.mu, origin.tau, origin.delta, origin.r), (Some(3), 3, 2, 2));
    }

    #[test]
    fn local_intersections() {
        let q = |s: &str| parse_poly(&Rationals, s).unwrap();
        let o = [Rationals.zero(), Rationals.zero(), Rationals.one()];
        assert_eq!(local_intersection(&q("y"), &q("x"), &o), Ok(1));
        assert_eq!(local_intersection(&q("y"), &q("y^2*z - x^3"), &o), Ok(3));
        assert_eq!(local_intersection(&q("y*z - x^2"), &q("y*z + x^2"), &o), Ok(2));
        assert_eq!(local_intersection(&q("x*y"), &q("x*z"), &o), Err(CurveError::CommonComponent));
        let t = intersection_table(&q("y"), &q("y^2*z - x^3")).unwrap();
        assert_eq!(t.total(), 3);
    }

    #[test]
    fn transversality() {
        let q = |s: &str| parse_poly(&Rationals, s).unwrap();
        assert!(transverse(&q("x*z - y^2"), &q("x + z")));
        assert!(!transverse(&q("x*z - y^2"), &q("x")));
    }

    #[test]
    fn validation() {
        let q = |s: &str| parse_poly(&Rationals, s).unwrap();
        assert_eq!(CurveSpec::irreducible(&Rationals, q("x^2*y")).unwrap_err(), CurveError::NotSquarefree);
        assert!(matches!(CurveSpec::irreducible(&Rationals, q("x^2 + y")), Err(CurveError::NotAForm(_))));
        assert_eq!(CurveSpec::new(&Rationals, q("x*y"), vec![q("x")], 1).unwrap_err(), CurveError::FactorMismatch);
        assert_eq!(
            CurveSpec::new(&Rationals, q("x*y"), vec![q("x"), q("y")], 1).unwrap_err(),
            CurveError::BadComponentCount(1)
        );
    }

    #[test]
    fn cusp_over_f2() {
        let f = Gf::prime(2).unwrap();
        let c = CurveSpec::irreducible(&f, parse_poly(&f, "y^2*z - x^3").unwrap()).unwrap();
        let a = analyze(&c).unwrap();
        assert_eq!(a.tau_total, 4);
        assert_eq!(a.points.len(), 1);
        assert_eq!(a.points[0].tau, 4);
    }
}
