//! Evaluation of the singularity and foliation bounds as exact checks.
//!
//! Every check compares two integers computed along separate code paths.
//! A check that fails is a bug in this crate, except for the regularity
//! lower bound, which rests on an imported result and is reported as an
//! external violation.

use serde::Serialize;
use thiserror::Error;

use crate::blowup::noether_pairing;
use crate::curve::{self, analyze, invariant_record, transverse, CurveError, CurveSpec, InvariantRecord};
use crate::exactalg::field::{Extension, Field};
use crate::exactalg::gcd::gcd;
use crate::exactalg::groebner::Length;
use crate::exactalg::mono::{Mono, MonomialOrder};
use crate::exactalg::poly::{Poly, X, Y, Z};
use crate::exactalg::scheme::{local_germ, projective_length, AffineModel};
use crate::foliation::{
    divisorial_reduction, hamilton_fields, intersection_generators, leaf_test, leaf_test_poly,
    min_annihilator_degree, singular_scheme, FoliationError, VectorField,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Foliation(#[from] FoliationError),
    #[error("the scheme is not finite")]
    NotFinite,
    #[error("the split factors do not multiply to the curve equation")]
    BadSplit,
    #[error("divisor {0} is not a nonzero form")]
    BadDivisor(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Equality,
    Violated,
    Skipped,
    ExternalViolation,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: Option<i64>,
    pub rhs: Option<i64>,
    pub relation: Relation,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
}

impl Check {
    pub fn compare(name: impl Into<String>, lhs: i64, relation: Relation, rhs: i64) -> Check {
        let verdict = match relation {
            Relation::Eq if lhs == rhs => Verdict::Equality,
            Relation::Le if lhs == rhs => Verdict::Equality,
            Relation::Le | Relation::Lt if lhs < rhs => Verdict::Holds,
            _ => Verdict::Violated,
        };
        Check { name: name.into(), lhs: Some(lhs), rhs: Some(rhs), relation, verdict, reason: None, detail: None }
    }

    /// A comparison whose failure is attributed to an imported result.
    pub fn external(name: impl Into<String>, lhs: i64, relation: Relation, rhs: i64) -> Check {
        let mut c = Check::compare(name, lhs, relation, rhs);
        if c.verdict == Verdict::Violated {
            c.verdict = Verdict::ExternalViolation;
        }
        c
    }

    pub fn skipped(name: impl Into<String>, relation: Relation, reason: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            lhs: None,
            rhs: None,
            relation,
            verdict: Verdict::Skipped,
            reason: Some(reason.into()),
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: serde_json::Value) -> Check {
        self.detail = Some(detail);
        self
    }

    pub fn passed(&self) -> bool {
        matches!(self.verdict, Verdict::Holds | Verdict::Equality)
    }
}

/// Quantities that depend on the foliation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoliationInvariants {
    pub vector_field: String,
    pub source: String,
    pub m: u32,
    pub leaf: bool,
    pub deg_s: Length,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deg_c_cap_s: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reg_c_cap_s: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinDegree {
    pub m: u32,
    pub witness: String,
    pub kernel_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub curve: String,
    pub polynomial: String,
    pub field: String,
    pub invariants: InvariantRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_degree: Option<MinDegree>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub foliation: Option<FoliationInvariants>,
    pub trees: Vec<serde_json::Value>,
    pub checks: Vec<Check>,
}

impl BoundReport {
    pub fn violations(&self) -> usize {
        self.checks.iter().filter(|c| c.verdict == Verdict::Violated).count()
    }

    pub fn external_violations(&self) -> usize {
        self.checks.iter().filter(|c| c.verdict == Verdict::ExternalViolation).count()
    }

    pub fn evaluated(&self) -> usize {
        self.checks.iter().filter(|c| c.verdict != Verdict::Skipped).count()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Require `(d−1)(d−m−1) < τ` when the annihilating field has a
    /// divisorial singular part.
    pub reduced_strict: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { reduced_strict: true }
    }
}

/// Everything a report is built from.
#[derive(Clone, Debug)]
pub struct ReportInput<F: Field> {
    pub id: String,
    pub field_label: String,
    pub curve: CurveSpec<F>,
    pub foliation: Option<VectorField<F>>,
    pub divisor: Option<Poly<F>>,
    pub split: Option<(Poly<F>, Poly<F>)>,
    pub options: Options,
}

/// Castelnuovo–Mumford regularity data of a finite scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Regularity {
    pub degree: u64,
    pub reg: u64,
    pub hilbert: Vec<u64>,
    /// Linear forms vanishing on the scheme.
    pub lines: Vec<String>,
}

/// A line `a x + b y + c z` missing the finite scheme, searched
/// deterministically; the field is extended when it is too small.
fn avoiding_line<F: Field>(field: &F, gens: &[Poly<F>], degree: u64) -> Option<[F::Elem; 3]> {
    let k = (degree + 1).min(field.size().unwrap_or(u64::MAX));
    let elems: Vec<F::Elem> = (0..k).map(|i| field.element(i)).collect();
    let mut candidates = Vec::new();
    for a in &elems {
        for b in &elems {
            candidates.push([a.clone(), b.clone(), field.one()]);
        }
    }
    for a in &elems {
        candidates.push([a.clone(), field.one(), field.zero()]);
    }
    candidates.push([field.one(), field.zero(), field.zero()]);
    candidates.into_iter().find(|l| {
        let mut all = gens.to_vec();
        all.push(linear_form(field, l));
        projective_length(field, &all) == Length::Finite(0)
    })
}

fn linear_form<F: Field>(field: &F, l: &[F::Elem; 3]) -> Poly<F> {
    Poly::from_terms(field, [X, Y, Z].iter().zip(l.iter()).map(|(&v, c)| (Mono::var(v, 1), c.clone())))
        .monic(MonomialOrder::DegRevLex)
}

/// Linear forms through a finite scheme, over the field they were found in.
pub struct Lines<F: Field> {
    pub ext: Extension<F>,
    pub forms: Vec<Poly<F>>,
}

/// Regularity of the finite scheme cut out by homogeneous generators:
/// the least `r ≥ 1` with `H(r − 1) = deg W`.
pub fn regularity<F: Field>(field: &F, gens: &[Poly<F>]) -> Result<(Regularity, Lines<F>), BoundsError> {
    let Length::Finite(degree) = projective_length(field, gens) else {
        return Err(BoundsError::NotFinite);
    };
    let mut ext = Extension::trivial(field);
    if degree == 0 {
        return Ok((Regularity { degree: 0, reg: 0, hilbert: vec![0], lines: Vec::new() }, Lines { ext, forms: Vec::new() }));
    }
    if let Some(q) = field.size() {
        let mut j = 1u32;
        while q.checked_pow(j).is_some_and(|s| s <= degree) {
            j += 1;
        }
        if j > 1 {
            ext = field.extend(j).map_err(CurveError::from)?;
        }
    }
    let big = &ext.field;
    let big_gens: Vec<Poly<F>> = gens.iter().map(|g| g.embed(&ext)).collect();
    let line = avoiding_line(big, &big_gens, degree).expect("more lines than points of the scheme");
    let model = AffineModel::new(big, &big_gens, line);
    let hilbert = model.hilbert_function().expect("finite scheme");
    let reg = (1..).find(|&r| hilbert[(r - 1) as usize] == degree).unwrap();
    let forms: Vec<Poly<F>> = model.linear_forms().iter().map(|l| linear_form(big, l)).collect();
    let lines = forms.iter().map(|f| f.to_string()).collect();
    Ok((Regularity { degree, reg, hilbert, lines }, Lines { ext, forms }))
}

/// Noether's formula and Bézout for two coprime forms.
pub fn noether_checks<F: Field>(a: &Poly<F>, c: &Poly<F>, tag: &str) -> Vec<Check> {
    let mut out = Vec::new();
    let table = match curve::intersection_table(a, c) {
        Ok(t) => t,
        Err(e) => {
            out.push(Check::skipped(format!("noether_formula{tag}"), Relation::Eq, e.to_string()));
            out.push(Check::skipped(format!("bezout{tag}"), Relation::Eq, e.to_string()));
            return out;
        }
    };
    let big = &table.ext.field;
    let (ab, cb) = (a.embed(&table.ext), c.embed(&table.ext));
    for (p, n) in &table.points {
        let label = p.format(big);
        let name = format!("noether_formula{tag}@{label}");
        match noether_pairing(&local_germ(&ab, &p.coords), &local_germ(&cb, &p.coords)) {
            Ok(v) => out.push(Check::compare(name, v as i64, Relation::Eq, *n as i64)),
            Err(e) => out.push(Check::skipped(name, Relation::Eq, e.to_string())),
        }
    }
    let product = a.total_degree().unwrap() as i64 * c.total_degree().unwrap() as i64;
    if table.complete {
        out.push(Check::compare(format!("bezout{tag}"), table.total() as i64, Relation::Eq, product));
    } else {
        out.push(Check::skipped(format!("bezout{tag}"), Relation::Eq, "intersection points are not all rational"));
    }
    out
}

fn tjurina_of<F: Field>(u: &Poly<F>) -> u64 {
    let gens = vec![u.clone(), u.derivative(X), u.derivative(Y), u.derivative(Z)];
    projective_length(u.field(), &gens).finite().expect("reduced forms have finite Tjurina schemes")
}

/// `τ(A) + τ(B) + ab ≤ τ(A ∪ B)`, with equality for transverse unions.
pub fn union_check<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Result<Vec<Check>, BoundsError> {
    if !gcd(a, b).is_constant() {
        return Err(CurveError::CommonComponent.into());
    }
    let c = a.mul(b);
    let lhs = tjurina_of(a) + tjurina_of(b) + (a.total_degree().unwrap() * b.total_degree().unwrap()) as u64;
    let tau = tjurina_of(&c);
    let transverse = transverse(a, b);
    let relation = if transverse { Relation::Eq } else { Relation::Le };
    Ok(vec![Check::compare("union_bound", lhs as i64, relation, tau as i64)
        .with_detail(serde_json::json!({ "transverse": transverse }))])
}

/// Bounds in terms of the least annihilating degree.
pub fn least_degree_checks<F: Field>(curve: &CurveSpec<F>, tau: u64, witness: &VectorField<F>, strict: bool) -> Vec<Check> {
    let d = curve.degree() as i64;
    let m = witness.m as i64;
    let mut out = Vec::new();
    let lower = (d - 1) * (d - m - 1);
    let tau = tau as i64;
    out.push(Check::compare("least_degree_lower", lower, Relation::Le, tau));
    let s = singular_scheme(witness);
    if s.is_finite() {
        out.push(Check::compare("least_degree_upper", tau, Relation::Le, lower + m * m));
        return out;
    }
    out.push(Check::skipped("least_degree_upper", Relation::Le, "the annihilating field has infinitely many singularities on the curve"));
    let red = divisorial_reduction(witness, Some(&curve.u)).expect("infinite S has a divisorial part");
    out.push(Check::compare("least_degree_divisor_in_curve", red.w_divides_curve.unwrap() as i64, Relation::Eq, 1));
    out.push(Check::compare("least_degree_divisor_reduced", red.w_squarefree as i64, Relation::Eq, 1));
    out.push(Check::compare("least_degree_reduced_finite", red.reduced_finite as i64, Relation::Eq, 1));
    let Some(a_poly) = curve.u.div_exact(&red.w) else { return out };
    let b = red.w.total_degree().unwrap() as i64;
    let a = d - b;
    let reduced_lower = (a - 1) * (a - (m - b) - 1);
    let tau_a = tjurina_of(&a_poly) as i64;
    let detail = serde_json::json!({ "w": red.w.to_string(), "reduced_field": red.reduced.format(), "a": a, "b": b });
    out.push(Check::compare("least_degree_reduced_lower", reduced_lower, Relation::Le, tau_a).with_detail(detail));
    out.push(Check::compare("least_degree_reduced_union", reduced_lower + a * b, Relation::Le, tau));
    if strict {
        out.push(Check::compare("reduced_strict", lower, Relation::Lt, tau));
    }
    out
}

/// Checks that need a foliation having the curve as a leaf.
fn leaf_checks<F: Field>(
    input: &ReportInput<F>,
    fol: &VectorField<F>,
    rec: &InvariantRecord,
    leaf_sum: Option<i64>,
    divisor_check: Option<Check>,
    fi: &mut FoliationInvariants,
    out: &mut Vec<Check>,
) {
    let curve = &input.curve;
    let field = &curve.field;
    let d = curve.degree() as i64;
    let m = fol.m as i64;
    let p_a = rec.p_a;
    let tau = rec.tau_total as i64;
    let p = curve.characteristic();
    let char_divides = p != 0 && d as u64 % p == 0;

    let cap = projective_length(field, &intersection_generators(&curve.u, fol)).finite().expect("leaf");
    fi.deg_c_cap_s = Some(cap);
    let cap = cap as i64;
    let lhs = 2 * p_a - 2 - d * (m - 1);
    out.push(Check::compare("leaf_identity", lhs, Relation::Eq, tau - cap));
    match leaf_sum {
        Some(v) => out.push(Check::compare("leaf_multiplicity_sum", lhs, Relation::Le, v)),
        None => out.push(Check::skipped("leaf_multiplicity_sum", Relation::Le, "singular points are not all rational")),
    }
    if let Some(c) = divisor_check {
        out.push(c);
    }

    let (reg, lines) = regularity(field, &intersection_generators(&curve.u, fol)).expect("finite");
    fi.reg_c_cap_s = Some(reg.reg);
    out.push(Check::compare("regularity_at_most_degree", reg.reg as i64, Relation::Le, reg.degree as i64));

    if char_divides {
        let reason = "the characteristic divides the degree";
        out.push(Check::skipped("leaf_tjurina_lower", Relation::Le, reason));
        out.push(Check::skipped("external_regularity_lower", Relation::Le, reason));
    } else {
        out.push(Check::external("external_regularity_lower", m + 1, Relation::Le, reg.reg as i64));
        let bound = 2 * p_a - (d - 1) * (m - 1);
        let lower = Check::compare("leaf_tjurina_lower", bound, Relation::Le, tau);
        let equal = lower.verdict == Verdict::Equality;
        out.push(lower);
        if equal {
            out.push(Check::compare("equality_degree", cap, Relation::Eq, m + 1));
            out.push(Check::compare("equality_regularity", reg.reg as i64, Relation::Eq, m + 1));
            match lines.forms.first() {
                Some(line) => {
                    let comps = fol.components.clone().map(|c| c.embed(&lines.ext));
                    let big_fol = VectorField::new(&lines.ext.field, comps).expect("embedding preserves the foliation");
                    let in_s = big_fol.minors().iter().all(|mi| line.divides(mi));
                    let leaf = leaf_test_poly(line, &big_fol).is_leaf();
                    let detail = serde_json::json!({ "line": line.to_string(), "line_in_s": in_s, "line_is_leaf": leaf });
                    out.push(Check::compare("equality_line", (in_s || leaf) as i64, Relation::Eq, 1).with_detail(detail));
                }
                None => out.push(Check::compare("equality_line", 0, Relation::Eq, 1)),
            }
        }
    }

    let s = singular_scheme(fol);
    fi.deg_s = s.degree;
    match s.degree {
        Length::Finite(deg_s) => {
            out.push(Check::compare("singular_scheme_degree", deg_s as i64, Relation::Eq, 1 + m + m * m));
            out.push(Check::compare("leaf_tjurina_upper", tau, Relation::Le, 2 * p_a - (d - 1) * (m - 1) + m * m));
        }
        Length::Infinite => {
            out.push(Check::skipped("singular_scheme_degree", Relation::Eq, "singular scheme is infinite"));
            out.push(Check::skipped("leaf_tjurina_upper", Relation::Le, "singular scheme is infinite"));
        }
    }

    if p == 0 {
        match rec.p_g {
            Some(pg) => out.push(Check::compare("genus_bound", 2 * pg, Relation::Le, (m - 1) * (d - 1) + rec.r_geometric as i64 - 1)),
            None => out.push(Check::skipped("genus_bound", Relation::Le, "singular points are not all rational")),
        }
    }
}

/// Evaluate every applicable check.
pub fn build_report<F: Field>(input: &ReportInput<F>) -> Result<BoundReport, BoundsError> {
    let curve = &input.curve;
    let p = curve.characteristic();
    let d = curve.degree();
    let analysis = analyze(curve)?;
    let rec = invariant_record(curve, &analysis);
    let mut checks = Vec::new();

    if analysis.complete {
        let sum: u64 = rec.points.iter().map(|pt| pt.residue_degree as u64 * pt.tau).sum();
        checks.push(Check::compare("tjurina_point_sum", sum as i64, Relation::Eq, rec.tau_total as i64));
    } else {
        checks.push(Check::skipped("tjurina_point_sum", Relation::Eq, "singular points are not all rational"));
    }

    for (pt, pa) in rec.points.iter().zip(&analysis.points) {
        let at = |name: &str| format!("{name}@{}", pt.point);
        let tree = &pa.tree;
        let two_delta_r = 2 * pt.delta as i64 - pt.r as i64;
        checks.push(Check::compare(at("proximity_sum"), tree.proximity_sum(), Relation::Eq, two_delta_r));
        if p == 0 {
            let mu = pt.mu.unwrap() as i64;
            checks.push(Check::compare(at("milnor_jung"), mu, Relation::Eq, two_delta_r + 1));
            checks.push(Check::compare(at("local_tjurina_delta_bound"), pt.tau as i64, Relation::Le, two_delta_r + 1));
        }
        let cd = tree.char_data(p);
        checks.push(Check::compare(at("multiplicity_bound"), pt.tau as i64, Relation::Le, cd.multiplicity_bound));
        if let Some(b) = cd.branch_bound {
            let detail = serde_json::to_value(&cd.branches).unwrap();
            checks.push(Check::compare(at("charp_branch_bound"), pt.tau as i64, Relation::Le, b).with_detail(detail));
        }
    }

    if p == 0 {
        match rec.delta_total {
            Some(delta) => {
                let rhs = 2 * delta as i64 - rec.r_geometric as i64 + 1;
                checks.push(Check::compare("tjurina_delta_bound", rec.tau_total as i64, Relation::Le, rhs));
            }
            None => checks.push(Check::skipped("tjurina_delta_bound", Relation::Le, "singular points are not all rational")),
        }
    }

    let hamilton = hamilton_fields(&curve.u).iter().filter(|h| {
        let [f, g, k] = h;
        f.mul(&curve.u.derivative(X)).add(&g.mul(&curve.u.derivative(Y))).add(&k.mul(&curve.u.derivative(Z))).is_zero()
    }).count();
    checks.push(Check::compare("hamilton_annihilates", hamilton as i64, Relation::Eq, 3));

    let min_degree = match min_annihilator_degree(curve) {
        Ok(ann) => {
            checks.push(Check::compare("min_degree_at_most_d_minus_1", ann.m as i64, Relation::Le, d as i64 - 1));
            checks.extend(least_degree_checks(curve, rec.tau_total, &ann.witness, input.options.reduced_strict));
            Some(ann)
        }
        Err(FoliationError::CharDividesDegree { .. }) => {
            checks.push(Check::skipped("least_degree_lower", Relation::Le, "the characteristic divides the degree"));
            None
        }
        Err(e) => return Err(e.into()),
    };

    // leaf sum over singular points, weighted by residue degree
    let leaf_sum = analysis.complete.then(|| {
        analysis.points.iter().map(|pa| pa.point.residue_degree as i64 * pa.tree.leaf_weight_sum(p)).sum::<i64>()
    });

    let (fol, source) = match (&input.foliation, &min_degree) {
        (Some(f), _) => (Some(f.clone()), "input"),
        (None, Some(ann)) => (Some(ann.witness.clone()), "least-degree annihilating field"),
        (None, None) => (None, ""),
    };
    let mut foliation_inv = None;
    if let Some(fol) = fol {
        let lt = leaf_test(curve, &fol);
        let mut fi = FoliationInvariants {
            vector_field: fol.format(),
            source: source.to_string(),
            m: fol.m,
            leaf: lt.is_leaf(),
            deg_s: singular_scheme(&fol).degree,
            deg_c_cap_s: None,
            reg_c_cap_s: None,
        };
        if lt.is_leaf() {
            let divisor_check = input.divisor.as_ref().map(|a| divisor_check(input, &analysis, &fol, a, &rec));
            leaf_checks(input, &fol, &rec, leaf_sum, divisor_check, &mut fi, &mut checks);
        } else {
            checks.push(Check::skipped("leaf_identity", Relation::Eq, "the curve is not a leaf of the foliation"));
        }
        foliation_inv = Some(fi);
    }

    if let Some(a) = &input.divisor {
        if gcd(a, &curve.u).is_constant() {
            checks.extend(noether_checks(a, &curve.u, ""));
        }
    }
    if let Some((a, b)) = &input.split {
        checks.extend(union_check(a, b)?);
        checks.extend(noether_checks(a, b, "_split"));
    }

    let trees = analysis.points.iter().map(|pa| pa.tree.to_json()).collect();
    Ok(BoundReport {
        curve: input.id.clone(),
        polynomial: curve.u.to_string(),
        field: input.field_label.clone(),
        invariants: rec,
        min_degree: min_degree.map(|a| MinDegree { m: a.m, witness: a.witness.format(), kernel_dim: a.kernel_dim }),
        foliation: foliation_inv,
        trees,
        checks,
    })
}

/// `2p_a − 2 − d(m − 1) ≤ (A·C)` when `e(A,Q) ≥ ℓ(C,Q)` on every tree.
fn divisor_check<F: Field>(
    input: &ReportInput<F>,
    analysis: &curve::Analysis<F>,
    fol: &VectorField<F>,
    a: &Poly<F>,
    rec: &InvariantRecord,
) -> Check {
    let name = "leaf_divisor_intersection";
    let curve = &input.curve;
    if !gcd(a, &curve.u).is_constant() {
        return Check::skipped(name, Relation::Le, "the divisor shares a component with the curve");
    }
    if !analysis.complete {
        return Check::skipped(name, Relation::Le, "singular points are not all rational");
    }
    let p = curve.characteristic();
    let a_big = a.embed(&analysis.ext);
    for pa in &analysis.points {
        let ea = pa.tree.multiplicities_of(&local_germ(&a_big, &pa.point.coords));
        let ell = pa.tree.leaf_weights(p);
        if let Some(q) = (0..ea.len()).find(|&q| (ea[q] as i64) < ell[q]) {
            return Check::skipped(name, Relation::Le, format!("e(A,Q) < ℓ(C,Q) at node {q} over {}", pa.label));
        }
    }
    let d = curve.degree() as i64;
    let lhs = 2 * rec.p_a - 2 - d * (fol.m as i64 - 1);
    Check::compare(name, lhs, Relation::Le, a.total_degree().unwrap() as i64 * d)
        .with_detail(serde_json::json!({ "divisor": a.to_string() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::{Gf, Rationals};
    use crate::exactalg::parse::parse_poly;

    fn q(s: &str) -> Poly<Rationals> {
        parse_poly(&Rationals, s).unwrap()
    }

    fn input(u: &str, fol: Option<[&str; 3]>) -> ReportInput<Rationals> {
        ReportInput {
            id: "t".into(),
            field_label: "Q".into(),
            curve: CurveSpec::irreducible(&Rationals, q(u)).unwrap(),
            foliation: fol.map(|[f, g, h]| VectorField::new(&Rationals, [q(f), q(g), q(h)]).unwrap()),
            divisor: None,
            split: None,
            options: Options::default(),
        }
    }

    fn assert_clean(r: &BoundReport) {
        for c in &r.checks {
            assert!(matches!(c.verdict, Verdict::Holds | Verdict::Equality | Verdict::Skipped), "{c:?}");
        }
    }

    #[test]
    fn regularity_of_points() {
        let (r, _) = regularity(&Rationals, &[q("x"), q("y")]).unwrap();
        assert_eq!((r.degree, r.reg), (1, 1));
        let (r, _) = regularity(&Rationals, &[q("x"), q("y*(y - z)")]).unwrap();
        assert_eq!((r.degree, r.reg), (2, 2));
        let (r, lines) = regularity(&Rationals, &[q("x"), q("y*(y - z)*(y + z)")]).unwrap();
        assert_eq!((r.degree, r.reg), (3, 3));
        assert_eq!(lines.forms, [q("x")]);
        let (r, _) = regularity(&Rationals, &[q("x*y"), q("x*z"), q("y*z")]).unwrap();
        assert_eq!((r.degree, r.reg), (3, 2));
        // over F_2 the field is extended to find a line
        let f2 = Gf::prime(2).unwrap();
        let gens: Vec<Poly<Gf>> = ["x*y", "x*z", "y*z"].iter().map(|s| parse_poly(&f2, s).unwrap()).collect();
        assert_eq!(regularity(&f2, &gens).unwrap().0.reg, 2);
    }

    #[test]
    fn cuspidal_cubic_report() {
        let r = build_report(&input("y^2*z - x^3", Some(["0", "y", "-2*z"]))).unwrap();
        assert_clean(&r);
        let get = |n: &str| r.check(n).unwrap_or_else(|| panic!("missing {n}"));
        assert_eq!((get("leaf_identity").lhs, get("leaf_identity").rhs), (Some(0), Some(0)));
        assert_eq!(get("leaf_tjurina_lower").verdict, Verdict::Equality);
        assert_eq!(get("equality_line").detail.as_ref().unwrap()["line"], "x");
        assert_eq!(get("equality_line").detail.as_ref().unwrap()["line_is_leaf"], true);
        assert_eq!(get("genus_bound").verdict, Verdict::Equality);
        assert_eq!(get("least_degree_lower").verdict, Verdict::Equality);
        assert_eq!((get("least_degree_upper").lhs, get("least_degree_upper").rhs), (Some(2), Some(3)));
        let fi = r.foliation.as_ref().unwrap();
        assert_eq!((fi.deg_c_cap_s, fi.reg_c_cap_s, fi.deg_s), (Some(2), Some(2), Length::Finite(3)));
    }

    #[test]
    fn conic_report() {
        let r = build_report(&input("x*z - y^2", Some(["0", "x", "2*y"]))).unwrap();
        assert_clean(&r);
        let id = r.check("leaf_identity").unwrap();
        assert_eq!((id.lhs, id.rhs), (Some(-2), Some(-2)));
        assert_eq!(r.check("leaf_tjurina_lower").unwrap().verdict, Verdict::Equality);
    }

    #[test]
    fn nodal_cubic_report() {
        let r = build_report(&input("y^2*z - x^3 - x^2*z", None)).unwrap();
        assert_clean(&r);
        assert_eq!(r.min_degree.as_ref().unwrap().m, 2);
        let lo = r.check("least_degree_lower").unwrap();
        let hi = r.check("least_degree_upper").unwrap();
        assert_eq!((lo.lhs, lo.rhs, hi.rhs), (Some(0), Some(1), Some(4)));
    }

    #[test]
    fn divisorial_witness_path() {
        let c = CurveSpec::new(&Rationals, q("x*y*z"), vec![q("x"), q("y"), q("z")], 3).unwrap();
        let w = VectorField::new(&Rationals, [q("x"), q("y"), q("-2*z")]).unwrap();
        let checks = least_degree_checks(&c, 3, &w, true);
        for ch in &checks {
            assert!(ch.passed() || ch.verdict == Verdict::Skipped, "{ch:?}");
        }
        let red = checks.iter().find(|c| c.name == "least_degree_reduced_lower").unwrap();
        assert_eq!((red.lhs, red.rhs), (Some(1), Some(1)));
        assert_eq!(checks.iter().find(|c| c.name == "reduced_strict").unwrap().verdict, Verdict::Holds);
    }

    #[test]
    fn unions() {
        let c = union_check(&q("x"), &q("y")).unwrap();
        assert_eq!((c[0].lhs, c[0].rhs, c[0].verdict), (Some(1), Some(1), Verdict::Equality));
        let c = union_check(&q("x*z - y^2"), &q("x + z")).unwrap();
        assert_eq!((c[0].lhs, c[0].rhs, c[0].verdict), (Some(2), Some(2), Verdict::Equality));
        let c = union_check(&q("x*z - y^2"), &q("x")).unwrap();
        assert_eq!((c[0].lhs, c[0].rhs, c[0].verdict), (Some(2), Some(3), Verdict::Holds));
    }

    #[test]
    fn noether_on_line_and_cusp() {
        let checks = noether_checks(&q("y"), &q("y^2*z - x^3"), "");
        assert_eq!(checks[0].name, "noether_formula@(0:0:1)");
        assert_eq!((checks[0].lhs, checks[0].rhs), (Some(3), Some(3)));
        assert_eq!(checks.last().unwrap().verdict, Verdict::Equality);
    }
}
