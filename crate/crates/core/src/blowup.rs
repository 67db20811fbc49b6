//! Embedded resolution of plane curve germs by point blowups.
//!
//! A germ is a polynomial in the first two variable slots vanishing at the
//! origin. Blowing up uses the charts `(s, t) ↦ (s, s·t)` (followed by a
//! translation of `t`) and `(s, t) ↦ (s·t, t)`. Exceptional curves are
//! carried along as local equations, so proximity is a vanishing test.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::exactalg::field::{Extension, Field};
use crate::exactalg::mono::Mono;
use crate::exactalg::poly::Poly;
use crate::exactalg::UPoly;

/// Safety bound on the number of infinitely near points explored per germ.
const MAX_NODES: usize = 1024;
/// Safety bound on the number of shared points followed by the pairing.
const MAX_SHARED: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlowupError {
    #[error("an infinitely near point is not rational over the base field")]
    NonSplitPoint,
    #[error("the curves share a component through the point")]
    CommonComponent,
    #[error("resolution did not terminate within {MAX_NODES} points")]
    Diverged,
}

/// Raised during construction when a direction needs a field extension.
#[derive(Debug)]
enum Stop {
    NeedsExtension(Option<u32>),
    Diverged,
}

/// How a node is reached from its parent.
#[derive(Clone, Debug)]
enum Step<E> {
    /// `(s, t) ↦ (s, s·t)`, then `t ↦ t + shift`.
    Slope(E),
    /// `(s, t) ↦ (s·t, t)`.
    Vertical,
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeNode {
    pub id: usize,
    pub parent: Option<usize>,
    /// Chart coordinates of the center.
    pub center: String,
    pub e: u32,
    pub prox: Vec<usize>,
    pub i: u32,
    pub eps: u8,
    #[serde(skip)]
    pub children: Vec<usize>,
    #[serde(skip)]
    pub terminal: bool,
    /// Multiplicity of each branch through the node, keyed by branch id.
    pub branches: BTreeMap<usize, u32>,
}

/// The tree of infinitely near points of a germ, expanded until every leaf
/// is a simple point lying on one exceptional curve, transversally.
#[derive(Clone, Debug)]
pub struct ResolutionTree<F: Field> {
    pub field: F,
    pub base_point: String,
    pub nodes: Vec<TreeNode>,
    steps: Vec<Option<Step<F::Elem>>>,
}

/// Per-branch data in positive characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchCharData {
    pub branch: usize,
    /// First point on the branch whose branch multiplicity is prime to `p`.
    pub q_gamma: usize,
    pub v: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharData {
    pub p: u64,
    pub eps: Vec<u8>,
    pub branches: Vec<BranchCharData>,
    /// `2δ − r + Σ v`; only for `p > 0`.
    pub branch_bound: Option<i64>,
    /// `Σ e(e−2+i+ε)` for `p > 0`, `1 + Σ e(e−2+i)` for `p = 0`.
    pub multiplicity_bound: i64,
}

fn divide_by_var_power<F: Field>(p: &Poly<F>, var: usize, e: u32) -> Poly<F> {
    let mut out = Poly::zero(p.field());
    for (m, c) in p.terms() {
        let mut exps = m.exps();
        assert!(exps[var] >= e, "strict transform division is exact");
        exps[var] -= e;
        out.add_term(Mono::from_exps(exps), c.clone());
    }
    out
}

/// Strict transform of `g` (of order `ord` at the origin) through one step.
fn transform<F: Field>(g: &Poly<F>, ord: u32, step: &Step<F::Elem>) -> Poly<F> {
    let field = g.field();
    let mut imgs = Poly::identity_images(field);
    match step {
        Step::Slope(shift) => {
            imgs[1] = Poly::var(field, 0).mul(&Poly::var(field, 1));
            let total = g.substitute(&imgs);
            let strict = divide_by_var_power(&total, 0, ord);
            let mut tr = Poly::identity_images(field);
            tr[1] = Poly::var(field, 1).add(&Poly::constant(field, shift.clone()));
            strict.substitute(&tr)
        }
        Step::Vertical => {
            imgs[0] = Poly::var(field, 0).mul(&Poly::var(field, 1));
            let total = g.substitute(&imgs);
            divide_by_var_power(&total, 1, ord)
        }
    }
}

fn order<F: Field>(g: &Poly<F>) -> u32 {
    g.order().unwrap_or(u32::MAX)
}

fn vanishes_at_origin<F: Field>(g: &Poly<F>) -> bool {
    g.coeff(Mono::ONE) == g.field().zero()
}

/// Directions of the tangent cone of `g` (order `e`) as blowup steps.
fn directions<F: Field>(g: &Poly<F>, e: u32) -> Result<Vec<Step<F::Elem>>, Stop> {
    let field = g.field();
    let cone = g.homogeneous_part(e);
    let slopes = cone.dehomogenize(0).to_univariate(1).expect("two-variable germ");
    let vertical = field.is_zero(&cone.coeff(Mono::var(1, e)));
    let mut steps = split_roots(&slopes)?.into_iter().map(Step::Slope).collect::<Vec<_>>();
    if vertical {
        steps.push(Step::Vertical);
    }
    Ok(steps)
}

/// Roots of a univariate polynomial, or the extension degree needed.
fn split_roots<F: Field>(u: &UPoly<F>) -> Result<Vec<F::Elem>, Stop> {
    let field = u.field();
    let roots = field.roots(u);
    let rad_deg = u.radical().degree().unwrap_or(0);
    if roots.len() < rad_deg {
        return Err(Stop::NeedsExtension(field.split_degree(u)));
    }
    Ok(roots)
}

fn transverse<F: Field>(g: &Poly<F>, h: &Poly<F>) -> bool {
    let f = g.field();
    let (a, b) = (g.coeff(Mono::var(0, 1)), g.coeff(Mono::var(1, 1)));
    let (c, d) = (h.coeff(Mono::var(0, 1)), h.coeff(Mono::var(1, 1)));
    !f.is_zero(&f.sub(&f.mul(&a, &d), &f.mul(&b, &c)))
}

fn describe_step<F: Field>(field: &F, step: &Step<F::Elem>) -> String {
    match step {
        Step::Slope(t) => format!("t={}", field.format(t)),
        Step::Vertical => "s=0".to_string(),
    }
}

struct Builder<F: Field> {
    field: F,
    nodes: Vec<TreeNode>,
    steps: Vec<Option<Step<F::Elem>>>,
}

impl<F: Field> Builder<F> {
    fn visit(
        &mut self,
        parent: Option<usize>,
        center: String,
        step: Option<Step<F::Elem>>,
        g: Poly<F>,
        exc: Vec<(usize, Poly<F>)>,
    ) -> Result<usize, Stop> {
        if self.nodes.len() >= MAX_NODES {
            return Err(Stop::Diverged);
        }
        let e = order(&g);
        let id = self.nodes.len();
        let prox: Vec<usize> = exc.iter().map(|(a, _)| *a).collect();
        let terminal = parent.is_some() && e == 1 && exc.len() == 1 && transverse(&g, &exc[0].1);
        self.nodes.push(TreeNode {
            id,
            parent,
            center,
            e,
            i: prox.len() as u32,
            prox,
            eps: 0,
            children: Vec::new(),
            terminal,
            branches: BTreeMap::new(),
        });
        self.steps.push(step);
        if terminal {
            return Ok(id);
        }
        for dir in directions(&g, e)? {
            let child_g = transform(&g, e, &dir);
            let mut child_exc: Vec<(usize, Poly<F>)> = exc
                .iter()
                .map(|(a, h)| (*a, transform(h, order(h), &dir)))
                .filter(|(_, h)| vanishes_at_origin(h))
                .collect();
            let new_e = match dir {
                Step::Slope(_) => Poly::var(&self.field, 0),
                Step::Vertical => Poly::var(&self.field, 1),
            };
            child_exc.push((id, new_e));
            child_exc.sort_by_key(|(a, _)| *a);
            let label = describe_step(&self.field, &dir);
            let child = self.visit(Some(id), label, Some(dir), child_g, child_exc)?;
            self.nodes[id].children.push(child);
        }
        Ok(id)
    }
}

fn build<F: Field>(field: &F, germ: &Poly<F>, base_point: &str) -> Result<ResolutionTree<F>, Stop> {
    assert!(vanishes_at_origin(germ) && !germ.is_zero(), "germ must pass through the origin");
    let mut b = Builder { field: field.clone(), nodes: Vec::new(), steps: Vec::new() };
    b.visit(None, base_point.to_string(), None, germ.clone(), Vec::new())?;
    let mut tree = ResolutionTree { field: field.clone(), base_point: base_point.to_string(), nodes: b.nodes, steps: b.steps };
    tree.finish();
    Ok(tree)
}

/// Resolve a germ, extending the field when an infinitely near point needs
/// it. Returns the extension of the germ's field that was used.
pub fn resolve_germ<F: Field>(
    germ: &Poly<F>,
    base_point: &str,
) -> Result<(Extension<F>, ResolutionTree<F>), BlowupError> {
    let mut ext = Extension::trivial(germ.field());
    let mut germ = germ.clone();
    loop {
        match build(&ext.field, &germ, base_point) {
            Ok(tree) => return Ok((ext, tree)),
            Err(Stop::Diverged) => return Err(BlowupError::Diverged),
            Err(Stop::NeedsExtension(None)) => return Err(BlowupError::NonSplitPoint),
            Err(Stop::NeedsExtension(Some(j))) => {
                let next = ext.field.extend(j).map_err(|_| BlowupError::NonSplitPoint)?;
                germ = germ.embed(&next);
                ext = ext.compose(&next);
            }
        }
    }
}

impl<F: Field> ResolutionTree<F> {
    /// Fill in ε flags and branch multiplicities and check the proximity
    /// equalities.
    fn finish(&mut self) {
        for id in 0..self.nodes.len() {
            let eps = match self.nodes[id].parent {
                Some(r) if self.nodes[r].e <= 1 => 0,
                _ => 1,
            };
            self.nodes[id].eps = eps;
        }
        let leaves = self.leaves();
        let branch_of_leaf: BTreeMap<usize, usize> = leaves.iter().enumerate().map(|(b, &l)| (l, b)).collect();
        // ids are assigned in preorder, so descendants have larger ids
        for id in (0..self.nodes.len()).rev() {
            if self.nodes[id].terminal {
                self.nodes[id].branches.insert(branch_of_leaf[&id], 1);
                continue;
            }
            let proximate: Vec<usize> =
                (id + 1..self.nodes.len()).filter(|&q| self.nodes[q].prox.contains(&id)).collect();
            let mut branches: BTreeMap<usize, u32> = BTreeMap::new();
            let mut total = 0;
            for &q in &proximate {
                total += self.nodes[q].e;
                for (&b, &m) in &self.nodes[q].branches {
                    *branches.entry(b).or_insert(0) += m;
                }
            }
            assert_eq!(total, self.nodes[id].e, "proximity equality at node {id}");
            assert_eq!(branches.values().sum::<u32>(), self.nodes[id].e, "branch multiplicities at node {id}");
            self.nodes[id].branches = branches;
        }
    }

    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn leaves(&self) -> Vec<usize> {
        self.nodes.iter().filter(|n| n.terminal).map(|n| n.id).collect()
    }

    pub fn r(&self) -> u32 {
        self.leaves().len() as u32
    }

    pub fn delta(&self) -> u64 {
        self.nodes.iter().map(|n| (n.e as u64) * (n.e as u64 - 1) / 2).sum()
    }

    /// `Σ e(e − 2 + i)` over all nodes.
    pub fn proximity_sum(&self) -> i64 {
        self.nodes.iter().map(|n| n.e as i64 * (n.e as i64 - 2 + n.i as i64)).sum()
    }

    fn path_to(&self, id: usize) -> Vec<usize> {
        let mut path = vec![id];
        let mut cur = id;
        while let Some(p) = self.nodes[cur].parent {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    pub fn char_data(&self, p: u64) -> CharData {
        let eps: Vec<u8> = self.nodes.iter().map(|n| n.eps).collect();
        let leaves = self.leaves();
        let mut branches = Vec::new();
        if p > 0 {
            for (b, &leaf) in leaves.iter().enumerate() {
                let path = self.path_to(leaf);
                let mut v = 0;
                let mut q_gamma = leaf;
                for &q in &path {
                    let m = self.nodes[q].branches[&b];
                    v += m;
                    if m as u64 % p != 0 {
                        q_gamma = q;
                        break;
                    }
                }
                branches.push(BranchCharData { branch: b, q_gamma, v });
            }
        }
        let base = 2 * self.delta() as i64 - self.r() as i64;
        let branch_bound = (p > 0).then(|| base + branches.iter().map(|b| b.v as i64).sum::<i64>());
        let multiplicity_bound = if p > 0 {
            self.nodes.iter().map(|n| n.e as i64 * (n.e as i64 - 2 + n.i as i64 + n.eps as i64)).sum()
        } else {
            1 + self.proximity_sum()
        };
        CharData { p, eps, branches, branch_bound, multiplicity_bound }
    }

    /// `e − 2 + i + ε` with ε dropped in characteristic zero.
    pub fn leaf_weights(&self, p: u64) -> Vec<i64> {
        self.nodes
            .iter()
            .map(|n| n.e as i64 - 2 + n.i as i64 + if p > 0 { n.eps as i64 } else { 0 })
            .collect()
    }

    /// `Σ e · ℓ` with the weights of [`Self::leaf_weights`].
    pub fn leaf_weight_sum(&self, p: u64) -> i64 {
        self.nodes.iter().zip(self.leaf_weights(p)).map(|(n, l)| n.e as i64 * l).sum()
    }

    /// Multiplicities at every node of the strict transforms of another germ
    /// carried along the same blowups.
    pub fn multiplicities_of(&self, other: &Poly<F>) -> Vec<u32> {
        let mut transforms: Vec<Poly<F>> = Vec::with_capacity(self.nodes.len());
        let mut out = Vec::with_capacity(self.nodes.len());
        for (id, node) in self.nodes.iter().enumerate() {
            let g = match (node.parent, &self.steps[id]) {
                (Some(p), Some(step)) => {
                    let pg: &Poly<F> = &transforms[p];
                    if out[p] == 0 {
                        Poly::one(&self.field)
                    } else {
                        transform(pg, out[p], step)
                    }
                }
                _ => other.clone(),
            };
            out.push(g.order().unwrap_or(0));
            transforms.push(g);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "base_point": self.base_point,
            "delta": self.delta(),
            "r": self.r(),
            "nodes": self.nodes,
        })
    }

    /// Indented text rendering, one node per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_node(0, 0, &mut out);
        out
    }

    fn render_node(&self, id: usize, depth: usize, out: &mut String) {
        let n = &self.nodes[id];
        let branches: Vec<String> = n.branches.iter().map(|(b, m)| format!("{b}:{m}")).collect();
        out.push_str(&format!(
            "{}[{}] {} e={} i={} prox={:?} eps={} branches={{{}}}\n",
            "  ".repeat(depth),
            n.id,
            n.center,
            n.e,
            n.i,
            n.prox,
            n.eps,
            branches.join(",")
        ));
        for &c in &n.children {
            self.render_node(c, depth + 1, out);
        }
    }
}

/// `Σ e(A,Q)·e(C,Q)` over the infinitely near points shared by two germs.
pub fn noether_pairing<F: Field>(a: &Poly<F>, c: &Poly<F>) -> Result<u64, BlowupError> {
    let mut ext = Extension::trivial(a.field());
    let (mut a, mut c) = (a.clone(), c.clone());
    loop {
        let mut budget = MAX_SHARED;
        match pair_rec(&a, &c, &mut budget) {
            Ok(v) => return Ok(v),
            Err(Stop::Diverged) => return Err(BlowupError::CommonComponent),
            Err(Stop::NeedsExtension(None)) => return Err(BlowupError::NonSplitPoint),
            Err(Stop::NeedsExtension(Some(j))) => {
                let next = ext.field.extend(j).map_err(|_| BlowupError::NonSplitPoint)?;
                a = a.embed(&next);
                c = c.embed(&next);
                ext = ext.compose(&next);
            }
        }
    }
}

fn pair_rec<F: Field>(a: &Poly<F>, c: &Poly<F>, budget: &mut usize) -> Result<u64, Stop> {
    if a.is_zero() || c.is_zero() {
        return Err(Stop::Diverged);
    }
    if !vanishes_at_origin(a) || !vanishes_at_origin(c) {
        return Ok(0);
    }
    if *budget == 0 {
        return Err(Stop::Diverged);
    }
    *budget -= 1;
    let (ea, ec) = (order(a), order(c));
    let mut total = ea as u64 * ec as u64;
    let cone_a = a.homogeneous_part(ea);
    let cone_c = c.homogeneous_part(ec);
    let slopes_a = cone_a.dehomogenize(0).to_univariate(1).unwrap();
    let slopes_c = cone_c.dehomogenize(0).to_univariate(1).unwrap();
    let common = slopes_a.gcd(&slopes_c);
    let mut dirs: Vec<Step<F::Elem>> = split_roots(&common)?.into_iter().map(Step::Slope).collect();
    let field = a.field();
    if field.is_zero(&cone_a.coeff(Mono::var(1, ea))) && field.is_zero(&cone_c.coeff(Mono::var(1, ec))) {
        dirs.push(Step::Vertical);
    }
    for d in dirs {
        total += pair_rec(&transform(a, ea, &d), &transform(c, ec, &d), budget)?;
    }
    Ok(total)
}
