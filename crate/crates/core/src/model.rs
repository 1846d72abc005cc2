//! The model hypersurface `v = P`, its infinitesimal automorphisms, scalings and flows.
//!
//! `P = (zz̄ + ½z²ζ̄ + ½z̄²ζ) / (1 − ζζ̄)` is a rational realization of the tube over the
//! light cone. It is homogeneous of weight 2, so each weighted piece of anything built
//! from it is an infinite series in `ζ, ζ̄`; everything here is computed on a [`Trunc`].
//!
//! Tangency convention: a holomorphic field `X = f∂_z + g∂_ζ + h∂_w` is tangent to the
//! model iff `Re(ih + 2fP_z + 2gP_ζ) = 0` on `w = u + iP`. With this sign all ten printed
//! basis fields have zero defect.

use malachite_q::Rational;

use crate::error::{Error, Result};
use crate::hypersurface::{pushforward, Hypersurface};
use crate::linalg::{sparse_row, Eliminator};
use crate::map::MapJet;
use crate::scalar::GaussQ;
use crate::series::{HolJet, Mono, Trunc, Var, WSeries};

/// `P` on the region `t`.
pub fn model_p(t: Trunc) -> WSeries {
    let t = t.effective();
    let top = t.zeta.max(0) as u32;
    let num = [
        (Mono::new(1, 0, 1, 0, 0), GaussQ::one()),
        (Mono::new(2, 0, 0, 1, 0), GaussQ::ratio(1, 2)),
        (Mono::new(0, 1, 2, 0, 0), GaussQ::ratio(1, 2)),
    ];
    let terms = (0..=top).flat_map(|j| num.iter().map(move |(m, c)| (*m + Mono::new(0, j, 0, j, 0), c.clone())));
    WSeries::from_terms(terms, t)
}

/// `∂P/∂v` on the region `t`, exact (computed from a larger expansion of `P`).
pub fn model_p_diff(v: Var, t: Trunc) -> WSeries {
    let (w, d) = v.weight_zdeg();
    let t = t.effective();
    let big = Trunc::with_caps(t.weight + w, t.zeta + d, t.degree + w + d);
    model_p(big).diff(v).with_trunc(t)
}

/// `u + iP` on `t`.
pub fn w_on_model(t: Trunc) -> WSeries {
    WSeries::var(Var::U, t).add(&model_p(t).scale(&GaussQ::i()))
}

/// `L(f, g, h) = Re(ih + 2fP_z + 2gP_ζ)|_{w = u + iP}`.
pub fn levi_l(f: &HolJet, g: &HolJet, h: &HolJet, t: Trunc) -> Result<WSeries> {
    let t = t.effective();
    let w = w_on_model(t);
    let pz = model_p_diff(Var::Z, t);
    let pzeta = model_p_diff(Var::Zeta, t);
    let two = GaussQ::from_int(2);
    let x = h
        .eval_w(&w)?
        .scale(&GaussQ::i())
        .add(&f.eval_w(&w)?.mul_poly(&pz, t).scale(&two))
        .add(&g.eval_w(&w)?.mul_poly(&pzeta, t).scale(&two));
    Ok(x.re())
}

/// A holomorphic vector field `f_z ∂_z + f_ζ ∂_ζ + f_w ∂_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub fz: HolJet,
    pub fzeta: HolJet,
    pub fw: HolJet,
    pub grade: Option<i32>,
}

fn hol(terms: &[((u32, u32, u32), GaussQ)]) -> HolJet {
    HolJet::from_terms(terms.iter().cloned(), Trunc::EXACT)
}

fn c(re: i64, im: i64) -> GaussQ {
    GaussQ::from_parts(re, 1, im, 1)
}

impl VectorField {
    pub fn new(fz: HolJet, fzeta: HolJet, fw: HolJet, grade: Option<i32>) -> Self {
        VectorField { fz, fzeta, fw, grade }
    }

    fn poly(fz: &[((u32, u32, u32), GaussQ)], fzeta: &[((u32, u32, u32), GaussQ)], fw: &[((u32, u32, u32), GaussQ)], grade: i32) -> Self {
        VectorField { fz: hol(fz), fzeta: hol(fzeta), fw: hol(fw), grade: Some(grade) }
    }

    pub fn is_zero(&self) -> bool {
        self.fz.is_zero() && self.fzeta.is_zero() && self.fw.is_zero()
    }

    pub fn truncate(&self, t: Trunc) -> VectorField {
        VectorField { fz: self.fz.truncate(t), fzeta: self.fzeta.truncate(t), fw: self.fw.truncate(t), grade: self.grade }
    }

    pub fn scale(&self, c: &GaussQ) -> VectorField {
        VectorField { fz: self.fz.scale(c), fzeta: self.fzeta.scale(c), fw: self.fw.scale(c), grade: self.grade }
    }

    pub fn add(&self, o: &VectorField) -> VectorField {
        VectorField {
            fz: self.fz.add(&o.fz),
            fzeta: self.fzeta.add(&o.fzeta),
            fw: self.fw.add(&o.fw),
            grade: if self.grade == o.grade { self.grade } else { None },
        }
    }

    pub fn components(&self) -> [&HolJet; 3] {
        [&self.fz, &self.fzeta, &self.fw]
    }

    /// True if every coefficient has the weight its grade demands.
    pub fn is_homogeneous(&self) -> bool {
        let Some(m) = self.grade else { return false };
        let ok = |j: &HolJet, w: i32| j.series().iter().all(|(mm, _)| mm.weight() as i32 == w);
        ok(&self.fz, m + 1) && ok(&self.fzeta, m) && ok(&self.fw, m + 2)
    }

    /// The derivation `X(F) = f_z F_z + f_ζ F_ζ + f_w F_w`. The coefficients of `X` are
    /// treated as polynomials known exactly.
    pub fn apply(&self, func: &HolJet, out: Trunc) -> HolJet {
        let mut acc = WSeries::zero(out);
        for (v, coef) in [(Var::Z, &self.fz), (Var::Zeta, &self.fzeta), (Var::U, &self.fw)] {
            let d = func.series().diff(v);
            acc = acc.add(&d.mul_poly(coef.series(), out));
        }
        HolJet::new(acc).expect("derivation of a holomorphic jet is holomorphic")
    }

    /// The time-`t` flow `exp(tX)` as a map, by the Lie series `Σ tⁿ/n! Xⁿ(x)`.
    ///
    /// Only fields of positive grade are accepted: each application raises the weighted
    /// degree, so the series terminates below the weight cap, and none lowers the
    /// standard degree, so truncating every term is exact.
    pub fn flow(&self, time: &GaussQ, t: Trunc) -> Result<MapJet> {
        match self.grade {
            Some(g) if g >= 1 => {}
            _ => return Err(Error::Validation("flows are only defined for fields of positive grade".into())),
        }
        let t = t.effective();
        let region = Trunc::with_caps(t.weight, t.degree, t.degree);
        let mut comps = Vec::new();
        for v in [Var::Z, Var::Zeta, Var::U] {
            let mut term = HolJet::var(v, Trunc::EXACT);
            let mut acc = term.truncate(region);
            for n in 1..=(t.weight.max(0) as i64 + 1) {
                term = self.apply(&term, Trunc::EXACT).with_trunc(region).scale(&time.scale(&Rational::from_signeds(1, n)));
                if term.is_zero() {
                    break;
                }
                acc = acc.add(&term);
            }
            comps.push(acc);
        }
        let w = comps.pop().unwrap();
        let zeta = comps.pop().unwrap();
        let z = comps.pop().unwrap();
        Ok(MapJet::from_components(z, zeta, w))
    }
}

/// Lie bracket `[X, Y]_c = Σ_v (X_v ∂_v Y_c − Y_v ∂_v X_c)`.
pub fn bracket(x: &VectorField, y: &VectorField) -> VectorField {
    let out = Trunc::EXACT;
    let comp = |i: usize| {
        x.apply(y.components()[i], out).sub(&y.apply(x.components()[i], out))
    };
    let grade = match (x.grade, y.grade) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    VectorField { fz: comp(0), fzeta: comp(1), fw: comp(2), grade }
}

/// Grade blocks of the ten-dimensional algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    Minus2,
    Minus1,
    Zero0c,
    Zero0s,
    Plus1,
    Plus2,
}

/// The ten basis fields with their block labels.
///
/// The second grade-one field is `(iz² + w − ζw)∂_z + 2i(zζ − z)∂_ζ + 2izw∂_w`, the
/// bracket of the rotation `iz∂_z + 2iζ∂_ζ` with the first one. With `+ζw` in the
/// `∂_z` coefficient the field is not tangent to the model.
pub fn algebra_basis_labeled() -> Vec<(Block, VectorField)> {
    let one = GaussQ::one;
    let ci = GaussQ::i;
    vec![
        (Block::Minus2, VectorField::poly(&[], &[], &[((0, 0, 0), one())], -2)),
        (
            Block::Minus1,
            VectorField::poly(&[((0, 0, 0), one()), ((0, 1, 0), c(-1, 0))], &[], &[((1, 0, 0), c(0, 2))], -1),
        ),
        (
            Block::Minus1,
            VectorField::poly(&[((0, 0, 0), ci()), ((0, 1, 0), ci())], &[], &[((1, 0, 0), c(2, 0))], -1),
        ),
        (Block::Zero0c, VectorField::poly(&[((1, 0, 0), one())], &[], &[((0, 0, 1), c(2, 0))], 0)),
        (Block::Zero0c, VectorField::poly(&[((1, 0, 0), ci())], &[((0, 1, 0), c(0, 2))], &[], 0)),
        (
            Block::Zero0s,
            VectorField::poly(
                &[((1, 1, 0), c(-1, 0))],
                &[((0, 0, 0), one()), ((0, 2, 0), c(-1, 0))],
                &[((2, 0, 0), ci())],
                0,
            ),
        ),
        (
            Block::Zero0s,
            VectorField::poly(&[((1, 1, 0), ci())], &[((0, 0, 0), ci()), ((0, 2, 0), ci())], &[((2, 0, 0), one())], 0),
        ),
        (
            Block::Plus1,
            VectorField::poly(
                &[((2, 0, 0), one()), ((0, 0, 1), ci()), ((0, 1, 1), ci())],
                &[((1, 0, 0), c(2, 0)), ((1, 1, 0), c(2, 0))],
                &[((1, 0, 1), c(2, 0))],
                1,
            ),
        ),
        (
            Block::Plus1,
            VectorField::poly(
                &[((2, 0, 0), ci()), ((0, 0, 1), one()), ((0, 1, 1), c(-1, 0))],
                &[((1, 1, 0), c(0, 2)), ((1, 0, 0), c(0, -2))],
                &[((1, 0, 1), c(0, 2))],
                1,
            ),
        ),
        (
            Block::Plus2,
            VectorField::poly(&[((1, 0, 1), one())], &[((2, 0, 0), c(0, -1))], &[((0, 0, 2), one())], 2),
        ),
    ]
}

/// The ten basis fields truncated to `t`.
pub fn algebra_basis(t: Trunc) -> Vec<VectorField> {
    algebra_basis_labeled().into_iter().map(|(_, x)| x.truncate(t)).collect()
}

/// The first (`g1_a`) and second (`g1_b`) grade-one fields and the grade-two field.
pub fn g1_a() -> VectorField {
    algebra_basis_labeled().swap_remove(7).1
}

pub fn g1_b() -> VectorField {
    algebra_basis_labeled().swap_remove(8).1
}

pub fn g2() -> VectorField {
    algebra_basis_labeled().swap_remove(9).1
}

/// The grade-one field with `f_w(0) = a`: `Im(a)·g1_a + Re(a)·g1_b`.
pub fn g1_field(a: &GaussQ) -> VectorField {
    g1_a().scale(&GaussQ::real(a.im.clone())).add(&g1_b().scale(&GaussQ::real(a.re.clone())))
}

/// `L` applied to the coefficients of `X`.
pub fn tangency_defect(x: &VectorField, t: Trunc) -> Result<WSeries> {
    levi_l(&x.fz, &x.fzeta, &x.fw, t)
}

/// Real coordinates of `y` in the span of `basis`, if it lies there exactly.
pub fn span_coordinates(y: &VectorField, basis: &[VectorField]) -> Option<Vec<Rational>> {
    if basis.is_empty() {
        return if y.is_zero() { Some(vec![]) } else { None };
    }
    // One real equation per (component, monomial, real/imaginary part).
    let mut keys: Vec<(usize, Mono)> = Vec::new();
    for f in basis.iter().chain(std::iter::once(y)) {
        for (i, comp) in f.components().iter().enumerate() {
            for (m, _) in comp.series().iter() {
                keys.push((i, m));
            }
        }
    }
    keys.sort();
    keys.dedup();
    let mut elim = Eliminator::new(basis.len());
    let mut rhs = Vec::new();
    for (i, m) in keys.iter() {
        for part in 0..2 {
            let pick = |c: GaussQ| if part == 0 { c.re } else { c.im };
            let row = sparse_row(basis.iter().enumerate().map(|(j, b)| (j, pick(b.components()[*i].series().coeff(*m)))));
            elim.push(row);
            rhs.push(pick(y.components()[*i].series().coeff(*m)));
        }
    }
    let inv = elim.left_inverse()?;
    let x = crate::linalg::apply_left_inverse(&inv, &rhs);
    let mut recon = y.scale(&GaussQ::zero());
    for (b, xi) in basis.iter().zip(x.iter()) {
        recon = recon.add(&b.scale(&GaussQ::real(xi.clone())));
    }
    let diff = recon.add(&y.scale(&GaussQ::from_int(-1)));
    if diff.is_zero() {
        Some(x)
    } else {
        None
    }
}

/// Grade of each basis element (by position in [`algebra_basis_labeled`]).
pub fn basis_grades() -> Vec<i32> {
    algebra_basis_labeled().iter().map(|(_, x)| x.grade.unwrap()).collect()
}

/// Checks `[g_i, g_j] ⊆ g_{i+j}` on all unordered basis pairs; returns the failing pairs.
pub fn grading_failures() -> Vec<(usize, usize)> {
    let basis: Vec<VectorField> = algebra_basis_labeled().into_iter().map(|(_, x)| x).collect();
    let mut bad = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let b = bracket(&basis[i], &basis[j]);
            let g = b.grade.unwrap();
            let target: Vec<VectorField> = basis.iter().filter(|x| x.grade == Some(g)).cloned().collect();
            if span_coordinates(&b, &target).is_none() {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// Checks the Jacobi identity on all basis triples; returns the failing triples.
pub fn jacobi_failures() -> Vec<(usize, usize, usize)> {
    let basis: Vec<VectorField> = algebra_basis_labeled().into_iter().map(|(_, x)| x).collect();
    let n = basis.len();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let (x, y, z) = (&basis[i], &basis[j], &basis[k]);
                let s = bracket(x, &bracket(y, z)).add(&bracket(y, &bracket(z, x))).add(&bracket(z, &bracket(x, y)));
                if !s.is_zero() {
                    bad.push((i, j, k));
                }
            }
        }
    }
    bad
}

/// The scaling `z ↦ λz, ζ ↦ (λ/λ̄)ζ, w ↦ λλ̄ w`.
pub fn scaling_map(lambda: &GaussQ, t: Trunc) -> Result<MapJet> {
    let lb = lambda.conj();
    let mu = lambda.checked_div(&lb)?;
    let nu = lambda * &lb;
    Ok(MapJet::linear(lambda, &mu, &nu, t))
}

/// Pushforward of a graph function `φ` (of `v = φ`) under the scaling by `λ`:
/// `φ*(z, ζ, z̄, ζ̄, u) = ν φ(z/λ, ζ/μ, z̄/λ̄, ζ̄/μ̄, u/ν)`.
pub fn scale_graph(phi: &WSeries, lambda: &GaussQ) -> Result<WSeries> {
    let lb = lambda.conj();
    let li = lambda.inv()?;
    let lbi = lb.inv()?;
    let mu = lambda.checked_div(&lb)?;
    let mui = mu.inv()?;
    let mubi = mui.conj();
    let nu = lambda * &lb;
    let nui = nu.inv()?;
    Ok(phi.map_coeffs(|m, c| {
        let [k, l, a, b, e] = m.exps();
        c * &nu * li.pow(k) * mui.pow(l) * lbi.pow(a) * mubi.pow(b) * nui.pow(e)
    }))
}

/// Flow generators accepted in a [`GroupElement`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowGen {
    G1a,
    G1b,
    G2,
}

impl FlowGen {
    pub fn name(self) -> &'static str {
        match self {
            FlowGen::G1a => "g1_a",
            FlowGen::G1b => "g1_b",
            FlowGen::G2 => "g2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "g1_a" => Ok(FlowGen::G1a),
            "g1_b" => Ok(FlowGen::G1b),
            "g2" => Ok(FlowGen::G2),
            _ => Err(Error::Parse(format!("unknown flow generator {s:?}"))),
        }
    }

    pub fn field(self) -> VectorField {
        match self {
            FlowGen::G1a => g1_a(),
            FlowGen::G1b => g1_b(),
            FlowGen::G2 => g2(),
        }
    }
}

/// An element of the stability group: a scaling followed by flows of positive-grade
/// fields, applied in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub lambda: GaussQ,
    pub flows: Vec<(FlowGen, Rational)>,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement { lambda: GaussQ::one(), flows: vec![] }
    }

    /// The element used by the normalisation parameters `(a, λ, s)`.
    pub fn from_params(a: &GaussQ, lambda: &GaussQ, s: &Rational) -> Self {
        let mut flows = Vec::new();
        if a.im != Rational::from(0) {
            flows.push((FlowGen::G1a, a.im.clone()));
        }
        if a.re != Rational::from(0) {
            flows.push((FlowGen::G1b, a.re.clone()));
        }
        if *s != Rational::from(0) {
            flows.push((FlowGen::G2, s.clone()));
        }
        GroupElement { lambda: lambda.clone(), flows }
    }

    pub fn is_identity(&self) -> bool {
        self.lambda.is_one() && self.flows.is_empty()
    }

    /// The map `flow_n ∘ … ∘ flow_1 ∘ Λ` on the region `t`.
    pub fn to_map(&self, t: Trunc) -> Result<MapJet> {
        if self.lambda.is_zero() {
            return Err(Error::Validation("scaling parameter must be nonzero".into()));
        }
        let mut m = scaling_map(&self.lambda, t)?;
        for (gen, time) in &self.flows {
            let fl = gen.field().flow(&GaussQ::real(time.clone()), t)?;
            m = fl.compose(&m)?;
        }
        Ok(m)
    }
}

/// Membership in the canonical cone `ζu + iz² = 0, u ≠ 0` of chain directions.
pub fn canonical_cone_check(z: &GaussQ, zeta: &GaussQ, u: &Rational) -> bool {
    if *u == Rational::from(0) {
        return false;
    }
    let uq = GaussQ::real(u.clone());
    (&(zeta * &uq) + &(&(&GaussQ::i() * z) * z)).is_zero()
}

/// Image of a hypersurface under a stability-group element: the scaling is applied
/// monomial-wise, the composed flows by a single pushforward.
pub fn apply_group(m: &Hypersurface, g: &GroupElement) -> Result<Hypersurface> {
    if g.lambda.is_zero() {
        return Err(Error::Validation("scaling parameter must be nonzero".into()));
    }
    let t = m.working();
    let mut phi = scale_graph(&m.phi_working(), &g.lambda)?;
    if !g.flows.is_empty() {
        let flows = GroupElement { lambda: GaussQ::one(), flows: g.flows.clone() }.to_map(t)?;
        let graph = pushforward(&model_p(t).add(&phi), &flows)?;
        phi = graph.sub(&model_p(graph.trunc()));
    }
    Hypersurface::new(phi, m.trunc, m.form)
}
