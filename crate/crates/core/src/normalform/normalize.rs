use malachite_q::Rational;

use super::nspace::extract_distinguished;
use super::solver::solve_weight;
use crate::error::{Error, Result};
use crate::hypersurface::{as_perturbation, model_p_of, FormTag, Hypersurface};
use crate::map::{MapJet, ShapeTag};
use crate::model::{apply_group, model_p, GroupElement};
use crate::scalar::GaussQ;
use crate::series::{substitute, Mono, SubstSlots, Trunc, Var, WSeries};

/// The free parameters of the normalisation: the chain direction `a`, the scaling `λ`
/// and the `g₂` parameter `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizeParams {
    pub a: GaussQ,
    pub lambda: GaussQ,
    pub s: Rational,
}

impl Default for NormalizeParams {
    fn default() -> Self {
        NormalizeParams { a: GaussQ::zero(), lambda: GaussQ::one(), s: Rational::from(0) }
    }
}

impl NormalizeParams {
    pub fn group_element(&self) -> GroupElement {
        GroupElement::from_params(&self.a, &self.lambda, &self.s)
    }
}

#[derive(Clone, Debug)]
pub struct NFReport {
    /// `Φ` of the normal form, on the working region.
    pub normal_phi: WSeries,
    /// Declared rectangle of the input.
    pub trunc: Trunc,
    /// The full normalising map `H ∘ g`.
    pub map: MapJet,
    pub params: NormalizeParams,
    /// `(Φ_{3002}(0), Φ_{5001}(0))`.
    pub sphericity: (GaussQ, GaussQ),
    pub distinguished: WSeries,
}

impl NFReport {
    pub fn is_spherical(&self) -> bool {
        self.sphericity.0.is_zero() && self.sphericity.1.is_zero()
    }

    pub fn normal_form(&self) -> Hypersurface {
        Hypersurface { phi: self.normal_phi.clone(), trunc: self.trunc, form: FormTag::NormalForm }
    }

    /// `Φ` restricted to the declared rectangle.
    pub fn phi_reported(&self) -> WSeries {
        self.normal_phi.truncate(self.trunc)
    }
}

/// `Im H_w − (P + Φ*)(H_z, H_ζ, H̄_z, H̄_ζ, Re H_w)` on `w = u + iφ`, on the region `cap`.
fn defect(h: &MapJet, phi0: &WSeries, phistar: &WSeries, cap: Trunc) -> Result<WSeries> {
    let u = WSeries::var(Var::U, cap);
    let w = u.add(&phi0.scale(&GaussQ::i())).truncate(cap);
    let (hz, hzeta, hw) = h.components();
    let z = hz.truncate(cap).eval_w(&w)?;
    let zeta = hzeta.truncate(cap).eval_w(&w)?;
    let (zb, zetab) = (z.conj(), zeta.conj());
    let a = hw.truncate(cap).eval_w(&w)?;
    let im = a.im();
    let re = a.re();
    let mut rhs = model_p_of(&z, &zeta, &zb, &zetab)?;
    if !phistar.is_zero() {
        let slots = SubstSlots { z: Some(z), zeta: Some(zeta), zbar: Some(zb), zetabar: Some(zetab), u: Some(re) };
        rhs = rhs.add(&substitute(&phistar.truncate(cap), &slots, None)?);
    }
    Ok(im.sub(&rhs).truncate(cap))
}

/// Brings a perturbation `v = P + Φ` of the model to normal form.
///
/// The group element of `params` is applied first; then for each weight `m = 3, …, W`
/// the weight-`m` defect of the partially normalised hypersurface is recomputed by
/// substitution and split by [`solve_weight`] into a v-space jet and a normal-form part.
pub fn normalize(m: &Hypersurface, params: &NormalizeParams) -> Result<NFReport> {
    let m = as_perturbation(m)?;
    let t = m.working();
    let g = params.group_element();
    let moved = if g.is_identity() { m.clone() } else { apply_group(&m, &g)? };
    let phi0 = model_p(t).add(&moved.phi_working());
    let mut h = MapJet::identity(t);
    let mut phistar = WSeries::zero(t);
    let two = GaussQ::from_int(2);
    let half = GaussQ::ratio(1, 2);
    for wt in 3..=t.weight.max(2) {
        let cap = Trunc::with_caps(wt, t.zeta, t.degree);
        let e = defect(&h, &phi0, &phistar, cap)?;
        if let Some((bad, _)) = e.iter().find(|(mono, _)| (mono.weight() as i32) < wt) {
            return Err(Error::Decomposition { weight: bad.weight(), reason: "defect below the current weight".into() });
        }
        let psi = e.weighted_component(wt as u32).scale(&two).with_trunc(t);
        let sol = solve_weight(wt as u32, &psi)?;
        phistar = phistar.add(&sol.n.scale(&half));
        h = MapJet { f: h.f.add(&sol.j.f), g: h.g.add(&sol.j.g), h: h.h.add(&sol.j.h), shape: ShapeTag::VSpace };
    }
    let map = if g.is_identity() { h } else { h.compose(&g.to_map(t)?)? };
    let sphericity = (phistar.coeff(Mono::new(3, 0, 0, 2, 0)), phistar.coeff(Mono::new(5, 0, 0, 1, 0)));
    let distinguished = extract_distinguished(&phistar)?;
    Ok(NFReport { normal_phi: phistar, trunc: m.trunc, map, params: params.clone(), sphericity, distinguished })
}

/// `(f_ww(0), g_w(0))` of the normalising map for the chain direction `a`.
pub fn chain_data(m: &Hypersurface, a: &GaussQ) -> Result<(GaussQ, GaussQ)> {
    let params = NormalizeParams { a: a.clone(), ..Default::default() };
    let r = normalize(m, &params)?;
    Ok((r.map.f.coeff(0, 0, 2).scale(&Rational::from(2)), r.map.g.coeff(0, 0, 1)))
}
