use super::{substitute, Mono, SubstSlots, Trunc, Var, WSeries};
use crate::error::{Error, Result};
use crate::scalar::GaussQ;

/// A truncated holomorphic function of `(z, ζ, w)`.
///
/// Stored as a [`WSeries`] with `z̄ = ζ̄ = 0`, the exponent of `w` kept in the `u` slot
/// (both have weight 2), so arithmetic and truncation are shared with real series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolJet(WSeries);

impl HolJet {
    pub fn new(s: WSeries) -> Result<Self> {
        if s.iter().any(|(m, _)| !m.is_holomorphic()) {
            return Err(Error::Validation("holomorphic jet has antiholomorphic terms".into()));
        }
        Ok(HolJet(s))
    }

    pub fn zero(t: Trunc) -> Self {
        HolJet(WSeries::zero(t))
    }

    pub fn var(v: Var, t: Trunc) -> Self {
        assert!(matches!(v, Var::Z | Var::Zeta | Var::U), "not a holomorphic variable");
        HolJet(WSeries::var(v, t))
    }

    /// `c · z^k ζ^l w^m`.
    pub fn monomial(k: u32, l: u32, m: u32, c: GaussQ, t: Trunc) -> Self {
        HolJet(WSeries::monomial(Mono::new(k, l, 0, 0, m), c, t))
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32, u32), GaussQ)>>(terms: I, t: Trunc) -> Self {
        HolJet(WSeries::from_terms(
            terms.into_iter().map(|((k, l, m), c)| (Mono::new(k, l, 0, 0, m), c)),
            t,
        ))
    }

    pub fn series(&self) -> &WSeries {
        &self.0
    }

    pub fn into_series(self) -> WSeries {
        self.0
    }

    pub fn trunc(&self) -> Trunc {
        self.0.trunc()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Coefficient of `z^k ζ^l w^m`.
    pub fn coeff(&self, k: u32, l: u32, m: u32) -> GaussQ {
        self.0.coeff(Mono::new(k, l, 0, 0, m))
    }

    pub fn add(&self, o: &HolJet) -> HolJet {
        HolJet(self.0.add(&o.0))
    }

    pub fn sub(&self, o: &HolJet) -> HolJet {
        HolJet(self.0.sub(&o.0))
    }

    pub fn mul(&self, o: &HolJet) -> HolJet {
        HolJet(self.0.mul(&o.0))
    }

    pub fn scale(&self, c: &GaussQ) -> HolJet {
        HolJet(self.0.scale(c))
    }

    pub fn truncate(&self, t: Trunc) -> HolJet {
        HolJet(self.0.truncate(t))
    }

    /// See [`WSeries::with_trunc`].
    pub fn with_trunc(&self, t: Trunc) -> HolJet {
        HolJet(self.0.with_trunc(t))
    }

    /// Derivative in `z`, `ζ` or `w` (pass [`Var::U`] for `w`).
    pub fn diff(&self, v: Var) -> HolJet {
        assert!(matches!(v, Var::Z | Var::Zeta | Var::U), "not a holomorphic variable");
        HolJet(self.0.diff(v))
    }

    /// Terms of weighted degree exactly `w`.
    pub fn weighted_component(&self, w: u32) -> HolJet {
        HolJet(self.0.weighted_component(w))
    }

    /// `f(z, ζ, w)` restricted to `w = s` with `s` a real-variable series.
    pub fn eval_w(&self, w: &WSeries) -> Result<WSeries> {
        substitute(&self.0, &SubstSlots::only_u(w.clone()), None)
    }

    /// `conj(f)(z̄, ζ̄, w̄)` restricted to `w̄ = s`.
    pub fn eval_conj_w(&self, wbar: &WSeries) -> Result<WSeries> {
        substitute(&self.0.conj(), &SubstSlots::only_u(wbar.clone()), None)
    }

    /// `f(a, b, c)` for holomorphic substitutes.
    pub fn compose(&self, z: &HolJet, zeta: &HolJet, w: &HolJet) -> Result<HolJet> {
        let slots = SubstSlots {
            z: Some(z.0.clone()),
            zeta: Some(zeta.0.clone()),
            u: Some(w.0.clone()),
            ..Default::default()
        };
        Ok(HolJet(substitute(&self.0, &slots, None)?))
    }

    /// Terms as `((k, l, m), c)` for `c z^k ζ^l w^m`.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32, u32), &GaussQ)> + '_ {
        self.0.iter().map(|(m, c)| ((m.k(), m.l(), m.m()), c))
    }
}
