//! Formal holomorphic maps `(z, ζ, w) ↦ (z + f, ζ + g, w + h)` of `C³`.

use crate::error::{Error, Result};
use crate::scalar::GaussQ;
use crate::series::{HolJet, Trunc, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeTag {
    /// `f` of weight ≥ 2, `g` ≥ 1, `h` ≥ 3, with `f_zz = 0` and `Re h_ww = 0`.
    VSpace,
    General,
}

/// A truncated map given by its deviation from the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapJet {
    pub f: HolJet,
    pub g: HolJet,
    pub h: HolJet,
    pub shape: ShapeTag,
}

impl MapJet {
    pub fn identity(t: Trunc) -> Self {
        MapJet { f: HolJet::zero(t), g: HolJet::zero(t), h: HolJet::zero(t), shape: ShapeTag::VSpace }
    }

    /// Builds a map, checking the v-space shape when that tag is requested.
    pub fn new(f: HolJet, g: HolJet, h: HolJet, shape: ShapeTag) -> Result<Self> {
        let m = MapJet { f, g, h, shape };
        if shape == ShapeTag::VSpace && !m.has_vspace_shape() {
            return Err(Error::Validation("map does not have the v-space shape".into()));
        }
        Ok(m)
    }

    pub fn general(f: HolJet, g: HolJet, h: HolJet) -> Self {
        MapJet { f, g, h, shape: ShapeTag::General }
    }

    /// Map with the given full components `(Z, Ζ, W)`.
    pub fn from_components(z: HolJet, zeta: HolJet, w: HolJet) -> Self {
        let t = z.trunc().meet(&zeta.trunc()).meet(&w.trunc());
        MapJet::general(
            z.sub(&HolJet::var(Var::Z, t)),
            zeta.sub(&HolJet::var(Var::Zeta, t)),
            w.sub(&HolJet::var(Var::U, t)),
        )
    }

    pub fn components(&self) -> (HolJet, HolJet, HolJet) {
        let t = self.trunc();
        (
            HolJet::var(Var::Z, t).add(&self.f),
            HolJet::var(Var::Zeta, t).add(&self.g),
            HolJet::var(Var::U, t).add(&self.h),
        )
    }

    pub fn trunc(&self) -> Trunc {
        self.f.trunc().meet(&self.g.trunc()).meet(&self.h.trunc())
    }

    pub fn truncate(&self, t: Trunc) -> MapJet {
        MapJet { f: self.f.truncate(t), g: self.g.truncate(t), h: self.h.truncate(t), shape: self.shape }
    }

    pub fn is_identity(&self) -> bool {
        self.f.is_zero() && self.g.is_zero() && self.h.is_zero()
    }

    pub fn has_vspace_shape(&self) -> bool {
        let floor = |j: &HolJet, w: u32| j.series().iter().all(|(m, _)| m.weight() >= w);
        floor(&self.f, 2)
            && floor(&self.g, 1)
            && floor(&self.h, 3)
            && self.f.coeff(2, 0, 0).is_zero()
            && {
                let c = self.h.coeff(0, 0, 2);
                (&c + &c.conj()).is_zero()
            }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &MapJet) -> Result<MapJet> {
        let (z, zeta, w) = inner.components();
        let f = inner.f.add(&self.f.compose(&z, &zeta, &w)?);
        let g = inner.g.add(&self.g.compose(&z, &zeta, &w)?);
        let h = inner.h.add(&self.h.compose(&z, &zeta, &w)?);
        let shape = if self.shape == ShapeTag::VSpace && inner.shape == ShapeTag::VSpace {
            ShapeTag::VSpace
        } else {
            ShapeTag::General
        };
        let mut out = MapJet { f, g, h, shape };
        if shape == ShapeTag::VSpace && !out.has_vspace_shape() {
            out.shape = ShapeTag::General;
        }
        Ok(out)
    }

    /// Diagonal linear part `(a, b, c)`: coefficients of `z` in `Z`, `ζ` in `Ζ`, `w` in `W`.
    pub fn diagonal(&self) -> (GaussQ, GaussQ, GaussQ) {
        (
            GaussQ::one() + self.f.coeff(1, 0, 0),
            GaussQ::one() + self.g.coeff(0, 1, 0),
            GaussQ::one() + self.h.coeff(0, 0, 1),
        )
    }

    /// The diagonal linear map `(az, bζ, cw)`.
    pub fn linear(a: &GaussQ, b: &GaussQ, c: &GaussQ, t: Trunc) -> MapJet {
        MapJet::from_components(
            HolJet::monomial(1, 0, 0, a.clone(), t),
            HolJet::monomial(0, 1, 0, b.clone(), t),
            HolJet::monomial(0, 0, 1, c.clone(), t),
        )
    }

    /// Formal inverse. The map must be a diagonal linear map composed with a map `id + δ`
    /// whose linearisation `Dδ` is nilpotent on the truncation; the inverse of the
    /// latter is the fixed point of `K = id − δ∘K`.
    pub fn inverse(&self) -> Result<MapJet> {
        let t = self.trunc();
        let (a, b, c) = self.diagonal();
        let (ai, bi, ci) = (a.inv()?, b.inv()?, c.inv()?);
        // self = D ∘ N with N = D⁻¹ ∘ self.
        let dinv = MapJet::linear(&ai, &bi, &ci, t);
        let n = dinv.compose(self)?;
        let mut k = MapJet::identity(t);
        let bound = 4 * (t.effective().degree.max(1) as usize) + 8;
        for _ in 0..bound {
            let (z, zeta, w) = k.components();
            let next = MapJet::general(
                n.f.compose(&z, &zeta, &w)?.scale(&GaussQ::from_int(-1)),
                n.g.compose(&z, &zeta, &w)?.scale(&GaussQ::from_int(-1)),
                n.h.compose(&z, &zeta, &w)?.scale(&GaussQ::from_int(-1)),
            );
            let next = next.truncate(t);
            if next == k {
                let mut inv = k.compose(&dinv)?;
                inv.shape = ShapeTag::General;
                return Ok(inv);
            }
            k = next;
        }
        Err(Error::NoConvergence("map inverse".into()))
    }
}
