//! Recovery of the full normal form from its distinguished part by solving the Levi
//! determinant equation degree by degree.

use malachite_q::Rational;

use crate::error::{Error, Result};
use crate::hypersurface::{complex_from_graph, levi_determinant_of, FormTag, Hypersurface};
use crate::model::model_p;
use crate::normalform::validate_distinguished;
use crate::scalar::GaussQ;
use crate::series::{substitute, Mono, SubstSlots, Trunc, Var, WSeries};

/// The terms `χ` of a normal form with no `ζ̄` factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishedPart {
    pub chi: WSeries,
    pub trunc: Trunc,
}

impl DistinguishedPart {
    pub fn new(chi: WSeries, trunc: Trunc) -> Result<Self> {
        validate_distinguished(&chi)?;
        Ok(DistinguishedPart { chi, trunc })
    }

    /// `χ + χ̄ − χ|_{ζ=0}`: every monomial of the normal form not divisible by `ζζ̄`.
    pub fn indivisible_part(&self, t: Trunc) -> WSeries {
        let chi = self.chi.with_trunc(t);
        chi.add(&chi.conj()).sub(&chi.filter(|m| m.l() == 0))
    }
}

/// The hypersurface in normal form whose distinguished part is `χ` and whose Levi
/// determinant vanishes.
///
/// Writing `Φ = Φ₀ + R` with `Φ₀` the `ζζ̄`-indivisible part, the standard-degree-`e`
/// component of the determinant is `−4 R_{ζζ̄}` (from the degree-`e+2` part of `R`) plus
/// terms in `Φ₀` and lower parts of `R`; each step integrates it twice.
pub fn reconstruct(d: &DistinguishedPart) -> Result<Hypersurface> {
    let t = Trunc::working(d.trunc.weight, d.trunc.zeta);
    let base = d.indivisible_part(t);
    let mut rest = WSeries::zero(t);
    let quarter = Rational::from_signeds(1, 4);
    for e in 0..=(t.degree - 2).max(-1) {
        let cap = Trunc::with_caps(t.weight, t.zeta, e + 2);
        let graph = model_p(cap).add(&base.truncate(cap)).add(&rest.truncate(cap));
        let det = on_hypersurface(&levi_determinant_of(&complex_from_graph(&graph)?), &graph)?.degree_component(e as u32);
        if det.is_zero() {
            continue;
        }
        let step = WSeries::from_terms(
            det.iter().map(|(m, c)| {
                let [k, l, a, b, p] = m.exps();
                let s = quarter.clone() / Rational::from((l + 1) * (b + 1));
                (Mono::new(k, l + 1, a, b + 1, p), c.scale(&s))
            }),
            t,
        );
        if !step.is_real() {
            return Err(Error::Triangularity { degree: e as u32, reason: "determinant component is not real".into() });
        }
        rest = rest.add(&step);
    }
    Hypersurface::new(base.add(&rest), d.trunc, FormTag::NormalForm)
}

/// A function of `(z, ζ, z̄, ζ̄, w̄)` restricted to `v = φ`, i.e. at `w̄ = u − iφ`.
fn on_hypersurface(f: &WSeries, graph: &WSeries) -> Result<WSeries> {
    let t = f.trunc().meet(&graph.trunc());
    let wb = WSeries::var(Var::U, t).sub(&graph.truncate(t).scale(&GaussQ::i()));
    substitute(f, &SubstSlots::only_u(wb), None)
}

/// The Levi determinant of `M` on the declared rectangle.
pub fn residual_check(m: &Hypersurface) -> Result<WSeries> {
    let det = levi_determinant_of(&complex_from_graph(&m.graph())?);
    Ok(det.truncate(m.trunc))
}

