use rustc_hash::FxHashMap;

use super::{Mono, Trunc, Var, WSeries};
use crate::error::{Error, Result};
use crate::scalar::GaussQ;

/// Substitutes for the five variables; `None` leaves a variable unchanged.
#[derive(Clone, Debug, Default)]
pub struct SubstSlots {
    pub z: Option<WSeries>,
    pub zeta: Option<WSeries>,
    pub zbar: Option<WSeries>,
    pub zetabar: Option<WSeries>,
    pub u: Option<WSeries>,
}

impl SubstSlots {
    pub fn get(&self, v: Var) -> Option<&WSeries> {
        match v {
            Var::Z => self.z.as_ref(),
            Var::Zeta => self.zeta.as_ref(),
            Var::Zbar => self.zbar.as_ref(),
            Var::Zetabar => self.zetabar.as_ref(),
            Var::U => self.u.as_ref(),
        }
    }

    pub fn only_u(u: WSeries) -> Self {
        SubstSlots { u: Some(u), ..Default::default() }
    }
}

/// The region on which `φ(s)` is exact, given that `φ` is exact on `t`.
///
/// Each substitute must have no constant term and must not lower the standard degree of
/// its variable. If a substitute lowers the weight (or ζ-degree) of its variable, the
/// corresponding cap of `t` can no longer be trusted and is folded into the
/// standard-degree cap instead.
pub fn output_trunc(t: Trunc, slots: &SubstSlots) -> Result<Trunc> {
    let mut weight_ok = true;
    let mut zeta_ok = true;
    let mut out = Trunc::with_caps(i32::MAX / 4, i32::MAX / 4, i32::MAX / 4);
    for v in Var::ALL {
        let Some(s) = slots.get(v) else { continue };
        let (vw, vd) = v.weight_zdeg();
        for (m, _) in s.iter() {
            let w = m.weight() as i32;
            let d = m.zdeg() as i32;
            if w + d == 0 {
                return Err(Error::Truncation(format!("substitute for {v:?} has a constant term")));
            }
            if w + d < vw + vd {
                return Err(Error::Truncation(format!("substitute for {v:?} lowers the standard degree")));
            }
            weight_ok &= w >= vw;
            zeta_ok &= d >= vd;
        }
        out = out.meet(&s.trunc());
    }
    let t = t.effective();
    let (w, d, s) = (t.weight, t.zeta, t.degree);
    let base = match (weight_ok, zeta_ok) {
        (true, true) => t,
        (true, false) => Trunc::with_caps(w, d.min(s), d.min(s)),
        (false, true) => Trunc::with_caps(w.min(s), d, w.min(s)),
        (false, false) => {
            let c = w.min(d).min(s);
            Trunc::with_caps(c, c, c)
        }
    };
    Ok(base.meet(&out).effective())
}

/// Composition `φ(s_z, s_ζ, s_z̄, s_ζ̄, s_u)`, computed on `output_trunc(φ.trunc(), s)`
/// met with `cap`.
pub fn substitute(phi: &WSeries, slots: &SubstSlots, cap: Option<Trunc>) -> Result<WSeries> {
    let mut t = output_trunc(phi.trunc(), slots)?;
    if let Some(c) = cap {
        t = t.meet(&c).effective();
    }
    if t.is_empty() || phi.is_zero() {
        return Ok(WSeries::zero(t));
    }
    let mut powers = Powers::new(slots, t);

    // Group by (k, l, α, β): the u-dependence becomes a polynomial in s_u.
    let mut groups: Vec<(Mono, Vec<(u32, &GaussQ)>)> = Vec::new();
    let mut index: FxHashMap<Mono, usize> = FxHashMap::default();
    for (m, c) in phi.iter() {
        let key = m.slot();
        let i = *index.entry(key).or_insert_with(|| {
            groups.push((key, Vec::new()));
            groups.len() - 1
        });
        groups[i].1.push((m.m(), c));
    }
    groups.sort_by_key(|(k, _)| (k.k(), k.l(), k.alpha(), k.beta()));

    // Σ_{α,β} s_z̄^α s_ζ̄^β · upoly is summed per (k, l) first, so the (large) factor
    // s_z^k s_ζ^l is multiplied once; the inner sum is only needed on the region left
    // over after the lowest degrees of that factor.
    let mut ab_cache: FxHashMap<(u32, u32), WSeries> = FxHashMap::default();
    let mut acc: FxHashMap<Mono, GaussQ> = FxHashMap::default();
    let mut i = 0;
    while i < groups.len() {
        let [k, l, ..] = groups[i].0.exps();
        let mut j = i;
        while j < groups.len() && (groups[j].0.k(), groups[j].0.l()) == (k, l) {
            j += 1;
        }
        let kl = powers.get(Var::Z, k).mul_into(&powers.get(Var::Zeta, l), t);
        let rest = match lowest(&kl) {
            Some((w, d, sd)) => Trunc::with_caps(t.weight - w, t.zeta - d, t.degree - sd).effective(),
            None => {
                i = j;
                continue;
            }
        };
        let mut inner: FxHashMap<Mono, GaussQ> = FxHashMap::default();
        for (key, us) in &groups[i..j] {
            let [_, _, a, b, _] = key.exps();
            if rest.is_empty() {
                break;
            }
            let mut upoly = WSeries::zero(rest);
            for (m, c) in us {
                upoly = upoly.add(&powers.get(Var::U, *m).with_trunc(rest).scale(c));
            }
            if upoly.is_zero() {
                continue;
            }
            let ab = ab_cache
                .entry((a, b))
                .or_insert_with(|| powers.get(Var::Zbar, a).mul_into(&powers.get(Var::Zetabar, b), t))
                .with_trunc(rest);
            for (m, c) in ab.mul_into(&upoly, rest).iter() {
                *inner.entry(m).or_default() += c;
            }
        }
        // Exact on `rest`, which is all the product below reads on `t`.
        let inner = WSeries::from_terms(inner.into_iter(), t);
        for (m, c) in kl.mul_into(&inner, t).iter() {
            *acc.entry(m).or_default() += c;
        }
        i = j;
    }
    Ok(WSeries::from_terms(acc.into_iter(), t))
}

/// Lowest weight, ζ-degree and standard degree over the terms of `s`.
fn lowest(s: &WSeries) -> Option<(i32, i32, i32)> {
    s.iter().fold(None, |acc, (m, _)| {
        let x = (m.weight() as i32, m.zdeg() as i32, m.std_degree() as i32);
        Some(match acc {
            None => x,
            Some((w, d, sd)) => (w.min(x.0), d.min(x.1), sd.min(x.2)),
        })
    })
}

/// Cached powers of each substitute (or of the variable itself).
struct Powers {
    subs: [Option<WSeries>; 5],
    cache: [Vec<WSeries>; 5],
    t: Trunc,
}

impl Powers {
    fn new(slots: &SubstSlots, t: Trunc) -> Self {
        let subs = [
            slots.z.clone(),
            slots.zeta.clone(),
            slots.zbar.clone(),
            slots.zetabar.clone(),
            slots.u.clone(),
        ];
        Powers { subs, cache: Default::default(), t }
    }

    fn idx(v: Var) -> usize {
        match v {
            Var::Z => 0,
            Var::Zeta => 1,
            Var::Zbar => 2,
            Var::Zetabar => 3,
            Var::U => 4,
        }
    }

    fn get(&mut self, v: Var, e: u32) -> WSeries {
        let i = Self::idx(v);
        let t = self.t;
        let Some(s) = &self.subs[i] else {
            let vm = v.mono();
            let mut m = Mono::ONE;
            for _ in 0..e {
                m = m + vm;
            }
            return WSeries::monomial(m, GaussQ::one(), t);
        };
        let c = &mut self.cache[i];
        if c.is_empty() {
            c.push(WSeries::one(t));
        }
        while c.len() <= e as usize {
            let next = c.last().unwrap().mul_into(s, t);
            c.push(next);
        }
        c[e as usize].clone()
    }
}
