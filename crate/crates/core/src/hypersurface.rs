//! Real hypersurfaces `v = P + Φ` near the origin of `C³`, their complex defining
//! equations, Levi determinant, pushforwards and prenormalisation.

use malachite_q::Rational;

use crate::error::{Error, Result};
use crate::map::MapJet;
use crate::model::model_p;
use crate::scalar::GaussQ;
use crate::series::{substitute, HolJet, Mono, SubstSlots, Trunc, Var, WSeries};

/// How far a hypersurface has been brought towards normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormTag {
    RawGerm,
    Prenormalized,
    PerturbationOfP,
    NormalForm,
}

/// A hypersurface `v = P + Φ`.
///
/// `phi` is always the deviation `Φ` of the graph function from the model, whatever the
/// form tag. `trunc` is the declared (reporting) rectangle; `phi` itself may be known on
/// a larger region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersurface {
    pub phi: WSeries,
    pub trunc: Trunc,
    pub form: FormTag,
}

impl Hypersurface {
    pub fn new(phi: WSeries, trunc: Trunc, form: FormTag) -> Result<Self> {
        if !phi.is_real() {
            return Err(Error::Validation("defining function is not real".into()));
        }
        let h = Hypersurface { phi, trunc, form };
        match form {
            FormTag::RawGerm => {}
            FormTag::Prenormalized => h.check_killed()?,
            FormTag::PerturbationOfP => check_weight_floor(&h.phi)?,
            FormTag::NormalForm => {
                check_weight_floor(&h.phi)?;
                let (ok, bad) = crate::normalform::is_in_normal_form(&h.phi);
                if !ok {
                    return Err(Error::Validation(format!("not in normal form at {:?}", &bad[..bad.len().min(6)])));
                }
            }
        }
        Ok(h)
    }

    /// The model itself.
    pub fn model(trunc: Trunc) -> Self {
        Hypersurface { phi: WSeries::zero(Trunc::working(trunc.weight, trunc.zeta)), trunc, form: FormTag::NormalForm }
    }

    /// A hypersurface given by its full graph function `v = φ`.
    pub fn from_graph(graph: &WSeries, trunc: Trunc, form: FormTag) -> Result<Self> {
        let p = model_p(graph.trunc());
        Hypersurface::new(graph.sub(&p), trunc, form)
    }

    /// The region all internal computations use: weight ≤ W and standard degree ≤ W + D.
    pub fn working(&self) -> Trunc {
        Trunc::working(self.trunc.weight, self.trunc.zeta)
    }

    /// `Φ` on the working region. Terms outside the region on which `phi` is stored are
    /// taken to be zero.
    pub fn phi_working(&self) -> WSeries {
        self.phi.with_trunc(self.working())
    }

    /// The graph function `P + Φ` on the working region.
    pub fn graph(&self) -> WSeries {
        let t = self.working();
        model_p(t).add(&self.phi_working())
    }

    /// `Φ` restricted to the declared rectangle.
    pub fn phi_reported(&self) -> WSeries {
        self.phi.truncate(self.trunc)
    }

    fn check_killed(&self) -> Result<()> {
        let bad = killed_terms(&self.phi);
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(format!("killed-shape monomials present: {:?}", &bad[..bad.len().min(6)])))
        }
    }
}

/// Monomials of `Φ` with a shape removed by prenormalisation: `(α,β) = (0,0)`,
/// `(1,0)` with `(k,l) ≠ (1,0)`, `(2,0)` with `(k,l) ≠ (0,1)`, and their conjugates.
/// (In the full graph `zz̄` and `½z̄²ζ` belong to `P`; `Φ` may still carry `u`-multiples
/// of them.)
pub fn killed_terms(phi: &WSeries) -> Vec<[u32; 5]> {
    phi.iter().filter(|(m, _)| is_killed_shape(*m)).map(|(m, _)| m.exps()).collect()
}

fn is_killed_shape(m: Mono) -> bool {
    let killed = |k: u32, l: u32, a: u32, b: u32| {
        (a, b) == (0, 0) || ((a, b) == (1, 0) && (k, l) != (1, 0)) || ((a, b) == (2, 0) && (k, l) != (0, 1))
    };
    let [k, l, a, b, _] = m.exps();
    killed(k, l, a, b) || killed(a, b, k, l)
}

fn check_weight_floor(phi: &WSeries) -> Result<()> {
    let bad: Vec<[u32; 5]> = phi.iter().filter(|(m, _)| m.weight() < 3).map(|(m, _)| m.exps()).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::PerturbationViolation(bad))
    }
}

/// `P(Z, Ζ, Z̄, Ζ̄) = (ZZ̄ + ½Z²Ζ̄ + ½Z̄²Ζ)/(1 − ΖΖ̄)` for series arguments.
pub fn model_p_of(z: &WSeries, zeta: &WSeries, zb: &WSeries, zetab: &WSeries) -> Result<WSeries> {
    let half = GaussQ::ratio(1, 2);
    let num = z
        .mul(zb)
        .add(&z.mul(z).mul(zetab).scale(&half))
        .add(&zb.mul(zb).mul(zeta).scale(&half));
    let den = WSeries::one(num.trunc()).sub(&zeta.mul(zetab));
    Ok(num.mul(&den.inverse()?))
}

/// Evaluates the graph `v = P + Φ` at the point `K(Z, Ζ, W)` of a holomorphic map, i.e.
/// returns `φ(K_z, K_ζ, K̄_z, K̄_ζ, Re K_w)` where the map is evaluated on `W = U + iV`.
fn graph_at(phi: &WSeries, comps: [WSeries; 5]) -> Result<WSeries> {
    let [z, zeta, zb, zetab, u] = comps;
    let p = model_p_of(&z, &zeta, &zb, &zetab)?;
    let slots = SubstSlots { z: Some(z), zeta: Some(zeta), zbar: Some(zb), zetabar: Some(zetab), u: Some(u) };
    Ok(p.add(&substitute(phi, &slots, None)?))
}

/// Graph of the image `H(M)` of `M: v = φ` under a holomorphic map `H`, given the
/// inverse map `K = H⁻¹`: solves `Im K_w = φ(K, Re K_w)` on `W = U + iV` for `V` by
/// fixed-point iteration.
pub fn pushforward_by_inverse(graph: &WSeries, k: &MapJet) -> Result<WSeries> {
    let phi = graph.sub(&model_p(graph.trunc()));
    let t = graph.trunc().meet(&k.trunc()).effective();
    let (kz, kzeta, kw) = k.components();
    // The linear part `c·W` of `K_w` contributes `Re(c)·V` to `Im K_w`; it is divided out.
    let c = kw.coeff(0, 0, 1);
    if c.re == 0 {
        return Err(Error::Validation("map does not preserve the transverse direction".into()));
    }
    let cre = GaussQ::new(c.re.clone(), Rational::from(0));
    let cinv = cre.inv()?;
    // Each pass is run on the region up to weight `cap`, raised by one per pass. If `Φ`
    // has weight ≥ 3 and every `w`-dependent term of `K` (other than `c·W`) has weight
    // above that of its variable, the weight-m part of a pass only reads `V` below
    // weight m: starting from weight 2, the pass at the full cap is exact. Otherwise the
    // result is only accepted once it is a fixed point on the whole of `t`.
    let raises = |x: &HolJet, var_weight: u32, skip: Option<Mono>| {
        x.series().iter().all(|(m, _)| m.m() == 0 || Some(m) == skip || m.weight() > var_weight)
    };
    let triangular = phi.min_weight().map_or(true, |w| w >= 3)
        && raises(&kz, 1, None)
        && raises(&kzeta, 0, None)
        && raises(&kw, 2, Some(Mono::new(0, 0, 0, 0, 1)));
    let mut v = graph.truncate(t);
    let mut cap = if triangular { 2.min(t.weight) } else { (v.min_weight().unwrap_or(0) as i32 + 1).min(t.weight) };
    let bound = 2 * (t.degree.max(0) as usize) + 8 + t.weight.max(0) as usize;
    for _ in 0..bound {
        let tc = Trunc::with_caps(cap, t.zeta, t.degree);
        let vc = v.truncate(tc);
        let w = WSeries::var(Var::U, tc).add(&vc.scale(&GaussQ::i()));
        let wb = WSeries::var(Var::U, tc).sub(&vc.scale(&GaussQ::i()));
        let kw_at = kw.truncate(tc).eval_w(&w)?;
        let kwb_at = kw.truncate(tc).eval_conj_w(&wb)?;
        let re = kw_at.add(&kwb_at).scale(&GaussQ::ratio(1, 2));
        let im_rest = kw_at.sub(&kwb_at).scale(&GaussQ::from_parts(0, 1, -1, 2)).sub(&vc.scale(&cre));
        let (kzc, kzetac) = (kz.truncate(tc), kzeta.truncate(tc));
        let comps = [kzc.eval_w(&w)?, kzetac.eval_w(&w)?, kzc.eval_conj_w(&wb)?, kzetac.eval_conj_w(&wb)?, re];
        let rhs = graph_at(&phi.truncate(tc), comps)?;
        let next = rhs.sub(&im_rest).scale(&cinv).truncate(tc);
        if cap >= t.weight {
            let next = next.with_trunc(t);
            if triangular || next == v {
                return Ok(next);
            }
            v = next;
        } else {
            v = next.with_trunc(t).add(&v.filter(|m| m.weight() as i32 > cap));
            cap += 1;
        }
    }
    Err(Error::NoConvergence("graph of the pushforward".into()))
}

/// Graph of `H(M)`.
pub fn pushforward(graph: &WSeries, h: &MapJet) -> Result<WSeries> {
    pushforward_by_inverse(graph, &h.inverse()?)
}

/// Image of a hypersurface under a holomorphic map, as a new hypersurface with the same
/// declared rectangle.
pub fn push_hypersurface(m: &Hypersurface, h: &MapJet, form: FormTag) -> Result<Hypersurface> {
    let g = pushforward(&m.graph(), h)?;
    let phi = g.sub(&model_p(g.trunc()));
    Hypersurface::new(phi, m.trunc, form)
}

/// Complex defining equation `w = θ(z, ζ, z̄, ζ̄, w̄)`; the `u` slot of `theta` holds `w̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDefEq {
    pub theta: WSeries,
    pub trunc: Trunc,
}

/// Solves `w = w̄ + 2iφ(z, ζ, z̄, ζ̄, (w + w̄)/2)` for `w` by fixed-point iteration.
pub fn complex_from_graph(graph: &WSeries) -> Result<WSeries> {
    let t = graph.trunc().effective();
    let u = WSeries::var(Var::U, t);
    let two_i = GaussQ::from_parts(0, 1, 2, 1);
    let p = model_p(t);
    let rest = graph.sub(&p);
    let mut theta = u.add(&graph.scale(&two_i));
    // Passes on a weight cap raised by one per pass. If every term of `Φ` has weight ≥ 3,
    // the weight-m part of a pass only reads `θ` below weight m, so the pass at the full
    // cap is already exact; otherwise it is iterated to an exact fixed point.
    let floor = rest.min_weight().unwrap_or(0) as i32;
    let triangular = floor >= 3;
    let mut cap = floor.clamp(1, t.weight.max(1));
    let bound = 2 * (t.degree.max(0) as usize) + 8 + t.weight.max(0) as usize;
    for _ in 0..bound {
        let tc = Trunc::with_caps(cap, t.zeta, t.degree);
        let mid = theta.add(&u).scale(&GaussQ::ratio(1, 2)).truncate(tc);
        let r = substitute(&rest.truncate(tc), &SubstSlots::only_u(mid), None)?;
        let next = u.add(&p.add(&r).scale(&two_i)).truncate(theta.trunc().meet(&r.trunc()));
        if cap >= t.weight {
            if triangular || next == theta {
                return Ok(next);
            }
            theta = next;
        } else {
            theta = next.truncate(tc).with_trunc(theta.trunc()).add(&theta.filter(|m| m.weight() as i32 > cap));
            cap += 1;
        }
    }
    Err(Error::NoConvergence("complex defining equation".into()))
}

pub fn to_complex_defining(m: &Hypersurface) -> Result<ComplexDefEq> {
    if !m.phi.is_real() {
        return Err(Error::Validation("defining function is not real".into()));
    }
    Ok(ComplexDefEq { theta: complex_from_graph(&m.graph())?, trunc: m.trunc })
}

/// `θ(z, ζ, z̄, ζ̄, u − iφ) − (u + iφ)`: zero iff `θ` describes the graph `v = φ`.
pub fn complex_round_trip_residual(theta: &WSeries, graph: &WSeries) -> Result<WSeries> {
    let t = theta.trunc().meet(&graph.trunc());
    let u = WSeries::var(Var::U, t);
    let wb = u.sub(&graph.scale(&GaussQ::i()));
    let lhs = substitute(theta, &SubstSlots::only_u(wb), None)?;
    Ok(lhs.sub(&u.add(&graph.scale(&GaussQ::i()))))
}

/// The Levi determinant
/// `det [θ_z̄ θ_ζ̄ θ_w̄; θ_zz̄ θ_zζ̄ θ_zw̄; θ_ζz̄ θ_ζζ̄ θ_ζw̄]`.
///
/// Every product in the expansion lowers the weight by exactly 4, the standard degree
/// by exactly 6 and the ζ-degree by at most 2. So if all terms of `θ` have weight and
/// standard degree at least 2 (as for any graph `P + Φ` with `Φ` of weight ≥ 3), a term
/// of the determinant of weight ≤ W, ζ-degree ≤ Z − 2 and standard degree ≤ S − 2 only
/// involves terms of `θ` inside its region `(W, Z, S)`, and the result is exact there.
/// Otherwise the region is the conservative one from the derivatives.
pub fn levi_determinant_of(theta: &WSeries) -> WSeries {
    let t = theta.trunc().effective();
    let graded = theta.iter().all(|(m, _)| m.weight() >= 2 && m.std_degree() >= 2);
    let entry = |x: WSeries| if graded { x.with_trunc(t) } else { x };
    let bars = [Var::Zbar, Var::Zetabar, Var::U];
    let r1: Vec<WSeries> = bars.iter().map(|v| theta.diff(*v)).collect();
    let r2: Vec<WSeries> = r1.iter().map(|x| entry(x.diff(Var::Z))).collect();
    let r3: Vec<WSeries> = r1.iter().map(|x| entry(x.diff(Var::Zeta))).collect();
    let r1: Vec<WSeries> = r1.into_iter().map(entry).collect();
    let minor = |a: usize, b: usize| r2[a].mul(&r3[b]).sub(&r2[b].mul(&r3[a]));
    let det = r1[0].mul(&minor(1, 2)).sub(&r1[1].mul(&minor(0, 2))).add(&r1[2].mul(&minor(0, 1)));
    if graded {
        det.with_trunc(Trunc::with_caps(t.weight, t.zeta - 2, t.degree - 2))
    } else {
        det
    }
}

pub fn levi_determinant(e: &ComplexDefEq) -> WSeries {
    levi_determinant_of(&e.theta)
}

/// Outcome of the 2-nondegeneracy checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NondegReport {
    /// The Levi determinant vanishes on its region.
    pub degenerate_to_order: bool,
    /// The graph has `zz̄` coefficient 1 and no `ζζ̄` term.
    pub kernel_rank_ok: bool,
    /// The graph has a nonzero `z²ζ̄` coefficient.
    pub two_nondeg_witness: bool,
}

pub fn validate_2nondegenerate(m: &Hypersurface) -> Result<NondegReport> {
    let graph = m.graph();
    let det = levi_determinant_of(&complex_from_graph(&graph)?);
    Ok(nondeg_report(&graph, &det))
}

/// The checks of [`validate_2nondegenerate`] from a graph and its Levi determinant.
pub fn nondeg_report(graph: &WSeries, det: &WSeries) -> NondegReport {
    let c = |k, l, a, b| graph.coeff(Mono::new(k, l, a, b, 0));
    NondegReport {
        degenerate_to_order: det.is_zero(),
        kernel_rank_ok: c(1, 0, 1, 0).is_one() && c(0, 1, 0, 1).is_zero(),
        two_nondeg_witness: !c(2, 0, 0, 1).is_zero(),
    }
}

/// Checks that every monomial of `Φ` has weight at least 3 and re-tags the hypersurface.
/// Killed-shape terms of weight ≥ 3 are allowed: they lie in constrained slots of the
/// normal form and are removed by the weight loop.
pub fn as_perturbation(m: &Hypersurface) -> Result<Hypersurface> {
    check_weight_floor(&m.phi)?;
    let mut out = m.clone();
    out.form = FormTag::PerturbationOfP;
    Ok(out)
}

/// Terms of the graph (not of `Φ`) that prenormalisation removes, excluding the two
/// model terms `zz̄`, `½z̄²ζ` and its conjugate at `u⁰`.
fn offending(graph: &WSeries) -> WSeries {
    graph.filter(|m| {
        if m.m() == 0 && matches!(m.exps(), [1, 0, 1, 0, _] | [0, 1, 2, 0, _] | [2, 0, 0, 1, _]) {
            return false;
        }
        is_killed_shape(m)
    })
}

fn harmonic_step_needed(lead: &WSeries) -> bool {
    lead.terms().iter().any(|(m, _)| m.alpha() == 0 && m.beta() == 0)
}

// H = Σ_{(k,l)≠0} Φ_{kl00} z^kζ^l + ½ Φ_{0000}; 2 Re H is the harmonic part.
fn harmonic_step(lead: &WSeries, t: Trunc) -> Result<MapJet> {
    let harmonic = lead.filter(|m| m.alpha() == 0 && m.beta() == 0);
    let hh = harmonic.filter(|m| m.k() + m.l() > 0).add(&harmonic.filter(|m| m.k() + m.l() == 0).scale(&GaussQ::ratio(1, 2)));
    let hw = HolJet::new(hh.with_trunc(t))?.scale(&GaussQ::from_parts(0, 1, -2, 1));
    Ok(MapJet::general(HolJet::zero(t), HolJet::zero(t), hw))
}

// One representative per conjugate pair: `χz̄` terms first, then `ρz̄²` terms
// that are not conjugates of those; `z²z̄²` is its own conjugate and is halved.
fn pair_step(lead: &WSeries, t: Trunc) -> Result<Option<MapJet>> {
    let chi = lead.filter(|m| m.alpha() == 1 && m.beta() == 0);
    let rho = lead
        .filter(|m| m.alpha() == 2 && m.beta() == 0 && (m.k(), m.l()) != (1, 0))
        .map_coeffs(|m, c| if (m.k(), m.l()) == (2, 0) { c.scale(&Rational::from_signeds(1, 2)) } else { c.clone() });
    let strip = |s: &WSeries, a: u32| s.relabel(|m| Some(Mono::new(m.k(), m.l(), m.alpha() - a, 0, m.m())), t);
    let f = HolJet::new(strip(&chi, 1))?;
    let g = HolJet::new(strip(&rho, 2))?.scale(&GaussQ::from_int(2));
    if f.is_zero() && g.is_zero() {
        return Ok(None);
    }
    Ok(Some(MapJet::general(f, g, HolJet::zero(t))))
}

/// Brings a raw germ `v = cz z̄ + q z²ζ̄ + …` to prenormalized form; returns the
/// prenormalized hypersurface and the map `H` with `H(M)` prenormalized.
///
/// After normalising `c = 1`, `q = ½` by a linear change, the passes run by ascending
/// standard degree of the offending terms: harmonic terms `2 Re H(z,ζ,u)` are absorbed
/// by `w ↦ w − 2iH(z,ζ,w)`; terms `2 Re(χ(z,ζ,u) z̄)` by `z ↦ z + χ(z,ζ,w)`; terms
/// `2 Re(ρ(z,ζ,u) z̄²)` by `ζ ↦ ζ + 2ρ(z,ζ,w)` (as `P_ζ = ½z̄² + …`).
pub fn prenormalize(m: &Hypersurface) -> Result<(Hypersurface, MapJet)> {
    let graph = m.graph();
    let t = graph.trunc();
    let c = graph.coeff(Mono::new(1, 0, 1, 0, 0));
    if c.is_zero() || !c.is_real() {
        return Err(Error::Validation("the zz̄ coefficient is not a nonzero real number".into()));
    }
    let q = graph.coeff(Mono::new(2, 0, 0, 1, 0)).checked_div(&c)?;
    if q.is_zero() {
        return Err(Error::Validation("no z²ζ̄ term: not 2-nondegenerate".into()));
    }
    let mu = q.conj().scale(&Rational::from(2));
    let mut total = MapJet::linear(&GaussQ::one(), &mu, &c.inv()?, t);
    // Every step preserves the standard-degree filtration, so offending terms of degree
    // ≤ cap are read off a pushforward on the window {std ≤ cap}. The window grows until
    // it is the whole region; only the last pushforward is a full one.
    let window = |cap: i32| Trunc { degree: cap.min(t.degree), ..t };
    let mut cap = 5;
    let mut graph = pushforward(&graph.with_trunc(window(cap)), &total)?;
    let bound = 4 * (t.degree.max(0) as usize) + 16;
    for _ in 0..bound {
        let off = offending(&graph);
        let Some(d) = off.min_std_degree() else {
            if cap >= t.degree {
                let h = Hypersurface::from_graph(&graph, m.trunc, FormTag::Prenormalized)?;
                return Ok((h, total));
            }
            cap += 3;
            graph = pushforward(&m.graph().with_trunc(window(cap)), &total)?;
            continue;
        };
        let lead = off.degree_component(d);
        let step = if !harmonic_step_needed(&lead) {
            pair_step(&lead, t)?.ok_or_else(|| Error::Validation(format!("cannot remove offending terms at degree {d}")))?
        } else {
            harmonic_step(&lead, t)?
        };
        graph = pushforward(&graph, &step)?;
        total = step.compose(&total)?;
    }
    Err(Error::NoConvergence("prenormalisation".into()))
}
