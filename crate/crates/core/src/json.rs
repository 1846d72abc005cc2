//! The exact JSON interchange format.
//!
//! Every coefficient is a pair of rational strings (`"p/q"`, or `"p"` for integers,
//! reduced, positive denominator); term lists follow the canonical monomial order of
//! [`WSeries`]. Series are listed on the whole working region of their truncation
//! (weight ≤ W, standard degree ≤ W + D), which is what normalisation needs to be exact
//! on the declared rectangle. Documents are emitted pretty-printed with a trailing newline, so reports
//! are byte-identical for identical inputs.

use malachite_q::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypersurface::{Hypersurface, NondegReport};
use crate::map::MapJet;
use crate::model::{FlowGen, GroupElement};
use crate::normalform::{NFReport, NormalizeParams};
use crate::scalar::GaussQ;
use crate::series::{HolJet, Mono, Trunc, WSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncJson {
    pub weight: i32,
    pub zeta_degree: i32,
}

impl TruncJson {
    pub fn from_trunc(t: Trunc) -> Self {
        TruncJson { weight: t.weight, zeta_degree: t.zeta }
    }

    pub fn to_trunc(self) -> Result<Trunc> {
        Trunc::checked(self.weight, self.zeta_degree)
    }
}

/// A term `c z^k ζ^l z̄^α ζ̄^β u^m` of a real-analytic series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub z: u32,
    pub zeta: u32,
    pub zbar: u32,
    pub zetabar: u32,
    pub u: u32,
    pub re: String,
    pub im: String,
}

/// A term `c z^k ζ^l w^m` of a holomorphic jet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HolTermJson {
    pub z: u32,
    pub zeta: u32,
    pub w: u32,
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub re: String,
    pub im: String,
}

impl ComplexJson {
    pub fn from_gauss(c: &GaussQ) -> Self {
        ComplexJson { re: GaussQ::rational_string(&c.re), im: GaussQ::rational_string(&c.im) }
    }

    pub fn to_gauss(&self) -> Result<GaussQ> {
        parse_gauss(&self.re, &self.im)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypersurfaceJson {
    pub truncation: TruncJson,
    pub phi: Vec<TermJson>,
}

/// Input of `reconstruct`: the distinguished part `χ` (no `ζ̄`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChiJson {
    pub truncation: TruncJson,
    pub chi: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapJson {
    pub f: Vec<HolTermJson>,
    pub g: Vec<HolTermJson>,
    pub h: Vec<HolTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsJson {
    pub a: ComplexJson,
    pub lambda: ComplexJson,
    pub s: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphericityJson {
    pub spherical: bool,
    pub phi3002: ComplexJson,
    pub phi5001: ComplexJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NFReportJson {
    pub truncation: TruncJson,
    pub normal_phi: Vec<TermJson>,
    pub map: MapJson,
    pub params: ParamsJson,
    pub sphericity: SphericityJson,
    pub distinguished: Vec<TermJson>,
    pub violations: Vec<[u32; 5]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NondegJson {
    pub degenerate_to_order: bool,
    pub kernel_rank_ok: bool,
    pub two_nondeg_witness: bool,
}

impl From<NondegReport> for NondegJson {
    fn from(r: NondegReport) -> Self {
        NondegJson {
            degenerate_to_order: r.degenerate_to_order,
            kernel_rank_ok: r.kernel_rank_ok,
            two_nondeg_witness: r.two_nondeg_witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyJson {
    pub levi_residual_zero: bool,
    pub normal_form_ok: bool,
    pub reality_ok: bool,
    pub nondeg_report: NondegJson,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimsJson {
    pub g: usize,
    pub h: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub grading_ok: bool,
    pub jacobi_ok: bool,
    pub tangency_ok: bool,
    pub cone_ok: bool,
    pub dims: DimsJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowJson {
    pub gen: String,
    pub t: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupElementJson {
    pub lambda: ComplexJson,
    pub flows: Vec<FlowJson>,
}

/// Written instead of the report when a command fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorJson {
    pub error: String,
    pub message: String,
    pub violations: Vec<[u32; 5]>,
}

pub fn parse_gauss(re: &str, im: &str) -> Result<GaussQ> {
    Ok(GaussQ::new(GaussQ::parse_rational(re)?, GaussQ::parse_rational(im)?))
}

pub fn series_to_json(s: &WSeries) -> Vec<TermJson> {
    s.iter()
        .map(|(m, c)| {
            let [z, zeta, zbar, zetabar, u] = m.exps();
            TermJson {
                z,
                zeta,
                zbar,
                zetabar,
                u,
                re: GaussQ::rational_string(&c.re),
                im: GaussQ::rational_string(&c.im),
            }
        })
        .collect()
}

/// Builds a series on `t`. Repeated monomials and monomials outside `t` are schema errors.
pub fn series_from_json(terms: &[TermJson], t: Trunc) -> Result<WSeries> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::with_capacity(terms.len());
    for term in terms {
        let e = [term.z, term.zeta, term.zbar, term.zetabar, term.u];
        if e.iter().any(|&x| x > 60) {
            return Err(Error::Parse(format!("exponent out of range in {e:?}")));
        }
        let m = Mono::from_array(e);
        if !t.contains(m) {
            return Err(Error::Parse(format!("term {e:?} lies outside truncation {t}")));
        }
        if !seen.insert(e) {
            return Err(Error::Parse(format!("repeated term {e:?}")));
        }
        out.push((m, parse_gauss(&term.re, &term.im)?));
    }
    Ok(WSeries::from_terms(out, t))
}

pub fn jet_to_json(j: &HolJet) -> Vec<HolTermJson> {
    j.terms()
        .map(|((z, zeta, w), c)| HolTermJson {
            z,
            zeta,
            w,
            re: GaussQ::rational_string(&c.re),
            im: GaussQ::rational_string(&c.im),
        })
        .collect()
}

pub fn jet_from_json(terms: &[HolTermJson], t: Trunc) -> Result<HolJet> {
    let mut out = Vec::with_capacity(terms.len());
    for term in terms {
        if [term.z, term.zeta, term.w].iter().any(|&x| x > 60) {
            return Err(Error::Parse(format!("exponent out of range in {:?}", (term.z, term.zeta, term.w))));
        }
        out.push(((term.z, term.zeta, term.w), parse_gauss(&term.re, &term.im)?));
    }
    Ok(HolJet::from_terms(out, t))
}

pub fn map_to_json(m: &MapJet) -> MapJson {
    MapJson { f: jet_to_json(&m.f), g: jet_to_json(&m.g), h: jet_to_json(&m.h) }
}

pub fn hypersurface_to_json(m: &Hypersurface) -> HypersurfaceJson {
    HypersurfaceJson { truncation: TruncJson::from_trunc(m.trunc), phi: series_to_json(&m.phi_working()) }
}

/// `Φ` and its declared truncation. The terms may fill the working region of the
/// truncation (weight ≤ W, standard degree ≤ W + D).
pub fn hypersurface_phi(doc: &HypersurfaceJson) -> Result<(WSeries, Trunc)> {
    let t = doc.truncation.to_trunc()?;
    let phi = series_from_json(&doc.phi, Trunc::working(t.weight, t.zeta))?;
    Ok((phi, t))
}

pub fn params_to_json(p: &NormalizeParams) -> ParamsJson {
    ParamsJson {
        a: ComplexJson::from_gauss(&p.a),
        lambda: ComplexJson::from_gauss(&p.lambda),
        s: GaussQ::rational_string(&p.s),
    }
}

pub fn params_from_json(p: &ParamsJson) -> Result<NormalizeParams> {
    Ok(NormalizeParams { a: p.a.to_gauss()?, lambda: p.lambda.to_gauss()?, s: GaussQ::parse_rational(&p.s)? })
}

pub fn sphericity_to_json(phi3002: &GaussQ, phi5001: &GaussQ) -> SphericityJson {
    SphericityJson {
        spherical: phi3002.is_zero() && phi5001.is_zero(),
        phi3002: ComplexJson::from_gauss(phi3002),
        phi5001: ComplexJson::from_gauss(phi5001),
    }
}

pub fn nf_report_to_json(r: &NFReport) -> NFReportJson {
    NFReportJson {
        truncation: TruncJson::from_trunc(r.trunc),
        normal_phi: series_to_json(&r.normal_phi),
        map: map_to_json(&r.map),
        params: params_to_json(&r.params),
        sphericity: sphericity_to_json(&r.sphericity.0, &r.sphericity.1),
        distinguished: series_to_json(&r.distinguished),
        violations: Vec::new(),
    }
}

pub fn group_element_to_json(g: &GroupElement) -> GroupElementJson {
    GroupElementJson {
        lambda: ComplexJson::from_gauss(&g.lambda),
        flows: g
            .flows
            .iter()
            .map(|(gen, t)| FlowJson { gen: gen.name().to_string(), t: GaussQ::rational_string(t) })
            .collect(),
    }
}

pub fn group_element_from_json(doc: &GroupElementJson) -> Result<GroupElement> {
    let flows = doc
        .flows
        .iter()
        .map(|f| Ok((FlowGen::parse(&f.gen)?, GaussQ::parse_rational(&f.t)?)))
        .collect::<Result<Vec<(FlowGen, Rational)>>>()?;
    Ok(GroupElement { lambda: doc.lambda.to_gauss()?, flows })
}

/// Canonical text of a document.
pub fn emit<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report types always serialise");
    s.push('\n');
    s
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}
