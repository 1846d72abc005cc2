use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use malachite_q::Rational;

use super::nspace::is_constrained;
use crate::error::{Error, Result};
use crate::linalg::{apply_left_inverse, sparse_row, Eliminator, SparseRow};
use crate::map::{MapJet, ShapeTag};
use crate::model::{levi_l, model_p_diff, w_on_model};
use crate::scalar::GaussQ;
use crate::series::{HolJet, Mono, Trunc, Var, WSeries};

/// Which component of a map jet an unknown belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Comp {
    F,
    G,
    H,
}

/// `L(f, g, h)` on the region `t`.
pub fn homological_l(j: &MapJet, t: Trunc) -> Result<WSeries> {
    levi_l(&j.f, &j.g, &j.h, t)
}

/// Options selecting the variant of the per-weight linear system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SolveOptions {
    /// Impose `f_zz = 0` (weight 3) and `Re h_ww = 0` (weight 4).
    pub shape: bool,
    /// Equations only at slots constrained by `N`; otherwise at every slot.
    pub constrained_only: bool,
    /// Drop the unknown `g(0)` (only relevant at weight 2).
    pub fix_origin: bool,
}

impl SolveOptions {
    pub const NORMAL_FORM: SolveOptions = SolveOptions { shape: true, constrained_only: true, fix_origin: true };
}

/// A complex unknown: the coefficient of `z^k ζ^l w^p` in one component.
type Unknown = (Comp, u32, u32, u32);

/// The linear system of a weight, independent of the right-hand side.
struct System {
    unknowns: Vec<Unknown>,
    /// Equation labels: a slot and a part (0 real, 1 imaginary); `None` for shape rows.
    rows: Vec<Option<(Mono, u8)>>,
    elim: Eliminator,
}

fn component_weight(c: Comp, m: i32) -> i32 {
    match c {
        Comp::F => m - 1,
        Comp::G => m - 2,
        Comp::H => m,
    }
}

fn unknowns(m: i32, t: Trunc, opts: SolveOptions) -> Vec<Unknown> {
    let mut out = Vec::new();
    let lmax = t.effective().degree - m;
    for c in [Comp::F, Comp::G, Comp::H] {
        let w = component_weight(c, m);
        if w < 0 {
            continue;
        }
        for p in 0..=(w / 2) {
            let k = (w - 2 * p) as u32;
            for l in 0..=lmax.max(-1) {
                if opts.fix_origin && c == Comp::G && k == 0 && p == 0 && l == 0 {
                    continue;
                }
                out.push((c, k, l as u32, p as u32));
            }
        }
    }
    out
}

/// Products `(u+iP)^p`, `(u+iP)^p P_z`, `(u+iP)^p P_ζ` on a region.
struct Images {
    wp: Vec<WSeries>,
    wpz: Vec<WSeries>,
    wpzeta: Vec<WSeries>,
    t: Trunc,
}

impl Images {
    fn new(t: Trunc, pmax: u32) -> Self {
        let w = w_on_model(t);
        let pz = model_p_diff(Var::Z, t);
        let pzeta = model_p_diff(Var::Zeta, t);
        let mut wp = vec![WSeries::one(t)];
        for _ in 0..pmax {
            let next = wp.last().unwrap().mul(&w);
            wp.push(next);
        }
        let wpz = wp.iter().map(|x| x.mul_poly(&pz, t)).collect();
        let wpzeta = wp.iter().map(|x| x.mul_poly(&pzeta, t)).collect();
        Images { wp, wpz, wpzeta, t }
    }

    /// `2L` of the jet `c · z^k ζ^l w^p` placed in component `comp`.
    fn image(&self, u: Unknown, c: &GaussQ) -> WSeries {
        let (comp, k, l, p) = u;
        let shift = Mono::new(k, l, 0, 0, 0);
        let x = match comp {
            Comp::F => self.wpz[p as usize].mul_term(shift, &c.scale(&Rational::from(2)), self.t),
            Comp::G => self.wpzeta[p as usize].mul_term(shift, &c.scale(&Rational::from(2)), self.t),
            Comp::H => self.wp[p as usize].mul_term(shift, &c.mul_i(), self.t),
        };
        x.add(&x.conj())
    }
}

fn cache() -> &'static Mutex<HashMap<(i32, Trunc, SolveOptions), Arc<System>>> {
    static CACHE: OnceLock<Mutex<HashMap<(i32, Trunc, SolveOptions), Arc<System>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn system(m: i32, t: Trunc, opts: SolveOptions) -> Arc<System> {
    let t = t.effective();
    let key = (m, t, opts);
    if let Some(s) = cache().lock().unwrap().get(&key) {
        return s.clone();
    }
    let s = Arc::new(build_system(m, t, opts));
    cache().lock().unwrap().insert(key, s.clone());
    s
}

fn build_system(m: i32, t: Trunc, opts: SolveOptions) -> System {
    let unknowns = unknowns(m, t, opts);
    let pmax = (m.max(0) / 2) as u32;
    let img = Images::new(t, pmax);
    // Column 2i is the real part of unknown i, column 2i+1 the imaginary part.
    let mut entries: HashMap<(Mono, u8), Vec<(usize, Rational)>> = HashMap::new();
    for (i, u) in unknowns.iter().enumerate() {
        for (part, c) in [(0usize, GaussQ::one()), (1usize, GaussQ::i())] {
            let col = 2 * i + part;
            for (mono, v) in img.image(*u, &c).iter() {
                if mono.weight() as i32 != m || mono > mono.conj() {
                    continue;
                }
                if opts.constrained_only && !is_constrained(mono) {
                    continue;
                }
                entries.entry((mono, 0)).or_default().push((col, v.re.clone()));
                if mono != mono.conj() {
                    entries.entry((mono, 1)).or_default().push((col, v.im.clone()));
                }
            }
        }
    }
    let mut keys: Vec<(Mono, u8)> = entries.keys().copied().collect();
    keys.sort();
    let mut elim = Eliminator::new(2 * unknowns.len());
    let mut rows = Vec::new();
    if opts.shape {
        for (i, u) in unknowns.iter().enumerate() {
            if m == 3 && *u == (Comp::F, 2, 0, 0) {
                for part in 0..2 {
                    elim.push(vec![(2 * i + part, Rational::from(1))]);
                    rows.push(None);
                }
            }
            if m == 4 && *u == (Comp::H, 0, 0, 2) {
                elim.push(vec![(2 * i, Rational::from(1))]);
                rows.push(None);
            }
        }
    }
    for key in keys {
        elim.push(sparse_row(entries.remove(&key).unwrap()));
        rows.push(Some(key));
    }
    System { unknowns, rows, elim }
}

/// Kernel dimension (over `R`) of `L` on jets of weight `m` (components of weights
/// `m−1, m−2, m`), with equations at every slot and no shape constraints.
pub fn kernel_dimension(m: i32, t: Trunc, fix_origin: bool) -> usize {
    let s = system(m, t, SolveOptions { shape: false, constrained_only: false, fix_origin });
    s.elim.ncols() - s.elim.rank()
}

/// Kernel dimension (over `R`) of the system [`solve_weight`] uses at weight `m`: v-space
/// unknowns with the shape constraints, equations at the constrained slots.
pub fn constrained_kernel_dimension(m: i32, t: Trunc) -> usize {
    let s = system(m, t, SolveOptions::NORMAL_FORM);
    s.elim.ncols() - s.elim.rank()
}

/// Result of the per-weight solve.
#[derive(Clone, Debug)]
pub struct WeightSolution {
    pub j: MapJet,
    pub n: WSeries,
}

/// Solves `2L(j) + n = ψ` for weight-`m` homogeneous real `ψ`, with `j` in the v-space
/// and `n ∈ N`, on the region of `ψ`.
pub fn solve_weight(m: u32, psi: &WSeries) -> Result<WeightSolution> {
    let t = psi.trunc().effective();
    let mi = m as i32;
    if psi.iter().any(|(mono, _)| mono.weight() != m) {
        return Err(Error::Decomposition { weight: m, reason: "right-hand side is not weight-homogeneous".into() });
    }
    if !psi.is_real() {
        return Err(Error::Decomposition { weight: m, reason: "right-hand side is not real".into() });
    }
    if m < 3 {
        return Err(Error::Decomposition { weight: m, reason: "weights below 3 are not in the v-space".into() });
    }
    let sys = system(mi, t, SolveOptions::NORMAL_FORM);
    let inv: Vec<SparseRow> = sys.elim.left_inverse().ok_or_else(|| Error::Decomposition {
        weight: m,
        reason: format!("constrained system has a kernel of dimension {}", sys.elim.ncols() - sys.elim.rank()),
    })?;
    let rhs: Vec<Rational> = sys
        .rows
        .iter()
        .map(|r| match r {
            None => Rational::from(0),
            Some((mono, 0)) => psi.coeff(*mono).re,
            Some((mono, _)) => psi.coeff(*mono).im,
        })
        .collect();
    let x = apply_left_inverse(&inv, &rhs);
    let mut terms: HashMap<Comp, Vec<((u32, u32, u32), GaussQ)>> = HashMap::new();
    for (i, (c, k, l, p)) in sys.unknowns.iter().enumerate() {
        let v = GaussQ::new(x[2 * i].clone(), x[2 * i + 1].clone());
        if !v.is_zero() {
            terms.entry(*c).or_default().push(((*k, *l, *p), v));
        }
    }
    let mut jt = |c: Comp| HolJet::from_terms(terms.remove(&c).unwrap_or_default(), t);
    let j = MapJet { f: jt(Comp::F), g: jt(Comp::G), h: jt(Comp::H), shape: ShapeTag::VSpace };
    let two_l = homological_l(&j, t)?.scale(&GaussQ::from_int(2));
    let n = psi.sub(&two_l);
    let bad: Vec<Mono> = n.iter().filter(|(mono, _)| is_constrained(*mono)).map(|(mono, _)| mono).take(4).collect();
    if !bad.is_empty() {
        return Err(Error::Decomposition { weight: m, reason: format!("inconsistent system, residual at {bad:?}") });
    }
    Ok(WeightSolution { j, n })
}

