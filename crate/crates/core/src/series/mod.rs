//! Weighted truncated power series in `z, ζ, z̄, ζ̄, u`.
//!
//! Weights are `[z] = [z̄] = 1`, `[ζ] = [ζ̄] = 0`, `[u] = 2`. Because the Levi-kernel
//! variable has weight zero, weight-homogeneous pieces are infinite in `ζ, ζ̄`, so a
//! series is only known on a finite region of exponent space described by [`Trunc`].

mod hol;
mod mono;
mod subst;

pub use hol::HolJet;
pub use mono::{Mono, Var};
pub use subst::{output_trunc, substitute, SubstSlots};

use std::fmt;

use malachite_q::Rational;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::scalar::GaussQ;

/// The region of exponent space on which a series is exact.
///
/// A monomial with weighted degree `w = k + α + 2m` and ζ-degree `d = l + β` is inside
/// the region iff `w <= weight`, `d <= zeta` and `w + d <= degree`. `w + d` is the
/// standard degree (all of `z, ζ, z̄, ζ̄` of degree one and `u` of degree two).
///
/// [`Trunc::new`] gives the plain rectangle `(W, D)`. The third cap exists because
/// substituting `ζ ↦ ζ + g` with `g` of positive weight but ζ-degree zero does not
/// preserve a ζ-degree cap, while it does preserve a cap on the standard degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Trunc {
    pub weight: i32,
    pub zeta: i32,
    pub degree: i32,
}

impl Trunc {
    /// Caps large enough to hold any polynomial used here exactly.
    pub const EXACT: Trunc = Trunc { weight: 1 << 12, zeta: 1 << 12, degree: 1 << 12 };

    /// The rectangle `weight <= w, zeta-degree <= d`.
    pub fn new(w: i32, d: i32) -> Self {
        Trunc { weight: w, zeta: d, degree: w + d }
    }

    pub fn with_caps(weight: i32, zeta: i32, degree: i32) -> Self {
        Trunc { weight, zeta, degree }
    }

    /// Validated user-facing rectangle: `W >= 3`, `D >= 0`.
    pub fn checked(w: i32, d: i32) -> Result<Self> {
        if w < 3 {
            return Err(Error::Truncation(format!("weight cap must be >= 3, got {w}")));
        }
        if d < 0 {
            return Err(Error::Truncation(format!("zeta cap must be >= 0, got {d}")));
        }
        Ok(Trunc::new(w, d))
    }

    /// The region `weight <= W, standard degree <= W + D`. It contains the rectangle
    /// `(W, D)` and is closed under every substitution used by the normalisation.
    pub fn working(w: i32, d: i32) -> Self {
        Trunc { weight: w, zeta: w + d, degree: w + d }
    }

    /// The largest rectangle contained in this region whose weight cap is `self.weight`.
    pub fn report(&self, d: i32) -> Trunc {
        Trunc::new(self.weight, d.min(self.zeta).min(self.degree - self.weight))
    }

    pub fn meet(&self, other: &Trunc) -> Trunc {
        Trunc {
            weight: self.weight.min(other.weight),
            zeta: self.zeta.min(other.zeta),
            degree: self.degree.min(other.degree),
        }
    }

    pub fn contains(&self, m: Mono) -> bool {
        self.contains_wd(m.weight() as i32, m.zdeg() as i32)
    }

    #[inline]
    pub fn contains_wd(&self, w: i32, d: i32) -> bool {
        w <= self.weight && d <= self.zeta && w + d <= self.degree
    }

    /// True if every monomial of `self` is also inside `other`.
    pub fn within(&self, other: &Trunc) -> bool {
        let e = self.effective();
        let o = other.effective();
        e.is_empty() || (e.weight <= o.weight && e.zeta <= o.zeta && e.degree <= o.degree)
    }

    /// Tightened caps (e.g. `zeta` never exceeding `degree`).
    pub fn effective(&self) -> Trunc {
        let weight = self.weight.min(self.degree);
        let zeta = self.zeta.min(self.degree);
        let degree = self.degree.min(weight + zeta);
        Trunc { weight, zeta, degree }
    }

    pub fn is_empty(&self) -> bool {
        self.weight < 0 || self.zeta < 0 || self.degree < 0
    }

    /// Caps shifted down by the weight / ζ-degree / standard degree of a variable,
    /// which is what differentiation in that variable costs.
    pub fn lowered(&self, var: Var) -> Trunc {
        let (w, d) = var.weight_zdeg();
        Trunc { weight: self.weight - w, zeta: self.zeta - d, degree: self.degree - w - d }
    }

    /// Caps shifted up by the degrees of `m` (the region a product by `m` maps into).
    pub fn raised(&self, m: Mono) -> Trunc {
        let w = m.weight() as i32;
        let d = m.zdeg() as i32;
        Trunc { weight: self.weight + w, zeta: self.zeta + d, degree: self.degree + w + d }
    }

    /// Number of `u`-powers retained for a given `z, z̄` degree.
    pub fn max_u_power(&self, k: u32, alpha: u32) -> i32 {
        let rest = self.weight - (k + alpha) as i32;
        if rest < 0 {
            -1
        } else {
            rest / 2
        }
    }
}

impl fmt::Display for Trunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(W={}, D={}, S={})", self.weight, self.zeta, self.degree)
    }
}

/// A truncated series with Gaussian-rational coefficients.
///
/// Terms are kept sorted in the canonical order (weighted degree, then `k, l, α, β, m`
/// lexicographically); zero coefficients and monomials outside `trunc` are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct WSeries {
    terms: Vec<(Mono, GaussQ)>,
    trunc: Trunc,
}

impl WSeries {
    pub fn zero(trunc: Trunc) -> Self {
        WSeries { terms: Vec::new(), trunc }
    }

    pub fn one(trunc: Trunc) -> Self {
        WSeries::constant(GaussQ::one(), trunc)
    }

    pub fn constant(c: GaussQ, trunc: Trunc) -> Self {
        WSeries::monomial(Mono::ONE, c, trunc)
    }

    pub fn monomial(m: Mono, c: GaussQ, trunc: Trunc) -> Self {
        let terms = if c.is_zero() || !trunc.contains(m) { Vec::new() } else { vec![(m, c)] };
        WSeries { terms, trunc }
    }

    /// A single variable.
    pub fn var(v: Var, trunc: Trunc) -> Self {
        WSeries::monomial(v.mono(), GaussQ::one(), trunc)
    }

    /// Builds a series from arbitrary terms; duplicates are summed, terms outside the
    /// region dropped.
    pub fn from_terms<I: IntoIterator<Item = (Mono, GaussQ)>>(terms: I, trunc: Trunc) -> Self {
        let mut acc: FxHashMap<Mono, GaussQ> = FxHashMap::default();
        for (m, c) in terms {
            if trunc.contains(m) {
                *acc.entry(m).or_default() += c;
            }
        }
        WSeries::from_map(acc, trunc)
    }

    fn from_map(acc: FxHashMap<Mono, GaussQ>, trunc: Trunc) -> Self {
        let mut terms: Vec<(Mono, GaussQ)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|(m, _)| *m);
        WSeries { terms, trunc }
    }

    /// Builds from terms already sorted, unique, nonzero and inside `trunc`.
    fn from_sorted(terms: Vec<(Mono, GaussQ)>, trunc: Trunc) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        WSeries { terms, trunc }
    }

    pub fn trunc(&self) -> Trunc {
        self.trunc
    }

    pub fn terms(&self) -> &[(Mono, GaussQ)] {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (Mono, &GaussQ)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if no term is stored (the series vanishes on its region).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Mono) -> GaussQ {
        match self.terms.binary_search_by_key(&m, |(k, _)| *k) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => GaussQ::zero(),
        }
    }

    pub fn coeff_of(&self, k: u32, l: u32, alpha: u32, beta: u32, m: u32) -> GaussQ {
        self.coeff(Mono::new(k, l, alpha, beta, m))
    }

    /// The coefficient function `Φ_{klαβ}(u)` as a list of coefficients by `u`-power,
    /// of length `⌊(W - k - α)/2⌋ + 1` (empty if `k + α > W`).
    pub fn coeff_fn(&self, k: u32, l: u32, alpha: u32, beta: u32) -> Vec<GaussQ> {
        let top = self.trunc.max_u_power(k, alpha);
        (0..=top).map(|m| self.coeff(Mono::new(k, l, alpha, beta, m as u32))).collect()
    }

    /// Restriction to a smaller region.
    pub fn truncate(&self, trunc: Trunc) -> WSeries {
        let t = self.trunc.meet(&trunc);
        let terms = self.terms.iter().filter(|(m, _)| t.contains(*m)).cloned().collect();
        WSeries::from_sorted(terms, t)
    }

    /// Re-labels the region without dropping or adding information checks. Used when
    /// the caller knows the stored terms are the complete series on `trunc` (for
    /// example a polynomial, or a partial solution whose missing parts are known not to
    /// influence the quantity being computed).
    pub fn with_trunc(&self, trunc: Trunc) -> WSeries {
        let terms = self.terms.iter().filter(|(m, _)| trunc.contains(*m)).cloned().collect();
        WSeries::from_sorted(terms, trunc)
    }

    pub fn neg(&self) -> WSeries {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        WSeries::from_sorted(terms, self.trunc)
    }

    pub fn scale(&self, c: &GaussQ) -> WSeries {
        if c.is_zero() {
            return WSeries::zero(self.trunc);
        }
        let terms = self.terms.iter().map(|(m, x)| (*m, x * c)).collect();
        WSeries::from_sorted(terms, self.trunc)
    }

    pub fn scale_rational(&self, r: &Rational) -> WSeries {
        self.scale(&GaussQ::real(r.clone()))
    }

    pub fn add(&self, other: &WSeries) -> WSeries {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &WSeries) -> WSeries {
        self.combine(other, true)
    }

    fn combine(&self, other: &WSeries, negate: bool) -> WSeries {
        let t = self.trunc.meet(&other.trunc);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                if t.contains(a[i].0) {
                    out.push(a[i].clone());
                }
                i += 1;
            } else if take_b {
                if t.contains(b[j].0) {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                }
                j += 1;
            } else {
                if t.contains(a[i].0) {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                }
                i += 1;
                j += 1;
            }
        }
        WSeries::from_sorted(out, t)
    }

    /// Truncated product; the result lives on the meet of the two regions.
    pub fn mul(&self, other: &WSeries) -> WSeries {
        self.mul_into(other, self.trunc.meet(&other.trunc))
    }

    /// Product restricted to `out` (further met with both input regions).
    pub fn mul_into(&self, other: &WSeries, out: Trunc) -> WSeries {
        let t = self.trunc.meet(&other.trunc).meet(&out).effective();
        if t.is_empty() || self.is_zero() || other.is_zero() {
            return WSeries::zero(t);
        }
        if self.terms.len() == 1 {
            return other.mul_term(self.terms[0].0, &self.terms[0].1, t);
        }
        if other.terms.len() == 1 {
            return self.mul_term(other.terms[0].0, &other.terms[0].1, t);
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let buckets = Buckets::new(big, t);
        let mut acc: FxHashMap<Mono, GaussQ> = FxHashMap::default();
        for (m1, c1) in small.terms.iter() {
            let w1 = m1.weight() as i32;
            let d1 = m1.zdeg() as i32;
            if !t.contains_wd(w1, d1) {
                continue;
            }
            for w2 in 0..=(t.weight - w1).min(buckets.max_w) {
                let dmax = (t.zeta - d1).min(t.degree - w1 - d1 - w2);
                if dmax < 0 {
                    continue;
                }
                let row = &buckets.cells[w2 as usize];
                for d2 in 0..=dmax.min(row.len() as i32 - 1) {
                    for (m2, c2) in row[d2 as usize].iter() {
                        acc.entry(*m1 + *m2).or_default().add_mul(c1, c2);
                    }
                }
            }
        }
        WSeries::from_map(acc, t)
    }

    /// Product by a single term `c * m`.
    pub fn mul_term(&self, m: Mono, c: &GaussQ, out: Trunc) -> WSeries {
        let t = self.trunc.raised(m).meet(&out);
        if c.is_zero() {
            return WSeries::zero(t);
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(mm, x)| {
                let p = *mm + m;
                if t.contains(p) {
                    Some((p, x * c))
                } else {
                    None
                }
            })
            .collect();
        WSeries::from_sorted(terms, t)
    }

    /// Minimum `(weight, ζ-degree, standard degree)` over stored terms, each taken
    /// separately; `None` for the zero series.
    pub fn valuation(&self) -> Option<(i32, i32, i32)> {
        let mut it = self.terms.iter().map(|(m, _)| (m.weight() as i32, m.zdeg() as i32, m.std_degree() as i32));
        let first = it.next()?;
        Some(it.fold(first, |a, b| (a.0.min(b.0), a.1.min(b.1), a.2.min(b.2))))
    }

    /// Product with a series whose stored terms are its complete expansion (a
    /// polynomial). The unknown tail of `self` stays unknown after the product, but is
    /// pushed up by the valuation of `poly`, so the result is exact on a region larger
    /// than `self.trunc()`; the result is restricted to `out`.
    pub fn mul_poly(&self, poly: &WSeries, out: Trunc) -> WSeries {
        let t = match poly.valuation() {
            None => return WSeries::zero(out),
            Some((w, d, s)) => Trunc::with_caps(self.trunc.weight + w, self.trunc.zeta + d, self.trunc.degree + s),
        };
        let a = self.with_trunc(Trunc::EXACT);
        let b = poly.with_trunc(Trunc::EXACT);
        a.mul_into(&b, t.meet(&out).meet(&poly.trunc))
    }

    pub fn square(&self) -> WSeries {
        self.mul(self)
    }

    pub fn pow(&self, e: u32) -> WSeries {
        let mut acc = WSeries::one(self.trunc);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Complex conjugation: `z ↔ z̄`, `ζ ↔ ζ̄`, coefficients conjugated.
    pub fn conj(&self) -> WSeries {
        let mut terms: Vec<(Mono, GaussQ)> = self.terms.iter().map(|(m, c)| (m.conj(), c.conj())).collect();
        terms.sort_unstable_by_key(|(m, _)| *m);
        WSeries::from_sorted(terms, self.trunc)
    }

    /// `Φ_{klαβ} = conj(Φ_{αβkl})` for every stored exponent.
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(m, c)| {
            let mc = m.conj();
            if mc == *m {
                c.is_real()
            } else {
                self.coeff(mc) == c.conj()
            }
        })
    }

    /// `Re(a) = (a + conj a)/2`.
    pub fn re(&self) -> WSeries {
        self.add(&self.conj()).scale(&GaussQ::ratio(1, 2))
    }

    /// `Im(a) = (a - conj a)/(2i)`.
    pub fn im(&self) -> WSeries {
        self.sub(&self.conj()).scale(&GaussQ::from_parts(0, 1, -1, 2))
    }

    /// Monomials of weighted degree exactly `w`.
    pub fn weighted_component(&self, w: u32) -> WSeries {
        self.filter(|m| m.weight() == w)
    }

    /// Monomials of standard degree exactly `s`.
    pub fn degree_component(&self, s: u32) -> WSeries {
        self.filter(|m| m.std_degree() == s)
    }

    pub fn filter<F: Fn(Mono) -> bool>(&self, keep: F) -> WSeries {
        let terms = self.terms.iter().filter(|(m, _)| keep(*m)).cloned().collect();
        WSeries::from_sorted(terms, self.trunc)
    }

    /// Applies `f` to each coefficient (for example a monomial-wise rescaling).
    pub fn map_coeffs<F: Fn(Mono, &GaussQ) -> GaussQ>(&self, f: F) -> WSeries {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, f(*m, c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        WSeries::from_sorted(terms, self.trunc)
    }

    pub fn min_weight(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.weight())
    }

    /// Lowest standard degree among stored terms.
    pub fn min_std_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.std_degree()).min()
    }

    /// Formal partial derivative. The region loses the degrees of `var`.
    pub fn diff(&self, var: Var) -> WSeries {
        let t = self.trunc.lowered(var);
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exp(var);
                if e == 0 {
                    return None;
                }
                let dm = m.dec(var);
                if !t.contains(dm) {
                    return None;
                }
                Some((dm, c.scale(&Rational::from(e))))
            })
            .collect();
        WSeries::from_sorted(terms, t)
    }

    /// Inverse of a series with invertible constant term, by the geometric series
    /// `1/(c(1 - x)) = c⁻¹ Σ xⁿ`, which terminates because `x` has positive standard
    /// order.
    pub fn inverse(&self) -> Result<WSeries> {
        let c = self.coeff(Mono::ONE);
        let cinv = c.inv()?;
        let t = self.trunc;
        let x = WSeries::one(t).sub(&self.scale(&cinv));
        let mut acc = WSeries::one(t);
        let mut term = WSeries::one(t);
        for _ in 0..=(t.degree.max(0) + 1) {
            term = term.mul(&x);
            if term.is_zero() {
                return Ok(acc.scale(&cinv));
            }
            acc = acc.add(&term);
        }
        Err(Error::NoConvergence("series inverse".into()))
    }

    /// Maps every monomial through `f` (an exponent relabelling such as the
    /// substitution `ζ̄ = 0`); monomials mapped to `None` are dropped.
    pub fn relabel<F: Fn(Mono) -> Option<Mono>>(&self, f: F, trunc: Trunc) -> WSeries {
        WSeries::from_terms(self.terms.iter().filter_map(|(m, c)| f(*m).map(|n| (n, c.clone()))), trunc)
    }
}

impl fmt::Debug for WSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WSeries{} [", self.trunc)?;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){m:?}")?;
        }
        write!(f, "]")
    }
}

/// Terms of a series grouped by (weight, ζ-degree) so that products can skip whole
/// blocks falling outside the region.
struct Buckets<'a> {
    cells: Vec<Vec<Vec<(Mono, &'a GaussQ)>>>,
    max_w: i32,
}

impl<'a> Buckets<'a> {
    fn new(s: &'a WSeries, t: Trunc) -> Self {
        let top_w = s.terms.iter().map(|(m, _)| m.weight() as i32).max().unwrap_or(0);
        let top_d = s.terms.iter().map(|(m, _)| m.zdeg() as i32).max().unwrap_or(0);
        let max_w = t.weight.min(top_w).max(0);
        let max_d = t.zeta.min(t.degree).min(top_d).max(0);
        let mut cells: Vec<Vec<Vec<(Mono, &GaussQ)>>> =
            (0..=max_w).map(|_| (0..=max_d).map(|_| Vec::new()).collect()).collect();
        for (m, c) in s.terms.iter() {
            let w = m.weight() as i32;
            let d = m.zdeg() as i32;
            if t.contains_wd(w, d) {
                cells[w as usize][d as usize].push((*m, c));
            }
        }
        Buckets { cells, max_w }
    }
}
