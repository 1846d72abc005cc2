#![allow(dead_code)]

use lightcone::map::MapJet;
use lightcone::series::{substitute, Mono, SubstSlots, Trunc, Var, WSeries};
use lightcone::GaussQ;
use rand::Rng;

pub fn q(n: i64, d: i64) -> GaussQ {
    GaussQ::ratio(n, d)
}

pub fn series(terms: &[([u32; 5], GaussQ)], t: Trunc) -> WSeries {
    WSeries::from_terms(terms.iter().map(|(e, c)| (Mono::from_array(*e), c.clone())), t)
}

/// A small nonzero Gaussian rational.
pub fn small<R: Rng>(rng: &mut R) -> GaussQ {
    loop {
        let c = GaussQ::from_parts(rng.gen_range(-3..=3), rng.gen_range(1..=3), rng.gen_range(-3..=3), rng.gen_range(1..=3));
        if !c.is_zero() {
            return c;
        }
    }
}

/// A random admissible distinguished part with at most `n` support monomials (counting a
/// `ζ`-free monomial and its conjugate once).
pub fn random_chi<R: Rng>(rng: &mut R, w: u32, d: u32, n: usize) -> WSeries {
    let t = Trunc::working(w as i32, d as i32);
    let excluded = [[0, 1, 3], [0, 1, 4], [1, 1, 3], [1, 1, 4], [3, 0, 3]];
    let mut terms: Vec<(Mono, GaussQ)> = Vec::new();
    let mut tries = 0;
    while terms.len() < n && tries < 1000 {
        tries += 1;
        let a = rng.gen_range(3..=w);
        let k = rng.gen_range(0..=(w - a));
        let m = rng.gen_range(0..=((w - a - k) / 2));
        let l = rng.gen_range(0..=d.min(3));
        if excluded.contains(&[k, l, a]) || terms.iter().any(|(mm, _)| mm.exps()[..4] == [k, l, a, 0]) {
            continue;
        }
        let c = small(rng);
        if l == 0 {
            if k < 3 || k == a {
                continue;
            }
            terms.push((Mono::new(k, 0, a, 0, m), c.clone()));
            terms.push((Mono::new(a, 0, k, 0, m), c.conj()));
        } else {
            terms.push((Mono::new(k, l, a, 0, m), c));
        }
    }
    WSeries::from_terms(terms, t)
}

/// Bordered complex Hessian of `r = φ(z, ζ, z̄, ζ̄, (w+w̄)/2) − (w − w̄)/2i`: vanishes on
/// the hypersurface iff its Levi form is degenerate.
pub fn bordered_levi(phi: &WSeries) -> WSeries {
    let t = phi.trunc();
    let half = q(1, 2);
    let c = WSeries::constant(GaussQ::from_parts(0, 1, 1, 2), t);
    let d = |x: &WSeries, v: Var| x.diff(v);
    let pu = d(phi, Var::U);
    // ∂_w = ∂_w̄ = ½∂_u on functions of u; ∂_w(−(w−w̄)/2i) = i/2, ∂_w̄ of it = −i/2.
    let rw = pu.scale(&half).add(&c);
    let rwb = pu.scale(&half).sub(&c);
    let rz = d(phi, Var::Z);
    let rzeta = d(phi, Var::Zeta);
    let rzb = d(phi, Var::Zbar);
    let rzetab = d(phi, Var::Zetabar);
    let holo = [&rz, &rzeta, &rw];
    let mixed = |x: &WSeries, v: Var| if v == Var::U { d(x, Var::U).scale(&half) } else { d(x, v) };
    let bars = [Var::Zbar, Var::Zetabar, Var::U];
    let hess: Vec<Vec<WSeries>> = [Var::Z, Var::Zeta, Var::U]
        .iter()
        .map(|hv| {
            let first = if *hv == Var::U { pu.scale(&half) } else { d(phi, *hv) };
            bars.iter().map(|bv| mixed(&first, *bv)).collect()
        })
        .collect();
    let border = [&rzb, &rzetab, &rwb];
    // det [[0, b], [h, H]] = −Σ_{i,j} h_i b_j (−1)^{i+j} M_ij, M_ij the minor of H.
    let mut total = WSeries::zero(t);
    for i in 0..3 {
        for j in 0..3 {
            let rows: Vec<usize> = (0..3).filter(|&r| r != i).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != j).collect();
            let minor = hess[rows[0]][cols[0]].mul(&hess[rows[1]][cols[1]]).sub(&hess[rows[0]][cols[1]].mul(&hess[rows[1]][cols[0]]));
            let term = holo[i].mul(border[j]).mul(&minor);
            total = if (i + j) % 2 == 0 { total.sub(&term) } else { total.add(&term) };
        }
    }
    total
}

/// `Im H_w − φ'(H_z, H_ζ, H̄_z, H̄_ζ, Re H_w)` on the points `w = u + iφ` of `M`:
/// zero iff `H` maps `v = φ` into `v = φ'`.
pub fn image_residual(phi: &WSeries, h: &MapJet, phi2: &WSeries) -> WSeries {
    let t = phi.trunc().meet(&phi2.trunc());
    let u = WSeries::var(Var::U, t);
    let w = u.add(&phi.scale(&GaussQ::i()));
    let wb = u.sub(&phi.scale(&GaussQ::i()));
    let (hz, hzeta, hw) = h.components();
    let a = hw.eval_w(&w).unwrap();
    let b = hw.eval_conj_w(&wb).unwrap();
    let slots = SubstSlots {
        z: Some(hz.eval_w(&w).unwrap()),
        zeta: Some(hzeta.eval_w(&w).unwrap()),
        zbar: Some(hz.eval_conj_w(&wb).unwrap()),
        zetabar: Some(hzeta.eval_conj_w(&wb).unwrap()),
        u: Some(a.add(&b).scale(&q(1, 2))),
    };
    let im = a.sub(&b).scale(&GaussQ::from_parts(0, 1, -1, 2));
    im.sub(&substitute(phi2, &slots, None).unwrap()).truncate(t)
}
