//! Acceptance criteria, one test each. Every test prints a single `PASS`/`FAIL` line with
//! its wall time against the time budget; a criterion over budget fails.
//!
//! Default truncation is W = 8, D = 6 unless the criterion names another.

mod common;

use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{bordered_levi, image_residual, random_chi, small};
use lightcone::cli::{cone_sample, EXIT_OK};
use lightcone::hypersurface::{as_perturbation, killed_terms, prenormalize, pushforward, FormTag, Hypersurface};
use lightcone::map::{MapJet, ShapeTag};
use lightcone::model::{algebra_basis, bracket, grading_failures, jacobi_failures, model_p, scaling_map};
use lightcone::normalform::{
    constrained_kernel_dimension, extract_distinguished, is_in_normal_form, kernel_dimension, normalize, solve_weight,
    NormalizeParams,
};
use lightcone::reconstruct::{reconstruct, residual_check, DistinguishedPart};
use lightcone::series::{HolJet, Mono, Trunc, Var, WSeries};
use lightcone::GaussQ;
use malachite_q::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const W: i32 = 8;
const D: i32 = 6;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn report(n: u32, name: &str, budget_s: u64, started: Instant, res: Check) {
    let el = started.elapsed();
    let over = el > Duration::from_secs(budget_s);
    let (ok, detail) = match res {
        Ok(d) if !over => (true, d),
        Ok(d) => (false, format!("{d}; over budget")),
        Err(e) => (false, e),
    };
    // Written to stdout directly so the line survives the test harness's capture.
    let line = format!(
        "acceptance {n:>2} {} {name}: {detail} ({:.1}s, budget {budget_s}s)\n",
        if ok { "PASS" } else { "FAIL" },
        el.as_secs_f64()
    );
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
    assert!(ok, "criterion {n} failed: {detail}");
}

fn q(n: i64, d: i64) -> GaussQ {
    GaussQ::ratio(n, d)
}

/// `Σ_j (ζζ̄)^j` on `t`.
fn geometric(t: Trunc) -> WSeries {
    let zz = WSeries::monomial(Mono::new(0, 1, 0, 1, 0), GaussQ::one(), t);
    let mut acc = WSeries::one(t);
    let mut p = WSeries::one(t);
    for _ in 0..=t.zeta.max(0) {
        p = p.mul(&zz);
        acc = acc.add(&p);
    }
    acc
}

/// `Re(ih + 2fP_z + 2gP_ζ)` at `w = u + iP`, written out from
/// `P_z = (z̄ + zζ̄)G`, `P_ζ = ½z̄²G + ζ̄PG` with `G = 1/(1 − ζζ̄)`.
fn oracle_l(f: &HolJet, g: &HolJet, h: &HolJet, t: Trunc) -> WSeries {
    let mono = |e: [u32; 5], c: GaussQ| WSeries::monomial(Mono::from_array(e), c, t);
    let gs = geometric(t);
    let num = mono([1, 0, 1, 0, 0], q(1, 1)).add(&mono([2, 0, 0, 1, 0], q(1, 2))).add(&mono([0, 1, 2, 0, 0], q(1, 2)));
    let p = num.mul(&gs);
    let pz = mono([0, 0, 1, 0, 0], q(1, 1)).add(&mono([1, 0, 0, 1, 0], q(1, 1))).mul(&gs);
    let pzeta = mono([0, 0, 2, 0, 0], q(1, 2)).mul(&gs).add(&mono([0, 0, 0, 1, 0], q(1, 1)).mul(&p).mul(&gs));
    let w = WSeries::var(Var::U, t).add(&p.scale(&GaussQ::i()));
    let at = |j: &HolJet| j.truncate(t).eval_w(&w).unwrap();
    let e = at(h).scale(&GaussQ::i()).add(&at(f).mul(&pz).scale(&q(2, 1))).add(&at(g).mul(&pzeta).scale(&q(2, 1)));
    e.add(&e.conj()).scale(&q(1, 2))
}

/// A random jet with `n` terms of weights `lo..=hi` (`z, w` of weight 1, 2; `ζ` of weight 0).
fn random_jet<R: Rng>(rng: &mut R, lo: u32, hi: u32, n: usize, t: Trunc, skip: &[(u32, u32, u32)]) -> HolJet {
    let mut terms = Vec::new();
    while terms.len() < n {
        let wt = rng.gen_range(lo..=hi);
        let m = rng.gen_range(0..=wt / 2);
        let k = wt - 2 * m;
        let l = rng.gen_range(0..=2);
        if skip.contains(&(k, l, m)) || terms.iter().any(|(e, _)| *e == (k, l, m)) {
            continue;
        }
        terms.push(((k, l, m), small(rng)));
    }
    HolJet::from_terms(terms, t)
}

/// A random invertible map of the v-space shape: `f` of weight ≥ 2 with `f_zz = 0`, `g` of
/// weight ≥ 1, `h` of weight ≥ 3, plus an imaginary `w²` term in `h`.
fn random_vspace_map<R: Rng>(rng: &mut R, t: Trunc) -> MapJet {
    let f = random_jet(rng, 2, 4, 3, t, &[(2, 0, 0)]);
    let g = random_jet(rng, 1, 3, 3, t, &[]);
    let h = random_jet(rng, 3, 5, 3, t, &[(0, 0, 2)]).add(&HolJet::monomial(0, 0, 2, GaussQ::imag(Rational::from_signeds(rng.gen_range(-3i64..=3), 2)), t));
    MapJet::new(f, g, h, ShapeTag::VSpace).expect("v-space shape by construction")
}

/// `v = ν φ(z/λ, ζ/μ, z̄/λ̄, ζ̄/μ̄, u/ν)`: the graph of `Λ(M)`, coefficient by coefficient.
fn rescaled(phi: &WSeries, lambda: &GaussQ) -> WSeries {
    let lb = lambda.conj();
    let mu = lambda.checked_div(&lb).unwrap();
    let nu = lambda * &lb;
    phi.map_coeffs(|m, c| {
        let [k, l, a, b, p] = m.exps();
        let den = &(&(&lambda.pow(k) * &mu.pow(l)) * &(&lb.pow(a) * &mu.conj().pow(b))) * &nu.pow(p);
        (&nu * c).checked_div(&den).unwrap()
    })
}

fn seeded_chi(seed: u64, w: i32, d: i32) -> WSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let chi = random_chi(&mut rng, w as u32, d as u32, 3);
        if !chi.is_zero() {
            return chi.with_trunc(Trunc::working(w, d));
        }
    }
}

fn reconstructed(chi: WSeries, w: i32, d: i32) -> Hypersurface {
    reconstruct(&DistinguishedPart::new(chi, Trunc::new(w, d)).unwrap()).unwrap()
}

#[test]
fn automorphism_kernel() {
    let t0 = Instant::now();
    let res = (|| -> Check {
        let t = Trunc::new(10, 8);
        let basis = algebra_basis(Trunc::EXACT);
        ensure!(basis.len() == 10, "basis has {} fields", basis.len());
        for (i, x) in basis.iter().enumerate() {
            let d = lightcone::model::tangency_defect(x, t).map_err(|e| e.to_string())?;
            ensure!(d.is_zero(), "field {i}: defect with {} terms", d.len());
            let o = oracle_l(&x.fz, &x.fzeta, &x.fw, Trunc::working(10, 8));
            ensure!(o.is_zero(), "field {i}: oracle defect with {} terms", o.len());
        }
        Ok("10 basis fields tangent to the model at W=10 D=8".into())
    })();
    report(1, "automorphism kernel", 30, t0, res);
}

#[test]
fn graded_structure() {
    let t0 = Instant::now();
    let res = (|| -> Check {
        let basis = algebra_basis(Trunc::EXACT);
        let pairs = basis.len() * (basis.len() - 1) / 2;
        ensure!(pairs == 45, "{pairs} pairs");
        let bad = grading_failures();
        ensure!(bad.is_empty(), "grading fails on {bad:?}");
        let bad = jacobi_failures();
        ensure!(bad.is_empty(), "Jacobi fails on {bad:?}");
        ensure!(bracket(&basis[9], &basis[9]).is_zero(), "[X, X] != 0");
        let t = Trunc::working(6, 3);
        let g: usize = (0..=5).map(|m| kernel_dimension(m, t, false)).sum();
        let h: usize = (2..=4).map(|m| kernel_dimension(m, t, true)).sum();
        ensure!(g == 10 && h == 5, "dim g = {g}, dim h = {h}");
        Ok("45 brackets graded, 120 Jacobi triples, dim g = 10, dim h = 5".into())
    })();
    report(2, "graded structure", 60, t0, res);
}

#[test]
fn model_fixed_point() {
    let t0 = Instant::now();
    let res = (|| -> Check {
        let r = normalize(&Hypersurface::model(Trunc::new(W, D)), &NormalizeParams::default()).map_err(|e| e.to_string())?;
        ensure!(r.normal_phi.is_zero(), "normal_phi has {} terms", r.normal_phi.len());
        ensure!(r.map.is_identity(), "map is not the identity");
        Ok(format!("normal_phi = 0 and identity map at W={W} D={D}"))
    })();
    report(3, "model fixed point", 30, t0, res);
}

#[test]
fn direct_sum() {
    let t0 = Instant::now();
    let res = (|| -> Check {
        let t = Trunc::working(W, D);
        for m in 3..=W {
            ensure!(constrained_kernel_dimension(m, t) == 0, "constrained kernel nontrivial at weight {m}");
        }
        let two = q(2, 1);
        let i = GaussQ::i();
        for seed in 0..50u64 {
            let m = 3 + (seed % 6) as u32;
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
            let mut terms = Vec::new();
            for _ in 0..6 {
                let a = rng.gen_range(0..=m);
                let k = rng.gen_range(0..=(m - a));
                if (m - a - k) % 2 == 1 {
                    continue;
                }
                let zs = (t.degree as u32 - m).min(4);
                let l = rng.gen_range(0..=zs);
                let b = rng.gen_range(0..=(zs - l));
                terms.push((Mono::new(k, l, a, b, (m - a - k) / 2), small(&mut rng)));
            }
            if m % 2 == 1 {
                terms.push((Mono::new(1, 0, 0, 0, (m - 1) / 2), small(&mut rng)));
                terms.push((Mono::new(0, 1, 1, 0, (m - 1) / 2), small(&mut rng)));
            } else {
                terms.push((Mono::new(2, 0, 0, 0, (m - 2) / 2), small(&mut rng)));
            }
            let x = WSeries::from_terms(terms, t);
            let psi = x.add(&x.conj());
            let s = solve_weight(m, &psi).map_err(|e| format!("seed {seed}: {e}"))?;
            let back = oracle_l(&s.j.f, &s.j.g, &s.j.h, t).scale(&two).add(&s.n);
            ensure!(back == psi, "seed {seed} (weight {m}): 2L(j) + n != psi");
            ensure!(is_in_normal_form(&s.n).0, "seed {seed}: n is not in N");
            ensure!(s.j.has_vspace_shape(), "seed {seed}: j is not in the v-space");
            let j = &s.j;
            if m % 2 == 1 {
                let p = (m - 1) / 2;
                let (f00, h10, f01) = (j.f.coeff(0, 0, p), j.h.coeff(1, 0, p), j.f.coeff(0, 1, p));
                ensure!(&two * &f00.conj() + &i * &h10 == psi.coeff(Mono::new(1, 0, 0, 0, p)), "seed {seed}: relation e3");
                ensure!(&two * &f01 + &two * &f00.conj() == psi.coeff(Mono::new(0, 1, 1, 0, p)), "seed {seed}: relation e9");
            } else {
                let p = (m - 2) / 2;
                let (g00, h20) = (j.g.coeff(0, 0, p), j.h.coeff(2, 0, p));
                ensure!(&i * &h20 + g00.conj() == psi.coeff(Mono::new(2, 0, 0, 0, p)), "seed {seed}: relation e4");
            }
        }
        Ok("50 seeded right-hand sides, weights 3-8, split exactly; relations hold; kernels trivial".into())
    })();
    report(4, "direct-sum decomposition", 300, t0, res);
}

#[test]
fn equivalence_detection() {
    let t0 = Instant::now();
    let res = (|| -> Check {
        let tw = Trunc::working(W, D);
        for seed in 0..10u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(2000 + seed);
            let h = random_vspace_map(&mut rng, tw);
            let g = pushforward(&model_p(tw), &h).map_err(|e| e.to_string())?;
            let m = Hypersurface::from_graph(&g, Trunc::new(W, D), FormTag::RawGerm).map_err(|e| e.to_string())?;
            ensure!(!m.phi.is_zero(), "seed {seed}: image equals the model");
            let r = normalize(&m, &NormalizeParams::default()).map_err(|e| format!("seed {seed}: {e}"))?;
            ensure!(r.normal_phi.is_zero(), "seed {seed}: normal_phi has {} terms", r.normal_phi.len());
        }
        Ok("10 seeded v-space images of the model normalise to 0".into())
    })();
    report(5, "end-to-end equivalence detection", 300, t0, res);
}

fn cli(args: &[&str], input: Option<&Path>, out: &Path) -> (i32, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lightcone"));
    cmd.args(args).arg("--quiet").arg("--out").arg(out);
    if let Some(p) = input {
        cmd.arg("--input").arg(p);
    }
    let st = cmd.status().expect("binary runs");
    (st.code().unwrap_or(-1), std::fs::read(out).unwrap_or_default())
}

#[test]
fn idempotence_and_determinism() {
    let t0 = Instant::now();
    let res = (|| -> Check {
        let chi = WSeries::from_terms(
            [(Mono::new(0, 2, 3, 0, 0), q(1, 2)), (Mono::new(2, 1, 4, 0, 1), GaussQ::from_parts(1, 3, -1, 2))],
            Trunc::working(W, D),
        );
        let base = reconstructed(chi, W, D);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let h = random_vspace_map(&mut rng, base.working());
        let g = pushforward(&base.graph(), &h).map_err(|e| e.to_string())?;
        let m = Hypersurface::from_graph(&g, base.trunc, FormTag::RawGerm).map_err(|e| e.to_string())?;
        let r = normalize(&m, &NormalizeParams::default()).map_err(|e| e.to_string())?;
        ensure!(!r.map.is_identity(), "input was already normal");
        let again = normalize(&r.normal_form(), &NormalizeParams::default()).map_err(|e| e.to_string())?;
        ensure!(again.normal_phi == r.normal_phi, "second normalisation changed the form");
        ensure!(again.map.is_identity(), "second normalisation moved the form");

        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let input = dir.path().join("m.json");
        std::fs::write(&input, lightcone::json::emit(&lightcone::json::hypersurface_to_json(&m))).unwrap();
        let normal = dir.path().join("nf.json");
        std::fs::write(&normal, lightcone::json::emit(&lightcone::json::hypersurface_to_json(&r.normal_form()))).unwrap();
        let chi_in = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join("chi_z3bar_zeta2.json");
        let jobs: Vec<(Vec<&str>, Option<&Path>)> = vec![
            (vec!["normalize"], Some(&input)),
            (vec!["normalize", "--param-a", "1/3,-1/2", "--param-lambda-re", "3/5", "--param-lambda-im", "4/5", "--param-s", "2"], Some(&normal)),
            (vec!["sphericity"], Some(&input)),
            (vec!["verify"], Some(&input)),
            (vec!["reconstruct"], Some(&chi_in)),
            (vec!["algebra-check"], None),
        ];
        for (k, (args, inp)) in jobs.iter().enumerate() {
            let a = cli(args, *inp, &dir.path().join(format!("a{k}.json")));
            let b = cli(args, *inp, &dir.path().join(format!("b{k}.json")));
            ensure!(a.0 == EXIT_OK && b.0 == EXIT_OK, "{args:?} exited with {} / {}", a.0, b.0);
            ensure!(!a.1.is_empty() && a.1 == b.1, "{args:?}: reports differ between runs");
        }
        Ok(format!("normalize is idempotent; {} CLI reports byte-identical across runs", jobs.len()))
    })();
    report(6, "idempotence and determinism", 60, t0, res);
}

#[test]
fn scaling_equivariance() {
    let t0 = Instant::now();
    let res = (|| -> Check {
        let chi = WSeries::from_terms(
            [
                (Mono::new(0, 2, 3, 0, 0), q(1, 2)),
                (Mono::new(0, 1, 5, 0, 0), GaussQ::from_parts(1, 1, 2, 3)),
                (Mono::new(4, 0, 3, 0, 0), q(1, 1)),
                (Mono::new(3, 0, 4, 0, 0), q(1, 1)),
            ],
            Trunc::working(W, D),
        );
        // Moved off its normal form, so that normalisation has work to do.
        let nf = reconstructed(chi, W, D);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let h = random_vspace_map(&mut rng, nf.working());
        let g = pushforward(&nf.graph(), &h).map_err(|e| e.to_string())?;
        let m = Hypersurface::from_graph(&g, nf.trunc, FormTag::RawGerm).map_err(|e| e.to_string())?;
        let base = normalize(&m, &NormalizeParams::default()).map_err(|e| e.to_string())?;
        ensure!(!base.normal_phi.is_zero(), "test hypersurface is the model");
        ensure!(!base.map.is_identity(), "test hypersurface is already normal");
        for lam in [q(2, 1), q(-1, 3), GaussQ::from_parts(3, 5, 4, 5), GaussQ::from_parts(1, 1, 1, 1), GaussQ::from_parts(0, 1, 3, 2)] {
            let g = pushforward(&m.graph(), &scaling_map(&lam, m.working()).unwrap()).map_err(|e| e.to_string())?;
            let scaled = Hypersurface::from_graph(&g, m.trunc, FormTag::RawGerm).map_err(|e| e.to_string())?;
            let r = normalize(&scaled, &NormalizeParams::default()).map_err(|e| e.to_string())?;
            let expect = rescaled(&base.normal_phi, &lam);
            ensure!(r.normal_phi == expect, "lambda = {lam}: normal forms differ");
        }
        Ok(format!("5 scalings of a reconstructed M ({} terms) commute with normalisation", base.normal_phi.len()))
    })();
    report(7, "scaling equivariance", 180, t0, res);
}

#[test]
fn sphericity() {
    let t0 = Instant::now();
    let res = (|| -> Check {
        let chi = WSeries::monomial(Mono::new(0, 2, 3, 0, 0), q(1, 2), Trunc::working(W, D));
        let m = reconstructed(chi, W, D);
        let r = normalize(&m, &NormalizeParams::default()).map_err(|e| e.to_string())?;
        ensure!(r.sphericity.0 == q(1, 2), "Phi_3002(0) = {}", r.sphericity.0);
        ensure!(r.sphericity.1.is_zero(), "Phi_5001(0) = {}", r.sphericity.1);
        ensure!(!r.is_spherical(), "reported spherical");
        // The same verdict after moving M by a v-space map.
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let h = random_vspace_map(&mut rng, m.working());
        let g = pushforward(&m.graph(), &h).map_err(|e| e.to_string())?;
        let moved = Hypersurface::from_graph(&g, m.trunc, FormTag::RawGerm).map_err(|e| e.to_string())?;
        let r2 = normalize(&moved, &NormalizeParams::default()).map_err(|e| e.to_string())?;
        ensure!(r2.sphericity == r.sphericity, "moved copy: {:?}", r2.sphericity);
        let model = reconstructed(WSeries::zero(Trunc::working(W, D)), W, D);
        let r0 = normalize(&model, &NormalizeParams::default()).map_err(|e| e.to_string())?;
        ensure!(r0.is_spherical(), "reconstruct(0) reported non-spherical");
        Ok("chi = z̄³ζ²/2 gives Phi_3002(0) = 1/2 (non-spherical); chi = 0 is spherical".into())
    })();
    report(8, "sphericity criterion", 120, t0, res);
}

#[test]
fn moduli_round_trip() {
    let t0 = Instant::now();
    let res = (|| -> Check {
        for seed in 0..10u64 {
            let chi = seeded_chi(9000 + seed, W, D);
            let d = DistinguishedPart::new(chi.clone(), Trunc::new(W, D)).map_err(|e| e.to_string())?;
            let m = reconstruct(&d).map_err(|e| format!("seed {seed}: {e}"))?;
            let got = extract_distinguished(&m.phi).map_err(|e| e.to_string())?;
            ensure!(got == d.indivisible_part(m.working()), "seed {seed}: distinguished part differs");
            ensure!(got.filter(|x| x.beta() == 0) == chi, "seed {seed}: chi not recovered");
            ensure!(is_in_normal_form(&m.phi).0, "seed {seed}: not in normal form");
            ensure!(m.phi.is_real(), "seed {seed}: not real");
            ensure!(residual_check(&m).map_err(|e| e.to_string())?.is_zero(), "seed {seed}: Levi residual");
            let o = bordered_levi(&m.graph());
            ensure!(o.is_zero(), "seed {seed}: bordered Hessian residual with {} terms", o.len());
        }
        Ok("10 seeded chi recovered exactly; outputs real, in normal form, Levi-degenerate".into())
    })();
    report(9, "moduli round trip", 300, t0, res);
}

#[test]
fn prenormalization() {
    let t0 = Instant::now();
    let res = (|| -> Check {
        let tw = Trunc::working(W, D);
        for seed in 0..6u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(10_000 + seed);
            // Harmonic content from h, killed shapes from f_zz, the real w² term and low g.
            let f = random_jet(&mut rng, 2, 4, 3, tw, &[]).add(&HolJet::monomial(2, 0, 0, small(&mut rng), tw));
            let g = random_jet(&mut rng, 1, 3, 3, tw, &[]);
            let h = random_jet(&mut rng, 3, 5, 3, tw, &[(0, 0, 2)]).add(&HolJet::monomial(0, 0, 2, small(&mut rng), tw));
            let pollution = MapJet::general(f, g, h);
            let polluted = pushforward(&model_p(tw), &pollution).map_err(|e| e.to_string())?;
            let raw = Hypersurface::from_graph(&polluted, Trunc::new(W, D), FormTag::RawGerm).map_err(|e| e.to_string())?;
            ensure!(!killed_terms(&raw.phi).is_empty(), "seed {seed}: pollution has no killed terms");
            let (pre, map) = prenormalize(&raw).map_err(|e| format!("seed {seed}: {e}"))?;
            ensure!(killed_terms(&pre.phi).is_empty(), "seed {seed}: killed terms remain");
            ensure!(as_perturbation(&pre).is_ok(), "seed {seed}: not a perturbation of the model");
            let resid = image_residual(&polluted, &map, &pre.graph());
            ensure!(resid.is_zero(), "seed {seed}: map residual with {} terms", resid.len());
        }
        Ok("6 seeded polluted models restored; killed shapes absent; maps exact".into())
    })();
    report(10, "prenormalization soundness", 120, t0, res);
}

#[test]
fn canonical_cone() {
    let t0 = Instant::now();
    let res = (|| -> Check {
        let sample = cone_sample(11, 20);
        ensure!(sample.len() == 20, "{} points", sample.len());
        let named = [
            ((GaussQ::zero(), GaussQ::zero(), Rational::from(1)), true),
            ((GaussQ::one(), GaussQ::from_parts(0, 1, -1, 1), Rational::from(1)), true),
            ((GaussQ::one(), GaussQ::zero(), Rational::from(1)), false),
        ];
        for p in &named {
            ensure!(sample.contains(p), "sample misses {:?}", p.0);
        }
        for ((z, zeta, u), _) in &sample {
            let expect = *u != Rational::from(0) && (&(zeta * &GaussQ::real(u.clone())) + &(&(&GaussQ::i() * z) * z)).is_zero();
            let got = lightcone::model::canonical_cone_check(z, zeta, u);
            ensure!(got == expect, "disagreement at ({z}, {zeta}, {u})");
        }
        let members = sample.iter().filter(|(p, _)| lightcone::model::canonical_cone_check(&p.0, &p.1, &p.2)).count();
        ensure!(members > 2 && members < 18, "{members} members: sample is degenerate");
        Ok(format!("20 points ({members} on the cone) agree with zeta*u + i*z^2 = 0, u != 0"))
    })();
    report(11, "canonical cone", 1, t0, res);
}
