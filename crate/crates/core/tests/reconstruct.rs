mod common;

use common::*;
use lightcone::hypersurface::*;
use lightcone::model::model_p;
use lightcone::normalform::*;
use lightcone::reconstruct::*;
use lightcone::series::{Mono, Trunc, WSeries};
use lightcone::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn chi_of(terms: &[([u32; 5], lightcone::GaussQ)], w: i32, d: i32) -> DistinguishedPart {
    DistinguishedPart::new(series(terms, Trunc::working(w, d)), Trunc::new(w, d)).unwrap()
}

/// The bordered Hessian oracle on the region where its (conservative) truncation is exact,
/// restricted to the points of the hypersurface.
fn oracle_residual(m: &Hypersurface) -> WSeries {
    bordered_levi(&m.graph())
}

#[test]
fn oracle_sanity() {
    let t = Trunc::working(10, 3);
    assert!(bordered_levi(&model_p(t)).is_zero());
    let quad = series(&[([1, 0, 1, 0, 0], q(1, 1)), ([0, 1, 0, 1, 0], q(1, 1))], t);
    assert!(!bordered_levi(&quad).is_zero());
    let bad = model_p(t).add(&series(&[([3, 0, 0, 2, 0], q(1, 1)), ([0, 2, 3, 0, 0], q(1, 1))], t));
    assert!(!bordered_levi(&bad).is_zero());
}

#[test]
fn zero_gives_model() {
    let m = reconstruct(&chi_of(&[], 8, 6)).unwrap();
    assert!(m.phi.is_zero());
    assert!(residual_check(&m).unwrap().is_zero());
    assert!(residual_check(&Hypersurface::model(Trunc::new(8, 6))).unwrap().is_zero());
}

#[test]
fn sphericity_example() {
    let (w, d) = (10, 6);
    let m = reconstruct(&chi_of(&[([0, 2, 3, 0, 0], q(1, 2))], w, d)).unwrap();
    assert_eq!(m.phi.coeff(Mono::new(0, 2, 3, 0, 0)), q(1, 2));
    assert_eq!(m.phi.coeff(Mono::new(3, 0, 0, 2, 0)), q(1, 2));
    assert!(m.phi.is_real());
    assert!(is_in_normal_form(&m.phi).0);
    let tail = m.phi.filter(|x| x.l() > 0 && x.beta() > 0);
    assert!(!tail.is_zero());
    assert!(residual_check(&m).unwrap().is_zero());
    let o = oracle_residual(&m);
    assert!(o.is_zero(), "{:?}", o.terms());
    assert!(o.trunc().weight >= 6, "{:?}", o.trunc());
}

#[test]
fn u_dependent_round_trip() {
    let chi = series(&[([0, 2, 3, 0, 1], q(1, 2))], Trunc::working(10, 4));
    let m = reconstruct(&DistinguishedPart::new(chi.clone(), Trunc::new(10, 4)).unwrap()).unwrap();
    let got = extract_distinguished(&m.phi).unwrap().filter(|x| x.beta() == 0);
    assert_eq!(got.terms(), chi.truncate(got.trunc()).terms());
    assert!(oracle_residual(&m).is_zero());
}

#[test]
fn missing_tail_is_detected() {
    let t = Trunc::new(8, 4);
    let phi = series(&[([3, 0, 0, 2, 0], q(1, 1)), ([0, 2, 3, 0, 0], q(1, 1))], Trunc::working(8, 4));
    let m = Hypersurface::new(phi, t, FormTag::NormalForm).unwrap();
    assert!(!residual_check(&m).unwrap().is_zero());
    assert!(!oracle_residual(&m).is_zero());
}

#[test]
fn invalid_parts_are_rejected() {
    let t = Trunc::working(8, 4);
    for bad in [
        vec![([0, 1, 3, 1, 0], q(1, 1))],
        vec![([0, 1, 3, 0, 0], q(1, 1))],
        vec![([3, 0, 3, 0, 0], q(1, 1))],
        vec![([2, 1, 2, 0, 0], q(1, 1))],
        vec![([4, 0, 3, 0, 0], q(1, 1))],
    ] {
        match DistinguishedPart::new(series(&bad, t), Trunc::new(8, 4)) {
            Err(Error::Validation(_)) => {}
            other => panic!("{bad:?}: {other:?}"),
        }
    }
}

#[test]
fn lower_degrees_do_not_see_higher_data() {
    let (w, d) = (8, 4);
    let base = [([0, 2, 3, 0, 0], q(1, 2))];
    let more = [([0, 2, 3, 0, 0], q(1, 2)), ([1, 3, 4, 0, 0], q(2, 3))];
    let a = reconstruct(&chi_of(&base, w, d)).unwrap();
    let b = reconstruct(&chi_of(&more, w, d)).unwrap();
    // The extra monomial has standard degree 8.
    let low = |s: &WSeries| s.filter(|m| m.std_degree() < 8);
    assert_eq!(low(&a.phi), low(&b.phi));
    assert_ne!(a.phi, b.phi);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn round_trip(seed in any::<u64>()) {
        let (w, d) = (10, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chi = random_chi(&mut rng, 7, d, 3).with_trunc(Trunc::working(w, d as i32));
        let m = reconstruct(&DistinguishedPart::new(chi.clone(), Trunc::new(w, d as i32)).unwrap()).unwrap();
        prop_assert!(!chi.is_zero());
        prop_assert!(m.phi.len() > chi.len());
        prop_assert!(m.phi.is_real());
        prop_assert!(is_in_normal_form(&m.phi).0);
        let got = extract_distinguished(&m.phi).unwrap().filter(|x| x.beta() == 0);
        prop_assert_eq!(got.terms(), chi.terms());
        prop_assert!(residual_check(&m).unwrap().is_zero());
        let o = oracle_residual(&m);
        prop_assert!(o.trunc().effective().weight >= 6);
        prop_assert!(o.is_zero());
        let again = reconstruct(&DistinguishedPart::new(got, m.trunc).unwrap()).unwrap();
        prop_assert_eq!(again.phi, m.phi);
    }
}
