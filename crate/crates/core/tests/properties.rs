//! Algebraic property suites over seeded random operands.

mod common;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vfcurve::curve::{curve_isomorphic, Moebius};
use vfcurve::exactalg::intpoly::IntPoly;
use vfcurve::exactalg::localized::LocalizedElement;
use vfcurve::exactalg::rat::{rat, Rat};
use vfcurve::exactalg::scalepath::ScalePath;
use vfcurve::hopf::{group_law, inverse};
use vfcurve::limits::type_of_curve;
use vfcurve::strata::{pn_types, pn_witness};

fn rand_rat(rng: &mut ChaCha8Rng) -> Rat {
    let p = rng.gen_range(-9i64..=9);
    let q = rng.gen_range(1i64..=9);
    Rat::new(p.into(), q.into())
}

fn rand_path(rng: &mut ChaCha8Rng) -> ScalePath {
    let params = ["s", "t"];
    let n_terms = rng.gen_range(0..=3);
    let mut terms: Vec<(Vec<i64>, Rat)> = Vec::new();
    for _ in 0..n_terms {
        let exp = vec![rng.gen_range(-2i64..=3), rng.gen_range(-2i64..=3)];
        terms.push((exp, rand_rat(rng)));
    }
    let borrowed: Vec<(&[i64], Rat)> = terms.iter().map(|(e, c)| (e.as_slice(), c.clone())).collect();
    ScalePath::new(&params, &borrowed).unwrap()
}

fn rand_localized(rng: &mut ChaCha8Rng) -> LocalizedElement {
    let ngens = 2;
    let mut num = IntPoly::zero(ngens + 1);
    for _ in 0..rng.gen_range(0..=3) {
        let exp: Vec<u32> = (0..=ngens).map(|_| rng.gen_range(0..=2u32)).collect();
        let term = IntPoly::from_terms(
            ngens + 1,
            &[(exp.as_slice(), rng.gen_range(-4i64..=4))],
        );
        num = &num + &term;
    }
    let denom: Vec<u32> = (0..ngens).map(|_| rng.gen_range(0..=2u32)).collect();
    LocalizedElement::new(ngens, num, denom)
}

#[test]
fn rational_ring_axioms_hold_on_a_seeded_sample() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..1000 {
        let (a, b, c) = (rand_rat(&mut rng), rand_rat(&mut rng), rand_rat(&mut rng));
        assert_eq!((&a + &b) + &c, &a + &(&b + &c));
        assert_eq!((&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a + &b, &b + &a);
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
    }
}

#[test]
fn scale_path_ring_axioms_hold_on_a_seeded_sample() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..1000 {
        let (a, b, c) = (rand_path(&mut rng), rand_path(&mut rng), rand_path(&mut rng));
        assert_eq!(&(&(&a + &b) + &c), &(&a + &(&b + &c)));
        assert_eq!(&(&(&a * &b) * &c), &(&a * &(&b * &c)));
        assert_eq!(&(&a + &b), &(&b + &a));
        assert_eq!(&(&a * &b), &(&b * &a));
        assert_eq!(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)));
    }
}

#[test]
fn localized_ring_axioms_hold_on_a_seeded_sample() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..1000 {
        let (a, b, c) = (
            rand_localized(&mut rng),
            rand_localized(&mut rng),
            rand_localized(&mut rng),
        );
        assert_eq!(&(&(&a + &b) + &c), &(&a + &(&b + &c)));
        assert_eq!(&(&(&a * &b) * &c), &(&a * &(&b * &c)));
        assert_eq!(&(&a + &b), &(&b + &a));
        assert_eq!(&(&a * &b), &(&b * &a));
        assert_eq!(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)));
    }
}

#[test]
fn valuations_are_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut checked = 0;
    while checked < 1000 {
        let p = rand_path(&mut rng);
        let q = rand_path(&mut rng);
        if p.is_zero() || q.is_zero() {
            continue;
        }
        checked += 1;
        let (vp, lp) = p.val_lc().unwrap();
        let (vq, lq) = q.val_lc().unwrap();
        let (vpq, lpq) = (&p * &q).val_lc().unwrap();
        let sum: Vec<i64> = vp.iter().zip(&vq).map(|(a, b)| a + b).collect();
        assert_eq!(vpq, sum);
        assert_eq!(lpq, lp * lq);
    }
}

#[test]
fn localized_normalization_is_idempotent_and_respects_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for _ in 0..400 {
        let e = rand_localized(&mut rng);
        assert_eq!(e.clone().normalized(), e);
        // multiply numerator and denominator by the same unit powers
        let mut num = e.numerator().clone();
        let mut exps = e.denom_exponents().to_vec();
        for (i, exp) in exps.iter_mut().enumerate() {
            let extra = rng.gen_range(0..=2u32);
            for _ in 0..extra {
                num = &num * &LocalizedElement::unit_poly(2, i);
            }
            *exp += extra;
        }
        let inflated = LocalizedElement::new(2, num, exps);
        assert_eq!(inflated, e);
        assert!(inflated.equiv(&e));
    }
}

#[test]
fn group_law_axioms_and_gm_bridge_hold_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let mut checked = 0;
    while checked < 1000 {
        let a = rand_rat(&mut rng);
        let b = rand_rat(&mut rng);
        let c = rand_rat(&mut rng);
        let tau = rand_rat(&mut rng);
        let unit = |v: &Rat| Rat::one() + &tau * v;
        if unit(&a).is_zero() || unit(&b).is_zero() || unit(&c).is_zero() {
            continue;
        }
        let ab = group_law(&a, &b, &tau).unwrap();
        if unit(&ab).is_zero() {
            continue;
        }
        checked += 1;
        // associativity
        let bc = group_law(&b, &c, &tau).unwrap();
        if !unit(&bc).is_zero() {
            assert_eq!(
                group_law(&ab, &c, &tau).unwrap(),
                group_law(&a, &bc, &tau).unwrap()
            );
        }
        // identity and inverse
        assert_eq!(group_law(&a, &rat(0), &tau).unwrap(), a);
        let inv = inverse(&a, &tau).unwrap();
        assert_eq!(group_law(&a, &inv, &tau).unwrap(), rat(0));
        // a ↦ 1 + τa carries the law to multiplication
        assert_eq!(unit(&a) * unit(&b), unit(&ab));
    }
}

#[test]
fn curve_isomorphism_is_reflexive_and_symmetric_on_random_objects() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for _ in 0..60 {
        let c = common::random_c1(&mut rng, 4);
        assert!(curve_isomorphic(&c, &c).is_some(), "reflexivity on {c:?}");
        // random chart change on a random component
        let comp = c.components[rng.gen_range(0..c.components.len())].id;
        let m = loop {
            let e: [i64; 4] = [
                rng.gen_range(-3..=3),
                rng.gen_range(-3..=3),
                rng.gen_range(-3..=3),
                rng.gen_range(-3..=3),
            ];
            if e[0] * e[3] - e[1] * e[2] != 0 {
                break Moebius::new(rat(e[0]), rat(e[1]), rat(e[2]), rat(e[3]));
            }
        };
        let moved = c.apply_moebius(comp, &m).unwrap();
        assert!(moved.validate().pass());
        assert!(curve_isomorphic(&c, &moved).is_some());
        assert!(curve_isomorphic(&moved, &c).is_some());
    }
}

#[test]
fn witnesses_round_trip_through_type_of_curve() {
    for n in 1..=4 {
        for t in pn_types(n).unwrap() {
            let c = pn_witness(&t);
            assert!(c.pn_object_check().pass());
            assert_eq!(type_of_curve(&c).unwrap(), t, "witness inverts at n={n}");
        }
    }
}

#[test]
fn gan_act_composes_and_preserves_types_on_witnesses() {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    for t in pn_types(3).unwrap() {
        let c = pn_witness(&t);
        for _ in 0..5 {
            let u: Vec<Rat> = (0..3).map(|_| rand_rat(&mut rng)).collect();
            let v: Vec<Rat> = (0..3).map(|_| rand_rat(&mut rng)).collect();
            let sum: Vec<Rat> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
            let step = c.gan_act(&v).unwrap().gan_act(&u).unwrap();
            let direct = c.gan_act(&sum).unwrap();
            assert_eq!(step, direct);
            assert_eq!(type_of_curve(&step).unwrap(), t);
        }
    }
}

#[test]
fn pn_objects_are_v_objects() {
    for n in 1..=4 {
        for t in pn_types(n).unwrap() {
            let c = pn_witness(&t);
            let d = c.category_check(vfcurve::curve::Kind::V, None);
            assert!(d.pass(), "{t}: {d}");
        }
    }
}
