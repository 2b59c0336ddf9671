use proptest::prelude::*;
use twistkit_core::coeff::{rat, Deg, RatFun, TruncSeries, Var, ZSeries, Q};
use twistkit_core::pbw::{coproduct_std, AlgebraElement, Presentation, Word};
use twistkit_core::rep::{build_drm, qybe_check};

const N: u32 = 3;

fn q_small() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn series(order: u32) -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec(((0u32..=order), (0u32..=order), q_small()), 0..6).prop_map(move |ts| {
        TruncSeries::from_terms(
            order,
            ts.into_iter()
                .filter(|(a, b, _)| a + b <= order)
                .map(|(a, b, c)| (Deg { h: a, xi: b }, c)),
        )
    })
}

/// Series with zero constant term.
fn nilpotent(order: u32) -> impl Strategy<Value = TruncSeries> {
    series(order).prop_map(|s| &s - &TruncSeries::constant(s.constant_term(), s.order()))
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (q_small(), q_small(), q_small(), 0usize..3).prop_map(|(a, b, c, v)| {
        let var = [RatFun::p(), RatFun::xi(), RatFun::z()][v].clone();
        let num = &(&var * &RatFun::constant(a)) + &RatFun::constant(b);
        let den = &(&var * &var) + &RatFun::constant(&c * &c + rat(1, 1));
        &num / &den
    })
}

fn element(p: Presentation) -> impl Strategy<Value = AlgebraElement> {
    let c_max = if p == Presentation::Sl2 { 2u8 } else { 0 };
    prop::collection::vec((0u8..=2, 0u8..=2, 0u8..=c_max, q_small()), 1..4).prop_map(move |ws| {
        let mut acc = AlgebraElement::zero(p, 1, N);
        for (a, b, c, k) in ws {
            acc = acc.add(&AlgebraElement::word(p, Word::new(a, b, c), N).scale_q(&k));
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_ring_axioms(a in series(N), b in series(N), c in series(N)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn series_exp_log_round_trip(x in nilpotent(N)) {
        let e = x.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), x.clone());
        prop_assert!((&e * &x.scale(&rat(-1, 1)).exp().unwrap()).is_one());
    }

    #[test]
    fn series_inverse(x in nilpotent(N), c in q_small()) {
        prop_assume!(c != rat(0, 1));
        let u = &x + &TruncSeries::constant(c, N);
        prop_assert!((&u * &u.inverse().unwrap()).is_one());
    }

    #[test]
    fn div_val_inverts_multiplication(
        a in series(N),
        u in nilpotent(N),
        c in q_small(),
        dh in 0u32..=1,
        dxi in 0u32..=1,
    ) {
        prop_assume!(c != rat(0, 1));
        // Divisor: a monomial times a unit.
        let b = &TruncSeries::monomial(c, dh, dxi, N) * &(&u + &TruncSeries::one(N));
        let v = dh + dxi;
        let back = (&a * &b).div_val(&b).unwrap();
        prop_assert_eq!(back.truncate(N - v), a.truncate(N - v));
    }

    #[test]
    fn ratfun_field_and_eval(a in ratfun(), b in ratfun(), x in q_small(), y in q_small(), z in q_small()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(&(&a / &b) * &b, a.clone());
        let pt = [x, y, z];
        prop_assert_eq!(
            (&a * &b).eval(&pt).unwrap(),
            a.eval(&pt).unwrap() * b.eval(&pt).unwrap()
        );
        prop_assert_eq!(
            (&a + &b).eval(&pt).unwrap(),
            a.eval(&pt).unwrap() + b.eval(&pt).unwrap()
        );
    }

    #[test]
    fn ratfun_subst_then_eval(a in ratfun(), x in q_small(), y in q_small(), z in q_small()) {
        let pt = [x.clone(), y, z];
        let s = a.subst(Var::P, &x).unwrap();
        prop_assert_eq!(s.eval(&pt).unwrap(), a.eval(&pt).unwrap());
    }

    #[test]
    fn zseries_exp_log(cs in prop::collection::vec(q_small(), 1..5)) {
        let mut v = vec![rat(0, 1)];
        v.extend(cs);
        let x = ZSeries::from_coeffs(v, 5);
        prop_assert_eq!(x.exp().unwrap().log().unwrap(), x);
    }

    #[test]
    fn pbw_associative(a in element(Presentation::Sl2), b in element(Presentation::Sl2), c in element(Presentation::Sl2)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn borel_associative(a in element(Presentation::Borel), b in element(Presentation::Borel), c in element(Presentation::Borel)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn coproduct_is_multiplicative(a in element(Presentation::Sl2), b in element(Presentation::Sl2)) {
        let lhs = coproduct_std(&a.mul(&b)).unwrap();
        let rhs = coproduct_std(&a).unwrap().mul(&coproduct_std(&b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn drm_qybe_at_random_points(
        p in 2i64..=5,
        xi in q_small(),
        z in prop::collection::vec((1i64..=7, 8i64..=13), 3),
    ) {
        let q = RatFun::int(p * p);
        let x = RatFun::constant(xi);
        let zs: Vec<RatFun> = z.into_iter().map(|(n, d)| RatFun::constant(rat(n, d))).collect();
        prop_assume!(zs[0] != zs[1] && zs[1] != zs[2] && zs[0] != zs[2]);
        let c = qybe_check("qybe", &|zz| build_drm(&q, &x, zz), [&zs[0], &zs[1], &zs[2]]);
        // An error is a ratio hitting the pole at z = q^2 or z = 1.
        if let Ok(c) = c {
            prop_assert!(c.passed(), "{}", c.residual);
        }
    }
}
