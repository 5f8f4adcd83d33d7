use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use thetagraph_core::curve::PlusOneKernel;
use thetagraph_core::{Curve, EcPoint, FieldSpec, GaussInt, P1Element};

fn sorted(mut v: Vec<EcPoint>) -> Vec<String> {
    let mut out: Vec<String> = v.drain(..).map(|p| format!("{p:?}")).collect();
    out.sort();
    out
}

#[test]
fn isogeny_composites_are_doubling() {
    let f = FieldSpec::new(5, 3).unwrap();
    let e = Curve::new(&f).unwrap();
    for pt in e.points() {
        let two = e.add(&pt, &pt).unwrap();
        assert_eq!(e.phi_bar(&e.phi(&pt)), two, "{pt:?}");
        assert_eq!(e.phi(&e.phi_bar(&pt)), two, "{pt:?}");
        assert_eq!(e.duplicate(&pt), two, "{pt:?}");
        assert_eq!(e.scalar_mul(&BigInt::from(2), &pt), two);
    }
}

#[test]
fn phi_acts_as_theta_on_x() {
    for n in 1..=3 {
        let f = FieldSpec::new(5, n).unwrap();
        let e = Curve::new(&f).unwrap();
        for pt in e.points() {
            let x = pt.x();
            match &x {
                P1Element::Infinity => continue,
                P1Element::Finite(v) if v.is_zero() => continue,
                _ => {}
            }
            assert_eq!(e.phi(&pt).x(), f.theta(&x), "n={n} {pt:?}");
        }
    }
}

#[test]
fn point_count_is_norm() {
    for n in 1..=5 {
        let f = FieldSpec::new(5, n).unwrap();
        let norm = (&GaussInt::pi5().pow(n as u64) - &GaussInt::one()).norm();
        assert_eq!(BigInt::from(Curve::new(&f).unwrap().count_points()), norm, "n={n}");
    }
}

#[test]
fn frobenius_is_one_plus_two_i() {
    for n in 1..=3 {
        let f = FieldSpec::new(5, n).unwrap();
        let e = Curve::new(&f).unwrap();
        for pt in e.points() {
            assert_eq!(e.frobenius(&pt, 1), e.endo_apply(&GaussInt::pi5(), &pt), "n={n}");
        }
    }
}

#[test]
fn minus_one_kills_rational_points() {
    for n in 1..=3 {
        let f = FieldSpec::new(5, n).unwrap();
        let e = Curve::new(&f).unwrap();
        let z = &GaussInt::pi5().pow(n as u64) - &GaussInt::one();
        assert!(e.points().iter().all(|pt| e.endo_apply(&z, pt).is_infinity()), "n={n}");
    }
}

#[test]
fn plus_one_kernel() {
    for n in 1..=2 {
        let big = FieldSpec::new(5, 2 * n).unwrap();
        let k = PlusOneKernel::new(&big, n).unwrap();
        let e = k.curve();
        let z = &GaussInt::pi5().pow(n as u64) + &GaussInt::one();
        let killed: Vec<EcPoint> = e
            .points()
            .into_iter()
            .filter(|pt| e.endo_apply(&z, pt).is_infinity())
            .collect();
        let kernel = k.kernel();
        assert_eq!(sorted(killed), sorted(kernel.clone()), "n={n}");
        let mut union = k.b_points();
        let special = k.special_set();
        assert_eq!(special.len(), if n % 2 == 1 { 8 } else { 4 });
        union.extend(special);
        assert_eq!(sorted(kernel.clone()), sorted(union), "n={n}");
        assert_eq!(kernel.len().to_u64(), z.norm().to_u64(), "n={n}");
    }
}

#[test]
fn points_off_the_curve_are_rejected() {
    let f = FieldSpec::new(5, 1).unwrap();
    let e = Curve::new(&f).unwrap();
    let bad = EcPoint::affine(f.constant(1), f.constant(1));
    assert!(!e.contains(&bad));
    assert!(e.add(&bad, &EcPoint::Infinity).is_err());
    assert!(Curve::new(&FieldSpec::new(7, 1).unwrap()).is_err());
}

fn triple() -> impl Strategy<Value = (usize, usize, usize, usize)> {
    (1usize..=3).prop_flat_map(|n| (Just(n), 0usize..1000, 0usize..1000, 0usize..1000))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_law((n, a, b, c) in triple()) {
        let f = FieldSpec::new(5, n).unwrap();
        let e = Curve::new(&f).unwrap();
        let pts = e.points();
        let (p, q, r) = (&pts[a % pts.len()], &pts[b % pts.len()], &pts[c % pts.len()]);
        let lhs = e.add(&e.add(p, q).unwrap(), r).unwrap();
        let rhs = e.add(p, &e.add(q, r).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(e.add(p, q).unwrap(), e.add(q, p).unwrap());
        prop_assert_eq!(&e.add(p, &EcPoint::Infinity).unwrap(), p);
        prop_assert!(e.add(p, &e.neg(p)).unwrap().is_infinity());
        prop_assert!(e.contains(&e.endo_i(p)));
        prop_assert!(e.add(&e.endo_i(&e.endo_i(p)), p).unwrap().is_infinity());
    }
}
