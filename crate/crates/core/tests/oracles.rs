use nalgebra::DMatrix;
use ncgq::dirac::{compare_spectrum, eigenvalues, ComplexMatrix};
use ncgq::scalars::{Complex64, Field, GaussianRational, Poly, RationalFunction};
use proptest::prelude::*;

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-50i64..=50, 1i64..=12, -50i64..=50, 1i64..=12)
        .prop_map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d))
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 1..5).prop_map(|c| Poly::from_ints(&c))
}

proptest! {
    #[test]
    fn gaussian_ops_agree_with_floats(x in gaussian(), y in gaussian()) {
        let (fx, fy) = (x.to_complex(), y.to_complex());
        prop_assert!(close((x.clone() + y.clone()).to_complex(), fx + fy));
        prop_assert!(close((x.clone() - y.clone()).to_complex(), fx - fy));
        prop_assert!(close((x.clone() * y.clone()).to_complex(), fx * fy));
        if !y.is_zero() {
            prop_assert!(close(x.div(&y).unwrap().to_complex(), fx / fy));
        }
        prop_assert!(close(x.conj().to_complex(), fx.conj()));
    }

    #[test]
    fn gaussian_field_axioms(x in gaussian(), y in gaussian(), z in gaussian()) {
        prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z));
        if !x.is_zero() {
            prop_assert!((x.clone() * x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn rational_functions_evaluate_homomorphically(a in poly(), b in poly(), c in poly(), d in poly(), t in gaussian()) {
        prop_assume!(!b.is_zero() && !d.is_zero());
        let f = RationalFunction::new(a, b).unwrap();
        let g = RationalFunction::new(c, d).unwrap();
        let (Ok(fv), Ok(gv)) = (f.evaluate_at(&t), g.evaluate_at(&t)) else { return Ok(()) };
        if let Ok(s) = (f.clone() + g.clone()).evaluate_at(&t) {
            prop_assert_eq!(s, fv.clone() + gv.clone());
        }
        if let Ok(p) = (f * g).evaluate_at(&t) {
            prop_assert_eq!(p, fv * gv);
        }
    }

    #[test]
    fn poly_gcd_divides_both(a in poly(), b in poly()) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = a.gcd(&b);
        prop_assert!(!g.is_zero());
        prop_assert!(a.divrem(&g).unwrap().1.is_zero());
        prop_assert!(b.divrem(&g).unwrap().1.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn eigenvalues_agree_with_schur(n in 1usize..=12, entries in prop::collection::vec((-4.0f64..4.0, -4.0f64..4.0), 144)) {
        let m = ComplexMatrix::from_fn(n, |i, j| {
            let (re, im) = entries[i * 12 + j];
            Complex64::new(re, im)
        });
        let ours = eigenvalues(&m).unwrap();
        let (_, t) = DMatrix::from_fn(n, n, |i, j| m[(i, j)]).schur().unpack();
        let oracle: Vec<Complex64> = t.diagonal().iter().copied().collect();
        let r = compare_spectrum(&ours.values, &oracle, 1e-7).unwrap();
        prop_assert!(r.within_tolerance(), "max distance {}", r.max_distance);
        prop_assert!(ours.max_residual() < 1e-10);
    }
}

#[test]
fn eigenvalues_of_a_jordan_like_block() {
    let m = ComplexMatrix::from_fn(3, |i, j| match (i, j) {
        (0, 0) | (1, 1) | (2, 2) => Complex64::new(2.0, 1.0),
        (0, 1) => Complex64::new(1.0, 0.0),
        _ => Complex64::new(0.0, 0.0),
    });
    let ev = eigenvalues(&m).unwrap();
    assert!(ev
        .values
        .iter()
        .all(|z| (z - Complex64::new(2.0, 1.0)).norm() < 1e-6));
}
