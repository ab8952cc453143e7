use haar_units::group_algebra::{
    c_squared_along, decompose, jucys_murphy, minimal_projection, unit_basis, young_representation, AlgebraElement,
    RealMatrix,
};
use haar_units::permutation::Permutation;
use haar_units::rational::{factorial, int, rat, Rational};
use haar_units::tableaux::{minimal_admissible_paths, partitions, standard_tableaux};
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn element(degree: usize, coeffs: &[(usize, i64)]) -> AlgebraElement {
    let all = Permutation::all(degree);
    AlgebraElement::from_terms(degree, coeffs.iter().map(|&(k, c)| (all[k % all.len()], rat(c, 3)))).unwrap()
}

fn arb_element(degree: usize) -> impl Strategy<Value = AlgebraElement> {
    proptest::collection::vec((0usize..720, -6i64..=6), 0..8).prop_map(move |v| element(degree, &v))
}

proptest! {
    #[test]
    fn multiplication_is_associative((x, y, z) in (arb_element(4), arb_element(4), arb_element(4))) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn multiplication_distributes((x, y, z) in (arb_element(3), arb_element(3), arb_element(3))) {
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn adjoint_reverses_products((x, y) in (arb_element(4), arb_element(4))) {
        prop_assert_eq!((&x * &y).adjoint(), &y.adjoint() * &x.adjoint());
        prop_assert_eq!(x.adjoint().adjoint(), x);
    }

    #[test]
    fn trace_is_positive_and_tracial((x, y) in (arb_element(4), arb_element(4))) {
        let tr = (&x.adjoint() * &x).regular_trace();
        prop_assert!(tr >= Rational::zero());
        prop_assert_eq!(tr.is_zero(), x.is_zero());
        prop_assert_eq!((&x * &y).regular_trace(), (&y * &x).regular_trace());
        prop_assert_eq!(x.trace_pairing(&y).unwrap(), (&x.adjoint() * &y).regular_trace());
    }

    #[test]
    fn units_multiply_like_matrix_units(seed in 0usize..1000) {
        let basis = unit_basis(4).unwrap();
        let k = seed % basis.shapes().len();
        let f = basis.tableaux(k).len();
        let (t, s, m) = (seed % f, (seed / 7) % f, (seed / 49) % f);
        let prod = &*basis.unit(k, t, s).unwrap().element * &*basis.unit(k, s, m).unwrap().element;
        let ratio = prod.ratio_to(&basis.unit(k, t, m).unwrap().element);
        prop_assert!(ratio.is_some_and(|r| !r.is_zero()));
    }

    #[test]
    fn decomposition_reconstructs(x in arb_element(4)) {
        let coeffs = decompose(&x).unwrap();
        prop_assert_eq!(unit_basis(4).unwrap().recompose(&coeffs).unwrap(), x);
    }
}

#[test]
fn jucys_murphy_examples() {
    assert!(jucys_murphy(1, 3).unwrap().is_zero());
    assert_eq!(
        jucys_murphy(2, 2).unwrap(),
        AlgebraElement::from_permutation(Permutation::transposition(2, 1, 2).unwrap())
    );
    let x4 = jucys_murphy(4, 4).unwrap();
    assert_eq!(x4.len(), 3);
    for a in 1..4 {
        assert_eq!(x4.coefficient(&Permutation::transposition(4, a, 4).unwrap()), int(1));
    }
    assert!(jucys_murphy(5, 4).is_err());
}

#[test]
fn jucys_murphy_elements_commute() {
    let xs: Vec<_> = (1..=5).map(|i| jucys_murphy(i, 5).unwrap()).collect();
    for a in &xs {
        for b in &xs {
            assert_eq!(a * b, b * a);
        }
    }
}

#[test]
fn projection_algebra_through_degree_four() {
    for d in 1..=4 {
        let ts: Vec<_> = partitions(d)
            .unwrap()
            .iter()
            .flat_map(|s| standard_tableaux(s).unwrap())
            .collect();
        let d_fact = Rational::from_integer(factorial(d));
        let mut sum = AlgebraElement::zero(d);
        for t in &ts {
            let e = minimal_projection(t).unwrap();
            let f = standard_tableaux(t.shape()).unwrap().len() as i64;
            assert_eq!(e.regular_trace(), int(f) / &d_fact);
            for i in 1..=d {
                assert_eq!(&jucys_murphy(i, d).unwrap() * &*e, e.scale(&int(t.content(i))));
            }
            for s in &ts {
                if s != t {
                    assert!((&*e * &*minimal_projection(s).unwrap()).is_zero(), "{t} {s}");
                }
            }
            sum = &sum + &*e;
        }
        assert_eq!(sum, AlgebraElement::identity(d));
    }
}

#[test]
fn unit_products_vanish_on_mismatched_indices() {
    let basis = unit_basis(4).unwrap();
    let units = basis.all_units().unwrap();
    for a in &units {
        for b in &units {
            let prod = &*a.element * &*b.element;
            assert_eq!(prod.is_zero(), a.col != b.row, "({}, {})·({}, {})", a.row, a.col, b.row, b.col);
        }
    }
}

#[test]
fn c_squared_is_path_independent() {
    for d in 2..=5 {
        for shape in partitions(d).unwrap() {
            let ts = standard_tableaux(&shape).unwrap();
            for t in &ts {
                for s in &ts {
                    let paths = minimal_admissible_paths(t, s).unwrap();
                    assert!(!paths.is_empty());
                    let values: Vec<_> = paths.iter().map(|p| c_squared_along(t, p).unwrap()).collect();
                    assert!(values.windows(2).all(|w| w[0] == w[1]), "{t} → {s}: {values:?}");
                }
            }
        }
    }
}

#[test]
fn c_squared_exceeds_one_off_the_diagonal() {
    let basis = unit_basis(4).unwrap();
    for u in basis.all_units().unwrap() {
        if u.row == u.col {
            assert_eq!(u.c_squared, int(1));
        } else {
            assert!(u.c_squared > int(1));
        }
    }
}

/// In Young's orthogonal form `Ẽ_{T,S}` acts as `(1/c)·e_{T,S}`, sending
/// the basis vector of `S` to that of `T`, and other shapes annihilate it.
#[test]
fn young_form_cross_check() {
    for d in 2..=4 {
        let basis = unit_basis(d).unwrap();
        for (k, shape) in basis.shapes().iter().enumerate() {
            let f = basis.tableaux(k).len();
            for r in 0..f {
                for c in 0..f {
                    let u = basis.unit(k, r, c).unwrap();
                    let rho = young_representation(shape, &u.element).unwrap();
                    let mut expected = RealMatrix::zeros(f);
                    expected.set(r, c, 1.0 / u.c_squared.to_f64().unwrap().sqrt());
                    let err = rho.max_abs_diff(&expected);
                    assert!(err < 1e-9, "d={d} {shape:?} ({r},{c}): off by {err}");
                }
            }
            let u = basis.unit(k, 0, 0).unwrap();
            for (k2, other) in basis.shapes().iter().enumerate() {
                if k2 != k {
                    let rho = young_representation(other, &u.element).unwrap();
                    assert!(rho.max_abs_diff(&RealMatrix::zeros(rho.dim())) < 1e-12);
                }
            }
        }
    }
}
