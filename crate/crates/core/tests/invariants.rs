use std::sync::Arc;

use hochschild_core::bar::{differential, homotopy_identity_holds};
use hochschild_core::catalog;
use hochschild_core::extensions::{coboundary_of, cocycle_failure, cocycles_cohomologous, crossed_product};
use hochschild_core::hochschild::coboundary_matrix;
use hochschild_core::linalg::{kernel_basis, rank, smith_normal_form, solve};
use hochschild_core::{Bimodule, Error, Integers, Matrix, PrimeField, Rationals, Ring};
use proptest::prelude::*;

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Integers>> {
    proptest::collection::vec(-4i64..=4, rows * cols).prop_map(move |v| {
        let data = v.into_iter().map(|x| Integers.from_i64(x)).collect();
        Matrix::from_vec(&Integers, rows, cols, data).unwrap()
    })
}

fn shaped() -> impl Strategy<Value = Matrix<Integers>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| int_matrix(r, c))
}

fn to_q(m: &Matrix<Integers>) -> Matrix<Rationals> {
    m.convert(&Rationals, |x| Integers.to_rational(x).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_is_annihilated_and_saturated(m in shaped()) {
        let k = kernel_basis(&m);
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(k.cols() + rank(&m), m.cols());
        let kq = kernel_basis(&to_q(&m));
        prop_assert_eq!(kq.cols(), k.cols());
    }

    #[test]
    fn smith_recomposes(m in shaped()) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv), Matrix::identity(&Integers, m.rows()));
        let f = s.factors();
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]) == 0.into());
        }
    }

    #[test]
    fn solve_recovers_consistent_systems(m in shaped(), seed in proptest::collection::vec(-3i64..=3, 4)) {
        let x: Vec<_> = (0..m.cols()).map(|i| Integers.from_i64(seed[i % seed.len()])).collect();
        let b = m.mul_vec(&x);
        let y = solve(&m, &b).expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn crossed_product_is_associative_exactly_for_cocycles(bits in proptest::collection::vec(0u64..2, 8)) {
        let f2 = PrimeField::new(2).unwrap();
        let module = Bimodule::regular(&Arc::new(catalog::truncated_polynomial(&f2, 2)));
        let b = Matrix::from_vec(&f2, 2, 4, bits).unwrap();
        match (cocycle_failure(&module, &b).unwrap(), crossed_product(&module, &b)) {
            (None, Ok(total)) => prop_assert_eq!(total.rank(), 4),
            (Some((i, j, l)), Err(e)) => prop_assert_eq!(e, Error::NotACocycle { i, j, l }),
            (w, r) => prop_assert!(false, "witness {:?} but crossed product {:?}", w, r.map(|_| ())),
        }
    }

    #[test]
    fn coboundary_shift_is_cohomologous(z in proptest::collection::vec(-3i64..=3, 4)) {
        let module = Bimodule::regular(&Arc::new(catalog::truncated_polynomial(&Integers, 2)));
        let zeta = Matrix::from_vec(&Integers, 2, 2, z.into_iter().map(|x| Integers.from_i64(x)).collect()).unwrap();
        let mut b = Matrix::zeros(&Integers, 2, 4);
        b.set(1, 3, Integers.one());
        let shifted = b.add(&coboundary_of(&module, &zeta).unwrap());
        let eq = cocycles_cohomologous(&module, &shifted, &b).unwrap().expect("differ by a coboundary");
        prop_assert!(eq.map.is_some());
        prop_assert_eq!(coboundary_of(&module, &eq.zeta).unwrap(), shifted.sub(&b));
    }
}

#[test]
fn opposite_is_an_involution() {
    for a in [catalog::upper_triangular(&Rationals), catalog::truncated_free(&Rationals, 2, 2)] {
        assert_eq!(a.opposite().opposite(), a);
        assert_ne!(a.opposite(), a);
    }
}

#[test]
fn complexes_square_to_zero() {
    let a = Arc::new(catalog::upper_triangular(&Integers).to_unital_basis().unwrap().0);
    for normalized in [false, true] {
        for n in 0..3 {
            let lower = differential(&a, n, normalized).unwrap();
            let upper = differential(&a, n + 1, normalized).unwrap();
            assert!(lower.mul(&upper).is_zero());
            assert!(homotopy_identity_holds(&a, n as isize, normalized).unwrap());
        }
        let m = Bimodule::regular(&a);
        for n in 0..3 {
            let b = coboundary_matrix(&m, n, normalized).unwrap();
            let c = coboundary_matrix(&m, n + 1, normalized).unwrap();
            assert!(c.mul(&b).is_zero());
        }
    }
}
