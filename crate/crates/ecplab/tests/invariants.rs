//! Property-based invariants on randomly drawn fields, codes and specs.

use proptest::prelude::*;

use ecplab::code::LinearCode;
use ecplab::gf::{Field, FieldSpec};
use ecplab::grs::{GrsSpec, ProjPoint};
use ecplab::linalg::Matrix;

fn small_field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just((2u64, 3usize)),
        Just((3, 2)),
        Just((5, 1)),
        Just((7, 1)),
        Just((11, 1)),
    ]
    .prop_map(|(p, m)| FieldSpec::make(p, m).unwrap())
}

fn code_strategy() -> impl Strategy<Value = LinearCode> {
    (small_field(), 2usize..8).prop_flat_map(|(f, n)| {
        let q = f.order();
        (1usize..=n).prop_flat_map(move |k| {
            let f = f.clone();
            proptest::collection::vec(0..q, k * n).prop_map(move |flat| {
                let rows: Vec<Vec<u64>> = flat.chunks(n).map(|c| c.to_vec()).collect();
                LinearCode::from_generator(Matrix::from_rows(&f, rows))
            })
        })
    })
}

fn code_pair_strategy() -> impl Strategy<Value = (LinearCode, LinearCode)> {
    (small_field(), 2usize..8).prop_flat_map(|(f, n)| {
        let q = f.order();
        let one = move |f: Field| {
            (1usize..=n).prop_flat_map(move |k| {
                let f = f.clone();
                proptest::collection::vec(0..q, k * n).prop_map(move |flat| {
                    let rows: Vec<Vec<u64>> = flat.chunks(n).map(|c| c.to_vec()).collect();
                    LinearCode::from_generator(Matrix::from_rows(&f, rows))
                })
            })
        };
        (one(f.clone()), one(f))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ops_satisfy_ring_axioms(f in small_field(), a in 0u64..8, b in 0u64..8, c in 0u64..8) {
        let q = f.order();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.pow(a, q), a);
    }

    #[test]
    fn dual_is_involutive_and_dimension_complementary(c in code_strategy()) {
        let d = c.dual();
        prop_assert_eq!(d.dim(), c.len() - c.dim());
        prop_assert!(d.dual().equals(&c).unwrap());
    }

    #[test]
    fn singleton_bound_holds(c in code_strategy()) {
        if let Ok(d) = c.min_distance() {
            prop_assert!(d <= c.len() - c.dim() + 1);
        }
    }

    #[test]
    fn schur_product_is_commutative_and_monotone((c, c2) in code_pair_strategy()) {
        let ab = c.schur_product(&c2).unwrap();
        let ba = c2.schur_product(&c).unwrap();
        prop_assert!(ab.equals(&ba).unwrap());
        // monotone: enlarging the left factor can only enlarge the product
        let bigger = LinearCode::from_generator(c.generator().vstack(c2.generator()));
        prop_assert!(bigger.schur_product(&c2).unwrap().contains(&ab).unwrap());
    }

    #[test]
    fn grs_specs_generate_mds_codes(seedk in 1usize..5, n in 5usize..8) {
        let f = FieldSpec::make(7, 1).unwrap();
        let k = seedk.min(n);
        let a: Vec<ProjPoint> = (0..n as u64 - 1)
            .map(ProjPoint::Finite)
            .chain(std::iter::once(ProjPoint::Infinity))
            .collect();
        let spec = GrsSpec::new(&f, a, vec![1; n], k).unwrap();
        prop_assert!(spec.code().is_mds().unwrap());
    }
}
