use hopfcat::graded::{build_kg, crossed_product, cyclic_table, graded_galois_report, strong_grading_check, Groupoid};
use hopfcat::hopfcat::double_dual_compare;
use hopfcat::lincat::Algebra;
use hopfcat::{quotient_by, Field, Mat};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::prime(5).unwrap()), Just(Field::prime(7).unwrap())]
}

fn mat(f: Field, rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| Mat::from_fn(f, rows, cols, |r, c| f.int(v[r * cols + c])))
}

fn sized() -> impl Strategy<Value = (Field, Mat)> {
    (field(), 1usize..5, 1usize..5).prop_flat_map(|(f, r, c)| (Just(f), mat(f, r, c)))
}

proptest! {
    #[test]
    fn rank_plus_nullity((_, a) in sized()) {
        let k = a.kernel_basis();
        prop_assert_eq!(a.rank() + k.cols(), a.cols());
        prop_assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn solve_recovers_consistent_systems((f, a) in sized(), seed in prop::collection::vec(-3i64..=3, 4)) {
        let x = Mat::from_fn(f, a.cols(), 1, |r, _| f.int(seed[r % seed.len()]));
        let b = a.mul(&x);
        let y = a.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(a.mul(&y), b);
    }

    #[test]
    fn kron_mixed_product((a, b, c, e) in (field(), prop::collection::vec(1usize..3, 3)).prop_flat_map(|(f, d)| {
        (mat(f, d[0], d[1]), mat(f, d[1], d[2]), mat(f, d[1], d[0]), mat(f, d[2], d[1]))
    })) {
        prop_assert_eq!(a.kron(&b).mul(&c.kron(&e)), a.mul(&c).kron(&b.mul(&e)));
    }

    #[test]
    fn quotient_projection_and_section((f, rel) in sized()) {
        let q = quotient_by(f, rel.cols(), &rel);
        prop_assert_eq!(q.dim(), rel.cols() - rel.rank());
        prop_assert!(q.projection.mul(&rel.transpose()).is_zero());
        prop_assert_eq!(q.projection.mul(&q.section), Mat::identity(f, q.dim()));
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn groupoid_algebras_dualize_back(comp in prop::collection::vec(0usize..2, 1..4), orders in prop::collection::vec(1usize..3, 2)) {
        let groups: Vec<_> = orders.iter().map(|&m| cyclic_table(m)).collect();
        let g = Groupoid::assemble(&comp, &groups).unwrap();
        let h = build_kg(Field::Rational, &g).unwrap();
        prop_assert!(h.base.validate().is_ok());
        prop_assert!(h.validate_antipode().report.is_ok());
        prop_assert!(double_dual_compare(&h).is_ok());
    }

    #[test]
    fn crossed_products_are_galois(n in 1usize..3, m in 1usize..3, t in prop::collection::vec((1i64..4, -2i64..3), 8)) {
        let f = Field::Rational;
        let r = Algebra::new(2, Mat::from_i64(f, 2, 4, &[1, 0, 0, 0, 0, 1, 1, 0]), Mat::from_i64(f, 2, 1, &[1, 0])).unwrap();
        let g = Groupoid::cyclic_indiscrete(n, m).unwrap();
        let twist: Vec<Mat> = (0..g.size()).map(|s| { let (a, b) = t[s % t.len()]; Mat::from_i64(f, 2, 1, &[a, b]) }).collect();
        let (a, gr) = crossed_product(&g, &r, &twist).unwrap();
        prop_assert!(a.validate().is_ok());
        prop_assert!(strong_grading_check(&a, &g, &gr).strong);
        let rep = graded_galois_report(&a, &g, &gr, &[]).unwrap();
        prop_assert!(rep.agree && rep.galois && rep.adjunction);
    }
}
