mod common;

use common::{check_engine, form, ideal_input, poly, xyz};
use cover_forge::groebner::{ideal_equal, initial_ideal, Ideal};
use cover_forge::{PolyMatrix, Polynomial, Ring, Substitution};
use num_traits::Zero;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(3, 5), b in poly(3, 5), c in poly(3, 5)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn print_parse_round_trip(a in poly(4, 6)) {
        prop_assert_eq!(xyz().parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn substitution_is_a_homomorphism(a in poly(2, 4), b in poly(2, 4), x in poly(1, 3), y in poly(2, 3)) {
        let r = xyz();
        let mut s = Substitution::within(&r);
        s.set(0, x).unwrap().set(1, y).unwrap();
        prop_assert_eq!(s.apply(&(&a * &b)).unwrap(), &s.apply(&a).unwrap() * &s.apply(&b).unwrap());
        prop_assert_eq!(s.apply(&(&a + &b)).unwrap(), &s.apply(&a).unwrap() + &s.apply(&b).unwrap());
    }

    #[test]
    fn homogenize_then_dehomogenize(a in poly(3, 5)) {
        let big = Ring::degrevlex(&["h", "x", "y", "z"]);
        let lifted = a.to_ring(&big).unwrap();
        let deg = a.total_degree().unwrap_or(0);
        let h = lifted.homogenize(0, deg).unwrap();
        prop_assert!(h.is_homogeneous());
        let back = h.specialize(&[(0, cover_forge::rational::int(1))]);
        prop_assert_eq!(back, lifted);
    }

    #[test]
    fn pfaffian_squares_to_determinant(up in prop::collection::vec(poly(1, 2), 6)) {
        let m = cover_forge::matrix::skew_from_upper(&xyz(), 4, up).unwrap();
        let pf = m.pfaffian().unwrap();
        prop_assert_eq!(&pf * &pf, m.determinant().unwrap());
        prop_assert_eq!(cover_forge::pfaffian4(&m).unwrap(), pf);
    }

    /// A linear change of the variables commutes with taking initial ideals.
    #[test]
    fn initial_ideal_follows_linear_changes(
        gens in prop::collection::vec(poly(2, 4), 1..=3),
        a in prop::collection::vec(-2i64..=2, 9),
    ) {
        let r = xyz();
        let rows: Vec<Vec<cover_forge::Rational>> =
            a.chunks(3).map(|c| c.iter().map(|&v| cover_forge::rational::int(v)).collect()).collect();
        prop_assume!(!cover_forge::linalg::determinant(rows.clone()).is_zero());
        let mut s = Substitution::within(&r);
        for (i, row) in rows.iter().enumerate() {
            let image = row
                .iter()
                .enumerate()
                .fold(r.zero(), |acc, (j, c)| &acc + &r.gen(j).scale(c));
            s.set(i, image).unwrap();
        }
        let all = [0, 1, 2];
        let i = Ideal::new(&r, gens).unwrap();
        let moved_then_initial = initial_ideal(&i.map(&s).unwrap(), &all).unwrap();
        let initial_then_moved = initial_ideal(&i, &all).unwrap().map(&s).unwrap();
        prop_assert!(ideal_equal(&moved_then_initial, &initial_then_moved).unwrap());
    }

    #[test]
    fn engine_invariants(
        (homogeneous, gens) in ideal_input(),
        multipliers in prop::collection::vec(poly(1, 3), 1..=3),
    ) {
        if let Err(e) = check_engine(homogeneous, &gens, &multipliers) {
            return Err(TestCaseError::fail(format!("{e} for {:?}", gens.iter().map(ToString::to_string).collect::<Vec<_>>())));
        }
    }

    #[test]
    fn generic_forms_resolve(f in form(2), g in form(2), h in form(3)) {
        check_engine(true, &[f, g, h], &[Polynomial::one(&xyz())]).map_err(TestCaseError::fail)?;
    }
}

#[test]
fn resolution_of_a_matrix_of_linear_forms() {
    let r = xyz();
    let m = PolyMatrix::parse_rows(&r, &[&["x", "y", "z"], &["y", "z", "x"]]).unwrap();
    let minors: Vec<Polynomial> = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(a, b)| {
            m.minor(
                &[],
                &(0..3).filter(|&c| c != a && c != b).collect::<Vec<_>>(),
            )
            .determinant()
            .unwrap()
        })
        .collect();
    check_engine(true, &minors, &[r.one()]).unwrap();
}
