use super::*;
use crate::rational::{int, rat};

fn r2() -> Ring {
    Ring::degrevlex(&["z1", "z2"])
}

#[test]
fn principal_monomial_ideal() {
    let r = r2();
    let gb = buchberger(&[r.parse("z1").unwrap()], TermOrder::DegRevLex).unwrap();
    assert_eq!(gb.to_text(), vec!["z1"]);
}

#[test]
fn square_of_maximal_ideal_is_a_basis() {
    let r = r2();
    let gens: Vec<_> = ["z1^2", "z1*z2", "z2^2"]
        .iter()
        .map(|s| r.parse(s).unwrap())
        .collect();
    let gb = buchberger(&gens, TermOrder::DegRevLex).unwrap();
    assert_eq!(gb.len(), 3);
    assert!(gb.satisfies_buchberger_criterion());
    assert_eq!(
        gb.normal_form(&r.parse("z1*z2 + 1").unwrap()).unwrap(),
        r.one()
    );
}

#[test]
fn permuted_generators_same_basis() {
    let r = Ring::degrevlex(&["x", "y", "z"]);
    let g1: Vec<_> = ["x^2 - y*z", "x*y - z^2 + x", "y^3 - 2*x*z"]
        .iter()
        .map(|s| r.parse(s).unwrap())
        .collect();
    let mut g2 = g1.clone();
    g2.reverse();
    g2[0] = g2[0].scale(&rat(-3, 2));
    let a = buchberger(&g1, TermOrder::DegRevLex).unwrap();
    let b = buchberger(&g2, TermOrder::DegRevLex).unwrap();
    assert_eq!(a, b);
    assert!(a.is_reduced());
    assert!(a.satisfies_buchberger_criterion());
}

#[test]
fn lex_basis_of_twisted_cubic() {
    let r = Ring::new(&["t", "x", "y", "z"], TermOrder::Lex).unwrap();
    let gens: Vec<_> = ["x - t", "y - t^2", "z - t^3"]
        .iter()
        .map(|s| r.parse(s).unwrap())
        .collect();
    let gb = buchberger(&gens, TermOrder::Lex).unwrap();
    let elim: Vec<_> = gb
        .polynomials()
        .into_iter()
        .filter(|g| !g.involves(0))
        .collect();
    let expected: Vec<_> = ["x^2 - y", "x*y - z", "x*z - y^2", "y^3 - z^2"]
        .iter()
        .map(|s| r.parse(s).unwrap())
        .collect();
    assert_eq!(elim.len(), 4, "{elim:?}");
    for e in &expected {
        assert!(elim.contains(e), "missing {e}");
    }
    assert!(gb.contains(&r.parse("z - x^3").unwrap()).unwrap());
}

#[test]
fn koszul_syzygy() {
    let r = Ring::degrevlex(&["x", "y"]);
    let syz = syzygy_module(&[r.parse("x").unwrap(), r.parse("y").unwrap()]).unwrap();
    assert_eq!(syz.len(), 1);
    let s = &syz[0];
    assert!(
        s == &FreeModuleElement::parse(&r, &["y", "-x"]).unwrap()
            || s == &FreeModuleElement::parse(&r, &["-y", "x"]).unwrap()
    );
}

#[test]
fn triple_cover_syzygies() {
    let r = r2();
    let gens: Vec<_> = ["z1^2", "z1*z2", "z2^2"]
        .iter()
        .map(|s| r.parse(s).unwrap())
        .collect();
    let syz = syzygy_module(&gens).unwrap();
    assert_eq!(syz.len(), 2);
    for s in &syz {
        assert!(s.contract(&gens).unwrap().is_zero());
    }
    let expected = [
        FreeModuleElement::parse(&r, &["0", "-z2", "z1"]).unwrap(),
        FreeModuleElement::parse(&r, &["z2", "-z1", "0"]).unwrap(),
    ];
    let gb = module_groebner(&syz, &[2, 2, 2], TermOrder::DegRevLex).unwrap();
    for e in &expected {
        assert!(gb.contains_element(e).unwrap());
    }
    let back = module_groebner(&expected, &[2, 2, 2], TermOrder::DegRevLex).unwrap();
    for s in &syz {
        assert!(back.contains_element(s).unwrap());
    }
}

#[test]
fn minimal_generators() {
    let r = r2();
    let gens: Vec<_> = ["z1", "z1^2", "z2"]
        .iter()
        .map(|s| r.parse(s).unwrap())
        .collect();
    let m = min_generators(&gens).unwrap();
    assert_eq!(m, vec![r.parse("z1").unwrap(), r.parse("z2").unwrap()]);
    let single = [r.parse("z1^2").unwrap()];
    assert_eq!(min_generators(&single).unwrap(), single.to_vec());
    assert!(matches!(
        min_generators(&[r.parse("z1 + 1").unwrap()]),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn echelon_generators_are_canonical() {
    let r = r2();
    let a: Vec<_> = ["z1^2 + z1*z2", "z1*z2 - z2^2", "z1^2 + z2^2", "z1^3"]
        .iter()
        .map(|s| r.parse(s).unwrap())
        .collect();
    let b: Vec<_> = ["z1^2 + z2^2", "3*z1*z2 - 3*z2^2", "2*z1^3 + z1*z2^2"]
        .iter()
        .map(|s| r.parse(s).unwrap())
        .collect();
    assert_eq!(
        min_generators_echelon(&a).unwrap(),
        min_generators_echelon(&b).unwrap()
    );
}

#[test]
fn resolution_betti_numbers() {
    let r = r2();
    let i = Ideal::parse(&r, &["z1^2", "z1*z2", "z2^2"]).unwrap();
    let res = free_resolution(&i, 5).unwrap();
    assert_eq!(res.betti(), vec![1, 3, 2]);
    assert!(res.is_complex().unwrap());
    assert!(res.is_minimal());
    assert!(!res.is_truncated());
    assert_eq!(res.table()[2].twists, vec![3, 3]);

    let p = Ideal::parse(&r, &["z1^3 - z2^3"]).unwrap();
    assert_eq!(free_resolution(&p, 5).unwrap().betti(), vec![1, 1]);

    let t = free_resolution(&i, 1).unwrap();
    assert!(t.is_truncated());
}

#[test]
fn degree_six_cone_betti() {
    let r = Ring::degrevlex(&["z1", "z2", "w1", "w2"]);
    let i = Ideal::parse(
        &r,
        &[
            "z1^2",
            "z1*z2",
            "z2^2",
            "z1*w1",
            "1/2*(z1*w2+z2*w1)",
            "z2*w2",
            "w1^2",
            "w1*w2",
            "w2^2",
        ],
    )
    .unwrap();
    let res = free_resolution(&i, 6).unwrap();
    assert_eq!(res.betti(), vec![1, 9, 16, 9, 1]);
    assert_eq!(res.table()[4].twists, vec![6]);
    assert!(res.is_complex().unwrap());
    assert!(res.is_minimal());
    let syz = syzygy_module(i.gens()).unwrap();
    let mins = module_min_generators(&syz, &[2; 9]).unwrap();
    assert_eq!(mins.len(), 16);
}

#[test]
fn elimination() {
    let r = Ring::degrevlex(&["z", "w"]);
    let i = Ideal::parse(&r, &["z - w"]).unwrap();
    assert!(eliminate(&i, &[0]).unwrap().is_zero());
    let j = Ideal::parse(&r, &["z*w"]).unwrap();
    assert!(eliminate(&j, &[0]).unwrap().is_zero());
    let s = Ring::degrevlex(&["t", "x", "y"]);
    let k = Ideal::parse(&s, &["x - t^2", "y - t^3"]).unwrap();
    let e = eliminate(&k, &[0]).unwrap();
    assert_eq!(e.gens().len(), 1);
    assert!(e.gens()[0]
        .scalar_ratio(&s.parse("x^3 - y^2").unwrap())
        .is_some());
}

#[test]
fn equality_of_ideals() {
    let r = r2();
    let a = Ideal::parse(&r, &["z1", "z2^2"]).unwrap();
    let b = Ideal::parse(&r, &["z2^2 + 3*z1", "-2*z1"]).unwrap();
    assert!(ideal_equal(&a, &b).unwrap());
    let c = Ideal::parse(&r, &["z1"]).unwrap();
    let d = Ideal::parse(&r, &["z1^2"]).unwrap();
    assert!(!ideal_equal(&c, &d).unwrap());
}

#[test]
fn staircase() {
    let r = r2();
    let gb = Ideal::parse(&r, &["z1"]).unwrap().groebner().unwrap();
    assert_eq!(standard_monomials(&gb), StandardMonomials::Infinite);
    let gb = Ideal::parse(&r, &["z1^2", "z1*z2", "z2^2"])
        .unwrap()
        .groebner()
        .unwrap();
    assert_eq!(standard_monomials(&gb).count(), Some(3));
}

#[test]
fn triple_cover_fiber_has_three_points() {
    let r = r2();
    // c = (1, 0, 0, 1): z^2 - w, zw - 1, w^2 - z
    let gb = Ideal::parse(&r, &["z1^2 - z2", "z1*z2 - 1", "z2^2 - z1"])
        .unwrap()
        .groebner()
        .unwrap();
    let StandardMonomials::Finite(basis) = standard_monomials(&gb) else {
        panic!("zero-dimensional expected")
    };
    assert_eq!(basis.len(), 3);
    for v in ["z1", "z2"] {
        let m = multiplication_matrix(&gb, &r.parse(v).unwrap()).unwrap();
        assert_eq!(trace(&m), int(0));
    }
    let i = initial_ideal(&Ideal::new(&r, gb.polynomials()).unwrap(), &[0, 1]).unwrap();
    let q = Ideal::parse(&r, &["z1^2", "z1*z2", "z2^2"]).unwrap();
    assert!(ideal_equal(&i, &q).unwrap());
}

#[test]
fn cofactors_reconstruct_members() {
    let r = Ring::degrevlex(&["x", "y", "z"]);
    let gens: Vec<_> = ["x^2 - y", "x*y - z"]
        .iter()
        .map(|s| r.parse(s).unwrap())
        .collect();
    let f = r.parse("x^3*y - x*z + y^2 - y*x^2").unwrap();
    let inside = &(&r.parse("x*y").unwrap() * &gens[0]) + &(&r.parse("y - 1").unwrap() * &gens[1]);
    let a = divide(&inside, &gens).unwrap().expect("member");
    let back = &(&a[0] * &gens[0]) + &(&a[1] * &gens[1]);
    assert_eq!(back, inside);
    let gb = buchberger(&gens, TermOrder::DegRevLex).unwrap();
    assert_eq!(
        divide(&f, &gens).unwrap().is_some(),
        gb.contains(&f).unwrap()
    );
    assert!(divide(&r.parse("x").unwrap(), &gens).unwrap().is_none());
}
