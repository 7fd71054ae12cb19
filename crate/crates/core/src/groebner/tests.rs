use super::*;
use crate::poly::{graded_component_basis, parse_polynomial, RationalMatrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring(names: &[&str]) -> Arc<PolyRing> {
    PolyRing::new(names).unwrap()
}

fn ideal(r: &Arc<PolyRing>, text: &str) -> Ideal {
    Ideal::parse(r, text).unwrap()
}

fn shown(g: &GroebnerBasis) -> Vec<String> {
    g.polys().iter().map(|p| p.to_string()).collect()
}

#[test]
fn monomial_input_is_reduced() {
    let r = ring(&["x", "y"]);
    let g = ideal(&r, "x^2, x*y").groebner().unwrap();
    assert_eq!(shown(&g), ["x^2", "x*y"]);
}

#[test]
fn one_s_pair() {
    let r = ring(&["x", "y"]);
    let g = ideal(&r, "x^2+y^2, x*y").groebner().unwrap();
    assert_eq!(shown(&g), ["x^2 + y^2", "x*y", "y^3"]);
    let p = parse_polynomial(&r, "x^2*y").unwrap();
    assert!(normal_form(&p, &g).is_zero());
}

#[test]
fn monic_principal() {
    let r = ring(&["x", "y"]);
    let g = ideal(&r, "2*x - 2*y").groebner().unwrap();
    assert_eq!(shown(&g), ["x - y"]);
}

#[test]
fn normal_forms() {
    let r = ring(&["x", "y"]);
    let g = ideal(&r, "y").groebner().unwrap();
    let x = parse_polynomial(&r, "x").unwrap();
    assert_eq!(normal_form(&x, &g), x);
    let g2 = ideal(&r, "x^2, x*y").groebner().unwrap();
    assert!(normal_form(&parse_polynomial(&r, "x^2").unwrap(), &g2).is_zero());
}

#[test]
fn initial_ideal_deglex() {
    let r = ring(&["x", "y", "z", "w"]);
    let i = ideal(&r, "x^3 - y*z*w, x^2*y - z*w^2");
    let init = initial_ideal(&i, &TermOrder::DegLex).unwrap();
    let expected = MonomialIdeal::from_ideal(&ideal(&r, "x^2*y, x^3, x*z*w^2, x*y^3*z*w, y^5*z*w")).unwrap();
    assert_eq!(init.gens().len(), 5);
    assert!(init.contains_ideal(&expected) && expected.contains_ideal(&init));
    let lin = initial_ideal(&ideal(&r, "x + y"), &TermOrder::Lex).unwrap();
    assert_eq!(lin.to_string(), "(x)");
}

#[test]
fn equality() {
    let r = ring(&["x", "y"]);
    let o = TermOrder::GrevLex;
    assert!(ideal_equal(&ideal(&r, "x, y"), &ideal(&r, "y, x+y"), &o).unwrap());
    assert!(!ideal_equal(&ideal(&r, "x"), &ideal(&r, "x^2"), &o).unwrap());
    let m2 = ideal(&r, "x^2, x*y, y^2");
    let lhs = ideal(&r, "x^2, y^2").product(&m2);
    assert!(ideal_equal(&lhs, &m2.product(&m2), &o).unwrap());
}

#[test]
fn colons() {
    let r = ring(&["x", "y"]);
    let o = TermOrder::GrevLex;
    let c = colon(&ideal(&r, "x*y, y^2"), &ideal(&r, "y")).unwrap();
    assert!(ideal_equal(&c, &ideal(&r, "x, y"), &o).unwrap());
    let rs = ring(&["s", "t"]);
    let c = colon(&ideal(&rs, "s^3, s^2*t, s*t^2, t^3"), &ideal(&rs, "s, t")).unwrap();
    assert!(ideal_equal(&c, &ideal(&rs, "s^2, s*t, t^2"), &o).unwrap());
    let i = ideal(&r, "x^2 + y^2, x*y");
    assert!(ideal_equal(&colon(&i, &Ideal::unit(&r)).unwrap(), &i, &o).unwrap());
    assert_eq!(colon(&i, &Ideal::zero(&r)).unwrap_err(), GroebnerError::ZeroColon);
}

#[test]
fn colon_non_monomial() {
    let r = ring(&["x", "y", "z"]);
    let o = TermOrder::GrevLex;
    // (x*(y - z), y*(y - z)) : (y - z) = (x, y)
    let i = ideal(&r, "x*y - x*z, y^2 - y*z");
    let c = colon_poly(&i, &parse_polynomial(&r, "y - z").unwrap()).unwrap();
    assert!(ideal_equal(&c, &ideal(&r, "x, y"), &o).unwrap());
}

#[test]
fn saturations() {
    let r = ring(&["x", "y"]);
    let o = TermOrder::GrevLex;
    let m = ideal(&r, "x, y");
    let (s, k) = saturate(&ideal(&r, "x*y, y^2"), &m).unwrap();
    assert!(ideal_equal(&s, &ideal(&r, "y"), &o).unwrap());
    assert_eq!(k, 1);
    let (s, k) = saturate(&ideal(&r, "x^2, x*y"), &m).unwrap();
    assert!(ideal_equal(&s, &ideal(&r, "x"), &o).unwrap());
    assert_eq!(k, 1);
    let (s, k) = saturate(&ideal(&r, "x"), &m).unwrap();
    assert!(ideal_equal(&s, &ideal(&r, "x"), &o).unwrap());
    assert_eq!(k, 0);
    // the exponent is minimal: the previous colon differs
    let i = ideal(&r, "x^3*y, x^2*y^2 + x*y^3, y^5");
    let (s, k) = saturate(&i, &m).unwrap();
    let mut prev = i.clone();
    for _ in 1..k {
        prev = colon(&prev, &m).unwrap();
    }
    assert!(!ideal_equal(&prev, &s, &o).unwrap());
    let sp = saturate_poly(&ideal(&r, "x*y^2, x^2*y"), &parse_polynomial(&r, "y").unwrap()).unwrap();
    assert!(ideal_equal(&sp, &ideal(&r, "x"), &o).unwrap());
}

#[test]
fn lengths_and_socle() {
    let r = ring(&["x", "y"]);
    let o = TermOrder::GrevLex;
    assert_eq!(artinian_length(&ideal(&r, "x^2, y^2"), &o).unwrap().total(), Some(4));
    assert_eq!(socle_degree(&ideal(&r, "x^2, y^2")).unwrap(), 2);
    let m = ideal(&r, "x, y");
    let mut p = m.clone();
    for n in 1..6u64 {
        assert_eq!(artinian_length(&p, &o).unwrap().total(), Some(n * (n + 1) / 2));
        assert_eq!(socle_degree(&p).unwrap() as u64, n - 1);
        p = p.product(&m);
    }
    assert_eq!(artinian_length(&ideal(&r, "x"), &o).unwrap(), StaircaseCount::Infinite);
    assert_eq!(socle_degree(&ideal(&r, "x")).unwrap_err(), GroebnerError::NotArtinian);
}

#[test]
fn four_variable_colon_series() {
    let r = ring(&["x1", "x2", "x3", "x4"]);
    let j = ideal(&r, "x1^3, x2^3, x3^3, x4^3");
    let a = parse_polynomial(&r, "x1^2*x2 + x3^2*x4").unwrap();
    let c = colon_poly(&j, &a).unwrap();
    match artinian_length(&c, &TermOrder::GrevLex).unwrap() {
        StaircaseCount::Finite { per_degree, total } => {
            assert_eq!(per_degree, vec![1, 4, 9, 9, 4, 1]);
            assert_eq!(total, 28);
        }
        StaircaseCount::Infinite => panic!("expected finite length"),
    }
    assert_eq!(socle_degree(&c).unwrap(), 5);
}

#[test]
fn gcd_and_lcm() {
    let r = ring(&["x", "y"]);
    let p = |s: &str| parse_polynomial(&r, s).unwrap();
    let g = poly_gcd(&p("(x+y)^2*(x-y)"), &p("(x+y)*(x-y)^3*y")).unwrap();
    assert_eq!(g, p("x^2 - y^2"));
    assert!(poly_gcd(&p("x"), &p("y")).unwrap().is_one());
}

#[test]
fn minimal_generator_sets() {
    let r = ring(&["x", "y"]);
    let i = ideal(&r, "x^2, x^2 + x*y, x*y, y^3, x^3 + y^3");
    assert_eq!(minimal_generators(&i).unwrap().gens().len(), 3);
}

#[test]
fn resource_cap_is_reported() {
    let r = ring(&["x", "y", "z"]);
    let i = ideal(&r, "x^3 - y*z^2, y^3 - x*z^2, x*y*z - z^3");
    let tiny = Limits {
        max_basis: 2,
        ..Limits::default()
    };
    assert!(matches!(
        buchberger_with_limits(&i, &TermOrder::GrevLex, &tiny),
        Err(GroebnerError::DeskScaleExceeded(_))
    ));
}

fn random_homogeneous(rng: &mut ChaCha8Rng, r: &Arc<PolyRing>) -> Ideal {
    let ngens = rng.gen_range(1..=4);
    let gens = (0..ngens)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            let basis = graded_component_basis(r, d);
            let nterms = rng.gen_range(1..=3);
            Polynomial::from_terms(
                r,
                (0..nterms).map(|_| {
                    let m = basis.choose(rng).unwrap().clone();
                    (m, crate::poly::rat(rng.gen_range(-3..=3)))
                }),
            )
        })
        .collect();
    Ideal::new(r, gens)
}

/// dim_k (R/I)_d by linear algebra on the span of multiples of generators.
fn quotient_dim(i: &Ideal, d: u32) -> usize {
    let r = i.ring();
    let target = graded_component_basis(r, d);
    let mut rows = Vec::new();
    for g in i.gens() {
        let gd = g.degree().unwrap();
        if gd > d {
            continue;
        }
        for m in graded_component_basis(r, d - gd) {
            let p = g.mul_term(&m, &num_rational::BigRational::one());
            rows.push(target.iter().map(|t| p.coeff_of(t)).collect());
        }
    }
    if rows.is_empty() {
        return target.len();
    }
    target.len() - RationalMatrix::from_rows(rows).unwrap().rank()
}

use num_traits::One;

#[test]
fn macaulay_property_random() {
    let r = ring(&["x", "y", "z"]);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let i = random_homogeneous(&mut rng, &r);
        let init = initial_ideal(&i, &TermOrder::GrevLex).unwrap().to_ideal();
        for d in 0..=8 {
            assert_eq!(quotient_dim(&i, d), quotient_dim(&init, d), "ideal {i} degree {d}");
        }
    }
}

#[test]
fn reduced_basis_is_unique_under_shuffles() {
    let r = ring(&["x", "y", "z"]);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let i = random_homogeneous(&mut rng, &r);
        let g = i.groebner().unwrap();
        let mut gens = i.gens().to_vec();
        gens.shuffle(&mut rng);
        let scaled: Vec<Polynomial> = gens.iter().map(|p| p.scale(&crate::poly::rat(-2))).collect();
        let g2 = Ideal::new(&r, scaled).groebner().unwrap();
        assert_eq!(g, g2);
        for p in g.polys() {
            assert_eq!(p.leading_coeff().unwrap(), &num_rational::BigRational::one());
        }
    }
}

#[test]
fn normal_form_membership_and_idempotence() {
    let r = ring(&["x", "y", "z"]);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let i = random_homogeneous(&mut rng, &r);
        let g = i.groebner().unwrap();
        // explicit cofactor combination lies in the ideal
        let mut comb = Polynomial::zero(&r);
        for gen in i.gens() {
            let m = graded_component_basis(&r, rng.gen_range(0..3)).choose(&mut rng).unwrap().clone();
            comb = &comb + &gen.mul_term(&m, &crate::poly::rat(rng.gen_range(1..4)));
        }
        assert!(g.normal_form(&comb).is_zero());
        let p = random_homogeneous(&mut rng, &r).gens()[0].clone();
        let nf = g.normal_form(&p);
        assert_eq!(g.normal_form(&nf), nf);
        assert!(g.contains(&(&p - &nf)));
    }
}
