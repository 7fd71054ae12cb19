use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::poly::parse_polynomial;

fn ring(names: &[&str]) -> Arc<PolyRing> {
    PolyRing::new(names).unwrap()
}

fn poly(r: &Arc<PolyRing>, text: &str) -> Polynomial {
    parse_polynomial(r, text).unwrap()
}

fn param(text: &str) -> Parametrization {
    Parametrization::parse(&ring(&["s", "t"]), text).unwrap()
}

fn same_up_to_sign(a: &Polynomial, b: &Polynomial) -> bool {
    a == b || a == &-b
}

fn columns(b: &MuBasis) -> Vec<Vec<String>> {
    b.columns.iter().map(|c| c.iter().map(|p| p.to_string()).collect()).collect()
}

#[test]
fn parametrization_checks() {
    let r = ring(&["s", "t"]);
    assert!(matches!(
        Parametrization::parse(&r, "s^3, s^2*t, s*t^2"),
        Err(SylvesterError::CommonFactor)
    ));
    assert!(matches!(Parametrization::parse(&r, "s^2, t^3, s*t"), Err(SylvesterError::BadForms)));
    assert!(matches!(Parametrization::parse(&r, "s, t"), Err(SylvesterError::BadForms)));
    assert!(matches!(
        Parametrization::parse(&r, "s^2 - t^2, s*t, 2*s*t"),
        Err(SylvesterError::LinearlyDependent)
    ));
    let bad = ring(&["s", "T1"]);
    assert!(matches!(
        Parametrization::parse(&bad, "s, T1, s + T1"),
        Err(SylvesterError::NameCollision(_))
    ));
    assert!(matches!(
        Parametrization::parse(&ring(&["s", "t", "u"]), "s, t, u"),
        Err(SylvesterError::NotBinaryRing)
    ));
}

#[test]
fn mu_bases() {
    let b = mu_basis(&param("s^2, s*t, t^2")).unwrap();
    assert_eq!((b.mu, b.degrees), (1, (1, 1)));
    let b = mu_basis(&param("s^4, t^4, s^3*t")).unwrap();
    assert_eq!(b.degrees, (1, 3));
    let c0 = columns(&b)[0].clone();
    assert!(c0 == ["t", "0", "-s"] || c0 == ["-t", "0", "s"]);
    let b = mu_basis(&param("s^4, s^2*t^2, t^4")).unwrap();
    assert_eq!(b.degrees, (2, 2));
    // the minors give back the forms up to one scalar
    for text in ["s^2, s*t, t^2", "s^4, t^4, s^3*t", "s^3 - t^3, s^2*t + t^3, s*t^2", "s^5, t^5, s^2*t^3 + s^4*t"] {
        let p = param(text);
        let b = mu_basis(&p).unwrap();
        assert_eq!(b.degrees.0 + b.degrees.1, p.degree());
        let m = b.minors();
        let c = m[0].scalar_ratio(&p.forms()[0]).unwrap();
        for i in 0..3 {
            assert_eq!(m[i].scalar_ratio(&p.forms()[i]), Some(c.clone()));
        }
        for col in &b.columns {
            let sum = (0..3).fold(Polynomial::zero(p.ring()), |acc, i| &acc + &(&col[i] * &p.forms()[i]));
            assert!(sum.is_zero());
        }
    }
}

#[test]
fn contents_and_cm() {
    let r = ring(&["s", "t"]);
    let c = content_pair(&r, &[poly(&r, "t"), poly(&r, "-s"), poly(&r, "0")]).unwrap();
    assert_eq!(c.to_string(), "(s, t)");
    let c = content_pair(&r, &[poly(&r, "0"), poly(&r, "s^3"), poly(&r, "-t^3")]).unwrap();
    assert_eq!(c.to_string(), "(s^3, t^3)");
    let rep = cm_rees_test(&param("s^2, s*t, t^2")).unwrap();
    assert!(rep.cohen_macaulay);
    let rep = cm_rees_test(&param("s^4, s^2*t^2, t^4")).unwrap();
    assert!(rep.cohen_macaulay);
    assert_eq!(rep.monomial_check, Some(true));
    assert_eq!(rep.contents[0].to_string(), "(s^2, t^2)");
    let rep = cm_rees_test(&param("s^4, t^4, s^3*t")).unwrap();
    assert!(!rep.cohen_macaulay);
    assert_eq!(rep.monomial_check, Some(false));
}

#[test]
fn basic_forms() {
    let r = ring(&["s", "t", "x"]);
    let (s, t) = (poly(&r, "s"), poly(&r, "t"));
    assert!(basic_sylvester(&s, &t, &s, &t).unwrap().poly.is_one());
    let f = poly(&r, "x*s^2 + x*t^2");
    let h = basic_sylvester(&f, &poly(&r, "s*t"), &s, &t).unwrap();
    assert_eq!(h.bidegree(), Some((2, 1)));
    assert!(matches!(
        basic_sylvester(&poly(&r, "s"), &t, &poly(&r, "s^2"), &poly(&r, "t^2")),
        Err(SylvesterError::NotInContent)
    ));
    assert!(matches!(basic_sylvester(&s, &t, &poly(&r, "x*s"), &t), Err(SylvesterError::NotBinary)));
    let m = vec![
        vec![poly(&r, "x"), poly(&r, "s"), poly(&r, "1")],
        vec![poly(&r, "t"), poly(&r, "2"), poly(&r, "x")],
        vec![poly(&r, "0"), poly(&r, "s*t"), poly(&r, "3")],
    ];
    // cofactor expansion along the first column
    let m11 = &(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]);
    let m21 = &(&m[0][1] * &m[2][2]) - &(&m[0][2] * &m[2][1]);
    let expect = &(&m[0][0] * &m11) - &(&m[1][0] * &m21);
    assert_eq!(determinant(&m), expect);
}

#[test]
fn generic_mu1_chain() {
    let r = ring(&["s", "t", "a", "b", "x", "y", "z", "u", "v", "w"]);
    let f = poly(&r, "a*s + b*t");
    let c = poly(&r, "x*s^2 + y*s*t + z*t^2");
    let d = poly(&r, "u*s^2 + v*s*t + w*t^2");
    let g = &(&c * &poly(&r, "s")) + &(&d * &poly(&r, "t"));
    let (s, t) = (poly(&r, "s"), poly(&r, "t"));
    let h1 = SylvesterForm::from_matrix(&f, &g, [[poly(&r, "a"), poly(&r, "b")], [c, d]], &s, &t, "h1").unwrap();
    assert_eq!(
        h1.poly,
        poly(&r, "-b*x*s^2 - b*y*s*t - b*z*t^2 + a*u*s^2 + a*v*s*t + a*w*t^2")
    );
    let h2 = basic_sylvester(&f, &h1.poly, &s, &t).unwrap();
    assert_eq!(
        h2.poly,
        poly(&r, "b^2*x*s + b^2*y*t - a*b*z*t - a*b*u*s - a*b*v*t + a^2*w*t")
    );
    let h3 = basic_sylvester(&f, &h2.poly, &s, &t).unwrap();
    assert_eq!(
        h3.poly,
        poly(&r, "-b^3*x + a*b^2*y - a^2*b*z + a*b^2*u - a^2*b*v + a^3*w")
    );
    // the automatic first step differs from ad - bc by a multiple of f
    let auto = chain_mu1(&f, &g).unwrap();
    assert_eq!(auto.len(), 3);
    let diff = &auto[0].poly - &h1.poly;
    assert!(diff.exact_div(&f).is_ok());
}

#[test]
fn generic_degree5_block() {
    let r = ring(&["s", "t", "x", "y", "z", "A", "B", "C", "D"]);
    let f = poly(&r, "s^2*x + s*t*y + t^2*z");
    let g = poly(&r, "s^3*A + s^2*t*B + s*t^2*C + t^3*D");
    let h = basic_sylvester(&f, &g, &poly(&r, "s^2"), &poly(&r, "t")).unwrap();
    let shown = poly(&r, "s^2*(-y*A) + s*t*(x*C - y*B - z*A) + t^2*(x*D - z*B)");
    assert!(same_up_to_sign(&h.poly, &shown));
    let h2 = basic_sylvester(&f, &g, &poly(&r, "s"), &poly(&r, "t^2")).unwrap();
    let shown2 = poly(&r, "s^2*(x*C - z*A) + s*t*(x*D + y*C - z*B) + t^2*(y*D)");
    // another cofactor matrix: same form modulo f
    assert!((&h2.poly - &shown2).exact_div(&f).is_ok());
    let b2 = [
        [poly(&r, "x*s + y*t"), poly(&r, "z")],
        [poly(&r, "s^2*A + s*t*B"), poly(&r, "s*C + t*D")],
    ];
    let h2 = SylvesterForm::from_matrix(&f, &g, b2, &poly(&r, "s"), &poly(&r, "t^2"), "h2").unwrap();
    assert_eq!(h2.poly, shown2);
}

#[test]
fn generic_degree4_balanced() {
    let r = ring(&["s", "t", "x", "y", "z", "u", "v", "w"]);
    let f = poly(&r, "s^2*x + s*t*y + t^2*z");
    let g = poly(&r, "s^2*u + s*t*v + t^2*w");
    let (forms, det) = balanced(&f, &g).unwrap();
    // over (s, t^2) and (s^2, t)
    let over_s = poly(&r, "-s*z*u - t*z*v + s*x*w + t*y*w");
    let over_s2 = poly(&r, "-s*y*u - t*z*u + s*x*v + t*x*w");
    assert!(same_up_to_sign(&forms[0].poly, &over_s));
    assert!(same_up_to_sign(&forms[1].poly, &over_s2));
    let shown_f = poly(&r, "-z^2*u^2 + y*z*u*v - x*z*v^2 - y^2*u*w + 2*x*z*u*w + x*y*v*w - x^2*w^2");
    assert!(same_up_to_sign(&det, &shown_f));
    assert_eq!(coeff_degree(&det), Some(4));
}

#[test]
fn chain_examples() {
    let res = implicitize(&param("s^4, t^4, s^3*t")).unwrap();
    assert_eq!(res.scheme, "chain");
    assert!(same_up_to_sign(&res.f, &poly(res.f.ring(), "T3^4 - T1^3*T2")));
    assert_eq!((res.edeg, res.birational, res.k), (4, true, 1));
    assert!(res.oracle_agrees && res.substitution_vanishes);
    let res = implicitize(&param("s^2, s*t, t^2")).unwrap();
    assert!(same_up_to_sign(&res.f, &poly(res.f.ring(), "T1*T3 - T2^2")));
    assert_eq!((res.edeg, res.birational), (2, true));
    for n in 2..=6 {
        let p = param(&format!("s^{n}, t^{n}, s^{}*t", n - 1));
        let res = elimination_chain_mu1(&p).unwrap();
        let expect = poly(res.f.ring(), &format!("T3^{n} - T1^{}*T2", n - 1));
        assert!(same_up_to_sign(&res.f, &expect), "n = {n}: {}", res.f);
        assert!(res.substitution_vanishes);
    }
    assert!(matches!(
        elimination_chain_mu1(&param("s^4, s^2*t^2, t^4")),
        Err(SylvesterError::MuMismatch { expected: 1, found: 2 })
    ));
}

#[test]
fn balanced_examples() {
    let res = implicitize(&param("s^4, s^2*t^2, t^4")).unwrap();
    assert_eq!(res.scheme, "balanced");
    let f = poly(res.f.ring(), "T1*T3 - T2^2");
    assert!(same_up_to_sign(&res.f, &f));
    assert!(same_up_to_sign(&res.d, &f.pow(2)));
    assert_eq!((res.k, res.edeg, res.birational), (2, 2, false));
    assert!(res.substitution_vanishes && res.oracle_agrees);
    assert!(res.d.is_homogeneous() && res.d.degree() == Some(4));
    // odd degree, mu = 2
    let res = implicitize(&param("s^5, t^5, s^3*t^2 + s*t^4")).unwrap();
    assert_eq!(res.mu, 2);
    assert_eq!(res.scheme, "odd");
    assert!(res.d.is_homogeneous() && res.d.degree() == Some(5));
    assert!(res.substitution_vanishes && res.oracle_agrees);
}

#[test]
fn resultants() {
    let f = resultant_oracle(&param("s^2, s*t, t^2")).unwrap();
    assert!(same_up_to_sign(&f, &poly(f.ring(), "T2^2 - T1*T3")));
    let f = resultant_oracle(&param("s^4, t^4, s^3*t")).unwrap();
    assert!(same_up_to_sign(&f, &poly(f.ring(), "T3^4 - T1^3*T2")));
    let f = resultant_oracle(&param("s^4, s^2*t^2, t^4")).unwrap();
    assert!(same_up_to_sign(&f, &poly(f.ring(), "T1*T3 - T2^2")));
}

#[test]
fn secondary_degrees() {
    let r = ring(&["x1", "x2", "x3", "x4"]);
    let j = Ideal::new(&r, vec![poly(&r, "x1^3"), poly(&r, "x2^3"), poly(&r, "x3^3"), poly(&r, "x4^3")]);
    let sd = secondary_elim_degree(&j, &poly(&r, "x1^2*x2 + x3^2*x4")).unwrap();
    assert_eq!(sd.hilbert_function, vec![1, 4, 9, 9, 4, 1]);
    assert_eq!((sd.epsilon, sd.r), (5, 6));
    let sd = secondary_elim_degree_param(&param("s^2, s*t, t^2"), 1).unwrap();
    assert_eq!((sd.hilbert_function, sd.epsilon, sd.r), (vec![1], 0, 1));
    let s = ring(&["s", "t"]);
    let j = Ideal::new(&s, vec![poly(&s, "s^2"), poly(&s, "t^2")]);
    assert!(matches!(secondary_elim_degree(&j, &poly(&s, "s^3")), Err(SylvesterError::UnitColon)));
    let j = Ideal::new(&s, vec![poly(&s, "s^2"), poly(&s, "s*t")]);
    assert!(matches!(
        secondary_elim_degree(&j, &poly(&s, "t^2")),
        Err(SylvesterError::NotRegularSequence)
    ));
}

fn random_form(rng: &mut ChaCha8Rng, n: u32) -> String {
    let terms: Vec<String> = (0..=n)
        .filter_map(|j| {
            let c: i64 = rng.gen_range(-3..=3);
            (c != 0).then(|| format!("{c}*s^{}*t^{j}", n - j))
        })
        .collect();
    if terms.is_empty() {
        format!("s^{n}")
    } else {
        terms.join(" + ")
    }
}

#[test]
fn random_parametrizations_vanish() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    let mut tries = 0;
    while done < 50 {
        tries += 1;
        assert!(tries < 1000);
        let n = rng.gen_range(2..=5);
        let text: Vec<String> = (0..3).map(|_| random_form(&mut rng, n)).collect();
        let Ok(p) = Parametrization::parse(&ring(&["s", "t"]), &text.join(", ")) else {
            continue;
        };
        let res = match implicitize(&p) {
            Ok(res) => res,
            Err(SylvesterError::SchemeNotCovered { .. }) => continue,
            Err(e) => panic!("{}: {e}", text.join(", ")),
        };
        assert!(res.substitution_vanishes, "{}", text.join(", "));
        assert!(res.oracle_agrees, "{}", text.join(", "));
        assert!(p.substitute_t(&res.d).unwrap().is_zero());
        if res.scheme != "chain" {
            assert!(res.d.is_homogeneous() && res.d.degree() == Some(n));
        }
        // edeg times the degree of the map is n
        assert_eq!(n % res.edeg, 0);
        done += 1;
    }
}
