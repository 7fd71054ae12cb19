use super::*;
use crate::groebner::initial_ideal;
use crate::poly::{graded_component_basis, rat, Monomial, Polynomial};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring(names: &[&str]) -> Arc<PolyRing> {
    PolyRing::new(names).unwrap()
}

fn ideal(r: &Arc<PolyRing>, text: &str) -> Ideal {
    Ideal::parse(r, text).unwrap()
}

fn mono(r: &Arc<PolyRing>, text: &str) -> MonomialIdeal {
    MonomialIdeal::from_ideal(&ideal(r, text)).unwrap()
}

#[test]
fn monomial_series() {
    let r = ring(&["x", "y", "z"]);
    let s = hilbert_series_monomial(&MonomialIdeal::zero(&r)).unwrap();
    assert_eq!((s.numerator(), s.dim()), (&[1][..], 3));
    let r2 = ring(&["x", "y"]);
    let s = hilbert_series_monomial(&mono(&r2, "x^2, x*y, y^2")).unwrap();
    assert_eq!((s.numerator(), s.dim()), (&[1, 2][..], 0));
    let s = hilbert_series_monomial(&mono(&r, "x*y*z")).unwrap();
    assert_eq!((s.numerator(), s.dim()), (&[1, 1, 1][..], 2));
    assert_eq!(s.to_string(), "(1 + t + t^2)/(1 - t)^2");
}

#[test]
fn series_of_the_curve() {
    let r = ring(&["x", "y", "z", "w"]);
    let i = ideal(&r, "x^3 - y*z*w, x^2*y - z*w^2");
    let expected = HilbertSeries::new(vec![1, 2, 3, 2, 1], 2);
    for o in [TermOrder::GrevLex, TermOrder::DegLex, TermOrder::Lex] {
        assert_eq!(hilbert_series(&i, &o).unwrap(), expected);
    }
    let c = coefficients_from_series(&expected, 1);
    assert_eq!(c.values, vec![9, 18]);
    assert_eq!(a_invariant(&expected), 2);
}

#[test]
fn series_matches_staircase() {
    let r = ring(&["x", "y"]);
    let i = ideal(&r, "x^2 + y^2, x*y");
    let s = hilbert_series(&i, &TermOrder::GrevLex).unwrap();
    assert_eq!((s.numerator(), s.dim()), (&[1, 2, 1][..], 0));
    let inhom = ideal(&r, "x^2 + y");
    assert_eq!(hilbert_series(&inhom, &TermOrder::GrevLex), Err(HilbertError::NotHomogeneous));
    // principal ideal of degree 3 in three variables
    let r3 = ring(&["x", "y", "z"]);
    let s = hilbert_series(&ideal(&r3, "x^3 + y^2*z - z^3"), &TermOrder::GrevLex).unwrap();
    assert_eq!(s, HilbertSeries::new(vec![1, 1, 1], 2));
}

#[test]
fn veronese() {
    let v = veronese_series(3, 2);
    assert_eq!((v.numerator(), v.dim()), (&[1, 3][..], 3));
    assert_eq!(coefficients_from_series(&v, 1).values, vec![4, 3]);
    assert_eq!(a_invariant(&v), -2);
    assert_eq!(veronese_series(4, 1), HilbertSeries::new(vec![1], 4));
    assert_eq!(veronese_series(2, 2), HilbertSeries::new(vec![1, 1], 2));
    for n in 0..6 {
        assert_eq!(v.hilbert_function(n), binom(2 * n + 2, 2));
    }
    let free = HilbertSeries::new(vec![1], 5);
    assert_eq!(coefficients_from_series(&free, 3).values, vec![1, 0, 0, 0]);
    assert_eq!(a_invariant(&free), -5);
}

#[test]
fn decompositions() {
    let r = ring(&["s", "t"]);
    let dec = irreducible_decomposition(&mono(&r, "s^3, s^2*t, s*t^2, t^3"));
    let shown: Vec<String> = dec.components.iter().map(|c| c.to_string()).collect();
    assert_eq!(shown, ["(s, t^3)", "(s^2, t^2)", "(s^3, t)"]);

    let r2 = ring(&["x", "y"]);
    let i = mono(&r2, "x*y, y^2");
    let dec = irreducible_decomposition(&i);
    let shown: Vec<String> = dec.components.iter().map(|c| c.to_string()).collect();
    assert_eq!(shown, ["(x, y^2)", "(y)"]);
    assert_eq!(dec.intersection(&r2), i);
    assert_eq!(dec.primes.len(), 2);
    assert!(dec.primes.iter().all(|p| p.mult == 1));
    assert_eq!(dec.primes[0].vars, vec![1]);
    assert!(dec.primes[0].minimal && !dec.primes[1].minimal);

    let pure = mono(&r2, "x^3, y^5");
    assert_eq!(irreducible_decomposition(&pure).components, vec![pure]);
}

#[test]
fn degree_reports() {
    let r2 = ring(&["x", "y"]);
    let rep = degree_report(&mono(&r2, "x*y, y^2")).unwrap();
    assert_eq!((rep.dim, rep.deg, rep.gdeg, rep.adeg, rep.h0), (1, 1, 1, 2, 1));
    assert_eq!(rep.extended_degree, Some(2));
    assert_eq!(rep.extended_matches_adeg(), Some(true));

    let r3 = ring(&["x1", "x2", "x3"]);
    let rep = degree_report(&mono(&r3, "x1*x3, x2*x3")).unwrap();
    assert_eq!((rep.deg, rep.gdeg, rep.adeg), (1, 2, 2));

    let rep = degree_report(&mono(&r2, "x^2, x*y, y^2")).unwrap();
    assert_eq!((rep.dim, rep.deg, rep.gdeg, rep.adeg), (0, 3, 3, 3));
}

#[test]
fn tracking_numbers() {
    let r = ring(&["x", "y", "z", "w"]);
    let i = ideal(&r, "x^3 - y*z*w, x^2*y - z*w^2");
    let tn = tracking_number(&i, &TermOrder::GrevLex).unwrap();
    assert_eq!(tn.tn, 18);
    assert_eq!(tn.torsion_dim, None);

    let init = initial_ideal(&i, &TermOrder::DegLex).unwrap();
    let tb = tracking_number_monomial(&init).unwrap();
    assert_eq!(tb.e1, 18);
    assert_eq!(tb.torsion_dim, Some(1));
    // associated primes (x,y,z) and (x,y,w) of the torsion have lengths 1 and 5
    assert_eq!(tb.torsion_mult, 6);
    assert_eq!(tb.tn, 24);
    assert!(tb.tn >= tn.tn);

    let r2 = ring(&["x", "y"]);
    assert_eq!(
        tracking_number(&ideal(&r2, "x^2, y^2"), &TermOrder::GrevLex),
        Err(HilbertError::ZeroDimensional)
    );
}

#[test]
fn samuel_fits() {
    let r = ring(&["x", "y", "z"]);
    let i = ideal(&r, "x^2, y^2, z^2, x*y - x*z, x*z - y*z");
    let c = samuel_fit(&i, 1, &TermOrder::GrevLex).unwrap();
    assert_eq!(c.values, vec![8, 4, 0, 0]);
    assert_eq!(c.lengths, vec![36, 64, 100]);

    let r2 = ring(&["x", "y"]);
    let c = samuel_fit(&ideal(&r2, "x^2, y^2"), 0, &TermOrder::GrevLex).unwrap();
    assert_eq!(c.values, vec![4, 0, 0]);
    let c = samuel_fit(&ideal(&r2, "x^2, x*y, y^2"), 0, &TermOrder::GrevLex).unwrap();
    assert_eq!(c.values, vec![4, 1, 0]);
    let auto = samuel_fit_auto(&i, &TermOrder::GrevLex, 4).unwrap();
    assert_eq!(auto.values[..3], [8, 4, 0]);
    assert!(matches!(
        samuel_fit(&ideal(&r2, "x^2"), 0, &TermOrder::GrevLex),
        Err(HilbertError::NotArtinian)
    ));
}

#[test]
fn samuel_fit_below_postulation_is_rejected() {
    // the closure filtration of (x^2, y^2) starts polynomial only after n = 0
    let lens = [4u64, 12, 24, 40];
    let (e, _) = fit_from_colengths(2, 0, &lens[..3]).unwrap();
    assert_eq!(e, vec![rat(4), rat(0), rat(0)]);
    // a non-polynomial prefix changes the fit
    let (bad, _) = fit_from_colengths(2, 0, &[5, 12, 24]).unwrap();
    assert_ne!(bad, e);
}

fn random_monomial_ideal(rng: &mut ChaCha8Rng, r: &Arc<PolyRing>, maxdeg: u32) -> MonomialIdeal {
    let k = rng.gen_range(1..=5);
    let gens = (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=maxdeg);
            graded_component_basis(r, d).choose(rng).unwrap().clone()
        })
        .collect();
    MonomialIdeal::new(r, gens)
}

#[test]
fn degree_inequalities_random() {
    let r = ring(&["a", "b", "c", "d"]);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..80 {
        let i = random_monomial_ideal(&mut rng, &r, 4);
        let rep = degree_report(&i).unwrap();
        assert!(rep.adeg >= rep.gdeg && rep.gdeg >= rep.deg && rep.deg >= 1, "{i}: {rep:?}");
        let dec = irreducible_decomposition(&i);
        assert_eq!(dec.intersection(&r), i);
        if dec.primes.iter().all(|p| p.minimal) {
            assert_eq!(rep.adeg, rep.gdeg);
        }
    }
}

#[test]
fn dimension_one_identity_exhaustive() {
    let r = ring(&["x", "y"]);
    let monos: Vec<Monomial> = (1..=4).flat_map(|d| graded_component_basis(&r, d)).collect();
    let mut seen = std::collections::HashSet::new();
    for mask in 1u32..(1 << monos.len()) {
        let gens: Vec<Monomial> = (0..monos.len()).filter(|k| mask >> k & 1 == 1).map(|k| monos[k].clone()).collect();
        let i = MonomialIdeal::new(&r, gens);
        if !seen.insert(i.gens().to_vec()) {
            continue;
        }
        let rep = degree_report(&i).unwrap();
        assert!(rep.dim <= 1);
        assert_eq!(rep.extended_matches_adeg(), Some(true), "{i}: {rep:?}");
        if rep.dim == 1 {
            assert_eq!(rep.deg + rep.h0, rep.adeg);
        }
    }
    assert!(seen.len() > 100);
}

#[test]
fn macaulay_series_across_orders() {
    let r = ring(&["x", "y", "z"]);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..25 {
        let i = random_homogeneous(&mut rng, &r, 3);
        let a = hilbert_series(&i, &TermOrder::GrevLex).unwrap();
        assert_eq!(a, hilbert_series(&i, &TermOrder::Lex).unwrap());
        assert_eq!(a, hilbert_series(&i, &TermOrder::DegLex).unwrap());
    }
}

fn random_homogeneous(rng: &mut ChaCha8Rng, r: &Arc<PolyRing>, ngens: usize) -> Ideal {
    let gens = (0..rng.gen_range(1..=ngens))
        .map(|_| {
            let d = rng.gen_range(1..=3);
            let basis = graded_component_basis(r, d);
            Polynomial::from_terms(
                r,
                (0..rng.gen_range(1..=3)).map(|_| (basis.choose(rng).unwrap().clone(), rat(rng.gen_range(-3..=3)))),
            )
        })
        .collect();
    Ideal::new(r, gens)
}

#[test]
fn initial_ideal_tracks_higher() {
    let r = ring(&["x", "y", "z", "w"]);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut tested = 0;
    while tested < 12 {
        let i = random_homogeneous(&mut rng, &r, 2);
        let s = hilbert_series(&i, &TermOrder::GrevLex).unwrap();
        if s.dim() == 0 {
            continue;
        }
        let a = tracking_number(&i, &TermOrder::GrevLex).unwrap();
        let init = initial_ideal(&i, &TermOrder::GrevLex).unwrap();
        let b = tracking_number_monomial(&init).unwrap();
        assert!(b.tn >= a.tn, "{i}: {} < {}", b.tn, a.tn);
        tested += 1;
    }
}
