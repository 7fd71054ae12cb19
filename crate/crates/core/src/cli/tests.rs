use super::*;
use crate::groebner::ideal_equal;

fn reports(text: &str) -> Vec<Report> {
    run_script(text, RunOptions { json: false, no_timing: true })
        .unwrap()
        .into_iter()
        .map(|e| match e {
            Event::Report(r) => r,
            Event::Failure(f) => panic!("{}: {}", f.source, f.error),
        })
        .collect()
}

fn field<'a>(r: &'a Report, key: &str) -> &'a Value {
    &r.result.0.iter().find(|(k, _, _)| k == key).unwrap_or_else(|| panic!("no field {key}")).1
}

#[test]
fn hilbert_and_coeffs() {
    let r = reports("ring x,y; I = x^2,y^2; hilbert I");
    assert_eq!(r[0].to_text(), "> hilbert I\n  series: 1 + 2t + t^2\n  dim: 0\n  degree: 4\n  a_invariant: 2\n");
    assert_eq!(field(&r[0], "series"), &json!({"numerator": [1, 2, 1], "denominator_exponent": 0}));
    let r = reports("ring x,y,z; I = x^2,y^2,z^2,x*y-x*z,x*z-y*z; coeffs I --window 1");
    assert_eq!(field(&r[0], "e"), &json!([8, 4, 0, 0]));
    assert_eq!(field(&r[0], "lengths"), &json!([36, 64, 100]));
    // not m-primary: coefficients of R/I
    let r = reports("ring x,y,z; coeffs x*y");
    assert_eq!(field(&r[0], "kind"), &json!("hilbert"));
    assert_eq!(field(&r[0], "e"), &json!([2, 1, 0]));
}

#[test]
fn json_schema() {
    let r = reports("ring x,y; I = x^2,y^2; normindex I --max 4");
    let j = r[0].to_json();
    let keys: Vec<&str> = j.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(keys, ["command", "elapsed_ms", "inputs", "result", "verified_up_to"]);
    assert_eq!(j["command"], json!("normindex"));
    assert_eq!(j["inputs"]["I"], json!("(x^2, y^2)"));
    assert_eq!(j["inputs"]["max"], json!("4"));
    assert_eq!(j["verified_up_to"], json!(4));
    assert_eq!(j["elapsed_ms"], json!(0));
    assert_eq!((j["result"]["s0"].clone(), j["result"]["s"].clone()), (json!(1), json!(1)));
}

#[test]
fn implicitize_output() {
    let r = reports("ring s,t; implicitize s^4,t^4,s^3*t");
    assert_eq!(field(&r[0], "F"), &json!("T3^4 - T1^3*T2"));
    assert_eq!(field(&r[0], "edeg"), &json!(4));
    assert_eq!(field(&r[0], "birational"), &json!(true));
    let r = reports("ring s,t; P = s^4, s^2*t^2, t^4; implicitize P; resultant P");
    assert_eq!(field(&r[0], "F"), &json!("T1*T3 - T2^2"));
    assert_eq!(field(&r[0], "k"), &json!(2));
    assert_eq!(field(&r[1], "F"), &json!("T1*T3 - T2^2"));
}

#[test]
fn errors_keep_going() {
    let events = run_script("ring x,y\nhilbert x^2, y^2\nfoo x\nclosure x+y\nhilbert y", RunOptions::default()).unwrap();
    let kinds: Vec<bool> = events.iter().map(|e| matches!(e, Event::Report(_))).collect();
    assert_eq!(kinds, [true, false, false, true]);
    let Event::Failure(f) = &events[1] else { unreachable!() };
    assert_eq!((f.error.line, f.error.col), (3, 1));
    let Event::Failure(f) = &events[2] else { unreachable!() };
    assert!(f.error.msg.contains("monomial"), "{}", f.error.msg);
    // binding before ring, second ring, wrong arity
    let events = run_script("I = x; ring x; ring y; fseq x", RunOptions::default()).unwrap();
    assert_eq!(events.len(), 3);
    assert!(events.iter().all(|e| matches!(e, Event::Failure(_))));
    // parse errors report the position
    let events = run_script("ring x,y\nhilbert x^2 + * y", RunOptions::default()).unwrap();
    let Event::Failure(f) = &events[0] else { panic!() };
    assert_eq!(f.error.line, 2);
    assert!(f.error.col > 9);
    assert!(run_script("ring s,t; implicitize s, t", RunOptions::default()).unwrap().iter().all(|e| matches!(e, Event::Failure(_))));
    assert!(matches!(
        &run_script("ring T1,t; implicitize T1^2, t^2, T1*t", RunOptions::default()).unwrap()[0],
        Event::Failure(f) if f.error.msg.contains("reserved")
    ));
}

#[test]
fn printed_ideals_reparse() {
    let script = "ring x1,x2,x3,x4,x5,x6
        I = x1*x2*x5, x1*x3*x4, x2*x3*x6, x4*x5*x6
        closure I --power 2
        decompose I
        degrees I
        sr I";
    let r = reports(script);
    let ring = PolyRing::new(&["x1", "x2", "x3", "x4", "x5", "x6"]).unwrap();
    let parse = |v: &Value| {
        let gens: Vec<String> = v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect();
        Ideal::parse(&ring, &gens.join(", ")).unwrap()
    };
    let closure = parse(field(&r[0], "closure"));
    let expect = Ideal::parse(
        &ring,
        "x1^2*x2^2*x5^2, x1^2*x2*x3*x4*x5, x1*x2^2*x3*x5*x6, x1*x2*x4*x5^2*x6, x1^2*x3^2*x4^2, \
         x1*x2*x3^2*x4*x6, x1*x3*x4^2*x5*x6, x2^2*x3^2*x6^2, x2*x3*x4*x5*x6^2, x4^2*x5^2*x6^2, x1*x2*x3*x4*x5*x6",
    )
    .unwrap();
    assert!(ideal_equal(&closure, &expect, ring.order()).unwrap());
    // the intersection of the printed components gives the ideal back
    let comps = field(&r[1], "components").as_array().unwrap();
    let mut acc: Option<Ideal> = None;
    for c in comps {
        let c = parse(c);
        acc = Some(match acc {
            None => c,
            Some(a) => crate::groebner::intersect(&a, &c).unwrap(),
        });
    }
    let original = Ideal::parse(&ring, "x1*x2*x5, x1*x3*x4, x2*x3*x6, x4*x5*x6").unwrap();
    assert!(ideal_equal(&acc.unwrap(), &original, ring.order()).unwrap());
    assert_eq!(field(&r[2], "deg"), field(&r[3], "deg"));
}

#[test]
fn deterministic() {
    let script = "ring x,y,z,w; I = x^3 - y*z*w, x^2*y - z*w^2; tn I --order deglex; degrees I; hilbert I";
    let a: Vec<String> = reports(script).iter().map(|r| r.to_json().to_string()).collect();
    let b: Vec<String> = reports(script).iter().map(|r| r.to_json().to_string()).collect();
    assert_eq!(a, b);
}
