use std::fmt::Display;

use serde_json::{json, Value};

use super::{Ctx, Fields, Outcome, ScriptError};
use crate::closure::{
    bar_coefficients, bar_coefficients_auto, closure_colength, integral_closure_power, normalization_indices,
    DEFAULT_MAX_WINDOW,
};
use crate::filtration::{f_sequence, huckaba_test, reduction_bound_check, Verdict};
use crate::groebner::{artinian_length, initial_ideal, Ideal, StaircaseCount};
use crate::hilbert::{
    coefficients_from_series, degree_report, hilbert_series, irreducible_decomposition, samuel_fit,
    samuel_fit_auto, tracking_number, CoefficientSource, HilbertCoefficients, HilbertSeries, TrackingNumber,
};
use crate::monomial::MonomialIdeal;
use crate::poly::{Monomial, Polynomial};
use crate::simplicial::{fh_vectors, sr_complex, sr_degrees};
use crate::sylvester::{
    cm_rees_test, implicitize, mu_basis, resultant_oracle, secondary_elim_degree, Parametrization,
};

pub const COMMANDS: [&str; 16] = [
    "hilbert",
    "coeffs",
    "tn",
    "degrees",
    "decompose",
    "closure",
    "normindex",
    "barcoeffs",
    "reduction",
    "fseq",
    "huckaba",
    "sr",
    "mubasis",
    "implicitize",
    "secelim",
    "resultant",
];

const DEFAULT_NORM_MAX: u32 = 6;

fn series_json(s: &HilbertSeries) -> Value {
    json!({"numerator": s.numerator(), "denominator_exponent": s.dim()})
}

fn ideal_json(gens: &[String]) -> Value {
    json!(gens)
}

fn ideal_strings(i: &Ideal) -> Vec<String> {
    i.gens().iter().map(|g| g.to_string()).collect()
}

fn monomial_strings(i: &MonomialIdeal) -> Vec<String> {
    i.gens()
        .iter()
        .map(|m| Polynomial::monomial(i.ring(), m.clone()).to_string())
        .collect()
}

fn add_ideal(fields: &mut Fields, key: &str, gens: Vec<String>) {
    let text = format!("({})", gens.join(", "));
    fields.add(key, ideal_json(&gens), text);
}

fn add_coefficients(fields: &mut Fields, c: &HilbertCoefficients) {
    fields.list("e", &c.values);
    if let CoefficientSource::SamuelFit { window } = c.source {
        fields.num("window", window);
        fields.list("lengths", &c.lengths);
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::AlmostCohenMacaulay => "almost Cohen-Macaulay",
        Verdict::NotAlmostCohenMacaulay => "not almost Cohen-Macaulay",
        Verdict::Inconclusive => "inconclusive",
    }
}

/// Signs the polynomial so that its largest term, comparing `T3` before
/// `T2` before `T1`, is positive, and prints terms in that order.
pub fn elimination_string(p: &Polynomial) -> String {
    let mut terms = p.terms().to_vec();
    let key = |m: &Monomial| m.exps().iter().rev().copied().collect::<Vec<_>>();
    terms.sort_by(|(a, _), (b, _)| key(b).cmp(&key(a)));
    let flip = terms.first().is_some_and(|(_, c)| c < &num_traits::Zero::zero());
    if flip {
        for t in &mut terms {
            t.1 = -t.1.clone();
        }
    }
    // print term by term with the ring's own monomial formatting
    let mut out = String::new();
    for (k, (m, c)) in terms.iter().enumerate() {
        let single = Polynomial::from_terms(p.ring(), [(m.clone(), c.clone())]).to_string();
        if k == 0 {
            out.push_str(&single);
        } else if let Some(rest) = single.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&single);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn domain<'a, E: Display>(ctx: &'a Ctx, name: &str) -> impl Fn(E) -> ScriptError + 'a {
    let name = name.to_string();
    move |e| ctx.error(format!("{name}: {e}"))
}

fn arity(ctx: &Ctx, name: &str, args: &[Vec<Polynomial>], n: usize) -> Result<(), ScriptError> {
    if args.len() != n {
        let what = if n == 1 { "one argument" } else { "two arguments" };
        return Err(ctx.error(format!("{name} takes {what}, got {}", args.len())));
    }
    Ok(())
}

fn monomial(ctx: &Ctx, name: &str, gens: &[Polynomial]) -> Result<MonomialIdeal, ScriptError> {
    MonomialIdeal::from_ideal(&ctx.ideal(gens)).ok_or_else(|| ctx.error(format!("{name}: expected a monomial ideal")))
}

/// The ideal itself when monomial, else its initial ideal.
fn monomial_or_initial(ctx: &Ctx, name: &str, gens: &[Polynomial], fields: &mut Fields) -> Result<MonomialIdeal, ScriptError> {
    let ideal = ctx.ideal(gens);
    if let Some(m) = MonomialIdeal::from_ideal(&ideal) {
        return Ok(m);
    }
    let init = initial_ideal(&ideal, &ctx.order()).map_err(domain(ctx, name))?;
    add_ideal(fields, "initial_ideal", monomial_strings(&init));
    Ok(init)
}

fn parametrization(ctx: &Ctx, name: &str, gens: &[Polynomial]) -> Result<Parametrization, ScriptError> {
    let forms: [Polynomial; 3] = gens
        .to_vec()
        .try_into()
        .map_err(|_| ctx.error(format!("{name}: expected three forms, got {}", gens.len())))?;
    Parametrization::new(&ctx.ring, forms).map_err(domain(ctx, name))
}

fn add_tracking(fields: &mut Fields, prefix: &str, t: &TrackingNumber) {
    fields.num(&format!("{prefix}tn"), t.tn);
    fields.num(&format!("{prefix}dim"), t.dim);
    fields.num(&format!("{prefix}e1"), t.e1);
    fields.opt(&format!("{prefix}torsion_dim"), t.torsion_dim);
    fields.num(&format!("{prefix}torsion_mult"), t.torsion_mult);
    fields.add(&format!("{prefix}top_series"), series_json(&t.top_series), &t.top_series);
}

pub(crate) fn run(name: &str, args: &[Vec<Polynomial>], ctx: &Ctx) -> Result<Outcome, ScriptError> {
    let mut f = Fields::default();
    let mut verified = None;
    match name {
        "hilbert" => {
            arity(ctx, name, args, 1)?;
            let s = hilbert_series(&ctx.ideal(&args[0]), &ctx.order()).map_err(domain(ctx, name))?;
            f.add("series", series_json(&s), &s);
            f.num("dim", s.dim());
            f.num("degree", s.degree());
            f.num("a_invariant", s.a_invariant());
        }
        "coeffs" => {
            arity(ctx, name, args, 1)?;
            let ideal = ctx.ideal(&args[0]);
            let order = ctx.order();
            let finite = matches!(
                artinian_length(&ideal, &order).map_err(domain(ctx, name))?,
                StaircaseCount::Finite { .. }
            );
            if finite {
                // Hilbert-Samuel coefficients of an m-primary ideal
                let c = match ctx.flags.window {
                    Some(b) => samuel_fit(&ideal, b, &order),
                    None => samuel_fit_auto(&ideal, &order, ctx.flags.max.unwrap_or(DEFAULT_MAX_WINDOW)),
                }
                .map_err(domain(ctx, name))?;
                f.string("kind", "samuel");
                add_coefficients(&mut f, &c);
                if let CoefficientSource::SamuelFit { window } = c.source {
                    verified = Some(window as u64 + ctx.ring.nvars() as u64 + 2);
                }
            } else {
                let s = hilbert_series(&ideal, &order).map_err(domain(ctx, name))?;
                f.string("kind", "hilbert");
                f.add("series", series_json(&s), &s);
                add_coefficients(&mut f, &coefficients_from_series(&s, s.dim()));
            }
        }
        "tn" => {
            arity(ctx, name, args, 1)?;
            let ideal = ctx.ideal(&args[0]);
            let t = tracking_number(&ideal, &ctx.order()).map_err(domain(ctx, name))?;
            add_tracking(&mut f, "", &t);
            if MonomialIdeal::from_ideal(&ideal).is_none() {
                let init = initial_ideal(&ideal, &ctx.order()).map_err(domain(ctx, name))?;
                add_ideal(&mut f, "initial_ideal", monomial_strings(&init));
                let ti = tracking_number(&init.to_ideal(), &ctx.order()).map_err(domain(ctx, name))?;
                add_tracking(&mut f, "initial_", &ti);
                f.num("initial_dominates", ti.tn >= t.tn);
            }
        }
        "degrees" => {
            arity(ctx, name, args, 1)?;
            let m = monomial_or_initial(ctx, name, &args[0], &mut f)?;
            let r = degree_report(&m).map_err(domain(ctx, name))?;
            f.num("dim", r.dim);
            f.num("deg", r.deg);
            f.num("gdeg", r.gdeg);
            f.num("adeg", r.adeg);
            f.num("h0", r.h0);
            f.opt("extended_degree", r.extended_degree);
        }
        "decompose" => {
            arity(ctx, name, args, 1)?;
            let m = monomial_or_initial(ctx, name, &args[0], &mut f)?;
            let dec = irreducible_decomposition(&m);
            let comps: Vec<Vec<String>> = dec.components.iter().map(monomial_strings).collect();
            let text = comps.iter().map(|c| format!("({})", c.join(", "))).collect::<Vec<_>>().join(" ∩ ");
            f.add("components", json!(comps), text);
            let names = ctx.ring.names();
            let primes: Vec<Value> = dec
                .primes
                .iter()
                .map(|p| {
                    json!({
                        "vars": p.vars.iter().map(|&i| names[i].clone()).collect::<Vec<_>>(),
                        "dim": p.dim,
                        "mult": p.mult,
                        "minimal": p.minimal,
                    })
                })
                .collect();
            let text = dec
                .primes
                .iter()
                .map(|p| {
                    let vs: Vec<&str> = p.vars.iter().map(|&i| names[i].as_str()).collect();
                    let tag = if p.minimal { "" } else { ", embedded" };
                    format!("({}) mult {}{tag}", vs.join(", "), p.mult)
                })
                .collect::<Vec<_>>()
                .join("; ");
            f.add("primes", Value::Array(primes), text);
        }
        "closure" => {
            arity(ctx, name, args, 1)?;
            let m = monomial(ctx, name, &args[0])?;
            let power = ctx.flags.power.unwrap_or(1);
            let c = integral_closure_power(&m, power);
            f.num("power", power);
            add_ideal(&mut f, "closure", monomial_strings(&c));
            f.num("normal", c == m.power(power));
            if m.is_artinian() {
                f.num("colength", closure_colength(&m, power).map_err(domain(ctx, name))?);
            }
        }
        "normindex" => {
            arity(ctx, name, args, 1)?;
            let m = monomial(ctx, name, &args[0])?;
            let n = ctx.flags.max.unwrap_or(DEFAULT_NORM_MAX).max(2);
            let r = normalization_indices(&m, n as usize);
            f.num("s0", r.s0);
            f.num("s", r.s);
            verified = Some(r.verified_up_to as u64);
        }
        "barcoeffs" => {
            arity(ctx, name, args, 1)?;
            let m = monomial(ctx, name, &args[0])?;
            let c = match ctx.flags.window {
                Some(b) => bar_coefficients(&m, b),
                None => bar_coefficients_auto(&m, ctx.flags.max.unwrap_or(DEFAULT_MAX_WINDOW)),
            }
            .map_err(domain(ctx, name))?;
            add_coefficients(&mut f, &c);
            if let CoefficientSource::SamuelFit { window } = c.source {
                verified = Some(window as u64 + ctx.ring.nvars() as u64 + 2);
            }
        }
        "reduction" => {
            arity(ctx, name, args, 2)?;
            let (i, j) = (ctx.ideal(&args[0]), ctx.ideal(&args[1]));
            let r = reduction_bound_check(&i, &j).map_err(domain(ctx, name))?;
            f.opt("reduction_number", r.reduction_number);
            f.num("colength_j", r.colength_j);
            f.num("bound", r.bound);
            f.num("holds", r.holds);
            verified = Some(r.bound.max(0) as u64);
        }
        "fseq" => {
            arity(ctx, name, args, 2)?;
            let (i, j) = (ctx.ideal(&args[0]), ctx.ideal(&args[1]));
            let s = f_sequence(&i, &j, ctx.flags.max.map(|n| n as usize)).map_err(domain(ctx, name))?;
            f.list("f", &s.values);
            f.num("sum", s.sum());
            f.opt("reduction_number", s.reduction_number);
            verified = Some(s.values.len() as u64);
        }
        "huckaba" => {
            arity(ctx, name, args, 2)?;
            let (i, j) = (ctx.ideal(&args[0]), ctx.ideal(&args[1]));
            let r = huckaba_test(&i, &j, ctx.flags.max.map(|n| n as usize)).map_err(domain(ctx, name))?;
            f.num("e1", r.e1);
            f.list("f", &r.f.values);
            f.num("f_sum", r.f_sum);
            f.opt("reduction_number", r.f.reduction_number);
            f.string("verdict", verdict_name(r.verdict));
            f.opt("sally_multiplicity", r.sally_multiplicity);
            f.string("hypothesis", r.hypothesis);
            verified = Some(r.f.values.len() as u64);
        }
        "sr" => {
            arity(ctx, name, args, 1)?;
            let m = monomial(ctx, name, &args[0])?;
            let k = sr_complex(&m).map_err(domain(ctx, name))?;
            let fh = fh_vectors(&k);
            let d = sr_degrees(&k).map_err(domain(ctx, name))?;
            f.string("complex", &k);
            f.num("dim", d.dim);
            f.list("f", &fh.f);
            f.list("h", &fh.h);
            f.num("chi", fh.chi);
            f.num("deg", d.deg);
            f.num("adeg", d.adeg);
            f.num("gdeg", d.gdeg);
            f.num("f_prime", d.f_prime);
            f.num("tn", d.tn);
            f.num("consistent", d.consistent());
        }
        "mubasis" => {
            arity(ctx, name, args, 1)?;
            let p = parametrization(ctx, name, &args[0])?;
            let b = mu_basis(&p).map_err(domain(ctx, name))?;
            f.num("mu", b.mu);
            f.list("degrees", &[b.degrees.0, b.degrees.1]);
            for (k, col) in b.columns.iter().enumerate() {
                let entries: Vec<String> = col.iter().map(|c| c.to_string()).collect();
                let text = format!("({})", entries.join(", "));
                f.add(&format!("column{}", k + 1), json!(entries), text);
            }
            let cm = cm_rees_test(&p).map_err(domain(ctx, name))?;
            for (k, c) in cm.contents.iter().enumerate() {
                add_ideal(&mut f, &format!("content{}", k + 1), ideal_strings(c));
            }
            f.num("cohen_macaulay", cm.cohen_macaulay);
            f.opt("monomial_check", cm.monomial_check);
        }
        "implicitize" => {
            arity(ctx, name, args, 1)?;
            let p = parametrization(ctx, name, &args[0])?;
            let r = implicitize(&p).map_err(domain(ctx, name))?;
            f.string("scheme", r.scheme);
            f.num("mu", r.mu);
            let forms: Vec<String> = r.forms.iter().map(|h| h.to_string()).collect();
            f.add("forms", json!(forms), forms.join("; "));
            f.string("D", &r.d);
            f.string("F", elimination_string(&r.f));
            f.num("k", r.k);
            f.string("c", &r.c);
            f.num("edeg", r.edeg);
            f.num("birational", r.birational);
            f.num("oracle_agrees", r.oracle_agrees);
            f.num("substitution_vanishes", r.substitution_vanishes);
        }
        "secelim" => {
            arity(ctx, name, args, 1)?;
            let gens = &args[0];
            if gens.len() < 2 {
                return Err(ctx.error(format!("{name}: needs the generators of J followed by a")));
            }
            let (j, a) = gens.split_at(gens.len() - 1);
            let sd = secondary_elim_degree(&ctx.ideal(j), &a[0].with_ring(&ctx.ordered_ring()))
                .map_err(domain(ctx, name))?;
            f.list("hilbert_function", &sd.hilbert_function);
            f.num("epsilon", sd.epsilon);
            f.num("r", sd.r);
        }
        "resultant" => {
            arity(ctx, name, args, 1)?;
            let p = parametrization(ctx, name, &args[0])?;
            let r = resultant_oracle(&p).map_err(domain(ctx, name))?;
            f.string("F", elimination_string(&r));
            f.num("degree", r.degree().unwrap_or(0));
        }
        other => {
            return Err(ctx.error(format!("unknown command '{other}' (one of {})", COMMANDS.join(", "))));
        }
    }
    Ok(Outcome {
        fields: f,
        verified_up_to: verified,
    })
}
