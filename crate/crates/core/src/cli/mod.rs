//! Script runner behind the `multdeg` binary.

mod commands;
pub mod script;

#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::fmt::Display;
use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Map, Value};

use crate::groebner::Ideal;
use crate::poly::{parse_polynomial_list, PolyError, PolyRing, Polynomial, TermOrder};
pub use script::{parse_script, ScriptError};
use script::{is_identifier, locate, Flags, Span, Statement};

/// Named result fields, kept in insertion order for text output.
#[derive(Debug, Clone, Default)]
pub struct Fields(Vec<(String, Value, String)>);

impl Fields {
    pub fn add(&mut self, key: &str, json: Value, text: impl Display) -> &mut Self {
        self.0.push((key.to_string(), json, text.to_string()));
        self
    }

    pub fn num(&mut self, key: &str, v: impl Into<Value> + Display + Copy) -> &mut Self {
        self.add(key, v.into(), v)
    }

    pub fn list<T: Display + Clone + Into<Value>>(&mut self, key: &str, v: &[T]) -> &mut Self {
        let text = format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
        self.add(key, Value::Array(v.iter().cloned().map(Into::into).collect()), text)
    }

    pub fn string(&mut self, key: &str, v: impl Display) -> &mut Self {
        let s = v.to_string();
        self.add(key, Value::String(s.clone()), s)
    }

    pub fn opt<T: Into<Value> + Display + Copy>(&mut self, key: &str, v: Option<T>) -> &mut Self {
        match v {
            Some(x) => self.num(key, x),
            None => self.add(key, Value::Null, "none"),
        }
    }

    fn to_json(&self) -> Value {
        Value::Object(self.0.iter().map(|(k, v, _)| (k.clone(), v.clone())).collect::<Map<_, _>>())
    }
}

/// One executed command.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub source: String,
    pub inputs: BTreeMap<String, String>,
    pub result: Fields,
    pub verified_up_to: Option<u64>,
    pub elapsed_ms: u128,
    pub json: bool,
}

impl Report {
    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(self.command));
        obj.insert("inputs".into(), json!(self.inputs));
        obj.insert("result".into(), self.result.to_json());
        if let Some(v) = self.verified_up_to {
            obj.insert("verified_up_to".into(), json!(v));
        }
        obj.insert("elapsed_ms".into(), json!(self.elapsed_ms));
        Value::Object(obj)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("> {}\n", self.source);
        for (k, _, text) in &self.result.0 {
            out.push_str(&format!("  {k}: {text}\n"));
        }
        if let Some(v) = self.verified_up_to {
            out.push_str(&format!("  verified up to: {v}\n"));
        }
        out
    }

    pub fn render(&self) -> String {
        if self.json {
            format!("{}\n", self.to_json())
        } else {
            self.to_text()
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub json: bool,
    /// Report `elapsed_ms` as 0 so output is byte-stable.
    pub no_timing: bool,
}

/// A statement that failed; the script carries on after it.
#[derive(Debug, Clone)]
pub struct Failure {
    pub source: String,
    pub error: ScriptError,
}

#[derive(Debug, Clone)]
pub enum Event {
    Report(Report),
    Failure(Failure),
}

#[derive(Debug, Default)]
struct Session {
    ring: Option<Arc<PolyRing>>,
    bindings: BTreeMap<String, Vec<Polynomial>>,
}

/// What a command hands back besides its fields.
pub(crate) struct Outcome {
    pub fields: Fields,
    pub verified_up_to: Option<u64>,
}

pub(crate) struct Ctx<'a> {
    pub ring: Arc<PolyRing>,
    pub flags: &'a Flags,
    pub offset: usize,
    pub text: &'a str,
}

impl Ctx<'_> {
    pub fn order(&self) -> TermOrder {
        self.flags.order.clone().unwrap_or_else(|| self.ring.order().clone())
    }

    /// The ring with the requested order.
    pub fn ordered_ring(&self) -> Arc<PolyRing> {
        let order = self.order();
        if &order == self.ring.order() {
            self.ring.clone()
        } else {
            self.ring.with_order(order).expect("valid order")
        }
    }

    pub fn ideal(&self, gens: &[Polynomial]) -> Ideal {
        let r = self.ordered_ring();
        Ideal::new(&r, gens.iter().map(|g| g.with_ring(&r)).collect())
    }

    pub fn error(&self, msg: impl Display) -> ScriptError {
        let (line, col) = locate(self.text, self.offset);
        ScriptError {
            line,
            col,
            msg: msg.to_string(),
        }
    }
}

fn poly_error(text: &str, base: usize, e: PolyError) -> ScriptError {
    let pos = match &e {
        PolyError::Syntax { pos, .. } | PolyError::UnknownVariable { pos, .. } => *pos,
        _ => 0,
    };
    let (line, col) = locate(text, base + pos);
    ScriptError {
        line,
        col,
        msg: e.to_string(),
    }
}

impl Session {
    fn ring(&self, text: &str, offset: usize) -> Result<Arc<PolyRing>, ScriptError> {
        self.ring.clone().ok_or_else(|| {
            let (line, col) = locate(text, offset);
            ScriptError {
                line,
                col,
                msg: "no ring declared yet".into(),
            }
        })
    }

    fn resolve(&self, ring: &Arc<PolyRing>, arg: &Span, text: &str) -> Result<Vec<Polynomial>, ScriptError> {
        if is_identifier(&arg.text) {
            if let Some(v) = self.bindings.get(&arg.text) {
                return Ok(v.clone());
            }
        }
        parse_polynomial_list(ring, &arg.text).map_err(|e| poly_error(text, arg.offset, e))
    }

    fn step(&mut self, stmt: &script::Located, text: &str, opts: RunOptions) -> Result<Option<Report>, ScriptError> {
        let at = |off: usize, msg: String| {
            let (line, col) = locate(text, off);
            ScriptError { line, col, msg }
        };
        match &stmt.stmt {
            Statement::Ring { names, flags } => {
                if self.ring.is_some() {
                    return Err(at(stmt.offset, "only one ring per script".into()));
                }
                let mut ring = PolyRing::new(names).map_err(|e| at(stmt.offset, e.to_string()))?;
                if let Some(order) = &flags.order {
                    ring = ring.with_order(order.clone()).map_err(|e| at(stmt.offset, e.to_string()))?;
                }
                self.ring = Some(ring);
                Ok(None)
            }
            Statement::Bind { name, value } => {
                let ring = self.ring(text, stmt.offset)?;
                if ring.var_index(name).is_some() {
                    return Err(at(stmt.offset, format!("{name} is a ring variable")));
                }
                let gens = self.resolve(&ring, value, text)?;
                self.bindings.insert(name.clone(), gens);
                Ok(None)
            }
            Statement::Command { name, args, flags } => {
                let ring = self.ring(text, stmt.offset)?;
                let resolved = args
                    .iter()
                    .map(|a| self.resolve(&ring, a, text))
                    .collect::<Result<Vec<_>, _>>()?;
                let ctx = Ctx {
                    ring: ring.clone(),
                    flags,
                    offset: stmt.offset,
                    text,
                };
                let mut inputs = BTreeMap::new();
                for (k, (a, gens)) in args.iter().zip(&resolved).enumerate() {
                    let key = if is_identifier(&a.text) && self.bindings.contains_key(&a.text) {
                        a.text.clone()
                    } else {
                        format!("arg{}", k + 1)
                    };
                    let list: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                    inputs.insert(key, format!("({})", list.join(", ")));
                }
                inputs.insert("ring".into(), ring.names().join(","));
                if let Some(o) = &flags.order {
                    inputs.insert("order".into(), format!("{o:?}").to_lowercase());
                }
                for (k, v) in [("window", flags.window), ("max", flags.max), ("power", flags.power)] {
                    if let Some(v) = v {
                        inputs.insert(k.into(), v.to_string());
                    }
                }
                let start = Instant::now();
                let out = commands::run(name, &resolved, &ctx)?;
                let elapsed = start.elapsed().as_millis();
                Ok(Some(Report {
                    command: name.clone(),
                    source: stmt.source.clone(),
                    inputs,
                    result: out.fields,
                    verified_up_to: out.verified_up_to,
                    elapsed_ms: if opts.no_timing { 0 } else { elapsed },
                    json: opts.json || flags.json,
                }))
            }
        }
    }
}

/// Runs a script statement by statement; a failing statement is reported and
/// the rest still run. A parse error in the script stops everything.
pub fn run_script(text: &str, opts: RunOptions) -> Result<Vec<Event>, ScriptError> {
    let stmts = parse_script(text)?;
    let mut session = Session::default();
    let mut events = Vec::new();
    for stmt in &stmts {
        match session.step(stmt, text, opts) {
            Ok(Some(r)) => events.push(Event::Report(r)),
            Ok(None) => {}
            Err(error) => events.push(Event::Failure(Failure {
                source: stmt.source.clone(),
                error,
            })),
        }
    }
    Ok(events)
}
