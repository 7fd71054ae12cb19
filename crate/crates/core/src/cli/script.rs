//! Script syntax: `;`- or newline-separated statements, `#` comments.
//!
//! ```text
//! ring x,y,z
//! I = x^2, y^2, z^2
//! coeffs I --window 1
//! ```
//! A line ending in `,` continues on the next one.

use std::fmt;

use crate::poly::TermOrder;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ScriptError {}

/// Byte offset to 1-based line and column.
pub fn locate(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

/// A piece of the script with its byte offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    pub text: String,
    pub offset: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Flags {
    pub window: Option<u32>,
    pub order: Option<TermOrder>,
    pub max: Option<u32>,
    pub power: Option<u32>,
    pub json: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Ring { names: Vec<String>, flags: Flags },
    Bind { name: String, value: Span },
    Command { name: String, args: Vec<Span>, flags: Flags },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located {
    pub stmt: Statement,
    /// The statement as written, trimmed.
    pub source: String,
    pub offset: usize,
}

pub fn is_identifier(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic()) && c.all(|ch| ch.is_ascii_alphanumeric())
}

/// Splits into statements, dropping comments.
fn split(text: &str) -> Vec<Span> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 0;
    let mut in_comment = false;
    let push = |cur: &mut String, start: usize, out: &mut Vec<Span>| {
        let lead = cur.len() - cur.trim_start().len();
        let t = cur.trim();
        if !t.is_empty() {
            out.push(Span {
                text: t.to_string(),
                offset: start + lead,
            });
        }
        cur.clear();
    };
    for (i, ch) in text.char_indices() {
        if in_comment {
            if ch != '\n' {
                // keep offsets aligned
                cur.push(' ');
                continue;
            }
            in_comment = false;
        }
        match ch {
            '#' => {
                in_comment = true;
                cur.push(' ');
            }
            ';' => {
                push(&mut cur, start, &mut out);
                start = i + 1;
            }
            '\n' if !cur.trim_end().ends_with(',') => {
                push(&mut cur, start, &mut out);
                start = i + 1;
            }
            _ => {
                if cur.is_empty() {
                    start = i;
                }
                cur.push(ch);
            }
        }
    }
    push(&mut cur, start, &mut out);
    out
}

/// Whitespace-separated words with offsets relative to the statement.
fn words(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(b)) => {
                out.push((b, &s[b..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(b) = start {
        out.push((b, &s[b..]));
    }
    out
}

/// Flags, and the remaining words as `(start, end)` ranges.
fn parse_flags(
    ws: &[(usize, &str)],
    base: usize,
    text: &str,
) -> Result<(Flags, Vec<(usize, usize)>), ScriptError> {
    let err = |off: usize, msg: String| {
        let (line, col) = locate(text, base + off);
        ScriptError { line, col, msg }
    };
    let mut flags = Flags::default();
    let mut rest: Vec<(usize, usize)> = Vec::new();
    let mut last_word = "";
    let mut i = 0;
    while i < ws.len() {
        let (off, w) = ws[i];
        if let Some(name) = w.strip_prefix("--") {
            if name == "json" {
                flags.json = true;
                i += 1;
                continue;
            }
            let Some(&(voff, value)) = ws.get(i + 1) else {
                return Err(err(off, format!("flag --{name} needs a value")));
            };
            let number = || {
                value
                    .parse::<u32>()
                    .map_err(|_| err(voff, format!("--{name} expects a non-negative integer, got '{value}'")))
            };
            match name {
                "window" => flags.window = Some(number()?),
                "max" => flags.max = Some(number()?),
                "power" => flags.power = Some(number()?),
                "order" => {
                    flags.order = Some(
                        TermOrder::from_name(value)
                            .ok_or_else(|| err(voff, format!("unknown order '{value}' (grevlex, lex, deglex)")))?,
                    )
                }
                _ => return Err(err(off, format!("unknown flag --{name}"))),
            }
            i += 2;
            continue;
        }
        // glue pieces split by spaces: "x^2, y^2", "x*y + z^2"
        let joins = |c: char| ",+-*^/(".contains(c);
        let glue = last_word.ends_with(joins) || w.starts_with(|c: char| joins(c) && c != '(' || c == ')');
        match rest.last_mut() {
            Some((_, end)) if glue => *end = off + w.len(),
            _ => rest.push((off, off + w.len())),
        }
        last_word = w;
        i += 1;
    }
    Ok((flags, rest))
}

fn parse_statement(span: &Span, text: &str) -> Result<Statement, ScriptError> {
    let err = |off: usize, msg: String| {
        let (line, col) = locate(text, span.offset + off);
        ScriptError { line, col, msg }
    };
    let s = span.text.as_str();
    // binding: NAME = list
    if let Some(eq) = s.find('=') {
        let name = s[..eq].trim();
        if is_identifier(name) {
            let value = &s[eq + 1..];
            let lead = value.len() - value.trim_start().len();
            if value.trim().is_empty() {
                return Err(err(eq, format!("nothing bound to {name}")));
            }
            return Ok(Statement::Bind {
                name: name.to_string(),
                value: Span {
                    text: value.trim().to_string(),
                    offset: span.offset + eq + 1 + lead,
                },
            });
        }
    }
    let ws = words(s);
    let (_, head) = ws[0];
    let (flags, rest) = parse_flags(&ws[1..], span.offset, text)?;
    if head == "ring" {
        let joined: String = rest.iter().map(|&(a, b)| &s[a..b]).collect::<Vec<_>>().join("");
        let names: Vec<String> = joined.split(',').map(|n| n.trim().to_string()).collect();
        if let Some(bad) = names.iter().find(|n| !is_identifier(n)) {
            return Err(err(0, format!("bad variable name '{bad}'")));
        }
        return Ok(Statement::Ring { names, flags });
    }
    if !is_identifier(head) {
        return Err(err(0, format!("expected a command, got '{head}'")));
    }
    Ok(Statement::Command {
        name: head.to_string(),
        args: rest
            .into_iter()
            .map(|(a, b)| Span {
                text: s[a..b].to_string(),
                offset: span.offset + a,
            })
            .collect(),
        flags,
    })
}

pub fn parse_script(text: &str) -> Result<Vec<Located>, ScriptError> {
    split(text)
        .into_iter()
        .map(|span| {
            Ok(Located {
                stmt: parse_statement(&span, text)?,
                source: span.text.clone(),
                offset: span.offset,
            })
        })
        .collect()
}
