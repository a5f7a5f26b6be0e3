//! S-expression surface syntax for codes and values.
//!
//! ```text
//! code ::= "*" | "Nat" | "0" | "(Fin" NAT ")" | "(Pi" code fam ")" | "(Sigma" code fam ")"
//!        | "(Id" code val val ")" | "(Quot" code rel ")"
//! fam  ::= "(const" code ")" | "(table" "(" val code ")"* ")"
//! rel  ::= "(rel" "(" val val ")"* ")"
//! val  ::= "star" | "(fin" NAT ")" | "(nat" NAT ")" | "(pair" val val ")"
//!        | "(fun" "(" val val ")"* ")" | "refl" | "(class" val ")"
//!
//! diagram ::= "(diagram" ("(object" NAME code ")" | "(arrow" NAME NAME NAME graph ")")* ")"
//! graph   ::= "(graph" "(" val val ")"* ")"
//! ```

use std::fmt::Write;

use crate::code::{Code, Family, RelFamily};
use crate::error::{Error, Result};
use crate::limits::{Arrow, Diagram, MapTable};
use crate::value::Value;

/// A raw s-expression with the byte offset where it starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    pub fn pos(&self) -> usize {
        match self {
            Sexp::Atom(_, pos) | Sexp::List(_, pos) => *pos,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a, _) => Some(a),
            Sexp::List(..) => None,
        }
    }

    /// `(head rest...)` with an atom head.
    pub fn as_form(&self) -> Option<(&str, &[Sexp])> {
        match self {
            Sexp::List(items, _) => match items.split_first() {
                Some((Sexp::Atom(head, _), rest)) => Some((head, rest)),
                _ => None,
            },
            Sexp::Atom(..) => None,
        }
    }
}

fn syntax(pos: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        pos,
        message: message.into(),
    }
}

/// Reads every top-level s-expression in `text`.
pub fn read_all(text: &str) -> Result<Vec<Sexp>> {
    let mut stack: Vec<(Vec<Sexp>, usize)> = Vec::new();
    let mut top = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b';' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            b'(' => stack.push((Vec::new(), i)),
            b')' => {
                let (items, start) = stack.pop().ok_or_else(|| syntax(i, "unbalanced `)`"))?;
                let list = Sexp::List(items, start);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(list),
                    None => top.push(list),
                }
            }
            _ if b.is_ascii_whitespace() => {}
            _ => {
                let start = i;
                while i < bytes.len()
                    && !bytes[i].is_ascii_whitespace()
                    && !matches!(bytes[i], b'(' | b')' | b';')
                {
                    i += 1;
                }
                let atom = Sexp::Atom(text[start..i].to_string(), start);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(atom),
                    None => top.push(atom),
                }
                continue;
            }
        }
        i += 1;
    }
    if let Some((_, start)) = stack.pop() {
        return Err(syntax(start, "unclosed `(`"));
    }
    Ok(top)
}

/// Reads exactly one s-expression.
pub fn read_one(text: &str) -> Result<Sexp> {
    let mut all = read_all(text)?;
    match all.len() {
        0 => Err(syntax(text.len(), "empty input")),
        1 => Ok(all.pop().unwrap()),
        _ => Err(syntax(all[1].pos(), "trailing input after expression")),
    }
}

pub fn parse(text: &str) -> Result<Code> {
    code_from_sexp(&read_one(text)?)
}

pub fn parse_value(text: &str) -> Result<Value> {
    value_from_sexp(&read_one(text)?)
}

fn arity(form: &str, pos: usize, expected: &str, found: usize) -> Error {
    Error::Arity {
        pos,
        form: form.to_string(),
        expected: expected.to_string(),
        found,
    }
}

fn expect_args<'a>(form: &str, pos: usize, args: &'a [Sexp], n: usize) -> Result<&'a [Sexp]> {
    if args.len() == n {
        Ok(args)
    } else {
        let plural = if n == 1 { "" } else { "s" };
        Err(arity(
            form,
            pos,
            &format!("{n} argument{plural}"),
            args.len(),
        ))
    }
}

fn nat(s: &Sexp) -> Result<u64> {
    s.as_atom()
        .and_then(|a| a.parse().ok())
        .ok_or_else(|| syntax(s.pos(), "expected a natural number"))
}

/// Children of an entry list `(a b)` that must hold exactly two items.
fn entry(s: &Sexp, what: &str) -> Result<(Sexp, Sexp)> {
    match s {
        Sexp::List(items, _) if items.len() == 2 => Ok((items[0].clone(), items[1].clone())),
        Sexp::List(items, pos) => Err(arity(what, *pos, "2 items", items.len())),
        Sexp::Atom(_, pos) => Err(syntax(*pos, format!("expected a `{what}` entry list"))),
    }
}

pub fn code_from_sexp(s: &Sexp) -> Result<Code> {
    if let Some(atom) = s.as_atom() {
        return match atom {
            "*" => Ok(Code::Star),
            "Nat" => Ok(Code::Nat),
            "0" => Ok(Code::Zero),
            other => Err(syntax(s.pos(), format!("unknown code `{other}`"))),
        };
    }
    let pos = s.pos();
    let (head, args) = s
        .as_form()
        .ok_or_else(|| syntax(pos, "expected a code form"))?;
    match head {
        "Fin" => Ok(Code::Fin(nat(&expect_args(head, pos, args, 1)?[0])?)),
        "Pi" | "Sigma" => {
            let args = expect_args(head, pos, args, 2)?;
            let domain = code_from_sexp(&args[0])?;
            let fam = family_from_sexp(&args[1])?;
            if head == "Pi" {
                Code::pi(domain, fam)
            } else {
                Code::sigma(domain, fam)
            }
        }
        "Id" => {
            let args = expect_args(head, pos, args, 3)?;
            Code::id(
                code_from_sexp(&args[0])?,
                value_from_sexp(&args[1])?,
                value_from_sexp(&args[2])?,
            )
        }
        "Quot" => {
            let args = expect_args(head, pos, args, 2)?;
            let carrier = code_from_sexp(&args[0])?;
            let rel = rel_from_sexp(&args[1])?;
            Code::quot(carrier, rel)
        }
        other => Err(syntax(pos, format!("unknown code former `{other}`"))),
    }
}

fn family_from_sexp(s: &Sexp) -> Result<Family> {
    let pos = s.pos();
    match s.as_form() {
        Some(("const", args)) => Ok(Family::constant(code_from_sexp(
            &expect_args("const", pos, args, 1)?[0],
        )?)),
        Some(("table", args)) => {
            let entries = args
                .iter()
                .map(|e| {
                    let (k, c) = entry(e, "table")?;
                    Ok((value_from_sexp(&k)?, code_from_sexp(&c)?))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Family::table(entries))
        }
        _ => Err(syntax(pos, "expected `(const ...)` or `(table ...)`")),
    }
}

fn rel_from_sexp(s: &Sexp) -> Result<RelFamily> {
    let pos = s.pos();
    match s.as_form() {
        Some(("rel", args)) => {
            let pairs = args
                .iter()
                .map(|e| {
                    let (a, b) = entry(e, "rel")?;
                    Ok((value_from_sexp(&a)?, value_from_sexp(&b)?))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(pairs.into())
        }
        _ => Err(syntax(pos, "expected `(rel ...)`")),
    }
}

pub fn value_from_sexp(s: &Sexp) -> Result<Value> {
    if let Some(atom) = s.as_atom() {
        return match atom {
            "star" => Ok(Value::Star),
            "refl" => Ok(Value::Refl),
            other => Err(syntax(s.pos(), format!("unknown value `{other}`"))),
        };
    }
    let pos = s.pos();
    let (head, args) = s
        .as_form()
        .ok_or_else(|| syntax(pos, "expected a value form"))?;
    match head {
        "fin" => Ok(Value::Fin(nat(&expect_args(head, pos, args, 1)?[0])?)),
        "nat" => Ok(Value::Nat(nat(&expect_args(head, pos, args, 1)?[0])?)),
        "pair" => {
            let args = expect_args(head, pos, args, 2)?;
            Ok(Value::pair(
                value_from_sexp(&args[0])?,
                value_from_sexp(&args[1])?,
            ))
        }
        "class" => Ok(Value::class(value_from_sexp(
            &expect_args(head, pos, args, 1)?[0],
        )?)),
        "fun" => {
            let mut map = std::collections::BTreeMap::new();
            for e in args {
                let (k, v) = entry(e, "fun")?;
                if map
                    .insert(value_from_sexp(&k)?, value_from_sexp(&v)?)
                    .is_some()
                {
                    return Err(syntax(e.pos(), "duplicate key in `fun`"));
                }
            }
            Ok(Value::Fun(map))
        }
        other => Err(syntax(pos, format!("unknown value former `{other}`"))),
    }
}

/// A diagram file: named objects, then arrows between them by name.
pub fn parse_diagram(text: &str) -> Result<Diagram> {
    let top = read_one(text)?;
    let pos = top.pos();
    let (head, items) = top
        .as_form()
        .filter(|(h, _)| *h == "diagram")
        .ok_or_else(|| syntax(pos, "expected `(diagram ...)`"))?;
    let mut names: Vec<String> = Vec::new();
    let mut objects = Vec::new();
    let mut arrows = Vec::new();
    let name = |s: &Sexp| {
        s.as_atom()
            .map(str::to_string)
            .ok_or_else(|| syntax(s.pos(), "expected a name"))
    };
    for item in items {
        let ipos = item.pos();
        match item.as_form() {
            Some(("object", args)) => {
                let args = expect_args("object", ipos, args, 2)?;
                let n = name(&args[0])?;
                if names.contains(&n) {
                    return Err(Error::InvalidDiagram(format!(
                        "object `{n}` is declared twice"
                    )));
                }
                names.push(n);
                objects.push(code_from_sexp(&args[1])?);
            }
            Some(("arrow", args)) => {
                let args = expect_args("arrow", ipos, args, 4)?;
                let index = |s: &Sexp| -> Result<usize> {
                    let n = name(s)?;
                    names.iter().position(|m| *m == n).ok_or_else(|| {
                        Error::InvalidDiagram(format!("unknown object `{n}` in arrow"))
                    })
                };
                let (src, dst) = (index(&args[1])?, index(&args[2])?);
                let gpos = args[3].pos();
                let pairs = match args[3].as_form() {
                    Some(("graph", entries)) => entries
                        .iter()
                        .map(|e| {
                            let (k, v) = entry(e, "graph")?;
                            Ok((value_from_sexp(&k)?, value_from_sexp(&v)?))
                        })
                        .collect::<Result<Vec<_>>>()?,
                    _ => return Err(syntax(gpos, "expected `(graph ...)`")),
                };
                let map = MapTable::from_pairs(objects[src].clone(), objects[dst].clone(), pairs)?;
                arrows.push(Arrow { src, dst, map });
            }
            _ => {
                return Err(syntax(
                    ipos,
                    format!("expected `object` or `arrow` inside `{head}`"),
                ))
            }
        }
    }
    Diagram::new(objects, arrows)
}

/// Canonical text of a code.
pub fn print(c: &Code) -> String {
    let mut out = String::new();
    write_code(&mut out, c);
    out
}

pub fn print_value(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v);
    out
}

fn write_code(out: &mut String, c: &Code) {
    match c {
        Code::Star => out.push('*'),
        Code::Nat => out.push_str("Nat"),
        Code::Zero => out.push('0'),
        Code::Fin(n) => {
            let _ = write!(out, "(Fin {n})");
        }
        Code::Pi(dom, fam) | Code::Sigma(dom, fam) => {
            out.push_str(if matches!(c, Code::Pi(..)) {
                "(Pi "
            } else {
                "(Sigma "
            });
            write_code(out, dom);
            out.push(' ');
            match fam {
                Family::Const(body) => {
                    out.push_str("(const ");
                    write_code(out, body);
                    out.push(')');
                }
                Family::Table(entries) => {
                    out.push_str("(table");
                    for (k, body) in entries {
                        out.push_str(" (");
                        write_value(out, k);
                        out.push(' ');
                        write_code(out, body);
                        out.push(')');
                    }
                    out.push(')');
                }
            }
            out.push(')');
        }
        Code::Id(carrier, l, r) => {
            out.push_str("(Id ");
            write_code(out, carrier);
            out.push(' ');
            write_value(out, l);
            out.push(' ');
            write_value(out, r);
            out.push(')');
        }
        Code::Quot(carrier, rel) => {
            out.push_str("(Quot ");
            write_code(out, carrier);
            out.push_str(" (rel");
            for (a, b) in rel.pairs() {
                out.push_str(" (");
                write_value(out, a);
                out.push(' ');
                write_value(out, b);
                out.push(')');
            }
            out.push_str("))");
        }
    }
}

fn write_value(out: &mut String, v: &Value) {
    match v {
        Value::Star => out.push_str("star"),
        Value::Refl => out.push_str("refl"),
        Value::Nat(n) => {
            let _ = write!(out, "(nat {n})");
        }
        Value::Fin(k) => {
            let _ = write!(out, "(fin {k})");
        }
        Value::Pair(a, b) => {
            out.push_str("(pair ");
            write_value(out, a);
            out.push(' ');
            write_value(out, b);
            out.push(')');
        }
        Value::Fun(entries) => {
            out.push_str("(fun");
            for (k, x) in entries {
                out.push_str(" (");
                write_value(out, k);
                out.push(' ');
                write_value(out, x);
                out.push(')');
            }
            out.push(')');
        }
        Value::Class(rep) => {
            out.push_str("(class ");
            write_value(out, rep);
            out.push(')');
        }
    }
}
