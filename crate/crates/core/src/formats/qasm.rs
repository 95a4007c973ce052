//! OpenQASM 2.0 subset: parser and emitter.
//!
//! The accepted language is a header (`OPENQASM 2.0;`), an optional
//! `include`, exactly one `qreg`, at most one `creg`, and the statements
//! {u1, u2, u3, x, h, cx, barrier, measure}. Everything is normalized to
//! the internal {u3, cx, measure, barrier} alphabet on the way in:
//! u1(l) = u3(0,0,l), u2(p,l) = u3(pi/2,p,l), x = u3(pi,0,pi),
//! h = u3(pi/2,0,pi). Angle arguments are arithmetic expressions over
//! literals and `pi` with + - * / and parentheses. `barrier q` and
//! `measure q -> c` may name a whole register.
//!
//! Emission is deterministic: angles print with 17 significant digits,
//! which round-trips f64 exactly, so parse(emit(c)) reproduces a circuit
//! gate for gate. Syntax errors carry 1-based line numbers.

use std::f64::consts::PI;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Splits the source into `;`-terminated statements, stripping `//` comments
/// and recording the line each statement starts on.
fn split_statements(text: &str) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut cur_line = 0usize;
    let mut line = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '/' && chars.peek() == Some(&'/') {
            for c2 in chars.by_ref() {
                if c2 == '\n' {
                    line += 1;
                    cur.push(' ');
                    break;
                }
            }
            continue;
        }
        if c == ';' {
            out.push((cur_line.max(1), std::mem::take(&mut cur)));
            cur_line = 0;
            continue;
        }
        if c == '\n' {
            line += 1;
            cur.push(' ');
            continue;
        }
        if cur_line == 0 && !c.is_whitespace() {
            cur_line = line;
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        return Err(syntax(cur_line, "statement is missing its terminating ';'"));
    }
    Ok(out)
}

#[derive(Debug, PartialEq)]
enum ExprTok {
    Num(f64),
    Pi,
    Plus,
    Minus,
    Star,
    Slash,
    Open,
    Close,
}

fn lex_expr(text: &str, line: usize) -> Result<Vec<ExprTok>> {
    let mut toks = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                toks.push(ExprTok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(ExprTok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(ExprTok::Star);
                i += 1;
            }
            '/' => {
                toks.push(ExprTok::Slash);
                i += 1;
            }
            '(' => {
                toks.push(ExprTok::Open);
                i += 1;
            }
            ')' => {
                toks.push(ExprTok::Close);
                i += 1;
            }
            'p' if text[i..].starts_with("pi") => {
                toks.push(ExprTok::Pi);
                i += 2;
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    i += 1;
                    if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let lit = &text[start..i];
                let x: f64 = lit
                    .parse()
                    .map_err(|_| syntax(line, format!("bad numeric literal {lit:?}")))?;
                toks.push(ExprTok::Num(x));
            }
            other => {
                return Err(syntax(
                    line,
                    format!("unexpected character {other:?} in angle expression"),
                ))
            }
        }
    }
    Ok(toks)
}

struct ExprParser<'a> {
    toks: &'a [ExprTok],
    pos: usize,
    line: usize,
}

impl<'a> ExprParser<'a> {
    fn peek(&self) -> Option<&ExprTok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<f64> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(ExprTok::Plus) => {
                    self.pos += 1;
                    acc += self.term()?;
                }
                Some(ExprTok::Minus) => {
                    self.pos += 1;
                    acc -= self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<f64> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(ExprTok::Star) => {
                    self.pos += 1;
                    acc *= self.unary()?;
                }
                Some(ExprTok::Slash) => {
                    self.pos += 1;
                    acc /= self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<f64> {
        match self.peek() {
            Some(ExprTok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(ExprTok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<f64> {
        match self.peek() {
            Some(ExprTok::Num(x)) => {
                let x = *x;
                self.pos += 1;
                Ok(x)
            }
            Some(ExprTok::Pi) => {
                self.pos += 1;
                Ok(PI)
            }
            Some(ExprTok::Open) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&ExprTok::Close) {
                    return Err(syntax(self.line, "unbalanced parentheses in expression"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(syntax(self.line, "malformed angle expression")),
        }
    }
}

fn eval_angle(text: &str, line: usize) -> Result<f64> {
    let toks = lex_expr(text.trim(), line)?;
    if toks.is_empty() {
        return Err(syntax(line, "empty angle expression"));
    }
    let mut p = ExprParser {
        toks: &toks,
        pos: 0,
        line,
    };
    let value = p.expr()?;
    if p.pos != toks.len() {
        return Err(syntax(line, "trailing tokens in angle expression"));
    }
    if !value.is_finite() {
        return Err(syntax(line, "angle expression is not finite"));
    }
    Ok(value)
}

/// A `name` or `name[k]` reference to a declared register.
enum Operand {
    Whole,
    Indexed(usize),
}

fn parse_operand(
    token: &str,
    reg: &Option<(String, usize)>,
    what: &str,
    line: usize,
) -> Result<Operand> {
    let token = token.trim();
    let Some((name, size)) = reg else {
        return Err(syntax(line, format!("no {what} declared before use")));
    };
    match token.find('[') {
        None => {
            if token == name {
                Ok(Operand::Whole)
            } else {
                Err(syntax(line, format!("unknown register {token:?}")))
            }
        }
        Some(open) => {
            let (base, rest) = token.split_at(open);
            if base != name {
                return Err(syntax(line, format!("unknown register {base:?}")));
            }
            let Some(idx_text) = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')) else {
                return Err(syntax(line, format!("malformed register reference {token:?}")));
            };
            let idx: usize = idx_text
                .trim()
                .parse()
                .map_err(|_| syntax(line, format!("bad register index {idx_text:?}")))?;
            if idx >= *size {
                return Err(syntax(
                    line,
                    format!("{base}[{idx}] exceeds the register size {size}"),
                ));
            }
            Ok(Operand::Indexed(idx))
        }
    }
}

fn parse_register_decl(tail: &str, line: usize) -> Result<(String, usize)> {
    let tail = tail.trim();
    let Some(open) = tail.find('[') else {
        return Err(syntax(line, "register declaration needs a size, e.g. q[3]"));
    };
    let (name, rest) = tail.split_at(open);
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(syntax(line, format!("bad register name {name:?}")));
    }
    let Some(size_text) = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')) else {
        return Err(syntax(line, "malformed register declaration"));
    };
    let size: usize = size_text
        .trim()
        .parse()
        .map_err(|_| syntax(line, format!("bad register size {size_text:?}")))?;
    if size == 0 {
        return Err(syntax(line, "register size must be at least 1"));
    }
    Ok((name.to_string(), size))
}

/// Splits `u3(a,b,c) q[0]` into the angle list and the operand tail.
fn split_args<'s>(stmt: &'s str, gate: &str, line: usize) -> Result<(Vec<&'s str>, &'s str)> {
    let stmt = stmt.trim();
    let Some(open) = stmt.find('(') else {
        return Err(syntax(line, format!("{gate} needs angle arguments")));
    };
    let mut depth = 0usize;
    let mut close = None;
    for (i, c) in stmt.char_indices().skip(open) {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    close = Some(i);
                    break;
                }
            }
            _ => {}
        }
    }
    let Some(close) = close else {
        return Err(syntax(line, "unbalanced parentheses in gate arguments"));
    };
    let inner = &stmt[open + 1..close];
    let mut args = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                args.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    args.push(&inner[start..]);
    Ok((args, &stmt[close + 1..]))
}

fn first_word(stmt: &str) -> (&str, &str) {
    let stmt = stmt.trim_start();
    let end = stmt
        .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
        .unwrap_or(stmt.len());
    (&stmt[..end], &stmt[end..])
}

pub fn parse_qasm(text: &str) -> Result<Circuit> {
    let stmts = split_statements(text)?;
    let mut iter = stmts.iter();
    let Some((head_line, head)) = iter.next() else {
        return Err(syntax(1, "empty program; expected OPENQASM 2.0 header"));
    };
    let head = head.trim();
    let Some(version) = head.strip_prefix("OPENQASM") else {
        return Err(syntax(*head_line, "file must start with OPENQASM 2.0"));
    };
    if version.trim() != "2.0" {
        return Err(syntax(
            *head_line,
            format!("unsupported OpenQASM version {:?}", version.trim()),
        ));
    }

    let mut qreg: Option<(String, usize)> = None;
    let mut creg: Option<(String, usize)> = None;
    struct Pending {
        line: usize,
        gate: Gate,
    }
    let mut pending: Vec<Pending> = Vec::new();

    for (line, stmt) in iter {
        let line = *line;
        let stmt = stmt.trim();
        if stmt.is_empty() {
            continue;
        }
        let (word, tail) = first_word(stmt);
        match word {
            "OPENQASM" => return Err(syntax(line, "duplicate OPENQASM header")),
            "include" => {
                let t = tail.trim();
                if !(t.starts_with('"') && t.ends_with('"') && t.len() >= 2) {
                    return Err(syntax(line, "include expects a quoted file name"));
                }
            }
            "qreg" => {
                if qreg.is_some() {
                    return Err(syntax(line, "multiple qreg declarations are not supported"));
                }
                qreg = Some(parse_register_decl(tail, line)?);
            }
            "creg" => {
                if creg.is_some() {
                    return Err(syntax(line, "multiple creg declarations are not supported"));
                }
                creg = Some(parse_register_decl(tail, line)?);
            }
            "u1" | "u2" | "u3" => {
                let (args, operands) = split_args(stmt, word, line)?;
                let want = match word {
                    "u1" => 1,
                    "u2" => 2,
                    _ => 3,
                };
                if args.len() != want {
                    return Err(syntax(
                        line,
                        format!("{word} takes {want} angle argument(s), got {}", args.len()),
                    ));
                }
                let angles: Vec<f64> = args
                    .iter()
                    .map(|a| eval_angle(a, line))
                    .collect::<Result<_>>()?;
                let (theta, phi, lambda) = match word {
                    "u1" => (0.0, 0.0, angles[0]),
                    "u2" => (PI / 2.0, angles[0], angles[1]),
                    _ => (angles[0], angles[1], angles[2]),
                };
                let Operand::Indexed(q) = parse_operand(operands, &qreg, "qreg", line)? else {
                    return Err(syntax(line, format!("{word} needs an indexed qubit")));
                };
                pending.push(Pending {
                    line,
                    gate: Gate::u3(q, theta, phi, lambda),
                });
            }
            "x" | "h" => {
                let Operand::Indexed(q) = parse_operand(tail, &qreg, "qreg", line)? else {
                    return Err(syntax(line, format!("{word} needs an indexed qubit")));
                };
                let gate = if word == "x" { Gate::x(q) } else { Gate::h(q) };
                pending.push(Pending { line, gate });
            }
            "cx" => {
                let parts: Vec<&str> = tail.split(',').collect();
                if parts.len() != 2 {
                    return Err(syntax(line, "cx takes exactly two qubits"));
                }
                let Operand::Indexed(c) = parse_operand(parts[0], &qreg, "qreg", line)? else {
                    return Err(syntax(line, "cx needs indexed qubits"));
                };
                let Operand::Indexed(t) = parse_operand(parts[1], &qreg, "qreg", line)? else {
                    return Err(syntax(line, "cx needs indexed qubits"));
                };
                pending.push(Pending {
                    line,
                    gate: Gate::cx(c, t),
                });
            }
            "barrier" => {
                let mut qubits = Vec::new();
                for part in tail.split(',') {
                    match parse_operand(part, &qreg, "qreg", line)? {
                        Operand::Indexed(q) => qubits.push(q),
                        Operand::Whole => {
                            let size = qreg.as_ref().map(|r| r.1).unwrap_or(0);
                            qubits.extend(0..size);
                        }
                    }
                }
                pending.push(Pending {
                    line,
                    gate: Gate::Barrier { qubits },
                });
            }
            "measure" => {
                let Some((lhs, rhs)) = tail.split_once("->") else {
                    return Err(syntax(line, "measure needs the form q[i] -> c[j]"));
                };
                let src = parse_operand(lhs, &qreg, "qreg", line)?;
                let dst = parse_operand(rhs, &creg, "creg", line)?;
                match (src, dst) {
                    (Operand::Indexed(q), Operand::Indexed(c)) => pending.push(Pending {
                        line,
                        gate: Gate::Measure { qubit: q, clbit: c },
                    }),
                    (Operand::Whole, Operand::Whole) => {
                        let qn = qreg.as_ref().map(|r| r.1).unwrap_or(0);
                        let cn = creg.as_ref().map(|r| r.1).unwrap_or(0);
                        if qn != cn {
                            return Err(syntax(
                                line,
                                "whole-register measure needs equally sized registers",
                            ));
                        }
                        for q in 0..qn {
                            pending.push(Pending {
                                line,
                                gate: Gate::Measure { qubit: q, clbit: q },
                            });
                        }
                    }
                    _ => {
                        return Err(syntax(
                            line,
                            "measure cannot mix whole-register and indexed operands",
                        ))
                    }
                }
            }
            "" => return Err(syntax(line, format!("malformed statement {stmt:?}"))),
            other => {
                return Err(syntax(
                    line,
                    format!("unsupported statement or gate {other:?}"),
                ))
            }
        }
    }

    let Some((_, n_qubits)) = qreg else {
        return Err(syntax(1, "missing qreg declaration"));
    };
    let n_clbits = creg.map(|r| r.1).unwrap_or(0);
    let mut circuit = Circuit::new(n_qubits, n_clbits);
    for p in pending {
        circuit
            .push(p.gate)
            .map_err(|e| syntax(p.line, e.to_string()))?;
    }
    Ok(circuit)
}

fn fmt_angle(x: f64) -> String {
    format!("{x:.16e}")
}

/// Emits the circuit as deterministic OpenQASM 2.0 text.
pub fn emit_qasm(circuit: &Circuit) -> String {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    out.push_str(&format!("qreg q[{}];\n", circuit.n_qubits));
    if circuit.n_clbits > 0 {
        out.push_str(&format!("creg c[{}];\n", circuit.n_clbits));
    }
    for gate in &circuit.gates {
        match gate {
            Gate::U3 {
                qubit,
                theta,
                phi,
                lambda,
            } => out.push_str(&format!(
                "u3({},{},{}) q[{qubit}];\n",
                fmt_angle(*theta),
                fmt_angle(*phi),
                fmt_angle(*lambda)
            )),
            Gate::Cx { control, target } => {
                out.push_str(&format!("cx q[{control}],q[{target}];\n"))
            }
            Gate::Measure { qubit, clbit } => {
                out.push_str(&format!("measure q[{qubit}] -> c[{clbit}];\n"))
            }
            Gate::Barrier { qubits } => {
                let list: Vec<String> = qubits.iter().map(|q| format!("q[{q}]")).collect();
                out.push_str(&format!("barrier {};\n", list.join(",")));
            }
        }
    }
    out
}
