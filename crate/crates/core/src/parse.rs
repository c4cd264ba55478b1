//! Line-oriented circuit text format.
//!
//! ```text
//! # comment
//! qubits 4
//! params theta phi
//! step: bellinv 2 3
//! step: rx(theta) 2 ; rx(phi) 3
//! step: cnot t=1 c=2 ; cnot t=4 c=3
//! ```
//!
//! Gates: `id Q`, `not Q`, `sqrtnot Q`, `cnot t=Q c=Q`, `rx(EXPR) Q`,
//! `ry(EXPR) Q`, `rz(EXPR) Q`, `rn(NX,NY,NZ,EXPR) Q`, `h Q`, `bell K L`,
//! `bellinv K L`, `t3 K L M`. Qubits are 1-based.

use crate::circuit::{AngleExpr, Circuit, Gate, ParamEnv};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Star,
    Slash,
    Minus,
}

fn tokenize(s: &str) -> std::result::Result<Vec<Token>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    i += 1;
                    if i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                        i += 1;
                    }
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let text: String = chars[start..i].iter().collect();
                let v = text.parse::<f64>().map_err(|_| format!("bad number `{text}`"))?;
                out.push(Token::Num(v));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(format!("unexpected character `{other}` in expression")),
        }
    }
    Ok(out)
}

/// Parse an angle expression: `['-'] atom (('*'|'/') ['-'] atom)*` where an
/// atom is a number, `pi`, or a parameter name.
pub fn parse_angle(s: &str) -> std::result::Result<AngleExpr, String> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err("empty expression".into());
    }
    let mut pos = 0;
    let mut expr = parse_unary(&tokens, &mut pos)?;
    while pos < tokens.len() {
        let op = tokens[pos].clone();
        pos += 1;
        let rhs = parse_unary(&tokens, &mut pos)?;
        expr = match op {
            Token::Star => AngleExpr::Mul(Box::new(expr), Box::new(rhs)),
            Token::Slash => AngleExpr::Div(Box::new(expr), Box::new(rhs)),
            other => return Err(format!("expected `*` or `/`, found {other:?}")),
        };
    }
    Ok(expr)
}

fn parse_unary(tokens: &[Token], pos: &mut usize) -> std::result::Result<AngleExpr, String> {
    match tokens.get(*pos) {
        Some(Token::Minus) => {
            *pos += 1;
            Ok(AngleExpr::Neg(Box::new(parse_unary(tokens, pos)?)))
        }
        Some(Token::Num(v)) => {
            *pos += 1;
            Ok(AngleExpr::Const(*v))
        }
        Some(Token::Ident(name)) => {
            *pos += 1;
            Ok(if name == "pi" {
                AngleExpr::Pi
            } else {
                AngleExpr::Param(name.clone())
            })
        }
        Some(other) => Err(format!("unexpected {other:?}")),
        None => Err("expression ends early".into()),
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parse the circuit text format, validating steps as they are read.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    let mut params_seen = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let syntax = |message: String| Error::Parse { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = split_keyword(line);
        match (keyword, circuit.as_mut()) {
            ("qubits", None) => {
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| syntax(format!("expected a qubit count, found `{}`", rest.trim())))?;
                circuit = Some(Circuit::new(n, &[]).map_err(|e| at(line_no, e))?);
            }
            ("qubits", Some(_)) => return Err(syntax("duplicate `qubits` header".into())),
            (_, None) => return Err(syntax("circuit must start with `qubits N`".into())),
            ("params", Some(c)) => {
                if params_seen || c.depth() > 0 {
                    return Err(syntax("`params` must appear once, before the first step".into()));
                }
                params_seen = true;
                let names: Vec<&str> = rest.split_whitespace().collect();
                if let Some(bad) = names.iter().find(|s| !is_identifier(s) || **s == "pi") {
                    return Err(syntax(format!("invalid parameter name `{bad}`")));
                }
                *c = Circuit::new(c.n_qubits(), &names).map_err(|e| at(line_no, e))?;
            }
            ("step", Some(c)) => {
                let body = rest
                    .trim_start()
                    .strip_prefix(':')
                    .ok_or_else(|| syntax("expected `step:`".into()))?;
                let mut gates = Vec::new();
                for segment in body.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                    gates.push(parse_gate(segment, line_no)?);
                }
                c.push_step(gates).map_err(|e| at(line_no, e))?;
            }
            (other, Some(_)) => return Err(syntax(format!("unknown directive `{other}`"))),
        }
    }
    circuit.ok_or(Error::Parse {
        line: 0,
        message: "empty circuit text: missing `qubits N`".into(),
    })
}

fn at(line: usize, e: Error) -> Error {
    Error::AtLine {
        line,
        source: Box::new(e),
    }
}

fn split_keyword(line: &str) -> (&str, &str) {
    let end = line
        .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
        .unwrap_or(line.len());
    (&line[..end], &line[end..])
}

fn parse_gate(segment: &str, line: usize) -> Result<Gate> {
    let syntax = |message: String| Error::Parse { line, message };
    let (name, rest) = split_keyword(segment);
    let (args, rest) = match rest.strip_prefix('(') {
        Some(inner) => {
            let close = inner
                .find(')')
                .ok_or_else(|| syntax(format!("unclosed `(` in `{segment}`")))?;
            (Some(&inner[..close]), &inner[close + 1..])
        }
        None => (None, rest),
    };
    let words: Vec<&str> = rest.split_whitespace().collect();

    let qubit = |w: &str| -> Result<usize> {
        w.parse::<usize>()
            .map_err(|_| syntax(format!("expected a qubit index, found `{w}`")))
    };
    let qubits = |count: usize| -> Result<Vec<usize>> {
        if words.len() != count {
            return Err(syntax(format!(
                "`{name}` takes {count} qubit index(es), found {}",
                words.len()
            )));
        }
        words.iter().map(|w| qubit(w)).collect()
    };
    let no_args = || -> Result<()> {
        match args {
            Some(_) => Err(syntax(format!("`{name}` takes no parenthesized arguments"))),
            None => Ok(()),
        }
    };
    let angle = || -> Result<AngleExpr> {
        let a = args.ok_or_else(|| syntax(format!("`{name}` needs an angle, e.g. `{name}(theta)`")))?;
        parse_angle(a.trim()).map_err(&syntax)
    };

    let gate = match name {
        "id" | "not" | "sqrtnot" | "h" => {
            no_args()?;
            let q = qubits(1)?[0];
            match name {
                "id" => Gate::Id(q),
                "not" => Gate::Not(q),
                "sqrtnot" => Gate::SqrtNot(q),
                _ => Gate::H(q),
            }
        }
        "rx" | "ry" | "rz" => {
            let a = angle()?;
            let q = qubits(1)?[0];
            match name {
                "rx" => Gate::Rx(q, a),
                "ry" => Gate::Ry(q, a),
                _ => Gate::Rz(q, a),
            }
        }
        "rn" => {
            let inner = args.ok_or_else(|| syntax("`rn` needs `(NX,NY,NZ,ANGLE)`".into()))?;
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            if parts.len() != 4 {
                return Err(syntax(format!("`rn` takes 4 arguments, found {}", parts.len())));
            }
            let mut axis = [0.0; 3];
            for (slot, p) in axis.iter_mut().zip(&parts[..3]) {
                let e = parse_angle(p).map_err(&syntax)?;
                *slot = e
                    .eval(&ParamEnv::new())
                    .map_err(|_| syntax(format!("axis component `{p}` must be a constant")))?;
            }
            let angle = parse_angle(parts[3]).map_err(&syntax)?;
            Gate::Rn {
                qubit: qubits(1)?[0],
                axis,
                angle,
            }
        }
        "cnot" => {
            no_args()?;
            let (mut target, mut control) = (None, None);
            for w in &words {
                match w.split_once('=') {
                    Some(("t", v)) if target.is_none() => target = Some(qubit(v)?),
                    Some(("c", v)) if control.is_none() => control = Some(qubit(v)?),
                    _ => return Err(syntax(format!("unexpected cnot argument `{w}`"))),
                }
            }
            match (target, control) {
                (Some(target), Some(control)) if words.len() == 2 => Gate::Cnot { target, control },
                _ => return Err(syntax("cnot needs `t=Q c=Q`".into())),
            }
        }
        "bell" | "bellinv" => {
            no_args()?;
            let q = qubits(2)?;
            if name == "bell" {
                Gate::Bell(q[0], q[1])
            } else {
                Gate::BellInv(q[0], q[1])
            }
        }
        "t3" => {
            no_args()?;
            let q = qubits(3)?;
            Gate::T3(q[0], q[1], q[2])
        }
        other => return Err(at(line, Error::UnknownGate(other.to_string()))),
    };
    Ok(gate)
}
