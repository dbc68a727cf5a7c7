//! Textual formula syntax.
//!
//! ```text
//! f ::= f -> f | f '|' f | f & f | ! f | EX f | AX f | EF f | AF f | EG f | AG f
//!     | E[f U f] | A[f U f] | ( f ) | t[m][i][j] | true | false | terminal
//! ```
//!
//! Unary operators bind tightest, then `&`, then `|`; `->` is loosest and
//! associates to the right. `terminal` expands to the terminal formula of the
//! surface the formula is parsed for.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use super::gen::terminal_formula;
use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct FormulaParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Sym(&'static str),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
        }
    }
}

fn err(column: usize, message: impl Into<String>) -> FormulaParseError {
    FormulaParseError {
        column,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, FormulaParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text
                .parse()
                .map_err(|_| err(col, "number out of range"))?;
            out.push((Tok::Num(n), col));
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push((Tok::Sym("->"), col));
            i += 2;
        } else {
            let sym = match c {
                '!' => "!",
                '&' => "&",
                '|' => "|",
                '(' => "(",
                ')' => ")",
                '[' => "[",
                ']' => "]",
                _ => return Err(err(col, alloc::format!("unexpected character `{c}`"))),
            };
            out.push((Tok::Sym(sym), col));
            i += 1;
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    surface: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn unexpected(&self, wanted: &str) -> FormulaParseError {
        match self.peek() {
            Some(t) => err(self.column(), alloc::format!("expected {wanted}, found {t}")),
            None => err(self.column(), alloc::format!("expected {wanted}, found end of input")),
        }
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(x)) if *x == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), FormulaParseError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.unexpected(&alloc::format!("`{s}`")))
        }
    }

    fn is_ident(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(x)) if x == s)
    }

    fn implies(&mut self) -> Result<Formula, FormulaParseError> {
        let lhs = self.or()?;
        if self.eat_sym("->") {
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, FormulaParseError> {
        let mut parts = alloc::vec![self.and()?];
        while self.eat_sym("|") {
            parts.push(self.and()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            Formula::Or(parts)
        })
    }

    fn and(&mut self) -> Result<Formula, FormulaParseError> {
        let mut parts = alloc::vec![self.unary()?];
        while self.eat_sym("&") {
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            Formula::And(parts)
        })
    }

    fn number(&mut self) -> Result<u64, FormulaParseError> {
        self.expect_sym("[")?;
        let n = match self.peek() {
            Some(Tok::Num(n)) => *n,
            _ => return Err(self.unexpected("a number")),
        };
        self.pos += 1;
        self.expect_sym("]")?;
        Ok(n)
    }

    fn unary(&mut self) -> Result<Formula, FormulaParseError> {
        if self.eat_sym("!") {
            return Ok(Formula::not(self.unary()?));
        }
        let col = self.column();
        let Some(tok) = self.next() else {
            return Err(err(col, "expected a formula, found end of input"));
        };
        let word = match tok {
            Tok::Ident(w) => w,
            Tok::Sym("(") => {
                let f = self.implies()?;
                self.expect_sym(")")?;
                return Ok(f);
            }
            other => return Err(err(col, alloc::format!("expected a formula, found {other}"))),
        };
        let op: Option<fn(Formula) -> Formula> = match word.as_str() {
            "EX" => Some(Formula::ex),
            "AX" => Some(Formula::ax),
            "EF" => Some(Formula::ef),
            "AF" => Some(Formula::af),
            "EG" => Some(Formula::eg),
            "AG" => Some(Formula::ag),
            _ => None,
        };
        if let Some(op) = op {
            return Ok(op(self.unary()?));
        }
        match word.as_str() {
            "true" => Ok(Formula::True),
            "false" => Ok(Formula::False),
            "terminal" => Ok(terminal_formula(self.surface)),
            "t" => {
                let m = self.number()?;
                let i = self.number()?;
                let j = self.number()?;
                let m = u32::try_from(m).map_err(|_| err(col, "tile index out of range"))?;
                let i = usize::try_from(i).map_err(|_| err(col, "location out of range"))?;
                let j = usize::try_from(j).map_err(|_| err(col, "location out of range"))?;
                Ok(Formula::atom(m, i, j))
            }
            "E" | "A" => {
                self.expect_sym("[")?;
                let a = self.implies()?;
                if !self.is_ident("U") {
                    return Err(self.unexpected("`U`"));
                }
                self.pos += 1;
                let b = self.implies()?;
                self.expect_sym("]")?;
                Ok(if word == "E" {
                    Formula::eu(a, b)
                } else {
                    Formula::au(a, b)
                })
            }
            _ => Err(err(col, alloc::format!("unknown word `{word}`"))),
        }
    }
}

/// Parses a formula for an `surface × surface` surface (the size only
/// matters for `terminal`).
pub fn parse_formula(src: &str, surface: usize) -> Result<Formula, FormulaParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.chars().count() + 1,
        surface,
    };
    let f = p.implies()?;
    if p.peek().is_some() {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}

const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn write_prec(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let own = match f {
        Formula::Implies(..) => IMPLIES,
        Formula::Or(v) if v.len() > 1 => OR,
        Formula::And(v) if v.len() > 1 => AND,
        _ => UNARY,
    };
    if own < min {
        out.write_str("(")?;
        write_prec(f, 0, out)?;
        return out.write_str(")");
    }
    let unary = |name: &str, g: &Formula, out: &mut fmt::Formatter<'_>| {
        out.write_str(name)?;
        write_prec(g, UNARY, out)
    };
    match f {
        Formula::True => out.write_str("true"),
        Formula::False => out.write_str("false"),
        Formula::Atom(a) => write!(out, "{a}"),
        Formula::Not(g) => unary("!", g, out),
        Formula::Ex(g) => unary("EX ", g, out),
        Formula::Ax(g) => unary("AX ", g, out),
        Formula::Ef(g) => unary("EF ", g, out),
        Formula::Af(g) => unary("AF ", g, out),
        Formula::Eg(g) => unary("EG ", g, out),
        Formula::Ag(g) => unary("AG ", g, out),
        Formula::And(v) | Formula::Or(v) if v.is_empty() => {
            out.write_str(if matches!(f, Formula::And(_)) { "true" } else { "false" })
        }
        Formula::And(v) | Formula::Or(v) if v.len() == 1 => write_prec(&v[0], min, out),
        Formula::And(v) | Formula::Or(v) => {
            let sep = if own == AND { " & " } else { " | " };
            for (i, g) in v.iter().enumerate() {
                if i > 0 {
                    out.write_str(sep)?;
                }
                write_prec(g, own + 1, out)?;
            }
            Ok(())
        }
        Formula::Implies(a, b) => {
            write_prec(a, OR, out)?;
            out.write_str(" -> ")?;
            write_prec(b, IMPLIES, out)
        }
        Formula::Eu(a, b) | Formula::Au(a, b) => {
            out.write_str(if matches!(f, Formula::Eu(..)) { "E[" } else { "A[" })?;
            write_prec(a, 0, out)?;
            out.write_str(" U ")?;
            write_prec(b, 0, out)?;
            out.write_str("]")
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prec(self, 0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn p(s: &str) -> Formula {
        parse_formula(s, 2).unwrap()
    }

    #[test]
    fn precedence() {
        let a = Formula::atom(1, 0, 0);
        let b = Formula::atom(2, 0, 1);
        let c = Formula::atom(0, 1, 1);
        assert_eq!(
            p("t[1][0][0] | t[2][0][1] & t[0][1][1]"),
            Formula::or(a.clone(), Formula::and(b.clone(), c.clone()))
        );
        assert_eq!(
            p("t[1][0][0] -> t[2][0][1] -> t[0][1][1]"),
            Formula::implies(a.clone(), Formula::implies(b.clone(), c.clone()))
        );
        assert_eq!(
            p("EX t[1][0][0] & !t[2][0][1]"),
            Formula::and(Formula::ex(a.clone()), Formula::not(b.clone()))
        );
        assert_eq!(
            p("A[t[1][0][0] U E[true U t[0][1][1]]]"),
            Formula::au(a, Formula::eu(Formula::True, c))
        );
    }

    #[test]
    fn terminal_expands() {
        assert_eq!(p("AF terminal"), Formula::af(terminal_formula(2)));
    }

    #[test]
    fn errors_carry_columns() {
        let e = parse_formula("t[1][0][0] & ", 2).unwrap_err();
        assert_eq!(e.column, 14);
        let e = parse_formula("AG (t[1][0][0]", 2).unwrap_err();
        assert_eq!(e.column, 15);
        let e = parse_formula("t[1][0] ", 2).unwrap_err();
        assert_eq!(e.column, 9);
        let e = parse_formula("E[true t[0][0][0]]", 2).unwrap_err();
        assert_eq!(e.column, 8);
        let e = parse_formula("p $ q", 2).unwrap_err();
        assert_eq!(e.column, 3);
        let e = parse_formula("p & q", 2).unwrap_err();
        assert_eq!(e.column, 1);
        assert!(parse_formula("t[1][0][0] t[1][0][0]", 2).is_err());
    }

    fn formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            Just(Formula::True),
            Just(Formula::False),
            (0u32..9, 0usize..4, 0usize..4).prop_map(|(m, i, j)| Formula::atom(m, i, j)),
        ];
        leaf.prop_recursive(5, 40, 4, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                inner.clone().prop_map(Formula::ex),
                inner.clone().prop_map(Formula::ax),
                inner.clone().prop_map(Formula::ef),
                inner.clone().prop_map(Formula::af),
                inner.clone().prop_map(Formula::eg),
                inner.clone().prop_map(Formula::ag),
                proptest::collection::vec(inner.clone(), 2..4).prop_map(Formula::And),
                proptest::collection::vec(inner.clone(), 2..4).prop_map(Formula::Or),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::eu(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::au(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(f in formula()) {
            let text = f.to_string();
            prop_assert_eq!(parse_formula(&text, 4).unwrap(), f, "{}", text);
        }
    }
}
