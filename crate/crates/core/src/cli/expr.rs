//! Expressions over Q in one base variable, linear in v.
//!
//! Expr   := ('+'|'-')? Term (('+'|'-') Term)*
//! Term   := Factor ('*' Factor)*
//! Factor := Base ('^' uint)?
//! Base   := rational | variable | '(' Expr (';' Expr)? ')'
//!
//! `(a; b)` stands for a + b·v.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{Polynomial, Rational};
use crate::error::{Error, Result};

type QT = Polynomial<Rational>;

pub const BASE_VARIABLES: [char; 3] = ['T', 'u', 'x'];

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(char),
    Op(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Int(s.parse().unwrap()),
                column,
            });
        } else if "+-*^/();".contains(c) {
            out.push(Token {
                tok: Tok::Op(c),
                column,
            });
            i += 1;
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            match name.as_str() {
                "T" | "u" | "x" | "y" | "v" => out.push(Token {
                    tok: Tok::Var(name.chars().next().unwrap()),
                    column,
                }),
                _ => return Err(Error::UnknownVariable(name)),
            }
        } else {
            return Err(syntax(line, column, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

/// a + b·v, with the base variable seen so far.
#[derive(Clone, Debug, PartialEq)]
pub struct Value {
    pub a: QT,
    pub b: QT,
    pub var: Option<char>,
}

impl Value {
    fn constant(c: Rational) -> Self {
        Value {
            a: QT::constant(c),
            b: QT::zero(&()),
            var: None,
        }
    }

    pub fn has_v(&self) -> bool {
        !self.b.is_zero()
    }

    /// The value as a polynomial, rejecting a v-part.
    pub fn poly(&self) -> Result<QT> {
        if self.has_v() {
            return Err(Error::InvalidInput("v is not allowed here".into()));
        }
        Ok(self.a.clone())
    }

    fn join_var(x: Option<char>, y: Option<char>) -> Result<Option<char>> {
        match (x, y) {
            (Some(p), Some(q)) if p != q => Err(Error::InvalidInput(format!(
                "expression mixes the variables {p} and {q}"
            ))),
            _ => Ok(x.or(y)),
        }
    }

    fn add(self, o: Value, sign: bool) -> Result<Value> {
        let var = Self::join_var(self.var, o.var)?;
        let (a, b) = if sign {
            (&self.a + &o.a, &self.b + &o.b)
        } else {
            (&self.a - &o.a, &self.b - &o.b)
        };
        Ok(Value { a, b, var })
    }

    fn mul(self, o: Value) -> Result<Value> {
        let var = Self::join_var(self.var, o.var)?;
        if self.has_v() && o.has_v() {
            return Err(Error::InvalidInput(
                "products of v-terms are not supported; expand v² with the curve model".into(),
            ));
        }
        Ok(Value {
            a: &self.a * &o.a,
            b: &(&self.a * &o.b) + &(&self.b * &o.a),
            var,
        })
    }

    fn neg(self) -> Value {
        let z = QT::zero(&());
        Value {
            a: &z - &self.a,
            b: &z - &self.b,
            var: self.var,
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    line: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn column(&self) -> usize {
        self.toks
            .get(self.pos)
            .map_or(self.end_column, |t| t.column)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        syntax(self.line, self.column(), message)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(self.term()?, true)?;
            } else if self.eat('-') {
                acc = acc.add(self.term()?, false)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(self.factor()?)?;
            } else {
                match self.peek() {
                    Some(Tok::Int(_) | Tok::Var(_)) | Some(Tok::Op('(')) => {
                        return Err(self.err("implicit multiplication is not allowed; use '*'"))
                    }
                    Some(Tok::Op('/')) => {
                        return Err(self.err("'/' is only allowed inside a rational constant"))
                    }
                    _ => return Ok(acc),
                }
            }
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.err("expected an unsigned integer")),
        }
    }

    fn factor(&mut self) -> Result<Value> {
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.column();
        let e = self
            .uint()?
            .to_u32()
            .filter(|&e| e <= 100_000)
            .ok_or_else(|| syntax(self.line, col, "exponent too large"))?;
        if self.peek() == Some(&Tok::Op('^')) {
            return Err(self.err("chained exponents need parentheses"));
        }
        if base.has_v() && e >= 2 {
            return Err(Error::InvalidInput(
                "powers of v-terms are not supported; expand v² with the curve model".into(),
            ));
        }
        Ok(Value {
            a: base.a.pow(e),
            b: if e == 0 { QT::zero(&()) } else { base.b },
            var: base.var,
        })
    }

    fn base(&mut self) -> Result<Value> {
        let col = self.column();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if self.eat('/') {
                    let d = self.uint()?;
                    if d.is_zero() {
                        return Err(syntax(self.line, col, "zero denominator"));
                    }
                    return Ok(Value::constant(Rational::new(n, d)));
                }
                Ok(Value::constant(Rational::from_integer(n)))
            }
            Some(Tok::Var('v')) => {
                self.pos += 1;
                Ok(Value {
                    a: QT::zero(&()),
                    b: QT::one(&()),
                    var: None,
                })
            }
            Some(Tok::Var('y')) => Err(syntax(self.line, col, "y cannot appear in an expression")),
            Some(Tok::Var(c)) => {
                self.pos += 1;
                Ok(Value {
                    a: QT::x(&()),
                    b: QT::zero(&()),
                    var: Some(c),
                })
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let a = self.expr()?;
                let v = if self.eat(';') {
                    let b = self.expr()?;
                    if a.has_v() || b.has_v() {
                        return Err(syntax(self.line, col, "v inside a (a; b) pair"));
                    }
                    Value {
                        var: Value::join_var(a.var, b.var)?,
                        a: a.a,
                        b: b.a,
                    }
                } else {
                    a
                };
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(_) => Err(self.err("expected a number, a variable or '('")),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}

/// Parses an expression appearing on `line` starting at column `column`.
pub fn parse_value_at(text: &str, line: usize, column: usize) -> Result<Value> {
    let toks = lex(text, line, column)?;
    let mut p = Parser {
        toks,
        pos: 0,
        line,
        end_column: column + text.chars().count(),
    };
    let v = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

pub fn parse_value(text: &str) -> Result<Value> {
    parse_value_at(text, 1, 1)
}

/// A polynomial in one base variable.
pub fn parse_poly(text: &str) -> Result<QT> {
    parse_value(text)?.poly()
}

/// Grammar-valid rendering, e.g. `3*T^3 + T^2 - 1/2`.
pub fn format_poly(p: &QT, var: char) -> String {
    format_with(p, var, true)
}

/// Display rendering without '*', e.g. `3T^3 + T^2 - 1/2`.
pub fn display_poly(p: &QT, var: char) -> String {
    format_with(p, var, false)
}

fn format_with(p: &QT, var: char, star: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c < &Rational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let one = mag == Rational::from_integer(1.into());
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if i == 0 {
            s.push_str(&mag.to_string());
        } else if one {
            s.push_str(&mono);
        } else if star {
            s.push_str(&format!("{mag}*{mono}"));
        } else {
            s.push_str(&format!("{mag}{mono}"));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn grammar_cases() {
        assert_eq!(
            parse_poly("T^2 + 2").unwrap(),
            QT::from_i64s(&(), &[2, 0, 1])
        );
        let g = parse_poly("u^3 - 7*(u^3 + 2)^4*u + 6*(u^3 + 2)^6").unwrap();
        assert_eq!(g.degree(), Some(18));
        assert_eq!(g.coeff(0), int(384));
        assert_eq!(
            parse_poly("x^2 + 101*x + 12751/5").unwrap(),
            QT::new(vec![rat(12751, 5), int(101), int(1)], &())
        );
        assert_eq!(parse_poly("-u^2").unwrap(), QT::from_i64s(&(), &[0, 0, -1]));
        let v = parse_value("(u; 2*u - 1)").unwrap();
        assert_eq!(v.b, QT::from_i64s(&(), &[-1, 2]));
        assert_eq!(parse_value("u + 3*v").unwrap().b, QT::from_i64s(&(), &[3]));
    }

    #[test]
    fn grammar_rejections() {
        let col = |s: &str| match parse_poly(s) {
            Err(Error::Syntax { column, .. }) => column,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(col("T^4+5T^2+7"), 6);
        assert_eq!(col("u/(u^3+2)^2"), 2);
        assert_eq!(col("(u/(u^3+2)^2; 0)"), 3);
        assert_eq!(col("u^2^3"), 4);
        assert_eq!(col("u +"), 4);
        assert!(matches!(
            parse_poly("z + 1"),
            Err(Error::UnknownVariable(_))
        ));
        assert!(matches!(parse_poly("u + T"), Err(Error::InvalidInput(_))));
        assert!(matches!(parse_poly("v*v"), Err(Error::InvalidInput(_))));
        assert!(matches!(parse_poly("u + v"), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn canonical_round_trip() {
        let p = QT::new(vec![rat(-1, 2), int(0), int(1), int(-3)], &());
        let s = format_poly(&p, 'T');
        assert_eq!(s, "-3*T^3 + T^2 - 1/2");
        assert_eq!(parse_poly(&s).unwrap(), p);
        assert_eq!(display_poly(&p, 'T'), "-3T^3 + T^2 - 1/2");
    }
}
