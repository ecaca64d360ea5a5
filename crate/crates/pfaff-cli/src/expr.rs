//! Expression grammar for forms, vector fields, polynomials and scalars.
//!
//! Terms are separated by `+`/`-`; a term multiplies factors with `*`;
//! `^` is exponentiation on polynomials and the wedge on covectors.
//! `d<var>` is a basis covector, `d/d<var>` a basis vector field, `i` the
//! imaginary unit, and rational literals look like `3`, `1/2` or `3/4i`.
//! A declared variable name always wins over the `d`-prefix and `i`
//! readings.

use std::fmt;

use num::BigRational;
use pfaff_core::form::KForm;
use pfaff_core::poly::Poly;
use pfaff_core::scalar::CScalar;
use pfaff_core::space::VarSpace;
use pfaff_core::vfield::VField;

#[derive(Debug)]
pub enum ExprError {
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    Core(pfaff_core::Error),
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Syntax { line, col, message } => {
                write!(f, "syntax error at line {line}, column {col}: {message}")
            }
            ExprError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<pfaff_core::Error> for ExprError {
    fn from(e: pfaff_core::Error) -> Self {
        ExprError::Core(e)
    }
}

type Result<T> = std::result::Result<T, ExprError>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num { value: BigRational, imag: bool },
    Ident(String),
    FieldBasis(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    line: usize,
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Lexer {
            text,
            bytes: text.as_bytes(),
            pos: 0,
            line,
        }
    }

    fn error(&self, col: usize, message: impl Into<String>) -> ExprError {
        ExprError::Syntax {
            line: self.line,
            col: col + 1,
            message: message.into(),
        }
    }

    fn read_digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn read_ident(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.bytes.len() && is_ident_char(self.bytes[self.pos]) {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>> {
        let mut out = Vec::new();
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            let col = self.pos;
            match c {
                b' ' | b'\t' => {
                    self.pos += 1;
                }
                b'+' => {
                    self.pos += 1;
                    out.push((col, Tok::Plus));
                }
                b'-' => {
                    self.pos += 1;
                    out.push((col, Tok::Minus));
                }
                b'*' => {
                    self.pos += 1;
                    out.push((col, Tok::Star));
                }
                b'^' => {
                    self.pos += 1;
                    out.push((col, Tok::Caret));
                }
                b'(' => {
                    self.pos += 1;
                    out.push((col, Tok::LParen));
                }
                b')' => {
                    self.pos += 1;
                    out.push((col, Tok::RParen));
                }
                b'0'..=b'9' => {
                    let numer = self.read_digits();
                    let mut denom = "1";
                    if self.pos < self.bytes.len() && self.bytes[self.pos] == b'/' {
                        // Only a rational literal: the slash must be
                        // followed by digits.
                        if self.pos + 1 < self.bytes.len()
                            && self.bytes[self.pos + 1].is_ascii_digit()
                        {
                            self.pos += 1;
                            denom = self.read_digits();
                        } else {
                            return Err(
                                self.error(self.pos, "expected digits after '/' in rational")
                            );
                        }
                    }
                    // Adjacent 'i' closes an imaginary literal (3i, 1/2i)
                    // unless it continues into an identifier.
                    let mut imag = false;
                    if self.pos < self.bytes.len()
                        && self.bytes[self.pos] == b'i'
                        && (self.pos + 1 >= self.bytes.len()
                            || !is_ident_char(self.bytes[self.pos + 1]))
                    {
                        self.pos += 1;
                        imag = true;
                    }
                    let n: num::BigInt = numer.parse().map_err(|_| {
                        self.error(col, format!("malformed integer {numer:?}"))
                    })?;
                    let d: num::BigInt = denom.parse().map_err(|_| {
                        self.error(col, format!("malformed integer {denom:?}"))
                    })?;
                    if num::Zero::is_zero(&d) {
                        return Err(self.error(col, "zero denominator in rational"));
                    }
                    out.push((
                        col,
                        Tok::Num {
                            value: BigRational::new(n, d),
                            imag,
                        },
                    ));
                }
                _ if is_ident_start(c) => {
                    let ident = self.read_ident();
                    // d/d<name> is a vector-field basis token.
                    if ident == "d"
                        && self.pos + 2 < self.bytes.len()
                        && self.bytes[self.pos] == b'/'
                        && self.bytes[self.pos + 1] == b'd'
                        && is_ident_start(self.bytes[self.pos + 2])
                    {
                        self.pos += 2;
                        let name = self.read_ident();
                        out.push((col, Tok::FieldBasis(name.to_string())));
                    } else {
                        out.push((col, Tok::Ident(ident.to_string())));
                    }
                }
                other => {
                    return Err(self.error(col, format!("unexpected character {:?}", other as char)))
                }
            }
        }
        Ok(out)
    }
}

/// A parsed expression value: a differential form (degree 0 covers
/// scalars and polynomials) or a vector field.
#[derive(Clone, Debug)]
pub enum Value {
    Form(KForm),
    Field(VField),
}

fn neg(v: Value) -> Value {
    match v {
        Value::Form(f) => Value::Form(f.neg()),
        Value::Field(f) => Value::Field(f.neg()),
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    space: &'a VarSpace,
    line: usize,
    len: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> ExprError {
        let col = self
            .toks
            .get(self.idx)
            .map(|(c, _)| *c + 1)
            .unwrap_or(self.len + 1);
        ExprError::Syntax {
            line: self.line,
            col,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.idx += 1;
                    let rhs = self.term()?;
                    acc = self.add(acc, rhs)?;
                }
                Some(Tok::Minus) => {
                    self.idx += 1;
                    let rhs = self.term()?;
                    let rhs = neg(rhs);
                    acc = self.add(acc, rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.idx += 1;
            let rhs = self.factor()?;
            acc = self.mul(acc, rhs)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.idx += 1;
            return Ok(neg(self.factor()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value> {
        let mut acc = self.atom()?;
        while matches!(self.peek(), Some(Tok::Caret)) {
            self.idx += 1;
            let rhs = self.atom()?;
            acc = self.pow_or_wedge(acc, rhs)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Value> {
        match self.next() {
            Some(Tok::Num { value, imag }) => {
                let c = if imag {
                    &CScalar::from_real(value) * &CScalar::i()
                } else {
                    CScalar::from_real(value)
                };
                Ok(Value::Form(KForm::from_poly(Poly::constant(self.space, c))))
            }
            Some(Tok::Ident(name)) => {
                if let Some(idx) = self.space.index_of(&name) {
                    return Ok(Value::Form(KForm::from_poly(Poly::var(self.space, idx))));
                }
                if name == "i" {
                    return Ok(Value::Form(KForm::from_poly(Poly::constant(
                        self.space,
                        CScalar::i(),
                    ))));
                }
                if let Some(rest) = name.strip_prefix('d') {
                    if let Some(idx) = self.space.index_of(rest) {
                        return Ok(Value::Form(KForm::basis_covector(self.space, idx)));
                    }
                }
                self.idx -= 1;
                Err(self.error(format!("unknown variable {name:?}")))
            }
            Some(Tok::FieldBasis(name)) => match self.space.index_of(&name) {
                Some(idx) => Ok(Value::Field(VField::basis(self.space, idx))),
                None => {
                    self.idx -= 1;
                    Err(self.error(format!("unknown variable {name:?} in d/d{name}")))
                }
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => {
                        self.idx -= 1;
                        Err(self.error("expected ')'"))
                    }
                }
            }
            Some(_) => {
                self.idx -= 1;
                Err(self.error("expected a value"))
            }
            None => Err(self.error("unexpected end of expression")),
        }
    }

    fn add(&self, a: Value, b: Value) -> Result<Value> {
        match (a, b) {
            (Value::Form(a), Value::Form(b)) => Ok(Value::Form(a.add(&b)?)),
            (Value::Field(a), Value::Field(b)) => Ok(Value::Field(a.add(&b)?)),
            (Value::Form(f), Value::Field(v)) | (Value::Field(v), Value::Form(f)) => {
                // Only the zero form coerces into the field world.
                if f.is_zero() && f.degree() == 0 {
                    Ok(Value::Field(v))
                } else {
                    Err(self.error("cannot add a form and a vector field"))
                }
            }
        }
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value> {
        match (a, b) {
            (Value::Form(a), Value::Form(b)) => Ok(Value::Form(a.wedge(&b)?)),
            (Value::Form(f), Value::Field(v)) | (Value::Field(v), Value::Form(f)) => {
                let p = f
                    .as_poly()
                    .ok_or_else(|| self.error("only scalar coefficients can scale a field"))?;
                let comps = v
                    .components()
                    .iter()
                    .map(|c| c.checked_mul(&p))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                Ok(Value::Field(VField::new(v.space(), comps)?))
            }
            (Value::Field(_), Value::Field(_)) => {
                Err(self.error("cannot multiply two vector fields"))
            }
        }
    }

    fn pow_or_wedge(&self, a: Value, b: Value) -> Result<Value> {
        let (a, b) = match (a, b) {
            (Value::Form(a), Value::Form(b)) => (a, b),
            _ => return Err(self.error("'^' does not apply to vector fields")),
        };
        if let Some(exp) = b.as_poly().and_then(|p| p.as_scalar()) {
            if let Some(e) = exp.as_small_uint() {
                return match a.as_poly() {
                    Some(p) => Ok(Value::Form(KForm::from_poly(p.checked_pow(e)?))),
                    None => Err(self.error("cannot exponentiate a form of positive degree")),
                };
            }
        }
        if a.degree() == 0 && b.degree() == 0 {
            return Err(self.error("exponent must be a non-negative integer"));
        }
        Ok(Value::Form(a.wedge(&b)?))
    }
}

/// Parses a full expression over `space`; `line` offsets error positions
/// for multi-line inputs.
pub fn parse_expr_at(text: &str, space: &VarSpace, line: usize) -> Result<Value> {
    let toks = Lexer::new(text, line).tokens()?;
    if toks.is_empty() {
        return Err(ExprError::Syntax {
            line,
            col: 1,
            message: "empty expression".into(),
        });
    }
    let mut parser = Parser {
        toks,
        idx: 0,
        space,
        line,
        len: text.len(),
    };
    let v = parser.expr()?;
    if parser.idx != parser.toks.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(v)
}

pub fn parse_expr(text: &str, space: &VarSpace) -> Result<Value> {
    parse_expr_at(text, space, 1)
}

pub fn parse_form(text: &str, space: &VarSpace) -> Result<KForm> {
    match parse_expr(text, space)? {
        Value::Form(f) => Ok(f),
        Value::Field(_) => Err(ExprError::Syntax {
            line: 1,
            col: 1,
            message: "expected a form, found a vector field".into(),
        }),
    }
}

pub fn parse_vfield(text: &str, space: &VarSpace) -> Result<VField> {
    match parse_expr(text, space)? {
        Value::Field(v) => Ok(v),
        Value::Form(f) if f.is_zero() && f.degree() == 0 => Ok(VField::zero(space)),
        Value::Form(_) => Err(ExprError::Syntax {
            line: 1,
            col: 1,
            message: "expected a vector field (use d/d<var> terms)".into(),
        }),
    }
}

pub fn parse_poly_at(text: &str, space: &VarSpace, line: usize) -> Result<Poly> {
    match parse_expr_at(text, space, line)? {
        Value::Form(f) if f.degree() == 0 => Ok(f.as_poly().expect("degree 0")),
        Value::Form(f) if f.is_zero() => Ok(Poly::zero(space)),
        _ => Err(ExprError::Syntax {
            line,
            col: 1,
            message: "expected a polynomial".into(),
        }),
    }
}

pub fn parse_poly(text: &str, space: &VarSpace) -> Result<Poly> {
    parse_poly_at(text, space, 1)
}

pub fn parse_scalar_at(text: &str, line: usize) -> Result<CScalar> {
    let empty = VarSpace::new(Vec::<String>::new()).map_err(ExprError::Core)?;
    let p = parse_poly_at(text, &empty, line)?;
    Ok(p.as_scalar().expect("constant over the empty space"))
}

pub fn parse_scalar(text: &str) -> Result<CScalar> {
    parse_scalar_at(text, 1)
}

/// Comma-separated Gaussian-rational coordinates.
pub fn parse_point(text: &str, dim: usize) -> Result<Vec<CScalar>> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != dim {
        return Err(ExprError::Syntax {
            line: 1,
            col: 1,
            message: format!("expected {dim} comma-separated coordinates, got {}", parts.len()),
        });
    }
    parts.iter().map(|p| parse_scalar(p.trim())).collect()
}

/// Comma-separated variable names into a space.
pub fn parse_vars(text: &str) -> Result<VarSpace> {
    let names: Vec<String> = text
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    VarSpace::new(names).map_err(ExprError::Core)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> VarSpace {
        VarSpace::new(["x", "y", "z"]).unwrap()
    }

    #[test]
    fn parses_standard_contact_form() {
        let s = xyz();
        let f = parse_form("x*dy + dz", &s).unwrap();
        let x = Poly::var(&s, 0);
        let expected =
            KForm::one_form(&s, vec![Poly::zero(&s), x, Poly::one(&s)]).unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn parses_symmetric_form() {
        let s = xyz();
        let f = parse_form("x*dy - y*dx - dz", &s).unwrap();
        assert_eq!(f.to_string(), "-y*dx + x*dy - dz");
    }

    #[test]
    fn parses_zero_coefficient_form() {
        let s = xyz();
        let f = parse_form("0*dx", &s).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.degree(), 1);
    }

    #[test]
    fn parses_wedges_and_powers() {
        let s = xyz();
        let f = parse_form("3*x^2*dx^dy - dz^dx", &s).unwrap();
        assert_eq!(f.to_string(), "3*x^2*dx^dy - dx^dz");
        let p = parse_poly("(x + y)^2 - x^2 - y^2", &s).unwrap();
        assert_eq!(p.to_string(), "2*x*y");
    }

    #[test]
    fn parses_complex_literals() {
        let c = parse_scalar("1/2 + 3i").unwrap();
        assert_eq!(c.to_string(), "1/2 + 3i");
        let c = parse_scalar("-3/4i").unwrap();
        assert_eq!(c.to_string(), "-3/4i");
        let c = parse_scalar("(1 - i)^2").unwrap();
        assert_eq!(c, &CScalar::from_int(-2) * &CScalar::i());
    }

    #[test]
    fn parses_vector_fields() {
        let s = xyz();
        let v = parse_vfield("d/dy - x*d/dz", &s).unwrap();
        assert!(v.component(0).is_zero());
        assert_eq!(v.component(1), &Poly::one(&s));
        assert_eq!(v.component(2), &-&Poly::var(&s, 0));
    }

    #[test]
    fn reports_positions() {
        let s = xyz();
        let err = parse_form("x*dy + dw", &s).unwrap_err();
        match err {
            ExprError::Syntax { line, col, .. } => {
                assert_eq!(line, 1);
                assert_eq!(col, 8);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_form("x*+dy", &s).is_err());
        assert!(parse_form("x*dy + dz)", &s).is_err());
    }

    #[test]
    fn degree_cap_shows_through() {
        let s = xyz();
        let err = parse_form("x^70*dy", &s).unwrap_err();
        assert!(matches!(
            err,
            ExprError::Core(pfaff_core::Error::DegreeCap { .. })
        ));
    }

    #[test]
    fn point_parsing() {
        let p = parse_point("1/2, -3, 2i", 3).unwrap();
        assert_eq!(p[0], CScalar::from_ratio(1, 2));
        assert_eq!(p[2], &CScalar::from_int(2) * &CScalar::i());
        assert!(parse_point("1,2", 3).is_err());
    }
}
