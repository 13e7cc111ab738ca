//! Text format for linear difference systems (`.dps`).
//!
//! ```text
//! # Laplace contour system
//! params h;
//! shifts Sx Sy;
//! indets u_x > u_y > u;
//! ranking lex;
//! eq: 2*h*Sx(u_x) - (Sx^2 - 1)(u);
//! ```
//!
//! Declaration order of `shifts` and `indets` is also their ranking priority.
//! Shift operators compose by `*` and apply by juxtaposition with a parenthesized
//! argument, so `Sx^2*St(u)` and `(Sx^2*St)(u)` denote the same monomial.

mod lexer;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Coeff, Param};
use crate::diffpoly::{IndetId, Names, Ranking, RankingKind, ShiftOperator, ShiftOrder};
use crate::Poly;

use lexer::{tokenize, Span, Tok, Token};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    UndeclaredSymbol,
    DuplicateSymbol,
    Nonlinear,
    NegativeExponent,
    Inhomogeneous,
    DivisionByZero,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    /// Byte offsets of the offending token.
    pub start: usize,
    pub end: usize,
    pub message: String,
}

impl ParseError {
    fn new(src: &str, span: Span, kind: ParseErrorKind, message: String) -> Self {
        let before = &src[..span.start.min(src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(before.len(), |p| before.len() - p - 1) + 1;
        ParseError {
            kind,
            line,
            column,
            start: span.start,
            end: span.end,
            message,
        }
    }
}

/// Ranking choice as written in the source file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RankingSpec {
    Lex,
    GradedLex,
    Orderly,
}

impl RankingSpec {
    pub fn keyword(self) -> &'static str {
        match self {
            RankingSpec::Lex => "lex",
            RankingSpec::GradedLex => "grlex",
            RankingSpec::Orderly => "orderly",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "lex" => Some(RankingSpec::Lex),
            "grlex" => Some(RankingSpec::GradedLex),
            "orderly" => Some(RankingSpec::Orderly),
            _ => None,
        }
    }
}

impl fmt::Display for RankingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A parsed difference system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSource {
    pub params: Vec<Param>,
    pub shifts: Vec<String>,
    /// Indeterminates from highest to lowest elimination priority.
    pub indets: Vec<String>,
    pub ranking: RankingSpec,
    pub equations: Vec<Poly>,
}

impl SystemSource {
    pub fn names(&self) -> Names {
        Names::new(self.indets.clone(), self.shifts.clone())
    }

    pub fn ranking(&self) -> Ranking {
        self.ranking_with(self.ranking)
    }

    pub fn ranking_with(&self, spec: RankingSpec) -> Ranking {
        let (kind, order) = match spec {
            RankingSpec::Lex => (RankingKind::Elimination, ShiftOrder::Lex),
            RankingSpec::GradedLex => (RankingKind::Elimination, ShiftOrder::GradedLex),
            RankingSpec::Orderly => (RankingKind::Orderly, ShiftOrder::Lex),
        };
        let ids: Vec<IndetId> = (0..self.indets.len() as u16).map(IndetId).collect();
        Ranking::new(kind, order, &ids, (0..self.shifts.len()).collect())
    }

    pub fn indet(&self, name: &str) -> Option<IndetId> {
        self.indets
            .iter()
            .position(|s| s == name)
            .map(|i| IndetId(i as u16))
    }
}

#[derive(Clone, Debug)]
enum Value {
    Op(ShiftOperator<Coeff>),
    Poly(Poly),
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
    params: Vec<Param>,
    shifts: Vec<String>,
    indets: Vec<String>,
    implicit_params: bool,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        Ok(Parser {
            src,
            toks: tokenize(src)?,
            pos: 0,
            params: Vec::new(),
            shifts: Vec::new(),
            indets: Vec::new(),
            implicit_params: false,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, span: Span, kind: ParseErrorKind, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.src, span, kind, msg.into())
    }

    fn expect(&mut self, want: Tok) -> Result<Token, ParseError> {
        if *self.peek() == want {
            Ok(self.bump())
        } else {
            Err(self.err(
                self.span(),
                ParseErrorKind::Syntax,
                format!("expected {}, found {}", want.describe(), self.peek().describe()),
            ))
        }
    }

    fn ident(&mut self) -> Result<(String, Span), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let span = self.bump().span;
                Ok((s, span))
            }
            other => Err(self.err(
                self.span(),
                ParseErrorKind::Syntax,
                format!("expected a name, found {}", other.describe()),
            )),
        }
    }

    fn declared(&self, name: &str) -> bool {
        self.params.iter().any(|p| p.name() == name)
            || self.shifts.iter().any(|s| s == name)
            || self.indets.iter().any(|s| s == name)
    }

    fn declare(&mut self, name: &str, span: Span) -> Result<(), ParseError> {
        if self.declared(name) || is_keyword(name) {
            return Err(self.err(
                span,
                ParseErrorKind::DuplicateSymbol,
                format!("`{name}` is already declared or reserved"),
            ));
        }
        Ok(())
    }

    fn system(&mut self) -> Result<SystemSource, ParseError> {
        let mut ranking = RankingSpec::Lex;
        let mut equations = Vec::new();
        loop {
            let (kw, span) = match self.peek().clone() {
                Tok::Eof => break,
                Tok::Ident(s) => (s, self.bump().span),
                other => {
                    return Err(self.err(
                        self.span(),
                        ParseErrorKind::Syntax,
                        format!("expected a statement, found {}", other.describe()),
                    ))
                }
            };
            match kw.as_str() {
                "params" => {
                    while let Tok::Ident(_) = self.peek() {
                        let (name, span) = self.ident()?;
                        self.declare(&name, span)?;
                        self.params.push(Param::new(&name));
                    }
                    self.expect(Tok::Semi)?;
                }
                "shifts" => {
                    if !equations.is_empty() || !self.shifts.is_empty() {
                        return Err(self.err(
                            span,
                            ParseErrorKind::Syntax,
                            "shifts must be declared once, before equations",
                        ));
                    }
                    while let Tok::Ident(_) = self.peek() {
                        let (name, span) = self.ident()?;
                        self.declare(&name, span)?;
                        self.shifts.push(name);
                    }
                    self.expect(Tok::Semi)?;
                }
                "indets" => {
                    if !equations.is_empty() || !self.indets.is_empty() {
                        return Err(self.err(
                            span,
                            ParseErrorKind::Syntax,
                            "indets must be declared once, before equations",
                        ));
                    }
                    loop {
                        let (name, span) = self.ident()?;
                        self.declare(&name, span)?;
                        self.indets.push(name);
                        if *self.peek() == Tok::Gt {
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    self.expect(Tok::Semi)?;
                }
                "ranking" => {
                    let (name, span) = self.ident()?;
                    ranking = RankingSpec::from_keyword(&name).ok_or_else(|| {
                        self.err(
                            span,
                            ParseErrorKind::Syntax,
                            format!("unknown ranking `{name}` (expected lex, grlex or orderly)"),
                        )
                    })?;
                    self.expect(Tok::Semi)?;
                }
                "eq" => {
                    self.expect(Tok::Colon)?;
                    let start = self.span();
                    let v = self.expr()?;
                    let end = self.toks[self.pos.saturating_sub(1)].span;
                    let whole = Span {
                        start: start.start,
                        end: end.end.max(start.end),
                    };
                    let p = match v {
                        Value::Poly(p) => p,
                        Value::Op(op) if op.is_zero() => Poly::zero(),
                        Value::Op(_) => {
                            return Err(self.err(
                                whole,
                                ParseErrorKind::Inhomogeneous,
                                "equation contains no indeterminate",
                            ))
                        }
                    };
                    equations.push(p);
                    self.expect(Tok::Semi)?;
                }
                _ => {
                    return Err(self.err(
                        span,
                        ParseErrorKind::Syntax,
                        format!("unknown statement `{kw}`"),
                    ))
                }
            }
        }
        Ok(SystemSource {
            params: self.params.clone(),
            shifts: self.shifts.clone(),
            indets: self.indets.clone(),
            ranking,
            equations,
        })
    }

    fn nshifts(&self) -> usize {
        self.shifts.len()
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let start = self.span();
        let mut acc = self.term()?;
        loop {
            let neg = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            let op_span = self.bump().span;
            let rhs = self.term()?;
            let rhs = if neg { negate(rhs) } else { rhs };
            acc = match (acc, rhs) {
                (Value::Op(a), Value::Op(b)) => Value::Op(a.add(&b)),
                (Value::Poly(a), Value::Poly(b)) => Value::Poly(a.add(&b)),
                (Value::Op(a), Value::Poly(b)) | (Value::Poly(b), Value::Op(a)) => {
                    if a.is_zero() {
                        Value::Poly(b)
                    } else {
                        return Err(self.err(
                            Span {
                                start: start.start,
                                end: op_span.end,
                            },
                            ParseErrorKind::Inhomogeneous,
                            "cannot add an operator or constant to a polynomial",
                        ));
                    }
                }
            };
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let div = match self.peek() {
                Tok::Star => false,
                Tok::Slash => true,
                _ => return Ok(acc),
            };
            self.bump();
            let rhs_span = self.span();
            let rhs = self.unary()?;
            acc = if div {
                let Value::Op(op) = &rhs else {
                    return Err(self.err(
                        rhs_span,
                        ParseErrorKind::Nonlinear,
                        "cannot divide by a polynomial",
                    ));
                };
                let Some(c) = op.as_scalar() else {
                    return Err(self.err(
                        rhs_span,
                        ParseErrorKind::NegativeExponent,
                        "cannot divide by a shift operator",
                    ));
                };
                if c.is_zero() {
                    return Err(self.err(rhs_span, ParseErrorKind::DivisionByZero, "division by zero"));
                }
                let inv = c.inverse().expect("nonzero");
                match acc {
                    Value::Op(a) => Value::Op(a.scale(&inv)),
                    Value::Poly(a) => Value::Poly(a.scale(&inv)),
                }
            } else {
                self.multiply(acc, rhs, rhs_span)?
            };
        }
    }

    fn multiply(&self, a: Value, b: Value, span: Span) -> Result<Value, ParseError> {
        Ok(match (a, b) {
            (Value::Op(a), Value::Op(b)) => Value::Op(a.mul(&b)),
            (Value::Op(a), Value::Poly(p)) | (Value::Poly(p), Value::Op(a)) => {
                Value::Poly(a.apply(&p))
            }
            (Value::Poly(_), Value::Poly(_)) => {
                return Err(self.err(
                    span,
                    ParseErrorKind::Nonlinear,
                    "nonlinear term: product of two indeterminate monomials",
                ))
            }
        })
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(negate(self.unary()?))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.postfix(),
        }
    }

    /// Power followed by optional applications `(...)`.
    fn postfix(&mut self) -> Result<Value, ParseError> {
        let start = self.span();
        let mut v = self.power()?;
        while *self.peek() == Tok::LParen {
            let op = match v {
                Value::Op(op) => op,
                Value::Poly(_) => {
                    return Err(self.err(
                        start,
                        ParseErrorKind::Nonlinear,
                        "a polynomial cannot be applied to an argument",
                    ))
                }
            };
            self.bump();
            let arg_span = self.span();
            let arg = self.expr()?;
            self.expect(Tok::RParen)?;
            v = match arg {
                Value::Poly(p) => Value::Poly(op.apply(&p)),
                Value::Op(_) => {
                    return Err(self.err(
                        arg_span,
                        ParseErrorKind::Syntax,
                        "operator argument must contain an indeterminate",
                    ))
                }
            };
        }
        Ok(v)
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let base_span = self.span();
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let exp_span = self.span();
        let e = match self.peek().clone() {
            Tok::Int(i) => {
                self.bump();
                u32::try_from(i).map_err(|_| {
                    self.err(exp_span, ParseErrorKind::Syntax, "exponent too large")
                })?
            }
            other => {
                return Err(self.err(
                    exp_span,
                    ParseErrorKind::Syntax,
                    format!("expected an integer exponent, found {}", other.describe()),
                ))
            }
        };
        match base {
            Value::Poly(p) => {
                if e == 1 && !neg {
                    Ok(Value::Poly(p))
                } else {
                    Err(self.err(
                        base_span,
                        ParseErrorKind::Nonlinear,
                        "powers of indeterminates are nonlinear",
                    ))
                }
            }
            Value::Op(op) => {
                if !neg {
                    return Ok(Value::Op(op.pow(e)));
                }
                match op.as_scalar() {
                    Some(c) if !c.is_zero() => {
                        let n = self.nshifts();
                        Ok(Value::Op(ShiftOperator::scalar(
                            n,
                            c.inverse().expect("nonzero").pow(e),
                        )))
                    }
                    Some(_) => Err(self.err(
                        base_span,
                        ParseErrorKind::DivisionByZero,
                        "division by zero",
                    )),
                    None => Err(self.err(
                        exp_span,
                        ParseErrorKind::NegativeExponent,
                        "negative shift exponent",
                    )),
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let n = self.nshifts();
        match self.peek().clone() {
            Tok::Int(i) => {
                self.bump();
                Ok(Value::Op(ShiftOperator::scalar(
                    n,
                    Coeff::from_rational(crate::Rational::from_integer(i)),
                )))
            }
            Tok::LParen => {
                self.bump();
                let v = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Tok::Ident(name) => {
                let span = self.bump().span;
                if let Some(p) = self.params.iter().find(|p| p.name() == name) {
                    return Ok(Value::Op(ShiftOperator::scalar(n, Coeff::param(p.name()))));
                }
                if let Some(i) = self.shifts.iter().position(|s| *s == name) {
                    return Ok(Value::Op(ShiftOperator::shift(n, i, 1)));
                }
                if let Some(k) = self.indets.iter().position(|s| *s == name) {
                    return Ok(Value::Poly(
                        ShiftOperator::identity(n).on(IndetId(k as u16)),
                    ));
                }
                if self.implicit_params && !is_keyword(&name) {
                    return Ok(Value::Op(ShiftOperator::scalar(n, Coeff::param(&name))));
                }
                Err(self.err(
                    span,
                    ParseErrorKind::UndeclaredSymbol,
                    format!("undeclared symbol `{name}`"),
                ))
            }
            other => Err(self.err(
                self.span(),
                ParseErrorKind::Syntax,
                format!("expected an expression, found {}", other.describe()),
            )),
        }
    }
}

fn negate(v: Value) -> Value {
    match v {
        Value::Op(op) => Value::Op(op.neg()),
        Value::Poly(p) => Value::Poly(p.neg()),
    }
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "params" | "shifts" | "indets" | "ranking" | "eq")
}

pub fn parse_system(text: &str) -> Result<SystemSource, ParseError> {
    Parser::new(text)?.system()
}

/// Parses a coefficient expression; every identifier is taken as a parameter.
pub fn parse_coeff(text: &str) -> Result<Coeff, ParseError> {
    let mut p = Parser::new(text)?;
    p.implicit_params = true;
    let v = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.err(
            p.span(),
            ParseErrorKind::Syntax,
            format!("unexpected {}", p.peek().describe()),
        ));
    }
    match v {
        Value::Op(op) => Ok(op.as_scalar().expect("no shifts declared")),
        Value::Poly(_) => unreachable!("no indeterminates declared"),
    }
}

/// Canonical text form; equations are listed in the order given, terms in descending rank.
pub fn print_system(s: &SystemSource) -> String {
    let mut out = String::new();
    if !s.params.is_empty() {
        let names: Vec<&str> = s.params.iter().map(|p| p.name()).collect();
        out.push_str(&format!("params {};\n", names.join(" ")));
    }
    if !s.shifts.is_empty() {
        out.push_str(&format!("shifts {};\n", s.shifts.join(" ")));
    }
    if !s.indets.is_empty() {
        out.push_str(&format!("indets {};\n", s.indets.join(" > ")));
    }
    out.push_str(&format!("ranking {};\n", s.ranking));
    let names = s.names();
    let r = s.ranking();
    for eq in &s.equations {
        out.push_str(&format!("eq: {};\n", eq.display(&names, &r)));
    }
    out
}

/// Parses an integer-or-fraction literal such as `3/4`.
pub fn parse_rational(text: &str) -> Option<crate::Rational> {
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (text.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    (!d.is_zero()).then(|| crate::Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::ShiftMonomial;

    const LAPLACE: &str = "\
# Laplace equation, contour integral plus two midpoint relations
params h;
shifts Sx Sy;
indets u_x > u_y > u;
ranking lex;
eq: (Sx*Sy^2 - Sx)(u_y) + (Sx^2*Sy - Sy)(u_x);
eq: 2*h*Sx(u_x) - (Sx^2 - 1)(u);
eq: 2*h*Sy(u_y) - (Sy^2 - 1)(u);
";

    #[test]
    fn parses_laplace_system() {
        let s = parse_system(LAPLACE).unwrap();
        assert_eq!(s.equations.len(), 3);
        assert_eq!(s.indets, vec!["u_x", "u_y", "u"]);
        assert_eq!(s.shifts, vec!["Sx", "Sy"]);
        let r = s.ranking();
        let (lm, lc) = s.equations[1].leading(&r).unwrap();
        assert_eq!(lm, ShiftMonomial::new(IndetId(0), &[1, 0]));
        assert_eq!(lc, Coeff::from(2) * Coeff::param("h"));
    }

    #[test]
    fn single_indeterminate_equation() {
        let s = parse_system("indets u; eq: u;").unwrap();
        assert_eq!(s.equations[0].len(), 1);
    }

    #[test]
    fn rejects_nonlinear_product() {
        let src = "shifts Sx Sy; indets u; eq: Sx(u)*Sy(u);";
        let e = parse_system(src).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Nonlinear);
        assert_eq!(&src[e.start..e.end], "Sy");
        assert_eq!((e.line, e.column), (1, 35));
    }

    #[test]
    fn reports_undeclared_symbol_position() {
        let src = "shifts Sx;\nindets u;\neq: Sx(v) + u;";
        let e = parse_system(src).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UndeclaredSymbol);
        assert_eq!((e.line, e.column), (3, 8));
    }

    #[test]
    fn rejects_negative_shift_exponent() {
        let e = parse_system("shifts Sx; indets u; eq: Sx^-1(u);").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NegativeExponent);
    }

    #[test]
    fn rejects_inhomogeneous_sum() {
        let e = parse_system("indets u; eq: u + 1;").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Inhomogeneous);
    }

    #[test]
    fn operator_products_compose() {
        let a = parse_system("shifts Sx St; indets u; eq: Sx^2*St(u);").unwrap();
        let b = parse_system("shifts Sx St; indets u; eq: (Sx^2*St)(u);").unwrap();
        assert_eq!(a.equations, b.equations);
    }

    #[test]
    fn empty_system_prints_header_only() {
        let s = parse_system("params h; shifts Sx; indets u;").unwrap();
        assert_eq!(
            print_system(&s),
            "params h;\nshifts Sx;\nindets u;\nranking lex;\n"
        );
    }

    #[test]
    fn print_is_idempotent() {
        let heat = "\
params alpha tau h;
shifts Sx St;
indets u_x > u;
ranking lex;
eq: alpha*tau/2*(1 + St - Sx^2 - St*Sx^2)(u_x) - 2*h*(Sx*St - Sx)(u);
eq: h/2*(Sx + 1)(u_x) - (Sx - 1)(u);
";
        let once = print_system(&parse_system(heat).unwrap());
        let twice = print_system(&parse_system(&once).unwrap());
        assert_eq!(once, twice);
        assert_eq!(parse_system(&once).unwrap(), parse_system(heat).unwrap());
    }

    #[test]
    fn coefficient_round_trip() {
        for text in ["tau/(2*h)", "-3/4", "(h + tau)/(h - tau)", "h^2*nu/tau", "0"] {
            let c = parse_coeff(text).unwrap();
            assert_eq!(parse_coeff(&c.to_string()).unwrap(), c);
        }
        assert_eq!(parse_coeff("2*h*tau/(4*h^2)").unwrap().to_string(), "tau/(2*h)");
    }
}
