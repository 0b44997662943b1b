//! Text front end: a recursive-descent parser for polynomial and
//! derivation expressions, tuple literals, and tame words.
//!
//! Grammar: `^` binds tighter than `*`, which binds tighter than unary and
//! binary `+`/`-`. Rationals are written `a/b`; `/` appears only between
//! integer literals. Variables are `x1..xn`, derivation atoms `d1..dn`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::autgroup::{TameGenerator, TameWord};
use crate::poly::{Coefficient, Polynomial};
use crate::witt::Derivation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("parse error at position {pos}: expected {expected}, found {found}")]
    Syntax {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("arity error at position {pos}: index {index} exceeds arity {arity}")]
    Arity {
        pos: usize,
        index: usize,
        arity: usize,
    },
    #[error("type error at position {pos}: {message}")]
    Shape { pos: usize, message: String },
}

type PResult<T> = Result<T, ParseError>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semicolon,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(v) => format!("integer {v}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Semicolon => "';'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> PResult<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => {
                i += 1;
                Tok::Plus
            }
            '-' => {
                i += 1;
                Tok::Minus
            }
            '*' => {
                i += 1;
                Tok::Star
            }
            '/' => {
                i += 1;
                Tok::Slash
            }
            '^' => {
                i += 1;
                Tok::Caret
            }
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            ',' => {
                i += 1;
                Tok::Comma
            }
            ';' => {
                i += 1;
                Tok::Semicolon
            }
            _ if c.is_ascii_digit() => {
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                Tok::Int(text[start..i].parse().unwrap())
            }
            _ if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                    i += 1;
                }
                Tok::Ident(text[start..i].to_string())
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: start,
                    expected: "a token".into(),
                    found: format!("'{other}'"),
                })
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::Eof, bytes.len()));
    Ok(out)
}

#[derive(Debug, Clone)]
enum Expr {
    Num(Coefficient),
    Var { index: usize, pos: usize },
    DerivAtom { index: usize, pos: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32, usize),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    cur: usize,
    /// Whether `d1..dn` atoms are admitted.
    allow_deriv: bool,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.cur].0
    }

    fn pos(&self) -> usize {
        self.toks[self.cur].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.cur].0.clone();
        if self.cur + 1 < self.toks.len() {
            self.cur += 1;
        }
        t
    }

    fn err(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            expected: expected.into(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.err(expected))
        }
    }

    fn parse_expr(&mut self) -> PResult<Expr> {
        let mut lhs = match self.peek() {
            Tok::Minus => {
                self.bump();
                Expr::Neg(Box::new(self.parse_product()?))
            }
            Tok::Plus => {
                self.bump();
                self.parse_product()?
            }
            _ => self.parse_product()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.parse_product()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.parse_product()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_product(&mut self) -> PResult<Expr> {
        let mut lhs = self.parse_power()?;
        while *self.peek() == Tok::Star {
            let pos = self.pos();
            self.bump();
            let rhs = self.parse_power()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs), pos);
        }
        Ok(lhs)
    }

    fn parse_power(&mut self) -> PResult<Expr> {
        let base = self.parse_primary()?;
        if *self.peek() == Tok::Caret {
            let pos = self.pos();
            self.bump();
            match self.bump() {
                Tok::Int(v) => {
                    let exp = u32::try_from(&v).map_err(|_| ParseError::Syntax {
                        pos,
                        expected: "a non-negative exponent fitting 32 bits".into(),
                        found: format!("integer {v}"),
                    })?;
                    Ok(Expr::Pow(Box::new(base), exp, pos))
                }
                other => Err(ParseError::Syntax {
                    pos,
                    expected: "an integer exponent".into(),
                    found: other.describe(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn parse_primary(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(numer) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.bump() {
                        Tok::Int(denom) if !denom.is_zero() => {
                            Ok(Expr::Num(Coefficient::new(numer, denom)))
                        }
                        Tok::Int(_) => Err(ParseError::Syntax {
                            pos,
                            expected: "a nonzero denominator".into(),
                            found: "0".into(),
                        }),
                        other => Err(ParseError::Syntax {
                            pos,
                            expected: "a denominator".into(),
                            found: other.describe(),
                        }),
                    }
                } else {
                    Ok(Expr::Num(Coefficient::from(numer)))
                }
            }
            Tok::Ident(name) => {
                self.bump();
                if let Some(index) = parse_indexed(&name, 'x') {
                    Ok(Expr::Var { index, pos })
                } else if self.allow_deriv {
                    if let Some(index) = parse_indexed(&name, 'd') {
                        Ok(Expr::DerivAtom { index, pos })
                    } else {
                        Err(ParseError::Syntax {
                            pos,
                            expected: "a variable x<k> or derivation atom d<k>".into(),
                            found: format!("'{name}'"),
                        })
                    }
                } else {
                    Err(ParseError::Syntax {
                        pos,
                        expected: "a variable x<k>".into(),
                        found: format!("'{name}'"),
                    })
                }
            }
            Tok::LParen => {
                self.bump();
                let inner = self.parse_expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(self.err("a number, variable, or '('")),
        }
    }
}

fn parse_indexed(name: &str, prefix: char) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || rest.starts_with('0') {
        return None;
    }
    rest.parse().ok()
}

/// Values an expression can denote: a polynomial or a derivation.
enum Val {
    Poly(Polynomial),
    Deriv(Derivation),
}

fn eval(expr: &Expr, arity: usize) -> PResult<Val> {
    match expr {
        Expr::Num(c) => Ok(Val::Poly(Polynomial::constant(arity, c.clone()))),
        Expr::Var { index, pos } => Polynomial::variable(arity, *index)
            .map(Val::Poly)
            .map_err(|_| ParseError::Arity {
                pos: *pos,
                index: *index,
                arity,
            }),
        Expr::DerivAtom { index, pos } => Derivation::partial(arity, *index)
            .map(Val::Deriv)
            .map_err(|_| ParseError::Arity {
                pos: *pos,
                index: *index,
                arity,
            }),
        Expr::Neg(inner) => Ok(match eval(inner, arity)? {
            Val::Poly(p) => Val::Poly(p.neg()),
            Val::Deriv(d) => Val::Deriv(d.neg()),
        }),
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let subtract = matches!(expr, Expr::Sub(..));
            let lhs = eval(a, arity)?;
            let rhs = eval(b, arity)?;
            let rhs = if subtract {
                match rhs {
                    Val::Poly(p) => Val::Poly(p.neg()),
                    Val::Deriv(d) => Val::Deriv(d.neg()),
                }
            } else {
                rhs
            };
            match (lhs, rhs) {
                (Val::Poly(p), Val::Poly(q)) => Ok(Val::Poly(&p + &q)),
                (Val::Deriv(d), Val::Deriv(e)) => Ok(Val::Deriv(d.checked_add(&e).unwrap())),
                (Val::Poly(p), Val::Deriv(d)) | (Val::Deriv(d), Val::Poly(p)) => {
                    if p.is_zero() {
                        Ok(Val::Deriv(d))
                    } else {
                        Err(ParseError::Shape {
                            pos: 0,
                            message: "cannot add a polynomial to a derivation".into(),
                        })
                    }
                }
            }
        }
        Expr::Mul(a, b, pos) => {
            let lhs = eval(a, arity)?;
            let rhs = eval(b, arity)?;
            match (lhs, rhs) {
                (Val::Poly(p), Val::Poly(q)) => Ok(Val::Poly(&p * &q)),
                (Val::Poly(p), Val::Deriv(d)) | (Val::Deriv(d), Val::Poly(p)) => {
                    Ok(Val::Deriv(d.module_mul(&p).unwrap()))
                }
                (Val::Deriv(_), Val::Deriv(_)) => Err(ParseError::Shape {
                    pos: *pos,
                    message: "cannot multiply two derivation atoms".into(),
                }),
            }
        }
        Expr::Pow(base, exp, pos) => match eval(base, arity)? {
            Val::Poly(p) => Ok(Val::Poly(p.pow(*exp))),
            Val::Deriv(_) => Err(ParseError::Shape {
                pos: *pos,
                message: "cannot exponentiate a derivation atom".into(),
            }),
        },
    }
}

fn run_parser<T>(
    text: &str,
    allow_deriv: bool,
    finish: impl FnOnce(&mut Parser) -> PResult<T>,
) -> PResult<T> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        cur: 0,
        allow_deriv,
    };
    let out = finish(&mut parser)?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.err("end of input"));
    }
    Ok(out)
}

/// Parse a polynomial expression at a fixed arity.
pub fn parse_polynomial(text: &str, arity: usize) -> PResult<Polynomial> {
    let expr = run_parser(text, false, |p| p.parse_expr())?;
    match eval(&expr, arity)? {
        Val::Poly(p) => Ok(p),
        Val::Deriv(_) => unreachable!("derivation atoms disabled"),
    }
}

/// Parse a derivation expression (`P1*d1 + ... + Pn*dn`) at a fixed arity.
/// `0` parses as the zero derivation.
pub fn parse_derivation(text: &str, arity: usize) -> PResult<Derivation> {
    let expr = run_parser(text, true, |p| p.parse_expr())?;
    match eval(&expr, arity)? {
        Val::Deriv(d) => Ok(d),
        Val::Poly(p) if p.is_zero() => Ok(Derivation::zero(arity)),
        Val::Poly(_) => Err(ParseError::Shape {
            pos: 0,
            message: "expected a derivation (no d<k> atom found)".into(),
        }),
    }
}

/// Parse a tuple literal `(p1, p2, ..., pn)`; the component count fixes the
/// arity of every component.
pub fn parse_tuple(text: &str) -> PResult<Vec<Polynomial>> {
    let exprs = run_parser(text, false, |p| {
        p.expect(Tok::LParen, "'('")?;
        let mut exprs = vec![p.parse_expr()?];
        while *p.peek() == Tok::Comma {
            p.bump();
            exprs.push(p.parse_expr()?);
        }
        p.expect(Tok::RParen, "')'")?;
        Ok(exprs)
    })?;
    let arity = exprs.len();
    exprs
        .iter()
        .map(|e| match eval(e, arity)? {
            Val::Poly(p) => Ok(p),
            Val::Deriv(_) => unreachable!("derivation atoms disabled"),
        })
        .collect()
}

fn parse_rational(p: &mut Parser) -> PResult<Coefficient> {
    let negative = if *p.peek() == Tok::Minus {
        p.bump();
        true
    } else {
        false
    };
    let pos = p.pos();
    let numer = match p.bump() {
        Tok::Int(v) => v,
        other => {
            return Err(ParseError::Syntax {
                pos,
                expected: "an integer".into(),
                found: other.describe(),
            })
        }
    };
    let value = if *p.peek() == Tok::Slash {
        p.bump();
        match p.bump() {
            Tok::Int(denom) if !denom.is_zero() => Coefficient::new(numer, denom),
            other => {
                return Err(ParseError::Syntax {
                    pos,
                    expected: "a nonzero denominator".into(),
                    found: other.describe(),
                })
            }
        }
    } else {
        Coefficient::from(numer)
    };
    Ok(if negative { -value } else { value })
}

fn parse_uint(p: &mut Parser, what: &str) -> PResult<u32> {
    let pos = p.pos();
    match p.bump() {
        Tok::Int(v) => u32::try_from(&v).map_err(|_| ParseError::Syntax {
            pos,
            expected: format!("{what} fitting 32 bits"),
            found: format!("integer {v}"),
        }),
        other => Err(ParseError::Syntax {
            pos,
            expected: what.into(),
            found: other.describe(),
        }),
    }
}

fn parse_generator_atom(p: &mut Parser) -> PResult<TameGenerator> {
    let pos = p.pos();
    let name = match p.bump() {
        Tok::Ident(name) => name,
        other => {
            return Err(ParseError::Syntax {
                pos,
                expected: "a generator atom s<i>, t(a), psi(p), or shear(p,c)".into(),
                found: other.describe(),
            })
        }
    };
    if let Some(i) = parse_indexed(&name, 's') {
        return Ok(TameGenerator::Swap(i));
    }
    match name.as_str() {
        "t" => {
            p.expect(Tok::LParen, "'('")?;
            let a = parse_rational(p)?;
            if a.is_zero() {
                return Err(ParseError::Shape {
                    pos,
                    message: "scale factor must be nonzero".into(),
                });
            }
            p.expect(Tok::RParen, "')'")?;
            Ok(TameGenerator::Scale(a))
        }
        "psi" => {
            p.expect(Tok::LParen, "'('")?;
            let deg = parse_uint(p, "a shear degree")?;
            p.expect(Tok::RParen, "')'")?;
            Ok(TameGenerator::Shear {
                p: deg,
                c: Coefficient::one(),
            })
        }
        "shear" => {
            p.expect(Tok::LParen, "'('")?;
            let deg = parse_uint(p, "a shear degree")?;
            p.expect(Tok::Comma, "','")?;
            let c = parse_rational(p)?;
            p.expect(Tok::RParen, "')'")?;
            Ok(TameGenerator::Shear { p: deg, c })
        }
        other => Err(ParseError::Syntax {
            pos,
            expected: "a generator atom s<i>, t(a), psi(p), or shear(p,c)".into(),
            found: format!("'{other}'"),
        }),
    }
}

/// Parse a single tame generator atom, e.g. `s1`, `t(3/2)`, `psi(4)`,
/// `shear(4,-1)`.
pub fn parse_generator(text: &str) -> PResult<TameGenerator> {
    run_parser(text, false, parse_generator_atom)
}

/// Parse a semicolon-separated tame word, e.g. `s1; psi(2); t(1/2)`.
/// `id` denotes the empty word.
pub fn parse_word(text: &str, arity: usize) -> PResult<TameWord> {
    let generators = run_parser(text, false, |p| {
        if matches!(p.peek(), Tok::Ident(name) if name == "id") {
            p.bump();
            return Ok(Vec::new());
        }
        let mut gens = vec![parse_generator_atom(p)?];
        while *p.peek() == Tok::Semicolon {
            p.bump();
            gens.push(parse_generator_atom(p)?);
        }
        Ok(gens)
    })?;
    TameWord::new(arity, generators).map_err(|e| ParseError::Shape {
        pos: 0,
        message: e.to_string(),
    })
}

/// Smallest arity at which every generator of the word is valid (at least 2).
pub fn minimal_word_arity(generators: &[TameGenerator]) -> usize {
    let mut n = 2;
    for g in generators {
        if let TameGenerator::Swap(i) = g {
            n = n.max(i + 1);
        }
    }
    n
}
