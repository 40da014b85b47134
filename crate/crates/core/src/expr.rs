//! One-variable expressions evaluated by substituting a numeral.
//!
//! Evaluating at an infinite or infinitesimal point replaces taking a limit:
//! `((x^2 + 2*x)/x - 2)*(34/x)` gives exactly 34 at `x = G^-1` and at `x = G`.

use num_traits::Zero;

use crate::division::divide;
use crate::error::{Error, Result};
use crate::io::Parser;
use crate::number::{GrossNumber, Rational};

/// Division cutoff used when the caller does not pick one.
pub const DEFAULT_MIN_POWER: i64 = -8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Constant(Rational),
    Grossone,
    Variable,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    PowInt(Box<Expr>, i64),
}

/// A value together with whether every division on the way terminated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: GrossNumber,
    pub exact: bool,
}

impl Expr {
    pub fn has_variable(&self) -> bool {
        match self {
            Expr::Variable => true,
            Expr::Constant(_) | Expr::Grossone => false,
            Expr::Neg(e) | Expr::PowInt(e, _) => e.has_variable(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.has_variable() || b.has_variable()
            }
        }
    }

    // Smart constructors fold subtrees built only from rational constants.

    fn neg(e: Expr) -> Expr {
        match e {
            Expr::Constant(c) => Expr::Constant(-c),
            e => Expr::Neg(Box::new(e)),
        }
    }

    fn binary(op: BinOp, a: Expr, b: Expr) -> Expr {
        if let (Expr::Constant(x), Expr::Constant(y)) = (&a, &b) {
            match op {
                BinOp::Add => return Expr::Constant(x + y),
                BinOp::Sub => return Expr::Constant(x - y),
                BinOp::Mul => return Expr::Constant(x * y),
                // a zero divisor stays in the tree and fails at evaluation
                BinOp::Div if !y.is_zero() => return Expr::Constant(x / y),
                BinOp::Div => {}
            }
        }
        let (a, b) = (Box::new(a), Box::new(b));
        match op {
            BinOp::Add => Expr::Add(a, b),
            BinOp::Sub => Expr::Sub(a, b),
            BinOp::Mul => Expr::Mul(a, b),
            BinOp::Div => Expr::Div(a, b),
        }
    }

    fn pow(e: Expr, n: i64) -> Expr {
        match e {
            Expr::Constant(c) if !(c.is_zero() && n < 0) => {
                let n32 = i32::try_from(n).expect("exponent range checked by parser");
                Expr::Constant(num_traits::Pow::pow(c, n32))
            }
            e => Expr::PowInt(Box::new(e), n),
        }
    }

    /// Evaluates bottom-up, substituting `at` for the variable.
    pub fn eval(&self, at: Option<&GrossNumber>, min_power: &GrossNumber) -> Result<Evaluation> {
        let exact = |value| Evaluation { value, exact: true };
        Ok(match self {
            Expr::Constant(c) => exact(GrossNumber::from_rational(c.clone())),
            Expr::Grossone => exact(GrossNumber::grossone()),
            Expr::Variable => exact(at.cloned().ok_or_else(|| {
                Error::InvalidArgument("expression has a variable but no point was given".into())
            })?),
            Expr::Neg(e) => {
                let v = e.eval(at, min_power)?;
                Evaluation {
                    value: -v.value,
                    exact: v.exact,
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                let l = a.eval(at, min_power)?;
                let r = b.eval(at, min_power)?;
                let both = l.exact && r.exact;
                match self {
                    Expr::Add(..) => Evaluation {
                        value: &l.value + &r.value,
                        exact: both,
                    },
                    Expr::Sub(..) => Evaluation {
                        value: &l.value - &r.value,
                        exact: both,
                    },
                    Expr::Mul(..) => Evaluation {
                        value: &l.value * &r.value,
                        exact: both,
                    },
                    _ => {
                        let d = divide(&l.value, &r.value, min_power)?;
                        Evaluation {
                            value: d.quotient,
                            exact: both && d.exact,
                        }
                    }
                }
            }
            Expr::PowInt(e, n) => {
                let base = e.eval(at, min_power)?;
                let magnitude = base.value.pow_int(n.unsigned_abs() as i64)?;
                if *n >= 0 {
                    Evaluation {
                        value: magnitude,
                        exact: base.exact,
                    }
                } else {
                    let d = divide(&GrossNumber::one(), &magnitude, min_power)?;
                    Evaluation {
                        value: d.quotient,
                        exact: base.exact && d.exact,
                    }
                }
            }
        })
    }
}

#[derive(Clone, Copy)]
enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Evaluates `e` at `value`; the flag is false if some division was cut off.
pub fn eval_at(
    e: &Expr,
    value: &GrossNumber,
    min_power: &GrossNumber,
) -> Result<(GrossNumber, bool)> {
    let v = e.eval(Some(value), min_power)?;
    Ok((v.value, v.exact))
}

/// Value of a partial-sum formula `S(k)` for a possibly infinite item count `k`.
pub fn eval_sum(closed_form: &Expr, k: &GrossNumber) -> Result<GrossNumber> {
    let min_power = GrossNumber::from_integer(DEFAULT_MIN_POWER);
    Ok(closed_form.eval(Some(k), &min_power)?.value)
}

/// `1 - 1 + 1 - ...` with `k` items: 0 for even `k`, 1 for odd.
pub fn eval_alternating(k: &GrossNumber) -> Result<GrossNumber> {
    Ok(if k.is_even()? {
        GrossNumber::zero()
    } else {
        GrossNumber::one()
    })
}

/// Parses infix syntax over one variable, `G`, numbers and `+ - * / ^`.
/// Exponents must be integer literals.
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = ExprParser {
        lex: Lexer::new(text)?,
        var_name: None,
    };
    let e = p.sum()?;
    match p.lex.peek() {
        None => Ok(e),
        Some(t) => Err(Error::syntax(t.pos, format!("unexpected {}", t.kind))),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    Num(Rational),
    Ident(String),
    G,
    Op(char),
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kind::Num(r) => write!(f, "number {r}"),
            Kind::Ident(s) => write!(f, "identifier {s:?}"),
            Kind::G => f.write_str("'G'"),
            Kind::Op(c) => write!(f, "{c:?}"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: Kind,
    pos: usize,
}

struct Lexer {
    tokens: Vec<Token>,
    next: usize,
    end: usize,
}

impl Lexer {
    fn new(text: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        let mut chars = text.char_indices().peekable();
        while let Some(&(pos, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
            } else if c.is_ascii_digit() {
                let mut p = Parser::new(&text[pos..], 0);
                let lit = decimal_literal(&mut p, pos)?;
                let len = lit.1;
                tokens.push(Token {
                    kind: Kind::Num(lit.0),
                    pos,
                });
                while chars.peek().is_some_and(|&(i, _)| i < pos + len) {
                    chars.next();
                }
            } else if c == 'G' {
                chars.next();
                tokens.push(Token { kind: Kind::G, pos });
            } else if c.is_ascii_alphabetic() {
                let mut name = String::new();
                while let Some(&(_, c)) = chars
                    .peek()
                    .filter(|(_, c)| c.is_ascii_alphanumeric() || *c == '_')
                {
                    name.push(c);
                    chars.next();
                }
                tokens.push(Token {
                    kind: Kind::Ident(name),
                    pos,
                });
            } else if "+-*/^()".contains(c) {
                chars.next();
                tokens.push(Token {
                    kind: Kind::Op(c),
                    pos,
                });
            } else {
                return Err(Error::syntax(pos, format!("unexpected character {c:?}")));
            }
        }
        Ok(Lexer {
            tokens,
            next: 0,
            end: text.len(),
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.next)
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.next).cloned();
        self.next += 1;
        t
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek().is_some_and(|t| t.kind == Kind::Op(op)) {
            self.next += 1;
            true
        } else {
            false
        }
    }
}

/// Scans an unsigned decimal at the start of `p`; returns it with its byte length.
/// A `/` is left alone so that it reads as division.
fn decimal_literal(p: &mut Parser<'_>, offset: usize) -> Result<(Rational, usize)> {
    p.decimal().map_err(|e| match e {
        Error::Syntax { pos, message } => Error::syntax(offset + pos, message),
        e => e,
    })
}

struct ExprParser {
    lex: Lexer,
    var_name: Option<String>,
}

impl ExprParser {
    fn sum(&mut self) -> Result<Expr> {
        let mut acc = self.product()?;
        loop {
            let op = if self.lex.eat_op('+') {
                BinOp::Add
            } else if self.lex.eat_op('-') {
                BinOp::Sub
            } else {
                return Ok(acc);
            };
            let rhs = self.product()?;
            acc = Expr::binary(op, acc, rhs);
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            let op = if self.lex.eat_op('*') {
                BinOp::Mul
            } else if self.lex.eat_op('/') {
                BinOp::Div
            } else {
                return Ok(acc);
            };
            let rhs = self.unary()?;
            acc = Expr::binary(op, acc, rhs);
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.lex.eat_op('-') {
            return Ok(Expr::neg(self.unary()?));
        }
        if self.lex.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while self.lex.eat_op('^') {
            let n = self.exponent()?;
            base = Expr::pow(base, n);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.lex.eat_op('(');
        let negative = if self.lex.eat_op('-') {
            true
        } else {
            self.lex.eat_op('+');
            false
        };
        let pos = self.lex.pos();
        let n = match self.lex.bump() {
            Some(Token {
                kind: Kind::Num(r), ..
            }) if r.is_integer() => r.to_integer(),
            _ => return Err(Error::syntax(pos, "exponent must be an integer literal")),
        };
        let n = i64::try_from(if negative { -n } else { n })
            .ok()
            .filter(|n| i32::try_from(*n).is_ok())
            .ok_or_else(|| Error::syntax(pos, "exponent out of range"))?;
        if paren && !self.lex.eat_op(')') {
            return Err(Error::syntax(self.lex.pos(), "expected ')'"));
        }
        Ok(n)
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.lex.pos();
        let Some(tok) = self.lex.bump() else {
            return Err(Error::syntax(pos, "unexpected end of input"));
        };
        match tok.kind {
            Kind::Num(r) => Ok(Expr::Constant(r)),
            Kind::G => Ok(Expr::Grossone),
            Kind::Ident(name) => match &self.var_name {
                Some(v) if *v != name => Err(Error::syntax(
                    pos,
                    format!("second variable {name:?}; only {v:?} is allowed"),
                )),
                _ => {
                    self.var_name = Some(name);
                    Ok(Expr::Variable)
                }
            },
            Kind::Op('(') => {
                let e = self.sum()?;
                if !self.lex.eat_op(')') {
                    return Err(Error::syntax(self.lex.pos(), "expected ')'"));
                }
                Ok(e)
            }
            kind => Err(Error::syntax(pos, format!("unexpected {kind}"))),
        }
    }
}
