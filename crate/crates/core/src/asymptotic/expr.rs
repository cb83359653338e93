//! Closed-form expressions in prefix notation, e.g.
//! `(+ (pow t 2) (* 3 (cos (* 2 pi t))))`.
//!
//! Atoms are rational literals, `pi`, and parameter names. Operators:
//! `+`, `*` (any arity), `-` (negation or difference), `/`, `pow` with an
//! integer exponent, and the unary functions `sin`, `cos`, `exp`.

use std::f64::consts::PI;
use std::fmt;

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::num::{format_rational, parse_rational, to_f64, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(Rational),
    Pi,
    Var(usize),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Neg(Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Exp(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Atom(String),
}

fn tokenize(s: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | ')' | ' ' | '\t' | '\n' | '\r' => {
                if !cur.is_empty() {
                    out.push(Token::Atom(std::mem::take(&mut cur)));
                }
                match ch {
                    '(' => out.push(Token::Open),
                    ')' => out.push(Token::Close),
                    _ => {}
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(Token::Atom(cur));
    }
    out
}

impl Expr {
    /// Parses with the given parameter names (`t` for curves, `t1 t2` etc.).
    pub fn parse(s: &str, params: &[&str]) -> Result<Expr> {
        let tokens = tokenize(s);
        let mut pos = 0;
        let e = parse_tokens(&tokens, &mut pos, params)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!("trailing input in expression '{s}'")));
        }
        Ok(e)
    }

    pub fn constant(q: Rational) -> Expr {
        Expr::Const(q)
    }

    pub fn eval(&self, t: &[f64]) -> f64 {
        match self {
            Expr::Const(q) => to_f64(q),
            Expr::Pi => PI,
            Expr::Var(i) => t[*i],
            Expr::Add(v) => v.iter().map(|e| e.eval(t)).sum(),
            Expr::Mul(v) => v.iter().map(|e| e.eval(t)).product(),
            Expr::Neg(e) => -e.eval(t),
            Expr::Div(a, b) => a.eval(t) / b.eval(t),
            Expr::Pow(e, k) => e.eval(t).powi(*k),
            Expr::Sin(e) => e.eval(t).sin(),
            Expr::Cos(e) => e.eval(t).cos(),
            Expr::Exp(e) => e.eval(t).exp(),
        }
    }

    /// Symbolic partial derivative with respect to parameter `var`.
    pub fn diff(&self, var: usize) -> Expr {
        let d = match self {
            Expr::Const(_) | Expr::Pi => zero(),
            Expr::Var(i) => {
                if *i == var {
                    one()
                } else {
                    zero()
                }
            }
            Expr::Add(v) => Expr::Add(v.iter().map(|e| e.diff(var)).collect()),
            Expr::Mul(v) => Expr::Add(
                (0..v.len())
                    .map(|i| {
                        let mut f = v.clone();
                        f[i] = v[i].diff(var);
                        Expr::Mul(f)
                    })
                    .collect(),
            ),
            Expr::Neg(e) => Expr::Neg(Box::new(e.diff(var))),
            Expr::Div(a, b) => Expr::Div(
                Box::new(Expr::Add(vec![
                    Expr::Mul(vec![a.diff(var), (**b).clone()]),
                    Expr::Neg(Box::new(Expr::Mul(vec![(**a).clone(), b.diff(var)]))),
                ])),
                Box::new(Expr::Pow(b.clone(), 2)),
            ),
            Expr::Pow(e, k) => Expr::Mul(vec![
                Expr::Const(Rational::from_integer((*k).into())),
                Expr::Pow(e.clone(), k - 1),
                e.diff(var),
            ]),
            Expr::Sin(e) => Expr::Mul(vec![Expr::Cos(e.clone()), e.diff(var)]),
            Expr::Cos(e) => Expr::Neg(Box::new(Expr::Mul(vec![Expr::Sin(e.clone()), e.diff(var)]))),
            Expr::Exp(e) => Expr::Mul(vec![Expr::Exp(e.clone()), e.diff(var)]),
        };
        d.simplify()
    }

    /// Constant folding and removal of neutral elements.
    pub fn simplify(self) -> Expr {
        match self {
            Expr::Add(v) => {
                let mut c = Rational::zero();
                let mut rest = Vec::new();
                for e in v.into_iter().map(Expr::simplify) {
                    match e {
                        Expr::Const(q) => c += q,
                        Expr::Add(inner) => rest.extend(inner),
                        other => rest.push(other),
                    }
                }
                if !c.is_zero() {
                    rest.push(Expr::Const(c));
                }
                match rest.len() {
                    0 => zero(),
                    1 => rest.pop().unwrap(),
                    _ => Expr::Add(rest),
                }
            }
            Expr::Mul(v) => {
                let mut c = Rational::one();
                let mut rest = Vec::new();
                for e in v.into_iter().map(Expr::simplify) {
                    match e {
                        Expr::Const(q) => c *= q,
                        Expr::Mul(inner) => rest.extend(inner),
                        other => rest.push(other),
                    }
                }
                if c.is_zero() {
                    return zero();
                }
                if !c.is_one() || rest.is_empty() {
                    rest.insert(0, Expr::Const(c));
                }
                match rest.len() {
                    1 => rest.pop().unwrap(),
                    _ => Expr::Mul(rest),
                }
            }
            Expr::Neg(e) => match e.simplify() {
                Expr::Const(q) => Expr::Const(-q),
                Expr::Neg(inner) => *inner,
                other => Expr::Neg(Box::new(other)),
            },
            Expr::Div(a, b) => match (a.simplify(), b.simplify()) {
                (Expr::Const(p), Expr::Const(q)) if !q.is_zero() => Expr::Const(p / q),
                (a, Expr::Const(q)) if q.is_one() => a,
                (a, b) => Expr::Div(Box::new(a), Box::new(b)),
            },
            Expr::Pow(e, k) => match (e.simplify(), k) {
                (_, 0) => one(),
                (e, 1) => e,
                (Expr::Const(q), k) if k > 0 => Expr::Const(pow_rational(&q, k)),
                (e, k) => Expr::Pow(Box::new(e), k),
            },
            Expr::Sin(e) => Expr::Sin(Box::new(e.simplify())),
            Expr::Cos(e) => Expr::Cos(Box::new(e.simplify())),
            Expr::Exp(e) => Expr::Exp(Box::new(e.simplify())),
            other => other,
        }
    }

    pub fn to_prefix(&self, params: &[&str]) -> String {
        match self {
            Expr::Const(q) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format_rational(q)
                }
            }
            Expr::Pi => "pi".into(),
            Expr::Var(i) => params[*i].into(),
            Expr::Add(v) => nary("+", v, params),
            Expr::Mul(v) => nary("*", v, params),
            Expr::Neg(e) => format!("(- {})", e.to_prefix(params)),
            Expr::Div(a, b) => format!("(/ {} {})", a.to_prefix(params), b.to_prefix(params)),
            Expr::Pow(e, k) => format!("(pow {} {k})", e.to_prefix(params)),
            Expr::Sin(e) => format!("(sin {})", e.to_prefix(params)),
            Expr::Cos(e) => format!("(cos {})", e.to_prefix(params)),
            Expr::Exp(e) => format!("(exp {})", e.to_prefix(params)),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.max_var().map_or(0, |m| m + 1)).map(|i| format!("t{}", i + 1)).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.to_prefix(&refs))
    }
}

impl Expr {
    fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Var(i) => Some(*i),
            Expr::Const(_) | Expr::Pi => None,
            Expr::Add(v) | Expr::Mul(v) => v.iter().filter_map(Expr::max_var).max(),
            Expr::Div(a, b) => a.max_var().max(b.max_var()),
            Expr::Neg(e) | Expr::Pow(e, _) | Expr::Sin(e) | Expr::Cos(e) | Expr::Exp(e) => e.max_var(),
        }
    }
}

fn nary(op: &str, v: &[Expr], params: &[&str]) -> String {
    let parts: Vec<String> = v.iter().map(|e| e.to_prefix(params)).collect();
    format!("({op} {})", parts.join(" "))
}

fn zero() -> Expr {
    Expr::Const(Rational::zero())
}

fn one() -> Expr {
    Expr::Const(Rational::one())
}

fn pow_rational(q: &Rational, k: i32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * q)
}

fn parse_tokens(tokens: &[Token], pos: &mut usize, params: &[&str]) -> Result<Expr> {
    let tok = tokens.get(*pos).ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
    *pos += 1;
    match tok {
        Token::Close => Err(Error::Parse("unexpected ')'".into())),
        Token::Atom(a) => parse_atom(a, params),
        Token::Open => {
            let op = match tokens.get(*pos) {
                Some(Token::Atom(op)) => op.clone(),
                _ => return Err(Error::Parse("expected operator after '('".into())),
            };
            *pos += 1;
            let mut args = Vec::new();
            loop {
                match tokens.get(*pos) {
                    Some(Token::Close) => {
                        *pos += 1;
                        break;
                    }
                    Some(_) => args.push(parse_tokens(tokens, pos, params)?),
                    None => return Err(Error::Parse("missing ')'".into())),
                }
            }
            build(&op, args)
        }
    }
}

fn parse_atom(a: &str, params: &[&str]) -> Result<Expr> {
    if a == "pi" {
        return Ok(Expr::Pi);
    }
    if let Some(i) = params.iter().position(|p| *p == a) {
        return Ok(Expr::Var(i));
    }
    parse_rational(a)
        .map(Expr::Const)
        .map_err(|_| Error::Parse(format!("unknown symbol '{a}'")))
}

fn build(op: &str, mut args: Vec<Expr>) -> Result<Expr> {
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(Error::Parse(format!("'{op}' takes {n} argument(s), got {}", args.len())))
        }
    };
    match op {
        "+" if !args.is_empty() => Ok(Expr::Add(args)),
        "*" if !args.is_empty() => Ok(Expr::Mul(args)),
        "-" if args.len() == 1 => Ok(Expr::Neg(Box::new(args.pop().unwrap()))),
        "-" if args.len() >= 2 => {
            let first = args.remove(0);
            let rest = args.into_iter().map(|e| Expr::Neg(Box::new(e)));
            Ok(Expr::Add(std::iter::once(first).chain(rest).collect()))
        }
        "/" => {
            arity(2)?;
            let b = args.pop().unwrap();
            let a = args.pop().unwrap();
            Ok(Expr::Div(Box::new(a), Box::new(b)))
        }
        "pow" => {
            arity(2)?;
            let k = match args.pop().unwrap() {
                Expr::Const(q) if q.is_integer() => q.to_integer().to_i32(),
                _ => None,
            }
            .ok_or_else(|| Error::Parse("pow needs an integer exponent".into()))?;
            Ok(Expr::Pow(Box::new(args.pop().unwrap()), k))
        }
        "sin" | "cos" | "exp" => {
            arity(1)?;
            let e = Box::new(args.pop().unwrap());
            Ok(match op {
                "sin" => Expr::Sin(e),
                "cos" => Expr::Cos(e),
                _ => Expr::Exp(e),
            })
        }
        _ => Err(Error::Parse(format!("unknown operator '{op}' with {} argument(s)", args.len()))),
    }
}
