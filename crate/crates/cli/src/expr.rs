//! Module expressions:
//!
//! ```text
//! E := regular | k | dual(E) | hom(E, E) | tensor(E, E) | ideal(name)
//!    | quotient(name) | ext(E, E, i) | tor(E, E, i) | outer(E, E) | name
//! ```
//!
//! `ideal(I)` is the ideal `I` as a module and `quotient(I)` is `A/I`.
//! `outer(E1, E2)` is `E1 ⊗_k E2` over `A1 ⊗_k A2`, with `E1` read over the
//! first factor and `E2` over the second; the algebra must be an external
//! tensor product of exactly two factors. A bare name refers to an entry of
//! the input's `modules` table.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use semidual_core::resolution::{ext, tor};
use semidual_core::module::{hom_module, tensor_module};
use semidual_core::{ArtinAlgebra, FDModule};

use crate::error::CliError;
use crate::input::{build_ideal, BuiltAlgebra};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Regular,
    Residue,
    Dual(Box<Expr>),
    Hom(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Ideal(String),
    Quotient(String),
    Ext(Box<Expr>, Box<Expr>, usize),
    Tor(Box<Expr>, Box<Expr>, usize),
    Outer(Box<Expr>, Box<Expr>),
    Name(String),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Regular => f.write_str("regular"),
            Expr::Residue => f.write_str("k"),
            Expr::Dual(e) => write!(f, "dual({e})"),
            Expr::Hom(a, b) => write!(f, "hom({a}, {b})"),
            Expr::Tensor(a, b) => write!(f, "tensor({a}, {b})"),
            Expr::Ideal(n) => write!(f, "ideal({n})"),
            Expr::Quotient(n) => write!(f, "quotient({n})"),
            Expr::Ext(a, b, i) => write!(f, "ext({a}, {b}, {i})"),
            Expr::Tor(a, b, i) => write!(f, "tor({a}, {b}, {i})"),
            Expr::Outer(a, b) => write!(f, "outer({a}, {b})"),
            Expr::Name(n) => f.write_str(n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Number(usize),
    Open,
    Close,
    Comma,
}

fn tokenize(s: &str) -> Result<Vec<Token>, String> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push(Token::Open);
            }
            ')' => {
                chars.next();
                out.push(Token::Close);
            }
            ',' => {
                chars.next();
                out.push(Token::Comma);
            }
            c if c.is_ascii_digit() => {
                let mut n = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    n.push(d);
                    chars.next();
                }
                out.push(Token::Number(n.parse().map_err(|_| format!("number `{n}` too large"))?));
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut id = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                    id.push(d);
                    chars.next();
                }
                out.push(Token::Ident(id));
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Token) -> Result<(), String> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(format!("expected {t:?}, found {got:?}")),
        }
    }

    fn args(&mut self, n: usize, with_index: bool) -> Result<(Vec<Expr>, Option<usize>), String> {
        self.expect(Token::Open)?;
        let mut exprs = Vec::new();
        for k in 0..n {
            if k > 0 {
                self.expect(Token::Comma)?;
            }
            exprs.push(self.expr()?);
        }
        let index = if with_index {
            self.expect(Token::Comma)?;
            match self.next() {
                Some(Token::Number(i)) => Some(i),
                got => return Err(format!("expected a degree, found {got:?}")),
            }
        } else {
            None
        };
        self.expect(Token::Close)?;
        Ok((exprs, index))
    }

    fn name_arg(&mut self) -> Result<String, String> {
        self.expect(Token::Open)?;
        let name = match self.next() {
            Some(Token::Ident(n)) => n,
            got => return Err(format!("expected a name, found {got:?}")),
        };
        self.expect(Token::Close)?;
        Ok(name)
    }

    fn expr(&mut self) -> Result<Expr, String> {
        let id = match self.next() {
            Some(Token::Ident(id)) => id,
            got => return Err(format!("expected an expression, found {got:?}")),
        };
        let call = self.tokens.get(self.pos) == Some(&Token::Open);
        let pair = |p: &mut Parser| -> Result<(Box<Expr>, Box<Expr>), String> {
            let (mut e, _) = p.args(2, false)?;
            let b = e.pop().expect("two arguments");
            let a = e.pop().expect("two arguments");
            Ok((Box::new(a), Box::new(b)))
        };
        Ok(match (id.as_str(), call) {
            ("regular", false) => Expr::Regular,
            ("k", false) => Expr::Residue,
            ("dual", true) => {
                let (mut e, _) = self.args(1, false)?;
                Expr::Dual(Box::new(e.pop().expect("one argument")))
            }
            ("hom", true) => {
                let (a, b) = pair(self)?;
                Expr::Hom(a, b)
            }
            ("tensor", true) => {
                let (a, b) = pair(self)?;
                Expr::Tensor(a, b)
            }
            ("outer", true) => {
                let (a, b) = pair(self)?;
                Expr::Outer(a, b)
            }
            ("ext" | "tor", true) => {
                let (mut e, i) = self.args(2, true)?;
                let b = Box::new(e.pop().expect("two arguments"));
                let a = Box::new(e.pop().expect("two arguments"));
                let i = i.expect("degree");
                if id == "ext" {
                    Expr::Ext(a, b, i)
                } else {
                    Expr::Tor(a, b, i)
                }
            }
            ("ideal", true) => Expr::Ideal(self.name_arg()?),
            ("quotient", true) => Expr::Quotient(self.name_arg()?),
            (_, true) => return Err(format!("unknown function `{id}`")),
            (_, false) => Expr::Name(id),
        })
    }
}

pub fn parse(s: &str) -> Result<Expr, String> {
    let mut p = Parser {
        tokens: tokenize(s)?,
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(format!("trailing input after `{e}`"));
    }
    Ok(e)
}

/// What names and ideals resolve to while evaluating.
pub struct Env<'a> {
    pub algebra: &'a BuiltAlgebra,
    pub modules: &'a BTreeMap<String, String>,
    pub ideals: &'a BTreeMap<String, Vec<String>>,
}

pub fn evaluate(env: &Env<'_>, expr: &Expr, field: &str) -> Result<FDModule, CliError> {
    let mut stack = Vec::new();
    eval(env, &env.algebra.algebra, true, expr, field, &mut stack)
}

fn eval(
    env: &Env<'_>,
    alg: &Arc<ArtinAlgebra>,
    top: bool,
    expr: &Expr,
    field: &str,
    stack: &mut Vec<String>,
) -> Result<FDModule, CliError> {
    let core = |e| CliError::core(format!("{field}: {expr}"), e);
    let rec = |e: &Expr, stack: &mut Vec<String>| eval(env, alg, top, e, field, stack);
    Ok(match expr {
        Expr::Regular => FDModule::regular(alg),
        Expr::Residue => FDModule::residue_field(alg),
        Expr::Dual(e) => rec(e, stack)?.matlis_dual(),
        Expr::Hom(a, b) => {
            let (a, b) = (rec(a, stack)?, rec(b, stack)?);
            hom_module(&a, &b).map_err(core)?.module
        }
        Expr::Tensor(a, b) => {
            let (a, b) = (rec(a, stack)?, rec(b, stack)?);
            tensor_module(&a, &b).map_err(core)?.module
        }
        Expr::Ext(a, b, i) => ext(&rec(a, stack)?, &rec(b, stack)?, *i).map_err(core)?,
        Expr::Tor(a, b, i) => tor(&rec(a, stack)?, &rec(b, stack)?, *i).map_err(core)?,
        Expr::Ideal(name) | Expr::Quotient(name) => {
            if !top {
                return Err(CliError::input(field, format!("ideal `{name}` cannot be used inside outer(...)")));
            }
            let elems = env
                .ideals
                .get(name)
                .ok_or_else(|| CliError::input(field, format!("no ideal named `{name}` in `ideals`")))?;
            let ideal = build_ideal(alg, name, elems)?;
            if matches!(expr, Expr::Ideal(_)) {
                FDModule::from_ideal(&ideal)
            } else {
                FDModule::regular(alg)
                    .quotient_by_ideal_action(&ideal)
                    .map_err(core)?
            }
        }
        Expr::Outer(a, b) => {
            let [fa, fb] = match (&env.algebra.factors, top) {
                (Some(pair), true) => pair.clone(),
                _ => {
                    return Err(CliError::input(
                        field,
                        "outer(...) needs an external_tensor algebra with exactly two factors",
                    ))
                }
            };
            let ma = eval(env, &fa, false, a, field, stack)?;
            let mb = eval(env, &fb, false, b, field, stack)?;
            ma.outer(&mb, alg).map_err(core)?
        }
        Expr::Name(name) => {
            if !top {
                return Err(CliError::input(field, format!("module `{name}` cannot be used inside outer(...)")));
            }
            if stack.contains(name) {
                return Err(CliError::input(format!("modules.{name}"), "definition refers to itself"));
            }
            let text = env
                .modules
                .get(name)
                .ok_or_else(|| CliError::input(field, format!("unknown module or keyword `{name}`")))?;
            let inner = parse(text).map_err(|m| CliError::input(format!("modules.{name}"), m))?;
            stack.push(name.clone());
            let m = eval(env, alg, top, &inner, &format!("modules.{name}"), stack)?;
            stack.pop();
            m
        }
    })
}
