//! Problem files.
//!
//! ```text
//! # comment
//! machine M = halts_at(3, 1)          # builtin
//! machine N = "machines/n.json"       # spec file, relative to the problem
//! machine K = {"registers": 1, "code": [["HALT1"]]}
//! var x, y                            # optional; fixes variable order
//! max (1+s(M,2))*x + (1-s(M,2))*y ; st x + y <= 1, x >= 0, y >= 0
//! ```
//!
//! Expressions:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('/' rational)*
//! atom   := rational | name | s(name, nat) | a(name, nat) | b(name, nat)
//!         | max(expr, expr) | min(expr, expr) | '(' expr ')'
//! rational := int | int '/' posint      (a divisor may carry a sign)
//! ```
//!
//! A constraint written exactly as `x >= 0` makes `x` sign-restricted and
//! `x <= q` (rational `q`) sets its upper bound; every other constraint is a
//! row. Variables without `x >= 0` are free.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clp_core::engine::{Clpp, ClppConstraint, CrnExpr, MachineRef};
use clp_core::machines::{builtin, halts_at, MachineError, StepMachine};
use clp_core::numerics::{parse_rational, Rational};
use clp_core::simplex::{Relation, Sense, VarBounds};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unbound machine name {0:?}")]
    UnboundMachine(String),
    #[error("division by zero")]
    ZeroDivisor,
    #[error("nonlinear term: {0}")]
    Nonlinear(&'static str),
    #[error("undeclared variable {0:?}")]
    UndeclaredVariable(String),
    #[error("machine {0:?} bound twice")]
    DuplicateMachine(String),
    #[error("machine {name:?}: {source}")]
    Machine { name: String, source: MachineError },
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

/// Where machine names not bound in the file are looked up: first
/// `<machines_dir>/<name>.json`, then the builtin machines.
#[derive(Debug, Clone, Default)]
pub struct Resolver {
    /// Directory against which relative spec paths are resolved.
    pub base_dir: Option<PathBuf>,
    pub machines_dir: Option<PathBuf>,
}

impl Resolver {
    pub fn with_machines(dir: impl Into<PathBuf>) -> Self {
        Resolver { base_dir: None, machines_dir: Some(dir.into()) }
    }
}

pub fn load_machine_file(path: &Path) -> Result<StepMachine, ParseErrorKind> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ParseErrorKind::Io { path: path.to_path_buf(), message: e.to_string() })?;
    StepMachine::from_spec_json(&text).map_err(|source| ParseErrorKind::Machine {
        name: path.display().to_string(),
        source,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Str(String),
    Json(String),
    Sym(&'static str),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err<T>(line: usize, col: usize, kind: ParseErrorKind) -> Result<T, ParseError> {
    Err(ParseError { line, col, kind })
}

fn syntax<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    err(line, col, ParseErrorKind::Syntax(msg.into()))
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let start = i;
        let push = |tok, out: &mut Vec<Token>| out.push(Token { tok, line: tl, col: tc });
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => i += 1,
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                push(Tok::Int(chars[start..i].iter().collect()), &mut out);
            }
            c if c.is_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                push(Tok::Ident(chars[start..i].iter().collect()), &mut out);
            }
            '"' => {
                i += 1;
                while i < chars.len() && chars[i] != '"' && chars[i] != '\n' {
                    i += 1;
                }
                if i >= chars.len() || chars[i] != '"' {
                    return syntax(tl, tc, "unterminated string");
                }
                i += 1;
                push(Tok::Str(chars[start + 1..i - 1].iter().collect()), &mut out);
            }
            '{' => {
                let (mut depth, mut in_str, mut esc) = (0usize, false, false);
                loop {
                    let Some(&d) = chars.get(i) else {
                        return syntax(tl, tc, "unterminated inline machine");
                    };
                    i += 1;
                    if d == '\n' {
                        line += 1;
                        col = 0;
                    }
                    col += 1;
                    match (in_str, d) {
                        (true, _) if esc => esc = false,
                        (true, '\\') => esc = true,
                        (true, '"') => in_str = false,
                        (true, _) => {}
                        (false, '"') => in_str = true,
                        (false, '{') => depth += 1,
                        (false, '}') => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        _ => {}
                    }
                }
                push(Tok::Json(chars[start..i].iter().collect()), &mut out);
                continue;
            }
            _ => {
                let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
                let sym = match two.as_str() {
                    "<=" => "<=",
                    ">=" => ">=",
                    _ => match c {
                        '+' => "+",
                        '-' => "-",
                        '*' => "*",
                        '/' => "/",
                        '(' => "(",
                        ')' => ")",
                        ',' => ",",
                        ';' => ";",
                        '=' => "=",
                        _ => return syntax(tl, tc, format!("unexpected character {c:?}")),
                    },
                };
                i += sym.len();
                push(Tok::Sym(sym), &mut out);
            }
        }
        col += i - start;
    }
    Ok(out)
}

/// Affine form `Σ coeffs[v]·v + constant` over the problem variables.
#[derive(Debug, Clone)]
struct Lin {
    coeffs: BTreeMap<usize, CrnExpr>,
    constant: CrnExpr,
}

impl Lin {
    fn constant(c: CrnExpr) -> Self {
        Lin { coeffs: BTreeMap::new(), constant: c }
    }

    fn var(v: usize) -> Self {
        Lin { coeffs: BTreeMap::from([(v, CrnExpr::one())]), constant: CrnExpr::zero() }
    }

    fn as_constant(&self) -> Option<&CrnExpr> {
        self.coeffs.is_empty().then_some(&self.constant)
    }

    fn add(self, other: Lin) -> Lin {
        let mut coeffs = self.coeffs;
        for (v, c) in other.coeffs {
            let sum = CrnExpr::add(coeffs.remove(&v).unwrap_or_else(CrnExpr::zero), c);
            if !sum.is_zero() {
                coeffs.insert(v, sum);
            }
        }
        Lin { coeffs, constant: CrnExpr::add(self.constant, other.constant) }
    }

    fn neg(self) -> Lin {
        Lin {
            coeffs: self.coeffs.into_iter().map(|(v, c)| (v, CrnExpr::neg(c))).collect(),
            constant: CrnExpr::neg(self.constant),
        }
    }

    fn map(self, f: impl Fn(CrnExpr) -> CrnExpr) -> Lin {
        Lin {
            coeffs: self
                .coeffs
                .into_iter()
                .map(|(v, c)| (v, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
            constant: f(self.constant),
        }
    }

    fn mul(self, other: Lin) -> Option<Lin> {
        if let Some(k) = self.as_constant() {
            let k = k.clone();
            Some(other.map(|c| CrnExpr::mul(k.clone(), c)))
        } else {
            let k = other.as_constant()?.clone();
            Some(self.map(|c| CrnExpr::mul(c, k.clone())))
        }
    }
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    resolver: &'a Resolver,
    bound: BTreeMap<String, MachineRef>,
    resolved: BTreeMap<String, MachineRef>,
    vars: Vec<String>,
    declared: bool,
    allow_vars: bool,
}

impl<'a> Parser<'a> {
    fn new(text: &str, resolver: &'a Resolver) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            resolver,
            bound: BTreeMap::new(),
            resolved: BTreeMap::new(),
            vars: Vec::new(),
            declared: false,
            allow_vars: true,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos).or(self.toks.last()) {
            Some(t) if self.pos < self.toks.len() => (t.line, t.col),
            Some(t) => (t.line, t.col + 1),
            None => (1, 1),
        }
    }

    fn fail<T>(&self, kind: ParseErrorKind) -> Result<T, ParseError> {
        let (l, c) = self.here();
        err(l, c, kind)
    }

    fn fail_syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        self.fail(ParseErrorKind::Syntax(msg.into()))
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Int(s) | Tok::Ident(s)) => format!("{s:?}"),
            Some(Tok::Str(s)) => format!("string {s:?}"),
            Some(Tok::Json(_)) => "inline machine".into(),
            Some(Tok::Sym(s)) => format!("{s:?}"),
        }
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(s)) if *s == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<(), ParseError> {
        if self.eat(sym) {
            Ok(())
        } else {
            self.fail_syntax(format!("expected {sym:?}, found {}", self.describe()))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.fail_syntax(format!("expected a name, found {}", self.describe())),
        }
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Some(Tok::Int(s)) => {
                let n = s.parse().or_else(|_| self.fail_syntax(format!("index {s} out of range")))?;
                self.pos += 1;
                Ok(n)
            }
            _ => self.fail_syntax(format!("expected a natural number, found {}", self.describe())),
        }
    }

    /// `int` or `int/posint`, with an optional leading sign when `signed`.
    fn rational(&mut self, signed: bool) -> Result<Rational, ParseError> {
        let negative = signed && self.eat("-");
        let Some(Tok::Int(num)) = self.peek().cloned() else {
            return self.fail_syntax(format!("expected a number, found {}", self.describe()));
        };
        self.pos += 1;
        let mut text = num;
        if matches!(self.peek(), Some(Tok::Sym("/"))) && matches!(self.peek_at(1), Some(Tok::Int(_))) {
            self.pos += 1;
            let Some(Tok::Int(den)) = self.peek().cloned() else { unreachable!() };
            if den.bytes().all(|b| b == b'0') {
                return self.fail(ParseErrorKind::ZeroDivisor);
            }
            self.pos += 1;
            text = format!("{text}/{den}");
        }
        let q = parse_rational(&text).or_else(|e| self.fail_syntax(e.to_string()))?;
        Ok(if negative { -q } else { q })
    }

    fn fail_at<T>(&self, at: usize, kind: ParseErrorKind) -> Result<T, ParseError> {
        let t = &self.toks[at];
        err(t.line, t.col, kind)
    }

    fn machine(&mut self, name: &str, at: usize) -> Result<MachineRef, ParseError> {
        if let Some(m) = self.bound.get(name).or_else(|| self.resolved.get(name)) {
            return Ok(m.clone());
        }
        let from_dir = match &self.resolver.machines_dir {
            Some(dir) => {
                let path = dir.join(format!("{name}.json"));
                if path.is_file() {
                    Some(load_machine_file(&path).or_else(|k| self.fail_at(at, k))?)
                } else {
                    None
                }
            }
            None => None,
        };
        let Some(m) = from_dir.or_else(|| builtin(name)) else {
            return self.fail_at(at, ParseErrorKind::UnboundMachine(name.into()));
        };
        let m = MachineRef::new(name, m);
        self.resolved.insert(name.into(), m.clone());
        Ok(m)
    }

    fn variable(&mut self, name: &str) -> Result<usize, ParseError> {
        if let Some(i) = self.vars.iter().position(|v| v == name) {
            return Ok(i);
        }
        if self.declared {
            return self.fail(ParseErrorKind::UndeclaredVariable(name.into()));
        }
        self.vars.push(name.into());
        Ok(self.vars.len() - 1)
    }

    fn expr(&mut self) -> Result<Lin, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat("+") {
                acc = acc.add(self.term()?);
            } else if self.eat("-") {
                acc = acc.add(self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Lin, ParseError> {
        let mut acc = self.factor()?;
        while self.eat("*") {
            let rhs = self.factor()?;
            acc = match acc.mul(rhs) {
                Some(l) => l,
                None => return self.fail(ParseErrorKind::Nonlinear("product of two variables")),
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Lin, ParseError> {
        if self.eat("-") {
            return Ok(self.factor()?.neg());
        }
        let mut acc = self.atom()?;
        while self.eat("/") {
            let at = self.pos;
            let q = self.rational(true)?;
            if q.is_zero() {
                return self.fail_at(at, ParseErrorKind::ZeroDivisor);
            }
            acc = acc.map(|c| CrnExpr::div_rat(c, q.clone()).expect("nonzero divisor"));
        }
        Ok(acc)
    }

    fn constant_arg(&mut self, what: &'static str) -> Result<CrnExpr, ParseError> {
        let l = self.expr()?;
        match l.as_constant() {
            Some(c) => Ok(c.clone()),
            None => self.fail(ParseErrorKind::Nonlinear(what)),
        }
    }

    fn atom(&mut self) -> Result<Lin, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(_)) => Ok(Lin::constant(CrnExpr::rat(self.rational(false)?))),
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) if matches!(self.peek_at(1), Some(Tok::Sym("("))) => {
                self.pos += 2;
                let e = match name.as_str() {
                    "s" | "a" | "b" => {
                        let at = self.pos;
                        let m = self.ident()?;
                        let m = self.machine(&m, at)?;
                        self.expect(",")?;
                        let n = self.nat()?;
                        match name.as_str() {
                            "s" => CrnExpr::specker(&m, n),
                            "a" => CrnExpr::pair_a(&m, n),
                            _ => CrnExpr::pair_b(&m, n),
                        }
                    }
                    "max" | "min" => {
                        let x = self.constant_arg("max/min of a variable")?;
                        self.expect(",")?;
                        let y = self.constant_arg("max/min of a variable")?;
                        if name == "max" {
                            CrnExpr::max(x, y)
                        } else {
                            CrnExpr::min(x, y)
                        }
                    }
                    _ => {
                        self.pos -= 2;
                        return self.fail_syntax(format!("unknown function {name:?}"));
                    }
                };
                self.expect(")")?;
                Ok(Lin::constant(e))
            }
            Some(Tok::Ident(name)) if self.allow_vars => {
                let v = self.variable(&name)?;
                self.pos += 1;
                Ok(Lin::var(v))
            }
            Some(Tok::Ident(name)) => self.fail_syntax(format!("variable {name:?} in a constant expression")),
            _ => self.fail_syntax(format!("expected an expression, found {}", self.describe())),
        }
    }

    fn relation(&mut self) -> Result<Relation, ParseError> {
        for (sym, rel) in [("<=", Relation::Le), (">=", Relation::Ge), ("=", Relation::Eq)] {
            if self.eat(sym) {
                return Ok(rel);
            }
        }
        self.fail_syntax(format!("expected a relation, found {}", self.describe()))
    }

    fn directive(&mut self) -> Result<bool, ParseError> {
        if self.eat_keyword("machine") {
            let (line, col) = self.here();
            let name = self.ident()?;
            if self.bound.contains_key(&name) {
                return err(line, col, ParseErrorKind::DuplicateMachine(name));
            }
            self.expect("=")?;
            let (line, col) = self.here();
            let wrap = |source| ParseError { line, col, kind: ParseErrorKind::Machine { name: name.clone(), source } };
            let machine = match self.peek().cloned() {
                Some(Tok::Str(path)) => {
                    self.pos += 1;
                    let path = match &self.resolver.base_dir {
                        Some(base) => base.join(path),
                        None => PathBuf::from(path),
                    };
                    load_machine_file(&path).or_else(|k| err(line, col, k))?
                }
                Some(Tok::Json(text)) => {
                    self.pos += 1;
                    StepMachine::from_spec_json(&text).map_err(wrap)?
                }
                Some(Tok::Ident(b)) if b == "halts_at" && matches!(self.peek_at(1), Some(Tok::Sym("("))) => {
                    self.pos += 2;
                    let m = self.nat()?;
                    self.expect(",")?;
                    let bit = self.nat()?;
                    self.expect(")")?;
                    if m == 0 || bit > 1 {
                        return syntax(line, col, "halts_at(m, b) needs m >= 1 and b in {0, 1}");
                    }
                    halts_at(m, bit as u8)
                }
                Some(Tok::Ident(b)) => {
                    self.pos += 1;
                    match builtin(&b) {
                        Some(m) => m,
                        None => return syntax(line, col, format!("unknown builtin machine {b:?}")),
                    }
                }
                _ => return self.fail_syntax(format!("expected a machine, found {}", self.describe())),
            };
            self.bound.insert(name.clone(), MachineRef::new(name, machine));
            Ok(true)
        } else if self.eat_keyword("var") {
            loop {
                let (line, col) = self.here();
                let v = self.ident()?;
                if self.vars.contains(&v) {
                    return syntax(line, col, format!("variable {v:?} declared twice"));
                }
                self.vars.push(v);
                if !self.eat(",") {
                    break;
                }
            }
            self.declared = true;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    /// `x >= 0` or `x <= q` written literally, followed by `,` or the end.
    fn bound_shape(&self) -> Option<(String, Relation)> {
        let Some(Tok::Ident(name)) = self.peek() else { return None };
        let rel = match self.peek_at(1) {
            Some(Tok::Sym(">=")) => Relation::Ge,
            Some(Tok::Sym("<=")) => Relation::Le,
            _ => return None,
        };
        let mut k = 2;
        if matches!(self.peek_at(k), Some(Tok::Sym("-"))) {
            k += 1;
        }
        if !matches!(self.peek_at(k), Some(Tok::Int(_))) {
            return None;
        }
        k += 1;
        if matches!(self.peek_at(k), Some(Tok::Sym("/"))) && matches!(self.peek_at(k + 1), Some(Tok::Int(_))) {
            k += 2;
        }
        match self.peek_at(k) {
            None | Some(Tok::Sym(",")) => Some((name.clone(), rel)),
            _ => None,
        }
    }

    fn problem(mut self) -> Result<Clpp, ParseError> {
        while self.directive()? {}
        let sense = if self.eat_keyword("max") {
            Sense::Max
        } else if self.eat_keyword("min") {
            Sense::Min
        } else {
            return self.fail_syntax(format!("expected \"max\" or \"min\", found {}", self.describe()));
        };
        let (ol, oc) = self.here();
        let objective = self.expr()?;
        if !objective.constant.is_zero() {
            return syntax(ol, oc, "objective has a constant term");
        }
        let mut rows: Vec<(BTreeMap<usize, CrnExpr>, Relation, CrnExpr)> = Vec::new();
        let mut nonneg: Vec<usize> = Vec::new();
        let mut upper: BTreeMap<usize, Rational> = BTreeMap::new();
        if self.eat(";") {
            if !self.eat_keyword("st") {
                return self.fail_syntax(format!("expected \"st\", found {}", self.describe()));
            }
            loop {
                let shape = self.bound_shape();
                let lhs = self.expr()?;
                let rel = self.relation()?;
                let rhs = self.expr()?;
                let row = lhs.add(rhs.clone().neg());
                let mut handled = false;
                if let Some((name, brel)) = shape {
                    let v = self.vars.iter().position(|x| *x == name).expect("variable was registered");
                    let q = rhs.constant.as_rational().expect("literal bound").clone();
                    if brel == Relation::Ge && q.is_zero() {
                        nonneg.push(v);
                        handled = true;
                    } else if brel == Relation::Le && !upper.contains_key(&v) {
                        upper.insert(v, q);
                        handled = true;
                    }
                }
                if !handled {
                    let lhs_const = CrnExpr::neg(row.constant.clone());
                    rows.push((row.coeffs, rel, lhs_const));
                }
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.eat(";");
        if self.pos < self.toks.len() {
            return self.fail_syntax(format!("unexpected {}", self.describe()));
        }
        let n = self.vars.len();
        let dense = |m: &BTreeMap<usize, CrnExpr>| -> Vec<CrnExpr> {
            (0..n).map(|v| m.get(&v).cloned().unwrap_or_else(CrnExpr::zero)).collect()
        };
        let bounds = (0..n)
            .map(|v| VarBounds { nonneg: nonneg.contains(&v), upper: upper.get(&v).cloned() })
            .collect();
        Ok(Clpp {
            sense,
            objective: dense(&objective.coeffs),
            constraints: rows
                .iter()
                .map(|(c, rel, rhs)| ClppConstraint { row: dense(c), rel: *rel, rhs: rhs.clone() })
                .collect(),
            bounds,
            vars: self.vars,
        })
    }
}

pub fn parse_problem(text: &str, resolver: &Resolver) -> Result<Clpp, ParseError> {
    Parser::new(text, resolver)?.problem()
}

/// Parses a machine-dependent constant such as `max(1+s(M,1), 1-s(M,1))`.
pub fn parse_expr(text: &str, resolver: &Resolver) -> Result<CrnExpr, ParseError> {
    let mut p = Parser::new(text, resolver)?;
    p.allow_vars = false;
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.fail_syntax(format!("unexpected {}", p.describe()));
    }
    Ok(e.constant)
}

fn linear_terms(coeffs: &[CrnExpr], vars: &[String]) -> String {
    let mut out = String::new();
    for (c, v) in coeffs.iter().zip(vars) {
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        match c.as_rational() {
            Some(q) if q.is_one() => out.push_str(v),
            Some(q) if (-q).is_one() => write!(out, "-{v}").unwrap(),
            _ => write!(out, "({c})*{v}").unwrap(),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Writes `p` in problem-file syntax with machines inlined, so the text
/// parses back to an equal problem without any resolver.
pub fn format_problem(p: &Clpp) -> String {
    let mut out = String::new();
    for m in p.machines() {
        writeln!(out, "machine {} = {}", m.name, m.machine.to_spec_json()).unwrap();
    }
    if !p.vars.is_empty() {
        writeln!(out, "var {}", p.vars.join(", ")).unwrap();
    }
    let sense = match p.sense {
        Sense::Max => "max",
        Sense::Min => "min",
    };
    write!(out, "{sense} {}", linear_terms(&p.objective, &p.vars)).unwrap();
    let mut items: Vec<String> = p
        .constraints
        .iter()
        .map(|c| format!("{} {} ({})", linear_terms(&c.row, &p.vars), c.rel, c.rhs))
        .collect();
    for (v, b) in p.vars.iter().zip(&p.bounds) {
        if b.nonneg {
            items.push(format!("{v} >= 0"));
        }
        if let Some(u) = &b.upper {
            items.push(format!("{v} <= {u}"));
        }
    }
    if !items.is_empty() {
        write!(out, " ;\nst {}", items.join(",\n   ")).unwrap();
    }
    out.push('\n');
    out
}

/// Parses `x=1, y=-1/2` against the problem's variable order; unnamed
/// variables default to 0.
pub fn parse_plan(text: &str, vars: &[String]) -> Result<Vec<Rational>, String> {
    let mut plan = vec![Rational::zero(); vars.len()];
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = part.split_once('=').ok_or_else(|| format!("expected name=value, got {part:?}"))?;
        let idx = vars
            .iter()
            .position(|v| v == name.trim())
            .ok_or_else(|| format!("unknown variable {:?}", name.trim()))?;
        plan[idx] = parse_rational(value.trim()).map_err(|e| e.to_string())?;
    }
    Ok(plan)
}
