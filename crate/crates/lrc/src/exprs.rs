//! Rational-expression trees: parsing, printing, and exact evaluation.
//!
//! Expressions are built over the variables x, y, z, w, u, v, the symbol `a`
//! (the canonical generator of the active field), and integer literals, with
//! operators `+ - * / ^` (integer exponents, parenthesized subterms, unary
//! minus). Evaluation is exact field arithmetic; division by zero yields the
//! first-class [`Value::Pole`] outcome rather than an error, and poles
//! propagate outward. No simplification is ever performed, so the polar set
//! of an expression is exactly what its shape dictates.

use std::fmt;

use crate::gf::{Fe, Field};
use crate::{LrcError, Result};

/// A named coordinate variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    Z,
    W,
    U,
    V,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::X, Var::Y, Var::Z, Var::W, Var::U, Var::V];

    pub fn name(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
            Var::W => 'w',
            Var::U => 'u',
            Var::V => 'v',
        }
    }

    pub fn from_char(c: char) -> Option<Var> {
        Some(match c {
            'x' => Var::X,
            'y' => Var::Y,
            'z' => Var::Z,
            'w' => Var::W,
            'u' => Var::U,
            'v' => Var::V,
            _ => return None,
        })
    }

    fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
            Var::W => 3,
            Var::U => 4,
            Var::V => 5,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Outcome of evaluating an expression: a field element or a pole.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Value {
    Elem(Fe),
    Pole,
}

impl Value {
    pub fn is_pole(self) -> bool {
        matches!(self, Value::Pole)
    }

    /// The field element, or an error naming the context if this is a pole.
    pub fn elem(self, context: &str) -> Result<Fe> {
        match self {
            Value::Elem(a) => Ok(a),
            Value::Pole => Err(LrcError::Eval(format!("unexpected pole at {context}"))),
        }
    }
}

/// Variable bindings for evaluation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Bindings {
    slots: [Option<Fe>; 6],
}

impl Bindings {
    pub fn new() -> Bindings {
        Bindings::default()
    }

    pub fn with(mut self, var: Var, value: Fe) -> Bindings {
        self.slots[var.index()] = Some(value);
        self
    }

    pub fn get(&self, var: Var) -> Option<Fe> {
        self.slots[var.index()]
    }

    /// Bindings for a planar point (x, y).
    pub fn xy(x: Fe, y: Fe) -> Bindings {
        Bindings::new().with(Var::X, x).with(Var::Y, y)
    }

    /// Bindings for a spatial point (x, y, z).
    pub fn xyz(x: Fe, y: Fe, z: Fe) -> Bindings {
        Bindings::xy(x, y).with(Var::Z, z)
    }
}

/// A rational-expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RatExpr {
    Const(Fe),
    Var(Var),
    Neg(Box<RatExpr>),
    Add(Box<RatExpr>, Box<RatExpr>),
    Sub(Box<RatExpr>, Box<RatExpr>),
    Mul(Box<RatExpr>, Box<RatExpr>),
    Div(Box<RatExpr>, Box<RatExpr>),
    Pow(Box<RatExpr>, i64),
}

impl RatExpr {
    /// Parses an expression string over the given field.
    pub fn parse(text: &str, field: &Field) -> Result<RatExpr> {
        let mut p = Parser { field: field.clone(), chars: text.char_indices().peekable(), text };
        let e = p.expr()?;
        p.skip_ws();
        if let Some(&(pos, c)) = p.chars.peek() {
            return Err(p.err(pos, &format!("unexpected '{c}'")));
        }
        Ok(e)
    }

    /// Evaluates with all free variables bound; division by zero yields Pole.
    pub fn eval(&self, field: &Field, b: &Bindings) -> Result<Value> {
        Ok(match self {
            RatExpr::Const(c) => Value::Elem(*c),
            RatExpr::Var(v) => Value::Elem(
                b.get(*v)
                    .ok_or_else(|| LrcError::Eval(format!("unbound variable '{v}'")))?,
            ),
            RatExpr::Neg(e) => match e.eval(field, b)? {
                Value::Elem(a) => Value::Elem(field.neg(a)),
                Value::Pole => Value::Pole,
            },
            RatExpr::Add(l, r) => binop(field, l.eval(field, b)?, r.eval(field, b)?, |f, a, c| {
                Some(f.add(a, c))
            }),
            RatExpr::Sub(l, r) => binop(field, l.eval(field, b)?, r.eval(field, b)?, |f, a, c| {
                Some(f.sub(a, c))
            }),
            RatExpr::Mul(l, r) => binop(field, l.eval(field, b)?, r.eval(field, b)?, |f, a, c| {
                Some(f.mul(a, c))
            }),
            RatExpr::Div(l, r) => binop(field, l.eval(field, b)?, r.eval(field, b)?, |f, a, c| {
                if c == Fe(0) {
                    None
                } else {
                    Some(f.div(a, c))
                }
            }),
            RatExpr::Pow(e, k) => match e.eval(field, b)? {
                Value::Elem(a) => match field.powi(a, *k) {
                    Some(r) => Value::Elem(r),
                    None => Value::Pole,
                },
                Value::Pole => Value::Pole,
            },
        })
    }

    /// The set of variables occurring in the tree.
    pub fn free_vars(&self) -> Vec<Var> {
        let mut present = [false; 6];
        self.collect_vars(&mut present);
        Var::ALL.iter().copied().filter(|v| present[v.index()]).collect()
    }

    fn collect_vars(&self, present: &mut [bool; 6]) {
        match self {
            RatExpr::Const(_) => {}
            RatExpr::Var(v) => present[v.index()] = true,
            RatExpr::Neg(e) | RatExpr::Pow(e, _) => e.collect_vars(present),
            RatExpr::Add(l, r) | RatExpr::Sub(l, r) | RatExpr::Mul(l, r) | RatExpr::Div(l, r) => {
                l.collect_vars(present);
                r.collect_vars(present);
            }
        }
    }

    /// Renders the tree with minimal parentheses; the result re-parses to an
    /// expression with identical evaluation semantics.
    pub fn print(&self, field: &Field) -> String {
        let mut s = String::new();
        self.fmt_prec(field, 0, &mut s);
        s
    }

    fn fmt_prec(&self, field: &Field, min_prec: u8, out: &mut String) {
        // Precedence: additive 1, multiplicative 2, unary minus 3, power 4.
        let prec = match self {
            RatExpr::Add(..) | RatExpr::Sub(..) => 1,
            RatExpr::Mul(..) | RatExpr::Div(..) => 2,
            RatExpr::Neg(..) => 3,
            RatExpr::Pow(..) => 4,
            RatExpr::Const(..) | RatExpr::Var(..) => 5,
        };
        let need_paren = prec < min_prec;
        if need_paren {
            out.push('(');
        }
        match self {
            RatExpr::Const(c) => {
                let lit = field.format_elem(*c);
                // Literals with operators in them would bind wrongly without parens.
                if lit.contains(['+', '-', '*', '^']) {
                    out.push('(');
                    out.push_str(&lit);
                    out.push(')');
                } else {
                    out.push_str(&lit);
                }
            }
            RatExpr::Var(v) => out.push(v.name()),
            RatExpr::Neg(e) => {
                out.push('-');
                e.fmt_prec(field, 4, out);
            }
            RatExpr::Add(l, r) => {
                l.fmt_prec(field, 1, out);
                out.push_str(" + ");
                r.fmt_prec(field, 2, out);
            }
            RatExpr::Sub(l, r) => {
                l.fmt_prec(field, 1, out);
                out.push_str(" - ");
                r.fmt_prec(field, 2, out);
            }
            RatExpr::Mul(l, r) => {
                l.fmt_prec(field, 2, out);
                out.push('*');
                r.fmt_prec(field, 3, out);
            }
            RatExpr::Div(l, r) => {
                l.fmt_prec(field, 2, out);
                out.push('/');
                r.fmt_prec(field, 3, out);
            }
            RatExpr::Pow(e, k) => {
                e.fmt_prec(field, 5, out);
                out.push('^');
                out.push_str(&k.to_string());
            }
        }
        if need_paren {
            out.push(')');
        }
    }
}

fn binop(field: &Field, l: Value, r: Value, op: impl Fn(&Field, Fe, Fe) -> Option<Fe>) -> Value {
    match (l, r) {
        (Value::Elem(a), Value::Elem(b)) => match op(field, a, b) {
            Some(c) => Value::Elem(c),
            None => Value::Pole,
        },
        _ => Value::Pole,
    }
}

struct Parser<'a> {
    field: Field,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
}

impl Parser<'_> {
    fn err(&self, pos: usize, msg: &str) -> LrcError {
        LrcError::Parse(format!("{msg} at byte {pos} in \"{}\"", self.text))
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(&(_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn expr(&mut self) -> Result<RatExpr> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some(&(_, '+')) => {
                    self.chars.next();
                    acc = RatExpr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(&(_, '-')) => {
                    self.chars.next();
                    acc = RatExpr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatExpr> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some(&(_, '*')) => {
                    self.chars.next();
                    acc = RatExpr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some(&(_, '/')) => {
                    self.chars.next();
                    acc = RatExpr::Div(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatExpr> {
        self.skip_ws();
        if let Some(&(_, '-')) = self.chars.peek() {
            self.chars.next();
            return Ok(RatExpr::Neg(Box::new(self.factor()?)));
        }
        let mut base = self.atom()?;
        self.skip_ws();
        if let Some(&(_, '^')) = self.chars.peek() {
            self.chars.next();
            let k = self.int_exponent()?;
            base = RatExpr::Pow(Box::new(base), k);
        }
        Ok(base)
    }

    fn int_exponent(&mut self) -> Result<i64> {
        self.skip_ws();
        let mut sign = 1i64;
        if let Some(&(_, '-')) = self.chars.peek() {
            self.chars.next();
            sign = -1;
        }
        let pos = self.chars.peek().map(|&(p, _)| p).unwrap_or(self.text.len());
        let mut digits = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        if digits.is_empty() {
            return Err(self.err(pos, "expected integer exponent"));
        }
        digits
            .parse::<i64>()
            .map(|v| sign * v)
            .map_err(|_| self.err(pos, "exponent out of range"))
    }

    fn atom(&mut self) -> Result<RatExpr> {
        self.skip_ws();
        let &(pos, c) = match self.chars.peek() {
            Some(pc) => pc,
            None => return Err(self.err(self.text.len(), "unexpected end of expression")),
        };
        if c == '(' {
            self.chars.next();
            let inner = self.expr()?;
            self.skip_ws();
            match self.chars.next() {
                Some((_, ')')) => Ok(inner),
                _ => Err(self.err(pos, "unclosed parenthesis")),
            }
        } else if c == 'a' {
            self.chars.next();
            Ok(RatExpr::Const(self.field.gen_elem()))
        } else if let Some(v) = Var::from_char(c) {
            self.chars.next();
            Ok(RatExpr::Var(v))
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&(_, d)) = self.chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(d);
                    self.chars.next();
                } else {
                    break;
                }
            }
            let n: i64 = digits
                .parse()
                .map_err(|_| self.err(pos, "integer literal out of range"))?;
            Ok(RatExpr::Const(self.field.from_int(n)))
        } else {
            Err(self.err(pos, &format!("unexpected '{c}'")))
        }
    }
}
