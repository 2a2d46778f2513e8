//! Lexer and expression evaluator for the script language.
//!
//! Expressions denote measures (`d[x]`), Laurent polynomials in `z1..zd`,
//! polynomials in `x1..xd`, exact scalars, tuples `( , )`, ideals `< , >`
//! and lists `[ , ]`. Measures and Laurent polynomials share one
//! representation through the transform `d[x] ↦ z^{−x}`, so either may be
//! used wherever the other is expected.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use synthkit::{Exponential, LaurentPoly, Measure, Polynomial, Scalar};

use crate::error::CliError;

/// Exponents larger than this are rejected.
const MAX_EXPONENT: i64 = 256;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Num(Scalar),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

/// Splits `text` (one line, starting at `col0`) into tokens.
pub fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Token>, CliError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: String = chars[start..i].iter().collect();
            let mut value = BigRational::from_integer(num.parse::<BigInt>().unwrap());
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                let s = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let den: BigInt = chars[s..i].iter().collect::<String>().parse().unwrap();
                if den.is_zero() {
                    return Err(CliError::syntax(line, col, "zero denominator"));
                }
                value = BigRational::new(value.numer().clone(), den);
            }
            let imaginary = i < chars.len()
                && chars[i] == 'i'
                && !chars.get(i + 1).is_some_and(|c| c.is_alphanumeric() || *c == '_');
            let s = if imaginary {
                i += 1;
                Scalar::new(BigRational::zero(), value)
            } else {
                Scalar::real(value)
            };
            if i < chars.len() && (chars[i].is_alphabetic() || chars[i] == '_') {
                return Err(CliError::syntax(line, col0 + i, "expected an operator after a number"));
            }
            out.push(Token { tok: Tok::Num(s), line, col });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line,
                col,
            });
            continue;
        }
        if "+-*^()[]<>,=".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line, col });
            i += 1;
            continue;
        }
        return Err(CliError::syntax(line, col, format!("unexpected character `{c}`")));
    }
    Ok(out)
}

/// Failure of arithmetic on forms.
#[derive(Debug)]
enum FormError {
    Dimension(String),
    Other(String),
}

impl From<&str> for FormError {
    fn from(s: &str) -> Self {
        FormError::Other(s.to_string())
    }
}

const KIND_MEASURE: u8 = 1;
const KIND_Z: u8 = 2;
const KIND_X: u8 = 4;

fn trim<T: Zero + Clone>(mut v: Vec<T>) -> Vec<T> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn add_padded<T: Zero + Clone + std::ops::Add<Output = T>>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| a.get(i).cloned().unwrap_or_else(T::zero) + b.get(i).cloned().unwrap_or_else(T::zero))
            .collect(),
    )
}

/// A sum of `c · z^e · x^a` with dimension-free exponent vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    terms: BTreeMap<(Vec<i64>, Vec<u32>), Scalar>,
    kinds: u8,
    /// Coordinate count of the `d[...]` points, which fixes the dimension.
    measure_len: Option<usize>,
}

impl Form {
    fn constant(c: Scalar) -> Self {
        let mut f = Form {
            terms: BTreeMap::new(),
            kinds: 0,
            measure_len: None,
        };
        f.add((Vec::new(), Vec::new()), c);
        f
    }

    fn add(&mut self, key: (Vec<i64>, Vec<u32>), c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn merge_meta(&self, other: &Form) -> Result<(u8, Option<usize>), FormError> {
        let kinds = self.kinds | other.kinds;
        if kinds & KIND_X != 0 && kinds & (KIND_MEASURE | KIND_Z) != 0 {
            return Err("cannot combine x-polynomials with measures or z-polynomials".into());
        }
        let measure_len = match (self.measure_len, other.measure_len) {
            (Some(a), Some(b)) if a != b => {
                return Err(FormError::Dimension(format!("measure points of length {a} and {b}")));
            }
            (a, b) => a.or(b),
        };
        Ok((kinds, measure_len))
    }

    fn plus(&self, other: &Form) -> Result<Form, FormError> {
        let (kinds, measure_len) = self.merge_meta(other)?;
        let mut out = self.clone();
        out.kinds = kinds;
        out.measure_len = measure_len;
        for (k, c) in &other.terms {
            out.add(k.clone(), c.clone());
        }
        Ok(out)
    }

    fn neg(&self) -> Form {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    fn times(&self, other: &Form) -> Result<Form, FormError> {
        let (kinds, measure_len) = self.merge_meta(other)?;
        let mut out = Form {
            terms: BTreeMap::new(),
            kinds,
            measure_len,
        };
        for ((ze, xe), c) in &self.terms {
            for ((zf, xf), g) in &other.terms {
                out.add((add_padded(ze, zf), add_padded(xe, xf)), c * g);
            }
        }
        Ok(out)
    }

    fn pow(&self, n: i64) -> Result<Form, FormError> {
        if n.abs() > MAX_EXPONENT {
            return Err(FormError::Other(format!("exponent {n} is too large")));
        }
        if n >= 0 {
            let mut acc = Form::constant(Scalar::one());
            acc.kinds = self.kinds;
            acc.measure_len = self.measure_len;
            for _ in 0..n {
                acc = acc.times(self)?;
            }
            return Ok(acc);
        }
        if self.terms.len() != 1 {
            return Err("negative powers need a single-term base".into());
        }
        let ((ze, xe), c) = self.terms.iter().next().unwrap();
        if !xe.is_empty() {
            return Err("negative powers of x-variables are not polynomials".into());
        }
        let inv = Form {
            terms: BTreeMap::from([((ze.iter().map(|v| -v).collect(), Vec::new()), c.inv().unwrap())]),
            kinds: self.kinds,
            measure_len: self.measure_len,
        };
        inv.pow(-n)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|(z, x)| z.is_empty() && x.is_empty())
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Scalar::zero))
    }

    /// Smallest dimension able to hold every variable.
    pub fn min_dim(&self) -> usize {
        self.terms
            .keys()
            .map(|(z, x)| z.len().max(x.len()))
            .max()
            .unwrap_or(0)
    }

    pub fn measure_len(&self) -> Option<usize> {
        self.measure_len
    }

    pub fn has_x(&self) -> bool {
        self.kinds & KIND_X != 0
    }

    pub fn to_laurent(&self, dim: usize) -> Result<LaurentPoly, String> {
        if self.has_x() && !self.is_constant() {
            return Err("expected a measure or z-polynomial, found x-variables".into());
        }
        Ok(LaurentPoly::from_terms(
            dim,
            self.terms.iter().map(|((z, _), c)| {
                let mut e = z.clone();
                e.resize(dim, 0);
                (e, c.clone())
            }),
        ))
    }

    pub fn to_measure(&self, dim: usize) -> Result<Measure, String> {
        Ok(synthkit::fourier::inverse_transform(&self.to_laurent(dim)?))
    }

    pub fn to_polynomial(&self, dim: usize) -> Result<Polynomial, String> {
        if self.kinds & (KIND_MEASURE | KIND_Z) != 0 && !self.is_constant() {
            return Err("expected an x-polynomial".into());
        }
        Ok(Polynomial::from_terms(
            dim,
            self.terms.iter().map(|((_, x), c)| {
                let mut e = x.clone();
                e.resize(dim, 0);
                (e, c.clone())
            }),
        ))
    }
}

/// An evaluated expression, before it is given a type by its use.
#[derive(Clone, Debug, PartialEq)]
pub enum Val {
    Form(Form),
    Tuple(Vec<Val>),
    Ideal(Vec<Val>),
    List(Vec<Val>),
}

impl Val {
    /// Smallest dimension compatible with the value, and the dimension it
    /// forces (from measure points or tuple length), if any.
    pub fn dims(&self) -> (usize, Vec<usize>) {
        match self {
            Val::Form(f) => (f.min_dim(), f.measure_len.into_iter().collect()),
            Val::Tuple(items) => {
                let (m, mut forced) = children_dims(items);
                forced.push(items.len());
                (m, forced)
            }
            Val::Ideal(items) | Val::List(items) => children_dims(items),
        }
    }
}

fn children_dims(items: &[Val]) -> (usize, Vec<usize>) {
    items.iter().map(Val::dims).fold((0, Vec::new()), |(m, mut f), (a, b)| {
        f.extend(b);
        (m.max(a), f)
    })
}

/// Recursive-descent evaluator over a token slice.
pub struct ExprParser<'a> {
    toks: &'a [Token],
    pos: usize,
    defs: &'a BTreeMap<String, Val>,
    /// Position reported for errors at the end of input.
    end: (usize, usize),
}

impl<'a> ExprParser<'a> {
    pub fn new(toks: &'a [Token], defs: &'a BTreeMap<String, Val>, end: (usize, usize)) -> Self {
        ExprParser { toks, pos: 0, defs, end }
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.col))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, CliError> {
        let (l, c) = self.here();
        Err(CliError::syntax(l, c, msg))
    }

    fn err_at<T>(&self, at: (usize, usize), msg: impl Into<String>) -> Result<T, CliError> {
        Err(CliError::syntax(at.0, at.1, msg))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    /// Parses one whole expression; trailing tokens are an error.
    pub fn parse_all(mut self) -> Result<Val, CliError> {
        let v = self.expr()?;
        if self.pos < self.toks.len() {
            return self.err("unexpected token");
        }
        Ok(v)
    }

    fn form(&self, v: Val, at: (usize, usize)) -> Result<Form, CliError> {
        match v {
            Val::Form(f) => Ok(f),
            _ => self.err_at(at, "arithmetic on a tuple, ideal or list"),
        }
    }

    fn lift(&self, r: Result<Form, FormError>, at: (usize, usize)) -> Result<Val, CliError> {
        r.map(Val::Form).map_err(|e| match e {
            FormError::Dimension(m) => CliError::new("E_DIM", m).at(at.0, at.1),
            FormError::Other(m) => CliError::syntax(at.0, at.1, m),
        })
    }

    fn expr(&mut self) -> Result<Val, CliError> {
        let start = self.here();
        let mut acc = self.term()?;
        loop {
            let at = self.here();
            let sign = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else {
                return Ok(acc);
            };
            let rhs = self.term()?;
            let a = self.form(acc, start)?;
            let b = self.form(rhs, at)?;
            let b = if sign { b.neg() } else { b };
            acc = self.lift(a.plus(&b), at)?;
        }
    }

    fn term(&mut self) -> Result<Val, CliError> {
        let start = self.here();
        let mut acc = self.unary()?;
        loop {
            let at = self.here();
            if !self.eat('*') {
                return Ok(acc);
            }
            let rhs = self.unary()?;
            let a = self.form(acc, start)?;
            let b = self.form(rhs, at)?;
            acc = self.lift(a.times(&b), at)?;
        }
    }

    fn unary(&mut self) -> Result<Val, CliError> {
        let at = self.here();
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(Val::Form(self.form(v, at)?.neg()));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn integer(&mut self) -> Result<i64, CliError> {
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Num(s)) if s.is_real() && s.re().is_integer() => {
                self.pos += 1;
                let v: i64 = num_traits::ToPrimitive::to_i64(&s.re().to_integer())
                    .map_or_else(|| self.err("integer out of range"), Ok)?;
                Ok(if neg { -v } else { v })
            }
            _ => self.err("expected an integer"),
        }
    }

    fn power(&mut self) -> Result<Val, CliError> {
        let at = self.here();
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let n = self.integer()?;
        let f = self.form(base, at)?;
        self.lift(f.pow(n), at)
    }

    fn list(&mut self, close: char) -> Result<Vec<Val>, CliError> {
        let mut items = Vec::new();
        if self.eat(close) {
            return Ok(items);
        }
        loop {
            items.push(self.expr()?);
            if self.eat(close) {
                return Ok(items);
            }
            self.expect(',')?;
        }
    }

    fn atom(&mut self) -> Result<Val, CliError> {
        let at = self.here();
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of expression");
        };
        self.pos += 1;
        match tok {
            Tok::Num(s) => Ok(Val::Form(Form::constant(s))),
            Tok::Sym('(') => {
                let mut items = self.list(')')?;
                match items.len() {
                    0 => self.err_at(at, "empty tuple"),
                    1 => Ok(items.pop().unwrap()),
                    _ => Ok(Val::Tuple(items)),
                }
            }
            Tok::Sym('<') => Ok(Val::Ideal(self.list('>')?)),
            Tok::Sym('[') => Ok(Val::List(self.list(']')?)),
            Tok::Ident(name) => self.named(&name, at),
            Tok::Sym(c) => self.err_at(at, format!("unexpected `{c}`")),
        }
    }

    fn named(&mut self, name: &str, at: (usize, usize)) -> Result<Val, CliError> {
        if name == "d" && self.eat('[') {
            let mut point = Vec::new();
            loop {
                point.push(self.integer()?);
                if self.eat(']') {
                    break;
                }
                self.expect(',')?;
            }
            let n = point.len();
            let mut f = Form::constant(Scalar::one());
            f.terms = BTreeMap::from([((trim(point.iter().map(|v| -v).collect()), Vec::new()), Scalar::one())]);
            f.kinds = KIND_MEASURE;
            f.measure_len = Some(n);
            return Ok(Val::Form(f));
        }
        if name == "i" {
            return Ok(Val::Form(Form::constant(Scalar::i())));
        }
        if let Some((kind, index)) = variable(name) {
            let mut f = Form::constant(Scalar::one());
            let key = if kind == KIND_Z {
                let mut e = vec![0i64; index + 1];
                e[index] = 1;
                (e, Vec::new())
            } else {
                let mut e = vec![0u32; index + 1];
                e[index] = 1;
                (Vec::new(), e)
            };
            f.terms = BTreeMap::from([(key, Scalar::one())]);
            f.kinds = kind;
            return Ok(Val::Form(f));
        }
        match self.defs.get(name) {
            Some(v) => Ok(v.clone()),
            None => Err(CliError::new("E_UNDEFINED", format!("undefined name `{name}`")).at(at.0, at.1)),
        }
    }
}

/// `z`, `x` (first variable) and `z<k>`, `x<k>` with `k ≥ 1`.
fn variable(name: &str) -> Option<(u8, usize)> {
    let kind = match name.chars().next()? {
        'z' => KIND_Z,
        'x' => KIND_X,
        _ => return None,
    };
    let rest = &name[1..];
    if rest.is_empty() {
        return Some((kind, 0));
    }
    if rest.starts_with('0') || !rest.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let k: usize = rest.parse().ok()?;
    Some((kind, k - 1))
}

pub fn is_reserved(name: &str) -> bool {
    name == "d" || name == "i" || variable(name).is_some()
}

/// Evaluates `text` as one expression.
pub fn eval_expr(text: &str, line: usize, col0: usize, defs: &BTreeMap<String, Val>) -> Result<Val, CliError> {
    let toks = lex(text, line, col0)?;
    ExprParser::new(&toks, defs, (line, col0 + text.chars().count())).parse_all()
}

/// Reads a value as an exponential of the given dimension.
pub fn to_exponential(v: &Val, dim: usize) -> Result<Exponential, CliError> {
    let base = exponential_base(v, dim).map_err(|m| CliError::new("E_TYPE", m))?;
    Ok(Exponential::new(base)?)
}

fn exponential_base(v: &Val, dim: usize) -> Result<Vec<Scalar>, String> {
    let coords: Vec<&Val> = match v {
        Val::Tuple(items) => items.iter().collect(),
        Val::Form(_) => vec![v],
        _ => return Err("expected an exponential `(c1, …, cd)`".into()),
    };
    if coords.len() != dim {
        return Err(format!("exponential of length {} in dimension {dim}", coords.len()));
    }
    coords
        .into_iter()
        .map(|c| match c {
            Val::Form(f) => f.constant_value().ok_or_else(|| "exponential coordinates must be scalars".to_string()),
            _ => Err("exponential coordinates must be scalars".to_string()),
        })
        .collect()
}
