//! Sparse multivariate polynomials over `Q`.
//!
//! Text grammar accepted by [`MultiPoly::parse`]: a sum of terms joined by
//! `+`/`-`, each term a product of factors joined by `*` or juxtaposition.
//! A factor is an integer or `p/q` coefficient, or a variable with an
//! optional `^e`. Variables are `x1, x2, …` (or `X1, …`); the bare letters
//! `x, y, z` stand for `x1, x2, x3`, and `t` for `x4`. Both `-` and `−` are
//! accepted as minus.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Rational, Result};

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    num_vars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl MultiPoly {
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut p = MultiPoly::zero(num_vars);
        p.add_term(vec![0; num_vars], c);
        p
    }

    /// The variable `x_{index+1}` (zero-based index).
    pub fn var(num_vars: usize, index: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[index] = 1;
        MultiPoly::monomial(e, Rational::one())
    }

    pub fn monomial(exponents: Exponents, c: Rational) -> Self {
        let mut p = MultiPoly::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// Univariate polynomial from coefficients in increasing degree.
    pub fn univariate(coeffs: &[Rational]) -> Self {
        let mut p = MultiPoly::zero(1);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(vec![i as u32], c.clone());
        }
        p
    }

    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Result<Self> {
        let mut p = MultiPoly::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::DimensionMismatch {
                    expected: num_vars,
                    got: e.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Largest exponent of `x_{var+1}` over the support.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.degree_in(var) > 0
    }

    /// Highest variable index that occurs, if any.
    pub fn last_var(&self) -> Option<usize> {
        (0..self.num_vars).rev().find(|&i| self.depends_on(i))
    }

    /// The same polynomial viewed in `n ≥ num_vars` variables.
    pub fn with_num_vars(&self, n: usize) -> Result<Self> {
        if n < self.num_vars {
            if let Some(v) = self.last_var() {
                if v >= n {
                    return Err(Error::DimensionMismatch {
                        expected: v + 1,
                        got: n,
                    });
                }
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2.resize(n, 0);
                (e2, c.clone())
            })
            .collect();
        Ok(MultiPoly { num_vars: n, terms })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.num_vars);
        }
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = MultiPoly::constant(self.num_vars, Rational::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to `x_{var+1}`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = MultiPoly::zero(self.num_vars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c * Rational::from(e[var] as i64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.num_vars).map(|i| self.derivative(i)).collect()
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    term = term * x.pow(k as i64)?;
                }
            }
            total = total + term;
        }
        Ok(total)
    }

    /// Substitutes values for some of the variables, leaving a polynomial in
    /// the rest (still indexed in the same `num_vars` slots).
    pub fn partial_eval(&self, assignment: &[(usize, Rational)]) -> Result<Self> {
        let mut out = MultiPoly::zero(self.num_vars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let mut term = c.clone();
            for (var, value) in assignment {
                let k = e[*var];
                if k > 0 {
                    term = term * value.pow(k as i64)?;
                    e2[*var] = 0;
                }
            }
            out.add_term(e2, term);
        }
        Ok(out)
    }

    /// Substitutes `images[i]` for `x_{i+1}`; all images share one variable count.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<Self> {
        if images.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: images.len(),
            });
        }
        let n = images.first().map_or(0, |p| p.num_vars);
        if let Some(bad) = images.iter().find(|p| p.num_vars != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.num_vars,
            });
        }
        let mut out = MultiPoly::zero(n);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(n, c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    term = &term * &img.pow(k);
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Coefficients in increasing degree of the univariate polynomial in
    /// `x_{var+1}` left after every other variable has been evaluated away.
    pub fn univariate_coeffs(&self, var: usize) -> Result<Vec<Rational>> {
        if let Some(other) = (0..self.num_vars).find(|&i| i != var && self.depends_on(i)) {
            return Err(Error::InvalidArgument(
                format!("polynomial still depends on x{}", other + 1),
            ));
        }
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.terms {
            out[e[var] as usize] = c.clone();
        }
        Ok(out)
    }

    /// Parses the text grammar described at module level. The variable count
    /// is the largest index seen unless `num_vars` asks for more.
    pub fn parse(s: &str, num_vars: Option<usize>) -> Result<Self> {
        let raw = Parser::new(s).parse()?;
        let seen = raw.iter().flat_map(|(vars, _)| vars.keys().copied()).max().map_or(0, |v| v + 1);
        let n = match num_vars {
            Some(n) if n < seen => {
                return Err(Error::Parse(format!(
                    "'{s}' uses x{seen} but only {n} variables were declared"
                )))
            }
            Some(n) => n,
            None => seen.max(1),
        };
        let mut p = MultiPoly::zero(n);
        for (vars, c) in raw {
            let mut e = vec![0u32; n];
            for (v, k) in vars {
                e[v] += k;
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

type RawTerm = (BTreeMap<usize, u32>, Rational);

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            src,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at position {} in '{}'",
            self.pos, self.src
        ))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        if self.peek().is_none() {
            return Err(self.err("empty polynomial"));
        }
        let mut first = true;
        while self.peek().is_some() {
            let mut sign = Rational::one();
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') | Some('−') => {
                    sign = -sign;
                    self.pos += 1;
                }
                _ if !first => return Err(self.err("expected + or -")),
                _ => {}
            }
            first = false;
            let (vars, c) = self.term()?;
            terms.push((vars, c * sign));
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<RawTerm> {
        let mut coeff = Rational::one();
        let mut vars: BTreeMap<usize, u32> = BTreeMap::new();
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    coeff = coeff * self.number()?;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let v = self.variable()?;
                    let k = if self.peek() == Some('^') {
                        self.pos += 1;
                        self.integer()?
                    } else {
                        1
                    };
                    *vars.entry(v).or_insert(0) += k;
                }
                _ => return Err(self.err("expected a coefficient or variable")),
            }
            factors += 1;
            match self.peek() {
                Some('*') => self.pos += 1,
                Some(c) if c.is_ascii_alphanumeric() => {}
                _ => break,
            }
        }
        debug_assert!(factors > 0);
        Ok((vars, coeff))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn integer(&mut self) -> Result<u32> {
        let d = self.digits();
        d.parse().map_err(|_| self.err("expected an exponent"))
    }

    fn number(&mut self) -> Result<Rational> {
        let mut text = self.digits();
        if self.peek() == Some('/') {
            self.pos += 1;
            let den = self.digits();
            if den.is_empty() {
                return Err(self.err("expected a denominator"));
            }
            text.push('/');
            text.push_str(&den);
        }
        text.parse::<Rational>().map_err(|_| self.err("bad number"))
    }

    fn variable(&mut self) -> Result<usize> {
        let letter = self.chars[self.pos];
        self.pos += 1;
        let idx = self.digits();
        if idx.is_empty() {
            return match letter {
                'x' | 'X' => Ok(0),
                'y' | 'Y' => Ok(1),
                'z' | 'Z' => Ok(2),
                't' | 'T' => Ok(3),
                _ => Err(self.err("unknown variable")),
            };
        }
        if !matches!(letter, 'x' | 'X' | 'z' | 'Z') {
            return Err(self.err("indexed variables must be x<i> or z<i>"));
        }
        let i: usize = idx.parse().map_err(|_| self.err("bad variable index"))?;
        if i == 0 {
            return Err(self.err("variable indices start at 1"));
        }
        Ok(i - 1)
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in decreasing graded order, written with explicit `*`, so that
    /// the output parses back to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.iter().all(|&k| k == 0) {
                factors.push(mag.to_string());
            }
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(format!("x{}", v + 1)),
                    _ => factors.push(format!("x{}^{}", v + 1, k)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.num_vars, self)
    }
}

fn common_vars(a: &MultiPoly, b: &MultiPoly) -> usize {
    a.num_vars.max(b.num_vars)
}

fn lift(p: &MultiPoly, n: usize) -> MultiPoly {
    if p.num_vars == n {
        p.clone()
    } else {
        p.with_num_vars(n).expect("widening never fails")
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let n = common_vars(self, rhs);
        let mut out = lift(self, n);
        for (e, c) in lift(rhs, n).terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

// Exponents add under multiplication.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let n = common_vars(self, rhs);
        let (a, b) = (lift(self, n), lift(rhs, n));
        let mut out = MultiPoly::zero(n);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}
