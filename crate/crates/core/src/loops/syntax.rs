//! Text form of loop-algebra elements.
//!
//! Words are written `p4`, `S1`, `S1^3`, `S2*`, `S2*^2`. Terms carry an optional
//! Gaussian-rational coefficient: `3/2*S1`, `i*p2`, `-1/3i*S2*`, `(1/2+1/3i)*S1^2`.
//! The zero element prints as `0`.

use std::fmt;
use std::iter::Peekable;
use std::str::CharIndices;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::element::{ExactCoefficient, LoopElement, LoopMonomial};
use crate::error::{Error, Result};
use crate::scalar::{parse_exact, Scalar};

impl fmt::Display for LoopMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.loop_index;
        match self.exponent {
            0 => write!(f, "p{i}"),
            1 => write!(f, "S{i}"),
            -1 => write!(f, "S{i}*"),
            a if a > 0 => write!(f, "S{i}^{a}"),
            a => write!(f, "S{i}*^{}", -a),
        }
    }
}

/// Sign and text of a coefficient prefix (`""` for a unit coefficient).
fn coefficient_prefix<S: Scalar>(c: &Complex<S>) -> (bool, String) {
    let imag = |b: &S| if b.is_one() { "i".to_string() } else { format!("{b}i") };
    if c.im.is_zero() {
        let negative = c.re.is_negative();
        let mag = c.re.abs();
        let text = if mag.is_one() { String::new() } else { format!("{mag}*") };
        (negative, text)
    } else if c.re.is_zero() {
        (c.im.is_negative(), format!("{}*", imag(&c.im.abs())))
    } else {
        let sign = if c.im.is_negative() { '-' } else { '+' };
        (false, format!("({}{sign}{})*", c.re, imag(&c.im.abs())))
    }
}

impl<S: Scalar> fmt::Display for LoopElement<Complex<S>> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let (negative, prefix) = coefficient_prefix(c);
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{prefix}{m}")?;
        }
        Ok(())
    }
}

/// A Gaussian number on its own: `1`, `-i`, `3/5+4/5i`.
pub fn format_coefficient<S: Scalar>(c: &Complex<S>) -> String {
    let imag = |b: &S| if b.is_one() { "i".to_string() } else { format!("{b}i") };
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => c.re.to_string(),
        (true, false) if c.im.is_negative() => format!("-{}", imag(&c.im.abs())),
        (true, false) => imag(&c.im),
        (false, false) => {
            let sign = if c.im.is_negative() { '-' } else { '+' };
            format!("{}{sign}{}", c.re, imag(&c.im.abs()))
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    chars: Peekable<CharIndices<'a>>,
    n: usize,
}

impl<'a> Parser<'a> {
    fn error(&mut self, message: &str) -> Error {
        let pos = self.chars.peek().map_or(self.text.len(), |&(p, _)| p);
        Error::Parse {
            line: 1,
            message: format!("{message} at column {} in {:?}", pos + 1, self.text),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|(_, c)| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        s
    }

    fn index(&mut self) -> Result<usize> {
        let d = self.digits();
        d.parse().map_err(|_| self.error("expected loop index"))
    }

    /// Unsigned rational literal: digits with an optional fraction or decimal point.
    fn number(&mut self) -> Result<BigRational> {
        self.skip_ws();
        let mut s = self.digits();
        if self.chars.peek().is_some_and(|&(_, c)| c == '.') {
            self.chars.next();
            s.push('.');
            s.push_str(&self.digits());
        }
        if self.chars.peek().is_some_and(|&(_, c)| c == '/') {
            self.chars.next();
            s.push('/');
            s.push_str(&self.digits());
        }
        parse_exact(&s).map_err(|_| self.error("expected number"))
    }

    /// `number`, `number i` or `i`.
    fn gaussian_atom(&mut self) -> Result<ExactCoefficient> {
        if self.eat('i') {
            return Ok(Complex::new(BigRational::zero(), BigRational::one()));
        }
        let r = self.number()?;
        if self.chars.peek().is_some_and(|&(_, c)| c == 'i') {
            self.chars.next();
            Ok(Complex::new(BigRational::zero(), r))
        } else {
            Ok(Complex::new(r, BigRational::zero()))
        }
    }

    fn parenthesized(&mut self) -> Result<ExactCoefficient> {
        let mut total = Complex::new(BigRational::zero(), BigRational::zero());
        let mut negative = self.eat('-') || {
            self.eat('+');
            false
        };
        loop {
            let atom = self.gaussian_atom()?;
            total = if negative { total - atom } else { total + atom };
            match self.peek() {
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(')') => {
                    self.chars.next();
                    return Ok(total);
                }
                _ => return Err(self.error("expected '+', '-' or ')'")),
            }
            self.chars.next();
        }
    }

    fn monomial(&mut self) -> Result<LoopMonomial> {
        match self.peek() {
            Some('p') => {
                self.chars.next();
                Ok(LoopMonomial::projection(self.index()?))
            }
            Some('S') => {
                self.chars.next();
                let i = self.index()?;
                let adjoint = self.chars.peek().is_some_and(|&(_, c)| c == '*');
                if adjoint {
                    self.chars.next();
                }
                let power = if self.chars.peek().is_some_and(|&(_, c)| c == '^') {
                    self.chars.next();
                    let d = self.digits();
                    d.parse::<i64>().map_err(|_| self.error("expected exponent"))?
                } else {
                    1
                };
                Ok(LoopMonomial::new(i, if adjoint { -power } else { power }))
            }
            _ => Err(self.error("expected 'p<i>' or 'S<i>'")),
        }
    }

    fn term(&mut self) -> Result<(LoopMonomial, ExactCoefficient)> {
        let coefficient = match self.peek() {
            Some('S') | Some('p') => None,
            Some('(') => {
                self.chars.next();
                Some(self.parenthesized()?)
            }
            Some(_) => Some(self.gaussian_atom()?),
            None => return Err(self.error("expected term")),
        };
        if coefficient.is_some() {
            self.eat('*');
        }
        let m = self.monomial()?;
        if m.loop_index == 0 || m.loop_index > self.n {
            return Err(Error::LoopOutOfRange {
                index: m.loop_index,
                n: self.n,
            });
        }
        Ok((m, coefficient.unwrap_or_else(Complex::one)))
    }

    fn element(&mut self) -> Result<LoopElement<ExactCoefficient>> {
        if self.text.trim() == "0" {
            return Ok(LoopElement::zero(self.n));
        }
        let mut terms = Vec::new();
        let mut negative = self.eat('-') || {
            self.eat('+');
            false
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negative { -c } else { c }));
            match self.peek() {
                None => break,
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(_) => return Err(self.error("expected '+' or '-'")),
            }
            self.chars.next();
        }
        LoopElement::from_terms(self.n, terms)
    }
}

impl LoopElement<ExactCoefficient> {
    /// Parse an element of the algebra of `n` loops.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        Parser {
            text,
            chars: text.char_indices().peekable(),
            n,
        }
        .element()
    }
}
