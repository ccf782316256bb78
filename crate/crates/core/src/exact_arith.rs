//! Exact rationals and real quadratic irrationals `a + b*sqrt(d)`.
//!
//! Every order decision on archimedean value groups bottoms out in
//! [`QuadraticReal::sign`], which is decided with integer arithmetic only.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn is_square_free(d: u64) -> bool {
    let (s, _) = square_free_split(d);
    s == 1
}

/// Writes `n = s^2 * r` with `r` square-free and returns `(s, r)`.
pub fn square_free_split(n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut r = 1u64;
    let mut m = n;
    let mut q = 2u64;
    while q.saturating_mul(q) <= m {
        let mut e = 0;
        while m.is_multiple_of(q) {
            m /= q;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= q;
        }
        if e % 2 == 1 {
            r *= q;
        }
        q += 1;
    }
    (s, r * m)
}

/// The real number `a + b*sqrt(d)` with `d >= 2` square-free.
///
/// Two values are comparable only when their radicands agree; `partial_cmp`
/// returns `None` otherwise and [`QuadraticReal::compare`] reports
/// `MIXED_RADICAND`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticReal {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadraticReal {
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self> {
        if d < 2 || !is_square_free(d) {
            return Err(Error::InvalidRadicand(d));
        }
        Ok(Self { a, b, d })
    }

    pub fn rational(a: Rational, d: u64) -> Result<Self> {
        Self::new(a, Rational::zero(), d)
    }

    pub fn zero(d: u64) -> Result<Self> {
        Self::rational(Rational::zero(), d)
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: u64) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Sign of `a + b*sqrt(d)` as -1, 0 or +1.
    pub fn sign(&self) -> i8 {
        let sa = signum(&self.a);
        let sb = signum(&self.b);
        match (sa, sb) {
            (0, 0) => 0,
            (s, 0) | (0, s) => s,
            (s, t) if s == t => s,
            _ => {
                // Opposite signs: the term with the larger square wins.
                // a^2 = b^2 d is impossible for non-square d.
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * Rational::from_integer(BigInt::from(self.d));
                if a2 > b2d {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        self.check_radicand(other)?;
        let diff = self.clone() - other.clone();
        Ok(diff.sign().cmp(&0))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_radicand(other)?;
        Ok(Self {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d: self.d,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other.clone())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            a: &self.a * k,
            b: &self.b * k,
            d: self.d,
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        self.scale(&Rational::from_integer(k.clone()))
    }

    /// Rational approximation with a few fractional bits, used by sanity
    /// checks that want an independent estimate of the real value.
    pub fn approx_f64(&self) -> f64 {
        let f = |r: &Rational| {
            let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
            n / d
        };
        f(&self.a) + f(&self.b) * (self.d as f64).sqrt()
    }

    fn check_radicand(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            Err(Error::MixedRadicand(self.d, other.d))
        } else {
            Ok(())
        }
    }

    /// Parses the textual form produced by `Display`, e.g. `1 + 2*sqrt(2)`,
    /// `-3/2`, `sqrt(8)`. A radicand that is not square-free is normalized
    /// (`sqrt(8)` becomes `2*sqrt(2)`). Purely rational input takes radicand
    /// `default_d`.
    pub fn parse(text: &str, default_d: u64) -> Result<Self> {
        let parsed = QuadraticExpr::parse(text)?;
        parsed.into_real(default_d)
    }
}

fn signum(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl PartialOrd for QuadraticReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other).ok()
    }
}

impl Add for QuadraticReal {
    type Output = QuadraticReal;

    /// Panics on mismatched radicands; use `checked_add` to get an error.
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("mismatched radicands")
    }
}

impl Sub for QuadraticReal {
    type Output = QuadraticReal;

    fn sub(self, rhs: Self) -> Self {
        self.checked_add(&-rhs).expect("mismatched radicands")
    }
}

impl Neg for QuadraticReal {
    type Output = QuadraticReal;

    fn neg(self) -> Self {
        Self {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl fmt::Display for QuadraticReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let radical = |b: &Rational| -> String {
            if b.is_one() {
                format!("sqrt({})", self.d)
            } else {
                format!("{}*sqrt({})", b, self.d)
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => {
                if self.b.is_negative() {
                    write!(f, "-{}", radical(&-self.b.clone()))
                } else {
                    write!(f, "{}", radical(&self.b))
                }
            }
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}", self.a, radical(&-self.b.clone()))
                } else {
                    write!(f, "{} + {}", self.a, radical(&self.b))
                }
            }
        }
    }
}

/// `a + b*sqrt(d)` before a radicand context has been fixed: `d` is `None`
/// when no radical occurred.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticExpr {
    pub a: Rational,
    pub b: Rational,
    pub d: Option<u64>,
}

impl QuadraticExpr {
    /// Grammar: `term (('+'|'-') term)*` where a term is `q`, `q*sqrt(n)`,
    /// `sqrt(n)` or `sqrt(n)*q`, and `q` is an integer or `n/m`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = QParser {
            s: text.as_bytes(),
            i: 0,
        };
        let mut acc = QuadraticExpr {
            a: Rational::zero(),
            b: Rational::zero(),
            d: None,
        };
        let mut sign = p.leading_sign();
        loop {
            let (coef, rad) = p.term()?;
            let coef = if sign < 0 { -coef } else { coef };
            match rad {
                None => acc.a += coef,
                Some(n) => {
                    let (s, r) = square_free_split(n);
                    let coef = coef * Rational::from_integer(BigInt::from(s));
                    if r == 1 {
                        acc.a += coef;
                    } else {
                        match acc.d {
                            Some(d) if d != r => return Err(Error::MixedRadicand(d, r)),
                            _ => acc.d = Some(r),
                        }
                        acc.b += coef;
                    }
                }
            }
            p.skip_ws();
            match p.peek() {
                Some(b'+') => {
                    p.i += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    p.i += 1;
                    sign = -1;
                }
                None => break,
                Some(c) => {
                    return Err(Error::parse(
                        p.i,
                        "'+', '-' or end",
                        (c as char).to_string(),
                    ))
                }
            }
        }
        Ok(acc)
    }

    pub fn into_real(self, default_d: u64) -> Result<QuadraticReal> {
        QuadraticReal::new(self.a, self.b, self.d.unwrap_or(default_d))
    }
}

struct QParser<'a> {
    s: &'a [u8],
    i: usize,
}

impl QParser<'_> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn found(&mut self) -> String {
        match self.peek() {
            Some(c) => (c as char).to_string(),
            None => "end of input".into(),
        }
    }

    fn leading_sign(&mut self) -> i8 {
        match self.peek() {
            Some(b'-') => {
                self.i += 1;
                -1
            }
            Some(b'+') => {
                self.i += 1;
                1
            }
            _ => 1,
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            let found = self.found();
            return Err(Error::parse(start, "integer", found));
        }
        let digits = std::str::from_utf8(&self.s[start..self.i]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse as integer"))
    }

    fn coefficient(&mut self) -> Result<Rational> {
        let n = self.integer()?;
        if self.peek() == Some(b'/') {
            self.i += 1;
            let pos = self.i;
            let d = self.integer()?;
            if d.is_zero() {
                return Err(Error::parse(pos, "nonzero denominator", "0"));
            }
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_integer(n))
        }
    }

    fn sqrt(&mut self) -> Result<u64> {
        self.skip_ws();
        if !self.s[self.i..].starts_with(b"sqrt") {
            let found = self.found();
            return Err(Error::parse(self.i, "sqrt", found));
        }
        self.i += 4;
        if self.peek() != Some(b'(') {
            let found = self.found();
            return Err(Error::parse(self.i, "'('", found));
        }
        self.i += 1;
        let pos = self.i;
        let n = self.integer()?;
        if self.peek() != Some(b')') {
            let found = self.found();
            return Err(Error::parse(self.i, "')'", found));
        }
        self.i += 1;
        let n: u64 = n
            .try_into()
            .map_err(|_| Error::parse(pos, "radicand below 2^64", "larger integer"))?;
        if n == 0 {
            return Err(Error::parse(pos, "positive radicand", "0"));
        }
        Ok(n)
    }

    fn term(&mut self) -> Result<(Rational, Option<u64>)> {
        match self.peek() {
            Some(b's') => {
                let n = self.sqrt()?;
                if self.peek() == Some(b'*') {
                    self.i += 1;
                    let c = self.coefficient()?;
                    Ok((c, Some(n)))
                } else {
                    Ok((Rational::one(), Some(n)))
                }
            }
            _ => {
                let c = self.coefficient()?;
                if self.peek() == Some(b'*') {
                    self.i += 1;
                    let n = self.sqrt()?;
                    Ok((c, Some(n)))
                } else {
                    Ok((c, None))
                }
            }
        }
    }
}
