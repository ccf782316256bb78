use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

use super::FieldSpec;

/// Exponent vector, ground variables first.
pub type Monomial = Vec<u32>;

/// Sparse polynomial in `F_p[u, x]`. Zero coefficients are never stored, so
/// structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    p: u64,
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

impl Polynomial {
    pub fn zero(p: u64, nvars: usize) -> Self {
        Self {
            p,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_in(spec: &FieldSpec) -> Self {
        Self::zero(spec.p(), spec.nvars())
    }

    pub fn constant(p: u64, nvars: usize, c: u64) -> Self {
        Self::monomial(p, nvars, vec![0; nvars], c)
    }

    pub fn one_in(spec: &FieldSpec) -> Self {
        Self::constant(spec.p(), spec.nvars(), 1)
    }

    pub fn monomial(p: u64, nvars: usize, exps: Monomial, c: u64) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut out = Self::zero(p, nvars);
        let c = c % p;
        if c != 0 {
            out.terms.insert(exps, c);
        }
        out
    }

    /// The variable with index `i` (ground variables first).
    pub fn var(p: u64, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(p, nvars, e, 1)
    }

    pub fn var_in(spec: &FieldSpec, name: &str) -> Option<Self> {
        spec.var_index(name)
            .map(|i| Self::var(spec.p(), spec.nvars(), i))
    }

    pub fn from_terms(
        p: u64,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, u64)>,
    ) -> Self {
        let mut out = Self::zero(p, nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars);
            out.add_term(m, c % p);
        }
        out
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &[u32]) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Leading term in lex order (variable 0 most significant).
    pub fn leading_term(&self) -> Option<(&Monomial, u64)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[var]).max()
    }

    /// True if some variable in `range` occurs with positive exponent.
    pub fn involves_any(&self, range: std::ops::Range<usize>) -> bool {
        self.terms
            .keys()
            .any(|m| m[range.clone()].iter().any(|&e| e > 0))
    }

    pub fn fits(&self, spec: &FieldSpec) -> bool {
        self.p == spec.p() && self.nvars == spec.nvars()
    }

    pub fn ensure_compatible(&self, other: &Self) -> Result<()> {
        if self.p == other.p && self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    fn add_term(&mut self, m: Monomial, c: u64) {
        if c == 0 {
            return;
        }
        let p = self.p;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scalar_mul(&self, c: u64) -> Self {
        let c = c % self.p;
        let mut out = Self::zero(self.p, self.nvars);
        if c != 0 {
            for (m, &a) in &self.terms {
                out.terms.insert(m.clone(), mul_mod(a, c, self.p));
            }
        }
        out
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        let mut out = Self::zero(self.p, self.nvars);
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, mul_mod(c1, c2, self.p));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.p, self.nvars, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Terms sorted for printing: graded lex, highest first.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, u64)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    pub fn display<'a>(&'a self, spec: &'a FieldSpec) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, spec }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    /// Panics if the operands live over different fields.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs)
            .expect("polynomials over different fields")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs)
            .expect("polynomials over different fields")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs)
            .expect("polynomials over different fields")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scalar_mul(self.p - 1)
    }
}

/// Exact quotient `f / g` if `g` divides `f`, else `None`.
///
/// Repeatedly cancels the lex-leading term of the remainder against the
/// leading term of `g`. If `g | f` every remainder is a multiple of `g`, so
/// its leading monomial is divisible by `lm(g)`; the first failure therefore
/// proves non-divisibility.
pub fn exact_divide(f: &Polynomial, g: &Polynomial) -> Result<Option<Polynomial>> {
    f.ensure_compatible(g)?;
    let Some((gm, gc)) = g.leading_term() else {
        return Err(Error::DivisionByZero);
    };
    let gm = gm.clone();
    let ginv = inv_mod(gc, g.p);
    let mut rem = f.clone();
    let mut quot = Polynomial::zero(f.p, f.nvars);
    while let Some((rm, rc)) = rem.leading_term() {
        if rm.iter().zip(&gm).any(|(a, b)| a < b) {
            return Ok(None);
        }
        let qm: Monomial = rm.iter().zip(&gm).map(|(a, b)| a - b).collect();
        let qc = mul_mod(rc, ginv, f.p);
        let step = Polynomial::monomial(f.p, f.nvars, qm, qc);
        rem = &rem - &(&step * g);
        quot = &quot + &step;
    }
    Ok(Some(quot))
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    spec: &'a FieldSpec,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.sorted_terms().into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = self.spec.var_name(i);
                    if e == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            match (factors.is_empty(), c) {
                (true, _) => write!(f, "{c}")?,
                (false, 1) => write!(f, "{}", factors.join("*"))?,
                (false, _) => write!(f, "{c}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}
