use std::fmt;

use crate::error::{Error, Result};

use super::{FieldSpec, Polynomial};

/// `num / den`, kept unreduced. Equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        num.ensure_compatible(&den)?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(num: Polynomial) -> Self {
        let den = Polynomial::constant(num.p(), num.nvars(), 1);
        Self { num, den }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let num = self
            .num
            .checked_mul(&other.den)?
            .checked_add(&self.den.checked_mul(&other.num)?)?;
        Ok(Self {
            num,
            den: self.den.checked_mul(&other.den)?,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            num: self.num.checked_mul(&other.num)?,
            den: self.den.checked_mul(&other.den)?,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self {
            num: self.num.checked_mul(&other.den)?,
            den: self.den.checked_mul(&other.num)?,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        Self {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn display<'a>(&'a self, spec: &'a FieldSpec) -> RatFunDisplay<'a> {
        RatFunDisplay { r: self, spec }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num.ensure_compatible(&other.num).is_ok()
            && &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

pub struct RatFunDisplay<'a> {
    r: &'a RationalFunction,
    spec: &'a FieldSpec,
}

impl fmt::Display for RatFunDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = &self.r.den;
        if den.is_constant() && den.coefficient(&vec![0; den.nvars()]) == 1 {
            write!(f, "{}", self.r.num.display(self.spec))
        } else {
            write!(
                f,
                "({})/({})",
                self.r.num.display(self.spec),
                den.display(self.spec)
            )
        }
    }
}
