//! Finitely generated totally ordered abelian groups.
//!
//! Two representations are supported: subgroups of the reals with
//! coordinates over `{1, sqrt(d)}` ([`Representation::Arch`]) and subgroups
//! of `Z^r` under the lexicographic order ([`Representation::Lex`]). Both are
//! reduced to integer lattices and put in Hermite normal form; the HNF rows
//! are the canonical basis.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{QuadraticReal, Rational};
use crate::lattice::{hermite_normal_form, Hermite, IntegerMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Representation {
    /// Subgroup of the reals inside `Q + Q*sqrt(d)`.
    Arch { d: u64 },
    /// Subgroup of `Z^r`, ordered lexicographically.
    Lex { r: usize },
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Representation::Arch { d } => write!(f, "arch(sqrt({d}))"),
            Representation::Lex { r } => write!(f, "lex({r})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Arch(QuadraticReal),
    Lex(Vec<BigInt>),
}

impl GroupElement {
    pub fn lex(coords: &[i64]) -> Self {
        GroupElement::Lex(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn representation(&self) -> Representation {
        match self {
            GroupElement::Arch(q) => Representation::Arch { d: q.d() },
            GroupElement::Lex(v) => Representation::Lex { r: v.len() },
        }
    }

    pub fn zero_of(rep: Representation) -> Self {
        match rep {
            Representation::Arch { d } => GroupElement::Arch(
                QuadraticReal::zero(d).expect("representation radicand is valid"),
            ),
            Representation::Lex { r } => GroupElement::Lex(vec![BigInt::zero(); r]),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            GroupElement::Arch(q) => q.is_zero(),
            GroupElement::Lex(v) => v.iter().all(Zero::is_zero),
        }
    }

    pub fn sign(&self) -> i8 {
        match self {
            GroupElement::Arch(q) => q.sign(),
            GroupElement::Lex(v) => match v.iter().find(|c| !c.is_zero()) {
                None => 0,
                Some(c) if c.is_positive() => 1,
                Some(_) => -1,
            },
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        match (self, other) {
            (GroupElement::Arch(a), GroupElement::Arch(b)) => {
                a.compare(b).map_err(|_| Error::GroupMismatch)
            }
            (GroupElement::Lex(a), GroupElement::Lex(b)) => {
                if a.len() != b.len() {
                    return Err(Error::GroupMismatch);
                }
                Ok(a.cmp(b))
            }
            _ => Err(Error::MixedRepresentation),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (GroupElement::Arch(a), GroupElement::Arch(b)) => a
                .checked_add(b)
                .map(GroupElement::Arch)
                .map_err(|_| Error::GroupMismatch),
            (GroupElement::Lex(a), GroupElement::Lex(b)) => {
                if a.len() != b.len() {
                    return Err(Error::GroupMismatch);
                }
                Ok(GroupElement::Lex(
                    a.iter().zip(b).map(|(x, y)| x + y).collect(),
                ))
            }
            _ => Err(Error::MixedRepresentation),
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        match self {
            GroupElement::Arch(q) => GroupElement::Arch(q.scale_int(k)),
            GroupElement::Lex(v) => GroupElement::Lex(v.iter().map(|x| x * k).collect()),
        }
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other).ok()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Arch(q) => write!(f, "{q}"),
            GroupElement::Lex(v) => {
                write!(f, "(")?;
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// True iff `a >= n*g` for every positive integer `n`.
///
/// Archimedean groups never have such pairs. In a lex group this happens
/// exactly when `a` is positive and its leading coordinate sits strictly to
/// the left of `g`'s.
pub fn dominates_all_multiples(a: &GroupElement, g: &GroupElement) -> Result<bool> {
    a.compare(g)?;
    if !g.is_positive() {
        return Err(Error::InvalidArgument("g must be positive".into()));
    }
    match (a, g) {
        (GroupElement::Arch(_), _) => Ok(false),
        (GroupElement::Lex(av), GroupElement::Lex(gv)) => {
            let lead = |v: &[BigInt]| v.iter().position(|c| !c.is_zero());
            match (lead(av), lead(gv)) {
                (Some(i), Some(j)) => Ok(i < j && av[i].is_positive()),
                _ => Ok(false),
            }
        }
        _ => Err(Error::MixedRepresentation),
    }
}

/// A nontrivial finitely generated ordered group together with its HNF basis.
#[derive(Clone, Debug)]
pub struct OrderedGroup {
    rep: Representation,
    generators: Vec<GroupElement>,
    basis: Vec<GroupElement>,
    hermite: Hermite,
    // Arch coordinates are integers after multiplying by this common
    // denominator. Always 1 for lex groups.
    denom: BigInt,
}

impl OrderedGroup {
    pub fn from_generators(rep: Representation, generators: Vec<GroupElement>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::TrivialGroup);
        }
        for g in &generators {
            if g.representation() != rep {
                return match (g.representation(), rep) {
                    (Representation::Arch { .. }, Representation::Arch { .. })
                    | (Representation::Lex { .. }, Representation::Lex { .. }) => {
                        Err(Error::GroupMismatch)
                    }
                    _ => Err(Error::MixedRepresentation),
                };
            }
        }
        if generators.iter().all(GroupElement::is_zero) {
            return Err(Error::TrivialGroup);
        }
        let denom = match rep {
            Representation::Arch { .. } => generators
                .iter()
                .map(|g| match g {
                    GroupElement::Arch(q) => q.a().denom().lcm(q.b().denom()),
                    GroupElement::Lex(_) => unreachable!(),
                })
                .fold(BigInt::one(), |acc, d| acc.lcm(&d)),
            Representation::Lex { .. } => BigInt::one(),
        };
        let cols = match rep {
            Representation::Arch { .. } => 2,
            Representation::Lex { r } => r,
        };
        let rows = generators
            .iter()
            .map(|g| integer_coords(g, &denom).expect("denominator clears all generators"))
            .collect();
        let hermite = hermite_normal_form(&IntegerMatrix::new(rows, cols));
        let basis = hermite
            .basis()
            .iter()
            .map(|row| element_from_coords(rep, row, &denom))
            .collect();
        Ok(Self {
            rep,
            generators,
            basis,
            hermite,
            denom,
        })
    }

    pub fn representation(&self) -> Representation {
        self.rep
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Canonical (HNF) basis.
    pub fn basis(&self) -> &[GroupElement] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `dim_Q (Q (x) G)`. These groups are free, so this is the lattice rank.
    pub fn rational_rank(&self) -> usize {
        self.rank()
    }

    /// `[G : pG] = p^rank`.
    pub fn index_p(&self, p: u64) -> BigUint {
        num_traits::pow(BigUint::from(p), self.rank())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::zero_of(self.rep)
    }

    /// Integer coordinates of `x` in the HNF basis, if `x` lies in the group.
    pub fn coordinates(&self, x: &GroupElement) -> Option<Vec<BigInt>> {
        if x.representation() != self.rep {
            return None;
        }
        let v = integer_coords(x, &self.denom)?;
        self.hermite.coordinates(&v)
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.coordinates(x).is_some()
    }

    /// `sum_i coeffs[i] * basis[i]`.
    pub fn combination(&self, coeffs: &[BigInt]) -> GroupElement {
        assert_eq!(coeffs.len(), self.rank());
        coeffs
            .iter()
            .zip(&self.basis)
            .fold(self.zero(), |acc, (c, b)| {
                acc.checked_add(&b.scale(c))
                    .expect("basis elements share the group")
            })
    }

    /// Least element `> 0`, if the group has one.
    ///
    /// Rank-one archimedean groups are cyclic; higher-rank ones are dense.
    /// For a lex group the last HNF row spans the deepest nonzero slice
    /// `G ∩ ({0}^i x Z^(r-i))`, on which the pivot coordinate is injective,
    /// so that row is the minimum.
    pub fn least_positive(&self) -> Option<GroupElement> {
        match self.rep {
            Representation::Arch { .. } => {
                if self.rank() == 1 {
                    let b = &self.basis[0];
                    Some(if b.is_positive() { b.clone() } else { b.neg() })
                } else {
                    None
                }
            }
            Representation::Lex { .. } => self.basis.last().cloned(),
        }
    }

    /// `pG`, with the inherited order.
    pub fn scale(&self, p: u64) -> OrderedGroup {
        let k = BigInt::from(p);
        let gens = self.generators.iter().map(|g| g.scale(&k)).collect();
        OrderedGroup::from_generators(self.rep, gens).expect("scaling keeps the group nontrivial")
    }
}

fn integer_coords(x: &GroupElement, denom: &BigInt) -> Option<Vec<BigInt>> {
    match x {
        GroupElement::Arch(q) => {
            let d = Rational::from_integer(denom.clone());
            let a = q.a() * &d;
            let b = q.b() * &d;
            if a.is_integer() && b.is_integer() {
                Some(vec![a.to_integer(), b.to_integer()])
            } else {
                None
            }
        }
        GroupElement::Lex(v) => Some(v.clone()),
    }
}

fn element_from_coords(rep: Representation, row: &[BigInt], denom: &BigInt) -> GroupElement {
    match rep {
        Representation::Arch { d } => {
            let a = Rational::new(row[0].clone(), denom.clone());
            let b = Rational::new(row[1].clone(), denom.clone());
            GroupElement::Arch(QuadraticReal::new(a, b, d).expect("radicand already validated"))
        }
        Representation::Lex { .. } => GroupElement::Lex(row.to_vec()),
    }
}
