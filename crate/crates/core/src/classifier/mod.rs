//! Frobenius classification of valuation rings.
//!
//! Everything here is decided numerically from the value group and residue
//! field: `e = [G:pG]`, `f = [kappa:kappa^p]`, `[K:K^p]`, and whether the
//! maximal ideal is principal. Each verdict records the rules that fired.

mod citation;
mod wire;

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::function_field::{FieldSpec, RationalFunction};
use crate::ordered_groups::dominates_all_multiples;
use crate::valuations::{Caveat, Valuation};

pub use citation::Citation;
pub use wire::ReportWire;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Yes => "YES",
            Verdict::No => "NO",
            Verdict::Unknown => "UNKNOWN",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "YES" => Some(Verdict::Yes),
            "NO" => Some(Verdict::No),
            "UNKNOWN" => Some(Verdict::Unknown),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A yes/no/unknown answer with the rules that produced it. The first
/// reason is the deciding rule; later ones are supporting observations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriVerdict {
    pub value: Verdict,
    pub reasons: Vec<Citation>,
}

impl TriVerdict {
    fn new(value: Verdict, reasons: Vec<Citation>) -> Self {
        debug_assert!(!reasons.is_empty());
        Self { value, reasons }
    }

    pub fn is_yes(&self) -> bool {
        self.value == Verdict::Yes
    }
}

/// The ideal `Q = ∩_e m^[p^e]` of elements along which F-purity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingPrime {
    pub is_zero: bool,
    pub equals_m: bool,
    pub v_mod_q_is_dvr: bool,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    /// `e(v/v^p) = [G:pG]`.
    pub e: u64,
    /// `f(v/v^p) = [kappa:kappa^p]`.
    pub f_deg: u64,
    /// `[K:K^p]`.
    pub k_kp: u64,
    pub s: usize,
    pub t: usize,
    pub abhyankar_geometric: bool,
    pub abhyankar_numeric: bool,
    pub divisorial: bool,
    pub noetherian: bool,
    pub m_principal: bool,
    pub f_pure: TriVerdict,
    pub f_finite: TriVerdict,
    pub frobenius_split: TriVerdict,
    pub f_pure_regular: TriVerdict,
    pub split_f_regular: TriVerdict,
    pub excellent: TriVerdict,
    pub dim_v_mod_mp: u64,
    pub q: SplittingPrime,
    pub caveats: Vec<Caveat>,
}

impl ClassificationReport {
    pub fn abhyankar(&self) -> bool {
        self.abhyankar_geometric && self.abhyankar_numeric
    }

    /// `(name, verdict)` for every tri-state field, in report order.
    pub fn verdicts(&self) -> [(&'static str, &TriVerdict); 6] {
        [
            ("f_pure", &self.f_pure),
            ("f_finite", &self.f_finite),
            ("frobenius_split", &self.frobenius_split),
            ("f_pure_regular", &self.f_pure_regular),
            ("split_f_regular", &self.split_f_regular),
            ("excellent", &self.excellent),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Abhyankar {
    /// `rat.rank + trans.deg = n`.
    pub geometric: bool,
    /// `e * f = [K:K^p]`.
    pub numeric: bool,
}

fn pow(p: u64, k: usize) -> u64 {
    p.checked_pow(k as u32)
        .expect("bounded by [K:K^p], which fits in u64")
}

/// `e(v/v^p) = [G:pG]`.
pub fn ramification_index(v: &Valuation) -> u64 {
    v.value_group()
        .index_p(v.spec().p())
        .to_u64()
        .expect("bounded by [K:K^p]")
}

/// `f(v/v^p) = [kappa:kappa^p] = p^(t+m)` for the supported kinds.
pub fn residue_degree(v: &Valuation) -> u64 {
    pow(v.spec().p(), v.residue_invariants().kappa_p_log)
}

/// `[K:K^p] = [k:k^p] * p^n = p^(m+n)`.
pub fn field_p_degree(spec: &FieldSpec) -> u64 {
    spec.field_p_degree()
}

/// Both routes to the Abhyankar property, computed independently.
pub fn abhyankar(v: &Valuation) -> Abhyankar {
    let inv = v.residue_invariants();
    Abhyankar {
        geometric: inv.s + inv.t == v.spec().n(),
        numeric: ramification_index(v) * residue_degree(v) == field_p_degree(v.spec()),
    }
}

pub fn is_divisorial(v: &Valuation) -> bool {
    abhyankar(v).geometric && v.value_group().rational_rank() == 1
}

/// `dim_{kappa^p} V/m^[p]`: `[kappa:kappa^p]` when `m` is not principal,
/// `p [kappa:kappa^p]` when it is.
pub fn dim_v_mod_mp(v: &Valuation) -> u64 {
    let f = residue_degree(v);
    if v.value_group().least_positive().is_some() {
        v.spec().p() * f
    } else {
        f
    }
}

pub fn classify(v: &Valuation) -> Result<ClassificationReport> {
    use Citation::*;

    let spec = v.spec();
    let p = spec.p();
    let inv = v.residue_invariants();
    let e = ramification_index(v);
    let f_deg = residue_degree(v);
    let k_kp = field_p_degree(spec);
    let ab = abhyankar(v);
    debug_assert_eq!(ab.geometric, ab.numeric);
    let rank = v.value_group().rational_rank();
    let divisorial = ab.geometric && rank == 1;
    let m_principal = v.value_group().least_positive().is_some();
    // Rank-one groups in both representations are cyclic, hence discrete.
    let noetherian = rank == 1;
    let dim = dim_v_mod_mp(v);

    let f_pure = TriVerdict::new(Verdict::Yes, vec![FPureAlways]);
    let f_pure_regular = TriVerdict::new(
        Verdict::from_bool(noetherian),
        vec![FPureRegularIffNoetherian],
    );

    let mut ff_reasons = vec![FFiniteIffDivisorial];
    if divisorial {
        ff_reasons.push(AbhyankarRankOneDivisorial);
    } else {
        if e * f_deg != k_kp {
            ff_reasons.push(FFiniteForcesNumericEquality);
        }
        if e > p {
            ff_reasons.push(IndexAboveP);
        }
    }
    if dim != k_kp {
        ff_reasons.push(DimensionCriterion);
    }
    if f_deg == k_kp {
        ff_reasons.push(ResidueDegreeFull);
    }
    let f_finite = TriVerdict::new(Verdict::from_bool(divisorial), ff_reasons);

    let frobenius_split = if divisorial {
        TriVerdict::new(Verdict::Yes, vec![FFiniteImpliesSplit])
    } else if noetherian {
        TriVerdict::new(Verdict::No, vec![DvrEquivalence])
    } else {
        TriVerdict::new(Verdict::Unknown, vec![OpenValueGroupQ])
    };

    let excellent = if noetherian {
        TriVerdict::new(
            Verdict::from_bool(divisorial),
            vec![DvrEquivalence, ExcellenceCriterion],
        )
    } else {
        TriVerdict::new(Verdict::No, vec![ExcellenceNeedsNoetherian])
    };

    let split_f_regular = if noetherian {
        TriVerdict::new(Verdict::from_bool(divisorial), vec![SplitFRegularDvr])
    } else {
        TriVerdict::new(
            Verdict::No,
            vec![SplitImpliesPureRegular, FPureRegularIffNoetherian],
        )
    };

    let q = if noetherian {
        SplittingPrime {
            is_zero: true,
            equals_m: false,
            v_mod_q_is_dvr: true,
            description: "Q = 0: V is a DVR and F-pure along every nonzero element".into(),
        }
    } else if !m_principal {
        SplittingPrime {
            is_zero: false,
            equals_m: true,
            v_mod_q_is_dvr: false,
            description: "Q = m: no least positive value, so m = m^[p]".into(),
        }
    } else {
        SplittingPrime {
            is_zero: false,
            equals_m: false,
            v_mod_q_is_dvr: true,
            description:
                "Q = {c : v(c) >= n*g for all n}, g the least positive value; V/Q is a DVR".into(),
        }
    };

    Ok(ClassificationReport {
        e,
        f_deg,
        k_kp,
        s: inv.s,
        t: inv.t,
        abhyankar_geometric: ab.geometric,
        abhyankar_numeric: ab.numeric,
        divisorial,
        noetherian,
        m_principal,
        f_pure,
        f_finite,
        frobenius_split,
        f_pure_regular,
        split_f_regular,
        excellent,
        dim_v_mod_mp: dim,
        q,
        caveats: v.caveats(),
    })
}

/// `c ∈ m^[p^e]`, i.e. some `γ > 0` in the value group has `p^e γ <= v(c)`.
pub fn in_mp_e(v: &Valuation, c: &RationalFunction, e: u32) -> Result<bool> {
    if e == 0 {
        return Err(Error::InvalidArgument(
            "Frobenius exponent must be >= 1".into(),
        ));
    }
    if c.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let val = v.value_of(c)?;
    match v.value_group().least_positive() {
        Some(g) => {
            let bound = g.scale(&num_traits::pow(BigInt::from(v.spec().p()), e as usize));
            Ok(val >= bound)
        }
        None => Ok(val.is_positive()),
    }
}

/// `c ∈ Q = ∩_e m^[p^e]`, decided in closed form.
pub fn in_q(v: &Valuation, c: &RationalFunction) -> Result<bool> {
    if c.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let val = v.value_of(c)?;
    match v.value_group().least_positive() {
        Some(g) => dominates_all_multiples(&val, &g),
        None => Ok(val.is_positive()),
    }
}

/// V is F-pure along `c` iff `c ∉ Q`.
pub fn is_f_pure_along(v: &Valuation, c: &RationalFunction) -> Result<bool> {
    in_q(v, c).map(|b| !b)
}

/// Least `e >= 1` with `c ∉ m^[p^e]`; `None` when `c ∈ Q`.
pub fn least_pure_exponent(v: &Valuation, c: &RationalFunction) -> Result<Option<u32>> {
    if in_q(v, c)? {
        return Ok(None);
    }
    let mut e = 1;
    while in_mp_e(v, c, e)? {
        e += 1;
    }
    Ok(Some(e))
}
