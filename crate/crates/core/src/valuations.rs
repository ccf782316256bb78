//! Valuations on `K/k`: monomial (archimedean or lex weights), divisorial,
//! and restrictions of the `t`-adic valuation along a power-series embedding.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_arith::{QuadraticReal, Rational};
use crate::function_field::{
    eval_poly_as_series, exact_divide, series_ord, FieldSpec, Polynomial, PowerSeries,
    RationalFunction, SeriesAssignment,
};
use crate::lattice::{hermite_normal_form, IntegerMatrix};
use crate::ordered_groups::{GroupElement, OrderedGroup, Representation};

/// Default number of series coefficients examined before giving up.
pub const DEFAULT_PRECISION_CAP: usize = 1 << 16;
/// First truncation order tried; doubled on each miss.
pub const INITIAL_PRECISION: usize = 16;

// Integer-valued groups (divisorial, series) are carried as rational
// elements of an archimedean group; the radicand is never used.
const INTEGER_RADICAND: u64 = 2;

#[derive(Clone, Debug)]
pub enum ValuationKind {
    /// `v(x^a) = sum a_i w_i` extended by the min rule; weights are positive
    /// reals in one `Q(sqrt(d))`.
    MonomialArch { weights: Vec<QuadraticReal> },
    /// Same with lex-positive weight vectors in `Z^r`.
    MonomialLex { weights: Vec<Vec<BigInt>> },
    /// Order of vanishing along `g = 0`. `g` is assumed irreducible.
    Divisorial { g: Polynomial },
    /// `v(f) = ord_t f(s_1(t), .., s_n(t))`.
    SeriesRestriction {
        assign: Vec<Arc<PowerSeries>>,
        cap: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Caveat {
    /// The power-series embedding is assumed injective (transcendental).
    TranscendenceAssumed,
    /// The divisorial center is assumed to be an irreducible polynomial.
    IrreducibilityAssumed,
}

impl Caveat {
    pub fn code(self) -> &'static str {
        match self {
            Caveat::TranscendenceAssumed => "TRANSCENDENCE_ASSUMED",
            Caveat::IrreducibilityAssumed => "IRREDUCIBILITY_ASSUMED",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        match code {
            "TRANSCENDENCE_ASSUMED" => Some(Caveat::TranscendenceAssumed),
            "IRREDUCIBILITY_ASSUMED" => Some(Caveat::IrreducibilityAssumed),
            _ => None,
        }
    }
}

impl fmt::Display for Caveat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Rational rank, transcendence degree and `log_p [κ:κ^p]` of a valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueInvariants {
    pub s: usize,
    pub t: usize,
    pub kappa_p_log: usize,
    pub description: String,
}

#[derive(Clone, Debug)]
pub struct Valuation {
    spec: FieldSpec,
    kind: ValuationKind,
    group: OrderedGroup,
}

fn int_value(e: u64) -> GroupElement {
    GroupElement::Arch(
        QuadraticReal::rational(Rational::from_integer(BigInt::from(e)), INTEGER_RADICAND)
            .expect("fixed radicand is valid"),
    )
}

fn integer_group() -> OrderedGroup {
    OrderedGroup::from_generators(
        Representation::Arch {
            d: INTEGER_RADICAND,
        },
        vec![int_value(1)],
    )
    .expect("Z is a nontrivial group")
}

impl Valuation {
    pub fn monomial_arch(spec: FieldSpec, weights: Vec<QuadraticReal>) -> Result<Self> {
        if weights.len() != spec.n() {
            return Err(Error::InvalidValuation(format!(
                "expected {} weights, got {}",
                spec.n(),
                weights.len()
            )));
        }
        let d = weights[0].d();
        if let Some(w) = weights.iter().find(|w| w.d() != d) {
            return Err(Error::MixedRadicand(d, w.d()));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !w.is_positive()) {
            return Err(Error::InvalidValuation(format!(
                "weight of {} must be positive, got {w}",
                spec.main_vars()[i]
            )));
        }
        let group = OrderedGroup::from_generators(
            Representation::Arch { d },
            weights.iter().cloned().map(GroupElement::Arch).collect(),
        )?;
        Ok(Self {
            spec,
            kind: ValuationKind::MonomialArch { weights },
            group,
        })
    }

    pub fn monomial_lex(spec: FieldSpec, weights: Vec<Vec<BigInt>>) -> Result<Self> {
        if weights.len() != spec.n() {
            return Err(Error::InvalidValuation(format!(
                "expected {} weights, got {}",
                spec.n(),
                weights.len()
            )));
        }
        let r = weights[0].len();
        if r == 0 || weights.iter().any(|w| w.len() != r) {
            return Err(Error::GroupMismatch);
        }
        let elems: Vec<GroupElement> = weights.iter().cloned().map(GroupElement::Lex).collect();
        if let Some((i, w)) = elems.iter().enumerate().find(|(_, w)| !w.is_positive()) {
            return Err(Error::InvalidValuation(format!(
                "weight of {} must be lex-positive, got {w}",
                spec.main_vars()[i]
            )));
        }
        let group = OrderedGroup::from_generators(Representation::Lex { r }, elems)?;
        Ok(Self {
            spec,
            kind: ValuationKind::MonomialLex { weights },
            group,
        })
    }

    /// The lex valuation with `x_i -> e_i`, in main-variable order.
    pub fn lex_identity(spec: FieldSpec) -> Result<Self> {
        let n = spec.n();
        let weights = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
            .collect();
        Self::monomial_lex(spec, weights)
    }

    pub fn divisorial(spec: FieldSpec, g: Polynomial) -> Result<Self> {
        if !g.fits(&spec) {
            return Err(Error::SpecMismatch);
        }
        if !g.involves_any(spec.m()..spec.nvars()) {
            return Err(Error::InvalidValuation(
                "divisorial center must involve a main variable".into(),
            ));
        }
        Ok(Self {
            spec,
            kind: ValuationKind::Divisorial { g },
            group: integer_group(),
        })
    }

    pub fn series(spec: FieldSpec, assign: Vec<Arc<PowerSeries>>, cap: usize) -> Result<Self> {
        if spec.m() > 0 {
            return Err(Error::GroundVarInSeriesContext);
        }
        if assign.len() != spec.n() {
            let missing = spec
                .main_vars()
                .get(assign.len())
                .cloned()
                .unwrap_or_default();
            return Err(Error::MissingAssignment(missing));
        }
        if assign.iter().any(|s| s.p() != spec.p()) {
            return Err(Error::SpecMismatch);
        }
        if !assign.iter().any(|s| series_ord(s, cap.max(1)) == Some(1)) {
            return Err(Error::NoOrd1Witness);
        }
        Ok(Self {
            spec,
            kind: ValuationKind::SeriesRestriction { assign, cap },
            group: integer_group(),
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn kind(&self) -> &ValuationKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            ValuationKind::MonomialArch { .. } => "monomial",
            ValuationKind::MonomialLex { .. } => "lex",
            ValuationKind::Divisorial { .. } => "divisorial",
            ValuationKind::SeriesRestriction { .. } => "series",
        }
    }

    pub fn caveats(&self) -> Vec<Caveat> {
        match self.kind {
            ValuationKind::Divisorial { .. } => vec![Caveat::IrreducibilityAssumed],
            ValuationKind::SeriesRestriction { .. } => vec![Caveat::TranscendenceAssumed],
            _ => Vec::new(),
        }
    }

    pub fn value_group(&self) -> &OrderedGroup {
        &self.group
    }

    pub fn value_of_poly(&self, f: &Polynomial) -> Result<GroupElement> {
        self.value_of_poly_resolved(f).map(|(v, _)| v)
    }

    /// Like [`value_of_poly`](Self::value_of_poly), also returning the series
    /// precision that resolved the order (series kind only).
    pub fn value_of_poly_resolved(&self, f: &Polynomial) -> Result<(GroupElement, Option<usize>)> {
        if !f.fits(&self.spec) {
            return Err(Error::SpecMismatch);
        }
        if f.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let m = self.spec.m();
        match &self.kind {
            ValuationKind::MonomialArch { weights } => {
                let d = weights[0].d();
                let value = |exps: &[u32]| {
                    exps[m..].iter().zip(weights).fold(
                        QuadraticReal::zero(d).expect("valid radicand"),
                        |acc, (&e, w)| acc + w.scale_int(&BigInt::from(e)),
                    )
                };
                let best = f
                    .terms()
                    .map(|(e, _)| value(e))
                    .min_by(|a, b| a.compare(b).unwrap_or(Ordering::Equal))
                    .expect("nonzero polynomial has a term");
                Ok((GroupElement::Arch(best), None))
            }
            ValuationKind::MonomialLex { weights } => {
                let r = weights[0].len();
                let value = |exps: &[u32]| {
                    let mut acc = vec![BigInt::zero(); r];
                    for (&e, w) in exps[m..].iter().zip(weights) {
                        for (a, wi) in acc.iter_mut().zip(w) {
                            *a += wi * e;
                        }
                    }
                    acc
                };
                let best = f
                    .terms()
                    .map(|(e, _)| value(e))
                    .min()
                    .expect("nonzero polynomial has a term");
                Ok((GroupElement::Lex(best), None))
            }
            ValuationKind::Divisorial { g } => {
                let mut e = 0u64;
                let mut rest = f.clone();
                while let Some(q) = exact_divide(&rest, g)? {
                    rest = q;
                    e += 1;
                }
                Ok((int_value(e), None))
            }
            ValuationKind::SeriesRestriction { cap, .. } => {
                let (ord, precision) = self.series_order(f, *cap)?;
                Ok((int_value(ord as u64), Some(precision)))
            }
        }
    }

    fn assignment(&self) -> Option<SeriesAssignment> {
        match &self.kind {
            ValuationKind::SeriesRestriction { assign, .. } => {
                Some(assign.iter().cloned().map(Some).collect())
            }
            _ => None,
        }
    }

    /// Order of `f(s(t))` with doubling precision, checking coefficients
    /// `0..=cap` at most.
    fn series_order(&self, f: &Polynomial, cap: usize) -> Result<(usize, usize)> {
        let assign = self.assignment().expect("series valuation");
        let limit = cap + 1;
        let mut precision = INITIAL_PRECISION.min(limit);
        loop {
            let s = eval_poly_as_series(f, &self.spec, &assign, precision)?;
            if let Some(o) = s.ord() {
                return Ok((o, precision));
            }
            if precision >= limit {
                return Err(Error::OrdUndetermined { cap });
            }
            precision = (precision * 2).min(limit);
        }
    }

    /// Series order of `f` computed at exactly `precision` coefficients.
    pub fn series_value_at(&self, f: &Polynomial, precision: usize) -> Result<GroupElement> {
        let assign = self
            .assignment()
            .ok_or(Error::UnsupportedKind("non-series"))?;
        let s = eval_poly_as_series(f, &self.spec, &assign, precision)?;
        s.ord()
            .map(|o| int_value(o as u64))
            .ok_or(Error::OrdUndetermined {
                cap: precision.saturating_sub(1),
            })
    }

    /// `v(num) - v(den)`.
    pub fn value_of(&self, r: &RationalFunction) -> Result<GroupElement> {
        let a = self.value_of_poly(r.num())?;
        let b = self.value_of_poly(r.den())?;
        a.checked_sub(&b)
    }

    pub fn residue_invariants(&self) -> ResidueInvariants {
        let n = self.spec.n();
        let m = self.spec.m();
        match &self.kind {
            ValuationKind::MonomialArch { .. } | ValuationKind::MonomialLex { .. } => {
                let kernel = self.weight_kernel();
                let s = self.group.rational_rank();
                let t = kernel.len();
                debug_assert_eq!(s + t, n);
                let gens: Vec<String> = kernel.iter().map(|k| self.laurent_monomial(k)).collect();
                let description = if gens.is_empty() {
                    "kappa = k".to_string()
                } else {
                    format!("kappa = k({}), purely transcendental", gens.join(", "))
                };
                ResidueInvariants {
                    s,
                    t,
                    kappa_p_log: t + m,
                    description,
                }
            }
            ValuationKind::Divisorial { g } => ResidueInvariants {
                s: 1,
                t: n - 1,
                kappa_p_log: n - 1 + m,
                description: format!(
                    "kappa = function field of ({}) = 0, trans.deg {} over k (irreducibility assumed)",
                    g.display(&self.spec),
                    n - 1
                ),
            },
            ValuationKind::SeriesRestriction { .. } => ResidueInvariants {
                s: 1,
                t: 0,
                kappa_p_log: 0,
                description: "kappa = F_p (constant terms of the embedding)".to_string(),
            },
        }
    }

    /// Basis of `{a in Z^n : sum a_i w_i = 0}`, the exponents of weight-zero
    /// Laurent monomials. Monomial kinds only.
    pub fn weight_kernel(&self) -> Vec<Vec<BigInt>> {
        let rows: Vec<Vec<BigInt>> = match &self.kind {
            ValuationKind::MonomialArch { weights } => {
                let lcm = weights.iter().fold(BigInt::from(1), |acc, w| {
                    use num_integer::Integer;
                    acc.lcm(&w.a().denom().lcm(w.b().denom()))
                });
                let scale = Rational::from_integer(lcm);
                weights
                    .iter()
                    .map(|w| vec![(w.a() * &scale).to_integer(), (w.b() * &scale).to_integer()])
                    .collect()
            }
            ValuationKind::MonomialLex { weights } => weights.clone(),
            _ => return Vec::new(),
        };
        let cols = rows[0].len();
        hermite_normal_form(&IntegerMatrix::new(rows, cols)).left_kernel()
    }

    fn laurent_monomial(&self, exps: &[BigInt]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .zip(self.spec.main_vars())
            .filter(|(e, _)| !e.is_zero())
            .map(|(e, name)| {
                if e == &BigInt::from(1) {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        parts.join("*")
    }

    /// The restriction of `v` to `K^p`, carried back to `K` by the p-th
    /// power relabeling: every weight is multiplied by `p`.
    pub fn frobenius_restriction(&self) -> Result<Valuation> {
        let p = BigInt::from(self.spec.p());
        match &self.kind {
            ValuationKind::MonomialArch { weights } => Valuation::monomial_arch(
                self.spec.clone(),
                weights.iter().map(|w| w.scale_int(&p)).collect(),
            ),
            ValuationKind::MonomialLex { weights } => Valuation::monomial_lex(
                self.spec.clone(),
                weights
                    .iter()
                    .map(|w| w.iter().map(|c| c * &p).collect())
                    .collect(),
            ),
            ValuationKind::Divisorial { .. } => Err(Error::UnsupportedKind("divisorial")),
            ValuationKind::SeriesRestriction { .. } => Err(Error::UnsupportedKind("series")),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.spec.main_vars();
        match &self.kind {
            ValuationKind::MonomialArch { weights } => {
                let body: Vec<String> = names
                    .iter()
                    .zip(weights)
                    .map(|(n, w)| format!("{n}: {w}"))
                    .collect();
                write!(f, "monomial {{ {} }}", body.join(", "))
            }
            ValuationKind::MonomialLex { weights } => {
                let body: Vec<String> = names
                    .iter()
                    .zip(weights)
                    .map(|(n, w)| format!("{n}: {}", GroupElement::Lex(w.clone())))
                    .collect();
                write!(f, "lex({}) {{ {} }}", weights[0].len(), body.join(", "))
            }
            ValuationKind::Divisorial { g } => write!(f, "divisorial ({})", g.display(&self.spec)),
            ValuationKind::SeriesRestriction { assign, .. } => {
                let body: Vec<String> = names
                    .iter()
                    .zip(assign)
                    .map(|(n, s)| format!("{n} -> {}", s.name()))
                    .collect();
                write!(f, "series {{ {} }}", body.join(", "))
            }
        }
    }
}
