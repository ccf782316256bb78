use std::fmt;

/// A rule the classifier fired, identified by a stable tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Citation {
    FPureAlways,
    FPureRegularIffNoetherian,
    FFiniteIffDivisorial,
    FFiniteForcesNumericEquality,
    IndexAboveP,
    DimensionCriterion,
    ResidueDegreeFull,
    AbhyankarRankOneDivisorial,
    NumericAbhyankar,
    FFiniteImpliesSplit,
    DvrEquivalence,
    ExcellenceCriterion,
    ExcellenceNeedsNoetherian,
    SplitFRegularDvr,
    SplitImpliesPureRegular,
    OpenValueGroupQ,
}

impl Citation {
    pub const ALL: [Citation; 16] = [
        Citation::FPureAlways,
        Citation::FPureRegularIffNoetherian,
        Citation::FFiniteIffDivisorial,
        Citation::FFiniteForcesNumericEquality,
        Citation::IndexAboveP,
        Citation::DimensionCriterion,
        Citation::ResidueDegreeFull,
        Citation::AbhyankarRankOneDivisorial,
        Citation::NumericAbhyankar,
        Citation::FFiniteImpliesSplit,
        Citation::DvrEquivalence,
        Citation::ExcellenceCriterion,
        Citation::ExcellenceNeedsNoetherian,
        Citation::SplitFRegularDvr,
        Citation::SplitImpliesPureRegular,
        Citation::OpenValueGroupQ,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Citation::FPureAlways => "Cor-3.3",
            Citation::FPureRegularIffNoetherian => "Thm-6.5.1",
            Citation::FFiniteIffDivisorial => "Erratum-Thm-1",
            Citation::FFiniteForcesNumericEquality => "Thm-4.3.1-corrected",
            Citation::IndexAboveP => "Erratum-Remark-index",
            Citation::DimensionCriterion => "Erratum-dim-criterion",
            Citation::ResidueDegreeFull => "Cor-4.3.2-revised",
            Citation::AbhyankarRankOneDivisorial => "Ex-2.5",
            Citation::NumericAbhyankar => "Erratum-Thm-numeric-Abhyankar",
            Citation::FFiniteImpliesSplit => "Cor-4.1.2",
            Citation::DvrEquivalence => "Cor-DVR-equivalence",
            Citation::ExcellenceCriterion => "Prop-2.7.1",
            Citation::ExcellenceNeedsNoetherian => "Def-excellent",
            Citation::SplitFRegularDvr => "Cor-6.6.3",
            Citation::SplitImpliesPureRegular => "Split-implies-pure",
            Citation::OpenValueGroupQ => "Open-Question-value-group-Q",
        }
    }

    /// One-line statement of the rule.
    pub fn rule(self) -> &'static str {
        match self {
            Citation::FPureAlways => "every valuation ring of characteristic p is F-pure",
            Citation::FPureRegularIffNoetherian => "a valuation ring is F-pure regular iff it is Noetherian",
            Citation::FFiniteIffDivisorial => {
                "a nontrivial valuation ring of a function field over an F-finite field is F-finite iff divisorial"
            }
            Citation::FFiniteForcesNumericEquality => "F-finite implies [G:pG][kappa:kappa^p] = [K:K^p]",
            Citation::IndexAboveP => "a valuation ring with [G:pG] > p is not F-finite",
            Citation::DimensionCriterion => "F-finite iff dim V/m^[p] over kappa^p equals [K:K^p]",
            Citation::ResidueDegreeFull => "[K:K^p] = [kappa:kappa^p] implies F-finite",
            Citation::AbhyankarRankOneDivisorial => "Abhyankar valuations of rational rank one are divisorial",
            Citation::NumericAbhyankar => "v is Abhyankar iff [G:pG][kappa:kappa^p] = [K:K^p]",
            Citation::FFiniteImpliesSplit => "an F-finite valuation ring is Frobenius split",
            Citation::DvrEquivalence => {
                "for a DVR with F-finite fraction field: Frobenius split iff F-finite iff excellent"
            }
            Citation::ExcellenceCriterion => {
                "a Noetherian domain is F-finite iff excellent with F-finite fraction field"
            }
            Citation::ExcellenceNeedsNoetherian => "excellent rings are Noetherian",
            Citation::SplitFRegularDvr => "for a DVR with F-finite fraction field: split F-regular iff F-finite",
            Citation::SplitImpliesPureRegular => "split F-regular implies F-pure regular, hence Noetherian",
            Citation::OpenValueGroupQ => {
                "open: is a Frobenius split non-Noetherian valuation ring always F-finite? \
                 (e.g. an F-split valuation on F_p(x, y) with value group Q)"
            }
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.tag() == tag)
    }
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}
