//! JSON form of a [`ClassificationReport`].
//!
//! Verdicts serialize as bare strings; their reasons move to a top-level
//! `citations` map keyed by field name. Serializing through
//! `serde_json::Value` keeps object keys sorted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::valuations::Caveat;

use super::{Citation, ClassificationReport, SplittingPrime, TriVerdict, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingPrimeWire {
    pub is_zero: bool,
    pub equals_m: bool,
    #[serde(rename = "V_mod_Q_is_DVR")]
    pub v_mod_q_is_dvr: bool,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportWire {
    pub e: u64,
    pub f_deg: u64,
    #[serde(rename = "K_Kp")]
    pub k_kp: u64,
    pub s: usize,
    pub t: usize,
    pub abhyankar: bool,
    pub abhyankar_geometric: bool,
    pub abhyankar_numeric: bool,
    pub divisorial: bool,
    pub noetherian: bool,
    pub m_principal: bool,
    pub f_pure: String,
    pub f_finite: String,
    pub frobenius_split: String,
    pub f_pure_regular: String,
    pub split_f_regular: String,
    pub excellent: String,
    #[serde(rename = "dim_V_mod_mp")]
    pub dim_v_mod_mp: u64,
    #[serde(rename = "Q")]
    pub q: SplittingPrimeWire,
    pub citations: BTreeMap<String, Vec<String>>,
    pub caveats: Vec<String>,
}

impl From<&ClassificationReport> for ReportWire {
    fn from(r: &ClassificationReport) -> Self {
        let s = |v: &TriVerdict| v.value.as_str().to_string();
        let citations = r
            .verdicts()
            .iter()
            .map(|(name, v)| {
                (
                    name.to_string(),
                    v.reasons.iter().map(|c| c.tag().to_string()).collect(),
                )
            })
            .collect();
        ReportWire {
            e: r.e,
            f_deg: r.f_deg,
            k_kp: r.k_kp,
            s: r.s,
            t: r.t,
            abhyankar: r.abhyankar(),
            abhyankar_geometric: r.abhyankar_geometric,
            abhyankar_numeric: r.abhyankar_numeric,
            divisorial: r.divisorial,
            noetherian: r.noetherian,
            m_principal: r.m_principal,
            f_pure: s(&r.f_pure),
            f_finite: s(&r.f_finite),
            frobenius_split: s(&r.frobenius_split),
            f_pure_regular: s(&r.f_pure_regular),
            split_f_regular: s(&r.split_f_regular),
            excellent: s(&r.excellent),
            dim_v_mod_mp: r.dim_v_mod_mp,
            q: SplittingPrimeWire {
                is_zero: r.q.is_zero,
                equals_m: r.q.equals_m,
                v_mod_q_is_dvr: r.q.v_mod_q_is_dvr,
                description: r.q.description.clone(),
            },
            citations,
            caveats: r.caveats.iter().map(|c| c.code().to_string()).collect(),
        }
    }
}

fn bad(what: impl Into<String>) -> Error {
    Error::InvalidArgument(format!("malformed report: {}", what.into()))
}

impl TryFrom<ReportWire> for ClassificationReport {
    type Error = Error;

    fn try_from(w: ReportWire) -> Result<Self> {
        let tri = |name: &str, value: &str| -> Result<TriVerdict> {
            let value = Verdict::parse(value).ok_or_else(|| bad(format!("verdict `{value}`")))?;
            let reasons = w
                .citations
                .get(name)
                .ok_or_else(|| bad(format!("no citations for {name}")))?
                .iter()
                .map(|t| Citation::from_tag(t).ok_or_else(|| bad(format!("citation `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            if reasons.is_empty() {
                return Err(bad(format!("empty citations for {name}")));
            }
            Ok(TriVerdict { value, reasons })
        };
        let caveats = w
            .caveats
            .iter()
            .map(|c| Caveat::from_code(c).ok_or_else(|| bad(format!("caveat `{c}`"))))
            .collect::<Result<Vec<_>>>()?;
        let report = ClassificationReport {
            e: w.e,
            f_deg: w.f_deg,
            k_kp: w.k_kp,
            s: w.s,
            t: w.t,
            abhyankar_geometric: w.abhyankar_geometric,
            abhyankar_numeric: w.abhyankar_numeric,
            divisorial: w.divisorial,
            noetherian: w.noetherian,
            m_principal: w.m_principal,
            f_pure: tri("f_pure", &w.f_pure)?,
            f_finite: tri("f_finite", &w.f_finite)?,
            frobenius_split: tri("frobenius_split", &w.frobenius_split)?,
            f_pure_regular: tri("f_pure_regular", &w.f_pure_regular)?,
            split_f_regular: tri("split_f_regular", &w.split_f_regular)?,
            excellent: tri("excellent", &w.excellent)?,
            dim_v_mod_mp: w.dim_v_mod_mp,
            q: SplittingPrime {
                is_zero: w.q.is_zero,
                equals_m: w.q.equals_m,
                v_mod_q_is_dvr: w.q.v_mod_q_is_dvr,
                description: w.q.description.clone(),
            },
            caveats,
        };
        if report.abhyankar() != w.abhyankar {
            return Err(bad("abhyankar disagrees with its two routes"));
        }
        Ok(report)
    }
}

impl ClassificationReport {
    /// JSON object with sorted keys.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ReportWire::from(self)).expect("report serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let wire: ReportWire =
            serde_json::from_value(value.clone()).map_err(|e| bad(e.to_string()))?;
        wire.try_into()
    }
}
