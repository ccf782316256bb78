use std::fmt::Write;

use serde_json::{json, Value};

use crate::classifier::ClassificationReport;
use crate::valuations::Valuation;

const LABEL_WIDTH: usize = 20;

fn row(out: &mut String, label: &str, value: impl std::fmt::Display) {
    writeln!(out, "  {label:<LABEL_WIDTH$}{value}").expect("writing to a String");
}

pub(super) fn valuation_json(v: &Valuation) -> Value {
    let g = v.value_group();
    let inv = v.residue_invariants();
    json!({
        "kind": v.kind_name(),
        "definition": v.to_string(),
        "field": v.spec().to_string(),
        "value_group": {
            "representation": g.representation().to_string(),
            "rank": g.rank(),
            "basis": g.basis().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "least_positive": g.least_positive().map(|x| x.to_string()),
        },
        "residue_field": {
            "s": inv.s,
            "t": inv.t,
            "kappa_p_log": inv.kappa_p_log,
            "description": inv.description,
        },
    })
}

pub(super) fn valuation_text(name: &str, v: &Valuation) -> String {
    let g = v.value_group();
    let inv = v.residue_invariants();
    let mut out = format!("{name} = {}\n", v);
    row(&mut out, "field", v.spec());
    row(
        &mut out,
        "value group",
        format!("{} of rank {}", g.representation(), g.rank()),
    );
    let basis: Vec<String> = g.basis().iter().map(ToString::to_string).collect();
    row(&mut out, "basis", basis.join(", "));
    row(
        &mut out,
        "least positive",
        g.least_positive()
            .map_or("none".to_string(), |x| x.to_string()),
    );
    row(&mut out, "residue field", inv.description);
    out
}

pub(super) fn classification_text(name: &str, v: &Valuation, r: &ClassificationReport) -> String {
    let mut out = format!(
        "classification of {name} ({}, p = {})\n",
        v.kind_name(),
        v.spec().p()
    );
    row(&mut out, "e = [G:pG]", r.e);
    row(&mut out, "f = [kappa:kappa^p]", r.f_deg);
    row(&mut out, "[K:K^p]", r.k_kp);
    row(&mut out, "s, t", format!("{}, {}", r.s, r.t));
    row(
        &mut out,
        "abhyankar",
        format!(
            "{} (geometric {}, numeric {})",
            r.abhyankar(),
            r.abhyankar_geometric,
            r.abhyankar_numeric
        ),
    );
    row(&mut out, "divisorial", r.divisorial);
    row(&mut out, "noetherian", r.noetherian);
    row(&mut out, "m principal", r.m_principal);
    row(&mut out, "dim V/m^[p]", r.dim_v_mod_mp);
    for (field, verdict) in r.verdicts() {
        row(&mut out, field, verdict.value);
    }
    row(&mut out, "Q", &r.q.description);
    let caveats: Vec<&str> = r.caveats.iter().map(|c| c.code()).collect();
    row(
        &mut out,
        "caveats",
        if caveats.is_empty() {
            "none".to_string()
        } else {
            caveats.join(", ")
        },
    );
    out.push_str("  justification:\n");
    for (field, verdict) in r.verdicts() {
        for c in &verdict.reasons {
            writeln!(
                out,
                "    {field}: {} \u{2014} {} \u{2014} {}",
                verdict.value,
                c.rule(),
                c.tag()
            )
            .expect("writing to a String");
        }
    }
    out
}
