//! Script execution behind the `frobval` binary.
//!
//! A script declares one field, binds named valuations, and runs commands
//! against them. Output is either a plain-text transcript or a single JSON
//! document with sorted keys.

pub mod dsl;
pub mod fixtures;
mod render;
mod selftest;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::classifier::{classify, in_q, least_pure_exponent};
use crate::error::Error;
use crate::exact_arith::QuadraticExpr;
use crate::function_field::{parse_poly, parse_ratfun, FieldSpec, PowerSeries};
use crate::valuations::{Valuation, DEFAULT_PRECISION_CAP};

use dsl::{Expr, Ident, Located, SeriesRhs, Statement, ValuationDecl};

pub use selftest::selftest;

/// Version of the JSON document layout.
pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_PARSE: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub format: Format,
    pub precision_cap: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            format: Format::Text,
            precision_cap: DEFAULT_PRECISION_CAP,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A failed statement, located in the script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptError {
    pub code: String,
    pub message: String,
    pub line: usize,
    pub column: usize,
    pub exit_code: i32,
}

impl ScriptError {
    fn structural(code: &str, message: impl Into<String>, line: usize, column: usize) -> Self {
        Self {
            code: code.into(),
            message: message.into(),
            line,
            column,
            exit_code: EXIT_PARSE,
        }
    }

    /// Wraps a library error. Positions inside an expression are shifted by
    /// the expression's column.
    fn from_lib(err: Error, line: usize, base_column: usize) -> Self {
        let column = base_column + err.position().unwrap_or(0);
        let exit_code = match err {
            Error::Parse { .. } | Error::UnknownVariable { .. } => EXIT_PARSE,
            _ => EXIT_DOMAIN,
        };
        Self {
            code: err.code().into(),
            message: err.to_string(),
            line,
            column,
            exit_code,
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "code": self.code,
            "message": self.message,
            "line": self.line,
            "column": self.column,
        })
    }
}

/// Output of one command in both renderings.
struct Emitted {
    json: Value,
    text: String,
}

/// The state of a running script: its field and named valuations.
pub struct Session {
    options: Options,
    spec: Option<FieldSpec>,
    valuations: BTreeMap<String, Valuation>,
}

impl Session {
    pub fn new(options: Options) -> Self {
        Self {
            options,
            spec: None,
            valuations: BTreeMap::new(),
        }
    }

    pub fn spec(&self) -> Option<&FieldSpec> {
        self.spec.as_ref()
    }

    pub fn valuation(&self, name: &str) -> Option<&Valuation> {
        self.valuations.get(name)
    }

    fn require_spec(&self, line: usize) -> Result<&FieldSpec, ScriptError> {
        self.spec.as_ref().ok_or_else(|| {
            ScriptError::structural("NO_FIELD", "a `field` declaration must come first", line, 1)
        })
    }

    fn lookup(&self, name: &Ident, line: usize) -> Result<&Valuation, ScriptError> {
        self.require_spec(line)?;
        self.valuations.get(&name.name).ok_or_else(|| {
            ScriptError::structural(
                "UNKNOWN_VALUATION",
                format!("no valuation named `{}`", name.name),
                line,
                name.column,
            )
        })
    }

    fn execute(&mut self, stmt: &Located) -> Result<Option<Emitted>, ScriptError> {
        let line = stmt.line;
        let lib = |column: usize| move |e: Error| ScriptError::from_lib(e, line, column);
        match &stmt.statement {
            Statement::Field { p, ground, vars } => {
                if self.spec.is_some() {
                    return Err(ScriptError::structural(
                        "FIELD_REDECLARED",
                        "the field is already declared",
                        line,
                        1,
                    ));
                }
                let names = |v: &[Ident]| v.iter().map(|i| i.name.clone()).collect::<Vec<_>>();
                self.spec = Some(FieldSpec::new(*p, names(ground), names(vars)).map_err(lib(1))?);
                Ok(None)
            }
            Statement::Valuation { name, decl } => {
                let spec = self.require_spec(line)?.clone();
                if self.valuations.contains_key(&name.name) {
                    return Err(ScriptError::structural(
                        "DUPLICATE_NAME",
                        format!("valuation `{}` is already defined", name.name),
                        line,
                        name.column,
                    ));
                }
                let v = build_valuation(spec, decl, self.options.precision_cap, line)?;
                self.valuations.insert(name.name.clone(), v);
                Ok(None)
            }
            Statement::Eval { name, expr } => {
                let v = self.lookup(name, line)?;
                let f = parse_ratfun(&expr.text, v.spec()).map_err(lib(expr.column))?;
                let value = v.value_of(&f).map_err(lib(expr.column))?;
                Ok(Some(Emitted {
                    json: json!({
                        "command": "eval",
                        "line": line,
                        "valuation": name.name,
                        "expr": expr.text,
                        "value": value.to_string(),
                    }),
                    text: format!("{}({}) = {value}\n", name.name, expr.text),
                }))
            }
            Statement::InQ { name, expr } => {
                let v = self.lookup(name, line)?;
                let f = parse_ratfun(&expr.text, v.spec()).map_err(lib(expr.column))?;
                let member = in_q(v, &f).map_err(lib(expr.column))?;
                Ok(Some(Emitted {
                    json: json!({
                        "command": "inQ",
                        "line": line,
                        "valuation": name.name,
                        "expr": expr.text,
                        "result": member,
                    }),
                    text: format!("{} in Q({}): {member}\n", expr.text, name.name),
                }))
            }
            Statement::PureAlong { name, expr } => {
                let v = self.lookup(name, line)?;
                let f = parse_ratfun(&expr.text, v.spec()).map_err(lib(expr.column))?;
                let exponent = least_pure_exponent(v, &f).map_err(lib(expr.column))?;
                let text = match exponent {
                    Some(e) => format!(
                        "{} is F-pure along {}: true (least exponent {e})\n",
                        name.name, expr.text
                    ),
                    None => format!(
                        "{} is F-pure along {}: false ({} lies in Q)\n",
                        name.name, expr.text, expr.text
                    ),
                };
                Ok(Some(Emitted {
                    json: json!({
                        "command": "pure-along",
                        "line": line,
                        "valuation": name.name,
                        "expr": expr.text,
                        "result": exponent.is_some(),
                        "least_pure_exponent": exponent,
                    }),
                    text,
                }))
            }
            Statement::Classify { name } => {
                let v = self.lookup(name, line)?;
                let report = classify(v).map_err(lib(name.column))?;
                Ok(Some(Emitted {
                    json: json!({
                        "command": "classify",
                        "line": line,
                        "valuation": name.name,
                        "report": report.to_json(),
                    }),
                    text: render::classification_text(&name.name, v, &report),
                }))
            }
            Statement::Report { name } => {
                let v = self.lookup(name, line)?;
                let report = classify(v).map_err(lib(name.column))?;
                let mut json = render::valuation_json(v);
                json["command"] = json!("report");
                json["line"] = json!(line);
                json["valuation"] = json!(name.name);
                json["report"] = report.to_json();
                Ok(Some(Emitted {
                    json,
                    text: render::valuation_text(&name.name, v)
                        + &render::classification_text(&name.name, v, &report),
                }))
            }
        }
    }

    /// Runs a whole script. Parsing happens up front; a parse error means
    /// nothing is executed.
    pub fn run(&mut self, script: &str) -> ScriptOutput {
        let mut results = Vec::new();
        let error = match dsl::parse_script(script) {
            Err(e) => Some(ScriptError::structural(
                "PARSE_ERROR",
                e.message,
                e.line,
                e.column,
            )),
            Ok(statements) => statements.iter().find_map(|stmt| match self.execute(stmt) {
                Ok(Some(out)) => {
                    results.push(out);
                    None
                }
                Ok(None) => None,
                Err(e) => Some(e),
            }),
        };
        let exit_code = error.as_ref().map_or(EXIT_OK, |e| e.exit_code);
        match self.options.format {
            Format::Json => {
                let mut doc = json!({
                    "schema": SCHEMA_VERSION,
                    "results": results.into_iter().map(|r| r.json).collect::<Vec<_>>(),
                });
                if let Some(e) = &error {
                    doc["error"] = e.to_json();
                }
                ScriptOutput {
                    exit_code,
                    stdout: serde_json::to_string_pretty(&doc).expect("JSON value serializes")
                        + "\n",
                    stderr: String::new(),
                }
            }
            Format::Text => ScriptOutput {
                exit_code,
                stdout: results
                    .into_iter()
                    .map(|r| r.text)
                    .collect::<Vec<_>>()
                    .join("\n"),
                stderr: error
                    .map(|e| {
                        format!(
                            "error[{}] at line {}, column {}: {}\n",
                            e.code, e.line, e.column, e.message
                        )
                    })
                    .unwrap_or_default(),
            },
        }
    }
}

/// Runs `script` in a fresh session.
pub fn run_script(script: &str, options: Options) -> ScriptOutput {
    Session::new(options).run(script)
}

fn main_index(spec: &FieldSpec, var: &Ident, line: usize) -> Result<usize, ScriptError> {
    spec.main_index(&var.name).ok_or_else(|| {
        ScriptError::from_lib(
            Error::UnknownVariable {
                name: var.name.clone(),
                pos: 0,
            },
            line,
            var.column,
        )
    })
}

/// Orders `entries` by main-variable index, requiring each variable
/// exactly once.
fn per_variable<T: Clone>(
    spec: &FieldSpec,
    entries: &[(Ident, T)],
    line: usize,
) -> Result<Vec<T>, ScriptError> {
    let mut slots: Vec<Option<T>> = vec![None; spec.n()];
    for (var, value) in entries {
        let i = main_index(spec, var, line)?;
        if slots[i].replace(value.clone()).is_some() {
            return Err(ScriptError::from_lib(
                Error::InvalidValuation(format!("`{}` is given twice", var.name)),
                line,
                var.column,
            ));
        }
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            s.ok_or_else(|| {
                ScriptError::from_lib(
                    Error::InvalidValuation(format!("no entry for `{}`", spec.main_vars()[i])),
                    line,
                    1,
                )
            })
        })
        .collect()
}

fn build_valuation(
    spec: FieldSpec,
    decl: &ValuationDecl,
    cap: usize,
    line: usize,
) -> Result<Valuation, ScriptError> {
    let lib = |column: usize| move |e: Error| ScriptError::from_lib(e, line, column);
    match decl {
        ValuationDecl::Monomial(entries) => {
            let exprs: Vec<Expr> = per_variable(&spec, entries, line)?;
            let parsed = exprs
                .iter()
                .map(|e| QuadraticExpr::parse(&e.text).map_err(lib(e.column)))
                .collect::<Result<Vec<_>, _>>()?;
            let d = parsed.iter().find_map(|q| q.d).unwrap_or(2);
            let weights = parsed
                .into_iter()
                .zip(&exprs)
                .map(|(q, e)| q.into_real(d).map_err(lib(e.column)))
                .collect::<Result<Vec<_>, _>>()?;
            let column = entries[0].1.column;
            Valuation::monomial_arch(spec, weights).map_err(lib(column))
        }
        ValuationDecl::Lex { rank, entries } => {
            let explicit = entries.iter().filter(|(_, w)| w.is_some()).count();
            if explicit == 0 && rank.is_none() {
                let n = spec.n();
                let listed: Vec<(Ident, usize)> = entries
                    .iter()
                    .enumerate()
                    .map(|(pos, (v, _))| (v.clone(), pos))
                    .collect();
                let positions = per_variable(&spec, &listed, line)?;
                let weights = positions
                    .iter()
                    .map(|&pos| (0..n).map(|j| BigInt::from(u8::from(j == pos))).collect())
                    .collect();
                return Valuation::monomial_lex(spec, weights).map_err(lib(1));
            }
            if explicit != entries.len() {
                return Err(ScriptError::from_lib(
                    Error::InvalidValuation(
                        "either every variable gets a weight vector or none does".into(),
                    ),
                    line,
                    1,
                ));
            }
            let vectors: Vec<(Ident, Vec<BigInt>)> = entries
                .iter()
                .map(|(v, w)| (v.clone(), w.clone().expect("checked above")))
                .collect();
            let r = rank.unwrap_or(vectors[0].1.len());
            if let Some((v, _)) = vectors.iter().find(|(_, w)| w.len() != r) {
                return Err(ScriptError::from_lib(
                    Error::InvalidValuation(format!(
                        "weight of `{}` must have {r} coordinates",
                        v.name
                    )),
                    line,
                    v.column,
                ));
            }
            let weights = per_variable(&spec, &vectors, line)?;
            Valuation::monomial_lex(spec, weights).map_err(lib(1))
        }
        ValuationDecl::Divisorial(expr) => {
            let g = parse_poly(&expr.text, &spec).map_err(lib(expr.column))?;
            Valuation::divisorial(spec, g).map_err(lib(expr.column))
        }
        ValuationDecl::Series(entries) => {
            let p = spec.p();
            let t_spec =
                FieldSpec::new(p, Vec::<&str>::new(), ["t"]).expect("valid single-variable field");
            let rhs: Vec<SeriesRhs> = per_variable(&spec, entries, line)?;
            let assign = rhs
                .iter()
                .map(|r| match r {
                    SeriesRhs::FactorialGap => Ok(Arc::new(PowerSeries::factorial_gap(p))),
                    SeriesRhs::Poly(e) => {
                        let poly = parse_poly(&e.text, &t_spec).map_err(lib(e.column))?;
                        let name = poly.display(&t_spec).to_string();
                        Ok(Arc::new(PowerSeries::from_univariate(name, &poly)))
                    }
                })
                .collect::<Result<Vec<_>, ScriptError>>()?;
            Valuation::series(spec, assign, cap).map_err(lib(1))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn json(script: &str) -> (i32, Value) {
        let out = run_script(
            script,
            Options {
                format: Format::Json,
                ..Options::default()
            },
        );
        (out.exit_code, serde_json::from_str(&out.stdout).unwrap())
    }

    #[test]
    fn classify_irrational_monomial() {
        let (code, doc) = json(
            "field p=5 vars(x,y)\nvaluation v1 = monomial { x: 1, y: sqrt(2) }\nclassify v1\n",
        );
        assert_eq!(code, 0);
        assert_eq!(doc["schema"], 1);
        let r = &doc["results"][0]["report"];
        assert_eq!(r["e"], 25);
        assert_eq!(r["abhyankar"], true);
        assert_eq!(r["f_finite"], "NO");
    }

    #[test]
    fn eval_and_membership() {
        let (code, doc) = json(
            "field p=5 vars(x,y)\nvaluation v3 = divisorial (x + y)\neval v3 (x+y)^3/(x)\n\
             valuation v2 = lex { x, y }\ninQ v2 x\npure-along v2 y^6\n",
        );
        assert_eq!(code, 0);
        assert_eq!(doc["results"][0]["value"], "3");
        assert_eq!(doc["results"][1]["result"], true);
        assert_eq!(doc["results"][2]["least_pure_exponent"], 2);
    }

    #[test]
    fn schmidt_json_cites_dvr_equivalence() {
        let (code, doc) = json(fixtures::SCHMIDT);
        assert_eq!(code, 0);
        let r = &doc["results"][4]["report"];
        assert_eq!(r["frobenius_split"], "NO");
        assert_eq!(r["citations"]["frobenius_split"][0], "Cor-DVR-equivalence");
        assert_eq!(r["caveats"][0], "TRANSCENDENCE_ASSUMED");
        let values: Vec<&str> = (0..4)
            .map(|i| doc["results"][i]["value"].as_str().unwrap())
            .collect();
        assert_eq!(values, ["1", "1", "2", "6"]);
    }

    #[test]
    fn exit_codes_and_locations() {
        let (code, doc) = json("field p=5 vars(x,y)\nvaluation v = lex { x, y }\neval v x + $\n");
        assert_eq!(code, EXIT_PARSE);
        assert_eq!(doc["error"]["code"], "PARSE_ERROR");
        assert_eq!(
            (
                doc["error"]["line"].as_u64(),
                doc["error"]["column"].as_u64()
            ),
            (Some(3), Some(12))
        );

        let (code, doc) = json("field p=5 vars(x,y)\nvaluation v = lex { x, y }\neval v 0\n");
        assert_eq!(code, EXIT_DOMAIN);
        assert_eq!(doc["error"]["code"], "ZERO_ARGUMENT");

        let (code, doc) = json("classify v\n");
        assert_eq!(code, EXIT_PARSE);
        assert_eq!(doc["error"]["code"], "NO_FIELD");

        let (code, _) = json("field p=5 vars(x,y)\nvaluation v = monomial { x: 1, z: 2 }\n");
        assert_eq!(code, EXIT_PARSE);

        let (code, doc) =
            json("field p=5 vars(x,y)\nvaluation v = monomial { x: 1, y: sqrt(3) + sqrt(2) }\n");
        assert_eq!(code, EXIT_DOMAIN);
        assert_eq!(doc["error"]["code"], "MIXED_RADICAND");

        let (code, doc) =
            json("field p=3 vars(x,y)\nvaluation v = series { x -> t^2, y -> t^3 }\n");
        assert_eq!(code, EXIT_DOMAIN);
        assert_eq!(doc["error"]["code"], "NO_ORD1_WITNESS");
    }

    #[test]
    fn lex_variable_order_and_explicit_weights() {
        let (_, doc) = json(
            "field p=3 vars(x,y)\nvaluation a = lex { y, x }\ninQ a y\ninQ a x\n\
             valuation b = lex(2) { x: (1,0), y: (0,2) }\neval b x*y\n",
        );
        assert_eq!(doc["results"][0]["result"], true);
        assert_eq!(doc["results"][1]["result"], false);
        assert_eq!(doc["results"][2]["value"], "(1, 2)");
    }

    #[test]
    fn text_mode_transcript() {
        let out = run_script(fixtures::LEX, Options::default());
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("x1 in Q(v2): true"));
        assert!(out.stdout.contains("Erratum-Remark-index"));
        let out = run_script("field p=5 vars(x)\nfoo\n", Options::default());
        assert_eq!(out.exit_code, 2);
        assert!(out
            .stderr
            .starts_with("error[PARSE_ERROR] at line 2, column 1"));
    }
}
