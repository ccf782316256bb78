//! Line-oriented statement parser for frobval scripts.
//!
//! Expressions inside statements are kept as source text with their column
//! and parsed later, once the field is known.

use num_bigint::BigInt;

/// A parse failure with 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DslError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub column: usize,
}

/// Unparsed expression text; `column` is where its first character sits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub text: String,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesRhs {
    FactorialGap,
    Poly(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValuationDecl {
    Monomial(Vec<(Ident, Expr)>),
    /// `lex { x, y }` orders the listed variables; `lex(r) { x: (..) }`
    /// gives explicit weight vectors.
    Lex {
        rank: Option<usize>,
        entries: Vec<(Ident, Option<Vec<BigInt>>)>,
    },
    Divisorial(Expr),
    Series(Vec<(Ident, SeriesRhs)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Field {
        p: u64,
        ground: Vec<Ident>,
        vars: Vec<Ident>,
    },
    Valuation {
        name: Ident,
        decl: ValuationDecl,
    },
    Eval {
        name: Ident,
        expr: Expr,
    },
    Classify {
        name: Ident,
    },
    InQ {
        name: Ident,
        expr: Expr,
    },
    PureAlong {
        name: Ident,
        expr: Expr,
    },
    Report {
        name: Ident,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Located {
    pub line: usize,
    pub statement: Statement,
}

struct Cursor<'a> {
    line_no: usize,
    text: &'a str,
    at: usize,
}

impl<'a> Cursor<'a> {
    fn column_of(&self, byte: usize) -> usize {
        self.text[..byte].chars().count() + 1
    }

    fn error_at(&self, byte: usize, message: impl Into<String>) -> DslError {
        DslError {
            line: self.line_no,
            column: self.column_of(byte),
            message: message.into(),
        }
    }

    fn found(&self) -> String {
        match self.text[self.at..].chars().next() {
            Some(c) => format!("`{c}`"),
            None => "end of line".into(),
        }
    }

    fn expected(&self, what: &str) -> DslError {
        self.error_at(self.at, format!("expected {what}, found {}", self.found()))
    }

    fn ws(&mut self) {
        let rest = &self.text[self.at..];
        self.at += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.text[self.at..].chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.ws();
        if self.text[self.at..].starts_with(s) {
            self.at += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), DslError> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.expected(&format!("`{s}`")))
        }
    }

    fn ident(&mut self, what: &str) -> Result<Ident, DslError> {
        self.ws();
        let start = self.at;
        let rest = &self.text[start..];
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return Err(self.expected(what)),
        }
        let len = chars
            .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        self.at += len;
        Ok(Ident {
            name: rest[..len].to_string(),
            column: self.column_of(start),
        })
    }

    /// A command word: letters, digits, `_` and `-`.
    fn word(&mut self) -> (String, usize) {
        self.ws();
        let start = self.at;
        let rest = &self.text[start..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '-'))
            .unwrap_or(rest.len());
        self.at += len;
        (rest[..len].to_string(), start)
    }

    fn integer(&mut self, what: &str) -> Result<BigInt, DslError> {
        self.ws();
        let start = self.at;
        let rest = &self.text[start..];
        let sign = usize::from(rest.starts_with('-'));
        let digits = rest[sign..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len() - sign);
        if digits == 0 {
            return Err(self.expected(what));
        }
        self.at += sign + digits;
        Ok(rest[..sign + digits].parse().expect("validated digits"))
    }

    fn small_uint(&mut self, what: &str) -> Result<u64, DslError> {
        self.ws();
        let start = self.at;
        let n = self.integer(what)?;
        u64::try_from(n).map_err(|_| self.error_at(start, format!("expected {what}")))
    }

    /// Text up to the first top-level `,` or `}`.
    fn until_separator(&mut self, what: &str) -> Result<Expr, DslError> {
        self.ws();
        let start = self.at;
        let mut depth = 0i32;
        let mut end = self.text.len();
        for (i, c) in self.text[start..].char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' | '}' if depth <= 0 => {
                    end = start + i;
                    break;
                }
                _ => {}
            }
        }
        let raw = &self.text[start..end];
        let text = raw.trim_end();
        if text.is_empty() {
            return Err(self.expected(what));
        }
        self.at = end;
        Ok(Expr {
            text: text.to_string(),
            column: self.column_of(start),
        })
    }

    fn rest(&mut self, what: &str) -> Result<Expr, DslError> {
        self.ws();
        let start = self.at;
        let text = self.text[start..].trim_end();
        if text.is_empty() {
            return Err(self.expected(what));
        }
        self.at = self.text.len();
        Ok(Expr {
            text: text.to_string(),
            column: self.column_of(start),
        })
    }

    fn end(&mut self) -> Result<(), DslError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.expected("end of statement")),
        }
    }

    /// `{ item (, item)* }` with at least one item.
    fn braced<T>(
        &mut self,
        mut item: impl FnMut(&mut Self) -> Result<T, DslError>,
    ) -> Result<Vec<T>, DslError> {
        self.expect("{")?;
        let mut out = vec![item(self)?];
        while self.eat(",") {
            out.push(item(self)?);
        }
        self.expect("}")?;
        Ok(out)
    }

    /// `( ident (, ident)* )`, possibly empty.
    fn ident_list(&mut self) -> Result<Vec<Ident>, DslError> {
        self.expect("(")?;
        let mut out = Vec::new();
        if self.eat(")") {
            return Ok(out);
        }
        out.push(self.ident("variable name")?);
        while self.eat(",") {
            out.push(self.ident("variable name")?);
        }
        self.expect(")")?;
        Ok(out)
    }

    fn int_vector(&mut self) -> Result<Vec<BigInt>, DslError> {
        self.expect("(")?;
        let mut out = vec![self.integer("integer")?];
        while self.eat(",") {
            out.push(self.integer("integer")?);
        }
        self.expect(")")?;
        Ok(out)
    }
}

fn parse_field(c: &mut Cursor) -> Result<Statement, DslError> {
    c.expect("p")?;
    c.expect("=")?;
    let p = c.small_uint("prime p")?;
    let mut ground = Vec::new();
    c.ws();
    let save = c.at;
    let (kw, _) = c.word();
    if kw == "ground" {
        ground = c.ident_list()?;
    } else {
        c.at = save;
    }
    c.ws();
    let (kw, at) = c.word();
    if kw != "vars" {
        c.at = at;
        return Err(c.expected("`vars(...)`"));
    }
    let vars = c.ident_list()?;
    c.end()?;
    Ok(Statement::Field { p, ground, vars })
}

fn parse_valuation(c: &mut Cursor) -> Result<Statement, DslError> {
    let name = c.ident("valuation name")?;
    c.expect("=")?;
    c.ws();
    let (kind, at) = c.word();
    let decl = match kind.as_str() {
        "monomial" => ValuationDecl::Monomial(c.braced(|c| {
            let v = c.ident("variable name")?;
            c.expect(":")?;
            Ok((v, c.until_separator("weight")?))
        })?),
        "lex" => {
            let rank = if c.eat("(") {
                let r = c.small_uint("rank")?;
                c.expect(")")?;
                Some(r as usize)
            } else {
                None
            };
            let entries = c.braced(|c| {
                let v = c.ident("variable name")?;
                let w = if c.eat(":") {
                    Some(c.int_vector()?)
                } else {
                    None
                };
                Ok((v, w))
            })?;
            ValuationDecl::Lex { rank, entries }
        }
        "divisorial" => ValuationDecl::Divisorial(c.rest("polynomial")?),
        "series" => ValuationDecl::Series(c.braced(|c| {
            let v = c.ident("variable name")?;
            c.expect("->")?;
            let rhs = c.until_separator("series")?;
            Ok((
                v,
                if rhs.text == "factorial_gap" {
                    SeriesRhs::FactorialGap
                } else {
                    SeriesRhs::Poly(rhs)
                },
            ))
        })?),
        _ => {
            c.at = at;
            return Err(c.expected("`monomial`, `lex`, `divisorial` or `series`"));
        }
    };
    c.end()?;
    Ok(Statement::Valuation { name, decl })
}

fn parse_statement(c: &mut Cursor) -> Result<Statement, DslError> {
    let (word, at) = c.word();
    let stmt = match word.as_str() {
        "field" => parse_field(c)?,
        "valuation" => parse_valuation(c)?,
        "eval" | "inQ" | "pure-along" => {
            let name = c.ident("valuation name")?;
            let expr = c.rest("expression")?;
            match word.as_str() {
                "eval" => Statement::Eval { name, expr },
                "inQ" => Statement::InQ { name, expr },
                _ => Statement::PureAlong { name, expr },
            }
        }
        "classify" | "report" => {
            let name = c.ident("valuation name")?;
            c.end()?;
            if word == "classify" {
                Statement::Classify { name }
            } else {
                Statement::Report { name }
            }
        }
        _ => {
            c.at = at;
            return Err(c.expected(
                "a statement (field, valuation, eval, classify, inQ, pure-along, report)",
            ));
        }
    };
    Ok(stmt)
}

/// Parses every statement of a script. Blank lines and `#` comments are
/// skipped.
pub fn parse_script(text: &str) -> Result<Vec<Located>, DslError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let mut c = Cursor {
            line_no: i + 1,
            text: line,
            at: 0,
        };
        out.push(Located {
            line: i + 1,
            statement: parse_statement(&mut c)?,
        });
    }
    Ok(out)
}
