//! Expression parser for elements of `K`.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' INT]
//! atom   := INT | IDENT | '(' expr ')'
//! ```
//!
//! Integer literals are reduced mod p. `/` is only accepted by
//! [`parse_ratfun`].

use crate::error::{Error, Result};

use super::{FieldSpec, Polynomial, RationalFunction};

/// Largest literal exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 1000;
const MAX_DEPTH: usize = 200;
// Upper bound on term-pair products for a single multiplication.
const MAX_WORK: usize = 20_000_000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(s) => format!("integer `{s}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(text[start..i].to_string()), start));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if b"+-*/^()".contains(&c) {
            out.push((Tok::Sym(c as char), i));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(Error::parse(i, "expression", format!("`{ch}`")));
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    spec: &'a FieldSpec,
    allow_div: bool,
    depth: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> Error {
        Error::parse(self.pos(), expected, self.peek().describe())
    }

    fn constant(&self, c: u64) -> RationalFunction {
        Polynomial::constant(self.spec.p(), self.spec.nvars(), c).into()
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("shallower nesting"));
        }
        let negate = match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                true
            }
            Tok::Sym('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.checked_add(&t)?;
                }
                Tok::Sym('-') => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.checked_sub(&t)?;
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    let f = self.unary()?;
                    acc = guarded_mul(&acc, &f)?;
                }
                Tok::Sym('/') => {
                    if !self.allow_div {
                        return Err(self.error("polynomial expression without `/`"));
                    }
                    self.bump();
                    let f = self.unary()?;
                    if f.is_zero() {
                        return Err(Error::ZeroDenominator);
                    }
                    acc = guarded_mul(
                        &acc,
                        &RationalFunction::new(f.den().clone(), f.num().clone())?,
                    )?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        if self.peek() == &Tok::Sym('-') {
            self.bump();
            self.depth += 1;
            if self.depth > MAX_DEPTH {
                return Err(self.error("shallower nesting"));
            }
            let r = self.unary()?.neg();
            self.depth -= 1;
            return Ok(r);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() != &Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let e = match self.bump().0 {
            Tok::Int(s) => s
                .parse::<u32>()
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| Error::parse(pos, format!("exponent <= {MAX_EXPONENT}"), s))?,
            t => return Err(Error::parse(pos, "integer exponent", t.describe())),
        };
        guarded_pow(&base, e)
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        let pos = self.pos();
        match self.bump().0 {
            Tok::Int(s) => {
                let p = self.spec.p();
                let c = s
                    .bytes()
                    .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(self.constant(c))
            }
            Tok::Ident(name) => match Polynomial::var_in(self.spec, &name) {
                Some(v) => Ok(v.into()),
                None => Err(Error::UnknownVariable { name, pos }),
            },
            Tok::Sym('(') => {
                let e = self.expr()?;
                if self.peek() != &Tok::Sym(')') {
                    return Err(self.error("`)`"));
                }
                self.bump();
                Ok(e)
            }
            t => Err(Error::parse(pos, "integer, variable or `(`", t.describe())),
        }
    }
}

fn work(a: &RationalFunction, b: &RationalFunction) -> usize {
    let n = |x: &RationalFunction| x.num().num_terms().max(x.den().num_terms()).max(1);
    n(a).saturating_mul(n(b))
}

fn guarded_mul(a: &RationalFunction, b: &RationalFunction) -> Result<RationalFunction> {
    if work(a, b) > MAX_WORK {
        return Err(Error::InvalidArgument("expression too large".into()));
    }
    a.checked_mul(b)
}

fn guarded_pow(base: &RationalFunction, mut e: u32) -> Result<RationalFunction> {
    let mut acc =
        RationalFunction::from(Polynomial::constant(base.num().p(), base.num().nvars(), 1));
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = guarded_mul(&acc, &b)?;
        }
        e >>= 1;
        if e > 0 {
            b = guarded_mul(&b, &b)?;
        }
    }
    Ok(acc)
}

fn run(text: &str, spec: &FieldSpec, allow_div: bool) -> Result<RationalFunction> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        spec,
        allow_div,
        depth: 0,
    };
    let r = p.expr()?;
    if p.peek() != &Tok::End {
        return Err(p.error("operator or end of input"));
    }
    Ok(r)
}

pub fn parse_poly(text: &str, spec: &FieldSpec) -> Result<Polynomial> {
    let r = run(text, spec, false)?;
    // No division was parsed, so the denominator is the constant 1.
    Ok(r.num().clone())
}

pub fn parse_ratfun(text: &str, spec: &FieldSpec) -> Result<RationalFunction> {
    run(text, spec, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(p: u64) -> FieldSpec {
        FieldSpec::new(p, ["u"], ["x", "y"]).unwrap()
    }

    #[test]
    fn parse_examples() {
        let s = FieldSpec::new(5, Vec::<&str>::new(), ["x", "y"]).unwrap();
        let f = parse_poly("x^2*y + 3", &s).unwrap();
        assert_eq!(
            f,
            Polynomial::from_terms(5, 2, [(vec![2, 1], 1), (vec![0, 0], 3)])
        );
        let s2 = FieldSpec::new(2, Vec::<&str>::new(), ["x", "y"]).unwrap();
        assert_eq!(
            parse_poly("(x+y)^2", &s2).unwrap(),
            Polynomial::from_terms(2, 2, [(vec![2, 0], 1), (vec![0, 2], 1)])
        );
        assert_eq!(parse_ratfun("1/0", &s).unwrap_err(), Error::ZeroDenominator);
        assert_eq!(parse_poly("12", &s).unwrap(), Polynomial::constant(5, 2, 2));
        assert_eq!(
            parse_poly("-x", &s).unwrap(),
            Polynomial::from_terms(5, 2, [(vec![1, 0], 4)])
        );
    }

    #[test]
    fn parse_errors() {
        let s = spec(5);
        assert!(matches!(
            parse_poly("x +", &s),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert!(matches!(
            parse_poly("x / y", &s),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(matches!(
            parse_poly("z", &s),
            Err(Error::UnknownVariable { pos: 0, .. })
        ));
        assert!(matches!(
            parse_poly("x^99999", &s),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_poly("(x", &s), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_poly("x $ y", &s),
            Err(Error::Parse { pos: 2, .. })
        ));
        let deep = "(".repeat(500) + "x" + &")".repeat(500);
        assert!(matches!(parse_poly(&deep, &s), Err(Error::Parse { .. })));
    }

    #[test]
    fn ratfun_division() {
        let s = spec(7);
        let r = parse_ratfun("(x+y)^3/(x)", &s).unwrap();
        let x = Polynomial::var_in(&s, "x").unwrap();
        let y = Polynomial::var_in(&s, "y").unwrap();
        assert_eq!(
            r,
            RationalFunction::new((&x + &y).pow(3), x.clone()).unwrap()
        );
        let r = parse_ratfun("x/y/x", &s).unwrap();
        assert_eq!(r, RationalFunction::new(Polynomial::one_in(&s), y).unwrap());
    }

    fn arb_poly(p: u64) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u32..4, 3), 0..p), 0..6)
            .prop_map(move |terms| Polynomial::from_terms(p, 3, terms))
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(f in arb_poly(5)) {
            let s = spec(5);
            let text = f.display(&s).to_string();
            prop_assert_eq!(parse_poly(&text, &s).unwrap(), f);
        }

        #[test]
        fn ratfun_round_trip(f in arb_poly(3), g in arb_poly(3)) {
            prop_assume!(!g.is_zero());
            let s = spec(3);
            let r = RationalFunction::new(f, g).unwrap();
            let text = r.display(&s).to_string();
            prop_assert_eq!(parse_ratfun(&text, &s).unwrap(), r);
        }
    }
}
