//! Ready-to-run scripts for the three reference examples.

pub const MONOMIAL_IRRATIONAL: &str = "\
# Monomial valuation with rationally independent weights 1 and sqrt(2).
# Abhyankar, yet not F-finite: the value group has index p^2 > p.
field p=5 vars(x,y)
valuation v1 = monomial { x: 1, y: sqrt(2) }
eval v1 x^2*y + y^3
inQ v1 x*y
pure-along v1 y
classify v1
";

pub const LEX: &str = "\
# Lexicographic monomial valuation on F_3(x1, x2), value group Z^2.
field p=3 vars(x1,x2)
valuation v2 = lex { x1, x2 }
eval v2 x1*x2^5 + x2^7
inQ v2 x1
inQ v2 x2
pure-along v2 x2
classify v2
";

pub const SCHMIDT: &str = "\
# Restriction of the t-adic valuation along x -> t, y -> t + t^2 + t^6 + ...
# A DVR with e = p and f = 1, so e*f = p < p^2 = [K:K^p].
field p=3 vars(x,y)
valuation v4 = series { x -> t, y -> factorial_gap }
eval v4 x
eval v4 y
eval v4 y - x
eval v4 y - x - x^2
classify v4
";

pub const ALL: [(&str, &str); 3] = [
    ("monomial-irrational", MONOMIAL_IRRATIONAL),
    ("lex", LEX),
    ("schmidt", SCHMIDT),
];

pub fn find(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}
