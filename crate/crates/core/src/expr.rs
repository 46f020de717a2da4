//! The knot-expression language.
//!
//! ```text
//! expr  := term ('#' term)*            -- '#' is left-associative
//! term  := 'unknot'
//!        | 'torus' '(' int ',' int ')'
//!        | 'mirror' '(' expr ')'
//!        | 'cable' '(' int ',' int ',' expr ')'
//!        | '(' expr ')'
//! int   := ['+' | '-'] digit+
//! ```

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KnotExpr {
    Unknot,
    Torus { p: i64, q: i64 },
    Mirror(Box<KnotExpr>),
    Sum(Box<KnotExpr>, Box<KnotExpr>),
    Cable { p: i64, q: i64, companion: Box<KnotExpr> },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at offset {pos}: expected {}, found {found}", .expected.join(" or "))]
    Syntax {
        pos: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("invalid subterm {subterm}: {reason}")]
    Invalid { subterm: String, reason: String },
}

impl KnotExpr {
    pub fn torus(p: i64, q: i64) -> Self {
        KnotExpr::Torus { p, q }
    }

    pub fn mirror(e: KnotExpr) -> Self {
        KnotExpr::Mirror(Box::new(e))
    }

    pub fn sum(a: KnotExpr, b: KnotExpr) -> Self {
        KnotExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn cable(q: i64, companion: KnotExpr) -> Self {
        KnotExpr::Cable {
            p: 2,
            q,
            companion: Box::new(companion),
        }
    }

    /// Checks the parameter constraints of every node.
    pub fn validate(&self) -> Result<(), ExprError> {
        match self {
            KnotExpr::Unknot => Ok(()),
            KnotExpr::Torus { p, q } => check_torus(*p, *q).map_err(|reason| ExprError::Invalid {
                subterm: self.to_string(),
                reason,
            }),
            KnotExpr::Mirror(e) => e.validate(),
            KnotExpr::Sum(a, b) => {
                a.validate()?;
                b.validate()
            }
            KnotExpr::Cable { p, q, companion } => {
                check_cable(*p, *q).map_err(|reason| ExprError::Invalid {
                    subterm: self.to_string(),
                    reason,
                })?;
                companion.validate()
            }
        }
    }

    /// Canonical form: mirrors pushed to the leaves and absorbed into torus
    /// parameters, connected sums flattened, unknot summands dropped, and
    /// summands sorted by their rendering and nested to the right.
    pub fn normalize(&self) -> KnotExpr {
        self.normalize_with(false)
    }

    fn normalize_with(&self, mirrored: bool) -> KnotExpr {
        match self {
            KnotExpr::Unknot => KnotExpr::Unknot,
            KnotExpr::Torus { p, q } => KnotExpr::Torus {
                p: *p,
                q: if mirrored { -q } else { *q },
            },
            KnotExpr::Mirror(e) => e.normalize_with(!mirrored),
            KnotExpr::Cable { p, q, companion } => KnotExpr::Cable {
                p: *p,
                q: if mirrored { -q } else { *q },
                companion: Box::new(companion.normalize_with(mirrored)),
            },
            KnotExpr::Sum(..) => {
                let mut parts = Vec::new();
                self.collect_summands(mirrored, &mut parts);
                let mut keyed: Vec<(String, KnotExpr)> = parts
                    .into_iter()
                    .filter(|e| *e != KnotExpr::Unknot)
                    .map(|e| (e.to_string(), e))
                    .collect();
                keyed.sort_by(|a, b| a.0.cmp(&b.0));
                let mut it = keyed.into_iter().rev().map(|(_, e)| e);
                match it.next() {
                    None => KnotExpr::Unknot,
                    Some(last) => it.fold(last, |acc, e| KnotExpr::sum(e, acc)),
                }
            }
        }
    }

    fn collect_summands(&self, mirrored: bool, out: &mut Vec<KnotExpr>) {
        match self {
            KnotExpr::Sum(a, b) => {
                a.collect_summands(mirrored, out);
                b.collect_summands(mirrored, out);
            }
            KnotExpr::Mirror(e) => e.collect_summands(!mirrored, out),
            other => {
                let n = other.normalize_with(mirrored);
                match n {
                    KnotExpr::Sum(..) => n.collect_summands(false, out),
                    _ => out.push(n),
                }
            }
        }
    }

    /// Canonical cache key: the rendering of the normal form.
    pub fn canonical_key(&self) -> String {
        self.normalize().to_string()
    }

    pub fn depth(&self) -> usize {
        match self {
            KnotExpr::Unknot | KnotExpr::Torus { .. } => 1,
            KnotExpr::Mirror(e) => 1 + e.depth(),
            KnotExpr::Cable { companion, .. } => 1 + companion.depth(),
            KnotExpr::Sum(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

fn check_torus(p: i64, q: i64) -> Result<(), String> {
    if p < 2 {
        return Err(format!("torus parameter p = {p} must be at least 2"));
    }
    if q.abs() < 2 {
        return Err(format!("torus parameter |q| = {} must be at least 2", q.abs()));
    }
    let g = p.gcd(&q.abs());
    if g != 1 {
        return Err(format!("gcd({p},{}) ≠ 1", q.abs()));
    }
    Ok(())
}

fn check_cable(p: i64, q: i64) -> Result<(), String> {
    if p != 2 {
        return Err(format!("only (2,q)-cables are supported, got p = {p}"));
    }
    if q.is_even() {
        return Err(format!("cable parameter q = {q} must be odd"));
    }
    Ok(())
}

/// Renders so that `parse(render(e)) == e`: '#' is left-associative, so a
/// `Sum` in right position is parenthesized.
impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => f.write_str("unknot"),
            KnotExpr::Torus { p, q } => write!(f, "torus({p},{q})"),
            KnotExpr::Mirror(e) => write!(f, "mirror({e})"),
            KnotExpr::Cable { p, q, companion } => write!(f, "cable({p},{q},{companion})"),
            KnotExpr::Sum(a, b) => match **b {
                KnotExpr::Sum(..) => write!(f, "{a} # ({b})"),
                _ => write!(f, "{a} # {b}"),
            },
        }
    }
}

impl std::str::FromStr for KnotExpr {
    type Err = ExprError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Parses and validates an expression.
pub fn parse(text: &str) -> Result<KnotExpr, ExprError> {
    let mut p = Parser { src: text, pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error(&["expression"]));
    }
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(&["'#'", "end of input"]));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn error(&self, expected: &[&str]) -> ExprError {
        let found = match self.rest().chars().next() {
            None => "end of input".to_string(),
            Some(_) => {
                let tok: String = self
                    .rest()
                    .chars()
                    .take_while(|c| c.is_alphanumeric())
                    .collect();
                if tok.is_empty() {
                    format!("'{}'", self.rest().chars().next().unwrap())
                } else {
                    format!("'{tok}'")
                }
            }
        };
        ExprError::Syntax {
            pos: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), ExprError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&[&format!("'{tok}'")]))
        }
    }

    fn expr(&mut self) -> Result<KnotExpr, ExprError> {
        let mut acc = self.term()?;
        while self.eat("#") {
            let rhs = self.term()?;
            acc = KnotExpr::sum(acc, rhs);
        }
        Ok(acc)
    }

    fn keyword(&mut self) -> Option<&'static str> {
        self.skip_ws();
        let word: String = self.rest().chars().take_while(|c| c.is_ascii_alphabetic()).collect();
        let kw = ["unknot", "torus", "mirror", "cable"]
            .into_iter()
            .find(|k| *k == word)?;
        self.pos += kw.len();
        Some(kw)
    }

    fn term(&mut self) -> Result<KnotExpr, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let node = match self.keyword() {
            Some("unknot") => KnotExpr::Unknot,
            Some("torus") => {
                self.expect("(")?;
                let p = self.int()?;
                self.expect(",")?;
                let q = self.int()?;
                self.expect(")")?;
                KnotExpr::Torus { p, q }
            }
            Some("mirror") => {
                self.expect("(")?;
                let e = self.expr()?;
                self.expect(")")?;
                return Ok(KnotExpr::mirror(e));
            }
            Some("cable") => {
                self.expect("(")?;
                let p = self.int()?;
                self.expect(",")?;
                let q = self.int()?;
                self.expect(",")?;
                let e = self.expr()?;
                self.expect(")")?;
                KnotExpr::Cable {
                    p,
                    q,
                    companion: Box::new(e),
                }
            }
            _ => {
                if self.eat("(") {
                    let e = self.expr()?;
                    self.expect(")")?;
                    return Ok(e);
                }
                self.pos = start;
                return Err(self.error(&["'unknot'", "'torus'", "'mirror'", "'cable'", "'('"]));
            }
        };
        let checked = match &node {
            KnotExpr::Torus { p, q } => check_torus(*p, *q),
            KnotExpr::Cable { p, q, .. } => check_cable(*p, *q),
            _ => Ok(()),
        };
        checked.map_err(|reason| ExprError::Invalid {
            subterm: node.to_string(),
            reason,
        })?;
        Ok(node)
    }

    fn int(&mut self) -> Result<i64, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let rest = self.rest();
        let sign_len = usize::from(rest.starts_with('-') || rest.starts_with('+'));
        let digits = rest[sign_len..].chars().take_while(|c| c.is_ascii_digit()).count();
        if digits == 0 {
            return Err(self.error(&["integer"]));
        }
        let lit = &rest[..sign_len + digits];
        match lit.parse::<i64>() {
            Ok(v) => {
                self.pos += lit.len();
                Ok(v)
            }
            Err(_) => {
                self.pos = start;
                Err(self.error(&["integer within 64-bit range"]))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: i64, q: i64) -> KnotExpr {
        KnotExpr::torus(p, q)
    }

    #[test]
    fn parses_grammar_examples() {
        assert_eq!(parse("torus(2,3)"), Ok(t(2, 3)));
        assert_eq!(
            parse("cable(2,3, torus(2,-5)) # unknot"),
            Ok(KnotExpr::sum(KnotExpr::cable(3, t(2, -5)), KnotExpr::Unknot))
        );
        assert_eq!(
            parse("  mirror( torus( 3 , +4 ) )"),
            Ok(KnotExpr::mirror(t(3, 4)))
        );
    }

    #[test]
    fn sum_is_left_associative() {
        assert_eq!(
            parse("unknot # torus(2,3) # torus(2,5)"),
            Ok(KnotExpr::sum(
                KnotExpr::sum(KnotExpr::Unknot, t(2, 3)),
                t(2, 5)
            ))
        );
        assert_eq!(
            parse("unknot # (torus(2,3) # torus(2,5))"),
            Ok(KnotExpr::sum(
                KnotExpr::Unknot,
                KnotExpr::sum(t(2, 3), t(2, 5))
            ))
        );
    }

    #[test]
    fn validation_errors_name_subterm() {
        let err = parse("torus(2,4)").unwrap_err();
        assert_eq!(
            err,
            ExprError::Invalid {
                subterm: "torus(2,4)".into(),
                reason: "gcd(2,4) ≠ 1".into()
            }
        );
        assert!(err.to_string().contains("gcd(2,4) ≠ 1"));
        let err = parse("unknot # cable(2,4,unknot)").unwrap_err();
        assert!(matches!(err, ExprError::Invalid { ref subterm, .. } if subterm == "cable(2,4,unknot)"));
        assert!(matches!(parse("cable(3,5,unknot)"), Err(ExprError::Invalid { .. })));
        assert!(matches!(parse("torus(2,1)"), Err(ExprError::Invalid { .. })));
        assert!(matches!(parse("torus(1,3)"), Err(ExprError::Invalid { .. })));
        assert!(matches!(parse("torus(2,0)"), Err(ExprError::Invalid { .. })));
    }

    #[test]
    fn syntax_errors_report_position() {
        match parse("torus(2 3)") {
            Err(ExprError::Syntax { pos, expected, .. }) => {
                assert_eq!(pos, 8);
                assert_eq!(expected, vec!["','".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse(""), Err(ExprError::Syntax { pos: 0, .. })));
        assert!(matches!(parse("knot"), Err(ExprError::Syntax { pos: 0, .. })));
        assert!(matches!(parse("unknot unknot"), Err(ExprError::Syntax { pos: 7, .. })));
        assert!(matches!(parse("torus(2,99999999999999999999)"), Err(ExprError::Syntax { .. })));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(KnotExpr::mirror(t(2, 5)).normalize(), t(2, -5));
        assert_eq!(KnotExpr::mirror(KnotExpr::mirror(t(2, 3))).normalize(), t(2, 3));
        assert_eq!(
            KnotExpr::sum(KnotExpr::Unknot, KnotExpr::cable(3, t(2, -5))).normalize(),
            KnotExpr::cable(3, t(2, -5))
        );
        assert_eq!(KnotExpr::mirror(KnotExpr::Unknot).normalize(), KnotExpr::Unknot);
        assert_eq!(
            KnotExpr::mirror(KnotExpr::cable(3, t(2, 3))).normalize(),
            KnotExpr::cable(-3, t(2, -3))
        );
    }

    #[test]
    fn canonical_order_and_nesting() {
        let e = KnotExpr::sum(t(2, 3), t(2, -5)).normalize();
        assert_eq!(e.to_string(), "torus(2,-5) # torus(2,3)");
        let e = parse("torus(3,4) # mirror(torus(2,3) # torus(2,5)) # unknot").unwrap();
        let n = e.normalize();
        assert_eq!(n.to_string(), "torus(2,-3) # (torus(2,-5) # torus(3,4))");
        assert_eq!(parse(&n.to_string()).unwrap(), n);
        assert_eq!(n.normalize(), n);
    }
}
