//! The `--filter` mini-language.
//!
//! ```text
//! expr  := term ("&&" term)*
//! term  := "pattern(" word ")" cmp int
//!        | "last_inc(" int ")" | "last_dec(" int ")"
//!        | stat cmp int
//! stat  := first | last | pos_of_max | pos_of_max_from_end | pos_of_min
//!        | height | first_ascent | last_descent | interior_returns
//! cmp   := "==" | "!=" | "<=" | ">=" | "<" | ">"
//! ```
//!
//! The first five statistics and the two `last_*` terms apply to
//! permutations, the remaining ones to paths.

use std::fmt;

use patcount::oracle::{Cmp, PathFilter, PathPredicate, PermFilter, PermPredicate};
use patcount::Pattern;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the expression.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "filter parse error at column {}: {}", self.pos + 1, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Term {
    Perm(PermPredicate),
    Path(PathPredicate),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
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

    fn expect(&mut self, tok: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(format!("expected `{tok}`"))
        }
    }

    fn ident(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return self.err("expected a term");
        }
        let id = &self.rest()[..len];
        self.pos += len;
        Ok(id)
    }

    fn int(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return self.err("expected a nonnegative integer");
        }
        let v = self.rest()[..len].parse().or_else(|_| self.err("integer out of range"))?;
        self.pos += len;
        Ok(v)
    }

    fn cmp(&mut self) -> Result<Cmp, ParseError> {
        for (tok, c) in [
            ("==", Cmp::Eq),
            ("!=", Cmp::Ne),
            ("<=", Cmp::Le),
            (">=", Cmp::Ge),
            ("<", Cmp::Lt),
            (">", Cmp::Gt),
        ] {
            if self.eat(tok) {
                return Ok(c);
            }
        }
        self.err("expected a comparison (==, !=, <=, >=, <, >)")
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let id = self.ident()?;
        let term = match id {
            "pattern" => {
                self.expect("(")?;
                let inner_start = self.pos;
                let Some(close) = self.rest().find(')') else {
                    return self.err("unclosed `(`");
                };
                let word = &self.rest()[..close];
                let pattern: Pattern = word.parse().map_err(|e| ParseError {
                    pos: inner_start,
                    msg: format!("bad pattern: {e}"),
                })?;
                self.pos += close + 1;
                let cmp = self.cmp()?;
                let value = self.int()?;
                Term::Perm(PermPredicate::PatternCount {
                    pattern,
                    cmp,
                    value,
                })
            }
            "last_inc" | "last_dec" => {
                self.expect("(")?;
                let i = self.int()?;
                self.expect(")")?;
                Term::Perm(if id == "last_inc" {
                    PermPredicate::LastInc(i)
                } else {
                    PermPredicate::LastDec(i)
                })
            }
            _ => {
                let build: fn(Cmp, usize) -> Term = match id {
                    "first" => |c, v| Term::Perm(PermPredicate::First(c, v)),
                    "last" => |c, v| Term::Perm(PermPredicate::Last(c, v)),
                    "pos_of_max" => |c, v| Term::Perm(PermPredicate::PosOfMax(c, v)),
                    "pos_of_max_from_end" => {
                        |c, v| Term::Perm(PermPredicate::PosOfMaxFromEnd(c, v))
                    }
                    "pos_of_min" => |c, v| Term::Perm(PermPredicate::PosOfMin(c, v)),
                    "height" => |c, v| Term::Path(PathPredicate::Height(c, v)),
                    "first_ascent" => |c, v| Term::Path(PathPredicate::FirstAscent(c, v)),
                    "last_descent" => |c, v| Term::Path(PathPredicate::LastDescent(c, v)),
                    "interior_returns" => {
                        |c, v| Term::Path(PathPredicate::InteriorReturns(c, v))
                    }
                    _ => {
                        self.pos = start;
                        return self.err(format!("unknown term `{id}`"));
                    }
                };
                let cmp = self.cmp()?;
                let value = self.int()?;
                build(cmp, value)
            }
        };
        Ok(term)
    }

    fn expr(&mut self) -> Result<Vec<(usize, Term)>, ParseError> {
        let mut terms = Vec::new();
        loop {
            self.skip_ws();
            terms.push((self.pos, self.term()?));
            self.skip_ws();
            if self.pos == self.src.len() {
                return Ok(terms);
            }
            if !self.eat("&&") {
                return self.err("expected `&&` or end of filter");
            }
        }
    }
}

fn parse(src: &str) -> Result<Vec<(usize, Term)>, ParseError> {
    let mut p = Parser { src, pos: 0 };
    p.skip_ws();
    if p.pos == src.len() {
        return Ok(Vec::new());
    }
    p.expr()
}

pub fn parse_perm_filter(src: &str) -> Result<PermFilter, ParseError> {
    let mut f = PermFilter::all();
    for (pos, t) in parse(src)? {
        match t {
            Term::Perm(p) => f = f.and(p),
            Term::Path(_) => {
                return Err(ParseError {
                    pos,
                    msg: "path statistic used in a permutation filter".into(),
                })
            }
        }
    }
    Ok(f)
}

pub fn parse_path_filter(src: &str) -> Result<PathFilter, ParseError> {
    let mut f = PathFilter::all();
    for (pos, t) in parse(src)? {
        match t {
            Term::Path(p) => f = f.and(p),
            Term::Perm(_) => {
                return Err(ParseError {
                    pos,
                    msg: "permutation statistic used in a path filter".into(),
                })
            }
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_conjunctions() {
        let f = parse_perm_filter("pattern(2 1)==1 && first>=2 && last_inc(2)").unwrap();
        assert_eq!(f.predicates().len(), 3);
        let f = parse_perm_filter("pattern(132) == 0&&pos_of_max<=3").unwrap();
        assert_eq!(f.predicates().len(), 2);
        let g = parse_path_filter("height<=2 && first_ascent>=1").unwrap();
        assert_eq!(g.predicates().len(), 2);
        assert_eq!(parse_perm_filter("  ").unwrap(), PermFilter::all());
    }

    #[test]
    fn reports_positions() {
        let e = parse_perm_filter("first>=2 && bogus<1").unwrap_err();
        assert_eq!(e.pos, 12);
        let e = parse_perm_filter("first=>2").unwrap_err();
        assert_eq!(e.pos, 5);
        let e = parse_perm_filter("pattern(1 1)==1").unwrap_err();
        assert_eq!(e.pos, 8);
        let e = parse_perm_filter("height<=2").unwrap_err();
        assert_eq!(e.pos, 0);
        let e = parse_perm_filter("first>=2 first>=3").unwrap_err();
        assert_eq!(e.pos, 9);
    }
}
