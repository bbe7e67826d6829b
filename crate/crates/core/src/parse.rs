//! Reader for the ideal file format.
//!
//! ```text
//! ring    ::= "ring" ident ("," ident)* ";"
//! assign  ::= ident "=" monomial ("," monomial)* ";"     ("0" is the zero ideal)
//! monomial::= factor ("*" factor)*
//! factor  ::= var ("^" uint)?
//! ```
//!
//! A file holds one `ring` line followed by an assignment to `I` and an
//! optional assignment to `J`. Whitespace is insignificant. The literal `1`
//! is accepted as a monomial and denotes the unit.

use crate::error::{Error, Result};
use crate::monomial::{Factor, Monomial, MonomialIdeal, Ring, MAX_EXPONENT};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            Tok::Int(s)
        } else if ";,=*^-".contains(c) {
            chars.next();
            column += 1;
            Tok::Sym(c)
        } else {
            return Err(syntax(tl, tc, format!("unexpected character `{c}`")));
        };
        out.push(Token {
            tok,
            line: tl,
            column: tc,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        let t = self.peek();
        syntax(t.line, t.column, message)
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            Err(self.error_here(format!(
                "expected `{c}`, found {}",
                describe(&self.peek().tok)
            )))
        }
    }

    fn expect_ident(&mut self) -> Result<(String, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.clone())),
            other => Err(syntax(
                t.line,
                t.column,
                format!("expected identifier, found {}", describe(other)),
            )),
        }
    }

    fn ring(&mut self) -> Result<Ring> {
        let (kw, t) = self.expect_ident()?;
        if kw != "ring" {
            return Err(syntax(
                t.line,
                t.column,
                format!("expected `ring`, found `{kw}`"),
            ));
        }
        let mut names = vec![self.expect_ident()?.0];
        while self.peek().tok == Tok::Sym(',') {
            self.next();
            let (name, t) = self.expect_ident()?;
            if names.contains(&name) {
                return Err(syntax(
                    t.line,
                    t.column,
                    format!("duplicate variable `{name}`"),
                ));
            }
            names.push(name);
        }
        self.expect_sym(';')?;
        Ring::new(names)
    }

    /// Generator list up to (not including) the terminating `;` or end.
    fn gens(&mut self, ring: &Ring) -> Result<MonomialIdeal> {
        if let Tok::Int(s) = &self.peek().tok {
            if s.chars().all(|c| c == '0') {
                self.next();
                return Ok(MonomialIdeal::zero(ring.nvars()));
            }
        }
        let mut gens = vec![self.monomial(ring)?];
        while self.peek().tok == Tok::Sym(',') {
            self.next();
            gens.push(self.monomial(ring)?);
        }
        MonomialIdeal::new(ring.nvars(), gens)
    }

    fn monomial(&mut self, ring: &Ring) -> Result<Monomial> {
        let mut exps = vec![0u64; ring.nvars()];
        loop {
            let t = self.next();
            match &t.tok {
                Tok::Int(s) if s.trim_start_matches('0') == "1" => {}
                Tok::Ident(name) => {
                    let var = ring.index_of(name).ok_or_else(|| {
                        syntax(t.line, t.column, format!("unknown variable `{name}`"))
                    })?;
                    let e = if self.peek().tok == Tok::Sym('^') {
                        self.next();
                        self.exponent()?
                    } else {
                        1
                    };
                    exps[var] += e;
                    if exps[var] > u64::from(MAX_EXPONENT) {
                        return Err(syntax(
                            t.line,
                            t.column,
                            format!("exponent {} exceeds the maximum 2^31-1", exps[var]),
                        ));
                    }
                }
                other => {
                    return Err(syntax(
                        t.line,
                        t.column,
                        format!("expected a variable or `1`, found {}", describe(other)),
                    ))
                }
            }
            if self.peek().tok == Tok::Sym('*') {
                self.next();
            } else {
                break;
            }
        }
        Monomial::new(exps.into_iter().map(|e| e as u32).collect())
    }

    fn exponent(&mut self) -> Result<u64> {
        let t = self.next();
        match &t.tok {
            Tok::Int(s) => {
                let too_large = || {
                    syntax(
                        t.line,
                        t.column,
                        format!("exponent {s} exceeds the maximum 2^31-1"),
                    )
                };
                let e: u64 = s.parse().map_err(|_| too_large())?;
                if e > u64::from(MAX_EXPONENT) {
                    return Err(too_large());
                }
                Ok(e)
            }
            Tok::Sym('-') => Err(syntax(t.line, t.column, "negative exponent")),
            other => Err(syntax(
                t.line,
                t.column,
                format!("expected exponent, found {}", describe(other)),
            )),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Eof => "end of input".to_string(),
    }
}

/// Parses a bare generator list such as `x^4, x^3*y^7` over `ring`.
pub fn parse_ideal(text: &str, ring: &Ring) -> Result<MonomialIdeal> {
    let mut p = Parser::new(text)?;
    let ideal = p.gens(ring)?;
    if p.peek().tok == Tok::Sym(';') {
        p.next();
    }
    if p.peek().tok != Tok::Eof {
        return Err(p.error_here(format!("trailing input {}", describe(&p.peek().tok))));
    }
    Ok(ideal)
}

/// A parsed ideal file, before the `J ⊊ I` validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFile {
    pub ring: Ring,
    pub i: MonomialIdeal,
    pub j: MonomialIdeal,
}

impl IdealFile {
    pub fn factor(&self) -> Result<Factor> {
        Factor::new(self.i.clone(), self.j.clone())
    }
}

pub fn parse_file(text: &str) -> Result<IdealFile> {
    let mut p = Parser::new(text)?;
    let ring = p.ring()?;
    let (mut i, mut j) = (None, None);
    while p.peek().tok != Tok::Eof {
        let (name, t) = p.expect_ident()?;
        let slot = match name.as_str() {
            "I" => &mut i,
            "J" => &mut j,
            _ => {
                return Err(syntax(
                    t.line,
                    t.column,
                    format!("unexpected assignment to `{name}`, expected `I` or `J`"),
                ))
            }
        };
        if slot.is_some() {
            return Err(syntax(t.line, t.column, format!("`{name}` assigned twice")));
        }
        p.expect_sym('=')?;
        *slot = Some(p.gens(&ring)?);
        p.expect_sym(';')?;
    }
    let n = ring.nvars();
    let i = i.ok_or_else(|| p.error_here("missing assignment to `I`"))?;
    Ok(IdealFile {
        ring,
        i,
        j: j.unwrap_or_else(|| MonomialIdeal::zero(n)),
    })
}

/// Parses a file and validates the factor in one go.
pub fn parse_factor(text: &str) -> Result<(Ring, Factor)> {
    let file = parse_file(text)?;
    let f = file.factor()?;
    Ok((file.ring, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Ring {
        Ring::standard(2)
    }

    #[test]
    fn ideal_examples() {
        let i = parse_ideal("x^4, x^3*y^7", &xy()).unwrap();
        assert_eq!(
            i,
            MonomialIdeal::from_exponents(2, &[&[4, 0], &[3, 7]]).unwrap()
        );
        let i = parse_ideal("x, x^2", &xy()).unwrap();
        assert_eq!(i.gens().len(), 1);
        assert_eq!(parse_ideal("x^0", &xy()).unwrap(), MonomialIdeal::unit(2));
        assert_eq!(parse_ideal("1", &xy()).unwrap(), MonomialIdeal::unit(2));
        assert!(parse_ideal("0", &xy()).unwrap().is_zero());
    }

    #[test]
    fn repeated_variable_multiplies() {
        let i = parse_ideal("x*x^2*y", &xy()).unwrap();
        assert_eq!(i.gens()[0].exponents(), &[3, 1]);
    }

    #[test]
    fn errors_carry_position() {
        let err = parse_ideal("x^2,\n  w", &xy()).unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 2,
                column: 3,
                message: "unknown variable `w`".into()
            }
        );
        let err = parse_ideal("x^-2", &xy()).unwrap_err();
        assert!(
            matches!(err, Error::Syntax { column: 3, ref message, .. } if message == "negative exponent")
        );
        let err = parse_ideal("x^2147483648", &xy()).unwrap_err();
        assert!(err.to_string().contains("exceeds"));
        assert!(parse_ideal("x^2147483647", &xy()).is_ok());
        assert!(parse_ideal("x +", &xy()).is_err());
    }

    #[test]
    fn file_examples() {
        let text = "ring x, y;\nI = x^4, y^10, x^2*y^7;\nJ = x^20, y^30;\n";
        let f = parse_file(text).unwrap();
        assert_eq!(f.i.gens().len(), 3);
        assert_eq!(f.j.gens().len(), 2);
        assert!(f.factor().is_ok());

        let f = parse_file("ring a_1,b;I=a_1*b;").unwrap();
        assert!(f.j.is_zero());
        assert_eq!(f.ring.names(), &["a_1".to_string(), "b".to_string()]);

        let f = parse_file("ring x,y; I = 1; J = x, y;").unwrap();
        assert!(f.factor().is_ok());
    }

    #[test]
    fn file_errors() {
        assert!(parse_file("ring x; J = x;").is_err());
        assert!(parse_file("ring x; I = x; I = x;").is_err());
        assert!(parse_file("ring x, x; I = x;").is_err());
        assert!(parse_file("rng x; I = x;").is_err());
        assert!(parse_file("ring x; K = x;").is_err());
        assert!(parse_file("ring x; I = x").is_err());
        // J not inside I is a validation error, not a parse error
        let f = parse_file("ring x; I = x^2; J = x;").unwrap();
        assert_eq!(f.factor(), Err(Error::NotContained));
    }

    #[test]
    fn print_then_parse_is_identity() {
        let text = "ring x, y, z;\nI = x^10*y^5, x^4*y*z^7, z^7*y^3;\nJ = x^10*y^20*z^2, x^3*y^4*z^13, x^9*y^2*z^7;";
        let (ring, f) = parse_factor(text).unwrap();
        let printed = ring.factor_file(&f);
        let (ring2, f2) = parse_factor(&printed).unwrap();
        assert_eq!(ring, ring2);
        assert_eq!(f, f2);
        assert_eq!(ring2.factor_file(&f2), printed);
    }
}
