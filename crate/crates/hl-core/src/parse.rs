//! Recursive-descent parsers for both object languages.
//!
//! ASCII surface syntax, loosest to tightest: `->` (right), `|` (left),
//! `&` (left), `~>` (right, strict-implication language only), then the unary
//! prefixes `~`, `[]` (sto) and `~`, `[i]`, `[m]`, `<i>`, `<m>` (bimodal).
//! Atoms are `[a-z][a-zA-Z0-9_]*`; `T` and `F` are the constants.

use crate::syntax::{BiFormula, Formula};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { offset, message: message.into() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lang {
    Sto,
    Bi,
}

impl std::str::FromStr for Lang {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sto" => Ok(Lang::Sto),
            "bi" => Ok(Lang::Bi),
            other => Err(format!("unknown language `{other}` (expected `sto` or `bi`)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    Tilde,
    Amp,
    Pipe,
    Arrow,
    StoArrow,
    BoxTok,
    BoxI,
    BoxM,
    DiaI,
    DiaM,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            b'&' => {
                toks.push((i, Tok::Amp));
                i += 1;
            }
            b'|' => {
                toks.push((i, Tok::Pipe));
                i += 1;
            }
            b'~' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((i, Tok::StoArrow));
                    i += 2;
                } else {
                    toks.push((i, Tok::Tilde));
                    i += 1;
                }
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((i, Tok::Arrow));
                    i += 2;
                } else {
                    return err(i, "expected `->`");
                }
            }
            b'[' => match (bytes.get(i + 1), bytes.get(i + 2)) {
                (Some(b']'), _) => {
                    toks.push((i, Tok::BoxTok));
                    i += 2;
                }
                (Some(b'i'), Some(b']')) => {
                    toks.push((i, Tok::BoxI));
                    i += 3;
                }
                (Some(b'm'), Some(b']')) => {
                    toks.push((i, Tok::BoxM));
                    i += 3;
                }
                _ => return err(i, "expected `[]`, `[i]` or `[m]`"),
            },
            b'<' => match (bytes.get(i + 1), bytes.get(i + 2)) {
                (Some(b'i'), Some(b'>')) => {
                    toks.push((i, Tok::DiaI));
                    i += 3;
                }
                (Some(b'm'), Some(b'>')) => {
                    toks.push((i, Tok::DiaM));
                    i += 3;
                }
                _ => return err(i, "expected `<i>` or `<m>`"),
            },
            b'T' => {
                toks.push((i, Tok::Top));
                i += 1;
            }
            b'F' => {
                toks.push((i, Tok::Bot));
                i += 1;
            }
            b'a'..=b'z' => {
                let start = i;
                i += 1;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(text[start..i].to_string())));
            }
            _ => return err(i, format!("unexpected character `{}`", text[i..].chars().next().unwrap())),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    // sto language -------------------------------------------------------

    fn sto_imp(&mut self) -> Result<Formula, ParseError> {
        let l = self.sto_or()?;
        if self.eat(&Tok::Arrow) {
            let r = self.sto_imp()?;
            Ok(Formula::imp(l, r))
        } else {
            Ok(l)
        }
    }

    fn sto_or(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.sto_and()?;
        while self.eat(&Tok::Pipe) {
            let r = self.sto_and()?;
            f = Formula::or(f, r);
        }
        Ok(f)
    }

    fn sto_and(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.sto_sto()?;
        while self.eat(&Tok::Amp) {
            let r = self.sto_sto()?;
            f = Formula::and(f, r);
        }
        Ok(f)
    }

    fn sto_sto(&mut self) -> Result<Formula, ParseError> {
        let l = self.sto_un()?;
        if self.eat(&Tok::StoArrow) {
            let r = self.sto_sto()?;
            Ok(Formula::sto(l, r))
        } else {
            Ok(l)
        }
    }

    fn sto_un(&mut self) -> Result<Formula, ParseError> {
        let off = self.offset();
        match self.peek() {
            Some(Tok::Tilde) => {
                self.bump();
                Ok(Formula::neg(self.sto_un()?))
            }
            Some(Tok::BoxTok) => {
                self.bump();
                Ok(Formula::boxed(self.sto_un()?))
            }
            Some(Tok::BoxI) | Some(Tok::BoxM) | Some(Tok::DiaI) | Some(Tok::DiaM) => {
                err(off, "indexed modality is not part of the strict-implication language")
            }
            _ => self.sto_atomic(),
        }
    }

    fn sto_atomic(&mut self) -> Result<Formula, ParseError> {
        let off = self.offset();
        match self.bump() {
            Some(Tok::Ident(p)) => Ok(Formula::Atom(p)),
            Some(Tok::Top) => Ok(Formula::Top),
            Some(Tok::Bot) => Ok(Formula::Bot),
            Some(Tok::LParen) => {
                let f = self.sto_imp()?;
                if self.eat(&Tok::RParen) {
                    Ok(f)
                } else {
                    err(self.offset(), "expected `)`")
                }
            }
            Some(_) => err(off, "expected a formula"),
            None => err(off, "unexpected end of input"),
        }
    }

    // bimodal language ----------------------------------------------------

    fn bi_imp(&mut self) -> Result<BiFormula, ParseError> {
        let l = self.bi_or()?;
        if self.eat(&Tok::Arrow) {
            let r = self.bi_imp()?;
            Ok(BiFormula::imp(l, r))
        } else {
            Ok(l)
        }
    }

    fn bi_or(&mut self) -> Result<BiFormula, ParseError> {
        let mut f = self.bi_and()?;
        while self.eat(&Tok::Pipe) {
            let r = self.bi_and()?;
            f = BiFormula::or(f, r);
        }
        Ok(f)
    }

    fn bi_and(&mut self) -> Result<BiFormula, ParseError> {
        let mut f = self.bi_un()?;
        while self.eat(&Tok::Amp) {
            let r = self.bi_un()?;
            f = BiFormula::and(f, r);
        }
        Ok(f)
    }

    fn bi_un(&mut self) -> Result<BiFormula, ParseError> {
        let off = self.offset();
        match self.peek() {
            Some(Tok::Tilde) => {
                self.bump();
                Ok(BiFormula::neg(self.bi_un()?))
            }
            Some(Tok::BoxI) => {
                self.bump();
                Ok(BiFormula::box_i(self.bi_un()?))
            }
            Some(Tok::BoxM) => {
                self.bump();
                Ok(BiFormula::box_m(self.bi_un()?))
            }
            Some(Tok::DiaI) => {
                self.bump();
                Ok(BiFormula::dia_i(self.bi_un()?))
            }
            Some(Tok::DiaM) => {
                self.bump();
                Ok(BiFormula::dia_m(self.bi_un()?))
            }
            Some(Tok::StoArrow) => {
                err(off, "`~>` is not part of the bimodal language")
            }
            Some(Tok::BoxTok) => {
                err(off, "`[]` is not part of the bimodal language; use `[i]` or `[m]`")
            }
            _ => self.bi_atomic(),
        }
    }

    fn bi_atomic(&mut self) -> Result<BiFormula, ParseError> {
        let off = self.offset();
        match self.bump() {
            Some(Tok::Ident(p)) => Ok(BiFormula::Atom(p)),
            Some(Tok::Top) => Ok(BiFormula::Top),
            Some(Tok::Bot) => Ok(BiFormula::Bot),
            Some(Tok::LParen) => {
                let f = self.bi_imp()?;
                if self.eat(&Tok::RParen) {
                    Ok(f)
                } else {
                    err(self.offset(), "expected `)`")
                }
            }
            Some(_) => err(off, "expected a formula"),
            None => err(off, "unexpected end of input"),
        }
    }

    fn expect_end<T>(&mut self, f: T) -> Result<T, ParseError> {
        match self.peek() {
            None => Ok(f),
            Some(Tok::StoArrow) => err(
                self.offset(),
                "`~>` is not part of the bimodal language",
            ),
            Some(_) => err(self.offset(), "unexpected trailing input"),
        }
    }
}

pub fn parse_sto(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, end: text.len() };
    let f = p.sto_imp()?;
    p.expect_end(f)
}

pub fn parse_bi(text: &str) -> Result<BiFormula, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, end: text.len() };
    let f = p.bi_imp()?;
    p.expect_end(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Formula as F;

    fn p() -> F {
        F::atom("p")
    }

    fn q() -> F {
        F::atom("q")
    }

    fn r() -> F {
        F::atom("r")
    }

    #[test]
    fn sto_binds_tighter_than_and() {
        // next comes ~>, then &
        assert_eq!(parse_sto("p ~> q & r").unwrap(), F::and(F::sto(p(), q()), r()));
    }

    #[test]
    fn constants() {
        assert_eq!(parse_sto("T").unwrap(), F::Top);
        assert_eq!(parse_sto("F").unwrap(), F::Bot);
    }

    #[test]
    fn imp_is_right_associative() {
        assert_eq!(
            parse_sto("p -> q -> r").unwrap(),
            F::imp(p(), F::imp(q(), r()))
        );
        assert_eq!(
            parse_sto("p ~> q ~> r").unwrap(),
            F::sto(p(), F::sto(q(), r()))
        );
    }

    #[test]
    fn and_or_left_associative_and_layered() {
        assert_eq!(
            parse_sto("p & q & r").unwrap(),
            F::and(F::and(p(), q()), r())
        );
        assert_eq!(
            parse_sto("p | q & r").unwrap(),
            F::or(p(), F::and(q(), r()))
        );
    }

    #[test]
    fn sugar_expands() {
        assert_eq!(parse_sto("~p").unwrap(), F::imp(p(), F::Bot));
        assert_eq!(parse_sto("[]p").unwrap(), F::sto(F::Top, p()));
        assert_eq!(parse_sto("[](p & q)").unwrap(), F::boxed(F::and(p(), q())));
    }

    #[test]
    fn language_mixups_are_errors_with_offsets() {
        let e = parse_bi("p ~> q").unwrap_err();
        assert_eq!(e.offset, 2);
        let e = parse_sto("[i]p").unwrap_err();
        assert_eq!(e.offset, 0);
        let e = parse_bi("[]p").unwrap_err();
        assert_eq!(e.offset, 0);
        let e = parse_sto("p -> ").unwrap_err();
        assert_eq!(e.offset, 5);
        let e = parse_sto("p @ q").unwrap_err();
        assert_eq!(e.offset, 2);
    }

    #[test]
    fn bi_modalities() {
        use crate::syntax::BiFormula as B;
        assert_eq!(
            parse_bi("[i][m]([i]p -> [i]q)").unwrap(),
            B::box_i(B::box_m(B::imp(
                B::box_i(B::atom("p")),
                B::box_i(B::atom("q"))
            )))
        );
        assert_eq!(parse_bi("<i>p").unwrap(), B::dia_i(B::atom("p")));
        assert_eq!(parse_bi("<m>p").unwrap(), B::dia_m(B::atom("p")));
    }

    #[test]
    fn print_parse_round_trip_spot_checks() {
        for text in [
            "p ~> q -> [](p & q)",
            "~(p | q) & r ~> p",
            "((p -> q) -> r) ~> (p ~> q) ~> r",
            "[]~p | ~[]p",
        ] {
            let f = parse_sto(text).unwrap();
            assert_eq!(parse_sto(&f.to_string()).unwrap(), f);
        }
        for text in ["[i][m]p -> ~[m][i]p", "<i>(p & [m]q) | F"] {
            let f = parse_bi(text).unwrap();
            assert_eq!(parse_bi(&f.to_string()).unwrap(), f);
        }
    }
}
