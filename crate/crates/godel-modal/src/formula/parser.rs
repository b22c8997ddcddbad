//! Keyword-based ASCII grammar for formulas.
//!
//! ```text
//! formula := coimpl
//! coimpl  := impl (("-<" | "icoimpl") impl)*       left-associative
//! impl    := or (("->" | "iimpl") impl)?           right-associative
//! or      := and (("|" | "ior") and)*
//! and     := unary (("&" | "iand") unary)*
//! unary   := PREFIX unary | atom
//! atom    := VARIABLE | "0" | "1" | "B" | "N" | "(" formula ")"
//! ```
//!
//! `PREFIX` is one of `inv neg conf snot delta isnot idelta box dia ibox
//! idia box1 dia1 box2 dia2`; variables match `[a-z][a-z0-9_]*` and must not
//! collide with a keyword.

use super::{Formula, FormulaError};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Prefix(&'static str),
    Zero,
    One,
    B,
    N,
    Amp,
    Pipe,
    Arrow,
    CoArrow,
    IAnd,
    IOr,
    IImpl,
    ICoimpl,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Prefix(s) => format!("`{s}`"),
            Tok::Zero => "`0`".into(),
            Tok::One => "`1`".into(),
            Tok::B => "`B`".into(),
            Tok::N => "`N`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::CoArrow => "`-<`".into(),
            Tok::IAnd => "`iand`".into(),
            Tok::IOr => "`ior`".into(),
            Tok::IImpl => "`iimpl`".into(),
            Tok::ICoimpl => "`icoimpl`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

const PREFIX_KEYWORDS: &[&str] = &[
    "inv", "neg", "conf", "snot", "delta", "isnot", "idelta", "box", "dia", "ibox", "idia",
    "box1", "dia1", "box2", "dia2",
];

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, FormulaError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '&' => {
                toks.push((Tok::Amp, i));
                i += 1;
            }
            '|' => {
                toks.push((Tok::Pipe, i));
                i += 1;
            }
            '0' => {
                toks.push((Tok::Zero, i));
                i += 1;
            }
            '1' => {
                toks.push((Tok::One, i));
                i += 1;
            }
            'B' => {
                toks.push((Tok::B, i));
                i += 1;
            }
            'N' => {
                toks.push((Tok::N, i));
                i += 1;
            }
            '-' => {
                let next = bytes.get(i + 1).map(|&b| b as char);
                match next {
                    Some('>') => {
                        toks.push((Tok::Arrow, i));
                        i += 2;
                    }
                    Some('<') => {
                        toks.push((Tok::CoArrow, i));
                        i += 2;
                    }
                    _ => {
                        return Err(FormulaError::Syntax {
                            position: i,
                            expected: "`->` or `-<`".into(),
                            found: "`-`".into(),
                        })
                    }
                }
            }
            'a'..='z' => {
                let start = i;
                while i < bytes.len()
                    && matches!(bytes[i] as char, 'a'..='z' | '0'..='9' | '_')
                {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "iand" => Tok::IAnd,
                    "ior" => Tok::IOr,
                    "iimpl" => Tok::IImpl,
                    "icoimpl" => Tok::ICoimpl,
                    w if PREFIX_KEYWORDS.contains(&w) => {
                        Tok::Prefix(PREFIX_KEYWORDS.iter().find(|k| **k == w).unwrap())
                    }
                    _ => Tok::Ident(word.to_string()),
                };
                toks.push((tok, start));
            }
            _ => {
                return Err(FormulaError::Syntax {
                    position: i,
                    expected: "a formula token".into(),
                    found: format!("`{c}`"),
                })
            }
        }
    }
    toks.push((Tok::End, text.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        self.pos += 1;
        t
    }

    fn err(&self, expected: &str) -> FormulaError {
        FormulaError::Syntax {
            position: self.here(),
            expected: expected.into(),
            found: self.peek().describe(),
        }
    }

    fn coimpl(&mut self) -> Result<Formula, FormulaError> {
        let mut left = self.impl_()?;
        loop {
            let info = match self.peek() {
                Tok::CoArrow => false,
                Tok::ICoimpl => true,
                _ => return Ok(left),
            };
            self.bump();
            let right = self.impl_()?;
            left = if info {
                Formula::ICoimpl(Box::new(left), Box::new(right))
            } else {
                Formula::Coimpl(Box::new(left), Box::new(right))
            };
        }
    }

    fn impl_(&mut self) -> Result<Formula, FormulaError> {
        let left = self.or()?;
        let info = match self.peek() {
            Tok::Arrow => false,
            Tok::IImpl => true,
            _ => return Ok(left),
        };
        self.bump();
        let right = self.impl_()?; // right-associative
        Ok(if info {
            Formula::IImpl(Box::new(left), Box::new(right))
        } else {
            Formula::Impl(Box::new(left), Box::new(right))
        })
    }

    fn or(&mut self) -> Result<Formula, FormulaError> {
        let mut left = self.and()?;
        loop {
            let info = match self.peek() {
                Tok::Pipe => false,
                Tok::IOr => true,
                _ => return Ok(left),
            };
            self.bump();
            let right = self.and()?;
            left = if info {
                Formula::IOr(Box::new(left), Box::new(right))
            } else {
                Formula::Or(Box::new(left), Box::new(right))
            };
        }
    }

    fn and(&mut self) -> Result<Formula, FormulaError> {
        let mut left = self.unary()?;
        loop {
            let info = match self.peek() {
                Tok::Amp => false,
                Tok::IAnd => true,
                _ => return Ok(left),
            };
            self.bump();
            let right = self.unary()?;
            left = if info {
                Formula::IAnd(Box::new(left), Box::new(right))
            } else {
                Formula::And(Box::new(left), Box::new(right))
            };
        }
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        if let Tok::Prefix(kw) = self.peek() {
            let kw = *kw;
            self.bump();
            let arg = Box::new(self.unary()?);
            return Ok(match kw {
                "inv" => Formula::Inv(arg),
                "neg" => Formula::Neg(arg),
                "conf" => Formula::Conf(arg),
                "snot" => Formula::SNot(arg),
                "delta" => Formula::Delta(arg),
                "isnot" => Formula::ISNot(arg),
                "idelta" => Formula::IDelta(arg),
                "box" => Formula::BoxM(arg),
                "dia" => Formula::DiaM(arg),
                "ibox" => Formula::IBox(arg),
                "idia" => Formula::IDia(arg),
                "box1" => Formula::Box1(arg),
                "dia1" => Formula::Dia1(arg),
                "box2" => Formula::Box2(arg),
                "dia2" => Formula::Dia2(arg),
                _ => unreachable!(),
            });
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, FormulaError> {
        match self.peek() {
            Tok::Ident(_) => {
                if let Tok::Ident(name) = self.bump() {
                    Ok(Formula::Var(name))
                } else {
                    unreachable!()
                }
            }
            Tok::Zero => {
                self.bump();
                Ok(Formula::Zero)
            }
            Tok::One => {
                self.bump();
                Ok(Formula::One)
            }
            Tok::B => {
                self.bump();
                Ok(Formula::Both)
            }
            Tok::N => {
                self.bump();
                Ok(Formula::Neither)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.coimpl()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.err("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.err("a variable, constant, prefix operator, or `(`")),
        }
    }
}

/// Parses a formula from the ASCII grammar.
pub fn parse(text: &str) -> Result<Formula, FormulaError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.coimpl()?;
    if *p.peek() != Tok::End {
        return Err(p.err("end of input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Formula::*;

    fn b(f: Formula) -> Box<Formula> {
        Box::new(f)
    }

    #[test]
    fn smallest_implication() {
        assert_eq!(
            parse("p -> p").unwrap(),
            Impl(b(Formula::var("p")), b(Formula::var("p")))
        );
    }

    #[test]
    fn mixed_modalities_and_conflation() {
        // box(p -> idia(neg q)) or conf r
        let expected = Or(
            b(BoxM(b(Impl(
                b(Formula::var("p")),
                b(IDia(b(Neg(b(Formula::var("q")))))),
            )))),
            b(Conf(b(Formula::var("r")))),
        );
        assert_eq!(parse("box(p -> idia (neg q)) | conf r").unwrap(), expected);
        assert_eq!(parse("box(p -> idia neg q) | conf r").unwrap(), expected);
    }

    #[test]
    fn malformed_input_reports_position() {
        match parse("p -> -> q") {
            Err(FormulaError::Syntax { position, .. }) => assert_eq!(position, 5),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(parse("").is_err());
        assert!(parse("p q").is_err());
        assert!(parse("(p").is_err());
        assert!(parse("p - q").is_err());
    }

    #[test]
    fn precedence_and_associativity() {
        // & binds tighter than |, which binds tighter than ->.
        assert_eq!(
            parse("p & q | r -> s").unwrap(),
            Impl(
                b(Or(
                    b(And(b(Formula::var("p")), b(Formula::var("q")))),
                    b(Formula::var("r"))
                )),
                b(Formula::var("s"))
            )
        );
        // -> is right-associative.
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            Impl(
                b(Formula::var("p")),
                b(Impl(b(Formula::var("q")), b(Formula::var("r"))))
            )
        );
        // -< is left-associative and binds loosest.
        assert_eq!(
            parse("p -< q -< r").unwrap(),
            Coimpl(
                b(Coimpl(b(Formula::var("p")), b(Formula::var("q")))),
                b(Formula::var("r"))
            )
        );
        // Prefix operators bind tightest.
        assert_eq!(
            parse("inv p & q").unwrap(),
            And(b(Inv(b(Formula::var("p")))), b(Formula::var("q")))
        );
        assert_eq!(parse("inv inv p").unwrap(), Inv(b(Inv(b(Formula::var("p"))))));
    }

    #[test]
    fn keywords_are_reserved() {
        assert!(parse("box").is_err()); // prefix operator without argument
        assert_eq!(parse("boxer").unwrap(), Formula::var("boxer"));
        assert_eq!(parse("inv0").unwrap(), Formula::var("inv0"));
    }
}
