//! Tokenizer and recursive-descent parser for the model format.
//!
//! ```text
//! document := ("poset" | "orthoposet" | "repsys") NAME "{" body "}"
//! poset    := "elements" NAME* ";" "covers" (NAME "<" NAME)*
//! ortho    := poset ";" "ortho" (NAME ":" NAME)*
//! repsys   := [item (";" item)*]
//! item     := "view" NAME "=" ("poset" | "orthoposet") "{" body "}"
//!           | "map" NAME "<" NAME "{" (NAME "->" NAME)* [";"] ["*" "->" NAME] "}"
//! ```
//!
//! The `;` before a map's default clause is present exactly when the map has
//! explicit entries. Names are runs of ASCII letters, digits, `_`, `'` and
//! `.`; `#` starts a comment that runs to the end of the line.

use thiserror::Error;

use super::document::{Body, MapSpec, ModelDocument, OrthoSpec, PosetSpec, RepsysItem, RepsysSpec, ViewSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    Name(String),
    Sym(&'static str),
}

#[derive(Debug, Clone)]
struct Spanned {
    token: Token,
    line: usize,
    column: usize,
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '.')
}

/// Splits `text` into tokens, dropping whitespace and comments.
pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    Ok(lex(text)?.into_iter().map(|s| s.token).collect())
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    for (l, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut c = 0;
        while c < chars.len() {
            let ch = chars[c];
            let (line, column) = (l + 1, c + 1);
            if ch == '#' {
                break;
            }
            if ch.is_whitespace() {
                c += 1;
                continue;
            }
            let token = if is_name_char(ch) {
                let start = c;
                while c < chars.len() && is_name_char(chars[c]) {
                    c += 1;
                }
                Token::Name(chars[start..c].iter().collect())
            } else if ch == '-' && chars.get(c + 1) == Some(&'>') {
                c += 2;
                Token::Sym("->")
            } else {
                let sym = match ch {
                    '{' => "{",
                    '}' => "}",
                    ';' => ";",
                    '=' => "=",
                    '<' => "<",
                    ':' => ":",
                    '*' => "*",
                    _ => {
                        return Err(ParseError {
                            line,
                            column,
                            message: format!("unexpected character `{ch}`"),
                        })
                    }
                };
                c += 1;
                Token::Sym(sym)
            };
            out.push(Spanned { token, line, column });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

// Listed entries and the optional `*` default.
type MapBody = (Vec<(String, String)>, Option<String>);

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|s| &s.token)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (line, column) = self.tokens.get(self.pos).map_or(self.end, |s| (s.line, s.column));
        Err(ParseError {
            line,
            column,
            message: message.into(),
        })
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Token::Name(n)) => format!("`{n}`"),
            Some(Token::Sym(s)) => format!("`{s}`"),
        }
    }

    fn at_sym(&self, sym: &str) -> bool {
        matches!(self.peek(), Some(Token::Sym(s)) if *s == sym)
    }

    fn at_name(&self) -> bool {
        matches!(self.peek(), Some(Token::Name(_)))
    }

    fn expect_sym(&mut self, sym: &str) -> Result<(), ParseError> {
        if self.at_sym(sym) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected `{sym}`, found {}", self.describe()))
        }
    }

    fn name(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Token::Name(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => self.error(format!("expected a name, found {}", self.describe())),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Token::Name(n)) if n == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => self.error(format!("expected `{kw}`, found {}", self.describe())),
        }
    }

    // NAME sep NAME, repeated while a name follows
    fn pairs(&mut self, sep: &str) -> Result<Vec<(String, String)>, ParseError> {
        let mut out = Vec::new();
        while self.at_name() {
            let a = self.name()?;
            self.expect_sym(sep)?;
            out.push((a, self.name()?));
        }
        Ok(out)
    }

    fn poset_body(&mut self) -> Result<PosetSpec, ParseError> {
        self.keyword("elements")?;
        let mut elements = Vec::new();
        while self.at_name() {
            elements.push(self.name()?);
        }
        self.expect_sym(";")?;
        self.keyword("covers")?;
        let covers = self.pairs("<")?;
        Ok(PosetSpec { elements, covers })
    }

    fn ortho_body(&mut self) -> Result<OrthoSpec, ParseError> {
        let poset = self.poset_body()?;
        self.expect_sym(";")?;
        self.keyword("ortho")?;
        let ortho = self.pairs(":")?;
        Ok(OrthoSpec { poset, ortho })
    }

    fn map_body(&mut self) -> Result<MapBody, ParseError> {
        let entries = self.pairs("->")?;
        let default = if !entries.is_empty() && self.at_sym(";") {
            self.pos += 1;
            Some(self.default_clause()?)
        } else if entries.is_empty() && self.at_sym("*") {
            Some(self.default_clause()?)
        } else {
            None
        };
        Ok((entries, default))
    }

    fn default_clause(&mut self) -> Result<String, ParseError> {
        self.expect_sym("*")?;
        self.expect_sym("->")?;
        self.name()
    }

    fn repsys_item(&mut self) -> Result<RepsysItem, ParseError> {
        match self.peek() {
            Some(Token::Name(n)) if n == "view" => {
                self.pos += 1;
                let name = self.name()?;
                self.expect_sym("=")?;
                let spec = match self.peek() {
                    Some(Token::Name(k)) if k == "poset" => {
                        self.pos += 1;
                        self.expect_sym("{")?;
                        ViewSpec::Poset(self.poset_body()?)
                    }
                    Some(Token::Name(k)) if k == "orthoposet" => {
                        self.pos += 1;
                        self.expect_sym("{")?;
                        ViewSpec::Orthoposet(self.ortho_body()?)
                    }
                    _ => {
                        return self.error(format!(
                            "expected `poset` or `orthoposet`, found {}",
                            self.describe()
                        ))
                    }
                };
                self.expect_sym("}")?;
                Ok(RepsysItem::View { name, spec })
            }
            Some(Token::Name(n)) if n == "map" => {
                self.pos += 1;
                let target = self.name()?;
                self.expect_sym("<")?;
                let source = self.name()?;
                self.expect_sym("{")?;
                let (entries, default) = self.map_body()?;
                self.expect_sym("}")?;
                Ok(RepsysItem::Map(MapSpec {
                    target,
                    source,
                    entries,
                    default,
                }))
            }
            _ => self.error(format!("expected `view` or `map`, found {}", self.describe())),
        }
    }

    fn repsys_body(&mut self) -> Result<RepsysSpec, ParseError> {
        let mut items = Vec::new();
        if self.at_sym("}") {
            return Ok(RepsysSpec { items });
        }
        items.push(self.repsys_item()?);
        while self.at_sym(";") {
            self.pos += 1;
            items.push(self.repsys_item()?);
        }
        Ok(RepsysSpec { items })
    }

    fn document(&mut self) -> Result<ModelDocument, ParseError> {
        let kind = match self.peek() {
            Some(Token::Name(k)) if matches!(k.as_str(), "poset" | "orthoposet" | "repsys") => k.clone(),
            _ => {
                return self.error(format!(
                    "expected `poset`, `orthoposet` or `repsys`, found {}",
                    self.describe()
                ))
            }
        };
        self.pos += 1;
        let name = self.name()?;
        self.expect_sym("{")?;
        let body = match kind.as_str() {
            "poset" => Body::Poset(self.poset_body()?),
            "orthoposet" => Body::Orthoposet(self.ortho_body()?),
            _ => Body::Repsys(self.repsys_body()?),
        };
        self.expect_sym("}")?;
        if self.peek().is_some() {
            return self.error(format!("unexpected {} after the model", self.describe()));
        }
        Ok(ModelDocument { name, body })
    }
}

/// Parses one model document.
pub fn parse(text: &str) -> Result<ModelDocument, ParseError> {
    let tokens = lex(text)?;
    let lines = text.lines().count().max(1);
    let last_len = text.lines().last().map_or(0, |l| l.chars().count());
    Parser {
        tokens,
        pos: 0,
        end: (lines, last_len + 1),
    }
    .document()
}
