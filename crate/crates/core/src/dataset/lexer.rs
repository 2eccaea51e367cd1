//! Tokenizer shared by the Turtle subset and the query-pattern syntax.

use std::iter::Peekable;
use std::str::CharIndices;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    PrefixDirective,
    IriRef(String),
    PName { prefix: String, local: String },
    A,
    Integer(i64),
    Str(String),
    Dot,
    Semicolon,
    Comma,
    // query mode only
    Var(String),
    LBrace,
    RBrace,
    Keyword(String),
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::PrefixDirective => "'@prefix'".into(),
            Tok::IriRef(s) => format!("<{s}>"),
            Tok::PName { prefix, local } => format!("'{prefix}:{local}'"),
            Tok::A => "'a'".into(),
            Tok::Integer(i) => format!("integer {i}"),
            Tok::Str(_) => "string literal".into(),
            Tok::Dot => "'.'".into(),
            Tok::Semicolon => "';'".into(),
            Tok::Comma => "','".into(),
            Tok::Var(v) => format!("?{v}"),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::Keyword(k) => format!("'{k}'"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct LexError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

pub(crate) struct Lexer<'a> {
    chars: Peekable<CharIndices<'a>>,
    line: usize,
    col: usize,
    query_mode: bool,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-'
}

impl<'a> Lexer<'a> {
    pub(crate) fn new(text: &'a str, query_mode: bool) -> Self {
        Self {
            chars: text.char_indices().peekable(),
            line: 1,
            col: 1,
            query_mode,
        }
    }

    pub(crate) fn tokenize(text: &'a str, query_mode: bool) -> Result<Vec<Spanned>, LexError> {
        let mut lexer = Lexer::new(text, query_mode);
        let mut out = Vec::new();
        while let Some(tok) = lexer.next_token()? {
            out.push(tok);
        }
        Ok(out)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next().map(|(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn err<T>(&self, line: usize, col: usize, message: impl Into<String>) -> Result<T, LexError> {
        Err(LexError {
            line,
            col,
            message: message.into(),
        })
    }

    fn next_token(&mut self) -> Result<Option<Spanned>, LexError> {
        loop {
            match self.peek() {
                None => return Ok(None),
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                Some(_) => break,
            }
        }
        let (line, col) = (self.line, self.col);
        let c = self.peek().expect("checked above");
        let tok = match c {
            '.' => {
                self.bump();
                Tok::Dot
            }
            ';' => {
                self.bump();
                Tok::Semicolon
            }
            ',' => {
                self.bump();
                Tok::Comma
            }
            '<' => self.iri_ref(line, col)?,
            '"' => self.string(line, col)?,
            '@' => {
                self.bump();
                let word = self.take_while(|c| c.is_ascii_alphabetic());
                if word == "prefix" {
                    Tok::PrefixDirective
                } else {
                    return self.err(line, col, format!("unsupported directive '@{word}'"));
                }
            }
            '?' if self.query_mode => {
                self.bump();
                let name = self.take_while(|c| c.is_alphanumeric() || c == '_');
                if name.is_empty() {
                    return self.err(line, col, "empty variable name");
                }
                Tok::Var(name)
            }
            '{' if self.query_mode => {
                self.bump();
                Tok::LBrace
            }
            '}' if self.query_mode => {
                self.bump();
                Tok::RBrace
            }
            '[' | '(' => {
                return self.err(line, col, "blank nodes and collections are not supported");
            }
            '_' if self.peek2() == Some(':') => {
                return self.err(line, col, "blank nodes are not supported");
            }
            c if c.is_ascii_digit()
                || ((c == '-' || c == '+') && self.peek2().is_some_and(|d| d.is_ascii_digit())) =>
            {
                self.number(line, col)?
            }
            c if c.is_alphabetic() || c == ':' => self.name(line, col)?,
            other => return self.err(line, col, format!("unexpected character '{other}'")),
        };
        Ok(Some(Spanned { tok, line, col }))
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }

    fn iri_ref(&mut self, line: usize, col: usize) -> Result<Tok, LexError> {
        self.bump();
        let mut s = String::new();
        loop {
            match self.bump() {
                None => return self.err(line, col, "unterminated IRI reference"),
                Some('>') => return Ok(Tok::IriRef(s)),
                Some(c) if c.is_whitespace() || "<\"{}|^`\\".contains(c) => {
                    return self.err(
                        line,
                        col,
                        format!(
                            "invalid character '{}' in IRI reference",
                            c.escape_default()
                        ),
                    );
                }
                Some(c) => s.push(c),
            }
        }
    }

    fn string(&mut self, line: usize, col: usize) -> Result<Tok, LexError> {
        self.bump();
        let mut s = String::new();
        loop {
            match self.bump() {
                None | Some('\n') => return self.err(line, col, "unterminated string literal"),
                Some('"') => break,
                Some('\\') => {
                    let esc = match self.bump() {
                        Some('"') => '"',
                        Some('\\') => '\\',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('t') => '\t',
                        other => {
                            let shown = other.map(|c| c.to_string()).unwrap_or_default();
                            return self.err(
                                self.line,
                                self.col,
                                format!("unsupported escape '\\{shown}'"),
                            );
                        }
                    };
                    s.push(esc);
                }
                Some(c) => s.push(c),
            }
        }
        if matches!(self.peek(), Some('@') | Some('^')) {
            return self.err(
                self.line,
                self.col,
                "language tags and datatypes are not supported",
            );
        }
        Ok(Tok::Str(s))
    }

    fn number(&mut self, line: usize, col: usize) -> Result<Tok, LexError> {
        let mut s = String::new();
        if let Some(sign @ ('-' | '+')) = self.peek() {
            s.push(sign);
            self.bump();
        }
        s.push_str(&self.take_while(|c| c.is_ascii_digit()));
        let decimal = self.peek() == Some('.') && self.peek2().is_some_and(|c| c.is_ascii_digit());
        if decimal || matches!(self.peek(), Some('e') | Some('E')) {
            return self.err(line, col, "only integer literals are supported");
        }
        s.parse::<i64>()
            .map(Tok::Integer)
            .or_else(|_| self.err(line, col, format!("integer literal '{s}' out of range")))
    }

    fn name(&mut self, line: usize, col: usize) -> Result<Tok, LexError> {
        let prefix = self.take_while(is_name_char);
        if self.peek() != Some(':') {
            return match prefix.as_str() {
                "a" => Ok(Tok::A),
                kw @ ("EXISTS" | "FILTER") if self.query_mode => Ok(Tok::Keyword(kw.to_string())),
                "true" | "false" => self.err(line, col, "boolean literals are not supported"),
                other => self.err(line, col, format!("unexpected bare word '{other}'")),
            };
        }
        self.bump();
        let mut local = String::new();
        // A '.' belongs to the local name only when more name characters follow it.
        loop {
            match self.peek() {
                Some(c) if is_name_char(c) => {
                    local.push(c);
                    self.bump();
                }
                Some('.') if self.peek2().is_some_and(is_name_char) && !local.is_empty() => {
                    local.push('.');
                    self.bump();
                }
                _ => break,
            }
        }
        Ok(Tok::PName { prefix, local })
    }
}
