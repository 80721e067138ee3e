use crate::model::Rgb;

use super::diag::{Diagnostic, Span};

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    Number(f64),
    Str(String),
    Color(Rgb),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eq,
    Arrow,
    Semi,
    At,
    Dot,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Number(n) => format!("number `{n}`"),
            Tok::Str(_) => "string".into(),
            Tok::Color(c) => format!("color `{c}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Semi => "`;`".into(),
            Tok::At => "`@`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

struct Cursor<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).map(|c| c.1)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |c| c.0)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn here(&self) -> Span {
        Span { line: self.line, col: self.col, len: 0, offset: self.offset() }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_lowercase()
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_'
}

/// Tokenizes the whole input. Lexical problems are reported and skipped so
/// parsing can continue.
pub fn lex(src: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    let mut cur = Cursor { src, chars: src.char_indices().collect(), pos: 0, line: 1, col: 1 };
    let mut toks: Vec<Token> = Vec::new();
    let mut diags = Vec::new();

    while let Some(c) = cur.peek() {
        let start = cur.here();
        let single = |tok| Some(tok);
        let tok = match c {
            ' ' | '\t' | '\r' | '\n' => {
                cur.bump();
                continue;
            }
            '#' => {
                let after_value_slot = matches!(
                    toks.last().map(|t| &t.tok),
                    Some(Tok::Eq | Tok::LParen | Tok::Comma | Tok::LBracket)
                );
                let hex: String = (1..=6).filter_map(|k| cur.peek_at(k)).collect();
                let terminated = cur.peek_at(7).is_none_or(|c| !c.is_ascii_alphanumeric() && c != '_');
                if after_value_slot && hex.len() == 6 && hex.chars().all(|c| c.is_ascii_hexdigit()) && terminated {
                    for _ in 0..7 {
                        cur.bump();
                    }
                    Some(Tok::Color(Rgb::parse_hex(&format!("#{hex}")).expect("checked hex digits")))
                } else {
                    while let Some(c) = cur.peek() {
                        if c == '\n' {
                            break;
                        }
                        cur.bump();
                    }
                    continue;
                }
            }
            '{' => { cur.bump(); single(Tok::LBrace) }
            '}' => { cur.bump(); single(Tok::RBrace) }
            '(' => { cur.bump(); single(Tok::LParen) }
            ')' => { cur.bump(); single(Tok::RParen) }
            '[' => { cur.bump(); single(Tok::LBracket) }
            ']' => { cur.bump(); single(Tok::RBracket) }
            ',' => { cur.bump(); single(Tok::Comma) }
            '=' => { cur.bump(); single(Tok::Eq) }
            ';' => { cur.bump(); single(Tok::Semi) }
            '@' => { cur.bump(); single(Tok::At) }
            '.' => { cur.bump(); single(Tok::Dot) }
            '-' if cur.peek_at(1) == Some('>') => {
                cur.bump();
                cur.bump();
                Some(Tok::Arrow)
            }
            '-' | '0'..='9' => {
                let mut text = String::new();
                if c == '-' {
                    text.push(c);
                    cur.bump();
                }
                let mut ok = false;
                while let Some(d) = cur.peek().filter(char::is_ascii_digit) {
                    text.push(d);
                    cur.bump();
                    ok = true;
                }
                if ok && cur.peek() == Some('.') && cur.peek_at(1).is_some_and(|d| d.is_ascii_digit()) {
                    text.push('.');
                    cur.bump();
                    while let Some(d) = cur.peek().filter(char::is_ascii_digit) {
                        text.push(d);
                        cur.bump();
                    }
                }
                match text.parse::<f64>() {
                    Ok(n) if ok && n.is_finite() => Some(Tok::Number(n)),
                    _ => {
                        diags.push(Diagnostic::error("lex-error", Span { len: text.chars().count().max(1), ..start }, "malformed number"));
                        None
                    }
                }
            }
            '"' => {
                cur.bump();
                let mut text = String::new();
                let mut closed = false;
                while let Some(c) = cur.peek() {
                    if c == '\n' {
                        break;
                    }
                    cur.bump();
                    match c {
                        '"' => {
                            closed = true;
                            break;
                        }
                        '\\' => match cur.bump() {
                            Some('n') => text.push('\n'),
                            Some('t') => text.push('\t'),
                            Some('"') => text.push('"'),
                            Some('\\') => text.push('\\'),
                            Some(other) => {
                                diags.push(Diagnostic::error("lex-error", cur.here(), format!("unknown escape `\\{other}`")));
                            }
                            None => break,
                        },
                        _ => text.push(c),
                    }
                }
                if !closed {
                    let len = cur.col.saturating_sub(start.col).max(1);
                    diags.push(Diagnostic::error("lex-error", Span { len, ..start }, "unterminated string"));
                }
                Some(Tok::Str(text))
            }
            c if is_ident_start(c) => {
                let mut text = String::new();
                while let Some(c) = cur.peek().filter(|c| is_ident_continue(*c)) {
                    text.push(c);
                    cur.bump();
                }
                Some(Tok::Ident(text))
            }
            other => {
                cur.bump();
                let hint = if other.is_ascii_uppercase() { " (identifiers are lowercase)" } else { "" };
                diags.push(Diagnostic::error("lex-error", Span { len: 1, ..start }, format!("unexpected character `{other}`{hint}")));
                None
            }
        };
        if let Some(tok) = tok {
            let len = if start.line == cur.line { cur.col - start.col } else { 1 };
            toks.push(Token { tok, span: Span { len, ..start } });
        }
    }
    toks.push(Token { tok: Tok::Eof, span: cur.here() });
    (toks, diags)
}
