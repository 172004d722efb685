//! Hand-rolled lexer for the program syntax.

use std::fmt;

use super::Span;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    /// Lowercase identifier: term variable or type parameter.
    Lower(String),
    /// Uppercase identifier: constructor, function, or predicate.
    Upper(String),
    /// Keyword: kind, sub, via, func, pred, mode, in, out, where.
    Keyword(String),
    /// Integer or decimal literal, kept verbatim.
    Number(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Colon,
    Arrow,
    Less,
    Slash,
    Bar,
    /// `:-`
    Neck,
    /// `?-`
    QueryNeck,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Lower(s) | Tok::Upper(s) | Tok::Keyword(s) | Tok::Number(s) => write!(f, "{s}"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::LBracket => write!(f, "["),
            Tok::RBracket => write!(f, "]"),
            Tok::Comma => write!(f, ","),
            Tok::Dot => write!(f, "."),
            Tok::Colon => write!(f, ":"),
            Tok::Arrow => write!(f, "->"),
            Tok::Less => write!(f, "<"),
            Tok::Slash => write!(f, "/"),
            Tok::Bar => write!(f, "|"),
            Tok::Neck => write!(f, ":-"),
            Tok::QueryNeck => write!(f, "?-"),
        }
    }
}

const KEYWORDS: &[&str] = &["kind", "sub", "via", "func", "pred", "mode", "in", "out", "where"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub span: Span,
    pub message: String,
}

pub fn lex(input: &str) -> Result<Vec<(Tok, Span)>, LexError> {
    let mut toks = Vec::new();
    let mut chars = input.chars().peekable();
    let mut line = 1usize;
    let mut col = 1usize;

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let span = Span { line, col };
        match c {
            '%' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump!();
                }
            }
            c if c.is_whitespace() => {
                bump!();
            }
            '(' => {
                bump!();
                toks.push((Tok::LParen, span));
            }
            ')' => {
                bump!();
                toks.push((Tok::RParen, span));
            }
            '[' => {
                bump!();
                toks.push((Tok::LBracket, span));
            }
            ']' => {
                bump!();
                toks.push((Tok::RBracket, span));
            }
            ',' => {
                bump!();
                toks.push((Tok::Comma, span));
            }
            '.' => {
                bump!();
                toks.push((Tok::Dot, span));
            }
            '<' => {
                bump!();
                toks.push((Tok::Less, span));
            }
            '/' => {
                bump!();
                toks.push((Tok::Slash, span));
            }
            '|' => {
                bump!();
                toks.push((Tok::Bar, span));
            }
            ':' => {
                bump!();
                if chars.peek() == Some(&'-') {
                    bump!();
                    toks.push((Tok::Neck, span));
                } else {
                    toks.push((Tok::Colon, span));
                }
            }
            '?' => {
                bump!();
                if chars.peek() == Some(&'-') {
                    bump!();
                    toks.push((Tok::QueryNeck, span));
                } else {
                    return Err(LexError { span, message: "expected '-' after '?'".into() });
                }
            }
            '-' => {
                bump!();
                if chars.peek() == Some(&'>') {
                    bump!();
                    toks.push((Tok::Arrow, span));
                } else {
                    return Err(LexError { span, message: "expected '>' after '-'".into() });
                }
            }
            c if c.is_ascii_digit() => {
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        text.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                // A decimal point must be followed by a digit; a bare '.'
                // after digits terminates the declaration instead.
                if chars.peek() == Some(&'.') {
                    let mut lookahead = chars.clone();
                    lookahead.next();
                    if lookahead.peek().is_some_and(|c| c.is_ascii_digit()) {
                        text.push('.');
                        bump!();
                        while let Some(&c) = chars.peek() {
                            if c.is_ascii_digit() {
                                text.push(c);
                                bump!();
                            } else {
                                break;
                            }
                        }
                    }
                }
                toks.push((Tok::Number(text), span));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        text.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                if KEYWORDS.contains(&text.as_str()) {
                    toks.push((Tok::Keyword(text), span));
                } else if text == "eps" {
                    // Reserved: used as the root-position suffix in generated
                    // parameter names.
                    return Err(LexError {
                        span,
                        message: "the identifier 'eps' is reserved".into(),
                    });
                } else if text.chars().next().unwrap().is_uppercase() {
                    toks.push((Tok::Upper(text), span));
                } else {
                    toks.push((Tok::Lower(text), span));
                }
            }
            other => {
                return Err(LexError { span, message: format!("unexpected character '{other}'") });
            }
        }
    }
    Ok(toks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_declaration() {
        let toks = lex("kind Int/0. % comment\n").unwrap();
        let kinds: Vec<&Tok> = toks.iter().map(|(t, _)| t).collect();
        assert_eq!(
            kinds,
            vec![
                &Tok::Keyword("kind".into()),
                &Tok::Upper("Int".into()),
                &Tok::Slash,
                &Tok::Number("0".into()),
                &Tok::Dot
            ]
        );
    }

    #[test]
    fn decimal_vs_terminator() {
        let toks = lex("Sqrt(6, 2.449).").unwrap();
        assert!(toks.iter().any(|(t, _)| t == &Tok::Number("2.449".into())));
        let toks = lex("Fact(3, 6).").unwrap();
        assert!(toks.iter().any(|(t, _)| t == &Tok::Number("6".into())));
        assert_eq!(toks.last().unwrap().0, Tok::Dot);
    }

    #[test]
    fn tracks_positions() {
        let toks = lex("kind\nInt/0.").unwrap();
        assert_eq!(toks[1].1, Span { line: 2, col: 1 });
    }

    #[test]
    fn rejects_reserved_eps() {
        assert!(lex("p(eps).").is_err());
    }
}
