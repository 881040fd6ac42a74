use std::fmt;

use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// `#assert-id` and friends, without the `#`.
    Directive(String),
    Lambda,
    BigLambda,
    Pi,
    Forall,
    Iota,
    Rho,
    RhoPlus,
    Sym,
    Beta,
    Star,
    Arrow,
    ErasedArrow,
    Equiv,
    Triangle,
    Equals,
    Colon,
    /// `.` used as a binder separator or declaration terminator.
    Dot,
    /// `.1` / `.2` glued to the preceding atom.
    Proj(u8),
    /// `·` or `@`.
    CDot,
    /// `-` immediately followed by its argument.
    Minus,
    /// Free-standing `-` separating a rewrite proof from its body.
    Dash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "identifier `{s}`"),
            Tok::Directive(s) => return write!(f, "`#{s}`"),
            Tok::Lambda => "λ",
            Tok::BigLambda => "Λ",
            Tok::Pi => "Π",
            Tok::Forall => "∀",
            Tok::Iota => "ι",
            Tok::Rho => "ρ",
            Tok::RhoPlus => "ρ+",
            Tok::Sym => "ς",
            Tok::Beta => "β",
            Tok::Star => "★",
            Tok::Arrow => "➔",
            Tok::ErasedArrow => "➾",
            Tok::Equiv => "≃",
            Tok::Triangle => "◂",
            Tok::Equals => "=",
            Tok::Colon => ":",
            Tok::Dot => ".",
            Tok::Proj(1) => ".1",
            Tok::Proj(_) => ".2",
            Tok::CDot => "·",
            Tok::Minus => "-",
            Tok::Dash => "-",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
        };
        write!(f, "`{s}`")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

const SYMBOL_CHARS: &[char] = &['λ', 'Λ', 'Π', 'ι', 'ρ', 'ς', 'β'];

fn ident_start(c: char) -> bool {
    (c.is_alphanumeric() || c == '_') && !SYMBOL_CHARS.contains(&c)
}

fn ident_continue(c: char) -> bool {
    ident_start(c) || c == '\'' || c == '′'
}

fn keyword(word: &str) -> Option<Tok> {
    Some(match word {
        "Pi" => Tok::Pi,
        "forall" => Tok::Forall,
        "iota" => Tok::Iota,
        "rho" => Tok::Rho,
        "beta" => Tok::Beta,
        _ => return None,
    })
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let peek = |i: usize| chars.get(i).copied();

    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let mut push = |tok: Tok, len: usize, i: &mut usize, col: &mut usize| {
            out.push(Token {
                tok,
                line: start_line,
                col: start_col,
            });
            *i += len;
            *col += len;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '-' && peek(i + 1) == Some('-') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c == '#' {
            let mut j = i + 1;
            while j < chars.len() && (ident_continue(chars[j]) || chars[j] == '-') {
                j += 1;
            }
            let word: String = chars[i + 1..j].iter().collect();
            if word.is_empty() {
                return Err(ParseError::lexical(line, col, "empty directive"));
            }
            let len = j - i;
            push(Tok::Directive(word), len, &mut i, &mut col);
            continue;
        }
        if ident_start(c) {
            let mut j = i + 1;
            loop {
                match peek(j) {
                    Some(d) if ident_continue(d) => j += 1,
                    // interior dash, as in `v2l-v2l`
                    Some('-') if peek(j + 1).is_some_and(ident_start) => j += 2,
                    _ => break,
                }
            }
            let word: String = chars[i..j].iter().collect();
            let len = j - i;
            if word == "rho" && peek(j) == Some('+') {
                push(Tok::RhoPlus, len + 1, &mut i, &mut col);
            } else {
                let tok = keyword(&word).unwrap_or(Tok::Ident(word));
                push(tok, len, &mut i, &mut col);
            }
            continue;
        }
        let two = (c, peek(i + 1));
        let (tok, len) = match two {
            ('-', Some('>')) => (Tok::Arrow, 2),
            ('=', Some('>')) => (Tok::ErasedArrow, 2),
            ('=', Some('=')) => (Tok::Equiv, 2),
            ('<', Some('|')) => (Tok::Triangle, 2),
            ('/', Some('\\')) => (Tok::BigLambda, 2),
            ('ρ', Some('+')) => (Tok::RhoPlus, 2),
            ('.', Some(d @ ('1' | '2'))) if !peek(i + 2).is_some_and(|n| n.is_ascii_digit()) => {
                (Tok::Proj(d as u8 - b'0'), 2)
            }
            ('-', next) => {
                if next.is_some_and(|n| n.is_whitespace()) || next.is_none() {
                    (Tok::Dash, 1)
                } else {
                    (Tok::Minus, 1)
                }
            }
            _ => {
                let tok = match c {
                    'λ' | '\\' => Tok::Lambda,
                    'Λ' => Tok::BigLambda,
                    'Π' => Tok::Pi,
                    '∀' => Tok::Forall,
                    'ι' => Tok::Iota,
                    'ρ' => Tok::Rho,
                    'ς' | '~' => Tok::Sym,
                    'β' => Tok::Beta,
                    '★' | '*' => Tok::Star,
                    '➔' | '→' => Tok::Arrow,
                    '➾' => Tok::ErasedArrow,
                    '≃' => Tok::Equiv,
                    '◂' => Tok::Triangle,
                    '=' => Tok::Equals,
                    ':' => Tok::Colon,
                    '.' => Tok::Dot,
                    '·' | '@' => Tok::CDot,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    ',' => Tok::Comma,
                    other => {
                        return Err(ParseError::lexical(
                            line,
                            col,
                            &format!("unexpected character `{other}`"),
                        ))
                    }
                };
                (tok, 1)
            }
        };
        push(tok, len, &mut i, &mut col);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn dashes() {
        assert_eq!(
            toks("cC -n x"),
            vec![
                Tok::Ident("cC".into()),
                Tok::Minus,
                Tok::Ident("n".into()),
                Tok::Ident("x".into())
            ]
        );
        assert_eq!(toks("v2l-v2l"), vec![Tok::Ident("v2l-v2l".into())]);
        assert_eq!(
            toks("ρ q - β"),
            vec![Tok::Rho, Tok::Ident("q".into()), Tok::Dash, Tok::Beta]
        );
        assert_eq!(
            toks("A -> B"),
            vec![Tok::Ident("A".into()), Tok::Arrow, Tok::Ident("B".into())]
        );
    }

    #[test]
    fn projections_and_dots() {
        assert_eq!(
            toks("xs.1.2 ."),
            vec![
                Tok::Ident("xs".into()),
                Tok::Proj(1),
                Tok::Proj(2),
                Tok::Dot
            ]
        );
        assert_eq!(
            toks("Nat. A"),
            vec![Tok::Ident("Nat".into()), Tok::Dot, Tok::Ident("A".into())]
        );
    }

    #[test]
    fn comments_and_positions() {
        let t = tokenize("-- hello\n  x").unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!((t[0].line, t[0].col), (2, 3));
    }

    #[test]
    fn rejects_stray_characters() {
        let err = tokenize("x\n  $").unwrap_err();
        assert!(err.to_string().contains("2:3"), "{err}");
    }

    #[test]
    fn primes_in_names() {
        assert_eq!(
            toks("v2lC' v2lC′"),
            vec![Tok::Ident("v2lC'".into()), Tok::Ident("v2lC′".into())]
        );
    }
}
