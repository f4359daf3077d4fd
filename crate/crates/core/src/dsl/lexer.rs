//! Tokeniser. Mathematical symbols are folded onto their ASCII spellings.

use crate::error::{Error, Result};
use crate::rational::Rat;

#[derive(Clone, Debug, PartialEq)]
pub enum TokKind {
    Ident(String),
    Str(String),
    Num(Rat),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tok {
    pub kind: TokKind,
    pub line: usize,
    pub col: usize,
    /// byte offsets into the source
    pub start: usize,
    pub end: usize,
}

const SYMBOLS: &[(&str, &str)] = &[
    ("<=", "<="),
    (">=", ">="),
    ("!=", "!="),
    ("≤", "<="),
    ("≥", ">="),
    ("≠", "!="),
    ("∨", "v"),
    ("∧", "^"),
    ("(", "("),
    (")", ")"),
    ("[", "["),
    ("]", "]"),
    ("{", "{"),
    ("}", "}"),
    (",", ","),
    (";", ";"),
    (":", ":"),
    ("|", "|"),
    ("&", "&"),
    ("+", "+"),
    ("-", "-"),
    ("<", "<"),
    (">", ">"),
    ("=", "="),
    ("^", "^"),
    ("⦅", "⦅"),
    ("⦆", "⦆"),
];

const WORDS: &[(&str, &str)] =
    &[("∞", "inf"), ("◇", "dia"), ("□", "box"), ("⊠", "boxtimes"), ("⋁", "V"), ("⊔", "D"), ("ℤ", "Z"), ("ℚ", "Q")];

pub fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    let bytes = src.as_bytes();
    let err = |line, col, message: String| Error::Parse { line, col, message };
    while i < src.len() {
        let rest = &src[i..];
        let c = rest.chars().next().expect("nonempty");
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += c.len_utf8();
            col += 1;
            continue;
        }
        if c == '#' {
            while i < src.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let (kind, len) = if c.is_ascii_alphabetic() || c == '_' {
            let len = rest
                .char_indices()
                .find(|&(_, ch)| !(ch.is_ascii_alphanumeric() || ch == '_' || ch == '\''))
                .map(|(k, _)| k)
                .unwrap_or(rest.len());
            (TokKind::Ident(rest[..len].to_string()), len)
        } else if c.is_ascii_digit() {
            let digits = |s: &str| s.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(s.len());
            let mut len = digits(rest);
            if rest[len..].starts_with('/') && rest[len + 1..].starts_with(|ch: char| ch.is_ascii_digit()) {
                len += 1 + digits(&rest[len + 1..]);
            }
            let r = crate::rational::parse_rat(&rest[..len]).map_err(|e| err(line, col, e.to_string()))?;
            (TokKind::Num(r), len)
        } else if c == '"' {
            let mut out = String::new();
            let mut chars = rest.char_indices().skip(1);
            let mut closed = None;
            while let Some((k, ch)) = chars.next() {
                match ch {
                    '"' => {
                        closed = Some(k + 1);
                        break;
                    }
                    '\\' => match chars.next() {
                        Some((_, e)) => out.push(e),
                        None => break,
                    },
                    '\n' => break,
                    other => out.push(other),
                }
            }
            let Some(len) = closed else {
                return Err(err(line, col, "unterminated string".into()));
            };
            (TokKind::Str(out), len)
        } else if let Some((s, canon)) = SYMBOLS.iter().find(|(s, _)| rest.starts_with(s)) {
            (TokKind::Sym(canon), s.len())
        } else if let Some((s, canon)) = WORDS.iter().find(|(s, _)| rest.starts_with(s)) {
            (TokKind::Ident(canon.to_string()), s.len())
        } else {
            return Err(err(line, col, format!("unexpected character {c:?}")));
        };
        toks.push(Tok { kind, line, col, start, end: start + len });
        col += src[i..i + len].chars().count();
        i += len;
    }
    toks.push(Tok { kind: TokKind::Eof, line, col, start: src.len(), end: src.len() });
    Ok(toks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_folding() {
        let toks = tokenize("rel ◇⦅0,1⦆ ≤ 1;\n  # note\n  x").unwrap();
        assert_eq!(toks[1].kind, TokKind::Ident("dia".into()));
        assert_eq!(toks[2].kind, TokKind::Sym("⦅"));
        assert_eq!((toks[2].line, toks[2].col), (1, 6));
        let x = &toks[toks.len() - 2];
        assert_eq!((x.line, x.col), (3, 3));
    }

    #[test]
    fn rationals_and_primes() {
        let toks = tokenize("p'+1/2").unwrap();
        assert_eq!(toks[0].kind, TokKind::Ident("p'".into()));
        assert_eq!(toks[2].kind, TokKind::Num(Rat::new(1, 2)));
    }

    #[test]
    fn bad_character_reports_position() {
        match tokenize("rel a\n  $") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 3)),
            other => panic!("{other:?}"),
        }
    }
}
