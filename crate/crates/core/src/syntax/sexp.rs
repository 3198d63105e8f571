//! Minimal s-expression reader that keeps source positions.
//!
//! Atoms are maximal runs of characters other than whitespace, parentheses
//! and `;`. A `;` starts a comment running to the end of the line.

use std::fmt;

/// 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(s, _) => Some(s),
            Sexp::List(..) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items, _) => Some(items),
            Sexp::Atom(..) => None,
        }
    }

    /// Head symbol of a non-empty list whose first element is an atom.
    pub fn head(&self) -> Option<&str> {
        self.as_list().and_then(|items| items.first()).and_then(Sexp::as_atom)
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(s, _) => f.write_str(s),
            Sexp::List(items, _) => {
                f.write_str("(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{it}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReadError {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for ReadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ReadError {}

enum Token {
    Open(Pos),
    Close(Pos),
    Atom(String, Pos),
}

fn tokenize(src: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = src.chars().peekable();
    let mut current: Option<(String, Pos)> = None;
    let flush = |current: &mut Option<(String, Pos)>, out: &mut Vec<Token>| {
        if let Some((s, p)) = current.take() {
            out.push(Token::Atom(s, p));
        }
    };
    while let Some(c) = chars.next() {
        let here = Pos { line, col };
        match c {
            '(' => {
                flush(&mut current, &mut out);
                out.push(Token::Open(here));
            }
            ')' => {
                flush(&mut current, &mut out);
                out.push(Token::Close(here));
            }
            ';' => {
                flush(&mut current, &mut out);
                while let Some(&n) = chars.peek() {
                    if n == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            c if c.is_whitespace() => flush(&mut current, &mut out),
            c => match &mut current {
                Some((s, _)) => s.push(c),
                None => current = Some((c.to_string(), here)),
            },
        }
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    flush(&mut current, &mut out);
    out
}

/// Reads every top-level s-expression in `src`.
pub fn read_all(src: &str) -> Result<Vec<Sexp>, ReadError> {
    let mut stack: Vec<(Vec<Sexp>, Pos)> = Vec::new();
    let mut top = Vec::new();
    for tok in tokenize(src) {
        match tok {
            Token::Open(p) => stack.push((Vec::new(), p)),
            Token::Close(p) => {
                let (items, start) = stack.pop().ok_or(ReadError { pos: p, message: "unbalanced `)`".into() })?;
                let list = Sexp::List(items, start);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(list),
                    None => top.push(list),
                }
            }
            Token::Atom(s, p) => match stack.last_mut() {
                Some((parent, _)) => parent.push(Sexp::Atom(s, p)),
                None => top.push(Sexp::Atom(s, p)),
            },
        }
    }
    if let Some((_, start)) = stack.pop() {
        return Err(ReadError { pos: start, message: "unclosed `(`".into() });
    }
    Ok(top)
}

/// Reads exactly one s-expression.
pub fn read_one(src: &str) -> Result<Sexp, ReadError> {
    let mut all = read_all(src)?;
    match all.len() {
        1 => Ok(all.pop().expect("length checked")),
        0 => Err(ReadError { pos: Pos { line: 1, col: 1 }, message: "empty input".into() }),
        _ => Err(ReadError { pos: all[1].pos(), message: "trailing input after expression".into() }),
    }
}

/// Token stream of `src` joined by single spaces, with comments dropped and
/// no space after `(` or before `)`.
pub fn normalize_whitespace(src: &str) -> String {
    let mut out = String::new();
    let mut prev_open = true;
    for tok in tokenize(src) {
        match tok {
            Token::Open(_) => {
                if !prev_open {
                    out.push(' ');
                }
                out.push('(');
                prev_open = true;
            }
            Token::Close(_) => {
                out.push(')');
                prev_open = false;
            }
            Token::Atom(s, _) => {
                if !prev_open {
                    out.push(' ');
                }
                out.push_str(&s);
                prev_open = false;
            }
        }
    }
    out
}
