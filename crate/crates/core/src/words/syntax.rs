//! Text syntax.
//!
//! Symbols: `s1`, `e2`, `e`, `x`, `x@1`, `x@1;3`, `f1,2`, `s1:4`, `e1:4`,
//! `x@1:4`, `lam3`, `rho3`, `X`, `U`, `Ubar`. Words are whitespace-separated
//! symbols, with `1` for the empty word. Paths are written the same way, with
//! `i3` for the empty path at 3. Terms are `i3`, an edge, `(o t1 t2)` or `(p t1 t2)`.

use super::term::{TensorTerm, TermNode};
use super::{Path, Symbol, Word};
use crate::error::{Error, Result};

fn parse_error(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn number(text: &str) -> Option<usize> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

fn positive(text: &str) -> Option<usize> {
    number(text).filter(|&k| k > 0)
}

enum Atom {
    Symbol(Symbol),
    Identity(usize),
}

fn parse_atom(token: &str, position: usize, alphabet: &[String]) -> Result<Atom> {
    let bad = |msg: &str| parse_error(position, format!("{msg} in {token:?}"));
    match token {
        "X" => return Ok(Atom::Symbol(Symbol::Swap)),
        "U" => return Ok(Atom::Symbol(Symbol::Cap)),
        "Ubar" => return Ok(Atom::Symbol(Symbol::Cup)),
        "e" => return Ok(Atom::Symbol(Symbol::SingleE)),
        _ => {}
    }
    if let Some(rest) = token.strip_prefix("lam") {
        if let Some(n) = number(rest) {
            return Ok(Atom::Symbol(Symbol::Lambda(n)));
        }
    }
    if let Some(rest) = token.strip_prefix("rho") {
        if let Some(n) = number(rest) {
            return Ok(Atom::Symbol(Symbol::Rho(n)));
        }
    }
    if let Some(rest) = token.strip_prefix('i') {
        if let Some(n) = number(rest) {
            return Ok(Atom::Identity(n));
        }
    }
    if let Some(rest) = token.strip_prefix('f') {
        if let Some((a, b)) = rest.split_once(',') {
            let i = positive(a).ok_or_else(|| bad("bad first index"))?;
            let j = positive(b).ok_or_else(|| bad("bad second index"))?;
            return Ok(Atom::Symbol(Symbol::F(i, j)));
        }
    }
    for (prefix, leveled) in [("s", true), ("e", false)] {
        if let Some(rest) = token.strip_prefix(prefix) {
            if rest.starts_with(|c: char| c.is_ascii_digit()) {
                let (a, level) = match rest.split_once(':') {
                    Some((a, n)) => (a, Some(positive(n).ok_or_else(|| bad("bad level"))?)),
                    None => (rest, None),
                };
                let i = positive(a).ok_or_else(|| bad("bad index"))?;
                let symbol = match (leveled, level) {
                    (true, None) => Symbol::S(i),
                    (true, Some(n)) => Symbol::LevelS { i, n },
                    (false, None) => Symbol::E(i),
                    (false, Some(n)) => Symbol::LevelE { i, n },
                };
                return Ok(Atom::Symbol(symbol));
            }
        }
    }
    let (name, suffix) = match token.split_once('@') {
        Some((name, suffix)) => (name, Some(suffix)),
        None => (token, None),
    };
    let letter = alphabet
        .iter()
        .position(|a| a == name)
        .ok_or_else(|| parse_error(position, format!("unknown symbol {token:?}")))?
        as u16;
    let Some(suffix) = suffix else {
        return Ok(Atom::Symbol(Symbol::Letter(letter)));
    };
    if let Some((a, b)) = suffix.split_once(';') {
        let i = positive(a).ok_or_else(|| bad("bad position"))?;
        let j = positive(b).ok_or_else(|| bad("bad zero position"))?;
        return Ok(Atom::Symbol(Symbol::TaggedZero { letter, i, j }));
    }
    if let Some((a, b)) = suffix.split_once(':') {
        let i = positive(a).ok_or_else(|| bad("bad position"))?;
        let n = positive(b).ok_or_else(|| bad("bad level"))?;
        return Ok(Atom::Symbol(Symbol::LevelTagged { letter, i, n }));
    }
    let i = positive(suffix).ok_or_else(|| bad("bad position"))?;
    Ok(Atom::Symbol(Symbol::Tagged { letter, i }))
}

fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (k, c) in text.char_indices() {
        if c.is_whitespace() || c == '(' || c == ')' {
            if let Some(s) = start.take() {
                out.push((s, &text[s..k]));
            }
            if c == '(' || c == ')' {
                out.push((k, &text[k..k + 1]));
            }
        } else if start.is_none() {
            start = Some(k);
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out
}

/// Parses a monoid word; `""` and `"1"` both give the empty word.
pub fn parse_word(text: &str, alphabet: &[String]) -> Result<Word> {
    let toks = tokens(text);
    if toks.len() == 1 && toks[0].1 == "1" {
        return Ok(vec![]);
    }
    toks.into_iter()
        .map(|(pos, tok)| match parse_atom(tok, pos, alphabet)? {
            Atom::Symbol(s) => Ok(s),
            Atom::Identity(_) => Err(parse_error(pos, "identity paths are not word symbols")),
        })
        .collect()
}

/// Parses a path; `i3` is the empty path at 3.
pub fn parse_path(text: &str, alphabet: &[String]) -> Result<Path> {
    let toks = tokens(text);
    if toks.is_empty() {
        return Err(parse_error(0, "an empty path must be written i<n>"));
    }
    let mut edges = Vec::new();
    for &(pos, tok) in &toks {
        match parse_atom(tok, pos, alphabet)? {
            Atom::Identity(n) if toks.len() == 1 => return Ok(Path::empty(n)),
            Atom::Identity(_) => {
                return Err(parse_error(pos, "i<n> must stand alone"));
            }
            Atom::Symbol(s) if s.typing().is_some() => edges.push(s),
            Atom::Symbol(_) => return Err(parse_error(pos, format!("{tok:?} is not an edge"))),
        }
    }
    Path::from_edges(edges).map_err(|e| parse_error(toks[0].0, e.to_string()))
}

/// Parses a tensor term.
pub fn parse_term(text: &str, alphabet: &[String]) -> Result<TensorTerm> {
    let toks = tokens(text);
    let mut at = 0;
    let term = term_at(&toks, &mut at, alphabet, text.len())?;
    if at != toks.len() {
        return Err(parse_error(toks[at].0, "trailing input"));
    }
    Ok(term)
}

fn term_at(
    toks: &[(usize, &str)],
    at: &mut usize,
    alphabet: &[String],
    end: usize,
) -> Result<TensorTerm> {
    let Some(&(pos, tok)) = toks.get(*at) else {
        return Err(parse_error(end, "expected a term"));
    };
    *at += 1;
    match tok {
        "(" => {
            let Some(&(op_pos, op)) = toks.get(*at) else {
                return Err(parse_error(end, "expected o or p"));
            };
            *at += 1;
            if op != "o" && op != "p" {
                return Err(parse_error(op_pos, format!("expected o or p, found {op:?}")));
            }
            let mut parts = Vec::new();
            loop {
                match toks.get(*at) {
                    Some(&(_, ")")) => {
                        *at += 1;
                        break;
                    }
                    Some(_) => parts.push(term_at(toks, at, alphabet, end)?),
                    None => return Err(parse_error(end, "missing )")),
                }
            }
            if parts.len() < 2 {
                return Err(parse_error(pos, "an operator needs at least two terms"));
            }
            let mut parts = parts.into_iter();
            let mut acc = parts.next().unwrap();
            for t in parts {
                acc = if op == "p" {
                    TensorTerm::sum(acc, t)
                } else {
                    TensorTerm::compose(acc, t).map_err(|e| parse_error(pos, e.to_string()))?
                };
            }
            Ok(acc)
        }
        ")" => Err(parse_error(pos, "unexpected )")),
        _ => match parse_atom(tok, pos, alphabet)? {
            Atom::Identity(n) => Ok(TensorTerm::identity(n)),
            Atom::Symbol(s) => TensorTerm::edge(s).map_err(|e| parse_error(pos, e.to_string())),
        },
    }
}

pub fn format_symbol(symbol: &Symbol, alphabet: &[String]) -> String {
    let name = |x: u16| {
        alphabet
            .get(x as usize)
            .cloned()
            .unwrap_or_else(|| format!("?{x}"))
    };
    match *symbol {
        Symbol::S(i) => format!("s{i}"),
        Symbol::E(i) => format!("e{i}"),
        Symbol::SingleE => "e".into(),
        Symbol::Letter(x) => name(x),
        Symbol::Tagged { letter, i } => format!("{}@{i}", name(letter)),
        Symbol::F(i, j) => format!("f{i},{j}"),
        Symbol::TaggedZero { letter, i, j } => format!("{}@{i};{j}", name(letter)),
        Symbol::LevelS { i, n } => format!("s{i}:{n}"),
        Symbol::LevelE { i, n } => format!("e{i}:{n}"),
        Symbol::LevelTagged { letter, i, n } => format!("{}@{i}:{n}", name(letter)),
        Symbol::Lambda(n) => format!("lam{n}"),
        Symbol::Rho(n) => format!("rho{n}"),
        Symbol::Swap => "X".into(),
        Symbol::Cap => "U".into(),
        Symbol::Cup => "Ubar".into(),
    }
}

pub fn format_word(word: &[Symbol], alphabet: &[String]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter()
        .map(|s| format_symbol(s, alphabet))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn format_path(path: &Path, alphabet: &[String]) -> String {
    if path.is_empty() {
        return format!("i{}", path.source());
    }
    format_word(path.edges(), alphabet)
}

pub fn format_term(term: &TensorTerm, alphabet: &[String]) -> String {
    match term.node() {
        TermNode::Identity => format!("i{}", term.source()),
        TermNode::Edge(s) => format_symbol(s, alphabet),
        TermNode::Compose(a, b) => {
            format!("(o {} {})", format_term(a, alphabet), format_term(b, alphabet))
        }
        TermNode::Sum(a, b) => {
            format!("(p {} {})", format_term(a, alphabet), format_term(b, alphabet))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn word_round_trip() {
        let text = "s1 e2 e a a@1 a@1;3 f1,2 s1:4 e1:4 b@2:4";
        let w = parse_word(text, &ab()).unwrap();
        assert_eq!(w.len(), 10);
        assert_eq!(w[4], Symbol::Tagged { letter: 0, i: 1 });
        assert_eq!(w[5], Symbol::TaggedZero { letter: 0, i: 1, j: 3 });
        assert_eq!(w[9], Symbol::LevelTagged { letter: 1, i: 2, n: 4 });
        assert_eq!(format_word(&w, &ab()), text);
    }

    #[test]
    fn empty_words() {
        assert!(parse_word("", &ab()).unwrap().is_empty());
        assert!(parse_word("  1 ", &ab()).unwrap().is_empty());
        assert_eq!(format_word(&[], &ab()), "1");
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_word("s1 zz", &ab()) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_word("s0", &ab()).is_err());
        assert!(parse_word("a@", &ab()).is_err());
        assert!(parse_word("i3", &ab()).is_err());
        assert!(parse_word("1 s1", &ab()).is_err());
    }

    #[test]
    fn paths() {
        let p = parse_path("lam2 rho2", &ab()).unwrap();
        assert_eq!((p.source(), p.target()), (2, 2));
        assert_eq!(format_path(&p, &ab()), "lam2 rho2");
        let e = parse_path("i3", &ab()).unwrap();
        assert_eq!(e, Path::empty(3));
        assert_eq!(format_path(&e, &ab()), "i3");
        assert!(parse_path("lam2 lam2", &ab()).is_err());
        assert!(parse_path("s1", &ab()).is_err());
    }

    #[test]
    fn terms() {
        let t = parse_term("(o X (p U i1))", &ab()).unwrap();
        assert_eq!((t.source(), t.target()), (2, 1));
        assert_eq!(format_term(&t, &ab()), "(o X (p U i1))");
        let s = parse_term("(p a Ubar i2)", &ab()).unwrap();
        assert_eq!(format_term(&s, &ab()), "(p (p a Ubar) i2)");
        assert!(parse_term("(o U X)", &ab()).is_err());
        assert!(parse_term("(o X", &ab()).is_err());
        assert!(parse_term("(q X X)", &ab()).is_err());
        assert!(parse_term("X X", &ab()).is_err());
        assert!(parse_term("lam1", &ab()).is_err());
    }
}
