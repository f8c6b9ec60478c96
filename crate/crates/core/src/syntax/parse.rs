//! Surface syntax: lexer, declaration tables and the sequent parser.
//!
//! Binary connectives are infix and never associate: any nesting must be
//! parenthesised, so `p ; q ; r` is rejected.

use std::collections::BTreeMap;

use super::{Name, Op, OpConn, SConn, Sequent, Structure, Ty, TypeError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeclKind {
    /// An atom of the given type (`prop`, `fnc`, `agent`).
    Atom(Ty),
    /// Structural metavariable of the given type.
    StructVar(Ty),
    /// Operational metavariable ranging over all terms of the given type.
    OpVar(Ty),
    /// Operational metavariable ranging over atoms of the given type.
    AtomVar(Ty),
}

/// Identifier table: every identifier has exactly one kind.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decls {
    map: BTreeMap<Name, DeclKind>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("lex error at byte {offset}: {msg}")]
    Lex { offset: usize, msg: String },
    #[error("syntax error at byte {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("undeclared identifier `{0}`")]
    Undeclared(String),
    #[error("declaration error: {0}")]
    Decl(String),
    #[error(transparent)]
    Type(#[from] TypeError),
}

impl Decls {
    pub fn new() -> Decls {
        Decls::default()
    }

    pub fn declare(&mut self, name: &str, kind: DeclKind) -> Result<(), ParseError> {
        if !is_ident(name) || is_keyword(name) {
            return Err(ParseError::Decl(format!("`{name}` is not a usable identifier")));
        }
        match self.map.get(name) {
            Some(k) if *k != kind => Err(ParseError::Decl(format!(
                "`{name}` declared with two different kinds"
            ))),
            _ => {
                self.map.insert(name.into(), kind);
                Ok(())
            }
        }
    }

    pub fn with(mut self, names: &str, kind: DeclKind) -> Decls {
        for n in names.split_whitespace() {
            self.declare(n, kind).expect("valid declaration");
        }
        self
    }

    pub fn get(&self, name: &str) -> Option<DeclKind> {
        self.map.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &DeclKind)> {
        self.map.iter()
    }

    pub fn merge(&mut self, other: &Decls) -> Result<(), ParseError> {
        for (n, k) in other.iter() {
            self.declare(n, *k)?;
        }
        Ok(())
    }

    /// Type of a declared metavariable.
    pub fn meta_type(&self, name: &str) -> Option<Ty> {
        match self.get(name)? {
            DeclKind::StructVar(t) | DeclKind::OpVar(t) | DeclKind::AtomVar(t) => Some(t),
            DeclKind::Atom(_) => None,
        }
    }

    /// Header text that re-declares all atoms, grouped by kind.
    pub fn header(&self) -> String {
        let mut out = String::new();
        for (kw, ty) in [("prop", Ty::Fm), ("fnc", Ty::Fnc), ("agent", Ty::Ag)] {
            let names: Vec<&str> = self
                .map
                .iter()
                .filter(|(_, k)| **k == DeclKind::Atom(ty))
                .map(|(n, _)| &**n)
                .collect();
            if !names.is_empty() {
                out.push_str(&format!("{kw} {}.\n", names.join(" ")));
            }
        }
        out
    }
}

/// Parses declaration clauses such as `prop p q. agent a. fnc alpha.`
pub fn parse_decls(text: &str) -> Result<Decls, ParseError> {
    let mut d = Decls::new();
    for clause in text.split('.') {
        let mut words = clause.split_whitespace();
        let Some(kw) = words.next() else { continue };
        let ty = match kw {
            "prop" => Ty::Fm,
            "agent" => Ty::Ag,
            "fnc" => Ty::Fnc,
            other => return Err(ParseError::Decl(format!("unknown declaration keyword `{other}`"))),
        };
        for w in words {
            d.declare(w, DeclKind::Atom(ty))?;
        }
    }
    Ok(d)
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "I" | "top" | "bot" | "prop" | "agent" | "fnc")
        || OpConn::from_token(s).is_some()
        || SConn::from_token(s).is_some()
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Turnstile,
    LParen,
    RParen,
    Word(String),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let two = if i + 1 < b.len() { &text[i..i + 2] } else { "" };
        let (tok, len) = match (c, two) {
            (_, "|-") => (Tok::Turnstile, 2),
            (_, "/\\") | (_, "\\/") | (_, "->") | (_, "<-") => (Tok::Word(two.to_string()), 2),
            (b'(', _) => (Tok::LParen, 1),
            (b')', _) => (Tok::RParen, 1),
            (b';', _) | (b'<', _) | (b'>', _) => (Tok::Word((c as char).to_string()), 1),
            _ if c.is_ascii_alphabetic() || c == b'_' => {
                let mut j = i + 1;
                while j < b.len() && (b[j].is_ascii_alphanumeric() || b[j] == b'_' || b[j] == b'\'')
                {
                    j += 1;
                }
                (Tok::Word(text[i..j].to_string()), j - i)
            }
            _ => {
                return Err(ParseError::Lex {
                    offset: i,
                    msg: format!("unexpected character `{}`", text[i..].chars().next().unwrap()),
                })
            }
        };
        out.push((tok, i));
        i += len;
    }
    Ok(out)
}

enum Node {
    O(Op),
    S(Structure),
}

impl Node {
    fn into_structure(self) -> Structure {
        match self {
            Node::O(o) => Structure::Op(o),
            Node::S(s) => s,
        }
    }
}

enum Conn {
    Op(OpConn),
    S(SConn),
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
    decls: &'a Decls,
}

impl<'a> Parser<'a> {
    fn offset(&self) -> usize {
        self.toks.get(self.at).map(|t| t.1).unwrap_or(self.end)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { offset: self.offset(), msg: msg.into() })
    }

    fn conn(&self) -> Option<Conn> {
        match self.peek() {
            Some(Tok::Word(w)) => OpConn::from_token(w)
                .map(Conn::Op)
                .or_else(|| SConn::from_token(w).map(Conn::S)),
            _ => None,
        }
    }

    fn side(&mut self) -> Result<Node, ParseError> {
        let left = self.operand()?;
        let Some(conn) = self.conn() else { return Ok(left) };
        self.at += 1;
        let right = self.operand()?;
        if self.conn().is_some() {
            return self.err("binary connectives do not associate; add parentheses");
        }
        match conn {
            Conn::Op(c) => match (left, right) {
                (Node::O(l), Node::O(r)) => Ok(Node::O(Op::bin(c, l, r))),
                _ => self.err(format!(
                    "operational connective `{}` applied to a structure",
                    c.token()
                )),
            },
            Conn::S(c) => Ok(Node::S(Structure::bin(
                c,
                left.into_structure(),
                right.into_structure(),
            ))),
        }
    }

    fn operand(&mut self) -> Result<Node, ParseError> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input: missing operand");
        };
        match tok {
            Tok::LParen => {
                self.at += 1;
                let inner = self.side()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.at += 1;
                Ok(inner)
            }
            Tok::Word(w) => {
                if self.conn().is_some() {
                    return self.err(format!("connective `{w}` is missing its left operand"));
                }
                self.at += 1;
                match w.as_str() {
                    "I" => Ok(Node::S(Structure::I)),
                    "top" => Ok(Node::O(Op::Top)),
                    "bot" => Ok(Node::O(Op::Bot)),
                    _ => match self.decls.get(&w) {
                        Some(DeclKind::Atom(t)) => Ok(Node::O(Op::Atom(t, w.as_str().into()))),
                        Some(DeclKind::StructVar(_)) => Ok(Node::S(Structure::Meta(w.as_str().into()))),
                        Some(DeclKind::OpVar(_)) | Some(DeclKind::AtomVar(_)) => {
                            Ok(Node::O(Op::Meta(w.as_str().into())))
                        }
                        None => Err(ParseError::Undeclared(w)),
                    },
                }
            }
            Tok::RParen => self.err("unexpected `)`: missing operand"),
            Tok::Turnstile => self.err("unexpected `|-`: missing operand"),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.at < self.toks.len() {
            return self.err("trailing input");
        }
        Ok(())
    }
}

fn parser<'a>(text: &str, decls: &'a Decls) -> Result<Parser<'a>, ParseError> {
    Ok(Parser { toks: lex(text)?, at: 0, end: text.len(), decls })
}

fn check(s: &Structure, decls: &Decls) -> Result<(), ParseError> {
    s.ty_with(&|n| decls.meta_type(n))?;
    Ok(())
}

/// Parses `lhs |- rhs`. Each side must be well typed; the sequent itself
/// need not be type-uniform (that is the checker's concern).
pub fn parse_sequent(text: &str, decls: &Decls) -> Result<Sequent, ParseError> {
    let mut p = parser(text, decls)?;
    let lhs = p.side()?.into_structure();
    if p.peek() != Some(&Tok::Turnstile) {
        return p.err("expected `|-`");
    }
    p.at += 1;
    let rhs = p.side()?.into_structure();
    p.finish()?;
    check(&lhs, decls)?;
    check(&rhs, decls)?;
    Ok(Sequent { lhs, rhs })
}

pub fn parse_structure(text: &str, decls: &Decls) -> Result<Structure, ParseError> {
    let mut p = parser(text, decls)?;
    let s = p.side()?.into_structure();
    p.finish()?;
    check(&s, decls)?;
    Ok(s)
}

pub fn parse_op(text: &str, decls: &Decls) -> Result<Op, ParseError> {
    let mut p = parser(text, decls)?;
    let node = p.side()?;
    p.finish()?;
    match node {
        Node::O(o) => {
            o.ty_with(&|n| decls.meta_type(n))?;
            Ok(o)
        }
        Node::S(_) => Err(ParseError::Syntax {
            offset: 0,
            msg: "expected an operational term, found a structure".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d() -> Decls {
        parse_decls("prop p q. agent a. fnc alpha.").unwrap()
    }

    #[test]
    fn identity() {
        let s = parse_sequent("p |- p", &d()).unwrap();
        assert_eq!(s.lhs, Structure::Op(Op::atom(Ty::Fm, "p")));
        assert_eq!(s.ty(), Some(Ty::Fm));
    }

    #[test]
    fn heterogeneous() {
        let s = parse_sequent("alpha STRI0 I |- alpha tri0 top", &d()).unwrap();
        assert_eq!(
            s.lhs,
            Structure::bin(SConn::Stri(0), Structure::Op(Op::atom(Ty::Fnc, "alpha")), Structure::I)
        );
        assert_eq!(
            s.rhs,
            Structure::Op(Op::bin(OpConn::Tri(0), Op::atom(Ty::Fnc, "alpha"), Op::Top))
        );
        assert_eq!(parse_sequent("a |- a", &d()).unwrap().ty(), Some(Ty::Ag));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_sequent("p ; q ; p |- q", &d()), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_sequent("p |- r", &d()), Err(ParseError::Undeclared(_))));
        assert!(matches!(parse_sequent("p # q", &d()), Err(ParseError::Lex { .. })));
        assert!(matches!(parse_sequent("a tri2 alpha |- p", &d()), Err(ParseError::Type(_))));
        assert!(matches!(parse_sequent("(p ; q) /\\ p |- p", &d()), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_sequent("p |- ", &d()), Err(ParseError::Syntax { .. })));
        assert!(parse_decls("prop p. agent p.").is_err());
        assert!(parse_decls("prop tri0.").is_err());
    }
}
