//! Translation of single-type D'.EAK formulas into the multi-type language.
//!
//! Propositional connectives are kept. Action modalities become the index-0
//! heterogeneous connectives and agent modalities the index-2 ones:
//!
//! | D'.EAK            | multi-type        |
//! |-------------------|-------------------|
//! | `dia(alpha, A)`   | `alpha tri0 A`    |
//! | `box(alpha, A)`   | `alpha rarr0 A`   |
//! | `bdia(alpha, A)`  | `alpha btri0 A`   |
//! | `bbox(alpha, A)`  | `alpha brarr0 A`  |
//! | `dia(a, A)`       | `a tri2 A`        |
//! | `box(a, A)`       | `a rarr2 A`       |
//! | `bdia(a, A)`      | `a btri2 A`       |
//! | `bbox(a, A)`      | `a brarr2 A`      |
//! | `one(alpha)`      | `alpha tri0 top`  |
//!
//! The surface syntax reuses the kernel's propositional tokens (`/\`, `\/`,
//! `->`, `<-`, `lsub`, `rsub`, `top`, `bot`); binary connectives do not
//! associate, so nesting must be parenthesised.

use std::fmt;

use crate::syntax::{DeclKind, Decls, Name, Op, OpConn, Ty};

#[cfg(test)]
mod tests;

/// Kind of a modal index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Index {
    Agent(Name),
    Action(Name),
}

impl Index {
    pub fn name(&self) -> &Name {
        match self {
            Index::Agent(n) | Index::Action(n) => n,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Modality {
    /// Diamond, `dia`.
    Dia,
    /// Box, `box`.
    Box,
    /// Converse diamond, `bdia`.
    Bdia,
    /// Converse box, `bbox`.
    Bbox,
}

impl Modality {
    pub const ALL: [Modality; 4] = [Modality::Dia, Modality::Box, Modality::Bdia, Modality::Bbox];

    pub fn token(self) -> &'static str {
        match self {
            Modality::Dia => "dia",
            Modality::Box => "box",
            Modality::Bdia => "bdia",
            Modality::Bbox => "bbox",
        }
    }

    fn from_token(t: &str) -> Option<Modality> {
        Modality::ALL.into_iter().find(|m| m.token() == t)
    }

    fn connective(self, i: u8) -> OpConn {
        match self {
            Modality::Dia => OpConn::Tri(i),
            Modality::Box => OpConn::Rarr(i),
            Modality::Bdia => OpConn::Btri(i),
            Modality::Bbox => OpConn::Brarr(i),
        }
    }
}

/// A D'.EAK operational formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DeakTerm {
    Atom(Name),
    Top,
    Bot,
    /// Propositional binary connective; only the six formula connectives.
    Bin(OpConn, Box<DeakTerm>, Box<DeakTerm>),
    Modal(Modality, Index, Box<DeakTerm>),
    /// The precondition constant `1_alpha`.
    One(Name),
}

impl DeakTerm {
    pub fn bin(c: OpConn, l: DeakTerm, r: DeakTerm) -> DeakTerm {
        DeakTerm::Bin(c, Box::new(l), Box::new(r))
    }

    pub fn modal(m: Modality, i: Index, a: DeakTerm) -> DeakTerm {
        DeakTerm::Modal(m, i, Box::new(a))
    }

    /// Whether the term uses no modality and no `one`.
    pub fn is_propositional(&self) -> bool {
        match self {
            DeakTerm::Atom(_) | DeakTerm::Top | DeakTerm::Bot => true,
            DeakTerm::Bin(_, l, r) => l.is_propositional() && r.is_propositional(),
            DeakTerm::Modal(..) | DeakTerm::One(_) => false,
        }
    }
}

fn is_propositional_conn(c: OpConn) -> bool {
    !c.is_heterogeneous()
}

impl fmt::Display for DeakTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arg = |f: &mut fmt::Formatter<'_>, t: &DeakTerm| match t {
            DeakTerm::Bin(..) => write!(f, "({t})"),
            _ => write!(f, "{t}"),
        };
        match self {
            DeakTerm::Atom(n) => write!(f, "{n}"),
            DeakTerm::Top => f.write_str("top"),
            DeakTerm::Bot => f.write_str("bot"),
            DeakTerm::Bin(c, l, r) => {
                arg(f, l)?;
                write!(f, " {} ", c.token())?;
                arg(f, r)
            }
            DeakTerm::Modal(m, i, a) => write!(f, "{}({}, {a})", m.token(), i.name()),
            DeakTerm::One(n) => write!(f, "one({n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DeakParseError {
    #[error("at byte {offset}: {msg}")]
    Syntax { offset: usize, msg: String },
    #[error("`{name}` is declared as {kind}, not usable here")]
    WrongKind { name: String, kind: String },
}

/// Greek letter names, which name actions when no declaration says
/// otherwise.
const GREEK: [&str; 24] = [
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa", "lambda", "mu", "nu",
    "xi", "omicron", "pi", "rho", "sigma", "tau", "upsilon", "phi", "chi", "psi", "omega",
];

/// Classifies a modal index. Declared names use their declaration; an
/// undeclared name is an action when it is a Greek letter name, optionally
/// followed by digits or primes, and an agent otherwise.
pub fn classify_index(name: &str, decls: &Decls) -> Result<Index, DeakParseError> {
    match decls.get(name) {
        Some(DeclKind::Atom(Ty::Fnc)) => Ok(Index::Action(name.into())),
        Some(DeclKind::Atom(Ty::Ag)) => Ok(Index::Agent(name.into())),
        Some(k) => Err(DeakParseError::WrongKind { name: name.into(), kind: format!("{k:?}") }),
        None => {
            let stem = name.trim_end_matches(|c: char| c.is_ascii_digit() || c == '\'');
            Ok(if GREEK.contains(&stem) { Index::Action(name.into()) } else { Index::Agent(name.into()) })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Conn(OpConn),
    LParen,
    RParen,
    Comma,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, DeakParseError> {
    let mut out = Vec::new();
    let b = text.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let two = text.get(i..i + 2).unwrap_or("");
        let (tok, len) = match c {
            b'(' => (Tok::LParen, 1),
            b')' => (Tok::RParen, 1),
            b',' => (Tok::Comma, 1),
            _ if matches!(two, "/\\" | "\\/" | "->" | "<-") => (Tok::Conn(OpConn::from_token(two).unwrap()), 2),
            _ if c.is_ascii_alphabetic() || c == b'_' => {
                let mut j = i + 1;
                while j < b.len() && (b[j].is_ascii_alphanumeric() || b[j] == b'_' || b[j] == b'\'') {
                    j += 1;
                }
                let w = &text[i..j];
                match OpConn::from_token(w) {
                    Some(k) if is_propositional_conn(k) => (Tok::Conn(k), j - i),
                    _ => (Tok::Word(w.to_string()), j - i),
                }
            }
            _ => {
                return Err(DeakParseError::Syntax {
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

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
    decls: &'a Decls,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, DeakParseError> {
        let offset = self.toks.get(self.at).map_or(self.end, |t| t.1);
        Err(DeakParseError::Syntax { offset, msg: msg.into() })
    }

    fn eat(&mut self, t: Tok, what: &str) -> Result<(), DeakParseError> {
        if self.peek() == Some(&t) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn formula(&mut self) -> Result<DeakTerm, DeakParseError> {
        let l = self.operand()?;
        let Some(Tok::Conn(c)) = self.peek().cloned() else { return Ok(l) };
        self.at += 1;
        let r = self.operand()?;
        if matches!(self.peek(), Some(Tok::Conn(_))) {
            return self.err("binary connectives do not associate; add parentheses");
        }
        Ok(DeakTerm::bin(c, l, r))
    }

    fn name(&mut self) -> Result<String, DeakParseError> {
        match self.peek().cloned() {
            Some(Tok::Word(w)) => {
                self.at += 1;
                Ok(w)
            }
            _ => self.err("expected a name"),
        }
    }

    fn operand(&mut self) -> Result<DeakTerm, DeakParseError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.at += 1;
                let f = self.formula()?;
                self.eat(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Word(w)) => {
                self.at += 1;
                if let Some(m) = Modality::from_token(&w) {
                    self.eat(Tok::LParen, "`(` after a modality")?;
                    let idx = self.name()?;
                    let idx = classify_index(&idx, self.decls)?;
                    self.eat(Tok::Comma, "`,`")?;
                    let a = self.formula()?;
                    self.eat(Tok::RParen, "`)`")?;
                    return Ok(DeakTerm::modal(m, idx, a));
                }
                match w.as_str() {
                    "top" => Ok(DeakTerm::Top),
                    "bot" => Ok(DeakTerm::Bot),
                    "one" => {
                        self.eat(Tok::LParen, "`(` after `one`")?;
                        let n = self.name()?;
                        if !matches!(classify_index(&n, self.decls)?, Index::Action(_)) {
                            return Err(DeakParseError::WrongKind { name: n, kind: "an agent".into() });
                        }
                        self.eat(Tok::RParen, "`)`")?;
                        Ok(DeakTerm::One(n.as_str().into()))
                    }
                    _ => match self.decls.get(&w) {
                        None | Some(DeclKind::Atom(Ty::Fm)) => Ok(DeakTerm::Atom(w.as_str().into())),
                        Some(k) => Err(DeakParseError::WrongKind { name: w, kind: format!("{k:?}") }),
                    },
                }
            }
            Some(Tok::Conn(c)) => self.err(format!("connective `{}` is missing its left operand", c.token())),
            _ => self.err("expected a formula"),
        }
    }
}

/// Parses D'.EAK surface syntax. Identifiers not in `decls` are classified
/// by [`classify_index`] when used as indices and are propositions
/// otherwise.
pub fn parse_deak(text: &str, decls: &Decls) -> Result<DeakTerm, DeakParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0, end: text.len(), decls };
    let f = p.formula()?;
    if p.at < p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

/// The multi-type image of a D'.EAK formula.
pub fn from_deak(f: &DeakTerm) -> Op {
    match f {
        DeakTerm::Atom(n) => Op::Atom(Ty::Fm, n.clone()),
        DeakTerm::Top => Op::Top,
        DeakTerm::Bot => Op::Bot,
        DeakTerm::Bin(c, l, r) => Op::bin(*c, from_deak(l), from_deak(r)),
        DeakTerm::Modal(m, Index::Action(a), body) => {
            Op::bin(m.connective(0), Op::Atom(Ty::Fnc, a.clone()), from_deak(body))
        }
        DeakTerm::Modal(m, Index::Agent(a), body) => {
            Op::bin(m.connective(2), Op::Atom(Ty::Ag, a.clone()), from_deak(body))
        }
        DeakTerm::One(a) => pre_of(a),
    }
}

/// The precondition of an action, `alpha tri0 top`.
pub fn pre_of(alpha: &str) -> Op {
    Op::bin(OpConn::Tri(0), Op::Atom(Ty::Fnc, alpha.into()), Op::Top)
}

/// A preimage under [`from_deak`], if any. `alpha tri0 top` is read back as
/// `dia(alpha, top)`, which [`from_deak`] identifies with `one(alpha)`.
pub fn to_deak(o: &Op) -> Option<DeakTerm> {
    Some(match o {
        Op::Atom(Ty::Fm, n) => DeakTerm::Atom(n.clone()),
        Op::Top => DeakTerm::Top,
        Op::Bot => DeakTerm::Bot,
        Op::Bin(c, l, r) if is_propositional_conn(*c) => DeakTerm::bin(*c, to_deak(l)?, to_deak(r)?),
        Op::Bin(c, l, r) => {
            let (m, i) = match *c {
                OpConn::Tri(i) => (Modality::Dia, i),
                OpConn::Rarr(i) => (Modality::Box, i),
                OpConn::Btri(i) => (Modality::Bdia, i),
                OpConn::Brarr(i) => (Modality::Bbox, i),
                _ => return None,
            };
            let idx = match (i, &**l) {
                (0, Op::Atom(Ty::Fnc, a)) => Index::Action(a.clone()),
                (2, Op::Atom(Ty::Ag, a)) => Index::Agent(a.clone()),
                _ => return None,
            };
            DeakTerm::modal(m, idx, to_deak(r)?)
        }
        _ => return None,
    })
}

/// Whether `o` is the translation of some D'.EAK formula.
pub fn in_image(o: &Op) -> bool {
    to_deak(o).is_some()
}
