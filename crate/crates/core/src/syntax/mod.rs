//! Typed operational terms, structures and sequents.
//!
//! Both layers share the same four-way type partition (formulas, functional
//! actions, actions, agents). Operational terms embed into structures as
//! leaves. Schematic metavariables are represented in-tree by `Meta` nodes;
//! concrete terms produced by the parser never contain them unless the
//! declaration table declares metavariables.

use std::fmt;
use std::sync::Arc;

mod parse;
mod render;

pub use parse::{
    parse_decls, parse_op, parse_sequent, parse_structure, DeclKind, Decls, ParseError,
};
pub use render::{render_op, render_sequent, render_structure, Format};

/// Interned identifier.
pub type Name = Arc<str>;

/// The four pairwise disjoint types. Displayed with the structural spelling
/// (`FM`, `FNC`, `ACT`, `AG`); [`Ty::op_name`] gives the operational one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ty {
    Fm,
    Fnc,
    Act,
    Ag,
}

impl Ty {
    pub const ALL: [Ty; 4] = [Ty::Fm, Ty::Fnc, Ty::Act, Ty::Ag];

    pub fn op_name(self) -> &'static str {
        match self {
            Ty::Fm => "Fm",
            Ty::Fnc => "Fnc",
            Ty::Act => "Act",
            Ty::Ag => "Ag",
        }
    }

    pub fn struct_name(self) -> &'static str {
        match self {
            Ty::Fm => "FM",
            Ty::Fnc => "FNC",
            Ty::Act => "ACT",
            Ty::Ag => "AG",
        }
    }

    /// Type of the first argument of the index-`i` heterogeneous connectives.
    pub fn het_first(i: u8) -> Ty {
        match i {
            0 => Ty::Fnc,
            1 => Ty::Act,
            _ => Ty::Ag,
        }
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.struct_name())
    }
}

/// Operational connectives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpConn {
    And,
    Or,
    Imp,
    Limp,
    Lsub,
    Rsub,
    Tri(u8),
    Btri(u8),
    Rarr(u8),
    Brarr(u8),
}

impl OpConn {
    pub fn all() -> Vec<OpConn> {
        let mut v = vec![
            OpConn::And,
            OpConn::Or,
            OpConn::Imp,
            OpConn::Limp,
            OpConn::Lsub,
            OpConn::Rsub,
        ];
        for i in 0..4 {
            v.push(OpConn::Tri(i));
            v.push(OpConn::Btri(i));
        }
        for i in 0..3 {
            v.push(OpConn::Rarr(i));
            v.push(OpConn::Brarr(i));
        }
        v
    }

    /// `(first argument, second argument, result)`.
    pub fn signature(self) -> (Ty, Ty, Ty) {
        match self {
            OpConn::And | OpConn::Or | OpConn::Imp | OpConn::Limp | OpConn::Lsub | OpConn::Rsub => {
                (Ty::Fm, Ty::Fm, Ty::Fm)
            }
            OpConn::Tri(3) | OpConn::Btri(3) => (Ty::Ag, Ty::Fnc, Ty::Act),
            OpConn::Tri(i) | OpConn::Btri(i) | OpConn::Rarr(i) | OpConn::Brarr(i) => {
                (Ty::het_first(i), Ty::Fm, Ty::Fm)
            }
        }
    }

    pub fn token(self) -> String {
        match self {
            OpConn::And => "/\\".into(),
            OpConn::Or => "\\/".into(),
            OpConn::Imp => "->".into(),
            OpConn::Limp => "<-".into(),
            OpConn::Lsub => "lsub".into(),
            OpConn::Rsub => "rsub".into(),
            OpConn::Tri(i) => format!("tri{i}"),
            OpConn::Btri(i) => format!("btri{i}"),
            OpConn::Rarr(i) => format!("rarr{i}"),
            OpConn::Brarr(i) => format!("brarr{i}"),
        }
    }

    pub fn from_token(tok: &str) -> Option<OpConn> {
        OpConn::all().into_iter().find(|c| c.token() == tok)
    }

    pub fn is_heterogeneous(self) -> bool {
        matches!(
            self,
            OpConn::Tri(_) | OpConn::Btri(_) | OpConn::Rarr(_) | OpConn::Brarr(_)
        )
    }
}

/// Structural connectives, including the virtual adjoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SConn {
    Semi,
    Lt,
    Gt,
    Stri(u8),
    Sbtri(u8),
    Srarr(u8),
    Sbrarr(u8),
    Slarr1,
    Sblarr1,
    /// Syntax-only ACT connective; no rule mentions it.
    Sactl1,
    /// Syntax-only ACT connective; no rule mentions it.
    Sactbl1,
    Vlarr(u8),
    Vblarr(u8),
    Vrarr3,
    Vbrarr3,
}

/// Coarse classification used by the severity analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `;`, `<`, `>`.
    Propositional,
    Triangle,
    Arrow,
}

impl SConn {
    pub fn all() -> Vec<SConn> {
        let mut v = vec![SConn::Semi, SConn::Lt, SConn::Gt];
        for i in 0..4 {
            v.push(SConn::Stri(i));
            v.push(SConn::Sbtri(i));
        }
        for i in 0..3 {
            v.push(SConn::Srarr(i));
            v.push(SConn::Sbrarr(i));
        }
        v.extend([SConn::Slarr1, SConn::Sblarr1, SConn::Sactl1, SConn::Sactbl1]);
        for i in [0, 2, 3] {
            v.push(SConn::Vlarr(i));
            v.push(SConn::Vblarr(i));
        }
        v.extend([SConn::Vrarr3, SConn::Vbrarr3]);
        v
    }

    /// `(first argument, second argument, result)`.
    pub fn signature(self) -> (Ty, Ty, Ty) {
        match self {
            SConn::Semi | SConn::Lt | SConn::Gt => (Ty::Fm, Ty::Fm, Ty::Fm),
            SConn::Stri(3) | SConn::Sbtri(3) => (Ty::Ag, Ty::Fnc, Ty::Act),
            SConn::Stri(i) | SConn::Sbtri(i) | SConn::Srarr(i) | SConn::Sbrarr(i) => {
                (Ty::het_first(i), Ty::Fm, Ty::Fm)
            }
            SConn::Slarr1 | SConn::Sblarr1 | SConn::Sactl1 | SConn::Sactbl1 => {
                (Ty::Fm, Ty::Fm, Ty::Act)
            }
            SConn::Vlarr(0) | SConn::Vblarr(0) => (Ty::Fm, Ty::Fm, Ty::Fnc),
            SConn::Vlarr(2) | SConn::Vblarr(2) => (Ty::Fm, Ty::Fm, Ty::Ag),
            SConn::Vlarr(_) | SConn::Vblarr(_) => (Ty::Act, Ty::Fnc, Ty::Ag),
            SConn::Vrarr3 | SConn::Vbrarr3 => (Ty::Ag, Ty::Act, Ty::Fnc),
        }
    }

    /// Polarity of the two coordinates; `true` is positive.
    pub fn polarity(self) -> (bool, bool) {
        match self {
            SConn::Semi | SConn::Stri(_) | SConn::Sbtri(_) => (true, true),
            SConn::Lt
            | SConn::Slarr1
            | SConn::Sblarr1
            | SConn::Sactl1
            | SConn::Sactbl1
            | SConn::Vlarr(_)
            | SConn::Vblarr(_) => (true, false),
            SConn::Gt | SConn::Srarr(_) | SConn::Sbrarr(_) | SConn::Vrarr3 | SConn::Vbrarr3 => {
                (false, true)
            }
        }
    }

    pub fn family(self) -> Family {
        match self {
            SConn::Semi | SConn::Lt | SConn::Gt => Family::Propositional,
            SConn::Stri(_) | SConn::Sbtri(_) => Family::Triangle,
            _ => Family::Arrow,
        }
    }

    pub fn is_virtual(self) -> bool {
        matches!(
            self,
            SConn::Vlarr(_) | SConn::Vblarr(_) | SConn::Vrarr3 | SConn::Vbrarr3
        )
    }

    pub fn token(self) -> String {
        match self {
            SConn::Semi => ";".into(),
            SConn::Lt => "<".into(),
            SConn::Gt => ">".into(),
            SConn::Stri(i) => format!("STRI{i}"),
            SConn::Sbtri(i) => format!("SBTRI{i}"),
            SConn::Srarr(i) => format!("SRARR{i}"),
            SConn::Sbrarr(i) => format!("SBRARR{i}"),
            SConn::Slarr1 => "SLARR1".into(),
            SConn::Sblarr1 => "SBLARR1".into(),
            SConn::Sactl1 => "SACTL1".into(),
            SConn::Sactbl1 => "SACTBL1".into(),
            SConn::Vlarr(i) => format!("VLARR{i}"),
            SConn::Vblarr(i) => format!("VBLARR{i}"),
            SConn::Vrarr3 => "VRARR3".into(),
            SConn::Vbrarr3 => "VBRARR3".into(),
        }
    }

    pub fn from_token(tok: &str) -> Option<SConn> {
        SConn::all().into_iter().find(|c| c.token() == tok)
    }
}

/// Operational term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Atom(Ty, Name),
    Top,
    Bot,
    Bin(OpConn, Arc<Op>, Arc<Op>),
    /// Schematic operational metavariable.
    Meta(Name),
}

/// Structural term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Structure {
    Op(Op),
    I,
    Bin(SConn, Arc<Structure>, Arc<Structure>),
    /// Schematic structural metavariable.
    Meta(Name),
}

/// Failure of type inference: the offending node, by child-index path.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("type error at {path:?} in `{node}`: expected {expected}, found {found}")]
pub struct TypeError {
    pub path: Vec<u8>,
    pub node: String,
    pub expected: String,
    pub found: String,
}

/// Resolves the type of a metavariable during inference over patterns.
pub type MetaTypes<'a> = &'a dyn Fn(&str) -> Option<Ty>;

fn no_metas(_: &str) -> Option<Ty> {
    None
}

impl Op {
    pub fn atom(ty: Ty, name: &str) -> Op {
        Op::Atom(ty, name.into())
    }

    pub fn bin(c: OpConn, l: Op, r: Op) -> Op {
        Op::Bin(c, Arc::new(l), Arc::new(r))
    }

    pub fn infer_type(&self) -> Result<Ty, TypeError> {
        self.ty_with(&no_metas)
    }

    pub fn ty_with(&self, metas: MetaTypes) -> Result<Ty, TypeError> {
        let mut path = Vec::new();
        self.ty_at(metas, &mut path)
    }

    fn ty_at(&self, metas: MetaTypes, path: &mut Vec<u8>) -> Result<Ty, TypeError> {
        match self {
            Op::Atom(Ty::Act, _) => Err(TypeError {
                path: path.clone(),
                node: render_op(self, Format::Ascii),
                expected: "Fm, Fnc or Ag atom".into(),
                found: "Act atom".into(),
            }),
            Op::Atom(t, _) => Ok(*t),
            Op::Top | Op::Bot => Ok(Ty::Fm),
            Op::Meta(n) => metas(n).ok_or_else(|| TypeError {
                path: path.clone(),
                node: n.to_string(),
                expected: "declared metavariable".into(),
                found: "undeclared".into(),
            }),
            Op::Bin(c, l, r) => {
                let (a, b, res) = c.signature();
                for (idx, (child, want)) in [(l, a), (r, b)].into_iter().enumerate() {
                    path.push(idx as u8);
                    let got = child.ty_at(metas, path)?;
                    path.pop();
                    if got != want {
                        let mut p = path.clone();
                        p.push(idx as u8);
                        return Err(TypeError {
                            path: p,
                            node: render_op(self, Format::Ascii),
                            expected: want.op_name().into(),
                            found: got.op_name().into(),
                        });
                    }
                }
                Ok(res)
            }
        }
    }

    /// Number of connective and constant nodes; atoms count one.
    pub fn size(&self) -> usize {
        match self {
            Op::Bin(_, l, r) => 1 + l.size() + r.size(),
            _ => 1,
        }
    }

    pub fn is_subterm_of(&self, other: &Op) -> bool {
        self == other
            || match other {
                Op::Bin(_, l, r) => self.is_subterm_of(l) || self.is_subterm_of(r),
                _ => false,
            }
    }

    pub fn has_meta(&self) -> bool {
        match self {
            Op::Meta(_) => true,
            Op::Bin(_, l, r) => l.has_meta() || r.has_meta(),
            _ => false,
        }
    }
}

impl Structure {
    pub fn bin(c: SConn, l: Structure, r: Structure) -> Structure {
        Structure::Bin(c, Arc::new(l), Arc::new(r))
    }

    pub fn op(o: Op) -> Structure {
        Structure::Op(o)
    }

    pub fn infer_type(&self) -> Result<Ty, TypeError> {
        self.ty_with(&no_metas)
    }

    pub fn ty_with(&self, metas: MetaTypes) -> Result<Ty, TypeError> {
        let mut path = Vec::new();
        self.ty_at(metas, &mut path)
    }

    fn ty_at(&self, metas: MetaTypes, path: &mut Vec<u8>) -> Result<Ty, TypeError> {
        match self {
            Structure::Op(o) => o.ty_at(metas, path),
            Structure::I => Ok(Ty::Fm),
            Structure::Meta(n) => metas(n).ok_or_else(|| TypeError {
                path: path.clone(),
                node: n.to_string(),
                expected: "declared metavariable".into(),
                found: "undeclared".into(),
            }),
            Structure::Bin(c, l, r) => {
                let (a, b, res) = c.signature();
                for (idx, (child, want)) in [(l, a), (r, b)].into_iter().enumerate() {
                    path.push(idx as u8);
                    let got = child.ty_at(metas, path)?;
                    path.pop();
                    if got != want {
                        let mut p = path.clone();
                        p.push(idx as u8);
                        return Err(TypeError {
                            path: p,
                            node: render_structure(self, Format::Ascii),
                            expected: want.struct_name().into(),
                            found: got.struct_name().into(),
                        });
                    }
                }
                Ok(res)
            }
        }
    }

    pub fn at(&self, path: &[u8]) -> Option<&Structure> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => match self {
                Structure::Bin(_, l, r) => [l, r].get(i as usize)?.at(rest),
                _ => None,
            },
        }
    }

    /// Returns a copy with the occurrence at `path` replaced. Panics if the
    /// path does not address an occurrence.
    pub fn replace_at(&self, path: &[u8], new: Structure) -> Structure {
        match path.split_first() {
            None => new,
            Some((&i, rest)) => match self {
                Structure::Bin(c, l, r) if i == 0 => {
                    Structure::Bin(*c, Arc::new(l.replace_at(rest, new)), r.clone())
                }
                Structure::Bin(c, l, r) if i == 1 => {
                    Structure::Bin(*c, l.clone(), Arc::new(r.replace_at(rest, new)))
                }
                _ => panic!("replace_at: path {path:?} leaves the structure"),
            },
        }
    }

    /// All occurrences in pre-order, each with its path and the parity of
    /// negative coordinates crossed on the way (`true` = odd).
    pub fn occurrences(&self) -> Vec<(Vec<u8>, bool, &Structure)> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect(&mut path, false, &mut out);
        out
    }

    fn collect<'a>(
        &'a self,
        path: &mut Vec<u8>,
        odd: bool,
        out: &mut Vec<(Vec<u8>, bool, &'a Structure)>,
    ) {
        out.push((path.clone(), odd, self));
        if let Structure::Bin(c, l, r) = self {
            let (pl, pr) = c.polarity();
            path.push(0);
            l.collect(path, odd ^ !pl, out);
            path.pop();
            path.push(1);
            r.collect(path, odd ^ !pr, out);
            path.pop();
        }
    }

    /// Parity of negative coordinates crossed from the root to `path`.
    pub fn parity_at(&self, path: &[u8]) -> Option<bool> {
        let mut cur = self;
        let mut odd = false;
        for &i in path {
            match cur {
                Structure::Bin(c, l, r) => {
                    let (pl, pr) = c.polarity();
                    if i == 0 {
                        odd ^= !pl;
                        cur = l;
                    } else {
                        odd ^= !pr;
                        cur = r;
                    }
                }
                _ => return None,
            }
        }
        Some(odd)
    }

    pub fn size(&self) -> usize {
        match self {
            Structure::Op(o) => o.size(),
            Structure::Bin(_, l, r) => 1 + l.size() + r.size(),
            _ => 1,
        }
    }

    pub fn has_meta(&self) -> bool {
        match self {
            Structure::Meta(_) => true,
            Structure::Op(o) => o.has_meta(),
            Structure::Bin(_, l, r) => l.has_meta() || r.has_meta(),
            Structure::I => false,
        }
    }

    pub fn as_op(&self) -> Option<&Op> {
        match self {
            Structure::Op(o) => Some(o),
            _ => None,
        }
    }
}

/// Side of the turnstile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Lhs,
    Rhs,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Lhs => Side::Rhs,
            Side::Rhs => Side::Lhs,
        }
    }
}

/// Effective position of an occurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Precedent,
    Succedent,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Place::Precedent => "precedent",
            Place::Succedent => "succedent",
        })
    }
}

/// An occurrence address inside a sequent: side of the turnstile plus
/// child indices. Written `L`, `R.0.1`, ...
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pos {
    pub side: Side,
    pub path: Vec<u8>,
}

impl Pos {
    pub fn root(side: Side) -> Pos {
        Pos { side, path: Vec::new() }
    }

    pub fn child(&self, i: u8) -> Pos {
        let mut path = self.path.clone();
        path.push(i);
        Pos { side: self.side, path }
    }

    pub fn is_root(&self) -> bool {
        self.path.is_empty()
    }

    pub fn parse(text: &str) -> Option<Pos> {
        let mut parts = text.trim().split('.');
        let side = match parts.next()? {
            "L" | "l" => Side::Lhs,
            "R" | "r" => Side::Rhs,
            _ => return None,
        };
        let mut path = Vec::new();
        for p in parts {
            match p {
                "0" => path.push(0),
                "1" => path.push(1),
                _ => return None,
            }
        }
        Some(Pos { side, path })
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.side {
            Side::Lhs => "L",
            Side::Rhs => "R",
        })?;
        for i in &self.path {
            write!(f, ".{i}")?;
        }
        Ok(())
    }
}

/// A sequent `lhs |- rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub lhs: Structure,
    pub rhs: Structure,
}

impl Sequent {
    pub fn new(lhs: Structure, rhs: Structure) -> Sequent {
        Sequent { lhs, rhs }
    }

    pub fn side(&self, side: Side) -> &Structure {
        match side {
            Side::Lhs => &self.lhs,
            Side::Rhs => &self.rhs,
        }
    }

    /// Types of both sides.
    pub fn types(&self) -> Result<(Ty, Ty), TypeError> {
        Ok((self.lhs.infer_type()?, self.rhs.infer_type()?))
    }

    /// The common type, if both sides are well typed and agree.
    pub fn ty(&self) -> Option<Ty> {
        match self.types() {
            Ok((a, b)) if a == b => Some(a),
            _ => None,
        }
    }

    pub fn is_type_uniform(&self) -> bool {
        self.ty().is_some()
    }

    pub fn at(&self, pos: &Pos) -> Option<&Structure> {
        self.side(pos.side).at(&pos.path)
    }

    pub fn replace_at(&self, pos: &Pos, new: Structure) -> Sequent {
        let mut s = self.clone();
        match pos.side {
            Side::Lhs => s.lhs = s.lhs.replace_at(&pos.path, new),
            Side::Rhs => s.rhs = s.rhs.replace_at(&pos.path, new),
        }
        s
    }

    /// Precedent/succedent place of the occurrence at `pos`.
    pub fn place(&self, pos: &Pos) -> Option<Place> {
        let odd = self.side(pos.side).parity_at(&pos.path)?;
        Some(place_of(pos.side, odd))
    }

    /// Every substructure occurrence with its place.
    pub fn positions(&self) -> Vec<(Pos, Place)> {
        let mut out = Vec::new();
        for side in [Side::Lhs, Side::Rhs] {
            for (path, odd, _) in self.side(side).occurrences() {
                out.push((Pos { side, path }, place_of(side, odd)));
            }
        }
        out
    }

    pub fn has_meta(&self) -> bool {
        self.lhs.has_meta() || self.rhs.has_meta()
    }
}

fn place_of(side: Side, odd: bool) -> Place {
    match (side, odd) {
        (Side::Lhs, false) | (Side::Rhs, true) => Place::Precedent,
        _ => Place::Succedent,
    }
}

/// Free-standing form of [`Sequent::positions`].
pub fn positions(s: &Sequent) -> Vec<(Pos, Place)> {
    s.positions()
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_op(self, Format::Ascii))
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_structure(self, Format::Ascii))
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_sequent(self, Format::Ascii))
    }
}
