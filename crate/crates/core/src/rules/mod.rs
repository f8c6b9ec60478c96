//! Rule schemas, the built-in catalog, and schema matching.

use std::collections::BTreeMap;
use std::fmt;

use crate::syntax::{
    render_sequent, DeclKind, Decls, Format, Name, Op, Pos, SConn, Sequent, Side, Structure, Ty,
};

mod catalog;

pub use catalog::{catalog, Base, Catalog};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Axiom,
    Cut,
    /// Structural rules other than display postulates.
    Structural,
    Display,
    Operational,
    /// Derived rule expanded by the checker.
    Macro,
}

/// Direction in which a single-premise invertible schema is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    /// Premise above, conclusion below, as drawn.
    Down,
    /// Conclusion above, premise below.
    Up,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Down => Dir::Up,
            Dir::Up => Dir::Down,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dir::Down => "down",
            Dir::Up => "up",
        })
    }
}

/// A named rule pattern over metavariables.
#[derive(Clone, Debug)]
pub struct RuleSchema {
    pub name: String,
    pub kind: RuleKind,
    pub premises: Vec<Sequent>,
    pub conclusion: Sequent,
    pub invertible: bool,
    /// Metavariable table; the type constraints live here.
    pub vars: Decls,
    /// The list-shaped atom axiom, matched by [`match_atom_axiom`].
    pub atom_axiom: bool,
    /// Macro expansion: `(primitive rule, resulting sequent pattern)` steps,
    /// applied successively starting from the macro's premise.
    pub expansion: Vec<(String, Sequent)>,
}

/// One metavariable occurrence inside a schema sequent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub var: Name,
    /// `None` for the conclusion, `Some(k)` for premise `k`.
    pub premise: Option<usize>,
    pub pos: Pos,
}

impl RuleSchema {
    /// `(premises, conclusion)` as seen when the rule is used in `dir`.
    pub fn oriented(&self, dir: Dir) -> (Vec<&Sequent>, &Sequent) {
        match dir {
            Dir::Down => (self.premises.iter().collect(), &self.conclusion),
            Dir::Up => (vec![&self.conclusion], &self.premises[0]),
        }
    }

    pub fn var_type(&self, name: &str) -> Option<Ty> {
        self.vars.meta_type(name)
    }

    /// Every structural-metavariable occurrence in premises and conclusion.
    /// Congruence is metavariable identity: occurrences sharing `var` are
    /// congruent.
    pub fn occurrences(&self) -> Vec<Occurrence> {
        let mut out = Vec::new();
        let seqs = self
            .premises
            .iter()
            .enumerate()
            .map(|(k, s)| (Some(k), s))
            .chain(std::iter::once((None, &self.conclusion)));
        for (premise, s) in seqs {
            for side in [Side::Lhs, Side::Rhs] {
                for (path, _, node) in s.side(side).occurrences() {
                    if let Structure::Meta(v) = node {
                        out.push(Occurrence { var: v.clone(), premise, pos: Pos { side, path } });
                    }
                }
            }
        }
        out
    }

    /// Conclusion positions of principal operational occurrences.
    pub fn principal_positions(&self) -> Vec<Pos> {
        let mut out = Vec::new();
        for side in [Side::Lhs, Side::Rhs] {
            for (path, _, node) in self.conclusion.side(side).occurrences() {
                if matches!(node, Structure::Op(_)) {
                    out.push(Pos { side, path });
                }
            }
        }
        out
    }
}

/// Names of all metavariables (structural and operational) in `s`.
pub fn meta_names(s: &Sequent) -> std::collections::BTreeSet<Name> {
    fn op(o: &Op, out: &mut std::collections::BTreeSet<Name>) {
        match o {
            Op::Meta(n) => {
                out.insert(n.clone());
            }
            Op::Bin(_, l, r) => {
                op(l, out);
                op(r, out);
            }
            _ => {}
        }
    }
    fn st(s: &Structure, out: &mut std::collections::BTreeSet<Name>) {
        match s {
            Structure::Meta(n) => {
                out.insert(n.clone());
            }
            Structure::Op(o) => op(o, out),
            Structure::Bin(_, l, r) => {
                st(l, out);
                st(r, out);
            }
            Structure::I => {}
        }
    }
    let mut out = std::collections::BTreeSet::new();
    st(&s.lhs, &mut out);
    st(&s.rhs, &mut out);
    out
}

/// A binding for one metavariable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Binding {
    S(Structure),
    O(Op),
}

impl Binding {
    pub fn as_structure(&self) -> Structure {
        match self {
            Binding::S(s) => s.clone(),
            Binding::O(o) => Structure::Op(o.clone()),
        }
    }

    fn ty(&self) -> Option<Ty> {
        match self {
            Binding::S(s) => s.infer_type().ok(),
            Binding::O(o) => o.infer_type().ok(),
        }
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Binding::S(s) => write!(f, "{s}"),
            Binding::O(o) => write!(f, "{o}"),
        }
    }
}

/// Metavariable assignment.
pub type Substitution = BTreeMap<Name, Binding>;

/// A concrete use of a schema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleInstance {
    pub schema: String,
    pub premises: Vec<Sequent>,
    pub conclusion: Sequent,
    pub substitution: Substitution,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MatchError {
    #[error("no match at {at}: {detail}")]
    NoMatch { at: String, detail: String },
    #[error("metavariable `{var}` bound at type {found}, expected {expected}")]
    TypeViolation { var: String, expected: Ty, found: String },
    #[error("rule `{rule}` takes {expected} premise(s), got {found}")]
    Arity { rule: String, expected: usize, found: usize },
    #[error("substitution does not bind `{0}`")]
    Unbound(String),
    #[error("schema `{0}` cannot be instantiated from a substitution")]
    NotInstantiable(String),
}

struct Matcher<'a> {
    vars: &'a Decls,
    sub: Substitution,
}

fn no_match<T>(at: &str, path: &[u8], detail: String) -> Result<T, MatchError> {
    let mut at = at.to_string();
    for i in path {
        at.push_str(&format!(".{i}"));
    }
    Err(MatchError::NoMatch { at, detail })
}

impl<'a> Matcher<'a> {
    fn bind(&mut self, var: &Name, b: Binding, at: &str, path: &[u8]) -> Result<(), MatchError> {
        let want = self.vars.meta_type(var).expect("schema metavariable is declared");
        match b.ty() {
            Some(t) if t == want => {}
            found => {
                return Err(MatchError::TypeViolation {
                    var: var.to_string(),
                    expected: want,
                    found: found.map(|t| t.to_string()).unwrap_or_else(|| "ill-typed".into()),
                })
            }
        }
        match self.sub.get(var) {
            Some(prev) if prev.as_structure() != b.as_structure() => no_match(
                at,
                path,
                format!("`{var}` is already bound to `{prev}`, found `{b}`"),
            ),
            Some(_) => Ok(()),
            None => {
                self.sub.insert(var.clone(), b);
                Ok(())
            }
        }
    }

    fn structure(
        &mut self,
        pat: &Structure,
        s: &Structure,
        at: &str,
        path: &mut Vec<u8>,
    ) -> Result<(), MatchError> {
        match (pat, s) {
            (Structure::Meta(v), _) => self.bind(v, Binding::S(s.clone()), at, path),
            (Structure::Op(p), Structure::Op(o)) => self.op(p, o, at, path),
            (Structure::I, Structure::I) => Ok(()),
            (Structure::Bin(c, pl, pr), Structure::Bin(d, l, r)) if c == d => {
                path.push(0);
                self.structure(pl, l, at, path)?;
                path.pop();
                path.push(1);
                self.structure(pr, r, at, path)?;
                path.pop();
                Ok(())
            }
            _ => no_match(at, path, format!("expected shape `{pat}`, found `{s}`")),
        }
    }

    fn op(&mut self, pat: &Op, o: &Op, at: &str, path: &[u8]) -> Result<(), MatchError> {
        match (pat, o) {
            (Op::Meta(v), _) => {
                if let Some(DeclKind::AtomVar(_)) = self.vars.get(v) {
                    if !matches!(o, Op::Atom(..)) {
                        return no_match(at, path, format!("`{v}` must be an atom, found `{o}`"));
                    }
                }
                self.bind(v, Binding::O(o.clone()), at, path)
            }
            (Op::Bin(c, pl, pr), Op::Bin(d, l, r)) if c == d => {
                self.op(pl, l, at, path)?;
                self.op(pr, r, at, path)
            }
            _ if pat == o => Ok(()),
            _ => no_match(at, path, format!("expected term `{pat}`, found `{o}`")),
        }
    }

    fn sequent(&mut self, pat: &Sequent, s: &Sequent, label: &str) -> Result<(), MatchError> {
        let mut path = Vec::new();
        self.structure(&pat.lhs, &s.lhs, &format!("{label} L"), &mut path)?;
        self.structure(&pat.rhs, &s.rhs, &format!("{label} R"), &mut path)
    }
}

fn match_oriented(
    schema: &RuleSchema,
    dir: Dir,
    premises: &[&Sequent],
    conclusion: &Sequent,
) -> Result<Substitution, MatchError> {
    let (pp, pc) = schema.oriented(dir);
    if pp.len() != premises.len() {
        return Err(MatchError::Arity {
            rule: schema.name.clone(),
            expected: pp.len(),
            found: premises.len(),
        });
    }
    let mut m = Matcher { vars: &schema.vars, sub: Substitution::new() };
    m.sequent(pc, conclusion, "conclusion")?;
    for (k, (p, s)) in pp.iter().zip(premises).enumerate() {
        m.sequent(p, s, &format!("premise {k}"))?;
    }
    Ok(m.sub)
}

/// Matches a schema against concrete premises and conclusion, returning the
/// direction used. Invertible schemas are tried downwards, then upwards.
pub fn match_directed(
    schema: &RuleSchema,
    premises: &[&Sequent],
    conclusion: &Sequent,
) -> Result<(Dir, Substitution), MatchError> {
    if schema.atom_axiom {
        if !premises.is_empty() {
            return Err(MatchError::Arity {
                rule: schema.name.clone(),
                expected: 0,
                found: premises.len(),
            });
        }
        return match_atom_axiom(conclusion).map(|s| (Dir::Down, s));
    }
    let down = match_oriented(schema, Dir::Down, premises, conclusion);
    match down {
        Ok(s) => Ok((Dir::Down, s)),
        Err(e) if schema.invertible && premises.len() == 1 => {
            match_oriented(schema, Dir::Up, premises, conclusion)
                .map(|s| (Dir::Up, s))
                .map_err(|_| e)
        }
        Err(e) => Err(e),
    }
}

/// Returns the unique type-respecting substitution, or the reason none exists.
pub fn match_instance(
    schema: &RuleSchema,
    premises: &[Sequent],
    conclusion: &Sequent,
) -> Result<Substitution, MatchError> {
    let refs: Vec<&Sequent> = premises.iter().collect();
    match_directed(schema, &refs, conclusion).map(|(_, s)| s)
}

/// Decomposes `s` as `Φ p |- Ψ p`: the lhs a chain of `F STRI0 _` /
/// `F SBTRI0 _` ending in the atom `p`, the rhs a chain of `G SRARR0 _` /
/// `G SBRARR0 _` ending in the same atom. Binds `p`, `F1..Fn`, `G1..Gm`.
pub fn match_atom_axiom(s: &Sequent) -> Result<Substitution, MatchError> {
    let mut sub = Substitution::new();
    let mut chain = |mut cur: &Structure, side: &str, conns: [SConn; 2], prefix: &str| {
        let mut k = 0;
        let mut path = Vec::new();
        loop {
            match cur {
                Structure::Bin(c, f, rest) if conns.contains(c) => {
                    if f.infer_type().ok() != Some(Ty::Fnc) {
                        return no_match(side, &path, format!("`{f}` is not an FNC structure"));
                    }
                    k += 1;
                    sub.insert(format!("{prefix}{k}").into(), Binding::S((**f).clone()));
                    path.push(1);
                    cur = rest;
                }
                Structure::Op(o @ Op::Atom(Ty::Fm, _)) => return Ok(o.clone()),
                _ => return no_match(side, &path, format!("`{cur}` is not an atom chain")),
            }
        }
    };
    let p = chain(&s.lhs, "conclusion L", [SConn::Stri(0), SConn::Sbtri(0)], "F")?;
    let q = chain(&s.rhs, "conclusion R", [SConn::Srarr(0), SConn::Sbrarr(0)], "G")?;
    if p != q {
        return no_match("conclusion", &[], format!("atoms `{p}` and `{q}` differ"));
    }
    sub.insert("p".into(), Binding::O(p));
    Ok(sub)
}

/// Instantiates a pattern.
pub fn instantiate(pat: &Structure, sub: &Substitution) -> Result<Structure, MatchError> {
    Ok(match pat {
        Structure::Meta(v) => sub
            .get(v)
            .ok_or_else(|| MatchError::Unbound(v.to_string()))?
            .as_structure(),
        Structure::Op(o) => Structure::Op(instantiate_op(o, sub)?),
        Structure::I => Structure::I,
        Structure::Bin(c, l, r) => {
            Structure::bin(*c, instantiate(l, sub)?, instantiate(r, sub)?)
        }
    })
}

fn instantiate_op(pat: &Op, sub: &Substitution) -> Result<Op, MatchError> {
    Ok(match pat {
        Op::Meta(v) => match sub.get(v) {
            Some(Binding::O(o)) => o.clone(),
            Some(Binding::S(Structure::Op(o))) => o.clone(),
            Some(b) => {
                return Err(MatchError::TypeViolation {
                    var: v.to_string(),
                    expected: Ty::Fm,
                    found: format!("structure `{b}`"),
                })
            }
            None => return Err(MatchError::Unbound(v.to_string())),
        },
        Op::Bin(c, l, r) => Op::bin(*c, instantiate_op(l, sub)?, instantiate_op(r, sub)?),
        other => other.clone(),
    })
}

pub fn instantiate_sequent(pat: &Sequent, sub: &Substitution) -> Result<Sequent, MatchError> {
    Ok(Sequent::new(instantiate(&pat.lhs, sub)?, instantiate(&pat.rhs, sub)?))
}

/// Instantiates a schema. The substitution must bind every metavariable at
/// its declared type.
pub fn apply_schema(schema: &RuleSchema, sub: &Substitution) -> Result<RuleInstance, MatchError> {
    if schema.atom_axiom {
        return Err(MatchError::NotInstantiable(schema.name.clone()));
    }
    for (v, kind) in schema.vars.iter() {
        let b = sub.get(v).ok_or_else(|| MatchError::Unbound(v.to_string()))?;
        let want = schema.vars.meta_type(v).expect("metavariable");
        let ok = match (kind, b) {
            (DeclKind::AtomVar(_), Binding::O(Op::Atom(t, _))) => *t == want,
            (DeclKind::AtomVar(_), _) => false,
            (DeclKind::OpVar(_), Binding::O(o)) => o.infer_type().ok() == Some(want),
            (DeclKind::OpVar(_), Binding::S(_)) => false,
            (_, b) => b.ty() == Some(want),
        };
        if !ok {
            return Err(MatchError::TypeViolation {
                var: v.to_string(),
                expected: want,
                found: b.ty().map(|t| t.to_string()).unwrap_or_else(|| "ill-typed".into()),
            });
        }
    }
    let premises = schema
        .premises
        .iter()
        .map(|p| instantiate_sequent(p, sub))
        .collect::<Result<Vec<_>, _>>()?;
    let conclusion = instantiate_sequent(&schema.conclusion, sub)?;
    Ok(RuleInstance {
        schema: schema.name.clone(),
        premises,
        conclusion,
        substitution: sub.clone(),
    })
}

/// Rewrites `s` with a single-premise schema used in `dir`: `s` is matched
/// against the oriented premise and the oriented conclusion is returned.
/// Fails when the conclusion mentions metavariables absent from the premise.
pub fn rewrite(schema: &RuleSchema, dir: Dir, s: &Sequent) -> Option<(Sequent, Substitution)> {
    if schema.premises.len() != 1 || schema.atom_axiom {
        return None;
    }
    if dir == Dir::Up && !schema.invertible {
        return None;
    }
    let (pp, pc) = schema.oriented(dir);
    let mut m = Matcher { vars: &schema.vars, sub: Substitution::new() };
    m.sequent(pp[0], s, "premise 0").ok()?;
    let out = instantiate_sequent(pc, &m.sub).ok()?;
    Some((out, m.sub))
}

/// Follows an occurrence through a pattern rewrite `from` to `to`.
///
/// Walks `from` along `pos`; if the walk enters a metavariable, returns every
/// occurrence of that metavariable in `to` with the remaining path appended.
/// Returns `None` when `pos` addresses a node built by the pattern itself.
pub fn track(from: &Sequent, to: &Sequent, pos: &Pos) -> Option<Vec<Pos>> {
    let mut node = from.side(pos.side);
    let mut k = 0;
    let var = loop {
        match node {
            Structure::Meta(v) => break v.clone(),
            _ if k == pos.path.len() => return None,
            Structure::Bin(_, l, r) => {
                node = if pos.path[k] == 0 { l } else { r };
                k += 1;
            }
            _ => return None,
        }
    };
    let rest = &pos.path[k..];
    let mut out = Vec::new();
    for side in [Side::Lhs, Side::Rhs] {
        for (path, _, n) in to.side(side).occurrences() {
            if matches!(n, Structure::Meta(v) if *v == var) {
                let mut path = path;
                path.extend_from_slice(rest);
                out.push(Pos { side, path });
            }
        }
    }
    Some(out)
}

impl fmt::Display for RuleSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prem: Vec<String> =
            self.premises.iter().map(|p| render_sequent(p, Format::Ascii)).collect();
        let bar = if self.invertible { "==" } else { "--" };
        write!(
            f,
            "{}: {} {bar} {}",
            self.name,
            if prem.is_empty() { "(axiom)".to_string() } else { prem.join(" , ") },
            render_sequent(&self.conclusion, Format::Ascii)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_decls, parse_sequent};

    fn d() -> Decls {
        parse_decls("prop p q X0 Y0. agent a. fnc alpha.").unwrap()
    }

    fn seq(t: &str) -> Sequent {
        parse_sequent(t, &d()).unwrap()
    }

    #[test]
    fn balance_match() {
        let cat = catalog(Base::Intuitionistic);
        let b = cat.get("balance").unwrap();
        let sub =
            match_instance(b, &[seq("p |- p")], &seq("alpha STRI0 p |- alpha SRARR0 p")).unwrap();
        assert_eq!(sub["F"].to_string(), "alpha");
        assert_eq!(sub["X"].to_string(), "p");
        assert_eq!(sub["Y"].to_string(), "p");
        assert_eq!(b.var_type("F"), Some(Ty::Fnc));
    }

    #[test]
    fn swap_out_match() {
        let cat = catalog(Base::Intuitionistic);
        let r = cat.get("swap_out_L").unwrap();
        let prem = seq("(a SBTRI3 alpha) SBTRI1 (a SBTRI2 X0) |- Y0");
        let concl = seq("a SBTRI2 (alpha SBTRI0 X0) |- Y0");
        assert!(match_instance(r, &[prem], &concl).is_ok());
    }

    #[test]
    fn id_rejects_distinct_atoms() {
        let cat = catalog(Base::Intuitionistic);
        let err = match_instance(cat.get("Id").unwrap(), &[], &seq("p |- q")).unwrap_err();
        assert!(matches!(err, MatchError::NoMatch { .. }));
    }

    #[test]
    fn apply_and_r() {
        let cat = catalog(Base::Intuitionistic);
        let r = cat.get("and_R").unwrap();
        let dd = d();
        let mut sub = Substitution::new();
        let p = || crate::syntax::parse_op("p", &dd).unwrap();
        let q = || crate::syntax::parse_op("q", &dd).unwrap();
        sub.insert("X".into(), Binding::S(Structure::Op(p())));
        sub.insert("Y".into(), Binding::S(Structure::Op(q())));
        sub.insert("A".into(), Binding::O(p()));
        sub.insert("B".into(), Binding::O(q()));
        let inst = apply_schema(r, &sub).unwrap();
        assert_eq!(inst.premises[0].to_string(), "p |- p");
        assert_eq!(inst.premises[1].to_string(), "q |- q");
        assert_eq!(inst.conclusion.to_string(), "p ; q |- p /\\ q");
        assert_eq!(match_instance(r, &inst.premises, &inst.conclusion).unwrap(), sub);
    }

    #[test]
    fn apply_display() {
        let cat = catalog(Base::Intuitionistic);
        let r = cat.get("disp_tri0_brarr0").unwrap();
        let dd = d();
        let mut sub = Substitution::new();
        sub.insert("x".into(), Binding::S(crate::syntax::parse_structure("alpha", &dd).unwrap()));
        sub.insert("y".into(), Binding::S(crate::syntax::parse_structure("p", &dd).unwrap()));
        sub.insert("z".into(), Binding::S(crate::syntax::parse_structure("q", &dd).unwrap()));
        let inst = apply_schema(r, &sub).unwrap();
        assert_eq!(inst.premises[0].to_string(), "alpha STRI0 p |- q");
        assert_eq!(inst.conclusion.to_string(), "p |- alpha SBRARR0 q");
    }

    #[test]
    fn invertible_upwards() {
        let cat = catalog(Base::Intuitionistic);
        let r = cat.get("disp_semi_lt").unwrap();
        let (dir, _) =
            match_directed(r, &[&seq("p |- q < p")], &seq("p ; p |- q")).unwrap();
        assert_eq!(dir, Dir::Up);
    }

    #[test]
    fn atom_axiom_shapes() {
        assert!(match_atom_axiom(&seq("alpha STRI0 (alpha SBTRI0 p) |- alpha SBRARR0 p")).is_ok());
        assert!(match_atom_axiom(&seq("p |- p")).is_ok());
        assert!(match_atom_axiom(&seq("alpha STRI0 p |- q")).is_err());
        assert!(match_atom_axiom(&seq("p |- alpha SBTRI0 p")).is_err());
    }
}
