//! Per-schema checks of the syntactic Belnap-style conditions on the rule
//! catalog, plus deliberately broken catalogs exercising each check.
//!
//! Checked here:
//!
//! * **C1** — every operational term in a premise of an operational rule is
//!   a subterm of an operational term in the conclusion.
//! * **C'2** — every occurrence of a metavariable sits in a slot of the
//!   metavariable's declared type.
//! * **C'3** — a structural parameter occurs at most once in the
//!   conclusion, except AG and FNC parameters.
//! * **C4** — all occurrences of a structural parameter are in precedent
//!   position, or all in succedent position.
//! * **C10** — cut schemas are strongly type-uniform.
//!
//! The remaining conditions quantify over derivations and are covered by
//! the checker and cut-elimination test suites; see [`DEFERRED`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::rules::{catalog, instantiate_sequent, Base, Binding, RuleKind, RuleSchema, Substitution};
use crate::syntax::{DeclKind, Name, Op, OpConn, Place, Pos, SConn, Sequent, Side, Structure, Ty};

#[cfg(test)]
mod tests;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    C1,
    C2Prime,
    C3Prime,
    C4,
    C10,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::C1 => "C1",
            Condition::C2Prime => "C'2",
            Condition::C3Prime => "C'3",
            Condition::C4 => "C4",
            Condition::C10 => "C10",
        })
    }
}

/// Conditions left to the test suites, with the reason.
pub const DEFERRED: [(&str, &str); 7] = [
    ("C'5", "verified by test suite, not by lint: identity axioms are checked by the corpus and golden files"),
    ("C''5", "verified by test suite, not by lint: atom-axiom display equivalence is exercised by cut elimination"),
    ("C'6", "verified by test suite, not by lint: parameter substitution is checked on every parametric step"),
    ("C'7", "verified by test suite, not by lint: substitution into weakened parameters is checked the same way"),
    ("C'8", "verified by test suite, not by lint: principal reductions are checked against golden files"),
    ("C''8", "verified by test suite, not by lint: the AG/FNC cut cases are golden files"),
    ("C9", "verified by test suite, not by lint: type-uniformity preservation is property-tested"),
];

/// The instantiated rule a violation was observed on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub substitution: Substitution,
    pub premises: Vec<Sequent>,
    pub conclusion: Sequent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: String,
    pub condition: Condition,
    pub detail: String,
    pub witness: Option<Witness>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} violated: {}", self.rule, self.condition, self.detail)?;
        if let Some(w) = &self.witness {
            let prem: Vec<String> = w.premises.iter().map(|p| p.to_string()).collect();
            write!(f, " [witness: {} / {}]", prem.join(" , "), w.conclusion)?;
        }
        Ok(())
    }
}

/// A fresh constant of each type, distinct per metavariable.
fn canonical(schema: &RuleSchema) -> Substitution {
    let mut sub = Substitution::new();
    for (k, (name, kind)) in schema.vars.iter().enumerate() {
        let ty = schema.vars.meta_type(name).expect("metavariable");
        let atom = |t: Ty, stem: &str| Op::atom(t, &format!("{stem}{k}"));
        let o = match ty {
            Ty::Fm => atom(Ty::Fm, "p"),
            Ty::Ag => atom(Ty::Ag, "a"),
            Ty::Fnc => atom(Ty::Fnc, "f"),
            Ty::Act => Op::bin(OpConn::Tri(3), atom(Ty::Ag, "a"), atom(Ty::Fnc, "f")),
        };
        let b = match kind {
            DeclKind::StructVar(_) => Binding::S(Structure::Op(o)),
            _ => Binding::O(o),
        };
        sub.insert(name.clone(), b);
    }
    sub
}

fn witness(schema: &RuleSchema) -> Option<Witness> {
    let substitution = canonical(schema);
    let premises =
        schema.premises.iter().map(|p| instantiate_sequent(p, &substitution)).collect::<Result<Vec<_>, _>>().ok()?;
    let conclusion = instantiate_sequent(&schema.conclusion, &substitution).ok()?;
    Some(Witness { substitution, premises, conclusion })
}

fn op_leaves<'a>(s: &'a Structure, out: &mut Vec<&'a Op>) {
    match s {
        Structure::Op(o) => out.push(o),
        Structure::Bin(_, l, r) => {
            op_leaves(l, out);
            op_leaves(r, out);
        }
        _ => {}
    }
}

fn sequent_ops(s: &Sequent) -> Vec<&Op> {
    let mut out = Vec::new();
    op_leaves(&s.lhs, &mut out);
    op_leaves(&s.rhs, &mut out);
    out
}

fn check_c1(r: &RuleSchema) -> Vec<String> {
    if r.kind != RuleKind::Operational {
        return Vec::new();
    }
    let concl = sequent_ops(&r.conclusion);
    let mut bad = BTreeSet::new();
    for p in &r.premises {
        for o in sequent_ops(p) {
            if !concl.iter().any(|c| o.is_subterm_of(c)) {
                bad.insert(o.to_string());
            }
        }
    }
    bad.into_iter().map(|o| format!("premise term `{o}` is not a subterm of the conclusion")).collect()
}

/// One metavariable occurrence with the type its slot demands and, for
/// structural metavariables, its place.
struct MetaOcc {
    name: Name,
    slot: Option<Ty>,
    place: Option<Place>,
    at: String,
}

fn collect_op(o: &Op, slot: Option<Ty>, at: &str, out: &mut Vec<MetaOcc>) {
    match o {
        Op::Meta(n) => out.push(MetaOcc { name: n.clone(), slot, place: None, at: at.to_string() }),
        Op::Bin(c, l, r) => {
            let (a, b, _) = c.signature();
            collect_op(l, Some(a), at, out);
            collect_op(r, Some(b), at, out);
        }
        _ => {}
    }
}

fn slot_type(c: SConn, k: u8) -> Ty {
    let (a, b, _) = c.signature();
    if k == 0 {
        a
    } else {
        b
    }
}

fn collect_sequent(s: &Sequent, label: &str, vars: &crate::syntax::Decls, out: &mut Vec<MetaOcc>) {
    for side in [Side::Lhs, Side::Rhs] {
        let other = s.side(side.flip()).ty_with(&|n| vars.meta_type(n)).ok();
        for (path, _, sub) in s.side(side).occurrences() {
            let pos = Pos { side, path: path.clone() };
            let slot = match path.split_last() {
                None => other,
                Some((k, parent)) => match s.side(side).at(parent) {
                    Some(Structure::Bin(c, _, _)) => Some(slot_type(*c, *k)),
                    _ => None,
                },
            };
            let at = format!("{label} {pos}");
            match sub {
                Structure::Meta(n) => out.push(MetaOcc { name: n.clone(), slot, place: s.place(&pos), at }),
                Structure::Op(o) => collect_op(o, slot, &at, out),
                _ => {}
            }
        }
    }
}

fn occurrences(r: &RuleSchema) -> Vec<MetaOcc> {
    let mut out = Vec::new();
    for (k, p) in r.premises.iter().enumerate() {
        collect_sequent(p, &format!("premise {k}"), &r.vars, &mut out);
    }
    collect_sequent(&r.conclusion, "conclusion", &r.vars, &mut out);
    out
}

fn check_c2(r: &RuleSchema, occs: &[MetaOcc]) -> Vec<String> {
    let mut out = Vec::new();
    for o in occs {
        let declared = r.vars.meta_type(&o.name);
        if let (Some(d), Some(slot)) = (declared, o.slot) {
            if d != slot {
                out.push(format!("`{}` of type {d} stands in a {slot} slot at {}", o.name, o.at));
            }
        }
    }
    out
}

fn check_c3(r: &RuleSchema) -> Vec<String> {
    if r.atom_axiom || r.kind == RuleKind::Macro {
        return Vec::new();
    }
    let mut count: BTreeMap<Name, usize> = BTreeMap::new();
    for side in [Side::Lhs, Side::Rhs] {
        for (_, _, s) in r.conclusion.side(side).occurrences() {
            if let Structure::Meta(n) = s {
                *count.entry(n.clone()).or_default() += 1;
            }
        }
    }
    count
        .into_iter()
        .filter(|(n, k)| *k > 1 && !matches!(r.vars.meta_type(n), Some(Ty::Ag | Ty::Fnc)))
        .map(|(n, k)| format!("parameter `{n}` occurs {k} times in the conclusion"))
        .collect()
}

fn check_c4(occs: &[MetaOcc]) -> Vec<String> {
    let mut places: BTreeMap<&Name, Vec<(&str, Place)>> = BTreeMap::new();
    for o in occs {
        if let Some(p) = o.place {
            places.entry(&o.name).or_default().push((&o.at, p));
        }
    }
    places
        .into_iter()
        .filter(|(_, ps)| ps.iter().any(|(_, p)| *p != ps[0].1))
        .map(|(n, ps)| {
            let list: Vec<String> = ps.iter().map(|(at, p)| format!("{p} at {at}")).collect();
            format!("parameter `{n}` is {}", list.join(", "))
        })
        .collect()
}

fn check_c10(r: &RuleSchema) -> Vec<String> {
    if r.kind != RuleKind::Cut {
        return Vec::new();
    }
    let ty = |s: &Sequent| s.lhs.ty_with(&|n| r.vars.meta_type(n)).ok().zip(s.rhs.ty_with(&|n| r.vars.meta_type(n)).ok());
    let mut types = Vec::new();
    for s in r.premises.iter().chain(std::iter::once(&r.conclusion)) {
        match ty(s) {
            Some((a, b)) if a == b => types.push(a),
            Some((a, b)) => return vec![format!("`{s}` is not type-uniform ({a} vs {b})")],
            None => return vec![format!("`{s}` is ill-typed")],
        }
    }
    if types.iter().any(|t| *t != types[0]) {
        let names: Vec<String> = types.iter().map(|t| t.to_string()).collect();
        return vec![format!("premises and conclusion have different types ({})", names.join(", "))];
    }
    Vec::new()
}

/// Lints every schema; an empty result means all checked conditions hold.
pub fn lint_catalog(rules: &[RuleSchema]) -> Vec<Violation> {
    let mut out = Vec::new();
    for r in rules {
        if r.atom_axiom {
            continue;
        }
        let occs = occurrences(r);
        let found = [
            (Condition::C1, check_c1(r)),
            (Condition::C2Prime, check_c2(r, &occs)),
            (Condition::C3Prime, check_c3(r)),
            (Condition::C4, check_c4(&occs)),
            (Condition::C10, check_c10(r)),
        ];
        for (condition, details) in found {
            for detail in details {
                out.push(Violation { rule: r.name.clone(), condition, detail, witness: witness(r) });
            }
        }
    }
    out
}

fn replace(rules: &mut [RuleSchema], name: &str, edit: impl FnOnce(&mut RuleSchema)) {
    let r = rules.iter_mut().find(|r| r.name == name).expect("rule in catalog");
    edit(r);
}

fn meta(n: &str) -> Structure {
    Structure::Meta(n.into())
}

/// A broken catalog together with the conditions it is meant to violate.
pub struct Mutant {
    pub name: &'static str,
    pub rules: Vec<RuleSchema>,
    pub intended: BTreeSet<Condition>,
}

/// `and_L` whose premise mentions a formula `C` absent from the conclusion.
pub fn mutant_c1() -> Mutant {
    let mut rules = catalog(Base::Intuitionistic).rules.clone();
    replace(&mut rules, "and_L", |r| {
        r.vars = r.vars.clone().with("C", DeclKind::OpVar(Ty::Fm));
        let a = Structure::Op(Op::Meta("A".into()));
        let c = Structure::Op(Op::Meta("C".into()));
        r.premises[0] = Sequent::new(Structure::bin(SConn::Semi, a, c), meta("Z"));
    });
    Mutant { name: "and_L with a fresh premise formula", rules, intended: BTreeSet::from([Condition::C1]) }
}

/// `disp_tri0_brarr0` whose premise swaps the roles of its parameters:
/// each lands in a slot of the wrong type and on the wrong side.
pub fn mutant_c2_c4() -> Mutant {
    let mut rules = catalog(Base::Intuitionistic).rules.clone();
    replace(&mut rules, "disp_tri0_brarr0", |r| {
        r.premises[0] = Sequent::new(Structure::bin(SConn::Stri(0), meta("z"), meta("y")), meta("x"));
    });
    Mutant {
        name: "display postulate with swapped parameters",
        rules,
        intended: BTreeSet::from([Condition::C2Prime, Condition::C4]),
    }
}

/// `Cut_FM` concluding an AG sequent.
pub fn mutant_c10() -> Mutant {
    let mut rules = catalog(Base::Intuitionistic).rules.clone();
    replace(&mut rules, "Cut_FM", |r| {
        r.vars = r.vars.clone().with("u v", DeclKind::StructVar(Ty::Ag));
        r.conclusion = Sequent::new(meta("u"), meta("v"));
    });
    Mutant { name: "Cut_FM with an AG conclusion", rules, intended: BTreeSet::from([Condition::C10]) }
}

pub fn mutants() -> Vec<Mutant> {
    vec![mutant_c1(), mutant_c2_c4(), mutant_c10()]
}
