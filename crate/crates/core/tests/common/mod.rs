//! Random typed terms, sequents and schema instantiations for the property
//! suites and the acceptance run.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use dcal::conservativity::is_severe;
use dcal::display::applicable_postulates;
use dcal::rules::{apply_schema, catalog, rewrite, Base, Binding, RuleInstance, RuleSchema, Substitution};
use dcal::syntax::{DeclKind, Op, OpConn, SConn, Sequent, Structure, Ty};

pub const FM_ATOMS: [&str; 3] = ["p", "q", "r"];
pub const AG_ATOMS: [&str; 2] = ["c", "d"];
pub const FNC_ATOMS: [&str; 2] = ["alpha", "beta"];

fn atoms(ty: Ty) -> &'static [&'static str] {
    match ty {
        Ty::Fm => &FM_ATOMS,
        Ty::Ag => &AG_ATOMS,
        Ty::Fnc => &FNC_ATOMS,
        Ty::Act => &[],
    }
}

/// Atoms of type `ty`.
pub fn atom(ty: Ty) -> BoxedStrategy<Op> {
    let names: Vec<&'static str> = atoms(ty).to_vec();
    prop::sample::select(names).prop_map(move |n| Op::atom(ty, n)).boxed()
}

/// Operational terms of type `ty` with connective nesting at most `depth`.
pub fn op(ty: Ty, depth: u32) -> BoxedStrategy<Op> {
    let mut leaves: Vec<BoxedStrategy<Op>> = Vec::new();
    if !atoms(ty).is_empty() {
        leaves.push(atom(ty));
    }
    if ty == Ty::Fm {
        leaves.push(Just(Op::Top).boxed());
        leaves.push(Just(Op::Bot).boxed());
    }
    let conns: Vec<OpConn> = OpConn::all().into_iter().filter(|c| c.signature().2 == ty).collect();
    let mut all = leaves;
    if depth > 0 || all.is_empty() {
        let d = depth.saturating_sub(1);
        for c in conns {
            let (a, b, _) = c.signature();
            all.push((op(a, d), op(b, d)).prop_map(move |(l, r)| Op::bin(c, l, r)).boxed());
        }
    }
    proptest::strategy::Union::new(all).boxed()
}

/// Structures of type `ty` with nesting at most `depth`.
pub fn structure(ty: Ty, depth: u32) -> BoxedStrategy<Structure> {
    let mut all: Vec<BoxedStrategy<Structure>> = vec![op(ty, depth.min(1)).prop_map(Structure::Op).boxed()];
    if ty == Ty::Fm {
        all.push(Just(Structure::I).boxed());
    }
    if depth > 0 {
        for c in SConn::all().into_iter().filter(|c| c.signature().2 == ty) {
            let (a, b, _) = c.signature();
            all.push(
                (structure(a, depth - 1), structure(b, depth - 1))
                    .prop_map(move |(l, r)| Structure::bin(c, l, r))
                    .boxed(),
            );
        }
    }
    proptest::strategy::Union::new(all).boxed()
}

/// Type-uniform sequents of any type.
pub fn sequent(depth: u32) -> BoxedStrategy<Sequent> {
    prop::sample::select(Ty::ALL.to_vec())
        .prop_flat_map(move |ty| (structure(ty, depth), structure(ty, depth)))
        .prop_map(|(l, r)| Sequent::new(l, r))
        .boxed()
}

/// Substitutions binding every metavariable of `schema` at its type.
pub fn substitution(schema: &RuleSchema, depth: u32) -> BoxedStrategy<Substitution> {
    let mut parts: Vec<BoxedStrategy<(String, Binding)>> = Vec::new();
    for (name, kind) in schema.vars.iter() {
        let n = name.to_string();
        let s = match *kind {
            DeclKind::StructVar(t) => structure(t, depth).prop_map(move |x| (n.clone(), Binding::S(x))).boxed(),
            DeclKind::OpVar(t) => op(t, depth).prop_map(move |x| (n.clone(), Binding::O(x))).boxed(),
            DeclKind::AtomVar(t) => atom(t).prop_map(move |x| (n.clone(), Binding::O(x))).boxed(),
            DeclKind::Atom(_) => continue,
        };
        parts.push(s);
    }
    parts
        .prop_map(|bs| bs.into_iter().map(|(n, b)| (n.as_str().into(), b)).collect::<Substitution>())
        .boxed()
}

/// Random instances of `schema`.
pub fn instance(schema: &'static RuleSchema, depth: u32) -> BoxedStrategy<RuleInstance> {
    substitution(schema, depth)
        .prop_map(move |s| apply_schema(schema, &s).expect("typed substitution instantiates"))
        .boxed()
}

/// A deterministic sampler for fixed-count runs outside `proptest!`.
pub struct Sampler {
    runner: TestRunner,
}

impl Sampler {
    pub fn new(seed: u8) -> Sampler {
        let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]);
        Sampler { runner: TestRunner::new_with_rng(Config::default(), rng) }
    }

    pub fn sample<T: std::fmt::Debug>(&mut self, s: &BoxedStrategy<T>) -> T {
        s.new_tree(&mut self.runner).expect("strategy generates").current()
    }
}

/// Every schema that can be instantiated by substitution.
pub fn instantiable_rules() -> Vec<&'static RuleSchema> {
    catalog(Base::Classical).rules.iter().filter(|r| !r.atom_axiom).collect()
}

/// Instances of a random instantiable rule.
pub fn any_instance(depth: u32) -> BoxedStrategy<(&'static RuleSchema, RuleInstance)> {
    prop::sample::select(instantiable_rules())
        .prop_flat_map(move |r| instance(r, depth).prop_map(move |i| (r, i)))
        .boxed()
}

/// Type-uniform premises must give a type-uniform conclusion.
pub fn uniformity_violation(inst: &RuleInstance) -> Option<String> {
    let premises_ok = inst.premises.iter().all(Sequent::is_type_uniform);
    (premises_ok && !inst.conclusion.is_type_uniform())
        .then(|| format!("{}: conclusion `{}` is not type-uniform", inst.schema, inst.conclusion))
}

/// A severe premise must give a severe conclusion. Invertible rules are
/// checked in both directions.
pub fn severity_violation(schema: &RuleSchema, inst: &RuleInstance) -> Option<String> {
    if inst.premises.iter().any(is_severe) && !is_severe(&inst.conclusion) {
        return Some(format!("{}: severe premise, non-severe conclusion `{}`", inst.schema, inst.conclusion));
    }
    if schema.invertible && is_severe(&inst.conclusion) && !inst.premises.iter().any(is_severe) {
        return Some(format!("{} (upwards): severe `{}`, non-severe premises", inst.schema, inst.conclusion));
    }
    None
}

/// Whether some premise (or, for invertible rules, the conclusion) is severe.
pub fn has_severe_source(schema: &RuleSchema, inst: &RuleInstance) -> bool {
    inst.premises.iter().any(is_severe) || (schema.invertible && is_severe(&inst.conclusion))
}

/// Every postulate applicable at the root, undone by the same postulate in
/// the other direction, must give back `s`.
pub fn involution_violation(s: &Sequent) -> Option<String> {
    for (rule, dir, t) in applicable_postulates(s) {
        let schema = catalog(Base::Classical).get(&rule).expect("postulate");
        match rewrite(schema, dir.flip(), &t) {
            Some((back, _)) if back == *s => {}
            other => return Some(format!("{rule} {dir:?} on `{s}` then back gives {other:?}")),
        }
    }
    None
}
