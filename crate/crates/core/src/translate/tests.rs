use proptest::prelude::*;

use super::*;
use crate::syntax::{parse_decls, parse_op};

fn decls() -> Decls {
    parse_decls("prop p q. agent a b. fnc alpha beta.").unwrap()
}

fn tr(text: &str) -> String {
    from_deak(&parse_deak(text, &Decls::new()).unwrap()).to_string()
}

fn op(text: &str) -> Op {
    parse_op(text, &decls()).unwrap()
}

#[test]
fn table_examples() {
    assert_eq!(tr("dia(alpha, p)"), "alpha tri0 p");
    assert_eq!(tr("box(alpha, p)"), "alpha rarr0 p");
    assert_eq!(tr("bdia(alpha, p)"), "alpha btri0 p");
    assert_eq!(tr("bbox(alpha, p)"), "alpha brarr0 p");
    assert_eq!(tr("dia(a, p)"), "a tri2 p");
    assert_eq!(tr("box(a, p)"), "a rarr2 p");
    assert_eq!(tr("bdia(a, p)"), "a btri2 p");
    assert_eq!(tr("bbox(a, p)"), "a brarr2 p");
    assert_eq!(tr("one(alpha)"), "alpha tri0 top");
    assert_eq!(tr("p /\\ q"), "p /\\ q");
    assert_eq!(tr("dia(alpha, p) -> (one(beta) /\\ box(a, q))"), "(alpha tri0 p) -> ((beta tri0 top) /\\ (a rarr2 q))");
}

#[test]
fn typed_results() {
    let o = from_deak(&parse_deak("box(a, dia(alpha, p lsub q))", &Decls::new()).unwrap());
    assert_eq!(o, op("a rarr2 (alpha tri0 (p lsub q))"));
    assert_eq!(o.infer_type().unwrap(), Ty::Fm);
}

#[test]
fn pre_of_agrees_with_one() {
    assert_eq!(pre_of("alpha").to_string(), "alpha tri0 top");
    assert_eq!(pre_of("beta").to_string(), "beta tri0 top");
    assert_eq!(from_deak(&DeakTerm::One("alpha".into())), pre_of("alpha"));
}

#[test]
fn index_classification() {
    let d = Decls::new();
    assert_eq!(classify_index("alpha", &d).unwrap(), Index::Action("alpha".into()));
    assert_eq!(classify_index("beta2", &d).unwrap(), Index::Action("beta2".into()));
    assert_eq!(classify_index("a", &d).unwrap(), Index::Agent("a".into()));
    let d = parse_decls("fnc k. agent alpha.").unwrap();
    assert_eq!(classify_index("k", &d).unwrap(), Index::Action("k".into()));
    assert_eq!(classify_index("alpha", &d).unwrap(), Index::Agent("alpha".into()));
    assert!(parse_deak("dia(p, q)", &decls()).is_err());
    assert!(parse_deak("one(a)", &decls()).is_err());
}

#[test]
fn parse_errors() {
    for bad in ["p /\\ q /\\ p", "dia(alpha p)", "dia(alpha, p", "p $ q", "/\\ p", ""] {
        assert!(parse_deak(bad, &decls()).is_err(), "{bad}");
    }
}

#[test]
fn image_membership() {
    assert!(in_image(&op("alpha tri0 (a rarr2 p)")));
    assert!(!in_image(&op("(a tri3 alpha) tri1 p")));
    assert!(!in_image(&op("a")));
    assert!(!in_image(&op("alpha")));
}

fn deak() -> impl Strategy<Value = DeakTerm> {
    let leaf = prop_oneof![
        Just(DeakTerm::Top),
        Just(DeakTerm::Bot),
        prop::sample::select(vec!["p", "q"]).prop_map(|n| DeakTerm::Atom(n.into())),
        prop::sample::select(vec!["alpha", "beta"]).prop_map(|n| DeakTerm::One(n.into())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let conns: Vec<OpConn> = OpConn::all().into_iter().filter(|c| !c.is_heterogeneous()).collect();
        let idx = prop_oneof![
            prop::sample::select(vec!["alpha", "beta"]).prop_map(|n| Index::Action(n.into())),
            prop::sample::select(vec!["a", "b"]).prop_map(|n| Index::Agent(n.into())),
        ];
        prop_oneof![
            (prop::sample::select(conns), inner.clone(), inner.clone()).prop_map(|(c, l, r)| DeakTerm::bin(c, l, r)),
            (prop::sample::select(Modality::ALL.to_vec()), idx, inner).prop_map(|(m, i, a)| DeakTerm::modal(m, i, a)),
        ]
    })
}

/// `one(alpha)` and `dia(alpha, top)` share a translation; compare modulo
/// that identification.
fn normal(t: &DeakTerm) -> DeakTerm {
    match t {
        DeakTerm::One(a) => DeakTerm::modal(Modality::Dia, Index::Action(a.clone()), DeakTerm::Top),
        DeakTerm::Bin(c, l, r) => DeakTerm::bin(*c, normal(l), normal(r)),
        DeakTerm::Modal(m, i, a) => DeakTerm::modal(*m, i.clone(), normal(a)),
        t => t.clone(),
    }
}

proptest! {
    #[test]
    fn print_parse_round_trip(t in deak()) {
        prop_assert_eq!(parse_deak(&t.to_string(), &decls()).unwrap(), t);
    }

    #[test]
    fn translation_is_well_typed_and_in_image(t in deak()) {
        let o = from_deak(&t);
        prop_assert_eq!(o.infer_type().unwrap(), Ty::Fm);
        prop_assert!(in_image(&o));
        prop_assert_eq!(to_deak(&o).unwrap(), normal(&t));
    }

    #[test]
    fn injective_up_to_preconditions(s in deak(), t in deak()) {
        if from_deak(&s) == from_deak(&t) {
            prop_assert_eq!(normal(&s), normal(&t));
        }
    }

    #[test]
    fn propositional_fragment_is_preserved(t in deak().prop_filter("propositional", DeakTerm::is_propositional)) {
        prop_assert_eq!(from_deak(&t).to_string(), t.to_string());
    }
}
