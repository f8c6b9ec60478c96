use super::*;
use crate::checker::check_proof;
use crate::checker::parse_script;
use crate::syntax::{parse_decls, parse_sequent, Decls};

fn decls() -> Decls {
    parse_decls("prop p q r s A B X Y Z. agent c d. fnc alpha beta.").unwrap()
}

fn seq(t: &str) -> Sequent {
    parse_sequent(t, &decls()).unwrap()
}

fn hyp(t: &str) -> ProofTree {
    ProofTree::hyp(seq(t))
}

fn node(rule: &str, t: &str, children: Vec<ProofTree>) -> ProofTree {
    ProofTree::new(rule, seq(t), children)
}

fn hyp_opts() -> CheckOptions {
    CheckOptions { base: Base::Classical, allow_cut: true, allow_macros: true, allow_hyp: true }
}

fn valid(t: &ProofTree) {
    let r = check_proof(t, &hyp_opts());
    assert!(r.ok, "{:?}", r.failures);
}

fn corpus(name: &str) -> ProofTree {
    let path = format!("{}/../../corpus/{name}.dcp", env!("CARGO_MANIFEST_DIR"));
    parse_script(&std::fs::read_to_string(path).unwrap()).unwrap().proof
}

#[test]
fn and_principal() {
    let l = node("and_R", "X ; Y |- A /\\ B", vec![hyp("X |- A"), hyp("Y |- B")]);
    let r = node("and_L", "A /\\ B |- Z", vec![hyp("A ; B |- Z")]);
    let cut = ProofTree::cut(l, r);
    valid(&cut);
    let out = principal_reduce(&cut, &[]).unwrap();
    valid(&out);
    assert_eq!(out.conclusion, seq("X ; Y |- Z"));
    assert_eq!(out.count_cuts(), 2);
    assert!(out.nodes().iter().filter_map(|(_, n)| n.cut_rank()).all(|r| r.complexity < 3));
}

#[test]
fn identity_shortcut() {
    let l = node("and_L", "A /\\ B |- A", vec![node("W2_L", "A ; B |- A", vec![ProofTree::leaf("Id", seq("A |- A"))])]);
    let cut = ProofTree::cut(l.clone(), ProofTree::leaf("Id", seq("A |- A")));
    assert_eq!(principal_reduce(&cut, &[]).unwrap(), l);
    assert_eq!(eliminate_cuts(&cut, DEFAULT_FUEL).unwrap(), l);
}

#[test]
fn parametric_through_weakening_and_contraction() {
    // Right premise: p /\ q used twice via contraction.
    let r = node(
        "C_L",
        "p /\\ q |- (p /\\ q) /\\ (p /\\ q)",
        vec![node(
            "and_R",
            "(p /\\ q) ; (p /\\ q) |- (p /\\ q) /\\ (p /\\ q)",
            vec![hyp("p /\\ q |- p /\\ q"), hyp("p /\\ q |- p /\\ q")],
        )],
    );
    let l = node("and_R", "p ; q |- p /\\ q", vec![ProofTree::leaf("Id", seq("p |- p")), ProofTree::leaf("Id", seq("q |- q"))]);
    let cut = ProofTree::cut(l, r);
    valid(&cut);
    // The traced occurrences end at hypotheses, which have no history.
    assert!(matches!(eliminate_cuts(&cut, DEFAULT_FUEL), Err(CutElimError::HistoryUntraceable { .. })));
    let and_l = node(
        "and_L",
        "p /\\ q |- p",
        vec![node("disp_semi_gt", "p ; q |- p", vec![node("W2_L", "q |- p > p", vec![ProofTree::leaf("Id", seq("p |- p"))])])],
    );
    let r = node(
        "C_L",
        "p /\\ q |- p",
        vec![node(
            "disp_semi_gt",
            "(p /\\ q) ; (p /\\ q) |- p",
            vec![node("W2_L", "p /\\ q |- (p /\\ q) > p", vec![and_l])],
        )],
    );
    let l = node("and_R", "p ; q |- p /\\ q", vec![ProofTree::leaf("Id", seq("p |- p")), ProofTree::leaf("Id", seq("q |- q"))]);
    let cut = ProofTree::cut(l, r);
    valid(&cut);
    let out = eliminate_cuts(&cut, DEFAULT_FUEL).unwrap();
    valid(&out);
    assert_eq!(out.count_cuts(), 0);
    assert_eq!(out.conclusion, seq("p ; q |- p"));
}

#[test]
fn hypothesis_blocks_tracing() {
    let l = node("and_R", "X ; Y |- A /\\ B", vec![hyp("X |- A"), hyp("Y |- B")]);
    let cut = ProofTree::cut(l, hyp("A /\\ B |- Z"));
    assert!(matches!(eliminate_cuts(&cut, DEFAULT_FUEL), Err(CutElimError::HistoryUntraceable { .. })));
}

#[test]
fn not_a_cut() {
    let t = ProofTree::leaf("Id", seq("p |- p"));
    assert_eq!(principal_reduce(&t, &[]), Err(CutElimError::NotACut(vec![])));
}

#[test]
fn fuel_exhaustion_keeps_residual() {
    let l = node("and_R", "X ; Y |- A /\\ B", vec![hyp("X |- A"), hyp("Y |- B")]);
    let r = node("and_L", "A /\\ B |- Z", vec![hyp("A ; B |- Z")]);
    let cut = ProofTree::cut(l, r);
    match eliminate_cuts(&cut, 0) {
        Err(CutElimError::FuelExhausted { steps: 0, residual }) => assert_eq!(*residual, cut),
        other => panic!("{other:?}"),
    }
}

#[test]
fn corpus_round_trips_are_eliminable() {
    for stem in PAIRS {
        let a = corpus(&format!("{stem}_lr"));
        let b = corpus(&format!("{stem}_rl"));
        for (l, r) in [(a.clone(), b.clone()), (b, a)] {
            let cut = ProofTree::cut(l, r);
            let e = eliminate_cuts_traced(&cut, DEFAULT_FUEL).unwrap_or_else(|e| panic!("{stem}: {e}"));
            assert_eq!(e.proof.count_cuts(), 0, "{stem}");
            assert_eq!(e.proof.conclusion, cut.conclusion, "{stem}");
            let r = check_proof(&e.proof, &CheckOptions::default());
            assert!(r.ok, "{stem}: {:?}", r.failures);
            for s in e.steps.iter().filter(|s| s.kind == StepKind::Principal) {
                assert!(s.max_new_complexity.is_none_or(|m| m < s.complexity), "{stem}: {s:?}");
            }
        }
    }
}

const PAIRS: [&str; 13] = [
    "dia_atom", "box_atom", "box_bot", "dia_bot", "box_top", "box_and", "dia_and", "dia_or", "box_or", "dia_imp",
    "box_imp", "swap_dia_box", "box_dia",
];
