//! The built-in rule table.
//!
//! Schemas are written as pattern strings over a per-rule metavariable table
//! and parsed once on first use.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::{RuleKind, RuleSchema};
use crate::syntax::{parse_sequent, DeclKind, Decls, Ty};

/// Logical base of the calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    Intuitionistic,
    /// Adds the Grishin rules.
    Classical,
}

pub struct Catalog {
    pub base: Base,
    pub rules: Vec<RuleSchema>,
    index: HashMap<String, usize>,
}

impl Catalog {
    pub fn get(&self, name: &str) -> Option<&RuleSchema> {
        self.index.get(name).map(|&k| &self.rules[k])
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Builds a catalog from an arbitrary schema list (used for mutants).
    pub fn from_rules(base: Base, rules: Vec<RuleSchema>) -> Catalog {
        let index = rules.iter().enumerate().map(|(k, r)| (r.name.clone(), k)).collect();
        Catalog { base, rules, index }
    }
}

/// The rule catalog for `base`.
pub fn catalog(base: Base) -> &'static Catalog {
    static INT: OnceLock<Catalog> = OnceLock::new();
    static CLS: OnceLock<Catalog> = OnceLock::new();
    let cell = match base {
        Base::Intuitionistic => &INT,
        Base::Classical => &CLS,
    };
    cell.get_or_init(|| Catalog::from_rules(base, build(base)))
}

/// Metavariable table from `(names, kind)` groups.
pub fn vars(groups: &[(&str, DeclKind)]) -> Decls {
    groups.iter().fold(Decls::new(), |d, (n, k)| d.with(n, *k))
}

/// Parses a schema; panics on malformed patterns (the table is static).
pub fn schema(
    name: &str,
    kind: RuleKind,
    vars: Decls,
    premises: &[&str],
    conclusion: &str,
    invertible: bool,
) -> RuleSchema {
    let p = |t: &str| {
        parse_sequent(t, &vars).unwrap_or_else(|e| panic!("rule {name}: `{t}`: {e}"))
    };
    let premises: Vec<_> = premises.iter().map(|t| p(t)).collect();
    let conclusion = p(conclusion);
    let mut used = std::collections::BTreeSet::new();
    for s in premises.iter().chain(std::iter::once(&conclusion)) {
        used.extend(super::meta_names(s));
    }
    let vars = vars
        .iter()
        .filter(|(n, _)| used.contains(*n))
        .fold(Decls::new(), |d, (n, k)| d.with(n, *k));
    RuleSchema {
        name: name.to_string(),
        kind,
        premises,
        conclusion,
        invertible,
        vars,
        atom_axiom: false,
        expansion: Vec::new(),
    }
}

use DeclKind::{AtomVar, OpVar, StructVar};

fn fm() -> Decls {
    vars(&[("X Y Z W", StructVar(Ty::Fm)), ("A B", OpVar(Ty::Fm))])
}

/// Variables for heterogeneous index `i`: `x y z` structural of the first,
/// second and result types, `a b` operational of the first and second.
fn het(i: u8) -> Decls {
    let (t1, t2, t3) = crate::syntax::OpConn::Tri(i).signature();
    vars(&[
        ("x", StructVar(t1)),
        ("y", StructVar(t2)),
        ("z", StructVar(t3)),
        ("a", OpVar(t1)),
        ("b", OpVar(t2)),
    ])
}

fn het_arrow(i: u8) -> Decls {
    vars(&[
        ("x", StructVar(Ty::het_first(i))),
        ("a", OpVar(Ty::het_first(i))),
        ("Y Z W", StructVar(Ty::Fm)),
        ("B", OpVar(Ty::Fm)),
    ])
}

fn swap_vars() -> Decls {
    vars(&[("a", StructVar(Ty::Ag)), ("F", StructVar(Ty::Fnc)), ("X Y", StructVar(Ty::Fm))])
}

fn macro_vars() -> Decls {
    vars(&[("F", StructVar(Ty::Fnc)), ("X Y", StructVar(Ty::Fm))])
}

fn build(base: Base) -> Vec<RuleSchema> {
    use RuleKind::*;
    // Axioms.
    let mut r = vec![
        schema("Id", Axiom, vars(&[("p", AtomVar(Ty::Fm))]), &[], "p |- p", false),
        schema("AgId", Axiom, vars(&[("a", AtomVar(Ty::Ag))]), &[], "a |- a", false),
        schema("FncId", Axiom, vars(&[("f", AtomVar(Ty::Fnc))]), &[], "f |- f", false),
        schema("BotL", Axiom, Decls::new(), &[], "bot |- I", false),
    ];
    r.push(schema("TopR", Axiom, Decls::new(), &[], "I |- top", false));
    let mut atom = schema("Atom", Axiom, vars(&[("p", AtomVar(Ty::Fm))]), &[], "p |- p", false);
    atom.atom_axiom = true;
    r.push(atom);

    // Cuts, one per type.
    for (t, n) in [(Ty::Ag, "AG"), (Ty::Fnc, "FNC"), (Ty::Act, "ACT"), (Ty::Fm, "FM")] {
        let v = vars(&[("x y", StructVar(t)), ("a", OpVar(t))]);
        r.push(schema(&format!("Cut_{n}"), Cut, v, &["x |- a", "a |- y"], "x |- y", false));
    }

    // Structural rules on FM.
    let st: &[(&str, &str, &str, bool)] = &[
        ("I1_L", "X |- Y", "I |- Y < X", true),
        ("I1_R", "X |- Y", "X < Y |- I", true),
        ("I2_L", "X |- Y", "I |- X > Y", true),
        ("I2_R", "X |- Y", "Y > X |- I", true),
        ("IW_L", "I |- X", "Y |- X", false),
        ("IW_R", "X |- I", "X |- Y", false),
        ("W1_L", "X |- Z", "Y |- Z < X", false),
        ("W1_R", "X |- Z", "X < Z |- Y", false),
        ("W2_L", "X |- Z", "Y |- X > Z", false),
        ("W2_R", "X |- Z", "Z > X |- Y", false),
        ("C_L", "X ; X |- Y", "X |- Y", false),
        ("C_R", "Y |- X ; X", "Y |- X", false),
        ("E_L", "Y ; X |- Z", "X ; Y |- Z", false),
        ("E_R", "Z |- X ; Y", "Z |- Y ; X", false),
        ("A_L", "X ; (Y ; Z) |- W", "(X ; Y) ; Z |- W", false),
        ("A_R", "W |- (Z ; Y) ; X", "W |- Z ; (Y ; X)", false),
    ];
    for (n, p, c, inv) in st {
        r.push(schema(n, Structural, fm(), &[p], c, *inv));
    }

    // Display postulates on FM.
    let dp: &[(&str, &str, &str)] = &[
        ("disp_semi_lt", "X ; Y |- Z", "X |- Z < Y"),
        ("disp_lt_semi", "Z |- X ; Y", "Z < Y |- X"),
        ("disp_semi_gt", "X ; Y |- Z", "Y |- X > Z"),
        ("disp_gt_semi", "Z |- X ; Y", "X > Z |- Y"),
    ];
    for (n, p, c) in dp {
        r.push(schema(n, Display, fm(), &[p], c, true));
    }

    // Heterogeneous display postulates.
    for i in 0..=2u8 {
        r.push(schema(
            &format!("disp_tri{i}_brarr{i}"),
            Display,
            het(i),
            &[&format!("x STRI{i} y |- z")],
            &format!("y |- x SBRARR{i} z"),
            true,
        ));
        r.push(schema(
            &format!("disp_btri{i}_rarr{i}"),
            Display,
            het(i),
            &[&format!("x SBTRI{i} y |- z")],
            &format!("y |- x SRARR{i} z"),
            true,
        ));
    }
    r.push(schema("disp_tri1_blarr1", Display, het(1), &["x STRI1 y |- z"], "x |- z SBLARR1 y", true));
    r.push(schema("disp_btri1_larr1", Display, het(1), &["x SBTRI1 y |- z"], "x |- z SLARR1 y", true));
    for i in [0u8, 2, 3] {
        r.push(schema(
            &format!("disp_tri{i}_vblarr{i}"),
            Display,
            het(i),
            &[&format!("x STRI{i} y |- z")],
            &format!("x |- z VBLARR{i} y"),
            true,
        ));
        r.push(schema(
            &format!("disp_btri{i}_vlarr{i}"),
            Display,
            het(i),
            &[&format!("x SBTRI{i} y |- z")],
            &format!("x |- z VLARR{i} y"),
            true,
        ));
    }
    r.push(schema("disp_tri3_vbrarr3", Display, het(3), &["x STRI3 y |- z"], "y |- x VBRARR3 z", true));
    r.push(schema("disp_btri3_vrarr3", Display, het(3), &["x SBTRI3 y |- z"], "y |- x VRARR3 z", true));

    if base == Base::Classical {
        r.push(schema("Gri_L", Structural, fm(), &["X > (Y ; Z) |- W"], "(X > Y) ; Z |- W", true));
        r.push(schema("Gri_R", Structural, fm(), &["W |- X > (Y ; Z)"], "W |- (X > Y) ; Z", true));
    }

    // Propositional operational rules.
    let ops: &[(&str, &[&str], &str)] = &[
        ("bot_R", &["X |- I"], "X |- bot"),
        ("top_L", &["I |- X"], "top |- X"),
        ("and_L", &["A ; B |- Z"], "A /\\ B |- Z"),
        ("and_R", &["X |- A", "Y |- B"], "X ; Y |- A /\\ B"),
        ("or_L", &["A |- X", "B |- Y"], "A \\/ B |- X ; Y"),
        ("or_R", &["Z |- A ; B"], "Z |- A \\/ B"),
        ("limp_L", &["B |- Y", "X |- A"], "B <- A |- Y < X"),
        ("limp_R", &["Z |- B < A"], "Z |- B <- A"),
        ("lsub_L", &["B < A |- Z"], "B lsub A |- Z"),
        ("lsub_R", &["Y |- B", "A |- X"], "Y < X |- B lsub A"),
        ("imp_L", &["X |- A", "B |- Y"], "A -> B |- X > Y"),
        ("imp_R", &["Z |- A > B"], "Z |- A -> B"),
        ("rsub_L", &["A > B |- Z"], "A rsub B |- Z"),
        ("rsub_R", &["A |- X", "Y |- B"], "X > Y |- A rsub B"),
    ];
    for (n, p, c) in ops {
        r.push(schema(n, Operational, fm(), p, c, false));
    }

    // Heterogeneous operational rules.
    for i in 0..=3u8 {
        for (t, s) in [("tri", "STRI"), ("btri", "SBTRI")] {
            r.push(schema(
                &format!("{t}{i}_L"),
                Operational,
                het(i),
                &[&format!("a {s}{i} b |- z")],
                &format!("a {t}{i} b |- z"),
                false,
            ));
            r.push(schema(
                &format!("{t}{i}_R"),
                Operational,
                het(i),
                &["x |- a", "y |- b"],
                &format!("x {s}{i} y |- a {t}{i} b"),
                false,
            ));
        }
    }
    for i in 0..=2u8 {
        for (t, s) in [("rarr", "SRARR"), ("brarr", "SBRARR")] {
            r.push(schema(
                &format!("{t}{i}_L"),
                Operational,
                het_arrow(i),
                &["x |- a", "B |- Y"],
                &format!("a {t}{i} B |- x {s}{i} Y"),
                false,
            ));
            r.push(schema(
                &format!("{t}{i}_R"),
                Operational,
                het_arrow(i),
                &[&format!("Z |- a {s}{i} B")],
                &format!("Z |- a {t}{i} B"),
                false,
            ));
        }
    }

    // Necessitation, conjugation, Fischer Servi and monotonicity.
    for i in 0..=2u8 {
        let v = het_arrow(i);
        let (t, bt, ra, bra) =
            (format!("STRI{i}"), format!("SBTRI{i}"), format!("SRARR{i}"), format!("SBRARR{i}"));
        let rows: Vec<(String, String, String)> = vec![
            (format!("nec{i}_tri"), "I |- W".into(), format!("x {t} I |- W")),
            (format!("nec{i}_btri"), "I |- W".into(), format!("x {bt} I |- W")),
            (format!("nec{i}_rarr"), "W |- I".into(), format!("W |- x {ra} I")),
            (format!("nec{i}_brarr"), "W |- I".into(), format!("W |- x {bra} I")),
            (
                format!("conj{i}_tri"),
                format!("x {t} ((x {bt} Y) ; Z) |- W"),
                format!("Y ; (x {t} Z) |- W"),
            ),
            (
                format!("conj{i}_btri"),
                format!("x {bt} ((x {t} Y) ; Z) |- W"),
                format!("Y ; (x {bt} Z) |- W"),
            ),
            (
                format!("conj{i}_rarr"),
                format!("W |- x {ra} ((x {bra} Y) ; Z)"),
                format!("W |- Y ; (x {ra} Z)"),
            ),
            (
                format!("conj{i}_brarr"),
                format!("W |- x {bra} ((x {ra} Y) ; Z)"),
                format!("W |- Y ; (x {bra} Z)"),
            ),
            (
                format!("FS{i}_tri"),
                format!("(x {ra} Y) > (x {t} Z) |- W"),
                format!("x {t} (Y > Z) |- W"),
            ),
            (
                format!("FS{i}_btri"),
                format!("(x {bra} Y) > (x {bt} Z) |- W"),
                format!("x {bt} (Y > Z) |- W"),
            ),
            (
                format!("FS{i}_rarr"),
                format!("W |- (x {t} Y) > (x {ra} Z)"),
                format!("W |- x {ra} (Y > Z)"),
            ),
            (
                format!("FS{i}_brarr"),
                format!("W |- (x {bt} Y) > (x {bra} Z)"),
                format!("W |- x {bra} (Y > Z)"),
            ),
            (
                format!("mon{i}_tri"),
                format!("(x {t} Y) ; (x {t} Z) |- W"),
                format!("x {t} (Y ; Z) |- W"),
            ),
            (
                format!("mon{i}_btri"),
                format!("(x {bt} Y) ; (x {bt} Z) |- W"),
                format!("x {bt} (Y ; Z) |- W"),
            ),
            (
                format!("mon{i}_rarr"),
                format!("W |- (x {ra} Y) ; (x {ra} Z)"),
                format!("W |- x {ra} (Y ; Z)"),
            ),
            (
                format!("mon{i}_brarr"),
                format!("W |- (x {bra} Y) ; (x {bra} Z)"),
                format!("W |- x {bra} (Y ; Z)"),
            ),
        ];
        for (n, p, c) in rows {
            r.push(schema(&n, Structural, v.clone(), &[&p], &c, false));
        }
    }

    // Interaction between agents, actions and functionalities.
    let sw: &[(&str, &str, &str)] = &[
        ("swap_out_L", "(a SBTRI3 F) SBTRI1 (a SBTRI2 X) |- Y", "a SBTRI2 (F SBTRI0 X) |- Y"),
        ("swap_out_R", "X |- (a SBTRI3 F) SBRARR1 (a SBRARR2 Y)", "X |- a SBRARR2 (F SBRARR0 Y)"),
        (
            "swap_in_L",
            "a SBTRI2 (F SBTRI0 X) |- Y",
            "(a SBTRI3 F) SBTRI1 (a SBTRI2 ((F STRI0 I) ; X)) |- Y",
        ),
        (
            "swap_in_R",
            "X |- a SBRARR2 (F SBRARR0 Y)",
            "X |- (a SBTRI3 F) SBRARR1 (a SBRARR2 ((F STRI0 I) > Y))",
        ),
    ];
    for (n, p, c) in sw {
        r.push(schema(n, Structural, swap_vars(), &[p], c, false));
    }
    r.push(schema("balance", Structural, macro_vars(), &["X |- Y"], "F STRI0 X |- F SRARR0 Y", false));

    // Derived rules: name, premise, conclusion, expansion.
    type Derived<'a> = (&'a str, &'a str, &'a str, &'a [(&'a str, &'a str)]);
    let macros: &[Derived] = &[
        (
            "reduce_L",
            "(F STRI0 I) ; (F STRI0 X) |- Y",
            "F STRI0 X |- Y",
            &[
                ("mon0_tri", "F STRI0 (I ; X) |- Y"),
                ("disp_tri0_brarr0", "I ; X |- F SBRARR0 Y"),
                ("disp_semi_lt", "I |- (F SBRARR0 Y) < X"),
                ("I1_L", "X |- F SBRARR0 Y"),
                ("disp_tri0_brarr0", "F STRI0 X |- Y"),
            ],
        ),
        (
            "reduce_R",
            "Y |- (F STRI0 I) > (F SRARR0 X)",
            "Y |- F SRARR0 X",
            &[
                ("disp_semi_gt", "(F STRI0 I) ; Y |- F SRARR0 X"),
                ("disp_btri0_rarr0", "F SBTRI0 ((F STRI0 I) ; Y) |- X"),
                ("conj0_btri", "I ; (F SBTRI0 Y) |- X"),
                ("disp_semi_lt", "I |- X < (F SBTRI0 Y)"),
                ("I1_L", "F SBTRI0 Y |- X"),
                ("disp_btri0_rarr0", "Y |- F SRARR0 X"),
            ],
        ),
        (
            "comp_L",
            "F STRI0 (F SBTRI0 X) |- Y",
            "(F STRI0 I) ; X |- Y",
            &[
                ("disp_tri0_brarr0", "F SBTRI0 X |- F SBRARR0 Y"),
                ("I2_L", "I |- (F SBTRI0 X) > (F SBRARR0 Y)"),
                ("disp_semi_gt", "(F SBTRI0 X) ; I |- F SBRARR0 Y"),
                ("disp_tri0_brarr0", "F STRI0 ((F SBTRI0 X) ; I) |- Y"),
                ("conj0_tri", "X ; (F STRI0 I) |- Y"),
                ("E_L", "(F STRI0 I) ; X |- Y"),
            ],
        ),
        (
            "comp_R",
            "X |- F SRARR0 (F SBRARR0 Y)",
            "X |- (F STRI0 I) > Y",
            &[
                ("disp_btri0_rarr0", "F SBTRI0 X |- F SBRARR0 Y"),
                ("I2_L", "I |- (F SBTRI0 X) > (F SBRARR0 Y)"),
                ("disp_semi_gt", "(F SBTRI0 X) ; I |- F SBRARR0 Y"),
                ("disp_tri0_brarr0", "F STRI0 ((F SBTRI0 X) ; I) |- Y"),
                ("conj0_tri", "X ; (F STRI0 I) |- Y"),
                ("E_L", "(F STRI0 I) ; X |- Y"),
                ("disp_semi_gt", "X |- (F STRI0 I) > Y"),
            ],
        ),
    ];
    for (n, p, c, steps) in macros {
        let mut s = schema(n, Macro, macro_vars(), &[p], c, false);
        s.expansion = steps
            .iter()
            .map(|(rule, pat)| {
                (rule.to_string(), parse_sequent(pat, &macro_vars()).expect("macro step"))
            })
            .collect();
        r.push(s);
    }
    r
}
