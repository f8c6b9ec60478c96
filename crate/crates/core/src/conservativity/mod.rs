//! Conservativity analyses: severe occurrences, virtual adjoints, removal of
//! redundant display steps, and the report deciding whether a multi-type
//! proof witnesses derivability in D'.EAK.
//!
//! A structural connective occurrence is *severe* when no display postulate
//! can act on it: a triangle-family connective in succedent position or an
//! arrow-family connective in precedent position. Virtual adjoints are the
//! `VLARR`/`VBLARR`/`VRARR3`/`VBRARR3` connectives, which have no
//! operational counterpart.

use std::fmt;

use crate::checker::{expand_macros, render_path, ProofTree, TreePath};
use crate::rules::{catalog, Base, RuleKind};
use crate::syntax::{Family, Place, Pos, Sequent, Side, Structure, Ty};
use crate::translate::in_image;


/// Positions of the severe structural connective occurrences in `s`.
pub fn severe_occurrences(s: &Sequent) -> Vec<Pos> {
    s.positions()
        .into_iter()
        .filter(|(pos, place)| match s.at(pos) {
            Some(Structure::Bin(c, _, _)) => matches!(
                (c.family(), place),
                (Family::Triangle, Place::Succedent) | (Family::Arrow, Place::Precedent)
            ),
            _ => false,
        })
        .map(|(pos, _)| pos)
        .collect()
}

pub fn is_severe(s: &Sequent) -> bool {
    !severe_occurrences(s).is_empty()
}

/// Paths of the virtual-adjoint nodes in `x`, in pre-order.
pub fn virtual_adjoint_occurrences(x: &Structure) -> Vec<Vec<u8>> {
    x.occurrences()
        .into_iter()
        .filter(|(_, _, s)| matches!(s, Structure::Bin(c, _, _) if c.is_virtual()))
        .map(|(p, _, _)| p)
        .collect()
}

/// Virtual-adjoint positions in both sides of `s`.
pub fn sequent_virtual_adjoints(s: &Sequent) -> Vec<Pos> {
    [Side::Lhs, Side::Rhs]
        .into_iter()
        .flat_map(|side| {
            virtual_adjoint_occurrences(s.side(side)).into_iter().map(move |path| Pos { side, path })
        })
        .collect()
}

/// Total number of virtual-adjoint occurrences over all node conclusions.
pub fn virtual_adjoint_census(t: &ProofTree) -> usize {
    t.nodes().iter().map(|(_, n)| sequent_virtual_adjoints(&n.conclusion).len()).sum()
}

fn is_display(rule: &str) -> bool {
    catalog(Base::Classical).get(rule).is_some_and(|r| r.kind == RuleKind::Display)
}

/// Removes redundant display steps: whenever a run of consecutive display
/// postulate nodes passes through the same sequent twice, the loop between
/// the two occurrences is cut out. This covers a postulate immediately
/// undone by its inverse. Repeated until nothing changes.
pub fn strip_redundant_displays(t: &ProofTree) -> ProofTree {
    let mut cur = strip_once(t);
    loop {
        let next = strip_once(&cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

fn strip_once(t: &ProofTree) -> ProofTree {
    if is_display(&t.rule) {
        // Walk down the display run looking for the deepest node with the
        // same conclusion as `t`.
        let mut run = &t.children[0];
        let mut target = None;
        loop {
            if run.conclusion == t.conclusion {
                target = Some(run);
            }
            if is_display(&run.rule) {
                run = &run.children[0];
            } else {
                break;
            }
        }
        if let Some(found) = target {
            return strip_once(found);
        }
    }
    ProofTree { children: t.children.iter().map(strip_once).collect(), ..t.clone() }
}

/// AG/FNC-typed sequents whose antecedent is not an operational term; the
/// no-virtual-adjoint analysis expects none.
pub fn shape_violations(t: &ProofTree) -> Vec<TreePath> {
    t.nodes()
        .into_iter()
        .filter(|(_, n)| matches!(n.conclusion.ty(), Some(Ty::Ag | Ty::Fnc)))
        .filter(|(_, n)| !matches!(n.conclusion.lhs, Structure::Op(_)))
        .map(|(p, _)| p)
        .collect()
}

/// Rules able to create structure not present in their premises.
fn introduces_structure(rule: &str) -> bool {
    ["W1_", "W2_", "IW_", "nec"].iter().any(|p| rule.starts_with(p)) || rule == "Atom" || rule == "balance"
}

/// A node creating a virtual adjoint out of nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VaIntroduction {
    pub path: TreePath,
    pub rule: String,
    pub conclusion: Sequent,
}

/// Weakening, atom, balance and necessitation nodes whose conclusion holds
/// more virtual adjoints than their premises together.
pub fn va_introductions(t: &ProofTree) -> Vec<VaIntroduction> {
    t.nodes()
        .into_iter()
        .filter(|(_, n)| introduces_structure(&n.rule))
        .filter(|(_, n)| {
            let before: usize = n.children.iter().map(|c| sequent_virtual_adjoints(&c.conclusion).len()).sum();
            sequent_virtual_adjoints(&n.conclusion).len() > before
        })
        .map(|(path, n)| VaIntroduction { path, rule: n.rule.clone(), conclusion: n.conclusion.clone() })
        .collect()
}

/// Why a proof is not a conservativity witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    /// The endsequent has severe occurrences.
    SevereEndsequent,
    /// A side of the endsequent is not the translation of a D'.EAK formula.
    NotInImage,
    /// Some node introduces a virtual adjoint.
    VaIntroduced,
    /// Virtual adjoints survive redundant-display removal.
    ResidualVirtualAdjoints,
    /// Macro expansion failed, so the analysis could not run.
    MacroExpansion(String),
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::SevereEndsequent => f.write_str("endsequent is severe"),
            Reason::NotInImage => f.write_str("endsequent is not in the image of the translation"),
            Reason::VaIntroduced => f.write_str("a node introduces a virtual adjoint"),
            Reason::ResidualVirtualAdjoints => f.write_str("virtual adjoints remain after stripping"),
            Reason::MacroExpansion(e) => write!(f, "macro expansion failed: {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    ConservativeWitness,
    Rejected(Vec<Reason>),
}

impl Verdict {
    pub fn is_witness(&self) -> bool {
        *self == Verdict::ConservativeWitness
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConservativityReport {
    pub endsequent: Sequent,
    pub severe: Vec<Pos>,
    pub in_image: bool,
    pub va_introductions: Vec<VaIntroduction>,
    /// Nodes removed by [`strip_redundant_displays`].
    pub stripped_nodes: usize,
    /// Virtual-adjoint census of the stripped proof.
    pub residual_virtual_adjoints: usize,
    /// [`shape_violations`] of the stripped proof.
    pub shape_violations: Vec<TreePath>,
    pub verdict: Verdict,
}

/// Runs the analyses on `t` (macros are expanded first). The verdict is a
/// witness iff the endsequent is non-severe with both sides in the image of
/// the translation, no node introduces a virtual adjoint, and no virtual
/// adjoint survives stripping.
pub fn conservativity_report(t: &ProofTree) -> ConservativityReport {
    let endsequent = t.conclusion.clone();
    let severe = severe_occurrences(&endsequent);
    let in_img = [&endsequent.lhs, &endsequent.rhs]
        .iter()
        .all(|s| matches!(s, Structure::Op(o) if in_image(o)));
    let mut reasons = Vec::new();
    if !severe.is_empty() {
        reasons.push(Reason::SevereEndsequent);
    }
    if !in_img {
        reasons.push(Reason::NotInImage);
    }
    let (va, stripped_nodes, residual, shapes) = match expand_macros(t) {
        Ok(full) => {
            let stripped = strip_redundant_displays(&full);
            (
                va_introductions(&full),
                full.size() - stripped.size(),
                virtual_adjoint_census(&stripped),
                shape_violations(&stripped),
            )
        }
        Err(e) => {
            reasons.push(Reason::MacroExpansion(e.to_string()));
            (Vec::new(), 0, 0, Vec::new())
        }
    };
    if !va.is_empty() {
        reasons.push(Reason::VaIntroduced);
    }
    if residual > 0 {
        reasons.push(Reason::ResidualVirtualAdjoints);
    }
    let verdict = if reasons.is_empty() { Verdict::ConservativeWitness } else { Verdict::Rejected(reasons) };
    ConservativityReport {
        endsequent,
        severe,
        in_image: in_img,
        va_introductions: va,
        stripped_nodes,
        residual_virtual_adjoints: residual,
        shape_violations: shapes,
        verdict,
    }
}

impl fmt::Display for ConservativityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |ps: &[Pos]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
        writeln!(f, "endsequent: {}", self.endsequent)?;
        writeln!(f, "severe occurrences: {}", if self.severe.is_empty() { "none".into() } else { list(&self.severe) })?;
        writeln!(f, "in translation image: {}", if self.in_image { "yes" } else { "no" })?;
        if self.va_introductions.is_empty() {
            writeln!(f, "virtual-adjoint introductions: none")?;
        } else {
            writeln!(f, "virtual-adjoint introductions:")?;
            for v in &self.va_introductions {
                writeln!(f, "  at {} ({}): {}", render_path(&v.path), v.rule, v.conclusion)?;
            }
        }
        writeln!(f, "redundant display nodes removed: {}", self.stripped_nodes)?;
        writeln!(f, "virtual adjoints after stripping: {}", self.residual_virtual_adjoints)?;
        writeln!(f, "AG/FNC shape violations: {}", self.shape_violations.len())?;
        match &self.verdict {
            Verdict::ConservativeWitness => write!(f, "verdict: conservative-witness"),
            Verdict::Rejected(rs) => {
                let rs: Vec<String> = rs.iter().map(|r| r.to_string()).collect();
                write!(f, "verdict: rejected ({})", rs.join("; "))
            }
        }
    }
}
