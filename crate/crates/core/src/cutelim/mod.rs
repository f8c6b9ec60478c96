//! Cut elimination: principal reductions, parametric history substitution
//! and the driver that alternates them until no cut is left.
//!
//! A cut `Cut_T(x |- a, a |- y)` is reduced in one of two ways.
//!
//! * **Principal stage.** When both occurrences of the cut term `a` are
//!   introduced by the last rule of their premise (or one premise is an
//!   identity axiom), [`principal_reduce`] replaces the cut by cuts on the
//!   immediate subterms of `a`, glued together with display postulates.
//! * **Parametric stage.** Otherwise [`parametric_reduce`] follows the
//!   history of a parametric occurrence of `a` upwards, substitutes the other
//!   premise's side structure for it along the way, and places a new cut at
//!   every leaf of the history where the occurrence is principal.
//!
//! [`eliminate_cuts`] repeatedly reduces a topmost cut until none remains.

use std::fmt;

use crate::checker::{check_node, render_path, CheckOptions, ProofTree, TreePath, HYP};
use crate::display::{applicable_postulates, display_search, invert_steps, DEFAULT_DEPTH};
use crate::rules::{catalog, match_directed, rewrite, track, Base, RuleSchema};
use crate::syntax::{Op, OpConn, Pos, SConn, Sequent, Side, Structure};

#[cfg(test)]
mod tests;

/// Default bound on the number of reduction steps.
pub const DEFAULT_FUEL: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CutElimError {
    #[error("no cut at {}", render_path(.0))]
    NotACut(TreePath),
    #[error("cut at {}: {detail}", render_path(.path))]
    NotPrincipal { path: TreePath, detail: String },
    #[error("cut at {}: no reduction for `{left}` against `{right}`", render_path(.path))]
    NoReductionSchema { path: TreePath, left: String, right: String },
    #[error("cut at {}: both cut-term occurrences are principal", render_path(.0))]
    NotParametric(TreePath),
    #[error("cut at {}: history cannot be traced: {detail}", render_path(.path))]
    HistoryUntraceable { path: TreePath, detail: String },
    #[error("fuel exhausted after {steps} steps with {} cuts left", .residual.count_cuts())]
    FuelExhausted { steps: usize, residual: Box<ProofTree> },
}

/// Which reduction a step performed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Principal,
    Parametric,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::Principal => "principal",
            StepKind::Parametric => "parametric",
        })
    }
}

/// Record of one reduction performed by [`eliminate_cuts_traced`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub path: TreePath,
    pub kind: StepKind,
    /// Cut-term complexity of the reduced cut.
    pub complexity: usize,
    /// Largest cut-term complexity among the cuts created by the step.
    pub max_new_complexity: Option<usize>,
}

/// Result of [`eliminate_cuts_traced`].
#[derive(Clone, Debug)]
pub struct Elimination {
    pub proof: ProofTree,
    pub steps: Vec<Step>,
}

/// Where an occurrence in a node's conclusion comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Built by the node's own rule.
    Principal,
    /// Inside a metavariable: its congruent ancestors, as
    /// `(premise index, position)`. Empty for structures introduced by the
    /// rule without an ancestor (weakening and the like).
    Parametric(Vec<(usize, Pos)>),
}

const IDENTITIES: [&str; 3] = ["Id", "AgId", "FncId"];

fn schema_of(t: &ProofTree) -> Option<&'static RuleSchema> {
    catalog(Base::Classical).get(&t.rule)
}

/// Whether `t` is an axiom of the shape `a |- a`.
pub fn is_identity(t: &ProofTree) -> bool {
    t.children.is_empty()
        && t.rule != HYP
        && (IDENTITIES.contains(&t.rule.as_str())
            || (t.rule == "Atom" && t.conclusion.lhs == t.conclusion.rhs))
}

/// Classifies the occurrence at `pos` in the conclusion of `t`.
pub fn origin(t: &ProofTree, pos: &Pos) -> Result<Origin, String> {
    if t.rule == HYP {
        return Err(format!("hypothesis `{}` has no history", t.conclusion));
    }
    let schema = schema_of(t).ok_or_else(|| format!("unknown rule `{}`", t.rule))?;
    if t.conclusion.at(pos).is_none() {
        return Err(format!("no substructure at {pos} in `{}`", t.conclusion));
    }
    if schema.atom_axiom {
        // Only the atom itself is principal; the FNC prefixes are parameters
        // without ancestors.
        return Ok(match t.conclusion.at(pos) {
            Some(Structure::Op(Op::Atom(crate::syntax::Ty::Fm, _))) => Origin::Principal,
            _ => Origin::Parametric(Vec::new()),
        });
    }
    let prem: Vec<&Sequent> = t.children.iter().map(|c| &c.conclusion).collect();
    let (dir, _) = match_directed(schema, &prem, &t.conclusion)
        .map_err(|e| format!("`{}` does not match: {e}", t.rule))?;
    let (pp, pc) = schema.oriented(dir);
    let mut node = pc.side(pos.side);
    let mut k = 0;
    loop {
        match node {
            Structure::Meta(_) => break,
            Structure::Op(_) if k == pos.path.len() => return Ok(Origin::Principal),
            Structure::Bin(_, l, r) if k < pos.path.len() => {
                node = if pos.path[k] == 0 { l } else { r };
                k += 1;
            }
            _ => return Err(format!("position {pos} is not an operational leaf")),
        }
    }
    let mut anc = Vec::new();
    for (j, p) in pp.iter().enumerate() {
        for q in track(pc, p, pos).unwrap_or_default() {
            anc.push((j, q));
        }
    }
    Ok(Origin::Parametric(anc))
}

fn cut_parts(t: &ProofTree, path: &[usize]) -> Result<(ProofTree, ProofTree, ProofTree), CutElimError> {
    let cut = t.at(path).ok_or_else(|| CutElimError::NotACut(path.to_vec()))?;
    if !cut.is_cut() || cut.children.len() != 2 {
        return Err(CutElimError::NotACut(path.to_vec()));
    }
    Ok((cut.clone(), cut.children[0].clone(), cut.children[1].clone()))
}

fn left_pos() -> Pos {
    Pos::root(Side::Rhs)
}

fn right_pos() -> Pos {
    Pos::root(Side::Lhs)
}

/// Cuts `left` against `right`, dropping identity axioms on either side.
fn compose(left: ProofTree, right: ProofTree) -> ProofTree {
    if is_identity(&left) {
        right
    } else if is_identity(&right) {
        left
    } else {
        ProofTree::cut(left, right)
    }
}

fn sb(c: SConn, l: &Structure, r: &Structure) -> Structure {
    Structure::bin(c, l.clone(), r.clone())
}

fn sq(l: Structure, r: Structure) -> Sequent {
    Sequent::new(l, r)
}

/// Extends `t` by the single display postulate leading to `target`.
fn disp(t: ProofTree, target: Sequent) -> Result<ProofTree, String> {
    applicable_postulates(&t.conclusion)
        .into_iter()
        .find(|(_, _, s)| *s == target)
        .map(|(rule, _, s)| ProofTree::new(&rule, s, vec![t.clone()]))
        .ok_or_else(|| format!("no display postulate from `{}` to `{target}`", t.conclusion))
}

/// Reduces a cut whose cut term is principal in both premises.
pub fn principal_reduce(t: &ProofTree, cut_path: &[usize]) -> Result<ProofTree, CutElimError> {
    let (cut, left, right) = cut_parts(t, cut_path)?;
    if is_identity(&left) || is_identity(&right) || cut.conclusion == left.conclusion {
        return Ok(t.replace_at(cut_path, shortcut(&cut, left, right)));
    }
    let not_principal = |which: &str, detail: String| CutElimError::NotPrincipal {
        path: cut_path.to_vec(),
        detail: format!("{which} premise: {detail}"),
    };
    match origin(&left, &left_pos()) {
        Ok(Origin::Principal) => {}
        Ok(Origin::Parametric(_)) => {
            return Err(not_principal("left", "the cut term is parametric".into()))
        }
        Err(e) => return Err(not_principal("left", e)),
    }
    match origin(&right, &right_pos()) {
        Ok(Origin::Principal) => {}
        Ok(Origin::Parametric(_)) => {
            return Err(not_principal("right", "the cut term is parametric".into()))
        }
        Err(e) => return Err(not_principal("right", e)),
    }
    let no_schema = || CutElimError::NoReductionSchema {
        path: cut_path.to_vec(),
        left: left.rule.clone(),
        right: right.rule.clone(),
    };
    let reduced = reduce_principal(&left, &right)
        .map_err(|detail| CutElimError::HistoryUntraceable { path: cut_path.to_vec(), detail })?
        .ok_or_else(no_schema)?;
    if reduced.conclusion != cut.conclusion {
        return Err(CutElimError::HistoryUntraceable {
            path: cut_path.to_vec(),
            detail: format!("reduction produced `{}`", reduced.conclusion),
        });
    }
    Ok(t.replace_at(cut_path, reduced))
}

fn shortcut(cut: &ProofTree, left: ProofTree, right: ProofTree) -> ProofTree {
    if cut.conclusion == left.conclusion || is_identity(&right) {
        left
    } else {
        right
    }
}

/// The reduction table. `Ok(None)` when no schema covers the pair.
fn reduce_principal(left: &ProofTree, right: &ProofTree) -> Result<Option<ProofTree>, String> {
    let term = match &left.conclusion.rhs {
        Structure::Op(o) => o.clone(),
        s => return Err(format!("cut term `{s}` is not operational")),
    };
    let l = left.rule.as_str();
    let r = right.rule.as_str();
    let lc = &left.children;
    let rc = &right.children;
    let out = match &term {
        Op::Atom(..) if l == "Atom" && r == "Atom" => {
            Some(ProofTree::leaf("Atom", sq(left.conclusion.lhs.clone(), right.conclusion.rhs.clone())))
        }
        Op::Top if l == "TopR" && r == "top_L" => Some(rc[0].clone()),
        Op::Bot if l == "bot_R" && r == "BotL" => Some(lc[0].clone()),
        Op::Bin(c, a, b) => {
            let (sa, sb_) = (Structure::Op((**a).clone()), Structure::Op((**b).clone()));
            reduce_binary(*c, l, r, lc, rc, &sa, &sb_, &right.conclusion.rhs, &left.conclusion.lhs)?
        }
        _ => None,
    };
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn reduce_binary(
    c: OpConn,
    l: &str,
    r: &str,
    lc: &[ProofTree],
    rc: &[ProofTree],
    a: &Structure,
    b: &Structure,
    rhs: &Structure,
    lhs: &Structure,
) -> Result<Option<ProofTree>, String> {
    use SConn::*;
    let expect = |want_l: String, want_r: String| l == want_l && r == want_r;
    Ok(Some(match c {
        OpConn::Tri(i) | OpConn::Btri(i) => {
            let black = matches!(c, OpConn::Btri(_));
            let tok = if black { "btri" } else { "tri" };
            if !expect(format!("{tok}{i}_R"), format!("{tok}{i}_L")) {
                return Ok(None);
            }
            let (p0, p1, p2) = (lc[0].clone(), lc[1].clone(), rc[0].clone());
            let (x, y, z) = (&p0.conclusion.lhs.clone(), &p1.conclusion.lhs.clone(), rhs);
            let (tri, left_adj, right_adj) = if black {
                (Sbtri(i), if i == 1 { Slarr1 } else { Vlarr(i) }, if i == 3 { Vrarr3 } else { Srarr(i) })
            } else {
                (Stri(i), if i == 1 { Sblarr1 } else { Vblarr(i) }, if i == 3 { Vbrarr3 } else { Sbrarr(i) })
            };
            let d1 = disp(p2, sq(a.clone(), sb(left_adj, z, b)))?;
            let c1 = compose(p0, d1);
            let d2 = disp(c1, sq(sb(tri, x, b), z.clone()))?;
            let d3 = disp(d2, sq(b.clone(), sb(right_adj, x, z)))?;
            let c2 = compose(p1, d3);
            disp(c2, sq(sb(tri, x, y), z.clone()))?
        }
        OpConn::Rarr(i) | OpConn::Brarr(i) => {
            let black = matches!(c, OpConn::Brarr(_));
            let tok = if black { "brarr" } else { "rarr" };
            if !expect(format!("{tok}{i}_R"), format!("{tok}{i}_L")) {
                return Ok(None);
            }
            let (p1, p0, p2) = (lc[0].clone(), rc[0].clone(), rc[1].clone());
            let (x, y, z) = (&p0.conclusion.lhs.clone(), lhs, &p2.conclusion.rhs.clone());
            let (tri, adj, arr) = if black {
                (Stri(i), if i == 1 { Sblarr1 } else { Vblarr(i) }, Sbrarr(i))
            } else {
                (Sbtri(i), if i == 1 { Slarr1 } else { Vlarr(i) }, Srarr(i))
            };
            let e1 = disp(p1, sq(sb(tri, a, y), b.clone()))?;
            let e2 = disp(e1, sq(a.clone(), sb(adj, b, y)))?;
            let c1 = compose(p0, e2);
            let e3 = disp(c1, sq(sb(tri, x, y), b.clone()))?;
            let c2 = compose(e3, p2);
            disp(c2, sq(y.clone(), sb(arr, x, z)))?
        }
        OpConn::And => {
            if !expect("and_R".into(), "and_L".into()) {
                return Ok(None);
            }
            let (p0, p1, p2) = (lc[0].clone(), lc[1].clone(), rc[0].clone());
            let (x, y, z) = (&p0.conclusion.lhs.clone(), &p1.conclusion.lhs.clone(), rhs);
            let d = disp(p2, sq(a.clone(), sb(Lt, z, b)))?;
            let c1 = compose(p0, d);
            let d = disp(c1, sq(sb(Semi, x, b), z.clone()))?;
            let d = disp(d, sq(b.clone(), sb(Gt, x, z)))?;
            let c2 = compose(p1, d);
            disp(c2, sq(sb(Semi, x, y), z.clone()))?
        }
        OpConn::Or => {
            if !expect("or_R".into(), "or_L".into()) {
                return Ok(None);
            }
            let (p0, p1, p2) = (lc[0].clone(), rc[0].clone(), rc[1].clone());
            let (z, x, y) = (lhs, &p1.conclusion.rhs.clone(), &p2.conclusion.rhs.clone());
            let d = disp(p0, sq(sb(Lt, z, b), a.clone()))?;
            let c1 = compose(d, p1);
            let d = disp(c1, sq(z.clone(), sb(Semi, x, b)))?;
            let d = disp(d, sq(sb(Gt, x, z), b.clone()))?;
            let c2 = compose(d, p2);
            disp(c2, sq(z.clone(), sb(Semi, x, y)))?
        }
        OpConn::Imp => {
            if !expect("imp_R".into(), "imp_L".into()) {
                return Ok(None);
            }
            let (p0, p1, p2) = (lc[0].clone(), rc[0].clone(), rc[1].clone());
            let (z, x, y) = (lhs, &p1.conclusion.lhs.clone(), &p2.conclusion.rhs.clone());
            let d = disp(p0, sq(sb(Semi, a, z), b.clone()))?;
            let d = disp(d, sq(a.clone(), sb(Lt, b, z)))?;
            let c1 = compose(p1, d);
            let d = disp(c1, sq(sb(Semi, x, z), b.clone()))?;
            let c2 = compose(d, p2);
            disp(c2, sq(z.clone(), sb(Gt, x, y)))?
        }
        OpConn::Limp => {
            // `b <- a` is written `B <- A`: `a` is the premise, `b` the
            // conclusion of the implication.
            if !expect("limp_R".into(), "limp_L".into()) {
                return Ok(None);
            }
            let (bb, aa) = (a, b);
            let (p0, p1, p2) = (lc[0].clone(), rc[0].clone(), rc[1].clone());
            let (z, y, x) = (lhs, &p1.conclusion.rhs.clone(), &p2.conclusion.lhs.clone());
            let d = disp(p0, sq(sb(Semi, z, aa), bb.clone()))?;
            let d = disp(d, sq(aa.clone(), sb(Gt, z, bb)))?;
            let c1 = compose(p2, d);
            let d = disp(c1, sq(sb(Semi, z, x), bb.clone()))?;
            let c2 = compose(d, p1);
            disp(c2, sq(z.clone(), sb(Lt, y, x)))?
        }
        OpConn::Lsub => {
            // `B lsub A`.
            if !expect("lsub_R".into(), "lsub_L".into()) {
                return Ok(None);
            }
            let (bb, aa) = (a, b);
            let (p0, p1, p2) = (lc[0].clone(), lc[1].clone(), rc[0].clone());
            let (y, x, z) = (&p0.conclusion.lhs.clone(), &p1.conclusion.rhs.clone(), rhs);
            let d = disp(p2, sq(bb.clone(), sb(Semi, z, aa)))?;
            let c1 = compose(p0, d);
            let d = disp(c1, sq(sb(Gt, z, y), aa.clone()))?;
            let c2 = compose(d, p1);
            let d = disp(c2, sq(y.clone(), sb(Semi, z, x)))?;
            disp(d, sq(sb(Lt, y, x), z.clone()))?
        }
        OpConn::Rsub => {
            // `A rsub B`.
            if !expect("rsub_R".into(), "rsub_L".into()) {
                return Ok(None);
            }
            let (p0, p1, p2) = (lc[0].clone(), lc[1].clone(), rc[0].clone());
            let (x, y, z) = (&p0.conclusion.rhs.clone(), &p1.conclusion.lhs.clone(), rhs);
            let d = disp(p2, sq(b.clone(), sb(Semi, a, z)))?;
            let c1 = compose(p1, d);
            let d = disp(c1, sq(sb(Lt, y, z), a.clone()))?;
            let c2 = compose(d, p0);
            let d = disp(c2, sq(y.clone(), sb(Semi, x, z)))?;
            disp(d, sq(sb(Gt, x, y), z.clone()))?
        }
    }))
}

/// Substitutes along the history of the traced occurrences and cuts at the
/// principal leaves.
struct Pusher<'a> {
    /// The structure substituted for the cut term.
    replacement: &'a Structure,
    /// The premise not being traced.
    other: &'a ProofTree,
    /// Whether the right premise is the one being traced.
    tracing_right: bool,
}

impl Pusher<'_> {
    fn push(&self, t: &ProofTree, occs: &[Pos]) -> Result<ProofTree, String> {
        if occs.is_empty() {
            return Ok(t.clone());
        }
        let mut principal = Vec::new();
        let mut parametric = Vec::new();
        let mut per_premise: Vec<Vec<Pos>> = vec![Vec::new(); t.children.len()];
        for o in occs {
            match origin(t, o)? {
                Origin::Principal => principal.push(o.clone()),
                Origin::Parametric(anc) => {
                    parametric.push(o.clone());
                    for (j, p) in anc {
                        if !per_premise[j].contains(&p) {
                            per_premise[j].push(p);
                        }
                    }
                }
            }
        }
        let children = t
            .children
            .iter()
            .zip(&per_premise)
            .map(|(c, ps)| self.push(c, ps))
            .collect::<Result<Vec<_>, _>>()?;
        let mut concl = t.conclusion.clone();
        for o in &parametric {
            concl = concl.replace_at(o, self.replacement.clone());
        }
        let node = ProofTree::new(&t.rule, concl, children);
        let opts = CheckOptions { base: Base::Classical, allow_cut: true, allow_macros: true, allow_hyp: true };
        check_node(&node, &opts).map_err(|e| {
            format!("substituting `{}` breaks `{}`: {e}", self.replacement, t.rule)
        })?;
        match principal.as_slice() {
            [] => Ok(node),
            [p] => self.cut_at_leaf(node, p),
            _ => Err(format!("several principal occurrences in `{}`", t.conclusion)),
        }
    }

    fn join(&self, leaf: ProofTree) -> ProofTree {
        if self.tracing_right {
            compose(self.other.clone(), leaf)
        } else {
            compose(leaf, self.other.clone())
        }
    }

    fn cut_at_leaf(&self, node: ProofTree, p: &Pos) -> Result<ProofTree, String> {
        let displayed_side = if self.tracing_right { Side::Lhs } else { Side::Rhs };
        if p.is_root() && p.side == displayed_side {
            return Ok(self.join(node));
        }
        // Undisplayed principal occurrence: only atom axioms have those.
        let schema = schema_of(&node).ok_or("unknown rule")?;
        if !schema.atom_axiom || !node.children.is_empty() {
            return Err(format!("principal occurrence at {p} of `{}` is not displayed", node.conclusion));
        }
        let steps = display_search(&node.conclusion, p, DEFAULT_DEPTH).map_err(|e| e.to_string())?;
        let shown = steps.last().map(|s| s.result.clone()).unwrap_or_else(|| node.conclusion.clone());
        let leaf = ProofTree::leaf("Atom", shown.clone());
        let mut cur = self.join(leaf);
        for s in invert_steps(&node.conclusion, &steps) {
            let schema = schema_of(&ProofTree::leaf(&s.rule, shown.clone())).ok_or("unknown postulate")?;
            let (next, _) = rewrite(schema, s.dir, &cur.conclusion)
                .ok_or_else(|| format!("`{}` does not apply to `{}`", s.rule, cur.conclusion))?;
            cur = ProofTree::new(&s.rule, next, vec![cur]);
        }
        Ok(cur)
    }
}

/// Pushes a cut with a parametric cut-term occurrence up that occurrence's
/// history. The right premise is traced when its occurrence is parametric,
/// otherwise the left one.
pub fn parametric_reduce(t: &ProofTree, cut_path: &[usize]) -> Result<ProofTree, CutElimError> {
    let (cut, left, right) = cut_parts(t, cut_path)?;
    if is_identity(&left)
        || is_identity(&right)
        || cut.conclusion == left.conclusion
        || cut.conclusion == right.conclusion
    {
        return Ok(t.replace_at(cut_path, shortcut(&cut, left, right)));
    }
    let untraceable =
        |detail: String| CutElimError::HistoryUntraceable { path: cut_path.to_vec(), detail };
    let right_origin = origin(&right, &right_pos()).map_err(untraceable)?;
    let (traced, pusher, start) = if right_origin != Origin::Principal {
        (&right, Pusher { replacement: &left.conclusion.lhs, other: &left, tracing_right: true }, right_pos())
    } else {
        let left_origin = origin(&left, &left_pos()).map_err(untraceable)?;
        if left_origin == Origin::Principal {
            return Err(CutElimError::NotParametric(cut_path.to_vec()));
        }
        (&left, Pusher { replacement: &right.conclusion.rhs, other: &right, tracing_right: false }, left_pos())
    };
    let out = pusher.push(traced, &[start]).map_err(untraceable)?;
    if out.conclusion != cut.conclusion {
        return Err(untraceable(format!(
            "substitution produced `{}` instead of `{}`",
            out.conclusion, cut.conclusion
        )));
    }
    Ok(t.replace_at(cut_path, out))
}

/// Whether both cut-term occurrences of the cut at `cut_path` are principal.
pub fn is_principal_cut(t: &ProofTree, cut_path: &[usize]) -> bool {
    let Some(cut) = t.at(cut_path) else { return false };
    if !cut.is_cut() || cut.children.len() != 2 {
        return false;
    }
    let (l, r) = (&cut.children[0], &cut.children[1]);
    is_identity(l)
        || is_identity(r)
        || (origin(l, &left_pos()) == Ok(Origin::Principal)
            && origin(r, &right_pos()) == Ok(Origin::Principal))
}

/// The first cut in pre-order with no cut above it.
pub fn topmost_cut(t: &ProofTree) -> Option<TreePath> {
    t.nodes()
        .into_iter()
        .find(|(_, n)| n.is_cut() && n.children.iter().all(|c| c.count_cuts() == 0))
        .map(|(p, _)| p)
}

/// One reduction at `cut_path`, principal when possible.
pub fn reduce_step(t: &ProofTree, cut_path: &[usize]) -> Result<(ProofTree, StepKind), CutElimError> {
    if is_principal_cut(t, cut_path) {
        principal_reduce(t, cut_path).map(|r| (r, StepKind::Principal))
    } else {
        parametric_reduce(t, cut_path).map(|r| (r, StepKind::Parametric))
    }
}

/// Removes every cut, consuming at most `fuel` reduction steps.
pub fn eliminate_cuts(t: &ProofTree, fuel: usize) -> Result<ProofTree, CutElimError> {
    eliminate_cuts_traced(t, fuel).map(|e| e.proof)
}

/// Like [`eliminate_cuts`], also recording every step.
pub fn eliminate_cuts_traced(t: &ProofTree, fuel: usize) -> Result<Elimination, CutElimError> {
    let mut cur = t.clone();
    let mut steps = Vec::new();
    while let Some(path) = topmost_cut(&cur) {
        if steps.len() >= fuel {
            return Err(CutElimError::FuelExhausted { steps: steps.len(), residual: Box::new(cur) });
        }
        let complexity = cur.at(&path).and_then(ProofTree::cut_rank).map_or(0, |r| r.complexity);
        let (next, kind) = reduce_step(&cur, &path)?;
        let site = next.at(&path).cloned();
        let max_new_complexity = site.and_then(|s| {
            s.nodes().into_iter().filter_map(|(_, n)| n.cut_rank()).map(|r| r.complexity).max()
        });
        steps.push(Step { path, kind, complexity, max_new_complexity });
        cur = next;
    }
    Ok(Elimination { proof: cur, steps })
}
