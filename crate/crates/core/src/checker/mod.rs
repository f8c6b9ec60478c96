//! Proof trees, validation against the catalog, and macro expansion.

use std::fmt;

use crate::rules::{
    catalog, instantiate_sequent, match_directed, Base, Dir, RuleKind, Substitution,
};
use crate::syntax::{Op, Sequent, Structure};

mod script;

pub use script::{parse_script, print_script, Script, ScriptError};

/// Rule name of an undischarged hypothesis leaf.
pub const HYP: &str = "hyp";

/// A derivation: each node is a rule name with its conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTree {
    pub rule: String,
    pub conclusion: Sequent,
    pub children: Vec<ProofTree>,
    /// Substitution recorded at construction, if any. Never consulted by
    /// validation.
    pub annotation: Option<Substitution>,
}

/// Child-index path from the root of a proof tree.
pub type TreePath = Vec<usize>;

pub fn render_path(p: &[usize]) -> String {
    if p.is_empty() {
        "root".to_string()
    } else {
        p.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
    }
}

impl ProofTree {
    pub fn new(rule: &str, conclusion: Sequent, children: Vec<ProofTree>) -> ProofTree {
        ProofTree { rule: rule.to_string(), conclusion, children, annotation: None }
    }

    pub fn leaf(rule: &str, conclusion: Sequent) -> ProofTree {
        ProofTree::new(rule, conclusion, Vec::new())
    }

    pub fn hyp(conclusion: Sequent) -> ProofTree {
        ProofTree::leaf(HYP, conclusion)
    }

    /// Builds `Cut_T(left, right)`, with conclusion `lhs(left) |- rhs(right)`.
    pub fn cut(left: ProofTree, right: ProofTree) -> ProofTree {
        let ty = left.conclusion.ty().map(|t| t.struct_name()).unwrap_or("FM");
        let c = Sequent::new(left.conclusion.lhs.clone(), right.conclusion.rhs.clone());
        ProofTree::new(&format!("Cut_{ty}"), c, vec![left, right])
    }

    pub fn is_cut(&self) -> bool {
        self.rule.starts_with("Cut_")
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(ProofTree::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.children.iter().map(ProofTree::height).max().unwrap_or(0)
    }

    pub fn count_cuts(&self) -> usize {
        usize::from(self.is_cut()) + self.children.iter().map(ProofTree::count_cuts).sum::<usize>()
    }

    pub fn at(&self, path: &[usize]) -> Option<&ProofTree> {
        match path.split_first() {
            None => Some(self),
            Some((i, rest)) => self.children.get(*i)?.at(rest),
        }
    }

    /// Replaces the subtree at `path`. Panics if the path does not exist.
    pub fn replace_at(&self, path: &[usize], new: ProofTree) -> ProofTree {
        match path.split_first() {
            None => new,
            Some((i, rest)) => {
                let mut t = self.clone();
                t.children[*i] = self.children[*i].replace_at(rest, new);
                t
            }
        }
    }

    /// Pre-order traversal with paths.
    pub fn nodes(&self) -> Vec<(TreePath, &ProofTree)> {
        fn go<'a>(t: &'a ProofTree, path: &mut TreePath, out: &mut Vec<(TreePath, &'a ProofTree)>) {
            out.push((path.clone(), t));
            for (k, c) in t.children.iter().enumerate() {
                path.push(k);
                go(c, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Operational cut term of a cut node: the right side of its left premise.
    pub fn cut_term(&self) -> Option<&Op> {
        if !self.is_cut() {
            return None;
        }
        self.children.first()?.conclusion.rhs.as_op()
    }

    /// `(complexity, height)` of a cut node.
    pub fn cut_rank(&self) -> Option<CutRank> {
        let term = self.cut_term()?;
        Some(CutRank {
            complexity: term.size(),
            height: self.children.iter().map(ProofTree::height).sum(),
        })
    }

    /// Leaves (hypotheses or axioms) in left-to-right order.
    pub fn leaves(&self) -> Vec<&ProofTree> {
        self.nodes().into_iter().filter(|(_, t)| t.children.is_empty()).map(|(_, t)| t).collect()
    }
}

/// Termination measure of a cut, ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CutRank {
    /// Operational size of the cut term.
    pub complexity: usize,
    /// Sum of the premise subtree heights.
    pub height: usize,
}

impl fmt::Display for CutRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.complexity, self.height)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub base: Base,
    pub allow_cut: bool,
    pub allow_macros: bool,
    /// Accept `hyp` leaves (open assumptions); used for schematic trees.
    pub allow_hyp: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            base: Base::Intuitionistic,
            allow_cut: false,
            allow_macros: true,
            allow_hyp: false,
        }
    }
}

impl CheckOptions {
    pub fn with_cut() -> CheckOptions {
        CheckOptions { allow_cut: true, ..CheckOptions::default() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckStats {
    pub nodes: usize,
    pub cuts: usize,
    pub max_cut_rank: Option<CutRank>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub path: TreePath,
    pub rule: String,
    pub reason: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {} ({}): {}", render_path(&self.path), self.rule, self.reason)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub ok: bool,
    pub failures: Vec<Failure>,
    pub stats: CheckStats,
}

pub fn check_type_uniformity(s: &Sequent) -> bool {
    s.is_type_uniform()
}

/// Validates a single node against its rule, ignoring its subtrees' validity.
pub fn check_node(t: &ProofTree, opts: &CheckOptions) -> Result<Option<Dir>, String> {
    if !check_type_uniformity(&t.conclusion) {
        return Err(match t.conclusion.types() {
            Ok((l, r)) => format!("sequent `{}` is not type-uniform ({l} vs {r})", t.conclusion),
            Err(e) => format!("sequent `{}` is ill-typed: {e}", t.conclusion),
        });
    }
    if t.rule == HYP {
        if !opts.allow_hyp {
            return Err("hypotheses are not allowed".into());
        }
        if !t.children.is_empty() {
            return Err("a hypothesis has no premises".into());
        }
        return Ok(None);
    }
    let cat = catalog(opts.base);
    let Some(schema) = cat.get(&t.rule) else {
        return Err(format!("unknown rule `{}`", t.rule));
    };
    match schema.kind {
        RuleKind::Cut if !opts.allow_cut => return Err("cut forbidden".into()),
        RuleKind::Macro if !opts.allow_macros => return Err("macro rules are disabled".into()),
        _ => {}
    }
    let prem: Vec<&Sequent> = t.children.iter().map(|c| &c.conclusion).collect();
    match_directed(schema, &prem, &t.conclusion)
        .map(|(d, _)| Some(d))
        .map_err(|e| e.to_string())
}

pub fn check_proof(t: &ProofTree, opts: &CheckOptions) -> CheckReport {
    let mut failures = Vec::new();
    let mut stats = CheckStats::default();
    for (path, node) in t.nodes() {
        stats.nodes += 1;
        if node.is_cut() {
            stats.cuts += 1;
            if let Some(r) = node.cut_rank() {
                stats.max_cut_rank = stats.max_cut_rank.max(Some(r));
            }
        }
        if let Err(reason) = check_node(node, opts) {
            failures.push(Failure { path, rule: node.rule.clone(), reason });
        }
    }
    CheckReport { ok: failures.is_empty(), failures, stats }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("macro `{rule}` at {} does not match: {detail}", render_path(.path))]
pub struct MacroMismatch {
    pub path: TreePath,
    pub rule: String,
    pub detail: String,
}

/// Replaces every macro node by its primitive derivation.
pub fn expand_macros(t: &ProofTree) -> Result<ProofTree, MacroMismatch> {
    expand_at(t, &mut Vec::new())
}

fn expand_at(t: &ProofTree, path: &mut TreePath) -> Result<ProofTree, MacroMismatch> {
    let mut children = Vec::with_capacity(t.children.len());
    for (k, c) in t.children.iter().enumerate() {
        path.push(k);
        children.push(expand_at(c, path)?);
        path.pop();
    }
    let cat = catalog(Base::Classical);
    let schema = match cat.get(&t.rule) {
        Some(s) if s.kind == RuleKind::Macro => s,
        _ => return Ok(ProofTree { children, ..t.clone() }),
    };
    let mismatch = |detail: String| MacroMismatch { path: path.clone(), rule: t.rule.clone(), detail };
    let prem: Vec<&Sequent> = children.iter().map(|c| &c.conclusion).collect();
    let (_, sub) = match_directed(schema, &prem, &t.conclusion).map_err(|e| mismatch(e.to_string()))?;
    let mut cur = children.into_iter().next().ok_or_else(|| mismatch("missing premise".into()))?;
    for (rule, pat) in &schema.expansion {
        let c = instantiate_sequent(pat, &sub).map_err(|e| mismatch(e.to_string()))?;
        cur = ProofTree::new(rule, c, vec![cur]);
    }
    if cur.conclusion != t.conclusion {
        return Err(mismatch("expansion does not reach the conclusion".into()));
    }
    Ok(cur)
}

/// Whether `s` contains the structure `x` anywhere.
pub fn contains_structure(s: &Structure, x: &Structure) -> bool {
    s == x
        || match s {
            Structure::Bin(_, l, r) => contains_structure(l, x) || contains_structure(r, x),
            _ => false,
        }
}

#[cfg(test)]
mod tests {
    use super::*;

    const AND_R: &str = r#"
prop p q.
(rule and_R (seq "p ; q |- p /\ q")
  (ax Id (seq "p |- p"))
  (ax Id (seq "q |- q")))
"#;

    #[test]
    fn check_simple() {
        let s = parse_script(AND_R).unwrap();
        let r = check_proof(&s.proof, &CheckOptions::default());
        assert!(r.ok, "{:?}", r.failures);
        assert_eq!(r.stats.nodes, 3);
    }

    #[test]
    fn corrupted_rule_fails_at_path() {
        let s = parse_script(&AND_R.replace("(ax Id (seq \"q", "(ax AgId (seq \"q")).unwrap();
        let r = check_proof(&s.proof, &CheckOptions::default());
        assert!(!r.ok);
        assert_eq!(r.failures[0].path, vec![1]);
    }

    #[test]
    fn cut_forbidden() {
        let text = r#"
prop p.
(rule Cut_FM (seq "p |- p") (ax Id (seq "p |- p")) (ax Id (seq "p |- p")))
"#;
        let s = parse_script(text).unwrap();
        let r = check_proof(&s.proof, &CheckOptions::default());
        assert_eq!(r.failures[0].reason, "cut forbidden");
        assert!(check_proof(&s.proof, &CheckOptions::with_cut()).ok);
        assert_eq!(r.stats.cuts, 1);
    }

    #[test]
    fn uniformity() {
        let d = crate::syntax::parse_decls("prop p. fnc alpha. agent a.").unwrap();
        let s = |t| crate::syntax::parse_sequent(t, &d).unwrap();
        assert!(check_type_uniformity(&s("p |- p")));
        assert!(!check_type_uniformity(&s("alpha |- p")));
        assert!(check_type_uniformity(&s("a SBTRI3 alpha |- a SBTRI3 alpha")));
    }

    #[test]
    fn reduce_l_expands() {
        let text = r#"
prop p q. fnc alpha.
(rule reduce_L (seq "alpha STRI0 p |- q")
  (hyp (seq "(alpha STRI0 I) ; (alpha STRI0 p) |- q")))
"#;
        let s = parse_script(text).unwrap();
        let opts = CheckOptions { allow_hyp: true, ..CheckOptions::default() };
        assert!(check_proof(&s.proof, &opts).ok);
        let e = expand_macros(&s.proof).unwrap();
        assert_eq!(e.conclusion, s.proof.conclusion);
        assert_eq!(e.size(), 6);
        let no_macros = CheckOptions { allow_macros: false, ..opts };
        assert!(check_proof(&e, &no_macros).ok);
        assert!(!check_proof(&s.proof, &no_macros).ok);
    }
}
