//! The relativized display property as breadth-first search over the
//! display postulates.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::checker::ProofTree;
use crate::rules::{catalog, rewrite, track, Base, Dir, RuleKind, RuleSchema};
use crate::syntax::{Pos, Sequent};

/// Default search depth.
pub const DEFAULT_DEPTH: usize = 30;

/// One postulate application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisplayStep {
    pub rule: String,
    pub dir: Dir,
    pub result: Sequent,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DisplayError {
    #[error("search exhausted at depth {0}")]
    SearchExhausted(usize),
    #[error("no substructure at {0}")]
    BadTarget(String),
}

fn postulates() -> impl Iterator<Item = &'static RuleSchema> {
    catalog(Base::Intuitionistic).rules.iter().filter(|r| r.kind == RuleKind::Display)
}

/// Every display postulate applicable at the root of `s`, in catalog order,
/// downward before upward.
pub fn applicable_postulates(s: &Sequent) -> Vec<(String, Dir, Sequent)> {
    let mut out = Vec::new();
    for r in postulates() {
        for dir in [Dir::Down, Dir::Up] {
            if let Some((t, _)) = rewrite(r, dir, s) {
                out.push((r.name.clone(), dir, t));
            }
        }
    }
    out
}

/// Like [`applicable_postulates`], also following the occurrence at `pos`.
fn moves(s: &Sequent, pos: &Pos) -> Vec<(DisplayStep, Pos)> {
    let mut out = Vec::new();
    for r in postulates() {
        for dir in [Dir::Down, Dir::Up] {
            let Some((t, _)) = rewrite(r, dir, s) else { continue };
            let (from, to) = r.oriented(dir);
            let Some(ps) = track(from[0], to, pos) else { continue };
            if let [p] = ps.as_slice() {
                out.push((DisplayStep { rule: r.name.clone(), dir, result: t }, p.clone()));
            }
        }
    }
    out
}

/// Finds a shortest sequence of postulate applications that leaves the
/// occurrence at `target` alone on one side of the turnstile.
pub fn display_search(
    s: &Sequent,
    target: &Pos,
    max_depth: usize,
) -> Result<Vec<DisplayStep>, DisplayError> {
    if s.at(target).is_none() {
        return Err(DisplayError::BadTarget(target.to_string()));
    }
    if target.is_root() {
        return Ok(Vec::new());
    }
    type Key = (Sequent, Pos);
    let start: Key = (s.clone(), target.clone());
    let mut parent: HashMap<Key, Option<(Key, DisplayStep)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((key, depth)) = queue.pop_front() {
        if depth == max_depth {
            continue;
        }
        for (step, pos) in moves(&key.0, &key.1) {
            let next: Key = (step.result.clone(), pos);
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some((key.clone(), step)));
            if next.1.is_root() {
                let mut steps = Vec::new();
                let mut cur = next;
                while let Some(Some((prev, step))) = parent.get(&cur) {
                    steps.push(step.clone());
                    cur = prev.clone();
                }
                steps.reverse();
                return Ok(steps);
            }
            queue.push_back((next, depth + 1));
        }
    }
    Err(DisplayError::SearchExhausted(max_depth))
}

/// Finds a shortest chain of postulate applications from `from` to `to`.
pub fn connect(from: &Sequent, to: &Sequent, max_depth: usize) -> Option<Vec<DisplayStep>> {
    if from == to {
        return Some(Vec::new());
    }
    let mut parent: HashMap<Sequent, (Sequent, DisplayStep)> = HashMap::new();
    let mut seen: HashSet<Sequent> = HashSet::from([from.clone()]);
    let mut queue = VecDeque::from([(from.clone(), 0usize)]);
    while let Some((s, depth)) = queue.pop_front() {
        if depth == max_depth {
            continue;
        }
        for (rule, dir, t) in applicable_postulates(&s) {
            if !seen.insert(t.clone()) {
                continue;
            }
            parent.insert(t.clone(), (s.clone(), DisplayStep { rule, dir, result: t.clone() }));
            if &t == to {
                let mut steps = Vec::new();
                let mut cur = t;
                while let Some((prev, step)) = parent.get(&cur) {
                    steps.push(step.clone());
                    cur = prev.clone();
                }
                steps.reverse();
                return Some(steps);
            }
            queue.push_back((t, depth + 1));
        }
    }
    None
}

/// Stacks `steps` on top of `t` as single-premise proof nodes.
pub fn apply_steps(t: ProofTree, steps: &[DisplayStep]) -> ProofTree {
    steps.iter().fold(t, |acc, s| ProofTree::new(&s.rule, s.result.clone(), vec![acc]))
}

/// The steps undoing `steps`, starting from their final result.
pub fn invert_steps(start: &Sequent, steps: &[DisplayStep]) -> Vec<DisplayStep> {
    let mut results: Vec<Sequent> = vec![start.clone()];
    results.extend(steps.iter().map(|s| s.result.clone()));
    steps
        .iter()
        .enumerate()
        .rev()
        .map(|(k, s)| DisplayStep { rule: s.rule.clone(), dir: s.dir.flip(), result: results[k].clone() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_decls, parse_sequent, Side};

    fn seq(t: &str) -> Sequent {
        let d = parse_decls("prop p q r X Y Z. fnc alpha.").unwrap();
        parse_sequent(t, &d).unwrap()
    }

    #[test]
    fn postulates_at_root() {
        let ps = applicable_postulates(&seq("alpha STRI0 p |- q"));
        let has = |n: &str, r: &str| ps.iter().any(|(m, d, s)| m == n && *d == Dir::Down && s == &seq(r));
        assert!(has("disp_tri0_brarr0", "p |- alpha SBRARR0 q"));
        assert!(has("disp_tri0_vblarr0", "alpha |- q VBLARR0 p"));
        assert!(applicable_postulates(&seq("p |- q")).is_empty());
        let ps = applicable_postulates(&seq("X ; Y |- Z"));
        assert!(ps.iter().any(|(m, _, s)| m == "disp_semi_lt" && s == &seq("X |- Z < Y")));
        assert!(ps.iter().any(|(m, _, s)| m == "disp_semi_gt" && s == &seq("Y |- X > Z")));
    }

    #[test]
    fn search_examples() {
        let s = seq("alpha STRI0 p |- q");
        let st = display_search(&s, &Pos { side: Side::Lhs, path: vec![1] }, DEFAULT_DEPTH).unwrap();
        assert_eq!(st.len(), 1);
        assert_eq!(st[0].result, seq("p |- alpha SBRARR0 q"));
        let st = display_search(&s, &Pos { side: Side::Lhs, path: vec![0] }, DEFAULT_DEPTH).unwrap();
        assert_eq!(st.len(), 1);
        assert_eq!(st[0].result, seq("alpha |- q VBLARR0 p"));
        assert!(display_search(&s, &Pos::root(Side::Lhs), DEFAULT_DEPTH).unwrap().is_empty());
    }

    #[test]
    fn deep_search_and_connect() {
        let s = seq("(p ; (q > r)) ; X |- Z < Y");
        let target = Pos { side: Side::Lhs, path: vec![0, 1, 1] };
        let st = display_search(&s, &target, DEFAULT_DEPTH).unwrap();
        let last = &st.last().unwrap().result;
        assert_eq!(last.lhs.to_string(), "r");
        let back = connect(last, &s, DEFAULT_DEPTH).unwrap();
        assert_eq!(back.last().unwrap().result, s);
        let inv = invert_steps(&s, &st);
        assert_eq!(inv.last().unwrap().result, s);
    }
}
