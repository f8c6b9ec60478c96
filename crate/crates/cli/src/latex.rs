//! Proof trees as `bussproofs` LaTeX.

use dcal::checker::{ProofTree, HYP};
use dcal::syntax::{render_sequent, Format};

fn escape(rule: &str) -> String {
    rule.replace('_', "\\_")
}

fn inference(arity: usize) -> &'static str {
    match arity {
        1 => "UnaryInfC",
        2 => "BinaryInfC",
        3 => "TrinaryInfC",
        4 => "QuaternaryInfC",
        _ => "QuinaryInfC",
    }
}

fn write(t: &ProofTree, out: &mut String) {
    let seq = render_sequent(&t.conclusion, Format::Latex);
    if t.rule == HYP {
        out.push_str(&format!("\\AxiomC{{${seq}$}}\n"));
        return;
    }
    if t.children.is_empty() {
        out.push_str("\\AxiomC{}\n");
    }
    for c in &t.children {
        write(c, out);
    }
    out.push_str(&format!("\\RightLabel{{\\scriptsize {}}}\n", escape(&t.rule)));
    out.push_str(&format!("\\{}{{${seq}$}}\n", inference(t.children.len().max(1))));
}

/// A `prooftree` environment for `t`.
pub fn proof_tree(t: &ProofTree) -> String {
    let mut out = String::from("\\begin{prooftree}\n");
    write(t, &mut out);
    out.push_str("\\end{prooftree}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use dcal::checker::parse_script;

    #[test]
    fn binary_rule() {
        let s = parse_script(
            "prop p q.\n(rule and_R (seq \"p ; q |- p /\\ q\")\n  (ax Id (seq \"p |- p\"))\n  (ax Id (seq \"q |- q\")))\n",
        )
        .unwrap();
        let tex = proof_tree(&s.proof);
        assert_eq!(tex.matches("\\AxiomC{}").count(), 2);
        assert!(tex.contains("\\RightLabel{\\scriptsize and\\_R}\n\\BinaryInfC{$p \\,; q \\vdash p \\wedge q$}"), "{tex}");
        assert!(tex.starts_with("\\begin{prooftree}\n") && tex.ends_with("\\end{prooftree}\n"));
    }
}
