//! The `.dcp` proof-script format.
//!
//! A script is a declaration header (`prop p q.`, `agent a.`, `fnc alpha.`)
//! followed by one s-expression:
//!
//! ```text
//! (rule NAME (seq "X |- Y") CHILD ...)
//! (ax NAME (seq "X |- Y"))
//! (hyp (seq "X |- Y"))
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use super::{ProofTree, HYP};
use crate::syntax::{parse_decls, parse_sequent, Decls, ParseError};

#[derive(Clone, Debug)]
pub struct Script {
    pub decls: Decls,
    pub proof: ProofTree,
    /// Leading comment lines, without the `#`.
    pub comments: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ScriptError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: in sequent: {err}")]
    Sequent { line: usize, err: ParseError },
    #[error("declarations: {0}")]
    Decls(ParseError),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Str(String),
    Word(String),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ScriptError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut it = text.chars().peekable();
    while let Some(c) = it.next() {
        match c {
            '\n' => line += 1,
            c if c.is_whitespace() => {}
            '#' => {
                for d in it.by_ref() {
                    if d == '\n' {
                        line += 1;
                        break;
                    }
                }
            }
            '(' => out.push((Tok::Open, line)),
            ')' => out.push((Tok::Close, line)),
            '"' => {
                let start = line;
                let mut s = String::new();
                loop {
                    match it.next() {
                        Some('"') => break,
                        Some('\n') => {
                            return Err(ScriptError::Syntax {
                                line: start,
                                msg: "unterminated string".into(),
                            })
                        }
                        Some(d) => s.push(d),
                        None => {
                            return Err(ScriptError::Syntax {
                                line: start,
                                msg: "unterminated string".into(),
                            })
                        }
                    }
                }
                out.push((Tok::Str(s), start));
            }
            _ => {
                let mut w = c.to_string();
                while let Some(&d) = it.peek() {
                    if d.is_whitespace() || d == '(' || d == ')' || d == '"' || d == '#' {
                        break;
                    }
                    w.push(d);
                    it.next();
                }
                out.push((Tok::Word(w), line));
            }
        }
    }
    Ok(out)
}

struct Reader<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    decls: &'a Decls,
}

impl Reader<'_> {
    fn line(&self) -> usize {
        self.toks
            .get(self.at)
            .or_else(|| self.toks.last())
            .map(|t| t.1)
            .unwrap_or(1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ScriptError> {
        Err(ScriptError::Syntax { line: self.line(), msg: msg.into() })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.0.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ScriptError> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            _ => {
                self.at -= 1;
                self.err(format!("expected {what}"))
            }
        }
    }

    fn word(&mut self) -> Result<String, ScriptError> {
        match self.next() {
            Some(Tok::Word(w)) => Ok(w),
            _ => {
                self.at -= 1;
                self.err("expected a name")
            }
        }
    }

    fn seq(&mut self) -> Result<crate::syntax::Sequent, ScriptError> {
        self.expect(Tok::Open, "`(seq \"...\")`")?;
        if self.word()? != "seq" {
            self.at -= 1;
            return self.err("expected `seq`");
        }
        let line = self.line();
        let Some(Tok::Str(s)) = self.next() else {
            self.at -= 1;
            return self.err("expected a quoted sequent");
        };
        self.expect(Tok::Close, "`)`")?;
        parse_sequent(&s, self.decls).map_err(|err| ScriptError::Sequent { line, err })
    }

    fn tree(&mut self) -> Result<ProofTree, ScriptError> {
        self.expect(Tok::Open, "`(`")?;
        let head = self.word()?;
        let t = match head.as_str() {
            "rule" => {
                let name = self.word()?;
                let concl = self.seq()?;
                let mut children = Vec::new();
                while let Some((Tok::Open, _)) = self.toks.get(self.at) {
                    children.push(self.tree()?);
                }
                ProofTree::new(&name, concl, children)
            }
            "ax" => {
                let name = self.word()?;
                ProofTree::leaf(&name, self.seq()?)
            }
            "hyp" => ProofTree::hyp(self.seq()?),
            other => {
                self.at -= 1;
                return self.err(format!("unknown node kind `{other}`"));
            }
        };
        self.expect(Tok::Close, "`)`")?;
        Ok(t)
    }
}

/// Parses a complete script.
pub fn parse_script(text: &str) -> Result<Script, ScriptError> {
    let mut header = String::new();
    let mut comments = Vec::new();
    let mut body_start = text.len();
    let mut offset = 0;
    let mut in_header_comments = true;
    for line in text.split_inclusive('\n') {
        let code = line.split('#').next().unwrap_or("");
        if let Some(k) = code.find('(') {
            body_start = offset + k;
            header.push_str(&code[..k]);
            break;
        }
        let trimmed = line.trim();
        if let Some(c) = trimmed.strip_prefix('#') {
            if in_header_comments {
                comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
            }
        } else if !trimmed.is_empty() {
            in_header_comments = false;
        }
        header.push_str(code);
        header.push('\n');
        offset += line.len();
    }
    let decls = parse_decls(&header).map_err(ScriptError::Decls)?;
    let header_lines = text[..body_start].matches('\n').count();
    let mut toks = lex(&text[body_start..])?;
    for t in &mut toks {
        t.1 += header_lines;
    }
    if toks.is_empty() {
        return Err(ScriptError::Syntax { line: header_lines + 1, msg: "missing proof".into() });
    }
    let mut r = Reader { toks, at: 0, decls: &decls };
    let proof = r.tree()?;
    if r.at < r.toks.len() {
        return r.err("trailing input after the proof");
    }
    Ok(Script { decls, proof, comments })
}

fn write_tree(t: &ProofTree, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    let seq = format!("(seq \"{}\")", t.conclusion);
    if t.rule == HYP {
        out.push_str(&format!("{pad}(hyp {seq})"));
    } else if t.children.is_empty() {
        out.push_str(&format!("{pad}(ax {} {seq})", t.rule));
    } else {
        out.push_str(&format!("{pad}(rule {} {seq}", t.rule));
        for c in &t.children {
            out.push('\n');
            write_tree(c, indent + 2, out);
        }
        out.push(')');
    }
}

/// Prints a script that [`parse_script`] reads back to the same tree.
pub fn print_script(decls: &Decls, proof: &ProofTree, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str(&format!("# {c}\n"));
    }
    out.push_str(&decls.header());
    write_tree(proof, 0, &mut out);
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# A comment.\nprop p q.\n(rule and_R (seq \"p ; q |- p /\\ q\")\n  (ax Id (seq \"p |- p\"))\n  (ax Id (seq \"q |- q\")))\n";
        let s = parse_script(text).unwrap();
        assert_eq!(s.comments, vec!["A comment.".to_string()]);
        let printed = print_script(&s.decls, &s.proof, &s.comments);
        assert_eq!(printed, text);
    }

    #[test]
    fn errors_carry_lines() {
        let err = parse_script("prop p.\n\n(rule Id (seq \"p |- q\"))").unwrap_err();
        assert!(matches!(err, ScriptError::Sequent { line: 3, .. }), "{err:?}");
        assert!(parse_script("prop p.\n(rule Id (seq \"p |- p\")").is_err());
        assert!(parse_script("prop p.\n").is_err());
        assert!(parse_script("agnt a.\n(ax Id (seq \"p |- p\"))").is_err());
    }
}
