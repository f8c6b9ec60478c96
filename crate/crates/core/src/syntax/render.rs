use super::{Op, OpConn, SConn, Sequent, Structure};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// Re-parseable surface syntax.
    Ascii,
    Latex,
}

const GREEK: [&str; 24] = [
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa",
    "lambda", "mu", "nu", "xi", "omicron", "pi", "rho", "sigma", "tau", "upsilon", "phi", "chi",
    "psi", "omega",
];

fn latex_name(n: &str) -> String {
    if GREEK.contains(&n) {
        format!("\\{n}")
    } else if n.chars().count() == 1 {
        n.to_string()
    } else {
        format!("\\mathit{{{}}}", n.replace('_', "\\_"))
    }
}

fn op_glyph(c: OpConn, fmt: Format) -> String {
    if fmt == Format::Ascii {
        return c.token();
    }
    match c {
        OpConn::And => "\\wedge".into(),
        OpConn::Or => "\\vee".into(),
        OpConn::Imp => "\\rightarrow".into(),
        OpConn::Limp => "\\leftarrow".into(),
        OpConn::Lsub => "\\mathbin{>\\mkern-8mu-}".into(),
        OpConn::Rsub => "\\mathbin{-\\mkern-8mu<}".into(),
        OpConn::Tri(i) => format!("\\vartriangle_{i}"),
        OpConn::Btri(i) => format!("\\blacktriangle_{i}"),
        OpConn::Rarr(i) => format!("\\mathbin{{-\\mkern-3mu\\vartriangleright}}_{i}"),
        OpConn::Brarr(i) => format!("\\mathbin{{-\\mkern-3mu\\blacktriangleright}}_{i}"),
    }
}

fn s_glyph(c: SConn, fmt: Format) -> String {
    if fmt == Format::Ascii {
        return c.token();
    }
    match c {
        SConn::Semi => "\\,;".into(),
        SConn::Lt => "<".into(),
        SConn::Gt => ">".into(),
        SConn::Stri(i) => format!("\\hat{{\\vartriangle}}_{i}"),
        SConn::Sbtri(i) => format!("\\hat{{\\blacktriangle}}_{i}"),
        SConn::Srarr(i) => format!("\\hat{{\\vartriangleright}}_{i}"),
        SConn::Sbrarr(i) => format!("\\hat{{\\blacktriangleright}}_{i}"),
        SConn::Slarr1 => "\\hat{\\vartriangleleft}_1".into(),
        SConn::Sblarr1 => "\\hat{\\blacktriangleleft}_1".into(),
        SConn::Sactl1 => "\\check{\\vartriangleleft}_1".into(),
        SConn::Sactbl1 => "\\check{\\blacktriangleleft}_1".into(),
        SConn::Vlarr(i) => format!("\\mathbin{{\\vartriangleleft\\mkern-6mu\\sim}}_{i}"),
        SConn::Vblarr(i) => format!("\\mathbin{{\\blacktriangleleft\\mkern-6mu\\sim}}_{i}"),
        SConn::Vrarr3 => "\\mathbin{\\sim\\mkern-6mu\\vartriangleright}_3".into(),
        SConn::Vbrarr3 => "\\mathbin{\\sim\\mkern-6mu\\blacktriangleright}_3".into(),
    }
}

fn wrap(inner: String, compound: bool) -> String {
    if compound {
        format!("({inner})")
    } else {
        inner
    }
}

pub fn render_op(o: &Op, fmt: Format) -> String {
    match o {
        Op::Atom(_, n) | Op::Meta(n) => match fmt {
            Format::Ascii => n.to_string(),
            Format::Latex => latex_name(n),
        },
        Op::Top => if fmt == Format::Ascii { "top" } else { "\\top" }.into(),
        Op::Bot => if fmt == Format::Ascii { "bot" } else { "\\bot" }.into(),
        Op::Bin(c, l, r) => format!(
            "{} {} {}",
            wrap(render_op(l, fmt), matches!(**l, Op::Bin(..))),
            op_glyph(*c, fmt),
            wrap(render_op(r, fmt), matches!(**r, Op::Bin(..)))
        ),
    }
}

fn compound(s: &Structure) -> bool {
    matches!(s, Structure::Bin(..) | Structure::Op(Op::Bin(..)))
}

pub fn render_structure(s: &Structure, fmt: Format) -> String {
    match s {
        Structure::Op(o) => render_op(o, fmt),
        Structure::I => if fmt == Format::Ascii { "I" } else { "\\mathrm{I}" }.into(),
        Structure::Meta(n) => match fmt {
            Format::Ascii => n.to_string(),
            Format::Latex => latex_name(n),
        },
        Structure::Bin(c, l, r) => format!(
            "{} {} {}",
            wrap(render_structure(l, fmt), compound(l)),
            s_glyph(*c, fmt),
            wrap(render_structure(r, fmt), compound(r))
        ),
    }
}

pub fn render_sequent(s: &Sequent, fmt: Format) -> String {
    let turnstile = if fmt == Format::Ascii { "|-" } else { "\\vdash" };
    format!(
        "{} {} {}",
        render_structure(&s.lhs, fmt),
        turnstile,
        render_structure(&s.rhs, fmt)
    )
}
