#!/usr/bin/env python3
"""Writes the golden principal cut reductions to crates/core/tests/golden/.

Each case is a pair `NAME.in.dcp` (a single cut between two rule
applications whose premises are hypotheses) and `NAME.out.dcp` (the tree the
principal reduction must produce). The output trees are transcribed by hand
from the reduction schemas: each heterogeneous case displays the cut term's
first component, cuts it, redisplays, then does the same for the second
component. Distinct atoms stand in for the schematic structures.

Run from the repository root: python3 tools/gen_golden.py
"""

import os

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "tests", "golden")
DECLS = "prop p q r s A B.\nagent c d.\nfnc alpha beta.\n"


def par(s):
    return s if " " not in s else f"({s})"


def b(l, conn, r):
    return f"{par(l)} {conn} {par(r)}"


def seq(l, r):
    return f"{l} |- {r}"


def hyp(s):
    return ("hyp", s, [])


def ax(name, s):
    return ("ax", name, s)


def rule(name, s, *children):
    return ("rule", name, s, list(children))


def cut(ty, s, left, right):
    return rule(f"Cut_{ty}", s, left, right)


def render(t, indent=0):
    pad = " " * indent
    if t[0] == "hyp":
        return f'{pad}(hyp (seq "{t[1]}"))'
    if t[0] == "ax":
        return f'{pad}(ax {t[1]} (seq "{t[2]}"))'
    _, name, s, children = t
    inner = "\n".join(render(c, indent + 2) for c in children)
    return f'{pad}(rule {name} (seq "{s}")\n{inner})'


# Stand-ins per heterogeneous index: (structure x, operational a, type) for
# the first coordinate; the second coordinate is formula-typed except for 3.
FIRST = {
    0: ("beta", "alpha", "FNC"),
    1: ("d STRI3 beta", "c tri3 alpha", "ACT"),
    2: ("d", "c", "AG"),
    3: ("d", "c", "AG"),
}
SECOND = {0: ("q", "B", "FM"), 1: ("q", "B", "FM"), 2: ("q", "B", "FM"), 3: ("beta", "alpha", "FNC")}
RESULT = {0: ("r", "FM"), 1: ("r", "FM"), 2: ("r", "FM"), 3: ("p SLARR1 s", "ACT")}


def tri_case(i, black):
    (x, a, ta), (y, bb, tb), (z, _) = FIRST[i], SECOND[i], RESULT[i]
    op = f"btri{i}" if black else f"tri{i}"
    st = f"SBTRI{i}" if black else f"STRI{i}"
    if black:
        ladj, lname = ("SLARR1", "disp_btri1_larr1") if i == 1 else (f"VLARR{i}", f"disp_btri{i}_vlarr{i}")
        radj, rname = ("VRARR3", "disp_btri3_vrarr3") if i == 3 else (f"SRARR{i}", f"disp_btri{i}_rarr{i}")
    else:
        ladj, lname = ("SBLARR1", "disp_tri1_blarr1") if i == 1 else (f"VBLARR{i}", f"disp_tri{i}_vblarr{i}")
        radj, rname = ("VBRARR3", "disp_tri3_vbrarr3") if i == 3 else (f"SBRARR{i}", f"disp_tri{i}_brarr{i}")
    term = b(a, op, bb)
    p0, p1 = hyp(seq(x, a)), hyp(seq(y, bb))
    p2 = hyp(seq(b(a, st, bb), z))
    ty = RESULT[i][1] if i == 3 else "FM"
    left = rule(f"{op}_R", seq(b(x, st, y), term), p0, p1)
    right = rule(f"{op}_L", seq(term, z), p2)
    inp = cut(ty, seq(b(x, st, y), z), left, right)
    d1 = rule(lname, seq(a, b(z, ladj, bb)), p2)
    c1 = cut(ta, seq(x, b(z, ladj, bb)), p0, d1)
    d2 = rule(lname, seq(b(x, st, bb), z), c1)
    d3 = rule(rname, seq(bb, b(x, radj, z)), d2)
    c2 = cut(tb, seq(y, b(x, radj, z)), p1, d3)
    out = rule(rname, seq(b(x, st, y), z), c2)
    return op, inp, out


def arr_case(i, black):
    (x, a, ta) = FIRST[i]
    y, bb, z = "q", "B", "r"
    op = f"brarr{i}" if black else f"rarr{i}"
    arr = f"SBRARR{i}" if black else f"SRARR{i}"
    tri = f"STRI{i}" if black else f"SBTRI{i}"
    if black:
        aname = f"disp_tri{i}_brarr{i}"
        ladj, lname = ("SBLARR1", "disp_tri1_blarr1") if i == 1 else (f"VBLARR{i}", f"disp_tri{i}_vblarr{i}")
    else:
        aname = f"disp_btri{i}_rarr{i}"
        ladj, lname = ("SLARR1", "disp_btri1_larr1") if i == 1 else (f"VLARR{i}", f"disp_btri{i}_vlarr{i}")
    term = b(a, op, bb)
    p1 = hyp(seq(y, b(a, arr, bb)))
    p0, p2 = hyp(seq(x, a)), hyp(seq(bb, z))
    left = rule(f"{op}_R", seq(y, term), p1)
    right = rule(f"{op}_L", seq(term, b(x, arr, z)), p0, p2)
    inp = cut("FM", seq(y, b(x, arr, z)), left, right)
    e1 = rule(aname, seq(b(a, tri, y), bb), p1)
    e2 = rule(lname, seq(a, b(bb, ladj, y)), e1)
    c1 = cut(ta, seq(x, b(bb, ladj, y)), p0, e2)
    e3 = rule(lname, seq(b(x, tri, y), bb), c1)
    c2 = cut("FM", seq(b(x, tri, y), z), e3, p2)
    out = rule(aname, seq(y, b(x, arr, z)), c2)
    return op, inp, out


def base_cases():
    atom_l = ax("Atom", "alpha STRI0 p |- p")
    atom_r = ax("Atom", "p |- beta SBRARR0 p")
    yield "atom", cut("FM", "alpha STRI0 p |- beta SBRARR0 p", atom_l, atom_r), ax(
        "Atom", "alpha STRI0 p |- beta SBRARR0 p"
    )
    pi = hyp("I |- q")
    yield "top", cut("FM", "I |- q", ax("TopR", "I |- top"), rule("top_L", "top |- q", pi)), pi
    pi = hyp("q |- I")
    yield "bot", cut("FM", "q |- I", rule("bot_R", "q |- bot", pi), ax("BotL", "bot |- I")), pi
    yield "agid", cut("AG", "c |- c", ax("AgId", "c |- c"), ax("AgId", "c |- c")), ax("AgId", "c |- c")
    yield "fncid", cut("FNC", "alpha |- alpha", ax("FncId", "alpha |- alpha"), ax("FncId", "alpha |- alpha")), ax(
        "FncId", "alpha |- alpha"
    )


def main():
    os.makedirs(OUT, exist_ok=True)
    cases = list(base_cases())
    for i in range(4):
        for black in (False, True):
            cases.append(tri_case(i, black))
    for i in range(3):
        for black in (False, True):
            cases.append(arr_case(i, black))
    for name, inp, out in cases:
        for suffix, tree, what in (("in", inp, "Principal cut"), ("out", out, "Its reduct")):
            with open(os.path.join(OUT, f"{name}.{suffix}.dcp"), "w") as f:
                f.write(f"# {what}: {name}.\n{DECLS}{render(tree)}\n")
    print(f"wrote {len(cases)} cases to {os.path.normpath(OUT)}")


if __name__ == "__main__":
    main()
