"""Regenerate the bundled corpora, certificates and pipeline inputs.

Run from the repository root:  python3 tools/build_data.py
"""

from __future__ import annotations

from pathlib import Path

from acbench.chain import Chain
from acbench.knot import Crossing, CrossingTable, EliminationScript, format_crossings, format_elimination
from acbench.laurent import evans_matrix, format_mat2
from acbench.moves import expand_moves, verify_certificate, write_certificate
from acbench.presentation import Presentation, canonical_key, format_corpus
from acbench.search import trivialize
from acbench.series import SeriesSpec, ak, gen_series, gordon, ms
from acbench.words import invert, multiply, parse_word

DATA = Path(__file__).resolve().parents[1] / "src" / "acbench" / "data"
XY = "xy"


def pres(*rels: str) -> Presentation:
    names = "xyz"[:len(rels)]
    return Presentation(len(rels), tuple(parse_word(r, names) for r in rels))


def chain_prop11a(c: Chain) -> Chain:
    c.reach("XyyyX", "yxYXYx")
    c.to(2, "yxYXyyX")
    c.to(1, "yXyyyXY")
    c.to(1, "yXyyXyyX")
    c.note("relator 1 is primitive: x -> xy^2 takes it to y^-1 x^-3")
    return c.primitive(1)


def prop11a() -> Chain:
    return chain_prop11a(Chain(gen_series(SeriesSpec("prop11a"))).note("x^2 = y^3, xyx = yxy"))


def prop11b() -> Chain:
    c = Chain(gen_series(SeriesSpec("prop11b"))).note("x^-1 y x = y^2, x = y x^2 y x^-2")
    c.substitute(2, "yyxyXX")  # y^2 for x^-1 y x
    c.to(2, "XyyxyX")
    c.substitute(2, "yyXyxyX")  # two steps of y^4 for x^-1 y^2 x
    c.substitute(2, "yyyyyX")
    c.note("relator 2 is primitive")
    return c.primitive(2)


def prop11c() -> Chain:
    c = Chain(gen_series(SeriesSpec("prop11c"))).note("x^-1 y^2 x = y^3, x^2 = y x y^-1")
    c.reach("YYXyyxY", "XXyxY")
    c.to(2, "yXYxx")
    c.to(1, "YYXyxx")
    c.reach("xYYXyx", "xyXYx")
    c.to(1, "xyxYYXyxYX")
    c.to(1, "xyxYY")
    c.reach("YxyxY", "yXYxx")
    c.to(1, "Yxxx")
    c.note("relator 1 is primitive")
    return c.primitive(1)


def prop11d() -> Chain:
    c = Chain(gen_series(SeriesSpec("prop11d"))).note("x^-1 y^2 x = y^3, x^2 = y x y")
    c.to(2, "xYXYx")  # x y^-1 = x^-1 y x
    c.substitute(1, "xYXyxYYY")  # (x y^-1)^2 for x^-1 y^2 x, one factor at a time
    c.substitute(1, "xYxYYYY")
    c.note("automorphism x -> xy, y -> y")
    c.automorphism(["xy", "y"], ["xY", "y"])
    c.reach("xxYYY", "xyxYXY")
    c.note("continue as for x^2 = y^3, xyx = yxy")
    return chain_prop11a(c)


def chain_prop13(c: Chain, n: int) -> Chain:
    """``x^n = y^(n+1), xyx = yxy`` to ``x^-1 y^n x = y^(n+1), x = y^-1 x^-1 y x y``."""
    c.to(2, multiply((1,), parse_word("YXYxy", XY)))  # x (y^-1 x^-1 y x y)^-1
    r2 = c.p.relators[1]
    # replace each x of x^n by y^-1 x^-1 y x y, innermost conjugate first
    witness = tuple((2, -1, (1,) * k) for k in range(n))
    new = multiply(parse_word("YX", XY), (2,) * n, parse_word("xy", XY), (-2,) * (n + 1))
    c.substitute(1, new, witness)
    assert c.p.relators[1] == r2
    c.to(1, multiply((-1,), (2,) * n, (1,), (-2,) * (n + 1)))
    return c


def prop13(n: int = 2) -> Chain:
    c = Chain(ak(n)).note(f"x^{n} = y^{n + 1}, xyx = yxy")
    chain_prop13(c, n)
    c.note(f"step {len(c.steps)} reaches x^-1 y^{n} x = y^{n + 1}, x = y^-1 x^-1 y x y;"
           " the rest is a searched elementary tail to the standard key")
    res = trivialize(c.p)
    assert res.found
    return c.move(*expand_moves(c.p, res.certificate.steps))


def prop12() -> Chain:
    c = Chain(ak(3)).note("x^3 = y^4, xyx = yxy; first the n = 3 chain to x^-1 y^3 x = y^4")
    chain_prop13(c, 3)
    c.to(2, "xyxYXY")
    c.note("automorphism x -> x^-1, y -> y^-1")
    c.automorphism(["X", "Y"], ["X", "Y"])
    c.swap(1, 2)
    c.note("automorphism x -> x y^-1, y -> y")
    c.automorphism(["xY", "y"], ["xy", "y"])
    c.to(1, "YxxYX")  # y^-1 x^2 = x y
    c.substitute(2, "xYYXXyyyyy")  # y^-1 x^2 for x y
    c.to(2, "YYYYYxxyyX")  # y^-5 x^2 = x y y^-3
    c.substitute(2, "YYYYYxxyyyXXy")
    c.to(2, "YYYYxxyyyXX")  # y^-4 x^2 = x^2 y^-3
    c.to(1, "xxYXY")  # x^2 = y x y
    c.note("add z with z = y^-3")
    c.add()
    c.note("automorphism z -> z y^3 makes the new relator z y^3")
    c.automorphism(["x", "y", "zyyy"], ["x", "y", "zYYY"])
    c.substitute(2, "YzxxyyyXX")  # z for y^-3, then z^-1 for y^3
    c.substitute(2, "YzxxZXX")
    for _ in range(3):
        # each y in z y^3 becomes z x^2 z^-1 x^-2
        cur = c.p.relators[2]
        k = cur.index(2)
        c.substitute(3, cur[:k] + parse_word("zxxZXX", "xyz") + cur[k + 1:])
    c.to(2, "yxxzXXZ")  # y = z x^2 z^-1 x^-2
    for _ in range(2):
        cur = c.p.relators[0]
        k = next(t for t, a in enumerate(cur) if abs(a) == 2)
        img = parse_word("zxxZXX", "xyz")
        c.substitute(1, cur[:k] + (img if cur[k] > 0 else invert(img)) + cur[k + 1:])
    c.note("automorphism y -> y z x^2 z^-1 x^-2 frees y")
    c.automorphism(["x", "yzxxZXX", "z"], ["x", "yxxzXXZ", "z"])
    c.to(2, "y")
    c.note("rename: swap the roles of y and z")
    c.automorphism(["x", "z", "y"], ["x", "z", "y"])
    c.swap(2, 3)
    c.to(3, "z")
    c.drop()
    c.reach(*PROP12_TARGET.relators)
    return c


# x^4 = y x^2 y^-1 x^-1 y x^2 y^-1 and y = [x^2, y]^3
PROP12_TARGET = Presentation(2, (multiply(parse_word("xxxx", XY), invert(parse_word("yxxYXyxxY", XY))),
                                 multiply((2,), invert(parse_word("xxyXXY" * 3, XY)))))


def fig1() -> CrossingTable:
    rows = [(1, 10, 14, 1), (2, 10, 1, -1), (3, 1, 2, -1), (4, 6, 3, -1), (5, 12, 4, 1),
            (6, 7, 5, -1), (7, 4, 6, -1), (8, 1, 7, 1), (9, 11, 8, -1), (10, 14, 9, 1),
            (11, 2, 10, -1), (12, 1, 11, -1), (13, 5, 12, 1), (14, 1, 13, 1)]
    return CrossingTable(tuple(Crossing(*r) for r in rows))


FIG1_SCRIPT = EliminationScript(11, ((14, 14), (12, 11), (9, 9), (13, 13), (8, 8), (4, 4),
                                     (3, 3), (6, 6), (10, 10), (2, 2), (1, 1)))


def write(name: str, text: str) -> None:
    path = DATA / name
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    print("wrote", path.relative_to(DATA.parents[2]))


def corpus(name: str, comment: str, ps) -> None:
    write(f"corpora/{name}.pres", format_corpus(ps, comments=[comment]))


def main() -> None:
    corpus("example1", "x^-1 y^2 x = y^3, y^-1 x^2 y = x^3", [gen_series(SeriesSpec("example1"))])
    corpus("example2", "y^-1 x y = x^2, z^-1 y z = y^2, x^-1 z x = z^2",
           [gen_series(SeriesSpec("example2"))])
    corpus("example3", "x^4 y^3 = y^2 x^2, x^6 y^4 = y^3 x^3", [gen_series(SeriesSpec("example3"))])
    corpus("ak", "x^n = y^(n+1), xyx = yxy for n = 2..5", [ak(n) for n in range(2, 6)])
    corpus("ak3", "x^3 = y^4, xyx = yxy", [ak(3)])
    ms_words = ["YXyxy", "yXYx", "YxyX", "xyXY", "yyXYYx"]
    corpus("ms", "x^-1 y^n x = y^(n+1), x = w for a few n and w",
           [ms(n, parse_word(w, XY)) for n in (1, 2, 3) for w in ms_words])
    corpus("gordon", "x = [x^m, y^n], y = [x^p, y^q]",
           [gordon(*q) for q in [(1, 1, 1, 1), (1, 2, 1, 1), (2, 1, 1, 2), (-1, 1, 1, -1),
                                 (2, 2, 1, 1), (1, -1, 2, 1)]])
    for tag, rel in zip("abcd", ["x^2 = y^3, xyx = yxy", "x^-1 y x = y^2, x = y x^2 y x^-2",
                                 "x^-1 y^2 x = y^3, x^2 = y x y^-1", "x^-1 y^2 x = y^3, x^2 = y x y"]):
        corpus(f"prop11{tag}", rel, [gen_series(SeriesSpec(f"prop11{tag}"))])
    corpus("knot25", "2-generator presentation of length 25 from the unknot diagram",
           [pres("XYxYXyxYYxyXy", "YXyyXYxyxYYx")])
    corpus("knot14", "shortened form of length 14", [pres("xyXXYxY", "XYxyyxY")])
    corpus("prop12_target", "x^4 = y x^2 y^-1 x^-1 y x^2 y^-1, y = [x^2, y]^3", [PROP12_TARGET])
    corpus("order3", "y x y = x^2, x y x = x^4: abelianization Z/3, order 3",
           [pres("yxyXX", "xyxXXXX")])
    corpus("trivial6", "short presentations of the trivial group used for composition",
           [pres("x", "y"), pres("xy", "xyy")] + [gen_series(SeriesSpec(f"prop11{t}")) for t in "abcd"])

    write("fig1.crossings", "# unknot diagram, one line per crossing: out over in sign\n"
          + format_crossings(fig1()))
    write("fig1.elim", "# relator 11 is the redundant one discarded here\n"
          + format_elimination(FIG1_SCRIPT))
    write("evans.mat2", "# determinant 1 over Z[x1^+-1, x2^+-1]\n" + format_mat2(evans_matrix()))

    certs = {"prop11a": prop11a(), "prop11b": prop11b(), "prop11c": prop11c(),
             "prop11d": prop11d(), "prop12": prop12(), "prop13": prop13(2)}
    for name, c in certs.items():
        cert = c.certificate()
        report = verify_certificate(cert)
        assert report.ok, (name, report.reason)
        path = DATA / "certs" / f"{name}.cert"
        path.parent.mkdir(parents=True, exist_ok=True)
        write_certificate(cert, path)
        print("wrote", path.relative_to(DATA.parents[2]), "-", "; ".join(report.summary_lines()[1:4]))
    assert canonical_key(certs["prop12"].p) == canonical_key(PROP12_TARGET)


if __name__ == "__main__":
    main()
