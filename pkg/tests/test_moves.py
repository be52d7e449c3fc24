import random

import pytest

from acbench import data_path
from acbench.moves import (
    AddGenerator,
    Automorphism,
    Certificate,
    Conjugate,
    DropGenerator,
    IllegalMove,
    Invert,
    LeftMultiply,
    PrimitiveFinish,
    RightMultiply,
    Substitute,
    Swap,
    apply_move,
    expand_move,
    format_certificate,
    inverse_move,
    neighbors,
    parse_certificate,
    parse_move,
    read_certificate,
    verify_certificate,
    witness_product,
)
from acbench.presentation import Presentation, abelianization_matrix, canonical_key
from acbench.triviality import smith_normal_form
from acbench.words import multiply, normalize, parse_word
from oracles import presentation

XY = "xy"
STD = Presentation.standard(2)


def w(text):
    return parse_word(text, XY)


def test_right_multiply_and_conjugate_examples():
    assert apply_move(STD, RightMultiply(1, 2, 1)) == presentation(2, "xy", "y")
    assert apply_move(STD, Conjugate(1, w("y"))) == presentation(2, "yxY", "y")


def test_substitute_example():
    p = presentation(2, "XyxYY", "XyxxyXX")
    q = apply_move(p, Substitute(2, w("yyxyXX"), ((1, -1, ()),)))
    assert q == presentation(2, "XyxYY", "yyxyXX")


def test_substitute_bad_witness():
    p = presentation(2, "XyxYY", "XyxxyXX")
    with pytest.raises(IllegalMove) as info:
        apply_move(p, Substitute(2, w("yyxyXX"), ((1, 1, ()),)))
    assert info.value.reason == "witness"
    with pytest.raises(IllegalMove):
        apply_move(p, Substitute(2, w("yyxyXX"), ((2, -1, ()),)))


def test_add_and_drop():
    p = presentation(2, "xxYYY", "xyxYXY")
    q = apply_move(p, AddGenerator())
    assert q.gen_count == 3 and q.relators[-1] == (3,)
    assert apply_move(q, DropGenerator()) == p
    with pytest.raises(IllegalMove):
        apply_move(p, DropGenerator())
    bad = Presentation(3, (w("xxYYY"), (1, 3), (3,)))
    with pytest.raises(IllegalMove):
        apply_move(bad, DropGenerator())


@pytest.mark.parametrize("move", [RightMultiply(1, 1, 1), RightMultiply(3, 1, 1),
                                  RightMultiply(1, 2, 2), Invert(0), Swap(1, 1)])
def test_illegal_indices(move):
    with pytest.raises(IllegalMove):
        apply_move(STD, move)


def test_automorphism_checks_inverse():
    p = presentation(2, "xxYYY", "xyxYXY")
    q = apply_move(p, Automorphism((w("xy"), w("y")), (w("xY"), w("y"))))
    assert q.relators[0] == normalize(w("xyxyYYY"))
    with pytest.raises(IllegalMove):
        apply_move(p, Automorphism((w("xy"), w("y")), (w("x"), w("y"))))


def test_primitive_finish():
    p = presentation(2, "yXyyXyyX", "xyxYXY")
    assert apply_move(p, PrimitiveFinish(1)) == STD
    with pytest.raises(IllegalMove):
        apply_move(p, PrimitiveFinish(2))


def test_neighbors_of_standard():
    assert len(neighbors(STD, 2)) == 10
    assert neighbors(STD, 0) == []


def test_neighbors_cap_zero_keeps_only_empty_results():
    p = presentation(2, "x", "X")
    out = neighbors(p, 0)
    assert out and all(q.relators[i - 1] == () for m, q in out for i in [m.i])


def test_neighbors_skip_inverting_empty_relator():
    p = Presentation(2, ((1,), ()))
    assert Invert(2) not in [m for m, _ in neighbors(p, 5)]


def test_neighbors_replay():
    p = presentation(2, "xxYYY", "xyxYXY")
    for m, q in neighbors(p, 8):
        assert apply_move(p, m) == q
        assert all(len(r) <= 8 for r in q.relators)


def _random_presentation(rng, n=2, maxlen=6):
    letters = [a for k in range(1, n + 1) for a in (k, -k)]
    return Presentation(n, tuple(normalize(rng.choice(letters) for _ in range(rng.randint(0, maxlen)))
                                 for _ in range(n)))


def _random_move(rng, p):
    i, j = rng.sample(range(1, len(p.relators) + 1), 2)
    s = rng.choice([1, -1])
    c = normalize(rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 4)))
    return rng.choice([RightMultiply(i, j, s), LeftMultiply(i, j, s), Invert(i),
                       Conjugate(i, c), Swap(i, j)])


def test_moves_have_inverses():
    rng = random.Random(11)
    for _ in range(300):
        p = _random_presentation(rng)
        m = _random_move(rng, p)
        q = apply_move(p, m)
        assert apply_move(q, inverse_move(m, p)) == p


def test_elementary_moves_preserve_snf_on_500_samples():
    rng = random.Random(3)
    for _ in range(500):
        p = _random_presentation(rng, n=rng.choice([2, 3]))
        m = _random_move(rng, p)
        q = apply_move(p, m)
        assert smith_normal_form(abelianization_matrix(q)).diagonal == \
            smith_normal_form(abelianization_matrix(p)).diagonal


def test_add_generator_extends_snf():
    p = presentation(2, "xx", "y")
    q = apply_move(p, AddGenerator())
    assert smith_normal_form(abelianization_matrix(q)).diagonal == [1, 1, 2]


def test_key_invariant_moves():
    rng = random.Random(4)
    for _ in range(200):
        p = _random_presentation(rng)
        m = rng.choice([Invert(1), Conjugate(2, w("xY")), Swap(1, 2)])
        assert canonical_key(apply_move(p, m)) == canonical_key(p)


@pytest.mark.parametrize("move", [LeftMultiply(1, 2, -1), Swap(1, 2),
                                  Substitute(2, w("yyxyXX"), ((1, -1, ()),)),
                                  "two-term witness"])
def test_macro_expansion_is_primitive_and_equal(move):
    p = presentation(2, "XyxYY", "XyxxyXX")
    if move == "two-term witness":
        witness = ((1, 1, w("x")), (1, -1, w("yy")))
        move = Substitute(2, multiply(witness_product(p, witness), p.relators[1]), witness)
    target = apply_move(p, move)
    prims = expand_move(p, move)
    assert all(m.kind in {"R", "I", "C"} for m in prims)
    q = p
    for m in prims:
        q = apply_move(q, m)
    assert q == target


def test_parse_move_lines():
    assert parse_move("R 1 2 +", 2) == RightMultiply(1, 2, 1)
    assert parse_move("L 2 1 -", 2) == LeftMultiply(2, 1, -1)
    assert parse_move("C 1 xY", 2) == Conjugate(1, w("xY"))
    assert parse_move("SUB 2 yyxyXX := (1,-,1)", 2) == Substitute(2, w("yyxyXX"), ((1, -1, ()),))
    assert parse_move("AUT xy,y / xY,y", 2) == Automorphism((w("xy"), w("y")), (w("xY"), w("y")))
    assert parse_move("PRIM 1", 2) == PrimitiveFinish(1)
    for bad in ["Q 1", "R 1", "R 1 2 *", "I x"]:
        with pytest.raises(ValueError):
            parse_move(bad, 2)


def test_certificate_round_trip():
    p = presentation(2, "XyxYY", "XyxxyXX")
    steps = [Substitute(2, w("yyxyXX"), ((1, -1, ()),)), Conjugate(1, w("y")), Invert(2)]
    q = p
    for m in steps:
        q = apply_move(q, m)
    cert = Certificate(p, steps, q, comments=["demo"])
    back = parse_certificate(format_certificate(cert))
    assert back.start == p and back.end == q and back.steps == steps
    assert verify_certificate(back).ok


def test_verify_empty_certificate():
    r = verify_certificate(Certificate(STD, [], STD))
    assert r.ok and r.classification == "elementary"


def test_verify_reports_failing_step():
    p = presentation(2, "XyxYY", "XyxxyXX")
    cert = Certificate(p, [Invert(1), Substitute(2, w("yyxyXX"), ((1, -1, ()),))], p)
    r = verify_certificate(cert)
    assert not r.ok and r.failed_step == 2


def test_verify_wrong_end():
    r = verify_certificate(Certificate(STD, [Invert(1)], STD))
    assert not r.ok and r.failed_step is None


def test_prop13_certificate():
    cert = read_certificate(data_path("certs/prop13.cert"))
    r = verify_certificate(cert)
    assert r.ok
    assert [m.kind for _, m in r.macro_steps] == ["SUB"]
    assert "elementary: no (1 substitution macro)" in r.summary_lines()
    assert verify_certificate(cert, expand_macros=True).ok
    # the substitution chain lands on the series (5) member first
    middle = cert.start
    for m in cert.steps[:3]:
        middle = apply_move(middle, m)
    assert middle == presentation(2, "XyyxYYY", "xYXYxy")
    assert canonical_key(cert.end) == canonical_key(STD)


def test_conditional_steps_are_flagged():
    cert = read_certificate(data_path("certs/prop11a.cert"))
    r = verify_certificate(cert)
    assert r.ok and r.classification == "conditional"
    assert [m.kind for _, m in r.semantic_steps] == ["PRIM"]
