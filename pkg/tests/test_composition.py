import itertools
import random

import pytest

from acbench import data_path
from acbench.composition import (
    compose,
    compose_power,
    expand_substitutions,
    transport_certificate,
)
from acbench.moves import Certificate, Conjugate, Invert, RightMultiply, read_certificate, verify_certificate
from acbench.presentation import Presentation, canonical_key, read_corpus
from acbench.search import SearchLimits, trivialize
from acbench.triviality import is_perfect, todd_coxeter
from acbench.words import normalize, parse_word, substitute
from oracles import presentation

STD = Presentation.standard(2)
EX1 = presentation(2, "XyyxYYY", "YxxyXXX")
SECTION4 = presentation(2, "YxyXX", "XyxYY")


def trivial6():
    return read_corpus(data_path("corpora/trivial6.pres"))


def _random_pres(rng):
    return Presentation(2, tuple(normalize(rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(1, 5)))
                                 for _ in range(2)))


def test_identities():
    rng = random.Random(0)
    for _ in range(50):
        p = _random_pres(rng)
        assert compose(STD, p) == p
        assert compose(p, STD) == p


def test_associative_letter_for_letter():
    rng = random.Random(1)
    for _ in range(100):
        p, q, t = (_random_pres(rng) for _ in range(3))
        assert compose(compose(p, q), t) == compose(p, compose(q, t))


def test_section4_example():
    out = compose(SECTION4, EX1)
    r, s = EX1.relators
    assert out.relators == (substitute(SECTION4.relators[0], (r, s)),
                            substitute(SECTION4.relators[1], (r, s)))
    assert is_perfect(out)


def test_compose_shape_errors():
    with pytest.raises(ValueError):
        compose(STD, Presentation.standard(3))
    with pytest.raises(ValueError):
        compose(presentation(2, "x"), STD)


def test_compose_power():
    assert compose_power(SECTION4, 1) == SECTION4
    assert compose_power(SECTION4, 3) == compose(SECTION4, compose(SECTION4, SECTION4))
    with pytest.raises(ValueError):
        compose_power(SECTION4, 0)


def test_bundled_trivial_pairs():
    ps = trivial6()
    assert len(ps) == 6
    for p, q in itertools.product(ps, repeat=2):
        c = compose(p, q)
        assert is_perfect(c)
        t = todd_coxeter(c, 100_000)
        if t.complete:
            assert t.order == 1


def test_transport_empty_and_single_conjugation():
    q = EX1
    empty = transport_certificate(Certificate(STD, [], STD), q)
    assert empty.start == q and empty.steps == []
    p = presentation(2, "xyxYX", "y")
    cert = Certificate(p, [Conjugate(1, parse_word("YX", "xy"))], STD)
    assert verify_certificate(cert).ok
    out = transport_certificate(cert, q)
    assert out.steps == [Conjugate(1, substitute(parse_word("YX", "xy"), q.relators))]
    assert verify_certificate(out).ok


def test_transport_section4_example():
    res = trivialize(SECTION4)
    assert res.found
    out = transport_certificate(res.certificate, EX1)
    assert out.start == compose(SECTION4, EX1)
    assert verify_certificate(out).ok
    assert canonical_key(out.end) == canonical_key(EX1)


def test_transport_five_pairs():
    ps = trivial6()
    pairs = [(ps[1], ps[2]), (ps[1], ps[3]), (ps[2], ps[4]), (ps[3], ps[5]), (SECTION4, ps[4])]
    for p, q in pairs:
        res = trivialize(p, SearchLimits(max_states=10 ** 6))
        assert res.found
        out = transport_certificate(res.certificate, q)
        assert verify_certificate(out).ok
        assert canonical_key(out.end) == canonical_key(q)


def test_transport_rejects_conditional_steps():
    cert = read_certificate(data_path("certs/prop11a.cert"))
    with pytest.raises(ValueError):
        transport_certificate(cert, EX1)


def test_transport_after_expanding_substitutions():
    cert = read_certificate(data_path("certs/prop13.cert"))
    with pytest.raises(ValueError):
        transport_certificate(cert, EX1)
    expanded = expand_substitutions(cert)
    assert verify_certificate(expanded).ok
    assert all(m.kind != "SUB" for m in expanded.steps)
    assert expanded.end == cert.end
    out = transport_certificate(expanded, EX1)
    assert verify_certificate(out).ok
    assert canonical_key(out.end) == canonical_key(EX1)


def test_transport_rejects_cert_not_ending_at_standard():
    p = presentation(2, "x", "y")
    cert = Certificate(p, [RightMultiply(1, 2, 1), Invert(2)], presentation(2, "xy", "Y"))
    with pytest.raises(ValueError):
        transport_certificate(cert, EX1)
