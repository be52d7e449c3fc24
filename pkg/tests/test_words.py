import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acbench.words import (
    cyclic_reduce,
    exponent_sums,
    format_word,
    invert,
    is_cyclically_reduced,
    is_primitive_rank2,
    multiply,
    normalize,
    parse_word,
    substitute,
)
from oracles import is_primitive_bruteforce, reduced_words

XY = "xy"


def w(text, names=XY):
    return parse_word(text, names)


letters2 = st.sampled_from([1, -1, 2, -2])
raw_words = st.lists(letters2, max_size=12)
words = raw_words.map(normalize)


@pytest.mark.parametrize("raw, expected", [("xX", ""), ("xyYX", ""), ("xxYYYyyx", "xxYx")])
def test_normalize_examples(raw, expected):
    assert normalize(w(raw)) == w(expected)


def test_multiply_examples():
    assert multiply((), w("xyX")) == w("xyX")
    assert multiply(w("x"), w("X")) == ()
    assert multiply(w("xy"), w("Yx")) == w("xx")


def test_invert_examples():
    assert invert(w("x")) == w("X")
    assert invert(w("xyX")) == w("xYX")
    assert invert(()) == ()


@pytest.mark.parametrize("word, conj, core", [("Xyyyx", "X", "yyy"), ("xyX", "x", "y"),
                                              ("xy", "", "xy")])
def test_cyclic_reduce_examples(word, conj, core):
    assert cyclic_reduce(w(word)) == (w(conj), w(core))


def test_substitute_examples():
    assert substitute(w("xy"), (w("x"), w("y"))) == w("xy")
    assert substitute(w("xyX"), (w("y"), w("x"))) == w("yxY")
    assert substitute(w("xxY"), (w("xy"), w("yX"))) == w("xyxyxY")


def test_substitute_rank_mismatch():
    with pytest.raises(ValueError):
        substitute(w("xyz", "xyz"), (w("x"), w("y")))


def test_exponent_sums_examples():
    assert exponent_sums((), 2) == [0, 0]
    assert exponent_sums(w("Xyz", "xyz"), 3) == [-1, 1, 1]
    assert exponent_sums(w("xxYYY"), 2) == [2, -3]


@pytest.mark.parametrize("word, expected", [("x", True), ("xx", False), ("yXyyXyyX", True),
                                            ("yyyyyX", True), ("xyXY", False), ("", False)])
def test_primitive_examples(word, expected):
    assert is_primitive_rank2(w(word)) is expected


def test_word_syntax_round_trip():
    assert parse_word("1 -3 2") == (1, -3, 2)
    assert parse_word("1") == ()
    assert format_word(()) == "1"
    assert format_word(w("xYz", "xyz"), "xyz") == "xYz"
    assert format_word((1, -2), numeric=True) == "1 -2"
    with pytest.raises(ValueError):
        parse_word("xq", XY)


# -- properties -------------------------------------------------------------

@settings(max_examples=1000, deadline=None)
@given(raw_words)
def test_normalize_idempotent_and_reduced(raw):
    r = normalize(raw)
    assert normalize(r) == r
    assert all(a != -b for a, b in zip(r, r[1:]))


@settings(max_examples=1000, deadline=None)
@given(words, words, words)
def test_multiply_associative(u, v, t):
    assert multiply(multiply(u, v), t) == multiply(u, multiply(v, t))
    assert multiply((), u) == u == multiply(u, ())


@settings(max_examples=1000, deadline=None)
@given(words)
def test_invert_involution(u):
    assert invert(invert(u)) == u
    assert multiply(u, invert(u)) == ()


@settings(max_examples=1000, deadline=None)
@given(words)
def test_cyclic_reduce_reassembles(u):
    c, core = cyclic_reduce(u)
    assert multiply(c, core, invert(c)) == u
    assert is_cyclically_reduced(core)


@settings(max_examples=1000, deadline=None)
@given(words, words, st.tuples(words, words))
def test_substitute_homomorphism(u, v, images):
    lhs = substitute(multiply(u, v), images)
    assert lhs == multiply(substitute(u, images), substitute(v, images))


@settings(max_examples=500, deadline=None)
@given(words, words)
def test_exponent_sums_additive(u, v):
    total = exponent_sums(multiply(u, v), 2)
    assert total == [a + b for a, b in zip(exponent_sums(u, 2), exponent_sums(v, 2))]


def test_primitive_matches_bruteforce_up_to_length_6():
    # the oracle only depends on the class of the word under rotation and
    # inversion, so check one representative per class and the rest by
    # invariance of the library answer
    seen = {}
    checked = 0
    for n in range(1, 7):
        for word in reduced_words(2, n):
            rots = {word[k:] + word[:k] for k in range(n)}
            cls = min(rots | {invert(r) for r in rots})
            got = is_primitive_rank2(word)
            if cls not in seen:
                seen[cls] = is_primitive_bruteforce(cls)
            assert got == seen[cls], format_word(word)
            checked += 1
    assert checked == sum(4 * 3 ** (n - 1) for n in range(1, 7))
    assert len(seen) > 100


def test_primitive_bruteforce_sanity():
    for word in ["x", "xy", "xxy", "xyxxy"]:
        assert is_primitive_bruteforce(w(word))
    for word in ["xx", "xyXY", "xxyy"]:
        assert not is_primitive_bruteforce(w(word))


def test_primitive_invariant_under_generator_relabeling():
    for n in range(1, 6):
        for word in itertools.islice(reduced_words(2, n), 200):
            swapped = substitute(word, (w("y"), w("x")))
            assert is_primitive_rank2(word) == is_primitive_rank2(swapped)
