import random

import pytest

from acbench import data_path
from acbench.presentation import Presentation, abelianization_matrix, read_corpus
from acbench.triviality import determinant, is_perfect, matmul, smith_normal_form, todd_coxeter
from oracles import closure_order, invariant_factors, leibniz_det, perm_word, presentation


def _check_snf(m):
    res = smith_normal_form(m)
    rows, cols = len(m), len(m[0])
    assert matmul(matmul(res.left_transform, m), res.right_transform) == \
        res.diagonal_matrix(rows, cols)
    assert abs(determinant(res.left_transform)) == 1
    assert abs(determinant(res.right_transform)) == 1
    d = res.diagonal
    assert all(v >= 0 for v in d)
    for a, b in zip(d, d[1:]):
        assert (b == 0) if a == 0 else b % a == 0
    return res


@pytest.mark.parametrize("m, diag", [([[1, 0], [0, 1]], [1, 1]), ([[0, -1], [-1, 0]], [1, 1]),
                                     ([[2, 0], [0, 3]], [1, 6]), ([[0, 0], [0, 0]], [0, 0]),
                                     ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12])])
def test_snf_examples(m, diag):
    assert _check_snf(m).diagonal == diag


def test_snf_matches_minor_oracle_on_200_matrices():
    rng = random.Random(2024)
    for _ in range(200):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        m = [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)]
        res = _check_snf(m)
        assert [v for v in res.diagonal if v] == invariant_factors(m), m


def test_determinant_matches_leibniz():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 4)
        m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        assert determinant(m) == leibniz_det(m)


def test_is_perfect_examples():
    assert is_perfect(read_corpus(data_path("corpora/example1.pres"))[0])
    assert is_perfect(Presentation.standard(2))
    assert not is_perfect(presentation(2, "xx", "y"))
    assert not is_perfect(presentation(2, "x"))


# name, presentation, permutation generators realizing it
def _q8():
    # regular representation of the quaternion units; index = 4 * sign + unit
    table = {(0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
             (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
             (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
             (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0)}

    def right_mult(unit):
        perm = []
        for idx in range(8):
            s, u = divmod(idx, 4)
            t, v = table[(u, unit)]
            perm.append(4 * ((s + t) % 2) + v)
        return tuple(perm)

    return right_mult(1), right_mult(2)


FINITE = [
    ("C5", presentation(1, "xxxxx"), [(1, 2, 3, 4, 0)]),
    ("C6", presentation(2, "xx", "yyy", "xyXY"), [(1, 0, 2, 3, 4), (0, 1, 3, 4, 2)]),
    ("S3", presentation(2, "xx", "yyy", "xyxy"), [(1, 0, 2), (1, 2, 0)]),
    ("V4", presentation(2, "xx", "yy", "xyXY"), [(1, 0, 3, 2), (2, 3, 0, 1)]),
    ("D4", presentation(2, "xxxx", "yy", "xyxy"), [(1, 2, 3, 0), (0, 3, 2, 1)]),
    ("Q8", presentation(2, "xxxx", "xxYY", "Yxyx"), list(_q8())),
    ("A4", presentation(2, "xx", "yyy", "xyxyxy"), [(1, 0, 3, 2), (1, 2, 0, 3)]),
    ("S4", presentation(2, "xx", "yyy", "xyxyxyxy"), [(1, 0, 2, 3), (0, 2, 3, 1)]),
    ("trivial", presentation(2, "x", "y"), [(0,), (0,)]),
]


@pytest.mark.parametrize("name, p, gens", FINITE, ids=[f[0] for f in FINITE])
def test_todd_coxeter_matches_permutation_closure(name, p, gens):
    ident = tuple(range(len(gens[0])))
    for r in p.relators:
        assert perm_word(r, gens) == ident
    t = todd_coxeter(p)
    assert t.complete
    assert t.order == closure_order(gens)
    assert t.order <= 24


def test_todd_coxeter_table_is_consistent():
    t = todd_coxeter(presentation(2, "xx", "yyy", "xyxy"))
    gens = []
    for k in range(2):
        col = tuple(row[2 * k] for row in t.rows)
        inv = tuple(row[2 * k + 1] for row in t.rows)
        assert sorted(col) == list(range(6))
        assert all(inv[col[c]] == c for c in range(6))
        gens.append(col)
    ident = tuple(range(6))
    for r in presentation(2, "xx", "yyy", "xyxy").relators:
        assert perm_word(r, gens) == ident


def test_todd_coxeter_spec_examples():
    assert todd_coxeter(presentation(1, "xxxxx")).order == 5
    assert todd_coxeter(read_corpus(data_path("corpora/prop11d.pres"))[0]).order == 1
    assert todd_coxeter(presentation(2, "xx", "yyy", "xyxy")).order == 6


def test_printed_order_120_presentation_has_order_3():
    p = read_corpus(data_path("corpora/order3.pres"))[0]
    assert p == presentation(2, "yxyXX", "xyxXXXX")
    assert abs(determinant(abelianization_matrix(p))) == 3
    assert todd_coxeter(p).order == 3


def test_todd_coxeter_exhausts_on_infinite_group():
    t = todd_coxeter(presentation(2, "xyXY"), max_cosets=500)
    assert not t.complete
    assert t.order is None
    assert t.status == "exhausted"


def test_todd_coxeter_result_independent_of_budget():
    p = presentation(2, "xx", "yyy", "xyxyxyxy")
    assert {todd_coxeter(p, m).order for m in (200, 1000, 100000)} == {24}


def test_todd_coxeter_rejects_bad_budget():
    with pytest.raises(ValueError):
        todd_coxeter(presentation(1, "x"), 0)
