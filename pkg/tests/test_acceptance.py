"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import io
import itertools
import random
import time
from contextlib import contextmanager

import pytest

from acbench import data_path
from acbench.cli import run
from acbench.composition import compose, transport_certificate
from acbench.knot import balance, eliminate_generator, eliminate_labeled, parse_elimination, read_crossings, wirtinger
from acbench.laurent import det2, evans_matrix, ge2_reduce, multiply_factors
from acbench.moves import read_certificate, verify_certificate
from acbench.presentation import Presentation, canonical_key, read_corpus
from acbench.search import SearchLimits, ac_equivalent, enumerate_perfect, shorten, trivialize
from acbench.triviality import is_perfect, smith_normal_form, todd_coxeter
from acbench.words import invert, multiply, normalize, parse_word, substitute

import test_knot
import test_laurent
import test_moves
import test_presentation
import test_triviality
import test_words
from oracles import invariant_factors, presentation

STD2 = canonical_key(Presentation.standard(2))


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def report(n, title):
        t0 = time.perf_counter()
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"\ncriterion {n}: FAIL  {title}")
            raise
        with capsys.disabled():
            print(f"\ncriterion {n}: PASS  {title}  ({time.perf_counter() - t0:.1f}s)")
    return report


def corpus(name):
    return read_corpus(data_path(f"corpora/{name}.pres"))


def test_criterion_1_certificate_replication(criterion):
    with criterion(1, "bundled certificates replay"):
        for name in ["prop11a", "prop11b", "prop11c", "prop11d", "prop13"]:
            t0 = time.perf_counter()
            report = verify_certificate(read_certificate(data_path(f"certs/{name}.cert")))
            assert report.ok, name
            assert canonical_key(report.final) == STD2, name
            assert time.perf_counter() - t0 < 1.0
        t0 = time.perf_counter()
        cert = read_certificate(data_path("certs/prop12.cert"))
        report = verify_certificate(cert)
        assert time.perf_counter() - t0 < 1.0
        assert report.ok
        kinds = {m.kind for m in cert.steps}
        assert {"ADD", "DROP", "AUT"} <= kinds
        assert all(m.kind in ("AUT", "PRIM") for _, m in report.semantic_steps)
        assert report.semantic_steps
        # x^4 = y x^2 y^-1 x^-1 y x^2 y^-1 and y = [x^2, y]^3
        x4 = parse_word("xxxx", "xy")
        rhs = parse_word("yxxYXyxxY", "xy")
        printed = Presentation(2, (multiply(x4, invert(rhs)),
                                   multiply(parse_word("y", "xy"), invert(parse_word("xxyXXY" * 3, "xy")))))
        assert canonical_key(report.final) == canonical_key(printed)
        assert canonical_key(printed) == canonical_key(corpus("prop12_target")[0])


def test_criterion_2_automated_cracking(criterion):
    with criterion(2, "trivialize Prop 1.1 (a), (b), (d) at default limits"):
        limits = SearchLimits()
        assert limits.max_states == 10 ** 7
        for name in ["prop11a", "prop11b", "prop11d"]:
            p = corpus(name)[0]
            res = trivialize(p, limits)
            assert res.found, name
            assert res.seconds < 600
            report = verify_certificate(res.certificate)
            assert report.ok and report.classification == "elementary"
            assert canonical_key(res.certificate.end) == STD2


def test_criterion_3_desk_scale_enumeration(criterion):
    with criterion(3, "every perfect presentation of total length <= 8 trivializes"):
        ps = list(enumerate_perfect(2, 8))
        assert len(ps) == 189
        limits = SearchLimits(max_states=10 ** 6)
        for p in ps:
            res = trivialize(p, limits)
            assert res.found, str(p)
            assert verify_certificate(res.certificate).ok


def test_criterion_4_ak3_exhausts(criterion):
    with criterion(4, "AK(3) search exhausts at default limits (exit 2)"):
        buf = io.StringIO()
        code = run(["search", "corpora/ak3.pres"], buf)
        assert code == 2, buf.getvalue()
        assert "status: exhausted" in buf.getvalue()
        assert "states: " in buf.getvalue()


def test_criterion_5_knot_pipeline(criterion):
    with criterion(5, "Wirtinger, elimination, balancing and shortening"):
        p14 = wirtinger(read_crossings(data_path("fig1.crossings")))
        assert p14.relators == test_knot._printed_relators()
        script = parse_elimination(data_path("fig1.elim").read_text())
        res = eliminate_labeled(p14, script)
        assert res.generator_labels == [5, 7, 12]
        assert canonical_key(res.presentation) == canonical_key(test_knot.PRINTED_3)
        p3 = balance(res.presentation, parse_word("Xyz", "xyz"))
        p2 = eliminate_generator(p3, 2, 3)
        printed25 = presentation(2, "XYxYXyxYYxyXy", "YXyyXYxyxYYx")
        assert sum(len(c) for c in canonical_key(p2)) == 25
        assert canonical_key(p2) == canonical_key(printed25)
        short = shorten(p2, 20)
        assert short.found and short.best_total_length <= 20
        assert short.seconds < 600
        assert verify_certificate(short.certificate).ok


@pytest.mark.slow
def test_criterion_5_stretch_length_14(capsys):
    p2 = corpus("knot25")[0]
    res = ac_equivalent(p2, corpus("knot14")[0])
    with capsys.disabled():
        print(f"\nstretch: length-14 key {'reached' if res.found else 'not reached'}")
    assert res.found
    assert verify_certificate(res.certificate).ok


def test_criterion_6_composition(criterion):
    with criterion(6, "compositions of trivial presentations and certificate transport"):
        ps = corpus("trivial6")
        assert len(ps) == 6
        for p, q in itertools.product(ps, repeat=2):
            c = compose(p, q)
            assert is_perfect(c)
            t = todd_coxeter(c, 100_000)
            if t.complete:
                assert t.order == 1
        section4 = presentation(2, "YxyXX", "XyxYY")
        pairs = [(section4, corpus("example1")[0]), (ps[1], ps[2]), (ps[2], ps[4]),
                 (ps[3], ps[5]), (ps[1], ps[3])]
        for p, q in pairs:
            res = trivialize(p, SearchLimits(max_states=10 ** 6))
            assert res.found
            moved = transport_certificate(res.certificate, q)
            assert verify_certificate(moved).ok
            assert canonical_key(moved.end) == canonical_key(q)


def test_criterion_7_oracle_equivalence(criterion):
    with criterion(7, "SNF, primitivity and Todd-Coxeter against oracles"):
        rng = random.Random(2024)
        for _ in range(200):
            rows, cols = rng.randint(1, 4), rng.randint(1, 4)
            m = [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)]
            assert [v for v in smith_normal_form(m).diagonal if v] == invariant_factors(m)
        test_words.test_primitive_matches_bruteforce_up_to_length_6()
        for name, p, gens in test_triviality.FINITE:
            test_triviality.test_todd_coxeter_matches_permutation_closure(name, p, gens)
        assert todd_coxeter(presentation(1, "xxxxx")).order == 5
        assert todd_coxeter(presentation(2, "xx", "yyy", "xyxy")).order == 6
        assert todd_coxeter(corpus("prop11d")[0]).order == 1
        assert todd_coxeter(corpus("order3")[0]).order == 3


def test_criterion_8_laurent(criterion):
    with criterion(8, "Evans determinant, random GE2 products, Evans gives up"):
        assert det2(evans_matrix()) == 1
        rng = random.Random(2718)
        for _ in range(100):
            m = test_laurent.random_ge2_product(rng, rng.randint(1, 6))
            res = ge2_reduce(m)
            assert res.factored
            assert multiply_factors(res.factors, 2) == m
        assert ge2_reduce(evans_matrix()).status == "gave_up"


def test_criterion_9_invariant_suites(criterion):
    with criterion(9, "key perturbations, SNF under moves, word algebra"):
        test_presentation.test_key_invariant_under_1000_perturbations()
        test_moves.test_elementary_moves_preserve_snf_on_500_samples()
        rng = random.Random(99)

        def word():
            return normalize(rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(0, 10)))

        for _ in range(1000):
            u, v, t = word(), word(), word()
            images = (word(), word())
            assert multiply(multiply(u, v), t) == multiply(u, multiply(v, t))
            assert invert(invert(u)) == u
            assert substitute(multiply(u, v), images) == \
                multiply(substitute(u, images), substitute(v, images))
