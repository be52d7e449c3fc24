"""Composition of balanced presentations and transport of certificates.

``compose(P, Q)`` substitutes the relators of ``Q`` for the generators in
each relator of ``P``.  A certificate taking ``P`` to the standard
presentation becomes one taking ``compose(P, Q)`` to ``Q`` once every
conjugator ``w`` is replaced by its image ``w(S)``.
"""

from __future__ import annotations

from .moves import (
    Certificate,
    Conjugate,
    Substitute,
    expand_move,
    replay,
    verify_certificate,
)
from .presentation import Presentation, canonical_key
from .words import substitute

TRANSPORTABLE = frozenset({"R", "L", "I", "C", "SWAP"})


def _check_pair(p: Presentation, q: Presentation) -> None:
    if p.gen_count != q.gen_count:
        raise ValueError(f"rank mismatch: {p.gen_count} vs {q.gen_count}")
    if not (p.is_balanced and q.is_balanced):
        raise ValueError("composition needs two balanced presentations")


def compose(p: Presentation, q: Presentation) -> Presentation:
    _check_pair(p, q)
    return Presentation(p.gen_count, tuple(substitute(r, q.relators) for r in p.relators))


def compose_power(p: Presentation, k: int) -> Presentation:
    """``P o P o ... o P`` with ``k`` factors."""
    if k < 1:
        raise ValueError("power must be at least 1")
    out = p
    for _ in range(k - 1):
        out = compose(out, p)
    return out


def expand_substitutions(cert: Certificate) -> Certificate:
    """Replace every substitution step by its primitive expansion."""
    steps = []
    p = cert.start
    for m in cert.steps:
        new = expand_move(p, m) if isinstance(m, Substitute) else [m]
        for s in new:
            p = s.apply(p)
            steps.append(s)
    return Certificate(cert.start, steps, p, cert.comments + ["substitutions expanded"])


def transport_certificate(cert: Certificate, q: Presentation) -> Certificate:
    """Certificate from ``compose(cert.start, q)`` to a presentation with
    the canonical key of ``q``."""
    report = verify_certificate(cert)
    if not report.ok:
        raise ValueError(f"certificate does not verify: {report.reason}")
    bad = sorted({m.kind for m in cert.steps} - TRANSPORTABLE)
    if bad:
        raise ValueError(f"cannot transport steps of kind {', '.join(bad)}")
    n = cert.start.gen_count
    if canonical_key(cert.end) != canonical_key(Presentation.standard(n)):
        raise ValueError("certificate does not end at the standard presentation")
    start = compose(cert.start, q)
    steps = [Conjugate(m.i, substitute(m.word, q.relators)) if isinstance(m, Conjugate) else m
             for m in cert.steps]
    end = replay(start, steps)
    return Certificate(start, steps, end, ["transported along composition"])
