"""Workbench for Andrews-Curtis equivalence of balanced presentations."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .moves import Certificate, verify_certificate
from .presentation import Presentation, canonical_key, parse_presentation
from .search import SearchLimits, ac_equivalent, enumerate_perfect, shorten, trivialize
from .triviality import is_perfect, smith_normal_form, todd_coxeter
from .words import Word, parse_word

__version__ = "0.1.0"


def data_path(name: str = "") -> Path:
    """Path of a bundled data file, e.g. ``data_path("certs/prop13.cert")``."""
    return Path(str(resources.files("acbench") / "data")) / name


__all__ = [
    "Certificate", "Presentation", "SearchLimits", "Word", "ac_equivalent", "canonical_key",
    "data_path", "enumerate_perfect", "is_perfect", "parse_presentation", "parse_word",
    "shorten", "smith_normal_form", "todd_coxeter", "trivialize", "verify_certificate",
]
