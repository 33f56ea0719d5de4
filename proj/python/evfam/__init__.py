"""Eventual families, set limits and the almost-cyclic sequential algorithm.

Specs (families, multifamilies, topologies, set sequences, problems) are
plain dicts in the same JSON schema the ``evfam`` command line tool reads.
Extended naturals come back as ``int`` or ``math.inf``.
"""

import json as _json

from ._evfam import EPSet, InputError, NumericalError, Trace
from . import _evfam

__all__ = [
    "EPSet",
    "InputError",
    "NumericalError",
    "Trace",
    "analyze",
    "classical_limits",
    "classify",
    "cogap_limit_estimate",
    "contains",
    "e_limit",
    "limit_set",
    "mf_value",
    "multiset_limit",
    "solve",
    "star",
]


def _dump(spec):
    return spec if isinstance(spec, str) else _json.dumps(spec)


def _inf(value):
    return float("inf") if value == "inf" else value


def classify(family, budget=1000, seed=0):
    """Eventual / co-eventual / filter / finitely-insensitive verdicts."""
    return _json.loads(_evfam._classify(_dump(family), budget, seed))


def contains(family, s):
    """S in F. ``s`` is an EPSet (or its text form) or a list of names."""
    return _evfam._family_contains(_dump(family), s)


def star(family):
    return _evfam._star(_dump(family))


def limit_set(family, topology):
    return _evfam._limit_set(_dump(family), _dump(topology))


def e_limit(family, sequence):
    return _evfam._e_limit(_dump(family), _dump(sequence))


def classical_limits(sequence):
    return _evfam._classical_limits(_dump(sequence))


def mf_value(multifamily, s):
    return _evfam._mf_value(_dump(multifamily), s)


def multiset_limit(multifamily, topology):
    """Multiplicity per element name."""
    m = _json.loads(_evfam._multiset_limit(_dump(multifamily), _dump(topology)))
    return {name: _inf(v) for name, v in m.items()}


def solve(problem):
    """Runs ACSA on a problem dict; returns a Trace."""
    return _evfam._solve(_dump(problem))


def analyze(trace, problem, eps=None, window=None, strict=False, n0=None, tol=None):
    """Returns (status, report) with status certified|inconclusive|violation."""
    status, report = _evfam._analyze(trace, _dump(problem), list(eps or []), window, strict, n0, tol)
    return status, _json.loads(report)


def cogap_limit_estimate(points, eps=None, n0=None):
    """points: array of shape (N, J) or a 1-D sequence of scalars."""
    import numpy as np

    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    if n0 is None:
        n0 = len(pts) // 2
    return _json.loads(_evfam._cogap_limit_estimate(pts, list(eps or []), n0))
