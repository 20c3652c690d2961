"""Monochromatic polynomial sumsets: colorings, searches, audits and witnesses.

Structured results are returned as plain dicts and lists matching the JSON
emitted by the ``sumset-ramsey`` command line tool.
"""

import json as _json

from . import _core
from ._core import (
    Coloring,
    SumsetError,
    band_offset,
    bad_set,
    branch_threshold,
    dichotomy,
    find_admissible_a0,
    growth_case,
    max_gap,
    psi,
    verify,
)

__all__ = [
    "Coloring",
    "SumsetError",
    "audit",
    "bad_set",
    "band_offset",
    "branch_threshold",
    "dichotomy",
    "exhaustive_search",
    "find_admissible_a0",
    "gowers_threshold",
    "greedy_search",
    "growth_case",
    "longest_ap",
    "max_gap",
    "psi",
    "return_set",
    "verify",
    "witness",
]


def greedy_search(spec, polys="n,2n", *, N, r=3, maxC=8, max_candidates=0, threads=1, seed=0):
    return _json.loads(_core.search_json(spec, polys, N, r, maxC, max_candidates, threads, seed))


def exhaustive_search(spec, polys="n,2n", *, N, r=2, sizeC=1, seed=0):
    text = _core.exhaustive_json(spec, polys, N, r, sizeC, seed)
    return None if text is None else _json.loads(text)


def audit(spec, polys, n, M, seed=0):
    return _json.loads(_core.audit_json(spec, polys, n, M, seed))


def longest_ap(values):
    return _json.loads(_core.longest_ap_json(list(values)))


def gowers_threshold(k, N):
    return _json.loads(_core.gowers_json(k, N))


def return_set(spec, a, b, h, M, seed=0):
    return _json.loads(_core.return_set_json(spec, a, b, h, M, seed))


def witness(params, check=True):
    """Build a witness from a descriptor such as ``kind=stepI;a=1;b=2;r=2;s=1;t=1;d=10,20``."""
    return _json.loads(_core.witness_json(params, check))
