"""Poset representations of groups.

Group descriptors follow the C++ library: ``z:9``, ``z2^k:3``, ``s:3``,
``d:4``, ``q8``, ``sl2:13``. Element lists are comma-separated strings such as
``"0,1,3"``. Report-producing functions return plain dicts decoded from the
same JSON the command-line tool writes.
"""

import json

from . import _core
from ._core import (
    CapExceeded,
    Error,
    InvalidArgument,
    NotEnumerable,
    ParseError,
    count_cyclically_reduced,
    hasse_dot,
    is_cayley_representation,
    margulis_bound,
    neighborhood_tree_dot,
    repro_ids,
    sample_few_relators,
)

__version__ = _core.version.split()[-1]


def girth(group, gens, limit=24):
    return json.loads(_core.girth(group, gens, limit))


def classify(group, s):
    return json.loads(_core.classify(group, s))


def search(group, prune=True, max_order=16):
    return json.loads(_core.search(group, prune, max_order))


def certify(group, gens, girth_limit=22):
    return json.loads(_core.certify(group, gens, girth_limit))


def certify_margulis(p):
    return json.loads(_core.certify_margulis(p))


def check_c16(presentation, lam="1/6"):
    return json.loads(_core.check_c16(presentation, lam))


def extend(kind, group, s, psi="id", window=3):
    return json.loads(_core.extend(kind, group, s, psi, window))


def repro(id, n_max=20, seed=7, samples=200, threads=1):
    return json.loads(_core.repro(id, n_max, seed, samples, threads))


__all__ = [
    "CapExceeded",
    "Error",
    "InvalidArgument",
    "NotEnumerable",
    "ParseError",
    "certify",
    "certify_margulis",
    "check_c16",
    "classify",
    "count_cyclically_reduced",
    "extend",
    "girth",
    "hasse_dot",
    "is_cayley_representation",
    "margulis_bound",
    "neighborhood_tree_dot",
    "repro",
    "repro_ids",
    "sample_few_relators",
    "search",
]
