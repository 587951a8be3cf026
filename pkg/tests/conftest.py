"""Shared corpus fixtures: reference arcs and their derived systems.

Builds are cached per session because several test modules sweep the same
arcs; everything returned is treated as immutable by the tests.
"""

from functools import lru_cache

import pytest

from arcforms.field import make_field
from arcforms.geometry import normal_rational_curve
from arcforms.tangents import build_tangent_system
from arcforms.tensorform import build_tensor_form

# (q, p, h, k): conics over q in {4,5,7,8,9}, twisted cubics over {5,7,8}
CONIC_FIELDS = [(4, 2, 2), (5, 5, 1), (7, 7, 1), (8, 2, 3), (9, 3, 2)]
CUBIC_FIELDS = [(5, 5, 1), (7, 7, 1), (8, 2, 3)]

CORPUS = [(q, p, h, 3) for q, p, h in CONIC_FIELDS] + [
    (q, p, h, 4) for q, p, h in CUBIC_FIELDS
]


@lru_cache(maxsize=None)
def field(q):
    p, h = next((p, h) for qq, p, h in set(CONIC_FIELDS + CUBIC_FIELDS) if qq == q)
    return make_field(p, h)


@lru_cache(maxsize=None)
def corpus_arc(q, k):
    return normal_rational_curve(field(q), k)


@lru_cache(maxsize=None)
def corpus_system(q, k):
    arc = corpus_arc(q, k)
    return arc, build_tangent_system(arc)


@lru_cache(maxsize=None)
def corpus_tensor(q, k):
    arc, ts = corpus_system(q, k)
    return arc, ts, build_tensor_form(arc, ts)


@pytest.fixture
def gf5():
    return field(5)


@pytest.fixture
def gf7():
    return field(7)


@pytest.fixture
def gf4():
    return field(4)
