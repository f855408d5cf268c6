import random

import pytest
from hypothesis import settings, strategies as st

from zzpers.linalg import IntMatrix
from zzpers.persmod import PersModule
from zzpers.poset import parse_shape_spec

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def int_matrices(draw, max_dim=5, bound=9, rows=None, cols=None):
    r = draw(st.integers(0, max_dim)) if rows is None else rows
    c = draw(st.integers(0, max_dim)) if cols is None else cols
    data = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                         min_size=r, max_size=r))
    return IntMatrix(r, c, data)


def mat(rows, cols=None):
    return IntMatrix.from_rows(rows, cols=cols)


def module(spec, ranks, *edges):
    shape = parse_shape_spec(spec)
    es = []
    for k, e in enumerate(edges, start=1):
        src, tgt = shape.edge(k)
        if e is None or e == []:
            es.append(IntMatrix.zeros(ranks[tgt - 1], ranks[src - 1]))
        else:
            es.append(IntMatrix.from_rows(e))
    return PersModule(shape, tuple(ranks), tuple(es))


@pytest.fixture
def rng():
    return random.Random(12345)
