import random

import pytest
from hypothesis import strategies as st

from monoseq.perms import Permutation


@st.composite
def permutations_st(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    values = draw(st.permutations(list(range(1, n + 1))))
    return Permutation(tuple(values))


@pytest.fixture
def rng():
    return random.Random(20240811)


def random_permutation(rng, n):
    vals = list(range(1, n + 1))
    rng.shuffle(vals)
    return Permutation(tuple(vals))
