import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from spinlink.lattice import GramLattice
from spinlink.oracles import random_even_lattice

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def even_lattices(draw, max_rank=3, bound=6, max_disc=64):
    """Even nondegenerate Gram matrices with a small discriminant group."""
    seed = draw(st.integers(0, 2**32 - 1))
    rank = draw(st.integers(1, max_rank))
    return random_even_lattice(random.Random(seed), rank, bound, max_disc)


@st.composite
def group_orders(draw, max_factors=3, max_order=12):
    return draw(st.lists(st.integers(1, max_order), min_size=0, max_size=max_factors))


@pytest.fixture
def toric_lattice():
    return GramLattice(((0, 2), (2, 0)))


def pytest_terminal_summary(terminalreporter):
    acceptance = __import__("sys").modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(acceptance.RESULTS, key=int):
        terminalreporter.write_line(acceptance.RESULTS[key])
