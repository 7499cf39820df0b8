import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from char2quartics.algebra import BaseField, MPoly, RatFunc

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def F2t():
    return BaseField.parse("F2(t)")


@pytest.fixture(scope="session")
def F4t():
    return BaseField.parse("F4(t)")


@pytest.fixture(scope="session")
def F2ts():
    return BaseField.parse("F2(t,s)")


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.fixture(scope="session")
def res_S():
    from char2quartics.resolution import resolve
    return resolve("S")


@pytest.fixture(scope="session")
def res_Sprime():
    from char2quartics.resolution import resolve
    return resolve("Sprime")


def polys(K: BaseField, max_deg: int = 4):
    """Strategy for polynomials of K = F_q(t, ...) with degree <= max_deg in each variable."""
    q = 1 << K.F.m
    exps = st.tuples(*[st.integers(0, max_deg)] * K.r)
    return st.dictionaries(exps, st.integers(1, q - 1), max_size=5).map(
        lambda terms: RatFunc(K, MPoly(K.F, K.r, terms), MPoly.const(K.F, K.r, 1)))


def ratfuncs(K: BaseField, max_deg: int = 3):
    return st.tuples(polys(K, max_deg), polys(K, 2)).filter(lambda nd: not nd[1].is_zero()).map(
        lambda nd: nd[0] / nd[1])


def random_transform(variant, K, rng, degree=2):
    """Random transform of the variant's group (eps a nonzero constant times a unit)."""
    from char2quartics.function_fields import random_element
    from char2quartics.isomorphism import Transform
    eps = K.const(rng.randrange(1, 1 << K.F.m))
    if degree == 0:
        el = lambda: K.const(rng.randrange(1 << K.F.m))  # noqa: E731
    else:
        if rng.random() < 0.5 and K.r:
            eps = eps * K.gen(0) ** rng.choice([-1, 1, 2])
        el = lambda: random_element(K, rng, degree)  # noqa: E731
    beta = None if variant == "Q4-ii" else el()
    tau = None if variant in ("G3-i", "Q4-i") else el()
    return Transform(variant, eps, el(), el(), beta, tau)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance
    lines = test_acceptance.summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
