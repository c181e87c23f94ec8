import os
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from polyprod.simplicial import SimplicialComplex

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def complexes(draw, min_m=1, max_m=5):
    m = draw(st.integers(min_m, max_m))
    facets = draw(st.lists(st.sets(st.integers(1, m), min_size=1, max_size=m), max_size=5))
    return SimplicialComplex.from_facets([sorted(f) for f in facets], m)


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})")
