import os

import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from toroham.torus_quad import TorusParams

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])


def all_params(max_vertices: int, min_n: int = 1):
    for m in range(1, max_vertices + 1):
        for n in range(min_n, max_vertices // m + 1):
            for q in range(n):
                yield TorusParams(m, n, q)


@st.composite
def simple_bipartite_params(draw, max_vertices: int = 120):
    """Simple bipartite Q(m,n;q): n even and m = q (mod 2)."""
    m = draw(st.integers(1, max_vertices // 4))
    n = 2 * draw(st.integers(2, max(2, max_vertices // (2 * m))))
    q = draw(st.integers(0, n - 1).filter(lambda x: (x - m) % 2 == 0))
    p = TorusParams(m, n, q)
    assume(p.simple)
    return p


@pytest.fixture(scope="session")
def q1083():
    return TorusParams(10, 8, 2)


@pytest.fixture(scope="session")
def q183():
    return TorusParams(1, 8, 3)
