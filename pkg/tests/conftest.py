import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from solvlie.constructions import random_solvable
from solvlie.exactlin import FieldSpec

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("SOLVLIE_HYPOTHESIS_EXAMPLES", "40")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

F2, F3, F5 = FieldSpec(2), FieldSpec(3), FieldSpec(5)


@st.composite
def small_algebras(draw, max_dim: int = 4, primes=(2, 3)):
    p = draw(st.sampled_from(primes))
    n = draw(st.integers(min_value=1, max_value=max_dim))
    stages = draw(st.integers(min_value=0, max_value=3))
    seed = draw(st.integers(min_value=0, max_value=10 ** 6))
    return random_solvable(FieldSpec(p), n, stages=stages, seed=seed)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
