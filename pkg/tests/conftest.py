import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def small_corpus():
    """Named polytopes kept small enough for the brute-force oracles."""
    from kalai_lab.corpus import fig2, pi3_clique_polytope, random_lab, random_minimizer, random_unconditional
    from kalai_lab.polytope import cross_polytope, cube

    corpus = {f"cube{d}": cube(d) for d in (1, 2, 3)}
    corpus |= {f"cross{d}": cross_polytope(d) for d in (2, 3)}
    corpus["fig2"] = fig2()
    corpus["pi3"] = pi3_clique_polytope()
    corpus |= {f"unc2_{s}": random_unconditional(2, s) for s in range(3)}
    corpus |= {f"lab2_{s}": random_lab(2, s) for s in range(3)}
    corpus |= {f"lab3_{s}": random_lab(3, s, n_points=1) for s in range(2)}
    corpus |= {f"han3_{s}": random_minimizer(3, s) for s in range(3)}
    return corpus


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
