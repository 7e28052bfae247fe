import random
from fractions import Fraction

import sympy

from fcmono.scalars import ExactField


def sympy_symbols(m):
    return sympy.symbols("alpha beta " + " ".join(f"g{k}" for k in range(1, m + 1)))


def random_values(rng: random.Random, m: int):
    return [Fraction(rng.randint(2, 30), rng.randint(1, 7)) for _ in range(m + 2)]


def exact_at(s, values):
    """Evaluate an exact scalar at rational generator values."""
    return s.evaluate(values)


def matrix_at(M, values):
    return sympy.Matrix([[sympy.Rational(exact_at(x, values)) for x in row] for row in M.rows])


def exact_field(m):
    return ExactField(m)


# one pass/fail line per acceptance criterion ------------------------------

_CRITERIA = {}


def _criterion(nodeid):
    if "test_acceptance.py::test_criterion_" not in nodeid:
        return None
    return int(nodeid.split("test_criterion_")[1].split("_")[0])


def pytest_runtest_logreport(report):
    n = _criterion(report.nodeid)
    if n is None:
        return
    if report.when == "call" or report.outcome != "passed":
        ok = report.outcome == "passed"
        _CRITERIA[n] = _CRITERIA.get(n, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    from test_acceptance import TITLES
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if _CRITERIA[n] else 'FAIL'}  {TITLES[n]}")
