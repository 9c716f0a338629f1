import sys

import pytest

from tropint.tropical import infer_n_vars, parse_tropical_polynomial

F_TEXT = "-62x + 97x^2 + -73y^2 + -4x^3y + -83x^2y^2 + -10y^4"
G_TEXT = "-10x^2y + 31x^3y + -51xy^3 + 77y^4 + 95x^2y^3 + y^5"


def polys(*texts, n=None):
    n = n or infer_n_vars(texts)
    return [parse_tropical_polynomial(t, n) for t in texts]


@pytest.fixture
def curve_f():
    return parse_tropical_polynomial(F_TEXT, 2)


@pytest.fixture
def curve_g():
    return parse_tropical_polynomial(G_TEXT, 2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
