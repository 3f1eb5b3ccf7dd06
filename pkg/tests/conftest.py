import pytest

from triality.algebra import full_matrix, truncated_polynomial, upper_triangular
from triality.catalog import trian_preset


@pytest.fixture(scope="session")
def T2():
    return upper_triangular(2)


@pytest.fixture(scope="session")
def M2():
    return full_matrix(2)


@pytest.fixture(scope="session")
def Dual1():
    return truncated_polynomial(2)


@pytest.fixture(scope="session")
def trian_t2():
    return trian_preset("trian-T2T2T2").algebra


@pytest.fixture(scope="session")
def trian_dual():
    return trian_preset("trian-Dual1").algebra


@pytest.fixture(scope="session")
def trian_q():
    return trian_preset("trian-QQQ").algebra


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
