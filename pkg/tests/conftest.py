import pytest
from hypothesis import HealthCheck, settings

from idemmat.matrices import Matrix
from idemmat.rings import GF, ZZ, UniPoly

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(number, ok, detail)``."""
    log = request.config.stash[_ACCEPTANCE]

    def record(number, ok, detail):
        log.append((number, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_ACCEPTANCE, [])
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(log, key=lambda t: t[0]):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


# Worked examples: a 4x4 integer idempotent and its F_2[x] counterpart,
# each with the blocks A, B, C, D such that E = [[CA, CB], [DA, DB]].

@pytest.fixture
def z_blocks():
    mk = lambda rows: Matrix.from_rows(ZZ, rows)
    return dict(
        A=mk([[3, -1], [0, 0]]), B=mk([[0, 0], [-3, 7]]),
        C=mk([[2, 1], [5, 3]]), D=mk([[7, -5], [3, -2]]),
    )


@pytest.fixture
def z_example():
    return Matrix.from_rows(ZZ, [
        [6, -2, -3, 7],
        [15, -5, -9, 21],
        [21, -7, 15, -35],
        [9, -3, 6, -14],
    ])


F2X = UniPoly(GF(2))


@pytest.fixture
def f2x_blocks():
    mk = lambda rows: Matrix.from_rows(F2X, rows)
    return dict(
        A=mk([["x^2", "x^2+x+1"], [0, 0]]),
        B=mk([[0, 0], ["x^3+x+1", "x+1"]]),
        C=mk([["x", "x^2+x+1"], ["x+1", "x^2"]]),
        D=mk([["x+1", 1], ["x^3+x+1", "x^2+x"]]),
    )


@pytest.fixture
def f2x_example():
    return Matrix.from_rows(F2X, [
        ["x^3", "x^3+x^2+x", "x^5+x^4+1", "x^3+1"],
        ["x^3+x^2", "x^3+1", "x^5+x^3+x^2", "x^3+x^2"],
        ["x^3+x^2", "x^3+1", "x^3+x+1", "x+1"],
        ["x^5+x^3+x^2", "x^5+x^4+1", "x^5+x^4+x^3+x", "x^3+x"],
    ])
