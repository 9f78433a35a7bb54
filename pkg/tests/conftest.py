import pytest

from simpkit.catalog import BUNDLED_PATH, load_catalog
from simpkit.complex import from_facets, simplex_boundary
from simpkit.constructions import k3_surface, rp2_6, torus_7


@pytest.fixture(scope="session")
def k3():
    return k3_surface()


@pytest.fixture(scope="session")
def catalog():
    return load_catalog(BUNDLED_PATH)


@pytest.fixture(scope="session")
def corpus(catalog):
    """Every catalog complex small enough for exhaustive checks, freshly built."""
    out = []
    for e in catalog:
        if len(e.facets) <= 120:
            out.append(from_facets(e.facets, e.name))
    return out


@pytest.fixture(scope="session")
def sphere_corpus(corpus):
    from simpkit.homology import homology
    from simpkit.complex import is_pseudomanifold

    out = []
    for K in corpus:
        H = homology(K)
        if K.dim >= 1 and is_pseudomanifold(K) and all(
                g.torsion == () and g.rank == (1 if k == K.dim else 0) for k, g in enumerate(H)):
            out.append(K)
    return out


@pytest.fixture
def rp2():
    return rp2_6()


@pytest.fixture
def torus():
    return torus_7()


@pytest.fixture
def tetra():
    return simplex_boundary(2)


_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_report():
    """Record (and print) one PASS/FAIL line per acceptance criterion."""
    def record(number, ok, what):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {what}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
