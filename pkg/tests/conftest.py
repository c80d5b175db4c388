import numpy as np
import pytest

from finsler_ineq.norms import (
    BerwaldMoor,
    Bimetric,
    DegenerateMinkowski,
    EuclideanP,
    Kropina,
    MinkowskiBilinear,
    PPseudoNorm,
    Stationary,
    WeightedGeometric,
)

DIMS = (2, 3, 5, 8)


def bimetric_h(dim):
    h = -np.eye(dim)
    h[0, 0] = 2.0
    return h


def catalog(dim):
    """One representative of each family at ``dim`` (plus extra exponents where they matter)."""
    specs = [
        MinkowskiBilinear(dim),
        PPseudoNorm(dim, 1.5),
        PPseudoNorm(dim, 2.0),
        PPseudoNorm(dim, 3.0),
        EuclideanP(dim, 2.0),
        EuclideanP(dim, 3.0),
        BerwaldMoor(dim),
        WeightedGeometric(np.arange(1, dim + 1) / (dim * (dim + 1) / 2)),
        Bimetric(bimetric_h(dim)),
        Kropina(dim),
        Stationary(EuclideanP(dim - 1, 2.0)),
        Stationary(EuclideanP(dim - 1, 1.5)),
    ]
    if dim >= 5:
        specs.append(DegenerateMinkowski(dim, 2))
    return specs


def spec_id(spec):
    return f"{spec.family.value}-{spec.dim}-{'-'.join(str(x) for x in spec.params().values())[:30]}"


ALL_SPECS = [s for d in DIMS for s in catalog(d)]


@pytest.fixture(params=ALL_SPECS, ids=spec_id)
def any_spec(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
