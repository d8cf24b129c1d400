import pytest

from proofkit.calculus import builtin
from proofkit.prover import ProverCache


@pytest.fixture(scope="session")
def g3cp():
    return builtin("G3cp")


@pytest.fixture(scope="session")
def g3ip():
    return builtin("G3ip")


@pytest.fixture(scope="session")
def g4ip():
    return builtin("G4ip")


@pytest.fixture(scope="session")
def g1cp():
    return builtin("G1cp")


@pytest.fixture(scope="session")
def g1ip():
    return builtin("G1ip")


@pytest.fixture(scope="session")
def caches():
    """One shared prover cache per calculus, reused across a session."""
    store = {}

    def get(calc):
        if calc.name not in store:
            store[calc.name] = ProverCache(calc)
        return store[calc.name]

    return get
