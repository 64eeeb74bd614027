import sys
from pathlib import Path

import mpmath
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ineqprove import Precision

# Assertion arithmetic in the tests runs at a generous ambient precision;
# the library itself manages its own working contexts.
mpmath.mp.dps = 60


@pytest.fixture(scope="session")
def p50():
    return Precision(50)


@pytest.fixture(scope="session")
def p35():
    return Precision(35)


@pytest.fixture(scope="session")
def p30():
    return Precision(30)
