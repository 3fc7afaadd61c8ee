import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from paretoscope import problems


@pytest.fixture(scope="session")
def toy():
    return problems.toy_simplex()


@pytest.fixture(scope="session")
def mimo():
    return problems.get_problem("mimo_case_study")
