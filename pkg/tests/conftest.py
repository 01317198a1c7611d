import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from drcopt.problem import case_study_instance


@pytest.fixture(scope="session")
def case_study():
    return case_study_instance()


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
