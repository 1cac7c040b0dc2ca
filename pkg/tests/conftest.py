import pytest

from src.analyzers.bitseq_core import PeriodicSequence
from src.analyzers.error_complexity import SearchBudget
from src.config import get_settings


@pytest.fixture
def fresh_settings(monkeypatch):
    """Settings re-read from an environment the test may patch."""
    get_settings.cache_clear()
    yield monkeypatch
    get_settings.cache_clear()


@pytest.fixture
def budget():
    return SearchBudget(max_patterns=2**20, max_weight=8)


@pytest.fixture
def three_pair_sequence():
    """1 + x + x^3 + x^4 + x^7 + x^8 over period 16: three 1-cubes."""
    return PeriodicSequence.from_positions(4, [0, 1, 3, 4, 7, 8])


@pytest.fixture
def three_cube_sequence():
    """A single 3-cube with edges 1, 2 and 8 over period 16."""
    return PeriodicSequence.from_positions(4, [1, 3, 4, 6, 9, 11, 12, 14])
