"""
Pytest configuration and fixtures for the Grassmannian toolkit tests
"""

import gc
import os
import signal
import sys
from pathlib import Path

import pytest

# Add src to path
src_path = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(src_path))

# Set test environment variables before importing modules
os.environ.setdefault("GRASS_LOG_LEVEL", "WARNING")
os.environ.setdefault("GRASS_JOBS", "1")


def timeout_handler(signum, frame):
    """Handler for test timeout"""
    raise TimeoutError("Test exceeded 60 second timeout - possible runaway enumeration")


@pytest.fixture(autouse=True)
def test_timeout_and_cleanup(request):
    """Timeout protection for fast tests; sweeps marked slow run unbounded"""
    bounded = request.node.get_closest_marker("slow") is None and hasattr(signal, "SIGALRM")
    if bounded:
        signal.signal(signal.SIGALRM, timeout_handler)
        signal.alarm(60)

    yield

    if bounded:
        signal.alarm(0)
    gc.collect()


@pytest.fixture(autouse=True)
def reset_environment():
    """Reset environment before each test"""
    original_env = os.environ.copy()

    yield

    os.environ.clear()
    os.environ.update(original_env)


@pytest.fixture
def test_config():
    """Create a test configuration"""
    from src.utils.config import Config

    config = Config()
    config.log_level = "WARNING"
    config.default_jobs = 1
    config.enable_caching = True
    config.rewrite_budget_factor = 1
    config.max_n = 12
    return config


@pytest.fixture
def gr36():
    """Context (n, k) of Gr(3,6)"""
    return (6, 3)


@pytest.fixture
def gr24():
    """Context (n, k) of Gr(2,4)"""
    return (4, 2)


@pytest.fixture
def d36():
    """Build a diagram of Y_{6,3} from its rows"""
    from src.diagrams import make

    def _make(*rows):
        rows = list(rows) + [0] * (3 - len(rows))
        return make(6, 3, rows)

    return _make


@pytest.fixture
def small_contexts():
    """All (n, k) with 2 <= n <= 6"""
    return [(n, k) for n in range(2, 7) for k in range(1, n)]
