import pytest
from hypothesis import settings

settings.register_profile("glider", max_examples=40, deadline=None)
settings.load_profile("glider")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive orbit sweeps that take minutes")


@pytest.fixture
def sl234_spec_path():
    from pathlib import Path
    return Path(__file__).resolve().parent.parent / "specs" / "sl234.json"
