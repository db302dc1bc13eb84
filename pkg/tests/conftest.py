import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: longer end-to-end computations")
