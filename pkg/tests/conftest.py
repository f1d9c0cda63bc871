import random

import pytest


def pytest_addoption(parser):
    parser.addoption("--rng-seed", type=int, default=20240611,
                     help="seed for every randomized test helper")


@pytest.fixture
def seed(request):
    return request.config.getoption("--rng-seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)
