import numpy as np
import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--update-goldens",
        action="store_true",
        default=False,
        help="rewrite golden export files instead of comparing",
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


@pytest.fixture(scope="session")
def catalog_specs():
    from virtlab import scenarios

    return scenarios.catalog()


@pytest.fixture(scope="session")
def client():
    from fastapi.testclient import TestClient
    from virtlab.service import create_app

    with TestClient(create_app()) as c:
        yield c
