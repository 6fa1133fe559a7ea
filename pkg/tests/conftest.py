from __future__ import annotations

import pytest

from sextic_strata.fields import GF, QQ


@pytest.fixture(scope="session")
def f101():
    return GF(101)


@pytest.fixture(scope="session")
def f3():
    return GF(3)


@pytest.fixture(scope="session")
def f2():
    return GF(2)


@pytest.fixture(scope="session")
def qq():
    return QQ
