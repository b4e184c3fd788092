from __future__ import annotations

import pytest

from asymapprox.numeric import get_context


@pytest.fixture(scope="session")
def ctx60():
    return get_context(60)


@pytest.fixture(scope="session")
def ctx30():
    return get_context(30)
