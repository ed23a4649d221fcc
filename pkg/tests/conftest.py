from __future__ import annotations

import pytest

from kcert.delpezzo import K2_CHART, K3_CHART
from kcert.functional import build_bundle, restrict_diagonal


@pytest.fixture(scope="session")
def bundle_k2():
    return build_bundle(K2_CHART)


@pytest.fixture(scope="session")
def bundle_k3():
    return build_bundle(K3_CHART)


@pytest.fixture(scope="session")
def diagonal():
    return restrict_diagonal()
