import numpy as np
import pytest

from qpecost import FieldParams, VmfParams, field_channel, vmf_channel

import helpers


@pytest.fixture(scope="session")
def field_ch_300():
    """Noisy-field channel at the standard operating point (300 photons, g=2.5)."""
    return field_channel(FieldParams(300.0, 2.5))


@pytest.fixture(scope="session")
def field_series_300():
    return helpers.field_series(300.0, 2.5)


@pytest.fixture(scope="session")
def vmf_ch_50():
    return vmf_channel(VmfParams(50.0, 0.5))


@pytest.fixture(scope="session")
def vmf_series_50():
    return helpers.vmf_series(50.0, 0.5)


@pytest.fixture()
def rng():
    return np.random.default_rng(2718)
