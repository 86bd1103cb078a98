"""Shared fixtures and hypothesis settings for the suite.

Trellis and constellation are pure values, built once per session. The
hypothesis profile drops the per-example deadline because the first call
into a jitted kernel pays compilation latency.
"""

import numpy as np
import pytest
from hypothesis import settings

from bicmid import codec, modem

settings.register_profile("suite", deadline=None, derandomize=True)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def trellis():
    return codec.build_trellis(codec.CodeConfig())


@pytest.fixture(scope="session")
def constellation():
    return modem.build_8psk_sp()


@pytest.fixture()
def rng():
    return np.random.default_rng(1234)
