import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from dispersim.phase import DispersionParams

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

alphas = st.floats(0.0, 3.0)
betas = st.floats(-2.0, 2.0)
sigmas = st.floats(0.2, 5.0)
phases = st.floats(-math.pi, math.pi)


@st.composite
def dispersion_params(draw, with_phase=True):
    return DispersionParams(draw(alphas), draw(betas), draw(sigmas), draw(phases) if with_phase else 0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.REPORT):
            terminalreporter.write_line(line)
