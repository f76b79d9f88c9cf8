import numpy as np
import pytest

from qspectra import I, J, K, Quaternion, SliceFrame, STANDARD_FRAME
from qspectra import generate as gen


def assert_qclose(a: Quaternion, b: Quaternion, tol: float = 1e-12):
    assert abs(a - b) <= tol, f"{a} != {b} (|diff| = {abs(a - b):.3e})"


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture(
    params=[
        STANDARD_FRAME,
        SliceFrame.from_m(J),
        SliceFrame.from_m((I + J) / abs(I + J)),
        SliceFrame.from_m((I + 2 * J - K) / abs(I + 2 * J - K)),
    ],
    ids=["i", "j", "i+j", "skew"],
)
def frame(request):
    return request.param


@pytest.fixture
def random_frames():
    r = np.random.default_rng(7)
    return [gen.random_frame(r) for _ in range(6)]
