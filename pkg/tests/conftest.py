import numpy as np
import pytest

from mcsynth import su2core


def random_off_diag(rng) -> su2core.RealOffDiagForm:
    z = complex(rng.normal(), rng.normal())
    return su2core.RealOffDiagForm.normalized(z, rng.normal())


def random_main_diag(rng) -> np.ndarray:
    return su2core.H @ random_off_diag(rng).matrix() @ su2core.H


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
