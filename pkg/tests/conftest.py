import numpy as np
import pytest

from scripts.crystal_optics import CrystalConfig
from scripts.pump_shaping import PumpConfig
from scripts.schmidt import GridSpec

THETA_NONCOLLINEAR_DEG = 28.71


@pytest.fixture(autouse=True)
def _isolated_logs(tmp_path, monkeypatch):
    monkeypatch.setenv("OAM_SPDC_LOG_DIR", str(tmp_path / "logs"))
    monkeypatch.setenv("OAM_SPDC_THREADS", "1")


@pytest.fixture
def crystal():
    return CrystalConfig.from_lab_units(10.0, THETA_NONCOLLINEAR_DEG)


@pytest.fixture
def gaussian_pump():
    return PumpConfig.from_lab_units(405.0, 320.0, [1.0])


@pytest.fixture
def shaped_pump():
    return PumpConfig.from_lab_units(405.0, 320.0, [0.7, -0.3 + 0.2j, 0.1 - 0.4j])


@pytest.fixture
def small_grids():
    """Cheap grid good for |l| <= 32."""
    return GridSpec(radial_nodes=32, angular_samples=128)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
