import pytest

from dynbench.challenge import GenerationConfig, generate_pack
from dynbench.systems import SystemId

# Shrunk horizons keep the unit-test packs fast; the acceptance suite uses
# full-size packs.
SMALL_CFG = GenerationConfig(train_samples=160, burn_in_samples=12)


@pytest.fixture(scope="session")
def lorenz_pack():
    return generate_pack(SystemId.LORENZ, seed=1234, cfg=SMALL_CFG)


@pytest.fixture(scope="session")
def ks_pack():
    return generate_pack(SystemId.KURAMOTO_SIVASHINSKY, seed=99, cfg=SMALL_CFG)
