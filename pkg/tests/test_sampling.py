"""Config plumbing and seeded sampling determinism."""

import numpy as np
import pytest

from boundarylab import linalg
from boundarylab.errors import ValidationError
from boundarylab.sampling import (
    ScanConfig,
    derive_stream,
    haar_unitaries,
    random_density,
    random_povm,
    random_pure_states,
)


def test_config_defaults_and_validation():
    cfg = ScanConfig()
    assert cfg.seed == 0 and cfg.n_samples == 500
    assert cfg.psd_tol == 1e-9 and cfg.bisect_depth == 40
    with pytest.raises(ValidationError):
        ScanConfig(seed=-(2**63) - 1)
    with pytest.raises(ValidationError):
        ScanConfig(seed=2**64)
    with pytest.raises(ValidationError):
        ScanConfig(n_samples=0)
    with pytest.raises(ValidationError):
        ScanConfig(bisect_depth=5)
    with pytest.raises(ValidationError):
        ScanConfig(psd_tol=-1e-9)
    with pytest.raises(ValidationError):
        ScanConfig(grid_spec={})
    with pytest.raises(ValidationError):
        ScanConfig(grid_spec={"q": (1.0, 0.0, 5)})


def test_config_json_roundtrip_rejects_unknown():
    cfg = ScanConfig(seed=9, n_samples=7, grid_spec={"q": (0.0, 1.0, 3)})
    back = ScanConfig.from_json(cfg.to_json())
    assert back == cfg
    with pytest.raises(ValidationError, match="unknown"):
        ScanConfig.from_json({"seed": 1, "sample_count": 5})
    # echo is canonical: stable key order, compact separators
    assert ScanConfig(seed=3).echo() == (
        '{"bisect_depth":40,"n_samples":500,"psd_tol":1e-09,"seed":3}')


def test_derive_stream_determinism_and_separation():
    a1 = derive_stream(7, "unitaries").random(100)
    a2 = derive_stream(7, "unitaries").random(100)
    b = derive_stream(7, "states").random(100)
    c = derive_stream(8, "unitaries").random(100)
    assert (a1 == a2).all()
    assert not (a1 == b).all()
    assert not (a1 == c).all()
    # accepts a ScanConfig in place of the raw seed
    d = derive_stream(ScanConfig(seed=7), "unitaries").random(100)
    assert (a1 == d).all()


def test_haar_unitaries_are_unitary():
    rng = derive_stream(3, "test-haar")
    us = haar_unitaries(rng, 3, 20)
    assert us.shape == (20, 3, 3)
    eye = np.eye(3)
    for u in us:
        assert np.abs(u @ u.conj().T - eye).max() < 1e-12


def test_random_states_and_povms_are_valid():
    rng = derive_stream(5, "test-states")
    psis = random_pure_states(rng, 4, 10)
    assert np.abs(np.linalg.norm(psis, axis=1) - 1.0).max() < 1e-12
    rho = random_density(rng, 3)
    assert abs(np.trace(rho).real - 1.0) < 1e-12
    assert linalg.is_psd(rho)
    effects = random_povm(rng, 3, 4)
    assert effects.shape == (4, 3, 3)
    assert np.abs(effects.sum(axis=0) - np.eye(3)).max() < 1e-10
    assert linalg.are_psd(effects).all()
