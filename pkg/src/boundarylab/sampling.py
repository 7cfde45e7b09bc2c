"""Seeded randomness, grids and tolerance policy for every scan.

Substreams are derived by hashing (seed, label) into a Philox key, so a
worker owns its stream regardless of evaluation order and every scan is
a pure function of its inputs plus the configuration.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import linalg
from .errors import ValidationError

_SEED_MIN = -(2**63)
_SEED_MAX = 2**64 - 1


@dataclass(frozen=True)
class ScanConfig:
    """Shared knobs for scans: seed, sample count, tolerances, grids.

    grid_spec maps a parameter name to (min, max, steps).
    """

    seed: int = 0
    n_samples: int = 500
    psd_tol: float = 1e-9
    bisect_depth: int = 40
    grid_spec: dict[str, tuple[float, float, int]] | None = None

    def __post_init__(self):
        if not isinstance(self.seed, int) or not _SEED_MIN <= self.seed <= _SEED_MAX:
            raise ValidationError(f"seed must be a 64-bit integer, got {self.seed!r}")
        if not isinstance(self.n_samples, int) or self.n_samples < 1:
            raise ValidationError(f"n_samples must be a positive integer, got {self.n_samples!r}")
        if not (self.psd_tol >= 0):
            raise ValidationError(f"psd_tol must be nonnegative, got {self.psd_tol!r}")
        if not isinstance(self.bisect_depth, int) or not 10 <= self.bisect_depth <= 60:
            raise ValidationError(
                f"bisect_depth must be an integer in [10, 60], got {self.bisect_depth!r}")
        if self.grid_spec is not None:
            if not self.grid_spec:
                raise ValidationError("grid_spec must be nonempty when given")
            for name, spec in self.grid_spec.items():
                if len(spec) != 3:
                    raise ValidationError(f"grid '{name}' must be (min, max, steps)")
                lo, hi, steps = spec
                if not (np.isfinite(lo) and np.isfinite(hi) and lo <= hi):
                    raise ValidationError(f"grid '{name}' has an empty or infinite range")
                if int(steps) != steps or steps < 1:
                    raise ValidationError(f"grid '{name}' needs a positive integer step count")

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "seed": self.seed,
            "n_samples": self.n_samples,
            "psd_tol": self.psd_tol,
            "bisect_depth": self.bisect_depth,
        }
        if self.grid_spec is not None:
            out["grid"] = {k: list(v) for k, v in self.grid_spec.items()}
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "ScanConfig":
        if not isinstance(obj, dict):
            raise ValidationError("config must be a JSON object")
        known = {"seed", "n_samples", "psd_tol", "bisect_depth", "grid"}
        unknown = set(obj) - known
        if unknown:
            raise ValidationError(f"unknown config fields: {sorted(unknown)}")
        kwargs: dict[str, Any] = {}
        for key in ("seed", "n_samples", "bisect_depth"):
            if key in obj:
                kwargs[key] = obj[key]
        if "psd_tol" in obj:
            kwargs["psd_tol"] = float(obj["psd_tol"])
        if "grid" in obj:
            grid = obj["grid"]
            if not isinstance(grid, dict):
                raise ValidationError("'grid' must be an object of name -> [min, max, steps]")
            kwargs["grid_spec"] = {
                str(k): (float(v[0]), float(v[1]), int(v[2])) for k, v in grid.items()
            }
        return cls(**kwargs)

    def echo(self) -> str:
        """Canonical one-line form for output headers."""
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def stream_key(seed: int, label: str) -> int:
    """128-bit Philox key from (seed, label)."""
    digest = hashlib.sha256(f"{seed}|{label}".encode()).digest()
    return int.from_bytes(digest[:16], "big")


def derive_stream(cfg, label: str) -> np.random.Generator:
    """Independent deterministic substream for (seed, label).

    cfg may be a ScanConfig or a bare integer seed.
    """
    seed = cfg.seed if isinstance(cfg, ScanConfig) else int(cfg)
    return np.random.Generator(np.random.Philox(key=stream_key(seed, label)))


def haar_unitaries(rng: np.random.Generator, d: int, count: int) -> np.ndarray:
    """Stack of Haar-distributed d x d unitaries via QR with phase fix."""
    z = (rng.normal(size=(count, d, d)) + 1j * rng.normal(size=(count, d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.einsum("bii->bi", r)
    q = q * (diag / np.abs(diag))[:, None, :]
    return q


def haar_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    return haar_unitaries(rng, d, 1)[0]


def random_pure_states(rng: np.random.Generator, d: int, count: int) -> np.ndarray:
    """Unit vectors from normalized complex Gaussians, shape (count, d)."""
    z = rng.normal(size=(count, d)) + 1j * rng.normal(size=(count, d))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def random_density(rng: np.random.Generator, d: int) -> np.ndarray:
    """Full-rank-with-probability-one density matrix, Hilbert-Schmidt flavor."""
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_povm(rng: np.random.Generator, d: int, n: int) -> np.ndarray:
    """Random n-outcome POVM on dimension d, shape (n, d, d).

    Wishart effects G_i G_i^dag renormalized by the inverse square root of
    their sum, so the effects are PSD and sum to the identity exactly.
    """
    g = rng.normal(size=(n, d, d)) + 1j * rng.normal(size=(n, d, d))
    effects = np.einsum("nij,nkj->nik", g, np.conj(g))
    total = linalg.hermitian(effects.sum(axis=0))
    w, v = linalg.eigh(total)
    inv_sqrt = (v * (1.0 / np.sqrt(w))) @ v.conj().T
    effects = np.einsum("ij,njk,kl->nil", inv_sqrt, effects, inv_sqrt)
    return (effects + np.conj(np.transpose(effects, (0, 2, 1)))) / 2.0
