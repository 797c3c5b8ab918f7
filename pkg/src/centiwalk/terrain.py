"""Rugose block-terrain generation and height-difference statistics.

A terrain is a grid of square blocks whose heights, along the travel
direction, follow an independent random walk per column with Gaussian
increments of standard deviation sigma = 15 * rugosity (cm).  The same
increment distribution backs the analytic loss models through
HeightDeltaModel, either in closed form (gaussian) or as an empirical
sample (e.g. outdoor terrain measurements).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

SIGMA_PER_RUGOSITY = 15.0  # cm of height-difference std per unit rugosity

_FILE_FORMAT_VERSION = 1


def sigma_from_rugosity(r_g: float) -> float:
    """Height-difference standard deviation in cm for a rugosity level."""
    return SIGMA_PER_RUGOSITY * r_g


@dataclass
class TerrainGrid:
    """Rectangular grid of block heights; rows advance along the travel
    direction."""

    block_size: float
    heights: np.ndarray
    r_g: float
    sigma: float
    seed: int

    def __post_init__(self):
        self.heights = np.asarray(self.heights, dtype=float)
        if self.heights.ndim != 2:
            raise ValueError("heights must be a 2-D array")
        if abs(self.sigma - sigma_from_rugosity(self.r_g)) > 1e-9:
            raise ValueError("sigma must equal 15 * r_g")

    @property
    def rows(self) -> int:
        return self.heights.shape[0]

    @property
    def cols(self) -> int:
        return self.heights.shape[1]

    def longitudinal_deltas(self) -> np.ndarray:
        """All successive height differences along the travel direction."""
        return np.diff(self.heights, axis=0).ravel()

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(f"# terrain v{_FILE_FORMAT_VERSION}\n")
            fh.write(f"# block_size={self.block_size:.6f}\n")
            fh.write(f"# r_g={self.r_g:.6f}\n")
            fh.write(f"# seed={self.seed}\n")
            fh.write(f"# rows={self.rows} cols={self.cols}\n")
            for row in self.heights:
                fh.write(",".join(f"{h:.6f}" for h in row) + "\n")

    @classmethod
    def load(cls, path) -> "TerrainGrid":
        meta = {}
        rows = []
        with open(path) as fh:
            first = fh.readline()
            if not first.startswith("# terrain v"):
                raise ValueError(f"not a terrain file: {path}")
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    for part in line[1:].split():
                        if "=" in part:
                            k, v = part.split("=", 1)
                            meta[k] = v
                    continue
                rows.append([float(x) for x in line.split(",")])
        r_g = float(meta["r_g"])
        return cls(
            block_size=float(meta["block_size"]),
            heights=np.array(rows),
            r_g=r_g,
            sigma=sigma_from_rugosity(r_g),
            seed=int(meta.get("seed", 0)),
        )


def generate_terrain(r_g: float, rows: int, cols: int, block_size: float = 10.0,
                     seed: int = 0, lateral_smoothing: bool = False) -> TerrainGrid:
    """Generate a block terrain of the requested rugosity.

    Each column is an independent random walk along the travel direction
    with N(0, 15*r_g) increments; deterministic for a fixed seed.  The
    optional lateral smoothing pass averages neighbouring columns (off by
    default so the longitudinal marginal stays exact).
    """
    if not math.isfinite(r_g) or r_g < 0.0:
        raise ValueError(f"r_g must be finite and >= 0, got {r_g}")
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    sigma = sigma_from_rugosity(r_g)
    rng = np.random.default_rng(seed)
    increments = rng.normal(0.0, sigma, size=(rows - 1, cols)) if rows > 1 \
        else np.zeros((0, cols))
    heights = np.vstack([np.zeros((1, cols)), np.cumsum(increments, axis=0)])
    if lateral_smoothing and cols > 1:
        kernel = np.array([0.25, 0.5, 0.25])
        padded = np.pad(heights, ((0, 0), (1, 1)), mode="edge")
        heights = (kernel[0] * padded[:, :-2] + kernel[1] * padded[:, 1:-1]
                   + kernel[2] * padded[:, 2:])
    return TerrainGrid(block_size=block_size, heights=heights, r_g=r_g,
                       sigma=sigma, seed=seed)


@dataclass
class HeightDeltaModel:
    """Distribution of the block height difference dH = H(next) - H(current).

    kind is "gaussian" (zero-mean, std sigma) or "empirical" (a sample of
    observed differences, e.g. from outdoor terrain).  p1 is Pr(dH <= 0).
    """

    kind: str = "gaussian"
    sigma: float = 0.0
    samples: Optional[np.ndarray] = None
    p1: float = field(init=False)

    def __post_init__(self):
        if self.kind == "gaussian":
            if self.sigma < 0.0:
                raise ValueError("sigma must be >= 0")
            self.p1 = 0.5
        elif self.kind == "empirical":
            if self.samples is None or len(self.samples) == 0:
                raise ValueError("empirical model requires a non-empty sample")
            self.samples = np.asarray(self.samples, dtype=float)
            self.p1 = float(np.mean(self.samples <= 0.0))
        else:
            raise ValueError(f"unknown model kind {self.kind!r}")

    @classmethod
    def from_rugosity(cls, r_g: float) -> "HeightDeltaModel":
        return cls(kind="gaussian", sigma=sigma_from_rugosity(r_g))

    @classmethod
    def from_samples(cls, samples) -> "HeightDeltaModel":
        return cls(kind="empirical", sigma=0.0, samples=np.asarray(samples))


def _norm_cdf(x: float) -> float:
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


def sample_dh(model: HeightDeltaModel, rng, size: Optional[int] = None):
    """Draw height differences from the model (scalar or array of `size`)."""
    if isinstance(rng, int):
        rng = np.random.default_rng(rng)
    if model.kind == "gaussian":
        if model.sigma == 0.0:
            return 0.0 if size is None else np.zeros(size)
        return rng.normal(0.0, model.sigma, size=size)
    return rng.choice(model.samples, size=size)


def tail_probability(model: HeightDeltaModel, threshold: float,
                     conditioned: str) -> float:
    """Conditional tail probability of the height-difference magnitude.

    conditioned = "dh_nonpositive": Pr(|dH| > threshold | dH <= 0), the
    terrain-drop case; "dh_positive": Pr(dH > threshold | dH > 0), the
    terrain-rise case.  Closed form for the gaussian kind, an empirical
    fraction otherwise.  threshold <= 0 yields 1 by convention (every
    conditioning event exceeds it).
    """
    if conditioned not in ("dh_nonpositive", "dh_positive"):
        raise ValueError(f"unknown conditioning {conditioned!r}")
    if model.kind == "gaussian":
        if model.sigma == 0.0:
            # degenerate: dH is identically 0, so no strict exceedance
            return 0.0
        if threshold <= 0.0:
            return 1.0
        # both conditional tails reduce to the same form by symmetry
        return 2.0 * _norm_cdf(-threshold / model.sigma)
    if threshold <= 0.0:
        return 1.0
    s = model.samples
    if conditioned == "dh_nonpositive":
        cond = s[s <= 0.0]
        if len(cond) == 0:
            return 0.0
        return float(np.mean(-cond > threshold))
    cond = s[s > 0.0]
    if len(cond) == 0:
        return 0.0
    return float(np.mean(cond > threshold))
