"""Foot-tip geometry derived from the gait waves.

Everything here is planar or scalar kinematics: the slipping trajectory of a
stance foot (for the slip-angle distribution), the retraction profile
(rearward travel, vertical reach and lift of the foot over one stance), the
deformation-recovery height, and the flat-terrain contact ratio.  No
dynamics are involved; the body is assumed to advance at the gait's ideal
flat-ground speed so that stance feet slip backward.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gait import GaitConfig, TWO_PI


@dataclass(frozen=True)
class RobotGeometry:
    """Physical dimensions and force-model constants.

    Lengths are cm.  h_l is the maximum depth below the current ground
    surface the foot can reach with no vertical wave; h_l2 the distal link
    length governing deformation recovery; d_l the horizontal offset from
    the body pitch joint to the foot.  mu, f_w, v_open and c_fv parameterize
    the friction/speed model; only ratios of them enter the predictions.
    """

    h_l: float = 7.0
    h_l2: float = 4.0
    d_l: float = 9.0
    module_length: float = 10.0
    leg_length: float = 10.0
    mu: float = 0.3
    f_w: float = 1.0
    v_open: float = 1.0
    c_fv: float = 1.0

    def __post_init__(self):
        for name in ("h_l", "h_l2", "d_l", "module_length", "leg_length"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.mu <= 0.0 or self.f_w <= 0.0 or self.v_open <= 0.0:
            raise ValueError("mu, f_w and v_open must all be > 0")


@dataclass
class SlipDistribution:
    """Discretized distribution of slip angles over [-180, 180] degrees.

    bin_centers are the angles beta_i, probs the arc-length-weighted
    probability mass per bin.
    """

    bin_centers: np.ndarray
    probs: np.ndarray
    bin_count: int

    def __post_init__(self):
        self.bin_centers = np.asarray(self.bin_centers, dtype=float)
        self.probs = np.asarray(self.probs, dtype=float)
        if len(self.bin_centers) != self.bin_count or len(self.probs) != self.bin_count:
            raise ValueError("bin arrays must match bin_count")
        if np.any(self.probs < 0.0):
            raise ValueError("probabilities must be non-negative")
        if abs(self.probs.sum() - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {self.probs.sum()}, not 1")
        if np.any(np.diff(self.bin_centers) <= 0.0):
            raise ValueError("bin centers must be strictly increasing")

    def to_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("beta_deg,prob\n")
            for b, p in zip(self.bin_centers, self.probs):
                fh.write(f"{b:.6f},{p:.9f}\n")


@dataclass
class RetractionProfile:
    """Per-sample geometry over one retraction (stance) period.

    times   phase samples in seconds (one cycle is 1 s)
    d_s     cumulative rearward foot displacement since stance onset, cm
    lift    signed vertical foot offset from the vertical wave, cm
            (positive = foot raised above the nominal ground plane)
    reach   maximum depth below the current surface the foot can reach, cm
    """

    times: np.ndarray
    d_s: np.ndarray
    lift: np.ndarray
    reach: np.ndarray


def flat_ground_stride(cfg: GaitConfig, geom: RobotGeometry) -> float:
    """Forward distance per gait cycle on flat ground, cm.

    Equals the net rearward sweep of a stance foot in the body frame, so the
    body advance exactly cancels the foot slip over one cycle.
    """
    return 2.0 * geom.leg_length * math.sin(math.radians(cfg.theta_leg_amp))


def _stance_kinematics(cfg: GaitConfig, geom: RobotGeometry, leg: int,
                       steps: int) -> np.ndarray:
    """World-frame foot positions of a left leg over its stance, shape (steps, 2).

    The leg is parameterized by its own reduced phase, so every leg traces
    the same shape; the absolute stance-onset time and the shoulder's
    longitudinal station only translate it.
    """
    if not 1 <= leg <= cfg.n_pairs:
        raise IndexError(f"leg index {leg} out of range 1..{cfg.n_pairs}")
    off = cfg.contact_fraction_offset
    lag = cfg.xi * (leg - 1) / cfg.n_pairs
    u = cfg.duty * np.arange(steps) / steps          # reduced phase in [0, D)
    t = (lag - off) + u                              # absolute time, cycle units
    theta_leg = np.radians(cfg.theta_leg_amp) * np.cos(np.pi * u / cfg.duty)
    theta_body = np.radians(cfg.theta_body_amp) * np.cos(TWO_PI * (u - off))
    v = flat_ground_stride(cfg, geom)                # per cycle of unit duration
    x_sh = v * t - (leg - 1) * geom.module_length
    y_sh = 0.5 * geom.module_length * np.sin(theta_body)
    x = x_sh + geom.leg_length * np.sin(theta_leg)
    y = y_sh + geom.leg_length * np.cos(theta_leg)
    return np.column_stack([x, y])


def foot_trajectory(cfg: GaitConfig, geom: RobotGeometry, leg: int,
                    steps: int) -> np.ndarray:
    """Ground-frame slipping trajectory of a stance foot, shape (steps, 2) cm."""
    if steps < 8:
        raise ValueError(f"steps must be >= 8, got {steps}")
    return _stance_kinematics(cfg, geom, leg, steps)


def slip_distribution(cfg: GaitConfig, geom: RobotGeometry, bins: int,
                      steps: int = 4096) -> SlipDistribution:
    """Arc-length-weighted histogram of slip angles along the stance path.

    The slip angle is measured between the friction (anti-slip) direction
    and the robot's forward axis, so predominantly rearward slip yields
    angles near zero.  Invariant across legs by construction.
    """
    if bins < 8:
        raise ValueError(f"bins must be >= 8, got {bins}")
    path = foot_trajectory(cfg, geom, 1, steps)
    delta = np.diff(path, axis=0)
    seg_len = np.hypot(delta[:, 0], delta[:, 1])
    total = seg_len.sum()
    if total <= 0.0:
        raise ValueError("degenerate foot trajectory: no slip motion")
    # friction opposes slip: thrust direction is minus the velocity
    phi = np.degrees(np.arctan2(-delta[:, 1], -delta[:, 0]))
    edges = np.linspace(-180.0, 180.0, bins + 1)
    hist, _ = np.histogram(phi, bins=edges, weights=seg_len)
    probs = hist / total
    probs = probs / probs.sum()
    centers = 0.5 * (edges[:-1] + edges[1:])
    return SlipDistribution(bin_centers=centers, probs=probs, bin_count=bins)


def _vertical_angle(cfg: GaitConfig, u: np.ndarray) -> np.ndarray:
    """Body pitch angle (radians) at the module carrying a leg whose reduced
    stance phase is u.  The vertical wave runs at twice the gait frequency,
    so one stance spans a full up-down oscillation."""
    off = cfg.contact_fraction_offset
    return np.radians(cfg.a_v) * np.cos(2.0 * TWO_PI * (u - off))


def stance_geometry(cfg: GaitConfig, geom: RobotGeometry, u) -> tuple:
    """(d_s, reach, lift) arrays at reduced stance phases u in [0, duty)."""
    u = np.asarray(u, dtype=float)
    amp = math.radians(cfg.theta_leg_amp)
    theta_leg = amp * np.cos(np.pi * u / cfg.duty)
    d_s = geom.leg_length * (math.sin(amp) - np.sin(theta_leg))
    theta_v = _vertical_angle(cfg, u)
    reach = geom.d_l * np.sin(theta_v) + geom.h_l * np.cos(theta_v)
    lift = geom.h_l - reach
    return d_s, reach, lift


def retraction_profile(cfg: GaitConfig, geom: RobotGeometry,
                       m: int) -> RetractionProfile:
    """Sample d_s, reach and lift at m uniform points over one stance."""
    if m < 4:
        raise ValueError(f"m must be >= 4, got {m}")
    u = cfg.duty * np.arange(m) / m
    times = np.asarray(u, dtype=float)               # one cycle is 1 s
    d_s, reach, lift = stance_geometry(cfg, geom, u)
    return RetractionProfile(times=times, d_s=d_s, lift=lift, reach=reach)


def recoverable_height(geom: RobotGeometry, d_s: float) -> float:
    """Maximum terrain rise the leg can recover by retracting a distance d_s.

    Saturates at h_l2 once the distal link is vertical (d_s >= h_l2).
    """
    if d_s < 0.0:
        raise ValueError(f"d_s must be >= 0, got {d_s}")
    ratio = min(d_s, geom.h_l2) / geom.h_l2
    return geom.h_l2 * (1.0 - math.cos(math.asin(ratio)))


def recoverable_heights(geom: RobotGeometry, d_s: Sequence[float]) -> np.ndarray:
    """Vectorized recoverable_height."""
    ratio = np.minimum(np.asarray(d_s, dtype=float), geom.h_l2) / geom.h_l2
    return geom.h_l2 * (1.0 - np.cos(np.arcsin(ratio)))


def ideal_gamma(cfg: GaitConfig, geom: RobotGeometry, m: int) -> float:
    """Contact ratio over one cycle on perfectly flat terrain.

    The fraction of retraction samples where the vertical wave has not
    raised the foot above the nominal ground plane.  Exactly 1 at a_v = 0.
    """
    prof = retraction_profile(cfg, geom, m)
    return float(np.mean(prof.lift <= 1e-12))
