"""Time-dependent control signals for drivers and clock zones.

Times are in units of hbar/E_k; values are dimensionless (polarizations for
drivers, transverse-field strengths for clocks).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

# Slack allowed on the domain check so that integrator stage times which land
# a few ulps past t_f are not rejected.
_DOMAIN_SLACK = 1e-9


class ScheduleRangeError(ValueError):
    """Raised when a schedule is evaluated outside its time domain."""


def _check_domain(t: float, start: float, stop: float) -> float:
    slack = _DOMAIN_SLACK * max(1.0, abs(stop - start))
    if t < start - slack or t > stop + slack:
        raise ScheduleRangeError(f"t={t!r} outside schedule domain [{start}, {stop}]")
    return min(max(t, start), stop)


def _check_domain_array(ts, start: float, stop: float) -> np.ndarray:
    ts = np.asarray(ts, dtype=float)
    slack = _DOMAIN_SLACK * max(1.0, abs(stop - start))
    if ts.size and (ts.min() < start - slack or ts.max() > stop + slack):
        raise ScheduleRangeError(f"times outside schedule domain [{start}, {stop}]")
    return np.clip(ts, start, stop)


@dataclass(frozen=True)
class CosineSwitch:
    """Smooth switch from ``p0`` at t=0 to ``p1`` at t=t_f.

    With ``(p0, p1) = (1, -1)`` this is ``cos(pi t / t_f)``.
    """

    p0: float
    p1: float
    t_f: float

    def __post_init__(self):
        if not self.t_f > 0:
            raise ValueError(f"t_f must be positive, got {self.t_f}")

    def value(self, t: float) -> float:
        t = _check_domain(t, 0.0, self.t_f)
        if t == 0.0:
            return float(self.p0)
        if t == self.t_f:
            return float(self.p1)
        c = math.cos(math.pi * t / self.t_f)
        return self.p0 * (1.0 + c) / 2.0 + self.p1 * (1.0 - c) / 2.0

    def values(self, ts: np.ndarray) -> np.ndarray:
        ts = _check_domain_array(ts, 0.0, self.t_f)
        c = np.cos(np.pi * ts / self.t_f)
        out = self.p0 * (1.0 + c) / 2.0 + self.p1 * (1.0 - c) / 2.0
        out[ts == 0.0] = self.p0
        out[ts == self.t_f] = self.p1
        return out


@dataclass(frozen=True)
class SineRamp:
    """Clock signal ``gamma_max * sin(pi t / t_f)``; zero (latched) at both ends."""

    gamma_max: float
    t_f: float

    def __post_init__(self):
        if not self.t_f > 0:
            raise ValueError(f"t_f must be positive, got {self.t_f}")

    def value(self, t: float) -> float:
        t = _check_domain(t, 0.0, self.t_f)
        if t == 0.0 or t == self.t_f:
            return 0.0
        return self.gamma_max * math.sin(math.pi * t / self.t_f)

    def values(self, ts: np.ndarray) -> np.ndarray:
        ts = _check_domain_array(ts, 0.0, self.t_f)
        out = self.gamma_max * np.sin(np.pi * ts / self.t_f)
        out[(ts == 0.0) | (ts == self.t_f)] = 0.0
        return out


@dataclass(frozen=True)
class Constant:
    v: float

    @property
    def t_f(self) -> None:
        return None

    def value(self, t: float) -> float:
        return float(self.v)

    def values(self, ts: np.ndarray) -> np.ndarray:
        return np.full(np.shape(ts), float(self.v))


@dataclass(frozen=True)
class PiecewiseLinear:
    """Linear interpolation through ``points``, a tuple of ``(t, v)`` pairs."""

    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        pts = tuple((float(t), float(v)) for t, v in self.points)
        if len(pts) < 2:
            raise ValueError("PiecewiseLinear needs at least two points")
        if any(b[0] <= a[0] for a, b in zip(pts, pts[1:])):
            raise ValueError("PiecewiseLinear times must be strictly increasing")
        object.__setattr__(self, "points", pts)

    @property
    def t_f(self) -> float:
        return self.points[-1][0]

    def value(self, t: float) -> float:
        pts = self.points
        t = _check_domain(t, pts[0][0], pts[-1][0])
        for (t0, v0), (t1, v1) in zip(pts, pts[1:]):
            if t <= t1:
                if t == t1:
                    return v1
                return v0 + (v1 - v0) * (t - t0) / (t1 - t0)
        return pts[-1][1]

    def values(self, ts: np.ndarray) -> np.ndarray:
        pts = np.array(self.points)
        ts = _check_domain_array(ts, pts[0, 0], pts[-1, 0])
        return np.interp(ts, pts[:, 0], pts[:, 1])


Schedule = Union[CosineSwitch, SineRamp, Constant, PiecewiseLinear]


def evaluate_schedule(s: Schedule, t: float) -> float:
    """Value of schedule ``s`` at time ``t``.

    Raises
    ------
    ScheduleRangeError
        If ``t`` lies outside the schedule's domain (``Constant`` has none).
    """
    return s.value(t)


def evaluate_schedule_many(s: Schedule, ts) -> np.ndarray:
    """Vectorized :func:`evaluate_schedule` over an array of times."""
    return s.values(np.asarray(ts, dtype=float))
