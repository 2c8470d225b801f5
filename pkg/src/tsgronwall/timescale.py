"""Finite windows of concrete time scales and their one-variable calculus.

A scale is kept as the finite, strictly increasing window of points its
generating rule produces: arithmetic steps, geometric q-steps, an
explicit sequence of positive increments, or a uniform float sample
standing in for a real interval. Sampled windows only approximate the
continuum and are flagged as such; the other kinds are exact.

Everything follows the half-open convention: integrals and exponentials
run over [a, b), so the graininess at the window maximum is never
needed. The forward jump at the maximum returns the point itself; the
maximum is simply never right of anything inside the window.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import (
    MaximumPoint,
    NegativeFactorWarning,
    NotRegressive,
    PointNotInScale,
)
from .numeric import Mode, Scalar, one, require_mode, to_mode, zero

INTEGERS = "integers"
QSCALE = "qscale"
SEQUENCE = "sequence"
SAMPLE = "sample"


@dataclass(frozen=True)
class TimeScale:
    """A finite window of a time scale.

    Build instances through the classmethods below; the raw constructor
    only checks the window shape (at least two strictly increasing
    points, all in the declared numeric mode).
    """

    kind: str
    points: tuple[Scalar, ...]
    mode: Mode = Mode.EXACT
    increments: Optional[tuple[Scalar, ...]] = None

    def __post_init__(self):
        if len(self.points) < 2:
            raise ValueError("a scale window needs at least two points")
        for left, right in zip(self.points, self.points[1:]):
            if not right > left:
                raise ValueError("window points must be strictly increasing")
        for point in self.points:
            require_mode(point, self.mode, "window point")
        object.__setattr__(self, "_index_of", {p: i for i, p in enumerate(self.points)})

    @classmethod
    def integers(cls, start, stop, step=1, mode: Mode = Mode.EXACT) -> "TimeScale":
        """Arithmetic window start, start+step, ... not exceeding stop."""
        step_v = to_mode(step, mode)
        start_v = to_mode(start, mode)
        stop_v = to_mode(stop, mode)
        if step_v <= 0:
            raise ValueError("step must be positive")
        points = []
        k = 0
        while True:
            p = start_v + k * step_v
            if p > stop_v:
                break
            points.append(p)
            k += 1
        return cls(INTEGERS, tuple(points), mode)

    @classmethod
    def qscale(cls, q, t0, k_max: int, mode: Mode = Mode.EXACT) -> "TimeScale":
        """Geometric window t0 * q**k for k = 0..k_max; needs q > 1, t0 > 0."""
        q_v = to_mode(q, mode)
        t0_v = to_mode(t0, mode)
        if not q_v > 1:
            raise ValueError("q must exceed 1")
        if not t0_v > 0:
            raise ValueError("t0 must be positive")
        if k_max < 1:
            raise ValueError("k_max must be at least 1 (two points)")
        points = tuple(t0_v * q_v**k for k in range(k_max + 1))
        return cls(QSCALE, points, mode)

    @classmethod
    def sequence(cls, t0, increments, mode: Mode = Mode.EXACT) -> "TimeScale":
        """Window t0, t0+a1, t0+a1+a2, ... from positive increments a_k."""
        t0_v = to_mode(t0, mode)
        incs = tuple(to_mode(a, mode) for a in increments)
        if not incs:
            raise ValueError("need at least one increment")
        if any(a <= 0 for a in incs):
            raise ValueError("increments must all be positive")
        points = [t0_v]
        for a in incs:
            points.append(points[-1] + a)
        return cls(SEQUENCE, tuple(points), mode, increments=incs)

    @classmethod
    def sample(cls, left, step, count: int) -> "TimeScale":
        """Uniform float64 sample left + k*step for k = 0..count-1.

        A sample only approximates a real interval; whatever is computed
        on it carries an approximate flag downstream.
        """
        left_v = float(left)
        step_v = float(step)
        if step_v <= 0:
            raise ValueError("step must be positive")
        if count < 2:
            raise ValueError("need at least two points")
        points = tuple(left_v + k * step_v for k in range(count))
        return cls(SAMPLE, points, Mode.FLOAT)

    @property
    def approximate(self) -> bool:
        return self.kind == SAMPLE

    @property
    def is_discrete(self) -> bool:
        return self.kind != SAMPLE

    @property
    def start(self) -> Scalar:
        return self.points[0]

    @property
    def end(self) -> Scalar:
        return self.points[-1]

    def __len__(self) -> int:
        return len(self.points)

    def index(self, t: Scalar) -> int:
        try:
            return self._index_of[t]
        except (KeyError, TypeError):
            raise PointNotInScale(
                f"{t!r} is not a window point of this {self.kind} scale"
            ) from None

    def sigma(self, t: Scalar) -> Scalar:
        """Forward jump: the smallest window point past t, or t itself at
        the window maximum."""
        i = self.index(t)
        if i + 1 == len(self.points):
            return t
        return self.points[i + 1]

    def graininess(self, t: Scalar) -> Scalar:
        """sigma(t) - t; undefined at the window maximum."""
        i = self.index(t)
        if i + 1 == len(self.points):
            raise MaximumPoint("graininess is undefined at the window maximum")
        return self.points[i + 1] - self.points[i]

    def graininesses(self) -> tuple[Scalar, ...]:
        """Graininess at every window point except the maximum."""
        return tuple(b - a for a, b in zip(self.points, self.points[1:]))

    def delta_integral(self, f: Callable[[Scalar], Scalar], lower, upper) -> Scalar:
        """Delta integral of f over [lower, upper): the graininess-weighted
        left sum. On a sampled window this is the left Riemann sum."""
        i = self.index(lower)
        j = self.index(upper)
        if i > j:
            raise ValueError("lower endpoint exceeds upper endpoint")
        total = zero(self.mode)
        for k in range(i, j):
            v = require_mode(f(self.points[k]), self.mode, "integrand value")
            total += (self.points[k + 1] - self.points[k]) * v
        return total

    def _factor(self, k: int, p_value: Scalar) -> Scalar:
        require_mode(p_value, self.mode, "generator value")
        factor = 1 + (self.points[k + 1] - self.points[k]) * p_value
        if factor == 0:
            raise NotRegressive(f"1 + graininess*p vanishes at t = {self.points[k]}")
        if factor < 0:
            warnings.warn(
                NegativeFactorWarning(
                    f"1 + graininess*p is negative at t = {self.points[k]}; "
                    "the generator is not positively regressive"
                ),
                stacklevel=3,
            )
        return factor

    def exp_fn(self, p: Callable[[Scalar], Scalar], t, s) -> Scalar:
        """Scale exponential e_p(t, s): the product over [s, t) of the
        regressivity factors 1 + graininess * p. Empty range gives 1."""
        i = self.index(s)
        j = self.index(t)
        if i > j:
            raise ValueError("s must not exceed t")
        acc = one(self.mode)
        for k in range(i, j):
            acc = acc * self._factor(k, p(self.points[k]))
        return acc

    def exp_prefix(self, generator_values: Sequence[Scalar]) -> list[Scalar]:
        """Cumulative exponentials from the window start.

        Entry k is the exponential over the first k steps, so entry 0 is 1
        and the last entry consumes every supplied generator value.
        """
        if len(generator_values) > len(self.points) - 1:
            raise ValueError("more generator values than window steps")
        acc = one(self.mode)
        out = [acc]
        for k, v in enumerate(generator_values):
            acc = acc * self._factor(k, v)
            out.append(acc)
        return out


def exp_prefix_from_increments(increments, generator_values, mode: Mode) -> list[Scalar]:
    """Cumulative exponentials straight off an increment sequence.

    Entry k is the product over n < k of 1 + increments[n] *
    generator_values[n]. This is the closed product along a sequence
    window; it is kept separate from TimeScale.exp_prefix on purpose, so
    sequence scales can be cross-checked against the literal product.
    """
    if len(generator_values) > len(increments):
        raise ValueError("more generator values than increments")
    acc = one(mode)
    out = [acc]
    for alpha, v in zip(increments, generator_values):
        require_mode(v, mode, "generator value")
        factor = 1 + alpha * v
        if factor == 0:
            raise NotRegressive("1 + increment*p vanishes")
        if factor < 0:
            warnings.warn(
                NegativeFactorWarning("1 + increment*p is negative"), stacklevel=2
            )
        acc = acc * factor
        out.append(acc)
    return out
