"""Cauchy sequences, limits and Cauchy pairs checked on finite prefixes.

The infinite statements ("for every epsilon there is N") are replaced by a
fixed tolerance and a tail window: a prefix is classified by the samples
taken from its last ``window`` terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import median
from typing import Any, Callable, Sequence

from .core import FiniteSpace, Tolerance

__all__ = [
    "DistanceEvaluator",
    "CauchyVerdict",
    "NotCauchyError",
    "default_window",
    "classify_cauchy",
    "limit_deviation",
    "check_limit",
    "check_special_limit",
    "check_cauchy_pair",
]


class NotCauchyError(ValueError):
    """Raised when a special limit is requested for a non-Cauchy prefix."""


class DistanceEvaluator:
    """A symmetric function of ``arity`` points.

    Works for finite spaces (points are labels) and for closed-form numeric
    spaces (points are floats or sentinel strings).
    """

    def __init__(self, arity: int, func: Callable[[tuple], float], name: str = "") -> None:
        if arity < 2:
            raise ValueError(f"arity must be >= 2, got {arity}")
        self.arity = arity
        self._func = func
        self.name = name

    @classmethod
    def from_space(cls, space: FiniteSpace) -> "DistanceEvaluator":
        return cls(space.arity, lambda pts: space.value(*pts), name=f"finite {space.kind}")

    def __call__(self, *points: Any) -> float:
        if len(points) != self.arity:
            raise ValueError(f"expected {self.arity} points, got {len(points)}")
        return float(self._func(tuple(points)))

    def __repr__(self) -> str:
        return f"DistanceEvaluator(arity={self.arity}, name={self.name!r})"

    def self_value(self, x: Any) -> float:
        """P(<x>^n)."""
        return self(*([x] * self.arity))

    def pivot(self, x: Any, y: Any) -> float:
        """P(<x>^{n-1}, y)."""
        return self(*([x] * (self.arity - 1)), y)

    def centered(self, x: Any, y: Any) -> float:
        """P(<x>^{n-1}, y) - P(<x>^n)."""
        return self.pivot(x, y) - self.self_value(x)


@dataclass(frozen=True)
class CauchyVerdict:
    is_cauchy: bool
    central_distance: float
    max_tail_deviation: float
    window: int

    def to_dict(self) -> dict:
        return {
            "is_cauchy": self.is_cauchy,
            "central_distance": self.central_distance,
            "max_tail_deviation": self.max_tail_deviation,
            "window": self.window,
        }


def default_window(length: int) -> int:
    """ceil(length / 3), at least 5, at most ``length``."""
    return min(length, max(5, math.ceil(length / 3)))


def _tail(prefix: Sequence[Any], window: int | None) -> tuple[list[Any], int]:
    prefix = list(prefix)
    if len(prefix) < 2:
        raise ValueError("a prefix needs at least two terms")
    w = default_window(len(prefix)) if window is None else int(window)
    if w < 2:
        raise ValueError(f"window must be >= 2, got {w}")
    if w > len(prefix):
        raise ValueError(f"window {w} exceeds prefix length {len(prefix)}")
    return prefix[-w:], w


def classify_cauchy(
    ev: DistanceEvaluator,
    prefix: Sequence[Any],
    tol: "float | Tolerance | None" = None,
    window: int | None = None,
    mirrored: bool = False,
) -> CauchyVerdict:
    """Decide whether a prefix looks Cauchy.

    Samples ``P(<x_i>^{n-1}, x_j)`` for ``i >= j`` in the tail (or the mirrored
    orientation ``P(<x_j>^{n-1}, x_i)``).  The central distance is their
    median; the prefix is Cauchy when every sample is within ``tol`` of it.
    """
    eps = Tolerance.coerce(tol).abs
    tail, w = _tail(prefix, window)
    samples = []
    for i in range(w):
        for j in range(i + 1):
            a, b = (tail[j], tail[i]) if mirrored else (tail[i], tail[j])
            samples.append(ev.pivot(a, b))
    r = float(median(samples))
    dev = max(abs(s - r) for s in samples)
    return CauchyVerdict(dev <= eps, r, dev, w)


def limit_deviation(
    ev: DistanceEvaluator, prefix: Sequence[Any], candidate: Any, window: int | None = None
) -> float:
    """Largest ``P(<a>^{n-1}, x_i) - P(<a>^n)`` over the tail."""
    tail, _ = _tail(prefix, window)
    base = ev.self_value(candidate)
    return max(ev.pivot(candidate, x) - base for x in tail)


def check_limit(
    ev: DistanceEvaluator,
    prefix: Sequence[Any],
    candidate: Any,
    tol: "float | Tolerance | None" = None,
    window: int | None = None,
) -> bool:
    """True when ``candidate`` is a limit of the prefix within ``tol``."""
    eps = Tolerance.coerce(tol).abs
    return limit_deviation(ev, prefix, candidate, window) <= eps


def check_special_limit(
    ev: DistanceEvaluator,
    prefix: Sequence[Any],
    candidate: Any,
    tol: "float | Tolerance | None" = None,
    window: int | None = None,
) -> bool:
    """A limit whose self-value equals the central distance.

    Raises
    ------
    NotCauchyError
        If the prefix is not Cauchy within ``tol``.
    """
    eps = Tolerance.coerce(tol).abs
    verdict = classify_cauchy(ev, prefix, eps, window)
    if not verdict.is_cauchy:
        raise NotCauchyError(
            f"prefix is not Cauchy within {eps} (deviation {verdict.max_tail_deviation})"
        )
    if not check_limit(ev, prefix, candidate, eps, window):
        return False
    return abs(verdict.central_distance - ev.self_value(candidate)) <= eps


def check_cauchy_pair(
    ev: DistanceEvaluator,
    xs: Sequence[Any],
    ys: Sequence[Any],
    tol: "float | Tolerance | None" = None,
    window: int | None = None,
) -> CauchyVerdict:
    """Decide whether two prefixes form a Cauchy pair.

    Cross samples ``P(<x_i>^{n-1}, y_j)`` are taken for all ``i, j`` in the
    tail and their median is the central distance ``r``.  The pair passes when
    every cross sample is within ``tol`` of ``r``, every self-value in the
    tail is at least ``r - tol``, and the lower-bound chain
    ``min{self values} <= cross`` holds within ``tol``.  Pairwise spaces pair
    ``x_i`` with ``y_j`` in the minimum; n-ary spaces pair ``x_i`` with ``y_i``.
    """
    eps = Tolerance.coerce(tol).abs
    tx, w = _tail(xs, window)
    ty, w2 = _tail(ys, w)
    sx = [ev.self_value(x) for x in tx]
    sy = [ev.self_value(y) for y in ty]
    cross = [[ev.pivot(tx[i], ty[j]) for j in range(w)] for i in range(w)]
    r = float(median(v for row in cross for v in row))
    dev = max(abs(v - r) for row in cross for v in row)
    dev = max(dev, max(r - s for s in sx + sy))
    ok = dev <= eps
    for i in range(w):
        for j in range(w):
            low = min(sx[i], sy[j] if ev.arity == 2 else sy[i])
            if low > cross[i][j] + eps:
                ok = False
                dev = max(dev, low - cross[i][j])
    return CauchyVerdict(ok, r, dev, w)
