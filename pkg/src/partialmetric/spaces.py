"""Catalog of concrete spaces, as finite samples and as numeric evaluators.

Each closed-form family is written once as a function of a point tuple and
shared by both views.  The augmented real line uses the string ``"@a"`` for
its extra point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .core import FiniteSpace, MetricKind, SpaceError
from .sequences import DistanceEvaluator

__all__ = [
    "SENTINEL",
    "CATALOG",
    "CatalogSpec",
    "point_label",
    "build_space",
    "sample_real_space",
    "numeric_evaluator",
    "lift_evaluator",
    "numeric_base",
]

SENTINEL = "@a"


def point_label(x: float) -> str:
    """Shortest round-tripping decimal label for a real point."""
    x = float(x)
    if x == 0:
        return "0"
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _is_sentinel(x: Any) -> bool:
    return isinstance(x, str) and x == SENTINEL


def _max(pts: tuple) -> float:
    return float(max(pts))


def _abs(pts: tuple) -> float:
    x, y = pts
    return abs(x - y)


def _augmented(pts: tuple) -> float:
    x, y = pts
    if _is_sentinel(x) and _is_sentinel(y):
        return 0.0
    if _is_sentinel(x):
        return abs(y)
    if _is_sentinel(y):
        return abs(x)
    return abs(x - y) - 1.0


def _positive_strong(pts: tuple) -> float:
    x, y = pts
    return float(x) if x == y else float(x + y)


def _unit(pts: tuple) -> float:
    return 0.0 if all(p == pts[0] for p in pts) else 1.0


def _pm_one(pts: tuple) -> float:
    return -1.0 if all(p == pts[0] for p in pts) else 1.0


_BASIC = {("x", "x"): 0.0, ("x", "y"): 1.0, ("y", "y"): 1.0}
_FIVE = {
    "aaaaa": 0.0,
    "aaaab": 3.0,
    "aaabb": -1.0,
    "aabbb": 2.0,
    "abbbb": 4.0,
    "bbbbb": 0.0,
}


@dataclass(frozen=True)
class _Entry:
    base: str
    formula: Callable[[tuple], float] | None
    blurb: str
    params: str


CATALOG: dict[str, _Entry] = {
    "basic_partial": _Entry(
        "partial", None, "two points with p(x,x)=0, p(x,y)=p(y,y)=1", "none"
    ),
    "max_partial": _Entry("partial", _max, "p(x,y)=max(x,y) on the reals", "sample points"),
    "augmented_real_line": _Entry(
        "partial",
        _augmented,
        "reals plus @a: p(@a,@a)=0, p(@a,x)=|x|, p(x,y)=|x-y|-1",
        "sample points (@a is always added)",
    ),
    "positive_real_strong": _Entry(
        "strong", _positive_strong, "s(x,x)=x, s(x,y)=x+y on positive reals", "positive sample points"
    ),
    "unit_n": _Entry("metric", _unit, "0 on constant tuples, 1 otherwise", "arity, element count"),
    "five_metric_negative": _Entry(
        "metric", None, "5-ary metric on {a,b} with the negative value M(aaabb)=-1", "none"
    ),
    "discrete_pm11": _Entry(
        "partial", _pm_one, "-1 on constant tuples, +1 otherwise", "arity, element count"
    ),
    "max_partial_n": _Entry("partial", _max, "max of the tuple on the reals", "arity, sample points"),
}


@dataclass(frozen=True)
class CatalogSpec:
    name: str
    params: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.name not in CATALOG:
            raise SpaceError(f"unknown catalog space {self.name!r}; known: {', '.join(CATALOG)}")
        object.__setattr__(self, "params", tuple(self.params))


def _points(params: Sequence[float], positive: bool = False) -> list[float]:
    pts = []
    for p in params:
        if isinstance(p, bool) or not isinstance(p, (int, float)) or not math.isfinite(p):
            raise SpaceError(f"sample points must be finite reals, got {p!r}")
        if positive and p <= 0:
            raise SpaceError(f"positive_real_strong needs points > 0, got {p}")
        pts.append(float(p))
    if not pts:
        raise SpaceError("at least one sample point is required")
    labels = [point_label(p) for p in pts]
    if len(set(labels)) != len(labels):
        raise SpaceError("sample points must be distinct")
    return pts


def _arity(p: float) -> int:
    if isinstance(p, bool) or float(p) != int(p) or int(p) < 2:
        raise SpaceError(f"arity must be an integer >= 2, got {p!r}")
    return int(p)


def _tabulate(points: list, labels: list[str], kind: MetricKind, formula) -> FiniteSpace:
    return FiniteSpace.from_function(labels, kind, lambda t: formula(tuple(points[i] for i in t)))


def build_space(spec: CatalogSpec) -> FiniteSpace:
    """Finite sample of a catalog family.

    ``unit_n`` and ``discrete_pm11`` take ``(n, m)``; ``max_partial_n`` takes
    ``(n, points...)``; the real-line families take their sample points.
    """
    name, params = spec.name, spec.params
    entry = CATALOG[name]
    if name == "basic_partial":
        return FiniteSpace.from_function(
            ["x", "y"], MetricKind.of("partial", 2), lambda t: _BASIC[tuple("xy"[i] for i in t)]
        )
    if name == "five_metric_negative":
        return FiniteSpace.from_function(
            ["a", "b"], MetricKind.of("metric", 5), lambda t: _FIVE["".join("ab"[i] for i in t)]
        )
    if name in ("unit_n", "discrete_pm11"):
        if len(params) != 2:
            raise SpaceError(f"{name} takes (arity, element count)")
        n, m = _arity(params[0]), params[1]
        if isinstance(m, bool) or float(m) != int(m) or int(m) < 1:
            raise SpaceError(f"element count must be a positive integer, got {m!r}")
        pts = list(range(int(m)))
        return _tabulate(pts, [str(p) for p in pts], MetricKind.of(entry.base, n), entry.formula)
    if name == "max_partial_n":
        if len(params) < 2:
            raise SpaceError("max_partial_n takes (arity, points...)")
        n = _arity(params[0])
        pts = _points(params[1:])
        return _tabulate(pts, [point_label(p) for p in pts], MetricKind.of("partial", n), _max)
    pts = _points(params, positive=name == "positive_real_strong")
    labels = [point_label(p) for p in pts]
    if name == "augmented_real_line":
        pts = [SENTINEL] + pts
        labels = [SENTINEL] + labels
    return _tabulate(pts, labels, MetricKind.of(entry.base, 2), entry.formula)


def sample_real_space(family: str, lo: float, hi: float, count: int, arity: int = 2) -> FiniteSpace:
    """Evenly spaced sample of a real-line family on ``[lo, hi]``."""
    if family not in ("max_partial", "augmented_real_line", "positive_real_strong", "max_partial_n"):
        raise SpaceError(f"{family!r} is not a real-line family")
    if count < 1 or not lo <= hi:
        raise SpaceError("need count >= 1 and lo <= hi")
    if count == 1:
        pts = [float(lo)]
    else:
        step = (hi - lo) / (count - 1)
        pts = [lo + k * step for k in range(count - 1)] + [float(hi)]
    if family == "max_partial_n":
        return build_space(CatalogSpec(family, (arity, *pts)))
    return build_space(CatalogSpec(family, tuple(pts)))


_NUMERIC = {
    "max_partial": ("partial", _max),
    "max_partial_n": ("partial", _max),
    "augmented_real_line": ("partial", _augmented),
    "positive_real_strong": ("strong", _positive_strong),
    "abs_metric": ("metric", _abs),
    "unit_n": ("metric", _unit),
    "discrete_pm11": ("partial", _pm_one),
}


def numeric_evaluator(name: str, arity: int = 2) -> DistanceEvaluator:
    """Closed-form evaluator on the full carrier (reals, plus ``@a`` where used)."""
    if name not in _NUMERIC:
        raise SpaceError(f"no closed form for {name!r}; known: {', '.join(_NUMERIC)}")
    _, formula = _NUMERIC[name]
    if formula in (_abs, _augmented, _positive_strong) and arity != 2:
        raise SpaceError(f"{name} is pairwise only; use lift_evaluator for higher arity")
    return DistanceEvaluator(arity, formula, name=name)


def numeric_base(name: str) -> str:
    """Base family (``metric``, ``partial`` or ``strong``) of a closed form."""
    return _NUMERIC[name][0]


def lift_evaluator(ev: DistanceEvaluator, n: int) -> DistanceEvaluator:
    """Sum of the pairwise evaluator over all index pairs of an n-tuple."""
    if ev.arity != 2:
        raise ValueError("lift_evaluator needs a pairwise evaluator")

    def total(pts: tuple) -> float:
        return sum(ev(pts[i], pts[j]) for j in range(1, n) for i in range(j))

    return DistanceEvaluator(n, total, name=f"lift({ev.name},{n})")
