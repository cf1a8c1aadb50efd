"""Orbits, contraction conditions and certified fixed/coincidence points.

The solvers iterate, classify the resulting prefix, pick a candidate limit
and then test the conclusions that the corresponding existence theorems
draw from their hypotheses.  A status other than ``"no_certificate"`` means
every required check passed within the tolerance.  Hypotheses that cannot be
verified on a finite run (such as continuity) are listed as assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .core import Tolerance
from .sequences import (
    CauchyVerdict,
    DistanceEvaluator,
    check_cauchy_pair,
    check_limit,
    classify_cauchy,
    limit_deviation,
)

__all__ = [
    "MapEvaluationError",
    "ContractionSpec",
    "OrbitTrace",
    "ContractionVerdict",
    "CheckVerdict",
    "SolveOptions",
    "SolveResult",
    "iterate_orbit",
    "check_orbital_contraction",
    "check_mutual_contraction",
    "cauchy_radius",
    "check_nonexpansive",
    "check_consistent",
    "find_fixed_point",
    "find_common_fixed_point",
    "find_coincidence_point",
    "snap",
    "MAPS",
    "build_map",
]

Map = Callable[[Any], Any]
MODES = ("orbital_c", "orbital_phi", "pairwise_c", "mutual_c")
ROUTES = ("partial", "strong-nonexpansive", "strong-woc")


class MapEvaluationError(RuntimeError):
    """A user map raised or returned something unusable."""

    def __init__(self, step: int, point: Any, cause: BaseException | None = None) -> None:
        msg = f"map failed at iteration {step} on point {point!r}"
        if cause is not None:
            msg += f": {cause}"
        super().__init__(msg)
        self.step = step
        self.point = point


@dataclass(frozen=True)
class ContractionSpec:
    """Parameters of one contraction condition.

    ``mode`` is one of ``orbital_c``, ``orbital_phi``, ``pairwise_c`` and
    ``mutual_c``.  ``r`` may be left as ``None`` to use the central distance
    estimated from the run.  ``mutual_route`` is ``"f"`` or ``"fg"``.
    """

    mode: str
    c: float | None = None
    r: float | None = None
    phi: Callable[[float], float] | None = None
    A: float | None = None
    mutual_route: str = "fg"

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown contraction mode {self.mode!r}; expected one of {MODES}")
        if self.mode == "orbital_phi":
            if self.phi is None:
                raise ValueError("orbital_phi needs phi")
        elif self.c is None or not 0 < self.c < 1:
            raise ValueError(f"{self.mode} needs 0 < c < 1, got {self.c!r}")
        if self.mode == "mutual_c":
            if self.A is None or self.A < 0:
                raise ValueError(f"mutual_c needs A >= 0, got {self.A!r}")
            if self.mutual_route not in ("f", "fg"):
                raise ValueError("mutual_route must be 'f' or 'fg'")


@dataclass(frozen=True)
class OrbitTrace:
    points: tuple
    verdict: CauchyVerdict
    step_values: tuple[float, ...]
    self_values: tuple[float, ...]

    @property
    def iterations(self) -> int:
        return len(self.points) - 1


@dataclass(frozen=True)
class ContractionVerdict:
    holds: bool
    checks: dict[str, bool]
    first_violation: tuple[str, int] | None
    r: float
    r_source: str


@dataclass(frozen=True)
class CheckVerdict:
    holds: bool
    witness: tuple | None = None
    margin: float | None = None


@dataclass(frozen=True)
class SolveOptions:
    max_iter: int = 60
    tol: float = 1e-9
    window: int | None = None
    point_tol: float = 1e-9
    route: str = "partial"
    contraction: ContractionSpec | None = None
    samples: tuple | None = None

    def __post_init__(self) -> None:
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.route not in ROUTES:
            raise ValueError(f"unknown route {self.route!r}; expected one of {ROUTES}")
        Tolerance.coerce(self.tol)
        Tolerance.coerce(self.point_tol)


@dataclass(frozen=True)
class SolveResult:
    status: str
    point: Any
    iterations: int
    checks: dict[str, bool]
    residuals: dict[str, float]
    required: tuple[str, ...] = ()
    assumed: tuple[str, ...] = ()
    trace: OrbitTrace | None = field(default=None, repr=False)

    @property
    def failed(self) -> list[str]:
        return [k for k in self.required if not self.checks.get(k, False)]

    def to_dict(self) -> dict:
        point = self.point
        if isinstance(point, float) and not math.isfinite(point):
            point = str(point)
        return {
            "status": self.status,
            "point": point,
            "iterations": self.iterations,
            "checks": dict(sorted(self.checks.items())),
            "required": list(self.required),
            "failed": self.failed,
            "assumed": list(self.assumed),
            "residuals": {k: v for k, v in sorted(self.residuals.items()) if math.isfinite(v)},
        }


def _numeric(x: Any) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def snap(x: Any, point_tol: float = 1e-9) -> Any:
    """Round a numeric point to the grid of ``point_tol``; labels pass through."""
    if not _numeric(x) or point_tol <= 0 or not math.isfinite(x):
        return x
    digits = max(0, math.ceil(-math.log10(point_tol)))
    return round(float(x), digits) + 0.0


def _same_point(a: Any, b: Any, point_tol: float) -> bool:
    if _numeric(a) and _numeric(b):
        return abs(a - b) <= point_tol
    return a == b


def _apply(f: Map, x: Any, step: int) -> Any:
    try:
        y = f(x)
    except Exception as exc:  # surfaced with the iteration index
        raise MapEvaluationError(step, x, exc) from exc
    if _numeric(y) and not math.isfinite(y):
        raise MapEvaluationError(step, x, ValueError(f"non-finite value {y}"))
    return y


def iterate_orbit(
    f: Map,
    x0: Any,
    ev: DistanceEvaluator,
    max_iter: int = 60,
    tol: "float | Tolerance | None" = None,
    window: int | None = None,
    stop_at_fixed: bool = False,
) -> OrbitTrace:
    """Points ``x0, f(x0), ..., f^k(x0)`` with their Cauchy verdict.

    With ``stop_at_fixed`` the orbit ends as soon as ``f(x) == x`` exactly and
    the verdict is taken on the constant tail.
    """
    points = [x0]
    stopped = False
    for k in range(max_iter):
        y = _apply(f, points[-1], k)
        stopped = stop_at_fixed and y == points[-1]
        points.append(y)
        if stopped:
            break
    if stopped:
        # the rest of the orbit is constant; classify that part alone
        k = len(points) - 2
        while k > 0 and points[k - 1] == points[-1]:
            k -= 1
        verdict = classify_cauchy(ev, points[k:], tol, len(points) - k)
    else:
        w = None if window is None else min(window, len(points))
        verdict = classify_cauchy(ev, points, tol, w)
    steps = tuple(ev.pivot(points[i], points[i + 1]) for i in range(len(points) - 1))
    selfs = tuple(ev.self_value(p) for p in points)
    return OrbitTrace(tuple(points), verdict, steps, selfs)


def _validate_phi(phi: Callable[[float], float], r: float, hi: float, eps: float) -> None:
    span = max(1.0, hi - r)
    grid = [r + span * k / 99 for k in range(100)]
    vals = [float(phi(t)) for t in grid]
    if abs(vals[0]) > eps:
        raise ValueError(f"phi(r) must be 0, got {vals[0]}")
    if any(v <= 0 for v in vals[1:]):
        raise ValueError("phi must be positive above r")
    if any(b < a - eps for a, b in zip(vals, vals[1:])):
        raise ValueError("phi must be non-decreasing")


def _first(checks: dict[str, list[bool]]) -> tuple[dict[str, bool], tuple[str, int] | None]:
    flags = {k: all(v) for k, v in checks.items()}
    first = None
    for k, v in checks.items():
        for i, ok in enumerate(v):
            if not ok and (first is None or i < first[1]):
                first = (k, i)
                break
    return flags, first


def check_orbital_contraction(
    trace: OrbitTrace,
    spec: ContractionSpec,
    ev: DistanceEvaluator,
    tol: "float | Tolerance | None" = None,
    partner: OrbitTrace | None = None,
) -> ContractionVerdict:
    """Test an orbit (or a pair of orbits) against a contraction condition.

    ``orbital_c`` at arity 2 checks ``r <= p(x_i,x_i)`` and
    ``p(x_{i+2},x_{i+1}) <= r + c^{i+1} |p(x_1,x_0)|``; at higher arity it
    checks ``r <= P(<x_{i+1}>^n)`` and
    ``P(<x_i>^{n-1},x_{i+1}) <= r + c^i |P(<x_0>^{n-1},x_1)|``.
    ``orbital_phi`` checks
    ``P(<x_{i+1}>^{n-1},x_{j+1}) <= t - phi(t)`` with ``t = P(<x_i>^{n-1},x_j)``.
    ``pairwise_c`` needs the partner orbit ``y`` and checks
    ``r <= min(P(<x_i>^n), P(<y_i>^n))``, ``P(<x_{i+1}>^{n-1},y_i) <= r + c^i M``
    and ``P(<x_i>^{n-1},y_i) <= r + c^i M``.
    Indices in ``first_violation`` count from 0 along the orbit.
    """
    eps = Tolerance.coerce(tol).abs
    pts = trace.points
    if spec.mode == "mutual_c":
        raise ValueError("mutual_c is checked with check_mutual_contraction")
    if len(pts) < 3:
        raise ValueError("a contraction check needs at least 3 orbit points")
    if spec.r is None:
        r_source = "estimated"
        r = trace.verdict.central_distance
        if spec.mode == "pairwise_c":
            if partner is None:
                raise ValueError("pairwise_c needs the partner orbit")
            r = check_cauchy_pair(ev, pts, partner.points, eps, min(len(pts), len(partner.points))).central_distance
    else:
        r_source, r = "supplied", float(spec.r)
    checks: dict[str, list[bool]] = {}

    if spec.mode == "orbital_c":
        c, n = spec.c, ev.arity
        if n == 2:
            m0 = abs(ev(pts[1], pts[0]))
            checks["self_lower"] = [r <= s + eps for s in trace.self_values]
            checks["step_bound"] = [
                ev(pts[i + 2], pts[i + 1]) <= r + c ** (i + 1) * m0 + eps for i in range(len(pts) - 2)
            ]
        else:
            m0 = abs(ev.pivot(pts[0], pts[1]))
            checks["self_lower"] = [r <= s + eps for s in trace.self_values[1:]]
            checks["step_bound"] = [
                ev.pivot(pts[i], pts[i + 1]) <= r + c**i * m0 + eps for i in range(len(pts) - 1)
            ]
    elif spec.mode == "orbital_phi":
        k = len(pts) - 1
        t = [[ev.pivot(pts[i], pts[j]) for j in range(k + 1)] for i in range(k + 1)]
        _validate_phi(spec.phi, r, max(max(row) for row in t), eps)
        checks["self_lower"] = [r <= s + eps for s in trace.self_values]
        checks["phi_step"] = [
            all(t[i + 1][j + 1] <= t[i][j] - spec.phi(t[i][j]) + eps for j in range(k)) for i in range(k)
        ]
    else:
        if partner is None:
            raise ValueError("pairwise_c needs the partner orbit")
        qs = partner.points
        k = min(len(pts), len(qs))
        c = spec.c
        big = max(abs(ev.pivot(pts[1], qs[0])), abs(ev.pivot(pts[0], qs[0])))
        checks["self_lower"] = [
            r <= min(ev.self_value(pts[i]), ev.self_value(qs[i])) + eps for i in range(k)
        ]
        checks["cross_step_bound"] = [
            ev.pivot(pts[i + 1], qs[i]) <= r + c**i * big + eps for i in range(k - 1)
        ]
        checks["cross_bound"] = [ev.pivot(pts[i], qs[i]) <= r + c**i * big + eps for i in range(k)]
    flags, first = _first(checks)
    return ContractionVerdict(all(flags.values()), flags, first, r, r_source)


def cauchy_radius(spec: ContractionSpec, m0: float, start: int) -> float:
    """Bound on how far tail samples can exceed ``r`` after index ``start``.

    A passing ``orbital_c`` check confines ``P(<x_i>^{n-1},x_j)`` for
    ``i, j >= start`` to ``[r, r + c^start m0 / (1 - c)]``; a passing
    ``pairwise_c`` check gives ``2 c^start m0 / (1 - c)`` for cross samples.
    """
    if spec.mode not in ("orbital_c", "pairwise_c"):
        raise ValueError("cauchy_radius applies to orbital_c and pairwise_c")
    factor = 2.0 if spec.mode == "pairwise_c" else 1.0
    return factor * spec.c**start * abs(m0) / (1 - spec.c)


def check_mutual_contraction(
    xs: Sequence[Any],
    f: Map,
    g: Map,
    spec: ContractionSpec,
    ev_domain: DistanceEvaluator,
    ev_codomain: DistanceEvaluator,
    tol: "float | Tolerance | None" = None,
) -> ContractionVerdict:
    """Test consecutive pairs ``(x, z)`` of a selector run against ``mutual_c``.

    With ``gf(x) = H(<f x>^{n-1}, g x) - H(<f x>^n)`` and
    ``gg(x) = H(<f x>^{n-1}, g x) - H(<g x>^n)``, every step must satisfy
    ``gf(z) <= c gf(x)`` and ``r <= P(<z>^n) <= P(<z>^{n-1}, x) <= r + A gf(x)``;
    the ``fg`` route also needs the same two bounds with ``gg``.
    ``first_violation`` indices count the point ``x`` from 1.
    """
    if spec.mode != "mutual_c":
        raise ValueError("check_mutual_contraction needs a mutual_c spec")
    eps = Tolerance.coerce(tol).abs
    xs = list(xs)
    if len(xs) < 2:
        raise ValueError("need at least two points")
    r = 0.0 if spec.r is None else float(spec.r)
    c, A = spec.c, spec.A
    fx = [_apply(f, x, i) for i, x in enumerate(xs)]
    gx = [_apply(g, x, i) for i, x in enumerate(xs)]
    gf = [ev_codomain.centered(a, b) for a, b in zip(fx, gx)]
    gg = [ev_codomain.pivot(a, b) - ev_codomain.self_value(b) for a, b in zip(fx, gx)]
    checks: dict[str, list[bool]] = {"f_gap_decay": [], "self_lower": [], "lbnd_chain": [], "step_bound_f": []}
    if spec.mutual_route == "fg":
        checks.update({"g_gap_decay": [], "step_bound_g": []})
    for i in range(len(xs) - 1):
        x, z = xs[i], xs[i + 1]
        sz, pz = ev_domain.self_value(z), ev_domain.pivot(z, x)
        checks["f_gap_decay"].append(gf[i + 1] <= c * gf[i] + eps)
        checks["self_lower"].append(r <= sz + eps)
        checks["lbnd_chain"].append(sz <= pz + eps)
        checks["step_bound_f"].append(pz <= r + A * gf[i] + eps)
        if spec.mutual_route == "fg":
            checks["g_gap_decay"].append(gg[i + 1] <= c * gg[i] + eps)
            checks["step_bound_g"].append(pz <= r + A * gg[i] + eps)
    flags, first = _first(checks)
    if first is not None:
        first = (first[0], first[1] + 1)
    return ContractionVerdict(all(flags.values()), flags, first, r, "supplied" if spec.r is not None else "default")


def check_nonexpansive(
    f: Map,
    ev: DistanceEvaluator,
    samples: Sequence[tuple[Any, Any]],
    tol: "float | Tolerance | None" = None,
) -> CheckVerdict:
    """``P(<f x>^{n-1}, f y) <= P(<x>^{n-1}, y)`` on every sample pair ``(x, y)``."""
    eps = Tolerance.coerce(tol).abs
    worst = None
    for k, (x, y) in enumerate(samples):
        margin = ev.pivot(x, y) - ev.pivot(_apply(f, x, k), _apply(f, y, k))
        if margin < -eps:
            return CheckVerdict(False, (x, y), margin)
        worst = margin if worst is None else min(worst, margin)
    return CheckVerdict(True, None, worst)


def check_consistent(
    f: Map,
    ev_domain: DistanceEvaluator,
    ev_codomain: DistanceEvaluator,
    samples: Sequence[tuple[Any, Any]],
    tol: "float | Tolerance | None" = None,
) -> CheckVerdict:
    """``P(<x>^n) <= P(<z>^n)`` implies ``H(<f x>^n) <= H(<f z>^n)``.

    Each sample pair is tested in both orders.
    """
    eps = Tolerance.coerce(tol).abs
    worst = None
    for k, pair in enumerate(samples):
        for x, z in (pair, pair[::-1]):
            if ev_domain.self_value(x) <= ev_domain.self_value(z):
                margin = ev_codomain.self_value(_apply(f, z, k)) - ev_codomain.self_value(_apply(f, x, k))
                if margin < -eps:
                    return CheckVerdict(False, (x, z), margin)
                worst = margin if worst is None else min(worst, margin)
    return CheckVerdict(True, None, worst)


_ROUTE_NEEDS = {
    "partial": ("nonexpansive_conclusion", "weak_orbital_continuity", "woc_conclusion"),
    "strong-nonexpansive": ("nonexpansive_conclusion",),
    "strong-woc": ("weak_orbital_continuity", "woc_conclusion"),
}
_ROUTE_ASSUMES = {
    "partial": ("nonexpansive", "weakly_orbitally_continuous"),
    "strong-nonexpansive": ("nonexpansive",),
    "strong-woc": ("weakly_orbitally_continuous",),
}


def _limit_checks(
    tag: str,
    f: Map,
    trace: OrbitTrace,
    a: Any,
    ev: DistanceEvaluator,
    opts: SolveOptions,
    checks: dict,
    residuals: dict,
) -> Any:
    """Record the limit-point checks for one map; returns ``f(a)``."""
    eps, pts, w = opts.tol, trace.points, trace.verdict.window
    fa = _apply(f, a, trace.iterations)
    r = trace.verdict.central_distance
    residuals[f"{tag}limit_deviation"] = limit_deviation(ev, pts, a, w)
    residuals[f"{tag}self_value_gap"] = abs(r - ev.self_value(a))
    checks[f"{tag}special_limit"] = (
        trace.verdict.is_cauchy
        and residuals[f"{tag}limit_deviation"] <= eps
        and residuals[f"{tag}self_value_gap"] <= eps
    )
    ne = ev.centered(a, fa)
    residuals[f"{tag}nonexpansive_gap"] = abs(ne)
    checks[f"{tag}nonexpansive_conclusion"] = abs(ne) <= eps
    residuals[f"{tag}image_limit_deviation"] = limit_deviation(ev, pts, fa, w)
    checks[f"{tag}weak_orbital_continuity"] = check_limit(ev, pts, fa, eps, w)
    woc = ev.centered(fa, a)
    residuals[f"{tag}woc_gap"] = abs(woc)
    checks[f"{tag}woc_conclusion"] = abs(woc) <= eps
    residuals[f"{tag}point_distance"] = abs(fa - a) if _numeric(fa) and _numeric(a) else float(fa != a)
    checks[f"{tag}point_equality"] = _same_point(fa, a, opts.point_tol)
    if opts.samples is not None:
        checks[f"{tag}nonexpansive_samples"] = check_nonexpansive(f, ev, opts.samples, eps).holds
    return fa


def _required(tag: str, opts: SolveOptions) -> list[str]:
    need = [f"{tag}special_limit", *(tag + k for k in _ROUTE_NEEDS[opts.route]), f"{tag}point_equality"]
    if opts.samples is not None:
        need.append(f"{tag}nonexpansive_samples")
    return need


def find_fixed_point(
    f: Map, x0: Any, ev: DistanceEvaluator, opts: SolveOptions | None = None
) -> SolveResult:
    """Iterate ``f`` from ``x0`` and certify the limit as a fixed point.

    Routes: ``partial`` needs both ``P(<a>^{n-1}, f a) = P(<a>^n)`` and
    ``P(<f a>^{n-1}, a) = P(<f a>^n)`` (the conclusions drawn from
    non-expansiveness and from weak orbital continuity), with ``f(a)`` a limit
    of the orbit.  ``strong-nonexpansive`` and ``strong-woc`` need only one of
    them, since strict lower bounds separate points on their own.
    """
    opts = opts or SolveOptions()
    trace = iterate_orbit(f, x0, ev, opts.max_iter, opts.tol, opts.window, stop_at_fixed=True)
    checks: dict[str, bool] = {"orbit_cauchy": trace.verdict.is_cauchy}
    residuals: dict[str, float] = {
        "cauchy_deviation": trace.verdict.max_tail_deviation,
        "central_distance": trace.verdict.central_distance,
    }
    required = ["orbit_cauchy"]
    if opts.contraction is not None:
        cv = check_orbital_contraction(trace, opts.contraction, ev, opts.tol)
        checks["contraction"] = cv.holds
        residuals["contraction_r"] = cv.r
        required.append("contraction")
    a = snap(trace.points[-1], opts.point_tol)
    _limit_checks("", f, trace, a, ev, opts, checks, residuals)
    required += _required("", opts)
    ok = all(checks[k] for k in required)
    return SolveResult(
        "fixed_point" if ok else "no_certificate",
        a,
        trace.iterations,
        checks,
        residuals,
        tuple(required),
        _ROUTE_ASSUMES[opts.route] if opts.samples is None else (),
        trace,
    )


def find_common_fixed_point(
    f: Map, g: Map, x0: Any, y0: Any, ev: DistanceEvaluator, opts: SolveOptions | None = None
) -> SolveResult:
    """Iterate ``f`` from ``x0`` and ``g`` from ``y0`` and certify a shared fixed point.

    The two orbits must form a Cauchy pair; the candidate is the last point
    of the ``f`` orbit and the route checks run for both maps.
    """
    opts = opts or SolveOptions()
    tx = iterate_orbit(f, x0, ev, opts.max_iter, opts.tol, opts.window)
    ty = iterate_orbit(g, y0, ev, opts.max_iter, opts.tol, opts.window)
    pair = check_cauchy_pair(ev, tx.points, ty.points, opts.tol, tx.verdict.window)
    checks: dict[str, bool] = {"cauchy_pair": pair.is_cauchy}
    residuals: dict[str, float] = {
        "pair_deviation": pair.max_tail_deviation,
        "central_distance": pair.central_distance,
    }
    required = ["cauchy_pair"]
    if opts.contraction is not None:
        cv = check_orbital_contraction(tx, opts.contraction, ev, opts.tol, partner=ty)
        checks["contraction"] = cv.holds
        residuals["contraction_r"] = cv.r
        required.append("contraction")
    a = snap(tx.points[-1], opts.point_tol)
    _limit_checks("f_", f, tx, a, ev, opts, checks, residuals)
    _limit_checks("g_", g, ty, a, ev, opts, checks, residuals)
    required += _required("f_", opts) + _required("g_", opts)
    ok = all(checks[k] for k in required)
    assumed = tuple(f"{m}_{h}" for m in "fg" for h in _ROUTE_ASSUMES[opts.route]) if opts.samples is None else ()
    return SolveResult(
        "common_fixed_point" if ok else "no_certificate",
        a,
        tx.iterations,
        checks,
        residuals,
        tuple(required),
        assumed,
        tx,
    )


def find_coincidence_point(
    f: Map,
    g: Map,
    selector: Map,
    x0: Any,
    ev_domain: DistanceEvaluator,
    ev_codomain: DistanceEvaluator,
    spec: ContractionSpec,
    opts: SolveOptions | None = None,
) -> SolveResult:
    """Run ``x_{i+1} = selector(x_i)`` and certify a point with ``f(a) = g(a)``.

    ``spec`` is a ``mutual_c`` condition.  The run must be Cauchy, the
    candidate must be its special limit, and the codomain gaps at the
    candidate must vanish: both gaps on the ``fg`` route, the ``f`` gap on the
    ``f`` route.  Sequential continuity of ``f`` and ``g`` is assumed; the
    result records whether ``f(a)`` and ``g(a)`` are limits of the image runs.
    """
    opts = opts or SolveOptions()
    if spec.mode != "mutual_c":
        raise ValueError("find_coincidence_point needs a mutual_c spec")
    eps = opts.tol
    trace = iterate_orbit(selector, x0, ev_domain, opts.max_iter, eps, opts.window, stop_at_fixed=True)
    xs = trace.points
    w = trace.verdict.window
    checks: dict[str, bool] = {"domain_cauchy": trace.verdict.is_cauchy}
    residuals: dict[str, float] = {
        "cauchy_deviation": trace.verdict.max_tail_deviation,
        "central_distance": trace.verdict.central_distance,
    }
    mv = check_mutual_contraction(xs, f, g, spec, ev_domain, ev_codomain, eps)
    checks["mutual_contraction"] = mv.holds
    fx = [f(x) for x in xs]
    gx = [g(x) for x in xs]
    gf = [ev_codomain.centered(p, q) for p, q in zip(fx, gx)]
    steps = [(gf[i + 1] / gf[i], ev_domain.pivot(xs[i + 1], xs[i]) - mv.r, gf[i]) for i in range(len(xs) - 1) if gf[i] > eps]
    if steps:
        residuals["observed_c"] = max(s[0] for s in steps)
        residuals["observed_A"] = max(s[1] / s[2] for s in steps)
    a = snap(xs[-1], opts.point_tol)
    fa, ga = _apply(f, a, len(xs)), _apply(g, a, len(xs))
    residuals["limit_deviation"] = limit_deviation(ev_domain, xs, a, w)
    residuals["self_value_gap"] = abs(trace.verdict.central_distance - ev_domain.self_value(a))
    checks["special_limit"] = (
        trace.verdict.is_cauchy and residuals["limit_deviation"] <= eps and residuals["self_value_gap"] <= eps
    )
    checks["f_sequential_limit"] = check_limit(ev_codomain, fx, fa, eps, w)
    checks["g_sequential_limit"] = check_limit(ev_codomain, gx, ga, eps, w)
    pairs = [(x, a) for x in xs[-w:]]
    checks["f_consistent"] = check_consistent(f, ev_domain, ev_codomain, pairs, eps).holds
    checks["g_consistent"] = check_consistent(g, ev_domain, ev_codomain, pairs, eps).holds
    gap_f = ev_codomain.centered(fa, ga)
    gap_g = ev_codomain.centered(ga, fa)
    residuals["gap_f"], residuals["gap_g"] = abs(gap_f), abs(gap_g)
    if spec.mutual_route == "fg":
        checks["separation"] = max(abs(gap_f), abs(gap_g)) <= eps
    else:
        checks["separation"] = abs(gap_f) <= eps
    residuals["point_distance"] = abs(fa - ga) if _numeric(fa) and _numeric(ga) else float(fa != ga)
    checks["point_equality"] = _same_point(fa, ga, opts.point_tol)
    required = (
        "domain_cauchy",
        "mutual_contraction",
        "special_limit",
        "f_consistent",
        "g_consistent",
        "separation",
        "point_equality",
    )
    ok = all(checks[k] for k in required)
    return SolveResult(
        "coincidence_point" if ok else "no_certificate",
        a,
        trace.iterations,
        checks,
        residuals,
        required,
        ("f_sequentially_continuous", "g_sequentially_continuous"),
        trace,
    )


def _halve_zero_to_minus_one(x: float) -> float:
    return -1.0 if x == 0 else x / 2


def _sentinel_to_one(x: Any) -> Any:
    return 1.0 if x == "@a" else x


def _halve_zero_to_sentinel(x: Any) -> Any:
    if x == "@a":
        return 5.0
    return "@a" if x == 0 else x / 2


MAPS: dict[str, tuple[int, str]] = {
    "identity": (0, "f(x) = x"),
    "scale": (1, "f(x) = k x; params: k"),
    "affine": (2, "f(x) = k x + b; params: k, b"),
    "halve_zero_to_minus_one": (0, "x/2 except f(0) = -1"),
    "sentinel_to_one": (0, "identity on the reals, @a -> 1"),
    "halve_zero_to_sentinel": (0, "x/2 on nonzero reals, 0 -> @a, @a -> 5"),
}


def build_map(name: str, params: Sequence[float] = ()) -> Map:
    """A named closed-form map from :data:`MAPS`."""
    if name not in MAPS:
        raise ValueError(f"unknown map {name!r}; known: {', '.join(MAPS)}")
    want = MAPS[name][0]
    params = [float(p) for p in params]
    if len(params) != want:
        raise ValueError(f"map {name} takes {want} parameters, got {len(params)}")
    if name == "identity":
        return lambda x: x
    if name == "scale":
        k = params[0]
        return lambda x: k * x
    if name == "affine":
        k, b = params
        return lambda x: k * x + b
    return {
        "halve_zero_to_minus_one": _halve_zero_to_minus_one,
        "sentinel_to_one": _sentinel_to_one,
        "halve_zero_to_sentinel": _halve_zero_to_sentinel,
    }[name]
